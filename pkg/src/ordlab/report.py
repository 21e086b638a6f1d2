"""Self-check report: runs small invariant suites over a universe slice."""

from __future__ import annotations

import random
import time

from .errors import OrdlabError, UniverseTooLarge
from .hf import ack_decode, ack_encode, ordinal, parse_universe_spec, transitive_closure
from .seqcode import chain_code, decode_set, encode_set, pair, read_off, unpair

__all__ = ["roundtrip_report", "SUITES"]


def _ack(universe, rng, limit):
    bad = [s for s in universe if ack_decode(ack_encode(s)) is not s]
    return len(universe), len(bad)


def _transitive(universe, rng, limit):
    return 1, 0 if universe.is_transitive() else 1


def _coding(universe, rng, limit):
    count = bad = 0
    for s in list(universe)[:limit]:
        closure = transitive_closure(s)
        gs = [None]
        for _ in range(3):
            perm = list(range(len(closure)))
            rng.shuffle(perm)
            gs.append(dict(zip(closure, perm)))
        for g in gs:
            count += 1
            if decode_set(encode_set(s, g)) is not s:
                bad += 1
    return count, bad


def _pairing(universe, rng, limit):
    top = 20 * limit
    bad = sum(1 for n in range(top) if pair(*unpair(n)) != n)
    return top, bad


def _chain(universe, rng, limit):
    count = bad = 0
    for k in range(1, 5):
        chain = [ordinal(i) for i in range(k)]
        count += 1
        if read_off(chain_code(chain)) is not chain[-1]:
            bad += 1
    return count, bad


def _definable(universe, rng, limit):
    from .logic.definable import enumerate_definable
    from .logic.semantics import Structure

    if len(universe) > 16:
        raise UniverseTooLarge(f"{universe.label} is too large for the definability suite")
    M = Structure(universe)
    previous: set = set()
    count = bad = 0
    for bound in range(3):
        current = {frozenset(s) for _, s in enumerate_definable(M, bound, False)}
        count += 1
        if not previous <= current:
            bad += 1
        previous = current
    return count, bad


def _hod(universe, rng, limit):
    from .diamond import hod_order
    from .logic.semantics import Structure

    if universe.kind != "rank" or universe.n > 3:
        raise UniverseTooLarge(f"{universe.label} is too large for the ordinal-definability suite")
    order = hod_order(Structure(universe), 3)
    elems = list(universe)
    count = bad = 0
    for x in elems:
        for y in elems:
            count += 1
            if (x is y) == (order(x, y) or order(y, x)):
                bad += 1
    return count, bad


SUITES = (
    ("ackermann-roundtrip", _ack),
    ("slice-transitive", _transitive),
    ("coding-roundtrip", _coding),
    ("pairing-inverse", _pairing),
    ("chain-read-off", _chain),
    ("definable-monotone", _definable),
    ("hod-total", _hod),
)


def roundtrip_report(spec: str, limit: int = 64, seed: int = 0, timings: bool = False) -> dict:
    """Pass/fail per suite; guard failures become skipped suites."""
    doc = {"universe": spec, "seed": seed, "limit": limit, "suites": []}
    try:
        universe = parse_universe_spec(spec)
    except UniverseTooLarge as exc:
        doc["suites"] = [{"name": name, "status": "skipped", "reason": f"{exc.name}: {exc}"} for name, _ in SUITES]
        doc["passed"] = True
        return doc
    rng = random.Random(seed)
    all_ok = True
    for name, fn in SUITES:
        start = time.perf_counter()
        try:
            count, bad = fn(universe, rng, limit)
            entry = {"name": name, "status": "pass" if bad == 0 else "fail", "checked": count, "failures": bad}
            all_ok &= bad == 0
        except OrdlabError as exc:
            entry = {"name": name, "status": "skipped", "reason": f"{exc.name}: {exc}"}
        if timings:
            entry["seconds"] = round(time.perf_counter() - start, 4)
        doc["suites"].append(entry)
    doc["passed"] = all_ok
    return doc
