"""JSON documents for trees, node payloads and results.

A tree document looks like::

    {"kind": "seq",
     "nodes": [{"id": 0, "payload": {"seq": ""}, "parent": null, "height": 0}, ...]}

Payloads are tagged objects: ``{"hf": "{{}}"}`` for sets, ``{"seq": "0110"}``
(with optional ``"base"``) for digit sequences, ``{"pair": [p, q]}`` for
product nodes and ``{"label": ...}`` for anything else.
"""

from __future__ import annotations

import json

from .errors import InvalidTree, LiteralError
from .hf import HFSet, parse_literal
from .seqcode import DigitSeq
from .trees import Tree

__all__ = ["payload_to_json", "payload_from_json", "tree_to_json", "tree_from_json", "dumps", "load_tree"]


def payload_to_json(p):
    if isinstance(p, HFSet):
        return {"hf": p.to_literal()}
    if isinstance(p, DigitSeq):
        out = {"seq": str(p)}
        if p.base != 2:
            out["base"] = p.base
        return out
    if isinstance(p, tuple):
        return {"pair": [payload_to_json(x) for x in p]}
    if isinstance(p, (str, int)):
        return {"label": p}
    return {"label": str(p)}


def payload_from_json(obj, normalize: bool = False):
    if not isinstance(obj, dict) or len(obj.keys() - {"base"}) != 1:
        raise InvalidTree(f"payload {obj!r} is not a tagged object")
    if "hf" in obj:
        return parse_literal(obj["hf"], normalize)
    if "seq" in obj:
        return DigitSeq.parse(obj["seq"], obj.get("base", 2))
    if "pair" in obj:
        return tuple(payload_from_json(x, normalize) for x in obj["pair"])
    if "label" in obj:
        return obj["label"]
    raise InvalidTree(f"unknown payload tag in {obj!r}")


def tree_to_json(tree: Tree) -> dict:
    return {
        "kind": tree.kind,
        "nodes": [
            {"id": i, "payload": payload_to_json(p), "parent": tree.parents[i], "height": tree.heights[i]}
            for i, p in enumerate(tree.payloads)
        ],
    }


def tree_from_json(doc, normalize: bool = False) -> Tree:
    if not isinstance(doc, dict) or not isinstance(doc.get("nodes"), list):
        raise InvalidTree("tree document needs a 'nodes' list")
    by_id = {}
    for node in doc["nodes"]:
        if not isinstance(node, dict) or "id" not in node or "payload" not in node:
            raise InvalidTree(f"malformed node record {node!r}")
        if node["id"] in by_id:
            raise InvalidTree(f"duplicate node id {node['id']!r}")
        try:
            by_id[node["id"]] = (payload_from_json(node["payload"], normalize), node.get("parent"), node.get("height"))
        except (LiteralError, ValueError) as exc:
            raise InvalidTree(f"node {node['id']!r}: {exc}") from None
    parent_of = {}
    for nid, (payload, parent, _) in by_id.items():
        if parent is not None and parent not in by_id:
            raise InvalidTree(f"node {nid!r} has unknown parent {parent!r}")
        if payload in parent_of:
            raise InvalidTree("duplicate node payloads")
        parent_of[payload] = None if parent is None else by_id[parent][0]
    tree = Tree.from_parents(parent_of, doc.get("kind", "label"))
    for payload, _, height in by_id.values():
        if height is not None and tree.height(tree.id_of(payload)) != height:
            raise InvalidTree(f"declared height {height} of {payload!r} disagrees with its parent chain")
    return tree


def load_tree(path: str, normalize: bool = False) -> Tree:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise InvalidTree(f"{path}: invalid JSON ({exc})") from None
    return tree_from_json(doc, normalize)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=None, separators=(",", ":"), ensure_ascii=False)
