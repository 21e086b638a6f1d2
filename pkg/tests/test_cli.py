import json
import subprocess
import sys

from cli_transcript import GOLDEN, invoke, transcript


def test_documented_examples():
    assert invoke('hf encode "{{}}"')[:2] == (0, "1\n")
    assert invoke("code seq2set 01")[:2] == (0, "{{}}\n")
    code, out, _ = invoke("tree branches --in data/full-binary-3.json")
    assert code == 0 and len(out.splitlines()) == 8
    code, out, _ = invoke("tree branches --in data/full-binary-3.json --format json")
    assert len(json.loads(out)) == 8


def test_exit_codes():
    code, out, err = invoke("tree branches --in data/corrupt.json")
    assert code == 1 and out == "" and err.startswith("InvalidTree")
    code, _, err = invoke("tree branches --in data/missing.json")
    assert code == 1 and err.startswith("InputError")
    assert invoke("hf encode {{}")[0] == 1
    assert invoke("hf frobnicate")[0] == 2
    assert invoke("code pair 1")[0] == 2
    code, _, err = invoke("hf slice V9")
    assert code == 1 and err.startswith("UniverseTooLarge")


def test_normalize_flag():
    assert invoke("hf encode {{{}},{}}")[0] == 1
    assert invoke("hf encode {{{}},{}} --normalize")[:2] == (0, "3\n")


def test_golden_transcript_is_stable():
    first = transcript()
    assert first == transcript()
    assert first == GOLDEN.read_text()


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "ordlab", "code", "pair", "0", "1"], capture_output=True, text=True, timeout=60
    )
    assert proc.returncode == 0 and proc.stdout == "1\n"
