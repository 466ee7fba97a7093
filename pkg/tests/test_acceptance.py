"""Acceptance criteria, one test each, with exact arithmetic and wall-clock targets.

Every test prints a single line ``[PASS] <n>. <name> (<secs>s / <target>s)``
or ``[FAIL] ...``.  Run ``pytest tests/test_acceptance.py -v -s`` to see the
lines inline, or ``python tests/test_acceptance.py`` for just the summary.
"""

import json
import sys
import time

from mttlab.cli import main
from mttlab.models import DEMOS
from mttlab.suites import run_suite


def _report(capsys, n, name, started, target, ok):
    secs = time.perf_counter() - started
    passed = ok and (target is None or secs < target)
    budget = f" / {target}s" if target is not None else ""
    line = f"[{'PASS' if passed else 'FAIL'}] {n}. {name} ({secs:.2f}s{budget})"
    if capsys is None:
        print(line)
    else:
        with capsys.disabled():
            print("\n" + line)
    return passed, secs


def _cli(argv):
    from io import StringIO
    from contextlib import redirect_stdout
    buf = StringIO()
    with redirect_stdout(buf):
        code = main([str(a) for a in argv])
    return code, buf.getvalue()


def _channel(tmp_path, demo_args):
    f = tmp_path / "demo.json"
    assert _cli(["demo", *demo_args, "-o", f])[0] == 0
    code, out = _cli(["compute", f, "--channel", 1, 2])
    assert code == 0
    return json.loads(out)


def _suite_ok(name, trials, seed=7):
    r = run_suite(name, seed, trials)
    return r.trials == trials and r.ok, r


def test_1_closed_forms(tmp_path, capsys):
    t0 = time.perf_counter()
    ok = True
    for d, m0 in [(1, 0), (3, 2), (2, -1)]:
        got = _channel(tmp_path, ["single-degree", "--d", d, "--m0", m0])
        ok &= got["coefficients"] == {str(m0): d}
        ok &= got["w_tot"] == d and got["w_chi"] == (-1) ** m0 * d
    for a, b, m in [(1, 1, 0), (1, 2, -1)]:
        got = _channel(tmp_path, ["two-degree", "--a", a, "--b", b, "--m", m])
        ok &= got["coefficients"] == {str(m): a, str(m + 1): b}
        ok &= got["w_tot"] == a + b and got["w_chi"] == (-1) ** m * (a - b)
    passed, _ = _report(capsys, 1, "closed forms", t0, 1, ok)
    assert passed


def test_2_les_suite(capsys):
    t0 = time.perf_counter()
    ok, r = _suite_ok("les", 200)
    passed, _ = _report(capsys, 2, "long exact sequences, 200 triangles", t0, 30, ok)
    assert passed, r.failures


def test_3_transport_exactness(capsys):
    t0 = time.perf_counter()
    ok, r = _suite_ok("exactness", 200)
    passed, _ = _report(capsys, 3, "cone commutation certificates, 200 pairs", t0, 30, ok)
    assert passed, r.failures


def test_4_oracle_equivalence(capsys):
    t0 = time.perf_counter()
    ok, r = _suite_ok("oracle", 100)
    passed, _ = _report(capsys, 4, "oracle = pipeline, 100 data, all channels", t0, 30, ok)
    assert passed, r.failures


def test_5_visibility(capsys):
    t0 = time.perf_counter()
    ok, r = _suite_ok("visibility", 100)
    passed, _ = _report(capsys, 5, "visibility soundness and completeness, 100 instances",
                        t0, 20, ok)
    assert passed, r.failures


def test_6_bridge(capsys):
    from mttlab.checks import bridge_verdict
    from mttlab.mtt import interaction_polynomial
    t0 = time.perf_counter()
    D = DEMOS["bridge"]()
    reps = bridge_verdict(D)
    ok = all(rep.bridge_consistent for rep in reps)
    for rep in reps:
        i, j = rep.channel
        if D.support[i - 1][j - 1]:
            ok &= bool(rep.content_left_nonzero and rep.content_right_nonzero
                        and rep.detector_holds_at_probe)
            ok &= not interaction_polynomial(D, i, j).is_zero()
    suite_ok, r = _suite_ok("bridge", 100)
    passed, _ = _report(capsys, 6, "bridge demo and 100 random data", t0, 20, ok and suite_ok)
    assert passed, r.failures


def test_7_directedness(capsys):
    from mttlab.mtt import interaction_polynomial
    t0 = time.perf_counter()
    D = DEMOS["directedness"]()
    p12, p21 = interaction_polynomial(D, 1, 2), interaction_polynomial(D, 2, 1)
    ok = p12 != p21 and not p12.is_zero() and not p21.is_zero()
    passed, _ = _report(capsys, 7, "directedness P_12 != P_21", t0, 1, ok)
    assert passed


def test_8_obstruction(tmp_path, capsys):
    t0 = time.perf_counter()
    a = tmp_path / "ob.json"
    assert _cli(["demo", "obstruction", "-o", a])[0] == 0
    b = tmp_path / "ob-b.json"
    A, B = json.loads(a.read_text()), json.loads(b.read_text())
    same_local = all(A[k] == B[k] for k in
                     ("nodes", "probes", "shadow_kernels", "shadow_objects", "support",
                      "state", "psi"))
    code, out = _cli(["report", a, "--diff", b, "--format", "json"])
    rows = json.loads(out)
    poly_rows = [r for r in rows if r["field"].startswith("P_")]
    ok = code == 0 and same_local and [r["field"] for r in poly_rows] == ["P_12"]
    ok &= poly_rows[0]["first"] != poly_rows[0]["second"] if poly_rows else False
    passed, _ = _report(capsys, 8, "obstruction pair differs only in P_12", t0, 5, ok)
    assert passed, rows


def test_9_shift_identity(capsys):
    t0 = time.perf_counter()
    ok, r = _suite_ok("shift", 50)
    passed, _ = _report(capsys, 9, "shift identity, k in -2..2, 50 pairs", t0, 10, ok)
    assert passed, r.failures


def test_10_determinism(tmp_path, capsys):
    t0 = time.perf_counter()
    outs = []
    for k in range(2):
        f = tmp_path / f"run{k}.json"
        code, _ = _cli(["verify", "--random", "--suite", "all", "--seed", 7,
                        "--trials", 100, "-o", f])
        outs.append((code, f.read_bytes()))
    ok = outs[0] == outs[1] and outs[0][0] == 0
    passed, _ = _report(capsys, 10, "verify reports byte-identical across runs", t0, None, ok)
    assert passed


if __name__ == "__main__":
    import tempfile
    from pathlib import Path
    results = []
    for name, fn in sorted(((n, f) for n, f in globals().items() if n.startswith("test_")),
                           key=lambda kv: int(kv[0].split("_")[1])):
        kwargs = {"capsys": None}
        if "tmp_path" in fn.__code__.co_varnames[:fn.__code__.co_argcount]:
            kwargs["tmp_path"] = Path(tempfile.mkdtemp())
        try:
            fn(**kwargs)
            results.append(True)
        except AssertionError:
            results.append(False)
    sys.exit(0 if all(results) else 1)
