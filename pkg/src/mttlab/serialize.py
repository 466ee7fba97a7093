"""JSON file formats and report renderings.

Complex:  ``{"dims": {"0": 1, "1": 2}, "diffs": {"0": [["1"], ["1"]]}}``;
zero differentials are omitted.  Kernel: a complex plus ``"label"``,
``"source"`` and ``"target"``.  All JSON is written with sorted keys and a
trailing newline so identical inputs give byte-identical files.
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

from .cxcore import BoundedComplex
from .errors import DimensionError, MTTError, ParseError, ValidationError, WiringError
from .homcx import LaurentPoly, format_poly
from .mtt import (Diagnostic, GradedInteractionMatrix, InheritedPackage, MTTDatum,
                  StatePackage, datum_diagnostics)
from .ratlin import RatMatrix, format_rational, parse_rational
from .transport import TransportKernel


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


# ---------------------------------------------------------------- complexes

def complex_to_json(X: BoundedComplex) -> dict:
    return {
        "dims": {str(n): d for n, d in X.dims.items()},
        "diffs": {str(n): [[format_rational(x) for x in row] for row in m.tolist()]
                  for n, m in X.diffs.items() if not m.is_zero()},
    }


def _int_key(k, where):
    try:
        return int(k)
    except (TypeError, ValueError):
        raise ParseError(f"{where}: degree {k!r} is not an integer", where=where) from None


def complex_from_json(obj, where: str = "complex") -> BoundedComplex:
    if not isinstance(obj, dict) or "dims" not in obj:
        raise ParseError(f"{where}: expected an object with a 'dims' field", where=where)
    dims_raw = obj["dims"]
    if not isinstance(dims_raw, dict):
        raise ParseError(f"{where}: 'dims' must be an object", where=where)
    dims = {}
    for k, v in dims_raw.items():
        if isinstance(v, bool) or not isinstance(v, int) or v < 0:
            raise ParseError(f"{where}: dimension in degree {k} must be a nonnegative integer",
                             where=where)
        dims[_int_key(k, where)] = v
    diffs = {}
    for k, rows in (obj.get("diffs") or {}).items():
        n = _int_key(k, where)
        if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
            raise ParseError(f"{where}: d^{n} must be a list of rows", where=where)
        want_r, want_c = dims.get(n + 1, 0), dims.get(n, 0)
        if len(rows) != want_r or any(len(r) != want_c for r in rows):
            raise ValidationError(
                f"{where}: d^{n} should be {want_r}x{want_c}", where=f"{where}.diffs.{n}")
        try:
            diffs[n] = RatMatrix(want_r, want_c, [parse_rational(x) for r in rows for x in r])
        except ParseError as e:
            raise ParseError(f"{where}: d^{n}: {e}", where=where) from None
    try:
        return BoundedComplex(dims, diffs)
    except DimensionError as e:
        raise ValidationError(f"{where}: {e}", where=where) from None


def kernel_to_json(K: TransportKernel) -> dict:
    out = complex_to_json(K.kernel)
    out.update(label=K.label, source=K.source, target=K.target)
    return out


def kernel_from_json(obj, where: str = "kernel") -> TransportKernel:
    X = complex_from_json(obj, where)
    for key in ("label", "source", "target"):
        if not isinstance(obj.get(key), str):
            raise ParseError(f"{where}: missing string field {key!r}", where=where)
    return TransportKernel(X, obj["label"], obj["source"], obj["target"])


# ---------------------------------------------------------------- datum

def state_to_json(S: StatePackage) -> dict:
    return {"vertices": list(S.vertices), "basis_labels": list(S.basis_labels),
            "c_sigma": [format_rational(c) for c in S.c_sigma]}


def state_from_json(obj) -> StatePackage:
    if not isinstance(obj, dict):
        raise ParseError("state: expected an object", where="state")
    try:
        return StatePackage(tuple(obj["vertices"]), tuple(obj["basis_labels"]),
                            tuple(parse_rational(c) for c in obj["c_sigma"]))
    except KeyError as e:
        raise ParseError(f"state: missing field {e}", where="state") from None


def datum_to_json(D: MTTDatum) -> dict:
    return {
        "nodes": list(D.nodes),
        "bulk_sector": D.bulk_sector,
        "local_sectors": list(D.local_sectors),
        "shadow_sector": D.shadow_sector,
        "phi": [kernel_to_json(K) for K in D.phi],
        "psi": [kernel_to_json(K) for K in D.psi],
        "probes": [complex_to_json(L) for L in D.probes],
        "shadow_kernels": [kernel_to_json(K) for K in D.shadow_kernels],
        "shadow_objects": [complex_to_json(Q) for Q in D.shadow_objects],
        "support": [list(row) for row in D.support],
        "state": state_to_json(D.state),
    }


def datum_from_json(obj) -> MTTDatum:
    """Build a datum without checking its mathematics (see :func:`parse_datum`)."""
    if not isinstance(obj, dict):
        raise ParseError("datum: expected a JSON object")
    required = ("nodes", "phi", "psi", "probes", "shadow_kernels", "shadow_objects",
                "support", "state")
    missing = [k for k in required if k not in obj]
    if missing:
        raise ParseError(f"datum: missing fields {missing}", where=missing[0])
    for k in required[1:7]:
        if not isinstance(obj[k], list):
            raise ParseError(f"datum: {k!r} must be a list", where=k)
    nodes = obj["nodes"]
    if not isinstance(nodes, list) or not all(isinstance(n, str) for n in nodes):
        raise ParseError("datum: 'nodes' must be a list of strings", where="nodes")

    def label(k, idx):
        return f"{k}[{nodes[idx]}]" if idx < len(nodes) else f"{k}[{idx}]"

    def kernels(k):
        return [kernel_from_json(x, label(k, i)) for i, x in enumerate(obj[k])]

    def objects(k):
        return [complex_from_json(x, label(k, i)) for i, x in enumerate(obj[k])]

    support = obj["support"]
    for row in support:
        if not isinstance(row, list) or not all(isinstance(b, int) and not isinstance(b, bool)
                                                for b in row):
            raise ParseError("datum: 'support' must be a list of rows of 0/1", where="support")
    return MTTDatum(
        tuple(nodes), kernels("phi"), kernels("psi"), objects("probes"),
        kernels("shadow_kernels"), objects("shadow_objects"), support,
        state_from_json(obj["state"]),
        bulk_sector=obj.get("bulk_sector", "bulk"),
        local_sectors=tuple(obj["local_sectors"]) if "local_sectors" in obj else None,
        shadow_sector=obj.get("shadow_sector", "shadow"),
    )


def parse_datum(path) -> MTTDatum:
    """Read, build and fully validate a datum file.

    Raises :class:`ParseError`, :class:`ValidationError` or
    :class:`WiringError`; ``err.diagnostics`` lists every problem found, each
    naming the offending field, degree or node.
    """
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e}") from None
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}: malformed JSON ({e})",
                         diagnostics=[Diagnostic("parse", "file", str(e))]) from None
    try:
        D = datum_from_json(obj)
    except MTTError as e:
        kind = "parse" if isinstance(e, ParseError) else "validation"
        e.diagnostics = e.diagnostics or [Diagnostic(kind, str(e.where or "datum"), str(e))]
        raise
    diags = datum_diagnostics(D)
    if diags:
        cls = WiringError if diags[0].kind == "wiring" else ValidationError
        raise cls("; ".join(map(str, diags)), where=diags[0].field, diagnostics=diags)
    return D


def write_datum(D: MTTDatum, path) -> None:
    Path(path).write_text(dumps(datum_to_json(D)))


# ---------------------------------------------------------------- inherited package

def package_to_json(P: InheritedPackage) -> dict:
    return {
        "state": state_to_json(P.state),
        "support": [list(r) for r in P.support],
        "graded": [[E.to_json() for E in row] for row in P.graded.entries],
        "specializations": [[{"w_tot": t, "w_chi": c} for t, c in row]
                            for row in P.specializations],
        "nonvanishing": [list(r) for r in P.nonvanishing()],
    }


def package_from_json(obj) -> InheritedPackage:
    try:
        graded = GradedInteractionMatrix(tuple(tuple(LaurentPoly.from_json(E) for E in row)
                                               for row in obj["graded"]))
        spec = tuple(tuple((int(e["w_tot"]), int(e["w_chi"])) for e in row)
                     for row in obj["specializations"])
        pkg = InheritedPackage(state_from_json(obj["state"]),
                               tuple(tuple(r) for r in obj["support"]), graded, spec)
    except (KeyError, TypeError) as e:
        raise ParseError(f"package: malformed ({e})") from None
    if pkg.specializations != graded.specializations():
        raise ValidationError("package: specialisations disagree with the graded matrix")
    return pkg


def render_package_md(P: InheritedPackage, nodes=None) -> str:
    r = P.graded.size
    nodes = list(nodes or P.state.vertices)
    lines = ["## State", "", "| vertex | basis | c_sigma |", "|---|---|---|"]
    for v, e, c in zip(P.state.vertices, P.state.basis_labels, P.state.c_sigma):
        lines.append(f"| {v} | {e} | {format_rational(c)} |")
    lines += ["", "## Graded interaction matrix", "",
              "| i \\ j | " + " | ".join(nodes) + " |", "|---" * (r + 1) + "|"]
    for i in range(r):
        lines.append(f"| {nodes[i]} | " + " | ".join(format_poly(P.graded.entries[i][j])
                                                     for j in range(r)) + " |")
    lines += ["", "## Channels", "",
              "| i | j | support | P_ij | w_tot | w_chi | nonzero |", "|---|---|---|---|---|---|---|"]
    nz = P.nonvanishing()
    for i in range(r):
        for j in range(r):
            t, c = P.specializations[i][j]
            lines.append(f"| {i + 1} | {j + 1} | {P.support[i][j]} | "
                         f"{format_poly(P.graded.entries[i][j])} | {t} | {c} | {nz[i][j]} |")
    return "\n".join(lines) + "\n"


def render_package_csv(P: InheritedPackage) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["i", "j", "support", "P_ij", "w_tot", "w_chi", "nonzero"])
    nz = P.nonvanishing()
    for i in range(P.graded.size):
        for j in range(P.graded.size):
            t, c = P.specializations[i][j]
            w.writerow([i + 1, j + 1, P.support[i][j], format_poly(P.graded.entries[i][j]),
                        t, c, nz[i][j]])
    return buf.getvalue()


# ---------------------------------------------------------------- bridge verdicts

def report_to_json(rep) -> dict:
    return {
        "channel": list(rep.channel),
        "supported": rep.supported,
        "content_left_nonzero": rep.content_left_nonzero,
        "content_right_nonzero": rep.content_right_nonzero,
        "detector_holds_at_probe": rep.detector_holds_at_probe,
        "H_nonzero": rep.H_nonzero,
        "P": rep.P.to_json(),
        "w_tot": rep.w_tot,
        "w_chi": rep.w_chi,
        "bridge_consistent": rep.bridge_consistent,
    }


def render_verdict_md(reports) -> str:
    lines = ["| i | j | supported | content | detector | P_ij | w^tot | w^chi | consistent |",
             "|---|---|---|---|---|---|---|---|---|"]
    for rep in reports:
        i, j = rep.channel
        lines.append(f"| {i} | {j} | {rep.supported} | {rep.content} | "
                     f"{rep.detector_holds_at_probe} | {format_poly(rep.P)} | {rep.w_tot} | "
                     f"{rep.w_chi} | {rep.bridge_consistent} |")
    return "\n".join(lines) + "\n"


def render_verdict_csv(reports) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["i", "j", "supported", "content", "detector", "P_ij", "w_tot", "w_chi",
                "consistent"])
    for rep in reports:
        i, j = rep.channel
        w.writerow([i, j, rep.supported, rep.content, rep.detector_holds_at_probe,
                    format_poly(rep.P), rep.w_tot, rep.w_chi, rep.bridge_consistent])
    return buf.getvalue()


# ---------------------------------------------------------------- diffs

def diff_data(A: MTTDatum, B: MTTDatum, PA: InheritedPackage, PB: InheritedPackage):
    """Field-by-field differences between two data and their packages.

    Returns ``(field, left, right)`` triples.  Nodewise fields (probes,
    shadow kernels and objects, state, support) come first, then every
    graded-matrix entry.
    """
    out = []
    ja, jb = datum_to_json(A), datum_to_json(B)
    for key in ("nodes", "probes", "shadow_kernels", "shadow_objects", "support", "state"):
        if ja[key] != jb[key]:
            out.append((key, json.dumps(ja[key], sort_keys=True),
                        json.dumps(jb[key], sort_keys=True)))
    for key in ("phi", "psi"):
        for k, (x, y) in enumerate(zip(ja[key], jb[key])):
            if x != y:
                out.append((f"{key}[{A.nodes[k]}]", json.dumps(x, sort_keys=True),
                            json.dumps(y, sort_keys=True)))
    n = PA.graded.size
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            a, b = PA.graded.entry(i, j), PB.graded.entry(i, j)
            if a != b:
                out.append((f"P_{i}{j}", format_poly(a), format_poly(b)))
    return out


def render_diff_md(diffs) -> str:
    lines = ["| field | first | second |", "|---|---|---|"]
    for f, a, b in diffs:
        lines.append(f"| {f} | `{a}` | `{b}` |")
    return "\n".join(lines) + "\n"
