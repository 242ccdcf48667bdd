"""Certificates: JSON records of verdicts that can be re-checked without re-running searches.

Every certificate is a dict with a ``kind`` key.  :func:`check_certificate`
dispatches on it and re-verifies the claim from the recorded witnesses
(Lagrangians, reduction traces, class words) or, for cheap closed
computations, by recomputing along an independent route.
"""
from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass
from typing import Optional

from .abelian import Subgroup, format_group, parse_element, parse_group
from .errors import CertificateInvalid, ParseError
from .forms import QuadraticForm, gauss_sum
from .witt import (
    GAUSS_TOL,
    CondenseStep,
    GradedPremetricGroup,
    ReductionTrace,
    SplitStep,
    TrivialityCertificate,
    condense,
    is_a_trivial,
    power,
    s_opposite,
    split_metric,
    twisted_product,
    witt_kernel_criterion,
)

FORMAT_VERSION = 1


def _subgroup(G, gens) -> Subgroup:
    return Subgroup.generated_by(G, [parse_element(g, G) for g in gens])


def lagrangian_from_json(X: GradedPremetricGroup, data: dict) -> TrivialityCertificate:
    return TrivialityCertificate(_subgroup(X.G, data["lagrangian"]), bool(data.get("nondegenerate", True)))


def trace_from_json(data: dict) -> ReductionTrace:
    """Rebuild a trace by replaying its recorded subgroups from the recorded start."""
    start = GradedPremetricGroup.from_json(data["start"])
    X = start
    steps = []
    for st in data["steps"]:
        H = _subgroup(X.G, st["subgroup"])
        if st["step"] == "split":
            metric, X = split_metric(X, H)
            recorded = QuadraticForm.from_json(parse_group(st["residue_group"]), st["residue_q"])
            if recorded != metric.q:
                raise CertificateInvalid("recorded residue differs from the split summand")
            g = complex(*st["gauss_sum"])
            steps.append(SplitStep(H, g, metric.q))
        elif st["step"] == "condense":
            X = condense(X, H)
            steps.append(CondenseStep(H))
        else:
            raise ParseError(f"unknown step {st['step']!r}")
    final = GradedPremetricGroup.from_json(data["final"], start.context)
    if final != X:
        raise CertificateInvalid("replayed trace does not end at the recorded object")
    cert = lagrangian_from_json(final, data["certificate"]) if "certificate" in data else None
    stab = None
    if "stabilization" in data:
        W = twisted_product(start, s_opposite(final))
        stab = lagrangian_from_json(W, data["stabilization"])
    return ReductionTrace(start, steps, final, data.get("decided_by", ""), cert, stab)


def check_trace(data: dict) -> bool:
    tr = trace_from_json(data)
    for st in tr.steps:
        if isinstance(st, SplitStep) and abs(gauss_sum(st.residue) - st.gauss_sum) > GAUSS_TOL:
            return False
    if tr.certificate is not None and not tr.certificate.verify(tr.final):
        return False
    if tr.decided_by == "condensation":
        W = twisted_product(tr.start, s_opposite(tr.final))
        if tr.stabilization is None or not tr.stabilization.verify(W):
            return False
        if not tr.final.is_trivially_graded():
            return False
    elif tr.decided_by in ("split", "lagrangian") and tr.certificate is None:
        return False
    return True


# ---------------------------------------------------------------------------
# builders


def order_certificate(X: GradedPremetricGroup, mode: str, order: int, trace: Optional[ReductionTrace], cap: int) -> dict:
    cert = {"kind": "order", "version": FORMAT_VERSION, "mode": mode, "element": X.to_json(), "order": order}
    if mode == "mod_witt":
        cert["trace"] = trace.to_json() if trace is not None else None
    else:
        L = is_a_trivial(power(X, order), cap * cap)
        if L is None:
            raise CertificateInvalid("raw power is not A-trivial")
        cert["lagrangian"] = L.to_json()
    return cert


def equality_certificate(X: GradedPremetricGroup, Y: GradedPremetricGroup, mode: str, equal: bool, witness) -> dict:
    cert = {"kind": "equal", "version": FORMAT_VERSION, "mode": mode, "left": X.to_json(), "right": Y.to_json(), "equal": equal}
    if witness is not None:
        cert["witness"] = witness.to_json()
    return cert


def group_certificate(generators, names, structure) -> dict:
    return {
        "kind": "group",
        "version": FORMAT_VERSION,
        "generators": [g.to_json() for g in generators],
        "names": list(names),
        "words": ["".join(w) for w in structure.words],
        "table": structure.table,
        "order": structure.order,
        "histogram": {str(k): v for k, v in sorted(structure.histogram.items())},
        "abelian": structure.abelian,
        "center_order": structure.center_order,
        "derived_order": structure.derived_order,
        "label": structure.label,
    }


def cohomology_certificate(group: str, module: str, degree: int, result: str, method: str) -> dict:
    return {"kind": "cohomology", "version": FORMAT_VERSION, "group": group, "module": module, "degree": degree, "result": result, "method": method}


def forms_certificate(A: str, counts: dict) -> dict:
    return {"kind": "forms", "version": FORMAT_VERSION, "A": A, "counts": counts}


# ---------------------------------------------------------------------------
# checkers


@dataclass
class CheckResult:
    ok: bool
    kind: str
    detail: str

    def to_json(self) -> dict:
        return {"ok": self.ok, "kind": self.kind, "detail": self.detail}


def _check_order(cert: dict) -> CheckResult:
    X = GradedPremetricGroup.from_json(cert["element"])
    n = int(cert["order"])
    mode = cert["mode"]
    if mode == "mod_witt":
        if witt_kernel_criterion(power(X, n)) is None:
            return CheckResult(False, "order", f"X^{n} fails the kernel criterion")
        for k in range(1, n):
            if witt_kernel_criterion(power(X, k)) is not None:
                return CheckResult(False, "order", f"X^{k} is already trivial")
        if cert.get("trace") is not None and not check_trace(cert["trace"]):
            return CheckResult(False, "order", "reduction trace failed")
        return CheckResult(True, "order", f"mod-Witt order {n} confirmed")
    P = power(X, n)
    L = lagrangian_from_json(P, cert["lagrangian"])
    if not L.verify(P):
        return CheckResult(False, "order", "Lagrangian of the raw power failed")
    for k in range(1, n):
        Pk = power(X, k)
        if Pk.is_nondegenerate() and abs(Pk.gauss_sum() - 1) <= 1e-6 and witt_kernel_criterion(Pk) is not None:
            if is_a_trivial(Pk, max(Pk.order, 4096)) is not None:
                return CheckResult(False, "order", f"X^{k} is already A-trivial")
    return CheckResult(True, "order", f"raw order {n} confirmed")


def _check_equal(cert: dict) -> CheckResult:
    X = GradedPremetricGroup.from_json(cert["left"])
    Y = GradedPremetricGroup.from_json(cert["right"])
    W = twisted_product(X, s_opposite(Y))
    if cert["mode"] == "mod_witt":
        verdict = witt_kernel_criterion(W) is not None
        if verdict != cert["equal"]:
            return CheckResult(False, "equal", "kernel criterion disagrees")
        if verdict and "witness" in cert and not check_trace(cert["witness"]):
            return CheckResult(False, "equal", "witness trace failed")
        return CheckResult(True, "equal", f"equal={verdict} (mod Witt)")
    if cert["equal"]:
        L = lagrangian_from_json(W, cert["witness"])
        return CheckResult(L.verify(W), "equal", "Lagrangian of X (x) Y^op")
    verdict = is_a_trivial(W, max(W.order, 4096)) is not None
    return CheckResult(not verdict, "equal", "no Lagrangian of X (x) Y^op")


def _check_group(cert: dict) -> CheckResult:
    from .groups import identify
    from .witt import _table_invariants

    gens = [GradedPremetricGroup.from_json(g) for g in cert["generators"]]
    names = cert["names"]
    letter = dict(zip(names, gens))
    ctx = gens[0].context
    words = cert["words"]
    table = cert["table"]
    n = len(words)
    from .witt import reduce_mod_witt, unit

    # words are prefix-closed (breadth-first closure), so build each class
    # from its parent word; reduction only shrinks within the class
    built: dict[str, GradedPremetricGroup] = {"": reduce_mod_witt(unit(ctx))}
    for w in sorted(words, key=len):
        if w and w not in built:
            if w[:-1] not in built:
                return CheckResult(False, "group", f"word {w} has no recorded prefix")
            built[w] = reduce_mod_witt(twisted_product(built[w[:-1]], letter[w[-1]]))
    reps = [built[w] for w in words]
    # right multiplication by each generator lands in the recorded class
    index = {w: i for i, w in enumerate(words)}
    for i, w in enumerate(words):
        for name, g in letter.items():
            j = index.get(name)
            target = table[i][j] if j is not None else None
            if target is None:
                return CheckResult(False, "group", "generator word missing")
            if witt_kernel_criterion(twisted_product(twisted_product(reps[i], g), s_opposite(reps[target]))) is None:
                return CheckResult(False, "group", f"{w or '1'}*{name} is not in class {words[target] or '1'}")
    # classes pairwise distinct
    for i in range(n):
        for j in range(i + 1, n):
            if witt_kernel_criterion(twisted_product(reps[i], s_opposite(reps[j]))) is not None:
                return CheckResult(False, "group", f"classes {words[i] or '1'} and {words[j] or '1'} coincide")
    orders, hist, abelian, zc, dc = _table_invariants(table, 0)
    rec = {str(k): v for k, v in sorted(hist.items())}
    if rec != cert["histogram"] or n != cert["order"] or abelian != cert["abelian"]:
        return CheckResult(False, "group", "recorded invariants differ from the table")
    label = identify(n, hist, abelian, zc, dc)
    if label != cert["label"]:
        return CheckResult(False, "group", "label mismatch")
    return CheckResult(True, "group", f"order {n}, label {label}")


def _check_cohomology(cert: dict) -> CheckResult:
    from .cohomology import cohomology_bar, cohomology_cyclic, cohomology_torus, parse_module, torus_bar
    from .abelian import canonicalize

    G = parse_group(cert["group"])
    d = int(cert["degree"])
    if cert["module"] == "torus":
        if canonicalize(G).rank <= 1 and cert["method"] != "periodic":
            alt = cohomology_torus(G, d, method="periodic")
        else:
            alt = torus_bar(G, d)
    else:
        M = parse_module(cert["module"], G)
        if cert["method"] == "periodic":
            alt = cohomology_bar(M, d, representatives=False)
        elif G.rank == 1:
            alt = cohomology_cyclic(G.order, M, d)
        else:
            alt = cohomology_bar(M, d, representatives=False)
    ok = alt.literal() == cert["result"]
    return CheckResult(ok, "cohomology", f"recomputed {alt.literal()} via {alt.method}")


def _check_forms(cert: dict) -> CheckResult:
    from .extension import enumerate_bimodule_forms, filter_order_two, filter_viable, twist_orbits

    A = parse_group(cert["A"])
    F = enumerate_bimodule_forms(A)
    V = filter_viable(F)
    T = filter_order_two(V)
    counts = {"forms": len(F), "viable": len(V), "order_two": len(T), "orbits": len(twist_orbits(T, A))}
    ok = all(counts[k] == cert["counts"].get(k) for k in counts)
    return CheckResult(ok, "forms", json.dumps(counts, sort_keys=True))


CHECKERS = {
    "order": _check_order,
    "equal": _check_equal,
    "group": _check_group,
    "cohomology": _check_cohomology,
    "forms": _check_forms,
}


def check_certificate(cert: dict) -> CheckResult:
    kind = cert.get("kind")
    if kind not in CHECKERS:
        raise ParseError(f"unknown certificate kind {kind!r}")
    try:
        return CHECKERS[kind](cert)
    except CertificateInvalid as exc:
        return CheckResult(False, kind, str(exc))


def write_certificate(cert: dict, directory: str, stem: str) -> str:
    """Write ``cert`` under a content-addressed name; returns the path."""
    os.makedirs(directory, exist_ok=True)
    text = json.dumps(cert, sort_keys=True, indent=1)
    digest = hashlib.sha256(text.encode()).hexdigest()[:12]
    path = os.path.join(directory, f"{stem}-{digest}.json")
    with open(path, "w") as fh:
        fh.write(text + "\n")
    return path


def load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
