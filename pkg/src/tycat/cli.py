"""Command-line front end: ``tycat <command> ...``.

Exit codes: 0 success, 2 verification mismatch, 3 cap exceeded,
4 parse error (1 for any other library error).
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Optional, Sequence

from . import __version__
from .abelian import DEFAULT_CAP, format_group, parse_group
from .errors import CapExceeded, ParseError, TycatError

try:  # Python >= 3.11
    import tomllib as _toml
except ModuleNotFoundError:  # pragma: no cover - depends on interpreter
    import tomli as _toml

DEFAULTS = {
    "json": False,
    "verify": False,
    "cap_subgroups": DEFAULT_CAP,
    "cap_order": 12,
    "seed": 20240611,
    "cert_dir": "tycat-certs",
    "timings": False,
}

# expected values for --verify on shipped presets (None = not claimed)
EXPECTED_ORDERS = {
    "a": {"mod_witt": 4, "raw": 4},
    "a-": {"mod_witt": 4, "raw": None},
    "b": {"mod_witt": 4, "raw": 4},
    "b-": {"mod_witt": 4, "raw": None},
    "c": {"mod_witt": 4, "raw": 4},
    "ab": {"mod_witt": 3, "raw": None},
    "ba": {"mod_witt": 3, "raw": None},
    "a2b": {"mod_witt": 2, "raw": None},
    "unit": {"mod_witt": 1, "raw": 1},
    "trivial": {"mod_witt": 1, "raw": 1},
}
EXPECTED_GROUPS = {"ab-generators": {"order": 24, "histogram": {"1": 1, "2": 9, "3": 8, "4": 6}, "label": "S4"}}
EXPECTED_COHOMOLOGY = {
    ("Z2", "Z2+Z2:swap", 3): "0",
    ("Z2", "Z2+Z2:swap", 4): "0",
    ("Z2", "torus", 5): "Z2",
    ("Z2", "torus", 6): "0",
    ("Z3", "torus", 6): "0",
    ("Z4", "torus", 6): "0",
}
EXPECTED_FORMS = {"Z2": {"forms": 32, "viable": 16, "order_two": 4, "orbits": 1}}


class Output:
    """Collects text lines or a JSON payload and prints once, deterministically."""

    def __init__(self, as_json: bool):
        self.as_json = as_json
        self.lines: list[str] = []
        self.payload: dict = {}

    def text(self, line: str = "") -> None:
        self.lines.append(line)

    def flush(self) -> None:
        if self.as_json:
            print(json.dumps(self.payload, indent=2, sort_keys=True))
        else:
            for line in self.lines:
                print(line)


# ---------------------------------------------------------------------------
# argument parsing


def _common(parser: argparse.ArgumentParser, suppress: bool) -> None:
    d = argparse.SUPPRESS if suppress else None
    parser.add_argument("--json", action="store_true", default=d, help="machine-readable output")
    parser.add_argument("--verify", action="store_true", default=d, help="compare against built-in expected values")
    parser.add_argument("--cap-subgroups", type=int, default=d, metavar="N", help="cap for subgroup and search sizes")
    parser.add_argument("--cap-order", type=int, default=d, metavar="N", help="largest power tried in order searches")
    parser.add_argument("--seed", type=int, default=d, help="seed for randomized sweeps")
    parser.add_argument("--config", default=d, metavar="FILE", help="TOML file with defaults for these flags")
    parser.add_argument("--cert-dir", default=d, metavar="DIR", help="directory for certificate files")
    parser.add_argument("--timings", action="store_true", default=d, help="include wall times (breaks byte-identical output)")


def _element_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--preset", action="append", default=[], help="shipped element or generator set (repeatable)")
    p.add_argument("--element", action="append", default=[], metavar="FILE", help="element JSON file (repeatable)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tycat", description="Twisted graded Witt groups, group cohomology and duality-defect data.")
    parser.add_argument("--version", action="version", version=f"tycat {__version__}")
    _common(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    w = sub.add_parser("witt", help="orders, equality, classes and group closure")
    _common(w, suppress=True)
    wsub = w.add_subparsers(dest="witt_command", required=True)
    for name, hlp in (
        ("order", "raw and mod-Witt orders with traces"),
        ("equal", "compare two classes"),
        ("classify", "partition elements by mod-Witt class"),
        ("group", "close generators into a group"),
    ):
        p = wsub.add_parser(name, help=hlp)
        _common(p, suppress=True)
        _element_args(p)
        if name == "equal":
            p.add_argument("--mode", choices=["mod-witt", "raw", "both"], default="both")
        if name == "order":
            p.add_argument("--mode", choices=["mod-witt", "raw", "both"], default="both")
        if name == "group":
            p.add_argument("--closure-cap", type=int, default=256)

    c = sub.add_parser("cohomology", help="H^d(G; M) for a small abelian G")
    _common(c, suppress=True)
    c.add_argument("--group", required=True, help="group literal, e.g. Z2 or Z2+Z2")
    c.add_argument("--module", required=True, help='"torus" or e.g. "Z2+Z2:swap", "Z4:neg"')
    c.add_argument("--degrees", default="0..6", help="e.g. 0..6 or 5,6")
    c.add_argument("--method", choices=["auto", "periodic", "bar", "both"], default="auto")

    for alias, kind in (("ty", None), ("ty-forms", "forms"), ("ty-classify", "classify")):
        t = sub.add_parser(alias, help="bimodule forms and extension data")
        _common(t, suppress=True)
        if kind is None:
            tsub = t.add_subparsers(dest="ty_command", required=True)
            f = tsub.add_parser("forms")
            k = tsub.add_parser("classify")
            _common(f, suppress=True)
            _common(k, suppress=True)
        else:
            t.set_defaults(ty_command=kind)
            f = k = t
        if kind in (None, "forms"):
            f.add_argument("--A", dest="A", required=True)
            f.add_argument("--filter", choices=["all", "viable", "order2", "order4"], default="all")
            f.add_argument("--list", action="store_true", help="list the surviving forms")
        if kind in (None, "classify"):
            k.add_argument("--A", dest="A", required=True)
            k.add_argument("--G", dest="G", required=True)
            k.add_argument("--action", default="swap", help="swap, S-matrix, neg or trivial")
            k.add_argument("--witt-orders", default="1", help="comma-separated declared Witt orders")
            k.add_argument("--list", action="store_true", help="print every label")

    fz = sub.add_parser("fusion-table", help="symbolic four-piece fusion table")
    _common(fz, suppress=True)
    fz.add_argument("--A", dest="A", required=True)
    fz.add_argument("--phi", default="trivial", help='"trivial" or "q:1/4;aut:neg"')

    v = sub.add_parser("verify-paper", help="run the acceptance matrix")
    _common(v, suppress=True)
    v.add_argument("--only", default=None, help="comma-separated criterion numbers")

    cc = sub.add_parser("check-cert", help="re-verify a certificate file")
    _common(cc, suppress=True)
    cc.add_argument("files", nargs="+")
    return parser


def resolve_settings(args: argparse.Namespace) -> dict:
    settings = dict(DEFAULTS)
    cfg_path = getattr(args, "config", None)
    if cfg_path:
        try:
            with open(cfg_path, "rb") as fh:
                data = _toml.load(fh)
        except OSError as exc:
            raise ParseError(f"{cfg_path}: {exc.strerror}") from exc
        except _toml.TOMLDecodeError as exc:
            raise ParseError(f"{cfg_path}: {exc}") from exc
        for key, val in data.items():
            k = key.replace("-", "_")
            if k not in DEFAULTS:
                raise ParseError(f"{cfg_path}: unknown key {key!r}")
            settings[k] = val
    for k in DEFAULTS:
        val = getattr(args, k, None)
        if val is not None:
            settings[k] = val
    return settings


def parse_degrees(text: str) -> list[int]:
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return list(range(int(lo), int(hi) + 1))
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise ParseError(f"bad degree list {text!r}") from exc


# ---------------------------------------------------------------------------
# element loading


def _load_elements(args, settings) -> list[tuple[str, object]]:
    from .certificates import load_json
    from .presets import GENERATOR_SETS, generator_set, preset
    from .witt import GradedPremetricGroup

    out = []
    for name in args.preset:
        if name in GENERATOR_SETS:
            for n, g in zip(GENERATOR_SETS[name], generator_set(name)):
                out.append((n, g))
        else:
            out.append((name, preset(name)))
    for path in args.element:
        out.append((path, GradedPremetricGroup.from_json(load_json(path))))
    if not out:
        raise ParseError("give at least one --preset or --element")
    return out


def _cite(out: Output, settings: dict, cert: dict, stem: str) -> Optional[str]:
    from .certificates import write_certificate

    if not settings["cert_dir"]:
        return None
    path = write_certificate(cert, settings["cert_dir"], stem)
    return path


# ---------------------------------------------------------------------------
# commands


def cmd_witt(args, settings, out: Output) -> int:
    from .certificates import equality_certificate, group_certificate, order_certificate
    from .witt import (
        classes_equal,
        classes_equal_mod_witt_trace,
        group_structure,
        is_a_trivial,
        order_details,
        s_opposite,
        twisted_product,
    )

    cap = settings["cap_subgroups"]
    cap_n = settings["cap_order"]
    elems = _load_elements(args, settings)
    mismatches = []
    sub = args.witt_command
    if sub == "order":
        results = []
        for name, X in elems:
            rec = {"element": name}
            for mode, flag in (("mod_witt", True), ("raw", False)):
                if args.mode not in ("both", mode.replace("_", "-")):
                    continue
                res = order_details(X, cap_n, flag, cap)
                cert = order_certificate(X, mode, res.order, res.trace, cap)
                path = _cite(out, settings, cert, f"order-{mode}-{_stem(name)}")
                rec[mode] = {"order": res.order, "certificate": path}
                if res.trace is not None:
                    rec[mode]["trace"] = res.trace.to_json()["steps"]
                    rec[mode]["decided_by"] = res.trace.decided_by
                if flag:
                    rec[mode]["power_reduction"] = _power_reduction(X, res.order, cap)
                exp = EXPECTED_ORDERS.get(name, {}).get(mode)
                if settings["verify"] and exp is not None and exp != res.order:
                    mismatches.append(f"{name}: order_{mode} = {res.order}, expected {exp}")
            results.append(rec)
            parts = [f"order_{m}={rec[m]['order']}" for m in ("mod_witt", "raw") if m in rec]
            out.text(f"{name}: " + ", ".join(parts))
            for m in ("mod_witt", "raw"):
                if m in rec:
                    for st in rec[m].get("trace", []):
                        desc = f"  {m} trace: {st['step']} {' '.join(st['subgroup'])}"
                        if st["step"] == "split":
                            desc += f" residue {st['residue_group']} q={st['residue_q']['gen']} off={st['residue_q']['offdiag']}"
                        out.text(desc)
                    for st in rec[m].get("power_reduction", []):
                        if st["step"] == "split":
                            out.text(f"  {name}^{rec[m]['order']} splits metric {st['residue_group']} q={st['residue_values']} -> {st['names']}")
                    if rec[m]["certificate"]:
                        out.text(f"  {m} certificate: {rec[m]['certificate']}")
        out.payload = {"command": "witt order", "results": results}
    elif sub == "equal":
        if len(elems) != 2:
            raise ParseError("witt equal needs exactly two elements")
        (n1, X), (n2, Y) = elems
        rec = {"left": n1, "right": n2}
        if args.mode in ("both", "mod-witt"):
            tr = classes_equal_mod_witt_trace(X, Y, cap)
            cert = equality_certificate(X, Y, "mod_witt", tr is not None, tr)
            rec["mod_witt"] = {"equal": tr is not None, "certificate": _cite(out, settings, cert, f"equal-mw-{_stem(n1)}-{_stem(n2)}")}
        if args.mode in ("both", "raw"):
            W = twisted_product(X, s_opposite(Y))
            L = is_a_trivial(W, cap * cap)
            cert = equality_certificate(X, Y, "raw", L is not None, L)
            rec["raw"] = {"equal": L is not None, "certificate": _cite(out, settings, cert, f"equal-raw-{_stem(n1)}-{_stem(n2)}")}
        for m in ("mod_witt", "raw"):
            if m in rec:
                out.text(f"{n1} vs {n2}: equal_{m}={rec[m]['equal']}")
                if rec[m]["certificate"]:
                    out.text(f"  certificate: {rec[m]['certificate']}")
        out.payload = {"command": "witt equal", **rec}
    elif sub == "classify":
        from .witt import classes_equal_mod_witt, order_mod_witt

        classes: list[list[tuple[str, object]]] = []
        for name, X in elems:
            for cls in classes:
                if classes_equal_mod_witt(X, cls[0][1], cap):
                    cls.append((name, X))
                    break
            else:
                classes.append([(name, X)])
        hist: dict[int, int] = {}
        rows = []
        for cls in classes:
            o = order_mod_witt(cls[0][1], cap_n, cap)
            hist[o] = hist.get(o, 0) + 1
            rows.append({"members": [n for n, _ in cls], "order_mod_witt": o})
            out.text(f"class {{{', '.join(n for n, _ in cls)}}}: order {o}")
        out.text("histogram " + " ".join(f"{k}:{v}" for k, v in sorted(hist.items())))
        out.payload = {"command": "witt classify", "classes": rows, "histogram": {str(k): v for k, v in sorted(hist.items())}}
    else:
        names = [n for n, _ in elems]
        gens = [g for _, g in elems]
        letters = [chr(ord("a") + i) for i in range(len(gens))] if len(set(names)) != len(names) or any(len(n) != 1 for n in names) else names
        S = group_structure(gens, names=letters, closure_cap=args.closure_cap, cap=cap)
        cert = group_certificate(gens, letters, S)
        path = _cite(out, settings, cert, "group-" + "-".join(_stem(n) for n in names))
        hist = " ".join(f"{k}:{v}" for k, v in sorted(S.histogram.items()))
        out.text(f"|G|={S.order}, histogram {hist}, label={S.label}")
        out.text(f"abelian={S.abelian}, center={S.center_order}, derived={S.derived_order}")
        if path:
            out.text(f"certificate: {path}")
        out.payload = {"command": "witt group", "generators": names, **S.to_json(), "certificate": path}
        key = args.preset[0] if args.preset else None
        exp = EXPECTED_GROUPS.get(key)
        if settings["verify"] and exp is not None:
            got = {"order": S.order, "histogram": {str(k): v for k, v in sorted(S.histogram.items())}, "label": S.label}
            if got != exp:
                mismatches.append(f"group {key}: {got} != {exp}")
    return _finish_verify(out, settings, mismatches)


def _power_reduction(X, n: int, cap: int) -> list[dict]:
    """Reduction steps of the raw power X^n, naming split summands isometric to C."""
    from .presets import metric_C
    from .witt import find_graded_isometry, power, reduce_object, trivially_graded

    tr = reduce_object(power(X, n), True, cap)
    out = []
    for st in tr.steps:
        d = st.to_json()
        if st.kind == "split":
            q = st.residue
            d["residue_values"] = [str(q(x)) for x in q.group.elements() if any(x)]
            iso = find_graded_isometry(trivially_graded(X.context, q), metric_C(X.context))
            d["names"] = "z (= C)" if iso is not None else "unnamed metric group"
        out.append(d)
    return out


def _stem(name: str) -> str:
    return "".join(ch if ch.isalnum() else "_" for ch in name.rsplit("/", 1)[-1])[:32] or "x"


def _finish_verify(out: Output, settings: dict, mismatches: list[str]) -> int:
    if settings["verify"]:
        out.payload["verify"] = {"ok": not mismatches, "mismatches": mismatches}
        for m in mismatches:
            out.text(f"MISMATCH {m}")
        if not mismatches:
            out.text("verify: ok")
    return 2 if mismatches else 0


def cmd_cohomology(args, settings, out: Output) -> int:
    from .abelian import canonicalize
    from .certificates import cohomology_certificate
    from .cohomology import cohomology_bar, cohomology_cyclic, cohomology_torus, parse_module, torus_bar

    G = parse_group(args.group)
    degrees = parse_degrees(args.degrees)
    cyclic = canonicalize(G).rank <= 1 and G.rank <= 1
    method = args.method
    if method == "auto":
        method = "periodic" if cyclic else "bar"
    if method in ("periodic", "both") and not cyclic:
        raise ParseError("the periodic method needs a cyclic group given as Zn")
    rows = []
    mismatches = []
    torus = args.module.strip() == "torus"
    module = None if torus else parse_module(args.module, G)
    for d in degrees:
        res = {}
        if torus:
            if d == 0:
                res["periodic" if method != "bar" else "bar"] = "C^x (not finite)"
            else:
                if method in ("periodic", "both"):
                    res["periodic"] = cohomology_torus(G, d, method="periodic").literal()
                if method in ("bar", "both"):
                    res["bar"] = torus_bar(G, d).literal()
        else:
            if method in ("periodic", "both"):
                res["periodic"] = cohomology_cyclic(G.order, module, d).literal()
            if method in ("bar", "both"):
                res["bar"] = cohomology_bar(module, d, representatives=False).literal()
        vals = sorted(set(res.values()))
        agree = len(vals) == 1
        value = vals[0] if agree else None
        row = {"degree": d, "value": value, "methods": res, "agree": agree}
        if agree and not value.startswith("C^x"):
            m = "periodic" if "periodic" in res else "bar"
            cert = cohomology_certificate(format_group(G), args.module, d, value, m)
            row["certificate"] = _cite(out, settings, cert, f"cohomology-{_stem(format_group(G))}-{_stem(args.module)}-{d}")
        rows.append(row)
        if not agree:
            mismatches.append(f"H{d}: methods disagree {res}")
        exp = EXPECTED_COHOMOLOGY.get((format_group(G), args.module, d))
        if settings["verify"] and exp is not None and exp != value:
            mismatches.append(f"H{d} = {value}, expected {exp}")
    out.text(" ".join(f"H{r['degree']}={r['value'] if r['agree'] else '?'}" for r in rows))
    for r in rows:
        if r.get("certificate"):
            out.text(f"  H{r['degree']} certificate: {r['certificate']}")
    out.payload = {"command": "cohomology", "group": format_group(G), "module": args.module, "degrees": rows}
    if mismatches and not settings["verify"]:
        for m in mismatches:
            out.text(f"MISMATCH {m}")
        return 2
    return _finish_verify(out, settings, mismatches)


def cmd_ty(args, settings, out: Output) -> int:
    from .certificates import forms_certificate
    from .extension import (
        classify_extension,
        enumerate_bimodule_forms,
        filter_order_four,
        filter_order_four_literal,
        filter_order_two,
        filter_viable,
        twist_orbits,
    )

    A = parse_group(args.A)
    cap = settings["cap_subgroups"]
    mismatches = []
    if args.ty_command == "forms":
        forms = enumerate_bimodule_forms(A, cap=cap)
        viable = filter_viable(forms)
        two = filter_order_two(viable)
        four = filter_order_four(viable)
        four_lit = filter_order_four_literal(viable)
        orbits = twist_orbits(two, A)
        counts = {"forms": len(forms), "viable": len(viable), "order_two": len(two), "orbits": len(orbits)}
        path = _cite(out, settings, forms_certificate(format_group(A), counts), f"forms-{_stem(format_group(A))}")
        out.text(f"{len(forms)} / {len(viable)} viable / {len(two)} order-two / {len(orbits)} orbit{'s' if len(orbits) != 1 else ''}")
        out.text(f"order-four: {len(four)} (antisymmetric reading: {len(four_lit)})")
        out.text("orbit sizes: " + " ".join(str(len(o)) for o in orbits))
        chosen = {"all": forms, "viable": viable, "order2": two, "order4": four}[args.filter]
        if args.list:
            for f in chosen:
                out.text(f"  {f.label()}")
        if path:
            out.text(f"certificate: {path}")
        out.payload = {
            "command": "ty forms",
            "A": format_group(A),
            **counts,
            "order_four": len(four),
            "order_four_antisymmetric": len(four_lit),
            "orbit_sizes": [len(o) for o in orbits],
            "filter": args.filter,
            "selected": len(chosen),
            "certificate": path,
        }
        if args.list:
            out.payload["forms"] = [f.q.to_json() for f in chosen]
        exp = EXPECTED_FORMS.get(format_group(A))
        if settings["verify"] and exp is not None and exp != counts:
            mismatches.append(f"counts {counts} != {exp}")
    else:
        try:
            worders = tuple(int(x) for x in args.witt_orders.split(",") if x.strip())
        except ValueError as exc:
            raise ParseError(f"bad --witt-orders {args.witt_orders!r}") from exc
        rep = classify_extension(args.G, A, args.action, worders)
        data = rep.to_json()
        out.text(f"G={data['G']} A={data['A']} action={data['action']}")
        for k, v in data["obstructions"].items():
            out.text(f"  obstruction {k} = {v['group']} ({'vanishes' if v['vanishes'] else 'nonzero'})")
        for k, v in data["torsors"].items():
            out.text(f"  torsor {k} = {v['group']} (size {v['size']})")
        out.text(f"  sigma torsor size {rep.sigma_torsor_size}; {len(rep.labels)} labels")
        out.text(f"  pairing: {rep.pairing}")
        out.text(f"  note: {rep.note}")
        if args.list:
            for lab in rep.labels:
                out.text(f"    {lab}")
        out.payload = {"command": "ty classify", **data}
    return _finish_verify(out, settings, mismatches)


def cmd_fusion(args, settings, out: Output) -> int:
    from .extension import generalized_ty_fusion_table

    table = generalized_ty_fusion_table(args.A, args.phi)
    out.text(table.render())
    out.text(f"closed={table.is_closed()} grading_additive={table.grading_ok()}")
    out.payload = {"command": "fusion-table", **table.to_json(), "closed": table.is_closed(), "grading_additive": table.grading_ok()}
    return 0 if table.is_closed() and table.grading_ok() else 2


def cmd_verify_paper(args, settings, out: Output) -> int:
    from .acceptance import AcceptanceConfig, run_all
    from .certificates import write_certificate

    only = [int(x) for x in args.only.split(",")] if args.only else None
    cfg = AcceptanceConfig(cap=settings["cap_subgroups"], cap_order=settings["cap_order"], seed=settings["seed"])
    results = run_all(cfg, only)
    timings = settings["timings"]
    rows = []
    for r in results:
        paths = []
        if settings["cert_dir"]:
            for i, c in enumerate(r.certificates):
                paths.append(write_certificate(c, settings["cert_dir"], f"criterion{r.number}-{i}"))
        out.text(r.line(timings))
        for p in paths:
            out.text(f"    certificate: {p}")
        row = r.to_json(timings)
        row["certificates"] = paths
        rows.append(row)
    passed = sum(r.passed for r in results)
    out.text(f"{passed}/{len(results)} criteria passed")
    out.payload = {"command": "verify-paper", "version": __version__, "caps": {"subgroups": cfg.cap, "order": cfg.cap_order}, "seed": cfg.seed, "criteria": rows}
    if any(r.cap_exceeded for r in results):
        return 3
    return 0 if passed == len(results) else 2


def cmd_check_cert(args, settings, out: Output) -> int:
    from .certificates import check_certificate, load_json

    rows = []
    ok_all = True
    for path in args.files:
        res = check_certificate(load_json(path))
        ok_all &= res.ok
        rows.append({"file": path, **res.to_json()})
        out.text(f"{'OK  ' if res.ok else 'FAIL'} {path}: {res.kind}: {res.detail}")
    out.payload = {"command": "check-cert", "results": rows}
    return 0 if ok_all else 2


COMMANDS = {
    "witt": cmd_witt,
    "cohomology": cmd_cohomology,
    "ty": cmd_ty,
    "ty-forms": cmd_ty,
    "ty-classify": cmd_ty,
    "fusion-table": cmd_fusion,
    "verify-paper": cmd_verify_paper,
    "check-cert": cmd_check_cert,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        settings = resolve_settings(args)
        out = Output(bool(settings["json"]))
        t = time.perf_counter()
        code = COMMANDS[args.command](args, settings, out)
        if settings["timings"]:
            out.payload["seconds"] = round(time.perf_counter() - t, 3)
            out.text(f"elapsed {time.perf_counter() - t:.2f}s")
        out.flush()
        return code
    except CapExceeded as exc:
        extra = f" (size {exc.size}, cap {exc.cap})" if exc.size is not None else ""
        print(f"tycat: cap exceeded: {exc}{extra}", file=sys.stderr)
        return exc.exit_code
    except TycatError as exc:
        print(f"tycat: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
