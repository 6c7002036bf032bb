"""``syzlab`` command line.

Exit codes: 0 success, 1 validation failure or bad input, 2 an UNDECIDED
result under ``--strict``, 3 an internal assertion breach.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import acceptance, corpus, ff, io, pex
from .decomp import decompose
from .itbuild import (
    ClassFamily,
    SplitFailed,
    build_it_sequence,
    check_ts1,
    check_ts2,
    check_ts3,
    triangular_preset,
    ts1_witness,
    ts2_witness,
    verify_it_certificate,
)
from .itfunc import it_report, syzygy_finiteness_search
from .quiver import BoundQuiverAlgebra, NonUniformRelation, NotAdmissible, is_nakayama, projective
from .rep import (
    RepresentationError,
    cover,
    cover_sequence,
    direct_sum,
    direct_sum_data,
    ext_dim,
    hom_space,
    identity,
    minimal_resolution,
    pd,
    split_sequence,
    syzygy,
)
from .triangular import (
    BimoduleError,
    ProjectivityHypothesisFailed,
    TriangularAlgebra,
    compare_syzygies,
    it_module_construction,
    t_k_algebra,
    triple,
    triple_syzygy_direct,
    triple_syzygy_formula,
)

VALIDATION_ERRORS = (io.InputError, RepresentationError, NotAdmissible, NonUniformRelation, pex.PExError,
                     BimoduleError, ProjectivityHypothesisFailed, ValueError, KeyError)


class Failed(Exception):
    """A computed report that represents a failure; carries the report and exit code."""

    def __init__(self, report: dict, code: int = 1):
        super().__init__(code)
        self.report = report
        self.code = code


def _env_int(name: str, default: int) -> int:
    try:
        return int(os.environ.get(name, default))
    except ValueError:
        return default


def _global_options(parser: argparse.ArgumentParser, suppress: bool) -> None:
    def d(v):
        return argparse.SUPPRESS if suppress else v

    parser.add_argument("--field-char", type=int, default=d(ff.DEFAULT_CHAR), help="prime characteristic")
    parser.add_argument("--seed", type=int, default=d(0))
    parser.add_argument("--depth-cap", type=int, default=d(_env_int("SYZLAB_DEPTH_CAP", 16)))
    parser.add_argument("--class-cap", type=int, default=d(_env_int("SYZLAB_CLASS_CAP", 512)))
    parser.add_argument("--pd-cap", type=int, default=d(_env_int("SYZLAB_PD_CAP", 16)))
    parser.add_argument("--mult-cap", type=int, default=d(_env_int("SYZLAB_MULT_CAP", 2)),
                        help="multiplicity bound of witness searches")
    parser.add_argument("--strict", action="store_true", default=d(False), help="UNDECIDED becomes a failure")
    parser.add_argument("--format", choices=("json", "text"), default=d("json"))


def config(args) -> dict:
    return {"field_char": args.field_char, "seed": args.seed, "depth_cap": args.depth_cap,
            "class_cap": args.class_cap, "pd_cap": args.pd_cap, "mult_cap": args.mult_cap}


def _name(m) -> str:
    m = getattr(m, "flat", m)
    return m.label or "x".join(map(str, m.dim_vector()))


def decomposition_json(m, seed: int) -> dict:
    m = getattr(m, "flat", m)
    dec = decompose(m, seed)
    return {
        "certainty": dec.certainty.value,
        "summands": [{"dim_vector": list(s.module.dim_vector()), "multiplicity": s.multiplicity,
                      "certainty": s.certainty.value} for s in dec.summands],
    }


def _undecided(args, report: dict, undecided: bool) -> dict:
    if undecided and args.strict:
        raise Failed(report, 2)
    return report


# alg -----------------------------------------------------------------------


def cmd_alg_validate(args) -> dict:
    try:
        alg = io.load_algebra(args.algebra, args.field_char)
    except (NotAdmissible, NonUniformRelation) as e:
        raise Failed({"valid": False, "error": type(e).__name__, "message": str(e)})
    out = {"valid": True, "name": alg.name, "vertices": list(alg.vertices), "arrows": len(alg.quiver.arrows),
           "dimension": alg.total_dimension, "char": alg.char}
    if isinstance(alg, TriangularAlgebra):
        out["kind"] = "triangular"
        out["bimodule_left_projective"] = alg.M.is_left_projective()
        out["bimodule_right_projective"] = alg.M.is_right_projective()
    else:
        out["kind"] = "bound quiver"
        out["nakayama"] = is_nakayama(alg)
    return out


# mod -----------------------------------------------------------------------


def _load(args):
    alg = io.load_algebra(args.algebra, args.field_char)
    return alg, io.load_module(args.module, alg)


def cmd_mod(args) -> dict:
    alg, m = _load(args)
    out = {"algebra": alg.name, "module": _name(m), "dim_vector": list(m.dim_vector())}
    op = args.op
    if op == "resolve":
        res = minimal_resolution(m, args.length)
        out["terms"] = [{"k": k, "projective": list(res.projective(k).dim_vector()),
                         "syzygy": list(res.syzygy(k + 1).dim_vector())} for k in range(args.length + 1)]
    elif op == "syzygy":
        y = syzygy(m, args.n)
        out.update({"n": args.n, "syzygy": list(y.dim_vector()), "decomposition": decomposition_json(y, args.seed)})
    elif op == "pd":
        d = pd(m, args.pd_cap)
        out.update({"pd": d.value, "finite": d.finite, "at_least": d.at_least,
                    "periodic": list(d.periodic) if d.periodic else None, "pd_cap": args.pd_cap})
        return _undecided(args, out, not d.finite and d.periodic is None)
    elif op == "ext":
        if args.other is None:
            raise io.InputError("mod ext needs --other")
        n = io.load_module(args.other, alg)
        out.update({"other": _name(n), "degree": args.n, "ext_dim": ext_dim(m, n, args.n)})
    else:
        r = it_report(m, args.depth_cap, args.class_cap, seed=args.seed)
        out.update(r.to_json())
        return _undecided(args, out, not r.decided)
    return out


def cmd_decomp(args) -> dict:
    alg, m = _load(args)
    return {"algebra": alg.name, "module": _name(m), "dim_vector": list(m.dim_vector()),
            **decomposition_json(m, args.seed)}


def cmd_szf(args) -> dict:
    alg = io.load_algebra(args.algebra, args.field_char)
    family = [io.load_module(e, alg) for e in args.modules] if args.modules else _default_family(alg)
    r = syzygy_finiteness_search(family, args.n_max, args.depth_cap, args.class_cap, seed=args.seed)
    out = {"algebra": alg.name, "family": [_name(m) for m in family], **r.to_json()}
    return _undecided(args, out, not r.confirmed)


def _default_family(alg):
    if isinstance(alg, TriangularAlgebra):
        return [x.flat for x in corpus.corpus_triples(alg)]
    return corpus.module_samples(alg)


# tri -----------------------------------------------------------------------


def _tri(args) -> TriangularAlgebra:
    alg = io.load_algebra(args.algebra, args.field_char)
    if not isinstance(alg, TriangularAlgebra):
        raise io.InputError(f"{alg.name} is not a triangular algebra")
    return alg


def cmd_tri_build(args) -> dict:
    alg = _tri(args)
    A = io.load_module(args.A, alg.T)
    B = io.load_module(args.B, alg.U)
    basis = hom_space(alg.tensor(A).module, B)
    if args.hom_index is None:
        x = triple(alg, A, B, None)
    else:
        if not 0 <= args.hom_index < len(basis):
            raise io.InputError(f"Hom(M⊗A, B) has dimension {len(basis)}")
        x = triple(alg, A, B, basis[args.hom_index])
    return {"algebra": alg.name, "hom_dimension": len(basis), "image_in_radical": x.image_in_radical(),
            "triple": x.to_json()}


def cmd_tri_tk(args) -> dict:
    gamma = io.load_algebra(args.gamma, args.field_char)
    if not isinstance(gamma, BoundQuiverAlgebra):
        raise io.InputError("Γ must be a bound quiver algebra")
    alg = t_k_algebra(gamma, args.k)
    return {"name": alg.name, "k": args.k, "gamma_dimension": gamma.total_dimension,
            "total_dimension": alg.total_dimension, "bimodule_dimension": alg.M.dim,
            "bimodule_left_projective": alg.M.is_left_projective(),
            "bimodule_right_projective": alg.M.is_right_projective()}


def cmd_tri_syzygy(args) -> dict:
    alg = _tri(args)
    x = io.load_triple(args.triple, alg)
    out = {"algebra": alg.name, "triple": _name(x), "n": args.n}
    if args.mode == "formula":
        y = triple_syzygy_formula(x, args.n)
        out.update({"formula": list(y.dim_vector()), "decomposition": decomposition_json(y, args.seed)})
    elif args.mode == "direct":
        y = triple_syzygy_direct(x, args.n)
        out.update({"direct": list(y.dim_vector()), "decomposition": decomposition_json(y, args.seed)})
    else:
        out.update(compare_syzygies(x, args.n).to_json())
    return out


def _all_or_samples(alg):
    return corpus.indecomposables(alg) if is_nakayama(alg) else corpus.module_samples(alg)


def cmd_tri_itmod(args) -> dict:
    alg = _tri(args)
    V = io.load_module(args.V, alg.T) if args.V else direct_sum(*_all_or_samples(alg.T))
    V2 = io.load_module(args.V2, alg.U) if args.V2 else direct_sum(*_all_or_samples(alg.U))
    C = it_module_construction(V, V2, alg)
    return {"algebra": alg.name, "V": list(V.dim_vector()), "V2": list(V2.dim_vector()),
            "hom_basis": len(hom_space(alg.tensor(V).module, direct_sum(V2, alg.M.left_module))),
            "dim_vector": list(C.dim_vector()), "decomposition": decomposition_json(C, args.seed)}


# it ------------------------------------------------------------------------


def _scenario(args, alg):
    if args.scenario:
        obj = io._read_json(args.scenario)
        fam = {k: ClassFamily(k, [io.load_module(e, alg) for e in obj.get(k, [])], seed=args.seed)
               for k in ("C", "D", "E", "K")}
        samples = [io.load_module(e, alg) for e in obj.get("samples", [])] or _default_family(alg)
        from .itbuild import ITScenario

        sc = ITScenario(fam["C"], fam["D"], fam["E"], fam["K"], obj.get("j", 1), obj.get("n", 0), obj.get("p", 0))
        return sc, samples
    if not isinstance(alg, TriangularAlgebra):
        raise io.InputError("the built-in scenario needs a triangular algebra; pass --scenario")
    return triangular_preset(alg, seed=args.seed), _default_family(alg)


def cmd_it_check(args) -> dict:
    alg = io.load_algebra(args.algebra, args.field_char)
    sc, samples = _scenario(args, alg)
    ts1 = check_ts1(samples, sc.C, sc.D, sc.ts1_hints, args.mult_cap, args.seed)
    ts2 = check_ts2(sc.D, sc.E, sc.K, sc.ts2_hints, args.mult_cap, args.seed)
    ts3 = check_ts3(sc.E, sc.C, sc.j)
    out = {"algebra": alg.name, "j": sc.j, "n": sc.n, "p": sc.p, "m": sc.m,
           "ts1": [r.to_json() for r in ts1], "ts2": [r.to_json() for r in ts2], "ts3": ts3.to_json()}
    ok = all(r.witnessed for r in ts1 + ts2) and ts3.passed
    out["all_witnessed"] = ok
    return _undecided(args, out, not ok)


def cmd_it_build(args) -> dict:
    alg = io.load_algebra(args.algebra, args.field_char)
    sc, samples = _scenario(args, alg)
    ts3 = check_ts3(sc.E, sc.C, sc.j)
    if not ts3.passed:
        raise Failed({"algebra": alg.name, "error": "TS3 fails", "ts3": ts3.to_json()})
    m = args.m if args.m is not None else sc.m
    rows = []
    for x in samples:
        w1, _ = ts1_witness(syzygy(x), sc.C, sc.D, sc.ts1_hints, args.mult_cap, args.seed)
        w2 = ts2_witness(w1.right, sc.E, sc.K, sc.ts2_hints, args.mult_cap, args.seed)[0] if w1 else None
        if w1 is None or w2 is None:
            rows.append({"sample": _name(x), "built": False, "reason": "no TS1/TS2 witness"})
            continue
        s = build_it_sequence(x, w1, w2, sc.j, m, args.seed)
        rows.append({"sample": _name(x), "built": True, "ok": s.ok, **s.to_json()})
    out = {"algebra": alg.name, "j": sc.j, "m": m, "sequences": rows}
    if any(not r.get("ok", False) for r in rows):
        raise Failed(out)
    return out


def cmd_it_certify(args) -> dict:
    alg = io.load_algebra(args.algebra, args.field_char)
    if args.V:
        V = io.load_module(args.V, alg)
    elif isinstance(alg, TriangularAlgebra):
        V = it_module_construction(direct_sum(*_all_or_samples(alg.T)), direct_sum(*_all_or_samples(alg.U)), alg).flat
    else:
        V = direct_sum(*_all_or_samples(alg))
    samples = [io.load_module(e, alg) for e in args.samples] if args.samples else _default_family(alg)
    cert = verify_it_certificate(V, samples, args.n, args.seed)
    out = {"algebra": alg.name, **cert.to_json(), "counterexample": cert.counterexample}
    if not cert.ok:
        raise Failed(out)
    return out


# pex -----------------------------------------------------------------------


def _diagram_summary(d: pex.PExDiagram) -> dict:
    return {e: list(d.objects[e].dim_vector()) for e in pex.OBJECTS}


def cmd_pex_validate(args) -> dict:
    alg = io.load_algebra(args.algebra, args.field_char)
    v = pex.validate(io.load_diagram(args.diagram, alg))
    out = v.to_json()
    if not v.valid:
        raise Failed(out)
    return out


def cmd_pex_build(args) -> dict:
    if args.extension is not None:
        x1, x2, y1, y2 = (int(t) for t in args.extension.split(","))
        fx = pex.extension_fixture(x1, x2, y1, y2, args.field_char)
        v = pex.validate(fx.M)
        return {"diagram": fx.M.to_json(), "validation": v.to_json()}
    alg = io.load_algebra(args.algebra, args.field_char)
    kind, _, rest = args.ses.partition(":")
    if kind == "cover":
        ses = cover_sequence(io.load_module(rest, alg))
    elif kind == "split":
        x, z = (io.load_module(t, alg) for t in rest.split(","))
        ses = split_sequence(x, z)
    else:
        raise io.InputError("--ses must be cover:EXPR or split:X,Z")
    if args.g == "identity":
        g = identity(ses.right)
    elif args.g == "cover":
        g = cover(ses.right)[1]
    else:
        ds = direct_sum_data([ses.right, projective(alg, alg.vertices[0])])
        g = ds.projections[0]
    d = pex.build_from_pullback(ses, g)
    return {"dims": _diagram_summary(d), "validation": pex.validate(d).to_json(), "diagram": d.to_json()}


def cmd_pex_cover(args) -> dict:
    alg = io.load_algebra(args.algebra, args.field_char)
    d = io.load_diagram(args.diagram, alg)
    c = pex.pex_cover(d)
    out = {"K": _diagram_summary(c.K), "P": _diagram_summary(c.P), "A": _diagram_summary(d), "checks": c.checks}
    if not c.ok:
        raise Failed(out, 3)
    return out


# corpus --------------------------------------------------------------------


def parse_criteria(spec: str) -> list[int]:
    out: set[int] = set()
    for part in spec.split(","):
        a, _, b = part.partition("-")
        lo, hi = int(a), int(b or a)
        out.update(range(lo, hi + 1))
    bad = sorted(out - set(range(1, 11)))
    if bad:
        raise io.InputError(f"unknown criteria {bad}")
    return sorted(out)


def cmd_corpus_run(args):
    wanted = parse_criteria(args.criteria)
    cfg = config(args)
    results = acceptance.run_criteria([k for k in wanted if k != 10], args.seed, args.field_char)
    if 10 in wanted:
        base = [r for r in results if r.number <= 9]
        if [r.number for r in base] != list(range(1, 10)):
            base = acceptance.run_criteria(range(1, 10), args.seed, args.field_char)
        results.append(acceptance.criterion_10(acceptance.report_text(base, cfg), args.seed, args.field_char, cfg))
    if args.format == "text":
        text = "".join(r.line() + "\n" for r in results)
    else:
        text = acceptance.report_text(results, cfg)
    return text, all(r.passed for r in results)


# main ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="syzlab", description="Syzygies, Igusa-Todorov functions and triangular algebras over GF(p).")
    _global_options(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _global_options(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    def leaf(group, name, func, **kw):
        p = group.add_parser(name, parents=[common], **kw)
        p.set_defaults(func=func)
        return p

    alg = sub.add_parser("alg").add_subparsers(dest="sub", required=True)
    p = leaf(alg, "validate", cmd_alg_validate, help="check admissibility and report the path basis size")
    p.add_argument("algebra")

    mod = sub.add_parser("mod").add_subparsers(dest="sub", required=True)
    for op in ("resolve", "syzygy", "pd", "ext", "phi", "psi"):
        p = leaf(mod, op, cmd_mod)
        p.set_defaults(op=op)
        p.add_argument("module")
        p.add_argument("--algebra", required=True)
        p.add_argument("--n", type=int, default=1)
        p.add_argument("--length", type=int, default=3)
        p.add_argument("--other")

    p = leaf(sub, "decomp", cmd_decomp, help="indecomposable summands with multiplicities")
    p.add_argument("module")
    p.add_argument("--algebra", required=True)

    szf = sub.add_parser("szf").add_subparsers(dest="sub", required=True)
    p = leaf(szf, "search", cmd_szf)
    p.add_argument("modules", nargs="*")
    p.add_argument("--algebra", required=True)
    p.add_argument("--n-max", type=int, default=4)

    tri = sub.add_parser("tri").add_subparsers(dest="sub", required=True)
    p = leaf(tri, "build", cmd_tri_build)
    p.add_argument("--algebra", required=True)
    p.add_argument("--A", required=True)
    p.add_argument("--B", required=True)
    p.add_argument("--hom-index", type=int)
    p = leaf(tri, "tk", cmd_tri_tk)
    p.add_argument("--gamma", required=True)
    p.add_argument("--k", type=int, default=2)
    p = leaf(tri, "syzygy", cmd_tri_syzygy)
    p.add_argument("triple")
    p.add_argument("--algebra", required=True)
    p.add_argument("--n", type=int, default=1)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--formula", dest="mode", action="store_const", const="formula")
    mode.add_argument("--direct", dest="mode", action="store_const", const="direct")
    mode.add_argument("--both", dest="mode", action="store_const", const="both")
    p.set_defaults(mode="both")
    p = leaf(tri, "itmod", cmd_tri_itmod)
    p.add_argument("--algebra", required=True)
    p.add_argument("--V")
    p.add_argument("--V2")

    it = sub.add_parser("it").add_subparsers(dest="sub", required=True)
    for name, func in (("check", cmd_it_check), ("build", cmd_it_build)):
        p = leaf(it, name, func)
        p.add_argument("--algebra", required=True)
        p.add_argument("--scenario")
        if name == "build":
            p.add_argument("--m", type=int)
    p = leaf(it, "certify", cmd_it_certify)
    p.add_argument("samples", nargs="*")
    p.add_argument("--algebra", required=True)
    p.add_argument("--V")
    p.add_argument("--n", type=int, default=0)

    px = sub.add_parser("pex").add_subparsers(dest="sub", required=True)
    for name, func in (("validate", cmd_pex_validate), ("cover", cmd_pex_cover)):
        p = leaf(px, name, func)
        p.add_argument("diagram")
        p.add_argument("--algebra", required=True)
    p = leaf(px, "build", cmd_pex_build)
    p.add_argument("--algebra", default="A2")
    p.add_argument("--ses", default="cover:S(1)")
    p.add_argument("--g", choices=("identity", "cover", "split"), default="identity")
    p.add_argument("--extension", help="x1,x2,y1,y2 for the one-dimensional extension fixture")

    cp = sub.add_parser("corpus").add_subparsers(dest="sub", required=True)
    p = leaf(cp, "run", cmd_corpus_run, help="run the acceptance suite")
    p.add_argument("--criteria", default="1-10")
    return parser


def _render_text(report) -> str:
    if not isinstance(report, dict):
        return json.dumps(report, ensure_ascii=False) + "\n"
    width = max((len(k) for k in report), default=0)
    lines = []
    for k, v in report.items():
        val = v if isinstance(v, (str, int, float, bool)) or v is None else json.dumps(v, ensure_ascii=False)
        lines.append(f"{k:<{width}}  {val}")
    return "\n".join(lines) + "\n"


def _emit(report, fmt: str) -> None:
    sys.stdout.write(io.dumps(report) if fmt == "json" else _render_text(report))


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.func is cmd_corpus_run:
            text, ok = cmd_corpus_run(args)
            sys.stdout.write(text)
            return 0 if ok else 1
        report = args.func(args)
        report = {**report, "config": config(args)}
        _emit(report, args.format)
        return 0
    except Failed as f:
        _emit({**f.report, "config": config(args)}, args.format)
        return f.code
    except (AssertionError, SplitFailed) as e:
        print(f"internal assertion: {e}", file=sys.stderr)
        return 3
    except VALIDATION_ERRORS as e:
        _emit({"error": type(e).__name__, "message": str(e)}, args.format)
        return 1


if __name__ == "__main__":
    sys.exit(main())
