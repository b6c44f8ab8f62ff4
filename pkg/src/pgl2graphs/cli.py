"""Command-line front end: build graphs, compute and predict spectra, certify bounds."""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from functools import cached_property

import numpy as np

from .cayley import Graph, analyze, build_cusp_graph, component_of, family_graph
from .characters import CharacterGroup
from .errors import CardinalityMismatch, Pgl2GraphsError
from .field_tower import DEFAULT_CAP, build_field, prime_power
from .kirillov import RepInstance, expected_fixed_dim, fixed_vectors
from .pgl2 import PGL2, SubgroupKind, coset_space, double_coset_partition, family_double_coset, family_params
from .predicted import Predictor
from .spectra import certify, is_submultiset, match_multiset, spectrum_report, sym_eigenvalues

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2
FAMILIES = ("k", "u", "a")


class UsageError(Exception):
    pass


def _round(obj):
    """Recursively round floats to 12 significant digits."""
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return x if not math.isfinite(x) else float(f"{x:.12g}")
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return [_round(obj.real), _round(obj.imag)]
    if isinstance(obj, dict):
        return {str(k): _round(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round(v) for v in obj]
    return obj


def dumps(obj) -> str:
    return json.dumps(_round(obj), sort_keys=True, indent=2)


@dataclass
class RunConfig:
    family: str | None = None
    p: int = 0
    e: int = 1
    param: int | None = None
    all_params: bool = False
    tol: float = 1e-6
    cap: int = DEFAULT_CAP

    @property
    def q(self) -> int:
        return self.p**self.e


class Context:
    """Field, group, characters and coset spaces for one q, built lazily."""

    def __init__(self, p: int, e: int = 1, cap: int = DEFAULT_CAP):
        self.f = build_field(p, e, cap)
        self.q = self.f.q
        self._spaces: dict = {}

    @cached_property
    def G(self) -> PGL2:
        return PGL2(self.f)

    @cached_property
    def chars(self) -> CharacterGroup:
        return CharacterGroup(self.f)

    @cached_property
    def predictor(self) -> Predictor:
        return Predictor(self.chars, self.G)

    def space(self, family: str):
        kind = family.upper()
        if kind not in self._spaces:
            self._spaces[kind] = coset_space(self.G, kind)
        return self._spaces[kind]

    def params(self, family: str) -> list[int]:
        return family_params(self.G, family.upper())

    def check_param(self, family: str, param) -> None:
        if param is None:
            raise UsageError(f"--param is required for family {family}")
        if param not in self.params(family):
            raise UsageError(f"parameter {param} is not admissible for family {family} at q={self.q}")


def make_config(args) -> RunConfig:
    """Resolve --q or --p/--e into (p, e); raise UsageError on anything invalid."""
    q = getattr(args, "q", None)
    p = getattr(args, "p", None)
    if q is not None:
        try:
            p, e = prime_power(q)
        except Pgl2GraphsError as exc:
            raise UsageError(str(exc)) from exc
    elif p is not None:
        e = getattr(args, "e", 1) or 1
    else:
        raise UsageError("give --q or --p")
    if p == 2:
        raise UsageError("even characteristic is not supported")
    fam = getattr(args, "family", None)
    if fam is not None and fam not in FAMILIES:
        raise UsageError(f"unknown family {fam!r}")
    return RunConfig(
        family=fam,
        p=p,
        e=e,
        param=getattr(args, "param", None),
        all_params=getattr(args, "all_params", False),
        tol=getattr(args, "tol", 1e-6),
    )


def make_context(cfg: RunConfig) -> Context:
    try:
        return Context(cfg.p, cfg.e, cfg.cap)
    except Pgl2GraphsError as exc:
        raise UsageError(str(exc)) from exc


def emit(text: str, out: str | None = None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


# -- pipelines --

def crosscheck_one(ctx: Context, family: str, param: int, tol: float) -> dict:
    g = family_graph(ctx.G, family, param, ctx.space(family))
    rep = spectrum_report(g)
    cert = certify(rep)
    pred = ctx.predictor.assemble_predicted(family, param)
    try:
        match = match_multiset(rep.eigenvalues, pred.expanded(), tol).to_dict()
    except CardinalityMismatch as exc:
        match = {"success": False, "error": str(exc)}
    return {
        "family": family,
        "q": ctx.q,
        "param": param,
        "structure": analyze(g).to_dict(),
        "spectrum": rep.to_dict(),
        "predicted": pred.to_dict(),
        "match": match,
        "certificate": asdict(cert),
    }


def suite_job(job: tuple) -> list[dict]:
    """All parameters of one (q, family); rows for the summary table."""
    p, e, family, tol = job
    ctx = Context(p, e)
    rows = []
    for param in ctx.params(family):
        r = crosscheck_one(ctx, family, param, tol)
        s = r["spectrum"]
        rows.append(
            {
                "family": family,
                "q": ctx.q,
                "param": param,
                "n": r["structure"]["n"],
                "k": s["k"],
                "max_nontrivial": s["max_nontrivial_abs"],
                "two_sqrt_q": s["paper_bound"],
                "ratio": s["max_nontrivial_abs"] / s["paper_bound"],
                "ramanujan": r["certificate"]["ramanujan"],
                "paper_bound": r["certificate"]["paper_bound_holds"],
                "matched": r["match"]["success"],
            }
        )
    return rows


# -- subcommands --

def cmd_field_info(args) -> int:
    cfg = make_config(args)
    ctx = make_context(cfg)
    info = ctx.f.info()
    E = ctx.chars.E
    info["ext_generator"] = list(E.split(E.h))
    emit(dumps(info), args.out)
    return EXIT_OK


def cmd_chars(args) -> int:
    ctx = make_context(make_config(args))
    inv = ctx.chars.inventory()
    a = args.psi
    if not 0 < a < ctx.q:
        raise UsageError("--psi must be a nonzero field element")
    inv["gauss_sums"] = [complex(z) for z in ctx.chars.gauss_table(a)]
    emit(dumps(inv), args.out)
    return EXIT_OK


def cmd_cosets(args) -> int:
    cfg = make_config(args)
    ctx = make_context(cfg)
    fam = cfg.family
    space = ctx.space(fam)
    out = {
        "family": fam,
        "q": ctx.q,
        "cosets": len(space),
        "double_cosets": len(double_coset_partition(space)),
        "admissible_params": ctx.params(fam),
    }
    if cfg.param is not None:
        ctx.check_param(fam, cfg.param)
        dc = family_double_coset(space, cfg.param)
        out["param"] = cfg.param
        out["double_coset"] = {"cosets": dc.measured_count, "symmetric": dc.symmetric}
    emit(dumps(out), args.out)
    return EXIT_OK


def _graph_from_args(args) -> Graph:
    if getattr(args, "infile", None):
        with open(args.infile) as fh:
            return Graph.from_json(fh.read())
    cfg = make_config(args)
    if cfg.family is None:
        raise UsageError("give --in or --family")
    ctx = make_context(cfg)
    ctx.check_param(cfg.family, cfg.param)
    return family_graph(ctx.G, cfg.family, cfg.param, ctx.space(cfg.family))


def cmd_build(args) -> int:
    g = _graph_from_args(args)
    emit(g.to_json(), args.out)
    if args.dot:
        emit(g.to_dot(), args.dot)
    return EXIT_OK


def cmd_spectrum(args) -> int:
    g = _graph_from_args(args)
    rep = spectrum_report(g, method=args.method)
    if args.csv:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["index", "eigenvalue"])
        for i, x in enumerate(rep.eigenvalues):
            w.writerow([i, f"{x:.12g}"])
        emit(buf.getvalue().rstrip("\n"), args.csv)
    out = {"structure": analyze(g).to_dict(), "spectrum": rep.to_dict()}
    emit(dumps(out), args.out)
    return EXIT_OK


def cmd_predict(args) -> int:
    cfg = make_config(args)
    ctx = make_context(cfg)
    ctx.check_param(cfg.family, cfg.param)
    pred = ctx.predictor.assemble_predicted(cfg.family, cfg.param)
    emit(dumps({"family": cfg.family, "q": ctx.q, "param": cfg.param, **pred.to_dict()}), args.out)
    return EXIT_OK


def cmd_crosscheck(args) -> int:
    cfg = make_config(args)
    ctx = make_context(cfg)
    if cfg.all_params:
        params = ctx.params(cfg.family)
    else:
        ctx.check_param(cfg.family, cfg.param)
        params = [cfg.param]
    t0 = time.perf_counter()
    reports = [crosscheck_one(ctx, cfg.family, c, cfg.tol) for c in params]
    ok = all(r["match"]["success"] and r["certificate"]["paper_bound_holds"] for r in reports)
    out = {"config": asdict(cfg), "reports": reports, "ok": ok}
    if args.timing:
        out["timing_s"] = time.perf_counter() - t0
    emit(dumps(out), args.out)
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_certify(args) -> int:
    g = _graph_from_args(args)
    rep = spectrum_report(g)
    cert = certify(rep)
    out = {
        "structure": analyze(g).to_dict(),
        "max_nontrivial_abs": rep.max_nontrivial_abs,
        "ramanujan_bound": rep.ramanujan_bound,
        "paper_bound": rep.paper_bound,
        **asdict(cert),
    }
    emit(dumps(out), args.out)
    return EXIT_OK if cert.paper_bound_holds else EXIT_VIOLATION


def cmd_repcheck(args) -> int:
    ctx = make_context(make_config(args))
    G, ch = ctx.G, ctx.chars
    rng = np.random.default_rng(args.seed)
    els = G.elements
    rows, ok = [], True
    for rep in ch.reps():
        ri = RepInstance(ch, rep, args.psi)
        worst = 0.0
        for _ in range(args.pairs):
            g1, g2 = els[rng.integers(len(els))], els[rng.integers(len(els))]
            d = ri.rep_matrix(G, G.mul(g1, g2)) - ri.rep_matrix(G, g1) @ ri.rep_matrix(G, g2)
            worst = max(worst, float(np.abs(d).max()))
        ranks = {}
        for kind in SubgroupKind:
            r = fixed_vectors(ri, G, kind, check=False).shape[1]
            ranks[kind.value] = [r, expected_fixed_dim(rep, kind)]
        good = worst <= 1e-9 and all(a == b for a, b in ranks.values())
        ok &= good
        rows.append({"rep": rep.label, "dim": ri.dim, "hom_residual": worst, "fixed_ranks": ranks, "ok": good})
    emit(dumps({"q": ctx.q, "psi": args.psi, "reps": rows, "ok": ok}), args.out)
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_cusp_graph(args) -> int:
    cfg = make_config(args)
    if cfg.p == 2:
        raise UsageError("even characteristic is not supported")
    X = build_cusp_graph(cfg.p, cfg.e, cfg.cap)
    rep = spectrum_report(X)
    bound = 2 * math.sqrt(X.k - 1)
    ctx = make_context(cfg)
    U1 = family_graph(ctx.G, "u", 1, ctx.space("u"))
    comp = component_of(U1, ctx.space("u").index(ctx.G.identity))
    sub = is_submultiset(rep.eigenvalues, sym_eigenvalues(comp.adjacency))
    ok = rep.max_nontrivial_abs <= bound + 1e-8 and sub
    out = {
        "p": cfg.p,
        "e": cfg.e,
        "structure": analyze(X).to_dict(),
        "spectrum": rep.to_dict(),
        "ramanujan": rep.max_nontrivial_abs <= bound + 1e-8,
        "submultiset_of_u_component": sub,
    }
    if args.graph_out:
        emit(X.to_json(), args.graph_out)
    emit(dumps(out), args.out)
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_suite(args) -> int:
    jobs = []
    for q in args.qs:
        try:
            p, e = prime_power(q)
        except Pgl2GraphsError as exc:
            raise UsageError(str(exc)) from exc
        if p == 2:
            raise UsageError(f"q={q} has even characteristic")
        for fam in args.families:
            jobs.append((p, e, fam, args.tol))
    t0 = time.perf_counter()
    if args.workers > 1:
        with ProcessPoolExecutor(args.workers) as pool:
            chunks = list(pool.map(suite_job, jobs))
    else:
        chunks = [suite_job(j) for j in jobs]
    rows = sorted((r for ch in chunks for r in ch), key=lambda r: (r["q"], r["family"], r["param"]))
    ok = all(r["matched"] and r["paper_bound"] for r in rows)
    if args.json:
        out = {"rows": rows, "ok": ok}
        if args.timing:
            out["timing_s"] = time.perf_counter() - t0
        emit(dumps(out), args.out)
    else:
        hdr = f"{'fam':>3} {'q':>3} {'param':>5} {'n':>5} {'k':>3} {'max|l|':>9} {'2sqrt(q)':>9} {'ratio':>6} {'raman':>5} {'bound':>5} {'match':>5}"
        lines = [hdr]
        for r in rows:
            lines.append(
                f"{r['family']:>3} {r['q']:>3} {r['param']:>5} {r['n']:>5} {r['k']:>3} "
                f"{r['max_nontrivial']:9.5f} {r['two_sqrt_q']:9.5f} {r['ratio']:6.3f} "
                f"{str(r['ramanujan']):>5} {str(r['paper_bound']):>5} {str(r['matched']):>5}"
            )
        lines.append(f"all ok: {ok}")
        if args.timing:
            lines.append(f"elapsed: {time.perf_counter() - t0:.2f} s")
        emit("\n".join(lines), args.out)
    return EXIT_OK if ok else EXIT_VIOLATION


# -- argument parsing --

def _add_field(sp, need_family=False, need_param=False):
    sp.add_argument("--q", type=int, help="field order q = p^e")
    sp.add_argument("--p", type=int, help="characteristic (alternative to --q)")
    sp.add_argument("--e", type=int, default=1, help="extension degree with --p")
    if need_family:
        sp.add_argument("--family", choices=FAMILIES, required=True)
    if need_param:
        sp.add_argument("--param", type=int, help="c or t, as a field element index")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the report to this file instead of stdout")
    common.add_argument("--timing", action="store_true", help="include wall-clock timing in reports")
    ap = argparse.ArgumentParser(prog="pgl2graphs", description=__doc__)
    sub = ap.add_subparsers(dest="cmd", required=True)

    sp = sub.add_parser("field-info", parents=[common], help="field modulus, generator and nonsquare")
    _add_field(sp)
    sp.set_defaults(func=cmd_field_info)

    sp = sub.add_parser("chars", parents=[common], help="representation inventory and Gauss sums")
    _add_field(sp)
    sp.add_argument("--psi", type=int, default=1, help="additive character index a of psi^a")
    sp.set_defaults(func=cmd_chars)

    sp = sub.add_parser("cosets", parents=[common], help="coset and double coset counts")
    _add_field(sp, need_family=True, need_param=True)
    sp.set_defaults(func=cmd_cosets)

    for name, func, help_ in (
        ("build", cmd_build, "build a family graph as JSON"),
        ("spectrum", cmd_spectrum, "adjacency spectrum of a graph"),
        ("certify", cmd_certify, "check the eigenvalue bounds of a graph"),
    ):
        sp = sub.add_parser(name, parents=[common], help=help_)
        _add_field(sp, need_param=True)
        sp.add_argument("--family", choices=FAMILIES)
        if name != "build":
            sp.add_argument("--in", dest="infile", help="graph JSON file")
        if name == "build":
            sp.add_argument("--dot", help="also write Graphviz DOT to this file")
        if name == "spectrum":
            sp.add_argument("--csv", help="write eigenvalues (descending) to this CSV file")
            sp.add_argument("--method", choices=("householder", "jacobi"), default="householder")
        sp.set_defaults(func=func)

    sp = sub.add_parser("predict", parents=[common], help="predicted spectrum with multiplicities")
    _add_field(sp, need_family=True, need_param=True)
    sp.set_defaults(func=cmd_predict)

    sp = sub.add_parser("crosscheck", parents=[common], help="build, compute, predict and match")
    _add_field(sp, need_family=True, need_param=True)
    sp.add_argument("--all-params", action="store_true")
    sp.add_argument("--tol", type=float, default=1e-6)
    sp.set_defaults(func=cmd_crosscheck)

    sp = sub.add_parser("repcheck", parents=[common], help="Kirillov model homomorphism and fixed-space ranks")
    _add_field(sp)
    sp.add_argument("--pairs", type=int, default=100)
    sp.add_argument("--psi", type=int, default=1)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_repcheck)

    sp = sub.add_parser("cusp-graph", parents=[common], help="the cusp graph X_P for F_q over F_p")
    _add_field(sp)
    sp.add_argument("--graph-out", help="write the graph JSON to this file")
    sp.set_defaults(func=cmd_cusp_graph)

    sp = sub.add_parser("suite", parents=[common], help="crosscheck every family and parameter over several q")
    sp.add_argument("--qs", type=int, nargs="+", default=[3, 5, 7, 9, 11, 13])
    sp.add_argument("--families", nargs="+", choices=FAMILIES, default=list(FAMILIES))
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--tol", type=float, default=1e-6)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_suite)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (Pgl2GraphsError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
