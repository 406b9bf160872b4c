"""Command line front end: ``snc-dual analyze|verify|blowup|generate``.

Exit codes: 0 ok, 1 validation failure, 2 I/O error, 3 a theorem check (or a
blowup invariant) is contradicted.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .complex import (DualComplex, barycentric_subdivision, build_dual_complex, complex_to_model,
                      count_components, euler_characteristic, f_vector, star_subdivision)
from .families import (bundled_model_names, cone_family, gordon_family, load_bundled, random_snc_model,
                       tree_family)
from .homology import ChainComplex, cochain_complex_delta, homology, verify_rational_vanishing
from .model import ModelError, SNCModel, dumps_model, load_model, model_digest
from .pi1 import DEFAULT_BUDGET, contractibility_verdict_dim2, greedy_collapse, simple_connectivity
from .theorems import Outcome, check_declared_flags

EXIT_OK, EXIT_INVALID, EXIT_IO, EXIT_CONTRADICTION = 0, 1, 2, 3


class CliError(Exception):
    def __init__(self, message: str, code: int, details: list[str] = ()):
        super().__init__(message)
        self.code = code
        self.details = list(details)


def _read_model(path: str) -> SNCModel:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError(f"{path}: {exc.strerror or exc}", EXIT_IO) from None
    try:
        model = load_model(text)
    except ModelError as exc:
        raise CliError(f"{path}: invalid model", EXIT_INVALID, [str(v) for v in exc.violations] or [str(exc)]) from None
    if model.name is None and path != "-":
        model = SNCModel(model.components, model.pieces, model.ambient_dim, model.declared_rational,
                         model.declared_hypersurface, Path(path).stem, model.description)
    return model


def _write(text: str, out: str | None):
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    try:
        Path(out).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise CliError(f"{out}: {exc.strerror or exc}", EXIT_IO) from None


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _homology_list(dual: DualComplex, chain: ChainComplex | None = None) -> list[dict]:
    chain = chain or ChainComplex(dual)
    return [{"degree": k, "rank": h.rank, "torsion": list(h.torsion)}
            for k, h in ((k, homology(chain, k)) for k in range(chain.dim + 1))]


def build_report(model: SNCModel, budget: int = DEFAULT_BUDGET, timings: bool = False) -> dict:
    clock = {}
    t0 = time.perf_counter()
    dual = build_dual_complex(model)
    chain = ChainComplex(dual)
    groups = _homology_list(dual, chain)
    clock["homology"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    delta = cochain_complex_delta(dual).cohomology_ranks()
    clock["delta_cohomology"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    n_comp = count_components(dual)
    if n_comp == 1:
        s = simple_connectivity(dual, budget, chain)
        pi1 = {"verdict": s.verdict.value, "budget": budget, "moves_used": s.moves_used,
               "generators": len(s.presentation.generators), "relators": len(s.presentation.relators)}
    else:
        pi1 = {"verdict": None, "budget": budget, "moves_used": 0,
               "reason": f"disconnected ({n_comp} components)"}
    if dual.dim <= 2 and n_comp == 1:
        contract = contractibility_verdict_dim2(dual, budget).value
    elif dual.dim <= 2:
        contract = "not-point"
    else:
        contract = None
    clock["pi1"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    reduced, certificate = greedy_collapse(dual)
    clock["collapse"] = time.perf_counter() - t0

    v = verify_rational_vanishing(model, dual)
    report = {
        "model": {"name": model.name, "digest": model_digest(model)},
        "ambient_dim": model.ambient_dim,
        "dim": dual.dim,
        "flags": {"declared_rational": model.declared_rational,
                  "declared_hypersurface": model.declared_hypersurface},
        "f_vector": list(f_vector(dual)),
        "euler_characteristic": euler_characteristic(dual),
        "connected_components": n_comp,
        "homology": groups,
        "betti": [g["rank"] for g in groups],
        "delta_cohomology_ranks": list(delta),
        "pi1": pi1,
        "contractibility": contract,
        "collapse": {"reduced_f_vector": list(f_vector(reduced)), "moves": certificate.to_list()},
        "vanishing": {"status": v.status.value, "degree": v.degree, "rank": v.rank, "torsion": list(v.torsion)},
        "settings": {"budget": budget},
    }
    if timings:
        report["timings"] = {k: round(x, 6) for k, x in clock.items()}
    return report


def _table(report: dict) -> str:
    rows = [
        ("model", f"{report['model']['name']} ({report['model']['digest'][:12]})"),
        ("dim", str(report["dim"])),
        ("f-vector", " ".join(map(str, report["f_vector"]))),
        ("euler", str(report["euler_characteristic"])),
        ("homology", "  ".join(
            f"H{h['degree']}=" + (f"Z^{h['rank']}" if h["rank"] else "0")
            + "".join(f"+Z/{t}" for t in h["torsion"]) for h in report["homology"])),
        ("delta ranks", " ".join(map(str, report["delta_cohomology_ranks"]))),
        ("pi1", f"{report['pi1']['verdict']} (budget {report['pi1']['budget']}, "
                f"{report['pi1']['moves_used']} moves)"),
        ("contractible", str(report["contractibility"])),
        ("vanishing", f"{report['vanishing']['status']} (degree {report['vanishing']['degree']}, "
                      f"rank {report['vanishing']['rank']})"),
    ]
    width = max(len(k) for k, _ in rows)
    return "".join(f"{k.ljust(width)}  {v}\n" for k, v in rows)


def _workers(n_jobs: int) -> int:
    cap = os.environ.get("SNC_DUAL_THREADS")
    try:
        limit = int(cap) if cap else os.cpu_count() or 1
    except ValueError:
        limit = 1
    return max(1, min(n_jobs, limit))


def cmd_analyze(args) -> int:
    models = [_read_model(p) for p in args.models]
    with ThreadPoolExecutor(max_workers=_workers(len(models))) as pool:
        reports = list(pool.map(lambda m: build_report(m, args.budget, args.timings), models))
    if args.format == "table":
        text = "\n".join(_table(r) for r in reports)
    else:
        text = _dumps(reports[0] if len(reports) == 1 else reports)
    _write(text, args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    model = _read_model(args.model)
    findings = check_declared_flags(model, args.budget)
    code = EXIT_OK
    for f in findings:
        if f.outcome is Outcome.CONTRADICTED:
            code = EXIT_CONTRADICTION
            print(f"CONTRADICTED {f.check}: {f.detail}")
        elif f.outcome is Outcome.UNDECIDED:
            print(f"warning: {f.check} undecided: {f.detail}", file=sys.stderr)
        else:
            print(f"{f.outcome.value} {f.check}: {f.detail}")
    if not findings:
        print("no declared flags to check")
    return code


def _signature(dual: DualComplex) -> list[tuple[int, tuple[int, ...]]]:
    chain = ChainComplex(dual)
    return [(h.rank, h.torsion) for h in (homology(chain, k) for k in range(chain.dim + 1))]


def cmd_blowup(args) -> int:
    model = _read_model(args.model)
    dual = build_dual_complex(model)
    before = _signature(dual)
    euler_before = euler_characteristic(dual)
    rng = random.Random(args.seed)
    log = []
    current = dual
    if not current.is_simplicial():
        current = barycentric_subdivision(current)
        log.append({"move": "barycentric", "f_vector": list(f_vector(current))})
    for it in range(args.iterations):
        if it == 0 and args.cell != "random":
            try:
                key = current.find_cell(args.cell)
            except KeyError as exc:
                raise CliError(str(exc.args[0]), EXIT_INVALID) from None
        else:
            keys = list(current.keys())
            key = keys[rng.randrange(len(keys))]
        cell = current.cell(key)
        current = star_subdivision(current, key)
        log.append({"move": "star", "cell": cell.name, "f_vector": list(f_vector(current))})
    after = _signature(current)
    euler_after = euler_characteristic(current)
    preserved = before == after and euler_before == euler_after
    report = {
        "model": {"name": model.name, "digest": model_digest(model)},
        "seed": args.seed,
        "iterations": args.iterations,
        "moves": log,
        "before": {"f_vector": list(f_vector(dual)), "euler_characteristic": euler_before,
                   "homology": [{"rank": r, "torsion": list(t)} for r, t in before]},
        "after": {"f_vector": list(f_vector(current)), "euler_characteristic": euler_after,
                  "homology": [{"rank": r, "torsion": list(t)} for r, t in after]},
        "invariants_preserved": preserved,
    }
    out_model = complex_to_model(
        current, ambient_dim=model.ambient_dim or current.dim + 1,
        declared_rational=model.declared_rational, declared_hypersurface=model.declared_hypersurface,
        name=f"{model.name}-blowup" if model.name else None)
    _write(dumps_model(out_model), args.out)
    text = _dumps(report)
    if args.report:
        _write(text, args.report)
    else:
        sys.stderr.write(text)
    return EXIT_OK if preserved else EXIT_CONTRADICTION


def cmd_generate(args) -> int:
    try:
        if args.family == "gordon":
            model = gordon_family(args.n if args.n is not None else 3)
        elif args.family == "tree":
            shape = [int(x) for x in args.shape.split(",")] if args.shape else [0]
            model = tree_family(shape)
        elif args.family == "random":
            model = random_snc_model(args.components, args.max_depth, args.density, args.seed,
                                     multi_piece=args.multi_piece)
        elif args.family == "cone":
            if not args.base:
                raise CliError("cone needs --base MODEL", EXIT_INVALID)
            base = build_dual_complex(_read_model(args.base))
            model = cone_family(base)
        else:
            if args.name not in bundled_model_names():
                raise CliError(f"unknown bundled model {args.name!r}; choose from {list(bundled_model_names())}",
                               EXIT_INVALID)
            model = load_bundled(args.name)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_INVALID) from None
    _write(dumps_model(model), args.out)
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="snc-dual", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="full invariant report for one or more models")
    p.add_argument("models", nargs="+", help="model documents ('-' for stdin)")
    p.add_argument("--out")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="Tietze move budget")
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.add_argument("--timings", action="store_true", help="include wall-clock timings (not byte-stable)")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("verify", help="check declared rational/hypersurface flags")
    p.add_argument("model")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("blowup", help="apply star subdivisions and check invariance")
    p.add_argument("model")
    p.add_argument("cell", nargs="?", default="random", help="cell name, '{A,B}' vertex set, or 'random'")
    p.add_argument("--iterations", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="where to write the subdivided complex (default stdout)")
    p.add_argument("--report", help="where to write the invariance report (default stderr)")
    p.set_defaults(func=cmd_blowup)

    p = sub.add_parser("generate", help="emit a model document from a family")
    p.add_argument("family", choices=("gordon", "tree", "random", "cone", "bundled"))
    p.add_argument("--n", type=int)
    p.add_argument("--shape", help="comma separated parent indices, e.g. 0,0,1")
    p.add_argument("--components", type=int, default=4)
    p.add_argument("--max-depth", type=int, default=2)
    p.add_argument("--density", type=float, default=0.5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--multi-piece", action="store_true")
    p.add_argument("--base", help="model whose dual complex is coned (family 'cone')")
    p.add_argument("--name", help="bundled model name (family 'bundled')")
    p.add_argument("--out")
    p.set_defaults(func=cmd_generate)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        for line in exc.details:
            print(f"  {line}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
