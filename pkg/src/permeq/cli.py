"""Command-line front end.

Exit codes: 0 accept/pass, 1 reject/fail, 2 usage or validation error,
3 infeasible (a cap would be exceeded). Every run is deterministic given
its inputs and --seed, and reports embed the seed and caps used.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from multiprocessing import Pool

from . import graphs, partial, testers, transfer
from .dsl import parse_system, render, render_word
from .errors import InfeasibleError, PermeqError, ValidationError
from .perms import (
    DEFAULT_STATE_CAP,
    PermTuple,
    flexible_nearest_solution,
    load_tuple,
    local_defect,
    nearest_solution,
)
from .presets import preset, preset_names
from .rng import rng_descriptor
from .words import EquationSystem, WordSet, ball, to_inverseless

EXIT_ACCEPT = 0
EXIT_REJECT = 1
EXIT_USAGE = 2
EXIT_INFEASIBLE = 3


def fraction_fields(value: Fraction) -> dict:
    return {
        "exact": f"{value.numerator}/{value.denominator}",
        "decimal": format(float(value), ".12g"),
    }


def parse_fraction(src: str) -> Fraction:
    try:
        return Fraction(src)
    except (ValueError, ZeroDivisionError):
        raise ValidationError(f"not a rational number: {src!r}")


def load_system(args) -> EquationSystem:
    if bool(args.preset) == bool(args.equations):
        raise ValidationError("give exactly one of --preset or --equations")
    if args.preset:
        return preset(args.preset)
    with open(args.equations, encoding="utf-8") as fh:
        return parse_system(fh.read())


def load_tuple_file(path: str) -> PermTuple:
    with open(path, encoding="utf-8") as fh:
        return load_tuple(fh.read())


def word_set_for(args, system: EquationSystem) -> WordSet:
    """P from --ball R (ball union relators) or an explicit word file."""
    if getattr(args, "words", None):
        index = {name: i + 1 for i, name in enumerate(system.names)}
        out = []
        with open(args.words, encoding="utf-8") as fh:
            for line in fh:
                line = line.split("#")[0].strip()
                if line:
                    out.append(transfer._parse_term_tokens(line, index))
        return WordSet(out)
    radius = getattr(args, "ball", 2)
    return ball(system.d, radius).union(system.relators())


def emit(args, payload: dict) -> None:
    text = json.dumps(payload, indent=2) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def maybe_emit_graph(args, t: PermTuple, system: EquationSystem) -> None:
    if getattr(args, "emit_graph", None):
        g = graphs.from_tuple(t)
        with open(args.emit_graph, "w", encoding="utf-8") as fh:
            fh.write(graphs.export_edge_list(g, system.names))


def transcript_edges(h: partial.PartialSGraph, system: EquationSystem):
    return [
        [u, system.names[s - 1], v] for u, s, v in sorted(h.edges)
    ]


def cmd_test(args) -> int:
    system = load_system(args)
    t = load_tuple_file(args.tuple)
    maybe_emit_graph(args, t, system)
    if args.tester == "sas":
        verdict = testers.sas(t, system, args.k, args.seed)
        params = {"k": args.k}
    else:
        P = word_set_for(args, system)
        ctx = testers.solution_distribution_set(system, t.n, P, args.cap_states)
        delta = parse_fraction(args.delta)
        verdict = testers.lsm(t, ctx, args.k, delta, args.seed)
        params = {
            "k": args.k,
            "delta": str(delta),
            "word_set_size": len(P),
        }
    emit(
        args,
        {
            "tester": args.tester,
            "params": params,
            "verdict": verdict.accepted,
            "queries": verdict.queries_used,
            "seed": verdict.seed,
            "rng": verdict.rng,
            "caps": {"states": args.cap_states, "subsets": args.cap_subsets},
            "transcript": transcript_edges(verdict.transcript, system),
        },
    )
    return EXIT_ACCEPT if verdict.accepted else EXIT_REJECT


def cmd_distance(args) -> int:
    system = load_system(args)
    t = load_tuple_file(args.tuple)
    maybe_emit_graph(args, t, system)
    payload = {"n": t.n, "d": t.d}
    if args.flexible:
        dist, degree = flexible_nearest_solution(t, system, args.cap_states)
        payload["flexible_distance"] = fraction_fields(dist)
        payload["witness_degree"] = degree
    else:
        dist, witness = nearest_solution(t, system, args.cap_states)
        payload["distance"] = fraction_fields(dist)
        payload["witness"] = [list(p.images) for p in witness.perms]
    emit(args, payload)
    return EXIT_ACCEPT


def cmd_defect(args) -> int:
    system = load_system(args)
    t = load_tuple_file(args.tuple)
    emit(args, {"local_defect": fraction_fields(local_defect(t, system))})
    return EXIT_ACCEPT


def cmd_cheeger(args) -> int:
    system = load_system(args) if (args.preset or args.equations) else None
    t = load_tuple_file(args.tuple)
    g = graphs.from_tuple(t)
    if system is not None:
        maybe_emit_graph(args, t, system)
    value = graphs.cheeger(g, args.cap_subsets)
    emit(args, {"cheeger": fraction_fields(value), "connected": graphs.is_connected(g)})
    return EXIT_ACCEPT


def cmd_distinguish(args) -> int:
    system = load_system(args)
    P = word_set_for(args, system)
    eps = parse_fraction(args.eps)
    value = testers.distinguishability(system, args.n, P, eps, args.cap_states)
    payload = {
        "n": args.n,
        "eps": str(eps),
        "word_set_size": len(P),
        "separation": None if value is None else fraction_fields(value),
        "far_set_empty": value is None,
    }
    emit(args, payload)
    return EXIT_ACCEPT


def _sweep_row(job) -> list:
    system_text, n, radius, eps_src, cap = job
    system = parse_system(system_text)
    P = ball(system.d, radius).union(system.relators())
    eps = Fraction(eps_src)
    value = testers.distinguishability(system, n, P, eps, cap)
    return [
        n,
        radius,
        eps_src,
        "" if value is None else f"{value.numerator}/{value.denominator}",
        "" if value is None else format(float(value), ".12g"),
    ]


def cmd_sweep(args) -> int:
    system = load_system(args)
    system_text = render(system)
    ns = list(range(args.n_min, args.n_max + 1))
    radii = [int(r) for r in args.radii.split(",")] if args.radii else [2]
    eps_list = args.eps.split(",") if args.eps else ["2/3"]
    jobs = [
        (system_text, n, radius, eps_src, args.cap_states)
        for n in ns
        for radius in radii
        for eps_src in eps_list
    ]
    if args.jobs > 1 and jobs:
        with Pool(args.jobs) as pool:
            rows = pool.map(_sweep_row, jobs)
    else:
        rows = [_sweep_row(job) for job in jobs]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["n", "ball_radius", "eps", "separation", "separation_decimal"])
    writer.writerows(rows)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())
    return EXIT_ACCEPT


def cmd_presets(args) -> int:
    if args.show:
        sys.stdout.write(render(preset(args.show)))
    else:
        sys.stdout.write("\n".join(preset_names()) + "\n")
    return EXIT_ACCEPT


def cmd_convert_inverseless(args) -> int:
    system = load_system(args)
    text = render(to_inverseless(system))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_ACCEPT


def _fail(instance: str) -> int:
    sys.stderr.write(f"FAIL: {instance}\n")
    return EXIT_REJECT


def cmd_verify(args) -> int:
    from . import suites

    runners = {
        "inclusion": lambda: suites.inclusion_suite(
            n_values=range(4, args.n_max + 1), graphs_per_n=args.samples, seed=args.seed
        ),
        "sas-defect": lambda: suites.sas_defect_suite(
            n_max=args.n_max, random_trials=args.samples, seed=args.seed
        ),
        "diagonal": lambda: suites.diagonal_product_suite(n_max=args.n_max),
        "census": lambda: suites.census_suite(n_max=min(args.n_max, 5)),
        "transfer": lambda: suites.transfer_suite(
            n_max=min(args.n_max, 4), random_trials=args.samples, seed=args.seed
        ),
    }
    if args.suite not in runners:
        raise ValidationError(f"unknown suite {args.suite!r}; known: {sorted(runners)}")
    failures = runners[args.suite]()
    for f in failures:
        sys.stderr.write(f"FAIL: {f}\n")
    if not failures:
        sys.stdout.write(f"suite {args.suite}: all instances pass\n")
    return EXIT_ACCEPT if not failures else EXIT_REJECT


def cmd_transfer_check(args) -> int:
    if args.fixture:
        if args.fixture != "z2":
            raise ValidationError("the only built-in fixture is 'z2'")
        fx = transfer.fixture_z2()
    else:
        for required in ("map", "map_back", "correction", "source", "target"):
            if not getattr(args, required):
                raise ValidationError(
                    "file mode needs --map --map-back --correction --source --target"
                )
        with open(args.map, encoding="utf-8") as fh:
            lam1 = transfer.load_presentation_map(fh.read())
        with open(args.map_back, encoding="utf-8") as fh:
            lam2 = transfer.load_presentation_map(fh.read())
        with open(args.source, encoding="utf-8") as fh:
            source_system = parse_system(fh.read())
        with open(args.target, encoding="utf-8") as fh:
            target_system = parse_system(fh.read())
        with open(args.correction, encoding="utf-8") as fh:
            corr = transfer.load_correction(fh.read(), lam1)
        fx = {
            "source_system": source_system,
            "target_system": target_system,
            "lambda1": lam1,
            "lambda2": lam2,
            "correction_source": corr,
            "correction_target": None,
        }
    from . import suites

    failures = suites.transfer_pair_sweep(
        fx, n_max=args.n_max, random_trials=args.samples, seed=args.seed
    )
    for f in failures:
        sys.stderr.write(f"FAIL: {f}\n")
    if not failures:
        sys.stdout.write("transfer checks pass\n")
    return EXIT_ACCEPT if not failures else EXIT_REJECT


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--cap-states", type=int, default=DEFAULT_STATE_CAP)
    common.add_argument("--cap-subsets", type=int, default=graphs.DEFAULT_SUBSET_CAP)
    common.add_argument("--out", default=None)
    common.add_argument("--emit-graph", default=None)

    eq = argparse.ArgumentParser(add_help=False)
    eq.add_argument("--preset", default=None, help="e.g. comm:2, bs:2,3, sl:3")
    eq.add_argument("--equations", default=None, help="equation file in the text format")

    parser = argparse.ArgumentParser(
        prog="permtest",
        description="Testers and exact oracles for equation systems in permutations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("test", parents=[common, eq], help="run a tester on a tuple")
    p.add_argument("--tuple", required=True)
    p.add_argument("--tester", choices=["sas", "lsm"], default="sas")
    p.add_argument("-k", type=int, default=50)
    p.add_argument("--delta", default="0", help="proximity for lsm, a rational")
    p.add_argument("--ball", type=int, default=2)
    p.add_argument("--words", default=None)
    p.set_defaults(fn=cmd_test)

    p = sub.add_parser("distance", parents=[common, eq], help="exact distance to the solution set")
    p.add_argument("--tuple", required=True)
    p.add_argument("--flexible", action="store_true")
    p.set_defaults(fn=cmd_distance)

    p = sub.add_parser("defect", parents=[common, eq], help="summed equation disagreement")
    p.add_argument("--tuple", required=True)
    p.set_defaults(fn=cmd_defect)

    p = sub.add_parser("cheeger", parents=[common, eq], help="exact expansion of the tuple's graph")
    p.add_argument("--tuple", required=True)
    p.set_defaults(fn=cmd_cheeger)

    p = sub.add_parser("distinguish", parents=[common, eq], help="least local separation at degree n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--eps", default="2/3")
    p.add_argument("--ball", type=int, default=2)
    p.add_argument("--words", default=None)
    p.set_defaults(fn=cmd_distinguish)

    p = sub.add_parser("sweep", parents=[common, eq], help="separation grid as CSV")
    p.add_argument("--n-min", type=int, default=2)
    p.add_argument("--n-max", type=int, default=4)
    p.add_argument("--radii", default="2")
    p.add_argument("--eps", default="2/3")
    p.set_defaults(fn=cmd_sweep)

    p = sub.add_parser("verify", parents=[common], help="run an exact verification suite")
    p.add_argument("suite", help="inclusion | sas-defect | diagonal | census | transfer")
    p.add_argument("--n-max", type=int, default=5)
    p.add_argument("--samples", type=int, default=20)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("presets", parents=[common], help="list or show named systems")
    p.add_argument("--show", default=None)
    p.set_defaults(fn=cmd_presets)

    p = sub.add_parser(
        "convert-inverseless", parents=[common, eq], help="rewrite without inverse letters"
    )
    p.set_defaults(fn=cmd_convert_inverseless)

    p = sub.add_parser("transfer-check", parents=[common], help="presentation-pair bound sweeps")
    p.add_argument("--fixture", default=None)
    p.add_argument("--map", default=None)
    p.add_argument("--map-back", dest="map_back", default=None)
    p.add_argument("--correction", default=None)
    p.add_argument("--source", default=None)
    p.add_argument("--target", default=None)
    p.add_argument("--n-max", type=int, default=3)
    p.add_argument("--samples", type=int, default=100)
    p.set_defaults(fn=cmd_transfer_check)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.fn(args)
    except InfeasibleError as exc:
        sys.stderr.write(f"infeasible: {exc}\n")
        return EXIT_INFEASIBLE
    except PermeqError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
