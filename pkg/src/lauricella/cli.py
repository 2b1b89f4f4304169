"""Command-line front end.  Every command prints JSON (or a plain table) to stdout.

Exit codes: 0 success, 1 some check failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path
import random

from .connection import gamma_table
from .dual import dual_gamma_closed
from .errors import LauricellaError, MalformedInput
from .hierarchy import hierarchy_generate, kodama_konopelchenko_L
from .jordan import BlockConfig, a0_poly, is_regular, operator_L, parse_point
from .kernel import Poly, format_rational
from .report import Check, VerificationReport
from .tsarev import DiagonalSystem, residuals
from .verify import axiom_suite, identity_suite

MAX_SWEEP_DIM = 8


# ---------------------------------------------------------------- inputs


def load_json(text: str):
    """Inline JSON, or the path of a file holding it."""
    stripped = text.strip()
    if stripped[:1] not in "{[\"":
        try:
            stripped = Path(text).read_text()
        except OSError as exc:
            raise MalformedInput(f"cannot read {text}: {exc}") from None
    try:
        return json.loads(stripped)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"invalid JSON: {exc}") from None


def random_rational(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-20, 20), rng.randint(1, 5))


def random_point(config: BlockConfig, rng: random.Random, dual: bool = True) -> list:
    """Rejection-sample a regular point (dual-regular too, by default)."""
    for _ in range(10_000):
        pt = [random_rational(rng) for _ in range(config.n)]
        if is_regular(config, pt, dual=dual):
            return pt
    raise RuntimeError("could not sample a regular point")  # pragma: no cover


def random_weights(r: int, rng: random.Random) -> list:
    out = []
    while len(out) < r:
        w = Fraction(rng.randint(-5, 5), rng.randint(1, 5))
        if w:
            out.append(w)
    return out


def point_rng(seed, sizes) -> random.Random:
    return random.Random(f"{seed}:{list(sizes)}")


def resolve_point(args, config: BlockConfig) -> list:
    if args.point is not None:
        return parse_point(load_json(args.point), config.n)
    return random_point(config, point_rng(args.seed, config.sizes))


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True)


# ---------------------------------------------------------------- rendering


def table_text(rows, label="G") -> str:
    return "\n".join(f"{label}^{r['k']}_{r['i']}{r['j']} = {r['value']}" for r in rows)


def report_text(report: VerificationReport) -> str:
    lines = []
    for c in report.checks:
        tag = "PASS" if c.passed else "FAIL"
        extra = "" if c.passed else f"  at {list(c.indices)} value {format_rational(c.value)}"
        note = f"  ({c.note})" if c.note else ""
        lines.append(f"{tag} {c.name}{extra}{note}")
    return "\n".join(lines)


def emit(args, payload, text: str):
    print(text if args.format == "table" else dumps(payload))


# ---------------------------------------------------------------- commands


def cmd_gamma(args) -> int:
    config = BlockConfig.from_json(load_json(args.config))
    pt = resolve_point(args, config)
    table = gamma_table(config, pt)
    rows = table.to_json()
    payload = {"config": config.to_json(), "point": [format_rational(x) for x in pt], "gamma": rows}
    text = table_text(rows)
    if args.dual:
        drows = dual_gamma_closed(config, pt, table).to_json()
        payload["dual"] = drows
        text += "\n" + table_text(drows, "G*")
    emit(args, payload, text)
    return 0


def cmd_dual(args) -> int:
    config = BlockConfig.from_json(load_json(args.config))
    pt = resolve_point(args, config)
    rows = dual_gamma_closed(config, pt, gamma_table(config, pt)).to_json()
    emit(args, {"config": config.to_json(), "point": [format_rational(x) for x in pt], "dual": rows},
         table_text(rows, "G*"))
    return 0


def full_report(config: BlockConfig, pt) -> VerificationReport:
    return axiom_suite(config, pt).merge(identity_suite(config, pt))


def cmd_verify(args) -> int:
    config = BlockConfig.from_json(load_json(args.config))
    pt = resolve_point(args, config)
    report = full_report(config, pt)
    emit(args, report.to_json(), report_text(report))
    return 0 if report.all_pass else 1


def cmd_hierarchy(args) -> int:
    if args.steps < 0:
        raise MalformedInput("--steps must be nonnegative")
    if args.kk is not None:
        if args.kk < 1:
            raise MalformedInput("--kk needs a positive dimension")
        L = kodama_konopelchenko_L(args.kk)
        a0 = -Poly.var(args.kk, 1)
    else:
        if args.config is None:
            raise MalformedInput("hierarchy needs --config or --kk")
        config = BlockConfig.from_json(load_json(args.config))
        L, a0 = operator_L(config), a0_poly(config)
    seq = hierarchy_generate(L, a0, args.steps)
    payload = seq.to_json()
    text = "\n".join(f"a_{s['k']} = {seq.a[s['k']]!r}" for s in payload["steps"])
    emit(args, payload, text)
    return 0


def cmd_tsarev(args) -> int:
    system = DiagonalSystem.from_json(load_json(args.system))
    if args.point is not None:
        pt = parse_point(load_json(args.point), system.n)
    else:
        rng = random.Random(f"{args.seed}:tsarev")
        pt = [random_rational(rng) for _ in range(system.n)]
    report = residuals(system, pt)
    emit(args, report.to_json(), report_text(report))
    return 0 if report.all_pass else 1


# ---------------------------------------------------------------- sweep


def compositions(d: int):
    """Ordered block lists with sum d, in lexicographic order."""
    if d == 0:
        yield ()
        return
    for first in range(1, d + 1):
        for rest in compositions(d - first):
            yield (first,) + rest


def relabel_check(config: BlockConfig, pt) -> Check:
    """Reversing the block order must permute Γ accordingly."""
    r = config.r
    order = list(range(r, 0, -1))
    moved = BlockConfig(tuple(config.size(a) for a in order), [config.weight(a) for a in order])
    perm = {}
    for new_a, old_a in enumerate(order, start=1):
        for j in range(1, config.size(old_a) + 1):
            perm[config.flat_index(old_a, j)] = moved.flat_index(new_a, j)
    moved_pt = [None] * config.n
    for old, new in perm.items():
        moved_pt[new - 1] = pt[old - 1]
    a = gamma_table(config, pt)
    b = gamma_table(moved, moved_pt)
    worst, where = Fraction(0), ()
    n = config.n
    for k in range(1, n + 1):
        for i in range(1, n + 1):
            for j in range(i, n + 1):
                diff = a.get(k, i, j) - b.get(perm[k], perm[i], perm[j])
                if abs(diff) > abs(worst):
                    worst, where = diff, (k, i, j)
    return Check("relabelling", worst == 0, where, worst)


def sweep_job(job):
    index, sizes, weights, points = job
    config = BlockConfig(sizes, weights)
    results = []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for pt in points:
            report = full_report(config, pt)
            report.add(relabel_check(config, pt))
            results.append(report)
    return index, results


def sweep_jobs(dim: int, points: int, seed):
    jobs = []
    for d in range(1, dim + 1):
        for sizes in compositions(d):
            rng = point_rng(seed, sizes)
            weights = random_weights(len(sizes), rng)
            config = BlockConfig(sizes, weights)
            pts = [random_point(config, rng) for _ in range(points)]
            jobs.append((len(jobs), sizes, weights, pts))
    return jobs


def run_sweep(dim: int, points: int, seed, jobs: int = 1) -> dict:
    if not 1 <= dim <= MAX_SWEEP_DIM:
        raise MalformedInput(f"--dim must lie in 1..{MAX_SWEEP_DIM}")
    if points < 1:
        raise MalformedInput("--points must be positive")
    work = sweep_jobs(dim, points, seed)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            done = list(pool.map(sweep_job, work))
    else:
        done = [sweep_job(j) for j in work]
    done.sort(key=lambda x: x[0])
    configs, failures, passed = [], [], 0
    for (index, sizes, weights, pts), (_, reports) in zip(work, done):
        ok = 0
        for pt, report in zip(pts, reports):
            if report.all_pass:
                ok += 1
            for c in report.failed():
                failures.append({"sizes": list(sizes), "weights": [format_rational(w) for w in weights],
                                 "point": [format_rational(x) for x in pt], "check": c.to_json()})
        passed += ok
        configs.append({"sizes": list(sizes), "weights": [format_rational(w) for w in weights],
                        "points": len(pts), "passed": ok, "checks": len(reports[0].checks)})
    return {
        "dim": dim,
        "points_per_config": points,
        "seed": str(seed),
        "config_count": len(configs),
        "point_count": len(configs) * points,
        "points_passed": passed,
        "all_pass": not failures,
        "configs": configs,
        "failures": failures,
    }


def cmd_sweep(args) -> int:
    summary = run_sweep(args.dim, args.points, args.seed, args.jobs)
    text = "\n".join(f"{'PASS' if c['passed'] == c['points'] else 'FAIL'} {c['sizes']} "
                     f"{c['passed']}/{c['points']}" for c in summary["configs"])
    emit(args, summary, text)
    return 0 if summary["all_pass"] else 1


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lauricella", description="Exact Lauricella bi-flat structures.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, config=True):
        if config:
            sp.add_argument("--config", required=True, help='JSON {"sizes": [...], "weights": [...]} or a path')
        sp.add_argument("--point", help='JSON list of "p/q" strings or a path; random if omitted')
        sp.add_argument("--seed", default="0", help="seed for random points")
        sp.add_argument("--format", choices=["json", "table"], default="json")

    sp = sub.add_parser("gamma", help="natural connection at a point")
    common(sp)
    sp.add_argument("--dual", action="store_true", help="also emit the dual connection")
    sp.set_defaults(func=cmd_gamma)

    sp = sub.add_parser("dual", help="dual connection at a point")
    common(sp)
    sp.set_defaults(func=cmd_dual)

    sp = sub.add_parser("verify", help="axiom and identity checks at a point")
    common(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("hierarchy", help="a_k and V_k of the flow hierarchy")
    sp.add_argument("--config")
    sp.add_argument("--kk", type=int, help="use the constant shift operator in this dimension, a_0 = -u1")
    sp.add_argument("--steps", type=int, default=4)
    sp.add_argument("--format", choices=["json", "table"], default="json")
    sp.set_defaults(func=cmd_hierarchy)

    sp = sub.add_parser("tsarev", help="integrability residuals of a diagonal system")
    sp.add_argument("--system", required=True, help='JSON {"speeds": [poly, ...]} or a path')
    sp.add_argument("--point")
    sp.add_argument("--seed", default="0")
    sp.add_argument("--format", choices=["json", "table"], default="json")
    sp.set_defaults(func=cmd_tsarev)

    sp = sub.add_parser("sweep", help="run every check over all block shapes up to a dimension")
    sp.add_argument("--dim", type=int, default=4)
    sp.add_argument("--points", type=int, default=2)
    sp.add_argument("--seed", default="0")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--format", choices=["json", "table"], default="json")
    sp.set_defaults(func=cmd_sweep)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except LauricellaError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
