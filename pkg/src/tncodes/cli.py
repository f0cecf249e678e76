"""Command-line front end.

Subcommands: build, distance, histogram, decode, simulate, compare.
Networks are given as JSON files or by the name of a shipped network
(e.g. ``surface_L5``).  All randomness is seeded; identical invocations
produce identical outputs.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import builders
from .code import code_to_dict, validate
from .decoder import Decoder, depolarizing_model
from .enumerator import coset_weights, distance, logical_profile, write_histogram_csv
from .network import build_full, load_network
from .sim import SimConfig, monte_carlo, records_csv


def _get_network(name_or_path):
    try:
        return builders.builtin_network(name_or_path)
    except KeyError:
        return load_network(name_or_path)


def _parse_ps(text):
    if ":" in text:
        start, step, stop = (float(t) for t in text.split(":"))
        ps, p = [], start
        while p <= stop + 1e-12:
            ps.append(round(p, 12))
            p += step
        return ps
    return [float(t) for t in text.split(",")]


def cmd_build(args):
    spec = _get_network(args.network)
    res = build_full(spec)
    problems = validate(res.code)
    info = {
        "name": spec.name,
        "n": res.code.n,
        "k": res.code.k,
        "normalization_exponent": res.norm_exponent,
        "valid": not problems,
    }
    if problems:
        info["problems"] = problems
    print(json.dumps(info, indent=1))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(code_to_dict(res.code), fh, indent=1)
    return 0 if not problems else 1


def cmd_distance(args):
    spec = _get_network(args.network)
    kw = {}
    if args.max_weight is not None:
        kw["max_weight"] = args.max_weight
    if args.dump_plan:
        table, plan = coset_weights(spec, return_plan=True, **kw)
        with open(args.dump_plan, "w", encoding="utf-8") as fh:
            json.dump(plan.to_dict(), fh, indent=1)
        prof = logical_profile(table)
        d = min(w for w, c in prof.items() if c and w > 0)
    else:
        d = distance(spec, **kw)
    print(d)
    return 0


def cmd_histogram(args):
    spec = _get_network(args.network)
    kw = {}
    if args.max_weight is not None:
        kw["max_weight"] = args.max_weight
    if args.alphabet:
        kw["alphabet"] = args.alphabet
    table = coset_weights(spec, **kw)
    write_histogram_csv(table, args.out)
    print(f"wrote {args.out}")
    return 0


def cmd_decode(args):
    spec = _get_network(args.network)
    decoder = Decoder(spec)
    s = tuple(int(ch) for ch in args.syndrome)
    if args.model:
        import numpy as np

        from .decoder import ErrorModel
        with open(args.model, encoding="utf-8") as fh:
            model = ErrorModel(np.asarray(json.load(fh)["probs"], dtype=float))
    else:
        model = depolarizing_model(decoder.code.n, args.p)
    res = decoder.decode(s, model)
    print(json.dumps({
        "syndrome": args.syndrome,
        "chosen_class": list(res.chosen),
        "correction": res.correction.to_text(),
        "chi": {"".join("IXYZ"[g] for g in cls): val for cls, val in res.chi.items()},
    }, indent=1))
    return 0


def _sim_config(args):
    networks = [(name, _get_network(name) if not name.endswith(".json") else load_network(name))
                for name in args.network]
    named = []
    for name, spec in networks:
        named.append((spec.name or name, spec))
    return SimConfig(named, _parse_ps(args.p), args.trials, args.seed)


def cmd_simulate(args):
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            raw = json.load(fh)
        args.network = raw.get("networks", args.network)
        args.p = raw.get("p", args.p)
        args.trials = raw.get("trials", args.trials)
        args.seed = raw.get("seed", args.seed)
        args.out = raw.get("out", args.out)
    config = _sim_config(args)
    records = monte_carlo(config, progress=lambda r: print(
        f"{r.code} p={r.p:g}: {r.successes}/{r.trials} = {r.rate:.4f} +-{r.stderr:.4f}",
        file=sys.stderr))
    csv = records_csv(records)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(csv)
    else:
        print(csv, end="")
    return 0


def cmd_compare(args):
    config = _sim_config(args)
    if len(config.networks) != 2:
        print("compare needs exactly two --network arguments", file=sys.stderr)
        return 2
    records = monte_carlo(config)
    (name_a, _), (name_b, _) = config.networks
    by_code = {}
    for r in records:
        by_code.setdefault(r.code, {})[r.p] = r
    print("p,rate_a,rate_b,gap,gap_over_stderr")
    for p in config.ps:
        ra, rb = by_code[name_a][p], by_code[name_b][p]
        gap = rb.rate - ra.rate
        err = (ra.stderr ** 2 + rb.stderr ** 2) ** 0.5
        print(f"{p:g},{ra.rate:.4f},{rb.rate:.4f},{gap:+.4f},"
              f"{gap / err if err else float('inf'):+.2f}")
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="tncodes",
                                     description="tensor-network stabilizer codes")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="build a network into a code")
    p.add_argument("--network", required=True)
    p.add_argument("--out", help="write the built code as JSON")
    p.set_defaults(fn=cmd_build)

    p = sub.add_parser("distance", help="code distance via contraction")
    p.add_argument("--network", required=True)
    p.add_argument("--max-weight", type=int)
    p.add_argument("--dump-plan", help="write the contraction plan as JSON")
    p.set_defaults(fn=cmd_distance)

    p = sub.add_parser("histogram", help="operator weight histogram CSV")
    p.add_argument("--network", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--alphabet", help="letter restriction, e.g. IZ")
    p.add_argument("--max-weight", type=int)
    p.set_defaults(fn=cmd_histogram)

    p = sub.add_parser("decode", help="maximum-likelihood decode one syndrome")
    p.add_argument("--network", required=True)
    p.add_argument("--syndrome", required=True, help="bit string, one per generator")
    p.add_argument("--p", type=float, default=0.1, help="depolarizing rate")
    p.add_argument("--model", help="JSON file with per-qubit probs")
    p.set_defaults(fn=cmd_decode)

    for name, fn in (("simulate", cmd_simulate), ("compare", cmd_compare)):
        p = sub.add_parser(name, help="Monte Carlo decoding runs")
        p.add_argument("--network", action="append", required=True)
        p.add_argument("--p", default="0.06:0.02:0.20",
                       help="grid start:step:stop or comma list")
        p.add_argument("--trials", type=int, default=10000)
        p.add_argument("--seed", type=int, default=7)
        p.add_argument("--out")
        if name == "simulate":
            p.add_argument("--config", help="JSON config mirroring the flags")
        p.set_defaults(fn=fn)

    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except Exception as exc:  # CLI contract: nonzero exit with diagnostic
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
