"""Command-line front end.

    polarwef spectrum --n 7 --nr-k 40 --mode shortened --bit-reversal 48 --w-end 12
    polarwef mindist --n 3 --frozen F.txt
    polarwef coset --n 3 --mode punctured --pattern P.txt --frozen F.txt --prefix 000 --w-end 2
    polarwef oracle-check --n 4 --nr-k 6 --mode punctured --bit-reversal 3
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import random
import sys
import time
from pathlib import Path

from . import __version__
from .code import (
    CodeSpec,
    Mode,
    PreTransform,
    bit_reversal_pattern,
    capability_sets,
    random_puncturing_pattern,
    random_shortening_pattern,
    read_index_file,
    reliability_frozen_set,
    reliability_sequence,
)
from .coset import CosetEngine
from .gf2 import pack_bits
from .spectrum import ListOverflowError, enumerate_spectrum, find_min_distance

log = logging.getLogger("polarwef")


class ConfigError(ValueError):
    """Inconsistent or unreadable command-line configuration."""


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="polarwef",
        description="Partial weight spectra of pre-transformed, punctured and shortened polar codes.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("code")
    g.add_argument("--n", type=int, required=True, help="log2 of the mother code length")
    fr = g.add_mutually_exclusive_group(required=True)
    fr.add_argument("--frozen", metavar="FILE", help="frozen index list (JSON array or one per line)")
    fr.add_argument("--nr-k", type=int, metavar="K",
                    help="freeze all but the K most reliable positions (5G sequence)")
    g.add_argument("--reliability", metavar="FILE",
                   help="reliability sequence file used with --nr-k (default: bundled 5G)")
    g.add_argument("--mode", choices=[m.value for m in Mode], default="plain")
    pat = g.add_mutually_exclusive_group()
    pat.add_argument("--pattern", metavar="FILE", help="puncturing/shortening index list")
    pat.add_argument("--bit-reversal", type=int, metavar="COUNT",
                     help="bit-reversal pattern of COUNT positions")
    pat.add_argument("--random-pattern", type=int, metavar="COUNT",
                     help="random pattern of COUNT positions (upward closed when shortening)")
    g.add_argument("--seed", type=int, default=0, help="seed for --random-pattern")
    tr = g.add_mutually_exclusive_group()
    tr.add_argument("--pac", metavar="BITS", help="PAC coefficients, e.g. 1011011")
    tr.add_argument("--matrix", metavar="FILE",
                    help="pre-transform matrix, JSON list of rows or one 0/1 row per line")

    o = common.add_argument_group("output")
    o.add_argument("--format", choices=["json", "csv"], default="json")
    o.add_argument("--output", "-o", metavar="PATH", help="write the report here instead of stdout")
    o.add_argument("--threads", type=int, default=1,
                   help="upper bound on worker threads (the enumeration itself is sequential)")
    o.add_argument("-v", "--verbose", action="store_true")

    run = argparse.ArgumentParser(add_help=False)
    run.add_argument("--max-list", type=int, metavar="L", help="abort if the prefix list exceeds L")
    run.add_argument("--no-prune", action="store_true", help="disable minimum-weight pruning")

    sp = sub.add_parser("spectrum", parents=[common, run], help="partial weight spectrum")
    sp.add_argument("--w-end", type=int, required=True)

    md = sub.add_parser("mindist", parents=[common, run], help="minimum distance and multiplicity")
    md.add_argument("--start", type=int, default=4, help="initial weight threshold")

    cs = sub.add_parser("coset", parents=[common], help="enumerator of one polar coset")
    cs.add_argument("--prefix", required=True, help="u prefix as a 0/1 string")
    cs.add_argument("--w-end", type=int)

    oc = sub.add_parser("oracle-check", parents=[common], help="compare against brute force")
    oc.add_argument("--w-end", type=int)
    oc.add_argument("--max-free-bits", type=int, default=20)
    return p


def _read_matrix(path: str) -> list[list[int]]:
    """JSON list of rows, or one row per line written as ``0110`` or ``0 1 1 0``."""
    text = Path(path).read_text().strip()
    if text.startswith("["):
        return json.loads(text)
    rows = []
    for ln in text.splitlines():
        body = "".join(ln.split("#", 1)[0].split())
        if body:
            if set(body) - {"0", "1"}:
                raise ConfigError(f"{path}: matrix rows must be 0/1 strings, got {ln!r}")
            rows.append([int(ch) for ch in body])
    return rows


def spec_from_args(args) -> CodeSpec:
    n = args.n
    if not 1 <= n <= 16:
        raise ConfigError(f"--n must lie in [1, 16], got {n}")
    mode = Mode(args.mode)
    has_pattern = any(x is not None for x in (args.pattern, args.bit_reversal, args.random_pattern))
    if mode is Mode.PLAIN and has_pattern:
        raise ConfigError("a pattern was given but --mode is plain")
    if mode is not Mode.PLAIN and not has_pattern:
        raise ConfigError(f"--mode {mode.value} needs --pattern, --bit-reversal or --random-pattern")

    if args.pattern is not None:
        pattern = frozenset(read_index_file(args.pattern))
    elif args.bit_reversal is not None:
        pattern = bit_reversal_pattern(n, args.bit_reversal, mode)
    elif args.random_pattern is not None:
        rng = random.Random(args.seed)
        if mode is Mode.SHORTENED:
            pattern = random_shortening_pattern(n, args.random_pattern, rng)
        else:
            pattern = random_puncturing_pattern(n, args.random_pattern, rng)
    else:
        pattern = frozenset()

    if args.pac is not None:
        if set(args.pac) - {"0", "1"}:
            raise ConfigError(f"--pac expects a binary string, got {args.pac!r}")
        transform = PreTransform.pac(args.pac)
    elif args.matrix is not None:
        transform = PreTransform.matrix(_read_matrix(args.matrix))
    else:
        transform = PreTransform.identity()

    if args.frozen is not None:
        frozen = frozenset(read_index_file(args.frozen))
    else:
        seq = reliability_sequence(args.reliability)
        derived = capability_sets(n, pattern, mode)
        frozen = reliability_frozen_set(n, args.nr_k, derived, seq)
    return CodeSpec(n, frozen, mode, pattern, transform)


def _params(args, spec: CodeSpec) -> dict:
    params = {"command": args.command, **spec.describe()}
    for key in ("w_end", "max_list", "no_prune", "prefix", "start"):
        if getattr(args, key, None) is not None:
            params[key] = getattr(args, key)
    if args.random_pattern is not None:
        params["seed"] = args.seed
    return params


def _report(params: dict, terms, stats: dict, extra: dict | None = None) -> dict:
    rep = {"params": params, "spectrum": [[w, str(a)] for w, a in terms], "stats": stats}
    if extra:
        rep.update(extra)
    return rep


def _run_stats(res) -> dict:
    return {"n_c": res.stats.n_c, "C": res.stats.C, "pruned": res.stats.pruned,
            "survivors": res.stats.survivors, "ms": round(res.stats.seconds * 1000, 3)}


def cmd_spectrum(args, spec):
    res = enumerate_spectrum(spec, args.w_end, prune=not args.no_prune, max_list=args.max_list)
    return _report(_params(args, spec), res.terms, _run_stats(res)), 0


def cmd_mindist(args, spec):
    t = time.perf_counter()
    w, a = find_min_distance(spec, start=args.start, prune=not args.no_prune,
                             max_list=args.max_list)
    stats = {"ms": round((time.perf_counter() - t) * 1000, 3)}
    return _report(_params(args, spec), [(w, a)], stats, {"min_distance": [w, str(a)]}), 0


def cmd_coset(args, spec):
    if set(args.prefix) - {"0", "1"}:
        raise ConfigError(f"--prefix expects a binary string, got {args.prefix!r}")
    bits = [int(ch) for ch in args.prefix]
    if len(bits) > spec.N:
        raise ConfigError(f"prefix of length {len(bits)} exceeds N={spec.N}")
    t = time.perf_counter()
    engine = CosetEngine(spec, args.w_end)
    poly = engine.rwef_word(pack_bits(bits), len(bits))
    low = engine.lowest_word(pack_bits(bits), len(bits))
    stats = {"evaluations": engine.evaluations, "ms": round((time.perf_counter() - t) * 1000, 3)}
    extra = {"min_weight": None if low is None else [low[0], str(low[1])]}
    params = _params(args, spec)
    params["w_end"] = engine.w_end
    return _report(params, poly.items(), stats, extra), 0


def cmd_oracle_check(args, spec):
    from .oracle import OracleLimits, brute_spectrum

    w_end = spec.length if args.w_end is None else args.w_end
    t = time.perf_counter()
    fast = enumerate_spectrum(spec, w_end)
    ref = brute_spectrum(spec, w_end, OracleLimits(args.max_free_bits))
    ok = fast.terms == ref.terms
    stats = {"n_c": fast.stats.n_c, "C": fast.stats.C,
             "ms": round((time.perf_counter() - t) * 1000, 3)}
    extra = {"status": "MATCH" if ok else "MISMATCH",
             "oracle": [[w, str(a)] for w, a in ref.terms]}
    params = _params(args, spec)
    params["w_end"] = w_end
    return _report(params, fast.terms, stats, extra), 0 if ok else 1


COMMANDS = {
    "spectrum": cmd_spectrum,
    "mindist": cmd_mindist,
    "coset": cmd_coset,
    "oracle-check": cmd_oracle_check,
}


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2) + "\n"
    buf = io.StringIO()
    for key in sorted(report["params"]):
        buf.write(f"# {key}: {json.dumps(report['params'][key], sort_keys=True)}\n")
    for key in sorted(report["stats"]):
        buf.write(f"# stats.{key}: {json.dumps(report['stats'][key])}\n")
    for key in ("status", "min_distance", "min_weight"):
        if key in report:
            buf.write(f"# {key}: {json.dumps(report[key])}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["w", "A_w"])
    w.writerows(report["spectrum"])
    return buf.getvalue()


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.threads < 1:
        print("polarwef: error: --threads must be >= 1", file=sys.stderr)
        return 2
    try:
        spec = spec_from_args(args)
        report, status = COMMANDS[args.command](args, spec)
    except (ConfigError, ValueError, OSError, ArithmeticError, ListOverflowError) as exc:
        print(f"polarwef: error: {exc}", file=sys.stderr)
        return 2
    text = render(report, args.format)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    if report.get("status") == "MATCH":
        print("MATCH", file=sys.stderr)
    elif report.get("status") == "MISMATCH":
        print("MISMATCH", file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
