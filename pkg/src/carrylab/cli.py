"""Command-line surface: verify, triple, search, census, chain, rate,
density, sharpness, obstruct, figure1.

Every subcommand writes one deterministic artifact (CSV or JSON per the
schema of the operation) to --output, LF-terminated, identical across runs
and thread counts.  Exit codes: 0 success, 2 usage error, 3 a --require-hit
search that found nothing.
"""

from __future__ import annotations

import argparse
import math
import sys
from fractions import Fraction

from . import emit
from .chain import CarryChainSpec, optimal_tilt, rate_function, limit_eigenvalue, tail_bounds
from .density import density_sweep, gap_statistics, obstruction_scan, sharpness_census
from .divisibility import Triple, factorial_divides, failing_primes, oracle_mode
from .primes import primes_up_to
from .search import SearchParams, census, derive_params, scan
from .valuations import valuation_profile

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NO_HIT = 3


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from exc


def _int_list(text: str) -> list[int]:
    return [int(part) for part in text.split(",") if part]


def _fraction_list(text: str) -> list[Fraction]:
    return [_fraction(part) for part in text.split(",") if part]


def _write(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="\n") as fh:
            fh.write(text)


def _read_config(path: str) -> list[str]:
    """key=value lines -> CLI tokens, prepended so explicit flags win."""
    tokens: list[str] = []
    with open(path) as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise SystemExit(f"config line without '=': {raw.strip()!r}")
            key, value = (part.strip() for part in line.split("=", 1))
            if value.lower() in ("true", "false"):
                if value.lower() == "true":
                    tokens.append(f"--{key}")
            else:
                tokens.extend([f"--{key}", value])
    return tokens


def _search_params(args) -> SearchParams:
    return SearchParams(
        M=args.M,
        c=args.c,
        C1=args.C1,
        C2=args.C2,
        eta=args.eta,
        t_policy=args.t_policy,
        mode=args.mode,
        epsilon=args.epsilon,
    )


def _add_search_flags(sub, with_window: bool) -> None:
    sub.add_argument("--M", type=int, required=True, help="scan scale; the interval is [M, 2M]")
    sub.add_argument("--c", type=_fraction, required=True, help="block slope: k = floor(c log M)")
    sub.add_argument("--C1", type=_fraction, default=Fraction(1, 2))
    sub.add_argument("--C2", type=_fraction, default=Fraction(2))
    sub.add_argument("--eta", type=_fraction, default=Fraction(1, 10))
    sub.add_argument(
        "--t-policy",
        dest="t_policy",
        default="paper-10loglog",
        help="paper-10loglog, appendix-loglog, or fixed:<t>",
    )
    sub.add_argument("--mode", choices=("direct", "paper"), default="direct")
    sub.add_argument("--epsilon", type=_fraction, default=Fraction(1, 5))
    if with_window:
        sub.add_argument("--require-hit", action="store_true", help="exit 3 when nothing is found")


def _common_flags(sub) -> None:
    sub.add_argument("--output", "-o", default="-", help="output path, - for stdout")
    sub.add_argument("--threads", type=int, default=1)
    sub.add_argument("--seed", type=int, default=0, help="reserved for sampling runs")
    sub.add_argument("--config", help="key=value file mirroring the flags; flags win")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="carrylab",
        description="Carry-counting experiments for factorial and binomial divisibility.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("verify", help="binomial divisibility report for one (m, k)")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    _common_flags(p)

    p = subs.add_parser("triple", help="factorial divisibility report for one (a, b, n)")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--epsilon", type=_fraction, default=Fraction(1, 4))
    _common_flags(p)

    p = subs.add_parser("search", help="scan [M, 2M] for a certified good m")
    _add_search_flags(p, with_window=True)
    _common_flags(p)

    p = subs.add_parser("census", help="exact bad-carry / bad-spike counts over [M, 2M]")
    _add_search_flags(p, with_window=False)
    _common_flags(p)

    p = subs.add_parser("chain", help="exact carry-chain tails with tilted bounds")
    p.add_argument("--p", type=_int_list, default=[2])
    p.add_argument("--L", type=_int_list, default=[100])
    p.add_argument("--s", type=_fraction_list, default=None, help="tail thresholds in (0, 1/2)")
    p.add_argument("--delta", type=_fraction_list, default=None, help="alternative to --s: s = (1-delta)/2")
    _common_flags(p)

    p = subs.add_parser("rate", help="rate function, optimal tilt, and identity residual")
    p.add_argument(
        "--delta",
        type=_fraction_list,
        default=[Fraction(j, 20) for j in range(1, 20)],
    )
    _common_flags(p)

    p = subs.add_parser("density", help="divisibility fractions over m <= N")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--c", type=_fraction_list, required=True)
    p.add_argument("--kind", choices=("interval-product", "binomial"), default="interval-product")
    p.add_argument("--k-rule", dest="k_rule", choices=("c-log-m", "exp-c-sqrt-log-m"), default="c-log-m")
    _common_flags(p)

    p = subs.add_parser("sharpness", help="count m with nu_2(k!) exceeding the carry count")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--c", type=_fraction, required=True)
    _common_flags(p)

    p = subs.add_parser("obstruct", help="obstruction primes in the window above K(m)")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--c", type=float, default=1.0)
    p.add_argument("--delta", type=_fraction, default=Fraction(4, 5))
    _common_flags(p)

    p = subs.add_parser("figure1", help="raw and smoothed valuation curves over an m range")
    p.add_argument("--m-lo", dest="m_lo", type=int, default=1000)
    p.add_argument("--m-hi", dest="m_hi", type=int, default=2000)
    p.add_argument("--k", type=int, default=10)
    p.add_argument("--p", type=_int_list, default=[2, 13])
    p.add_argument("--window", type=int, default=25)
    _common_flags(p)

    return parser


def _cmd_verify(args) -> int:
    m, k = args.m, args.k
    if m < 0 or k < 0:
        raise ValueError("m and k must be naturals")
    triple = Triple.from_m_k(m, k)
    divides = factorial_divides(triple)
    bad = [] if divides else failing_primes(m, k)
    profile_primes = sorted(set(primes_up_to(2 * k)) | set(bad)) if k >= 1 else []
    report = {
        "m": m,
        "k": k,
        "binom_divides": divides,
        "oracle_mode": oracle_mode(triple),
        "failing_primes": bad,
        "profiles": [
            {
                "p": pr.p,
                "kappa": pr.kappa,
                "v_max": pr.v_max,
                "w_sum": pr.w_sum,
                "nu_k_factorial": pr.nu_k_factorial,
                "nu_binom_mk": pr.nu_binom_mk,
            }
            for pr in (valuation_profile(m, k, q) for q in profile_primes)
        ],
    }
    _write(args.output, emit.json_text(report))
    return EXIT_OK


def _cmd_triple(args, parser) -> int:
    a, b, n = args.a, args.b, args.n
    if a + b < n:
        parser.error("need a + b >= n")
    triple = Triple(a=a, b=b, n=n)
    k = triple.k
    eps = args.epsilon
    band_ok = eps * n <= min(a, b) and max(a, b) <= (1 - eps) * n
    report = {
        "a": a,
        "b": b,
        "n": n,
        "k": k,
        "divides": factorial_divides(triple),
        "oracle_mode": oracle_mode(triple),
        "k_over_log_n": (k / math.log(n)) if n > 1 else None,
        "epsilon": float(eps),
        "band_ok": band_ok,
    }
    _write(args.output, emit.json_text(report))
    return EXIT_OK


def _params_block(sp: SearchParams, dp) -> dict:
    return {
        "M": sp.M,
        "c": float(sp.c),
        "k": dp.k,
        "t": dp.t,
        "eta": float(sp.eta),
        "t_policy": sp.t_policy,
        "mode": sp.mode,
        "C1": float(sp.C1),
        "C2": float(sp.C2),
        "epsilon": float(sp.epsilon),
        "weak_threshold_holds": dp.weak_threshold_holds(),
    }


def _census_row_dicts(report) -> list[dict]:
    return [
        {
            "p": row.p,
            "L_p": row.L,
            "mu_p": float(row.mu),
            "J_p": row.J,
            "t": row.t,
            "bad_carry_count": row.bad_carry_count,
            "bad_carry_bound": row.bad_carry_bound,
            "bad_spike_count": row.bad_spike_count,
            "bad_spike_bound": row.bad_spike_bound,
            "within_bounds": row.within_bounds,
        }
        for row in report.rows
    ]


def _cmd_search(args) -> int:
    sp = _search_params(args)
    outcome = scan(sp, threads=args.threads)
    cert = outcome.certificate
    report = {
        "found": cert is not None,
        "params": _params_block(sp, outcome.derived),
    }
    if cert is not None:
        report["certificate"] = {
            "m": cert.m,
            "triple": {"a": cert.triple.a, "b": cert.triple.b, "n": cert.triple.n, "k": cert.triple.k},
            "witnesses": [
                {
                    "p": w.p,
                    "x_p": w.x_p,
                    "v_p": w.v_p,
                    "kappa_p": w.kappa_p,
                    "j_p_plus_t": w.j_p_plus_t,
                }
                for w in cert.witnesses
            ],
            "window_ok": cert.window_ok,
            "band_ok": cert.band_ok,
            "divisibility_verified": cert.divisibility_verified,
        }
    else:
        report["certificate"] = None
        report["census"] = _census_row_dicts(outcome.census)
    _write(args.output, emit.json_text(report))
    if cert is None and args.require_hit:
        return EXIT_NO_HIT
    return EXIT_OK


def _cmd_census(args) -> int:
    sp = _search_params(args)
    report = census(sp, threads=args.threads)
    rows = [
        [
            row.p,
            row.L,
            float(row.mu),
            row.J,
            row.t,
            row.bad_carry_count,
            row.bad_carry_bound,
            row.bad_spike_count,
            row.bad_spike_bound,
            row.within_bounds,
        ]
        for row in report.rows
    ]
    _write(args.output, emit.csv_text(emit.CENSUS_HEADER, rows))
    return EXIT_OK


def _cmd_chain(args, parser) -> int:
    if (args.s is None) == (args.delta is None):
        parser.error("give exactly one of --s or --delta")
    if args.delta is not None:
        pairs = [((1 - d) / 2, d) for d in args.delta]
    else:
        pairs = []
        for s in args.s:
            if not 0 < s < Fraction(1, 2):
                parser.error("--s values must lie in (0, 1/2)")
            pairs.append((s, 1 - 2 * s))
    rows = []
    for p in args.p:
        for L in args.L:
            for s, delta in pairs:
                spec = CarryChainSpec(p=p, L=L, s=s, delta=delta, lam=optimal_tilt(delta))
                res = tail_bounds(spec)
                rows.append(
                    [p, L, float(s), res.exact, res.tilted_bound, res.chernoff_bound, res.rho_used, res.C_used]
                )
    _write(args.output, emit.csv_text(emit.CHAIN_HEADER, rows))
    return EXIT_OK


def _cmd_rate(args) -> int:
    rows = []
    for d in args.delta:
        lam = optimal_tilt(d)
        i_delta = rate_function(d)
        residual = abs(lam * float((1 - d) / 2) - math.log(limit_eigenvalue(lam)) - i_delta)
        rows.append([float(d), i_delta, lam, residual])
    _write(args.output, emit.csv_text(emit.RATE_HEADER, rows))
    return EXIT_OK


def _cmd_density(args) -> int:
    points = density_sweep(args.N, args.c, kind=args.kind, k_rule=args.k_rule, threads=args.threads)
    rows = [
        [pt.N, float(pt.c), pt.kind, pt.k_rule, pt.total, pt.hits, pt.fraction]
        for pt in points
    ]
    _write(args.output, emit.csv_text(emit.DENSITY_HEADER, rows))
    return EXIT_OK


def _cmd_sharpness(args) -> int:
    blocked, total = sharpness_census(args.N, args.c)
    rows = [[args.N, float(args.c), blocked, total]]
    _write(args.output, emit.csv_text(emit.SHARPNESS_HEADER, rows))
    return EXIT_OK


def _cmd_obstruct(args) -> int:
    witnesses = obstruction_scan(args.m, args.c, args.delta)
    report = {
        "m": args.m,
        "c": args.c,
        "delta": float(args.delta),
        "witnesses": [
            {"m": w.m, "k": w.k, "p": w.p, "kappa_p": w.kappa_p, "nu_binom": w.nu_binom}
            for w in witnesses
        ],
    }
    _write(args.output, emit.json_text(report))
    return EXIT_OK


def _figure1_path(base: str, p: int) -> str:
    if "." in base.rsplit("/", 1)[-1]:
        stem, ext = base.rsplit(".", 1)
        return f"{stem}_p{p}.{ext}"
    return f"{base}_p{p}"


def _cmd_figure1(args, parser) -> int:
    if args.m_lo > args.m_hi:
        parser.error("need m-lo <= m-hi")
    if args.window < 1 or args.window % 2 == 0:
        parser.error("window must be odd and >= 1")
    if len(args.p) > 1 and args.output == "-":
        parser.error("multiple primes need --output (one file per prime)")
    for p in args.p:
        rows = emit.figure1_rows(args.m_lo, args.m_hi, args.k, p, args.window)
        text = emit.csv_text(emit.FIGURE1_HEADER, rows)
        path = args.output if len(args.p) == 1 else _figure1_path(args.output, p)
        _write(path, text)
    return EXIT_OK


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    # Splice config-file defaults in front of the explicit flags.
    if argv and not argv[0].startswith("-"):
        for i, token in enumerate(argv):
            if token == "--config" and i + 1 < len(argv):
                argv = [argv[0], *_read_config(argv[i + 1]), *argv[1:]]
                break
    args = parser.parse_args(argv)
    try:
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "triple":
            return _cmd_triple(args, parser)
        if args.command == "search":
            return _cmd_search(args)
        if args.command == "census":
            return _cmd_census(args)
        if args.command == "chain":
            return _cmd_chain(args, parser)
        if args.command == "rate":
            return _cmd_rate(args)
        if args.command == "density":
            return _cmd_density(args)
        if args.command == "sharpness":
            return _cmd_sharpness(args)
        if args.command == "obstruct":
            return _cmd_obstruct(args)
        if args.command == "figure1":
            return _cmd_figure1(args, parser)
    except ValueError as exc:
        parser.exit(EXIT_USAGE, f"carrylab: {exc}\n")
    raise AssertionError(f"unhandled command {args.command!r}")


if __name__ == "__main__":
    sys.exit(main())
