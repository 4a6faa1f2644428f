"""Command-line entry point: ``smaxkit {check,build,score,simulate,sweep,pa}``.

Exit codes: 0 success, 1 domain rejection (e.g. a non-graphical sequence),
2 input error (unreadable or malformed input, bad flags).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from importlib import resources

from . import bagen, evolution
from .degseq import (DegreeSequence, DomainError, build_phi, erdos_gallai,
                     erdos_gallai_violation, is_graphical_phi, revcdf, tripathi_vijay, tv_slack)
from .extremal import NotGraphicalError, bcd, exact_extrema
from .graph import GraphFormatError, read_edges_csv, write_edges_csv
from .metrics import s_metric, s_min_approx, s_report

log = logging.getLogger("smaxkit")

EXIT_OK, EXIT_REJECT, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def parse_sizes(text: str) -> list[int]:
    """Comma list of integers, ``2^k`` powers, or ``2^a..2^b`` power ranges."""
    out = []
    for item in text.split(","):
        item = item.strip()
        try:
            if ".." in item:
                a, b = item.split("..")
                lo, hi = (int(x.split("^")[1]) for x in (a, b))
                out.extend(2 ** p for p in range(lo, hi + 1))
            elif "^" in item:
                base, p = item.split("^")
                out.append(int(base) ** int(p))
            else:
                out.append(int(item))
        except (ValueError, IndexError):
            raise argparse.ArgumentTypeError(f"bad size {item!r}") from None
    return out


def parse_floats(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad number list {text!r}") from None


def _parse_cut_list(text: str) -> list[int | None]:
    out = []
    for x in text.split(","):
        x = x.strip().lower()
        out.append(None if x == "none" else int(x))
    return out


def parse_cutoffs(text: str) -> tuple[list, list]:
    """``EXT/INT`` comma lists, e.g. ``none,64,16/none,8192,512``."""
    try:
        ext, _, internal = text.partition("/")
        ext_c = _parse_cut_list(ext)
        int_c = _parse_cut_list(internal) if internal else list(evolution.DEFAULT_INTERNAL_CUTOFFS)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad cutoffs {text!r}") from None
    return ext_c, int_c


def _read(path: str | None) -> str:
    try:
        if path is None or path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(str(exc)) from None


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _load_degrees(path):
    try:
        return DegreeSequence.parse(_read(path))
    except DomainError as exc:
        raise InputError(str(exc)) from None


def cmd_check(args) -> int:
    D = _load_degrees(args.input)
    total = D.total
    if total == 0:
        print("graphical (empty graph)")
        return EXIT_OK
    sigma = revcdf(D)
    verdicts = {
        "erdos_gallai": erdos_gallai(D),
        "tripathi_vijay": tripathi_vijay(sigma, total),
        "phi": is_graphical_phi(build_phi(sigma), total),
    }
    chosen = list(verdicts) if args.test == "all" else [args.test]
    for name in chosen:
        print(f"{name}: {'graphical' if verdicts[name] else 'not graphical'}")
    ok = verdicts[chosen[0]]
    if ok:
        print("graphical")
        return EXIT_OK
    if total % 2:
        print("not graphical (odd sum)")
    elif D.degrees[0] > D.n - 1:
        print(f"not graphical (max degree {D.degrees[0]} exceeds n-1={D.n - 1})")
    else:
        k = erdos_gallai_violation(D)
        slack = tv_slack(sigma)
        j = next((i + 1 for i, x in enumerate(slack) if x < 0), None)
        where = f"histogram index j={j}, slack {slack[j - 1]}" if j else "no histogram witness"
        print(f"not graphical (Erdos-Gallai fails at k={k}; {where})")
    return EXIT_REJECT


def cmd_build(args) -> int:
    D = _load_degrees(args.input)
    if args.exact:
        ext = exact_extrema(D, connected_only=args.connected_only)
        g = ext.arg_max
    else:
        g = bcd(D)
    _write(args.output, write_edges_csv(g))
    sys.stderr.write("n,m,s,smin_approx\n")
    sys.stderr.write(f"{g.n},{g.m},{s_metric(g)},{s_min_approx(D)!r}\n")
    return EXIT_OK


def cmd_score(args) -> int:
    try:
        g = read_edges_csv(_read(args.input))
    except GraphFormatError as exc:
        raise InputError(str(exc)) from None
    rep = s_report(g)
    _write(args.output, rep.HEADER + "\n" + rep.csv_row() + "\n")
    return EXIT_OK


def cmd_simulate(args) -> int:
    g = bagen.generate_ba_tree(bagen.BAConfig(args.n, args.gamma[0], args.seed))
    _write(args.output, write_edges_csv(g))
    return EXIT_OK


def cmd_sweep(args) -> int:
    gammas = args.gamma if args.gamma else bagen.log_gamma_grid(-2.0, 4.0, 5)
    rows = bagen.sweep(args.sizes, gammas, args.samples, args.seed)
    _write(args.output, bagen.SweepRow.HEADER + "\n" + "".join(r.csv_row() + "\n" for r in rows))
    return EXIT_OK


def _fixture_text() -> str:
    return resources.files("smaxkit").joinpath("data/synthetic_temporal.csv").read_text(encoding="utf-8")


def cmd_pa(args) -> int:
    text = _fixture_text() if args.input is None else _read(args.input)
    try:
        tel = evolution.TemporalEdgeList.from_csv(text)
    except DomainError as exc:
        raise InputError(str(exc)) from None
    ext_c, int_c = args.cutoffs
    res = evolution.sliding_analysis(tel, args.window, args.step, ext_c, int_c,
                                     largest_component=args.largest_component)
    _write(args.output, res.series_csv())
    if args.trends:
        _write(args.trends, res.trends_csv())
    else:
        sys.stderr.write(res.trends_csv())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="smaxkit", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true", help="log at DEBUG level")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="graphicality of a degree sequence")
    c.add_argument("--input", help="degree sequence file (default stdin)")
    c.add_argument("--test", choices=["all", "erdos_gallai", "tripathi_vijay", "phi"], default="all")
    c.set_defaults(func=cmd_check)

    b = sub.add_parser("build", help="edge list of the greedy near-s_max graph")
    b.add_argument("--input")
    b.add_argument("--output")
    b.add_argument("--exact", action="store_true",
                   help="emit the exhaustive s_max graph instead (n<=10, sum<=24)")
    b.add_argument("--connected-only", action="store_true",
                   help="with --exact, restrict to connected realizations")
    b.set_defaults(func=cmd_build)

    s = sub.add_parser("score", help="s-metric report for an edge list")
    s.add_argument("--input")
    s.add_argument("--output")
    s.set_defaults(func=cmd_score)

    m = sub.add_parser("simulate", help="one BA tree as an edge list")
    m.add_argument("--n", type=int, required=True)
    m.add_argument("--gamma", type=parse_floats, default=[1.0])
    m.add_argument("--seed", type=int, required=True)
    m.add_argument("--output")
    m.set_defaults(func=cmd_simulate)

    w = sub.add_parser("sweep", help="CV and S-ratio over BA trees")
    w.add_argument("--sizes", type=parse_sizes, default=parse_sizes("2^3..2^10"))
    w.add_argument("--gamma", type=parse_floats, default=None)
    w.add_argument("--samples", type=int, default=100)
    w.add_argument("--seed", type=int, required=True)
    w.add_argument("--output")
    w.set_defaults(func=cmd_sweep)

    a = sub.add_parser("pa", help="sliding-window preferential attachment variance")
    a.add_argument("--input", help="t,u,v CSV (default: bundled synthetic fixture)")
    a.add_argument("--output")
    a.add_argument("--trends", help="where to write the trend table (default stderr)")
    a.add_argument("--window", type=int, default=5)
    a.add_argument("--step", type=int, default=1)
    a.add_argument("--cutoffs", type=parse_cutoffs, default=parse_cutoffs("none,64,16/none,8192,512"))
    a.add_argument("--largest-component", action=argparse.BooleanOptionalAction, default=True)
    a.add_argument("--seed", type=int, default=None, help="accepted for uniformity; pa is deterministic")
    a.set_defaults(func=cmd_pa)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO,
                        format="%(name)s: %(message)s", stream=sys.stderr)
    config = {k: v for k, v in vars(args).items() if k != "func"}
    log.info("config %s", json.dumps(config, sort_keys=True, default=str))
    try:
        return args.func(args)
    except InputError as exc:
        log.error("input error: %s", exc)
        return EXIT_INPUT
    except NotGraphicalError as exc:
        log.error("%s", exc)
        return EXIT_REJECT
    except DomainError as exc:
        log.error("rejected: %s", exc)
        return EXIT_REJECT


if __name__ == "__main__":
    sys.exit(main())
