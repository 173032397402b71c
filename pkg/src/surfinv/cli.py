"""Command line front end.

    surfinv group --degree 3 --a "1 1" --b "1 2 1 1 2 1"
    surfinv invariant --degree 3 --a "1 1 2 2" --b "1 2 1 1 2 1" --cocycle builtin:theta_z
    surfinv movie --degree 3 --a "1 1" --b "1 2 1 1 2 1"
    surfinv triple-bound --max 3

Exit codes: 0 success, 1 input error, 2 resource exhaustion, 3 internal
invariant violation.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import charts, groups, quandles, triple_points
from .braids import BraidError, BraidWord, WordTooLong, commute, parse_braid

EXIT_OK, EXIT_INPUT, EXIT_EXHAUSTED, EXIT_INTERNAL = 0, 1, 2, 3

LIMIT_KEYS = {"max_extra", "max_states", "max_rules", "max_len", "max_letters"}


class InputError(Exception):
    pass


class InvariantViolation(Exception):
    pass


def parse_limits(text: str | None) -> dict[str, int]:
    limits = {"max_extra": 2, "max_states": 200_000, "max_rules": 500, "max_len": 40,
              "max_letters": 64}
    if not text:
        return limits
    for item in text.split(","):
        key, _, value = item.partition("=")
        key = key.strip()
        if key not in LIMIT_KEYS:
            raise InputError(f"unknown limit {key!r}; known: {', '.join(sorted(LIMIT_KEYS))}")
        try:
            limits[key] = int(value)
        except ValueError:
            raise InputError(f"limit {key} needs an integer, got {value!r}") from None
        if limits[key] < 0:
            raise InputError(f"limit {key} must be nonnegative")
    return limits


def thread_count(flag: int) -> int:
    env = os.environ.get("SURFINV_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise InputError(f"SURFINV_THREADS must be an integer, got {env!r}") from None
    return max(1, flag)


def load_quandle(spec: str) -> quandles.Quandle:
    if spec.startswith("builtin:"):
        name = spec.split(":", 1)[1]
        if name.upper().startswith("T") and name[1:].isdigit():
            return quandles.trivial_quandle(int(name[1:]))
        raise InputError(f"unknown builtin quandle {name!r}")
    path = Path(spec)
    if not path.exists():
        raise InputError(f"quandle file {spec} does not exist")
    q = quandles.Quandle.from_dict(json.loads(path.read_text()))
    problems = quandles.validate_quandle(q)
    if problems:
        raise InputError(f"{spec} is not a quandle: {problems[0]}")
    return q


def load_cocycle(spec: str, q: quandles.Quandle) -> quandles.Cocycle3:
    if spec.startswith("builtin:"):
        name = spec.split(":", 1)[1]
        if name == "zero":
            return quandles.zero_cocycle(q)
        if name not in quandles.BUILTIN_COCYCLES:
            raise InputError(f"unknown builtin cocycle {name!r}")
        theta = quandles.BUILTIN_COCYCLES[name]()
    else:
        path = Path(spec)
        if not path.exists():
            raise InputError(f"cocycle file {spec} does not exist")
        theta = quandles.cocycle_from_dict(json.loads(path.read_text()))
    if theta.quandle != q:
        raise InputError("cocycle is defined over a different quandle")
    problems = quandles.validate_cocycle(theta)
    if problems:
        raise InputError(f"not a 3-cocycle: {problems[0]}")
    return theta


def braid_pair(args) -> tuple[BraidWord, BraidWord]:
    if args.degree is None:
        raise InputError("--degree is required")
    a = parse_braid(args.a or "", args.degree)
    b = parse_braid(args.b or "", args.degree)
    return a, b


def emit(args, data: dict, text: str):
    if args.format == "json":
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        print(text)


# -- commands ---------------------------------------------------------------------

def cmd_group(args) -> int:
    limits = parse_limits(args.limits)
    a, b = braid_pair(args)
    commuting = commute(a, b, limits["max_letters"])
    if not commuting:
        print("warning: braids do not commute; the presentation is still computed",
              file=sys.stderr)
    P = groups.link_group(a, b, check_commute=False)
    ab = groups.abelianization(P)
    rank = args.rank if args.rank is not None else ab.rank
    result = groups.certify_free_abelian(P, rank, limits["max_rules"], limits["max_len"])
    if result.certified and not groups.relators_trivial(result.system, P):
        raise InvariantViolation("completed system does not kill every relator")
    data = {
        "commute": commuting,
        "presentation": json.loads(P.to_json()),
        "smithDiagonal": groups.smith_diagonal(groups.exponent_matrix(P)),
        **result.to_dict(),
    }
    if result.status == "certified":
        verdict = (f"free abelian of rank {rank} CERTIFIED "
                   f"({len(result.system.rules)} rules, confluent)")
    elif result.status == "inconclusive":
        verdict = f"INCONCLUSIVE: {result.exhausted.reason}"
    else:
        verdict = f"NOT free abelian of rank {rank}"
        if result.witnesses:
            (i, j), nf = sorted(result.witnesses.items())[0]
            verdict += f" ([x{i},x{j}] has normal form {list(nf)})"
    text = "\n".join([
        f"a = {a}   b = {b}   commute: {'yes' if commuting else 'NO'}",
        f"presentation: {P}",
        f"smith diagonal (nonzero): {data['smithDiagonal'] or 'none'}",
        f"abelianization: {ab}",
        f"certificate: {verdict}",
    ])
    emit(args, data, text)
    return EXIT_EXHAUSTED if result.status == "inconclusive" else EXIT_OK


def _movie_for(args, limits) -> charts.TorusChartMovie:
    if getattr(args, "movie", None):
        path = Path(args.movie)
        if not path.exists():
            raise InputError(f"movie file {args.movie} does not exist")
        M = charts.TorusChartMovie.from_json(path.read_text())
    else:
        a, b = braid_pair(args)
        if not commute(a, b, limits["max_letters"]):
            raise InputError("boundary braids must commute to bound a torus chart")
        M = charts.build_movie(a, b, charts.SearchLimits(limits["max_extra"],
                                                          limits["max_states"]))
        if isinstance(M, charts.Exhausted):
            raise SearchExhausted(f"chart search exhausted ({M.reason}); limits used: "
                                  f"max_extra={limits['max_extra']}, "
                                  f"max_states={limits['max_states']}")
    bad = charts.validate_movie(M)
    if bad is not None:
        if getattr(args, "movie", None):
            raise InputError(f"invalid movie: {bad}")
        raise InvariantViolation(f"constructed movie is invalid: {bad}")
    return M


class SearchExhausted(Exception):
    pass


def cmd_movie(args) -> int:
    M = _movie_for(args, parse_limits(args.limits))
    if args.format == "json":
        print(M.to_json())
    else:
        print(f"start: {BraidWord(M.degree, M.start)}")
        word = M.start
        for k, ev in enumerate(M.events):
            word = ev.apply(word)
            print(f"{k:3d} {ev.kind:<9} @{ev.position:<3d} -> {BraidWord(M.degree, word)}")
        print(f"white vertices: {M.r3_count()}")
    return EXIT_OK


def _white_vertex_rows(M, c, q, letters: str | None) -> list[str]:
    rows = []
    for r in charts.white_vertices(M, c, q):
        triple = ", ".join(letters[x] if letters else str(x) for x in r.color_triple)
        rows.append(f"{'+' if r.sign > 0 else '-'} ({triple})")
    return rows


def cmd_invariant(args) -> int:
    limits = parse_limits(args.limits)
    q = load_quandle(args.quandle)
    theta = load_cocycle(args.cocycle, q)
    M = _movie_for(args, limits)
    workers = thread_count(args.threads)
    colorings = charts.enumerate_colorings(M.a, M.b, q)
    phi = charts.cocycle_invariant(M, q, theta, workers)
    if phi.evaluate(1) != len(colorings):
        raise InvariantViolation("invariant at t=1 differs from the number of colorings")
    lines = [f"a = {M.a}   b = {M.b}",
             f"chart: {M.r3_count()} white vertices, {len(M.events)} events",
             f"colorings: {len(colorings)}",
             f"Phi = {phi}"]
    data = {"degree": M.degree, "a": list(M.a.letters), "b": list(M.b.letters),
            "whiteVertices": M.r3_count(), "events": len(M.events),
            "colorings": len(colorings),
            "invariant": {"text": str(phi), "terms": phi.to_json()}}
    if args.table:
        generic = tuple(range(M.degree))
        table = []
        if q.size >= M.degree and charts.is_admissible(M.a, M.b, generic, q):
            letters = "abcdefghij"
            lines.append(f"white vertices for the coloring "
                         f"({', '.join(letters[:M.degree])}):")
            lines.extend("  " + r for r in _white_vertex_rows(M, generic, q, letters))
        for c in colorings:
            w = charts.boltzmann_weight(M, c, theta)
            rows = _white_vertex_rows(M, c, q, None)
            table.append({"coloring": list(c), "weight": str(w), "vertices": rows})
            lines.append(f"coloring {c}: W = {w}")
            lines.extend("  " + r for r in rows)
        data["colorTable"] = table
    emit(args, data, "\n".join(lines))
    return EXIT_OK


def cmd_triple_bound(args) -> int:
    if not 0 <= args.max <= 4:
        raise InputError("--max must lie in 0..4")
    report = triple_points.certify_lower_bound(args.max)
    counts = report.verdict_counts()
    lines = [f"hypotheses with at most {args.max} triple points: {report.hypotheses}",
             f"inconsistent with edge pairing / E(Sigma)=0: {report.inconsistent}",
             f"consistent: {len(report.cases)}"]
    for case, verdicts in counts.items():
        shown = ", ".join(f"{v} {n}" for v, n in verdicts.items())
        lines.append(f"  case {case}: {shown}")
    data = report.to_dict(details=args.details)
    type_i = [c for c in report.cases if c.case != "no type (i)" and c.case != "0"]
    if args.max == 0:
        lines.append("vacuous: no triple points, W1 holds with the empty product")
    elif not type_i:
        lines.append("all cases with a type (i) triple point are inconsistent; "
                     "every other case has weight 1 (W1)")
    if report.certified:
        lines.append(f"lower bound {report.lower_bound} CERTIFIED")
    else:
        failed = sum(c.verdict == "FAIL" for c in report.cases)
        lines.append(f"NOT CERTIFIED: {failed} cases satisfy none of W1, W2, W3")
    if args.max == 3 and report.certified:
        limits = parse_limits(args.limits)
        a, b = triple_points_pair()
        M = charts.build_movie(a, b, charts.SearchLimits(limits["max_extra"],
                                                          limits["max_states"]))
        if isinstance(M, charts.Exhausted):
            raise SearchExhausted(M.reason)
        upper = M.r3_count()
        data["upperBound"] = upper
        lines.append(f"chart of S_0 has {upper} white vertices (upper bound {upper})")
        if upper == report.lower_bound:
            data["triplePointNumber"] = upper
            lines.append(f"triple point number of S_0 = {upper}")
    if args.details:
        lines.append(report.table())
    emit(args, data, "\n".join(lines))
    return EXIT_OK


def triple_points_pair():
    from .braids import torus_pair
    return torus_pair(0)


# -- argument parsing ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="surfinv", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, braids=True):
        if braids:
            p.add_argument("--degree", type=int)
            p.add_argument("--a", default="", help="boundary braid a, e.g. '1 1 2 2'")
            p.add_argument("--b", default="", help="boundary braid b")
        p.add_argument("--limits", help="comma separated key=value search limits")
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("group", help="link group, abelianization, free-abelian certificate")
    common(p)
    p.add_argument("--rank", type=int, help="rank to certify (default: abelian rank)")
    p.set_defaults(func=cmd_group)

    p = sub.add_parser("movie", help="build and print the chart movie")
    common(p)
    p.add_argument("--movie", help="read a movie JSON file instead of searching")
    p.set_defaults(func=cmd_movie)

    p = sub.add_parser("invariant", help="quandle cocycle invariant of the chart")
    common(p)
    p.add_argument("--movie", help="read a movie JSON file instead of searching")
    p.add_argument("--quandle", default="builtin:T3")
    p.add_argument("--cocycle", default="builtin:theta_z")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--table", action="store_true", help="print white-vertex tables")
    p.set_defaults(func=cmd_invariant)

    p = sub.add_parser("triple-bound", help="certify the triple point lower bound for S_0")
    common(p, braids=False)
    p.add_argument("--max", type=int, default=3)
    p.add_argument("--details", action="store_true", help="list every consistent case")
    p.set_defaults(func=cmd_triple_bound)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, BraidError, json.JSONDecodeError, KeyError) as exc:
        if isinstance(exc, WordTooLong):
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_EXHAUSTED
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SearchExhausted as exc:
        print(f"exhausted: {exc}", file=sys.stderr)
        return EXIT_EXHAUSTED
    except InvariantViolation as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
