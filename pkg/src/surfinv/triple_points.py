"""Exhaustive lower-bound certificate for the triple point number of S_0.

A hypothetical diagram is a multiset of triple points, each carrying a
formal color triple over the symbols a, b, c, a BW-orientation sign
``epsilon`` and a Boltzmann-weight sign. The certificate enumerates every
such multiset up to a size bound, keeps those whose BW edge colors can cancel
in +/- pairs, and shows that each survivor is ruled out by one of:

* W1: every weight W_theta(C(a,b,c)) is 1;
* W2: some weight W_theta(C(a,b,c)) is not in {1, t^-2, t^4};
* W3: the weights W_theta'(C(a,b,c)) sum to 27.

Any of these is incompatible with Phi_theta(S_0) = Phi_theta'(S_0) = 21 + 4t^-2 + 2t^4.
"""

from __future__ import annotations

import itertools
import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .quandles import Cocycle3, theta_x, theta_z

SYMBOLS = "abc"
ALLOWED_WEIGHTS = {0, -2, 4}


@dataclass(frozen=True, order=True)
class TriplePointProfile:
    color_triple: tuple[str, str, str]
    epsilon: int
    weight_sign: int

    def __str__(self):
        return f"{'+' if self.weight_sign > 0 else '-'}({','.join(self.color_triple)})"


def classify_type(triple: Sequence[str]) -> str:
    x, y, z = triple
    if x != y and y != z and x != z:
        return "i"
    if x == y == z:
        return "v"
    if x == z:
        return "ii"
    if x == y:
        return "iii"
    return "iv"


def edge_labels(p: TriplePointProfile) -> list[tuple[int, tuple[str, str]]]:
    """Signed edge colors {eps(a,b), -eps(a,c), eps(b,c)} of a triple point."""
    a, b, c = p.color_triple
    e = p.epsilon
    return [(e, (a, b)), (-e, (a, c)), (e, (b, c))]


def E_of(p: TriplePointProfile) -> int:
    """Sum of f over the edge labels: f(eps(x,x)) = 0, f(eps(x,y)) = eps."""
    return sum(sign for sign, (x, y) in edge_labels(p) if x != y)


def E_table(p: TriplePointProfile) -> int:
    kind = classify_type(p.color_triple)
    return {"i": p.epsilon, "ii": 2 * p.epsilon}.get(kind, 0)


def pairing_consistent(profiles: Iterable[TriplePointProfile]) -> bool:
    """Non-degenerate edge labels must split into pairs +(x,y), -(x,y), and E must vanish."""
    profiles = list(profiles)
    balance: Counter = Counter()
    for p in profiles:
        for sign, (x, y) in edge_labels(p):
            if x != y:
                balance[(x, y)] += sign
    return all(v == 0 for v in balance.values()) and sum(map(E_of, profiles)) == 0


def substitutions() -> list[dict[str, int]]:
    return [dict(zip(SYMBOLS, v)) for v in itertools.product(range(3), repeat=3)]


def _exponent(profiles, theta: Cocycle3, sub: dict[str, int]) -> int:
    return sum(p.weight_sign * theta(*(sub[s] for s in p.color_triple)) for p in profiles)


@dataclass
class Sweep:
    theta_exponents: list[int]
    theta_prime_exponents: list[int]

    @property
    def w1(self) -> bool:
        return all(e == 0 for e in self.theta_exponents)

    @property
    def w2(self) -> bool:
        return any(e not in ALLOWED_WEIGHTS for e in self.theta_exponents)

    @property
    def w3(self) -> bool:
        # 27 monomials sum to the integer 27 only if each is t^0
        return all(e == 0 for e in self.theta_prime_exponents)

    def verdict(self) -> str:
        if self.w1:
            return "W1"
        if self.w2:
            return "W2"
        if self.w3:
            return "W3"
        return "FAIL"


def weight_sweep(profiles: Sequence[TriplePointProfile], theta: Cocycle3 | None = None,
                 theta_prime: Cocycle3 | None = None) -> Sweep:
    theta = theta or theta_z()
    theta_prime = theta_prime or theta_x()
    subs = substitutions()
    return Sweep([_exponent(profiles, theta, s) for s in subs],
                 [_exponent(profiles, theta_prime, s) for s in subs])


def all_profiles() -> list[TriplePointProfile]:
    return [TriplePointProfile(t, e, w)
            for t in itertools.product(SYMBOLS, repeat=3)
            for e in (1, -1) for w in (1, -1)]


def case_label(profiles: Sequence[TriplePointProfile]) -> str:
    kinds = sorted(classify_type(p.color_triple) for p in profiles)
    n = len(profiles)
    if n == 0:
        return "0"
    if "i" not in kinds:
        return "no type (i)"
    if n == 1:
        return "1"
    if n == 2:
        return "2"
    if n == 3:
        n_i = kinds.count("i")
        if n_i == 2:
            return "3.2" if "ii" in kinds else "3.1"
    return f"{n}:other"


@dataclass
class CaseRecord:
    profiles: tuple[TriplePointProfile, ...]
    verdict: str
    case: str

    def to_dict(self) -> dict:
        return {
            "colorTriples": ["".join(p.color_triple) for p in self.profiles],
            "epsilon": [p.epsilon for p in self.profiles],
            "signs": [p.weight_sign for p in self.profiles],
            "case": self.case,
            "verdict": self.verdict,
        }


@dataclass
class CaseReport:
    max_triples: int
    hypotheses: int = 0
    inconsistent: int = 0
    cases: list[CaseRecord] = field(default_factory=list)

    @property
    def certified(self) -> bool:
        return all(c.verdict != "FAIL" for c in self.cases)

    @property
    def lower_bound(self) -> int:
        return self.max_triples + 1 if self.certified else 0

    def verdict_counts(self) -> dict[str, dict[str, int]]:
        out: dict[str, Counter] = {}
        for c in self.cases:
            out.setdefault(c.case, Counter())[c.verdict] += 1
        return {k: dict(sorted(v.items())) for k, v in sorted(out.items())}

    def to_dict(self, details: bool = False) -> dict:
        out = {
            "maxTriples": self.max_triples,
            "hypotheses": self.hypotheses,
            "inconsistent": self.inconsistent,
            "consistent": len(self.cases),
            "certified": self.certified,
            "lowerBound": self.lower_bound,
            "byCase": self.verdict_counts(),
        }
        if details:
            out["cases"] = [c.to_dict() for c in self.cases]
        return out

    def to_json(self, details: bool = False) -> str:
        return json.dumps(self.to_dict(details), indent=2)

    def table(self, only_type_i: bool = True) -> str:
        lines = [f"{'colorTriples':<18} {'eps':<12} {'signs':<12} {'case':<12} verdict"]
        for c in self.cases:
            if only_type_i and c.case == "no type (i)":
                continue
            d = c.to_dict()
            lines.append(f"{' '.join(d['colorTriples']):<18} "
                         f"{' '.join(f'{e:+d}' for e in d['epsilon']):<12} "
                         f"{' '.join(f'{s:+d}' for s in d['signs']):<12} "
                         f"{c.case:<12} {c.verdict}")
        return "\n".join(lines)


_ORDERED_PAIRS = [(x, y) for x in SYMBOLS for y in SYMBOLS if x != y]


def _balance_vector(p: TriplePointProfile) -> tuple[int, ...]:
    vec = dict.fromkeys(_ORDERED_PAIRS, 0)
    for sign, pair in edge_labels(p):
        if pair in vec:
            vec[pair] += sign
    return tuple(vec[k] for k in _ORDERED_PAIRS)


def hypotheses(max_triples: int) -> Iterable[tuple[TriplePointProfile, ...]]:
    pool = all_profiles()
    for n in range(max_triples + 1):
        yield from itertools.combinations_with_replacement(pool, n)


def _add(u: tuple[int, ...], v: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(x + y for x, y in zip(u, v))


def certify_lower_bound(max_triples: int = 3) -> CaseReport:
    """Enumerate all hypotheses with at most ``max_triples`` triple points.

    Each profile contributes a balance vector over the six ordered pairs and
    a vector of weight exponents over the 27 substitutions; hypotheses are
    evaluated by summing these along the enumeration tree.
    """
    if max_triples < 0:
        raise ValueError("max_triples must be nonnegative")
    if max_triples > 4:
        raise ValueError("enumeration beyond four triple points is not supported")
    theta, theta_prime = theta_z(), theta_x()
    subs = substitutions()
    pool = all_profiles()
    balance = [_balance_vector(p) for p in pool]
    w_theta = [tuple(_exponent((p,), theta, s) for s in subs) for p in pool]
    w_prime = [tuple(_exponent((p,), theta_prime, s) for s in subs) for p in pool]
    zero6, zero27 = (0,) * 6, (0,) * 27
    report = CaseReport(max_triples)

    def walk(start, depth, bal, wt, wp, chosen):
        if depth == 0:
            report.hypotheses += 1
            if bal != zero6 or sum(E_of(pool[k]) for k in chosen) != 0:
                report.inconsistent += 1
                return
            h = tuple(pool[k] for k in chosen)
            verdict = Sweep(list(wt), list(wp)).verdict()
            report.cases.append(CaseRecord(h, verdict, case_label(h)))
            return
        for k in range(start, len(pool)):
            walk(k, depth - 1, _add(bal, balance[k]), _add(wt, w_theta[k]),
                 _add(wp, w_prime[k]), chosen + (k,))

    for n in range(max_triples + 1):
        walk(0, n, zero6, zero27, zero27, ())
    return report


def chart_profiles(records, names: str = SYMBOLS) -> list[TriplePointProfile]:
    """Experimental: read white-vertex records of a generic coloring as profiles.

    The BW sign of each vertex is taken equal to its triple-point sign; this
    identification is not established in general, so the output is only
    checked for E(Sigma) = 0.
    """
    return [TriplePointProfile(tuple(names[x] for x in r.color_triple), r.sign, r.sign)
            for r in records]


@dataclass
class TriplePointNumber:
    lower: int
    upper: int
    report: CaseReport

    @property
    def exact(self) -> int | None:
        return self.lower if self.lower == self.upper else None


def s0_triple_point_number(limits=None) -> TriplePointNumber:
    """Lower bound from the certificate, upper bound from the chart of S_0."""
    from .braids import torus_pair
    from .charts import Exhausted, SearchLimits, build_movie

    report = certify_lower_bound(3)
    a, b = torus_pair(0)
    movie = build_movie(a, b, limits or SearchLimits())
    if isinstance(movie, Exhausted):
        raise RuntimeError(f"chart search exhausted: {movie.reason}")
    return TriplePointNumber(report.lower_bound, movie.r3_count(), report)
