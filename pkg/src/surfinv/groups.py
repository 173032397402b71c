"""Link-group presentations, abelianization, and free-abelian certificates."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from typing import Sequence

from .braids import BraidWord, FreeWord, artin, commute, free_inverse, free_reduce
from .rewriting import Exhausted, RewriteSystem, knuth_bendix

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class GroupPresentation:
    generator_count: int
    relators: tuple[FreeWord, ...] = ()

    def __post_init__(self):
        rels = []
        for r in self.relators:
            for x in r:
                if x == 0 or abs(x) > self.generator_count:
                    raise ValueError(f"relator letter {x} out of range")
            r = free_reduce(r)
            if r:
                rels.append(r)
        object.__setattr__(self, "relators", tuple(rels))

    def to_json(self) -> str:
        return json.dumps({
            "generatorCount": self.generator_count,
            "relators": [list(r) for r in self.relators],
        })

    @classmethod
    def from_json(cls, text: str) -> GroupPresentation:
        data = json.loads(text)
        return cls(int(data["generatorCount"]),
                   tuple(tuple(int(x) for x in r) for r in data["relators"]))

    def __str__(self):
        def word(r):
            return "".join(f"x{abs(x)}" + ("^-1" if x < 0 else "") for x in r)
        gens = ", ".join(f"x{j}" for j in range(1, self.generator_count + 1))
        rels = ", ".join(word(r) for r in self.relators)
        return f"< {gens} | {rels} >"


def link_group(a: BraidWord, b: BraidWord, check_commute: bool = True) -> GroupPresentation:
    """Presentation <x_1..x_m | x_j = Artin(a)(x_j) = Artin(b)(x_j)>."""
    if a.degree != b.degree:
        raise ValueError(f"degree mismatch: {a.degree} vs {b.degree}")
    if check_commute and not commute(a, b):
        log.warning("boundary braids %s and %s do not commute", a, b)
    m = a.degree
    relators = []
    for phi in (artin(a), artin(b)):
        for j, img in enumerate(phi.images, 1):
            relators.append(free_reduce((-j,) + img))
    return GroupPresentation(m, tuple(relators))


# -- abelianization --------------------------------------------------------------

@dataclass(frozen=True)
class AbelianInvariants:
    rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        for d in self.torsion:
            if d <= 1:
                raise ValueError(f"torsion coefficient must exceed 1, got {d}")
        for d, e in zip(self.torsion, self.torsion[1:]):
            if e % d:
                raise ValueError(f"torsion {self.torsion} is not a divisibility chain")

    def __str__(self):
        parts = [f"Z/{d}" for d in self.torsion] + ["Z"] * self.rank
        return " + ".join(parts) if parts else "0"


def exponent_matrix(P: GroupPresentation) -> list[list[int]]:
    rows = []
    for r in P.relators:
        row = [0] * P.generator_count
        for x in r:
            row[abs(x) - 1] += 1 if x > 0 else -1
        rows.append(row)
    return rows


def smith_diagonal(matrix: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero invariant factors d_1 | d_2 | ... of an integer matrix."""
    A = [list(row) for row in matrix]
    rows = len(A)
    cols = len(A[0]) if rows else 0
    diag = []
    t = 0
    while t < rows and t < cols:
        entries = [(abs(A[i][j]), i, j) for i in range(t, rows)
                   for j in range(t, cols) if A[i][j]]
        if not entries:
            break
        _, pi, pj = min(entries)
        A[t], A[pi] = A[pi], A[t]
        for row in A:
            row[t], row[pj] = row[pj], row[t]
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, rows):
                q = A[i][t] // p
                if q:
                    A[i] = [x - q * y for x, y in zip(A[i], A[t])]
                if A[i][t]:
                    dirty = True
            for j in range(t + 1, cols):
                q = A[t][j] // p
                if q:
                    for row in A:
                        row[j] -= q * row[t]
                if A[t][j]:
                    dirty = True
            if not dirty:
                # pivot must divide the rest of the block
                bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                            if A[i][j] % p), None)
                if bad is None:
                    break
                A[t] = [x + y for x, y in zip(A[t], A[bad[0]])]
                continue
            # move the smallest nonzero entry of row t / column t to the pivot
            cands = [(abs(A[i][t]), i, t) for i in range(t, rows) if A[i][t]]
            cands += [(abs(A[t][j]), t, j) for j in range(t, cols) if A[t][j]]
            _, pi, pj = min(cands)
            A[t], A[pi] = A[pi], A[t]
            for row in A:
                row[t], row[pj] = row[pj], row[t]
        diag.append(abs(A[t][t]))
        t += 1
    return diag


def abelianization(P: GroupPresentation) -> AbelianInvariants:
    diag = smith_diagonal(exponent_matrix(P))
    return AbelianInvariants(P.generator_count - len(diag),
                             tuple(d for d in diag if d > 1))


# -- certificates ----------------------------------------------------------------

def commutator(i: int, j: int) -> FreeWord:
    return (i, j, -i, -j)


@dataclass
class FreeAbelianResult:
    """Outcome of :func:`certify_free_abelian`.

    ``status`` is ``"certified"``, ``"refuted"`` (the completed system shows a
    commutator is nontrivial, or the abelianization disagrees) or
    ``"inconclusive"`` (completion ran out of resources).
    """

    status: str
    rank: int
    abelian: AbelianInvariants
    system: RewriteSystem | None = None
    exhausted: Exhausted | None = None
    witnesses: dict = field(default_factory=dict)

    @property
    def certified(self) -> bool:
        return self.status == "certified"

    def to_dict(self) -> dict:
        out = {
            "status": self.status,
            "rank": self.rank,
            "abelianization": {"rank": self.abelian.rank,
                               "torsion": list(self.abelian.torsion)},
        }
        if self.system is not None:
            out["rules"] = len(self.system.rules)
        if self.exhausted is not None:
            out["exhausted"] = self.exhausted.reason
        if self.witnesses:
            out["commutator_normal_forms"] = {
                f"[x{i},x{j}]": list(w) for (i, j), w in sorted(self.witnesses.items())}
        return out


def certify_free_abelian(P: GroupPresentation, rank: int,
                         max_rules: int = 500, max_len: int = 40) -> FreeAbelianResult:
    ab = abelianization(P)
    if ab.rank != rank or ab.torsion:
        return FreeAbelianResult("refuted", rank, ab)
    system = knuth_bendix(P, max_rules=max_rules, max_len=max_len)
    if isinstance(system, Exhausted):
        return FreeAbelianResult("inconclusive", rank, ab, exhausted=system)
    m = P.generator_count
    nontrivial = {}
    for i in range(1, m + 1):
        for j in range(i + 1, m + 1):
            nf = system.normal_form(commutator(i, j))
            if nf:
                nontrivial[(i, j)] = nf
    if nontrivial:
        return FreeAbelianResult("refuted", rank, ab, system=system, witnesses=nontrivial)
    return FreeAbelianResult("certified", rank, ab, system=system)


def relators_trivial(system: RewriteSystem, P: GroupPresentation) -> bool:
    return all(not system.normal_form(r) and not system.normal_form(free_inverse(r))
               for r in P.relators)
