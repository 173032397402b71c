"""Torus charts without black vertices, modelled as braid-word movies.

Cutting the torus open along both circles gives a square whose sides read
the boundary braids. Sweeping it diagonally turns the chart into a sequence
of braid words starting at ``b.a`` and ending at ``a.b``. Each white vertex of
the chart is an R3 event of the movie, a degree-4 vertex is a distant
commutation, and local maxima/minima of edges are cancellations/insertions
of inverse pairs.

A white vertex is read from the cyclic word ``after . before^-1`` around it:
that word is a rotation of sigma_i sigma_j sigma_i (sigma_j sigma_i sigma_j)^-1,
and the position of its three positive letters fixes the vertex's
(i, j) pattern, its color triple and its sign.
"""

from __future__ import annotations

import heapq
import json
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Iterable, Sequence

from .braids import BraidWord, orbits, permutation_of
from .quandles import Cocycle3, LaurentPoly, Quandle

R3, DISTANT, CANCEL, INSERT = "R3", "R2Distant", "R2Cancel", "R2Insert"
_KIND_RANK = {R3: 0, DISTANT: 1, CANCEL: 2, INSERT: 3}


class MovieError(ValueError):
    pass


@dataclass(frozen=True)
class MovieEvent:
    """Replace ``before`` by ``after`` at 0-based ``position`` of the current word."""

    kind: str
    position: int
    before: tuple[int, ...]
    after: tuple[int, ...]

    def apply(self, word: tuple[int, ...]) -> tuple[int, ...]:
        p = self.position
        return word[:p] + self.after + word[p + len(self.before):]

    def matches(self, word: tuple[int, ...]) -> bool:
        p = self.position
        return 0 <= p <= len(word) and word[p:p + len(self.before)] == self.before

    def inverse(self) -> MovieEvent:
        kind = {CANCEL: INSERT, INSERT: CANCEL}.get(self.kind, self.kind)
        return MovieEvent(kind, self.position, self.after, self.before)

    def shifted(self, offset: int) -> MovieEvent:
        return MovieEvent(self.kind, self.position + offset, self.before, self.after)

    def encoding(self) -> tuple:
        return (_KIND_RANK[self.kind], self.position, self.before, self.after)

    def to_dict(self) -> dict:
        out = {"type": self.kind, "position": self.position}
        if self.kind == INSERT:
            out["letter"] = self.after[0]
        out["before"] = list(self.before)
        out["after"] = list(self.after)
        return out

    @classmethod
    def from_dict(cls, data: dict, word: Sequence[int] | None = None) -> MovieEvent:
        kind, p = data["type"], int(data["position"])
        if kind not in _KIND_RANK:
            raise MovieError(f"unknown event type {kind!r}")
        if "before" in data and "after" in data:
            return cls(kind, p, tuple(data["before"]), tuple(data["after"]))
        if kind == INSERT:
            x = int(data["letter"])
            return cls(kind, p, (), (x, -x))
        if word is None:
            raise MovieError(f"{kind} record without letters needs the current word")
        if kind == DISTANT:
            x, y = word[p:p + 2]
            return cls(kind, p, (x, y), (y, x))
        if kind == CANCEL:
            return cls(kind, p, tuple(word[p:p + 2]), ())
        raise MovieError("R3 records must carry before/after letters")


def _relator(i: int, j: int) -> tuple[int, ...]:
    return (i, j, i, -j, -i, -j)


def _rotate(word: Sequence[int], k: int) -> tuple[int, ...]:
    return tuple(word[k:]) + tuple(word[:k])


@lru_cache(maxsize=None)
def r3_table(degree: int) -> dict[tuple[int, ...], tuple[int, ...]]:
    """All three-letter blocks that a white vertex can replace, with their replacement.

    For each rotation of sigma_i sigma_j sigma_i sigma_j^-1 sigma_i^-1 sigma_j^-1
    the first three letters equal the inverse of the last three.
    """
    table = {}
    for i in range(1, degree - 1):
        for p, q in ((i, i + 1), (i + 1, i)):
            rel = _relator(p, q)
            for k in range(6):
                r = _rotate(rel, k)
                table[r[:3]] = tuple(-x for x in reversed(r[3:]))
    return table


def r3_event(position: int, before: Sequence[int], degree: int) -> MovieEvent:
    before = tuple(before)
    after = r3_table(degree).get(before)
    if after is None:
        raise MovieError(f"{before} is not a white-vertex block")
    return MovieEvent(R3, position, before, after)


def neighbours(word: tuple[int, ...], degree: int, max_len: int) -> Iterable[MovieEvent]:
    table = r3_table(degree)
    n = len(word)
    for p in range(n - 2):
        after = table.get(word[p:p + 3])
        if after is not None:
            yield MovieEvent(R3, p, word[p:p + 3], after)
    for p in range(n - 1):
        x, y = word[p], word[p + 1]
        if abs(abs(x) - abs(y)) >= 2:
            yield MovieEvent(DISTANT, p, (x, y), (y, x))
        elif x == -y:
            yield MovieEvent(CANCEL, p, (x, y), ())
    if n + 2 <= max_len:
        for p in range(n + 1):
            for k in range(1, degree):
                for x in (k, -k):
                    yield MovieEvent(INSERT, p, (), (x, -x))


@dataclass(frozen=True)
class SearchLimits:
    """Bounds for the tile search.

    Words may grow to ``max_extra`` letters beyond the tile's own length;
    ``max_states`` caps the number of settled words per tile.
    """

    max_extra: int = 2
    max_states: int = 200_000


@dataclass
class Exhausted:
    reason: str
    limits: SearchLimits


def shortest_path(start: tuple[int, ...], goal: tuple[int, ...], degree: int,
                  limits: SearchLimits = SearchLimits(),
                  rng: random.Random | None = None) -> list[MovieEvent] | Exhausted:
    """Event path from start to goal minimizing (R3 count, total events).

    Ties are broken by the lexicographically smallest event encoding, or at
    random when ``rng`` is given.
    """
    max_len = max(len(start), len(goal)) + limits.max_extra
    best = {start: (0, 0)}
    heap = [((0, 0), (), 0, start, ())]
    settled = set()
    pushed = 0
    while heap:
        cost, tie, _, word, path = heapq.heappop(heap)
        if word in settled:
            continue
        if word == goal:
            return list(path)
        settled.add(word)
        if len(settled) > limits.max_states:
            return Exhausted(f"more than {limits.max_states} words settled", limits)
        for ev in neighbours(word, degree, max_len):
            nxt = ev.apply(word)
            if nxt in settled:
                continue
            c = (cost[0] + (ev.kind == R3), cost[1] + 1)
            if nxt in best and best[nxt] < c:
                continue
            best[nxt] = c
            key = rng.random() if rng is not None else ev.encoding()
            pushed += 1
            heapq.heappush(heap, (c, tie + (key,), pushed, nxt, path + (ev,)))
    return Exhausted("goal unreachable within the length bound", limits)


@lru_cache(maxsize=256)
def _cached_tile(b: tuple[int, ...], s: int, degree: int, limits: SearchLimits):
    found = shortest_path(b + (s,), (s,) + b, degree, limits)
    return found if isinstance(found, Exhausted) else tuple(found)


def slide_tile(b: BraidWord, s: int, limits: SearchLimits = SearchLimits(),
               rng: random.Random | None = None) -> list[MovieEvent] | Exhausted:
    """Events taking the word b.s to s.b."""
    if rng is None:
        found = _cached_tile(b.letters, s, b.degree, limits)
        return found if isinstance(found, Exhausted) else list(found)
    return shortest_path(b.letters + (s,), (s,) + b.letters, b.degree, limits, rng)


@dataclass(frozen=True)
class TorusChartMovie:
    degree: int
    a: BraidWord
    b: BraidWord
    events: tuple[MovieEvent, ...] = ()

    @property
    def start(self) -> tuple[int, ...]:
        return self.b.letters + self.a.letters

    @property
    def end(self) -> tuple[int, ...]:
        return self.a.letters + self.b.letters

    def slices(self) -> Iterable[tuple[int, ...]]:
        word = self.start
        yield word
        for ev in self.events:
            word = ev.apply(word)
            yield word

    def r3_count(self) -> int:
        return sum(ev.kind == R3 for ev in self.events)

    def to_json(self) -> str:
        return json.dumps({
            "degree": self.degree,
            "a": list(self.a.letters),
            "b": list(self.b.letters),
            "events": [ev.to_dict() for ev in self.events],
        })

    @classmethod
    def from_json(cls, text: str) -> TorusChartMovie:
        data = json.loads(text)
        m = int(data["degree"])
        a, b = BraidWord(m, tuple(data["a"])), BraidWord(m, tuple(data["b"]))
        word = b.letters + a.letters
        events = []
        for rec in data["events"]:
            ev = MovieEvent.from_dict(rec, word)
            events.append(ev)
            if ev.matches(word):
                word = ev.apply(word)
        return cls(m, a, b, tuple(events))


@dataclass
class InvalidEvent:
    index: int
    expected: tuple[int, ...]
    found: tuple[int, ...]
    message: str = ""

    def __str__(self):
        return (f"event {self.index}: expected {list(self.expected)}, "
                f"found {list(self.found)} {self.message}").strip()


def _event_is_legal(ev: MovieEvent, degree: int) -> bool:
    if ev.kind == R3:
        return r3_table(degree).get(ev.before) == ev.after
    if ev.kind == DISTANT:
        if len(ev.before) != 2:
            return False
        x, y = ev.before
        return abs(abs(x) - abs(y)) >= 2 and ev.after == (y, x)
    if ev.kind == CANCEL:
        return len(ev.before) == 2 and ev.before[0] == -ev.before[1] and ev.after == ()
    if ev.kind == INSERT:
        return (ev.before == () and len(ev.after) == 2 and ev.after[0] == -ev.after[1]
                and 0 < abs(ev.after[0]) < degree)
    return False


def validate_movie(M: TorusChartMovie) -> InvalidEvent | None:
    """Replay the events; None means the movie is valid."""
    word = M.start
    for k, ev in enumerate(M.events):
        if not _event_is_legal(ev, M.degree):
            return InvalidEvent(k, ev.before, ev.before, f"illegal {ev.kind} event")
        if not ev.matches(word):
            p = ev.position
            return InvalidEvent(k, ev.before, word[p:p + len(ev.before)])
        word = ev.apply(word)
    if word != M.end:
        return InvalidEvent(len(M.events), M.end, word, "final word is not a.b")
    return None


def build_movie(a: BraidWord, b: BraidWord, limits: SearchLimits = SearchLimits(),
                rng: random.Random | None = None) -> TorusChartMovie | Exhausted:
    """Slide the letters of a, one at a time, leftwards through b."""
    if a.degree != b.degree:
        raise MovieError("degree mismatch")
    events: list[MovieEvent] = []
    for k, s in enumerate(a.letters):
        tile = slide_tile(b, s, limits, rng)
        if isinstance(tile, Exhausted):
            return tile
        events.extend(ev.shifted(k) for ev in tile)
    return TorusChartMovie(a.degree, a, b, tuple(events))


# -- colorings ------------------------------------------------------------------

def color_action(w: BraidWord | Sequence[int], c: Sequence[int], q: Quandle) -> tuple[int, ...]:
    """Push strand colors left to right through the letters of w.

    sigma_i: (c_i, c_{i+1}) -> (c_{i+1} * c_i, c_i); sigma_i^-1 is the inverse map.
    """
    letters = w.letters if isinstance(w, BraidWord) else w
    col = list(c)
    for x in letters:
        i = abs(x) - 1
        u, v = col[i], col[i + 1]
        if x > 0:
            col[i], col[i + 1] = q.op(v, u), u
        else:
            col[i], col[i + 1] = v, q.right_divide(u, v)
    return tuple(col)


def is_admissible(a: BraidWord, b: BraidWord, c: Sequence[int], q: Quandle) -> bool:
    c = tuple(c)
    return color_action(a, c, q) == c and color_action(b, c, q) == c


def enumerate_colorings(a: BraidWord, b: BraidWord, q: Quandle) -> list[tuple[int, ...]]:
    return [c for c in product(range(q.size), repeat=a.degree)
            if is_admissible(a, b, c, q)]


def trivial_coloring_count(a: BraidWord, b: BraidWord, size: int) -> int:
    """Colorings by a trivial quandle: colors are constant on strand orbits."""
    return size ** len(orbits([permutation_of(a), permutation_of(b)], a.degree))


@dataclass(frozen=True)
class WhiteVertexRecord:
    color_triple: tuple[int, int, int]
    sign: int
    source_event: int

    def __str__(self):
        return f"{'+' if self.sign > 0 else '-'}{self.color_triple}"


def vertex_pattern(ev: MovieEvent) -> tuple[int, int, int]:
    """(k, i, j): the positive block sigma_i sigma_j sigma_i sits at offset k of after.before^-1."""
    loop = ev.after + tuple(-x for x in reversed(ev.before))
    for k in range(6):
        block = _rotate(loop, k)[:3]
        if all(x > 0 for x in block):
            return k, block[0], block[1]
    raise MovieError(f"{ev} is not a white vertex")


def white_vertices(M: TorusChartMovie, c: Sequence[int], q: Quandle) -> list[WhiteVertexRecord]:
    c = tuple(c)
    if len(c) != M.degree:
        raise MovieError("color vector length differs from the degree")
    if not is_admissible(M.a, M.b, c, q):
        raise MovieError(f"coloring {c} is not admissible")
    records = []
    word = M.start
    for idx, ev in enumerate(M.events):
        if ev.kind == R3:
            entering = color_action(word[:ev.position], c, q)
            k, i, j = vertex_pattern(ev)
            loop = ev.after + tuple(-x for x in reversed(ev.before))
            at_block = color_action(loop[:k], entering, q)
            low = min(i, j) - 1
            records.append(WhiteVertexRecord(tuple(at_block[low:low + 3]),
                                             1 if j > i else -1, idx))
        word = ev.apply(word)
    return records


def weight_exponent(records: Iterable[WhiteVertexRecord], theta: Cocycle3) -> int:
    return sum(r.sign * theta(*r.color_triple) for r in records)


def boltzmann_weight(M: TorusChartMovie, c: Sequence[int], theta: Cocycle3) -> LaurentPoly:
    return LaurentPoly.monomial(weight_exponent(white_vertices(M, c, theta.quandle), theta))


def cocycle_invariant(M: TorusChartMovie, q: Quandle, theta: Cocycle3,
                      workers: int = 1) -> LaurentPoly:
    if theta.quandle != q:
        raise MovieError("cocycle is defined over a different quandle")
    colorings = enumerate_colorings(M.a, M.b, q)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            exps = list(pool.map(lambda c: weight_exponent(white_vertices(M, c, q), theta),
                                 colorings))
    else:
        exps = [weight_exponent(white_vertices(M, c, q), theta) for c in colorings]
    terms: dict[int, int] = {}
    for e in sorted(exps):
        terms[e] = terms.get(e, 0) + 1
    return LaurentPoly(terms)


# -- perturbations ------------------------------------------------------------------

def _detour(word: tuple[int, ...], degree: int, steps: int, rng: random.Random,
            max_len: int) -> list[MovieEvent]:
    """A random walk of valid events followed by its exact reversal."""
    walk = []
    for _ in range(steps):
        options = list(neighbours(word, degree, max_len))
        if not options:
            break
        ev = rng.choice(options)
        walk.append(ev)
        word = ev.apply(word)
    return walk + [ev.inverse() for ev in reversed(walk)]


def _independent(e1: MovieEvent, e2: MovieEvent) -> bool:
    if len(e1.before) != len(e1.after) or len(e2.before) != len(e2.after):
        return False
    lo1, hi1 = e1.position, e1.position + len(e1.before)
    lo2, hi2 = e2.position, e2.position + len(e2.before)
    return hi1 <= lo2 or hi2 <= lo1


def perturb_movie(M: TorusChartMovie, rng: random.Random, detours: int = 2,
                  swaps: int = 4, max_extra: int = 4) -> TorusChartMovie:
    """A different valid movie with the same boundary braids."""
    events = list(M.events)
    for _ in range(swaps):
        spots = [k for k in range(len(events) - 1) if _independent(events[k], events[k + 1])]
        if not spots:
            break
        k = rng.choice(spots)
        events[k], events[k + 1] = events[k + 1], events[k]
    for _ in range(detours):
        words = [M.start]
        for ev in events:
            words.append(ev.apply(words[-1]))
        k = rng.randrange(len(words))
        max_len = max(len(w) for w in words) + max_extra
        events[k:k] = _detour(words[k], M.degree, rng.randint(1, 4), rng, max_len)
    return TorusChartMovie(M.degree, M.a, M.b, tuple(events))
