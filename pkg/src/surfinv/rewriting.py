"""Knuth-Bendix completion for group presentations under shortlex.

Group words are encoded as strings over a 2m-letter alphabet so that
substring search does the matching: x_1 -> 'a', x_1^-1 -> 'b', x_2 -> 'c',
... . Character order then coincides with the symbol order
x_1 < x_1^-1 < x_2 < x_2^-1 < ..., and shortlex is ``(len(w), w)``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import TYPE_CHECKING, Sequence

if TYPE_CHECKING:
    from .groups import GroupPresentation


def encode(word: Sequence[int]) -> str:
    return "".join(chr(ord("a") + 2 * (abs(x) - 1) + (x < 0)) for x in word)


def decode(text: str) -> tuple[int, ...]:
    out = []
    for ch in text:
        k = ord(ch) - ord("a")
        j = k // 2 + 1
        out.append(-j if k % 2 else j)
    return tuple(out)


def shortlex_key(w: str):
    return (len(w), w)


@dataclass
class Exhausted:
    reason: str
    rules: int
    pending: int


class RewriteSystem:
    """Length-reducing (shortlex) string rewriting rules ``lhs -> rhs``."""

    def __init__(self, generator_count: int, rules: dict[str, str] | None = None,
                 complete: bool = False):
        self.generator_count = generator_count
        self.rules: dict[str, str] = dict(rules or {})
        self.complete = complete

    def reduce(self, w: str) -> str:
        while True:
            before = w
            for lhs, rhs in self.rules.items():
                if lhs in w:
                    w = w.replace(lhs, rhs)
            if w == before:
                return w

    def normal_form(self, word: Sequence[int]) -> tuple[int, ...]:
        return decode(self.reduce(encode(word)))

    def critical_pairs(self):
        """Yield (u, v) for every overlap and inclusion between rule left sides."""
        items = list(self.rules.items())
        for l1, r1 in items:
            for l2, r2 in items:
                for k in range(1, min(len(l1), len(l2))):
                    if l1[-k:] == l2[:k]:
                        yield r1 + l2[k:], l1[:-k] + r2
                if l1 != l2:
                    start = l1.find(l2)
                    while start >= 0:
                        yield r1, l1[:start] + r2 + l1[start + len(l2):]
                        start = l1.find(l2, start + 1)

    def locally_confluent(self) -> bool:
        return all(self.reduce(u) == self.reduce(v) for u, v in self.critical_pairs())

    def readable_rules(self) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
        return [(decode(l), decode(r)) for l, r in sorted(self.rules.items(),
                                                          key=lambda lr: shortlex_key(lr[0]))]


def _overlaps(new_l: str, new_r: str, l2: str, r2: str):
    for l1, r1, la, ra in ((new_l, new_r, l2, r2), (l2, r2, new_l, new_r)):
        for k in range(1, min(len(l1), len(la))):
            if l1[-k:] == la[:k]:
                yield r1 + la[k:], l1[:-k] + ra


def knuth_bendix(P: GroupPresentation, max_rules: int = 500,
                 max_len: int = 40) -> RewriteSystem | Exhausted:
    """Complete the monoid presentation of P with formal inverses.

    Deterministic: equations are processed first-in first-out. Returns
    :class:`Exhausted` if a rule would exceed ``max_len`` or the system
    would exceed ``max_rules`` rules.
    """
    if max_rules <= 0 or max_len <= 0:
        raise ValueError("limits must be positive")
    system = RewriteSystem(P.generator_count)
    rules = system.rules
    pending: deque[tuple[str, str]] = deque()
    for j in range(1, P.generator_count + 1):
        x, X = encode((j,)), encode((-j,))
        pending.append((x + X, ""))
        pending.append((X + x, ""))
    for r in P.relators:
        pending.append((encode(r), ""))

    while pending:
        u, v = pending.popleft()
        u, v = system.reduce(u), system.reduce(v)
        if u == v:
            continue
        if shortlex_key(u) < shortlex_key(v):
            u, v = v, u
        if len(u) > max_len:
            return Exhausted(f"rule of length {len(u)} exceeds max_len={max_len}",
                             len(rules), len(pending))
        # interreduce: rules whose left side contains u go back to the queue
        for lhs in [l for l in rules if u in l]:
            pending.append((lhs, rules.pop(lhs)))
        rules[u] = v
        for lhs in list(rules):
            if lhs != u:
                rules[lhs] = system.reduce(rules[lhs])
        if len(rules) > max_rules:
            return Exhausted(f"more than max_rules={max_rules} rules",
                             len(rules), len(pending))
        for lhs, rhs in list(rules.items()):
            pending.extend(_overlaps(u, v, lhs, rhs))
    system.complete = True
    return system
