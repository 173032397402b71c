"""Braid words, their permutations, and Artin's action on the free group.

A braid letter is a signed integer: ``k > 0`` is the generator sigma_k and
``k < 0`` is its inverse. Free-group letters use the same encoding for
``x_j`` and ``x_j^{-1}``. Braid equality is decided by comparing Artin
images, which is exact because the Artin representation is faithful.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

DEFAULT_MAX_LETTERS = 64

FreeWord = tuple[int, ...]


class BraidError(ValueError):
    pass


class WordTooLong(BraidError):
    pass


@dataclass(frozen=True)
class BraidWord:
    degree: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if self.degree < 1:
            raise BraidError(f"degree must be positive, got {self.degree}")
        object.__setattr__(self, "letters", tuple(self.letters))
        for k in self.letters:
            if k == 0 or abs(k) >= self.degree:
                raise BraidError(
                    f"letter {k} out of range for degree {self.degree}")

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __mul__(self, other: BraidWord) -> BraidWord:
        _same_degree(self, other)
        return BraidWord(self.degree, self.letters + other.letters)

    def __pow__(self, n: int) -> BraidWord:
        if n < 0:
            return self.inverse() ** (-n)
        return BraidWord(self.degree, self.letters * n)

    def inverse(self) -> BraidWord:
        """Reverse the letters and negate their signs."""
        return BraidWord(self.degree, tuple(-k for k in reversed(self.letters)))

    def __str__(self):
        if not self.letters:
            return "e"
        return "".join(
            f"s{abs(k)}" + ("^-1" if k < 0 else "") for k in self.letters)

    def to_text(self) -> str:
        return " ".join(str(k) for k in self.letters)


def _same_degree(u: BraidWord, v: BraidWord):
    if u.degree != v.degree:
        raise BraidError(f"degree mismatch: {u.degree} vs {v.degree}")


def parse_braid(text: str, degree: int) -> BraidWord:
    letters = []
    for token in text.split():
        try:
            k = int(token)
        except ValueError:
            raise BraidError(f"not an integer: {token!r}") from None
        letters.append(k)
    return BraidWord(degree, tuple(letters))


def garside_delta(degree: int) -> BraidWord:
    """Positive half twist sigma_1 (sigma_2 sigma_1) ... (sigma_{m-1} ... sigma_1)."""
    if degree < 2:
        raise BraidError("Garside element needs at least two strands")
    letters: list[int] = []
    for top in range(degree - 1, 0, -1):
        letters.extend(range(1, top + 1))
    return BraidWord(degree, tuple(letters))


def torus_pair(n: int) -> tuple[BraidWord, BraidWord]:
    """Boundary braids (sigma_1^2 sigma_2^{2n}, Delta^2) of degree 3."""
    a = BraidWord(3, (1, 1)) * BraidWord(3, (2,)) ** (2 * n)
    return a, garside_delta(3) ** 2


@dataclass(frozen=True)
class Permutation:
    """Bijection of {1..m}; ``images[k-1]`` is where position k goes."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError(f"not a permutation: {self.images}")

    @classmethod
    def identity(cls, m: int) -> Permutation:
        return cls(tuple(range(1, m + 1)))

    def __call__(self, k: int) -> int:
        return self.images[k - 1]

    def then(self, other: Permutation) -> Permutation:
        """Apply self first, then other."""
        return Permutation(tuple(other(self(k)) for k in range(1, len(self.images) + 1)))

    def is_identity(self) -> bool:
        return all(k == i for i, k in enumerate(self.images, 1))


def permutation_of(w: BraidWord) -> Permutation:
    images = list(range(1, w.degree + 1))
    # pos[k] = current position of the strand that started at k
    where = {k: k for k in images}
    at = {k: k for k in images}
    for letter in w.letters:
        i = abs(letter)
        s, t = at[i], at[i + 1]
        at[i], at[i + 1] = t, s
        where[s], where[t] = i + 1, i
    return Permutation(tuple(where[k] for k in images))


def orbits(perms: Iterable[Permutation], m: int) -> list[set[int]]:
    """Orbits of {1..m} under the group generated by ``perms``."""
    perms = list(perms)
    seen: set[int] = set()
    result = []
    for start in range(1, m + 1):
        if start in seen:
            continue
        orbit = {start}
        stack = [start]
        while stack:
            k = stack.pop()
            for p in perms:
                j = p(k)
                if j not in orbit:
                    orbit.add(j)
                    stack.append(j)
        seen |= orbit
        result.append(orbit)
    return result


# -- free group ---------------------------------------------------------------

def free_reduce(letters: Iterable[int]) -> FreeWord:
    out: list[int] = []
    for x in letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def free_inverse(w: Sequence[int]) -> FreeWord:
    return tuple(-x for x in reversed(w))


@dataclass(frozen=True)
class GeneratorImages:
    """An endomorphism of F_m given by the images of x_1 .. x_m."""

    degree: int
    images: tuple[FreeWord, ...]

    @classmethod
    def identity(cls, m: int) -> GeneratorImages:
        return cls(m, tuple((j,) for j in range(1, m + 1)))

    def apply(self, word: Sequence[int]) -> FreeWord:
        out: list[int] = []
        for x in word:
            img = self.images[abs(x) - 1]
            out.extend(img if x > 0 else free_inverse(img))
        return free_reduce(out)

    def is_identity(self) -> bool:
        return all(img == (j,) for j, img in enumerate(self.images, 1))

    def abelianized(self) -> list[list[int]]:
        """Integer matrix M with M[j][k] = exponent sum of x_k in image of x_j."""
        m = self.degree
        rows = []
        for img in self.images:
            row = [0] * m
            for x in img:
                row[abs(x) - 1] += 1 if x > 0 else -1
            rows.append(row)
        return rows


def compose(f: GeneratorImages, g: GeneratorImages) -> GeneratorImages:
    """The map f o g (apply g first)."""
    if f.degree != g.degree:
        raise BraidError("degree mismatch")
    return GeneratorImages(f.degree, tuple(f.apply(img) for img in g.images))


def artin_letter(letter: int, m: int) -> GeneratorImages:
    i = abs(letter)
    images = [(j,) for j in range(1, m + 1)]
    if letter > 0:
        images[i - 1] = (i, i + 1, -i)
        images[i] = (i,)
    else:
        images[i - 1] = (i + 1,)
        images[i] = (-(i + 1), i, i + 1)
    return GeneratorImages(m, tuple(images))


def artin(w: BraidWord) -> GeneratorImages:
    """Artin's automorphism; Artin(uv) = Artin(v) o Artin(u)."""
    m = w.degree
    current = GeneratorImages.identity(m)
    for letter in w.letters:
        current = compose(artin_letter(letter, m), current)
    return current


def braids_equal(u: BraidWord, v: BraidWord, max_letters: int = DEFAULT_MAX_LETTERS) -> bool:
    _same_degree(u, v)
    w = u * v.inverse()
    if len(w) > max_letters:
        raise WordTooLong(
            f"comparison word has {len(w)} letters (limit {max_letters})")
    return artin(w).is_identity()


def commute(a: BraidWord, b: BraidWord, max_letters: int = DEFAULT_MAX_LETTERS) -> bool:
    _same_degree(a, b)
    return braids_equal(a * b, b * a, max_letters)
