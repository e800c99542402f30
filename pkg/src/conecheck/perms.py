"""Finitely supported permutations of the positive integers.

Cycles compose left to right: in ``(x y)(y z)`` the left cycle acts first,
so the product is ``(x z y)``.  All norms and projections in the package
rely on this convention; ``test_perms.py`` pins it with a regression test.
"""

from __future__ import annotations

import re
from functools import lru_cache


class OddPermutationError(ValueError):
    """Raised when an operation defined on even permutations gets an odd one."""


class PermutationSearchError(RuntimeError):
    """Raised when a BFS oracle would exceed its configured ambient bound."""


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


class Permutation:
    """A finitely supported bijection of {1, 2, 3, ...}, stored sparsely.

    Only moved points are kept: ``mapping[p] = q`` with ``p != q``.
    Instances are immutable and hashable.
    """

    __slots__ = ("_map", "_key")

    def __init__(self, mapping: dict[int, int] | None = None):
        clean: dict[int, int] = {}
        if mapping:
            for p, q in mapping.items():
                if p < 1 or q < 1:
                    raise ValueError(f"points must be positive integers, got {p}->{q}")
                if p != q:
                    clean[p] = q
            if set(clean.keys()) != set(clean.values()):
                raise ValueError("mapping is not a bijection of its support")
        self._map = clean
        self._key = tuple(sorted(clean.items()))

    @classmethod
    def identity(cls) -> "Permutation":
        return cls()

    @classmethod
    def from_cycles(cls, cycles) -> "Permutation":
        """Build from disjoint cycles; length-1 cycles are dropped."""
        mapping: dict[int, int] = {}
        seen: set[int] = set()
        for cyc in cycles:
            cyc = list(cyc)
            if len(cyc) <= 1:
                continue
            if seen.intersection(cyc) or len(set(cyc)) != len(cyc):
                raise ValueError(f"cycles are not disjoint: {cycles}")
            seen.update(cyc)
            for a, b in zip(cyc, cyc[1:]):
                mapping[a] = b
            mapping[cyc[-1]] = cyc[0]
        return cls(mapping)

    @classmethod
    def transposition(cls, a: int, b: int) -> "Permutation":
        return cls.from_cycles([(a, b)])

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        """Parse cycle notation like ``"(1 2 3)(5 6)"``; identity is ``"()"``."""
        text = text.strip()
        if text in ("", "()"):
            return cls()
        chunks = _CYCLE_RE.findall(text)
        if not chunks or _CYCLE_RE.sub("", text).strip():
            raise ValueError(f"not cycle notation: {text!r}")
        cycles = []
        for chunk in chunks:
            if chunk.strip():
                cycles.append([int(tok) for tok in chunk.split()])
        return cls.from_cycles(cycles)

    def __call__(self, point: int) -> int:
        return self._map.get(point, point)

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return f"Permutation.parse({str(self)!r})"

    def __str__(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(str(p) for p in cyc) + ")" for cyc in cycles)

    def __bool__(self) -> bool:
        return bool(self._map)

    def is_identity(self) -> bool:
        return not self._map

    def support(self) -> tuple[int, ...]:
        """Moved points in increasing order."""
        return tuple(sorted(self._map))

    def mapping(self) -> dict[int, int]:
        return dict(self._map)

    def inverse(self) -> "Permutation":
        return Permutation({q: p for p, q in self._map.items()})

    def then(self, other: "Permutation") -> "Permutation":
        """Left-to-right product: self first, then other."""
        mapping = {}
        for p in set(self._map) | set(other._map):
            q = other(self(p))
            if q != p:
                mapping[p] = q
        return Permutation(mapping)

    def __mul__(self, other: "Permutation") -> "Permutation":
        return self.then(other)

    def cycles(self) -> tuple[tuple[int, ...], ...]:
        """Canonical cycle decomposition: min-first cycles, sorted by minimum."""
        out = []
        seen: set[int] = set()
        for start in sorted(self._map):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            p = self._map[start]
            while p != start:
                cyc.append(p)
                seen.add(p)
                p = self._map[p]
            out.append(tuple(cyc))
        return tuple(out)

    def cycle_type(self) -> tuple[int, ...]:
        """Non-trivial cycle lengths, descending."""
        return tuple(sorted((len(c) for c in self.cycles()), reverse=True))

    def is_even(self) -> bool:
        return sum(len(c) - 1 for c in self.cycles()) % 2 == 0

    def sign(self) -> int:
        return 1 if self.is_even() else -1

    def conjugated_by(self, tau: "Permutation") -> "Permutation":
        """tau * self * tau^{-1} under left-to-right composition."""
        return tau.then(self).then(tau.inverse())

    def to_images(self, degree: int) -> tuple[int, ...]:
        """0-based image tuple on {1..degree}; degree must cover the support."""
        if self._map and max(self._map) > degree:
            raise ValueError(f"support exceeds degree {degree}")
        return tuple(self._map.get(i, i) - 1 for i in range(1, degree + 1))

    @classmethod
    def from_images(cls, images) -> "Permutation":
        """Inverse of :meth:`to_images`."""
        return cls({i + 1: q + 1 for i, q in enumerate(images) if q != i})


IDENTITY = Permutation()


def compose(a: Permutation, b: Permutation) -> Permutation:
    """Apply ``a`` first, then ``b``."""
    return a.then(b)


def compose_all(perms) -> Permutation:
    acc = IDENTITY
    for p in perms:
        acc = acc.then(p)
    return acc


def commutator(b: Permutation, c: Permutation) -> Permutation:
    """b c b^{-1} c^{-1}, read left to right."""
    return b.then(c).then(b.inverse()).then(c.inverse())


def supp_norm(sigma: Permutation) -> int:
    """Number of moved points; the support norm."""
    return len(sigma._map)


def tr_norm(sigma: Permutation) -> int:
    """Minimal number of transpositions multiplying to sigma.

    Closed form: support size minus the number of non-trivial cycles.  The
    BFS oracle in the test suite confirms it on exhaustive S_n, n <= 7.
    """
    return supp_norm(sigma) - len(sigma.cycles())


# --- 3-cycle word norm via BFS oracle ---------------------------------------

# BFS ambient degrees above this are refused: A_9 already has 181440 elements.
MAX_THREE_CYCLE_DEGREE = 8


def _compose_images(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    # left-to-right on 0-based image tuples
    return tuple(b[x] for x in a)


@lru_cache(maxsize=None)
def _three_cycle_table(degree: int) -> dict[tuple[int, ...], int]:
    """Exact 3-cycle word length for every element of A_degree."""
    from itertools import combinations

    gens = []
    for a, b, c in combinations(range(degree), 3):
        for cyc in ((a, b, c), (a, c, b)):
            images = list(range(degree))
            images[cyc[0]], images[cyc[1]], images[cyc[2]] = cyc[1], cyc[2], cyc[0]
            gens.append(tuple(images))
    ident = tuple(range(degree))
    dist = {ident: 0}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = _compose_images(g, s)
                if h not in dist:
                    dist[h] = dist[g] + 1
                    nxt.append(h)
        frontier = nxt
    return dist


def three_cycle_norm(sigma: Permutation, ambient: int | None = None) -> int:
    """Minimal number of 3-cycles multiplying to sigma (sigma must be even).

    The BFS oracle runs on the bounding alternating group, padded to at
    least A_5; ambient degrees above MAX_THREE_CYCLE_DEGREE are refused.
    """
    if not sigma.is_even():
        raise OddPermutationError(f"{sigma} is odd; 3-cycles only generate A_n")
    if sigma.is_identity():
        return 0
    degree = max(sigma.support()[-1], 5)
    if ambient is not None:
        if ambient < degree:
            raise ValueError(f"ambient {ambient} does not contain the support")
        degree = ambient
    if degree > MAX_THREE_CYCLE_DEGREE:
        raise PermutationSearchError(
            f"3-cycle BFS refused for A_{degree} (> A_{MAX_THREE_CYCLE_DEGREE})"
        )
    return _three_cycle_table(degree)[sigma.to_images(degree)]


def bi_invariant_distance(a: Permutation, b: Permutation, norm=supp_norm) -> int:
    """d(a, b) = norm(a b^{-1}); bi-invariant for conjugation-invariant norms."""
    return norm(a.then(b.inverse()))
