"""Exact word norms on finite groups with conjugation-closed generating sets.

The engine is generic over a :class:`FiniteGroupOracle`; built-in carriers
cover symmetric, alternating and cyclic groups and direct products of these.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Callable, Hashable, Iterable

from .perms import Permutation, _compose_images


class NotGeneratingError(ValueError):
    """The generating set does not reach the whole carrier."""

    def __init__(self, unreached: int):
        super().__init__(f"generators do not generate: {unreached} elements unreached")
        self.unreached = unreached


@dataclass(frozen=True)
class FiniteGroupOracle:
    """A finite group given by an element list and multiplication callables.

    Elements must be hashable.  Group axioms are spot-checked by
    :meth:`check_axioms`, not proven.
    """

    name: str
    elements: tuple
    multiply: Callable[[Hashable, Hashable], Hashable]
    invert: Callable[[Hashable], Hashable]
    identity: Hashable
    describe: Callable[[Hashable], str] = field(default=str)

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))

    def order(self) -> int:
        return len(self.elements)

    def check_axioms(self, rng=None, triples: int = 1000) -> None:
        """Identity/inverse laws on all elements; associativity on random triples."""
        import random

        rng = rng or random.Random(0)
        for g in self.elements:
            assert self.multiply(g, self.identity) == g
            assert self.multiply(self.identity, g) == g
            assert self.multiply(g, self.invert(g)) == self.identity
        els = self.elements
        for _ in range(triples):
            a, b, c = (rng.choice(els) for _ in range(3))
            assert self.multiply(self.multiply(a, b), c) == self.multiply(a, self.multiply(b, c))


@dataclass
class NormTable:
    """Exact word-norm values for every element of a finite carrier."""

    oracle: FiniteGroupOracle
    values: dict
    generating_set: frozenset

    def __getitem__(self, g) -> int:
        return self.values[g]

    def norms(self) -> list[int]:
        return [self.values[g] for g in self.oracle.elements]

    def check_axioms(self) -> None:
        """Positivity, symmetry and the triangle inequality, element by element."""
        mul, inv = self.oracle.multiply, self.oracle.invert
        assert self.values[self.oracle.identity] == 0
        for g, n in self.values.items():
            assert n >= 0 and (n > 0) == (g != self.oracle.identity)
            assert self.values[inv(g)] == n
        for g, ng in self.values.items():
            for h, nh in self.values.items():
                assert self.values[mul(g, h)] <= ng + nh

    def check_conjugation_invariance(self) -> None:
        mul, inv = self.oracle.multiply, self.oracle.invert
        for g, n in self.values.items():
            for t in self.oracle.elements:
                assert self.values[mul(mul(t, g), inv(t))] == n

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["element", "norm"])
            for g in self.oracle.elements:
                writer.writerow([self.oracle.describe(g), self.values[g]])

    def to_json(self) -> str:
        return json.dumps(
            {
                "carrier": self.oracle.name,
                "order": self.oracle.order(),
                "generators": sorted(self.oracle.describe(s) for s in self.generating_set),
                "norms": {self.oracle.describe(g): self.values[g] for g in self.oracle.elements},
            },
            sort_keys=True,
        )


def conjugacy_closure(oracle: FiniteGroupOracle, seeds: Iterable) -> frozenset:
    """Smallest superset of seeds and their inverses closed under conjugation."""
    seeds = list(seeds)
    if not seeds:
        raise ValueError("seeds must be nonempty")
    mul, inv = oracle.multiply, oracle.invert
    closed = set(seeds)
    closed.update(inv(s) for s in seeds)
    frontier = list(closed)
    while frontier:
        nxt = []
        for s in frontier:
            for t in oracle.elements:
                c = mul(mul(t, s), inv(t))
                if c not in closed:
                    closed.add(c)
                    nxt.append(c)
        frontier = nxt
    return frozenset(closed)


def bfs_norm(oracle: FiniteGroupOracle, gens: Iterable) -> NormTable:
    """Exact word length of every element; generators are inverse-closed first.

    Raises :class:`NotGeneratingError` when BFS does not reach the carrier.
    """
    mul, inv = oracle.multiply, oracle.invert
    gen_set = set(gens)
    gen_set.update(inv(s) for s in list(gen_set))
    gen_set.discard(oracle.identity)
    gen_list = sorted(gen_set, key=oracle.describe)
    dist = {oracle.identity: 0}
    frontier = [oracle.identity]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gen_list:
                h = mul(g, s)
                if h not in dist:
                    dist[h] = dist[g] + 1
                    nxt.append(h)
        frontier = nxt
    if len(dist) != oracle.order():
        raise NotGeneratingError(oracle.order() - len(dist))
    return NormTable(oracle, dist, frozenset(gen_list))


def audit_domination(nu: NormTable, mu: NormTable):
    """Smallest C with mu <= C * nu over non-identity elements, plus a witness.

    Realises the bound mu <= C_mu * nu_S for conjugation-invariant norms.
    """
    if nu.oracle.elements != mu.oracle.elements:
        raise ValueError("norm tables live on different carriers")
    best = Fraction(0)
    witness = nu.oracle.identity
    for g in nu.oracle.elements:
        if g == nu.oracle.identity:
            continue
        ratio = Fraction(mu.values[g], nu.values[g])
        if ratio > best:
            best, witness = ratio, g
    return best, witness


# --- built-in carriers -------------------------------------------------------


def _perm_describe(t: tuple[int, ...]) -> str:
    return str(Permutation.from_images(t))


def _perm_invert(t: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * len(t)
    for i, q in enumerate(t):
        out[q] = i
    return tuple(out)


def symmetric_oracle(n: int) -> FiniteGroupOracle:
    """S_n on 0-based image tuples, multiplied left to right."""
    return FiniteGroupOracle(
        name=f"S_{n}",
        elements=tuple(sorted(permutations(range(n)))),
        multiply=_compose_images,
        invert=_perm_invert,
        identity=tuple(range(n)),
        describe=_perm_describe,
    )


def alternating_oracle(n: int) -> FiniteGroupOracle:
    els = tuple(t for t in sorted(permutations(range(n))) if Permutation.from_images(t).is_even())
    return FiniteGroupOracle(
        name=f"A_{n}",
        elements=els,
        multiply=_compose_images,
        invert=_perm_invert,
        identity=tuple(range(n)),
        describe=_perm_describe,
    )


def cyclic_oracle(n: int) -> FiniteGroupOracle:
    return FiniteGroupOracle(
        name=f"Z/{n}",
        elements=tuple(range(n)),
        multiply=lambda a, b: (a + b) % n,
        invert=lambda a: (-a) % n,
        identity=0,
        describe=str,
    )


def product_oracle(left: FiniteGroupOracle, right: FiniteGroupOracle) -> FiniteGroupOracle:
    return FiniteGroupOracle(
        name=f"{left.name}x{right.name}",
        elements=tuple((a, b) for a in left.elements for b in right.elements),
        multiply=lambda x, y: (left.multiply(x[0], y[0]), right.multiply(x[1], y[1])),
        invert=lambda x: (left.invert(x[0]), right.invert(x[1])),
        identity=(left.identity, right.identity),
        describe=lambda x: f"({left.describe(x[0])},{right.describe(x[1])})",
    )


def transposition_generators(n: int) -> list[tuple[int, ...]]:
    gens = []
    for i in range(n):
        for j in range(i + 1, n):
            images = list(range(n))
            images[i], images[j] = j, i
            gens.append(tuple(images))
    return gens


def three_cycle_generators(n: int) -> list[tuple[int, ...]]:
    from itertools import combinations

    gens = []
    for a, b, c in combinations(range(n), 3):
        for cyc in ((a, b, c), (a, c, b)):
            images = list(range(n))
            images[cyc[0]], images[cyc[1]], images[cyc[2]] = cyc[1], cyc[2], cyc[0]
            gens.append(tuple(images))
    return gens


_FAMILIES = {
    "symmetric": symmetric_oracle,
    "alternating": alternating_oracle,
    "cyclic": cyclic_oracle,
}


def load_carrier_file(path) -> FiniteGroupOracle:
    """Build a carrier from a JSON file holding a declarative description."""
    with open(path) as fh:
        return load_carrier(json.load(fh))


def load_carrier(spec: dict) -> FiniteGroupOracle:
    """Build a carrier from a declarative description.

    ``{"family": "symmetric", "degree": 5}`` or
    ``{"family": "product", "factors": [spec, spec]}``.
    """
    family = spec.get("family")
    if family == "product":
        factors = [load_carrier(s) for s in spec["factors"]]
        if len(factors) < 2:
            raise ValueError("product needs at least two factors")
        acc = factors[0]
        for f in factors[1:]:
            acc = product_oracle(acc, f)
        return acc
    if family not in _FAMILIES:
        raise ValueError(f"unknown carrier family: {family!r}")
    return _FAMILIES[family](int(spec["degree"]))
