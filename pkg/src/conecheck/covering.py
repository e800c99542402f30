"""Conjugacy-class covering, commutator witnesses and conjugate-product
certificates on alternating groups.

The covering theorem used throughout: an even permutation with an orbit of
length two and n - 2r >= -1 (r = orbit count on {1..n}) has C_sigma^4 = A_n.
Everything here is certified by explicit recomposition, never by trust.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import permutations

from .perms import (
    IDENTITY,
    OddPermutationError,
    Permutation,
    _compose_images,
    commutator,
    supp_norm,
)

# Class materialization and covering BFS are exact; they refuse to sample,
# so ambient degrees stay small.  |A_8| = 20160.
MAX_COVERING_DEGREE = 8


class SupportExceedsDegreeError(ValueError):
    pass


class HypothesisUnmetError(ValueError):
    """A covering-theorem precondition fails; reported, never skipped silently."""


class SearchExhaustedError(RuntimeError):
    pass


class IdentityBaseError(ValueError):
    pass


class BlockSearchFailedError(RuntimeError):
    def __init__(self, message: str, diagnostics: dict | None = None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


# --- tuple helpers (0-based image tuples, left-to-right products) ------------


def _inv_images(t: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * len(t)
    for i, q in enumerate(t):
        out[q] = i
    return tuple(out)


def _tuple_even(t: tuple[int, ...]) -> bool:
    seen = [False] * len(t)
    transpositions = 0
    for i in range(len(t)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = t[j]
            length += 1
        transpositions += length - 1
    return transpositions % 2 == 0


def _tuple_cycle_type(t: tuple[int, ...]) -> tuple[int, ...]:
    seen = [False] * len(t)
    lengths = []
    for i in range(len(t)):
        if seen[i] or t[i] == i:
            seen[i] = True
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = t[j]
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths, reverse=True))


def _even_tuples(n: int) -> list[tuple[int, ...]]:
    return [t for t in permutations(range(n)) if _tuple_even(t)]


# --- conjugacy classes --------------------------------------------------------


@dataclass(frozen=True)
class ConjugacyClass:
    """A materialized conjugacy class inside S_n (= the A_n class whenever
    the representative has an orbit of length two)."""

    ambient_degree: int
    representative: Permutation
    members: frozenset

    def size(self) -> int:
        return len(self.members)

    def closed_under_conjugation(self, oracle_elements) -> bool:
        inv = _inv_images
        for t in oracle_elements:
            for m in self.members:
                if _compose_images(_compose_images(t, m), inv(t)) not in self.members:
                    return False
        return True


def conjugacy_class(sigma: Permutation, n: int) -> ConjugacyClass:
    """All S_n-conjugates of sigma, found by closure under adjacent swaps."""
    if sigma.support() and sigma.support()[-1] > n:
        raise SupportExceedsDegreeError(f"support of {sigma} exceeds degree {n}")
    start = sigma.to_images(n)
    swaps = []
    for i in range(n - 1):
        images = list(range(n))
        images[i], images[i + 1] = i + 1, i
        swaps.append(tuple(images))
    members = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for m in frontier:
            for s in swaps:
                c = _compose_images(_compose_images(s, m), s)
                if c not in members:
                    members.add(c)
                    nxt.append(c)
        frontier = nxt
    return ConjugacyClass(n, sigma, frozenset(members))


def orbit_count(sigma: Permutation, n: int) -> int:
    """Orbits of <sigma> on {1..n}; fixed points are singleton orbits."""
    if n < 1:
        raise ValueError("degree must be positive")
    if sigma.support() and sigma.support()[-1] > n:
        raise SupportExceedsDegreeError(f"support of {sigma} exceeds degree {n}")
    return len(sigma.cycles()) + n - supp_norm(sigma)


@dataclass(frozen=True)
class CoveringReport:
    sigma: Permutation
    degree: int
    orbit_count: int
    class_size: int
    covered: bool
    exponent: int | None

    def as_dict(self) -> dict:
        return {
            "sigma": str(self.sigma),
            "degree": self.degree,
            "orbit_count": self.orbit_count,
            "class_size": self.class_size,
            "covered": self.covered,
            "exponent": self.exponent,
        }


def brenner_hypotheses(sigma: Permutation, n: int) -> str | None:
    """None when the covering hypotheses hold, else the failing one."""
    if sigma.support() and sigma.support()[-1] > n:
        return f"support exceeds degree {n}"
    if not sigma.is_even():
        return "sigma is odd"
    if 2 not in sigma.cycle_type():
        return "sigma has no orbit of length two"
    r = orbit_count(sigma, n)
    if n - 2 * r < -1:
        return f"n - 2r = {n - 2 * r} < -1"
    return None


def brenner_check(sigma: Permutation, n: int) -> CoveringReport:
    """Exhaustive BFS for C_sigma^e inside A_n, e <= 4.

    Requires the covering hypotheses; raises HypothesisUnmetError otherwise,
    and refuses degrees above MAX_COVERING_DEGREE rather than sampling.
    """
    failure = brenner_hypotheses(sigma, n)
    if failure is not None:
        raise HypothesisUnmetError(failure)
    if n > MAX_COVERING_DEGREE:
        raise HypothesisUnmetError(
            f"degree {n} above exhaustive bound {MAX_COVERING_DEGREE}"
        )
    cls = conjugacy_class(sigma, n)
    alternating = frozenset(_even_tuples(n))
    members = sorted(cls.members)
    power = set(members)
    exponent = None
    for e in range(1, 5):
        if e > 1:
            power = {_compose_images(p, c) for p in power for c in members}
        if power == alternating:
            exponent = e
            break
    covered = exponent is not None  # C^e = A_n implies C^4 = A_n
    return CoveringReport(sigma, n, orbit_count(sigma, n), cls.size(), covered, exponent)


# --- conjugator plumbing -------------------------------------------------------


def canonical_of_type(cycle_type: tuple[int, ...]) -> Permutation:
    """The permutation of that cycle type laid out on consecutive points."""
    cycles = []
    next_point = 1
    for length in sorted(cycle_type, reverse=True):
        cycles.append(tuple(range(next_point, next_point + length)))
        next_point += length
    return Permutation.from_cycles(cycles)


def conjugator_to(a: Permutation, b: Permutation, ambient: int | None = None) -> Permutation:
    """Some tau with  tau a tau^{-1} = b  (left to right); any parity."""
    if a.cycle_type() != b.cycle_type():
        raise ValueError("conjugator requires equal cycle types")
    points = set(a.support()) | set(b.support())
    m = max(points | {ambient or 1})
    by_length_a: dict[int, list] = {}
    by_length_b: dict[int, list] = {}
    for cyc in a.cycles():
        by_length_a.setdefault(len(cyc), []).append(cyc)
    for cyc in b.cycles():
        by_length_b.setdefault(len(cyc), []).append(cyc)
    mapping = {}
    for length, cycs_a in by_length_a.items():
        for ca, cb in zip(cycs_a, by_length_b[length]):
            for pa, pb in zip(ca, cb):
                mapping[pb] = pa
    rest_a = sorted(set(range(1, m + 1)) - set(a.support()))
    rest_b = sorted(set(range(1, m + 1)) - set(b.support()))
    for pb, pa in zip(rest_b, rest_a):
        if pb != pa or pb in mapping:
            mapping[pb] = pa
    tau = Permutation({p: q for p, q in mapping.items() if p != q})
    assert a.conjugated_by(tau) == b
    return tau


def even_conjugator_to(a: Permutation, b: Permutation, ambient: int) -> Permutation | None:
    """An even tau with  tau a tau^{-1} = b, or None when none exists.

    If tau0 works, every solution is z * tau0 with z centralizing b; odd
    centralizer elements come from >= 2 free points, an even-length cycle,
    or two cycles of equal odd length.  That list is complete.
    """
    tau0 = conjugator_to(a, b, ambient)
    if tau0.is_even():
        return tau0
    free = sorted(set(range(1, ambient + 1)) - set(b.support()))
    if len(free) >= 2:
        z = Permutation.transposition(free[0], free[1])
        return z.then(tau0)
    lengths: dict[int, list] = {}
    for cyc in b.cycles():
        lengths.setdefault(len(cyc), []).append(cyc)
        if len(cyc) % 2 == 0:
            z = Permutation.from_cycles([cyc])
            tau = z.then(tau0)
            assert a.conjugated_by(tau) == b
            return tau
    for length, cycs in lengths.items():
        if length % 2 == 1 and len(cycs) >= 2:
            z = Permutation({p: q for p, q in zip(cycs[0] + cycs[1], cycs[1] + cycs[0])})
            tau = z.then(tau0)
            assert a.conjugated_by(tau) == b
            return tau
    return None


# --- Ore / Miller commutator witnesses ----------------------------------------

_witness_cache: dict[tuple[int, tuple[int, ...]], tuple[Permutation, Permutation]] = {}


def commutator_witness(g: Permutation, n: int) -> tuple[Permutation, Permutation]:
    """Even b, c with [b, c] = g, supported in {1..max(n, 5)}.

    One exhaustive search per cycle type; all other elements of the type get
    their witness by conjugation, then the result is verified by recomposition.
    """
    if not g.is_even():
        raise OddPermutationError(f"{g} is odd, not in any alternating group")
    if g.support() and g.support()[-1] > n:
        raise SupportExceedsDegreeError(f"support of {g} exceeds degree {n}")
    if g.is_identity():
        return IDENTITY, IDENTITY
    m = max(n, 5)
    key = (m, g.cycle_type())
    if key not in _witness_cache:
        _witness_cache[key] = _search_witness(canonical_of_type(g.cycle_type()), m)
    b0, c0 = _witness_cache[key]
    tau = conjugator_to(canonical_of_type(g.cycle_type()), g, m)
    b, c = b0.conjugated_by(tau), c0.conjugated_by(tau)
    assert commutator(b, c) == g
    return b, c


def _search_witness(rep: Permutation, m: int) -> tuple[Permutation, Permutation]:
    # [b, c] = rep  iff  b c b^{-1} = rep * c, and the left side is a
    # conjugate of c; so scan c and look for an even conjugator.
    rep_t = rep.to_images(m)
    for c_t in _even_tuples(m):
        u_t = _compose_images(rep_t, c_t)
        if _tuple_cycle_type(u_t) != _tuple_cycle_type(c_t):
            continue
        c = Permutation.from_images(c_t)
        u = Permutation.from_images(u_t)
        b = even_conjugator_to(c, u, m)
        if b is not None:
            assert commutator(b, c) == rep
            return b, c
    raise SearchExhaustedError(f"no commutator witness for {rep} in A_{m}")


# --- conjugate-product certificates (the 5.3 recipe) ----------------------------


@dataclass(frozen=True)
class ConjugateFactor:
    conjugator: Permutation
    sign: int  # +1 for the base, -1 for its inverse


@dataclass
class ConjugateProductCertificate:
    """target == product over factors of  w * base^sign * w^{-1}  (left to right)."""

    target: Permutation
    base: Permutation
    factors: list[ConjugateFactor]
    requested_base: Permutation
    modifications: tuple[Permutation, ...] = ()
    diagnostics: dict = field(default_factory=dict)

    def recomposed(self) -> Permutation:
        acc = IDENTITY
        for f in self.factors:
            core = self.base if f.sign > 0 else self.base.inverse()
            acc = acc.then(core.conjugated_by(f.conjugator))
        return acc

    def verify(self) -> bool:
        return self.recomposed() == self.target

    def factor_count(self) -> int:
        return len(self.factors)

    def to_json_dict(self) -> dict:
        return {
            "kind": "conjugate-product",
            "target": str(self.target),
            "base": str(self.base),
            "requested_base": str(self.requested_base),
            "modifications": [str(t) for t in self.modifications],
            "factors": [{"conjugator": str(f.conjugator), "sign": f.sign} for f in self.factors],
            "diagnostics": self.diagnostics,
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "ConjugateProductCertificate":
        return cls(
            target=Permutation.parse(data["target"]),
            base=Permutation.parse(data["base"]),
            factors=[
                ConjugateFactor(Permutation.parse(f["conjugator"]), int(f["sign"]))
                for f in data["factors"]
            ],
            requested_base=Permutation.parse(data.get("requested_base", data["base"])),
            modifications=tuple(Permutation.parse(t) for t in data.get("modifications", [])),
            diagnostics=data.get("diagnostics", {}),
        )

    def save(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_json_dict(), fh, indent=2, sort_keys=True)


# product-pair index per (window degree, cycle type): u -> (c1, c2) with u = c1*c2
_pair_index_cache: dict[tuple[int, tuple[int, ...]], dict] = {}


def _window_class(base_type: tuple[int, ...], degree: int) -> list[tuple[int, ...]]:
    rep = canonical_of_type(base_type)
    return sorted(conjugacy_class(rep, degree).members)


def _pair_index(base_type: tuple[int, ...], degree: int) -> dict:
    key = (degree, base_type)
    if key not in _pair_index_cache:
        members = _window_class(base_type, degree)
        index: dict = {}
        for c1 in members:
            for c2 in members:
                u = _compose_images(c1, c2)
                if u not in index:
                    index[u] = (c1, c2)
        _pair_index_cache[key] = index
    return _pair_index_cache[key]


def _decompose_in_window(target: tuple[int, ...], base_type: tuple[int, ...], degree: int):
    """target as a product of at most four class members, shortest first."""
    members = _window_class(base_type, degree)
    member_set = set(members)
    if target in member_set:
        return [target]
    for c1 in members:
        c2 = _compose_images(_inv_images(c1), target)
        if c2 in member_set:
            return [c1, c2]
    index = _pair_index(base_type, degree)
    for c1 in members:
        u = _compose_images(_inv_images(c1), target)
        if u in index:
            return [c1, *index[u]]
    for u, (c1, c2) in index.items():
        v = _compose_images(_inv_images(u), target)
        if v in index:
            return [c1, c2, *index[v]]
    raise BlockSearchFailedError(
        f"window A_{degree} block not covered by four conjugates",
        {"target": str(Permutation.from_images(target)), "type": base_type},
    )


def _even_prefix_split(rest: Permutation, window: int):
    from .cutting import split

    for k in (window, window - 1, window - 2):
        pair = split(rest, k)
        if pair.left.is_even():
            return pair
    raise BlockSearchFailedError(
        "no even prefix at three consecutive split positions",
        {"rest": str(rest), "window": window},
    )


def express_as_conjugates(h: Permutation, g: Permutation) -> ConjugateProductCertificate:
    """Write h as a short product of conjugates of g.

    The base is first modified by fresh transpositions (at most two) until it
    is even with an orbit of length two.  h is then split into even blocks of
    support at most supp(base)+1, each block is transported into a window of
    that size and decomposed into at most four conjugates by the covering
    BFS.  Factor count is at most 8 supp(h) / supp(base) + 4, and the
    certificate is verified by recomposition before it is returned.
    """
    if g.is_identity():
        raise IdentityBaseError("cannot express anything with an identity base")
    base = g
    mods: list[Permutation] = []
    top = max([p for s in (g.support(), h.support()) for p in s] or [0])
    fresh = top + 1
    while not base.is_even() or 2 not in base.cycle_type():
        t = Permutation.transposition(fresh, fresh + 1)
        fresh += 2
        base = base.then(t)
        mods.append(t)
        if len(mods) > 2:
            raise AssertionError("modification should settle within two transpositions")

    def certificate(factors, blocks):
        cert = ConjugateProductCertificate(
            target=h,
            base=base,
            factors=factors,
            requested_base=g,
            modifications=tuple(mods),
            diagnostics={
                "window": supp_norm(base) + 1,
                "base_support": supp_norm(base),
                "blocks": blocks,
                "stage_constant": supp_norm(base),
                "modified": bool(mods),
            },
        )
        if not cert.verify():
            raise BlockSearchFailedError("certificate failed recomposition", cert.to_json_dict())
        return cert

    if h.is_identity():
        return certificate([], 0)
    if not h.is_even():
        raise OddPermutationError(
            f"{h} is odd; products of conjugates of an even base are even"
        )
    if h == base:
        return certificate([ConjugateFactor(IDENTITY, +1)], 1)

    K = supp_norm(base)
    window = K + 1
    blocks: list[Permutation] = []
    rest = h
    while supp_norm(rest) > window:
        pair = _even_prefix_split(rest, window)
        blocks.append(pair.left)
        rest = pair.right
    if not rest.is_identity():
        blocks.append(rest)

    base_type = base.cycle_type()
    sigma_w = canonical_of_type(base_type)
    to_window = conjugator_to(base, sigma_w)
    factors: list[ConjugateFactor] = []
    for block in blocks:
        block_canon = canonical_of_type(block.cycle_type())
        tau_b = conjugator_to(block, block_canon)
        for c_t in _decompose_in_window(block_canon.to_images(window), base_type, window):
            c = Permutation.from_images(c_t)
            w = conjugator_to(sigma_w, c, window)
            v = tau_b.inverse().then(w.then(to_window))
            factors.append(ConjugateFactor(v, +1))
    return certificate(factors, len(blocks))
