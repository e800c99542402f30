"""Free products and direct sums with l1/support norms, reduced normal forms,
and the first-letter / least-index contraction projections.

The single-projection conditions verified here:
  (i)   d(p(g), p(h)) <= d(g, h)
  (ii)  d(p(g), g) <= L
  (iii) ||p(g)|| <= ||g|| - 1 whenever ||g|| >= 1
  (iv)  p(g) = 1 whenever ||g|| <= 1
On finite carriers the check is exhaustive; a failing condition is reported
with a witness rather than asserted.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional


@dataclass(frozen=True)
class Factor:
    """A group factor with an integer norm and an optional projection.

    ``elements`` is None for infinite carriers (a window is enumerated
    instead); declared_displacement is the L of condition (ii) for the
    bundled projection.
    """

    name: str
    multiply: Callable
    invert: Callable
    identity: object
    norm: Callable[[object], int]
    elements: Optional[tuple] = None
    projection: Optional[Callable] = None
    declared_displacement: int = 1

    def non_identity_elements(self):
        if self.elements is None:
            raise ValueError(f"{self.name} has no finite carrier")
        return tuple(e for e in self.elements if e != self.identity)


def cyclic_factor(n: int, norm: str = "word", projection: str = "collapse") -> Factor:
    """Z/n with the {+-1} word norm or the discrete norm."""
    if norm == "word":
        norm_fn = lambda k: min(k % n, (-k) % n)
    elif norm == "discrete":
        norm_fn = lambda k: 0 if k % n == 0 else 1
    else:
        raise ValueError(f"unknown norm {norm!r}")
    if projection == "collapse":
        proj, disp = (lambda k: 0), (n // 2 if norm == "word" else 1)
    elif projection == "identity":
        proj, disp = (lambda k: k), 0
    else:
        raise ValueError(f"unknown projection {projection!r}")
    return Factor(
        name=f"Z/{n}({norm})",
        multiply=lambda a, b: (a + b) % n,
        invert=lambda a: (-a) % n,
        identity=0,
        norm=norm_fn,
        elements=tuple(range(n)),
        projection=proj,
        declared_displacement=disp,
    )


def integer_factor(window: int | None = None) -> Factor:
    """Z with the absolute value and the shrink-toward-zero projection."""
    return Factor(
        name="Z",
        multiply=lambda a, b: a + b,
        invert=lambda a: -a,
        identity=0,
        norm=abs,
        elements=tuple(range(-window, window + 1)) if window is not None else None,
        projection=lambda k: k - 1 if k >= 1 else (k + 1 if k <= -1 else 0),
        declared_displacement=1,
    )


def oracle_factor(oracle, projection: str = "collapse") -> Factor:
    """Any finite group oracle with the discrete norm."""
    proj = (lambda g: oracle.identity) if projection == "collapse" else (lambda g: g)
    return Factor(
        name=oracle.name,
        multiply=oracle.multiply,
        invert=oracle.invert,
        identity=oracle.identity,
        norm=lambda g: 0 if g == oracle.identity else 1,
        elements=oracle.elements,
        projection=proj,
        declared_displacement=1 if projection == "collapse" else 0,
    )


# --- free products ---------------------------------------------------------------


@dataclass(frozen=True)
class ReducedWord:
    """Letters (factor index, non-identity element); adjacent factors differ."""

    letters: tuple

    def __len__(self) -> int:
        return len(self.letters)

    def is_identity(self) -> bool:
        return not self.letters

    def __str__(self) -> str:
        if not self.letters:
            return "()"
        return "".join(f"({i}:{el})" for i, el in self.letters)


class FreeProduct:
    """A free product of factors indexed by a totally ordered index set."""

    def __init__(self, factors: dict[int, Factor]):
        self.factors = dict(sorted(factors.items()))

    def reduce(self, raw_letters) -> ReducedWord:
        """Canonical reduced form: drop identities, merge same-factor runs.

        Letters are first normalized through the factor, so raw residues
        outside 0..n-1 are welcome.
        """
        stack: list = []
        for idx, el in raw_letters:
            factor = self.factors[idx]
            el = factor.multiply(factor.identity, el)
            if el == factor.identity:
                continue
            if stack and stack[-1][0] == idx:
                merged = factor.multiply(stack[-1][1], el)
                stack.pop()
                if merged != factor.identity:
                    stack.append((idx, merged))
            else:
                stack.append((idx, el))
        return ReducedWord(tuple(stack))

    def include(self, idx: int, el) -> ReducedWord:
        return self.reduce([(idx, el)])

    def multiply(self, a: ReducedWord, b: ReducedWord) -> ReducedWord:
        return self.reduce(a.letters + b.letters)

    def invert(self, a: ReducedWord) -> ReducedWord:
        return self.reduce(
            [(i, self.factors[i].invert(el)) for i, el in reversed(a.letters)]
        )

    def l1_norm(self, a: ReducedWord) -> int:
        return sum(self.factors[i].norm(el) for i, el in a.letters)

    def supp_norm(self, a: ReducedWord) -> int:
        return len(a.letters)

    def distance(self, a: ReducedWord, b: ReducedWord) -> int:
        return self.l1_norm(self.multiply(a, self.invert(b)))

    def prefix_project(self, a: ReducedWord) -> ReducedWord:
        """Apply the first letter's factor projection and re-reduce."""
        if a.is_identity():
            return a
        idx, el = a.letters[0]
        projection = self.factors[idx].projection
        if projection is None:
            raise ValueError(f"factor {idx} has no projection")
        return self.reduce(((idx, projection(el)),) + a.letters[1:])

    def enumerate_words(self, l1_budget: int) -> list[ReducedWord]:
        """All reduced words of l1 norm at most the budget (exhaustive)."""
        out = [ReducedWord(())]

        def extend(letters, last_idx, budget):
            for idx, factor in self.factors.items():
                if idx == last_idx:
                    continue
                for el in factor.non_identity_elements():
                    cost = factor.norm(el)
                    if cost <= budget:
                        word = letters + ((idx, el),)
                        out.append(ReducedWord(word))
                        extend(word, idx, budget - cost)

        extend((), None, l1_budget)
        return out

    def parse(self, text: str) -> ReducedWord:
        """Inverse of str(): "(1:2)(2:1)" ..."""
        text = text.strip()
        if text in ("", "()"):
            return ReducedWord(())
        letters = []
        for chunk in text.strip("()").split(")("):
            idx, el = chunk.split(":")
            letters.append((int(idx), int(el)))
        return self.reduce(letters)


# --- direct sums -------------------------------------------------------------


@dataclass(frozen=True)
class SparseSumElement:
    """Finitely many non-identity terms, keyed by a totally ordered index."""

    terms: tuple  # ((index, element), ...) sorted by index

    def is_identity(self) -> bool:
        return not self.terms

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{el}@{i}" for i, el in self.terms)


class DirectSum:
    def __init__(self, factors: dict[int, Factor]):
        self.factors = dict(sorted(factors.items()))

    def element(self, assignments: dict) -> SparseSumElement:
        terms = []
        for idx in sorted(assignments):
            factor = self.factors[idx]
            el = factor.multiply(factor.identity, assignments[idx])
            if el != factor.identity:
                terms.append((idx, el))
        return SparseSumElement(tuple(terms))

    def multiply(self, a: SparseSumElement, b: SparseSumElement) -> SparseSumElement:
        values = dict(a.terms)
        for idx, el in b.terms:
            factor = self.factors[idx]
            merged = factor.multiply(values.get(idx, factor.identity), el)
            if merged == factor.identity:
                values.pop(idx, None)
            else:
                values[idx] = merged
        return SparseSumElement(tuple(sorted(values.items())))

    def invert(self, a: SparseSumElement) -> SparseSumElement:
        return SparseSumElement(
            tuple((i, self.factors[i].invert(el)) for i, el in a.terms)
        )

    def l1_norm(self, a: SparseSumElement) -> int:
        return sum(self.factors[i].norm(el) for i, el in a.terms)

    def supp_norm(self, a: SparseSumElement) -> int:
        return len(a.terms)

    def distance(self, a: SparseSumElement, b: SparseSumElement, norm=None) -> int:
        return (norm or self.l1_norm)(self.multiply(a, self.invert(b)))

    def sum_project(self, a: SparseSumElement) -> SparseSumElement:
        """Project the least-index term; drop it when it dies."""
        if a.is_identity():
            return a
        idx, el = a.terms[0]
        projection = self.factors[idx].projection
        if projection is None:
            raise ValueError(f"factor {idx} has no projection")
        projected = projection(el)
        rest = a.terms[1:]
        if projected == self.factors[idx].identity:
            return SparseSumElement(rest)
        return SparseSumElement(((idx, projected),) + rest)

    def enumerate_elements(self, indices, max_terms: int) -> list[SparseSumElement]:
        """All elements supported on the given indices with <= max_terms terms."""
        indices = sorted(indices)
        out = [SparseSumElement(())]

        def extend(pos, terms):
            if len(terms) == max_terms:
                return
            for k in range(pos, len(indices)):
                idx = indices[k]
                for el in self.factors[idx].non_identity_elements():
                    chosen = terms + ((idx, el),)
                    out.append(SparseSumElement(chosen))
                    extend(k + 1, chosen)

        extend(0, ())
        return out


# --- the single-projection audit ------------------------------------------------


def verify_contraction_conditions(projection, elements, norm, distance,
                                  is_identity, displacement_bound: int = 1) -> dict:
    """Check conditions (i)-(iv) over the sample; exhaustive when it is.

    Returns one entry per condition with violation count and a witness; the
    caller decides whether a failure is an error (a registered projection)
    or the expected outcome (a negative control).
    """
    report = {
        name: {"condition": desc, "violations": 0, "witness": None, "checked": 0}
        for name, desc in [
            ("non-expansive", "d(p(g), p(h)) <= d(g, h)"),
            ("displacement", f"d(p(g), g) <= {displacement_bound}"),
            ("norm-decrease", "||p(g)|| <= ||g|| - 1 for ||g|| >= 1"),
            ("identity-collapse", "p(g) = 1 for ||g|| <= 1"),
        ]
    }

    def flag(name, witness):
        entry = report[name]
        entry["violations"] += 1
        if entry["witness"] is None:
            entry["witness"] = witness

    elements = list(elements)
    images = [projection(g) for g in elements]
    for g, pg in zip(elements, images):
        if distance(pg, g) > displacement_bound:
            flag("displacement", str(g))
        n = norm(g)
        if n >= 1 and norm(pg) > n - 1:
            flag("norm-decrease", str(g))
        if n <= 1 and not is_identity(pg):
            flag("identity-collapse", str(g))
    for i in range(len(elements)):
        g, pg = elements[i], images[i]
        for j in range(i + 1, len(elements)):
            if distance(pg, images[j]) > distance(g, elements[j]):
                flag("non-expansive", f"{g} | {elements[j]}")
    singles = len(elements)
    pairs = singles * (singles - 1) // 2
    for name in ("displacement", "norm-decrease", "identity-collapse"):
        report[name]["checked"] = singles
    report["non-expansive"]["checked"] = pairs
    report["all_hold"] = all(
        report[name]["violations"] == 0
        for name in ("non-expansive", "displacement", "norm-decrease", "identity-collapse")
    )
    return report
