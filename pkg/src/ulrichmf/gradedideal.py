"""Single-degree linear algebra for homogeneous ideals.

The degree-``D`` piece of an ideal ``(g1, .., gk)`` is spanned by the
products ``mu * gi`` with ``mu`` a monomial of degree ``D - deg gi``.  Its
dimension is the rank of the matrix whose rows are those products written in
the monomial basis of the degree-``D`` space.  No Groebner basis is needed
for statements about one graded piece.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .exactla import rank_of_rows
from .polyring import DegreeError, Poly, Ring


@dataclass(frozen=True)
class IdealSlice:
    """Generators together with the degree being inspected.

    ``with_t`` selects whether the ambient space includes monomials in ``t``;
    when it is false every generator must be ``t``-free and the ambient space
    is ``k[x0..xn]`` in degree ``degree``.
    """

    generators: tuple[Poly, ...]
    degree: int
    ring: Ring
    with_t: bool = False
    _degrees: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "generators", tuple(self.generators))
        if self.degree < 0:
            raise ValueError("degree must be non-negative")
        degs = []
        for g in self.generators:
            if g.ring != self.ring:
                raise ValueError("generator from a different ring")
            d = g.weighted_degree()
            if d is None:
                raise DegreeError(f"generator {g} is not weighted-homogeneous")
            if not self.with_t and not g.is_t_free():
                raise DegreeError(f"generator {g} involves t but with_t is false")
            # zero generators contribute nothing; give them an out-of-range degree
            degs.append(d if isinstance(d, int) else self.degree + 1)
        object.__setattr__(self, "_degrees", tuple(degs))

    def ambient_dim(self) -> int:
        return self.ring.space_dim(self.degree, self.with_t)

    def rows(self) -> tuple[list[list], int]:
        """Multiplication matrix (products as rows), duplicates removed."""
        ring = self.ring
        basis = ring.monomials(self.degree, self.with_t)
        index = {mon: i for i, mon in enumerate(basis)}
        zero = ring.field.zero
        seen: set[tuple] = set()
        rows = []
        for g, e in zip(self.generators, self._degrees):
            if e > self.degree or not g:
                continue
            for mu in ring.monomials(self.degree - e, self.with_t):
                entries = {}
                for mon, c in g.terms.items():
                    entries[index[tuple(a + b for a, b in zip(mu, mon))]] = c
                key = tuple(sorted(entries.items()))
                if key in seen:
                    continue
                seen.add(key)
                row = [zero] * len(basis)
                for j, c in entries.items():
                    row[j] = c
                rows.append(row)
        return rows, len(basis)


def ideal_degree_dim(s: IdealSlice) -> int:
    rows, ncols = s.rows()
    return rank_of_rows(rows, ncols, s.ring.field)


def quotient_hilbert(s: IdealSlice) -> int:
    return s.ambient_dim() - ideal_degree_dim(s)


def contains_all_degree(s: IdealSlice) -> bool:
    return quotient_hilbert(s) == 0


def make_slice(generators: Sequence[Poly], degree: int, ring: Ring | None = None, with_t: bool = False) -> IdealSlice:
    if ring is None:
        if not generators:
            raise ValueError("ring is required when there are no generators")
        ring = generators[0].ring
    return IdealSlice(tuple(generators), degree, ring, with_t)
