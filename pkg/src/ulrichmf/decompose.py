"""Branch equations of the form ``b = pa*qa + pb*qb + pm^2`` on P^3.

A double cover ``t^2 = b`` of P^3 carries the rank 2 aCM bundle of type
``(alpha, beta)`` when ``b`` decomposes as above with ``deg pa = alpha``,
``deg pb = beta`` and ``deg pm = m``.  The forward map

    (pa, qa, pb, qb, pm) -> pa*qa + pb*qb + pm^2

is dominant as soon as its differential is surjective at one point, and the
image of the differential is the degree ``2m`` piece of the ideal
``(qa, pa, qb, pb, pm)`` (2 is a unit).  This module builds that linear map,
certifies surjectivity two independent ways, samples certified
decompositions, and checks the explicit witness ideals.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import comb
from typing import Any

from .exactla import ExactMatrix, rank_of_rows
from .field import FieldSpec
from .gradedideal import contains_all_degree, make_slice, quotient_hilbert
from .polyring import DegreeError, Poly, Ring, random_homogeneous, sum_of_monomials

SLOT_NAMES = ("p_alpha", "q_alpha", "p_beta", "q_beta", "p_m")


class SamplingError(RuntimeError):
    """``last_rank`` is ``None`` when no draw was made; ``rank_bound`` caps every rank."""

    def __init__(self, message: str, last_rank: int | None, rank_bound: int, target_dim: int, attempts: int):
        super().__init__(message)
        self.last_rank = last_rank
        self.rank_bound = rank_bound
        self.target_dim = target_dim
        self.attempts = attempts


@dataclass(frozen=True)
class SurjectivityCertificate:
    rank: int
    source_dim: int
    target_dim: int
    seed: int | None = None
    attempts: int = 1

    @property
    def surjective(self) -> bool:
        return self.rank == self.target_dim


@dataclass(frozen=True)
class Decomposition:
    alpha: int
    beta: int
    m: int
    p_alpha: Poly
    q_alpha: Poly
    p_beta: Poly
    q_beta: Poly
    p_m: Poly
    certificate: SurjectivityCertificate | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if not (1 <= self.alpha <= self.m and 1 <= self.beta <= self.m):
            raise ValueError(f"need 1 <= alpha, beta <= m, got ({self.alpha}, {self.beta}, {self.m})")
        ring = self.ring
        if ring.m != self.m:
            raise ValueError("ring weight of t must equal m")
        for name, poly, deg in zip(SLOT_NAMES, self.forms, self.degrees):
            if poly.ring != ring:
                raise ValueError(f"{name} lives in a different ring")
            if not poly.is_t_free():
                raise DegreeError(f"{name} must not involve t")
            if not poly.is_homogeneous(deg):
                raise DegreeError(f"{name} must be homogeneous of degree {deg}")

    @property
    def ring(self) -> Ring:
        return self.p_alpha.ring

    @property
    def field(self) -> FieldSpec:
        return self.ring.field

    @property
    def forms(self) -> tuple[Poly, Poly, Poly, Poly, Poly]:
        return (self.p_alpha, self.q_alpha, self.p_beta, self.q_beta, self.p_m)

    @property
    def degrees(self) -> tuple[int, int, int, int, int]:
        a, b, m = self.alpha, self.beta, self.m
        return (a, 2 * m - a, b, 2 * m - b, m)

    @property
    def b(self) -> Poly:
        return self.p_alpha * self.q_alpha + self.p_beta * self.q_beta + self.p_m * self.p_m

    def to_dict(self) -> dict[str, Any]:
        doc: dict[str, Any] = {
            "alpha": self.alpha,
            "beta": self.beta,
            "m": self.m,
            "n": self.ring.n,
            "field": self.field.label,
        }
        for name, poly in zip(SLOT_NAMES, self.forms):
            doc[name] = poly.to_str()
        doc["b"] = self.b.to_str()
        return doc

    @classmethod
    def from_dict(cls, doc: dict[str, Any]) -> Decomposition:
        ring = Ring(int(doc.get("n", 3)), int(doc["m"]), FieldSpec.parse(str(doc["field"])))
        forms = [ring.parse(doc[name]) for name in SLOT_NAMES]
        dec = cls(int(doc["alpha"]), int(doc["beta"]), int(doc["m"]), *forms)
        if "b" in doc and not verify_decomposition(ring.parse(doc["b"]), dec):
            raise ValueError("stored b does not match the recomposed sum")
        return dec


@dataclass(frozen=True)
class DifferentialMap:
    """The differential as a matrix: one row per source basis vector."""

    matrix: ExactMatrix
    source_dims: tuple[int, ...]
    target_dim: int

    @property
    def source_dim(self) -> int:
        return sum(self.source_dims)


def _check_char(field: FieldSpec) -> None:
    if field.is_prime_field and field.characteristic == 2:
        raise ValueError("the differential needs 2 to be a unit")


def build_differential(dec: Decomposition) -> DifferentialMap:
    _check_char(dec.field)
    ring = dec.ring
    m = dec.m
    target = ring.monomials(2 * m, with_t=False)
    index = {mon: i for i, mon in enumerate(target)}
    f = ring.field
    # source slot -> the form it multiplies
    multipliers = (dec.q_alpha, dec.p_alpha, dec.q_beta, dec.p_beta, dec.p_m * 2)
    rows = []
    dims = []
    for deg, mult in zip(dec.degrees, multipliers):
        basis = ring.monomials(deg, with_t=False)
        dims.append(len(basis))
        for mu in basis:
            row = [f.zero] * len(target)
            for mon, c in mult.terms.items():
                row[index[tuple(a + b for a, b in zip(mu, mon))]] = c
            rows.append(row)
    mat = ExactMatrix(len(rows), len(target), tuple(x for r in rows for x in r), f)
    return DifferentialMap(mat, tuple(dims), len(target))


def differential_rank(dec: Decomposition) -> int:
    dm = build_differential(dec)
    return rank_of_rows(dm.matrix.to_rows(), dm.matrix.cols, dm.matrix.field)


def ideal_route_surjective(dec: Decomposition) -> bool:
    """Surjectivity via the degree-2m piece of the ideal of the five forms."""
    gens = [g for g in dec.forms if g]
    return contains_all_degree(make_slice(gens, 2 * dec.m, dec.ring))


def differential_surjective(dec: Decomposition, cross_check: bool = True) -> bool:
    """Full rank of the differential; optionally confirmed by the ideal route."""
    rank = differential_rank(dec)
    target = comb(2 * dec.m + dec.ring.n, dec.ring.n)
    by_rank = rank == target
    if cross_check:
        by_ideal = ideal_route_surjective(dec)
        if by_ideal != by_rank:
            raise AssertionError(
                f"rank route ({rank}/{target}) and ideal route ({by_ideal}) disagree"
            )
    return by_rank


def sample_decomposition(
    alpha: int,
    beta: int,
    m: int,
    field: FieldSpec,
    seed: int,
    max_retries: int = 10,
    *,
    n: int = 3,
    bound: int = 100,
) -> Decomposition:
    """Random ``(pa, qa, pb, qb, pm)`` whose differential is surjective.

    Raises :class:`SamplingError` after ``max_retries`` failed draws, reporting
    the last rank reached.
    """
    _check_char(field)
    if not (1 <= alpha <= m and 1 <= beta <= m):
        raise ValueError(f"need 1 <= alpha, beta <= m, got ({alpha}, {beta}, {m})")
    ring = Ring(n, m, field)
    rng = random.Random(seed)
    target = comb(2 * m + n, n)
    source = sum(comb(d + n, n) for d in (alpha, 2 * m - alpha, beta, 2 * m - beta, m))
    if source < target:
        raise SamplingError(
            f"no surjective differential exists for (alpha, beta, m) = ({alpha}, {beta}, {m}): "
            f"rank <= source dimension {source} < {target} = target dimension",
            None,
            source,
            target,
            0,
        )
    last_rank = -1
    for attempt in range(1, max_retries + 1):
        degs = (alpha, 2 * m - alpha, beta, 2 * m - beta, m)
        forms = [random_homogeneous(d, ring, rng, with_t=False, bound=bound) for d in degs]
        dec = Decomposition(alpha, beta, m, *forms)
        last_rank = differential_rank(dec)
        if last_rank == target:
            cert = SurjectivityCertificate(last_rank, source, target, seed, attempt)
            return Decomposition(alpha, beta, m, *forms, certificate=cert)
    msg = (
        f"no surjective differential for (alpha, beta, m) = ({alpha}, {beta}, {m}) "
        f"after {max_retries} draws; last rank {last_rank} < {target}"
    )
    raise SamplingError(msg, last_rank, min(source, target), target, max_retries)


WITNESS_FORMS = ("linear-power", "all-ones")


def witness_tuple(alpha: int, beta: int, m: int, char_mode: int = 0, last: str | None = None) -> Decomposition:
    """Fixed witness point with coordinates ``x, y, z, w = x0, x1, x2, x3``.

    The slots are ``(x^alpha, z^(2m-alpha), y^beta, w^(2m-beta), L)``.  With
    ``last="linear-power"`` (the default in characteristic 0) ``L`` is
    ``(x+y+z+w)^m``; with ``last="all-ones"`` (the default when ``char_mode``
    is a prime) ``L`` is the sum of all degree-``m`` monomials, every
    coefficient 1.
    """
    if not 1 <= alpha <= beta <= m:
        raise ValueError(f"need 1 <= alpha <= beta <= m, got ({alpha}, {beta}, {m})")
    if last is None:
        last = "linear-power" if char_mode == 0 else "all-ones"
    if last not in WITNESS_FORMS:
        raise ValueError(f"unknown witness form {last!r}; expected one of {WITNESS_FORMS}")
    field = FieldSpec.rationals() if char_mode == 0 else FieldSpec.prime(char_mode)
    ring = Ring(3, m, field)
    x, y, z, w = ring.gens()
    if last == "linear-power":
        form = (x + y + z + w) ** m
    else:
        form = sum_of_monomials(m, ring)
    return Decomposition(alpha, beta, m, x**alpha, z ** (2 * m - alpha), y**beta, w ** (2 * m - beta), form)


@dataclass(frozen=True)
class AppendixCase:
    alpha: int
    beta: int
    quotient_dim: int

    @property
    def passed(self) -> bool:
        return self.quotient_dim == 0


@dataclass(frozen=True)
class AppendixReport:
    m: int
    char_mode: int
    cases: tuple[AppendixCase, ...]
    last: str = "linear-power"

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cases)


def verify_appendix(m: int, char_mode: int = 0, last: str | None = None) -> AppendixReport:
    """Degree-2m quotient dimension of every witness ideal with ``alpha <= beta <= m``.

    ``last`` selects the fifth generator as in :func:`witness_tuple`.
    """
    if m not in (2, 3, 4):
        raise ValueError(f"witness ideals are only checked for m in (2, 3, 4), got {m}")
    cases = []
    for alpha in range(1, m + 1):
        for beta in range(alpha, m + 1):
            wit = witness_tuple(alpha, beta, m, char_mode, last)
            gens = [g for g in wit.forms if g]
            q = quotient_hilbert(make_slice(gens, 2 * m, wit.ring))
            cases.append(AppendixCase(alpha, beta, q))
    if last is None:
        last = "linear-power" if char_mode == 0 else "all-ones"
    return AppendixReport(m, char_mode, tuple(cases), last)


def verify_decomposition(b: Poly, dec: Decomposition) -> bool:
    return b.ring == dec.ring and b == dec.b


def dimension_obstruction(m: int, n: int = 3) -> tuple[int, int]:
    """Source and target dimension of the differential in the Ulrich case ``alpha = beta = m``."""
    return 5 * comb(m + n, n), comb(2 * m + n, n)
