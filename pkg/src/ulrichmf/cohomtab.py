"""Closed-form cohomology of rank 2 aCM bundles on double covers of P^n.

The bundle ``E`` of type ``(alpha, beta)`` on a double cover ``X -> P^n``
branched in degree ``2m`` is the extension of ``I_Y(gamma)`` by ``O_X`` where
``gamma = alpha + beta - m`` and ``Y`` maps isomorphically onto a complete
intersection ``Z`` of type ``(alpha, beta)``.  Everything here is integer
arithmetic with binomial coefficients: line bundle cohomology on ``P^n``,
complete-intersection cohomology, the pushforward splitting, Serre duality
on ``X`` (``omega_X = O_X(m - n - 1)``), normal bundle and Ext dimensions.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from math import comb
from typing import Any, Iterable


def h0_line(n: int, k: int) -> int:
    """``h^0(P^n, O(k))``."""
    return comb(n + k, n) if k >= 0 else 0


def hn_line(n: int, k: int) -> int:
    """``h^n(P^n, O(k)) = h^0(O(-n-1-k))`` by Serre duality."""
    return h0_line(n, -n - 1 - k)


def _check_type(alpha: int, beta: int, m: int) -> None:
    if not (1 <= alpha <= m and 1 <= beta <= m):
        raise ValueError(f"need 1 <= alpha, beta <= m, got (alpha, beta, m) = ({alpha}, {beta}, {m})")


# complete intersections

@dataclass(frozen=True)
class CICohomology:
    """Cohomology of ``I_Z(i)`` for ``Z`` a complete intersection of type ``(alpha, beta)``.

    ``h^1 .. h^(n-2)`` vanish; only the difference ``h^(n-1) - h^n`` is
    determined numerically.  ``h0_OZ`` is ``None`` for negative twists.
    """

    n: int
    alpha: int
    beta: int
    i: int
    h0: int
    middle: tuple[int, ...]
    top_difference: int
    h0_OZ: int | None


def ci_h0(n: int, alpha: int, beta: int, i: int) -> int:
    return h0_line(n, i - alpha) + h0_line(n, i - beta) - h0_line(n, i - alpha - beta)


def ci_top_difference(n: int, alpha: int, beta: int, i: int) -> int:
    """``h^(n-1)(I_Z(i)) - h^n(I_Z(i))`` from the Koszul resolution."""
    return hn_line(n, i - alpha - beta) - hn_line(n, i - alpha) - hn_line(n, i - beta)


def ci_cohomology(n: int, alpha: int, beta: int, i: int) -> CICohomology:
    if n < 2:
        raise ValueError("need n >= 2")
    if alpha < 1 or beta < 1:
        raise ValueError("complete intersection degrees must be positive")
    h0 = ci_h0(n, alpha, beta, i)
    h0_oz = comb(i + n, n) - h0 if i >= 0 else None
    return CICohomology(n, alpha, beta, i, h0, (0,) * (n - 2), ci_top_difference(n, alpha, beta, i), h0_oz)


def h0_OZ(n: int, alpha: int, beta: int, i: int) -> int:
    if i < 0:
        raise ValueError("h0(O_Z(i)) is tabulated for i >= 0 only")
    return comb(i + n, n) - ci_h0(n, alpha, beta, i)


# the bundle E

def splitting(alpha: int, beta: int, m: int) -> tuple[int, int, int, int]:
    """Twists of ``f_* E``, sorted in decreasing order."""
    return tuple(sorted((0, alpha - m, beta - m, alpha + beta - 2 * m), reverse=True))  # type: ignore[return-value]


def h0_E(n: int, m: int, alpha: int, beta: int, i: int) -> int:
    """``h^0(E(i))`` as the sum over the summands of the pushforward."""
    return sum(h0_line(n, i + a) for a in splitting(alpha, beta, m))


def hn_E_serre(n: int, m: int, alpha: int, beta: int, i: int) -> int:
    """``h^n(E(i)) = h^0(E(m - n - 1 - i - gamma))``, using ``E^dual = E(-gamma)``."""
    gamma = alpha + beta - m
    return h0_E(n, m, alpha, beta, m - n - 1 - i - gamma)


def hn_E_expanded(n: int, m: int, alpha: int, beta: int, i: int) -> int:
    """``h^n(E(i))`` summed over the extension, the pushforward of ``I_Y`` and ``Z``."""
    gamma = alpha + beta - m
    return (
        hn_line(n, gamma + i - m)
        + hn_line(n, gamma + i)
        + hn_line(n, i)
        + ci_h0(n, alpha, beta, m - n - 1 - i)
    )


def hn1_E(n: int, m: int, alpha: int, beta: int, i: int) -> int:
    """``h^(n-1)(E(i))`` from the long exact sequences; zero for an aCM bundle."""
    gamma = alpha + beta - m
    return (
        ci_top_difference(n, alpha, beta, gamma + i)
        - hn_line(n, i)
        - hn_line(n, i - m)
        + hn_E_serre(n, m, alpha, beta, i)
        - hn_line(n, i + gamma - m)
    )


def h0_E_table(alpha: int, beta: int, m: int) -> int:
    """``h^0(E)`` by case: 1 if both degrees are below ``m``, 2 if exactly one equals it, 4 if both do."""
    _check_type(alpha, beta, m)
    a, b = sorted((alpha, beta))
    if b < m:
        return 1
    if a < b:
        return 2
    return 4


@dataclass(frozen=True)
class StabilityClass:
    label: str
    slope_stable: bool
    slope_semistable: bool
    gieseker_semistable: bool | None
    simple: bool | None
    flags: tuple[str, ...] = ()


def stability_class(alpha: int, beta: int, m: int) -> StabilityClass:
    """Stability of ``E`` read off from the sign of ``alpha + beta - m`` (Picard rank one)."""
    _check_type(alpha, beta, m)
    s = alpha + beta - m
    if s > 0:
        return StabilityClass("stable", True, True, True, True)
    if s == 0:
        return StabilityClass(
            "semistable_only_boundary", False, True, False, False, ("not_gieseker_semistable", "not_simple")
        )
    return StabilityClass("not_simple", False, False, False, False, ("not_simple",))


@dataclass
class CohomologyTable:
    n: int
    m: int
    alpha: int
    beta: int
    gamma: int
    splitting: tuple[int, ...]
    h0_row: dict[int, int]
    hn_row: dict[int, int]
    hn1_row: dict[int, int]
    ulrich: bool
    min_hn_vanish: int
    h0: int
    stability: StabilityClass

    def to_dict(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "m": self.m,
            "alpha": self.alpha,
            "beta": self.beta,
            "gamma": self.gamma,
            "splitting": list(self.splitting),
            "ulrich": self.ulrich,
            "h0": self.h0,
            "min_hn_vanish": self.min_hn_vanish,
            "stability": self.stability.label,
            "stability_flags": list(self.stability.flags),
            "rows": [
                {"i": i, "h0": self.h0_row[i], f"h{self.n - 1}": self.hn1_row[i], f"h{self.n}": self.hn_row[i]}
                for i in sorted(self.h0_row)
            ],
        }

    def to_text(self) -> str:
        n = self.n
        heads = ["i"] + [f"h{j}" for j in range(n + 1)]
        body = []
        for i in sorted(self.h0_row):
            cells = [i, self.h0_row[i]] + [0] * (n - 2) + [self.hn1_row[i], self.hn_row[i]]
            body.append([str(c) for c in cells])
        widths = [max(len(h), *(len(r[k]) for r in body)) if body else len(h) for k, h in enumerate(heads)]
        lines = [
            f"type (alpha, beta) = ({self.alpha}, {self.beta}), m = {self.m}, n = {n}, gamma = {self.gamma}",
            f"splitting: {list(self.splitting)}" + ("  (Ulrich)" if self.ulrich else ""),
            f"h0(E) = {self.h0}",
            f"min i with h{n}(E(i)) = 0: {self.min_hn_vanish}",
            f"stability: {self.stability.label}"
            + (f" ({', '.join(self.stability.flags)})" if self.stability.flags else ""),
            "  ".join(h.rjust(w) for h, w in zip(heads, widths)),
        ]
        lines += ["  ".join(c.rjust(w) for c, w in zip(row, widths)) for row in body]
        return "\n".join(lines)


def splitting_table(n: int, m: int, alpha: int, beta: int, twist_range: Iterable[int] = range(-5, 6)) -> CohomologyTable:
    if n < 3:
        raise ValueError("need n >= 3")
    _check_type(alpha, beta, m)
    twists = list(twist_range)
    split = splitting(alpha, beta, m)
    return CohomologyTable(
        n=n,
        m=m,
        alpha=alpha,
        beta=beta,
        gamma=alpha + beta - m,
        splitting=split,
        h0_row={i: h0_E(n, m, alpha, beta, i) for i in twists},
        hn_row={i: hn_E_serre(n, m, alpha, beta, i) for i in twists},
        hn1_row={i: hn1_E(n, m, alpha, beta, i) for i in twists},
        ulrich=all(a == 0 for a in split),
        min_hn_vanish=2 * m - alpha - beta - n,
        h0=h0_E(n, m, alpha, beta, 0),
        stability=stability_class(alpha, beta, m),
    )


# normal bundle and Ext groups (n = 3, general X and Y)

NORMAL_RANGE = (2, 3, 4)


@dataclass(frozen=True)
class NormalCohomology:
    h0: int
    h1: int
    chi: int


def _check_threefold_range(alpha: int, beta: int, m: int) -> tuple[int, int]:
    if m not in NORMAL_RANGE:
        raise ValueError(f"normal bundle and Ext dimensions are tabulated for m in {NORMAL_RANGE}, got {m}")
    _check_type(alpha, beta, m)
    return tuple(sorted((alpha, beta)))  # type: ignore[return-value]


def normal_cohomology(alpha: int, beta: int, m: int) -> NormalCohomology:
    """``h^0, h^1`` and ``chi`` of ``N_{Y/X}`` for a general curve ``Y`` on a general double solid."""
    a, b = _check_threefold_range(alpha, beta, m)
    chi = a * b * (4 - m)
    if b < 4:
        h1 = 0
    elif a < b:
        h1 = 1
    else:
        h1 = 3
    return NormalCohomology(chi + h1, h1, chi)


def normal_h0_via_ci(alpha: int, beta: int, m: int) -> int:
    """``h^0(N_{Y/X})`` from the normal sequence, as a sum of ``h^0(O_Z(.))`` terms."""
    a, b = _check_threefold_range(alpha, beta, m)
    return h0_OZ(3, a, b, a) + h0_OZ(3, a, b, b) + h0_OZ(3, a, b, m) - h0_OZ(3, a, b, 2 * m)


@dataclass(frozen=True)
class ExtDims:
    hom: int
    ext1: int
    ext2: int
    ext3: int
    assumption: str = "general (X, Y)"

    @property
    def dims(self) -> tuple[int, int, int, int]:
        return (self.hom, self.ext1, self.ext2, self.ext3)

    @property
    def spherical(self) -> bool:
        return self.dims == (1, 0, 0, 1)


def ext_dims(alpha: int, beta: int, m: int) -> ExtDims:
    """``ext^j(E, E)`` on a general double solid, assuming ``h^0(E (x) I_Y) = 1``.

    ``hom = 1 + h^0(E(-gamma))`` and ``ext^1 = h^0(N) - h^0(E) + 1``.  In the
    Fano range ``m < 4``, ``ext^2 = h^1(N)`` and ``ext^3 = h^3(E)``; for
    ``m = 4`` the canonical bundle is trivial and Serre duality gives
    ``ext^2 = ext^1`` and ``ext^3 = hom``.
    """
    a, b = _check_threefold_range(alpha, beta, m)
    gamma = a + b - m
    normal = normal_cohomology(a, b, m)
    hom = 1 + h0_E(3, m, a, b, -gamma)
    ext1 = normal.h0 - h0_E(3, m, a, b, 0) + 1
    if m < 4:
        ext2 = normal.h1
        ext3 = hn_E_serre(3, m, a, b, 0)
    else:
        ext2 = ext1
        ext3 = hom
    return ExtDims(hom, ext1, ext2, ext3)


@dataclass(frozen=True)
class BundleNumerics:
    chi_normal: int
    h0_normal: int
    h1_normal: int
    hom: int
    ext1: int
    ext2: int
    ext3: int
    omega_twist: int
    deg_X: int
    deg_Y: int

    def to_dict(self) -> dict[str, int]:
        return asdict(self)


@dataclass(frozen=True)
class DegreeInvariants:
    deg_X: int
    deg_Y: int
    omega_twist: int


def degree_invariants(n: int, m: int, alpha: int, beta: int, d: int = 2) -> DegreeInvariants:
    """``H^n = d``, ``deg Y = alpha * beta`` and ``omega_X = O_X(m(d-1) - n - 1)``."""
    if d != 2:
        raise ValueError("only double covers are supported")
    return DegreeInvariants(deg_X=d, deg_Y=alpha * beta, omega_twist=m * (d - 1) - n - 1)


def bundle_numerics(alpha: int, beta: int, m: int) -> BundleNumerics:
    normal = normal_cohomology(alpha, beta, m)
    ext = ext_dims(alpha, beta, m)
    deg = degree_invariants(3, m, alpha, beta)
    return BundleNumerics(
        chi_normal=normal.chi,
        h0_normal=normal.h0,
        h1_normal=normal.h1,
        hom=ext.hom,
        ext1=ext.ext1,
        ext2=ext.ext2,
        ext3=ext.ext3,
        omega_twist=deg.omega_twist,
        deg_X=deg.deg_X,
        deg_Y=deg.deg_Y,
    )
