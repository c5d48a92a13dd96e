"""Matrix factorizations of covering equations ``p = t^d - b``.

A factorization is a pair of square polynomial matrices with
``A @ B == B @ A == p * I``.  Its grading is recorded as row and column
degrees of ``A`` (``deg A[k][l] == row_degrees[k] - col_degrees[l]``); for a
factorization coming from a sheaf on the covering every diagonal entry has
weighted degree ``m`` and the twists ``alpha_k = row_degrees[k] - m`` give
the splitting type of the pushforward, up to a common shift.  Twists are
reported shifted so that the largest is 0.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Sequence

from . import polymatrix as pm
from .decompose import Decomposition
from .exactla import ExactMatrix, det_scalar
from .field import FieldSpec
from .polyring import DegreeError, Poly, Ring
from .polymatrix import PolyMatrix


class FactorizationError(ValueError):
    pass


class NotNormalizable(FactorizationError):
    pass


@dataclass(frozen=True)
class MatrixFactorization:
    A: PolyMatrix
    B: PolyMatrix
    base: Poly
    d: int
    row_degrees: tuple[int, ...]
    col_degrees: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.A)
        if len(self.B) != n or any(len(r) != n for r in self.A + self.B):
            raise FactorizationError("A and B must be square of the same order")
        if len(self.row_degrees) != n or len(self.col_degrees) != n:
            raise FactorizationError("grading has the wrong length")

    @property
    def ring(self) -> Ring:
        return self.base.ring

    @property
    def order(self) -> int:
        return len(self.A)

    @property
    def rank(self) -> int:
        """Rank of the cokernel sheaf, ``order / d``."""
        if self.order % self.d:
            raise FactorizationError(f"order {self.order} is not a multiple of d = {self.d}")
        return self.order // self.d

    @property
    def twists(self) -> tuple[int, ...]:
        m = self.ring.m
        if any(r - c != m for r, c in zip(self.row_degrees, self.col_degrees)):
            raise FactorizationError("diagonal entries are not of weighted degree m; no twist data")
        top = max(self.row_degrees)
        return tuple(r - top for r in self.row_degrees)

    @classmethod
    def from_twists(cls, A: PolyMatrix, B: PolyMatrix, base: Poly, d: int, twists: Sequence[int]) -> MatrixFactorization:
        m = base.ring.m
        return cls(pm.as_matrix(A), pm.as_matrix(B), base, d, tuple(m + a for a in twists), tuple(twists))

    # serialization

    def to_dict(self) -> dict[str, Any]:
        ring = self.ring
        return {
            "n": ring.n,
            "m": ring.m,
            "d": self.d,
            "r": self.rank,
            "field": ring.field.label,
            "twists": list(self.twists),
            "matrix_A": pm.to_strings(self.A),
            "matrix_B": pm.to_strings(self.B),
            "base_p": self.base.to_str(),
        }

    @classmethod
    def from_dict(cls, doc: dict[str, Any]) -> MatrixFactorization:
        try:
            field_spec = FieldSpec.parse(str(doc["field"]))
            ring = Ring(int(doc["n"]), int(doc["m"]), field_spec)
            A = pm.from_strings(doc["matrix_A"], ring)
            B = pm.from_strings(doc["matrix_B"], ring)
            base = ring.parse(doc["base_p"])
            d = int(doc["d"])
            twists = [int(a) for a in doc["twists"]]
        except KeyError as exc:
            raise FactorizationError(f"missing field {exc.args[0]!r}") from None
        if len(twists) != len(A):
            raise FactorizationError("twist vector length differs from the matrix order")
        mf = cls.from_twists(A, B, base, d, twists)
        if "r" in doc and int(doc["r"]) * d != len(A):
            raise FactorizationError("stored r does not match the matrix order")
        return mf


def write_mf(mf: MatrixFactorization, path: str | Path) -> None:
    Path(path).write_text(json.dumps(mf.to_dict(), indent=2) + "\n", encoding="utf-8")


def read_mf(path: str | Path) -> MatrixFactorization:
    return MatrixFactorization.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))


# constructions

def pair(phi: Poly, psi: Poly, phi_degree: int, d: int = 2) -> MatrixFactorization:
    """1x1 factorization ``phi * psi`` with ``phi`` declared of degree ``phi_degree``."""
    return MatrixFactorization(((phi,),), ((psi,),), phi * psi, d, (phi_degree,), (0,))


def mf_cyclic_diag(d: int, p0: Poly, products: Sequence[Poly]) -> MatrixFactorization:
    """``d x d`` factorization of ``t^d - p0^d - prod(products)``.

    ``A`` has ``t - zeta^i * p0`` on the diagonal, ``products[i]`` just above
    it and ``(-1)^d * products[-1]`` in the lower-left corner; the sign makes
    the cyclic term of the determinant equal ``-prod(products)`` for every
    ``d``.  ``B`` is the adjugate of ``A``.
    """
    ring = p0.ring
    m = ring.m
    if d < 2:
        raise FactorizationError("need d >= 2")
    if len(products) != d:
        raise FactorizationError(f"need exactly {d} products, got {len(products)}")
    f = ring.field
    if f.root_of_unity_order != d:
        if d == 2:
            zeta = f(-1)
        else:
            raise FactorizationError(f"field does not carry a primitive {d}-th root of unity")
    else:
        zeta = f.zeta
    for g in (p0, *products):
        if g.ring != ring:
            raise FactorizationError("inputs from different rings")
        if not g.is_homogeneous(m) or not g.is_t_free():
            raise DegreeError(f"{g} is not a t-free form of degree {m}")
    t = ring.t
    rows = [[ring.zero] * d for _ in range(d)]
    for i in range(d):
        rows[i][i] = t - p0.scale(f.reduce(zeta**i))
        if i + 1 < d:
            rows[i][i + 1] = products[i]
    corner = products[-1] if d % 2 == 0 else -products[-1]
    rows[d - 1][0] = corner
    A = pm.as_matrix(rows)
    B = pm.adjugate(A, ring)
    base = t**d - p0**d
    prod = ring.one
    for g in products:
        prod = prod * g
    base = base - prod
    return MatrixFactorization.from_twists(A, B, base, d, [0] * d)


def mf_add2(F: MatrixFactorization, G: MatrixFactorization) -> MatrixFactorization:
    """Factorization of ``f + g`` of order ``2 * a * c`` from ones of ``f`` (order a) and ``g`` (order c).

    With ``F = (phi, psi)`` and ``G = (phi2, psi2)``::

        A = [[phi (x) I_c,  I_a (x) phi2],     B = [[psi (x) I_c, -I_a (x) phi2],
             [-I_a (x) psi2, psi (x) I_c]]          [I_a (x) psi2,  phi (x) I_c]]
    """
    ring = F.ring
    if G.ring != ring:
        raise FactorizationError("factorizations over different rings")
    deg_f = F.base.weighted_degree()
    deg_g = G.base.weighted_degree()
    if not isinstance(deg_f, int):
        raise DegreeError("base of F must be homogeneous and nonzero")
    if isinstance(deg_g, int) and deg_g != deg_f:
        raise DegreeError(f"cannot add forms of degrees {deg_f} and {deg_g}")
    a, c = F.order, G.order
    Ia, Ic = pm.identity(a, ring), pm.identity(c, ring)
    phi_x_I = pm.kron(F.A, Ic)
    psi_x_I = pm.kron(F.B, Ic)
    I_x_phi2 = pm.kron(Ia, G.A)
    I_x_psi2 = pm.kron(Ia, G.B)
    A = pm.blocks(phi_x_I, I_x_phi2, pm.neg(I_x_psi2), psi_x_I)
    B = pm.blocks(psi_x_I, pm.neg(I_x_phi2), I_x_psi2, phi_x_I)
    rf, cf = F.row_degrees, F.col_degrees
    rg, cg = G.row_degrees, G.col_degrees
    rows1 = [rf[i] + rg[j] for i in range(a) for j in range(c)]
    cols1 = [cf[i] + rg[j] for i in range(a) for j in range(c)]
    rows2 = [cf[i] + deg_f + cg[j] for i in range(a) for j in range(c)]
    cols2 = [rf[i] + cg[j] for i in range(a) for j in range(c)]
    return MatrixFactorization(A, B, F.base + G.base, F.d, tuple(rows1 + rows2), tuple(cols1 + cols2))


def mf_from_decomposition(dec: Decomposition, check: bool = True) -> MatrixFactorization:
    """Order 4 factorization of ``t^2 - b`` for ``b = pa*qa + pb*qb + pm^2``.

    Built by doubling ``(t - pm)(t + pm)`` with the pairs ``pa * (-qa)`` and
    ``pb * (-qb)``.  The twist multiset is ``{0, a-m, b-m, a+b-2m}``.
    """
    ring = dec.ring
    t = ring.t
    m = dec.m
    F0 = MatrixFactorization(((t - dec.p_m,),), ((t + dec.p_m,),), t * t - dec.p_m * dec.p_m, 2, (m,), (0,))
    F1 = mf_add2(F0, pair(dec.p_alpha, -dec.q_alpha, dec.alpha))
    F2 = mf_add2(F1, pair(dec.p_beta, -dec.q_beta, dec.beta))
    if check:
        target = (t * t - dec.b) ** 2
        if pm.det(F2.A, ring) != target:
            raise FactorizationError("determinant check failed: det A != (t^2 - b)^2")
    return F2


def splitting_from_twists(F: MatrixFactorization) -> list[int]:
    return sorted(F.twists, reverse=True)


# involution and normal form

def involution_mf(F: MatrixFactorization) -> MatrixFactorization:
    """Apply ``t -> -t`` entrywise and negate both matrices."""
    if F.d != 2:
        raise FactorizationError("the covering involution needs d = 2")
    def flip(x: Poly) -> Poly:
        return -x.substitute_t("neg")

    A = pm.map_entries(F.A, flip)
    B = pm.map_entries(F.B, flip)
    return MatrixFactorization(A, B, F.base.substitute_t("neg"), F.d, F.row_degrees, F.col_degrees)


@dataclass(frozen=True)
class NormalFormCertificate:
    transform: ExactMatrix
    b: Poly
    square_is_b: bool


def normalize_tform(F: MatrixFactorization) -> tuple[PolyMatrix, NormalFormCertificate]:
    """Change of basis ``T^-1 A = t*I + A'`` with ``A'`` t-free.

    Returns ``A'`` and a certificate holding ``T^-1``, ``b = t^2 - p`` and
    whether ``A' @ A' == b * I`` holds exactly.
    """
    if F.d != 2:
        raise NotNormalizable("normal form is defined for d = 2 only")
    try:
        twists = F.twists
    except FactorizationError as exc:
        raise NotNormalizable(str(exc)) from None
    if len(set(twists)) != 1:
        raise NotNormalizable("twists are not all equal (not an Ulrich factorization)")
    ring = F.ring
    f = ring.field
    n = F.order
    T_rows = []
    A0_rows = []
    for row in F.A:
        t_row, a_row = [], []
        for x in row:
            parts = x.t_coefficients()
            if any(j > 1 for j in parts):
                raise NotNormalizable("entry of t-degree > 1")
            lin = parts.get(1, ring.zero)
            if not lin.is_constant():
                raise NotNormalizable("t-coefficient is not a scalar")
            t_row.append(lin.constant_value() if lin else f.zero)
            a_row.append(parts.get(0, ring.zero))
        T_rows.append(t_row)
        A0_rows.append(tuple(a_row))
    T = ExactMatrix.from_rows(T_rows, f)
    if not det_scalar(T):
        raise NotNormalizable("t-coefficient matrix is singular")
    T_inv = _scalar_inverse(T)
    A_prime = pm.scalar_matmul(T_inv, tuple(A0_rows), ring)
    b = ring.t * ring.t - F.base
    if not b.is_t_free():
        raise NotNormalizable("base is not of the form t^2 - b")
    square = pm.matmul(A_prime, A_prime, ring)
    ok = square == pm.identity(n, ring, b)
    return A_prime, NormalFormCertificate(T_inv, b, ok)


def _scalar_inverse(T: ExactMatrix) -> ExactMatrix:
    from .exactla import solve

    n = T.rows
    f = T.field
    cols = []
    for j in range(n):
        e = [f.one if i == j else f.zero for i in range(n)]
        x = solve(T, e)
        if x is None:
            raise NotNormalizable("t-coefficient matrix is singular")
        cols.append(x)
    return ExactMatrix.from_rows([[cols[j][i] for j in range(n)] for i in range(n)], f)


# verification

@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class VerifyReport:
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __getitem__(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict[str, Any]:
        return {
            "passed": self.passed,
            "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in self.checks],
        }


SYMBOLIC_DET_MAX = 4


def _product_check(name: str, X: PolyMatrix, Y: PolyMatrix, base: Poly) -> CheckResult:
    ring = base.ring
    prod = pm.matmul(X, Y, ring)
    diff = pm.first_difference(prod, pm.identity(len(X), ring, base))
    if diff is None:
        return CheckResult(name, True)
    i, j, residual = diff
    return CheckResult(name, False, f"entry ({i}, {j}) residual {residual.to_str()}")


def _det_check(F: MatrixFactorization, seed: int) -> CheckResult:
    ring = F.ring
    try:
        r = F.rank
    except FactorizationError as exc:
        return CheckResult("det", False, str(exc))
    n = F.order
    target = F.base**r
    details = []
    if n > SYMBOLIC_DET_MAX:
        f = ring.field
        rng = random.Random(seed)
        for k in range(n + 1):
            point = [f.random_element(rng, 1000) for _ in range(ring.nvars)]
            lhs = det_scalar(pm.evaluate(F.A, point, ring))
            rhs = target.evaluate(point)
            if lhs != rhs:
                return CheckResult("det", False, f"evaluation {k}: det A = {lhs} but p^r = {rhs}")
        details.append(f"{n + 1} evaluations agree")
    d = pm.det(F.A, ring)
    if d != target:
        return CheckResult("det", False, f"det A - p^{r} = {(d - target).to_str()}")
    details.append("symbolic")
    return CheckResult("det", True, ", ".join(details))


def _grid_check(F: MatrixFactorization) -> CheckResult:
    try:
        tw = F.twists
    except FactorizationError as exc:
        return CheckResult("degrees", False, str(exc))
    m = F.ring.m
    for name, M, offset in (("A", F.A, m), ("B", F.B, (F.d - 1) * m)):
        for k, row in enumerate(M):
            for l, x in enumerate(row):
                want = offset + tw[k] - tw[l]
                if x and not x.is_homogeneous(want):
                    return CheckResult("degrees", False, f"{name}[{k}][{l}] = {x} is not of degree {want}")
    return CheckResult("degrees", True, f"twists {list(tw)}")


def verify_mf(F: MatrixFactorization, seed: int = 0) -> VerifyReport:
    """Check ``A B = p I``, ``B A = p I``, ``det A = p^r`` and the degree grid."""
    report = VerifyReport()
    report.checks.append(_product_check("AB", F.A, F.B, F.base))
    report.checks.append(_product_check("BA", F.B, F.A, F.base))
    report.checks.append(_det_check(F, seed))
    report.checks.append(_grid_check(F))
    return report
