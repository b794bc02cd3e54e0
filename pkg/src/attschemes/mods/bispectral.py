"""
Bispectral relations of the eigenvalue grid: the recurrences in the degree
indices (i,j), the difference equations in the variable indices (r,s), and
the operator quadruple X, Y, X*, Y* acting on the span W of the T_ij.
"""

import logging
from fractions import Fraction
from typing import Dict, List, Tuple

from attschemes.data_models.report import CheckResult
from attschemes.data_models.residual import RelationResidual
from attschemes.data_models.scheme_params import SchemeParams
from attschemes.mods.exactnum import QPowers, format_exact
from attschemes.mods.spectra import EigenGrid, SpectralParams
from attschemes.mods.unipoly import Coefficient, combine
from attschemes.utils.exact_matrix import ExactMatrix, anticommutator, commutator, linear_combination

logger = logging.getLogger(__name__)

Offset = Tuple[int, int]

# Neighbour offsets of the seven-term relations; (+,+) and (-,-) never occur.
SEVEN_POINT_OFFSETS: Tuple[Offset, ...] = ((1, 0), (1, -1), (0, 1), (0, 0), (0, -1), (-1, 1), (-1, 0))


class RecurrenceCoeffs:
    """Coefficients b^eps(i,j) and c^{eps eps'}(i,j) of the recurrences in (i,j)."""

    def __init__(self, qp: QPowers, n: int, m: int):
        self.qp = qp
        self.n = n
        self.m = m

    @classmethod
    def for_params(cls, params: SchemeParams) -> "RecurrenceCoeffs":
        return cls(params.powers(), params.n, params.m)

    def b(self, eps: int, i: int, j: int) -> Fraction:
        qp, m = self.qp, self.m
        if eps == 1:
            return qp(i + j - m, -1) * (qp(j + 1) - 1)
        if eps == -1:
            return (qp(j - 1, -1) - 1) * (qp(i + j - m - 1) - 1)
        return -self.b(1, i, j - 1) - self.b(-1, i, j + 1)

    def c(self, offset: Offset, i: int, j: int) -> Fraction:
        qp, n, m = self.qp, self.n, self.m
        table = {
            (1, 0): lambda: qp(j - n - 1, -1) * (1 - qp(i + 1)) ** 2,
            (1, -1): lambda: qp(-n - 1) * (1 - qp(i + 1)) ** 2 * (1 - qp(j - 1, -1)),
            (0, 1): lambda: qp(i + j - m, -1) * (qp(i - n + m) - 1) * (qp(j + 1) - 1),
            (0, 0): lambda: -(1 - qp(i - n + m)) * (1 - qp(i - m)) - qp(-n - 1) * (1 - qp(i)) ** 2 - (1 - qp(i - n + m)) * self.b(0, i, j),
            (0, -1): lambda: -(1 - qp(i - n + m)) * (1 - qp(j - 1, -1)) * (1 - qp(i + j - m - 1)),
            (-1, 1): lambda: qp(i - m - 1) * (1 - qp(i - 1 - n + m)) * (qp(j + 1) - 1),
            (-1, 0): lambda: (1 - qp(i - 1 - n + m)) * (1 - qp(j - m + i - 1)),
        }
        if offset not in table:
            return Fraction(0)
        return table[offset]()


class DifferenceCoeffs:
    """
    Coefficients B^eps(r,s) and C^{eps eps'}(r,s) of the difference equations in (r,s).

    Coefficients are returned unevaluated because some of them are 0/0 at
    the corner r = n-m, r+s = m, where their target lies outside the domain.
    """

    def __init__(self, params: SchemeParams):
        self.params = params
        self.qp = params.powers()

    def defined(self, r: int, s: int) -> bool:
        return self.params.in_domain((r, s))

    def big_b(self, eps: int, r: int, s: int) -> Coefficient:
        qp, n, m = self.qp, self.params.n, self.params.m
        if eps == 1:
            return Coefficient(
                (1 - qp(r + m - n)) * (1 - qp(r + s - m)) * (1 - qp(r + s - n - 1)),
                (1 - qp(2 * r + s - n - 1)) * (1 - qp(2 * r + s - n)),
            )
        if eps == -1:
            return Coefficient(
                -qp(r + s - n - 1) * (1 - qp(r)) * (1 - qp(r + s - m - 1)) * (1 - qp(r + m - n - 1)),
                (1 - qp(2 * r + s - n - 2)) * (1 - qp(2 * r + s - n - 1)),
            )
        return Coefficient(-self.b_value(1, r, s) - self.b_value(-1, r, s))

    def b_value(self, eps: int, r: int, s: int) -> Fraction:
        """B^eps(r,s), taken as zero when its target is outside the domain."""
        if not self.defined(r + eps, s):
            return Fraction(0)
        return self.big_b(eps, r, s).value()

    def big_c(self, offset: Offset, r: int, s: int) -> Coefficient:
        qp, n, m = self.qp, self.params.n, self.params.m
        shift = 1 - qp(s, -1)
        base = 1 - qp(2 * r + s - n - 1)
        if offset in ((1, 0), (-1, 0)):
            inner = self.big_b(offset[0], r, s)
            return Coefficient(-shift * inner.num, inner.den)
        if offset == (0, 0):
            b_zero = -self.b_value(1, r, s) - self.b_value(-1, r, s)
            return Coefficient(-shift * b_zero - shift * (1 - qp(s - m)) + qp(s - m - 1, -1) * (1 - qp(s)))
        if offset == (-1, 1):
            return Coefficient(-qp(s - m) * shift * (1 - qp(r)) * (1 - qp(r + m - n - 1)), base)
        if offset == (0, 1):
            return Coefficient(shift * (1 - qp(r + s - n - 1)) * (1 - qp(r + s - m)), base)
        if offset == (1, -1):
            return Coefficient(-qp(s - m - 1, -1) * (1 - qp(s)) * (1 - qp(r + m - n)), base)
        if offset == (0, -1):
            return Coefficient(-qp(r + s - n - 1, -1) * (1 - qp(s)) * (1 - qp(r + s - m - 1)), base)
        return Coefficient(Fraction(0))


def verify_recurrences(grid: EigenGrid) -> List[RelationResidual]:
    """
    The three-term recurrence in j and the seven-term recurrence in (i,j) at
    every grid point; T with a degree index outside the domain is zero.
    """
    params = grid.params
    coeffs = RecurrenceCoeffs.for_params(params)
    spectral = SpectralParams(params.powers(), params.n)
    qp = params.powers()
    residuals: List[RelationResidual] = []
    for i, j in grid.domain:
        for rs in grid.domain:
            r, s = rs
            t_here = grid.t((i, j), rs)
            terms = [(Coefficient(coeffs.b(eps, i, j)), True, lambda jj=j + eps: grid.t((i, jj), rs)) for eps in (1, 0, -1)]
            residuals.extend(combine("recT1", ((i, j), rs), spectral.lam(s) * t_here, terms))
            terms = [(Coefficient(coeffs.c(offset, i, j)), True, lambda o=offset: grid.t((i + o[0], j + o[1]), rs)) for offset in SEVEN_POINT_OFFSETS]
            residuals.extend(combine("recT2", ((i, j), rs), qp(-s) * spectral.big_lambda(r, s) * t_here, terms))
    logger.debug("Recurrences on %s: %d residuals", params, len(residuals))
    return sorted(residuals, key=RelationResidual.sort_key)


def verify_differences(grid: EigenGrid) -> List[RelationResidual]:
    """
    The three-term difference equation in r and the seven-term equation in
    (r,s). A coefficient whose target is outside the domain must vanish;
    otherwise a boundary residual is reported.
    """
    params = grid.params
    coeffs = DifferenceCoeffs(params)
    spectral = SpectralParams(params.powers(), params.n)
    qp = params.powers()
    residuals: List[RelationResidual] = []
    for ij in grid.domain:
        i, j = ij
        for r, s in grid.domain:
            t_here = grid.t(ij, (r, s))
            terms = [(coeffs.big_b(eps, r, s), coeffs.defined(r + eps, s), lambda rr=r + eps: grid.t(ij, (rr, s))) for eps in (1, 0, -1)]
            residuals.extend(combine("diffT1", (ij, (r, s)), spectral.theta(i) * t_here, terms))
            terms = [
                (coeffs.big_c(offset, r, s), coeffs.defined(r + offset[0], s + offset[1]), lambda o=offset: grid.t(ij, (r + o[0], s + o[1])))
                for offset in SEVEN_POINT_OFFSETS
            ]
            residuals.extend(combine("diffT2", (ij, (r, s)), qp(-i) * spectral.theta(j) * t_here, terms))
    logger.debug("Difference equations on %s: %d residuals", params, len(residuals))
    return sorted(residuals, key=RelationResidual.sort_key)


class OperatorQuadruple:
    """
    The operators X, Y, X*, Y* on W in the deg-lex (i,j) basis.

    Matrices follow the column convention M[target, source]; the raw
    operators are kept as ``raw_x``, ``raw_y``, ``raw_x_star``, ``raw_y_star``.
    """

    def __init__(self, params: SchemeParams, raw: Dict[str, ExactMatrix]):
        self.params = params
        self.domain = params.domain
        self.raw_x = raw["x"]
        self.raw_y = raw["y"]
        self.raw_x_star = raw["x_star"]
        self.raw_y_star = raw["y_star"]
        qp = params.powers()
        n = params.n
        unit = ExactMatrix.identity(len(self.domain))
        scale_y = qp(n + 1) / (qp(1) - 1) ** 2
        scale_x_star = qp(1, 1) / (qp(1) - 1) ** 2
        self.x = unit + self.raw_x
        self.y = linear_combination([(scale_y * (1 + qp(-n - 1)), unit), (scale_y, self.raw_x), (scale_y, self.raw_y)])
        self.y_star = unit + self.raw_y_star
        self.x_star = linear_combination([(scale_x_star, unit), (scale_x_star, self.raw_y_star), (scale_x_star, self.raw_x_star)])

    def to_dict(self) -> Dict[str, object]:
        def rows(matrix: ExactMatrix) -> List[List[str]]:
            return [[format_exact(value) for value in row] for row in matrix.to_fractions()]

        return {
            "basis": [list(ij) for ij in self.domain],
            "X": rows(self.x),
            "Y": rows(self.y),
            "X*": rows(self.x_star),
            "Y*": rows(self.y_star),
        }


def build_operators(grid: EigenGrid) -> OperatorQuadruple:
    """Matrices of the recurrence and difference operators on W; targets outside the domain are dropped."""
    params = grid.params
    domain = grid.domain
    position = {ij: k for k, ij in enumerate(domain)}
    size = len(domain)
    coeffs = RecurrenceCoeffs.for_params(params)
    spectral = SpectralParams(params.powers(), params.n)
    qp = params.powers()

    x_rows = [[Fraction(0)] * size for _ in range(size)]
    y_rows = [[Fraction(0)] * size for _ in range(size)]
    for (i, j), col in position.items():
        for eps in (1, 0, -1):
            target = (i, j + eps)
            if target in position:
                x_rows[position[target]][col] = coeffs.b(eps, i, j)
        for offset in SEVEN_POINT_OFFSETS:
            target = (i + offset[0], j + offset[1])
            if target in position:
                y_rows[position[target]][col] = coeffs.c(offset, i, j)

    raw = {
        "x": ExactMatrix.from_fractions(x_rows),
        "y": ExactMatrix.from_fractions(y_rows),
        "x_star": ExactMatrix.diagonal([qp(-i) * spectral.theta(j) for i, j in domain]),
        "y_star": ExactMatrix.diagonal([spectral.theta(i) for i, _ in domain]),
    }
    return OperatorQuadruple(params, raw)


def verify_operator_action(ops: OperatorQuadruple, grid: EigenGrid) -> CheckResult:
    """Each column (T_ij(r,s))_ij is a left eigenvector of the raw X and Y with eigenvalues lambda(s) and q^-s Lambda(r,s)."""
    params = grid.params
    spectral = SpectralParams(params.powers(), params.n)
    qp = params.powers()
    failures = []
    for r, s in grid.domain:
        vector = ExactMatrix.from_fractions([[grid.t(ij, (r, s))] for ij in grid.domain])
        if ops.raw_x.T @ vector != vector.scale(spectral.lam(s)):
            failures.append(f"X^T t{(r, s)} != lambda({s}) t{(r, s)}")
        if ops.raw_y.T @ vector != vector.scale(qp(-s) * spectral.big_lambda(r, s)):
            failures.append(f"Y^T t{(r, s)} != q^-s Lambda t{(r, s)}")
    return CheckResult.from_failures("bispectral.action", 2 * len(grid.domain), failures)


def tridiagonal_form(a: ExactMatrix, b: ExactMatrix, q: Fraction) -> ExactMatrix:
    """{a^2, b} - (q + q^-1) a b a."""
    return anticommutator(a @ a, b) - (a @ b @ a).scale(q + 1 / q)


def algebra_residuals(ops: OperatorQuadruple) -> Dict[str, ExactMatrix]:
    """Residual matrices lhs - rhs of the six algebra relations on W."""
    params = ops.params
    qp = params.powers()
    q = qp(1)
    n, m = params.n, params.m
    ell_q = qp(0, 1)
    x, y, xs, ys = ops.x, ops.y, ops.x_star, ops.y_star
    unit = ExactMatrix.identity(len(ops.domain))
    square = (q - 1) ** 2

    residuals = {
        "bial1.XY": commutator(x, y),
        "bial1.X*Y*": commutator(xs, ys),
        "bial2": commutator(x, ys),
    }
    rhs = linear_combination([(qp(-m - 1) * (q + 1), unit), (-qp(-m - 1) * (ell_q * q + 1), x), (-1, ys @ x)])
    residuals["bial3"] = tridiagonal_form(x, xs, q) - rhs
    rhs = linear_combination([(ell_q * qp(-m) * (q + 1) / square, ys), (-qp(-m - 1) * (ell_q * q + 1), xs), (-1, ys @ xs)])
    residuals["bial4"] = tridiagonal_form(xs, x, q) - rhs
    rhs = linear_combination(
        [
            ((q + 1) / square * qp(n - m - 1), unit),
            ((q + 1) / square * (qp(m - 1) + 2 * qp(n)), x),
            (-(q + 1) / square * qp(n - 1) * (q + 1), x @ ys),
            (-(2 / q + qp(n - m)), y),
            (-qp(m), x @ y),
        ]
    )
    residuals["bial5"] = tridiagonal_form(y, ys, q) - rhs
    rhs = linear_combination([(1 + 1 / q, unit), (-qp(m), x @ ys), (-(2 / q + qp(n - m)), ys)])
    residuals["bial6"] = tridiagonal_form(ys, y, q) - rhs
    return residuals


def verify_algebra(ops: OperatorQuadruple) -> List[CheckResult]:
    """One check per algebra relation; a failure names the largest residual entry."""
    results = []
    for name, residual in algebra_residuals(ops).items():
        failures = [] if residual.is_zero() else [f"{name}: max |residual| = {format_exact(residual.max_abs_entry())}"]
        results.append(CheckResult.from_failures(f"algebra.{name}", residual.nonzero_count() or 1, failures))
    return results


def support_check(ops: OperatorQuadruple) -> CheckResult:
    """X moves only j by at most one; Y never shifts along (+,+) or (-,-); X*, Y* are diagonal."""
    domain = ops.domain
    failures = []
    for matrix, name, allowed in ((ops.raw_x, "X", {(0, 1), (0, 0), (0, -1)}), (ops.raw_y, "Y", set(SEVEN_POINT_OFFSETS))):
        for row, target in enumerate(domain):
            for col, source in enumerate(domain):
                offset = (target[0] - source[0], target[1] - source[1])
                if matrix.num[row, col] and offset not in allowed:
                    failures.append(f"{name} has entry at offset {offset} from {source}")
    for matrix, name in ((ops.raw_x_star, "X*"), (ops.raw_y_star, "Y*")):
        if matrix.nonzero_count() != sum(1 for k in range(len(domain)) if matrix.num[k, k]):
            failures.append(f"{name} is not diagonal")
    return CheckResult.from_failures("bispectral.support", 4, failures)
