"""
Eigenvalues T_ij(r,s), dual eigenvalues U_rs(i,j), primitive idempotents
and brute-force Krein parameters of A_q(n, ell, m).
"""

import logging
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Any, Dict, List, Optional, Tuple

from attschemes.data_models.parameter_tensor import ParameterTensor
from attschemes.data_models.report import CheckResult
from attschemes.data_models.residual import RelationResidual
from attschemes.data_models.scheme_params import Index, SchemeParams
from attschemes.exceptions import InvariantViolation
from attschemes.mods.attenuated import SchemeInstance
from attschemes.mods.exactnum import Number, QPowers, format_exact, q_binomial, q_pochhammer
from attschemes.mods.unipoly import e_value, k_value, q_value
from attschemes.utils.exact_matrix import ExactMatrix, linear_combination, solve_rational

logger = logging.getLogger(__name__)

DEFAULT_RANK_LIMIT = 200


class FormulaContext:
    """
    Evaluates T_ij(r,s) and U_rs(i,j) for a base given by powers of q and q^ell.

    On the exact path ``ell_cap`` is ell; on the limit path ell is not an
    integer and ``ell_cap`` is None.
    """

    def __init__(self, qp: QPowers, n: int, m: int, ell_cap: Optional[int]):
        self.qp = qp
        self.n = n
        self.m = m
        self.ell_cap = ell_cap

    @classmethod
    def exact(cls, params: SchemeParams) -> "FormulaContext":
        return cls(params.powers(), params.n, params.m, params.ell)

    def eigenvalue(self, i: int, j: int, r: int, s: int) -> Number:
        """T_ij(r,s) = q^(i ell) K_j(m-i, ell; s) E_i(n-s, m-s; r)."""
        qp, n, m = self.qp, self.n, self.m
        if i + s > m:
            return qp.q * 0
        return qp(0, i) * k_value(j, m - i, qp, s, self.ell_cap) * e_value(i, n - s, m - s, qp, r)

    def dual_eigenvalue(self, r: int, s: int, i: int, j: int) -> Number:
        """U_rs(i,j) = [n m]/[n-s m-s] K_s(m-i, ell; j) Q_r(n-s, m-s; i)."""
        qp, n, m = self.qp, self.n, self.m
        q = qp.q
        ratio = q_binomial(n, m, q) / q_binomial(n - s, m - s, q)
        return ratio * k_value(s, m - i, qp, j, self.ell_cap) * q_value(r, n - s, m - s, qp, i)


class SpectralParams:
    """The spectral parameters lambda(s), Lambda(r,s), theta_i and mu(x) of a scheme."""

    def __init__(self, qp: QPowers, n: int):
        self.qp = qp
        self.n = n

    def lam(self, s: int) -> Fraction:
        return self.qp(-s) - 1

    def big_lambda(self, r: int, s: int) -> Fraction:
        return (self.qp(-r) - 1) * (1 - self.qp(r + s - self.n - 1))

    def theta(self, i: int) -> Fraction:
        return self.qp(-i) - 1

    def mu(self, x: int, big_n: int) -> Fraction:
        return self.qp(-x) + self.qp(x - big_n - 1)


def eigenvalue_T(i: int, j: int, r: int, s: int, params: SchemeParams) -> Fraction:  # pylint: disable=invalid-name
    """
    Exact eigenvalue T_ij(r,s).

    Raises:
        DomainIndexError: If (i,j) or (r,s) is outside the domain
    """
    params.require((i, j), "degree index")
    params.require((r, s), "variable index")
    return FormulaContext.exact(params).eigenvalue(i, j, r, s)


def dual_U(r: int, s: int, i: int, j: int, params: SchemeParams) -> Fraction:  # pylint: disable=invalid-name
    """
    Exact dual eigenvalue U_rs(i,j).

    Raises:
        DomainIndexError: If (r,s) or (i,j) is outside the domain
    """
    params.require((r, s), "dual degree index")
    params.require((i, j), "dual variable index")
    return FormulaContext.exact(params).dual_eigenvalue(r, s, i, j)


class EigenGrid:
    """Tables T[(i,j),(r,s)] and U[(r,s),(i,j)] over the domain squared."""

    def __init__(self, params: SchemeParams, T: Dict[Tuple[Index, Index], Fraction], U: Dict[Tuple[Index, Index], Fraction]):  # pylint: disable=invalid-name
        self.params = params
        self.domain = params.domain
        self.T = T  # pylint: disable=invalid-name
        self.U = U  # pylint: disable=invalid-name

    @classmethod
    def from_params(cls, params: SchemeParams) -> "EigenGrid":
        context = FormulaContext.exact(params)
        domain = params.domain
        table_t = {(ij, rs): context.eigenvalue(*ij, *rs) for ij in domain for rs in domain}
        table_u = {(rs, ij): context.dual_eigenvalue(*rs, *ij) for rs in domain for ij in domain}
        logger.debug("Eigen grid for %s: %d entries", params, len(table_t))
        return cls(params, table_t, table_u)

    def t(self, ij: Index, rs: Index) -> Fraction:
        """T_ij(r,s); zero when (i,j) lies outside the domain."""
        return self.T.get((ij, rs), Fraction(0)) if self.params.in_domain(ij) else Fraction(0)

    def u(self, rs: Index, ij: Index) -> Fraction:
        """U_rs(i,j); zero when (r,s) lies outside the domain."""
        return self.U.get((rs, ij), Fraction(0)) if self.params.in_domain(rs) else Fraction(0)

    def valency(self, ij: Index) -> Fraction:
        return self.T[(ij, (0, 0))]

    def multiplicity(self, rs: Index) -> Fraction:
        return self.U[(rs, (0, 0))]

    def to_rows(self) -> List[Dict[str, Any]]:
        """One row per (degree, variable) pair: T_ij(r,s) and U_rs(i,j) at the same labels."""
        rows = []
        for ij in self.domain:
            for rs in self.domain:
                rows.append({"i": ij[0], "j": ij[1], "r": rs[0], "s": rs[1], "T": format_exact(self.T[(ij, rs)]), "U": format_exact(self.U[(rs, ij)])})
        return rows


def wilson_duality_check(grid: EigenGrid) -> List[RelationResidual]:
    """U_rs(i,j) T_ij(0,0) = T_ij(r,s) U_rs(0,0) on every index pair."""
    residuals = []
    for ij in grid.domain:
        for rs in grid.domain:
            lhs = grid.U[(rs, ij)] * grid.valency(ij)
            rhs = grid.T[(ij, rs)] * grid.multiplicity(rs)
            residuals.append(RelationResidual("wilson", (ij, rs), lhs, rhs))
    return residuals


def t10_closed(params: SchemeParams, r: int, s: int) -> Fraction:
    qp = params.powers()
    spectral = SpectralParams(qp, params.n)
    n, m = params.n, params.m
    inner = (1 - qp(-m)) * (1 - qp(m - n)) + (1 - qp(m - n)) * spectral.lam(s) + qp(-s) * spectral.big_lambda(r, s)
    return qp(n + 1, 1) / (1 - qp(1)) ** 2 * inner


def t01_closed(params: SchemeParams, r: int, s: int) -> Fraction:  # pylint: disable=unused-argument
    qp = params.powers()
    m = params.m
    return -qp(m, 1) / (1 - qp(1)) * ((1 - qp(0, -1)) * (1 - qp(-m)) + qp(-s) - 1)


def u10_closed(params: SchemeParams, i: int, j: int) -> Fraction:  # pylint: disable=unused-argument
    qp = params.powers()
    n, m = params.n, params.m
    theta = qp(-i) - 1
    return (qp(1) - qp(n)) / (1 - qp(1)) * (1 + (1 - qp(-n)) * theta / ((1 - qp(-m)) * (1 - qp(m - n))))


def u01_closed(params: SchemeParams, i: int, j: int) -> Fraction:
    qp = params.powers()
    n, m = params.n, params.m
    theta_i, theta_j = qp(-i) - 1, qp(-j) - 1
    scale = (qp(0, 1) - 1) * (1 - qp(n)) / (1 - qp(1))
    return scale * (1 + theta_i / (1 - qp(-m)) + qp(-i) * theta_j / ((1 - qp(-m)) * (1 - qp(0, -1))))


def multiplicity_closed(params: SchemeParams, r: int, s: int) -> Fraction:
    """U_rs(0,0) in product form."""
    qp = params.powers()
    q, n = qp.q, params.n
    return qp(0, s) * q_pochhammer(qp(0, -1), q, s) * q_binomial(n, s, q) * q_binomial(n - s, r, q) * (1 - qp(2 * r + s - n - 1)) / (1 - qp(r + s - n - 1))


def check_closed_forms(grid: EigenGrid) -> List[RelationResidual]:
    """Compare the generator eigenvalues and the multiplicities against their product forms."""
    params = grid.params
    residuals = []
    for rs in grid.domain:
        residuals.append(RelationResidual("multiplicity", rs, grid.multiplicity(rs), multiplicity_closed(params, *rs)))
    if params.in_domain((1, 0)):
        for point in grid.domain:
            residuals.append(RelationResidual("T10", point, grid.T[((1, 0), point)], t10_closed(params, *point)))
            residuals.append(RelationResidual("U10", point, grid.U[((1, 0), point)], u10_closed(params, *point)))
    if params.in_domain((0, 1)):
        for point in grid.domain:
            residuals.append(RelationResidual("T01", point, grid.T[((0, 1), point)], t01_closed(params, *point)))
            residuals.append(RelationResidual("U01", point, grid.U[((0, 1), point)], u01_closed(params, *point)))
    return residuals


class IdempotentSet:
    """Primitive idempotents E_rs = (1/|X|) sum_ij U_rs(i,j) A_ij of a built scheme."""

    def __init__(self, instance: SchemeInstance, grid: EigenGrid):
        """
        Assemble every E_rs from its class values.

        Raises:
            InvariantViolation: If the instance and grid describe different schemes
        """
        if instance.params != grid.params:
            raise InvariantViolation(f"instance {instance.params} and grid {grid.params} disagree")
        self.instance = instance
        self.grid = grid
        size = instance.vertex_count
        self.matrices: Dict[Index, ExactMatrix] = {}
        for rs in grid.domain:
            values = [grid.U[(rs, ij)] / size for ij in instance.domain]
            self.matrices[rs] = ExactMatrix.from_class_values(instance.classes.astype("intp"), values)

    def __getitem__(self, rs: Index) -> ExactMatrix:
        return self.matrices[rs]

    def ranks(self, rank_limit: int = DEFAULT_RANK_LIMIT) -> Dict[Index, int]:
        """Exact ranks; by elimination up to ``rank_limit`` vertices, otherwise as the trace of the (verified) idempotent."""
        if self.instance.vertex_count <= rank_limit:
            return {rs: matrix.rank() for rs, matrix in self.matrices.items()}
        return {rs: int(matrix.trace()) for rs, matrix in self.matrices.items()}

    def verify(self, rank_limit: int = DEFAULT_RANK_LIMIT) -> List[CheckResult]:
        """
        Check idempotency, orthogonality, completeness, E_00 = J/|X|, the
        eigen-identity A_ij E_rs = T_ij(r,s) E_rs, the inverse expansion and ranks.
        """
        domain = self.grid.domain
        size = self.instance.vertex_count
        results = []

        failures = []
        for left, right in combinations_with_replacement(domain, 2):
            product = self.matrices[left] @ self.matrices[right]
            expected = self.matrices[left] if left == right else ExactMatrix.zeros(size)
            if product != expected:
                failures.append(f"E{left} E{right} != {'E' + str(left) if left == right else '0'}")
        results.append(CheckResult.from_failures("idempotents.orthogonality", len(domain) * (len(domain) + 1) // 2, failures))

        total = linear_combination((Fraction(1), matrix) for matrix in self.matrices.values())
        failures = [] if total == ExactMatrix.identity(size) else ["sum of E_rs is not the identity"]
        unit = ExactMatrix.from_class_values(self.instance.classes.astype("intp"), [Fraction(1, size)] * len(domain))
        if self.matrices[(0, 0)] != unit:
            failures.append("E(0, 0) != J/|X|")
        results.append(CheckResult.from_failures("idempotents.completeness", 2, failures))

        failures = []
        for ij in domain:
            adjacency = self.instance.adjacency(ij)
            for rs in domain:
                if adjacency @ self.matrices[rs] != self.matrices[rs].scale(self.grid.T[(ij, rs)]):
                    failures.append(f"A{ij} E{rs} != T{ij}{rs} E{rs}")
            expansion = linear_combination((self.grid.T[(ij, rs)], self.matrices[rs]) for rs in domain)
            if expansion != adjacency:
                failures.append(f"A{ij} != sum T{ij}(r,s) E(r,s)")
        results.append(CheckResult.from_failures("idempotents.eigen", len(domain) * (len(domain) + 1), failures))

        ranks = self.ranks(rank_limit)
        failures = [
            f"rank E{rs} = {rank}, multiplicity {format_exact(self.grid.multiplicity(rs))}" for rs, rank in ranks.items() if rank != self.grid.multiplicity(rs)
        ]
        results.append(CheckResult.from_failures("idempotents.rank", len(ranks), failures, {"method": "elimination" if size <= rank_limit else "trace"}))
        return results


def brute_krein(idempotents: IdempotentSet) -> Tuple[ParameterTensor, List[str]]:
    """
    Krein parameters from the Schur products E_mn ∘ E_rs.

    Each product is read at one representative pair per relation class and
    solved exactly against the class values of the E_ab; the full matrix
    remainder of the expansion must then vanish.

    Returns:
        (tensor with q_{mn,rs}^{ab} = |X| * coefficient of E_ab, failure witnesses)
    """
    instance = idempotents.instance
    domain = instance.domain
    size = instance.vertex_count
    representatives = [instance.representative(ij) for ij in domain]
    basis = [[idempotents[ab].entry(*rep) for ab in domain] for rep in representatives]
    tensor = ParameterTensor("q")
    failures: List[str] = []
    for left, right in combinations_with_replacement(domain, 2):
        schur = idempotents[left].schur(idempotents[right])
        rhs = [schur.entry(*rep) for rep in representatives]
        coefficients = solve_rational(basis, rhs)
        if coefficients is None:
            raise InvariantViolation("idempotent class-value matrix is singular")
        remainder = schur - linear_combination(zip(coefficients, (idempotents[ab] for ab in domain)))
        if not remainder.is_zero():
            failures.append(f"E{left} o E{right} is not in the span of the idempotents")
        for ab, coefficient in zip(domain, coefficients):
            tensor.set(left, right, ab, coefficient * size)
            tensor.set(right, left, ab, coefficient * size)
    return tensor, failures
