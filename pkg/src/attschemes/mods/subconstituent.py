"""
Dual adjacency matrices and dual idempotents with respect to a base vertex,
and the tridiagonal relations they satisfy with the adjacency matrices.
"""

import logging
from fractions import Fraction
from typing import Dict, List

import numpy as np

from attschemes.data_models.parameter_tensor import ParameterTensor
from attschemes.data_models.report import CheckResult
from attschemes.data_models.scheme_params import Index, SchemeParams
from attschemes.exceptions import ConfigError
from attschemes.mods.attenuated import SchemeInstance
from attschemes.mods.bispectral import tridiagonal_form
from attschemes.mods.exactnum import format_exact
from attschemes.mods.spectra import IdempotentSet
from attschemes.utils.exact_matrix import ExactMatrix, anticommutator, commutator

logger = logging.getLogger(__name__)


class DualPair:
    """A*_rs and E*_ij for one base vertex; both are diagonal and stored by their diagonals."""

    def __init__(self, instance: SchemeInstance, idempotents: IdempotentSet, base: int):
        """
        Raises:
            ConfigError: If ``base`` is not a vertex
        """
        if not 0 <= base < instance.vertex_count:
            raise ConfigError(f"base vertex {base} is outside 0..{instance.vertex_count - 1}")
        self.instance = instance
        self.idempotents = idempotents
        self.base = base
        size = instance.vertex_count
        self.masks: Dict[Index, np.ndarray] = {ij: instance.classes[base] == k for ij, k in instance.class_index.items()}
        self.a_star_diagonals: Dict[Index, List[Fraction]] = {}
        for rs in instance.domain:
            row = idempotents[rs]
            self.a_star_diagonals[rs] = [Fraction(int(v) * size, row.den) for v in row.num[base]]
        self._a_star: Dict[Index, ExactMatrix] = {}

    def a_star(self, rs: Index) -> ExactMatrix:
        if rs not in self._a_star:
            self._a_star[rs] = ExactMatrix.diagonal(self.a_star_diagonals[rs])
        return self._a_star[rs]

    def e_star(self, ij: Index) -> ExactMatrix:
        return ExactMatrix(np.diag(self.masks[ij].astype(np.int64)))

    def verify(self) -> CheckResult:
        """E* partition the identity, A*_00 = I, and A*_rs = sum U_rs(i,j) E*_ij."""
        grid = self.idempotents.grid
        failures = []
        cover = sum(mask.astype(np.int64) for mask in self.masks.values())
        if not np.all(cover == 1):
            failures.append("dual idempotents do not partition the vertex set")
        if any(value != 1 for value in self.a_star_diagonals[(0, 0)]):
            failures.append("A*(0, 0) != I")
        classes = self.instance.classes[self.base]
        domain = self.instance.domain
        for rs, diagonal in self.a_star_diagonals.items():
            for y, value in enumerate(diagonal):
                if value != grid.U[(rs, domain[int(classes[y])])]:
                    failures.append(f"A*{rs} at vertex {y} is {format_exact(value)}, expected U{rs}{domain[int(classes[y])]}")
                    break
        return CheckResult.from_failures(f"dual.invariants[{self.base}]", len(domain) + 2, failures)

    def sizes(self) -> Dict[Index, int]:
        return {ij: int(mask.sum()) for ij, mask in self.masks.items()}


def build_dual(instance: SchemeInstance, idempotents: IdempotentSet, base: int) -> DualPair:
    dual = DualPair(instance, idempotents, base)
    logger.debug("Dual pair for base %d: %s", base, dual.sizes())
    return dual


def verify_lemma_EAE(dual: DualPair, p_tensor: ParameterTensor, q_tensor: ParameterTensor) -> List[CheckResult]:  # pylint: disable=invalid-name
    """
    E*_ij A_mn E*_rs = 0 iff p_{ij,mn}^{rs} = 0, and E_ij A*_mn E_rs = 0 iff q_{ij,mn}^{rs} = 0.

    Returns:
        One result per statement, witnesses naming the triple and direction
    """
    instance = dual.instance
    domain = instance.domain
    base = dual.base

    failures = []
    for mn in domain:
        adjacency = instance.adjacency_array(mn)
        for ij in domain:
            block = adjacency[dual.masks[ij]]
            for rs in domain:
                product_zero = not np.any(block[:, dual.masks[rs]])
                parameter_zero = p_tensor.get(ij, mn, rs) == 0
                if product_zero != parameter_zero:
                    direction = "product vanishes, parameter does not" if product_zero else "parameter vanishes, product does not"
                    failures.append(f"E*{ij} A{mn} E*{rs}: {direction}")
    results = [CheckResult.from_failures(f"lemma.adjacency[{base}]", len(domain) ** 3, failures)]

    failures = []
    idempotents = dual.idempotents
    for mn in domain:
        diagonal = dual.a_star_diagonals[mn]
        for rs in domain:
            # A*_mn E_rs, using E_rs = E_rs^T
            scaled = idempotents[rs].scale_columns(diagonal).T
            for ij in domain:
                product_zero = (idempotents[ij] @ scaled).is_zero()
                parameter_zero = q_tensor.get(ij, mn, rs) == 0
                if product_zero != parameter_zero:
                    direction = "product vanishes, parameter does not" if product_zero else "parameter vanishes, product does not"
                    failures.append(f"E{ij} A*{mn} E{rs}: {direction}")
    results.append(CheckResult.from_failures(f"lemma.dual[{base}]", len(domain) ** 3, failures))
    return results


class CentralParams:
    """
    The elements gamma, rho, chi, zeta, xi, eta_0, eta_1 of the tridiagonal relations.

    gamma, rho and eta_1 are polynomials in A_01 and xi is affine in A*_10;
    the scalar methods evaluate them at an eigenvalue of that matrix.
    """

    def __init__(self, params: SchemeParams):
        self.params = params
        qp = params.powers()
        self.qp = qp
        q = qp(1)
        n, m = params.n, params.m
        self.q = q
        self.eta0 = qp(-1, 1) * (2 * (1 - qp(n - m - 1)) / (1 - q) + qp(n - m - 1) * (1 - q))
        self.eta1_constant = -(1 - qp(m)) / (1 - q)
        self.gamma_constant = qp(-1, 1) * (1 + qp(n - m + 1))
        self.rho_constant = qp(-1, 2) * (1 - qp(n - m + 2)) * (1 - qp(n - m)) / (1 - q) ** 2
        self.chi = qp(-m) * (1 - qp(n - 1)) / (1 - qp(n - m)) * (1 - qp(m) - (1 - qp(n)) / (1 - qp(m)))
        self.zeta = (1 - qp(m) - qp(0, 1)) / q
        self.xi_constant = (1 - qp(m) - qp(0, 1) * (1 - qp(n)) / (1 - qp(m))) / q
        self.xi_slope = qp(m - 2) * (1 - q) * (1 - qp(n - m)) / (1 - qp(n - 1))

    def eta1(self, a01: Fraction) -> Fraction:
        return self.eta1_constant - a01

    def gamma(self, a01: Fraction) -> Fraction:
        return (1 - self.q) * self.eta1(a01) + self.gamma_constant

    def rho(self, a01: Fraction) -> Fraction:
        eta1 = self.eta1(a01)
        return self.q * eta1 * (eta1 + self.eta0) + self.rho_constant

    def xi(self, a_star10: Fraction) -> Fraction:
        return self.xi_constant + self.xi_slope * a_star10

    def matrices(self, a01: ExactMatrix, a_star10: ExactMatrix) -> Dict[str, ExactMatrix]:
        """gamma, rho, eta_1 and xi as |X| x |X| matrices."""
        unit = ExactMatrix.identity(a01.shape[0])
        eta1 = unit.scale(self.eta1_constant) - a01
        return {
            "eta1": eta1,
            "gamma": eta1.scale(1 - self.q) + unit.scale(self.gamma_constant),
            "rho": (eta1 @ eta1).scale(self.q) + eta1.scale(self.q * self.eta0) + unit.scale(self.rho_constant),
            "xi": unit.scale(self.xi_constant) + a_star10.scale(self.xi_slope),
        }


def verify_tridiagonal(dual: DualPair) -> List[CheckResult]:
    """
    The commutation of A_01 with A*_10, the two relations between A_10 and
    A*_10, the two relations between A_01 and A*_01, and the centrality of
    the operator-valued parameters.
    """
    instance = dual.instance
    params = instance.params
    base = dual.base
    if not params.is_bivariate:
        return [CheckResult.skipped(f"tridiagonal[{base}]", f"{params} lacks a generator relation")]

    central = CentralParams(params)
    q = central.q
    a10, a01 = instance.adjacency((1, 0)), instance.adjacency((0, 1))
    s10, s01 = dual.a_star((1, 0)), dual.a_star((0, 1))
    named = central.matrices(a01, s10)
    gamma, rho, xi = named["gamma"], named["rho"], named["xi"]
    chi, zeta = central.chi, central.zeta

    residuals = {
        "commute": commutator(a01, s10),
        "gamma_rho": commutator(a10, -tridiagonal_form(a10, s10, q) + gamma @ anticommutator(a10, s10) + rho @ s10),
        "chi": commutator(s10, -tridiagonal_form(s10, a10, q) + anticommutator(s10, a10).scale((1 - q) * chi) + a10.scale(q * chi * chi)),
        "zeta": commutator(a01, -tridiagonal_form(a01, s01, q) + anticommutator(a01, s01).scale((1 - q) * zeta) + s01.scale(q * zeta * zeta)),
        "xi": commutator(s01, -tridiagonal_form(s01, a01, q) + (xi @ anticommutator(s01, a01)).scale(1 - q) + (xi @ xi @ a01).scale(q)),
    }
    results = []
    for name, residual in residuals.items():
        failures = [] if residual.is_zero() else [f"{name}: max |residual| = {format_exact(residual.max_abs_entry())}"]
        results.append(CheckResult.from_failures(f"tridiagonal.{name}[{base}]", 1, failures))

    failures = []
    for label, element, partners in (
        ("gamma", gamma, (a10, s10)),
        ("rho", rho, (a10, s10)),
        ("eta1", named["eta1"], (a10, s10)),
        ("xi", xi, (a01, s01)),
    ):
        for partner in partners:
            if not commutator(element, partner).is_zero():
                failures.append(f"{label} does not commute with a generator")
    results.append(CheckResult.from_failures(f"tridiagonal.central[{base}]", 8, failures))
    return results
