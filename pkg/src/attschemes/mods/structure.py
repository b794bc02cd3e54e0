"""
Closed-form intersection numbers and Krein parameters, the monomial and
partial orders on index pairs, P-/Q-compatibility checks and the bivariate
polynomials v_ij and v*_rs.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

import sympy

from attschemes.data_models.parameter_tensor import ParameterTensor
from attschemes.data_models.report import CheckResult
from attschemes.data_models.residual import RelationResidual
from attschemes.data_models.scheme_params import Index, SchemeParams
from attschemes.exceptions import ArithmeticDomainError, ConfigError, InvariantViolation
from attschemes.mods.bispectral import SEVEN_POINT_OFFSETS, DifferenceCoeffs, RecurrenceCoeffs
from attschemes.mods.exactnum import Number, QPowers
from attschemes.mods.spectra import EigenGrid
from attschemes.mods.unipoly import Coefficient

logger = logging.getLogger(__name__)

LESS = "less"
EQUAL = "equal"
GREATER = "greater"
INCOMPARABLE = "incomparable"

GENERATOR_X: Index = (1, 0)
GENERATOR_Y: Index = (0, 1)

_X, _Y = sympy.symbols("x y")


@dataclass(frozen=True)
class OrderSpec:
    """
    An order on index pairs: "deg-lex", "deg-lex-prime", or "partial" with weights (alpha, beta).

    ``monomial`` names the total order a partial order must be compatible with.
    """

    kind: str
    alpha: Fraction = Fraction(0)
    beta: Fraction = Fraction(0)
    monomial: Optional[str] = None

    def __post_init__(self):
        if self.kind not in ("deg-lex", "deg-lex-prime", "partial"):
            raise ConfigError(f"unknown order kind: {self.kind}")
        if self.kind != "partial":
            return
        if not (0 <= self.alpha <= 1 and 0 <= self.beta <= 1):
            raise ConfigError(f"order weights must lie in [0, 1], got alpha={self.alpha}, beta={self.beta}")
        if self.alpha * self.beta == 1:
            raise ConfigError("order weights must satisfy alpha * beta != 1")
        if self.monomial == "deg-lex" and not self.alpha < 1:
            raise ConfigError("a partial order compatible with deg-lex needs alpha < 1")
        if self.monomial == "deg-lex-prime" and not self.beta < 1:
            raise ConfigError("a partial order compatible with deg-lex-prime needs beta < 1")

    @classmethod
    def partial(cls, alpha, beta, monomial: Optional[str] = None) -> "OrderSpec":
        return cls("partial", Fraction(alpha), Fraction(beta), monomial)

    @property
    def sort_key(self) -> Callable[[Index], Tuple[int, int]]:
        """Sort key of a total order."""
        if self.kind == "deg-lex":
            return lambda ab: (ab[0] + ab[1], ab[0])
        if self.kind == "deg-lex-prime":
            return lambda ab: (ab[0] + ab[1], ab[1])
        raise ConfigError("a partial order has no sort key")


DEG_LEX = OrderSpec("deg-lex")
DEG_LEX_PRIME = OrderSpec("deg-lex-prime")
P_ORDER = OrderSpec.partial(0, 1, "deg-lex")
Q_ORDER = OrderSpec.partial(1, 0, "deg-lex-prime")


def order_compare(spec: OrderSpec, a: Index, b: Index) -> str:
    """
    Compare two index pairs.

    Returns:
        "less", "equal", "greater", or "incomparable" (partial orders only)
    """
    if a == b:
        return EQUAL
    if spec.kind != "partial":
        return LESS if spec.sort_key(a) < spec.sort_key(b) else GREATER

    def below(u: Index, v: Index) -> bool:
        return u[0] + spec.alpha * u[1] <= v[0] + spec.alpha * v[1] and spec.beta * u[0] + u[1] <= spec.beta * v[0] + v[1]

    if below(a, b):
        return LESS
    if below(b, a):
        return GREATER
    return INCOMPARABLE


def precedes(spec: OrderSpec, a: Index, b: Index) -> bool:
    return order_compare(spec, a, b) in (LESS, EQUAL)


def intersection_values(qp: QPowers, n: int, m: int, in_domain: Callable[[Index], bool], domain: List[Index]) -> Dict[Tuple[Index, Index, Index], Number]:
    """
    p_{10,ij}^{ab} and p_{01,ij}^{ab} from their closed forms for a base given by ``qp``.

    Only generator slices whose generator lies in the domain are filled.
    """
    q, ell_q = qp(1), qp(0, 1)
    b_zero = RecurrenceCoeffs(qp, n, m).b
    values: Dict[Tuple[Index, Index, Index], Number] = {}
    one_minus_q = 1 - q

    def b_tilde(eps: int, i: int, j: int) -> Number:
        if eps == 1:
            return qp(i + j) * (1 - qp(j + 1)) / one_minus_q
        if eps == -1:
            return (ell_q - qp(j - 1)) * (qp(i + j - 1) - qp(m)) / one_minus_q
        return ((ell_q - 1) * (1 - qp(m)) - qp(i + j - 1) * (1 - qp(j)) - (ell_q - qp(j)) * (qp(i + j) - qp(m))) / one_minus_q

    def c_tilde(offset: Tuple[int, int], i: int, j: int) -> Number:
        square = one_minus_q**2
        table = {
            (1, 0): lambda: qp(j) * (1 - qp(i + 1)) ** 2,
            (1, -1): lambda: (ell_q - qp(j - 1)) * (1 - qp(i + 1)) ** 2,
            (0, 1): lambda: qp(i + j + 1) * (1 - qp(i)) * (1 - qp(j + 1)),
            (0, 0): lambda: ell_q * q * (1 - qp(i)) * (1 - qp(n - m) + qp(i) - qp(m) - (1 - qp(i)) / q - qp(m) * b_zero(0, i, j)),
            (0, -1): lambda: (ell_q - qp(j - 1)) * (1 - qp(i)) * (qp(i + j) - qp(m + 1)),
            (-1, 1): lambda: ell_q * qp(i) * (1 - qp(j + 1)) * (qp(i - 1) - qp(n - m)),
            (-1, 0): lambda: ell_q * (qp(i + j) - qp(m + 1)) * (qp(i - 1) - qp(n - m)),
        }
        return table[offset]() / square

    for i, j in domain:
        if in_domain(GENERATOR_Y):
            for eps in (1, 0, -1):
                target = (i, j + eps)
                if in_domain(target):
                    values[(GENERATOR_Y, (i, j), target)] = b_tilde(eps, i, j)
        if in_domain(GENERATOR_X):
            for offset in SEVEN_POINT_OFFSETS:
                target = (i + offset[0], j + offset[1])
                if in_domain(target):
                    values[(GENERATOR_X, (i, j), target)] = c_tilde(offset, i, j)
    return values


def intersection_formula(params: SchemeParams) -> ParameterTensor:
    """Exact p_{10,ij}^{ab} and p_{01,ij}^{ab} of a scheme from their closed forms."""
    tensor = ParameterTensor("p")
    for (key, index, target), value in intersection_values(params.powers(), params.n, params.m, params.in_domain, params.domain).items():
        tensor.set(key, index, target, value)
    logger.debug("Intersection formula for %s: %d nonzero entries", params, len(tensor))
    return tensor


def krein_formula(params: SchemeParams) -> ParameterTensor:
    """
    q_{10,rs}^{ab} and q_{01,rs}^{ab} from their closed forms.

    Raises:
        ArithmeticDomainError: If a coefficient with a target inside the domain has a vanishing denominator
    """
    qp = params.powers()
    q, ell_q = qp(1), qp(0, 1)
    n, m = params.n, params.m
    big_b = DifferenceCoeffs(params).b_value
    tensor = ParameterTensor("q")
    one_minus_q = 1 - q

    def b_tilde(eps: int, r: int, s: int) -> Coefficient:
        common = one_minus_q * (1 - qp(-m)) * (1 - qp(m - n))
        if eps == 1:
            return Coefficient(
                qp(r + s) * (1 - qp(-n)) * (1 - qp(-n + 1)) * (1 - qp(r + 1)) * (1 - qp(r + m - n)) * (1 - qp(r + s - m)),
                common * (1 - qp(2 * r + s - n)) * (1 - qp(2 * r + s - n + 1)),
            )
        if eps == -1:
            return Coefficient(
                q * (1 - qp(n - 1)) * (1 - qp(-n)) * (1 - qp(r + m - n - 1)) * (1 - qp(r + s - m - 1)) * (1 - qp(r + s - n - 2)),
                common * (1 - qp(2 * r + s - n - 2)) * (1 - qp(2 * r + s - n - 3)),
            )
        b_zero = -big_b(1, r, s) - big_b(-1, r, s)
        return Coefficient(q * (1 - qp(n - 1)) / one_minus_q + q * (1 - qp(n - 1)) * (1 - qp(-n)) / common * b_zero)

    def c_tilde(offset: Tuple[int, int], r: int, s: int) -> Coefficient:
        common = one_minus_q * (1 - qp(-m))
        if offset == (1, 0):
            return Coefficient(
                -qp(r + s) * (1 - qp(-n)) * (1 - qp(s)) * (1 - qp(r + 1)) * (1 - qp(r + m - n)) * (1 - qp(r + s - m)),
                common * (1 - qp(2 * r + s - n)) * (1 - qp(2 * r + s - n + 1)),
            )
        if offset == (-1, 0):
            return Coefficient(
                -(1 - qp(n)) * (1 - qp(s)) * (1 - qp(r + s - n - 2)) * (1 - qp(r + s - m - 1)) * (1 - qp(r + m - n - 1)),
                common * (1 - qp(2 * r + s - n - 2)) * (1 - qp(2 * r + s - n - 3)),
            )
        if offset == (0, 0):
            b_zero = -big_b(1, r, s) - big_b(-1, r, s)
            return Coefficient(
                (1 - qp(n)) * (1 - qp(s)) * (ell_q + qp(m) - qp(s) - qp(s - 1) - 1 + qp(m) * b_zero),
                one_minus_q * (1 - qp(m)),
            )
        if offset == (-1, 1):
            return Coefficient(-qp(s - m) * (1 - qp(n)) * (1 - qp(s + 1)) * (1 - qp(r + m - n - 1)), common * (1 - qp(2 * r + s - n - 2)))
        if offset == (0, 1):
            return Coefficient(qp(r + s) * (1 - qp(-n)) * (1 - qp(s + 1)) * (1 - qp(r + s - m)), common * (1 - qp(2 * r + s - n)))
        if offset == (1, -1):
            return Coefficient(
                -qp(s - m - 1) * (ell_q - qp(s - 1)) * (1 - qp(r + m - n)) * (1 - qp(n)) * (1 - qp(r + 1)),
                common * (1 - qp(2 * r + s - n)),
            )
        return Coefficient(
            (ell_q - qp(s - 1)) * (1 - qp(n)) * (1 - qp(r + s - m - 1)) * (1 - qp(r + s - n - 2)),
            common * (1 - qp(2 * r + s - n - 2)),
        )

    for r, s in params.domain:
        if params.in_domain(GENERATOR_X):
            for eps in (1, 0, -1):
                target = (r + eps, s)
                if params.in_domain(target):
                    tensor.set(GENERATOR_X, (r, s), target, b_tilde(eps, r, s).value())
        if params.in_domain(GENERATOR_Y):
            for offset in SEVEN_POINT_OFFSETS:
                target = (r + offset[0], s + offset[1])
                if params.in_domain(target):
                    tensor.set(GENERATOR_Y, (r, s), target, c_tilde(offset, r, s).value())
    logger.debug("Krein formula for %s: %d nonzero entries", params, len(tensor))
    return tensor


def _compat_check(name: str, tensor: ParameterTensor, params: SchemeParams, spec: OrderSpec) -> CheckResult:
    failures = []
    checked = 0
    for generator in (GENERATOR_X, GENERATOR_Y):
        if not params.in_domain(generator):
            continue
        for index in params.domain:
            bound = (index[0] + generator[0], index[1] + generator[1])
            for target, value in tensor.row(generator, index).items():
                checked += 1
                if value and not precedes(spec, target, bound):
                    failures.append(f"{tensor.kind}_{generator},{index}^{target} = {value} but {target} is not below {bound}")
            if params.in_domain(bound):
                checked += 1
                if not tensor.get(generator, index, bound):
                    failures.append(f"{tensor.kind}_{generator},{index}^{bound} vanishes")
    return CheckResult.from_failures(name, checked, failures)


def check_P_compat(tensor: ParameterTensor, params: SchemeParams, spec: OrderSpec = P_ORDER) -> CheckResult:  # pylint: disable=invalid-name
    """
    Every nonzero p_{e_k,ij}^{ab} has (a,b) below (i,j)+e_k, and the top
    coefficient p_{e_k,ij}^{(i,j)+e_k} is nonzero inside the domain.
    """
    return _compat_check("structure.p_compat", tensor, params, spec)


def check_Q_compat(tensor: ParameterTensor, params: SchemeParams, spec: OrderSpec = Q_ORDER) -> CheckResult:  # pylint: disable=invalid-name
    """Mirror of check_P_compat on the Krein parameters."""
    return _compat_check("structure.q_compat", tensor, params, spec)


def compare_tensors(name: str, formula: ParameterTensor, brute: ParameterTensor) -> CheckResult:
    """Entrywise equality of a formula table with the brute table on the formula's generator slices."""
    keys = formula.keys() or [GENERATOR_X, GENERATOR_Y]
    differences = formula.differences(brute.restrict(keys))
    failures = [f"{formula.kind}_{key},{index}^{target}: formula {a}, computed {b}" for (key, index, target), a, b in differences]
    return CheckResult.from_failures(name, len(formula) + len(failures), failures)


def valency_identities(tensor: ParameterTensor, grid: EigenGrid) -> List[RelationResidual]:
    """
    For each generator k: sum_ij p_{k,ij}^{ab} = k_k over every (a,b), and
    sum_ab p_{k,ij}^{ab} k_ab = k_k k_ij over every (i,j).
    """
    residuals = []
    domain = grid.domain
    for generator in tensor.keys():
        valency = grid.valency(generator)
        for ab in domain:
            column = sum((tensor.get(generator, ij, ab) for ij in domain), Fraction(0))
            residuals.append(RelationResidual("pcolumn", (generator, ab), column, valency))
        for ij in domain:
            weighted = sum((value * grid.valency(ab) for ab, value in tensor.row(generator, ij).items()), Fraction(0))
            residuals.append(RelationResidual("prow", (generator, ij), weighted, valency * grid.valency(ij)))
    return residuals


def verify_generator_relations(grid: EigenGrid, p_tensor: ParameterTensor, q_tensor: ParameterTensor) -> List[RelationResidual]:
    """
    T_k(r,s) T_ij(r,s) = sum p_{k,ij}^{ab} T_ab(r,s) and
    U_k(i,j) U_rs(i,j) = sum q_{k,rs}^{ab} U_ab(i,j) for the generators k.
    """
    residuals = []
    domain = grid.domain
    for generator in p_tensor.keys():
        for ij in domain:
            row = p_tensor.row(generator, ij)
            for rs in domain:
                rhs = sum((value * grid.t(ab, rs) for ab, value in row.items()), Fraction(0))
                residuals.append(RelationResidual(f"Tprod{generator}", (ij, rs), grid.t(generator, rs) * grid.t(ij, rs), rhs))
    for generator in q_tensor.keys():
        for rs in domain:
            row = q_tensor.row(generator, rs)
            for ij in domain:
                rhs = sum((value * grid.u(ab, ij) for ab, value in row.items()), Fraction(0))
                residuals.append(RelationResidual(f"Uprod{generator}", (rs, ij), grid.u(generator, ij) * grid.u(rs, ij), rhs))
    return sorted(residuals, key=RelationResidual.sort_key)


class BivariatePoly:
    """A polynomial in x, y with rational coefficients (``sympy.Poly`` over QQ)."""

    def __init__(self, poly: sympy.Poly):
        self.poly = poly

    @classmethod
    def constant(cls, value) -> "BivariatePoly":
        return cls(sympy.Poly(_rational(value), _X, _Y, domain="QQ"))

    @classmethod
    def variable(cls, name: str) -> "BivariatePoly":
        return cls(sympy.Poly(_X if name == "x" else _Y, _X, _Y, domain="QQ"))

    def coefficients(self) -> Dict[Index, Fraction]:
        """Map (d1, d2) -> coefficient of x^d1 y^d2, nonzero entries only."""
        return {tuple(monom): Fraction(int(coeff.p), int(coeff.q)) for monom, coeff in self.poly.terms() if coeff != 0}

    def multidegree(self, spec: OrderSpec = DEG_LEX) -> Index:
        """The largest monomial under a total order."""
        return max(self.coefficients(), key=spec.sort_key)

    def leading_coefficient(self, spec: OrderSpec = DEG_LEX) -> Fraction:
        return self.coefficients()[self.multidegree(spec)]

    def is_compatible(self, spec: OrderSpec, degree: Index) -> bool:
        """All monomials lie below ``degree`` in ``spec``."""
        return all(precedes(spec, monom, degree) for monom in self.coefficients())

    def evaluate(self, x: Fraction, y: Fraction) -> Fraction:
        total = Fraction(0)
        for (d1, d2), coeff in self.coefficients().items():
            total += coeff * Fraction(x) ** d1 * Fraction(y) ** d2
        return total

    def __str__(self) -> str:
        return str(self.poly.as_expr())


def _rational(value) -> sympy.Rational:
    value = Fraction(value)
    return sympy.Rational(value.numerator, value.denominator)


def _solve(
    domain: List[Index], order: OrderSpec, tensors: Dict[str, ParameterTensor], plan: Callable[[Index], Tuple[str, Index]]
) -> Dict[Index, BivariatePoly]:
    """
    Back-solve the polynomial family in ascending ``order``.

    ``plan(target)`` names the generator variable and source index whose
    relation "var * v_source = sum coeff * v_ab" determines v_target.
    """
    polys: Dict[Index, BivariatePoly] = {(0, 0): BivariatePoly.constant(1)}
    for target in sorted(domain, key=order.sort_key):
        if target == (0, 0):
            continue
        variable, source = plan(target)
        generator = GENERATOR_X if variable == "x" else GENERATOR_Y
        row = tensors[variable].row(generator, source)
        lead = row.get(target, Fraction(0))
        if lead == 0:
            raise ArithmeticDomainError(f"recurrence degenerate at {target}")
        accumulated = BivariatePoly.variable(variable).poly * polys[source].poly
        for ab, value in row.items():
            if ab == target:
                continue
            if ab not in polys:
                raise InvariantViolation(f"v{ab} is needed for v{target} but not yet known")
            accumulated = accumulated - polys[ab].poly * _rational(value)
        polys[target] = BivariatePoly(accumulated * _rational(1 / lead))
    return polys


def bivariate_v(params: SchemeParams, p_tensor: ParameterTensor) -> Dict[Index, BivariatePoly]:
    """
    v_ij with T_ij(r,s) = v_ij(T_10(r,s), T_01(r,s)).

    v_{i,j+1} comes from the three-term relation in y at (i,j); v_{i+1,0}
    from the seven-term relation in x at (i,0).
    """
    if not params.is_bivariate:
        raise ConfigError(f"{params} does not have both generators (1,0) and (0,1)")

    def plan(target: Index) -> Tuple[str, Index]:
        a, b = target
        return ("y", (a, b - 1)) if b > 0 else ("x", (a - 1, 0))

    return _solve(params.domain, DEG_LEX, {"x": p_tensor, "y": p_tensor}, plan)


def bivariate_v_star(params: SchemeParams, q_tensor: ParameterTensor) -> Dict[Index, BivariatePoly]:
    """
    v*_rs with U_rs(i,j) = v*_rs(U_10(i,j), U_01(i,j)).

    v*_{r+1,s} comes from the three-term relation in x at (r,s); v*_{0,s+1}
    from the seven-term relation in y at (0,s).
    """
    if not params.is_bivariate:
        raise ConfigError(f"{params} does not have both generators (1,0) and (0,1)")

    def plan(target: Index) -> Tuple[str, Index]:
        a, b = target
        return ("x", (a - 1, b)) if a > 0 else ("y", (0, b - 1))

    return _solve(params.domain, DEG_LEX_PRIME, {"x": q_tensor, "y": q_tensor}, plan)


def check_polynomials(
    name: str, polys: Dict[Index, BivariatePoly], spec: OrderSpec, total: OrderSpec, values: Callable[[Index, Index], Fraction], points: List[Index]
) -> CheckResult:
    """
    Multidegree, compatibility and grid reproduction of a polynomial family.

    ``values(index, point)`` is the grid value the polynomial must reproduce
    at the generator values of ``point``.
    """
    failures = []
    for index, poly in polys.items():
        if poly.multidegree(total) != index:
            failures.append(f"multidegree of {name}{index} is {poly.multidegree(total)}")
        if not poly.is_compatible(spec, index):
            failures.append(f"{name}{index} has a monomial not below {index}")
        for point in points:
            got = poly.evaluate(values(GENERATOR_X, point), values(GENERATOR_Y, point))
            if got != values(index, point):
                failures.append(f"{name}{index} at {point}: {got} != {values(index, point)}")
    return CheckResult.from_failures(f"structure.{name}", len(polys) * (len(points) + 2), failures)


def polynomial_rows(polys: Dict[Index, BivariatePoly]) -> List[Dict[str, str]]:
    return [{"i": str(index[0]), "j": str(index[1]), "poly": str(poly)} for index, poly in sorted(polys.items(), key=lambda item: DEG_LEX.sort_key(item[0]))]
