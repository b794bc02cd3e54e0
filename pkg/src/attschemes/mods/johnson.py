"""
The non-binary Johnson scheme J_r(n, m): closed-form eigenvalues, explicit
enumeration, the embedding into A_q(n, ell, m) for r = q^ell + 1, and the
q -> 1 limit of the attenuated-space eigenvalues.
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Any, Dict, List, Tuple

import mpmath
import numpy as np

from attschemes.data_models.report import CheckResult
from attschemes.data_models.scheme_params import Index, JohnsonParams, SchemeParams
from attschemes.exceptions import ConfigError, InvariantViolation, VerificationFailure
from attschemes.mods.attenuated import SchemeInstance, brute_intersection_numbers, check_axioms, enumerate_vertices, pair_relation
from attschemes.mods.exactnum import HighPrecisionReal, QPowers, binomial, format_exact, hyp_2F1, hyp_3F2, is_prime, q_binomial
from attschemes.mods.spectra import FormulaContext
from attschemes.mods.structure import intersection_values
from attschemes.utils.exact_matrix import ExactMatrix, linear_combination
from attschemes.utils.finite_field import FieldContext

logger = logging.getLogger(__name__)

MAX_JOHNSON_VERTICES = 5000
TAIL_LENGTH = 8


def krawtchouk(i: int, big_n: int, r: int, x: int) -> Fraction:
    """K~_i(N, r-1; x), scaled to be the eigenvalue polynomial of the Hamming-type factor."""
    if i < 0 or i > big_n:
        return Fraction(0)
    if r == 2:
        return (-1) ** i * binomial(x, i)
    series = hyp_2F1(-i, -x, -big_n, Fraction(r - 1, r - 2), order=min(i, x))
    return binomial(big_n, i) * (r - 2) ** i * series


def dual_hahn(j: int, big_n: int, big_m: int, y: int) -> Fraction:
    """E~_j(N, M; y); zero outside 0 <= j <= min(M, N-M)."""
    if j < 0 or j > min(big_m, big_n - big_m):
        return Fraction(0)
    series = hyp_3F2(-j, -y, y - big_n - 1, -big_m, -(big_n - big_m), 1, order=min(j, y))
    return binomial(big_m, j) * binomial(big_n - big_m, j) * series


def hahn(j: int, big_n: int, big_m: int, y: int) -> Fraction:
    """Q~_j(N, M; y); zero outside 0 <= j <= min(M, N-M)."""
    if j < 0 or j > min(big_m, big_n - big_m):
        return Fraction(0)
    series = hyp_3F2(-y, -j, j - big_n - 1, -big_m, -(big_n - big_m), 1, order=min(j, y))
    return (binomial(big_n, j) - binomial(big_n, j - 1)) * series


def johnson_eigens(params: JohnsonParams, i: int, j: int, x: int, y: int) -> Tuple[Fraction, Fraction]:
    """
    (T~_ij(x,y), U~_ij(x,y)).

    T~_ij(x,y) is the eigenvalue of relation (j,i) on idempotent (y,x), and
    U~_ij(x,y) the coefficient of relation (y,x) in idempotent (j,i).

    Raises:
        DomainIndexError: If (j,i) or (y,x) is outside the domain
    """
    params.require((j, i), "degree index")
    params.require((y, x), "variable index")
    n, m, r = params.n, params.m, params.r
    eigen = Fraction(r - 1) ** j * krawtchouk(i, m - j, r, x) * dual_hahn(j, n - x, m - x, y)
    dual = binomial(n, i) / binomial(m, i) * krawtchouk(i, m - y, r, x) * hahn(j, n - i, m - i, y)
    return eigen, dual


def johnson_relation(x: np.ndarray, y: np.ndarray, m: int) -> Index:
    """(m - c, c - e) with c the common support size and e the number of agreeing nonzero letters."""
    both = (x > 0) & (y > 0)
    c = int(both.sum())
    e = int((both & (x == y)).sum())
    return (m - c, c - e)


def enumerate_words(params: JohnsonParams) -> np.ndarray:
    """Weight-m words of length n over {0..r-1}, ordered by support and then by letters."""
    words = []
    for support in combinations(range(params.n), params.m):
        for letters in product(range(1, params.r), repeat=params.m):
            word = np.zeros(params.n, dtype=np.uint8)
            word[list(support)] = letters
            words.append(word)
    return np.array(words, dtype=np.uint8).reshape(len(words), params.n)


def enumerate_johnson(params: JohnsonParams, verify: bool = True, threads: int = 1) -> SchemeInstance:
    """
    Build J_r(n, m) explicitly.

    Raises:
        ConfigError: If the vertex count exceeds MAX_JOHNSON_VERTICES
        VerificationFailure: If an axiom check fails
    """
    if params.vertex_count > MAX_JOHNSON_VERTICES:
        raise ConfigError(f"J_{params.r}({params.n},{params.m}) has {params.vertex_count} vertices, limit is {MAX_JOHNSON_VERTICES}")
    words = enumerate_words(params)
    size = len(words)
    lookup = np.full((params.m + 1, params.m + 1), -1, dtype=np.int16)
    for k, (a, b) in enumerate(params.domain):
        lookup[a, b] = k
    nonzero = words > 0
    common = nonzero.astype(np.int64) @ nonzero.T.astype(np.int64)
    classes = np.zeros((size, size), dtype=np.int16)
    for x in range(size):
        agree = ((words == words[x]) & nonzero & nonzero[x]).sum(axis=1)
        classes[x] = lookup[params.m - common[x], common[x] - agree]
    if np.any(classes < 0):
        raise InvariantViolation(f"a word pair of J_{params.r}({params.n},{params.m}) has no relation label")
    instance = SchemeInstance(params, words, classes)
    logger.info("Built J_%d(%d,%d) with %d vertices", params.r, params.n, params.m, size)
    if verify:
        failed = [result.name for result in check_axioms(instance, threads=threads) if not result.passed]
        if failed:
            raise VerificationFailure(f"scheme axioms failed for J_{params.r}({params.n},{params.m}): {', '.join(failed)}", failed)
    return instance


def check_johnson_eigens(instance: SchemeInstance) -> List[CheckResult]:
    """
    Valencies, multiplicities and the eigen-identity A_(j,i) E_(y,x) = T~_ij(x,y) E_(y,x)
    with E_(c,d) = (1/|X|) sum U~ A built from the closed forms.
    """
    params: JohnsonParams = instance.params
    domain = instance.domain
    size = instance.vertex_count
    results = []

    failures = []
    for j, i in domain:
        eigen, _ = johnson_eigens(params, i, j, 0, 0)
        if eigen != instance.valency((j, i)):
            failures.append(f"T~{(i, j)}(0,0) = {format_exact(eigen)}, valency of {(j, i)} is {instance.valency((j, i))}")
    multiplicities = [johnson_eigens(params, i, j, 0, 0)[1] for j, i in domain]
    if sum(multiplicities) != size:
        failures.append(f"multiplicities sum to {format_exact(sum(multiplicities))}, expected {size}")
    results.append(CheckResult.from_failures("johnson.valency", len(domain) + 1, failures))

    classes = instance.classes.astype(np.intp)
    idempotents = {}
    for j, i in domain:
        values = [johnson_eigens(params, i, j, x, y)[1] / size for y, x in domain]
        idempotents[(j, i)] = ExactMatrix.from_class_values(classes, values)
    failures = []
    if linear_combination((Fraction(1), matrix) for matrix in idempotents.values()) != ExactMatrix.identity(size):
        failures.append("sum of idempotents is not the identity")
    for j, i in domain:
        adjacency = instance.adjacency((j, i))
        for y, x in domain:
            eigen, _ = johnson_eigens(params, i, j, x, y)
            if adjacency @ idempotents[(y, x)] != idempotents[(y, x)].scale(eigen):
                failures.append(f"A{(j, i)} E{(y, x)} != T~{(i, j)}{(x, y)} E{(y, x)}")
    results.append(CheckResult.from_failures("johnson.eigen", len(domain) ** 2 + 1, failures))
    return results


def eberlein(a: int, n: int, m: int, y: int) -> int:
    """Eigenvalue of distance-a in the binary Johnson scheme J(n, m) on eigenspace y, by direct summation."""
    return sum((-1) ** t * math.comb(y, t) * math.comb(m - y, a - t) * math.comb(n - m - y, a - t) for t in range(a + 1))


def check_binary(n: int, m: int) -> CheckResult:
    """At r = 2 the closed forms reduce to the binary Johnson eigenvalues."""
    params = JohnsonParams(2, n, m)
    failures = []
    top = min(m, n - m)
    for a in range(top + 1):
        for y in range(top + 1):
            eigen, _ = johnson_eigens(params, 0, a, 0, y)
            if eigen != eberlein(a, n, m, y):
                failures.append(f"distance {a} on eigenspace {y}: {format_exact(eigen)} != {eberlein(a, n, m, y)}")
    return CheckResult.from_failures(f"johnson.binary({n},{m})", (top + 1) ** 2, failures)


def embedding_phi(params: SchemeParams, field_context: Any = None) -> Tuple[Dict[int, int], CheckResult]:
    """
    The embedding of J_r(n, m), r = q^ell + 1, into A_q(n, ell, m).

    Letter k is sent to the k-th element of w in lexicographic order (k = 1
    goes to 0) and coordinate i to the i-th standard basis vector; a word is
    sent to the span of f_i + phi(letter_i) over its support.

    The check asserts injectivity, that the first relation index is
    preserved, and that the second index never increases and is preserved
    whenever it is at most 1. The second index of an image pair is the rank
    of the letter differences in w, so it can drop when two or more
    positions differ; such pairs are counted in ``strict_mismatches``.

    Returns:
        (word index -> vertex index, check result)
    """
    q, n, ell, m = params.q, params.n, params.ell, params.m
    johnson = JohnsonParams(q**ell + 1, n, m)
    field_context = field_context or FieldContext(q)
    w_elements = list(product(range(q), repeat=ell))
    vertices = enumerate_vertices(params, field_context)
    position = {vertex.tobytes(): k for k, vertex in enumerate(vertices)}
    words = enumerate_words(johnson)

    images = []
    failures = []
    for word in words:
        basis = np.zeros((m, n + ell), dtype=np.uint8)
        for row, coordinate in enumerate(np.flatnonzero(word)):
            basis[row, coordinate] = 1
            basis[row, n:] = w_elements[int(word[coordinate]) - 1]
        if basis.tobytes() not in position:
            failures.append(f"image of {word.tolist()} is not a vertex")
            continue
        images.append(basis)
    mapping = {k: position[basis.tobytes()] for k, basis in enumerate(images)}
    if len(set(mapping.values())) != len(words):
        failures.append("the embedding is not injective")

    strict = 0
    if not failures:
        rows = [basis.tolist() for basis in images]
        for x, y in product(range(len(words)), repeat=2):
            a, b = johnson_relation(words[x], words[y], m)
            image = pair_relation(rows[x], rows[y], n, m, field_context)
            if image[0] != a or image[1] > b or (b <= 1 and image[1] != b):
                failures.append(f"{words[x].tolist()}, {words[y].tolist()} in {(a, b)} maps to {image}")
            elif image != (a, b):
                strict += 1
    detail = {"r": johnson.r, "images": len(mapping), "strict_mismatches": strict}
    return mapping, CheckResult.from_failures(f"johnson.embedding({q},{ell},{n},{m})", len(words) ** 2, failures, detail)


def _exponents() -> List[int]:
    return list(range(4, 21))


@dataclass
class LimitConfig:
    """The q = p^h, q^ell = r - 1 regime: h runs over 2^-k for k in ``exponents``."""

    p: int
    r: int
    n: int
    m: int
    exponents: List[int] = field(default_factory=_exponents)
    precision: int = 256
    tolerance: Fraction = Fraction(1, 10**8)

    def __post_init__(self):
        if not is_prime(self.p):
            raise ConfigError(f"p must be prime, got {self.p}")
        if self.r < 3:
            raise ConfigError(f"the limit needs r >= 3, got r={self.r}")
        if len(self.exponents) < 2 or sorted(self.exponents) != list(self.exponents) or len(set(self.exponents)) != len(self.exponents):
            raise ConfigError("h exponents must be strictly increasing with at least two entries")
        if self.exponents[-1] - 1 not in self.exponents:
            raise ConfigError("the h sequence must contain 2h for its last point")
        self.johnson = JohnsonParams(self.r, self.n, self.m)

    def context(self, k: int) -> FormulaContext:
        """Evaluation context at h = 2^-k (call inside the working precision)."""
        q = mpmath.exp(mpmath.ldexp(1, -k) * mpmath.log(self.p))
        return FormulaContext(QPowers(q, mpmath.mpf(self.r - 1)), self.n, self.m, None)


class _Sequence:
    """Errors e(h) of one approximated quantity along the h sequence."""

    def __init__(self, config: LimitConfig, target: Fraction):
        self.config = config
        self.target = target
        self.values: Dict[int, Any] = {}

    def record(self, k: int, value: Any) -> None:
        self.values[k] = value

    def evaluate(self) -> Tuple[bool, Dict[str, Any]]:
        config = self.config
        with mpmath.workprec(config.precision):
            target = mpmath.mpf(self.target.numerator) / self.target.denominator
            scale = max(mpmath.mpf(1), abs(target))
            errors = [abs(self.values[k] - target) for k in config.exponents]
            last = config.exponents[-1]
            extrapolated = 2 * self.values[last] - self.values[last - 1]
            final = abs(extrapolated - target)
            floor = mpmath.ldexp(scale, -(config.precision - 40))
            tail = errors[-TAIL_LENGTH:]
            monotone = all(later <= earlier + floor for earlier, later in zip(tail, tail[1:]))
            within = final < scale * mpmath.mpf(config.tolerance.numerator) / config.tolerance.denominator
            report = {
                "target": format_exact(self.target),
                "h": [f"2^-{k}" for k in config.exponents],
                "errors": [HighPrecisionReal(e, config.precision).to_decimal(12) for e in errors],
                "extrapolated_error": HighPrecisionReal(final, config.precision).to_decimal(12),
                "monotone_tail": monotone,
                "within_tolerance": bool(within),
            }
        return monotone and bool(within), report


def limit_check(config: LimitConfig) -> Tuple[List[CheckResult], Dict[str, Any]]:
    """
    Compare T_ji(y,x) and U_ji(y,x) at q = p^h with T~_ij(x,y) and U~_ij(x,y),
    and |X| with its Johnson count, along the h sequence.

    Returns:
        (check results, convergence report keyed by quantity)
    """
    johnson = config.johnson
    domain = johnson.domain
    sequences: Dict[str, _Sequence] = {}
    for j, i in domain:
        for y, x in domain:
            eigen, dual = johnson_eigens(johnson, i, j, x, y)
            sequences[f"T{(j, i)}{(y, x)}"] = _Sequence(config, eigen)
            sequences[f"U{(j, i)}{(y, x)}"] = _Sequence(config, dual)
    sequences["cardinality"] = _Sequence(config, Fraction(johnson.vertex_count))

    with mpmath.workprec(config.precision):
        for k in config.exponents:
            context = config.context(k)
            for j, i in domain:
                for y, x in domain:
                    sequences[f"T{(j, i)}{(y, x)}"].record(k, context.eigenvalue(j, i, y, x))
                    sequences[f"U{(j, i)}{(y, x)}"].record(k, context.dual_eigenvalue(j, i, y, x))
            qp = context.qp
            sequences["cardinality"].record(k, qp(0, config.m) * q_binomial(config.n, config.m, qp.q))
            logger.debug("Limit point h=2^-%d evaluated", k)

    report: Dict[str, Any] = {}
    failures = {"eigen": [], "cardinality": []}
    for name, sequence in sequences.items():
        passed, report[name] = sequence.evaluate()
        if not passed:
            failures["cardinality" if name == "cardinality" else "eigen"].append(f"{name}: extrapolated error {report[name]['extrapolated_error']}")
    results = [
        CheckResult.from_failures("limit.eigenvalues", len(sequences) - 1, failures["eigen"]),
        CheckResult.from_failures("limit.cardinality", 1, failures["cardinality"]),
    ]
    return results, report


def intersection_limit_report(config: LimitConfig, threads: int = 1) -> Dict[str, Any]:
    """
    Closed-form generator intersection numbers at the last h against those of
    the enumerated J_r(n, m). Reported only; no tolerance is asserted.
    """
    johnson = config.johnson
    instance = enumerate_johnson(johnson, verify=False, threads=threads)
    brute, _ = brute_intersection_numbers(instance, threads=threads)
    with mpmath.workprec(config.precision):
        context = config.context(config.exponents[-1])
        values = intersection_values(context.qp, config.n, config.m, johnson.in_domain, johnson.domain)
        rows = []
        for (key, index, target), value in sorted(values.items()):
            exact = brute.get(key, index, target)
            error = abs(value - mpmath.mpf(exact.numerator) / exact.denominator)
            rows.append({"key": list(key), "index": list(index), "target": list(target), "johnson": format_exact(exact), "error": mpmath.nstr(error, 12)})
    return {"h": f"2^-{config.exponents[-1]}", "entries": rows}
