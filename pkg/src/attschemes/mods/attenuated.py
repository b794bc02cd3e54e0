"""
Vertex enumeration, relation assignment and brute-force structure constants
for the attenuated-space scheme A_q(n, ell, m).

Vertices are m-dimensional subspaces of F_q^(n+ell) meeting w trivially,
where w is spanned by the last ell coordinate vectors. Such a subspace has
a reduced row-echelon basis with every pivot among the first n columns.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from itertools import combinations, combinations_with_replacement, product
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from attschemes.data_models.parameter_tensor import ParameterTensor
from attschemes.data_models.report import CheckResult
from attschemes.data_models.scheme_params import Index, JohnsonParams, SchemeParams
from attschemes.exceptions import InvariantViolation, VerificationFailure
from attschemes.utils.exact_matrix import ExactMatrix, int_matmul
from attschemes.utils.finite_field import FieldContext

logger = logging.getLogger(__name__)


def enumerate_vertices(params: SchemeParams, field: Optional[FieldContext] = None) -> np.ndarray:
    """
    Enumerate the vertex set in canonical order.

    Bases are generated by pivot profile (lexicographic) and then by free
    entries (lexicographic), so each subspace appears exactly once.

    Args:
        params: Scheme parameters
        field: Arithmetic tables for F_q (built when omitted)

    Returns:
        uint8 array of shape (|X|, m, n + ell) holding RREF bases

    Raises:
        FieldNotSupportedError: If q is not in the field table
        InvariantViolation: If the count disagrees with q^(m ell) [n m]_q
    """
    field = field or FieldContext(params.q)
    n, ell, m = params.n, params.ell, params.m
    width = n + ell
    bases: List[np.ndarray] = []
    for pivots in combinations(range(n), m):
        pivot_set = set(pivots)
        free = [(row, col) for row, pivot in enumerate(pivots) for col in range(pivot + 1, width) if col not in pivot_set]
        template = np.zeros((m, width), dtype=np.uint8)
        for row, pivot in enumerate(pivots):
            template[row, pivot] = 1
        for values in product(range(field.q), repeat=len(free)):
            basis = template.copy()
            for (row, col), value in zip(free, values):
                basis[row, col] = value
            bases.append(basis)

    vertices = np.array(bases, dtype=np.uint8).reshape(len(bases), m, width)
    if len(vertices) != params.vertex_count:
        raise InvariantViolation(f"enumerated {len(vertices)} vertices for {params}, expected {params.vertex_count}")
    logger.info("Enumerated %d vertices of %s", len(vertices), params)
    return vertices


def relation_of(x: np.ndarray, y: np.ndarray, params: SchemeParams, field: Optional[FieldContext] = None) -> Index:
    """
    The relation (i, j) containing the pair (x, y).

    i = m - dim((x+w)/w ∩ (y+w)/w) and i + j = m - dim(x ∩ y).

    Raises:
        InvariantViolation: If (i, j) falls outside the domain
    """
    field = field or FieldContext(params.q)
    index = pair_relation(x.tolist(), y.tolist(), params.n, params.m, field)
    if not params.in_domain(index):
        raise InvariantViolation(f"pair relation {index} lies outside the domain of {params}")
    return index


def pair_relation(x_rows: Sequence[Sequence[int]], y_rows: Sequence[Sequence[int]], n: int, m: int, field: FieldContext) -> Index:
    if m == 0:
        return (0, 0)
    projected = field.rank([row[:n] for row in x_rows] + [row[:n] for row in y_rows])
    full = field.rank(list(x_rows) + list(y_rows))
    return (projected - m, full - projected)


class SchemeInstance:
    """An explicitly built scheme (attenuated-space or Johnson): vertices plus the relation-class matrix."""

    def __init__(self, params: Union[SchemeParams, JohnsonParams], vertices: np.ndarray, classes: np.ndarray):
        """
        Initialize a scheme instance.

        Args:
            params: Scheme parameters
            vertices: RREF bases of shape (|X|, m, n + ell), or Johnson words of shape (|X|, n)
            classes: int16 matrix; entry (x, y) is the position of the relation of (x, y) in the deg-lex domain
        """
        self.params = params
        self.vertices = vertices
        self.classes = classes
        self.domain: List[Index] = params.domain
        self.class_index: Dict[Index, int] = {ij: k for k, ij in enumerate(self.domain)}
        self._adjacency: Dict[Index, np.ndarray] = {}

    @property
    def vertex_count(self) -> int:
        return int(self.classes.shape[0])

    def relation(self, x: int, y: int) -> Index:
        return self.domain[int(self.classes[x, y])]

    def adjacency_array(self, index: Index) -> np.ndarray:
        """Dense 0/1 int64 adjacency matrix of relation ``index``."""
        self.params.require(index, "relation")
        if index not in self._adjacency:
            self._adjacency[index] = (self.classes == self.class_index[index]).astype(np.int64)
        return self._adjacency[index]

    def adjacency(self, index: Index) -> ExactMatrix:
        return ExactMatrix(self.adjacency_array(index))

    def adjacency_csr(self, index: Index) -> Tuple[np.ndarray, np.ndarray]:
        """(indptr, indices) of relation ``index`` with sorted column lists."""
        mask = self.classes == self.class_index[index]
        indptr = np.concatenate(([0], np.cumsum(mask.sum(axis=1)))).astype(np.int32)
        indices = np.nonzero(mask)[1].astype(np.int32)
        return indptr, indices

    def valency(self, index: Index) -> int:
        return int(np.count_nonzero(self.classes[0] == self.class_index[index]))

    def class_sizes(self, base: int = 0) -> Dict[Index, int]:
        counts = np.bincount(self.classes[base].astype(np.int64), minlength=len(self.domain))
        return {ij: int(counts[k]) for k, ij in enumerate(self.domain)}

    def representative(self, index: Index) -> Optional[Tuple[int, int]]:
        """First pair (x, y) in row-major order lying in relation ``index``."""
        hits = np.flatnonzero(self.classes.ravel() == self.class_index[index])
        if hits.size == 0:
            return None
        x, y = divmod(int(hits[0]), self.vertex_count)
        return x, y

    def __repr__(self) -> str:
        return f"SchemeInstance({self.params}, |X|={self.vertex_count}, classes={len(self.domain)})"


def compute_classes(params: SchemeParams, vertices: np.ndarray, field: FieldContext, threads: int = 1) -> np.ndarray:
    """Relation-class matrix of the vertex list (pairs computed once, mirrored; one task per row)."""
    domain_index = {ij: k for k, ij in enumerate(params.domain)}
    rows = [vertex.tolist() for vertex in vertices]
    size = len(rows)
    classes = np.zeros((size, size), dtype=np.int16)

    def sweep(x: int) -> Tuple[int, List[int]]:
        row = []
        for y in range(x + 1, size):
            index = pair_relation(rows[x], rows[y], params.n, params.m, field)
            if index not in domain_index:
                raise InvariantViolation(f"pair ({x}, {y}) has relation {index} outside the domain of {params}")
            row.append(domain_index[index])
        return x, row

    with ThreadPoolExecutor(max_workers=max(threads, 1)) as executor:
        for x, row in executor.map(sweep, range(size)):
            classes[x, x + 1 :] = row
            classes[x + 1 :, x] = row
    return classes


def build_scheme(params: SchemeParams, field: Optional[FieldContext] = None, verify: bool = True, threads: int = 1) -> SchemeInstance:
    """
    Build A_q(n, ell, m) from first principles.

    Args:
        params: Scheme parameters
        field: Arithmetic tables for F_q (built when omitted)
        verify: Check the scheme axioms by explicit matrix computation
        threads: Worker threads for the pair and product sweeps

    Returns:
        The scheme instance

    Raises:
        VerificationFailure: If an axiom check fails (the message names it)
    """
    field = field or FieldContext(params.q)
    vertices = enumerate_vertices(params, field)
    classes = compute_classes(params, vertices, field, threads=threads)
    instance = SchemeInstance(params, vertices, classes)
    logger.info("Built %r", instance)
    if verify:
        results = check_axioms(instance, threads=threads)
        failed = [result.name for result in results if not result.passed]
        if failed:
            witnesses = "; ".join(w for result in results for w in result.failures[:3])
            raise VerificationFailure(f"scheme axioms failed for {params}: {', '.join(failed)} ({witnesses})", failed)
    return instance


def brute_intersection_numbers(instance: SchemeInstance, threads: int = 1) -> Tuple[ParameterTensor, List[str]]:
    """
    Intersection numbers p_{mn,ij}^{ab} read from the products A_mn A_ij.

    A product is accepted only if it is symmetric (commutativity, since the
    A are symmetric) and constant on every relation class.

    Returns:
        (tensor, failure witnesses)
    """
    domain = instance.domain
    classes = instance.classes.astype(np.intp)
    representatives = [instance.representative(ab) for ab in domain]
    tensor = ParameterTensor("p")
    failures: List[str] = []

    def expand(pair: Tuple[Index, Index]) -> Tuple[Index, Index, List[int], List[str]]:
        left, right = pair
        product_matrix = int_matmul(instance.adjacency_array(left), instance.adjacency_array(right))
        problems = []
        if not np.array_equal(product_matrix, product_matrix.T):
            problems.append(f"A{left} A{right} != A{right} A{left}")
        table = [int(product_matrix[rep]) if rep is not None else 0 for rep in representatives]
        if not np.array_equal(product_matrix, np.asarray(table, dtype=np.int64)[classes]):
            problems.append(f"A{left} A{right} is not constant on the relation classes")
        return left, right, table, problems

    # Instantiate adjacency caches before the worker threads read them.
    for index in domain:
        instance.adjacency_array(index)
    pairs = list(combinations_with_replacement(domain, 2))
    with ThreadPoolExecutor(max_workers=max(threads, 1)) as executor:
        for left, right, table, problems in executor.map(expand, pairs):
            failures.extend(problems)
            for ab, value in zip(domain, table):
                tensor.set(left, right, ab, value)
                tensor.set(right, left, ab, value)
    logger.debug("Brute intersection numbers: %d nonzero entries", len(tensor))
    return tensor, failures


def check_axioms(instance: SchemeInstance, threads: int = 1) -> List[CheckResult]:
    """
    Verify the symmetric association scheme axioms.

    Returns:
        One CheckResult per axiom: identity, partition, symmetry, products
    """
    classes = instance.classes
    size = instance.vertex_count
    results = []

    identity_failures = []
    if np.any(np.diagonal(classes) != 0):
        identity_failures.append("a diagonal pair is not in relation (0,0)")
    if np.count_nonzero(classes == 0) != size:
        identity_failures.append("an off-diagonal pair is in relation (0,0)")
    results.append(CheckResult.from_failures("axiom.identity", size, identity_failures))

    sizes = instance.class_sizes(0)
    total = sum(instance.adjacency_array(ij) for ij in instance.domain)
    partition_failures = [f"relation {ij} is empty" for ij, count in sizes.items() if count == 0]
    if not np.array_equal(total, np.ones((size, size), dtype=np.int64)):
        partition_failures.append("adjacency matrices do not sum to the all-ones matrix")
    results.append(
        CheckResult.from_failures("axiom.partition", len(instance.domain), partition_failures, {"class_sizes": {str(k): v for k, v in sizes.items()}})
    )

    symmetry_failures = [] if np.array_equal(classes, classes.T) else ["relation matrix is not symmetric"]
    results.append(CheckResult.from_failures("axiom.symmetry", size * size, symmetry_failures))

    _, product_failures = brute_intersection_numbers(instance, threads=threads)
    checked = len(instance.domain) * (len(instance.domain) + 1) // 2
    results.append(CheckResult.from_failures("axiom.products", checked, product_failures))
    return results
