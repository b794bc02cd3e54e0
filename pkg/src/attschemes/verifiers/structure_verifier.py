"""Intersection numbers, Krein parameters, order compatibility and the bivariate polynomials."""

import logging
from typing import List

from attschemes.data_models.parameter_tensor import ParameterTensor
from attschemes.data_models.report import CheckResult
from attschemes.exceptions import InvariantViolation
from attschemes.mods.structure import (
    DEG_LEX,
    DEG_LEX_PRIME,
    P_ORDER,
    Q_ORDER,
    bivariate_v,
    bivariate_v_star,
    check_P_compat,
    check_polynomials,
    check_Q_compat,
    compare_tensors,
    valency_identities,
    verify_generator_relations,
)
from attschemes.verifiers.base_verifier import BaseVerifier, VerificationContext

logger = logging.getLogger(__name__)


def poisoned(tensor: ParameterTensor) -> ParameterTensor:
    """Copy of ``tensor`` with its first nonzero entry increased by one."""
    copy = ParameterTensor(tensor.kind)
    entries = list(tensor.items())
    if not entries:
        raise InvariantViolation(f"cannot poison an empty {tensor.kind} table")
    for position, ((key, index, target), value) in enumerate(entries):
        copy.set(key, index, target, value + 1 if position == 0 else value)
    logger.warning("Poisoned %s_%s,%s^%s", tensor.kind, *entries[0][0])
    return copy


class StructureVerifier(BaseVerifier):
    """Checks for ``verify --scope structure``."""

    scope = "structure"

    def verify(self, context: VerificationContext) -> List[CheckResult]:
        params = context.require_params(self.scope)
        grid = context.grid
        formula_p, formula_q = context.formula_p(), context.formula_q()
        if self.poison == "p":
            formula_p = poisoned(formula_p)
        elif self.poison == "q":
            formula_q = poisoned(formula_q)

        results: List[CheckResult] = []
        brute_p, p_failures = context.brute_p()
        results.extend(self._timed(lambda: compare_tensors("structure.p_formula", formula_p, brute_p)))
        results.extend(self._timed(lambda: self._krein(context, formula_q)))
        results.extend(self._timed(lambda: check_P_compat(formula_p, params, P_ORDER)))
        results.extend(self._timed(lambda: check_Q_compat(formula_q, params, Q_ORDER)))
        results.extend(self._timed(lambda: self.residual_check("structure.valency_identities", valency_identities(brute_p, grid))))
        results.extend(self._timed(lambda: self.residual_check("structure.generator_relations", verify_generator_relations(grid, formula_p, formula_q))))
        if p_failures:
            results.append(CheckResult.from_failures("structure.p_brute", 1, p_failures))

        if params.is_bivariate:
            points = grid.domain
            results.extend(self._timed(lambda: check_polynomials("v", bivariate_v(params, formula_p), P_ORDER, DEG_LEX, grid.t, points)))
            results.extend(self._timed(lambda: check_polynomials("v_star", bivariate_v_star(params, formula_q), Q_ORDER, DEG_LEX_PRIME, grid.u, points)))
        else:
            results.append(CheckResult.skipped("structure.v", f"{params} lacks a generator relation"))
            results.append(CheckResult.skipped("structure.v_star", f"{params} lacks a generator relation"))
        logger.info("Structure scope: %d checks", len(results))
        return results

    @staticmethod
    def _krein(context: VerificationContext, formula_q: ParameterTensor) -> List[CheckResult]:
        """Formula Krein parameters against the Schur-product expansion, and non-negativity."""
        brute_q, failures = context.brute_q()
        results = [compare_tensors("structure.q_formula", formula_q, brute_q)]
        negative = [f"q_{key},{index}^{target} = {value}" for (key, index, target), value in brute_q.items() if value < 0]
        results.append(CheckResult.from_failures("structure.krein_nonnegative", len(brute_q), negative + failures))
        return results
