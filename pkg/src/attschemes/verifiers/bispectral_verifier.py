"""Recurrences, difference equations and the algebra generated by X, Y, X*, Y*."""

import logging
from typing import List

from attschemes.data_models.report import CheckResult
from attschemes.mods.bispectral import build_operators, support_check, verify_algebra, verify_differences, verify_operator_action, verify_recurrences
from attschemes.mods.unipoly import verify_E_relations, verify_K_relations
from attschemes.verifiers.base_verifier import BaseVerifier, VerificationContext

logger = logging.getLogger(__name__)

# largest N swept for the univariate families
UNIVARIATE_MAX_N = 5


class BispectralVerifier(BaseVerifier):
    """Checks for ``verify --scope bispectral``. Needs the eigenvalue grid only, not the built scheme."""

    scope = "bispectral"

    def verify(self, context: VerificationContext) -> List[CheckResult]:
        params = context.require_params(self.scope)
        grid = context.grid
        results: List[CheckResult] = []
        results.extend(self._timed(lambda: self.univariate(params.q, params.ell)))
        results.extend(self._timed(lambda: self.residual_check("bispectral.recurrence", verify_recurrences(grid))))
        results.extend(self._timed(lambda: self.residual_check("bispectral.difference", verify_differences(grid))))

        operators = build_operators(grid)
        results.extend(self._timed(lambda: verify_operator_action(operators, grid)))
        results.extend(self._timed(lambda: support_check(operators)))
        results.extend(self._timed(lambda: verify_algebra(operators)))
        logger.info("Bispectral scope: %d checks", len(results))
        return results

    def univariate(self, q: int, ell: int) -> List[CheckResult]:
        """The K and E relation families for every N up to UNIVARIATE_MAX_N at this q."""
        k_residuals = []
        e_residuals = []
        for big_n in range(1, UNIVARIATE_MAX_N + 1):
            if ell > 0:
                k_residuals.extend(verify_K_relations(big_n, ell, q))
            for m in range(big_n + 1):
                e_residuals.extend(verify_E_relations(big_n, m, q))
        results = [self.residual_check("univariate.E", e_residuals)]
        if ell > 0:
            results.insert(0, self.residual_check("univariate.K", k_residuals))
        else:
            results.insert(0, CheckResult.skipped("univariate.K", "ell = 0"))
        return results
