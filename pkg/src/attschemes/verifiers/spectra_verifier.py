"""Scheme axioms, eigenvalue tables and primitive idempotents."""

import logging
from typing import List

from attschemes.data_models.report import CheckResult
from attschemes.mods.attenuated import check_axioms
from attschemes.mods.exactnum import format_exact
from attschemes.mods.spectra import check_closed_forms, wilson_duality_check
from attschemes.verifiers.base_verifier import BaseVerifier, VerificationContext

logger = logging.getLogger(__name__)


class SpectraVerifier(BaseVerifier):
    """Checks for ``verify --scope spectra``."""

    scope = "spectra"

    def verify(self, context: VerificationContext) -> List[CheckResult]:
        context.require_params(self.scope)
        results: List[CheckResult] = []
        results.extend(self._timed(lambda: check_axioms(context.instance, threads=self.threads)))
        results.extend(self._timed(lambda: self._valencies(context)))
        results.extend(self._timed(lambda: self.residual_check("spectra.wilson", wilson_duality_check(context.grid))))
        results.extend(self._timed(lambda: self.residual_check("spectra.closed_forms", check_closed_forms(context.grid))))
        results.extend(self._timed(lambda: context.idempotents.verify(self.rank_limit)))
        logger.info("Spectra scope: %d checks", len(results))
        return results

    @staticmethod
    def _valencies(context: VerificationContext) -> CheckResult:
        """T_ij(0,0) against the row sums of the built adjacency matrices."""
        instance, grid = context.instance, context.grid
        failures = []
        for ij in instance.domain:
            if grid.valency(ij) != instance.valency(ij):
                failures.append(f"T{ij}(0,0) = {format_exact(grid.valency(ij))}, row sum {instance.valency(ij)}")
        detail = {"valencies": {str(ij): format_exact(grid.valency(ij)) for ij in instance.domain}, "vertex_count": instance.vertex_count}
        return CheckResult.from_failures("spectra.valency", len(instance.domain), failures, detail)
