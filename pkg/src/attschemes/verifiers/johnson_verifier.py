"""The non-binary Johnson scheme and its embedding into the attenuated space."""

import logging
from typing import List, Optional

from attschemes.data_models.report import CheckResult
from attschemes.data_models.scheme_params import JohnsonParams
from attschemes.mods.attenuated import check_axioms
from attschemes.mods.johnson import MAX_JOHNSON_VERTICES, check_binary, check_johnson_eigens, embedding_phi, enumerate_johnson
from attschemes.verifiers.base_verifier import BaseVerifier, VerificationContext

logger = logging.getLogger(__name__)


class JohnsonVerifier(BaseVerifier):
    """
    Checks for ``verify --scope johnson``.

    With Johnson parameters the closed forms are checked on J_r(n, m). With
    attenuated parameters the companion J_(q^ell + 1)(n, m) is checked and
    embedded into A_q(n, ell, m).
    """

    scope = "johnson"

    def verify(self, context: VerificationContext) -> List[CheckResult]:
        johnson = self._johnson_params(context)
        results: List[CheckResult] = []
        if johnson.vertex_count > MAX_JOHNSON_VERTICES:
            results.append(CheckResult.skipped("johnson.eigen", f"{johnson.vertex_count} vertices exceed {MAX_JOHNSON_VERTICES}"))
        else:
            instance = enumerate_johnson(johnson, verify=False, threads=self.threads)
            for result in self._timed(lambda: check_axioms(instance, threads=self.threads)):
                result.name = f"johnson.{result.name}"
                results.append(result)
            results.extend(self._timed(lambda: check_johnson_eigens(instance)))
        results.extend(self._timed(lambda: check_binary(johnson.n, johnson.m)))

        params = context.params
        if params is not None:
            if params.vertex_count > MAX_JOHNSON_VERTICES or johnson.vertex_count > MAX_JOHNSON_VERTICES:
                results.append(CheckResult.skipped("johnson.embedding", f"{params} is too large for an exhaustive embedding check"))
            else:
                results.extend(self._timed(lambda: embedding_phi(params)[1]))
        logger.info("Johnson scope: %d checks", len(results))
        return results

    @staticmethod
    def _johnson_params(context: VerificationContext) -> JohnsonParams:
        johnson: Optional[JohnsonParams] = context.johnson
        if johnson is not None:
            return johnson
        params = context.require_params("johnson")
        return JohnsonParams(params.q**params.ell + 1, params.n, params.m)
