"""Dual adjacency matrices and the tridiagonal relations for a set of base vertices."""

import logging
from typing import List

from attschemes.data_models.report import CheckResult
from attschemes.mods.subconstituent import build_dual, verify_lemma_EAE, verify_tridiagonal
from attschemes.verifiers.base_verifier import BaseVerifier, VerificationContext

logger = logging.getLogger(__name__)


def default_bases(vertex_count: int) -> List[int]:
    """First, middle and last vertex (fewer when the scheme is tiny)."""
    return sorted({0, vertex_count // 2, vertex_count - 1})


class SubconstituentVerifier(BaseVerifier):
    """Checks for ``verify --scope subconstituent``."""

    scope = "subconstituent"

    def verify(self, context: VerificationContext) -> List[CheckResult]:
        context.require_params(self.scope)
        instance = context.instance
        idempotents = context.idempotents
        p_tensor, _ = context.brute_p()
        q_tensor, _ = context.brute_q()
        bases = self.bases if self.bases is not None else default_bases(instance.vertex_count)

        results: List[CheckResult] = []
        for base in bases:
            dual = build_dual(instance, idempotents, base)
            results.extend(self._timed(dual.verify))
            results.extend(self._timed(lambda d=dual: verify_lemma_EAE(d, p_tensor, q_tensor)))
            results.extend(self._timed(lambda d=dual: verify_tridiagonal(d)))
            logger.info("Base vertex %d done", base)
        return results
