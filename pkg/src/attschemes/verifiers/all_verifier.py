"""Every scope in sequence over one shared context."""

from typing import List

from attschemes.data_models.report import CheckResult
from attschemes.verifiers.base_verifier import BaseVerifier, VerificationContext
from attschemes.verifiers.bispectral_verifier import BispectralVerifier
from attschemes.verifiers.johnson_verifier import JohnsonVerifier
from attschemes.verifiers.spectra_verifier import SpectraVerifier
from attschemes.verifiers.structure_verifier import StructureVerifier
from attschemes.verifiers.subconstituent_verifier import SubconstituentVerifier


class AllVerifier(BaseVerifier):
    """Checks for ``verify --scope all``; only the johnson scope runs on Johnson-only input."""

    scope = "all"

    def verify(self, context: VerificationContext) -> List[CheckResult]:
        scopes = [SpectraVerifier, BispectralVerifier, StructureVerifier, SubconstituentVerifier, JohnsonVerifier]
        if context.params is None:
            scopes = [JohnsonVerifier]
        results: List[CheckResult] = []
        for verifier_class in scopes:
            results.extend(verifier_class(**self.kwargs).verify(context))
        return results
