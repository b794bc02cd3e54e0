"""Verification scopes for ``verify --scope``."""

from .base_verifier import BaseVerifier, VerificationContext

SCOPES = ("all", "spectra", "bispectral", "structure", "subconstituent", "johnson")


def get_verifier(scope: str, **kwargs) -> BaseVerifier:
    """
    Factory function to get verifier instance.

    Args:
        scope: Name of the scope ('all', 'spectra', 'bispectral', 'structure', 'subconstituent', 'johnson')
        **kwargs: Verifier configuration (threads, rank_limit, bases, poison)

    Returns:
        Verifier instance

    Raises:
        ValueError: If scope name is unknown
    """
    if scope == "spectra":
        from .spectra_verifier import SpectraVerifier

        return SpectraVerifier(**kwargs)

    elif scope == "bispectral":
        from .bispectral_verifier import BispectralVerifier

        return BispectralVerifier(**kwargs)

    elif scope == "structure":
        from .structure_verifier import StructureVerifier

        return StructureVerifier(**kwargs)

    elif scope == "subconstituent":
        from .subconstituent_verifier import SubconstituentVerifier

        return SubconstituentVerifier(**kwargs)

    elif scope == "johnson":
        from .johnson_verifier import JohnsonVerifier

        return JohnsonVerifier(**kwargs)

    elif scope == "all":
        from .all_verifier import AllVerifier

        return AllVerifier(**kwargs)

    else:
        raise ValueError(f"Unknown scope: {scope}")


__all__ = ["get_verifier", "BaseVerifier", "VerificationContext", "SCOPES"]
