"""Base class and shared state for verification scopes."""

import logging
import time
from abc import ABC, abstractmethod
from typing import Any, Callable, Dict, List, Optional, Tuple

from attschemes.data_models.parameter_tensor import ParameterTensor
from attschemes.data_models.report import CheckResult
from attschemes.data_models.residual import RelationResidual
from attschemes.data_models.scheme_params import JohnsonParams, SchemeParams
from attschemes.exceptions import ConfigError
from attschemes.mods.attenuated import SchemeInstance, brute_intersection_numbers, build_scheme
from attschemes.mods.spectra import EigenGrid, IdempotentSet, brute_krein
from attschemes.mods.structure import intersection_formula, krein_formula
from attschemes.utils.config import DEFAULT_RANK_LIMIT, ENV_RANK_LIMIT, ENV_THREADS, get_int_param

logger = logging.getLogger(__name__)

POISON_TABLES = ("p", "q")


class VerificationContext:
    """
    The scheme under test and everything derived from it, computed on first use
    so that several scopes in one run share the expensive objects.
    """

    def __init__(
        self,
        params: Optional[SchemeParams] = None,
        johnson: Optional[JohnsonParams] = None,
        instance: Optional[SchemeInstance] = None,
        threads: int = 1,
    ):
        """
        Initialize a context.

        Args:
            params: Attenuated-space parameters (taken from ``instance`` when given)
            johnson: Johnson parameters for the johnson scope
            instance: A loaded scheme; built from ``params`` on demand otherwise
            threads: Worker threads for the product sweeps

        Raises:
            ConfigError: If no parameters are given
        """
        if instance is not None:
            if isinstance(instance.params, JohnsonParams):
                johnson = johnson or instance.params
                instance = None
            else:
                params = instance.params
        if params is None and johnson is None:
            raise ConfigError("scheme parameters required: give -i FILE, -q/-n/-l/-m or -r/-n/-m")
        self.params = params
        self.johnson = johnson
        self.threads = threads
        self._instance = instance
        self._cache: Dict[str, Any] = {}

    def require_params(self, scope: str) -> SchemeParams:
        if self.params is None:
            raise ConfigError(f"scope {scope} needs attenuated-space parameters (-q -n -l -m or -i FILE)")
        return self.params

    @property
    def instance(self) -> SchemeInstance:
        if self._instance is None:
            self._instance = build_scheme(self.require_params("verify"), verify=False, threads=self.threads)
        return self._instance

    def _cached(self, key: str, factory: Callable[[], Any]) -> Any:
        if key not in self._cache:
            self._cache[key] = factory()
        return self._cache[key]

    @property
    def grid(self) -> EigenGrid:
        return self._cached("grid", lambda: EigenGrid.from_params(self.require_params("verify")))

    @property
    def idempotents(self) -> IdempotentSet:
        return self._cached("idempotents", lambda: IdempotentSet(self.instance, self.grid))

    def brute_p(self) -> Tuple[ParameterTensor, List[str]]:
        return self._cached("brute_p", lambda: brute_intersection_numbers(self.instance, threads=self.threads))

    def brute_q(self) -> Tuple[ParameterTensor, List[str]]:
        return self._cached("brute_q", lambda: brute_krein(self.idempotents))

    def formula_p(self) -> ParameterTensor:
        return self._cached("formula_p", lambda: intersection_formula(self.require_params("structure")))

    def formula_q(self) -> ParameterTensor:
        return self._cached("formula_q", lambda: krein_formula(self.require_params("structure")))


class BaseVerifier(ABC):
    """Base class for verification scopes."""

    scope = "base"

    def __init__(self, **kwargs):
        """
        Initialize verifier with configuration.

        Args:
            **kwargs: Verifier configuration including:
                - threads: Worker threads (or ATTSCHEMES_THREADS env var)
                - rank_limit: Largest |X| ranked by elimination (or ATTSCHEMES_RANK_LIMIT env var)
                - bases: Base vertices for the subconstituent scope
                - poison: "p" or "q" to corrupt one formula entry (harness self-test)
        """
        self.kwargs = kwargs
        self.threads = get_int_param("threads", ENV_THREADS, kwargs, 1)
        self.rank_limit = get_int_param("rank_limit", ENV_RANK_LIMIT, kwargs, DEFAULT_RANK_LIMIT)
        self.bases: Optional[List[int]] = kwargs.get("bases")
        self.poison: Optional[str] = kwargs.get("poison")
        if self.poison is not None and self.poison not in POISON_TABLES:
            raise ConfigError(f"poison must be one of {', '.join(POISON_TABLES)}, got {self.poison!r}")

    def _timed(self, step: Callable[[], Any]) -> List[CheckResult]:
        """Run a step producing one or several results and stamp them with its wall time."""
        start = time.perf_counter()
        produced = step()
        elapsed = time.perf_counter() - start
        results = produced if isinstance(produced, list) else [produced]
        for result in results:
            result.seconds = elapsed
        return results

    @staticmethod
    def residual_check(name: str, residuals: List[RelationResidual]) -> CheckResult:
        """Fold residual records into one result; every nonzero residual is a witness."""
        failures = [f"{r.relation} at {r.index}: lhs {r.to_dict()['lhs']}, rhs {r.to_dict()['rhs']}" for r in residuals if not r.passed]
        relations = sorted({r.relation for r in residuals})
        return CheckResult.from_failures(name, len(residuals), failures, {"relations": relations} if relations else None)

    @abstractmethod
    def verify(self, context: VerificationContext) -> List[CheckResult]:
        """
        Run every check of this scope.

        Args:
            context: The scheme under test

        Returns:
            Check results in a deterministic order
        """
        raise NotImplementedError
