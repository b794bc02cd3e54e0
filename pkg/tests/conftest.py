"""Shared scheme fixtures; building is the expensive part, so they live for the whole session."""

import pytest

from attschemes.data_models.scheme_params import JohnsonParams, SchemeParams
from attschemes.mods.attenuated import build_scheme
from attschemes.mods.johnson import enumerate_johnson
from attschemes.mods.spectra import EigenGrid, IdempotentSet
from attschemes.verifiers import VerificationContext


@pytest.fixture(scope="session")
def params_2322():
    return SchemeParams(2, 3, 2, 2)


@pytest.fixture(scope="session")
def params_3211():
    return SchemeParams(3, 2, 1, 1)


@pytest.fixture(scope="session")
def scheme_2322(params_2322):
    return build_scheme(params_2322, verify=False)


@pytest.fixture(scope="session")
def scheme_3211(params_3211):
    return build_scheme(params_3211, verify=False)


@pytest.fixture(scope="session")
def grid_2322(params_2322):
    return EigenGrid.from_params(params_2322)


@pytest.fixture(scope="session")
def grid_3211(params_3211):
    return EigenGrid.from_params(params_3211)


@pytest.fixture(scope="session")
def idempotents_2322(scheme_2322, grid_2322):
    return IdempotentSet(scheme_2322, grid_2322)


@pytest.fixture(scope="session")
def idempotents_3211(scheme_3211, grid_3211):
    return IdempotentSet(scheme_3211, grid_3211)


@pytest.fixture(scope="session")
def context_2322(scheme_2322):
    return VerificationContext(instance=scheme_2322)


@pytest.fixture(scope="session")
def context_3211(scheme_3211):
    return VerificationContext(instance=scheme_3211)


@pytest.fixture(scope="session")
def johnson_332():
    return enumerate_johnson(JohnsonParams(3, 3, 2), verify=False)
