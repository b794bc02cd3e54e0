import pytest

from attschemes.data_models.scheme_params import JohnsonParams, SchemeParams
from attschemes.exceptions import ConfigError
from attschemes.verifiers import SCOPES, VerificationContext, get_verifier
from attschemes.verifiers.structure_verifier import poisoned


def _statuses(results):
    return {result.name: result.status for result in results}


def test_unknown_scope():
    with pytest.raises(ValueError, match="Unknown scope: hamming"):
        get_verifier("hamming")


def test_every_scope_has_a_verifier():
    for scope in SCOPES:
        assert get_verifier(scope).kwargs == {}


def test_invalid_poison():
    with pytest.raises(ConfigError):
        get_verifier("structure", poison="u")


def test_threads_from_environment(monkeypatch):
    monkeypatch.setenv("ATTSCHEMES_THREADS", "3")
    assert get_verifier("spectra").threads == 3
    assert get_verifier("spectra", threads=2).threads == 2


def test_context_needs_parameters():
    with pytest.raises(ConfigError):
        VerificationContext()
    context = VerificationContext(johnson=JohnsonParams(3, 3, 2))
    with pytest.raises(ConfigError):
        context.require_params("structure")


def test_context_takes_johnson_instances(johnson_332):
    context = VerificationContext(instance=johnson_332)
    assert context.params is None
    assert context.johnson == JohnsonParams(3, 3, 2)


def test_context_caches_derived_objects(context_3211):
    assert context_3211.grid is context_3211.grid
    assert context_3211.brute_p() is context_3211.brute_p()


def test_spectra_scope(context_3211):
    results = get_verifier("spectra", threads=1).verify(context_3211)
    assert all(result.passed for result in results)
    assert all(result.seconds is not None for result in results)
    assert "spectra.valency" in _statuses(results)


def test_bispectral_scope(context_3211):
    statuses = _statuses(get_verifier("bispectral").verify(context_3211))
    assert statuses["univariate.K"] == "pass"
    assert statuses["univariate.E"] == "pass"
    assert set(statuses.values()) == {"pass"}


def test_univariate_skips_k_without_w():
    results = get_verifier("bispectral").univariate(2, 0)
    assert _statuses(results) == {"univariate.K": "skip", "univariate.E": "pass"}


def test_structure_scope(context_2322):
    results = get_verifier("structure").verify(context_2322)
    assert [result.failures for result in results if not result.passed] == []
    assert {"structure.p_formula", "structure.q_formula", "structure.v", "structure.v_star"} <= set(_statuses(results))


def test_structure_scope_skips_polynomials_when_univariate():
    context = VerificationContext(params=SchemeParams(2, 3, 0, 1))
    statuses = _statuses(get_verifier("structure").verify(context))
    assert statuses["structure.v"] == "skip"
    assert statuses["structure.p_formula"] == "pass"


@pytest.mark.parametrize(("table", "check"), [("p", "structure.p_formula"), ("q", "structure.q_formula")])
def test_poison_is_detected(context_3211, table, check):
    results = get_verifier("structure", poison=table).verify(context_3211)
    assert _statuses(results)[check] == "fail"


def test_poisoned_copy_leaves_original(context_3211):
    original = context_3211.formula_p()
    before = list(original.items())
    changed = poisoned(original)
    assert list(original.items()) == before
    assert len(changed.differences(original)) == 1


def test_subconstituent_scope_with_explicit_bases(context_3211):
    results = get_verifier("subconstituent", bases=[3]).verify(context_3211)
    names = [result.name for result in results]
    assert names[0] == "dual.invariants[3]"
    assert all(name.endswith("[3]") for name in names)
    assert all(result.passed for result in results)


def test_johnson_scope_from_attenuated_parameters(context_3211):
    statuses = _statuses(get_verifier("johnson").verify(context_3211))
    assert statuses["johnson.axiom.identity"] == "pass"
    assert statuses["johnson.eigen"] == "pass"
    assert statuses["johnson.binary(2,1)"] == "pass"
    assert statuses["johnson.embedding(3,1,2,1)"] == "pass"


def test_johnson_scope_alone():
    context = VerificationContext(johnson=JohnsonParams(3, 3, 2))
    results = get_verifier("all").verify(context)
    assert all(result.name.startswith("johnson.") for result in results)
    assert all(result.passed for result in results)
