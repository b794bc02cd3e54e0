from fractions import Fraction

import pytest

from attschemes.exceptions import ConfigError
from attschemes.mods.subconstituent import CentralParams, DualPair, build_dual, verify_lemma_EAE, verify_tridiagonal
from attschemes.verifiers.subconstituent_verifier import default_bases


def test_central_parameters(params_3211):
    central = CentralParams(params_3211)
    assert central.gamma(Fraction(2)) == 16
    assert central.rho(Fraction(2)) == 84
    assert central.chi == -2
    assert central.zeta == Fraction(-5, 3)


def test_default_bases():
    assert default_bases(112) == [0, 56, 111]
    assert default_bases(1) == [0]
    assert default_bases(2) == [0, 1]


@pytest.mark.parametrize("base", [-1, 12])
def test_dual_pair_rejects_bad_base(scheme_3211, idempotents_3211, base):
    with pytest.raises(ConfigError):
        DualPair(scheme_3211, idempotents_3211, base)


def test_dual_pair(scheme_3211, idempotents_3211):
    dual = build_dual(scheme_3211, idempotents_3211, 0)
    assert dual.sizes() == {(0, 0): 1, (0, 1): 2, (1, 0): 9}
    assert dual.verify().passed
    assert dual.a_star((0, 0)).trace() == 12
    assert dual.e_star((1, 0)).trace() == 9


@pytest.mark.parametrize("base", [0, 6, 11])
def test_lemma_and_tridiagonal_relations(context_3211, base):
    dual = build_dual(context_3211.instance, context_3211.idempotents, base)
    p_tensor, _ = context_3211.brute_p()
    q_tensor, _ = context_3211.brute_q()
    lemma = verify_lemma_EAE(dual, p_tensor, q_tensor)
    assert [result.name for result in lemma] == [f"lemma.adjacency[{base}]", f"lemma.dual[{base}]"]
    assert all(result.passed for result in lemma)
    tridiagonal = verify_tridiagonal(dual)
    assert [result.name for result in tridiagonal][-1] == f"tridiagonal.central[{base}]"
    assert [result.failures for result in tridiagonal if not result.passed] == []


def test_lemma_on_the_bivariate_scheme(context_2322):
    dual = build_dual(context_2322.instance, context_2322.idempotents, 0)
    results = verify_lemma_EAE(dual, context_2322.brute_p()[0], context_2322.brute_q()[0])
    assert all(result.passed for result in results)


def test_tridiagonal_skipped_without_both_generators():
    from attschemes.data_models.scheme_params import SchemeParams
    from attschemes.mods.attenuated import build_scheme
    from attschemes.mods.spectra import EigenGrid, IdempotentSet

    params = SchemeParams(2, 3, 0, 1)
    instance = build_scheme(params, verify=False)
    dual = build_dual(instance, IdempotentSet(instance, EigenGrid.from_params(params)), 0)
    (result,) = verify_tridiagonal(dual)
    assert result.status == result.SKIP
