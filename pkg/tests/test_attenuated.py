import numpy as np
import pytest

from attschemes.data_models.scheme_params import SchemeParams
from attschemes.mods.attenuated import brute_intersection_numbers, build_scheme, check_axioms, compute_classes, enumerate_vertices, relation_of
from attschemes.utils.finite_field import FieldContext

VALENCIES_2322 = {(0, 0): 1, (0, 1): 9, (1, 0): 24, (0, 2): 6, (1, 1): 72}


def test_vertex_count_and_shape(scheme_2322):
    assert scheme_2322.vertex_count == 112
    assert scheme_2322.vertices.shape == (112, 2, 5)
    assert scheme_2322.vertices.dtype == np.uint8


def test_vertices_are_distinct_and_avoid_w(scheme_2322):
    vertices = scheme_2322.vertices
    assert len({vertex.tobytes() for vertex in vertices}) == len(vertices)
    field = FieldContext(2)
    for vertex in vertices:
        # meets w trivially iff the projection to the first n coordinates keeps full rank
        assert field.rank(vertex[:, :3].tolist()) == 2


def test_class_sizes_are_the_valencies(scheme_2322):
    assert scheme_2322.class_sizes(0) == VALENCIES_2322
    assert scheme_2322.class_sizes(111) == VALENCIES_2322
    assert sum(scheme_2322.valency(ij) for ij in scheme_2322.domain) == 112


def test_relation_of_diagonal_pair(params_2322, scheme_2322):
    vertex = scheme_2322.vertices[5]
    assert relation_of(vertex, vertex, params_2322) == (0, 0)
    assert scheme_2322.relation(3, 3) == (0, 0)
    assert scheme_2322.relation(3, 7) == scheme_2322.relation(7, 3)


def test_small_scheme_relations(scheme_3211):
    # points of PG(2,3) off w; (0,1) pairs share their plane through w
    assert scheme_3211.vertex_count == 12
    assert scheme_3211.class_sizes(0) == {(0, 0): 1, (0, 1): 2, (1, 0): 9}


@pytest.mark.parametrize("fixture", ["scheme_2322", "scheme_3211"])
def test_axioms_hold(fixture, request):
    results = check_axioms(request.getfixturevalue(fixture))
    assert [result.name for result in results] == ["axiom.identity", "axiom.partition", "axiom.symmetry", "axiom.products"]
    assert all(result.passed for result in results)


def test_brute_intersection_numbers(scheme_2322):
    tensor, failures = brute_intersection_numbers(scheme_2322, threads=2)
    assert failures == []
    assert tensor.get((0, 1), (0, 1), (0, 0)) == 9
    assert tensor.get((0, 1), (0, 0), (0, 1)) == 1
    assert tensor.get((1, 0), (0, 1), (1, 1)) == tensor.get((0, 1), (1, 0), (1, 1))
    # sum over targets weighted by valency is the product of valencies
    row = tensor.row((1, 0), (0, 1))
    assert sum(value * VALENCIES_2322[ab] for ab, value in row.items()) == 24 * 9


def test_pair_sweep_is_thread_independent(params_2322, scheme_2322):
    field = FieldContext(2)
    threaded = compute_classes(params_2322, scheme_2322.vertices, field, threads=4)
    assert np.array_equal(threaded, compute_classes(params_2322, scheme_2322.vertices, field, threads=1))
    assert np.array_equal(threaded, threaded.T)


def test_trivial_scheme():
    instance = build_scheme(SchemeParams(2, 0, 0, 0))
    assert instance.vertex_count == 1
    assert instance.domain == [(0, 0)]


def test_enumeration_matches_closed_count():
    params = SchemeParams(3, 2, 1, 1)
    assert len(enumerate_vertices(params)) == params.vertex_count


@pytest.mark.slow
def test_larger_scheme_axioms():
    instance = build_scheme(SchemeParams(2, 4, 2, 2), threads=4)
    assert instance.vertex_count == 560
    assert sum(instance.class_sizes(0).values()) == 560
