import pytest

from attschemes.exceptions import FieldNotSupportedError
from attschemes.utils.finite_field import SUPPORTED_ORDERS, FieldContext


@pytest.mark.parametrize("q", SUPPORTED_ORDERS)
def test_tables_form_a_field(q):
    field = FieldContext(q)
    for a in range(q):
        assert field.add(a, 0) == a
        assert field.mul(a, 1) == a
        assert field.mul(a, 0) == 0
        assert field.sub(a, a) == 0
        if a:
            assert field.mul(a, field.inv[a]) == 1


def test_multiplication_distributes_in_f4():
    field = FieldContext(4)
    for a in range(4):
        for b in range(4):
            for c in range(4):
                assert field.mul(a, field.add(b, c)) == field.add(field.mul(a, b), field.mul(a, c))


def test_unsupported_order():
    with pytest.raises(FieldNotSupportedError, match="field not in table"):
        FieldContext(6)


def test_rank_and_rref_over_f2():
    field = FieldContext(2)
    assert field.rank([[1, 1], [1, 1]]) == 1
    assert field.rank([[1, 0, 1], [0, 1, 1], [1, 1, 0]]) == 2
    assert field.rank([[0, 0]]) == 0
    rows, pivots = field.rref([[0, 1, 1], [1, 1, 0]])
    assert rows == ((1, 0, 1), (0, 1, 1))
    assert pivots == (0, 1)


def test_rank_over_f3():
    field = FieldContext(3)
    # second row is twice the first
    assert field.rank([[1, 2, 0], [2, 1, 0]]) == 1
    assert field.rank([[1, 2, 0], [2, 2, 0]]) == 2
