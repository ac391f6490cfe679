import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ringlab.fields import GF2, QQ, FieldSpec
from ringlab.linalg import Matrix, Subspace, gf2_pack, gf2_rank, modp_rank, rational_rank

GF5 = FieldSpec.prime(5)


def test_rref_identity():
    m = Matrix(QQ, [[1, 0], [0, 1]])
    r, piv = m.rref()
    assert r == m
    assert piv == (0, 1)


def test_rref_rank_one_over_q():
    r, piv = Matrix(QQ, [[1, 2], [2, 4]]).rref()
    assert r.rows() == ((1, 2), (0, 0))
    assert piv == (0,)


def test_rref_gf2_hand_elimination():
    r, piv = Matrix(GF2, [[1, 1], [1, 1]]).rref()
    assert r.rows() == ((1, 1), (0, 0))
    assert piv == (0,)


def test_kernel_identity_empty():
    assert Matrix(QQ, [[1, 0], [0, 1]]).kernel_basis() == []


def test_kernel_zero_matrix():
    kb = Matrix(QQ, [[0, 0, 0], [0, 0, 0]]).kernel_basis()
    assert len(kb) == 3


def test_kernel_gf2_hand_solved():
    kb = Matrix(GF2, [[1, 1, 0], [0, 1, 1]]).kernel_basis()
    assert kb == [(1, 1, 1)]


def test_solve_identity():
    assert Matrix(QQ, [[1, 0], [0, 1]]).solve([3, 4]) == (3, 4)


def test_solve_inconsistent():
    assert Matrix(QQ, [[0, 0]]).solve([1]) is None


def test_solve_mod5():
    # 2 * 3 = 6 = 1 mod 5
    assert Matrix(GF5, [[2]]).solve([1]) == (3,)


def test_solve_dimension_mismatch():
    with pytest.raises(ValueError):
        Matrix(QQ, [[1, 2]]).solve([1, 2])


def _random_matrix(rng, field, rows, cols):
    if field.p is None:
        data = [[Fraction(rng.randint(-4, 4)) for _ in range(cols)] for _ in range(rows)]
    else:
        data = [[rng.randrange(field.p) for _ in range(cols)] for _ in range(rows)]
    return Matrix(field, data, cols)


@pytest.mark.parametrize("field", [QQ, GF2, GF5])
def test_rank_nullity_and_kernel_exactness(field):
    rng = random.Random(11)
    for _ in range(40):
        rows, cols = rng.randint(1, 6), rng.randint(1, 6)
        m = _random_matrix(rng, field, rows, cols)
        kb = m.kernel_basis()
        assert m.rank() + len(kb) == cols
        for v in kb:
            assert not any(m.apply(v))


@pytest.mark.parametrize("field", [QQ, GF2, GF5])
def test_rref_idempotent(field):
    rng = random.Random(5)
    for _ in range(25):
        m = _random_matrix(rng, field, rng.randint(1, 5), rng.randint(1, 5))
        r, piv = m.rref()
        r2, piv2 = r.rref()
        assert r2 == r and piv2 == piv


@pytest.mark.parametrize("field", [QQ, GF2, GF5])
def test_solve_agrees_with_rank_criterion(field):
    rng = random.Random(23)
    for _ in range(40):
        rows, cols = rng.randint(1, 5), rng.randint(1, 5)
        m = _random_matrix(rng, field, rows, cols)
        b = [field.coerce(rng.randint(-3, 3)) for _ in range(rows)]
        aug = Matrix(field, [list(m.row(i)) + [b[i]] for i in range(rows)], cols + 1)
        consistent = aug.rank() == m.rank()
        sol = m.solve(b)
        assert (sol is not None) == consistent
        if sol is not None:
            assert m.apply(sol) == tuple(b)


def test_gf2_screen_bounds_rational_rank():
    # an r x r minor that is odd is nonzero over the integers, so the
    # mod-2 rank can never exceed the rational rank
    rng = random.Random(3)
    for _ in range(60):
        rows, cols = rng.randint(1, 6), rng.randint(1, 6)
        data = [[rng.randint(-2, 2) for _ in range(cols)] for _ in range(rows)]
        r2 = gf2_rank(gf2_pack([[x % 2 for x in row] for row in data]))
        rq = rational_rank(data)
        assert r2 <= rq


def test_modp_rank_matches_matrix_rank():
    rng = random.Random(9)
    for p in (2, 3, 5):
        f = FieldSpec.prime(p)
        for _ in range(20):
            rows, cols = rng.randint(1, 5), rng.randint(1, 5)
            data = [[rng.randrange(p) for _ in range(cols)] for _ in range(rows)]
            assert modp_rank(data, p) == Matrix(f, data, cols).rank()


@given(
    st.lists(
        st.lists(st.integers(min_value=-9, max_value=9), min_size=3, max_size=3),
        min_size=1,
        max_size=5,
    )
)
@settings(max_examples=60, deadline=None)
def test_hypothesis_rank_nullity_over_q(rows):
    m = Matrix(QQ, rows, 3)
    assert m.rank() + len(m.kernel_basis()) == 3


@given(st.integers(min_value=2, max_value=200))
@settings(max_examples=40, deadline=None)
def test_field_inverse(p_candidate):
    from ringlab.fields import is_prime

    if not is_prime(p_candidate):
        with pytest.raises(ValueError):
            FieldSpec.prime(p_candidate)
        return
    f = FieldSpec.prime(p_candidate)
    for a in range(1, min(p_candidate, 12)):
        assert f.mul(a, f.inv(a)) == 1


def test_subspace_matches_matrix_rank():
    rng = random.Random(17)
    for field in (QQ, GF2, GF5):
        for _ in range(20):
            cols = rng.randint(1, 6)
            vecs = [[field.coerce(rng.randint(-2, 2)) for _ in range(cols)] for _ in range(rng.randint(1, 6))]
            sub = Subspace(field, cols)
            for v in vecs:
                sub.add(v)
            assert sub.dim == Matrix(field, vecs, cols).rank()
            for v in vecs:
                assert sub.contains(v)
                assert not any(sub.reduce(v))


def test_field_parse_and_str():
    assert str(FieldSpec.parse("q")) == "q"
    assert FieldSpec.parse("fp:5").p == 5
    with pytest.raises(ValueError):
        FieldSpec.parse("fp:6")
    with pytest.raises(ValueError):
        FieldSpec.parse("float")


def test_no_rounding_anywhere():
    # rational arithmetic is Fraction-exact: a classic float trap
    m = Matrix(QQ, [[Fraction(1, 3), Fraction(1, 7)], [Fraction(1, 21), 1]])
    r, piv = m.rref()
    assert piv == (0, 1)
    assert all(isinstance(x, Fraction) for row in r.rows() for x in row)
