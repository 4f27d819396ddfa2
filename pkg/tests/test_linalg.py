"""Exact elimination: rank, RREF canonicality, nullspace correctness."""

from fractions import Fraction

from hypothesis import given, settings, strategies as st

from supercoinv import linalg


def dense(rows, ncols):
    out = []
    for r in rows:
        vec = [Fraction(0)] * ncols
        for c, v in (r.items() if isinstance(r, dict) else r):
            vec[c] = Fraction(v)
        out.append(vec)
    return out


def oracle_rank(rows, ncols):
    """Textbook dense Gaussian elimination over Fractions."""
    mat = dense(rows, ncols)
    rank = 0
    for col in range(ncols):
        piv = None
        for r in range(rank, len(mat)):
            if mat[r][col]:
                piv = r
                break
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        pv = mat[rank][col]
        for r in range(len(mat)):
            if r != rank and mat[r][col]:
                f = mat[r][col] / pv
                for c in range(ncols):
                    mat[r][c] -= f * mat[rank][c]
        rank += 1
    return rank


def test_known_small_matrix():
    rows = [{0: 1, 1: 2}, {0: 2, 1: 4}, {1: 1, 2: 1}]
    assert linalg.rank(rows, 3) == 2
    ns = linalg.nullspace(rows, 3)
    assert len(ns) == 1
    v = ns[0]
    for r in rows:
        assert sum(Fraction(c) * v.get(k, Fraction(0)) for k, c in r.items()) == 0


def test_rref_is_canonical():
    a = linalg.rref([{0: 2, 1: 4}, {1: 3, 2: 3}], 3)
    b = linalg.rref([{0: 1, 1: 2}, {1: 1, 2: 1}, {0: 3, 1: 9, 2: 3}], 3)
    assert linalg.spans_equal(a, b)


def test_rational_inputs_are_cleared():
    rows = [{0: Fraction(1, 2), 1: Fraction(1, 3)}]
    assert linalg.rank(rows, 2) == 1
    rr = linalg.rref(rows, 2)
    assert rr[0][0] == 1 and rr[0][1] == Fraction(2, 3)


def test_residual_membership():
    rr = linalg.rref([{0: 1, 1: 1}, {2: 1}], 3)
    assert not linalg.residual(rr, {0: Fraction(2), 1: Fraction(2), 2: Fraction(-1)})
    assert linalg.residual(rr, {0: Fraction(1)})


def test_empty_and_degenerate():
    assert linalg.rank([], 5) == 0
    assert linalg.rank([{}], 5) == 0
    assert len(linalg.nullspace([], 3)) == 3
    assert linalg.rank([{0: 7}], 1) == 1


matrices = st.lists(
    st.dictionaries(
        st.integers(min_value=0, max_value=5),
        st.integers(min_value=-9, max_value=9).filter(bool),
        max_size=6,
    ),
    min_size=0,
    max_size=8,
)


@settings(max_examples=200, deadline=None)
@given(matrices)
def test_paths_agree_with_each_other_and_oracle(rows):
    ncols = 6
    r_int = linalg.rank([dict(r) for r in rows], ncols, method="fraction_free")
    r_frac = linalg.rank(
        [{k: Fraction(v) for k, v in r.items()} for r in rows], ncols,
        method="rational",
    )
    r_oracle = oracle_rank(rows, ncols)
    assert r_int == r_frac == r_oracle


@settings(max_examples=200, deadline=None)
@given(matrices)
def test_nullspace_vectors_annihilate_and_count(rows):
    ncols = 6
    ns = linalg.nullspace([dict(r) for r in rows], ncols)
    assert len(ns) == ncols - oracle_rank(rows, ncols)
    for v in ns:
        for r in rows:
            assert (
                sum(Fraction(c) * v.get(k, Fraction(0)) for k, c in r.items()) == 0
            )
    # kernel vectors are independent: stack them and re-rank
    assert linalg.rank(ns, ncols) == len(ns)
