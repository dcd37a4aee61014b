"""GF(2) kernels checked against a plain list-of-lists elimination."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from f2hoch.gf2 import (
    Coordinates,
    GF2Matrix,
    GF2Vector,
    Subspace,
    bits_of,
    image_basis,
    intersect,
    kernel_basis,
    nullity,
    rank,
    rref_rows,
    solve,
)


def naive_rank(rows: list[list[int]]) -> int:
    m = [list(r) for r in rows]
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        for i in range(len(m)):
            if i != r and m[i][c]:
                m[i] = [x ^ y for x, y in zip(m[i], m[r])]
        r += 1
    return r


@st.composite
def matrices(draw, max_rows=9, max_cols=9):
    nr = draw(st.integers(0, max_rows))
    nc = draw(st.integers(1, max_cols))
    rows = draw(st.lists(st.integers(0, 2**nc - 1), min_size=nr, max_size=nr))
    return GF2Matrix(nr, nc, rows)


@given(matrices())
def test_rank_matches_naive(m):
    assert rank(m) == naive_rank(m.to_lists())


@given(matrices())
def test_rank_nullity(m):
    k = kernel_basis(m)
    assert rank(m) + k.dim == m.ncols
    assert nullity(m) == k.dim
    for v in k.basis:
        assert m.apply(v) == 0


@given(matrices())
def test_rank_of_transpose(m):
    assert rank(m.transpose()) == rank(m)
    assert image_basis(m).dim == rank(m)


@given(matrices(), st.data())
def test_solve_construct_and_verify(m, data):
    x = data.draw(st.integers(0, 2**m.ncols - 1))
    b = m.apply(x)
    y = solve(m, b)
    assert y is not None and m.apply(y) == b
    assert (x ^ y) in kernel_basis(m)


@given(matrices(max_rows=6, max_cols=6), st.data())
def test_solve_reports_inconsistency(m, data):
    b = data.draw(st.integers(0, 2**m.nrows - 1))
    y = solve(m, b)
    assert (y is None) == (b not in image_basis(m))


def test_solve_with_vectors():
    m = GF2Matrix.from_lists([[1, 1, 0], [0, 1, 1]])
    y = solve(m, GF2Vector.from_list([1, 0]))
    assert isinstance(y, GF2Vector) and (m @ y).to_list() == [1, 0]
    assert solve(GF2Matrix.from_lists([[1, 1], [1, 1]]), GF2Vector.from_list([1, 0])) is None


@st.composite
def subspace_pairs(draw):
    n = draw(st.integers(1, 8))
    vecs = st.lists(st.integers(0, 2**n - 1), max_size=6)
    return Subspace.span(n, draw(vecs)), Subspace.span(n, draw(vecs))


@given(subspace_pairs())
def test_intersection_dimension_formula(pair):
    u, w = pair
    i = intersect(u, w)
    assert i.dim == u.dim + w.dim - (u + w).dim
    assert u.contains_subspace(i) and w.contains_subspace(i)


@settings(max_examples=30)
@given(subspace_pairs())
def test_intersection_by_enumeration(pair):
    u, w = pair
    common = set(u.elements()) & set(w.elements())
    assert set((u & w).elements()) == common


def test_intersection_rejects_ambient_mismatch():
    with pytest.raises(ValueError):
        intersect(Subspace.full(2), Subspace.full(3))


@given(st.lists(st.integers(0, 255), max_size=8))
def test_rref_is_canonical(vs):
    assert rref_rows(vs) == rref_rows(reversed(vs)) == rref_rows(rref_rows(vs))
    assert Subspace.span(8, vs) == Subspace.span(8, list(vs) + [a ^ b for a, b in zip(vs, vs[1:])])


@given(st.lists(st.integers(0, 255), max_size=8), st.integers(0, 255))
def test_coordinates_reconstruct(vs, v):
    s = Subspace.span(8, vs)
    if v in s:
        c = s.coordinates(v)
        acc = 0
        for i in bits_of(c):
            acc ^= s.basis[i]
        assert acc == v
    else:
        assert s.reduce(v) != 0


def test_coordinates_for_non_echelon_basis():
    basis = [0b011, 0b110, 0b100]
    co = Coordinates(basis)
    for v in range(8):
        c = co(v)
        acc = 0
        for i in bits_of(c):
            acc ^= basis[i]
        assert acc == v
    with pytest.raises(ValueError):
        Coordinates([0b1, 0b1])
    assert Coordinates([0b01]).try_coords(0b10) is None


def test_matrix_products_and_identity():
    a = GF2Matrix.from_lists([[1, 0, 1], [0, 1, 1]])
    assert (GF2Matrix.identity(2) @ a) == a
    assert (a @ GF2Matrix.identity(3)) == a
    assert (a + a).is_zero()
    assert a.transpose().transpose() == a
    assert a.with_flipped(0, 0)[0, 0] == 0
    assert GF2Matrix.from_columns(2, a.columns()) == a


def test_vector_ops():
    u = GF2Vector.from_list([1, 0, 1])
    assert (u + u).weight() == 0 and u.weight() == 2 and u[2] == 1 and len(u) == 3
    with pytest.raises(ValueError):
        u + GF2Vector.zero(2)


def test_deterministic_kernel():
    m = GF2Matrix.from_lists([[1, 1, 0, 1], [0, 1, 1, 1]])
    assert kernel_basis(m).basis == kernel_basis(GF2Matrix(2, 4, m.rows)).basis
