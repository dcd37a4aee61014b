import random
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from f2hoch.algebra import build_table, paper_presentation
from f2hoch.gf2 import Subspace, kernel_basis
from f2hoch.hochschild import koszul_window
from f2hoch.massey import (
    WITNESS_DGA_TEXT,
    DGAError,
    EnumerationCapExceeded,
    MasseyObstruction,
    cohomology,
    formal_dga,
    kadeishvili_m3,
    m3_difference_is_coboundary,
    m3_is_cocycle,
    m3_on_koszul,
    massey_triple,
    parse_dga,
    trivialize_m3,
    trivialize_transfer,
    witness_dga,
)
from f2hoch.resolutions import koszul_spaces


def brute_massey(dga, a, b, c):
    """Massey set by running over every cochain, with no linear solving."""
    H = cohomology(dga)
    (ka, xa), (kb, xb), (kc, xc) = a, b, c

    def coset(k, x):
        return [x ^ y for y in H.coboundaries[k].elements()]

    def all_cochains(k):
        return range(2 ** dga.dim(k))

    out = set()
    for A, B, C in product(coset(ka, xa), coset(kb, xb), coset(kc, xc)):
        AB, BC = dga.mul(ka, A, kb, B), dga.mul(kb, B, kc, C)
        Eab = [e for e in all_cochains(ka + kb - 1) if dga.d(ka + kb - 1, e) == AB]
        Ebc = [e for e in all_cochains(kb + kc - 1) if dga.d(kb + kc - 1, e) == BC]
        for e1, e2 in product(Eab, Ebc):
            m = dga.mul(ka, A, kb + kc - 1, e2) ^ dga.mul(ka + kb - 1, e1, kc, C)
            out.add(H.class_of(ka + kb + kc - 1, m))
    return out


@pytest.fixture(scope="module")
def W():
    return witness_dga()


@pytest.fixture(scope="module")
def formal():
    return formal_dga(build_table(paper_presentation(), 4))


def test_witness_valid(W):
    assert [W.dim(k) for k in range(3)] == [1, 4, 2]


def test_witness_cohomology(W):
    H = cohomology(W)
    assert H.dims() == (1, 3, 1)
    assert H.algebra.labels[1] == ["a", "b", "c"] and H.algebra.labels[2] == ["s"]
    a, b, c = (H.class_of(*W.element(x)) for x in "abc")
    assert H.algebra.mul(1, a, 1, b) == 0 and H.algebra.mul(1, b, 1, c) == 0


def test_leibniz_negative_control():
    text = WITNESS_DGA_TEXT.replace("2: [p, s] }", "2: [p, s], 3: [u] }").replace(
        "t -> p", "t -> p, s -> u")
    with pytest.raises(DGAError) as info:
        parse_dga(text)
    assert info.value.witness == ("t", "c")


def test_dropping_differential_moves_failure_to_cohomology():
    # with δ = 0 the data is a valid DGA, but a∪b = p is now a nonzero class
    V = parse_dga(WITNESS_DGA_TEXT.replace("t -> p", ""))
    assert cohomology(V).dims() == (1, 4, 2)
    with pytest.raises(MasseyObstruction):
        massey_triple(V, V.element("a"), V.element("b"), V.element("c"))


def test_dd_and_associativity_failures():
    dd = "dga {\n degrees { 0: [one], 1: [x], 2: [y], 3: [z] }\n unit = one\n d { x -> y, y -> z }\n}"
    with pytest.raises(DGAError, match="δδ"):
        parse_dga(dd)
    assoc = ("dga {\n degrees { 0: [one], 1: [x, y], 2: [p, q] }\n unit = one\n"
             " mul { x*y -> p }\n}")
    assert parse_dga(assoc).dim(2) == 2
    bad = ("dga {\n degrees { 0: [one], 1: [x], 2: [p], 3: [q] }\n unit = one\n"
           " mul { x*x -> p, x*p -> q }\n}")
    with pytest.raises(DGAError, match="associative"):
        parse_dga(bad)


@pytest.mark.parametrize("text,line", [
    ("dga {\n degrees { 0: [one], 1: [a] }\n unit = one\n d { a -> zz }\n}", 4),
    ("dga {\n degrees { 0: [one], 1: [a] }\n unit = one\n mul { one*a -> a }\n}", 4),
    ("dga {\n degrees { 0: [one], 1: [a] }\n unit = one\n mul { a*a -> a }\n}", 4),
])
def test_parse_errors(text, line):
    with pytest.raises(DGAError) as info:
        parse_dga(text)
    assert info.value.line == line


def test_formal_cohomology(formal):
    H = cohomology(formal)
    assert H.dims() == (1, 3, 4, 5, 6)


def test_witness_massey(W):
    r = massey_triple(W, W.element("a"), W.element("b"), W.element("c"))
    assert r.labels == ("[s]",) and not r.vanishes and not r.contains_zero
    assert r.indeterminacy.dim == 0
    assert set(r.values) == brute_massey(W, W.element("a"), W.element("b"), W.element("c"))


@pytest.mark.parametrize("triple", ["a,b,a", "a,a,b", "b,b,b", "c,b,a", "a,b,b"])
def test_massey_matches_brute_force(W, triple):
    a, b, c = (W.element(x) for x in triple.split(","))
    r = massey_triple(W, a, b, c)
    assert set(r.values) == brute_massey(W, a, b, c)
    H = cohomology(W)
    # every value has the same image modulo the indeterminacy
    assert len({r.indeterminacy.reduce(v) for v in r.values}) == 1
    assert all(r.indeterminacy.reduce(v ^ r.values[0]) == 0 for v in r.values)
    assert r.indeterminacy.dim <= H.dim(r.degree)


def test_formal_massey_set(formal):
    a, b, c = (formal.element(x) for x in "abc")
    r = massey_triple(formal, a, b, c)
    H = cohomology(formal)
    # with zero differential the set is a·H^1 + H^1·c
    expected = Subspace.span(H.dim(2), [
        H.algebra.mul(1, H.class_of(*a), 1, 1 << i) for i in range(3)
    ] + [H.algebra.mul(1, 1 << i, 1, H.class_of(*c)) for i in range(3)])
    assert set(r.values) == set(expected.elements())
    assert r.vanishes and r.contains_zero and r.quotient_image == 0


def test_massey_obstruction(formal):
    a = formal.element("a")
    with pytest.raises(MasseyObstruction):
        massey_triple(formal, a, a, a)


def test_massey_cap(W):
    with pytest.raises(EnumerationCapExceeded, match="--cap"):
        massey_triple(W, W.element("a"), W.element("b"), W.element("c"), cap=8)


def test_massey_rejects_non_cocycle(W):
    with pytest.raises(ValueError):
        massey_triple(W, W.element("t"), W.element("b"), W.element("c"))


def test_product_well_defined_on_cohomology(W):
    H = cohomology(W)
    for (i, x), (j, y) in product([(1, 1 << p) for p in range(3)], repeat=2):
        zx, zy = H.section(i, x), H.section(j, y)
        ref = H.class_of(i + j, W.mul(i, zx, j, zy))
        for bx in H.coboundaries[i].elements():
            for by in H.coboundaries[j].elements():
                assert H.class_of(i + j, W.mul(i, zx ^ bx, j, zy ^ by)) == ref


def test_witness_m3(W):
    td = kadeishvili_m3(W)
    H = td.H
    key = ((1, 0), (1, 1), (1, 2))
    assert td.m3 == {key: 1}
    assert H.label(2, td.m3[key]) == "[s]"
    assert m3_is_cocycle(td)
    r = massey_triple(W, W.element("a"), W.element("b"), W.element("c"))
    assert td.m3[key] in r.values
    assert trivialize_transfer(td) is None


def test_f2_condition(W):
    td = kadeishvili_m3(W)
    H = td.H
    for (x, y), e in td.f2.items():
        k = x[0] + y[0]
        lhs = W.d(k - 1, e)
        rhs = td.f1_of(k, H.algebra.basis_product(x[0], x[1], y[0], y[1])) ^ W.mul(
            x[0], td.f1[x], y[0], td.f1[y])
        assert lhs == rhs


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32))
def test_m3_independent_of_choices(seed):
    W = witness_dga()
    td = kadeishvili_m3(W)
    other = kadeishvili_m3(W, rng=random.Random(seed))
    assert m3_is_cocycle(other)
    assert m3_difference_is_coboundary(td, other) is not None


def test_formal_m3_zero(formal):
    td = kadeishvili_m3(formal)
    assert td.m3 == {} and td.f2 == {}


@settings(max_examples=6, deadline=None)
@given(st.integers(0, 2**32))
def test_formal_random_m3_trivializes(seed):
    t = build_table(paper_presentation(), 4)
    kd = koszul_spaces(t, 4)
    dga = formal_dga(t)
    td = kadeishvili_m3(dga, rng=random.Random(seed))
    assert m3_is_cocycle(td)
    tr = trivialize_m3(t, kd, m3_on_koszul(td, kd))
    assert tr.exists and tr.residual == 0
    rebuilt = trivialize_transfer(td)
    assert rebuilt is not None and rebuilt.m3 == {}


def test_trivialize_zero(table6, kd6):
    tr = trivialize_m3(table6, kd6, 0)
    assert tr.exists and tr.eta == 0


def test_trivialize_rejects_non_cocycle(table6, kd6):
    w = koszul_window(table6, kd6, 3, -1)
    v = next(1 << i for i in range(w.domain.dim) if w.dout.apply(1 << i))
    with pytest.raises(ValueError):
        trivialize_m3(table6, kd6, v)


def test_trivialize_every_kernel_element(table6, kd6, window31):
    for f in kernel_basis(window31.dout).elements():
        tr = trivialize_m3(table6, kd6, f, window31)
        assert tr.exists and tr.residual == 0
