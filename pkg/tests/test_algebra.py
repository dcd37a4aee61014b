from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from f2hoch.algebra import (
    BUILTIN_TEXT,
    ParseError,
    QuadraticPresentation,
    build_table,
    builtin,
    is_paper_algebra,
    paper_presentation,
    parse_presentation,
)
from f2hoch.resolutions import ideal_space


def test_paper_relations():
    p = paper_presentation()
    labels = sorted(p.vector_label(r, 2) for r in p.relations)
    assert labels == ["a⊗b", "a⊗c + c⊗a", "b⊗a", "b⊗c", "c⊗b"]


def test_paper_hilbert_function(table6):
    assert table6.hilbert_function() == (1, 3, 4, 5, 6, 7, 8)
    assert table6.labels[2] == ["a^2", "ac", "b^2", "c^2"]
    assert table6.labels[3] == ["a^3", "a^2c", "ac^2", "b^3", "c^3"]


@pytest.mark.parametrize("name,dims", [
    ("dual", (1, 1, 0, 0, 0)),
    ("boolean2", (1, 2, 2, 2, 2)),
    ("boolean-sum", (1, 2, 1, 1, 1)),
    ("tensor3", (1, 3, 9, 27, 81)),
])
def test_builtin_hilbert(name, dims):
    assert build_table(builtin(name), 4).hilbert_function() == dims


@pytest.mark.parametrize("name", sorted(BUILTIN_TEXT))
def test_hilbert_matches_ideal_oracle(name):
    p = builtin(name)
    t = build_table(p, 4)
    for n in range(5):
        assert t.dim(n) == p.g**n - ideal_space(p, n).dim


def test_products(table6):
    t = table6
    assert t.element("c*a") == t.element("a*c")
    assert t.element("a*b") == (2, 0)
    assert t.element("a*c*a") == t.element("a*a*c")
    assert t.element("b*b*b") != (3, 0)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.sampled_from("abc"), min_size=1, max_size=3),
       st.lists(st.sampled_from("abc"), min_size=1, max_size=3),
       st.lists(st.sampled_from("abc"), min_size=1, max_size=3))
def test_associative(x, y, z):
    t = build_table(paper_presentation(), 9)
    X, Y, Z = (t.element("*".join(w)) for w in (x, y, z))
    assert t.multiply(t.multiply(X, Y), Z) == t.multiply(X, t.multiply(Y, Z))


@pytest.mark.parametrize("order", list(permutations(range(3))))
def test_generator_permutation_keeps_dims(order):
    p = paper_presentation().permuted(order)
    assert build_table(p, 5).hilbert_function() == (1, 3, 4, 5, 6, 7)
    assert is_paper_algebra(p) == (order == (0, 1, 2))


def test_same_algebra_from_words():
    p = QuadraticPresentation.from_words(
        ["a", "b", "c"], [["ab"], ["ba"], ["bc"], ["cb"], ["ac", "ca"]]
    )
    assert p.same_algebra(paper_presentation())


@pytest.mark.parametrize("text,line,msg", [
    ("quadratic {\n generators = [a, b]\n relations = [a*d]\n}", 3, "unknown generator"),
    ("quadratic {\n generators = [a]\n relations = [a*a*a]\n}", 3, "quadratic"),
    ("quadratic {\n generators = []\n}", 2, "empty generator"),
    ("quadratic {\n generators = [a]\n degrees = [2]\n}", 3, "unknown key"),
    ("quadratic {\n generators = [a]\n junk\n}", 3, "unexpected"),
])
def test_parse_errors(text, line, msg):
    with pytest.raises(ParseError) as info:
        parse_presentation(text)
    assert info.value.line == line
    assert msg in str(info.value)


def test_commutative_relations():
    p = parse_presentation(
        "quadratic {\n  generators = [x, y]  # two\n  relations_commutative = [x*x]\n}"
    )
    t = build_table(p, 3)
    assert t.hilbert_function() == (1, 2, 2, 2)
    assert t.element("x*y") == t.element("y*x")


def test_paper_dims_are_n_plus_2():
    p = paper_presentation()
    t = build_table(p, 7)
    for n in range(1, 8):
        assert t.dim(n) == n + 2 == 3**n - ideal_space(p, n).dim
