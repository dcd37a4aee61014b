"""Hochschild cochain windows ``HH^{n,s}(A, A)`` around a fixed bidegree.

Two models are offered. The Koszul model ``Hom(K'_n, A^{n+s})`` is finite and
exact for a Koszul algebra. The bar model ``Hom(A^{⊗n}, A)`` restricted to
source words of internal degree ``<= t_max`` is a truncation and is kept for
cross-checks only.

Cochain vectors are indexed source-major, target-minor: the map sending
source basis vector ``k`` to target basis vector ``x`` (and everything else to
zero) is bit ``k * dim(target) + x``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .algebra import GradedAlgebra, TruncationError, is_paper_algebra
from .gf2 import GF2Matrix, Subspace, bits_of, image_basis, kernel_basis, rank, solve
from .resolutions import KoszulData
from .verdict import Verdict


@dataclass
class CochainSpace:
    """Basis of one cochain group: pairs ``(source label, target label)``."""

    degree: int  # homological degree n
    sources: list[str]
    targets: list[str]

    @property
    def dim(self) -> int:
        return len(self.sources) * len(self.targets)

    def index(self, source: str, target: str) -> int:
        return self.sources.index(source) * len(self.targets) + self.targets.index(target)

    def vector(self, terms) -> int:
        v = 0
        for src, tgt in terms:
            v ^= 1 << self.index(src, tgt)
        return v

    def label(self, bit: int) -> tuple[str, str]:
        k, x = divmod(bit, len(self.targets))
        return self.sources[k], self.targets[x]

    def format(self, v: int) -> str:
        if v == 0:
            return "0"
        return " + ".join(
            f"F{self.degree}({s}; {t})" for s, t in (self.label(b) for b in bits_of(v))
        )

    def value(self, v: int, source: str) -> int:
        """``f(source)`` as a bitset over the targets."""
        k = self.sources.index(source)
        width = len(self.targets)
        return (v >> (k * width)) & ((1 << width) - 1)


@dataclass
class CochainComplexWindow:
    """``C^{n-1} --din--> C^n --dout--> C^{n+1}`` at internal shift ``s``."""

    model: str
    n: int
    s: int
    prev: CochainSpace
    domain: CochainSpace
    next: CochainSpace
    din: GF2Matrix
    dout: GF2Matrix
    truncation: int | None = None
    caveat: str | None = None

    def is_complex(self) -> bool:
        return (self.dout @ self.din).is_zero()


# --- Koszul model -----------------------------------------------------------------


def _koszul_space(kd: KoszulData, m: int, s: int) -> CochainSpace:
    A = kd.table
    if m < 0 or m + s < 0:
        return CochainSpace(m, [], [])
    return CochainSpace(m, list(kd.labels[m]), list(A.labels[m + s]) if m + s <= A.top else [])


def koszul_differential(kd: KoszulData, m: int, s: int) -> GF2Matrix:
    """``∂^m : Hom(K'_m, A^{m+s}) -> Hom(K'_{m+1}, A^{m+1+s})``,
    ``∂f(v_1⊗...⊗v_{m+1}) = v_1 f(v_2⊗...) + f(...⊗v_m) v_{m+1}``."""
    A = kd.table
    if m + 1 + s > A.D:
        raise TruncationError(f"need algebra truncation D >= {m + 1 + s}")
    if m + 1 > kd.N:
        raise TruncationError(f"need Koszul spaces up to degree {m + 1}")
    tgt = _koszul_space(kd, m + 1, s)
    src = _koszul_space(kd, m, s)
    if src.dim == 0:
        return GF2Matrix(tgt.dim, 0)
    src_w, tgt_w = len(src.targets), len(tgt.targets)
    left, right = kd.left_parts(m + 1), kd.right_parts(m + 1)
    cols = [0] * src.dim
    for l in range(len(tgt.sources)):
        base = l * tgt_w
        for x, co in left[l].items():
            for k in bits_of(co):
                for xb in range(src_w):
                    prod_bits = A.basis_product(1, x, m + s, xb)
                    cols[k * src_w + xb] ^= prod_bits << base
        for y, co in right[l].items():
            for k in bits_of(co):
                for xb in range(src_w):
                    prod_bits = A.basis_product(m + s, xb, 1, y)
                    cols[k * src_w + xb] ^= prod_bits << base
    return GF2Matrix.from_columns(tgt.dim, cols)


def koszul_window(t, kd: KoszulData, n: int, s: int) -> CochainComplexWindow:
    if n < 1:
        raise ValueError("n must be >= 1")
    if n + s < 0:
        raise ValueError("n + s must be >= 0")
    if kd.table is not t:
        raise ValueError("Koszul data was built for a different table")
    prev = _koszul_space(kd, n - 1, s)
    dom = _koszul_space(kd, n, s)
    nxt = _koszul_space(kd, n + 1, s)
    din = koszul_differential(kd, n - 1, s) if prev.dim else GF2Matrix(dom.dim, 0)
    dout = koszul_differential(kd, n, s)
    return CochainComplexWindow("koszul", n, s, prev, dom, nxt, din, dout)


# --- bar model -----------------------------------------------------------------------


def _bar_words(A: GradedAlgebra, m: int, t_max: int):
    """Words in ``A^{⊗m}`` of internal degree ``<= t_max``, by degree."""
    out = []
    for degs in product(range(min(t_max, A.top) + 1), repeat=m):
        d = sum(degs)
        if d > t_max:
            continue
        for idxs in product(*(range(A.dim(x)) for x in degs)):
            out.append(tuple(zip(degs, idxs)))
    out.sort(key=lambda w: (sum(x for x, _ in w), w))
    return out


def _word_degree(w) -> int:
    return sum(d for d, _ in w)


class _BarCochains:
    def __init__(self, A: GradedAlgebra, m: int, s: int, t_max: int):
        self.A, self.m, self.s = A, m, s
        self.words = [w for w in _bar_words(A, m, t_max) if 0 <= _word_degree(w) + s <= A.top]
        self.offset = {}
        pos = 0
        for w in self.words:
            self.offset[w] = pos
            pos += A.dim(_word_degree(w) + s)
        self.dim = pos

    def labels(self):
        A = self.A
        out = []
        for w in self.words:
            src = " ⊗ ".join(A.labels[d][p] for d, p in w) or "1"
            for tl in A.labels[_word_degree(w) + self.s]:
                out.append((src, tl))
        return out


class FlatCochainSpace(CochainSpace):
    """Cochain space where the target basis depends on the source word."""

    def __init__(self, degree: int, pairs: list[tuple[str, str]]):
        super().__init__(degree, [], [])
        self.pairs = pairs
        self._index = {pr: k for k, pr in enumerate(pairs)}

    @property
    def dim(self) -> int:
        return len(self.pairs)

    def index(self, source: str, target: str) -> int:
        return self._index[source, target]

    def label(self, bit: int) -> tuple[str, str]:
        return self.pairs[bit]

    def value(self, v: int, source: str) -> int:
        raise NotImplementedError


def _splittings(A: GradedAlgebra, top: int):
    """``(d, q) -> [((d1,p1),(d2,p2)), ...]`` with ``q`` in the product of the pair."""
    out: dict[tuple[int, int], list] = {}
    for d1 in range(top + 1):
        for d2 in range(top + 1 - d1):
            for p1 in range(A.dim(d1)):
                for p2 in range(A.dim(d2)):
                    for q in bits_of(A.basis_product(d1, p1, d2, p2)):
                        out.setdefault((d1 + d2, q), []).append(((d1, p1), (d2, p2)))
    return out


def bar_differential(A: GradedAlgebra, m: int, s: int, t_max: int, _split=None) -> GF2Matrix:
    """Hochschild differential ``Hom(A^{⊗m}, A)_s -> Hom(A^{⊗m+1}, A)_s`` on words of
    internal degree ``<= t_max``."""
    if A.truncated and t_max + s > A.top:
        raise TruncationError(f"need algebra truncation D >= {t_max + s}")
    src = _BarCochains(A, m, s, t_max)
    tgt = _BarCochains(A, m + 1, s, t_max)
    split = _split if _split is not None else _splittings(A, min(t_max, A.top))
    cols = []
    for w in src.words:
        d = _word_degree(w)
        for xb in range(A.dim(d + s)):
            col = 0
            # a_1 f(a_2 ⊗ ... ) and f(... ⊗ a_m) a_{m+1}
            for d1 in range(t_max - d + 1):
                if d + d1 + s > A.top:
                    break
                for p1 in range(A.dim(d1)):
                    a = (d1, p1)
                    W = (a,) + w
                    if W in tgt.offset:
                        col ^= A.basis_product(d1, p1, d + s, xb) << tgt.offset[W]
                    W = w + (a,)
                    if W in tgt.offset:
                        col ^= A.basis_product(d + s, xb, d1, p1) << tgt.offset[W]
            # f(... ⊗ a_i a_{i+1} ⊗ ...): split one factor of w
            for j, fac in enumerate(w):
                for u, v in split.get(fac, ()):
                    W = w[:j] + (u, v) + w[j + 1:]
                    if W in tgt.offset:
                        col ^= 1 << (tgt.offset[W] + xb)
            cols.append(col)
    return GF2Matrix.from_columns(tgt.dim, cols)


def bar_window(A: GradedAlgebra, n: int, s: int, t_max: int) -> CochainComplexWindow:
    """Bar-model window.

    Over a truncated table, or with ``t_max`` below ``A.top - s``, source words
    are cut off and the window does not compute HH. Over a finite algebra with
    ``t_max >= A.top - s`` nothing is lost and the window is complete.
    """
    split = _splittings(A, min(t_max, A.top))
    spaces = [
        FlatCochainSpace(m, _BarCochains(A, m, s, t_max).labels()) if m >= 0
        else FlatCochainSpace(m, [])
        for m in (n - 1, n, n + 1)
    ]
    din = (bar_differential(A, n - 1, s, t_max, split) if n >= 1
           else GF2Matrix(spaces[1].dim, 0))
    dout = bar_differential(A, n, s, t_max, split)
    if not A.truncated and t_max >= A.top - s:
        # every source word of larger degree maps into A above its top degree
        return CochainComplexWindow("bar", n, s, spaces[0], spaces[1], spaces[2], din, dout)
    return CochainComplexWindow(
        "bar", n, s, spaces[0], spaces[1], spaces[2], din, dout, truncation=t_max,
        caveat=f"bar cochains restricted to source words of internal degree <= {t_max}; "
               "kernels here are not Hochschild cohomology",
    )


def bar_cochain(A: GradedAlgebra, m: int, s: int, t_max: int, fn) -> int:
    """Bar cochain vector from ``fn(word) -> bits`` where ``word`` is a tuple of
    ``(degree, index)`` factors."""
    sp = _BarCochains(A, m, s, t_max)
    v = 0
    for w in sp.words:
        v |= fn(w) << sp.offset[w]
    return v


def bar_cochain_eval(A: GradedAlgebra, m: int, s: int, t_max: int, v: int, word) -> int:
    sp = _BarCochains(A, m, s, t_max)
    width = A.dim(_word_degree(word) + s)
    return (v >> sp.offset[tuple(word)]) & ((1 << width) - 1)


def restriction_to_koszul(kd: KoszulData, m: int, s: int, t_max: int) -> GF2Matrix:
    """Restrict bar cochains on ``A^{⊗m}`` to the subspace ``K'_m ⊆ (A^1)^{⊗m}``."""
    A = kd.table
    g = kd.presentation.g
    src = _BarCochains(A, m, s, t_max)
    tgt = _koszul_space(kd, m, s)
    width = len(tgt.targets)
    # which K' basis vectors contain each pure word
    containing: dict[int, list[int]] = {}
    for k, v in enumerate(kd.basis[m]):
        for i in bits_of(v):
            containing.setdefault(i, []).append(k)
    cols = []
    for w in src.words:
        d = _word_degree(w)
        pure = all(x == 1 for x, _ in w)
        idx = 0
        for _, p in w:
            idx = idx * g + p
        for xb in range(A.dim(d + s)):
            col = 0
            if pure:
                for k in containing.get(idx, ()):
                    col ^= 1 << (k * width + xb)
            cols.append(col)
    return GF2Matrix.from_columns(tgt.dim, cols)


# --- cohomology --------------------------------------------------------------------


@dataclass
class HHCertificate:
    dimension: int
    kernel: Subspace
    image: Subspace
    representatives: list[int] = field(default_factory=list)


def hh_certificate(w: CochainComplexWindow) -> HHCertificate:
    if w.truncation is not None:
        raise ValueError("truncated bar-model windows cannot certify HH")
    ker = kernel_basis(w.dout)
    img = image_basis(w.din)
    if not ker.contains_subspace(img):
        raise AssertionError("image of the incoming differential is not inside the kernel")
    reps = [r for r in (img.reduce(v) for v in ker.basis) if r]
    reps = list(Subspace.span(w.domain.dim, reps).basis)
    # the reduced kernel vectors span a complement of the image
    return HHCertificate(ker.dim - img.dim, ker, img, reps)


def hh_dimension(w: CochainComplexWindow) -> int:
    if w.truncation is not None:
        raise ValueError("truncated bar-model windows cannot certify HH")
    return (w.domain.dim - rank(w.dout)) - rank(w.din)


# --- the (3, -1) window of F_2[a,b,c]/(ab, bc) ----------------------------------------------

KERNEL_BASIS_IDENTITIES = [
    (("b⊗a", "b"), [("b⊗a⊗b", "b^2")]),
    (("b⊗c", "b"), [("b⊗c⊗b", "b^2")]),
    (("e", "b"), [("b⊗e", "b^2"), ("e⊗b", "b^2")]),
    (("c⊗b", "a"), [("e⊗b", "a^2"), ("c⊗b⊗a", "a^2"), ("c⊗b⊗c", "ac")]),
    (("b⊗c", "a"), [("b⊗e", "a^2"), ("a⊗b⊗c", "a^2"), ("c⊗b⊗c", "ac")]),
    (("a⊗b", "a"), [("e⊗b", "ac"), ("a⊗b⊗c", "ac"), ("a⊗b⊗a", "a^2")]),
    (("a⊗b", "c"), [("e⊗b", "c^2"), ("a⊗b⊗c", "c^2"), ("a⊗b⊗a", "ac")]),
    (("b⊗a", "c"), [("b⊗e", "c^2"), ("c⊗b⊗a", "c^2"), ("a⊗b⊗a", "ac")]),
    (("c⊗b", "c"), [("e⊗b", "ac"), ("c⊗b⊗a", "ac"), ("c⊗b⊗c", "c^2")]),
    (("b⊗c", "c"), [("b⊗e", "ac"), ("a⊗b⊗c", "ac"), ("c⊗b⊗c", "c^2")]),
]

# the term of each identity that appears in no other one
PIVOT_TERMS = [
    ("b⊗a⊗b", "b^2"), ("b⊗c⊗b", "b^2"), ("b⊗e", "b^2"), ("e⊗b", "a^2"),
    ("b⊗e", "a^2"), ("a⊗b⊗a", "a^2"), ("e⊗b", "c^2"), ("b⊗e", "c^2"),
    ("c⊗b⊗a", "ac"), ("b⊗e", "ac"),
]


def _require_paper_window(w: CochainComplexWindow):
    if w.model != "koszul" or (w.n, w.s) != (3, -1):
        raise ValueError("expected the Koszul window at (3, -1)")
    if w.domain.sources and set(w.domain.sources) != {
        "a⊗b⊗a", "a⊗b⊗c", "c⊗b⊗a", "c⊗b⊗c", "b⊗a⊗b", "b⊗c⊗b", "e⊗b", "b⊗e"
    }:
        raise ValueError("window is not labeled by the alternating string basis")


def _relation_maps(w: CochainComplexWindow, A):
    """Each kernel relation as a function ``f -> bitset`` that vanishes iff it holds."""
    sp = w.domain
    tg = sp.targets
    outside_b2 = sum(1 << tg.index(x) for x in ("a^2", "ac", "c^2"))
    only_b2 = 1 << tg.index("b^2")
    a, c = A.label_index(1, "a"), A.label_index(1, "c")

    def left(letter, x):
        return A.mul(1, 1 << letter, 2, x)

    def f(v, src):
        return sp.value(v, src)

    def pack(*parts):
        out, shift = 0, 0
        for width, bits in parts:
            out |= bits << shift
            shift += width
        return out

    d3 = A.dim(3)
    return {
        "i": lambda v: pack(*((4, f(v, s) & outside_b2) for s in ("b⊗a⊗b", "b⊗c⊗b"))),
        "ii": lambda v: pack(
            *((4, f(v, s) & only_b2) for s in ("a⊗b⊗a", "a⊗b⊗c", "c⊗b⊗a", "c⊗b⊗c"))
        ),
        "iii": lambda v: left(a, f(v, "c⊗b⊗a") ^ f(v, "e⊗b")) ^ left(c, f(v, "a⊗b⊗a")),
        "iv": lambda v: left(c, f(v, "a⊗b⊗c") ^ f(v, "e⊗b")) ^ left(a, f(v, "c⊗b⊗c")),
        "v": lambda v: left(a, f(v, "a⊗b⊗c") ^ f(v, "b⊗e")) ^ left(c, f(v, "a⊗b⊗a")),
        "vi": lambda v: left(c, f(v, "c⊗b⊗a") ^ f(v, "b⊗e")) ^ left(a, f(v, "c⊗b⊗c")),
        "vii": lambda v: (f(v, "e⊗b") ^ f(v, "b⊗e")) & only_b2,
    }, d3


RELATION_NAMES = ("i", "ii", "iii", "iv", "v", "vi", "vii")


def kernel_relation_check(w: CochainComplexWindow, f: int, A) -> dict[str, bool]:
    """Evaluate the seven linear kernel relations on a cochain ``f``."""
    _require_paper_window(w)
    maps, _ = _relation_maps(w, A)
    return {name: maps[name](f) == 0 for name in RELATION_NAMES}


def relation_matrix(w: CochainComplexWindow, A) -> GF2Matrix:
    """All seven relations stacked as one linear map on the domain."""
    _require_paper_window(w)
    maps, _ = _relation_maps(w, A)
    cols = []
    for bit in range(w.domain.dim):
        out, shift = 0, 0
        for name in RELATION_NAMES:
            val = maps[name](1 << bit)
            out |= val << shift
            shift += 16
        cols.append(out)
    return GF2Matrix.from_columns(16 * len(RELATION_NAMES), cols)


def relation_solution_space(w: CochainComplexWindow, A) -> Subspace:
    return kernel_basis(relation_matrix(w, A))


def kernel_basis_check(w: CochainComplexWindow) -> Verdict:
    """Check the ten listed ``∂²``-images: each identity, independence, and span = ker ``∂³``."""
    _require_paper_window(w)
    v = Verdict("kernel basis of ∂³")
    images = []
    for (src, tgt), terms in KERNEL_BASIS_IDENTITIES:
        pre = w.prev.vector([(src, tgt)])
        got = w.din.apply(pre)
        want = w.domain.vector(terms)
        images.append(want)
        if got != want:
            v.fail(f"∂²(F2({src}; {tgt})) = {w.domain.format(got)}, listed {w.domain.format(want)}")
        else:
            v.note(f"∂²(F2({src}; {tgt})) = {w.domain.format(got)}")
    span = Subspace.span(w.domain.dim, images)
    if span.dim != len(images):
        v.fail(f"listed maps have rank {span.dim} < {len(images)}")
    ker = kernel_basis(w.dout)
    if span != ker:
        v.fail(f"span of listed maps (dim {span.dim}) != ker ∂³ (dim {ker.dim})")
    img = image_basis(w.din)
    if img != ker:
        v.fail("Im ∂² != Ker ∂³")
    else:
        v.note(f"Im ∂² = Ker ∂³, dimension {ker.dim}")
    return v


def is_paper_window(w: CochainComplexWindow, kd: KoszulData) -> bool:
    return kd.strings and is_paper_algebra(kd.presentation) and (w.n, w.s) == (3, -1)


def trivialize(w: CochainComplexWindow, cocycle: int):
    """Solve ``din η = cocycle``; ``None`` when the class is nonzero."""
    if w.dout.apply(cocycle):
        raise ValueError("input is not a cocycle")
    return solve(w.din, cocycle)
