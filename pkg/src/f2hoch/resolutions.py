"""Bar and Koszul resolutions of quadratic algebras, sliced by internal degree.

The bar complex ``B_n = A^{⊗n+2}`` is built one (homological, internal) slice at
a time and augmented by ``B_{-1} = A``. The Koszul spaces
``K'_n = ∩_i V^{⊗i-1} ⊗ R ⊗ V^{⊗n-i-1}`` are computed by exact intersection
for any presentation. For ``F_2[a,b,c]/(ab, bc)`` there is additionally a
labeled basis of strings over ``{a, b, c, e}`` with ``e = a⊗c + c⊗a``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product

from .algebra import (
    GradedAlgebraTable,
    QuadraticPresentation,
    TruncationError,
    is_paper_algebra,
    split_first,
    split_last,
    tensor_product,
)
from .gf2 import Coordinates, GF2Matrix, Subspace, bits_of, intersect, rank
from .verdict import Verdict

# --- Koszul spaces -------------------------------------------------------------


def x_space(p: QuadraticPresentation, n: int, i: int) -> Subspace:
    """``X_i^n = V^{⊗i-1} ⊗ R ⊗ V^{⊗n-i-1}`` inside ``V^{⊗n}``."""
    if not 1 <= i <= n - 1:
        raise ValueError(f"need 1 <= i <= n-1, got i={i}, n={n}")
    g = p.g
    left, right = g ** (i - 1), g ** (n - i - 1)
    vecs = []
    for u in range(left):
        for r in p.relations:
            for v in range(right):
                w = 0
                for k in bits_of(r):
                    w |= 1 << ((u * g * g + k) * right + v)
                vecs.append(w)
    return Subspace.span(g**n, vecs)


def ideal_space(p: QuadraticPresentation, n: int) -> Subspace:
    """``Σ_i X_i^n``, the degree-``n`` part of the two-sided ideal ``(R)``."""
    if n < 2:
        return Subspace.zero(p.g**n)
    total = x_space(p, n, 1)
    for i in range(2, n):
        total = total + x_space(p, n, i)
    return total


@dataclass
class KoszulData:
    """The spaces ``X_i^n`` and ``K'_n`` for ``n <= N`` with a chosen basis of each ``K'_n``.

    ``basis[n]`` is a list of vectors in ``V^{⊗n}`` spanning ``K'_n`` and
    ``labels[n]`` names them. For the main example the basis is the
    alternating-string basis; otherwise it is the canonical echelon basis.
    """

    table: GradedAlgebraTable
    N: int
    X: dict[tuple[int, int], Subspace]
    K: list[Subspace]
    basis: list[list[int]]
    labels: list[list[str]]
    strings: bool = False

    @property
    def presentation(self) -> QuadraticPresentation:
        return self.table.presentation

    def dim(self, n: int) -> int:
        if n < 0:
            return 0
        if n > self.N:
            raise TruncationError(f"K'_{n} not computed (N = {self.N})")
        return len(self.basis[n])

    @cached_property
    def _coords(self) -> dict[int, Coordinates]:
        return {}

    def coords(self, n: int) -> Coordinates:
        c = self._coords.get(n)
        if c is None:
            c = self._coords[n] = Coordinates(self.basis[n])
        return c

    def left_parts(self, n: int) -> list[dict[int, int]]:
        """For each basis vector ``v`` of ``K'_n``: ``{x: coords of v_x in K'_{n-1}}``
        where ``v = Σ_x x ⊗ v_x``."""
        return self._parts(n, split_first)

    def right_parts(self, n: int) -> list[dict[int, int]]:
        """Same as :meth:`left_parts` for ``v = Σ_y v_y ⊗ y``."""
        return self._parts(n, split_last)

    def _parts(self, n, splitter):
        key = (n, splitter.__name__)
        cache = self.__dict__.setdefault("_parts_cache", {})
        if key not in cache:
            g = self.presentation.g
            co = self.coords(n - 1)
            cache[key] = [
                {x: co(w) for x, w in splitter(v, n, g).items()} for v in self.basis[n]
            ]
        return cache[key]

    def permuted(self, n: int, order) -> KoszulData:
        """Copy with the basis of ``K'_n`` listed in a different order."""
        basis = list(self.basis)
        labels = list(self.labels)
        basis[n] = [self.basis[n][k] for k in order]
        labels[n] = [self.labels[n][k] for k in order]
        return KoszulData(self.table, self.N, self.X, self.K, basis, labels, self.strings)


def koszul_spaces(t: GradedAlgebraTable, N: int, use_strings: bool | None = None) -> KoszulData:
    p = t.presentation
    g = p.g
    if use_strings is None:
        use_strings = is_paper_algebra(p)
    elif use_strings and not is_paper_algebra(p):
        raise ValueError("string bases exist only for F_2[a,b,c]/(ab, bc)")
    X: dict[tuple[int, int], Subspace] = {}
    K: list[Subspace] = []
    basis: list[list[int]] = []
    labels: list[list[str]] = []
    for n in range(N + 1):
        if n <= 1:
            # empty intersection is the whole space
            K.append(Subspace.full(g**n))
        else:
            acc = None
            for i in range(1, n):
                X[n, i] = x_space(p, n, i)
                acc = X[n, i] if acc is None else intersect(acc, X[n, i])
            K.append(acc)
        if use_strings:
            elems = alternating_strings(n)
            vecs = [s.vector() for s in elems]
            if Subspace.span(g**n, vecs) != K[n] or len(vecs) != K[n].dim:
                raise AssertionError(f"alternating strings do not form a basis of K'_{n}")
            basis.append(vecs)
            labels.append([s.label() for s in elems])
        else:
            basis.append(list(K[n].basis))
            labels.append([p.vector_label(v, n) if n else "1" for v in K[n].basis])
    return KoszulData(t, N, X, K, basis, labels, use_strings)


# --- string bases for F_2[a,b,c]/(ab, bc) ------------------------------------------

_SYMBOL_DEGREE = {"a": 1, "b": 1, "c": 1, "e": 2}
_SYMBOL_WORDS = {"a": [(0,)], "b": [(1,)], "c": [(2,)], "e": [(0, 2), (2, 0)]}
_R_PAIRS = {"ab", "ba", "cb", "bc", "eb", "be", "ee"}


@dataclass(frozen=True, order=True)
class StringBasisElement:
    word: str

    @property
    def degree(self) -> int:
        return sum(_SYMBOL_DEGREE[s] for s in self.word)

    def expanded(self) -> str:
        """The string with every ``e`` doubled; its length equals the degree."""
        return "".join(s * 2 if s == "e" else s for s in self.word)

    def symbol_at(self, i: int) -> str:
        """``x_(i)``, 1-indexed position in the doubled string."""
        return self.expanded()[i - 1]

    def _owners(self) -> list[int]:
        owners = []
        for k, s in enumerate(self.word):
            owners.extend([k] * _SYMBOL_DEGREE[s])
        return owners

    def in_subbasis(self, i: int, same_e_only: bool = True) -> bool:
        """Whether positions ``i, i+1`` carry a relation.

        ``ee`` counts only when both positions come from one ``e``; two adjacent
        ``e`` symbols straddled by ``(i, i+1)`` give ``(a|c)(a|c)`` terms that are
        not relations. ``same_e_only=False`` gives the looser reading for comparison.
        """
        pair = self.symbol_at(i) + self.symbol_at(i + 1)
        if pair not in _R_PAIRS:
            return False
        if pair == "ee" and same_e_only:
            owners = self._owners()
            return owners[i - 1] == owners[i]
        return True

    def vector(self) -> int:
        """Expansion in the pure-tensor basis of ``V^{⊗n}`` (generators a, b, c)."""
        v, n = 1, 0
        for s in self.word:
            piece = 0
            for w in _SYMBOL_WORDS[s]:
                idx = 0
                for x in w:
                    idx = idx * 3 + x
                piece ^= 1 << idx
            v = tensor_product(v, n, piece, len(_SYMBOL_WORDS[s][0]), 3)
            n += _SYMBOL_DEGREE[s]
        return v

    def label(self, sep: str = "⊗") -> str:
        return sep.join(self.word) if self.word else "1"

    def __str__(self) -> str:
        return self.word


def _strings(n: int, allowed_next) -> list[StringBasisElement]:
    out: list[str] = []

    def grow(prefix: str, remaining: int):
        if remaining == 0:
            out.append(prefix)
            return
        for s in "abce":
            d = _SYMBOL_DEGREE[s]
            if d <= remaining and allowed_next(prefix[-1:] if prefix else "", s):
                grow(prefix + s, remaining - d)

    grow("", n)
    return [StringBasisElement(w) for w in sorted(out)]


def _check_presentation(presentation):
    if presentation is not None and not is_paper_algebra(presentation):
        raise ValueError("string bases exist only for F_2[a,b,c]/(ab, bc)")


def string_basis(n: int, presentation: QuadraticPresentation | None = None):
    """All degree-``n`` strings over ``{a,b,c,e}`` without the substring ``ca``."""
    _check_presentation(presentation)
    return _strings(n, lambda last, s: not (last == "c" and s == "a"))


def string_subbasis(n: int, i: int, presentation=None, same_e_only: bool = True):
    _check_presentation(presentation)
    if not 1 <= i <= n - 1:
        raise ValueError(f"need 1 <= i <= n-1, got i={i}, n={n}")
    return [x for x in string_basis(n) if x.in_subbasis(i, same_e_only)]


def alternating_strings(n: int) -> list[StringBasisElement]:
    """Strings of degree ``n`` alternating between ``b`` and one of ``a, c, e``."""
    return _strings(n, lambda last, s: last == "" or (last == "b") != (s == "b"))


def string_change_of_basis_rank(n: int) -> int:
    return Subspace.span(3**n, (x.vector() for x in string_basis(n))).dim


def check_distributivity(t: GradedAlgebraTable, kd: KoszulData, N: int) -> Verdict:
    """Check that the string basis distributes ``X_1^n, ..., X_{n-1}^n`` for ``n <= N``.

    Compares against the spaces in ``kd``, so a presentation with other
    relations (on generators a, b, c) is reported as a failure with a witness.
    """
    v = Verdict("distributivity")
    p = t.presentation
    if p.generators != ("a", "b", "c"):
        return v.fail("string bases need generators [a, b, c]")
    for n in range(2, N + 1):
        full = string_basis(n)
        if len(full) != 3**n or string_change_of_basis_rank(n) != 3**n:
            v.fail(f"n={n}: string set is not a basis of V^{n}")
            continue
        common = set(full)
        for i in range(1, n):
            sub = string_subbasis(n, i)
            X = kd.X[n, i]
            common &= set(sub)
            if len(sub) != X.dim:
                v.fail(f"n={n}, i={i}: |B_i^n| = {len(sub)} but dim X_i^n = {X.dim}")
                continue
            if Subspace.span(3**n, (x.vector() for x in sub)) != X:
                v.fail(f"n={n}, i={i}: span(B_i^n) != X_i^n")
                continue
        prime = sorted(common)
        span = Subspace.span(3**n, (x.vector() for x in prime))
        if len(prime) != kd.K[n].dim or span != kd.K[n]:
            v.fail(f"n={n}: ∩B_i^n ({len(prime)} strings) does not span K'_{n} (dim {kd.K[n].dim})")
        else:
            v.note(f"n={n}: {n - 1} subspaces distributed, dim K'_{n} = {kd.K[n].dim}")
    return v


# --- bar complex -----------------------------------------------------------------


def _compositions(total: int, parts: int, cap: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(min(total, cap) + 1):
        for rest in _compositions(total - first, parts - 1, cap):
            yield (first,) + rest


@dataclass
class BarSlice:
    """``B_n(A)`` in internal degree ``t`` with its differential to ``B_{n-1}``.

    ``n = -1`` is the augmentation term ``A^t``. Basis words are tuples of
    ``(degree, basis index)`` factors; ``d`` has one column per basis word.
    """

    n: int
    t: int
    basis: list[tuple[tuple[int, int], ...]]
    index: dict
    d_columns: list[int] = field(default_factory=list)
    target_dim: int = 0

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def d(self) -> GF2Matrix:
        return GF2Matrix.from_columns(self.target_dim, self.d_columns)


class BarComplex:
    """Lazily built slices of the augmented bar complex of a truncated algebra."""

    def __init__(self, table):
        self.table = table
        self._bases: dict[tuple[int, int], tuple[list, dict]] = {}
        self._slices: dict[tuple[int, int], BarSlice] = {}

    def basis(self, n: int, t: int):
        key = (n, t)
        if key not in self._bases:
            A = self.table
            if t > A.top:
                raise TruncationError(f"internal degree {t} beyond truncation {A.top}")
            words = []
            if n == -1:
                words = [((t, p),) for p in range(A.dim(t))]
            else:
                for comp in _compositions(t, n + 2, A.top):
                    ranges = [range(A.dim(d)) for d in comp]
                    for idxs in product(*ranges):
                        words.append(tuple(zip(comp, idxs)))
            self._bases[key] = (words, {w: k for k, w in enumerate(words)})
        return self._bases[key]

    def slice(self, n: int, t: int) -> BarSlice:
        key = (n, t)
        if key in self._slices:
            return self._slices[key]
        words, index = self.basis(n, t)
        s = BarSlice(n, t, words, index)
        if n >= 0:
            tw, tindex = self.basis(n - 1, t)
            s.target_dim = len(tw)
            A = self.table
            for w in words:
                col = 0
                for i in range(n + 1):
                    (d1, p1), (d2, p2) = w[i], w[i + 1]
                    prod_bits = A.basis_product(d1, p1, d2, p2)
                    for q in bits_of(prod_bits):
                        merged = w[:i] + ((d1 + d2, q),) + w[i + 2:]
                        col ^= 1 << tindex[merged]
                s.d_columns.append(col)
        self._slices[key] = s
        return s

    def homology(self, n: int, t: int) -> int:
        """Homology of the augmented complex at ``(n, t)``, ``n >= -1``."""
        cur = self.slice(n, t)
        dim = cur.dim
        r_out = rank(cur.d) if n >= 0 else 0
        r_in = rank(self.slice(n + 1, t).d)
        return dim - r_out - r_in


def bar_slice(t: GradedAlgebraTable, n: int, internal: int) -> BarSlice:
    return BarComplex(t).slice(n, internal)


def check_contracting_homotopy(t, n_max: int, t_max: int, differential=None) -> Verdict:
    """Verify ``dh + hd = 1`` with ``h(w) = 1 ⊗ w`` on every augmented bar slice.

    ``differential(n, t)`` may override the differential columns of ``B_n``
    (used to inject faults); by default the true differential is used.
    """
    bar = BarComplex(t)
    if differential is None:
        differential = lambda n, s: bar.slice(n, s).d_columns  # noqa: E731
    if t.dim(0) != 1:
        raise ValueError("contracting homotopy needs A^0 spanned by the unit")
    unit = (0, 0)
    v = Verdict("contracting homotopy")
    for s in range(t_max + 1):
        for n in range(-1, n_max + 1):
            words, _ = bar.basis(n, s)
            _, up_index = bar.basis(n + 1, s)
            _, down_index = bar.basis(n, s) if n >= 0 else (None, None)
            d_up = differential(n + 1, s)
            d_here = differential(n, s) if n >= 0 else None
            lower_words = bar.basis(n - 1, s)[0] if n >= 0 else None
            for k, w in enumerate(words):
                acc = d_up[up_index[(unit,) + w]]
                if n >= 0:
                    for j in bits_of(d_here[k]):
                        acc ^= 1 << down_index[(unit,) + lower_words[j]]
                if acc != 1 << k:
                    return v.fail(
                        f"(dh+hd)(w) != w at n={n}, t={s}, w={_bar_label(t, w)}"
                    )
        v.note(f"t={s}: dh+hd = 1 for -1 <= n <= {n_max}")
    return v


def _bar_label(A, w) -> str:
    return " ⊗ ".join(A.labels[d][p] for d, p in w)


def check_bar_dd(t, n_max: int, t_max: int) -> Verdict:
    bar = BarComplex(t)
    v = Verdict("bar d∘d = 0")
    for s in range(t_max + 1):
        for n in range(1, n_max + 1):
            if not (bar.slice(n - 1, s).d @ bar.slice(n, s).d).is_zero():
                return v.fail(f"d∘d != 0 at n={n}, t={s}")
    return v


# --- Koszul complex ---------------------------------------------------------------


class KoszulComplex:
    """Slices of ``K_n(A^e, A) = A ⊗ K'_n ⊗ A`` with the induced bar differential."""

    def __init__(self, kd: KoszulData):
        self.kd = kd
        self.table = kd.table
        self._bases: dict[tuple[int, int], tuple[list, dict]] = {}

    def basis(self, n: int, t: int):
        key = (n, t)
        if key not in self._bases:
            A, kd = self.table, self.kd
            words = []
            if 0 <= n <= t:
                for i in range(t - n + 1):
                    j = t - n - i
                    for p, k, q in product(range(A.dim(i)), range(kd.dim(n)), range(A.dim(j))):
                        words.append((i, p, k, j, q))
            self._bases[key] = (words, {w: m for m, w in enumerate(words)})
        return self._bases[key]

    def d(self, n: int, t: int) -> GF2Matrix:
        """``d_n : K_n -> K_{n-1}`` at internal degree ``t``; ``d_0`` is the augmentation."""
        A = self.table
        src, _ = self.basis(n, t)
        if n == 0:
            cols = [A.basis_product(i, p, j, q) for (i, p, _k, j, q) in src]
            return GF2Matrix.from_columns(A.dim(t), cols)
        tgt, tindex = self.basis(n - 1, t)
        left = self.kd.left_parts(n)
        right = self.kd.right_parts(n)
        cols = []
        for i, p, k, j, q in src:
            col = 0
            for x, co in left[k].items():
                ax = A.right_letter(i, 1 << p, x)
                for p2 in bits_of(ax):
                    for k2 in bits_of(co):
                        col ^= 1 << tindex[(i + 1, p2, k2, j, q)]
            for y, co in right[k].items():
                yb = A.basis_product(1, y, j, q)
                for q2 in bits_of(yb):
                    for k2 in bits_of(co):
                        col ^= 1 << tindex[(i, p, k2, j + 1, q2)]
            cols.append(col)
        return GF2Matrix.from_columns(len(tgt), cols)


def check_koszul_truncated(t: GradedAlgebraTable, kd: KoszulData, t_max: int) -> Verdict:
    """Exactness of the Koszul complex in internal degrees ``<= t_max``.

    Checks ``d∘d = 0``, ``H_n = 0`` for ``n > 0`` and that the augmentation
    identifies ``H_0`` with ``A``. The result is a statement about the listed
    degrees only.
    """
    if t_max > t.D:
        raise TruncationError(f"t_max {t_max} exceeds algebra truncation {t.D}")
    if t_max > kd.N:
        raise TruncationError(f"t_max {t_max} exceeds computed Koszul degree {kd.N}")
    kc = KoszulComplex(kd)
    v = Verdict(f"Koszul complex exact up to internal degree {t_max}")
    for s in range(t_max + 1):
        mats = {n: kc.d(n, s) for n in range(0, s + 1)}
        ranks = {n: rank(m) for n, m in mats.items()}
        ranks[s + 1] = 0
        for n in range(1, s + 1):
            if not (mats[n - 1] @ mats[n]).is_zero():
                v.fail(f"t={s}: d_{n - 1}∘d_{n} != 0")
        dims = {n: len(kc.basis(n, s)[0]) for n in range(0, s + 1)}
        for n in range(1, s + 1):
            h = dims[n] - ranks[n] - ranks[n + 1]
            if h:
                v.fail(f"t={s}: H_{n} has dimension {h}")
        h0 = dims[0] - ranks[1]
        if h0 != t.dim(s) or ranks[0] != t.dim(s):
            v.fail(f"t={s}: H_0 has dimension {h0}, A^{s} has dimension {t.dim(s)}")
        if v.passed:
            v.note(f"t={s}: exact, H_0 = A^{s} (dim {t.dim(s)})")
    return v
