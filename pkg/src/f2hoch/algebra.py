"""Quadratic algebras ``T(V)/(R)`` over F_2 and their truncated multiplication tables.

Words in ``V^{⊗n}`` are tuples of generator indices; a word's position in the
pure-tensor basis is its base-``g`` encoding with the first letter most
significant, so positional order is lexicographic order.

Normal-form monomials are the lexicographically earliest words: in each degree
the relation space is row reduced so that its pivots sit on the latest words,
and the surviving words form the basis of ``A^n``. For the main example this
yields ``A^2 = {a^2, ac, b^2, c^2}``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

from .gf2 import Subspace, bits_of, low_bit, rref_rows


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class TruncationError(ValueError):
    pass


# --- tensor words ----------------------------------------------------------


def word_index(word, g: int) -> int:
    idx = 0
    for x in word:
        idx = idx * g + x
    return idx


def index_word(idx: int, g: int, n: int) -> tuple[int, ...]:
    out = []
    for _ in range(n):
        idx, x = divmod(idx, g)
        out.append(x)
    return tuple(reversed(out))


@dataclass(frozen=True)
class TensorSpaceIndex:
    """The pure-tensor word basis of ``V^{⊗n}`` for ``g`` generators."""

    g: int
    n: int

    @property
    def dim(self) -> int:
        return self.g**self.n

    def index(self, word) -> int:
        if len(word) != self.n:
            raise ValueError(f"word of length {len(word)} in V^{self.n}")
        return word_index(word, self.g)

    def word(self, idx: int) -> tuple[int, ...]:
        return index_word(idx, self.g, self.n)

    def words(self):
        return [self.word(i) for i in range(self.dim)]


def tensor_product(u: int, nu: int, v: int, nv: int, g: int) -> int:
    """``u ⊗ v`` for ``u ∈ V^{⊗nu}``, ``v ∈ V^{⊗nv}`` given as bitsets over words."""
    shift = g**nv
    out = 0
    for i in bits_of(u):
        base = i * shift
        for j in bits_of(v):
            out ^= 1 << (base + j)
    return out


def split_first(v: int, n: int, g: int) -> dict[int, int]:
    """Write ``v ∈ V^{⊗n}`` as ``Σ_x x ⊗ v_x``; returns ``{x: v_x}`` for nonzero parts."""
    rest = g ** (n - 1)
    out: dict[int, int] = {}
    for i in bits_of(v):
        x, r = divmod(i, rest)
        out[x] = out.get(x, 0) ^ (1 << r)
    return {x: w for x, w in out.items() if w}


def split_last(v: int, n: int, g: int) -> dict[int, int]:
    """Write ``v ∈ V^{⊗n}`` as ``Σ_y v_y ⊗ y``; returns ``{y: v_y}``."""
    out: dict[int, int] = {}
    for i in bits_of(v):
        r, y = divmod(i, g)
        out[y] = out.get(y, 0) ^ (1 << r)
    return {y: w for y, w in out.items() if w}


# --- presentations ---------------------------------------------------------


@dataclass(frozen=True)
class QuadraticPresentation:
    """Generators (all of internal degree 1) and a relation space ``R ⊆ V⊗V``.

    ``relations`` holds the reduced row echelon basis of ``R``; position of
    ``x⊗y`` is ``x*g + y``.
    """

    generators: tuple[str, ...]
    relations: tuple[int, ...]

    def __post_init__(self):
        if not self.generators:
            raise ValueError("empty generator list")
        if len(set(self.generators)) != len(self.generators):
            raise ValueError("duplicate generator names")
        canon = rref_rows(self.relations)
        if any(r >> (self.g * self.g) for r in canon):
            raise ValueError("relation outside V⊗V")
        object.__setattr__(self, "relations", canon)

    @classmethod
    def from_words(cls, generators, relations) -> QuadraticPresentation:
        """``relations`` is a list of sums, each a list of two-letter words (names)."""
        gens = tuple(generators)
        pos = {x: i for i, x in enumerate(gens)}
        g = len(gens)
        vecs = []
        for rel in relations:
            v = 0
            for x, y in rel:
                v ^= 1 << (pos[x] * g + pos[y])
            vecs.append(v)
        return cls(gens, tuple(vecs))

    @property
    def g(self) -> int:
        return len(self.generators)

    @property
    def relation_space(self) -> Subspace:
        return Subspace(self.g * self.g, self.relations)

    def word_label(self, word, sep: str = "") -> str:
        return sep.join(self.generators[x] for x in word)

    def vector_label(self, v: int, n: int, sep: str = "⊗") -> str:
        if v == 0:
            return "0"
        return " + ".join(self.word_label(index_word(i, self.g, n), sep) for i in bits_of(v))

    def permuted(self, order) -> QuadraticPresentation:
        """Same algebra with generators listed in a different order."""
        order = list(order)
        gens = tuple(self.generators[i] for i in order)
        new_pos = {old: new for new, old in enumerate(order)}
        g = self.g
        rels = []
        for r in self.relations:
            v = 0
            for i in bits_of(r):
                x, y = divmod(i, g)
                v ^= 1 << (new_pos[x] * g + new_pos[y])
            rels.append(v)
        return QuadraticPresentation(gens, tuple(rels))

    def same_algebra(self, other: QuadraticPresentation) -> bool:
        return self.generators == other.generators and self.relations == other.relations


_ENTRY_RE = re.compile(r"(\w+)\s*=\s*\[([^\]]*)\]", re.S)


def _strip_comments(text: str) -> str:
    return re.sub(r"#[^\n]*", lambda m: " " * len(m.group()), text)


def parse_presentation(text: str) -> QuadraticPresentation:
    """Parse the ``quadratic { ... }`` text format.

    ``relations_commutative`` lists commutative relations: a single monomial
    ``x*y`` kills both ``x⊗y`` and ``y⊗x``, a sum is lifted term by term, and
    every generator pair not killed by a monomial gets its commutator
    ``u⊗v + v⊗u``.
    """
    src = _strip_comments(text)
    lineno = lambda pos: src.count("\n", 0, pos) + 1  # noqa: E731

    head = re.search(r"\bquadratic\s*\{", src)
    if head is None:
        raise ParseError("expected 'quadratic {' block", 1)
    close = src.rfind("}")
    if close < head.end():
        raise ParseError("unterminated block", lineno(len(src)))
    body_start = head.end()
    body = src[body_start:close]

    entries: dict[str, tuple[list[tuple[str, int]], int]] = {}
    consumed = []
    for m in _ENTRY_RE.finditer(body):
        key = m.group(1)
        line = lineno(body_start + m.start())
        if key in entries:
            raise ParseError(f"duplicate key {key!r}", line)
        items = []
        offset = body_start + m.start(2)
        for im in re.finditer(r"[^,]+", m.group(2)):
            item = im.group().strip()
            if item:
                items.append((item, lineno(offset + im.start())))
        entries[key] = (items, line)
        consumed.append((m.start(), m.end()))
    leftover = body
    for a, b in reversed(consumed):
        leftover = leftover[:a] + " " * (b - a) + leftover[b:]
    stray = re.search(r"\S", leftover)
    if stray:
        raise ParseError(f"unexpected text {leftover[stray.start():].split()[0]!r}",
                         lineno(body_start + stray.start()))

    allowed = {"generators", "relations", "relations_commutative"}
    for key, (_, line) in entries.items():
        if key not in allowed:
            raise ParseError(f"unknown key {key!r} (generators must have degree 1)", line)
    if "generators" not in entries:
        raise ParseError("missing generators", lineno(body_start))
    gens_items, gline = entries["generators"]
    gens = [name for name, _ in gens_items]
    if not gens:
        raise ParseError("empty generator list", gline)
    for name, line in gens_items:
        if not re.fullmatch(r"[A-Za-z_]\w*", name):
            raise ParseError(f"bad generator name {name!r}", line)
    if len(set(gens)) != len(gens):
        raise ParseError("duplicate generator", gline)
    gset = set(gens)

    def parse_sum(item: str, line: int) -> list[tuple[str, str]]:
        terms = []
        for term in item.split("+"):
            letters = [t.strip() for t in term.split("*")]
            if any(not t for t in letters):
                raise ParseError(f"malformed term {term.strip()!r}", line)
            for t in letters:
                if t not in gset:
                    raise ParseError(f"unknown generator {t!r}", line)
            if len(letters) != 2:
                raise ParseError(f"non-quadratic term {term.strip()!r}", line)
            terms.append((letters[0], letters[1]))
        return terms

    relations: list[list[tuple[str, str]]] = []
    for item, line in entries.get("relations", ([], 0))[0]:
        relations.append(parse_sum(item, line))
    killed: set[frozenset[str]] = set()
    for item, line in entries.get("relations_commutative", ([], 0))[0]:
        terms = parse_sum(item, line)
        if len(terms) == 1:
            x, y = terms[0]
            killed.add(frozenset((x, y)))
            relations.append([(x, y)])
            if x != y:
                relations.append([(y, x)])
        else:
            relations.append(terms)
    if "relations_commutative" in entries:
        for u, v in combinations(gens, 2):
            if frozenset((u, v)) not in killed:
                relations.append([(u, v), (v, u)])
    return QuadraticPresentation.from_words(gens, relations)


BUILTIN_TEXT = {
    "paper": """quadratic {
  generators = [a, b, c]
  relations_commutative = [a*b, b*c]
}
""",
    "dual": """quadratic {
  generators = [a]
  relations = [a*a]
}
""",
    "boolean2": """quadratic {
  generators = [a, b]
  relations = [a*b, b*a]
}
""",
    "boolean-sum": """quadratic {
  generators = [a, b]
  relations_commutative = [a*a, a*b]
}
""",
    "tensor3": """quadratic {
  generators = [a, b, c]
  relations = []
}
""",
}


def builtin(name: str) -> QuadraticPresentation:
    try:
        return parse_presentation(BUILTIN_TEXT[name])
    except KeyError:
        raise KeyError(f"unknown built-in algebra {name!r}; choose from {sorted(BUILTIN_TEXT)}")


def paper_presentation() -> QuadraticPresentation:
    """``F_2[a,b,c]/(ab, bc)`` presented with five quadratic relations."""
    return builtin("paper")


def is_paper_algebra(p: QuadraticPresentation) -> bool:
    return p.same_algebra(paper_presentation())


# --- finite graded algebras --------------------------------------------------


class GradedAlgebra:
    """A graded algebra concentrated in degrees ``0..top`` given by basis products.

    Elements of degree ``i`` are bitsets over ``labels[i]``. When ``truncated``
    is set the algebra is a window onto something larger, and products that
    would leave the window raise :class:`TruncationError` instead of vanishing.
    """

    truncated = False

    def __init__(self, labels, products, unit: int = 1):
        self.labels = [list(ls) for ls in labels]
        self._products = products  # (i, j) -> table[p][q] -> bits
        self.unit = unit

    @property
    def top(self) -> int:
        return len(self.labels) - 1

    def dim(self, i: int) -> int:
        if i < 0 or i > self.top:
            if i > self.top and self.truncated:
                raise TruncationError(f"degree {i} beyond truncation {self.top}")
            return 0
        return len(self.labels[i])

    def dims(self) -> tuple[int, ...]:
        return tuple(len(ls) for ls in self.labels)

    def basis_product(self, i: int, p: int, j: int, q: int) -> int:
        if i + j > self.top:
            if self.truncated:
                raise TruncationError(
                    f"product lands in degree {i + j}; rebuild with truncation D >= {i + j}"
                )
            return 0
        return self._products[i, j][p][q]

    def mul(self, i: int, x: int, j: int, y: int) -> int:
        if not x or not y:
            if i + j > self.top and self.truncated:
                raise TruncationError(
                    f"product lands in degree {i + j}; rebuild with truncation D >= {i + j}"
                )
            return 0
        out = 0
        for p in bits_of(x):
            for q in bits_of(y):
                out ^= self.basis_product(i, p, j, q)
        return out

    def multiply(self, x: tuple[int, int], y: tuple[int, int]) -> tuple[int, int]:
        (i, xb), (j, yb) = x, y
        return i + j, self.mul(i, xb, j, yb)

    def element_label(self, i: int, x: int) -> str:
        if x == 0:
            return "0"
        return " + ".join(self.labels[i][p] for p in bits_of(x))

    def label_index(self, i: int, label: str) -> int:
        return self.labels[i].index(label)


def monomial_label(word, names) -> str:
    """Run-length label, e.g. ``(0, 0, 2) -> 'a^2c'``."""
    if not word:
        return "1"
    out = []
    k = 0
    while k < len(word):
        j = k
        while j < len(word) and word[j] == word[k]:
            j += 1
        out.append(names[word[k]] + (f"^{j - k}" if j - k > 1 else ""))
        k = j
    return "".join(out)


class GradedAlgebraTable(GradedAlgebra):
    """``A = T(V)/(R)`` in degrees ``0..D`` with a normal-word basis in every degree."""

    truncated = True

    def __init__(self, presentation: QuadraticPresentation, D: int):
        if D < 2:
            raise ValueError("truncation degree must be at least 2")
        self.presentation = presentation
        self.D = D
        g = presentation.g
        words: list[list[tuple[int, ...]]] = [[()], [(x,) for x in range(g)]]
        # right[n][u][x] = normal form of (word u of A^n)·x in A^{n+1}
        right: list[list[list[int]]] = [[[1 << x for x in range(g)]]]
        for n in range(2, D + 1):
            prev = words[n - 1]
            N = len(prev) * g
            # ambient A^{n-1} ⊗ V, position u*g + x; relations come from A^{n-2} ⊗ R
            rels = []
            for u in range(len(words[n - 2])):
                for r in presentation.relations:
                    v = 0
                    for k in bits_of(r):
                        x, y = divmod(k, g)
                        for w in bits_of(right[n - 2][u][x]):
                            v ^= 1 << (w * g + y)
                    if v:
                        rels.append(v)
            # reverse coordinates so that lowest-bit pivoting picks the latest word
            rev = lambda v: sum(1 << (N - 1 - k) for k in bits_of(v))  # noqa: E731
            red = rref_rows(rev(v) for v in rels)
            pivots = {N - 1 - low_bit(r): rev(r) for r in red}
            normal = [q for q in range(N) if q not in pivots]
            where = {q: k for k, q in enumerate(normal)}
            words.append([prev[q // g] + (q % g,) for q in normal])
            table = []
            for u in range(len(prev)):
                row = []
                for x in range(g):
                    q = u * g + x
                    if q in pivots:
                        nf = 0
                        for k in bits_of(pivots[q] ^ (1 << q)):
                            nf |= 1 << where[k]
                    else:
                        nf = 1 << where[q]
                    row.append(nf)
                table.append(row)
            right.append(table)
        self.degree_basis = words
        self._right = right
        labels = [[monomial_label(w, presentation.generators) for w in ws] for ws in words]
        super().__init__(labels, _LazyProducts(self), unit=1)

    def right_letter(self, n: int, x_bits: int, letter: int) -> int:
        """Multiply an element of ``A^n`` on the right by a generator."""
        if n + 1 > self.D:
            raise TruncationError(f"product lands in degree {n + 1}; rebuild with D >= {n + 1}")
        out = 0
        for u in bits_of(x_bits):
            out ^= self._right[n][u][letter]
        return out

    def word_normal_form(self, word) -> tuple[int, int]:
        """Image of a tensor word in ``A^{len(word)}``."""
        n, x = 0, 1
        for letter in word:
            x = self.right_letter(n, x, letter)
            n += 1
        return n, x

    @cached_property
    def _nf_cache(self) -> dict[int, list[int]]:
        return {}

    def tensor_to_algebra(self, v: int, n: int) -> int:
        """Projection ``V^{⊗n} -> A^n`` applied to a bitset over words."""
        if n > self.D:
            raise TruncationError(f"degree {n} beyond truncation {self.D}")
        g = self.presentation.g
        cache = self._nf_cache
        if n not in cache:
            if n == 0:
                cache[0] = [1]
            else:
                lower = self.word_images(n - 1)
                cache[n] = [
                    self.right_letter(n - 1, lower[i // g], i % g) for i in range(g**n)
                ]
        table = cache[n]
        out = 0
        for i in bits_of(v):
            out ^= table[i]
        return out

    def word_images(self, n: int) -> list[int]:
        self.tensor_to_algebra(0, n)
        return self._nf_cache[n]

    def generator(self, name: str) -> tuple[int, int]:
        return 1, 1 << self.presentation.generators.index(name)

    def element(self, text: str) -> tuple[int, int]:
        """Parse ``'a*c + b*b'`` into ``(degree, bits)``; ``'1'`` is the unit."""
        gens = self.presentation.generators
        deg = None
        acc = 0
        for term in text.split("+"):
            term = term.strip()
            word = () if term == "1" else tuple(gens.index(t.strip()) for t in term.split("*"))
            n, x = self.word_normal_form(word)
            if deg is not None and n != deg:
                raise ValueError("inhomogeneous element")
            deg = n
            acc ^= x
        return deg, acc

    def hilbert_function(self) -> tuple[int, ...]:
        return self.dims()


class _LazyProducts(dict):
    def __init__(self, table: GradedAlgebraTable):
        super().__init__()
        self._t = table

    def __missing__(self, key):
        i, j = key
        t = self._t
        out = []
        for p in range(len(t.degree_basis[i])):
            row = []
            for w in t.degree_basis[j]:
                n, x = i, 1 << p
                for letter in w:
                    x = t.right_letter(n, x, letter)
                    n += 1
                row.append(x)
            out.append(row)
        self[key] = out
        return out


def build_table(p: QuadraticPresentation, D: int) -> GradedAlgebraTable:
    return GradedAlgebraTable(p, D)


def hilbert_function(t: GradedAlgebraTable) -> tuple[int, ...]:
    return t.hilbert_function()


def multiply(t: GradedAlgebra, x: tuple[int, int], y: tuple[int, int]) -> tuple[int, int]:
    return t.multiply(x, y)
