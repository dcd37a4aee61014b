"""Finite differential graded algebras over F_2: cohomology, triple Massey
products by exhaustive enumeration of defining systems, and the degree-three
transferred operation ``m_3`` built from a section ``f1`` and a correction ``f2``.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from itertools import product

from .algebra import GradedAlgebra
from .gf2 import GF2Matrix, Subspace, bits_of, image_basis, kernel_basis, solve
from .hochschild import bar_cochain, bar_window, koszul_window
from .resolutions import KoszulData

DEFAULT_CAP = 2**20


class DGAError(ValueError):
    """Invalid DGA data; ``witness`` names the offending basis tuple."""

    def __init__(self, message: str, witness=None, line: int | None = None):
        self.witness = witness
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class MasseyObstruction(ValueError):
    pass


class EnumerationCapExceeded(ValueError):
    pass


Element = tuple[int, int]  # (degree, bits)


class FiniteDGA:
    """Degreewise bases ``names[k]`` for ``k = 0..D``, a degree +1 differential and a product.

    ``delta[k][p]`` is the image of basis vector ``p`` of degree ``k`` (bits in
    degree ``k+1``); ``cup[(i, j)][(p, q)]`` holds the nonzero products of
    non-unit basis vectors. The unit multiplies as the identity.
    """

    def __init__(self, names, unit: str, delta=None, cup=None, validate: bool = True):
        self.names = [list(ns) for ns in names]
        self.D = len(self.names) - 1
        if unit not in self.names[0]:
            raise DGAError(f"unit {unit!r} is not a degree-0 basis element")
        self.unit = unit
        self.unit_index = self.names[0].index(unit)
        self.delta = {k: list((delta or {}).get(k, [0] * self.dim(k))) for k in range(self.D + 1)}
        self.cup = {key: dict(val) for key, val in (cup or {}).items()}
        self._where = {}
        for k, ns in enumerate(self.names):
            for p, name in enumerate(ns):
                if name in self._where:
                    raise DGAError(f"duplicate basis name {name!r}")
                self._where[name] = (k, p)
        if validate:
            self.validate()

    def dim(self, k: int) -> int:
        return len(self.names[k]) if 0 <= k <= self.D else 0

    def locate(self, name: str) -> tuple[int, int]:
        try:
            return self._where[name]
        except KeyError:
            raise KeyError(f"unknown basis element {name!r}") from None

    def element(self, text: str) -> Element:
        """Parse ``'a + b'`` (or ``'0@2'`` for the zero of degree 2)."""
        text = text.strip()
        m = re.fullmatch(r"0@(\d+)", text)
        if m:
            return int(m.group(1)), 0
        deg, bits = None, 0
        for term in text.split("+"):
            k, p = self.locate(term.strip())
            if deg is not None and k != deg:
                raise ValueError(f"inhomogeneous element {text!r}")
            deg = k
            bits ^= 1 << p
        return deg, bits

    def label(self, k: int, x: int) -> str:
        return " + ".join(self.names[k][p] for p in bits_of(x)) if x else "0"

    # --- structure maps ---

    def d(self, k: int, x: int) -> int:
        if k < 0 or k >= self.D:
            return 0
        out = 0
        for p in bits_of(x):
            out ^= self.delta[k][p]
        return out

    def d_matrix(self, k: int) -> GF2Matrix:
        """``δ : C^k -> C^{k+1}`` (empty matrices outside ``0..D``)."""
        cols = self.delta[k] if 0 <= k < self.D else [0] * self.dim(k)
        return GF2Matrix.from_columns(self.dim(k + 1), cols)

    def basis_product(self, i: int, p: int, j: int, q: int) -> int:
        if i + j > self.D:
            return 0
        if i == 0 and p == self.unit_index:
            return 1 << q
        if j == 0 and q == self.unit_index:
            return 1 << p
        return self.cup.get((i, j), {}).get((p, q), 0)

    def mul(self, i: int, x: int, j: int, y: int) -> int:
        out = 0
        if i + j > self.D:
            return 0
        for p in bits_of(x):
            for q in bits_of(y):
                out ^= self.basis_product(i, p, j, q)
        return out

    # --- validity ---

    def validate(self):
        D = self.D
        for k in range(D + 1):
            for p in range(self.dim(k)):
                if self.delta[k][p] >> self.dim(k + 1):
                    raise DGAError("differential leaves the basis", (self.names[k][p],))
                if self.d(k + 1, self.d(k, 1 << p)):
                    raise DGAError(f"δδ({self.names[k][p]}) != 0", (self.names[k][p],))
        basis = [(k, p) for k in range(D + 1) for p in range(self.dim(k))]
        for (i, p), (j, q) in product(basis, repeat=2):
            xy = self.basis_product(i, p, j, q)
            lhs = self.d(i + j, xy)
            rhs = self.mul(i + 1, self.d(i, 1 << p), j, 1 << q) ^ self.mul(
                i, 1 << p, j + 1, self.d(j, 1 << q)
            )
            if lhs != rhs:
                w = (self.names[i][p], self.names[j][q])
                raise DGAError(f"Leibniz rule fails on {w}", w)
        for (i, p), (j, q), (k, r) in product(basis, repeat=3):
            if i + j + k > D:
                continue
            left = self.mul(i + j, self.basis_product(i, p, j, q), k, 1 << r)
            right = self.mul(i, 1 << p, j + k, self.basis_product(j, q, k, r))
            if left != right:
                w = (self.names[i][p], self.names[j][q], self.names[k][r])
                raise DGAError(f"product is not associative on {w}", w)


def formal_dga(A: GradedAlgebra, top: int | None = None) -> FiniteDGA:
    """``A`` in degrees ``<= top`` with zero differential; products past ``top`` vanish."""
    top = A.top if top is None else top
    names = [list(A.labels[k]) for k in range(top + 1)]
    cup = {}
    for i in range(1, top + 1):
        for j in range(1, top + 1 - i):
            tab = {}
            for p in range(A.dim(i)):
                for q in range(A.dim(j)):
                    v = A.basis_product(i, p, j, q)
                    if v:
                        tab[p, q] = v
            cup[i, j] = tab
    return FiniteDGA(names, names[0][0], cup=cup, validate=False)


# --- file format -------------------------------------------------------------------

_BLOCK_RE = re.compile(r"\b(degrees|d|mul)\s*\{([^{}]*)\}")


def parse_dga(text: str) -> FiniteDGA:
    src = re.sub(r"#[^\n]*", lambda m: " " * len(m.group()), text)
    lineno = lambda pos: src.count("\n", 0, pos) + 1  # noqa: E731
    head = re.search(r"\bdga\s*\{", src)
    if head is None:
        raise DGAError("expected 'dga {' block", line=1)
    blocks = {}
    for m in _BLOCK_RE.finditer(src, head.end()):
        if m.group(1) in blocks:
            raise DGAError(f"duplicate block {m.group(1)!r}", line=lineno(m.start()))
        blocks[m.group(1)] = (m.group(2), m.start(2))
    if "degrees" not in blocks:
        raise DGAError("missing degrees block", line=lineno(head.start()))
    body, off = blocks["degrees"]
    names: dict[int, list[str]] = {}
    for m in re.finditer(r"(-?\d+)\s*:\s*\[([^\]]*)\]", body):
        k = int(m.group(1))
        if k < 0:
            raise DGAError("negative degree", line=lineno(off + m.start()))
        names[k] = [x.strip() for x in m.group(2).split(",") if x.strip()]
        for x in names[k]:
            if not re.fullmatch(r"\w+", x):
                raise DGAError(f"bad basis name {x!r}", line=lineno(off + m.start()))
    if not names or 0 not in names:
        raise DGAError("degree 0 must be listed", line=lineno(off))
    D = max(names)
    levels = [names.get(k, []) for k in range(D + 1)]
    um = re.search(r"\bunit\s*=\s*(\w+)", src)
    if um is None:
        raise DGAError("missing unit", line=lineno(head.start()))
    where = {x: (k, p) for k, ns in enumerate(levels) for p, x in enumerate(ns)}

    def parse_target(expr: str, deg: int, line: int) -> int:
        expr = expr.strip()
        if expr == "0":
            return 0
        bits = 0
        for term in expr.split("+"):
            term = term.strip()
            if term not in where:
                raise DGAError(f"unknown basis element {term!r}", line=line)
            k, p = where[term]
            if k != deg:
                raise DGAError(f"{term!r} has degree {k}, expected {deg}", line=line)
            bits ^= 1 << p
        return bits

    def entries(block):
        if block not in blocks:
            return
        body, off = blocks[block]
        for m in re.finditer(r"[^,]+", body):
            item = m.group().strip()
            if not item:
                continue
            line = lineno(off + m.start() + (len(m.group()) - len(m.group().lstrip())))
            if "->" not in item:
                raise DGAError(f"expected 'x -> y', got {item!r}", line=line)
            lhs, rhs = item.split("->", 1)
            yield lhs.strip(), rhs, line

    delta = {k: [0] * len(levels[k]) for k in range(D + 1)}
    for lhs, rhs, line in entries("d"):
        if lhs not in where:
            raise DGAError(f"unknown basis element {lhs!r}", line=line)
        k, p = where[lhs]
        delta[k][p] ^= parse_target(rhs, k + 1, line)
    cup: dict = {}
    unit = um.group(1)
    for lhs, rhs, line in entries("mul"):
        parts = [x.strip() for x in lhs.split("*")]
        if len(parts) != 2 or any(x not in where for x in parts):
            raise DGAError(f"bad product {lhs!r}", line=line)
        if unit in parts:
            raise DGAError("products with the unit are implicit", line=line)
        (i, p), (j, q) = where[parts[0]], where[parts[1]]
        if i + j > D:
            raise DGAError(f"product {lhs!r} lands above the top degree", line=line)
        cup.setdefault((i, j), {})
        cup[i, j][p, q] = cup[i, j].get((p, q), 0) ^ parse_target(rhs, i + j, line)
    return FiniteDGA(levels, unit, delta, cup)


WITNESS_DGA_TEXT = """dga {
  degrees { 0: [one], 1: [a, b, c, t], 2: [p, s] }
  unit = one
  d   { t -> p }
  mul { a*b -> p, t*c -> s }
}
"""


def witness_dga() -> FiniteDGA:
    """Seven-dimensional DGA with ``⟨[a],[b],[c]⟩ = {[s]}``, not vanishing."""
    return parse_dga(WITNESS_DGA_TEXT)


# --- cohomology ---------------------------------------------------------------------


class CohomologyAlgebra(GradedAlgebra):
    pass


@dataclass
class CohomologyData:
    dga: FiniteDGA
    cocycles: list[Subspace]
    coboundaries: list[Subspace]
    reps: list[Subspace]  # echelon representatives, zero on coboundary pivots
    algebra: CohomologyAlgebra

    def dim(self, k: int) -> int:
        return self.reps[k].dim if 0 <= k < len(self.reps) else 0

    def dims(self) -> tuple[int, ...]:
        return tuple(r.dim for r in self.reps)

    def class_of(self, k: int, z: int) -> int:
        """Coordinates of the class of cocycle ``z`` in the representative basis."""
        if not 0 <= k < len(self.reps):
            return 0
        if z not in self.cocycles[k]:
            raise ValueError(f"{self.dga.label(k, z)} is not a cocycle")
        return self.reps[k].coordinates(self.coboundaries[k].reduce(z))

    def section(self, k: int, h: int) -> int:
        """The echelon section ``H^k -> Z^k``."""
        out = 0
        for i in bits_of(h):
            out ^= self.reps[k].basis[i]
        return out

    def label(self, k: int, h: int) -> str:
        if h == 0:
            return "0"
        return " + ".join(f"[{self.algebra.labels[k][i]}]" for i in bits_of(h))


def cohomology(dga: FiniteDGA) -> CohomologyData:
    Z, B, reps, labels = [], [], [], []
    for k in range(dga.D + 1):
        z = kernel_basis(dga.d_matrix(k))
        b = image_basis(dga.d_matrix(k - 1)) if k > 0 else Subspace.zero(dga.dim(0))
        r = Subspace.span(dga.dim(k), (b.reduce(v) for v in z.basis))
        Z.append(z)
        B.append(b)
        reps.append(r)
        labels.append([dga.label(k, v).replace(" ", "") for v in r.basis])
    data = CohomologyData(dga, Z, B, reps, None)  # type: ignore[arg-type]
    products = {}
    for i in range(dga.D + 1):
        for j in range(dga.D + 1 - i):
            products[i, j] = [
                [data.class_of(i + j, dga.mul(i, ri, j, rj)) for rj in reps[j].basis]
                for ri in reps[i].basis
            ]
    unit = data.class_of(0, 1 << dga.unit_index)
    data.algebra = CohomologyAlgebra(labels, products, unit=unit)
    return data


# --- Massey products ----------------------------------------------------------------


@dataclass
class MasseyResult:
    degree: int
    values: tuple[int, ...]  # classes, as bits over the representative basis
    indeterminacy: Subspace  # a·H + H·c inside H^degree
    quotient_image: int
    contains_zero: bool
    vanishes: bool
    systems: int
    labels: tuple[str, ...] = ()

    def summary(self) -> str:
        verdict = "vanishes" if self.vanishes else "does not vanish"
        return f"{verdict}; set = {{{', '.join(self.labels)}}}"


def _span_elements(space: Subspace):
    return list(space.elements())


def massey_triple(dga: FiniteDGA, a: Element, b: Element, c: Element,
                  cap: int = DEFAULT_CAP, H: CohomologyData | None = None) -> MasseyResult:
    """All classes ``[A∪E_bc + E_ab∪C]`` over every defining system.

    ``a, b, c`` are cocycles ``(degree, bits)``; representatives range over
    their coboundary cosets and ``E_ab, E_bc`` over full solution cosets.
    """
    H = H or cohomology(dga)
    (ka, xa), (kb, xb), (kc, xc) = a, b, c
    for k, x in (a, b, c):
        H.class_of(k, x)  # raises when not a cocycle
    kab, kbc = ka + kb, kb + kc
    if H.class_of(kab, dga.mul(ka, xa, kb, xb)):
        raise MasseyObstruction("a∪b is not zero in cohomology")
    if H.class_of(kbc, dga.mul(kb, xb, kc, xc)):
        raise MasseyObstruction("b∪c is not zero in cohomology")
    deg = ka + kb + kc - 1
    Zab = H.cocycles[kab - 1] if 0 <= kab - 1 <= dga.D else Subspace.zero(0)
    Zbc = H.cocycles[kbc - 1] if 0 <= kbc - 1 <= dga.D else Subspace.zero(0)
    log_count = (H.coboundaries[ka].dim + H.coboundaries[kb].dim + H.coboundaries[kc].dim
                 + Zab.dim + Zbc.dim)
    count = 2**log_count
    if count > cap:
        raise EnumerationCapExceeded(
            f"{count} defining systems exceed the cap {cap}; raise it with --cap"
        )
    d_ab, d_bc = dga.d_matrix(kab - 1), dga.d_matrix(kbc - 1)
    Zab_el, Zbc_el = _span_elements(Zab), _span_elements(Zbc)
    values: set[int] = set()
    for ba, bb, bc_ in product(*(_span_elements(H.coboundaries[k]) for k in (ka, kb, kc))):
        A_, B_, C_ = xa ^ ba, xb ^ bb, xc ^ bc_
        e_ab = solve(d_ab, dga.mul(ka, A_, kb, B_)) if kab - 1 >= 0 else None
        e_bc = solve(d_bc, dga.mul(kb, B_, kc, C_)) if kbc - 1 >= 0 else None
        if e_ab is None or e_bc is None:
            raise AssertionError("product is a coboundary but no bounding cochain was found")
        for z1 in Zab_el:
            E_ab = e_ab ^ z1
            right = dga.mul(kab - 1, E_ab, kc, C_)
            for z2 in Zbc_el:
                E_bc = e_bc ^ z2
                m = dga.mul(ka, A_, kbc - 1, E_bc) ^ right
                if dga.d(deg, m):
                    raise AssertionError("Massey cochain is not a cocycle")
                values.add(H.class_of(deg, m))
    ha, hc = H.class_of(ka, xa), H.class_of(kc, xc)
    Halg = H.algebra
    gens = [Halg.mul(ka, ha, kbc - 1, 1 << i) for i in range(H.dim(kbc - 1))]
    gens += [Halg.mul(kab - 1, 1 << i, kc, hc) for i in range(H.dim(kab - 1))]
    indet = Subspace.span(H.dim(deg), gens)
    images = {indet.reduce(v) for v in values}
    if len(images) != 1:
        raise AssertionError("Massey set has more than one image in H/(aH + Hc)")
    img = images.pop()
    ordered = tuple(sorted(values))
    return MasseyResult(
        degree=deg, values=ordered, indeterminacy=indet, quotient_image=img,
        contains_zero=0 in values, vanishes=img == 0, systems=count,
        labels=tuple(H.label(deg, v) for v in ordered),
    )


# --- transferred m_3 ------------------------------------------------------------------


@dataclass
class TransferData:
    """``f1``, ``f2``, ``Φ3`` and ``m3 = [Φ3]`` on basis elements of ``H``.

    Keys are ``(degree, index)`` pairs of the cohomology basis.
    """

    H: CohomologyData
    f1: dict
    f2: dict
    phi3: dict
    m3: dict
    eta: dict | None = None

    @property
    def dga(self) -> FiniteDGA:
        return self.H.dga

    def f1_of(self, k: int, h: int) -> int:
        out = 0
        for i in bits_of(h):
            out ^= self.f1[k, i]
        return out

    def m3_value(self, x, y, z) -> int:
        return self.m3.get((x, y, z), 0)


def _h_basis(H: CohomologyData):
    return [(k, i) for k in range(len(H.reps)) for i in range(H.dim(k))]


def _solve_f2(dga, H, f1, x, y):
    (i, p), (j, q) = x, y
    k = i + j - 1
    if k < 0 or i + j > dga.D:
        return 0
    f1_of = lambda deg, h: _f1_sum(f1, deg, h)  # noqa: E731
    prod_class = H.algebra.basis_product(i, p, j, q)
    rhs = f1_of(i + j, prod_class) ^ dga.mul(i, f1[x], j, f1[y])
    e = solve(dga.d_matrix(k), rhs)
    if e is None:
        raise AssertionError(f"f1 is not multiplicative up to homotopy on {x}, {y}")
    return e


def _f1_sum(f1, k, h):
    out = 0
    for i in bits_of(h):
        out ^= f1[k, i]
    return out


def _phi3(dga, H, f1, f2):
    basis = _h_basis(H)

    def f2_sum(x_deg, x_bits, y):
        out = 0
        for i in bits_of(x_bits):
            out ^= f2.get(((x_deg, i), y), 0)
        return out

    def f2_sum_right(x, y_deg, y_bits):
        out = 0
        for i in bits_of(y_bits):
            out ^= f2.get((x, (y_deg, i)), 0)
        return out

    phi, m3 = {}, {}
    alg = H.algebra
    for x, y, z in product(basis, repeat=3):
        deg = x[0] + y[0] + z[0] - 1
        if deg < 0 or deg > dga.D:
            continue
        val = dga.mul(x[0], f1[x], y[0] + z[0] - 1, f2.get((y, z), 0))
        val ^= dga.mul(x[0] + y[0] - 1, f2.get((x, y), 0), z[0], f1[z])
        xy = alg.basis_product(x[0], x[1], y[0], y[1])
        yz = alg.basis_product(y[0], y[1], z[0], z[1])
        val ^= f2_sum(x[0] + y[0], xy, z) ^ f2_sum_right(x, y[0] + z[0], yz)
        if dga.d(deg, val):
            raise AssertionError(f"Φ3{(x, y, z)} is not a cocycle")
        if val:
            phi[x, y, z] = val
        cls = H.class_of(deg, val)
        if cls:
            m3[x, y, z] = cls
    return phi, m3


def kadeishvili_m3(dga: FiniteDGA, H: CohomologyData | None = None,
                   rng: random.Random | None = None, f2_shift=None) -> TransferData:
    """Build ``f1``, ``f2``, ``Φ3`` and ``m3``.

    By default ``f1`` is the echelon section and ``f2`` the free-variables-zero
    solution. With ``rng`` both are perturbed by random admissible choices
    (``f1`` by coboundaries, ``f2`` by cocycles on pairs of positive degree,
    which keeps the unit strict). ``f2_shift`` adds a fixed
    cocycle-valued map ``{(x, y): cochain}`` to ``f2``.
    """
    H = H or cohomology(dga)
    basis = _h_basis(H)
    f1 = {}
    for k, i in basis:
        v = H.reps[k].basis[i]
        if rng is not None and k > 0:
            v ^= dga.d(k - 1, rng.getrandbits(dga.dim(k - 1)) if dga.dim(k - 1) else 0)
        f1[k, i] = v
    f2 = {}
    for x, y in product(basis, repeat=2):
        e = _solve_f2(dga, H, f1, x, y)
        k = x[0] + y[0] - 1
        if rng is not None and x[0] and y[0] and k <= dga.D and H.cocycles[k].dim:
            Zk = H.cocycles[k]
            pick = rng.getrandbits(Zk.dim)
            for b in bits_of(pick):
                e ^= Zk.basis[b]
        if f2_shift is not None:
            shift = f2_shift.get((x, y), 0)
            if shift and dga.d(k, shift):
                raise ValueError("f2 shift must take values in cocycles")
            e ^= shift
        if e:
            f2[x, y] = e
    phi, m3 = _phi3(dga, H, f1, f2)
    return TransferData(H, f1, f2, phi, m3)


def m3_bar_cochain(td: TransferData) -> tuple[int, GradedAlgebra]:
    """``m3`` as a vector in the complete bar window ``Hom(H^{⊗3}, H)_{-1}``."""
    H = td.H.algebra

    def fn(word):
        return td.m3.get(tuple(word), 0)

    return bar_cochain(H, 3, -1, H.top + 1, fn), H


def m3_window(td: TransferData):
    H = td.H.algebra
    return bar_window(H, 3, -1, H.top + 1)


def m3_is_cocycle(td: TransferData) -> bool:
    v, _ = m3_bar_cochain(td)
    return m3_window(td).dout.apply(v) == 0


def m3_difference_is_coboundary(td1: TransferData, td2: TransferData):
    """Return a bar cochain ``η`` with ``∂η = m3(td1) - m3(td2)``, or ``None``."""
    v1, _ = m3_bar_cochain(td1)
    v2, _ = m3_bar_cochain(td2)
    return solve(m3_window(td1).din, v1 ^ v2)


def m3_on_koszul(td: TransferData, kd: KoszulData) -> int:
    """Restrict ``m3`` to ``K'_3 ⊆ (H^1)^{⊗3}`` as a cochain in the Koszul ``(3, -1)`` window."""
    H = td.H.algebra
    A = kd.table
    if H.dims()[:3] != A.dims()[:3]:
        raise ValueError("cohomology and algebra table disagree in degrees <= 2")
    g = kd.presentation.g
    width = A.dim(2)
    out = 0
    for k, v in enumerate(kd.basis[3]):
        val = 0
        for idx in bits_of(v):
            w = []
            for _ in range(3):
                idx, x = divmod(idx, g)
                w.append((1, x))
            val ^= td.m3.get(tuple(reversed(w)), 0)
        out |= val << (k * width)
    return out


@dataclass
class Trivialization:
    eta: int | None
    window: object
    certificate: str = ""
    residual: int = 0

    @property
    def exists(self) -> bool:
        return self.eta is not None


def trivialize_m3(t, kd: KoszulData, m3_restricted: int, window=None) -> Trivialization:
    """Solve ``∂²η = m3`` in the Koszul ``(3, -1)`` window of ``t``.

    ``window`` may pass a prebuilt window to skip rebuilding it.
    """
    w = window or koszul_window(t, kd, 3, -1)
    if w.dout.apply(m3_restricted):
        raise ValueError("input is not a ∂³-cocycle")
    eta = solve(w.din, m3_restricted)
    if eta is None:
        return Trivialization(None, w, f"nontrivial class: {w.domain.format(m3_restricted)}",
                              residual=m3_restricted)
    residual = m3_restricted ^ w.din.apply(eta)
    return Trivialization(eta, w, f"η = {w.prev.format(eta)}", residual=residual)


def trivialize_transfer(td: TransferData):
    """Find ``η`` with ``∂²η = m3`` over ``H`` and rebuild with ``f2 + f1∘η``.

    Returns the rebuilt :class:`TransferData` (whose ``m3`` is then zero) or
    ``None`` when ``[m3] != 0``.
    """
    v, H = m3_bar_cochain(td)
    w = m3_window(td)
    eta_vec = solve(w.din, v)
    if eta_vec is None:
        return None
    dga, Hd = td.dga, td.H
    basis = _h_basis(Hd)
    from .hochschild import bar_cochain_eval

    eta = {}
    new_f2 = dict(td.f2)
    for x, y in product(basis, repeat=2):
        k = x[0] + y[0] - 1
        if k < 0 or k > H.top:
            continue
        h = bar_cochain_eval(H, 2, -1, H.top + 1, eta_vec, (x, y))
        if h:
            eta[x, y] = h
            new_f2[x, y] = new_f2.get((x, y), 0) ^ _f1_sum(td.f1, k, h)
    phi, m3 = _phi3(dga, Hd, td.f1, new_f2)
    return TransferData(Hd, td.f1, new_f2, phi, m3, eta=eta)
