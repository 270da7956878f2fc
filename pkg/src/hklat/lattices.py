"""Even lattices: the named catalog, direct sums, twists, discriminant forms.

Gram conventions: U = [[0,1],[1,0]]; the root lattices A_k, D_h, E_l are
negative definite (negated Cartan matrices); <n> is the rank-one lattice of
norm n.  Expressions use the ASCII grammar

    expr  := ['-'] term (' + ' term)*
    term  := ATOM ['(' INT ')'] ['^' INT]
    ATOM  := U | A<k> | D<h> | E6 | E7 | E8 | K<p> | H<p> | L17
           | E6* | A4* | '<' EVEN_INT '>'

e.g. "U^2 + E8^2 + A2", "A2(-1)", "U(3) + A2^3 + <-2>", "<6> + E6*(3)".
A leading '-' negates every summand.  The duals E6* and A4* only realize at
twists clearing their denominators (multiples of 3 resp. 5).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction

from .exact import (
    IntMatrix,
    as_matrix,
    block_diag,
    det_exact,
    is_symmetric,
    scale,
    signature_of_symmetric,
    smith_normal_form,
)
from .fqf import FiniteQuadraticForm, _mod1, _mod2, trivial_form


class InvalidParameter(ValueError):
    """Catalog atom parameters out of range, or a non-realizable twist."""


class NotEvenLattice(ValueError):
    """Gram matrix is not that of an even nondegenerate lattice."""


# -- expressions ---------------------------------------------------------------

@dataclass(frozen=True)
class LatticeExpr:
    """Formal direct sum of catalog atoms: ((atom, twist, multiplicity), ...)."""

    summands: tuple[tuple[str, int, int], ...]

    def __str__(self) -> str:
        return render_expr(self)

    def rank(self) -> int:
        return sum(_atom_rank(atom) * mult for atom, _, mult in self.summands)

    def negated(self) -> "LatticeExpr":
        return LatticeExpr(tuple((a, -t, m) for a, t, m in self.summands))


_ATOM_RE = re.compile(
    r"^(U|A\d+|D\d+|E[678]|K\d+|H\d+|L17|E6\*|A4\*|<-?\d+>)"
    r"(?:\((-?\d+)\))?(?:\^(\d+))?$"
)


def parse_expr(text: str) -> LatticeExpr:
    s = text.strip()
    negate = s.startswith("-")
    if negate:
        s = s[1:].strip()
    if not s:
        raise InvalidParameter("empty lattice expression")
    summands = []
    for piece in s.split("+"):
        m = _ATOM_RE.match(piece.strip())
        if not m:
            raise InvalidParameter(f"cannot parse lattice term {piece.strip()!r}")
        atom, twist, mult = m.group(1), m.group(2), m.group(3)
        twist = int(twist) if twist else 1
        mult = int(mult) if mult else 1
        if twist == 0 or mult < 1:
            raise InvalidParameter(f"bad twist or multiplicity in {piece.strip()!r}")
        summands.append((atom, twist, mult))
    expr = LatticeExpr(tuple(summands))
    return expr.negated() if negate else expr


def render_expr(expr: LatticeExpr) -> str:
    parts = []
    for atom, twist, mult in expr.summands:
        s = atom
        if twist != 1:
            s += f"({twist})"
        if mult != 1:
            s += f"^{mult}"
        parts.append(s)
    return " + ".join(parts)


# -- Gram matrices for the atoms -------------------------------------------------

def _cartan_A(k: int) -> IntMatrix:
    return as_matrix(
        [[2 if i == j else -1 if abs(i - j) == 1 else 0 for j in range(k)] for i in range(k)]
    )


def _cartan_D(h: int) -> IntMatrix:
    # chain 0..h-3 with both h-2 and h-1 attached to node h-3
    m = [[0] * h for _ in range(h)]
    for i in range(h):
        m[i][i] = 2
    for i in range(h - 3):
        m[i][i + 1] = m[i + 1][i] = -1
    m[h - 3][h - 2] = m[h - 2][h - 3] = -1
    m[h - 3][h - 1] = m[h - 1][h - 3] = -1
    return as_matrix(m)


def _cartan_E(l: int) -> IntMatrix:
    # chain 0..l-2 with node l-1 attached to node 2 (Bourbaki E-shape)
    m = [[0] * l for _ in range(l)]
    for i in range(l):
        m[i][i] = 2
    for i in range(l - 2):
        m[i][i + 1] = m[i + 1][i] = -1
    m[2][l - 1] = m[l - 1][2] = -1
    return as_matrix(m)


def _inverse_rational(m: IntMatrix):
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for k in range(n):
        piv = next(i for i in range(k, n) if a[i][k] != 0)
        a[k], a[piv] = a[piv], a[k]
        p = a[k][k]
        a[k] = [x / p for x in a[k]]
        for i in range(n):
            if i != k and a[i][k] != 0:
                f = a[i][k]
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return tuple(tuple(row[n:]) for row in a)


def _atom_base_gram(atom: str):
    """Gram matrix of the untwisted atom; dual atoms return rational matrices."""
    if atom == "U":
        return ((0, 1), (1, 0))
    if atom.startswith("<") and atom.endswith(">"):
        n = int(atom[1:-1])
        if n == 0 or n % 2:
            raise InvalidParameter(f"<{n}> is not an even rank-one lattice")
        return ((n,),)
    if atom[0] == "A" and atom[1:].isdigit():
        k = int(atom[1:])
        if k < 1:
            raise InvalidParameter("A_k needs k >= 1")
        return scale(_cartan_A(k), -1)
    if atom[0] == "D" and atom[1:].isdigit():
        h = int(atom[1:])
        if h < 4:
            raise InvalidParameter("D_h needs h >= 4")
        return scale(_cartan_D(h), -1)
    if atom in ("E6", "E7", "E8"):
        return scale(_cartan_E(int(atom[1])), -1)
    if atom[0] == "K" and atom[1:].isdigit():
        p = int(atom[1:])
        if p % 4 != 3 or not _is_prime(p):
            raise InvalidParameter(f"K_p needs a prime p = 3 mod 4, got {p}")
        return ((-(p + 1) // 2, 1), (1, -2))
    if atom[0] == "H" and atom[1:].isdigit():
        p = int(atom[1:])
        if p % 4 != 1 or not _is_prime(p):
            raise InvalidParameter(f"H_p needs a prime p = 1 mod 4, got {p}")
        return (((p - 1) // 2, 1), (1, -2))
    if atom == "L17":
        return ((-2, 1, 0, 1), (1, -2, 0, 0), (0, 0, -2, 1), (1, 0, 1, -4))
    if atom == "E6*":
        return _inverse_rational(scale(_cartan_E(6), -1))
    if atom == "A4*":
        return _inverse_rational(scale(_cartan_A(4), -1))
    raise InvalidParameter(f"unknown atom {atom!r}")


def _atom_rank(atom: str) -> int:
    if atom == "U":
        return 2
    if atom.startswith("<"):
        return 1
    if atom == "L17":
        return 4
    if atom in ("E6*",):
        return 6
    if atom in ("A4*",):
        return 4
    letter, num = atom[0], atom[1:]
    if letter in "ADE":
        return int(num)
    if letter in "KH":
        return 2
    raise InvalidParameter(f"unknown atom {atom!r}")


def realize_atom(atom: str, twist: int = 1) -> IntMatrix:
    base = _atom_base_gram(atom)
    gram = tuple(tuple(twist * x for x in row) for row in base)
    out = []
    for row in gram:
        ints = []
        for x in row:
            if isinstance(x, Fraction):
                if x.denominator != 1:
                    raise InvalidParameter(
                        f"{atom}({twist}) is not an integral lattice"
                    )
                x = x.numerator
            ints.append(x)
        out.append(ints)
    m = as_matrix(out)
    if any(m[i][i] % 2 for i in range(len(m))):
        raise InvalidParameter(f"{atom}({twist}) is not even")
    return m


# -- lattices --------------------------------------------------------------------

@dataclass(frozen=True)
class Lattice:
    """Even nondegenerate lattice given by an exact integer Gram matrix."""

    gram: IntMatrix
    expr: LatticeExpr | None = None

    def __post_init__(self):
        g = as_matrix(self.gram)
        object.__setattr__(self, "gram", g)
        if not is_symmetric(g):
            raise NotEvenLattice("Gram matrix must be symmetric")
        if any(g[i][i] % 2 for i in range(len(g))):
            raise NotEvenLattice("lattice is not even: odd diagonal entry")
        if len(g) and det_exact(g) == 0:
            raise NotEvenLattice("lattice is degenerate")

    @property
    def rank(self) -> int:
        return len(self.gram)

    def det(self) -> int:
        return det_exact(self.gram)

    def signature(self) -> tuple[int, int]:
        if self.rank == 0:
            return (0, 0)
        return signature_of_symmetric(self.gram)

    def name(self) -> str:
        return render_expr(self.expr) if self.expr else f"rank-{self.rank} lattice"


def realize(expr: LatticeExpr | str) -> Lattice:
    if isinstance(expr, str):
        expr = parse_expr(expr)
    blocks = []
    for atom, twist, mult in expr.summands:
        blocks.extend([realize_atom(atom, twist)] * mult)
    return Lattice(block_diag(blocks), expr=expr)


def catalog(kind: str, **params) -> Lattice:
    """Named catalog lattices: U, A(k), D(h), E(l), span(n), K(p), H(p), L17,
    E6dual3, A4dual5."""
    kind = kind.upper() if len(kind) == 1 else kind
    if kind == "U":
        return realize(LatticeExpr((("U", 1, 1),)))
    if kind == "A":
        return realize(LatticeExpr(((f"A{params['k']}", 1, 1),)))
    if kind == "D":
        return realize(LatticeExpr(((f"D{params['h']}", 1, 1),)))
    if kind == "E":
        l = params["l"]
        if l not in (6, 7, 8):
            raise InvalidParameter("E_l needs l in {6, 7, 8}")
        return realize(LatticeExpr(((f"E{l}", 1, 1),)))
    if kind in ("span", "SPAN"):
        return realize(LatticeExpr(((f"<{params['n']}>", 1, 1),)))
    if kind == "K":
        return realize(LatticeExpr(((f"K{params['p']}", 1, 1),)))
    if kind == "H":
        return realize(LatticeExpr(((f"H{params['p']}", 1, 1),)))
    if kind == "L17":
        return realize(LatticeExpr((("L17", 1, 1),)))
    if kind == "E6dual3":
        return realize(LatticeExpr((("E6*", 3, 1),)))
    if kind == "A4dual5":
        return realize(LatticeExpr((("A4*", 5, 1),)))
    raise InvalidParameter(f"unknown catalog kind {kind!r}")


def direct_sum(*lattices: Lattice) -> Lattice:
    expr = None
    if all(l.expr is not None for l in lattices):
        summands = []
        for l in lattices:
            summands.extend(l.expr.summands)
        expr = LatticeExpr(tuple(summands))
    return Lattice(block_diag([l.gram for l in lattices]), expr=expr)


def twist(lattice: Lattice, t: int) -> Lattice:
    if t == 0:
        raise InvalidParameter("twist by zero")
    expr = None
    if lattice.expr is not None:
        expr = LatticeExpr(tuple((a, tw * t, m) for a, tw, m in lattice.expr.summands))
    return Lattice(scale(lattice.gram, t), expr=expr)


def ambient_lattice() -> Lattice:
    """The rank-23 lattice U^3 + E8^2 + <-2> (second cohomology of a K3^[2] fourfold)."""
    return realize("U^3 + E8^2 + <-2>")


AMBIENT_FORM_VALUE = Fraction(3, 2)  # discriminant form of the ambient lattice: Z/2 (3/2)


# -- discriminant data ------------------------------------------------------------

@dataclass(frozen=True)
class DiscriminantData:
    """Discriminant group of a lattice: invariant factors, dual-vector generators
    (rational coordinates in the lattice basis), and the quadratic form."""

    invariant_factors: tuple[int, ...]
    generators: tuple[tuple[Fraction, ...], ...]
    form: FiniteQuadraticForm


def discriminant_data(lattice: Lattice) -> DiscriminantData:
    """Discriminant group and form, via the Smith normal form of the Gram matrix.

    With U G V = D, the class group Z^n / G Z^n is generated by the dual vectors
    (column i of V) / d_i; values are read off the Gram matrix exactly.
    """
    g = lattice.gram
    n = lattice.rank
    if n == 0:
        return DiscriminantData((), (), trivial_form())
    _, d, v = smith_normal_form(g)
    factors = []
    gens = []
    for i in range(n):
        di = d[i][i]
        if di > 1:
            factors.append(di)
            gens.append(tuple(Fraction(v[r][i], di) for r in range(n)))
    q_vals = []
    b_rows = []
    for x in gens:
        gx = tuple(sum(g[r][c] * x[c] for c in range(n)) for r in range(n))
        q_vals.append(_mod2(sum(xi * gi for xi, gi in zip(x, gx))))
        b_rows.append(
            tuple(
                _mod1(sum(yi * gi for yi, gi in zip(y, gx)))
                for y in gens
            )
        )
    form = FiniteQuadraticForm(tuple(factors), tuple(q_vals), tuple(b_rows))
    return DiscriminantData(tuple(factors), tuple(gens), form)


def discriminant_form(lattice: Lattice) -> FiniteQuadraticForm:
    return discriminant_data(lattice).form


def is_p_elementary(lattice: Lattice, p: int) -> tuple[bool, int | None]:
    """Whether every invariant factor equals p; returns (verdict, length)."""
    factors = discriminant_data(lattice).invariant_factors
    if all(f == p for f in factors):
        return True, len(factors)
    return False, None


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


# -- JSON interface ----------------------------------------------------------------

def lattice_from_json(text: str) -> Lattice:
    """Read {"gram": [[...], ...], "name": "optional expr string"}."""
    data = json.loads(text)
    if "gram" not in data:
        raise InvalidParameter("lattice JSON needs a 'gram' field")
    expr = parse_expr(data["name"]) if data.get("name") else None
    return Lattice(as_matrix(data["gram"]), expr=expr)


def lattice_to_json(lattice: Lattice) -> str:
    data = {"gram": [list(r) for r in lattice.gram]}
    if lattice.expr is not None:
        data["name"] = render_expr(lattice.expr)
    return json.dumps(data)
