"""Finite quadratic forms on finite abelian groups.

A form lives on A = Z/d1 x ... x Z/dk and is described by the values q(g_i)
in Q/2Z on the generators together with the bilinear pairings b(g_i, g_j) in
Q/Z.  Values on arbitrary elements follow from

    q(sum c_i g_i) = sum c_i^2 q(g_i) + 2 sum_{i<j} c_i c_j b(g_i, g_j)  (mod 2Z)

All arithmetic is exact (Fractions); the only floating point is the final
Gauss-sum phase summation, snapped to one of eight candidates.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

HALF = Fraction(1, 2)
THREE_HALF = Fraction(3, 2)

GAUSS_TOL = 1e-6
BRUTE_FORCE_CAP = 10_000
ENUM_CAP = 1_000_000


class DegenerateForm(ValueError):
    """The bilinear form has a nontrivial radical."""


class AmbiguousGaussSum(ArithmeticError):
    """No signature candidate matched the Gauss sum within tolerance."""


class GroupTooLarge(ValueError):
    """Brute-force isomorphism search refused a group above the size cap."""


class UnsupportedRegime(NotImplementedError):
    """Existence test hit a case outside the implemented conditions."""


def _mod2(x: Fraction) -> Fraction:
    return x % 2


def _mod1(x: Fraction) -> Fraction:
    return x % 1


@dataclass(frozen=True)
class FiniteQuadraticForm:
    """Quadratic form q: A -> Q/2Z with associated bilinear form b: A x A -> Q/Z."""

    orders: tuple[int, ...]
    q: tuple[Fraction, ...]
    b: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        k = len(self.orders)
        if len(self.q) != k or len(self.b) != k or any(len(r) != k for r in self.b):
            raise ValueError("inconsistent generator data")
        if any(d < 2 for d in self.orders):
            raise ValueError("generator orders must be > 1")
        for i, d in enumerate(self.orders):
            if _mod2(self.q[i]) != self.q[i]:
                raise ValueError("q values must be reduced into [0, 2)")
            if _mod2(d * d * self.q[i]) != 0:
                raise ValueError("q value incompatible with generator order")
            if _mod1(self.b[i][i] - self.q[i]) != 0:
                raise ValueError("b(g,g) must equal q(g) mod Z")
            for j in range(k):
                if self.b[i][j] != self.b[j][i]:
                    raise ValueError("b must be symmetric")
                if _mod1(d * self.b[i][j]) != 0:
                    raise ValueError("b value incompatible with generator order")

    # -- basic structure ---------------------------------------------------

    @property
    def order(self) -> int:
        return math.prod(self.orders)

    def length(self) -> int:
        return len(self.orders)

    def lengths_per_prime(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for d in self.orders:
            for p in _prime_factors(d):
                out[p] = out.get(p, 0) + 1
        return out

    def is_trivial(self) -> bool:
        return not self.orders

    # -- constructions -----------------------------------------------------

    def dsum(self, other: "FiniteQuadraticForm") -> "FiniteQuadraticForm":
        k1, k2 = self.length(), other.length()
        orders = self.orders + other.orders
        q = self.q + other.q
        b = [[Fraction(0)] * (k1 + k2) for _ in range(k1 + k2)]
        for i in range(k1):
            for j in range(k1):
                b[i][j] = self.b[i][j]
        for i in range(k2):
            for j in range(k2):
                b[k1 + i][k1 + j] = other.b[i][j]
        return FiniteQuadraticForm(orders, q, tuple(tuple(r) for r in b))

    def neg(self) -> "FiniteQuadraticForm":
        q = tuple(_mod2(-x) for x in self.q)
        b = tuple(tuple(_mod1(-x) for x in row) for row in self.b)
        return FiniteQuadraticForm(self.orders, q, b)

    def prime_part(self, p: int) -> "FiniteQuadraticForm":
        """Restriction to the p-Sylow subgroup (cross terms with other primes vanish)."""
        keep = []
        for i, d in enumerate(self.orders):
            pk = _p_power(d, p)
            if pk > 1:
                keep.append((i, d // pk, pk))
        orders = tuple(pk for _, _, pk in keep)
        q = tuple(_mod2(c * c * self.q[i]) for i, c, _ in keep)
        b = tuple(
            tuple(_mod1(ci * cj * self.b[i][j]) for j, cj, _ in keep)
            for i, ci, _ in keep
        )
        return FiniteQuadraticForm(orders, q, b)

    # -- evaluation ---------------------------------------------------------

    def value(self, coords) -> Fraction:
        total = Fraction(0)
        for i, c in enumerate(coords):
            total += c * c * self.q[i]
            for j in range(i + 1, len(coords)):
                total += 2 * c * coords[j] * self.b[i][j]
        return _mod2(total)

    def pairing(self, x, y) -> Fraction:
        total = Fraction(0)
        for i, ci in enumerate(x):
            for j, cj in enumerate(y):
                total += ci * cj * self.b[i][j]
        return _mod1(total)

    def elements(self):
        return itertools.product(*(range(d) for d in self.orders))

    def orthogonal_components(self) -> list[tuple[int, ...]]:
        """Generator index blocks pairwise orthogonal for b (graph components)."""
        k = self.length()
        parent = list(range(k))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i in range(k):
            for j in range(i + 1, k):
                if self.b[i][j] != 0:
                    parent[find(i)] = find(j)
        groups: dict[int, list[int]] = {}
        for i in range(k):
            groups.setdefault(find(i), []).append(i)
        return [tuple(g) for g in sorted(groups.values())]

    def subform(self, idxs) -> "FiniteQuadraticForm":
        return FiniteQuadraticForm(
            tuple(self.orders[i] for i in idxs),
            tuple(self.q[i] for i in idxs),
            tuple(tuple(self.b[i][j] for j in idxs) for i in idxs),
        )

    def _component_value_counts(self) -> dict[Fraction, int]:
        if self.order > ENUM_CAP:
            raise GroupTooLarge(f"group of order {self.order} too large to enumerate")
        den = 1
        for x in self.q:
            den = den * x.denominator // math.gcd(den, x.denominator)
        for row in self.b:
            for x in row:
                d2 = (2 * x).denominator
                den = den * d2 // math.gcd(den, d2)
        qn = [int(x * den) for x in self.q]
        bn = [[int(2 * x * den) for x in row] for row in self.b]
        mod = 2 * den
        counts: dict[int, int] = {}
        coords = [0] * self.length()

        def rec(i, acc):
            # acc = q(prefix)*den mod 2*den
            if i == len(self.orders):
                counts[acc] = counts.get(acc, 0) + 1
                return
            row = bn[i]
            for c in range(self.orders[i]):
                coords[i] = c
                cross = sum(c * coords[j] * row[j] for j in range(i))
                rec(i + 1, (acc + c * c * qn[i] + cross) % mod)

        rec(0, 0)
        return {Fraction(num, den): cnt for num, cnt in counts.items()}

    def value_counts(self) -> dict[Fraction, int]:
        """Multiset of q-values over the whole group.

        Values add across b-orthogonal components, so each component is
        enumerated separately (integer phase arithmetic) and the value
        distributions are convolved; only a component itself may not exceed
        the enumeration cap.
        """
        total: dict[Fraction, int] = {Fraction(0): 1}
        for idxs in self.orthogonal_components():
            part = self.subform(idxs)._component_value_counts()
            merged: dict[Fraction, int] = {}
            for v1, c1 in total.items():
                for v2, c2 in part.items():
                    key = _mod2(v1 + v2)
                    merged[key] = merged.get(key, 0) + c1 * c2
            total = merged
        return total

    def radical_rank_is_zero(self) -> bool:
        """True iff the bilinear form has trivial radical.

        The radical splits over prime parts and over b-orthogonal components,
        so only components are enumerated.
        """
        for p in self.lengths_per_prime():
            part = self.prime_part(p)
            for idxs in part.orthogonal_components():
                comp = part.subform(idxs)
                if comp.order > BRUTE_FORCE_CAP:
                    raise GroupTooLarge("radical check too large")
                k = comp.length()
                units = [_unit(k, j) for j in range(k)]
                for x in comp.elements():
                    if all(c == 0 for c in x):
                        continue
                    if all(comp.pairing(x, e) == 0 for e in units):
                        return False
        return True


def _unit(k: int, j: int) -> tuple[int, ...]:
    return tuple(1 if i == j else 0 for i in range(k))


@lru_cache(maxsize=None)
def _prime_factors(n: int) -> tuple[int, ...]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return tuple(out)


def _p_power(n: int, p: int) -> int:
    pk = 1
    while n % p == 0:
        n //= p
        pk *= p
    return pk


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) for odd prime p."""
    a %= p
    if a == 0:
        return 0
    r = pow(a, (p - 1) // 2, p)
    return 1 if r == 1 else -1


# -- standard building blocks ------------------------------------------------

def trivial_form() -> FiniteQuadraticForm:
    return FiniteQuadraticForm((), (), ())


def cyclic_form(n: int, value: Fraction) -> FiniteQuadraticForm:
    """Z/n with q(generator) = value; b(g,g) = value mod Z."""
    v = _mod2(Fraction(value))
    return FiniteQuadraticForm((n,), (v,), ((_mod1(v),),))


def u_block(n: int = 2) -> FiniteQuadraticForm:
    """Hyperbolic block on (Z/n)^2: q = 0 on generators, b(x,y) = 1/n."""
    z = Fraction(0)
    return FiniteQuadraticForm(
        (n, n), (z, z), ((z, Fraction(1, n)), (Fraction(1, n), z))
    )


def v_block() -> FiniteQuadraticForm:
    """(Z/2)^2 with q = 1 on all three nonzero elements (discriminant form of D4)."""
    one = Fraction(1)
    return FiniteQuadraticForm(
        (2, 2), (one, one), ((one, HALF), (HALF, one))
    )


def p_elementary_form(p: int, a: int, nonresidue: bool = False) -> FiniteQuadraticForm:
    """(Z/p)^a with generator values 2/p, the last one 2n/p for a nonresidue n if asked."""
    if a == 0:
        return trivial_form()
    us = [1] * a
    if nonresidue:
        us[-1] = _least_nonresidue(p)
    form = trivial_form()
    for u in us:
        form = form.dsum(cyclic_form(p, Fraction(2 * u, p)))
    return form


def _least_nonresidue(p: int) -> int:
    return next(n for n in range(2, p) if legendre(n, p) == -1)


def two_elementary_form(a: int, delta: int, sigma: int) -> FiniteQuadraticForm | None:
    """A 2-elementary form with the given (length, delta, signature mod 8), if any.

    Built from blocks <1/2>, <3/2>, u(2), v(2); the triple classifies such
    forms, so any block solution represents the isomorphism class.
    """
    sigma %= 8
    for n_uv in range(a // 2 + 1):
        rest = a - 2 * n_uv
        for n2 in range(rest + 1):
            n1 = rest - n2
            if delta == 1 and n1 + n2 == 0:
                continue
            if delta == 0 and n1 + n2 > 0:
                continue
            for j in range(n_uv + 1):
                if (n1 - n2 + 4 * j) % 8 != sigma:
                    continue
                form = trivial_form()
                for _ in range(n1):
                    form = form.dsum(cyclic_form(2, HALF))
                for _ in range(n2):
                    form = form.dsum(cyclic_form(2, THREE_HALF))
                for _ in range(n_uv - j):
                    form = form.dsum(u_block(2))
                for _ in range(j):
                    form = form.dsum(v_block())
                return form
    return None


# -- invariants ----------------------------------------------------------------

def gauss_signature(form: FiniteQuadraticForm) -> int:
    """Signature mod 8 via the Gauss sum: (1/sqrt|A|) sum exp(pi i q(x)) = exp(2 pi i s/8)."""
    if form.is_trivial():
        return 0
    try:
        nondegenerate = form.radical_rank_is_zero()
    except GroupTooLarge:
        nondegenerate = True  # components too large to scan; caller's responsibility
    if not nondegenerate:
        raise DegenerateForm("degenerate form has no Gauss signature")
    counts = form.value_counts()
    total = 0j
    for val, cnt in counts.items():
        total += cnt * cmath.exp(1j * math.pi * float(val))
    total /= math.sqrt(form.order)
    for s in range(8):
        if abs(total - cmath.exp(2j * math.pi * s / 8)) < GAUSS_TOL:
            return s
    raise AmbiguousGaussSum(f"Gauss sum {total!r} matched no eighth root of unity")


def delta_invariant(form: FiniteQuadraticForm) -> int:
    """0 if the 2-part takes only integer values mod 2Z, else 1."""
    part = form.prime_part(2)
    if part.is_trivial():
        return 0
    return 0 if all(v.denominator == 1 for v in part.value_counts()) else 1


def odd_disc_class(part: FiniteQuadraticForm, p: int) -> int:
    """Square class (Legendre symbol) of det of the scaled bilinear form of a p-elementary part."""
    k = part.length()
    if k == 0:
        return 1
    mat = [[int(p * part.b[i][j]) % p for j in range(k)] for i in range(k)]
    det = _det_mod_p(mat, p)
    return legendre(det, p)


def _det_mod_p(mat, p: int) -> int:
    n = len(mat)
    a = [row[:] for row in mat]
    det = 1
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] % p != 0), None)
        if piv is None:
            return 0
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = -det
        det = det * a[k][k] % p
        inv = pow(a[k][k], -1, p)
        for i in range(k + 1, n):
            f = a[i][k] * inv % p
            a[i] = [(x - f * y) % p for x, y in zip(a[i], a[k])]
    return det % p


@dataclass(frozen=True)
class FormInvariants:
    """Genus-level fingerprint of a finite quadratic form."""

    order: int
    lengths_per_prime: dict[int, int]
    signature_mod_8: int
    delta: int
    odd_prime_disc_class: dict[int, int]


def form_invariants(form: FiniteQuadraticForm) -> FormInvariants:
    lengths = form.lengths_per_prime()
    disc = {}
    for p in sorted(lengths):
        if p == 2:
            continue
        part = form.prime_part(p)
        if all(d == p for d in part.orders):
            disc[p] = odd_disc_class(part, p)
    return FormInvariants(
        order=form.order,
        lengths_per_prime=lengths,
        signature_mod_8=gauss_signature(form) if not form.is_trivial() else 0,
        delta=delta_invariant(form),
        odd_prime_disc_class=disc,
    )


# -- isomorphism ---------------------------------------------------------------

def _group_type(form: FiniteQuadraticForm) -> tuple[tuple[int, int], ...]:
    """Multiset of prime powers in the group decomposition, as a sorted tuple."""
    out = []
    for d in form.orders:
        for p in _prime_factors(d):
            out.append((p, _p_power(d, p)))
    return tuple(sorted(out))


def _is_exponent(part: FiniteQuadraticForm, p: int) -> bool:
    return all(d == p for d in part.orders)


def forms_isomorphic(f1: FiniteQuadraticForm, f2: FiniteQuadraticForm) -> bool:
    """Decide isomorphism of two nondegenerate finite quadratic forms.

    Fast paths: odd p-elementary parts compare by (length, discriminant square
    class); exponent-2 parts by (length, delta, signature mod 8).  Anything
    else falls back to a brute-force generator-matching search.
    """
    if _group_type(f1) != _group_type(f2):
        return False
    primes = sorted(set(f1.lengths_per_prime()) | set(f2.lengths_per_prime()))
    for p in primes:
        p1, p2 = f1.prime_part(p), f2.prime_part(p)
        if p != 2 and _is_exponent(p1, p) and _is_exponent(p2, p):
            if p1.length() != p2.length():
                return False
            if odd_disc_class(p1, p) != odd_disc_class(p2, p):
                return False
        elif p == 2 and _is_exponent(p1, 2) and _is_exponent(p2, 2):
            if p1.length() != p2.length():
                return False
            if delta_invariant(p1) != delta_invariant(p2):
                return False
            if not p1.is_trivial() and gauss_signature(p1) != gauss_signature(p2):
                return False
        else:
            if not _brute_isomorphic(p1, p2):
                return False
    return True


def _brute_isomorphic(f1: FiniteQuadraticForm, f2: FiniteQuadraticForm) -> bool:
    if f1.order != f2.order:
        return False
    if f1.order > BRUTE_FORCE_CAP:
        raise GroupTooLarge(f"brute-force isomorphism on group of order {f1.order}")
    if sorted(f1.value_counts().items()) != sorted(f2.value_counts().items()):
        return False
    elements = [tuple(x) for x in f2.elements()]
    by_order_value: dict[tuple[int, Fraction], list[tuple[int, ...]]] = {}
    for x in elements:
        o = _element_order(x, f2.orders)
        by_order_value.setdefault((o, f2.value(x)), []).append(x)

    gens = list(range(f1.length()))

    def extend(idx, images):
        if idx == len(gens):
            return _spans(images, f2)
        i = gens[idx]
        want_order = f1.orders[i]
        want_q = f1.q[i]
        for cand in by_order_value.get((want_order, want_q), []):
            if all(
                f2.pairing(cand, images[j]) == f1.b[i][gens[j]]
                for j in range(idx)
            ):
                if extend(idx + 1, images + [cand]):
                    return True
        return False

    return extend(0, [])


def _element_order(x, orders) -> int:
    o = 1
    for c, d in zip(x, orders):
        if c:
            k = d // math.gcd(c, d)
            o = o * k // math.gcd(o, k)
    return o


def _spans(images, form: FiniteQuadraticForm) -> bool:
    """Do the image vectors generate the whole group?"""
    seen = {tuple([0] * form.length())}
    frontier = [tuple([0] * form.length())]
    while frontier:
        x = frontier.pop()
        for g in images:
            y = tuple((a + b) % d for a, b, d in zip(x, g, form.orders))
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return len(seen) == form.order


# -- even lattice existence ------------------------------------------------------

E4_SEARCH_FACTOR = 2


def even_lattice_exists(s_plus: int, s_minus: int, form: FiniteQuadraticForm) -> bool:
    ok, _ = even_lattice_exists_report(s_plus, s_minus, form)
    return ok


def even_lattice_exists_report(
    s_plus: int, s_minus: int, form: FiniteQuadraticForm
) -> tuple[bool, str | None]:
    """Existence of an even lattice with signature (s_plus, s_minus) and this
    discriminant form, with the name of the failing condition when false.

    Conditions: (E1) signature bounds and length <= rank; (E2) the Gauss/Milgram
    signature; (E3) the p-adic determinant square-class test when an odd prime
    part has full length; (E4) a bounded witness search when the 2-part has
    full length (rank <= 2 only).
    """
    rank = s_plus + s_minus
    if s_plus < 0 or s_minus < 0:
        return False, "E1"
    lengths = form.lengths_per_prime()
    if rank == 0:
        return (form.is_trivial(), None if form.is_trivial() else "E1")
    if lengths and max(lengths.values()) > rank:
        return False, "E1"
    if gauss_signature(form) != (s_plus - s_minus) % 8:
        return False, "E2"
    if lengths.get(2, 0) == rank:
        if rank > 2:
            raise UnsupportedRegime("full-length 2-part with rank > 2")
        ok = _witness_search(s_plus, s_minus, form)
        return (ok, None if ok else "E4")
    for p in sorted(lengths):
        if p == 2 or lengths[p] != rank:
            continue
        part = form.prime_part(p)
        if not _is_exponent(part, p):
            raise UnsupportedRegime(f"full-length non-elementary {p}-part")
        unit = ((-1) ** s_minus * form.order) // p ** lengths[p]
        if legendre(unit, p) * odd_disc_class(part, p) != 1:
            return False, f"E3:p={p}"
    return True, None


def _witness_search(s_plus: int, s_minus: int, form: FiniteQuadraticForm) -> bool:
    """Exhaustive search over small even Gram matrices of rank 1 or 2."""
    from . import lattices  # local import; lattices depends on this module

    rank = s_plus + s_minus
    n = form.order
    bound = E4_SEARCH_FACTOR * n
    candidates = []
    if rank == 1:
        candidates = [((2 * k,),) for k in range(-bound // 2, bound // 2 + 1) if k]
    elif rank == 2:
        for a in range(-bound, bound + 1, 2):
            for c in range(-bound, bound + 1, 2):
                for b in range(0, bound + 1):
                    candidates.append(((a, b), (b, c)))
    for gram in candidates:
        from .exact import det_exact, signature_of_symmetric

        d = det_exact(gram)
        if d == 0 or abs(d) != n:
            continue
        if signature_of_symmetric(gram) != (s_plus, s_minus):
            continue
        lat = lattices.Lattice(gram)
        if forms_isomorphic(lattices.discriminant_data(lat).form, form):
            return True
    return False
