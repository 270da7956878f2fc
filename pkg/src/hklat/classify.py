"""Existence, uniqueness and embedding analysis for p-elementary lattices.

The ambient lattice throughout is L = U^3 + E8^2 + <-2>, of signature (3,20)
and discriminant form Z/2 (3/2).  A p-elementary lattice S (p odd) embedding
primitively in L has orthogonal complement T with signature (3-s+, 20-s-) and
discriminant form (-q_S) + Z/2 (3/2); existence of T is decided by the even
lattice existence conditions, which is also what rules candidate triples out.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .fqf import (
    FiniteQuadraticForm,
    THREE_HALF,
    UnsupportedRegime,
    cyclic_form,
    even_lattice_exists_report,
    forms_isomorphic,
    gauss_signature,
    p_elementary_form,
    trivial_form,
)
from .lattices import (
    Lattice,
    LatticeExpr,
    discriminant_data,
    parse_expr,
    realize_atom,
)


class NotPElementary(ValueError):
    """Operation requires a p-elementary lattice for a single odd prime."""


@dataclass(frozen=True)
class LatticeInvariants:
    """Genus data of an even lattice: signature plus discriminant form.

    ``p`` is the elementary prime when the discriminant group is (Z/p)^a,
    0 for the unimodular case, and None for mixed groups.
    """

    s_plus: int
    s_minus: int
    p: int | None
    a: int
    form: FiniteQuadraticForm

    @property
    def rank(self) -> int:
        return self.s_plus + self.s_minus


def invariants_of(lattice: Lattice) -> LatticeInvariants:
    s_plus, s_minus = lattice.signature()
    data = discriminant_data(lattice)
    factors = data.invariant_factors
    if not factors:
        p, a = 0, 0
    elif all(f == factors[0] for f in factors) and _is_prime(factors[0]):
        p, a = factors[0], len(factors)
    else:
        p, a = None, len(factors)
    return LatticeInvariants(s_plus, s_minus, p, a, data.form)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


# -- existence ------------------------------------------------------------------

def hyperbolic_p_elementary_exists(p: int, r: int, a: int) -> bool:
    """Existence of an even hyperbolic p-elementary lattice (p odd) of rank r,
    discriminant group (Z/p)^a."""
    if p == 2 or not _is_prime(p):
        raise ValueError("p must be an odd prime")
    if r < 2 or a < 0 or a > r or r % 2:
        return False
    if a % 2 == 0:
        if r % 4 != 2:
            return False
    else:
        if (p - (-1) ** (r // 2 - 1)) % 4 != 0:
            return False
    if r % 8 != 2 and not (r > a > 0):
        return False
    return True


def split_off_U(s_plus: int, s_minus: int, a: int) -> bool:
    """Whether a hyperbolic-plane summand splits off: rank >= 3 + length."""
    if s_plus <= 0 or s_minus <= 0:
        raise ValueError("splitting requires an indefinite lattice")
    return s_plus + s_minus >= 3 + a


def _definite_binary_exists(positive: bool, p: int, a: int) -> bool:
    """Search reduced even binary definite forms of |det| = p^a that are
    p-elementary of length a.

    Reduced positive forms [[2x, b], [b, 2z]] satisfy 0 <= b <= x <= z, so
    3x^2 <= 4xz - b^2 = p^a bounds the search exhaustively.
    """
    sign = 1 if positive else -1
    target = p**a
    x = 1
    while 3 * x * x <= target:
        for b in range(0, x + 1):
            num = target + b * b
            if num % (4 * x) == 0:
                z = num // (4 * x)
                if z >= x:
                    gram = ((sign * 2 * x, sign * b), (sign * b, sign * 2 * z))
                    factors = discriminant_data(Lattice(gram)).invariant_factors
                    if len(factors) == a and all(f == p for f in factors):
                        return True
        x += 1
    return False


def indefinite_p_elementary_exists(p: int, s_plus: int, s_minus: int, a: int) -> bool:
    """Existence of an even p-elementary lattice (p odd) of signature
    (s_plus, s_minus) and length a, for s_plus in {1, 2}."""
    if s_plus not in (1, 2):
        raise UnsupportedRegime("only signatures with s_plus in {1, 2} are handled")
    rank = s_plus + s_minus
    if a < 0 or a > rank:
        return False
    if s_plus == 1:
        if s_minus == 0:
            return False  # rank-one even lattices are never p-elementary for odd p
        return hyperbolic_p_elementary_exists(p, rank, a)
    if s_minus == 0:
        if a == 0:
            return False  # no even unimodular positive definite lattice of rank 2
        return _definite_binary_exists(True, p, a)
    if rank >= 3 + a:
        return hyperbolic_p_elementary_exists(p, rank - 2, a)
    # short lattices (a > rank - 3): decide by the general existence conditions
    for nonresidue in (False, True):
        q = p_elementary_form(p, a, nonresidue)
        ok, _ = even_lattice_exists_report(s_plus, s_minus, q)
        if ok:
            return True
        if a == 0:
            break
    return False


def p_elementary_form_for_signature(
    p: int, s_plus: int, s_minus: int, a: int
) -> FiniteQuadraticForm | None:
    """The p-elementary form of length a whose Gauss signature matches the
    signature mod 8; None when neither discriminant class matches."""
    if a == 0:
        return trivial_form() if (s_plus - s_minus) % 8 == 0 else None
    for nonresidue in (False, True):
        q = p_elementary_form(p, a, nonresidue)
        if gauss_signature(q) == (s_plus - s_minus) % 8:
            return q
    return None


# -- genus uniqueness (indefinite) -------------------------------------------------

def genus_unique(rank: int, det: int) -> bool:
    """Sufficient one-class-per-genus test for indefinite lattices of rank n and
    |determinant| d: true when no nonsquare k = 0,1 mod 4 has k^C(n,2) dividing
    4^floor(n/2) * d."""
    if rank < 2:
        raise ValueError("test applies to indefinite lattices (rank >= 2)")
    d = abs(det)
    bound = 4 ** (rank // 2) * d
    exponent = rank * (rank - 1) // 2
    k = 2
    while k**exponent <= bound:
        if k % 4 in (0, 1) and not _is_square(k) and bound % (k**exponent) == 0:
            return False
        k += 1
    return True


def _is_square(n: int) -> bool:
    r = int(n**0.5)
    while r * r > n:
        r -= 1
    while (r + 1) * (r + 1) <= n:
        r += 1
    return r * r == n


# -- primitive embeddings into the ambient lattice ---------------------------------

AMBIENT_SIGNATURE = (3, 20)


@dataclass(frozen=True)
class EmbeddingReport:
    """Outcome of embedding a p-elementary lattice S primitively into
    L = U^3 + E8^2 + <-2>."""

    embeds: bool
    unique_embedding: bool
    orthogonal_invariants: LatticeInvariants | None
    orthogonal_expr: LatticeExpr | None
    exception_flag: bool
    t_unique_embedding: bool


def embed_in_L(s: LatticeInvariants, recognize_orthogonal: bool = False) -> EmbeddingReport:
    """Primitive-embedding analysis of S in L for odd p (or a = 0).

    The orthogonal complement T has signature (3 - s+, 20 - s-) and
    discriminant form (-q_S) + Z/2 (3/2).  The embedding is unique when
    s+ < 3, s- < 20 and a <= 21 - rank(S); outside that range the rank-one
    complement case is checked directly and the remaining exceptions get
    a one-class-per-genus certificate for T instead (exception_flag).
    """
    if s.p is None or (s.p == 2 and s.a > 0):
        raise NotPElementary("embedding analysis requires odd p (or trivial group)")
    t_plus = AMBIENT_SIGNATURE[0] - s.s_plus
    t_minus = AMBIENT_SIGNATURE[1] - s.s_minus
    if t_plus < 0 or t_minus < 0:
        return EmbeddingReport(False, False, None, None, False, False)
    q_t = s.form.neg().dsum(cyclic_form(2, THREE_HALF))
    embeds, _ = even_lattice_exists_report(t_plus, t_minus, q_t)
    if not embeds:
        return EmbeddingReport(False, False, None, None, False, False)
    t_inv = LatticeInvariants(t_plus, t_minus, None, s.a + 1, q_t)

    t_rank = t_plus + t_minus
    unique = s.s_plus < 3 and s.s_minus < 20 and s.a <= 21 - s.rank
    exception = False
    if not unique:
        if t_rank == 1:
            unique = _rank_one_orthogonal_group_surjects(q_t)
        elif t_rank >= 2:
            exception = genus_unique(t_rank, 2 * (s.p**s.a if s.p else 1))

    t_unique = s.rank >= s.a + 2 or (s.rank == 2 and s.a == 1 and s.p == 3)

    expr = None
    if recognize_orthogonal:
        expr = recognize(t_inv)
    return EmbeddingReport(True, unique, t_inv, expr, exception, t_unique)


def _rank_one_orthogonal_group_surjects(q_t: FiniteQuadraticForm) -> bool:
    """For a rank-one complement <2d>, O(T) = {+-1}; the embedding is unique iff
    every q-preserving unit of Z/2d is +-1."""
    n = q_t.order
    value = Fraction(1, n)  # q on the generator of <n> is 1/n mod 2Z
    form = cyclic_form(n, value)
    if not forms_isomorphic(form, q_t):
        # positive generator norm does not match; try the negative lattice <-n>
        form = cyclic_form(n, (-value) % 2)
        if not forms_isomorphic(form, q_t):
            return False
    for u in range(2, n - 1):
        if _gcd(u, n) == 1 and (u * u * value - value) % 2 == 0:
            return False
    return True


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


# -- recognition --------------------------------------------------------------------

class BudgetExceeded(ValueError):
    """Recognition search budget must allow at least one summand."""


def _search_pool(target: LatticeInvariants) -> list[str]:
    """Catalog terms eligible for a recognition search, in canonical order."""
    odd_primes = sorted(
        p for p in target.form.lengths_per_prime() if p != 2
    )
    has_two_part = 2 in target.form.lengths_per_prime()
    pool: list[str] = ["U"]
    for p in odd_primes:
        pool.append(f"U({p})")
    for p in odd_primes:
        pool.append(f"A{p - 1}")
    if 3 in odd_primes:
        pool.append("E6")
    pool.append("E8")
    for p in odd_primes:
        if p == 3:
            continue  # K3 = A2, already in the pool
        pool.append(f"K{p}" if p % 4 == 3 else f"H{p}")
        if p % 4 == 3:
            pool.append(f"K{p}(-1)")
    if 17 in odd_primes:
        pool.append("L17")
    if 3 in odd_primes:
        pool.append("E6*(3)")
        pool.append("A2(-1)")
    if 5 in odd_primes:
        pool.append("A4*(5)")
    if has_two_part:
        pool.append("<-2>")
        pool.append("<2>")
        for p in odd_primes:
            pool.append(f"<{2 * p}>")
            pool.append(f"<{-2 * p}>")
    if not odd_primes and not has_two_part:
        pool.append("<2>")
        pool.append("<-2>")
    return pool


def _term_data(term: str):
    expr = parse_expr(term)
    gram = realize_atom(*expr.summands[0][:2])
    lat = Lattice(gram)
    from .exact import det_exact

    return {
        "term": expr.summands[0][:2],
        "rank": len(gram),
        "sig": lat.signature(),
        "det": abs(det_exact(gram)),
        "form": discriminant_data(lat).form,
    }


def recognize(
    target: LatticeInvariants, budget: int = 9
) -> LatticeExpr | None:
    """Search catalog direct sums realizing the target invariants.

    Deterministic: fewest summands first, then lexicographic in the fixed pool
    order.  Matching is exact on rank, signature and |det|, then up to
    isomorphism of discriminant forms.  Returns None when the budget is
    exhausted.
    """
    if budget < 1:
        raise BudgetExceeded("budget must allow at least one summand")
    pool = [_term_data(t) for t in _search_pool(target)]
    want_det = target.form.order
    want_sig = (target.s_plus, target.s_minus)
    want_rank = target.rank
    if want_rank == 0:
        return LatticeExpr(())

    for count in range(1, budget + 1):
        for combo in _signature_combos(pool, count, want_rank, want_sig):
            det = 1
            for t in combo:
                det *= t["det"]
            if det != want_det:
                continue
            form = trivial_form()
            for t in combo:
                form = form.dsum(t["form"])
            if forms_isomorphic(form, target.form):
                return _combo_to_expr(combo)
    return None


def _signature_combos(pool, count, want_rank, want_sig):
    """Multisets of `count` pool terms with the exact total rank and signature."""
    n = len(pool)
    suffix_min = [0] * (n + 1)
    suffix_max = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix_min[i] = min(pool[i]["rank"], suffix_min[i + 1] or pool[i]["rank"])
        suffix_max[i] = max(pool[i]["rank"], suffix_max[i + 1])

    def rec(start, left, rank_left, plus_left, minus_left, acc):
        if left == 0:
            if rank_left == 0 and plus_left == 0 and minus_left == 0:
                yield list(acc)
            return
        for i in range(start, n):
            t = pool[i]
            r = t["rank"]
            if r + (left - 1) * suffix_min[i] > rank_left:
                continue
            if r + (left - 1) * suffix_max[i] < rank_left:
                continue
            sp, sm = t["sig"]
            if sp > plus_left or sm > minus_left:
                continue
            acc.append(t)
            yield from rec(i, left - 1, rank_left - r, plus_left - sp, minus_left - sm, acc)
            acc.pop()

    yield from rec(0, count, want_rank, want_sig[0], want_sig[1], [])


def _combo_to_expr(combo) -> LatticeExpr:
    counts: dict[tuple[str, int], int] = {}
    order: list[tuple[str, int]] = []
    for t in combo:
        key = t["term"]
        if key not in counts:
            order.append(key)
        counts[key] = counts.get(key, 0) + 1
    return LatticeExpr(tuple((a, tw, counts[(a, tw)]) for a, tw in order))
