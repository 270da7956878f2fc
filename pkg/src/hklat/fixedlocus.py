"""Fixed-locus census on the Hilbert square of a K3 surface.

Given the fixed locus of a prime-order non-symplectic automorphism on a K3
surface (one curve of genus g, k smooth rational curves, N isolated points
with local-type counts n_0..n_{p-2}), the induced automorphism on the Hilbert
square fixes a catalogue of points, curves and surfaces whose Euler
characteristic and total F_p Betti number are accumulated per component.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .tables import h_star, lefschetz_chi


@dataclass(frozen=True)
class K3FixedLocus:
    """Fixed locus of an order-p automorphism on a K3 surface.

    n[t] counts isolated points with local rotation type diag(z^(t+1), z^(p-t))
    for a primitive p-th root of unity z; n has length p-1.
    """

    p: int
    k: int
    n: tuple[int, ...]
    genus_curve: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "n", tuple(int(x) for x in self.n))
        if self.p < 3 or self.p % 2 == 0:
            raise ValueError("p must be an odd prime")
        if len(self.n) != self.p - 1:
            raise ValueError(f"n must list p-1 = {self.p - 1} local-type counts")
        if self.k < 0 or any(x < 0 for x in self.n):
            raise ValueError("counts must be nonnegative")
        if self.genus_curve is not None and self.genus_curve < 0:
            raise ValueError("genus must be nonnegative")

    @property
    def N(self) -> int:
        return sum(self.n)

    @property
    def n_half(self) -> int:
        """Count of points whose local action has two equal eigenvalues."""
        return self.n[(self.p - 1) // 2]


@dataclass(frozen=True)
class Hilb2FixedLocus:
    """Component inventory of the induced fixed locus on the Hilbert square."""

    isolated_points: int
    rational_curves: int
    genus_g_curves: int
    surfaces_p1_x_p1: int
    surfaces_p1_x_cg: int
    surfaces_p2: int
    surfaces_hilb2_cg: int
    chi: int
    h_star: int

    def as_dict(self) -> dict:
        return {
            "isolated_points": self.isolated_points,
            "rational_curves": self.rational_curves,
            "genus_g_curves": self.genus_g_curves,
            "surfaces": {
                "p1_x_p1": self.surfaces_p1_x_p1,
                "p1_x_cg": self.surfaces_p1_x_cg,
                "p2": self.surfaces_p2,
                "hilb2_cg": self.surfaces_hilb2_cg,
            },
            "chi": self.chi,
            "h_star": self.h_star,
        }


def hilb2_census(f: K3FixedLocus) -> Hilb2FixedLocus:
    """Componentwise census of the fixed locus on the Hilbert square.

    When no genus-g curve is present, the four components derived from it are
    simply omitted; the remaining contributions are unchanged.
    """
    N, k, nh = f.N, f.k, f.n_half
    g = f.genus_curve

    points = N * (N - 1) // 2 + 2 * (N - nh)
    rational = nh + N * k + k
    p1p1 = k * (k - 1) // 2
    p2 = k

    chi = points + 2 * rational + 4 * p1p1 + 3 * p2
    hs = points + 2 * rational + 4 * p1p1 + 3 * p2

    if g is None:
        return Hilb2FixedLocus(points, rational, 0, p1p1, 0, p2, 0, chi, hs)

    cg_curves = N + 1
    chi += cg_curves * (2 - 2 * g) + k * (4 - 4 * g) + (3 + 2 * g * g - 5 * g)
    hs += cg_curves * (2 + 2 * g) + k * (4 + 4 * g) + (3 + 2 * g * g + 3 * g)
    return Hilb2FixedLocus(points, rational, cg_curves, p1p1, k, p2, 1, chi, hs)


def census_chi_closed_form(g: int, N: int, k: int) -> tuple[int, int]:
    """Closed forms for (chi, h_star) when a genus-g curve is present."""
    chi2 = (2 * g - 2 - N - 2 * k) * (2 * g - 5 - N - 2 * k)
    if chi2 % 2:
        raise ArithmeticError("closed form did not produce an integer")
    hs2 = N * N + 7 * N + 4 * N * k + 14 * k + 4 * N * g + 10 + 10 * g + 4 * k * k + 8 * k * g + 4 * g * g
    if hs2 % 2:
        raise ArithmeticError("closed form did not produce an integer")
    return chi2 // 2, hs2 // 2


def cross_check_totals(chi: int, hs: int, p: int, m: int, a: int) -> bool:
    """Do fixed-locus totals match the lattice-side predictions for (p, m, a)?"""
    return chi == lefschetz_chi(p, m) and hs == h_star(p, m, a)


def cross_check_against_table(f: K3FixedLocus, p: int, m: int, a: int) -> bool:
    census = hilb2_census(f)
    return cross_check_totals(census.chi, census.h_star, p, m, a)


# -- local fixed-point analysis ----------------------------------------------------

def enumerate_local_actions(p: int) -> list[dict]:
    """Eigenvalue patterns of the linearized action at a fixed point on a
    symplectic fourfold rescaling the symplectic form by a primitive p-th root
    of unity z.

    Family 1 has eigenvalues (1, z, z^((p+1)/2)) with multiplicities (a, a, b),
    2a + b = 4, constrained by the Pfaffian congruence a + b(p+1)/2 = 2 mod p.
    Family 2 has eigenvalues (1, z, z^i, z^(1-i)) with 2i != 1 mod p and
    multiplicities (a, a, b, b), a + b = 2.  The fixed-component dimension at
    the point equals the multiplicity of eigenvalue 1.
    """
    if p < 3 or p % 2 == 0:
        raise ValueError("p must be an odd prime")
    out = []
    half = (p + 1) // 2
    for a in range(0, 3):
        b = 4 - 2 * a
        if (a + half * b - 2) % p == 0:
            out.append(
                {
                    "family": 1,
                    "eigenvalue_exponents": (0, 1, half),
                    "multiplicities": (a, a, b),
                    "fixed_dim": a,
                }
            )
    seen = set()
    for i in range(2, p):
        if (2 * i - 1) % p == 0:
            continue
        rep = min(i, (1 - i) % p)
        if rep in seen or rep in (0, 1):
            continue
        seen.add(rep)
        for a in range(0, 3):
            b = 2 - a
            out.append(
                {
                    "family": 2,
                    "i": i,
                    "eigenvalue_exponents": (0, 1, i, (1 - i) % p),
                    "multiplicities": (a, a, b, b),
                    "fixed_dim": a,
                }
            )
    return out


# -- fixtures: fixed loci on families of fourfolds ----------------------------------

@dataclass(frozen=True)
class FixedLocusFixture:
    """A directly observed fixed locus on a fourfold: components given as
    ("point", count), ("curve", genus, count) or ("surface", chi, h_star, count);
    expected to match the classification row `triple`."""

    label: str
    components: tuple[tuple, ...]
    triple: tuple[int, int, int]

    def totals(self) -> tuple[int, int]:
        chi = hs = 0
        for comp in self.components:
            kind = comp[0]
            if kind == "point":
                chi += comp[1]
                hs += comp[1]
            elif kind == "curve":
                _, g, count = comp
                chi += count * (2 - 2 * g)
                hs += count * (2 + 2 * g)
            elif kind == "surface":
                _, c, h, count = comp
                chi += count * c
                hs += count * h
            else:
                raise ValueError(f"unknown component kind {kind!r}")
        return chi, hs


# Fixed loci of the four order-3 actions on families of Fano varieties of
# lines in cubic fourfolds, plus the Hilbert-square census of a K3 action
# with five isolated points and two rational curves.
FANO_FIXTURES = (
    FixedLocusFixture(
        label="fano-surface-of-cubic-threefold",
        components=(("surface", 27, 67, 1),),
        triple=(3, 11, 1),
    ),
    FixedLocusFixture(
        label="three-cubic-surfaces-and-27-points",
        components=(("point", 27), ("surface", 9, 9, 3)),
        triple=(3, 5, 5),
    ),
    FixedLocusFixture(
        label="three-elliptic-curves",
        components=(("curve", 1, 3),),
        triple=(3, 8, 6),
    ),
    FixedLocusFixture(
        label="three-points-three-rational-curves",
        components=(("point", 3), ("curve", 0, 3)),
        triple=(3, 7, 7),
    ),
)

HILB2_NATURAL_355 = K3FixedLocus(p=3, k=2, n=(0, 5))


# -- JSON interface -----------------------------------------------------------------

def k3_fixed_locus_from_json(text: str) -> K3FixedLocus:
    data = json.loads(text)
    return K3FixedLocus(
        p=data["p"],
        k=data.get("k", 0),
        n=tuple(data.get("n", [0] * (data["p"] - 1))),
        genus_curve=data.get("genus_curve"),
    )
