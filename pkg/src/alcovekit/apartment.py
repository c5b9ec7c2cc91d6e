"""Exact rational points of the enlarged apartment and their predicates.

A point is stored relative to the Chevalley origin o: one rational vector
eta[j] = x_j - o_j per embedding j in {0,...,r-1}.  All wall and genericity
predicates are root-pairing computations with Fractions; strictness is
literal, there is no epsilon anywhere.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
import json
from typing import Sequence

from .rootdata import GammaData, RootDatum, WeylElement

RatVec = tuple[Fraction, ...]


class _ZeroPlus:
    """Concave-function tag 0+ (the jump just above the parahoric level)."""

    def __repr__(self) -> str:
        return "0+"


ZERO_PLUS = _ZeroPlus()


@dataclass(frozen=True)
class ApartmentPoint:
    rd: RootDatum
    gamma: GammaData
    etas: tuple[RatVec, ...]  # one vector per embedding j

    def __post_init__(self):
        assert len(self.etas) == self.gamma.r
        for eta in self.etas:
            assert len(eta) == self.rd.dim

    def eta(self, j: int = 0) -> RatVec:
        return self.etas[j % self.gamma.r]

    def is_gamma_fixed(self) -> bool:
        """theta(x)_j = theta(x_{theta^-1 j}) equals x_j for both generators."""
        r = self.gamma.r
        for j in range(r):
            if self.gamma.psi.apply(self.etas[(j - 1) % r]) != self.etas[j]:
                return False
            if self.gamma.inertial.apply(self.etas[j]) != self.etas[j]:
                return False
        return True

    def to_json(self) -> str:
        return json.dumps(
            {
                "schema": 1,
                "e": self.gamma.e,
                "p": self.gamma.p,
                "r": self.gamma.r,
                "group": self.rd.label,
                "eta": [[f"{c.numerator}/{c.denominator}" for c in eta] for eta in self.etas],
            }
        )


def point_from_json(rd: RootDatum, gamma: GammaData, text: str) -> ApartmentPoint:
    data = json.loads(text)
    etas = tuple(
        tuple(Fraction(int(s.split("/")[0]), int(s.split("/")[1])) for s in eta)
        for eta in data["eta"]
    )
    return ApartmentPoint(rd, gamma, etas)


def point_from_type(
    rd: RootDatum,
    g: GammaData,
    lambdas: Sequence[Sequence[int]],
    ws: Sequence[WeylElement],
) -> ApartmentPoint:
    """x = n.o with n = w^{-1} u^lambda, i.e. eta[j] = -(1/e) w_j^{-1}(lambda_j)."""
    e = g.e
    etas = []
    for lam, w in zip(lambdas, ws):
        v = w.inv().apply(lam)
        etas.append(tuple(Fraction(-c, e) for c in v))
    return ApartmentPoint(rd, g, tuple(etas))


def frobenius(x: ApartmentPoint) -> ApartmentPoint:
    """phi(x)_j = o_j + p(x_{j phi} - o_{j phi}); the index j phi is j - 1."""
    r = x.gamma.r
    p = x.gamma.p
    etas = tuple(
        tuple(p * c for c in x.etas[(j - 1) % r]) for j in range(r)
    )
    return ApartmentPoint(x.rd, x.gamma, etas)


def sigma_action(x: ApartmentPoint) -> ApartmentPoint:
    """(sigma x)_j = psi(x_{j-1}): cyclic shift with the pinned twist."""
    r = x.gamma.r
    etas = tuple(tuple(x.gamma.psi.apply(x.etas[(j - 1) % r])) for j in range(r))
    return ApartmentPoint(x.rd, x.gamma, etas)


def inertia_action(x: ApartmentPoint) -> ApartmentPoint:
    etas = tuple(tuple(x.gamma.inertial.apply(eta)) for eta in x.etas)
    return ApartmentPoint(x.rd, x.gamma, etas)


def is_d_generic(x: ApartmentPoint, d) -> bool:
    """For every positive root a: n_a + d/p < <a, x-o> < n_a + 1 - d/p.

    x must be Gamma-fixed; the test runs on the slot-0 value (the pinned
    automorphism permutes the roots, so the verdict is slot independent).
    """
    d = Fraction(d)
    if d < 0:
        return True
    p = x.gamma.p
    eta = x.eta(0)
    lo = d / p
    hi = 1 - d / p
    if lo >= hi:
        return False
    for a in x.rd.positive_roots():
        t = x.rd.pairing(a, eta)
        frac = t - (t.numerator // t.denominator)
        if not (lo < frac < hi):
            return False
    return True


def is_lowest_alcove(x: ApartmentPoint) -> bool:
    """0 <= <a, x-o> < 1 for every positive root a (slot 0)."""
    eta = x.eta(0)
    for a in x.rd.positive_roots():
        t = x.rd.pairing(a, eta)
        if not (0 <= t < 1):
            return False
    return True


def is_deep_lowest_alcove(rd: RootDatum, mu_eta: Sequence[int], d, p: int) -> bool:
    """d < <a, mu+eta> < p - d for every positive root a (the n_a = 0 case)."""
    d = Fraction(d)
    for a in rd.positive_roots():
        t = rd.pairing(a, mu_eta)
        if not (d < t < p - d):
            return False
    return True


@dataclass(frozen=True)
class ValuationPattern:
    """Entrywise valuation bounds of the parahoric-type subgroup at a point.

    lower_bounds[i][k] is the minimal allowed valuation of matrix slot (i,k)
    in v-units (a rational with denominator dividing e); torus_level is the
    congruence depth imposed on the diagonal units.
    """

    n: int
    lower_bounds: tuple[tuple[Fraction, ...], ...]
    torus_level: Fraction
    e: int

    def bounds_u(self) -> tuple[tuple[int, ...], ...]:
        """The same bounds as integers in u-units (u^e = v)."""
        return tuple(tuple(int(b * self.e) for b in row) for row in self.lower_bounds)

    def at_level(self, n: int) -> "ValuationPattern":
        """Pattern of the congruence subgroup at integer depth n above this one."""
        lb = tuple(
            tuple(b + n if i != k else Fraction(0) for k, b in enumerate(row))
            for i, row in enumerate(self.lower_bounds)
        )
        return ValuationPattern(self.n, lb, self.torus_level + n, self.e)


def parahoric_pattern(x: ApartmentPoint, f, j: int = 0) -> ValuationPattern:
    """GL_n valuation pattern at x with constant concave function f.

    Off-diagonal bound: ceil(-e<a_ik, eta> + e f)/e, where f = ZERO_PLUS means
    the next filtration jump: ceil becomes floor + 1.
    """
    if len(x.rd.block_sizes) != 1 or x.rd.label.startswith(("SL", "PGL")):
        raise ValueError("valuation patterns are defined entrywise only for GL_n")
    n = x.rd.dim
    e = x.gamma.e
    eta = x.eta(j)
    rows = []
    for i in range(n):
        row = []
        for k in range(n):
            if i == k:
                row.append(Fraction(0))
                continue
            pair = eta[i] - eta[k]  # <e_i - e_k, eta>
            base = -e * pair
            if f is ZERO_PLUS:
                val = base.numerator // base.denominator + 1
            else:
                shifted = base + e * Fraction(f)
                val = -((-shifted.numerator) // shifted.denominator)  # ceil
            row.append(Fraction(val, e))
        rows.append(tuple(row))
    if f is ZERO_PLUS:
        torus = Fraction(1, e)
    else:
        ef = e * Fraction(f)
        torus = Fraction(-((-ef.numerator) // ef.denominator), e)
    return ValuationPattern(n, tuple(rows), torus, e)
