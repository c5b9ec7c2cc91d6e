"""Monomial (generalized permutation) matrices with omega-power coefficients.

Entries have the shape omega^k * u^m, where omega is a fixed generator of the
multiplicative group of the coefficient field and exponents k live modulo its
order.  Every cocycle computation in this package stays inside this class;
nothing here ever touches a general field element.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .rootdata import WeylElement


@dataclass(frozen=True)
class MonomialMatrix:
    """rows[i] = (column, coef_exponent, u_power); exponents modulo `mod`."""

    n: int
    mod: int  # order of the coefficient group, e.g. q - 1
    cols: tuple[int, ...]
    exps: tuple[int, ...]
    upows: tuple[int, ...]

    def __post_init__(self):
        assert sorted(self.cols) == list(range(self.n)), "not a monomial matrix"

    @staticmethod
    def identity(n: int, mod: int) -> "MonomialMatrix":
        return MonomialMatrix(n, mod, tuple(range(n)), (0,) * n, (0,) * n)

    @staticmethod
    def diag_upow(lam: Sequence[int], mod: int) -> "MonomialMatrix":
        n = len(lam)
        return MonomialMatrix(n, mod, tuple(range(n)), (0,) * n, tuple(lam))

    @staticmethod
    def diag_omega(exps: Sequence[int], mod: int) -> "MonomialMatrix":
        n = len(exps)
        return MonomialMatrix(n, mod, tuple(range(n)), tuple(e % mod for e in exps), (0,) * n)

    @staticmethod
    def from_signed_matrix(mat: Sequence[Sequence[int]], mod: int) -> "MonomialMatrix":
        """Lift a matrix with entries in {0, 1, -1}; -1 becomes omega^(mod/2)."""
        n = len(mat)
        cols = []
        exps = []
        for i in range(n):
            nz = [(j, mat[i][j]) for j in range(n) if mat[i][j] != 0]
            if len(nz) != 1 or nz[0][1] not in (1, -1):
                raise ValueError("matrix has no monomial lift")
            j, s = nz[0]
            cols.append(j)
            if s == 1:
                exps.append(0)
            else:
                if mod % 2 != 0:
                    raise ValueError("sign -1 needs an even coefficient-group order")
                exps.append(mod // 2)
        return MonomialMatrix(n, mod, tuple(cols), tuple(exps), (0,) * n)

    @staticmethod
    def from_weyl(w: WeylElement, mod: int) -> "MonomialMatrix":
        return MonomialMatrix.from_signed_matrix(w.matrix, mod)

    def __mul__(self, other: "MonomialMatrix") -> "MonomialMatrix":
        assert self.n == other.n and self.mod == other.mod
        cols = []
        exps = []
        upows = []
        for i in range(self.n):
            k = self.cols[i]
            cols.append(other.cols[k])
            exps.append((self.exps[i] + other.exps[k]) % self.mod)
            upows.append(self.upows[i] + other.upows[k])
        return MonomialMatrix(self.n, self.mod, tuple(cols), tuple(exps), tuple(upows))

    def inv(self) -> "MonomialMatrix":
        cols = [0] * self.n
        exps = [0] * self.n
        upows = [0] * self.n
        for i in range(self.n):
            j = self.cols[i]
            cols[j] = i
            exps[j] = (-self.exps[i]) % self.mod
            upows[j] = -self.upows[i]
        return MonomialMatrix(self.n, self.mod, tuple(cols), tuple(exps), tuple(upows))

    def coef_frobenius(self, p: int) -> "MonomialMatrix":
        return MonomialMatrix(
            self.n, self.mod, self.cols,
            tuple((e * p) % self.mod for e in self.exps), self.upows,
        )

    def u_frobenius(self, p: int) -> "MonomialMatrix":
        return MonomialMatrix(
            self.n, self.mod, self.cols,
            tuple((e * p) % self.mod for e in self.exps),
            tuple(m * p for m in self.upows),
        )

    def gamma_twist(self, omega_unit_exp: int) -> "MonomialMatrix":
        """Apply gamma: u -> omega u, i.e. each entry gains omega^{u-power}."""
        return MonomialMatrix(
            self.n, self.mod, self.cols,
            tuple((e + m * omega_unit_exp) % self.mod for e, m in zip(self.exps, self.upows)),
            self.upows,
        )

    def conjugate_by_permutation(self, perm: Sequence[int]) -> "MonomialMatrix":
        """P M P^{-1} for the permutation matrix P: e_j -> e_{perm[j]}."""
        inv = [0] * self.n
        for j, pj in enumerate(perm):
            inv[pj] = j
        cols = [0] * self.n
        exps = [0] * self.n
        upows = [0] * self.n
        for i in range(self.n):
            src = inv[i]
            cols[i] = perm[self.cols[src]]
            exps[i] = self.exps[src]
            upows[i] = self.upows[src]
        return MonomialMatrix(self.n, self.mod, tuple(cols), tuple(exps), tuple(upows))

    def power(self, k: int) -> "MonomialMatrix":
        out = MonomialMatrix.identity(self.n, self.mod)
        base = self
        if k < 0:
            base = self.inv()
            k = -k
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def is_identity(self) -> bool:
        return (
            self.cols == tuple(range(self.n))
            and all(e == 0 for e in self.exps)
            and all(m == 0 for m in self.upows)
        )

    def is_constant(self) -> bool:
        return all(m == 0 for m in self.upows)

    def order(self, cap: int = 10**6) -> int:
        acc = self
        for k in range(1, cap + 1):
            if acc.is_identity():
                return k
            acc = acc * self
        raise RuntimeError("order exceeds cap")

    def rescale_mod(self, new_mod: int) -> "MonomialMatrix":
        """Push exponents into a larger coefficient group of order new_mod."""
        assert new_mod % self.mod == 0
        f = new_mod // self.mod
        return MonomialMatrix(
            self.n, new_mod, self.cols, tuple(e * f for e in self.exps), self.upows
        )

    def entries(self) -> list[list[tuple[int, int] | None]]:
        out: list[list[tuple[int, int] | None]] = [[None] * self.n for _ in range(self.n)]
        for i in range(self.n):
            out[i][self.cols[i]] = (self.exps[i], self.upows[i])
        return out

    def describe(self) -> str:
        parts = []
        for i in range(self.n):
            e, m = self.exps[i], self.upows[i]
            coef = "1" if e == 0 else ("-1" if 2 * e == self.mod else f"w^{e}")
            u = "" if m == 0 else (f"*u^{m}" if m != 1 else "*u")
            parts.append(f"[{i},{self.cols[i]}]={coef}{u}")
        return " ".join(parts)
