"""Small finite fields GF(p^k) over a deterministically chosen primitive polynomial.

Used by the strictification routine to double-check monomial identities with
honest field arithmetic.  Elements are coefficient tuples over Z/p; the
modulus is the lexicographically smallest monic primitive polynomial of the
requested degree.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product


def _poly_mul_mod(a: tuple, b: tuple, modulus: tuple, p: int) -> tuple:
    k = len(modulus) - 1
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    # reduce by the monic modulus
    for i in range(len(out) - 1, k - 1, -1):
        c = out[i]
        if c:
            out[i] = 0
            for j in range(k):
                out[i - k + j] = (out[i - k + j] - c * modulus[j]) % p
    out = out[:k] + [0] * max(0, k - len(out))
    return tuple(out[:k])


def _is_primitive(modulus: tuple, p: int) -> bool:
    k = len(modulus) - 1
    q = p**k
    x = tuple([0, 1] + [0] * (k - 2)) if k >= 2 else (1 % p,)
    # x must have multiplicative order exactly q - 1
    order = q - 1
    acc = (1,) + (0,) * (k - 1)
    seen_one_at = None
    for i in range(1, order + 1):
        acc = _poly_mul_mod(acc, x, modulus, p)
        if acc == (1,) + (0,) * (k - 1):
            seen_one_at = i
            break
    return seen_one_at == order


def primitive_polynomial(p: int, k: int) -> tuple:
    """Lexicographically smallest monic primitive polynomial of degree k over F_p."""
    if k == 1:
        # x - g for the smallest primitive root g of F_p
        for g in range(2, p):
            acc, order = g % p, 1
            while acc != 1:
                acc = (acc * g) % p
                order += 1
            if order == p - 1:
                return ((-g) % p, 1)
        return (0, 1)  # p == 2
    for coeffs in product(range(p), repeat=k):
        modulus = coeffs + (1,)
        if modulus[0] == 0:
            continue
        if _is_primitive(modulus, p):
            return modulus
    raise RuntimeError("no primitive polynomial found")


@dataclass(frozen=True)
class GF:
    p: int
    k: int

    @property
    def q(self) -> int:
        return self.p**self.k

    def modulus(self) -> tuple:
        return primitive_polynomial(self.p, self.k)

    def generator_power(self, e: int) -> tuple:
        """omega^e as a coefficient tuple, omega = the class of x (primitive)."""
        e %= self.q - 1
        modulus = self.modulus()
        x = tuple([0, 1] + [0] * (self.k - 2)) if self.k >= 2 else (
            ((-modulus[0]) % self.p),
        )
        acc = (1,) + (0,) * (self.k - 1)
        for _ in range(e):
            acc = _poly_mul_mod(acc, x, modulus, self.p)
        return acc

    def mul(self, a: tuple, b: tuple) -> tuple:
        return _poly_mul_mod(a, b, self.modulus(), self.p)

    def zero(self) -> tuple:
        return (0,) * self.k

    def one(self) -> tuple:
        return (1,) + (0,) * (self.k - 1)

    def neg(self, a: tuple) -> tuple:
        return tuple((-x) % self.p for x in a)

    def add(self, a: tuple, b: tuple) -> tuple:
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def mat_mul(self, A, B):
        n = len(A)
        out = [[self.zero()] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                acc = self.zero()
                for t in range(n):
                    acc = self.add(acc, self.mul(A[i][t], B[t][j]))
                out[i][j] = acc
        return out

    def monomial_to_matrix(self, m) -> list:
        """Realize a constant MonomialMatrix over this field; mod must equal q-1."""
        assert m.mod == self.q - 1 and m.is_constant()
        n = m.n
        out = [[self.zero()] * n for _ in range(n)]
        for i in range(n):
            out[i][m.cols[i]] = self.generator_power(m.exps[i])
        return out
