"""Exact arithmetic in GF(2^m) for small m.

Elements are stored as integers in [0, 2^m) giving their coordinates in the
power basis of the modulus class; addition is xor.  A ``FieldCtx`` carries the
modulus and precomputed log/antilog and operation tables, so that bulk series
code can work on raw integer codes (or numpy arrays of codes) while the
``FieldElem`` wrapper provides a safe, operator-overloaded view for scalar
work.

The default m=2 context is GF(4) = {0, 1, s, s2} with s^2 + s + 1 = 0,
encoded 0, 1, 2, 3.  Tokens "0", "1", "s", "s2" are the wire format used by
every fixture file.
"""

from __future__ import annotations

import numpy as np

__all__ = ["FieldCtx", "FieldElem", "GF2", "GF4", "TOKENS_GF4"]

# Smallest irreducible polynomial of each degree, as a bitmask.  Degree 2 is
# x^2+x+1, forced: its root is the s of GF(4).
_DEFAULT_MODULUS = {
    1: 0b11,         # x + 1 (GF(2) itself; modulus unused)
    2: 0b111,        # x^2 + x + 1
    3: 0b1011,
    4: 0b10011,
    5: 0b100101,
    6: 0b1000011,
    7: 0b10000011,
    8: 0b100011011,
}


def _gf2_polymul_mod(a: int, b: int, modulus: int, m: int) -> int:
    """Carryless product of a and b reduced modulo the degree-m modulus."""
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a >> m & 1:
            a ^= modulus
    return r


def _is_irreducible(modulus: int, m: int) -> bool:
    """Exhaustive check that modulus has no factor of degree <= m/2."""
    if m == 1:
        return True
    for d in range(1, m // 2 + 1):
        for f in range(1 << d, 1 << (d + 1)):
            # trial division of modulus by f over GF(2)
            rem = modulus
            while rem.bit_length() >= f.bit_length():
                rem ^= f << (rem.bit_length() - f.bit_length())
            if rem == 0:
                return False
    return True


class FieldCtx:
    """GF(2^m) with a fixed modulus; immutable after construction.

    All scalar operations take and return integer codes in [0, q).  The
    ``MUL``, ``INV``, ``FROB`` numpy tables support vectorized use.
    """

    def __init__(self, m: int, modulus: int | None = None):
        if not 1 <= m <= 8:
            raise ValueError(f"extension degree m={m} out of supported range 1..8")
        if modulus is None:
            modulus = _DEFAULT_MODULUS[m]
        if modulus.bit_length() != m + 1:
            raise ValueError(f"modulus 0b{modulus:b} does not have degree {m}")
        if not _is_irreducible(modulus, m):
            raise ValueError(f"modulus 0b{modulus:b} is reducible over GF(2)")
        self.m = m
        self.q = 1 << m
        self.modulus = modulus
        q = self.q

        mul = np.zeros((q, q), dtype=np.uint8)
        for a in range(q):
            for b in range(q):
                mul[a, b] = _gf2_polymul_mod(a, b, modulus, m)
        self.MUL = mul
        self.MUL.setflags(write=False)

        # log/antilog tables; the multiplicative group is cyclic of order q-1
        exp = [1]
        g = self._find_generator()
        for _ in range(q - 2):
            exp.append(int(mul[exp[-1], g]))
        log = [0] * q
        for i, v in enumerate(exp):
            log[v] = i
        self._exp = exp
        self._log = log

        inv = np.zeros(q, dtype=np.uint8)
        for a in range(1, q):
            inv[a] = exp[(q - 1 - log[a]) % (q - 1)]
        self.INV = inv
        self.INV.setflags(write=False)

        frob = np.array([int(mul[a, a]) for a in range(q)], dtype=np.uint8)
        self.FROB = frob
        self.FROB.setflags(write=False)

        # q-th power is the identity on GF(q); qth_root relies on this
        for a in range(q):
            assert self.pow(a, q) == a

    def _find_generator(self) -> int:
        q = self.q
        if q == 2:
            return 1
        for g in range(2, q):
            seen = set()
            x = 1
            for _ in range(q - 1):
                x = _gf2_polymul_mod(x, g, self.modulus, self.m)
                seen.add(x)
            if len(seen) == q - 1:
                return g
        raise AssertionError("no generator found; modulus not irreducible?")

    # scalar ops on integer codes -------------------------------------------

    def add(self, a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in GF(q)")
        return int(self.INV[a])

    def pow(self, a: int, n: int) -> int:
        if a == 0:
            return 0 if n else 1
        return self._exp[(self._log[a] * n) % (self.q - 1)]

    def frobenius(self, a: int) -> int:
        return int(self.FROB[a])

    def qth_root(self, a: int) -> int:
        # a |-> a is the unique q-th root inside GF(q) since a^q = a
        return a

    # tokens -----------------------------------------------------------------

    def to_token(self, a: int) -> str:
        if not 0 <= a < self.q:
            raise ValueError(f"code {a} out of range for GF({self.q})")
        if a < 2:
            return str(a)
        if self.m == 2:
            return "s" if a == 2 else "s2"
        return f"g{a}"

    def from_token(self, tok: str) -> int:
        tok = tok.strip()
        table = {"0": 0, "1": 1}
        if self.m == 2:
            table.update({"s": 2, "s2": 3, "s^2": 3})
        if tok in table:
            return table[tok]
        if tok.startswith("g"):
            return int(tok[1:])
        raise ValueError(f"unknown field token {tok!r} for GF({self.q})")

    def elem(self, x: int | str) -> "FieldElem":
        if isinstance(x, str):
            x = self.from_token(x)
        return FieldElem(self, x)

    def elements(self):
        return [FieldElem(self, a) for a in range(self.q)]

    def __eq__(self, other):
        return (
            isinstance(other, FieldCtx)
            and self.m == other.m
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.m, self.modulus))

    def __repr__(self):
        return f"FieldCtx(m={self.m}, modulus=0b{self.modulus:b})"


class FieldElem:
    """A single element of GF(2^m), wrapping an integer code."""

    __slots__ = ("ctx", "bits")

    def __init__(self, ctx: FieldCtx, bits: int):
        if not 0 <= bits < ctx.q:
            raise ValueError(f"code {bits} out of range for GF({ctx.q})")
        self.ctx = ctx
        self.bits = bits

    def _check(self, other: "FieldElem") -> None:
        if not isinstance(other, FieldElem):
            raise TypeError(f"expected FieldElem, got {type(other).__name__}")
        if other.ctx != self.ctx:
            raise ValueError("field context mismatch")

    def __add__(self, other):
        self._check(other)
        return FieldElem(self.ctx, self.bits ^ other.bits)

    __sub__ = __add__  # characteristic 2

    def __mul__(self, other):
        self._check(other)
        return FieldElem(self.ctx, self.ctx.mul(self.bits, other.bits))

    def __truediv__(self, other):
        self._check(other)
        return self * other.inv()

    def __pow__(self, n: int):
        if n < 0:
            return self.inv() ** (-n)
        return FieldElem(self.ctx, self.ctx.pow(self.bits, n))

    def inv(self):
        return FieldElem(self.ctx, self.ctx.inv(self.bits))

    def frobenius(self):
        return FieldElem(self.ctx, self.ctx.frobenius(self.bits))

    def qth_root(self):
        b = FieldElem(self.ctx, self.ctx.qth_root(self.bits))
        assert (b ** self.ctx.q).bits == self.bits
        return b

    def __eq__(self, other):
        return (
            isinstance(other, FieldElem)
            and self.ctx == other.ctx
            and self.bits == other.bits
        )

    def __hash__(self):
        return hash((self.ctx, self.bits))

    def __bool__(self):
        return self.bits != 0

    def __repr__(self):
        return self.ctx.to_token(self.bits)


GF2 = FieldCtx(1)
GF4 = FieldCtx(2)
TOKENS_GF4 = ("0", "1", "s", "s2")
