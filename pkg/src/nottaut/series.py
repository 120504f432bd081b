"""Truncated Laurent series over GF(2^m) with absolute-precision tracking.

A series knows its valuation ``val`` (smallest stored exponent) and its
absolute precision ``prec``: coefficients of t^n are exact for all n < prec.
Every operation propagates the weakest precision of its inputs, so silent
truncation bugs surface as short precisions instead of wrong coefficients.
The zero-to-precision series is represented by val == prec with no stored
coefficients.

Multiplication packs the GF(2) bit-planes of the coefficient vector into
Python integers (16-bit slots, chunked when lengths approach the carry
limit) and uses one big-int product per plane-pair; a product over GF(4)
costs three carryless products.  On top of that, substitution of a
Nottingham element is done by the base-q strand recursion
phi(psi) = sum_r psi^r * stretch_q(phi_r(psi)), which is valid over GF(q)
because psi(t)^q = psi(t^q) there; inversion, reversion and algebraic root
extraction are Newton iterations (quadratic convergence survives
characteristic 2 thanks to Hasse-derivative bookkeeping, and every solver
re-checks its defining equation at full precision before returning).
"""

from __future__ import annotations

import numpy as np

from .gf2m import FieldCtx, GF4

__all__ = [
    "LaurentSeries",
    "NottinghamElem",
    "PrecisionError",
    "ContractionError",
    "compose",
    "compose_inverse",
    "solve_contractive",
]

DEFAULT_PRECISION = 4096


class PrecisionError(ValueError):
    """A coefficient beyond the known precision window was requested."""


class ContractionError(ValueError):
    """solve_contractive was fed an equation that does not contract."""


# ---------------------------------------------------------------------------
# packed coefficient-vector products
# ---------------------------------------------------------------------------

def _gf2_convolve(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact product of two GF(2) coefficient vectors (0/1 entries).

    Small inputs go through an integer numpy convolution; larger ones pack
    the vectors into big Python integers (16- or 32-bit slots, wide enough
    that slot sums cannot carry) and use one machine bignum product.
    """
    la, lb = len(a), len(b)
    if la == 0 or lb == 0:
        return np.zeros(0, dtype=np.uint8)
    n = la + lb - 1
    if min(la, lb) <= 48:
        out = np.convolve(a.astype(np.int64), b.astype(np.int64))
        return (out & 1).astype(np.uint8)
    if min(la, lb) < (1 << 16):
        p = int.from_bytes(a.astype("<u2").tobytes(), "little") * int.from_bytes(
            b.astype("<u2").tobytes(), "little"
        )
        out = np.frombuffer(p.to_bytes(2 * (n + 1), "little"), dtype="<u2")[:n]
        return (out & 1).astype(np.uint8)
    # both operands huge: chunk the shorter one so 16-bit slots stay carry-free
    if la > lb:
        a, b, la, lb = b, a, lb, la
    chunk_len = 1 << 15
    packed_b = int.from_bytes(b.astype("<u2").tobytes(), "little")
    out = np.zeros(n, dtype=np.uint8)
    for k in range(0, la, chunk_len):
        ch = a[k : k + chunk_len]
        p = int.from_bytes(ch.astype("<u2").tobytes(), "little") * packed_b
        ln = len(ch) + lb - 1
        arr = np.frombuffer(p.to_bytes(2 * (ln + 1), "little"), dtype="<u2")[:ln]
        out[k : k + ln] ^= (arr & 1).astype(np.uint8)
    return out


def _mul_arrays(ctx: FieldCtx, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Coefficient-vector product over GF(2^m); fast paths for m=1,2."""
    la, lb = len(a), len(b)
    if la == 0 or lb == 0:
        return np.zeros(0, dtype=np.uint8)
    if ctx.m == 1:
        return _gf2_convolve(a, b)
    if ctx.m == 2:
        a0, a1 = a & 1, a >> 1
        b0, b1 = b & 1, b >> 1
        p1 = _gf2_convolve(a0, b0)
        p2 = _gf2_convolve(a1, b1)
        p3 = _gf2_convolve(a0 ^ a1, b0 ^ b1)
        return (p1 ^ p2) | ((p3 ^ p1) << 1)
    # generic small-field fallback: row-at-a-time table multiply
    out = np.zeros(la + lb - 1, dtype=np.uint8)
    for i in np.flatnonzero(a):
        out[i : i + lb] ^= ctx.MUL[a[i], b]
    return out


def _square_arrays(ctx: FieldCtx, a: np.ndarray) -> np.ndarray:
    """(sum a_i t^i)^2 = sum a_i^2 t^(2i) in characteristic 2."""
    if len(a) == 0:
        return a
    out = np.zeros(2 * len(a) - 1, dtype=np.uint8)
    out[::2] = ctx.FROB[a]
    return out


def _stretch(a: np.ndarray, k: int) -> np.ndarray:
    """Raise exponents by a factor k (used for psi(t)^q = psi(t^q))."""
    if len(a) == 0:
        return a
    out = np.zeros(k * (len(a) - 1) + 1, dtype=np.uint8)
    out[::k] = a
    return out


# ---------------------------------------------------------------------------
# LaurentSeries
# ---------------------------------------------------------------------------


class LaurentSeries:
    """Dense truncated Laurent series: coeffs[i] is the coefficient of t^(val+i)."""

    __slots__ = ("ctx", "val", "prec", "coeffs")

    def __init__(self, ctx: FieldCtx, val: int, coeffs, prec: int):
        arr = np.asarray(coeffs, dtype=np.uint8)
        if arr.ndim != 1:
            raise ValueError("coefficient array must be one-dimensional")
        if np.any(arr >= ctx.q):
            raise ValueError(f"coefficient code out of range for GF({ctx.q})")
        if len(arr) != prec - val:
            raise ValueError("coefficient array length must equal prec - val")
        self.ctx = ctx
        self.val = val
        self.prec = prec
        self.coeffs = arr
        self._normalize()

    def _normalize(self):
        nz = np.flatnonzero(self.coeffs)
        if len(nz) == 0:
            self.val = self.prec
            self.coeffs = self.coeffs[:0]
        elif nz[0] > 0:
            self.val += int(nz[0])
            self.coeffs = self.coeffs[nz[0] :]

    @classmethod
    def _raw(cls, ctx, val, arr, prec):
        obj = object.__new__(cls)
        obj.ctx, obj.val, obj.prec, obj.coeffs = ctx, val, prec, arr
        obj._normalize()
        return obj

    # constructors -----------------------------------------------------------

    @classmethod
    def zero(cls, ctx: FieldCtx, prec: int = DEFAULT_PRECISION):
        return cls._raw(ctx, prec, np.zeros(0, dtype=np.uint8), prec)

    @classmethod
    def from_terms(cls, ctx: FieldCtx, terms: dict[int, int], prec: int = DEFAULT_PRECISION):
        """Series from {exponent: coefficient code}; exact below prec."""
        if not terms:
            return cls.zero(ctx, prec)
        lo = min(terms)
        arr = np.zeros(prec - lo, dtype=np.uint8)
        for e, c in terms.items():
            if e >= prec:
                raise PrecisionError(f"term t^{e} at or beyond precision {prec}")
            arr[e - lo] = c
        return cls._raw(ctx, lo, arr, prec)

    @classmethod
    def t_power(cls, ctx: FieldCtx, k: int, prec: int = DEFAULT_PRECISION):
        return cls.from_terms(ctx, {k: 1}, prec)

    @classmethod
    def one(cls, ctx: FieldCtx, prec: int = DEFAULT_PRECISION):
        return cls.from_terms(ctx, {0: 1}, prec)

    # basic queries ----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.val == self.prec

    def coefficient(self, n: int) -> int:
        if n >= self.prec:
            raise PrecisionError(f"coefficient of t^{n} unknown (precision {self.prec})")
        if n < self.val:
            return 0
        return int(self.coeffs[n - self.val])

    def coeff_window(self, lo: int, hi: int) -> np.ndarray:
        """Coefficients of t^lo .. t^(hi-1); requires hi <= prec."""
        if hi > self.prec:
            raise PrecisionError(f"window up to t^{hi} exceeds precision {self.prec}")
        out = np.zeros(hi - lo, dtype=np.uint8)
        a = max(lo, self.val)
        b = min(hi, self.prec)
        if a < b:
            out[a - lo : b - lo] = self.coeffs[a - self.val : b - self.val]
        return out

    def truncate(self, prec: int) -> "LaurentSeries":
        if prec >= self.prec:
            return self
        return LaurentSeries._raw(self.ctx, self.val, self.coeffs[: max(prec - self.val, 0)].copy(), prec)

    def pad_to(self, prec: int) -> "LaurentSeries":
        """Zero-extend the window and *declare* precision prec.

        Only sound inside Newton-style solvers, where the padded guess is
        corrected before the enclosing routine certifies its result.
        """
        if prec <= self.prec:
            return self.truncate(prec)
        arr = np.zeros(prec - self.val, dtype=np.uint8)
        arr[: len(self.coeffs)] = self.coeffs
        return LaurentSeries._raw(self.ctx, self.val, arr, prec)

    def leading(self) -> int:
        if self.is_zero:
            raise ValueError("zero series has no leading coefficient")
        return int(self.coeffs[0])

    # arithmetic -------------------------------------------------------------

    def _check(self, other):
        if self.ctx != other.ctx:
            raise ValueError("field context mismatch")

    def add(self, other: "LaurentSeries") -> "LaurentSeries":
        self._check(other)
        prec = min(self.prec, other.prec)
        val = min(self.val, other.val, prec)
        out = np.zeros(prec - val, dtype=np.uint8)
        for srs in (self, other):
            a = srs.val
            b = min(srs.prec, prec)
            if a < b:
                out[a - val : b - val] ^= srs.coeffs[: b - a]
        return LaurentSeries._raw(self.ctx, val, out, prec)

    __add__ = add
    __sub__ = add  # characteristic 2

    def scalar_mul(self, c: int) -> "LaurentSeries":
        if c == 0:
            return LaurentSeries.zero(self.ctx, self.prec)
        return LaurentSeries._raw(self.ctx, self.val, self.ctx.MUL[c, self.coeffs], self.prec)

    def shift(self, k: int) -> "LaurentSeries":
        """Multiply by t^k."""
        return LaurentSeries._raw(self.ctx, self.val + k, self.coeffs.copy(), self.prec + k)

    def mul(self, other: "LaurentSeries") -> "LaurentSeries":
        self._check(other)
        if self.is_zero or other.is_zero:
            prec = min(self.prec + other.val, other.prec + self.val)
            return LaurentSeries.zero(self.ctx, prec)
        val = self.val + other.val
        prec = min(self.prec + other.val, other.prec + self.val)
        n = prec - val
        conv = _mul_arrays(self.ctx, self.coeffs[:n], other.coeffs[:n])
        return LaurentSeries._raw(self.ctx, val, conv[:n].copy(), prec)

    __mul__ = mul

    def square(self) -> "LaurentSeries":
        if self.is_zero:
            return LaurentSeries.zero(self.ctx, self.prec + self.val)
        val = 2 * self.val
        prec = self.prec + self.val
        arr = _square_arrays(self.ctx, self.coeffs)[: prec - val]
        if len(arr) < prec - val:
            arr = np.concatenate([arr, np.zeros(prec - val - len(arr), dtype=np.uint8)])
        return LaurentSeries._raw(self.ctx, val, arr, prec)

    def invert_mul(self) -> "LaurentSeries":
        """Multiplicative inverse; Newton iteration w <- a*w^2 (char 2)."""
        if self.is_zero:
            raise ZeroDivisionError("inverse of zero series")
        ctx = self.ctx
        u = self.coeffs  # unit part, u[0] != 0
        L = len(u)
        w = np.array([ctx.inv(int(u[0]))], dtype=np.uint8)
        n = 1
        while n < L:
            n = min(2 * n, L)
            w2 = _square_arrays(ctx, w)
            w = _mul_arrays(ctx, u[:n], w2[:n])[:n]
        check = _mul_arrays(ctx, u[:L], w[:L])[:L]
        assert check[0] == 1 and not check[1:].any(), "inversion residual check failed"
        return LaurentSeries._raw(ctx, -self.val, w.copy(), self.prec - 2 * self.val)

    def div(self, other: "LaurentSeries") -> "LaurentSeries":
        return self.mul(other.invert_mul())

    __truediv__ = div

    def pow(self, n: int) -> "LaurentSeries":
        if n < 0:
            return self.invert_mul().pow(-n)
        r = LaurentSeries.one(self.ctx, self.prec - self.val)
        b = self
        while n:
            if n & 1:
                r = r.mul(b)
            n >>= 1
            if n:
                b = b.square()
        return r

    def frobenius_coeffs(self) -> "LaurentSeries":
        """Apply the 2-Frobenius to every coefficient (same exponents)."""
        return LaurentSeries._raw(self.ctx, self.val, self.ctx.FROB[self.coeffs], self.prec)

    def derivative(self) -> "LaurentSeries":
        """Formal d/dt; in characteristic 2 only odd exponents survive."""
        exps = np.arange(self.val, self.prec)
        arr = np.where(exps % 2 == 1, self.coeffs, 0).astype(np.uint8)
        return LaurentSeries._raw(self.ctx, self.val - 1, arr.copy(), self.prec - 1)

    # comparisons ------------------------------------------------------------

    def agree_prec(self, other: "LaurentSeries") -> int:
        """Largest P <= min(precs) such that self == other below t^P."""
        self._check(other)
        prec = min(self.prec, other.prec)
        lo = min(self.val, other.val, prec)
        d = self.coeff_window(lo, prec) ^ other.coeff_window(lo, prec)
        nz = np.flatnonzero(d)
        return prec if len(nz) == 0 else lo + int(nz[0])

    def eq_prec(self, other: "LaurentSeries", prec: int | None = None) -> bool:
        p = min(self.prec, other.prec) if prec is None else prec
        if min(self.prec, other.prec) < p:
            raise PrecisionError("operands too short for requested comparison")
        return self.agree_prec(other) >= p

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return self.ctx == other.ctx and self.eq_prec(other)

    __hash__ = None

    # rendering --------------------------------------------------------------

    def terms(self):
        for i, c in enumerate(self.coeffs):
            if c:
                yield self.val + i, int(c)

    def __str__(self):
        return self.to_text(max_terms=12)

    def to_text(self, max_terms: int | None = None) -> str:
        parts = []
        for e, c in self.terms():
            if max_terms is not None and len(parts) >= max_terms:
                parts.append(f"O(t^{e})")
                return " + ".join(parts)
            tok = self.ctx.to_token(c)
            if e == 0:
                parts.append(tok)
            else:
                tpow = "t" if e == 1 else f"t^{e}"
                parts.append(tpow if c == 1 else f"{tok}*{tpow}")
        if not parts:
            return f"O(t^{self.prec})"
        parts.append(f"O(t^{self.prec})")
        return " + ".join(parts)

    def __repr__(self):
        return f"<LaurentSeries val={self.val} prec={self.prec} {self.to_text(max_terms=6)}>"

    def to_json(self) -> dict:
        return {
            "val": int(self.val),
            "prec": int(self.prec),
            "coeffs": [self.ctx.to_token(int(c)) for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, ctx: FieldCtx, data: dict) -> "LaurentSeries":
        arr = np.array([ctx.from_token(t) for t in data["coeffs"]], dtype=np.uint8)
        return cls(ctx, int(data["val"]), arr, int(data["prec"]))


class NottinghamElem(LaurentSeries):
    """A series t + a2 t^2 + ... ; the shape is enforced at construction."""

    def __init__(self, ctx, val, coeffs, prec):
        super().__init__(ctx, val, coeffs, prec)
        self._validate()

    def _validate(self):
        if self.is_zero or self.val != 1 or self.coeffs[0] != 1:
            raise ValueError("Nottingham element must have the form t + a2*t^2 + ...")

    @classmethod
    def from_series(cls, srs: LaurentSeries) -> "NottinghamElem":
        return cls(srs.ctx, srs.val, srs.coeffs, srs.prec)

    @classmethod
    def identity(cls, ctx: FieldCtx, prec: int = DEFAULT_PRECISION) -> "NottinghamElem":
        return cls.from_series(LaurentSeries.t_power(ctx, 1, prec))

    def depth(self) -> int | None:
        """v_t(phi(t) - t) - 1, or None when phi == t to working precision."""
        diff = self.add(LaurentSeries.t_power(self.ctx, 1, self.prec))
        if diff.is_zero:
            return None
        return diff.val - 1


# ---------------------------------------------------------------------------
# substitution
# ---------------------------------------------------------------------------

_COMPOSE_BASE = 16


def _compose_arrays(ctx, a: np.ndarray, psi: np.ndarray, N: int, cache: dict) -> np.ndarray:
    """phi(psi) mod t^N for phi with 0-based coefficient vector a.

    psi is the 0-based vector of the substituted series (val >= 1, so
    psi[0] == 0 and only a[:N] can contribute).  Splits phi into its q
    residue strands and combines them by Horner:
    phi(psi) = S_0 + psi*(S_1 + psi*(... )) with S_r = stretch_q(strand_r(psi)).
    Base-level calls all share the same truncation of psi, so a power matrix
    psi^j mod t^N is cached per size and each call becomes one table lookup.
    """
    a = a[:N]
    if N <= 0:
        return np.zeros(0, dtype=np.uint8)
    if len(a) == 0 or not a.any():
        return np.zeros(N, dtype=np.uint8)
    if N == 1:
        return a[:1].copy()
    if N <= _COMPOSE_BASE:
        pows = cache.get(N)
        if pows is None:
            pows = np.zeros((N, N), dtype=np.uint8)
            pows[0, 0] = 1
            for j in range(1, N):
                conv = _mul_arrays(ctx, pows[j - 1], psi[:N])[:N]
                pows[j, : len(conv)] = conv
            cache[N] = pows
        k = len(a)
        return np.bitwise_xor.reduce(ctx.MUL[a[:, None], pows[:k]], axis=0)
    q = ctx.q
    nq = -(-N // q)
    parts = []
    for r in range(q):
        part = _compose_arrays(ctx, a[r::q], psi, nq, cache)
        parts.append(_stretch(part, q)[:N])
    psi = psi[:N]
    acc = np.zeros(N, dtype=np.uint8)
    for r in range(q - 1, -1, -1):
        if acc.any():
            conv = _mul_arrays(ctx, psi, acc)[:N]
            acc = np.zeros(N, dtype=np.uint8)
            acc[: len(conv)] = conv
        sr = parts[r]
        acc[: len(sr)] ^= sr
    return acc


def compose(phi: LaurentSeries, psi: LaurentSeries, N: int | None = None) -> LaurentSeries:
    """Substitute psi (val >= 1, unit leading coefficient) for t in phi."""
    if phi.ctx != psi.ctx:
        raise ValueError("field context mismatch")
    if psi.is_zero or psi.val < 1:
        raise ValueError("substitution requires a series of valuation >= 1")
    ctx = phi.ctx
    prec = min(phi.prec, psi.prec)
    if N is not None:
        prec = min(prec, N)
    if prec <= 0:
        raise PrecisionError("operands leave no valid precision window for substitution")
    if phi.is_zero:
        return LaurentSeries.zero(ctx, prec)

    neg = None
    if phi.val < 0:
        inv_psi = psi.invert_mul()
        neg = LaurentSeries.zero(ctx, prec)
        power = inv_psi
        for k in range(1, -phi.val + 1):
            c = phi.coefficient(-k)
            if c:
                neg = neg.add(power.scalar_mul(c))
            if k < -phi.val:
                power = power.mul(inv_psi)
        neg = neg.truncate(prec)

    # non-negative part via the strand recursion
    pos_arr = phi.coeff_window(0, max(phi.prec, 0)) if phi.prec > 0 else np.zeros(0, dtype=np.uint8)
    psi_arr = psi.coeff_window(0, psi.prec)
    out = _compose_arrays(ctx, pos_arr, psi_arr, prec, {})
    result = LaurentSeries._raw(ctx, 0, out, prec)
    if neg is not None:
        result = result.add(neg)
    return result


def nott_compose(phi: NottinghamElem, psi: NottinghamElem, N: int | None = None) -> NottinghamElem:
    return NottinghamElem.from_series(compose(phi, psi, N))


def compose_inverse(phi: NottinghamElem, N: int | None = None) -> NottinghamElem:
    """Group inverse in N(k): psi with phi(psi) = psi(phi) = t.

    Newton iteration on f(x) = phi(x) - t; f'(x) = phi'(x) is a unit series
    because phi has leading coefficient 1, and the error valuation doubles
    each step even in characteristic 2.
    """
    ctx = phi.ctx
    prec = phi.prec if N is None else min(N, phi.prec)
    t = LaurentSeries.t_power(ctx, 1, prec)
    x: LaurentSeries = t.truncate(2)
    dphi = phi.derivative()
    correct = 2
    while correct < prec:
        correct = min(2 * correct, prec)
        xz = x.pad_to(correct)
        fx = compose(phi, xz, correct).add(LaurentSeries.t_power(ctx, 1, correct))
        if fx.is_zero:
            x = xz
            continue
        g = compose(dphi, xz, correct)
        h = fx.mul(g.invert_mul()).truncate(correct)
        x = xz.add(h)
    x = x.pad_to(prec) if x.prec < prec else x
    residual = compose(phi, x, prec).add(t)
    assert residual.is_zero, "reversion residual check failed"
    return NottinghamElem(ctx, x.val, x.coeffs, prec)


# ---------------------------------------------------------------------------
# contractive fixed points
# ---------------------------------------------------------------------------


def _eval_bivar(ctx, eq: dict[tuple[int, int], int], z: LaurentSeries, prec: int) -> LaurentSeries:
    """Evaluate sum c_ij t^i Z^j at Z = z, to absolute precision prec."""
    max_j = max(j for (_, j) in eq)
    zpow = [LaurentSeries.one(ctx, prec)]
    for _ in range(max_j):
        zpow.append(zpow[-1].mul(z).truncate(prec))
    acc = LaurentSeries.zero(ctx, prec)
    for (i, j), c in eq.items():
        acc = acc.add(zpow[j].shift(i).scalar_mul(c).truncate(prec))
    return acc


def solve_contractive(
    ctx: FieldCtx, eq: dict[tuple[int, int], int], N: int = DEFAULT_PRECISION
) -> LaurentSeries:
    """Unique Z in t*GF(q)[[t]] with Z = Phi(t, Z), Phi given as {(i,j): c_ij}.

    Requires every monomial of Phi to carry a positive power of t.  Starts
    with plain fixed-point iteration (whose guaranteed-correct prefix must
    strictly grow, else ContractionError), then switches to a Newton
    iteration on G(Z) = Z + Phi(t, Z) for the long haul.  The result is
    certified by back-substitution before returning.
    """
    eq = {k: v for k, v in eq.items() if v}
    for (i, j), _ in eq.items():
        if i < 1:
            raise ContractionError(f"monomial t^{i} Z^{j} carries no positive power of t")

    warm = min(N, 64)
    z = LaurentSeries.zero(ctx, warm)
    agreed = 0
    for _ in range(warm + 2):
        z_next = _eval_bivar(ctx, eq, z, warm)
        a = z.agree_prec(z_next)
        if a >= warm:
            z = z_next
            break
        if a <= agreed:
            raise ContractionError("iteration failed to extend the agreed prefix")
        agreed, z = a, z_next
    else:  # pragma: no cover
        raise ContractionError("fixed-point warmup did not converge")

    # G(Z) = Z + Phi(t,Z);  G'(Z) keeps only odd-j monomials (char 2)
    geq = dict(eq)
    geq[(0, 1)] = geq.get((0, 1), 0) ^ 1
    dgeq = {}
    for (i, j), c in geq.items():
        if j % 2 == 1:
            key = (i, j - 1)
            dgeq[key] = dgeq.get(key, 0) ^ c
    correct = warm
    while correct < N:
        correct = min(2 * correct, N)
        zx = z.pad_to(correct)
        g = _eval_bivar(ctx, geq, zx, correct)
        if g.is_zero:
            z = zx
            continue
        dg = _eval_bivar(ctx, dgeq, zx, correct)
        h = g.mul(dg.invert_mul()).truncate(correct)
        z = zx.add(h)
    residual = _eval_bivar(ctx, geq, z, N)
    if not residual.is_zero:
        raise ContractionError("fixed point failed back-substitution")
    return z


def random_nottingham(ctx: FieldCtx, prec: int, rng) -> NottinghamElem:
    """Uniformly random t + a2 t^2 + ... to the given precision (test helper)."""
    arr = rng.integers(0, ctx.q, size=prec - 1, dtype=np.uint8)
    arr[0] = 1
    return NottinghamElem(ctx, 1, arr, prec)


_ = GF4  # the common context, re-exported for convenience
