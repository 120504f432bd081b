"""Bivariate annihilating polynomials f(t, X) over GF(2^m).

Annihilators of an algebraic series are recovered from its truncation by an
exact nullspace computation: unknown coefficients c_ij are solved from the
linear conditions "coefficient of t^n in sum c_ij t^i y(t)^j vanishes for all
n < N".  The search runs over increasing total degree, so the first hit is a
scalar multiple of the minimal polynomial whenever the degree box admits one.
Recovered polynomials are certified by direct residual evaluation and, for
nonsingular ones, can be re-solved for their unique power-series root by a
Newton iteration.
"""

from __future__ import annotations

import re

import numpy as np

from .gf2m import FieldCtx
from .series import LaurentSeries

__all__ = [
    "BivarPoly",
    "GuessError",
    "guess_annihilator",
    "verify_annihilator",
    "is_nonsingular",
    "frobenius_poly",
    "root_series",
]


class GuessError(ValueError):
    """No annihilator exists within the requested degree bounds."""


class BivarPoly:
    """Sparse polynomial in t and X over GF(2^m); zero coefficients dropped."""

    __slots__ = ("ctx", "coeffs", "deg_t", "deg_x")

    def __init__(self, ctx: FieldCtx, coeffs: dict[tuple[int, int], int]):
        clean = {}
        for (i, j), c in coeffs.items():
            if c:
                if not 0 <= c < ctx.q:
                    raise ValueError(f"coefficient code {c} out of range")
                if i < 0 or j < 0:
                    raise ValueError("negative exponents are not supported")
                clean[(int(i), int(j))] = int(c)
        self.ctx = ctx
        self.coeffs = clean
        self.deg_t = max((i for i, _ in clean), default=-1)
        self.deg_x = max((j for _, j in clean), default=-1)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def total_degree(self) -> int:
        return max((i + j for i, j in self.coeffs), default=-1)

    def __eq__(self, other):
        return (
            isinstance(other, BivarPoly)
            and self.ctx == other.ctx
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.ctx, tuple(sorted(self.coeffs.items()))))

    def coefficient(self, i: int, j: int) -> int:
        return self.coeffs.get((i, j), 0)

    def scalar_mul(self, c: int) -> "BivarPoly":
        if c == 0:
            return BivarPoly(self.ctx, {})
        return BivarPoly(self.ctx, {k: self.ctx.mul(c, v) for k, v in self.coeffs.items()})

    def add(self, other: "BivarPoly") -> "BivarPoly":
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) ^ v
        return BivarPoly(self.ctx, out)

    def partial_x(self) -> "BivarPoly":
        """d/dX; only odd X-exponents survive in characteristic 2."""
        return BivarPoly(
            self.ctx, {(i, j - 1): c for (i, j), c in self.coeffs.items() if j % 2 == 1}
        )

    def leading_monomial(self) -> tuple[int, int]:
        """Largest monomial under graded lex with X > t."""
        return max(self.coeffs, key=lambda ij: (ij[0] + ij[1], ij[1]))

    def normalize(self) -> "BivarPoly":
        """Scale so the graded-lex (X > t) leading coefficient is 1."""
        if self.is_zero:
            return self
        lead = self.coeffs[self.leading_monomial()]
        return self.scalar_mul(self.ctx.inv(lead))

    def is_scalar_multiple_of(self, other: "BivarPoly") -> bool:
        if self.is_zero or other.is_zero:
            return self.is_zero and other.is_zero
        if set(self.coeffs) != set(other.coeffs):
            return False
        k0 = self.leading_monomial()
        c = self.ctx.mul(self.coeffs[k0], self.ctx.inv(other.coeffs[k0]))
        return all(v == self.ctx.mul(c, other.coeffs[k]) for k, v in self.coeffs.items())

    def x_coefficients(self) -> list[LaurentSeries]:
        """c_j(t) for j = 0..deg_x, as exact polynomials (wide precision)."""
        prec = max(self.deg_t + 1, 1) + 1
        out = []
        for j in range(self.deg_x + 1):
            terms = {i: c for (i, jj), c in self.coeffs.items() if jj == j}
            out.append(LaurentSeries.from_terms(self.ctx, terms, prec))
        return out

    def evaluate(self, y: LaurentSeries, prec: int | None = None) -> LaurentSeries:
        """f(t, y(t)) by Horner in X."""
        if prec is None:
            prec = y.prec
        acc = LaurentSeries.zero(self.ctx, prec)
        cs = self.x_coefficients()
        for j in range(self.deg_x, -1, -1):
            acc = acc.mul(y).truncate(prec)
            acc = acc.add(cs[j].pad_to(prec) if cs[j].prec < prec else cs[j].truncate(prec))
        return acc

    # text / JSON wire formats ------------------------------------------------

    def to_text(self) -> str:
        if self.is_zero:
            return "0"
        by_j: dict[int, dict[int, int]] = {}
        for (i, j), c in self.coeffs.items():
            by_j.setdefault(j, {})[i] = c
        parts = []
        for j in sorted(by_j, reverse=True):
            tpoly = by_j[j]
            xpow = "" if j == 0 else ("X" if j == 1 else f"X^{j}")
            if len(tpoly) == 1:
                ((i, c),) = tpoly.items()
                mono = self._mono_text(i, c, bare_one=not xpow)
                parts.append(f"{mono}*{xpow}" if xpow and mono != "1" else (xpow or mono))
            else:
                tx = " + ".join(
                    self._mono_text(i, c, bare_one=True) for i, c in sorted(tpoly.items(), reverse=True)
                )
                parts.append(f"({tx})*{xpow}" if xpow else tx)
        return " + ".join(parts)

    def _mono_text(self, i: int, c: int, bare_one: bool) -> str:
        tok = self.ctx.to_token(c)
        if i == 0:
            return tok
        tpow = "t" if i == 1 else f"t^{i}"
        if c == 1:
            return tpow
        return f"{tok}*{tpow}"

    @classmethod
    def from_text(cls, ctx: FieldCtx, text: str) -> "BivarPoly":
        """Parse the printed format, e.g. ``(t^2+1)*X^2 + X + s*t^2 + t``."""
        s = text.replace(" ", "").replace("-", "+")
        if not s:
            raise ValueError("empty polynomial text")
        coeffs: dict[tuple[int, int], int] = {}
        for term in _split_top(s):
            i_part, j = _split_x(term)
            for i, c in _parse_tpoly(ctx, i_part).items():
                key = (i, j)
                coeffs[key] = coeffs.get(key, 0) ^ c
        return cls(ctx, coeffs)

    def to_json(self) -> dict:
        return {
            "q": self.ctx.q,
            "coeffs": {f"{i},{j}": self.ctx.to_token(c) for (i, j), c in sorted(self.coeffs.items())},
        }

    @classmethod
    def from_json(cls, ctx: FieldCtx, data: dict) -> "BivarPoly":
        coeffs = {}
        for key, tok in data["coeffs"].items():
            i, j = key.split(",")
            coeffs[(int(i), int(j))] = ctx.from_token(tok)
        return cls(ctx, coeffs)

    def __repr__(self):
        return f"<BivarPoly {self.to_text()}>"


def _split_top(s: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "+" and depth == 0:
            if cur:
                parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if cur:
        parts.append("".join(cur))
    return parts


def _split_x(term: str) -> tuple[str, int]:
    m = re.search(r"\*?X(?:\^(\d+))?$", term)
    if not m:
        return term, 0
    j = int(m.group(1)) if m.group(1) else 1
    rest = term[: m.start()]
    if rest.startswith("(") and rest.endswith(")"):
        rest = rest[1:-1]
    return (rest or "1"), j


def _parse_tpoly(ctx: FieldCtx, s: str) -> dict[int, int]:
    out: dict[int, int] = {}
    for term in _split_top(s):
        if not term:
            continue
        c, i = 1, 0
        for factor in term.split("*"):
            m = re.fullmatch(r"t(?:\^(-?\d+))?", factor)
            if m:
                i += int(m.group(1)) if m.group(1) else 1
            else:
                c = ctx.mul(c, ctx.from_token(factor))
        out[i] = out.get(i, 0) ^ c
    return {i: c for i, c in out.items() if c}


# ---------------------------------------------------------------------------
# nullspace guessing
# ---------------------------------------------------------------------------


def _nullspace_gf(ctx: FieldCtx, mat: np.ndarray) -> list[np.ndarray]:
    """Basis of the right nullspace of mat over GF(q) (rows: equations)."""
    m = mat.copy()
    rows, cols = m.shape
    pivot_of_col: dict[int, int] = {}
    r = 0
    for c in range(cols):
        pivots = np.flatnonzero(m[r:, c])
        if len(pivots) == 0:
            continue
        p = r + int(pivots[0])
        m[[r, p]] = m[[p, r]]
        m[r] = ctx.MUL[ctx.inv(int(m[r, c])), m[r]]
        hit = np.flatnonzero(m[:, c])
        hit = hit[hit != r]
        if len(hit):
            m[hit] ^= ctx.MUL[m[hit, c][:, None], m[r][None, :]]
        pivot_of_col[c] = r
        r += 1
        if r == rows:
            break
    basis = []
    free_cols = [c for c in range(cols) if c not in pivot_of_col]
    for fc in free_cols:
        v = np.zeros(cols, dtype=np.uint8)
        v[fc] = 1
        for c, pr in pivot_of_col.items():
            v[c] = m[pr, fc]  # char 2: x_c = -(row) * x_free = row entry
        basis.append(v)
    return basis


def guess_annihilator(
    y: LaurentSeries,
    dx: int,
    dt: int,
    N: int | None = None,
) -> BivarPoly:
    """Minimal-total-degree f with f(t, y) = 0 mod t^N inside the degree box.

    Searches total degrees in increasing order, so any hit cannot be a proper
    multiple of a smaller annihilator inside the box.  Raises GuessError when
    the box contains no annihilator at the given precision.
    """
    ctx = y.ctx
    if N is None:
        N = y.prec
    if N > y.prec:
        raise ValueError(f"series only known to t^{y.prec}, requested N={N}")
    if N < (dx + 1) * (dt + 1) + 16:
        raise ValueError("precision margin too small for trustworthy guessing")
    # rows n = 0..N-1; columns are monomials t^i y^j
    pows = [LaurentSeries.one(ctx, N)]
    for _ in range(dx):
        pows.append(pows[-1].mul(y).truncate(N))
    pow_windows = [p.coeff_window(0, N) for p in pows]

    for d in range(1, dx + dt + 1):
        monos = [(i, j) for j in range(dx + 1) for i in range(dt + 1) if i + j <= d]
        cols = []
        for i, j in monos:
            col = np.zeros(N, dtype=np.uint8)
            col[i:] = pow_windows[j][: N - i]
            cols.append(col)
        mat = np.stack(cols, axis=1)
        basis = _nullspace_gf(ctx, mat)
        if basis:
            v = basis[0]
            poly = BivarPoly(ctx, {monos[k]: int(v[k]) for k in range(len(monos)) if v[k]})
            return poly.normalize()
    raise GuessError(
        f"no annihilator with deg_X <= {dx}, deg_t <= {dt} at precision {N}; raise the bounds"
    )


def verify_annihilator(f: BivarPoly, y: LaurentSeries, N: int | None = None) -> tuple[int, bool]:
    """Valuation of f(t, y(t)).

    Returns (v, exact): exact=True means a nonzero coefficient was seen at
    t^v; exact=False means the residual vanishes below t^v (v is the
    verified precision).
    """
    if N is None:
        N = y.prec
    res = f.evaluate(y.truncate(N), N)
    if res.is_zero:
        return res.prec, False
    return res.val, True


def is_nonsingular(f: BivarPoly) -> bool:
    """f(0,0) = 0 and (d f / dX)(0,0) != 0."""
    return f.coefficient(0, 0) == 0 and f.coefficient(0, 1) != 0


def frobenius_poly(f: BivarPoly) -> BivarPoly:
    """Apply the 2-Frobenius to every coefficient."""
    return BivarPoly(f.ctx, {k: f.ctx.frobenius(c) for k, c in f.coeffs.items()})


def root_series(f: BivarPoly, N: int) -> LaurentSeries:
    """The unique root y = t*(...) in t*GF(q)[[t]] of a nonsingular f.

    Newton iteration x <- x + f(x)/f_X(x) from x = t; f_X(x) is a unit series
    because f is nonsingular.  The result is certified by back-substitution.
    """
    if not is_nonsingular(f):
        raise ValueError("root_series requires a nonsingular polynomial")
    ctx = f.ctx
    fx = f.partial_x()
    x = LaurentSeries.t_power(ctx, 1, 2)
    correct = 2
    while correct < N:
        correct = min(2 * correct, N)
        xz = x.pad_to(correct)
        g = f.evaluate(xz, correct)
        if g.is_zero:
            x = xz
            continue
        dg = fx.evaluate(xz, correct)
        x = xz.add(g.mul(dg.invert_mul()).truncate(correct))
    x = x.pad_to(N)
    assert f.evaluate(x, N).is_zero, "algebraic root failed back-substitution"
    return x
