"""Constructive Christol direction: from annihilating polynomial to DFAO.

For a nonsingular f(t, X) (f(0,0) = 0, f_X(0,0) != 0) the unique root y in
t*GF(q)[[t]] is the diagonal of the rational function P/Q with

    P(x, y) = y * f_X(x y, y),      Q(x, y) = f(x y, y) / y,

and Q(0,0) = f_X(0,0) != 0.  That formula is never trusted blindly: callers
go through a mandatory gate comparing the brute-force bivariate expansion of
Diag(P/Q) with an independently Newton-computed series root of f.

Coefficients of the diagonal satisfy a_{qn+r} = [x^n y^n] Cartier_r(U Q^(q-1)) / Q
where Cartier_r picks exponents congruent to (r, r) mod q and takes q-th
roots of coefficients (the identity on GF(q)).  Iterating this gives a finite
automaton whose states are numerator polynomials inside a fixed degree box;
state deduplication is by exact polynomial equality, exploration is BFS with
digits ascending, so raw state counts are reproducible.

For roots of singular polynomials the fallback builds the q-kernel closure
from a coefficient oracle, identifying subsequences by their available probe
prefixes and certifying the candidate against the oracle on every index below
the oracle's precision; a certification failure retries with longer probes
and is an error only once the probes exhaust the data.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .gf2m import FieldCtx, GF4
from .minpoly import BivarPoly, is_nonsingular, root_series
from .series import LaurentSeries, _gf2_convolve
from .dfao import Dfao

__all__ = [
    "DiagonalRep",
    "SynthesisReport",
    "CertificationError",
    "furstenberg",
    "cartier",
    "diagonal_automaton",
    "poly_to_automaton",
    "oracle_kernel_automaton",
    "brute_diagonal",
]


class CertificationError(RuntimeError):
    """A synthesized automaton failed its exact verification."""


# ---------------------------------------------------------------------------
# dense bivariate helpers (axis 0: x-exponent, axis 1: y-exponent)
# ---------------------------------------------------------------------------


def _mul2d(ctx: FieldCtx, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact product of dense bivariate polynomials over GF(2^m).

    Rows are packed side by side with enough column padding that the 1-D
    carryless product cannot wrap between rows.
    """
    xa, ya = a.shape
    xb, yb = b.shape
    stride = ya + yb - 1

    def flatten(m, rows, cols):
        buf = np.zeros((rows, stride), dtype=np.uint8)
        buf[:, :cols] = m
        return buf.reshape(-1)[: (rows - 1) * stride + cols]

    fa, fb = flatten(a, xa, ya), flatten(b, xb, yb)
    if ctx.m == 1:
        flat = _gf2_convolve(fa, fb)
    elif ctx.m == 2:
        a0, a1 = fa & 1, fa >> 1
        b0, b1 = fb & 1, fb >> 1
        p1 = _gf2_convolve(a0, b0)
        p2 = _gf2_convolve(a1, b1)
        p3 = _gf2_convolve(a0 ^ a1, b0 ^ b1)
        flat = (p1 ^ p2) | ((p3 ^ p1) << 1)
    else:  # pragma: no cover - generic fallback
        out = np.zeros((xa + xb - 1, ya + yb - 1), dtype=np.uint8)
        for i, j in zip(*np.nonzero(a)):
            out[i : i + xb, j : j + yb] ^= ctx.MUL[a[i, j], b]
        return out
    rows = xa + xb - 1
    full = np.zeros(rows * stride, dtype=np.uint8)
    full[: len(flat)] = flat
    return full.reshape(rows, stride)[:, : ya + yb - 1].copy()


def _trim2d(m: np.ndarray) -> np.ndarray:
    nz = np.nonzero(m)
    if len(nz[0]) == 0:
        return m[:1, :1] * 0
    return m[: nz[0].max() + 1, : nz[1].max() + 1]


def _bivar_to_dense(ctx, coeffs: dict[tuple[int, int], int]) -> np.ndarray:
    if not coeffs:
        return np.zeros((1, 1), dtype=np.uint8)
    mx = max(i for i, _ in coeffs)
    my = max(j for _, j in coeffs)
    out = np.zeros((mx + 1, my + 1), dtype=np.uint8)
    for (i, j), c in coeffs.items():
        out[i, j] = c
    return out


def _dense_to_bivar(ctx, m: np.ndarray) -> BivarPoly:
    return BivarPoly(ctx, {(int(i), int(j)): int(m[i, j]) for i, j in zip(*np.nonzero(m))})


# ---------------------------------------------------------------------------
# Furstenberg diagonal representation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DiagonalRep:
    """Target series = Diag(P/Q): the x^n y^n coefficients of P/Q."""

    ctx: FieldCtx
    P: np.ndarray
    Q: np.ndarray

    def __post_init__(self):
        if self.Q[0, 0] == 0:
            raise ValueError("Q(0,0) must be a unit for the expansion to exist")


def furstenberg(f: BivarPoly) -> DiagonalRep:
    """Diagonal representation of the unique valuation-positive root of f.

    P = y * f_X(x y, y) and Q = f(x y, y) / y; the division is exact because
    every monomial of f has positive total degree (f(0,0) = 0).
    """
    if not is_nonsingular(f):
        raise ValueError("furstenberg requires a nonsingular polynomial")
    ctx = f.ctx
    p_terms: dict[tuple[int, int], int] = {}
    q_terms: dict[tuple[int, int], int] = {}
    for (i, j), c in f.coeffs.items():
        # t^i X^j  |->  x^i y^(i+j)
        if j % 2 == 1:  # d/dX keeps odd j; times y restores total y-degree i+j
            key = (i, i + j)
            p_terms[key] = p_terms.get(key, 0) ^ c
        key = (i, i + j - 1)
        q_terms[key] = q_terms.get(key, 0) ^ c
    return DiagonalRep(ctx, _bivar_to_dense(ctx, p_terms), _bivar_to_dense(ctx, q_terms))


def brute_diagonal(rep: DiagonalRep, n_terms: int) -> np.ndarray:
    """Diag(P/Q) by brute-force bivariate expansion (independent oracle).

    Inverts Q in GF(q)[[x, y]] on the (n_terms, n_terms) coefficient box with
    the char-2 Newton step I <- Q I^2 (the error's total degree doubles each
    step) and reads the diagonal of P * Q^(-1).
    """
    ctx = rep.ctx
    T = n_terms
    q_c = rep.Q[:T, :T]
    inv = np.zeros((1, 1), dtype=np.uint8)
    inv[0, 0] = ctx.inv(int(rep.Q[0, 0]))
    for _ in range((2 * T).bit_length() + 1):
        sq = np.zeros((2 * inv.shape[0] - 1, 2 * inv.shape[1] - 1), dtype=np.uint8)
        sq[::2, ::2] = ctx.FROB[inv]
        inv = _mul2d(ctx, q_c, sq)[:T, :T]
    check = _mul2d(ctx, q_c, inv)[:T, :T].copy()
    assert check[0, 0] == 1, "2-D inversion failed"
    check[0, 0] = 0
    assert not check.any(), "2-D inversion failed"
    series = _mul2d(ctx, rep.P[:T, :T], inv)
    diag = np.zeros(T, dtype=np.uint8)
    m = min(series.shape[0], series.shape[1], T)
    diag[:m] = np.diagonal(series)[:m]
    return diag


def cartier(U: BivarPoly, r: int, Q: BivarPoly, q: int | None = None) -> BivarPoly:
    """Lambda_{r,r}(U * Q^(q-1)): the digit-r transition on numerators."""
    ctx = U.ctx
    if q is None:
        q = ctx.q
    if not 0 <= r < q:
        raise ValueError(f"digit {r} out of range for base {q}")
    ud = _bivar_to_dense(ctx, U.coeffs)
    qd = _bivar_to_dense(ctx, Q.coeffs)
    qp = qd
    for _ in range(q - 2):
        qp = _mul2d(ctx, qp, qd)
    w = _mul2d(ctx, ud, qp)
    sel = w[r::q, r::q]
    vec = np.vectorize(ctx.qth_root, otypes=[np.uint8])
    sel = vec(sel) if sel.size else sel
    return _dense_to_bivar(ctx, sel)


@dataclass
class SynthesisReport:
    automaton: Dfao
    raw_state_count: int
    minimized_state_count: int
    verified_prefix: int
    method: str  # "diagonal" or "oracle_kernel"
    seconds: float = 0.0

    def to_json(self, include_automaton: bool = True) -> dict:
        out = {
            "method": self.method,
            "raw_state_count": self.raw_state_count,
            "minimized_state_count": self.minimized_state_count,
            "verified_prefix": self.verified_prefix,
            "seconds": round(self.seconds, 3),
        }
        if include_automaton:
            out["automaton"] = self.automaton.to_json()
        return out


def diagonal_automaton(rep: DiagonalRep) -> tuple[Dfao, int]:
    """Kernel closure of the diagonal representation; returns (dfao, raw_count).

    States are numerator polynomials U with the fixed denominator Q; the
    transition on digit r is U |-> Lambda_{r,r}(U Q^(q-1)).  Degrees stay in
    the box Dx = max(deg_x P, deg_x Q), Dy = max(deg_y P, deg_y Q), which is
    checked before exploring.  Output label of U is U(0,0)/Q(0,0).
    """
    ctx = rep.ctx
    q = ctx.q
    P, Q = _trim2d(rep.P), _trim2d(rep.Q)
    dx = max(P.shape[0], Q.shape[0]) - 1
    dy = max(P.shape[1], Q.shape[1]) - 1
    if (dx + (q - 1) * (Q.shape[0] - 1)) // q > dx or (dy + (q - 1) * (Q.shape[1] - 1)) // q > dy:
        raise ValueError("degree box is not stable under the Cartier transition")
    qp = Q
    for _ in range(q - 2):
        qp = _mul2d(ctx, qp, Q)
    inv_q00 = ctx.inv(int(Q[0, 0]))

    def boxed(m: np.ndarray) -> np.ndarray:
        if m.shape[0] > dx + 1 or m.shape[1] > dy + 1:
            if np.any(m[dx + 1 :, :]) or np.any(m[:, dy + 1 :]):
                raise AssertionError("state escaped the degree box")
            m = m[: dx + 1, : dy + 1]
        out = np.zeros((dx + 1, dy + 1), dtype=np.uint8)
        out[: m.shape[0], : m.shape[1]] = m
        return out

    start = boxed(P)
    states = [start]
    index = {start.tobytes(): 0}
    next_table: list[list[int]] = []
    head = 0
    while head < len(states):
        u = states[head]
        w = _mul2d(ctx, u, qp)
        row = []
        for r in range(q):
            child = boxed(w[r::q, r::q])
            key = child.tobytes()
            k = index.get(key)
            if k is None:
                k = len(states)
                index[key] = k
                states.append(child)
            row.append(k)
        next_table.append(row)
        head += 1

    out = np.array([ctx.mul(int(u[0, 0]), inv_q00) for u in states], dtype=np.uint8)
    dfao = Dfao(ctx, np.array(next_table, dtype=np.int32), out, 0)
    return dfao, len(states)


def poly_to_automaton(f: BivarPoly, N_verify: int = 4096) -> SynthesisReport:
    """furstenberg -> diagonal_automaton -> minimize -> exact verification.

    The Furstenberg formula is gated by a 64-term brute-force diagonal
    expansion against the Newton root before any automaton is trusted, and
    the minimized automaton must reproduce the root to N_verify terms.
    """
    t0 = time.perf_counter()
    rep = furstenberg(f)
    root64 = root_series(f, 64)
    gate = brute_diagonal(rep, 64)
    if not np.array_equal(gate, root64.coeff_window(0, 64)):
        raise CertificationError("Furstenberg validation gate failed (formula misuse)")
    raw, raw_count = diagonal_automaton(rep)
    mini = raw.minimize()
    root = root_series(f, N_verify)
    got = mini.series_of(N_verify)
    if not got.eq_prec(root.truncate(N_verify), N_verify):
        raise CertificationError(
            f"synthesized automaton disagrees with the series root at t^{got.agree_prec(root)}"
        )
    return SynthesisReport(
        automaton=mini,
        raw_state_count=raw_count,
        minimized_state_count=mini.n_states,
        verified_prefix=N_verify,
        method="diagonal",
        seconds=time.perf_counter() - t0,
    )


# ---------------------------------------------------------------------------
# oracle-driven kernel closure (singular fallback)
# ---------------------------------------------------------------------------


class _KernelRegistry:
    """Kernel subsequences identified by their available probe prefixes.

    A state's probe is a[c::q^e] capped at probe_len values; two states are
    identified when their probes agree on the overlap.  Lookup is exact and
    deterministic: the oldest agreeing state wins.
    """

    _BUCKET = 8

    def __init__(self, probe_len: int):
        self.probe_len = probe_len
        self.probes: list[np.ndarray] = []
        self.coords: list[tuple[int, int]] = []
        self.buckets: dict[bytes, list[int]] = {}
        self.short: list[int] = []  # states with fewer than _BUCKET probe values

    def lookup_or_add(self, probe: np.ndarray, coord: tuple[int, int]) -> tuple[int, bool]:
        if len(probe) >= self._BUCKET:
            candidates = self.buckets.get(probe[: self._BUCKET].tobytes(), []) + self.short
        else:
            candidates = range(len(self.probes))
        for k in sorted(candidates):
            other = self.probes[k]
            ov = min(len(other), len(probe))
            if np.array_equal(other[:ov], probe[:ov]):
                return k, False
        k = len(self.probes)
        self.probes.append(probe)
        self.coords.append(coord)
        if len(probe) >= self._BUCKET:
            self.buckets.setdefault(probe[: self._BUCKET].tobytes(), []).append(k)
        else:
            self.short.append(k)
        return k, True


def oracle_kernel_automaton(
    oracle: LaurentSeries | np.ndarray,
    max_states: int = 65536,
    probe_len: int = 4096,
    ctx: FieldCtx = GF4,
) -> SynthesisReport:
    """q-kernel closure of an oracle sequence, certified to the oracle length.

    The oracle provides coefficients a_0..a_{N-1}.  Kernel subsequences
    n |-> a_{q^e n + c} are the states; two states are identified when their
    first probe_len available values agree.  The candidate automaton is
    certified by exact comparison against the oracle on all indices < N; a
    mismatch doubles probe_len and rebuilds, and raises CertificationError
    once probes cannot grow (then only a longer oracle can help).
    """
    t0 = time.perf_counter()
    if isinstance(oracle, LaurentSeries):
        a = oracle.coeff_window(0, oracle.prec)
    else:
        a = np.ascontiguousarray(np.asarray(oracle, dtype=np.uint8))
    N = len(a)
    if N < 4:
        raise ValueError("oracle too short")
    q = ctx.q

    while True:
        reg = _KernelRegistry(probe_len)
        root_probe = a[:probe_len]
        reg.lookup_or_add(root_probe, (0, 0))
        next_rows: list[list[int]] = [[-1] * q]
        head = 0
        while head < len(reg.probes):
            e, c = reg.coords[head]
            step = q ** (e + 1)
            for r in range(q):
                cc = c + r * (q**e)
                probe = a[cc::step][:probe_len] if cc < N else a[:0]
                if cc >= N:
                    # no data at all: fold into the first state deterministically
                    k = 0
                else:
                    k, new = reg.lookup_or_add(probe, (e + 1, cc))
                    if new:
                        if len(reg.probes) > max_states:
                            raise CertificationError(
                                f"kernel closure exceeded max_states={max_states}"
                            )
                        next_rows.append([-1] * q)
                next_rows[head][r] = k
            head += 1

        out = np.array([p[0] for p in reg.probes], dtype=np.uint8)
        candidate = Dfao(ctx, np.array(next_rows, dtype=np.int32), out, 0)
        mini = candidate.minimize()
        got = mini.series_of(N).coeff_window(0, N)
        if np.array_equal(got, a):
            return SynthesisReport(
                automaton=mini,
                raw_state_count=candidate.n_states,
                minimized_state_count=mini.n_states,
                verified_prefix=N,
                method="oracle_kernel",
                seconds=time.perf_counter() - t0,
            )
        if probe_len >= N:
            bad = int(np.flatnonzero(got ^ a)[0])
            raise CertificationError(
                f"kernel candidate disagrees with oracle at n={bad}; "
                "probes exhausted, increase the oracle precision"
            )
        probe_len = min(2 * probe_len, N)
