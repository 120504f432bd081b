"""Group closure of Nottingham elements and ramification-break computation.

Elements are compared by coefficient equality on the full shared prefix, so a
"group of order 8" really means: closed under composition at the working
precision (required to be at least 64).  Orders and breaks are therefore
certified "at precision N"; the defining filtration is G_d = {phi : D(phi) >=
d} with D(phi) = v_t(phi(t) - t) - 1.

By convention the product sigma*tau of Galois elements corresponds to the
series composition theta(tau) o theta(sigma); the closure itself is
convention-independent, but element words and the multiplication table use
this anti-isomorphic order (build with convention="series" to get the
opposite table).
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .series import NottinghamElem, compose

__all__ = [
    "GroupClosure",
    "RamificationProfile",
    "IsoType",
    "ClosureError",
    "close_group",
    "iso_type",
    "lower_breaks",
    "lower_to_upper",
]


class ClosureError(RuntimeError):
    """The closure exceeded max_size (group infinite or too large at this precision)."""


class IsoType(enum.Enum):
    TRIVIAL = "Trivial"
    C2 = "C2"
    C4 = "C4"
    C2xC2 = "C2xC2"
    C8 = "C8"
    C4xC2 = "C4xC2"
    C2xC2xC2 = "C2xC2xC2"
    Q8 = "Q8"
    D4 = "D4"
    OTHER = "Other"


@dataclass
class GroupClosure:
    elements: list[NottinghamElem]
    names: list[str]
    words: list[tuple[int, ...]]  # generator indices, in product (Galois) order
    table: list[list[int]]  # table[i][j] = index of element_i * element_j
    gen_names: list[str]
    precision: int

    def __len__(self):
        return len(self.elements)

    def index_of(self, srs: NottinghamElem) -> int | None:
        for k, e in enumerate(self.elements):
            if e.eq_prec(srs, min(self.precision, srs.prec)):
                return k
        return None

    def order_of(self, i: int) -> int:
        k, x = 1, i
        while x != 0:
            x = self.table[x][i]
            k += 1
        return k

    def order_profile(self) -> dict[int, int]:
        return dict(sorted(Counter(self.order_of(i) for i in range(len(self))).items()))

    def is_abelian(self) -> bool:
        n = len(self)
        return all(self.table[i][j] == self.table[j][i] for i in range(n) for j in range(i))


def _product(a: NottinghamElem, b: NottinghamElem, convention: str) -> NottinghamElem:
    # "galois": a*b acts as "b first", series theta(b) o theta(a)
    if convention == "galois":
        return NottinghamElem.from_series(compose(b, a))
    return NottinghamElem.from_series(compose(a, b))


def close_group(
    gens,
    max_size: int = 64,
    N: int | None = None,
    gen_names: list[str] | None = None,
    convention: str = "galois",
) -> GroupClosure:
    """Breadth-first closure of the generators under composition.

    gens: list of NottinghamElem (or (name, elem) pairs).  Equality is tested
    on the full shared prefix; N (default: the generators' precision) must be
    at least 64 to keep accidental collisions implausible.
    """
    if convention not in ("galois", "series"):
        raise ValueError("convention must be 'galois' or 'series'")
    pairs = [g if isinstance(g, tuple) else (f"g{k}", g) for k, g in enumerate(gens)]
    if gen_names is not None:
        pairs = [(n, g) for n, (_, g) in zip(gen_names, pairs)]
    if not pairs:
        raise ValueError("need at least one generator")
    if N is None:
        N = min(g.prec for _, g in pairs)
    if N < 64:
        raise ValueError("equality precision floor is 64")

    ctx = pairs[0][1].ctx
    ident = NottinghamElem.identity(ctx, N)
    elements = [ident]
    names = ["id"]
    words: list[tuple[int, ...]] = [()]
    gen_edge: list[list[int | None]] = [[None] * len(pairs)]

    def find(srs) -> int | None:
        for k, e in enumerate(elements):
            if e.eq_prec(srs, N):
                return k
        return None

    frontier = [0]
    while frontier:
        nxt = []
        for i in frontier:
            for j, (_, g) in enumerate(pairs):
                prod = _product(elements[i], g, convention).truncate(N)
                k = find(prod)
                if k is None:
                    if len(elements) >= max_size:
                        raise ClosureError(
                            f"closure exceeded max_size={max_size} at precision {N}"
                        )
                    elements.append(NottinghamElem.from_series(prod))
                    words.append(words[i] + (j,))
                    names.append("*".join(pairs[w][0] for w in words[-1]))
                    gen_edge.append([None] * len(pairs))
                    k = len(elements) - 1
                    nxt.append(k)
                gen_edge[i][j] = k
        frontier = nxt

    # inverse-closedness comes for free in a finite closure, but check anyway
    n = len(elements)
    # multiplication table by walking generator words through the Cayley edges
    table = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            k = i
            for w in words[j]:
                k = gen_edge[k][w]
            table[i][j] = k
    for i in range(n):
        if sorted(table[i]) != list(range(n)) or sorted(r[i] for r in table) != list(range(n)):
            raise ClosureError("composition table is not a Latin square; raise precision")
    return GroupClosure(
        elements=elements,
        names=names,
        words=words,
        table=table,
        gen_names=[nm for nm, _ in pairs],
        precision=N,
    )


def iso_type(g: GroupClosure) -> IsoType:
    """Classification for |G| <= 8 via order profile and commutativity."""
    n = len(g)
    if n > 8:
        raise ValueError(f"iso_type supports |G| <= 8, got {n}")
    profile = g.order_profile()
    if n == 1:
        return IsoType.TRIVIAL
    if n == 2:
        return IsoType.C2
    if n == 4:
        return IsoType.C4 if profile.get(4) else IsoType.C2xC2
    if n == 8:
        involutions = profile.get(2, 0)
        if not g.is_abelian():
            if involutions == 1:
                return IsoType.Q8
            if involutions == 5:
                return IsoType.D4
            return IsoType.OTHER
        if profile.get(8):
            return IsoType.C8
        if profile.get(4):
            return IsoType.C4xC2
        return IsoType.C2xC2xC2
    return IsoType.OTHER


@dataclass
class RamificationProfile:
    lower: list[int]  # with multiplicity, ascending
    upper: list[Fraction]
    depth_of: dict[str, int | None]  # None: identity to working precision

    def to_json(self) -> dict:
        return {
            "lower_breaks": self.lower,
            "upper_breaks": [f"{u.numerator}/{u.denominator}" if u.denominator != 1 else str(u.numerator) for u in self.upper],
            "depths": {
                k: (v if v is not None else {"at_least": "precision"}) for k, v in self.depth_of.items()
            },
        }


class PrecisionExhausted(RuntimeError):
    """A non-identity element is indistinguishable from t at this precision."""


def lower_breaks(g: GroupClosure, p: int = 2) -> RamificationProfile:
    """Breaks of the filtration G_d = {phi : D(phi) >= d}.

    b is a break with multiplicity m when |G_b : G_{b+1}| = p^m.  The group
    identity is recognized from the multiplication table (the row that fixes
    every element), so a *non-identity* element indistinguishable from t at
    the working precision is reported as an error instead of being silently
    dropped.
    """
    n = len(g.elements)
    identity_idx = {i for i in range(n) if g.table[i] == list(range(n))}
    depth_of: dict[str, int | None] = {}
    depths = []
    for i, (name, e) in enumerate(zip(g.names, g.elements)):
        d = e.depth()
        depth_of[name] = d
        if i in identity_idx:
            continue
        if d is None:
            raise PrecisionExhausted(
                f"element {name} has depth >= precision-1; raise the working precision"
            )
        depths.append(d)

    breaks = []
    if depths:
        import math

        dmax = max(depths)
        size = lambda d: sum(1 for x in depths if x >= d) + 1
        for b in range(0, dmax + 1):
            ratio = size(b) // size(b + 1)
            if size(b) % size(b + 1):
                raise AssertionError("filtration sizes are not nested p-powers")
            if ratio > 1:
                m = round(math.log(ratio, p))
                if p**m != ratio:
                    raise AssertionError("filtration index is not a power of p")
                breaks.extend([b] * m)
    return RamificationProfile(lower=breaks, upper=lower_to_upper(breaks, p), depth_of=depth_of)


def lower_to_upper(breaks: list[int], p: int = 2) -> list[Fraction]:
    """u_1 = b_1 and u_{i+1} - u_i = p^-i (b_{i+1} - b_i), exact rationals."""
    bs = sorted(breaks)
    out: list[Fraction] = []
    for i, b in enumerate(bs):
        if i == 0:
            out.append(Fraction(b))
        else:
            out.append(out[-1] + Fraction(b - bs[i - 1], p**i))
    return out
