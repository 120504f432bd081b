"""The five minimally ramified towers over K = F4((pi_K)) as series data.

Each tower realizes a chain K < M0 < L of local fields inside F4((t)), where
t is a uniformizer of L:

* M0 = K(Y) with 1/pi_K = Y^4 + Y, and Z := 1/Y is a uniformizer of M0;
* L = M0(alpha3) is cut out by an Artin-Schreier equation
  alpha3^2 - alpha3 = rhs(Y), and t is chosen so that alpha3 = Y/t for the
  quaternion towers and alpha3 = zeta*Y^2/t for the dihedral ones.

Substituting that expression for alpha3 into its Artin-Schreier relation and
clearing denominators turns the relation into a contractive fixed-point
equation for Z as a series in t, which pins down every other quantity: Y =
1/Z, alpha3 as above, pi_K = Z^4/(1+Z^3), and each Galois element's series
sigma(t) = sigma(Y)/sigma(alpha3) (resp. zeta*sigma(Y)^2/sigma(alpha3)) as a
ratio of Laurent series.  The hard-coded equations are re-verified at build
time by substituting the constructed series back into the Artin-Schreier
relation.

Galois products follow the uniformizer anti-isomorphism: the series of a
product sigma*tau (meaning "apply tau, then sigma") is theta(tau) o
theta(sigma), so composing series in the *reverse* of the product order.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .gf2m import GF4, FieldCtx
from .series import (
    DEFAULT_PRECISION,
    LaurentSeries,
    NottinghamElem,
    compose,
    solve_contractive,
)

__all__ = ["TowerSpec", "Tower", "build_tower", "TOWER_PARAMS", "galois_product"]

_PAD = 64  # internal working precision margin

TOWER_PARAMS = {"q8": ("0", "s"), "d4": ("1", "s", "s2")}

# per-family construction data; field elements are GF(4) codes 0,1,2,3 = 0,1,s,s2
_Q8_DATA = {
    # delta: (Z-equation, Artin-Schreier rhs in Y, generator table)
    # generator table: name -> (Y-shift c, (u_Y2, u_Y, u_1)) with
    # sigma(Y) = Y + c and sigma(alpha3) = alpha3 + u_Y2*Y^2 + u_Y*Y + u_1
    "0": (
        {(2, 0): 1, (1, 2): 1},  # Z = t^2 + t Z^2
        {3: 1},  # alpha3^2 - alpha3 = Y^3
        {"s1": (2, (0, 3, 3)), "s2": (3, (0, 2, 2)), "s0": (1, (0, 1, 2))},
    ),
    "s": (
        {(1, 2): 1, (2, 0): 1, (2, 1): 2, (2, 2): 3, (2, 3): 2},
        # Z = t Z^2 + t^2 (1 + s Z + s2 Z^2 + s Z^3)
        {3: 1, 2: 2, 1: 3, 0: 2},  # Y^3 + s Y^2 + s2 Y + s
        {"s1": (2, (0, 3, 2)), "s2": (3, (0, 2, 0)), "s0": (1, (0, 1, 1))},
    ),
}

_D4_DATA = {
    # zeta: Z = zeta^2 t Z^3 + t^2 (1 + zeta^2 Z + zeta Z^2);
    # rhs = zeta^2 Y^5 + zeta Y^4 + Y^3
    "1": (
        {(1, 3): 1, (2, 0): 1, (2, 1): 1, (2, 2): 1},
        {5: 1, 4: 1, 3: 1},
        {"t1": (2, (3, 1, 0)), "t2": (3, (2, 1, 0)), "t0": (1, (1, 0, 3))},
        "t0",  # the generator lifting to order 4
    ),
    "s": (
        {(1, 3): 3, (2, 0): 1, (2, 1): 3, (2, 2): 2},
        {5: 3, 4: 2, 3: 1},
        {"t1": (2, (1, 2, 0)), "t2": (3, (3, 0, 3)), "t0": (1, (2, 2, 0))},
        "t2",
    ),
    "s2": (
        {(1, 3): 2, (2, 0): 1, (2, 1): 2, (2, 2): 3},
        {5: 2, 4: 3, 3: 1},
        {"t1": (2, (2, 0, 2)), "t2": (3, (1, 3, 0)), "t0": (1, (3, 3, 0))},
        "t1",
    ),
}

Q8_ELEMENT_NAMES = ("id", "s1", "s1^2", "s1^3", "s2", "s2^3", "s0", "s0^3")
D4_ELEMENT_NAMES = ("id", "t1", "t2", "t0", "z", "t1*z", "t2*z", "t0*z")

_Q8_ALIASES = {"s2^2": "s1^2", "s0^2": "s1^2", "z": "s1^2"}


@dataclass(frozen=True)
class TowerSpec:
    family: str  # "q8" or "d4"
    param: str  # delta in {0, s} or zeta in {1, s, s2}
    N: int = DEFAULT_PRECISION

    def __post_init__(self):
        if self.family not in TOWER_PARAMS:
            raise ValueError(f"unknown family {self.family!r}; expected q8 or d4")
        if self.param not in TOWER_PARAMS[self.family]:
            raise ValueError(
                f"parameter {self.param!r} not valid for {self.family}; "
                f"choose from {TOWER_PARAMS[self.family]}"
            )
        if self.N < 64:
            raise ValueError("tower precision must be at least 64")

    @property
    def key(self) -> str:
        return f"{self.family}:{self.param}"


@dataclass
class Tower:
    spec: TowerSpec
    Z: LaurentSeries
    Y: LaurentSeries
    alpha3: LaurentSeries
    piK: LaurentSeries
    galois: dict[str, NottinghamElem]
    generators: tuple[str, str] = ("", "")
    rotation: str = ""  # D4 only: which generator lifts to order 4
    build_seconds: float = field(default=0.0, repr=False)

    def element(self, name: str) -> NottinghamElem:
        key = name.strip()
        if self.spec.family == "q8":
            key = _Q8_ALIASES.get(key, key)
        else:
            key = _d4_alias(key, self.rotation)
        if key not in self.galois:
            raise KeyError(f"unknown element {name!r}; have {sorted(self.galois)}")
        return self.galois[key]

    def element_names(self) -> tuple[str, ...]:
        return Q8_ELEMENT_NAMES if self.spec.family == "q8" else D4_ELEMENT_NAMES


def _d4_alias(name: str, rotation: str) -> str:
    # the square/cube of the order-4 generator are z and rotation*z
    if rotation and name == f"{rotation}^2":
        return "z"
    if rotation and name == f"{rotation}^3":
        return f"{rotation}*z"
    return name


def galois_product(a: NottinghamElem, b: NottinghamElem, N: int | None = None) -> NottinghamElem:
    """Series of the Galois product a*b ("apply b, then a"): theta(b) o theta(a)."""
    return NottinghamElem.from_series(compose(b, a, N))


def _const(ctx: FieldCtx, c: int, prec: int) -> LaurentSeries:
    return LaurentSeries.from_terms(ctx, {0: c}, prec)


def _eval_ypoly(terms: dict[int, int], Y: LaurentSeries) -> LaurentSeries:
    """sum c_e Y^e for a polynomial in Y with GF(4) coefficients."""
    acc = LaurentSeries.zero(Y.ctx, Y.prec)
    for e in sorted(terms, reverse=True):
        acc = acc.add(Y.pow(e).scalar_mul(terms[e]))
    return acc


def build_tower(spec: TowerSpec) -> Tower:
    """Construct Z, Y, alpha3, pi_K and all eight Galois series for a tower."""
    t0 = time.perf_counter()
    ctx = GF4
    n_int = spec.N + _PAD
    if spec.family == "q8":
        zeq, rhs, gens = _Q8_DATA[spec.param]
        rotation = ""
    else:
        zeq, rhs, gens, rotation = _D4_DATA[spec.param]

    Z = solve_contractive(ctx, zeq, n_int)
    if Z.val != 2:
        raise AssertionError(f"Z must have valuation 2, got {Z.val}")
    Y = Z.invert_mul()
    zeta = 1 if spec.family == "q8" else ctx.from_token(spec.param)
    if spec.family == "q8":
        alpha3 = Y.shift(-1)  # Y / t
    else:
        alpha3 = Y.square().scalar_mul(zeta).shift(-1)  # zeta Y^2 / t

    # Artin-Schreier residual: alpha3^2 + alpha3 + rhs(Y) must vanish
    residual = alpha3.square().add(alpha3).add(_eval_ypoly(rhs, Y))
    if not residual.is_zero:
        raise AssertionError(f"Artin-Schreier relation fails at t^{residual.val}")

    z3 = Z.square().mul(Z)
    piK = Z.square().square().div(_const(ctx, 1, z3.prec).add(z3))
    # Lemma: 1/pi_K = Y^4 + Y
    lemma = piK.invert_mul().add(Y.square().square()).add(Y)
    if not lemma.is_zero:
        raise AssertionError("pi_K normalization check failed")

    def generator(name: str) -> NottinghamElem:
        c, (u2, u1, u0) = gens[name]
        shifted = Y.add(_const(ctx, c, Y.prec))
        if spec.family == "q8":
            num = shifted
        else:
            num = shifted.square().scalar_mul(zeta)
        den = alpha3
        if u2:
            den = den.add(Y.square().scalar_mul(u2))
        if u1:
            den = den.add(Y.scalar_mul(u1))
        if u0:
            den = den.add(_const(ctx, u0, Y.prec))
        return NottinghamElem.from_series(num.div(den).truncate(spec.N))

    if spec.family == "q8":
        s1, s2, s0 = generator("s1"), generator("s2"), generator("s0")
        # sigma0 = sigma1*sigma2, so its series is theta(s2) o theta(s1)
        if not galois_product(s1, s2).eq_prec(s0):
            raise AssertionError("sigma0 formula disagrees with sigma1*sigma2")
        z = galois_product(s1, s1)
        galois = {
            "id": NottinghamElem.identity(ctx, spec.N),
            "s1": s1,
            "s1^2": z,
            "s1^3": galois_product(z, s1),
            "s2": s2,
            "s2^3": galois_product(galois_product(s2, s2), s2),
            "s0": s0,
            "s0^3": galois_product(galois_product(s0, s0), s0),
        }
    else:
        t1, t2, t0_ = generator("t1"), generator("t2"), generator("t0")
        rot = {"t1": t1, "t2": t2, "t0": t0_}[rotation]
        z = galois_product(rot, rot)
        if z.depth() is None:
            raise AssertionError(f"{rotation} should lift to order 4")
        galois = {
            "id": NottinghamElem.identity(ctx, spec.N),
            "t1": t1,
            "t2": t2,
            "t0": t0_,
            "z": z,
            "t1*z": galois_product(t1, z),
            "t2*z": galois_product(t2, z),
            "t0*z": galois_product(t0_, z),
        }

    for name, g in galois.items():
        if g.val != 1 or g.leading() != 1:
            raise AssertionError(f"element {name} is not a Nottingham series")

    tower = Tower(
        spec=spec,
        Z=Z,
        Y=Y,
        alpha3=alpha3,
        piK=piK,
        galois=galois,
        generators=("s1", "s2") if spec.family == "q8" else ("t1", "t2"),
        rotation=rotation,
        build_seconds=time.perf_counter() - t0,
    )
    return tower


def central_series(family: str, param: str, N: int) -> NottinghamElem:
    """Series of the central involution only, skipping the rest of the tower.

    The center fixes M0 and sends alpha3 to alpha3 + 1, so its series is
    Y/(alpha3+1) (quaternion) or zeta*Y^2/(alpha3+1) (dihedral).  Useful at
    the large precisions the singular-case oracle needs, where building all
    eight elements would dominate the cost.
    """
    spec = TowerSpec(family, param, N)
    ctx = GF4
    n_int = N + _PAD
    if family == "q8":
        zeq, rhs, _ = _Q8_DATA[param]
    else:
        zeq, rhs, _, _ = _D4_DATA[param]
    Z = solve_contractive(ctx, zeq, n_int)
    Y = Z.invert_mul()
    if family == "q8":
        alpha3 = Y.shift(-1)
    else:
        alpha3 = Y.square().scalar_mul(ctx.from_token(param)).shift(-1)
    num = Y if family == "q8" else Y.square().scalar_mul(ctx.from_token(param))
    den = alpha3.add(_const(ctx, 1, alpha3.prec))
    return NottinghamElem.from_series(num.div(den).truncate(spec.N))


def tower_bundle_json(tower: Tower, terms: int | None = None) -> dict:
    """JSON bundle of the named series (CLI wire format)."""

    def dump(srs: LaurentSeries) -> dict:
        if terms is not None:
            srs = srs.truncate(min(srs.prec, srs.val + terms))
        return srs.to_json()

    return {
        "family": tower.spec.family,
        "param": tower.spec.param,
        "N": tower.spec.N,
        "generators": list(tower.generators),
        "rotation": tower.rotation or None,
        "Z": dump(tower.Z),
        "Y": dump(tower.Y),
        "alpha3": dump(tower.alpha3),
        "piK": dump(tower.piK),
        "galois": {name: dump(srs) for name, srs in tower.galois.items()},
    }
