"""Conley-Zehnder indices: exact crossing counts for rotation paths and the closed-form floor formulas."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DegenerateOrbitError, NotInSigmaStarError, RegimeError
from .exact import Angle, as_rational, is_resonant
from .geometry import Family, LinkParams, link_floor_arguments, link_resonances


@dataclass(frozen=True)
class RotationBlock:
    """The 2x2 block t -> e^{i*speed*t}."""

    speed: Fraction

    def __post_init__(self):
        object.__setattr__(self, "speed", as_rational(self.speed))

    @property
    def constant(self) -> bool:
        return self.speed == 0

    def angle(self, T: Angle) -> Angle:
        return T * self.speed


@dataclass(frozen=True)
class RotationPath:
    blocks: tuple[RotationBlock, ...]
    duration: Angle

    def __init__(self, blocks, duration):
        blocks = tuple(b if isinstance(b, RotationBlock) else RotationBlock(b) for b in blocks)
        if not isinstance(duration, Angle):
            duration = Angle(duration)
        if duration.coeff <= 0:
            raise ValueError("duration must be positive")
        object.__setattr__(self, "blocks", blocks)
        object.__setattr__(self, "duration", duration)

    @property
    def dimension(self) -> int:
        return 2 * len(self.blocks)

    @property
    def endpoint_angles(self) -> tuple[Angle, ...]:
        return tuple(b.angle(self.duration) for b in self.blocks)

    @property
    def in_sigma_star(self) -> bool:
        """Endpoint has no eigenvalue 1. A constant block always has one."""
        return not any(b.constant or is_resonant(a) for b, a in zip(self.blocks, self.endpoint_angles))

    def __add__(self, other: "RotationPath") -> "RotationPath":
        if self.duration != other.duration:
            raise ValueError("direct sum needs a common duration")
        return RotationPath(self.blocks + other.blocks, self.duration)


def _crossings(coeff: Fraction) -> tuple[int, bool]:
    """Interior crossings of e^{is}, s in (0, |coeff|*pi), and whether the endpoint is one."""
    c = abs(coeff)
    interior = math.ceil(c / 2) - 1 if c > 0 else 0
    return interior, c.denominator == 1 and c.numerator % 2 == 0


def cz_rotation(block: RotationBlock, T: Angle, strict: bool = False) -> int:
    """Index of one rotation block on [0, T] by counting crossings.

    Each crossing of e^{iwt} has a 2-dimensional kernel with crossing form sign(w)*I,
    so it contributes 2*sign(w), halved at the two ends of the path. A resonant
    endpoint is allowed unless ``strict``; it then contributes its half.
    """
    if not isinstance(block, RotationBlock):
        block = RotationBlock(block)
    if not isinstance(T, Angle):
        T = Angle(T)
    if block.constant:
        raise NotInSigmaStarError("a constant block has eigenvalue 1 along the whole path")
    theta = block.angle(T)
    if strict and is_resonant(theta):
        raise NotInSigmaStarError(f"endpoint angle {theta} is a multiple of 2*pi")
    interior, at_end = _crossings(theta.coeff)
    mu = 1 + 2 * interior + (1 if at_end else 0)
    return mu if block.speed > 0 else -mu


def cz_rotation_formula(speed, T: Angle) -> int:
    """Closed form of :func:`cz_rotation`: theta/pi on 2*pi*Z, else 2*floor(theta/2pi)+1."""
    speed = as_rational(speed)
    if speed == 0:
        raise NotInSigmaStarError("zero speed")
    c = abs(speed) * T.coeff
    val = int(c) if Angle(c).is_multiple_of_2pi() else 2 * math.floor(c / 2) + 1
    return val if speed > 0 else -val


def cz_path(path: RotationPath, skip_constant: bool = False, strict: bool = False) -> int:
    """Sum of block indices. Constant blocks raise unless ``skip_constant``; they then count 0."""
    total = 0
    for b in path.blocks:
        if b.constant and skip_constant:
            continue
        total += cz_rotation(b, path.duration, strict=strict)
    return total


def prepend_loop(path: RotationPath, k: int, block: int = 0) -> RotationPath:
    """Multiply one block by a loop of Maslov index ``k`` (k extra full turns over the duration)."""
    extra = Fraction(2 * k) / path.duration.coeff
    blocks = list(path.blocks)
    blocks[block] = RotationBlock(blocks[block].speed + extra)
    return RotationPath(blocks, path.duration)


# -- the A_n link ---------------------------------------------------------------


@dataclass(frozen=True)
class LinkPaths:
    phi: RotationPath  # linearized flow on C^3
    phi_complement: RotationPath  # the e^{4it} block of the symplectic complement of xi
    along: int  # block of phi tangent to the orbit


def link_paths(params: LinkParams, family, N: int) -> LinkPaths:
    family = Family.parse(family)
    if N < 1:
        raise ValueError("iterate N must be positive")
    T = Angle(Fraction(N) / (1 + family.sign * params.eps))
    phi = RotationPath(params.reeb_speeds, T)
    return LinkPaths(phi, RotationPath([4], T), 1 if family is Family.PLUS else 2)


def _certify(params: LinkParams, family: Family, N: int) -> None:
    bad = link_resonances(params.n, params.eps, family, N)
    if bad:
        raise DegenerateOrbitError(
            f"eps = {params.eps} is resonant for ({family.value}, N={N}): integral {', '.join(bad)}",
            family=family,
            N=N,
        )


def cz_link_via_crossing(params: LinkParams, family, N: int) -> int:
    """mu(Phi) - mu(Phi on the complement of xi), every block by crossing count.

    Only the block along the orbit may end on a crossing; the constant block of
    the complement is the orbit/radial pair and contributes nothing.
    """
    family = Family.parse(family)
    paths = link_paths(params, family, N)
    for j, (b, ang) in enumerate(zip(paths.phi.blocks, paths.phi.endpoint_angles)):
        if j != paths.along and is_resonant(ang):
            raise DegenerateOrbitError(
                f"block {j} of the return map is resonant for ({family.value}, N={N})", family=family, N=N
            )
    if not paths.phi_complement.in_sigma_star:
        raise DegenerateOrbitError(f"complement block resonant for ({family.value}, N={N})", family=family, N=N)
    return cz_path(paths.phi) - cz_path(paths.phi_complement, strict=True)


def cz_link_closed_form(params: LinkParams, family, N: int) -> int:
    family = Family.parse(family)
    _certify(params, family, N)
    q = link_floor_arguments(params.n, params.eps, family, N)
    return 2 * (math.floor(q["w0_block"]) + math.floor(q["transverse"]) - math.floor(q["normal"])) + 2 * N + 1


def cz_link_simplified(params: LinkParams, family, N: int) -> int:
    """2*floor(2N/((n+1)(1 +- eps))) + 1, valid for eps < 1/N."""
    family = Family.parse(family)
    if params.eps >= Fraction(1, N):
        raise RegimeError(f"simplified formula needs eps < 1/N; eps = {params.eps}, N = {N}")
    _certify(params, family, N)
    a = Fraction(2 * N) / ((params.n + 1) * (1 + family.sign * params.eps))
    return 2 * math.floor(a) + 1


def choose_eps(n: int, n_max: int) -> Fraction:
    """Smallest-denominator eps in (0, 1/(10 n_max)) with no resonance for N <= n_max."""
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    bound = Fraction(1, 10 * n_max)
    q = 1
    while True:
        p = 1
        while Fraction(p, q) < bound:
            eps = Fraction(p, q)
            if math.gcd(p, q) == 1 and _admissible(n, eps, n_max):
                return eps
            p += 1
        q += 1


def _admissible(n: int, eps: Fraction, n_max: int) -> bool:
    return not any(link_resonances(n, eps, fam, N) for N in range(1, n_max + 1) for fam in Family)


# -- the lens space L(n+1, n) ------------------------------------------------------


def _lens_ratio(a1, a2, which: str) -> tuple[Fraction, Fraction]:
    a1, a2 = as_rational(a1), as_rational(a2)
    if a1 <= 0 or a2 <= 0:
        raise ValueError("a1 and a2 must be positive")
    which = str(which).lower().replace("gamma", "").replace("γ", "").strip("_ ")
    if which == "1":
        return a1, a2
    if which == "2":
        return a2, a1
    raise ValueError(f"lens orbit must be gamma1 or gamma2, got {which!r}")


def lens_floor_argument(n: int, a1, a2, which, N: int) -> Fraction:
    own, other = _lens_ratio(a1, a2, which)
    return N * (own + other) / ((n + 1) * other)


def cz_lens(n: int, a1, a2, which, N: int) -> int:
    """Index of gamma_j^N on L(n+1, n) in the trivialization that descends from C^2.

    The quotient circle rotates both coordinates, so the transverse winding is
    N(a1 + a2)/((n+1) a2) for gamma1 and the same with a1, a2 swapped for gamma2.
    """
    q = lens_floor_argument(n, a1, a2, which, N)
    if q.denominator == 1:
        raise DegenerateOrbitError(f"lens parameters resonant for {which}, N={N}", family=which, N=N)
    return 2 * math.floor(q) + 1


def cz_lens_split(n: int, a1, a2, which, N: int) -> int:
    """2(floor(N/(n+1)) + floor(N a1/((n+1) a2))) + 1, i.e. the two floors taken separately.

    Agrees with :func:`cz_lens` whenever (n+1) | N and differs on non-contractible iterates.
    """
    own, other = _lens_ratio(a1, a2, which)
    x, y = Fraction(N, n + 1), N * own / ((n + 1) * other)
    if y.denominator == 1:
        raise DegenerateOrbitError(f"lens parameters resonant for {which}, N={N}", family=which, N=N)
    return 2 * (math.floor(x) + math.floor(y)) + 1
