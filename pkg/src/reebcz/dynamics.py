"""Reeb flows of alpha_eps (closed form and RK4), orbit classification, return maps."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import geometry as geo
from .errors import DegenerateOrbitError
from .exact import Angle, is_resonant, rational_to_str
from .geometry import Family, LinkParams, as_point


def flow_closed_form(params: LinkParams, p, t: float) -> np.ndarray:
    speeds = np.array([float(s) for s in params.reeb_speeds])
    return np.exp(1j * speeds * t) * as_point(p)


def rk4(rhs, y0, t: float, dt: float) -> np.ndarray:
    """Classical fixed-step RK4 from 0 to ``t``; the step is shrunk so it divides ``t``."""
    if dt <= 0:
        raise ValueError("dt must be positive")
    steps = max(1, math.ceil(t / dt - 1e-9))
    h = t / steps
    y = np.array(y0)
    for _ in range(steps):
        k1 = rhs(y)
        k2 = rhs(y + 0.5 * h * k1)
        k3 = rhs(y + 0.5 * h * k2)
        k4 = rhs(y + h * k3)
        y = y + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
    return y


def flow_rk4(params: LinkParams, p, t: float, dt: float) -> np.ndarray:
    """Integrate w' = R_eps(w) numerically."""
    gen = 1j * np.array([float(s) for s in params.reeb_speeds])
    return rk4(lambda w: gen * w, as_point(p), t, dt)


# -- orbits -------------------------------------------------------------------


@dataclass(frozen=True)
class OrbitDescriptor:
    family: Family
    N: int
    n: int
    period: Angle  # total period N*pi/(1 +- eps)
    start: tuple[complex, complex, complex]

    @property
    def simple_period(self) -> Angle:
        return self.period / self.N

    @property
    def homotopy_class(self) -> int:
        return self.N % (self.n + 1)

    @property
    def contractible(self) -> bool:
        return self.homotopy_class == 0

    def to_json(self) -> dict:
        return {
            "family": self.family.value,
            "N": self.N,
            "period_over_pi": rational_to_str(self.period.coeff),
            "period": self.period.radians,
            "start": geo.point_to_json(self.start),
            "homotopy_class": self.homotopy_class,
            "contractible": self.contractible,
        }


def orbit(params: LinkParams, family, N: int = 1) -> OrbitDescriptor:
    family = Family.parse(family)
    if N < 1:
        raise ValueError("iterate N must be positive")
    period = Angle(Fraction(N) / (1 + family.sign * params.eps))
    start = (0j, 1 + 0j, 0j) if family is Family.PLUS else (0j, 0j, 1 + 0j)
    return OrbitDescriptor(family, N, params.n, period, start)


@dataclass(frozen=True)
class Candidate:
    label: str
    start: tuple[complex, complex, complex]
    f_value: complex
    accepted: bool
    reason: str


def candidate_orbits(params: LinkParams) -> list[Candidate]:
    """The three coordinate circles; only those lying on f = 0 are orbits on the link."""
    out = []
    for label, start in (("gamma0", (1, 0, 0)), ("gamma+", (0, 1, 0)), ("gamma-", (0, 0, 1))):
        fv = geo.eval_f(params, start)
        ok = fv == 0
        reason = "on the link" if ok else f"start point is not a zero of f (f = {fv.real:g})"
        out.append(Candidate(label, tuple(complex(c) for c in start), fv, ok, reason))
    return out


def enumerate_simple_orbits(params: LinkParams) -> list[OrbitDescriptor]:
    found = []
    for cand in candidate_orbits(params):
        if cand.accepted:
            found.append(orbit(params, Family.PLUS if cand.label == "gamma+" else Family.MINUS, 1))
    return found


@dataclass(frozen=True)
class ReturnMapResult:
    angles: tuple[Angle, Angle, Angle]  # rotation angle of each coordinate after time T
    orbit_index: int  # coordinate along the orbit
    eigenvalues: np.ndarray
    xi_eigenvalues: np.ndarray
    xi_angles: tuple[Angle, Angle]

    @property
    def min_distance_to_one(self) -> float:
        return float(np.min(np.abs(self.xi_eigenvalues - 1.0)))

    @property
    def nondegenerate(self) -> bool:
        return not any(is_resonant(a) for a in self.xi_angles)


def return_map(params: LinkParams, orb: OrbitDescriptor, check: bool = True) -> ReturnMapResult:
    """Eigenvalues of d(phi_T) on C^3 at T = orbit period; the orbit coordinate is dropped for xi."""
    angles = tuple(Angle(s * orb.period.coeff) for s in params.reeb_speeds)
    eig = np.exp(1j * np.array([a.radians for a in angles]))
    if np.max(np.abs(np.abs(eig) - 1.0)) > 1e-12:
        raise AssertionError("return map is not unitary")
    along = 1 if orb.family is Family.PLUS else 2
    if not is_resonant(angles[along]):
        raise AssertionError("orbit direction does not close up")
    keep = [j for j in range(3) if j != along]
    res = ReturnMapResult(
        angles=angles,
        orbit_index=along,
        eigenvalues=eig,
        xi_eigenvalues=eig[keep],
        xi_angles=tuple(angles[j] for j in keep),
    )
    if check and not res.nondegenerate:
        raise DegenerateOrbitError(
            f"return map of ({orb.family.value}, N={orb.N}) has eigenvalue 1 on xi", family=orb.family, N=orb.N
        )
    return res


# -- the unperturbed Brieskorn flow ----------------------------------------------


def brieskorn_flow(a, z, t: float) -> np.ndarray:
    """Flow of R_alpha1 = 2i(z_j / a_j): multiply z_j by e^{2it/a_j}."""
    a = np.asarray(a, dtype=float)
    return np.exp(2j * t / a) * np.asarray(z, dtype=complex)


def brieskorn_common_period(a) -> Angle:
    """Every point returns after pi * lcm(a)."""
    return Angle(math.lcm(*[int(x) for x in a]))
