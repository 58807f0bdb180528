"""The lens space L(n+1, n): the cyclic action, its invariant monomials, and lens orbit tables."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import geometry as geo
from .errors import DegenerateOrbitError, PreconditionError
from .exact import Angle, as_rational, rational_to_str
from .forms import IdentityCheck, _check
from .geometry import phi_tilde, psi_coordinate_change
from .index import cz_lens, lens_floor_argument
from .ranks import RankTable, check_thm_pattern, tally

__all__ = [
    "CyclicAction",
    "LensOrbit",
    "phi_tilde",
    "psi_coordinate_change",
    "lens_orbit",
    "lens_orbit_table",
    "check_lens_hypersurface",
    "lens_ratio_scan",
]


@dataclass(frozen=True)
class CyclicAction:
    """(u, v) -> (e^{2 pi i/(n+1)} u, e^{2 pi i n/(n+1)} v)."""

    n: int

    @property
    def order(self) -> int:
        return self.n + 1

    @property
    def phases(self) -> tuple[Fraction, Fraction]:
        """Generator phases as fractions of a full turn."""
        return Fraction(1, self.order), Fraction(self.n, self.order)

    @property
    def det_phase(self) -> Fraction:
        # exactly 0 mod 1, so the generator lies in SL(2, C)
        return sum(self.phases) % 1

    @property
    def matrix(self) -> np.ndarray:
        return np.diag(np.exp(2j * np.pi * np.array([float(q) for q in self.phases])))

    def apply(self, u: complex, v: complex, k: int = 1) -> tuple[complex, complex]:
        d = np.linalg.matrix_power(self.matrix, k) @ np.array([u, v], dtype=complex)
        return complex(d[0]), complex(d[1])


@dataclass(frozen=True)
class LensOrbit:
    which: str  # "gamma1" or "gamma2"
    a1: Fraction
    a2: Fraction
    N: int
    n: int

    @property
    def period(self) -> Angle:
        a = self.a1 if self.which == "gamma1" else self.a2
        return Angle(2 * a * self.N / (self.n + 1))

    @property
    def cz(self) -> int:
        return cz_lens(self.n, self.a1, self.a2, self.which, self.N)

    @property
    def contractible(self) -> bool:
        return self.N % (self.n + 1) == 0

    def to_json(self) -> dict:
        return {
            "which": self.which,
            "N": self.N,
            "period_over_pi": rational_to_str(self.period.coeff),
            "cz": self.cz,
            "contractible": self.contractible,
        }


def lens_orbit(n: int, a1, a2, which: str, N: int) -> LensOrbit:
    which = "gamma1" if str(which).endswith("1") else "gamma2"
    return LensOrbit(which, as_rational(a1), as_rational(a2), N, n)


def lens_orbit_table(n: int, a1, a2, D: int, shift: int = 0) -> RankTable:
    a1, a2 = as_rational(a1), as_rational(a2)
    table = tally(lambda which, N: cz_lens(n, a1, a2, which, N), ["gamma1", "gamma2"], n, D, shift)
    table.label = "lens"
    table.params = {"n": n, "a1": rational_to_str(a1), "a2": rational_to_str(a2)}
    return table


def check_lens_hypersurface(n: int, u: complex, v: complex, tol: float = 1e-10) -> IdentityCheck:
    """2|z0|^2 + 4^{1/(n+1)}(|z1|^{4/(n+1)} + |z2|^{4/(n+1)}) = 1 at z = phi_tilde(u, v)."""
    norm = abs(u) ** 2 + abs(v) ** 2
    if abs(norm - 1.0) > 1e-12:
        raise PreconditionError(f"(u, v) must lie on S^3, |u|^2 + |v|^2 = {norm}")
    z = phi_tilde(n, u, v)
    e = 4.0 / (n + 1)
    lhs = 2 * abs(z[0]) ** 2 + 4.0 ** (1.0 / (n + 1)) * (abs(z[1]) ** e + abs(z[2]) ** e)
    return _check("lens.hypersurface", z, abs(lhs - 1.0), tol)


def lens_ratio_scan(n: int, D: int, ratios) -> list[dict]:
    """For each a2/a1 in ``ratios`` (with a1 = 1) report whether the lens table matches the pattern up to D."""
    out = []
    for r in ratios:
        r = as_rational(r)
        row = {"a2_over_a1": rational_to_str(r)}
        try:
            table = lens_orbit_table(n, 1, r, D)
            row["pattern"] = check_thm_pattern(table, n)
        except DegenerateOrbitError as exc:
            row["pattern"] = False
            row["error"] = str(exc)
        out.append(row)
    return out


def first_lens_resonance(n: int, a1, a2, n_max: int) -> tuple[str, int] | None:
    for N in range(1, n_max + 1):
        for which in ("gamma1", "gamma2"):
            if lens_floor_argument(n, a1, a2, which, N).denominator == 1:
                return which, N
    return None


def homotopy_residues(n: int, generators) -> set[int]:
    return {N % (n + 1) for _, N in generators}


def hypersurface_points(n: int, count: int, seed: int = 0):
    rng = np.random.default_rng(seed)
    return [tuple(uv) for uv in geo.sample_s3(count, rng)]

