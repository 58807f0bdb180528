"""Concrete geometry of C^3 = R^6 around the A_n link.

Points are complex numpy arrays of shape ``(3,)``. Real coordinates are
interleaved ``(x0, y0, x1, y1, x2, y2)`` with ``w_j = x_j + i y_j``; every
translation from complex notation to real coordinates happens in this module.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy.optimize import brentq

from .errors import DegenerateOrbitError, DegeneratePointError, SamplingError
from .exact import as_rational

SQRT2 = np.sqrt(2.0)

#: Central tolerances; the CLI exposes them as flags.
TOL_IDENTITY = 1e-9
TOL_ONLINK = 1e-12
TOL_FD = 1e-7
TOL_ODE = 1e-6
TOL_VOLUME = 1e-6


class Family(str, enum.Enum):
    PLUS = "plus"
    MINUS = "minus"

    @property
    def sign(self) -> int:
        return 1 if self is Family.PLUS else -1

    @classmethod
    def parse(cls, value) -> "Family":
        if isinstance(value, Family):
            return value
        key = str(value).strip().lower()
        aliases = {"+": "plus", "-": "minus", "gamma+": "plus", "gamma-": "minus"}
        return cls(aliases.get(key, key))


def link_floor_arguments(n: int, eps, family, N: int) -> dict[str, Fraction]:
    """The three rational numbers whose floors enter the index of ``gamma_family^N``.

    ``w0_block``  winding of the w0 rotation block,
    ``transverse`` winding of the rotation block of the other simple orbit,
    ``normal``  winding of the e^{4it} block of the symplectic complement.
    An orbit is degenerate iff one of these is an integer.
    """
    eps = as_rational(eps)
    s = Family.parse(family).sign
    one_pm = 1 + s * eps
    one_mp = 1 - s * eps
    return {
        "w0_block": Fraction(2 * N) / ((n + 1) * one_pm),
        "transverse": N * one_mp / one_pm,
        "normal": Fraction(2 * N) / one_pm,
    }


def link_resonances(n: int, eps, family, N: int) -> list[str]:
    args = link_floor_arguments(n, eps, family, N)
    return [name for name, q in args.items() if q.denominator == 1]


@dataclass(frozen=True)
class LinkParams:
    """Problem instance: the A_n link with perturbation parameter ``eps``.

    ``eps`` is certified nonresonant for every iterate ``N <= n_max`` of both
    simple orbits at construction time; ``n_max=0`` skips certification.
    """

    n: int
    eps: Fraction = Fraction(1, 1000)
    n_max: int = 100
    exponents: tuple[int, int, int] = field(init=False)

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise ValueError(f"n must be a positive integer, got {self.n!r}")
        eps = as_rational(self.eps)
        object.__setattr__(self, "eps", eps)
        object.__setattr__(self, "exponents", (self.n + 1, 2, 2))
        if eps == 0:
            raise DegenerateOrbitError(
                "eps = 0: the unperturbed form has an S^1-family of orbits; every orbit is degenerate",
                family=Family.PLUS,
                N=1,
            )
        if not 0 < eps < 1:
            raise ValueError(f"eps must lie in (0, 1), got {eps}")
        for N in range(1, self.n_max + 1):
            for fam in Family:
                bad = link_resonances(self.n, eps, fam, N)
                if bad:
                    raise DegenerateOrbitError(
                        f"eps = {eps} is resonant for ({fam.value}, N={N}): integral {', '.join(bad)}",
                        family=fam,
                        N=N,
                    )

    @property
    def reeb_speeds(self) -> tuple[Fraction, Fraction, Fraction]:
        """Angular speeds of the Reeb flow on (w0, w1, w2)."""
        return (Fraction(4, self.n + 1), 2 * (1 + self.eps), 2 * (1 - self.eps))

    @property
    def hamiltonian_weights(self) -> np.ndarray:
        e = float(self.eps)
        return np.array([1.0, 1.0 + e, 1.0 - e])


# -- coordinates ----------------------------------------------------------


def as_point(p) -> np.ndarray:
    p = np.asarray(p, dtype=complex)
    if p.shape != (3,):
        raise ValueError(f"expected 3 complex coordinates, got shape {p.shape}")
    return p


def to_real(p) -> np.ndarray:
    p = np.asarray(p, dtype=complex)
    out = np.empty(2 * p.size)
    out[0::2] = p.real
    out[1::2] = p.imag
    return out


def to_complex(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    return x[0::2] + 1j * x[1::2]


def point_to_json(p) -> list[float]:
    return [float(v) for v in to_real(p)]


def complex_linear_to_real(M) -> np.ndarray:
    """Real 2k x 2k matrix of the complex-linear map ``w -> M w``."""
    M = np.asarray(M, dtype=complex)
    k, m = M.shape
    R = np.zeros((2 * k, 2 * m))
    R[0::2, 0::2] = M.real
    R[0::2, 1::2] = -M.imag
    R[1::2, 0::2] = M.imag
    R[1::2, 1::2] = M.real
    return R


def holomorphic_differential(grad) -> np.ndarray:
    """Rows ``d(Re g)``, ``d(Im g)`` in real coordinates for a holomorphic ``g`` with dg = sum grad_j dw_j."""
    grad = np.asarray(grad, dtype=complex)
    d_re = np.empty(2 * grad.size)
    d_im = np.empty(2 * grad.size)
    d_re[0::2], d_re[1::2] = grad.real, -grad.imag
    d_im[0::2], d_im[1::2] = grad.imag, grad.real
    return np.vstack([d_re, d_im])


# -- defining functions -----------------------------------------------------


def eval_f(params, p) -> complex:
    """``w0^(n+1) + 2 w1 w2``; ``params`` may be a LinkParams or the integer n."""
    n = getattr(params, "n", params)
    w0, w1, w2 = as_point(p)
    return complex(w0 ** (n + 1) + 2 * w1 * w2)


def grad_f(params, p) -> np.ndarray:
    n = getattr(params, "n", params)
    w0, w1, w2 = as_point(p)
    return np.array([(n + 1) * w0**n, 2 * w2, 2 * w1], dtype=complex)


def eval_H(params: LinkParams, p) -> float:
    p = as_point(p)
    return float(np.dot(params.hamiltonian_weights, np.abs(p) ** 2))


def dH(params: LinkParams, p) -> np.ndarray:
    """Real gradient of H as a 6-vector (coefficients of dx_j, dy_j)."""
    x = to_real(p)
    return 2.0 * np.repeat(params.hamiltonian_weights, 2) * x


def rho(p) -> float:
    return (float(np.sum(np.abs(as_point(p)) ** 2)) - 1.0) / 4.0


def d_rho(p) -> np.ndarray:
    return 0.5 * to_real(p)


def on_link(params, p, tol_f: float = TOL_ONLINK, tol_rho: float = TOL_ONLINK) -> bool:
    p = as_point(p)
    return abs(eval_f(params, p)) < tol_f and abs(float(np.sum(np.abs(p) ** 2)) - 1.0) < tol_rho


# -- maps between models ----------------------------------------------------


def phi_tilde(n: int, u: complex, v: complex) -> np.ndarray:
    """Invariant monomials ``(uv, i u^(n+1)/sqrt2, i v^(n+1)/sqrt2)`` of the cyclic action."""
    return np.array([u * v, 1j / SQRT2 * u ** (n + 1), 1j / SQRT2 * v ** (n + 1)], dtype=complex)


PSI_MATRIX = np.array(
    [[1, 0, 0], [0, SQRT2 / 2, SQRT2 / 2], [0, -1j * SQRT2 / 2, 1j * SQRT2 / 2]],
    dtype=complex,
)


def psi_coordinate_change(w) -> np.ndarray:
    """Linear map taking A_n coordinates w to Brieskorn coordinates z of Sigma(n+1, 2, 2)."""
    return PSI_MATRIX @ as_point(w)


def brieskorn_f(a, z) -> complex:
    z = np.asarray(z, dtype=complex)
    return complex(sum(zj**aj for zj, aj in zip(z, a)))


def weighted_scale(n: int, z, lam: float) -> np.ndarray:
    """``(lam^(2/(n+1)) z0, lam z1, lam z2)``; multiplies f by lam^2."""
    z = as_point(z)
    return np.array([lam ** (2.0 / (n + 1)) * z[0], lam * z[1], lam * z[2]])


def project_to_sphere(n: int, z, xtol: float = 1e-15) -> np.ndarray:
    """Move ``z`` along its weighted ray until it hits the unit sphere."""
    z = as_point(z)
    a0 = abs(z[0]) ** 2
    a12 = abs(z[1]) ** 2 + abs(z[2]) ** 2
    if a0 == 0.0 and a12 == 0.0:
        raise DegeneratePointError("the origin has no weighted ray")

    def g(lam):
        return lam ** (4.0 / (n + 1)) * a0 + lam**2 * a12 - 1.0

    hi = 1.0
    while g(hi) < 0:
        hi *= 2.0
    lo = hi / 2.0
    while g(lo) > 0:
        lo /= 2.0
    try:
        lam = brentq(g, lo, hi, xtol=xtol, rtol=4 * np.finfo(float).eps, maxiter=500)
    except (RuntimeError, ValueError) as exc:
        raise SamplingError(f"weighted rescaling failed to converge: {exc}") from exc
    return weighted_scale(n, z, lam)


def sample_s3(count: int, rng: np.random.Generator) -> np.ndarray:
    """``count`` points uniform on S^3, as complex pairs of shape (count, 2)."""
    g = rng.standard_normal((count, 4))
    g /= np.linalg.norm(g, axis=1, keepdims=True)
    return g[:, 0::2] + 1j * g[:, 1::2]


def sample_link(params, count: int, seed: int = 0, tol: float = TOL_ONLINK) -> list[np.ndarray]:
    """Seeded points on the link via the invariant-monomial map and a weighted rescale."""
    if count <= 0:
        raise ValueError("count must be positive")
    n = getattr(params, "n", params)
    rng = np.random.default_rng(seed)
    points = []
    for u, v in sample_s3(count, rng):
        p = project_to_sphere(n, phi_tilde(n, u, v))
        if not on_link(n, p, tol, tol):
            raise SamplingError(f"sampled point left the link: |f|={abs(eval_f(n, p)):.3e}")
        points.append(p)
    return points


# -- tangent spaces ----------------------------------------------------------


@dataclass(frozen=True)
class TangentFrame:
    base: np.ndarray
    vectors: np.ndarray  # (3, 6), orthonormal rows
    constraints: np.ndarray  # (3, 6) rows d(Re f), d(Im f), d(rho)

    @property
    def residual(self) -> float:
        """Largest constraint value on a frame vector."""
        return float(np.max(np.abs(self.constraints @ self.vectors.T)))

    @property
    def orthonormality_error(self) -> float:
        return float(np.max(np.abs(self.vectors @ self.vectors.T - np.eye(3))))


def link_constraints(params, p) -> np.ndarray:
    p = as_point(p)
    return np.vstack([holomorphic_differential(grad_f(params, p)), d_rho(p)])


def frame_from_constraints(base, C, rank_tol: float = 1e-10) -> TangentFrame:
    """Orthonormal basis of ``ker C`` (C has full row rank at a regular point)."""
    C = np.atleast_2d(np.asarray(C, dtype=float))
    _, s, vt = np.linalg.svd(C)
    k = C.shape[0]
    if s.size < k or s[k - 1] <= rank_tol * max(1.0, s[0]):
        raise DegeneratePointError(f"constraint Jacobian has rank < {k} at {base}")
    return TangentFrame(base=np.asarray(base), vectors=vt[k:].copy(), constraints=C)


def tangent_frame(params, p, rank_tol: float = 1e-10) -> TangentFrame:
    """Orthonormal basis of the kernel of d(Re f, Im f, rho) at ``p``."""
    p = as_point(p)
    return frame_from_constraints(p, link_constraints(params, p), rank_tol)


# -- general Brieskorn manifolds ---------------------------------------------


def brieskorn_constraints(a, z) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    grad = np.array([aj * zj ** (aj - 1) for zj, aj in zip(z, a)], dtype=complex)
    return np.vstack([holomorphic_differential(grad), d_rho(z)])


def brieskorn_tangent_frame(a, z) -> TangentFrame:
    z = np.asarray(z, dtype=complex)
    return frame_from_constraints(z, brieskorn_constraints(a, z))


def sample_brieskorn(a, count: int, seed: int = 0) -> list[np.ndarray]:
    """Seeded points of Sigma(a): solve for z0, then rescale along the weighted ray."""
    a = [int(aj) for aj in a]
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        tail = rng.standard_normal(len(a) - 1) + 1j * rng.standard_normal(len(a) - 1)
        rest = sum(zj**aj for zj, aj in zip(tail, a[1:]))
        z0 = (-rest) ** (1.0 / a[0])
        z = np.concatenate([[z0], tail])
        weights = [1.0 / aj for aj in a]

        def g(lam, z=z):
            return sum(lam ** (2 * w) * abs(zj) ** 2 for w, zj in zip(weights, z)) - 1.0

        hi = 1.0
        while g(hi) < 0:
            hi *= 2.0
        lo = hi / 2.0
        while g(lo) > 0:
            lo /= 2.0
        lam = brentq(g, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps)
        out.append(np.array([lam**w * zj for w, zj in zip(weights, z)]))
    return out
