"""Contact forms, Reeb and Liouville fields, and checks of their defining identities.

One-forms are coefficient vectors in the real coordinates of
:mod:`reebcz.geometry`; two-forms are antisymmetric matrices ``M`` with
``beta(u, v) = u @ M @ v``.  The complex expression
``(i/2)(w dw̄ - w̄ dw)`` equals ``x dy - y dx`` and ``(i/2) dw ∧ dw̄``
equals ``dx ∧ dy``; everything below is built from these two facts.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import geometry as geo
from .errors import DegeneratePointError, NormalizationError, PreconditionError
from .geometry import LinkParams, as_point, to_real

FD_STEP = 1e-5


# -- primitive constructors ------------------------------------------------


def angular_form(weights, x) -> np.ndarray:
    """Coefficients of ``sum_j c_j (x_j dy_j - y_j dx_j)``."""
    x = np.asarray(x, dtype=float)
    c = np.repeat(np.asarray(weights, dtype=float), 2)
    out = np.empty_like(x)
    out[0::2] = -x[1::2]
    out[1::2] = x[0::2]
    return c * out


def area_form(weights) -> np.ndarray:
    """Matrix of ``sum_j c_j dx_j ∧ dy_j``."""
    weights = np.asarray(weights, dtype=float)
    M = np.zeros((2 * weights.size, 2 * weights.size))
    for j, c in enumerate(weights):
        M[2 * j, 2 * j + 1] = c
        M[2 * j + 1, 2 * j] = -c
    return M


def wedge(beta, gamma) -> np.ndarray:
    return np.outer(beta, gamma) - np.outer(gamma, beta)


def fd_exterior_derivative(oneform: Callable[[np.ndarray], np.ndarray], x, h: float = FD_STEP) -> np.ndarray:
    """``d beta`` at ``x`` by central differences: ``(d beta)_kl = d_k beta_l - d_l beta_k``."""
    x = np.asarray(x, dtype=float)
    J = np.empty((x.size, x.size))
    for k in range(x.size):
        e = np.zeros_like(x)
        e[k] = h
        J[k] = (oneform(x + e) - oneform(x - e)) / (2 * h)
    return J - J.T


# -- the forms ---------------------------------------------------------------


def alpha0_weights(m: int = 3) -> np.ndarray:
    # i/4 normalization
    return np.full(m, 0.5)


def lambda_weights(params: LinkParams) -> np.ndarray:
    """Weights of the pulled-back half form Psi^*alpha_1 / 2 in w coordinates."""
    return np.array([(params.n + 1) / 4.0, 0.5, 0.5])


def alpha_t_weights(a, t: float) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    return 0.5 / (1.0 - t + t / a)


def alpha0(p) -> np.ndarray:
    x = to_real(p)
    return angular_form(alpha0_weights(x.size // 2), x)


def d_alpha0(m: int = 3) -> np.ndarray:
    return area_form(2 * alpha0_weights(m))


def lambda_w(params: LinkParams, p) -> np.ndarray:
    return angular_form(lambda_weights(params), to_real(p))


def omega1(params: LinkParams) -> np.ndarray:
    return area_form(2 * lambda_weights(params))


def omega_c3() -> np.ndarray:
    return area_form(np.ones(3))


def omega_c2() -> np.ndarray:
    return area_form(np.full(2, 2.0))


def alpha_eps(params: LinkParams, p) -> np.ndarray:
    return lambda_w(params, p) / geo.eval_H(params, p)


def d_alpha_eps(params: LinkParams, p) -> np.ndarray:
    """Closed form ``-(1/H^2) dH ∧ lambda + omega_1 / H``."""
    H = geo.eval_H(params, p)
    return -wedge(geo.dH(params, p), lambda_w(params, p)) / H**2 + omega1(params) / H


def alpha_t(a, t: float, z) -> np.ndarray:
    return angular_form(alpha_t_weights(a, t), to_real(z))


def d_alpha_t(a, t: float) -> np.ndarray:
    return area_form(2 * alpha_t_weights(a, t))


def pulled_back_alpha1(params: LinkParams, p) -> np.ndarray:
    """``Psi^* alpha_1`` at ``p``: alpha_1 of Sigma(n+1,2,2) evaluated at Psi(p), composed with dPsi."""
    P = geo.complex_linear_to_real(geo.PSI_MATRIX)
    z = geo.psi_coordinate_change(p)
    return P.T @ alpha_t(params.exponents, 1.0, z)


@dataclass(frozen=True)
class FormValue:
    """Coefficient arrays of the relevant forms at one point."""

    point: np.ndarray
    alpha0: np.ndarray
    alpha1: np.ndarray
    alpha_eps: np.ndarray
    d_alpha_eps: np.ndarray
    omega1: np.ndarray
    omega_c3: np.ndarray


def forms_at(params: LinkParams, p) -> FormValue:
    p = as_point(p)
    return FormValue(
        point=p,
        alpha0=alpha0(p),
        alpha1=pulled_back_alpha1(params, p),
        alpha_eps=alpha_eps(params, p),
        d_alpha_eps=d_alpha_eps(params, p),
        omega1=omega1(params),
        omega_c3=omega_c3(),
    )


# -- vector fields -------------------------------------------------------------


def rotation_field(speeds, x) -> np.ndarray:
    """Real form of ``i * diag(speeds) * w``."""
    x = np.asarray(x, dtype=float)
    s = np.repeat(np.asarray(speeds, dtype=float), 2)
    out = np.empty_like(x)
    out[0::2] = -x[1::2]
    out[1::2] = x[0::2]
    return s * out


def eval_reeb_eps(params: LinkParams, p) -> np.ndarray:
    """``(4i/(n+1) w0, 2i(1+eps) w1, 2i(1-eps) w2)`` as a real 6-vector."""
    return rotation_field([float(s) for s in params.reeb_speeds], to_real(p))


def eval_reeb_alpha1(a, z) -> np.ndarray:
    """Reeb field ``2i (z_j / a_j)`` of alpha_1 on Sigma(a)."""
    return rotation_field(2.0 / np.asarray(a, dtype=float), to_real(z))


def radial_half(x) -> np.ndarray:
    return 0.5 * np.asarray(x, dtype=float)


@dataclass(frozen=True)
class VectorFieldSpec:
    tag: str
    dim: int
    evaluate: Callable[[np.ndarray], np.ndarray]
    punctured: bool = False  # undefined at the origin


def reeb_field(params: LinkParams) -> VectorFieldSpec:
    speeds = [float(s) for s in params.reeb_speeds]
    return VectorFieldSpec("R_alpha_eps", 6, lambda x: rotation_field(speeds, x))


def hamiltonian_field(params: LinkParams) -> VectorFieldSpec:
    speeds = [-float(s) for s in params.reeb_speeds]
    return VectorFieldSpec("X_H", 6, lambda x: rotation_field(speeds, x))


def reeb_alpha1_field(a) -> VectorFieldSpec:
    return VectorFieldSpec("R_alpha1", 2 * len(a), lambda x: eval_reeb_alpha1(a, geo.to_complex(x)))


X_LIOUVILLE_OMEGA1 = VectorFieldSpec("X_Liouville_omega1", 6, radial_half)
Y0_C2 = VectorFieldSpec("Y0_C2", 4, radial_half, punctured=True)
Y_RADIAL_C3 = VectorFieldSpec("Y_radial_C3", 6, radial_half)


# -- checks ------------------------------------------------------------------


@dataclass(frozen=True)
class IdentityCheck:
    """A residual compared against a threshold.

    ``bound="max"``: passes iff value < threshold (a residual);
    ``bound="min"``: passes iff value > threshold (a volume that must not vanish).
    """

    name: str
    point: tuple[float, ...]
    value: float
    threshold: float
    bound: str = "max"

    @property
    def passed(self) -> bool:
        if self.bound == "max":
            return self.value < self.threshold
        return self.value > self.threshold

    @property
    def residual(self) -> float:
        return self.value

    def to_json(self) -> dict:
        return {
            "identity": self.name,
            "point": list(self.point),
            "value": self.value,
            "threshold": self.threshold,
            "bound": self.bound,
            "pass": self.passed,
        }


def _check(name, p, value, threshold, bound="max") -> IdentityCheck:
    return IdentityCheck(name, tuple(float(v) for v in to_real(p)), float(value), float(threshold), bound)


def _require_on_link(params, p, tol: float):
    if not geo.on_link(params, p, tol, tol):
        raise PreconditionError(
            f"point is not on the link: |f|={abs(geo.eval_f(params, p)):.3e}, |p|^2={np.sum(np.abs(p) ** 2):.6g}"
        )


def check_reeb_defining(
    params: LinkParams, p, tol: float = geo.TOL_IDENTITY, precondition_tol: float = 1e-9
) -> list[IdentityCheck]:
    """alpha_eps(R) = 1, dalpha_eps(R, .) = 0 on T_pL, and R tangent to the link."""
    p = as_point(p)
    _require_on_link(params, p, precondition_tol)
    frame = geo.tangent_frame(params, p)
    R = eval_reeb_eps(params, p)
    a = alpha_eps(params, p)
    da = d_alpha_eps(params, p)
    C = frame.constraints
    return [
        _check("reeb.alpha_eq_1", p, abs(a @ R - 1.0), tol),
        _check("reeb.dalpha_null", p, np.max(np.abs(R @ da @ frame.vectors.T)), tol),
        _check("reeb.tangent_re_f", p, abs(C[0] @ R), tol),
        _check("reeb.tangent_im_f", p, abs(C[1] @ R), tol),
        _check("reeb.tangent_rho", p, abs(C[2] @ R), tol),
    ]


def check_liouville(field: VectorFieldSpec, omega, p, tol: float = geo.TOL_FD, h: float = FD_STEP) -> IdentityCheck:
    """``L_X omega = omega`` via Cartan: omega has constant coefficients, so L_X omega = d(i_X omega)."""
    omega = np.asarray(omega, dtype=float)
    x = np.asarray(to_real(p) if np.iscomplexobj(p) else p, dtype=float)
    if omega.shape != (field.dim, field.dim) or x.size != field.dim:
        raise ValueError(f"dimension mismatch: field {field.dim}, form {omega.shape}, point {x.size}")
    if field.punctured and np.linalg.norm(x) == 0.0:
        raise DegeneratePointError(f"{field.tag} is only defined away from the origin")

    def contraction(y):
        return omega.T @ field.evaluate(y)

    lie = fd_exterior_derivative(contraction, x, h)
    value = np.max(np.abs(lie - omega))
    return IdentityCheck(f"liouville.{field.tag}", tuple(map(float, x)), float(value), float(tol))


def check_hamiltonian_identity(params: LinkParams, p, tol: float = geo.TOL_IDENTITY) -> IdentityCheck:
    """omega_1(-R_eps, v) = dH(v) for every coordinate vector v."""
    p = as_point(p)
    lhs = -eval_reeb_eps(params, p) @ omega1(params)
    return _check("hamiltonian.omega1_minus_R_eq_dH", p, np.max(np.abs(lhs - geo.dH(params, p))), tol)


def contact_volume(alpha, d_alpha, frame_vectors) -> tuple[float, float]:
    """``(|alpha ∧ (dalpha)^m|, |Pf(dalpha|xi)|)`` on an orthonormal frame, dropping the m! factor.

    With nu the unit normal to xi inside the frame span, the top form equals
    alpha(nu) * Pf(dalpha restricted to xi).
    """
    F = np.asarray(frame_vectors)
    a = F @ alpha
    norm_a = float(np.linalg.norm(a))
    if norm_a == 0.0:
        return 0.0, 0.0
    _, _, vt = np.linalg.svd(a[None, :])
    xi = vt[1:] @ F
    pf = float(np.sqrt(abs(np.linalg.det(xi @ d_alpha @ xi.T))))
    return norm_a * pf, pf


def xi_basis(alpha, frame_vectors) -> np.ndarray:
    """Orthonormal basis of ker(alpha) inside the span of the frame."""
    F = np.asarray(frame_vectors)
    _, _, vt = np.linalg.svd((F @ alpha)[None, :])
    return vt[1:] @ F


def check_contact_condition(
    params: LinkParams, p, form_tag: str = "alpha_eps", tol: float = geo.TOL_VOLUME
) -> list[IdentityCheck]:
    p = as_point(p)
    _require_on_link(params, p, 1e-9)
    frame = geo.tangent_frame(params, p)
    if form_tag == "alpha0":
        a, da = alpha0(p), d_alpha0()
    elif form_tag == "alpha_eps":
        a, da = alpha_eps(params, p), d_alpha_eps(params, p)
    else:
        raise ValueError(f"unknown form {form_tag!r}")
    vol, pf = contact_volume(a, da, frame.vectors)
    return [
        _check(f"contact.{form_tag}.volume", p, vol, tol, "min"),
        _check(f"contact.{form_tag}.xi_nondegenerate", p, pf, tol, "min"),
    ]


def check_brieskorn_alpha_t(a, t: float, z, tol: float = geo.TOL_VOLUME) -> IdentityCheck:
    frame = geo.brieskorn_tangent_frame(a, z)
    vol, _ = contact_volume(alpha_t(a, t, z), d_alpha_t(a, t), frame.vectors)
    return _check(f"contact.alpha_t[{t:g}]", z, vol, tol, "min")


def check_alpha1_reeb(a, z, tol: float = geo.TOL_IDENTITY) -> list[IdentityCheck]:
    """R_alpha1 on Sigma(a): alpha_1(R) = 1, i_R dalpha_1 is a multiple of d rho, R tangent."""
    z = np.asarray(z, dtype=complex)
    R = eval_reeb_alpha1(a, z)
    contraction = R @ d_alpha_t(a, 1.0)
    frame = geo.brieskorn_tangent_frame(a, z)
    return [
        _check("alpha1.reeb_eq_1", z, abs(alpha_t(a, 1.0, z) @ R - 1.0), tol),
        # with rho = (|z|^2 - 1)/4 the contraction is exactly -4 d rho
        _check("alpha1.contraction_prop_drho", z, np.max(np.abs(contraction + 4 * geo.d_rho(z))), tol),
        _check("alpha1.contraction_on_T", z, np.max(np.abs(frame.vectors @ contraction)), tol),
        _check("alpha1.tangent", z, np.max(np.abs(frame.constraints @ R)), tol),
    ]


def check_alpha_eps_pullback(params: LinkParams, p, tol: float = 1e-10) -> IdentityCheck:
    """alpha_eps built in w coordinates agrees with (Psi^* alpha_1) / (2H)."""
    p = as_point(p)
    other = pulled_back_alpha1(params, p) / (2 * geo.eval_H(params, p))
    return _check("alpha_eps.pullback", p, np.max(np.abs(alpha_eps(params, p) - other)), tol)


def check_kernel_agreement(params: LinkParams, p, tol: float = geo.TOL_IDENTITY) -> IdentityCheck:
    p = as_point(p)
    frame = geo.tangent_frame(params, p)
    a1, ae = pulled_back_alpha1(params, p), alpha_eps(params, p)
    r = max(np.max(np.abs(xi_basis(a1, frame.vectors) @ ae)), np.max(np.abs(xi_basis(ae, frame.vectors) @ a1)))
    return _check("alpha_eps.kernel_eq_alpha1", p, r, tol)


def check_dH_along_reeb(params: LinkParams, p, tol: float = geo.TOL_IDENTITY) -> IdentityCheck:
    p = as_point(p)
    return _check("hamiltonian.dH_of_R", p, abs(geo.dH(params, p) @ eval_reeb_eps(params, p)), tol)


def check_f_equivariance(params: LinkParams, p, tol: float = geo.TOL_IDENTITY) -> IdentityCheck:
    """df(R_eps) = 4i f at any point of C^3."""
    p = as_point(p)
    R = geo.to_complex(eval_reeb_eps(params, p))
    df_R = complex(geo.grad_f(params, p) @ R)
    return _check("reeb.df_eq_4i_f", p, abs(df_R - 4j * geo.eval_f(params, p)), tol)


def check_dalpha_fd(params: LinkParams, p, tol: float = geo.TOL_FD) -> IdentityCheck:
    p = as_point(p)
    fd = fd_exterior_derivative(lambda x: alpha_eps(params, geo.to_complex(x)), to_real(p))
    return _check("alpha_eps.dalpha_fd", p, np.max(np.abs(fd - d_alpha_eps(params, p))), tol)


def radial_y_tangency(params, p) -> tuple[complex, complex]:
    """``(df(Y), (1 - n) z1 z2)`` for Y = grad rho; the two agree on f = 0."""
    n = getattr(params, "n", params)
    p = as_point(p)
    Y = geo.to_complex(radial_half(to_real(p)))
    return complex(geo.grad_f(n, p) @ Y), complex((1 - n) * p[1] * p[2])


# -- symplectic basis of the complement of xi -------------------------------------


STANDARD_GRAM = np.kron(np.eye(2), np.array([[0.0, 1.0], [-1.0, 0.0]]))
SYMMETRIC_GRAM = np.kron(np.eye(2), np.array([[0.0, 1.0], [1.0, 0.0]]))


@dataclass(frozen=True)
class SymplecticBasis:
    point: np.ndarray
    basis: np.ndarray  # rows X1~, Y1~, X2~, Y2~
    gram: np.ndarray
    raw_pairings: dict
    xi_residual: float

    @property
    def standard_deviation(self) -> float:
        return float(np.max(np.abs(self.gram - STANDARD_GRAM)))

    @property
    def symmetric_deviation(self) -> float:
        """Distance to blocks [[0, 1], [1, 0]]; an antisymmetric Gram matrix sits at distance 2 from it."""
        return float(np.max(np.abs(self.gram - SYMMETRIC_GRAM)))


def check_symplectic_basis(params: LinkParams, p, tiny: float = 1e-12) -> SymplecticBasis:
    """Symplectic Gram-Schmidt of (X1, iX1, R_eps, w), X1 = (w̄0^n, w̄1, w̄2), against omega_1."""
    p = as_point(p)
    W = omega1(params)

    def om(u, v):
        return float(u @ W @ v)

    X1 = to_real(np.conj([p[0] ** params.n, p[1], p[2]]))
    Y1 = to_real(1j * geo.to_complex(X1))
    X2 = eval_reeb_eps(params, p)
    Y2 = to_real(p)
    raw = {"w(X1,Y1)": om(X1, Y1), "w(X2,Y2)": om(X2, Y2), "w(X1,Y2)": om(X1, Y2), "w(Y1,Y2)": om(Y1, Y2)}

    if raw["w(X1,Y1)"] <= tiny:
        raise NormalizationError(f"omega(X1, Y1) = {raw['w(X1,Y1)']:.3e} is not positive")
    s = np.sqrt(raw["w(X1,Y1)"])
    e1, f1 = X1 / s, Y1 / s

    def project(v):
        return v - om(v, f1) * e1 + om(v, e1) * f1

    e2, f2 = project(X2), project(Y2)
    pair = om(e2, f2)
    if abs(pair) <= tiny:
        raise NormalizationError("the second pair is omega-degenerate after projection")
    f2 = f2 / pair
    basis = np.vstack([e1, f1, e2, f2])
    gram = basis @ W @ basis.T

    frame = geo.tangent_frame(params, p)
    xi = xi_basis(alpha_eps(params, p), frame.vectors)
    xi_res = float(np.max(np.abs(np.vstack([X1, Y1, X2, Y2]) @ W @ xi.T)))
    return SymplecticBasis(point=p, basis=basis, gram=gram, raw_pairings=raw, xi_residual=xi_res)
