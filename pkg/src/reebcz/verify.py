"""Sampled verification of the geometric identities, plus the exact certificates, gathered in one report."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np

from . import dynamics, forms
from . import geometry as geo
from .errors import DegenerateOrbitError, NormalizationError
from .exact import as_rational, rational_to_str
from .forms import IdentityCheck, _check
from .geometry import Family, LinkParams
from .index import choose_eps, cz_link_closed_form, cz_link_via_crossing
from .lens import CyclicAction, check_lens_hypersurface

SCHEMA = 1

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_DEGENERATE = 2
EXIT_ENVIRONMENT = 3


@dataclass
class RunConfig:
    n: int = 2
    eps: str = "1/1000"
    n_max: int = 100
    degree_max: int = 41
    samples: int = 1000
    seed: int = 0
    tol_identity: float = geo.TOL_IDENTITY
    tol_onlink: float = geo.TOL_ONLINK
    tol_ode: float = geo.TOL_ODE
    tol_fd: float = geo.TOL_FD
    tol_volume: float = geo.TOL_VOLUME
    rk4_points: int = 5
    a1: str = "1"
    a2: str = "1001/1000"
    fmt: str = "md"

    def __post_init__(self):
        for name in ("tol_identity", "tol_onlink", "tol_ode", "tol_fd", "tol_volume"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if self.samples < 1:
            raise ValueError("sample count must be positive")

    def resolve_eps(self) -> Fraction:
        if str(self.eps).strip().lower() == "auto":
            return choose_eps(self.n, self.n_max)
        return as_rational(self.eps)

    def params(self) -> LinkParams:
        return LinkParams(self.n, self.resolve_eps(), self.n_max)


@dataclass
class IdentitySummary:
    name: str
    count: int = 0
    passed: int = 0
    bound: str = "max"
    threshold: float = 0.0
    worst: float | None = None
    worst_point: list | None = None

    def add(self, c: IdentityCheck):
        self.count += 1
        self.passed += c.passed
        self.bound, self.threshold = c.bound, c.threshold
        worse = self.worst is None or (c.value > self.worst if c.bound == "max" else c.value < self.worst)
        if worse:
            self.worst, self.worst_point = c.value, list(c.point)


@dataclass
class VerificationReport:
    config: dict
    asserted: dict[str, IdentitySummary] = field(default_factory=dict)
    report_only: dict = field(default_factory=dict)
    exact: dict = field(default_factory=dict)
    failures: list[dict] = field(default_factory=list)
    max_failures: int = 50

    def record(self, checks):
        for c in checks:
            self.asserted.setdefault(c.name, IdentitySummary(c.name)).add(c)
            if not c.passed and len(self.failures) < self.max_failures:
                self.failures.append(c.to_json())

    @property
    def ok(self) -> bool:
        checks_ok = all(s.passed == s.count for s in self.asserted.values())
        return checks_ok and all(v.get("pass", True) for v in self.exact.values())

    @property
    def exit_status(self) -> int:
        return EXIT_OK if self.ok else EXIT_MISMATCH

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "config": self.config,
            "asserted": {k: asdict(v) for k, v in sorted(self.asserted.items())},
            "exact": self.exact,
            "report_only": self.report_only,
            "failures": self.failures,
            "exit_status": self.exit_status,
        }

    def to_markdown(self) -> str:
        lines = ["| identity | passed | worst | threshold |", "|:---|---:|---:|---:|"]
        for name, s in sorted(self.asserted.items()):
            op = "<" if s.bound == "max" else ">"
            lines.append(f"| {name} | {s.passed}/{s.count} | {s.worst:.3e} | {op} {s.threshold:g} |")
        lines.append("")
        lines.append("| exact certificate | result |")
        lines.append("|:---|:---|")
        for name, v in self.exact.items():
            lines.append(f"| {name} | {'pass' if v['pass'] else 'FAIL'} |")
        lines.append("")
        lines.append("report-only (never affects the exit status):")
        for name, v in self.report_only.items():
            lines.append(f"- {name}: {_fmt_report(v)}")
        lines.append("")
        lines.append(f"exit status: {self.exit_status}")
        return "\n".join(lines)


def _fmt_report(v) -> str:
    if isinstance(v, dict):
        return ", ".join(f"{k}={_fmt_report(x)}" for k, x in v.items())
    if isinstance(v, float):
        return f"{v:.3e}"
    return str(v)


def thread_count() -> int:
    raw = os.environ.get("REEBCZ_THREADS", "")
    try:
        cap = int(raw)
    except ValueError:
        cap = 4
    return max(1, min(cap, os.cpu_count() or 1))


def _parallel_map(fn, items):
    threads = thread_count()
    if threads == 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


# -- per-point batteries --------------------------------------------------------


def link_point_checks(params: LinkParams, p, cfg: RunConfig) -> list[IdentityCheck]:
    out = []
    out += forms.check_reeb_defining(params, p, tol=cfg.tol_identity)
    out += forms.check_contact_condition(params, p, "alpha0", tol=cfg.tol_volume)
    out += forms.check_contact_condition(params, p, "alpha_eps", tol=cfg.tol_volume)
    out.append(forms.check_hamiltonian_identity(params, p, tol=cfg.tol_identity))
    out.append(forms.check_alpha_eps_pullback(params, p))
    out.append(forms.check_kernel_agreement(params, p, tol=cfg.tol_identity))
    out.append(forms.check_dH_along_reeb(params, p, tol=cfg.tol_identity))
    out.append(forms.check_f_equivariance(params, p, tol=cfg.tol_identity))
    out.append(forms.check_dalpha_fd(params, p, tol=cfg.tol_fd))
    return out


def ambient_checks(params: LinkParams, z, uv, lam: float, cfg: RunConfig) -> list[IdentityCheck]:
    """Identities on C^3 / C^2 at a random (not on-link) point."""
    n = params.n
    u, v = uv
    out = [
        forms.check_liouville(forms.X_LIOUVILLE_OMEGA1, forms.omega1(params), z, tol=cfg.tol_fd),
        forms.check_liouville(forms.Y_RADIAL_C3, forms.omega_c3(), z, tol=cfg.tol_fd),
        forms.check_liouville(forms.Y0_C2, forms.omega_c2(), geo.to_real(np.array([u, v])), tol=cfg.tol_fd),
        forms.check_f_equivariance(params, z, tol=cfg.tol_identity),
    ]
    scale = max(1.0, abs(geo.eval_f(params, z)))
    pull = abs(geo.brieskorn_f(params.exponents, geo.psi_coordinate_change(z)) - geo.eval_f(params, z)) / scale
    out.append(_check("psi.pullback_f", z, pull, cfg.tol_onlink))
    img = geo.phi_tilde(n, u, v)
    out.append(_check("phi_tilde.on_hypersurface", img, abs(geo.eval_f(params, img)), cfg.tol_onlink))
    g = CyclicAction(n)
    moved = geo.phi_tilde(n, *g.apply(u, v))
    out.append(_check("phi_tilde.invariant", img, np.max(np.abs(moved - img)), cfg.tol_onlink))
    fz = geo.eval_f(params, z)
    scaled = geo.eval_f(params, geo.weighted_scale(n, z, lam))
    out.append(_check("f.weighted_homogeneous", z, abs(scaled - lam**2 * fz) / max(1.0, abs(lam**2 * fz)), cfg.tol_onlink))
    out.append(check_lens_hypersurface(n, u, v))
    return out


def flow_checks(params: LinkParams, p, period: float, cfg: RunConfig, label: str) -> list[IdentityCheck]:
    dt = period / 1e4
    exact = dynamics.flow_closed_form(params, p, period)
    num = dynamics.flow_rk4(params, p, period, dt)
    return [
        _check(f"flow.{label}.rk4_vs_closed", p, np.max(np.abs(num - exact)), cfg.tol_ode),
        _check(f"flow.{label}.norm_conserved", p, abs(np.sum(np.abs(num) ** 2) - np.sum(np.abs(p) ** 2)), cfg.tol_ode),
        _check(f"flow.{label}.H_conserved", p, abs(geo.eval_H(params, num) - geo.eval_H(params, p)), cfg.tol_ode),
    ]


def link_invariance_checks(params: LinkParams, p, cfg: RunConfig) -> list[IdentityCheck]:
    period = dynamics.orbit(params, Family.MINUS).period.radians
    out = []
    for t in np.linspace(0.0, 2 * period, 5):
        q = dynamics.flow_closed_form(params, p, t)
        out.append(_check("flow.stays_on_link.f", p, abs(geo.eval_f(params, q)), cfg.tol_identity))
        out.append(_check("flow.stays_on_link.rho", p, abs(np.sum(np.abs(q) ** 2) - 1.0), cfg.tol_identity))
        fq = geo.eval_f(params, q)
        out.append(_check("flow.f_equivariant", p, abs(fq - np.exp(4j * t) * geo.eval_f(params, p)), cfg.tol_identity))
    return out


# -- exact certificates --------------------------------------------------------


def exact_certificates(params: LinkParams, n_max: int) -> dict:
    mismatches = []
    degenerate = []
    for N in range(1, n_max + 1):
        for fam in (Family.MINUS, Family.PLUS):
            orb = dynamics.orbit(params, fam, N)
            try:
                dynamics.return_map(params, orb)
            except DegenerateOrbitError:
                degenerate.append([fam.value, N])
            try:
                if cz_link_via_crossing(params, fam, N) != cz_link_closed_form(params, fam, N):
                    mismatches.append([fam.value, N])
            except DegenerateOrbitError:
                pass
    rejected = [c.label for c in dynamics.candidate_orbits(params) if not c.accepted]
    return {
        "nondegenerate_up_to_n_max": {"pass": not degenerate, "n_max": n_max, "degenerate": degenerate},
        "crossing_equals_closed_form": {"pass": not mismatches, "n_max": n_max, "mismatches": mismatches},
        "simple_orbits": {
            "pass": [o.family.value for o in dynamics.enumerate_simple_orbits(params)] == ["plus", "minus"]
            and rejected == ["gamma0"],
            "rejected": rejected,
        },
    }


# -- report-only -----------------------------------------------------------------


def symplectic_basis_report(params: LinkParams, points) -> dict:
    std, disp, xi_res, skipped = [], [], [], 0
    gram = None
    for p in points:
        try:
            sb = forms.check_symplectic_basis(params, p)
        except NormalizationError:
            skipped += 1
            continue
        if gram is None:
            gram = (np.round(sb.gram, 12) + 0.0).tolist()
        std.append(sb.standard_deviation)
        disp.append(sb.symmetric_deviation)
        xi_res.append(sb.xi_residual)
    return {
        "example_gram": gram,
        "max_deviation_from_standard": max(std) if std else None,
        "min_deviation_from_symmetric_blocks": min(disp) if disp else None,
        "matches_standard_antisymmetric": bool(std) and max(std) < 1e-8,
        "max_xi_span_residual": max(xi_res) if xi_res else None,
        "skipped_points": skipped,
    }


def radial_tangency_report(params: LinkParams, points) -> dict:
    vals = [forms.radial_y_tangency(params, p) for p in points]
    df = [abs(a) for a, _ in vals]
    return {
        "max_abs_dfY": max(df),
        "mean_abs_dfY": float(np.mean(df)),
        "max_abs_minus_predicted": max(abs(a - b) for a, b in vals),
        "predicted": "(1 - n) z1 z2",
        "nonzero": max(df) > 1e-9,
    }


# -- driver -------------------------------------------------------------------


def run_verification(cfg: RunConfig) -> VerificationReport:
    params = cfg.params()
    report = VerificationReport(
        config={
            "n": cfg.n,
            "eps": rational_to_str(params.eps),
            "n_max": cfg.n_max,
            "samples": cfg.samples,
            "seed": cfg.seed,
            "tol_identity": cfg.tol_identity,
            "tol_onlink": cfg.tol_onlink,
            "tol_ode": cfg.tol_ode,
            "tol_fd": cfg.tol_fd,
            "tol_volume": cfg.tol_volume,
        }
    )
    points = geo.sample_link(params, cfg.samples, seed=cfg.seed, tol=cfg.tol_onlink)
    rng = np.random.default_rng(cfg.seed + 1)
    ambient = rng.standard_normal((cfg.samples, 6))
    ambient_z = [geo.to_complex(x) for x in ambient]
    uvs = [tuple(uv) for uv in geo.sample_s3(cfg.samples, rng)]
    lams = rng.uniform(0.3, 3.0, cfg.samples)

    for checks in _parallel_map(lambda p: link_point_checks(params, p, cfg), points):
        report.record(checks)
    batch = list(zip(ambient_z, uvs, lams))
    for checks in _parallel_map(lambda a: ambient_checks(params, a[0], a[1], a[2], cfg), batch):
        report.record(checks)

    for orb in dynamics.enumerate_simple_orbits(params):
        report.record(flow_checks(params, np.array(orb.start), orb.period.radians, cfg, f"gamma_{orb.family.value}"))
    period = dynamics.orbit(params, Family.PLUS).period.radians
    for p in points[: cfg.rk4_points]:
        report.record(flow_checks(params, p, period, cfg, "sample"))
    for p in points[: min(100, len(points))]:
        report.record(link_invariance_checks(params, p, cfg))

    a = params.exponents
    for z in geo.sample_brieskorn(a, min(50, cfg.samples), seed=cfg.seed):
        report.record(forms.check_alpha1_reeb(a, z, tol=cfg.tol_identity))
        for t in (0.0, 0.5, 1.0):
            report.record([forms.check_brieskorn_alpha_t(a, t, z, tol=cfg.tol_volume)])

    report.exact = exact_certificates(params, cfg.n_max)
    report.report_only = {
        "symplectic_basis": symplectic_basis_report(params, points[: min(200, len(points))]),
        "radial_Y_tangency": radial_tangency_report(params, points),
    }
    return report
