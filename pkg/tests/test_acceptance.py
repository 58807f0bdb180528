"""One test per acceptance criterion. Each records a pass/fail line, printed at the end of the run.

Run directly (``python3 tests/test_acceptance.py``) to print the lines without pytest.
"""

import contextlib
import io
import random
import time
from fractions import Fraction

import numpy as np
import pytest

import acceptance_log
from reebcz import dynamics
from reebcz import geometry as geo
from reebcz.cli import main as cli_main
from reebcz.errors import DegenerateOrbitError
from reebcz.exact import Angle
from reebcz.geometry import Family, LinkParams
from reebcz.index import (
    RotationBlock,
    RotationPath,
    choose_eps,
    cz_link_closed_form,
    cz_link_simplified,
    cz_link_via_crossing,
    cz_path,
    cz_rotation,
    prepend_loop,
)
from reebcz.lens import lens_orbit_table
from reebcz.ranks import check_thm_pattern, tally_ranks
from reebcz.verify import RunConfig, run_verification


def criterion_1():
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = cli_main(["cz-table", "--n", "2", "--eps", "1/1000", "--n-max", "7", "--format", "csv"])
    rows = [r.split(",") for r in buf.getvalue().strip().splitlines()[1:]]
    minus = [int(r[3]) for r in rows if r[0] == "minus"]
    plus = [int(r[3]) for r in rows if r[0] == "plus"]
    crossing_ok = all(r[2] == r[3] for r in rows)
    ok = code == 0 and crossing_ok and minus == [1, 3, 5, 5, 7, 9, 9] and plus == [1, 3, 3, 5, 7, 7, 9]
    return ok, 1.0, f"minus {minus}, plus {plus}"


def criterion_2():
    count = bad = 0
    for eps in (Fraction(1, 1000), Fraction(1, 997), Fraction(1, 400)):
        for n in range(1, 11):
            p = LinkParams(n, eps, n_max=0)
            for N in range(1, 51):
                for fam in Family:
                    count += 1
                    bad += cz_link_via_crossing(p, fam, N) != cz_link_closed_form(p, fam, N)
    return bad == 0 and count == 3000, 10.0, f"{count - bad}/{count} exact equalities"


def criterion_3():
    count = bad = 0
    for n in range(1, 11):
        for N in range(1, 101):
            p = LinkParams(n, Fraction(1, 10 * N), n_max=0)
            for fam in Family:
                count += 1
                bad += cz_link_simplified(p, fam, N) != cz_link_closed_form(p, fam, N)
    return bad == 0, 10.0, f"{count - bad}/{count} agree at eps = 1/(10N)"


def criterion_4():
    failures = []
    for n in range(1, 9):
        t = tally_ranks(LinkParams(n), 41)
        if not (t.lacunary and check_thm_pattern(t, n) and t.contractible_min_index >= 3):
            failures.append(n)
    return not failures, 5.0, "pattern, lacunarity, contractible bound for n = 1..8" + (f"; failed {failures}" if failures else "")


def criterion_5():
    failures = [
        n for n in range(1, 9) if not lens_orbit_table(n, 1, Fraction(1001, 1000), 41).same_ranks(tally_ranks(LinkParams(n), 41))
    ]
    return not failures, 5.0, "lens table equals link table for n = 1..8" + (f"; differs {failures}" if failures else "")


SWEEP_BOUNDS = {
    "reeb.": ("max", 1e-9),
    "contact.alpha0.": ("min", 1e-6),
    "contact.alpha_eps.": ("min", 1e-6),
    "liouville.": ("max", 1e-7),
    "hamiltonian.omega1_minus_R_eq_dH": ("max", 1e-9),
    "psi.pullback_f": ("max", 1e-12),
    "phi_tilde.": ("max", 1e-12),
}


def criterion_6():
    problems = []
    for n in (1, 2, 5):
        report = run_verification(RunConfig(n=n, samples=1000, seed=0))
        if report.exit_status != 0:
            problems.append(f"n={n} exit {report.exit_status}")
        for prefix, (bound, thr) in SWEEP_BOUNDS.items():
            groups = [s for name, s in report.asserted.items() if name.startswith(prefix)]
            if not groups:
                problems.append(f"n={n} missing {prefix}")
            for s in groups:
                good = s.worst < thr if bound == "max" else s.worst > thr
                if not good or s.count < 1000:
                    problems.append(f"n={n} {s.name} worst {s.worst:.2e} over {s.count}")
    return not problems, 60.0, "identity sweep n in {1, 2, 5} at 1000 samples" + (f"; {problems[:3]}" if problems else "")


def criterion_7():
    worst = 0.0
    for n in (1, 2, 5):
        params = LinkParams(n)
        for orb in dynamics.enumerate_simple_orbits(params):
            T = orb.period.radians
            p = np.array(orb.start, dtype=complex)
            num = dynamics.flow_rk4(params, p, T, T / 1e4)
            exact = dynamics.flow_closed_form(params, p, T)
            worst = max(
                worst,
                np.max(np.abs(num - exact)),
                abs(np.sum(np.abs(num) ** 2) - 1),
                abs(geo.eval_H(params, num) - geo.eval_H(params, p)),
            )
    return worst < 1e-6, 5.0, f"worst RK4 deviation {worst:.2e}"


def criterion_8():
    checked = 0
    degenerate = []
    for n in range(1, 9):
        eps = choose_eps(n, 100)
        params = LinkParams(n, eps, n_max=100)
        for N in range(1, 101):
            for fam in Family:
                res = dynamics.return_map(params, dynamics.orbit(params, fam, N))
                checked += 1
                if not res.nondegenerate:
                    degenerate.append((n, fam.value, N))
    try:
        LinkParams(2, 0)
        zero_rejected = False
    except DegenerateOrbitError:
        zero_rejected = True
    ok = not degenerate and zero_rejected
    return ok, 1.0, f"{checked} return maps nondegenerate; eps = 0 rejected: {zero_rejected}"


def criterion_9():
    rng = random.Random(0)

    def rand_speed():
        q = Fraction(rng.randint(-60, 60), rng.randint(1, 12))
        return q if q else Fraction(1)

    def rand_T():
        return Angle(Fraction(rng.randint(1, 60), rng.randint(1, 12)))

    product = 0
    for _ in range(1000):
        T = rand_T()
        a = RotationPath([rand_speed() for _ in range(rng.randint(1, 3))], T)
        b = RotationPath([rand_speed() for _ in range(rng.randint(1, 3))], T)
        product += cz_path(a + b) == cz_path(a) + cz_path(b)
    loop = 0
    for k in range(-5, 6):
        path = RotationPath([Fraction(1, 3), Fraction(-7, 5)], Angle(Fraction(3, 2)))
        loop += cz_path(prepend_loop(path, k)) == cz_path(path) + 2 * k
    signature = 0
    for num in range(1, 20):
        w = Fraction(num, 10)  # |S| = w*pi < 2*pi over one unit of time
        signature += cz_rotation(RotationBlock(w), Angle(1)) == 1 and cz_rotation(RotationBlock(-w), Angle(1)) == -1
    ok = product == 1000 and loop == 11 and signature == 19
    return ok, 5.0, f"product {product}/1000, loop {loop}/11, signature {signature}/19"


def criterion_10():
    radial = {}
    gram = None
    for n in (1, 2, 3):
        report = run_verification(RunConfig(n=n, samples=200, seed=0))
        radial[n] = report.report_only["radial_Y_tangency"]
        if n == 2:
            gram = report.report_only["symplectic_basis"]
    formula_ok = all(r["max_abs_minus_predicted"] < 1e-12 for r in radial.values())
    pattern_ok = radial[2]["nonzero"] and radial[3]["nonzero"] and not radial[1]["nonzero"]
    gram_ok = gram["matches_standard_antisymmetric"] and abs(gram["min_deviation_from_symmetric_blocks"] - 2) < 1e-8
    detail = (
        f"max|df(Y)| n=1 {radial[1]['max_abs_dfY']:.1e}, n=2 {radial[2]['max_abs_dfY']:.1e}, "
        f"n=3 {radial[3]['max_abs_dfY']:.1e} (= (1-n) z1 z2); Gram standard: {gram['matches_standard_antisymmetric']}"
    )
    return formula_ok and pattern_ok and gram_ok, 120.0, detail


CRITERIA = {k: globals()[f"criterion_{k}"] for k in range(1, 11)}


def evaluate(k: int) -> tuple[bool, str]:
    start = time.perf_counter()
    ok, limit, detail = CRITERIA[k]()
    secs = time.perf_counter() - start
    within = secs < limit
    if not within:
        detail += f"; exceeded {limit:g} s"
    acceptance_log.RESULTS[k] = (ok and within, secs, detail)
    return ok and within, detail


@pytest.mark.parametrize("k", list(CRITERIA))
def test_criterion(k):
    ok, detail = evaluate(k)
    assert ok, detail


if __name__ == "__main__":
    for k in CRITERIA:
        evaluate(k)
    print("\n".join(acceptance_log.lines()))
