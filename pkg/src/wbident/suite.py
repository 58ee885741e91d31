"""Grid verification of the central identity and orchestration of the full
check suite.

The central identity under test:

    W_{n+1/2, ik}(2x) = x Lambda(x) K_{1/2+ik}(x) + x conj(Lambda)(x) K_{1/2-ik}(x)

with Lambda built from the coefficient recurrence.  The left side is
evaluated through the Whittaker connection formula, the right side through
the quadrature Bessel-K evaluator, so the two sides share no code path.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

from .config import EvalConfig, default_config
from .core import SQRT_PI
from .kernels import OrderParams, bessel_k_quad, bessel_k_via_w, whittaker_w
from .lambda_poly import (CoeffVector, coeffs_from_recurrence,
                          collocation_oracle, check_second_order,
                          first_order_residuals, laguerre_closed_form)
from .ode import (coupled_residual, indicial_reports, lambda_reconstruction,
                  product_solution_check, resolve_constants,
                  constants_printed_system, trial_condition_check)
from .report import ResidualReport, VerificationSuiteResult

DEFAULT_N_MAX = 8
DEFAULT_K_SET = (0.1, 0.5, 1.0, 2.0)
DEFAULT_X_GRID = (0.25, 0.5, 1.0, 2.0, 4.0, 8.0)
IDENTITY_X_RANGE = (0.25, 8.0)


def verify_identity(params: OrderParams, x_grid,
                    config: EvalConfig | None = None) -> ResidualReport:
    """Relative residual |LHS - RHS| / |LHS| of the central identity at each
    grid point.  k = 0 is routed through the closed Laguerre forms; small
    nonzero k is refused in double-precision mode (gamma-prefactor
    cancellation makes the connection formula meaningless there)."""
    config = config or default_config()
    n, k = params.n, params.k
    x_grid = [float(x) for x in x_grid]
    lo, hi = IDENTITY_X_RANGE
    if any(x < lo or x > hi for x in x_grid):
        raise ValueError(f"identity grid must lie in [{lo}, {hi}]")
    if k < 0:
        raise ValueError("verify_identity requires k >= 0")
    if config.k_zero_threshold < k < config.k_refuse_threshold:
        raise ValueError(
            f"0 < k = {k} < {config.k_refuse_threshold} is refused in "
            "double-precision mode (cancellation regime); use the oracle")

    if k <= config.k_zero_threshold:
        cv = laguerre_closed_form(n)
    else:
        cv = coeffs_from_recurrence(params, config)
    lam = cv.lam_poly()
    residuals = []
    for x in x_grid:
        kp = bessel_k_quad(complex(0.5, k), x, config)
        lam_x = lam.evaluate(x)
        rhs = (lam_x * kp + (lam_x * kp).conjugate()).real
        lhs = whittaker_w(n + 0.5, 1j * k, 2 * x, config)
        residuals.append(abs(lhs - rhs) / abs(lhs))
    return ResidualReport(
        check_name="identity",
        params=params,
        grid=x_grid,
        residuals=residuals,
        threshold=config.identity_tol,
    )


def kernel_cross_reports(k_set, x_grid, n_max,
                         config: EvalConfig) -> list[ResidualReport]:
    """Cross-check the two K evaluators and the realness of W on the grid."""
    reports = []
    for k in k_set:
        if k <= config.k_zero_threshold:
            continue
        nu = complex(0.5, k)
        cross = []
        for x in x_grid:
            kq = bessel_k_quad(nu, x, config)
            kw = bessel_k_via_w(nu, x, config)
            cross.append(abs(kq - kw) / abs(kq))
        reports.append(ResidualReport(
            check_name="kernel-cross-bessel-k",
            params=OrderParams(n=0, k=k),
            grid=list(x_grid), residuals=cross,
            threshold=config.kernel_cross_tol))
        grid, realness = [], []
        for n in range(n_max + 1):
            for x in x_grid:
                w = whittaker_w(n + 0.5, 1j * k, 2 * x, config)
                grid.append(float(x))
                realness.append(abs(w.imag) / abs(w))
        reports.append(ResidualReport(
            check_name="whittaker-w-realness",
            params=OrderParams(n=n_max, k=k),
            grid=grid, residuals=realness,
            threshold=config.realness_tol,
            notes=[f"x grid repeated for n = 0..{n_max}"]))
    return reports


def coefficient_reports(params: OrderParams,
                        config: EvalConfig) -> tuple[CoeffVector, list[ResidualReport]]:
    """Construct the coefficients and report their defining invariants:
    top coefficient 2^n/sqrt(pi) real, first-order recurrence residuals,
    degree and zero-constant structure."""
    cv = coeffs_from_recurrence(params, config)
    n = params.n
    top = cv.a_top
    expected = 2 ** n / SQRT_PI
    residuals = [abs(top - expected) / expected,
                 abs(top.imag) / abs(top)]
    residuals += first_order_residuals(cv)
    grid = [float(j) for j in range(len(residuals))]
    rep = ResidualReport(
        check_name="coefficient-invariants",
        params=params, grid=grid, residuals=residuals,
        threshold=config.top_coeff_tol,
        notes=["entries: top-coeff deviation, top-coeff imaginary part, "
               "then first-order recurrence residuals m=1..n"])
    return cv, [rep]


def oracle_equivalence_report(params: OrderParams, config: EvalConfig,
                              precision: str) -> ResidualReport:
    """Collocation-fitted coefficients vs recurrence-generated ones."""
    cv = coeffs_from_recurrence(params, config)
    fit = collocation_oracle(params, config=config, precision=precision)
    residuals = [abs(f - a) / abs(a) for f, a in zip(fit.a, cv.a)]
    return ResidualReport(
        check_name="oracle-equivalence",
        params=params,
        grid=[float(m) for m in range(1, params.n + 2)],
        residuals=residuals,
        threshold=config.oracle_match_tol,
        notes=[f"collocation precision mode: {precision}"])


def run_suite(config: EvalConfig | None = None,
              n_max: int = DEFAULT_N_MAX,
              k_set=DEFAULT_K_SET,
              x_grid=DEFAULT_X_GRID,
              use_oracle: bool = False,
              max_workers: int = 4) -> VerificationSuiteResult:
    """Execute, in order: kernel cross-checks, coefficient construction and
    invariants, oracle equivalence, coupled residual, identity grid, ODE4
    basis checks, indicial analysis, constants and reconstruction.

    Individual check failures are recorded and the suite continues; kernel
    non-convergence aborts (it poisons every downstream number).  Advisory
    failures land in the discrepancy ledger, not the exit status.
    """
    config = config or default_config()
    if n_max > 25:
        raise ValueError("n_max capped at 25")
    k_set = tuple(float(k) for k in k_set)
    x_grid = tuple(float(x) for x in x_grid)
    ks_pos = [k for k in k_set if k > config.k_zero_threshold]
    reports: list[ResidualReport] = []
    ledger: list[str] = []

    # 1. kernel cross-checks
    reports += kernel_cross_reports(k_set, x_grid, n_max, config)

    # 2 + 4 + 5. coefficients, coupled equation, identity; concurrent over
    # (n, k) cells -- all operations are pure.
    def cell(task):
        n, k = task
        params = OrderParams(n=n, k=k)
        cv, reps = coefficient_reports(params, config)
        reps.append(coupled_residual(cv))
        reps.append(check_second_order(cv, "printed"))
        reps.append(check_second_order(cv, "derived"))
        reps.append(verify_identity(params, x_grid, config))
        return reps

    tasks = [(n, k) for n in range(n_max + 1) for k in ks_pos]
    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        for reps in pool.map(cell, tasks):
            reports += reps
    if not ks_pos or 0.0 in k_set:
        for n in range(n_max + 1):
            params = OrderParams(n=n, k=0.0)
            reports.append(verify_identity(params, x_grid, config))

    # 3. oracle equivalence
    oracle_n = min(n_max, 8 if use_oracle else 2)
    oracle_ks = [k for k in ks_pos if k >= 0.5] or ks_pos
    precision = "auto" if use_oracle else "double"
    for n in range(oracle_n + 1):
        for k in oracle_ks:
            reports.append(oracle_equivalence_report(
                OrderParams(n=n, k=k), config, precision))

    # 6. fourth-order basis checks
    ode_ks = [k for k in ks_pos if 0.4 <= k <= 1.5][:2] or ks_pos[:1]
    for n in range(min(n_max, 4) + 1):
        for k in ode_ks:
            reports.append(product_solution_check(
                OrderParams(n=n, k=k), config, variant="corrected"))
    if ode_ks:
        reports.append(product_solution_check(
            OrderParams(n=1, k=ode_ks[0]), config, variant="printed"))
        reports += trial_condition_check(
            OrderParams(n=2, k=ode_ks[0]), [x for x in x_grid if 0.5 <= x <= 6],
            config)

    # 7. indicial analysis
    for k in ks_pos:
        reports += indicial_reports(OrderParams(n=2, k=k), config)

    # 8. constants and reconstruction
    recon_grid = [x for x in x_grid if 0.5 <= x <= 6] or [0.5, 1.0, 2.0, 4.0]
    for n in range(min(n_max, 6) + 1):
        for k in ks_pos:
            params = OrderParams(n=n, k=k)
            reports.append(lambda_reconstruction(params, recon_grid, config))
    if ks_pos:
        params = OrderParams(n=min(n_max, 2), k=ks_pos[-1])
        _, _, notes = resolve_constants(params, config)
        ledger += [f"constants n={params.n} k={params.k}: {note}" for note in notes]
        reports.append(lambda_reconstruction(
            params, recon_grid, config,
            constants=constants_printed_system(params),
            check_name="reconstruction-printed-constants"))
    reports.append(lambda_reconstruction(
        OrderParams(n=min(n_max, 2), k=0.0), recon_grid, config))

    for rep in reports:
        if rep.advisory and not rep.passed:
            ledger.append(
                f"advisory check {rep.check_name} "
                f"(n={rep.params.n if rep.params else '-'}, "
                f"k={rep.params.k if rep.params else '-'}): "
                f"max residual {rep.max_residual:.3e} over threshold "
                f"{rep.threshold:.1e}")
    return VerificationSuiteResult(reports=reports, ledger=sorted(ledger))
