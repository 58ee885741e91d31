"""High-precision reference evaluators (the slow path).

Brute-force term summation of the same series the production kernels use,
run at 50-digit working precision under mpmath.  Values from this module are
the ground truth for derived expected values and for regimes double precision
cannot reach (large x in the connection formula, ill-conditioned collocation
fits at high degree).
"""

from __future__ import annotations

import math
from contextlib import contextmanager

import mpmath as mp

from .config import EvalConfig, default_config
from .errors import ConvergenceError
from .kernels import OrderParams


@contextmanager
def _dps(config: EvalConfig):
    with mp.workdps(config.oracle_dps):
        yield


def _series_tol(config: EvalConfig):
    return mp.mpf(10) ** (-(config.oracle_dps - 5))


def kummer_m(a, b, z, config: EvalConfig | None = None):
    """Brute-force Kummer series at oracle precision; returns mpmath mpc."""
    config = config or default_config()
    with _dps(config):
        a = mp.mpc(a)
        b = mp.mpc(b)
        z = mp.mpc(z)
        tol = _series_tol(config)
        s = mp.mpc(1)
        t = mp.mpc(1)
        for m in range(20 * config.series_max_terms):
            t = t * (a + m) / (b + m) * z / (m + 1)
            s += t
            if m > 6 and abs(t) < tol * abs(s):
                return s
        raise ConvergenceError("oracle Kummer series did not converge")


def whittaker_m(kappa, mu, z, config: EvalConfig | None = None):
    config = config or default_config()
    with _dps(config):
        kappa = mp.mpc(kappa)
        mu = mp.mpc(mu)
        z = mp.mpf(z)
        half = mp.mpf(1) / 2
        return (mp.e ** (-z / 2) * z ** (half + mu)
                * kummer_m(half + mu - kappa, 1 + 2 * mu, z, config))


def whittaker_w(kappa, mu, z, config: EvalConfig | None = None):
    """Connection-formula W at oracle precision (generic 2*mu only)."""
    config = config or default_config()
    with _dps(config):
        kappa = mp.mpc(kappa)
        mu = mp.mpc(mu)
        half = mp.mpf(1) / 2
        return (mp.gamma(-2 * mu) / mp.gamma(half - mu - kappa)
                * whittaker_m(kappa, mu, z, config)
                + mp.gamma(2 * mu) / mp.gamma(half + mu - kappa)
                * whittaker_m(kappa, -mu, z, config))


def bessel_i(nu, x, config: EvalConfig | None = None):
    config = config or default_config()
    with _dps(config):
        nu = mp.mpc(nu)
        x = mp.mpf(x)
        tol = _series_tol(config)
        s = mp.mpc(0)
        m = 0
        while True:
            t = (x / 2) ** (2 * m + nu) / (mp.factorial(m) * mp.gamma(m + nu + 1))
            s += t
            m += 1
            if m > 6 and abs(t) < tol * abs(s):
                return s
            if m > 20 * config.series_max_terms:
                raise ConvergenceError("oracle Bessel-I series did not converge")


def bessel_k(nu, x, config: EvalConfig | None = None):
    """K_nu = (pi/2) (I_{-nu} - I_nu) / sin(pi nu), independent of quadrature."""
    config = config or default_config()
    with _dps(config):
        nu = mp.mpc(nu)
        return (mp.pi / 2 * (bessel_i(-nu, x, config) - bessel_i(nu, x, config))
                / mp.sin(mp.pi * nu))


def gamma(z, config: EvalConfig | None = None):
    config = config or default_config()
    with _dps(config):
        return mp.gamma(mp.mpc(z))


def identity_residual(params: OrderParams, cv_coeffs, x,
                      config: EvalConfig | None = None) -> float:
    """Relative residual of the central identity at x, everything at oracle
    precision except the supplied double-precision coefficients."""
    config = config or default_config()
    n, k = params.n, params.k
    with _dps(config):
        ik = mp.mpc(0, k)
        xx = mp.mpf(x)
        lam = mp.mpc(0)
        for m, a in enumerate(cv_coeffs, start=1):
            lam += mp.mpc(a) * xx ** m
        kp = bessel_k(mp.mpf(1) / 2 + ik, xx, config)
        rhs = lam * kp + mp.conj(lam) * mp.conj(kp)
        lhs = whittaker_w(n + mp.mpf(1) / 2, ik, 2 * xx, config)
        return float(abs(lhs - rhs) / abs(lhs))


def large_x_w_ratio(params: OrderParams, x: float = 30.0,
                    config: EvalConfig | None = None) -> complex:
    """W_{n+1/2,ik}(2x) / ((2x)^{n+1/2} e^{-x}) at oracle precision."""
    config = config or default_config()
    n, k = params.n, params.k
    with _dps(config):
        xx = mp.mpf(x)
        w = whittaker_w(n + mp.mpf(1) / 2, mp.mpc(0, k), 2 * xx, config)
        return complex(w / ((2 * xx) ** (n + mp.mpf(1) / 2) * mp.e ** (-xx)))


def small_x_w_defect(params: OrderParams, x: float,
                     config: EvalConfig | None = None) -> float:
    """|W(2x) - leading two-term small-x form| / x^{1/2} at oracle precision;
    tends to 0 like x as x -> 0."""
    config = config or default_config()
    n, k = params.n, params.k
    with _dps(config):
        ik = mp.mpc(0, k)
        xx = mp.mpf(x)
        w = whittaker_w(n + mp.mpf(1) / 2, ik, 2 * xx, config)
        lead = mp.gamma(-2 * ik) / mp.gamma(-ik - n) * (2 * xx) ** (mp.mpf(1) / 2 + ik)
        lead = lead + mp.conj(lead)
        return float(abs(w - lead) / mp.sqrt(xx))


def collocation_fit(params: OrderParams, xs,
                    config: EvalConfig | None = None):
    """Least-squares fit of the identity at the given points, entirely at
    oracle precision.  Returns (coefficients a_1..a_{n+1}, max relative
    misfit).  Conditioning that would sink a double-precision solve is
    harmless at 50 digits."""
    config = config or default_config()
    n, k = params.n, params.k
    with _dps(config):
        ik = mp.mpc(0, k)
        half = mp.mpf(1) / 2
        rows = mp.matrix(len(xs), 2 * (n + 1))
        rhs = mp.matrix(len(xs), 1)
        for i, x in enumerate(xs):
            xx = mp.mpf(x)
            kp = bessel_k(half + ik, xx, config)
            w = mp.re(whittaker_w(n + half, ik, 2 * xx, config))
            scale = 1 / abs(w)
            xm = xx
            for m in range(1, n + 2):
                rows[i, 2 * (m - 1)] = 2 * xm * mp.re(kp) * scale
                rows[i, 2 * (m - 1) + 1] = -2 * xm * mp.im(kp) * scale
                xm *= xx
            rhs[i] = w * scale
        sol = mp.qr_solve(rows, rhs)[0]
        fitted = [complex(float(sol[2 * j]), float(sol[2 * j + 1]))
                  for j in range(n + 1)]
        worst = mp.mpf(0)
        for i in range(len(xs)):
            got = sum(rows[i, j] * sol[j] for j in range(2 * (n + 1)))
            worst = max(worst, abs(got - rhs[i]) / abs(rhs[i]))
        return fitted, float(worst)
