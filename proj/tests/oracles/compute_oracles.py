"""Independent reference values frozen into the C++ test suites.

Run with: python3 tests/oracles/compute_oracles.py
Nothing here calls into the library; every number comes from mpmath/scipy.
"""
import mpmath as mp
import numpy as np
from scipy.integrate import solve_ivp

mp.mp.dps = 40


def series_linear(r, m, a=1):
    # u'' + (m-1)/r u' = u, u(0)=a: a * sum (r^2/4)^n / (n! (m/2)_n)
    return a * mp.nsum(lambda n: (mp.mpf(r) ** 2 / 4) ** n / (mp.factorial(n) * mp.rf(mp.mpf(m) / 2, n)), [0, mp.inf])


def ko_from_a(diff, a):
    # int_a^inf dt / sqrt(int_a^t phi), endpoint handled by t = a + s^2;
    # diff(a, h) returns int_a^{a+h} phi in cancellation-free form
    f = lambda s: 2 * s / mp.sqrt(diff(a, s * s))
    return mp.quad(f, [0, 1, 10, mp.inf])


def ko_from_zero(prim, a):
    return mp.quad(lambda t: 1 / mp.sqrt(prim(t)), [a, 2 * a, 10 * a, mp.inf])


def blowup_radius_square(m):
    # phi(u) = u^2, u(0)=1. Phase 1 in r, phase 2 in w = u^{-1/2} which is
    # regular through the blow-up point; R = root of w.
    def rhs(r, y):
        u, up = y
        return [up, u * u - (m - 1) / r * up]
    r0 = 1e-6
    y0 = [1 + r0 ** 2 / (2 * m), r0 / m]
    ev = lambda r, y: y[0] - 1e4
    ev.terminal = True
    sol = solve_ivp(rhs, [r0, 10], y0, method="DOP853", rtol=1e-13, atol=1e-15, events=ev)
    r1 = sol.t[-1]
    u, up = sol.y[:, -1]
    w, wp = u ** -0.5, -0.5 * u ** -1.5 * up

    def rhs_w(r, y):
        w, wp = y
        return [wp, (6 * wp * wp - 1 - 2 * (m - 1) * w * wp / r) / (2 * w)]
    ev2 = lambda r, y: y[0] - 1e-5
    ev2.terminal = True
    sol2 = solve_ivp(rhs_w, [r1, 10], [w, wp], method="DOP853", rtol=1e-13, atol=1e-16, events=ev2)
    r2 = sol2.t[-1]
    w, wp = sol2.y[:, -1]
    return r2 - w / wp


if __name__ == "__main__":
    print("u_lin(1) m=4:", series_linear(1, 4))
    print("2 I1(1):", 2 * mp.besseli(1, 1))
    for rho in [0.25, 0.5, 0.75]:
        print("dirichlet lin m=4 rho", rho, series_linear(rho, 4) / series_linear(1, 4))
    print("dirichlet lin m=4 u(0):", 1 / series_linear(1, 4))
    print("dirichlet lin m=3 u(0):", 1 / series_linear(1, 3))
    prim_sq = lambda t: t ** 3 / 3
    diff_sq = lambda a, h: h * (3 * a * a + 3 * a * h + h * h) / 3
    for a in [0.5, 1, 2]:
        print("L power(1,2) from_a a=", a, ko_from_a(diff_sq, mp.mpf(a)))
    print("KO power(1,2) from_zero a=1:", ko_from_zero(prim_sq, 1), 2 * mp.sqrt(3))
    print("KO power(1,3) from_zero a=1:", ko_from_zero(lambda t: t ** 4 / 4, 1))
    print("KO expm1 from_a a=1:", ko_from_a(lambda a, h: mp.exp(a) * mp.expm1(h) - h, mp.mpf(1)))
    ck = 1 / (2 ** mp.mpf(0.75) * mp.gamma(1.25)) ** 2
    print("c_k A1xA1 k=0.75:", ck)
    print("c_k d=1 k=1:", 1 / mp.sqrt(mp.pi))
    for m in [3, 4, 5]:
        print("R_1 power(1,2) m=", m, repr(blowup_radius_square(m)))
