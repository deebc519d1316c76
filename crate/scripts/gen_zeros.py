#!/usr/bin/env python3
"""Generate the bundled table of Riemann zeta zero ordinates.

Low zeros (n <= LOW) come from mpmath.zetazero. Higher zeros are bracketed by
sign changes of Hardy's Z(t) on a fine grid and refined by bisection + secant,
with Z evaluated by the Riemann-Siegel formula including corrections C0..C4.

Usage: gen_zeros.py COUNT OUT
"""
import sys
import math

import mpmath
import numpy as np

LOW = 600
STEP = 0.02
TAYLOR_DEG = 80


def psi_derivative_polys():
    mpmath.mp.dps = 60
    psi = lambda p: mpmath.cos(2 * mpmath.pi * (p * p - p - mpmath.mpf(1) / 16)) / mpmath.cos(2 * mpmath.pi * p)
    coeffs = mpmath.taylor(psi, mpmath.mpf(1) / 2, TAYLOR_DEG)
    base = np.polynomial.Polynomial([float(c) for c in coeffs])
    # keep the derivative chain in mpmath precision
    mp_coeffs = list(coeffs)

    def deriv(k):
        c = mp_coeffs
        for _ in range(k):
            c = [c[i] * i for i in range(1, len(c))]
        return np.polynomial.Polynomial([float(x) for x in c])

    d = {k: deriv(k) for k in range(0, 13)}
    pi = math.pi
    c0 = d[0]
    c1 = -d[3] / (96 * pi**2)
    c2 = d[2] / (64 * pi**2) + d[6] / (18432 * pi**4)
    c3 = -d[1] / (64 * pi**2) - d[5] / (3840 * pi**4) - d[9] / (5308416 * pi**6)
    c4 = (d[0] / (128 * pi**2) + 19 * d[4] / (24576 * pi**4)
          + 11 * d[8] / (5898240 * pi**6) + d[12] / (2038431744 * pi**8))
    return [c0, c1, c2, c3, c4]


CORR = psi_derivative_polys()


def theta(t):
    return (t / 2 * np.log(t / (2 * np.pi)) - t / 2 - np.pi / 8
            + 1 / (48 * t) + 7 / (5760 * t**3) + 31 / (80640 * t**5))


def z_rs(t):
    t = np.asarray(t, dtype=np.float64)
    a = np.sqrt(t / (2 * np.pi))
    n_terms = np.floor(a).astype(np.int64)
    p = a - n_terms
    th = theta(t)
    out = np.zeros_like(t)
    nmax = int(n_terms.max())
    for n in range(1, nmax + 1):
        mask = n_terms >= n
        out[mask] += np.cos(th[mask] - t[mask] * math.log(n)) / math.sqrt(n)
    out *= 2
    x = p - 0.5
    w = 1.0 / a
    corr = np.zeros_like(t)
    wk = np.ones_like(t)
    for ck in CORR:
        corr += ck(x) * wk
        wk = wk * w
    sign = np.where((n_terms - 1) % 2 == 0, 1.0, -1.0)
    return out + sign * corr / np.sqrt(a)


def refine(lo, hi, flo):
    for _ in range(45):
        mid = 0.5 * (lo + hi)
        fm = z_rs(mid)
        same = np.sign(fm) == np.sign(flo)
        lo = np.where(same, mid, lo)
        flo = np.where(same, fm, flo)
        hi = np.where(same, hi, mid)
    return 0.5 * (lo + hi)


def main():
    count = int(sys.argv[1])
    out = sys.argv[2]
    mpmath.mp.dps = 25
    low = [float(mpmath.zetazero(n).imag) for n in range(1, LOW + 1)]
    start = 0.5 * (low[-1] + float(mpmath.zetazero(LOW + 1).imag))
    # rough upper end from the counting function
    t_end = start
    while True:
        tt = t_end / (2 * math.pi)
        if tt * math.log(tt) - tt + 7 / 8 > count + 10:
            break
        t_end += 50.0
    zeros = list(low)
    chunk = 200000
    grid_start = start
    while len(zeros) < count and grid_start < t_end:
        g = grid_start + STEP * np.arange(chunk + 1)
        zg = z_rs(g)
        idx = np.nonzero(np.sign(zg[:-1]) != np.sign(zg[1:]))[0]
        roots = refine(g[idx], g[idx + 1], zg[idx])
        zeros.extend(roots.tolist())
        grid_start = g[-1]
        print(f"t={grid_start:.1f} zeros={len(zeros)}", file=sys.stderr)
    zeros = zeros[:count]
    with open(out, "w") as f:
        f.write(f"# first {count} ordinates of nontrivial zeros of zeta(s); see scripts/gen_zeros.py\n")
        for z in zeros:
            f.write(f"{z:.9f}\n")


if __name__ == "__main__":
    main()
