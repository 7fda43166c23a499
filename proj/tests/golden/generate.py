#!/usr/bin/env python3
"""Regenerates the golden JSON files next to this script.

Every value here comes from mpmath, independently of the C++ code: closed
forms where they exist, adaptive quadrature otherwise.

    python3 tests/golden/generate.py
"""

import json
import random
from pathlib import Path

import mpmath as mp

mp.mp.dps = 30
HERE = Path(__file__).resolve().parent
PI = mp.pi


def dump(name, payload):
    (HERE / name).write_text(json.dumps(payload, indent=1) + "\n")
    print("wrote", name)


def c2(z):
    return [float(mp.re(z)), float(mp.im(z))]


# ---------------------------------------------------------------- cutoffs

def smooth_step(x):
    if x <= 0:
        return mp.mpf(0)
    if x >= 1:
        return mp.mpf(1)
    a = mp.exp(-1 / x)
    b = mp.exp(-1 / (1 - x))
    return a / (a + b)


def psi(t):
    return smooth_step((4 - t * t) / 3)


def phi(t):
    return psi(t) - psi(2 * t)


def eta_c(t):
    return smooth_step((mp.mpf(9) / 16 - t * t) / (mp.mpf(5) / 16))


def beta(t):
    return eta_c(t) - eta_c(2 * t)


def cutoffs():
    pts = [mp.mpf(v) for v in ("0", "0.3", "0.5", "0.6", "0.7", "0.9", "1", "1.1", "1.25", "1.5",
                                "1.75", "1.9", "2", "2.5", "3", "-0.7", "-1.5", "0.55", "0.65", "0.74")]
    rows = []
    for t in pts:
        rows.append({"t": float(t), "psi": float(psi(t)), "phi": float(phi(t)), "psi_c": float(1 - psi(t)),
                     "eta_c": float(eta_c(t)), "beta": float(beta(t))})
    dump("cutoffs.json", {"values": rows})


# ---------------------------------------------------------------- scalar oscillatory integral

def scalar_osc(eta):
    e1, e2, e3, e4 = [mp.mpf(v) for v in eta]

    def f(t):
        ph = e1 * mp.cos(t) + e2 * mp.sin(t) + e3 * mp.cos(2 * t) + e4 * mp.sin(2 * t)
        return mp.expj(-2 * PI * ph)

    a, b = PI / 4, 3 * PI / 4
    size = float(abs(e1) + abs(e2) + 2 * abs(e3) + 2 * abs(e4))
    pieces = max(8, int(4 * size))
    nodes = [a + (b - a) * k / pieces for k in range(pieces + 1)]
    return mp.quad(f, nodes)


def unit_direction(rng):
    v = [rng.gauss(0.0, 1.0) for _ in range(4)]
    n = sum(x * x for x in v) ** 0.5
    return [x / n for x in v]


def scalar():
    etas = [[0, 0, 0, 0], [1, 0, 0, 0], [0.3, -0.7, 1.1, 0.4], [5, 2, -3, 1], [0, 0, 16, 0],
            [20, -10, 5, 7], [-3.5, 0, 0, 12], [0, 40, 0, 0]]
    rng = random.Random(4242)
    for _ in range(2):
        etas.append([1024.0 * c for c in unit_direction(rng)])
    rows = [{"eta": [float(x) for x in e], "value": c2(scalar_osc(e))} for e in etas]
    dump("scalar_osc.json", {"abs_tol": 1e-10, "values": rows})


def measure():
    cases = [(1, 1, 0, 0, 0, [0, 0, 37.5]), (1, 1, 1, 0, 0, [0, 0, 64]), (1, 0.5, 0.3, 1, 0, [2, -1, 5]),
             (0, 0, 0, 0, 0, [3, 4, 0]), (2, 8, 0, 1, 0, [0.5, 0.25, 3]), (-1, 2, 0.5, -1, 1, [1, 1, 1])]
    rows = []
    for b, d, e, k1, k2, xi in cases:
        t1, t2 = mp.mpf(2) ** k1, mp.mpf(2) ** k2
        eta = [t1 * xi[0], t2 * xi[1], (b * t1 ** 2 - d * t2 ** 2) * xi[2], e * t1 * t2 * xi[2]]
        val = mp.expj(2 * PI * (b * t1 ** 2 + d * t2 ** 2) * xi[2]) * scalar_osc(eta)
        rows.append({"b": b, "d": d, "e": e, "k1": k1, "k2": k2, "xi": xi, "value": c2(val)})
    dump("measure_fourier.json", {"values": rows})


# ---------------------------------------------------------------- group Fourier transform

def gft_kernel():
    # f = exp(-(x1^2 + x2^2 + x3^2)); F^{2,3} f(u, v, tau) = exp(-u^2) G(v) G(tau),
    # G(w) = int exp(-t^2) exp(-2 pi i w t) dt by adaptive quadrature.
    cache = {}

    def G(w):
        key = mp.nstr(w, 25)
        if key not in cache:
            cache[key] = mp.quad(lambda t: mp.exp(-t * t) * mp.cos(2 * PI * w * t), [-mp.inf, 0, mp.inf])
        return cache[key]

    lo, hi, n = -8, 8, 128
    h = mp.mpf(hi - lo) / n
    centers = [lo + (i + mp.mpf(1) / 2) * h for i in range(n)]
    rows = []
    for lam in (1.0, -0.5, 2.0):
        for a in range(0, n, 8):
            for b in range(0, n, 8):
                x, y = centers[a], centers[b]
                u, v, tau = x - y, lam * (x + y) / 2, mp.mpf(lam) / 4
                val = mp.exp(-u * u) * G(v) * G(tau)
                rows.append({"lambda": lam, "a": a, "b": b, "value": c2(val)})
    dump("gft_gaussian_kernel.json",
         {"grid": {"lo": lo, "hi": hi, "n": n}, "norm_squared": float((PI / 2) ** mp.mpf(1.5)), "entries": rows})


# ---------------------------------------------------------------- grid and averages

def hdelta():
    delta = mp.mpf("0.25")
    rows = [{"p": p, "norm": float((100 * PI * delta) ** (mp.mpf(1) / p))} for p in (1, 2, 4)]
    dump("hdelta_norms.json", {"delta": float(delta), "values": rows})


def slab_measure(a11, a22, x1, x2, x3, delta):
    # theta-measure of {0 <= x3 - x^T A x / 2 - y^T A y / 2 <= delta}, y = (cos, sin),
    # for the lifted h_delta and diagonal A: the lift cancels the cross term.
    c = x3 - (a11 * x1 * x1 + a22 * x2 * x2) / 2

    def g(t):
        return c - (a11 * mp.cos(t) ** 2 + a22 * mp.sin(t) ** 2) / 2

    # g is smooth and periodic; split at its level crossings.
    grid = [2 * PI * k / 4096 for k in range(4097)]
    pts = set(grid)
    for level in (0, delta):
        for k in range(4096):
            ga, gb = g(grid[k]) - level, g(grid[k + 1]) - level
            if ga == 0:
                pts.add(grid[k])
            elif ga * gb < 0:
                pts.add(mp.findroot(lambda t: g(t) - level, (grid[k], grid[k + 1]), solver="bisect"))
    pts = sorted(pts)
    total = mp.mpf(0)
    for s, t in zip(pts[:-1], pts[1:]):
        mid = g((s + t) / 2)
        if 0 <= mid <= delta:
            total += t - s
    return total


def elliptic_slab():
    delta = mp.mpf("0.25")
    rows = []
    cases = [(1, 1, 0, 0, mp.mpf("0.5") + delta / 2), (1, 1, 0.3, -0.2, mp.mpf("0.7")),
             (1, 2, 0, 0, mp.mpf("0.8")), (1, 2, 0.2, 0.1, mp.mpf("0.95")), (1, 4, 0, 0, mp.mpf("1.3"))]
    for a11, a22, x1, x2, x3 in cases:
        v = slab_measure(mp.mpf(a11), mp.mpf(a22), mp.mpf(x1), mp.mpf(x2), x3, delta)
        rows.append({"a11": a11, "a22": a22, "x": [float(x1), float(x2), float(x3)], "value": float(v)})
    dump("elliptic_slab.json", {"delta": float(delta), "values": rows})


# ---------------------------------------------------------------- van der Corput

def vdc():
    rows = []
    for j in range(4, 13):
        lam = mp.mpf(2) ** j
        # int_{-1}^{1} exp(i lam x^2) dx and int_1^2 exp(i lam x^2 / 2) dx via Fresnel integrals.
        s = mp.sqrt(2 * lam / PI)
        full = 2 * mp.sqrt(PI / (2 * lam)) * (mp.fresnelc(s) + 1j * mp.fresnels(s))
        k = mp.sqrt(lam / PI)
        half = mp.sqrt(PI / lam) * ((mp.fresnelc(2 * k) - mp.fresnelc(k)) + 1j * (mp.fresnels(2 * k) - mp.fresnels(k)))
        rows.append({"lambda": float(lam), "quadratic": float(abs(full)), "half_square": float(abs(half))})
    dump("vdc_fresnel.json", {"values": rows})


# ---------------------------------------------------------------- counterexample oracle

def counterexample_oracle():
    rows = []
    for m in range(1, 7):
        delta = mp.mpf(2) ** (-2 * m + 1)
        for p in (1.5, 2, 4):
            r = 2 * PI * (m * delta * PI) ** (1 / mp.mpf(p)) / (100 * PI * delta) ** (1 / mp.mpf(p))
            rows.append({"m": m, "p": p, "delta": float(delta), "oracle_ratio": float(r)})
    dump("counterexample_oracle.json", {"values": rows})


if __name__ == "__main__":
    cutoffs()
    scalar()
    measure()
    gft_kernel()
    hdelta()
    elliptic_slab()
    vdc()
    counterexample_oracle()
