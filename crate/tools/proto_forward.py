#!/usr/bin/env python3
"""End-to-end prototype of the 1D ATEM forward pipeline.

Chain: rTE recursion -> Hankel J1 filter (elevated circular loop) ->
log-omega table of Im[B_z] -> cubic spline -> sine filter -> step-off
dB_z/dt(t).  Validated against the closed-form half-space response to lock
signs/conventions before the Rust port.
"""

import numpy as np
from scipy.special import erf
from scipy.interpolate import CubicSpline
from gen_filters import design, mellin_response_j, mellin_response_sine

MU0 = 4.0e-7 * np.pi


def rte(lam, omega, sigma, d):
    """TE reflection coefficient at the surface, e^{+i omega t} convention.

    lam: array of horizontal wavenumbers; sigma: conductivities top-down;
    d: thicknesses (len = len(sigma)-1, last layer is a half-space).
    """
    iwm = 1j * omega * MU0
    u = np.sqrt(lam[None, :] ** 2 + iwm * np.asarray(sigma)[:, None])
    yhat = u / iwm                      # intrinsic admittance per layer
    y = yhat[-1].copy()                 # surface admittance of the stack, bottom-up
    for l in range(len(sigma) - 2, -1, -1):
        th = np.tanh(u[l] * d[l])
        y = yhat[l] * (y + yhat[l] * th) / (yhat[l] + y * th)
    y0 = lam / iwm                      # free space above the ground
    return (y0 - y) / (y0 + y)


def hz_omega(omega, sigma, d, a, h, z, base_j1, w_j1, current=1.0):
    """Secondary H_z on the loop axis: (I a / 2) int rTE e^{-lam(z+h)} lam J1(lam a) dlam."""
    lam = base_j1 / a
    r = rte(lam, omega, sigma, d)
    kern = r * np.exp(-lam * (z + h)) * lam
    return (current * a / 2.0) * np.dot(kern, w_j1) / a


def step_dbdt(ts, sigma, d, a, h, z, base_j1, w_j1, base_s, w_s,
              current=1.0, per_decade=10):
    """Step-off dB_z/dt(t) = (2/pi) int_0^inf Im[B_z(omega)] sin(omega t) domega."""
    ts = np.asarray(ts)
    w_lo = base_s[0] / ts.max()
    w_hi = base_s[-1] / ts.min()
    n = int(np.ceil(np.log10(w_hi / w_lo) * per_decade)) + 1
    om = np.logspace(np.log10(w_lo), np.log10(w_hi), n)
    imb = np.array([
        MU0 * hz_omega(o, sigma, d, a, h, z, base_j1, w_j1, current).imag
        for o in om
    ])
    spl = CubicSpline(np.log(om), imb, bc_type="natural")

    out = np.empty_like(ts)
    for i, t in enumerate(ts):
        w = base_s / t
        kern = spl(np.log(w))
        out[i] = (2.0 / np.pi) * np.dot(kern, w_s) / t
    return out


def halfspace_dbdt(ts, rho, a, current=1.0):
    """Closed-form central-loop step-off dB_z/dt on a homogeneous half-space."""
    sigma = 1.0 / rho
    theta = np.sqrt(MU0 * sigma / (4.0 * ts))
    x = theta * a
    return -(current / (sigma * a ** 3)) * (
        3.0 * erf(x) - (2.0 / np.sqrt(np.pi)) * x * (3.0 + 2.0 * x * x) * np.exp(-x * x)
    )


def main():
    bj, wj = design(lambda k: mellin_response_j(1.0, k), 201, np.log(10) / 12)
    bs, ws = design(mellin_response_sine, 161, np.log(10) / 10)

    a = 10.0
    ts = np.logspace(np.log10(1e-4), np.log10(5e-3), 15)
    for rho in (10.0, 100.0, 1000.0):
        got = step_dbdt(ts, [1.0 / rho], [], a, 0.0, 0.0, bj, wj, bs, ws)
        want = halfspace_dbdt(ts, rho, a)
        rel = np.abs(got - want) / np.abs(want)
        print(f"rho={rho:7.1f}: max rel {rel.max():.3e}  med {np.median(rel):.3e}")
        if rho == 100.0:
            for t, g, w in zip(ts[::4], got[::4], want[::4]):
                print(f"   t={t:.3e}  got={g:+.6e}  want={w:+.6e}")
    # late-time slope on 100 ohm-m
    tl = np.logspace(np.log10(3e-3), np.log10(8e-3), 8)
    g = step_dbdt(tl, [0.01], [], a, 0.0, 0.0, bj, wj, bs, ws)
    slope = np.polyfit(np.log(tl), np.log(np.abs(g)), 1)[0]
    print(f"late-time slope: {slope:.4f} (expect ~ -2.5)")

    # elevated two-layer model sanity (no oracle, just finiteness/shape)
    g2 = step_dbdt(ts, [0.1, 0.01], [50.0], a, 40.0, 40.0, bj, wj, bs, ws)
    print("two-layer elevated:", g2[:3], "all finite:", np.all(np.isfinite(g2)))


if __name__ == "__main__":
    main()
