#!/usr/bin/env python3
"""Re-validate the final transform profiles against the frozen filter tables.

Parses filters_generated.rs, rebuilds the accurate and training pipelines as
they will exist in Rust, and prints max/median relative error against the
closed-form half-space step-off response.  Pins the numbers the Rust port
must reproduce.
"""

import re
import numpy as np
from scipy.special import erf
from scipy.interpolate import CubicSpline

MU0 = 4.0e-7 * np.pi


def load_filters(path="/root/crate/tools/filters_generated.rs"):
    src = open(path).read()
    out = {}
    for m in re.finditer(
        r"pub static (\w+): DigitalFilter = DigitalFilter \{\s*spacing: ([0-9eE+.-]+),\s*base: &\[(.*?)\],\s*weights: &\[(.*?)\],\s*\}",
        src,
        re.S,
    ):
        name, sp, b, w = m.groups()
        base = np.array([float(x) for x in b.replace("\n", " ").split(",") if x.strip()])
        wts = np.array([float(x) for x in w.replace("\n", " ").split(",") if x.strip()])
        out[name] = (float(sp), base, wts)
    return out


def rte(lam, omega, sigma, d):
    iwm = 1j * omega * MU0
    u = np.sqrt(lam[None, :] ** 2 + iwm * np.asarray(sigma)[:, None])
    yhat = u / iwm
    y = yhat[-1].copy()
    for l in range(len(sigma) - 2, -1, -1):
        x = u[l] * d[l]
        th = np.where(x.real > 20.0, 1.0, np.tanh(np.where(x.real > 20.0, 0.0, x)))
        y = yhat[l] * (y + yhat[l] * th) / (yhat[l] + y * th)
    y0 = lam / iwm
    return (y0 - y) / (y0 + y)


def neg_imb_table(om, sigma, d, a, h, z, base_j1, w_j1, lam_lo=0.0, lam_cut=np.inf):
    """-Im[B_z(omega)] per unit current on the loop axis, with lambda trims."""
    lam = base_j1 / a
    wj = w_j1
    zh = z + h
    keep = np.ones(lam.shape, bool)
    if lam_cut < np.inf and zh > 0:
        keep &= lam * zh < lam_cut
    if lam_lo > 0.0:
        keep &= lam > lam_lo / max(zh, a)
    lam, wj = lam[keep], wj[keep]
    out = np.empty_like(om)
    for i, o in enumerate(om):
        r = rte(lam, o, sigma, d)
        kern = r * np.exp(-lam * zh) * lam
        hz = (a / 2.0) * np.dot(kern, wj) / a
        out[i] = -(MU0 * hz).imag
    return out


def f_accurate(ts, sigma, d, a, h, z, flt, mode="linear"):
    """Accurate profile: table at the sine-filter spacing, interp of -Im B."""
    sp_s, bs, ws = flt["SINE_361"]
    _, bj, wj = flt["HANKEL_J1_201"]
    ts = np.asarray(ts)
    w_lo = bs[0] / ts.max()
    n = int(np.ceil(np.log(bs[-1] / ts.min() / w_lo) / sp_s)) + 2
    om = w_lo * np.exp(sp_s * np.arange(n))
    nimb = neg_imb_table(om, sigma, d, a, h, z, bj, wj)
    ln_om = np.log(om)
    if mode == "linear":
        interp = lambda x: np.interp(x, ln_om, nimb, left=0.0, right=0.0)
    elif mode == "cubic":
        spl = CubicSpline(ln_om, nimb, bc_type="natural")
        interp = lambda x: np.where((x < ln_om[0]) | (x > ln_om[-1]), 0.0, spl(x))
    elif mode == "loglog":
        floor = 1e-13 * nimb.max()
        spl = CubicSpline(ln_om, np.log(np.maximum(nimb, floor)), bc_type="natural")
        interp = lambda x: np.where(
            (x < ln_om[0]) | (x > ln_om[-1]), 0.0, np.exp(spl(np.clip(x, ln_om[0], ln_om[-1])))
        )
    out = np.empty_like(ts)
    for i, t in enumerate(ts):
        kern = interp(np.log(bs / t))
        # f(t) = -(2/pi) int Im[F] sin(wt) dw with F = -B  =>  +(2/pi) int (-Im B) ... sign:
        # Im F = -Im B = nimb; f = -(2/pi) int nimb sin = -(2/pi) sum W nimb / t
        out[i] = -(2.0 / np.pi) * np.dot(kern, ws) / t
    return out


def f_training(ts, sigma, d, a, h, z, flt, per_dec=4, clip=1e-3,
               lam_lo=1e-4, lam_cut=36.0):
    sp_s, bs, ws = flt["SINE_361"]
    _, bj, wj = flt["HANKEL_J1_201"]
    ts = np.asarray(ts)
    w_lo = max(bs[0] / ts.max(), clip / ts.max())
    w_hi = bs[-1] / ts.min()
    dv = np.log(10.0) / per_dec
    n = int(np.ceil(np.log(w_hi / w_lo) / dv)) + 2
    om = w_lo * np.exp(dv * np.arange(n))
    nimb = neg_imb_table(om, sigma, d, a, h, z, bj, wj, lam_lo, lam_cut)
    ln_om = np.log(om)
    floor = 1e-13 * nimb.max()
    spl = CubicSpline(ln_om, np.log(np.maximum(nimb, floor)), bc_type="natural")
    out = np.empty_like(ts)
    for i, t in enumerate(ts):
        x = np.log(bs / t)
        kern = np.where((x < ln_om[0]) | (x > ln_om[-1]), 0.0,
                        np.exp(spl(np.clip(x, ln_om[0], ln_om[-1]))))
        out[i] = -(2.0 / np.pi) * np.dot(kern, ws) / t
    return out


def halfspace_dbdt(ts, rho, a, current=1.0):
    sigma = 1.0 / rho
    x = np.sqrt(MU0 * sigma / (4.0 * ts)) * a
    return -(current / (sigma * a ** 3)) * (
        3.0 * erf(x) - (2.0 / np.sqrt(np.pi)) * x * (3.0 + 2.0 * x * x) * np.exp(-x * x)
    )


def main():
    flt = load_filters()
    for k, (sp, b, w) in flt.items():
        print(f"{k}: n={len(b)} spacing={sp:.6f}")
    a = 10.0
    ts = np.logspace(np.log10(1e-4), np.log10(5e-3), 25)
    print("\n== accurate profile, A1 band [1e-4, 5e-3] s, central loop a=10 ==")
    for mode in ("linear", "cubic"):
        worst = 0.0
        for rho in (10.0, 100.0, 1000.0):
            got = f_accurate(ts, [1.0 / rho], [], a, 0.0, 0.0, flt, mode)
            want = halfspace_dbdt(ts, rho, a)
            rel = np.abs(got - want) / np.abs(want)
            worst = max(worst, rel.max())
            print(f"  {mode:6s} rho={rho:7.1f}: max {rel.max():.3e} med {np.median(rel):.3e}")
        print(f"  {mode:6s} WORST {worst:.3e}")
    # slope over last decade of [1e-4, 5e-3]
    tl = np.logspace(np.log10(5e-4), np.log10(5e-3), 10)
    for rho in (10.0, 100.0, 1000.0):
        g = f_accurate(tl, [1.0 / rho], [], a, 0.0, 0.0, flt, "linear")
        slope = np.polyfit(np.log(tl), np.log(np.abs(g)), 1)[0]
        print(f"  slope rho={rho:7.1f}: {slope:.4f}")

    print("\n== hard case rho=2000, t to 1e-2, elevated a=5 h=z=40 has no oracle; "
          "surface a=10 ==")
    th = np.logspace(np.log10(1e-4), np.log10(1e-2), 30)
    for mode in ("linear", "cubic"):
        got = f_accurate(th, [1.0 / 2000.0], [], a, 0.0, 0.0, flt, mode)
        want = halfspace_dbdt(th, 2000.0, a)
        rel = np.abs(got - want) / np.abs(want)
        print(f"  {mode:6s} rho=2000: max {rel.max():.3e} med {np.median(rel):.3e}")

    print("\n== training profile vs oracle (same gates) ==")
    for rho in (10.0, 100.0, 1000.0, 2000.0):
        got = f_training(th, [1.0 / rho], [], a, 0.0, 0.0, flt)
        want = halfspace_dbdt(th, rho, a)
        rel = np.abs(got - want) / np.abs(want)
        print(f"  rho={rho:7.1f}: max {rel.max():.3e} med {np.median(rel):.3e}")

    print("\n== training vs accurate, elevated 3-layer, a=5 h=z=40, I=250 ==")
    sig = [1.0 / 50.0, 1.0 / 5.0, 1.0 / 200.0]
    d = [30.0, 40.0]
    tg = np.logspace(np.log10(5e-5), np.log10(1e-2), 30)
    acc = f_accurate(tg, sig, d, 5.0, 40.0, 40.0, flt, "linear") * 250.0
    trn = f_training(tg, sig, d, 5.0, 40.0, 40.0, flt) * 250.0
    noise = 1e-9 * np.sqrt(1e-3 / tg)
    snr_ok = np.abs(acc) > 3.0 * noise
    rel = np.abs(trn - acc) / np.abs(acc)
    print(f"  gates with SNR>3: {snr_ok.sum()}/{len(tg)}")
    print(f"  max rel on those: {rel[snr_ok].max():.3e}; overall max {rel.max():.3e}")


if __name__ == "__main__":
    main()
