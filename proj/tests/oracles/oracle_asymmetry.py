"""Asymmetric LINC: mpmath derivatives at the numerically located minimum and
Fock-basis diagonalization of the full asymmetric potential."""
import mpmath as mp
import numpy as np
from scipy.optimize import brentq, minimize_scalar
from common import EC, EJ, EL

mp.mp.dps = 30
BS = 2 * EJ / EL


def U_np(t, pd, bD, fD):
    return EL * (0.5 * (t - 2 * fD / 3) ** 2
                 - BS * np.cos(pd) * (np.cos(fD / 3) * np.cos(t) - np.sin(fD / 3) * np.sin(t))
                 + bD * np.sin(pd) * (np.cos(fD / 3) * np.sin(t) + np.sin(fD / 3) * np.cos(t)))


def U_mp(t, pd, bD, fD):
    return EL * (mp.mpf(1) / 2 * (t - 2 * fD / 3) ** 2
                 - BS * mp.cos(pd) * (mp.cos(fD / 3) * mp.cos(t) - mp.sin(fD / 3) * mp.sin(t))
                 + bD * mp.sin(pd) * (mp.cos(fD / 3) * mp.sin(t) + mp.sin(fD / 3) * mp.cos(t)))


def coefficients(bD, fD, pd=mp.pi / 2):
    bD, fD = mp.mpf(bD), mp.mpf(fD)
    t0 = mp.findroot(lambda t: mp.diff(lambda x: U_mp(x, pd, bD, fD), t), 0)
    u = lambda m, n: mp.diff(lambda x, y: U_mp(x, y, bD, fD), (t0, pd), (m, n))
    # zpf follows the Josephson-part curvature at the fixed minimum
    z = lambda y: (2 * EC / mp.diff(lambda x: U_mp(x, y, bD, fD), t0, 2)) ** mp.mpf(0.25)
    z0 = z(pd)
    zp = mp.diff(z, pd)
    z2p = mp.diff(lambda y: z(y) ** 2, pd)
    g20 = u(2, 0) * z0**2 / 2
    g30 = u(3, 0) * z0**3 / 6
    g40 = u(4, 0) * z0**4 / 24
    g11 = u(1, 1) * z0
    g21 = (u(2, 1) * z0**2 + u(2, 0) * z2p) / 2
    g12 = u(1, 2) * z0 / 2 + u(1, 1) * zp
    w = 4 * g20
    alpha = 12 * (g40 - 5 * g30**2 / w)
    return dict(theta_min=float(t0), g30=float(g30), g40=float(g40), g11=float(g11),
                g21=float(g21), g12=float(g12), alpha=float(alpha))


def diag_alpha(bD, fD, pd=np.pi / 2, dim=60):
    t0 = minimize_scalar(lambda t: U_np(t, pd, bD, fD), bounds=(-1, 1), method="bounded",
                         options={"xatol": 1e-12}).x
    h = 1e-4
    curv = (U_np(t0 + h, pd, bD, fD) - 2 * U_np(t0, pd, bD, fD) + U_np(t0 - h, pd, bD, fD)) / h**2
    z = (2 * EC / curv) ** 0.25
    a = np.diag(np.sqrt(np.arange(1, dim)), 1)
    w, v = np.linalg.eigh(z * (a + a.T))
    Uop = (v * U_np(t0 + w, pd, bD, fD)) @ v.T
    n2 = -((a.T - a) @ (a.T - a)) / (4 * z * z)
    e = np.linalg.eigvalsh(4 * EC * n2 + Uop)
    return e[2] - 2 * e[1] + e[0]


def kerr_free(bD, fD):
    f = lambda pd: coefficients(bD, fD, mp.mpf(pd))["alpha"]
    return brentq(f, 0.45 * np.pi, 0.55 * np.pi, xtol=1e-12)


def run():
    out = {}
    c = coefficients(0.02, -0.005 * mp.pi)
    for k, v in c.items():
        out[f"asym_{k}"] = v
    out["asym_alpha_diag"] = diag_alpha(0.02, -0.005 * np.pi)
    out["asym_kerr_free"] = kerr_free(0.02, -0.005 * mp.pi)
    out["asym_kerr_free_plus"] = kerr_free(0.01, 0.05)
    out["asym_kerr_free_minus"] = kerr_free(0.01, -0.05)
    return out


if __name__ == "__main__":
    for k, v in run().items():
        print(k, v, flush=True)
