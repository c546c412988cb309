"""Series and loop parasitic inductance by direct minimization of the
internal phases and grid diagonalization of the reduced dipole potential."""
import numpy as np
from scipy.optimize import brentq
from common import EC, EJ, EL, omega_alpha, linc_U


def series_U(phi, bp):
    """E_L (t - tc)^2 / (2 bp) + U_LINC(tc), minimized over tc by Newton."""
    def U(t):
        tc = t / (1 + bp)
        for _ in range(60):
            g = EL * (tc - t) / bp + EL * tc + 2 * EJ * np.cos(phi) * np.sin(tc)
            c = EL / bp + EL + 2 * EJ * np.cos(phi) * np.cos(tc)
            tc = tc - g / c
        return EL * (t - tc) ** 2 / (2 * bp) + EL * tc**2 / 2 - 2 * EJ * np.cos(phi) * np.cos(tc)
    return U


def loop_branch(pb, bl):
    """min over x of E_J [(pb - x)^2 / (2 bl) - cos x]."""
    x = np.array(pb, dtype=float)
    for _ in range(60):
        g = (x - pb) / bl + np.sin(x)
        c = 1 / bl + np.cos(x)
        x = x - g / c
    return EJ * ((pb - x) ** 2 / (2 * bl) - np.cos(x))


def loop_U(phi, bl):
    return lambda t: EL * t * t / 2 + loop_branch(t + phi, bl) + loop_branch(t - phi, bl)


def curvature(U, h=1e-3):
    return (U(np.array(h)) - 2 * U(np.array(0.0)) + U(np.array(-h))) / h**2


def fourth(U, h=0.02):
    c = np.array([-1 / 6, 2, -13 / 2, 28 / 3, -13 / 2, 2, -1 / 6])
    x = h * np.arange(-3, 4)
    return float(np.dot(c, U(x)) / h**4)


def run():
    out = {}
    bare = lambda phi: linc_U(phi)
    w0 = omega_alpha(bare(np.pi / 2))[0]
    a0 = omega_alpha(bare(np.pi / 4))[1]
    h = 1e-3
    g0 = 0.5 * (omega_alpha(bare(np.pi / 2 + h))[0] - omega_alpha(bare(np.pi / 2 - h))[0]) / (2 * h)
    for bp in (0.05, 0.2, 0.5):
        tag = f"{int(round(bp * 100)):02d}"
        w = omega_alpha(series_U(np.pi / 2, bp))[0]
        a = omega_alpha(series_U(np.pi / 4, bp))[1]
        g = 0.5 * (omega_alpha(series_U(np.pi / 2 + h, bp))[0]
                   - omega_alpha(series_U(np.pi / 2 - h, bp))[0]) / (2 * h)
        out[f"series_omega_ratio_{tag}"] = w / w0
        out[f"series_alpha_ratio_{tag}"] = a / a0
        out[f"series_g3wm_ratio_{tag}"] = g / g0
    bl = 0.02
    pert = lambda p: fourth(loop_U(p, bl)) * EC / float(curvature(loop_U(p, bl)))
    out["loop_alpha_pi2"] = pert(np.pi / 2)
    out["loop_zero_crossing"] = brentq(pert, 0.45 * np.pi, 0.6 * np.pi, xtol=1e-9)
    # grid diagonalization, beyond the quartic estimate
    out["loop_alpha_pi2_diag"] = omega_alpha(loop_U(np.pi / 2, bl))[1]
    out["loop_zero_crossing_diag"] = brentq(lambda p: omega_alpha(loop_U(p, bl))[1],
                                            0.45 * np.pi, 0.6 * np.pi, xtol=1e-9)
    for k in (1, 3, 5, 7, 9):
        U = loop_U(k * np.pi / 10, bl)
        out[f"loop_U20_{k}tenths"] = float(curvature(U))
        out[f"loop_U40_{k}tenths"] = fourth(U)
    return out


if __name__ == "__main__":
    for k, v in run().items():
        print(k, v, flush=True)

