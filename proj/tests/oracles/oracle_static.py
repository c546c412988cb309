"""Static LINC spectrum from a sinc-DVR position grid (independent of the Fock-basis builder)."""
import numpy as np
from common import EC, EJ, EL, linc_U, omega_alpha


def run():
    out = {}
    w, a = omega_alpha(linc_U(np.pi / 2))
    out["static_omega_pi2_ideal"] = w
    out["static_alpha_pi2_ideal"] = a
    w, a = omega_alpha(linc_U(np.pi / 2, N=10))
    out["static_omega_pi2_N10"] = w
    out["static_alpha_pi2_N10"] = a
    w, a = omega_alpha(linc_U(0.0))
    out["static_alpha_phi0_ideal"] = a
    for k in range(1, 10):
        w, a = omega_alpha(linc_U(0.1 * k * np.pi))
        out[f"static_omega_{k}tenths_pi"] = w
        out[f"static_alpha_{k}tenths_pi"] = a
    out["harmonic_gap"] = np.sqrt(8 * EC * EL)
    return out


if __name__ == "__main__":
    for k, v in run().items():
        print(k, v)
