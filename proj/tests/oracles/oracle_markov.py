"""Floquet-Markov steady-state impurity with a midpoint propagator, FFT
harmonics and an SVD null vector."""
import numpy as np
from scipy.linalg import null_space
from common import EC, EJ, EL, KB_H

GAMMA_C, T_C = 1 / 26.7, 0.05
MODES = ((4.9, 0.12), (6.0, 0.05))
KAPPA, T_B = 0.1, 0.05
W2R = 2 * np.pi * 1e3


def bose(w, T):
    return 1 / np.expm1(abs(w) / (KB_H * T))


def osc(D, z):
    a = np.diag(np.sqrt(np.arange(1, D)), 1)
    x = z * (a + a.T)
    w, v = np.linalg.eigh(x)
    fn = lambda f: (v * f(w)) @ v.T
    n2 = -((a.T - a) @ (a.T - a)) / (4 * z * z)
    return a, x, fn, n2


def linc(dim, pad=24, phidc=np.pi / 2):
    D = dim + pad
    z = (2 * EC / (EL + 2 * EJ * np.cos(phidc))) ** 0.25
    a, x, fn, n2 = osc(D, z)
    C = fn(np.cos)
    H0 = 4 * EC * n2 + EL * x @ x / 2 - 2 * EJ * np.cos(phidc) * C
    coeffs = lambda p: [-2 * EJ * (np.cos(phidc + p) - np.cos(phidc))]
    return H0[:dim, :dim], [C[:dim, :dim]], coeffs, (a.T - a)[:dim, :dim]


def snail(dim, flux=0.442, pad=24, al=0.193, N=3, EJs=276.0):
    pe = 2 * np.pi * flux
    t = 0.0
    for s in np.linspace(0, 1, 50):
        for _ in range(50):
            g = al * np.sin(t) + np.sin((t - pe * s) / N)
            h = al * np.cos(t) + np.cos((t - pe * s) / N) / N
            t -= g / h
    t1, t2 = t, t - pe
    c2 = EJs * (al * np.cos(t1) + np.cos(t2 / N) / N)
    z = (2 * EC / c2) ** 0.25
    D = dim + pad
    a, x, fn, n2 = osc(D, z)
    ops = [fn(np.cos), fn(np.sin), fn(lambda u: np.cos(u / N)), fn(lambda u: np.sin(u / N)), x]
    H0 = 4 * EC * n2 + fn(lambda u: EJs * (-al * np.cos(t1 + u) - N * np.cos((t2 + u) / N)))

    def coeffs(p):
        return [-al * EJs * (np.cos(t1 + p) - np.cos(t1)), al * EJs * (np.sin(t1 + p) - np.sin(t1)),
                -N * EJs * (np.cos((t2 + p) / N) - np.cos(t2 / N)),
                N * EJs * (np.sin((t2 + p) / N) - np.sin(t2 / N)), -c2 * p]
    return H0[:dim, :dim], [o[:dim, :dim] for o in ops], coeffs, (a.T - a)[:dim, :dim]


def spectrum(d, wq):
    w = abs(d)
    if w < 1e-12:
        return 0.0
    fac = lambda T: 1 + bose(w, T) if d > 0 else bose(w, T)
    r = (w / wq) * GAMMA_C * fac(T_C)
    for wi, gi in MODES:
        D, G = W2R * (w - wi), W2R * gi
        r += fac(T_B) * G * G * KAPPA / (D * D + KAPPA**2 / 4)
    return r


def impurity(model, wd, amps, S=128, steps=4096):
    H0, ops, coeffs, Q = model
    dim = len(H0)
    E0, V0 = np.linalg.eigh(H0)
    wq = E0[1] - E0[0]
    Q = Q / abs(V0[:, 1] @ Q @ V0[:, 0])
    T = 1 / wd
    dt = T / steps
    U = np.eye(dim, dtype=complex)
    Us = []
    for j in range(steps):
        if j % (steps // S) == 0:
            Us.append(U.copy())
        t = (j + 0.5) * dt
        p = sum(A * np.cos(2 * np.pi * (h + 1) * wd * t) for h, A in enumerate(amps))
        H = H0 + sum(c * o for c, o in zip(coeffs(p), ops))
        w, v = np.linalg.eigh(H)
        U = v @ (np.exp(-2j * np.pi * w * dt)[:, None] * (v.T @ U))
    lam, V = np.linalg.eig(U)
    V, _ = np.linalg.qr(V)  # eigenvectors of a unitary with distinct phases
    eps = -np.angle(lam) / (2 * np.pi * T)
    ts = np.arange(S) * T / S
    Xt = np.array([((Ut @ V) * np.exp(2j * np.pi * eps * ts[j])).conj().T @ Q
                   @ ((Ut @ V) * np.exp(2j * np.pi * eps * ts[j])) for j, Ut in enumerate(Us)])
    Xk = np.fft.fft(Xt, axis=0) / S
    ks = np.fft.fftfreq(S, 1 / S)
    R = np.zeros((dim, dim))
    for ki, k in enumerate(ks):
        W2 = abs(Xk[ki]) ** 2
        for a in range(dim):
            for b in range(dim):
                if a != b:
                    R[b, a] += W2[b, a] * spectrum(eps[a] - eps[b] - k * wd, wq)
    G = R - np.diag(R.sum(0))
    p = np.abs(null_space(G)[:, 0])
    p /= p.sum()
    return 1 - np.sum(p**2)


def run():
    out = {}
    L, Sn = linc(12), snail(12)
    for tag, wd, A in (("a", 2.2, 0.2 * np.pi), ("b", 3.25, 0.025 * np.pi)):
        out[f"markov_linc_{tag}"] = impurity(L, wd, [A])
        out[f"markov_snail_{tag}"] = impurity(Sn, wd, [A])
    out["markov_snail_twotone"] = impurity(Sn, 2.45, [0.1 * np.pi, 0.1 * np.pi])
    return out


if __name__ == "__main__":
    for k, v in run().items():
        print(k, v, flush=True)
