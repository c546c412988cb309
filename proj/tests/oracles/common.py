"""Shared constants and small helpers for the oracle scripts."""
import numpy as np

EC, EJ, EL = 0.1, 15.84, 52.8
KB_H = 20.836619123  # GHz/K


def dvr_hamiltonian(U, EC=EC, L=3.0, n=401):
    """Colbert-Miller sinc DVR on [-L, L] for 4 E_C n^2 + U(theta)."""
    x = np.linspace(-L, L, n)
    h = x[1] - x[0]
    i = np.arange(n)
    d = i[:, None] - i[None, :]
    with np.errstate(divide="ignore"):
        T = np.where(d == 0, np.pi**2 / 3.0, 2.0 * (-1.0) ** d / np.where(d == 0, 1, d) ** 2)
    H = 4.0 * EC * T / h**2 + np.diag(U(x))
    return H


def levels(U, EC=EC, L=3.0, n=401, k=4):
    e = np.linalg.eigvalsh(dvr_hamiltonian(U, EC, L, n))[:k]
    return e - e[0]


def linc_U(phi, N=0, M=1, ej=EJ, el=EL):
    def U(t):
        shunt = el * t * t / 2 if N == 0 else -N * N * el * np.cos(t / N)
        return shunt - 2 * M * M * ej * np.cos(phi) * np.cos(t / M)
    return U


def omega_alpha(U, **kw):
    e = levels(U, **kw)
    return e[1], e[2] - 2 * e[1]


def harmonic_ops(dim, zpf, pad=24):
    D = dim + pad
    a = np.diag(np.sqrt(np.arange(1, D)), 1)
    x = zpf * (a + a.T)
    w, v = np.linalg.eigh(x)
    n2 = -((a.T - a) @ (a.T - a)) / (4 * zpf * zpf)
    return a, x, w, v, n2
