"""Subspace arithmetic on column bases with a relative singular-value cutoff."""
from __future__ import annotations

import math

import numpy as np

DEFAULT_TOL = 1e-9


def as_basis(vectors, n: int | None = None) -> np.ndarray:
    """Coerce ``vectors`` to an (n, k) complex array of column vectors."""
    a = np.asarray(vectors, dtype=complex)
    if a.ndim == 1:
        a = a.reshape(-1, 1)
    if a.size == 0:
        return np.zeros((n if n is not None else a.shape[0], 0), dtype=complex)
    return a


def _cutoff(s: np.ndarray, tol: float) -> float:
    return tol * (s[0] if s.size else 0.0)


def rank(a: np.ndarray, tol: float = DEFAULT_TOL) -> int:
    if a.size == 0:
        return 0
    s = np.linalg.svd(a, compute_uv=False)
    if s[0] == 0.0:
        return 0
    return int(np.sum(s > _cutoff(s, tol)))


def orth(a: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal basis of the column space; real input stays real."""
    n = a.shape[0]
    if a.size == 0:
        return np.zeros((n, 0), dtype=a.dtype)
    u, s, _ = np.linalg.svd(a, full_matrices=False)
    if s[0] == 0.0:
        return np.zeros((n, 0), dtype=a.dtype)
    return u[:, s > _cutoff(s, tol)]


def null_space(a: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    m, n = a.shape
    if m == 0 or a.size == 0:
        return np.eye(n, dtype=a.dtype)
    _, s, vh = np.linalg.svd(a)
    r = int(np.sum(s > _cutoff(s, tol))) if s[0] > 0 else 0
    return vh[r:].conj().T


def span_sum(*bases: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    return orth(np.hstack(bases), tol)


def intersect(a: np.ndarray, b: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal basis of span(a) ∩ span(b)."""
    n = a.shape[0]
    qa, qb = orth(a, tol), orth(b, tol)
    if qa.shape[1] == 0 or qb.shape[1] == 0:
        return np.zeros((n, 0), dtype=np.result_type(qa, qb))
    # principal angles via their sines, which stay accurate near zero
    resid = qb - qa @ (qa.conj().T @ qb)
    _, s, vh = np.linalg.svd(resid)
    sines = np.zeros(qb.shape[1])
    sines[: len(s)] = s
    order = np.argsort(sines)
    small = [j for j in order if sines[j] <= np.sqrt(tol)]
    if not small:
        return np.zeros((n, 0), dtype=np.result_type(qa, qb))
    return orth(qb @ vh.conj().T[:, small], tol)


def contains(big: np.ndarray, small: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    """True when span(small) ⊂ span(big)."""
    if small.size == 0 or rank(small, tol) == 0:
        return True
    q = orth(big, tol)
    resid = small - q @ (q.conj().T @ small)
    scale = max(np.linalg.norm(small, 2), 1.0)
    return bool(np.linalg.norm(resid, 2) <= np.sqrt(tol) * scale)


def complement_in(sub: np.ndarray, big: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal basis of the orthogonal complement of span(sub) inside span(big)."""
    qb = orth(big, tol)
    qs = orth(sub, tol)
    if qs.shape[1] == 0:
        return qb
    proj = qb - qs @ (qs.conj().T @ qb)
    # qb is orthonormal, so the cutoff is absolute: a pure-roundoff residual means no complement
    u, s, _ = np.linalg.svd(proj, full_matrices=False)
    return u[:, s > np.sqrt(tol)]


def projector(q: np.ndarray) -> np.ndarray:
    """Orthogonal projector onto span(q) for orthonormal q."""
    return q @ q.conj().T


def same_span(a: np.ndarray, b: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    return rank(a, tol) == rank(b, tol) and contains(a, b, tol) and contains(b, a, tol)


def real_basis(a: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Real orthonormal basis of a conjugation-stable complex span."""
    stacked = np.hstack([a.real, a.imag])
    return orth(stacked, tol)


def poly_nilpotent(x: np.ndarray, coeffs) -> np.ndarray:
    """sum_k coeffs[k] x^k for nilpotent x; terms beyond x^n vanish."""
    n = x.shape[0]
    out = np.zeros((n, n), dtype=complex)
    term = np.eye(n, dtype=complex)
    for k, c in enumerate(coeffs):
        if k > n:
            break
        if c != 0:
            out = out + c * term
        term = term @ x
    return out


def expm_nilpotent(x: np.ndarray) -> np.ndarray:
    """exp(x) for nilpotent x by the finite Taylor series."""
    n = x.shape[0]
    return poly_nilpotent(x, [1.0 / math.factorial(k) for k in range(n + 1)])


def min_hermitian_eig(g: np.ndarray) -> tuple[float, float]:
    """Smallest eigenvalue of the hermitian part of g, and its norm scale."""
    h = 0.5 * (g + g.conj().T)
    if h.size == 0:
        return np.inf, 0.0
    ev = np.linalg.eigvalsh(h)
    return float(ev[0]), float(np.max(np.abs(ev)))
