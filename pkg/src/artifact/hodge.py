"""Hodge-theoretic filtrations on a finite complex vector space.

The ambient space is C^n with its standard real structure R^n, so complex
conjugation acts entrywise.  Bilinear forms are given as matrices ``S`` with
``S(a, b) = a^T S b``.  Subspaces are stored as column bases.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import _linalg as la
from .verdict import Verdict, all_of

DEFAULT_TOL = la.DEFAULT_TOL


class HodgeError(ValueError):
    """Raised on malformed filtrations or forms."""


@dataclass(frozen=True)
class Filtration:
    """Decreasing filtration F^p of C^n.

    ``levels`` maps a level p to a basis of F^p.  Missing levels take the
    value of the next higher stored level, levels above the top are zero and
    the lowest stored level must span C^n.
    """

    n: int
    levels: Mapping[int, np.ndarray]

    @classmethod
    def from_dict(cls, n: int, data: Mapping[int, Sequence], tol: float = DEFAULT_TOL) -> "Filtration":
        if not data:
            raise HodgeError("filtration needs at least one level")
        levels = {}
        for p, vecs in data.items():
            b = la.as_basis(vecs, n)
            if b.shape[0] != n:
                raise HodgeError(f"level {p}: vectors have length {b.shape[0]}, expected {n}")
            levels[int(p)] = la.orth(b, tol)
        f = cls(n, dict(sorted(levels.items())))
        f._validate(tol)
        return f

    @classmethod
    def from_bases(cls, n: int, bases: Mapping[int, np.ndarray], tol: float = DEFAULT_TOL) -> "Filtration":
        return cls.from_dict(n, bases, tol)

    def _validate(self, tol: float) -> None:
        keys = sorted(self.levels)
        if la.rank(self.levels[keys[0]], tol) != self.n:
            raise HodgeError(f"lowest level {keys[0]} does not span the whole space")
        for lo, hi in zip(keys, keys[1:]):
            if not la.contains(self.levels[lo], self.levels[hi], tol):
                raise HodgeError(f"F^{hi} is not contained in F^{lo}")

    @property
    def lo(self) -> int:
        """Largest p with F^p equal to the whole space."""
        keys = sorted(self.levels)
        p = keys[0]
        for k in keys:
            if self.levels[k].shape[1] == self.n:
                p = k
        return p

    @property
    def hi(self) -> int:
        """Largest p with F^p nonzero."""
        nz = [k for k, b in self.levels.items() if b.shape[1] > 0]
        return max(nz) if nz else self.lo - 1

    def __getitem__(self, p: int) -> np.ndarray:
        above = [k for k in self.levels if k >= p]
        if not above:
            return np.zeros((self.n, 0), dtype=complex)
        return self.levels[min(above)]

    def dim(self, p: int) -> int:
        return self[p].shape[1]

    def dims(self) -> dict[int, int]:
        return {p: self.dim(p) for p in range(self.lo, self.hi + 2)}

    def jumps(self) -> list[int]:
        return list(range(self.lo, self.hi + 1))

    def apply(self, g: np.ndarray, tol: float = DEFAULT_TOL) -> "Filtration":
        """The filtration g F for an invertible matrix g; dimensions are kept, so no rank cutoff."""
        return Filtration(self.n, {p: np.linalg.qr(g @ b)[0] if b.shape[1] else b for p, b in self.levels.items()})

    def conj(self) -> "Filtration":
        return Filtration(self.n, {p: b.conj() for p, b in self.levels.items()})

    def restrict(self, q: np.ndarray, tol: float = DEFAULT_TOL) -> "Filtration":
        """Coordinates with respect to an orthonormal basis q of an invariant subspace."""
        m = q.shape[1]
        out = {}
        for p in range(self.lo, self.hi + 2):
            inter = la.intersect(self[p], q, tol)
            out[p] = la.orth(q.conj().T @ inter, tol) if inter.shape[1] else np.zeros((m, 0), complex)
        return Filtration(m, out)

    def to_json(self) -> dict:
        return {str(p): [[[float(z.real), float(z.imag)] for z in col] for col in self[p].T]
                for p in range(self.lo, self.hi + 1)}


@dataclass(frozen=True)
class WeightFiltration:
    """Increasing filtration W_l of C^n, stored on the levels where it jumps."""

    n: int
    levels: Mapping[int, np.ndarray]
    center: int = 0

    def __getitem__(self, l: int) -> np.ndarray:
        below = [k for k in self.levels if k <= l]
        if not below:
            return np.zeros((self.n, 0), dtype=complex)
        return self.levels[max(below)]

    def dim(self, l: int) -> int:
        return self[l].shape[1]

    @property
    def lo(self) -> int:
        nz = [k for k, b in self.levels.items() if b.shape[1] > 0]
        return min(nz) if nz else self.center

    @property
    def hi(self) -> int:
        full = [k for k, b in self.levels.items() if b.shape[1] == self.n]
        return min(full) if full else self.center

    def graded_basis(self, l: int, tol: float = DEFAULT_TOL) -> np.ndarray:
        """Orthonormal complement of W_{l-1} in W_l, a model for Gr_l."""
        return la.complement_in(self[l - 1], self[l], tol)

    def graded_dims(self) -> dict[int, int]:
        return {l: self.dim(l) - self.dim(l - 1) for l in range(self.lo, self.hi + 1)}


# ---------------------------------------------------------------------------
# pure structures


def _check_square(m: np.ndarray, n: int, name: str) -> np.ndarray:
    m = np.asarray(m)
    if m.shape != (n, n):
        raise HodgeError(f"{name} must be {n}x{n}, got {m.shape}")
    return m


def check_form(s: np.ndarray, w: int, tol: float = DEFAULT_TOL) -> None:
    """Raise unless ``s`` is nondegenerate and (-1)^w-symmetric."""
    s = np.asarray(s)
    if la.rank(s, tol) != s.shape[0]:
        raise HodgeError("form is degenerate")
    sign = (-1) ** (w % 2)
    scale = max(np.linalg.norm(s), 1.0)
    if np.linalg.norm(s - sign * s.T) > tol * scale:
        kind = "symmetric" if sign == 1 else "antisymmetric"
        raise HodgeError(f"form must be {kind} for weight {w}")


def _level_range(f: Filtration, w: int) -> range:
    lo = min(f.lo, w - f.hi) - 1
    hi = max(f.hi, w - f.lo) + 2
    return range(lo, hi + 1)


def is_hodge_structure(f: Filtration, w: int, tol: float = DEFAULT_TOL) -> bool:
    """F^p and the conjugate of F^{w+1-p} are complementary for every p."""
    fc = f.conj()
    for p in _level_range(f, w):
        a, b = f[p], fc[w + 1 - p]
        if a.shape[1] + b.shape[1] != f.n:
            return False
        if la.rank(np.hstack([a, b]), tol) != f.n:
            return False
    return True


def hodge_decomposition(f: Filtration, w: int, tol: float = DEFAULT_TOL) -> dict[int, np.ndarray]:
    """Bases of H^{p,w-p} = F^p ∩ conj(F^{w-p}), for nonzero pieces."""
    fc = f.conj()
    out = {}
    for p in _level_range(f, w):
        piece = la.intersect(f[p], fc[w - p], tol)
        if piece.shape[1]:
            out[p] = piece
    return out


def hodge_numbers(f: Filtration, w: int, tol: float = DEFAULT_TOL) -> dict[int, int]:
    return {p: b.shape[1] for p, b in hodge_decomposition(f, w, tol).items()}


def _pairing_norm(a: np.ndarray, s: np.ndarray, b: np.ndarray) -> float:
    if a.shape[1] == 0 or b.shape[1] == 0:
        return 0.0
    return float(np.linalg.norm(a.T @ s @ b))


def check_orthogonality(f: Filtration, s: np.ndarray, w: int, tol: float = DEFAULT_TOL) -> bool:
    """S(F^p, F^{w+1-p}) = 0 for all p."""
    s = np.asarray(s)
    scale = max(np.linalg.norm(s), 1.0)
    for p in _level_range(f, w):
        if _pairing_norm(f[p], s, f[w + 1 - p]) > np.sqrt(tol) * scale:
            return False
    return True


def in_check_d(f: Filtration, s: np.ndarray, w: int, ref_dims: Mapping[int, int] | None = None,
               tol: float = DEFAULT_TOL) -> bool:
    """Membership in the compact dual: orthogonality plus matching dimensions."""
    if ref_dims is not None:
        for p, d in ref_dims.items():
            if f.dim(p) != d:
                return False
    if not check_orthogonality(f, s, w, tol):
        return False
    for p in _level_range(f, w):
        if f.dim(p) + f.dim(w + 1 - p) != f.n:
            return False
    return True


def hermitian_gram(basis: np.ndarray, s: np.ndarray, exponent: int) -> np.ndarray:
    """Gram matrix of a -> i^exponent S(a, conj a) on span(basis)."""
    g = (1j ** (exponent % 4)) * (basis.conj().T @ s.T @ basis)
    return 0.5 * (g + g.conj().T)


def positivity(pieces: Mapping[int, np.ndarray], s: np.ndarray, w: int,
               tol: float = DEFAULT_TOL) -> tuple[Verdict, float]:
    """Sign of i^{p-q} S(a, conj a) on each H^{p,q}; returns the verdict and the worst margin."""
    scale = max(np.linalg.norm(s, 2), 1e-300)
    verdicts, worst = [], np.inf
    for p, b in pieces.items():
        g = hermitian_gram(b, s, p - (w - p))
        ev, _ = la.min_hermitian_eig(g)
        worst = min(worst, ev / scale)
        verdicts.append(Verdict.positive(ev, scale, tol))
    return all_of(verdicts), worst


def in_d(f: Filtration, s: np.ndarray, w: int, ref_dims: Mapping[int, int] | None = None,
         tol: float = DEFAULT_TOL) -> Verdict:
    """Membership in the classifying space of polarized Hodge structures."""
    s = np.asarray(s)
    if not in_check_d(f, s, w, ref_dims, tol) or not is_hodge_structure(f, w, tol):
        return Verdict.FALSE
    verdict, _ = positivity(hodge_decomposition(f, w, tol), s, w, tol)
    return verdict


def is_phs(f: Filtration, s: np.ndarray, w: int, tol: float = DEFAULT_TOL) -> Verdict:
    """Polarized Hodge structure test with validation of the form."""
    s = _check_square(s, f.n, "S")
    check_form(s, w, tol)
    return in_d(f, s, w, tol=tol)


is_polarized_hodge_structure = is_phs


# ---------------------------------------------------------------------------
# weight filtration of a nilpotent endomorphism


def nilpotent_order(nmat: np.ndarray, tol: float = DEFAULT_TOL, scale: float | None = None) -> int:
    """Largest k with N^k nonzero; raises if N is not nilpotent.

    N^k counts as zero once |N^k| <= tol |N^(k-1)| |N|, a relative rank test on
    the last product; ``scale`` replaces |N| for induced maps inside a recursion.
    """
    n = nmat.shape[0]
    norm = np.linalg.norm(nmat, 2)
    scale = norm if scale is None else max(scale, norm)
    if scale == 0.0:
        return 0
    p = np.eye(n, dtype=nmat.dtype)
    prev = 1.0
    for k in range(1, n + 2):
        p = p @ nmat
        size = np.linalg.norm(p, 2)
        if size <= tol * prev * scale:
            return k - 1
        prev = size
    raise HodgeError("endomorphism is not nilpotent")


def _centered_weight(nmat: np.ndarray, tol: float, scale: float | None = None) -> dict[int, np.ndarray]:
    m = nmat.shape[0]
    if m == 0:
        return {}
    if scale is None:
        scale = np.linalg.norm(nmat, 2)
    k = nilpotent_order(nmat, tol, scale)
    full = np.eye(m, dtype=nmat.dtype)
    if k == 0:
        return {-1: np.zeros((m, 0), dtype=nmat.dtype), 0: full}
    nk = np.linalg.matrix_power(nmat, k)
    ker = la.null_space(nk, tol)
    im = la.orth(nk, tol)
    q = la.complement_in(im, ker, tol)
    sub = _centered_weight(q.conj().T @ nmat @ q, tol, scale) if q.shape[1] else {}
    out = {-k - 1: np.zeros((m, 0), dtype=nmat.dtype), k: full}
    for l in range(-k, k):
        below = [j for j in sub if j <= l]
        piece = sub[max(below)] if below else np.zeros((q.shape[1], 0))
        out[l] = la.orth(np.hstack([im, q @ piece]), tol) if piece.shape[1] else im
    return out


def weight_filtration(nmat: np.ndarray, w: int = 0, tol: float = DEFAULT_TOL) -> WeightFiltration:
    """The weight filtration of a nilpotent N centered at w.

    Built inductively: with k maximal such that N^k != 0, W_{w+k} is everything,
    W_{w+k-1} = ker N^k, W_{w-k} = im N^k, and the levels in between come from
    the induced endomorphism on ker N^k / im N^k.
    """
    nmat = np.asarray(nmat)
    if nmat.ndim != 2 or nmat.shape[0] != nmat.shape[1]:
        raise HodgeError("N must be square")
    if np.iscomplexobj(nmat) and np.allclose(nmat.imag, 0.0):
        nmat = nmat.real
    centered = _centered_weight(nmat, tol)
    if not centered:
        return WeightFiltration(0, {}, w)
    return WeightFiltration(nmat.shape[0], {l + w: b for l, b in sorted(centered.items())}, w)


def weight_axioms(wf: WeightFiltration, nmat: np.ndarray, w: int, tol: float = DEFAULT_TOL) -> list[str]:
    """Violated axioms of a candidate weight filtration (empty when valid)."""
    nmat = np.asarray(nmat)
    n = nmat.shape[0]
    bad = []
    lo, hi = w - n - 1, w + n + 1
    if wf.dim(lo) != 0 or wf.dim(hi) != n:
        bad.append("not exhaustive")
    for l in range(lo, hi + 1):
        if not la.contains(wf[l], wf[l - 1], tol):
            bad.append(f"W_{l-1} not in W_{l}")
        if wf.dim(l) and not la.contains(wf[l - 2], nmat @ wf[l], tol):
            bad.append(f"N W_{l} not in W_{l-2}")
    for l in range(0, n + 1):
        top, low = wf[w + l], wf[w - l - 1]
        c = la.complement_in(wf[w + l - 1], top, tol)
        d_bottom = wf.dim(w - l) - wf.dim(w - l - 1)
        if d_bottom != c.shape[1]:
            bad.append(f"dim Gr_{w+l} != dim Gr_{w-l}")
            continue
        if c.shape[1] == 0:
            continue
        img = np.linalg.matrix_power(nmat, l) @ c
        if not la.contains(wf[w - l], img, tol):
            bad.append(f"N^{l} Gr_{w+l} not in W_{w-l}")
        if la.rank(np.hstack([low, img]), tol) != low.shape[1] + c.shape[1]:
            bad.append(f"N^{l}: Gr_{w+l} -> Gr_{w-l} not injective")
    return bad


def is_weight_filtration_for(wf: WeightFiltration, nmat: np.ndarray, w: int, tol: float = DEFAULT_TOL) -> bool:
    return not weight_axioms(wf, nmat, w, tol)


# ---------------------------------------------------------------------------
# polarized mixed Hodge structures


def _is_inf_isometry(nmat: np.ndarray, s: np.ndarray, tol: float) -> bool:
    scale = max(np.linalg.norm(s) * np.linalg.norm(nmat), 1.0)
    return np.linalg.norm(nmat.T @ s + s @ nmat) <= np.sqrt(tol) * scale


def graded_filtration(f: Filtration, wf: WeightFiltration, l: int, tol: float = DEFAULT_TOL) -> tuple[Filtration, np.ndarray]:
    """F induced on Gr_l, in coordinates of the complement basis returned alongside."""
    c = wf.graded_basis(l, tol)
    d = c.shape[1]
    levels = {}
    for p in range(f.lo, f.hi + 2):
        inter = la.intersect(f[p], wf[l], tol)
        levels[p] = la.orth(c.conj().T @ inter, tol) if inter.shape[1] else np.zeros((d, 0), complex)
    return Filtration(d, levels), c


def graded_pairing(s: np.ndarray, nmat: np.ndarray, wf: WeightFiltration, w: int, l: int,
                   tol: float = DEFAULT_TOL) -> np.ndarray:
    """The form S(a, N^l b) on Gr_{w+l}, in complement coordinates."""
    c = wf.graded_basis(w + l, tol)
    return c.T @ s @ np.linalg.matrix_power(nmat, l) @ c


def primitive_subspace(nmat: np.ndarray, wf: WeightFiltration, w: int, l: int,
                       tol: float = DEFAULT_TOL) -> np.ndarray:
    """Kernel of N^{l+1}: Gr_{w+l} -> Gr_{w-l-2}, in complement coordinates of Gr_{w+l}."""
    c_top = wf.graded_basis(w + l, tol)
    if c_top.shape[1] == 0:
        return np.zeros((0, 0), complex)
    img = np.linalg.matrix_power(nmat, l + 1) @ c_top
    c_bot = wf.graded_basis(w - l - 2, tol)
    if c_bot.shape[1] == 0:
        return np.eye(c_top.shape[1], dtype=complex)
    m = c_bot.conj().T @ img
    if np.linalg.norm(m) <= tol * max(np.linalg.norm(img), 1.0):
        return np.eye(c_top.shape[1], dtype=complex)
    return la.null_space(m, tol)


def primitive_decomposition(nmat: np.ndarray, wf: WeightFiltration, w: int,
                            tol: float = DEFAULT_TOL) -> dict[int, list[tuple[int, np.ndarray]]]:
    """Gr_{w+l} = sum_i N^i P_{w+l+2i}: for each l the list of (i, basis in Gr_{w+l} coordinates)."""
    n = nmat.shape[0]
    prim = {l: primitive_subspace(nmat, wf, w, l, tol) for l in range(0, n + 1)}
    out: dict[int, list[tuple[int, np.ndarray]]] = {}
    for l in range(-n, n + 1):
        c = wf.graded_basis(w + l, tol)
        if c.shape[1] == 0:
            continue
        parts = []
        for i in range(0, n + 1):
            top = l + 2 * i
            if top < 0 or top not in prim or prim[top].shape[1] == 0:
                continue
            if i > top:
                continue
            c_top = wf.graded_basis(w + top, tol)
            vecs = c.conj().T @ np.linalg.matrix_power(nmat, i) @ c_top @ prim[top]
            parts.append((i, vecs))
        out[l] = parts
    return out


@dataclass
class PMHSReport:
    verdict: Verdict
    failed_axiom: str | None = None
    details: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.verdict is Verdict.TRUE


def is_pmhs(f: Filtration, nmat: np.ndarray, s: np.ndarray, w: int, tol: float = DEFAULT_TOL) -> PMHSReport:
    """Check the polarized mixed Hodge structure axioms for (W(N) centered at w, F, N, S).

    Axioms are tested in order: induced pure structures on the graded pieces,
    N F^p ⊂ F^{p-1}, S(F^p, F^{w+1-p}) = 0, and positivity of the polarization
    S(a, N^l conj a) on the primitive subspaces.
    """
    n = f.n
    nmat = np.asarray(_check_square(nmat, n, "N"))
    s = np.asarray(_check_square(s, n, "S"))
    check_form(s, w, tol)
    if not _is_inf_isometry(nmat, s, tol):
        raise HodgeError("N is not an infinitesimal isometry of S")
    wf = weight_filtration(nmat, w, tol)

    for l in range(wf.lo, wf.hi + 1):
        gf, _ = graded_filtration(f, wf, l, tol)
        if gf.n and not is_hodge_structure(gf, l, tol):
            return PMHSReport(Verdict.FALSE, "graded", [f"Gr_{l} is not a Hodge structure of weight {l}"])

    for p in range(f.lo, f.hi + 2):
        if not la.contains(f[p - 1], nmat @ f[p], tol):
            return PMHSReport(Verdict.FALSE, "transversality", [f"N F^{p} not in F^{p-1}"])

    if not check_orthogonality(f, s, w, tol):
        return PMHSReport(Verdict.FALSE, "orthogonality", ["S(F^p, F^{w+1-p}) != 0"])

    verdicts, details = [], []
    for l in range(0, n + 1):
        prim = primitive_subspace(nmat, wf, w, l, tol)
        if prim.shape[1] == 0:
            continue
        gf, c = graded_filtration(f, wf, w + l, tol)
        gfc = gf.conj()
        snl = s @ np.linalg.matrix_power(nmat, l)
        for p in range(gf.lo, gf.hi + 1):
            piece = la.intersect(la.intersect(gf[p], gfc[w + l - p], tol), prim, tol)
            if piece.shape[1] == 0:
                continue
            lifted = c @ piece
            g = hermitian_gram(lifted, snl, p - (w + l - p))
            ev, _ = la.min_hermitian_eig(g)
            v = Verdict.positive(ev, np.linalg.norm(snl, 2), tol)
            verdicts.append(v)
            if v is not Verdict.TRUE:
                details.append(f"P^{{{p},{w + l - p}}} on Gr_{w + l}: min eigenvalue {ev:.3e}")
    verdict = all_of(verdicts)
    return PMHSReport(verdict, None if verdict is Verdict.TRUE else "positivity", details)


# ---------------------------------------------------------------------------
# nilpotent orbits


def exp_nilpotent(nmat: np.ndarray, t: complex = 1.0) -> np.ndarray:
    """exp(t N) by the finite Taylor series."""
    return la.expm_nilpotent(t * np.asarray(nmat, dtype=complex))


def orbit_point(f: Filtration, nmat: np.ndarray, rho: complex, tol: float = DEFAULT_TOL) -> Filtration:
    return f.apply(exp_nilpotent(nmat, rho), tol)


def orbit_region(f: Filtration, nmat: np.ndarray, s: np.ndarray, w: int, rho_grid: Iterable[complex],
                 tol: float = DEFAULT_TOL) -> list[tuple[complex, Verdict]]:
    """Membership of exp(rho N) F in the classifying space along a grid of rho."""
    grid = list(rho_grid)
    if not grid:
        raise HodgeError("empty rho grid")
    return [(rho, in_d(orbit_point(f, nmat, rho, tol), s, w, tol=tol)) for rho in grid]


def orbit_bound(f: Filtration, nmat: np.ndarray, s: np.ndarray, w: int, cap: float | None = None,
                samples: int = 60, tol: float = DEFAULT_TOL) -> float | None:
    """Smallest sampled b such that exp(rho N) F lies in D for sampled Im rho > b.

    Real translations exp(x N) preserve D, so only Im rho is scanned, over
    [-cap, cap].  Hodge angles along the orbit shrink like (Im rho)^-k with k the
    nilpotent order, so the default cap is 0.1 tol^(-1/2k), the largest value at
    which the sqrt(tol) subspace tests still resolve them (1e4 when N = 0).
    Returns None when even Im rho = cap fails.
    """
    if cap is None:
        k = nilpotent_order(np.asarray(nmat), tol)
        cap = 1e4 if k == 0 else min(1e4, 0.1 * tol ** (-1.0 / (2 * k)))

    def ok(y: float) -> bool:
        return in_d(orbit_point(f, nmat, 1j * y, tol), s, w, tol=tol) is Verdict.TRUE

    ys = np.concatenate([-np.geomspace(cap, 1e-3, samples // 2), [0.0], np.geomspace(1e-3, cap, samples // 2)])
    flags = [ok(y) for y in ys]
    if not flags[-1]:
        return None
    i = len(ys) - 1
    while i > 0 and flags[i - 1]:
        i -= 1
    if i == 0:
        return -np.inf
    lo, hi = ys[i - 1], ys[i]
    for _ in range(50):
        mid = 0.5 * (lo + hi)
        if ok(mid):
            hi = mid
        else:
            lo = mid
    return float(hi)
