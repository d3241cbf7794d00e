"""TERP-structures generated by elementary sections, as finite linear data.

A structure is described by (w, Ms, N, S, F): the semisimple and nilpotent
parts of the monodromy M = Ms exp(N) on H = C^n with real form R^n, a pairing
S and a filtration F.  The filtration used in all Hodge statements is the
twisted one, F~ = Gamma(alpha - N/2 pi i)^{-1} F.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from functools import cached_property, cmp_to_key
from typing import Sequence

import numpy as np

from . import _linalg as la
from . import hodge
from .hodge import Filtration
from .special import gamma_taylor, rgamma_taylor
from .verdict import Verdict, all_of

DEFAULT_TOL = la.DEFAULT_TOL
TWO_PI_I = 2j * math.pi


class TerpError(ValueError):
    """Invalid TERP data."""


class DualPathDisagreement(RuntimeError):
    """The two polarization computations returned opposite definite verdicts."""


def alpha_of(eigenvalue: complex) -> complex:
    """Representative alpha with exp(-2 pi i alpha) = eigenvalue and Re(alpha) in (0, 1]."""
    lam = complex(eigenvalue)
    if lam == 0:
        raise TerpError("monodromy must be invertible")
    a = 1j * np.log(lam) / (2 * math.pi)
    re = a.real
    if re <= 1e-13:
        re += 1.0
    re = min(re, 1.0)
    return complex(re, a.imag)


def _alpha_cmp(a: complex, b: complex, eps: float = 1e-10) -> int:
    if abs(a.real - b.real) > eps:
        return -1 if a.real < b.real else 1
    if abs(a.imag - b.imag) > eps:
        return -1 if a.imag < b.imag else 1
    return 0


alpha_key = cmp_to_key(_alpha_cmp)


@dataclass(frozen=True)
class EigenClass:
    eigenvalue: complex
    alpha: complex
    basis: np.ndarray

    @property
    def arg_zero(self) -> bool:
        """Eigenvalue on the positive real axis."""
        return abs(self.alpha.real - 1.0) < 1e-12

    @property
    def dim(self) -> int:
        return self.basis.shape[1]


def _eigen_classes(ms: np.ndarray, tol: float) -> list[EigenClass]:
    n = ms.shape[0]
    ev = np.linalg.eigvals(ms)
    scale = max(np.abs(ev).max(), 1.0)
    centers: list[complex] = []
    for z in ev:
        if not any(abs(z - c) <= 1e-7 * scale for c in centers):
            centers.append(complex(z))
    classes = []
    for c in centers:
        _, sv, vh = np.linalg.svd(ms - c * np.eye(n))
        basis = vh[int(np.sum(sv > 1e-7 * scale)):].conj().T
        classes.append(EigenClass(c, alpha_of(c), basis))
    if sum(k.dim for k in classes) != n:
        raise TerpError("semisimple part is not diagonalizable at tolerance")
    classes.sort(key=lambda k: alpha_key(k.alpha))
    return classes


@dataclass(frozen=True)
class MonodromyData:
    ms: np.ndarray
    nmat: np.ndarray
    classes: tuple[EigenClass, ...]
    tol: float = DEFAULT_TOL

    @classmethod
    def from_matrices(cls, ms, nmat=None, tol: float = DEFAULT_TOL) -> "MonodromyData":
        ms = np.asarray(ms, dtype=float)
        n = ms.shape[0]
        if ms.shape != (n, n):
            raise TerpError("Ms must be square")
        nmat = np.zeros((n, n)) if nmat is None else np.asarray(nmat, dtype=float)
        if nmat.shape != (n, n):
            raise TerpError("N must have the shape of Ms")
        scale = max(np.linalg.norm(ms), 1.0) * max(np.linalg.norm(nmat), 1.0)
        if np.linalg.norm(ms @ nmat - nmat @ ms) > np.sqrt(tol) * scale:
            raise TerpError("Ms and N do not commute")
        try:
            hodge.nilpotent_order(nmat, tol)
        except hodge.HodgeError as exc:
            raise TerpError(str(exc)) from None
        return cls(ms, nmat, tuple(_eigen_classes(ms, tol)), tol)

    @property
    def n(self) -> int:
        return self.ms.shape[0]

    @cached_property
    def _inverse_frame(self) -> np.ndarray:
        return np.linalg.inv(np.hstack([k.basis for k in self.classes]))

    def projector(self, index: int) -> np.ndarray:
        start = sum(k.dim for k in self.classes[:index])
        stop = start + self.classes[index].dim
        return self.classes[index].basis @ self._inverse_frame[start:stop]

    def class_part(self, index: int, basis: np.ndarray) -> np.ndarray:
        """Orthonormal basis of P_index span(basis); equals the intersection for Ms-stable spans."""
        p_mat = self.projector(index)
        if basis.shape[1] == 0:
            return np.zeros((self.n, 0), dtype=complex)
        u, sv, _ = np.linalg.svd(p_mat @ basis, full_matrices=False)
        cut = np.sqrt(self.tol) * max(np.linalg.norm(p_mat, 2), 1.0) * max(np.linalg.norm(basis, 2), 1.0)
        return u[:, : int(np.sum(sv > cut))]

    def class_of(self, vector: np.ndarray) -> int:
        v = np.asarray(vector, dtype=complex).reshape(-1)
        norm = np.linalg.norm(v)
        for i in range(len(self.classes)):
            if np.linalg.norm(self.projector(i) @ v - v) <= 1e-8 * max(norm, 1.0):
                return i
        raise TerpError("vector does not lie in a single eigenspace of Ms")

    @property
    def monodromy(self) -> np.ndarray:
        return self.ms @ la.expm_nilpotent(self.nmat).real

    def part_basis(self, arg_zero: bool) -> np.ndarray:
        """Real orthonormal basis of H_{arg=0} (or of H_{arg!=0})."""
        cols = [k.basis for k in self.classes if k.arg_zero == arg_zero]
        if not cols:
            return np.zeros((self.n, 0))
        return la.real_basis(np.hstack(cols), 1e-8)

    def class_series(self, coeffs_of, order: int | None = None) -> np.ndarray:
        """Sum over classes of P_class * sum_k c_k(alpha) (-N / 2 pi i)^k."""
        n = self.n
        order = order or n + 1
        x = -self.nmat / TWO_PI_I
        out = np.zeros((n, n), dtype=complex)
        for i, k in enumerate(self.classes):
            coeffs = coeffs_of(k)
            acc = np.zeros((n, n), dtype=complex)
            power = np.eye(n, dtype=complex)
            for c in coeffs[:order]:
                acc = acc + c * power
                power = power @ x
            out = out + self.projector(i) @ acc
        return out


def gamma_twist(mono: MonodromyData, direction: str = "forward") -> np.ndarray:
    """The operator Gamma(alpha Id - N/2 pi i) assembled per eigen-class, or its inverse."""
    order = mono.n + 1
    for k in mono.classes:
        if not 0.0 < k.alpha.real <= 1.0:
            raise TerpError(f"unnormalized representative {k.alpha}")
    if direction == "forward":
        return mono.class_series(lambda k: gamma_taylor(k.alpha, order), order)
    if direction == "inverse":
        return mono.class_series(lambda k: rgamma_taylor(k.alpha, order), order)
    raise TerpError("direction must be 'forward' or 'inverse'")


# ---------------------------------------------------------------------------
# pairings S and L


def _pairing_kernel(mono: MonodromyData) -> np.ndarray:
    """Y with S = (2 pi i)^w L Y: -(M - Id)^{-1} on arg!=0, log(M)/(M - Id) on arg=0."""
    n = mono.n
    nmat = mono.nmat.astype(complex)
    y = np.zeros((n, n), dtype=complex)
    for i, k in enumerate(mono.classes):
        p = mono.projector(i)
        lam = k.eigenvalue
        unip = la.expm_nilpotent(nmat)
        if not k.arg_zero:
            block = lam * unip - np.eye(n)
            y = y - p @ np.linalg.inv(block)
        elif abs(lam - 1.0) < 1e-12:
            # N / (e^N - 1) through the inverse of sum_{k>=1} N^{k-1}/k!
            series = la.poly_nilpotent(nmat, [1.0 / math.factorial(j + 1) for j in range(n + 1)])
            y = y + p @ np.linalg.inv(series)
        else:
            block = lam * unip - np.eye(n)
            logm = math.log(lam.real) * np.eye(n) + nmat
            y = y + p @ logm @ np.linalg.inv(block)
    return y


def s_from_l(lmat, mono: MonodromyData, w: int) -> np.ndarray:
    """The pairing S(a, b) = a^T S b obtained from L-values L(a, b) = a^T L b."""
    lmat = np.asarray(lmat, dtype=complex)
    return TWO_PI_I ** w * lmat @ _pairing_kernel(mono)


def l_from_s(s, mono: MonodromyData, w: int) -> np.ndarray:
    s = np.asarray(s, dtype=complex)
    return TWO_PI_I ** (-w) * s @ np.linalg.inv(_pairing_kernel(mono))


# ---------------------------------------------------------------------------
# TERP data


@dataclass(frozen=True)
class TerpData:
    w: int
    mono: MonodromyData
    s: np.ndarray
    f: Filtration
    tol: float = DEFAULT_TOL

    @classmethod
    def build(cls, w: int, ms, nmat, s, f: Filtration | dict, tol: float = DEFAULT_TOL) -> "TerpData":
        mono = ms if isinstance(ms, MonodromyData) else MonodromyData.from_matrices(ms, nmat, tol)
        n = mono.n
        s = np.asarray(s)
        if s.shape != (n, n):
            raise TerpError(f"S must be {n}x{n}")
        if np.iscomplexobj(s):
            if np.linalg.norm(s.imag) > tol * max(np.linalg.norm(s), 1.0):
                raise TerpError("S must be real on the real form")
            s = s.real
        s = s.astype(float)
        if not isinstance(f, Filtration):
            f = Filtration.from_dict(n, f, tol)
        if f.n != n:
            raise TerpError("filtration lives on a space of the wrong dimension")
        t = cls(int(w), mono, s, f, tol)
        t._validate()
        return t

    @property
    def n(self) -> int:
        return self.mono.n

    @property
    def nmat(self) -> np.ndarray:
        return self.mono.nmat

    def _validate(self) -> None:
        s, mono, tol = self.s, self.mono, self.tol
        if la.rank(s, tol) != self.n:
            raise TerpError("S is degenerate")
        scale = max(np.linalg.norm(s), 1.0)
        m = mono.monodromy
        if np.linalg.norm(m.T @ s @ m - s) > np.sqrt(tol) * scale * max(np.linalg.norm(m), 1.0) ** 2:
            raise TerpError("S is not monodromy invariant")
        for arg_zero, weight in ((False, self.w - 1), (True, self.w)):
            q = mono.part_basis(arg_zero)
            if q.shape[1] == 0:
                continue
            sq = q.T @ s @ q
            sign = (-1) ** (weight % 2)
            if np.linalg.norm(sq - sign * sq.T) > np.sqrt(tol) * scale:
                part = "arg=0" if arg_zero else "arg!=0"
                raise TerpError(f"S must be {'symmetric' if sign == 1 else 'antisymmetric'} on H_{part}")
        f = self.f
        for p in range(f.lo, f.hi + 2):
            if not la.contains(f[p], mono.ms @ f[p], tol):
                raise TerpError(f"F^{p} is not invariant under Ms")
            if not la.contains(f[p - 1], mono.nmat @ f[p], tol):
                raise TerpError(f"N F^{p} is not contained in F^{p-1}")

    @cached_property
    def gamma(self) -> np.ndarray:
        return gamma_twist(self.mono, "forward")

    @cached_property
    def gamma_inv(self) -> np.ndarray:
        return gamma_twist(self.mono, "inverse")

    @cached_property
    def f_tilde(self) -> Filtration:
        return self.f.apply(self.gamma_inv, self.tol)

    def part(self, arg_zero: bool) -> tuple[np.ndarray, int]:
        """Real orthonormal basis of a part and the weight attached to it."""
        return self.mono.part_basis(arg_zero), (self.w if arg_zero else self.w - 1)

    def with_filtration(self, f: Filtration) -> "TerpData":
        t = replace(self, f=f)
        return t


# ---------------------------------------------------------------------------
# orthogonality, spectrum, purity


def _parts(t: TerpData):
    for arg_zero in (False, True):
        q, weight = t.part(arg_zero)
        if q.shape[1]:
            yield arg_zero, q, weight


def check_orthogonality(t: TerpData) -> bool:
    """(F~^p)^perp = F~^{w-p} on H_{arg!=0} and (F~^p)^perp = F~^{w+1-p} on H_{arg=0}."""
    ft = t.f_tilde
    for _, q, weight in _parts(t):
        fq = ft.restrict(q, t.tol)
        if not hodge.in_check_d(fq, q.T @ t.s @ q, weight, tol=t.tol):
            return False
    return True


def _class_dims(t: TerpData, index: int) -> dict[int, int]:
    f = t.f
    return {p: t.mono.class_part(index, f[p]).shape[1] for p in range(f.lo, f.hi + 2)}


def spectrum(t: TerpData) -> list[complex]:
    """Exponents alpha + w - 1 - p, with multiplicity dim Gr_F^p of each eigen-class, sorted."""
    out = []
    for i, k in enumerate(t.mono.classes):
        dims = _class_dims(t, i)
        for p in range(t.f.lo, t.f.hi + 1):
            mult = dims[p] - dims[p + 1]
            out.extend([k.alpha + t.w - 1 - p] * mult)
    return sorted(out, key=alpha_key)


def is_pure(t: TerpData) -> bool:
    """F is a Hodge structure of weight w-1 on H_{arg!=0} and of weight w on H_{arg=0}."""
    if not check_orthogonality(t):
        raise TerpError("orthogonality condition violated")
    return _is_pure_unchecked(t)


def _is_pure_unchecked(t: TerpData) -> bool:
    for _, q, weight in _parts(t):
        if not hodge.is_hodge_structure(t.f.restrict(q, t.tol), weight, t.tol):
            return False
    return True


@dataclass(frozen=True)
class SplittingType:
    degrees: tuple[int, ...]
    certified: bool

    @property
    def total(self) -> int:
        return sum(self.degrees)


def splitting_type(t: TerpData) -> SplittingType:
    """Degrees of the glued bundle from the bifiltration (F, conj F) on each eigen-class."""
    if not check_orthogonality(t):
        raise TerpError("orthogonality condition violated")
    f, fc, tol = t.f, t.f.conj(), t.tol
    lo, hi = f.lo, f.hi + 1
    degrees: list[int] = []
    for i, k in enumerate(t.mono.classes):
        fa = {p: t.mono.class_part(i, f[p]) for p in range(lo - 1, hi + 2)}
        fb = {q: t.mono.class_part(i, fc[q]) for q in range(lo - 1, hi + 2)}
        cache: dict[tuple[int, int], int] = {}

        def d(p: int, q: int) -> int:
            if (p, q) not in cache:
                a, b = fa[p], fb[q]
                cache[p, q] = 0 if a.shape[1] == 0 or b.shape[1] == 0 else la.intersect(a, b, tol).shape[1]
            return cache[p, q]

        shift = t.w if k.arg_zero else t.w - 1
        for p in range(lo - 1, hi + 1):
            for q in range(lo - 1, hi + 1):
                m = d(p, q) - d(p + 1, q) - d(p, q + 1) + d(p + 1, q + 1)
                if m < 0:
                    raise TerpError(f"negative bifiltration multiplicity at ({p}, {q})")
                degrees.extend([p + q - shift] * m)
    if len(degrees) != t.n:
        raise TerpError("bifiltration multiplicities do not add up to the rank")
    certified = not np.any(t.nmat)
    return SplittingType(tuple(sorted(degrees, reverse=True)), certified)


# ---------------------------------------------------------------------------
# elementary sections and the pairing P


@dataclass(frozen=True)
class ElementarySection:
    """es(A, alpha) for a flat vector A in the eigenspace with eigenvalue exp(-2 pi i alpha)."""

    a: np.ndarray
    alpha: complex


@dataclass(frozen=True)
class PairingValue:
    exponent: int | None
    coefficient: complex


def _split_alpha(t: TerpData, sec: ElementarySection) -> tuple[int, EigenClass, int]:
    idx = t.mono.class_of(sec.a)
    k = t.mono.classes[idx]
    shift = sec.alpha - k.alpha
    m = round(shift.real)
    if abs(shift - m) > 1e-9:
        raise TerpError(f"order {sec.alpha} does not match the eigenvalue of its vector")
    return idx, k, m


def pairing_elementary(a: ElementarySection, b: ElementarySection, t: TerpData) -> PairingValue:
    """P(es(A, alpha), es(B, beta)) = coefficient * z^exponent.

    Vectors are the flat sections themselves; the formulas are applied to
    G^{-1}A and G^{-1}B.
    """
    _, ka, k = _split_alpha(t, a)
    _, kb, m = _split_alpha(t, b)
    total = ka.alpha + kb.alpha
    if abs(total - round(total.real)) > 1e-9 or ka.arg_zero != kb.arg_zero:
        return PairingValue(None, 0j)
    ga = t.gamma_inv @ np.asarray(a.a, dtype=complex)
    gb = t.gamma_inv @ np.asarray(b.a, dtype=complex)
    sab = ga @ t.s @ gb
    if ka.arg_zero:
        base_exp, coeff = 2, -(TWO_PI_I ** (-t.w)) * sab
    else:
        base_exp, coeff = 1, TWO_PI_I ** (1 - t.w) * sab
    return PairingValue(base_exp + k + m, complex(coeff * (-1) ** (m % 2)))


def tau(sec: ElementarySection, w: int) -> ElementarySection:
    """The real-structure extension es(A, alpha) -> es(conj A, w - conj alpha)."""
    return ElementarySection(np.conj(sec.a), w - np.conj(sec.alpha))


@dataclass(frozen=True)
class HermitianForm:
    matrix: np.ndarray
    sections: tuple[ElementarySection, ...]
    labels: tuple[tuple[int, int], ...]

    def min_eigenvalue(self) -> float:
        return la.min_hermitian_eig(self.matrix)[0]


def global_sections(t: TerpData) -> tuple[list[ElementarySection], list[tuple[int, int]]]:
    """Hodge-adapted sections es(A, alpha + w - 1 - p), ordered by (class, p descending)."""
    f, fc, tol = t.f, t.f.conj(), t.tol
    sections, labels = [], []
    for i, k in enumerate(t.mono.classes):
        weight = t.w if k.arg_zero else t.w - 1
        for p in range(f.hi, f.lo - 1, -1):
            a, b = t.mono.class_part(i, f[p]), t.mono.class_part(i, fc[weight - p])
            if a.shape[1] == 0 or b.shape[1] == 0:
                continue
            piece = la.intersect(a, b, tol)
            for col in piece.T:
                sections.append(ElementarySection(col, k.alpha + t.w - 1 - p))
                labels.append((i, p))
    return sections, labels


def hermitian_form(t: TerpData) -> HermitianForm:
    """Gram matrix of h(a, b) = z^{-w} P(a, tau b) on the Hodge-adapted global sections."""
    if not is_pure(t):
        raise TerpError("hermitian form requires a pure structure")
    sections, labels = global_sections(t)
    if len(sections) != t.n:
        raise TerpError("Hodge pieces do not span the space")
    n = len(sections)
    h = np.zeros((n, n), dtype=complex)
    # off-degree pairings vanish on a pure structure; only roundoff survives
    scale = np.linalg.norm(t.s, 2) * np.linalg.norm(t.gamma_inv, 2) ** 2 * (2 * math.pi) ** abs(t.w)
    for j, a in enumerate(sections):
        for k, b in enumerate(sections):
            val = pairing_elementary(a, tau(b, t.w), t)
            if val.exponent is None:
                continue
            if val.exponent != t.w:
                if abs(val.coefficient) > np.sqrt(t.tol) * scale:
                    raise TerpError("pairing of global sections has the wrong z-degree")
                continue
            h[j, k] = val.coefficient
    return HermitianForm(h, tuple(sections), tuple(labels))


# ---------------------------------------------------------------------------
# polarization by two routes


def _sqrt_series_matrix(k: np.ndarray) -> np.ndarray:
    """Principal square root of c (Id + E) with E nilpotent."""
    n = k.shape[0]
    c = complex(np.trace(k) / n)
    e = k / c - np.eye(n)
    out = np.eye(n, dtype=complex)
    term = np.eye(n, dtype=complex)
    coef = 1.0
    for j in range(1, n + 1):
        coef *= (0.5 - (j - 1)) / j
        term = term @ e
        out = out + coef * term
    return np.sqrt(c) * out


def real_gamma_twist(t: TerpData) -> np.ndarray:
    """A real operator R commuting with N with S(Ra, Rb) = S(G^{-1}a, G^{-1}b).

    On each class R is the square root of K = 1/(Gamma(alpha' + x) Gamma(alpha - x)),
    x = N/2 pi i and alpha' the representative of the dual class.  The reflection
    formula gives K = sin(pi(alpha - x))/pi, divided by (1 - alpha + x) on the
    arg=0 part.
    """
    mono = t.mono
    n = t.n
    x = mono.nmat.astype(complex) / TWO_PI_I
    eye = np.eye(n, dtype=complex)
    out = np.zeros((n, n), dtype=complex)
    for i, k in enumerate(mono.classes):
        if k.arg_zero and abs(k.alpha - 1.0) < 1e-14:
            # sin(pi x)/(pi x)
            coeffs = [(-1) ** (j // 2) * math.pi ** j / math.factorial(j + 1) if j % 2 == 0 else 0.0
                      for j in range(n + 1)]
            kmat = la.poly_nilpotent(x, coeffs)
        else:
            theta = math.pi * k.alpha
            coeffs = [np.sin(theta + j * math.pi / 2) * (-math.pi) ** j / math.factorial(j) / math.pi
                      for j in range(n + 1)]
            kmat = la.poly_nilpotent(x, coeffs)
            if k.arg_zero:
                kmat = kmat @ np.linalg.inv((1.0 - k.alpha) * eye + x)
        out = out + mono.projector(i) @ _sqrt_series_matrix(kmat)
    return out


def _hermitian_path(t: TerpData) -> tuple[Verdict, float]:
    if not _is_pure_unchecked(t):
        return Verdict.FALSE, float("nan")
    h = hermitian_form(t).matrix
    ev, scale = la.min_hermitian_eig(h)
    return Verdict.positive(ev, scale, t.tol), ev


def _classifying_path(t: TerpData, g: np.ndarray) -> Verdict:
    fr = t.f.apply(g, t.tol)
    verdicts = []
    for _, q, weight in _parts(t):
        verdicts.append(hodge.in_d(fr.restrict(q, t.tol), q.T @ t.s @ q, weight, tol=t.tol))
    return all_of(verdicts)


def twisted_in_d(t: TerpData) -> Verdict:
    """Membership of F~ itself in the classifying spaces of the two parts."""
    return _classifying_path(t, t.gamma_inv)


@dataclass(frozen=True)
class PolarizationReport:
    verdict: Verdict
    hermitian: Verdict
    classifying: Verdict
    min_eig_h: float


def polarization_report(t: TerpData) -> PolarizationReport:
    if not check_orthogonality(t):
        raise TerpError("orthogonality condition violated")
    va, ev = _hermitian_path(t)
    vb = _classifying_path(t, real_gamma_twist(t))
    if va is vb:
        verdict = va
    elif Verdict.INDETERMINATE in (va, vb):
        verdict = Verdict.INDETERMINATE
    else:
        raise DualPathDisagreement(f"hermitian-form path says {va.value}, classifying-space path says {vb.value}")
    return PolarizationReport(verdict, va, vb, ev)


def is_polarized_pure(t: TerpData) -> Verdict:
    """Polarized purity, computed through the hermitian form and through the classifying space."""
    return polarization_report(t).verdict


def mixed_terp_report(t: TerpData) -> dict[str, hodge.PMHSReport]:
    ft = t.f_tilde
    out = {}
    for arg_zero, q, weight in _parts(t):
        out["arg=0" if arg_zero else "arg!=0"] = hodge.is_pmhs(
            ft.restrict(q, t.tol), -(q.T @ t.nmat @ q), q.T @ t.s @ q, weight, t.tol)
    return out


def mixed_terp_regular_singular(t: TerpData) -> Verdict:
    """(F~, -N, S) is a polarized mixed Hodge structure on both parts."""
    return all_of(r.verdict for r in mixed_terp_report(t).values())


# ---------------------------------------------------------------------------
# rescaling orbits


def rescale(t: TerpData, r: float) -> TerpData:
    """Pull back along z -> r z: F becomes exp(-(log r)/(2 pi i) N) F."""
    if not r > 0:
        raise TerpError("rescaling parameter must be a positive real number")
    g = la.expm_nilpotent(-(math.log(r) / TWO_PI_I) * t.nmat.astype(complex))
    return t.with_filtration(t.f.apply(g, t.tol))


@dataclass(frozen=True)
class ScanRow:
    r: float
    pure: bool
    polarized: Verdict
    min_eig_h: float
    spectrum_unchanged: bool


def orbit_scan(t: TerpData, r_grid: Sequence[float], direction: str = "to_zero") -> list[ScanRow]:
    """Evaluate polarized purity along the rescaling family."""
    grid = [float(r) for r in r_grid]
    if not grid:
        raise TerpError("empty grid")
    if any(r <= 0 for r in grid):
        raise TerpError("grid radii must be positive")
    if direction not in ("to_zero", "to_infinity"):
        raise TerpError("direction must be to_zero or to_infinity")
    if not check_orthogonality(t):
        raise TerpError("orthogonality condition violated")
    base = spectrum(t)
    rows = []
    for r in grid:
        eff = r if direction == "to_zero" else 1.0 / r
        tr = rescale(t, eff)
        rep = polarization_report(tr)
        spec = spectrum(tr)
        same = len(spec) == len(base) and all(abs(a - b) <= 1e-12 for a, b in zip(spec, base))
        rows.append(ScanRow(eff, _is_pure_unchecked(tr), rep.verdict, rep.min_eig_h, same))
    return rows


@dataclass(frozen=True)
class OrbitVerdict:
    detected: bool
    threshold: float | None
    rows: tuple[ScanRow, ...]


def induces_orbit(t: TerpData, direction: str = "to_zero", r_grid: Sequence[float] | None = None) -> OrbitVerdict:
    """Largest sampled radius below which (or above which, towards infinity) every sample passes."""
    if r_grid is None:
        r_grid = np.geomspace(1e-4, 1.0, 40)
    rows = orbit_scan(t, r_grid, direction)
    ordered = sorted(rows, key=lambda row: row.r, reverse=(direction == "to_infinity"))
    threshold = None
    for row in ordered:
        if row.polarized is not Verdict.TRUE:
            break
        threshold = row.r
    return OrbitVerdict(threshold is not None, threshold, tuple(rows))
