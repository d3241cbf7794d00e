"""Stokes data of semi-simple TERP-structures, ADE root systems and Coxeter factorizations.

Root systems are held in exact integer coordinates together with the integer Gram
matrix of the ambient pairing, so every reflection is an integer matrix
``I - beta beta^T G`` and all enumeration below is exact.
"""
from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, field

import numpy as np

STOKES_ANGLE_TOL = 1e-12
UNIT_MODULUS_TOL = 1e-10


class StokesError(ValueError):
    """Invalid Stokes data or a direction on a Stokes ray."""


class BudgetExceeded(RuntimeError):
    """Enumeration would exceed the configured combinatorial budget."""


# ---------------------------------------------------------------------------
# Stokes data


def _as_unit_upper(t) -> np.ndarray:
    t = np.asarray(t)
    if t.ndim != 2 or t.shape[0] != t.shape[1]:
        raise StokesError("T must be a square matrix")
    if np.any(np.tril(t, -1) != 0):
        raise StokesError("T must be upper triangular")
    if np.any(np.diag(t) != 1):
        raise StokesError("T must have unit diagonal")
    return t


def stokes_directions(u) -> list[float]:
    """Arguments in [0, 2 pi) of the directions xi with Re((u_i - u_j) / xi) = 0 for some i != j."""
    u = [complex(z) for z in u]
    _check_distinct(u)
    angles: list[float] = []
    for i, j in itertools.combinations(range(len(u)), 2):
        phi = math.atan2((u[i] - u[j]).imag, (u[i] - u[j]).real)
        for theta in (phi + math.pi / 2, phi - math.pi / 2):
            theta %= 2 * math.pi
            if not any(_angle_close(theta, a) for a in angles):
                angles.append(theta)
    return sorted(angles)


def _angle_close(a: float, b: float, tol: float = STOKES_ANGLE_TOL) -> bool:
    d = abs(a - b) % (2 * math.pi)
    return min(d, 2 * math.pi - d) <= tol


def _check_distinct(u: list[complex]) -> None:
    for i, j in itertools.combinations(range(len(u)), 2):
        if u[i] == u[j]:
            raise StokesError(f"eigenvalues u_{i + 1} and u_{j + 1} coincide")


def is_stokes_direction(u, xi: complex) -> bool:
    theta = math.atan2(complex(xi).imag, complex(xi).real) % (2 * math.pi)
    return any(_angle_close(theta, a) for a in stokes_directions(u))


@dataclass(frozen=True)
class StokesData:
    """Finite data (w, u, xi, T) of a semi-simple TERP-structure."""

    w: int
    u: tuple[complex, ...]
    xi: complex
    t: np.ndarray = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "u", tuple(complex(z) for z in self.u))
        object.__setattr__(self, "t", _as_unit_upper(self.t))
        if len(self.u) != self.t.shape[0]:
            raise StokesError("number of eigenvalues does not match the size of T")
        _check_distinct(list(self.u))
        if abs(abs(complex(self.xi)) - 1.0) > 1e-12:
            raise StokesError("xi must have modulus 1")

    @property
    def n(self) -> int:
        return len(self.u)

    def validate(self) -> None:
        """Raise unless xi is off the Stokes rays and u is listed in the xi-order."""
        if not validate_order(self):
            raise StokesError("eigenvalues are not listed in increasing order of Re(u / xi)")

    def to_payload(self) -> dict:
        t = self.t
        entries = t.tolist() if np.isrealobj(t) else [[[z.real, z.imag] for z in row] for row in t.tolist()]
        return {
            "w": self.w,
            "u": [[z.real, z.imag] for z in self.u],
            "xi": [complex(self.xi).real, complex(self.xi).imag],
            "T": entries,
        }


def validate_order(data: StokesData) -> bool:
    """True iff Re(u_i / xi) < Re(u_j / xi) for all i < j."""
    if is_stokes_direction(data.u, data.xi):
        raise StokesError("xi lies on a Stokes direction")
    keys = [(z / data.xi).real for z in data.u]
    return all(a < b for a, b in zip(keys, keys[1:]))


def monodromy(t, w: int) -> np.ndarray:
    """(-1)^w T^{-1} T^T; exact for integer T."""
    t = _as_unit_upper(t)
    sign = -1 if w % 2 else 1
    if np.issubdtype(t.dtype, np.integer):
        return sign * _unit_upper_inverse_int(t) @ t.T
    return sign * np.linalg.solve(t, t.T)


def _unit_upper_inverse_int(t: np.ndarray) -> np.ndarray:
    """Exact inverse of an integer unit upper triangular matrix by back substitution."""
    n = t.shape[0]
    inv = np.eye(n, dtype=t.dtype)
    for i in range(n - 1, -1, -1):
        for j in range(i + 1, n):
            inv[i] -= t[i, j] * inv[j]
    return inv


@dataclass(frozen=True)
class HypothesisReport:
    holds: bool
    positive_definite: bool
    pairing_eigenvalues: tuple[float, ...]
    monodromy_eigenvalues: tuple[complex, ...]
    unit_modulus: bool | None
    forbidden_eigenvalue_absent: bool | None
    max_modulus_defect: float | None


def conjecture_hypothesis(t, w: int) -> HypothesisReport:
    """Positive definiteness of T + T^T, plus the eigenvalue claims it implies for the monodromy."""
    t = _as_unit_upper(t)
    pairing = (t + t.T).astype(complex if np.iscomplexobj(t) else float)
    herm = (pairing + pairing.conj().T) / 2
    peig = np.linalg.eigvalsh(herm)
    # eigenvalues at roundoff level of the largest one count as zero
    margin = 64 * len(peig) * np.finfo(float).eps * max(float(np.max(np.abs(peig))), 1.0)
    pd = bool(np.all(np.isreal(pairing))) and bool(peig[0] > margin)
    m = monodromy(t, w).astype(complex)
    if not pd:
        eig = np.linalg.eigvals(m)
        return HypothesisReport(False, False, tuple(float(x) for x in peig), tuple(eig), None, None, None)
    # M preserves the positive form L L^T, so L^T M L^{-T} is orthogonal; its eigenvalues are well conditioned
    chol = np.linalg.cholesky(pairing.real)
    q = chol.T @ m @ np.linalg.inv(chol.T)
    eig = np.linalg.eigvals(q)
    defect = float(np.max(np.abs(np.abs(eig) - 1.0)))
    forbidden = -1.0 if w % 2 == 0 else 1.0
    absent = bool(np.min(np.abs(eig - forbidden)) > UNIT_MODULUS_TOL)
    unit = defect <= UNIT_MODULUS_TOL
    return HypothesisReport(True, True, tuple(float(x) for x in peig), tuple(eig), unit, absent, defect)


def _sign_positive(z) -> bool:
    z = complex(z)
    return z.real > 0 or (z.real == 0 and z.imag > 0)


def sign_normalize(t) -> np.ndarray:
    """Canonical representative of {B T B : B = diag(+-1)}.

    Off-diagonal entries are visited row by row, left to right.  The first entry that
    links two so-far unrelated indices fixes their relative sign so that it becomes
    positive (real part first, imaginary part on ties).
    """
    t = _as_unit_upper(t)
    n = t.shape[0]
    parent = list(range(n))
    flip = [1] * n  # sign of node relative to its parent

    def find(i):
        s = 1
        while parent[i] != i:
            s *= flip[i]
            i = parent[i]
        return i, s

    for i in range(n):
        for j in range(i + 1, n):
            if t[i, j] == 0:
                continue
            ri, si = find(i)
            rj, sj = find(j)
            if ri == rj:
                continue
            want = 1 if _sign_positive(t[i, j]) else -1
            parent[rj] = ri
            flip[rj] = want * si * sj
    b = np.array([find(i)[1] for i in range(n)], dtype=int)
    return (b[:, None] * t * b[None, :]).astype(t.dtype)


# ---------------------------------------------------------------------------
# root systems

_E_EDGES = [(1, 3), (3, 4), (4, 5), (5, 6), (2, 4), (6, 7), (7, 8)]
COXETER_NUMBER = {"A": lambda n: n + 1, "D": lambda n: 2 * n - 2, "E": lambda n: {6: 12, 7: 18, 8: 30}[n]}
WEYL_ORDER = {
    "A": lambda n: math.factorial(n + 1),
    "D": lambda n: 2 ** (n - 1) * math.factorial(n),
    "E": lambda n: {6: 51840, 7: 2903040, 8: 696729600}[n],
}


def documented_count(kind: str) -> int:
    """n! h^n / |W|, the number of reflection factorizations of a Coxeter element."""
    family, n = _parse_kind(kind)
    h = COXETER_NUMBER[family](n)
    return math.factorial(n) * h**n // WEYL_ORDER[family](n)


def _parse_kind(kind: str) -> tuple[str, int]:
    kind = kind.replace("_", "").strip().upper()
    if len(kind) < 2 or kind[0] not in "ADE" or not kind[1:].isdigit():
        raise StokesError(f"unknown root system {kind!r}")
    family, n = kind[0], int(kind[1:])
    if family == "A" and n < 1 or family == "D" and n < 4 or family == "E" and n not in (6, 7, 8):
        raise StokesError(f"unsupported rank for type {family}: {n}")
    return family, n


@dataclass(frozen=True)
class RootSystem:
    kind: str
    rank: int
    roots: np.ndarray = field(repr=False)
    simple: np.ndarray = field(repr=False)
    gram: np.ndarray = field(repr=False)

    def pairing(self, a, b) -> int:
        return int(np.asarray(a) @ self.gram @ np.asarray(b))

    def reflection(self, beta) -> np.ndarray:
        beta = np.asarray(beta, dtype=np.int64)
        return np.eye(len(beta), dtype=np.int64) - np.outer(beta, beta @ self.gram)

    def reflect(self, beta, v) -> np.ndarray:
        beta, v = np.asarray(beta, dtype=np.int64), np.asarray(v, dtype=np.int64)
        return v - self.pairing(beta, v) * beta

    def is_root(self, v) -> bool:
        return tuple(int(x) for x in v) in self._root_set

    @property
    def _root_set(self) -> set[tuple[int, ...]]:
        cached = self.__dict__.get("_roots_cache")
        if cached is None:
            cached = {tuple(int(x) for x in r) for r in self.roots}
            object.__setattr__(self, "_roots_cache", cached)
        return cached

    def positive_roots(self) -> np.ndarray:
        """Roots that are non-negative integer combinations of the simple roots."""
        coeffs = np.linalg.lstsq(self.simple.T.astype(float), self.roots.T.astype(float), rcond=None)[0]
        keep = np.all(coeffs > -0.5, axis=0)
        return self.roots[keep]

    def gram_of(self, betas) -> np.ndarray:
        b = np.asarray(betas, dtype=np.int64)
        return b @ self.gram @ b.T


def root_system(kind: str) -> RootSystem:
    """Integer models: A_n = {e_i - e_j}, D_n = {+-e_i +- e_j}, E_n in simple-root coordinates."""
    family, n = _parse_kind(kind)
    if family == "A":
        eye = np.eye(n + 1, dtype=np.int64)
        roots = [eye[i] - eye[j] for i in range(n + 1) for j in range(n + 1) if i != j]
        simple = [eye[i] - eye[i + 1] for i in range(n)]
        gram = eye
    elif family == "D":
        eye = np.eye(n, dtype=np.int64)
        roots = [s * eye[i] + r * eye[j] for i in range(n) for j in range(i + 1, n) for s in (1, -1) for r in (1, -1)]
        simple = [eye[i] - eye[i + 1] for i in range(n - 1)] + [eye[n - 2] + eye[n - 1]]
        gram = eye
    else:
        gram = 2 * np.eye(n, dtype=np.int64)
        for a, b in _E_EDGES:
            if a <= n and b <= n:
                gram[a - 1, b - 1] = gram[b - 1, a - 1] = -1
        simple = list(np.eye(n, dtype=np.int64))
        roots = _reflection_closure(simple, gram)
    return RootSystem(f"{family}{n}", n, np.array(roots, dtype=np.int64), np.array(simple, dtype=np.int64), gram)


def _reflection_closure(simple: list[np.ndarray], gram: np.ndarray) -> list[np.ndarray]:
    seen = {tuple(int(x) for x in s): s for s in simple}
    queue = deque(simple)
    while queue:
        v = queue.popleft()
        for s in simple:
            w = v - int(s @ gram @ v) * s
            key = tuple(int(x) for x in w)
            if key not in seen:
                seen[key] = w
                queue.append(w)
    return [seen[k] for k in sorted(seen)]


def coxeter_element(system: RootSystem, simple_roots=None) -> np.ndarray:
    """s_1 s_2 ... s_n for the simple roots in the given (default Bourbaki) order."""
    simple = system.simple if simple_roots is None else np.asarray(simple_roots, dtype=np.int64)
    c = np.eye(system.gram.shape[0], dtype=np.int64)
    for beta in simple:
        c = c @ system.reflection(beta)
    return c


def element_order(g: np.ndarray, limit: int = 1000) -> int:
    eye = np.eye(g.shape[0], dtype=g.dtype)
    acc = g.copy()
    for k in range(1, limit + 1):
        if np.array_equal(acc, eye):
            return k
        acc = acc @ g
    raise StokesError("element order exceeds the search limit")


def _int_rank(a: np.ndarray) -> int:
    """Exact rank of an integer matrix by fraction-free elimination."""
    m = [[int(x) for x in row] for row in a]
    rows, cols = len(m), len(m[0]) if m else 0
    rank, prev = 0, 1
    for c in range(cols):
        pivot = next((r for r in range(rank, rows) if m[r][c] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        p = m[rank][c]
        for r in range(rank + 1, rows):
            f = m[r][c]
            m[r] = [(p * m[r][k] - f * m[rank][k]) // prev for k in range(cols)]
        prev = p
        rank += 1
    return rank


def reflection_length(g: np.ndarray) -> int:
    """Absolute length of a finite reflection group element, rank(I - g)."""
    return _int_rank(np.eye(g.shape[0], dtype=np.int64) - g)


# ---------------------------------------------------------------------------
# Coxeter factorizations and Hurwitz moves


@dataclass(frozen=True)
class CoxeterFactorization:
    betas: tuple[tuple[int, ...], ...]
    c: np.ndarray = field(repr=False)
    system: RootSystem = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "betas", tuple(tuple(int(x) for x in b) for b in self.betas))

    @property
    def n(self) -> int:
        return len(self.betas)


def reflection_product(system: RootSystem, betas) -> np.ndarray:
    g = np.eye(system.gram.shape[0], dtype=np.int64)
    for beta in betas:
        g = g @ system.reflection(beta)
    return g


def is_coxeter_factorization(system: RootSystem, betas, c) -> bool:
    return all(system.is_root(b) for b in betas) and np.array_equal(reflection_product(system, betas), c)


def hurwitz_move(fact: CoxeterFactorization, i: int, direction: int = 1) -> CoxeterFactorization:
    """Braid move at positions (i, i+1), 1-based.

    direction=+1: (b_i, b_{i+1}) -> (b_{i+1}, s_{b_{i+1}}(b_i));
    direction=-1: (b_i, b_{i+1}) -> (s_{b_i}(b_{i+1}), b_i).
    """
    if not 1 <= i <= fact.n - 1:
        raise StokesError(f"move index {i} outside 1..{fact.n - 1}")
    if direction not in (1, -1):
        raise StokesError("direction must be +1 or -1")
    sys_ = fact.system
    betas = list(fact.betas)
    a, b = betas[i - 1], betas[i]
    if direction == 1:
        betas[i - 1], betas[i] = b, tuple(sys_.reflect(b, a))
    else:
        betas[i - 1], betas[i] = tuple(sys_.reflect(a, b)), a
    return CoxeterFactorization(tuple(betas), fact.c, sys_)


def simple_factorization(system: RootSystem) -> CoxeterFactorization:
    return CoxeterFactorization(tuple(map(tuple, system.simple)), coxeter_element(system), system)


def stokes_from_factorization(fact: CoxeterFactorization) -> np.ndarray:
    """Unit upper triangular T with T_ij = (b_i, b_j) for i < j."""
    g = fact.system.gram_of(fact.betas)
    return np.triu(g, 1) + np.eye(fact.n, dtype=np.int64)


def _canonical_signs(betas, system: RootSystem) -> tuple[tuple[int, ...], ...]:
    """Representative of a tuple of roots up to componentwise sign: each root made positive."""
    pos = system.__dict__.get("_positive_cache")
    if pos is None:
        pos = {tuple(int(x) for x in r) for r in system.positive_roots()}
        object.__setattr__(system, "_positive_cache", pos)
    out = []
    for b in betas:
        b = tuple(int(x) for x in b)
        out.append(b if b in pos else tuple(-x for x in b))
    return tuple(out)


def enumerate_factorizations(system: RootSystem, c=None, budget: int = 200_000) -> list[tuple[tuple[int, ...], ...]]:
    """Every tuple of roots (all signs) whose reflections compose to c, in lexicographic order.

    Branches are pruned with the reflection length: after choosing b_1..b_k the remaining
    product s_{b_k}...s_{b_1} c must have absolute length n - k.
    """
    c = coxeter_element(system) if c is None else np.asarray(c, dtype=np.int64)
    n = reflection_length(c)
    roots = [tuple(int(x) for x in r) for r in system.roots]
    refl = {r: system.reflection(r) for r in roots}
    out: list[tuple[tuple[int, ...], ...]] = []
    visits = 0

    def dfs(rest: np.ndarray, prefix: list[tuple[int, ...]]):
        nonlocal visits
        k = n - len(prefix)
        if k == 0:
            if np.array_equal(rest, np.eye(rest.shape[0], dtype=np.int64)):
                out.append(tuple(prefix))
            return
        for r in roots:
            visits += 1
            if visits > budget:
                raise BudgetExceeded(f"enumeration exceeded {budget} branch visits")
            nxt = refl[r] @ rest
            if reflection_length(nxt) == k - 1:
                dfs(nxt, prefix + [r])

    dfs(c, [])
    return out


def count_classes(kind: str, max_rank: int = 8, budget: int = 5_000_000) -> int:
    """Number of sign classes of root tuples whose reflections compose to the Coxeter element.

    A sign class is the same thing as a tuple of reflections, so the count is computed by
    a memoized recursion over the remaining element, choosing one reflection per step.
    """
    system = root_system(kind)
    if system.rank > max_rank:
        raise BudgetExceeded(f"rank {system.rank} exceeds max_rank={max_rank}")
    c = coxeter_element(system)
    pos = [system.reflection(r) for r in system.positive_roots()]
    eye = np.eye(c.shape[0], dtype=np.int64)
    memo: dict[bytes, int] = {}
    work = 0

    def count(rest: np.ndarray, k: int) -> int:
        nonlocal work
        if k == 0:
            return int(np.array_equal(rest, eye))
        key = rest.tobytes()
        if key in memo:
            return memo[key]
        total = 0
        for s in pos:
            work += 1
            if work > budget:
                raise BudgetExceeded(f"class count exceeded {budget} reflection tests")
            nxt = s @ rest
            if reflection_length(nxt) == k - 1:
                total += count(nxt, k - 1)
        memo[key] = total
        return total

    return count(c, system.rank)


def count_classes_by_enumeration(kind: str, budget: int = 200_000) -> int:
    """Independent route: enumerate all signed tuples, then quotient by componentwise sign."""
    system = root_system(kind)
    tuples = enumerate_factorizations(system, budget=budget)
    return len({_canonical_signs(b, system) for b in tuples})


def hurwitz_orbit(fact: CoxeterFactorization, budget: int = 100_000) -> set[tuple[tuple[int, ...], ...]]:
    """Sign classes reachable from fact by Hurwitz moves in both directions."""
    system = fact.system
    start = _canonical_signs(fact.betas, system)
    seen = {start}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        f = CoxeterFactorization(cur, fact.c, system)
        for i in range(1, f.n):
            for d in (1, -1):
                nxt = _canonical_signs(hurwitz_move(f, i, d).betas, system)
                if nxt not in seen:
                    seen.add(nxt)
                    if len(seen) > budget:
                        raise BudgetExceeded("Hurwitz orbit exceeded the budget")
                    queue.append(nxt)
    return seen


def emit_stokes(kind: str, budget: int = 200_000) -> list[np.ndarray]:
    """Sign-normalized Stokes matrices of all factorizations, deduplicated, in sorted order."""
    system = root_system(kind)
    mats = {}
    for betas in enumerate_factorizations(system, budget=budget):
        t = sign_normalize(stokes_from_factorization(CoxeterFactorization(betas, coxeter_element(system), system)))
        mats[tuple(t.ravel().tolist())] = t
    return [mats[k] for k in sorted(mats)]
