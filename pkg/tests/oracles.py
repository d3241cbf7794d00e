"""Independent reference computations used by the tests."""
from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy.linalg import orth

# ---------------------------------------------------------------------------
# exact rational linear algebra on small matrices


def rref(rows: list[tuple]) -> tuple[tuple[Fraction, ...], ...]:
    """Reduced row echelon form; the canonical key of a row space."""
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return ()
    ncols = len(m[0])
    lead = 0
    out = []
    for c in range(ncols):
        piv = next((i for i in range(lead, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[lead], m[piv] = m[piv], m[lead]
        p = m[lead][c]
        m[lead] = [x / p for x in m[lead]]
        for i in range(len(m)):
            if i != lead and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[lead])]
        lead += 1
        if lead == len(m):
            break
    for r in m[:lead]:
        out.append(tuple(r))
    return tuple(out)


def span_key(vectors) -> tuple:
    return rref([tuple(v) for v in vectors])


def exact_rank(vectors) -> int:
    return len(span_key(vectors))


def apply(mat: tuple, v: tuple) -> tuple:
    return tuple(sum(Fraction(mat[i][j]) * v[j] for j in range(len(v))) for i in range(len(mat)))


def jordan_matrix(partition: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    n = sum(partition)
    m = [[0] * n for _ in range(n)]
    off = 0
    for size in partition:
        for k in range(size - 1):
            m[off + k][off + k + 1] = 1
        off += size
    return tuple(tuple(r) for r in m)


def _reduce(base: tuple, v: tuple) -> tuple:
    """Residual of v after elimination against an RREF basis."""
    r = [Fraction(x) for x in v]
    for row in base:
        c = next(i for i, x in enumerate(row) if x != 0)
        if r[c] != 0:
            f = r[c]
            r = [a - f * b for a, b in zip(r, row)]
    return tuple(r)


@lru_cache(maxsize=None)
def small_subspaces(n: int) -> dict[int, frozenset]:
    """All subspaces of Q^n spanned by vectors with entries in {-1, 0, 1}, keyed by dimension."""
    vecs = [v for v in itertools.product((-1, 0, 1), repeat=n) if any(v)]
    by_dim: dict[int, set] = {0: {()}}
    for d in range(1, n):
        by_dim[d] = set()
        for base in by_dim[d - 1]:
            for v in vecs:
                if any(_reduce(base, v)):
                    by_dim[d].add(span_key(list(base) + [v]))
    by_dim[n] = {span_key([tuple(int(i == j) for j in range(n)) for i in range(n)])}
    return {d: frozenset(keys) for d, keys in by_dim.items()}


def invariant_subspaces(nmat: tuple) -> dict[int, list[tuple]]:
    """The N-invariant members of small_subspaces, by dimension."""
    out = {}
    for d, keys in small_subspaces(len(nmat)).items():
        out[d] = [k for k in keys if all(not any(_reduce(k, apply(nmat, b))) for b in k)]
    return out


def _contains(big: tuple, small: tuple) -> bool:
    return len(span_key(list(big) + list(small))) == len(big)


def _weight_axioms_exact(nmat: tuple, chain: dict[int, tuple], w: int) -> bool:
    n = len(nmat)
    levels = sorted(chain)

    def W(l):  # noqa: N802
        below = [k for k in levels if k <= l]
        return chain[below[-1]] if below else ()

    for l in range(levels[0] - 2, levels[-1] + 3):
        image = [apply(nmat, b) for b in W(l)]
        if not _contains(W(l - 2), span_key(image) if image else ()):
            return False
    for l in range(0, n + 1):
        top, top_prev = W(w + l), W(w + l - 1)
        bot_prev = W(w - l - 1)
        gr_top = len(top) - len(top_prev)
        gr_bot = len(W(w - l)) - len(bot_prev)
        if gr_top != gr_bot:
            return False
        image = list(top)
        for _ in range(l):
            image = [apply(nmat, v) for v in image]
        if exact_rank(list(bot_prev) + image) - len(bot_prev) != gr_top:
            return False
    return True


@lru_cache(maxsize=None)
def weight_filtrations_by_enumeration(partition: tuple[int, ...], dims: tuple[tuple[int, int], ...]):
    """Every chain of {-1,0,1}-spanned invariant subspaces with the given (level, dim) jumps that satisfies
    both weight-filtration axioms (center 0)."""
    nmat = jordan_matrix(partition)
    subs = invariant_subspaces(nmat)
    found = []

    def dfs(i: int, prev: tuple, chain: dict):
        if i == len(dims):
            if _weight_axioms_exact(nmat, chain, 0):
                found.append(dict(chain))
            return
        level, d = dims[i]
        for cand in subs[d]:
            if prev and not _contains(cand, prev):
                continue
            chain[level] = cand
            dfs(i + 1, cand, chain)
            del chain[level]

    dfs(0, (), {})
    return found


# ---------------------------------------------------------------------------
# weight filtration of a Jordan form, from the explicit weights of its basis


def jordan_weight_basis(partition: tuple[int, ...], l: int) -> np.ndarray:
    """W_l (center 0) of the Jordan matrix: in a block of size m, e_i has weight 2i - m - 1."""
    n = sum(partition)
    cols = []
    off = 0
    for m in partition:
        for i in range(1, m + 1):
            if 2 * i - m - 1 <= l:
                cols.append(off + i - 1)
        off += m
    return np.eye(n)[:, cols]


def same_subspace(a: np.ndarray, b: np.ndarray, tol: float = 1e-7) -> bool:
    if a.shape[1] != b.shape[1]:
        return False
    if a.shape[1] == 0:
        return True
    qa, qb = orth(a), orth(b)
    return np.linalg.norm(qb - qa @ (qa.conj().T @ qb)) <= tol


# ---------------------------------------------------------------------------
# random nilpotents with known Jordan basis


def random_partition(rng, n: int) -> tuple[int, ...]:
    parts = []
    left = n
    while left:
        k = int(rng.integers(1, left + 1))
        parts.append(k)
        left -= k
    return tuple(sorted(parts, reverse=True))


def random_nilpotent(rng, n: int, cond_max: float = 50.0):
    """(N, P, partition) with N = P J P^{-1}."""
    part = random_partition(rng, n)
    j = np.array(jordan_matrix(part), dtype=float)
    while True:
        p = rng.normal(size=(n, n))
        if np.linalg.cond(p) < cond_max:
            break
    return p @ j @ np.linalg.inv(p), p, part
