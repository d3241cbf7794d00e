from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.linalg import expm

from factory import Block, alternating_antidiag, assemble, jordan, jordan_block
from oracles import jordan_weight_basis, random_nilpotent, same_subspace, weight_filtrations_by_enumeration

from artifact import hodge
from artifact.hodge import Filtration, HodgeError
from artifact.verdict import Verdict

J2 = np.array([[0.0, 1.0], [-1.0, 0.0]])
E1, E2 = np.eye(2)


def weight_one(v) -> Filtration:
    return Filtration.from_dict(2, {0: np.eye(2), 1: v})


# ---------------------------------------------------------------------------
# pure structures


def test_hodge_structure_examples():
    assert hodge.is_hodge_structure(Filtration.from_dict(1, {0: [[1.0]]}), 0)
    assert hodge.is_hodge_structure(weight_one(E1 + 1j * E2), 1)
    assert not hodge.is_hodge_structure(weight_one(E1), 1)


def test_polarized_examples():
    assert hodge.is_phs(weight_one(E1 + 1j * E2), J2, 1) is Verdict.TRUE
    assert hodge.is_phs(weight_one(E1 - 1j * E2), J2, 1) is Verdict.FALSE
    assert hodge.is_phs(Filtration.from_dict(1, {0: [[1.0]]}), np.array([[1.0]]), 0) is Verdict.TRUE
    assert hodge.is_polarized_hodge_structure is hodge.is_phs


@pytest.mark.parametrize("v, expected", [(E1 + 1j * E2, 2.0), (E1 - 1j * E2, -2.0)])
def test_positivity_matches_direct_expansion(v, expected):
    # i^{p-q} S(a, conj a) with p - q = 1
    direct = (1j * (v @ J2 @ v.conj())).real
    assert direct == pytest.approx(expected)
    g = hodge.hermitian_gram(v.reshape(2, 1), J2, 1)
    assert g[0, 0].real == pytest.approx(expected)


def test_in_d_examples():
    good, bad = weight_one(E1 + 1j * E2), weight_one(E1 - 1j * E2)
    dims = good.dims()
    assert hodge.in_d(good, J2, 1, dims) is Verdict.TRUE
    assert hodge.in_check_d(bad, J2, 1, dims)
    assert hodge.in_d(bad, J2, 1, dims) is Verdict.FALSE
    wrong = {0: 2, 1: 2}
    assert not hodge.in_check_d(good, J2, 1, wrong)
    assert hodge.in_d(good, J2, 1, wrong) is Verdict.FALSE


def test_form_validation():
    with pytest.raises(HodgeError, match="antisymmetric"):
        hodge.is_phs(weight_one(E1 + 1j * E2), np.eye(2), 1)
    with pytest.raises(HodgeError, match="degenerate"):
        hodge.is_phs(weight_one(E1 + 1j * E2), np.zeros((2, 2)), 1)
    with pytest.raises(HodgeError):
        Filtration.from_dict(2, {0: E1, 1: E1})
    with pytest.raises(HodgeError):
        Filtration.from_dict(2, {0: np.eye(2), 1: E1 + 1j * E2, 2: E2})


def _random_symplectic(rng, g: int, size: float) -> np.ndarray:
    j = np.block([[np.zeros((g, g)), np.eye(g)], [-np.eye(g), np.zeros((g, g))]])
    a = rng.normal(size=(2 * g, 2 * g))
    return expm(j @ (a + a.T) * size), j


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 3), st.integers(0, 2**31 - 1), st.floats(0.0, 0.8))
def test_symplectic_moves_stay_in_d(g, seed, size):
    """Real symplectic transforms of the standard weight-one structure stay polarized; conjugates never are."""
    rng = np.random.default_rng(seed)
    m, j = _random_symplectic(rng, g, size)
    top = np.vstack([np.eye(g), 1j * np.eye(g)])
    f = Filtration.from_dict(2 * g, {0: np.eye(2 * g), 1: m @ top})
    assert hodge.is_phs(f, j, 1) is Verdict.TRUE
    assert hodge.hodge_numbers(f, 1) == {0: g, 1: g}
    assert hodge.is_phs(f.conj(), j, 1) is Verdict.FALSE


# ---------------------------------------------------------------------------
# weight filtrations


def test_weight_examples():
    wf = hodge.weight_filtration(np.zeros((2, 2)), 0)
    assert wf.dim(-1) == 0 and wf.dim(0) == 2
    wf = hodge.weight_filtration(jordan(2), 0)
    assert wf.dim(-2) == 0 and wf.dim(2) == 2
    assert same_subspace(wf[-1], E1.reshape(2, 1)) and same_subspace(wf[0], E1.reshape(2, 1))
    for w in (-3, 2, 5):
        for n in (1, 3):
            wf = hodge.weight_filtration(np.zeros((n, n)), w)
            assert wf.dim(w - 1) == 0 and wf.dim(w) == n


def test_jordan2_weight_is_the_unique_candidate():
    found = weight_filtrations_by_enumeration((2,), ((-1, 1), (0, 1), (1, 2)))
    assert len(found) == 1
    assert [tuple(map(float, row)) for row in found[0][-1]] == [(1.0, 0.0)]


def test_weight_axioms_detect_wrong_filtration():
    nmat = jordan(2)
    wrong = hodge.WeightFiltration(2, {-2: np.zeros((2, 0)), -1: E2.reshape(2, 1), 1: np.eye(2)}, 0)
    assert hodge.weight_axioms(wrong, nmat, 0)
    assert not hodge.weight_axioms(hodge.weight_filtration(nmat, 0), nmat, 0)


def test_nilpotent_order():
    assert hodge.nilpotent_order(np.zeros((3, 3))) == 0
    assert hodge.nilpotent_order(jordan(4)) == 3
    with pytest.raises(HodgeError, match="not nilpotent"):
        hodge.nilpotent_order(np.eye(2))
    with pytest.raises(HodgeError):
        hodge.weight_filtration(np.eye(2) + jordan(2))


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 8), st.integers(0, 2**31 - 1), st.integers(-4, 4))
def test_weight_matches_jordan_oracle(n, seed, w):
    nmat, p, part = random_nilpotent(np.random.default_rng(seed), n)
    wf = hodge.weight_filtration(nmat, w)
    assert not hodge.weight_axioms(wf, nmat, w)
    for l in range(-n - 1, n + 2):
        assert same_subspace(wf[w + l], p @ jordan_weight_basis(part, l), 1e-8)


def test_graded_dims_symmetric():
    nmat, _, _ = random_nilpotent(np.random.default_rng(3), 7)
    dims = hodge.weight_filtration(nmat, 2).graded_dims()
    assert all(dims.get(2 + l, 0) == dims.get(2 - l, 0) for l in range(8))


# ---------------------------------------------------------------------------
# graded pairing and primitive decomposition


def test_graded_pairing_examples():
    s = np.diag([2.0, -1.0, 3.0])
    wf = hodge.weight_filtration(np.zeros((3, 3)), 0)
    assert np.allclose(hodge.graded_pairing(s, np.zeros((3, 3)), wf, 0, 0), s)
    # single Jordan block, evaluated on the representative e2 of Gr_1
    wf = hodge.weight_filtration(jordan(2), 0)
    val = hodge.graded_pairing(J2, jordan(2), wf, 0, 1)
    assert val.shape == (1, 1) and val[0, 0] == pytest.approx(-1.0)
    # the representative e2 + x e1 gives the same value
    for x in (0.3, -2.0, 1j):
        a = E2 + x * E1
        assert a @ J2 @ jordan(2) @ a == pytest.approx(-1.0)


def test_primitive_decomposition_examples():
    wf = hodge.weight_filtration(np.zeros((3, 3)), 0)
    dec = hodge.primitive_decomposition(np.zeros((3, 3)), wf, 0)
    assert set(dec) == {0} and [(i, v.shape[1]) for i, v in dec[0]] == [(0, 3)]

    wf = hodge.weight_filtration(jordan(2), 0)
    assert hodge.primitive_subspace(jordan(2), wf, 0, 1).shape[1] == 1
    assert hodge.primitive_subspace(jordan(2), wf, 0, 0).shape[1] == 0
    dec = hodge.primitive_decomposition(jordan(2), wf, 0)
    assert [(i, v.shape[1]) for i, v in dec[-1]] == [(1, 1)]

    nmat = np.zeros((4, 4))
    nmat[:3, :3] = jordan(3)
    wf = hodge.weight_filtration(nmat, 0)
    assert hodge.primitive_subspace(nmat, wf, 0, 2).shape[1] == 1
    assert hodge.primitive_subspace(nmat, wf, 0, 0).shape[1] == 1
    assert hodge.primitive_subspace(nmat, wf, 0, 1).shape[1] == 0


def test_primitive_decomposition_orthogonal():
    """S_l-orthogonality of N^i P pieces inside one graded level."""
    nmat = np.zeros((4, 4))
    nmat[:3, :3] = jordan(3)
    s = np.zeros((4, 4))
    s[:3, :3] = alternating_antidiag(3)
    s[3, 3] = 1.0
    wf = hodge.weight_filtration(nmat, 0)
    g = hodge.graded_pairing(s, nmat, wf, 0, 0)
    c = wf.graded_basis(0)
    parts = hodge.primitive_decomposition(nmat, wf, 0)[0]
    assert len(parts) == 2
    (_, a), (_, b) = parts
    assert abs((a.T @ g @ b).item()) < 1e-12
    assert c.shape[1] == 2


# ---------------------------------------------------------------------------
# polarized mixed Hodge structures and nilpotent orbits


def _jordan_case(m: int, weight: int, sign: float):
    b = jordan_block(m, 1.0, weight, sign)
    ms, nmat, s, f = assemble([b])
    return Filtration.from_dict(m, f), -nmat, s


def test_pmhs_trivial_n_is_phs():
    f = weight_one(E1 + 1j * E2)
    assert hodge.is_pmhs(f, np.zeros((2, 2)), J2, 1).verdict is Verdict.TRUE
    assert hodge.is_pmhs(weight_one(E1 - 1j * E2), np.zeros((2, 2)), J2, 1).verdict is Verdict.FALSE


def test_pmhs_jordan_example_against_orbit():
    nmat = jordan(2)
    f = Filtration.from_dict(2, {0: np.eye(2), 1: E2})
    # i S(a, conj a) on a = rho e1 + e2 is -2 Im rho: never in D for large Im rho
    rep = hodge.is_pmhs(f, nmat, J2, 1)
    assert rep.verdict is Verdict.FALSE and rep.failed_axiom == "positivity"
    assert hodge.orbit_bound(f, nmat, J2, 1) is None
    rep = hodge.is_pmhs(f, -nmat, J2, 1)
    assert rep.verdict is Verdict.TRUE
    bound = hodge.orbit_bound(f, -nmat, J2, 1)
    assert bound is not None and bound == pytest.approx(0.0, abs=1e-6)
    region = hodge.orbit_region(f, -nmat, J2, 1, [1j * y for y in np.linspace(1, 100, 12)])
    assert all(v is Verdict.TRUE for _, v in region)


def test_pmhs_transversality_flag():
    # graded pieces are Hodge structures, but N F^1 = span(e2 + a e1) is not inside F^0
    nmat, s = -jordan(3), alternating_antidiag(3)
    a, b, c = 0.4, 0.1, -0.7
    f = Filtration.from_dict(3, {-1: np.eye(3), 0: np.array([[b, a, 1.0], [c, 1.0, 0.0]]).T, 1: np.array([b, a, 1.0])})
    rep = hodge.is_pmhs(f, nmat, s, 0)
    assert rep.verdict is Verdict.FALSE and rep.failed_axiom == "transversality"
    good = Filtration.from_dict(3, {-1: np.eye(3), 0: np.array([[b, a, 1.0], [a, 1.0, 0.0]]).T, 1: np.array([b, a, 1.0])})
    assert hodge.is_pmhs(good, nmat, s, 0).failed_axiom != "transversality"


@pytest.mark.parametrize("m, weight", [(2, 1), (3, 0), (3, 2), (4, 1)])
@pytest.mark.parametrize("sign", [1.0, -1.0])
@pytest.mark.parametrize("c", [0.0, 0.4j, -0.3 + 0.7j, 1.5 - 0.2j])
def test_pmhs_iff_orbit(m, weight, sign, c):
    f, nmat, s = _jordan_case(m, weight, sign)
    f = f.apply(expm(c * nmat))
    pm = hodge.is_pmhs(f, nmat, s, weight).verdict
    bound = hodge.orbit_bound(f, nmat, s, weight)
    assert pm is not Verdict.INDETERMINATE
    assert (pm is Verdict.TRUE) == (bound is not None)


def test_orbit_region_examples():
    f = weight_one(E1 + 1j * E2)
    region = hodge.orbit_region(f, np.zeros((2, 2)), J2, 1, [0, 1j, -5j, 3 + 2j])
    assert {v for _, v in region} == {hodge.in_d(f, J2, 1)}
    wrong = Filtration.from_dict(2, {0: np.eye(2), 1: np.eye(2)})
    region = hodge.orbit_region(wrong, -jordan(2), J2, 1, [1j, 10j, 100j])
    assert all(v is Verdict.FALSE for _, v in region)
    with pytest.raises(HodgeError, match="empty"):
        hodge.orbit_region(f, np.zeros((2, 2)), J2, 1, [])


def test_pmhs_sum_with_trivial_block():
    b3 = jordan_block(3, 1.0, 0, 1.0)
    one = Block(np.eye(1), np.zeros((1, 1)), np.array([[1.0]]), {0: np.ones((1, 1), dtype=complex)})
    _, nmat, s, f = assemble([b3, one])
    filt = Filtration.from_dict(4, f)
    assert hodge.is_pmhs(filt, -nmat, s, 0).verdict is Verdict.TRUE
    assert hodge.is_pmhs(filt, -nmat, -s, 0).verdict is Verdict.FALSE
