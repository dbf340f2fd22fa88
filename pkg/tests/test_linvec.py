import numpy as np
import pytest

from src.enums import DecompositionMode, Policy, ProductKind, Verdict
from src.errors import (
    InstanceError,
    NormalizationError,
    ShapeError,
    SingularityError,
    UndefinedMeasureError,
)
from src.linvec import (
    coupling_measure,
    invert,
    is_entangled,
    operator_schmidt,
    par_decompose_directsum,
    rank_factorization,
    realign,
    solve,
    state_schmidt,
    strict_par_decompose_tensor,
    svd,
    vec_instance,
)
from src.linvec.gates import bell_state, cnot, hadamard, swap


def _random(rng, rows, cols):
    return rng.uniform(-1, 1, (rows, cols)) + 1j * rng.uniform(-1, 1, (rows, cols))


def _tensor(m):
    return vec_instance(ProductKind.TENSOR).morphism(m)


# ============================================================
# SVD KERNEL
# ============================================================

def test_svd_reconstructs_random_matrices():
    rng = np.random.default_rng(2024)
    for _ in range(500):
        rows, cols = (int(x) for x in rng.integers(1, 17, size=2))
        a = _random(rng, rows, cols)
        u, s, v = svd(a)
        k = min(rows, cols)
        assert u.shape == (rows, k) and v.shape == (cols, k)
        assert np.all(np.diff(s) <= 1e-12)
        assert np.abs((u * s) @ v.conj().T - a).max() <= 1e-10 * (1 + np.abs(a).max())
        assert abs(np.sum(s ** 2) - np.linalg.norm(a) ** 2) <= 1e-9 * (1 + np.linalg.norm(a) ** 2)
        assert np.allclose(u.conj().T @ u, np.eye(k), atol=1e-10)
        assert np.allclose(v.conj().T @ v, np.eye(k), atol=1e-10)


def test_svd_rotation_stays_finite_for_nearly_decoupled_columns():
    # column norms 1e-100 and 1e100 with a small overlap: zeta ≈ 5e211
    a = np.array([[1e-100, 1e88], [0.0, 1e100]], dtype=np.complex128)
    with np.errstate(over="raise", invalid="raise"):
        u, s, v = svd(a)
    assert np.all(np.isfinite(s))
    assert np.abs((u * s) @ v.conj().T - a).max() <= 1e-10 * (1 + np.abs(a).max())


def test_svd_full_gives_unitary_factors():
    rng = np.random.default_rng(5)
    for rows, cols in [(5, 2), (2, 5), (3, 3)]:
        u, s, v = svd(_random(rng, rows, cols), full=True)
        assert u.shape == (rows, rows)
        assert np.allclose(u.conj().T @ u, np.eye(rows), atol=1e-10)


def test_svd_of_rank_deficient_matrix():
    a = np.outer([1, 2, 3], [1, 1])
    u, s, v = svd(a)
    assert s[0] == pytest.approx(np.sqrt(28))
    assert s[1] == pytest.approx(0.0, abs=1e-12)
    assert np.allclose((u * s) @ v.conj().T, a)


def test_svd_of_empty_matrix():
    u, s, v = svd(np.zeros((3, 0)))
    assert s.shape == (0,)
    assert u.shape == (3, 0)


def test_svd_rejects_non_finite():
    with pytest.raises(ShapeError):
        svd([[1.0, np.nan]])


def test_realign_turns_kronecker_into_outer_product():
    rng = np.random.default_rng(1)
    a, b = _random(rng, 3, 2), _random(rng, 2, 4)
    r = realign(np.kron(a, b), (2, 4, 3, 2))
    assert np.allclose(r, np.outer(a.reshape(-1), b.reshape(-1)))


def test_realign_checks_split():
    with pytest.raises(ShapeError, match="does not match split"):
        realign(np.eye(4), (2, 3, 2, 2))


def test_solve_linear_system():
    x = solve([[1, 1], [-1, 1]], [3, 1])
    assert np.allclose(x, [1, 2])


def test_invert_round_trip():
    rng = np.random.default_rng(3)
    a = _random(rng, 4, 4)
    assert np.allclose(invert(a) @ a, np.eye(4), atol=1e-10)


def test_singular_matrix_is_rejected():
    with pytest.raises(SingularityError) as err:
        solve([[1, 2], [2, 4]], [1, 1])
    assert err.value.sigma_min < 1e-12


def test_invert_needs_square():
    with pytest.raises(ShapeError):
        invert(np.ones((2, 3)))


# ============================================================
# SCHMIDT AND COUPLING
# ============================================================

def test_operator_schmidt_of_product_has_rank_one():
    rng = np.random.default_rng(7)
    a, b = _random(rng, 2, 3), _random(rng, 3, 2)
    sd = operator_schmidt(np.kron(a, b), (3, 2, 2, 3))
    assert sd.rank == 1
    assert np.allclose(sd.reconstruct(), np.kron(a, b))


def test_swap_has_full_operator_rank():
    sd = operator_schmidt(swap(), (2, 2, 2, 2))
    assert sd.rank == 4
    assert np.allclose(sd.coefficients, 1.0)
    assert coupling_measure(swap(), (2, 2, 2, 2)) == pytest.approx(0.75)


def test_cnot_coupling():
    assert coupling_measure(cnot(), (2, 2, 2, 2)) == pytest.approx(0.5)


def test_product_coupling_is_zero():
    assert coupling_measure(np.kron(hadamard(), np.eye(2)), (2, 2, 2, 2)) == pytest.approx(0.0, abs=1e-12)


def test_coupling_of_zero_operator_is_undefined():
    with pytest.raises(UndefinedMeasureError):
        coupling_measure(np.zeros((4, 4)), (2, 2, 2, 2))


def test_bell_state_schmidt_coefficients():
    sd = state_schmidt(bell_state(), (2, 2))
    assert sd.rank == 2
    assert np.allclose(sd.coefficients, [0.70710678, 0.70710678])
    assert sd.norm_squared() == pytest.approx(1.0)
    assert is_entangled(bell_state(), (2, 2))


def test_basis_state_is_not_entangled():
    assert not is_entangled([0, 1, 0, 0], (2, 2))


def test_entanglement_needs_unit_norm():
    with pytest.raises(NormalizationError):
        is_entangled([1, 1, 0, 0], (2, 2))


def test_state_split_must_fit():
    with pytest.raises(ShapeError):
        state_schmidt([1, 0, 0], (2, 2))


# ============================================================
# SEQUENTIAL
# ============================================================

def test_rank_factorization_through_rank():
    m = [[1, 2], [2, 4]]
    outcome = rank_factorization(m)
    assert outcome.verdict is Verdict.DECOMPOSABLE
    assert outcome.details["intermediate"] == 1
    assert outcome.replay_deviation(_tensor(m)) <= 1e-10


def test_rank_factorization_essential_pads():
    f = _tensor([[1, 2], [2, 4]])
    outcome = rank_factorization(f, Policy.ESSENTIAL)
    assert outcome.verdict is Verdict.DECOMPOSABLE
    assert outcome.details["intermediate"] == 2
    assert outcome.details["route"] == "padded rank"
    assert outcome.commutes(f)


def test_rank_factorization_of_identity():
    assert rank_factorization(np.eye(3)).verdict is Verdict.NOT_DECOMPOSABLE


def test_rank_factorization_of_zero_map():
    f = _tensor(np.zeros((2, 2)))
    assert rank_factorization(f, Policy.NONDEGENERATE).verdict is Verdict.DEGENERATE_ONLY
    assert rank_factorization(f, Policy.PAPER_LITERAL).verdict is Verdict.DECOMPOSABLE


def test_invertible_map_has_only_degenerate_factorizations():
    f = _tensor([[1, 1], [-1, 1]])
    outcome = rank_factorization(f, Policy.ESSENTIAL)
    assert outcome.verdict is Verdict.DEGENERATE_ONLY
    assert outcome.commutes(f)


# ============================================================
# (vec, ⊗)
# ============================================================

def test_tensor_round_trip():
    rng = np.random.default_rng(42)
    for _ in range(200):
        d1, d2, d1p, d2p = (int(x) for x in rng.choice([2, 3, 4], size=4))
        a, b = _random(rng, d1p, d1), _random(rng, d2p, d2)
        f = _tensor(np.kron(a, b))
        outcome = strict_par_decompose_tensor(f, (d1, d2, d1p, d2p))
        assert outcome.verdict is Verdict.DECOMPOSABLE
        f1, f2 = outcome.factors
        assert np.abs(np.kron(f1.matrix, f2.matrix) - f.matrix).max() <= 1e-8
        assert outcome.commutes(f)


def test_tensor_rank_two_sum_is_not_decomposable():
    rng = np.random.default_rng(8)
    for _ in range(200):
        m = np.kron(_random(rng, 2, 2), _random(rng, 2, 2)) + np.kron(_random(rng, 2, 2), _random(rng, 2, 2))
        outcome = strict_par_decompose_tensor(m, (2, 2, 2, 2))
        assert outcome.verdict is Verdict.NOT_DECOMPOSABLE
        assert outcome.details["schmidt_rank"] == 2


def test_tensor_gauge_makes_largest_entry_positive():
    rng = np.random.default_rng(9)
    m = np.kron(_random(rng, 2, 2), 1j * _random(rng, 2, 2))
    _, f2 = strict_par_decompose_tensor(m, (2, 2, 2, 2)).factors
    flat = f2.matrix.reshape(-1)
    pivot = flat[int(np.argmax(np.abs(flat)))]
    assert pivot.real > 0
    assert abs(pivot.imag) <= 1e-12


def test_tensor_scalar_factor_is_degenerate():
    rng = np.random.default_rng(10)
    m = _random(rng, 2, 2)
    assert strict_par_decompose_tensor(m, (1, 2, 1, 2)).verdict is Verdict.DEGENERATE_ONLY
    assert strict_par_decompose_tensor(m, (1, 2, 1, 2), Policy.PAPER_LITERAL).verdict is Verdict.DECOMPOSABLE


def test_tensor_zero_operator():
    outcome = strict_par_decompose_tensor(np.zeros((4, 4)), (2, 2, 2, 2))
    assert outcome.verdict is Verdict.DEGENERATE_ONLY
    assert outcome.details["reason"] == "zero operator"


def test_tensor_essential_rejects_invertible_factors():
    m = np.kron(hadamard(), np.diag([1, 2]))
    assert strict_par_decompose_tensor(m, (2, 2, 2, 2), Policy.ESSENTIAL).verdict is Verdict.DEGENERATE_ONLY
    singular = np.kron(np.outer([1, 2], [1, 1]), np.outer([1, 0], [0, 1]))
    assert strict_par_decompose_tensor(singular, (2, 2, 2, 2), Policy.ESSENTIAL).verdict is Verdict.DECOMPOSABLE


def test_tensor_needs_tensor_instance():
    f = vec_instance(ProductKind.DIRECTSUM).morphism(np.eye(4))
    with pytest.raises(InstanceError):
        strict_par_decompose_tensor(f, (2, 2, 2, 2))


def test_swap_gate_is_not_a_tensor_product():
    assert strict_par_decompose_tensor(swap(), (2, 2, 2, 2)).verdict is Verdict.NOT_DECOMPOSABLE


def test_swap_gate_permutes_factors():
    a, b = np.array([1, 2]), np.array([3, 5])
    assert np.allclose(swap() @ np.kron(a, b), np.kron(b, a))
    assert np.allclose(cnot(), [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])


# ============================================================
# (vec, ⊕)
# ============================================================

def test_directsum_fixed_rejects_coupled_blocks():
    outcome = par_decompose_directsum([[1, 1], [-1, 1]], (1, 1), (1, 1))
    assert outcome.verdict is Verdict.NOT_DECOMPOSABLE
    assert outcome.details["reason"] == "off-diagonal blocks do not vanish"
    assert outcome.details["off_diagonal"] == pytest.approx(0.5)


def test_directsum_up_to_iso_replays():
    f = vec_instance(ProductKind.DIRECTSUM).morphism([[1, 1], [-1, 1]])
    outcome = par_decompose_directsum(f, (1, 1), (1, 1), DecompositionMode.UP_TO_ISO)
    # both 1×1 blocks end up as identities
    assert outcome.verdict is Verdict.DEGENERATE_ONLY
    assert outcome.details["reason"] == "identity factor"
    assert outcome.replay_deviation(f) <= 1e-10


def test_directsum_up_to_iso_rank_one():
    rng = np.random.default_rng(12)
    u, v = rng.normal(size=4) + 1j * rng.normal(size=4), rng.normal(size=4)
    f = vec_instance(ProductKind.DIRECTSUM).morphism(np.outer(u, v))
    outcome = par_decompose_directsum(f, (2, 2), (2, 2), DecompositionMode.UP_TO_ISO)
    assert outcome.verdict is Verdict.DECOMPOSABLE
    assert outcome.details["block_ranks"] == [1, 0]
    assert outcome.replay_deviation(f) <= 1e-10


def test_directsum_fixed_block_diagonal():
    rng = np.random.default_rng(13)
    m = np.zeros((4, 4), dtype=complex)
    m[:2, :2], m[2:, 2:] = _random(rng, 2, 2), _random(rng, 2, 2)
    f = vec_instance(ProductKind.DIRECTSUM).morphism(m)
    outcome = par_decompose_directsum(f, (2, 2), (2, 2))
    assert outcome.verdict is Verdict.DECOMPOSABLE
    assert np.allclose(outcome.factors[0].matrix, m[:2, :2])
    assert outcome.commutes(f)
    essential = par_decompose_directsum(f, (2, 2), (2, 2), policy=Policy.ESSENTIAL)
    assert essential.verdict is Verdict.DEGENERATE_ONLY
    assert essential.details["reason"] == "invertible factor"


def test_directsum_split_must_fit():
    with pytest.raises(ShapeError):
        par_decompose_directsum(np.eye(2), (1, 1), (1, 2))


def test_directsum_has_no_search_mode():
    with pytest.raises(InstanceError):
        par_decompose_directsum(np.eye(2), (1, 1), (1, 1), DecompositionMode.SEARCH)


def test_vec_has_no_coproduct():
    with pytest.raises(InstanceError):
        vec_instance(ProductKind.COPRODUCT)
