import numpy as np
import pytest

from src.core import (
    Morphism,
    compose,
    decide,
    identity,
    iso_check,
    mproduct_mor,
    mproduct_obj,
    seq_verify,
    state_embed,
    state_extract,
    structural_iso,
)
from src.core.outcome import SEQUENTIAL
from src.enums import IsoKind, Policy, Verdict
from src.errors import CompositionError, DomainError, InstanceError


# ============================================================
# OBJECTS AND MORPHISMS
# ============================================================

def test_object_rejects_duplicate_labels(coproduct):
    with pytest.raises(ValueError):
        coproduct.obj(["a", "a"])


def test_object_rejects_negative_dimension(tensor):
    with pytest.raises(ValueError):
        tensor.obj(-1)


def test_object_equality_ignores_name(coproduct):
    assert coproduct.obj(["a", "b"], name="A") == coproduct.obj(["a", "b"])
    assert coproduct.obj(["a", "b"]) != coproduct.obj(["b", "a"])


def test_objects_of_different_instances_differ(coproduct, product):
    assert coproduct.obj(["a"]) != product.obj(["a"])


def test_table_must_be_total(coproduct):
    A, B = coproduct.obj(["a1", "a2"]), coproduct.obj(["b"])
    with pytest.raises(ValueError, match="not total"):
        Morphism.from_mapping(A, B, {"a1": "b"})


def test_table_must_land_in_codomain(coproduct):
    A, B = coproduct.obj(["a"]), coproduct.obj(["b"])
    with pytest.raises(ValueError, match="not an element"):
        Morphism(A, B, table=("c",))


def test_matrix_shape_is_checked(tensor):
    with pytest.raises(ValueError, match="shape"):
        Morphism(tensor.obj(2), tensor.obj(3), matrix=np.zeros((2, 2)))


def test_matrix_is_read_only(tensor):
    f = tensor.morphism([[1, 2], [3, 4]])
    with pytest.raises(ValueError):
        f.matrix[0, 0] = 5


def test_endpoints_must_share_instance(coproduct, product):
    with pytest.raises(InstanceError):
        Morphism(coproduct.obj(["a"]), product.obj(["b"]), table=("b",))


# ============================================================
# CATEGORY OPERATIONS
# ============================================================

def test_compose_checks_domains(coproduct):
    A, B, C = coproduct.obj(["a"]), coproduct.obj(["b"]), coproduct.obj(["c"])
    f = Morphism(A, B, table=("b",))
    g = Morphism(A, C, table=("c",))
    with pytest.raises(CompositionError):
        compose(g, f)


def test_compose_across_instances(coproduct, product):
    f = Morphism(coproduct.obj(["a"]), coproduct.obj(["b"]), table=("b",))
    g = Morphism(product.obj(["b"]), product.obj(["c"]), table=("c",))
    with pytest.raises(InstanceError):
        compose(g, f)


def test_identity_is_neutral(product):
    A, B = product.obj(["a1", "a2"]), product.obj(["b1", "b2"])
    f = Morphism(A, B, table=("b2", "b2"))
    assert product.equal(compose(identity(B), f), f)
    assert product.equal(compose(f, identity(A)), f)


def test_mproduct_of_coproduct_tags_sides(coproduct):
    A, B = coproduct.obj(["a"]), coproduct.obj(["b"])
    assert mproduct_obj(A, B).labels == (("a", 1), ("b", 2))
    f = Morphism(A, B, table=("b",))
    g = identity(B)
    h = mproduct_mor(f, g)
    assert h.table == (("b", 1), ("b", 2))


def test_mproduct_of_tensor_is_kronecker(tensor):
    f = tensor.morphism([[1, 2], [3, 4]])
    g = tensor.morphism([[0, 1], [1, 0]])
    assert np.allclose(mproduct_mor(f, g).matrix, np.kron(f.matrix, g.matrix))


def test_iso_check_on_bijection_and_non_bijection(coproduct):
    A, B = coproduct.obj(["a1", "a2"]), coproduct.obj(["b1", "b2"])
    bij = Morphism(A, B, table=("b2", "b1"))
    inv = iso_check(bij)
    assert inv is not None
    assert coproduct.is_identity(compose(inv, bij))
    assert iso_check(Morphism(A, B, table=("b1", "b1"))) is None


@pytest.mark.parametrize("kind", list(IsoKind))
def test_structural_isos_are_inverse_pairs(any_instance, kind):
    inst = any_instance
    rng = np.random.default_rng(0)
    a, b, c = (inst.sample_object(rng, size) for size in (2, 1, 2))
    iso = structural_iso(kind, a, b, c)
    assert inst.is_identity(compose(iso.backward, iso.forward))
    assert inst.is_identity(compose(iso.forward, iso.backward))


def test_associator_needs_three_objects(coproduct):
    with pytest.raises(InstanceError):
        structural_iso(IsoKind.ASSOCIATOR, coproduct.obj(["a"]))


def test_state_round_trip_in_finset_product(product):
    A = product.obj(["x", "y", "z"])
    s = state_embed(A, "y")
    assert s.dom == product.unit
    assert state_extract(s) == "y"


def test_state_needs_point_of_object(product):
    with pytest.raises(DomainError):
        state_embed(product.obj(["x"]), "w")


def test_coproduct_has_no_states(coproduct):
    with pytest.raises(InstanceError):
        state_embed(coproduct.obj(["x"]), "x")


def test_state_round_trip_in_tensor(tensor):
    v = np.array([0.6, 0.8j])
    s = state_embed(tensor.obj(2), v)
    assert s.matrix.shape == (2, 1)
    assert np.allclose(state_extract(s), v)


def test_state_extract_needs_unit_domain(tensor):
    with pytest.raises(DomainError):
        state_extract(tensor.morphism(np.eye(2)))


# ============================================================
# VERDICT LADDER
# ============================================================

def test_identity_is_never_decomposable(coproduct):
    A = coproduct.obj(["a", "b"])
    outcome = decide(identity(A), Policy.PAPER_LITERAL, SEQUENTIAL, [], lambda w: None)
    assert outcome.verdict is Verdict.NOT_DECOMPOSABLE
    assert outcome.details["reason"] == "identity morphism"


def test_no_candidates_is_not_decomposable(coproduct):
    f = Morphism(coproduct.obj(["a"]), coproduct.obj(["b"]), table=("b",))
    outcome = decide(f, Policy.NONDEGENERATE, SEQUENTIAL, [], lambda w: None, absent_reason="nothing")
    assert outcome.verdict is Verdict.NOT_DECOMPOSABLE
    assert outcome.details["reason"] == "nothing"


def _square_cube(inst):
    X = inst.obj([-2, -1, 0, 1, 2])
    squares = inst.obj([0, 1, 4])
    sixths = inst.obj([0, 1, 64])
    square = Morphism.from_function(X, squares, lambda x: x ** 2)
    cube = Morphism.from_function(squares, sixths, lambda x: x ** 3)
    sixth = Morphism.from_function(X, sixths, lambda x: x ** 6)
    return square, cube, sixth


def test_square_then_cube_is_sixth_power(product):
    square, cube, sixth = _square_cube(product)
    composite = compose(cube, square)
    assert composite.table == sixth.table
    assert all(composite(x) == x ** 6 for x in (-2, -1, 0, 1, 2))


def test_seq_verify_on_square_and_cube(product):
    square, cube, sixth = _square_cube(product)
    literal = seq_verify(sixth, square, cube, Policy.PAPER_LITERAL)
    assert literal.verdict is Verdict.DECOMPOSABLE
    assert literal.commutes(sixth)

    # x ↦ x³ is a bijection between the restricted tables
    strict = seq_verify(sixth, square, cube, Policy.NONDEGENERATE)
    assert strict.verdict is Verdict.DEGENERATE_ONLY
    assert strict.details["reason"] == "isomorphism factor"


def test_seq_verify_rejects_non_commuting_triangle(product):
    square, cube, sixth = _square_cube(product)
    wrong = Morphism(square.cod, cube.cod, table=(0, 64, 1))
    outcome = seq_verify(sixth, square, wrong)
    assert outcome.verdict is Verdict.NOT_DECOMPOSABLE
    assert outcome.details["reason"] == "triangle does not commute"
