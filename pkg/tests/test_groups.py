import pytest
from hypothesis import given, strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form

from surfinv.braids import BraidWord, garside_delta, torus_pair
from surfinv.groups import (AbelianInvariants, GroupPresentation, abelianization,
                            certify_free_abelian, commutator, exponent_matrix, link_group,
                            relators_trivial, smith_diagonal)
from surfinv.rewriting import Exhausted, decode, encode, knuth_bendix


def sympy_diagonal(rows):
    snf = smith_normal_form(Matrix(rows), domain=ZZ)
    return sorted(abs(int(snf[k, k])) for k in range(min(snf.shape)) if snf[k, k] != 0)


@given(st.integers(1, 4).flatmap(lambda c: st.lists(
    st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=1, max_size=4)))
def test_smith_diagonal_matches_sympy(rows):
    ours = smith_diagonal(rows)
    assert sorted(ours) == sympy_diagonal(rows)
    assert all(b % a == 0 for a, b in zip(ours, ours[1:]))


def test_smith_examples():
    assert smith_diagonal([[2, 0], [0, 3]]) == [1, 6]
    assert smith_diagonal([[0, 0]]) == []
    assert abelianization(GroupPresentation(1, ((1, 1),))) == AbelianInvariants(0, (2,))
    assert str(AbelianInvariants(2, (2, 4))) == "Z/2 + Z/4 + Z + Z"


def test_invariants_reject_bad_chain():
    with pytest.raises(ValueError):
        AbelianInvariants(0, (2, 3))


def test_link_group_shape():
    a, b = torus_pair(0)
    P = link_group(a, b)
    assert P.generator_count == 3
    # sigma_1^2 fixes x_3, Delta^2 conjugates every x_j by the same word
    assert all(len(r) > 0 for r in P.relators)
    assert all(sum(1 if x > 0 else -1 for x in r) == 0 for r in P.relators)
    assert all(not any(row) for row in exponent_matrix(P))


def test_link_group_warns_on_noncommuting(caplog):
    link_group(BraidWord(3, (1,)), BraidWord(3, (2,)))
    assert "do not commute" in caplog.text


@pytest.mark.parametrize("n", range(-5, 6))
def test_abelianization_rank_three(n):
    assert abelianization(link_group(*torus_pair(n))) == AbelianInvariants(3)


def test_abelianization_invariant_under_relator_moves():
    P = link_group(*torus_pair(1))
    rels = list(P.relators)
    # conjugate, invert and append a product: the normal closure is unchanged
    moved = [tuple(-x for x in reversed(rels[0])), (2,) + rels[1] + (-2,), rels[2] + rels[3]]
    Q = GroupPresentation(3, tuple(rels + moved))
    assert abelianization(Q) == abelianization(P)


def test_encoding_roundtrip():
    w = (1, -1, 2, -3, 3)
    assert decode(encode(w)) == w
    assert encode((1,)) < encode((-1,)) < encode((2,))


def test_kb_free_abelian_rank_two():
    P = GroupPresentation(2, (commutator(1, 2),))
    system = knuth_bendix(P)
    assert system.complete and system.locally_confluent()
    assert system.normal_form((2, 1, -2)) == (1,)


def test_kb_finite_cyclic():
    system = knuth_bendix(GroupPresentation(1, ((1, 1, 1),)))
    assert system.normal_form((1, 1, 1, 1)) == (1,)
    assert system.normal_form((-1,)) == system.normal_form((1, 1))


def test_kb_exhaustion_is_a_value():
    # Baumslag-Solitar BS(1,2) has no finite shortlex system with this ordering
    P = GroupPresentation(2, ((-2, 1, 2, -1, -1),))
    result = knuth_bendix(P, max_rules=20, max_len=12)
    assert isinstance(result, Exhausted)


@pytest.mark.parametrize("n", [-1, 0, 1])
def test_certificate_rank_three(n):
    P = link_group(*torus_pair(n))
    result = certify_free_abelian(P, 3)
    assert result.certified
    assert result.system.locally_confluent()
    assert relators_trivial(result.system, P)


def test_certificate_rank_four():
    a = BraidWord(4, (1, 1, 2, 2, 3, 3))
    P = link_group(a, garside_delta(4) ** 2)
    assert certify_free_abelian(P, 4).certified


def test_free_group_is_refuted():
    result = certify_free_abelian(GroupPresentation(2, ()), 2)
    assert result.status == "refuted"
    assert (1, 2) in result.witnesses


def test_wrong_rank_and_torsion_refuted():
    P = link_group(*torus_pair(0))
    assert certify_free_abelian(P, 2).status == "refuted"
    assert certify_free_abelian(GroupPresentation(1, ((1, 1),)), 0).status == "refuted"


def test_inconclusive_under_tiny_limits():
    P = link_group(*torus_pair(2))
    result = certify_free_abelian(P, 3, max_rules=5, max_len=40)
    assert result.status == "inconclusive"
    assert "max_rules" in result.to_dict()["exhausted"]


def test_presentation_json_roundtrip():
    P = link_group(*torus_pair(-1))
    assert GroupPresentation.from_json(P.to_json()) == P
