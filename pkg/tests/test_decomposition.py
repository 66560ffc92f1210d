import pytest

from simdual.decomposition import (DecompositionError, cayley_image_members,
                                   coset_set, decompose, find_conjugator_mod,
                                   neighborhood, verify_piece)
from simdual.involution import ConjugatorNotFound, theta_group
from simdual.lattices import standard_lattices
from simdual.matrices import Mat
from simdual.scalars import SPLIT, Ring
from simdual.spaces import (SYMPLECTIC, GroupElem, certify_group,
                            standard_space)

SYMPL = standard_space(SYMPLECTIC, 2, Ring(3, SPLIT))
STD = standard_lattices(SYMPL)


def test_cayley_image_is_group_mod9():
    members = cayley_image_members(STD, 1, 2)
    assert len(members) == 81
    keys = {m.mat.key() for m in members}
    # closed under product and inverse, contains 1
    assert SYMPL.truncated(2).identity().key() in keys
    sample = members[::17]
    for a in sample:
        for b in sample:
            assert (a * b).mat.key() in keys
        assert a.inv().mat.key() in keys


def test_subgroup_coset_is_one_piece_with_trivial_witness():
    b = Mat.identity(SYMPL.ring, 2)
    C = coset_set(SYMPL, STD, b, 1, 2)
    pieces = decompose(C, STD)
    assert len(pieces) == 1
    assert pieces[0].witness.mat == SYMPL.truncated(2).identity()
    assert pieces[0].member_keys() == C.member_keys()


def test_theta_fixed_base_gives_inverse_witness():
    b = Mat(SYMPL.ring, [[1, 1], [0, 1]])
    st = SYMPL.truncated(2)
    bt = certify_group(st, b.reduce(2))
    assert theta_group(bt).mat == bt.mat
    C = coset_set(SYMPL, STD, b, 1, 2)
    pieces = decompose(C, STD)
    assert len(pieces) == 1
    assert pieces[0].witness.mat == bt.mat.inv()
    assert verify_piece(pieces[0].members, pieces[0].witness)


def test_general_coset_partition_mod27():
    b = Mat(SYMPL.ring, [[2, 0], [0, 1]])
    C = coset_set(SYMPL, STD, b, 1, 3)
    assert len(C.members) == 3**8
    pieces = decompose(C, STD)
    # partition properties are re-verified inside decompose; check the
    # public contract once more
    union = set()
    for p in pieces:
        assert not (union & p.member_keys())
        union |= p.member_keys()
        assert verify_piece(p.members, p.witness)
    assert union == C.member_keys()


def test_conjugator_solver_matches_defining_equations():
    st = SYMPL.truncated(2)
    a = certify_group(st, Mat(st.ring, [[2, 0], [0, 1]]))
    x = find_conjugator_mod(a)
    assert x.mu == st.ring.one
    assert theta_group(x).mat == x.mat
    assert x.mat * a.mat == theta_group(a).mat * x.mat


def test_conjugator_theta_fixed_fast_path():
    st = SYMPL.truncated(2)
    a = certify_group(st, Mat(st.ring, [[2, 0], [0, 2]]))
    assert find_conjugator_mod(a).mat == st.identity()


def test_neighborhood_preconditions():
    st = SYMPL.truncated(2)
    a = certify_group(st, Mat(st.ring, [[2, 0], [0, 1]]))
    not_fixed = certify_group(st, Mat(st.ring, [[1, 1], [0, 1]]))
    with pytest.raises(DecompositionError):
        neighborhood(STD, a, not_fixed, 1)
    ident = certify_group(st, st.identity())
    with pytest.raises(DecompositionError):
        neighborhood(STD, a, ident, 1)     # identity does not conjugate a
    with pytest.raises(DecompositionError):
        x = find_conjugator_mod(a)
        neighborhood(STD, a, x, 0)


def test_verify_piece_rejects_wrong_witness():
    b = Mat(SYMPL.ring, [[1, 1], [0, 1]])
    C = coset_set(SYMPL, STD, b, 1, 2)
    st = C.space
    bad = certify_group(st, Mat(st.ring, [[2, 0], [0, 1]]))
    piece = decompose(C, STD)[0]
    assert verify_piece(piece.members, piece.witness)
    assert not verify_piece(piece.members, bad)


def test_coset_set_validates_level():
    b = Mat.identity(SYMPL.ring, 2)
    with pytest.raises(DecompositionError):
        coset_set(SYMPL, STD, b, 0, 2)
    with pytest.raises(DecompositionError):
        coset_set(SYMPL, STD, b, 2, 2)
