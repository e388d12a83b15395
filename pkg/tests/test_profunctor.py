import pytest
from hypothesis import given, settings, strategies as st

from clubkit.errors import MismatchedTarget
from clubkit.fincat import bang, canonical_pullback, equal_tables, same_category
from clubkit.harness import pentagon_failure, triangle_failure
from clubkit.probes import default_universe, discrete2, one, point_pro, two, walking_iso
from clubkit.profunctor import (Cell, associator, cell_bijectivity, collage,
                                decollage, hcompose_cells, identity_cell, identity_pro_cell,
                                is_pullback_cat1, pro_compose, pro_identity, pullback_cat1,
                                same_profunctor, unitor_left, unitor_right, validate_cell,
                                validate_profunctor)
from clubkit.smc import s_cat, s_pro

import oracles


def universe_pros():
    U = default_universe()
    out = list(U.profunctors.items())
    for n, P in sorted(U.profunctors.items()):
        out.append((f"S({n})", s_pro(P, {1, 2})))
    out.append(("I(G1)", pro_identity(walking_iso())))
    out.append(("I(3)", pro_identity(oracles.three())))
    return out


@pytest.mark.parametrize("name,P", universe_pros(), ids=lambda x: x if isinstance(x, str) else "")
def test_bimodule_laws(name, P):
    assert validate_profunctor(P) == []
    assert oracles.profunctor_law_violations(P) == 0


def composable_pairs():
    pros = universe_pros()
    return [(f"{ny}*{nx}", Y, X) for ny, Y in pros for nx, X in pros
            if same_category(X.tgt_cat, Y.src_cat)]


@pytest.mark.parametrize("name,Y,X", composable_pairs(),
                         ids=lambda x: x if isinstance(x, str) else "")
def test_coend_classes_match_closure(name, Y, X):
    P, wit = pro_compose(Y, X)
    ours = {frozenset(ms) for ms in wit.members.values()}
    assert ours == oracles.coend_closure(Y, X)
    assert validate_profunctor(P) == []
    # representative choice: the least raw pair
    from clubkit.ids import least
    assert all(c == least(ms) for c, ms in wit.members.items())


@pytest.mark.parametrize("X", [two(), walking_iso(), oracles.three(), s_cat(two(), {1, 2})],
                         ids=lambda C: C.name)
def test_identity_fast_path_matches_generic(X):
    I = pro_identity(X)
    a, wa = pro_compose(I, I)
    b, wb = pro_compose(I, I, generic=True)
    assert wa.class_of == wb.class_of
    assert a.left_table() == b.left_table() and a.right_table() == b.right_table()


@pytest.mark.parametrize("name,P", universe_pros(), ids=lambda x: x if isinstance(x, str) else "")
def test_unitors_invertible(name, P):
    for F in (unitor_left(P), unitor_right(P)):
        assert validate_cell(F) == []
        assert cell_bijectivity(F) is None


def test_triangle_and_pentagon():
    I2 = pro_identity(two())
    P = point_pro()
    ID = pro_identity(discrete2())
    for Y, X in ((I2, I2), (P, P), (P, ID), (ID, P)):
        assert triangle_failure(Y, X) is None
    assert pentagon_failure(I2, I2, I2, I2) is None
    assert pentagon_failure(P, ID, P, ID) is None


def test_associator_invertible():
    I2 = pro_identity(two())
    F = associator(I2, I2, I2)
    assert validate_cell(F) == [] and cell_bijectivity(F) is None


def test_collage_roundtrip():
    for P in (point_pro(), pro_identity(two())):
        C = collage(P)
        D = decollage(C.cat, C.proj)
        assert set(D.proarrows) == set(P.proarrows)
        assert D.left_table() == P.left_table() and D.right_table() == P.right_table()


def test_pullback_of_identity_cells_is_source():
    P = point_pro()
    pb = pullback_cat1(identity_cell(P), identity_cell(P))
    assert pb.pro is P


def test_pullback_over_unit_counts():
    # P and I over I_1: |P| * 1 proarrows
    P, O = point_pro(), one()
    I1 = pro_identity(O)
    bP = Cell(P, I1, bang(P.src_cat, O), bang(P.tgt_cat, O), {"p": "id_*"})
    pb = pullback_cat1(bP, identity_cell(I1))
    assert len(pb.pro.proarrows) == len(P.proarrows) * 1
    bI = identity_pro_cell(bang(two(), O))
    pb2 = pullback_cat1(bP, bI)
    assert len(pb2.pro.proarrows) == len(P.proarrows) * len(two().morphisms)


def test_pullback_boundaries_strict():
    O = one()
    P = point_pro()
    bP = Cell(P, pro_identity(O), bang(P.src_cat, O), bang(P.tgt_cat, O), {"p": "id_*"})
    bI = identity_pro_cell(bang(two(), O))
    pb = pullback_cat1(bP, bI)
    s = canonical_pullback(bP.vertical_src, bI.vertical_src)
    t = canonical_pullback(bP.vertical_tgt, bI.vertical_tgt)
    assert equal_tables(pb.pro.src_cat, s.cat)
    assert equal_tables(pb.pro.tgt_cat, t.cat)
    assert is_pullback_cat1(pb.p2, pb.p1, bI, bP).verdict


def test_disjoint_images_give_empty():
    O, T = one(), two()
    from clubkit.fincat import Functor
    at0 = Functor(O, T, {"*": "0"}, {"id_*": "id_0"})
    at1 = Functor(O, T, {"*": "1"}, {"id_*": "id_1"})
    pb = pullback_cat1(identity_pro_cell(at0), identity_pro_cell(at1))
    assert pb.pro.proarrows == ()


def test_mismatched_target_cells():
    with pytest.raises(MismatchedTarget):
        pullback_cat1(identity_cell(point_pro()), identity_cell(pro_identity(two())))


@given(st.sampled_from([("I(2)", "I(2)"), ("P", "P"), ("I(1)", "I(1)")]),
       st.integers(1, 2))
@settings(max_examples=12, deadline=None)
def test_hcompose_of_identities_is_identity(names, n):
    U = default_universe()
    Y, X = (U.profunctors[k] for k in names)
    F = hcompose_cells(identity_cell(Y), identity_cell(X))
    assert same_profunctor(F.source, F.target)
    assert all(F.map[c] == c for c in F.source.proarrows)
