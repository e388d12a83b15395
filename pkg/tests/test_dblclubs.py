import pytest

from clubkit.clubs import club_unit, reconstruct0
from clubkit.dblclubs import (corrupt_instance, hcoll_tensor, hps1_check, hps2_check, hps_inverse,
                              pseudonaturality, reconstruct1, restrict_pro, roundtrip1,
                              s_instance, sample_collections_h, strict_boundaries,
                              trivial_instance, unit_h, validate_collection_h,
                              whisker_collection)
from clubkit.errors import HypothesisFailed
from clubkit.fincat import CommutingSquare, canonical_pullback, equal_tables, identity_functor
from clubkit.harness import violating_instance
from clubkit.probes import ProbeUniverse, default_universe, discrete2, one, point_pro, two
from clubkit.profunctor import pro_identity, validate_profunctor

import oracles


def hs(monad="S"):
    return {h.name: h for h in sample_collections_h(monad)}


@pytest.mark.parametrize("monad", ["S", "T"])
def test_samples_valid(monad):
    for h in sample_collections_h(monad):
        assert validate_collection_h(h) == []


def test_unit_reconstruction_is_the_profunctor():
    # the unit collection gives back P up to the pairing of identifiers
    I = unit_h(club_unit())
    for P in (point_pro(), pro_identity(two())):
        rec = reconstruct1(I, P)
        assert len(rec.pro.proarrows) == len(P.proarrows)
        assert validate_profunctor(rec.pro) == []
        assert sorted(rec.alpha.map[q][1][0] for q in rec.pro.proarrows) == \
            sorted(P.proarrows)


def test_binary_at_point_has_one_proarrow():
    h = hs()["h2"]
    assert len(reconstruct1(h, point_pro()).pro.proarrows) == 1
    # both permutations are realized by the swapped variant
    assert len(reconstruct1(hs()["h2s"], point_pro()).pro.proarrows) == 2


def test_binary_at_identity_of_two():
    # pairs of morphisms of 2, one per list: 3 * 3
    rec = reconstruct1(hs()["h2"], pro_identity(two()))
    assert len(rec.pro.proarrows) == 9


@pytest.mark.parametrize("monad", ["S", "T"])
def test_roundtrip_at_unit_is_exact(monad):
    for h in sample_collections_h(monad):
        e, exact = roundtrip1(h)
        assert exact, h.name
        assert e.theta_cell == h.theta_cell


@pytest.mark.parametrize("monad", ["S", "T"])
def test_boundaries_are_strict(monad):
    U = default_universe()
    for h in sample_collections_h(monad):
        for P in U.profunctors.values():
            assert strict_boundaries(h, P) is None
            rec = reconstruct1(h, P)
            want = reconstruct0(h.src_coll, P.src_cat, h.arities()).cat
            assert equal_tables(rec.pro.src_cat, want)


@pytest.mark.parametrize("name", ["I(I)", "h1", "h2", "h2s"])
def test_pseudonaturality(name):
    h = hs()[name]
    for P in (point_pro(), pro_identity(two()), pro_identity(one())):
        r = pseudonaturality(h, P)
        assert r.ok, (name, P.name, r.counterexample)


def test_hps2_on_identity_square():
    T = two()
    Id = identity_functor(T)
    sq = CommutingSquare(Id, Id, Id, Id)
    assert hps2_check(sq).verdict


def test_hps2_on_probe_pullbacks():
    U = default_universe()
    for F in U.functors.values():
        pb = canonical_pullback(F, F)
        sq = CommutingSquare(pb.p2, pb.p1, F, F)
        assert hps2_check(sq).verdict, F.name


def test_hps1_and_corruption():
    h = hs()["I(I)"]
    P = point_pro()
    inst = s_instance(h, h, pro_identity(discrete2()), P, name="I.I")
    assert hps1_check(inst).verdict
    I2 = pro_identity(two())
    inst2 = s_instance(h, h, I2, I2, name="I.I@2")
    bad = corrupt_instance(inst2)
    assert not hps1_check(bad).verdict


def test_restrict_pro_is_subprofunctor():
    I2 = pro_identity(two())
    # u and id_1 are closed under both actions
    sub = restrict_pro(I2, ["u", "id_1"])
    assert validate_profunctor(sub) == []
    assert oracles.profunctor_law_violations(sub) == 0


@pytest.mark.parametrize("X,Y", [("1", "1"), ("2", "G1"), ("D2", "2")])
def test_trivial_instance_inverse(X, Y):
    U = default_universe()
    r = hps_inverse(trivial_instance(U.categories[X], U.categories[Y]))
    assert r.vu_identity and r.uv_identity and r.counterexample is None


@pytest.mark.parametrize("monad", ["S", "T"])
def test_arity_two_inverse(monad):
    h = hs(monad)["h2"]
    inst = s_instance(h, h, point_pro(), pro_identity(discrete2()))
    r = hps_inverse(inst)
    assert r.vu_identity and r.uv_identity
    assert r.checked >= len(r.u.target.proarrows)


def test_violating_instance_rejected():
    with pytest.raises(HypothesisFailed):
        hps_inverse(violating_instance())


def test_tensor_and_whisker_on_small_universe():
    small = ProbeUniverse(categories={"1": one(), "2": two()}, functors={},
                          profunctors={"P": point_pro()})
    h = hs()["h1"]
    checks = hcoll_tensor(h, h, small)
    assert checks and all(c.verdict for c in checks), [c.name for c in checks if not c.verdict]
    checks = whisker_collection(club_unit(), h, small)
    assert checks and all(c.verdict for c in checks)
