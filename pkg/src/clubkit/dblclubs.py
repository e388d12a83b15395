"""Collections one level up: over profunctors and cells.

A horizontal collection is a profunctor ``a: a_s -|-> a_t`` between the bases
of two collections with a cell ``theta: a => S I_1`` over their theta
functors.  Since proarrows of ``S I_1 = I_{S1}`` are morphisms of S1, the
cell assigns a permutation to every proarrow.
"""

from dataclasses import dataclass, field

from .clubs import (Collection0, collection_from_functor, reconstruct0,
                    reconstruct0_on_functor, run_check, same_collection)
from .errors import HypothesisFailed, IllDefined, NotInduced, ShapeMismatch
from .fincat import (bang, cocartesian_lift, identity_functor, inverse_functor, is_groupoid,
                     is_opfibration, same_category)
from .ids import ordered
from .probes import one
from .profunctor import (Cell, cell_bijectivity, hcompose_cells,
                         identity_pro_cell, induced_cell, invert_cell, is_pullback_cat1,
                         pro_compose, pro_identity, pullback_cat1, same_profunctor,
                         unitor_left, unitor_right, validate_cell, vcompose_cells)
from .smc import (m_comp, mu_pro, flatten_obj, s_cat, s_cell, s_functor, s_pro,
                  skeletal_S1)


class CollectionH:
    __slots__ = ("src_coll", "tgt_coll", "base_pro", "theta_cell", "grading", "name",
                 "_cell")

    def __init__(self, src_coll, tgt_coll, base_pro, theta_cell, grading=None, name=""):
        if src_coll.monad != tgt_coll.monad:
            raise ShapeMismatch("source and target collections over different monads")
        self.src_coll = src_coll
        self.tgt_coll = tgt_coll
        self.base_pro = base_pro
        self.theta_cell = {p: tuple(s) for p, s in theta_cell.items()}
        self.grading = frozenset(grading) if grading is not None else None
        self.name = name or base_pro.name
        self._cell = {}

    def __repr__(self):
        return f"CollectionH({self.name}: {len(self.base_pro.proarrows)} proarrows)"

    @property
    def monad(self):
        return self.src_coll.monad

    def arities(self):
        if self.grading is not None:
            return self.grading
        return self.src_coll.arities() | self.tgt_coll.arities()

    def cell(self, arities=None):
        """theta as a cell a => I_{S1}."""
        A = frozenset(self.arities() if arities is None else arities)
        hit = self._cell.get(A)
        if hit is not None:
            return hit
        S1 = skeletal_S1(A, self.monad)
        sid = one().identity[one().objects[0]]
        F = Cell(self.base_pro, pro_identity(S1), self.src_coll.theta(A),
                 self.tgt_coll.theta(A),
                 {p: (s, (sid,) * len(s)) for p, s in self.theta_cell.items()},
                 name=f"theta({self.name})")
        self._cell[A] = F
        return F


def validate_collection_h(h):
    return validate_cell(h.cell())


def unit_h(c, arities=None):
    """The horizontal unit I_c: I_a with the permutations of theta."""
    return CollectionH(c, c, pro_identity(c.base), dict(c.perm), grading=arities,
                       name=f"I({c.name})")


def same_collection_h(h, k):
    return (same_collection(h.src_coll, k.src_coll) and same_collection(h.tgt_coll, k.tgt_coll)
            and same_profunctor(h.base_pro, k.base_pro) and h.theta_cell == k.theta_cell)


# reconstruction -----------------------------------------------------------------

def bang_cell(P):
    """! : P => I_1."""
    O = one()
    star = O.objects[0]
    return Cell(P, pro_identity(O), bang(P.src_cat, O), bang(P.tgt_cat, O),
                {p: O.identity[star] for p in P.proarrows}, name="!")


@dataclass
class Reconstruction1:
    """A P with alpha_P: A P => S P and A!: A P => a, chosen as a pullback."""
    probe: object
    pro: object
    alpha: object
    bang: object
    pb: object = None


def s_bang_cell(P, arities, monad="S"):
    A = frozenset(arities)
    return s_cell(bang_cell(P), A, monad=monad, source=s_pro(P, A, monad=monad),
                  target=pro_identity(skeletal_S1(A, monad)))


def reconstruct1(h, P, arities=None):
    A = frozenset(h.arities() if arities is None else arities)
    pb = pullback_cat1(h.cell(A), s_bang_cell(P, A, h.monad),
                       name=f"{h.name}[{P.name}]")
    return Reconstruction1(P, pb.pro, pb.p2, pb.p1, pb)


def reconstruct1_on_cell(h, F, src=None, tgt=None, arities=None):
    """A F : A P => A Q for a cell F: P => Q, induced through the pullback."""
    A = frozenset(h.arities() if arities is None else arities)
    src = src or reconstruct1(h, F.source, A)
    tgt = tgt or reconstruct1(h, F.target, A)
    SF = s_cell(F, A, monad=h.monad, source=src.alpha.target, target=tgt.alpha.target)
    return induced_cell(tgt.pb, src.bang, vcompose_cells(SF, src.alpha), name=f"A({F.name})")


def evaluate1(rec):
    """Read a reconstruction at I_1 back as a horizontal collection."""
    al = rec.alpha
    return CollectionH(collection_from_functor(al.vertical_src),
                       collection_from_functor(al.vertical_tgt), rec.pro,
                       {p: al.map[p][0] for p in rec.pro.proarrows})


def roundtrip1(h):
    """(evaluated collection, identifier-exact verdict) at I_1."""
    rec = reconstruct1(h, pro_identity(one()))
    e = evaluate1(rec)
    return e, rec.pro is h.base_pro and same_collection_h(e, h)


def strict_boundaries(h, P, arities=None):
    """None when s and t of A P are the Cat-level reconstructions."""
    A = frozenset(h.arities() if arities is None else arities)
    rec = reconstruct1(h, P, A)
    for tag, coll, X, got in (("s", h.src_coll, P.src_cat, rec.pro.src_cat),
                              ("t", h.tgt_coll, P.tgt_cat, rec.pro.tgt_cat)):
        want = reconstruct0(coll, X, A).cat
        if not same_category(want, got):
            return (f"{tag}-boundary-differs", P.name)
    return None


# pseudonaturality ---------------------------------------------------------------

@dataclass
class PseudoNat:
    cell: Cell
    counterexample: object = None

    @property
    def ok(self):
        return self.counterexample is None


def _lookup_cell(source, target, via_src, via_tgt, D1, D2, name):
    """The map source => target sending e to the unique e' whose images under
    via_tgt are the D-images of the via_src images of e."""
    index = {}
    G1, G2 = via_tgt
    for q in target.proarrows:
        key = (G1.map[q], G2.map[q])
        if key in index:
            raise NotInduced(f"back face is not jointly monic at {q!r}")
        index[key] = q
    F1, F2 = via_src
    out = {}
    for p in source.proarrows:
        key = (D1.map[F1.map[p]], D2.map[F2.map[p]])
        q = index.get(key)
        if q is None:
            raise NotInduced(f"no proarrow of the back face over {key!r}")
        out[p] = q
    if not (same_category(source.src_cat, target.src_cat)
            and same_category(source.tgt_cat, target.tgt_cat)):
        raise ShapeMismatch("pseudonaturality boundaries differ")
    return Cell(source, target, identity_functor(source.src_cat),
                identity_functor(source.tgt_cat), out, name=name)


def pseudonaturality(h, P, arities=None):
    """A_P : A_t P (x) A X_s => A X_t (x) A_s P, induced by the pullback
    universal property of the back face."""
    A = frozenset(h.arities() if arities is None else arities)
    Xs, Xt = P.src_cat, P.tgt_cat
    hs, ht = unit_h(h.src_coll, A), unit_h(h.tgt_coll, A)
    AtP = reconstruct1(ht, P, A)
    AXs = reconstruct1(h, pro_identity(Xs), A)
    AXt = reconstruct1(h, pro_identity(Xt), A)
    AsP = reconstruct1(hs, P, A)
    src = pro_compose(AtP.pro, AXs.pro)[0]
    tgt = pro_compose(AXt.pro, AsP.pro)[0]
    F1 = hcompose_cells(AtP.bang, AXs.bang)
    F2 = hcompose_cells(AtP.alpha, AXs.alpha)
    G1 = hcompose_cells(AXt.bang, AsP.bang)
    G2 = hcompose_cells(AXt.alpha, AsP.alpha)
    a = h.base_pro
    D1 = vcompose_cells(unitor_right(a), invert_cell(unitor_left(a)))
    SP = AtP.alpha.target
    D2 = vcompose_cells(unitor_left(SP), invert_cell(unitor_right(SP)))
    cell = _lookup_cell(src, tgt, (F1, F2), (G1, G2), D1, D2, name=f"A_{P.name}")
    cx = cell_bijectivity(cell)
    if cx is None:
        bad = validate_cell(cell)
        cx = None if not bad else (bad[0].kind, bad[0].ids)
    return PseudoNat(cell, cx)


# property (hps) --------------------------------------------------------------------

def hps2_check(sq):
    """Apply I to a square of functors and test it as a pullback of profunctors."""
    return is_pullback_cat1(identity_pro_cell(sq.top), identity_pro_cell(sq.left),
                            identity_pro_cell(sq.right), identity_pro_cell(sq.bottom))


@dataclass
class HpsInstance:
    """Two pullback squares of cells (top, left, right, bottom) over I_A,
    composable as sq23 (x) sq12."""
    sq12: tuple
    sq23: tuple
    name: str = ""

    @property
    def base(self):
        return self.sq12[3].target.src_cat

    @property
    def f2(self):
        return self.sq12[3].vertical_tgt

    def tensored(self):
        return tuple(hcompose_cells(b, a) for a, b in zip(self.sq12, self.sq23))


def s_square(h, P, arities=None):
    rec = reconstruct1(h, P, arities)
    pb = rec.pb
    return (rec.bang, rec.alpha, pb.f, pb.g)


def s_instance(h23, h12, P23, P12, arities=None, name=""):
    """The squares defining A P12 and A P23 for horizontal collections."""
    A = frozenset(arities if arities is not None else h23.arities() | h12.arities())
    return HpsInstance(s_square(h12, P12, A), s_square(h23, P23, A),
                       name=name or f"{h23.name}.{h12.name}@{P23.name}.{P12.name}")


def cat0_instance(sq12, sq23, name=""):
    """I applied to two squares of functors sharing the middle leg."""
    cells = lambda sq: tuple(identity_pro_cell(F) for F in (sq.top, sq.left, sq.right, sq.bottom))
    return HpsInstance(cells(sq12), cells(sq23), name=name)


def hps1_check(inst):
    return is_pullback_cat1(*inst.tensored())


@dataclass
class InverseResult:
    u: Cell
    v: Cell
    vu_identity: bool
    uv_identity: bool
    counterexample: object = None
    checked: int = 0


def _apex_index(sq):
    top, left = sq[0], sq[1]
    return {(left.map[d], top.map[d]): d for d in left.source.proarrows}


def hps_inverse(inst):
    """The inverse v of the comparison u into the pullback of the tensored
    cospan, built from cocartesian lifts along f2."""
    A = inst.base
    if not is_groupoid(A):
        raise HypothesisFailed(f"{A.name} is not a groupoid")
    f2 = inst.f2
    if not is_opfibration(f2):
        raise HypothesisFailed(f"{f2.name} is not an opfibration")
    top, left, right, bottom = inst.tensored()
    E = pullback_cat1(bottom, right, name="E")
    u = induced_cell(E, left, top, name="u")
    D, wD = pro_compose(inst.sq23[0].source, inst.sq12[0].source)
    _, wB = pro_compose(inst.sq23[3].source, inst.sq12[3].source)
    _, wC = pro_compose(inst.sq23[2].source, inst.sq12[2].source)
    f23, g23 = inst.sq23[3], inst.sq23[2]
    B23, B12 = inst.sq23[3].source, inst.sq12[3].source
    B2 = f2.source
    idx23, idx12 = _apex_index(inst.sq23), _apex_index(inst.sq12)
    v, checked = {}, 0
    for e in E.pro.proarrows:
        cb, cc = E.p1.map[e], E.p2.map[e]
        image = None
        for alpha, beta in wB.members[cb]:
            for gamma, delta in wC.members[cc]:
                b = B23.to(alpha)
                psi = A.comp(g23.map[gamma], A.inverse(f23.map[alpha]))
                lift = cocartesian_lift(f2, psi, b)
                inv = B2.inverse(lift)
                a2 = B23.act_left(lift, alpha)
                b2 = B12.act_right(beta, inv)
                d23, d12 = idx23.get((a2, gamma)), idx12.get((b2, delta))
                if d23 is None or d12 is None:
                    raise IllDefined(f"v of {e!r} leaves the apexes")
                q = wD.class_of.get((d23, d12))
                if q is None:
                    raise IllDefined(f"v of {e!r} is not a composable pair")
                checked += 1
                if image is None:
                    image = q
                elif image != q:
                    raise IllDefined(f"v depends on the representative of {e!r}")
        v[e] = image
    vc = Cell(E.pro, D, inverse_functor(u.vertical_src), inverse_functor(u.vertical_tgt),
              v, name="v")
    cx = None
    vu = all(v[u.map[d]] == d for d in D.proarrows)
    if not vu:
        cx = ("vu", next(d for d in D.proarrows if v[u.map[d]] != d))
    uv = all(u.map[v[e]] == e for e in E.pro.proarrows)
    if not uv and cx is None:
        cx = ("uv", next(e for e in E.pro.proarrows if u.map[v[e]] != e))
    return InverseResult(u, vc, vu, uv, cx, checked)


# tensor of horizontal collections --------------------------------------------------

def _lengths(SSX):
    return frozenset(len(flatten_obj(x)) for x in SSX.objects)


def frak_m(X, inner, outer, monad="S"):
    """The multiplication S I_{SX} (x) S S I_X => S I_X: m, then S of the
    inverse left unitor, then mu."""
    SX = s_cat(X, inner, monad=monad)
    ISX = pro_identity(SX)
    m = m_comp(ISX, ISX, outer, monad=monad)
    lam = invert_cell(unitor_left(ISX))
    Slam = s_cell(lam, outer, monad=monad, source=m.target,
                  target=s_pro(ISX, outer, monad=monad))
    SSX = s_cat(SX, outer, monad=monad)
    mu = mu_pro(Slam.target, pro_identity(s_cat(X, _lengths(SSX), monad=monad)))
    return vcompose_cells(mu, vcompose_cells(Slam, m))


@dataclass
class TensorAt:
    """The pieces of (A . B) at one probe."""
    probe: object
    left_leg: Cell
    right_leg: Cell
    leg: Cell
    frak: Cell
    full: Cell
    AB: object
    AsB: object
    recs: dict = field(default_factory=dict)


def _tensor_at(h, k, X):
    Ah, Ak = h.arities(), k.arities()
    mon = h.monad
    BtX = reconstruct0(k.tgt_coll, X, Ak)
    BX = reconstruct1(k, pro_identity(X), Ak)
    ABt = reconstruct1(h, pro_identity(BtX.cat), Ah)
    AsB = reconstruct1(unit_h(h.src_coll, Ah), BX.pro, Ah)
    SX = s_cat(X, Ak, monad=mon)
    SSX = s_cat(SX, Ah, monad=mon)
    Sbeta_t = s_functor(BtX.alpha, source=s_cat(BtX.cat, Ah, monad=mon), target=SSX)
    left_leg = vcompose_cells(identity_pro_cell(Sbeta_t), ABt.alpha)
    Sbeta = s_cell(BX.alpha, Ah, monad=mon, source=AsB.alpha.target,
                   target=pro_identity(SSX))
    right_leg = vcompose_cells(Sbeta, AsB.alpha)
    leg = hcompose_cells(left_leg, right_leg)
    frak = frak_m(X, Ak, Ah, mon)
    full = vcompose_cells(frak, leg)
    return TensorAt(X, left_leg, right_leg, leg, frak, full, ABt, AsB,
                    {"BtX": BtX, "BX": BX})


def _tops(h, k, at_X, at_1):
    """A B_t ! , A_s B ! and their tensor, from the probe to the terminal probe."""
    Ah, Ak = h.arities(), k.arities()
    X = at_X.probe
    O = one()
    Bt_bang = reconstruct0_on_functor(k.tgt_coll, bang(X, O), at_X.recs["BtX"],
                                      at_1.recs["BtX"], Ak)
    ABt_bang = reconstruct1_on_cell(h, identity_pro_cell(Bt_bang), at_X.AB, at_1.AB, Ah)
    B_bang = reconstruct1_on_cell(k, identity_pro_cell(bang(X, O)), at_X.recs["BX"],
                                  at_1.recs["BX"], Ak)
    AsB_bang = reconstruct1_on_cell(unit_h(h.src_coll, Ah), B_bang, at_X.AsB, at_1.AsB, Ah)
    return ABt_bang, AsB_bang, hcompose_cells(ABt_bang, AsB_bang)


def _bottoms(h, k, X):
    Ah, Ak = h.arities(), k.arities()
    mon = h.monad
    O = one()
    SX, S1 = s_cat(X, Ak, monad=mon), skeletal_S1(Ak, mon)
    Sb = s_functor(bang(X, O), source=SX, target=S1)
    SSb = s_functor(Sb, source=s_cat(SX, Ah, monad=mon), target=s_cat(S1, Ah, monad=mon))
    ISSb = identity_pro_cell(SSb)
    L = _lengths(s_cat(SX, Ah, monad=mon))
    ISb = identity_pro_cell(s_functor(bang(X, O), source=s_cat(X, L, monad=mon),
                                      target=skeletal_S1(L, mon)))
    return ISSb, hcompose_cells(ISSb, ISSb), ISb


def _square_check(name, anchor, top, left, right, bottom):
    def go():
        rep = is_pullback_cat1(top, left, right, bottom)
        return rep.verdict, rep.counterexample
    return run_check(name, anchor, go)


def hcoll_tensor(h, k, universe, probes=None, tag="altclubdesc"):
    """Cartesianness of the central transformation of (A . B) and of mu, per probe."""
    if h.monad != k.monad:
        raise ShapeMismatch("collections over different monads")
    names = probes if probes is not None else universe.names()
    O = one()
    at_1 = _tensor_at(h, k, O)
    checks = []
    for name in names:
        X = universe.categories[name]
        pre = f"{tag}/{h.name}.{k.name}/{name}"
        built = {}

        def construct(X=X, built=built):
            built["at"] = _tensor_at(h, k, X)
            built["tops"] = _tops(h, k, built["at"], at_1)
            built["bottoms"] = _bottoms(h, k, X)
            return True, None
        checks.append(run_check(f"{pre}/construct", "hcoll_tensor", construct))
        if not checks[-1].verdict:
            continue
        at_X = built["at"]
        ABt_bang, AsB_bang, T_bang = built["tops"]
        ISSb, ISSb2, ISb = built["bottoms"]
        checks.append(_square_check(f"{pre}/A-stack", "hcoll_tensor",
                                    ABt_bang, at_X.left_leg, at_1.left_leg, ISSb))
        checks.append(_square_check(f"{pre}/B-stack", "hcoll_tensor",
                                    AsB_bang, at_X.right_leg, at_1.right_leg, ISSb))
        checks.append(_square_check(f"{pre}/alpha.beta", "hcoll_tensor",
                                    T_bang, at_X.leg, at_1.leg, ISSb2))
        checks.append(_square_check(f"{pre}/mu", "hcoll_tensor",
                                    ISSb2, at_X.frak, at_1.frak, ISb))
        checks.append(_square_check(f"{pre}/outer", "hcoll_tensor",
                                    T_bang, at_X.full, at_1.full, ISb))
    return checks


def whisker_collection(c0, h, universe, probes=None, tag="whiskerlift"):
    """Cartesianness of (A, alpha)(B, beta): l_A, then the tensor leg of I_A . B."""
    hA = unit_h(c0)
    names = probes if probes is not None else universe.names()
    O = one()
    at_1 = _tensor_at(hA, h, O)
    checks = []

    def legs(at):
        lam = unitor_left(at.AsB.pro)
        return lam, vcompose_cells(at.full, lam)

    lam1, full1 = legs(at_1)
    for name in names:
        X = universe.categories[name]
        pre = f"{tag}/{c0.name}.{h.name}/{name}"
        built = {}

        def construct(X=X, built=built):
            at = _tensor_at(hA, h, X)
            built["at"], built["legs"] = at, legs(at)
            built["top"] = _tops(hA, h, at, at_1)[1]
            built["bottom"] = _bottoms(hA, h, X)[2]
            return True, None
        checks.append(run_check(f"{pre}/construct", "whisker_collection", construct))
        if not checks[-1].verdict:
            continue
        at_X, (lamX, fullX) = built["at"], built["legs"]
        AsB_bang, ISb = built["top"], built["bottom"]
        checks.append(_square_check(f"{pre}/cartesian", "whisker_collection",
                                    AsB_bang, fullX, full1, ISb))

        def counts(at=at_X, lam=lamX):
            # A B X against (I_A . B) X, counted along both paths
            a = len(at.AsB.pro.proarrows)
            b = len(at.leg.source.proarrows)
            return a == b and cell_bijectivity(lam) is None, (a, b)
        checks.append(run_check(f"{pre}/two-path", "whisker_collection", counts))
    return checks


def interchange(h, k, X, arities=None):
    """Component at X of the interchange: the pseudonaturality of A at B X."""
    BX = reconstruct1(k, pro_identity(X), k.arities())
    return pseudonaturality(h, BX.pro, arities)


# sample horizontal collections ---------------------------------------------------

def sample_collections_h(monad="S"):
    from .fincat import make_category
    from .profunctor import Profunctor
    from .clubs import club_unit
    out = [unit_h(club_unit(monad))]
    pt1 = Collection0(make_category(["u"], name="pt"), {"u": 1}, monad=monad, name="pt1")
    pt2 = Collection0(make_category(["b"], name="bin"), {"b": 2}, monad=monad, name="binary")
    single = lambda c, n: Profunctor(c.base, c.base, {"a": (c.base.objects[0], c.base.objects[0])},
                                     {(c.base.identity[c.base.objects[0]], "a"): "a"},
                                     {("a", c.base.identity[c.base.objects[0]]): "a"}, name=n)
    out.append(CollectionH(pt1, pt1, single(pt1, "a1"), {"a": (0,)}, name="h1"))
    out.append(CollectionH(pt2, pt2, single(pt2, "a2"), {"a": (0, 1)}, name="h2"))
    if monad == "S":
        out.append(CollectionH(pt2, pt2, Profunctor(
            pt2.base, pt2.base, {"a": ("b", "b"), "c": ("b", "b")},
            {("id_b", "a"): "a", ("id_b", "c"): "c"}, {("a", "id_b"): "a", ("c", "id_b"): "c"},
            name="a2s"), {"a": (0, 1), "c": (1, 0)},
            name="h2s"))
    return out


# special instances --------------------------------------------------------------------

def trivial_instance(X, Y):
    """I of the product square of X and Y over 1, used twice: A-part is 1."""
    from .fincat import CommutingSquare, canonical_pullback
    O = one()
    f, g = bang(X, O), bang(Y, O)
    pb = canonical_pullback(f, g)
    sq = CommutingSquare(pb.p2, pb.p1, g, f, name=f"{X.name}x{Y.name}")
    return cat0_instance(sq, sq, name=f"trivial/{X.name}x{Y.name}")


def _droppable(P):
    """A proarrow p0 with everything acting into it, chosen so that the rest
    is a proper nonempty subprofunctor; None when every choice drops all."""
    pred = {p: set() for p in P.proarrows}
    for (h, p), q in P.left_table().items():
        if q is not None:
            pred[q].add(p)
    for (p, f), q in P.right_table().items():
        if q is not None:
            pred[q].add(p)
    for p0 in ordered(P.proarrows):
        seen, todo = {p0}, [p0]
        while todo:
            for p in pred[todo.pop()]:
                if p not in seen:
                    seen.add(p)
                    todo.append(p)
        if len(seen) < len(P.proarrows):
            return seen
    return None


def restrict_pro(P, keep, name=""):
    """The subprofunctor on ``keep``, a set closed under both actions."""
    from .profunctor import Profunctor
    keep = set(keep)
    left = {k: q for k, q in P.left_table().items() if k[1] in keep}
    right = {k: q for k, q in P.right_table().items() if k[0] in keep}
    return Profunctor(P.src_cat, P.tgt_cat, {p: P.ends(p) for p in P.proarrows if p in keep},
                      left, right, name=name or f"{P.name}'")


def corrupt_instance(inst):
    """Replace the apex of the first square by a proper subprofunctor; the
    squares still commute but the tensored square is no longer a pullback."""
    top, left, right, bottom = inst.sq12
    D = top.source
    drop = _droppable(D)
    if drop is None:
        raise ShapeMismatch("apex has no proper subprofunctor to keep")
    keep = [p for p in D.proarrows if p not in drop]
    D2 = restrict_pro(D, keep, name=f"{D.name}-cut")
    cut = lambda F: Cell(D2, F.target, F.vertical_src, F.vertical_tgt,
                         {p: F.map[p] for p in keep}, name=F.name)
    return HpsInstance((cut(top), cut(left), right, bottom), inst.sq23,
                       name=f"{inst.name}/corrupt")
