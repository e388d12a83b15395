"""Collections over S at the level of categories and functors.

A collection is a category ``a`` with a functor ``theta: a -> S1``, stored as
an arity per object and a permutation per morphism.  Reconstruction at a
category X pulls theta back along ``S!: SX -> S1``; evaluation at the
terminal probe recovers the collection exactly because pullbacks along
identities are identities.
"""

import time
from dataclasses import dataclass, field

from .errors import ClubError, Diagnostic, MissingTerminalProbe, ShapeMismatch
from .fincat import (CommutingSquare, Functor, bang, bijectivity, canonical_pullback,
                     induced_functor, is_pullback,
                     make_category, validate_functor)
from .probes import one
from .smc import (_flatten_perm, eta_cat, identity_perm, mu_functor,
                  s_bang, s_cat, s_functor, skeletal_S1)


class Collection0:
    __slots__ = ("base", "arity", "perm", "monad", "name", "_theta")

    def __init__(self, base, arity, perm=None, monad="S", name=""):
        self.base = base
        self.arity = dict(arity)
        if perm is None:
            perm = {m: identity_perm(self.arity[base.src(m)]) for m in base.morphisms}
        self.perm = {m: tuple(p) for m, p in perm.items()}
        self.monad = monad
        self.name = name or base.name
        self._theta = {}

    def __repr__(self):
        return f"Collection0({self.name}: {len(self.base.objects)} obj)"

    def arities(self):
        return frozenset(self.arity.values())

    def theta(self, arities=None):
        """theta as a functor into S1 graded by ``arities`` (default: its own)."""
        arities = frozenset(self.arities() if arities is None else arities)
        hit = self._theta.get(arities)
        if hit is not None:
            return hit
        S1 = skeletal_S1(arities, self.monad)
        star = one().objects[0]
        sid = one().identity[star]
        ob = {u: (star,) * self.arity[u] for u in self.base.objects}
        mor = {m: (p, (sid,) * len(p)) for m, p in self.perm.items()}
        F = Functor(self.base, S1, ob, mor, name=f"theta({self.name})")
        self._theta[arities] = F
        return F


def collection_from_functor(theta, monad=None, name=""):
    """Read a functor into a materialization of S1 back as a Collection0."""
    monad = monad or theta.target.meta.get("kind", "S")
    a = theta.source
    return Collection0(a, {u: len(theta.ob[u]) for u in a.objects},
                       {m: theta.mor[m][0] for m in a.morphisms}, monad=monad,
                       name=name or a.name)


def validate_collection(c):
    out = []
    if c.monad == "T":
        for m, p in c.perm.items():
            if p != identity_perm(len(p)):
                out.append(Diagnostic("PermutationInT", (m,)))
    return out + validate_functor(c.theta())


def same_collection(c, d):
    from .fincat import equal_tables
    return (c.monad == d.monad and equal_tables(c.base, d.base)
            and c.arity == d.arity and c.perm == d.perm)


@dataclass
class Reconstruction:
    """AX with alpha_X: AX -> SX and A!: AX -> a, chosen as a pullback."""
    probe: object
    cat: object
    alpha: object
    bang: object
    pb: object = None

    def split_obj(self, o):
        return self.bang.ob[o], self.alpha.ob[o]

    def split_mor(self, m):
        return self.bang.mor[m], self.alpha.mor[m]


def reconstruct0(c, X, arities=None):
    A = frozenset(c.arities() if arities is None else arities)
    SX = s_cat(X, A, monad=c.monad)
    pb = canonical_pullback(c.theta(A), s_bang(SX), name=f"{c.name}[{X.name}]")
    return Reconstruction(X, pb.cat, pb.p2, pb.p1, pb)


def reconstruct0_on_functor(c, F, src=None, tgt=None, arities=None):
    """A F : AX -> AY, (u, xs) |-> (u, SF xs)."""
    src = src or reconstruct0(c, F.source, arities)
    tgt = tgt or reconstruct0(c, F.target, arities)
    SF = s_functor(F, source=src.alpha.target, target=tgt.alpha.target)
    ob, mor = {}, {}
    for o in src.cat.objects:
        u, xs = src.split_obj(o)
        ob[o] = tgt.pb.pair_obj(u, SF.ob[xs])
    for m in src.cat.morphisms:
        h, g = src.split_mor(m)
        mor[m] = tgt.pb.pair_mor(h, SF.mor[g])
    if any(v is None for v in ob.values()) or any(v is None for v in mor.values()):
        raise ShapeMismatch("functor image leaves the reconstruction")
    return Functor(src.cat, tgt.cat, ob, mor, name=f"A({F.name})")


@dataclass
class CollectionData:
    """A functor A with a transformation alpha: A => S, tabulated on probes.

    ``at`` maps probe names to Reconstruction records; ``on_functors`` maps
    probe-functor names to A applied to them."""
    monad: str
    arities: frozenset
    at: dict = field(default_factory=dict)
    on_functors: dict = field(default_factory=dict)


def reconstruct_data(c, universe, arities=None):
    A = frozenset(c.arities() if arities is None else arities)
    data = CollectionData(c.monad, A)
    for name in universe.names():
        data.at[name] = reconstruct0(c, universe.categories[name], A)
    for fname, F in universe.functors.items():
        s = _probe_name(universe, F.source)
        t = _probe_name(universe, F.target)
        data.on_functors[fname] = reconstruct0_on_functor(c, F, data.at[s], data.at[t], A)
    return data


def _probe_name(universe, C):
    for name, D in universe.categories.items():
        if D is C:
            return name
    raise ShapeMismatch(f"{C.name} is not a probe")


def evaluate0(data, universe=None):
    """(A1, alpha_1) as a Collection0."""
    name = None
    if universe is not None:
        name = universe.terminal()
    else:
        for n, rec in data.at.items():
            X = rec.probe
            if len(X.objects) == 1 and len(X.morphisms) == 1:
                name = n
                break
    if name is None or name not in data.at:
        raise MissingTerminalProbe("no terminal probe among the tabulated categories")
    rec = data.at[name]
    return collection_from_functor(rec.alpha, data.monad)


def roundtrip_iso(data, universe):
    """For each probe X, the comparison AX -> (G F A)X induced by the cone
    (A!, alpha_X), with its bijectivity and naturality over probe functors.

    Returns {probe: (iso functor or None, counterexample or None)} and a list
    of failing functor names."""
    c = evaluate0(data, universe)
    out, recs = {}, {}
    for name in universe.names():
        rec = data.at[name]
        G = reconstruct0(c, rec.probe, data.arities)
        recs[name] = G
        try:
            u = induced_functor(G.pb, rec.bang, rec.alpha, name=f"iota[{name}]")
        except ClubError as e:
            out[name] = (None, ("not-induced", str(e)))
            continue
        out[name] = (u, bijectivity(u))
    bad = []
    for fname, F in universe.functors.items():
        s = _probe_name(universe, F.source)
        t = _probe_name(universe, F.target)
        us, ut = out[s][0], out[t][0]
        if us is None or ut is None:
            bad.append(fname)
            continue
        GF = reconstruct0_on_functor(c, F, recs[s], recs[t], data.arities)
        AF = data.on_functors[fname]
        if not all(ut.ob[AF.ob[o]] == GF.ob[us.ob[o]] for o in us.source.objects) or \
           not all(ut.mor[AF.mor[m]] == GF.mor[us.mor[m]] for m in us.source.morphisms):
            bad.append(fname)
    return out, bad


# sample functors over S with a cartesian transformation, for the round trip ------

def eta_data(universe, monad="S"):
    """A = id with alpha = eta."""
    data = CollectionData(monad, frozenset({1}))
    O = one()
    for name in universe.names():
        X = universe.categories[name]
        data.at[name] = Reconstruction(X, X, eta_cat(X, s_cat(X, {1}, monad=monad), monad),
                                       bang(X, O))
    data.on_functors = dict(universe.functors)
    return data


def s_data(universe, arities, monad="S"):
    """A = S itself with alpha = id."""
    A = frozenset(arities)
    data = CollectionData(monad, A)
    S1 = skeletal_S1(A, monad)
    for name in universe.names():
        X = universe.categories[name]
        SX = s_cat(X, A, monad=monad)
        from .fincat import identity_functor
        data.at[name] = Reconstruction(X, SX, identity_functor(SX),
                                       s_functor(bang(X, one()), source=SX, target=S1))
    for fname, F in universe.functors.items():
        data.on_functors[fname] = s_functor(F, A, monad=monad)
    return data


def mu_data(universe, arities, monad="S"):
    """A = SS (graded by total size) with alpha = mu."""
    A = frozenset(arities)
    data = CollectionData(monad, A)
    O = one()
    S1 = skeletal_S1(A, monad)
    SS1 = s_cat(S1, A, A, monad)
    for name in universe.names():
        X = universe.categories[name]
        SX = s_cat(X, A, monad=monad)
        SSX = s_cat(SX, A, A, monad)
        S_bang = s_functor(bang(X, O), source=SX, target=S1)
        data.at[name] = Reconstruction(X, SSX, mu_functor(SSX, SX),
                                       s_functor(S_bang, source=SSX, target=SS1))
    for fname, F in universe.functors.items():
        SF = s_functor(F, A, monad=monad)
        data.on_functors[fname] = s_functor(SF, source=s_cat(SF.source, A, A, monad),
                                            target=s_cat(SF.target, A, A, monad))
    return data


# the monoidal structure on collections ---------------------------------------------

def club_unit(monad="S"):
    """The terminal category with theta = eta_1 (arity 1)."""
    O = one()
    return Collection0(O, {O.objects[0]: 1}, monad=monad, name="I")


@dataclass
class Tensor:
    """c (x) d with the pullback it was built from."""
    coll: Collection0
    pb: object
    left: Collection0
    right: Collection0

    def split_obj(self, o):
        return self.pb.p1.ob[o], self.pb.p2.ob[o]

    def split_mor(self, m):
        return self.pb.p1.mor[m], self.pb.p2.mor[m]


def club_tensor_data(c, d):
    if c.monad != d.monad:
        raise ShapeMismatch("collections over different monads")
    A = c.arities()
    Sb = s_cat(d.base, A, monad=c.monad)
    pb = canonical_pullback(c.theta(), s_bang(Sb), name=f"{c.name}*{d.name}")
    arity, perm = {}, {}
    for o in pb.cat.objects:
        arity[o] = sum(d.arity[v] for v in pb.p2.ob[o])
    for m in pb.cat.morphisms:
        sigma, comps = pb.p2.mor[m]
        perm[m] = _flatten_perm(sigma, tuple(d.perm[g] for g in comps))
    coll = Collection0(pb.cat, arity, perm, c.monad, name=f"({c.name}*{d.name})")
    return Tensor(coll, pb, c, d)


def club_tensor(c, d):
    return club_tensor_data(c, d).coll


def collection_map_failure(F, c, d):
    """None when F: c.base -> d.base is a map of collections (theta_d F = theta_c)."""
    cx = validate_functor(F)
    if cx:
        return ("not-a-functor", cx[0].kind, cx[0].ids)
    for u in c.base.objects:
        if d.arity[F.ob[u]] != c.arity[u]:
            return ("arity-mismatch", u)
    for m in c.base.morphisms:
        if d.perm[F.mor[m]] != c.perm[m]:
            return ("perm-mismatch", m)
    return None


def collection_iso_failure(F, c, d):
    """None when F is an isomorphism of collections c -> d."""
    cx = collection_map_failure(F, c, d)
    return cx if cx is not None else bijectivity(F)


def left_unitor(c):
    """c -> I (x) c,  v |-> (*, (v,))."""
    T = club_tensor_data(club_unit(c.monad), c)
    ob = {v: T.pb.pair_obj(one().objects[0], (v,)) for v in c.base.objects}
    mor = {g: T.pb.pair_mor(one().identity[one().objects[0]], ((0,), (g,)))
           for g in c.base.morphisms}
    return Functor(c.base, T.coll.base, ob, mor, name="l"), T.coll


def right_unitor(c):
    """c -> c (x) I; identifier-exact because S1 -> S1 is the identity."""
    T = club_tensor_data(c, club_unit(c.monad))
    ob = {u: T.pb.pair_obj(u, ("*",) * c.arity[u]) for u in c.base.objects}
    mor = {h: T.pb.pair_mor(h, (c.perm[h], ("id_*",) * len(c.perm[h])))
           for h in c.base.morphisms}
    return Functor(c.base, T.coll.base, ob, mor, name="r"), T.coll


def associator0(c, d, e):
    """The comparison (c (x) d) (x) e -> c (x) (d (x) e)."""
    L1 = club_tensor_data(c, d)
    L = club_tensor_data(L1.coll, e)
    R1 = club_tensor_data(d, e)
    R = club_tensor_data(c, R1.coll)
    ob, mor = {}, {}
    for o in L.coll.base.objects:
        q, ws = L.split_obj(o)
        u, vs = L1.split_obj(q)
        inner, k = [], 0
        for v in vs:
            n = d.arity[v]
            inner.append(R1.pb.pair_obj(v, tuple(ws[k:k + n])))
            k += n
        ob[o] = R.pb.pair_obj(u, tuple(inner))
    for m in L.coll.base.morphisms:
        qm, (tau, ks) = L.split_mor(m)
        h, (sigma, gs) = L1.split_mor(qm)
        src_vs = L1.split_obj(L1.coll.base.src(qm))[1]
        inner, k = [], 0
        for g, v in zip(gs, src_vs):
            n = d.arity[v]
            inner.append(R1.pb.pair_mor(g, (d.perm[g], tuple(ks[k:k + n]))))
            k += n
        mor[m] = R.pb.pair_mor(h, (sigma, tuple(inner)))
    return Functor(L.coll.base, R.coll.base, ob, mor, name="assoc"), L.coll, R.coll


def tensor_map(F, G, c, c2, d, d2):
    """F (x) G : c (x) d -> c2 (x) d2 for collection maps F: c -> c2, G: d -> d2."""
    T = club_tensor_data(c, d)
    T2 = club_tensor_data(c2, d2)
    SG = s_functor(G, source=s_cat(d.base, c.arities(), monad=c.monad),
                   target=s_cat(d2.base, c2.arities(), monad=c.monad))
    ob = {o: T2.pb.pair_obj(F.ob[T.split_obj(o)[0]], SG.ob[T.split_obj(o)[1]])
          for o in T.coll.base.objects}
    mor = {m: T2.pb.pair_mor(F.mor[T.split_mor(m)[0]], SG.mor[T.split_mor(m)[1]])
           for m in T.coll.base.morphisms}
    return Functor(T.coll.base, T2.coll.base, ob, mor, name=f"{F.name}*{G.name}")


# sample collections ----------------------------------------------------------------

def sample_collections(monad="S"):
    """A fixed corpus of small collections; permutation-free ones only for T."""
    out = [club_unit(monad)]
    out.append(Collection0(make_category(["c"], name="nul"), {"c": 0}, monad=monad, name="nullary"))
    out.append(Collection0(make_category(["b"], name="bin"), {"b": 2}, monad=monad, name="binary"))
    out.append(Collection0(make_category(["t"], name="ter"), {"t": 3}, monad=monad, name="ternary"))
    out.append(Collection0(make_category(["p", "q"], name="pq"), {"p": 1, "q": 2},
                           monad=monad, name="mixed"))
    arrow = make_category(["0", "1"], [("u", "0", "1")], name="2")
    out.append(Collection0(arrow, {"0": 2, "1": 2}, monad=monad, name="arrow2"))
    out.append(Collection0(arrow, {"0": 1, "1": 1}, monad=monad, name="arrow1"))
    out.append(Collection0(make_category(["a", "b"], [("f", "a", "b"), ("g", "a", "b")],
                                         name="par"), {"a": 0, "b": 0}, monad=monad,
                           name="parallel0"))
    for arities, nm in (({0, 1, 2}, "S1<=2"), ({3}, "S1=3")):
        S1 = skeletal_S1(arities, monad)
        out.append(Collection0(S1, {x: len(x) for x in S1.objects},
                               {m: m[0] for m in S1.morphisms}, monad=monad, name=nm))
    if monad == "S":
        z2 = make_category(["b"], [("s", "b", "b")], [("s", "s", "id_b")], name="Z2")
        out.append(Collection0(z2, {"b": 2}, {"id_b": (0, 1), "s": (1, 0)}, name="swap"))
        z3 = make_category(["t"], [("r", "t", "t"), ("r2", "t", "t")],
                           [("r", "r", "r2"), ("r", "r2", "id_t"), ("r2", "r", "id_t"),
                            ("r2", "r2", "r")], name="Z3")
        out.append(Collection0(z3, {"t": 3}, {"id_t": (0, 1, 2), "r": (1, 2, 0),
                                             "r2": (2, 0, 1)}, name="cyclic3"))
        iso = make_category(["0", "1"], [("i", "0", "1"), ("j", "1", "0")],
                            [("j", "i", "id_0"), ("i", "j", "id_1")], name="G1")
        out.append(Collection0(iso, {"0": 2, "1": 2}, {"id_0": (0, 1), "id_1": (0, 1),
                                                       "i": (1, 0), "j": (1, 0)},
                               name="iso-swap"))
    else:
        out.append(Collection0(make_category(["m", "n"], [("f", "m", "n")], name="2"),
                               {"m": 3, "n": 3}, monad=monad, name="arrow3"))
        out.append(Collection0(make_category(["x", "y", "z"], name="D3"),
                               {"x": 0, "y": 1, "z": 2}, monad=monad, name="graded3"))
    return out


TENSOR_CORPUS = ("I", "nullary", "binary", "mixed", "arrow1", "swap", "parallel0")


def tensor_corpus(monad="S"):
    """The collections whose triples the associativity check ranges over."""
    return [c for c in sample_collections(monad) if c.name in TENSOR_CORPUS]


# the clubalt suite -----------------------------------------------------------------

@dataclass
class Check:
    name: str
    anchor: str
    verdict: bool
    counterexample: object = None
    elapsed: float = 0.0


def run_check(name, anchor, fn):
    """Run ``fn`` returning (verdict, counterexample); exceptions from this
    package become failures tagged with their class name."""
    t0 = time.perf_counter()
    try:
        ok, cx = fn()
    except ClubError as e:
        ok, cx = False, (type(e).__name__, str(e))
    return Check(name, anchor, bool(ok), cx, time.perf_counter() - t0)


def square_result(sq):
    rep = is_pullback(sq)
    return rep.verdict, rep.counterexample


def eta_square(X, monad="S"):
    """eta_X over !: X -> 1."""
    O = one()
    SX1 = s_cat(X, {1}, monad=monad)
    S11 = skeletal_S1({1}, monad)
    return CommutingSquare(eta_cat(X, SX1, monad), bang(X, O),
                           s_functor(bang(X, O), source=SX1, target=S11),
                           eta_cat(O, S11, monad), name=f"eta[{X.name}]")


def mu_square(X, arities, monad="S"):
    """mu_X over !, on lists of lists of total size in ``arities``."""
    A = frozenset(arities)
    O = one()
    S1 = skeletal_S1(A, monad)
    SX = s_cat(X, A, monad=monad)
    SSX = s_cat(SX, A, A, monad)
    SS1 = s_cat(S1, A, A, monad)
    Sb = s_functor(bang(X, O), source=SX, target=S1)
    return CommutingSquare(mu_functor(SSX, SX), s_functor(Sb, source=SSX, target=SS1),
                           Sb, mu_functor(SS1, S1), name=f"mu[{X.name}]")


def s_alpha_square(c, X, outer):
    """S alpha_X over !, for alpha the transformation reconstructed from c."""
    O = one()
    rec = reconstruct0(c, X)
    rec1 = reconstruct0(c, O)
    A_bang = reconstruct0_on_functor(c, bang(X, O), rec, rec1)
    outer = frozenset(outer)
    SAX = s_cat(rec.cat, outer, monad=c.monad)
    Sa = s_cat(rec1.cat, outer, monad=c.monad)
    SSX = s_cat(rec.alpha.target, outer, monad=c.monad)
    SS1 = s_cat(rec1.alpha.target, outer, monad=c.monad)
    Sb = s_functor(bang(X, O), source=rec.alpha.target, target=rec1.alpha.target)
    return CommutingSquare(s_functor(rec.alpha, source=SAX, target=SSX),
                           s_functor(A_bang, source=SAX, target=Sa),
                           s_functor(Sb, source=SSX, target=SS1),
                           s_functor(rec1.alpha, source=Sa, target=SS1),
                           name=f"S-alpha[{c.name},{X.name}]")


def alpha_square(c, X):
    """The reconstructed alpha_X over ! (a pullback by construction)."""
    O = one()
    rec = reconstruct0(c, X)
    rec1 = reconstruct0(c, O)
    A_bang = reconstruct0_on_functor(c, bang(X, O), rec, rec1)
    Sb = s_functor(bang(X, O), source=rec.alpha.target, target=rec1.alpha.target)
    return CommutingSquare(rec.alpha, A_bang, Sb, rec1.alpha, name=f"alpha[{c.name},{X.name}]")


def clubalt_suite(universe, arities, monad="S", collections=None, outer=None):
    """Per-probe checks that eta, mu and S alpha are cartesian."""
    A = frozenset(arities)
    colls = sample_collections(monad) if collections is None else collections
    outer = frozenset(outer if outer is not None else {a for a in A if a <= 2})
    checks = []
    for name in universe.names():
        X = universe.categories[name]
        checks.append(run_check(f"clubalt/eta-cartesian/{monad}/{name}", "clubalt/eta-cartesian",
                                lambda: square_result(eta_square(X, monad))))
        checks.append(run_check(f"clubalt/mu-cartesian/{monad}/{name}", "clubalt/mu-cartesian",
                                lambda: square_result(mu_square(X, A, monad))))
        for c in colls:
            checks.append(run_check(f"clubalt/S-preserves-cartesian/{monad}/{c.name}/{name}",
                                    "clubalt/S-preserves-cartesian",
                                    lambda: square_result(s_alpha_square(c, X, outer))))
    return checks
