"""Finite profunctors, cells, coend composition and collages.

A proarrow ``p: x_t -|-> x_s`` of a profunctor from ``X_s`` to ``X_t`` has
``frm`` in ``X_t`` and ``to`` in ``X_s``.  Morphisms ``h`` of ``X_s`` act on
the left (``h . p``, moving ``to``) and morphisms ``f`` of ``X_t`` act on the
right (``p . f``, moving ``frm``).
"""

from .errors import (Diagnostic, IllDefined, IllDefinedAction, MiddleMismatch,
                     MismatchedTarget, NotACollage, ShapeMismatch)
from .fincat import (FinCat, Functor, bijectivity, canonical_pullback,
                     functor_equal, identity_functor, induced_functor,
                     make_category, same_category, validate_functor)
from .ids import idkey, least


class Profunctor:
    __slots__ = ("name", "src_cat", "tgt_cat", "_ends", "_left", "_right",
                 "_lrule", "_rrule", "_by_to", "_by_frm", "_between", "meta")

    def __init__(self, src_cat, tgt_cat, proarrows, left, right, name="", meta=None):
        self.name = name
        self.src_cat = src_cat
        self.tgt_cat = tgt_cat
        self._ends = dict(proarrows)
        self._lrule = left if callable(left) else None
        self._left = None if callable(left) else dict(left)
        self._rrule = right if callable(right) else None
        self._right = None if callable(right) else dict(right)
        self.meta = dict(meta or {})
        by_to, by_frm, between = {}, {}, {}
        for p, (a, b) in self._ends.items():
            by_frm.setdefault(a, []).append(p)
            by_to.setdefault(b, []).append(p)
            between.setdefault((a, b), []).append(p)
        self._by_to, self._by_frm, self._between = by_to, by_frm, between

    def __repr__(self):
        return (f"Profunctor({self.name or '?'}: {self.src_cat.name} -|-> "
                f"{self.tgt_cat.name}, {len(self._ends)} proarrows)")

    @property
    def proarrows(self):
        return tuple(self._ends)

    def has(self, p):
        return p in self._ends

    def ends(self, p):
        return self._ends[p]

    def frm(self, p):
        return self._ends[p][0]

    def to(self, p):
        return self._ends[p][1]

    def between(self, a, b):
        return self._between.get((a, b), ())

    def landing_at(self, b):
        return self._by_to.get(b, ())

    def leaving(self, a):
        return self._by_frm.get(a, ())

    def act_left(self, h, p):
        if self._left is not None:
            return self._left.get((h, p))
        return self._lrule(h, p)

    def act_right(self, p, f):
        if self._right is not None:
            return self._right.get((p, f))
        return self._rrule(p, f)

    def left_pairs(self):
        for p, (_, b) in self._ends.items():
            for h in self.src_cat.out_of(b):
                yield h, p

    def right_pairs(self):
        for p, (a, _) in self._ends.items():
            for f in self.tgt_cat.into(a):
                yield p, f

    def left_table(self):
        if self._left is None:
            self._left = {(h, p): self._lrule(h, p) for h, p in self.left_pairs()}
        return self._left

    def right_table(self):
        if self._right is None:
            self._right = {(p, f): self._rrule(p, f) for p, f in self.right_pairs()}
        return self._right


def same_profunctor(P, Q):
    if P is Q:
        return True
    return (same_category(P.src_cat, Q.src_cat) and same_category(P.tgt_cat, Q.tgt_cat)
            and P._ends == Q._ends)


def equal_profunctors(P, Q):
    return same_profunctor(P, Q) and (P is Q or (P.left_table() == Q.left_table()
                                                 and P.right_table() == Q.right_table()))


def validate_profunctor(P):
    Xs, Xt = P.src_cat, P.tgt_cat
    out = []
    for p, (a, b) in P._ends.items():
        if a not in Xt.objects or b not in Xs.objects:
            out.append(Diagnostic("DanglingProarrow", (p,)))
    if out:
        return out
    if P._left is not None:
        for (h, p) in P._left:
            if not (Xs.has_morphism(h) and P.has(p)) or Xs.src(h) != P.to(p):
                out.append(Diagnostic("SpuriousLeftAction", (h, p)))
    if P._right is not None:
        for (p, f) in P._right:
            if not (Xt.has_morphism(f) and P.has(p)) or Xt.dst(f) != P.frm(p):
                out.append(Diagnostic("SpuriousRightAction", (p, f)))
    badl, badr = set(), set()
    for h, p in P.left_pairs():
        q = P.act_left(h, p)
        if q is None:
            out.append(Diagnostic("MissingLeftAction", (h, p)))
            badl.add((h, p))
        elif not P.has(q) or P.ends(q) != (P.frm(p), Xs.dst(h)):
            out.append(Diagnostic("MistypedLeftAction", (h, p, q)))
            badl.add((h, p))
    for p, f in P.right_pairs():
        q = P.act_right(p, f)
        if q is None:
            out.append(Diagnostic("MissingRightAction", (p, f)))
            badr.add((p, f))
        elif not P.has(q) or P.ends(q) != (Xt.src(f), P.to(p)):
            out.append(Diagnostic("MistypedRightAction", (p, f, q)))
            badr.add((p, f))
    for p, (a, b) in P._ends.items():
        if (Xs.identity[b], p) not in badl and P.act_left(Xs.identity[b], p) != p:
            out.append(Diagnostic("LeftUnit", (p,)))
        if (p, Xt.identity[a]) not in badr and P.act_right(p, Xt.identity[a]) != p:
            out.append(Diagnostic("RightUnit", (p,)))
    for h, p in P.left_pairs():
        if (h, p) in badl:
            continue
        q = P.act_left(h, p)
        for h2 in Xs.out_of(Xs.dst(h)):
            if (h2, q) in badl:
                continue
            hh = Xs.comp(h2, h)
            if (hh, p) in badl:
                continue
            if P.act_left(hh, p) != P.act_left(h2, q):
                out.append(Diagnostic("LeftAssociativity", (h2, h, p)))
    for p, f in P.right_pairs():
        if (p, f) in badr:
            continue
        q = P.act_right(p, f)
        for f2 in Xt.into(Xt.src(f)):
            if (q, f2) in badr:
                continue
            ff = Xt.comp(f, f2)
            if (p, ff) in badr:
                continue
            if P.act_right(p, ff) != P.act_right(q, f2):
                out.append(Diagnostic("RightAssociativity", (p, f, f2)))
    for h, p in P.left_pairs():
        if (h, p) in badl:
            continue
        hp = P.act_left(h, p)
        for f in Xt.into(P.frm(p)):
            pf = P.act_right(p, f)
            if (p, f) in badr or (hp, f) in badr or (h, pf) in badl:
                continue
            if P.act_right(hp, f) != P.act_left(h, pf):
                out.append(Diagnostic("Bimodule", (h, p, f)))
    return out


class Cell:
    """on_proarrows sends p in source to a proarrow of target lying over
    (vertical_tgt(frm p), vertical_src(to p))."""
    __slots__ = ("source", "target", "vertical_src", "vertical_tgt", "map", "name")

    def __init__(self, source, target, vertical_src, vertical_tgt, on_proarrows, name=""):
        self.source = source
        self.target = target
        self.vertical_src = vertical_src
        self.vertical_tgt = vertical_tgt
        self.map = on_proarrows
        self.name = name

    def __repr__(self):
        return f"Cell({self.name or '?'}: {self.source.name} => {self.target.name})"

    def is_identity(self):
        return (same_profunctor(self.source, self.target)
                and self.vertical_src.is_identity() and self.vertical_tgt.is_identity()
                and all(self.map[p] == p for p in self.source.proarrows))


def validate_cell(F):
    X, Y = F.source, F.target
    Fs, Ft = F.vertical_src, F.vertical_tgt
    if not (same_category(Fs.source, X.src_cat) and same_category(Ft.source, X.tgt_cat)
            and same_category(Fs.target, Y.src_cat) and same_category(Ft.target, Y.tgt_cat)):
        return [Diagnostic("BoundaryMismatch", (F.name,))]
    out = validate_functor(Fs) + validate_functor(Ft)
    if out:
        return out
    for p, (a, b) in X._ends.items():
        q = F.map.get(p)
        if q is None or not Y.has(q) or Y.ends(q) != (Ft.ob[a], Fs.ob[b]):
            out.append(Diagnostic("MistypedProarrowImage", (p,)))
    if out:
        return out
    for h, p in X.left_pairs():
        if F.map[X.act_left(h, p)] != Y.act_left(Fs.mor[h], F.map[p]):
            out.append(Diagnostic("LeftEquivariance", (h, p)))
    for p, f in X.right_pairs():
        if F.map[X.act_right(p, f)] != Y.act_right(F.map[p], Ft.mor[f]):
            out.append(Diagnostic("RightEquivariance", (p, f)))
    return out


def identity_cell(X):
    return Cell(X, X, identity_functor(X.src_cat), identity_functor(X.tgt_cat),
                {p: p for p in X.proarrows}, name=f"id_{X.name}")


def vcompose_cells(G, F):
    """G after F, stacking vertically."""
    from .fincat import compose_functors
    if not same_profunctor(F.target, G.source):
        raise ShapeMismatch(f"cannot stack {G!r} on {F!r}")
    return Cell(F.source, G.target, compose_functors(G.vertical_src, F.vertical_src),
                compose_functors(G.vertical_tgt, F.vertical_tgt),
                {p: G.map[q] for p, q in F.map.items()}, name=f"{G.name}.{F.name}")


def cell_equal(F, G):
    return (same_profunctor(F.source, G.source) and same_profunctor(F.target, G.target)
            and functor_equal(F.vertical_src, G.vertical_src)
            and functor_equal(F.vertical_tgt, G.vertical_tgt)
            and all(F.map[p] == G.map[p] for p in F.source.proarrows))


def cell_bijectivity(F):
    """None when F is invertible (bijective on both boundaries and proarrows)."""
    for V in (F.vertical_src, F.vertical_tgt):
        cx = bijectivity(V)
        if cx is not None:
            return cx
    seen = {}
    for p, q in F.map.items():
        if q in seen:
            return ("proarrow-not-injective", seen[q], p)
        seen[q] = p
    if len(seen) != len(F.target.proarrows):
        return ("proarrow-not-hit", least([q for q in F.target.proarrows if q not in seen]))
    return None


def invert_cell(F):
    from .fincat import inverse_functor
    cx = cell_bijectivity(F)
    if cx is not None:
        raise ShapeMismatch(f"cell {F.name!r} is not invertible: {cx}")
    return Cell(F.target, F.source, inverse_functor(F.vertical_src),
                inverse_functor(F.vertical_tgt), {q: p for p, q in F.map.items()},
                name=f"{F.name}^-1")


# identity profunctors -------------------------------------------------------

_ID_CACHE = {}


def pro_identity(X):
    """One proarrow I_f: src f -|-> dst f per morphism f, acting by composition."""
    hit = _ID_CACHE.get(id(X))
    if hit is not None and hit[0] is X:
        return hit[1]
    P = Profunctor(X, X, {f: X.ends(f) for f in X.morphisms},
                   lambda h, p: X.comp(h, p), lambda p, f: X.comp(p, f),
                   name=f"I({X.name})", meta={"identity_of": X})
    _ID_CACHE[id(X)] = (X, P)
    return P


def identity_pro_cell(F):
    """I_F : I_X => I_Y for a functor F: X -> Y."""
    return Cell(pro_identity(F.source), pro_identity(F.target), F, F, dict(F.mor),
                name=f"I({F.name})")


# coend composition -----------------------------------------------------------

class DisjointSet:
    """Union-find whose roots are always the least member."""

    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if idkey(rb) < idkey(ra):
            ra, rb = rb, ra
        self.parent[rb] = ra


class CoendWitness:
    __slots__ = ("class_of", "representative", "members")

    def __init__(self, class_of):
        self.class_of = class_of
        members = {}
        for raw, c in class_of.items():
            members.setdefault(c, []).append(raw)
        self.members = members
        self.representative = {c: least(ms) for c, ms in members.items()}


def raw_pairs(Y, X):
    """(k, g) with k in Y, g in X sharing the middle object."""
    return [(k, g) for g in X.proarrows for k in Y.landing_at(X.frm(g))]


_COMP_CACHE = {}


def _compose_fibres(B, raw):
    fibre = {}
    for k, g in raw:
        fibre.setdefault(B.comp(g, k), []).append((k, g))
    out = {}
    for rs in fibre.values():
        c = least(rs)
        for r in rs:
            out[r] = c
    return out


def pro_compose(Y, X, check=True, generic=False):
    """Y (x) X for X: A -|-> B and Y: B -|-> C, quotienting raw pairs by
    (k, g.f) ~ (f.k, g) for every morphism f of B."""
    key = (id(Y), id(X), generic)
    hit = _COMP_CACHE.get(key)
    if hit is not None and hit[0] is Y and hit[1] is X:
        return hit[2]
    if not same_category(X.tgt_cat, Y.src_cat):
        raise MiddleMismatch(f"{Y!r} cannot follow {X!r}")
    B, A, C = X.tgt_cat, X.src_cat, Y.tgt_cat
    raw = raw_pairs(Y, X)
    ident = X.meta.get("identity_of")
    if not generic and ident is not None and ident is Y.meta.get("identity_of"):
        # I (x) I: classes are the fibres of composition
        class_of = _compose_fibres(B, raw)
        check = False
    else:
        ds = DisjointSet(raw)
        for g in X.proarrows:
            for f in B.into(X.frm(g)):
                gf = X.act_right(g, f)
                for k in Y.landing_at(B.src(f)):
                    ds.union((k, gf), (Y.act_left(f, k), g))
        class_of = {r: ds.find(r) for r in raw}
    wit = CoendWitness(class_of)
    ends = {c: (Y.frm(c[0]), X.to(c[1])) for c in wit.representative}
    left, right = {}, {}
    if check:
        for (k, g), c in class_of.items():
            for h in A.out_of(X.to(g)):
                q = class_of[(k, X.act_left(h, g))]
                prev = left.setdefault((h, c), q)
                if prev != q:
                    raise IllDefinedAction(f"left action of {h!r} on class {c!r}")
            for f in C.into(Y.frm(k)):
                q = class_of[(Y.act_right(k, f), g)]
                prev = right.setdefault((c, f), q)
                if prev != q:
                    raise IllDefinedAction(f"right action of {f!r} on class {c!r}")
    else:
        for c in wit.representative:
            k, g = c
            for h in A.out_of(X.to(g)):
                left[(h, c)] = class_of[(k, X.act_left(h, g))]
            for f in C.into(Y.frm(k)):
                right[(c, f)] = class_of[(Y.act_right(k, f), g)]
    P = Profunctor(A, C, ends, left, right, name=f"({Y.name}*{X.name})",
                   meta={"factors": (Y, X), "witness": wit})
    _COMP_CACHE[key] = (Y, X, (P, wit))
    return P, wit


def composite(Y, X):
    return pro_compose(Y, X)[0]


def hcompose_cells(G, F, source=None, target=None):
    """G (x) F : Y (x) X => Y' (x) X', defined class-wise on representatives
    and checked for independence of the representative."""
    if not functor_equal(G.vertical_src, F.vertical_tgt):
        raise ShapeMismatch(f"{G!r} and {F!r} disagree on the middle boundary")
    src, wit = pro_compose(G.source, F.source) if source is None else source
    tgt, twit = pro_compose(G.target, F.target) if target is None else target
    out = {}
    for (k, g), c in wit.class_of.items():
        q = twit.class_of.get((G.map[k], F.map[g]))
        if q is None:
            raise IllDefined(f"image of ({k!r}, {g!r}) is not a raw pair")
        prev = out.setdefault(c, q)
        if prev != q:
            raise IllDefined(f"class {c!r} has representative-dependent image")
    return Cell(src, tgt, F.vertical_src, G.vertical_tgt, out,
                name=f"({G.name}*{F.name})")


def unitor_left(X):
    """lambda_X : X => I_{X_t} (x) X,  g |-> [I_id (x) g]."""
    I = pro_identity(X.tgt_cat)
    P, wit = pro_compose(I, X)
    Xt = X.tgt_cat
    return Cell(X, P, identity_functor(X.src_cat), identity_functor(Xt),
                {g: wit.class_of[(Xt.identity[X.frm(g)], g)] for g in X.proarrows},
                name=f"lambda({X.name})")


def unitor_right(X):
    """rho_X : X => X (x) I_{X_s},  g |-> [g (x) I_id]."""
    I = pro_identity(X.src_cat)
    P, wit = pro_compose(X, I)
    Xs = X.src_cat
    return Cell(X, P, identity_functor(Xs), identity_functor(X.tgt_cat),
                {g: wit.class_of[(g, Xs.identity[X.to(g)])] for g in X.proarrows},
                name=f"rho({X.name})")


def associator(Z, Y, X):
    """(Z (x) Y) (x) X => Z (x) (Y (x) X)."""
    ZY, zy = pro_compose(Z, Y)
    YX, yx = pro_compose(Y, X)
    L, lw = pro_compose(ZY, X)
    R, rw = pro_compose(Z, YX)
    out = {}
    for (c, x), cls in lw.class_of.items():
        for (z, y) in zy.members[c]:
            q = rw.class_of[(z, yx.class_of[(y, x)])]
            prev = out.setdefault(cls, q)
            if prev != q:
                raise IllDefined("associator depends on representative")
    return Cell(L, R, identity_functor(X.src_cat), identity_functor(Z.tgt_cat), out,
                name="assoc")


# collages --------------------------------------------------------------------

_ARROW = None


def walking_arrow():
    global _ARROW
    if _ARROW is None:
        _ARROW = make_category(["0", "1"], [("u", "0", "1")], name="2")
    return _ARROW


class Collage:
    __slots__ = ("cat", "proj", "pro")

    def __init__(self, cat, proj, pro=None):
        self.cat, self.proj, self.pro = cat, proj, pro


_COLLAGE_CACHE = {}


def collage(P):
    """Objects ("t", x) over 0 for x in X_t and ("s", y) over 1 for y in X_s;
    each proarrow p becomes ("p", p): ("t", frm p) -> ("s", to p)."""
    hit = _COLLAGE_CACHE.get(id(P))
    if hit is not None and hit[0] is P:
        return hit[1]
    Xs, Xt = P.src_cat, P.tgt_cat
    two = walking_arrow()
    objs = [("t", x) for x in Xt.objects] + [("s", y) for y in Xs.objects]
    ends = {}
    for f in Xt.morphisms:
        s, d = Xt.ends(f)
        ends[("t", f)] = (("t", s), ("t", d))
    for h in Xs.morphisms:
        s, d = Xs.ends(h)
        ends[("s", h)] = (("s", s), ("s", d))
    for p in P.proarrows:
        a, b = P.ends(p)
        ends[("p", p)] = (("t", a), ("s", b))
    ident = {("t", x): ("t", Xt.identity[x]) for x in Xt.objects}
    ident.update({("s", y): ("s", Xs.identity[y]) for y in Xs.objects})

    def rule(g, f):
        tg, tf = g[0], f[0]
        if tg == tf and tg in ("t", "s"):
            cat = Xt if tg == "t" else Xs
            h = cat.comp(g[1], f[1])
            return None if h is None else (tg, h)
        if tg == "s" and tf == "p":
            q = P.act_left(g[1], f[1])
            return None if q is None else ("p", q)
        if tg == "p" and tf == "t":
            q = P.act_right(g[1], f[1])
            return None if q is None else ("p", q)
        return None

    C = FinCat(objs, ends, ident, rule, name=f"coll({P.name})")
    fib = {"t": "0", "s": "1"}
    proj = Functor(C, two, {o: fib[o[0]] for o in objs},
                   {m: ("u" if m[0] == "p" else f"id_{fib[m[0]]}") for m in ends},
                   name="fib")
    res = Collage(C, proj, P)
    _COLLAGE_CACHE[id(P)] = (P, res)
    return res


def collage_functor(F):
    """The functor coll(X) -> coll(Y) induced by a cell F: X => Y."""
    CX, CY = collage(F.source), collage(F.target)
    Fs, Ft = F.vertical_src, F.vertical_tgt
    ob = {}
    for o in CX.cat.objects:
        ob[o] = ("t", Ft.ob[o[1]]) if o[0] == "t" else ("s", Fs.ob[o[1]])
    mor = {}
    for m in CX.cat.morphisms:
        tag, x = m
        mor[m] = ("t", Ft.mor[x]) if tag == "t" else ("s", Fs.mor[x]) if tag == "s" else ("p", F.map[x])
    return Functor(CX.cat, CY.cat, ob, mor, name=f"coll({F.name})")


def _untag(x):
    return x[1] if isinstance(x, tuple) and len(x) == 2 and x[0] in ("t", "s", "p") else x


def decollage(C, proj=None, name="", rename=None, boundaries=None):
    """Read a category over the walking arrow back as a profunctor from the
    fiber over 1 to the fiber over 0.  ``boundaries`` may supply ready-made
    fiber categories (already carrying the renamed identifiers)."""
    if isinstance(C, Collage):
        C, proj = C.cat, C.proj
    two = walking_arrow()
    if not same_category(proj.target, two) or validate_functor(proj):
        raise NotACollage("projection is not a functor to the walking arrow")
    rn = rename or _untag
    fib = {o: proj.ob[o] for o in C.objects}
    kind = {}
    for m in C.morphisms:
        s, d = C.ends(m)
        if fib[s] == "1" and fib[d] == "0":
            raise NotACollage(f"morphism {m!r} runs from the fiber over 1 to the fiber over 0")
        kind[m] = fib[s] + fib[d]

    def fiber(tag):
        objs = [o for o in C.objects if fib[o] == tag]
        mors = [m for m in C.morphisms if kind[m] == tag + tag]
        table = {}
        for f in mors:
            for g in C.out_of(C.dst(f)):
                if kind[g] == tag + tag:
                    table[(rn(g), rn(f))] = rn(C.comp(g, f))
        return FinCat([rn(o) for o in objs], {rn(m): (rn(C.src(m)), rn(C.dst(m))) for m in mors},
                      {rn(o): rn(C.identity[o]) for o in objs}, table,
                      name=f"{name or 'decoll'}_{tag}")

    if boundaries is None:
        Xs, Xt = fiber("1"), fiber("0")
    else:
        Xs, Xt = boundaries
    pro = {rn(m): (rn(C.src(m)), rn(C.dst(m))) for m in C.morphisms if kind[m] == "01"}
    left, right = {}, {}
    for m in C.morphisms:
        if kind[m] != "01":
            continue
        for h in C.out_of(C.dst(m)):
            left[(rn(h), rn(m))] = rn(C.comp(h, m))
        for f in C.into(C.src(m)):
            right[(rn(m), rn(f))] = rn(C.comp(m, f))
    return Profunctor(Xs, Xt, pro, left, right, name=name or f"decoll({C.name})")


# pullbacks in the category of profunctors and cells -------------------------------

class Pullback1:
    """A chosen pullback of cells f: B => A and g: C => A.  ``p1`` goes to
    B and ``p2`` to C; the boundaries are the chosen pullbacks ``pb_s`` and
    ``pb_t`` of the boundary functors, with identical identifiers."""
    __slots__ = ("pro", "p1", "p2", "f", "g", "pb_s", "pb_t", "pbc", "name_of")

    def __iter__(self):
        return iter((self.pro, self.p1, self.p2))

    def pair_proarrow(self, b, c):
        return self.name_of.get(self.pbc.pair_mor(("p", b), ("p", c)))

    def pair_obj_t(self, x, y):
        return self.pb_t.pair_obj(x, y)

    def pair_obj_s(self, x, y):
        return self.pb_s.pair_obj(x, y)


def pullback_cat1(f, g, name=""):
    if not same_profunctor(f.target, g.target):
        raise MismatchedTarget(f"{f!r} and {g!r} have different targets")
    pbc = canonical_pullback(collage_functor(f), collage_functor(g))
    pb_s = canonical_pullback(f.vertical_src, g.vertical_src)
    pb_t = canonical_pullback(f.vertical_tgt, g.vertical_tgt)
    P = pbc.cat
    L, R = pbc.p1, pbc.p2
    name_of = {}

    def nm(x, is_obj):
        l, r = L.ob[x] if is_obj else L.mor[x], R.ob[x] if is_obj else R.mor[x]
        tag = l[0]
        if tag == "p":
            if pbc.mode == "left":
                return x[1]
            if pbc.mode == "right":
                return x[1]
            return (l[1], r[1])
        pb = pb_t if tag == "t" else pb_s
        return pb.pair_obj(l[1], r[1]) if is_obj else pb.pair_mor(l[1], r[1])

    for o in P.objects:
        name_of[o] = nm(o, True)
    for m in P.morphisms:
        name_of[m] = nm(m, False)
    if pbc.mode == "left":
        D = f.source
    elif pbc.mode == "right":
        D = g.source
    else:
        D = decollage(P, _proj_of(pbc, f), name=name or f"pb({f.name},{g.name})",
                      rename=name_of.__getitem__, boundaries=(pb_s.cat, pb_t.cat))
    p1 = Cell(D, f.source, pb_s.p1, pb_t.p1,
              {name_of[m]: L.mor[m][1] for m in P.morphisms if L.mor[m][0] == "p"}, name="p1")
    p2 = Cell(D, g.source, pb_s.p2, pb_t.p2,
              {name_of[m]: R.mor[m][1] for m in P.morphisms if R.mor[m][0] == "p"}, name="p2")
    res = Pullback1()
    res.pro, res.p1, res.p2, res.f, res.g = D, p1, p2, f, g
    res.pb_s, res.pb_t, res.pbc, res.name_of = pb_s, pb_t, pbc, name_of
    return res


def _proj_of(pbc, f):
    from .fincat import compose_functors
    return compose_functors(collage(f.source).proj, pbc.p1)


def collage_square(top, left, right, bottom):
    from .fincat import CommutingSquare
    return CommutingSquare(collage_functor(top), collage_functor(left),
                           collage_functor(right), collage_functor(bottom))


def is_pullback_cat1(top, left, right, bottom):
    """Cells top: D => C, left: D => B, right: C => A, bottom: B => A."""
    from .fincat import is_pullback
    rep = is_pullback(collage_square(top, left, right, bottom))
    if rep.counterexample is not None:
        rep.counterexample = tuple(_untag(x) if i else x
                                   for i, x in enumerate(rep.counterexample))
    return rep


def induced_cell(pb1, left, top, name="u"):
    """The unique cell from a cone (left: Q => B, top: Q => C) into pb1."""
    u = induced_functor(pb1.pbc, collage_functor(left), collage_functor(top))
    Q = left.source
    nm = pb1.name_of
    Fs = Functor(Q.src_cat, pb1.pro.src_cat,
                 {x: nm[u.ob[("s", x)]] for x in Q.src_cat.objects},
                 {m: nm[u.mor[("s", m)]] for m in Q.src_cat.morphisms}, name=f"{name}_s")
    Ft = Functor(Q.tgt_cat, pb1.pro.tgt_cat,
                 {x: nm[u.ob[("t", x)]] for x in Q.tgt_cat.objects},
                 {m: nm[u.mor[("t", m)]] for m in Q.tgt_cat.morphisms}, name=f"{name}_t")
    return Cell(Q, pb1.pro, Fs, Ft, {p: nm[u.mor[("p", p)]] for p in Q.proarrows}, name=name)
