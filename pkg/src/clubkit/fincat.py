"""Finite categories, functors, natural transformations and pullbacks.

A category is a table: objects, morphisms with their endpoints, an identity
map and a composition rule.  The rule is either an explicit dict keyed by
``(g, f)`` (meaning ``g o f``) or a callable that computes the composite on
demand; large materialized categories use the callable form and expose the
dict through ``table()``.
"""

from dataclasses import dataclass
from typing import Any, Optional

from .errors import (Diagnostic, MismatchedTarget, NoLift, NotCommuting,
                     NotInduced, ShapeMismatch)
from .ids import least


class FinCat:
    __slots__ = ("name", "objects", "_ends", "identity", "_rule", "_table",
                 "_out", "_into", "_hom", "meta")

    def __init__(self, objects, ends, identity, compose, name="", meta=None):
        self.name = name
        self.objects = tuple(objects)
        self._ends = dict(ends)
        self.identity = dict(identity)
        if callable(compose):
            self._rule = compose
            self._table = None
        else:
            self._rule = None
            self._table = dict(compose)
        self.meta = dict(meta or {})
        out, into = {}, {}
        for x in self.objects:
            out[x] = []
            into[x] = []
        for m, (s, d) in self._ends.items():
            out.setdefault(s, []).append(m)
            into.setdefault(d, []).append(m)
        self._out, self._into, self._hom = out, into, None

    def __repr__(self):
        return f"FinCat({self.name or '?'}: {len(self.objects)} obj, {len(self._ends)} mor)"

    @property
    def morphisms(self):
        return tuple(self._ends)

    def ends(self, m):
        return self._ends[m]

    def src(self, m):
        return self._ends[m][0]

    def dst(self, m):
        return self._ends[m][1]

    def has_morphism(self, m):
        return m in self._ends

    def hom(self, x, y):
        if self._hom is None:
            hom = {}
            for m, e in self._ends.items():
                hom.setdefault(e, []).append(m)
            self._hom = hom
        return self._hom.get((x, y), ())

    def out_of(self, x):
        return self._out.get(x, ())

    def into(self, y):
        return self._into.get(y, ())

    def comp(self, g, f):
        """``g o f`` or None when undefined."""
        if self._table is not None:
            return self._table.get((g, f))
        return self._rule(g, f)

    def composable(self):
        for f in self._ends:
            for g in self._out.get(self._ends[f][1], ()):
                yield g, f

    def table(self):
        if self._table is None:
            self._table = {(g, f): self._rule(g, f) for g, f in self.composable()}
        return self._table

    def is_identity(self, m):
        s, d = self._ends[m]
        return s == d and self.identity.get(s) == m

    def inverse(self, m):
        s, d = self._ends[m]
        for g in self.hom(d, s):
            if self.comp(g, m) == self.identity[s] and self.comp(m, g) == self.identity[d]:
                return g
        return None

    def size(self):
        return len(self.objects), len(self._ends)


def make_category(objects, arrows=(), composites=(), identities=None, name=""):
    """Build a category from generating data.

    ``arrows`` lists non-identity morphisms as ``(id, src, dst)`` and
    ``composites`` lists ``(g, f, h)`` meaning ``g o f = h``.  Identities
    default to ``"id_<obj>"`` and their composites are filled in.
    """
    objects = list(objects)
    identity = dict(identities or {})
    for x in objects:
        identity.setdefault(x, f"id_{x}")
    ends = {identity[x]: (x, x) for x in objects}
    for m, s, d in arrows:
        ends[m] = (s, d)
    table = {}
    for m, (s, d) in ends.items():
        if s in identity:
            table[(m, identity[s])] = m
        if d in identity:
            table[(identity[d], m)] = m
    for g, f, h in composites:
        table[(g, f)] = h
    return FinCat(objects, ends, identity, table, name=name)


def validate_category(C):
    """Every violated law, one diagnostic each; empty when C is a category."""
    out = []
    objs = set(C.objects)
    for m in C.morphisms:
        s, d = C.ends(m)
        if s not in objs or d not in objs:
            out.append(Diagnostic("DanglingEndpoint", (m,)))
    for x in C.objects:
        i = C.identity.get(x)
        if i is None or not C.has_morphism(i) or C.ends(i) != (x, x):
            out.append(Diagnostic("BadIdentity", (x,)))
    if out:
        return out
    if C._table is not None:
        for (g, f) in C._table:
            if not (C.has_morphism(g) and C.has_morphism(f)) or C.dst(f) != C.src(g):
                out.append(Diagnostic("SpuriousComposite", (g, f)))
    bad = set()
    for g, f in C.composable():
        h = C.comp(g, f)
        if h is None:
            out.append(Diagnostic("MissingComposite", (g, f)))
            bad.add((g, f))
        elif not C.has_morphism(h) or C.ends(h) != (C.src(f), C.dst(g)):
            out.append(Diagnostic("MistypedComposite", (g, f, h)))
            bad.add((g, f))
    for m in C.morphisms:
        s, d = C.ends(m)
        if (m, C.identity[s]) not in bad and C.comp(m, C.identity[s]) != m:
            out.append(Diagnostic("RightUnit", (m,)))
        if (C.identity[d], m) not in bad and C.comp(C.identity[d], m) != m:
            out.append(Diagnostic("LeftUnit", (m,)))
    for g, f in C.composable():
        if (g, f) in bad:
            continue
        gf = C.comp(g, f)
        for h in C.out_of(C.dst(g)):
            if (h, g) in bad or (h, gf) in bad:
                continue
            hg = C.comp(h, g)
            if (hg, f) in bad:
                continue
            if C.comp(h, gf) != C.comp(hg, f):
                out.append(Diagnostic("Associativity", (h, g, f)))
    return out


def same_category(C, D):
    if C is D:
        return True
    return (C.objects == D.objects and C._ends == D._ends
            and C.identity == D.identity)


def equal_tables(C, D):
    """Identifier-level equality including composition."""
    return same_category(C, D) and (C is D or C.table() == D.table())


class Functor:
    __slots__ = ("source", "target", "ob", "mor", "name")

    def __init__(self, source, target, on_objects, on_morphisms, name=""):
        self.source = source
        self.target = target
        self.ob = on_objects
        self.mor = on_morphisms
        self.name = name

    def __repr__(self):
        return f"Functor({self.name or '?'}: {self.source.name} -> {self.target.name})"

    def is_identity(self):
        if not same_category(self.source, self.target):
            return False
        return (all(self.ob[x] == x for x in self.source.objects)
                and all(self.mor[m] == m for m in self.source.morphisms))


def identity_functor(C):
    return Functor(C, C, {x: x for x in C.objects}, {m: m for m in C.morphisms},
                   name=f"id_{C.name}")


def compose_functors(G, F):
    """G o F."""
    if not same_category(F.target, G.source):
        raise ShapeMismatch(f"cannot compose {G!r} after {F!r}")
    return Functor(F.source, G.target,
                   {x: G.ob[F.ob[x]] for x in F.source.objects},
                   {m: G.mor[F.mor[m]] for m in F.source.morphisms},
                   name=f"{G.name}.{F.name}")


def functor_equal(F, G):
    return (same_category(F.source, G.source) and same_category(F.target, G.target)
            and all(F.ob[x] == G.ob[x] for x in F.source.objects)
            and all(F.mor[m] == G.mor[m] for m in F.source.morphisms))


def validate_functor(F):
    out = []
    S, T = F.source, F.target
    objs = set(T.objects)
    for x in S.objects:
        if F.ob.get(x) not in objs:
            out.append(Diagnostic("UnmappedObject", (x,)))
    if out:
        return out
    for m in S.morphisms:
        fm = F.mor.get(m)
        if fm is None or not T.has_morphism(fm):
            out.append(Diagnostic("UnmappedMorphism", (m,)))
        elif T.ends(fm) != (F.ob[S.src(m)], F.ob[S.dst(m)]):
            out.append(Diagnostic("MistypedImage", (m,)))
    if out:
        return out
    for x in S.objects:
        if F.mor[S.identity[x]] != T.identity[F.ob[x]]:
            out.append(Diagnostic("IdentityNotPreserved", (x,)))
    for g, f in S.composable():
        if F.mor[S.comp(g, f)] != T.comp(F.mor[g], F.mor[f]):
            out.append(Diagnostic("CompositeNotPreserved", (g, f)))
    return out


_TERMINAL = []


def terminal_category():
    """The terminal category, built once so identifiers and identity agree."""
    if not _TERMINAL:
        _TERMINAL.append(make_category(["*"], name="1"))
    return _TERMINAL[0]


def bang(X, one=None):
    one = one or terminal_category()
    star = one.objects[0]
    return Functor(X, one, {x: star for x in X.objects},
                   {m: one.identity[star] for m in X.morphisms}, name="!")


def full_subcategory(C, keep, name=""):
    keep = set(keep)
    objs = [x for x in C.objects if x in keep]
    ends = {m: e for m, e in C._ends.items() if e[0] in keep and e[1] in keep}
    return FinCat(objs, ends, {x: C.identity[x] for x in objs}, C.comp,
                  name=name or C.name, meta=C.meta)


def inclusion(sub, C):
    return Functor(sub, C, {x: x for x in sub.objects}, {m: m for m in sub.morphisms},
                   name="incl")


@dataclass
class Verdict:
    ok: bool
    witness: Any = None

    def __bool__(self):
        return self.ok


class NatTrans:
    __slots__ = ("source", "target", "components", "name")

    def __init__(self, source, target, components, name=""):
        if not (same_category(source.source, target.source)
                and same_category(source.target, target.target)):
            raise ShapeMismatch("natural transformation between unparallel functors")
        self.source = source
        self.target = target
        self.components = components
        self.name = name


def check_naturality(alpha):
    """Verdict whose witness is the first morphism whose square fails."""
    F, G = alpha.source, alpha.target
    X, Y = F.source, F.target
    for x in X.objects:
        a = alpha.components.get(x)
        if a is None or not Y.has_morphism(a) or Y.ends(a) != (F.ob[x], G.ob[x]):
            return Verdict(False, x)
    for m in X.morphisms:
        s, d = X.ends(m)
        if Y.comp(G.mor[m], alpha.components[s]) != Y.comp(alpha.components[d], F.mor[m]):
            return Verdict(False, m)
    return Verdict(True)


def whisker_left(alpha, H):
    """alpha H for a functor H into the common domain."""
    F, G = alpha.source, alpha.target
    return NatTrans(compose_functors(F, H), compose_functors(G, H),
                    {x: alpha.components[H.ob[x]] for x in H.source.objects})


def whisker_right(K, alpha):
    """K alpha for a functor K out of the common codomain."""
    F, G = alpha.source, alpha.target
    return NatTrans(compose_functors(K, F), compose_functors(K, G),
                    {x: K.mor[c] for x, c in alpha.components.items()})


whisker_nat = whisker_left


def is_groupoid(C):
    return all(C.inverse(m) is not None for m in C.morphisms)


class CommutingSquare:
    """top: D->C, left: D->B, right: C->A, bottom: B->A."""
    __slots__ = ("top", "left", "right", "bottom", "name")

    def __init__(self, top, left, right, bottom, name=""):
        if not (same_category(top.source, left.source)
                and same_category(top.target, right.source)
                and same_category(left.target, bottom.source)
                and same_category(right.target, bottom.target)):
            raise ShapeMismatch("square edges do not match up")
        self.top, self.left, self.right, self.bottom = top, left, right, bottom
        self.name = name

    def failure(self):
        D = self.top.source
        for x in D.objects:
            if self.right.ob[self.top.ob[x]] != self.bottom.ob[self.left.ob[x]]:
                return x
        for m in D.morphisms:
            if self.right.mor[self.top.mor[m]] != self.bottom.mor[self.left.mor[m]]:
                return m
        return None

    def commutes(self):
        return self.failure() is None


class Pullback:
    """A chosen pullback of ``f: B->A`` and ``g: C->A``.

    ``mode`` is ``"pairs"`` in general; ``"left"`` when g is an identity (so
    the apex is B itself) and ``"right"`` when f is an identity.
    """
    __slots__ = ("cat", "p1", "p2", "f", "g", "mode")

    def __init__(self, cat, p1, p2, f, g, mode):
        self.cat, self.p1, self.p2, self.f, self.g, self.mode = cat, p1, p2, f, g, mode

    def __iter__(self):
        return iter((self.cat, self.p1, self.p2))

    def pair_obj(self, b, c):
        if self.f.ob[b] != self.g.ob[c]:
            return None
        if self.mode == "left":
            return b
        if self.mode == "right":
            return c
        return (b, c)

    def pair_mor(self, beta, gamma):
        if self.f.mor[beta] != self.g.mor[gamma]:
            return None
        if self.mode == "left":
            return beta
        if self.mode == "right":
            return gamma
        return (beta, gamma)


def canonical_pullback(f, g, name=""):
    if not same_category(f.target, g.target):
        raise MismatchedTarget(f"{f!r} and {g!r} have different codomains")
    B, C = f.source, g.source
    if g.is_identity():
        return Pullback(B, identity_functor(B), f, f, g, "left")
    if f.is_identity():
        return Pullback(C, g, identity_functor(C), f, g, "right")
    cobj, cmor = {}, {}
    for c in C.objects:
        cobj.setdefault(g.ob[c], []).append(c)
    for m in C.morphisms:
        cmor.setdefault(g.mor[m], []).append(m)
    objs = [(b, c) for b in B.objects for c in cobj.get(f.ob[b], ())]
    ends = {}
    for beta in B.morphisms:
        for gamma in cmor.get(f.mor[beta], ()):
            ends[(beta, gamma)] = ((B.src(beta), C.src(gamma)), (B.dst(beta), C.dst(gamma)))
    identity = {(b, c): (B.identity[b], C.identity[c]) for b, c in objs}

    def rule(q, p):
        h1, h2 = B.comp(q[0], p[0]), C.comp(q[1], p[1])
        if h1 is None or h2 is None:
            return None
        return (h1, h2)

    P = FinCat(objs, ends, identity, rule, name=name or f"{B.name}x{C.name}")
    p1 = Functor(P, B, {o: o[0] for o in objs}, {m: m[0] for m in ends}, name="p1")
    p2 = Functor(P, C, {o: o[1] for o in objs}, {m: m[1] for m in ends}, name="p2")
    return Pullback(P, p1, p2, f, g, "pairs")


def induced_functor(pb, left, top, name="u"):
    """The functor from a cone (left: D->B, top: D->C) into a chosen pullback."""
    D = left.source
    ob, mor = {}, {}
    for x in D.objects:
        o = pb.pair_obj(left.ob[x], top.ob[x])
        if o is None:
            raise NotInduced(f"cone does not commute at object {x!r}")
        ob[x] = o
    for m in D.morphisms:
        a = pb.pair_mor(left.mor[m], top.mor[m])
        if a is None:
            raise NotInduced(f"cone does not commute at morphism {m!r}")
        mor[m] = a
    return Functor(D, pb.cat, ob, mor, name=name)


@dataclass
class ComparisonReport:
    verdict: bool
    comparison: Optional[Functor] = None
    counterexample: Optional[tuple] = None

    def __bool__(self):
        return self.verdict


def bijectivity(F):
    """None when F is bijective on objects and morphisms, else a counterexample."""
    for kind, dom, cod, fn in (("object", F.source.objects, F.target.objects, F.ob),
                               ("morphism", F.source.morphisms, F.target.morphisms, F.mor)):
        seen = {}
        for x in dom:
            y = fn[x]
            if y in seen:
                return (f"{kind}-not-injective", seen[y], x)
            seen[y] = x
        if len(seen) != len(cod):
            missing = [y for y in cod if y not in seen]
            return (f"{kind}-not-hit", least(missing))
    return None


def is_pullback(sq):
    bad = sq.failure()
    if bad is not None:
        raise NotCommuting(f"square {sq.name!r} fails to commute at {bad!r}")
    pb = canonical_pullback(sq.bottom, sq.right)
    u = induced_functor(pb, sq.left, sq.top)
    cx = bijectivity(u)
    return ComparisonReport(cx is None, u, cx)


def inverse_functor(F):
    """Inverse of a bijective functor."""
    if bijectivity(F) is not None:
        raise ShapeMismatch("functor is not invertible")
    return Functor(F.target, F.source, {y: x for x, y in F.ob.items()},
                   {n: m for m, n in F.mor.items()}, name=f"{F.name}^-1")


def is_cocartesian(F, m):
    """Brute force: every g out of src(m) whose image factors through F(m)
    factors uniquely through m over the given factorization."""
    X, A = F.source, F.target
    b, b1 = X.ends(m)
    phi = F.mor[m]
    for g in X.out_of(b):
        b2 = X.dst(g)
        for psi in A.hom(F.ob[b1], F.ob[b2]):
            if A.comp(psi, phi) != F.mor[g]:
                continue
            n = sum(1 for h in X.hom(b1, b2) if F.mor[h] == psi and X.comp(h, m) == g)
            if n != 1:
                return False
    return True


def cocartesian_lifts(F, phi, b):
    X = F.source
    return [m for m in X.out_of(b) if F.mor[m] == phi and is_cocartesian(F, m)]


def cocartesian_lift(F, phi, b):
    if F.ob[b] != F.target.src(phi):
        raise ShapeMismatch(f"{b!r} does not lie over the source of {phi!r}")
    lifts = cocartesian_lifts(F, phi, b)
    if not lifts:
        raise NoLift(f"no cocartesian lift of {phi!r} at {b!r}")
    return least(lifts)


def is_opfibration(F):
    X, A = F.source, F.target
    for b in X.objects:
        for phi in A.out_of(F.ob[b]):
            if not cocartesian_lifts(F, phi, b):
                return False
    return True


def rename_category(C, f, name=None):
    """Apply an injective renaming of identifiers to objects and morphisms."""
    objs = [f(x) for x in C.objects]
    ends = {f(m): (f(s), f(d)) for m, (s, d) in C._ends.items()}
    ident = {f(x): f(i) for x, i in C.identity.items()}
    table = {(f(g), f(k)): f(h) for (g, k), h in C.table().items() if h is not None}
    return FinCat(objs, ends, ident, table, name=C.name if name is None else name)
