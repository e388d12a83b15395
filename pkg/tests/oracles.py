"""Brute-force oracles.  These only read categories through objects,
morphisms, ends and comp, and never call the constructions they check."""

from itertools import product

from clubkit.fincat import make_category


# small categories ----------------------------------------------------------------

def three():
    """0 -> 1 -> 2 with the composite."""
    return make_category(["0", "1", "2"], [("a", "0", "1"), ("b", "1", "2"), ("ba", "0", "2")],
                         [("b", "a", "ba")], name="3")


def span():
    return make_category(["l", "c", "r"], [("p", "c", "l"), ("q", "c", "r")], name="span")


def cospan():
    return make_category(["l", "c", "r"], [("p", "l", "c"), ("q", "r", "c")], name="cospan")


def idempotent():
    return make_category(["*"], [("e", "*", "*")], [("e", "e", "e")], name="E")


def z2():
    return make_category(["*"], [("s", "*", "*")], [("s", "s", "id_*")], name="Z2")


def arrow_plus_point():
    return make_category(["0", "1", "2"], [("u", "0", "1")], name="2+1")


def discrete3():
    return make_category(["x", "y", "z"], name="D3")


# laws ----------------------------------------------------------------------------

def category_law_violations(C):
    """Number of failed laws, counted from scratch over all triples."""
    objs = set(C.objects)
    mors = list(C.morphisms)
    bad = 0
    for m in mors:
        s, d = C.ends(m)
        if s not in objs or d not in objs:
            bad += 1
    if bad:
        return bad
    for x in C.objects:
        i = C.identity.get(x)
        if i not in C._ends or C.ends(i) != (x, x):
            bad += 1
    if bad:
        return bad
    for g in mors:
        for f in mors:
            if C.ends(f)[1] != C.ends(g)[0]:
                continue
            h = C.comp(g, f)
            if h is None or h not in C._ends or C.ends(h) != (C.ends(f)[0], C.ends(g)[1]):
                bad += 1
    if bad:
        return bad
    for m in mors:
        s, d = C.ends(m)
        bad += C.comp(m, C.identity[s]) != m
        bad += C.comp(C.identity[d], m) != m
    for h, g, f in product(mors, repeat=3):
        if C.ends(f)[1] == C.ends(g)[0] and C.ends(g)[1] == C.ends(h)[0]:
            bad += C.comp(h, C.comp(g, f)) != C.comp(C.comp(h, g), f)
    return bad


def profunctor_law_violations(P):
    Xs, Xt = P.src_cat, P.tgt_cat
    ends = {p: P.ends(p) for p in P.proarrows}
    bad = 0
    for p, (a, b) in ends.items():
        if a not in Xt._out or b not in Xs._out:
            bad += 1
    if bad:
        return bad
    lt, rt = P.left_table(), P.right_table()

    def L(h, p):
        q = lt.get((h, p))
        if q is None or q not in ends or ends[q] != (ends[p][0], Xs.dst(h)):
            return "bad"
        return q

    def R(p, f):
        q = rt.get((p, f))
        if q is None or q not in ends or ends[q] != (Xt.src(f), ends[p][1]):
            return "bad"
        return q

    for p, (a, b) in ends.items():
        for h in Xs.morphisms:
            if Xs.src(h) == b:
                bad += L(h, p) == "bad"
        for f in Xt.morphisms:
            if Xt.dst(f) == a:
                bad += R(p, f) == "bad"
    if bad:
        return bad
    for p, (a, b) in ends.items():
        bad += L(Xs.identity[b], p) != p
        bad += R(p, Xt.identity[a]) != p
        for h in Xs.out_of(b):
            for h2 in Xs.out_of(Xs.dst(h)):
                bad += L(h2, L(h, p)) != L(Xs.comp(h2, h), p)
            for f in Xt.into(a):
                bad += R(L(h, p), f) != L(h, R(p, f))
        for f in Xt.into(a):
            for f2 in Xt.into(Xt.src(f)):
                bad += R(R(p, f), f2) != R(p, Xt.comp(f, f2))
    return bad


# functors and pullbacks ---------------------------------------------------------------

def functors(X, Y):
    """Every functor X -> Y as (object map, morphism map)."""
    out = []
    xo, mors = list(X.objects), list(X.morphisms)
    for images in product(Y.objects, repeat=len(xo)):
        ob = dict(zip(xo, images))
        choices = []
        for m in mors:
            s, d = X.ends(m)
            if X.identity[s] == m:
                choices.append([Y.identity[ob[s]]])
            else:
                choices.append([n for n in Y.morphisms if Y.ends(n) == (ob[s], ob[d])])
        for pick in product(*choices):
            mor = dict(zip(mors, pick))
            if all(X.ends(f)[1] != X.ends(g)[0] or mor[X.comp(g, f)] == Y.comp(mor[g], mor[f])
                   for g in mors for f in mors):
                out.append((ob, mor))
    return out


def _after(F, t):
    ob, mor = t
    return (tuple(sorted((k, F.ob[v]) for k, v in ob.items())),
            tuple(sorted((k, F.mor[v]) for k, v in mor.items())))


def pullback_oracle(top, left, right, bottom, tests):
    """Universal property against every test category: functors T -> D
    correspond bijectively to commuting pairs (T -> B, T -> C)."""
    D, B, C = left.source, left.target, top.target
    for T in tests:
        cones = set()
        for b in functors(T, B):
            fb = _after(bottom, b)
            for c in functors(T, C):
                if _after(right, c) == fb:
                    cones.add((_key(b), _key(c)))
        images = [(_after(left, d), _after(top, d)) for d in functors(T, D)]
        if len(set(images)) != len(images) or set(images) != cones:
            return False
    return True


def _key(t):
    ob, mor = t
    return tuple(sorted(ob.items())), tuple(sorted(mor.items()))


def cocartesian_oracle(F, m):
    """m: b -> b2 is cocartesian: every g: b -> b3 with F g = psi . F m
    factors uniquely as g = h . m with F h = psi."""
    X, A = F.source, F.target
    b, b2 = X.ends(m)
    for g in X.morphisms:
        if X.ends(g)[0] != b:
            continue
        b3 = X.ends(g)[1]
        for psi in A.morphisms:
            if A.ends(psi) != (F.ob[b2], F.ob[b3]) or A.comp(psi, F.mor[m]) != F.mor[g]:
                continue
            hs = [h for h in X.morphisms if X.ends(h) == (b2, b3)
                  and F.mor[h] == psi and X.comp(h, m) == g]
            if len(hs) != 1:
                return False
    return True


# coends -------------------------------------------------------------------------

def coend_closure(Y, X):
    """Classes of raw pairs under the equivalence generated by
    (k, g.f) ~ (f.k, g), by naive fixpoint merging."""
    B = X.tgt_cat
    raw = [(k, g) for g in X.proarrows for k in Y.proarrows if Y.to(k) == X.frm(g)]
    cls = {r: frozenset([r]) for r in raw}
    edges = []
    for g in X.proarrows:
        for f in B.morphisms:
            if B.ends(f)[1] != X.frm(g):
                continue
            for k in Y.proarrows:
                if Y.to(k) == B.ends(f)[0]:
                    edges.append(((k, X.act_right(g, f)), (Y.act_left(f, k), g)))
    changed = True
    while changed:
        changed = False
        for a, b in edges:
            if cls[a] is not cls[b] and cls[a] != cls[b]:
                merged = cls[a] | cls[b]
                for r in merged:
                    cls[r] = merged
                changed = True
    return {frozenset(c) for c in cls.values()}


# list substitution ---------------------------------------------------------------

def substitution_counts(c, d):
    """Objects and morphisms of c (x) d counted by arity, by direct
    enumeration of substitutions of d-operations into c-operations."""
    objs, mors = {}, {}
    dob = list(d.base.objects)
    for u in c.base.objects:
        n = c.arity[u]
        for vs in product(dob, repeat=n):
            k = sum(d.arity[v] for v in vs)
            objs[k] = objs.get(k, 0) + 1
    for h in c.base.morphisms:
        u = c.base.ends(h)[0]
        n, sigma = c.arity[u], c.perm[h]
        for vs in product(dob, repeat=n):
            k = sum(d.arity[v] for v in vs)
            for ws in product(dob, repeat=n):
                count = 1
                for i in range(n):
                    count *= len([g for g in d.base.morphisms
                                  if d.base.ends(g) == (vs[i], ws[sigma[i]])])
                if count:
                    mors[k] = mors.get(k, 0) + count
    return objs, mors
