"""The free symmetric strict monoidal category monad S, materialized by arity.

An object of SX is a tuple of objects of X; a morphism is ``(sigma, comps)``
with ``comps[i]: x[i] -> y[sigma[i]]``.  Morphisms never change the length of
a list, so restricting to a finite set of lengths is a full subcategory that
is a union of connected components: nothing is truncated.

``total`` optionally restricts objects further by flattened size (the sum of
the sizes of the entries; plain objects have size 1).  Every functor in this
package preserves size, so that restriction is exact too.

The ``monad`` flag selects S or its permutation-free variant T.
"""

from functools import lru_cache
from itertools import chain, permutations, product

from .errors import ArityOverflow, IllDefined, ShapeMismatch
from .fincat import FinCat, Functor, compose_functors
from .probes import one
from .profunctor import (Cell, Profunctor, identity_functor, pro_compose,
                         pro_identity)


def compose_perm(t, s):
    """(t s)(i) = t(s(i))."""
    return tuple(t[i] for i in s)


def inverse_perm(s):
    out = [0] * len(s)
    for i, j in enumerate(s):
        out[j] = i
    return tuple(out)


def identity_perm(n):
    return tuple(range(n))


def perms(n, monad="S"):
    if monad == "T":
        return [identity_perm(n)]
    return list(permutations(range(n)))


def _arities(a):
    return frozenset(a)


def size_of(X, x):
    return X.meta.get("size", {}).get(x, 1)


_S_CACHE = {}


def _lists(X, n, total, count):
    """Length-n lists over X in lexicographic order, pruned by the size and
    count budgets."""
    cap_s = None if total is None else max(total, default=-1)
    cap_c = None if count is None else max(count, default=-1)
    atoms = [(x, size_of(X, x), len(x) if count is not None else 0) for x in X.objects]

    def go(prefix, sz, cnt):
        if len(prefix) == n:
            yield tuple(prefix), sz, cnt
            return
        for x, a, c in atoms:
            if cap_s is not None and sz + a > cap_s:
                continue
            if cap_c is not None and cnt + c > cap_c:
                continue
            prefix.append(x)
            yield from go(prefix, sz + a, cnt + c)
            prefix.pop()

    yield from go([], 0, 0)


def s_cat(X, arities, total=None, monad="S", count=None):
    """Exact full subcategory of SX on lists whose length is in ``arities``
    (and whose flattened size is in ``total`` when given).  ``count`` bounds
    the summed lengths of the entries when X is itself a list category."""
    arities = _arities(arities)
    total = None if total is None else frozenset(total)
    count = None if count is None else frozenset(count)
    key = (id(X), arities, total, monad, count)
    hit = _S_CACHE.get(key)
    if hit is not None and hit[0] is X:
        return hit[1]
    objs, sizes = [], {}
    for n in sorted(arities):
        for items, sz, cnt in _lists(X, n, total, count):
            if (total is None or sz in total) and (count is None or cnt in count):
                objs.append(items)
                sizes[items] = sz
    present = set(objs)
    ends = {}
    for x in objs:
        n = len(x)
        for sigma in perms(n, monad):
            for comps in product(*(X.out_of(xi) for xi in x)):
                y = [None] * n
                for i, g in enumerate(comps):
                    y[sigma[i]] = X.dst(g)
                y = tuple(y)
                if y not in present:
                    raise ShapeMismatch(f"morphism out of {x!r} leaves the materialized arities")
                ends[(sigma, comps)] = (x, y)
    ident = {x: (identity_perm(len(x)), tuple(X.identity[xi] for xi in x)) for x in objs}

    def rule(g, f):
        t, gs = g
        s, fs = f
        if len(gs) != len(fs):
            return None
        comps = []
        for i, fi in enumerate(fs):
            h = X.comp(gs[s[i]], fi)
            if h is None:
                return None
            comps.append(h)
        return (compose_perm(t, s), tuple(comps))

    nm = ("S" if monad == "S" else "T") + f"({X.name})"
    C = FinCat(objs, ends, ident, rule, name=nm,
               meta={"kind": monad, "base": X, "arities": arities, "total": total,
                     "count": count, "size": sizes})
    _S_CACHE[key] = (X, C)
    return C


def skeletal_S1(arities, monad="S"):
    """Finite sets and bijections, object n represented by the n-tuple of '*'."""
    return s_cat(one(), arities, monad=monad)


def s_bang(SX):
    """S! : SX -> S1, remembering only the permutation."""
    arities = SX.meta["arities"]
    S1 = skeletal_S1(arities, SX.meta["kind"])
    star = one().objects[0]
    sid = one().identity[star]
    return Functor(SX, S1, {x: (star,) * len(x) for x in SX.objects},
                   {m: (m[0], (sid,) * len(m[0])) for m in SX.morphisms}, name="S!")


def s_materialize(X, arities, monad="S"):
    SX = s_cat(X, arities, monad=monad)
    return SX, s_bang(SX)


def _check_into(C, x, what):
    if x not in C._out:
        raise ArityOverflow(f"{what} {x!r} is outside the materialized target")


def s_functor(F, arities=None, total=None, monad="S", source=None, target=None):
    """SF, sending lists pointwise."""
    source = source or s_cat(F.source, arities, total, monad)
    target = target or s_cat(F.target, arities if arities is not None
                             else source.meta["arities"], total, monad)
    ob = {}
    for x in source.objects:
        y = tuple(F.ob[xi] for xi in x)
        _check_into(target, y, "object")
        ob[x] = y
    mor = {m: (m[0], tuple(F.mor[g] for g in m[1])) for m in source.morphisms}
    return Functor(source, target, ob, mor, name=f"S({F.name})")


def s_pro(P, arities, total=None, monad="S"):
    """SP with proarrows (sigma, comps): y -|-> x, comps[i]: y[i] -|-> x[sigma[i]]."""
    ident = P.meta.get("identity_of")
    if ident is not None:
        return pro_identity(s_cat(ident, arities, total, monad))
    arities = _arities(arities)
    key = ("pro", id(P), arities, None if total is None else frozenset(total), monad)
    hit = _S_CACHE.get(key)
    if hit is not None and hit[0] is P:
        return hit[1]
    SXs = s_cat(P.src_cat, arities, total, monad)
    SXt = s_cat(P.tgt_cat, arities, total, monad)
    present = set(SXs.objects)
    ends = {}
    for y in SXt.objects:
        n = len(y)
        for sigma in perms(n, monad):
            for comps in product(*(P.leaving(yi) for yi in y)):
                x = [None] * n
                for i, g in enumerate(comps):
                    x[sigma[i]] = P.to(g)
                x = tuple(x)
                if x in present:
                    ends[(sigma, comps)] = (y, x)

    def left(h, p):
        t, hs = h
        s, gs = p
        if len(hs) != len(gs):
            return None
        out = []
        for i, g in enumerate(gs):
            q = P.act_left(hs[s[i]], g)
            if q is None:
                return None
            out.append(q)
        return (compose_perm(t, s), tuple(out))

    def right(p, f):
        s, gs = p
        r, fs = f
        if len(gs) != len(fs):
            return None
        out = []
        for i, fi in enumerate(fs):
            q = P.act_right(gs[r[i]], fi)
            if q is None:
                return None
            out.append(q)
        return (compose_perm(s, r), tuple(out))

    SP = Profunctor(SXs, SXt, ends, left, right,
                    name=("S" if monad == "S" else "T") + f"({P.name})",
                    meta={"kind": monad, "base": P, "arities": arities})
    _S_CACHE[key] = (P, SP)
    return SP


def s_cell(F, arities, total=None, monad="S", source=None, target=None):
    source = source or s_pro(F.source, arities, total, monad)
    target = target or s_pro(F.target, arities, total, monad)
    Fs = s_functor(F.vertical_src, source=source.src_cat, target=target.src_cat)
    Ft = s_functor(F.vertical_tgt, source=source.tgt_cat, target=target.tgt_cat)
    out = {}
    for p in source.proarrows:
        q = (p[0], tuple(F.map[g] for g in p[1]))
        if not target.has(q):
            raise ArityOverflow(f"proarrow {q!r} is outside the materialized target")
        out[p] = q
    return Cell(source, target, Fs, Ft, out, name=f"S({F.name})")


# unit and multiplication ---------------------------------------------------------

def eta_cat(X, target=None, monad="S"):
    target = target or s_cat(X, {1}, monad=monad)
    ob = {}
    for x in X.objects:
        _check_into(target, (x,), "object")
        ob[x] = (x,)
    return Functor(X, target, ob, {f: ((0,), (f,)) for f in X.morphisms}, name="eta")


def eta_pro(P, target=None, monad="S"):
    target = target or s_pro(P, {1}, monad=monad)
    Fs = eta_cat(P.src_cat, target.src_cat, monad)
    Ft = eta_cat(P.tgt_cat, target.tgt_cat, monad)
    return Cell(P, target, Fs, Ft, {g: ((0,), (g,)) for g in P.proarrows}, name="eta")


@lru_cache(maxsize=None)
def _flatten_perm(sigma, inner_perms):
    """Block permutation: block i goes to block sigma[i], permuted
    internally by inner_perms[i]."""
    n = len(sigma)
    src_lengths = [len(p) for p in inner_perms]
    tgt_lengths = [0] * n
    for i in range(n):
        tgt_lengths[sigma[i]] = src_lengths[i]
    src_off, tgt_off = [0] * n, [0] * n
    for i in range(1, n):
        src_off[i] = src_off[i - 1] + src_lengths[i - 1]
        tgt_off[i] = tgt_off[i - 1] + tgt_lengths[i - 1]
    flat = [0] * sum(src_lengths)
    for i in range(n):
        for k in range(src_lengths[i]):
            flat[src_off[i] + k] = tgt_off[sigma[i]] + inner_perms[i][k]
    return tuple(flat)


def flatten_mor(m):
    sigma, comps = m
    perm = _flatten_perm(sigma, tuple([c[0] for c in comps]))
    return (perm, tuple(chain.from_iterable([c[1] for c in comps])))


def flatten_obj(x):
    return tuple(e for inner in x for e in inner)


def mu_functor(SSX, target):
    """Flatten lists of lists: SSX -> target (a materialization of SX)."""
    ob = {}
    for x in SSX.objects:
        y = flatten_obj(x)
        _check_into(target, y, "flattened object")
        ob[x] = y
    return Functor(SSX, target, ob, {m: flatten_mor(m) for m in SSX.morphisms}, name="mu")


def mu_cat(X, outer, inner, total=None, monad="S", target=None):
    """mu_X : S(S X|inner)|outer -> SX on all achievable flattened lengths."""
    SX_in = s_cat(X, inner, monad=monad)
    SSX = s_cat(SX_in, outer, total, monad)
    if target is None:
        lengths = {len(flatten_obj(x)) for x in SSX.objects}
        target = s_cat(X, lengths, total, monad)
    return mu_functor(SSX, target)


def mu_pro(SSP, target):
    """Flatten on proarrows: SSP -> target (a materialization of SP)."""
    SSs, SSt = SSP.src_cat, SSP.tgt_cat
    Fs = mu_functor(SSs, target.src_cat)
    Ft = mu_functor(SSt, target.tgt_cat)
    out = {}
    for p in SSP.proarrows:
        q = flatten_mor(p)
        if not target.has(q):
            raise ArityOverflow(f"flattened proarrow {q!r} outside the target")
        out[p] = q
    return Cell(SSP, target, Fs, Ft, out, name="mu")


# comparison cells of the double homomorphism ---------------------------------------

def m_comp(Y, X, arities, total=None, monad="S", check=True):
    """S Y (x) S X => S(Y (x) X):
    [(tau, k) (x) (sigma, g)] |-> (sigma tau, <[k_i (x) g_tau(i)]>)."""
    SY, SX = s_pro(Y, arities, total, monad), s_pro(X, arities, total, monad)
    L, lw = pro_compose(SY, SX)
    YX, w = pro_compose(Y, X)
    R = s_pro(YX, arities, total, monad)
    out = {}
    items = lw.class_of.items() if check else ((c, c) for c in lw.representative)
    for (k, g), c in items:
        tau, ks = k
        sigma, gs = g
        comps = tuple(w.class_of[(ks[i], gs[tau[i]])] for i in range(len(ks)))
        q = (compose_perm(sigma, tau), comps)
        if not R.has(q):
            raise IllDefined(f"image {q!r} is not a proarrow of S(Y*X)")
        prev = out.setdefault(c, q)
        if prev != q:
            raise IllDefined(f"m depends on the representative of {c!r}")
    return Cell(L, R, identity_functor(L.src_cat), identity_functor(L.tgt_cat), out,
                name="m")


def e_comp(X, arities, total=None, monad="S"):
    """I_{SX} => S I_X.  With proarrows of I named by morphisms the two
    profunctors share identifiers and this cell is the identity."""
    SX = s_cat(X, arities, total, monad)
    IS = pro_identity(SX)
    SI = s_pro(pro_identity(X), arities, total, monad)
    return Cell(IS, SI, identity_functor(SX), identity_functor(SX),
                {p: (p[0], tuple(p[1])) for p in IS.proarrows}, name="e")


# monad laws ---------------------------------------------------------------------

def _first_diff(F, G):
    """The first object or morphism on which F and G differ, else None."""
    for x in F.source.objects:
        if F.ob[x] != G.ob[x]:
            return ("object", x, F.ob[x], G.ob[x])
    for m in F.source.morphisms:
        if F.mor[m] != G.mor[m]:
            return ("morphism", m, F.mor[m], G.mor[m])
    return None


def monad_law_failures(X, arities, monad="S", functors=()):
    """Unit and associativity laws as exact table equalities on the
    materialization at ``arities``; naturality of eta and mu along each
    functor in ``functors``.  Returns [(law, witness)] for failed laws."""
    A = frozenset(arities)
    SX = s_cat(X, A, monad=monad)
    SX1 = s_cat(X, {1}, monad=monad)
    SSX = s_cat(SX, A, A, monad)
    out = []

    def law(name, F, G):
        d = _first_diff(F, G)
        if d is not None:
            out.append((name, d))

    # mu . eta_S = id
    SSX1 = s_cat(SX, {1}, monad=monad)
    law("mu.etaS", compose_functors(mu_functor(SSX1, SX), eta_cat(SX, SSX1, monad)),
        identity_functor(SX))
    # mu . S eta = id
    SSXe = s_cat(SX1, A, monad=monad)
    Se = s_functor(eta_cat(X, SX1, monad), source=SX, target=SSXe)
    law("mu.Seta", compose_functors(mu_functor(SSXe, SX), Se), identity_functor(SX))
    # mu . S mu = mu . mu_S
    SSSX = s_cat(SSX, A, A, monad, count=A)
    mu = mu_functor(SSX, SX)
    law("mu.Smu=mu.muS",
        compose_functors(mu, s_functor(mu, source=SSSX, target=SSX)),
        compose_functors(mu, mu_functor(SSSX, SSX)))
    for F in functors:
        if F.source is not X:
            continue
        Y = F.target
        SY1 = s_cat(Y, {1}, monad=monad)
        law(f"eta-natural[{F.name}]",
            compose_functors(s_functor(F, source=SX1, target=SY1), eta_cat(X, SX1, monad)),
            compose_functors(eta_cat(Y, SY1, monad), F))
        SY = s_cat(Y, A, monad=monad)
        SSY = s_cat(SY, A, A, monad)
        SF = s_functor(F, source=SX, target=SY)
        law(f"mu-natural[{F.name}]",
            compose_functors(SF, mu),
            compose_functors(mu_functor(SSY, SY), s_functor(SF, source=SSX, target=SSY)))
    return out
