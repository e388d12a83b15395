"""Acceptance criteria 1-9.  Each test prints one PASS/FAIL line and fails
when its check or its time budget fails."""

import os
import random
import subprocess
import sys
import time
from itertools import product

import pytest

from clubkit.clubs import (associator0, club_tensor, clubalt_suite, collection_iso_failure,
                           eta_data, evaluate0, left_unitor, mu_data, reconstruct_data,
                           right_unitor, roundtrip_iso, s_data, same_collection,
                           sample_collections, tensor_corpus)
from clubkit.dblclubs import (hcoll_tensor, hps1_check, hps2_check, hps_inverse, roundtrip1,
                              sample_collections_h, whisker_collection)
from clubkit.errors import HypothesisFailed
from clubkit.fincat import CommutingSquare, Functor, canonical_pullback, is_pullback
from clubkit.harness import (SLOW_WHISKERS, SuiteConfig, cat0_squares, category_laws_suite,
                             category_mutation, law_pools, profunctor_mutation, s_instances,
                             trivial_instance, violating_instance)
from clubkit.probes import default_universe, discrete2, one, two, walking_iso
from clubkit.smc import monad_law_failures

import oracles

U = default_universe()


@pytest.fixture
def verdict(capsys):
    def report(n, ok, detail, elapsed, limit):
        ok = bool(ok) and elapsed < limit
        line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail} ({elapsed:.1f}s / {limit}s)"
        with capsys.disabled():
            print("\n" + line)
        assert ok, line
    return report


def test_1_kernel_laws(verdict):
    t0 = time.perf_counter()
    cfg = SuiteConfig(seed=0, fuzz=200)
    checks = category_laws_suite(cfg, U)
    clean = [c for c in checks if "/fuzz/" not in c.name]
    fuzz = [c for c in checks if "/fuzz/" in c.name]
    # second route: replay the same mutations and confirm each with the oracle
    rng = random.Random(cfg.seed)
    cats, pros = law_pools(U)
    confirmed = 0
    for _ in range(cfg.fuzz):
        if rng.random() < 0.5:
            _, C = rng.choice(cats)
            M = category_mutation(C, rng)[0]
            confirmed += oracles.category_law_violations(M) > 0
        else:
            _, P = rng.choice(pros)
            M = profunctor_mutation(P, rng)[0]
            confirmed += oracles.profunctor_law_violations(M) > 0
    oracle_clean = all(oracles.category_law_violations(C) == 0 for _, C in cats) and \
        all(oracles.profunctor_law_violations(P) == 0 for _, P in pros)
    detected = sum(c.verdict for c in fuzz)
    false_pos = sum(not c.verdict for c in clean)
    ok = (len(fuzz) == 200 and detected == 200 and confirmed == 200 and false_pos == 0
          and oracle_clean)
    verdict(1, ok, f"{detected}/200 mutations detected, {confirmed}/200 confirmed by oracle, "
                   f"{false_pos} false positives on {len(clean)} clean",
            time.perf_counter() - t0, 10)


# small probe categories: at most 3 objects and 6 morphisms
SMALL = [one(), two(), discrete2(), walking_iso(), oracles.three(), oracles.span(),
         oracles.cospan(), oracles.idempotent(), oracles.z2(), oracles.arrow_plus_point(),
         oracles.discrete3()]


def squares(rng):
    """Pullbacks of cospans of small probes, and other commuting squares over
    the same cospans with small apexes (mostly not pullbacks)."""
    mk = lambda X, Y, t: Functor(X, Y, *t)
    fun = {}

    def functors(X, Y):
        key = (X.name, Y.name)
        if key not in fun:
            fun[key] = [mk(X, Y, t) for t in oracles.functors(X, Y)]
        return fun[key]

    for A in SMALL:
        for B, C in product(SMALL, repeat=2):
            fs, gs = functors(B, A), functors(C, A)
            if not fs or not gs:
                continue
            f, g = rng.choice(fs), rng.choice(gs)
            pb = canonical_pullback(f, g)
            if len(pb.cat.objects) <= 3 and len(pb.cat.morphisms) <= 6:
                yield CommutingSquare(pb.p2, pb.p1, g, f)
            T = rng.choice(SMALL[:5])
            cones = [(l, t) for l in functors(T, B) for t in functors(T, C)
                     if all(f.ob[l.ob[x]] == g.ob[t.ob[x]] for x in T.objects)
                     and all(f.mor[l.mor[m]] == g.mor[t.mor[m]] for m in T.morphisms)]
            for l, t in rng.sample(cones, min(2, len(cones))):
                yield CommutingSquare(t, l, g, f)


def test_2_pullback_oracle(verdict):
    t0 = time.perf_counter()
    rng = random.Random(2)
    tests = [one(), two(), oracles.three()]
    n = agree = yes = 0
    for sq in squares(rng):
        n += 1
        ours = is_pullback(sq).verdict
        yes += ours
        agree += ours == oracles.pullback_oracle(sq.top, sq.left, sq.right, sq.bottom, tests)
    ok = n >= 500 and agree == n and 0 < yes < n
    verdict(2, ok, f"{agree}/{n} squares agree ({yes} pullbacks)", time.perf_counter() - t0, 60)


def test_3_monad_laws(verdict):
    t0 = time.perf_counter()
    bad, n = [], 0
    for monad in ("S", "T"):
        for name in ("1", "2", "D2", "G1"):
            n += 1
            for law, w in monad_law_failures(U.categories[name], range(4), monad,
                                             U.functors.values()):
                bad.append((monad, name, law, w))
    verdict(3, not bad, f"{n} monad/probe pairs, failures: {bad[:1] or 'none'}",
            time.perf_counter() - t0, 30)


def test_4_clubalt(verdict):
    t0 = time.perf_counter()
    checks = clubalt_suite(U, range(4), "S") + clubalt_suite(U, range(4), "T")
    bad = [c.name for c in checks if not c.verdict]
    verdict(4, checks and not bad, f"{len(checks) - len(bad)}/{len(checks)} clubalt checks",
            time.perf_counter() - t0, 60)


def test_5_roundtrip(verdict):
    t0 = time.perf_counter()
    exact = iso = total = 0
    bad = []
    for monad in ("S", "T"):
        for c in sample_collections(monad):
            total += 1
            data = reconstruct_data(c, U)
            e = evaluate0(data, U)
            if e.base is c.base and same_collection(e, c):
                exact += 1
            else:
                bad.append(("FG", monad, c.name))
            out, unnatural = roundtrip_iso(data, U)
            if unnatural or any(cx is not None for _, cx in out.values()):
                bad.append(("GF", monad, c.name))
            else:
                iso += 1
        for build in (lambda: eta_data(U, monad), lambda: s_data(U, {0, 1, 2}, monad),
                      lambda: mu_data(U, {1, 2}, monad)):
            out, unnatural = roundtrip_iso(build(), U)
            if unnatural or any(cx is not None for _, cx in out.values()):
                bad.append(("GF-data", monad))
        for h in sample_collections_h(monad):
            if not roundtrip1(h)[1]:
                bad.append(("F1G1", monad, h.name))
    ok = not bad and exact >= 10
    verdict(5, ok, f"{exact}/{total} identifier-exact, {iso} natural isos, "
                   f"unit-level horizontal exact: {not any(b[0] == 'F1G1' for b in bad)}",
            time.perf_counter() - t0, 30)


def substitution_ok(c, d):
    e = club_tensor(c, d)
    objs, mors = {}, {}
    for u in e.base.objects:
        objs[e.arity[u]] = objs.get(e.arity[u], 0) + 1
    for m in e.base.morphisms:
        k = e.arity[e.base.src(m)]
        mors[k] = mors.get(k, 0) + 1
    return (objs, mors) == oracles.substitution_counts(c, d)


def test_6_club_tensor(verdict):
    t0 = time.perf_counter()
    bad, units, triples, pairs = [], 0, 0, 0
    for monad in ("S", "T"):
        cs = sample_collections(monad)
        for c in cs:
            for F, d in (left_unitor(c), right_unitor(c)):
                if collection_iso_failure(F, c, d) is not None:
                    bad.append(("unit", c.name))
                units += 1
        corpus = tensor_corpus(monad)
        for c, d, e in product(corpus, repeat=3):
            F, L, R = associator0(c, d, e)
            triples += 1
            if collection_iso_failure(F, L, R) is not None:
                bad.append(("assoc", c.name, d.name, e.name))
        for c, d in product(corpus, repeat=2):
            pairs += 1
            if not substitution_ok(c, d):
                bad.append(("arity", c.name, d.name))
    b, t = [c for c in sample_collections("S") if c.name in ("binary", "ternary")]
    six = sorted(club_tensor(b, t).arity.values()) == [6] and substitution_ok(b, t)
    ok = not bad and six
    verdict(6, ok, f"{units} unit isos, {triples} associativity bijections, {pairs} pairs vs "
                   f"substitution oracle, 2*3 -> 6: {six}", time.perf_counter() - t0, 30)


def test_7_hps(verdict):
    t0 = time.perf_counter()
    bad = []
    n2 = n1 = ninv = 0
    for name, sq in cat0_squares(U):
        if not is_pullback(sq).verdict:
            bad.append(("not-cat0-pullback", name))
            continue
        n2 += 1
        if not hps2_check(sq).verdict:
            bad.append(("hps2", name))
    for monad in ("S", "T"):
        insts = list(s_instances(U, monad))
        insts += [trivial_instance(U.categories[a], U.categories[b])
                  for a in U.names() for b in U.names() if a <= b]
        for inst in insts:
            n1 += 1
            if not hps1_check(inst).verdict:
                bad.append(("hps1", inst.name))
            r = hps_inverse(inst)
            ninv += 1
            if not (r.vu_identity and r.uv_identity):
                bad.append(("inverse", inst.name))
    try:
        hps_inverse(violating_instance())
        rejected = False
    except HypothesisFailed:
        rejected = True
    ok = not bad and rejected
    verdict(7, ok, f"hps2 on {n2} squares, hps1 on {n1} instances, {ninv} inverses, "
                   f"violation rejected: {rejected}", time.perf_counter() - t0, 120)


def test_8_altclubdesc(verdict):
    t0 = time.perf_counter()
    checks = []
    for monad in ("S", "T"):
        hs = sample_collections_h(monad)
        for h in hs:
            for k in hs:
                checks += hcoll_tensor(h, k, U)
        colls = {c.name: c for c in sample_collections(monad)}
        for cn in ("I", "binary", "swap" if monad == "S" else "arrow1"):
            for k in hs:
                if (cn, k.name) not in SLOW_WHISKERS:
                    checks += whisker_collection(colls[cn], k, U)
    bad = [c.name for c in checks if not c.verdict]
    verdict(8, checks and not bad, f"{len(checks) - len(bad)}/{len(checks)} hcoll_tensor and "
                                   f"whisker_collection checks", time.perf_counter() - t0, 120)


def test_9_determinism(verdict, tmp_path):
    t0 = time.perf_counter()
    procs = []
    for hs in ("1", "2"):
        env = dict(os.environ, PYTHONHASHSEED=hs)
        out = open(tmp_path / f"run{hs}.json", "wb")
        procs.append((subprocess.Popen([sys.executable, "-m", "clubkit.cli", "check",
                                        "--report", "json", "--seed", "7"],
                                       stdout=out, env=env), out))
    codes = []
    for p, out in procs:
        codes.append(p.wait())
        out.close()
    a = (tmp_path / "run1.json").read_bytes()
    b = (tmp_path / "run2.json").read_bytes()
    ok = a == b and len(a) > 0 and codes == [0, 0]
    verdict(9, ok, f"two seeded full runs byte-identical: {a == b} ({len(a)} bytes, "
                   f"exit {codes})", time.perf_counter() - t0, 1800)
