"""Command line: materialize, club, dblclub, check."""

import sys

import click

from . import docs
from .clubs import clubalt_suite, club_tensor, reconstruct0
from .dblclubs import cat0_instance, hps1_check, hps_inverse, s_instance
from .errors import ClubError
from .fincat import CommutingSquare, canonical_pullback
from .harness import Report, SuiteConfig, parse_arities, plain, run_suite
from .ids import ordered
from .smc import s_bang, s_cat


def _emit(obj):
    click.echo(docs.dumps(obj))


def _category(ref, universe):
    """A category from a document path or a probe name."""
    if ref in universe.categories:
        return universe.categories[ref]
    return docs.parse_category(docs.read_json(ref), where=ref)


def _finish(report, fmt, figure, timings):
    click.echo(report.to_json(timings) if fmt == "json" else report.to_text(timings), nl=False)
    if figure:
        from .figure import report_figure
        report_figure(report, figure)
    sys.exit(0 if report.ok else 1)


def _guard(fn):
    def wrapped(*a, **kw):
        try:
            return fn(*a, **kw)
        except ClubError as e:
            click.echo(f"error: {type(e).__name__}: {e}", err=True)
            sys.exit(2)
    wrapped.__name__ = fn.__name__
    wrapped.__doc__ = fn.__doc__
    return wrapped


report_opts = [
    click.option("--report", "fmt", type=click.Choice(["text", "json"]), default="text"),
    click.option("--figure", type=click.Path(dir_okay=False), default=None,
                 help="Write a PNG of per-check verdicts and timings."),
    click.option("--timings/--no-timings", default=None,
                 help="Include timings (default: on for text, off for json)."),
]


def with_report(fn):
    for opt in reversed(report_opts):
        fn = opt(fn)
    return fn


def _timings(flag, fmt):
    return flag if flag is not None else fmt == "text"


@click.group()
def main():
    """Finite checks for clubs and double clubs over S and T."""


@main.command()
@click.option("--cat", "cat", required=True, help="Category document or probe name.")
@click.option("--arities", default="0..3")
@click.option("--monad", type=click.Choice(["S", "T"]), default="S")
@click.option("--probes", type=click.Path(file_okay=False), default=None)
@_guard
def materialize(cat, arities, monad, probes):
    """Emit S X graded by arity, and S!."""
    U = docs.load_universe(probes)
    X = _category(cat, U)
    SX = s_cat(X, parse_arities(arities), monad=monad)
    F = s_bang(SX)
    _emit({"category": docs.category_doc(SX), "S!": docs.functor_doc(F),
           "S1": docs.category_doc(F.target)})


@main.group()
def club():
    """Collections and clubs."""


@club.command("tensor")
@click.option("--left", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--right", required=True, type=click.Path(exists=True, dir_okay=False))
@_guard
def club_tensor_cmd(left, right):
    """Tensor of two collection documents."""
    c = docs.parse_collection(docs.read_json(left), where=left)
    d = docs.parse_collection(docs.read_json(right), where=right)
    _emit(docs.collection_doc(club_tensor(c, d)))


@club.command("reconstruct")
@click.option("--collection", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--at", "at", required=True, help="Category document or probe name.")
@click.option("--probes", type=click.Path(file_okay=False), default=None)
@_guard
def club_reconstruct(collection, at, probes):
    """A X with alpha_X: A X -> S X."""
    c = docs.parse_collection(docs.read_json(collection), where=collection)
    X = _category(at, docs.load_universe(probes))
    rec = reconstruct0(c, X)
    _emit({"category": docs.category_doc(rec.cat), "alpha": docs.functor_doc(rec.alpha),
           "bang": docs.functor_doc(rec.bang)})


@club.command("check")
@click.option("--monad", type=click.Choice(["S", "T"]), default="S")
@click.option("--probes", type=click.Path(file_okay=False), default=None)
@click.option("--arities", default="0..3")
@with_report
@_guard
def club_check(monad, probes, arities, fmt, figure, timings):
    """The clubalt suite: eta, mu and S alpha cartesian on every probe."""
    U = docs.load_universe(probes)
    A = parse_arities(arities)
    rep = Report({"arities": list(A), "monad": monad, "suites": ["clubalt"]}, U.names(),
                 clubalt_suite(U, A, monad))
    _finish(rep, fmt, figure, _timings(timings, fmt))


@main.group()
def dblclub():
    """Horizontal collections and property (hps)."""


@dblclub.command("check")
@click.option("--monad", type=click.Choice(["S", "T"]), default="S")
@click.option("--probes", type=click.Path(file_okay=False), default=None)
@click.option("--arities", default="0..3")
@click.option("--seed", type=int, default=0)
@with_report
@_guard
def dblclub_check(monad, probes, arities, seed, fmt, figure, timings):
    """hps and altclubdesc suites."""
    cfg = SuiteConfig(probes=probes, arities=parse_arities(arities), monad=monad,
                      suites=("hps", "altclubdesc"), seed=seed)
    _finish(run_suite(cfg), fmt, figure, _timings(timings, fmt))


def load_instance(path, universe):
    """Instance documents:
    {"kind": "s", "h12": <hcollection>, "h23": <hcollection>, "p12": name, "p23": name}
    {"kind": "cat0", "f": functor name, "g": functor name}."""
    doc = docs.read_json(path)
    kind = doc.get("kind")
    if kind == "s":
        h12 = docs.parse_collection_h(doc["h12"], where=f"{path}.h12")
        h23 = docs.parse_collection_h(doc["h23"], where=f"{path}.h23")
        if docs.collection_doc(h12.tgt_coll) != docs.collection_doc(h23.src_coll):
            raise docs.ParseError(f"{path}: h12 and h23 do not share the middle collection")
        h23.src_coll = h12.tgt_coll
        P12 = docs._resolve(universe.profunctors, doc["p12"], path)
        P23 = docs._resolve(universe.profunctors, doc["p23"], path)
        return s_instance(h23, h12, P23, P12, name=doc.get("name", ""))
    if kind == "cat0":
        f = docs._resolve(universe.functors, doc["f"], path)
        g = docs._resolve(universe.functors, doc["g"], path)
        pb = canonical_pullback(f, g)
        sq = CommutingSquare(pb.p2, pb.p1, g, f)
        return cat0_instance(sq, sq, name=doc.get("name", f"{doc['f']},{doc['g']}"))
    raise docs.ParseError(f"{path}: unknown instance kind {kind!r}")


@dblclub.command("hps")
@click.option("--instance", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--probes", type=click.Path(file_okay=False), default=None)
@_guard
def dblclub_hps(instance, probes):
    """hps1 on one instance; exit status 1 when the tensored square is not a pullback."""
    inst = load_instance(instance, docs.load_universe(probes))
    rep = hps1_check(inst)
    _emit({"instance": inst.name, "verdict": rep.verdict,
           "counterexample": plain(rep.counterexample)})
    sys.exit(0 if rep.verdict else 1)


@dblclub.command("inverse")
@click.option("--instance", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--probes", type=click.Path(file_okay=False), default=None)
@click.option("--emit-witness", is_flag=True, help="Print the table of v.")
@_guard
def dblclub_inverse(instance, probes, emit_witness):
    """The inverse v of the comparison u, checked both ways."""
    inst = load_instance(instance, docs.load_universe(probes))
    r = hps_inverse(inst)
    out = {"instance": inst.name, "vu_identity": r.vu_identity, "uv_identity": r.uv_identity,
           "representatives_checked": r.checked, "counterexample": plain(r.counterexample)}
    if emit_witness:
        out["v"] = [[docs.to_json(e), docs.to_json(r.v.map[e])] for e in ordered(r.v.map)]
    _emit(out)
    sys.exit(0 if r.vu_identity and r.uv_identity else 1)


@main.command()
@click.option("--probes", type=click.Path(file_okay=False), default=None)
@click.option("--arities", default="0..3")
@click.option("--monad", type=click.Choice(["S", "T"]), default="S")
@click.option("--suite", "suites", default=",".join(SuiteConfig.suites),
              help="Comma-separated suite names.")
@click.option("--seed", type=int, default=0)
@click.option("--fuzz", type=int, default=200, help="Fuzzed law violations.")
@click.option("--inject", is_flag=True, help="Add one corrupted hps instance.")
@with_report
@_guard
def check(probes, arities, monad, suites, seed, fuzz, inject, fmt, figure, timings):
    """Run suites; exit status 1 iff any check fails."""
    cfg = SuiteConfig(probes=probes, arities=parse_arities(arities), monad=monad,
                      suites=tuple(s.strip() for s in suites.split(",") if s.strip()),
                      report=fmt, seed=seed, fuzz=fuzz, inject=inject)
    bad = cfg.problems()
    if bad:
        raise click.BadParameter("; ".join(bad))
    _finish(run_suite(cfg), fmt, figure, _timings(timings, fmt))


if __name__ == "__main__":
    main()
