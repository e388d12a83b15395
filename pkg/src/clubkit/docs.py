"""JSON documents for categories, functors, profunctors, cells and collections.

Identifiers are JSON strings or integers; a tuple identifier is written as a
JSON array and read back as a tuple, so documents round-trip exactly.
Identities are implicit as ``id_<obj>``; a category whose identities are
named otherwise carries an ``identities`` map.
"""

import json
from pathlib import Path

from .clubs import Collection0
from .dblclubs import CollectionH
from .errors import ParseError, UnresolvedReference
from .fincat import FinCat, Functor, validate_category, validate_functor
from .ids import idkey, ordered
from .probes import ProbeUniverse, default_universe
from .profunctor import Cell, Profunctor, validate_cell, validate_profunctor


def to_json(x):
    if isinstance(x, tuple):
        return [to_json(e) for e in x]
    return x


def from_json(x, where="document"):
    if isinstance(x, list):
        return tuple(from_json(e, where) for e in x)
    if isinstance(x, bool) or not isinstance(x, (str, int)):
        raise ParseError(f"{where}: identifier {x!r} is not a string, integer or list")
    return x


def _key(x):
    """Dictionary keys must be strings: tuples go through their JSON text."""
    return x if isinstance(x, str) else json.dumps(to_json(x))


def _unkey(k, where, known=()):
    """A string key is the identifier itself when known, else its JSON text."""
    if k in known:
        return k
    try:
        return from_json(json.loads(k), where)
    except json.JSONDecodeError:
        return k


# categories --------------------------------------------------------------------

def category_doc(C):
    doc = {"name": C.name, "objects": [to_json(x) for x in C.objects]}
    ids = set(C.identity.values())
    doc["morphisms"] = [{"id": to_json(m), "src": to_json(s), "dst": to_json(d)}
                        for m in ordered(C.morphisms) if m not in ids
                        for s, d in [C.ends(m)]]
    odd = {x: i for x, i in C.identity.items() if isinstance(x, tuple) or i != f"id_{x}"}
    if odd:
        doc["identities"] = [[to_json(x), to_json(C.identity[x])] for x in ordered(odd)]
    doc["compose"] = [[to_json(g), to_json(f), to_json(h)]
                      for (g, f), h in sorted(C.table().items(),
                                              key=lambda kv: (idkey(kv[0][0]), idkey(kv[0][1])))
                      if g not in ids and f not in ids]
    return doc


def parse_category(doc, where="category"):
    try:
        objects = [from_json(x, where) for x in doc["objects"]]
        identity = {x: f"id_{x}" for x in objects if not isinstance(x, tuple)}
        for pair in doc.get("identities", []):
            x, i = pair
            identity[from_json(x, where)] = from_json(i, where)
        missing = [x for x in objects if x not in identity]
        if missing:
            raise ParseError(f"{where}: object {missing[0]!r} needs an explicit identity")
        ends = {identity[x]: (x, x) for x in objects}
        for i, m in enumerate(doc.get("morphisms", [])):
            mid = from_json(m["id"], f"{where}.morphisms[{i}]")
            s, d = from_json(m["src"], where), from_json(m["dst"], where)
            for end in (s, d):
                if end not in identity:
                    raise UnresolvedReference(f"{where}.morphisms[{i}]: object {end!r}")
            ends[mid] = (s, d)
        table = {}
        for m, (s, d) in ends.items():
            table[(m, identity[s])] = m
            table[(identity[d], m)] = m
        for i, row in enumerate(doc.get("compose", [])):
            if len(row) != 3:
                raise ParseError(f"{where}.compose[{i}]: expected [g, f, h]")
            g, f, h = (from_json(e, f"{where}.compose[{i}]") for e in row)
            for m in (g, f, h):
                if m not in ends:
                    raise UnresolvedReference(f"{where}.compose[{i}]: morphism {m!r}")
            table[(g, f)] = h
    except (KeyError, TypeError, ValueError) as e:
        if isinstance(e, ParseError):
            raise
        raise ParseError(f"{where}: malformed category ({e})") from e
    return FinCat(objects, ends, identity, table, name=doc.get("name", ""))


# functors ----------------------------------------------------------------------

def functor_doc(F, source_name=None, target_name=None):
    return {"name": F.name,
            "source": source_name or F.source.name, "target": target_name or F.target.name,
            "on_objects": {_key(x): to_json(F.ob[x]) for x in ordered(F.ob)},
            "on_morphisms": {_key(m): to_json(F.mor[m]) for m in ordered(F.mor)}}


def parse_functor(doc, cats, where="functor"):
    try:
        src, tgt = _resolve(cats, doc["source"], where), _resolve(cats, doc["target"], where)
        ob = {_unkey(k, where, src._out): from_json(v, where)
              for k, v in doc["on_objects"].items()}
        mor = {_unkey(k, where, src._ends): from_json(v, where)
               for k, v in doc.get("on_morphisms", {}).items()}
    except (KeyError, TypeError, AttributeError) as e:
        raise ParseError(f"{where}: malformed functor ({e})") from e
    for x in src.objects:
        if x not in ob:
            raise UnresolvedReference(f"{where}: no image for object {x!r}")
    for x, y in ob.items():
        if x not in src._out or y not in tgt._out:
            raise UnresolvedReference(f"{where}: object {x!r} -> {y!r}")
    for m in src.morphisms:
        if m not in mor:
            # identities may be left implicit
            if src.is_identity(m):
                x = src.src(m)
                mor[m] = tgt.identity[ob[x]]
            else:
                raise UnresolvedReference(f"{where}: no image for morphism {m!r}")
    for m, n in mor.items():
        if not src.has_morphism(m) or not tgt.has_morphism(n):
            raise UnresolvedReference(f"{where}: morphism {m!r} -> {n!r}")
    return Functor(src, tgt, ob, mor, name=doc.get("name", ""))


def _resolve(table, name, where):
    if name not in table:
        raise UnresolvedReference(f"{where}: unknown name {name!r}")
    return table[name]


# profunctors and cells ----------------------------------------------------------

def profunctor_doc(P):
    return {"name": P.name, "src": P.src_cat.name, "tgt": P.tgt_cat.name,
            "proarrows": [{"id": to_json(p), "from": to_json(P.frm(p)), "to": to_json(P.to(p))}
                          for p in ordered(P.proarrows)],
            "left": [[to_json(h), to_json(p), to_json(q)]
                     for (h, p), q in sorted(P.left_table().items(),
                                             key=lambda kv: (idkey(kv[0][0]), idkey(kv[0][1])))
                     if not P.src_cat.is_identity(h)],
            "right": [[to_json(p), to_json(f), to_json(q)]
                      for (p, f), q in sorted(P.right_table().items(),
                                              key=lambda kv: (idkey(kv[0][0]), idkey(kv[0][1])))
                      if not P.tgt_cat.is_identity(f)]}


def parse_profunctor(doc, cats, where="profunctor"):
    try:
        Xs, Xt = _resolve(cats, doc["src"], where), _resolve(cats, doc["tgt"], where)
        ends = {}
        for i, r in enumerate(doc["proarrows"]):
            p = from_json(r["id"], f"{where}.proarrows[{i}]")
            a, b = from_json(r["from"], where), from_json(r["to"], where)
            if a not in Xt._out or b not in Xs._out:
                raise UnresolvedReference(f"{where}.proarrows[{i}]: endpoint of {p!r}")
            ends[p] = (a, b)
        left = {(Xs.identity[b], p): p for p, (a, b) in ends.items()}
        right = {(p, Xt.identity[a]): p for p, (a, b) in ends.items()}
        for i, (h, p, q) in enumerate(doc.get("left", [])):
            h, p, q = from_json(h, where), from_json(p, where), from_json(q, where)
            if not Xs.has_morphism(h) or p not in ends or q not in ends:
                raise UnresolvedReference(f"{where}.left[{i}]: {h!r}, {p!r}, {q!r}")
            left[(h, p)] = q
        for i, (p, f, q) in enumerate(doc.get("right", [])):
            p, f, q = from_json(p, where), from_json(f, where), from_json(q, where)
            if not Xt.has_morphism(f) or p not in ends or q not in ends:
                raise UnresolvedReference(f"{where}.right[{i}]: {p!r}, {f!r}, {q!r}")
            right[(p, f)] = q
    except (KeyError, TypeError, ValueError) as e:
        if isinstance(e, ParseError):
            raise
        raise ParseError(f"{where}: malformed profunctor ({e})") from e
    return Profunctor(Xs, Xt, ends, left, right, name=doc.get("name", ""))


def cell_doc(F):
    return {"name": F.name, "source": F.source.name, "target": F.target.name,
            "vertical_src": F.vertical_src.name, "vertical_tgt": F.vertical_tgt.name,
            "on_proarrows": {_key(p): to_json(F.map[p]) for p in ordered(F.map)}}


def parse_cell(doc, pros, functors, where="cell"):
    try:
        src, tgt = _resolve(pros, doc["source"], where), _resolve(pros, doc["target"], where)
        Fs = _resolve(functors, doc["vertical_src"], where)
        Ft = _resolve(functors, doc["vertical_tgt"], where)
        m = {_unkey(k, where, src._ends): from_json(v, where)
             for k, v in doc["on_proarrows"].items()}
    except (KeyError, TypeError, AttributeError) as e:
        raise ParseError(f"{where}: malformed cell ({e})") from e
    for p in src.proarrows:
        if p not in m:
            raise UnresolvedReference(f"{where}: no image for proarrow {p!r}")
    return Cell(src, tgt, Fs, Ft, m, name=doc.get("name", ""))


# collections -------------------------------------------------------------------

def collection_doc(c):
    return {"name": c.name, "monad": c.monad, "base": category_doc(c.base),
            "arity": {_key(u): c.arity[u] for u in ordered(c.arity)},
            "perm": {_key(m): list(c.perm[m]) for m in ordered(c.perm)}}


def parse_collection(doc, where="collection"):
    try:
        base = parse_category(doc["base"], f"{where}.base")
        arity = {_unkey(k, where, base._out): int(v) for k, v in doc["arity"].items()}
        perm = {_unkey(k, where, base._ends): tuple(int(i) for i in v)
                for k, v in doc.get("perm", {}).items()}
    except (KeyError, TypeError, ValueError) as e:
        if isinstance(e, ParseError):
            raise
        raise ParseError(f"{where}: malformed collection ({e})") from e
    for u in base.objects:
        if u not in arity:
            raise UnresolvedReference(f"{where}: no arity for object {u!r}")
    for m in perm:
        if not base.has_morphism(m):
            raise UnresolvedReference(f"{where}: perm for unknown morphism {m!r}")
    from .smc import identity_perm
    for m in base.morphisms:
        perm.setdefault(m, identity_perm(arity[base.src(m)]))
    return Collection0(base, arity, perm, monad=doc.get("monad", "S"),
                       name=doc.get("name", base.name))


def collection_h_doc(h):
    return {"name": h.name, "src": collection_doc(h.src_coll), "tgt": collection_doc(h.tgt_coll),
            "pro": profunctor_doc(h.base_pro),
            "theta": {_key(p): list(h.theta_cell[p]) for p in ordered(h.theta_cell)}}


def parse_collection_h(doc, where="hcollection"):
    try:
        s = parse_collection(doc["src"], f"{where}.src")
        t = parse_collection(doc["tgt"], f"{where}.tgt")
        cats = {doc["pro"]["src"]: s.base, doc["pro"]["tgt"]: t.base}
        P = parse_profunctor(doc["pro"], cats, f"{where}.pro")
        theta = {_unkey(k, where, P._ends): tuple(int(i) for i in v) for k, v in doc["theta"].items()}
    except (KeyError, TypeError, ValueError) as e:
        if isinstance(e, ParseError):
            raise
        raise ParseError(f"{where}: malformed horizontal collection ({e})") from e
    return CollectionH(s, t, P, theta, name=doc.get("name", ""))


# files and universes ----------------------------------------------------------------

def read_json(path):
    path = Path(path)
    try:
        return json.loads(path.read_text())
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}:{e.lineno}:{e.colno}: {e.msg}") from e


def dumps(doc):
    return json.dumps(doc, indent=1, sort_keys=True, ensure_ascii=False)


def kind_of(doc):
    if "on_proarrows" in doc:
        return "cell"
    if "proarrows" in doc:
        return "profunctor"
    if "on_objects" in doc:
        return "functor"
    if "objects" in doc:
        return "category"
    return None


def load_universe(path=None, defaults=True):
    """Probe universe from a directory of documents, on top of the built-in one."""
    U = default_universe() if defaults else ProbeUniverse()
    if path is None:
        return U
    root = Path(path)
    if not root.is_dir():
        raise ParseError(f"{root}: not a directory")
    docs = {"category": [], "functor": [], "profunctor": [], "cell": []}
    for f in sorted(root.glob("*.json")):
        doc = read_json(f)
        k = kind_of(doc)
        if k is None:
            raise ParseError(f"{f}: unrecognised document")
        docs[k].append((doc.get("name") or f.stem, doc, str(f)))
    for name, doc, where in docs["category"]:
        C = parse_category(doc, where)
        C.name = name
        bad = validate_category(C)
        if bad:
            raise ParseError(f"{where}: not a category ({bad[0].kind} at {bad[0].ids!r})")
        U.categories[name] = C
    for name, doc, where in docs["functor"]:
        F = parse_functor(doc, U.categories, where)
        F.name = name
        bad = validate_functor(F)
        if bad:
            raise ParseError(f"{where}: not a functor ({bad[0].kind} at {bad[0].ids!r})")
        U.functors[name] = F
    for name, doc, where in docs["profunctor"]:
        P = parse_profunctor(doc, U.categories, where)
        P.name = name
        bad = validate_profunctor(P)
        if bad:
            raise ParseError(f"{where}: not a profunctor ({bad[0].kind} at {bad[0].ids!r})")
        U.profunctors[name] = P
    for name, doc, where in docs["cell"]:
        F = parse_cell(doc, U.profunctors, U.functors, where)
        F.name = name
        bad = validate_cell(F)
        if bad:
            raise ParseError(f"{where}: not a cell ({bad[0].kind} at {bad[0].ids!r})")
        U.cells[name] = F
    return U
