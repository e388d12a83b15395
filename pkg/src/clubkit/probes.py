"""The built-in probe universe and the ProbeUniverse container."""

from dataclasses import dataclass, field

from .fincat import Functor, bang, make_category, terminal_category
from .profunctor import Profunctor, pro_identity, walking_arrow

_CACHE = {}


def one():
    return terminal_category()


def two():
    return walking_arrow()


def discrete2():
    return _cached("D2", lambda: make_category(["x", "y"], name="D2"))


def walking_iso():
    def build():
        return make_category(
            ["0", "1"], [("i", "0", "1"), ("j", "1", "0")],
            [("j", "i", "id_0"), ("i", "j", "id_1")], name="G1")
    return _cached("G1", build)


def point_pro():
    """P: D2 -|-> D2 with a single proarrow p: x -|-> y."""
    def build():
        D = discrete2()
        return Profunctor(D, D, {"p": ("x", "y")},
                          {("id_y", "p"): "p"}, {("p", "id_x"): "p"}, name="P")
    return _cached("P", build)


def _cached(key, build):
    if key not in _CACHE:
        _CACHE[key] = build()
    return _CACHE[key]


@dataclass
class ProbeUniverse:
    categories: dict = field(default_factory=dict)
    functors: dict = field(default_factory=dict)
    profunctors: dict = field(default_factory=dict)
    cells: dict = field(default_factory=dict)
    closure: dict = field(default_factory=dict)

    def names(self):
        return sorted(self.categories)

    def terminal(self):
        """Name of a terminal probe category, or None."""
        for name in self.names():
            C = self.categories[name]
            if len(C.objects) == 1 and len(C.morphisms) == 1:
                return name
        return None


def default_functors():
    """A few functors between the built-in probes, used for naturality checks."""
    O, T, D, G = one(), two(), discrete2(), walking_iso()
    return {
        "0:1->2": Functor(O, T, {"*": "0"}, {"id_*": "id_0"}, name="0:1->2"),
        "1:1->2": Functor(O, T, {"*": "1"}, {"id_*": "id_1"}, name="1:1->2"),
        "u:2->G1": Functor(T, G, {"0": "0", "1": "1"},
                           {"id_0": "id_0", "id_1": "id_1", "u": "i"}, name="u:2->G1"),
        "xy:D2->2": Functor(D, T, {"x": "0", "y": "1"},
                            {"id_x": "id_0", "id_y": "id_1"}, name="xy:D2->2"),
        "!:G1->1": bang(G, O),
    }


def default_universe():
    cats = {"1": one(), "2": two(), "D2": discrete2(), "G1": walking_iso()}
    pros = {"P": point_pro(), "I(1)": pro_identity(one()), "I(2)": pro_identity(two())}
    return ProbeUniverse(categories=cats, functors=default_functors(), profunctors=pros,
                         closure={"identity_profunctors": ["1", "2"]})
