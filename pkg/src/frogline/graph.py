"""Implicit finite-graph families: d-ary trees, complete graphs, cycles.

Adjacency is index arithmetic, never stored, so graphs with millions of
vertices cost nothing to build. Trees use heap order: vertex 0 is the root,
the children of v are d*v+1 .. d*v+d, and the parent of v > 0 is
(v-1) // d. The frog-model origin is a runtime parameter elsewhere; it is
not part of the graph.
"""

from dataclasses import dataclass

import numpy as np

from .errors import FamilyError, ParameterError

TREE = "tree"
COMPLETE = "complete"
CYCLE = "cycle"


@dataclass(frozen=True)
class GraphDescriptor:
    family: str
    d: int = 0  # branching factor, trees only
    n: int = 0  # depth (trees) or vertex count (complete, cycle)

    def __post_init__(self):
        if self.family == TREE:
            if self.d < 2:
                raise ParameterError("tree needs d >= 2, got d=%r" % (self.d,))
            if self.n < 1:
                raise ParameterError("tree needs depth n >= 1, got n=%r" % (self.n,))
        elif self.family == COMPLETE:
            if self.n < 2:
                raise ParameterError("complete graph needs n >= 2, got n=%r" % (self.n,))
        elif self.family == CYCLE:
            if self.n < 3:
                raise ParameterError("cycle needs n >= 3, got n=%r" % (self.n,))
        else:
            raise ParameterError("unknown graph family %r" % (self.family,))

    @property
    def vertex_count(self):
        if self.family == TREE:
            return (self.d ** (self.n + 1) - 1) // (self.d - 1)
        return self.n

    def label(self):
        """Canonical descriptor string, same grammar the CLI parses."""
        if self.family == TREE:
            return "tree:d=%d,n=%d" % (self.d, self.n)
        return "%s:n=%d" % (self.family, self.n)


def parse_descriptor(text):
    """Parse `tree:d=<int>,n=<int>` | `complete:n=<int>` | `cycle:n=<int>`."""
    try:
        family, _, rest = text.partition(":")
        kv = {}
        for part in rest.split(","):
            key, _, val = part.partition("=")
            kv[key.strip()] = int(val)
    except (ValueError, AttributeError) as exc:
        raise ParameterError("cannot parse graph descriptor %r" % (text,)) from exc
    if family == TREE:
        if set(kv) != {"d", "n"}:
            raise ParameterError("tree descriptor needs d= and n=, got %r" % (text,))
        return GraphDescriptor(TREE, d=kv["d"], n=kv["n"])
    if family in (COMPLETE, CYCLE):
        if set(kv) != {"n"}:
            raise ParameterError("%s descriptor needs n= only, got %r" % (family, text))
        return GraphDescriptor(family, n=kv["n"])
    raise ParameterError("unknown graph family in %r" % (text,))


def build_graph(descriptor):
    """Materialize a handle for the described graph family."""
    if descriptor.family == TREE:
        return TreeGraph(descriptor)
    if descriptor.family == COMPLETE:
        return CompleteGraph(descriptor)
    return CycleGraph(descriptor)


class GraphHandle:
    """Immutable view of one graph; safe to share across concurrent trials."""

    def __init__(self, descriptor):
        self.descriptor = descriptor
        self.vertex_count = descriptor.vertex_count
        self.family = descriptor.family

    def check_vertex(self, v):
        if not 0 <= v < self.vertex_count:
            raise IndexError("vertex %r outside [0, %d)" % (v, self.vertex_count))

    def degree(self, v):
        raise NotImplementedError

    def neighbors(self, v):
        raise NotImplementedError

    def distance(self, u, v):
        raise NotImplementedError

    def eccentricity(self, v):
        raise NotImplementedError

    def degrees_array(self, vs):
        """Vectorized degree lookup."""
        raise NotImplementedError

    def step_array(self, vs, rng):
        """One uniform-neighbor step for every vertex in `vs` (vectorized)."""
        raise NotImplementedError

    def label(self):
        return self.descriptor.label()


class TreeGraph(GraphHandle):
    def __init__(self, descriptor):
        super().__init__(descriptor)
        self.d = descriptor.d
        self.n = descriptor.n
        # level_starts[l] = first index on level l; one past-the-end sentinel
        d, n = self.d, self.n
        starts = [(d ** l - 1) // (d - 1) for l in range(n + 2)]
        self.level_starts = np.asarray(starts, dtype=np.int64)
        self.first_leaf = starts[n]

    def parent(self, v):
        self.check_vertex(v)
        if v == 0:
            return None
        return (v - 1) // self.d

    def children(self, v):
        self.check_vertex(v)
        if v >= self.first_leaf:
            return []
        return list(range(self.d * v + 1, self.d * v + self.d + 1))

    def level(self, v):
        self.check_vertex(v)
        return int(np.searchsorted(self.level_starts, v, side="right")) - 1

    def coheight(self, v):
        return self.n - self.level(v)

    def is_leaf(self, v):
        self.check_vertex(v)
        return v >= self.first_leaf

    def leaves(self):
        return np.arange(self.first_leaf, self.vertex_count, dtype=np.int64)

    def nav(self, v):
        return {
            "parent": self.parent(v),
            "children": self.children(v),
            "level": self.level(v),
            "coheight": self.coheight(v),
            "is_leaf": self.is_leaf(v),
        }

    def degree(self, v):
        self.check_vertex(v)
        if v == 0:
            return self.d
        if v >= self.first_leaf:
            return 1
        return self.d + 1

    def neighbors(self, v):
        self.check_vertex(v)
        out = [] if v == 0 else [(v - 1) // self.d]
        return out + self.children(v)

    def meet(self, x, y):
        """Deepest common ancestor under heap order; meet(x, x) = x."""
        self.check_vertex(x)
        self.check_vertex(y)
        lx, ly = self.level(x), self.level(y)
        while lx > ly:
            x = (x - 1) // self.d
            lx -= 1
        while ly > lx:
            y = (y - 1) // self.d
            ly -= 1
        while x != y:
            x = (x - 1) // self.d
            y = (y - 1) // self.d
        return x

    def distance(self, u, v):
        m = self.meet(u, v)
        return self.level(u) + self.level(v) - 2 * self.level(m)

    def eccentricity(self, v):
        # farthest vertex is a deepest leaf outside v's subtree (root: any leaf)
        lv = self.level(v)
        return self.n if lv == 0 else self.n + lv

    def levels_array(self, vs):
        vs = np.asarray(vs, dtype=np.int64)
        return np.searchsorted(self.level_starts, vs, side="right").astype(np.int64) - 1

    def degrees_array(self, vs):
        vs = np.asarray(vs, dtype=np.int64)
        deg = np.full(vs.shape, self.d + 1, dtype=np.int64)
        deg[vs == 0] = self.d
        deg[vs >= self.first_leaf] = 1
        return deg

    def step_array(self, vs, rng):
        vs = np.asarray(vs, dtype=np.int64)
        deg = self.degrees_array(vs)
        r = rng.integers(0, deg)
        # r == 0 means "go to parent" for non-root vertices, child r-1 otherwise;
        # the root has no parent slot, so r indexes children directly
        parent = (vs - 1) // self.d
        child = np.where(vs == 0, vs * self.d + 1 + r, vs * self.d + r)
        return np.where((vs != 0) & (r == 0), parent, child)


class CompleteGraph(GraphHandle):
    def degree(self, v):
        self.check_vertex(v)
        return self.vertex_count - 1

    def neighbors(self, v):
        self.check_vertex(v)
        return [u for u in range(self.vertex_count) if u != v]

    def distance(self, u, v):
        self.check_vertex(u)
        self.check_vertex(v)
        return 0 if u == v else 1

    def eccentricity(self, v):
        self.check_vertex(v)
        return 1

    def degrees_array(self, vs):
        vs = np.asarray(vs, dtype=np.int64)
        return np.full(vs.shape, self.vertex_count - 1, dtype=np.int64)

    def step_array(self, vs, rng):
        vs = np.asarray(vs, dtype=np.int64)
        # shift by 1 + Uniform[0, n-1) mod n: uniform over the other n-1 vertices
        r = rng.integers(1, self.vertex_count, size=vs.shape)
        return (vs + r) % self.vertex_count


class CycleGraph(GraphHandle):
    def degree(self, v):
        self.check_vertex(v)
        return 2

    def neighbors(self, v):
        self.check_vertex(v)
        n = self.vertex_count
        return sorted({(v - 1) % n, (v + 1) % n})

    def distance(self, u, v):
        self.check_vertex(u)
        self.check_vertex(v)
        k = abs(u - v)
        return min(k, self.vertex_count - k)

    def eccentricity(self, v):
        self.check_vertex(v)
        return self.vertex_count // 2

    def degrees_array(self, vs):
        vs = np.asarray(vs, dtype=np.int64)
        return np.full(vs.shape, 2, dtype=np.int64)

    def step_array(self, vs, rng):
        vs = np.asarray(vs, dtype=np.int64)
        r = rng.integers(0, 2, size=vs.shape)
        return (vs + 2 * r - 1) % self.vertex_count


def tree_nav(g, v):
    """Parent/children/level/coheight/leaf-flag bundle for tree vertices."""
    if g.family != TREE:
        raise FamilyError("tree_nav needs a tree, got %s" % g.family)
    return g.nav(v)


def tree_meet(g, x, y):
    if g.family != TREE:
        raise FamilyError("tree_meet needs a tree, got %s" % g.family)
    return g.meet(x, y)


def neighbors(g, v):
    return g.neighbors(v)


def resolve_origin(g, spec):
    """Map a CLI origin spec (index, 'root', or 'leaf') to a vertex id."""
    if spec == "root":
        return 0
    if spec == "leaf":
        if g.family != TREE:
            raise ParameterError("origin 'leaf' only makes sense on trees")
        return g.vertex_count - 1
    try:
        v = int(spec)
    except (TypeError, ValueError) as exc:
        raise ParameterError("bad origin %r" % (spec,)) from exc
    g.check_vertex(v)
    return v
