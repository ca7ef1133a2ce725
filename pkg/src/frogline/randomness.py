"""Seeded randomness: Poisson configurations with a superposition coupling,
and per-particle walk streams.

The coupling works like this: every vertex carries the arrival marks of a
unit-rate Poisson process on [0, lambda_max], sampled once per (seed,
lambda_max). The particles present at density lambda are exactly the marks
with position <= lambda, plus the planted particle at the origin. For
lambda <= lambda' the lambda-particles are a sub-multiset of the
lambda'-particles, and each particle keeps the same walk stream (keyed by
(vertex, mark rank), not by lambda), so susceptibility and cover time are
pointwise monotone in lambda on shared seeds.

Asking for lambda > lambda_max raises instead of resampling; a silent
resample would break the coupling.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterError
from .graph import COMPLETE, CYCLE, TREE

# spawn-key namespaces; distinct first components keep stream families disjoint
_NS_CONFIG = 0
_NS_MARK_WALK = 1
_NS_PLANT_WALK = 2
_NS_AUX = 3


def _generator(seed, spawn_key):
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(
        entropy=seed, spawn_key=spawn_key)))


def substream(seed, *key):
    """Independent Generator for an auxiliary purpose (trials, range samples...)."""
    return _generator(seed, (_NS_AUX,) + tuple(int(k) for k in key))


@dataclass
class FrogInit:
    """One realized initial configuration at density `lam`.

    counts[v] includes the planted particle at the origin. The mark arrays
    describe the full coupling measure up to lam_max and are shared by any
    re-view at a smaller lambda.
    """

    g: object
    lam: float
    lam_max: float
    origin: int
    seed: int
    counts: np.ndarray
    mark_counts: np.ndarray
    marks_flat: np.ndarray = field(repr=False)
    marks_vertex: np.ndarray = field(repr=False)
    marks_indptr: np.ndarray = field(repr=False)

    @property
    def planted_pid(self):
        return len(self.marks_flat)

    def particle_count(self):
        return int(self.counts.sum())

    def pids_at(self, v):
        """Particle ids living at vertex v under the current lambda."""
        base = int(self.marks_indptr[v])
        out = list(range(base, base + int(self.mark_counts[v])))
        if v == self.origin:
            out.append(self.planted_pid)
        return out

    def start_vertex(self, pid):
        if pid == self.planted_pid:
            return self.origin
        return int(self.marks_vertex[pid])

    def walk_spawn_key(self, pid):
        # keyed by (vertex, rank within the vertex's sorted marks): a particle
        # keeps its walk across different lambda views of the same seed
        if pid == self.planted_pid:
            return (_NS_PLANT_WALK, int(self.origin))
        v = int(self.marks_vertex[pid])
        rank = pid - int(self.marks_indptr[v])
        return (_NS_MARK_WALK, v, rank)

    def at_lambda(self, lam):
        """Re-view the same realization at a different density <= lam_max."""
        if lam < 0:
            raise ParameterError("lambda must be >= 0, got %r" % (lam,))
        if lam > self.lam_max:
            raise ParameterError(
                "lambda %r exceeds lambda_max %r; resampling would break the "
                "coupling" % (lam, self.lam_max))
        mark_counts = np.bincount(
            self.marks_vertex[self.marks_flat <= lam],
            minlength=self.g.vertex_count).astype(np.int64)
        counts = mark_counts.copy()
        counts[self.origin] += 1
        return FrogInit(self.g, lam, self.lam_max, self.origin, self.seed,
                        counts, mark_counts, self.marks_flat,
                        self.marks_vertex, self.marks_indptr)


def init_config(g, lam, origin, seed, lam_max=None):
    """Sample the Poisson configuration: Pois(lam) per vertex plus the plant."""
    if lam < 0:
        raise ParameterError("lambda must be >= 0, got %r" % (lam,))
    if lam_max is None:
        lam_max = lam
    if lam > lam_max:
        raise ParameterError("lambda %r exceeds lambda_max %r" % (lam, lam_max))
    g.check_vertex(origin)
    V = g.vertex_count
    rng = _generator(seed, (_NS_CONFIG,))
    per_vertex = rng.poisson(lam_max, size=V).astype(np.int64)
    total = int(per_vertex.sum())
    positions = rng.random(total) * lam_max
    vertex = np.repeat(np.arange(V, dtype=np.int64), per_vertex)
    order = np.lexsort((positions, vertex))
    marks_flat = positions[order]
    marks_vertex = vertex  # already vertex-sorted; lexsort only reorders within
    indptr = np.zeros(V + 1, dtype=np.int64)
    np.cumsum(per_vertex, out=indptr[1:])
    init = FrogInit(g, lam_max, lam_max, origin, seed,
                    counts=np.zeros(V, dtype=np.int64),
                    mark_counts=per_vertex,
                    marks_flat=marks_flat, marks_vertex=marks_vertex,
                    marks_indptr=indptr)
    return init.at_lambda(lam)


def walk_step(g, v, stream):
    """One uniform step from v; deterministic given the stream state."""
    nbrs = g.neighbors(v)
    return nbrs[stream.integers(0, len(nbrs))]


def generate_steps(g, start, nsteps, gen):
    """`nsteps` SRW steps from `start` (start itself excluded).

    Consumes exactly `nsteps` variates from `gen`, so extending a walk in
    blocks of any size yields the same trajectory.
    """
    if nsteps <= 0:
        return np.empty(0, dtype=np.int64)
    V = g.vertex_count
    if g.family == COMPLETE:
        r = gen.integers(1, V, size=nsteps)
        return (start + np.cumsum(r)) % V
    if g.family == CYCLE:
        r = gen.integers(0, 2, size=nsteps)
        return (start + np.cumsum(2 * r - 1)) % V
    # tree: degree depends on position, so step sequentially; one uniform
    # double per step keeps consumption chunk-invariant
    us = gen.random(nsteps)
    out = np.empty(nsteps, dtype=np.int64)
    d = g.d
    first_leaf = g.first_leaf
    v = int(start)
    for i in range(nsteps):
        if v == 0:
            v = 1 + int(us[i] * d)
        elif v >= first_leaf:
            v = (v - 1) // d
        else:
            r = int(us[i] * (d + 1))
            v = (v - 1) // d if r == 0 else d * v + r
        out[i] = v
    return out


class _Walk:
    __slots__ = ("buf", "used", "gen")

    def __init__(self, start, gen):
        self.buf = np.empty(64, dtype=np.int64)
        self.buf[0] = start
        self.used = 1  # entries filled, start included
        self.gen = gen


class WalkStore:
    """Lazily extended per-particle trajectories, one substream each.

    prefix(pid, t) returns positions 0..t of particle pid's walk (index 0 is
    the start vertex). Already-generated steps never change when a walk is
    extended.
    """

    def __init__(self, g, init):
        self.g = g
        self.init = init
        self._walks = {}
        self.steps_generated = 0

    def _walk(self, pid):
        w = self._walks.get(pid)
        if w is None:
            gen = _generator(self.init.seed, self.init.walk_spawn_key(pid))
            w = _Walk(self.init.start_vertex(pid), gen)
            self._walks[pid] = w
        return w

    def ensure(self, pid, nsteps):
        w = self._walk(pid)
        need = nsteps + 1
        if w.used >= need:
            return w
        if len(w.buf) < need:
            cap = len(w.buf)
            while cap < need:
                cap *= 2
            buf = np.empty(cap, dtype=np.int64)
            buf[:w.used] = w.buf[:w.used]
            w.buf = buf
        k = need - w.used
        block = generate_steps(self.g, int(w.buf[w.used - 1]), k, w.gen)
        w.buf[w.used:need] = block
        w.used = need
        self.steps_generated += k
        return w

    def prefix(self, pid, nsteps):
        w = self.ensure(pid, nsteps)
        return w.buf[:nsteps + 1]

    def position(self, pid, step):
        w = self.ensure(pid, step)
        return int(w.buf[step])
