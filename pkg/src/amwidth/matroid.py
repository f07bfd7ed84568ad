"""Ground sets, rank oracles, and concrete matroid constructors.

Every matroid is materialized as a full rank table indexed by subset
bitmask over a fixed element order (the hot paths in the rest of the
package are table gathers).  Element ids are arbitrary ints, unique
within a ground set and stable under minors.  Instances are immutable;
all operations return new values and are safe to share across threads.
"""

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .config import CIRCUITS_CAP, check_cap, table_cap
from .errors import DomainError
from .linalg import check_field

__all__ = [
    "Matroid",
    "LinearRep",
    "GraphDescription",
    "two_sum",
    "restrictions_equal",
]


@dataclass(frozen=True)
class LinearRep:
    """GF(p) representation: a residue vector per element."""

    field: int
    columns: dict  # id -> tuple of residues

    @property
    def dimension(self):
        return len(next(iter(self.columns.values()))) if self.columns else 0


@dataclass(frozen=True)
class GraphDescription:
    """Edge map of a graphic matroid; loops allowed."""

    vertices: tuple
    edges: dict = field(default_factory=dict)  # id -> (u, v)


class Matroid:
    """Immutable matroid backed by a dense rank table."""

    __slots__ = ("elements", "_index", "_tbl", "names", "linear", "graph", "_cl")

    def __init__(self, elements, table, names=None, linear=None, graph=None):
        elements = tuple(int(e) for e in elements)
        if len(set(elements)) != len(elements):
            raise DomainError("duplicate element ids in ground set")
        check_cap(len(elements), table_cap(), "rank table")
        tbl = np.asarray(table, dtype=np.int8)
        if tbl.shape != (1 << len(elements),):
            raise DomainError("rank table size does not match the ground set")
        tbl = tbl.copy()
        tbl.setflags(write=False)
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "_index", {e: i for i, e in enumerate(elements)})
        object.__setattr__(self, "_tbl", tbl)
        object.__setattr__(self, "names", dict(names or {}))
        object.__setattr__(self, "linear", linear)
        object.__setattr__(self, "graph", graph)
        object.__setattr__(self, "_cl", None)

    def __setattr__(self, name, value):
        raise AttributeError("Matroid instances are immutable")

    # -- construction -------------------------------------------------

    @classmethod
    def from_linear(cls, columns, p, names=None):
        """Vector matroid of the given columns over GF(p)."""
        check_field(p)
        ids = list(columns)
        vecs = [tuple(int(x) % p for x in columns[e]) for e in ids]
        dims = {len(v) for v in vecs}
        if len(dims) > 1:
            raise DomainError("columns must share one dimension")
        d = dims.pop() if dims else 0
        check_cap(len(ids), table_cap(), "rank table")
        mat = np.array(vecs, dtype=np.int64).T.reshape(d, len(ids))
        tbl = kernels.gf_rank_table(mat, p)
        rep = LinearRep(field=p, columns={e: v for e, v in zip(ids, vecs)})
        return cls(ids, tbl, names=names, linear=rep)

    @classmethod
    def from_graph(cls, edges, names=None):
        """Cycle matroid: rank of an edge set is |V touched| - #components."""
        ids = list(edges)
        verts = sorted({v for pair in edges.values() for v in pair})
        vmap = {v: i for i, v in enumerate(verts)}
        eu = np.array([vmap[edges[e][0]] for e in ids], dtype=np.int64)
        ev = np.array([vmap[edges[e][1]] for e in ids], dtype=np.int64)
        check_cap(len(ids), table_cap(), "rank table")
        tbl = kernels.graphic_rank_table(eu, ev, max(len(verts), 1))
        desc = GraphDescription(
            vertices=tuple(verts),
            edges={e: (edges[e][0], edges[e][1]) for e in ids},
        )
        return cls(ids, tbl, names=names, graph=desc)

    @classmethod
    def from_independent_sets(cls, elements, independent, names=None):
        """Matroid whose independent sets are the down-closure of ``independent``."""
        elements = list(elements)
        check_cap(len(elements), table_cap(), "rank table")
        index = {e: i for i, e in enumerate(elements)}
        n = len(elements)
        ind = np.zeros(1 << n, dtype=bool)
        ind[0] = True
        for s in independent:
            m = 0
            for e in s:
                if e not in index:
                    raise DomainError(f"unknown element id {e!r} in independent set")
                m |= 1 << index[e]
            ind[m] = True
        # down-close: subsets of independent sets are independent
        for b in range(n):
            bit = 1 << b
            hi = np.nonzero((np.arange(1 << n, dtype=np.int64) & bit) != 0)[0]
            ind[hi ^ bit] |= ind[hi]
        tbl = kernels.rank_table_from_independence(ind)
        m = cls(elements, tbl, names=names)
        bad = m.rank_axiom_violation()
        if bad is not None:
            raise DomainError(f"independent sets do not define a matroid: {bad}")
        return m

    @classmethod
    def from_circuits(cls, elements, circs, names=None, validate=True):
        """Matroid whose dependent sets are supersets of the given circuits."""
        elements = list(elements)
        check_cap(len(elements), table_cap(), "rank table")
        index = {e: i for i, e in enumerate(elements)}
        n = len(elements)
        flags = np.zeros(1 << n, dtype=bool)
        for c in circs:
            m = 0
            for e in c:
                if e not in index:
                    raise DomainError(f"unknown element id {e!r} in circuit")
                m |= 1 << index[e]
            if m == 0:
                raise DomainError("the empty set cannot be a circuit")
            flags[m] = True
        dep = kernels.subset_any(flags, n)
        tbl = kernels.rank_table_from_independence(~dep)
        m = cls(elements, tbl, names=names)
        if validate:
            bad = m.rank_axiom_violation()
            if bad is not None:
                raise DomainError(f"circuits do not define a matroid: {bad}")
        return m

    @classmethod
    def from_rank_function(cls, elements, fn, names=None):
        elements = list(elements)
        check_cap(len(elements), table_cap(), "rank table")
        n = len(elements)
        tbl = np.zeros(1 << n, dtype=np.int8)
        for mask in range(1 << n):
            subset = frozenset(elements[i] for i in range(n) if mask >> i & 1)
            tbl[mask] = fn(subset)
        return cls(elements, tbl, names=names)

    @classmethod
    def uniform(cls, r, ids):
        """U_{r,n}: every set of at most r elements is independent."""
        ids = list(ids)
        pops = kernels.popcounts(len(ids))
        return cls(ids, np.minimum(pops, r))

    @classmethod
    def free(cls, ids):
        ids = list(ids)
        return cls(ids, kernels.popcounts(len(ids)))

    @classmethod
    def single(cls, e, loop=False):
        return cls([e], np.array([0, 0 if loop else 1], dtype=np.int8))

    @classmethod
    def empty(cls):
        return cls([], np.zeros(1, dtype=np.int8))

    # -- mask plumbing -------------------------------------------------

    @property
    def size(self):
        return len(self.elements)

    @property
    def ground_set(self):
        return frozenset(self.elements)

    @property
    def full_mask(self):
        return (1 << len(self.elements)) - 1

    @property
    def table(self):
        return self._tbl

    def mask_of(self, subset):
        m = 0
        for e in subset:
            i = self._index.get(e)
            if i is None:
                raise DomainError(f"unknown element id {e!r}")
            m |= 1 << i
        return m

    def set_of(self, mask):
        return frozenset(
            self.elements[i] for i in range(len(self.elements)) if mask >> i & 1
        )

    def closure_table(self):
        if self._cl is None:
            object.__setattr__(
                self, "_cl", kernels.closure_table(self._tbl, len(self.elements))
            )
        return self._cl

    # -- rank primitives ----------------------------------------------

    def rank(self, subset=None):
        if subset is None:
            return int(self._tbl[self.full_mask])
        return int(self._tbl[self.mask_of(subset)])

    def rank_mask(self, mask):
        return int(self._tbl[mask])

    def closure(self, subset):
        return self.set_of(int(self.closure_table()[self.mask_of(subset)]))

    def closure_mask(self, mask):
        return int(self.closure_table()[mask])

    def is_flat(self, subset):
        m = self.mask_of(subset)
        return int(self.closure_table()[m]) == m

    def flat_masks(self):
        cl = self.closure_table()
        masks = np.arange(1 << len(self.elements), dtype=np.int64)
        return masks[cl == masks]

    def loops(self):
        return frozenset(e for e in self.elements if self.rank([e]) == 0)

    def coloops(self):
        full = self.rank()
        return frozenset(
            e for e in self.elements if self.rank(self.ground_set - {e}) == full - 1
        )

    def independent(self, subset):
        m = self.mask_of(subset)
        return int(self._tbl[m]) == bin(m).count("1")

    def circuits(self):
        """All inclusion-minimal dependent sets."""
        n = len(self.elements)
        check_cap(n, CIRCUITS_CAP, "circuit enumeration")
        pops = kernels.popcounts(n)
        dep = np.asarray(self._tbl) < pops
        circ = dep.copy()
        masks = np.arange(1 << n, dtype=np.int64)
        for b in range(n):
            bit = 1 << b
            hi = np.nonzero((masks & bit) != 0)[0]
            circ[hi] &= ~dep[hi ^ bit]
        return frozenset(self.set_of(int(m)) for m in np.nonzero(circ)[0])

    # -- minors ---------------------------------------------------------

    def _minor_tables(self, keep_ids):
        keep = [e for e in self.elements if e in keep_ids]
        bitmap = [-1] * len(keep)
        for new_pos, e in enumerate(keep):
            bitmap[new_pos] = self._index[e]
        # bitmap maps new position -> old position; build gather array
        trans = kernels.translate_all_masks(
            len(keep), np.array(bitmap, dtype=np.int64)
        )
        return keep, trans

    def delete(self, subset):
        dropped = frozenset(subset)
        self.mask_of(dropped)  # validates ids
        keep, trans = self._minor_tables(self.ground_set - dropped)
        tbl = np.asarray(self._tbl)[trans]
        names = {e: n for e, n in self.names.items() if e in keep}
        return Matroid(keep, tbl, names=names)

    def restrict(self, subset):
        keep = frozenset(subset)
        self.mask_of(keep)
        return self.delete(self.ground_set - keep)

    def contract(self, subset):
        cset = frozenset(subset)
        cmask = self.mask_of(cset)
        keep, trans = self._minor_tables(self.ground_set - cset)
        base = int(self._tbl[cmask])
        tbl = np.asarray(self._tbl)[trans | cmask] - base
        names = {e: n for e, n in self.names.items() if e in keep}
        return Matroid(keep, tbl.astype(np.int8), names=names)

    def separation_width(self, side):
        """Least k for which (side, complement) is a k-separation."""
        a = self.mask_of(side)
        b = self.full_mask ^ a
        return int(self._tbl[a]) + int(self._tbl[b]) - int(self._tbl[self.full_mask]) + 1

    # -- axioms ----------------------------------------------------------

    def rank_axiom_violation(self):
        """None if the table is a matroid rank function, else (kind, A, B)."""
        code, a, b = kernels.check_rank_axioms(self._tbl, len(self.elements))
        if code == 0:
            return None
        kind = {1: "empty-rank", 2: "unit-increase", 3: "submodularity"}[int(code)]
        return kind, self.set_of(int(a)), self.set_of(int(b))

    # -- comparison -------------------------------------------------------

    def rank_equal(self, other):
        """Label-sensitive equality: same ground set, same rank on every subset."""
        if self.ground_set != other.ground_set:
            return False
        bitmap = np.array(
            [self._index[e] for e in other.elements], dtype=np.int64
        )
        trans = kernels.translate_all_masks(len(other.elements), bitmap)
        return bool(np.array_equal(np.asarray(other._tbl), np.asarray(self._tbl)[trans]))

    def __repr__(self):
        return f"Matroid(n={len(self.elements)}, r={self.rank() if self.elements else 0})"


def restrictions_equal(m1, m2, shared):
    """Whether m1|shared = m2|shared, label-sensitively (ranks of all subsets)."""
    shared = list(shared)
    for e in shared:
        if e not in m1._index or e not in m2._index:
            raise DomainError(f"element {e!r} is not common to both matroids")
    b1 = np.array([m1._index[e] for e in shared], dtype=np.int64)
    b2 = np.array([m2._index[e] for e in shared], dtype=np.int64)
    t1 = kernels.translate_all_masks(len(shared), b1)
    t2 = kernels.translate_all_masks(len(shared), b2)
    return bool(
        np.array_equal(np.asarray(m1._tbl)[t1], np.asarray(m2._tbl)[t2])
    )


def two_sum(m1, m2, p1, p2):
    """2-sum along p1 in m1 and p2 in m2, built from the circuit formula."""
    if p1 not in m1._index:
        raise DomainError(f"{p1!r} is not an element of the first matroid")
    if p2 not in m2._index:
        raise DomainError(f"{p2!r} is not an element of the second matroid")
    for m, p, side in ((m1, p1, "first"), (m2, p2, "second")):
        if m.rank([p]) == 0:
            raise DomainError(f"{p!r} is a loop of the {side} matroid")
        if p in m.coloops():
            raise DomainError(f"{p!r} is a coloop of the {side} matroid")
    g1 = m1.ground_set - {p1}
    g2 = m2.ground_set - {p2}
    if g1 & g2 or p1 in g2 or p2 in g1:
        raise DomainError("ground sets overlap beyond the glue elements")
    c1 = m1.circuits()
    c2 = m2.circuits()
    circs = set()
    circs.update(c for c in c1 if p1 not in c)
    circs.update(c for c in c2 if p2 not in c)
    for a in c1:
        if p1 not in a:
            continue
        for b in c2:
            if p2 in b:
                circs.add((a - {p1}) | (b - {p2}))
    ground = [e for e in m1.elements if e != p1] + [e for e in m2.elements if e != p2]
    return Matroid.from_circuits(ground, circs)
