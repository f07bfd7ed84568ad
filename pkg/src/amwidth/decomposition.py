"""Amalgam decomposition trees: validation, realization, width, niceness.

A tree node carries its glue matroid K and the sets J1, J2, D of the
glueing step that produces M(v) from the children's matroids.  Ground
sets are derived structurally; rank-level checks run through a bottom-up
"frame" pass that restricts each M(v) to E(K(v)) without realizing the
whole matroid, so validation scales to trees whose realization would be
far beyond the brute-force caps.  ``realize`` is the capped oracle path.
"""

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .amalgam import glue, glue_violations, is_modular_semiflat
from .config import REALIZE_CAP, check_cap, table_cap
from .errors import DomainError, ResourceError, ValidationError
from .matroid import Matroid

__all__ = [
    "DecompositionNode",
    "AmalgamDecomposition",
    "ValidationReport",
    "Violation",
]


@dataclass(frozen=True)
class DecompositionNode:
    nid: str
    children: tuple
    K: Matroid
    J1: frozenset = frozenset()
    J2: frozenset = frozenset()
    D: frozenset = frozenset()

    @property
    def is_leaf(self):
        return not self.children


@dataclass(frozen=True)
class Violation:
    node: str
    code: str
    message: str

    def __str__(self):
        return f"[{self.node}] {self.code}: {self.message}"


class ValidationReport:
    def __init__(self, violations, width):
        self.violations = list(violations)
        self.width = width

    @property
    def ok(self):
        return not self.violations

    def __str__(self):
        if self.ok:
            return f"valid, width {self.width}"
        lines = [f"invalid, width {self.width}"]
        lines.extend(str(v) for v in self.violations)
        return "\n".join(lines)


def _node(nid, children, k, j1=(), j2=(), d=()):
    return DecompositionNode(
        nid=str(nid),
        children=tuple(str(c) for c in children),
        K=k,
        J1=frozenset(j1),
        J2=frozenset(j2),
        D=frozenset(d),
    )


class AmalgamDecomposition:
    """Rooted binary construction tree; immutable once built."""

    def __init__(self, nodes, root):
        self.nodes = {str(n.nid): n for n in nodes}
        self.root = str(root)
        if self.root not in self.nodes:
            raise DomainError(f"root node {root!r} is missing")
        self._cache = {}

    @classmethod
    def build(cls, spec, root):
        """spec: mapping nid -> (children, K, J1, J2, D)."""
        nodes = []
        for nid, entry in spec.items():
            children, k, j1, j2, d = entry
            nodes.append(_node(nid, children, k, j1, j2, d))
        return cls(nodes, root)

    # -- structure ------------------------------------------------------

    def parent_map(self):
        if "parents" not in self._cache:
            parents = {}
            for nid, node in self.nodes.items():
                for c in node.children:
                    if c in parents:
                        raise DomainError(f"node {c!r} has two parents")
                    parents[c] = nid
            self._cache["parents"] = parents
        return self._cache["parents"]

    def postorder(self):
        if "postorder" not in self._cache:
            order = []
            seen = set()
            stack = [(self.root, False)]
            while stack:
                nid, expanded = stack.pop()
                if nid not in self.nodes:
                    raise DomainError(f"child node {nid!r} is missing")
                if expanded:
                    order.append(nid)
                    continue
                if nid in seen:
                    raise DomainError("decomposition tree contains a cycle")
                seen.add(nid)
                stack.append((nid, True))
                for c in reversed(self.nodes[nid].children):
                    stack.append((c, False))
            self._cache["postorder"] = order
        return self._cache["postorder"]

    def ground(self, nid=None):
        """E(M(v)): derived bottom-up from glue ground-set algebra."""
        if "grounds" not in self._cache:
            grounds = {}
            for v in self.postorder():
                node = self.nodes[v]
                if node.is_leaf:
                    grounds[v] = node.K.ground_set
                else:
                    c1, c2 = node.children
                    grounds[v] = (
                        grounds[c1] | grounds[c2] | node.K.ground_set
                    ) - node.D
            self._cache["grounds"] = grounds
        return self._cache["grounds"][str(nid) if nid is not None else self.root]

    def boundary(self, nid):
        """J(v): elements shared with the parent's glue matroid."""
        nid = str(nid)
        parent = self.parent_map().get(nid)
        if parent is None:
            return frozenset()
        return frozenset(self.ground(nid) & self.nodes[parent].K.ground_set)

    def width(self):
        """Maximum |E(K(v))| over the nodes."""
        return max(len(self.nodes[v].K.ground_set) for v in self.postorder())

    def is_anchored(self):
        """Whether every node's parent boundary sits inside its own K."""
        return all(
            self.boundary(v) <= self.nodes[v].K.ground_set for v in self.postorder()
        )

    # -- validation -------------------------------------------------------

    def validate(self):
        if "report" in self._cache:
            return self._cache["report"]
        violations = []
        try:
            order = self.postorder()
        except DomainError as exc:
            report = ValidationReport(
                [Violation(self.root, "structure", str(exc))], 0
            )
            self._cache["report"] = report
            return report
        clean = {}
        frames = {}
        for v in order:
            node = self.nodes[v]
            before = len(violations)
            if len(node.children) not in (0, 2):
                violations.append(
                    Violation(v, "arity", "nodes have zero or exactly two children")
                )
                clean[v] = False
                continue
            if node.is_leaf:
                if node.K.size > 1:
                    violations.append(
                        Violation(v, "leaf-size", "leaf matroids have at most one element")
                    )
                if node.J1 or node.J2 or node.D:
                    violations.append(
                        Violation(v, "leaf-sets", "leaves carry no J1/J2/D sets")
                    )
                clean[v] = len(violations) == before
                if clean[v]:
                    frames[v] = node.K
                continue
            c1, c2 = node.children
            g1, g2 = self.ground(c1), self.ground(c2)
            kg = node.K.ground_set
            if node.J1 != g1 & kg:
                violations.append(
                    Violation(v, "boundary-mismatch", "J1 is not E(M1) & E(K)")
                )
            if node.J2 != g2 & kg:
                violations.append(
                    Violation(v, "boundary-mismatch", "J2 is not E(M2) & E(K)")
                )
            if not g1 & g2 <= kg:
                violations.append(
                    Violation(v, "shared-not-in-glue", "E(M1) & E(M2) is not inside E(K)")
                )
            if not node.D <= kg:
                violations.append(
                    Violation(v, "deletions-not-in-glue", "D is not inside E(K)")
                )
            for label, j in (("j1", node.J1), ("j2", node.J2)):
                try:
                    if not is_modular_semiflat(node.K, j):
                        violations.append(
                            Violation(
                                v,
                                f"semiflat-{label}",
                                f"{label.upper()} is not a modular semiflat in K",
                            )
                        )
                except DomainError as exc:
                    violations.append(Violation(v, f"semiflat-{label}", str(exc)))
            structurally_ok = len(violations) == before
            kids_clean = clean.get(c1, False) and clean.get(c2, False)
            if structurally_ok and kids_clean:
                frame = self._check_restrictions(v, frames, violations)
                if frame is not None and len(violations) == before:
                    frames[v] = frame
            clean[v] = len(violations) == before and kids_clean
        width = max(len(self.nodes[v].K.ground_set) for v in order) if order else 0
        report = ValidationReport(violations, width)
        self._cache["report"] = report
        return report

    def _check_restrictions(self, v, frames, violations):
        """Verify M_i|J_i = K|J_i at node v and return frame(v) if possible.

        frame(v) is M(v) restricted to E(K(v)) minus D(v); children frames
        supply the ranks without realizing anything when the tree is
        anchored, otherwise the capped realization is the fallback.
        """
        node = self.nodes[v]
        child_restrictions = []
        for c, j in zip(node.children, (node.J1, node.J2)):
            fr = frames.get(c)
            if fr is not None and j <= fr.ground_set:
                child_restrictions.append(fr.restrict(j))
                continue
            try:
                child_restrictions.append(self.realize(c, _validated=False).restrict(j))
            except ResourceError:
                violations.append(
                    Violation(
                        v,
                        "unverifiable-restriction",
                        "boundary leaves the child's glue matroid and the "
                        "subtree is too large to realize",
                    )
                )
                return None
        for i, (j, r) in enumerate(
            zip((node.J1, node.J2), child_restrictions), start=1
        ):
            if not r.rank_equal(node.K.restrict(j)):
                violations.append(
                    Violation(v, f"restriction-j{i}", f"M{i}|J{i} differs from K|J{i}")
                )
                return None
        frame = _glue_frame(node, child_restrictions)
        if frame.rank_axiom_violation() is not None:
            violations.append(
                Violation(v, "glue-broken", "glue at this node is not a matroid")
            )
            return None
        return frame

    # -- realization -------------------------------------------------------

    def realize(self, nid=None, _validated=True):
        """M(v) via bottom-up glueing; the brute-force oracle path."""
        nid = str(nid) if nid is not None else self.root
        if _validated:
            report = self.validate()
            if not report.ok:
                raise ValidationError(report)
        key = ("realized", nid)
        if key in self._cache:
            return self._cache[key]
        sub = [w for w in self.postorder() if self._in_subtree(w, nid)]
        if len(self.ground(nid)) > min(REALIZE_CAP, table_cap()):
            raise ResourceError(
                f"realized ground set of node {nid!r} exceeds the brute-force cap"
            )
        done = {}
        for w in sub:
            node = self.nodes[w]
            if node.is_leaf:
                done[w] = node.K
            else:
                c1, c2 = node.children
                done[w] = glue(done[c1], done[c2], node.K, node.D)
            self._cache[("realized", w)] = done[w]
        return done[nid]

    def _in_subtree(self, w, top):
        parents = self.parent_map()
        while w is not None:
            if w == top:
                return True
            w = parents.get(w)
        return False

    # -- niceness ------------------------------------------------------------

    def is_nice(self):
        return all(
            not (self.nodes[v].J1 & self.nodes[v].J2)
            for v in self.postorder()
            if not self.nodes[v].is_leaf
        )

    def to_nice(self):
        """Disjoint child boundaries via parallel duplicates, deleted in place.

        Whenever J1 and J2 share elements, the right subtree's copies are
        renamed to fresh ids, K gains parallel twins under the fresh ids,
        and the twins join D at the same node.  Width at most doubles.
        """
        report = self.validate()
        if not report.ok:
            raise ValidationError(report)
        used = set()
        for v in self.postorder():
            node = self.nodes[v]
            used.update(node.K.ground_set)
            used.update(node.J1 | node.J2 | node.D)
        counter = [max(used, default=0) + 1]
        out = {}

        def fresh():
            counter[0] += 1
            return counter[0] - 1

        def walk(v, rho):
            node = self.nodes[v]
            k = _rename_matroid(node.K, rho)
            j1 = frozenset(rho.get(e, e) for e in node.J1)
            j2 = frozenset(rho.get(e, e) for e in node.J2)
            d = frozenset(rho.get(e, e) for e in node.D)
            if node.is_leaf:
                out[v] = DecompositionNode(v, (), k)
                return
            shared = sorted(j1 & j2)
            rho2 = rho
            if shared:
                twins = {e: fresh() for e in shared}
                k = _parallel_extend(k, twins)
                j2 = (j2 - set(shared)) | set(twins.values())
                d = d | set(twins.values())
                rho2 = {o: twins.get(cur, cur) for o, cur in rho.items()}
                for e in shared:
                    rho2.setdefault(e, twins[e])
            out[v] = DecompositionNode(v, node.children, k, j1, j2, d)
            walk(node.children[0], rho)
            walk(node.children[1], rho2)

        walk(self.root, {})
        return AmalgamDecomposition(out.values(), self.root)


def _rename_matroid(m, rho):
    if not rho or not any(e in rho for e in m.elements):
        return m
    elements = [rho.get(e, e) for e in m.elements]
    names = {rho.get(e, e): n for e, n in m.names.items()}
    return Matroid(elements, m.table, names=names)


def _parallel_extend(m, twins):
    """Append a parallel copy (same rank behavior) for each mapped element."""
    originals = list(twins)
    elements = list(m.elements) + [twins[e] for e in originals]
    n_old, n_new = m.size, len(elements)
    bitmap = np.array(
        [m._index[e] for e in m.elements]
        + [m._index[e] for e in originals],
        dtype=np.int64,
    )
    trans = kernels.translate_all_masks(n_new, bitmap)
    tbl = np.asarray(m.table)[trans]
    return Matroid(elements, tbl, names=m.names)


def _glue_frame(node, child_restrictions):
    """M(v) restricted to E(K(v)) \\ D(v), from child boundary restrictions.

    Applies the parallel-connection rank formula twice over the subset
    lattice of E(K); children enter only through their restrictions to
    J1 and J2, which agree with K there.
    """
    k = node.K
    r1m, r2m = child_restrictions
    nk = k.size
    masks = np.arange(1 << nk, dtype=np.int64)
    clk = np.asarray(k.closure_table())
    tk = np.asarray(k.table).astype(np.int64)
    j1mask = k.mask_of(node.J1)
    j2mask = k.mask_of(node.J2)

    def embed(rm):
        pos = {e: i for i, e in enumerate(k.elements)}
        gather_bitmap = np.full(nk, -1, dtype=np.int64)
        for e, i in rm._index.items():
            gather_bitmap[pos[e]] = i
        gather = kernels.translate_all_masks(nk, gather_bitmap)
        scatter_bitmap = np.array([pos[e] for e in rm.elements], dtype=np.int64)
        scatter = kernels.translate_all_masks(rm.size, scatter_bitmap)
        cl = scatter[np.asarray(rm.closure_table())]
        return gather, scatter, cl, np.asarray(rm.table).astype(np.int64)

    g1, s1, cl1, t1 = embed(r1m)
    g2, s2, cl2, t2 = embed(r2m)

    f1 = cl1[g1[masks & j1mask]]  # cl_{M1}(W & J1) & J1, as K-masks
    w2 = masks | f1
    m1_arg = (clk | masks) & j1mask
    n1_arg = (clk & j1mask) | f1
    rp1 = tk[w2] + t1[g1[m1_arg]] - tk[n1_arg]

    f2 = cl2[g2[masks & j2mask]]
    w = masks | f2
    # closure of X in P1, restricted to J2
    a = clk[masks | f1] & j2mask
    b = cl1[g1[(clk | masks) & j1mask]] & j2mask
    y2 = a | b | (masks & j2mask)
    rp2 = rp1[w] + t2[g2[y2]] - tk[y2 | f2]

    frame = Matroid(k.elements, rp2.astype(np.int8))
    return frame.delete(node.D) if node.D else frame
