"""Independent brute-force oracles.

These deliberately avoid the library's computation paths: ranks come from
subset enumeration over a caller-supplied independence test, graphic
independence from DFS cycle detection, and GF(p) independence from
exhaustive coefficient enumeration.  Expected values asserted in tests
are computed (or were frozen from) these.
"""

from itertools import chain, combinations, product


def subsets(items):
    items = sorted(items)
    return chain.from_iterable(combinations(items, r) for r in range(len(items) + 1))


def brute_rank(independent, subset):
    """Largest independent subset of ``subset`` by enumeration."""
    best = 0
    for cand in subsets(subset):
        if independent(frozenset(cand)):
            best = max(best, len(cand))
    return best


def graphic_independent(edges, subset):
    """Edge set is independent iff inserting its edges never closes a cycle.

    Connectivity is re-checked by a plain DFS over the edges inserted so
    far, keeping this oracle independent of any union-find code.
    """
    added = []

    def reachable(a, b):
        stack, seen = [a], {a}
        while stack:
            x = stack.pop()
            if x == b:
                return True
            for u, v in added:
                for s, t in ((u, v), (v, u)):
                    if s == x and t not in seen:
                        seen.add(t)
                        stack.append(t)
        return False

    for e in sorted(subset):
        u, v = edges[e]
        if u == v or reachable(u, v):
            return False
        added.append((u, v))
    return True


def gf_independent(columns, p, subset):
    """No nontrivial zero combination among the chosen columns."""
    cols = [columns[e] for e in sorted(subset)]
    if not cols:
        return True
    width = len(cols[0])
    for coeffs in product(range(p), repeat=len(cols)):
        if not any(coeffs):
            continue
        total = [0] * width
        for c, vec in zip(coeffs, cols):
            for i, x in enumerate(vec):
                total[i] = (total[i] + c * x) % p
        if not any(total):
            return False
    return True


def count_sets(m, predicate):
    """Count subsets of the ground set satisfying a predicate."""
    return sum(1 for s in subsets(m.ground_set) if predicate(frozenset(s)))


def count_bases(m):
    r = m.rank()
    return count_sets(m, lambda s: len(s) == r and m.independent(s))


def count_independent(m):
    return count_sets(m, m.independent)


def count_spanning(m):
    r = m.rank()
    return count_sets(m, lambda s: m.rank(s) == r)
