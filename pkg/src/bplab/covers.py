"""Weighted path counting on decision diagrams and cut-cover lower bounds.

Edges out of a two-way node weigh 1/2, out of a one-way node 1; a path's
weight is the product of its edge weights. The total weight of paths from
any node to the leaf is 1, so the weight of the paths that read a vertex
set positively measures the fraction of accepted continuations. For a
distant independent set B inside the free vertices of a node, that weight
is bounded by a product over B of (1 - 2^-(ld+1)) terms, which is what
drives the cover-size lower bound 2^(dmw/a_x).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from .bp import Nfbdd, Nrobp, _node_var_masks, _var_of, is_uniform, root_leaf_paths
from .graphs import Graph, Matching, cnf_from_graph, is_dis
from .widths import (
    PrefixPartition,
    _cut_size_mask,
    dmw_exact,
    max_distant_cross_matching,
)

Weight = Union[float, Fraction]


@dataclass(frozen=True)
class NodeContext:
    """Unread vertices, free vertices, and local degrees at a diagram node."""

    node: int
    vert: frozenset[int]
    free: frozenset[int]
    ld: dict[int, int]


@dataclass(frozen=True)
class LowerBoundConstants:
    x: int
    a_x: float
    cover_base: float


@dataclass(frozen=True)
class CompositeBound:
    mw_factor: int
    distant_factor: int
    a5: float
    product: float


def constants(x: int) -> LowerBoundConstants:
    """a_x = 1 / -log2(1 - 2^-(x+1)) and the matching cover base 2^(1/a_x)."""
    if x < 1:
        raise ValueError(f"degree bound must be at least 1, got {x}")
    base = 1.0 / (1.0 - 2.0 ** -(x + 1))
    return LowerBoundConstants(x=x, a_x=1.0 / math.log2(base), cover_base=base)


def coverlb_bound(x: int, t: int) -> Fraction:
    """Exact rational (1 / (1 - 2^-(x+1)))^t."""
    if x < 1:
        raise ValueError(f"degree bound must be at least 1, got {x}")
    if t < 0:
        raise ValueError(f"t must be nonnegative, got {t}")
    return Fraction(2 ** (x + 1), 2 ** (x + 1) - 1) ** t


def composed_bound_constants() -> CompositeBound:
    """The degree-5 constant stack: mw factor 32, distant factor 2*25+10+1, a_5."""
    a5 = constants(5).a_x
    return CompositeBound(mw_factor=32, distant_factor=61, a5=a5, product=a5 * 32 * 61)


def _read_masks(y: Nrobp) -> list[int]:
    masks = _node_var_masks(y)
    if masks is None:
        raise ValueError("program is not uniform")
    return masks


def _parent_neg_masks(y: Nrobp) -> list[int]:
    """Variables read negatively along one deterministic root path per node."""
    from .bp import _topological_order

    order = _topological_order(y)
    assert order is not None
    neg = [0] * y.num_nodes
    for v in order:
        if v == y.root:
            continue
        e = y.in_edges[v][0]
        t, _, lab = y.edges[e]
        neg[v] = neg[t] | (1 << _var_of(lab) if lab is not None and lab < 0 else 0)
    return neg


def _free_mask(g: Graph, read: int, neg: int) -> int:
    blocked = read
    m = neg
    while m:
        bit = m & -m
        m ^= bit
        blocked |= g.nbr_mask[bit.bit_length() - 1]
    return ((1 << g.n) - 1) & ~blocked


def node_context(y: Nfbdd, g: Graph, a: int) -> NodeContext:
    """Context of node a in a diagram for the clause graph g."""
    if y.num_vars != g.n:
        raise ValueError(f"diagram reads {y.num_vars} variables but g has {g.n} vertices")
    if not 0 <= a < y.num_nodes:
        raise ValueError(f"node {a} out of range")
    read = _read_masks(y)[a]
    neg = _parent_neg_masks(y)[a]
    vert_mask = ((1 << g.n) - 1) & ~read
    free = _free_mask(g, read, neg)
    ld = {v: (g.nbr_mask[v] & vert_mask).bit_count() for v in range(g.n)}
    return NodeContext(
        node=a,
        vert=frozenset(v for v in range(g.n) if vert_mask >> v & 1),
        free=frozenset(v for v in range(g.n) if free >> v & 1),
        ld=ld,
    )


def _node_weights(y: Nfbdd, exact: bool) -> list[Weight]:
    half: Weight = Fraction(1, 2) if exact else 0.5
    one: Weight = Fraction(1) if exact else 1.0
    return [half if len(y.out_edges[v]) == 2 else one for v in range(y.num_nodes)]


def _totals(y: Nfbdd, exact: bool = False) -> list[Weight]:
    from .bp import _topological_order

    order = _topological_order(y)
    assert order is not None
    w = _node_weights(y, exact)
    one: Weight = Fraction(1) if exact else 1.0
    zero: Weight = Fraction(0) if exact else 0.0
    total: list[Weight] = [zero] * y.num_nodes
    total[y.leaf] = one
    for v in reversed(order):
        if v == y.leaf:
            continue
        total[v] = sum((w[v] * total[y.edges[i][1]] for i in y.out_edges[v]), zero)
    return total


def path_weight_total(y: Nfbdd, a: int, exact: bool = False) -> Weight:
    """Total weight of a-to-leaf paths; equals 1 at every node."""
    if not 0 <= a < y.num_nodes:
        raise ValueError(f"node {a} out of range")
    return _totals(y, exact)[a]


def covered_weight(y: Nfbdd, a: int, s: Iterable[int], exact: bool = False,
                   cap: int = 10) -> Weight:
    """Weight of a-to-leaf paths reading every variable of s positively."""
    sset = frozenset(s)
    for v in sset:
        if not 0 <= v < y.num_vars:
            raise ValueError(f"vertex {v} out of range")
    if len(sset) > cap:
        raise ValueError(f"{len(sset)} vertices exceed the subset cap {cap}")
    if not 0 <= a < y.num_nodes:
        raise ValueError(f"node {a} out of range")
    pos = {v: i for i, v in enumerate(sorted(sset))}
    w = _node_weights(y, exact)
    one: Weight = Fraction(1) if exact else 1.0
    zero: Weight = Fraction(0) if exact else 0.0
    memo: dict[tuple[int, int], Weight] = {}

    def go(v: int, need: int) -> Weight:
        if v == y.leaf:
            return one if need == 0 else zero
        key = (v, need)
        cached = memo.get(key)
        if cached is not None:
            return cached
        acc = zero
        for i in y.out_edges[v]:
            _, h, lab = y.edges[i]
            var = _var_of(lab)
            nd = need
            if var in pos:
                bit = 1 << pos[var]
                if need & bit:
                    if lab < 0:
                        continue
                    nd = need & ~bit
            acc += w[v] * go(h, nd)
        memo[key] = acc
        return acc

    return go(a, (1 << len(sset)) - 1)


def relative_weight(ctx: NodeContext, b: Iterable[int], exact: bool = False) -> Weight:
    """Product over b of (1 - 2^-(ld(v)+1)); b must sit inside ctx.vert."""
    bset = frozenset(b)
    extra = bset - ctx.vert
    if extra:
        raise ValueError(f"vertices {sorted(extra)} are already read at node {ctx.node}")
    acc: Weight = Fraction(1) if exact else 1.0
    for v in sorted(bset):
        d = ctx.ld[v]
        if exact:
            acc *= 1 - Fraction(1, 2 ** (d + 1))
        else:
            acc *= 1.0 - 2.0 ** -(d + 1)
    return acc


@dataclass
class DeepcoverReport:
    nodes: int
    dis_count: int
    pairs_checked: int
    side_checks: int
    violations: list[str]

    @property
    def ok(self) -> bool:
        return not self.violations


def _all_dis(g: Graph, max_size: int) -> list[tuple[int, ...]]:
    out = []
    for size in range(1, max_size + 1):
        for combo in itertools.combinations(range(g.n), size):
            if is_dis(g, combo):
                out.append(combo)
    return out


def verify_deepcover(y: Nfbdd, g: Graph, max_dis_size: int = 3, tol: float = 1e-9,
                     exact: bool = False) -> DeepcoverReport:
    """Sweep every node and DIS B inside its free set: covered <= relative weight.

    Also checks, for each node a whose variable's vertex v lies in B, that
    the positive out-edges land on nodes whose free set still contains
    B minus v.
    """
    from .bp import _topological_order

    if y.num_vars != g.n:
        raise ValueError(f"diagram reads {y.num_vars} variables but g has {g.n} vertices")
    order = _topological_order(y)
    assert order is not None
    read = _read_masks(y)
    negs = _parent_neg_masks(y)
    full_v = (1 << g.n) - 1
    vert = [full_v & ~read[v] for v in range(y.num_nodes)]
    free = [_free_mask(g, read[v], negs[v]) for v in range(y.num_nodes)]
    w = _node_weights(y, exact)
    one: Weight = Fraction(1) if exact else 1.0
    zero: Weight = Fraction(0) if exact else 0.0
    rev = [v for v in reversed(order) if v != y.leaf]

    violations: list[str] = []
    pairs = 0
    side_checks = 0
    dis_list = _all_dis(g, max_dis_size)
    for combo in dis_list:
        bmask = 0
        pos = {}
        for i, v in enumerate(combo):
            bmask |= 1 << v
            pos[v] = i
        nbits = len(combo)
        fullneed = (1 << nbits) - 1
        dp = [[zero] * (fullneed + 1) for _ in range(y.num_nodes)]
        dp[y.leaf][0] = one
        for v in rev:
            row = dp[v]
            for need in range(fullneed + 1):
                acc = zero
                for i in y.out_edges[v]:
                    _, h, lab = y.edges[i]
                    var = _var_of(lab)
                    nd = need
                    if var in pos:
                        bit = 1 << pos[var]
                        if need & bit:
                            if lab < 0:
                                continue
                            nd = need & ~bit
                    acc += w[v] * dp[h][nd]
                row[need] = acc
        for a in range(y.num_nodes):
            if bmask & ~free[a]:
                continue
            pairs += 1
            cov = dp[a][fullneed]
            rw: Weight = one
            for v in combo:
                d = (g.nbr_mask[v] & vert[a]).bit_count()
                rw *= (1 - Fraction(1, 2 ** (d + 1))) if exact else (1.0 - 2.0 ** -(d + 1))
            bad = cov > rw if exact else cov > rw + tol
            if bad:
                violations.append(
                    f"node {a}, B={list(combo)}: covered weight {cov} exceeds bound {rw}")
            av = y.var_of[a]
            if av is not None and av in pos:
                for i in y.out_edges[a]:
                    _, h, lab = y.edges[i]
                    if lab > 0:
                        side_checks += 1
                        rest = bmask & ~(1 << av)
                        if rest & ~free[h]:
                            violations.append(
                                f"node {a} -> {h}: B minus {av} leaves the free set")
    return DeepcoverReport(
        nodes=y.num_nodes,
        dis_count=len(dis_list),
        pairs_checked=pairs,
        side_checks=side_checks,
        violations=violations,
    )


def _min_set_cover(universe: int, masks: list[int]) -> list[int]:
    """Smallest subfamily covering universe; indices, deterministic."""
    best: list[int] | None = None

    def bnb(uncovered: int, chosen: list[int]) -> None:
        nonlocal best
        if not uncovered:
            if best is None or len(chosen) < len(best):
                best = list(chosen)
            return
        limit = len(masks) + 1 if best is None else len(best)
        maxcov = max((m & uncovered).bit_count() for m in masks)
        need = -((-uncovered.bit_count()) // maxcov)
        if len(chosen) + need >= limit:
            return
        # branch on the uncovered element with the fewest covering sets
        elem = -1
        elem_sets: list[int] = []
        u = uncovered
        while u:
            bit = u & -u
            u ^= bit
            sets_here = [i for i, m in enumerate(masks) if m & bit]
            if elem < 0 or len(sets_here) < len(elem_sets):
                elem = bit.bit_length() - 1
                elem_sets = sets_here
        for i in elem_sets:
            chosen.append(i)
            bnb(uncovered & ~masks[i], chosen)
            chosen.pop()

    bnb(universe, [])
    assert best is not None
    return best


def min_dis_cover(g: Graph, t: int, cap: int = 20) -> tuple[int, tuple[frozenset[int], ...]]:
    """Minimum number of size-t DISes covering all satisfying assignments of the
    clause-per-edge CNF of g, with a witness cover."""
    if t < 0:
        raise ValueError(f"t must be nonnegative, got {t}")
    cnf = cnf_from_graph(g)
    n = g.n
    if n > cap:
        raise ValueError(f"refusing exhaustive enumeration over {n} variables (cap {cap})")
    sats = [mask for mask in range(1 << n)
            if all(mask >> u & 1 or mask >> v & 1 for u, v in cnf.clauses)]
    dis_sets = [combo for combo in itertools.combinations(range(n), t) if is_dis(g, combo)]
    if not dis_sets:
        raise ValueError(f"no DIS of size {t} exists")
    cover_masks = []
    for combo in dis_sets:
        m = 0
        for i, sat in enumerate(sats):
            if all(sat >> v & 1 for v in combo):
                m |= 1 << i
        cover_masks.append(m)
    universe = (1 << len(sats)) - 1
    reachable = 0
    for m in cover_masks:
        reachable |= m
    if reachable != universe:
        i = (universe & ~reachable).bit_length() - 1
        positives = [v for v in range(n) if sats[i] >> v & 1]
        raise ValueError(
            f"satisfying assignment with positives {positives} is covered by no size-{t} DIS")
    chosen = _min_set_cover(universe, cover_masks)
    return len(chosen), tuple(frozenset(dis_sets[i]) for i in chosen)


@dataclass(frozen=True)
class CutCoverCertificate:
    """A node cut with one DIS and distant matching per cut node.

    Every root-leaf path passes through some cut node, every satisfying
    assignment is covered by that node's DIS, and the number of cut nodes
    is at least 2^(dmw / a_x).
    """

    cut_nodes: tuple[int, ...]
    dis_sets: tuple[frozenset[int], ...]
    matchings: tuple[Matching, ...]
    dmw: int
    bound: float

    @property
    def q(self) -> int:
        return len(self.cut_nodes)


def _ancestors(z: Nrobp, node: int) -> set[int]:
    seen = {node}
    stack = [node]
    while stack:
        v = stack.pop()
        for i in z.in_edges[v]:
            t = z.edges[i][0]
            if t not in seen:
                seen.add(t)
                stack.append(t)
    return seen


def _descendants(z: Nrobp, node: int) -> set[int]:
    seen = {node}
    stack = [node]
    while stack:
        v = stack.pop()
        for i in z.out_edges[v]:
            h = z.edges[i][1]
            if h not in seen:
                seen.add(h)
                stack.append(h)
    return seen


def extract_cut_cover(z: Nrobp, g: Graph, path_cap: int = 20000) -> CutCoverCertificate:
    """Build a cut-cover certificate from a uniform program for g's clauses.

    Walk each root-leaf path to its earliest node whose read/unread vertex
    split carries a distant matching of size dmw(g); per matching edge,
    keep the endpoint that every path through the node reads positively
    (the lower vertex id when both qualify).
    """
    if z.num_vars != g.n:
        raise ValueError(f"program reads {z.num_vars} variables but g has {g.n} vertices")
    if not is_uniform(z):
        raise ValueError("program must be uniform")
    d = dmw_exact(g).value
    if d == 0:
        raise ValueError("graph has no edges, nothing to certify")

    missing = object()
    qual: dict[int, Matching | None] = {}
    cut: dict[int, tuple[int, Matching]] = {}
    for path in root_leaf_paths(z, cap=path_cap):
        mask = 0
        hit = None
        for eidx in path:
            _, h, lab = z.edges[eidx]
            if lab is not None:
                mask |= 1 << _var_of(lab)
            if h == z.leaf:
                break
            if mask == 0:
                continue
            res = qual.get(mask, missing)
            if res is missing:
                res = None
                if _cut_size_mask(g, mask) >= d:
                    prefix = [v for v in range(g.n) if mask >> v & 1]
                    m = max_distant_cross_matching(g, PrefixPartition.split(g, prefix))
                    if len(m) >= d:
                        res = Matching(m.edges[:d])
                qual[mask] = res
            if res is not None:
                hit = (h, mask, res)
                break
        if hit is None:
            raise RuntimeError("a root-leaf path admits no qualifying split")
        node, mask, m = hit
        cut.setdefault(node, (mask, m))

    neg_edges: dict[int, list[tuple[int, int]]] = {}
    for t, h, lab in z.edges:
        if lab is not None and lab < 0:
            neg_edges.setdefault(_var_of(lab), []).append((t, h))

    nodes = []
    dis_sets = []
    matchings = []
    for node in sorted(cut):
        mask, m = cut[node]
        anc = _ancestors(z, node)
        desc = _descendants(z, node)
        picks = []
        for a, b in m.edges:
            u1 = a if mask >> a & 1 else b
            u2 = b if u1 == a else a
            ok1 = not any(h in anc for _, h in neg_edges.get(u1, ()))
            ok2 = not any(t in desc for t, _ in neg_edges.get(u2, ()))
            if ok1 and ok2:
                picks.append(min(u1, u2))
            elif ok1:
                picks.append(u1)
            elif ok2:
                picks.append(u2)
            else:
                raise RuntimeError(
                    f"neither endpoint of ({a}, {b}) covers all paths through node {node}")
        bset = frozenset(picks)
        assert len(bset) == d and is_dis(g, bset)
        nodes.append(node)
        dis_sets.append(bset)
        matchings.append(m)
    bound = 2.0 ** (d / constants(g.max_degree()).a_x)
    return CutCoverCertificate(
        cut_nodes=tuple(nodes),
        dis_sets=tuple(dis_sets),
        matchings=tuple(matchings),
        dmw=d,
        bound=bound,
    )
