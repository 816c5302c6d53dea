"""Nondeterministic read-once branching programs and their decision-diagram form.

A program is a DAG with one root (unique source), one leaf (unique sink),
and edges optionally labeled with literals; parallel edges are allowed.
No directed path may read a variable twice. The set a program accepts is
the union, over root-leaf paths P, of all total extensions of the literal
set A(P). A program is uniform when all root-to-a paths read the same
variable set for every node a and root-leaf paths read every variable.

Size is measured in edges; node counts are reported alongside.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .graphs import Assignment, MonotoneCnf


class Nrobp:
    """Branching program container; structural soundness lives in validate_nrobp.

    Edges are (tail, head, label) with label None or a DIMACS-style literal
    (variable v is v+1 / -(v+1)). Only range errors are rejected here so that
    validate_nrobp can report structural defects on constructed objects.
    """

    __slots__ = ("num_nodes", "edges", "root", "leaf", "num_vars", "out_edges", "in_edges")

    def __init__(self, num_nodes: int, edges: Iterable[tuple[int, int, int | None]],
                 root: int, leaf: int, num_vars: int) -> None:
        if num_nodes < 1:
            raise ValueError(f"need at least one node, got {num_nodes}")
        if num_vars < 0:
            raise ValueError(f"variable count must be nonnegative, got {num_vars}")
        if not 0 <= root < num_nodes:
            raise ValueError(f"root {root} out of range")
        if not 0 <= leaf < num_nodes:
            raise ValueError(f"leaf {leaf} out of range")
        self.num_nodes = num_nodes
        self.num_vars = num_vars
        self.root = root
        self.leaf = leaf
        es = []
        for t, h, lab in edges:
            if not (0 <= t < num_nodes and 0 <= h < num_nodes):
                raise ValueError(f"edge ({t}, {h}) out of range")
            if lab is not None and not 1 <= abs(lab) <= num_vars:
                raise ValueError(f"label {lab} out of range for {num_vars} variables")
            es.append((t, h, lab))
        self.edges: tuple[tuple[int, int, int | None], ...] = tuple(es)
        out: list[list[int]] = [[] for _ in range(num_nodes)]
        inc: list[list[int]] = [[] for _ in range(num_nodes)]
        for i, (t, h, _) in enumerate(self.edges):
            out[t].append(i)
            inc[h].append(i)
        self.out_edges: tuple[tuple[int, ...], ...] = tuple(tuple(o) for o in out)
        self.in_edges: tuple[tuple[int, ...], ...] = tuple(tuple(i) for i in inc)

    @property
    def size_edges(self) -> int:
        return len(self.edges)

    @property
    def size_nodes(self) -> int:
        return self.num_nodes

    def __repr__(self) -> str:
        return (f"{type(self).__name__}(nodes={self.num_nodes}, edges={len(self.edges)}, "
                f"vars={self.num_vars})")


@dataclass
class BpReport:
    violations: list[str]

    @property
    def ok(self) -> bool:
        return not self.violations


def _topological_order(z: Nrobp) -> list[int] | None:
    """Kahn's algorithm, lowest node id first; None when a cycle remains."""
    indeg = [len(z.in_edges[v]) for v in range(z.num_nodes)]
    ready = [v for v in range(z.num_nodes) if indeg[v] == 0]
    heapq.heapify(ready)
    order = []
    while ready:
        v = heapq.heappop(ready)
        order.append(v)
        for i in z.out_edges[v]:
            h = z.edges[i][1]
            indeg[h] -= 1
            if indeg[h] == 0:
                heapq.heappush(ready, h)
    return order if len(order) == z.num_nodes else None


def _var_of(label: int) -> int:
    return abs(label) - 1


def validate_nrobp(z: Nrobp) -> BpReport:
    """Report acyclicity, source/sink uniqueness, connectivity, and read-once defects."""
    violations: list[str] = []
    order = _topological_order(z)
    if order is None:
        violations.append(f"cycle through nodes {_find_cycle(z)}")

    sources = [v for v in range(z.num_nodes) if not z.in_edges[v]]
    sinks = [v for v in range(z.num_nodes) if not z.out_edges[v]]
    if sources != [z.root]:
        for v in sources:
            if v != z.root:
                violations.append(f"node {v} has no incoming edges but is not the root")
        if z.root not in sources:
            violations.append(f"declared root {z.root} has incoming edges")
    if sinks != [z.leaf]:
        for v in sinks:
            if v != z.leaf:
                violations.append(f"node {v} has no outgoing edges but is not the leaf")
        if z.leaf not in sinks:
            violations.append(f"declared leaf {z.leaf} has outgoing edges")

    reach = {z.root}
    stack = [z.root]
    undirected: list[list[int]] = [[] for _ in range(z.num_nodes)]
    for t, h, _ in z.edges:
        undirected[t].append(h)
        undirected[h].append(t)
    while stack:
        u = stack.pop()
        for v in undirected[u]:
            if v not in reach:
                reach.add(v)
                stack.append(v)
    for v in range(z.num_nodes):
        if v not in reach:
            violations.append(f"node {v} is disconnected from the root")

    if order is not None and sources == [z.root]:
        # possible-read sets: vars readable on some root-to-node path
        poss = [0] * z.num_nodes
        offender = None
        for v in order:
            for i in z.out_edges[v]:
                t, h, lab = z.edges[i]
                if lab is not None:
                    vb = 1 << _var_of(lab)
                    if poss[t] & vb and offender is None:
                        offender = (i, _var_of(lab))
                    poss[h] |= poss[t] | vb
                else:
                    poss[h] |= poss[t]
        if offender is not None:
            i, var = offender
            path = _witness_double_read(z, i, var)
            violations.append(
                f"variable {var} is read twice along the path through nodes {path}")
    return BpReport(violations=violations)


def _find_cycle(z: Nrobp) -> list[int]:
    color = [0] * z.num_nodes
    for start in range(z.num_nodes):
        if color[start]:
            continue
        stack: list[tuple[int, int]] = [(start, 0)]
        color[start] = 1
        while stack:
            v, idx = stack[-1]
            if idx < len(z.out_edges[v]):
                stack[-1] = (v, idx + 1)
                h = z.edges[z.out_edges[v][idx]][1]
                if color[h] == 1:
                    cyc = [h]
                    for w, _ in reversed(stack):
                        cyc.append(w)
                        if w == h:
                            break
                    return list(reversed(cyc))
                if color[h] == 0:
                    color[h] = 1
                    stack.append((h, 0))
            else:
                color[v] = 2
                stack.pop()
    return []


def _witness_double_read(z: Nrobp, edge_idx: int, var: int) -> list[int]:
    """Root-to-head node path whose labels read var before edge_idx reads it again."""
    target_tail = z.edges[edge_idx][0]
    best: list[int] | None = None

    def dfs(v: int, path: list[int], seen_var: bool) -> bool:
        nonlocal best
        if v == target_tail and seen_var:
            best = path + [z.edges[edge_idx][1]]
            return True
        for i in z.out_edges[v]:
            _, h, lab = z.edges[i]
            s = seen_var or (lab is not None and _var_of(lab) == var)
            if dfs(h, path + [h], s):
                return True
        return False

    dfs(z.root, [z.root], False)
    return best if best is not None else [z.root]


def _node_var_masks(z: Nrobp) -> list[int] | None:
    """Per-node variable mask of root paths; None when two paths disagree."""
    order = _topological_order(z)
    assert order is not None
    masks: list[int | None] = [None] * z.num_nodes
    masks[z.root] = 0
    for v in order:
        if masks[v] is None:
            continue
        for i in z.out_edges[v]:
            _, h, lab = z.edges[i]
            m = masks[v] | (1 << _var_of(lab) if lab is not None else 0)
            if masks[h] is None:
                masks[h] = m
            elif masks[h] != m:
                return None
    return masks  # type: ignore[return-value]


def is_uniform(z: Nrobp) -> bool:
    """All root-to-a paths read the same variables, and full paths read Var(F)."""
    rep = validate_nrobp(z)
    if not rep.ok:
        raise ValueError(f"program is not a valid NROBP: {rep.violations[0]}")
    masks = _node_var_masks(z)
    if masks is None:
        return False
    return masks[z.leaf] == (1 << z.num_vars) - 1


def uniformize(z: Nrobp) -> Nrobp:
    """Pad every in-edge with paired-literal chains until all paths agree.

    Nodes are processed in a deterministic topological order. For an
    in-edge of node b whose paths miss variables x1 < x2 < ... < xq
    relative to b's target set, the edge is subdivided into a chain whose
    first edge keeps the original label and whose later hops each carry
    two parallel edges labeled +xi and -xi. Interior nodes target the
    union of their path variable sets; the leaf targets all of Var(F).
    Output size is at most (2 * num_vars + 1) times the input size.
    """
    rep = validate_nrobp(z)
    if not rep.ok:
        raise ValueError(f"program is not a valid NROBP: {rep.violations[0]}")
    full = (1 << z.num_vars) - 1
    if z.root == z.leaf:
        # constant-true single node: emit a fresh paired-literal chain
        if z.num_vars == 0:
            return Nrobp(1, [], 0, 0, 0)
        edges: list[tuple[int, int, int | None]] = []
        for v in range(z.num_vars):
            edges.append((v, v + 1, v + 1))
            edges.append((v, v + 1, -(v + 1)))
        return Nrobp(z.num_vars + 1, edges, 0, z.num_vars, z.num_vars)

    order = _topological_order(z)
    assert order is not None
    av = [0] * z.num_nodes  # settled path-variable mask per original node
    next_node = z.num_nodes
    new_edges: list[tuple[int, int, int | None]] = []
    for b in order:
        if b == z.root:
            continue
        incoming = [(z.edges[i][0], z.edges[i][2]) for i in z.in_edges[b]]
        contributions = []
        for tail, lab in incoming:
            m = av[tail] | (1 << _var_of(lab) if lab is not None else 0)
            contributions.append(m)
        target = full if b == z.leaf else 0
        for m in contributions:
            target |= m
        av[b] = target
        for (tail, lab), m in zip(incoming, contributions):
            missing = target & ~m
            if not missing:
                new_edges.append((tail, b, lab))
                continue
            vars_missing = []
            mm = missing
            while mm:
                bit = mm & -mm
                mm ^= bit
                vars_missing.append(bit.bit_length() - 1)
            chain = [next_node + j for j in range(len(vars_missing))]
            next_node += len(vars_missing)
            new_edges.append((tail, chain[0], lab))
            hops = chain[1:] + [b]
            for x, a, c in zip(vars_missing, chain, hops):
                new_edges.append((a, c, x + 1))
                new_edges.append((a, c, -(x + 1)))
    return Nrobp(next_node, new_edges, z.root, z.leaf, z.num_vars)


def bp_satisfying_set(z: Nrobp, cap: int = 20) -> set[Assignment]:
    """Total assignments accepted by z, by consistency-restricted reachability."""
    rep = validate_nrobp(z)
    if not rep.ok:
        raise ValueError(f"program is not a valid NROBP: {rep.violations[0]}")
    n = z.num_vars
    if n > cap:
        raise ValueError(f"refusing exhaustive enumeration over {n} variables (cap {cap})")
    out: set[Assignment] = set()
    order = _topological_order(z)
    assert order is not None
    for mask in range(1 << n):
        reach = [False] * z.num_nodes
        reach[z.root] = True
        for v in order:
            if not reach[v]:
                continue
            if v == z.leaf:
                break
            for i in z.out_edges[v]:
                _, h, lab = z.edges[i]
                if lab is None:
                    reach[h] = True
                elif lab > 0:
                    if mask >> (lab - 1) & 1:
                        reach[h] = True
                elif not mask >> (-lab - 1) & 1:
                    reach[h] = True
        if reach[z.leaf]:
            out.add(Assignment.from_mask(n, mask))
    return out


def root_leaf_paths(z: Nrobp, cap: int = 100000) -> list[tuple[int, ...]]:
    """All root-leaf paths as tuples of edge indices, in DFS order."""
    paths: list[tuple[int, ...]] = []
    stack: list[int] = []

    def dfs(v: int) -> None:
        if v == z.leaf:
            paths.append(tuple(stack))
            if len(paths) > cap:
                raise ValueError(f"more than {cap} root-leaf paths")
            return
        for i in z.out_edges[v]:
            stack.append(i)
            dfs(z.edges[i][1])
            stack.pop()

    dfs(z.root)
    return paths


def path_literals(z: Nrobp, path: Sequence[int]) -> frozenset[int]:
    return frozenset(z.edges[i][2] for i in path if z.edges[i][2] is not None)


class Nfbdd(Nrobp):
    """Fully labeled uniform NROBP with out-degree <= 2 per node.

    A node with two out-edges carries opposite literals of one variable;
    a node with one out-edge reads its variable with one sign. Every
    instance is checked for validity and uniformity on construction.
    """

    __slots__ = ("var_of",)

    def __init__(self, num_nodes: int, edges: Iterable[tuple[int, int, int | None]],
                 root: int, leaf: int, num_vars: int) -> None:
        super().__init__(num_nodes, edges, root, leaf, num_vars)
        rep = validate_nrobp(self)
        if not rep.ok:
            raise ValueError(f"not a valid NROBP: {rep.violations[0]}")
        var_of: list[int | None] = [None] * num_nodes
        for v in range(num_nodes):
            out = self.out_edges[v]
            if v == self.leaf:
                continue
            if not 1 <= len(out) <= 2:
                raise ValueError(f"node {v} has out-degree {len(out)}, need 1 or 2")
            labs = [self.edges[i][2] for i in out]
            if any(lab is None for lab in labs):
                raise ValueError(f"node {v} has an unlabeled out-edge")
            vars_ = {_var_of(lab) for lab in labs}
            if len(vars_) != 1:
                raise ValueError(f"node {v} reads two variables {sorted(vars_)}")
            if len(labs) == 2 and labs[0] != -labs[1]:
                raise ValueError(f"node {v} does not carry opposite literals")
            var_of[v] = vars_.pop()
        self.var_of: tuple[int | None, ...] = tuple(var_of)
        if not is_uniform(self):
            raise ValueError("program is not uniform")


def _clause_drop(state: frozenset[tuple[int, ...]], x: int) -> frozenset[tuple[int, ...]]:
    return frozenset(c for c in state if x not in c)


def _clause_shrink(state: frozenset[tuple[int, ...]], x: int) -> frozenset[tuple[int, ...]] | None:
    if (x,) in state:
        return None
    return frozenset(c if x not in c else (c[0] if c[1] == x else c[1],) for c in state)


def nfbdd_compile(cnf: MonotoneCnf, order: Sequence[int] | None = None) -> Nfbdd:
    """Split on variables in order, merging states with equal residual clause sets.

    A state is the set of not-yet-satisfied clauses restricted to unread
    variables. The negative branch is dropped when it falsifies a unit
    residual clause; every surviving state reaches the leaf because the
    all-positive extension satisfies any monotone residual.
    """
    n = cnf.num_vars
    if order is None:
        order = tuple(range(n))
    else:
        order = tuple(order)
        if sorted(order) != list(range(n)):
            raise ValueError(f"order {order} is not a permutation of 0..{n - 1}")
    initial: frozenset[tuple[int, ...]] = frozenset(cnf.clauses)
    levels: list[list[frozenset[tuple[int, ...]]]] = [[initial]]
    for x in order:
        nxt: set[frozenset[tuple[int, ...]]] = set()
        for s in levels[-1]:
            nxt.add(_clause_drop(s, x))
            neg = _clause_shrink(s, x)
            if neg is not None:
                nxt.add(neg)
        levels.append(sorted(nxt, key=lambda s: tuple(sorted(s))))

    ids: list[dict[frozenset[tuple[int, ...]], int]] = []
    counter = 0
    for level in levels:
        d = {}
        for s in level:
            d[s] = counter
            counter += 1
        ids.append(d)
    edges: list[tuple[int, int, int | None]] = []
    for li, x in enumerate(order):
        lit = x + 1
        for s in levels[li]:
            t = ids[li][s]
            edges.append((t, ids[li + 1][_clause_drop(s, x)], lit))
            neg = _clause_shrink(s, x)
            if neg is not None:
                edges.append((t, ids[li + 1][neg], -lit))
    assert levels[-1] == [frozenset()]
    return Nfbdd(counter, edges, ids[0][initial], counter - 1, n)


def _reachable_states(cnf: MonotoneCnf, read_mask: int,
                      memo: dict[int, frozenset[frozenset[tuple[int, ...]]]],
                      ) -> frozenset[frozenset[tuple[int, ...]]]:
    """States reachable after reading the variables in read_mask, any order."""
    cached = memo.get(read_mask)
    if cached is not None:
        return cached
    if read_mask == 0:
        result = frozenset([frozenset(cnf.clauses)])
    else:
        bit = read_mask & -read_mask
        x = bit.bit_length() - 1
        prev = _reachable_states(cnf, read_mask ^ bit, memo)
        nxt = set()
        for s in prev:
            nxt.add(_clause_drop(s, x))
            neg = _clause_shrink(s, x)
            if neg is not None:
                nxt.add(neg)
        result = frozenset(nxt)
    memo[read_mask] = result
    return result


def best_order_size(cnf: MonotoneCnf, cap: int = 12) -> tuple[int, tuple[int, ...]]:
    """Minimum compiled edge count over all variable orders, with a witness order.

    DP over subsets: the states at a level depend only on the set of
    variables read, so level costs add up along any order.
    """
    n = cnf.num_vars
    if n > cap:
        raise ValueError(f"{n} variables exceed the order-search cap {cap}")
    memo: dict[int, frozenset[frozenset[tuple[int, ...]]]] = {}
    full = (1 << n) - 1
    cost = [0] * (full + 1)
    choice = [-1] * (full + 1)
    for s in range(1, full + 1):
        best = -1
        bx = -1
        t = s
        while t:
            bit = t & -t
            t ^= bit
            x = bit.bit_length() - 1
            prev_states = _reachable_states(cnf, s ^ bit, memo)
            step = sum(1 if (x,) in st else 2 for st in prev_states)
            val = cost[s ^ bit] + step
            if best < 0 or val < best:
                best = val
                bx = x
        cost[s] = best
        choice[s] = bx
    order: list[int] = []
    s = full
    while s:
        x = choice[s]
        order.append(x)
        s ^= 1 << x
    order.reverse()
    return cost[full], tuple(order)


def bp_equivalence(a: Nrobp, b: Nrobp, cap: int = 20) -> bool:
    """Accepted-set equality; both programs must share one variable universe."""
    if a.num_vars != b.num_vars:
        raise ValueError(f"variable universes differ: {a.num_vars} vs {b.num_vars}")
    return bp_satisfying_set(a, cap) == bp_satisfying_set(b, cap)
