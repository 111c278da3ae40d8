"""Exhaustive and pruned combinatorial search.

Covers full Hamiltonian-cycle enumeration with extremal statistics,
backtracking witness searches for rainbow trails, addition Cayley graphs
with connectivity and Hamiltonicity tests, and the exact minimum size of
a connection set giving a Hamiltonian addition Cayley graph.

Budgets are node counts, never wall time, so results are reproducible.
A search only ever reports "nonexistent" after exhausting its whole
space; running out of budget is a distinct outcome.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

import numpy as np

from .groups import Element, GroupSpec, span
from .trails import Trail, sum_labels

__all__ = [
    "DEFAULT_ENUMERATION_CAP",
    "DEFAULT_DP_LIMIT",
    "SearchBudgetExceeded",
    "SearchResult",
    "FOUND",
    "NONEXISTENT",
    "EXHAUSTED",
    "ExtremalReport",
    "enumerate_cycles",
    "extremal_scan",
    "find_rainbow_diff_path",
    "find_rainbow_sum_cycle",
    "find_rainbow_diff_cycle_nonzero",
    "CayleyGraph",
    "build_cayley",
    "is_connected_cayley",
    "is_hamiltonian_cayley",
    "classify_small_connection_set",
    "MinConnectionResult",
    "minimum_connection_size",
]

DEFAULT_ENUMERATION_CAP = 12

# Exact subset DP is used up to this many vertices; beyond it the budgeted
# backtracking path takes over.  Kept well below the point where the mask
# table stops fitting in memory/time.
DEFAULT_DP_LIMIT = 16

_CHUNK_ROWS = 200_000

FOUND = "found"
NONEXISTENT = "nonexistent"
EXHAUSTED = "exhausted"


class SearchBudgetExceeded(RuntimeError):
    """A backtracking search ran out of its node budget."""

    def __init__(self, nodes: int):
        super().__init__(f"search budget exhausted after {nodes} nodes")
        self.nodes = nodes


@dataclass
class SearchResult:
    status: str  # found | nonexistent | exhausted
    trail: Trail | None
    nodes: int


# ---------------------------------------------------------------------------
# cycle enumeration
# ---------------------------------------------------------------------------

def enumerate_cycles(G: GroupSpec, *, cap: int = DEFAULT_ENUMERATION_CAP,
                     second: Element | None = None):
    """Yield every directed Hamiltonian cycle exactly once, anchored at 0.

    Cycles are emitted in lexicographic order of the remaining vertex
    permutation; with ``second`` fixed, only the cycles whose second
    vertex matches are produced, which partitions the space into |G|-1
    independent shards for parallel workers.
    """
    n = G.order
    if n < 2:
        raise ValueError("cycle enumeration needs |G| >= 2")
    if n > cap:
        raise ValueError(f"order {n} exceeds enumeration cap {cap}")
    els = G.elements()
    zero = els[0]
    rest = els[1:]
    if second is None:
        for perm in itertools.permutations(rest):
            yield Trail(G, (zero,) + perm, cyclic=True)
    else:
        if second not in rest:
            raise ValueError(f"{second} is not a nonzero element of {G}")
        remaining = tuple(e for e in rest if e != second)
        for perm in itertools.permutations(remaining):
            yield Trail(G, (zero, second) + perm, cyclic=True)


@dataclass
class ExtremalReport:
    """Exact extremal and average distinct-label counts over all cycles."""

    group: GroupSpec
    min_distinct_diffs: int
    max_distinct_diffs: int
    min_distinct_sums: int
    max_distinct_sums: int
    cycle_count: int
    mean_distinct_diffs: Fraction
    mean_distinct_sums: Fraction
    witnesses: dict[str, Trail] = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        from .trails import trail_to_json_dict

        return {
            "group": str(self.group),
            "invariant_factors": list(self.group.invariant_factors),
            "order": self.group.order,
            "rank": self.group.rank,
            "min_distinct_diffs": self.min_distinct_diffs,
            "max_distinct_diffs": self.max_distinct_diffs,
            "min_distinct_sums": self.min_distinct_sums,
            "max_distinct_sums": self.max_distinct_sums,
            "cycle_count": self.cycle_count,
            "mean_distinct_diffs": _frac_str(self.mean_distinct_diffs),
            "mean_distinct_sums": _frac_str(self.mean_distinct_sums),
            "witnesses": {
                k: trail_to_json_dict(t) for k, t in sorted(self.witnesses.items())
            },
        }

    CSV_HEADER = (
        "group,order,rank,min_distinct_diffs,max_distinct_diffs,"
        "min_distinct_sums,max_distinct_sums,cycle_count,"
        "mean_distinct_diffs,mean_distinct_sums"
    )

    def to_csv_row(self) -> str:
        g = self.group
        return (
            f"{g},{g.order},{g.rank},{self.min_distinct_diffs},"
            f"{self.max_distinct_diffs},{self.min_distinct_sums},"
            f"{self.max_distinct_sums},{self.cycle_count},"
            f"{_frac_str(self.mean_distinct_diffs)},"
            f"{_frac_str(self.mean_distinct_sums)}"
        )


def _frac_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _label_tables(G: GroupSpec) -> tuple[np.ndarray, np.ndarray]:
    els = G.elements()
    n = len(els)
    addt = np.empty((n, n), dtype=np.int16)
    subt = np.empty((n, n), dtype=np.int16)
    for i, a in enumerate(els):
        for j, b in enumerate(els):
            addt[i, j] = G.element_index(G.add(a, b))
            subt[i, j] = G.element_index(G.sub(b, a))  # label of edge a -> b
    return addt, subt


def _distinct_per_row(labels: np.ndarray) -> np.ndarray:
    srt = np.sort(labels, axis=1)
    return (np.diff(srt, axis=1) != 0).sum(axis=1) + 1


@dataclass
class _ShardStats:
    dmin: tuple[int, tuple[int, ...]]
    dmax: tuple[int, tuple[int, ...]]
    smin: tuple[int, tuple[int, ...]]
    smax: tuple[int, tuple[int, ...]]
    diff_total: int
    sum_total: int
    rows: int


def _scan_shard(n: int, second: int, addt: np.ndarray, subt: np.ndarray) -> _ShardStats:
    remaining = [k for k in range(1, n) if k != second]
    best = {"dmin": (n + 1, ()), "dmax": (-1, ()), "smin": (n + 1, ()), "smax": (-1, ())}
    diff_total = sum_total = rows = 0
    perm_iter = itertools.permutations(remaining)
    while True:
        chunk = list(itertools.islice(perm_iter, _CHUNK_ROWS))
        if not chunk:
            break
        k = len(chunk)
        verts = np.empty((k, n), dtype=np.int16)
        verts[:, 0] = 0
        verts[:, 1] = second
        if n > 2:
            verts[:, 2:] = np.array(chunk, dtype=np.int16)
        nxt = np.roll(verts, -1, axis=1)
        dcounts = _distinct_per_row(subt[verts, nxt])
        scounts = _distinct_per_row(addt[verts, nxt])
        diff_total += int(dcounts.sum())
        sum_total += int(scounts.sum())
        rows += k
        for key, counts, lower_is_better in (
            ("dmin", dcounts, True),
            ("dmax", dcounts, False),
            ("smin", scounts, True),
            ("smax", scounts, False),
        ):
            cur = best[key][0]
            val = int(counts.min() if lower_is_better else counts.max())
            if (val < cur) if lower_is_better else (val > cur):
                r = int(np.argmin(counts) if lower_is_better else np.argmax(counts))
                best[key] = (val, tuple(int(x) for x in verts[r]))
    return _ShardStats(best["dmin"], best["dmax"], best["smin"], best["smax"],
                       diff_total, sum_total, rows)


def extremal_scan(G: GroupSpec, *, cap: int = DEFAULT_ENUMERATION_CAP,
                  threads: int = 1) -> ExtremalReport:
    """Scan all (|G|-1)! cycles for exact extremal and mean label counts.

    The space is sharded by the second vertex; shards are vectorized and
    may be evaluated by a thread pool, but the merge runs in fixed shard
    order so the report (witnesses included) never depends on the thread
    count.
    """
    n = G.order
    if n < 2:
        raise ValueError("extremal scan needs |G| >= 2")
    if n > cap:
        raise ValueError(f"order {n} exceeds enumeration cap {cap}")
    if n == 2:
        t = Trail(G, G.elements(), cyclic=True)
        return ExtremalReport(G, 1, 1, 1, 1, 1, Fraction(1), Fraction(1),
                              {"min_diffs": t, "max_diffs": t,
                               "min_sums": t, "max_sums": t})
    addt, subt = _label_tables(G)
    seconds = list(range(1, n))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            shard_stats = list(pool.map(
                lambda s: _scan_shard(n, s, addt, subt), seconds))
    else:
        shard_stats = [_scan_shard(n, s, addt, subt) for s in seconds]

    best: dict[str, tuple[int, tuple[int, ...]]] = {
        "dmin": (n + 1, ()), "dmax": (-1, ()), "smin": (n + 1, ()), "smax": (-1, ()),
    }
    diff_total = sum_total = rows = 0
    for st in shard_stats:  # fixed order merge: lowest second vertex wins ties
        for key, lower in (("dmin", True), ("dmax", False),
                           ("smin", True), ("smax", False)):
            val, wit = getattr(st, key)
            cur = best[key][0]
            if (val < cur) if lower else (val > cur):
                best[key] = (val, wit)
        diff_total += st.diff_total
        sum_total += st.sum_total
        rows += st.rows
    assert rows == factorial(n - 1)

    els = G.elements()

    def as_trail(idx_seq: tuple[int, ...]) -> Trail:
        return Trail(G, tuple(els[i] for i in idx_seq), cyclic=True)

    return ExtremalReport(
        group=G,
        min_distinct_diffs=best["dmin"][0],
        max_distinct_diffs=best["dmax"][0],
        min_distinct_sums=best["smin"][0],
        max_distinct_sums=best["smax"][0],
        cycle_count=rows,
        mean_distinct_diffs=Fraction(diff_total, rows),
        mean_distinct_sums=Fraction(sum_total, rows),
        witnesses={
            "min_diffs": as_trail(best["dmin"][1]),
            "max_diffs": as_trail(best["dmax"][1]),
            "min_sums": as_trail(best["smin"][1]),
            "max_sums": as_trail(best["smax"][1]),
        },
    )


# ---------------------------------------------------------------------------
# rainbow witness searches
# ---------------------------------------------------------------------------

def _rainbow_backtrack(G: GroupSpec, vertices: list[Element], label_fn,
                       cyclic: bool, budget: int | None) -> SearchResult:
    """Depth-first search for an ordering with pairwise-distinct edge labels.

    The first vertex stays pinned to vertices[0] (a valid quotient: by
    rotation for cycles, by translation for paths on a full group), and
    candidates are tried in ascending element order, so the first witness
    is deterministic.
    """
    n = len(vertices)
    order = sorted(vertices)
    first = order[0] if cyclic else vertices[0]
    rest = [v for v in order if v != first]
    path = [first]
    used_labels: set[Element] = set()
    in_path = {first}
    nodes = 0

    def extend() -> Trail | None:
        nonlocal nodes
        if len(path) == n:
            if not cyclic:
                return Trail(G, tuple(path), cyclic=False)
            closing = label_fn(path[-1], path[0])
            if closing in used_labels:
                return None
            return Trail(G, tuple(path), cyclic=True)
        for v in rest:
            if v in in_path:
                continue
            lab = label_fn(path[-1], v)
            if lab in used_labels:
                continue
            nodes += 1
            if budget is not None and nodes > budget:
                raise SearchBudgetExceeded(nodes)
            path.append(v)
            in_path.add(v)
            used_labels.add(lab)
            hit = extend()
            if hit is not None:
                return hit
            used_labels.discard(lab)
            in_path.discard(v)
            path.pop()
        return None

    try:
        witness = extend()
    except SearchBudgetExceeded as exc:
        return SearchResult(EXHAUSTED, None, exc.nodes)
    if witness is None:
        return SearchResult(NONEXISTENT, None, nodes)
    return SearchResult(FOUND, witness, nodes)


def find_rainbow_diff_path(G: GroupSpec, budget: int | None = None) -> SearchResult:
    """Search for a Hamiltonian path on G with all differences distinct.

    Start vertex is pinned to 0: translating a path leaves its difference
    labels unchanged, so every witness has a representative starting at 0.
    """
    if G.order < 2:
        raise ValueError("need |G| >= 2")
    verts = [G.zero()] + [e for e in G.elements() if e != G.zero()]
    return _rainbow_backtrack(G, verts, lambda a, b: G.sub(b, a), cyclic=False,
                              budget=budget)


def find_rainbow_sum_cycle(G: GroupSpec, budget: int | None = None) -> SearchResult:
    """Search for a Hamiltonian cycle on G with all sums distinct."""
    if G.order < 2:
        raise ValueError("need |G| >= 2")
    return _rainbow_backtrack(G, list(G.elements()), G.add, cyclic=True,
                              budget=budget)


def find_rainbow_diff_cycle_nonzero(G: GroupSpec, budget: int | None = None) -> SearchResult:
    """Search for a cycle on the nonzero elements with all differences distinct."""
    if G.order < 3:
        raise ValueError("need |G| >= 3")
    verts = [e for e in G.elements() if e != G.zero()]
    return _rainbow_backtrack(G, verts, lambda a, b: G.sub(b, a), cyclic=True,
                              budget=budget)


# ---------------------------------------------------------------------------
# addition Cayley graphs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CayleyGraph:
    """Graph on G with g' adjacent to g'' iff g' + g'' lies in the connection set.

    Self-loop vertices (2g in S) are tracked separately and never appear
    in the adjacency lists.
    """

    group: GroupSpec
    connection_set: frozenset[Element]
    adjacency: dict[Element, tuple[Element, ...]]
    loop_vertices: frozenset[Element]


def build_cayley(G: GroupSpec, S) -> CayleyGraph:
    S = frozenset(tuple(s) for s in S)
    for s in S:
        if not G.contains(s):
            raise ValueError(f"{s} is not an element of {G}")
    adjacency = {}
    loops = set()
    for g in G.elements():
        nbrs = []
        for s in S:
            h = G.sub(s, g)
            if h == g:
                loops.add(g)
            else:
                nbrs.append(h)
        adjacency[g] = tuple(sorted(nbrs))
    return CayleyGraph(G, S, adjacency, frozenset(loops))


def is_connected_cayley(G: GroupSpec, S, method: str = "structural") -> bool:
    """Connectivity of the addition Cayley graph, two independent ways.

    structural: the subgroup H generated by S-S must be all of G, or have
    index 2 with S inside the nontrivial coset.
    bfs: walk the component of 0 in the explicit graph.
    """
    S = frozenset(tuple(s) for s in S)
    for s in S:
        if not G.contains(s):
            raise ValueError(f"{s} is not an element of {G}")
    if method == "structural":
        if not S:
            return G.order == 1
        s0 = min(S)
        H = span(G, [G.sub(s, s0) for s in S])
        if len(H) == G.order:
            return True
        return 2 * len(H) == G.order and s0 not in H
    if method == "bfs":
        graph = build_cayley(G, S)
        seen = {G.zero()}
        frontier = [G.zero()]
        while frontier:
            nxt = []
            for v in frontier:
                for w in graph.adjacency[v]:
                    if w not in seen:
                        seen.add(w)
                        nxt.append(w)
            frontier = nxt
        return len(seen) == G.order
    raise ValueError(f"unknown connectivity method {method!r}")


def _adj_masks(G: GroupSpec, S: frozenset[Element]) -> list[int]:
    n = G.order
    els = G.elements()
    masks = [0] * n
    for i, g in enumerate(els):
        for s in S:
            h = G.sub(s, g)
            if h != g:
                masks[i] |= 1 << G.element_index(h)
    return masks


def _lowest_bit(x: int) -> int:
    return (x & -x).bit_length() - 1


def _hamiltonian_dp(n: int, adj: list[int]) -> list[int] | None:
    """Subset DP over paths from vertex 0; returns a closing cycle or None."""
    size = 1 << n
    reach = [0] * size
    reach[1] = 1
    for mask in range(1, size):
        lasts = reach[mask]
        if not lasts:
            continue
        m = lasts
        while m:
            v = _lowest_bit(m)
            m &= m - 1
            ext = adj[v] & ~mask
            while ext:
                w = _lowest_bit(ext)
                ext &= ext - 1
                reach[mask | (1 << w)] |= 1 << w
    full = size - 1
    closers = reach[full] & adj[0] & ~1
    if not closers:
        return None
    last = _lowest_bit(closers)
    path = [last]
    mask = full
    while path[-1] != 0:
        cur = path[-1]
        prev_mask = mask ^ (1 << cur)
        prevs = reach[prev_mask] & adj[cur]
        path.append(_lowest_bit(prevs))
        mask = prev_mask
    path.reverse()
    return path


def _hamiltonian_backtrack(n: int, adj: list[int], budget: int | None) -> list[int] | None:
    """Pruned DFS Hamiltonicity: degree-1 forcing plus availability cut."""
    full = (1 << n) - 1
    nodes = 0

    def rec(path: list[int], visited: int) -> list[int] | None:
        nonlocal nodes
        cur = path[-1]
        if visited == full:
            return path[:] if adj[cur] & 1 else None
        free = ~visited & full
        # every unvisited vertex still needs two usable connections
        avail_pool = free | (1 << cur) | 1
        m = free
        while m:
            u = _lowest_bit(m)
            m &= m - 1
            if (adj[u] & avail_pool).bit_count() < 2:
                return None
        ext = adj[cur] & free
        while ext:
            w = _lowest_bit(ext)
            ext &= ext - 1
            nodes += 1
            if budget is not None and nodes > budget:
                raise SearchBudgetExceeded(nodes)
            path.append(w)
            hit = rec(path, visited | (1 << w))
            if hit is not None:
                return hit
            path.pop()
        return None

    return rec([0], 1)


def is_hamiltonian_cayley(G: GroupSpec, S, *, budget: int | None = None,
                          dp_limit: int = DEFAULT_DP_LIMIT) -> tuple[bool, Trail | None]:
    """Exact Hamiltonicity of the addition Cayley graph, with witness.

    Subset DP (exact, no budget) up to ``dp_limit`` vertices, budgeted
    backtracking beyond; raises SearchBudgetExceeded rather than guessing
    when the budget runs out.  A witness cycle C always satisfies
    S(C) being a subset of the connection set.
    """
    S = frozenset(tuple(s) for s in S)
    for s in S:
        if not G.contains(s):
            raise ValueError(f"{s} is not an element of {G}")
    n = G.order
    if n < 2:
        raise ValueError("need |G| >= 2")
    if n == 2:
        nz = G.elements()[1]
        if nz in S:  # the single edge doubles as a 2-cycle
            return True, Trail(G, (G.zero(), nz), cyclic=True)
        return False, None
    if not is_connected_cayley(G, S, method="structural"):
        return False, None
    adj = _adj_masks(G, S)
    if any(a.bit_count() < 2 for a in adj):
        return False, None
    if n <= dp_limit:
        path = _hamiltonian_dp(n, adj)
    else:
        path = _hamiltonian_backtrack(n, adj, budget)
    if path is None:
        return False, None
    els = G.elements()
    t = Trail(G, tuple(els[i] for i in path), cyclic=True)
    assert set(sum_labels(t).labels) <= S
    return True, t


def classify_small_connection_set(G: GroupSpec, S) -> bool:
    """Closed-form Hamiltonicity for connection sets of at most 2 elements.

    A single element never works.  A pair works exactly when the
    difference of its elements generates an index-2 subgroup disjoint
    from the pair.
    """
    if G.order < 3:
        raise ValueError("need |G| >= 3")
    S = frozenset(tuple(s) for s in S)
    for s in S:
        if not G.contains(s):
            raise ValueError(f"{s} is not an element of {G}")
    if len(S) > 2:
        raise ValueError("rule only covers |S| <= 2")
    if len(S) <= 1:
        return False
    s1, s2 = sorted(S)
    d = G.sub(s2, s1)
    if G.order % 2 != 0 or G.element_order(d) != G.order // 2:
        return False
    return not (S & span(G, [d]))


# ---------------------------------------------------------------------------
# minimum connection-set size
# ---------------------------------------------------------------------------

@dataclass
class MinConnectionResult:
    group: GroupSpec
    status: str  # "exact" | "interval"
    size: int | None
    lower: int
    upper: int
    witness_set: tuple[Element, ...] | None
    witness_cycle: Trail | None


def _size_bounds(G: GroupSpec) -> tuple[int, int]:
    r = G.rank
    lower = r if G.invariant_factors[0] == 2 else r + 1
    if G.order % 2 == 0:
        upper = lower  # even order: the closed form is exact
    else:
        upper = 2 * r + 1
    return max(lower, 1), upper


def minimum_connection_size(G: GroupSpec, *, budget: int | None = None,
                            dp_limit: int = DEFAULT_DP_LIMIT) -> MinConnectionResult:
    """Least k such that some k-subset gives a Hamiltonian addition Cayley graph.

    Candidate sets are walked in ascending size from the rank-based lower
    bound up to the guaranteed upper bound; within each size, sets are
    pruned to one representative per translation orbit S -> S + h with h
    in 2G (translating the cycle by t shifts all sums by 2t, so
    Hamiltonicity is orbit-invariant).  Budget exhaustion yields a
    bracketing interval instead of a value.
    """
    n = G.order
    if n < 2:
        raise ValueError("need |G| >= 2")
    lower, upper = _size_bounds(G)
    els = G.elements()
    doubled = sorted({G.element_index(G.scalar_mul(2, t)) for t in els})

    def is_canonical(idx_tuple: tuple[int, ...]) -> bool:
        subset = [els[i] for i in idx_tuple]
        for h_idx in doubled:
            h = els[h_idx]
            shifted = tuple(sorted(G.element_index(G.add(s, h)) for s in subset))
            if shifted < idx_tuple:
                return False
        return True

    for k in range(lower, upper + 1):
        for idx_tuple in itertools.combinations(range(n), k):
            if not is_canonical(idx_tuple):
                continue
            subset = tuple(els[i] for i in idx_tuple)
            try:
                ok, cycle = is_hamiltonian_cayley(G, subset, budget=budget,
                                                  dp_limit=dp_limit)
            except SearchBudgetExceeded:
                return MinConnectionResult(G, "interval", None, k, upper, None, None)
            if ok:
                return MinConnectionResult(G, "exact", k, k, k, subset, cycle)
    raise RuntimeError(
        f"no Hamiltonian connection set of size <= {upper} on {G}; "
        "this contradicts the guaranteed upper bound"
    )
