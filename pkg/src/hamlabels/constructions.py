"""Deterministic cycle and path builders with verified output contracts.

Every builder checks its own postcondition (label counts, rainbow
property, full cover) before returning and raises ConstructionError
otherwise, so a bug here cannot leak into downstream reports.
"""

from __future__ import annotations

from .groups import Element, GroupSpec, decompose_even
from .trails import (
    Trail,
    diff_labels,
    is_rainbow_diff_path,
    is_rainbow_sum_cycle,
    is_rainbow_sum_path,
    sum_labels,
)

__all__ = [
    "ConstructionError",
    "fewest_diffs_cycle",
    "fewest_sums_cycle_even",
    "fewest_sums_cycle_odd",
    "rainbow_sum_path",
    "rainbow_sum_cycle_odd",
    "elementary_abelian8_cycle",
    "zigzag_diff_path",
    "BUILDERS",
]


class ConstructionError(RuntimeError):
    """A builder produced output violating its own contract."""


def _verified(t: Trail, ok: bool, what: str) -> Trail:
    if not ok:
        raise ConstructionError(f"{what} failed self-verification on {t.group}")
    return t


# -- minimum number of distinct differences --------------------------------

def _layered_cycle(factors: tuple[int, ...]) -> list[tuple[int, ...]]:
    """Cycle on Z_{f_1} + ... + Z_{f_k} using one new difference per factor.

    Starts from the plain cycle 0,1,...,f_k-1 and folds in the remaining
    factors right to left; each new coordinate repeats the previous cycle
    once per residue, layer by layer.  When the layer count is a multiple
    of the inner cycle length the layers can chain start-to-end (each one
    picking up where the last left off); otherwise every layer restarts at
    the inner cycle's first vertex and the wrap-around difference of the
    inner cycle doubles as the layer-to-layer step.  Both variants add
    exactly one distinct difference.
    """
    seq = [(x,) for x in range(factors[-1])]
    for m in reversed(factors[:-1]):
        n = len(seq)
        layered: list[tuple[int, ...]] = []
        if m % n == 0:
            for j in range(m):
                start = (-j) % n
                layered.extend((j,) + seq[(start + k) % n] for k in range(n))
        else:
            for j in range(m):
                layered.extend((j,) + seq[k] for k in range(n))
        seq = layered
    return seq


def fewest_diffs_cycle(G: GroupSpec) -> Trail:
    """A Hamiltonian cycle whose distinct consecutive differences number rank(G)."""
    if G.is_trivial:
        raise ValueError("no Hamiltonian cycle on the trivial group")
    t = Trail(G, tuple(_layered_cycle(G.invariant_factors)), cyclic=True)
    return _verified(t, diff_labels(t).distinct_count == G.rank, "fewest_diffs_cycle")


# -- minimum number of distinct sums, even order ----------------------------

def fewest_sums_cycle_even(G: GroupSpec) -> Trail:
    """Even-order cycle with rank(G) distinct sums if m_1 = 2, else rank(G)+1.

    Interleaves an index-2 subgroup H with its other coset: walk a
    fewest-diffs cycle h_1, ..., h_{|H|} on H and visit s - h_i after each
    h_i for a fixed s outside H.  Every second sum equals s and the rest
    are s plus a difference of the H-cycle.
    """
    n = G.order
    if n % 2 != 0:
        raise ValueError("group order must be even")
    fs = G.invariant_factors
    r = G.rank
    if n == 2:
        t = Trail(G, (G.zero(), tuple(1 if m == 2 else 0 for m in fs)), cyclic=True)
        return _verified(t, sum_labels(t).distinct_count == 1, "fewest_sums_cycle_even")
    if fs[0] == 2:
        # H drops the order-2 coordinate: rank r-1 (r >= 2 since n > 2 here)
        inner = _layered_cycle(fs[1:])
        cycle_h = [(0,) + h for h in inner]
        s = (1,) + (0,) * (r - 1)
        want = r
    else:
        # H halves the last coordinate: rank stays r
        inner = _layered_cycle(fs[:-1] + (fs[-1] // 2,))
        cycle_h = [h[:-1] + (2 * h[-1],) for h in inner]
        s = (0,) * (r - 1) + (1,)
        want = r + 1
    verts = []
    for h in cycle_h:
        verts.append(h)
        verts.append(G.sub(s, h))
    t = Trail(G, tuple(verts), cyclic=True)
    return _verified(t, sum_labels(t).distinct_count == want, "fewest_sums_cycle_even")


# -- small number of distinct sums, odd order --------------------------------

def _odd_zigzag(q: int) -> list[int]:
    # 0, 1, q-1, 2, q-2, ..., (q+1)/2: exactly three distinct sums
    seq = [0]
    for i in range(1, (q - 1) // 2 + 1):
        seq.append(i)
        seq.append(q - i)
    return seq


def fewest_sums_cycle_odd(G: GroupSpec) -> Trail:
    """Odd-order cycle with at most 2*rank(G)+1 distinct sums (exactly 3 if cyclic).

    Cyclic base is the zigzag 0, 1, q-1, 2, q-2, ...; each further factor
    q = 2n+1 stitches n+1 alternating double-passes over the inner cycle,
    adding only the two sums h_m + h_1 + 1 and h_m + h_1 + (n+1).
    """
    if G.order % 2 == 0 or G.is_trivial:
        raise ValueError("group order must be odd and >= 3")

    def build(fs: tuple[int, ...]) -> list[tuple[int, ...]]:
        if len(fs) == 1:
            return [(x,) for x in _odd_zigzag(fs[0])]
        inner = build(fs[:-1])
        q = fs[-1]
        half = (q - 1) // 2
        verts = [h + (0,) for h in inner]
        for i in range(1, half + 1):
            for j, h in enumerate(inner):
                verts.append(h + ((i if j % 2 == 0 else q - i),))
            for j, h in enumerate(inner):
                verts.append(h + ((q - i if j % 2 == 0 else i),))
        return verts

    t = Trail(G, tuple(build(G.invariant_factors)), cyclic=True)
    got = sum_labels(t).distinct_count
    ok = got <= 2 * G.rank + 1 and (not G.is_cyclic or got == 3)
    return _verified(t, ok, "fewest_sums_cycle_odd")


# -- rainbow-sum trails -------------------------------------------------------

def rainbow_sum_cycle_odd(G: GroupSpec) -> Trail:
    """A Hamiltonian cycle on an odd-order group with all sums distinct.

    For cyclic groups the natural order 0, 1, ..., n-1 already works.  In
    general, repeat a rainbow-sum cycle on the leading factors blockwise:
    for consecutive blocks shifted by h_i and h_{i+1}, the join sum
    h_i + h_{i+1} + (q-1) inherits distinctness from the inner cycle, and
    block-internal sums 2h_i + c are separated because doubling is
    injective in odd order.
    """
    if G.order % 2 == 0 or G.is_trivial:
        raise ValueError("group order must be odd and >= 3")

    def build(fs: tuple[int, ...]) -> list[tuple[int, ...]]:
        if len(fs) == 1:
            return [(x,) for x in range(fs[0])]
        inner = build(fs[:-1])
        q = fs[-1]
        return [h + (j,) for h in inner for j in range(q)]

    t = Trail(G, tuple(build(G.invariant_factors)), cyclic=True)
    return _verified(t, is_rainbow_sum_cycle(t), "rainbow_sum_cycle_odd")


def rainbow_sum_path(G: GroupSpec) -> Trail:
    """A Hamiltonian path with all |G|-1 consecutive sums distinct.

    Requires a single even invariant factor (nonzero element sum).  Splits
    G as odd H plus an even cyclic Z_{2m}, interleaves the two m-shifted
    half-passes 0,m,1,m+1,... and m,0,m+1,1,... over Z_{2m}, and walks one
    such pass per vertex of a rainbow-sum cycle on H, alternating the two
    pass shapes so the block joins fill in the one missing sum m-1.
    """
    if G.order < 2:
        raise ValueError("group order must be >= 2")
    dec = decompose_even(G)  # raises unless exactly one even factor
    two_m = dec.cyclic_order
    m = two_m // 2
    first = []
    for i in range(m):
        first.extend((i, m + i))
    second = [(x + m) % two_m for x in first]
    if dec.odd_part.is_trivial:
        heads: list[Element] = [()]
    else:
        heads = list(rainbow_sum_cycle_odd(dec.odd_part).vertices)
    verts = []
    for i, h in enumerate(heads):
        for c in first if i % 2 == 0 else second:
            verts.append(dec.merge(h, c))
    t = Trail(G, tuple(verts), cyclic=False)
    return _verified(t, is_rainbow_sum_path(t), "rainbow_sum_path")


def elementary_abelian8_cycle(G: GroupSpec) -> Trail:
    """The 8-vertex cycle over Z2^3 realizing six distinct sums."""
    if G.invariant_factors != (2, 2, 2):
        raise ValueError("group must be Z2 x Z2 x Z2")
    g1, g2, g3 = (1, 0, 0), (0, 1, 0), (0, 0, 1)
    a = G.add
    verts = (
        G.zero(), g1, g2, g3,
        a(g1, g2), a(a(g1, g2), g3), a(g1, g3), a(g2, g3),
    )
    t = Trail(G, verts, cyclic=True)
    return _verified(t, sum_labels(t).distinct_count == 6, "elementary_abelian8_cycle")


def zigzag_diff_path(G: GroupSpec) -> Trail:
    """The classical terrace 0, 1, n-1, 2, n-2, ... on an even cyclic group.

    Its n-1 differences 1, n-2, 3, n-4, ... are pairwise distinct; closing
    the path gives a cycle with n-1 distinct differences.
    """
    if not G.is_cyclic or G.is_trivial or G.order % 2 != 0:
        raise ValueError("group must be cyclic of even order")
    n = G.order
    seq = [0]
    for i in range(1, n // 2 + 1):
        seq.append(i)
        if i != n - i:
            seq.append(n - i)
    t = Trail(G, tuple((x,) for x in seq), cyclic=False)
    return _verified(t, is_rainbow_diff_path(t), "zigzag_diff_path")


# CLI-facing builder names
BUILDERS = {
    "min-diff": fewest_diffs_cycle,
    "even-smin": fewest_sums_cycle_even,
    "odd-smin": fewest_sums_cycle_odd,
    "rs-path": rainbow_sum_path,
    "rs-cycle": rainbow_sum_cycle_odd,
    "rd-zigzag": zigzag_diff_path,
    "e8-cycle": elementary_abelian8_cycle,
}
