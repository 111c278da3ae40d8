"""Hamiltonian cycles/paths on group subsets and their edge-label multisets.

A Trail is an ordered tuple of distinct group elements, either cyclic
(wrap-around edge included) or open.  Each edge (a, b) carries two labels:
the sum a+b and the difference b-a.  Cycles are directed: the two
orientations of the same vertex set are distinct trails.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .groups import Element, GroupSpec

__all__ = [
    "Trail",
    "LabelSet",
    "sum_labels",
    "diff_labels",
    "is_rainbow_sum_cycle",
    "is_rainbow_sum_path",
    "is_rainbow_diff_cycle",
    "is_rainbow_diff_path",
    "canonical_cycle_key",
    "trail_to_json_dict",
    "trail_from_json_dict",
]


@dataclass(frozen=True)
class Trail:
    group: GroupSpec
    vertices: tuple[Element, ...]
    cyclic: bool

    def __post_init__(self):
        verts = tuple(tuple(v) for v in self.vertices)
        object.__setattr__(self, "vertices", verts)
        if not verts:
            raise ValueError("a trail needs at least one vertex")
        if len(set(verts)) != len(verts):
            raise ValueError("trail vertices must be pairwise distinct")
        for v in verts:
            if not self.group.contains(v):
                raise ValueError(f"vertex {v} is not an element of {self.group}")

    @property
    def kind(self) -> str:
        return "cyclic" if self.cyclic else "open"

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def edge_count(self) -> int:
        return len(self.vertices) if self.cyclic else len(self.vertices) - 1

    def edges(self):
        verts = self.vertices
        for i in range(len(verts) - 1):
            yield verts[i], verts[i + 1]
        if self.cyclic:
            yield verts[-1], verts[0]

    @property
    def covers_group(self) -> bool:
        return len(self.vertices) == self.group.order


@dataclass
class LabelSet:
    """Edge labels with multiplicities."""

    labels: dict[Element, int] = field(default_factory=dict)

    @property
    def distinct_count(self) -> int:
        return len(self.labels)

    @property
    def total(self) -> int:
        return sum(self.labels.values())

    def sorted_items(self) -> list[tuple[Element, int]]:
        return sorted(self.labels.items())

    def weighted_sum(self, G: GroupSpec) -> Element:
        """Group sum of all labels counted with multiplicity."""
        acc = G.zero()
        for lab, mult in self.labels.items():
            acc = G.add(acc, G.scalar_mul(mult, lab))
        return acc


def _collect(t: Trail, label_fn) -> LabelSet:
    if len(t.vertices) < 2:
        raise ValueError("label sets need a trail with at least 2 vertices")
    out: dict[Element, int] = {}
    for a, b in t.edges():
        lab = label_fn(a, b)
        out[lab] = out.get(lab, 0) + 1
    return LabelSet(out)


def sum_labels(t: Trail) -> LabelSet:
    """Multiset of a_i + a_{i+1} over consecutive pairs (wrap iff cyclic)."""
    return _collect(t, t.group.add)


def diff_labels(t: Trail) -> LabelSet:
    """Multiset of a_{i+1} - a_i over consecutive pairs (wrap iff cyclic)."""
    return _collect(t, lambda a, b: t.group.sub(b, a))


def _require_kind(t: Trail, cyclic: bool) -> None:
    if t.cyclic != cyclic:
        want = "cyclic" if cyclic else "open"
        raise ValueError(f"predicate requires a {want} trail, got {t.kind}")


def is_rainbow_sum_cycle(t: Trail) -> bool:
    """True iff all consecutive sums along the cycle are pairwise distinct."""
    _require_kind(t, cyclic=True)
    return sum_labels(t).distinct_count == len(t.vertices)


def is_rainbow_sum_path(t: Trail) -> bool:
    _require_kind(t, cyclic=False)
    return sum_labels(t).distinct_count == len(t.vertices) - 1


def is_rainbow_diff_cycle(t: Trail) -> bool:
    """True iff all consecutive differences along the cycle are pairwise distinct."""
    _require_kind(t, cyclic=True)
    return diff_labels(t).distinct_count == len(t.vertices)


def is_rainbow_diff_path(t: Trail) -> bool:
    _require_kind(t, cyclic=False)
    return diff_labels(t).distinct_count == len(t.vertices) - 1


def canonical_cycle_key(t: Trail) -> tuple[Element, ...]:
    """Lexicographically least rotation of a cyclic trail (direction kept).

    Two cyclic trails describe the same directed cycle exactly when their
    keys coincide.
    """
    if not t.cyclic:
        raise ValueError("canonical key is defined for cyclic trails only")
    verts = t.vertices
    n = len(verts)
    return min(verts[i:] + verts[:i] for i in range(n))


def trail_to_json_dict(t: Trail) -> dict:
    """JSON-friendly form; cyclic trails are rotated to their canonical key."""
    verts = canonical_cycle_key(t) if t.cyclic else t.vertices
    return {
        "group": list(t.group.invariant_factors),
        "kind": t.kind,
        "vertices": [list(v) for v in verts],
    }


def trail_from_json_dict(d: dict) -> Trail:
    G = GroupSpec(tuple(d["group"]))
    verts = tuple(tuple(v) for v in d["vertices"])
    return Trail(G, verts, cyclic=d["kind"] == "cyclic")
