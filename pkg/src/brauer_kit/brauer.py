"""Brauer configurations and their closed-form algebra invariants.

A configuration is an ordered list of polygons; each polygon is a word
(an ordered multiset) over opaque vertex labels.  The list order is the
orientation used to build successor sequences.  Every vertex is kept
non-truncated: valency-1 vertices carry multiplicity 2, all others
multiplicity 1.

The induced quiver has one node per polygon.  Each vertex contributes one
arrow per covering in the circular order of its occurrences; a valency-1
vertex contributes a single loop at its polygon.  From valencies, the
multiplicity rule and the loop census, the dimension of the algebra and of
its center follow in exact integer arithmetic.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence


class ConfigError(ValueError):
    """Structurally invalid polygon, configuration or configuration file."""


class UnknownVertexError(KeyError):
    """An operation named a vertex that is not in the configuration."""


class DisconnectedError(ValueError):
    """Center dimension requested for a disconnected configuration.

    ``components`` holds the polygon indices of each connected component of
    the polygon-vertex incidence graph.
    """

    def __init__(self, components: Sequence[Sequence[int]]):
        self.components = tuple(tuple(c) for c in components)
        listed = "; ".join("{%s}" % ", ".join(map(str, c)) for c in self.components)
        super().__init__(f"configuration is disconnected: polygon components {listed}")


# ---------------------------------------------------------------------------
# Data types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Polygon:
    """One word of a configuration.

    ``index`` is the 0-based position in the configuration, ``word`` the
    ordered vertex occurrences (repetitions allowed).  ``label`` is an
    optional permutation of word positions (1-based); it is carried as
    metadata only and never affects any computed invariant.
    """

    index: int
    word: tuple[str, ...]
    label: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.index < 0:
            raise ConfigError(f"polygon index {self.index} is negative")
        if len(self.word) < 2:
            raise ConfigError(
                f"polygon {self.index}: word length {len(self.word)} < 2"
            )
        if any(not isinstance(v, str) or not v for v in self.word):
            raise ConfigError(f"polygon {self.index}: empty vertex label")
        if self.label is not None:
            if sorted(self.label) != list(range(1, len(self.word) + 1)):
                raise ConfigError(
                    f"polygon {self.index}: label is not a permutation "
                    f"of 1..{len(self.word)}"
                )

    def frequencies(self) -> Counter:
        """Occurrence count of each vertex within this word."""
        return Counter(self.word)


@dataclass(frozen=True)
class BrauerConfiguration:
    """An ordered tuple of polygons; polygon order fixes successor sequences."""

    polygons: tuple[Polygon, ...]

    def __post_init__(self):
        if not self.polygons:
            raise ConfigError("configuration has no polygons")
        for i, poly in enumerate(self.polygons):
            if poly.index != i:
                raise ConfigError(
                    f"polygon at position {i} carries index {poly.index}"
                )

    @property
    def vertex_universe(self) -> tuple[str, ...]:
        """All vertices, ordered by first occurrence."""
        seen: dict[str, None] = {}
        for poly in self.polygons:
            for v in poly.word:
                seen.setdefault(v, None)
        return tuple(seen)


def config_from_words(
    words: Iterable[Sequence[str]],
    labels: Sequence[Sequence[int] | None] | None = None,
) -> BrauerConfiguration:
    """Build a configuration from an iterable of vertex-label sequences."""
    words = [tuple(w) for w in words]
    if labels is None:
        labels = [None] * len(words)
    if len(labels) != len(words):
        raise ConfigError("labels and words differ in length")
    polygons = tuple(
        Polygon(i, w, tuple(lab) if lab is not None else None)
        for i, (w, lab) in enumerate(zip(words, labels))
    )
    return BrauerConfiguration(polygons)


@dataclass(frozen=True)
class SuccessorSequence:
    """All occurrences of one vertex, ordered by polygon then word position."""

    vertex: str
    entries: tuple[tuple[int, int], ...]  # (polygon index, position in word)


@dataclass(frozen=True)
class Arrow:
    source: int
    target: int
    vertex: str


@dataclass(frozen=True)
class Quiver:
    """One node per polygon; arrows from circular successor orders."""

    nodes: tuple[int, ...]
    arrows: tuple[Arrow, ...]

    @property
    def loop_count(self) -> int:
        return sum(1 for a in self.arrows if a.source == a.target)


@dataclass(frozen=True)
class AlgebraInvariants:
    """Dimension data of the algebra induced by a configuration.

    The center formula is stated for connected configurations; on
    disconnected input ``dim_center`` still carries the formula value
    (several published reference figures rely on exactly that reading) and
    ``connected`` flags the caveat.
    """

    dim_lambda: int
    dim_center: int
    loops: int
    polygon_count: int
    vertex_count: int
    mu_sum: int
    valency_histogram: Mapping[int, int]
    connected: bool = True

    def to_json_dict(self) -> dict:
        """Canonical JSON form with stable key order."""
        out: dict = {
            "dimLambda": self.dim_lambda,
            "dimCenter": self.dim_center,
            "loops": self.loops,
            "polygons": self.polygon_count,
            "vertices": self.vertex_count,
            "valencyHistogram": {
                str(k): self.valency_histogram[k]
                for k in sorted(self.valency_histogram)
            },
        }
        if not self.connected:
            out["connected"] = False
        return out


def invariants_json(inv: AlgebraInvariants) -> str:
    return json.dumps(inv.to_json_dict(), indent=2) + "\n"


# ---------------------------------------------------------------------------
# Multiset helpers
# ---------------------------------------------------------------------------

def multiset_union(a: Mapping, b: Mapping) -> dict:
    """Per-key maximum of two frequency mappings."""
    out = dict(a)
    for k, f in b.items():
        if f > out.get(k, 0):
            out[k] = f
    return out


def multiset_intersection(a: Mapping, b: Mapping) -> dict:
    """Per-key minimum, restricted to keys present in both mappings."""
    return {k: min(f, b[k]) for k, f in a.items() if k in b and min(f, b[k]) > 0}


# ---------------------------------------------------------------------------
# Valency, successor sequences, quiver
# ---------------------------------------------------------------------------

def _valencies(config: BrauerConfiguration) -> Counter:
    counts: Counter = Counter()
    for poly in config.polygons:
        counts.update(poly.word)
    return counts


def valency(config: BrauerConfiguration, vertex: str) -> int:
    """Total number of occurrences of ``vertex`` over all polygon words."""
    val = _valencies(config).get(vertex, 0)
    if val == 0:
        raise UnknownVertexError(vertex)
    return val


def mu(config: BrauerConfiguration, vertex: str) -> int:
    """Multiplicity: 2 for valency-1 vertices, 1 otherwise."""
    return 2 if valency(config, vertex) == 1 else 1


def successor_sequence(config: BrauerConfiguration, vertex: str) -> SuccessorSequence:
    """Occurrences of ``vertex`` ordered by (polygon index, word position)."""
    entries = [
        (poly.index, pos)
        for poly in config.polygons
        for pos, v in enumerate(poly.word)
        if v == vertex
    ]
    if not entries:
        raise UnknownVertexError(vertex)
    return SuccessorSequence(vertex, tuple(entries))


def build_quiver(config: BrauerConfiguration) -> Quiver:
    """Construct the quiver induced by the configuration.

    A vertex of valency v >= 2 yields v arrows, one per consecutive pair of
    its successor sequence including the wrap-around closing the circular
    order.  A valency-1 vertex yields a single loop at its polygon.
    """
    arrows: list[Arrow] = []
    for vertex in config.vertex_universe:
        seq = successor_sequence(config, vertex).entries
        if len(seq) == 1:
            arrows.append(Arrow(seq[0][0], seq[0][0], vertex))
            continue
        for i, (src, _) in enumerate(seq):
            tgt = seq[(i + 1) % len(seq)][0]
            arrows.append(Arrow(src, tgt, vertex))
    return Quiver(tuple(range(len(config.polygons))), tuple(arrows))


# ---------------------------------------------------------------------------
# Connectivity
# ---------------------------------------------------------------------------

def polygon_components(config: BrauerConfiguration) -> list[list[int]]:
    """Connected components of the polygon-vertex incidence graph,
    as groups of polygon indices."""
    by_vertex: dict[str, list[int]] = {}
    for poly in config.polygons:
        for v in set(poly.word):
            by_vertex.setdefault(v, []).append(poly.index)

    n = len(config.polygons)
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for members in by_vertex.values():
        root = find(members[0])
        for other in members[1:]:
            parent[find(other)] = root

    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values())


def is_connected(config: BrauerConfiguration) -> bool:
    return len(polygon_components(config)) == 1


# ---------------------------------------------------------------------------
# Dimensions
# ---------------------------------------------------------------------------

def dim_lambda(config: BrauerConfiguration) -> int:
    """Dimension of the induced algebra:
    2 * #polygons + sum over vertices of val * (val * mu - 1)."""
    valencies = _valencies(config)
    total = 2 * len(config.polygons)
    for val in valencies.values():
        m = 2 if val == 1 else 1
        total += val * (val * m - 1)
    return total


def dim_center(config: BrauerConfiguration, require_connected: bool = True) -> int:
    """Dimension of the center of the induced algebra:
    1 + #polygons - #vertices + sum(mu) + #loops - #(valency-1 vertices).

    The formula is stated for connected configurations, so disconnected
    input raises by default; pass ``require_connected=False`` to apply it
    verbatim anyway.
    """
    if require_connected:
        comps = polygon_components(config)
        if len(comps) > 1:
            raise DisconnectedError(comps)
    valencies = _valencies(config)
    val_one = sum(1 for v in valencies.values() if v == 1)
    mu_sum = sum(2 if v == 1 else 1 for v in valencies.values())
    loops = build_quiver(config).loop_count
    return 1 + len(config.polygons) - len(valencies) + mu_sum + loops - val_one


def invariants(config: BrauerConfiguration) -> AlgebraInvariants:
    """Full invariant bundle; disconnected input is flagged rather than
    rejected, with the center formula applied verbatim."""
    valencies = _valencies(config)
    histogram: Counter = Counter(valencies.values())
    connected = is_connected(config)
    return AlgebraInvariants(
        dim_lambda=dim_lambda(config),
        dim_center=dim_center(config, require_connected=False),
        loops=build_quiver(config).loop_count,
        polygon_count=len(config.polygons),
        vertex_count=len(valencies),
        mu_sum=sum(2 if v == 1 else 1 for v in valencies.values()),
        valency_histogram=dict(sorted(histogram.items())),
        connected=connected,
    )


def invariants_from_histogram(
    polygon_count: int,
    valency_histogram: Mapping[int, int],
    loops: int,
) -> AlgebraInvariants:
    """Invariants from summary data alone: a valency histogram, the polygon
    count and a loop census.  Assumes the standard multiplicity rule and a
    connected configuration."""
    if polygon_count < 1:
        raise ConfigError("polygon count must be positive")
    histogram = {int(k): int(v) for k, v in valency_histogram.items()}
    if any(k < 1 or v < 0 for k, v in histogram.items()):
        raise ConfigError("histogram entries must map valency >= 1 to count >= 0")
    vertex_count = sum(histogram.values())
    val_one = histogram.get(1, 0)
    mu_sum = vertex_count + val_one
    dim_l = 2 * polygon_count + sum(
        count * val * (val * (2 if val == 1 else 1) - 1)
        for val, count in histogram.items()
    )
    dim_z = 1 + polygon_count - vertex_count + mu_sum + loops - val_one
    return AlgebraInvariants(
        dim_lambda=dim_l,
        dim_center=dim_z,
        loops=loops,
        polygon_count=polygon_count,
        vertex_count=vertex_count,
        mu_sum=mu_sum,
        valency_histogram=dict(sorted(histogram.items())),
    )


# ---------------------------------------------------------------------------
# Center identity for frequency-one configurations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CenterIdentityVerdict:
    """Comparison of the center dimension against #polygons + #valency-1 + 1."""

    polygon_count: int
    val_one_count: int
    claimed: int
    actual: int

    @property
    def equal(self) -> bool:
        return self.claimed == self.actual


def check_center_identity(config: BrauerConfiguration) -> CenterIdentityVerdict:
    """Verify dim Z = m + n + 1 where m counts polygons and n the valency-1
    vertices.  Requires every within-polygon frequency to equal 1 and a
    connected configuration."""
    for poly in config.polygons:
        for v, f in poly.frequencies().items():
            if f > 1:
                raise ConfigError(
                    f"polygon {poly.index}: vertex {v!r} occurs {f} times; "
                    "the identity requires within-polygon frequency 1"
                )
    valencies = _valencies(config)
    m = len(config.polygons)
    n = sum(1 for v in valencies.values() if v == 1)
    return CenterIdentityVerdict(m, n, m + n + 1, dim_center(config))


# ---------------------------------------------------------------------------
# Configuration file format
# ---------------------------------------------------------------------------
# Line-oriented: one polygon per line, whitespace-separated vertex labels,
# '#' starts a comment, and an optional "label:" suffix gives a permutation
# of word positions as space-separated 1-based integers.

def parse_config(text: str) -> BrauerConfiguration:
    words: list[tuple[str, ...]] = []
    labels: list[tuple[int, ...] | None] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        label: tuple[int, ...] | None = None
        if "label:" in line:
            head, _, tail = line.partition("label:")
            try:
                label = tuple(int(tok) for tok in tail.split())
            except ValueError:
                raise ConfigError(f"line {lineno}: malformed label permutation")
            line = head.strip()
        tokens = tuple(line.split())
        if len(tokens) < 2:
            raise ConfigError(f"line {lineno}: polygon needs at least 2 vertices")
        words.append(tokens)
        labels.append(label)
    if not words:
        raise ConfigError("no polygons found")
    try:
        return config_from_words(words, labels)
    except ConfigError as exc:
        raise ConfigError(str(exc)) from None


def format_config(config: BrauerConfiguration) -> str:
    lines = []
    for poly in config.polygons:
        line = " ".join(poly.word)
        if poly.label is not None:
            line += " label: " + " ".join(map(str, poly.label))
        lines.append(line)
    return "\n".join(lines) + "\n"
