"""Colorings, the explicit periodic coloring of ``G_{k,m,q} - v_0`` and
scanners for the structural properties proper colorings are expected to have.

Colors are ``1..C``; ``0`` marks an unassigned vertex.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional

from .graph_core import CirculantSpec, Edge, InputError, period_length

UNASSIGNED = 0


class UnsupportedParameters(InputError):
    pass


class Coloring:
    """Partial map from vertices ``0..N-1`` to colors ``1..palette``."""

    __slots__ = ("palette", "colors")

    def __init__(self, palette: int, colors: Iterable[int]):
        colors = tuple(int(c) for c in colors)
        if palette < 1:
            raise InputError("palette must be >= 1")
        for v, c in enumerate(colors):
            if c != UNASSIGNED and not 1 <= c <= palette:
                raise InputError(f"vertex {v} has color {c} outside [1, {palette}]")
        self.palette = palette
        self.colors = colors

    @classmethod
    def from_mapping(cls, palette: int, order: int, mapping: Mapping[int, int]) -> "Coloring":
        colors = [UNASSIGNED] * order
        for v, c in mapping.items():
            if not 0 <= v < order:
                raise InputError(f"vertex {v} outside [0, {order - 1}]")
            colors[v] = c
        return cls(palette, colors)

    @property
    def order(self) -> int:
        return len(self.colors)

    def __getitem__(self, v: int) -> int:
        return self.colors[v]

    def domain(self) -> list[int]:
        return [v for v, c in enumerate(self.colors) if c != UNASSIGNED]

    def is_assigned(self, v: int) -> bool:
        return self.colors[v] != UNASSIGNED

    def as_dict(self) -> dict[int, int]:
        return {v: c for v, c in enumerate(self.colors) if c != UNASSIGNED}

    def used_colors(self) -> set[int]:
        return {c for c in self.colors if c != UNASSIGNED}

    def recolor(self, v: int, c: int) -> "Coloring":
        colors = list(self.colors)
        colors[v] = c
        return Coloring(self.palette, colors)

    def permuted(self, perm: Mapping[int, int]) -> "Coloring":
        return Coloring(self.palette, [perm.get(c, c) if c else c for c in self.colors])

    def to_text(self) -> str:
        return "".join(f"{v} {c}\n" for v, c in self.as_dict().items())

    @classmethod
    def from_text(cls, text: str, order: int, palette: Optional[int] = None) -> "Coloring":
        mapping = {}
        for lineno, line in enumerate(text.splitlines(), start=1):
            if not line.strip() or line.startswith("#"):
                continue
            try:
                v, c = map(int, line.split())
            except ValueError:
                raise InputError(f"line {lineno}: expected '<vertex> <color>'") from None
            mapping[v] = c
        pal = palette or max(mapping.values(), default=1)
        return cls.from_mapping(pal, order, mapping)

    def __eq__(self, other) -> bool:
        return isinstance(other, Coloring) and (self.palette, self.colors) == (other.palette, other.colors)

    def __hash__(self) -> int:
        return hash((self.palette, self.colors))

    def __repr__(self) -> str:
        return f"Coloring(palette={self.palette}, assigned={len(self.domain())}/{self.order})"


def is_proper(g, col: Coloring) -> list[Edge]:
    """Monochromatic edges of ``g`` under ``col``; edges with an unassigned
    endpoint are skipped."""
    if col.order != g.order:
        raise InputError(f"coloring covers {col.order} vertices, graph has {g.order}")
    c = col.colors
    return [(u, v) for u, v in g.iter_edges() if c[u] and c[u] == c[v]]


# -- the periodic coloring ---------------------------------------------------


@dataclass(frozen=True)
class JensenPattern:
    k: int
    m: int
    offsets: tuple[int, ...] = field(init=False)
    starts: dict[int, tuple[int, ...]] = field(init=False, compare=False)

    def __post_init__(self):
        k, m = self.k, self.m
        if k < 5:
            raise UnsupportedParameters(f"the periodic pattern needs k >= 5, got k={k}")
        if m < 1:
            raise InputError("m must be >= 1")
        object.__setattr__(self, "offsets", tuple(range(0, 2 * m, 2)))
        starts = {}
        for c in range(1, k):
            if k % 2:
                starts[c] = ((c - 1) * m + 1,) if c % 2 else ((c - 2) * m + 2,)
            elif c % 2:
                starts[c] = ((c - 1) * m + 1, (c + k - 3) * m + 2)
            else:
                starts[c] = ((c - 2) * m + 2, (c + k - 2) * m + 1)
        object.__setattr__(self, "starts", starts)

    @property
    def period(self) -> int:
        return period_length(self.k, self.m)

    def color_blocks(self) -> dict[int, set[int]]:
        """Positions in ``[1, period]`` receiving each color."""
        return {c: {s + f for s in ss for f in self.offsets} for c, ss in self.starts.items()}

    def partitions_period(self) -> bool:
        blocks = self.color_blocks()
        total = sum(len(b) for b in blocks.values())
        union = set().union(*blocks.values())
        return total == self.period and union == set(range(1, self.period + 1))

    def residue_table(self) -> list[int]:
        """``table[i % period]`` is the color of ``v_i``."""
        n = self.period
        table = [UNASSIGNED] * n
        for c, block in self.color_blocks().items():
            for pos in block:
                if table[pos % n]:
                    raise AssertionError(f"position {pos} colored twice")
                table[pos % n] = c
        return table


def jensen_coloring(spec: CirculantSpec) -> Coloring:
    """The ``n_{k,m}``-periodic (k-1)-coloring of ``G_{k,m,q}`` with ``v_0``
    left unassigned."""
    pattern = JensenPattern(spec.k, spec.m)
    table = pattern.residue_table()
    n = pattern.period
    colors = [UNASSIGNED] + [table[i % n] for i in range(1, spec.order)]
    return Coloring(spec.k - 1, colors)


# -- analyzers ---------------------------------------------------------------


@dataclass(frozen=True)
class PeriodicSummary:
    period: int
    window: tuple[int, int]
    violations: tuple[tuple[int, int], ...]

    @property
    def is_periodic(self) -> bool:
        return not self.violations


def _check_window(col: Coloring, lo: int, hi: int, total: bool = True) -> None:
    if lo > hi or lo < 0 or hi >= col.order:
        raise InputError(f"window [{lo}, {hi}] outside [0, {col.order - 1}]")
    if total:
        gaps = [v for v in range(lo, hi + 1) if not col.colors[v]]
        if gaps:
            raise InputError(f"window contains unassigned vertices, first {gaps[0]}")


def check_periodic(col: Coloring, period: int, window: tuple[int, int]) -> PeriodicSummary:
    if period <= 0:
        raise InputError("period must be positive")
    lo, hi = window
    _check_window(col, lo, hi)
    c = col.colors
    bad = tuple((i, i + period) for i in range(lo, hi - period + 1) if c[i] != c[i + period])
    return PeriodicSummary(period, (lo, hi), bad)


def window_color_counts(col: Coloring, start: int, length: int) -> dict[int, int]:
    _check_window(col, start, start + length - 1, total=False)
    counts = Counter(col.colors[start : start + length])
    counts.pop(UNASSIGNED, None)
    return dict(sorted(counts.items()))


@dataclass(frozen=True)
class StructureReport:
    ok: bool
    t_even: Optional[int] = None
    t_odd: Optional[int] = None
    breaks: tuple[int, ...] = ()
    offending: tuple[int, ...] = ()


def detect_structure(col: Coloring, m: int, window: tuple[int, int]) -> StructureReport:
    """Check that color changes at distance two happen exactly on one even and
    one odd residue class mod ``2m``.

    An index ``i`` is a break when ``i - 2`` is also in the window and
    ``col(v_i) != col(v_{i-2})``.
    """
    lo, hi = window
    if hi - lo + 1 < 4 * m:
        raise InputError(f"window must have length >= 4m = {4 * m}")
    _check_window(col, lo, hi)
    c = col.colors
    scan = range(lo + 2, hi + 1)
    breaks = tuple(i for i in scan if c[i] != c[i - 2])
    period = 2 * m
    reps = {}
    offending: list[int] = []
    for parity in (0, 1):
        residues = {i % period for i in breaks if i % 2 == parity}
        if len(residues) != 1:
            # zero residues: no break of this parity; more: too many classes
            offending.extend(i for i in breaks if i % 2 == parity)
            if not residues:
                offending.extend(i for i in scan if i % 2 == parity)
            continue
        (res,) = residues
        expected = [i for i in scan if i % period == res]
        missing = sorted(set(expected) - set(breaks))
        if missing:
            offending.extend(missing)
            continue
        reps[parity] = res
    if offending or len(reps) != 2:
        return StructureReport(False, breaks=breaks, offending=tuple(sorted(set(offending))))
    return StructureReport(True, t_even=reps[0], t_odd=reps[1], breaks=breaks)


@dataclass(frozen=True)
class ParityVerdict:
    kind: str  # "vacuous" | "same-parity" | "mixed-parity"
    color: int
    count: int
    witnesses: tuple[int, ...] = ()


def parity_violations(col: Coloring, start: int, c: int, threshold: int, m: int) -> ParityVerdict:
    """Scan the window ``[start, start + 2m - 1]`` for color ``c``.

    If more than ``threshold`` vertices carry ``c`` they must all share a
    parity; otherwise the verdict is vacuous.  On a mixed verdict the
    witnesses are the first even and the first odd such vertex, in index
    order.
    """
    end = start + 2 * m - 1
    _check_window(col, start, end, total=False)
    hits = [i for i in range(start, end + 1) if col.colors[i] == c]
    if len(hits) <= threshold:
        return ParityVerdict("vacuous", c, len(hits))
    evens = [i for i in hits if i % 2 == 0]
    odds = [i for i in hits if i % 2 == 1]
    if evens and odds:
        return ParityVerdict("mixed-parity", c, len(hits), tuple(sorted((evens[0], odds[0]))))
    return ParityVerdict("same-parity", c, len(hits))
