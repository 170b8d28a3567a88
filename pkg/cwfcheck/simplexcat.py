"""
Semi-Simplex Category

Combinatorics of Δ₊, the category of finite ordinals [n] = {0, ..., n} and
strictly increasing maps:

1. MonotoneMap values and their composition
2. Face maps d_i : [n-1] -> [n]
3. Standard simplexes Δⁿ and horns Λⁿₖ as finite semisimplicial sets

Cells of Δⁿ are identified with their vertex sets, so every cell has a
canonical name (simplex_name) and enumeration order is lexicographic.
"""

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import TYPE_CHECKING, List, Optional, Sequence, Tuple

from .errors import SimplexError

if TYPE_CHECKING:
    from .finsset import FinSSet, SSetMap

logger = logging.getLogger(__name__)

Vertices = Tuple[int, ...]


# =============================================================================
# MONOTONE MAPS
# =============================================================================

@dataclass(frozen=True)
class MonotoneMap:
    """A strictly increasing map [dom] -> [cod]"""
    dom: int
    cod: int
    values: Vertices

    def __post_init__(self):
        if self.dom < 0 or self.cod < 0:
            raise SimplexError(f"negative ordinal in map [{self.dom}] -> [{self.cod}]")
        if len(self.values) != self.dom + 1:
            raise SimplexError(
                f"map from [{self.dom}] needs {self.dom + 1} values, got {len(self.values)}"
            )
        for a, b in zip(self.values, self.values[1:]):
            if a >= b:
                raise SimplexError(f"values {self.values} are not strictly increasing")
        for v in self.values:
            if not 0 <= v <= self.cod:
                raise SimplexError(f"value {v} outside [{self.cod}]")

    def __call__(self, k: int) -> int:
        return self.values[k]

    def __str__(self) -> str:
        return f"[{self.dom}]->[{self.cod}]{list(self.values)}"


def identity_map(n: int) -> MonotoneMap:
    """The identity on [n]"""
    return MonotoneMap(n, n, tuple(range(n + 1)))


def enumerate_monotone(i: int, j: int) -> List[MonotoneMap]:
    """
    All strictly monotone maps [i] -> [j], lexicographic in their values.

    There are C(j+1, i+1) of them; none when i > j.
    """
    if i < 0 or j < 0:
        raise SimplexError(f"ordinals must be non-negative, got [{i}] and [{j}]")
    return [MonotoneMap(i, j, values) for values in combinations(range(j + 1), i + 1)]


def compose_monotone(g: MonotoneMap, f: MonotoneMap) -> MonotoneMap:
    """g ∘ f, defined when f.cod == g.dom"""
    if f.cod != g.dom:
        raise SimplexError(f"cannot compose {g} after {f}: [{f.cod}] != [{g.dom}]")
    return MonotoneMap(f.dom, g.cod, tuple(g.values[v] for v in f.values))


def face_map(n: int, i: int) -> MonotoneMap:
    """d_i : [n-1] -> [n], the injection omitting i"""
    if n < 1:
        raise SimplexError(f"face maps need n >= 1, got {n}")
    if not 0 <= i <= n:
        raise SimplexError(f"face index {i} out of range for [{n}]")
    return MonotoneMap(n - 1, n, tuple(v for v in range(n + 1) if v != i))


# =============================================================================
# CELL SHAPES
# =============================================================================

def simplex_name(values: Sequence[int]) -> str:
    """Canonical name of the cell of Δⁿ spanned by the given vertices"""
    return "-".join(str(v) for v in values)


def simplex_cells(n: int, cap: int) -> List[List[Vertices]]:
    """Vertex sets of Δⁿ per level 0..cap"""
    if cap < 0:
        raise SimplexError(f"cap must be non-negative, got {cap}")
    return [[m.values for m in enumerate_monotone(level, n)] for level in range(cap + 1)]


def boundary_cells(n: int) -> List[List[Vertices]]:
    """Vertex sets of ∂Δⁿ, levels 0..n-1"""
    if n < 1:
        raise SimplexError(f"boundary needs n >= 1, got {n}")
    return simplex_cells(n, n - 1)


def horn_cells(n: int, k: int, cap: Optional[int] = None) -> List[List[Vertices]]:
    """
    Vertex sets of Λⁿₖ per level 0..cap (cap defaults to n-1).

    Removes the top cell of Δⁿ and its face opposite vertex k.
    """
    if n < 1:
        raise SimplexError(f"horns need n >= 1, got {n}")
    if not 0 <= k <= n:
        raise SimplexError(f"horn index {k} out of range for [{n}]")
    if cap is None:
        cap = n - 1
    missing = {tuple(range(n + 1)), face_map(n, k).values}
    return [
        [cell for cell in level if cell not in missing]
        for level in simplex_cells(n, cap)
    ]


def _shape_sset(shape: List[List[Vertices]]) -> "FinSSet":
    """Build a FinSSet from per-level vertex sets closed under faces"""
    from .finsset import FinSSet

    index = [{cell: pos for pos, cell in enumerate(level)} for level in shape]
    faces = [tuple(() for _ in shape[0])]
    for level in range(1, len(shape)):
        faces.append(tuple(
            tuple(index[level - 1][cell[:i] + cell[i + 1:]] for i in range(level + 1))
            for cell in shape[level]
        ))
    cells = tuple(tuple(simplex_name(cell) for cell in level) for level in shape)
    return FinSSet(cells, tuple(faces))


def standard_simplex(n: int, cap: int) -> "FinSSet":
    """Δⁿ truncated at level cap; level m has C(n+1, m+1) cells"""
    return _shape_sset(simplex_cells(n, cap))


def horn(n: int, k: int, cap: int) -> "FinSSet":
    """Λⁿₖ truncated at level cap"""
    if cap < 0:
        raise SimplexError(f"cap must be non-negative, got {cap}")
    return _shape_sset(horn_cells(n, k, cap))


def horn_inclusion(n: int, k: int, cap: int) -> "SSetMap":
    """The level-wise embedding Λⁿₖ -> Δⁿ, both truncated at cap"""
    from .finsset import SSetMap

    source_shape = horn_cells(n, k, cap)
    target_shape = simplex_cells(n, cap)
    level_maps = []
    for source_level, target_level in zip(source_shape, target_shape):
        position = {cell: pos for pos, cell in enumerate(target_level)}
        level_maps.append(tuple(position[cell] for cell in source_level))
    return SSetMap(_shape_sset(source_shape), _shape_sset(target_shape), tuple(level_maps))
