"""
Finite Semisimplicial Sets

Finite truncated semisimplicial sets and the set-level versions of the
higher-categorical conditions on them:

1. Validation of face references and the semisimplicial identities
2. Horn instances and their fillers
3. The Segal condition, split into existence and uniqueness failures
4. Composition extracted from unique Λ²₁ fillers, with associativity
5. Inner / left / right / Kan fibration classification of maps
6. Equivalence edges, identity structures, terminal vertices, univalence
7. Opposites and coskeletal extension

At set level a type is contractible exactly when it has one element, so
every "contractible type of fillers" below is "exactly one filler".
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property, lru_cache
from typing import Any, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from .errors import PreconditionError, SSetError
from .simplexcat import Vertices, boundary_cells, face_map, horn_cells

logger = logging.getLogger(__name__)


# =============================================================================
# DATA MODEL
# =============================================================================

@dataclass(frozen=True)
class FinSSet:
    """
    A finite semisimplicial set truncated at max_level.

    cells[n] lists the names of the n-cells; faces[n][c] holds the n+1
    indices (into level n-1) of the faces of cell c, entry i being the face
    that omits vertex i. Level 0 cells have empty face tuples.

    Duplicate cells over the same boundary are allowed; face indices and the
    semisimplicial identities are checked by validate(), not here.
    """
    cells: Tuple[Tuple[str, ...], ...]
    faces: Tuple[Tuple[Tuple[int, ...], ...], ...]

    def __post_init__(self):
        if not self.cells:
            raise SSetError("a semisimplicial set needs at least level 0")
        if len(self.cells) != len(self.faces):
            raise SSetError(
                f"{len(self.cells)} cell levels but {len(self.faces)} face levels"
            )
        for n, (names, face_rows) in enumerate(zip(self.cells, self.faces)):
            if len(names) != len(face_rows):
                raise SSetError(f"level {n}: {len(names)} cells but {len(face_rows)} face rows")
            if len(set(names)) != len(names):
                raise SSetError(f"level {n}: duplicate cell names")
            arity = n + 1 if n > 0 else 0
            for name, row in zip(names, face_rows):
                if len(row) != arity:
                    raise SSetError(f"cell {name} at level {n} needs {arity} faces, got {len(row)}")

    # -------------------------------------------------------------------------
    # Construction
    # -------------------------------------------------------------------------

    @classmethod
    def build(
        cls,
        levels: Sequence[Union[Sequence[str], Mapping[str, Sequence[str]]]],
    ) -> "FinSSet":
        """
        Build from names: levels[0] lists vertex names, levels[n] maps each
        n-cell name to the ordered names of its n+1 faces.
        """
        if not levels:
            raise SSetError("a semisimplicial set needs at least level 0")
        cells: List[Tuple[str, ...]] = [tuple(levels[0])]
        faces: List[Tuple[Tuple[int, ...], ...]] = [tuple(() for _ in levels[0])]
        for n in range(1, len(levels)):
            level = levels[n]
            if not isinstance(level, Mapping):
                raise SSetError(f"level {n} must map cell names to face lists")
            below = {name: pos for pos, name in enumerate(cells[n - 1])}
            rows = []
            for name, face_names in level.items():
                try:
                    rows.append(tuple(below[face] for face in face_names))
                except KeyError as e:
                    raise SSetError(f"cell {name} at level {n} has unknown face {e.args[0]}")
            cells.append(tuple(level.keys()))
            faces.append(tuple(rows))
        return cls(tuple(cells), tuple(faces))

    # -------------------------------------------------------------------------
    # Access
    # -------------------------------------------------------------------------

    @property
    def max_level(self) -> int:
        return len(self.cells) - 1

    def level_size(self, n: int) -> int:
        if 0 <= n <= self.max_level:
            return len(self.cells[n])
        return 0

    def cell_counts(self) -> List[int]:
        return [len(level) for level in self.cells]

    def face(self, n: int, c: int, i: int) -> int:
        return self.faces[n][c][i]

    def name(self, n: int, c: int) -> str:
        return self.cells[n][c]

    def index(self, n: int, name: str) -> int:
        try:
            return self._name_index[n][name]
        except (IndexError, KeyError):
            raise SSetError(f"no cell named {name!r} at level {n}")

    def source(self, e: int) -> int:
        """Source vertex of edge e (the face omitting vertex 1)"""
        return self.faces[1][e][1]

    def target(self, e: int) -> int:
        """Target vertex of edge e (the face omitting vertex 0)"""
        return self.faces[1][e][0]

    def edges_between(self, x: int, y: int) -> List[int]:
        return self._edges_by_endpoints.get((x, y), [])

    def cells_over(self, n: int, boundary: Tuple[int, ...]) -> List[int]:
        """n-cells whose full face tuple equals boundary"""
        if not 1 <= n <= self.max_level:
            return []
        return self._cells_by_boundary[n].get(boundary, [])

    def truncate(self, level: int) -> "FinSSet":
        if level < 0:
            raise SSetError(f"cannot truncate at negative level {level}")
        return FinSSet(self.cells[:level + 1], self.faces[:level + 1])

    @cached_property
    def _name_index(self) -> List[Dict[str, int]]:
        return [{name: pos for pos, name in enumerate(level)} for level in self.cells]

    @cached_property
    def _cells_by_boundary(self) -> List[Dict[Tuple[int, ...], List[int]]]:
        index: List[Dict[Tuple[int, ...], List[int]]] = [{}]
        for n in range(1, len(self.cells)):
            table: Dict[Tuple[int, ...], List[int]] = {}
            for c, row in enumerate(self.faces[n]):
                table.setdefault(row, []).append(c)
            index.append(table)
        return index

    @cached_property
    def _edges_by_endpoints(self) -> Dict[Tuple[int, int], List[int]]:
        table: Dict[Tuple[int, int], List[int]] = {}
        if self.max_level >= 1:
            for e, (tgt, src) in enumerate(self.faces[1]):
                table.setdefault((src, tgt), []).append(e)
        return table


def cell_vertices(A: FinSSet, n: int, c: int) -> Tuple[int, ...]:
    """The n+1 vertices of an n-cell, in order"""
    if n == 0:
        return (c,)
    # face n keeps vertices 0..n-1, face 0 keeps 1..n
    head = cell_vertices(A, n - 1, A.face(n, c, n))
    last = cell_vertices(A, n - 1, A.face(n, c, 0))[-1]
    return head + (last,)


@dataclass(frozen=True)
class SSetMap:
    """A level-wise map of cells, defined up to the smaller max_level"""
    source: FinSSet
    target: FinSSet
    level_maps: Tuple[Tuple[int, ...], ...]

    @property
    def levels(self) -> int:
        return min(self.source.max_level, self.target.max_level)

    def __call__(self, n: int, c: int) -> int:
        return self.level_maps[n][c]


def check_map(m: SSetMap) -> List[str]:
    """Violations of shape, index range and face commutation for m"""
    problems = []
    if len(m.level_maps) != m.levels + 1:
        problems.append(f"map defines {len(m.level_maps)} levels, expected {m.levels + 1}")
        return problems
    for n, row in enumerate(m.level_maps):
        if len(row) != m.source.level_size(n):
            problems.append(f"level {n}: {len(row)} images for {m.source.level_size(n)} cells")
            continue
        for c, image in enumerate(row):
            if not 0 <= image < m.target.level_size(n):
                problems.append(f"level {n}: cell {m.source.name(n, c)} maps out of range")
    if problems:
        return problems
    for n in range(1, m.levels + 1):
        for c in range(m.source.level_size(n)):
            image = m(n, c)
            for i in range(n + 1):
                if m(n - 1, m.source.face(n, c, i)) != m.target.face(n, image, i):
                    problems.append(
                        f"level {n}: map does not commute with face {i} "
                        f"of {m.source.name(n, c)}"
                    )
    return problems


def ensure_map(m: SSetMap) -> SSetMap:
    problems = check_map(m)
    if problems:
        raise SSetError(f"invalid sset map: {problems[0]}", {"violations": problems})
    return m


def identity_sset_map(A: FinSSet) -> SSetMap:
    return SSetMap(A, A, tuple(tuple(range(len(level))) for level in A.cells))


# =============================================================================
# VALIDATION
# =============================================================================

@dataclass
class Violation:
    """A single invariant violation found by validate()"""
    level: int
    cell: str
    kind: str
    detail: str

    def to_dict(self) -> Dict[str, Any]:
        return {"level": self.level, "cell": self.cell, "kind": self.kind, "detail": self.detail}


@dataclass
class SSetValidation:
    """Result of validate()"""
    violations: List[Violation] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.violations


def validate(A: FinSSet) -> SSetValidation:
    """Check face references and the identities d_i d_j = d_{j-1} d_i for i < j"""
    result = SSetValidation()
    for n in range(1, A.max_level + 1):
        below = A.level_size(n - 1)
        for c in range(A.level_size(n)):
            for i, f in enumerate(A.faces[n][c]):
                if not 0 <= f < below:
                    result.violations.append(Violation(
                        n, A.name(n, c), "face-index", f"face {i} refers to missing cell {f}"
                    ))
    if result.violations:
        return result
    for n in range(2, A.max_level + 1):
        for c in range(A.level_size(n)):
            for j in range(1, n + 1):
                for i in range(j):
                    lhs = A.face(n - 1, A.face(n, c, j), i)
                    rhs = A.face(n - 1, A.face(n, c, i), j - 1)
                    if lhs != rhs:
                        result.violations.append(Violation(
                            n, A.name(n, c), "identity",
                            f"d{i}d{j} = {A.name(n - 2, lhs)} but d{j - 1}d{i} = {A.name(n - 2, rhs)}"
                        ))
    if result.violations:
        logger.debug(f"validate: {len(result.violations)} violations")
    return result


def ensure_valid(A: FinSSet) -> FinSSet:
    report = validate(A)
    if not report.valid:
        first = report.violations[0]
        raise SSetError(
            f"invalid semisimplicial set: {first.cell} at level {first.level}: {first.detail}",
            {"violations": [v.to_dict() for v in report.violations]},
        )
    return A


# =============================================================================
# HORNS AND FILLERS
# =============================================================================

@dataclass(frozen=True)
class HornInstance:
    """
    A face-commuting assignment Λⁿₖ -> A.

    assignment[m][j] is the A-cell assigned to the j-th m-cell of the horn,
    horn cells being ordered as in simplexcat.horn_cells(n, k).
    """
    n: int
    k: int
    assignment: Tuple[Tuple[int, ...], ...]

    def face_cell(self, i: int) -> int:
        """A-cell assigned to horn face i (the face omitting vertex i, i != k)"""
        if i == self.k:
            raise SSetError(f"face {i} is the missing face of this horn")
        shape = _shape_index(self.n, self.k)
        return self.assignment[self.n - 1][shape[self.n - 1][face_map(self.n, i).values]]

    def describe(self, A: FinSSet) -> List[str]:
        """Names of the assigned (n-1)-cells, face order, '_' for the missing face"""
        return [
            "_" if i == self.k else A.name(self.n - 1, self.face_cell(i))
            for i in range(self.n + 1)
        ]


@lru_cache(maxsize=None)
def _shape_index(n: int, k: int) -> Tuple[Dict[Vertices, int], ...]:
    return tuple(
        {cell: pos for pos, cell in enumerate(level)} for level in horn_cells(n, k)
    )


def _shape_instances(A: FinSSet, shape: List[List[Vertices]]) -> Iterator[Tuple[Tuple[int, ...], ...]]:
    """
    All face-commuting assignments of a face-closed shape of Δⁿ into A,
    lexicographic in the flattened (level, index) order.
    """
    if len(shape) - 1 > A.max_level:
        return
    index = [{cell: pos for pos, cell in enumerate(level)} for level in shape]
    shape_faces = [[()] * len(shape[0])]
    for m in range(1, len(shape)):
        shape_faces.append([
            tuple(index[m - 1][cell[:i] + cell[i + 1:]] for i in range(m + 1))
            for cell in shape[m]
        ])
    slots = [(m, j) for m in range(len(shape)) for j in range(len(shape[m]))]
    assignment: List[List[int]] = [[-1] * len(level) for level in shape]

    def candidates(m: int, j: int) -> List[int]:
        if m == 0:
            return list(range(A.level_size(0)))
        boundary = tuple(assignment[m - 1][f] for f in shape_faces[m][j])
        return A.cells_over(m, boundary)

    def extend(pos: int) -> Iterator[Tuple[Tuple[int, ...], ...]]:
        if pos == len(slots):
            yield tuple(tuple(level) for level in assignment)
            return
        m, j = slots[pos]
        for cell in candidates(m, j):
            assignment[m][j] = cell
            yield from extend(pos + 1)
        assignment[m][j] = -1

    yield from extend(0)


def horn_instances(A: FinSSet, n: int, k: int) -> List[HornInstance]:
    """All maps Λⁿₖ -> A, enumerated deterministically"""
    if n > A.max_level:
        raise PreconditionError(f"horn level {n} exceeds max_level {A.max_level}")
    shape = horn_cells(n, k)
    return [HornInstance(n, k, assignment) for assignment in _shape_instances(A, shape)]


def fillers(A: FinSSet, h: HornInstance) -> List[Tuple[int, int]]:
    """
    All (missing face, top cell) pairs extending h to Δⁿ -> A.

    The missing face is determined by the top cell, so each n-cell whose
    faces agree with the horn yields exactly one pair.
    """
    if h.n > A.max_level:
        raise PreconditionError(f"horn level {h.n} exceeds max_level {A.max_level}")
    required = {i: h.face_cell(i) for i in range(h.n + 1) if i != h.k}
    result = []
    for c, row in enumerate(A.faces[h.n]):
        if all(row[i] == cell for i, cell in required.items()):
            result.append((row[h.k], c))
    return result


# =============================================================================
# SEGAL CONDITION
# =============================================================================

@dataclass
class HornCheck:
    """Filler count of one inner horn instance"""
    n: int
    k: int
    horn: List[str]
    fillers: int

    def to_dict(self) -> Dict[str, Any]:
        return {"n": self.n, "k": self.k, "horn": self.horn, "fillers": self.fillers}


@dataclass
class SegalReport:
    """Result of segal_report(); passes iff every count is exactly one"""
    up_to: int
    checks: List[HornCheck] = field(default_factory=list)

    @property
    def existence_failures(self) -> List[HornCheck]:
        return [c for c in self.checks if c.fillers == 0]

    @property
    def uniqueness_failures(self) -> List[HornCheck]:
        return [c for c in self.checks if c.fillers >= 2]

    @property
    def passed(self) -> bool:
        return all(c.fillers == 1 for c in self.checks)

    def failures_at(self, n: int) -> List[HornCheck]:
        return [c for c in self.checks if c.n == n and c.fillers != 1]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "up_to": self.up_to,
            "passed": self.passed,
            "horns_checked": len(self.checks),
            "existence_failures": [c.to_dict() for c in self.existence_failures],
            "uniqueness_failures": [c.to_dict() for c in self.uniqueness_failures],
        }


def segal_report(A: FinSSet, up_to: int) -> SegalReport:
    """Count fillers of every inner horn Λⁿₖ -> A, 2 <= n <= up_to, 0 < k < n"""
    if up_to > A.max_level:
        raise PreconditionError(f"segal level {up_to} exceeds max_level {A.max_level}")
    report = SegalReport(up_to)
    for n in range(2, up_to + 1):
        for k in range(1, n):
            for h in horn_instances(A, n, k):
                report.checks.append(HornCheck(n, k, h.describe(A), len(fillers(A, h))))
    logger.debug(
        f"segal_report: {len(report.checks)} inner horns up to level {up_to}, "
        f"{len(report.existence_failures)} without and "
        f"{len(report.uniqueness_failures)} with several fillers"
    )
    return report


@lru_cache(maxsize=256)
def _segal_passes(A: FinSSet, level: int) -> bool:
    return segal_report(A, level).passed


def _require_segal(A: FinSSet, operation: str, through: int = 3) -> None:
    if A.max_level < 2:
        raise PreconditionError(f"{operation} needs cells up to level 2")
    level = min(through, A.max_level)
    if not _segal_passes(A, level):
        raise PreconditionError(f"{operation} needs the Segal condition through level {level}")


# =============================================================================
# COMPOSITION
# =============================================================================

@dataclass
class SegalComposition:
    """
    Composition read off unique Λ²₁ fillers.

    table[(g, f)] is the edge g ∘ f (edge indices of the sset).
    """
    table: Dict[Tuple[int, int], int]
    associativity_failures: List[Tuple[int, int, int]] = field(default_factory=list)
    level3: Optional[SegalReport] = None

    @property
    def associative(self) -> bool:
        level3_ok = self.level3 is None or self.level3.passed
        return not self.associativity_failures and level3_ok

    def compose(self, g: int, f: int) -> int:
        return self.table[(g, f)]


def composition_from_segal(A: FinSSet) -> SegalComposition:
    """Composition operator of a sset whose level-2 inner horns fill uniquely"""
    if A.max_level < 2:
        raise PreconditionError("composition needs cells up to level 2")
    level2 = segal_report(A, 2)
    if not level2.passed:
        raise PreconditionError(
            "composition needs a unique filler for every Λ²₁ horn",
            {"segal": level2.to_dict()},
        )
    table: Dict[Tuple[int, int], int] = {}
    for h in horn_instances(A, 2, 1):
        (composite, _top), = fillers(A, h)
        table[(h.face_cell(0), h.face_cell(2))] = composite

    result = SegalComposition(table)
    for (g, f), gf in table.items():
        for (h, g2), hg in table.items():
            if g2 != g:
                continue
            if table[(hg, f)] != table[(h, gf)]:
                result.associativity_failures.append((f, g, h))
    if A.max_level >= 3:
        result.level3 = segal_report(A, 3)
    if result.associativity_failures:
        logger.info(f"composition is not associative on {len(result.associativity_failures)} triples")
    return result


# =============================================================================
# EQUIVALENCES AND IDENTITIES
# =============================================================================

def _outer_horns_with(A: FinSSet, k: int, edge_slot: Vertices, e: int) -> List[HornInstance]:
    position = _shape_index(2, k)[1][edge_slot]
    return [h for h in horn_instances(A, 2, k) if h.assignment[1][position] == e]


def is_equivalence_edge(A: FinSSet, e: int) -> bool:
    """
    True iff every Λ²₀ horn with e as its 0->1 edge and every Λ²₂ horn with
    e as its 1->2 edge has exactly one filler.
    """
    _require_segal(A, "is_equivalence_edge")
    for k, slot in ((0, (0, 1)), (2, (1, 2))):
        for h in _outer_horns_with(A, k, slot, e):
            if len(fillers(A, h)) != 1:
                return False
    return True


def is_equivalence_by_composition(A: FinSSet, e: int) -> bool:
    """Bijectivity of (- ∘ e) and (e ∘ -) computed from the composition table"""
    comp = composition_from_segal(A)
    x, y = A.source(e), A.target(e)
    for z in range(A.level_size(0)):
        image = sorted(comp.compose(g, e) for g in A.edges_between(y, z))
        if image != sorted(A.edges_between(x, z)):
            return False
    for w in range(A.level_size(0)):
        image = sorted(comp.compose(e, f) for f in A.edges_between(w, x))
        if image != sorted(A.edges_between(w, y)):
            return False
    return True


def _is_idempotent(A: FinSSet, i: int) -> bool:
    return bool(A.cells_over(2, (i, i, i)))


@dataclass
class IdentityStructureReport:
    """Good identities per vertex of a Segal sset"""
    candidates: Dict[int, List[int]]
    vertex_names: List[str]
    edge_names: List[str]
    errors: List[str] = field(default_factory=list)

    @property
    def structure(self) -> Optional[Dict[int, int]]:
        if self.errors or any(len(c) != 1 for c in self.candidates.values()):
            return None
        return {x: c[0] for x, c in self.candidates.items()}

    @property
    def exists(self) -> bool:
        return self.structure is not None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "exists": self.exists,
            "good_identities": {
                self.vertex_names[x]: [self.edge_names[i] for i in c]
                for x, c in self.candidates.items()
            },
            "errors": self.errors,
        }


def identity_structure(A: FinSSet) -> IdentityStructureReport:
    """Self-edges that are equivalences and idempotent (some 2-cell A₂ i i i)"""
    _require_segal(A, "identity_structure")
    report = IdentityStructureReport(
        {}, list(A.cells[0]), list(A.cells[1]) if A.max_level >= 1 else []
    )
    for x in range(A.level_size(0)):
        good = [
            i for i in A.edges_between(x, x)
            if _is_idempotent(A, i) and is_equivalence_edge(A, i)
        ]
        report.candidates[x] = good
        if len(good) >= 2:
            message = (
                f"vertex {A.name(0, x)} has {len(good)} good identities "
                f"({', '.join(A.name(1, i) for i in good)}); good identities are unique"
            )
            logger.error(message)
            report.errors.append(message)
    return report


def is_terminal(A: FinSSet, x: int) -> bool:
    """True iff every vertex has exactly one edge into x"""
    return all(len(A.edges_between(y, x)) == 1 for y in range(A.level_size(0)))


@dataclass
class UnivalenceReport:
    """Equivalence-edge counts that break the set-level univalence criterion"""
    failures: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> Dict[str, Any]:
        return {"passed": self.passed, "failures": self.failures}


def univalence_check(A: FinSSet) -> UnivalenceReport:
    """
    For every vertex pair (x, y): exactly one equivalence x -> y when x = y,
    namely the identity, and none otherwise.
    """
    identities = identity_structure(A).structure
    if identities is None:
        raise PreconditionError("univalence_check needs an identity structure")
    report = UnivalenceReport()
    for x in range(A.level_size(0)):
        for y in range(A.level_size(0)):
            equivalences = [e for e in A.edges_between(x, y) if is_equivalence_edge(A, e)]
            expected = [identities[x]] if x == y else []
            if equivalences != expected:
                report.failures.append({
                    "source": A.name(0, x),
                    "target": A.name(0, y),
                    "equivalences": [A.name(1, e) for e in equivalences],
                })
    return report


# =============================================================================
# FIBRATIONS
# =============================================================================

class FibrationKind(str, Enum):
    """Which horn lifting problems have unique solutions"""
    KAN = "kan"
    LEFT = "left"
    RIGHT = "right"
    INNER = "inner"
    NONE = "none"


def lifting_profile(m: SSetMap, up_to: int) -> Dict[Tuple[int, int], bool]:
    """
    For each 1 <= n <= up_to and 0 <= k <= n: whether every lifting problem
    (a horn Λⁿₖ in the source over an n-cell of the target) has exactly one lift.
    """
    ensure_map(m)
    S, T = m.source, m.target
    up_to = min(up_to, m.levels)
    profile: Dict[Tuple[int, int], bool] = {}
    for n in range(1, up_to + 1):
        for k in range(n + 1):
            unique = True
            for h in horn_instances(S, n, k):
                required = {i: h.face_cell(i) for i in range(n + 1) if i != k}
                images = {i: m(n - 1, cell) for i, cell in required.items()}
                for tau, tau_faces in enumerate(T.faces[n]):
                    if any(tau_faces[i] != image for i, image in images.items()):
                        continue
                    lifts = [
                        c for c, row in enumerate(S.faces[n])
                        if m(n, c) == tau and all(row[i] == cell for i, cell in required.items())
                    ]
                    if len(lifts) != 1:
                        unique = False
                        break
                if not unique:
                    break
            profile[(n, k)] = unique
    return profile


def fibration_kind(m: SSetMap, up_to: int) -> FibrationKind:
    """Classify m by its unique-lifting profile up to level up_to"""
    profile = lifting_profile(m, up_to)

    def holds(keep) -> bool:
        return all(ok for (n, k), ok in profile.items() if keep(n, k))

    if holds(lambda n, k: True):
        return FibrationKind.KAN
    if holds(lambda n, k: k < n):
        return FibrationKind.LEFT
    if holds(lambda n, k: k > 0):
        return FibrationKind.RIGHT
    if holds(lambda n, k: 0 < k < n):
        return FibrationKind.INNER
    return FibrationKind.NONE


# =============================================================================
# CONSTRUCTIONS
# =============================================================================

def opposite(A: FinSSet) -> FinSSet:
    """Same cells, face i of an n-cell becomes face n-i"""
    return FinSSet(
        A.cells,
        tuple(tuple(tuple(reversed(row)) for row in level) for level in A.faces),
    )


def extend_coskeletal(A: FinSSet) -> FinSSet:
    """
    Add level max_level+1 with one cell for every boundary-compatible family
    of faces, named by its face names.
    """
    n = A.max_level + 1
    shape = boundary_cells(n)
    top = {face_map(n, i).values: i for i in range(n + 1)}
    top_positions = {top[cell]: pos for pos, cell in enumerate(shape[n - 1])}
    names, rows = [], []
    for assignment in _shape_instances(A, shape):
        row = tuple(assignment[n - 1][top_positions[i]] for i in range(n + 1))
        rows.append(row)
        names.append("<" + ",".join(A.name(n - 1, f) for f in row) + ">")
    logger.debug(f"extend_coskeletal: {len(rows)} cells at level {n}")
    return FinSSet(A.cells + (tuple(names),), A.faces + (tuple(rows),))


def sset_to_dict(A: FinSSet) -> Dict[str, Any]:
    """Plain-data form used by the instance file writer"""
    levels: List[Any] = [list(A.cells[0])]
    for n in range(1, A.max_level + 1):
        levels.append({
            A.name(n, c): [A.name(n - 1, f) for f in A.faces[n][c]]
            for c in range(A.level_size(n))
        })
    return {"max_level": A.max_level, "cells": levels}
