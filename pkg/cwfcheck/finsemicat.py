"""
Finite Semicategories

Semicategories (associative composition, no identities assumed) with the
identity theory built on idempotent equivalences, verified exhaustively:

1. Equivalences, good identities and identity structures
2. The neutrality characterisation of good identities and I(e)
3. Nerve, opposite and slice constructions
4. Set-valued functors, categories of elements and representations
5. A brute-force enumerator of small labeled semicategories and functors

Morphisms carry their endpoints, so hom sets are disjoint by construction.
Composition is validated eagerly: a non-total or non-associative table is a
SemicatError at construction, never a report entry.
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

from .config import Settings, get_settings
from .errors import ConsistencyError, EnumerationBoundError, PreconditionError, SemicatError
from .finsset import FinSSet, SSetMap

logger = logging.getLogger(__name__)


# =============================================================================
# DATA MODEL
# =============================================================================

@dataclass(frozen=True)
class Morphism:
    name: str
    src: int
    dst: int


@dataclass(frozen=True)
class FinSemicat:
    """
    A finite semicategory.

    composition lists (g, f, g∘f) as morphism indices, one entry for every
    composable pair (f.dst == g.src), sorted by (g, f).
    """
    objects: Tuple[str, ...]
    morphisms: Tuple[Morphism, ...]
    composition: Tuple[Tuple[int, int, int], ...]

    def __post_init__(self):
        if len(set(self.objects)) != len(self.objects):
            raise SemicatError("duplicate object names")
        names = [m.name for m in self.morphisms]
        if len(set(names)) != len(names):
            raise SemicatError("duplicate morphism names")
        for m in self.morphisms:
            if not (0 <= m.src < len(self.objects) and 0 <= m.dst < len(self.objects)):
                raise SemicatError(f"morphism {m.name} has an endpoint outside the object set")
        table: Dict[Tuple[int, int], int] = {}
        for g, f, h in self.composition:
            if (g, f) in table:
                raise SemicatError(f"composite {self._n(g)} ∘ {self._n(f)} given twice")
            table[(g, f)] = h
        for g, f in self.composable_pairs():
            if (g, f) not in table:
                raise SemicatError(f"composition is not total: {self._n(g)} ∘ {self._n(f)} missing")
            h = table[(g, f)]
            if not 0 <= h < len(self.morphisms):
                raise SemicatError(f"composite {self._n(g)} ∘ {self._n(f)} is not a morphism")
            if (self.morphisms[h].src, self.morphisms[h].dst) != (self.morphisms[f].src, self.morphisms[g].dst):
                raise SemicatError(
                    f"composite {self._n(g)} ∘ {self._n(f)} = {self._n(h)} lands in the wrong hom"
                )
        if len(table) != len(self.composable_pairs()):
            raise SemicatError("composition lists a pair that is not composable")
        for h, g, f in self.composable_triples():
            if table[(table[(h, g)], f)] != table[(h, table[(g, f)])]:
                raise SemicatError(
                    f"composition is not associative at "
                    f"({self._n(h)}, {self._n(g)}, {self._n(f)})"
                )

    def _n(self, m: int) -> str:
        return self.morphisms[m].name if 0 <= m < len(self.morphisms) else f"#{m}"

    # -------------------------------------------------------------------------
    # Construction
    # -------------------------------------------------------------------------

    @classmethod
    def build(
        cls,
        objects: Sequence[str],
        morphisms: Sequence[Tuple[str, str, str]],
        composition: Sequence[Tuple[str, str, str]],
    ) -> "FinSemicat":
        """Build from names: morphisms as (src, dst, name), composition as (g, f, g∘f)"""
        obj_index = {name: i for i, name in enumerate(objects)}
        morphs = []
        for src, dst, name in morphisms:
            if src not in obj_index or dst not in obj_index:
                raise SemicatError(f"morphism {name} refers to an unknown object")
            morphs.append(Morphism(name, obj_index[src], obj_index[dst]))
        mor_index = {m.name: i for i, m in enumerate(morphs)}
        entries = []
        for g, f, h in composition:
            missing = [n for n in (g, f, h) if n not in mor_index]
            if missing:
                raise SemicatError(f"composition entry refers to unknown morphism {missing[0]}")
            entries.append((mor_index[g], mor_index[f], mor_index[h]))
        return cls(tuple(objects), tuple(morphs), tuple(sorted(entries)))

    @classmethod
    def from_table(
        cls,
        objects: Sequence[str],
        morphisms: Sequence[Morphism],
        table: Dict[Tuple[int, int], int],
    ) -> "FinSemicat":
        return cls(
            tuple(objects),
            tuple(morphisms),
            tuple(sorted((g, f, h) for (g, f), h in table.items())),
        )

    # -------------------------------------------------------------------------
    # Access
    # -------------------------------------------------------------------------

    @cached_property
    def table(self) -> Dict[Tuple[int, int], int]:
        return {(g, f): h for g, f, h in self.composition}

    @cached_property
    def _homs(self) -> Dict[Tuple[int, int], List[int]]:
        homs: Dict[Tuple[int, int], List[int]] = {}
        for i, m in enumerate(self.morphisms):
            homs.setdefault((m.src, m.dst), []).append(i)
        return homs

    def hom(self, a: int, b: int) -> List[int]:
        return self._homs.get((a, b), [])

    def compose(self, g: int, f: int) -> int:
        """g ∘ f"""
        try:
            return self.table[(g, f)]
        except KeyError:
            raise SemicatError(f"{self._n(g)} and {self._n(f)} are not composable")

    def composable_pairs(self) -> List[Tuple[int, int]]:
        return [
            (g, f)
            for f, mf in enumerate(self.morphisms)
            for g in self.hom_from(mf.dst)
        ]

    def composable_triples(self) -> List[Tuple[int, int, int]]:
        return [
            (h, g, f)
            for g, f in self.composable_pairs()
            for h in self.hom_from(self.morphisms[g].dst)
        ]

    def hom_from(self, a: int) -> List[int]:
        return [i for i, m in enumerate(self.morphisms) if m.src == a]

    def hom_into(self, b: int) -> List[int]:
        return [i for i, m in enumerate(self.morphisms) if m.dst == b]

    def object_index(self, name: str) -> int:
        try:
            return self.objects.index(name)
        except ValueError:
            raise SemicatError(f"no object named {name!r}")

    def morphism_index(self, name: str) -> int:
        for i, m in enumerate(self.morphisms):
            if m.name == name:
                return i
        raise SemicatError(f"no morphism named {name!r}")

    def name(self, m: int) -> str:
        return self.morphisms[m].name


# =============================================================================
# NAMED INSTANCES
# =============================================================================

def z2() -> FinSemicat:
    """Z/2 as a one-object semicategory: e is the unit, g∘g = e"""
    return FinSemicat.build(
        ["x"],
        [("x", "x", "e"), ("x", "x", "g")],
        [("e", "e", "e"), ("e", "g", "g"), ("g", "e", "g"), ("g", "g", "e")],
    )


def trivial() -> FinSemicat:
    """One object, one morphism f with f∘f = f"""
    return FinSemicat.build(["x"], [("x", "x", "f")], [("f", "f", "f")])


def codiscrete(n: int) -> FinSemicat:
    """n objects with exactly one morphism between every ordered pair"""
    objects = [f"x{i}" for i in range(n)]
    morphisms = [(a, b, f"{a}{b}") for a in objects for b in objects]
    composition = [
        (f"{b}{c}", f"{a}{b}", f"{a}{c}")
        for a in objects for b in objects for c in objects
    ]
    return FinSemicat.build(objects, morphisms, composition)


def constant_composition() -> FinSemicat:
    """One object, morphisms a and b, every composite is a"""
    return FinSemicat.build(
        ["x"],
        [("x", "x", "a"), ("x", "x", "b")],
        [(g, f, "a") for g in ("a", "b") for f in ("a", "b")],
    )


def empty() -> FinSemicat:
    return FinSemicat((), (), ())


# =============================================================================
# IDENTITY THEORY
# =============================================================================

def _is_bijection(mapping: Dict[int, int], codomain: Sequence[int]) -> bool:
    return sorted(mapping.values()) == sorted(codomain)


def is_equivalence(C: FinSemicat, e: int) -> bool:
    """(− ∘ e) and (e ∘ −) are bijections on every hom set they act on"""
    x, y = C.morphisms[e].src, C.morphisms[e].dst
    for z in range(len(C.objects)):
        precompose = {g: C.compose(g, e) for g in C.hom(y, z)}
        if not _is_bijection(precompose, C.hom(x, z)):
            return False
    for w in range(len(C.objects)):
        postcompose = {f: C.compose(e, f) for f in C.hom(w, x)}
        if not _is_bijection(postcompose, C.hom(w, y)):
            return False
    return True


def is_idempotent(C: FinSemicat, i: int) -> bool:
    m = C.morphisms[i]
    return m.src == m.dst and C.compose(i, i) == i


def good_identities(C: FinSemicat, x: int) -> List[int]:
    """Self-morphisms of x that are idempotent equivalences; at most one exists"""
    good = [i for i in C.hom(x, x) if is_idempotent(C, i) and is_equivalence(C, i)]
    if len(good) >= 2:
        message = (
            f"object {C.objects[x]} has {len(good)} good identities: "
            f"{', '.join(C.name(i) for i in good)}"
        )
        logger.error(message)
        raise ConsistencyError(message, {"object": C.objects[x], "good": [C.name(i) for i in good]})
    return good


def identity_structure(C: FinSemicat) -> Optional[Dict[int, int]]:
    """The unique good identity per object, or None if some object has none"""
    structure = {}
    for x in range(len(C.objects)):
        good = good_identities(C, x)
        if not good:
            return None
        structure[x] = good[0]
    return structure


@dataclass
class IdCharacterisationReport:
    """Self-morphisms where 'good identity' and 'two-sided neutral' disagree"""
    checked: int = 0
    counterexamples: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    def to_dict(self) -> Dict[str, Any]:
        return {"passed": self.passed, "checked": self.checked, "counterexamples": self.counterexamples}


def is_neutral(C: FinSemicat, i: int) -> bool:
    """i ∘ f = f and g ∘ i = g for every composable f and g"""
    x = C.morphisms[i].src
    if C.morphisms[i].dst != x:
        return False
    return (
        all(C.compose(i, f) == f for f in C.hom_into(x))
        and all(C.compose(g, i) == g for g in C.hom_from(x))
    )


def check_id_characterisation(C: FinSemicat) -> IdCharacterisationReport:
    report = IdCharacterisationReport()
    for x in range(len(C.objects)):
        good = set(good_identities(C, x))
        for i in C.hom(x, x):
            report.checked += 1
            neutral = is_neutral(C, i)
            if (i in good) != neutral:
                report.counterexamples.append({
                    "morphism": C.name(i),
                    "good_identity": i in good,
                    "neutral": neutral,
                })
    return report


def I_of(C: FinSemicat, e: int) -> int:
    """The unique i : x -> x with e ∘ i = e, for an equivalence e : x -> y"""
    if not is_equivalence(C, e):
        raise PreconditionError(f"{C.name(e)} is not an equivalence")
    x = C.morphisms[e].src
    candidates = [i for i in C.hom(x, x) if C.compose(e, i) == e]
    if len(candidates) != 1:
        raise ConsistencyError(
            f"(e ∘ −) is a bijection but {len(candidates)} morphisms satisfy {C.name(e)} ∘ i = {C.name(e)}"
        )
    i = candidates[0]
    if not (is_idempotent(C, i) and is_equivalence(C, i)):
        logger.error(f"I({C.name(e)}) = {C.name(i)} is not a good identity")
        raise ConsistencyError(f"I({C.name(e)}) = {C.name(i)} is not a good identity")
    return i


# =============================================================================
# CONSTRUCTIONS
# =============================================================================

def _chains(C: FinSemicat, cap: int) -> List[List[Tuple[int, ...]]]:
    """Level 0: objects as 1-tuples; level n: composable chains (f1, ..., fn)"""
    levels: List[List[Tuple[int, ...]]] = [[(x,) for x in range(len(C.objects))]]
    if cap >= 1:
        levels.append([(f,) for f in range(len(C.morphisms))])
    for _ in range(2, cap + 1):
        levels.append([
            chain + (g,)
            for chain in levels[-1]
            for g in C.hom_from(C.morphisms[chain[-1]].dst)
        ])
    return levels


def _chain_faces(C: FinSemicat, n: int, chain: Tuple[int, ...]) -> List[Tuple[int, ...]]:
    if n == 1:
        f = C.morphisms[chain[0]]
        return [(f.dst,), (f.src,)]
    faces = [chain[1:]]
    for i in range(1, n):
        faces.append(chain[:i - 1] + (C.compose(chain[i], chain[i - 1]),) + chain[i + 1:])
    faces.append(chain[:-1])
    return faces


def nerve(C: FinSemicat, cap: int) -> FinSSet:
    """
    Chains X0 -> X1 -> ... -> Xn as n-cells.

    Face 0 drops the first morphism, face n the last, and inner face i
    composes f_{i+1} ∘ f_i. Chain cells are named "f1;f2;...".
    """
    if cap < 0:
        raise SemicatError(f"nerve cap must be non-negative, got {cap}")
    levels = _chains(C, cap)
    cells = [tuple(C.objects)]
    faces: List[Tuple[Tuple[int, ...], ...]] = [tuple(() for _ in C.objects)]
    for n in range(1, cap + 1):
        below = {chain: pos for pos, chain in enumerate(levels[n - 1])}
        cells.append(tuple(";".join(C.name(f) for f in chain) for chain in levels[n]))
        faces.append(tuple(
            tuple(below[face] for face in _chain_faces(C, n, chain))
            for chain in levels[n]
        ))
    logger.debug(f"nerve: level counts {[len(level) for level in levels]}")
    return FinSSet(tuple(cells), tuple(faces))


def opposite(C: FinSemicat) -> FinSemicat:
    """Reverse every morphism; (g ∘ f)ᵒᵖ = fᵒᵖ ∘ gᵒᵖ"""
    return FinSemicat(
        C.objects,
        tuple(Morphism(m.name, m.dst, m.src) for m in C.morphisms),
        tuple(sorted((f, g, h) for g, f, h in C.composition)),
    )


@dataclass
class SliceReport:
    """Whether the lifted identities id_a@f form the slice's identity structure"""
    base_has_identities: bool
    slice_has_identities: bool
    lifted_identities: Dict[str, str] = field(default_factory=dict)
    mismatches: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        if not self.base_has_identities:
            return True
        return self.slice_has_identities and not self.mismatches

    def to_dict(self) -> Dict[str, Any]:
        return {
            "passed": self.passed,
            "base_has_identities": self.base_has_identities,
            "slice_has_identities": self.slice_has_identities,
            "lifted_identities": self.lifted_identities,
            "mismatches": self.mismatches,
        }


def slice(C: FinSemicat, g: int) -> Tuple[FinSemicat, SliceReport]:
    """
    C over object g: objects are morphisms f : a -> g, hom((a,f),(b,h)) holds
    m : a -> b with h ∘ m = f, named "m@h".
    """
    over = C.hom_into(g)
    position = {f: i for i, f in enumerate(over)}
    morphisms: List[Morphism] = []
    lifted: Dict[Tuple[int, int], int] = {}
    for h in over:
        b = C.morphisms[h].src
        for m in C.hom_into(b):
            f = C.compose(h, m)
            lifted[(m, h)] = len(morphisms)
            morphisms.append(Morphism(f"{C.name(m)}@{C.name(h)}", position[f], position[h]))
    table = {}
    for (m1, h1), i1 in lifted.items():
        for (m2, h2), i2 in lifted.items():
            if C.morphisms[m2].src == C.morphisms[h1].src and C.compose(h2, m2) == h1:
                table[(i2, i1)] = lifted[(C.compose(m2, m1), h2)]
    result = FinSemicat.from_table([C.name(f) for f in over], morphisms, table)

    base_ids = identity_structure(C)
    slice_ids = identity_structure(result)
    report = SliceReport(base_ids is not None, slice_ids is not None)
    if base_ids is not None:
        for pos, f in enumerate(over):
            expected = lifted[(base_ids[C.morphisms[f].src], f)]
            report.lifted_identities[result.objects[pos]] = result.name(expected)
            if slice_ids is None or slice_ids[pos] != expected:
                report.mismatches.append(result.objects[pos])
    return result, report


# =============================================================================
# SET-VALUED FUNCTORS
# =============================================================================

@dataclass(frozen=True)
class FinSetFunctor:
    """
    A functor from a finite semicategory to finite sets.

    carriers[a] names the elements over object a; actions[f][x] is the index
    of the image of element x under morphism f.
    """
    base: FinSemicat
    carriers: Tuple[Tuple[str, ...], ...]
    actions: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        C = self.base
        if len(self.carriers) != len(C.objects):
            raise SemicatError(f"{len(self.carriers)} carriers for {len(C.objects)} objects")
        if len(self.actions) != len(C.morphisms):
            raise SemicatError(f"{len(self.actions)} actions for {len(C.morphisms)} morphisms")
        for f, action in enumerate(self.actions):
            m = C.morphisms[f]
            if len(action) != len(self.carriers[m.src]):
                raise SemicatError(f"action of {m.name} is not defined on its whole carrier")
            if any(not 0 <= v < len(self.carriers[m.dst]) for v in action):
                raise SemicatError(f"action of {m.name} leaves the carrier of {C.objects[m.dst]}")
        for g, f, h in C.composition:
            composite = tuple(self.actions[g][v] for v in self.actions[f])
            if composite != self.actions[h]:
                raise SemicatError(
                    f"not functorial: F({C.name(g)} ∘ {C.name(f)}) != F({C.name(g)}) ∘ F({C.name(f)})"
                )

    def apply(self, f: int, x: int) -> int:
        return self.actions[f][x]


def category_of_elements(F: FinSetFunctor, cap: int = 3) -> Tuple[FinSemicat, SSetMap]:
    """
    Objects "a:x" for x over a, morphisms "f@x" : (a,x) -> (b, F f x), and
    the projection nerve(elements, cap) -> nerve(base, cap).
    """
    C = F.base
    objects, owner = [], []
    first: Dict[int, int] = {}
    for a, carrier in enumerate(F.carriers):
        first[a] = len(objects)
        for x in carrier:
            objects.append(f"{C.objects[a]}:{x}")
            owner.append(a)
    morphisms, projection = [], []
    lifted: Dict[Tuple[int, int], int] = {}
    for f, m in enumerate(C.morphisms):
        for x in range(len(F.carriers[m.src])):
            lifted[(f, x)] = len(morphisms)
            morphisms.append(Morphism(
                f"{m.name}@{F.carriers[m.src][x]}",
                first[m.src] + x,
                first[m.dst] + F.apply(f, x),
            ))
            projection.append(f)
    table = {}
    for (g, y), ig in lifted.items():
        for (f, x), i_f in lifted.items():
            m = C.morphisms[f]
            if m.dst == C.morphisms[g].src and F.apply(f, x) == y:
                table[(ig, i_f)] = lifted[(C.compose(g, f), x)]
    elements = FinSemicat.from_table(objects, morphisms, table)
    return elements, nerve_map(elements, C, owner, projection, cap)


def nerve_map(
    source: FinSemicat,
    target: FinSemicat,
    on_objects: Sequence[int],
    on_morphisms: Sequence[int],
    cap: int,
) -> SSetMap:
    """The SSetMap nerve(source, cap) -> nerve(target, cap) of a semifunctor"""
    source_chains = _chains(source, cap)
    target_chains = _chains(target, cap)
    level_maps = []
    for n, (src_level, tgt_level) in enumerate(zip(source_chains, target_chains)):
        position = {chain: pos for pos, chain in enumerate(tgt_level)}
        image = on_objects if n == 0 else on_morphisms
        level_maps.append(tuple(position[tuple(image[c] for c in chain)] for chain in src_level))
    return SSetMap(nerve(source, cap), nerve(target, cap), tuple(level_maps))


def representation_check(F: FinSetFunctor, x: int, u: int) -> bool:
    """For every y and v over y, exactly one f : x -> y sends u to v"""
    C = F.base
    for y in range(len(C.objects)):
        for v in range(len(F.carriers[y])):
            hits = [f for f in C.hom(x, y) if F.apply(f, u) == v]
            if len(hits) != 1:
                return False
    return True


def id_preservation_failures(F: FinSetFunctor) -> List[str]:
    """
    Good identities whose action is not a bijection.

    Functoriality on i ∘ i = i only forces F(i) to be idempotent, so a
    non-bijective action is possible and is reported here.
    """
    identities = identity_structure(F.base)
    if identities is None:
        raise PreconditionError("functor_id_preserving needs an identity structure on the base")
    C = F.base
    failures = []
    for x, i in identities.items():
        action = F.actions[i]
        if len(set(action)) != len(action):
            failures.append(
                f"F({C.name(i)}) on the carrier of {C.objects[x]} is idempotent but not "
                f"injective: it sends {list(F.carriers[x])} to "
                f"{[F.carriers[x][v] for v in action]}"
            )
    return failures


def functor_id_preserving(F: FinSetFunctor) -> bool:
    return not id_preservation_failures(F)


# =============================================================================
# ENUMERATION
# =============================================================================

@dataclass(frozen=True)
class EnumSpec:
    """
    Bounds for enumerate_semicats; the min values default to the max values
    so an EnumSpec names one exact shape unless ranges are requested.
    """
    max_objects: int
    max_total_morphisms: int
    min_objects: Optional[int] = None
    min_total_morphisms: Optional[int] = None

    def __post_init__(self):
        for label, value in (
            ("max_objects", self.max_objects),
            ("max_total_morphisms", self.max_total_morphisms),
            ("min_objects", self.min_objects),
            ("min_total_morphisms", self.min_total_morphisms),
        ):
            if value is not None and value < 0:
                raise EnumerationBoundError(f"{label} must be non-negative, got {value}")
        if self.object_range.start > self.max_objects:
            raise EnumerationBoundError("min_objects exceeds max_objects")
        if self.morphism_range.start > self.max_total_morphisms:
            raise EnumerationBoundError("min_total_morphisms exceeds max_total_morphisms")

    @property
    def object_range(self) -> range:
        low = self.max_objects if self.min_objects is None else self.min_objects
        return range(low, self.max_objects + 1)

    @property
    def morphism_range(self) -> range:
        low = self.max_total_morphisms if self.min_total_morphisms is None else self.min_total_morphisms
        return range(low, self.max_total_morphisms + 1)


def _hom_size_vectors(total: int, slots: int) -> Iterator[Tuple[int, ...]]:
    """Non-negative integer vectors of the given length and sum, lexicographic"""
    if slots == 0:
        if total == 0:
            yield ()
        return
    if slots == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _hom_size_vectors(total - first, slots - 1):
            yield (first,) + rest


def _shapes(spec: EnumSpec) -> Iterator[Tuple[int, Tuple[int, ...]]]:
    for n_objects in spec.object_range:
        for total in spec.morphism_range:
            if n_objects == 0 and total > 0:
                continue
            for sizes in _hom_size_vectors(total, n_objects * n_objects):
                yield n_objects, sizes


def _morphisms_for(n_objects: int, sizes: Tuple[int, ...]) -> List[Morphism]:
    morphisms = []
    pairs = [(a, b) for a in range(n_objects) for b in range(n_objects)]
    for (a, b), count in zip(pairs, sizes):
        for _ in range(count):
            morphisms.append(Morphism(f"f{len(morphisms)}", a, b))
    return morphisms


def _tables(morphisms: List[Morphism]) -> Iterator[Dict[Tuple[int, int], int]]:
    """Associative composition tables, by backtracking over composable pairs"""
    homs: Dict[Tuple[int, int], List[int]] = {}
    for i, m in enumerate(morphisms):
        homs.setdefault((m.src, m.dst), []).append(i)
    pairs = [
        (g, f)
        for g, mg in enumerate(morphisms)
        for f, mf in enumerate(morphisms)
        if mf.dst == mg.src
    ]
    triples_by_outer: Dict[int, List[Tuple[int, int, int]]] = {}
    triples_by_inner: Dict[int, List[Tuple[int, int, int]]] = {}
    for g, f in pairs:
        for h, mh in enumerate(morphisms):
            if mh.src == morphisms[g].dst:
                triples_by_outer.setdefault(h, []).append((h, g, f))
                triples_by_inner.setdefault(f, []).append((h, g, f))
    table: Dict[Tuple[int, int], int] = {}

    def consistent(g: int, f: int) -> bool:
        # every triple containing the pair has it in the outer or inner slot
        for h, g2, f2 in triples_by_outer.get(g, []) + triples_by_inner.get(f, []):
            hg, gf = table.get((h, g2)), table.get((g2, f2))
            if hg is None or gf is None:
                continue
            left, right = table.get((hg, f2)), table.get((h, gf))
            if left is not None and right is not None and left != right:
                return False
        return True

    def fill(pos: int) -> Iterator[Dict[Tuple[int, int], int]]:
        if pos == len(pairs):
            yield dict(table)
            return
        g, f = pairs[pos]
        for h in homs.get((morphisms[f].src, morphisms[g].dst), []):
            table[(g, f)] = h
            if consistent(g, f):
                yield from fill(pos + 1)
        table.pop((g, f), None)

    yield from fill(0)


def _check_bounds(spec: EnumSpec, settings: Settings) -> None:
    if spec.max_total_morphisms > settings.max_enum_morphisms:
        raise EnumerationBoundError(
            f"max_total_morphisms {spec.max_total_morphisms} exceeds the enumeration "
            f"limit {settings.max_enum_morphisms}"
        )
    if spec.max_objects > settings.max_enum_objects:
        raise EnumerationBoundError(
            f"max_objects {spec.max_objects} exceeds the enumeration limit {settings.max_enum_objects}"
        )


def enumerate_shapes(spec: EnumSpec, settings: Optional[Settings] = None) -> List[Tuple[int, Tuple[int, ...]]]:
    """Object counts and hom-size vectors in enumeration order, for partitioning work"""
    _check_bounds(spec, settings or get_settings())
    return list(_shapes(spec))


def enumerate_shape(n_objects: int, sizes: Tuple[int, ...]) -> Iterator[FinSemicat]:
    """Every labeled semicategory with the given hom sizes, deterministic order"""
    objects = [f"x{i}" for i in range(n_objects)]
    morphisms = _morphisms_for(n_objects, sizes)
    for table in _tables(morphisms):
        yield FinSemicat.from_table(objects, morphisms, table)


def enumerate_semicats(spec: EnumSpec, settings: Optional[Settings] = None) -> Iterator[FinSemicat]:
    """All labeled associative semicategories within the bounds"""
    count = 0
    for n_objects, sizes in enumerate_shapes(spec, settings):
        for C in enumerate_shape(n_objects, sizes):
            count += 1
            yield C
    logger.info(f"Enumerated {count} semicategories")


def enumerate_functors(base: FinSemicat, max_carrier: int) -> Iterator[FinSetFunctor]:
    """All functors base -> FinSet with carriers {0, ..., k-1}, k <= max_carrier"""
    if max_carrier < 0:
        raise EnumerationBoundError(f"max_carrier must be non-negative, got {max_carrier}")
    for sizes in product(range(max_carrier + 1), repeat=len(base.objects)):
        carriers = tuple(tuple(str(v) for v in range(size)) for size in sizes)
        choices = [
            list(product(range(sizes[m.dst]), repeat=sizes[m.src]))
            for m in base.morphisms
        ]
        for actions in product(*choices):
            if all(
                tuple(actions[g][v] for v in actions[f]) == actions[h]
                for g, f, h in base.composition
            ):
                yield FinSetFunctor(base, carriers, tuple(actions))


def semicat_to_dict(C: FinSemicat) -> Dict[str, Any]:
    """Plain-data form used by the instance file writer"""
    return {
        "objects": list(C.objects),
        "morphisms": [[C.objects[m.src], C.objects[m.dst], m.name] for m in C.morphisms],
        "composition": [[C.name(g), C.name(f), C.name(h)] for g, f, h in C.composition],
    }
