"""
Lemma Suite

The checks run on every semicategory by `cwfcheck enumerate`:

1. good-identities: no object has two good identities
2. id-characterisation: good identity <=> two-sided neutral
3. canonical-identity: I(e) is a good identity, and e = I(e) <=> e ∘ e = e

With the oracle enabled, also:

4. segal-roundtrip: the nerve satisfies Segal through level 4 and its
   filler composition reproduces the table
5. equivalence-agreement: horn-filling, composition-table and bijection
   detection of equivalences agree morphism by morphism
6. slice-identities: slicing preserves an existing identity structure
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Tuple

from .errors import ConsistencyError, CwfCheckError
from .finsemicat import (
    FinSemicat, I_of, check_id_characterisation, enumerate_shape, good_identities,
    identity_structure, is_equivalence, is_idempotent, nerve, slice,
)
from .finsset import (
    composition_from_segal, is_equivalence_by_composition, is_equivalence_edge, segal_report,
)

logger = logging.getLogger(__name__)

LEMMAS = ("good-identities", "id-characterisation", "canonical-identity")
ORACLE_LEMMAS = ("segal-roundtrip", "equivalence-agreement", "slice-identities")

SEGAL_CAP = 4


@dataclass
class LemmaCheck:
    id: str
    passed: bool
    detail: Dict[str, Any] = field(default_factory=dict)


def _good_identities(C: FinSemicat) -> LemmaCheck:
    for x in range(len(C.objects)):
        try:
            good_identities(C, x)
        except ConsistencyError as e:
            return LemmaCheck("good-identities", False, e.details)
    return LemmaCheck("good-identities", True)


def _id_characterisation(C: FinSemicat) -> LemmaCheck:
    report = check_id_characterisation(C)
    return LemmaCheck("id-characterisation", report.passed, {"counterexamples": report.counterexamples})


def _canonical_identity(C: FinSemicat) -> LemmaCheck:
    for e in range(len(C.morphisms)):
        if not is_equivalence(C, e):
            continue
        try:
            i = I_of(C, e)
        except ConsistencyError as err:
            return LemmaCheck("canonical-identity", False, {"morphism": C.name(e), "error": str(err)})
        if (e == i) != is_idempotent(C, e):
            return LemmaCheck("canonical-identity", False, {
                "morphism": C.name(e), "I": C.name(i), "idempotent": is_idempotent(C, e),
            })
    return LemmaCheck("canonical-identity", True)


def _segal_roundtrip(C: FinSemicat) -> LemmaCheck:
    A = nerve(C, SEGAL_CAP)
    report = segal_report(A, SEGAL_CAP)
    if not report.passed:
        return LemmaCheck("segal-roundtrip", False, {"segal": report.to_dict()})
    # level-1 cells of the nerve are the morphisms in order
    recovered = composition_from_segal(A).table
    if recovered != C.table:
        diff = sorted(
            f"{C.name(g)}∘{C.name(f)}" for (g, f) in C.table
            if recovered.get((g, f)) != C.table[(g, f)]
        )
        return LemmaCheck("segal-roundtrip", False, {"differs_at": diff})
    return LemmaCheck("segal-roundtrip", True)


def _equivalence_agreement(C: FinSemicat) -> LemmaCheck:
    A = nerve(C, 3)
    for e in range(len(C.morphisms)):
        verdicts = (is_equivalence(C, e), is_equivalence_edge(A, e), is_equivalence_by_composition(A, e))
        if len(set(verdicts)) != 1:
            return LemmaCheck("equivalence-agreement", False, {
                "morphism": C.name(e),
                "bijection": verdicts[0],
                "horn_filling": verdicts[1],
                "composition": verdicts[2],
            })
    return LemmaCheck("equivalence-agreement", True)


def _slice_identities(C: FinSemicat) -> LemmaCheck:
    if identity_structure(C) is None:
        return LemmaCheck("slice-identities", True, {"skipped": "no identity structure"})
    for g in range(len(C.objects)):
        _, report = slice(C, g)
        if not report.passed:
            return LemmaCheck("slice-identities", False, {"object": C.objects[g], **report.to_dict()})
    return LemmaCheck("slice-identities", True)


def check_semicat(C: FinSemicat, oracle: bool = False) -> List[LemmaCheck]:
    checks = [_good_identities(C)]
    if not checks[0].passed:
        return checks
    checks += [_id_characterisation(C), _canonical_identity(C)]
    if oracle:
        checks += [_segal_roundtrip(C), _equivalence_agreement(C), _slice_identities(C)]
    return checks


def describe_semicat(C: FinSemicat) -> Dict[str, Any]:
    return {
        "objects": list(C.objects),
        "composition": [f"{C.name(g)}∘{C.name(f)}={C.name(h)}" for g, f, h in C.composition],
    }


@dataclass
class ShapeSummary:
    """Lemma results over every semicategory of one shape"""
    n_objects: int
    sizes: Tuple[int, ...]
    instances: int = 0
    failures: Dict[str, int] = field(default_factory=dict)
    counterexamples: Dict[str, Dict[str, Any]] = field(default_factory=dict)
    errors: List[str] = field(default_factory=list)

    @property
    def id(self) -> str:
        return f"shape/{self.n_objects}/{','.join(map(str, self.sizes))}"

    @property
    def passed(self) -> bool:
        return not self.failures and not self.errors

    def to_dict(self) -> Dict[str, Any]:
        return {
            "objects": self.n_objects,
            "hom_sizes": list(self.sizes),
            "instances": self.instances,
            "failures": self.failures,
            "counterexamples": self.counterexamples,
            "errors": self.errors,
        }


def check_shape(n_objects: int, sizes: Tuple[int, ...], oracle: bool = False) -> ShapeSummary:
    """Run the suite on every semicategory of the shape; module-level so process pools can pickle it"""
    summary = ShapeSummary(n_objects, tuple(sizes))
    for C in enumerate_shape(n_objects, tuple(sizes)):
        summary.instances += 1
        try:
            checks = check_semicat(C, oracle)
        except CwfCheckError as e:
            summary.errors.append(f"{describe_semicat(C)}: {e}")
            continue
        for check in checks:
            if check.passed:
                continue
            summary.failures[check.id] = summary.failures.get(check.id, 0) + 1
            summary.counterexamples.setdefault(check.id, {"instance": describe_semicat(C), **check.detail})
    logger.debug(f"{summary.id}: {summary.instances} instances, failures {summary.failures}")
    return summary
