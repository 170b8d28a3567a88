"""
Law Harness

Checks a model against the twelve equations of a category with families
and against representability of context extension, on seeded samples.

Sample i of schema s draws from random.Random(f"{seed}:{s}:{i}"), so a
report is reproducible and independent of the order schemas are run in.
A sample whose components cannot be generated (an uninhabited type) is
retried twice with the same stream and then counted as skipped.
"""

import logging
import random
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any, Callable, Dict, Iterable, List, Optional

from .errors import CwfCheckError, PreconditionError
from .generator import NoInhabitant

if TYPE_CHECKING:
    from .models import ModelSignature, Sampler

logger = logging.getLogger(__name__)

Law = Callable[["ModelSignature", "Sampler", random.Random], Optional[Dict[str, Any]]]

RETRIES = 3


@dataclass
class SchemaResult:
    schema: str
    samples: int = 0
    skipped: int = 0
    failures: int = 0
    counterexample: Optional[Dict[str, Any]] = None

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "schema": self.schema,
            "passed": self.passed,
            "samples": self.samples,
            "skipped": self.skipped,
            "failures": self.failures,
            "counterexample": self.counterexample,
        }


@dataclass
class HarnessReport:
    model: str
    budget: int
    seed: int
    results: List[SchemaResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def result(self, schema: str) -> SchemaResult:
        for r in self.results:
            if r.schema == schema:
                return r
        raise KeyError(schema)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "model": self.model,
            "budget": self.budget,
            "seed": self.seed,
            "passed": self.passed,
            "schemas": [r.to_dict() for r in self.results],
        }


def _differ(model: "ModelSignature", holds: bool, lhs: Any, rhs: Any) -> Optional[Dict[str, Any]]:
    if holds:
        return None
    return {"lhs": model.describe(lhs), "rhs": model.describe(rhs)}


# =============================================================================
# EQUATION SCHEMAS
# =============================================================================

def _assoc(M, S, rng):
    target = S.sample_con(rng)
    middle, sigma = S.sample_sub_into(target, rng)
    inner, delta = S.sample_sub_into(middle, rng)
    _, nu = S.sample_sub_into(inner, rng)
    lhs, rhs = M.comp(M.comp(sigma, delta), nu), M.comp(sigma, M.comp(delta, nu))
    return _differ(M, M.sub_eq(lhs, rhs), lhs, rhs)


def _idl(M, S, rng):
    target = S.sample_con(rng)
    _, sigma = S.sample_sub_into(target, rng)
    lhs = M.comp(M.id(target), sigma)
    return _differ(M, M.sub_eq(lhs, sigma), lhs, sigma)


def _idr(M, S, rng):
    target = S.sample_con(rng)
    source, sigma = S.sample_sub_into(target, rng)
    lhs = M.comp(sigma, M.id(source))
    return _differ(M, M.sub_eq(lhs, sigma), lhs, sigma)


def _eps_eta(M, S, rng):
    source, sigma = S.sample_sub_into(M.empty(), rng)
    rhs = M.eps(source)
    return _differ(M, M.sub_eq(sigma, rhs), sigma, rhs)


def _ty_id(M, S, rng):
    con = S.sample_con(rng)
    ty = S.sample_ty(con, rng)
    lhs = M.sub_ty(ty, M.id(con))
    return _differ(M, M.ty_eq(con, lhs, ty), lhs, ty)


def _ty_comp(M, S, rng):
    target = S.sample_con(rng)
    ty = S.sample_ty(target, rng)
    middle, sigma = S.sample_sub_into(target, rng)
    source, delta = S.sample_sub_into(middle, rng)
    lhs = M.sub_ty(M.sub_ty(ty, sigma), delta)
    rhs = M.sub_ty(ty, M.comp(sigma, delta))
    return _differ(M, M.ty_eq(source, lhs, rhs), lhs, rhs)


def _tm_id(M, S, rng):
    con = S.sample_con(rng)
    ty = S.sample_ty(con, rng)
    tm = S.sample_tm(con, ty, rng)
    lhs = M.sub_tm(tm, M.id(con))
    return _differ(M, M.tm_eq(con, lhs, tm), lhs, tm)


def _tm_comp(M, S, rng):
    target = S.sample_con(rng)
    ty = S.sample_ty(target, rng)
    tm = S.sample_tm(target, ty, rng)
    middle, sigma = S.sample_sub_into(target, rng)
    source, delta = S.sample_sub_into(middle, rng)
    lhs = M.sub_tm(M.sub_tm(tm, sigma), delta)
    rhs = M.sub_tm(tm, M.comp(sigma, delta))
    return _differ(M, M.tm_eq(source, lhs, rhs), lhs, rhs)


def _extension(M, S, rng):
    """Δ, σ : Γ -> Δ, A over Δ and t : A[σ]"""
    target = S.sample_con(rng)
    source, sigma = S.sample_sub_into(target, rng)
    ty = S.sample_ty(target, rng)
    tm = S.sample_tm(source, M.sub_ty(ty, sigma), rng)
    return target, source, sigma, ty, tm


def _p_beta(M, S, rng):
    target, _, sigma, ty, tm = _extension(M, S, rng)
    lhs = M.comp(M.p(target, ty), M.pair(sigma, tm, ty))
    return _differ(M, M.sub_eq(lhs, sigma), lhs, sigma)


def _q_beta(M, S, rng):
    target, source, sigma, ty, tm = _extension(M, S, rng)
    lhs = M.sub_tm(M.q(target, ty), M.pair(sigma, tm, ty))
    return _differ(M, M.tm_eq(source, lhs, tm), lhs, tm)


def _ext_eta(M, S, rng):
    con = S.sample_con(rng)
    ty = S.sample_ty(con, rng)
    lhs = M.pair(M.p(con, ty), M.q(con, ty), ty)
    rhs = M.id(M.ext(con, ty))
    return _differ(M, M.sub_eq(lhs, rhs), lhs, rhs)


def _pair_comp(M, S, rng):
    target, middle, sigma, ty, tm = _extension(M, S, rng)
    _, nu = S.sample_sub_into(middle, rng)
    lhs = M.comp(M.pair(sigma, tm, ty), nu)
    rhs = M.pair(M.comp(sigma, nu), M.sub_tm(tm, nu), ty)
    return _differ(M, M.sub_eq(lhs, rhs), lhs, rhs)


def _representability(M, S, rng):
    target, source, sigma, ty, tm = _extension(M, S, rng)
    result = M.representability(source, target, ty, sigma, tm, rng)
    if result.count == 1:
        return None
    return {"pair": M.describe(M.pair(sigma, tm, ty)), **result.to_dict()}


SCHEMAS: Dict[str, Law] = {
    "assoc": _assoc,
    "idl": _idl,
    "idr": _idr,
    "eps-eta": _eps_eta,
    "ty-id": _ty_id,
    "ty-comp": _ty_comp,
    "tm-id": _tm_id,
    "tm-comp": _tm_comp,
    "p-beta": _p_beta,
    "q-beta": _q_beta,
    "ext-eta": _ext_eta,
    "pair-comp": _pair_comp,
    "representability": _representability,
}


# =============================================================================
# RUNNER
# =============================================================================

def run_schema(model: "ModelSignature", sampler: "Sampler", schema: str, budget: int, seed: int) -> SchemaResult:
    if schema not in SCHEMAS:
        raise PreconditionError(f"unknown law schema {schema!r}")
    law = SCHEMAS[schema]
    result = SchemaResult(schema)
    for i in range(budget):
        rng = random.Random(f"{seed}:{schema}:{i}")
        outcome: Optional[Dict[str, Any]] = None
        for _attempt in range(RETRIES):
            try:
                outcome = law(model, sampler, rng)
            except NoInhabitant:
                continue
            except CwfCheckError as e:
                outcome = {"error": str(e)}
            break
        else:
            result.skipped += 1
            continue
        result.samples += 1
        if outcome is not None:
            result.failures += 1
            if result.counterexample is None:
                result.counterexample = {"sample": i, **outcome}
                logger.debug(f"{model.name}: {schema} fails at sample {i}: {outcome}")
    if result.skipped:
        logger.warning(f"{model.name}: {schema} skipped {result.skipped} of {budget} samples")
    return result


def law_harness(
    model: "ModelSignature",
    sampler: "Sampler",
    budget: int,
    seed: int = 0,
    schemas: Optional[Iterable[str]] = None,
) -> HarnessReport:
    """Run every law schema (or the selected ones) on budget samples each"""
    if budget < 1:
        raise PreconditionError(f"budget must be positive, got {budget}")
    report = HarnessReport(model.name, budget, seed)
    for schema in schemas if schemas is not None else SCHEMAS:
        report.results.append(run_schema(model, sampler, schema, budget, seed))
    status = "passed" if report.passed else "failed"
    logger.info(f"Law harness on {model.name}: {status} ({len(report.results)} schemas, budget {budget})")
    return report
