"""
cwfcheck command line

Subcommands:
1. check / norm / eq / eval - the syntax kernel and the finite standard model on `.cwf` files
2. nerve / verify-semicat / verify-sset / verify-map - the finite verifiers
3. enumerate - the lemma suite over every small semicategory
4. slice / harness - slices and the law harness on named models

Exit codes: 0 when every check passes, 1 when a verification fails, 2 on
input or usage errors.
"""

import functools
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

import click
from rich.console import Console
from rich.logging import RichHandler

from .config import get_settings
from .errors import CwfCheckError, FormatError, IllFormedError, SemicatError, SSetError
from .reports import CheckEntry, Report, TextSink, Verdict

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


# =============================================================================
# RUN PLUMBING
# =============================================================================

class Run:
    """One command invocation: collects entries, streams them in text mode"""

    def __init__(self, command: str, output_format: str, timing: bool):
        self.report = Report(command=command)
        self.machine = output_format == "machine"
        self.timing = timing
        self.sink = None if self.machine else TextSink()
        self.started = time.perf_counter()

    def add(self, id: str, verdict: Verdict, payload: Optional[Dict[str, Any]] = None) -> CheckEntry:
        entry = self.report.add(id, verdict, payload)
        if self.sink is not None:
            self.sink.entry(entry)
        return entry

    def check(self, id: str, passed: bool, payload: Optional[Dict[str, Any]] = None) -> CheckEntry:
        return self.add(id, Verdict.PASS if passed else Verdict.FAIL, payload)

    def info(self, id: str, payload: Optional[Dict[str, Any]] = None) -> CheckEntry:
        return self.add(id, Verdict.INFO, payload)

    def finish(self) -> int:
        self.report.finish()
        if self.timing:
            self.report.timing = {"total": round(time.perf_counter() - self.started, 3)}
        if self.machine:
            click.echo(self.report.to_machine())
        else:
            self.sink.summary(self.report)
        return self.report.exit_code


def configure_logging(verbose: int) -> None:
    level = get_settings().log_level
    if verbose == 1:
        level = "INFO"
    elif verbose >= 2:
        level = "DEBUG"
    logging.basicConfig(
        level=level,
        format=LOG_FORMAT,
        handlers=[RichHandler(console=Console(stderr=True), show_path=False)],
        force=True,
    )


def command(name: str, **click_kwargs) -> Callable:
    """
    Register a subcommand that receives a Run. Shared options are added
    here; any CwfCheckError becomes an error entry and exit code 2.
    """
    def decorate(fn: Callable) -> Callable:
        @functools.wraps(fn)
        def wrapper(output_format: str, verbose: int, timing: bool, **kwargs):
            configure_logging(verbose)
            run = Run(name, output_format, timing)
            try:
                fn(run, **kwargs)
            except CwfCheckError as e:
                logger.debug(f"{name} failed: {e!r}")
                run.add("input", Verdict.ERROR, {"error": str(e), **_jsonable(e.details)})
            click.get_current_context().exit(run.finish())

        wrapper = click.option("--timing", is_flag=True, help="Add wall-clock timing to the report.")(wrapper)
        wrapper = click.option("-v", "--verbose", count=True, help="Log at INFO (-v) or DEBUG (-vv).")(wrapper)
        wrapper = click.option(
            "--format", "output_format",
            type=click.Choice(["text", "machine"]),
            default=lambda: get_settings().output_format,
            show_default="text",
            help="Report format.",
        )(wrapper)
        return cli.command(name, **click_kwargs)(wrapper)

    return decorate


def _jsonable(details: Dict[str, Any]) -> Dict[str, Any]:
    return {k: v if isinstance(v, (str, int, float, bool, list, dict, type(None))) else str(v) for k, v in details.items()}


def seed_option(fn: Callable) -> Callable:
    return click.option("--seed", type=int, default=lambda: get_settings().seed, show_default="0",
                        help="Seed for sampling.")(fn)


def budget_option(fn: Callable) -> Callable:
    return click.option("--budget", type=click.IntRange(min=1), default=lambda: get_settings().budget,
                        show_default="1000", help="Samples per law schema.")(fn)


def max_level_option(fn: Callable) -> Callable:
    return click.option("--max-level", type=click.IntRange(min=0), default=lambda: get_settings().max_level,
                        show_default="3", help="Highest simplicial level checked.")(fn)


def jobs_option(fn: Callable) -> Callable:
    return click.option("--jobs", type=click.IntRange(min=1), default=1, show_default=True,
                        help="Worker processes; results are merged in a fixed order.")(fn)


def oracle_option(fn: Callable) -> Callable:
    return click.option("--oracle", is_flag=True, help="Enable brute-force cross-checks.")(fn)


existing_file = click.Path(exists=True, dir_okay=False, path_type=Path)


@click.group()
def cli():
    """Type-theory kernel and finite verifiers for categories with families."""


# =============================================================================
# SYNTAX KERNEL
# =============================================================================

def _load_expr(path: Path):
    from .formats import load_cwf

    return load_cwf(path)[1]


def _load_context(path: Optional[Path]):
    from .syntax import Con, Empty

    if path is None:
        return Empty()
    con = _load_expr(path)
    if not isinstance(con, Con):
        raise FormatError(f"{path}: the context file must hold a context, found a {con.sort.value}")
    return con


def _context_option(fn: Callable) -> Callable:
    return click.option("--context", "context_file", type=existing_file,
                        help="A .cwf file whose main expression is the context for types and terms.")(fn)


@command("check")
@click.argument("file", type=existing_file)
@_context_option
def check_cmd(run: Run, file: Path, context_file: Optional[Path]):
    """Check that the main expression of FILE is well formed."""
    from .checker import check, check_con
    from .syntax import Sort

    context = _load_context(context_file)
    expr = _load_expr(file)
    try:
        check_con(context)
        result = check(expr.sort, expr, context)
    except IllFormedError as e:
        run.check("wellformed", False, {"sort": expr.sort.value, "reason": e.reason, "path": list(e.path)})
        return
    payload: Dict[str, Any] = {"sort": expr.sort.value}
    if expr.sort == Sort.TM:
        payload["type"] = str(result)
    elif expr.sort == Sort.SUB:
        payload["source"], payload["target"] = str(result[0]), str(result[1])
    run.check("wellformed", True, payload)


@command("norm")
@click.argument("file", type=existing_file)
@_context_option
def norm_cmd(run: Run, file: Path, context_file: Optional[Path]):
    """Print the normal form of the main expression of FILE."""
    from .checker import normalize

    expr = _load_expr(file)
    nf = normalize(expr.sort, expr, _load_context(context_file))
    if run.machine:
        run.info("normal-form", {"sort": expr.sort.value, "expr": str(nf)})
    else:
        click.echo(str(nf))
        run.report.add("normal-form", Verdict.INFO, {"sort": expr.sort.value, "expr": str(nf)})


@command("eq")
@click.argument("left", type=existing_file)
@click.argument("right", type=existing_file)
@_context_option
@oracle_option
def eq_cmd(run: Run, left: Path, right: Path, context_file: Optional[Path], oracle: bool):
    """Decide whether the main expressions of LEFT and RIGHT are convertible."""
    from .checker import convertible
    from .standard_model import semantic_equal

    context = _load_context(context_file)
    lhs, rhs = _load_expr(left), _load_expr(right)
    if lhs.sort != rhs.sort:
        raise FormatError(f"cannot compare a {lhs.sort.value} with a {rhs.sort.value}")
    equal = convertible(lhs.sort, lhs, rhs, context)
    run.check("convertible", equal, {"verdict": "equal" if equal else "not equal"})
    if oracle:
        semantic = semantic_equal(lhs.sort, lhs, rhs, context)
        run.info("semantic", {"verdict": "equal" if semantic else "not equal"})
        run.check("soundness", semantic or not equal)


@command("eval")
@click.argument("file", type=existing_file)
@_context_option
def eval_cmd(run: Run, file: Path, context_file: Optional[Path]):
    """Tabulate the main expression of FILE in the finite standard model."""
    from .checker import check
    from .standard_model import value_table

    context = _load_context(context_file)
    expr = _load_expr(file)
    check(expr.sort, expr, context)
    run.info("values", {"sort": expr.sort.value, "rows": value_table(expr.sort, expr, context)})


# =============================================================================
# FINITE VERIFIERS
# =============================================================================

def _instance_failure(run: Run, error: FormatError) -> bool:
    """Report an instance that loads but violates its axioms as a failed check"""
    if isinstance(error.__cause__, (SemicatError, SSetError)):
        run.check("validate", False, {"error": str(error)})
        return True
    return False


@command("nerve")
@click.argument("file", type=existing_file)
@max_level_option
@click.option("-o", "--output", type=click.Path(dir_okay=False, path_type=Path),
              help="Write the sset here instead of standard output.")
def nerve_cmd(run: Run, file: Path, max_level: int, output: Optional[Path]):
    """Write the nerve of the semicategory in FILE, up to --max-level."""
    from .finsemicat import nerve
    from .formats import dump_sset, load_semicat

    A = nerve(load_semicat(file), max_level)
    text = dump_sset(A)
    if output is not None:
        output.write_text(text, encoding="utf-8")
        run.info("nerve", {"output": str(output), "cells": A.cell_counts()})
    elif run.machine:
        run.info("nerve", {"cells": A.cell_counts(), "sset": text})
    else:
        click.echo(text, nl=False)
        run.report.add("nerve", Verdict.INFO, {"cells": A.cell_counts()})


@command("verify-sset")
@click.argument("file", type=existing_file)
@max_level_option
def verify_sset_cmd(run: Run, file: Path, max_level: int):
    """Validate FILE and check Segal, identity structure and univalence."""
    from .finsset import identity_structure, segal_report, univalence_check, validate
    from .formats import load_sset

    try:
        A = load_sset(file)
    except FormatError as e:
        if _instance_failure(run, e):
            return
        raise
    validation = validate(A)
    run.check("validate", validation.valid, {"violations": [v.to_dict() for v in validation.violations]})
    if not validation.valid:
        return
    level = min(max_level, A.max_level)
    if level < 2:
        run.info("segal", {"skipped": f"needs level 2, have {level}"})
        return
    segal = segal_report(A, level)
    run.check("segal", segal.passed, segal.to_dict())
    if not segal.passed:
        return
    identities = identity_structure(A)
    run.check("identity-structure/unique", not identities.errors, {"errors": identities.errors})
    run.info("identity-structure", identities.to_dict())
    if identities.exists:
        run.info("univalence", univalence_check(A).to_dict())


@command("verify-semicat")
@click.argument("file", type=existing_file)
@oracle_option
def verify_semicat_cmd(run: Run, file: Path, oracle: bool):
    """Validate FILE and check the identity theory of the semicategory."""
    from .finsemicat import I_of, identity_structure, is_equivalence, is_idempotent, nerve
    from .finsset import univalence_check
    from .formats import load_semicat
    from .lemmas import check_semicat

    try:
        C = load_semicat(file)
    except FormatError as e:
        if _instance_failure(run, e):
            return
        raise
    run.check("validate", True, {"objects": len(C.objects), "morphisms": len(C.morphisms)})
    lemmas = check_semicat(C, oracle)
    for lemma in lemmas:
        run.check(lemma.id, lemma.passed, lemma.detail)
    if not lemmas[0].passed:
        return
    structure = identity_structure(C)
    run.info("identity-structure", {
        "exists": structure is not None,
        "identities": {C.objects[x]: C.name(i) for x, i in (structure or {}).items()},
    })
    for e in range(len(C.morphisms)):
        if is_equivalence(C, e):
            i = I_of(C, e)
            run.check(f"I({C.name(e)})", (e == i) == is_idempotent(C, e), {"identity": C.name(i)})
    if structure is not None:
        run.info("univalence", univalence_check(nerve(C, 3)).to_dict())


@command("verify-map")
@click.argument("file", type=existing_file)
@max_level_option
def verify_map_cmd(run: Run, file: Path, max_level: int):
    """Classify an .ssmap, or the category-of-elements projection of a .functor."""
    from .finsemicat import category_of_elements, id_preservation_failures, identity_structure
    from .finsset import FibrationKind, fibration_kind, lifting_profile
    from .formats import load_functor, load_ssmap

    if file.suffix == ".functor":
        F = load_functor(file)
        _, projection = category_of_elements(F, max(max_level, 2))
        kind = fibration_kind(projection, max_level)
        run.check("left-fibration", kind in (FibrationKind.LEFT, FibrationKind.KAN), {"kind": kind.value})
        if identity_structure(F.base) is not None:
            failures = id_preservation_failures(F)
            run.info("identity-preservation", {"preserved": not failures, "failures": failures})
        return
    m = load_ssmap(file)
    kind = fibration_kind(m, max_level)
    profile = lifting_profile(m, max_level)
    run.info("fibration-kind", {
        "kind": kind.value,
        "unique_lifts": {f"{n},{k}": ok for (n, k), ok in sorted(profile.items())},
    })


@command("enumerate")
@click.option("--max-objects", type=click.IntRange(min=0), required=True)
@click.option("--max-morphisms", type=click.IntRange(min=0), required=True)
@click.option("--min-objects", type=click.IntRange(min=0), default=None,
              help="Defaults to --max-objects.")
@click.option("--min-morphisms", type=click.IntRange(min=0), default=None,
              help="Defaults to --max-morphisms.")
@oracle_option
@jobs_option
def enumerate_cmd(run: Run, max_objects: int, max_morphisms: int, min_objects: Optional[int],
                  min_morphisms: Optional[int], oracle: bool, jobs: int):
    """Run the lemma suite over every semicategory within the bounds."""
    from .finsemicat import EnumSpec, enumerate_shapes
    from .lemmas import check_shape

    spec = EnumSpec(max_objects, max_morphisms, min_objects, min_morphisms)
    shapes = enumerate_shapes(spec)
    total = 0

    def record(summary) -> None:
        nonlocal total
        total += summary.instances
        if summary.errors:
            run.add(summary.id, Verdict.ERROR, summary.to_dict())
        else:
            run.check(summary.id, summary.passed, summary.to_dict())

    if jobs > 1 and len(shapes) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            # map yields in submission order
            for summary in pool.map(check_shape, *zip(*shapes), [oracle] * len(shapes)):
                record(summary)
    else:
        for n_objects, sizes in shapes:
            record(check_shape(n_objects, sizes, oracle))
    logger.info(f"Checked {total} semicategories in {len(shapes)} shapes")
    run.info("instances", {"count": total, "shapes": len(shapes)})


# =============================================================================
# MODELS
# =============================================================================

def _harness_entries(run: Run, report) -> None:
    for result in report.results:
        run.check(f"law/{result.schema}", result.passed, result.to_dict())


def _run_schema(model_name: str, schema: str, budget: int, seed: int) -> Any:
    from .harness import run_schema
    from .models import build_model

    model, sampler = build_model(model_name)
    return run_schema(model, sampler, schema, budget, seed)


@command("harness")
@click.option("--model", "model_name", type=click.Choice(["syntax", "standard", "corrupted"]), required=True)
@click.option("--schema", "schemas", multiple=True, help="Restrict to these law schemas (repeatable).")
@budget_option
@seed_option
@jobs_option
def harness_cmd(run: Run, model_name: str, schemas: List[str], budget: int, seed: int, jobs: int):
    """Check the CwF laws and representability on a named model."""
    from .harness import SCHEMAS, HarnessReport, law_harness
    from .models import build_model

    selected = list(schemas) or list(SCHEMAS)
    if jobs > 1:
        report = HarnessReport(model_name, budget, seed)
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            count = len(selected)
            report.results.extend(pool.map(_run_schema, [model_name] * count, selected,
                                           [budget] * count, [seed] * count))
    else:
        model, sampler = build_model(model_name)
        report = law_harness(model, sampler, budget, seed, selected)
    _harness_entries(run, report)


@command("slice")
@click.argument("file", type=existing_file, required=False)
@click.option("--object", "object_name", help="Object of the semicategory in FILE to slice over.")
@click.option("--model", "model_name", type=click.Choice(["syntax", "standard", "corrupted"]),
              help="Slice a named model instead of a file.")
@_context_option
@budget_option
@seed_option
def slice_cmd(run: Run, file: Optional[Path], object_name: Optional[str], model_name: Optional[str],
              context_file: Optional[Path], budget: int, seed: int):
    """Slice a semicategory file over --object, or a named --model over a context."""
    if (file is None) == (model_name is None):
        raise click.UsageError("give either FILE with --object or --model")
    if file is not None:
        from .finsemicat import slice
        from .formats import dump_semicat, load_semicat

        if object_name is None:
            raise click.UsageError("slicing a semicategory file needs --object")
        C = load_semicat(file)
        result, report = slice(C, C.object_index(object_name))
        run.check("slice/identities", report.passed, report.to_dict())
        run.info("slice", {"semicat": dump_semicat(result)})
        return

    from .harness import law_harness
    from .models import build_slice

    con = _load_context(context_file) if context_file is not None else None
    sliced, sampler = build_slice(model_name, con=con, seed=seed, budget=budget)
    run.info("slice", {"model": sliced.name, "over": sliced.base.describe(sliced.base_con)})
    _harness_entries(run, law_harness(sliced, sampler, budget, seed))


def main() -> None:
    cli(prog_name="cwfcheck")


if __name__ == "__main__":
    main()
