"""
Instance Files

YAML layouts for the finite instances the CLI verifies:

1. `.semicat`: objects, morphisms as [src, dst, name], composition as [g, f, g∘f]
2. `.sset`: max_level and cells; level 0 lists vertex names, level n >= 1 maps
   each cell name to its ordered face names
3. `.ssmap`: source and target (a path to an `.sset` file or an inline sset)
   and maps, one name -> name mapping per level
4. `.functor`: semicat (path or inline), carriers per object name and
   actions per morphism name as element -> element mappings
5. `.cwf`: surface syntax (see surface.py)

Paths inside a file are resolved relative to that file.
"""

import logging
from pathlib import Path
from typing import Any, Dict, List, Mapping, Tuple, Union

import yaml

from .errors import CwfCheckError, FormatError
from .finsemicat import FinSemicat, FinSetFunctor, semicat_to_dict
from .finsset import FinSSet, SSetMap, ensure_map, sset_to_dict
from .surface import parse_program
from .syntax import Expr

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


# =============================================================================
# HELPERS
# =============================================================================

def _read_yaml(path: PathLike) -> Any:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise FormatError(f"cannot read {path}: {e.strerror}", {"path": str(path)})
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as e:
        raise FormatError(f"{path}: invalid YAML: {e}", {"path": str(path)})
    logger.debug(f"Loaded {path}")
    return data


def _mapping(data: Any, what: str) -> Mapping[str, Any]:
    if not isinstance(data, Mapping):
        raise FormatError(f"{what} must be a mapping")
    return data


def _field(data: Mapping[str, Any], key: str, what: str) -> Any:
    if key not in data:
        raise FormatError(f"{what} is missing '{key}'")
    return data[key]


def _names(value: Any, what: str) -> List[str]:
    if not isinstance(value, list):
        raise FormatError(f"{what} must be a list")
    return [str(v) for v in value]


def _triples(value: Any, what: str) -> List[Tuple[str, str, str]]:
    if not isinstance(value, list):
        raise FormatError(f"{what} must be a list of triples")
    triples = []
    for entry in value:
        if not isinstance(entry, list) or len(entry) != 3:
            raise FormatError(f"{what}: expected a triple, got {entry!r}")
        triples.append(tuple(str(v) for v in entry))
    return triples


def _wrap(what: str, build):
    """Run build, re-raising instance errors as FormatError with the file named"""
    try:
        return build()
    except FormatError:
        raise
    except CwfCheckError as e:
        raise FormatError(f"{what}: {e}", e.details) from e


def _nested(base: Path, value: Any, loader, inline, what: str):
    if isinstance(value, str):
        return loader(base / value)
    return _wrap(what, lambda: inline(_mapping(value, what), what))


# =============================================================================
# SEMICATEGORIES
# =============================================================================

def semicat_from_dict(data: Mapping[str, Any], what: str = "semicat") -> FinSemicat:
    objects = _names(_field(data, "objects", what), f"{what} objects")
    morphisms = _triples(data.get("morphisms") or [], f"{what} morphisms")
    composition = _triples(data.get("composition") or [], f"{what} composition")
    return _wrap(what, lambda: FinSemicat.build(objects, morphisms, composition))


def load_semicat(path: PathLike) -> FinSemicat:
    return semicat_from_dict(_mapping(_read_yaml(path), str(path)), str(path))


def dump_semicat(C: FinSemicat) -> str:
    return yaml.safe_dump(semicat_to_dict(C), sort_keys=False, default_flow_style=None)


# =============================================================================
# SEMISIMPLICIAL SETS AND MAPS
# =============================================================================

def sset_from_dict(data: Mapping[str, Any], what: str = "sset") -> FinSSet:
    levels = _field(data, "cells", what)
    if not isinstance(levels, list) or not levels:
        raise FormatError(f"{what} cells must be a non-empty list of levels")
    parsed: List[Any] = [_names(levels[0], f"{what} level 0")]
    for n, level in enumerate(levels[1:], start=1):
        level = _mapping(level if level is not None else {}, f"{what} level {n}")
        parsed.append({
            str(name): _names(faces, f"{what} faces of {name}")
            for name, faces in level.items()
        })
    declared = data.get("max_level", len(parsed) - 1)
    if declared != len(parsed) - 1:
        raise FormatError(f"{what} declares max_level {declared} but lists {len(parsed)} levels")
    return _wrap(what, lambda: FinSSet.build(parsed))


def load_sset(path: PathLike) -> FinSSet:
    return sset_from_dict(_mapping(_read_yaml(path), str(path)), str(path))


def dump_sset(A: FinSSet) -> str:
    return yaml.safe_dump(sset_to_dict(A), sort_keys=False, default_flow_style=None)


def ssmap_from_dict(data: Mapping[str, Any], base: Path, what: str = "ssmap") -> SSetMap:
    source = _nested(base, _field(data, "source", what), load_sset, sset_from_dict, f"{what} source")
    target = _nested(base, _field(data, "target", what), load_sset, sset_from_dict, f"{what} target")
    maps = _field(data, "maps", what)
    if not isinstance(maps, list):
        raise FormatError(f"{what} maps must be a list with one mapping per level")
    level_maps = []
    for n, level in enumerate(maps):
        level = {str(k): v for k, v in _mapping(level, f"{what} maps level {n}").items()}
        row = []
        for c in range(source.level_size(n)):
            name = source.name(n, c)
            if name not in level:
                raise FormatError(f"{what}: level {n} cell {name} has no image")
            row.append(_wrap(what, lambda: target.index(n, str(level[name]))))
        level_maps.append(tuple(row))
    return _wrap(what, lambda: ensure_map(SSetMap(source, target, tuple(level_maps))))


def load_ssmap(path: PathLike) -> SSetMap:
    path = Path(path)
    return ssmap_from_dict(_mapping(_read_yaml(path), str(path)), path.parent, str(path))


# =============================================================================
# FUNCTORS
# =============================================================================

def functor_from_dict(data: Mapping[str, Any], base: Path, what: str = "functor") -> FinSetFunctor:
    C = _nested(base, _field(data, "semicat", what), load_semicat, semicat_from_dict, f"{what} semicat")
    carriers_in = _mapping(_field(data, "carriers", what), f"{what} carriers")
    carriers = []
    for a in C.objects:
        carriers.append(tuple(_names(carriers_in.get(a, []), f"{what} carrier of {a}")))
    actions_in = _mapping(data.get("actions") or {}, f"{what} actions")
    actions = []
    for m in C.morphisms:
        raw = _mapping(actions_in.get(m.name, {}), f"{what} action of {m.name}")
        table = {str(k): v for k, v in raw.items()}
        row = []
        for x in carriers[m.src]:
            if x not in table:
                raise FormatError(f"{what}: action of {m.name} is undefined on {x}")
            image = str(table[x])
            if image not in carriers[m.dst]:
                raise FormatError(f"{what}: action of {m.name} sends {x} outside its carrier")
            row.append(carriers[m.dst].index(image))
        actions.append(tuple(row))
    return _wrap(what, lambda: FinSetFunctor(C, tuple(carriers), tuple(actions)))


def load_functor(path: PathLike) -> FinSetFunctor:
    path = Path(path)
    return functor_from_dict(_mapping(_read_yaml(path), str(path)), path.parent, str(path))


# =============================================================================
# SURFACE SYNTAX
# =============================================================================

def load_cwf(path: PathLike) -> Tuple[Dict[str, Expr], Expr]:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise FormatError(f"cannot read {path}: {e.strerror}", {"path": str(path)})
    return parse_program(text)
