"""Shipped catalog of pairs, modules, and expected verdicts.

The file format is versioned JSON: human-diffable, loaded into validated
entries whose symbolic subalgebra names are expanded against the root
system.  Every expectation carries a provenance tag; loading refuses
anything tagged outside the three recognized kinds.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources

from .errors import (
    CatalogFormatError,
    DimensionCapError,
    ToolkitError,
    UnknownNameError,
)
from .involution import (
    assemble_bundle_involution,
    build_weyl_involution,
    fiber_character,
    fiber_restriction,
    fiber_trivial,
    is_adapted,
)
from .rootsys import Group, Subalgebra, parse_group, standard_subalgebra
from .spherical import classify_torus_fibration, is_spherical_pair
from .sympoly import (
    DEFAULT_DEGREE_BOUND,
    homog_coordinate_mf_crosscheck,
    is_mf_coordinate_ring,
)

SCHEMA_VERSION = 1
CHECKS = ("adapted", "fibration", "involution", "mf_truncated", "spherical")
PROVENANCES = ("trivial_dimension_count", "derived_oracle", "paper_statement")

SYMBOLIC_SUBALGEBRAS = ("full", "zero", "cartan", "borel", "nilradical", "diagonal", "principal")


@dataclass
class CatalogEntry:
    id: str
    group: str
    subalgebra: object = None  # symbolic name or {"span": [vector strings]}
    module: dict | None = None
    expected: dict = field(default_factory=dict)
    group_obj: Group = field(default=None, repr=False, compare=False)
    h: Subalgebra | None = field(default=None, repr=False, compare=False)

    def to_json(self) -> dict:
        out = {"id": self.id, "group": self.group}
        if self.subalgebra is not None:
            out["subalgebra"] = self.subalgebra
        if self.module is not None:
            out["module"] = self.module
        out["expected"] = self.expected
        return out


def default_catalog_path() -> str:
    env = os.environ.get("WEYLKIT_CATALOG")
    if env:
        return env
    return str(resources.files("weylkit") / "data" / "catalog.json")


def _expand_subalgebra(group: Group, spec) -> Subalgebra:
    if isinstance(spec, str):
        return standard_subalgebra(group, spec)
    if isinstance(spec, dict) and "span" in spec:
        vectors = []
        for row in spec["span"]:
            if len(row) != group.dim:
                raise CatalogFormatError(
                    f"span vector has {len(row)} entries, the algebra has dimension {group.dim}"
                )
            from .linalg import fvec

            vectors.append(fvec([Fraction(str(x)) for x in row]))
        return Subalgebra(group, vectors, name="span")
    raise CatalogFormatError(f"subalgebra spec {spec!r} is neither a name nor a span")


def _parse_summands(raw) -> list:
    return [(tuple(lab), int(mult)) for lab, mult in raw]


def _checks_applicable(entry: CatalogEntry) -> set:
    module = entry.module or {}
    out = set()
    if entry.subalgebra is not None:
        out |= {"spherical", "fibration", "adapted", "mf_truncated"}
        if "fiber" in module:
            out.add("involution")
    if "summands" in module:
        out.add("mf_truncated")
    return out


def _validate_entry(raw: dict, position: int) -> CatalogEntry:
    label = raw.get("id", f"#{position}")
    for key in ("id", "group", "expected"):
        if key not in raw:
            raise CatalogFormatError(f"entry {label}: missing required field {key!r}")
    extra = set(raw) - {"id", "group", "subalgebra", "module", "expected"}
    if extra:
        raise CatalogFormatError(f"entry {label}: unknown fields {sorted(extra)}")
    entry = CatalogEntry(
        id=raw["id"],
        group=raw["group"],
        subalgebra=raw.get("subalgebra"),
        module=raw.get("module"),
        expected=raw["expected"],
    )
    try:
        entry.group_obj = parse_group(entry.group)
    except ToolkitError as exc:
        raise CatalogFormatError(f"entry {label}: bad group {entry.group!r}: {exc}") from exc
    if entry.subalgebra is not None:
        # unknown symbolic names surface as their own error kind
        entry.h = _expand_subalgebra(entry.group_obj, entry.subalgebra)
    applicable = _checks_applicable(entry)
    for check, expectation in entry.expected.items():
        if check not in CHECKS:
            raise CatalogFormatError(f"entry {label}: unknown check {check!r}")
        if check not in applicable:
            raise CatalogFormatError(
                f"entry {label}: check {check!r} does not apply to this entry's shape"
            )
        if not isinstance(expectation, dict) or "verdict" not in expectation:
            raise CatalogFormatError(f"entry {label}: expectation for {check} needs a verdict")
        if expectation.get("provenance") not in PROVENANCES:
            raise CatalogFormatError(
                f"entry {label}: expectation for {check} carries provenance "
                f"{expectation.get('provenance')!r}, not one of {PROVENANCES}"
            )
        if "note" not in expectation:
            raise CatalogFormatError(f"entry {label}: expectation for {check} needs a note")
    return entry


def load_catalog(path: str | None = None) -> list[CatalogEntry]:
    path = path if path is not None else default_catalog_path()
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except FileNotFoundError as exc:
        raise CatalogFormatError(f"catalog file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise CatalogFormatError(
            f"catalog does not parse at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    if not isinstance(doc, dict) or doc.get("schema_version") != SCHEMA_VERSION:
        raise CatalogFormatError(
            f"expected schema_version {SCHEMA_VERSION}, got {doc.get('schema_version')!r}"
        )
    raw_entries = doc.get("entries")
    if not isinstance(raw_entries, list):
        raise CatalogFormatError("catalog needs an entries list")
    entries = [_validate_entry(raw, i) for i, raw in enumerate(raw_entries)]
    seen = set()
    for e in entries:
        if e.id in seen:
            raise CatalogFormatError(f"duplicate entry id {e.id!r}")
        seen.add(e.id)
    return entries


def serialize_catalog(entries: list[CatalogEntry]) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "entries": [e.to_json() for e in entries],
    }


def _build_fiber(entry: CatalogEntry):
    desc = entry.module["fiber"]
    kind = desc[0]
    if kind == "trivial":
        return fiber_trivial(entry.group_obj, entry.h)
    if kind == "character":
        return fiber_character(entry.group_obj, entry.h, desc[1])
    if kind == "restriction":
        return fiber_restriction(entry.group_obj, entry.h, tuple(desc[1]))
    raise CatalogFormatError(f"entry {entry.id}: unknown fiber kind {kind!r}")


def compute_check(entry: CatalogEntry, check: str, seed: int = 0) -> str:
    """The computed verdict string for one check on one entry."""
    g = entry.group_obj
    module = entry.module or {}
    if check == "spherical":
        return is_spherical_pair(g, entry.h, seed=seed).status
    if check == "fibration":
        return classify_torus_fibration(g, entry.h).status
    if check == "adapted":
        report = is_adapted(g, entry.h, build_weyl_involution(g))
        return "adapted" if report.verdict else "not_adapted"
    if check == "mf_truncated":
        bound = module.get("degree_bound", DEFAULT_DEGREE_BOUND)
        if "summands" in module:
            return is_mf_coordinate_ring(g, _parse_summands(module["summands"]), bound).verdict
        ambient = _parse_summands(module["ambient"]) if "ambient" in module else None
        return homog_coordinate_mf_crosscheck(g, entry.h, bound, ambient=ambient).verdict
    if check == "involution":
        cert = assemble_bundle_involution(g, entry.h, _build_fiber(entry))
        return "verified" if all(cert.checks.values()) else "failed"
    raise UnknownNameError(f"unknown check {check!r}")


def run_catalog(
    entries: list[CatalogEntry],
    checks=None,
    seed: int = 0,
) -> dict:
    """Compute every selected expectation and tabulate agreement.

    Per-entry failures are recorded in the table rather than aborting the
    sweep; a dimension-cap hit is a skip with its reason, any other error
    becomes an "error:<code>" verdict that counts as a disagreement.
    Rows come out ordered by entry id, then check name.
    """
    selected = CHECKS if checks is None else tuple(checks)
    for c in selected:
        if c not in CHECKS:
            raise UnknownNameError(f"unknown check {c!r}; valid checks: {CHECKS}")
    rows = []
    for entry in sorted(entries, key=lambda e: e.id):
        for check in sorted(set(selected) & set(entry.expected)):
            expected = entry.expected[check]["verdict"]
            row = {
                "id": entry.id,
                "check": check,
                "expected": expected,
                "verdict": None,
                "agree": None,
                "skipped": False,
                "reason": None,
            }
            try:
                row["verdict"] = compute_check(entry, check, seed=seed)
                row["agree"] = row["verdict"] == expected
            except DimensionCapError as exc:
                row["skipped"] = True
                row["reason"] = str(exc)
            except ToolkitError as exc:
                row["verdict"] = f"error:{exc.code}"
                row["agree"] = row["verdict"] == expected
                row["reason"] = str(exc)
            rows.append(row)
    agreements = sum(1 for r in rows if r["agree"] is True)
    disagreements = sum(1 for r in rows if r["agree"] is False)
    skipped = sum(1 for r in rows if r["skipped"])
    errors = sum(1 for r in rows if r["verdict"] and str(r["verdict"]).startswith("error:"))
    return {
        "rows": rows,
        "summary": {
            "entries": len(entries),
            "checks_run": len(rows),
            "agreements": agreements,
            "disagreements": disagreements,
            "skipped": skipped,
            "errors": errors,
        },
    }
