"""Truncated coordinate rings of modules and multiplicity-freeness.

Symmetric powers are computed on characters with the Newton/Adams
recursion d*h_d = sum_k psi^k(chi) * h_{d-k}, so no large module is ever
materialized.  Verdicts are explicitly truncated: "multiplicity_free_up_to_D"
claims nothing beyond the inspected degrees, and a failure always carries a
witness that can be recomputed from the per-degree table.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from .errors import (
    DegenerateInputError,
    DimensionCapError,
    NonDominantError,
    NonReductiveError,
)
from .linalg import column_stack, nullspace, rank
from .repthy import (
    DIM_CAP,
    build_module,
    check_label,
    decompose_character,
    module_character,
    weyl_dim,
)
from .rootsys import Group, Subalgebra

Weight = tuple[int, ...]
Summands = list[tuple[Weight, int]]

DEFAULT_DEGREE_BOUND = 8


def check_summands(group: Group, summands) -> Summands:
    """Validate a direct-sum descriptor: dominant labels, positive counts,
    every summand under the global dimension cap."""
    out: Summands = []
    for lab, mult in summands:
        lab = check_label(group, lab)
        if mult <= 0:
            raise DegenerateInputError(f"multiplicity {mult} for {lab} must be positive")
        if weyl_dim(group, lab) > DIM_CAP:
            raise DimensionCapError(
                f"summand {lab} has dimension {weyl_dim(group, lab)} > {DIM_CAP}"
            )
        out.append((lab, int(mult)))
    return out


def summands_dim(group: Group, summands: Summands) -> int:
    return sum(m * weyl_dim(group, lab) for lab, m in summands)


def dual_summands(group: Group, summands: Summands) -> Summands:
    return [(group.dual_label(lab), m) for lab, m in summands]


def _sum_character(group: Group, summands: Summands) -> dict[Weight, int]:
    char: dict[Weight, int] = {}
    for lab, mult in summands:
        for w, m in module_character(group, [lab]).items():
            char[w] = char.get(w, 0) + mult * m
    return char


def _adams(char: dict[Weight, int], k: int) -> dict[Weight, int]:
    out: dict[Weight, int] = {}
    for w, m in char.items():
        kw = tuple(k * x for x in w)
        out[kw] = out.get(kw, 0) + m
    return out


def _convolve(c1: dict[Weight, int], c2: dict[Weight, int]) -> dict[Weight, int]:
    out: dict[Weight, int] = {}
    for w1, m1 in c1.items():
        for w2, m2 in c2.items():
            w = tuple(a + b for a, b in zip(w1, w2))
            out[w] = out.get(w, 0) + m1 * m2
    return out


def sym_power_characters(group: Group, summands: Summands, d: int) -> list[dict[Weight, int]]:
    """Characters of S^0(V) .. S^d(V) by the Newton/Adams recursion."""
    summands = check_summands(group, summands)
    if d < 0:
        raise DegenerateInputError("degree must be nonnegative")
    chi = _sum_character(group, summands)
    powers = [_adams(chi, k) for k in range(d + 1)]  # powers[0] unused
    zero = (0,) * group.weight_len
    hs: list[dict[Weight, int]] = [{zero: 1}]
    for n in range(1, d + 1):
        acc: dict[Weight, int] = {}
        for k in range(1, n + 1):
            for w, m in _convolve(powers[k], hs[n - k]).items():
                acc[w] = acc.get(w, 0) + m
        h: dict[Weight, int] = {}
        for w, m in acc.items():
            q, r = divmod(m, n)
            assert r == 0, "Newton recursion produced a non-integer multiplicity"
            if q:
                h[w] = q
        hs.append(h)
    return hs


def sym_power_decompose(group: Group, summands: Summands, d: int) -> dict[Weight, int]:
    """Irreducible decomposition of the d-th symmetric power of V.

    The result conserves dimension: the multiplicities weighted by Weyl
    dimensions add up to binomial(dim V + d - 1, d).
    """
    hs = sym_power_characters(group, summands, d)
    out = decompose_character(group, hs[d])
    total = sum(m * weyl_dim(group, lab) for lab, m in out.items())
    expected = comb(summands_dim(group, check_summands(group, summands)) + d - 1, d)
    assert total == expected, f"dimension leak in S^{d}: {total} != {expected}"
    return out


@dataclass
class MFVerdict:
    """Truncated multiplicity-freeness report.

    table maps each inspected degree to its decomposition; witness is set
    exactly when the verdict is "fails" and names a label whose aggregate
    multiplicity over the table is at least 2, together with the degree
    contributing most to it.
    """

    verdict: str  # "multiplicity_free_up_to_D" | "fails"
    degree_bound: int
    witness: dict | None = None
    table: dict[int, dict[Weight, int]] = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "degree_bound": self.degree_bound,
            "witness": dict(self.witness) if self.witness else None,
            "table": {
                d: {str(list(lab)): m for lab, m in dec.items()}
                for d, dec in self.table.items()
            },
        }


def _verdict_from_table(table: dict[int, dict[Weight, int]], bound: int) -> MFVerdict:
    totals: dict[Weight, int] = {}
    for dec in table.values():
        for lab, m in dec.items():
            totals[lab] = totals.get(lab, 0) + m
    bad = {lab: t for lab, t in totals.items() if t >= 2}
    if not bad:
        return MFVerdict("multiplicity_free_up_to_D", bound, None, table)
    # The worst offender, with the degree that contributes the most to it
    # (ties resolved toward low degree), makes the most useful witness.
    label = max(bad, key=lambda lab: (bad[lab], lab))
    degree = max(
        (d for d in sorted(table) if label in table[d]),
        key=lambda d: table[d][label],
    )
    witness = {"degree": degree, "label": label, "multiplicity": totals[label]}
    return MFVerdict("fails", bound, witness, table)


def is_mf_coordinate_ring(
    group: Group, summands: Summands, degree_bound: int = DEFAULT_DEGREE_BOUND
) -> MFVerdict:
    """Does every irreducible occur at most once in C[V] up to degree D?

    The coordinate ring is built from the dual module, and multiplicities
    are aggregated across degrees: a label showing up in two different
    degrees fails just as surely as a within-degree repeat.
    """
    if degree_bound < 1:
        raise DegenerateInputError("degree bound must be at least 1")
    dual = dual_summands(group, check_summands(group, summands))
    hs = sym_power_characters(group, dual, degree_bound)
    table = {d: decompose_character(group, hs[d]) for d in range(degree_bound + 1)}
    return _verdict_from_table(table, degree_bound)


def check_reductive(group: Group, h: Subalgebra) -> None:
    """Nondegeneracy of the restricted invariant form, the workhorse test
    for reductivity of a subalgebra in a reductive ambient algebra."""
    if h.dim == 0:
        return
    basis = column_stack(h.basis)
    gram = basis.T @ group.invariant_form @ basis
    if rank(gram) != h.dim:
        raise NonReductiveError(
            "invariant form degenerates on the subalgebra; not reductive"
        )


def invariant_multiplicity(group: Group, h: Subalgebra, label: Weight) -> int:
    """dim of the h-annihilated subspace of the module dual to V(label)."""
    dual = build_module(group, group.dual_label(label))
    if h.dim == 0:
        return dual.dim
    rows = []
    for x in h.basis:
        rows.extend(dual.action(x))
    return len(nullspace(column_stack(rows).T))


def homog_coordinate_mf_crosscheck(
    group: Group,
    h: Subalgebra,
    degree_bound: int = DEFAULT_DEGREE_BOUND,
    ambient: Summands | None = None,
) -> MFVerdict:
    """Multiplicity count for the orbit through the base point of a module.

    The degree windows come from the symmetric powers of the dual of the
    ambient module; within the window, each label's multiplicity is the
    exact nullspace dimension of the h-action on the dual module, counted
    once per label.  By Frobenius reciprocity this is its multiplicity in
    the function algebra of the orbit, so an entry of 2 or more refutes
    sphericality of the pair and the all-ones outcome certifies it through
    the inspected window.
    """
    if degree_bound < 1:
        raise DegenerateInputError("degree bound must be at least 1")
    check_reductive(group, h)
    if ambient is None:
        ambient = [(_default_ambient_label(group), 1)]
    dual = dual_summands(group, check_summands(group, ambient))
    hs = sym_power_characters(group, dual, degree_bound)
    table: dict[int, dict[Weight, int]] = {}
    seen: dict[Weight, int] = {}
    for d in range(degree_bound + 1):
        row: dict[Weight, int] = {}
        for lab in sorted(decompose_character(group, hs[d])):
            if lab not in seen:
                seen[lab] = invariant_multiplicity(group, h, lab)
            if seen[lab]:
                row[lab] = seen[lab]
        table[d] = row
    # A label often persists through several degrees (the trivial one always
    # does); its orbit multiplicity is still the single kernel dimension, so
    # repeats across degrees must not be double counted here.
    totals = seen
    bad = {lab: t for lab, t in totals.items() if t >= 2}
    if not bad:
        return MFVerdict("multiplicity_free_up_to_D", degree_bound, None, table)
    label = max(bad, key=lambda lab: (bad[lab], lab))
    degree = min(d for d, row in table.items() if label in row)
    witness = {"degree": degree, "label": label, "multiplicity": totals[label]}
    return MFVerdict("fails", degree_bound, witness, table)


def _default_ambient_label(group: Group) -> Weight:
    # First fundamental weight (or the all-ones character for a bare
    # torus).  Callers who care about the window size pass ambient.
    if group.rank == 0:
        return (1,) * group.torus_dim
    return (1,) + (0,) * (group.weight_len - 1)

