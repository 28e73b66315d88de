"""Verification suites: golden cases, exhaustive censuses, and oracles.

The census enumerates every subspace of every Jordan configuration up to
a dimension bound, classifies each one exactly, and exposes the four
predicate sets so the equivalences between them can be replayed
wholesale.  The oracle suite cross-checks the chain formula for the
exceptional span against a brute-force height scan.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from typing import Iterator

from . import shoda
from .classify import (
    AdmissibleTuple,
    classify,
    hyperinvariant_lattice,
    is_characteristic,
    is_hyperinvariant,
    is_invariant,
    is_marked,
    monotone_shift_condition,
    shifted_chain_span,
)
from .commutant import commutant_basis, enumerate_automorphisms
from .gf2 import Gf2Matrix, Gf2Vector, Subspace, enumerate_subspaces
from .nilpotent import (
    INFINITY,
    NilpotentOperator,
    elementary_divisors,
    exponent,
    generator_tuple,
    height,
    jordan_matrix,
    ulm_sequence,
    validate_nilpotent,
)

CENSUS_MAX_DIM = 6
ORACLE_MAX_DIM = 9


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str = ""


@dataclass(frozen=True)
class SubspaceCensus:
    """Exact predicate sets over every subspace of one configuration."""

    block_sizes: tuple[int, ...]
    invariant: tuple[Subspace, ...] = field(repr=False)
    marked: tuple[Subspace, ...] = field(repr=False)
    characteristic: tuple[Subspace, ...] = field(repr=False)
    hyperinvariant: tuple[Subspace, ...] = field(repr=False)


def partitions(n: int) -> Iterator[tuple[int, ...]]:
    """All nondecreasing positive tuples summing to n."""

    def rec(remaining: int, minimum: int) -> Iterator[tuple[int, ...]]:
        if remaining == 0:
            yield ()
            return
        for first in range(minimum, remaining + 1):
            for rest in rec(remaining - first, first):
                yield (first,) + rest

    return rec(n, 1)


@functools.lru_cache(maxsize=None)
def jordan_operator(block_sizes: tuple[int, ...]) -> NilpotentOperator:
    return validate_nilpotent(jordan_matrix(list(block_sizes)))


@functools.lru_cache(maxsize=None)
def census(block_sizes: tuple[int, ...]) -> SubspaceCensus:
    """Classify every subspace of the configuration, exactly.

    Characteristic verdicts use the generating-set method, which stays
    exact even where unit enumeration is far beyond any cap.
    """
    f = jordan_operator(block_sizes)
    invariant, marked, characteristic, hyperinvariant = [], [], [], []
    for s in enumerate_subspaces(f.dim):
        if not is_invariant(f, s):
            continue
        invariant.append(s)
        if is_marked(f, s):
            marked.append(s)
        char, complete, _ = is_characteristic(f, s, method="generators")
        assert complete
        if char:
            characteristic.append(s)
        hyper, _ = is_hyperinvariant(f, s)
        if hyper:
            hyperinvariant.append(s)
    return SubspaceCensus(
        block_sizes,
        tuple(invariant),
        tuple(marked),
        tuple(characteristic),
        tuple(hyperinvariant),
    )


def _golden_operator() -> NilpotentOperator:
    return jordan_operator((1, 3))


def _vec(bits: int, dim: int = 4) -> Gf2Vector:
    return Gf2Vector(bits, dim)


def paper_suite() -> list[CheckResult]:
    """Replay the published 4x4 example and the small golden facts."""
    results = []

    def check(name: str, ok: bool, detail: str = "") -> None:
        results.append(CheckResult(name, bool(ok), detail))

    f = _golden_operator()
    e1, e2, e3, e4 = (_vec(1 << i) for i in range(4))
    z = e1 + e3
    x = Subspace.span([z, f.mat.apply(z)], 4)

    check("kernel-of-f", f.mat.kernel() == Subspace.span([e1, e4], 4))
    check("image-of-f", f.mat.image() == Subspace.span([e3, e4], 4))
    check("x-members", sorted(v.bits for v in x.enumerate_vectors()) == [0, 5, 8, 13])
    check("x-contains-e4", x.contains(e4))
    check("x-misses-e1", not x.contains(e1))
    check("exponent-of-z", exponent(f, z) == 2)
    check("height-of-zero", height(f, _vec(0)) == INFINITY)
    check("ulm-sequence", ulm_sequence(f).d == (1, 0, 1))
    check(
        "single-block-ulm",
        ulm_sequence(jordan_operator((4,))).d == (0, 0, 0, 1),
    )
    check(
        "homogeneous-ulm",
        ulm_sequence(jordan_operator((2, 2))).d == (0, 2),
    )
    check("divisors", elementary_divisors(ulm_sequence(f)) == (1, 3))

    c = commutant_basis(f)
    check("commutant-dim", c.dim == 6)
    units = enumerate_automorphisms(c)
    check("unit-count", len(units) == 16 and units.complete)
    template_ok = all(_matches_unit_template(g) for g in units.elements)
    check("unit-template", template_ok)
    actions_ok = True
    for g in units.elements:
        k = g.entry(3, 0)
        d = g.entry(2, 1)
        gz = g.apply(z)
        gfz = g.apply(f.mat.apply(z))
        gzfz = g.apply(z + f.mat.apply(z))
        expected_z = (e1 + e3 + e4).bits if (k ^ d) else (e1 + e3).bits
        expected_zfz = (e1 + e3).bits if (k ^ d) else (e1 + e3 + e4).bits
        if gz.bits != expected_z or gfz != e4 or gzfz.bits != expected_zfz:
            actions_ok = False
    check("unit-action-on-x", actions_ok)

    report = classify(f, x)
    check(
        "x-classification",
        report.invariant
        and report.characteristic
        and not report.hyperinvariant
        and not report.marked,
    )
    w = report.hyperinvariance_witness
    check(
        "projection-witness",
        w is not None
        and w.matrix.rows == (1, 0, 0, 0)
        and w.vector == z
        and w.matrix.apply(z) == e1,
    )
    for k in range(f.index + 1):
        ok_k, _ = is_hyperinvariant(f, f.kernel_chain[k])
        ok_i, _ = is_hyperinvariant(f, f.image_chain[k])
        if not (ok_k and ok_i):
            check("power-spaces-hyperinvariant", False, f"k={k}")
            break
    else:
        check("power-spaces-hyperinvariant", True)

    u = generator_tuple(f)
    check("linking-vector", shoda.linking_vector(f, u, 0, 1) == z)
    check("formula-span", shoda.exceptional_subspace(f, u, 0, 1) == x)
    check("scan-span", shoda.exceptional_subspace_scan(f, 1, 3) == x)
    found = shoda.counterexample(f)
    check(
        "counterexample",
        found is not None
        and found[0] == x
        and (found[1].a_rho, found[1].a_tau) == (1, 3),
    )
    check("zero-subspace-marked", is_marked(f, Subspace.zero(4)))
    return results


def _matches_unit_template(g: Gf2Matrix) -> bool:
    """Unit diagonal, fixed zero pattern, and the two tied entries equal."""
    fixed_one = [(0, 0), (1, 1), (2, 2), (3, 3)]
    fixed_zero = [(0, 2), (0, 3), (1, 0), (1, 2), (1, 3), (2, 0), (2, 3)]
    return (
        all(g.entry(i, j) == 1 for i, j in fixed_one)
        and all(g.entry(i, j) == 0 for i, j in fixed_zero)
        and g.entry(3, 2) == g.entry(2, 1)
    )


def census_suite(max_dim: int = CENSUS_MAX_DIM) -> list[CheckResult]:
    """Exhaustive predicate equivalences over all configurations up to max_dim."""
    results = []
    for n in range(1, max_dim + 1):
        for sizes in partitions(n):
            f = jordan_operator(sizes)
            data = census(sizes)
            label = "-".join(map(str, sizes))
            strict = set(data.characteristic) > set(data.hyperinvariant)
            ulm = ulm_sequence(f)
            results.append(
                CheckResult(
                    f"shoda-equivalence[{label}]",
                    strict == shoda.shoda_condition(ulm),
                    f"strict={strict}",
                )
            )
            results.append(
                CheckResult(
                    f"ulm-form-negation[{label}]",
                    shoda.shoda_condition(ulm) != shoda.ulm_form_condition(ulm),
                )
            )
            marked_set = set(data.marked)
            char_set = set(data.characteristic)
            hyper_set = set(data.hyperinvariant)
            results.append(
                CheckResult(
                    f"hyper-iff-char-and-marked[{label}]",
                    hyper_set == (char_set & marked_set),
                )
            )
            results.append(
                CheckResult(
                    f"lattice-closure-matches-census[{label}]",
                    set(hyperinvariant_lattice(f)) == hyper_set,
                )
            )
            u = generator_tuple(f)
            spans = set()
            for shifts in itertools.product(*(range(t + 1) for t in u.exponents)):
                if monotone_shift_condition(u.exponents, shifts):
                    spans.add(shifted_chain_span(f, u, AdmissibleTuple(shifts)))
            results.append(
                CheckResult(
                    f"lattice-equals-monotone-spans[{label}]", spans == hyper_set
                )
            )
            if shoda.ulm_form_condition(ulm):
                results.append(
                    CheckResult(
                        f"char-equals-hyper-when-excluded[{label}]",
                        char_set == hyper_set,
                    )
                )
    return results


def oracle_suite(max_dim: int = ORACLE_MAX_DIM) -> list[CheckResult]:
    """Chain formula vs height scan for every eligible pair of classes."""
    results = []
    for n in range(1, max_dim + 1):
        for sizes in partitions(n):
            f = jordan_operator(sizes)
            u = generator_tuple(f)
            label = "-".join(map(str, sizes))
            for rho in range(u.class_count):
                for tau in range(rho + 1, u.class_count):
                    if len(u.class_indices(rho)) != 1:
                        continue
                    if len(u.class_indices(tau)) != 1:
                        continue
                    a_rho = u.class_exponent(rho)
                    a_tau = u.class_exponent(tau)
                    if a_rho + 1 >= a_tau:
                        continue
                    formula = shoda.exceptional_subspace(f, u, rho, tau)
                    scanned = shoda.exceptional_subspace_scan(f, a_rho, a_tau)
                    middle = sum(
                        len(u.class_indices(mu)) for mu in range(rho + 1, tau)
                    )
                    tail = sum(
                        len(u.class_indices(mu))
                        for mu in range(tau + 1, u.class_count)
                    )
                    expected_dim = 2 + middle + 2 * tail
                    ok = (
                        formula == scanned
                        and formula.dim == expected_dim
                        and f.mat.map_subspace(formula).dim <= formula.dim
                        and all(
                            formula.contains_bits(f.mat.apply_bits(r))
                            for r in formula.rows
                        )
                    )
                    results.append(
                        CheckResult(
                            f"formula-vs-scan[{label}:{a_rho}<{a_tau}]",
                            ok,
                            f"dim={formula.dim}",
                        )
                    )
    return results


def run_suite(name: str, max_dim: int | None = None) -> list[CheckResult]:
    if name == "paper":
        return paper_suite()
    if name == "census":
        return census_suite(max_dim or CENSUS_MAX_DIM)
    if name == "oracle":
        return oracle_suite(max_dim or ORACLE_MAX_DIM)
    raise ValueError(f"unknown suite {name!r}")
