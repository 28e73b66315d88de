"""Subspace classification: invariant, marked, characteristic, hyperinvariant.

Hyperinvariance is decided against a commutant basis only: a subspace is
closed under addition, so stability under a spanning set already gives
stability under the whole algebra.  Characteristic verdicts are exact
either by exhausting the unit group under a cap or by checking a
generating set of it; sampling is available but always flagged as an
incomplete verdict.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass

from .errors import CapExceeded, DimensionMismatch, InadmissibleTuple, NotCharacteristic
from .commutant import (
    automorphism_generators,
    commutant_basis,
    enumerate_automorphisms,
    sample_automorphisms,
    UNIT_ENUM_CAP,
)
from .gf2 import Gf2Matrix, Gf2Vector, Subspace
from .nilpotent import (
    GeneratorTuple,
    NilpotentOperator,
    class_span,
    cyclic_subspace,
)

DEFAULT_SAMPLE_BUDGET = 4096


@dataclass(frozen=True)
class Witness:
    """A commuting map and a member it pushes outside the subspace."""

    matrix: Gf2Matrix
    vector: Gf2Vector


@dataclass(frozen=True)
class AdmissibleTuple:
    """Per-generator shifts, one in [0, t_i] for each chain length t_i."""

    shifts: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "shifts", tuple(self.shifts))
        if any(r < 0 for r in self.shifts):
            raise InadmissibleTuple("shifts must be nonnegative")

    def validate_against(self, exponents: tuple[int, ...]) -> None:
        if len(self.shifts) != len(exponents):
            raise InadmissibleTuple("one shift per generator is required")
        for r, t in zip(self.shifts, exponents):
            if r > t:
                raise InadmissibleTuple(f"shift {r} exceeds chain length {t}")


@dataclass(frozen=True)
class ClassificationReport:
    """The four predicate verdicts for one subspace.

    ``characteristic_complete`` is False only for sampled verdicts; every
    other path is exact.
    """

    subspace: Subspace
    invariant: bool
    marked: bool
    characteristic: bool
    characteristic_complete: bool
    hyperinvariant: bool
    invariance_witness: Witness | None = None
    characteristic_witness: Witness | None = None
    hyperinvariance_witness: Witness | None = None


def invariance_witness(f: NilpotentOperator, s: Subspace) -> Witness | None:
    """The first basis vector that f moves out of s, if any."""
    if s.ambient_dim != f.dim:
        raise DimensionMismatch("subspace does not match the operator")
    for r in s.rows:
        if not s.contains_bits(f.mat.apply_bits(r)):
            return Witness(f.mat, Gf2Vector(r, f.dim))
    return None


def is_invariant(f: NilpotentOperator, s: Subspace) -> bool:
    return invariance_witness(f, s) is None


def _stability_witness(maps, s: Subspace) -> Witness | None:
    for g in maps:
        for r in s.rows:
            if not s.contains_bits(g.apply_bits(r)):
                return Witness(g, Gf2Vector(r, s.ambient_dim))
    return None


def is_hyperinvariant(
    f: NilpotentOperator, s: Subspace
) -> tuple[bool, Witness | None]:
    """Stability under everything commuting with f.

    Tested against the commutant basis alone; linearity extends the
    verdict to the full algebra.
    """
    bad = invariance_witness(f, s)
    if bad is not None:
        return False, bad
    bad = _stability_witness(commutant_basis(f).basis, s)
    return bad is None, bad


def is_characteristic(
    f: NilpotentOperator,
    s: Subspace,
    cap: int = UNIT_ENUM_CAP,
    method: str = "auto",
) -> tuple[bool, bool, Witness | None]:
    """Stability under every automorphism commuting with f.

    Returns (verdict, complete, witness).  ``method``:

    * ``auto`` - enumerate the unit group when 2^dim fits the cap,
      otherwise check a generating set; both are exact.
    * ``enumerate`` - exhaustive only; degrades to sampling above the
      cap, with complete=False.
    * ``generators`` - generating-set check, exact at any size.
    * ``sample`` - random units only, complete=False.
    """
    bad = invariance_witness(f, s)
    if bad is not None:
        return False, True, bad
    c = commutant_basis(f)
    if method == "auto":
        method = "enumerate" if (1 << c.dim) <= cap else "generators"
    if method == "enumerate":
        try:
            units = enumerate_automorphisms(c, cap)
        except CapExceeded:
            method = "sample"
        else:
            bad = _stability_witness(units.elements, s)
            return bad is None, True, bad
    if method == "generators":
        bad = _stability_witness(automorphism_generators(f), s)
        return bad is None, True, bad
    if method == "sample":
        units = sample_automorphisms(c, DEFAULT_SAMPLE_BUDGET)
        bad = _stability_witness(units.elements, s)
        return bad is None, False, bad
    raise ValueError(f"unknown method {method!r}")


def is_marked(f: NilpotentOperator, s: Subspace) -> bool:
    """Intersection criterion: f^a s ∩ Im f^(a+r) = f^a (s ∩ Im f^r) for all a, r.

    Exponents past the nilpotency index are vacuous, so both run over
    [0, index].  The zero subspace passes trivially.
    """
    if invariance_witness(f, s) is not None:
        return False
    for a in range(f.index + 1):
        mapped = f.powers[a].map_subspace(s)
        for r in range(f.index + 1):
            lhs = mapped.intersect(f.image_of_power(a + r))
            rhs = f.powers[a].map_subspace(s.intersect(f.image_chain[r]))
            if lhs != rhs:
                return False
    return True


def shifted_chain_span(
    f: NilpotentOperator, u: GeneratorTuple, shifts: AdmissibleTuple
) -> Subspace:
    """The marked subspace spanned by the shifted chains f^(r_i) u_i."""
    shifts.validate_against(u.exponents)
    acc = Subspace.zero(f.dim)
    for g, r in zip(u.generators, shifts.shifts):
        acc = acc.sum(cyclic_subspace(f, f.powers[r].apply(g)))
    expected = sum(t - r for t, r in zip(u.exponents, shifts.shifts))
    if acc.dim != expected:
        raise AssertionError("shifted chains failed to stay independent")
    return acc


def monotone_shift_condition(
    exponents: tuple[int, ...] | list[int], shifts: AdmissibleTuple | tuple[int, ...]
) -> bool:
    """Nondecreasing shifts with nondecreasing co-shifts.

    Exactly the shift tuples whose chain span does not depend on the
    choice of generators; those spans are the hyperinvariant subspaces.
    """
    r = shifts.shifts if isinstance(shifts, AdmissibleTuple) else tuple(shifts)
    if any(x > y for x, y in zip(r, r[1:])):
        return False
    co = [t - x for t, x in zip(exponents, r)]
    return all(x <= y for x, y in zip(co, co[1:]))


@functools.lru_cache(maxsize=None)
def hyperinvariant_lattice(f: NilpotentOperator) -> tuple[Subspace, ...]:
    """Closure of the power kernels and images under sum and intersection.

    Worklist fixed point with canonical-form dedup; finitely many
    subspaces guarantee termination.
    """
    nodes = set(f.kernel_chain) | set(f.image_chain)
    while True:
        fresh = set()
        for a, b in itertools.combinations(nodes, 2):
            for c in (a.sum(b), a.intersect(b)):
                if c not in nodes:
                    fresh.add(c)
        if not fresh:
            break
        nodes |= fresh
    return tuple(sorted(nodes, key=lambda s: (s.dim, s.rows)))


def largest_hyperinvariant_inside(
    f: NilpotentOperator, u: GeneratorTuple, s: Subspace, verify: bool = False
) -> Subspace:
    """The sum of the intersections with each equal-exponent summand.

    For a characteristic subspace this is the largest hyperinvariant
    subspace it contains.
    """
    if verify:
        ok, _, _ = is_characteristic(f, s)
        if not ok:
            raise NotCharacteristic("input subspace is not characteristic")
    acc = Subspace.zero(f.dim)
    for mu in range(u.class_count):
        acc = acc.sum(s.intersect(class_span(f, u, mu)))
    return acc


def classify(
    f: NilpotentOperator,
    s: Subspace,
    cap: int = UNIT_ENUM_CAP,
    method: str = "auto",
) -> ClassificationReport:
    """Evaluate all four predicates and enforce their interdependencies."""
    bad = invariance_witness(f, s)
    if bad is not None:
        return ClassificationReport(
            subspace=s,
            invariant=False,
            marked=False,
            characteristic=False,
            characteristic_complete=True,
            hyperinvariant=False,
            invariance_witness=bad,
        )
    marked = is_marked(f, s)
    char, complete, char_witness = is_characteristic(f, s, cap, method)
    hyper, hyper_witness = is_hyperinvariant(f, s)
    if complete:
        if hyper != (char and marked):
            raise AssertionError(
                "hyperinvariant must coincide with characteristic-and-marked"
            )
    return ClassificationReport(
        subspace=s,
        invariant=True,
        marked=marked,
        characteristic=char,
        characteristic_complete=complete,
        hyperinvariant=hyper,
        characteristic_witness=char_witness,
        hyperinvariance_witness=hyper_witness,
    )
