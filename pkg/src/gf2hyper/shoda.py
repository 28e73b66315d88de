"""Shoda's criterion and the explicit characteristic non-hyperinvariant span.

Over GF(2) a nilpotent operator admits a characteristic subspace that is
not hyperinvariant exactly when two block sizes r < s occur with
multiplicity one each and s > r + 1.  When they do, the span of all
vectors of exponent 2 whose height jumps from r - 1 to s - 1 under f is
such a subspace, and it has a closed chain formula that the scan oracle
cross-checks.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ShodaConditionFails
from .classify import is_characteristic, is_hyperinvariant
from .gf2 import Gf2Vector, Subspace, VECTOR_ENUM_CAP
from .nilpotent import (
    GeneratorTuple,
    NilpotentOperator,
    UlmSequence,
    exponent,
    exponent_projection,
    generator_tuple,
    height,
    ulm_sequence,
)

ORACLE_DIM_CAP = 20


@dataclass(frozen=True)
class ShodaWitness:
    """The data certifying a characteristic non-hyperinvariant subspace."""

    rho_index: int
    tau_index: int
    a_rho: int
    a_tau: int
    z: Gf2Vector
    y_span: Subspace


def shoda_condition(u: UlmSequence) -> bool:
    """True iff two multiplicity-one block sizes r < s exist with s > r + 1."""
    ones = [r for r in range(1, len(u.d) + 1) if u.count(r) == 1]
    return any(s > r + 1 for i, r in enumerate(ones) for s in ones[i + 1 :])


def ulm_form_condition(u: UlmSequence) -> bool:
    """At most one multiplicity-one size, or exactly two at successive sizes."""
    ones = [r for r in range(1, len(u.d) + 1) if u.count(r) == 1]
    if len(ones) <= 1:
        return True
    return len(ones) == 2 and ones[1] == ones[0] + 1


def shoda_block_sizes(u: UlmSequence) -> tuple[int, int] | None:
    """The lexicographically smallest qualifying pair (r, s), if any."""
    ones = [r for r in range(1, len(u.d) + 1) if u.count(r) == 1]
    for i, r in enumerate(ones):
        for s in ones[i + 1 :]:
            if s > r + 1:
                return r, s
    return None


def _check_witness_classes(u: GeneratorTuple, rho: int, tau: int) -> tuple[int, int]:
    if not 0 <= rho < tau < u.class_count:
        raise ShodaConditionFails("class indices must satisfy rho < tau")
    a_rho = u.class_exponent(rho)
    a_tau = u.class_exponent(tau)
    if len(u.class_indices(rho)) != 1 or len(u.class_indices(tau)) != 1:
        raise ShodaConditionFails("both classes must hold exactly one block")
    if a_rho + 1 >= a_tau:
        raise ShodaConditionFails("block sizes must differ by more than one")
    return a_rho, a_tau


def linking_vector(
    f: NilpotentOperator, u: GeneratorTuple, rho: int, tau: int
) -> Gf2Vector:
    """The exponent-2 vector tying the two multiplicity-one chains.

    Sum of the next-to-last chain entries: f^(a_rho - 1) of the short
    generator plus f^(a_tau - 2) of the long one.
    """
    a_rho, a_tau = _check_witness_classes(u, rho, tau)
    g_rho = u.generators[u.class_indices(rho)[0]]
    g_tau = u.generators[u.class_indices(tau)[0]]
    z = f.powers[a_rho - 1].apply(g_rho) + f.powers[a_tau - 2].apply(g_tau)
    assert exponent(f, z) == 2
    assert height(f, z) == a_rho - 1
    assert height(f, f.mat.apply(z)) == a_tau - 1
    return z


def exceptional_subspace(
    f: NilpotentOperator, u: GeneratorTuple, rho: int, tau: int
) -> Subspace:
    """Chain formula for the span of the linking height profile.

    The span of the linking vector, plus the socle of every class
    strictly between the two marked ones, plus the two top chain levels
    of every class above; empty ranges contribute nothing.
    """
    a_rho, a_tau = _check_witness_classes(u, rho, tau)
    del a_rho, a_tau
    bits = []
    z = linking_vector(f, u, rho, tau)
    bits.append(z.bits)
    bits.append(f.mat.apply_bits(z.bits))
    for mu in range(rho + 1, tau):
        a = u.class_exponent(mu)
        for i in u.class_indices(mu):
            bits.append(f.powers[a - 1].apply_bits(u.generators[i].bits))
    for mu in range(tau + 1, u.class_count):
        a = u.class_exponent(mu)
        for i in u.class_indices(mu):
            top_minus_one = f.powers[a - 2].apply_bits(u.generators[i].bits)
            bits.append(top_minus_one)
            bits.append(f.mat.apply_bits(top_minus_one))
    return Subspace.span_bits(bits, f.dim)


def exceptional_subspace_scan(
    f: NilpotentOperator, a_rho: int, a_tau: int, cap: int = ORACLE_DIM_CAP
) -> Subspace:
    """Brute-force oracle: span every vector with the linking height profile.

    Scans Im f^(a_rho - 1) only, since the height constraint already
    forces membership there.  Returns the zero subspace when no vector
    matches.
    """
    base = f.image_of_power(a_rho - 1)
    members = []
    for v in base.enumerate_vectors(cap=min(cap, VECTOR_ENUM_CAP)):
        if v.is_zero() or exponent(f, v) != 2:
            continue
        if height(f, v) != a_rho - 1:
            continue
        if height(f, f.mat.apply(v)) != a_tau - 1:
            continue
        members.append(v)
    return Subspace.span(members, f.dim)


def counterexample(
    f: NilpotentOperator,
) -> tuple[Subspace, ShodaWitness] | None:
    """A verified characteristic non-hyperinvariant subspace, if one exists.

    Returns None when the block-size condition fails.  The returned span
    is re-checked: characteristic, not hyperinvariant, and the
    projection onto the short chain moves the linking vector outside.
    """
    ulm = ulm_sequence(f)
    pair = shoda_block_sizes(ulm)
    if pair is None:
        return None
    a_rho, a_tau = pair
    u = generator_tuple(f)
    rho = u.class_of_exponent(a_rho)
    tau = u.class_of_exponent(a_tau)
    z = linking_vector(f, u, rho, tau)
    y_span = exceptional_subspace(f, u, rho, tau)
    ok, complete, _ = is_characteristic(f, y_span)
    if not (ok and complete):
        raise AssertionError("constructed span failed the characteristic check")
    hyper, _ = is_hyperinvariant(f, y_span)
    if hyper:
        raise AssertionError("constructed span is unexpectedly hyperinvariant")
    projection = exponent_projection(f, u, rho)
    if y_span.contains(projection.apply(z)):
        raise AssertionError("projection witness failed")
    witness = ShodaWitness(rho, tau, a_rho, a_tau, z, y_span)
    return y_span, witness
