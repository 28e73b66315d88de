"""The algebra of operators commuting with f and its unit group.

The commutant is computed exactly as the kernel of the linear map
g -> gf - fg on n^2 unknowns.  Units (the commuting automorphisms) are
available three ways: exhaustive enumeration under a cap, uniform
sampling, and a small generating set that is complete for the whole
unit group and therefore supports exact characteristic-subspace tests
even when enumeration is hopeless.
"""

from __future__ import annotations

import functools
import random
from dataclasses import dataclass, field

from .errors import (
    CapExceeded,
    ChainLengthOne,
    DimensionMismatch,
    NotAGeneratorTuple,
    ExponentOrderViolation,
    NotHomogeneous,
    SingleBlock,
)
from .gf2 import Gf2Matrix, Gf2Vector, Subspace
from .nilpotent import (
    GeneratorTuple,
    NilpotentOperator,
    chain_matrix,
    elementary_divisors,
    exponent,
    generator_tuple,
    make_generator_tuple,
    ulm_sequence,
)

UNIT_ENUM_CAP = 1 << 20


def flatten_matrix(m: Gf2Matrix) -> int:
    """Pack a square matrix into one int, row-major."""
    bits = 0
    for i, r in enumerate(m.rows):
        bits |= r << (i * m.n_cols)
    return bits


def unflatten_matrix(bits: int, n: int) -> Gf2Matrix:
    mask = (1 << n) - 1
    return Gf2Matrix(tuple((bits >> (i * n)) & mask for i in range(n)), n)


@dataclass(frozen=True)
class CommutantBasis:
    """A linear basis of {g : gf = fg}."""

    operator: NilpotentOperator
    basis: tuple[Gf2Matrix, ...] = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.basis)


@dataclass(frozen=True)
class AutomorphismSet:
    """Invertible commuting operators; complete means exhaustive."""

    elements: tuple[Gf2Matrix, ...] = field(repr=False)
    complete: bool = True

    def __len__(self) -> int:
        return len(self.elements)


@functools.lru_cache(maxsize=None)
def commutant_basis(f: NilpotentOperator) -> CommutantBasis:
    """Solve gf - fg = 0 over GF(2) on the n^2 matrix entries.

    Unknown (i, j) is bit i*n + j; the kernel of the stacked constraint
    rows is canonicalized, so the basis order is deterministic.
    """
    n = f.dim
    fm = f.mat.rows
    constraints = []
    for p in range(n):
        for q in range(n):
            bits = 0
            for k in range(n):
                if (fm[k] >> q) & 1:
                    bits ^= 1 << (p * n + k)
                if (fm[p] >> k) & 1:
                    bits ^= 1 << (k * n + q)
            if bits:
                constraints.append(bits)
    if constraints:
        solution = Gf2Matrix(tuple(constraints), n * n).kernel()
    else:
        solution = Subspace.full(n * n)
    basis = tuple(unflatten_matrix(b, n) for b in solution.rows)
    for g in basis:
        if g @ f.mat != f.mat @ g:
            raise AssertionError("commutant solver produced a non-commuting matrix")
    divisors = elementary_divisors(ulm_sequence(f))
    expected = sum(min(a, b) for a in divisors for b in divisors)
    if len(basis) != expected:
        raise AssertionError(
            f"commutant dimension {len(basis)} != sum of min(t_i, t_j) = {expected}"
        )
    return CommutantBasis(f, basis)


def enumerate_automorphisms(c: CommutantBasis, cap: int = UNIT_ENUM_CAP) -> AutomorphismSet:
    """All invertible commutant elements, sorted by packed-bit value.

    Walks the 2^dim linear combinations in Gray-code order (one basis
    XOR per step) and keeps the full-rank ones.
    """
    total = 1 << c.dim
    if total > cap:
        raise CapExceeded(
            f"commutant has {total} elements, above the cap of {cap}", required=total
        )
    n = c.operator.dim
    current = [0] * n
    units = []
    for step in range(1, total):
        flip = (step & -step).bit_length() - 1
        for i, row in enumerate(c.basis[flip].rows):
            current[i] ^= row
        candidate = Gf2Matrix(tuple(current), n)
        if candidate.rank() == n:
            units.append(candidate)
    units.sort(key=flatten_matrix)
    return AutomorphismSet(tuple(units), complete=True)


def sample_automorphisms(
    c: CommutantBasis, samples: int, seed: int = 0
) -> AutomorphismSet:
    """Uniform random commutant elements filtered for invertibility.

    Always reported incomplete, even if the sample happens to cover the
    whole unit group.
    """
    rng = random.Random(seed)
    n = c.operator.dim
    seen = set()
    units = []
    for _ in range(samples):
        mask = rng.getrandbits(c.dim) if c.dim else 0
        rows = [0] * n
        m = mask
        while m:
            k = (m & -m).bit_length() - 1
            m &= m - 1
            for i, row in enumerate(c.basis[k].rows):
                rows[i] ^= row
        candidate = Gf2Matrix(tuple(rows), n)
        key = flatten_matrix(candidate)
        if key in seen:
            continue
        seen.add(key)
        if candidate.rank() == n:
            units.append(candidate)
    units.sort(key=flatten_matrix)
    return AutomorphismSet(tuple(units), complete=False)


def automorphism_from_images(
    f: NilpotentOperator, u: GeneratorTuple, images: list[Gf2Vector] | tuple[Gf2Vector, ...]
) -> Gf2Matrix:
    """The unique commuting automorphism sending each generator to its image.

    The images must form a generator tuple with matching exponents; the
    map is defined chain-wise, alpha(f^j u_i) = f^j images[i].
    """
    images = tuple(images)
    if len(images) != len(u.generators):
        raise NotAGeneratorTuple("image count does not match the generator count")
    for img, t in zip(images, u.exponents):
        if img.dim != f.dim:
            raise DimensionMismatch("image dimension does not match the operator")
        if exponent(f, img) != t:
            raise NotAGeneratorTuple(
                f"image exponent {exponent(f, img)} != generator exponent {t}"
            )
    target = chain_matrix(f, make_generator_tuple(f, images))
    source = chain_matrix(f, u)
    alpha = target @ source.inverse()
    assert alpha @ f.mat == f.mat @ alpha
    return alpha


def exchange_generator(
    f: NilpotentOperator, u: GeneratorTuple, x: Gf2Vector
) -> tuple[int, GeneratorTuple]:
    """Swap x into a homogeneous tuple, returning the replaced position.

    The chain coefficients of x form triangular Toeplitz blocks; block j
    is invertible exactly when the constant coefficient at generator j
    is one, and any such j admits the exchange.
    """
    if len(set(u.exponents)) != 1:
        raise NotHomogeneous("exchange needs a single exponent class")
    if x.dim != f.dim:
        raise DimensionMismatch("vector dimension does not match the operator")
    if x.is_zero():
        raise ValueError("cannot exchange the zero vector into a tuple")
    coords = chain_matrix(f, u).inverse().apply_bits(x.bits)
    a = u.exponents[0]
    j = None
    for i in range(len(u.generators)):
        if (coords >> (i * a)) & 1:
            j = i
            break
    if j is None:
        raise ValueError("vector has positive height, exchange impossible")
    replaced = list(u.generators)
    replaced[j] = x
    return j, make_generator_tuple(f, replaced)


def shift_automorphism(
    f: NilpotentOperator, u: GeneratorTuple, w_index: int, y_index: int
) -> Gf2Matrix:
    """Automorphism adding a strictly lower-exponent generator to a higher one.

    Sends y to w + y and fixes every other generator; applying it twice
    returns y, since w + (w + y) = y over GF(2).
    """
    if u.exponents[w_index] >= u.exponents[y_index]:
        raise ExponentOrderViolation(
            "the added generator must have strictly smaller exponent"
        )
    images = list(u.generators)
    images[y_index] = u.generators[w_index] + u.generators[y_index]
    return automorphism_from_images(f, u, images)


def _mixing_matrix(k: int) -> Gf2Matrix:
    """A k x k matrix B with both B and B + I invertible over GF(2).

    Preferred shape: mix each generator with its neighbours plus a 1 in
    the top-left corner.  That form degenerates when k = 1 mod 3, where
    the companion matrix of x^k + x + 1 steps in (its characteristic
    polynomial avoids the eigenvalues 0 and 1 for every k >= 2).
    """
    if k % 3 != 1:
        rows = []
        for i in range(k):
            bits = 0
            if i > 0:
                bits |= 1 << (i - 1)
            if i + 1 < k:
                bits |= 1 << (i + 1)
            if i == 0:
                bits |= 1
            rows.append(bits)
        return Gf2Matrix(tuple(rows), k)
    rows = [0] * k
    for i in range(1, k):
        rows[i] |= 1 << (i - 1)     # companion shift
    rows[0] |= 1 << (k - 1)         # constant coefficient of x^k + x + 1
    rows[1] |= 1 << (k - 1)         # linear coefficient
    return Gf2Matrix(tuple(rows), k)


def complementary_automorphism_pair(
    f: NilpotentOperator,
) -> tuple[Gf2Matrix, Gf2Matrix]:
    """Two commuting automorphisms of a homogeneous operator summing to I.

    Requires every Jordan block to have the same size a >= 2 and at
    least two blocks; both outputs act uniformly along chains, so they
    commute with f by construction.
    """
    ulm = ulm_sequence(f)
    nonzero = [(r, ulm.count(r)) for r in range(1, len(ulm.d) + 1) if ulm.count(r)]
    if len(nonzero) != 1:
        raise NotHomogeneous("all Jordan blocks must share one size")
    a, k = nonzero[0]
    if k == 1:
        raise SingleBlock("the identity cannot split over a single block")
    if a == 1:
        raise ChainLengthOne("blocks of size one are not supported")
    u = generator_tuple(f)
    mixing = _mixing_matrix(k)
    images = []
    for c in range(k):
        bits = 0
        for d in range(k):
            if mixing.entry(d, c):
                bits ^= u.generators[d].bits
        images.append(Gf2Vector(bits, f.dim))
    beta = automorphism_from_images(f, u, images)
    gamma = beta + Gf2Matrix.identity(f.dim)
    assert gamma.is_invertible()
    assert gamma @ f.mat == f.mat @ gamma
    return beta, gamma


@functools.lru_cache(maxsize=None)
def automorphism_generators(f: NilpotentOperator) -> tuple[Gf2Matrix, ...]:
    """A generating set of the commuting automorphism group.

    Every generator is elementary: it adds a single chain vector f^j u_i
    to one generator u_c (legal whenever the summand's exponent fits)
    and fixes the rest.  The within-class additions project onto the
    transvections of each general linear block, and the remaining maps
    span the radical, so the group they generate is the full unit group
    of the commutant.
    """
    u = generator_tuple(f)
    gens = []
    for c, (uc, tc) in enumerate(zip(u.generators, u.exponents)):
        for i, (ui, ti) in enumerate(zip(u.generators, u.exponents)):
            addend = ui.bits
            for j in range(ti):
                if ti - j <= tc and not (i == c and j == 0):
                    images = list(u.generators)
                    images[c] = uc + Gf2Vector(addend, f.dim)
                    gens.append(automorphism_from_images(f, u, images))
                addend = f.mat.apply_bits(addend)
    return tuple(gens)


def automorphism_group_order(f: NilpotentOperator) -> int:
    """|Aut_f| from the block structure, without enumeration.

    The commutant surjects onto a product of full matrix algebras, one
    per block size, with 2-group kernel: the order is the product of the
    general linear group orders times 2^(radical dimension).
    """
    ulm = ulm_sequence(f)
    divisors = elementary_divisors(ulm)
    commutant_dim = sum(min(a, b) for a in divisors for b in divisors)
    order = 1
    semisimple_dim = 0
    for r in range(1, len(ulm.d) + 1):
        d = ulm.count(r)
        if d == 0:
            continue
        semisimple_dim += d * d
        for i in range(d):
            order *= (1 << d) - (1 << i)
    return order << (commutant_dim - semisimple_dim)
