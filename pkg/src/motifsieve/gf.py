"""Arithmetic in GF(2^b) for b in {8, 16, 32, 64}.

Elements are plain unsigned words whose bits are the coefficients of a
polynomial over GF(2) of degree < b.  Addition is XOR; multiplication is a
carry-less product reduced modulo a fixed low-weight irreducible polynomial.

The scalar kernels (``clmul``, ``gf_mul``, ``draw_nonzero``) are numba
functions so the sieve kernels can inline them.  On x86-64 hosts with the
PCLMULQDQ extension the carry-less product is a single instruction; elsewhere
a branch-free shift-and-XOR loop is used.  Set ``MOTIFSIEVE_SOFT_CLMUL=1`` to
force the portable path.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numba as nb
import numpy as np
from llvmlite import ir
from numba import types
from numba.extending import intrinsic

FieldElement = int

FIELD_BITS = (8, 16, 32, 64)

# low part of each modulus (the x^b term is implicit)
REDUCTION_POLY = {
    64: 0x1B,  # x^64 + x^4 + x^3 + x + 1
    32: 0x8D,  # x^32 + x^7 + x^3 + x^2 + 1
    16: 0x2B,  # x^16 + x^5 + x^3 + x + 1
    8: 0x1B,  # x^8 + x^4 + x^3 + x + 1
}

# counter-based stream roles
ROLE_V = 1
ROLE_W = 2
ROLE_Y = 3
ROLE_Y_AUX = 4
ROLE_GENERIC = 7


def _host_has_clmul() -> bool:
    if os.environ.get("MOTIFSIEVE_SOFT_CLMUL", "") not in ("", "0"):
        return False
    try:
        from llvmlite import binding as llvm

        features = llvm.get_host_cpu_features()
        return bool(features.get("pclmul", False))
    except Exception:
        return False


HARDWARE_CLMUL = _host_has_clmul()


@intrinsic
def _pclmul(typingctx, a, b):
    sig = types.UniTuple(types.uint64, 2)(types.uint64, types.uint64)

    def codegen(context, builder, signature, args):
        i32 = ir.IntType(32)
        i64 = ir.IntType(64)
        v2 = ir.VectorType(i64, 2)
        i8 = ir.IntType(8)
        fnty = ir.FunctionType(v2, [v2, v2, i8])
        fn = builder.module.declare_intrinsic("llvm.x86.pclmulqdq", fnty=fnty)
        undef = ir.Constant(v2, ir.Undefined)
        va = builder.insert_element(undef, args[0], ir.Constant(i32, 0))
        vb = builder.insert_element(undef, args[1], ir.Constant(i32, 0))
        r = builder.call(fn, [va, vb, ir.Constant(i8, 0)])
        lo = builder.extract_element(r, ir.Constant(i32, 0))
        hi = builder.extract_element(r, ir.Constant(i32, 1))
        return context.make_tuple(builder, signature.return_type, [lo, hi])

    return sig, codegen


@nb.njit(cache=True)
def _clmul_hw(a, b):
    return _pclmul(a, b)


@nb.njit(cache=True)
def clmul_soft(a, b):
    """Portable 64x64 -> 128 carry-less product, returned as (lo, hi)."""
    a = np.uint64(a)
    b = np.uint64(b)
    one = np.uint64(1)
    lo = np.uint64(0)
    hi = np.uint64(0)
    ahalf = a >> one
    for i in range(64):
        mask = np.uint64(0) - ((b >> np.uint64(i)) & one)
        lo ^= (a << np.uint64(i)) & mask
        hi ^= (ahalf >> np.uint64(63 - i)) & mask
    return lo, hi


clmul = _clmul_hw if HARDWARE_CLMUL else clmul_soft


@nb.njit(cache=True, inline="always")
def reduce64(lo, hi):
    t = hi ^ (hi >> np.uint64(63)) ^ (hi >> np.uint64(61)) ^ (hi >> np.uint64(60))
    return lo ^ t ^ (t << np.uint64(1)) ^ (t << np.uint64(3)) ^ (t << np.uint64(4))


@nb.njit(cache=True, inline="always")
def reduce_small(p, bits, rpoly):
    # p < 2^(2*bits - 1) <= 2^63, so the product always fits in one word
    bb = np.uint64(bits)
    mask = (np.uint64(1) << bb) - np.uint64(1)
    while p >> bb:
        h = p >> bb
        lo, _ = clmul(h, rpoly)
        p = (p & mask) ^ lo
    return p


@nb.njit(cache=True)
def gf_mul(a, b, bits, rpoly):
    """Product of two field words for field width ``bits``."""
    lo, hi = clmul(np.uint64(a), np.uint64(b))
    if bits == 64:
        return reduce64(lo, hi)
    return reduce_small(lo, bits, np.uint64(rpoly))


@nb.njit(cache=True, inline="always")
def mix64(z):
    z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return z ^ (z >> np.uint64(31))


@nb.njit(cache=True, inline="always")
def hash_index(seed, role, i, j):
    h = mix64(np.uint64(seed) + np.uint64(0x9E3779B97F4A7C15))
    h = mix64(h ^ np.uint64(role))
    h = mix64(h ^ np.uint64(i))
    return mix64(h ^ np.uint64(j))


@nb.njit(cache=True, inline="always")
def draw_nonzero(seed, role, i, j, bits):
    """Nonzero field word addressed by (seed, role, i, j)."""
    h = hash_index(seed, role, i, j)
    if bits == 64:
        if h == np.uint64(0):
            return np.uint64(1)
        return h
    m = (np.uint64(1) << np.uint64(bits)) - np.uint64(1)
    return h % m + np.uint64(1)


@nb.njit(cache=True)
def _mul_arrays(a, b, bits, rpoly):
    out = np.empty(a.shape[0], dtype=np.uint64)
    for i in range(a.shape[0]):
        out[i] = gf_mul(a[i], b[i], bits, rpoly)
    return out


@nb.njit(cache=True)
def _draw_block(seed, role, i, j, bits):
    out = np.empty(i.shape[0], dtype=np.uint64)
    for p in range(i.shape[0]):
        out[p] = draw_nonzero(seed, role, i[p], j[p], bits)
    return out


def _check_bits(bits: int) -> None:
    if bits not in FIELD_BITS:
        raise ValueError(f"field width must be one of {FIELD_BITS}, got {bits}")


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a ^ b


def mul(a: FieldElement, b: FieldElement, bits: int = 64) -> FieldElement:
    _check_bits(bits)
    return int(gf_mul(np.uint64(a), np.uint64(b), bits, REDUCTION_POLY[bits]))


def mul_array(a, b, bits: int = 64) -> np.ndarray:
    """Elementwise field product of two uint64 arrays."""
    _check_bits(bits)
    a = np.ascontiguousarray(a, dtype=np.uint64)
    b = np.ascontiguousarray(b, dtype=np.uint64)
    if a.shape != b.shape:
        raise ValueError("operand shapes differ")
    return _mul_arrays(a.ravel(), b.ravel(), bits, REDUCTION_POLY[bits]).reshape(a.shape)


def power(a: FieldElement, e: int, bits: int = 64) -> FieldElement:
    result = 1
    while e:
        if e & 1:
            result = mul(result, a, bits)
        a = mul(a, a, bits)
        e >>= 1
    return result


def inverse(a: FieldElement, bits: int = 64) -> FieldElement:
    if a == 0:
        raise ZeroDivisionError("zero has no inverse in GF(2^b)")
    # a^(2^b - 2) = a^-1 by Fermat
    return power(a, (1 << bits) - 2, bits)


@dataclass(frozen=True)
class SeededStream:
    """Position-addressed pseudorandom source of nonzero field elements.

    A draw is a pure function of ``(seed, role, i, j)``; there is no hidden
    cursor, so values can be regenerated anywhere without storing them.
    """

    seed: int
    bits: int = 64
    role: int = ROLE_GENERIC

    def __post_init__(self):
        _check_bits(self.bits)

    def draw(self, i: int, j: int = 0) -> FieldElement:
        return int(draw_nonzero(np.uint64(self.seed), self.role, np.uint64(i), np.uint64(j), self.bits))

    def draws(self, i, j=None) -> np.ndarray:
        i = np.ascontiguousarray(i, dtype=np.uint64)
        j = np.zeros_like(i) if j is None else np.ascontiguousarray(j, dtype=np.uint64)
        return _draw_block(np.uint64(self.seed), self.role, i, j, self.bits)

    def with_role(self, role: int) -> "SeededStream":
        return SeededStream(self.seed, self.bits, role)


def random_nonzero(stream: SeededStream, position: int = 0) -> FieldElement:
    return stream.draw(position)
