import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from motifsieve import gf
from oracles import FROZEN_PRODUCTS, MODULI, gf_mul_ref, rabin_irreducible

BITS = st.sampled_from([8, 16, 32, 64])


def elem(bits):
    return st.integers(0, (1 << bits) - 1)


@pytest.mark.parametrize("bits", [8, 16, 32, 64])
def test_moduli_match_reference_and_are_irreducible(bits):
    assert gf.REDUCTION_POLY[bits] == MODULI[bits]
    assert rabin_irreducible((1 << bits) | gf.REDUCTION_POLY[bits])


def test_rabin_rejects_reducible():
    assert not rabin_irreducible(0b101)  # (x+1)^2
    assert not rabin_irreducible((1 << 8) | 0x1A)  # divisible by x


@pytest.mark.parametrize("bits", [8, 16, 32, 64])
def test_frozen_products(bits):
    for a, b, c in FROZEN_PRODUCTS[bits]:
        assert gf.mul(a, b, bits) == c


@given(st.data())
def test_mul_matches_shift_xor(data):
    bits = data.draw(BITS)
    a, b = data.draw(elem(bits)), data.draw(elem(bits))
    assert gf.mul(a, b, bits) == gf_mul_ref(a, b, bits)


@given(st.data())
def test_field_axioms(data):
    bits = data.draw(BITS)
    a, b, c = (data.draw(elem(bits)) for _ in range(3))
    assert gf.mul(a, b, bits) == gf.mul(b, a, bits)
    assert gf.mul(gf.mul(a, b, bits), c, bits) == gf.mul(a, gf.mul(b, c, bits), bits)
    assert gf.mul(a, gf.add(b, c), bits) == gf.add(gf.mul(a, b, bits), gf.mul(a, c, bits))
    assert gf.mul(a, 1, bits) == a
    assert gf.mul(a, 0, bits) == 0


@given(st.data())
def test_inverse(data):
    bits = data.draw(BITS)
    a = data.draw(st.integers(1, (1 << bits) - 1))
    assert gf.mul(a, gf.inverse(a, bits), bits) == 1


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        gf.inverse(0)


def test_bad_width():
    with pytest.raises(ValueError):
        gf.mul(1, 1, 12)


@given(st.data())
def test_mul_array_matches_scalar(data):
    bits = data.draw(BITS)
    xs = data.draw(st.lists(elem(bits), min_size=1, max_size=20))
    ys = data.draw(st.lists(elem(bits), min_size=len(xs), max_size=len(xs)))
    out = gf.mul_array(np.array(xs, dtype=np.uint64), np.array(ys, dtype=np.uint64), bits)
    assert out.tolist() == [gf_mul_ref(a, b, bits) for a, b in zip(xs, ys)]


def test_soft_clmul_matches_hardware():
    rng = np.random.default_rng(3)
    for a, b in rng.integers(0, 2**63, size=(200, 2), dtype=np.uint64):
        lo, hi = gf.clmul_soft(a, b)
        full = 0
        x, y = int(a), int(b)
        while y:
            if y & 1:
                full ^= x
            y >>= 1
            x <<= 1
        assert (int(hi) << 64 | int(lo)) == full
        hlo, hhi = gf.clmul(a, b)
        assert (int(hlo), int(hhi)) == (int(lo), int(hi))


@given(st.integers(0, 2**63), st.integers(1, 7), st.integers(0, 1000), st.integers(0, 1000), BITS)
def test_draws_nonzero_in_range_and_reproducible(seed, role, i, j, bits):
    s = gf.SeededStream(seed, bits, role)
    v = s.draw(i, j)
    assert 1 <= v < (1 << bits)
    assert v == gf.SeededStream(seed, bits, role).draw(i, j)
    assert s.draws(np.array([i]), np.array([j])).tolist() == [v]


def test_roles_and_seeds_decorrelate():
    a = gf.SeededStream(1).draws(np.arange(1000))
    b = gf.SeededStream(1, role=gf.ROLE_W).draws(np.arange(1000))
    c = gf.SeededStream(2).draws(np.arange(1000))
    assert (a != b).mean() > 0.99 and (a != c).mean() > 0.99


def test_small_field_draws_roughly_uniform():
    v = gf.SeededStream(5, bits=8).draws(np.arange(255 * 200))
    counts = np.bincount(v.astype(np.int64), minlength=256)[1:]
    assert counts.min() > 120 and counts.max() < 290


@given(st.integers(0, 2**64 - 1))
def test_add_is_xor_and_self_inverse(a):
    assert gf.add(a, a) == 0
    assert gf.add(a, 0) == a


def test_small_examples():
    assert gf.add(0x0F, 0x05) == 0x0A
    assert gf.mul(0x02, 0x02) == 0x04


def test_low_byte_chi_square():
    v = gf.SeededStream(11).draws(np.arange(10**6)) & np.uint64(0xFF)
    counts = np.bincount(v.astype(np.int64), minlength=256)
    expected = 10**6 / 256
    chi2 = float(((counts - expected) ** 2 / expected).sum())
    assert chi2 < 310.5  # 255 degrees of freedom, alpha = 0.01


def test_byte_field_coupon_collector():
    v = gf.SeededStream(0, bits=8).draws(np.arange(10**5))
    assert set(v.tolist()) == set(range(1, 256))
