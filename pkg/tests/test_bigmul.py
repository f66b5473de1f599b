import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polyxform.bigmul import (
    KARATSUBA,
    NTT_PRIME,
    NTT_ROOT,
    ORACLE_NTT,
    POLY_TRANSFORM,
    SCHOOLBOOK,
    BigNat,
    MulBackend,
    carry_propagate,
    karatsuba_mul,
    ntt,
    ntt_convolve,
    op_counts,
    pack,
    reset_op_counts,
    schoolbook_mul,
    transform_mul,
)
from polyxform.errors import OverflowRisk, UsageError


def test_ntt_modulus_constants():
    assert NTT_PRIME == 15 * 2**27 + 1
    assert pow(NTT_ROOT, NTT_PRIME - 1, NTT_PRIME) == 1
    # 31 generates the full group: no proper-divisor power is 1
    for r in (2, 3, 5):
        assert pow(NTT_ROOT, (NTT_PRIME - 1) // r, NTT_PRIME) != 1


def test_bignat_canonical_form():
    assert BigNat.from_int(0).limbs == ()
    assert BigNat.from_int(1).limbs == (1,)
    with pytest.raises(UsageError):
        BigNat((1, 0), 64)  # trailing zero limb
    with pytest.raises(UsageError):
        BigNat((1 << 64,), 64)  # limb out of range
    with pytest.raises(UsageError):
        BigNat.from_int(-3)


def test_bignat_hex_roundtrip():
    n = BigNat.from_hex("0x3039")
    assert n.to_int() == 12345
    assert n.to_hex() == "0x3039"
    assert BigNat.from_hex("ff", limb_bits=4).limbs == (15, 15)


@given(st.integers(min_value=0, max_value=2**512), st.sampled_from([8, 16, 32, 64]))
@settings(max_examples=200, deadline=None)
def test_bignat_int_roundtrip(value, bits):
    assert BigNat.from_int(value, bits).to_int() == value


def test_schoolbook_golden():
    a = BigNat.from_hex("0x3039")
    b = BigNat.from_hex("0x1a85")
    assert schoolbook_mul(a, b).to_int() == 12345 * 6789 == 83810205
    zero = BigNat.from_int(0)
    assert schoolbook_mul(a, zero).to_int() == 0
    one = BigNat.from_int(1)
    assert schoolbook_mul(a, one).to_int() == a.to_int()


@given(
    st.integers(min_value=0, max_value=2**2000),
    st.integers(min_value=0, max_value=2**2000),
)
@settings(max_examples=100, deadline=None)
def test_schoolbook_matches_python(a, b):
    got = schoolbook_mul(BigNat.from_int(a), BigNat.from_int(b))
    assert got.to_int() == a * b


@given(
    st.integers(min_value=0, max_value=2**4000),
    st.integers(min_value=0, max_value=2**4000),
    st.sampled_from([8, 16, 64]),
)
@settings(max_examples=100, deadline=None)
def test_karatsuba_matches_python(a, b, bits):
    got = karatsuba_mul(
        BigNat.from_int(a, bits), BigNat.from_int(b, bits), threshold=4
    )
    assert got.to_int() == a * b


def test_karatsuba_unbalanced_operands():
    a = (1 << 3000) - 1
    b = 7
    got = karatsuba_mul(BigNat.from_int(a), BigNat.from_int(b), threshold=2)
    assert got.to_int() == a * b


def test_karatsuba_rejects_tiny_threshold():
    with pytest.raises(UsageError):
        karatsuba_mul(BigNat.from_int(5), BigNat.from_int(7), threshold=1)


def test_mixed_limb_bases_rejected():
    with pytest.raises(UsageError):
        schoolbook_mul(BigNat.from_int(5, 8), BigNat.from_int(7, 16))


def test_pack_golden():
    n = BigNat.from_int(0xABCD)
    assert pack(n, 8, 4) == [0xCD, 0xAB, 0, 0]
    assert pack(n, 4, 4) == [0xD, 0xC, 0xB, 0xA]
    with pytest.raises(UsageError):
        pack(n, 4, 3)  # does not fit


def test_pack_overflow_risk():
    n = BigNat.from_int(1)
    # 64 coefficients of 16 bits: worst coefficient 64 * (2^16-1)^2 > NTT_PRIME
    with pytest.raises(OverflowRisk):
        pack(n, 16, 64, modulus=NTT_PRIME)
    # 8-bit coefficients are safe at this length
    assert pack(n, 8, 64, modulus=NTT_PRIME)[0] == 1


@given(st.integers(min_value=0, max_value=2**256), st.sampled_from([4, 8, 12]))
@settings(max_examples=100, deadline=None)
def test_pack_carry_roundtrip(value, bits):
    n = BigNat.from_int(value)
    length = max(1, -(-value.bit_length() // bits))
    assert carry_propagate(pack(n, bits, length), bits).to_int() == value


def test_carry_propagate_rejects_negative():
    with pytest.raises(UsageError):
        carry_propagate([1, -2], 8)


def test_ntt_golden_forward():
    # length 4, root of order 4 mod NTT_PRIME; X0 is the plain sum
    x = [1, 2, 3, 4]
    X = ntt(x)
    assert X[0] == 10
    assert ntt(X, invert=True) == x


def test_ntt_validates_length():
    with pytest.raises(UsageError):
        ntt([1, 2, 3])


@given(st.lists(st.integers(min_value=0, max_value=NTT_PRIME - 1), min_size=2, max_size=64))
@settings(max_examples=100, deadline=None)
def test_ntt_roundtrip(values):
    n = 1
    while n < len(values):
        n <<= 1
    values = values + [0] * (n - len(values))
    assert ntt(ntt(values), invert=True) == values


def test_ntt_convolve_matches_direct():
    rng = random.Random(67)
    for n in (4, 8, 32):
        x = [rng.randrange(1000) for _ in range(n)]
        y = [rng.randrange(1000) for _ in range(n)]
        direct = [
            sum(x[k] * y[(j - k) % n] for k in range(n)) % NTT_PRIME
            for j in range(n)
        ]
        assert ntt_convolve(x, y) == direct
    with pytest.raises(UsageError):
        ntt_convolve([1, 2], [1, 2, 3, 4])


def test_transform_mul_backends_agree():
    rng = random.Random(71)
    for _ in range(100):
        a = BigNat.from_int(rng.getrandbits(rng.randrange(1, 2000)))
        b = BigNat.from_int(rng.getrandbits(rng.randrange(1, 2000)))
        for tag in (SCHOOLBOOK, KARATSUBA, ORACLE_NTT):
            report = transform_mul(a, b, MulBackend(tag))
            assert report.verdict == "match"
            assert report.product.to_int() == a.to_int() * b.to_int()


def test_transform_mul_adversarial_all_ones():
    for bits in (64, 1000, 5000):
        a = BigNat.from_int((1 << bits) - 1)
        for tag in (KARATSUBA, ORACLE_NTT):
            assert transform_mul(a, a, MulBackend(tag)).verdict == "match"


def test_transform_mul_unknown_backend():
    a = BigNat.from_int(3)
    with pytest.raises(UsageError):
        transform_mul(a, a, MulBackend("fft"))
    with pytest.raises(UsageError):
        transform_mul(a, a, MulBackend(POLY_TRANSFORM))  # no plan


def test_pt_backend_records_verdict(plan13):
    a = BigNat.from_int(12345)
    b = BigNat.from_int(6789)
    report = transform_mul(a, b, MulBackend(POLY_TRANSFORM, plan=plan13))
    # agreement is an experimental outcome, not a contract: both verdicts
    # are legal, but the report must carry the diagnostics either way
    assert report.verdict in ("match", "mismatch")
    assert report.oracle.to_int() == 83810205
    assert set(report.extra) >= {
        "limb_bits",
        "utilization",
        "outputs_with_nonreal_components",
    }
    assert 0 < report.extra["utilization"] <= 1


def test_op_counts_monotone_and_resettable():
    reset_op_counts()
    a = BigNat.from_int((1 << 1024) - 1)
    schoolbook_mul(a, a)
    school_small = op_counts["schoolbook"]
    assert school_small == 16 * 16  # 1024 bits = 16 limbs
    schoolbook_mul(
        BigNat.from_int((1 << 4096) - 1), BigNat.from_int((1 << 4096) - 1)
    )
    assert op_counts["schoolbook"] - school_small == 64 * 64
    reset_op_counts()
    karatsuba_mul(a, a, threshold=4)
    assert op_counts["karatsuba"] > 0
    assert op_counts["schoolbook"] == 0  # base cases charged to karatsuba
    reset_op_counts()
    assert all(v == 0 for v in op_counts.values())


def test_karatsuba_beats_schoolbook_on_op_count():
    n = BigNat.from_int((1 << 8192) - 5)
    reset_op_counts()
    schoolbook_mul(n, n)
    school = op_counts["schoolbook"]
    reset_op_counts()
    karatsuba_mul(n, n, threshold=8)
    kara = op_counts["karatsuba"]
    assert kara < school
