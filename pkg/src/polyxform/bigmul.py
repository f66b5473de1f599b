"""Big-integer multiplication with pluggable backends.

Schoolbook is the trusted oracle.  Karatsuba and the NTT-convolution
backend must agree with it exactly; the transform-pipeline backend is an
experiment whose agreement (or not) is recorded in a MulReport rather
than asserted.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .errors import OverflowRisk, UsageError
from .extension import ext_mul
from . import ptransform

# NTT modulus: 15 * 2^27 + 1, primitive root 31.  Products of two values
# below the modulus stay under 2^62, so uint64 vector math never wraps.
NTT_PRIME = 2013265921
NTT_ROOT = 31

DEFAULT_LIMB_BITS = 64

# Limb-operation counters, keyed by backend tag.  Reset with reset_op_counts.
op_counts = {"schoolbook": 0, "karatsuba": 0, "oracle-ntt": 0}


def reset_op_counts() -> None:
    for k in op_counts:
        op_counts[k] = 0


@dataclass(frozen=True)
class BigNat:
    """Arbitrary-precision natural: little-endian limbs in a power-of-two base.

    Canonical form: no trailing zero limb; zero is the empty limb tuple.
    """

    limbs: Tuple[int, ...]
    limb_bits: int = DEFAULT_LIMB_BITS

    def __post_init__(self):
        base = 1 << self.limb_bits
        if any(l < 0 or l >= base for l in self.limbs):
            raise UsageError("limb out of range for base")
        if self.limbs and self.limbs[-1] == 0:
            raise UsageError("trailing zero limb; not canonical")

    @classmethod
    def from_int(cls, value: int, limb_bits: int = DEFAULT_LIMB_BITS) -> "BigNat":
        if value < 0:
            raise UsageError("BigNat is unsigned")
        limbs = []
        mask = (1 << limb_bits) - 1
        while value:
            limbs.append(value & mask)
            value >>= limb_bits
        return cls(tuple(limbs), limb_bits)

    @classmethod
    def from_hex(cls, text: str, limb_bits: int = DEFAULT_LIMB_BITS) -> "BigNat":
        return cls.from_int(int(text, 16), limb_bits)

    def to_int(self) -> int:
        value = 0
        for l in reversed(self.limbs):
            value = (value << self.limb_bits) | l
        return value

    def to_hex(self) -> str:
        return hex(self.to_int())

    @property
    def bit_length(self) -> int:
        return self.to_int().bit_length()


def _canonical(limbs: List[int], limb_bits: int) -> BigNat:
    while limbs and limbs[-1] == 0:
        limbs.pop()
    return BigNat(tuple(limbs), limb_bits)


def _school_limbs(a: Sequence[int], b: Sequence[int], bits: int) -> List[int]:
    mask = (1 << bits) - 1
    out = [0] * (len(a) + len(b))
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        carry = 0
        for j, bj in enumerate(b):
            cur = out[i + j] + ai * bj + carry
            out[i + j] = cur & mask
            carry = cur >> bits
        k = i + len(b)
        while carry:
            cur = out[k] + carry
            out[k] = cur & mask
            carry = cur >> bits
            k += 1
    op_counts["schoolbook"] += len(a) * len(b)
    return out


def schoolbook_mul(a: BigNat, b: BigNat) -> BigNat:
    """Exact product by long multiplication; the trusted oracle."""
    if a.limb_bits != b.limb_bits:
        raise UsageError("limb bases differ")
    return _canonical(_school_limbs(a.limbs, b.limbs, a.limb_bits), a.limb_bits)


def _limb_add(a: Sequence[int], b: Sequence[int], bits: int) -> List[int]:
    mask = (1 << bits) - 1
    out = []
    carry = 0
    for i in range(max(len(a), len(b))):
        cur = (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) + carry
        out.append(cur & mask)
        carry = cur >> bits
    if carry:
        out.append(carry)
    return out


def _limb_sub(a: Sequence[int], b: Sequence[int], bits: int) -> List[int]:
    # requires a >= b
    mask = (1 << bits) - 1
    out = []
    borrow = 0
    for i in range(len(a)):
        cur = a[i] - (b[i] if i < len(b) else 0) - borrow
        borrow = 1 if cur < 0 else 0
        out.append(cur & mask)
    assert borrow == 0, "subtraction underflow"
    return out


def _kara_limbs(
    a: Sequence[int], b: Sequence[int], bits: int, threshold: int
) -> List[int]:
    if min(len(a), len(b)) <= threshold:
        n = _school_limbs(a, b, bits)
        op_counts["karatsuba"] += len(a) * len(b)
        op_counts["schoolbook"] -= len(a) * len(b)  # charged to karatsuba
        return n
    m = max(len(a), len(b)) // 2
    a0, a1 = list(a[:m]), list(a[m:])
    b0, b1 = list(b[:m]), list(b[m:])
    z0 = _kara_limbs(a0, b0, bits, threshold) if a0 and b0 else [0]
    z2 = _kara_limbs(a1, b1, bits, threshold) if a1 and b1 else [0]
    sa = _limb_add(a0, a1, bits)
    sb = _limb_add(b0, b1, bits)
    z1 = _kara_limbs(sa, sb, bits, threshold)
    z1 = _limb_sub(z1, z0, bits)
    z1 = _limb_sub(z1, z2, bits)
    out = [0] * (max(len(z0), m + len(z1), 2 * m + len(z2)) + 2)
    for offset, part in ((0, z0), (m, z1), (2 * m, z2)):
        carry = 0
        for i, v in enumerate(part):
            cur = out[offset + i] + v + carry
            out[offset + i] = cur & ((1 << bits) - 1)
            carry = cur >> bits
        k = offset + len(part)
        while carry:
            cur = out[k] + carry
            out[k] = cur & ((1 << bits) - 1)
            carry = cur >> bits
            k += 1
    return out


def karatsuba_mul(a: BigNat, b: BigNat, threshold: int = 16) -> BigNat:
    """Exact product by three-way split recursion, schoolbook at the base."""
    if threshold < 2:
        raise UsageError("threshold must be >= 2 limbs")
    if a.limb_bits != b.limb_bits:
        raise UsageError("limb bases differ")
    if not a.limbs or not b.limbs:
        return BigNat((), a.limb_bits)
    return _canonical(
        _kara_limbs(a.limbs, b.limbs, a.limb_bits, threshold), a.limb_bits
    )


def pack(
    a: BigNat, limb_bits: int, length: int, modulus: Optional[int] = None
) -> List[int]:
    """Repack a number into `length` coefficients of limb_bits bits each.

    When a convolution modulus is given, refuse packings whose worst-case
    convolution coefficient could reach it.
    """
    value = a.to_int()
    if value.bit_length() > limb_bits * length:
        raise UsageError("number does not fit in length * limb_bits bits")
    if modulus is not None:
        worst = length * ((1 << limb_bits) - 1) ** 2
        if worst >= modulus:
            raise OverflowRisk(
                f"worst convolution coefficient {worst} >= modulus {modulus}"
            )
    mask = (1 << limb_bits) - 1
    coeffs = []
    for _ in range(length):
        coeffs.append(value & mask)
        value >>= limb_bits
    return coeffs


def carry_propagate(coeffs: Sequence[int], limb_bits: int) -> BigNat:
    """Reassemble sum(coeffs[k] * 2^(k*limb_bits)), exactly."""
    value = 0
    for c in reversed(coeffs):
        if c < 0:
            raise UsageError("convolution coefficients must be naturals")
        value = (value << limb_bits) + c
    return BigNat.from_int(value, limb_bits)


# --- NTT convolution backend -------------------------------------------

def _bit_reverse_permute(a: np.ndarray) -> np.ndarray:
    n = len(a)
    bits = n.bit_length() - 1
    idx = np.arange(n)
    rev = np.zeros(n, dtype=np.int64)
    for b in range(bits):
        rev |= ((idx >> b) & 1) << (bits - 1 - b)
    return a[rev]


def ntt(values: Sequence[int], invert: bool = False) -> List[int]:
    """Iterative radix-2 transform mod NTT_PRIME (length a power of two)."""
    n = len(values)
    if n & (n - 1):
        raise UsageError("NTT length must be a power of two")
    if (NTT_PRIME - 1) % n:
        raise UsageError(f"length {n} has no root of unity mod {NTT_PRIME}")
    a = _bit_reverse_permute(np.asarray(values, dtype=np.uint64) % NTT_PRIME)
    logn = n.bit_length() - 1
    root = pow(NTT_ROOT, (NTT_PRIME - 1) // n, NTT_PRIME)
    if invert:
        root = pow(root, NTT_PRIME - 2, NTT_PRIME)
    for s in range(1, logn + 1):
        m = 1 << s
        half = m >> 1
        wm = pow(root, n >> s, NTT_PRIME)
        w = np.empty(half, dtype=np.uint64)
        w[0] = 1
        for i in range(1, half):
            w[i] = int(w[i - 1]) * wm % NTT_PRIME
        blocks = a.reshape(-1, m)
        u = blocks[:, :half].copy()
        t = blocks[:, half:] * w % NTT_PRIME
        blocks[:, :half] = (u + t) % NTT_PRIME
        blocks[:, half:] = (u + NTT_PRIME - t) % NTT_PRIME
        op_counts["oracle-ntt"] += n // 2
    if invert:
        n_inv = pow(n, NTT_PRIME - 2, NTT_PRIME)
        a = a * np.uint64(n_inv) % NTT_PRIME
    return [int(v) for v in a]


def ntt_convolve(x: Sequence[int], y: Sequence[int]) -> List[int]:
    """Exact cyclic convolution mod NTT_PRIME of two equal-length vectors."""
    if len(x) != len(y):
        raise UsageError("vectors must have equal length")
    X = np.asarray(ntt(x), dtype=np.uint64)
    Y = np.asarray(ntt(y), dtype=np.uint64)
    return ntt([int(v) for v in X * Y % NTT_PRIME], invert=True)


# --- backend dispatch ---------------------------------------------------

SCHOOLBOOK = "schoolbook"
KARATSUBA = "karatsuba"
ORACLE_NTT = "oracle-ntt"
POLY_TRANSFORM = "polynomial-transform"


@dataclass(frozen=True)
class MulBackend:
    tag: str
    karatsuba_threshold: int = 16
    ntt_limb_bits: int = 8
    plan: Optional["ptransform.PTPlan"] = None


@dataclass(frozen=True)
class MulReport:
    """Outcome of one multiplication, with the oracle cross-check."""

    backend: str
    product: BigNat
    oracle: BigNat
    extra: dict = field(default_factory=dict)

    @property
    def verdict(self) -> str:
        return "match" if self.product.to_int() == self.oracle.to_int() else "mismatch"


def _ntt_mul(a: BigNat, b: BigNat, limb_bits: int) -> BigNat:
    total_bits = max(a.bit_length + b.bit_length, 1)
    length = 1
    while length * limb_bits < total_bits:
        length <<= 1
    xa = pack(a, limb_bits, length, modulus=NTT_PRIME)
    xb = pack(b, limb_bits, length, modulus=NTT_PRIME)
    conv = ntt_convolve(xa, xb)
    return BigNat.from_int(carry_propagate(conv, limb_bits).to_int(), a.limb_bits)


def _pt_mul(a: BigNat, b: BigNat, plan: "ptransform.PTPlan") -> Tuple[BigNat, dict]:
    p = plan.p.q
    limb_bits = max(1, min(plan.coeff_bound.bit_length() - 1, p.bit_length() - 1))
    # zero-pad to the plan's full transform length
    xa = pack(a, limb_bits, plan.n)
    xb = pack(b, limb_bits, plan.n)
    used = max(a.bit_length + b.bit_length, 1)
    fa = ptransform.transform(xa, plan)
    fb = ptransform.transform(xb, plan)
    ctx = plan.context
    pointwise = [
        ext_mul(ctx.element(*u), ctx.element(*v)).coeffs
        for u, v in zip(fa, fb)
    ]
    inv = ptransform.inverse_plan(plan)
    back = ptransform.transform_elements(pointwise, inv)
    # n = p^3 - 1 is -1 mod p, so the 1/n scaling is negation mod p
    n_inv = pow(plan.n % p, p - 2, p)
    coeffs = [(c[0] * n_inv) % p for c in back]
    stray = sum(1 for c in back if c[1] % p or c[2] % p)
    product = carry_propagate(coeffs, limb_bits)
    extra = {
        "limb_bits": limb_bits,
        "utilization": used / (plan.n * limb_bits),
        "outputs_with_nonreal_components": stray,
    }
    return BigNat.from_int(product.to_int(), a.limb_bits), extra


def transform_mul(a: BigNat, b: BigNat, backend: MulBackend) -> MulReport:
    """Multiply through the requested backend, cross-checked vs schoolbook."""
    oracle = schoolbook_mul(a, b)
    extra = {}
    if backend.tag == SCHOOLBOOK:
        product = oracle
    elif backend.tag == KARATSUBA:
        product = karatsuba_mul(a, b, backend.karatsuba_threshold)
    elif backend.tag == ORACLE_NTT:
        product = _ntt_mul(a, b, backend.ntt_limb_bits)
    elif backend.tag == POLY_TRANSFORM:
        if backend.plan is None:
            raise UsageError("polynomial-transform backend needs a plan")
        product, extra = _pt_mul(a, b, backend.plan)
    else:
        raise UsageError(f"unknown backend {backend.tag!r}")
    return MulReport(backend.tag, product, oracle, extra)
