"""The CRT/root-adjunction transform pipeline, end to end.

Preprocessing selects the base prime p, a non-cube y, a full-order root
of unity in the cubic extension, and a set of helper primes q where y
does have three cube roots.  The transform folds coefficients per prime
and per root, runs small naive DFTs, recovers components by linear
algebra, and recombines outputs across primes by CRT.

Whether the end result agrees with the honest extension-field DFT is
deliberately NOT assumed anywhere: `spot_check` runs the comparison and
reports a verdict.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

import numpy as np

from .errors import PlanNotCertified, PrimeSupplyExhausted, Singular, UsageError
from .extension import ExtensionContext, ExtensionElement, ext_pow
from .modcore import CrtBasis, PrimeModulus, Residue, crt_reconstruct
from .primes import ascending_primes, descending_primes, doubling_estimate, next_prime_at_or_above
from .residues import (
    RecoveryMatrix,
    build_recovery,
    find_noncube,
    is_cube,
    recover_components,
)
from .transform import (
    find_extension_root_of_order,
    multiplicative_order,
    naive_dft,
)

PLAN_FORMAT_VERSION = 1

STRICT = "strict-9p6"
INPUT_AWARE = "input-aware"


@dataclass(frozen=True)
class SlotRoot:
    """One cube root of y mod q, with omega reduced at it and its period."""

    root: Residue
    reduced_omega: Residue
    period: int  # multiplicative order of reduced_omega mod q


@dataclass(frozen=True)
class PTPrimeSlot:
    q: PrimeModulus
    roots: Tuple[SlotRoot, SlotRoot, SlotRoot]  # ascending by root value
    recovery: RecoveryMatrix

    @property
    def periods(self) -> Tuple[int, int, int]:
        return tuple(r.period for r in self.roots)

    @property
    def index_period(self) -> int:
        """Output indices are equivalent for this slot mod this value."""
        return math.lcm(*self.periods)


@dataclass(frozen=True)
class PTPlan:
    p: PrimeModulus
    y: Residue
    n: int  # transform length = p^3 - 1
    omega: ExtensionElement
    slots: Tuple[PTPrimeSlot, ...]
    bound_mode: str
    coeff_bound: int  # max input coefficient value the plan is sized for
    certified_bound: int  # worst-case intermediate per certify_value_bound
    target_bound: int  # what prod(q) was required to exceed

    @property
    def context(self) -> ExtensionContext:
        return self.omega.context

    @property
    def prime_product(self) -> int:
        return math.prod(s.q.q for s in self.slots)

    @property
    def crt_basis(self) -> CrtBasis:
        return CrtBasis.of([s.q.q for s in self.slots])


@dataclass(frozen=True)
class IndexCheck:
    index: int
    pipeline: Tuple[int, int, int]
    oracle: Tuple[int, int, int]

    @property
    def match(self) -> bool:
        return self.pipeline == self.oracle


@dataclass(frozen=True)
class TransformReport:
    plan_p: int
    seed: int
    checks: Tuple[IndexCheck, ...]

    @property
    def matches(self) -> int:
        return sum(1 for c in self.checks if c.match)

    @property
    def mismatches(self) -> int:
        return len(self.checks) - self.matches

    @property
    def verdict(self) -> str:
        return "confirmed" if self.mismatches == 0 else "refuted"

    def to_dict(self) -> dict:
        return {
            "plan_p": self.plan_p,
            "seed": self.seed,
            "sampled_indices": [c.index for c in self.checks],
            "checks": [
                {
                    "index": c.index,
                    "pipeline": list(c.pipeline),
                    "oracle": list(c.oracle),
                    "match": c.match,
                }
                for c in self.checks
            ],
            "aggregate": {
                "matches": self.matches,
                "mismatches": self.mismatches,
                "verdict": self.verdict,
            },
        }


def _try_slot(
    q: PrimeModulus, y: Residue, omega: ExtensionElement
) -> PTPrimeSlot:
    """Build a slot for prime q, or return None if q is unusable."""
    p = y.q
    if q.q == p or q.q % 3 != 1:
        return None
    y_mod_q = q.residue(y.value)
    if y_mod_q.value == 0 or not is_cube(y_mod_q):
        return None
    roots = sorted(
        (q.residue(r) for r in range(q.q) if r * r % q.q * r % q.q == y_mod_q.value),
        key=lambda r: r.value,
    )
    if len(roots) != 3:
        return None
    reduced = [omega.reduce_at(r) for r in roots]
    if any(w.value == 0 for w in reduced):
        return None
    try:
        recovery = build_recovery(roots)
    except Singular:
        return None
    slot_roots = tuple(
        SlotRoot(r, w, multiplicative_order(w, q.q - 1))
        for r, w in zip(roots, reduced)
    )
    return PTPrimeSlot(q, slot_roots, recovery)


def _interval_bound(
    n: int, coeff_bound: int, slots: Sequence[PTPrimeSlot]
) -> Tuple[int, str]:
    """Worst-case intermediate magnitude by interval arithmetic.

    Tracks the pipeline stages over the integers: folding sums, the DFT
    row dot-product, and the recovery combination.  Returns the largest
    bound across slots together with the stage that produced it.
    """
    worst, stage = 0, "fold"
    for slot in slots:
        qv = slot.q.q
        for sr in slot.roots:
            fold_hi = -(-n // sr.period) * coeff_bound
            eval_hi = sr.period * fold_hi * (qv - 1)
            rec_hi = 3 * eval_hi * (qv - 1)
            for value, name in ((fold_hi, "fold"), (eval_hi, "dft"), (rec_hi, "recovery")):
                if value > worst:
                    worst, stage = value, name
    return worst, stage


def preprocess(
    n_target: int = None,
    bound_mode: str = STRICT,
    seed: int = 0,
    p: int = None,
    coeff_bound: int = None,
    max_scan_factor: int = 64,
) -> PTPlan:
    """Build a transform plan.

    Either n_target (the requested transform size) or an explicit base
    prime p must be given.  Strict mode sizes the prime set against the
    9*p^6 worst case; input-aware mode sizes it against the exact
    interval-arithmetic bound for the declared coefficient bound, which
    is what makes small configurations runnable at all.

    The prime scan starts just below p and descends, then continues with
    primes above p when the supply below is insufficient, stopping at
    max_scan_factor * p.  (With primes below p alone the strict bound is
    unreachable at desk scale; see the plan statistics for what was used.)
    """
    if bound_mode not in (STRICT, INPUT_AWARE):
        raise UsageError(f"unknown bound mode {bound_mode!r}")
    if p is None:
        if n_target is None or n_target < 2:
            raise UsageError("need n_target >= 2 or an explicit p")
        p_mod = next_prime_at_or_above(doubling_estimate(n_target))
        while p_mod.q % 3 != 1:
            p_mod = next_prime_at_or_above(p_mod.q + 1)
    else:
        p_mod = PrimeModulus(p)
        if p_mod.q % 3 != 1:
            raise UsageError(f"p = {p} must be 1 mod 3 for a non-cube to exist")
    if coeff_bound is None:
        coeff_bound = p_mod.q - 1 if bound_mode == STRICT else 1
    n = p_mod.q**3 - 1
    y = find_noncube(p_mod, rng_seed=None if seed == 0 else seed)
    ctx = ExtensionContext(p_mod, y)
    omega = find_extension_root_of_order(n, ctx)

    slots: List[PTPrimeSlot] = []
    prod = 1

    def target() -> int:
        if bound_mode == STRICT:
            return 9 * p_mod.q**6
        return _interval_bound(n, coeff_bound, slots)[0]

    def scan():
        yield from descending_primes(p_mod.q)
        for cand in ascending_primes(p_mod.q):
            if cand.q > max_scan_factor * p_mod.q:
                return
            yield cand

    met = False
    for q in scan():
        slot = _try_slot(q, y, omega)
        if slot is None:
            continue
        slots.append(slot)
        prod *= slot.q.q
        if prod > target():
            met = True
            break
    if not met:
        raise PrimeSupplyExhausted(
            f"prod(q) = {prod} <= required {target()} scanning up to "
            f"{max_scan_factor}*p; try input-aware mode or a larger scan"
        )
    certified, _stage = _interval_bound(n, coeff_bound, slots)
    return PTPlan(
        p=p_mod,
        y=y,
        n=n,
        omega=omega,
        slots=tuple(slots),
        bound_mode=bound_mode,
        coeff_bound=coeff_bound,
        certified_bound=certified,
        target_bound=target() if bound_mode == STRICT else certified,
    )


def certify_value_bound(plan: PTPlan, coeff_bound: int) -> int:
    """Exact worst-case intermediate for inputs bounded by coeff_bound.

    Raises PlanNotCertified (naming the offending stage) when the plan's
    primes cannot represent that worst case.
    """
    if coeff_bound < 0:
        raise UsageError("coeff_bound must be >= 0")
    worst, stage = _interval_bound(plan.n, coeff_bound, plan.slots)
    capacity = plan.prime_product
    if worst >= capacity:
        raise PlanNotCertified(
            f"stage {stage!r} can reach {worst} >= prod(q) = {capacity}",
            stage=stage,
            bound=worst,
            capacity=capacity,
        )
    return worst


def _fold_values(values: np.ndarray, period: int, q: int) -> List[int]:
    acc = np.zeros(period, dtype=np.int64)
    np.add.at(acc, np.arange(len(values)) % period, values)
    return [int(v) for v in acc % q]


def fold_coefficients(
    x: Sequence[int], slot: PTPrimeSlot, root_index: int
) -> List[Residue]:
    """Collapse x to the root's period: folded[t] = sum of x[k], k = t mod d."""
    sr = slot.roots[root_index]
    q = slot.q.q
    xv = np.asarray([v % q for v in x], dtype=np.int64)
    return [slot.q.residue(v) for v in _fold_values(xv, sr.period, q)]


def _reduce_triples(
    xs: Sequence[Tuple[int, int, int]], root: Residue
) -> np.ndarray:
    """Reduce each component triple at a concrete cube root mod q."""
    q = root.q
    r = root.value
    r2 = r * r % q
    return np.asarray(
        [(a0 + a1 * r + a2 * r2) % q for a0, a1, a2 in xs], dtype=np.int64
    )


def _slot_component_table(
    xs: Sequence[Tuple[int, int, int]], slot: PTPrimeSlot
) -> List[Tuple[Residue, Residue, Residue]]:
    """Recovered component triples for every index class mod index_period."""
    q = slot.q.q
    dfts = []
    for i in range(3):
        sr = slot.roots[i]
        reduced = _reduce_triples(xs, sr.root)
        folded = [
            slot.q.residue(v) for v in _fold_values(reduced, sr.period, q)
        ]
        dfts.append(naive_dft(folded, sr.reduced_omega))
    table = []
    for j in range(slot.index_period):
        evals = [dfts[i][j % slot.roots[i].period] for i in range(3)]
        table.append(tuple(recover_components(evals, slot.recovery)))
    return table


def transform_elements(
    xs: Sequence[Tuple[int, int, int]], plan: PTPlan
) -> List[Tuple[int, int, int]]:
    """Pipeline over extension-element inputs (component triples mod p).

    Natural-number inputs are the special case (v, 0, 0); the inverse
    direction needs the general form.
    """
    if len(xs) != plan.n:
        raise UsageError(f"input length {len(xs)} != plan length {plan.n}")
    p = plan.p.q
    basis = plan.crt_basis
    tables = [_slot_component_table(xs, slot) for slot in plan.slots]
    index_periods = [slot.index_period for slot in plan.slots]
    cache: Dict[Tuple[int, ...], Tuple[int, int, int]] = {}
    out = []
    for j in range(plan.n):
        key = tuple(j % m for m in index_periods)
        hit = cache.get(key)
        if hit is None:
            comps = []
            for t in range(3):
                residues = [
                    tables[k][key[k]][t].value for k in range(len(plan.slots))
                ]
                comps.append(crt_reconstruct(residues, basis) % p)
            hit = tuple(comps)
            cache[key] = hit
        out.append(hit)
    return out


def transform(x: Sequence[int], plan: PTPlan) -> List[Tuple[int, int, int]]:
    """Run the full pipeline on natural-number coefficients.

    Per slot and root: fold, naive DFT at the reduced omega, component
    recovery; then each output index is CRT-combined across slots (one
    reconstruction per component, never truncated) and reduced mod p.
    """
    if any(v < 0 or v > plan.coeff_bound for v in x):
        raise UsageError(
            f"input entries must lie in [0, {plan.coeff_bound}] for this plan"
        )
    return transform_elements([(v, 0, 0) for v in x], plan)


def inverse_plan(plan: PTPlan) -> PTPlan:
    """Plan for the inverse direction: same primes, omega replaced by 1/omega.

    The slots are rebuilt from scratch because reduction at a root does
    not commute with inversion mod p.
    """
    omega_inv = ext_pow(plan.omega, plan.n - 1)
    slots = []
    for slot in plan.slots:
        rebuilt = _try_slot(slot.q, plan.y, omega_inv)
        if rebuilt is None:
            raise PrimeSupplyExhausted(
                f"slot prime {slot.q.q} unusable for the inverse direction"
            )
        slots.append(rebuilt)
    return PTPlan(
        p=plan.p,
        y=plan.y,
        n=plan.n,
        omega=omega_inv,
        slots=tuple(slots),
        bound_mode=plan.bound_mode,
        coeff_bound=plan.coeff_bound,
        certified_bound=plan.certified_bound,
        target_bound=plan.target_bound,
    )


def oracle_output(
    x: Sequence[int], plan: PTPlan, index: int
) -> Tuple[int, int, int]:
    """Direct extension-field DFT output: sum_k x[k] * omega^(index*k)."""
    ctx = plan.context
    w = ext_pow(plan.omega, index)
    acc = ctx.zero
    term = ctx.one
    p = plan.p.q
    for v in x:
        if v:
            acc = acc + ctx.element(v % p) * term
        term = term * w
    return acc.coeffs


def spot_check(
    x: Sequence[int], plan: PTPlan, sample: int, seed: int
) -> TransformReport:
    """Compare pipeline outputs against the direct oracle at random indices."""
    if sample < 1:
        raise UsageError("sample must be >= 1")
    rng = random.Random(seed)
    indices = sorted(rng.sample(range(plan.n), min(sample, plan.n)))
    pipeline = transform(x, plan)
    checks = tuple(
        IndexCheck(j, pipeline[j], oracle_output(x, plan, j)) for j in indices
    )
    return TransformReport(plan_p=plan.p.q, seed=seed, checks=checks)


# --- plan serialization -------------------------------------------------

def plan_to_json(plan: PTPlan) -> str:
    doc = {
        "format_version": PLAN_FORMAT_VERSION,
        "p": plan.p.q,
        "y": plan.y.value,
        "n": plan.n,
        "omega": list(plan.omega.coeffs),
        "bound_mode": plan.bound_mode,
        "coeff_bound": plan.coeff_bound,
        "certified_bound": plan.certified_bound,
        "target_bound": plan.target_bound,
        "slots": [
            {
                "q": s.q.q,
                "roots": [r.root.value for r in s.roots],
                "reduced_omegas": [r.reduced_omega.value for r in s.roots],
                "periods": list(s.periods),
            }
            for s in plan.slots
        ],
    }
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def plan_from_json(text: str) -> PTPlan:
    doc = json.loads(text)
    if doc.get("format_version") != PLAN_FORMAT_VERSION:
        raise UsageError(
            f"unsupported plan format version {doc.get('format_version')!r}"
        )
    p_mod = PrimeModulus(doc["p"])
    y = p_mod.residue(doc["y"])
    ctx = ExtensionContext(p_mod, y)
    omega = ctx.element(*doc["omega"])
    slots = []
    for s in doc["slots"]:
        q = PrimeModulus(s["q"])
        roots = [q.residue(r) for r in s["roots"]]
        slot_roots = tuple(
            SlotRoot(r, q.residue(w), int(d))
            for r, w, d in zip(roots, s["reduced_omegas"], s["periods"])
        )
        slots.append(PTPrimeSlot(q, slot_roots, build_recovery(roots)))
    plan = PTPlan(
        p=p_mod,
        y=y,
        n=doc["n"],
        omega=omega,
        slots=tuple(slots),
        bound_mode=doc["bound_mode"],
        coeff_bound=doc["coeff_bound"],
        certified_bound=doc["certified_bound"],
        target_bound=doc["target_bound"],
    )
    verify_plan(plan)
    return plan


def verify_plan(plan: PTPlan) -> None:
    """Re-check every slot invariant; raises UsageError on violation."""
    for slot in plan.slots:
        q = slot.q.q
        if q % 3 != 1 or q == plan.p.q:
            raise UsageError(f"invalid slot prime {q}")
        for sr in slot.roots:
            if pow(sr.root.value, 3, q) != plan.y.value % q:
                raise UsageError(f"{sr.root.value} is not a cube root of y mod {q}")
            if plan.omega.reduce_at(sr.root) != sr.reduced_omega:
                raise UsageError(f"reduced omega mismatch in slot {q}")
            if multiplicative_order(sr.reduced_omega, q - 1) != sr.period:
                raise UsageError(f"period mismatch in slot {q}")
