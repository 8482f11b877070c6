"""Exact exp/log arithmetic, the omega hierarchy and checks of its two lemmas.

``log`` is the ceiling logarithm: the least ``y`` with ``x <= 2**y``.  Values
that would exceed the bit budget raise :class:`BitBudgetExceeded` instead of
being truncated.  Towers ``exp^h(b)`` too tall to materialize can still be
compared exactly against integers via :class:`Tower`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

DEFAULT_BIT_BUDGET = 1 << 20


class DomainError(ValueError):
    pass


class BitBudgetExceeded(OverflowError):
    pass


class PreconditionViolated(ValueError):
    pass


def exp_(x: int, budget: int = DEFAULT_BIT_BUDGET) -> int:
    if x < 0:
        raise DomainError("exp of a negative number")
    if x + 1 > budget:
        raise BitBudgetExceeded(f"2**x with x of {x.bit_length()} bits exceeds {budget} bits")
    return 1 << x


def log_(x: int) -> int:
    """Least ``y`` with ``x <= 2**y``."""
    if x < 1:
        raise DomainError("log is undefined at 0")
    return (x - 1).bit_length()


def _clog(x: int) -> int:
    # log extended by log(0) = 0; used only inside tower comparisons
    return (x - 1).bit_length() if x > 0 else 0


def exp_iter(k: int, x: int, budget: int = DEFAULT_BIT_BUDGET) -> int:
    for _ in range(k):
        x = exp_(x, budget)
    return x


def log_iter(k: int, x: int) -> int:
    for _ in range(k):
        x = log_(x)
    return x


def _check_bits(v: int, budget: int) -> int:
    if v.bit_length() > budget:
        raise BitBudgetExceeded(f"value exceeds {budget} bits")
    return v


def _pow(base: int, e: int, budget: int) -> int:
    if base <= 1:
        return base
    if (base.bit_length() - 1) * e > budget:
        raise BitBudgetExceeded(f"power exceeds {budget} bits")
    return _check_bits(base ** e, budget)


# ---------------------------------------------------------------------------
# Towers


@dataclass(frozen=True)
class Tower:
    """The number ``exp^height(base)``, possibly too large to write out."""

    height: int
    base: int

    def value(self, budget: int = DEFAULT_BIT_BUDGET) -> int:
        return exp_iter(self.height, self.base, budget)


def tower_lt_int(t: Tower, n: int) -> bool:
    """``exp^h(b) < n`` decided without materializing the tower.

    For ``h >= 1``: ``2**y < n`` iff ``y < log n`` (ceiling log), so one level
    of the tower can be peeled off against ``log n``.
    """
    h, b = t.height, t.base
    while h > 0:
        if n <= 1:
            return False
        n = _clog(n)
        h -= 1
    return b < n


def int_lt_tower(n: int, t: Tower) -> bool:
    return not tower_lt_int(t, n + 1)


def tower_le_int(t: Tower, n: int) -> bool:
    return tower_lt_int(t, n + 1)


# ---------------------------------------------------------------------------
# Omega


def _omega_check(m: int, x: int) -> None:
    if m < -1:
        raise DomainError("m must be >= -1")
    if x < 0 or (m >= 1 and x < 1):
        raise DomainError("x out of domain")


def omega_tower(m: int, x: int, n: int = 1) -> Tower:
    """``omega_m^n(x)`` as a tower (``m >= 0``): ``exp^m((log^m x)^(2^n))``."""
    _omega_check(m, x)
    if m < 0 or n < 1:
        raise DomainError("towers need m >= 0 and n >= 1")
    inner = log_iter(m, x)
    # (log^m x)^(2^n) is computed exactly; the caller bounds n
    return Tower(m, inner ** (1 << n))


def omega(m: int, x: int, budget: int = DEFAULT_BIT_BUDGET) -> int:
    """``omega_m(x) = exp^m((log^m x)^2)``; ``omega_-1(x) = 2x``."""
    _omega_check(m, x)
    if m == -1:
        return 2 * x
    inner = log_iter(m, x)
    return exp_iter(m, _pow(inner, 2, budget), budget)


def omega_recursive(m: int, x: int, budget: int = DEFAULT_BIT_BUDGET) -> int:
    """The inductive definition: ``omega_0(x) = x**2``,
    ``omega_{n+1}(x) = exp(omega_n(log x))``."""
    _omega_check(m, x)
    if m == -1:
        return 2 * x
    if m == 0:
        return _pow(x, 2, budget)
    return exp_(omega_recursive(m - 1, log_(x), budget), budget)


def omega_iter(m: int, n: int, x: int, budget: int = DEFAULT_BIT_BUDGET) -> int:
    """Closed form of the ``n``-fold iterate: ``2**n * x`` for ``m = -1``,
    else ``exp^m((log^m x)^(2^n))``."""
    _omega_check(m, x)
    if n < 0:
        raise DomainError("iteration count must be >= 0")
    if n == 0:
        # the closed form needs n >= 1: exp(log x) rounds x up to a power of 2
        return x
    if m == -1:
        return _check_bits(x << n, budget)
    inner = log_iter(m, x)
    if inner > 1 and n > budget.bit_length():
        raise BitBudgetExceeded("iteration exponent too large")
    return exp_iter(m, _pow(inner, 1 << n, budget), budget)


def omega_iter_literal(m: int, n: int, x: int, budget: int = DEFAULT_BIT_BUDGET) -> int:
    """``omega_m`` applied ``n`` times; reference for :func:`omega_iter`."""
    for _ in range(n):
        x = omega_recursive(m, x, budget)
    return x


def _pow2n_lt(base: int, n: int, bound: int) -> bool:
    """``base**(2**n) < bound`` without building oversized powers."""
    if base <= 1:
        return base < bound
    bl = bound.bit_length()
    if n >= bl or (base.bit_length() - 1) << n >= bl:
        return False
    return base ** (1 << n) < bound


def _pow2n_lt_pow2(base: int, n: int, e: int, budget: int = 1 << 26) -> bool:
    """``base**(2**n) < 2**e``, deciding by bit lengths where possible."""
    if base <= 1:
        return base < (1 << e) if e < budget else True
    b = base.bit_length()
    if base == 1 << (b - 1):
        return (b - 1) << n < e
    if b << n <= e:
        return True
    if (b - 1) << n >= e:
        return False
    if e > budget:
        raise BitBudgetExceeded("comparison needs more bits than the budget")
    return base ** (1 << n) < (1 << e)


def omega_iter_lt_int(m: int, n: int, x: int, y: int) -> bool:
    """``omega_m^n(x) < y`` decided exactly, even when the left side is huge.

    ``exp^m(A) < y`` iff ``A < clog^m(y)``, where a level is peeled off with
    ``2**a < t  iff  a < clog(t)``.
    """
    _omega_check(m, x)
    if n == 0:
        return x < y
    if m == -1:
        return (x << n) < y
    target = y
    for _ in range(m):
        if target <= 1:
            return False
        target = _clog(target)
    return _pow2n_lt(log_iter(m, x), n, target)


def varpi(n: int, x: int, budget: int = DEFAULT_BIT_BUDGET) -> int:
    """Least ``y`` with ``omega_n(y) >= x``."""
    if x < 1:
        raise DomainError("varpi needs x >= 1")
    lo = 1 if n >= 1 else 0

    def ok(y: int) -> bool:
        return not omega_lt_int(n, y, x)

    # omega_n needs log^(n-1) y >= 1; start at the least such y
    while True:
        try:
            ok(lo)
            break
        except DomainError:
            lo += 1

    if ok(lo):
        return lo
    hi = max(lo + 1, 2)
    while not ok(hi):
        lo, hi = hi, hi * 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if ok(mid):
            hi = mid
        else:
            lo = mid
    return hi


def omega_lt_int(m: int, x: int, y: int) -> bool:
    """``omega_m(x) < y`` without materializing ``omega_m(x)``."""
    return omega_iter_lt_int(m, 1, x, y)


# ---------------------------------------------------------------------------
# Lemma checks


@dataclass
class LemmaReport:
    lemma: str
    grid: list[tuple[int, int]]
    samples: list[dict] = field(default_factory=list)
    violations: list[dict] = field(default_factory=list)
    skipped: list[dict] = field(default_factory=list)
    witnesses: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "lemma": self.lemma,
            "grid": [list(g) for g in self.grid],
            "samples": len(self.samples),
            "violations": self.violations,
            "skipped": self.skipped,
            "witnesses": self.witnesses,
        }


def lemma1_threshold(m: int, n: int, budget: int = DEFAULT_BIT_BUDGET) -> int:
    return exp_iter(m + 2, n, budget)


def lemma1_holds(m: int, n: int, x: int) -> bool:
    """``omega_m^n(x) < omega_{m+1}(x)``, decided exactly.

    Both sides are towers of height ``m`` over ``L**(2**n)`` and
    ``2**(l*l)`` respectively, with ``L = log^m x`` and ``l = log L``; ``exp``
    is strictly increasing so only the tops need comparing.
    """
    big = log_iter(m, x)
    small = log_(big)
    return _pow2n_lt_pow2(big, n, small * small)


def check_lemma1(m: int, n: int, samples: int = 4, seed: int = 0,
                 budget: int = DEFAULT_BIT_BUDGET) -> LemmaReport:
    """Sample admissible ``x > exp^{m+2}(n)`` and test the strict inequality.

    Samples: the two smallest admissible values, a pseudo-random value in
    the middle of the budget range and one near the bit budget.
    """
    if m < 0 or n <= 2:
        raise PreconditionViolated("requires m >= 0 and N > 2")
    rep = LemmaReport("lemma1", [(m, n)])
    try:
        x0 = lemma1_threshold(m, n, budget)
    except BitBudgetExceeded:
        rep.skipped.append({"m": m, "N": n, "reason": "threshold exceeds bit budget"})
        return rep
    top_bits = max(budget, x0.bit_length() + 2)
    rng = random.Random(seed * 1_000_003 + m * 101 + n)
    xs = [x0 + 1, x0 + 2]
    mid_bits = (x0.bit_length() + top_bits) // 2
    xs.append(max(x0 + 3, rng.getrandbits(mid_bits) | (1 << (mid_bits - 1))))
    xs.append((1 << (top_bits - 1)) + rng.getrandbits(max(top_bits - 2, 1)))
    for x in xs[:max(samples, 0)] + [x0 + 3 + i for i in range(max(0, samples - 4))]:
        ok = lemma1_holds(m, n, x)
        rec = {"m": m, "N": n, "x_bits": x.bit_length(), "holds": ok}
        if x.bit_length() <= 64:
            rec["x"] = x
        rep.samples.append(rec)
        if not ok:
            rep.violations.append(rec)
    return rep


def lemma2_threshold(m: int, n: int, budget: int = DEFAULT_BIT_BUDGET) -> int:
    return exp_iter(m + 2, 4 * n + 4, budget)


def _lemma2_y(m: int, n: int, x: int) -> int:
    if m == -1:
        # least y with y*y >= x
        y = _isqrt_ceil(x)
        return y
    # step: y = exp(z) with z the witness one level down for log x
    z = _lemma2_y(m - 1, n, log_(x))
    return 1 << z


def _isqrt_ceil(x: int) -> int:
    import math
    r = math.isqrt(x)
    return r if r * r >= x else r + 1


def lemma2_verify(m: int, n: int, x: int, y: int) -> bool:
    """``y <= x`` and ``omega_m^n(y) < x <= omega_{m+1}(y)``, exactly."""
    if y > x or y < 1:
        return False
    return omega_iter_lt_int(m, n, y, x) and not omega_lt_int(m + 1, y, x)


def find_lemma2_witness(m: int, n: int, x: int, budget: int = DEFAULT_BIT_BUDGET) -> int:
    """A ``y <= x`` with ``omega_m^n(y) < x <= omega_{m+1}(y)`` built by the
    constructive argument (square root at the bottom, ``exp`` of the lower
    witness for ``log x`` above); the result is re-verified before return."""
    if m < -1 or n < 1:
        raise PreconditionViolated("requires m >= -1 and N >= 1")
    if not tower_lt_int(lemma2_threshold_tower(m, n), x):
        raise PreconditionViolated("x must exceed exp^{m+2}(4N+4)")
    y = _lemma2_y(m, n, x)
    if not lemma2_verify(m, n, x, y):
        raise AssertionError(f"constructed witness {y} fails for m={m}, N={n}")
    return y


def lemma2_threshold_tower(m: int, n: int) -> Tower:
    return Tower(m + 2, 4 * n + 4)


def lemma2_samples(m: int, n: int, samples: int = 4, seed: int = 0,
                   budget: int = DEFAULT_BIT_BUDGET) -> list[int]:
    x0 = lemma2_threshold(m, n, budget)
    rng = random.Random(seed * 7919 + (m + 1) * 31 + n)
    top_bits = max(budget // 4, x0.bit_length() + 2)
    mid_bits = (x0.bit_length() + top_bits) // 2
    xs = [x0 + 1, x0 + 2, rng.getrandbits(mid_bits) | (1 << (mid_bits - 1)),
          (1 << (top_bits - 1)) + rng.getrandbits(top_bits - 2)]
    return xs[:samples] + [x0 + 3 + i for i in range(max(0, samples - 4))]


def check_lemma2(m: int, n: int, samples: int = 4, seed: int = 0,
                 budget: int = DEFAULT_BIT_BUDGET) -> LemmaReport:
    rep = LemmaReport("lemma2", [(m, n)])
    try:
        xs = lemma2_samples(m, n, samples, seed, budget)
    except BitBudgetExceeded:
        rep.skipped.append({"m": m, "N": n, "reason": "threshold exceeds bit budget"})
        return rep
    for x in xs:
        rec = {"m": m, "N": n, "x_bits": x.bit_length()}
        try:
            y = find_lemma2_witness(m, n, x, budget)
        except AssertionError as e:
            rec["error"] = str(e)
            rep.violations.append(rec)
            continue
        rec["y_bits"] = y.bit_length()
        if x.bit_length() <= 64:
            rec["x"], rec["y"] = x, y
        rep.samples.append(rec)
        rep.witnesses.append(rec)
    return rep
