"""Exact big-integer kernel.

Factorials, base-a digit sums, Legendre valuations, integer k-th roots,
consecutive-product window tests, and the scaled polynomial certificates
that justify the product window.  Everything in this module is exact
integer arithmetic; nothing here ever rounds.  gmpy2's mpz backs the hot
paths (k-th roots of numbers with tens of thousands of digits), but all
public functions accept and return plain Python ints.

The central question the window test answers: given m = A!, is there a B
with (B+1)(B+2)...(B+k) = m?  Writing r for the integer k-th root of m,
any such B must lie in [r-k+1, r] because the product of k consecutive
integers is strictly between (B+1)^k and (B+k)^k.  We scan the slightly
wider window [max(0, r-k-1), r+1] so correctness never depends on the
sharpness of that bracketing argument.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

import gmpy2
from gmpy2 import mpz

from .errors import ConsistencyError, DigitCapExceeded

# BigNat values are plain Python ints (arbitrary precision, exact).
BigNat = int

# Default cap on factorial sizes: one million decimal digits covers
# n up to about 205000.
DEFAULT_DIGIT_CAP = 10**6

# 64-bit prime used to pre-filter window candidates before the full
# big-integer product comparison.  A residue mismatch proves inequality;
# only residue matches pay for the exact product.
_FILTER_MOD = (1 << 64) - 59

_LN10 = math.log(10)


def factorial(n: int, digit_cap: int | None = DEFAULT_DIGIT_CAP) -> BigNat:
    """Return n! exactly.  factorial(0) == 1.

    Raises DigitCapExceeded if the result would have more than digit_cap
    decimal digits (the guard uses a float log-gamma estimate, which is
    accurate to far below one digit at these scales).
    """
    if n < 0:
        raise ValueError(f"factorial of negative n={n}")
    if digit_cap is not None and n >= 2 and math.lgamma(n + 1) / _LN10 > digit_cap:
        raise DigitCapExceeded(
            f"{n}! has about {math.lgamma(n + 1) / _LN10:.3g} decimal digits, "
            f"cap is {digit_cap}"
        )
    return int(gmpy2.fac(n))


def digit_sum(n: BigNat, a: int) -> int:
    """Sum of the digits of n written in base a (a >= 2).  Zero iff n == 0."""
    if a < 2:
        raise ValueError(f"digit sum needs base >= 2, got {a}")
    if n < 0:
        raise ValueError("digit sum of a negative number")
    if a == 2:
        return int(n).bit_count()
    s = 0
    while n:
        n, r = divmod(n, a)
        s += r
    return s


def legendre_valuation(n: BigNat, p: int) -> int:
    """Exponent of the prime p in n!, via (n - s_p(n)) / (p - 1).

    Primality of p is the caller's responsibility (only p >= 2 is
    checked).  Raises ConsistencyError if p - 1 does not divide
    n - s_p(n), which would mean digit_sum is broken.
    """
    if p < 2:
        raise ValueError(f"prime must be >= 2, got {p}")
    q, r = divmod(n - digit_sum(n, p), p - 1)
    if r != 0:
        raise ConsistencyError(
            f"(n - s_p(n)) not divisible by p-1 for n={n}, p={p}"
        )
    return q


def legendre_valuation_oracle(n: BigNat, p: int) -> int:
    """Independent evaluation of the exponent of p in n!: sum of n // p^i."""
    if p < 2:
        raise ValueError(f"prime must be >= 2, got {p}")
    total = 0
    q = n // p
    while q:
        total += q
        q //= p
    return total


def kth_root_floor(m: BigNat, k: int) -> BigNat:
    """Largest r with r^k <= m, for m >= 1 and k >= 2."""
    if m < 1:
        raise ValueError(f"kth_root_floor needs m >= 1, got {m}")
    if k < 2:
        raise ValueError(f"kth_root_floor needs k >= 2, got {k}")
    root, _exact = gmpy2.iroot(mpz(m), k)
    return int(root)


def consecutive_product(b: BigNat, k: int) -> BigNat:
    """Exact product (b+1)(b+2)...(b+k) for k >= 1."""
    if k < 1:
        raise ValueError(f"consecutive_product needs k >= 1, got {k}")
    if b < 0:
        raise ValueError(f"consecutive_product needs b >= 0, got {b}")
    prod = mpz(1)
    b = mpz(b)
    for i in range(1, k + 1):
        prod *= b + i
    return int(prod)


def _window_match(m: "mpz", k: int, m_mod: int) -> int | None:
    """Scan the candidate window for a B with (B+1)...(B+k) == m.

    m_mod must equal m % _FILTER_MOD.  Every candidate is either rejected
    by an exact modular mismatch or confirmed by an exact full product, so
    the scan is exhaustive over the window despite the cheap filter.
    """
    r = gmpy2.iroot(m, k)[0]
    r_mod = int(r % _FILTER_MOD)
    for d in range(-k - 1, 2):
        b = r + d
        if b < 0:
            continue
        b_mod = (r_mod + d) % _FILTER_MOD
        prod_mod = 1
        for i in range(1, k + 1):
            prod_mod = prod_mod * (b_mod + i) % _FILTER_MOD
        if prod_mod == m_mod:
            prod = mpz(1)
            for i in range(1, k + 1):
                prod *= b + i
            if prod == m:
                return int(b)
    return None


def find_completing_b(m: BigNat, k: int) -> BigNat | None:
    """Return the B >= 0 with (B+1)(B+2)...(B+k) == m, if one exists.

    The product of k consecutive integers is strictly increasing in B, so
    there is at most one such B and it lies in the scanned window around
    the integer k-th root of m.  None is the normal negative outcome.
    """
    if m < 2:
        raise ValueError(f"find_completing_b needs m >= 2, got {m}")
    if not 2 <= k <= 20:
        raise ValueError(f"find_completing_b needs 2 <= k <= 20, got {k}")
    m = mpz(m)
    return _window_match(m, k, int(m % _FILTER_MOD))


@dataclass
class FactorialAccumulator:
    """Incrementally maintained factorial: value == n! at all times."""

    n: int = 0
    value: "mpz" = field(default_factory=lambda: mpz(1))
    digit_cap: int | None = DEFAULT_DIGIT_CAP

    @classmethod
    def seeded(cls, n: int, digit_cap: int | None = DEFAULT_DIGIT_CAP) -> "FactorialAccumulator":
        """Start at n! computed directly."""
        acc = cls(digit_cap=digit_cap)
        acc.n = n
        acc.value = mpz(factorial(n, digit_cap))
        return acc

    def advance(self) -> "mpz":
        """Step from n! to (n+1)! and return the new value."""
        nxt = self.n + 1
        if (
            self.digit_cap is not None
            and nxt >= 2
            and math.lgamma(nxt + 1) / _LN10 > self.digit_cap
        ):
            raise DigitCapExceeded(
                f"{nxt}! would exceed the {self.digit_cap}-digit cap"
            )
        self.value *= nxt
        self.n = nxt
        return self.value


# ---------------------------------------------------------------------------
# Polynomial certificates for the product window.
#
# For x = B - 1, define Q_k(x) = 2^k * prod_{i=1..k} (x+1+i) - (2x+k+1)^k.
# The 2^k scaling clears the half-integer (k-1)/2 so all coefficients stay
# integers without changing signs.  If every coefficient is nonnegative and
# the constant term is positive, then Q_k > 0 for all x >= 0, i.e.
# (B+1)...(B+k) > (B + (k-1)/2)^k for all real B >= 1.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PolynomialCertificate:
    """Exact expansion of Q_k in powers of x = B - 1, plus its sign checks."""

    k: int
    coeffs: tuple[int, ...]  # coeffs[j] multiplies x^j; trailing zeros stripped
    all_nonneg: bool
    positive_at_b1: bool
    verified: bool

    def evaluate(self, x: int) -> int:
        """Evaluate the stored expansion at integer x (Horner, exact)."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc


def window_poly_direct(k: int, x: int) -> int:
    """Evaluate 2^k * prod_{i=1..k}(x+1+i) - (2x+k+1)^k directly."""
    prod = 1
    for i in range(1, k + 1):
        prod *= x + 1 + i
    return (prod << k) - (2 * x + k + 1) ** k


def _poly_mul_linear(coeffs: list[int], c: int) -> list[int]:
    """Multiply the polynomial by (x + c), exactly."""
    out = [0] * (len(coeffs) + 1)
    for j, a in enumerate(coeffs):
        out[j] += c * a
        out[j + 1] += a
    return out


def product_window_certificate(k: int) -> PolynomialCertificate:
    """Expand Q_k exactly and record its coefficient-sign certificate.

    The expansion is cross-checked against direct evaluation at a few
    integer points before the certificate is returned; a mismatch raises
    ConsistencyError.  verified is True iff all coefficients are
    nonnegative and the constant term is positive, which together prove
    (B+1)...(B+k) > (B+(k-1)/2)^k for every real B >= 1.
    """
    if k < 2:
        raise ValueError(f"certificate needs k >= 2, got {k}")

    prod = [1]
    for i in range(1, k + 1):
        prod = _poly_mul_linear(prod, 1 + i)
    scale = 1 << k
    coeffs = [scale * a for a in prod]

    # subtract (2x + k + 1)^k expanded by the binomial theorem
    c = k + 1
    for j in range(k + 1):
        coeffs[j] -= math.comb(k, j) * (2**j) * c ** (k - j)

    while coeffs and coeffs[-1] == 0:
        coeffs.pop()

    cert = PolynomialCertificate(
        k=k,
        coeffs=tuple(coeffs),
        all_nonneg=all(a >= 0 for a in coeffs),
        positive_at_b1=bool(coeffs) and coeffs[0] > 0,
        verified=all(a >= 0 for a in coeffs) and bool(coeffs) and coeffs[0] > 0,
    )

    rng = random.Random(k)
    for x in (0, 1, 37, rng.randrange(2, 10**6)):
        if cert.evaluate(x) != window_poly_direct(k, x):
            raise ConsistencyError(
                f"certificate expansion mismatch at k={k}, x={x}"
            )
    return cert
