"""Budgeted integer factorization with certified primes.

Spanning-tree counts in a tower grow doubly fast, so full factorization
is best-effort: trial division up to a bound, perfect-power reduction,
then Brent-cycle Pollard rho under an iteration budget.  Whatever the
budget leaves unsplit is reported as a composite cofactor instead of
being guessed at.

Primality of every reported prime is certified: deterministic
Miller-Rabin with the 13 bases 2..41 is a proven primality test below
DETERMINISTIC_MR_BOUND (~3.3e24).  Larger probable primes are never
listed as factors; they stay in the cofactor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

# The first 13 primes witness compositeness for every composite below this
# bound (Sorenson-Webster).
DETERMINISTIC_MR_BOUND = 3_317_044_064_679_887_385_961_981
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)

DEFAULT_TRIAL_BOUND = 10**6
DEFAULT_RHO_ITERATIONS = 10**7


def _miller_rabin(n: int, bases) -> bool:
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in bases:
        a %= n
        if a == 0:
            continue
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def is_certified_prime(n: int) -> bool:
    """True iff n is prime, proven.  Raises for n beyond the proven range."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n == p:
            return True
        if n % p == 0:
            return False
    if n >= DETERMINISTIC_MR_BOUND:
        raise ValueError(f"{n} exceeds the deterministic Miller-Rabin range")
    return _miller_rabin(n, _MR_BASES)


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin with fixed bases; deterministic below the proven bound,
    heuristic (but with no known pseudoprimes) above it."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n == p:
            return True
        if n % p == 0:
            return False
    return _miller_rabin(n, _MR_BASES)


def previous_prime(n: int) -> int:
    """Largest prime < n (certified range only)."""
    k = n - 1 if n % 2 == 0 else n - 2
    while k >= 2:
        if is_certified_prime(k):
            return k
        k -= 2
    raise ValueError("no prime below 2")


def ord_p(n: int, p: int) -> int:
    """Exponent of p in n (n != 0)."""
    if n == 0:
        raise ValueError("ord_p(0) is infinite")
    n = abs(n)
    v = 0
    while n % p == 0:
        v += 1
        n //= p
    return v


def integer_nth_root(n: int, k: int) -> int:
    """floor(n ** (1/k)) for n >= 0, k >= 1, exactly."""
    if n < 0 or k < 1:
        raise ValueError
    if n < 2 or k == 1:
        return n
    x = 1 << (-(-n.bit_length() // k))  # upper bound
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


def perfect_power(n: int) -> tuple[int, int] | None:
    """(b, k) with n = b**k and k maximal >= 2, or None."""
    if n < 4:
        return None
    best = None
    for k in range(2, n.bit_length() + 1):
        b = integer_nth_root(n, k)
        if b < 2:
            break
        if b**k == n:
            best = (b, k)
    return best


def _brent_rho(n: int, budget: list[int], seed: int = 1) -> int | None:
    """One Brent-cycle rho attempt; returns a nontrivial factor or None.

    budget is a single-element list of remaining iterations, decremented
    in place so nested calls share one allowance.
    """
    if n % 2 == 0:
        return 2
    c = seed
    while budget[0] > 0:
        y, m, g, r, q = 2, 128, 1, 1, 1
        while g == 1 and budget[0] > 0:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1 and budget[0] > 0:
                ys = y
                steps = min(m, r - k, budget[0])
                for _ in range(steps):
                    y = (y * y + c) % n
                    q = q * (x - y) % n
                budget[0] -= steps
                g = math.gcd(q, n)
                k += steps
            r *= 2
        if g == n:  # backtrack one step at a time
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(x - ys, n)
        if 1 < g < n:
            return g
        c += 1  # cycle degenerated; retry with a new polynomial
    return None


@dataclass(frozen=True)
class FactoredInteger:
    """value = cofactor * prod(p**e); every listed p is a certified prime."""

    value: int
    factors: tuple[tuple[int, int], ...]
    cofactor: int = 1

    def __post_init__(self):
        prod = self.cofactor
        for p, e in self.factors:
            prod *= p**e
        if prod != self.value:
            raise ValueError("factorization does not reconstruct the value")

    @property
    def complete(self) -> bool:
        return self.cofactor == 1

    def omega(self) -> tuple[int, bool]:
        """(number of distinct primes, exact?).  When the cofactor is
        nontrivial the count is a lower bound: the cofactor hides at
        least one more prime not among the listed ones."""
        count = len(self.factors)
        if self.cofactor == 1:
            return count, True
        return count + 1, False

    def __str__(self) -> str:
        if not self.factors and self.cofactor == 1:
            return "1"
        parts = [f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors]
        if self.cofactor != 1:
            parts.append(f"C{self.cofactor}")
        return " * ".join(parts)


def factor_kappa(
    n: int,
    trial_bound: int = DEFAULT_TRIAL_BOUND,
    rho_iterations: int = DEFAULT_RHO_ITERATIONS,
) -> FactoredInteger:
    """Best-effort factorization of n >= 1 within the given budget."""
    if n < 1:
        raise ValueError("expected a positive integer")
    if n == 1:
        return FactoredInteger(1, ())

    found: dict[int, int] = {}
    rest = n
    for p in range(2, trial_bound + 1) if trial_bound < 1000 else _trial_candidates(trial_bound):
        if p * p > rest:
            break
        while rest % p == 0:
            found[p] = found.get(p, 0) + 1
            rest //= p
    budget = [rho_iterations]
    cofactor = 1
    stack: list[tuple[int, int]] = [(rest, 1)] if rest > 1 else []
    while stack:
        m, mult = stack.pop()
        if m == 1:
            continue
        pp = perfect_power(m)
        if pp is not None:
            stack.append((pp[0], mult * pp[1]))
            continue
        if m < DETERMINISTIC_MR_BOUND:
            if is_certified_prime(m):
                found[m] = found.get(m, 0) + mult
                continue
        elif is_probable_prime(m):
            # probably prime but not certifiable here; report honestly
            cofactor *= m**mult
            continue
        f = _brent_rho(m, budget)
        if f is None:
            cofactor *= m**mult
            continue
        stack.append((f, mult))
        stack.append((m // f, mult))

    cofactor = _finalize_cofactor(cofactor, found)
    factors = tuple(sorted(found.items()))
    return FactoredInteger(n, factors, cofactor)


def _finalize_cofactor(cofactor: int, found: dict[int, int]) -> int:
    """Strip certified primes out of an unsplit cofactor.

    Keeps the cofactor coprime to every listed factor (so omega lower
    bounds stay honest lower bounds) and absorbs it entirely whenever
    the leftover turns out to be a certifiable prime or prime power.
    """
    while cofactor > 1:
        progressed = False
        for p in list(found):
            while cofactor % p == 0:
                cofactor //= p
                found[p] += 1
                progressed = True
        if cofactor == 1:
            break
        pp = perfect_power(cofactor)
        base, mult = pp if pp else (cofactor, 1)
        if base < DETERMINISTIC_MR_BOUND and is_certified_prime(base):
            found[base] = found.get(base, 0) + mult
            cofactor = 1
            break
        if not progressed:
            break
    return cofactor


def _trial_candidates(bound: int):
    yield 2
    yield 3
    k = 5
    while k <= bound:  # 6k +- 1 wheel
        yield k
        yield k + 2
        k += 6
