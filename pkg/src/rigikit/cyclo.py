"""Exact arithmetic in cyclotomic fields.

Values are elements of Q(zeta_n) stored in the power basis
{zeta_n^0, ..., zeta_n^(phi(n)-1)} reduced modulo the n-th cyclotomic
polynomial, with the conductor n always shrunk to the minimal one
(and never congruent to 2 mod 4, so rationals have conductor 1).
Two values are equal iff their (conductor, coefficient map) pairs agree.

Internally a value keeps integer numerators and one common denominator,
so the frequent basis reductions run in pure integer arithmetic; the
public coefficient view is in `fractions.Fraction`.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Dict, Tuple, Union

Rational = Fraction
Coeff = Union[int, Fraction]

# ---------------------------------------------------------------------------
# cached per-conductor data
#
# Caches are only ever filled with values that are a pure function of the
# key, so concurrent reads and redundant concurrent inserts are harmless.

_PHI_CACHE: Dict[int, Tuple[int, ...]] = {}
_RED_CACHE: Dict[int, Tuple[Tuple[int, ...], ...]] = {}
_RAM_CACHE: Dict[int, Tuple[int, ...]] = {}
_OMEGA_CACHE: Dict[int, Tuple[int, Tuple[int, ...]]] = {}
_GRAM_CACHE: Dict[int, list] = {}
_GALOIS_SUBGROUP_CACHE: Dict[Tuple[int, int], Tuple[int, ...]] = {}


def euler_phi(n: int) -> int:
    result = n
    m, p = n, 2
    while p * p <= m:
        if m % p == 0:
            result -= result // p
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        result -= result // m
    return result


def prime_factors(n: int) -> Tuple[int, ...]:
    out = []
    m, p = n, 2
    while p * p <= m:
        if m % p == 0:
            out.append(p)
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        out.append(m)
    return tuple(out)


def moebius(n: int) -> int:
    result = 1
    m, p = n, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            result = -result
        p += 1
    if m > 1:
        result = -result
    return result


def lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def _poly_divexact(num: list, den: list) -> list:
    """Exact division of integer polynomials (coefficient lists, low first)."""
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[len(den) - 1 + i]
        if c % den[-1] != 0:
            raise ArithmeticError("inexact polynomial division")
        q = c // den[-1]
        out[i] = q
        if q:
            for j, d in enumerate(den):
                num[i + j] -= q * d
    if any(num):
        raise ArithmeticError("nonzero remainder in exact polynomial division")
    return out


def cyclotomic_polynomial(n: int) -> Tuple[int, ...]:
    """Coefficients of Phi_n, constant term first."""
    cached = _PHI_CACHE.get(n)
    if cached is not None:
        return cached
    poly = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divexact(poly, list(cyclotomic_polynomial(d)))
    result = tuple(poly)
    _PHI_CACHE[n] = result
    return result


def _reduction_table(n: int) -> Tuple[Tuple[int, ...], ...]:
    """Row e = coefficients of zeta_n^e in the power basis mod Phi_n."""
    cached = _RED_CACHE.get(n)
    if cached is not None:
        return cached
    phi = euler_phi(n)
    mod = cyclotomic_polynomial(n)  # monic, degree phi
    support = [(i, c) for i, c in enumerate(mod[:phi]) if c]
    rows = []
    cur = [0] * phi
    cur[0] = 1
    rows.append(tuple(cur))
    for _ in range(1, n):
        top = cur[phi - 1]
        nxt = [0] * phi
        nxt[1:phi] = cur[0:phi - 1]
        if top:
            for i, c in support:
                nxt[i] -= top * c
        cur = nxt
        rows.append(tuple(cur))
    result = tuple(rows)
    _RED_CACHE[n] = result
    return result


def _ramanujan_table(n: int) -> Tuple[int, ...]:
    """Entry m = trace of zeta_n^m from Q(zeta_n) down to Q (Ramanujan sum)."""
    cached = _RAM_CACHE.get(n)
    if cached is not None:
        return cached
    phi_n = euler_phi(n)
    row = []
    for m in range(n):
        g = gcd(m, n)
        k = n // g
        row.append(moebius(k) * phi_n // euler_phi(k))
    result = tuple(row)
    _RAM_CACHE[n] = result
    return result


def _is_prime(m: int) -> bool:
    if m < 2:
        return False
    p = 2
    while p * p <= m:
        if m % p == 0:
            return False
        p += 1 if p == 2 else 2
    return True


def _omega_table(n: int) -> Tuple[int, Tuple[int, ...]]:
    """A prime l = 1 (mod n) above 2^20 and the power table of an order-n
    element of F_l; a fast homomorphic image of Z[zeta_n]."""
    cached = _OMEGA_CACHE.get(n)
    if cached is not None:
        return cached
    ell = ((1 << 20) // n + 1) * n + 1
    while not _is_prime(ell):
        ell += n
    primes_n = prime_factors(n)
    omega = None
    for a in range(2, 1000):
        w = pow(a, (ell - 1) // n, ell)
        if w != 1 and all(pow(w, n // p, ell) != 1 for p in primes_n):
            omega = w
            break
    if omega is None:  # pragma: no cover
        raise ArithmeticError("no element of order %d found mod %d" % (n, ell))
    table = [1] * n
    for e in range(1, n):
        table[e] = table[e - 1] * omega % ell
    result = (ell, tuple(table))
    _OMEGA_CACHE[n] = result
    return result


def _galois_subgroup(n: int, d: int) -> Tuple[int, ...]:
    """Units k mod n with k = 1 (mod d): the Galois group fixing Q(zeta_d)."""
    key = (n, d)
    cached = _GALOIS_SUBGROUP_CACHE.get(key)
    if cached is None:
        cached = tuple(k for k in range(1 + d, n, d) if gcd(k, n) == 1)
        _GALOIS_SUBGROUP_CACHE[key] = cached
    return cached


def _gram_solver(d: int) -> list:
    """Inverse of the trace Gram matrix of the power basis of Q(zeta_d)."""
    inv = _GRAM_CACHE.get(d)
    if inv is not None:
        return inv
    phi_d = euler_phi(d)
    ram = _ramanujan_table(d)
    rows = [[Fraction(ram[(i + j) % d]) for j in range(phi_d)] for i in range(phi_d)]
    aug = [[Fraction(1) if i == j else Fraction(0) for j in range(phi_d)]
           for i in range(phi_d)]
    for col in range(phi_d):
        sel = next(r for r in range(col, phi_d) if rows[r][col] != 0)
        rows[col], rows[sel] = rows[sel], rows[col]
        aug[col], aug[sel] = aug[sel], aug[col]
        piv = 1 / rows[col][col]
        rows[col] = [v * piv for v in rows[col]]
        aug[col] = [v * piv for v in aug[col]]
        for r in range(phi_d):
            if r != col and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[col])]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    _GRAM_CACHE[d] = aug
    return aug


# ---------------------------------------------------------------------------
# integer-kernel canonicalization helpers


def _reduce_int(n: int, raw: Dict[int, int]) -> list:
    """Reduce an integer exponent dict (mod n) to power-basis coefficients."""
    phi = euler_phi(n)
    acc = [0] * phi
    pending = None
    for e, c in raw.items():
        if not c:
            continue
        e %= n
        if e < phi:
            acc[e] += c
        else:
            if pending is None:
                pending = []
            pending.append((e, c))
    if pending:
        red = _reduction_table(n)
        for e, c in pending:
            row = red[e]
            for i in range(phi):
                if row[i]:
                    acc[i] += c * row[i]
    return acc


def _subfield_fast_test(n: int, num: Dict[int, int], d: int) -> bool:
    """Cheap necessary test for membership in Q(zeta_d); may false-positive
    (callers verify exactly), never false-negatives."""
    ell, table = _omega_table(n)
    base = 0
    for e, c in num.items():
        base = (base + c * table[e]) % ell
    for k in _galois_subgroup(n, d):
        acc = 0
        for e, c in num.items():
            acc = (acc + c * table[(e * k) % n]) % ell
        if acc != base:
            return False
    return True


def _subfield_rewrite(n: int, num: Dict[int, int], den: int, d: int):
    """Rewrite the value in Q(zeta_d) exactly, or return None.

    Candidate coefficients come from traces against the power basis of
    Q(zeta_d) (traces of roots of unity are Ramanujan sums); the candidate
    is then verified by expanding back into Q(zeta_n).
    """
    phi_n, phi_d = euler_phi(n), euler_phi(d)
    index = phi_n // phi_d
    ram = _ramanujan_table(n)
    step = n // d
    traces = []
    for j in range(phi_d):
        shift = (j * step) % n
        acc = 0
        for e, c in num.items():
            acc += c * ram[(e + shift) % n]
        traces.append(Fraction(acc, den * index))
    gram_inv = _gram_solver(d)
    sol = [sum(gram_inv[i][j] * traces[j] for j in range(phi_d))
           for i in range(phi_d)]
    # verify by expanding the candidate back in the big field
    red = _reduction_table(n)
    acc_vec = [Fraction(0)] * phi_n
    for j in range(phi_d):
        if sol[j]:
            row = red[(j * step) % n]
            for i in range(phi_n):
                if row[i]:
                    acc_vec[i] += sol[j] * row[i]
    for i in range(phi_n):
        if acc_vec[i] * den != num.get(i, 0):
            return None
    new_den = 1
    for s in sol:
        new_den = lcm(new_den, s.denominator)
    new_num = {j: int(sol[j] * new_den) for j in range(phi_d) if sol[j]}
    return new_num, new_den


def _shrink_int(n: int, num: Dict[int, int], den: int):
    """Minimal-conductor form of reduced integer coefficients over den."""
    while n > 1:
        if not num:
            return 1, {}, 1
        if len(num) == 1 and 0 in num:
            break
        shrunk = False
        for p in prime_factors(n):
            d = n // p
            while d % 4 == 2:
                d //= 2
            if d == n or d < 1:
                continue
            if not _subfield_fast_test(n, num, d):
                continue
            rewritten = _subfield_rewrite(n, num, den, d)
            if rewritten is not None:
                (num, den), n = rewritten, d
                shrunk = True
                break
        if not shrunk:
            return n, num, den
    return (1, dict(num), den) if num else (1, {}, 1)


def _normalize_content(n: int, num: Dict[int, int], den: int):
    if not num:
        return 1, {}, 1
    g = den
    for c in num.values():
        g = gcd(g, c)
        if g == 1:
            break
    if g > 1:
        num = {e: c // g for e, c in num.items()}
        den //= g
    return n, num, den


def _fold_even_conductor(n: int, raw: Dict[int, int]) -> Tuple[int, Dict[int, int]]:
    """Rewrite exponents at n = 2 (mod 4) in terms of zeta_{n/2}."""
    while n % 4 == 2:
        m = n // 2
        half = (m + 1) // 2
        folded: Dict[int, int] = {}
        for e, c in raw.items():
            e %= n
            key = (half * e) % m
            folded[key] = folded.get(key, 0) + (-c if e % 2 else c)
        n, raw = m, folded
    return n, raw


# ---------------------------------------------------------------------------
# the value type


class Cyclotomic:
    """An element of some Q(zeta_n), canonical and immutable."""

    __slots__ = ("_n", "_num", "_den", "_hash")

    def __init__(self, n: int, num: Dict[int, int], den: int):
        # private: callers go through the module constructors
        self._n = n
        self._num = num
        self._den = den
        self._hash = None

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_rational(x: Union[int, Fraction]) -> "Cyclotomic":
        if isinstance(x, int):
            return Cyclotomic(1, {0: x} if x else {}, 1)
        f = Fraction(x)
        if not f:
            return Cyclotomic(1, {}, 1)
        return Cyclotomic(1, {0: f.numerator}, f.denominator)

    # -- accessors ---------------------------------------------------------

    @property
    def conductor(self) -> int:
        return self._n

    @property
    def coeffs(self) -> Dict[int, Fraction]:
        return {e: Fraction(c, self._den) for e, c in self._num.items()}

    def coeff(self, e: int) -> Fraction:
        return Fraction(self._num.get(e, 0), self._den)

    def is_zero(self) -> bool:
        return not self._num

    def is_rational(self) -> bool:
        return self._n == 1

    def to_rational(self) -> Fraction:
        if self._n != 1:
            raise ValueError("value is not rational: %s" % self)
        return Fraction(self._num.get(0, 0), self._den)

    def is_integer(self) -> bool:
        return self._n == 1 and self._den == 1

    def to_integer(self) -> int:
        r = self.to_rational()
        if r.denominator != 1:
            raise ValueError("value is not an integer: %s" % self)
        return r.numerator

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other) -> "Cyclotomic":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self._n == other._n:
            m, den = self._n, lcm(self._den, other._den)
            fa, fb = den // self._den, den // other._den
            num = {e: c * fa for e, c in self._num.items()}
            for e, c in other._num.items():
                num[e] = num.get(e, 0) + c * fb
            num = {e: c for e, c in num.items() if c}
            return _canonical(*_normalize_content(*_shrink_int(m, num, den)))
        m = lcm(self._n, other._n)
        den = lcm(self._den, other._den)
        sa, sb = m // self._n, m // other._n
        fa, fb = den // self._den, den // other._den
        raw = {e * sa: c * fa for e, c in self._num.items()}
        for e, c in other._num.items():
            key = e * sb
            raw[key] = raw.get(key, 0) + c * fb
        return _canonical_int(m, raw, den)

    __radd__ = __add__

    def __neg__(self) -> "Cyclotomic":
        return Cyclotomic(self._n, {e: -c for e, c in self._num.items()}, self._den)

    def __sub__(self, other) -> "Cyclotomic":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other) -> "Cyclotomic":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other._n == 1:
            c0 = other._num.get(0, 0)
            if not c0:
                return ZERO
            num = {e: c * c0 for e, c in self._num.items()}
            n, num2, den = _normalize_content(self._n, num, self._den * other._den)
            return Cyclotomic(n, num2, den)
        if self._n == 1:
            return other * self
        m = lcm(self._n, other._n)
        sa, sb = m // self._n, m // other._n
        raw: Dict[int, int] = {}
        for e1, c1 in self._num.items():
            e1s = e1 * sa
            for e2, c2 in other._num.items():
                e = (e1s + e2 * sb) % m
                raw[e] = raw.get(e, 0) + c1 * c2
        return _canonical_int(m, raw, self._den * other._den)

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        """Multiplicative inverse; raises ZeroDivisionError on zero."""
        if self.is_zero():
            raise ZeroDivisionError("division by zero cyclotomic value")
        if self._n == 1:
            return Cyclotomic.from_rational(1 / self.to_rational())
        n, phi = self._n, euler_phi(self._n)
        red = _reduction_table(n)
        cols = []
        for j in range(phi):
            acc = [0] * phi
            for e, c in self._num.items():
                row = red[(e + j) % n]
                for i in range(phi):
                    if row[i]:
                        acc[i] += c * row[i]
            cols.append(acc)
        rows = [[Fraction(cols[j][i]) for j in range(phi)] for i in range(phi)]
        rhs = [Fraction(0)] * phi
        rhs[0] = Fraction(self._den)
        sol = _solve_square(rows, rhs)
        if sol is None:  # pragma: no cover - nonzero field elements invert
            raise ZeroDivisionError("value is not invertible")
        return from_terms(n, {j: sol[j] for j in range(phi) if sol[j]})

    def __truediv__(self, other) -> "Cyclotomic":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other._n == 1:
            if other.is_zero():
                raise ZeroDivisionError("division by zero")
            return self * other.inverse()
        return self * other.inverse()

    def __rtruediv__(self, other):
        return _coerce(other) / self

    def __pow__(self, k: int) -> "Cyclotomic":
        if k < 0:
            return self.inverse() ** (-k)
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- Galois action -----------------------------------------------------

    def galois(self, k: int) -> "Cyclotomic":
        """Apply zeta_n -> zeta_n^k; k must be coprime to the conductor."""
        n = self._n
        k %= n
        if gcd(k, n) != 1:
            raise ValueError("galois exponent %d not coprime to conductor %d" % (k, n))
        if n == 1 or k == 1:
            return self
        raw = {(e * k) % n: c for e, c in self._num.items()}
        vec = _reduce_int(n, raw)
        num = {i: v for i, v in enumerate(vec) if v}
        # a Galois image has the same minimal conductor, so no shrink
        return _canonical(*_normalize_content(n, num, self._den))

    def conjugate(self) -> "Cyclotomic":
        return self.galois(-1)

    # -- comparisons / misc --------------------------------------------------

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self._n == other._n and self._den == other._den
                and self._num == other._num)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._n, self._den, frozenset(self._num.items())))
        return self._hash

    def sort_key(self) -> tuple:
        """Total-order key usable for deterministic table layouts."""
        phi = euler_phi(self._n) if self._n > 1 else 1
        return (self._n, tuple(self._num.get(i, 0) for i in range(phi)), self._den)

    def __repr__(self):
        return "Cyclotomic(%r)" % format_value(self)

    def __str__(self):
        return format_value(self)


def _canonical(n: int, num: Dict[int, int], den: int) -> Cyclotomic:
    return Cyclotomic(n, num, den)


def _canonical_int(n: int, raw: Dict[int, int], den: int) -> Cyclotomic:
    """Canonicalize an integer exponent dict over a common denominator."""
    if n % 4 == 2:
        n, raw = _fold_even_conductor(n, raw)
    vec = _reduce_int(n, raw)
    num = {i: v for i, v in enumerate(vec) if v}
    return _canonical(*_normalize_content(*_shrink_int(n, num, den)))


def _coerce(x) -> "Cyclotomic":
    if isinstance(x, Cyclotomic):
        return x
    if isinstance(x, (int, Fraction)):
        return Cyclotomic.from_rational(x)
    return NotImplemented


def _solve_square(rows, rhs):
    """In-place Gaussian elimination over Fractions; returns solution or None."""
    m = len(rows)
    for col in range(m):
        sel = None
        for r in range(col, m):
            if rows[r][col] != 0:
                sel = r
                break
        if sel is None:
            return None
        rows[col], rows[sel] = rows[sel], rows[col]
        rhs[col], rhs[sel] = rhs[sel], rhs[col]
        inv = 1 / rows[col][col]
        rows[col] = [v * inv for v in rows[col]]
        rhs[col] = rhs[col] * inv
        for r in range(m):
            if r != col and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[col])]
                rhs[r] = rhs[r] - f * rhs[col]
    return rhs


# ---------------------------------------------------------------------------
# public constructors


def zeta(n: int, k: int = 1) -> Cyclotomic:
    """The root of unity zeta_n^k in canonical form."""
    if n < 1:
        raise ValueError("order of a root of unity must be positive")
    k %= n
    g = gcd(k, n)
    n, k = n // g, k // g
    if n == 1:
        return ONE
    if n % 4 == 2:
        n2, raw = _fold_even_conductor(n, {k: 1})
        return _canonical_int(n2, raw, 1)
    if k < euler_phi(n):
        return Cyclotomic(n, {k: 1}, 1)
    return _canonical_int(n, {k: 1}, 1)


def cyc(x: Union[int, Fraction, Cyclotomic]) -> Cyclotomic:
    """Coerce a rational or cyclotomic to Cyclotomic."""
    c = _coerce(x)
    if c is NotImplemented:
        raise TypeError("cannot interpret %r as a cyclotomic value" % (x,))
    return c


def from_terms(n: int, terms: Dict[int, Coeff]) -> Cyclotomic:
    """Sum of c_e * zeta_n^e over the given exponent map, canonicalized."""
    den = 1
    for c in terms.values():
        if isinstance(c, Fraction):
            den = lcm(den, c.denominator)
    raw: Dict[int, int] = {}
    for e, c in terms.items():
        f = Fraction(c)
        key = e % n
        raw[key] = raw.get(key, 0) + int(f * den)
    return _canonical_int(n, raw, den)


# ---------------------------------------------------------------------------
# raw helpers for hot loops (group-algebra representation, reduce once)


def raw_embed(a: Cyclotomic, m: int) -> Dict[int, Coeff]:
    """Exponent dict of `a` viewed in Q(zeta_m); conductor must divide m."""
    step, rem = divmod(m, a._n)
    if rem:
        raise ValueError("conductor %d does not divide %d" % (a._n, m))
    if a._den == 1:
        return {e * step: c for e, c in a._num.items()}
    d = a._den
    return {e * step: Fraction(c, d) for e, c in a._num.items()}


def raw_mul(d1: Dict[int, Coeff], d2: Dict[int, Coeff], m: int) -> Dict[int, Coeff]:
    out: Dict[int, Coeff] = {}
    for e1, c1 in d1.items():
        for e2, c2 in d2.items():
            e = (e1 + e2) % m
            out[e] = out.get(e, 0) + c1 * c2
    return out


def raw_conjugate(d: Dict[int, Coeff], m: int) -> Dict[int, Coeff]:
    out: Dict[int, Coeff] = {}
    for e, c in d.items():
        k = (-e) % m
        out[k] = out.get(k, 0) + c
    return out


def raw_add_into(acc: Dict[int, Coeff], d: Dict[int, Coeff]) -> None:
    for e, c in d.items():
        acc[e] = acc.get(e, 0) + c


def raw_to_cyclotomic(m: int, raw: Dict[int, Coeff]) -> Cyclotomic:
    return from_terms(m, raw)


def raw_reduce_vector(m: int, raw: Dict[int, Coeff]) -> list:
    """Power-basis coefficient list (length phi(m)) of a raw exponent dict."""
    phi = euler_phi(m)
    red = _reduction_table(m)
    acc = [0] * phi
    for e, c in raw.items():
        if not c:
            continue
        e %= m
        if e < phi:
            acc[e] += c
        else:
            row = red[e]
            for i in range(phi):
                if row[i]:
                    acc[i] += c * row[i]
    return acc


def raw_equals_rational(m: int, raw: Dict[int, Coeff], value: Coeff) -> bool:
    vec = raw_reduce_vector(m, raw)
    if any(vec[1:]):
        return False
    return vec[0] == value


# ---------------------------------------------------------------------------
# external value grammar:  sums of  c | c*E(n,k) | E(n,k)


def format_value(a: Cyclotomic) -> str:
    if a.is_zero():
        return "0"
    parts = []
    for e in sorted(a._num):
        c = Fraction(a._num[e], a._den)
        neg = c < 0
        mag = -c if neg else c
        if e == 0 or a._n == 1:
            body = _format_rat(mag)
        elif mag == 1:
            body = "E(%d,%d)" % (a._n, e)
        else:
            body = "%s*E(%d,%d)" % (_format_rat(mag), a._n, e)
        if not parts:
            parts.append("-" + body if neg else body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts)


def _format_rat(c: Coeff) -> str:
    f = Fraction(c)
    if f.denominator == 1:
        return str(f.numerator)
    return "%d/%d" % (f.numerator, f.denominator)


class ValueSyntaxError(ValueError):
    pass


def parse_value(text: str) -> Cyclotomic:
    """Parse the external value grammar back into a canonical Cyclotomic."""
    s = text.replace(" ", "").replace("\t", "")
    if not s:
        raise ValueSyntaxError("empty value")
    terms = []
    depth = 0
    cur = ""
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ValueSyntaxError("unbalanced parenthesis in %r" % text)
        if ch in "+-" and depth == 0 and i > 0 and s[i - 1] not in "+-(*/,":
            terms.append(cur)
            cur = ch
        else:
            cur += ch
    if depth != 0:
        raise ValueSyntaxError("unbalanced parenthesis in %r" % text)
    terms.append(cur)
    total = ZERO
    for term in terms:
        total = total + _parse_term(term, text)
    return total


def _parse_term(term: str, context: str) -> Cyclotomic:
    t = term
    sign = 1
    if t and t[0] in "+-":
        if t[0] == "-":
            sign = -1
        t = t[1:]
    if not t or t[0] in "+-":
        raise ValueSyntaxError("dangling sign in %r" % context)
    if "*" in t:
        coeff_text, _, root_text = t.partition("*")
        coeff = _parse_rat(coeff_text, context)
        root = _parse_root(root_text, context)
        return cyc(sign * coeff) * root
    if t.startswith("E"):
        return cyc(sign) * _parse_root(t, context)
    return cyc(sign * _parse_rat(t, context))


def _parse_rat(t: str, context: str) -> Fraction:
    try:
        if "/" in t:
            num, _, den = t.partition("/")
            return Fraction(int(num), int(den))
        return Fraction(int(t))
    except (ValueError, ZeroDivisionError):
        raise ValueSyntaxError("bad rational %r in %r" % (t, context)) from None


def _parse_root(t: str, context: str) -> Cyclotomic:
    if not (t.startswith("E(") and t.endswith(")")):
        raise ValueSyntaxError("bad root-of-unity term %r in %r" % (t, context))
    inner = t[2:-1]
    parts = inner.split(",")
    if len(parts) != 2:
        raise ValueSyntaxError("E(n,k) needs two arguments in %r" % context)
    try:
        n, k = int(parts[0]), int(parts[1])
    except ValueError:
        raise ValueSyntaxError("non-integer arguments in %r" % context) from None
    if n < 1:
        raise ValueSyntaxError("E(n,k) needs n >= 1 in %r" % context)
    return zeta(n, k)


ZERO = Cyclotomic(1, {}, 1)
ONE = Cyclotomic(1, {0: 1}, 1)
