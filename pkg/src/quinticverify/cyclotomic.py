"""Exact arithmetic in cyclotomic fields Q(zeta_N), plus reduction to prime fields.

Values are stored in the power basis {1, zeta, ..., zeta^(phi(N)-1)} reduced
modulo the N-th cyclotomic polynomial, as integer coefficient vectors over a
single positive denominator.  This representation is unique, so equality and
hashing of the coefficient data are coefficient-wise.  Conductors are never
minimised after arithmetic; binary operations lift both operands to the lcm
of their conductors.
"""
from __future__ import annotations

import threading
from fractions import Fraction
from math import gcd, lcm

from .errors import BadDenominator, ConductorMismatch, PrimeSearchExhausted

Rational = Fraction

_PRIME_CAP = 2**31


def euler_phi(n):
    if n < 1:
        raise ValueError("conductor must be positive")
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def divisors(n):
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _poly_divide_exact(num, den):
    """Exact division of integer polynomials (ascending coefficients)."""
    num = list(num)
    quot = [0] * (len(num) - len(den) + 1)
    for k in range(len(quot) - 1, -1, -1):
        c = num[k + len(den) - 1]
        if c % den[-1] != 0:
            raise ArithmeticError("non-exact polynomial division")
        q = c // den[-1]
        quot[k] = q
        if q:
            for i, d in enumerate(den):
                num[k + i] -= q * d
    if any(num):
        raise ArithmeticError("non-exact polynomial division")
    return quot


_cyclo_poly_cache = {}
_cyclo_poly_lock = threading.Lock()


def cyclotomic_polynomial(n):
    """Coefficients of Phi_n, ascending, monic, as a tuple of ints."""
    with _cyclo_poly_lock:
        got = _cyclo_poly_cache.get(n)
    if got is not None:
        return got
    if n == 1:
        result = (-1, 1)
    else:
        num = [0] * (n + 1)
        num[0], num[n] = -1, 1
        for d in divisors(n):
            if d < n:
                num = _poly_divide_exact(num, cyclotomic_polynomial(d))
        result = tuple(num)
    with _cyclo_poly_lock:
        _cyclo_poly_cache[n] = result
    return result


class _Ctx:
    """Per-conductor tables: reduction rows and powers of zeta_N."""

    __slots__ = ("n", "phi", "phi_poly", "_red", "_pows", "_pow_hi", "_root_index", "lock")

    def __init__(self, n):
        self.n = n
        self.phi_poly = cyclotomic_polynomial(n)
        self.phi = len(self.phi_poly) - 1
        # x^phi == -(c_0 + c_1 x + ... + c_{phi-1} x^{phi-1})
        base = tuple(-c for c in self.phi_poly[:-1])
        self._red = {self.phi: base}
        one = (1,) + (0,) * (self.phi - 1)
        self._pows = {0: one}
        self._pow_hi = 0
        self._root_index = None
        self.lock = threading.Lock()

    def red_row(self, k):
        row = self._red.get(k)
        if row is not None:
            return row
        with self.lock:
            hi = max(self._red)
            row = self._red[hi]
            phi = self.phi
            while hi < k:
                top = row[-1]
                shifted = [0] + list(row[:-1])
                if top:
                    base = self._red[phi]
                    for i in range(phi):
                        shifted[i] += top * base[i]
                row = tuple(shifted)
                hi += 1
                self._red[hi] = row
        return row

    def pow_vec(self, k):
        k %= self.n
        vec = self._pows.get(k)
        if vec is not None:
            return vec
        with self.lock:
            hi = self._pow_hi
            vec = self._pows[hi]
            phi = self.phi
            while hi < k:
                top = vec[-1]
                shifted = [0] + list(vec[:-1])
                if top:
                    base = self._red[phi]
                    for i in range(phi):
                        shifted[i] += top * base[i]
                vec = tuple(shifted)
                hi += 1
                self._pows[hi] = vec
            self._pow_hi = max(self._pow_hi, k)
        return vec

    def root_index(self):
        """Map power-basis vector -> k with vector == zeta_N^k."""
        if self._root_index is None:
            idx = {}
            for k in range(self.n):
                idx[self.pow_vec(k)] = k
            self._root_index = idx
        return self._root_index


_ctx_cache = {}
_ctx_lock = threading.Lock()


def _ctx(n):
    ctx = _ctx_cache.get(n)
    if ctx is None:
        with _ctx_lock:
            ctx = _ctx_cache.get(n)
            if ctx is None:
                ctx = _Ctx(n)
                _ctx_cache[n] = ctx
    return ctx


def _normalized(num, den):
    if den < 0:
        den = -den
        num = tuple(-c for c in num)
    g = den
    for c in num:
        if c:
            g = gcd(g, c)
            if g == 1:
                break
    if g > 1:
        num = tuple(c // g for c in num)
        den //= g
    if not any(num):
        den = 1
    return num, den


class Cyclo:
    """An exact element of Q(zeta_n) in reduced power-basis form."""

    __slots__ = ("n", "num", "den")

    def __init__(self, n, num, den=1, _normalize=True):
        self.n = n
        if _normalize:
            num, den = _normalized(tuple(num), den)
        self.num = num
        self.den = den

    # -- construction helpers -------------------------------------------------

    @staticmethod
    def from_rational(q, n=1):
        q = Fraction(q)
        phi = _ctx(n).phi
        num = (q.numerator,) + (0,) * (phi - 1)
        return Cyclo(n, num, q.denominator)

    @staticmethod
    def zero(n=1):
        return Cyclo(n, (0,) * _ctx(n).phi, 1, _normalize=False)

    @staticmethod
    def one(n=1):
        return Cyclo.from_rational(1, n)

    # -- structure -------------------------------------------------------------

    def is_zero(self):
        return not any(self.num)

    def is_one(self):
        return self.den == 1 and self.num[0] == 1 and not any(self.num[1:])

    def is_rational(self):
        return not any(self.num[1:])

    def as_rational(self):
        if not self.is_rational():
            return None
        return Fraction(self.num[0], self.den)

    def lift(self, m):
        """The same field element expressed with conductor m (n must divide m)."""
        if m == self.n:
            return self
        if m % self.n != 0:
            raise ConductorMismatch(f"conductor {self.n} does not divide {m}")
        ctx = _ctx(m)
        step = m // self.n
        acc = [0] * ctx.phi
        for i, c in enumerate(self.num):
            if c:
                vec = ctx.pow_vec(step * i)
                for j in range(ctx.phi):
                    acc[j] += c * vec[j]
        return Cyclo(m, tuple(acc), self.den)

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Cyclo):
            return other
        if isinstance(other, (int, Fraction)):
            return Cyclo.from_rational(other, 1)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        n = lcm(self.n, other.n)
        a, b = self.lift(n), other.lift(n)
        da, db = a.den, b.den
        num = tuple(x * db + y * da for x, y in zip(a.num, b.num))
        return Cyclo(n, num, da * db)

    __radd__ = __add__

    def __neg__(self):
        return Cyclo(self.n, tuple(-c for c in self.num), self.den, _normalize=False)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        # rational operands scale coefficient vectors directly
        if self.n == 1:
            c = self.num[0]
            return Cyclo(other.n, tuple(c * d for d in other.num), self.den * other.den)
        if other.n == 1:
            c = other.num[0]
            return Cyclo(self.n, tuple(c * d for d in self.num), self.den * other.den)
        n = lcm(self.n, other.n)
        a, b = self.lift(n), other.lift(n)
        ctx = _ctx(n)
        phi = ctx.phi
        if phi == 1:
            return Cyclo(n, (a.num[0] * b.num[0],), a.den * b.den)
        conv = [0] * (2 * phi - 1)
        bn = b.num
        for i, c in enumerate(a.num):
            if c:
                for j, d in enumerate(bn):
                    if d:
                        conv[i + j] += c * d
        acc = conv[:phi]
        for k in range(phi, 2 * phi - 1):
            c = conv[k]
            if c:
                row = ctx.red_row(k)
                for j in range(phi):
                    acc[j] += c * row[j]
        return Cyclo(n, tuple(acc), a.den * b.den)

    __rmul__ = __mul__

    def inverse(self):
        """Multiplicative inverse of a nonzero element, via Bezout mod Phi_n."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero cyclotomic")
        if self.is_rational():
            q = 1 / self.as_rational()
            return Cyclo.from_rational(q, self.n)
        ctx = _ctx(self.n)
        # Fast path for +/- zeta^k.
        root = self._signed_root_exponent()
        if root is not None:
            sign, k = root
            inv = root_of_unity(self.n, -k)
            return -inv if sign < 0 else inv
        a = [Fraction(c, self.den) for c in self.num]
        b = [Fraction(c) for c in ctx.phi_poly]
        s0, s1 = [Fraction(1)], [Fraction(0)]
        r0, r1 = a, b
        while any(r1):
            q, r = _frac_poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _frac_poly_sub(s0, _frac_poly_mul(q, s1))
        # r0 is the gcd, a nonzero constant since Phi_n is irreducible.
        c = r0[0]
        inv_coeffs = [x / c for x in s0]
        inv_coeffs += [Fraction(0)] * (ctx.phi - len(inv_coeffs))
        den = 1
        for x in inv_coeffs:
            den = den * x.denominator // gcd(den, x.denominator)
        num = tuple(int(x * den) for x in inv_coeffs[: ctx.phi])
        return Cyclo(self.n, num, den)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        acc = Cyclo.one(self.n)
        base = self
        while k:
            if k & 1:
                acc = acc * base
            base_needed = k > 1
            if base_needed:
                base = base * base
            k >>= 1
        return acc

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.n == other.n:
            return self.num == other.num and self.den == other.den
        n = lcm(self.n, other.n)
        a, b = self.lift(n), other.lift(n)
        return a.num == b.num and a.den == b.den

    __hash__ = None  # values at different conductors compare equal; hash by key()

    def key(self, ambient):
        """Hashable canonical key at a fixed ambient conductor."""
        lifted = self.lift(ambient)
        return (lifted.num, lifted.den)

    # -- root-of-unity detection -------------------------------------------

    def _signed_root_exponent(self):
        """(sign, k) with self == sign * zeta_n^k, or None."""
        if self.den != 1:
            return None
        idx = _ctx(self.n).root_index()
        k = idx.get(self.num)
        if k is not None:
            return (1, k)
        k = idx.get(tuple(-c for c in self.num))
        if k is not None:
            return (-1, k)
        return None

    def __repr__(self):
        from .parsing import format_cyclo

        return f"Cyclo({format_cyclo(self)!r}, n={self.n})"


def _frac_poly_divmod(a, b):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    bb = list(b)
    while bb and bb[-1] == 0:
        bb.pop()
    q = [Fraction(0)] * max(1, len(a) - len(bb) + 1)
    while len(a) >= len(bb) and any(a):
        k = len(a) - len(bb)
        c = a[-1] / bb[-1]
        q[k] = c
        for i, d in enumerate(bb):
            a[k + i] -= c * d
        while a and a[-1] == 0:
            a.pop()
    return q, a or [Fraction(0)]


def _frac_poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, c in enumerate(a):
        if c:
            for j, d in enumerate(b):
                out[i + j] += c * d
    return out


def _frac_poly_sub(a, b):
    out = [Fraction(0)] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] -= c
    return out


def root_of_unity(n, k):
    """zeta_n^k as a Cyclo with conductor n."""
    if n < 1:
        raise ValueError("conductor must be positive")
    ctx = _ctx(n)
    return Cyclo(n, ctx.pow_vec(k % n), 1, _normalize=False)


def lift_conductor(x, m):
    return x.lift(m)


def as_root_of_unity(x):
    """(order, exponent) with x == zeta_order^exponent, or None.

    Covers exactly the torsion units of Q(zeta_N), i.e. +/- zeta_N^k; the
    witness lives in mu_lcm(2, N).
    """
    root = x._signed_root_exponent()
    if root is None:
        return None
    sign, k = root
    n = x.n
    if sign > 0:
        order = n // gcd(n, k)
        exponent = (k // gcd(n, k)) % order if k else 0
        return (order, exponent)
    big = lcm(2, n)
    e = (big // 2 + k * (big // n)) % big
    g = gcd(big, e)
    order = big // g
    return (order, (e // g) % order)


# -- prime embeddings ---------------------------------------------------------


def _is_prime(p):
    if p < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if p % q == 0:
            return p == q
    d, s = p - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(s - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


def _smallest_primitive_root(p):
    if p == 2:
        return 1
    m = p - 1
    factors = []
    mm = m
    q = 2
    while q * q <= mm:
        if mm % q == 0:
            factors.append(q)
            while mm % q == 0:
                mm //= q
        q += 1
    if mm > 1:
        factors.append(mm)
    g = 2
    while True:
        if all(pow(g, m // q, p) != 1 for q in factors):
            return g
        g += 1


class PrimeEmbedding:
    """A prime p = 1 mod N with a fixed image of zeta_N of exact order N."""

    __slots__ = ("prime", "conductor", "zeta_image")

    def __init__(self, prime, conductor, zeta_image):
        self.prime = prime
        self.conductor = conductor
        self.zeta_image = zeta_image

    def __repr__(self):
        return f"PrimeEmbedding(p={self.prime}, N={self.conductor}, z={self.zeta_image})"


def choose_prime(n, skip=0):
    """The (skip+1)-th smallest prime p > 5 with p = 1 mod n, plus zeta image."""
    count = 0
    p = 7 if n == 1 else max(7, n + 1)
    # align p to 1 mod n
    if n > 1:
        r = p % n
        if r != 1:
            p += (1 - r) % n
    while p < _PRIME_CAP:
        if p > 5 and _is_prime(p):
            if count == skip:
                g = _smallest_primitive_root(p)
                z = pow(g, (p - 1) // n, p)
                return PrimeEmbedding(p, n, z)
            count += 1
        p += n if n > 1 else 1
    raise PrimeSearchExhausted(f"no prime = 1 mod {n} below 2^31")


def reduce_mod(x, emb):
    """Ring-homomorphic image of x in F_p under the embedding."""
    if emb.conductor % x.n != 0:
        raise ConductorMismatch(
            f"value conductor {x.n} does not divide embedding conductor {emb.conductor}"
        )
    p = emb.prime
    if x.den % p == 0:
        raise BadDenominator(f"denominator {x.den} divisible by p={p}")
    z = pow(emb.zeta_image, emb.conductor // x.n, p)
    acc = 0
    zp = 1
    for c in x.num:
        if c:
            acc = (acc + c * zp) % p
        zp = zp * z % p
    return acc * pow(x.den, p - 2, p) % p
