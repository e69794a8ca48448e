"""Exact arithmetic in F_q and F_{q^n} for q = p^e.

A field spec fixes one tower F_p < F_q < F_{q^n} realized as the single
quotient F_p[x]/(f) with f monic irreducible of degree e*n.  Elements
are packed integers: the value sum(c_i * p^i) encodes the coordinate
vector (c_0, ..., c_{e*n-1}) of an element in the power basis of the
modulus, constant term first.  F_q sits inside as the subfield fixed by
x -> x^(p^e).

Determinism:

* When no modulus is supplied, the lexicographically smallest monic
  irreducible is chosen (coefficient tuples compared constant term
  first).
* The stored generator xi is the first element of full multiplicative
  order q^n - 1 in the same constant-first ordering.

For orders up to 2^16 the spec precomputes exp/log tables over the
generator, making mul, inv and Frobenius O(1); beyond that (the guard
admits orders up to 2^24) schoolbook polynomial arithmetic is used.
All specs and elements are immutable, so concurrent use is safe.
"""

from __future__ import annotations

import itertools
from math import gcd

import numpy as np

from . import _linalg
from .errors import (
    DependentBasisError,
    FieldTooLargeError,
    GcdViolationError,
    NonPrimeError,
    NotADivisorError,
    ReducibleModulusError,
    SpecMismatchError,
)

MAX_FIELD_ORDER = 1 << 24
_TABLE_LIMIT = 1 << 16


def is_prime(x: int) -> bool:
    if x < 2:
        return False
    i = 2
    while i * i <= x:
        if x % i == 0:
            return False
        i += 1
    return True


def factorize(x: int) -> dict:
    """Prime factorization by trial division (fine for x <= 2^24)."""
    out = {}
    i = 2
    while i * i <= x:
        while x % i == 0:
            out[i] = out.get(i, 0) + 1
            x //= i
        i += 1
    if x > 1:
        out[x] = out.get(x, 0) + 1
    return out


# ----------------------------------------------------------------------------
# dense polynomials over F_p: lists of ints, constant term first
# ----------------------------------------------------------------------------

def _ptrim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _ptrim(out)


def _pmod(a, f, p):
    """a mod f with f monic."""
    a = list(a)
    _ptrim(a)
    d = len(f) - 1
    while len(a) > d:
        c = a[-1]
        if c:
            off = len(a) - 1 - d
            for i in range(d):
                a[off + i] = (a[off + i] - c * f[i]) % p
        a.pop()
    return _ptrim(a)


def _pgcd(a, b, p):
    a, b = list(a), list(b)
    _ptrim(a)
    _ptrim(b)
    while b:
        lead_inv = pow(b[-1], -1, p)
        bb = [(x * lead_inv) % p for x in b]
        a, b = b, _pmod(a, bb, p)
    return a


def _ppowmod(a, t, f, p):
    """a^t mod f by square and multiply."""
    result = [1]
    base = _pmod(a, f, p)
    while t:
        if t & 1:
            result = _pmod(_pmul(result, base, p), f, p)
        base = _pmod(_pmul(base, base, p), f, p)
        t >>= 1
    return result


def poly_is_irreducible(f, p) -> bool:
    """Rabin test: f monic of degree d is irreducible over F_p iff
    x^(p^d) = x mod f and gcd(x^(p^(d/r)) - x, f) = 1 for primes r | d."""
    d = len(f) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    x = [0, 1]
    top = _ppowmod(x, p ** d, f, p)
    if _ptrim([(a - b) % p for a, b in itertools.zip_longest(top, x, fillvalue=0)]):
        return False
    for r in factorize(d):
        h = _ppowmod(x, p ** (d // r), f, p)
        diff = _ptrim([(a - b) % p for a, b in itertools.zip_longest(h, x, fillvalue=0)])
        g = _pgcd(diff, f, p)
        if len(g) - 1 != 0:
            return False
    return True


def _lex_smallest_irreducible(p, d):
    """Smallest monic irreducible of degree d, constant-first lex order."""
    for tail in itertools.product(range(p), repeat=d):
        f = list(tail) + [1]
        if poly_is_irreducible(f, p):
            return f
    raise AssertionError("no irreducible polynomial found")  # unreachable


# ----------------------------------------------------------------------------
# the field spec
# ----------------------------------------------------------------------------

class FieldSpec:
    """Immutable description of F_{q^n} with q = p^e.

    Elements are packed ints in range(order).  All arithmetic methods
    take and return packed ints.
    """

    def __init__(self, p: int, e: int, n: int, modulus=None, *, max_order: int = MAX_FIELD_ORDER):
        if not is_prime(p):
            raise NonPrimeError(f"p = {p} is not prime")
        if e < 1 or n < 1:
            raise ReducibleModulusError(f"e = {e}, n = {n} must be positive")
        self.p = p
        self.e = e
        self.n = n
        self.q = p ** e
        self.degree = e * n
        self.order = p ** self.degree
        if self.order > max_order:
            raise FieldTooLargeError(
                f"q^n = {self.order} exceeds the guard {max_order}")
        if modulus is None:
            modulus = _lex_smallest_irreducible(p, self.degree)
        else:
            modulus = [int(c) % p for c in modulus]
            if len(modulus) != self.degree + 1 or modulus[-1] != 1:
                raise ReducibleModulusError(
                    f"modulus must be monic of degree {self.degree} over F_{p}")
            if not poly_is_irreducible(modulus, p):
                raise ReducibleModulusError("modulus is reducible over F_%d" % p)
        self.modulus = tuple(modulus)
        self.zero = 0
        self.one = 1

        # reduction table: digits of x^(degree+i) mod f, i = 0..degree-2
        self._xred = []
        cur = [(-c) % p for c in modulus[:-1]]  # x^degree
        self._xred.append(list(cur))
        for _ in range(self.degree - 2):
            cur = [0] + cur
            cur = _pmod(cur, list(modulus), p)
            cur = cur + [0] * (self.degree - len(cur))
            self._xred.append(list(cur))

        self._exp = None
        self._log = None
        self._unit_factors = factorize(self.order - 1) if self.order > 2 else {}
        self.generator = self._find_generator()

        # fast tables
        if self.order <= _TABLE_LIMIT:
            exp = [0] * (self.order - 1)
            log = [-1] * self.order
            v = 1
            for i in range(self.order - 1):
                exp[i] = v
                log[v] = i
                v = self._mul_generic(v, self.generator)
            self._exp = exp
            self._log = log

        # digit tuples, for p > 2 addition
        self._digits_cache = None
        if p != 2 and self.order <= _TABLE_LIMIT:
            self._digits_cache = [tuple(self._int_digits(v)) for v in range(self.order)]

        # generator of F_q over F_p and its power basis (for vec_repr grouping)
        if e == 1:
            self._qgen_powers = (1,)
        else:
            g = self.pow(self.generator, (self.order - 1) // (self.q - 1))
            self._qgen_powers = tuple(self.pow(g, t) for t in range(e))

        self._subfield_cache: dict[int, tuple] = {}
        self._vecrepr_cache: dict[tuple, tuple] = {}
        self._interp_cache: dict[tuple, list] = {}
        self._misc_cache: dict = {}

    # -- packing ---------------------------------------------------------

    def _int_digits(self, v):
        out = []
        p = self.p
        for _ in range(self.degree):
            out.append(v % p)
            v //= p
        return out

    def coords(self, a: int) -> tuple:
        """Coordinates of a over F_p in the power basis, constant first."""
        return tuple(self._int_digits(a))

    def from_coords(self, coords) -> int:
        p = self.p
        v = 0
        for c in reversed(list(coords)):
            v = v * p + (int(c) % p)
        return v

    def elements(self):
        return range(self.order)

    # -- ring operations ---------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self._digits_cache is not None:
            da, db = self._digits_cache[a], self._digits_cache[b]
            p = self.p
            v = 0
            for x, y in zip(reversed(da), reversed(db)):
                v = v * p + (x + y) % p
            return v
        p = self.p
        v = 0
        da, db = self._int_digits(a), self._int_digits(b)
        for x, y in zip(reversed(da), reversed(db)):
            v = v * p + (x + y) % p
        return v

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        p = self.p
        v = 0
        for x in reversed(self._int_digits(a)):
            v = v * p + (-x) % p
        return v

    def sub(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        return self.add(a, self.neg(b))

    def _mul_generic(self, a: int, b: int) -> int:
        p, d = self.p, self.degree
        da, db = self._int_digits(a), self._int_digits(b)
        conv = [0] * (2 * d - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    conv[i + j] = (conv[i + j] + x * y) % p
        for i in range(2 * d - 2, d - 1, -1):
            c = conv[i]
            if c:
                red = self._xred[i - d]
                for j, r in enumerate(red):
                    conv[j] = (conv[j] + c * r) % p
        v = 0
        for x in reversed(conv[:d]):
            v = v * p + x
        return v

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self._exp is not None:
            return self._exp[(self._log[a] + self._log[b]) % (self.order - 1)]
        return self._mul_generic(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no multiplicative inverse")
        if self._exp is not None:
            return self._exp[(-self._log[a]) % (self.order - 1)]
        # extended Euclid on representatives: u*a + v*f = g, g a unit
        p, f = self.p, list(self.modulus)
        g, u, _ = _pext_gcd(_ptrim(self._int_digits(a)), f, p)
        assert len(g) == 1
        c = pow(g[0], -1, p)
        out = _pmod([(x * c) % p for x in u], f, p)
        out = out + [0] * (self.degree - len(out))
        return self.from_coords(out)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, t: int) -> int:
        if a == 0:
            if t == 0:
                return 1
            if t < 0:
                raise ZeroDivisionError("0 has no negative power")
            return 0
        t %= self.order - 1 if self.order > 2 else 1
        if self._exp is not None:
            return self._exp[(self._log[a] * t) % (self.order - 1)]
        result, base = 1, a
        while t:
            if t & 1:
                result = self._mul_generic(result, base)
            base = self._mul_generic(base, base)
            t >>= 1
        return result

    # -- Frobenius and norms -------------------------------------------------

    def frobenius(self, a: int, j: int) -> int:
        """a^(q^j); j is reduced mod n, negative j allowed."""
        j %= self.n
        if j == 0 or a == 0:
            return a
        return self.pow(a, pow(self.q, j, self.order - 1) if self.order > 2 else 1)

    def frobenius_p(self, a: int, j: int) -> int:
        """a^(p^j), the j-th power of the absolute Frobenius."""
        j %= self.degree
        if j == 0 or a == 0:
            return a
        return self.pow(a, pow(self.p, j, self.order - 1) if self.order > 2 else 1)

    def relative_norm(self, a: int, s: int) -> int:
        """prod_{i<n} a^(q^(s i)), an element of F_q when gcd(s, n) = 1."""
        if gcd(s, self.n) != 1:
            raise GcdViolationError(f"gcd(s={s}, n={self.n}) != 1")
        out = 1
        for i in range(self.n):
            out = self.mul(out, self.frobenius(a, (s * i) % self.n))
        return out

    def multiplicative_order(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no multiplicative order")
        t = self.order - 1
        for r, mult in factorize(t).items():
            for _ in range(mult):
                if self.pow(a, t // r) == 1:
                    t //= r
                else:
                    break
        return t

    def _find_generator(self) -> int:
        target = self.order - 1
        for tail in itertools.product(range(self.p), repeat=self.degree):
            a = self.from_coords(tail)
            if a == 0:
                continue
            if all(self.pow(a, target // r) != 1 for r in self._unit_factors):
                return a
        raise AssertionError("no generator found")  # unreachable

    # -- subfields ---------------------------------------------------------

    def subfield_list(self, ell: int) -> tuple:
        """All q^ell elements fixed by x -> x^(q^ell), sorted; ell | n."""
        if self.n % ell != 0:
            raise NotADivisorError(f"ell = {ell} does not divide n = {self.n}")
        if ell not in self._subfield_cache:
            size = self.q ** ell
            if size == self.order:
                elems = tuple(range(self.order))
            else:
                g = self.pow(self.generator, (self.order - 1) // (size - 1))
                seen = {0}
                v = 1
                for _ in range(size - 1):
                    seen.add(v)
                    v = self.mul(v, g)
                elems = tuple(sorted(seen))
            self._subfield_cache[ell] = elems
        return self._subfield_cache[ell]

    def subfield_elements(self, ell: int) -> frozenset:
        return frozenset(self.subfield_list(ell))

    def fq_list(self) -> tuple:
        """The q elements of the ground field F_q, sorted."""
        return self.subfield_list(1)

    # -- coordinates over F_q -------------------------------------------------

    def power_basis(self) -> tuple:
        """(1, xi, ..., xi^(n-1)), the default F_q-basis of F_{q^n}."""
        return tuple(self.pow(self.generator, i) for i in range(self.n))

    def _vecrepr_solver(self, basis):
        key = tuple(basis)
        if key not in self._vecrepr_cache:
            if len(key) != self.n:
                raise DependentBasisError(
                    f"need {self.n} basis elements, got {len(key)}")
            cols = []
            for b in key:
                for g in self._qgen_powers:
                    cols.append(self.coords(self.mul(g, b)))
            t = np.array(cols, dtype=np.int64).T  # degree x degree
            try:
                tinv = _linalg.modp_inv(t, self.p)
            except Exception as exc:
                raise DependentBasisError("basis is F_q-linearly dependent") from exc
            self._vecrepr_cache[key] = tinv
        return self._vecrepr_cache[key]

    def vec_repr(self, a: int, basis=None) -> tuple:
        """Coordinates of a over F_q in the given (default: power) basis."""
        if basis is None:
            basis = self.power_basis()
        tinv = self._vecrepr_solver(basis)
        x = (tinv @ np.array(self.coords(a), dtype=np.int64)) % self.p
        e = self.e
        out = []
        for j in range(self.n):
            c = 0
            for t in range(e):
                c = self.add(c, self.mul(int(x[j * e + t]), self._qgen_powers[t]))
            out.append(c)
        return tuple(out)

    def from_vec(self, coords, basis=None) -> int:
        if basis is None:
            basis = self.power_basis()
        a = 0
        for c, b in zip(coords, basis):
            a = self.add(a, self.mul(c, b))
        return a

    # -- misc ---------------------------------------------------------------

    def check_same(self, other: "FieldSpec"):
        if self is not other:
            raise SpecMismatchError("operands live over different field specs")

    def serialize(self) -> dict:
        return {
            "p": self.p,
            "e": self.e,
            "n": self.n,
            "modulus": list(self.modulus),
            "generator": list(self.coords(self.generator)),
        }

    def __repr__(self):
        return f"FieldSpec(p={self.p}, e={self.e}, n={self.n})"


def _psub(a, b, p):
    out = [(x - y) % p for x, y in itertools.zip_longest(a, b, fillvalue=0)]
    return _ptrim(out)


def _pdivmod(a, b, p):
    a = _ptrim(list(a))
    b = _ptrim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    binv = pow(b[-1], -1, p)
    q_ = [0] * max(0, len(a) - len(b) + 1)
    while a and len(a) >= len(b):
        c = (a[-1] * binv) % p
        off = len(a) - len(b)
        q_[off] = c
        for i, x in enumerate(b):
            a[off + i] = (a[off + i] - c * x) % p
        _ptrim(a)
    return _ptrim(q_), a


def _pext_gcd(a, b, p):
    """(g, u, v) with u*a + v*b = g = gcd(a, b)."""
    r0, r1 = _ptrim(list(a)), _ptrim(list(b))
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q_, r = _pdivmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _psub(s0, _pmul(q_, s1, p), p)
        t0, t1 = t1, _psub(t0, _pmul(q_, t1, p), p)
    return r0, s0, t0


def field_create(p: int, e: int, n: int, modulus=None, *, max_order: int = MAX_FIELD_ORDER) -> FieldSpec:
    """Create the spec for F_{q^n}, q = p^e.

    With no modulus, the lexicographically smallest monic irreducible
    of degree e*n over F_p is selected (constant-first coefficient
    order), so repeated runs agree.
    """
    return FieldSpec(p, e, n, modulus, max_order=max_order)
