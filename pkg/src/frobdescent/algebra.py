"""Exact arithmetic over finite fields GF(p^k), polynomials, rational
functions in one variable, and dense linear algebra.

Field elements are encoded as integers 0 <= a < q whose base-p digits are
the coefficients of a polynomial in the generator u modulo the field's
defining polynomial.  All hot loops work on these integers through the
``GF`` methods; ``FqElem`` is the user-facing wrapper with operators.
"""
from __future__ import annotations

import itertools
import random
from functools import lru_cache, reduce
from typing import Iterable, Sequence

MAX_P = 13
MAX_K = 4


class FieldError(ArithmeticError):
    pass


class NotPthPower(ValueError):
    """Raised when a p-th root is requested of something that has none."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, int(n**0.5) + 1))


def _digits(a: int, p: int, k: int) -> list[int]:
    out = []
    for _ in range(k):
        a, r = divmod(a, p)
        out.append(r)
    return out


def _undigits(ds: Sequence[int], p: int) -> int:
    a = 0
    for d in reversed(ds):
        a = a * p + d
    return a


def _pmulmod(a: list[int], b: list[int], mod: Sequence[int], p: int) -> list[int]:
    """Multiply coefficient lists over F_p modulo the monic ``mod``."""
    k = len(mod) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    for i in range(len(prod) - 1, k - 1, -1):
        c = prod[i]
        if c:
            for j in range(k + 1):
                prod[i - k + j] = (prod[i - k + j] - c * mod[j]) % p
    return (prod + [0] * k)[:k]


def _is_irreducible_fp(mod: Sequence[int], p: int) -> bool:
    # brute force root/factor test is enough at desk scale: no factor of degree <= k/2
    k = len(mod) - 1
    for d in range(1, k // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            fac = list(tail) + [1]
            if not _prem(list(mod), fac, p):
                return False
    return True


def _prem(a: list[int], b: list[int], p: int) -> list[int]:
    a = a[:]
    inv = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        c = a[-1] * inv % p
        shift = len(a) - len(b)
        for j, y in enumerate(b):
            a[shift + j] = (a[shift + j] - c * y) % p
        while a and a[-1] == 0:
            a.pop()
    return a


def least_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Monic irreducible of degree k over F_p whose coefficient vector
    (c_0, ..., c_{k-1}) has the smallest base-p encoding."""
    if k == 1:
        return (0, 1)
    for code in range(p**k):
        mod = tuple(_digits(code, p, k)) + (1,)
        if mod[0] and _is_irreducible_fp(mod, p):
            return mod
    raise FieldError(f"no irreducible polynomial of degree {k} over F_{p}")


class GF:
    """The finite field F_q, q = p^k, with integer-encoded elements."""

    def __init__(self, p: int, k: int = 1, modulus: Sequence[int] | None = None):
        if not is_prime(p):
            raise FieldError(f"{p} is not prime")
        if p > MAX_P or k > MAX_K or k < 1:
            raise FieldError(f"F_{p}^{k} is outside the desk-scale caps p <= {MAX_P}, k <= {MAX_K}")
        self.p, self.k, self.q = p, k, p**k
        if modulus is None:
            modulus = least_irreducible(p, k)
        modulus = tuple(c % p for c in modulus)
        if len(modulus) != k + 1 or modulus[-1] != 1:
            raise FieldError("modulus must be monic of degree k")
        if k > 1 and not _is_irreducible_fp(modulus, p):
            raise FieldError(f"modulus {modulus} is reducible over F_{p}")
        self.modulus = modulus
        self._build_tables()

    def _build_tables(self):
        p, k, q = self.p, self.k, self.q
        if k == 1:
            self._exp = None
            self.add = lambda a, b: (a + b) % p
            self.sub = lambda a, b: (a - b) % p
            self.neg = lambda a: -a % p
            self.mul = lambda a, b: a * b % p
            # log tables still useful for pow/inverse
        exp = [0] * (q - 1)
        log = [0] * q
        for g in range(2, q) if q > 2 else [1]:
            seen = 1
            x = 1
            ok = True
            for i in range(q - 1):
                exp[i] = x
                log[x] = i
                x = self._slow_mul(x, g)
                if x == 1 and i < q - 2:
                    ok = False
                    break
            if ok:
                self.generator = g
                break
        self._exp, self._log = exp, log
        if k > 1:
            digits = [_digits(a, p, k) for a in range(q)]
            self._digits = digits
            if q <= 1024:
                table = [[_undigits([(x + y) % p for x, y in zip(digits[a], digits[b])], p)
                          for b in range(q)] for a in range(q)]
                self.add = lambda a, b: table[a][b]
            else:
                self.add = lambda a, b: _undigits([(x + y) % p for x, y in zip(digits[a], digits[b])], p)
            negs = [_undigits([-x % p for x in digits[a]], p) for a in range(q)]
            self._negs = negs
            self.neg = lambda a: negs[a]
            self.sub = lambda a, b: self.add(a, negs[b])
            qm1 = q - 1

            def mul(a, b):
                if a == 0 or b == 0:
                    return 0
                return exp[(log[a] + log[b]) % qm1]
            self.mul = mul

    def _slow_mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        return _undigits(_pmulmod(_digits(a, self.p, self.k), _digits(b, self.p, self.k),
                                  self.modulus, self.p), self.p)

    # -- scalar ops on encoded ints --------------------------------------
    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError(f"inverse of 0 in {self}")
        return self._exp[-self._log[a] % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("0 to a negative power")
            return 1 if e == 0 else 0
        return self._exp[self._log[a] * e % (self.q - 1)]

    def frob(self, a: int, times: int = 1) -> int:
        return self.pow(a, self.p**times)

    def pth_root(self, a: int) -> int:
        """Unique b with b^p = a, namely a^(p^(k-1))."""
        return self.pow(a, self.p ** (self.k - 1))

    def sqrt(self, a: int) -> int | None:
        """A square root of a, or None.  Returns the smaller-encoded root."""
        if a == 0:
            return 0
        if self.p == 2:
            return self.pow(a, self.q // 2)
        lg = self._log[a]
        if lg % 2:
            return None
        r = self._exp[lg // 2]
        return min(r, self.neg(r))

    def from_int(self, n: int) -> int:
        return n % self.p

    def from_coeffs(self, cs: Sequence[int]) -> int:
        cs = [c % self.p for c in cs]
        if len(cs) > self.k:
            # reduce modulo the defining polynomial
            cs = _prem(cs + [], list(self.modulus), self.p) if len(cs) >= len(self.modulus) else cs
        return _undigits(list(cs) + [0] * (self.k - len(cs)), self.p)

    def coeffs(self, a: int) -> list[int]:
        return _digits(a, self.p, self.k)

    def gen(self) -> int:
        """The class of u (the polynomial generator)."""
        return self.p if self.k > 1 else 1

    def elements(self) -> range:
        return range(self.q)

    def is_square(self, a: int) -> bool:
        return self.sqrt(a) is not None

    def __call__(self, value) -> "FqElem":
        if isinstance(value, FqElem):
            if value.field != self:
                raise FieldError("element of a different field")
            return value
        if isinstance(value, (list, tuple)):
            return FqElem(self, self.from_coeffs(value))
        return FqElem(self, self.from_int(int(value)))

    def __repr__(self):
        return f"GF({self.p}^{self.k})" if self.k > 1 else f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, GF) and (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    # -- subfields ---------------------------------------------------------
    def embedding(self, target: "GF"):
        """Return a function mapping encoded elements of self into target.

        The generator goes to the least-encoded root of self's modulus in
        target.  For prime fields this is the canonical inclusion.
        """
        return _embedding(self, target)

    def contains_degree(self, a: int) -> int:
        """Degree over F_p of the smallest subfield containing a."""
        for d in range(1, self.k + 1):
            if self.k % d == 0 and self.frob(a, d) == a:
                return d
        return self.k


@lru_cache(maxsize=None)
def field(p: int, k: int = 1) -> GF:
    """Shared default field instance F_{p^k}."""
    return GF(p, k)


@lru_cache(maxsize=None)
def _embedding_table(src: GF, dst: GF) -> tuple[int, ...] | None:
    if dst.p != src.p or dst.k % src.k:
        raise FieldError(f"{src} does not embed in {dst}")
    if src.k == 1:
        return None
    # least root of src.modulus in dst
    mod = src.modulus
    for r in range(dst.q):
        acc = 0
        for c in reversed(mod):
            acc = dst.add(dst.mul(acc, r), c)
        if acc == 0:
            break
    else:
        raise FieldError("modulus has no root in target")
    powers = [1]
    for _ in range(src.k - 1):
        powers.append(dst.mul(powers[-1], r))
    table = []
    for a in range(src.q):
        acc = 0
        for c, pw in zip(src.coeffs(a), powers):
            if c:
                acc = dst.add(acc, dst.mul(c, pw))
        table.append(acc)
    return tuple(table)


def _embedding(src: GF, dst: GF):
    table = _embedding_table(src, dst)
    if table is None:
        return lambda a: a
    return table.__getitem__


class FqElem:
    """An element of a finite field, with arithmetic operators."""

    __slots__ = ("field", "value")

    def __init__(self, fld: GF, value: int):
        self.field = fld
        self.value = value

    def _other(self, b) -> int:
        if isinstance(b, FqElem):
            if b.field != self.field:
                raise FieldError(f"mixed fields {self.field} and {b.field}")
            return b.value
        if isinstance(b, int):
            return self.field.from_int(b)
        return NotImplemented

    def __add__(self, b):
        v = self._other(b)
        return NotImplemented if v is NotImplemented else FqElem(self.field, self.field.add(self.value, v))

    __radd__ = __add__

    def __sub__(self, b):
        v = self._other(b)
        return NotImplemented if v is NotImplemented else FqElem(self.field, self.field.sub(self.value, v))

    def __rsub__(self, b):
        v = self._other(b)
        return NotImplemented if v is NotImplemented else FqElem(self.field, self.field.sub(v, self.value))

    def __mul__(self, b):
        v = self._other(b)
        return NotImplemented if v is NotImplemented else FqElem(self.field, self.field.mul(self.value, v))

    __rmul__ = __mul__

    def __truediv__(self, b):
        v = self._other(b)
        return NotImplemented if v is NotImplemented else FqElem(self.field, self.field.div(self.value, v))

    def __rtruediv__(self, b):
        v = self._other(b)
        return NotImplemented if v is NotImplemented else FqElem(self.field, self.field.div(v, self.value))

    def __neg__(self):
        return FqElem(self.field, self.field.neg(self.value))

    def __pow__(self, e: int):
        return FqElem(self.field, self.field.pow(self.value, e))

    def inverse(self) -> "FqElem":
        return FqElem(self.field, self.field.inv(self.value))

    def pth_root(self) -> "FqElem":
        return FqElem(self.field, self.field.pth_root(self.value))

    def __eq__(self, b):
        if isinstance(b, FqElem):
            return self.field == b.field and self.value == b.value
        if isinstance(b, int):
            return self.value == self.field.from_int(b)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        if self.field.k == 1:
            return str(self.value)
        terms = [f"{c}" if i == 0 else f"{c}*u" if i == 1 else f"{c}*u^{i}"
                 for i, c in enumerate(self.field.coeffs(self.value)) if c]
        return "+".join(reversed(terms)) or "0"


# ---------------------------------------------------------------------------
# univariate polynomials


class Poly:
    """Univariate polynomial over a GF, coefficients low-to-high as encoded ints."""

    __slots__ = ("F", "c")

    def __init__(self, F: GF, coeffs: Iterable[int] = ()):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        self.F = F
        self.c = tuple(c)

    @classmethod
    def x(cls, F: GF) -> "Poly":
        return cls(F, (0, 1))

    @classmethod
    def const(cls, F: GF, a: int) -> "Poly":
        return cls(F, (a,))

    @classmethod
    def monomial(cls, F: GF, n: int, a: int = 1) -> "Poly":
        return cls(F, [0] * n + [a])

    @property
    def deg(self) -> int:
        return len(self.c) - 1

    def is_zero(self) -> bool:
        return not self.c

    def lc(self) -> int:
        return self.c[-1] if self.c else 0

    def __bool__(self):
        return bool(self.c)

    def __eq__(self, o):
        return isinstance(o, Poly) and self.F == o.F and self.c == o.c

    def __hash__(self):
        return hash(self.c)

    def __repr__(self):
        if not self.c:
            return "0"
        out = []
        for i in range(len(self.c) - 1, -1, -1):
            a = self.c[i]
            if not a:
                continue
            s = repr(FqElem(self.F, a))
            if self.F.k > 1 and "+" in s:
                s = f"({s})"
            mon = "" if i == 0 else "t" if i == 1 else f"t^{i}"
            if mon and a == 1:
                out.append(mon)
            elif mon:
                out.append(f"{s}*{mon}")
            else:
                out.append(s)
        return " + ".join(out)

    def __add__(self, o: "Poly") -> "Poly":
        F = self.F
        a, b = self.c, o.c
        if len(a) < len(b):
            a, b = b, a
        return Poly(F, [F.add(x, b[i]) if i < len(b) else x for i, x in enumerate(a)])

    def __neg__(self):
        return Poly(self.F, [self.F.neg(x) for x in self.c])

    def __sub__(self, o: "Poly") -> "Poly":
        return self + (-o)

    def __mul__(self, o) -> "Poly":
        F = self.F
        if isinstance(o, int):
            return Poly(F, [F.mul(x, o) for x in self.c])
        a, b = self.c, o.c
        if not a or not b:
            return Poly(F)
        out = [0] * (len(a) + len(b) - 1)
        add, mul = F.add, F.mul
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = add(out[i + j], mul(x, y))
        return Poly(F, out)

    def scale(self, a: int) -> "Poly":
        return Poly(self.F, [self.F.mul(x, a) for x in self.c])

    def __pow__(self, e: int) -> "Poly":
        result = Poly.const(self.F, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def divmod(self, o: "Poly") -> tuple["Poly", "Poly"]:
        if not o.c:
            raise ZeroDivisionError("polynomial division by zero")
        F = self.F
        r = list(self.c)
        q = [0] * max(0, len(r) - len(o.c) + 1)
        inv = F.inv(o.c[-1])
        db = len(o.c) - 1
        for i in range(len(r) - 1, db - 1, -1):
            c = r[i]
            if c:
                c = F.mul(c, inv)
                q[i - db] = c
                for j, y in enumerate(o.c):
                    r[i - db + j] = F.sub(r[i - db + j], F.mul(c, y))
        return Poly(F, q), Poly(F, r[:db])

    def __floordiv__(self, o):
        return self.divmod(o)[0]

    def __mod__(self, o):
        return self.divmod(o)[1]

    def monic(self) -> "Poly":
        if not self.c:
            return self
        return self.scale(self.F.inv(self.c[-1]))

    def __call__(self, a: int) -> int:
        F = self.F
        acc = 0
        for x in reversed(self.c):
            acc = F.add(F.mul(acc, a), x)
        return acc

    def deriv(self) -> "Poly":
        F = self.F
        return Poly(F, [F.mul(F.from_int(i), x) for i, x in enumerate(self.c)][1:])

    def map_coeffs(self, fn, F: GF | None = None) -> "Poly":
        return Poly(F or self.F, [fn(x) for x in self.c])

    def compose(self, o: "Poly") -> "Poly":
        acc = Poly(self.F)
        for x in reversed(self.c):
            acc = acc * o + Poly.const(self.F, x)
        return acc

    def pth_root(self) -> "Poly":
        """g with g^p = self; raises NotPthPower if some exponent is not divisible by p."""
        p = self.F.p
        out = []
        for i, x in enumerate(self.c):
            if x and i % p:
                raise NotPthPower(f"exponent {i} not divisible by p={p}")
        for i in range(0, len(self.c), p):
            out.append(self.F.pth_root(self.c[i]))
        return Poly(self.F, out)

    def powmod(self, e: int, m: "Poly") -> "Poly":
        result = Poly.const(self.F, 1)
        base = self % m
        while e:
            if e & 1:
                result = (result * base) % m
            base = (base * base) % m
            e >>= 1
        return result


def poly_gcd(a: Poly, b: Poly) -> Poly:
    while b.c:
        a, b = b, a % b
    return a.monic()


def poly_xgcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """(g, s, t) with s*a + t*b = g monic."""
    F = a.F
    r0, r1 = a, b
    s0, s1 = Poly.const(F, 1), Poly(F)
    t0, t1 = Poly(F), Poly.const(F, 1)
    while r1.c:
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if not r0.c:
        return r0, s0, t0
    inv = F.inv(r0.lc())
    return r0.scale(inv), s0.scale(inv), t0.scale(inv)


def roots_over_extension(f: Poly, k: int, target: GF | None = None) -> list[FqElem]:
    """All roots of f in the degree-k extension of f's coefficient field.

    Returns FqElem values in ``target`` (default GF(p, k0*k)), sorted by encoding.
    """
    if not f.c:
        raise ValueError("roots of the zero polynomial")
    src = f.F
    if target is None:
        target = field(src.p, src.k * k)
    emb = src.embedding(target)
    g = f.map_coeffs(emb, target)
    return [FqElem(target, r) for r in poly_roots(g)]


def poly_roots(f: Poly) -> list[int]:
    """Roots (encoded, sorted, without multiplicity) of f in its own coefficient field."""
    F = f.F
    if f.deg <= 0:
        return []
    if F.q <= 64:
        return [a for a in range(F.q) if f(a) == 0]
    x = Poly.x(F)
    g = poly_gcd(f, x.powmod(F.q, f) - x)
    roots: list[int] = []
    _split(g, roots, random.Random(0))
    return sorted(set(roots))


def _split(g: Poly, out: list[int], rng: random.Random):
    F = g.F
    if g.deg <= 0:
        return
    if g.deg == 1:
        out.append(F.neg(g.monic().c[0]))
        return
    x = Poly.x(F)
    while True:
        a = rng.randrange(F.q)
        if F.p == 2:
            # trace map sum_{i<m} (a x)^(2^i), m = log2 q
            base = (x.scale(a if a else 1)) % g
            acc, term = base, base
            for _ in range(F.k - 1 if F.k > 1 else 0):
                term = (term * term) % g
                acc = acc + term
            h = poly_gcd(g, acc)
        else:
            h = poly_gcd(g, (x + Poly.const(F, a)).powmod((F.q - 1) // 2, g) - Poly.const(F, 1))
        if 0 < h.deg < g.deg:
            _split(h, out, rng)
            _split(g // h, out, rng)
            return


# ---------------------------------------------------------------------------
# rational functions in one variable


class RatFunc:
    """num/den in F(t), den monic and coprime to num."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None, _normalized: bool = False):
        F = num.F
        if den is None:
            den = Poly.const(F, 1)
        if not den.c:
            raise ZeroDivisionError("rational function with zero denominator")
        if not _normalized:
            if not num.c:
                den = Poly.const(F, 1)
            else:
                g = poly_gcd(num, den)
                if g.deg > 0:
                    num, den = num // g, den // g
                lc = den.lc()
                if lc != 1:
                    inv = F.inv(lc)
                    num, den = num.scale(inv), den.scale(inv)
        self.num, self.den = num, den

    @property
    def F(self) -> GF:
        return self.num.F

    @classmethod
    def const(cls, F: GF, a: int) -> "RatFunc":
        return cls(Poly.const(F, a), Poly.const(F, 1), True)

    @classmethod
    def zero(cls, F: GF) -> "RatFunc":
        return cls(Poly(F), Poly.const(F, 1), True)

    def is_zero(self) -> bool:
        return not self.num.c

    def __bool__(self):
        return bool(self.num.c)

    def is_const(self) -> bool:
        return self.num.deg <= 0 and self.den.deg == 0

    def __eq__(self, o):
        return isinstance(o, RatFunc) and self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        if self.den.deg == 0:
            return repr(self.num)
        return f"({self.num})/({self.den})"

    def __add__(self, o: "RatFunc") -> "RatFunc":
        if not o.num.c:
            return self
        if not self.num.c:
            return o
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    def __neg__(self):
        return RatFunc(-self.num, self.den, True)

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, o) -> "RatFunc":
        if isinstance(o, int):
            return RatFunc(self.num.scale(o), self.den)
        if not self.num.c or not o.num.c:
            return RatFunc.zero(self.F)
        return RatFunc(self.num * o.num, self.den * o.den)

    def inverse(self) -> "RatFunc":
        if not self.num.c:
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, o: "RatFunc") -> "RatFunc":
        return self * o.inverse()

    def __pow__(self, e: int) -> "RatFunc":
        if e < 0:
            return self.inverse() ** (-e)
        return RatFunc(self.num**e, self.den**e, True)

    def deriv(self) -> "RatFunc":
        n, d = self.num, self.den
        return RatFunc(n.deriv() * d - n * d.deriv(), d * d)

    def pth_root(self) -> "RatFunc":
        return RatFunc(self.num.pth_root(), self.den.pth_root())

    def height(self) -> int:
        return max(self.num.deg, self.den.deg, 0)


# ---------------------------------------------------------------------------
# sparse multivariate polynomials


class MPoly:
    """Sparse polynomial in n variables: {exponent tuple: encoded coefficient}."""

    __slots__ = ("F", "n", "terms")

    def __init__(self, F: GF, n: int, terms: dict | None = None):
        self.F, self.n = F, n
        self.terms = {e: c for e, c in (terms or {}).items() if c}

    @classmethod
    def var(cls, F: GF, n: int, i: int) -> "MPoly":
        e = [0] * n
        e[i] = 1
        return cls(F, n, {tuple(e): 1})

    @classmethod
    def const(cls, F: GF, n: int, a: int) -> "MPoly":
        return cls(F, n, {(0,) * n: a})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, o):
        return isinstance(o, MPoly) and self.n == o.n and self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def __add__(self, o: "MPoly") -> "MPoly":
        t = dict(self.terms)
        for e, c in o.terms.items():
            t[e] = self.F.add(t.get(e, 0), c)
        return MPoly(self.F, self.n, t)

    def __neg__(self):
        return MPoly(self.F, self.n, {e: self.F.neg(c) for e, c in self.terms.items()})

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, o) -> "MPoly":
        F = self.F
        if isinstance(o, int):
            return MPoly(F, self.n, {e: F.mul(c, o) for e, c in self.terms.items()})
        t: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = F.add(t.get(e, 0), F.mul(c1, c2))
        return MPoly(F, self.n, t)

    def __pow__(self, k: int) -> "MPoly":
        out = MPoly.const(self.F, self.n, 1)
        for _ in range(k):
            out = out * self
        return out

    def diff(self, i: int) -> "MPoly":
        F = self.F
        t: dict = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                v = F.mul(F.from_int(e[i]), c)
                if v:
                    t[tuple(ne)] = F.add(t.get(tuple(ne), 0), v)
        return MPoly(F, self.n, t)

    def evaluate(self, point: Sequence, ring_one=None, add=None, mul=None, const=None):
        """Evaluate at a point.

        With plain encoded ints (same field) the fast path is used.  Other
        rings supply ``const`` (coefficient -> ring element), ``add``, ``mul``
        and ``ring_one``.
        """
        if const is None:
            F = self.F
            acc = 0
            for e, c in self.terms.items():
                v = c
                for x, k in zip(point, e):
                    if k:
                        v = F.mul(v, F.pow(x, k))
                acc = F.add(acc, v)
            return acc
        acc = None
        powers: dict = {}
        for e, c in sorted(self.terms.items()):
            v = const(c)
            for i, k in enumerate(e):
                if k:
                    key = (i, k)
                    if key not in powers:
                        b = ring_one
                        for _ in range(k):
                            b = mul(b, point[i])
                        powers[key] = b
                    v = mul(v, powers[key])
            acc = v if acc is None else add(acc, v)
        return acc if acc is not None else const(0)

    def __repr__(self):
        names = "XYZ" if self.n == 3 else "ts" if self.n == 2 else [f"x{i}" for i in range(self.n)]
        parts = []
        for e, c in sorted(self.terms.items(), reverse=True):
            mon = "*".join(f"{names[i]}^{k}" if k > 1 else names[i] for i, k in enumerate(e) if k)
            cs = repr(FqElem(self.F, c))
            parts.append(mon if c == 1 and mon else f"{cs}*{mon}" if mon else cs)
        return " + ".join(parts) or "0"


# ---------------------------------------------------------------------------
# dense linear algebra over GF


class FqMatrix:
    """Dense matrix of encoded field elements."""

    def __init__(self, F: GF, rows: Sequence[Sequence[int]], cols: int | None = None):
        self.F = F
        self.rows = [list(r) for r in rows]
        self.nrows = len(self.rows)
        self.ncols = cols if cols is not None else (len(self.rows[0]) if self.rows else 0)
        if any(len(r) != self.ncols for r in self.rows):
            raise ValueError("ragged matrix")

    def rref(self) -> tuple[list[list[int]], list[int]]:
        F = self.F
        m = [r[:] for r in self.rows]
        pivots = []
        row = 0
        for col in range(self.ncols):
            piv = next((i for i in range(row, len(m)) if m[i][col]), None)
            if piv is None:
                continue
            m[row], m[piv] = m[piv], m[row]
            inv = F.inv(m[row][col])
            m[row] = [F.mul(x, inv) for x in m[row]]
            for i in range(len(m)):
                if i != row and m[i][col]:
                    c = m[i][col]
                    m[i] = [F.sub(x, F.mul(c, y)) for x, y in zip(m[i], m[row])]
            pivots.append(col)
            row += 1
            if row == len(m):
                break
        return m[:row], pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def nullspace(self) -> list[list[int]]:
        F = self.F
        r, pivots = self.rref()
        free = [c for c in range(self.ncols) if c not in pivots]
        basis = []
        for f in free:
            v = [0] * self.ncols
            v[f] = 1
            for row, pc in zip(r, pivots):
                v[pc] = F.neg(row[f])
            basis.append(v)
        return basis

    def apply(self, v: Sequence[int]) -> list[int]:
        F = self.F
        return [reduce(F.add, (F.mul(a, b) for a, b in zip(row, v)), 0) for row in self.rows]


def rank(F: GF, rows: Sequence[Sequence[int]]) -> int:
    if not rows:
        return 0
    return FqMatrix(F, rows).rank()


def nullspace(M: FqMatrix) -> list[list[int]]:
    return M.nullspace()


def solve_affine(F: GF, rows: Sequence[Sequence[int]], rhs: Sequence[int]) -> tuple[list[int], list[list[int]]] | None:
    """Solve rows . x = rhs; returns (particular solution, kernel basis) or None."""
    n = len(rows[0]) if rows else 0
    aug = FqMatrix(F, [list(r) + [b] for r, b in zip(rows, rhs)], n + 1)
    red, pivots = aug.rref()
    if n in pivots:
        return None
    x = [0] * n
    for row, pc in zip(red, pivots):
        x[pc] = row[n]
    kernel = FqMatrix(F, rows, n).nullspace() if rows else [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    return x, kernel


def solve_generic(rows: list[list], rhs: list, zero, one) -> list | None:
    """Gaussian elimination over any field whose elements support + - * and
    ``inverse()`` with truthiness for nonzero.  Returns one solution or None."""
    n = len(rows[0])
    m = [list(r) + [b] for r, b in zip(rows, rhs)]
    pivots = []
    row = 0
    for col in range(n):
        piv = next((i for i in range(row, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        inv = m[row][col].inverse()
        m[row] = [x * inv for x in m[row]]
        for i in range(len(m)):
            if i != row and m[i][col]:
                c = m[i][col]
                m[i] = [x - c * y for x, y in zip(m[i], m[row])]
        pivots.append(col)
        row += 1
    for r in m[row:]:
        if r[n]:
            return None
    x = [zero] * n
    for r, pc in zip(m, pivots):
        x[pc] = r[n]
    return x
