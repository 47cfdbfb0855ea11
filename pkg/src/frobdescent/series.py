"""Truncated Laurent series over a finite field.

A series is ``val`` plus a list of ``len(c)`` coefficients for the exponents
val, val+1, ...; everything beyond ``val + len(c)`` is unknown.  The exact
zero series carries only an absolute precision.
"""
from __future__ import annotations

from .algebra import GF


class PrecisionError(ArithmeticError):
    pass


class Laurent:
    __slots__ = ("F", "val", "c", "_zero_prec")

    def __init__(self, F: GF, val: int, coeffs, zero_prec: int | None = None):
        self.F = F
        c = list(coeffs)
        shift = 0
        while shift < len(c) and c[shift] == 0:
            shift += 1
        if shift == len(c):
            self.val, self.c = 0, []
            self._zero_prec = zero_prec if zero_prec is not None else val + len(c)
        else:
            self.val, self.c = val + shift, c[shift:]
            self._zero_prec = None

    @classmethod
    def const(cls, F: GF, a: int, prec: int) -> "Laurent":
        return cls(F, 0, [a] + [0] * (prec - 1), zero_prec=prec)

    @classmethod
    def param(cls, F: GF, prec: int) -> "Laurent":
        return cls(F, 1, [1] + [0] * (prec - 1))

    def is_zero(self) -> bool:
        return not self.c

    @property
    def abs_prec(self) -> int:
        return self._zero_prec if not self.c else self.val + len(self.c)

    def coeff(self, e: int) -> int:
        if not self.c:
            if e < self._zero_prec:
                return 0
            raise PrecisionError("coefficient beyond precision")
        i = e - self.val
        if i < 0:
            return 0
        if i >= len(self.c):
            raise PrecisionError("coefficient beyond precision")
        return self.c[i]

    def __add__(self, o: "Laurent") -> "Laurent":
        F = self.F
        ap = min(self.abs_prec, o.abs_prec)
        if not self.c and not o.c:
            return Laurent(F, 0, [], zero_prec=ap)
        lo = min(x.val for x in (self, o) if x.c)
        out = [0] * max(0, ap - lo)
        for x in (self, o):
            for i, a in enumerate(x.c):
                e = x.val + i - lo
                if e < len(out):
                    out[e] = F.add(out[e], a)
        return Laurent(F, lo, out, zero_prec=ap)

    def __neg__(self):
        if not self.c:
            return self
        return Laurent(self.F, self.val, [self.F.neg(a) for a in self.c])

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, o: "Laurent") -> "Laurent":
        F = self.F
        if not self.c or not o.c:
            # precision of a product with an inexact zero
            if not self.c and not o.c:
                ap = self._zero_prec + o._zero_prec
            elif not self.c:
                ap = self._zero_prec + o.val
            else:
                ap = o._zero_prec + self.val
            return Laurent(F, 0, [], zero_prec=ap)
        n = min(len(self.c), len(o.c))
        out = [0] * n
        a, b = self.c, o.c
        for i in range(n):
            if a[i]:
                ai = a[i]
                for j in range(n - i):
                    if b[j]:
                        out[i + j] = F.add(out[i + j], F.mul(ai, b[j]))
        return Laurent(F, self.val + o.val, out)

    def scale(self, a: int) -> "Laurent":
        if not self.c:
            return self
        return Laurent(self.F, self.val, [self.F.mul(x, a) for x in self.c])

    def inverse(self) -> "Laurent":
        if not self.c:
            raise PrecisionError("inverse of a series known only to be zero to its precision")
        F = self.F
        n = len(self.c)
        a = self.c
        inv0 = F.inv(a[0])
        out = [inv0] + [0] * (n - 1)
        for k in range(1, n):
            acc = 0
            for i in range(1, k + 1):
                if a[i]:
                    acc = F.add(acc, F.mul(a[i], out[k - i]))
            out[k] = F.neg(F.mul(acc, inv0))
        return Laurent(F, -self.val, out)

    def __truediv__(self, o: "Laurent") -> "Laurent":
        return self * o.inverse()

    def __pow__(self, e: int) -> "Laurent":
        if e < 0:
            return self.inverse() ** (-e)
        prec = self.abs_prec if not self.c else len(self.c)
        out = Laurent(self.F, 0, [1] + [0] * (max(prec, 1) - 1), zero_prec=prec)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def subs_square(self) -> "Laurent":
        """Substitute param -> param^2."""
        if not self.c:
            return Laurent(self.F, 0, [], zero_prec=2 * self._zero_prec)
        out = []
        for a in self.c:
            out += [a, 0]
        return Laurent(self.F, 2 * self.val, out[:-1] if out else out)

    def sqrt(self) -> "Laurent | None":
        """Square root of a series with even valuation and square leading
        coefficient (odd characteristic), or None."""
        F = self.F
        if not self.c or self.val % 2 or F.p == 2:
            return None
        r0 = F.sqrt(self.c[0])
        if r0 is None:
            return None
        n = len(self.c)
        a = self.c
        r = [r0] + [0] * (n - 1)
        inv2r0 = F.inv(F.mul(2 % F.p, r0))
        for k in range(1, n):
            acc = a[k]
            for i in range(1, k):
                acc = F.sub(acc, F.mul(r[i], r[k - i]))
            r[k] = F.mul(acc, inv2r0)
        return Laurent(F, self.val // 2, r)

    def map_field(self, emb, G: GF) -> "Laurent":
        if not self.c:
            return Laurent(G, 0, [], zero_prec=self._zero_prec)
        return Laurent(G, self.val, [emb(a) for a in self.c])

    def __repr__(self):
        if not self.c:
            return f"O(pi^{self._zero_prec})"
        terms = [f"{a}*pi^{self.val + i}" for i, a in enumerate(self.c) if a][:4]
        return " + ".join(terms) + f" + O(pi^{self.abs_prec})"
