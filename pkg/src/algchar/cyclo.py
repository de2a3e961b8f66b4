"""Exact arithmetic in the cyclotomic field Q(zeta_p), p prime."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .gf import is_prime


class CycloError(ValueError):
    pass


class CycloNumber:
    """sum_k coeffs[k] * zeta_p**k over the basis 1, zeta, ..., zeta**(p-2)."""

    __slots__ = ("p", "coeffs")

    def __init__(self, p: int, coeffs: Iterable = ()):
        coeffs = tuple(Fraction(c) for c in coeffs)
        n = p - 1
        if len(coeffs) < n:
            coeffs = coeffs + (Fraction(0),) * (n - len(coeffs))
        elif len(coeffs) > n:
            raise CycloError(f"{len(coeffs)} coefficients for conductor {p}")
        self.p = p
        self.coeffs = coeffs

    @classmethod
    def from_power_sums(cls, p: int, sums) -> "CycloNumber":
        """Reduce sum_{k<p} sums[k] zeta**k using zeta**(p-1) = -(1 + ... + zeta**(p-2))."""
        sums = [Fraction(s) for s in sums]
        if len(sums) < p:
            sums += [Fraction(0)] * (p - len(sums))
        top = sums[p - 1]
        return cls(p, [sums[k] - top for k in range(p - 1)])

    @classmethod
    def rational(cls, p: int, value) -> "CycloNumber":
        return cls(p, (value,))

    # -- predicates ------------------------------------------------------
    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_rational(self) -> Fraction | None:
        return self.coeffs[0] if self.is_rational() else None

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    # -- arithmetic ------------------------------------------------------
    def _coerce(self, other) -> "CycloNumber":
        if isinstance(other, CycloNumber):
            if other.p != self.p:
                raise CycloError(f"conductor mismatch {self.p} vs {other.p}")
            return other
        if isinstance(other, (int, Fraction)):
            return CycloNumber(self.p, (other,))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return CycloNumber(self.p, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycloNumber(self.p, [-a for a in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return CycloNumber(self.p, [a - b for a, b in zip(self.coeffs, o.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o.is_rational():
            return self.scale(o.coeffs[0])
        if self.is_rational():
            return o.scale(self.coeffs[0])
        p = self.p
        sums = [Fraction(0)] * p
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    if b:
                        sums[(i + j) % p] += a * b
        return CycloNumber.from_power_sums(p, sums)

    __rmul__ = __mul__

    def scale(self, r) -> "CycloNumber":
        r = Fraction(r)
        return CycloNumber(self.p, [a * r for a in self.coeffs])

    def __truediv__(self, r):
        if isinstance(r, CycloNumber):
            rr = r.to_rational()
            if rr is None:
                return self * r.inverse()
            r = rr
        return self.scale(1 / Fraction(r))

    def conj(self) -> "CycloNumber":
        """Complex conjugation zeta -> zeta**(p-1)."""
        if self.is_rational():
            return self
        p = self.p
        sums = [Fraction(0)] * p
        for k, a in enumerate(self.coeffs):
            sums[(-k) % p] += a
        return CycloNumber.from_power_sums(p, sums)

    def galois(self, t: int) -> "CycloNumber":
        """The automorphism zeta -> zeta**t, t prime to p."""
        p = self.p
        if t % p == 0:
            raise CycloError("galois exponent must be prime to p")
        sums = [Fraction(0)] * p
        for k, a in enumerate(self.coeffs):
            sums[(k * t) % p] += a
        return CycloNumber.from_power_sums(p, sums)

    def norm(self) -> Fraction:
        """Field norm down to Q."""
        out = CycloNumber.rational(self.p, 1)
        for t in range(1, self.p):
            out = out * self.galois(t)
        return out.to_rational()

    def inverse(self) -> "CycloNumber":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        rest = CycloNumber.rational(self.p, 1)
        for t in range(2, self.p):
            rest = rest * self.galois(t)
        return rest.scale(1 / self.norm())

    def __eq__(self, other):
        o = self._coerce(other) if isinstance(other, (CycloNumber, int, Fraction)) else NotImplemented
        if o is NotImplemented:
            return False
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def to_complex(self) -> complex:
        import cmath

        z = cmath.exp(2j * cmath.pi / self.p)
        return sum(complex(float(a)) * z**k for k, a in enumerate(self.coeffs))

    def __repr__(self):
        if self.is_rational():
            return f"Cyclo[{self.p}]({self.coeffs[0]})"
        terms = [f"{a}*z^{k}" for k, a in enumerate(self.coeffs) if a]
        return f"Cyclo[{self.p}](" + " + ".join(terms) + ")"

    def to_json(self):
        return [str(self.p), [str(a) for a in self.coeffs]]

    @classmethod
    def from_json(cls, doc):
        p, coeffs = doc
        return cls(int(p), [Fraction(c) for c in coeffs])


def root_power(p: int, k: int) -> CycloNumber:
    """zeta_p ** k in reduced form."""
    if not is_prime(p):
        raise CycloError(f"conductor {p} is not prime")
    sums = [0] * p
    sums[k % p] = 1
    return CycloNumber.from_power_sums(p, sums)


def cyc_arith(op: str, a: CycloNumber, b=None):
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "conj":
        return a.conj()
    if op == "eq":
        return a == b
    if op == "scale":
        return a.scale(b)
    raise CycloError(f"unknown op {op!r}")


def to_rational(a: CycloNumber):
    return a.to_rational()
