"""Laurent polynomials with exact rational coefficients.

A polynomial is a finite map from integer exponent vectors to nonzero
Fractions.  Division is exact only: the quotient is returned when the
divisor divides exactly, otherwise ``NotDivisible`` is raised.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

from .errors import NotDivisible, ZeroVector
from .lattice import IntVec, vadd, vsub


class LaurentPolynomial:
    """Immutable Laurent polynomial over the rationals."""

    __slots__ = ("dim", "_terms", "_key")

    def __init__(self, dim: int, terms=None):
        self.dim = dim
        clean = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for exp, coef in items:
                exp = tuple(int(x) for x in exp)
                if len(exp) != dim:
                    raise ZeroVector(f"exponent {exp} has wrong dimension (want {dim})")
                coef = Fraction(coef)
                if coef:
                    clean[exp] = clean.get(exp, Fraction(0)) + coef
        self._terms = {e: c for e, c in clean.items() if c}
        self._key = tuple(sorted((e, c.numerator, c.denominator) for e, c in self._terms.items()))

    # -- ring structure ----------------------------------------------------

    @classmethod
    def zero(cls, dim: int) -> "LaurentPolynomial":
        return cls(dim, {})

    @classmethod
    def constant(cls, dim: int, c) -> "LaurentPolynomial":
        return cls(dim, {tuple([0] * dim): Fraction(c)})

    @classmethod
    def monomial(cls, exp, c=1) -> "LaurentPolynomial":
        exp = tuple(int(x) for x in exp)
        return cls(len(exp), {exp: Fraction(c)})

    @classmethod
    def variable(cls, dim: int, i: int) -> "LaurentPolynomial":
        exp = tuple(1 if j == i else 0 for j in range(dim))
        return cls(dim, {exp: Fraction(1)})

    def terms(self):
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def support(self) -> tuple[IntVec, ...]:
        return tuple(sorted(self._terms))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        return isinstance(other, LaurentPolynomial) and self.dim == other.dim and self._terms == other._terms

    def __hash__(self):
        return hash((self.dim, self._key))

    def key(self):
        """Canonical hashable representation."""
        return (self.dim, self._key)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return LaurentPolynomial(self.dim, out)

    def __neg__(self):
        return LaurentPolynomial(self.dim, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return LaurentPolynomial(self.dim, {e: c * other for e, c in self._terms.items()})
        other = self._coerce(other)
        out: dict[IntVec, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = vadd(e1, e2)
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return LaurentPolynomial(self.dim, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise NotDivisible("negative powers are not Laurent polynomials in general")
        result = LaurentPolynomial.constant(self.dim, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def _coerce(self, other):
        if isinstance(other, (int, Fraction)):
            return LaurentPolynomial.constant(self.dim, other)
        if other.dim != self.dim:
            raise ZeroVector("dimension mismatch")
        return other

    def shift(self, exp) -> "LaurentPolynomial":
        """Multiply by the monomial z^exp."""
        return LaurentPolynomial(self.dim, {vadd(e, tuple(exp)): c for e, c in self._terms.items()})

    def min_exponents(self) -> IntVec:
        if not self._terms:
            raise ZeroVector("zero polynomial")
        return tuple(min(e[i] for e in self._terms) for i in range(self.dim))

    def __repr__(self):
        if not self._terms:
            return "LaurentPolynomial(0)"
        bits = []
        for e, c in sorted(self._terms.items()):
            mono = "*".join(f"z{i}^{p}" for i, p in enumerate(e) if p) or "1"
            bits.append(f"{c}*{mono}")
        return "LaurentPolynomial(" + " + ".join(bits) + ")"


def binomial_power(dim: int, f: IntVec, k: int) -> LaurentPolynomial:
    """(1 + z^f)^k expanded by the binomial theorem (k >= 0)."""
    if k < 0:
        raise NotDivisible("negative binomial power")
    terms = {}
    exp = tuple([0] * dim)
    for i in range(k + 1):
        terms[exp] = terms.get(exp, 0) + Fraction(comb(k, i))
        exp = vadd(exp, f)
    return LaurentPolynomial(dim, terms)


def _grlex_key(e: IntVec):
    return (sum(e), e)


def _poly_divide(num: dict, den: dict, dim: int) -> dict:
    """Single-divisor long division of honest polynomials under graded lex.

    Exactness is required: any term that cannot be cancelled means the
    division fails.
    """
    lt_den = max(den, key=_grlex_key)
    c_den = den[lt_den]
    work = dict(num)
    quot: dict[IntVec, Fraction] = {}
    while work:
        lt = max(work, key=_grlex_key)
        diff = vsub(lt, lt_den)
        if any(d < 0 for d in diff):
            raise NotDivisible("remainder is nonzero")
        q = work[lt] / c_den
        quot[diff] = quot.get(diff, Fraction(0)) + q
        for e, c in den.items():
            tgt = vadd(diff, e)
            val = work.get(tgt, Fraction(0)) - q * c
            if val:
                work[tgt] = val
            else:
                work.pop(tgt, None)
    return quot


def laurent_divide_exact(num: LaurentPolynomial, den: LaurentPolynomial) -> LaurentPolynomial:
    """Exact quotient num / den, or NotDivisible.

    Both operands are cleared to honest polynomials by dividing out their
    componentwise minimal monomials (units in the Laurent ring); exact
    divisibility is preserved by the clearing because Newton polytopes add
    under multiplication.
    """
    if den.is_zero():
        raise ZeroVector("division by zero")
    if num.is_zero():
        return LaurentPolynomial.zero(num.dim)
    if num.dim != den.dim:
        raise ZeroVector("dimension mismatch")
    m_num = num.min_exponents()
    m_den = den.min_exponents()
    num_p = {vsub(e, m_num): c for e, c in num.items()}
    den_p = {vsub(e, m_den): c for e, c in den.items()}
    quot = _poly_divide(num_p, den_p, num.dim)
    shift = vsub(m_num, m_den)
    return LaurentPolynomial(num.dim, {vadd(e, shift): c for e, c in quot.items()})


def laurent_json(w: LaurentPolynomial) -> dict:
    return {
        "dim": w.dim,
        "terms": [
            {"exp": list(e), "num": c.numerator, "den": c.denominator}
            for e, c in sorted(w.items())
        ],
    }


def laurent_from_json(data: dict) -> LaurentPolynomial:
    dim = data["dim"]
    terms = {}
    for t in data["terms"]:
        exp = tuple(t["exp"])
        for x in exp:
            if isinstance(x, bool) or not isinstance(x, int):
                raise ZeroVector(f"exponents must be integers, got {x!r}")
        num, den = t["num"], t.get("den", 1)
        if not isinstance(num, int) or not isinstance(den, int) or isinstance(num, bool) or isinstance(den, bool):
            raise ZeroVector("coefficients must be exact integer pairs")
        terms[exp] = terms.get(exp, Fraction(0)) + Fraction(num, den)
    return LaurentPolynomial(dim, terms)
