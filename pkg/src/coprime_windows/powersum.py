"""Exact power-sum expressions: parsing, printing, differentiation, growth checks.

The function class is a finite sum of terms ``c * x**e`` where the
exponent ``e`` is an exact rational and the coefficient ``c`` is a
rational times an optional square root of a positive rational (so
``sqrt(2)*x``, ``3/2*x**2`` and ``x**1.5`` are all in class).  The class
is closed under differentiation, every concrete example this package
works with lives inside it, and both growth hypotheses used by the
witness machinery become decidable from exponents and coefficient signs
alone.  Logarithms, exponentials and transcendental coefficients are
deliberately out of scope.

Expressions are immutable values; every operation here is stateless and
safe to call concurrently.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import gmpy2

from .errors import ExpressionSyntaxError, NormalizationError

__all__ = [
    "Surd",
    "PowerSumExpr",
    "HypothesisReport",
    "parse_function",
    "differentiate",
    "check_hypotheses",
]


def _split_square(n: int) -> tuple[int, int]:
    """Write n = s*s*d with d squarefree (n >= 1). Trial division."""
    s, d = 1, 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            s *= p ** (e // 2)
            if e % 2:
                d *= p
        p += 1 if p == 2 else 2
    return s, d * n


@dataclass(frozen=True)
class Surd:
    """Exact scalar of the form ``rat * sqrt(radicand)``.

    ``radicand`` is kept squarefree and positive, with ``radicand == 1``
    meaning the scalar is plain rational.  Zero is normalized to
    ``(0, 1)``.  Sign and comparisons are decided exactly by comparing
    squares, never by floating point.
    """

    rat: Fraction
    radicand: int = 1

    def __post_init__(self):
        if self.radicand < 1:
            raise ValueError("radicand must be a positive integer")

    @staticmethod
    def make(rat, radicand=1) -> "Surd":
        """Build a normalized surd; ``radicand`` may be any nonnegative rational."""
        rat = Fraction(rat)
        q = Fraction(radicand)
        if q < 0:
            raise ValueError("negative radicand")
        if rat == 0 or q == 0:
            return Surd(Fraction(0), 1)
        # sqrt(a/b) = sqrt(a*b)/b
        d = q.numerator * q.denominator
        s, d = _split_square(d)
        return Surd(rat * Fraction(s, q.denominator), d)

    @property
    def is_zero(self) -> bool:
        return self.rat == 0

    @property
    def is_rational(self) -> bool:
        return self.radicand == 1

    def sign(self) -> int:
        if self.rat > 0:
            return 1
        if self.rat < 0:
            return -1
        return 0

    def __neg__(self) -> "Surd":
        return Surd(-self.rat, self.radicand)

    def __add__(self, other: "Surd") -> "Surd":
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        if self.radicand != other.radicand:
            raise NormalizationError(
                f"cannot add sqrt({self.radicand}) and sqrt({other.radicand}) scalars"
            )
        s = self.rat + other.rat
        if s == 0:
            return Surd(Fraction(0), 1)
        return Surd(s, self.radicand)

    def scale(self, q: Fraction) -> "Surd":
        q = Fraction(q)
        if q == 0 or self.is_zero:
            return Surd(Fraction(0), 1)
        return Surd(self.rat * q, self.radicand)

    def square(self) -> Fraction:
        return self.rat * self.rat * self.radicand

    def __abs__(self) -> "Surd":
        return Surd(abs(self.rat), self.radicand)

    def bounds(self, bits: int = 16) -> tuple[Fraction, Fraction]:
        """Exact rational bounds lo <= value <= hi, width about 2**-bits."""
        if self.is_rational:
            return self.rat, self.rat
        r = int(gmpy2.isqrt(self.radicand << (2 * bits)))
        lo, hi = Fraction(r, 1 << bits), Fraction(r + 1, 1 << bits)
        if self.rat > 0:
            return self.rat * lo, self.rat * hi
        return self.rat * hi, self.rat * lo

    def __str__(self) -> str:
        if self.is_rational:
            return str(self.rat)
        root = f"sqrt({self.radicand})"
        if self.rat == 1:
            return root
        if self.rat == -1:
            return f"-{root}"
        return f"{self.rat}*{root}"


Term = tuple[Surd, Fraction]  # (coefficient, exponent)


@dataclass(frozen=True)
class PowerSumExpr:
    """Finite sum of ``coeff * x**exponent`` terms, exponents strictly decreasing.

    The empty sum is the zero function.  Evaluation domain is x >= 1."""

    terms: tuple[Term, ...]

    @staticmethod
    def from_terms(pairs: Iterable[tuple]) -> "PowerSumExpr":
        """Normalize arbitrary (coefficient, exponent) pairs.

        Coefficients may be ints, Fractions or Surds; like exponents are
        merged (raising NormalizationError on mixed radicands), zero
        coefficients dropped, terms sorted by decreasing exponent."""
        bucket: dict[Fraction, Surd] = {}
        for coeff, expo in pairs:
            if not isinstance(coeff, Surd):
                coeff = Surd.make(coeff)
            expo = Fraction(expo)
            if expo in bucket:
                bucket[expo] = bucket[expo] + coeff
            else:
                bucket[expo] = coeff
        terms = tuple(
            (c, e) for e, c in sorted(bucket.items(), reverse=True) if not c.is_zero
        )
        return PowerSumExpr(terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def leading(self) -> Term | None:
        """Dominant term (largest exponent), or None for the zero function."""
        return self.terms[0] if self.terms else None

    def max_exponent(self) -> Fraction | None:
        lead = self.leading()
        return lead[1] if lead else None

    def to_string(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for i, (coeff, expo) in enumerate(self.terms):
            mag = abs(coeff)
            neg = coeff.sign() < 0
            body = _format_term(mag, expo)
            if i == 0:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    def __str__(self) -> str:
        return self.to_string()


def _format_term(mag: Surd, expo: Fraction) -> str:
    if expo == 0:
        return str(mag)
    if expo == 1:
        power = "x"
    elif expo.denominator == 1 and expo > 0:
        power = f"x^{expo}"
    else:
        power = f"x^({expo})"
    if mag.rat == 1 and mag.is_rational:
        return power
    return f"{mag}*{power}"


# --- parser -----------------------------------------------------------------
#
# expr     = [sign] term { sign term }
# term     = coefficient [("*" | "/") power] | power
# coefficient = number ["*" sqrt] | sqrt
# sqrt     = "sqrt" "(" [sign] number ")"
# power    = "x" ["^" exponent]
# exponent = [sign] number | "(" [sign] number ")"
# number   = digits ["." digits] | digits "/" digits
#
# Implicit multiplication between a coefficient and "x" is accepted
# ("4x" == "4*x").  Numbers parse to exact Fractions ("1.5" -> 3/2).

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+\.\d+|\d+)|(?P<name>sqrt|x)|(?P<op>[-+*/^()]))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            if text[pos:].strip() == "":
                break
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ExpressionSyntaxError(f"unexpected character {text[bad]!r}", bad)
        if m.group("num"):
            tokens.append(("num", m.group("num"), m.start("num")))
        elif m.group("name"):
            tokens.append((m.group("name"), m.group("name"), m.start("name")))
        else:
            tokens.append((m.group("op"), m.group("op"), m.start("op")))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self, ahead: int = 0) -> tuple[str, str, int]:
        return self.toks[min(self.i + ahead, len(self.toks) - 1)]

    def take(self, kind: str | None = None) -> tuple[str, str, int]:
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            raise ExpressionSyntaxError(
                f"expected {kind!r}, found {tok[1] or 'end of input'!r}", tok[2]
            )
        self.i += 1
        return tok

    def parse(self) -> list[tuple[Surd, Fraction]]:
        pairs = []
        sign = 1
        tok = self.peek()
        if tok[0] in ("+", "-"):
            self.take()
            sign = -1 if tok[0] == "-" else 1
        pairs.append(self.term(sign))
        while self.peek()[0] != "end":
            tok = self.take()
            if tok[0] not in ("+", "-"):
                raise ExpressionSyntaxError(
                    f"expected '+' or '-', found {tok[1]!r}", tok[2]
                )
            pairs.append(self.term(-1 if tok[0] == "-" else 1))
        return pairs

    def number(self) -> Fraction:
        tok = self.take("num")
        if "." in tok[1]:
            value = Fraction(tok[1])
        else:
            value = Fraction(int(tok[1]))
            if self.peek()[0] == "/" and self.peek(1)[0] == "num":
                self.take()
                den_tok = self.take("num")
                if "." in den_tok[1]:
                    raise ExpressionSyntaxError("decimal denominator", den_tok[2])
                den = int(den_tok[1])
                if den == 0:
                    raise ExpressionSyntaxError("zero denominator", den_tok[2])
                value /= den
        return value

    def signed_number(self) -> Fraction:
        sign = 1
        if self.peek()[0] in ("+", "-"):
            tok = self.take()
            sign = -1 if tok[0] == "-" else 1
        return sign * self.number()

    def sqrt(self) -> Surd:
        self.take("sqrt")
        self.take("(")
        tok = self.peek()
        arg = self.signed_number()
        if arg < 0:
            raise ExpressionSyntaxError("negative argument to sqrt", tok[2])
        self.take(")")
        return Surd.make(1, arg)

    def exponent(self) -> Fraction:
        if self.peek()[0] == "(":
            self.take()
            value = self.signed_number()
            self.take(")")
        else:
            value = self.signed_number()
        return value

    def power(self) -> Fraction:
        self.take("x")
        if self.peek()[0] == "^":
            self.take()
            return self.exponent()
        return Fraction(1)

    def term(self, sign: int) -> tuple[Surd, Fraction]:
        tok = self.peek()
        if tok[0] == "x":
            return Surd.make(sign), self.power()

        if tok[0] == "num":
            coeff = Surd.make(self.number())
            if self.peek()[0] == "*" and self.peek(1)[0] == "sqrt":
                self.take()
                coeff = self.sqrt().scale(coeff.rat)
        elif tok[0] == "sqrt":
            coeff = self.sqrt()
        else:
            raise ExpressionSyntaxError(
                f"expected a term, found {tok[1] or 'end of input'!r}", tok[2]
            )

        if sign < 0:
            coeff = -coeff
        nxt = self.peek()
        if nxt[0] == "*":
            self.take()
            return coeff, self.power()
        if nxt[0] == "/":
            self.take()
            return coeff, -self.power()
        if nxt[0] == "x":  # implicit multiplication
            return coeff, self.power()
        return coeff, Fraction(0)


def parse_function(text: str) -> PowerSumExpr:
    """Parse an expression string into a normalized PowerSumExpr.

    Raises ExpressionSyntaxError (with position) on malformed input,
    including zero-denominator exponents and negative sqrt arguments."""
    pairs = _Parser(text).parse()
    return PowerSumExpr.from_terms(pairs)


# --- differentiation and growth hypotheses ----------------------------------


def _falling_factorial(e: Fraction, order: int) -> Fraction:
    ff = Fraction(1)
    for j in range(order):
        ff *= e - j
        if ff == 0:
            break
    return ff


def differentiate(f: PowerSumExpr, order: int) -> PowerSumExpr:
    """Exact order-th derivative, term by term.

    A term whose exponent is an integer in [0, order) is annihilated by
    the falling factorial and dropped."""
    if order < 0:
        raise ValueError("derivative order must be nonnegative")
    if order == 0:
        return f
    out = []
    for coeff, expo in f.terms:
        ff = _falling_factorial(expo, order)
        if ff == 0:
            continue
        out.append((coeff.scale(ff), expo - order))
    return PowerSumExpr.from_terms(out)


@dataclass(frozen=True)
class HypothesisReport:
    """Decidable growth facts about f at level k.

    ``vanishing_kth``: the k-th derivative tends to 0 at infinity, which
    for a power sum holds iff every exponent is below k.
    ``unbounded_k_minus_1``: the (k-1)-th derivative has limsup +infinity,
    decided by the sign of the dominant coefficient once the dominant
    exponent exceeds k-1.
    ``witness_exponent``: the dominant exponent certifying unboundedness,
    when it applies."""

    k: int
    vanishing_kth: bool
    unbounded_k_minus_1: bool
    witness_exponent: Fraction | None

    @property
    def admissible(self) -> bool:
        return self.vanishing_kth and self.unbounded_k_minus_1

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "vanishing_kth": self.vanishing_kth,
            "unbounded_k_minus_1": self.unbounded_k_minus_1,
            "witness_exponent": (
                str(self.witness_exponent) if self.witness_exponent is not None else None
            ),
        }


def check_hypotheses(f: PowerSumExpr, k: int) -> HypothesisReport:
    """Decide both growth hypotheses exactly from exponents and signs."""
    if k < 2:
        raise ValueError("k must be at least 2")
    lead = f.leading()
    if lead is None:
        return HypothesisReport(k, True, False, None)
    coeff, expo = lead
    vanishing = expo < k
    unbounded = expo > k - 1 and coeff.sign() > 0
    return HypothesisReport(k, vanishing, unbounded, expo if unbounded else None)
