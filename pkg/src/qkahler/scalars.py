"""Exact arithmetic over Q(i)(q), the field of rational functions in one
indeterminate q with Gaussian rational coefficients.

Everything downstream (the exterior algebra, the Hodge map, the Gram
matrices) is computed with these scalars, so all equalities asserted by the
verification suites are exact, not numerical.  A Scalar is kept as a reduced
fraction of Laurent polynomials; the reduced form is canonical, so equality
is a dictionary comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class PoleError(ArithmeticError):
    """Raised when a scalar is evaluated at a zero of its denominator."""


_FRZERO = Fraction(0)
_FRONE = Fraction(1)


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as a rational number")


class GaussianRational:
    """A complex number x + y*i with rational x, y."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _as_fraction(re)
        self.im = _as_fraction(im)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        other = _coerce_gaussian(other)
        if other is NotImplemented:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __add__(self, other):
        other = _coerce_gaussian(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        other = _coerce_gaussian(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _coerce_gaussian(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _coerce_gaussian(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce_gaussian(other)
        if other is NotImplemented:
            return NotImplemented
        n = other.re * other.re + other.im * other.im
        if not n:
            raise ZeroDivisionError("division by zero in Q(i)")
        return GaussianRational(
            (self.re * other.re + self.im * other.im) / n,
            (self.im * other.re - self.re * other.im) / n,
        )

    def __rtruediv__(self, other):
        other = _coerce_gaussian(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def is_real(self) -> bool:
        return not self.im

    def __str__(self):
        return _render_gaussian(self)

    __repr__ = __str__


def _coerce_gaussian(x):
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Fraction)):
        return GaussianRational(x)
    return NotImplemented


GR_ZERO = GaussianRational(0)
GR_ONE = GaussianRational(1)
GR_I = GaussianRational(0, 1)


class LaurentPoly:
    """Laurent polynomial in q over Q(i), stored as {exponent: coefficient}.

    Zero coefficients are never stored, so equality of the underlying dicts
    is equality of polynomials.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        if terms is None:
            self.terms = {}
        else:
            self.terms = {e: c for e, c in terms.items() if c}

    @staticmethod
    def constant(c) -> "LaurentPoly":
        c = c if isinstance(c, GaussianRational) else GaussianRational(c)
        return LaurentPoly({0: c}) if c else LaurentPoly()

    @staticmethod
    def q_power(e: int, coeff=GR_ONE) -> "LaurentPoly":
        coeff = coeff if isinstance(coeff, GaussianRational) else GaussianRational(coeff)
        return LaurentPoly({e: coeff}) if coeff else LaurentPoly()

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, GR_ZERO) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        r = LaurentPoly.__new__(LaurentPoly)
        r.terms = out
        return r

    def __neg__(self):
        r = LaurentPoly.__new__(LaurentPoly)
        r.terms = {e: -c for e, c in self.terms.items()}
        return r

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = LaurentPoly.constant(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                s = out.get(e)
                p = c1 * c2
                s = p if s is None else s + p
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        r = LaurentPoly.__new__(LaurentPoly)
        r.terms = out
        return r

    def scale(self, c: GaussianRational) -> "LaurentPoly":
        if not c:
            return LaurentPoly()
        r = LaurentPoly.__new__(LaurentPoly)
        r.terms = {e: cc * c for e, cc in self.terms.items()}
        return r

    def shift(self, k: int) -> "LaurentPoly":
        r = LaurentPoly.__new__(LaurentPoly)
        r.terms = {e + k: c for e, c in self.terms.items()}
        return r

    def min_exp(self) -> int:
        return min(self.terms)

    def max_exp(self) -> int:
        return max(self.terms)

    def conjugate(self) -> "LaurentPoly":
        # q is treated as real, so conjugation acts on coefficients only
        r = LaurentPoly.__new__(LaurentPoly)
        r.terms = {e: c.conjugate() for e, c in self.terms.items()}
        return r

    def evaluate(self, q0: Fraction) -> GaussianRational:
        acc = GR_ZERO
        for e, c in self.terms.items():
            acc = acc + c * (q0 ** e)
        return acc

    def is_unit(self) -> bool:
        """Units of the Laurent ring are the single-term polynomials."""
        return len(self.terms) == 1

    # dense helpers used by gcd and exact division; constant term first
    def _dense(self):
        lo = self.min_exp()
        hi = self.max_exp()
        coeffs = [self.terms.get(e, GR_ZERO) for e in range(lo, hi + 1)]
        return lo, coeffs

    @staticmethod
    def _from_dense(lo, coeffs) -> "LaurentPoly":
        return LaurentPoly({lo + k: c for k, c in enumerate(coeffs) if c})

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        """Divide by another Laurent polynomial, requiring zero remainder."""
        if not other:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self:
            return LaurentPoly()
        alo, a = self._dense()
        blo, b = other._dense()
        q, r = _dense_divmod(a, b)
        if any(r):
            raise ValueError("non-exact Laurent division")
        return LaurentPoly._from_dense(alo - blo, q)

    def __str__(self):
        return render_laurent(self)

    __repr__ = __str__


def _dense_divmod(a, b):
    """Long division of dense coefficient lists (constant term first)."""
    a = list(a)
    db = len(b) - 1
    lead = b[-1]
    q = [GR_ZERO] * max(0, len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k]
        if not c:
            continue
        f = c / lead
        q[k - db] = f
        for j in range(db + 1):
            a[k - db + j] = a[k - db + j] - f * b[j]
    return q, a


def _poly_gcd(a, b):
    """Monic gcd of dense polynomials over Q(i). Euclidean algorithm."""
    while any(b):
        while b and not b[-1]:
            b.pop()
        if not b:
            break
        _, r = _dense_divmod(a, b)
        while r and not r[-1]:
            r.pop()
        a, b = b, r
    while a and not a[-1]:
        a.pop()
    if not a:
        return [GR_ONE]
    lead = a[-1]
    return [c / lead for c in a]


def _laurent_gcd(p: LaurentPoly, r: LaurentPoly) -> LaurentPoly:
    """gcd up to units; result has nonzero constant term and monic lead."""
    _, a = p._dense()
    _, b = r._dense()
    g = _poly_gcd(a, b)
    return LaurentPoly._from_dense(0, g)


_LP_ONE = LaurentPoly({0: GR_ONE})


class Scalar:
    """Element of Q(i)(q) as a canonical reduced fraction num/den.

    Canonical form: gcd(num, den) is a unit and den has constant term 1 with
    lowest exponent 0.  Two equal scalars therefore have identical (num, den)
    pairs, and __eq__ can compare dictionaries.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly = _LP_ONE):
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            self.num = LaurentPoly()
            self.den = _LP_ONE
            return
        if den.is_unit():
            # fast path: dividing by a unit never needs a gcd
            e = den.min_exp()
            c = den.terms[e]
            self.num = num.shift(-e).scale(GR_ONE / c)
            self.den = _LP_ONE
            return
        nlo = num.min_exp()
        dlo = den.min_exp()
        n = num.shift(-nlo)
        d = den.shift(-dlo)
        g = _laurent_gcd(n, d)
        if not g.is_unit():
            n = n.exact_div(g)
            d = d.exact_div(g)
        c0 = d.terms[d.min_exp()]
        if d.min_exp() != 0:  # pragma: no cover - gcd keeps constant terms
            d = d.shift(-d.min_exp())
        self.num = n.shift(nlo - dlo).scale(GR_ONE / c0)
        self.den = d.scale(GR_ONE / c0)

    @staticmethod
    def _raw(num: LaurentPoly) -> "Scalar":
        """Wrap a Laurent polynomial as a scalar with denominator 1."""
        s = Scalar.__new__(Scalar)
        s.num = num
        s.den = _LP_ONE
        return s

    @staticmethod
    def from_int(k) -> "Scalar":
        return Scalar._raw(LaurentPoly.constant(k))

    @staticmethod
    def from_gaussian(c: GaussianRational) -> "Scalar":
        return Scalar._raw(LaurentPoly.constant(c))

    @staticmethod
    def q_power(e: int) -> "Scalar":
        return Scalar._raw(LaurentPoly.q_power(e))

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        other = _coerce_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __add__(self, other):
        other = _coerce_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den is _LP_ONE and other.den is _LP_ONE:
            return Scalar._raw(self.num + other.num)
        return Scalar(self.num * other.den + other.num * self.den,
                      self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        s = Scalar.__new__(Scalar)
        s.num = -self.num
        s.den = self.den
        return s

    def __sub__(self, other):
        other = _coerce_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den is _LP_ONE and other.den is _LP_ONE:
            return Scalar._raw(self.num * other.num)
        return Scalar(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.num:
            raise ZeroDivisionError("division by the zero scalar")
        return Scalar(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = _coerce_scalar(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def conjugate(self) -> "Scalar":
        return Scalar(self.num.conjugate(), self.den.conjugate())

    def evaluate(self, q0) -> GaussianRational:
        """Substitute a rational q0 > 0.  Raises PoleError at denominator
        zeros; q0 <= 0 is outside the domain and raises ValueError."""
        q0 = _as_fraction(q0)
        if q0 <= 0:
            raise ValueError(f"q must be a positive rational, got {q0}")
        d = self.den.evaluate(q0)
        if not d:
            raise PoleError(f"pole at q = {q0}")
        return self.num.evaluate(q0) / d

    def is_polynomial(self) -> bool:
        return self.den == _LP_ONE

    def __str__(self):
        return render_scalar(self)

    __repr__ = __str__


def _coerce_scalar(x):
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Fraction)):
        return Scalar.from_int(x) if isinstance(x, int) else Scalar.from_gaussian(GaussianRational(x))
    if isinstance(x, GaussianRational):
        return Scalar.from_gaussian(x)
    return NotImplemented


ZERO = Scalar._raw(LaurentPoly())
ONE = Scalar.from_int(1)
I = Scalar.from_gaussian(GR_I)
Q = Scalar.q_power(1)


def i_power(k: int) -> Scalar:
    """i^k for any integer k."""
    return (ONE, I, -ONE, -I)[k % 4]


# ---------------------------------------------------------------------------
# Hodge parameter modes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HodgeMode:
    """Choice of the quantum-integer base h used by the Hodge map.

    kind "q"    : h is the deformation parameter q itself (symbolic)
    kind "one"  : h = 1, the classical specialisation
    kind "numeric": h = h0 for a fixed positive rational h0; q0 records the
                    evaluation point used by numeric certifications
    """

    kind: str
    q0: Fraction | None = None
    h0: Fraction | None = None

    @staticmethod
    def numeric(q0, h0=None) -> "HodgeMode":
        q0 = _as_fraction(q0)
        h0 = q0 if h0 is None else _as_fraction(h0)
        if q0 <= 0 or h0 <= 0:
            raise ValueError("numeric mode requires positive rational q0, h0")
        return HodgeMode("numeric", q0, h0)

    def h_power(self, e: int) -> Scalar:
        """h^e as a scalar."""
        if self.kind == "q":
            return Scalar.q_power(e)
        if self.kind == "one":
            return ONE
        return Scalar.from_gaussian(GaussianRational(self.h0 ** e))

    def label(self) -> str:
        if self.kind == "q":
            return "h=q"
        if self.kind == "one":
            return "h=1"
        return f"h={self.h0} (q0={self.q0})"


H_EQ_Q = HodgeMode("q")
H_EQ_ONE = HodgeMode("one")


_qint_cache: dict = {}


def qint(m: int, mode: HodgeMode = H_EQ_Q, step: int = 1) -> Scalar:
    """Symmetric quantum integer [m] = h^(m-1) + h^(m-3) + ... + h^(1-m).

    step scales the exponents, giving quantum integers in base h^step.
    """
    if m < 0:
        raise ValueError(f"quantum integer needs m >= 0, got {m}")
    key = (m, mode, step)
    hit = _qint_cache.get(key)
    if hit is not None:
        return hit
    acc = ZERO
    for e in range(m - 1, -m, -2):
        acc = acc + mode.h_power(e * step)
    _qint_cache[key] = acc
    return acc


def qint_signed(m: int, mode: HodgeMode = H_EQ_Q) -> Scalar:
    """[m] extended to negative m by [-m] = -[m]."""
    return qint(m, mode) if m >= 0 else -qint(-m, mode)


_qfact_cache: dict = {}


def qfact(m: int, mode: HodgeMode = H_EQ_Q) -> Scalar:
    """Quantum factorial [m]! = [m][m-1]...[1], with [0]! = 1."""
    if m < 0:
        raise ValueError(f"quantum factorial needs m >= 0, got {m}")
    key = (m, mode)
    hit = _qfact_cache.get(key)
    if hit is not None:
        return hit
    acc = ONE
    for t in range(1, m + 1):
        acc = acc * qint(t, mode)
    _qfact_cache[key] = acc
    return acc


def qbinom(m: int, r: int, mode: HodgeMode = H_EQ_Q) -> Scalar:
    """Gaussian binomial [m]! / ([r]! [m-r]!)."""
    if r < 0 or r > m:
        raise ValueError(f"binomial out of range: ({m}, {r})")
    return qfact(m, mode) / (qfact(r, mode) * qfact(m - r, mode))


# ---------------------------------------------------------------------------
# Canonical text form
# ---------------------------------------------------------------------------

def _render_fraction(x: Fraction) -> str:
    return str(x)


def _render_gaussian(c: GaussianRational) -> str:
    if not c.im:
        return _render_fraction(c.re)
    if not c.re:
        if c.im == 1:
            return "i"
        if c.im == -1:
            return "-i"
        return f"{_render_fraction(c.im)}*i"
    s = _render_fraction(c.re)
    if c.im == 1:
        return f"{s}+i"
    if c.im == -1:
        return f"{s}-i"
    if c.im > 0:
        return f"{s}+{_render_fraction(c.im)}*i"
    return f"{s}-{_render_fraction(-c.im)}*i"


def _q_power_str(e: int) -> str:
    if e == 0:
        return ""
    if e == 1:
        return "q"
    return f"q^{e}"


def _render_term(c: GaussianRational, e: int, lead: bool) -> str:
    qs = _q_power_str(e)
    if c.is_real() and c.re > 0:
        sign = "" if lead else " + "
        mag = None if c.re == 1 else _render_fraction(c.re)
    elif c.is_real():
        sign = "-" if lead else " - "
        mag = None if c.re == -1 else _render_fraction(-c.re)
    else:
        if not qs:
            return _render_gaussian(c) if lead else f" + ({_render_gaussian(c)})"
        sign = "" if lead else " + "
        return f"{sign}({_render_gaussian(c)})*{qs}"
    if not qs:
        return f"{sign}{mag if mag is not None else '1'}"
    if mag is None:
        return f"{sign}{qs}"
    return f"{sign}{mag}*{qs}"


def render_laurent(p: LaurentPoly) -> str:
    if not p:
        return "0"
    parts = []
    for e in sorted(p.terms, reverse=True):
        parts.append(_render_term(p.terms[e], e, lead=not parts))
    return "".join(parts)


def render_scalar(s: Scalar) -> str:
    if s.den == _LP_ONE:
        return render_laurent(s.num)
    return f"({render_laurent(s.num)})/({render_laurent(s.den)})"


# ---------------------------------------------------------------------------
# Parser for the same grammar (plus ordinary +-*/^ arithmetic)
# ---------------------------------------------------------------------------

class _Tokens:
    def __init__(self, text: str):
        self.toks = []
        i, n = 0, len(text)
        while i < n:
            ch = text[i]
            if ch.isspace():
                i += 1
            elif ch in "+-*/^()":
                self.toks.append(ch)
                i += 1
            elif ch.isdigit():
                j = i
                while j < n and text[j].isdigit():
                    j += 1
                self.toks.append(int(text[i:j]))
                i = j
            elif ch in ("q", "i"):
                self.toks.append(ch)
                i += 1
            else:
                raise ValueError(f"unexpected character {ch!r} in scalar text")
        self.pos = 0

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def next(self):
        t = self.peek()
        if t is None:
            raise ValueError("unexpected end of scalar text")
        self.pos += 1
        return t


def parse_scalar(text: str) -> Scalar:
    """Parse the canonical rendering (and any +-*/^ expression over q, i)."""
    tk = _Tokens(text)
    val = _parse_sum(tk)
    if tk.peek() is not None:
        raise ValueError(f"trailing input in scalar text at token {tk.peek()!r}")
    return val


def _parse_sum(tk) -> Scalar:
    acc = _parse_product(tk)
    while tk.peek() in ("+", "-"):
        op = tk.next()
        rhs = _parse_product(tk)
        acc = acc + rhs if op == "+" else acc - rhs
    return acc


def _parse_product(tk) -> Scalar:
    acc = _parse_factor(tk)
    while tk.peek() in ("*", "/"):
        op = tk.next()
        rhs = _parse_factor(tk)
        acc = acc * rhs if op == "*" else acc / rhs
    return acc


def _parse_factor(tk) -> Scalar:
    sign = 1
    while tk.peek() in ("+", "-"):
        if tk.next() == "-":
            sign = -sign
    base = _parse_atom(tk)
    if tk.peek() == "^":
        tk.next()
        esign = 1
        while tk.peek() in ("+", "-"):
            if tk.next() == "-":
                esign = -esign
        e = tk.next()
        if not isinstance(e, int):
            raise ValueError("exponent must be an integer")
        base = _scalar_int_pow(base, esign * e)
    return base if sign == 1 else -base


def _parse_atom(tk) -> Scalar:
    t = tk.next()
    if t == "(":
        v = _parse_sum(tk)
        if tk.next() != ")":
            raise ValueError("unbalanced parenthesis in scalar text")
        return v
    if t == "q":
        return Q
    if t == "i":
        return I
    if isinstance(t, int):
        return Scalar.from_int(t)
    raise ValueError(f"unexpected token {t!r} in scalar text")


def _scalar_int_pow(s: Scalar, e: int) -> Scalar:
    if e == 0:
        return ONE
    if e < 0:
        return ONE / _scalar_int_pow(s, -e)
    acc = ONE
    for _ in range(e):
        acc = acc * s
    return acc
