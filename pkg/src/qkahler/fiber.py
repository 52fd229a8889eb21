"""The rank-n fiber exterior algebra carrying the quantum projective space
calculus.

Basis monomials are ordered wedge words e+[i1] ^ ... ^ e+[ia] ^ e-[j1] ^ ...
^ e-[jb] with ascending distinct indices drawn from {1..n}: every plus
generator precedes every minus generator.  Products of arbitrary words are
brought to this normal form with the rewrite rules

    e-_i e+_j  ->  -q e+_j e-_i                     (i != j)
    e-_i e+_i  ->  -q^2 e+_i e-_i - (q^2-1) * sum_{a>i} e+_a e-_a
    e-_i e-_h  ->  -q^-1 e-_h e-_i                  (h < i)
    e+_i e+_h  ->  -q e+_h e+_i                     (h < i)
    e+_i e+_i  =   e-_i e-_i  =  0

applied leftmost first.  The mixed rule with matching indices is the only
branching rule; all coefficients live in Q(i)(q).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .scalars import (
    ONE, Q, Scalar, GaussianRational, parse_scalar, render_scalar,
)

_NEG_Q = -Q
_NEG_QINV = -Scalar.q_power(-1)
_NEG_Q2 = -Scalar.q_power(2)
_ONE_MINUS_Q2 = ONE - Scalar.q_power(2)


@dataclass(frozen=True)
class BasisMonomial:
    """Normal-form wedge monomial, identified by its index sets."""

    plus: tuple
    minus: tuple

    @property
    def degree(self) -> int:
        return len(self.plus) + len(self.minus)

    @property
    def bidegree(self) -> tuple:
        return (len(self.plus), len(self.minus))

    def sort_key(self):
        return (self.degree, len(self.minus), self.plus, self.minus)

    def word(self) -> tuple:
        return tuple((+1, i) for i in self.plus) + tuple((-1, j) for j in self.minus)

    def __str__(self):
        if not self.plus and not self.minus:
            return "1"
        parts = []
        if self.plus:
            parts.append("e+[" + ",".join(map(str, self.plus)) + "]")
        if self.minus:
            parts.append("e-[" + ",".join(map(str, self.minus)) + "]")
        return "^".join(parts)

    __repr__ = __str__


UNIT_MONOMIAL = BasisMonomial((), ())


def _check_indices(idx, n: int, label: str):
    prev = 0
    for i in idx:
        if not 1 <= i <= n:
            raise ValueError(f"{label} index {i} outside 1..{n}")
        if i <= prev:
            raise ValueError(f"{label} indices must be strictly ascending")
        prev = i


_reduce_cache: dict = {}


def _reduce_word(n: int, word: tuple) -> dict:
    """Normal form of a wedge word as {BasisMonomial: Scalar}."""
    key = (n, word)
    hit = _reduce_cache.get(key)
    if hit is not None:
        return hit
    out: dict = {}
    stack = [(word, ONE)]
    while stack:
        w, c = stack.pop()
        pos = -1
        for p in range(len(w) - 1):
            s1, i1 = w[p]
            s2, i2 = w[p + 1]
            if s1 == s2:
                if i1 >= i2:
                    pos = p
                    break
            elif s1 == -1:
                pos = p
                break
        if pos < 0:
            mono = BasisMonomial(
                tuple(i for s, i in w if s == +1),
                tuple(i for s, i in w if s == -1),
            )
            acc = out.get(mono)
            out[mono] = c if acc is None else acc + c
            continue
        head, tail = w[:pos], w[pos + 2:]
        s1, i1 = w[pos]
        s2, i2 = w[pos + 1]
        if s1 == s2:
            if i1 == i2:
                continue  # square of a generator
            f = _NEG_Q if s1 == +1 else _NEG_QINV
            stack.append((head + ((s1, i2), (s1, i1)) + tail, c * f))
        elif i1 != i2:
            stack.append((head + ((+1, i2), (-1, i1)) + tail, c * _NEG_Q))
        else:
            stack.append((head + ((+1, i1), (-1, i1)) + tail, c * _NEG_Q2))
            for a in range(i1 + 1, n + 1):
                stack.append((head + ((+1, a), (-1, a)) + tail, c * _ONE_MINUS_Q2))
    out = {m: s for m, s in out.items() if s}
    _reduce_cache[key] = out
    return out


_wedge_cache: dict = {}


def _wedge_monomials(n: int, m1: BasisMonomial, m2: BasisMonomial) -> dict:
    key = (n, m1, m2)
    hit = _wedge_cache.get(key)
    if hit is None:
        hit = _reduce_word(n, m1.word() + m2.word())
        _wedge_cache[key] = hit
    return hit


# star on generators: e+_a -> q^(-2(a+1)) e-_a and e-_a -> q^(2(a+1)) e+_a.
# The exponent pattern is pinned by requiring an involution that fixes the
# fundamental 2-form and reproduces the rank 1 and rank 2 pairing tables;
# see the exponent-fit test in the test suite.  Flipping the sign of both
# images together amounts to relabelling every minus generator by -1, an
# equivalent presentation, so the positive choice is used.

def _star_generator(s: int, a: int):
    if s == +1:
        return (-1, a), Scalar.q_power(-2 * (a + 1))
    return (+1, a), Scalar.q_power(2 * (a + 1))


_star_cache: dict = {}


def _star_monomial(n: int, m: BasisMonomial) -> dict:
    key = (n, m)
    hit = _star_cache.get(key)
    if hit is not None:
        return hit
    w = m.word()
    k = m.degree
    coeff = ONE if (k * (k - 1) // 2) % 2 == 0 else -ONE
    img = []
    for s, a in reversed(w):
        g, c = _star_generator(s, a)
        img.append(g)
        coeff = coeff * c
    reduced = _reduce_word(n, tuple(img))
    out = {mono: coeff * c for mono, c in reduced.items()}
    _star_cache[key] = out
    return out


class FiberForm:
    """Element of the rank-n fiber algebra: a Scalar combination of
    normal-form monomials."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms=None):
        self.n = n
        self.terms = {}
        if terms:
            for m, c in terms.items():
                if c:
                    self.terms[m] = c

    @staticmethod
    def zero(n: int) -> "FiberForm":
        return FiberForm(n)

    @staticmethod
    def unit(n: int) -> "FiberForm":
        return FiberForm(n, {UNIT_MONOMIAL: ONE})

    @staticmethod
    def monomial(n: int, plus, minus, coeff=ONE) -> "FiberForm":
        plus = tuple(plus)
        minus = tuple(minus)
        _check_indices(plus, n, "plus")
        _check_indices(minus, n, "minus")
        return FiberForm(n, {BasisMonomial(plus, minus): coeff})

    def _compatible(self, other: "FiberForm"):
        if self.n != other.n:
            raise ValueError(f"mixed ranks {self.n} and {other.n}")

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, FiberForm):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __add__(self, other):
        self._compatible(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            s = c if s is None else s + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        r = FiberForm(self.n)
        r.terms = out
        return r

    def __neg__(self):
        r = FiberForm(self.n)
        r.terms = {m: -c for m, c in self.terms.items()}
        return r

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "FiberForm":
        if isinstance(c, (int, GaussianRational)):
            c = Scalar.from_int(c) if isinstance(c, int) else Scalar.from_gaussian(c)
        if not c:
            return FiberForm(self.n)
        r = FiberForm(self.n)
        r.terms = {m: cc * c for m, cc in self.terms.items()}
        return r

    def wedge(self, other: "FiberForm") -> "FiberForm":
        self._compatible(other)
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                c12 = c1 * c2
                for m, f in _wedge_monomials(self.n, m1, m2).items():
                    s = out.get(m)
                    s = c12 * f if s is None else s + c12 * f
                    if s:
                        out[m] = s
                    else:
                        out.pop(m, None)
        r = FiberForm(self.n)
        r.terms = out
        return r

    def __mul__(self, other):
        if isinstance(other, FiberForm):
            return self.wedge(other)
        return self.scale(other)

    def __rmul__(self, other):
        # scalars commute with forms, so left scaling equals right scaling
        return self.scale(other)

    def star(self) -> "FiberForm":
        """Graded conjugate-linear involution of the algebra."""
        out: dict = {}
        for m, c in self.terms.items():
            cc = c.conjugate()
            for mono, f in _star_monomial(self.n, m).items():
                s = out.get(mono)
                s = cc * f if s is None else s + cc * f
                if s:
                    out[mono] = s
                else:
                    out.pop(mono, None)
        r = FiberForm(self.n)
        r.terms = out
        return r

    def degrees(self):
        return sorted({m.degree for m in self.terms})

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def degree(self) -> int:
        degs = self.degrees()
        if len(degs) != 1:
            raise ValueError("form is not homogeneous")
        return degs[0]

    def bidegree_split(self) -> dict:
        out: dict = {}
        for m, c in self.terms.items():
            out.setdefault(m.bidegree, {})[m] = c
        return {bd: FiberForm(self.n, t) for bd, t in sorted(out.items())}

    def degree_split(self) -> dict:
        out: dict = {}
        for m, c in self.terms.items():
            out.setdefault(m.degree, {})[m] = c
        return {k: FiberForm(self.n, t) for k, t in sorted(out.items())}

    def coefficient(self, mono: BasisMonomial) -> Scalar:
        from .scalars import ZERO
        return self.terms.get(mono, ZERO)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: t[0].sort_key())

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            cs = render_scalar(c)
            ms = str(m)
            if m is UNIT_MONOMIAL or m == UNIT_MONOMIAL:
                parts.append(cs if _is_simple(cs) else f"({cs})")
            elif cs == "1":
                parts.append(ms)
            elif cs == "-1":
                parts.append(f"-{ms}")
            elif _is_simple(cs):
                parts.append(f"{cs}*{ms}")
            else:
                parts.append(f"({cs})*{ms}")
        return " + ".join(parts)

    __repr__ = __str__

    def to_json_terms(self) -> list:
        out = []
        for m, c in self.sorted_terms():
            out.append({"I": list(m.plus), "J": list(m.minus),
                        "coeff": render_scalar(c)})
        return out

    @staticmethod
    def from_json_terms(n: int, terms) -> "FiberForm":
        acc = FiberForm(n)
        for t in terms:
            acc = acc + FiberForm.monomial(n, t["I"], t["J"],
                                           parse_scalar(t["coeff"]))
        return acc


def _is_simple(cs: str) -> bool:
    """True when a rendered scalar needs no parentheses as a coefficient."""
    if cs.startswith("(") and cs.endswith(")"):
        return False
    depth = 0
    for k, ch in enumerate(cs):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif depth == 0 and ch in "+-" and k > 0 and cs[k - 1] != "^":
            return False
        elif depth == 0 and ch == "/":
            return False
    return True


def e_plus(n: int, i: int) -> FiberForm:
    return FiberForm.monomial(n, (i,), ())


def e_minus(n: int, i: int) -> FiberForm:
    return FiberForm.monomial(n, (), (i,))


def basis_bidegree(n: int, a: int, b: int) -> list:
    """Canonically ordered monomial basis of the (a, b) component."""
    if not (0 <= a <= n and 0 <= b <= n):
        return []
    return [BasisMonomial(p, m)
            for p in combinations(range(1, n + 1), a)
            for m in combinations(range(1, n + 1), b)]


def basis_degree(n: int, k: int) -> list:
    """Canonically ordered monomial basis of the degree-k component."""
    out = []
    for b in range(k + 1):
        a = k - b
        out.extend(basis_bidegree(n, a, b))
    return out


def weight(m: BasisMonomial, n: int) -> tuple:
    """Torus weight in Z^n: each e+_i contributes unit_i plus the all-ones
    vector, each e-_j the negative of that."""
    w = [0] * n
    for i in m.plus:
        w[i - 1] += 1
        for t in range(n):
            w[t] += 1
    for j in m.minus:
        w[j - 1] -= 1
        for t in range(n):
            w[t] -= 1
    return tuple(w)
