"""Single-mode Fock space: ladder-operator polynomials and their truncations.

A polynomial is a sum of words over {a, a+}.  Coefficients are kept exact in
Q(i, sqrt 2) so that expansions of Q = (a + a+)/sqrt2 and P = i(a+ - a)/sqrt2
cancel exactly; they become doubles only when a matrix is built.

Truncation follows H_d = P_d H P_d: words are applied in a space padded by
the polynomial degree, and the top-left d x d block is kept.  Composing
truncated factors would be wrong, e.g. (P_d Q P_d)^2 != P_d Q^2 P_d.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import linalg
from .errors import UsageError

ANNIHILATE = 0
CREATE = 1
_SYMBOL = {ANNIHILATE: "a", CREATE: "ad"}
_INV_SQRT2 = 1.0 / math.sqrt(2.0)


@dataclass(frozen=True)
class Coefficient:
    """Exact number (ar + i*ai) + (br + i*bi)/sqrt(2) with rational parts."""

    ar: Fraction = Fraction(0)
    ai: Fraction = Fraction(0)
    br: Fraction = Fraction(0)
    bi: Fraction = Fraction(0)

    @classmethod
    def rational(cls, re_part, im_part=0) -> "Coefficient":
        return cls(Fraction(re_part), Fraction(im_part))

    def __add__(self, other: "Coefficient") -> "Coefficient":
        return Coefficient(self.ar + other.ar, self.ai + other.ai,
                           self.br + other.br, self.bi + other.bi)

    def __neg__(self) -> "Coefficient":
        return Coefficient(-self.ar, -self.ai, -self.br, -self.bi)

    def __mul__(self, other: "Coefficient") -> "Coefficient":
        # (a + b/s)(c + e/s) = ac + be/2 + (ae + bc)/s, with s = sqrt 2
        def cmul(xr, xi, yr, yi):
            return xr * yr - xi * yi, xr * yi + xi * yr

        acr, aci = cmul(self.ar, self.ai, other.ar, other.ai)
        ber, bei = cmul(self.br, self.bi, other.br, other.bi)
        aer, aei = cmul(self.ar, self.ai, other.br, other.bi)
        bcr, bci = cmul(self.br, self.bi, other.ar, other.ai)
        return Coefficient(acr + ber / 2, aci + bei / 2, aer + bcr, aei + bci)

    def conjugate(self) -> "Coefficient":
        return Coefficient(self.ar, -self.ai, self.br, -self.bi)

    def is_zero(self) -> bool:
        return not (self.ar or self.ai or self.br or self.bi)

    def __complex__(self) -> complex:
        return complex(float(self.ar), float(self.ai)) + complex(float(self.br), float(self.bi)) * _INV_SQRT2

    def __str__(self) -> str:
        parts = []
        for re_, im_, suffix in ((self.ar, self.ai, ""), (self.br, self.bi, "/sqrt2")):
            if re_ or im_:
                if im_ == 0:
                    parts.append(f"{re_}{suffix}")
                else:
                    sign = "+" if im_ >= 0 else "-"
                    parts.append(f"({re_}{sign}{abs(im_)}i){suffix}")
        return " + ".join(parts) if parts else "0"


ONE = Coefficient.rational(1)
_I = Coefficient.rational(0, 1)
_S = Coefficient(br=Fraction(1))  # 1/sqrt2


def _collect(pairs) -> tuple:
    acc: dict[tuple, Coefficient] = {}
    for coeff, word in pairs:
        acc[word] = acc.get(word, Coefficient()) + coeff
    return tuple(sorted(((c, w) for w, c in acc.items() if not c.is_zero()),
                        key=lambda cw: (len(cw[1]), cw[1])))


@lru_cache(maxsize=None)
def _normal_order_word(word: tuple) -> tuple:
    """Rewrite a word as sum of a+^k a^l words using a a+ = a+ a + 1."""
    for i in range(len(word) - 1):
        if word[i] == ANNIHILATE and word[i + 1] == CREATE:
            swapped = word[:i] + (CREATE, ANNIHILATE) + word[i + 2:]
            contracted = word[:i] + word[i + 2:]
            return _collect(_normal_order_word(swapped) + _normal_order_word(contracted))
    return ((ONE, word),)


@dataclass(frozen=True)
class LadderPolynomial:
    """Sum of coefficient * word; the empty word is the identity.

    Constructing with ``hermitian=True`` verifies self-adjointness
    symbolically (on the normal-ordered form) and raises UsageError if it
    fails.
    """

    terms: tuple = ()
    hermitian: bool = False
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "terms", _collect(self.terms))
        if self.hermitian and not self.is_self_adjoint():
            raise UsageError(f"polynomial {self.name or self.to_text()} is not Hermitian")

    @classmethod
    def scalar(cls, c: Coefficient) -> "LadderPolynomial":
        return cls(((c, ()),))

    @classmethod
    def letter(cls, op: int) -> "LadderPolynomial":
        return cls(((ONE, (op,)),))

    @property
    def degree(self) -> int:
        return max((len(w) for _, w in self.terms), default=0)

    def __add__(self, other: "LadderPolynomial") -> "LadderPolynomial":
        return LadderPolynomial(self.terms + other.terms)

    def __neg__(self) -> "LadderPolynomial":
        return LadderPolynomial(tuple((-c, w) for c, w in self.terms))

    def __sub__(self, other: "LadderPolynomial") -> "LadderPolynomial":
        return self + (-other)

    def __mul__(self, other: "LadderPolynomial") -> "LadderPolynomial":
        return LadderPolynomial(tuple((c1 * c2, w1 + w2)
                                      for c1, w1 in self.terms for c2, w2 in other.terms))

    def __pow__(self, k: int) -> "LadderPolynomial":
        if k < 0:
            raise UsageError("negative powers of ladder polynomials are undefined")
        out = LadderPolynomial.scalar(ONE)
        for _ in range(k):
            out = out * self
        return out

    def adjoint(self) -> "LadderPolynomial":
        return LadderPolynomial(tuple((c.conjugate(), tuple(1 - x for x in reversed(w)))
                                      for c, w in self.terms))

    def normal_ordered(self) -> "LadderPolynomial":
        pairs = []
        for c, w in self.terms:
            pairs.extend((c * c2, w2) for c2, w2 in _normal_order_word(w))
        return LadderPolynomial(tuple(pairs), name=self.name)

    def is_self_adjoint(self) -> bool:
        no = self.normal_ordered()
        return no.terms == no.adjoint().terms

    def as_hermitian(self, name: str = "") -> "LadderPolynomial":
        return LadderPolynomial(self.terms, hermitian=True, name=name or self.name)

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for c, w in self.terms:
            word = "*".join(_SYMBOL[x] for x in w) or "1"
            out.append(f"[{c}]*{word}")
        return " + ".join(out)


# ---------------------------------------------------------------------------
# text syntax:  0.5*Q^2 + 0.5*P^2,  Q^3,  0.5*(Q*P+P*Q),  i*(ad*a - a*ad) ...

_TOKEN = re.compile(r"\s*(?:(\d+(?:\.\d*)?(?:[eE][-+]?\d+)?|\.\d+(?:[eE][-+]?\d+)?)|([A-Za-z_]\w*)|(\S))")


def _tokenize(text: str) -> list:
    tokens, pos = [], 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        num, ident, sym = m.groups()
        if num is not None:
            tokens.append(("num", num))
        elif ident is not None:
            tokens.append(("id", ident))
        else:
            tokens.append(("op", sym))
        pos = m.end()
    return tokens


def _atoms() -> dict:
    a = LadderPolynomial.letter(ANNIHILATE)
    ad = LadderPolynomial.letter(CREATE)
    s = LadderPolynomial.scalar(_S)
    i = LadderPolynomial.scalar(_I)
    return {
        "a": a,
        "ad": ad,
        "adag": ad,
        "N": ad * a,
        "Q": s * (a + ad),
        "P": i * s * (ad - a),
        "i": i,
        "I": LadderPolynomial.scalar(ONE),
    }


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0
        self.atoms = _atoms()

    def error(self, msg: str):
        raise UsageError(f"cannot parse polynomial {self.text!r}: {msg}")

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def parse(self) -> LadderPolynomial:
        if not self.tokens:
            self.error("empty expression")
        out = self.expr()
        if self.pos != len(self.tokens):
            self.error(f"unexpected token {self.peek()[1]!r}")
        return out

    def expr(self) -> LadderPolynomial:
        out = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            _, sym = self.take()
            rhs = self.term()
            out = out + rhs if sym == "+" else out - rhs
        return out

    def term(self) -> LadderPolynomial:
        out = self.unary()
        while self.peek() == ("op", "*"):
            self.take()
            out = out * self.unary()
        return out

    def unary(self) -> LadderPolynomial:
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> LadderPolynomial:
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num" or not val.isdigit():
                self.error("exponent must be a non-negative integer")
            base = base ** int(val)
        return base

    def atom(self) -> LadderPolynomial:
        kind, val = self.take()
        if kind == "num":
            return LadderPolynomial.scalar(Coefficient.rational(Fraction(val)))
        if kind == "id":
            if val not in self.atoms:
                self.error(f"unknown symbol {val!r}")
            return self.atoms[val]
        if (kind, val) == ("op", "("):
            inner = self.expr()
            if self.take() != ("op", ")"):
                self.error("missing ')'")
            return inner
        self.error(f"unexpected {val!r}" if val else "unexpected end of input")


def parse_polynomial(text: str, hermitian: bool = True, name: str = "") -> LadderPolynomial:
    """Parse ``0.5*Q^2 + 0.5*P^2``-style text into a normal-ordered polynomial.

    Symbols: Q, P, a, ad (creation, also adag), N, i, I.  With ``hermitian=True`` a
    non-self-adjoint expression raises UsageError.
    """
    poly = _Parser(text).parse().normal_ordered()
    return LadderPolynomial(poly.terms, hermitian=hermitian, name=name or text.strip())


_BUILTIN_TEXT = {
    "half_q2": "0.5*Q^2",
    "half_p2": "0.5*P^2",
    "harmonic_oscillator": "0.5*(Q^2+P^2)",
    "squeezing": "0.5*(Q*P+P*Q)",
    "q3": "Q^3",
    "p2": "P^2",
}


@lru_cache(maxsize=None)
def builtin_hamiltonians() -> dict:
    return {name: parse_polynomial(text, name=name) for name, text in _BUILTIN_TEXT.items()}


def get_builtin(name: str) -> LadderPolynomial:
    catalog = builtin_hamiltonians()
    if name not in catalog:
        raise UsageError(f"unknown Hamiltonian {name!r}; known: {', '.join(sorted(catalog))}")
    return catalog[name]


def resolve_polynomial(text: str) -> LadderPolynomial:
    """A builtin name or a polynomial expression."""
    key = text.strip()
    if key in _BUILTIN_TEXT:
        return get_builtin(key)
    return parse_polynomial(key)


# ---------------------------------------------------------------------------
# matrices


@dataclass(frozen=True)
class TruncationScheme:
    dim: int
    basis: str = "fock"

    def __post_init__(self):
        if self.basis != "fock":
            raise UsageError(f"only the Fock basis is supported, got {self.basis!r}")
        if int(self.dim) != self.dim or self.dim < 1:
            raise UsageError(f"truncation dimension must be a positive integer, got {self.dim}")


def _dim(scheme) -> int:
    if isinstance(scheme, TruncationScheme):
        return scheme.dim
    return TruncationScheme(int(scheme)).dim


def annihilation_matrix(d: int) -> np.ndarray:
    d = _dim(d)
    m = np.zeros((d, d), dtype=np.complex128)
    idx = np.arange(1, d)
    m[idx - 1, idx] = np.sqrt(idx)
    return m


def creation_matrix(d: int) -> np.ndarray:
    return annihilation_matrix(d).T.copy()


def position_matrix(d: int) -> np.ndarray:
    a = annihilation_matrix(d)
    return linalg.hermitian(_INV_SQRT2 * (a + a.T))


def momentum_matrix(d: int) -> np.ndarray:
    a = annihilation_matrix(d)
    return linalg.hermitian(complex(0.0, _INV_SQRT2) * (a.T - a))


def number_matrix(d: int) -> np.ndarray:
    return linalg.hermitian(np.diag(np.arange(_dim(d), dtype=np.complex128)))


def _word_action(word: tuple, d: int, big: int) -> tuple[np.ndarray, np.ndarray]:
    """Image of |0>..|d-1> under a word, evaluated in a space of dimension ``big``.

    Returns (target level, squared amplitude).  The squared amplitude is a
    product of integers, accumulated exactly so that e.g. ad*a gives m, not
    sqrt(m)**2.
    """
    level = np.arange(d, dtype=np.int64)
    weight = np.ones(d, dtype=np.float64)   # exact while below 2**53
    for op in reversed(word):   # the rightmost letter acts first
        if op == ANNIHILATE:
            weight *= level
            level = np.maximum(level - 1, 0)
        else:
            level = level + 1
            weight *= np.where(level < big, level, 0)
    if weight.max(initial=0.0) >= 2.0 ** 53:
        raise UsageError(f"word of length {len(word)} overflows exact weights at d={d}")
    return level, weight


def truncate_polynomial(poly: LadderPolynomial, scheme) -> np.ndarray:
    """Exact matrix of P_d p P_d in the Fock basis |0>, ..., |d-1>.

    Words are applied in the padded space of dimension d + degree, where
    no intermediate level is ever cut off, and the d x d block is kept.
    """
    d = _dim(scheme)
    big = d + poly.degree
    cols = np.arange(d)
    out = np.zeros((d, d), dtype=np.complex128)
    for coeff, word in poly.terms:
        level, weight = _word_action(word, d, big)
        keep = (level < d) & (weight > 0)
        out[level[keep], cols[keep]] += complex(coeff) * np.sqrt(weight[keep])
    scale = max(1.0, float(np.abs(out).max(initial=0.0)))
    if not linalg.is_hermitian(out, atol=1e-12 * scale):
        raise UsageError(f"truncation of {poly.name or poly.to_text()} is not Hermitian")
    return linalg.hermitian(out)


def fock_state(m: int, d: int) -> np.ndarray:
    d = _dim(d)
    if int(m) != m or not 0 <= m < d:
        raise UsageError(f"Fock state |{m}> does not lie in a {d}-dimensional truncation")
    v = np.zeros(d, dtype=np.complex128)
    v[int(m)] = 1.0
    return v
