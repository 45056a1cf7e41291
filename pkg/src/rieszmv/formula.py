"""Formulas of many-valued logic with scalar connectives.

Abstract syntax, parsing, printing and evaluation over the standard
Riesz MV-algebra [0, 1].  The primitive connectives are negation,
implication and the scalar family ``N[r]`` (semantics 1 - r + r*x); the
scalar ``D[r]`` (semantics r*x), truncated sum/product, lattice join/meet,
equivalence, truncated difference and rational constants are kept as
distinct nodes so printing preserves the input, but their meaning is fixed
by expansion into the primitives.

Concrete grammar (ASCII, precedence low to high, ``->`` right-associative)::

    formula := iff
    iff     := imp ("<->" imp)*
    imp     := disj ("->" imp)?
    disj    := conj ("\\/" conj)*
    conj    := sum ("/\\" sum)*
    sum     := prod (("(+)" | "(-)") prod)*
    prod    := unary ("(.)" unary)*
    unary   := "!" unary | "D[" rat "]" unary | "N[" rat "]" unary | atom
    atom    := "v" INT | "C[" rat "]" | "(" formula ")"

Rational literals are ``p/q`` or exact decimals (``0.3`` means 3/10).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .kernel import ONE, UnitRational, implies as k_implies, join as k_join, meet as k_meet, neg as k_neg, odot as k_odot, oplus as k_oplus


class ParseError(ValueError):
    """Syntax or range error in formula text, with a 0-based position."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


@dataclass(frozen=True)
class Formula:
    """Base class for formula nodes.  Instances are immutable."""

    def __str__(self):
        return format_formula(self)


@dataclass(frozen=True)
class Var(Formula):
    index: int

    def __post_init__(self):
        if not isinstance(self.index, int) or self.index < 1:
            raise ValueError(f"variable index must be a positive integer, got {self.index!r}")


@dataclass(frozen=True)
class Neg(Formula):
    child: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Nabla(Formula):
    """Scalar connective with value 1 - r + r*x."""

    r: Fraction
    child: Formula

    def __post_init__(self):
        object.__setattr__(self, "r", UnitRational(self.r))


@dataclass(frozen=True)
class Delta(Formula):
    """Scalar connective with value r*x; definable as ``!N[r]!``."""

    r: Fraction
    child: Formula

    def __post_init__(self):
        object.__setattr__(self, "r", UnitRational(self.r))


@dataclass(frozen=True)
class RConst(Formula):
    """Constant formula with value r; definable as ``D[r](v1 -> v1)``.

    Stored as a primitive so that a bare constant has arity 0.
    """

    r: Fraction

    def __post_init__(self):
        object.__setattr__(self, "r", UnitRational(self.r))


@dataclass(frozen=True)
class Oplus(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Odot(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Join(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Meet(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Iff(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Ominus(Formula):
    """Truncated difference, sugar for ``left (.) !right``."""

    left: Formula
    right: Formula


_BINARY = (Implies, Oplus, Odot, Join, Meet, Iff, Ominus)


def arity(phi: Formula) -> int:
    """Largest variable index occurring in ``phi`` (0 for constants)."""
    seen = {}

    def go(node):
        key = id(node)
        cached = seen.get(key)
        if cached is not None:
            return cached
        kind = type(node)
        if kind is Var:
            out = node.index
        elif kind is RConst:
            out = 0
        elif kind is Neg:
            out = go(node.child)
        elif kind in (Nabla, Delta):
            out = go(node.child)
        else:
            out = max(go(node.left), go(node.right))
        seen[key] = out
        return out

    return go(phi)


def evaluate(phi: Formula, point) -> Fraction:
    """Value of ``phi`` at ``point``, a sequence of rationals in [0, 1].

    Points longer than the formula's arity are accepted; the extra
    coordinates are ignored.  A variable index beyond ``len(point)`` is an
    arity mismatch and raises ``ValueError``.
    """
    for c in point:
        if isinstance(c, float):
            raise TypeError("floats are not exact; pass Fraction coordinates")
        if c < 0 or c > 1:
            raise ValueError(f"evaluation coordinate {c} outside [0, 1]")
    npoint = len(point)
    memo = {}

    def go(node):
        key = id(node)
        cached = memo.get(key)
        if cached is not None:
            return cached
        kind = type(node)
        if kind is Var:
            if node.index > npoint:
                raise ValueError(
                    f"arity mismatch: formula uses v{node.index}, point has {npoint} coordinates"
                )
            out = point[node.index - 1]
        elif kind is Neg:
            out = k_neg(go(node.child))
        elif kind is Implies:
            out = k_implies(go(node.left), go(node.right))
        elif kind is Nabla:
            out = ONE - node.r * (ONE - go(node.child))
        elif kind is Delta:
            out = node.r * go(node.child)
        elif kind is RConst:
            out = node.r
        elif kind is Oplus:
            out = k_oplus(go(node.left), go(node.right))
        elif kind is Odot:
            out = k_odot(go(node.left), go(node.right))
        elif kind is Join:
            out = k_join(go(node.left), go(node.right))
        elif kind is Meet:
            out = k_meet(go(node.left), go(node.right))
        elif kind is Iff:
            left, right = go(node.left), go(node.right)
            out = k_meet(k_implies(left, right), k_implies(right, left))
        elif kind is Ominus:
            out = k_odot(go(node.left), k_neg(go(node.right)))
        else:
            raise TypeError(f"not a formula node: {node!r}")
        if not isinstance(out, Fraction):
            out = Fraction(out)
        memo[key] = out
        return out

    return go(phi)


def _e_odot(left, right):
    return Neg(Implies(left, Neg(right)))


def _e_join(left, right):
    return Implies(Implies(left, right), right)


def _e_meet(left, right):
    return Neg(_e_join(Neg(left), Neg(right)))


def expand(phi: Formula) -> Formula:
    """Rewrite ``phi`` into the primitive connectives Var/Neg/Implies/Nabla.

    Evaluation commutes with expansion; this is the definitional reading of
    the derived nodes.
    """
    # The memo is keyed on id(); only nodes owned by ``phi`` may be keys,
    # never freshly built temporaries, whose ids could be recycled.
    memo = {}

    def go(node):
        key = id(node)
        cached = memo.get(key)
        if cached is not None:
            return cached
        kind = type(node)
        if kind is Var:
            out = node
        elif kind is Neg:
            out = Neg(go(node.child))
        elif kind is Implies:
            out = Implies(go(node.left), go(node.right))
        elif kind is Nabla:
            out = Nabla(node.r, go(node.child))
        elif kind is Delta:
            out = Neg(Nabla(node.r, Neg(go(node.child))))
        elif kind is RConst:
            out = Neg(Nabla(node.r, Neg(Implies(Var(1), Var(1)))))
        elif kind is Oplus:
            out = Implies(Neg(go(node.left)), go(node.right))
        elif kind is Odot:
            out = _e_odot(go(node.left), go(node.right))
        elif kind is Join:
            out = _e_join(go(node.left), go(node.right))
        elif kind is Meet:
            out = _e_meet(go(node.left), go(node.right))
        elif kind is Iff:
            left, right = go(node.left), go(node.right)
            out = _e_meet(Implies(left, right), Implies(right, left))
        elif kind is Ominus:
            out = _e_odot(go(node.left), Neg(go(node.right)))
        else:
            raise TypeError(f"not a formula node: {node!r}")
        memo[key] = out
        return out

    return go(phi)


# ---------------------------------------------------------------------------
# Tokenizer / parser


_TOKEN_RE = re.compile(
    r"""
      (?P<ws>\s+)
    | (?P<iff><->)
    | (?P<imp>->)
    | (?P<disj>\\/)
    | (?P<conj>/\\)
    | (?P<oplus>\(\+\))
    | (?P<ominus>\(-\))
    | (?P<odot>\(\.\))
    | (?P<neg>!)
    | (?P<delta>D\[)
    | (?P<nabla>N\[)
    | (?P<const>C\[)
    | (?P<rbrack>\])
    | (?P<lparen>\()
    | (?P<rparen>\))
    | (?P<var>v\d+)
    | (?P<rat>\d+\.\d+|\d+(?:/\d+)?)
    """,
    re.VERBOSE,
)


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = match.lastgroup
        if kind != "ws":
            tokens.append((kind, match.group(), pos))
        pos = match.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i][0]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind, what):
        tok = self.tokens[self.i]
        if tok[0] != kind:
            raise ParseError(f"expected {what}, found {tok[1] or 'end of input'!r}", tok[2])
        self.i += 1
        return tok

    def scalar(self):
        kind, value, pos = self.expect("rat", "a rational literal")
        if "/" in value:
            num, den = value.split("/")
            if int(den) == 0:
                raise ParseError("zero denominator", pos)
            r = Fraction(int(num), int(den))
        else:
            r = Fraction(value)
        if r > 1:
            raise ParseError(f"scalar {value} outside [0, 1]", pos)
        return r

    def formula(self):
        return self.iff()

    def iff(self):
        left = self.imp()
        while self.peek() == "iff":
            self.take()
            left = Iff(left, self.imp())
        return left

    def imp(self):
        left = self.disj()
        if self.peek() == "imp":
            self.take()
            return Implies(left, self.imp())
        return left

    def disj(self):
        left = self.conj()
        while self.peek() == "disj":
            self.take()
            left = Join(left, self.conj())
        return left

    def conj(self):
        left = self.sum()
        while self.peek() == "conj":
            self.take()
            left = Meet(left, self.sum())
        return left

    def sum(self):
        left = self.prod()
        while self.peek() in ("oplus", "ominus"):
            kind, _, _ = self.take()
            right = self.prod()
            left = Oplus(left, right) if kind == "oplus" else Ominus(left, right)
        return left

    def prod(self):
        left = self.unary()
        while self.peek() == "odot":
            self.take()
            left = Odot(left, self.unary())
        return left

    def unary(self):
        kind = self.peek()
        if kind == "neg":
            self.take()
            return Neg(self.unary())
        if kind in ("delta", "nabla"):
            self.take()
            r = self.scalar()
            self.expect("rbrack", "']'")
            child = self.unary()
            return Delta(r, child) if kind == "delta" else Nabla(r, child)
        return self.atom()

    def atom(self):
        kind, value, pos = self.take()
        if kind == "var":
            index = int(value[1:])
            if index == 0:
                raise ParseError("variable index must be at least 1", pos)
            return Var(index)
        if kind == "const":
            r = self.scalar()
            self.expect("rbrack", "']'")
            return RConst(r)
        if kind == "lparen":
            inner = self.formula()
            self.expect("rparen", "')'")
            return inner
        raise ParseError(f"expected a formula, found {value or 'end of input'!r}", pos)


def parse(text: str) -> Formula:
    """Parse formula text into its AST; raises :class:`ParseError`."""
    parser = _Parser(text)
    phi = parser.formula()
    tok = parser.tokens[parser.i]
    if tok[0] != "eof":
        raise ParseError(f"trailing input {tok[1]!r}", tok[2])
    return phi


# ---------------------------------------------------------------------------
# Printer

_LEVELS = {
    Iff: 0,
    Implies: 1,
    Join: 2,
    Meet: 3,
    Oplus: 4,
    Ominus: 4,
    Odot: 5,
    Neg: 6,
    Delta: 6,
    Nabla: 6,
    Var: 7,
    RConst: 7,
}


def format_formula(phi: Formula) -> str:
    """Render ``phi`` with minimal parentheses; inverse of :func:`parse`."""

    def fmt(node, minimum):
        kind = type(node)
        level = _LEVELS[kind]
        if kind is Var:
            s = f"v{node.index}"
        elif kind is RConst:
            s = f"C[{node.r}]"
        elif kind is Neg:
            s = "!" + fmt(node.child, 6)
        elif kind is Delta:
            s = f"D[{node.r}] " + fmt(node.child, 6)
        elif kind is Nabla:
            s = f"N[{node.r}] " + fmt(node.child, 6)
        elif kind is Iff:
            s = fmt(node.left, 0) + " <-> " + fmt(node.right, 1)
        elif kind is Implies:
            # right-associative: the right child may be another implication
            s = fmt(node.left, 2) + " -> " + fmt(node.right, 1)
        elif kind is Join:
            s = fmt(node.left, 2) + " \\/ " + fmt(node.right, 3)
        elif kind is Meet:
            s = fmt(node.left, 3) + " /\\ " + fmt(node.right, 4)
        elif kind is Oplus:
            s = fmt(node.left, 4) + " (+) " + fmt(node.right, 5)
        elif kind is Ominus:
            s = fmt(node.left, 4) + " (-) " + fmt(node.right, 5)
        elif kind is Odot:
            s = fmt(node.left, 5) + " (.) " + fmt(node.right, 6)
        else:
            raise TypeError(f"not a formula node: {node!r}")
        if level < minimum:
            return "(" + s + ")"
        return s

    return fmt(phi, 0)
