"""Propositional formulas: syntax trees, parsing, printing and semantics.

Satisfiability is decided by exhaustive enumeration of valuations. A
formula over an ordered atom universe of size ``k`` is compiled into a
*truth mask*, an integer with ``2**k`` bits whose bit ``v`` is set iff the
formula is true under valuation ``v`` (atom ``i`` is true in ``v`` iff bit
``i`` of ``v`` is set). Conjunction of formulas is then bitwise AND and a
set of formulas is consistent iff the AND of their masks is non-zero.

Grammar::

    atom   ::= [a-z][a-zA-Z0-9_]*
    unary  ::= "!" | "~"
    binary ::= "&" | "|" | "xor" | "->" | "<->"
    const  ::= "true" | "false"

Binding strength, tightest first: negation, ``&``, ``xor``, ``|``, ``->``,
``<->``. Implication associates to the right, everything else to the left.
"""

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .config import check_cap, current_caps
from .errors import FormulaSyntaxError, InputError, UnboundAtomError

__all__ = [
    "Formula", "Atom", "Const", "Not", "Binary", "TOP", "BOTTOM",
    "parse_formula", "format_formula", "atoms", "evaluate", "truth_mask",
    "is_consistent_set", "entails", "models", "conj", "disj", "neg",
    "implies", "iff", "is_tautology", "is_contradiction",
]

ATOM_RE = re.compile(r"[a-z][a-zA-Z0-9_]*\Z")
KEYWORDS = frozenset({"true", "false", "xor"})


class Formula:
    """Base class of the immutable syntax tree nodes."""

    __slots__ = ()

    def __str__(self):
        return format_formula(self)


@dataclass(frozen=True, slots=True)
class Atom(Formula):
    name: str

    def __post_init__(self):
        if not isinstance(self.name, str) or not ATOM_RE.match(self.name) \
                or self.name in KEYWORDS:
            raise InputError(f"invalid atom name {self.name!r}")


@dataclass(frozen=True, slots=True)
class Const(Formula):
    value: bool


@dataclass(frozen=True, slots=True)
class Not(Formula):
    child: Formula


BINARY_OPS = ("and", "or", "implies", "iff", "xor")


@dataclass(frozen=True, slots=True)
class Binary(Formula):
    op: str
    left: Formula
    right: Formula

    def __post_init__(self):
        if self.op not in BINARY_OPS:
            raise InputError(f"unknown binary operator {self.op!r}")


TOP = Const(True)
BOTTOM = Const(False)


def neg(f):
    return Not(f)


def implies(a, b):
    return Binary("implies", a, b)


def iff(a, b):
    return Binary("iff", a, b)


def conj(formulas):
    """Left-nested conjunction; the empty conjunction is ``true``."""
    formulas = list(formulas)
    if not formulas:
        return TOP
    out = formulas[0]
    for f in formulas[1:]:
        out = Binary("and", out, f)
    return out


def disj(formulas):
    """Left-nested disjunction; the empty disjunction is ``false``."""
    formulas = list(formulas)
    if not formulas:
        return BOTTOM
    out = formulas[0]
    for f in formulas[1:]:
        out = Binary("or", out, f)
    return out


# -- parsing -----------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<arrow><->|->)|(?P<sym>[&|!~()])|(?P<word>[A-Za-z_][A-Za-z0-9_]*)|(?P<bad>\S))"
)

# binding strength of binary operators; higher binds tighter
PRECEDENCE = {"iff": 1, "implies": 2, "or": 3, "xor": 4, "and": 5}
_SYMBOL_OP = {"<->": "iff", "->": "implies", "|": "or", "xor": "xor", "&": "and"}
_OP_SYMBOL = {v: k for k, v in _SYMBOL_OP.items()}
_NOT_PREC = 6


def _tokenize(src):
    tokens = []
    pos = 0
    while pos < len(src):
        m = _TOKEN_RE.match(src, pos)
        if m is None:  # only trailing whitespace left
            break
        start = m.start(m.lastgroup)
        text = m.group(m.lastgroup)
        if m.lastgroup == "bad":
            raise FormulaSyntaxError(f"unknown token {text!r}", start)
        if m.lastgroup == "word" and text not in KEYWORDS and not ATOM_RE.match(text):
            raise FormulaSyntaxError(f"invalid identifier {text!r}", start)
        tokens.append((text, start))
        pos = m.end()
    tokens.append(("", len(src)))
    return tokens


class _Parser:
    def __init__(self, src):
        self.tokens = _tokenize(src)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def parse(self):
        if self.peek()[0] == "":
            raise FormulaSyntaxError("empty formula", 0)
        f = self.expr(1)
        text, pos = self.peek()
        if text != "":
            raise FormulaSyntaxError(f"unexpected {text!r}", pos)
        return f

    def expr(self, min_prec):
        left = self.unary()
        while True:
            text, _ = self.peek()
            op = _SYMBOL_OP.get(text)
            if op is None or PRECEDENCE[op] < min_prec:
                return left
            self.advance()
            prec = PRECEDENCE[op]
            right = self.expr(prec if op == "implies" else prec + 1)
            left = Binary(op, left, right)

    def unary(self):
        text, pos = self.advance()
        if text in ("!", "~"):
            return Not(self.unary())
        if text == "(":
            f = self.expr(1)
            close, cpos = self.advance()
            if close != ")":
                raise FormulaSyntaxError("expected ')'", cpos)
            return f
        if text == "true":
            return TOP
        if text == "false":
            return BOTTOM
        if text and ATOM_RE.match(text) and text not in KEYWORDS:
            return Atom(text)
        if text == "":
            raise FormulaSyntaxError("unexpected end of formula", pos)
        raise FormulaSyntaxError(f"unexpected {text!r}", pos)


def parse_formula(src):
    """Parse formula text into a syntax tree.

    >>> parse_formula("(p & q) <-> d")
    Binary(op='iff', left=Binary(op='and', left=Atom(name='p'), right=Atom(name='q')), right=Atom(name='d'))
    """
    if not isinstance(src, str):
        raise InputError(f"formula text must be a string, got {type(src).__name__}")
    return _Parser(src).parse()


def _prec(f):
    if isinstance(f, Binary):
        return PRECEDENCE[f.op]
    if isinstance(f, Not):
        return _NOT_PREC
    return _NOT_PREC + 1


def format_formula(f):
    """Print ``f`` with the fewest parentheses that parse back to ``f``."""
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Const):
        return "true" if f.value else "false"
    if isinstance(f, Not):
        inner = format_formula(f.child)
        if _prec(f.child) < _NOT_PREC:
            inner = f"({inner})"
        return "!" + inner
    if isinstance(f, Binary):
        p = PRECEDENCE[f.op]
        left, right = format_formula(f.left), format_formula(f.right)
        lp, rp = _prec(f.left), _prec(f.right)
        right_assoc = f.op == "implies"
        if lp < p or (lp == p and right_assoc):
            left = f"({left})"
        if rp < p or (rp == p and not right_assoc):
            right = f"({right})"
        return f"{left} {_OP_SYMBOL[f.op]} {right}"
    raise InputError(f"not a formula: {f!r}")


# -- semantics ---------------------------------------------------------------

def _atoms_of(f, out):
    if isinstance(f, Atom):
        out.add(f.name)
    elif isinstance(f, Not):
        _atoms_of(f.child, out)
    elif isinstance(f, Binary):
        _atoms_of(f.left, out)
        _atoms_of(f.right, out)


def atoms(formulas):
    """Atom names occurring in a formula or an iterable of formulas."""
    out = set()
    if isinstance(formulas, Formula):
        formulas = [formulas]
    for f in formulas:
        _atoms_of(f, out)
    return frozenset(out)


def _apply(op, a, b):
    if op == "and":
        return a and b
    if op == "or":
        return a or b
    if op == "implies":
        return (not a) or b
    if op == "iff":
        return a == b
    return a != b  # xor


def evaluate(f, valuation):
    """Classical truth value of ``f`` under a mapping from atom names to bools."""
    if isinstance(f, Atom):
        try:
            return bool(valuation[f.name])
        except KeyError:
            raise UnboundAtomError(f"atom {f.name!r} has no value") from None
    if isinstance(f, Const):
        return f.value
    if isinstance(f, Not):
        return not evaluate(f.child, valuation)
    return _apply(f.op, evaluate(f.left, valuation), evaluate(f.right, valuation))


@lru_cache(maxsize=256)
def _full_mask(k):
    return (1 << (1 << k)) - 1


@lru_cache(maxsize=4096)
def _atom_mask(i, k):
    # bit v is set iff bit i of v is set: blocks of 2**i zeros then 2**i ones
    half = 1 << i
    block = ((1 << half) - 1) << half
    return (_full_mask(k) // ((1 << (2 * half)) - 1)) * block


def _mask(f, index, k):
    if isinstance(f, Atom):
        try:
            return _atom_mask(index[f.name], k)
        except KeyError:
            raise UnboundAtomError(f"atom {f.name!r} is not in the universe") from None
    if isinstance(f, Const):
        return _full_mask(k) if f.value else 0
    if isinstance(f, Not):
        return _full_mask(k) ^ _mask(f.child, index, k)
    a = _mask(f.left, index, k)
    b = _mask(f.right, index, k)
    op = f.op
    if op == "and":
        return a & b
    if op == "or":
        return a | b
    if op == "xor":
        return a ^ b
    full = _full_mask(k)
    if op == "implies":
        return (full ^ a) | b
    return full ^ (a ^ b)  # iff


@lru_cache(maxsize=65536)
def _truth_mask_cached(f, universe):
    return _mask(f, {name: i for i, name in enumerate(universe)}, len(universe))


def truth_mask(f, universe, cap=None):
    """Bitmask of the valuations over ``universe`` (a sequence) satisfying ``f``."""
    universe = tuple(universe)
    check_cap("atoms", len(universe), current_caps().max_atoms if cap is None else cap)
    return _truth_mask_cached(f, universe)


def _universe(formulas, universe):
    names = atoms(formulas)
    if universe is None:
        return tuple(sorted(names))
    universe = tuple(sorted(set(universe)))
    missing = names.difference(universe)
    if missing:
        raise UnboundAtomError(f"atoms {sorted(missing)} are not in the universe")
    return universe


def is_consistent_set(formulas, universe=None, cap=None):
    """True iff some valuation over ``universe`` satisfies every formula.

    ``universe`` defaults to the atoms of ``formulas``. Raises
    :class:`CapExceededError` when the universe is larger than the cap.
    """
    formulas = list(formulas)
    uni = _universe(formulas, universe)
    acc = _full_mask(len(uni)) if uni else 1
    check_cap("atoms", len(uni), current_caps().max_atoms if cap is None else cap)
    for f in formulas:
        acc &= _truth_mask_cached(f, uni)
        if not acc:
            return False
    return True


def entails(premises, conclusion, universe=None, cap=None):
    """True iff every model of ``premises`` satisfies ``conclusion``."""
    premises = list(premises)
    if universe is None:
        universe = atoms(premises + [conclusion])
    return not is_consistent_set(premises + [Not(conclusion)], universe, cap)


def is_tautology(f):
    return not is_consistent_set([Not(f)])


def is_contradiction(f):
    return not is_consistent_set([f])


def models(formulas, universe=None):
    """Yield every satisfying valuation (dict) over ``universe``, by plain
    truth-table enumeration with :func:`evaluate`."""
    formulas = list(formulas)
    uni = _universe(formulas, universe)
    for bits in product((False, True), repeat=len(uni)):
        v = dict(zip(uni, bits))
        if all(evaluate(f, v) for f in formulas):
            yield v
