"""Expression language for one-off computations.

Grammar (``*`` is never implied; ``yx`` is a single symbol, not ``y*x``)::

    expr   := term (('+' | '-') term)*
    term   := unary ('*' unary)*
    unary  := '-' unary | power
    power  := atom ('^' NAT)?
    atom   := NAT | SYM | SYM '(' expr (',' expr)* ')' | '(' expr ')'
            | '[' expr (',' expr)* ']' '@' NAT                 series literal
            | 'prefix' '[' exprs? ']' 'then' 'const' expr        sequence literal
            | 'prefix' '[' exprs? ']' 'then' 'period' '[' exprs ']'
            | 'band' '{' NAT ':' expr (',' NAT ':' expr)* '}'    banded matrix

Parsing is left-associative and never reorders factors.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Any, Callable, Union

from .errors import MorphismError, OreLabError
from .rings import Element, MatrixRing, PolynomialRing, Ring, make_ring


class ParseError(OreLabError, ValueError):
    def __init__(self, message: str, position: int | None = None):
        self.position = position
        where = f" at position {position}" if position is not None else ""
        super().__init__(f"{message}{where}")


class UnboundSymbolError(ParseError):
    pass


class EvaluationError(OreLabError, ValueError):
    pass


# --- AST ---------------------------------------------------------------------------------


@dataclass(frozen=True)
class Int:
    value: int


@dataclass(frozen=True)
class Sym:
    name: str


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Ast"
    right: "Ast"


@dataclass(frozen=True)
class Neg:
    operand: "Ast"


@dataclass(frozen=True)
class Pow:
    base: "Ast"
    exponent: int


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple


@dataclass(frozen=True)
class SeriesLit:
    coeffs: tuple
    precision: int


@dataclass(frozen=True)
class SeqLit:
    prefix: tuple
    period: tuple
    const: bool = False


@dataclass(frozen=True)
class BandLit:
    bands: tuple  # ((index, Ast), ...)


Ast = Union[Int, Sym, BinOp, Neg, Pow, Call, SeriesLit, SeqLit, BandLit]

KEYWORDS = {"prefix", "then", "const", "period", "band"}

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^()\[\]{},:@]))")


def tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", bad)
        kind = m.lastgroup
        out.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    def peek(self, value: str | None = None, kind: str | None = None) -> bool:
        k, v, _ = self.toks[self.i]
        return (value is None or v == value) and (kind is None or k == kind)

    def take(self, value: str | None = None, kind: str | None = None) -> tuple[str, str, int]:
        tok = self.toks[self.i]
        if (value is not None and tok[1] != value) or (kind is not None and tok[0] != kind):
            want = repr(value) if value is not None else kind
            got = repr(tok[1]) if tok[0] != "end" else "end of input"
            raise ParseError(f"expected {want}, got {got}", tok[2])
        self.i += 1
        return tok

    def parse(self) -> Ast:
        node = self.expr()
        if not self.peek(kind="end"):
            tok = self.toks[self.i]
            raise ParseError(f"unexpected {tok[1]!r}", tok[2])
        return node

    def expr(self) -> Ast:
        node = self.term()
        while self.peek("+") or self.peek("-"):
            op = self.take()[1]
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Ast:
        node = self.unary()
        while self.peek("*"):
            self.take()
            node = BinOp("*", node, self.unary())
        return node

    def unary(self) -> Ast:
        if self.peek("-"):
            self.take()
            return Neg(self.unary())
        return self.power()

    def power(self) -> Ast:
        node = self.atom()
        if self.peek("^"):
            self.take()
            node = Pow(node, int(self.take(kind="num")[1]))
            if self.peek("^"):
                raise ParseError("chained '^' needs parentheses", self.toks[self.i][2])
        return node

    def _list(self, close: str) -> tuple:
        items = []
        if not self.peek(close):
            items.append(self.expr())
            while self.peek(","):
                self.take()
                items.append(self.expr())
        self.take(close)
        return tuple(items)

    def atom(self) -> Ast:
        kind, val, pos = self.toks[self.i]
        if kind == "num":
            self.take()
            return Int(int(val))
        if val == "(":
            self.take()
            node = self.expr()
            self.take(")")
            return node
        if val == "[":
            self.take()
            coeffs = self._list("]")
            if not coeffs:
                raise ParseError("series literal needs at least one coefficient", pos)
            self.take("@")
            return SeriesLit(coeffs, int(self.take(kind="num")[1]))
        if kind == "ident" and val == "prefix":
            self.take()
            self.take("[")
            prefix = self._list("]")
            self.take("then")
            if self.peek("const"):
                self.take()
                return SeqLit(prefix, (self.unary(),), True)
            self.take("period")
            self.take("[")
            period = self._list("]")
            if not period:
                raise ParseError("period must be nonempty", pos)
            return SeqLit(prefix, period, False)
        if kind == "ident" and val == "band":
            self.take()
            self.take("{")
            bands = []
            seen = set()
            while True:
                _, j, jpos = self.take(kind="num")
                if int(j) in seen:
                    raise ParseError(f"band {j} given twice", jpos)
                seen.add(int(j))
                self.take(":")
                bands.append((int(j), self.expr()))
                if self.peek("}"):
                    break
                self.take(",")
            self.take("}")
            return BandLit(tuple(bands))
        if kind == "ident":
            if val in KEYWORDS:
                raise ParseError(f"unexpected keyword {val!r}", pos)
            self.take()
            if self.peek("("):
                self.take()
                args = self._list(")")
                if not args:
                    raise ParseError(f"{val}() needs an argument", pos)
                return Call(val, args)
            return Sym(val)
        got = repr(val) if kind != "end" else "end of input"
        raise ParseError(f"unexpected {got}", pos)


def parse_expression(text: str, context: "EvalContext | None" = None) -> Ast:
    """Parse ``text``; with a context, every symbol and function must be bound."""
    ast = _Parser(text).parse()
    if context is not None:
        for node in walk(ast):
            if isinstance(node, Sym) and node.name not in context.symbols:
                raise UnboundSymbolError(f"unbound symbol {node.name!r}")
            if isinstance(node, Call) and node.name not in context.functions:
                raise UnboundSymbolError(f"unknown function {node.name!r}")
    return ast


def walk(node: Ast):
    yield node
    if isinstance(node, BinOp):
        yield from walk(node.left)
        yield from walk(node.right)
    elif isinstance(node, (Neg,)):
        yield from walk(node.operand)
    elif isinstance(node, Pow):
        yield from walk(node.base)
    elif isinstance(node, (Call,)):
        for a in node.args:
            yield from walk(a)
    elif isinstance(node, SeriesLit):
        for a in node.coeffs:
            yield from walk(a)
    elif isinstance(node, SeqLit):
        for a in node.prefix + node.period:
            yield from walk(a)
    elif isinstance(node, BandLit):
        for _, a in node.bands:
            yield from walk(a)


# --- pretty printer ----------------------------------------------------------------------


def _prec(node: Ast) -> int:
    if isinstance(node, BinOp):
        return 0 if node.op in "+-" else 1
    if isinstance(node, Neg) or (isinstance(node, SeqLit) and node.const):
        return 2  # both extend to the right over a unary operand
    if isinstance(node, Pow):
        return 3
    return 4


def to_source(node: Ast, need: int = 0) -> str:
    """Render ``node`` so that parsing the result gives ``node`` back."""
    if isinstance(node, Int):
        s = str(node.value)
    elif isinstance(node, Sym):
        s = node.name
    elif isinstance(node, BinOp):
        if node.op == "*":
            s = f"{to_source(node.left, 1)}*{to_source(node.right, 2)}"
        else:
            s = f"{to_source(node.left, 0)} {node.op} {to_source(node.right, 1)}"
    elif isinstance(node, Neg):
        s = "-" + to_source(node.operand, 2)
    elif isinstance(node, Pow):
        s = f"{to_source(node.base, 4)}^{node.exponent}"
    elif isinstance(node, Call):
        s = f"{node.name}(" + ", ".join(to_source(a) for a in node.args) + ")"
    elif isinstance(node, SeriesLit):
        s = "[" + ", ".join(to_source(a) for a in node.coeffs) + f"] @ {node.precision}"
    elif isinstance(node, SeqLit):
        s = "prefix [" + ", ".join(to_source(a) for a in node.prefix) + "] then "
        if node.const:
            s += "const " + to_source(node.period[0], 2)
        else:
            s += "period [" + ", ".join(to_source(a) for a in node.period) + "]"
    elif isinstance(node, BandLit):
        s = "band{" + ", ".join(f"{j}: {to_source(a)}" for j, a in node.bands) + "}"
    else:
        raise TypeError(f"not an AST node: {node!r}")
    return f"({s})" if _prec(node) < need else s


# --- evaluation --------------------------------------------------------------------------


@dataclass
class EvalContext:
    ring: Ring
    symbols: dict[str, Any] = field(default_factory=dict)
    functions: dict[str, Callable] = field(default_factory=dict)
    coefficient_ring: Ring | None = None
    sigma: Any = None
    delta: Any = None
    precision: int = 8

    def __post_init__(self):
        if self.coefficient_ring is None:
            self.coefficient_ring = self.ring


def ring_generators(R: Ring) -> dict[str, Element]:
    """Named generators of a ring built from a descriptor."""
    from .free import FreeRing
    from .laurent import LaurentRing
    from .matrices import UMatRing, superdiagonal

    if isinstance(R, PolynomialRing):
        out = {k: R(v) for k, v in ring_generators(R.base).items()}
        out[R.var] = R.gen()
        return out
    if isinstance(R, FreeRing):
        return dict(R.gens())
    if isinstance(R, MatrixRing):
        return {f"E{i}{j}": R.unit_matrix(i, j) for i in range(R.k) for j in range(R.k)}
    if isinstance(R, LaurentRing):
        return {"t": R.monomial(1)}
    if isinstance(R, UMatRing):
        return {"S": R(superdiagonal(R.base, 1))}
    return {}


def _to(ring: Ring, value) -> Element:
    """Move ``value`` into ``ring``, collapsing degree-0 Ore polynomials."""
    from .ore import OrePoly

    if isinstance(value, Element) and value.ring == ring:
        return value
    if isinstance(value, OrePoly) and value.ring != ring:
        if not value.in_base():
            raise EvaluationError(f"{value} is not in the coefficient ring {ring}")
        value = value.coeff(0)
        if value.ring == ring:
            return value
    try:
        return ring(value)
    except (TypeError, ValueError) as exc:
        raise EvaluationError(f"cannot use {value} in {ring}: {exc}") from exc


def build_context(ring_spec: str | Ring, sigma: str | None = None, delta: str | None = None,
                  precision: int = 8) -> EvalContext:
    """Bind a ring's generators; with ``sigma``/``delta`` the ring is ``R[x; sigma, delta]``."""
    from .morphisms import EndoMap, SigmaDerivation, identity
    from .ore import OreRing

    R = make_ring(ring_spec) if isinstance(ring_spec, str) else ring_spec
    gens = ring_generators(R)
    sig = dlt = None
    if sigma:
        sig = _morphism(sigma, R)
        if not isinstance(sig, EndoMap):
            raise MorphismError(f"{sigma!r} is not an endomorphism")
    if delta:
        dlt = _morphism(delta, R)
        if not isinstance(dlt, SigmaDerivation):
            raise MorphismError(f"{delta!r} is not a sigma-derivation")
    top = R
    if sig is not None or dlt is not None:
        if "x" in gens:
            raise EvaluationError(f"{R} already binds 'x'; it cannot also be the Ore variable")
        top = OreRing(R, sig, dlt)
        sig, dlt = top.sigma, top.delta
        gens = {k: top(v) for k, v in gens.items()}
        gens["x"] = top.gen()
    ctx = EvalContext(top, gens, {}, R, sig, dlt, precision)
    ctx.functions = _default_functions(ctx)
    return ctx


def _morphism(name: str, R: Ring):
    from .morphisms import builtin_morphisms

    return builtin_morphisms(name, R)


def _default_functions(ctx: EvalContext) -> dict[str, Callable]:
    from .laurent import LaurentRing
    from .matrices import BandedMatrix, theta

    def apply(which):
        def f(v):
            m = getattr(ctx, which)
            if m is None:
                raise EvaluationError(f"no {which} bound; pass --{which}")
            return m(_to(ctx.coefficient_ring, v))
        return f

    def theta_fn(v):
        if not isinstance(v, BandedMatrix):
            raise EvaluationError("theta expects a band{...} literal")
        return theta(v, ctx.precision)

    def transpose_fn(v):
        if isinstance(v, Element) and isinstance(v.ring, MatrixRing):
            R = v.ring
            return R.wrap(tuple(zip(*v.value)))
        raise EvaluationError("transpose expects a finite matrix")

    def inv_fn(v):
        R = ctx.coefficient_ring
        if not isinstance(R, LaurentRing):
            raise EvaluationError("inv is defined for Laurent series")
        return R.inverse(_to(R, v))

    return {"sigma": apply("sigma"), "delta": apply("delta"), "theta": theta_fn,
            "transpose": transpose_fn, "inv": inv_fn}


def evaluate(node: Ast, ctx: EvalContext, ring: Ring | None = None):
    """Evaluate ``node``; integer literals land in ``ring`` (default: the context ring)."""
    from .matrices import BandedMatrix
    from .series import SkewSeriesRing

    ring = ring or ctx.ring
    if isinstance(node, Int):
        return ring(node.value)
    if isinstance(node, Sym):
        try:
            return ctx.symbols[node.name]
        except KeyError:
            raise UnboundSymbolError(f"unbound symbol {node.name!r}") from None
    if isinstance(node, Neg):
        v = evaluate(node.operand, ctx, ring)
        return -_element(v)
    if isinstance(node, BinOp):
        a = evaluate(node.left, ctx, ring)
        b = evaluate(node.right, ctx, ring)
        if node.op == "+" and isinstance(a, BandedMatrix) and isinstance(b, BandedMatrix):
            return a + b
        a, b = _element(a), _element(b)
        a, b = _unify(a, b)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        return a * b
    if isinstance(node, Pow):
        return _element(evaluate(node.base, ctx, ring)) ** node.exponent
    if isinstance(node, Call):
        fn = ctx.functions.get(node.name)
        if fn is None:
            raise UnboundSymbolError(f"unknown function {node.name!r}")
        return fn(*[evaluate(a, ctx, ring) for a in node.args])
    if isinstance(node, SeriesLit):
        base = ctx.coefficient_ring
        S = SkewSeriesRing(base, ctx.sigma, node.precision)
        return S.series([_to(base, evaluate(c, ctx, base)) for c in node.coeffs])
    if isinstance(node, SeqLit):
        P = _sequence_ring(ctx)
        items = [_to(P.base, evaluate(c, ctx, P.base)) for c in node.prefix + node.period]
        k = len(node.prefix)
        return P.make(items[:k], items[k:])
    if isinstance(node, BandLit):
        P = _sequence_ring(ctx)
        bands = {}
        for j, a in node.bands:
            v = evaluate(a, ctx, P)
            bands[j] = v if isinstance(v, Element) and v.ring == P else P(_to(P.base, v))
        return BandedMatrix(P.base, bands)
    raise TypeError(f"not an AST node: {node!r}")


def _sequence_ring(ctx: EvalContext):
    from .matrices import UMatRing
    from .sequences import SequenceRing

    R = ctx.coefficient_ring
    if isinstance(R, SequenceRing):
        return R
    if isinstance(R, UMatRing):
        return SequenceRing(R.base)
    return SequenceRing(R)


def _element(v):
    from .matrices import BandedMatrix, UMatRing

    if isinstance(v, BandedMatrix):
        return UMatRing(v.base)(v)
    return v


def _unify(a, b):
    """Let base-ring values meet Ore polynomials (and the like) by embedding."""
    if not (isinstance(a, Element) and isinstance(b, Element)) or a.ring == b.ring:
        return a, b
    try:
        return a, a.ring(b)
    except (TypeError, ValueError):
        return b.ring(a), b


def eval_expression(text: str, ctx: EvalContext):
    return evaluate(parse_expression(text, ctx), ctx)


def format_value(v) -> str:
    return str(v) if not hasattr(v, "diagonals") else repr(v)
