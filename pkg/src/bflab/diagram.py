"""A small string-diagram language compiled to exact tensor maps.

Grammar (whitespace insensitive, ``#`` starts a comment):

    expr   := term (";" term)*          sequential, read top to bottom
    term   := factor ("*" factor)*      side by side
    factor := IDENT ("^" INT)?          k-fold side-by-side power
            | "(" expr ")"

All wire counts are in units of X; the doubled generators (mu2, eta2, ...)
simply have doubled arities.  ``f ; g`` means f then g, matching the tensor
module's composition convention.

Equation files hold one named move per line::

    NAME : LHS == RHS [observational]

The built-in move library covers the braid relation, switchback, passcup and
passcap, the Frobenius compatibilities, the eight braiding naturalities, the
loop-slide law, the tortile identity, cap/multiplication conversion, the
cup/cap loop twist, and the (observational) loop cancellation move.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field

from .errors import ArityError, ContextError, ParseError
from . import tensor as tz
from .tensor import TensorMap, chain_diff, chain_equal

ARITY_TABLE = {
    "id": (1, 1),
    "mu": (2, 1),
    "delta": (1, 2),
    "eta": (0, 1),
    "eps": (1, 0),
    "S": (1, 1),
    "tau": (2, 2),
    "T": (3, 1),
    "cup": (2, 0),
    "cap": (0, 2),
    "beta1": (3, 3),
    "beta1inv": (3, 3),
    "beta": (4, 4),
    "betainv": (4, 4),
    "theta": (2, 2),
    "Theta": (2, 2),
    "theta_vv": (4, 4),
    "mu2": (4, 2),
    "delta2": (2, 4),
    "eta2": (0, 2),
    "eps2": (2, 0),
}


# ---------------------------------------------------------------------------
# syntax tree
# ---------------------------------------------------------------------------


@dataclass(eq=True)
class Node:
    pos: tuple = field(default=(0, 0), compare=False)
    in_arity: int = field(default=-1, compare=False)
    out_arity: int = field(default=-1, compare=False)


@dataclass(eq=True)
class Generator(Node):
    name: str = ""


@dataclass(eq=True)
class Power(Node):
    name: str = ""
    k: int = 1


@dataclass(eq=True)
class Parallel(Node):
    children: tuple = ()


@dataclass(eq=True)
class Sequential(Node):
    children: tuple = ()


def to_text(node) -> str:
    """Print a tree back to source; parse(to_text(t)) == t."""
    if isinstance(node, Generator):
        return node.name
    if isinstance(node, Power):
        return f"{node.name}^{node.k}"
    if isinstance(node, Parallel):
        return " * ".join(_factor_text(c) for c in node.children)
    if isinstance(node, Sequential):
        return " ; ".join(_term_text(c) for c in node.children)
    raise TypeError(f"not a diagram node: {node!r}")


def _term_text(node) -> str:
    if isinstance(node, Sequential):
        return f"({to_text(node)})"
    return to_text(node)


def _factor_text(node) -> str:
    if isinstance(node, (Sequential, Parallel)):
        return f"({to_text(node)})"
    return to_text(node)


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------


class _Tokens:
    def __init__(self, src: str):
        self.items = []
        line, col = 1, 1
        i = 0
        while i < len(src):
            ch = src[i]
            if ch == "\n":
                line += 1
                col = 1
                i += 1
            elif ch in " \t\r":
                col += 1
                i += 1
            elif ch == "#":
                while i < len(src) and src[i] != "\n":
                    i += 1
            elif ch in ";*^()":
                self.items.append((ch, ch, line, col))
                col += 1
                i += 1
            elif ch.isdigit():
                j = i
                while j < len(src) and src[j].isdigit():
                    j += 1
                self.items.append(("INT", src[i:j], line, col))
                col += j - i
                i = j
            elif ch.isalpha() or ch == "_":
                j = i
                while j < len(src) and (src[j].isalnum() or src[j] == "_"):
                    j += 1
                self.items.append(("IDENT", src[i:j], line, col))
                col += j - i
                i = j
            else:
                raise ParseError(f"unexpected character {ch!r}", line, col)
        self.k = 0

    def peek(self):
        return self.items[self.k] if self.k < len(self.items) else None

    def next(self):
        tok = self.peek()
        if tok is None:
            last = self.items[-1] if self.items else ("", "", 1, 1)
            raise ParseError("unexpected end of input", last[2], last[3])
        self.k += 1
        return tok


def parse(src: str):
    """Parse one diagram expression into a tree (no arity checking yet)."""
    toks = _Tokens(src)
    node = _parse_expr(toks)
    tok = toks.peek()
    if tok is not None:
        raise ParseError(f"trailing input {tok[1]!r}", tok[2], tok[3])
    return node


def _parse_expr(toks):
    terms = [_parse_term(toks)]
    while True:
        tok = toks.peek()
        if tok is None or tok[0] != ";":
            break
        toks.next()
        terms.append(_parse_term(toks))
    if len(terms) == 1:
        return terms[0]
    return Sequential(pos=terms[0].pos, children=tuple(terms))


def _parse_term(toks):
    factors = [_parse_factor(toks)]
    while True:
        tok = toks.peek()
        if tok is None or tok[0] != "*":
            break
        toks.next()
        factors.append(_parse_factor(toks))
    if len(factors) == 1:
        return factors[0]
    return Parallel(pos=factors[0].pos, children=tuple(factors))


def _parse_factor(toks):
    tok = toks.next()
    kind, text, line, col = tok
    if kind == "(":
        inner = _parse_expr(toks)
        closing = toks.next()
        if closing[0] != ")":
            raise ParseError(f"expected ')', found {closing[1]!r}", closing[2], closing[3])
        return inner
    if kind != "IDENT":
        raise ParseError(f"expected a generator name, found {text!r}", line, col)
    nxt = toks.peek()
    if nxt is not None and nxt[0] == "^":
        toks.next()
        count = toks.next()
        if count[0] != "INT" or int(count[1]) < 1:
            raise ParseError("power must be a positive integer", count[2], count[3])
        return Power(pos=(line, col), name=text, k=int(count[1]))
    return Generator(pos=(line, col), name=text)


# ---------------------------------------------------------------------------
# arity checking
# ---------------------------------------------------------------------------


def arity_check(node, table=None):
    """Annotate every node with (in_arity, out_arity), rejecting mismatches."""
    table = ARITY_TABLE if table is None else table
    if isinstance(node, Generator):
        if node.name not in table:
            raise ArityError(f"unknown generator {node.name!r} at {node.pos}")
        node.in_arity, node.out_arity = table[node.name]
    elif isinstance(node, Power):
        if node.name not in table:
            raise ArityError(f"unknown generator {node.name!r} at {node.pos}")
        a, b = table[node.name]
        node.in_arity, node.out_arity = a * node.k, b * node.k
    elif isinstance(node, Parallel):
        node.in_arity = node.out_arity = 0
        for child in node.children:
            arity_check(child, table)
            node.in_arity += child.in_arity
            node.out_arity += child.out_arity
    elif isinstance(node, Sequential):
        prev = None
        for child in node.children:
            arity_check(child, table)
            if prev is not None and prev.out_arity != child.in_arity:
                raise ArityError(
                    f"wire mismatch at {child.pos}: previous step emits "
                    f"{prev.out_arity} wires, next expects {child.in_arity}"
                )
            prev = child
        node.in_arity = node.children[0].in_arity
        node.out_arity = node.children[-1].out_arity
    else:
        raise TypeError(f"not a diagram node: {node!r}")
    return node


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------


class Context:
    """Generator maps for one algebra, with a shared evaluation cache.

    The cache is keyed by (algebra fingerprint, printed tree); reads are
    lock-free, insertion takes the lock.
    """

    def __init__(self, ring, n, maps: dict, fingerprint: str = ""):
        self.ring = ring
        self.n = n
        self.maps = dict(maps)
        self.fingerprint = fingerprint
        self._cache: dict = {}
        self._lock = threading.Lock()

    def lookup(self, name: str) -> TensorMap:
        m = self.maps.get(name)
        if m is None:
            raise ContextError(f"generator {name!r} is not available in this context")
        return m

    def cache_get(self, key):
        return self._cache.get(key)

    def cache_put(self, key, value):
        with self._lock:
            self._cache.setdefault(key, value)


def compile_stages(node, ctx: Context) -> list:
    """Flatten a checked tree into a stage pipeline.

    Sequential children concatenate; a parallel row becomes one block stage
    whose identity factors pass indices through untouched, so intermediate
    work stays proportional to single-column support.
    """
    if isinstance(node, Generator):
        if node.name == "id":
            return [tz.par(ctx.ring, 1)]
        return [ctx.lookup(node.name)]
    if isinstance(node, Power):
        if node.name == "id":
            return [tz.par(ctx.ring, node.k)]
        return [tz.par(ctx.ring, *([ctx.lookup(node.name)] * node.k))]
    if isinstance(node, Sequential):
        stages = []
        for child in node.children:
            stages.extend(compile_stages(child, ctx))
        return stages
    if isinstance(node, Parallel):
        parts = []
        for child in node.children:
            if isinstance(child, Generator) and child.name == "id":
                parts.append(1)
            elif isinstance(child, Power) and child.name == "id":
                parts.append(child.k)
            elif isinstance(child, Generator):
                parts.append(ctx.lookup(child.name))
            elif isinstance(child, Power):
                parts.extend([ctx.lookup(child.name)] * child.k)
            else:
                parts.append(evaluate(child, ctx))
        return [tz.par(ctx.ring, *parts)]
    raise TypeError(f"not a diagram node: {node!r}")


def evaluate(node, ctx: Context) -> TensorMap:
    """Compile and contract a checked tree to its exact tensor map."""
    key = (ctx.fingerprint, to_text(node))
    cached = ctx.cache_get(key)
    if cached is not None:
        return cached
    result = tz.run_chain(ctx.ring, ctx.n, compile_stages(node, ctx))
    ctx.cache_put(key, result)
    return result


def parse_checked(src: str, table=None):
    return arity_check(parse(src), table)


# ---------------------------------------------------------------------------
# named moves
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Move:
    name: str
    lhs: object
    rhs: object
    observational: bool = False


def parse_equation(line: str, table=None) -> Move:
    """Parse ``NAME : LHS == RHS [observational]`` and arity-check both sides."""
    text = line.split("#", 1)[0].strip()
    observational = False
    if text.endswith("[observational]"):
        observational = True
        text = text[: -len("[observational]")].strip()
    name, sep, rest = text.partition(":")
    if not sep or not name.strip():
        raise ParseError("equation must look like 'NAME : LHS == RHS'", 1, 1)
    lhs_src, sep, rhs_src = rest.partition("==")
    if not sep:
        raise ParseError(f"equation {name.strip()!r} is missing '=='", 1, 1)
    lhs = parse_checked(lhs_src, table)
    rhs = parse_checked(rhs_src, table)
    if (lhs.in_arity, lhs.out_arity) != (rhs.in_arity, rhs.out_arity):
        raise ArityError(
            f"equation {name.strip()!r}: sides have arities "
            f"{lhs.in_arity}->{lhs.out_arity} vs {rhs.in_arity}->{rhs.out_arity}"
        )
    return Move(name.strip(), lhs, rhs, observational)


def parse_move_file(text: str, table=None) -> dict:
    moves = {}
    for line in text.splitlines():
        if not line.split("#", 1)[0].strip():
            continue
        move = parse_equation(line, table)
        moves[move.name] = move
    return moves


DEFAULT_MOVES_TEXT = """
# braid relation on doubled strands
ybe : (beta * id^2) ; (id^2 * beta) ; (beta * id^2) == (id^2 * beta) ; (beta * id^2) ; (id^2 * beta)

# zig-zag laws for the pairing
switchback_left : (id * cap) ; (cup * id) == id
switchback_right : (cap * id) ; (id * cup) == id

# a cup leg sliding under a pair of strands, and its upside-down mirror
passcup : (beta1 * id) ; (id^2 * cup) == (id * beta1inv) ; (cup * id^2)
passcap : (id^2 * cap) ; (beta1inv * id) == (cap * id^2) ; (id * beta1)

# Frobenius compatibility on the doubled algebra
frob_compat_left : mu2 ; delta2 == (id^2 * delta2) ; (mu2 * id^2)
frob_compat_right : mu2 ; delta2 == (delta2 * id^2) ; (id^2 * mu2)

# naturality of the braiding against the Frobenius operations
bf_mu_left : (beta * id^2) ; (id^2 * beta) ; (mu2 * id^2) == (id^2 * mu2) ; beta
bf_mu_right : (id^2 * beta) ; (beta * id^2) ; (id^2 * mu2) == (mu2 * id^2) ; beta
bf_delta_left : (id^2 * delta2) ; (beta * id^2) ; (id^2 * beta) == beta ; (delta2 * id^2)
bf_delta_right : (delta2 * id^2) ; (id^2 * beta) ; (beta * id^2) == beta ; (id^2 * delta2)
bf_eta_left : (eta2 * id^2) ; beta == id^2 * eta2
bf_eta_right : (id^2 * eta2) ; beta == eta2 * id^2
bf_eps_left : beta ; (eps2 * id^2) == id^2 * eps2
bf_eps_right : beta ; (id^2 * eps2) == eps2 * id^2

# sliding a strand through a loop made of another strand's legs
slideloop : (id * (delta ; (delta * id)) * (delta ; (delta * id))) ; (id^4 * tau * id) ; (id^3 * tau * id^2) ; (id^4 * tau * id) ; (id * T * T) ; T == T

# full twist of two parallel ribbons
tortile : (theta * theta) ; beta ; beta == theta_vv

# converting multiplication to comultiplication through the cap
capmult : delta2 == (id^2 * (eta2 ; delta2)) ; (mu2 * id^2)

# the loop form of the twist
theta_loop : (id^2 * cap) ; (id^3 * cap * id) ; (beta * id^2) ; (id^3 * cup * id) ; (id^2 * cup) == Theta

# canceling a positive against a negative loop (open in general)
cancelpair : ((id^2 * cap) ; (id^3 * cap * id) ; (betainv * id^2) ; (id^3 * cup * id) ; (id^2 * cup)) ; Theta == id^2 [observational]
"""


def default_moves() -> dict:
    return parse_move_file(DEFAULT_MOVES_TEXT)


def check_equation(move: Move, ctx: Context, threshold=None, witness_limit: int = 10):
    """Evaluate both sides; on failure list up to ``witness_limit`` differing
    entries (out, in, lhs, rhs) in lexicographic index order."""
    lhs = compile_stages(move.lhs, ctx)
    rhs = compile_stages(move.rhs, ctx)
    ok = chain_equal(ctx.ring, ctx.n, lhs, rhs, threshold)
    witnesses = []
    if not ok:
        for out, inn, va, vb in chain_diff(ctx.ring, ctx.n, lhs, rhs, witness_limit):
            witnesses.append(
                {
                    "out": list(out),
                    "in": list(inn),
                    "lhs": ctx.ring.format(va),
                    "rhs": ctx.ring.format(vb),
                }
            )
    return ok, witnesses
