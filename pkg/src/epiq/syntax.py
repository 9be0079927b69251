"""Formula and sequent language: ASTs, parser, printer.

Concrete grammar (whitespace-insensitive, all binary operators
left-associative, parentheses override):

* action formulas: ``top bot 1``, variables, ``q * q`` (composition),
  ``q \\ q`` and ``q / q`` (residuals), ``q | q``, ``q & q``,
  ``fQ[A](q)``, ``boxQ[A](q)``
* proposition formulas: ``top bot``, ``#p`` (facts), variables,
  ``m & m``, ``m | m``, ``[q]m`` (dynamic box), ``m . q`` (update,
  right operand an atom or parenthesised), ``fM[A](m)``, ``boxM[A](m)``
* precedence, tightest first: unary, ``*`` and ``.``, ``&``, ``|``,
  residuals
* sequents: comma-separated context items (``@A`` for agents, formulas
  otherwise), turnstile ``|-Q`` or ``|-M``; an empty right side of an
  M-sequent is normalized to ``bot`` at parse time.

Context items on the M side may be propositions or actions; a bare item is
tried as a proposition first and as an action second, with a declared
signature resolving variable names.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Union


class ParseError(Exception):
    def __init__(self, msg: str, pos: int):
        super().__init__(f"{msg} (at position {pos})")
        self.pos = pos


# Action-formula AST


@dataclass(frozen=True)
class QTop:
    pass


@dataclass(frozen=True)
class QBot:
    pass


@dataclass(frozen=True)
class QOne:
    pass


@dataclass(frozen=True)
class QVar:
    name: str


@dataclass(frozen=True)
class Comp:
    left: "QFormula"
    right: "QFormula"


@dataclass(frozen=True)
class LRes:
    left: "QFormula"
    right: "QFormula"


@dataclass(frozen=True)
class RRes:
    left: "QFormula"
    right: "QFormula"


@dataclass(frozen=True)
class QOr:
    left: "QFormula"
    right: "QFormula"


@dataclass(frozen=True)
class QAnd:
    left: "QFormula"
    right: "QFormula"


@dataclass(frozen=True)
class AppQ:
    agent: str
    arg: "QFormula"


@dataclass(frozen=True)
class BoxQ:
    agent: str
    arg: "QFormula"


QFormula = Union[QTop, QBot, QOne, QVar, Comp, LRes, RRes, QOr, QAnd, AppQ, BoxQ]


# Proposition-formula AST


@dataclass(frozen=True)
class MTop:
    pass


@dataclass(frozen=True)
class MBot:
    pass


@dataclass(frozen=True)
class Fact:
    name: str


@dataclass(frozen=True)
class MVar:
    name: str


@dataclass(frozen=True)
class MAnd:
    left: "MFormula"
    right: "MFormula"


@dataclass(frozen=True)
class MOr:
    left: "MFormula"
    right: "MFormula"


@dataclass(frozen=True)
class DynBox:
    action: QFormula
    arg: "MFormula"


@dataclass(frozen=True)
class Update:
    arg: "MFormula"
    action: QFormula


@dataclass(frozen=True)
class AppM:
    agent: str
    arg: "MFormula"


@dataclass(frozen=True)
class BoxM:
    agent: str
    arg: "MFormula"


MFormula = Union[MTop, MBot, Fact, MVar, MAnd, MOr, DynBox, Update, AppM, BoxM]

M_TYPES = (MTop, MBot, Fact, MVar, MAnd, MOr, DynBox, Update, AppM, BoxM)
Q_TYPES = (QTop, QBot, QOne, QVar, Comp, LRes, RRes, QOr, QAnd, AppQ, BoxQ)


@dataclass(frozen=True)
class Agent:
    name: str


ContextItem = Union[Agent, QFormula, MFormula]


@dataclass(frozen=True)
class Sequent:
    side: str  # "Q" or "M"
    context: tuple[ContextItem, ...]
    conclusion: Union[QFormula, MFormula]

    def __post_init__(self):
        if self.side not in ("Q", "M"):
            raise ValueError(f"bad sequent side {self.side!r}")
        if self.side == "Q":
            if not isinstance(self.conclusion, Q_TYPES):
                raise ValueError("Q-sequent needs an action conclusion")
            for it in self.context:
                if isinstance(it, M_TYPES):
                    raise ValueError("Q-sequent context cannot contain propositions")
        else:
            if not isinstance(self.conclusion, M_TYPES):
                raise ValueError("M-sequent needs a proposition conclusion")


@dataclass(frozen=True)
class Signature:
    agents: frozenset[str]
    qvars: frozenset[str]
    mvars: frozenset[str]
    facts: frozenset[str]

    @staticmethod
    def of(agents=(), qvars=(), mvars=(), facts=()) -> "Signature":
        return Signature(frozenset(agents), frozenset(qvars), frozenset(mvars), frozenset(facts))


def _install_cached_hash(*classes):
    """Memoize the generated hash: formula trees are shared structurally,
    so deep re-hashing on every dict operation is the dominant cost in
    proof search without this."""

    for cls in classes:
        gen = cls.__hash__

        def __hash__(self, _gen=gen):
            h = self.__dict__.get("_h")
            if h is None:
                h = _gen(self)
                object.__setattr__(self, "_h", h)
            return h

        cls.__hash__ = __hash__


_install_cached_hash(
    QTop, QBot, QOne, QVar, Comp, LRes, RRes, QOr, QAnd, AppQ, BoxQ,
    MTop, MBot, Fact, MVar, MAnd, MOr, DynBox, Update, AppM, BoxM,
    Agent, Sequent,
)


# Lexer


def _lex(text: str) -> list[tuple[str, str, int]]:
    """Tokens as (kind, value, pos); kinds: ident, one, punct, end."""
    toks = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c == "|" and text[i : i + 3] in ("|-Q", "|-M"):
            toks.append(("punct", text[i : i + 3], i))
            i += 3
            continue
        if c in "()[],@#|&*\\/.":
            toks.append(("punct", c, i))
            i += 1
            continue
        if c == "1":
            toks.append(("one", "1", i))
            i += 1
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(("ident", text[i:j], i))
            i = j
            continue
        raise ParseError(f"unexpected character {c!r}", i)
    toks.append(("end", "", n))
    return toks


class _Parser:
    def __init__(self, text: str, sig: Signature | None):
        self.toks = _lex(text)
        self.pos = 0
        self.sig = sig

    def peek(self) -> tuple[str, str, int]:
        return self.toks[self.pos]

    def next(self) -> tuple[str, str, int]:
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def expect(self, value: str):
        kind, val, p = self.next()
        if val != value:
            raise ParseError(f"expected {value!r}, got {val!r}", p)

    def at_item_end(self) -> bool:
        _, val, _ = self.peek()
        return val in (",", "|-Q", "|-M", ")", "]", "")

    def agent_name(self) -> str:
        kind, val, p = self.next()
        if kind != "ident":
            raise ParseError("expected agent name", p)
        if self.sig is not None and val not in self.sig.agents:
            raise ParseError(f"unknown agent {val!r}", p)
        return val

    # Action formulas

    def q_expr(self) -> QFormula:
        out = self.q_or()
        while self.peek()[1] in ("\\", "/"):
            op = self.next()[1]
            rhs = self.q_or()
            out = LRes(out, rhs) if op == "\\" else RRes(out, rhs)
        return out

    def q_or(self) -> QFormula:
        out = self.q_and()
        while self.peek()[1] == "|":
            self.next()
            out = QOr(out, self.q_and())
        return out

    def q_and(self) -> QFormula:
        out = self.q_comp()
        while self.peek()[1] == "&":
            self.next()
            out = QAnd(out, self.q_comp())
        return out

    def q_comp(self) -> QFormula:
        out = self.q_unary()
        while self.peek()[1] == "*":
            self.next()
            out = Comp(out, self.q_unary())
        return out

    def q_unary(self) -> QFormula:
        kind, val, p = self.next()
        if val == "(":
            out = self.q_expr()
            self.expect(")")
            return out
        if kind == "one":
            return QOne()
        if kind == "ident":
            if val == "top":
                return QTop()
            if val == "bot":
                return QBot()
            if val in ("fQ", "boxQ"):
                self.expect("[")
                agent = self.agent_name()
                self.expect("]")
                self.expect("(")
                arg = self.q_expr()
                self.expect(")")
                return AppQ(agent, arg) if val == "fQ" else BoxQ(agent, arg)
            if val in ("fM", "boxM"):
                raise ParseError(f"{val} is not an action connective", p)
            if self.sig is not None and val not in self.sig.qvars:
                raise ParseError(f"unknown action variable {val!r}", p)
            return QVar(val)
        raise ParseError(f"unexpected token {val!r} in action formula", p)

    # Proposition formulas

    def m_expr(self) -> MFormula:
        out = self.m_and()
        while self.peek()[1] == "|":
            self.next()
            out = MOr(out, self.m_and())
        return out

    def m_and(self) -> MFormula:
        out = self.m_upd()
        while self.peek()[1] == "&":
            self.next()
            out = MAnd(out, self.m_upd())
        return out

    def m_upd(self) -> MFormula:
        out = self.m_unary()
        while self.peek()[1] == ".":
            self.next()
            out = Update(out, self.q_unary())
        return out

    def m_unary(self) -> MFormula:
        kind, val, p = self.next()
        if val == "(":
            out = self.m_expr()
            self.expect(")")
            return out
        if val == "[":
            action = self.q_expr()
            self.expect("]")
            return DynBox(action, self.m_unary())
        if val == "#":
            kind2, name, p2 = self.next()
            if kind2 != "ident":
                raise ParseError("expected fact name after '#'", p2)
            if self.sig is not None and name not in self.sig.facts:
                raise ParseError(f"unknown fact {name!r}", p2)
            return Fact(name)
        if kind == "ident":
            if val == "top":
                return MTop()
            if val == "bot":
                return MBot()
            if val in ("fM", "boxM"):
                self.expect("[")
                agent = self.agent_name()
                self.expect("]")
                self.expect("(")
                arg = self.m_expr()
                self.expect(")")
                return AppM(agent, arg) if val == "fM" else BoxM(agent, arg)
            if val in ("fQ", "boxQ"):
                raise ParseError(f"{val} is not a proposition connective", p)
            if self.sig is not None and val not in self.sig.mvars:
                raise ParseError(f"unknown proposition variable {val!r}", p)
            return MVar(val)
        raise ParseError(f"unexpected token {val!r} in proposition formula", p)

    # Context items and sequents

    def m_item(self) -> ContextItem:
        """M-side context item: proposition first, action as fallback."""
        if self.peek()[1] == "@":
            self.next()
            return Agent(self.agent_name())
        start = self.pos
        try:
            out = self.m_expr()
            if self.at_item_end():
                return out
        except ParseError:
            pass
        self.pos = start
        out = self.q_expr()
        if not self.at_item_end():
            raise ParseError("trailing tokens in context item", self.peek()[2])
        return out

    def q_item(self) -> ContextItem:
        if self.peek()[1] == "@":
            self.next()
            return Agent(self.agent_name())
        return self.q_expr()

    def sequent(self) -> Sequent:
        # locate the turnstile to learn the side up front
        side = None
        for kind, val, _ in self.toks:
            if val in ("|-Q", "|-M"):
                side = val[-1]
                break
        if side is None:
            raise ParseError("missing turnstile |-Q or |-M", 0)
        context: list[ContextItem] = []
        if self.peek()[1] not in ("|-Q", "|-M"):
            while True:
                context.append(self.m_item() if side == "M" else self.q_item())
                if self.peek()[1] == ",":
                    self.next()
                    continue
                break
        kind, val, p = self.next()
        if val not in ("|-Q", "|-M"):
            raise ParseError(f"expected turnstile, got {val!r}", p)
        if side == "Q":
            conclusion: Union[QFormula, MFormula] = self.q_expr()
        else:
            conclusion = MBot() if self.peek()[0] == "end" else self.m_expr()
        kind, val, p = self.next()
        if kind != "end":
            raise ParseError(f"trailing input {val!r}", p)
        return Sequent(side, tuple(context), conclusion)


def parse_q(text: str, sig: Signature | None = None) -> QFormula:
    p = _Parser(text, sig)
    out = p.q_expr()
    kind, val, pos = p.next()
    if kind != "end":
        raise ParseError(f"trailing input {val!r}", pos)
    return out


def parse_m(text: str, sig: Signature | None = None) -> MFormula:
    p = _Parser(text, sig)
    out = p.m_expr()
    kind, val, pos = p.next()
    if kind != "end":
        raise ParseError(f"trailing input {val!r}", pos)
    return out


def parse_sequent(text: str, sig: Signature | None = None) -> Sequent:
    return _Parser(text, sig).sequent()


# Printer

_Q_PREC = {LRes: 0, RRes: 0, QOr: 1, QAnd: 2, Comp: 3}
_M_PREC = {MOr: 1, MAnd: 2, Update: 3}


def _pq(f: QFormula) -> tuple[str, int]:
    t = type(f)
    if t is QTop:
        return "top", 4
    if t is QBot:
        return "bot", 4
    if t is QOne:
        return "1", 4
    if t is QVar:
        return f.name, 4
    if t is AppQ:
        return f"fQ[{f.agent}]({print_q(f.arg)})", 4
    if t is BoxQ:
        return f"boxQ[{f.agent}]({print_q(f.arg)})", 4
    lvl = _Q_PREC[t]
    op = {LRes: "\\", RRes: "/", QOr: "|", QAnd: "&", Comp: "*"}[t]
    ls, lp = _pq(f.left)
    rs, rp = _pq(f.right)
    if lp < lvl:
        ls = f"({ls})"
    if rp <= lvl:
        rs = f"({rs})"
    return f"{ls} {op} {rs}", lvl


def _pm(f: MFormula) -> tuple[str, int]:
    t = type(f)
    if t is MTop:
        return "top", 4
    if t is MBot:
        return "bot", 4
    if t is Fact:
        return f"#{f.name}", 4
    if t is MVar:
        return f.name, 4
    if t is AppM:
        return f"fM[{f.agent}]({print_m(f.arg)})", 4
    if t is BoxM:
        return f"boxM[{f.agent}]({print_m(f.arg)})", 4
    if t is DynBox:
        s, p = _pm(f.arg)
        if p < 4:
            s = f"({s})"
        return f"[{print_q(f.action)}]{s}", 4
    if t is Update:
        ls, lp = _pm(f.arg)
        if lp < 3:
            ls = f"({ls})"
        rs, rp = _pq(f.action)
        if rp < 4:
            rs = f"({rs})"
        return f"{ls} . {rs}", 3
    lvl = _M_PREC[t]
    op = {MOr: "|", MAnd: "&"}[t]
    ls, lp = _pm(f.left)
    rs, rp = _pm(f.right)
    if lp < lvl:
        ls = f"({ls})"
    if rp <= lvl:
        rs = f"({rs})"
    return f"{ls} {op} {rs}", lvl


def print_q(f: QFormula) -> str:
    return _pq(f)[0]


def print_m(f: MFormula) -> str:
    return _pm(f)[0]


def print_formula(f) -> str:
    return print_m(f) if isinstance(f, M_TYPES) else print_q(f)


def print_item(it: ContextItem) -> str:
    if isinstance(it, Agent):
        return f"@{it.name}"
    return print_formula(it)


def print_sequent(s: Sequent) -> str:
    ctx = ", ".join(print_item(it) for it in s.context)
    turn = "|-Q" if s.side == "Q" else "|-M"
    concl = print_formula(s.conclusion)
    return f"{ctx} {turn} {concl}" if ctx else f"{turn} {concl}"


# Structural helpers


def subformulas_q(f: QFormula) -> Iterator[QFormula]:
    yield f
    t = type(f)
    if t in (Comp, LRes, RRes, QOr, QAnd):
        yield from subformulas_q(f.left)
        yield from subformulas_q(f.right)
    elif t in (AppQ, BoxQ):
        yield from subformulas_q(f.arg)


def subformulas_m(f: MFormula) -> Iterator[MFormula]:
    """Proposition subformulas; action subformulas are reached separately."""
    yield f
    t = type(f)
    if t in (MAnd, MOr):
        yield from subformulas_m(f.left)
        yield from subformulas_m(f.right)
    elif t in (AppM, BoxM, DynBox):
        yield from subformulas_m(f.arg)
    elif t is Update:
        yield from subformulas_m(f.arg)


def q_parts_of_m(f: MFormula) -> Iterator[QFormula]:
    t = type(f)
    if t in (MAnd, MOr):
        yield from q_parts_of_m(f.left)
        yield from q_parts_of_m(f.right)
    elif t in (AppM, BoxM):
        yield from q_parts_of_m(f.arg)
    elif t is DynBox:
        yield from subformulas_q(f.action)
        yield from q_parts_of_m(f.arg)
    elif t is Update:
        yield from q_parts_of_m(f.arg)
        yield from subformulas_q(f.action)
