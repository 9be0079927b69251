"""Inference rules of the action/proposition sequent calculus and
certificate checking.

Rule names follow the calculus: the Q-system rules operate on action
sequents, the M-system rules on proposition sequents, and the mixed rules
(``UpdL/UpdR/DyL/DyR/1ML/SeqML/OrML/RResML/LResML/AndML1/AndML2``) couple
the two through update and dynamic boxes.  Names shared between the two
systems (``Id``, ``BotL``, ...) are disambiguated by the sequent side.

Checking is purely structural and deterministic: a certificate pins every
context split via its premises, so ``check_step`` only verifies that the
(premises, conclusion) tuple is an instance of the named rule.  No search
happens here.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from . import syntax as sx
from .syntax import (
    Agent,
    AppM,
    AppQ,
    BoxM,
    BoxQ,
    Comp,
    DynBox,
    Fact,
    LRes,
    MAnd,
    MBot,
    MOr,
    MTop,
    MVar,
    QAnd,
    QBot,
    QOne,
    QOr,
    QTop,
    RRes,
    Sequent,
    Update,
    print_sequent,
)

Q_RULES = [
    "Id", "1L", "1R", "BotL", "TopR",
    "AppQ_R", "AppQ_L", "BoxQ_R", "BoxQ_L",
    "SeqL", "SeqR", "OrL", "OrR1", "OrR2", "AndL1", "AndL2", "AndR",
    "RResL", "RResR", "LResL", "LResR", "QCut", "Agent",
]

M_RULES = [
    "Id", "BotL", "BotR", "TopR",
    "AppM_R", "AppM_L", "BoxM_R", "BoxM_L",
    "AndR", "AndL1", "AndL2", "OrL", "OrR1", "OrR2",
    "Contr", "Exch", "Fact", "MCut", "WeakL", "WeakR",
]

MQ_RULES = [
    "UpdL", "UpdR", "DyL", "DyR",
    "1ML", "SeqML", "OrML", "RResML", "LResML", "AndML1", "AndML2",
]

ALL_RULES = sorted(set(Q_RULES) | set(M_RULES) | set(MQ_RULES) | {"Assumption"})

LEAF_RULES = {"Id", "1R", "BotL", "TopR", "Assumption"}


def _is_agent(it) -> bool:
    return isinstance(it, Agent)


def _is_qf(it) -> bool:
    return isinstance(it, sx.Q_TYPES)


def _is_mf(it) -> bool:
    return isinstance(it, sx.M_TYPES)


def _agent_suffix(ctx: tuple) -> tuple[tuple, tuple]:
    """Split a context at its maximal all-agent tail."""
    i = len(ctx)
    while i > 0 and _is_agent(ctx[i - 1]):
        i -= 1
    return ctx[:i], ctx[i:]


@dataclass(frozen=True)
class ProofTree:
    conclusion: Sequent
    rule: str
    premises: tuple["ProofTree", ...] = ()

    def size(self) -> int:
        return 1 + sum(p.size() for p in self.premises)

    def depth(self) -> int:
        return 1 + max((p.depth() for p in self.premises), default=0)


@dataclass(frozen=True)
class AssumptionBase:
    """Scenario axioms: appearance, kernel, and fact-entailment sequents.

    Assumption leaves of a certificate must match an axiom syntactically
    (after the parse-time normalizations), keeping certificates portable.
    """

    axioms: tuple[tuple[str, Sequent], ...] = ()  # (schema, sequent)
    signature: sx.Signature = sx.Signature.of()

    def __post_init__(self):
        object.__setattr__(self, "_index", frozenset(s for _, s in self.axioms))

    def contains(self, s: Sequent) -> bool:
        return s in self._index  # type: ignore[attr-defined]

    def sequents(self) -> list[Sequent]:
        return [s for _, s in self.axioms]


EMPTY_BASE = AssumptionBase()


def check_step(
    rule: str,
    premises: list[Sequent],
    conclusion: Sequent,
    base: AssumptionBase = EMPTY_BASE,
) -> Optional[str]:
    """None when the tuple instantiates the rule; else the failed constraint."""
    c = conclusion
    ctx = c.context
    ps = premises

    def arity(n: int) -> Optional[str]:
        if len(ps) != n:
            return f"{rule} expects {n} premise(s), got {len(ps)}"
        return None

    if rule == "Assumption":
        return arity(0) or (None if base.contains(c) else "not an axiom of the base")

    if c.side == "Q":
        return _check_q(rule, ps, c)
    if rule in MQ_RULES:
        return _check_mq(rule, ps, c)
    return _check_m(rule, ps, c)


def _check_q(rule: str, ps: list[Sequent], c: Sequent) -> Optional[str]:
    ctx = c.context

    def prem(i: int) -> Sequent:
        return ps[i]

    def need(n: int) -> Optional[str]:
        if len(ps) != n:
            return f"{rule} expects {n} premise(s)"
        for p in ps:
            if p.side != "Q":
                return f"{rule} premises must be Q-sequents"
        return None

    if rule == "Id":
        if ps:
            return "Id takes no premises"
        if len(ctx) == 1 and ctx[0] == c.conclusion:
            return None
        return "Id needs context equal to the conclusion"
    if rule == "1R":
        if ps:
            return "1R takes no premises"
        if ctx == () and c.conclusion == QOne():
            return None
        return "1R concludes the empty sequent of 1"
    if rule == "BotL":
        if ps:
            return "BotL takes no premises"
        if any(it == QBot() for it in ctx):
            return None
        return "BotL needs bot in the context"
    if rule == "TopR":
        if ps:
            return "TopR takes no premises"
        return None if c.conclusion == QTop() else "TopR concludes top"
    err = need({"SeqR": 2, "OrL": 2, "AndR": 2, "RResL": 2, "LResL": 2, "QCut": 2}.get(rule, 1))
    if err:
        return err
    p = ps[0]

    if rule == "1L":
        if p.conclusion != c.conclusion:
            return "conclusion must be unchanged"
        for i, it in enumerate(ctx):
            if it == QOne() and p.context == ctx[:i] + ctx[i + 1 :]:
                return None
        return "premise is not the conclusion with one unit removed"
    if rule == "AppQ_R":
        f = c.conclusion
        if not isinstance(f, AppQ):
            return "conclusion must be an appearance formula"
        if not ctx or ctx[-1] != Agent(f.agent):
            return "context must end with the formula's agent"
        if p.context == ctx[:-1] and p.conclusion == f.arg:
            return None
        return "premise must drop the agent and the appearance"
    if rule == "AppQ_L":
        if not ctx or not isinstance(ctx[0], AppQ):
            return "context must start with an appearance formula"
        f = ctx[0]
        if p.conclusion == c.conclusion and p.context == (f.arg, Agent(f.agent)) + ctx[1:]:
            return None
        return "premise must unfold the appearance into formula, agent"
    if rule == "BoxQ_R":
        f = c.conclusion
        if not isinstance(f, BoxQ):
            return "conclusion must be a box formula"
        if p.context == ctx + (Agent(f.agent),) and p.conclusion == f.arg:
            return None
        return "premise must move the box's agent into the context"
    if rule == "BoxQ_L":
        if len(ctx) < 2 or not isinstance(ctx[0], BoxQ) or ctx[1] != Agent(ctx[0].agent):
            return "context must start with a box formula and its agent"
        f = ctx[0]
        if p.conclusion == c.conclusion and p.context == (f.arg,) + ctx[2:]:
            return None
        return "premise must strip the box and the agent"
    if rule == "SeqL":
        if p.conclusion != c.conclusion:
            return "conclusion must be unchanged"
        for i, it in enumerate(ctx):
            if isinstance(it, Comp) and p.context == ctx[:i] + (it.left, it.right) + ctx[i + 1 :]:
                return None
        return "premise is not the conclusion with a composition split"
    if rule == "SeqR":
        f = c.conclusion
        if not isinstance(f, Comp):
            return "conclusion must be a composition"
        p1, p2 = ps
        if p1.conclusion != f.left or p2.conclusion != f.right:
            return "premises must conclude the two factors in order"
        g1, a1 = _agent_suffix(p1.context)
        g2, a2 = _agent_suffix(p2.context)
        if a1 != a2:
            return "premises must share the agent suffix"
        if not all(_is_qf(it) for it in g1 + g2):
            return "action contexts must contain only action formulas"
        if c.context == g1 + g2 + a1:
            return None
        return "conclusion context must concatenate the action contexts"
    if rule == "OrL":
        p1, p2 = ps
        if p1.conclusion != c.conclusion or p2.conclusion != c.conclusion:
            return "conclusion must be unchanged"
        for i, it in enumerate(ctx):
            if isinstance(it, QOr):
                if p1.context == ctx[:i] + (it.left,) + ctx[i + 1 :] and p2.context == ctx[
                    :i
                ] + (it.right,) + ctx[i + 1 :]:
                    return None
        return "premises must case-split a disjunction in the context"
    if rule in ("OrR1", "OrR2"):
        f = c.conclusion
        if not isinstance(f, QOr):
            return "conclusion must be a disjunction"
        want = f.left if rule == "OrR1" else f.right
        if p.context == ctx and p.conclusion == want:
            return None
        return "premise must conclude the chosen disjunct"
    if rule in ("AndL1", "AndL2"):
        if p.conclusion != c.conclusion:
            return "conclusion must be unchanged"
        for i, it in enumerate(ctx):
            if isinstance(it, QAnd):
                want = it.left if rule == "AndL1" else it.right
                if p.context == ctx[:i] + (want,) + ctx[i + 1 :]:
                    return None
        return "premise must project a conjunction in the context"
    if rule == "AndR":
        f = c.conclusion
        if not isinstance(f, QAnd):
            return "conclusion must be a conjunction"
        p1, p2 = ps
        if p1.context == ctx and p2.context == ctx and p1.conclusion == f.left and p2.conclusion == f.right:
            return None
        return "premises must conclude both conjuncts over the same context"
    if rule == "RResL":
        if not ctx or not isinstance(ctx[0], RRes):
            return "context must start with a right residual"
        rest = ctx[1:]
        if not all(_is_qf(it) for it in rest):
            return "residual context must contain only action formulas"
        f = ctx[0]
        p1, p2 = ps
        if p1.context == rest and p1.conclusion == f.right and p2.context == (f.left,) and p2.conclusion == c.conclusion:
            return None
        return "premises must derive the divisor and use the dividend"
    if rule == "RResR":
        f = c.conclusion
        if not isinstance(f, RRes):
            return "conclusion must be a right residual"
        if p.context == ctx + (f.right,) and p.conclusion == f.left:
            return None
        return "premise must move the divisor into the context"
    if rule == "LResL":
        if not ctx or not isinstance(ctx[-1], LRes):
            return "context must end with a left residual"
        f = ctx[-1]
        p1, p2 = ps
        if p1.context == ctx[:-1] and p1.conclusion == f.left and p2.context == (f.right,) and p2.conclusion == c.conclusion:
            return None
        return "premises must derive the divisor and use the dividend"
    if rule == "LResR":
        f = c.conclusion
        if not isinstance(f, LRes):
            return "conclusion must be a left residual"
        if not all(_is_qf(it) for it in ctx):
            return "residual context must contain only action formulas"
        if p.context == (f.left,) + ctx and p.conclusion == f.right:
            return None
        return "premise must prepend the divisor"
    if rule == "QCut":
        p1, p2 = ps
        cut = p1.conclusion
        if not p2.context or p2.context[0] != cut:
            return "second premise must start with the cut formula"
        if p2.conclusion != c.conclusion:
            return "conclusion must come from the second premise"
        if c.context == p1.context + p2.context[1:]:
            return None
        return "conclusion context must concatenate the premise contexts"
    if rule == "Agent":
        if len(p.context) == 1 and _is_agent(p.context[0]) and p.conclusion == c.conclusion:
            if c.context == (QOne(),):
                return None
            return "conclusion context must be the unit"
        return "premise context must be a single agent"
    return f"rule {rule} does not apply to Q-sequents"


def _check_m(rule: str, ps: list[Sequent], c: Sequent) -> Optional[str]:
    ctx = c.context

    def need(n: int) -> Optional[str]:
        if len(ps) != n:
            return f"{rule} expects {n} premise(s)"
        for p in ps:
            if p.side != "M":
                return f"{rule} premises must be M-sequents"
        return None

    if rule == "Id":
        if ps:
            return "Id takes no premises"
        if len(ctx) == 1 and ctx[0] == c.conclusion:
            return None
        return "Id needs context equal to the conclusion"
    if rule == "BotL":
        if ps:
            return "BotL takes no premises"
        if ctx == (MBot(),):
            return None
        return "BotL needs the single context item bot"
    if rule == "TopR":
        if ps:
            return "TopR takes no premises"
        return None if c.conclusion == MTop() else "TopR concludes top"
    err = need({"AndR": 2, "OrL": 2, "MCut": 2}.get(rule, 1))
    if err:
        return err
    p = ps[0]

    if rule == "BotR":
        if c.conclusion != MBot():
            return "BotR concludes bot"
        if p.context == ctx and p.conclusion == MBot():
            return None
        return "premise must be the same sequent with empty right side"
    if rule == "AppM_R":
        f = c.conclusion
        if not isinstance(f, AppM):
            return "conclusion must be an appearance formula"
        if not ctx or ctx[-1] != Agent(f.agent):
            return "context must end with the formula's agent"
        if p.context == ctx[:-1] and p.conclusion == f.arg:
            return None
        return "premise must drop the agent and the appearance"
    if rule == "AppM_L":
        if not ctx or not isinstance(ctx[0], AppM):
            return "context must start with an appearance formula"
        f = ctx[0]
        if p.conclusion == c.conclusion and p.context == (f.arg, Agent(f.agent)) + ctx[1:]:
            return None
        return "premise must unfold the appearance into formula, agent"
    if rule == "BoxM_R":
        f = c.conclusion
        if not isinstance(f, BoxM):
            return "conclusion must be a box formula"
        if p.context == ctx + (Agent(f.agent),) and p.conclusion == f.arg:
            return None
        return "premise must move the box's agent into the context"
    if rule == "BoxM_L":
        if len(ctx) < 2 or not isinstance(ctx[0], BoxM) or ctx[1] != Agent(ctx[0].agent):
            return "context must start with a box formula and its agent"
        f = ctx[0]
        if p.conclusion == c.conclusion and p.context == (f.arg,) + ctx[2:]:
            return None
        return "premise must strip the box and the agent"
    if rule == "AndR":
        f = c.conclusion
        if not isinstance(f, MAnd):
            return "conclusion must be a conjunction"
        p1, p2 = ps
        if p1.context == ctx and p2.context == ctx and p1.conclusion == f.left and p2.conclusion == f.right:
            return None
        return "premises must conclude both conjuncts over the same context"
    if rule in ("AndL1", "AndL2"):
        if p.conclusion != c.conclusion:
            return "conclusion must be unchanged"
        for i, it in enumerate(ctx):
            if isinstance(it, MAnd):
                want = it.left if rule == "AndL1" else it.right
                if p.context == ctx[:i] + (want,) + ctx[i + 1 :]:
                    return None
        return "premise must project a conjunction in the context"
    if rule == "OrL":
        p1, p2 = ps
        if p1.conclusion != c.conclusion or p2.conclusion != c.conclusion:
            return "conclusion must be unchanged"
        for i, it in enumerate(ctx):
            if isinstance(it, MOr):
                if p1.context == ctx[:i] + (it.left,) + ctx[i + 1 :] and p2.context == ctx[
                    :i
                ] + (it.right,) + ctx[i + 1 :]:
                    return None
        return "premises must case-split a disjunction in the context"
    if rule in ("OrR1", "OrR2"):
        f = c.conclusion
        if not isinstance(f, MOr):
            return "conclusion must be a disjunction"
        want = f.left if rule == "OrR1" else f.right
        if p.context == ctx and p.conclusion == want:
            return None
        return "premise must conclude the chosen disjunct"
    if rule == "Contr":
        if p.conclusion != c.conclusion:
            return "conclusion must be unchanged"
        for i, it in enumerate(ctx):
            if _is_mf(it) and p.context == ctx[: i + 1] + (it,) + ctx[i + 1 :]:
                return None
        return "premise must duplicate a proposition of the conclusion"
    if rule == "Exch":
        if p.conclusion != c.conclusion:
            return "conclusion must be unchanged"
        for i in range(len(ctx) - 1):
            if _is_mf(ctx[i]) and _is_mf(ctx[i + 1]):
                if p.context == ctx[:i] + (ctx[i + 1], ctx[i]) + ctx[i + 2 :]:
                    return None
        return "premise must swap two adjacent propositions"
    if rule == "Fact":
        if not isinstance(c.conclusion, Fact):
            return "conclusion must be a fact"
        if not ctx or not _is_qf(ctx[-1]):
            return "context must end with an action formula"
        if p.context == ctx[:-1] and p.conclusion == c.conclusion:
            return None
        return "premise must drop the trailing action"
    if rule == "MCut":
        p1, p2 = ps
        cut = p1.conclusion
        if not p2.context or p2.context[0] != cut:
            return "second premise must start with the cut formula"
        if p2.conclusion != c.conclusion:
            return "conclusion must come from the second premise"
        if c.context == p1.context + p2.context[1:]:
            return None
        return "conclusion context must concatenate the premise contexts"
    if rule == "WeakL":
        if p.conclusion != c.conclusion:
            return "conclusion must be unchanged"
        for i, it in enumerate(ctx):
            if _is_mf(it) and p.context == ctx[:i] + ctx[i + 1 :]:
                return None
        return "premise is not the conclusion with one proposition removed"
    if rule == "WeakR":
        if p.context == ctx and p.conclusion == MBot():
            return None
        return "premise must conclude bot over the same context"
    return f"rule {rule} does not apply to M-sequents"


def _check_mq(rule: str, ps: list[Sequent], c: Sequent) -> Optional[str]:
    ctx = c.context

    if rule in ("UpdL", "DyR", "1ML", "SeqML", "AndML1", "AndML2"):
        if len(ps) != 1:
            return f"{rule} expects 1 premise"
        if ps[0].side != "M":
            return f"{rule} premise must be an M-sequent"
    p = ps[0] if ps else None

    if rule == "UpdL":
        if not ctx or not isinstance(ctx[0], Update):
            return "context must start with an update formula"
        f = ctx[0]
        if p.conclusion == c.conclusion and p.context == (f.arg, f.action) + ctx[1:]:
            return None
        return "premise must unfold the update into formula, action"
    if rule == "UpdR":
        if len(ps) != 2:
            return "UpdR expects 2 premises"
        p1, p2 = ps
        if p1.side != "M" or p2.side != "Q":
            return "UpdR premises must be an M-sequent then a Q-sequent"
        f = c.conclusion
        if not isinstance(f, Update):
            return "conclusion must be an update formula"
        if p1.conclusion != f.arg or p2.conclusion != f.action:
            return "premises must conclude the parts of the update"
        gq, ga = _agent_suffix(p2.context)
        if not all(_is_qf(it) for it in gq):
            return "action context must contain only action formulas"
        if len(p1.context) < len(ga) or p1.context[len(p1.context) - len(ga) :] != ga:
            return "premises must share the agent suffix"
        g = p1.context[: len(p1.context) - len(ga)]
        if c.context == g + gq + ga:
            return None
        return "conclusion context must interleave as prefix, actions, agents"
    if rule == "DyL":
        if len(ps) != 2:
            return "DyL expects 2 premises"
        p1, p2 = ps
        if p1.side != "M" or p2.side != "Q":
            return "DyL premises must be an M-sequent then a Q-sequent"
        if not ctx or not isinstance(ctx[0], DynBox):
            return "context must start with a dynamic box"
        f = ctx[0]
        rest = ctx[1:]
        if not all(_is_qf(it) for it in rest):
            return "dynamic box context must contain only action formulas"
        if p1.context == (f.arg,) and p1.conclusion == c.conclusion and p2.context == rest and p2.conclusion == f.action:
            return None
        return "premises must use the boxed formula and derive the action"
    if rule == "DyR":
        f = c.conclusion
        if not isinstance(f, DynBox):
            return "conclusion must be a dynamic box"
        if p.context == ctx + (f.action,) and p.conclusion == f.arg:
            return None
        return "premise must move the action into the context"
    if rule == "1ML":
        if p.conclusion != c.conclusion:
            return "conclusion must be unchanged"
        for i, it in enumerate(ctx):
            if it == QOne() and p.context == ctx[:i] + ctx[i + 1 :]:
                return None
        return "premise is not the conclusion with one unit removed"
    if rule == "SeqML":
        if p.conclusion != c.conclusion:
            return "conclusion must be unchanged"
        for i, it in enumerate(ctx):
            if isinstance(it, Comp) and p.context == ctx[:i] + (it.left, it.right) + ctx[i + 1 :]:
                return None
        return "premise is not the conclusion with a composition split"
    if rule == "OrML":
        if len(ps) != 2 or any(q.side != "M" for q in ps):
            return "OrML expects 2 M-premises"
        if not ctx or not isinstance(ctx[-1], QOr):
            return "context must end with an action disjunction"
        f = ctx[-1]
        p1, p2 = ps
        if (
            p1.conclusion == c.conclusion
            and p2.conclusion == c.conclusion
            and p1.context == ctx[:-1] + (f.left,)
            and p2.context == ctx[:-1] + (f.right,)
        ):
            return None
        return "premises must case-split the final action disjunction"
    if rule == "RResML":
        if len(ps) != 2:
            return "RResML expects 2 premises"
        p1, p2 = ps
        if p1.side != "Q" or p2.side != "M":
            return "RResML premises must be a Q-sequent then an M-sequent"
        for i, it in enumerate(ctx):
            if isinstance(it, RRes) and all(_is_qf(x) for x in ctx[i + 1 :]):
                if (
                    p1.context == ctx[i + 1 :]
                    and p1.conclusion == it.right
                    and p2.context == ctx[:i] + (it.left,)
                    and p2.conclusion == c.conclusion
                ):
                    return None
        return "premises must derive the divisor and use the dividend"
    if rule == "LResML":
        if len(ps) != 2:
            return "LResML expects 2 premises"
        p1, p2 = ps
        if p1.side != "Q" or p2.side != "M":
            return "LResML premises must be a Q-sequent then an M-sequent"
        if not ctx or not isinstance(ctx[-1], LRes):
            return "context must end with a left residual"
        f = ctx[-1]
        gq = p1.context
        if not all(_is_qf(x) for x in gq):
            return "action context must contain only action formulas"
        body = ctx[:-1]
        if len(body) < len(gq) or body[len(body) - len(gq) :] != gq:
            return "conclusion must embed the action context before the residual"
        g = body[: len(body) - len(gq)]
        if p1.conclusion == f.left and p2.context == g + (f.right,) and p2.conclusion == c.conclusion:
            return None
        return "premises must derive the divisor and use the dividend"
    if rule in ("AndML1", "AndML2"):
        if p.conclusion != c.conclusion:
            return "conclusion must be unchanged"
        for i, it in enumerate(ctx):
            if isinstance(it, QAnd):
                want = it.left if rule == "AndML1" else it.right
                if p.context == ctx[:i] + (want,) + ctx[i + 1 :]:
                    return None
        return "premise must project an action conjunction in the context"
    return f"unknown mixed rule {rule}"


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    path: tuple[int, ...] = ()
    message: str = ""
    sequent: Optional[Sequent] = None

    def __bool__(self) -> bool:
        return self.ok


def check_proof(tree: ProofTree, base: AssumptionBase = EMPTY_BASE) -> CheckResult:
    """Verify every node of a certificate; violations carry the path from
    the root (premise indices)."""
    stack: list[tuple[ProofTree, tuple[int, ...]]] = [(tree, ())]
    while stack:
        node, path = stack.pop()
        if node.rule not in ALL_RULES:
            return CheckResult(False, path, f"unknown rule {node.rule!r}", node.conclusion)
        err = check_step(node.rule, [p.conclusion for p in node.premises], node.conclusion, base)
        if err is not None:
            return CheckResult(False, path, err, node.conclusion)
        for i, sub in enumerate(node.premises):
            stack.append((sub, path + (i,)))
    return CheckResult(True)


# Scenario axiom bases


@dataclass(frozen=True)
class Vocabulary:
    """Names an axiom base may mention, with optional kernel formulas for
    actions whose kernel join is not a plain named value."""

    mvars: tuple[str, ...] = ()
    qvars: tuple[str, ...] = ()
    facts: tuple[str, ...] = ()
    kernel_hints: tuple[tuple[str, str], ...] = ()  # (action var, formula text)


class AxiomError(Exception):
    pass


def _express_m(env, value: int, vocab: Vocabulary):
    """Value as a join of named propositions, or None."""
    lat = env.system.mlat
    parts = [n for n in vocab.mvars if lat.leq(env.mvals[n], value)]
    if parts and env.system.mlat.join_all(env.mvals[n] for n in parts) == value:
        out = sx.MVar(parts[0])
        for n in parts[1:]:
            out = MOr(out, sx.MVar(n))
        return out
    return None


def _express_q(env, value: int, vocab: Vocabulary):
    lat = env.system.qlat
    unit = env.system.quantale.unit
    if value == unit:
        return QOne()
    parts = [n for n in vocab.qvars if lat.leq(env.qvals[n], value)]
    joined = lat.bottom
    for n in parts:
        joined = lat.join(joined, env.qvals[n])
    if parts and joined == value:
        out = sx.QVar(parts[0])
        for n in parts[1:]:
            out = QOr(out, sx.QVar(n))
        return out
    if lat.leq(unit, value) and lat.join(joined, unit) == value:
        out: sx.QFormula = QOne()
        for n in parts:
            out = QOr(out, sx.QVar(n))
        return out
    return None


def axioms_of(env, vocab: Vocabulary) -> AssumptionBase:
    """Instantiate the four axiom schemas over a declared vocabulary.

    Emits exactly the appearance, kernel, and fact axioms that hold in the
    environment.  An appearance value that cannot be written as a join of
    declared names is an error; a kernel join that cannot be expressed (and
    has no hint) is an error unless it is bottom, which needs no axiom.
    """
    from .algebra import kernel_join
    from .semantics import eval_m

    sys = env.system
    axioms: list[tuple[str, Sequent]] = []
    sig = sx.Signature.of(
        agents=sys.agents, qvars=vocab.qvars, mvars=vocab.mvars, facts=vocab.facts
    )
    for name in vocab.mvars:
        for agent in sorted(sys.agents):
            val = sys.app_m[agent].apply(env.mvals[name])
            f = _express_m(env, val, vocab)
            if f is None:
                raise AxiomError(f"appearance of {name!r} to {agent} is not expressible")
            axioms.append(
                ("appearance_m", Sequent("M", (MVar(name), Agent(agent)), f))
            )
    for name in vocab.qvars:
        for agent in sorted(sys.agents):
            val = sys.app_q[agent].apply(env.qvals[name])
            f = _express_q(env, val, vocab)
            if f is None:
                raise AxiomError(f"appearance of {name!r} to {agent} is not expressible")
            axioms.append(
                ("appearance_q", Sequent("Q", (sx.QVar(name), Agent(agent)), f))
            )
    hints = dict(vocab.kernel_hints)
    for name in vocab.qvars:
        kj = kernel_join(sys, env.qvals[name])
        if kj == sys.mlat.bottom:
            continue
        f = None
        for fname in vocab.facts:
            if env.factvals[fname] == kj:
                f = Fact(fname)
                break
        if f is None:
            f = _express_m(env, kj, vocab)
        if f is None and name in hints:
            f = sx.parse_m(hints[name], sig)
            if eval_m(env, f) != kj:
                raise AxiomError(f"kernel hint for {name!r} does not match the kernel")
        if f is None:
            raise AxiomError(f"kernel of {name!r} is not expressible; add a hint")
        axioms.append(("kernel", Sequent("M", (f, sx.QVar(name)), MBot())))
    for name in vocab.mvars:
        for fname in vocab.facts:
            if sys.mlat.leq(env.mvals[name], env.factvals[fname]):
                axioms.append(("fact", Sequent("M", (MVar(name),), Fact(fname))))
    return AssumptionBase(tuple(axioms), sig)
