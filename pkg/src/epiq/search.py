"""Bounded backward-chaining proof search over the sequent rules.

The search is deterministic for a fixed configuration: rules are tried in
a fixed priority order (leaves, then invertible decompositions, then
context splits, then cuts, then structural moves), context splits are
enumerated left to right, and cut formulas come from a finite pool built
from subformulas of the goal and of the assumption base, update formulas
combined from those parts, and bottom.  A failure is only "not found
within the bounds", never a refutation.

Every returned tree re-checks against the proof kernel; the search calls
no semantic evaluation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

from . import syntax as sx
from .rules import AssumptionBase, EMPTY_BASE, ProofTree, check_proof
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
    QAnd,
    QBot,
    QOne,
    QOr,
    QTop,
    RRes,
    Sequent,
    Update,
    print_m,
    print_q,
)


@dataclass(frozen=True)
class SearchConfig:
    max_depth: int = 10
    cut_pool_policy: str = "subformulas"  # "subformulas" | "none"
    loop_check: bool = True
    max_visits: int = 2_000_000
    # Subgoal contexts may exceed the goal's length by this much; stacked
    # cuts otherwise inflate the goal space combinatorially.
    context_slack: int = 3

    def __post_init__(self):
        if self.max_depth < 1:
            raise ValueError("max_depth must be at least 1")
        if self.cut_pool_policy not in ("subformulas", "none"):
            raise ValueError(f"unknown cut pool policy {self.cut_pool_policy!r}")


def _is_qf(it) -> bool:
    return isinstance(it, sx.Q_TYPES)


def _is_mf(it) -> bool:
    return isinstance(it, sx.M_TYPES)


def _agent_suffix_len(ctx: tuple) -> int:
    i = 0
    while i < len(ctx) and isinstance(ctx[len(ctx) - 1 - i], Agent):
        i += 1
    return i


def _cut_splits(ctx: tuple) -> list[int]:
    """Cut context splits: keep the whole context on the left (the cut
    formula closes the goal) or only the first item (the kernel pattern).
    Every certificate pattern in scope uses one of the two."""
    if not ctx:
        return [0]
    return [len(ctx), 1] if len(ctx) > 1 else [1]


def _agents_of(goal: Sequent, base: AssumptionBase) -> list[str]:
    out = set(base.signature.agents)

    def scan(f):
        if isinstance(f, (AppQ, BoxQ, AppM, BoxM)):
            out.add(f.agent)
        for attr in ("left", "right", "arg", "action"):
            sub = getattr(f, attr, None)
            if sub is not None:
                scan(sub)

    for it in goal.context:
        if isinstance(it, Agent):
            out.add(it.name)
        else:
            scan(it)
    scan(goal.conclusion)
    for s in base.sequents():
        for it in s.context:
            if isinstance(it, Agent):
                out.add(it.name)
    return sorted(out)


@dataclass
class _Pool:
    q: list
    m: list


def _build_pool(goal: Sequent, base: AssumptionBase, policy: str) -> _Pool:
    """Cut candidates: subformulas of the goal and of the base axioms,
    bottom, and update formulas combined from goal subformulas and from
    axiom conclusions (the cuts the certificate patterns need)."""
    if policy == "none":
        return _Pool([], [])
    qsubs: set = set()
    msubs: set = set()
    goal_m: set = set()
    goal_q: set = set()
    head_m: set = set()
    head_q: set = set()

    def add(f, msink, qsink):
        if _is_qf(f):
            qs = set(sx.subformulas_q(f))
            qsubs.update(qs)
            qsink.update(qs)
        elif _is_mf(f):
            ms = set(sx.subformulas_m(f))
            qs = set(sx.q_parts_of_m(f))
            msubs.update(ms)
            qsubs.update(qs)
            msink.update(ms)
            qsink.update(qs)

    for it in goal.context:
        add(it, goal_m, goal_q)
    add(goal.conclusion, goal_m, goal_q)
    for s in base.sequents():
        for it in s.context:
            add(it, set(), set())
        add(s.conclusion, head_m, head_q)
    pool_m = set(msubs) | {MBot()}
    pool_m.update(Update(m, q) for m in goal_m for q in goal_q)
    pool_m.update(Update(m, q) for m in head_m for q in head_q)
    return _Pool(
        q=sorted(qsubs, key=print_q),
        m=sorted(pool_m, key=print_m),
    )


def _expansions(
    goal: Sequent, base: AssumptionBase, pool: _Pool, agents: list[str]
) -> Iterator[tuple[str, tuple[Sequent, ...]]]:
    """Candidate (rule, premises) pairs, highest priority first."""
    ctx = goal.context
    phi = goal.conclusion
    side = goal.side

    # leaves
    if len(ctx) == 1 and ctx[0] == phi:
        yield "Id", ()
    if base.contains(goal):
        yield "Assumption", ()
    if side == "Q":
        if any(it == QBot() for it in ctx):
            yield "BotL", ()
        if phi == QTop():
            yield "TopR", ()
        if ctx == () and phi == QOne():
            yield "1R", ()
    else:
        if ctx == (MBot(),):
            yield "BotL", ()
        if phi == MTop():
            yield "TopR", ()

    if side == "Q":
        yield from _q_expansions(goal, pool, agents)
    else:
        yield from _m_expansions(goal, pool)


def _q_expansions(goal: Sequent, pool: _Pool, agents: list[str]):
    ctx = goal.context
    phi = goal.conclusion

    for i, it in enumerate(ctx):
        if it == QOne():
            yield "1L", (Sequent("Q", ctx[:i] + ctx[i + 1 :], phi),)
    for i, it in enumerate(ctx):
        if isinstance(it, Comp):
            yield "SeqL", (Sequent("Q", ctx[:i] + (it.left, it.right) + ctx[i + 1 :], phi),)
    if ctx and isinstance(ctx[0], AppQ):
        f = ctx[0]
        yield "AppQ_L", (Sequent("Q", (f.arg, Agent(f.agent)) + ctx[1:], phi),)
    if len(ctx) >= 2 and isinstance(ctx[0], BoxQ) and ctx[1] == Agent(ctx[0].agent):
        yield "BoxQ_L", (Sequent("Q", (ctx[0].arg,) + ctx[2:], phi),)
    if isinstance(phi, AppQ) and ctx and ctx[-1] == Agent(phi.agent):
        yield "AppQ_R", (Sequent("Q", ctx[:-1], phi.arg),)
    if isinstance(phi, BoxQ):
        yield "BoxQ_R", (Sequent("Q", ctx + (Agent(phi.agent),), phi.arg),)
    for i, it in enumerate(ctx):
        if isinstance(it, QAnd):
            yield "AndL1", (Sequent("Q", ctx[:i] + (it.left,) + ctx[i + 1 :], phi),)
            yield "AndL2", (Sequent("Q", ctx[:i] + (it.right,) + ctx[i + 1 :], phi),)
    for i, it in enumerate(ctx):
        if isinstance(it, QOr):
            yield "OrL", (
                Sequent("Q", ctx[:i] + (it.left,) + ctx[i + 1 :], phi),
                Sequent("Q", ctx[:i] + (it.right,) + ctx[i + 1 :], phi),
            )
    if isinstance(phi, QAnd):
        yield "AndR", (Sequent("Q", ctx, phi.left), Sequent("Q", ctx, phi.right))
    if isinstance(phi, QOr):
        yield "OrR1", (Sequent("Q", ctx, phi.left),)
        yield "OrR2", (Sequent("Q", ctx, phi.right),)
    if isinstance(phi, RRes):
        yield "RResR", (Sequent("Q", ctx + (phi.right,), phi.left),)
    if isinstance(phi, LRes) and all(_is_qf(it) for it in ctx):
        yield "LResR", (Sequent("Q", (phi.left,) + ctx, phi.right),)
    if isinstance(phi, Comp):
        suf = _agent_suffix_len(ctx)
        ga = ctx[len(ctx) - suf :]
        body = ctx[: len(ctx) - suf]
        if all(_is_qf(it) for it in body):
            for i in range(len(body) + 1):
                yield "SeqR", (
                    Sequent("Q", body[:i] + ga, phi.left),
                    Sequent("Q", body[i:] + ga, phi.right),
                )
    if ctx and isinstance(ctx[0], RRes) and all(_is_qf(it) for it in ctx[1:]):
        f = ctx[0]
        yield "RResL", (Sequent("Q", ctx[1:], f.right), Sequent("Q", (f.left,), phi))
    if ctx and isinstance(ctx[-1], LRes):
        f = ctx[-1]
        yield "LResL", (Sequent("Q", ctx[:-1], f.left), Sequent("Q", (f.right,), phi))
    if ctx == (QOne(),):
        for a in agents:
            yield "Agent", (Sequent("Q", (Agent(a),), phi),)
    for cut in pool.q:
        for i in _cut_splits(ctx):
            yield "QCut", (
                Sequent("Q", ctx[:i], cut),
                Sequent("Q", (cut,) + ctx[i:], phi),
            )


def _m_expansions(goal: Sequent, pool: _Pool):
    ctx = goal.context
    phi = goal.conclusion

    if ctx and isinstance(ctx[0], Update):
        f = ctx[0]
        yield "UpdL", (Sequent("M", (f.arg, f.action) + ctx[1:], phi),)
    if ctx and isinstance(ctx[0], AppM):
        f = ctx[0]
        yield "AppM_L", (Sequent("M", (f.arg, Agent(f.agent)) + ctx[1:], phi),)
    if len(ctx) >= 2 and isinstance(ctx[0], BoxM) and ctx[1] == Agent(ctx[0].agent):
        yield "BoxM_L", (Sequent("M", (ctx[0].arg,) + ctx[2:], phi),)
    for i, it in enumerate(ctx):
        if it == QOne():
            yield "1ML", (Sequent("M", ctx[:i] + ctx[i + 1 :], phi),)
        if isinstance(it, Comp):
            yield "SeqML", (Sequent("M", ctx[:i] + (it.left, it.right) + ctx[i + 1 :], phi),)
        if isinstance(it, QAnd):
            yield "AndML1", (Sequent("M", ctx[:i] + (it.left,) + ctx[i + 1 :], phi),)
            yield "AndML2", (Sequent("M", ctx[:i] + (it.right,) + ctx[i + 1 :], phi),)
        if isinstance(it, MAnd):
            yield "AndL1", (Sequent("M", ctx[:i] + (it.left,) + ctx[i + 1 :], phi),)
            yield "AndL2", (Sequent("M", ctx[:i] + (it.right,) + ctx[i + 1 :], phi),)
    for i, it in enumerate(ctx):
        if isinstance(it, MOr):
            yield "OrL", (
                Sequent("M", ctx[:i] + (it.left,) + ctx[i + 1 :], phi),
                Sequent("M", ctx[:i] + (it.right,) + ctx[i + 1 :], phi),
            )
    if ctx and isinstance(ctx[-1], QOr):
        f = ctx[-1]
        yield "OrML", (
            Sequent("M", ctx[:-1] + (f.left,), phi),
            Sequent("M", ctx[:-1] + (f.right,), phi),
        )
    if isinstance(phi, DynBox):
        yield "DyR", (Sequent("M", ctx + (phi.action,), phi.arg),)
    if isinstance(phi, BoxM):
        yield "BoxM_R", (Sequent("M", ctx + (Agent(phi.agent),), phi.arg),)
    if isinstance(phi, AppM) and ctx and ctx[-1] == Agent(phi.agent):
        yield "AppM_R", (Sequent("M", ctx[:-1], phi.arg),)
    if isinstance(phi, MAnd):
        yield "AndR", (Sequent("M", ctx, phi.left), Sequent("M", ctx, phi.right))
    if isinstance(phi, MOr):
        yield "OrR1", (Sequent("M", ctx, phi.left),)
        yield "OrR2", (Sequent("M", ctx, phi.right),)
    if isinstance(phi, Fact) and ctx and _is_qf(ctx[-1]):
        yield "Fact", (Sequent("M", ctx[:-1], phi),)
    if isinstance(phi, Update):
        suf = _agent_suffix_len(ctx)
        for la in range(suf, -1, -1):
            ga = ctx[len(ctx) - la :]
            body = ctx[: len(ctx) - la]
            qmax = 0
            while qmax < len(body) and _is_qf(body[len(body) - 1 - qmax]):
                qmax += 1
            for lq in range(qmax, -1, -1):
                gq = body[len(body) - lq :]
                g = body[: len(body) - lq]
                yield "UpdR", (
                    Sequent("M", g + ga, phi.arg),
                    Sequent("Q", gq + ga, phi.action),
                )
    if ctx and isinstance(ctx[0], DynBox) and all(_is_qf(it) for it in ctx[1:]):
        f = ctx[0]
        yield "DyL", (
            Sequent("M", (f.arg,), phi),
            Sequent("Q", ctx[1:], f.action),
        )
    for i, it in enumerate(ctx):
        if isinstance(it, RRes) and all(_is_qf(x) for x in ctx[i + 1 :]):
            yield "RResML", (
                Sequent("Q", ctx[i + 1 :], it.right),
                Sequent("M", ctx[:i] + (it.left,), phi),
            )
    if ctx and isinstance(ctx[-1], LRes):
        f = ctx[-1]
        body = ctx[:-1]
        qmax = 0
        while qmax < len(body) and _is_qf(body[len(body) - 1 - qmax]):
            qmax += 1
        for lq in range(qmax, -1, -1):
            gq = body[len(body) - lq :]
            g = body[: len(body) - lq]
            yield "LResML", (
                Sequent("Q", gq, f.left),
                Sequent("M", g + (f.right,), phi),
            )
    if phi != MBot():
        yield "WeakR", (Sequent("M", ctx, MBot()),)
    for i, it in enumerate(ctx):
        if _is_mf(it):
            yield "WeakL", (Sequent("M", ctx[:i] + ctx[i + 1 :], phi),)
    for cut in pool.m:
        for i in _cut_splits(ctx):
            yield "MCut", (
                Sequent("M", ctx[:i], cut),
                Sequent("M", (cut,) + ctx[i:], phi),
            )
    for i in range(len(ctx) - 1):
        if _is_mf(ctx[i]) and _is_mf(ctx[i + 1]):
            yield "Exch", (Sequent("M", ctx[:i] + (ctx[i + 1], ctx[i]) + ctx[i + 2 :], phi),)
    for i, it in enumerate(ctx):
        if _is_mf(it):
            yield "Contr", (Sequent("M", ctx[: i + 1] + (it,) + ctx[i + 1 :], phi),)


class _LimitReached(Exception):
    pass


_NEVER = 10**9  # failure budget marking semantic refutation


class _Search:
    def __init__(
        self,
        base: AssumptionBase,
        cfg: SearchConfig,
        pool: _Pool,
        agents: list[str],
        max_context: int = 64,
        counter_env=None,
    ):
        self.base = base
        self.cfg = cfg
        self.pool = pool
        self.agents = agents
        self.max_context = max_context
        self.counter_env = counter_env
        self.success: dict[Sequent, ProofTree] = {}
        self.failed_at: dict[Sequent, int] = {}
        self.sem_ok: dict[Sequent, bool] = {}
        self.visits = 0

    def _semantically_false(self, goal: Sequent) -> bool:
        """Sound pruning: a goal failing in a model of the base has no
        proof, by soundness.  Evaluation errors disable the prune."""
        from .semantics import EvalError, holds

        cached = self.sem_ok.get(goal)
        if cached is None:
            try:
                cached = holds(self.counter_env, goal)
            except (EvalError, KeyError):
                cached = True
            self.sem_ok[goal] = cached
        return not cached

    def run(self, goal: Sequent, budget: int, path: frozenset) -> Optional[ProofTree]:
        """Depth-first backward chaining.  Failures are cached keyed by the
        budget they exhausted; successes are complete certificates and are
        reused freely."""
        done = self.success.get(goal)
        if done is not None:
            return done
        if budget <= 0:
            return None
        if self.failed_at.get(goal, -1) >= budget:
            return None
        if self.counter_env is not None and self._semantically_false(goal):
            self.failed_at[goal] = _NEVER
            return None
        self.visits += 1
        if self.visits > self.cfg.max_visits:
            raise _LimitReached
        sub_path = path | {goal} if self.cfg.loop_check else path
        for rule, premises in _expansions(goal, self.base, self.pool, self.agents):
            if any(len(p.context) > self.max_context for p in premises):
                continue
            if self.cfg.loop_check and any(p in path for p in premises):
                continue
            subtrees = []
            ok = True
            for p in premises:
                tree = self.run(p, budget - 1, sub_path)
                if tree is None:
                    ok = False
                    break
                subtrees.append(tree)
            if ok:
                found = ProofTree(goal, rule, tuple(subtrees))
                self.success[goal] = found
                return found
        if budget > self.failed_at.get(goal, -1):
            self.failed_at[goal] = budget
        return None


def prove(
    goal: Sequent,
    base: AssumptionBase = EMPTY_BASE,
    cfg: SearchConfig = SearchConfig(),
    counter_env=None,
) -> Optional[ProofTree]:
    """Search for a certificate of the goal; None means exhausted within
    the bounds (not a refutation).  Any returned tree passes check_proof.

    Deepens iteratively and shares the failure cache across depths, so the
    returned certificate is the one the shallowest successful budget finds.
    ``counter_env`` optionally supplies a model of the base; subgoals that
    fail in it are pruned (sound by the soundness theorem) which speeds up
    scenario searches enormously without affecting what certificates mean.
    """
    pool = _build_pool(goal, base, cfg.cut_pool_policy)
    agents = _agents_of(goal, base)
    max_context = len(goal.context) + cfg.context_slack
    search = _Search(base, cfg, pool, agents, max_context, counter_env)
    tree = None
    try:
        for depth in range(1, cfg.max_depth + 1):
            tree = search.run(goal, depth, frozenset())
            if tree is not None:
                break
    except _LimitReached:
        return None
    if tree is not None:
        result = check_proof(tree, base)
        if not result.ok:
            raise AssertionError(f"search produced an invalid certificate: {result.message}")
    return tree
