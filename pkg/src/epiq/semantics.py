"""Evaluation of formulas and sequents in a finite epistemic system.

The comma of a sequent context folds from the left: action contexts start
at the multiplicative unit and combine by composition (formulas) or action
appearance (agents); proposition contexts start at top and combine by meet
(propositions), update (actions) and proposition appearance (agents).  A
sequent holds when the fold of its context lies below its conclusion.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import syntax as sx
from .algebra import (
    EpistemicSystem,
    box_m,
    box_q,
    co_residual,
    dyn_box,
    is_stable,
    left_residual,
    right_residual,
)


class EvalError(Exception):
    pass


@dataclass
class Environment:
    """Binds action/proposition variables and facts to carrier elements.

    Fact values must be stable under every action; this is checked eagerly
    because the soundness of the fact rule depends on it.
    """

    system: EpistemicSystem
    qvals: dict[str, int] = field(default_factory=dict)
    mvals: dict[str, int] = field(default_factory=dict)
    factvals: dict[str, int] = field(default_factory=dict)

    def __post_init__(self):
        for name, val in self.factvals.items():
            if not is_stable(self.system, val):
                raise EvalError(f"fact {name!r} is not stable under the actions")

    @property
    def signature(self) -> sx.Signature:
        return sx.Signature.of(
            agents=self.system.agents,
            qvars=self.qvals.keys(),
            mvars=self.mvals.keys(),
            facts=self.factvals.keys(),
        )


def eval_q(env: Environment, f: sx.QFormula) -> int:
    sys = env.system
    lat = sys.qlat
    t = type(f)
    if t is sx.QTop:
        return lat.top
    if t is sx.QBot:
        return lat.bottom
    if t is sx.QOne:
        return sys.quantale.unit
    if t is sx.QVar:
        try:
            return env.qvals[f.name]
        except KeyError:
            raise EvalError(f"unbound action variable {f.name!r}") from None
    if t is sx.Comp:
        return sys.quantale.compose(eval_q(env, f.left), eval_q(env, f.right))
    if t is sx.LRes:
        return left_residual(sys, eval_q(env, f.left), eval_q(env, f.right))
    if t is sx.RRes:
        return right_residual(sys, eval_q(env, f.left), eval_q(env, f.right))
    if t is sx.QOr:
        return lat.join(eval_q(env, f.left), eval_q(env, f.right))
    if t is sx.QAnd:
        return lat.meet(eval_q(env, f.left), eval_q(env, f.right))
    if t is sx.AppQ:
        return sys.app_q[f.agent].apply(eval_q(env, f.arg))
    if t is sx.BoxQ:
        return box_q(sys, f.agent, eval_q(env, f.arg))
    raise EvalError(f"not an action formula: {f!r}")


def eval_m(env: Environment, f: sx.MFormula) -> int:
    sys = env.system
    lat = sys.mlat
    t = type(f)
    if t is sx.MTop:
        return lat.top
    if t is sx.MBot:
        return lat.bottom
    if t is sx.Fact:
        try:
            return env.factvals[f.name]
        except KeyError:
            raise EvalError(f"unbound fact {f.name!r}") from None
    if t is sx.MVar:
        try:
            return env.mvals[f.name]
        except KeyError:
            raise EvalError(f"unbound proposition variable {f.name!r}") from None
    if t is sx.MAnd:
        return lat.meet(eval_m(env, f.left), eval_m(env, f.right))
    if t is sx.MOr:
        return lat.join(eval_m(env, f.left), eval_m(env, f.right))
    if t is sx.DynBox:
        return dyn_box(sys, eval_q(env, f.action), eval_m(env, f.arg))
    if t is sx.Update:
        return sys.module.act(eval_m(env, f.arg), eval_q(env, f.action))
    if t is sx.AppM:
        return sys.app_m[f.agent].apply(eval_m(env, f.arg))
    if t is sx.BoxM:
        return box_m(sys, f.agent, eval_m(env, f.arg))
    raise EvalError(f"not a proposition formula: {f!r}")


def co_residual_value(env: Environment, m: sx.MFormula, m2: sx.MFormula) -> int:
    return co_residual(env.system, eval_m(env, m), eval_m(env, m2))


def fold_q(env: Environment, items: tuple[sx.ContextItem, ...]) -> int:
    """Left fold of an action context, starting at the unit."""
    sys = env.system
    out = sys.quantale.unit
    for it in items:
        if isinstance(it, sx.Agent):
            out = sys.app_q[it.name].apply(out)
        elif isinstance(it, sx.Q_TYPES):
            out = sys.quantale.compose(out, eval_q(env, it))
        else:
            raise EvalError("proposition in an action context")
    return out


def fold_m(env: Environment, items: tuple[sx.ContextItem, ...]) -> int:
    """Left fold of a proposition context, starting at top."""
    sys = env.system
    out = sys.mlat.top
    for it in items:
        if isinstance(it, sx.Agent):
            out = sys.app_m[it.name].apply(out)
        elif isinstance(it, sx.Q_TYPES):
            out = sys.module.act(out, eval_q(env, it))
        elif isinstance(it, sx.M_TYPES):
            out = sys.mlat.meet(out, eval_m(env, it))
        else:
            raise EvalError(f"bad context item {it!r}")
    return out


def holds(env: Environment, s: sx.Sequent) -> bool:
    """Validity: the context fold entails the conclusion."""
    if s.side == "Q":
        return env.system.qlat.leq(fold_q(env, s.context), eval_q(env, s.conclusion))
    return env.system.mlat.leq(fold_m(env, s.context), eval_m(env, s.conclusion))
