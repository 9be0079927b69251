"""Compile two-Kripke-structure scenario descriptions into finite
epistemic systems, plus the catalogue of named epistemic actions and the
three worked scenarios.

The compilation closes the state set under the update product: a product
state is a base state tagged with the word of actions applied to it, and
an action applies where its kernel condition fails in the *current* product
structure (kernels given by a proposition formula are re-evaluated each
round, which is what makes announcement rounds informative).  Product
states are quotiented by bisimulation and action words by extensional
equivalence (equal induced update on state classes, matching appearance
structure).  The result is a pair of Boolean powerset carriers whose atoms
are the two kinds of classes.

A horizon bounds the word length; compilation fails loudly when the
quotient has not stabilized at the horizon (new state or word classes keep
appearing one step beyond it) rather than truncating silently.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from . import syntax as sx
from .algebra import EpistemicSystem, Module, Quantale
from .lattice import Lattice, LatticeMap, PowersetLattice, complement_of, is_distributive
from .rules import AssumptionBase, Vocabulary, axioms_of
from .semantics import Environment

Word = tuple[str, ...]
Node = tuple[str, Word]


class ModelError(Exception):
    pass


class HorizonError(ModelError):
    """The update closure did not stabilize within the given word horizon."""


@dataclass(frozen=True)
class KripkeStateModel:
    states: tuple[str, ...]
    access: dict[str, frozenset[tuple[str, str]]]
    valuation: dict[str, frozenset[str]]

    def agents(self) -> list[str]:
        return sorted(self.access)


@dataclass(frozen=True)
class Precondition:
    """Applicability of an action: either the set of base states it
    survives on (a factual condition), or a kernel formula that is
    re-evaluated in the current product structure (the action dies exactly
    where the formula holds)."""

    states: frozenset[str] | None = None
    kernel_formula: sx.MFormula | None = None

    def __post_init__(self):
        if (self.states is None) == (self.kernel_formula is None):
            raise ModelError("precondition needs exactly one of states / kernel formula")


@dataclass(frozen=True)
class ActionModel:
    actions: tuple[str, ...]
    access: dict[str, frozenset[tuple[str, str]]]
    pre: dict[str, Precondition]


_KERNEL_CONNECTIVES = (sx.MTop, sx.MBot, sx.Fact, sx.MAnd, sx.MOr, sx.BoxM)


def _check_kernel_formula(f: sx.MFormula):
    if not isinstance(f, _KERNEL_CONNECTIVES):
        raise ModelError(f"kernel formulas are built from facts, boxes, meets and joins; got {f!r}")
    for sub in (getattr(f, "left", None), getattr(f, "right", None), getattr(f, "arg", None)):
        if sub is not None:
            _check_kernel_formula(sub)


class _Product:
    """Generated product states for all words up to a depth, with the
    per-step structure needed to evaluate kernel formulas."""

    def __init__(self, sm: KripkeStateModel, am: ActionModel, depth: int):
        self.sm = sm
        self.am = am
        self.depth = depth
        self.agents = sorted(set(sm.access) | set(am.access))
        for name, pre in am.pre.items():
            if pre.kernel_formula is not None:
                _check_kernel_formula(pre.kernel_formula)
        self.state_img = {
            a: {s: sorted(t for (u, t) in sm.access.get(a, ()) if u == s) for s in sm.states}
            for a in self.agents
        }
        self.act_img = {
            a: {x: sorted(t for (u, t) in am.access.get(a, ()) if u == x) for x in am.actions}
            for a in self.agents
        }
        self.alive: dict[Word, frozenset[str]] = {(): frozenset(sm.states)}
        self.words_by_len: list[list[Word]] = [[()]]
        for j in range(depth):
            self._extend(j)
        self.nodes: list[Node] = [
            (s, w) for ws in self.words_by_len for w in ws for s in sorted(self.alive[w])
        ]

    def word_images(self, agent: str, w: Word) -> list[Word]:
        per = [self.act_img[agent][x] for x in w]
        return [tuple(c) for c in itertools.product(*per)]

    def successors(self, agent: str, node: Node) -> list[Node]:
        s, w = node
        out = []
        for s2 in self.state_img[agent][s]:
            for w2 in self.word_images(agent, w):
                if s2 in self.alive.get(w2, ()):
                    out.append((s2, w2))
        return out

    def _sat(self, step_nodes: list[Node], f: sx.MFormula) -> set[Node]:
        t = type(f)
        if t is sx.MTop:
            return set(step_nodes)
        if t is sx.MBot:
            return set()
        if t is sx.Fact:
            states = self.sm.valuation.get(f.name)
            if states is None:
                raise ModelError(f"kernel formula mentions unknown fact {f.name!r}")
            return {x for x in step_nodes if x[0] in states}
        if t is sx.MAnd:
            return self._sat(step_nodes, f.left) & self._sat(step_nodes, f.right)
        if t is sx.MOr:
            return self._sat(step_nodes, f.left) | self._sat(step_nodes, f.right)
        if t is sx.BoxM:
            inner = self._sat(step_nodes, f.arg)
            return {
                x for x in step_nodes if all(y in inner for y in self.successors(f.agent, x))
            }
        raise ModelError(f"unsupported kernel connective {f!r}")

    def _extend(self, j: int):
        step_words = self.words_by_len[j]
        step_nodes = [(s, w) for w in step_words for s in sorted(self.alive[w])]
        dead_for: dict[str, set[Node]] = {}
        for act in self.am.actions:
            pre = self.am.pre[act]
            if pre.kernel_formula is not None:
                dead_for[act] = self._sat(step_nodes, pre.kernel_formula)
            else:
                dead_for[act] = {x for x in step_nodes if x[0] not in pre.states}
        nxt = []
        for w in step_words:
            for act in self.am.actions:
                w2 = w + (act,)
                self.alive[w2] = frozenset(
                    s for s in self.alive[w] if (s, w) not in dead_for[act]
                )
                nxt.append(w2)
        self.words_by_len.append(nxt)


def _refine(keys: dict, initial: dict, signature) -> dict:
    """Generic partition refinement to a fixpoint; returns item -> class id."""
    cls = dict(initial)
    while True:
        sigs = {x: (cls[x], signature(x, cls)) for x in keys}
        remap: dict = {}
        new: dict = {}
        for x in keys:
            new[x] = remap.setdefault(sigs[x], len(remap))
        if len(remap) == len(set(cls.values())):
            return new
        cls = new


@dataclass
class Compiled:
    """A compiled system with the bookkeeping to name its atoms."""

    system: EpistemicSystem
    env: Environment
    horizon: int
    state_class: dict[Node, int]
    word_class: dict[Word, int]
    state_labels: list[str]
    word_labels: list[str]
    state_model: KripkeStateModel
    action_model: ActionModel

    def state_atom(self, s: str, w: Word = ()) -> int:
        return 1 << self.state_class[(s, w)]

    def word_atom(self, w: Word) -> int:
        return 1 << self.word_class[w]

    def fact_value(self, fact: str) -> int:
        states = self.state_model.valuation[fact]
        out = 0
        reps = _class_reps(self.state_class)
        for cid, (s, _) in reps.items():
            if s in states:
                out |= 1 << cid
        return out


def _class_reps(cls_of: dict) -> dict[int, tuple]:
    reps: dict[int, tuple] = {}
    for item in sorted(cls_of, key=lambda x: (len(x[1]) if isinstance(x[1], tuple) else 0, x)):
        reps.setdefault(cls_of[item], item)
    return reps


def bms_to_system(
    sm: KripkeStateModel, am: ActionModel, horizon: int
) -> Compiled:
    """Close the models under the update product up to ``horizon``-long
    action words, quotient, and assemble the epistemic system.

    Raises HorizonError when one more step still produces new state or
    word classes, or when a class has no representative within the horizon.
    """
    if horizon < 1:
        raise ModelError("horizon must be positive")
    prod = _Product(sm, am, horizon + 1)
    agents = prod.agents

    # Bisimulation on product states.  Base facts and factual (static)
    # preconditions seed the partition; accessibility refines it.
    static_acts = [a for a in am.actions if am.pre[a].states is not None]

    def state_seed(node: Node) -> tuple:
        s, _ = node
        facts = tuple(sorted(p for p, ss in sm.valuation.items() if s in ss))
        pres = tuple(s in am.pre[a].states for a in static_acts)
        return (facts, pres)

    nodes = prod.nodes
    succs = {
        (x, a): prod.successors(a, x) for x in nodes for a in agents
    }
    seed_ids: dict = {}
    initial = {x: seed_ids.setdefault(state_seed(x), len(seed_ids)) for x in nodes}

    def state_sig(x: Node, cls: dict) -> tuple:
        return tuple(frozenset(cls[y] for y in succs[(x, a)]) for a in agents)

    scls = _refine(dict.fromkeys(nodes), initial, state_sig)

    reps = _class_reps(scls)
    num_s = len(reps)
    for cid, (s, w) in reps.items():
        if len(w) > horizon:
            raise HorizonError(
                f"state class of {s}:{'.'.join(w)} first appears beyond the horizon"
            )

    # Generator updates at class level, verified on every member in range.
    gen: dict[tuple[int, str], int | None] = {}
    for cid, (s, w) in reps.items():
        for act in am.actions:
            w2 = w + (act,)
            gen[(cid, act)] = scls[(s, w2)] if s in prod.alive[w2] else None
    for x in nodes:
        s, w = x
        if len(w) > horizon:
            continue
        for act in am.actions:
            w2 = w + (act,)
            got = scls[(s, w2)] if s in prod.alive[w2] else None
            if got != gen[(scls[x], act)]:
                raise HorizonError(
                    f"update by {act} is not constant on the class of {s}:{'.'.join(w)}"
                )

    # Word quotient: seed by the induced update endomorphism, refine by
    # appearance structure.
    words = [w for ws in prod.words_by_len for w in ws]

    def endo(w: Word) -> tuple:
        out = []
        for cid in range(num_s):
            cur: int | None = cid
            for act in w:
                if cur is None:
                    break
                cur = gen[(cur, act)]
            out.append(cur)
        return tuple(out)

    endo_ids: dict = {}
    w_initial = {w: endo_ids.setdefault(endo(w), len(endo_ids)) for w in words}

    def word_sig(w: Word, cls: dict) -> tuple:
        return tuple(
            frozenset(cls[w2] for w2 in prod.word_images(a, w)) for a in agents
        )

    wcls = _refine(dict.fromkeys(words), w_initial, word_sig)
    wreps: dict[int, Word] = {}
    for w in sorted(words, key=lambda w: (len(w), w)):
        wreps.setdefault(wcls[w], w)
    num_w = len(wreps)
    for cid, w in wreps.items():
        if len(w) > horizon:
            raise HorizonError(f"word class of {'.'.join(w)} first appears beyond the horizon")
    for w in words:
        if len(w) >= horizon + 1:
            continue
        for act in am.actions:
            if wcls[w + (act,)] != wcls[wreps[wcls[w]] + (act,)]:
                raise HorizonError(f"composition with {act} is not constant on a word class")

    def fold_word(cid: int | None, w: Word) -> int | None:
        for act in w:
            if cid is None:
                return None
            cid = gen[(cid, act)]
        return cid

    atom_comp = [
        [wcls[wreps[c1] + wreps[c2]] if len(wreps[c1] + wreps[c2]) <= horizon + 1
         else _fold_comp(wcls, wreps, am, c1, c2) for c2 in range(num_w)]
        for c1 in range(num_w)
    ]
    atom_act = [
        [fold_word(cid, wreps[c2]) for c2 in range(num_w)] for cid in range(num_s)
    ]

    state_labels = [
        reps[cid][0] if not reps[cid][1] else f"{reps[cid][0]}:{'.'.join(reps[cid][1])}"
        for cid in range(num_s)
    ]
    word_labels = ["1" if not wreps[c] else ".".join(wreps[c]) for c in range(num_w)]
    mlat = PowersetLattice(num_s, state_labels)
    qlat = PowersetLattice(num_w, word_labels)
    quant = Quantale(qlat, unit=1 << wcls[()], atom_comp=atom_comp)
    module = Module(mlat, quant, atom_act=atom_act)

    app_m = {}
    app_q = {}
    for a in agents:
        m_imgs = []
        for cid in range(num_s):
            img = 0
            for y in succs[(reps[cid], a)]:
                img |= 1 << scls[y]
            m_imgs.append(img)
        q_imgs = []
        for c in range(num_w):
            img = 0
            for w2 in prod.word_images(a, wreps[c]):
                img |= 1 << wcls[w2]
            q_imgs.append(img)
        app_m[a] = LatticeMap.from_atom_images(mlat, mlat, m_imgs)
        app_q[a] = LatticeMap.from_atom_images(qlat, qlat, q_imgs)

    system = EpistemicSystem(
        module=module, agents=tuple(agents), app_m=app_m, app_q=app_q
    )

    def fact_value(fact: str) -> int:
        states = sm.valuation[fact]
        return sum(1 << cid for cid, (s, _) in reps.items() if s in states)

    env = Environment(
        system=system,
        qvals={a: 1 << wcls[(a,)] for a in am.actions},
        mvals={s: 1 << scls[(s, ())] for s in sm.states},
        factvals={p: fact_value(p) for p in sm.valuation},
    )
    return Compiled(
        system=system,
        env=env,
        horizon=horizon,
        state_class=scls,
        word_class=wcls,
        state_labels=state_labels,
        word_labels=word_labels,
        state_model=sm,
        action_model=am,
    )


def _fold_comp(wcls, wreps, am, c1: int, c2: int) -> int:
    cur = c1
    for act in wreps[c2]:
        nxt = wcls.get(wreps[cur] + (act,))
        if nxt is None:
            raise HorizonError("word composition leaves the generated classes")
        cur = nxt
    return cur


def find_horizon(sm: KripkeStateModel, am: ActionModel, lo: int, hi: int) -> Compiled:
    """Smallest stabilizing horizon in [lo, hi]; HorizonError past hi."""
    last: HorizonError | None = None
    for h in range(lo, hi + 1):
        try:
            return bms_to_system(sm, am, h)
        except HorizonError as e:
            last = e
    raise HorizonError(f"no stabilizing horizon up to {hi}: {last}")


# Catalogue of named epistemic actions


@dataclass(frozen=True)
class ActionDescriptor:
    """An action given by its kernel generator and per-agent appearance
    ("self" for agents who see the action, "skip" for agents to whom it
    looks like nothing happened)."""

    label: str
    kernel_generator: int
    appearance: tuple[tuple[str, str], ...]


class AnnouncementError(ModelError):
    pass


def public_refutation(lat: Lattice, m: int, agents: tuple[str, ...], label: str = "refute") -> ActionDescriptor:
    return ActionDescriptor(label, m, tuple((a, "self") for a in sorted(agents)))


def private_refutation(
    lat: Lattice, m: int, group: tuple[str, ...], agents: tuple[str, ...], label: str = "refute"
) -> ActionDescriptor:
    return ActionDescriptor(
        label, m, tuple((a, "self" if a in group else "skip") for a in sorted(agents))
    )


def failure_test(lat: Lattice, m: int, agents: tuple[str, ...], label: str = "test") -> ActionDescriptor:
    return private_refutation(lat, m, (), agents, label)


def public_announcement(
    lat: Lattice, m: int, agents: tuple[str, ...], label: str = "announce"
) -> ActionDescriptor:
    """Announcing m refutes its Boolean complement; only defined when that
    complement exists (distributive carrier, complemented element)."""
    if not is_distributive(lat):
        raise AnnouncementError("carrier is not distributive, no Boolean complements")
    c = complement_of(lat, m)
    if c is None:
        raise AnnouncementError(f"element {lat.label(m)} has no Boolean complement")
    return ActionDescriptor(label, c, tuple((a, "self") for a in sorted(agents)))


# Scenarios


@dataclass(frozen=True)
class Target:
    name: str
    sequent: str
    expected: bool
    note: str = ""


@dataclass
class Scenario:
    name: str
    compiled: Compiled
    base: AssumptionBase
    targets: list[Target]
    vocab: Vocabulary

    @property
    def system(self) -> EpistemicSystem:
        return self.compiled.system

    @property
    def env(self) -> Environment:
        return self.compiled.env


def _subset_name(beta: frozenset[int]) -> str:
    return "s_empty" if not beta else "s_" + "".join(str(i) for i in sorted(beta))


def _muddy_state_model(n: int) -> KripkeStateModel:
    subsets = [frozenset(c) for r in range(n + 1) for c in itertools.combinations(range(1, n + 1), r)]
    names = {b: _subset_name(b) for b in subsets}
    access = {}
    for i in range(1, n + 1):
        rel = set()
        for b in subsets:
            for b2 in (b - {i}, b | {i}):
                rel.add((names[b], names[b2]))
        access[f"C{i}"] = frozenset(rel)
    valuation = {f"D{i}": frozenset(names[b] for b in subsets if i in b) for i in range(1, n + 1)}
    valuation["D_empty"] = frozenset({names[frozenset()]})
    return KripkeStateModel(tuple(names[b] for b in subsets), access, valuation)


def _self_access(actions: tuple[str, ...], agents: list[str]) -> dict[str, frozenset]:
    return {a: frozenset((x, x) for x in actions) for a in agents}


def _nobody_knows_kernel(n: int) -> str:
    return " | ".join(f"boxM[C{i}](#D{i})" for i in range(1, n + 1))


def muddy_scenario(n: int, k: int, rounds: int | None = None) -> Scenario:
    """The n-children, k-dirty puzzle: the father's announcement followed by
    rounds of simultaneous "I don't know" answers.

    Emits positive targets (after k-1 rounds each dirty child knows), and
    for k >= 2 negative targets one round short.  ``rounds`` adds an extra
    parametrized target family at that round count.
    """
    if not (1 <= k <= n <= 4):
        raise ModelError("need 1 <= k <= n <= 4")
    sm = _muddy_state_model(n)
    agents = sm.agents()
    kernel_q = _nobody_knows_kernel(n)
    am = ActionModel(
        actions=("q0", "q"),
        access=_self_access(("q0", "q"), agents),
        pre={
            "q0": Precondition(kernel_formula=sx.parse_m("#D_empty")),
            "q": Precondition(kernel_formula=sx.parse_m(kernel_q)),
        },
    )
    compiled = find_horizon(sm, am, lo=max(k, 1), hi=n + 3)
    vocab = Vocabulary(
        mvars=tuple(sm.states),
        qvars=("q0", "q"),
        facts=tuple(sorted(sm.valuation)),
        kernel_hints=(("q", kernel_q),),
    )
    base = axioms_of(compiled.env, vocab)
    real = _subset_name(frozenset(range(1, k + 1)))

    def word(r: int) -> str:
        return "q0" + " * q" * r

    targets = []
    for j in range(1, k + 1):
        targets.append(
            Target(
                f"positive_C{j}",
                f"{real} |-M [{word(k - 1)}]boxM[C{j}](#D{j})",
                True,
                f"child {j} knows after {k - 1} round(s)",
            )
        )
    if k >= 2:
        for j in range(1, k + 1):
            targets.append(
                Target(
                    f"negative_C{j}",
                    f"{real} |-M [{word(k - 2)}]boxM[C{j}](#D{j})",
                    False,
                    "one round too few",
                )
            )
    if rounds is not None:
        for j in range(1, k + 1):
            targets.append(
                Target(
                    f"rounds{rounds}_C{j}",
                    f"{real} |-M [{word(rounds)}]boxM[C{j}](#D{j})",
                    rounds >= k - 1,
                    f"explicit {rounds}-round variant",
                )
            )
    return Scenario("muddy", compiled, base, targets, vocab)


def lying_scenario(n: int) -> Scenario:
    """One dirty child lies in the first answer round; the clean children
    wrongly conclude they are dirty.

    The truthful round q cannot happen once child 1 knows (the update
    annihilates), so the literal control sequent with q holds vacuously;
    the emitted control targets pin the run survival on both sides.
    """
    if not (2 <= n <= 4):
        raise ModelError("need 2 <= n <= 4")
    sm0 = _muddy_state_model(n)
    valuation = dict(sm0.valuation)
    valuation["Dbar1"] = frozenset(s for s in sm0.states if s not in valuation["D1"])
    sm = KripkeStateModel(sm0.states, sm0.access, valuation)
    agents = sm.agents()
    actions = ("q0", "q", "qbar")
    access = {}
    for a in agents:
        rel = {(x, x) for x in actions}
        if a != "C1":
            rel.discard(("qbar", "qbar"))
            rel.add(("qbar", "q"))
        access[a] = frozenset(rel)
    kernel_qbar = " | ".join(
        ["boxM[C1](#Dbar1)"] + [f"boxM[C{i}](#D{i})" for i in range(2, n + 1)]
    )
    am = ActionModel(
        actions=actions,
        access=access,
        pre={
            "q0": Precondition(kernel_formula=sx.parse_m("#D_empty")),
            "q": Precondition(kernel_formula=sx.parse_m(_nobody_knows_kernel(n))),
            "qbar": Precondition(kernel_formula=sx.parse_m(kernel_qbar)),
        },
    )
    compiled = find_horizon(sm, am, lo=2, hi=n + 3)
    vocab = Vocabulary(
        mvars=tuple(sm.states),
        qvars=actions,
        facts=tuple(sorted(valuation)),
        kernel_hints=(
            ("q", _nobody_knows_kernel(n)),
            ("qbar", kernel_qbar),
        ),
    )
    base = axioms_of(compiled.env, vocab)
    targets = []
    for j in range(2, n + 1):
        targets.append(
            Target(
                f"lie_deceives_C{j}",
                f"s_1 |-M [q0 * qbar]boxM[C{j}](#D{j})",
                True,
                f"clean child {j} wrongly believes to be dirty",
            )
        )
    targets.append(
        Target("lie_run_survives", "s_1 |-M [q0 * qbar]bot", False, "the lying round happens")
    )
    targets.append(
        Target(
            "truthful_run_dies",
            "s_1 |-M [q0 * q]bot",
            True,
            "the all-no round cannot truthfully happen once child 1 knows",
        )
    )
    targets.append(
        Target(
            "control_truthful_vacuous",
            "s_1 |-M [q0 * q]boxM[C2](#D2)",
            True,
            "vacuously true: the update annihilates, so the box is top-like here",
        )
    )
    return Scenario("lying", compiled, base, targets, vocab)


def mitm_scenario() -> Scenario:
    """Intercepted-message attack: A sends the secret, C flips it in
    transit, and afterwards A wrongly knows that B knows the secret."""
    sm = KripkeStateModel(
        states=("s", "t"),
        access={
            "A": frozenset({("s", "s"), ("t", "t")}),
            "B": frozenset({("s", "s"), ("s", "t"), ("t", "s"), ("t", "t")}),
            "C": frozenset({("s", "s"), ("s", "t"), ("t", "s"), ("t", "t")}),
        },
        valuation={"P": frozenset({"s"}), "Pbar": frozenset({"t"})},
    )
    actions = ("alpha", "beta", "alphap", "betap", "gamma")
    access = {
        "A": frozenset(
            {("alpha", "alphap"), ("beta", "betap"), ("alphap", "alphap"),
             ("betap", "betap"), ("gamma", "gamma")}
        ),
        "B": frozenset(
            {("alpha", "betap"), ("beta", "alphap"), ("alphap", "alphap"),
             ("betap", "betap"), ("gamma", "gamma")}
        ),
        "C": frozenset(
            {("alpha", "alpha"), ("alpha", "beta"), ("beta", "alpha"), ("beta", "beta")}
            | {(x, y) for x in ("alphap", "betap", "gamma") for y in ("alphap", "betap", "gamma")}
        ),
    }
    am = ActionModel(
        actions=actions,
        access=access,
        pre={
            "alpha": Precondition(kernel_formula=sx.parse_m("#Pbar")),
            "alphap": Precondition(kernel_formula=sx.parse_m("#Pbar")),
            "beta": Precondition(kernel_formula=sx.parse_m("#P")),
            "betap": Precondition(kernel_formula=sx.parse_m("#P")),
            "gamma": Precondition(kernel_formula=sx.parse_m("bot")),
        },
    )
    compiled = find_horizon(sm, am, lo=1, hi=6)
    vocab = Vocabulary(
        mvars=("s", "t"),
        qvars=actions,
        facts=("P", "Pbar"),
    )
    base = axioms_of(compiled.env, vocab)
    targets = [
        Target(
            "a_knows_b_knows",
            "s . (alpha | beta) |-M boxM[A](boxM[B](#P))",
            True,
            "after the intercepted exchange A knows that B knows the secret",
        ),
        Target("beta_dies_at_s", "s . beta |-M bot", True, "the true state blocks beta"),
        Target(
            "honest_send_tells_P",
            "(s | t) . alphap |-M #P",
            True,
            "an honest send of the secret only survives where it is true",
        ),
    ]
    return Scenario("mitm", compiled, base, targets, vocab)


def build_scenario(name: str, **params) -> Scenario:
    if name == "muddy":
        return muddy_scenario(params["n"], params["k"], params.get("rounds"))
    if name == "lying":
        return lying_scenario(params["n"])
    if name == "mitm":
        return mitm_scenario()
    raise ModelError(f"unknown scenario {name!r}")
