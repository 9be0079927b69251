"""Finite quantales, modules over them, and epistemic systems.

An epistemic system couples a quantale Q of actions, a Q-module M of
propositions, and one pair of lax appearance endomaps per agent.  Knowledge
boxes, dynamic boxes, residuals, kernels and stabilizers all arise as
Galois adjoints of the basic operations and are computed here by definition
unfolding: joins over elements on tabulated carriers, joins over atoms on
powerset carriers (equivalent, since every map involved preserves joins).

``validate_system`` never raises on a law violation; it returns a report
listing each broken law with a witness tuple so callers (and fuzz tests)
can classify failures.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .lattice import (
    Lattice,
    LatticeMap,
    LatticeError,
    PowersetLattice,
    TableLattice,
    is_boolean,
    is_join_preserving,
    right_adjoint_value,
)

# Carriers at or below this many elements get fully exhaustive law checks;
# larger powerset carriers are checked on atoms plus a seeded sample.
EXHAUSTIVE_ELEMENTS = 64


class Quantale:
    """Sup-lattice with a monoid multiplication distributing over joins.

    ``mult_table`` gives the product per element pair; ``atom_comp`` gives
    it per atom pair (always an atom: scenario quantales compose action
    words to action words) and is extended to elements by joins.
    """

    def __init__(
        self,
        lat: Lattice,
        unit: int,
        mult_table: Sequence[Sequence[int]] | None = None,
        atom_comp: Sequence[Sequence[int]] | None = None,
    ):
        if (mult_table is None) == (atom_comp is None):
            raise LatticeError("provide exactly one of mult_table / atom_comp")
        if atom_comp is not None and not isinstance(lat, PowersetLattice):
            raise LatticeError("atom_comp requires a powerset carrier")
        self.lat = lat
        self.unit = unit
        self.mult_table = (
            tuple(tuple(row) for row in mult_table) if mult_table is not None else None
        )
        self.atom_comp = (
            tuple(tuple(row) for row in atom_comp) if atom_comp is not None else None
        )

    def compose(self, a: int, b: int) -> int:
        if self.mult_table is not None:
            return self.mult_table[a][b]
        lat: PowersetLattice = self.lat  # type: ignore[assignment]
        out = 0
        for i in lat.atom_bits(a):
            row = self.atom_comp[i]
            for j in lat.atom_bits(b):
                out |= 1 << row[j]
        return out


class Module:
    """Sup-lattice M with a join-preserving right action of a quantale.

    ``act_table[m][q]`` per element pair, or ``atom_act[s][w]`` per
    (module atom, quantale atom) pair with None for an annihilated update.
    """

    def __init__(
        self,
        lat: Lattice,
        over: Quantale,
        act_table: Sequence[Sequence[int]] | None = None,
        atom_act: Sequence[Sequence[int | None]] | None = None,
    ):
        if (act_table is None) == (atom_act is None):
            raise LatticeError("provide exactly one of act_table / atom_act")
        if atom_act is not None and not isinstance(lat, PowersetLattice):
            raise LatticeError("atom_act requires a powerset carrier")
        self.lat = lat
        self.over = over
        self.act_table = (
            tuple(tuple(row) for row in act_table) if act_table is not None else None
        )
        self.atom_act = (
            tuple(tuple(row) for row in atom_act) if atom_act is not None else None
        )

    def act(self, m: int, q: int) -> int:
        if self.act_table is not None:
            return self.act_table[m][q]
        lat: PowersetLattice = self.lat  # type: ignore[assignment]
        qlat: PowersetLattice = self.over.lat  # type: ignore[assignment]
        out = 0
        for s in lat.atom_bits(m):
            row = self.atom_act[s]
            for w in qlat.atom_bits(q):
                r = row[w]
                if r is not None:
                    out |= 1 << r
        return out


@dataclass(frozen=True)
class EpistemicSystem:
    module: Module
    agents: tuple[str, ...]
    app_m: dict[str, LatticeMap]
    app_q: dict[str, LatticeMap]

    @property
    def quantale(self) -> Quantale:
        return self.module.over

    @property
    def mlat(self) -> Lattice:
        return self.module.lat

    @property
    def qlat(self) -> Lattice:
        return self.quantale.lat


# Derived operators


def update(sys: EpistemicSystem, m: int, q: int) -> int:
    return sys.module.act(m, q)


def compose(sys: EpistemicSystem, q1: int, q2: int) -> int:
    return sys.quantale.compose(q1, q2)


def box_m(sys: EpistemicSystem, agent: str, m: int) -> int:
    """Knowledge of agent on propositions: right adjoint of the appearance map."""
    return right_adjoint_value(sys.app_m[agent], m)


def box_q(sys: EpistemicSystem, agent: str, q: int) -> int:
    return right_adjoint_value(sys.app_q[agent], q)


def dyn_box(sys: EpistemicSystem, q: int, m: int) -> int:
    """Weakest precondition [q]m: largest m' with m'.q <= m."""
    mod = sys.module
    mlat = mod.lat
    if isinstance(mlat, PowersetLattice):
        out = 0
        for i in range(mlat.num_atoms):
            if mlat.leq(mod.act(1 << i, q), m):
                out |= 1 << i
        return out
    return mlat.join_all(a for a in mlat.elements() if mlat.leq(mod.act(a, q), m))


def co_residual(sys: EpistemicSystem, m: int, m2: int) -> int:
    """{m}m2: largest action q with m.q <= m2."""
    mod = sys.module
    qlat = sys.qlat
    if isinstance(qlat, PowersetLattice):
        out = 0
        for j in range(qlat.num_atoms):
            if mod.lat.leq(mod.act(m, 1 << j), m2):
                out |= 1 << j
        return out
    return qlat.join_all(q for q in qlat.elements() if mod.lat.leq(mod.act(m, q), m2))


def left_residual(sys: EpistemicSystem, a: int, b: int) -> int:
    """a\\b: largest c with a.c <= b in the quantale."""
    qu = sys.quantale
    qlat = qu.lat
    if isinstance(qlat, PowersetLattice):
        out = 0
        for j in range(qlat.num_atoms):
            if qlat.leq(qu.compose(a, 1 << j), b):
                out |= 1 << j
        return out
    return qlat.join_all(c for c in qlat.elements() if qlat.leq(qu.compose(a, c), b))


def right_residual(sys: EpistemicSystem, b: int, a: int) -> int:
    """b/a: largest c with c.a <= b in the quantale."""
    qu = sys.quantale
    qlat = qu.lat
    if isinstance(qlat, PowersetLattice):
        out = 0
        for j in range(qlat.num_atoms):
            if qlat.leq(qu.compose(1 << j, a), b):
                out |= 1 << j
        return out
    return qlat.join_all(c for c in qlat.elements() if qlat.leq(qu.compose(c, a), b))


def kernel_join(sys: EpistemicSystem, q: int) -> int:
    """Join of Ker(q); the kernel itself is the downset of this element."""
    return dyn_box(sys, q, sys.mlat.bottom)


def kernel(sys: EpistemicSystem, q: int) -> list[int]:
    """Ker(q) = {m | m.q = bot}, enumerated (enumerable carriers only)."""
    mod = sys.module
    bot = mod.lat.bottom
    return [m for m in mod.lat.elements() if mod.act(m, q) == bot]


def is_stable(sys: EpistemicSystem, m: int) -> bool:
    """Whether m.q <= m for every action q (a fact, immune to updates)."""
    mod = sys.module
    qlat = sys.qlat
    if isinstance(qlat, PowersetLattice):
        qs: Iterable[int] = qlat.atoms()
    else:
        qs = qlat.elements()
    return all(mod.lat.leq(mod.act(m, q), m) for q in qs)


def stabilizer(sys: EpistemicSystem) -> list[int]:
    return [m for m in sys.mlat.elements() if is_stable(sys, m)]


def accessibility(sys: EpistemicSystem, agent: str) -> list[tuple[int, int]] | None:
    """Per-agent accessibility relation on atoms: s -> s' iff s' <= f(s).

    Diagnostic for atomistic modules; returns None (unsupported) otherwise.
    """
    mlat = sys.mlat
    from .lattice import is_atomistic

    if not is_atomistic(mlat):
        return None
    f = sys.app_m[agent]
    out = []
    for s in mlat.atoms():
        img = f.apply(s)
        for s2 in mlat.atoms():
            if mlat.leq(s2, img):
                out.append((s, s2))
    return out


# Validation


@dataclass(frozen=True)
class Violation:
    law: str
    witness: tuple
    detail: str = ""


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, law: str, witness: tuple, detail: str = ""):
        self.violations.append(Violation(law, witness, detail))

    def summary(self) -> str:
        if self.ok:
            return "all laws hold"
        return "; ".join(f"{v.law} at {v.witness}" for v in self.violations)


def _core_elements(lat: Lattice) -> list[int]:
    """All elements when the carrier is small; atoms plus the bounds on a
    large powerset carrier (the operations are join-extensions of their
    atom tables, so atom-level laws carry to all elements)."""
    if lat.size <= EXHAUSTIVE_ELEMENTS:
        return list(lat.elements())
    assert isinstance(lat, PowersetLattice)
    return [lat.bottom, lat.top] + lat.atoms()


def _sampled_elements(lat: Lattice, rng: random.Random, count: int) -> list[int]:
    if lat.size <= EXHAUSTIVE_ELEMENTS:
        return []
    assert isinstance(lat, PowersetLattice)
    return [rng.getrandbits(lat.num_atoms) for _ in range(count)]


def validate_system(sys: EpistemicSystem) -> ValidationReport:
    """Check every quantale, module, and appearance law; report violations.

    Tabulated carriers are checked over all elements.  Large powerset
    carriers are checked exhaustively on atoms and bounds, plus a seeded
    sample of joined elements to confirm the join-extension wiring.
    """
    rep = ValidationReport()
    rng = random.Random(20240512)
    mod, qu = sys.module, sys.quantale
    mlat, qlat = mod.lat, qu.lat

    for name, lat in (("M", mlat), ("Q", qlat)):
        if isinstance(lat, TableLattice):
            for msg in lat.order_violations():
                rep.add(f"{name} lattice order", (), msg)
    if rep.violations:
        return rep  # order is broken: nothing else is meaningful

    qs = _core_elements(qlat)
    ms = _core_elements(mlat)
    qx = _sampled_elements(qlat, rng, 12)
    mx = _sampled_elements(mlat, rng, 12)

    for a in qs + qx:
        if qu.compose(qu.unit, a) != a or qu.compose(a, qu.unit) != a:
            rep.add("quantale unit", (a,))
            break

    def _triples(base: list[int], extra: list[int]):
        yield from ((a, b, c) for a in base for b in base for c in base)
        for i in range(len(extra)):
            yield extra[i], extra[(i + 1) % len(extra)], extra[(i + 2) % len(extra)]

    for a, b, c in _triples(qs, qx):
        if qu.compose(qu.compose(a, b), c) != qu.compose(a, qu.compose(b, c)):
            rep.add("quantale associativity", (a, b, c))
            break
    for a, b, c in _triples(qs, qx):
        if qu.compose(a, qlat.join(b, c)) != qlat.join(qu.compose(a, b), qu.compose(a, c)):
            rep.add("quantale left distributivity", (a, b, c))
            break
        if qu.compose(qlat.join(b, c), a) != qlat.join(qu.compose(b, a), qu.compose(c, a)):
            rep.add("quantale right distributivity", (a, b, c))
            break

    for m in ms + mx:
        if mod.act(m, qu.unit) != m:
            rep.add("module unit", (m,))
            break
    for m in ms:
        for q1 in qs:
            for q2 in qs:
                if mod.act(m, qu.compose(q1, q2)) != mod.act(mod.act(m, q1), q2):
                    rep.add("module associativity", (m, q1, q2))
                    break
            else:
                continue
            break
        else:
            continue
        break
    for q in qs + qx:
        bad = next(
            (
                (m1, m2)
                for m1 in ms
                for m2 in ms
                if mod.act(mlat.join(m1, m2), q) != mlat.join(mod.act(m1, q), mod.act(m2, q))
            ),
            None,
        )
        if bad is not None:
            rep.add("module join preservation (left)", (*bad, q))
            break
    for m in ms + mx:
        bad = next(
            (
                (q1, q2)
                for q1 in qs
                for q2 in qs
                if mod.act(m, qlat.join(q1, q2)) != mlat.join(mod.act(m, q1), mod.act(m, q2))
            ),
            None,
        )
        if bad is not None:
            rep.add("module join preservation (right)", (m, *bad))
            break

    for agent in sys.agents:
        fm, fq = sys.app_m[agent], sys.app_q[agent]
        if not is_join_preserving(fm):
            rep.add("appearance join preservation (M)", (agent,))
        if not is_join_preserving(fq):
            rep.add("appearance join preservation (Q)", (agent,))
        if not qlat.leq(qu.unit, fq.apply(qu.unit)):
            rep.add("laxity: unit below its appearance", (agent, qu.unit))
        for q1 in qs + qx:
            for q2 in qs + qx:
                if not qlat.leq(
                    fq.apply(qu.compose(q1, q2)), qu.compose(fq.apply(q1), fq.apply(q2))
                ):
                    rep.add("laxity: composition appearance", (agent, q1, q2))
                    break
            else:
                continue
            break
        for m in ms + mx:
            for q in qs + qx:
                if not mlat.leq(fm.apply(mod.act(m, q)), mod.act(fm.apply(m), fq.apply(q))):
                    rep.add("laxity: update appearance", (agent, m, q))
                    break
            else:
                continue
            break
    return rep


def theorem_conditions(sys: EpistemicSystem) -> ValidationReport:
    """The four structural conditions characterizing systems compiled from
    two-Kripke-structure models:

    1. both carriers are (completely) distributive atomistic Boolean algebras;
    2. an atom updated by an atomic action is bottom or an atom;
    3. atomic actions compose to atomic actions;
    4. composition is non-degenerate: q . q' = bot only when a side is bot.
    """
    rep = ValidationReport()
    mod, qu = sys.module, sys.quantale
    mlat, qlat = mod.lat, qu.lat
    if not is_boolean(mlat):
        rep.add("condition 1: M Boolean atomistic distributive", ("M",))
    if not is_boolean(qlat):
        rep.add("condition 1: Q Boolean atomistic distributive", ("Q",))
    m_atoms = set(mlat.atoms())
    q_atoms = set(qlat.atoms())
    for s in m_atoms:
        for w in q_atoms:
            r = mod.act(s, w)
            if r != mlat.bottom and r not in m_atoms:
                rep.add("condition 2: atom update atomic or bottom", (s, w))
    for w1 in q_atoms:
        for w2 in q_atoms:
            if qu.compose(w1, w2) not in q_atoms:
                rep.add("condition 3: atoms compose to atoms", (w1, w2))
    # Condition 4 at atom level; join preservation carries it to all elements.
    for w1 in q_atoms:
        for w2 in q_atoms:
            if qu.compose(w1, w2) == qlat.bottom:
                rep.add("condition 4: composition non-degenerate", (w1, w2))
    return rep


def find_introspection_counterexample(
    num_atoms: int = 2,
) -> tuple[EpistemicSystem, str, int] | None:
    """Search small powerset systems for a failure of box m <= box box m.

    Appearance maps range over all relation images on ``num_atoms`` states;
    the action structure is the trivial quantale, which keeps every searched
    system a valid epistemic system.
    """
    from itertools import product

    mlat = PowersetLattice(num_atoms)
    qlat = PowersetLattice(1, ["skip"])
    qu = Quantale(qlat, unit=1, atom_comp=[[0]])
    atom_act = [[s] for s in range(num_atoms)]
    mod = Module(mlat, qu, atom_act=atom_act)
    for images in product(range(mlat.size), repeat=num_atoms):
        fm = LatticeMap.from_atom_images(mlat, mlat, list(images))
        sys = EpistemicSystem(
            module=mod,
            agents=("A",),
            app_m={"A": fm},
            app_q={"A": LatticeMap.identity(qlat)},
        )
        if not validate_system(sys).ok:
            continue
        for m in mlat.elements():
            bm = box_m(sys, "A", m)
            if not mlat.leq(bm, box_m(sys, "A", bm)):
                return sys, "A", m
    return None
