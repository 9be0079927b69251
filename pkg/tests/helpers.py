"""Shared fixtures: small hand-built systems and brute-force oracles.

The oracles here recompute derived operators by literal definition
unfolding over *all* elements, independent of any shortcuts the library
takes, so the two routes check each other.
"""

from __future__ import annotations

import itertools
import random

from epiq.algebra import EpistemicSystem, Module, Quantale
from epiq.lattice import LatticeMap, PowersetLattice, TableLattice, chain_lattice


def subset_join_oracle(lat, subset):
    """Least upper bound by scanning all elements (independent of join)."""
    ubs = [c for c in lat.elements() if all(lat.leq(x, c) for x in subset)]
    least = [c for c in ubs if all(lat.leq(c, d) for d in ubs)]
    assert len(least) == 1
    return least[0]


def join_preserving_oracle(f):
    """Exhaustive subset enumeration, the definition verbatim."""
    elems = list(f.source.elements())
    for r in range(len(elems) + 1):
        for sub in itertools.combinations(elems, r):
            lhs = f.apply(subset_join_oracle(f.source, sub))
            rhs = subset_join_oracle(f.target, [f.apply(x) for x in sub])
            if lhs != rhs:
                return False
    return True


def right_adjoint_oracle(f, b):
    """Join of {a | f(a) <= b} over all elements."""
    picks = [a for a in f.source.elements() if f.target.leq(f.apply(a), b)]
    return subset_join_oracle(f.source, picks)


def dyn_box_oracle(sys, q, m):
    mod = sys.module
    picks = [a for a in mod.lat.elements() if mod.lat.leq(mod.act(a, q), m)]
    return subset_join_oracle(mod.lat, picks)


def co_residual_oracle(sys, m, m2):
    mod = sys.module
    picks = [q for q in sys.qlat.elements() if mod.lat.leq(mod.act(m, q), m2)]
    return subset_join_oracle(sys.qlat, picks)


def left_residual_oracle(sys, a, b):
    qu = sys.quantale
    picks = [c for c in qu.lat.elements() if qu.lat.leq(qu.compose(a, c), b)]
    return subset_join_oracle(qu.lat, picks)


def right_residual_oracle(sys, b, a):
    qu = sys.quantale
    picks = [c for c in qu.lat.elements() if qu.lat.leq(qu.compose(c, a), b)]
    return subset_join_oracle(qu.lat, picks)


def chain_system() -> EpistemicSystem:
    """Non-Boolean distributive fixture: a four-chain module acted on by
    the sub-quantale of its join-preserving endomaps generated by a shift.

    Carrier M: bot < x < y < top.  Generator g: x -> bot, y -> x, top ->
    top.  Q = {zero, g.g, g, id} is again a four-chain under the pointwise
    order, with composition as multiplication.  The appearance pair
    (f_M = g, f_Q = id) satisfies the laxity laws because g commutes
    laxly with every element of Q.
    """
    mlat = chain_lattice(4)
    # endomaps as tables on the chain: index 0..3 = bot..top
    maps = {
        "zero": (0, 0, 0, 0),
        "gg": (0, 0, 0, 3),
        "g": (0, 0, 1, 3),
        "id": (0, 1, 2, 3),
    }
    order = ["zero", "gg", "g", "id"]  # pointwise chain
    qlat = TableLattice(order, [(i, j) for i in range(4) for j in range(i, 4)])

    def comp(a, b):  # act with a then b, as tables
        ta, tb = maps[order[a]], maps[order[b]]
        table = tuple(tb[ta[i]] for i in range(4))
        return order.index({v: k for k, v in maps.items()}[table])

    mult = [[comp(a, b) for b in range(4)] for a in range(4)]
    act = [[maps[order[q]][m] for q in range(4)] for m in range(4)]
    quant = Quantale(qlat, unit=3, mult_table=mult)
    module = Module(mlat, quant, act_table=act)
    g_map = LatticeMap.from_table(mlat, mlat, maps["g"])
    return EpistemicSystem(
        module=module,
        agents=("A",),
        app_m={"A": g_map},
        app_q={"A": LatticeMap.identity(qlat)},
    )


def relation_image_map(lat: PowersetLattice, relation) -> LatticeMap:
    """The join-preserving map a relation induces on a powerset."""
    images = []
    for i in range(lat.num_atoms):
        img = 0
        for (a, b) in relation:
            if a == i:
                img |= 1 << b
        images.append(img)
    return LatticeMap.from_atom_images(lat, lat, images)


def two_state_system(relation_a) -> EpistemicSystem:
    """Powerset module on two states with a trivial one-action quantale and
    a relation-image appearance; always a valid epistemic system."""
    mlat = PowersetLattice(2, ["u", "v"])
    qlat = PowersetLattice(1, ["skip"])
    quant = Quantale(qlat, unit=1, atom_comp=[[0]])
    module = Module(mlat, quant, atom_act=[[0], [1]])
    return EpistemicSystem(
        module=module,
        agents=("A",),
        app_m={"A": relation_image_map(mlat, relation_a)},
        app_q={"A": LatticeMap.identity(qlat)},
    )
