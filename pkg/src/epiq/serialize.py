"""JSON interchange for lattices, systems, bindings, axiom bases, proof
certificates, and Kripke-style model files.

Carrier conventions: a lattice block is either an explicit order,

    {"elements": ["bot", "x", "top"], "leq": [[0,0],[0,1],...]}

or an intensional powerset, ``{"powerset_of": 3, "atom_labels": [...]}``.
For explicit carriers the ``mult``/``act``/appearance tables are indexed by
elements; for powerset carriers they are indexed by atoms (with ``null``
for an annihilated update) and an element value is a list of atom indices.
"""

from __future__ import annotations

import json
from typing import Any

from . import syntax as sx
from .algebra import EpistemicSystem, Module, Quantale
from .kripke import ActionModel, KripkeStateModel, Precondition
from .lattice import Lattice, LatticeMap, PowersetLattice, TableLattice
from .rules import AssumptionBase, ProofTree
from .semantics import Environment


class SerializeError(Exception):
    pass


def _expect(cond: bool, msg: str):
    if not cond:
        raise SerializeError(msg)


# Lattices


def lattice_to_json(lat: Lattice) -> dict:
    if isinstance(lat, PowersetLattice):
        return {"powerset_of": lat.num_atoms, "atom_labels": lat.atom_labels}
    assert isinstance(lat, TableLattice)
    pairs = [[i, j] for i in range(lat.size) for j in range(lat.size) if lat.leq(i, j)]
    return {"elements": lat.labels, "leq": pairs}


def lattice_from_json(doc: Any) -> Lattice:
    _expect(isinstance(doc, dict), "lattice block must be an object")
    if "powerset_of" in doc:
        n = doc["powerset_of"]
        _expect(isinstance(n, int) and n >= 0, "powerset_of must be a non-negative int")
        return PowersetLattice(n, doc.get("atom_labels"))
    _expect("elements" in doc and "leq" in doc, "lattice block needs elements and leq")
    labels = doc["elements"]
    pairs = [tuple(p) for p in doc["leq"]]
    return TableLattice(labels, pairs)


def _element_to_json(lat: Lattice, x: int) -> Any:
    if isinstance(lat, PowersetLattice):
        return sorted(lat.atom_bits(x))
    return x


def _element_from_json(lat: Lattice, v: Any) -> int:
    if isinstance(lat, PowersetLattice):
        _expect(isinstance(v, list), "powerset element must be a list of atom indices")
        out = 0
        for i in v:
            _expect(isinstance(i, int) and 0 <= i < lat.num_atoms, f"atom index {i} out of range")
            out |= 1 << i
        return out
    _expect(isinstance(v, int) and 0 <= v < lat.size, f"element index {v} out of range")
    return v


# Systems


def system_to_json(sys: EpistemicSystem) -> dict:
    mod, qu = sys.module, sys.quantale
    mlat, qlat = mod.lat, qu.lat
    doc: dict = {
        "agents": list(sys.agents),
        "m_lattice": lattice_to_json(mlat),
        "q_lattice": lattice_to_json(qlat),
        "unit": _element_to_json(qlat, qu.unit),
    }
    if qu.atom_comp is not None:
        doc["mult_atoms"] = [
            [i, j, qu.atom_comp[i][j]]
            for i in range(len(qu.atom_comp))
            for j in range(len(qu.atom_comp[i]))
        ]
    else:
        doc["mult"] = [
            [a, b, qu.mult_table[a][b]] for a in range(qlat.size) for b in range(qlat.size)
        ]
    if mod.atom_act is not None:
        doc["act_atoms"] = [
            [s, w, mod.atom_act[s][w]]
            for s in range(len(mod.atom_act))
            for w in range(len(mod.atom_act[s]))
        ]
    else:
        doc["act"] = [
            [m, q, mod.act_table[m][q]] for m in range(mlat.size) for q in range(qlat.size)
        ]

    def map_block(f: LatticeMap) -> dict:
        if f.atom_images is not None:
            return {"atoms": [_element_to_json(f.target, v) for v in f.atom_images]}
        return {"table": [_element_to_json(f.target, v) for v in f.table]}

    doc["appM"] = {a: map_block(sys.app_m[a]) for a in sys.agents}
    doc["appQ"] = {a: map_block(sys.app_q[a]) for a in sys.agents}
    return doc


def system_from_json(doc: Any) -> EpistemicSystem:
    _expect(isinstance(doc, dict), "system file must be an object")
    for key in ("agents", "m_lattice", "q_lattice", "unit"):
        _expect(key in doc, f"system file needs {key!r}")
    mlat = lattice_from_json(doc["m_lattice"])
    qlat = lattice_from_json(doc["q_lattice"])
    unit = _element_from_json(qlat, doc["unit"])

    if "mult_atoms" in doc:
        _expect(isinstance(qlat, PowersetLattice), "mult_atoms needs a powerset quantale")
        n = qlat.num_atoms
        comp: list[list[int | None]] = [[None] * n for _ in range(n)]
        for i, j, k in doc["mult_atoms"]:
            _expect(0 <= i < n and 0 <= j < n and 0 <= k < n, "mult_atoms index out of range")
            comp[i][j] = k
        _expect(all(all(v is not None for v in row) for row in comp), "mult_atoms not total")
        quant = Quantale(qlat, unit, atom_comp=comp)
    else:
        _expect("mult" in doc, "system file needs mult or mult_atoms")
        table = [[0] * qlat.size for _ in range(qlat.size)]
        seen = set()
        for a, b, c in doc["mult"]:
            table[a][b] = _element_from_json(qlat, c) if not isinstance(c, int) else c
            _expect(0 <= table[a][b] < qlat.size, "mult value out of range")
            seen.add((a, b))
        _expect(len(seen) == qlat.size * qlat.size, "mult table not total")
        quant = Quantale(qlat, unit, mult_table=table)

    if "act_atoms" in doc:
        _expect(isinstance(mlat, PowersetLattice), "act_atoms needs a powerset module")
        na, nq = mlat.num_atoms, qlat.num_atoms
        act: list[list[int | None]] = [[None] * nq for _ in range(na)]
        filled = set()
        for s, w, r in doc["act_atoms"]:
            _expect(0 <= s < na and 0 <= w < nq, "act_atoms index out of range")
            _expect(r is None or (0 <= r < na), "act_atoms result out of range")
            act[s][w] = r
            filled.add((s, w))
        _expect(len(filled) == na * nq, "act_atoms not total")
        module = Module(mlat, quant, atom_act=act)
    else:
        _expect("act" in doc, "system file needs act or act_atoms")
        table = [[0] * qlat.size for _ in range(mlat.size)]
        seen = set()
        for m, q, r in doc["act"]:
            table[m][q] = r
            _expect(0 <= r < mlat.size, "act value out of range")
            seen.add((m, q))
        _expect(len(seen) == mlat.size * qlat.size, "act table not total")
        module = Module(mlat, quant, act_table=table)

    agents = tuple(doc["agents"])

    def map_from(block: Any, lat: Lattice) -> LatticeMap:
        _expect(isinstance(block, dict), "appearance block must be an object")
        if "atoms" in block:
            _expect(isinstance(lat, PowersetLattice), "atom map needs a powerset carrier")
            images = [_element_from_json(lat, v) for v in block["atoms"]]
            return LatticeMap.from_atom_images(lat, lat, images)
        _expect("table" in block, "appearance block needs table or atoms")
        return LatticeMap.from_table(lat, lat, [_element_from_json(lat, v) for v in block["table"]])

    app_m = {a: map_from(doc.get("appM", {}).get(a), mlat) for a in agents}
    app_q = {a: map_from(doc.get("appQ", {}).get(a), qlat) for a in agents}
    return EpistemicSystem(module=module, agents=agents, app_m=app_m, app_q=app_q)


# Bindings (environments)


def bindings_to_json(env: Environment) -> dict:
    sys = env.system
    return {
        "signature": signature_to_json(env.signature),
        "qvals": {k: _element_to_json(sys.qlat, v) for k, v in sorted(env.qvals.items())},
        "mvals": {k: _element_to_json(sys.mlat, v) for k, v in sorted(env.mvals.items())},
        "factvals": {k: _element_to_json(sys.mlat, v) for k, v in sorted(env.factvals.items())},
    }


def bindings_from_json(doc: Any, sys: EpistemicSystem) -> Environment:
    _expect(isinstance(doc, dict), "bindings file must be an object")
    return Environment(
        system=sys,
        qvals={k: _element_from_json(sys.qlat, v) for k, v in doc.get("qvals", {}).items()},
        mvals={k: _element_from_json(sys.mlat, v) for k, v in doc.get("mvals", {}).items()},
        factvals={k: _element_from_json(sys.mlat, v) for k, v in doc.get("factvals", {}).items()},
    )


# Signatures and axiom bases


def signature_to_json(sig: sx.Signature) -> dict:
    return {
        "agents": sorted(sig.agents),
        "qvars": sorted(sig.qvars),
        "mvars": sorted(sig.mvars),
        "facts": sorted(sig.facts),
    }


def signature_from_json(doc: Any) -> sx.Signature:
    _expect(isinstance(doc, dict), "signature must be an object")
    return sx.Signature.of(
        agents=doc.get("agents", ()),
        qvars=doc.get("qvars", ()),
        mvars=doc.get("mvars", ()),
        facts=doc.get("facts", ()),
    )


def base_to_json(base: AssumptionBase) -> dict:
    return {
        "signature": signature_to_json(base.signature),
        "axioms": [
            {"schema": schema, "sequent": sx.print_sequent(seq)} for schema, seq in base.axioms
        ],
    }


def base_from_json(doc: Any) -> AssumptionBase:
    _expect(isinstance(doc, dict), "base file must be an object")
    sig = signature_from_json(doc.get("signature", {}))
    axioms = []
    for entry in doc.get("axioms", ()):
        _expect(isinstance(entry, dict) and "sequent" in entry, "axiom entry needs a sequent")
        try:
            seq = sx.parse_sequent(entry["sequent"], sig)
        except sx.ParseError as e:
            raise SerializeError(f"bad axiom {entry['sequent']!r}: {e}") from None
        axioms.append((entry.get("schema", "axiom"), seq))
    return AssumptionBase(tuple(axioms), sig)


# Proof certificates


def proof_to_json(tree: ProofTree) -> dict:
    return {
        "sequent": sx.print_sequent(tree.conclusion),
        "rule": tree.rule,
        "premises": [proof_to_json(p) for p in tree.premises],
    }


def proof_from_json(doc: Any, sig: sx.Signature | None = None) -> ProofTree:
    _expect(isinstance(doc, dict), "proof node must be an object")
    for key in ("sequent", "rule"):
        _expect(key in doc, f"proof node needs {key!r}")
    try:
        seq = sx.parse_sequent(doc["sequent"], sig)
    except sx.ParseError as e:
        raise SerializeError(f"bad sequent {doc['sequent']!r}: {e}") from None
    premises = tuple(proof_from_json(p, sig) for p in doc.get("premises", ()))
    return ProofTree(seq, doc["rule"], premises)


# Kripke model files


def state_model_to_json(sm: KripkeStateModel) -> dict:
    return {
        "states": list(sm.states),
        "access": {a: sorted(map(list, rel)) for a, rel in sorted(sm.access.items())},
        "valuation": {p: sorted(ss) for p, ss in sorted(sm.valuation.items())},
    }


def state_model_from_json(doc: Any) -> KripkeStateModel:
    _expect(isinstance(doc, dict), "state model must be an object")
    for key in ("states", "access", "valuation"):
        _expect(key in doc, f"state model needs {key!r}")
    states = tuple(doc["states"])
    known = set(states)
    access = {}
    for a, rel in doc["access"].items():
        pairs = set()
        for pair in rel:
            _expect(len(pair) == 2 and pair[0] in known and pair[1] in known,
                    f"bad access pair {pair} for agent {a}")
            pairs.add((pair[0], pair[1]))
        access[a] = frozenset(pairs)
    valuation = {}
    for p, ss in doc["valuation"].items():
        _expect(all(s in known for s in ss), f"valuation of {p!r} mentions unknown states")
        valuation[p] = frozenset(ss)
    return KripkeStateModel(states, access, valuation)


def action_model_to_json(am: ActionModel) -> dict:
    pre = {}
    for act, p in sorted(am.pre.items()):
        if p.states is not None:
            pre[act] = sorted(p.states)
        else:
            pre[act] = {"kernel_formula": sx.print_m(p.kernel_formula)}
    return {
        "actions": list(am.actions),
        "access": {a: sorted(map(list, rel)) for a, rel in sorted(am.access.items())},
        "pre": pre,
    }


def action_model_from_json(doc: Any, sm: KripkeStateModel) -> ActionModel:
    _expect(isinstance(doc, dict), "action model must be an object")
    for key in ("actions", "access", "pre"):
        _expect(key in doc, f"action model needs {key!r}")
    actions = tuple(doc["actions"])
    known = set(actions)
    access = {}
    for a, rel in doc["access"].items():
        pairs = set()
        for pair in rel:
            _expect(len(pair) == 2 and pair[0] in known and pair[1] in known,
                    f"bad action access pair {pair} for agent {a}")
            pairs.add((pair[0], pair[1]))
        access[a] = frozenset(pairs)
    pre = {}
    sig = sx.Signature.of(agents=sm.agents(), facts=sm.valuation.keys())
    for act in actions:
        _expect(act in doc["pre"], f"no precondition for action {act!r}")
        spec = doc["pre"][act]
        if isinstance(spec, list):
            _expect(all(s in sm.states for s in spec), f"pre of {act!r} mentions unknown states")
            pre[act] = Precondition(states=frozenset(spec))
        else:
            _expect(isinstance(spec, dict) and "kernel_formula" in spec,
                    f"pre of {act!r} must be a state list or a kernel formula")
            try:
                f = sx.parse_m(spec["kernel_formula"], sig)
            except sx.ParseError as e:
                raise SerializeError(f"bad kernel formula for {act!r}: {e}") from None
            pre[act] = Precondition(kernel_formula=f)
    return ActionModel(actions, access, pre)


def load_json(path: str) -> Any:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise SerializeError(f"cannot read {path}: {e}") from None


def dump_json(doc: Any, path: str, pretty: bool = True):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2 if pretty else None, sort_keys=True)
        fh.write("\n")
