import json

import pytest

import epiq.syntax as sx
from epiq.kripke import mitm_scenario, muddy_scenario
from epiq.rules import (
    ALL_RULES,
    AssumptionBase,
    ProofTree,
    Vocabulary,
    axioms_of,
    check_proof,
    check_step,
)
from epiq.serialize import base_from_json, load_json, proof_from_json
from epiq.syntax import Agent, QVar, Sequent, Signature, parse_sequent, print_sequent

SIG = Signature.of(agents=["A", "B"], qvars=["q", "q1", "q2"], mvars=["m", "m1", "m2"], facts=["p"])


def S(text: str) -> Sequent:
    return parse_sequent(text, SIG)


def test_identity_step_ok():
    assert check_step("Id", [], S("q |-Q q")) is None
    assert check_step("Id", [], S("m |-M m")) is None
    assert check_step("Id", [], S("q, q1 |-Q q")) is not None


def test_appearance_right_step():
    assert check_step("AppQ_R", [S("q1 |-Q q")], S("q1, @A |-Q fQ[A](q)")) is None
    assert check_step("AppQ_R", [S("q1 |-Q q")], S("q1, @B |-Q fQ[A](q)")) is not None


def test_seq_right_requires_shared_agent_suffix():
    ok = check_step(
        "SeqR",
        [S("q1, @A |-Q q1"), S("q2, @A |-Q q2")],
        S("q1, q2, @A |-Q q1 * q2"),
    )
    assert ok is None
    bad = check_step(
        "SeqR",
        [S("q1, @A |-Q q1"), S("q2, @B |-Q q2")],
        S("q1, q2, @A |-Q q1 * q2"),
    )
    assert bad is not None


def test_agent_rule_shape():
    assert check_step("Agent", [S("@A |-Q q")], S("1 |-Q q")) is None
    assert check_step("Agent", [S("@A |-Q q")], S("q |-Q q")) is not None


def test_cut_concatenates_contexts():
    assert (
        check_step("MCut", [S("m1 |-M m2"), S("m2, q |-M m")], S("m1, q |-M m")) is None
    )
    assert (
        check_step("MCut", [S("m1 |-M m2"), S("m1, q |-M m")], S("m1, q |-M m")) is not None
    )


def test_structural_rules_propositions_only():
    # exchange of a proposition with an action is not an instance
    assert check_step("Exch", [S("m1, m2 |-M m")], S("m2, m1 |-M m")) is None
    assert check_step("Exch", [S("q, m1 |-M m")], S("m1, q |-M m")) is not None
    assert check_step("WeakL", [S("m1 |-M m")], S("m1, m2 |-M m")) is None
    assert check_step("WeakL", [S("m1 |-M m")], S("m1, q |-M m")) is not None


def test_fact_rule_requires_fact_conclusion():
    assert check_step("Fact", [S("m |-M #p")], S("m, q |-M #p")) is None
    assert check_step("Fact", [S("m |-M m1")], S("m, q |-M m1")) is not None


def test_upd_right_splits():
    ok = check_step(
        "UpdR",
        [S("m, @A |-M m1"), S("q, @A |-Q q1")],
        S("m, q, @A |-M m1 . q1"),
    )
    assert ok is None
    bad = check_step(
        "UpdR",
        [S("m, @A |-M m1"), S("q, @B |-Q q1")],
        S("m, q, @A |-M m1 . q1"),
    )
    assert bad is not None


def test_dyn_rules():
    assert check_step("DyR", [S("m, q |-M m1")], S("m |-M [q]m1")) is None
    assert (
        check_step("DyL", [S("m1 |-M m"), S("q1 |-Q q")], S("[q]m1, q1 |-M m")) is None
    )
    # context after the dynamic box must be action-only
    assert (
        check_step("DyL", [S("m1 |-M m"), S("q1 |-Q q")], S("[q]m1, m2 |-M m")) is not None
    )


@pytest.fixture(scope="module")
def golden_action_knowledge():
    base = base_from_json(load_json("golden/empty.base.json"))
    tree = proof_from_json(load_json("golden/action_knowledge.proof.json"), base.signature)
    return tree, base


@pytest.fixture(scope="module")
def golden_mitm():
    base = base_from_json(load_json("golden/mitm.base.json"))
    tree = proof_from_json(load_json("golden/mitm.proof.json"), base.signature)
    return tree, base


def test_action_knowledge_golden_passes(golden_action_knowledge):
    tree, base = golden_action_knowledge
    assert check_proof(tree, base).ok


def test_mitm_golden_passes(golden_mitm):
    tree, base = golden_mitm
    assert check_proof(tree, base).ok
    assert print_sequent(tree.conclusion) == "s . (alpha | beta) |-M boxM[A](boxM[B](#P))"


def _nodes(tree: ProofTree):
    stack = [(tree, ())]
    while stack:
        node, path = stack.pop()
        yield node, path
        for i, p in enumerate(node.premises):
            stack.append((p, path + (i,)))


def _mutate(tree: ProofTree, path, repl: ProofTree) -> ProofTree:
    if not path:
        return repl
    i = path[0]
    premises = list(tree.premises)
    premises[i] = _mutate(premises[i], path[1:], repl)
    return ProofTree(tree.conclusion, tree.rule, tuple(premises))


@pytest.mark.parametrize("which", ["action_knowledge", "mitm"])
def test_every_single_node_mutation_is_rejected(which, golden_action_knowledge, golden_mitm):
    tree, base = golden_action_knowledge if which == "action_knowledge" else golden_mitm
    wrong_rules = {"Id": "TopR", "Assumption": "Id"}
    count = 0
    for node, path in _nodes(tree):
        bad_rule = wrong_rules.get(node.rule, "Id" if node.rule != "Id" else "TopR")
        mutant = _mutate(tree, path, ProofTree(node.conclusion, bad_rule, node.premises))
        result = check_proof(mutant, base)
        assert not result.ok, f"mutant at {path} not rejected"
        assert result.path is not None
        count += 1
    assert count == tree.size()


def test_mutated_axiom_is_located(golden_mitm):
    tree, base = golden_mitm
    target = parse_sequent("s, @B |-M s | t", base.signature)
    wrong = parse_sequent("s, @B |-M s", base.signature)
    for node, path in _nodes(tree):
        if node.conclusion == target:
            mutant = _mutate(tree, path, ProofTree(wrong, "Assumption", ()))
            result = check_proof(mutant, base)
            assert not result.ok
            assert result.path[: len(path) - 1] == path[: len(path) - 1]
            return
    pytest.fail("axiom node not found")


def test_unknown_rule_rejected():
    tree = ProofTree(S("q |-Q q"), "NoSuchRule", ())
    res = check_proof(tree)
    assert not res.ok and "unknown rule" in res.message


def test_box_rules_valid_in_both_directions():
    """The right box rules and the dynamic right rule are semantically
    invertible even though only one direction is a rule."""
    import random

    from epiq.semantics import Environment, holds
    from epiq.algebra import stabilizer
    from helpers import chain_system
    from test_syntax import random_m, random_q

    sys = chain_system()
    stab = stabilizer(sys)
    env = Environment(
        system=sys,
        qvals={"q": 2, "q1": 1, "q2": 3, "q0": 0, "alpha": 2},
        mvals={"m": 2, "m1": 1, "s": 3, "s_1": 0, "t": 1},
        factvals={"P": max(stab), "D1": min(stab)},
    )
    rng = random.Random(23)
    for _ in range(150):
        items = tuple(
            random_m(rng, 1, agents=["A"]) if rng.randrange(2) else random_q(rng, 1, agents=["A"])
            for _ in range(rng.randrange(3))
        )
        m = random_m(rng, 2, agents=["A"])
        q = random_q(rng, 2, agents=["A"])
        up = Sequent("M", items + (Agent("A"),), m)
        down = Sequent("M", items, sx.BoxM("A", m))
        assert holds(env, up) == holds(env, down)
        upq = Sequent("Q", items_q(items) + (Agent("A"),), q)
        downq = Sequent("Q", items_q(items), sx.BoxQ("A", q))
        assert holds(env, upq) == holds(env, downq)
        dy_up = Sequent("M", items + (q,), m)
        dy_down = Sequent("M", items, sx.DynBox(q, m))
        assert holds(env, dy_up) == holds(env, dy_down)


def items_q(items):
    return tuple(it for it in items if isinstance(it, sx.Q_TYPES))


@pytest.fixture(scope="module")
def mitm():
    return mitm_scenario()


def test_axioms_of_mitm_contents(mitm):
    printed = {print_sequent(s) for _, s in mitm.base.axioms}
    assert "alpha, @A |-Q alphap" in printed
    assert "s, @B |-M s | t" in printed
    assert "#Pbar, alphap |-M bot" in printed
    assert "s |-M #P" in printed
    assert "t |-M #Pbar" in printed
    # the junk message has an empty kernel: no kernel axiom for it
    assert not any("gamma |-M bot" in p for p in printed)
    schemas = {schema for schema, _ in mitm.base.axioms}
    assert schemas == {"appearance_m", "appearance_q", "kernel", "fact"}


def test_axioms_of_muddy_contents():
    sc = muddy_scenario(2, 1)
    printed = {print_sequent(s) for _, s in sc.base.axioms}
    assert "s_1, @C1 |-M s_empty | s_1" in printed
    assert "#D_empty, q0 |-M bot" in printed
    assert any(p.startswith("boxM[C1](#D1) | boxM[C2](#D2), q |-M bot") for p in printed)


def test_axioms_of_empty_vocabulary(mitm):
    base = axioms_of(mitm.env, Vocabulary())
    assert base.axioms == ()


def test_axioms_hold_semantically(mitm):
    from epiq.semantics import holds

    for schema, seq in mitm.base.axioms:
        assert holds(mitm.env, seq), print_sequent(seq)
