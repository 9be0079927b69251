import random

import pytest
from hypothesis import given, settings, strategies as st

import epiq.syntax as sx
from epiq.syntax import (
    Agent,
    AppQ,
    BoxM,
    Comp,
    Fact,
    LRes,
    MBot,
    MVar,
    ParseError,
    QOne,
    QOr,
    QVar,
    Sequent,
    Signature,
    Update,
    parse_m,
    parse_q,
    parse_sequent,
    print_m,
    print_q,
    print_sequent,
)

SIG = Signature.of(
    agents=["A", "B", "C1"],
    qvars=["q", "q0", "q1", "q2", "alpha"],
    mvars=["m", "m1", "s", "s_1", "t"],
    facts=["P", "D1"],
)


def test_parse_sequent_with_agent_context():
    s = parse_sequent("q , @A |-Q fQ[A](q)", SIG)
    assert s == Sequent("Q", (QVar("q"), Agent("A")), AppQ("A", QVar("q")))


def test_empty_m_right_side_is_bottom():
    s = parse_sequent("s, q |-M", SIG)
    assert s.conclusion == MBot()
    assert s.side == "M"


def test_mixed_context_resolution():
    s = parse_sequent("s, alpha, @A |-M boxM[B](#P)", SIG)
    assert s.context == (MVar("s"), QVar("alpha"), Agent("A"))
    assert s.conclusion == BoxM("B", Fact("P"))


def test_precedence_residual_loosest():
    f = parse_q("q1 \\ q2 | q", SIG)
    assert f == LRes(QVar("q1"), QOr(QVar("q2"), QVar("q")))


def test_precedence_comp_tightest_binary():
    f = parse_q("q1 * q2 | q", SIG)
    assert f == QOr(Comp(QVar("q1"), QVar("q2")), QVar("q"))


def test_left_associativity():
    f = parse_q("q * q1 * q2", SIG)
    assert f == Comp(Comp(QVar("q"), QVar("q1")), QVar("q2"))
    g = parse_m("s . q . q1", SIG)
    assert g == Update(Update(MVar("s"), QVar("q")), QVar("q1"))


def test_dyn_box_binds_tight():
    f = parse_m("[q0 * q]boxM[C1](#D1)", SIG)
    assert isinstance(f, sx.DynBox)
    assert f.action == Comp(QVar("q0"), QVar("q"))


def test_update_right_operand_parenthesised():
    f = parse_m("s . (alpha | q)", SIG)
    assert f == Update(MVar("s"), QOr(QVar("alpha"), QVar("q")))


def test_parse_error_positions():
    with pytest.raises(ParseError) as e:
        parse_q("q1 * * q2", SIG)
    assert e.value.pos == 5
    with pytest.raises(ParseError):
        parse_q("nosuch", SIG)
    with pytest.raises(ParseError):
        parse_m("#NoFact", SIG)
    with pytest.raises(ParseError):
        parse_sequent("q |-Q fQ[Z](q)", SIG)


def test_one_is_a_q_item_in_m_contexts():
    s = parse_sequent("s, 1 |-M s", SIG)
    assert s.context[1] == QOne()


# Random round-trip: seeded generators, no signature restriction needed
_AGENTS = ["A", "B", "C1"]
_QVARS = ["q", "q0", "q1", "q2", "alpha"]
_MVARS = ["m", "m1", "s", "s_1", "t"]
_FACTS = ["P", "D1"]


def random_q(rng: random.Random, depth: int, agents=_AGENTS, qvars=_QVARS) -> sx.QFormula:
    if depth == 0:
        return rng.choice(
            [sx.QTop(), sx.QBot(), QOne(), QVar(rng.choice(qvars))]
        )
    kind = rng.randrange(8)
    sub = lambda: random_q(rng, depth - 1, agents, qvars)
    if kind == 0:
        return Comp(sub(), sub())
    if kind == 1:
        return LRes(sub(), sub())
    if kind == 2:
        return sx.RRes(sub(), sub())
    if kind == 3:
        return QOr(sub(), sub())
    if kind == 4:
        return sx.QAnd(sub(), sub())
    if kind == 5:
        return AppQ(rng.choice(agents), sub())
    if kind == 6:
        return sx.BoxQ(rng.choice(agents), sub())
    return random_q(rng, 0, agents, qvars)


def random_m(
    rng: random.Random, depth: int, agents=_AGENTS, qvars=_QVARS, mvars=_MVARS, facts=_FACTS
) -> sx.MFormula:
    if depth == 0:
        return rng.choice(
            [sx.MTop(), MBot(), Fact(rng.choice(facts)), MVar(rng.choice(mvars))]
        )
    kind = rng.randrange(8)
    sub = lambda: random_m(rng, depth - 1, agents, qvars, mvars, facts)
    if kind == 0:
        return sx.MAnd(sub(), sub())
    if kind == 1:
        return sx.MOr(sub(), sub())
    if kind == 2:
        return sx.DynBox(random_q(rng, depth - 1, agents, qvars), sub())
    if kind == 3:
        return Update(sub(), random_q(rng, depth - 1, agents, qvars))
    if kind == 4:
        return sx.AppM(rng.choice(agents), sub())
    if kind == 5:
        return BoxM(rng.choice(agents), sub())
    return random_m(rng, 0, agents, qvars, mvars, facts)


def test_round_trip_1000_random_formulas():
    rng = random.Random(42)
    for i in range(500):
        f = random_q(rng, rng.randrange(7))
        assert parse_q(print_q(f), SIG) == f, print_q(f)
    for i in range(500):
        f = random_m(rng, rng.randrange(7))
        assert parse_m(print_m(f), SIG) == f, print_m(f)


def test_round_trip_random_sequents():
    rng = random.Random(7)
    for _ in range(300):
        side = rng.choice(["Q", "M"])
        items = []
        for _ in range(rng.randrange(4)):
            kind = rng.randrange(3)
            if kind == 0:
                items.append(Agent(rng.choice(_AGENTS)))
            elif side == "Q" or kind == 1:
                # var-bearing action formulas resolve unambiguously
                items.append(Comp(QVar(rng.choice(_QVARS)), random_q(rng, 1)))
            else:
                items.append(random_m(rng, 2))
        concl = random_q(rng, 3) if side == "Q" else random_m(rng, 3)
        s = Sequent(side, tuple(items), concl)
        assert parse_sequent(print_sequent(s), SIG) == s, print_sequent(s)


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 2 ** 62))
def test_round_trip_hypothesis(seed):
    rng = random.Random(seed)
    f = random_m(rng, 4)
    assert parse_m(print_m(f), SIG) == f


def test_golden_certificate_sequents_round_trip():
    import json

    for path in ("golden/action_knowledge.proof.json", "golden/mitm.proof.json"):
        doc = json.load(open(path))
        stack = [doc]
        while stack:
            node = stack.pop()
            s = parse_sequent(node["sequent"])
            assert print_sequent(s) == node["sequent"]
            stack.extend(node["premises"])
