import pytest

from epiq.algebra import (
    EpistemicSystem,
    Module,
    Quantale,
    accessibility,
    box_m,
    box_q,
    co_residual,
    dyn_box,
    find_introspection_counterexample,
    is_stable,
    kernel,
    kernel_join,
    left_residual,
    right_residual,
    stabilizer,
    theorem_conditions,
    update,
    validate_system,
)
from epiq.lattice import LatticeMap, PowersetLattice, chain_lattice
from helpers import (
    chain_system,
    co_residual_oracle,
    dyn_box_oracle,
    left_residual_oracle,
    right_residual_oracle,
    two_state_system,
)


@pytest.fixture(scope="module")
def chain():
    return chain_system()


def test_chain_fixture_valid(chain):
    report = validate_system(chain)
    assert report.ok, report.summary()


def test_update_unit_and_bottom(chain):
    unit = chain.quantale.unit
    for m in chain.mlat.elements():
        assert update(chain, m, unit) == m
    for q in chain.qlat.elements():
        assert update(chain, chain.mlat.bottom, q) == chain.mlat.bottom


def test_adjunction_biconditionals_exhaustive(chain):
    mlat, qlat = chain.mlat, chain.qlat
    for q in qlat.elements():
        for m in mlat.elements():
            box = dyn_box(chain, q, m)
            assert box == dyn_box_oracle(chain, q, m)
            for m2 in mlat.elements():
                assert mlat.leq(update(chain, m2, q), m) == mlat.leq(m2, box)
    for m in mlat.elements():
        for m2 in mlat.elements():
            co = co_residual(chain, m, m2)
            assert co == co_residual_oracle(chain, m, m2)
            for q in qlat.elements():
                assert mlat.leq(update(chain, m, q), m2) == qlat.leq(q, co)
    for a in qlat.elements():
        for b in qlat.elements():
            lr = left_residual(chain, a, b)
            rr = right_residual(chain, b, a)
            assert lr == left_residual_oracle(chain, a, b)
            assert rr == right_residual_oracle(chain, b, a)
            for c in qlat.elements():
                assert qlat.leq(chain.quantale.compose(a, c), b) == qlat.leq(c, lr)
                assert qlat.leq(chain.quantale.compose(c, a), b) == qlat.leq(c, rr)


def test_residual_units(chain):
    unit = chain.quantale.unit
    top = chain.qlat.top
    for b in chain.qlat.elements():
        assert left_residual(chain, unit, b) == b
        assert right_residual(chain, b, unit) == b
        assert left_residual(chain, b, top) == top
    assert co_residual(chain, chain.mlat.bottom, chain.mlat.bottom) == top
    assert co_residual(chain, chain.mlat.top, chain.mlat.top) == top


def test_dyn_box_trivials(chain):
    unit = chain.quantale.unit
    for m in chain.mlat.elements():
        assert dyn_box(chain, unit, m) == m
    for q in chain.qlat.elements():
        assert dyn_box(chain, q, chain.mlat.top) == chain.mlat.top
        assert dyn_box(chain, q, chain.mlat.bottom) == kernel_join(chain, q)


def test_kernel_is_downset_of_its_join(chain):
    for q in chain.qlat.elements():
        ker = kernel(chain, q)
        assert sorted(ker) == sorted(chain.mlat.downset(kernel_join(chain, q)))
    assert kernel(chain, chain.quantale.unit) == [chain.mlat.bottom]


def test_stabilizer_and_facts(chain):
    stab = stabilizer(chain)
    assert chain.mlat.bottom in stab and chain.mlat.top in stab
    for m in stab:
        assert is_stable(chain, m)


def test_box_preserves_top_and_meets(chain):
    mlat = chain.mlat
    assert box_m(chain, "A", mlat.top) == mlat.top
    for a in mlat.elements():
        for b in mlat.elements():
            assert box_m(chain, "A", mlat.meet(a, b)) == mlat.meet(
                box_m(chain, "A", a), box_m(chain, "A", b)
            )
            if mlat.leq(a, b):
                assert mlat.leq(box_m(chain, "A", a), box_m(chain, "A", b))
    qlat = chain.qlat
    assert box_q(chain, "A", qlat.top) == qlat.top


def test_box_adjoint_to_appearance(chain):
    mlat = chain.mlat
    f = chain.app_m["A"]
    for a in mlat.elements():
        for b in mlat.elements():
            assert mlat.leq(f.apply(a), b) == mlat.leq(a, box_m(chain, "A", b))


def test_validation_reports_unit_laxity_violation():
    # two-element quantale with the agent seeing the unit as bottom
    qlat = chain_lattice(2)
    quant = Quantale(qlat, unit=1, mult_table=[[0, 0], [0, 1]])
    mlat = chain_lattice(2)
    module = Module(mlat, quant, act_table=[[0, 0], [0, 1]])
    bad = EpistemicSystem(
        module=module,
        agents=("A",),
        app_m={"A": LatticeMap.identity(mlat)},
        app_q={"A": LatticeMap.from_table(qlat, qlat, [0, 0])},
    )
    report = validate_system(bad)
    assert not report.ok
    laws = [v.law for v in report.violations]
    assert "laxity: unit below its appearance" in laws
    witness = next(v for v in report.violations if "unit below" in v.law)
    assert witness.witness == ("A", 1)


def test_validation_reports_broken_composition_law():
    qlat = chain_lattice(2)
    # non-associative "multiplication"
    quant = Quantale(qlat, unit=1, mult_table=[[1, 0], [0, 1]])
    mlat = chain_lattice(2)
    module = Module(mlat, quant, act_table=[[0, 0], [0, 1]])
    bad = EpistemicSystem(
        module=module,
        agents=(),
        app_m={},
        app_q={},
    )
    report = validate_system(bad)
    assert not report.ok


def test_accessibility_diagnostic():
    sys = two_state_system([(0, 1), (1, 0)])
    rel = accessibility(sys, "A")
    assert rel == [(1, 2), (2, 1)]  # atoms are bitmasks 1 and 2
    assert accessibility(chain_system(), "A") is None  # chain is not atomistic


def test_introspection_counterexample_found():
    found = find_introspection_counterexample()
    assert found is not None
    sys, agent, m = found
    assert validate_system(sys).ok
    bm = box_m(sys, agent, m)
    assert not sys.mlat.leq(bm, box_m(sys, agent, bm))


def test_theorem_conditions_on_boolean_system():
    sys = two_state_system([(0, 0), (0, 1), (1, 1)])
    assert validate_system(sys).ok
    assert theorem_conditions(sys).ok


def test_theorem_conditions_reject_non_boolean():
    rep = theorem_conditions(chain_system())
    assert not rep.ok
    assert any("condition 1" in v.law for v in rep.violations)
