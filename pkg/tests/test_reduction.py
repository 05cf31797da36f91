import numpy as np
import pytest

from fuzzyre.algebra import make_structure
from fuzzyre.automaton import FuzzyAutomaton, degree, degree_table
from fuzzyre.fixtures import load_fixture
from fuzzyre.lift import lift
from fuzzyre.position import Nfa
from fuzzyre.reduction import (
    NotRightInvariant,
    Partition,
    factor_automaton,
    greatest_right_invariant,
    is_right_invariant,
    quotient_nfa,
    refinement_steps,
    right_invariance_witness,
)
from fuzzyre.regex import eval_direct, parse
from fuzzyre.synthesis import compile_regex, synthesize_full
from oracles import all_partitions, blown_up

GODEL = make_structure("godel")


def min_dfa_automaton():
    return synthesize_full(load_fixture("min_dfa_x_plus_lx"), lift(parse("x+0.5x"), GODEL), GODEL)


def test_partition_basics():
    p = Partition((2, 2, 0, 1))
    assert p.class_of == (0, 0, 1, 2)
    assert p.n_classes == 3 and p.blocks() == [[0, 1], [2], [3]]
    assert Partition.from_blocks([[2], [0, 1], [3]]) == p
    assert np.array_equal(p.matrix()[:2, :2], np.ones((2, 2)))
    assert Partition.identity(4).refines(p) and not p.refines(Partition.identity(4))
    with pytest.raises(ValueError):
        Partition.from_blocks([[0, 1], [1]])
    with pytest.raises(ValueError):
        Partition.from_blocks([[0], [2]], n=3)


def test_min_dfa_example():
    a = min_dfa_automaton()
    cri = Partition.from_blocks([[0, 1], [2]])
    assert is_right_invariant(a, Partition.identity(3))
    assert is_right_invariant(a, cri)
    assert not is_right_invariant(a, Partition((0, 0, 0)))
    assert right_invariance_witness(a, Partition((0, 0, 0)))[0] in ("delta", "tau")
    g = greatest_right_invariant(a)
    assert g == cri
    assert np.array_equal(g.matrix(), load_fixture("min_dfa_x_plus_lx_E_cri"))


def test_min_dfa_factor():
    a = min_dfa_automaton()
    q = factor_automaton(a, Partition.from_blocks([[0, 1], [2]]))
    assert q.n_states == 2
    assert np.array_equal(q.delta["x"], [[0, 1], [0, 0]])
    assert np.array_equal(q.tau, [0, 1])
    alpha = parse("x+0.5x")
    for w, v in degree_table(q, 4).items():
        assert v == eval_direct(alpha, w, GODEL)


def test_distinct_tau_gives_identity():
    a = FuzzyAutomaton(("x",), {"x": np.ones((3, 3))}, [1, 0, 0], [0.1, 0.5, 1.0], GODEL)
    steps = list(refinement_steps(a))
    assert steps[0] == Partition.identity(3)
    assert greatest_right_invariant(a) == Partition.identity(3)


def test_xxstar_with_derived_tau():
    alpha = parse("xx*+0.1x*")
    a = compile_regex(alpha, GODEL, reduced=True)
    g = greatest_right_invariant(a)
    assert [[a.labels[s] for s in b] for b in g.blocks()] == [["0"], ["1", "2", "4"]]
    q = factor_automaton(a, g)
    assert np.array_equal(q.tau, [0.1, 1.0])
    assert np.array_equal(q.delta["x"], [[0, 1], [0, 1]])
    assert degree_table(q, 3).values == {"": 0.1, "x": 1.0, "xx": 1.0, "xxx": 1.0}
    for n in range(6):
        assert degree(q, "x" * n) == eval_direct(alpha, "x" * n, GODEL)


def test_xxstar_printed_tau_would_collapse_to_one_class():
    # with the published terminal vector the refinement ends in one class
    a = compile_regex(parse("xx*+0.1x*"), GODEL, reduced=True)
    printed = load_fixture("godel_xxstar_tau_reduced")["printed"]
    b = FuzzyAutomaton(a.alphabet, a.delta, a.sigma, printed, GODEL, a.labels)
    g = greatest_right_invariant(b)
    assert g.n_classes == 1
    assert np.array_equal(g.matrix(), load_fixture("godel_xxstar_E1_cri"))
    assert degree(b, "") == 1.0 != eval_direct(parse("xx*+0.1x*"), "", GODEL)


def test_follow_relation_is_right_invariant():
    a = compile_regex(parse("xx*+0.1x*"), GODEL, reduced=True)
    e = load_fixture("godel_xxstar_E_f_r")
    blocks = {tuple(np.flatnonzero(row)) for row in e}
    p = Partition.from_blocks([list(b) for b in sorted(blocks)])
    assert is_right_invariant(a, p)
    assert greatest_right_invariant(a).n_classes <= p.n_classes


def test_factor_rejects_non_invariant():
    a = min_dfa_automaton()
    with pytest.raises(NotRightInvariant) as info:
        factor_automaton(a, Partition((0, 0, 0)))
    assert info.value.witness is not None


def test_factor_by_identity_is_original():
    a = compile_regex(parse("(0.1x*)(yx+0.8y)*"), make_structure("product"))
    q = factor_automaton(a, Partition.identity(a.n_states))
    for x in a.alphabet:
        assert np.array_equal(q.delta[x], a.delta[x])
    assert np.array_equal(q.tau, a.tau) and np.array_equal(q.sigma, a.sigma)


def test_chain_descends_and_terminates():
    rng = np.random.default_rng(4)
    for _ in range(100):
        n = int(rng.integers(1, 8))
        delta, tau, _ = blown_up(rng, n, int(rng.integers(1, n + 1)), ("x", "y"))
        sigma = np.zeros(n)
        sigma[0] = 1.0
        a = FuzzyAutomaton(("x", "y"), delta, sigma, tau, GODEL)
        counts = [p.n_classes for p in refinement_steps(a)]
        assert counts == sorted(counts) and len(set(counts)) == len(counts)
        assert len(counts) <= n
        assert is_right_invariant(a, greatest_right_invariant(a))


def test_planted_partition_is_refinement_of_greatest():
    rng = np.random.default_rng(6)
    for _ in range(100):
        delta, tau, planted = blown_up(rng, 6, 3, ("x",))
        a = FuzzyAutomaton(("x",), delta, np.eye(6)[0], tau, GODEL)
        assert is_right_invariant(a, Partition(planted))
        assert Partition(planted).refines(greatest_right_invariant(a))


def test_all_partitions_counts():
    assert [sum(1 for _ in all_partitions(n)) for n in range(7)] == [1, 1, 2, 5, 15, 52, 203]


def test_quotient_nfa():
    nfa = load_fixture("min_dfa_x_plus_lx")
    q = quotient_nfa(nfa, Partition.from_blocks([[0, 1], [2]]))
    assert isinstance(q, Nfa) and q.n_states == 2
    assert q.final_states == {1}
    assert set(q.edges()) == {(0, "x", 1), (0, "$1", 0)}
