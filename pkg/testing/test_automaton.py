import os

import numpy as np

from valence.automaton import *
from valence.monoids import Alphabet, FreeAbelianGroup, PolycyclicMonoid, TrivialMonoid
from valence.provider import load_automaton
from valence.utils import EPSILON, AlphabetMismatch, log, words_up_to

DATA = os.path.join(os.path.dirname(os.path.abspath(__file__)), '..', 'data', 'automata')


def bundled(name):
    return load_automaton(os.path.join(DATA, f'{name}.json'))


def random_nfa(rng, n_states=4, n_edges=8, alphabet=('a', 'b')):
    monoid = TrivialMonoid()
    one = monoid.empty_multiplier()
    states = [str(i) for i in range(n_states)]
    reads = list(alphabet) + [EPSILON]
    edges = []
    for _ in range(n_edges):
        p, q = rng.integers(n_states, size=2)
        edges.append(Edge(states[p], one, reads[rng.integers(len(reads))], states[q]))
    finals = [q for q in states if rng.random() < 0.4] or [states[-1]]
    return ValenceAutomaton(monoid, states, states[0], finals, edges, alphabet)


def nfa_accepts(a, w):
    ''' subset simulation with epsilon closure '''
    def closure(S):
        S, stack = set(S), list(S)
        while stack:
            q = stack.pop()
            for e in a.edges:
                if e.src == q and e.read == EPSILON and e.dst not in S:
                    S.add(e.dst)
                    stack.append(e.dst)
        return S

    S = closure({a.initial})
    for c in w:
        S = closure({e.dst for e in a.edges if e.src in S and e.read == c})
    return bool(S & a.finals)


def test_dyck_ab_membership():
    a = bundled('dyck_ab')
    assert accepts(a, ('a', 'b')) is Acceptance.ACCEPTED
    assert accepts(a, ('b', 'a')) is Acceptance.REJECTED
    assert accepts(a, ()) is Acceptance.ACCEPTED
    res = search(a, ('a', 'a', 'b', 'b'))
    assert res.verdict is Acceptance.ACCEPTED and len(res.witness) == 4


def test_wrong_letter():
    a = bundled('dyck_ab')
    try:
        accepts(a, ('c',))
    except AlphabetMismatch:
        pass
    else:
        assert False, 'expected AlphabetMismatch'


def test_enumeration_examples():
    assert enumerate_language(bundled('dyck_ab'), 2).words == {(), ('a', 'b')}
    assert enumerate_language(bundled('ab_star'), 4).words == {(), ('a', 'b'), ('a', 'b', 'a', 'b')}
    res = enumerate_language(bundled('z_equal_count'), 4)
    expected = {tuple(w) for w in ['', 'ab', 'ba', 'aabb', 'abab', 'abba', 'baab', 'baba', 'bbaa']}
    assert res.complete and res.words == expected
    assert res.sorted()[:3] == [(), ('a', 'b'), ('b', 'a')]


def test_used_submonoid_generators():
    assert {str(m) for m in used_submonoid_generators(bundled('dyck_ab'))} == {'x', 'x^-1'}
    assert {str(m) for m in used_submonoid_generators(bundled('dyck_ab_padded_fg'))} == {'x #', 'x^-1 #', '#^-1', ''}
    edgeless = ValenceAutomaton(PolycyclicMonoid(Alphabet(('x',))), ['q'], 'q', ['q'], [], ['a'])
    assert used_submonoid_generators(edgeless) == set()


def test_epsilon_loops_terminate():
    # an ε-loop pushing forever: the exponent bound prunes it without using the cap
    m = PolycyclicMonoid(Alphabet(('x',)))
    a = ValenceAutomaton(m, ['p', 'q'], 'p', ['q'],
                         [Edge('p', m.parse_multiplier('x'), EPSILON, 'p'), Edge('p', m.empty_multiplier(), 'a', 'q')], ['a'])
    assert accepts(a, ('a',)) is Acceptance.ACCEPTED
    assert accepts(a, ()) is Acceptance.REJECTED

    z = FreeAbelianGroup(1)
    b = ValenceAutomaton(z, ['p'], 'p', ['p'],
                         [Edge('p', z.parse_multiplier('c1'), EPSILON, 'p'), Edge('p', z.parse_multiplier('c1^-1'), 'a', 'p')], ['a'])
    for n in range(4):
        assert accepts(b, ('a',) * n) is Acceptance.ACCEPTED


def test_trivial_monoid_matches_nfa():
    rng = np.random.default_rng(0)
    for _ in range(5):
        a = random_nfa(rng)
        for w in words_up_to(a.input_alphabet, 8):
            expected = Acceptance.ACCEPTED if nfa_accepts(a, w) else Acceptance.REJECTED
            assert accepts(a, w) is expected, w


def test_skeleton_words():
    rng = np.random.default_rng(1)
    for _ in range(5):
        a = random_nfa(rng)
        words = list(skeleton_words(a, 6))
        assert words == sorted(words, key=lambda w: (len(w), w))
        assert set(words) == {w for w in words_up_to(a.input_alphabet, 6) if nfa_accepts(a, w)}
    # the register is ignored: every word over {a, b} survives for the Dyck automaton
    assert len(list(skeleton_words(bundled('dyck_ab'), 4))) == 31
    assert list(skeleton_words(bundled('ab_star'), 3)) == [(), ('a', 'b')]


def test_budget_monotonicity():
    a = bundled('dyck_ab_padded_fg')
    small = SearchBudget(max_register=2)
    large = SearchBudget()
    outcomes = set()
    for w in words_up_to(a.input_alphabet, 6):
        v1, v2 = accepts(a, w, small), accepts(a, w, large)
        outcomes.add(v1)
        if v1 is not Acceptance.BUDGET_EXHAUSTED:
            assert v1 is v2, w
        assert v2 is not Acceptance.BUDGET_EXHAUSTED
    assert Acceptance.BUDGET_EXHAUSTED in outcomes


def test_visited_cap():
    res = search(bundled('palindrome'), tuple('abcba'), SearchBudget(max_visited=3))
    assert res.verdict is Acceptance.BUDGET_EXHAUSTED and res.pruned
    res = search(bundled('palindrome'), tuple('abcba'))
    assert res.verdict is Acceptance.ACCEPTED and not res.pruned


def test_labelled_runs():
    runs = labelled_runs(bundled('dyck_ab'), 2, 2)
    assert {(str(m), w) for m, w in runs} == {('', ()), ('x', ('a',)), ('x^-1', ('b',)), ('x x', ('a', 'a')),
                                              ('x x^-1', ('a', 'b')), ('x^-1 x', ('b', 'a')), ('x^-1 x^-1', ('b', 'b'))}


def test_reinterpret():
    a = bundled('dyck_ab_padded_fg')
    b = a.reinterpret(PolycyclicMonoid(a.monoid.alphabet))
    assert b.monoid.kind == 'polycyclic' and len(b.edges) == len(a.edges)
    assert enumerate_language(a, 6).words == enumerate_language(b, 6).words


if __name__ == '__main__':
    for name, fn in list(globals().items()):
        if name.startswith('test_') and callable(fn):
            fn()
            log(f'[INFO] {name} passed')
