''' Automaton-to-automaton constructions.

    product_automaton        M1-automaton x M2-automaton -> (M1 x M2)-automaton for the intersection
    automaton_to_transducer  M-automaton read as a transducer from generator words to input words
    transducer_to_automaton  the converse: edge input words evaluated in M
    padding_construction     P(X)-automaton A -> A' over X ∪ {#}, read in F(X ∪ {#}) or P(X ∪ {#})
    normalize_multipliers    edge subdivision down to unit multipliers
'''
from .automaton import Edge, ValenceAutomaton
from .monoids import DirectProduct, FreeGroup, Letter, PolycyclicMonoid, SignedWord
from .transducer import FiniteTransducer, TransducerEdge, normalize
from .dyck import PAD, padded_alphabet
from .utils import EPSILON, AlphabetMismatch, ConstructionError, InexpressibleMultiplier, log


def product_automaton(a1, a2):
    ''' the synchronised product; accepts L(a1) ∩ L(a2) '''
    if set(a1.input_alphabet) != set(a2.input_alphabet):
        raise AlphabetMismatch(f'[product] input alphabets differ: {list(a1.input_alphabet)} vs {list(a2.input_alphabet)}')
    m1, m2 = a1.monoid, a2.monoid
    one1, one2 = m1.empty_multiplier(), m2.empty_multiplier()

    def name(p, q):
        return f'({p},{q})'

    states = [name(p, q) for p in a1.states for q in a2.states]
    if len(set(states)) < len(states):
        raise ConstructionError('[product] pair state names collide, rename states so that (p,q) is unambiguous')
    edges = []
    for e in a1.edges:
        if e.read == EPSILON:
            for u in a2.states:
                edges.append(Edge(name(e.src, u), (e.mult, one2), EPSILON, name(e.dst, u)))
        else:
            for f in a2.edges:
                if f.read == e.read:
                    edges.append(Edge(name(e.src, f.src), (e.mult, f.mult), e.read, name(e.dst, f.dst)))
    for f in a2.edges:
        if f.read == EPSILON:
            for s in a1.states:
                edges.append(Edge(name(s, f.src), (one1, f.mult), EPSILON, name(s, f.dst)))

    finals = [name(p, q) for p in a1.states for q in a2.states if p in a1.finals and q in a2.finals]
    return ValenceAutomaton(DirectProduct([m1, m2]), states, name(a1.initial, a2.initial), finals, edges,
                            a1.input_alphabet, name=f'{a1.name or "A1"} x {a2.name or "A2"}')


def product_automaton_many(automata):
    automata = list(automata)
    assert len(automata) >= 2, 'need at least two automata'
    out = automata[0]
    for a in automata[1:]:
        out = product_automaton(out, a)
    return out


def union_automaton(a1, a2):
    ''' nondeterministic choice between a1 and a2 through a fresh initial state '''
    if a1.monoid != a2.monoid:
        raise ConstructionError(f'[union] register monoids differ: {a1.monoid} vs {a2.monoid}')
    one = a1.monoid.empty_multiplier()
    start = 'start'
    states = [start] + [f'{q}·1' for q in a1.states] + [f'{q}·2' for q in a2.states]
    edges = [Edge(start, one, EPSILON, f'{a1.initial}·1'), Edge(start, one, EPSILON, f'{a2.initial}·2')]
    edges += [Edge(f'{e.src}·1', e.mult, e.read, f'{e.dst}·1') for e in a1.edges]
    edges += [Edge(f'{e.src}·2', e.mult, e.read, f'{e.dst}·2') for e in a2.edges]
    finals = [f'{q}·1' for q in a1.finals] + [f'{q}·2' for q in a2.finals]
    alphabet = a1.input_alphabet + tuple(c for c in a2.input_alphabet if c not in a1.input_alphabet)
    return ValenceAutomaton(a1.monoid, states, start, finals, edges, alphabet)


def morphism_automaton(a, m):
    ''' relabel input letters by an alphabetic morphism; accepts m(L(a)) '''
    def relabel(c):
        if c == EPSILON:
            return EPSILON
        image = m((c,))
        return image[0] if image else EPSILON

    edges = [Edge(e.src, e.mult, relabel(e.read), e.dst) for e in a.edges]
    return ValenceAutomaton(a.monoid, a.states, a.initial, a.finals, edges, m.target_alphabet)


def word_problem_automaton(monoid):
    ''' the one-state M-automaton reading generator tokens; its language is the identity language of M '''
    letters = monoid.generator_letters()
    edges = [Edge('0', mult, token, '0') for token, mult in letters]
    return ValenceAutomaton(monoid, ['0'], '0', ['0'], edges, [token for token, _ in letters], name='identity-language')


def factor_identity_automaton(product, i):
    ''' over the generator tokens of a direct product: words whose i-th component is the identity '''
    if not isinstance(product, DirectProduct):
        raise ConstructionError('[factor_identity] expected a direct product')
    letters = product.generator_letters()
    edges = [Edge('0', mult[i], token, '0') for token, mult in letters]
    return ValenceAutomaton(product.factors[i], ['0'], '0', ['0'], edges, [token for token, _ in letters],
                            name=f'K{i + 1}')


### ------------------------------
### M-automata and transducers


def _word_alphabet(monoid, who):
    if isinstance(monoid, DirectProduct):
        raise ConstructionError(f'[{who}] product registers have no single generator alphabet')
    return monoid.alphabet


def _expressible(mult, gens):
    ''' whether `mult` is a concatenation of words from `gens` '''
    letters = mult.letters
    ok = [False] * (len(letters) + 1)
    ok[0] = True
    for i in range(len(letters)):
        if not ok[i]:
            continue
        for g in gens:
            j = i + len(g)
            if len(g) > 0 and letters[i:j] == g.letters:
                ok[j] = True
    return ok[-1]


def automaton_to_transducer(a, gens=None):
    ''' read `a` as a finite transducer from generator tokens to input letters
    Args:
        a: ValenceAutomaton whose register is not a direct product
        gens: optional list of SignedWord; every multiplier must be a concatenation of them
    '''
    alphabet = _word_alphabet(a.monoid, 'to_transducer')
    if gens is not None:
        for e in a.edges:
            if not _expressible(e.mult, gens):
                raise InexpressibleMultiplier(f'[to_transducer] multiplier {e.mult} is not a product of {[str(g) for g in gens]}')
    edges = [TransducerEdge(e.src, tuple(l.token for l in e.mult.letters), (e.read,) if e.read != EPSILON else (), e.dst)
             for e in a.edges]
    inputs = [l.token for l in alphabet.letters()]
    return FiniteTransducer(a.states, a.initial, a.finals, edges, inputs, a.input_alphabet, name=a.name)


def transducer_to_automaton(t, monoid):
    ''' replace every edge input word by the element of `monoid` it represents '''
    alphabet = _word_alphabet(monoid, 'from_transducer')
    if any(len(e.out) > 1 for e in t.edges):
        t = normalize(t)
    edges = []
    for e in t.edges:
        mult = SignedWord(alphabet, tuple(Letter.parse(tok) for tok in e.inp))
        edges.append(Edge(e.src, mult, e.out[0] if e.out else EPSILON, e.dst))
    return ValenceAutomaton(monoid, t.states, t.initial, t.finals, edges, t.output_alphabet, name=t.name)


### ------------------------------
### padding construction


def normalize_multipliers(a):
    ''' subdivide edges so every multiplier is a single generator, a single inverse, or ε '''
    if all(a.monoid.multiplier_length(e.mult) <= 1 for e in a.edges):
        return a
    states = list(a.states)
    edges = []
    for k, e in enumerate(a.edges):
        units = a.monoid.split_multiplier(e.mult)
        if len(units) <= 1:
            edges.append(e)
            continue
        chain = [e.src] + [f'{e.src}·{k}·{j}' for j in range(1, len(units))] + [e.dst]
        states.extend(chain[1:-1])
        for j, unit in enumerate(units):
            edges.append(Edge(chain[j], unit, e.read if j == 0 else EPSILON, chain[j + 1]))
    return ValenceAutomaton(a.monoid, states, a.initial, a.finals, edges, a.input_alphabet, name=a.name)


def padding_construction(a, register='fg', pad=PAD):
    ''' A -> A' for a P(X)-automaton A with unit multipliers

    A' has states q+ and q- for every q of A; start q0+; finals q- for final q;
    p+ -> q+ labelled (x #, w) for a push edge; p- -> q+ labelled (x^-1 #, w) for
    a pop edge; p+ -> q+ labelled (ε, w) for an ε edge; a bridge q+ -> q- labelled
    (ε, ε) and a loop (#^-1, ε) at q- for every q.
    Args:
        register: 'fg' to read A' over F(X ∪ {#}), 'poly' over P(X ∪ {#})
    '''
    if not isinstance(a.monoid, PolycyclicMonoid):
        raise ConstructionError(f'[pad-construct] expected a polycyclic register, got {a.monoid.kind}')
    for e in a.edges:
        if len(e.mult) > 1:
            raise ConstructionError(f'[pad-construct] multiplier {e.mult} is not a unit, run normalize_multipliers first')

    alphabet = padded_alphabet(a.monoid.alphabet, pad)
    if register == 'fg':
        monoid = FreeGroup(alphabet)
    elif register == 'poly':
        monoid = PolycyclicMonoid(alphabet)
    else:
        raise NotImplementedError(f'Unknown register {register!r}, choose from [fg, poly]')

    push_pad, pop_pad = Letter(pad, 1), Letter(pad, -1)
    plus = lambda q: f'{q}+'
    minus = lambda q: f'{q}-'

    edges = []
    for e in a.edges:
        if len(e.mult) == 0:
            edges.append(Edge(plus(e.src), SignedWord.trusted(alphabet, ()), e.read, plus(e.dst)))
            continue
        l = e.mult.letters[0]
        mult = SignedWord.trusted(alphabet, (l, push_pad))
        if l.sign > 0:
            edges.append(Edge(plus(e.src), mult, e.read, plus(e.dst)))
        else:
            edges.append(Edge(minus(e.src), mult, e.read, plus(e.dst)))
    for q in a.states:
        edges.append(Edge(plus(q), SignedWord.trusted(alphabet, ()), EPSILON, minus(q)))
        edges.append(Edge(minus(q), SignedWord.trusted(alphabet, (pop_pad,)), EPSILON, minus(q)))

    states = [plus(q) for q in a.states] + [minus(q) for q in a.states]
    finals = [minus(q) for q in a.states if q in a.finals]
    out = ValenceAutomaton(monoid, states, plus(a.initial), finals, edges, a.input_alphabet,
                           name=f"{a.name or 'A'}'")
    log(f'[INFO] pad-construct: {len(a.states)} -> {len(out.states)} states, {len(a.edges)} -> {len(out.edges)} edges, register {monoid.kind}')
    return out
