''' Exact membership for pushdown (polycyclic) and free-group automata.

A P(X)-automaton accepts with empty stack at a final state, starting from
the empty stack; the triple construction turns it into an nltk context-free
grammar, which is brought into Chomsky normal form and parsed with CYK.
A free-group automaton is first simulated by a pushdown automaton whose
stack mirrors the register word, inverse letters being pushed as markers.
'''
import json
import itertools
from collections import defaultdict

import numpy as np
from nltk.grammar import CFG, Nonterminal, Production

from .automaton import Edge, ValenceAutomaton
from .constructions import normalize_multipliers
from .monoids import FreeGroup, Letter, PolycyclicMonoid, SignedWord
from .utils import EPSILON, ConstructionError, log

MARKER = '_inv'


class ContextFreeGrammar(CFG):
    ''' nltk CFG that also admits an empty production list, i.e. the empty language '''

    def __init__(self, start, productions, calculate_leftcorners=False):
        super().__init__(start, list(dict.fromkeys(productions)), calculate_leftcorners)

    def _calculate_grammar_forms(self):
        if self._productions:
            return super()._calculate_grammar_forms()
        self._is_lexical = self._is_nonlexical = self._all_unary_are_lexical = True
        self._min_len = self._max_len = 0

    def __repr__(self):
        return f'ContextFreeGrammar({len(nonterminals_of(self))} nonterminals, {len(self.productions())} productions)'


def nonterminals_of(g):
    out = {g.start()}
    for p in g.productions():
        out.add(p.lhs())
        out.update(s for s in p.rhs() if isinstance(s, Nonterminal))
    return out


def triple(p, x, q):
    ''' [p,x,q] as a Nonterminal; x is None for the balanced triple [p,ε,q] '''
    return Nonterminal(json.dumps([p, x, q], ensure_ascii=False))


def show_symbol(s):
    if not isinstance(s, Nonterminal):
        return str(s)
    name = s.symbol()
    if isinstance(name, str) and name.startswith('['):
        try:
            parts = json.loads(name)
        except ValueError:
            return name
        return '[' + ','.join('ε' if x is None else str(x) for x in parts) + ']'
    return str(name)


def format_grammar(g):
    ''' one "A -> body" line per production, start productions first; ε for an empty body '''
    rows = []
    for p in g.productions():
        body = ' '.join(show_symbol(s) for s in p.rhs()) or 'ε'
        rows.append((p.lhs() != g.start(), show_symbol(p.lhs()), body))
    return '\n'.join(f'{head} -> {body}' for _, head, body in sorted(rows))


def _fresh(name, taken):
    candidate, i = name, 0
    while candidate in taken:
        i += 1
        candidate = f'{name}{i}'
    taken.add(candidate)
    return candidate


def trim_grammar(g):
    ''' keep productive and reachable nonterminals only '''
    prods = g.productions()
    productive = set()
    changed = True
    while changed:
        changed = False
        for p in prods:
            if p.lhs() not in productive and all(not isinstance(s, Nonterminal) or s in productive for s in p.rhs()):
                productive.add(p.lhs())
                changed = True
    prods = [p for p in prods if p.lhs() in productive and all(not isinstance(s, Nonterminal) or s in productive for s in p.rhs())]
    table = defaultdict(list)
    for p in prods:
        table[p.lhs()].append(p)
    reachable = {g.start()}
    stack = [g.start()]
    while stack:
        for p in table[stack.pop()]:
            for s in p.rhs():
                if isinstance(s, Nonterminal) and s not in reachable:
                    reachable.add(s)
                    stack.append(s)
    return ContextFreeGrammar(g.start(), [p for p in prods if p.lhs() in reachable])


### ------------------------------
### automata -> grammars


def pda_to_cfg(a):
    ''' triple construction for a P(X)-automaton with unit multipliers

    [p,ε,q]  balanced run from p to q (stack back to its height, never below it)
    [p,x,q]  run from p with x on top that pops this x and then is balanced up to q
    '''
    if not isinstance(a.monoid, PolycyclicMonoid):
        raise ConstructionError(f'[to-grammar] expected a polycyclic register, got {a.monoid.kind}')
    for e in a.edges:
        if len(e.mult) > 1:
            raise ConstructionError(f'[to-grammar] multiplier {e.mult} is not a unit, run normalize_multipliers first')

    Q = a.states
    balanced = lambda p, q: triple(p, None, q)
    popping = triple
    start = Nonterminal('S')

    def read(e):
        return (e.read,) if e.read != EPSILON else ()

    productions = [Production(start, (balanced(a.initial, f),)) for f in a.finals]
    productions += [Production(balanced(p, p), ()) for p in Q]
    for e in a.edges:
        if len(e.mult) == 0:
            for q in Q:
                productions.append(Production(balanced(e.src, q), read(e) + (balanced(e.dst, q),)))
            continue
        l = e.mult.letters[0]
        if l.sign > 0:
            for q in Q:
                productions.append(Production(balanced(e.src, q), read(e) + (popping(e.dst, l.symbol, q),)))
        else:
            for r in Q:
                for q in Q:
                    productions.append(Production(popping(r, l.symbol, q), (balanced(r, e.src),) + read(e) + (balanced(e.dst, q),)))

    return trim_grammar(ContextFreeGrammar(start, productions))


def fg_automaton_to_pda(a, marker=MARKER):
    ''' simulate an F(X)-automaton with unit multipliers by a P(X')-automaton

    X' holds x and a marker x_inv for every x. Multiplying by x either pops a
    marker x_inv or pushes x; multiplying by x^-1 either pops x or pushes x_inv.
    Read in F(X) with x_inv as x^-1, the stack word always equals the register;
    popping whenever possible keeps it freely reduced.
    '''
    if not isinstance(a.monoid, FreeGroup):
        raise ConstructionError(f'[fg-to-pda] expected a free-group register, got {a.monoid.kind}')
    X = a.monoid.alphabet
    markers = {x: f'{x}{marker}' for x in X}
    for x, m in markers.items():
        if m in X:
            raise ConstructionError(f'[fg-to-pda] marker {m!r} collides with a generator')
    stack_alphabet = X.extend(*markers.values())
    monoid = PolycyclicMonoid(stack_alphabet)

    edges = []
    for e in a.edges:
        if len(e.mult) > 1:
            raise ConstructionError(f'[fg-to-pda] multiplier {e.mult} is not a unit, run normalize_multipliers first')
        if len(e.mult) == 0:
            edges.append(Edge(e.src, SignedWord.trusted(stack_alphabet, ()), e.read, e.dst))
            continue
        l = e.mult.letters[0]
        if l.sign > 0:
            push, cancel = Letter(l.symbol, 1), Letter(markers[l.symbol], -1)
        else:
            push, cancel = Letter(markers[l.symbol], 1), Letter(l.symbol, -1)
        edges.append(Edge(e.src, SignedWord.trusted(stack_alphabet, (push,)), e.read, e.dst))
        edges.append(Edge(e.src, SignedWord.trusted(stack_alphabet, (cancel,)), e.read, e.dst))
    return ValenceAutomaton(monoid, a.states, a.initial, a.finals, edges, a.input_alphabet, name=a.name)


def automaton_to_cfg(a):
    ''' grammar for a P(X)- or F(X)-automaton, normalising multipliers first '''
    a = normalize_multipliers(a)
    if isinstance(a.monoid, FreeGroup):
        a = fg_automaton_to_pda(a)
    return pda_to_cfg(a)


### ------------------------------
### Chomsky normal form and CYK


def cnf_transform(g):
    ''' Chomsky normal form: bodies are (a,) or (B, C); only the start may derive ε and it never occurs in a body

    ε and unit productions are removed here and terminals are lifted out of
    long bodies; nltk then binarises what is left.
    '''
    start = g.start()
    taken = {str(n.symbol()) for n in nonterminals_of(g)}

    # DEL
    nullable = set()
    changed = True
    while changed:
        changed = False
        for p in g.productions():
            if p.lhs() not in nullable and all(s in nullable for s in p.rhs()):
                nullable.add(p.lhs())
                changed = True
    bodies = set()
    for p in g.productions():
        options = [((s,), ()) if s in nullable else ((s,),) for s in p.rhs()]
        for pick in itertools.product(*options):
            body = tuple(itertools.chain.from_iterable(pick))
            if body:
                bodies.add((p.lhs(), body))

    # UNIT
    units, by_head = defaultdict(set), defaultdict(set)
    for head, body in bodies:
        if len(body) == 1 and isinstance(body[0], Nonterminal):
            units[head].add(body[0])
        else:
            by_head[head].add(body)
    closed = []
    for A in sorted({h for h, _ in bodies}, key=lambda n: str(n.symbol())):
        seen, stack = {A}, [A]
        while stack:
            for C in units[stack.pop()]:
                if C not in seen:
                    seen.add(C)
                    stack.append(C)
        closed += [(A, body) for B in seen for body in by_head[B]]

    # TERM
    lifted = {}

    def lift(s):
        if isinstance(s, Nonterminal):
            return s
        if s not in lifted:
            lifted[s] = Nonterminal(_fresh(json.dumps(['T', s], ensure_ascii=False), taken))
        return lifted[s]

    prods = [Production(A, tuple(lift(s) for s in body) if len(body) >= 2 else body) for A, body in closed]
    prods += [Production(T, (s,)) for s, T in lifted.items()]

    # START, BIN
    new_start = Nonterminal(_fresh('S0', taken))
    if prods:
        nf = ContextFreeGrammar(new_start, [Production(new_start, (start,))] + prods).chomsky_normal_form()
        prods = list(nf.productions())
    if start in nullable:
        prods.append(Production(new_start, ()))
    return trim_grammar(ContextFreeGrammar(new_start, prods))


def cyk_member(g, w):
    ''' exact membership for a grammar produced by cnf_transform '''
    w = tuple(w)
    n = len(w)
    start = g.start()
    if n == 0:
        return any(len(p.rhs()) == 0 for p in g.productions(lhs=start))

    index = {A: i for i, A in enumerate(sorted(nonterminals_of(g), key=lambda A: str(A.symbol())))}
    lexical = defaultdict(list)
    binary = []
    for p in g.productions():
        head, body = p.lhs(), p.rhs()
        if len(body) == 1 and not isinstance(body[0], Nonterminal):
            lexical[body[0]].append(index[head])
        elif len(body) == 2 and all(isinstance(s, Nonterminal) for s in body):
            binary.append((index[head], index[body[0]], index[body[1]]))
        else:
            assert len(body) == 0 and head == start, f'grammar is not in Chomsky normal form: {p}'
    if not binary and n > 1:
        return False
    heads, lefts, rights = (np.array(col, dtype=np.int64) for col in zip(*binary)) if binary \
        else (np.zeros(0, dtype=np.int64),) * 3

    # chart[i, j, A]: A derives w[i:j]
    chart = np.zeros((n, n + 1, len(index)), dtype=bool)
    for i, c in enumerate(w):
        chart[i, i + 1, lexical.get(c, [])] = True
    for span in range(2, n + 1):
        for i in range(n - span + 1):
            j = i + span
            for k in range(i + 1, j):
                hits = chart[i, k, lefts] & chart[k, j, rights]
                if hits.any():
                    chart[i, j, heads[hits]] = True
    return bool(chart[0, n, index[start]])


class GrammarOracle:
    ''' exact membership oracle for a P(X)- or F(X)-automaton '''

    def __init__(self, a):
        self.automaton = a
        self.grammar = automaton_to_cfg(a)
        self.cnf = cnf_transform(self.grammar)
        log(f'[INFO] grammar oracle: {len(self.grammar.productions())} productions, {len(self.cnf.productions())} in CNF')

    def member(self, w):
        return cyk_member(self.cnf, w)
