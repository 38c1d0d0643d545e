''' Finite transducers between free monoids and alphabetic morphisms.

Edge labels are pairs of words (tuples of letters); ε is the empty tuple.
Composition and trimming run on pyfoma FSTs, whose transitions carry one
symbol per tape, so longer edge labels become chains of fresh states.
Every image computation takes an explicit output-length cap, because a
transducer with epsilon-input edges may relate one input to infinitely many
outputs.
'''
import itertools
from collections import deque, defaultdict
from dataclasses import dataclass
from typing import NamedTuple

from pyfoma import FST
from pyfoma.atomic import State

from .utils import EPSILON, AlphabetMismatch, words_up_to

# symbols pyfoma reads specially: '' is its epsilon, '.' its wildcard
RESERVED = ('', '.')


class TransducerEdge(NamedTuple):
    src: str
    inp: tuple
    out: tuple
    dst: str


class FiniteTransducer:

    def __init__(self, states, initial, finals, edges, input_alphabet, output_alphabet, name=None):
        self.states = tuple(dict.fromkeys(states))
        self.initial = initial
        self.finals = frozenset(finals)
        self.edges = tuple(TransducerEdge(e[0], tuple(e[1]), tuple(e[2]), e[3]) for e in edges)
        self.input_alphabet = tuple(dict.fromkeys(input_alphabet))
        self.output_alphabet = tuple(dict.fromkeys(output_alphabet))
        self.name = name

        state_set = set(self.states)
        ins, outs = set(self.input_alphabet), set(self.output_alphabet)
        for c in ins | outs:
            if c in RESERVED:
                raise ValueError(f'[FiniteTransducer] {c!r} cannot be a letter')
        if self.initial not in state_set:
            raise ValueError(f'[FiniteTransducer] initial state {self.initial!r} is not a state')
        for q in self.finals:
            if q not in state_set:
                raise ValueError(f'[FiniteTransducer] final state {q!r} is not a state')
        for e in self.edges:
            if e.src not in state_set or e.dst not in state_set:
                raise ValueError(f'[FiniteTransducer] edge {e.src!r} -> {e.dst!r} has an unknown endpoint')
            if any(c not in ins for c in e.inp):
                raise AlphabetMismatch(f'[FiniteTransducer] input word {e.inp} not over {list(self.input_alphabet)}')
            if any(c not in outs for c in e.out):
                raise AlphabetMismatch(f'[FiniteTransducer] output word {e.out} not over {list(self.output_alphabet)}')

        self.out_edges = defaultdict(list)
        for e in self.edges:
            self.out_edges[e.src].append(e)

    def __repr__(self):
        return f'FiniteTransducer({len(self.states)} states, {len(self.edges)} edges)'

    def is_normalized(self):
        return all(len(e.inp) <= 1 and len(e.out) <= 1 for e in self.edges)


### ------------------------------
### pyfoma bridge


def to_fst(t):
    ''' the pyfoma FST of `t`; every pyfoma state is named, chain states `src·k·j` for edge k '''
    fst = FST(alphabet=set(t.input_alphabet) | set(t.output_alphabet))
    taken = set(t.states)
    states = {q: State(name=q) for q in t.states}
    fst.initialstate = states[t.initial]
    fst.states = set(states.values())
    fst.finalstates = {states[q] for q in t.finals}
    for s in fst.finalstates:
        s.finalweight = 0.0

    for k, e in enumerate(t.edges):
        steps = list(itertools.zip_longest(e.inp, e.out, fillvalue='')) or [('', '')]
        current = states[e.src]
        for j, (i, o) in enumerate(steps):
            if j == len(steps) - 1:
                target = states[e.dst]
            else:
                name = f'{e.src}·{k}·{j + 1}'
                while name in taken:
                    name += "'"
                taken.add(name)
                target = State(name=name)
                fst.states.add(target)
            current.add_transition(target, (i,) if i == o else (i, o), 0.0)
            current = target
    return fst


def from_fst(fst, input_alphabet, output_alphabet, name=None, renumber=False):
    ''' read a pyfoma FST back, breadth first from the initial state

    With renumber, states are called 0, 1, ... in visiting order; otherwise
    the pyfoma state names are kept.
    '''
    def key(s):
        return str(s.name)

    order, seen = [], {fst.initialstate}
    queue = deque([fst.initialstate])
    while queue:
        s = queue.popleft()
        order.append(s)
        for label, transitions in sorted(s.transitions.items()):
            for tr in sorted(transitions, key=lambda tr: key(tr.targetstate)):
                if tr.targetstate in fst.states and tr.targetstate not in seen:
                    seen.add(tr.targetstate)
                    queue.append(tr.targetstate)
    order += sorted(fst.states - seen, key=key)
    names = {s: str(k) if renumber else s.name for k, s in enumerate(order)}

    edges = []
    for s in order:
        for label, transitions in sorted(s.transitions.items()):
            i, o = label if len(label) == 2 else label * 2
            inp, out = (i,) if i else (), (o,) if o else ()
            for tr in sorted(transitions, key=lambda tr: key(tr.targetstate)):
                if tr.targetstate in names:
                    edges.append(TransducerEdge(names[s], inp, out, names[tr.targetstate]))
    finals = [names[s] for s in order if s in fst.finalstates]
    return FiniteTransducer([names[s] for s in order], names[fst.initialstate], finals, edges,
                            input_alphabet, output_alphabet, name=name)


def normalize(t):
    ''' subdivide edges so every input and output label has length <= 1 '''
    if t.is_normalized():
        return t
    return from_fst(to_fst(t), t.input_alphabet, t.output_alphabet, name=t.name)


def trim(t):
    ''' drop states that are not on some initial -> final path; the initial state always stays '''
    keep = {s.name for s in to_fst(t).trim().states}
    states = [q for q in t.states if q in keep]
    edges = [e for e in t.edges if e.src in keep and e.dst in keep]
    finals = [q for q in t.finals if q in keep]
    return FiniteTransducer(states, t.initial, finals, edges, t.input_alphabet, t.output_alphabet, name=t.name)


def compose(r, s):
    ''' relational composition: (u, w) such that (u, v) in r and (v, w) in s for some v '''
    if set(r.output_alphabet) != set(s.input_alphabet):
        raise AlphabetMismatch(f'[compose] middle alphabets differ: {list(r.output_alphabet)} vs {list(s.input_alphabet)}')
    fst = to_fst(r).compose(to_fst(s)).trim()
    return from_fst(fst, r.input_alphabet, s.output_alphabet, renumber=True)


### ------------------------------
### bounded images


class ImageResult(NamedTuple):
    words: frozenset
    truncated: bool

def image_of_word(t, u, cap):
    ''' all v with |v| <= cap such that (u, v) is recognised by t '''
    assert cap >= 0, 'cap must be non-negative'
    u = tuple(u)
    start = (t.initial, 0, ())
    seen = {start}
    queue = deque([start])
    words = set()
    truncated = False
    while queue:
        state, i, out = queue.popleft()
        if i == len(u) and state in t.finals:
            words.add(out)
        for e in t.out_edges[state]:
            j = i + len(e.inp)
            if u[i:j] != e.inp:
                continue
            nout = out + e.out
            if len(nout) > cap:
                truncated = True
                continue
            nxt = (e.dst, j, nout)
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return ImageResult(frozenset(words), truncated)


def image_of_language(t, L, cap):
    words, truncated = set(), False
    for u in L:
        res = image_of_word(t, u, cap)
        words |= res.words
        truncated |= res.truncated
    return ImageResult(frozenset(words), truncated)


def bounded_relation(t, max_in, max_out):
    ''' {(u, v) in t : |u| <= max_in, |v| <= max_out} '''
    pairs = set()
    for u in words_up_to(t.input_alphabet, max_in):
        for v in image_of_word(t, u, max_out).words:
            pairs.add((u, v))
    return pairs


def identity_transducer(alphabet):
    return FiniteTransducer(['0'], '0', ['0'], [('0', (a,), (a,), '0') for a in alphabet], alphabet, alphabet, name='identity')


def generator_change_transducer(pairs, input_alphabet, output_alphabet):
    ''' the one-state transducer generated by pairs (w_a, a) '''
    edges = [('0', tuple(w), (a,) if a != EPSILON else (), '0') for w, a in pairs]
    return FiniteTransducer(['0'], '0', ['0'], edges, input_alphabet, output_alphabet, name='generator-change')


### ------------------------------
### alphabetic morphisms


@dataclass(frozen=True, init=False)
class AlphabeticMorphism:
    ''' each source letter goes to a single target letter or to EPSILON '''
    mapping: tuple  # sorted (letter, image) pairs

    def __init__(self, mapping, target_alphabet=None):
        pairs = tuple(sorted(dict(mapping).items()))
        for a, b in pairs:
            if not isinstance(b, str) or len(b.split()) > 1:
                raise ValueError(f'[AlphabeticMorphism] {a!r} must map to one letter or ε, got {b!r}')
        object.__setattr__(self, 'mapping', pairs)
        images = [b for _, b in pairs if b != EPSILON]
        object.__setattr__(self, 'target_alphabet', tuple(dict.fromkeys(target_alphabet or images)))

    @property
    def source_alphabet(self):
        return tuple(a for a, _ in self.mapping)

    def __call__(self, word):
        table = dict(self.mapping)
        out = []
        for c in word:
            if c not in table:
                raise AlphabetMismatch(f'[AlphabeticMorphism] letter {c!r} outside the source alphabet')
            if table[c] != EPSILON:
                out.append(table[c])
        return tuple(out)


def morphism_image(m, L):
    return frozenset(m(w) for w in L)


def morphism_preimage(m, L, max_len):
    ''' {u : |u| <= max_len, m(u) in L} '''
    L = set(tuple(w) for w in L)
    return frozenset(u for u in words_up_to(m.source_alphabet, max_len) if m(u) in L)


def morphism_to_transducer(m):
    edges = [('0', (a,), (b,) if b != EPSILON else (), '0') for a, b in m.mapping]
    return FiniteTransducer(['0'], '0', ['0'], edges, m.source_alphabet, m.target_alphabet, name='morphism')
