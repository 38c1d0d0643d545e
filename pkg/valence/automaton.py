''' Valence automata: finite automata with a monoid-valued register.

A word is accepted when some path from the initial state to a final state
reads it and multiplies the register (initially the identity) back to the
identity. Membership is decided by a budgeted breadth-first search over
configurations (state, position, register normal form).
'''
from collections import deque, defaultdict
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple, Optional

import numpy as np
import tqdm

from .monoids import SignedWord
from .utils import EPSILON, AlphabetMismatch, log, length_lex_key


class Edge(NamedTuple):
    src: str
    mult: object  # SignedWord, or a tuple of them for a direct product
    read: str     # a letter of the input alphabet, or EPSILON
    dst: str


class ValenceAutomaton:
    ''' An M-automaton; immutable after construction.
    Args:
        monoid: RegisterMonoid
        states: iterable of state names (str)
        initial: the initial state
        finals: iterable of final states
        edges: iterable of Edge (or 4-tuples src, mult, read, dst)
        input_alphabet: iterable of letters (str)
    '''

    def __init__(self, monoid, states, initial, finals, edges, input_alphabet, name=None):
        self.monoid = monoid
        self.states = tuple(dict.fromkeys(states))
        self.initial = initial
        self.finals = frozenset(finals)
        self.input_alphabet = tuple(dict.fromkeys(input_alphabet))
        self.edges = tuple(Edge(*e) for e in edges)
        self.name = name

        state_set = set(self.states)
        letters = set(self.input_alphabet)
        assert len(self.states) > 0, 'an automaton needs at least one state'
        if self.initial not in state_set:
            raise ValueError(f'[ValenceAutomaton] initial state {self.initial!r} is not a state')
        for q in self.finals:
            if q not in state_set:
                raise ValueError(f'[ValenceAutomaton] final state {q!r} is not a state')
        for e in self.edges:
            if e.src not in state_set or e.dst not in state_set:
                raise ValueError(f'[ValenceAutomaton] edge {e.src!r} -> {e.dst!r} has an unknown endpoint')
            if e.read != EPSILON and e.read not in letters:
                raise AlphabetMismatch(f'[ValenceAutomaton] edge letter {e.read!r} not in input alphabet')

        # multipliers are evaluated to normal form once, at load time
        self.elements = tuple(monoid.evaluate(e.mult) for e in self.edges)
        self.parikh = np.stack([monoid.multiplier_parikh(e.mult) for e in self.edges]) if self.edges \
            else np.zeros((0, monoid.dim), dtype=np.int64)

        self.state_index = {q: i for i, q in enumerate(self.states)}
        self.out_edges = defaultdict(list)
        for k, e in enumerate(self.edges):
            self.out_edges[e.src].append(k)

    def __repr__(self):
        name = f'{self.name}: ' if self.name else ''
        return f'ValenceAutomaton({name}{self.monoid.to_dict()}, {len(self.states)} states, {len(self.edges)} edges)'

    def max_multiplier_length(self):
        return max((self.monoid.multiplier_length(e.mult) for e in self.edges), default=0)

    def reinterpret(self, monoid):
        ''' the same graph read over another register monoid (multipliers re-parsed by their tokens) '''
        edges = [Edge(e.src, monoid.parse_multiplier(self.monoid.format_multiplier(e.mult)), e.read, e.dst) for e in self.edges]
        return ValenceAutomaton(monoid, self.states, self.initial, self.finals, edges, self.input_alphabet, name=self.name)


### ------------------------------
### acceptance


class Acceptance(Enum):
    ACCEPTED = 'ACCEPTED'
    REJECTED = 'REJECTED'
    BUDGET_EXHAUSTED = 'UNKNOWN'


@dataclass(frozen=True)
class SearchBudget:
    max_register: Optional[int] = None  # None: |w| * (max multiplier length) * |states| + 8
    max_visited: int = 200_000

    @classmethod
    def from_opt(cls, opt):
        return cls(max_register=getattr(opt, 'budget', None), max_visited=getattr(opt, 'max_visited', 200_000))

    def register_cap(self, a, w):
        if self.max_register is not None:
            return self.max_register
        # heuristic, not a guarantee
        return len(w) * max(a.max_multiplier_length(), 1) * len(a.states) + 8


class SearchResult(NamedTuple):
    verdict: Acceptance
    witness: Optional[tuple]  # edge indices of an accepting path
    visited: int
    pruned: bool


def _exponent_bounds(a, w):
    ''' Parikh bounds for the rest of a run.

    For every position i and state q: whether a final state is reachable from
    (q, i) reading exactly w[i:], and per generator the least and greatest net
    exponent sum such a path can contribute (+-inf across positive/negative
    epsilon cycles).
    Returns:
        reach: [n + 1, Q] bool
        lo, hi: [n + 1, Q, d] float
    '''
    n, Q, d = len(w), len(a.states), a.monoid.dim
    reach = np.zeros((n + 1, Q), dtype=bool)
    lo = np.full((n + 1, Q, d), np.inf)
    hi = np.full((n + 1, Q, d), -np.inf)

    src = np.array([a.state_index[e.src] for e in a.edges], dtype=np.int64)
    dst = np.array([a.state_index[e.dst] for e in a.edges], dtype=np.int64)
    reads = [e.read for e in a.edges]
    eps = [k for k, r in enumerate(reads) if r == EPSILON]
    p = a.parikh.astype(np.float64)

    def relax(k, r, l, h, nr, nl, nh):
        changed = False
        s, t = src[k], dst[k]
        if not nr[t]:
            return False
        if not r[s]:
            r[s] = True
            changed = True
        cand_h = p[k] + nh[t]
        cand_l = p[k] + nl[t]
        if np.any(cand_h > h[s]):
            h[s] = np.maximum(h[s], cand_h)
            changed = True
        if np.any(cand_l < l[s]):
            l[s] = np.minimum(l[s], cand_l)
            changed = True
        return changed

    for i in range(n, -1, -1):
        r, l, h = reach[i], lo[i], hi[i]
        if i == n:
            for f in a.finals:
                fi = a.state_index[f]
                r[fi] = True
                l[fi] = 0
                h[fi] = 0
        else:
            for k, letter in enumerate(reads):
                if letter == w[i]:
                    relax(k, r, l, h, reach[i + 1], lo[i + 1], hi[i + 1])

        if not eps:
            continue
        # longest / shortest paths through epsilon edges
        for _ in range(Q):
            changed = False
            for k in eps:
                changed |= relax(k, r, l, h, r, l, h)
            if not changed:
                break
        else:
            # still improving after Q rounds: unbounded along a cycle
            for _ in range(Q):
                for k in eps:
                    s, t = src[k], dst[k]
                    if not r[t]:
                        continue
                    h[s] = np.where(p[k] + h[t] > h[s], np.inf, h[s])
                    l[s] = np.where(p[k] + l[t] < l[s], -np.inf, l[s])

    return reach, lo, hi


def search(a, w, budget=None):
    ''' breadth-first search for an accepting run of `a` on `w`
    Args:
        a: ValenceAutomaton
        w: sequence of input letters
        budget: SearchBudget
    Returns:
        SearchResult
    '''
    budget = budget or SearchBudget()
    w = tuple(w)
    letters = set(a.input_alphabet)
    for c in w:
        if c not in letters:
            raise AlphabetMismatch(f'[accepts] letter {c!r} not in input alphabet {list(a.input_alphabet)}')

    monoid = a.monoid
    cap = budget.register_cap(a, w)
    reach, lo, hi = _exponent_bounds(a, w)
    n = len(w)

    def feasible(qi, i, exps):
        if not reach[i, qi]:
            return False
        need = -exps
        return bool(np.all(need >= lo[i, qi]) and np.all(need <= hi[i, qi]))

    start = (a.initial, 0, monoid.identity())
    start_exps = np.zeros(monoid.dim, dtype=np.int64)
    if not feasible(a.state_index[a.initial], 0, start_exps):
        return SearchResult(Acceptance.REJECTED, None, 0, False)

    parent = {start: None}
    queue = deque([(start, start_exps)])
    pruned = False

    while queue:
        config, exps = queue.popleft()
        state, i, reg = config

        if i == n and state in a.finals and reg.is_identity():
            path = []
            while parent[config] is not None:
                config, k = parent[config]
                path.append(k)
            return SearchResult(Acceptance.ACCEPTED, tuple(reversed(path)), len(parent), pruned)

        for k in a.out_edges[state]:
            e = a.edges[k]
            if e.read == EPSILON:
                j = i
            elif i < n and e.read == w[i]:
                j = i + 1
            else:
                continue

            new = monoid.multiply(reg, a.elements[k])
            # zero and other dead registers never return to the identity
            if new.is_dead():
                continue
            new_exps = exps + a.parikh[k]
            if not feasible(a.state_index[e.dst], j, new_exps):
                continue
            if new.size() > cap:
                pruned = True
                continue

            nxt = (e.dst, j, new)
            if nxt in parent:
                continue
            if len(parent) >= budget.max_visited:
                pruned = True
                queue.clear()
                break
            parent[nxt] = (config, k)
            queue.append((nxt, new_exps))

    verdict = Acceptance.BUDGET_EXHAUSTED if pruned else Acceptance.REJECTED
    return SearchResult(verdict, None, len(parent), pruned)


def accepts(a, w, budget=None):
    return search(a, w, budget).verdict


class LanguageResult(NamedTuple):
    words: frozenset
    complete: bool

    def sorted(self):
        return sorted(self.words, key=length_lex_key)


def skeleton_words(a, max_len):
    ''' words of length <= max_len accepted by `a` with the register ignored, in length-lexicographic order

    Every word `a` accepts is among them; a prefix is extended only while the
    register-free automaton can still reach a final state.
    '''
    coreach = set(a.finals)
    changed = True
    while changed:
        changed = False
        for e in a.edges:
            if e.dst in coreach and e.src not in coreach:
                coreach.add(e.src)
                changed = True

    def closure(S):
        S, stack = set(S), list(S)
        while stack:
            q = stack.pop()
            for k in a.out_edges[q]:
                e = a.edges[k]
                if e.read == EPSILON and e.dst not in S:
                    S.add(e.dst)
                    stack.append(e.dst)
        return frozenset(S & coreach)

    level = [((), closure({a.initial}))]
    for n in range(max_len + 1):
        nxt = []
        for word, S in level:
            if S & a.finals:
                yield word
            if n == max_len:
                continue
            for c in a.input_alphabet:
                T = closure({a.edges[k].dst for q in S for k in a.out_edges[q] if a.edges[k].read == c})
                if T:
                    nxt.append((word + (c,), T))
        level = nxt


def enumerate_language(a, max_len, budget=None, verbose=False):
    ''' all accepted words of length <= max_len; `complete` is False if any query was inconclusive '''
    assert max_len >= 0, 'max_len must be non-negative'
    words = set()
    unknown = 0
    for w in tqdm.tqdm(skeleton_words(a, max_len), disable=not verbose, desc=f'enumerate |w| <= {max_len}'):
        verdict = accepts(a, w, budget)
        if verdict is Acceptance.ACCEPTED:
            words.add(w)
        elif verdict is Acceptance.BUDGET_EXHAUSTED:
            unknown += 1
    if unknown:
        log(f'[WARN] {unknown} membership queries exhausted the search budget, language is incomplete')
    return LanguageResult(frozenset(words), unknown == 0)


def used_submonoid_generators(a):
    ''' the finitely many multipliers on edges; `a` is equally an automaton over the submonoid they generate '''
    return set(e.mult for e in a.edges)


def _concat_multipliers(monoid, m1, m2):
    if isinstance(m1, tuple):
        return tuple(_concat_multipliers(f, x, y) for f, x, y in zip(monoid.factors, m1, m2))
    return SignedWord.trusted(m1.alphabet, m1.letters + m2.letters)


def labelled_runs(a, max_input, max_steps):
    ''' labels (register word, input word) of accepting paths of `a` viewed as a plain finite automaton
    Args:
        max_input: max input length read along the path
        max_steps: max number of edges on the path
    Returns:
        set of (multiplier, tuple of letters)
    '''
    out = set()
    stack = [(a.initial, a.monoid.empty_multiplier(), (), 0)]
    while stack:
        state, mult, word, steps = stack.pop()
        if state in a.finals:
            out.add((mult, word))
        if steps == max_steps:
            continue
        for k in a.out_edges[state]:
            e = a.edges[k]
            nword = word if e.read == EPSILON else word + (e.read,)
            if len(nword) > max_input:
                continue
            stack.append((e.dst, _concat_multipliers(a.monoid, mult, e.mult), nword, steps + 1))
    return out
