''' Dyck-language predicates and permissible paddings.

A permissible padding of w = w_1 .. w_n inserts the padding symbol # after
every letter, zero or more #^-1 before every negative letter, and zero or
more #^-1 at the end. A word is 1-sided Dyck iff it has a padding that is
the identity in P(X ∪ {#}), iff it has one that is the identity in F(X ∪ {#}).
'''
import itertools
from dataclasses import dataclass

from .monoids import Alphabet, Letter, SignedWord, FreeGroupElement, fg_multiply, free_reduce, poly_eval
from .utils import NotOneSidedDyck, TokenError

PAD = '#'


def is_two_sided_dyck(w):
    return free_reduce(w).is_identity()


def is_one_sided_dyck(w):
    return poly_eval(w).is_identity()


def _prefix_elements(w):
    ''' free-group element of every prefix w[:k], k = 0 .. |w| '''
    e = FreeGroupElement.identity_of(w.alphabet)
    out = [e]
    for k in range(len(w)):
        e = fg_multiply(e, free_reduce(w[k:k + 1]))
        out.append(e)
    return out


def minima(w):
    ''' elements represented by some prefix, no prefix representing them being followed by a negative letter '''
    seen, blocked = set(), set()
    for k, e in enumerate(_prefix_elements(w)):
        seen.add(e)
        if k < len(w) and w.letters[k].sign < 0:
            blocked.add(e)
    return seen - blocked


def all_prefixes_positive_or_identity(w):
    return all(e.is_identity() or e.is_positive() for e in _prefix_elements(w))


### ------------------------------
### paddings


def padded_alphabet(alphabet, pad=PAD):
    ''' X^# = X ∪ {#} '''
    if pad in alphabet:
        raise TokenError(f'[padding] padding symbol {pad!r} is already a generator of {alphabet}')
    return alphabet.extend(pad)


@dataclass(frozen=True)
class PaddedWord:
    word: SignedWord
    origin: SignedWord

    def __post_init__(self):
        if not is_permissible_padding(self.word, self.origin):
            raise ValueError(f'[PaddedWord] {self.word} is not a permissible padding of {self.origin}')

    def __str__(self):
        return str(self.word)


def insert_padding(w, pad=PAD):
    ''' the canonical identity padding of a 1-sided Dyck word

    Simulates the stack over X ∪ {#}: every letter is followed by a pushed #,
    and each # is popped exactly when it surfaces in front of a pop or at the end.
    '''
    if not is_one_sided_dyck(w):
        raise NotOneSidedDyck(f'[insert_padding] {w} is not 1-sided Dyck')
    alphabet = padded_alphabet(w.alphabet, pad)
    push_pad, pop_pad = Letter(pad, 1), Letter(pad, -1)

    out, stack = [], []
    for l in w.letters:
        if l.sign < 0:
            while stack and stack[-1] == pad:
                out.append(pop_pad)
                stack.pop()
            assert stack and stack[-1] == l.symbol, 'stack out of sync with a 1-sided Dyck word'
            stack.pop()
        else:
            stack.append(l.symbol)
        out.append(l)
        out.append(push_pad)
        stack.append(pad)
    while stack:
        assert stack[-1] == pad, 'stack out of sync with a 1-sided Dyck word'
        out.append(pop_pad)
        stack.pop()

    return PaddedWord(SignedWord.trusted(alphabet, tuple(out)), w)


def is_permissible_padding(p, w, pad=PAD):
    push_pad, pop_pad = Letter(pad, 1), Letter(pad, -1)
    letters = p.letters
    i = 0
    for l in w.letters:
        if l.symbol == pad:
            return False
        if l.sign < 0:
            while i < len(letters) and letters[i] == pop_pad:
                i += 1
        if i + 1 >= len(letters) or letters[i] != l or letters[i + 1] != push_pad:
            return False
        i += 2
    return all(x == pop_pad for x in letters[i:])


def strip_padding(p, pad=PAD, alphabet=None):
    ''' delete every # and #^-1 '''
    if alphabet is None:
        symbols = tuple(s for s in p.alphabet.symbols if s != pad)
        alphabet = Alphabet(symbols) if symbols else Alphabet.trivial()
    return SignedWord(alphabet, tuple(l for l in p.letters if l.symbol != pad))


def iter_paddings(w, max_block, pad=PAD):
    ''' every permissible padding of w whose #^-1 blocks have length <= max_block '''
    alphabet = padded_alphabet(w.alphabet, pad)
    push_pad, pop_pad = Letter(pad, 1), Letter(pad, -1)
    slots = [k for k, l in enumerate(w.letters) if l.sign < 0]
    for blocks in itertools.product(range(max_block + 1), repeat=len(slots) + 1):
        before = dict(zip(slots, blocks))
        out = []
        for k, l in enumerate(w.letters):
            out.extend([pop_pad] * before.get(k, 0))
            out.append(l)
            out.append(push_pad)
        out.extend([pop_pad] * blocks[-1])
        yield SignedWord.trusted(alphabet, tuple(out))
