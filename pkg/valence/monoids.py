''' Register monoids: words over signed generators and normal-form arithmetic.

Every register value is kept in normal form:
    free group       FreeGroupElement   reduced sympy free-group word
    polycyclic       PolycyclicElement  (pop, push) pair, or Zero
    free abelian     IntVector          integer components
    trivial          IntVector of rank 0
    direct product   ProductElement     tuple of the above

The stack of a polycyclic monoid grows to the right: (pop, push) maps a
stack w.pop to w.push.
'''
from dataclasses import dataclass, field
from typing import NamedTuple, Tuple

import numpy as np
from sympy import Symbol
from sympy.combinatorics.free_groups import free_group

from .utils import AlphabetMismatch, RankMismatch, TokenError

INVERSE_SUFFIX = '^-1'


@dataclass(frozen=True)
class Alphabet:
    symbols: Tuple[str, ...]
    _index: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        symbols = tuple(self.symbols)
        object.__setattr__(self, 'symbols', symbols)
        if len(symbols) == 0 and not getattr(self, '_allow_empty', False):
            raise ValueError('[Alphabet] alphabet must be non-empty (use Alphabet.trivial())')
        if len(set(symbols)) != len(symbols):
            raise ValueError(f'[Alphabet] duplicate symbols in {list(symbols)}')
        for s in symbols:
            check_symbol(s)
        object.__setattr__(self, '_index', {s: i for i, s in enumerate(symbols)})

    @classmethod
    def trivial(cls):
        obj = object.__new__(cls)
        object.__setattr__(obj, '_allow_empty', True)
        obj.__init__(())
        return obj

    def __len__(self):
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __contains__(self, symbol):
        return symbol in self._index

    def __repr__(self):
        return '{' + ', '.join(self.symbols) + '}'

    def index(self, symbol):
        return self._index[symbol]

    def extend(self, *symbols):
        ''' X ∪ {symbols}, new symbols appended at the end '''
        for s in symbols:
            if s in self:
                raise ValueError(f'[Alphabet] symbol {s!r} already in {self}')
        return Alphabet(self.symbols + tuple(symbols))

    def letters(self):
        ''' the signed alphabet: x, x^-1 for every x '''
        out = []
        for s in self.symbols:
            out.append(Letter(s, 1))
            out.append(Letter(s, -1))
        return out


def check_symbol(symbol):
    if not isinstance(symbol, str) or not symbol:
        raise TokenError(f'[Alphabet] symbols must be non-empty strings, got {symbol!r}')
    if any(c.isspace() for c in symbol) or '^' in symbol:
        raise TokenError(f'[Alphabet] symbol {symbol!r} may not contain whitespace or "^"')


class Letter(NamedTuple):
    symbol: str
    sign: int

    @property
    def token(self):
        return self.symbol if self.sign > 0 else self.symbol + INVERSE_SUFFIX

    def inverse(self):
        return Letter(self.symbol, -self.sign)

    @classmethod
    def parse(cls, token):
        if token.endswith(INVERSE_SUFFIX):
            symbol, sign = token[:-len(INVERSE_SUFFIX)], -1
        else:
            symbol, sign = token, 1
        check_symbol(symbol)
        return cls(symbol, sign)


@dataclass(frozen=True)
class SignedWord:
    alphabet: Alphabet
    letters: Tuple[Letter, ...] = ()

    def __post_init__(self):
        letters = tuple(Letter(*l) for l in self.letters)
        object.__setattr__(self, 'letters', letters)
        for l in letters:
            if l.symbol not in self.alphabet:
                raise AlphabetMismatch(f'[SignedWord] symbol {l.symbol!r} not in alphabet {self.alphabet}')
            if l.sign not in (1, -1):
                raise TokenError(f'[SignedWord] sign must be +1 or -1, got {l.sign}')

    @classmethod
    def trusted(cls, alphabet, letters):
        # letters already validated against alphabet
        obj = object.__new__(cls)
        object.__setattr__(obj, 'alphabet', alphabet)
        object.__setattr__(obj, 'letters', tuple(letters))
        return obj

    @classmethod
    def parse(cls, text, alphabet=None):
        ''' parse a token string such as "x y^-1 #^-1"; ε is the empty string
        Args:
            text: whitespace-separated tokens, `^-1` marks an inverse
            alphabet: Alphabet, if None it is inferred from the tokens (first-appearance order)
        '''
        letters = [Letter.parse(tok) for tok in text.split()]
        if alphabet is None:
            symbols = list(dict.fromkeys(l.symbol for l in letters))
            alphabet = Alphabet(symbols) if symbols else Alphabet.trivial()
        return cls(alphabet, tuple(letters))

    @classmethod
    def positive(cls, alphabet, symbols):
        return cls(alphabet, tuple(Letter(s, 1) for s in symbols))

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return SignedWord.trusted(self.alphabet, self.letters[i])
        return self.letters[i]

    def __add__(self, other):
        _check_same(self.alphabet, other.alphabet, 'SignedWord')
        return SignedWord.trusted(self.alphabet, self.letters + other.letters)

    def __str__(self):
        return ' '.join(l.token for l in self.letters)

    def __repr__(self):
        return f'SignedWord({str(self)!r})'

    def inverse(self):
        return SignedWord.trusted(self.alphabet, tuple(l.inverse() for l in reversed(self.letters)))

    def is_positive(self):
        return all(l.sign > 0 for l in self.letters)

    def over(self, alphabet):
        ''' the same letters read over a larger alphabet '''
        return SignedWord(alphabet, self.letters)

    def parikh(self):
        ''' net exponent sum per alphabet symbol '''
        v = np.zeros(len(self.alphabet), dtype=np.int64)
        for l in self.letters:
            v[self.alphabet.index(l.symbol)] += l.sign
        return v


def _check_same(a, b, who):
    if a != b:
        raise AlphabetMismatch(f'[{who}] alphabet mismatch: {a} vs {b}')


### ------------------------------
### free group F(X)


def sympy_group(alphabet):
    ''' the sympy free group on the symbols of `alphabet` (cached by sympy per symbol tuple) '''
    return free_group(tuple(Symbol(s) for s in alphabet.symbols))[0]


@dataclass(frozen=True)
class FreeGroupElement:
    ''' a reduced word of sympy's free group, together with the Alphabet it lives over '''
    alphabet: Alphabet
    word: object

    @classmethod
    def identity_of(cls, alphabet):
        return cls(alphabet, sympy_group(alphabet).identity)

    @property
    def reduced(self):
        ''' the freely reduced word as a SignedWord '''
        letters = []
        for sym, exp in self.word.array_form:
            letters.extend([Letter(sym.name, 1 if exp > 0 else -1)] * abs(exp))
        return SignedWord.trusted(self.alphabet, tuple(letters))

    def is_identity(self):
        return self.word.is_identity

    def is_zero(self):
        return False

    def is_dead(self):
        return False

    def is_positive(self):
        return not self.word.is_identity and all(exp > 0 for _, exp in self.word.array_form)

    def size(self):
        return len(self.word)

    def exponents(self):
        v = np.zeros(len(self.alphabet), dtype=np.int64)
        for sym, exp in self.word.array_form:
            v[self.alphabet.index(sym.name)] += exp
        return v

    def __str__(self):
        return str(self.reduced) or 'ε'


def free_reduce(w):
    ''' successive deletion of factors x x^-1 and x^-1 x '''
    F = sympy_group(w.alphabet)
    gens = dict(zip(w.alphabet.symbols, F.generators))
    e = F.identity
    for l in w.letters:
        e = e * gens[l.symbol] ** l.sign
    return FreeGroupElement(w.alphabet, e)


def fg_multiply(a, b):
    _check_same(a.alphabet, b.alphabet, 'FreeGroup')
    return FreeGroupElement(a.alphabet, a.word * b.word)


def fg_invert(a):
    return FreeGroupElement(a.alphabet, a.word.inverse())


### ------------------------------
### polycyclic monoid P(X)


@dataclass(frozen=True)
class PolycyclicElement:
    alphabet: Alphabet
    pop: Tuple[str, ...] = ()
    push: Tuple[str, ...] = ()
    zero: bool = False

    @classmethod
    def make_zero(cls, alphabet):
        return cls(alphabet, (), (), True)

    def is_identity(self):
        return not self.zero and not self.pop and not self.push

    def is_zero(self):
        return self.zero

    def is_dead(self):
        # the pop part never shrinks under right multiplication
        return self.zero or len(self.pop) > 0

    def size(self):
        return len(self.pop) + len(self.push)

    def exponents(self):
        assert not self.zero, 'Zero has no exponent vector'
        v = np.zeros(len(self.alphabet), dtype=np.int64)
        for s in self.push:
            v[self.alphabet.index(s)] += 1
        for s in self.pop:
            v[self.alphabet.index(s)] -= 1
        return v

    def __str__(self):
        if self.zero:
            return '0'
        return f"({' '.join(self.pop) or 'ε'}, {' '.join(self.push) or 'ε'})"


def poly_multiply(a, b):
    ''' apply a, then b '''
    _check_same(a.alphabet, b.alphabet, 'Polycyclic')
    if a.zero or b.zero:
        return PolycyclicElement.make_zero(a.alphabet)
    u1, v1 = a.pop, a.push
    u2, v2 = b.pop, b.push
    if len(u2) <= len(v1) and v1[len(v1) - len(u2):] == u2:
        s = v1[:len(v1) - len(u2)]
        return PolycyclicElement(a.alphabet, u1, s + v2)
    if len(v1) < len(u2) and u2[len(u2) - len(v1):] == v1:
        t = u2[:len(u2) - len(v1)]
        return PolycyclicElement(a.alphabet, t + u1, v2)
    return PolycyclicElement.make_zero(a.alphabet)


def poly_generator(alphabet, letter):
    if letter.sign > 0:
        return PolycyclicElement(alphabet, (), (letter.symbol,))
    return PolycyclicElement(alphabet, (letter.symbol,), ())


def poly_eval(w):
    ''' left-to-right product of push (x) and pop (x^-1) actions '''
    e = PolycyclicElement(w.alphabet)
    for l in w.letters:
        e = poly_multiply(e, poly_generator(w.alphabet, l))
        if e.zero:
            break
    return e


### ------------------------------
### free abelian Z^n, products, predicates


@dataclass(frozen=True)
class IntVector:
    components: Tuple[int, ...] = ()

    @property
    def rank(self):
        return len(self.components)

    def is_identity(self):
        return all(c == 0 for c in self.components)

    def is_zero(self):
        return False

    def is_dead(self):
        return False

    def size(self):
        return max((abs(c) for c in self.components), default=0)

    def exponents(self):
        return np.array(self.components, dtype=np.int64)

    def __str__(self):
        return '(' + ', '.join(str(c) for c in self.components) + ')'


def zn_add(a, b):
    if a.rank != b.rank:
        raise RankMismatch(f'[FreeAbelian] rank mismatch: {a.rank} vs {b.rank}')
    # python ints never overflow
    return IntVector(tuple(x + y for x, y in zip(a.components, b.components)))


@dataclass(frozen=True)
class ProductElement:
    parts: tuple = ()

    def is_identity(self):
        return all(p.is_identity() for p in self.parts)

    def is_zero(self):
        return any(p.is_zero() for p in self.parts)

    def is_dead(self):
        return any(p.is_dead() for p in self.parts)

    def size(self):
        return max((p.size() for p in self.parts), default=0)

    def exponents(self):
        if not self.parts:
            return np.zeros(0, dtype=np.int64)
        return np.concatenate([p.exponents() for p in self.parts])

    def __str__(self):
        return '(' + ', '.join(str(p) for p in self.parts) + ')'


def _multiply(a, b):
    if isinstance(a, FreeGroupElement) and isinstance(b, FreeGroupElement):
        return fg_multiply(a, b)
    if isinstance(a, PolycyclicElement) and isinstance(b, PolycyclicElement):
        return poly_multiply(a, b)
    if isinstance(a, IntVector) and isinstance(b, IntVector):
        return zn_add(a, b)
    if isinstance(a, ProductElement) and isinstance(b, ProductElement):
        return product_multiply(a, b)
    raise RankMismatch(f'[Register] cannot multiply {type(a).__name__} by {type(b).__name__}')


def product_multiply(a, b):
    if len(a.parts) != len(b.parts):
        raise RankMismatch(f'[Product] arity mismatch: {len(a.parts)} vs {len(b.parts)}')
    return ProductElement(tuple(_multiply(x, y) for x, y in zip(a.parts, b.parts)))


def is_identity(e):
    return e.is_identity()


def is_zero(e):
    ''' only the polycyclic zero (or a product containing it) is a zero '''
    return e.is_zero()


def is_dead(e):
    return e.is_dead()


def exponent_vector(e):
    return e.exponents()


### ------------------------------
### register monoids


class RegisterMonoid:
    ''' A register monoid together with the syntax of its multipliers.

    Multipliers are SignedWords over the monoid's generators, or for a
    DirectProduct a tuple holding one multiplier per factor.
    '''
    kind = None

    def identity(self):
        raise NotImplementedError()

    def evaluate(self, mult):
        raise NotImplementedError()

    def multiply(self, a, b):
        return _multiply(a, b)

    def empty_multiplier(self):
        raise NotImplementedError()

    def parse_multiplier(self, obj):
        raise NotImplementedError()

    def format_multiplier(self, mult):
        raise NotImplementedError()

    def multiplier_length(self, mult):
        return len(mult)

    def multiplier_parikh(self, mult):
        return mult.parikh()

    def split_multiplier(self, mult):
        ''' unit multipliers whose left-to-right product is `mult` '''
        return [SignedWord.trusted(mult.alphabet, (l,)) for l in mult.letters]

    def generator_letters(self):
        ''' (input token, multiplier) for every generator and formal inverse '''
        return [(l.token, SignedWord.trusted(self.alphabet, (l,))) for l in self.alphabet.letters()]

    @property
    def dim(self):
        return len(self.alphabet)

    def to_dict(self):
        raise NotImplementedError()

    def __eq__(self, other):
        return type(self) is type(other) and self.to_dict() == other.to_dict()

    def __hash__(self):
        return hash(repr(self.to_dict()))

    def __repr__(self):
        return f'{type(self).__name__}({self.to_dict()})'


class _WordMonoid(RegisterMonoid):

    def __init__(self, alphabet):
        if not isinstance(alphabet, Alphabet):
            alphabet = Alphabet(tuple(alphabet))
        self.alphabet = alphabet

    def empty_multiplier(self):
        return SignedWord.trusted(self.alphabet, ())

    def parse_multiplier(self, obj):
        if not isinstance(obj, str):
            raise TokenError(f'[{type(self).__name__}] multiplier must be a token string, got {obj!r}')
        return SignedWord.parse(obj, self.alphabet)

    def format_multiplier(self, mult):
        return str(mult)

    def to_dict(self):
        return {'type': self.kind, 'alphabet': list(self.alphabet.symbols)}


class FreeGroup(_WordMonoid):
    kind = 'free_group'

    def identity(self):
        return FreeGroupElement.identity_of(self.alphabet)

    def evaluate(self, mult):
        _check_same(self.alphabet, mult.alphabet, 'FreeGroup')
        return free_reduce(mult)


class PolycyclicMonoid(_WordMonoid):
    kind = 'polycyclic'

    def identity(self):
        return PolycyclicElement(self.alphabet)

    def evaluate(self, mult):
        _check_same(self.alphabet, mult.alphabet, 'Polycyclic')
        return poly_eval(mult)


class FreeAbelianGroup(_WordMonoid):
    ''' Z^n with named generators (default c1 .. cn); a blind n-counter register '''
    kind = 'free_abelian'

    def __init__(self, rank, alphabet=None):
        if alphabet is None:
            alphabet = Alphabet(tuple(f'c{i + 1}' for i in range(rank)))
        elif not isinstance(alphabet, Alphabet):
            alphabet = Alphabet(tuple(alphabet))
        if len(alphabet) != rank:
            raise RankMismatch(f'[FreeAbelian] rank {rank} but {len(alphabet)} generator names')
        super().__init__(alphabet)
        self.rank = rank

    def identity(self):
        return IntVector((0,) * self.rank)

    def evaluate(self, mult):
        _check_same(self.alphabet, mult.alphabet, 'FreeAbelian')
        return IntVector(tuple(int(c) for c in mult.parikh()))

    def to_dict(self):
        out = {'type': self.kind, 'rank': self.rank}
        if self.alphabet.symbols != tuple(f'c{i + 1}' for i in range(self.rank)):
            out['alphabet'] = list(self.alphabet.symbols)
        return out


class TrivialMonoid(RegisterMonoid):
    kind = 'trivial'

    def __init__(self):
        self.alphabet = Alphabet.trivial()

    def identity(self):
        return IntVector(())

    def evaluate(self, mult):
        if len(mult) != 0:
            raise AlphabetMismatch('[Trivial] the trivial monoid only has the empty multiplier')
        return IntVector(())

    def empty_multiplier(self):
        return SignedWord.trusted(self.alphabet, ())

    def parse_multiplier(self, obj):
        if obj not in ('', None):
            raise TokenError(f'[Trivial] the trivial monoid only has the empty multiplier, got {obj!r}')
        return self.empty_multiplier()

    def format_multiplier(self, mult):
        return ''

    def generator_letters(self):
        return []

    def to_dict(self):
        return {'type': self.kind}


class DirectProduct(RegisterMonoid):
    kind = 'product'

    def __init__(self, factors):
        self.factors = tuple(factors)
        assert len(self.factors) > 0, 'a direct product needs at least one factor'

    def identity(self):
        return ProductElement(tuple(f.identity() for f in self.factors))

    def evaluate(self, mult):
        if len(mult) != len(self.factors):
            raise RankMismatch(f'[Product] expected {len(self.factors)} multipliers, got {len(mult)}')
        return ProductElement(tuple(f.evaluate(m) for f, m in zip(self.factors, mult)))

    def empty_multiplier(self):
        return tuple(f.empty_multiplier() for f in self.factors)

    def embed(self, i, mult):
        ''' the multiplier acting as `mult` on factor i and as identity elsewhere '''
        out = list(self.empty_multiplier())
        out[i] = mult
        return tuple(out)

    def parse_multiplier(self, obj):
        if not isinstance(obj, (list, tuple)) or len(obj) != len(self.factors):
            raise TokenError(f'[Product] multiplier must be a list of {len(self.factors)} entries, got {obj!r}')
        return tuple(f.parse_multiplier(o) for f, o in zip(self.factors, obj))

    def format_multiplier(self, mult):
        return [f.format_multiplier(m) for f, m in zip(self.factors, mult)]

    def multiplier_length(self, mult):
        return sum(f.multiplier_length(m) for f, m in zip(self.factors, mult))

    def multiplier_parikh(self, mult):
        parts = [f.multiplier_parikh(m) for f, m in zip(self.factors, mult)]
        return np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)

    def split_multiplier(self, mult):
        out = []
        for i, (f, m) in enumerate(zip(self.factors, mult)):
            out.extend(self.embed(i, u) for u in f.split_multiplier(m))
        return out

    def generator_letters(self):
        out = []
        for i, f in enumerate(self.factors):
            for token, m in f.generator_letters():
                out.append((f'{token}@{i + 1}', self.embed(i, m)))
        return out

    @property
    def dim(self):
        return sum(f.dim for f in self.factors)

    def to_dict(self):
        return {'type': self.kind, 'factors': [f.to_dict() for f in self.factors]}


def get_monoid(tag):
    ''' build a register monoid from its document tag, e.g. {"type": "polycyclic", "alphabet": ["x"]} '''
    kind = tag.get('type')
    if kind == 'free_group':
        return FreeGroup(Alphabet(tuple(tag['alphabet'])))
    elif kind == 'polycyclic':
        return PolycyclicMonoid(Alphabet(tuple(tag['alphabet'])))
    elif kind == 'free_abelian':
        alphabet = tag.get('alphabet')
        return FreeAbelianGroup(int(tag['rank']), None if alphabet is None else Alphabet(tuple(alphabet)))
    elif kind == 'trivial':
        return TrivialMonoid()
    elif kind == 'product':
        return DirectProduct([get_monoid(f) for f in tag['factors']])
    else:
        raise NotImplementedError(f'Unknown monoid type {kind!r}, choose from [free_group, polycyclic, free_abelian, trivial, product]')
