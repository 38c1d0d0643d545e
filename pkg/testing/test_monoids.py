import itertools

import numpy as np

from valence.monoids import *
from valence.utils import AlphabetMismatch, RankMismatch, log

X1 = Alphabet(('x',))
X2 = Alphabet(('x', 'y'))
X3 = Alphabet(('x', 'y', 'z'))


def W(text, alphabet=X2):
    return SignedWord.parse(text, alphabet)


def all_words(alphabet, max_len):
    letters = list(alphabet.letters())
    for n in range(max_len + 1):
        for ls in itertools.product(letters, repeat=n):
            yield SignedWord.trusted(alphabet, ls)


### reference: stack actions as partial functions

def apply_word(w, stack):
    for l in w.letters:
        if l.sign > 0:
            stack = stack + (l.symbol,)
        elif stack and stack[-1] == l.symbol:
            stack = stack[:-1]
        else:
            return None
    return stack


def apply_element(e, stack):
    if stack is None or e.zero:
        return None
    k = len(e.pop)
    if stack[len(stack) - k:] != e.pop:
        return None
    return stack[:len(stack) - k] + e.push


def stacks(alphabet, max_len):
    for n in range(max_len + 1):
        yield from itertools.product(alphabet.symbols, repeat=n)


### free group

def test_free_reduce_examples():
    assert free_reduce(W('x x^-1')).is_identity()
    assert str(free_reduce(W('x^-1 x y'))) == 'y'
    assert str(free_reduce(W('x y y^-1 x^-1 x'))) == 'x'


def test_fg_multiply_examples():
    assert str(fg_multiply(free_reduce(W('x y')), free_reduce(W('y^-1')))) == 'x'
    a = free_reduce(W('x y^-1'))
    assert fg_multiply(free_reduce(W('')), a) == a
    assert str(fg_multiply(free_reduce(W('x^-1')), free_reduce(W('x y')))) == 'y'
    assert fg_multiply(a, fg_invert(a)).is_identity()


def test_free_reduce_confluence():
    # exhaustive rewriting: every maximal sequence of deletions reaches the same word
    def normal_forms(letters):
        out = set()
        stuck = True
        for i in range(len(letters) - 1):
            a, b = letters[i], letters[i + 1]
            if a.symbol == b.symbol and a.sign == -b.sign:
                stuck = False
                out |= normal_forms(letters[:i] + letters[i + 2:])
        return {letters} if stuck else out

    for w in all_words(X2, 6):
        forms = normal_forms(w.letters)
        assert len(forms) == 1
        assert free_reduce(w).reduced.letters == forms.pop()


def reduced_words(alphabet, max_len):
    ''' freely reduced words, depth first '''
    def dfs(word):
        yield SignedWord.trusted(alphabet, word)
        if len(word) == max_len:
            return
        for l in alphabet.letters():
            if not word or l != word[-1].inverse():
                yield from dfs(word + (l,))

    yield from dfs(())


def test_free_reduce_idempotent():
    for alphabet, n in [(X1, 10), (X3, 5)]:
        for w in all_words(alphabet, n):
            r = free_reduce(w)
            assert free_reduce(r.reduced) == r
    # every free_reduce(w).reduced with |w| <= 10 is one of these
    for r in reduced_words(X2, 10):
        assert free_reduce(r).reduced == r, str(r)


def test_free_reduce_is_morphism():
    gens = {l: free_reduce(SignedWord.trusted(X2, (l,))) for l in X2.letters()}
    one = FreeGroupElement.identity_of(X2)

    def dfs(letters, prefixes):
        w = SignedWord.trusted(X2, letters)
        assert free_reduce(w) == prefixes[-1], str(w)
        suffix = one
        for k in range(len(letters), -1, -1):
            assert fg_multiply(prefixes[k], suffix) == prefixes[-1], (str(w), k)
            if k:
                suffix = fg_multiply(gens[letters[k - 1]], suffix)
        if len(letters) < 8:
            for l in X2.letters():
                dfs(letters + (l,), prefixes + [fg_multiply(prefixes[-1], gens[l])])

    dfs((), [one])


def test_fg_alphabet_mismatch():
    try:
        fg_multiply(free_reduce(W('x')), free_reduce(W('x', X3)))
    except AlphabetMismatch:
        return
    assert False, 'expected AlphabetMismatch'


### polycyclic

def test_poly_eval_examples():
    assert poly_eval(W('x y^-1')).is_zero()
    assert poly_eval(W('x x^-1')).is_identity()
    e = poly_eval(W('x^-1 x'))
    assert e.pop == ('x',) and e.push == ('x',)
    assert poly_multiply(e, e) == e


def test_poly_multiply_examples():
    push_x = PolycyclicElement(X2, (), ('x',))
    pop_x = PolycyclicElement(X2, ('x',), ())
    pop_y = PolycyclicElement(X2, ('y',), ())
    assert poly_multiply(push_x, pop_y).is_zero()
    assert poly_multiply(push_x, pop_x).is_identity()
    assert poly_multiply(pop_x, push_x) == PolycyclicElement(X2, ('x',), ('x',))
    zero = PolycyclicElement.make_zero(X2)
    assert poly_multiply(zero, push_x).is_zero() and poly_multiply(push_x, zero).is_zero()


def test_poly_eval_matches_stack_semantics():
    for w in all_words(X2, 5):
        e = poly_eval(w)
        for s in stacks(X2, 6):
            assert apply_element(e, s) == apply_word(w, s), (str(w), s)


def test_poly_multiply_matches_composition():
    elements = {poly_eval(w) for w in all_words(X2, 3)}
    domain = list(stacks(X2, 6))
    for a in elements:
        for b in elements:
            ab = poly_multiply(a, b)
            for s in domain:
                assert apply_element(ab, s) == apply_element(b, apply_element(a, s)), (str(a), str(b), s)


def test_one_sided_inside_two_sided():
    # zero absorbs and pops only grow, so those prefixes cannot reach the identity
    gens = {l: poly_generator(X2, l) for l in X2.letters()}
    seen = 0

    def dfs(letters, e):
        nonlocal seen
        if e.is_identity():
            seen += 1
            assert poly_eval(SignedWord.trusted(X2, letters)).is_identity()
            assert free_reduce(SignedWord.trusted(X2, letters)).is_identity(), letters
        for l in X2.letters():
            f = poly_multiply(e, gens[l])
            if not f.zero and not f.pop and len(f.push) <= 10 - len(letters) - 1:
                dfs(letters + (l,), f)

    dfs((), PolycyclicElement(X2))
    # 1-sided Dyck words over two generators up to length 10
    assert seen == 1 + 2 + 8 + 40 + 224 + 1344


def test_associativity():
    def splits(w):
        n = len(w)
        for i in range(n + 1):
            for j in range(i, n + 1):
                yield (SignedWord.trusted(w.alphabet, w.letters[:i]), SignedWord.trusted(w.alphabet, w.letters[i:j]),
                       SignedWord.trusted(w.alphabet, w.letters[j:]))

    def check(a, b, c, mul):
        assert mul(mul(a, b), c) == mul(a, mul(b, c))

    for w in all_words(X2, 4):
        for u, v, x in splits(w):
            check(free_reduce(u), free_reduce(v), free_reduce(x), fg_multiply)
            check(poly_eval(u), poly_eval(v), poly_eval(x), poly_multiply)

    words = list(all_words(X1, 4))
    fg = [free_reduce(w) for w in words]
    pc = [poly_eval(w) for w in words]
    for a, b, c in itertools.product(range(len(words)), repeat=3):
        check(fg[a], fg[b], fg[c], fg_multiply)
        check(pc[a], pc[b], pc[c], poly_multiply)


def test_dead_registers():
    assert is_dead(poly_eval(W('x y^-1')))
    assert is_dead(poly_eval(W('x^-1')))
    assert not is_dead(poly_eval(W('x x^-1 y y^-1 x')))
    assert not is_dead(free_reduce(W('x^-1')))


### free abelian, trivial, products

def test_zn_add_and_predicates():
    v = zn_add(IntVector((1, -2)), IntVector((-1, 2)))
    assert v == IntVector((0, 0)) and is_identity(v)
    assert not is_zero(free_reduce(W('')))
    assert not is_zero(v)
    try:
        zn_add(IntVector((1,)), IntVector((1, 2)))
    except RankMismatch:
        pass
    else:
        assert False, 'expected RankMismatch'


def test_product_multiply():
    a = ProductElement((PolycyclicElement(X1, (), ('x',)), IntVector((1,))))
    b = ProductElement((PolycyclicElement(X1, ('x',), ()), IntVector((-1,))))
    ab = product_multiply(a, b)
    assert ab == ProductElement((PolycyclicElement(X1), IntVector((0,))))
    assert is_identity(ab)
    ba = product_multiply(b, a)
    assert not is_identity(ba) and not is_zero(ba)


def test_exponent_vector():
    assert np.array_equal(exponent_vector(free_reduce(W('x y^-1 y^-1'))), [1, -2])
    assert np.array_equal(exponent_vector(poly_eval(W('x^-1 y'))), [-1, 1])
    assert np.array_equal(exponent_vector(IntVector((3, -1))), [3, -1])


def test_register_monoids():
    fa = FreeAbelianGroup(2)
    assert [s for s in fa.alphabet] == ['c1', 'c2']
    assert fa.evaluate(fa.parse_multiplier('c1 c1 c2^-1')) == IntVector((2, -1))
    assert fa.to_dict() == {'type': 'free_abelian', 'rank': 2}
    assert get_monoid(fa.to_dict()) == fa

    p = get_monoid({'type': 'product', 'factors': [{'type': 'polycyclic', 'alphabet': ['x']}, {'type': 'free_abelian', 'rank': 1}]})
    m = p.parse_multiplier(['x', 'c1^-1'])
    assert p.format_multiplier(m) == ['x', 'c1^-1']
    assert p.multiplier_length(m) == 2
    assert len(p.split_multiplier(m)) == 2
    assert p.evaluate(m) == ProductElement((PolycyclicElement(Alphabet(('x',)), (), ('x',)), IntVector((-1,))))
    assert [tok for tok, _ in p.generator_letters()] == ['x@1', 'x^-1@1', 'c1@2', 'c1^-1@2']

    t = TrivialMonoid()
    assert t.evaluate(t.parse_multiplier('')).is_identity()
    try:
        get_monoid({'type': 'heisenberg'})
    except NotImplementedError:
        pass
    else:
        assert False, 'expected NotImplementedError'


def test_token_syntax():
    w = SignedWord.parse('x y^-1 #^-1')
    assert w.alphabet.symbols == ('x', 'y', '#')
    assert [l.token for l in w.letters] == ['x', 'y^-1', '#^-1']
    assert str(w.inverse()) == '# y x^-1'
    assert SignedWord.parse('').letters == ()


if __name__ == '__main__':
    for name, fn in list(globals().items()):
        if name.startswith('test_') and callable(fn):
            fn()
            log(f'[INFO] {name} passed')
