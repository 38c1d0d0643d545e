from valence.dyck import *
from valence.monoids import Alphabet, FreeGroup, Letter, SignedWord, free_reduce, poly_eval
from valence.utils import NotOneSidedDyck, TokenError, log

X1 = Alphabet(('x',))
X2 = Alphabet(('x', 'y'))


def W(text, alphabet=X2):
    return SignedWord.parse(text, alphabet)


def P(text):
    return SignedWord.parse(text, padded_alphabet(X2))


def two_sided_dyck_words(alphabet, max_len):
    ''' every w with free_reduce(w) = ε and |w| <= max_len, by depth-first search on the reduced prefix '''
    letters = alphabet.letters()

    def dfs(word, stack):
        if not stack:
            yield SignedWord.trusted(alphabet, tuple(word))
        for l in letters:
            if stack and stack[-1] == l.inverse():
                nstack = stack[:-1]
            else:
                nstack = stack + [l]
            if len(word) + 1 + len(nstack) <= max_len:
                yield from dfs(word + [l], nstack)

    yield from dfs([], [])


def one_sided_dyck_words(alphabet, max_len):
    def dfs(word, stack):
        if not stack:
            yield SignedWord.trusted(alphabet, tuple(word))
        for s in alphabet.symbols:
            if len(word) + 2 + len(stack) <= max_len:
                yield from dfs(word + [Letter(s, 1)], stack + [s])
        if stack:
            yield from dfs(word + [Letter(stack[-1], -1)], stack[:-1])

    yield from dfs([], [])


def test_dyck_examples():
    assert is_two_sided_dyck(W('x^-1 x'))
    assert is_two_sided_dyck(W('x x^-1'))
    assert not is_two_sided_dyck(W('x y^-1'))
    assert not is_one_sided_dyck(W('x^-1 x'))
    assert is_one_sided_dyck(W('x x^-1'))
    assert is_one_sided_dyck(W('x x y y^-1 x^-1 x^-1'))


def test_minima_examples():
    identity = free_reduce(W(''))
    assert minima(W('x x^-1')) == {identity}
    assert minima(W('x^-1 x')) == {free_reduce(W('x^-1'))}
    assert minima(W('')) == {identity}


def test_prefix_positivity_examples():
    assert all_prefixes_positive_or_identity(W('x x^-1'))
    assert not all_prefixes_positive_or_identity(W('x^-1 x'))
    assert all_prefixes_positive_or_identity(W('x y x^-1'))


def test_three_way_equivalence():
    identity = free_reduce(W(''))
    n = 0
    for w in two_sided_dyck_words(X2, 10):
        one = is_one_sided_dyck(w)
        assert one == all_prefixes_positive_or_identity(w), str(w)
        assert one == (minima(w) == {identity}), str(w)
        n += 1
    assert n > 1000


def test_strict_containment():
    w = W('x^-1 x')
    assert is_two_sided_dyck(w) and not is_one_sided_dyck(w)
    for w in one_sided_dyck_words(X2, 10):
        assert is_two_sided_dyck(w)


def test_insert_padding_examples():
    assert str(insert_padding(W('x x^-1'))) == 'x # #^-1 x^-1 # #^-1'
    assert str(insert_padding(W(''))) == ''
    assert str(insert_padding(W('x x x^-1 x^-1'))) == 'x # x # #^-1 x^-1 # #^-1 #^-1 x^-1 # #^-1'
    try:
        insert_padding(W('x^-1 x'))
    except NotOneSidedDyck:
        pass
    else:
        assert False, 'expected NotOneSidedDyck'


def test_padding_symbol_must_be_fresh():
    for make in [lambda: padded_alphabet(Alphabet(('x', '#'))),
                 lambda: insert_padding(SignedWord.parse('# #^-1')),
                 lambda: padded_alphabet(X2, pad='y')]:
        try:
            make()
        except TokenError:
            pass
        else:
            assert False, 'expected TokenError'


def test_insert_padding_is_found_by_search():
    # the canonical padding is among the identity paddings with blocks <= 3
    for w in one_sided_dyck_words(X1, 6):
        p = insert_padding(w).word
        found = [q for q in iter_paddings(w, 3) if poly_eval(q).is_identity()]
        assert p in found, str(w)


def test_insert_padding_identity():
    n = 0
    for w in one_sided_dyck_words(X2, 10):
        p = insert_padding(w).word
        assert is_permissible_padding(p, w)
        assert poly_eval(p).is_identity()
        assert free_reduce(p).is_identity()
        assert strip_padding(p, alphabet=X2) == w
        n += 1
    assert n > 100


def test_permissible_padding_examples():
    assert is_permissible_padding(P('x # #^-1 x^-1 # #^-1'), W('x x^-1'))
    assert not is_permissible_padding(P('x x^-1'), W('x x^-1'))
    assert not is_permissible_padding(P('#^-1 x # x^-1 #'), W('x x^-1'))
    assert str(strip_padding(P('x # #^-1 x^-1 # #^-1'))) == 'x x^-1'
    try:
        PaddedWord(P('x x^-1'), W('x x^-1'))
    except ValueError:
        pass
    else:
        assert False, 'expected ValueError'


def test_no_identity_padding_for_two_sided_only():
    fg = FreeGroup(padded_alphabet(X2))
    for w in two_sided_dyck_words(X2, 6):
        if is_one_sided_dyck(w):
            continue
        for p in iter_paddings(w, len(w) + 1):
            assert not fg.evaluate(p).is_identity(), (str(w), str(p))


def test_free_group_factor_lemma():
    # w = u x v with w = 1: u ends in x^-1 e or v starts with e x^-1, e = 1
    for w in two_sided_dyck_words(X2, 8):
        for k, l in enumerate(w.letters):
            if l.sign < 0:
                continue
            u, v = w.letters[:k], w.letters[k + 1:]
            inv = l.inverse()
            left = any(u[i] == inv and free_reduce(SignedWord.trusted(X2, u[i + 1:])).is_identity()
                       for i in range(len(u)))
            right = any(v[j] == inv and free_reduce(SignedWord.trusted(X2, v[:j])).is_identity()
                        for j in range(len(v)))
            assert left or right, (str(w), k)


if __name__ == '__main__':
    for name, fn in list(globals().items()):
        if name.startswith('test_') and callable(fn):
            fn()
            log(f'[INFO] {name} passed')
