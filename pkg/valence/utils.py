import itertools

from rich.console import Console

# results go to stdout, diagnostics to stderr
console = Console(stderr=True)

EPSILON = ''


def log(*args, **kwargs):
    # messages carry bracketed keys such as [document] or edges[0].mult, print them verbatim
    kwargs.setdefault('markup', False)
    console.print(*args, **kwargs)


def words_up_to(alphabet, max_len):
    ''' all words over `alphabet` of length <= max_len, in length-lexicographic order
    Args:
        alphabet: iterable of letters (str), order defines lexicographic order
        max_len: int >= 0
    Returns:
        generator of tuples of letters
    '''
    letters = list(alphabet)
    for n in range(max_len + 1):
        for w in itertools.product(letters, repeat=n):
            yield w


def length_lex_key(word):
    return (len(word), tuple(word))


def format_word(word):
    # input words are printed letter by letter, space separated; ε prints as ''
    return ' '.join(word)


def parse_input_word(text):
    text = text.strip()
    if not text:
        return ()
    if any(c.isspace() for c in text):
        return tuple(text.split())
    # single-character letters may be written run together, e.g. "abba"
    return tuple(text)


### ------------------------------
### errors


class AlphabetMismatch(ValueError):
    pass


class RankMismatch(ValueError):
    pass


class ConstructionError(ValueError):
    pass


class InexpressibleMultiplier(ValueError):
    pass


class NotOneSidedDyck(ValueError):
    pass


class TokenError(ValueError):
    pass


class DocumentError(ValueError):

    def __init__(self, key, message):
        super().__init__(f'[document] {key}: {message}')
        self.key = key
