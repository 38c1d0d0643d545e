import sys
import json
import argparse

from valence.automaton import Acceptance, SearchBudget, accepts, enumerate_language
from valence.constructions import (automaton_to_transducer, normalize_multipliers, padding_construction,
                                   product_automaton, transducer_to_automaton)
from valence.dyck import insert_padding, is_one_sided_dyck, is_two_sided_dyck, minima
from valence.grammar import GrammarOracle, automaton_to_cfg, format_grammar
from valence.monoids import DirectProduct, FreeGroup, PolycyclicMonoid, SignedWord, get_monoid
from valence.provider import load_automaton, load_transducer, save
from valence.utils import *

EXIT_USAGE = 64
EXIT_DOCUMENT = 65

VERDICT_CODES = {
    Acceptance.ACCEPTED: 0,
    Acceptance.REJECTED: 1,
    Acceptance.BUDGET_EXHAUSTED: 2,
}


class UsageError(Exception):
    pass


class ArgumentParser(argparse.ArgumentParser):
    # argparse exits with 2, which `member` uses for UNKNOWN
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f'{self.prog}: {message}')


def _show(word):
    return format_word(word) if word else 'ε'


def _signed_word(text):
    try:
        return SignedWord.parse(text)
    except ValueError as e:
        raise UsageError(f'[word] {e}')


def _input_word(a, text):
    w = parse_input_word(text)
    for c in w:
        if c not in a.input_alphabet:
            raise UsageError(f'[word] letter {c!r} not in input alphabet {list(a.input_alphabet)}')
    return w


def cmd_member(opt):
    a = load_automaton(opt.file)
    w = _input_word(a, opt.word)
    if opt.exact:
        if not isinstance(a.monoid, (FreeGroup, PolycyclicMonoid)):
            raise UsageError(f'[member] --exact needs a free_group or polycyclic register, got {a.monoid.kind}')
        verdict = Acceptance.ACCEPTED if GrammarOracle(a).member(w) else Acceptance.REJECTED
    else:
        verdict = accepts(a, w, SearchBudget.from_opt(opt))
    print(verdict.value)
    return VERDICT_CODES[verdict]


def cmd_enum(opt):
    a = load_automaton(opt.file)
    res = enumerate_language(a, opt.max_len, SearchBudget.from_opt(opt), verbose=opt.verbose)
    for w in res.sorted():
        print(_show(w))
    return 0 if res.complete else 2


def cmd_product(opt):
    a1, a2 = load_automaton(opt.f1), load_automaton(opt.f2)
    save(product_automaton(a1, a2), opt.output)
    return 0


def cmd_pad_construct(opt):
    a = normalize_multipliers(load_automaton(opt.file))
    save(padding_construction(a, register=opt.register), opt.output)
    return 0


def cmd_normalize(opt):
    save(normalize_multipliers(load_automaton(opt.file)), opt.output)
    return 0


def cmd_to_grammar(opt):
    g = automaton_to_cfg(load_automaton(opt.file))
    with open(opt.output, 'w', encoding='utf-8', newline='\n') as f:
        f.write(format_grammar(g) + '\n')
    log(f'[INFO] saved {opt.output}: {g!r}')
    return 0


def cmd_to_transducer(opt):
    a = load_automaton(opt.file)
    gens = None
    if opt.gens:
        if isinstance(a.monoid, DirectProduct):
            raise ConstructionError(f'[to-transducer] --gens needs a single generator alphabet, got a {a.monoid.kind} register')
        gens = [SignedWord.parse(g, a.monoid.alphabet) for g in opt.gens]
    save(automaton_to_transducer(a, gens), opt.output)
    return 0


def cmd_from_transducer(opt):
    t = load_transducer(opt.file)
    try:
        monoid = get_monoid(json.loads(opt.monoid))
    except (json.JSONDecodeError, KeyError, TypeError, AttributeError, NotImplementedError) as e:
        raise UsageError(f'[from-transducer] --monoid: {e}')
    save(transducer_to_automaton(t, monoid), opt.output)
    return 0


def cmd_dyck(opt):
    w = _signed_word(opt.word)
    ok = is_one_sided_dyck(w) if opt.one_sided else is_two_sided_dyck(w)
    print('YES' if ok else 'NO')
    return 0


def cmd_minima(opt):
    for e in sorted(minima(_signed_word(opt.word)), key=lambda e: (e.size(), str(e))):
        print(e)
    return 0


def cmd_pad(opt):
    print(insert_padding(_signed_word(opt.word)))
    return 0


def cmd_compare(opt):
    a1, a2 = load_automaton(opt.f1), load_automaton(opt.f2)
    if opt.register is not None:
        cls = FreeGroup if opt.register == 'fg' else PolycyclicMonoid
        if not isinstance(a2.monoid, (FreeGroup, PolycyclicMonoid)):
            raise UsageError(f'[compare] --register needs a free_group or polycyclic register, got {a2.monoid.kind}')
        a2 = a2.reinterpret(cls(a2.monoid.alphabet))
    budget = SearchBudget.from_opt(opt)
    log(f'==> comparing {opt.f1} and {opt.f2} up to length {opt.max_len}')
    r1 = enumerate_language(a1, opt.max_len, budget, verbose=opt.verbose)
    r2 = enumerate_language(a2, opt.max_len, budget, verbose=opt.verbose)
    diff = sorted(r1.words ^ r2.words, key=length_lex_key)
    for w in diff:
        print(f"{'<' if w in r1.words else '>'} {_show(w)}")
    if not (r1.complete and r2.complete):
        log('[WARN] some membership queries were inconclusive')
        return 2
    return 0 if not diff else 1


def get_parser():
    parser = ArgumentParser(prog='main_valence.py', description='valence automata toolkit')
    sub = parser.add_subparsers(dest='command', parser_class=ArgumentParser)
    sub.required = True

    def search_options(p):
        p.add_argument('--budget', type=int, default=None, help="register size cap, default |w| * max multiplier length * |states| + 8")
        p.add_argument('--max_visited', type=int, default=200_000, help="max configurations visited per query")

    p = sub.add_parser('member', help="membership of one word")
    p.add_argument('file', type=str)
    p.add_argument('word', type=str, help="space separated letters, or run together if single characters")
    p.add_argument('--exact', action='store_true', help="use the grammar oracle (free_group / polycyclic only)")
    search_options(p)
    p.set_defaults(func=cmd_member)

    p = sub.add_parser('enum', help="accepted words up to a length")
    p.add_argument('file', type=str)
    p.add_argument('--max-len', dest='max_len', type=int, required=True)
    p.add_argument('--verbose', action='store_true')
    search_options(p)
    p.set_defaults(func=cmd_enum)

    p = sub.add_parser('product', help="intersection through a direct product register")
    p.add_argument('f1', type=str)
    p.add_argument('f2', type=str)
    p.add_argument('-o', '--output', type=str, required=True)
    p.set_defaults(func=cmd_product)

    p = sub.add_parser('pad-construct', help="polycyclic automaton -> padded automaton over X ∪ {#}")
    p.add_argument('file', type=str)
    p.add_argument('--register', type=str, default='fg', choices=['fg', 'poly'])
    p.add_argument('-o', '--output', type=str, required=True)
    p.set_defaults(func=cmd_pad_construct)

    p = sub.add_parser('normalize', help="subdivide edges down to unit multipliers")
    p.add_argument('file', type=str)
    p.add_argument('-o', '--output', type=str, required=True)
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser('to-grammar', help="context-free grammar of a free_group / polycyclic automaton")
    p.add_argument('file', type=str)
    p.add_argument('-o', '--output', type=str, required=True)
    p.set_defaults(func=cmd_to_grammar)

    p = sub.add_parser('to-transducer', help="read an automaton as a transducer from generator tokens to input letters")
    p.add_argument('file', type=str)
    p.add_argument('--gens', type=str, nargs='*', default=None, help="generator words every multiplier must factor into")
    p.add_argument('-o', '--output', type=str, required=True)
    p.set_defaults(func=cmd_to_transducer)

    p = sub.add_parser('from-transducer', help="evaluate transducer input words in a register monoid")
    p.add_argument('file', type=str)
    p.add_argument('--monoid', type=str, required=True, help='monoid tag as JSON, e.g. \'{"type": "polycyclic", "alphabet": ["x"]}\'')
    p.add_argument('-o', '--output', type=str, required=True)
    p.set_defaults(func=cmd_from_transducer)

    p = sub.add_parser('dyck', help="Dyck predicates of a signed word")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument('--one-sided', dest='one_sided', action='store_true')
    group.add_argument('--two-sided', dest='two_sided', action='store_true')
    p.add_argument('word', type=str)
    p.set_defaults(func=cmd_dyck)

    p = sub.add_parser('minima', help="minimal prefix elements of a signed word")
    p.add_argument('word', type=str)
    p.set_defaults(func=cmd_minima)

    p = sub.add_parser('pad', help="canonical identity padding of a 1-sided Dyck word")
    p.add_argument('word', type=str)
    p.set_defaults(func=cmd_pad)

    p = sub.add_parser('compare', help="symmetric difference of two languages up to a length")
    p.add_argument('f1', type=str)
    p.add_argument('f2', type=str)
    p.add_argument('--max-len', dest='max_len', type=int, required=True)
    p.add_argument('--register', type=str, default=None, choices=['fg', 'poly'], help="read the second automaton over this register")
    p.add_argument('--verbose', action='store_true')
    search_options(p)
    p.set_defaults(func=cmd_compare)

    return parser


def main(argv=None):
    try:
        opt = get_parser().parse_args(argv)
        return opt.func(opt)
    except UsageError as e:
        log(f'[ERROR] {e}')
        return EXIT_USAGE
    except DocumentError as e:
        log(f'[ERROR] {e}')
        return EXIT_DOCUMENT
    except (OSError, NotOneSidedDyck, ConstructionError, InexpressibleMultiplier, AlphabetMismatch, RankMismatch, TokenError) as e:
        log(f'[ERROR] {e}')
        return EXIT_USAGE


if __name__ == '__main__':
    sys.exit(main())
