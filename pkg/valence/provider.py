import os
import json

from .automaton import Edge, ValenceAutomaton
from .monoids import get_monoid
from .transducer import FiniteTransducer, TransducerEdge
from .utils import EPSILON, DocumentError, log

VALENCE_KEYS = ('kind', 'monoid', 'input_alphabet', 'states', 'initial', 'finals', 'edges')
TRANSDUCER_KEYS = ('kind', 'input_alphabet', 'output_alphabet', 'states', 'initial', 'finals', 'edges')


def _require(doc, keys):
    if not isinstance(doc, dict):
        raise DocumentError('<root>', 'expected a JSON object')
    for key in keys:
        if key not in doc:
            raise DocumentError(key, 'missing')


def _string_list(doc, key):
    value = doc[key]
    if not isinstance(value, list) or not all(isinstance(s, str) for s in value):
        raise DocumentError(key, 'expected a list of strings')
    return value


def _check_states(doc):
    states = _string_list(doc, 'states')
    if not states:
        raise DocumentError('states', 'an automaton needs at least one state')
    if len(set(states)) != len(states):
        raise DocumentError('states', 'duplicate state names')
    if doc['initial'] not in states:
        raise DocumentError('initial', f'{doc["initial"]!r} is not a state')
    for q in _string_list(doc, 'finals'):
        if q not in states:
            raise DocumentError('finals', f'{q!r} is not a state')
    if not isinstance(doc['edges'], list):
        raise DocumentError('edges', 'expected a list of edge objects')
    return set(states)


def _edge_field(edge, i, field):
    if not isinstance(edge, dict) or field not in edge:
        raise DocumentError(f'edges[{i}].{field}', 'missing')
    return edge[field]


### ------------------------------
### valence automata


def automaton_to_document(a):
    ''' canonical document: keys in VALENCE_KEYS order, finals in state order, edges sorted '''
    edges = []
    for e in a.edges:
        edges.append({'from': e.src, 'to': e.dst, 'mult': a.monoid.format_multiplier(e.mult), 'read': e.read})
    edges.sort(key=lambda d: (d['from'], d['to'], json.dumps(d['mult'], ensure_ascii=False), d['read']))
    return {
        'kind': 'valence',
        'monoid': a.monoid.to_dict(),
        'input_alphabet': list(a.input_alphabet),
        'states': list(a.states),
        'initial': a.initial,
        'finals': [q for q in a.states if q in a.finals],
        'edges': edges,
    }


def document_to_automaton(doc, name=None):
    _require(doc, VALENCE_KEYS)
    if doc['kind'] != 'valence':
        raise DocumentError('kind', f'expected "valence", got {doc["kind"]!r}')
    try:
        monoid = get_monoid(doc['monoid'])
    except (KeyError, TypeError, ValueError, AttributeError, NotImplementedError) as e:
        raise DocumentError('monoid', str(e))
    alphabet = _string_list(doc, 'input_alphabet')
    states = _check_states(doc)

    edges = []
    for i, edge in enumerate(doc['edges']):
        src, dst = _edge_field(edge, i, 'from'), _edge_field(edge, i, 'to')
        read = _edge_field(edge, i, 'read')
        for field, q in (('from', src), ('to', dst)):
            if q not in states:
                raise DocumentError(f'edges[{i}].{field}', f'{q!r} is not a state')
        if read != EPSILON and read not in alphabet:
            raise DocumentError(f'edges[{i}].read', f'{read!r} is not in the input alphabet')
        try:
            mult = monoid.parse_multiplier(_edge_field(edge, i, 'mult'))
        except ValueError as e:
            raise DocumentError(f'edges[{i}].mult', str(e))
        edges.append(Edge(src, mult, read, dst))

    return ValenceAutomaton(monoid, doc['states'], doc['initial'], doc['finals'], edges, alphabet, name=name)


### ------------------------------
### transducers


def transducer_to_document(t):
    edges = [{'from': e.src, 'to': e.dst, 'in': ' '.join(e.inp), 'out': ' '.join(e.out)} for e in t.edges]
    edges.sort(key=lambda d: (d['from'], d['to'], d['in'], d['out']))
    return {
        'kind': 'transducer',
        'input_alphabet': list(t.input_alphabet),
        'output_alphabet': list(t.output_alphabet),
        'states': list(t.states),
        'initial': t.initial,
        'finals': [q for q in t.states if q in t.finals],
        'edges': edges,
    }


def document_to_transducer(doc, name=None):
    _require(doc, TRANSDUCER_KEYS)
    if doc['kind'] != 'transducer':
        raise DocumentError('kind', f'expected "transducer", got {doc["kind"]!r}')
    ins = set(_string_list(doc, 'input_alphabet'))
    outs = set(_string_list(doc, 'output_alphabet'))
    states = _check_states(doc)

    edges = []
    for i, edge in enumerate(doc['edges']):
        src, dst = _edge_field(edge, i, 'from'), _edge_field(edge, i, 'to')
        for field, q in (('from', src), ('to', dst)):
            if q not in states:
                raise DocumentError(f'edges[{i}].{field}', f'{q!r} is not a state')
        words = {}
        for field, allowed in (('in', ins), ('out', outs)):
            text = _edge_field(edge, i, field)
            if not isinstance(text, str):
                raise DocumentError(f'edges[{i}].{field}', 'expected a token string')
            words[field] = tuple(text.split())
            for c in words[field]:
                if c not in allowed:
                    raise DocumentError(f'edges[{i}].{field}', f'{c!r} is not in the {field}put alphabet')
        edges.append(TransducerEdge(src, words['in'], words['out'], dst))

    return FiniteTransducer(doc['states'], doc['initial'], doc['finals'], edges,
                            doc['input_alphabet'], doc['output_alphabet'], name=name)


### ------------------------------
### files


def dumps(doc):
    # UTF-8, LF, two-space indent, trailing newline
    return json.dumps(doc, indent=2, ensure_ascii=False) + '\n'


def to_document(obj):
    if isinstance(obj, ValenceAutomaton):
        return automaton_to_document(obj)
    elif isinstance(obj, FiniteTransducer):
        return transducer_to_document(obj)
    else:
        raise NotImplementedError(f'Unknown document object {type(obj).__name__}, choose from [ValenceAutomaton, FiniteTransducer]')


def from_document(doc, name=None):
    _require(doc, ('kind',))
    if doc['kind'] == 'valence':
        return document_to_automaton(doc, name=name)
    elif doc['kind'] == 'transducer':
        return document_to_transducer(doc, name=name)
    else:
        raise DocumentError('kind', f'unknown kind {doc["kind"]!r}, choose from [valence, transducer]')


def read_document(path):
    with open(path, 'r', encoding='utf-8') as f:
        try:
            return json.load(f)
        except json.JSONDecodeError as e:
            raise DocumentError('<root>', f'invalid JSON at line {e.lineno} column {e.colno}: {e.msg}')
        except UnicodeDecodeError as e:
            raise DocumentError('<root>', f'not UTF-8 text, byte {e.start}: {e.reason}')


def load(path):
    ''' load a valence automaton or transducer document '''
    name = os.path.splitext(os.path.basename(path))[0]
    obj = from_document(read_document(path), name=name)
    log(f'[INFO] loaded {path}: {obj!r}')
    return obj


def load_automaton(path):
    obj = load(path)
    if not isinstance(obj, ValenceAutomaton):
        raise DocumentError('kind', f'{path} holds a transducer, expected a valence automaton')
    return obj


def load_transducer(path):
    obj = load(path)
    if not isinstance(obj, FiniteTransducer):
        raise DocumentError('kind', f'{path} holds a valence automaton, expected a transducer')
    return obj


def save(obj, path):
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, 'w', encoding='utf-8', newline='\n') as f:
        f.write(dumps(to_document(obj)))
    log(f'[INFO] saved {path}')
