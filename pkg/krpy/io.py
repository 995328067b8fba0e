# Licensed under an MIT open source license - see LICENSE

"""

KRPY - Kirillov-Reshetikhin characters, posets and verification suites

Output of characters, q-characters and verification reports as canonical
JSON, tab-separated tables and plain text.

"""

import io
import json

from astropy.table import Table, Column

__all__ = ['dumps_json', 'make_table', 'render', 'format_weight',
           'character_rows', 'decomposition_rows', 'qcharacter_rows',
           'violation_rows', 'tsystem_rows', 'qsystem_rows', 'FORMATS']

FORMATS = ('json', 'tsv', 'text')


def dumps_json(document):
    """
    Canonical JSON: sorted keys, fixed separators
    """
    return json.dumps(document, sort_keys=True, separators=(', ', ': '))


def format_weight(weight):
    return ','.join(str(c) for c in weight)


def make_table(rows, headings, name=''):
    """
    Generates an astropy table with one column per heading
    """
    table = Table(meta={'name': name})
    for k, heading in enumerate(headings):
        values = [row[k] for row in rows]
        table[heading] = Column(values, name=heading) if values else \
            Column([], name=heading, dtype=str)
    return table


def _tsv(table):
    buf = io.StringIO()
    table.write(buf, format='ascii.tab')
    return buf.getvalue().rstrip('\n')


def _text(table):
    if not len(table):
        return '\t'.join(table.colnames)
    return '\n'.join(table.pformat(max_lines=-1, max_width=-1))


def render(fmt, document, table, text=None):
    """
    Returns the output string for one of `FORMATS`

    Parameters
    ----------
    fmt : str
        'json', 'tsv' or 'text'
    document : dict
        JSON form of the result
    table : astropy.table.Table
        Tabular form of the result
    text : str, optional
        Plain-text form; the table is pretty-printed when not given

    """
    if fmt == 'json':
        return dumps_json(document)
    if fmt == 'tsv':
        return _tsv(table)
    if text is not None:
        return text
    return _text(table)


def character_rows(character):
    return make_table([(format_weight(w), character[w]) for w in character],
                      ['weight', 'mult'], name=character.algebra.name)


def decomposition_rows(decomposition):
    return make_table([(format_weight(w), decomposition[w])
                       for w in decomposition],
                      ['tau', 'mult'], name=decomposition.algebra.name)


def qcharacter_rows(qc):
    return make_table([(str(mono), qc[mono], format_weight(mono.weight(qc.algebra)))
                       for mono in qc],
                      ['monomial', 'mult', 'weight'], name=qc.algebra.name)


def violation_rows(report):
    rows = [(v['lower'], v['upper'], format_weight(v['weight']),
             v['lower_mult'], v['upper_mult'])
            for v in report['violations']]
    return make_table(rows, ['lower', 'upper', 'tau', 'lower_mult',
                             'upper_mult'])


def tsystem_rows(reports):
    rows = []
    for report in reports:
        document = report.to_dict()
        rows.append((document['node'], document['level'],
                     len(document['s_term']),
                     ';'.join('{0}:{1}@{2}'.format(*f)
                              for f in document['s_term_factors']),
                     str(document['holds'])))
    return make_table(rows, ['node', 'level', 's_terms', 's_factors', 'holds'])


def qsystem_rows(rows):
    return make_table([(row['node'], row['level'],
                        ';'.join('{0}:{1}'.format(format_weight(w), k)
                                 for w, k in sorted(row['components'].items())),
                        str(row['holds'])) for row in rows],
                      ['node', 'level', 'components', 'holds'])
