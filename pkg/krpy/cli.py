# Licensed under an MIT open source license - see LICENSE

"""

KRPY - Kirillov-Reshetikhin characters, posets and verification suites

Command line front end. Results go to standard output, diagnostics and
progress to standard error.

Exit codes: 0 success, 1 verification violation, 2 usage or precondition
error, 3 budget, overflow, truncation or cache error.

"""

import argparse
import contextlib
import logging
import sys

from astropy import log

from . import conf
from .cache import directory_override
from .exceptions import (KRError, BudgetExceededError, ArithmeticOverflowError,
                         SearchTruncatedError, CacheError, FMInconsistencyError,
                         QSystemViolationError, NotACharacterError)
from .io import (FORMATS, render, make_table, format_weight, character_rows,
                 decomposition_rows, qcharacter_rows, violation_rows,
                 tsystem_rows, qsystem_rows)
from .krmodules import (KRTensor, kr_character, kr_tensor_multiplicities,
                        verify_main_theorem, kernel_character,
                        is_kr_tensor_factorizable, schur_difference,
                        qsystem_difference, qsystem_grid, tsystem_grid)
from .liealg import parse_algebra, decompose, as_weight
from .partitions import parse_partition, poset_graph, poset_dot, cfs_leq
from .qchar import kr_qcharacter

__all__ = ['run', 'main', 'build_parser']

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_LIMIT = 3


def _weight(text):
    try:
        return tuple(int(c) for c in text.split(','))
    except ValueError:
        raise argparse.ArgumentTypeError("cannot parse weight {0!r}".format(text))


def _partition(text):
    try:
        return parse_partition(text)
    except KRError as e:
        raise argparse.ArgumentTypeError(str(e))


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--format', choices=FORMATS, default='text')
    common.add_argument('--cache-dir', default=None,
                        help='directory of cached q-characters')
    common.add_argument('--budget', type=int, default=None,
                        help='term budget of a Frenkel-Mukhin expansion')
    common.add_argument('--njobs', type=int, default=None,
                        help='processes used for verification grids')
    noise = common.add_mutually_exclusive_group()
    noise.add_argument('--verbose', action='store_true')
    noise.add_argument('--quiet', action='store_true')

    algebra = argparse.ArgumentParser(add_help=False)
    algebra.add_argument('--algebra', required=True, help="e.g. 'A3' or 'G2'")

    parser = argparse.ArgumentParser(
        prog='kr', description='Kirillov-Reshetikhin characters and '
        'verification suites')
    sub = parser.add_subparsers(dest='command')
    sub.required = True

    p = sub.add_parser('char', parents=[common, algebra],
                       help='classical character of KR(m omega_i)')
    p.add_argument('--node', type=int, required=True)
    p.add_argument('--m', '--level', dest='m', type=int, required=True)

    p = sub.add_parser('qchar', parents=[common, algebra],
                       help='q-character of W^(i)_{m,q^c}')
    p.add_argument('--node', type=int, required=True)
    p.add_argument('--m', '--level', dest='m', type=int, required=True)
    p.add_argument('--base', type=int, default=0,
                   help='spectral exponent c of the first factor')

    p = sub.add_parser('tensor', parents=[common, algebra],
                       help='multiplicities of KR(lambda, i)')
    p.add_argument('--node', type=int, required=True)
    p.add_argument('--partition', type=_partition, required=True)

    p = sub.add_parser('poset', parents=[common],
                       help='the poset P(m) under reverse dominance')
    p.add_argument('--m', type=int, required=True)
    p.add_argument('--covers', action='store_true',
                   help='cover relations only (default: every relation)')
    p.add_argument('--dot', action='store_true',
                   help='print the cover graph in DOT format')

    verify = sub.add_parser('verify', help='verification suites')
    vsub = verify.add_subparsers(dest='suite')
    vsub.required = True
    for name in ('qsystem', 'tsystem'):
        p = vsub.add_parser(name, parents=[common, algebra])
        p.add_argument('--node', type=int, default=None,
                       help='single node (default: every node)')
        p.add_argument('--m', '--level', dest='m', type=int, default=3,
                       help='largest level')
        if name == 'tsystem':
            p.add_argument('--base', type=int, default=0)
    p = vsub.add_parser('positivity', parents=[common, algebra])
    p.add_argument('--node', type=int, required=True)
    p.add_argument('--m', type=int, required=True)
    p.add_argument('--mode', choices=('covers', 'all'), default='covers')

    p = sub.add_parser('kernel', parents=[common, algebra],
                       help='char KR(mu, i) - char KR(lambda, i)')
    p.add_argument('--node', type=int, required=True)
    p.add_argument('--upper', type=_partition, required=True, help='mu')
    p.add_argument('--lower', type=_partition, required=True, help='lambda')

    p = sub.add_parser('factorize', parents=[common, algebra],
                       help='search a KR tensor factorization')
    p.add_argument('--node', type=int, required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument('--kernel', nargs=2, type=_partition,
                       metavar=('UPPER', 'LOWER'),
                       help='factorize the kernel of UPPER -> LOWER')
    group.add_argument('--qsystem', type=int, metavar='M',
                       help='factorize the Q-system difference at level M')
    group.add_argument('--kr', type=int, metavar='M',
                       help='factorize KR(M omega_i)')

    p = sub.add_parser('schur-diff', parents=[common, algebra],
                       help='decompose V(mu1)V(mu2) - V(lambda1)V(lambda2)')
    p.add_argument('--mu', nargs=2, type=_weight, required=True)
    p.add_argument('--lam', nargs=2, type=_weight, required=True)
    return parser


@contextlib.contextmanager
def _diagnostics(args):
    """
    Routes the astropy logger to stderr at the requested level
    """
    handlers = list(log.handlers)
    level = log.level
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter('%(levelname)s: %(message)s'))
    for h in handlers:
        log.removeHandler(h)
    log.addHandler(handler)
    if args.verbose:
        log.setLevel('DEBUG')
    elif args.quiet:
        log.setLevel('ERROR')
    else:
        log.setLevel('WARNING')
    try:
        yield
    finally:
        log.removeHandler(handler)
        for h in handlers:
            log.addHandler(h)
        log.setLevel(level)


@contextlib.contextmanager
def _overrides(args):
    with contextlib.ExitStack() as stack:
        if args.cache_dir:
            stack.enter_context(directory_override(args.cache_dir))
        if args.budget is not None:
            stack.enter_context(conf.set_temp('term_budget', args.budget))
        if args.njobs is not None:
            stack.enter_context(conf.set_temp('njobs', args.njobs))
        yield


def _emit(text):
    print(text)


def _lines(mapping):
    return '\n'.join('{0}\t{1}'.format(format_weight(w), mapping[w])
                     for w in mapping)


def _char(args, cd):
    character = kr_character(cd, args.node, args.m)
    components = decompose(character)
    document = character.to_dict()
    document.update({'node': args.node, 'level': args.m,
                     'components': components.to_dict()['components']})
    _emit(render(args.format, document, character_rows(character)))
    return EXIT_OK


def _qchar(args, cd):
    qc = kr_qcharacter(cd, args.node, args.m, args.base)
    document = qc.to_dict()
    document.update({'node': args.node, 'level': args.m, 'base': args.base})
    _emit(render(args.format, document, qcharacter_rows(qc)))
    return EXIT_OK


def _tensor(args, cd):
    vector = kr_tensor_multiplicities(KRTensor(cd, args.node, args.partition))
    _emit(render(args.format, vector.to_dict(), decomposition_rows(vector),
                _lines(vector)))
    return EXIT_OK


def _poset(args):
    graph = poset_graph(args.m, covers_only=args.covers)
    edges = sorted((a.parts, b.parts) for a, b in graph.edges)
    edges = [(','.join(map(str, a)), ','.join(map(str, b))) for a, b in edges]
    if args.dot:
        _emit(poset_dot(args.m))
        return EXIT_OK
    document = {'m': args.m, 'covers': args.covers,
                'nodes': sorted(str(p) for p in graph.nodes),
                'edges': [list(e) for e in edges]}
    table = make_table(edges, ['lower', 'upper'], name='P({0})'.format(args.m))
    text = '\n'.join('{0} -> {1}'.format(a, b) for a, b in edges)
    _emit(render(args.format, document, table, text))
    return EXIT_OK


def _nodes(args, cd):
    return [args.node] if args.node is not None else list(cd.nodes)


def _verify_qsystem(args, cd):
    for i in _nodes(args, cd):
        cd.check_node(i)
    rows = qsystem_grid(cd, args.m, nodes=_nodes(args, cd))
    document = {'algebra': cd.name, 'max_level': args.m,
                'cells': [{'node': r['node'], 'level': r['level'],
                           'holds': r['holds'],
                           'components': [{'weight': list(w), 'mult': k}
                                          for w, k in sorted(r['components'].items())]}
                          for r in rows],
                'violations': [[r['node'], r['level']] for r in rows
                               if not r['holds']]}
    _emit(render(args.format, document, qsystem_rows(rows)))
    return EXIT_OK if all(r['holds'] for r in rows) else EXIT_VIOLATION


def _verify_tsystem(args, cd):
    for i in _nodes(args, cd):
        cd.check_node(i)
    reports = tsystem_grid(cd, args.m, nodes=_nodes(args, cd), base=args.base)
    document = {'algebra': cd.name, 'max_level': args.m, 'base': args.base,
                'cells': [r.to_dict() for r in reports],
                'violations': [[r.to_dict()['node'], r.to_dict()['level']]
                               for r in reports if not r.holds]}
    _emit(render(args.format, document, tsystem_rows(reports)))
    return EXIT_OK if all(r.holds for r in reports) else EXIT_VIOLATION


def _verify_positivity(args, cd):
    report = verify_main_theorem(cd, args.node, args.m, mode=args.mode,
                                 verbose=args.verbose)
    document = report.to_dict()
    text = '\n'.join(['pairs\t{0}'.format(report.pairs_checked),
                      'violations\t{0}'.format(len(report.violations))] +
                     ['{0}\t{1}\t{2}\t{3}\t{4}'.format(
                         lam, mu, format_weight(tau), a, b)
                      for lam, mu, tau, a, b in report.violations])
    _emit(render(args.format, document, violation_rows(document), text))
    return EXIT_OK if report.holds else EXIT_VIOLATION


def _kernel(args, cd):
    kernel = kernel_character(cd, args.node, args.upper, args.lower)
    components = decompose(kernel)
    document = kernel.to_dict()
    document.update({'node': args.node, 'upper': str(args.upper),
                     'lower': str(args.lower),
                     'components': components.to_dict()['components'],
                     'nonnegative': components.nonnegative})
    _emit(render(args.format, document, decomposition_rows(components),
                _lines(components)))
    return EXIT_OK if components.nonnegative else EXIT_VIOLATION


def _factorize(args, cd):
    if args.kernel:
        character = kernel_character(cd, args.node, *args.kernel)
        target = 'kernel {0} -> {1}'.format(*args.kernel)
    elif args.qsystem is not None:
        character = qsystem_difference(cd, args.node, args.qsystem)
        target = 'qsystem {0}'.format(args.qsystem)
    else:
        character = kr_character(cd, args.node, args.kr)
        target = 'KR {0}'.format(args.kr)
    factors = is_kr_tensor_factorizable(cd, character)
    document = {'algebra': cd.name, 'node': args.node, 'target': target,
                'factors': None if factors is None else [list(f) for f in factors]}
    rows = [(j, level) for j, level in factors or []]
    text = 'none' if factors is None else '\n'.join(
        'KR({0} omega_{1})'.format(level, j) for j, level in factors)
    _emit(render(args.format, document, make_table(rows, ['node', 'level']),
                 text))
    return EXIT_OK


def _schur_diff(args, cd):
    mupair = tuple(as_weight(cd, w) for w in args.mu)
    lampair = tuple(as_weight(cd, w) for w in args.lam)
    result = schur_difference(cd, mupair, lampair)
    comparable = cfs_leq(cd, lampair, mupair)
    document = result.to_dict()
    document.update({'mu': [list(w) for w in mupair],
                     'lam': [list(w) for w in lampair],
                     'comparable': comparable,
                     'nonnegative': result.nonnegative})
    _emit(render(args.format, document, decomposition_rows(result),
                _lines(result)))
    if comparable and not result.nonnegative:
        return EXIT_VIOLATION
    return EXIT_OK


_COMMANDS = {'char': _char, 'qchar': _qchar, 'tensor': _tensor,
             'kernel': _kernel, 'factorize': _factorize,
             'schur-diff': _schur_diff}
_SUITES = {'qsystem': _verify_qsystem, 'tsystem': _verify_tsystem,
           'positivity': _verify_positivity}


def _dispatch(args):
    if args.command == 'poset':
        return _poset(args)
    cd = parse_algebra(args.algebra)
    if args.command == 'verify':
        return _SUITES[args.suite](args, cd)
    return _COMMANDS[args.command](args, cd)


def run(argv=None):
    """
    Runs one command and returns its exit code
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if not e.code else EXIT_USAGE

    with _diagnostics(args), _overrides(args):
        try:
            return _dispatch(args)
        except (QSystemViolationError, NotACharacterError) as e:
            log.error(str(e))
            return EXIT_VIOLATION
        except (BudgetExceededError, ArithmeticOverflowError,
                SearchTruncatedError, CacheError, FMInconsistencyError) as e:
            log.error(str(e))
            return EXIT_LIMIT
        except (KRError, ValueError) as e:
            log.error(str(e))
            sys.stderr.write(parser.format_usage())
            return EXIT_USAGE


def main():
    return run(sys.argv[1:])


if __name__ == '__main__':
    raise SystemExit(main())
