# Licensed under an MIT open source license - see LICENSE

"""

KRPY - Kirillov-Reshetikhin characters, posets and verification suites

Progress messages for the verification grids. Everything goes to the
diagnostic stream so that standard output only carries results.

"""

import sys

from astropy.utils.console import ProgressBar

__all__ = ['print_to_terminal', 'NullProgress']


class NullProgress(object):
    """
    Stand-in progress bar used when nothing should be shown
    """

    def update(self, value=None):
        pass

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        return False


def _say(text=''):
    sys.stderr.write(text + '\n')


def print_to_terminal(stage='', step='', length=None, var=None, t1=None,
                      t2=None, verbose=True):
    """
    Keeping all the noisy stuff in one place.

    Returns a progress bar bound to stderr when ``length`` is given and the
    step reports progress, otherwise a `NullProgress`.
    """
    progress_bar = NullProgress()
    if not verbose:
        return progress_bar

    if step == 'start':
        _say('')
        _say('Beginning {0} ({1})...'.format(stage, var))
        if length is not None:
            progress_bar = ProgressBar(length, file=sys.stderr)

    if stage == 'fm' and step == 'expand':
        _say('Frenkel-Mukhin expansion of {0} (budget {1} monomials)'.format(
            var, length))

    if stage == 'positivity' and step == 'pairs':
        _say('Comparing {0} pairs of partitions of {1}'.format(length, var))
        progress_bar = ProgressBar(length, file=sys.stderr)

    if stage == 'factorize' and step == 'truncated':
        _say('Factorization search stopped after {0} candidates'.format(var))

    if step == 'end':
        _say('')
        if t1 is not None and t2 is not None:
            _say('{0} completed in: {1:.2f} seconds'.format(stage, t2 - t1))
        if var is not None:
            _say('violations: {0}'.format(var))
        _say('')

    return progress_bar
