# Licensed under an MIT open source license - see LICENSE

__all__ = ['__version__', 'test']

try:
    from importlib.metadata import version as _version, PackageNotFoundError
    try:
        __version__ = _version('krpy')
    except PackageNotFoundError:
        __version__ = ''
except ImportError:
    __version__ = ''


# set up the test command
def _get_test_runner():
    import os
    from astropy.tests.runner import TestRunner
    return TestRunner(os.path.dirname(__file__))


def test(package=None, test_path=None, args=None, plugins=None,
         verbose=False, pdb=False, coverage=False, **kwargs):
    """
    Run the tests using `py.test <http://pytest.org/latest>`__. A proper set
    of arguments is constructed and passed to `pytest.main`.

    Parameters
    ----------
    package : str, optional
        The name of a specific module to test, e.g. 'qchar'. If nothing is
        specified all default tests are run.

    test_path : str, optional
        Specify location to test by path. May be a single file or
        directory. Must be specified absolutely or relative to the
        calling directory.

    args : str, optional
        Additional arguments to be passed to pytest.main in the ``args``
        keyword argument.

    plugins : list, optional
        Plugins to be passed to pytest.main in the ``plugins`` keyword
        argument.

    verbose : bool, optional
        Convenience option to turn on verbose output from py.test. Passing
        True is the same as specifying ``'-v'`` in ``args``.

    pdb : bool, optional
        Turn on PDB post-mortem analysis for failing tests.

    coverage : bool, optional
        Generate a test coverage report.

    kwargs
        Any additional keywords passed into this function will be passed
        on to the astropy test runner.

    """
    test_runner = _get_test_runner()
    return test_runner.run_tests(
        package=package, test_path=test_path, args=args,
        plugins=plugins, verbose=verbose, pdb=pdb,
        coverage=coverage, **kwargs)
