"""
Parallel map over independent pure tasks, built on multiprocessing.
Results come back in input order.
"""
import warnings

from astropy import log

_multi = False
_ncpus = 1

try:
    # May raise ImportError
    import multiprocessing
    _multi = True

    # May raise NotImplementedError
    _ncpus = multiprocessing.cpu_count()
except Exception as ex:
    pmap_exception = ex
    _multi = False


__all__ = ('parallel_map',)


def worker(f, ii, chunk, out_q, err_q):
    """
    Maps f over one slice of the input and puts ``(ii, results)`` on the
    output queue, or the first exception on the error queue
    """
    vals = []
    for val in chunk:
        try:
            result = f(val)
        except Exception as e:
            err_q.put(e)
            return
        vals.append(result)
    out_q.put((ii, vals))


def run_tasks(procs, err_q, out_q, num):
    """
    Starts the processes, waits for them and reassembles the chunks
    """
    # terminate processes that are still running
    die = (lambda vals: [val.terminate() for val in vals
                         if val.exitcode is None])

    try:
        for proc in procs:
            proc.start()
        for proc in procs:
            proc.join()
    except Exception:
        die(procs)
        raise

    if not err_q.empty():
        die(procs)
        raise err_q.get()

    # chunk index doubles as position in the result
    results = [None] * num
    while not out_q.empty():
        idx, result = out_q.get()
        results[idx] = result
    return [val for chunk in results for val in chunk]


def _chunks(sequence, numcores):
    size, rest = divmod(len(sequence), numcores)
    chunks = []
    start = 0
    for ii in range(numcores):
        stop = start + size + (1 if ii < rest else 0)
        chunks.append(sequence[start:stop])
        start = stop
    return chunks


def parallel_map(function, sequence, numcores=None):
    """
    A parallelized version of the native map function

    Parameters
    ----------
    function : callable
        Must be picklable when more than one core is used
    sequence : sequence
        Task arguments
    numcores : int, optional
        Number of processes; defaults to the number of CPUs

    Returns
    -------
    list
        ``function(x)`` for every x, in input order

    """
    if not callable(function):
        raise TypeError("input function '%s' is not callable" %
                        repr(function))
    sequence = list(sequence)
    size = len(sequence)

    if not _multi or size <= 1 or numcores == 1:
        return [function(val) for val in sequence]

    if numcores is not None and numcores > _ncpus:
        warnings.warn("Number of requested cores is greater than the "
                      "number of available CPUs.")
    elif numcores is None:
        numcores = _ncpus

    manager = multiprocessing.Manager()
    out_q = manager.Queue()
    err_q = manager.Queue()

    if size < numcores:
        log.info("Reduced number of cores to {0}".format(size))
        numcores = size

    procs = [multiprocessing.Process(target=worker,
                                     args=(function, ii, chunk, out_q, err_q))
             for ii, chunk in enumerate(_chunks(sequence, numcores))]

    return run_tasks(procs, err_q, out_q, numcores)
