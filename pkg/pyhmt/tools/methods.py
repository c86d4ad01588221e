from __future__ import print_function
import os
import zlib
import logging
import datetime
import numpy as np
from . import messages


def get_logger(name, path=None, level=logging.ERROR):
    """ Logger

    :param name:    name of the logger
    :param path:    directory for the log file, console only if not given
    :param level:   level of the console handler
    :return: logging.Logger
    """
    today = "".join(str(datetime.date.today()).split('-'))

    # create logger
    logger = logging.getLogger('{0}'.format(name))
    logger.setLevel(logging.DEBUG)
    for handler in list(logger.handlers):
        logger.removeHandler(handler)

    formatter = logging.Formatter('%(asctime)s - %(name)s - %(levelname)s - %(message)s')

    # create file handler which logs even debug messages
    if path:
        mkdir(path)
        fh = logging.FileHandler(os.path.join(path, '{0}-{1}.log'.format(name, today)))
        fh.setLevel(logging.DEBUG)
        fh.setFormatter(formatter)
        logger.addHandler(fh)

    # create console handler with a higher log level
    ch = logging.StreamHandler()
    ch.setLevel(level)
    ch.setFormatter(formatter)
    logger.addHandler(ch)

    return logger


def raiseerror(exception, message, logger=None):
    """ Log the message and raise the given exception

    :param exception:   exception class, mostly one of messages.Errors
    :param message:     message for the user
    :param logger:      logger to report on, package logger if not given
    """
    if logger is None:
        logger = logging.getLogger('pyhmt')
    logger.debug("ERROR({0}): {1}".format(exception.__doc__, message))
    raise exception(message)


def mkdir(*paths):
    """ make all given directories

    :param paths: directories want to make
    :type paths: str[,str,..]
    """
    for path in paths:
        if path and not os.path.isdir(path):
            try:
                os.makedirs(path)
            except OSError:
                if not os.path.isdir(path):
                    raiseerror(messages.Errors.ConfigError, '{} cannot be created'.format(path))


def trial_seed(master, theorem_id, index):
    """ Derive a reproducible trial seed from the master seed

    :param master:      master seed of the run
    :param theorem_id:  theorem id, hashed with crc32 so it is stable across platforms
    :param index:       trial index
    :return: int
    """
    tag = zlib.crc32(theorem_id.encode('utf-8')) & 0xffffffff
    sequence = np.random.SeedSequence([int(master) & 0xffffffffffffffff, tag, int(index)])
    return int(sequence.generate_state(1, dtype=np.uint64)[0])


def as_rng(seed):
    """ Return a numpy Generator for an int seed (a Generator passes through)
    """
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def parse_range(value):
    """ Parse 'A..B' (or a single integer) into an inclusive (low, high) tuple
    """
    text = str(value).strip()
    try:
        if '..' in text:
            low, high = [int(v) for v in text.split('..', 1)]
        else:
            low = high = int(text)
    except ValueError:
        raiseerror(messages.Errors.ConfigError, 'Wrong range "{}", use A..B'.format(value))
    if low > high:
        raiseerror(messages.Errors.ConfigError, 'Empty range "{}"'.format(value))
    return low, high
