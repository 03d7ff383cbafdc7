import sys
import logging

try:
    import pkg_resources

    __version__ = pkg_resources.get_distribution(__name__).version
except pkg_resources.DistributionNotFound:
    __version__ = "0.0.0"


def getLogger(module_name="covred"):
    # pylint: disable=invalid-name
    """Provides a unified logger for the covred library and its command line
    tool.

    Library code is encouraged to use logger.info() instead of print().

    The logger name will typically be "covred.dynamic" for the module
    covred.dynamic, and "covred.bench" for the command line tool living in
    covred.bench.bench.

    The level of the entire logger can be set through the setLevel()
    function. The default level is WARNING. The command line tool accepts a
    --verbose option to set the log level to INFO, and a --debug option to
    set it to DEBUG.

    Logging output is split by logging levels (split between WARNING and
    ERROR) to stdout and stderr, each log occurs in only one of the streams.
    Be careful with log levels if stdout is used for data output.

    Args:
        module_name (str): A suggested name for the logger, usually
            __name__ should be supplied

    Returns:
        A logger object
    """
    if not module_name:
        return getLogger("covred")

    compressed_name = []
    for elem in module_name.split("."):
        if len(compressed_name) == 0 or elem != compressed_name[-1]:
            compressed_name.append(elem)

    logger = logging.getLogger(".".join(compressed_name))

    if logger.handlers:
        # Already configured, avoid duplicated output lines
        return logger

    formatter = logging.Formatter("%(levelname)s:%(name)s:%(message)s")

    stdout_handler = logging.StreamHandler(sys.stdout)
    stdout_handler.addFilter(lambda record: record.levelno < logging.ERROR)
    stdout_handler.setFormatter(formatter)

    stderr_handler = logging.StreamHandler(sys.stderr)
    stderr_handler.addFilter(lambda record: record.levelno >= logging.ERROR)
    stderr_handler.setFormatter(formatter)

    logger.addHandler(stdout_handler)
    logger.addHandler(stderr_handler)

    return logger
