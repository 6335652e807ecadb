"""
Creates a logging object to be used within twobath.

In any module import the logging wrapper as shown below

`from twobath.utils import logging`

Logging prints plain text by default; set the config key `log_format` to
"json" (or pass `--log-format json` on the command line) for JSON lines.

As soon as a run manifest is hashed a filter is added to the logger to inject
the hash (the run id) into all log outputs, so log lines can be matched to the
data files that carry the same hash in their header.

If using the JSON logging format additional JSON fields can be added like so:

`logging.info({"event": "singular_shift", "t": 3.14159})`
"""

import json
import logging
import sys

LOG_LEVELS = {
    'debug': logging.DEBUG,
    'info': logging.INFO,
    'warning': logging.WARNING,
    'error': logging.ERROR,
    'critical': logging.CRITICAL,
}


class Filter(logging.Filter):
    """
    This is a filter which injects the run id into the log.
    """
    def __init__(self, runId):
        super().__init__()
        self.runId = runId or '-'

    def filter(self, record):
        record.runId = self.runId
        return True


def tearDownLogging(logFormat='txt', logLevel='warning'):
    """
    Tear down logging (strip runId)
    """
    updateLogger(runId=None, logFormat=logFormat, logLevel=logLevel)


def updateLogger(runId=None, logFormat='txt', logLevel='warning'):
    """
    Update the logger with the run id (or strip the run id if it is `None`)
    """
    isJSON = (logFormat == 'json')
    hasRunId = runId is not None

    formatter = getFormatter(isJSON=isJSON, hasRunId=hasRunId)
    filter = Filter(runId)
    updateRootLogger(formatter, filter, logLevel=logLevel)


class JsonFormatter(logging.Formatter):
    _default_fields = ['levelname', 'asctime', 'name', 'module', 'funcName']

    def __init__(self, fields=None):
        """
        Constructs a json-ready format string
        e.g. JsonFormatter(['levelname', 'asctime']) creates a Formatter with
        the format string {"levelname": "%(levelname)s", "asctime": "%(asctime)s", %(message)}
        """
        if fields is None:
            fields = self._default_fields

        fmt = json.dumps({
            field: f'%({field})s'
            for field in fields
        })
        fmt = fmt[:-1] + ', %(message)s' + fmt[-1]

        super().__init__(fmt)

    def format(self, record):
        """Formats a log record, adds special handling for records which are dict"""
        msg = record.msg
        if not isinstance(msg, dict):
            msg = {'message': record.getMessage()}
            record.args = None

        # strip the outer braces so the fields splice into the format string
        record.msg = json.dumps(msg, default=str)[1:-1]
        try:
            return super().format(record)
        finally:
            record.msg = msg


def getFormatter(isJSON=False, hasRunId=False):
    """
    Get the formatter (either JSON or plain)
    """
    components = ['levelname', 'asctime', 'name', 'module', 'funcName']
    if hasRunId:
        components.append('runId')

    if isJSON:
        return JsonFormatter(components)

    return logging.Formatter(
        ' '.join(f'[%({elem})s]' for elem in components) + ' %(message)s'
    )


def updateRootLogger(formatter, filter, logLevel):
    """
    Set logger level, handler and formatter
    """
    logger = logging.getLogger()
    logger.setLevel(LOG_LEVELS.get(logLevel, logging.WARNING))

    if not logger.handlers:
        logHandler = logging.StreamHandler(sys.stderr)
        logger.addHandler(logHandler)

    handler = logger.handlers[0]

    handler.setFormatter(formatter)
    # reset filters with the supplied filter
    handler.filters = [filter]


updateLogger()
ROOT_LOGGER = logging.getLogger('twobath')

debug = ROOT_LOGGER.debug
info = ROOT_LOGGER.info
warning = ROOT_LOGGER.warning
error = ROOT_LOGGER.error
exception = ROOT_LOGGER.exception
critical = ROOT_LOGGER.critical
log = ROOT_LOGGER.log
