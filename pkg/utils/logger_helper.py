import os
import datetime
import logging.config

from pytz import timezone

LEVELS = ('debug', 'info', 'warning', 'error', 'critical')


class LevelFilter(logging.Filter):
    """Passes records of exactly one level so every file holds a single level."""

    def __init__(self, level):
        super(LevelFilter, self).__init__()
        self.levelno = logging.getLevelName(level.upper())

    def filter(self, rec):
        return rec.levelno == self.levelno


COLORS = {
    'HEADER': '\033[95m',
    'INFO': '\033[92m',
    'DEBUG': '\033[94m',
    'WARNING': '\033[93m',
    'ERROR': '\033[95m',
    'CRITICAL': '\033[91m',
    'ENDC': '\033[0m',
}


class ColorFulFormatColMixin:
    def format_col(self, message_str, level_name):
        if level_name in COLORS.keys():
            message_str = COLORS.get(level_name) + message_str + COLORS.get(
                'ENDC')
        return message_str


class ColorfulFormatter(logging.Formatter, ColorFulFormatColMixin):
    def format(self, record):
        message_str = super(ColorfulFormatter, self).format(record)

        return self.format_col(message_str, level_name=record.levelname)


def build_log_file(level, log_path, name, tz):
    utc_now = datetime.datetime.utcnow()
    utc_tz = timezone('UTC')
    local_tz = timezone(tz)
    tznow = utc_now.replace(tzinfo=utc_tz).astimezone(local_tz)
    return '{}-{}-{}.log'.format(os.path.join(log_path, name), tznow.strftime("%m-%d-%Y-%H:%M:%S"),
                                 level)


def config(log_level, log_path, name, tz='UTC', to_file=True):
    fmt = '%(asctime)s | %(levelname)s | %(name)s | %(threadName)s: %(message)s (%(filename)s:%(lineno)s)'

    handlers = {
        'magicdetune_console': {
            'class': 'logging.StreamHandler',
            'formatter': 'colorful_console',
            'stream': 'ext://sys.stderr',
        },
    }
    filters = {}

    if to_file:
        if not os.path.exists(log_path):
            os.makedirs(log_path)
        for level in LEVELS:
            filters['{}_filter'.format(level)] = {
                '()': LevelFilter,
                'level': level,
            }
            handlers['magicdetune_{}_file'.format(level)] = {
                'level': level.upper(),
                'filters': ['{}_filter'.format(level)],
                'class': 'logging.handlers.RotatingFileHandler',
                'formatter': 'default',
                'filename': build_log_file(level, log_path, name, tz),
                'delay': True,
            }

    LOGGING = {
        'version': 1,
        'disable_existing_loggers': False,
        'formatters': {
            'default': {
                'format': fmt,
            },
            'colorful_console': {
                'format': fmt,
                '()': ColorfulFormatter,
            },
        },
        'filters': filters,
        'handlers': handlers,
        'loggers': {
            '': {
                'handlers': list(handlers.keys()),
                'level': log_level,
                'propagate': False
            },
        },
    }

    logging.config.dictConfig(LOGGING)
