import logging
import inspect
from functools import wraps

import fire

from magicdetune import exception_codes as codes

logger = logging.getLogger(__name__)


class Application:
    def __init__(self):
        self.error_handlers = {}
        self.config = None
        self.commands_class = None

    def init_app(self, config, commands_class):
        self.config = config
        self.commands_class = commands_class
        logger.debug('Application configured with {}'.format(config.__name__))

    def find_handler(self, exc):
        for klass in type(exc).__mro__:
            if klass in self.error_handlers:
                return self.error_handlers[klass]
        return None

    def wrap_method_with_errorhandler(self, func):
        @wraps(func)
        def wrapper(*args, **kwargs):
            try:
                return func(*args, **kwargs)
            except Exception as e:
                handler = self.find_handler(e)
                if handler is None:
                    raise
                return handler(e)

        return wrapper

    def errorhandler(self, exception):
        if inspect.isclass(exception) and issubclass(exception, Exception):

            def wrapper(func):
                self.error_handlers[exception] = func
                return func

            return wrapper
        return exception

    def _dispatch(self, argv):
        commands = type(self.commands_class.__name__, (self.commands_class,), {'config': self.config})
        try:
            fire.Fire(commands, command=list(argv), name='magicdetune')
        except fire.core.FireExit as exc:
            return codes.EXIT_USAGE if exc.code else codes.EXIT_OK
        return codes.EXIT_OK

    def run(self, argv):
        """Run one command line and return the process exit code."""
        if self.commands_class is None:
            raise RuntimeError('Application used before create_app()')
        logger.debug('Running {}'.format(list(argv)))
        return self.wrap_method_with_errorhandler(self._dispatch)(argv)
