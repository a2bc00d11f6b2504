import logging
from magicdetune import settings
logger = logging.getLogger()

from magicdetune.app import Application
cli_app = Application()


def create_app(testing_config=None):
    config = testing_config if testing_config else settings.DefaultConfig

    from magicdetune.commands import Commands
    cli_app.init_app(config=config, commands_class=Commands)

    from magicdetune import exception_handlers

    return cli_app
