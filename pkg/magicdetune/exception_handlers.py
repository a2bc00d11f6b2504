import logging
import sys

from magicdetune import cli_app as app, exceptions
from magicdetune import exception_codes as codes

logger = logging.getLogger(__name__)


def exit_handler(err, exit_code):
    if isinstance(err, exceptions.BaseException):
        message = err.message
    else:
        message = str(err)
    sys.stderr.write('error: {}\n'.format(message))
    return exit_code


@app.errorhandler(exceptions.InvalidArgumentError)
def InvalidArgumentErrorHandler(err):
    logger.error(err)
    return exit_handler(err, codes.EXIT_USAGE)


@app.errorhandler(exceptions.UnsupportedCaseError)
def UnsupportedCaseErrorHandler(err):
    logger.error(err)
    return exit_handler(err, codes.EXIT_USAGE)


@app.errorhandler(exceptions.SpeciesNotFoundError)
def SpeciesNotFoundErrorHandler(err):
    logger.error(err)
    return exit_handler(err, codes.EXIT_NOT_FOUND)


@app.errorhandler(exceptions.CapabilityError)
def CapabilityErrorHandler(err):
    logger.error(err)
    return exit_handler(err, codes.EXIT_CAPABILITY)


@app.errorhandler(exceptions.TableMismatchError)
def TableMismatchErrorHandler(err):
    for cell in err.cells:
        logger.warning(cell)
    return exit_handler(err, codes.EXIT_DISAGREEMENT)


@app.errorhandler(exceptions.SingularFormulaError)
def SingularFormulaErrorHandler(err):
    logger.error(err)
    return exit_handler(err, codes.EXIT_DISAGREEMENT)


@app.errorhandler(exceptions.VanishingNormalizerError)
def VanishingNormalizerErrorHandler(err):
    logger.error(err)
    return exit_handler(err, codes.EXIT_DISAGREEMENT)


@app.errorhandler(exceptions.InternalConsistencyError)
def InternalConsistencyErrorHandler(err):
    logger.error(err)
    return exit_handler(err, codes.EXIT_DISAGREEMENT)
