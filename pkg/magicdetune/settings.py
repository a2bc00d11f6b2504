import math

from environs import Env
env = Env()

FROM_EXAMPLE = env.bool('FROM_EXAMPLE', False)
if FROM_EXAMPLE:
    from dotenv import load_dotenv
    load_dotenv('./magicdetune/.env.example')
else:
    env.read_env()

DEBUG = env.bool('DEBUG', False)

LOG_LEVEL = env.str('LOG_LEVEL', 'DEBUG' if DEBUG else 'INFO')
LOG_PATH = env.str('LOG_PATH', '/tmp/magicdetune')
LOG_NAME = env.str('LOG_NAME', 'logfile')
TIMEZONE = env.str('TIMEZONE', 'UTC')
LOG_TO_FILE = env.bool('LOG_TO_FILE', True)

from utils.logger_helper import config
config(LOG_LEVEL, LOG_PATH, LOG_NAME, TIMEZONE, to_file=LOG_TO_FILE)

# Angular momenta are stored doubled; larger arguments are rejected outright.
MAX_TWICE_J = env.int('MAX_TWICE_J', 200)

# 2pi*MHz
POLE_EXCLUSION_MHZ = env.float('POLE_EXCLUSION_MHZ', 1e-6)
DEFAULT_THETA = env.float('DEFAULT_THETA', math.pi / 4)


class OptimizerConfig:
    GRID_DENSITY = env.float('GRID_DENSITY', 20.0)
    GRID_MIN_POINTS = env.int('GRID_MIN_POINTS', 2000)
    REFINE_TOL_MHZ = env.float('REFINE_TOL_MHZ', 1e-3)
    BRACKET_EXPANSION = env.float('BRACKET_EXPANSION', 0.5)
    # a minimum above this, or outside the condition detunings, is not a magic detuning
    MAX_MAGIC_DISTANCE = env.float('MAX_MAGIC_DISTANCE', 0.5)
    HULL_SLACK = env.float('HULL_SLACK', 0.01)
    SENSITIVITY_THETAS = (0.0, math.pi / 8, math.pi / 4, 3 * math.pi / 8, math.pi / 2)


class CavitySettings:
    VALIDITY_THRESHOLD = env.float('CAVITY_VALIDITY_THRESHOLD', 0.1)


class TableConfig:
    WORKERS = env.int('TABLE_WORKERS', 4)
    TOLERANCE_MHZ = env.float('TABLE_TOLERANCE_MHZ', 0.1)
    CS_TOLERANCE_MHZ = env.float('TABLE_CS_TOLERANCE_MHZ', 0.01)
    M_RELATIVE_TOLERANCE = env.float('TABLE_M_RELATIVE_TOLERANCE', 0.15)


class DefaultConfig:
    ATOMS_FILE = env.str('ATOMS_FILE', '')
    TABLE_WORKERS = TableConfig.WORKERS


class TestingConfig(DefaultConfig):
    ATOMS_FILE = env.str('ATOMS_TEST_FILE', '')
    TABLE_WORKERS = env.int('TABLE_TEST_WORKERS', 2)


if __name__ == '__main__':
    import logging
    logger = logging.getLogger(__name__)
    logger.debug('DEBUG')
    logger.info('INFO')
    logger.warning('WARN')
    logger.error('ERROR')
