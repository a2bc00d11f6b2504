import logging
import pytest
from magicdetune import settings, create_app
from magicdetune.atomic_data import (BuiltinRegistry, HyperfineConstants, dipole_limit_record,
                                     dump_atom_table, AtomRecord)

logger = logging.getLogger(__name__)


@pytest.fixture
def app(request):
    app = create_app(settings.TestingConfig)

    yield app


@pytest.fixture
def registry():
    BuiltinRegistry.reset()

    yield BuiltinRegistry()

    BuiltinRegistry.reset()


@pytest.fixture
def rb87(registry):
    return registry.lookup('87Rb', 1)


@pytest.fixture
def cs133(registry):
    return registry.lookup('133Cs', 3)


@pytest.fixture
def dipole_atom():
    return dipole_limit_record(HyperfineConstants(1000), F=1, I='3/2', J='1/2', Jp='3/2')


@pytest.fixture
def extra_record():
    return AtomRecord(species='39K', I='3/2', J='1/2', Jp='3/2', F=2,
                      zeta_plus='-21.1', zeta_minus='9.4', b_over_a='0.2', source='test')


@pytest.fixture
def atoms_file(tmp_path, extra_record):
    path = tmp_path / 'extra.txt'
    with open(str(path), 'wb') as stream:
        dump_atom_table([extra_record], stream)
    return str(path)
