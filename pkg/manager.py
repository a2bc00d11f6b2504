import fire
from magicdetune.atomic_data import (HyperfineConstants, builtin_registry, dipole_limit_record, dump_atom_table,
                                     load_atom_file)


class AtomTableHandler:
    @classmethod
    def dump_builtin(cls, path):
        with open(path, 'wb') as stream:
            dump_atom_table(builtin_registry(), stream)
        return path

    @classmethod
    def check(cls, path):
        records = load_atom_file(path)
        for record in records:
            print('{} lines={} capable={}'.format(record, list(record.lines), record.magic_capable))
        return len(records)

    @classmethod
    def dipole_limit(cls, path, species, a_hfs, I, F, J='1/2', Jp='3/2'):
        record = dipole_limit_record(HyperfineConstants(a_hfs), F, I, J, Jp, species=species)
        with open(path, 'wb') as stream:
            dump_atom_table([record], stream)
        return str(record)


if __name__ == '__main__':
    fire.Fire(AtomTableHandler)
