from fractions import Fraction

import factory
from faker.providers import BaseProvider

from magicdetune.atomic_data import AtomRecord
from magicdetune.wigner import HalfInt


class FakerProvider(BaseProvider):
    def nuclear_spin(self, low=2, high=12):
        """Spin with 2I drawn from [low, high]."""
        return HalfInt.from_twice(self.random_int(low, high))

    def species_label(self):
        return '{}{}'.format(self.random_int(6, 240), self.random_element(('Xa', 'Yb+', 'Zq')))

    def splitting(self, low=5, high=1000):
        """Positive splitting in 2pi*MHz on a 0.1 MHz grid."""
        return Fraction(self.random_int(low * 10, high * 10), 10)


factory.Faker.add_provider(FakerProvider)


class AtomRecordFactory(factory.Factory):
    """Stretched D2 manifold F = I + 1/2 with splittings of opposite sign."""

    class Meta:
        model = AtomRecord

    class Params:
        sign = factory.Faker('random_element', elements=(1, -1))
        upper = factory.Faker('splitting')
        lower = factory.Faker('splitting')

    species = factory.Faker('species_label')
    I = factory.Faker('nuclear_spin')
    J = HalfInt('1/2')
    Jp = HalfInt('3/2')
    F = factory.LazyAttribute(lambda o: o.I + o.J)
    zeta_plus = factory.LazyAttribute(lambda o: -o.sign * o.upper)
    zeta_minus = factory.LazyAttribute(lambda o: o.sign * o.lower)
    b_over_a = None
    source = 'factory'


class LowerManifoldFactory(AtomRecordFactory):
    """F = I - 1/2 of the same line."""
    F = factory.LazyAttribute(lambda o: o.I - o.J)
