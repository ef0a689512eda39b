"""
NonlinearityMother class to create Nonlinearity objects.
"""

from faker import Faker

from npsl import Nonlinearity


class NonlinearityMother:
    """
    NonlinearityMother class to create Nonlinearity objects.
    """

    @staticmethod
    def create(kappa: float = 1.0) -> Nonlinearity:
        """
        Create a random slope-restricted Nonlinearity in the class [0, ϰ].

        Args:
            kappa (float): Upper bound of the class. Default to 1.

        Returns:
            Nonlinearity: A Nonlinearity object.
        """
        faker = Faker()
        gain = faker.pyfloat(min_value=0.1 * kappa, max_value=kappa)
        factories = [
            lambda: Nonlinearity.linear_gain(gain),
            lambda: Nonlinearity.saturation(level=faker.pyfloat(min_value=0.1, max_value=2.0), gain=gain),
            lambda: Nonlinearity.deadzone(width=faker.pyfloat(min_value=0.0, max_value=1.0), slope=gain),
            lambda: Nonlinearity.scaled_tanh(gain),
        ]

        return faker.random_element(elements=factories)()
