"""
LureSystemMother class to create LureSystem objects.
"""

import math
from typing_extensions import NotRequired, TypedDict
from typing_extensions import Unpack

import numpy as np
from faker import Faker

from npsl import LureSystem
from tests.mother.matrix_mother import MatrixMother


class LureSystemPrimitives(TypedDict):
    """
    LureSystem class primitives.
    """

    dimension: NotRequired[int]
    channels: NotRequired[int]
    zeta: NotRequired[float]
    kappa: NotRequired[float]


class LureSystemMother:
    """
    LureSystemMother class to create LureSystem objects.
    """

    @staticmethod
    def create(**kwargs: Unpack[LureSystemPrimitives]) -> LureSystem:
        """
        Create a LureSystem object with random matrices and A shifted to be strongly stable. If an argument is not
        provided, random values will be used.

        Args:
            dimension (int | None): State dimension d. Default to None.
            channels (int | None): Number of channels m. Default to 1.
            zeta (float | None): Lower sector bound. Default to 0.
            kappa (float | None): Upper sector bound. Default to a random value in [0.5, 3].

        Returns:
            LureSystem: A LureSystem object.
        """
        faker = Faker()
        d = kwargs.get('dimension', faker.random_int(min=1, max=4))
        m = kwargs.get('channels', 1)
        zeta = kwargs.get('zeta', 0.0)
        kappa = kwargs.get('kappa', faker.pyfloat(min_value=0.5, max_value=3.0))

        A = MatrixMother.create(rows=d, low=-1.0, high=1.0) - 4 * np.eye(d)
        B = MatrixMother.create(rows=d, columns=m, low=-1.0, high=1.0)
        C = MatrixMother.create(rows=m, columns=d, low=-1.0, high=1.0)

        return LureSystem(A=A, B=B, C=C, sector_lo=zeta, sector_hi=kappa)

    @staticmethod
    def positive(kappa: float = 5.0) -> LureSystem:
        """
        Create the two-state positive system whose Metzler bound has spectral abscissa (-5 + √(1 + 4ϰ))/2.

        Args:
            kappa (float): Upper sector bound. Default to 5.

        Returns:
            LureSystem: A LureSystem object.
        """
        return LureSystem(A=[[-2, 1], [0, -3]], B=[0, 1], C=[1, 0], sector_lo=0, sector_hi=kappa)

    @staticmethod
    def scalar(kappa: float = 0.9, a: float = -1.0) -> LureSystem:
        """
        Create the one-state system ż = az + w, y = z with sector [0, ϰ].

        Args:
            kappa (float): Upper sector bound. Default to 0.9.
            a (float): State coefficient. Default to -1.

        Returns:
            LureSystem: A LureSystem object.
        """
        return LureSystem(A=[[a]], B=[1], C=[1], sector_lo=0, sector_hi=kappa)

    @staticmethod
    def unbounded(dimension: int = 2) -> LureSystem:
        """
        Create a stable system with sector [0, inf).

        Args:
            dimension (int): State dimension. Default to 2.

        Returns:
            LureSystem: A LureSystem object.
        """
        return LureSystemMother.create(dimension=dimension, kappa=math.inf)
