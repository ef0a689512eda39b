"""
MatrixMother class to create random matrices.
"""

from typing_extensions import NotRequired, TypedDict
from typing_extensions import Unpack

import numpy as np
from faker import Faker

from npsl.core_linalg import Matrix


class MatrixPrimitives(TypedDict):
    """
    Random matrix parameters.
    """

    rows: NotRequired[int]
    columns: NotRequired[int]
    low: NotRequired[float]
    high: NotRequired[float]


class MatrixMother:
    """
    MatrixMother class to create random matrices.
    """

    @staticmethod
    def create(**kwargs: Unpack[MatrixPrimitives]) -> Matrix:
        """
        Create a matrix with Faker floats. If an argument is not provided, random values will be used.

        Args:
            rows (int | None): Number of rows. Default to None.
            columns (int | None): Number of columns. Default to the number of rows.
            low (float | None): Smallest entry. Default to -3.
            high (float | None): Largest entry. Default to 3.

        Returns:
            Matrix: A float matrix.
        """
        rows = kwargs.get('rows', Faker().random_int(min=1, max=5))
        columns = kwargs.get('columns', rows)
        low = kwargs.get('low', -3.0)
        high = kwargs.get('high', 3.0)

        faker = Faker()
        entries = [faker.pyfloat(min_value=low, max_value=high) for _ in range(rows * columns)]
        return np.asarray(entries, dtype=np.float64).reshape(rows, columns)

    @staticmethod
    def metzler(size: int | None = None) -> Matrix:
        """
        Create a Metzler matrix with strictly positive off-diagonal entries, hence irreducible.

        Args:
            size (int | None): Dimension. Default to None.

        Returns:
            Matrix: A Metzler matrix.
        """
        size = size or Faker().random_int(min=2, max=5)
        matrix = MatrixMother.create(rows=size, low=0.1, high=2.0)
        np.fill_diagonal(matrix, MatrixMother.create(rows=1, columns=size, low=-5.0, high=1.0)[0])

        return matrix

    @staticmethod
    def symmetric(size: int | None = None) -> Matrix:
        """
        Create a symmetric matrix.

        Args:
            size (int | None): Dimension. Default to None.

        Returns:
            Matrix: A symmetric matrix.
        """
        matrix = MatrixMother.create(rows=size or Faker().random_int(min=1, max=5))

        return (matrix + matrix.T) / 2
