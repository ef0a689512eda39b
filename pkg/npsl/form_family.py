"""
This module contains the FormFamily class.
"""

from __future__ import annotations

from sys import version_info

if version_info >= (3, 12):
    from typing import override  # pragma: no cover
else:
    from typing_extensions import override  # pragma: no cover

from collections.abc import Sequence

import numpy as np
from numpy.typing import ArrayLike

from .core_linalg import Matrix, Vector, as_matrix, as_vector
from .exceptions import ShapeError
from .norm_spec import NormSpec


class FormFamily:
    """
    One S-Lemma instance: the non-polynomial 2-forms p_i(x) = ⟦P_i x, x⟧ for P₀ (objective) and P₁…P_s (constraints
    p_i(x) ≤ ρ_i‖x‖²), the norm they are taken in, and whether x is restricted to the nonnegative orthant.

    Example:
    ```python
    from npsl import FormFamily, NormSpec

    family = FormFamily(forms=[[[1, 1], [0, 0]], [[0, 0], [0, -1]]], rho=[-1], spec=NormSpec(p=1), conic=True)
    print(family)
    # >>> FormFamily(n=2, s=1, NormSpec(p=1, weight=none), conic=True)
    ```
    """

    __forms: tuple[Matrix, ...]
    __rho: Vector
    __spec: NormSpec
    __conic: bool

    def __init__(
        self,
        forms: Sequence[ArrayLike],
        rho: ArrayLike | None = None,
        spec: NormSpec | None = None,
        conic: bool = False,
    ) -> None:
        """
        FormFamily constructor.

        Args:
            forms (Sequence[ArrayLike]): Matrices P₀, P₁, …, P_s.
            rho (ArrayLike | None, optional): Constraint levels ρ₁…ρ_s. Default to zeros.
            spec (NormSpec | None, optional): Norm selection. Default to the Euclidean norm.
            conic (bool, optional): Restrict to x ≥ 0. Default to False.

        Raises:
            ShapeError: If there is no objective, the matrices differ in size or ρ has the wrong length.
        """
        if len(forms) == 0:
            raise ShapeError('A form family needs at least the objective matrix P₀.')

        matrices = tuple(as_matrix(form, name=f'P{index}', square=True) for index, form in enumerate(forms))
        n = matrices[0].shape[0]
        if any(matrix.shape != (n, n) for matrix in matrices):
            raise ShapeError(f'All forms must be <<<{n}x{n}>>>.')

        s = len(matrices) - 1
        if rho is None:
            levels = np.zeros(s)
        else:
            levels = np.atleast_1d(np.asarray(rho, dtype=np.float64))
            if s > 0:
                levels = as_vector(levels, name='rho', length=s)
            elif levels.size != 0:
                raise ShapeError('Constraint levels given for a family without constraints.')

        spec = spec or NormSpec()
        if spec.weight is not None and spec.weight.shape[0] != n:
            raise ShapeError(f'Weight shape <<<{spec.weight.shape}>>> does not match forms of size <<<{n}>>>.')

        for matrix in matrices:
            matrix.flags.writeable = False
        levels.flags.writeable = False

        self.__forms = matrices
        self.__rho = levels
        self.__spec = spec
        self.__conic = conic

    @override
    def __repr__(self) -> str:
        """
        Get string representation of FormFamily.

        Returns:
            str: String representation of FormFamily.
        """
        return f'FormFamily(n={self.dimension}, s={self.constraint_count}, {self.__spec!r}, conic={self.__conic})'

    @property
    def forms(self) -> tuple[Matrix, ...]:
        """
        Get the read-only matrices P₀…P_s.

        Returns:
            tuple[Matrix, ...]: The forms.
        """
        return self.__forms

    @property
    def objective(self) -> Matrix:
        """
        Get the objective matrix P₀.

        Returns:
            Matrix: P₀.
        """
        return self.__forms[0]

    @property
    def constraints(self) -> tuple[Matrix, ...]:
        """
        Get the constraint matrices P₁…P_s.

        Returns:
            tuple[Matrix, ...]: The constraint forms.
        """
        return self.__forms[1:]

    @property
    def rho(self) -> Vector:
        """
        Get the read-only constraint levels.

        Returns:
            Vector: ρ of length s.
        """
        return self.__rho

    @property
    def spec(self) -> NormSpec:
        """
        Get the norm selection.

        Returns:
            NormSpec: The spec.
        """
        return self.__spec

    @property
    def conic(self) -> bool:
        """
        Whether x is restricted to the nonnegative orthant.

        Returns:
            bool: Conic flag.
        """
        return self.__conic

    @property
    def dimension(self) -> int:
        """
        Get the common size n of the forms.

        Returns:
            int: n.
        """
        return int(self.__forms[0].shape[0])

    @property
    def constraint_count(self) -> int:
        """
        Get the number s of constraints.

        Returns:
            int: s.
        """
        return len(self.__forms) - 1

    def combined(self, tau: ArrayLike) -> Matrix:
        """
        Multiplier matrix P(τ) = P₀ - Σ τ_j P_j.

        Raises:
            ShapeError: If τ does not have length s.
        """
        multipliers = np.atleast_1d(np.asarray(tau, dtype=np.float64))
        if multipliers.size != self.constraint_count:
            raise ShapeError(
                f'Multipliers must have length <<<{self.constraint_count}>>>, got <<<{multipliers.size}>>>.',
            )

        result = self.__forms[0].copy()
        for multiplier, form in zip(multipliers, self.__forms[1:], strict=True):
            result -= multiplier * form

        return result

    def with_spec(self, spec: NormSpec) -> FormFamily:
        """
        Same forms and levels in another norm.
        """
        return FormFamily(forms=self.__forms, rho=self.__rho, spec=spec, conic=self.__conic)

    def with_conic(self, conic: bool) -> FormFamily:
        """
        Same forms and levels with the conic flag set or cleared.
        """
        return FormFamily(forms=self.__forms, rho=self.__rho, spec=self.__spec, conic=conic)
