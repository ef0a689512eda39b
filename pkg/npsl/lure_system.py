"""
This module contains the LureSystem and InputSubstitution classes.
"""

from __future__ import annotations

from sys import version_info

if version_info >= (3, 12):
    from typing import override  # pragma: no cover
else:
    from typing_extensions import override  # pragma: no cover

import math
from collections.abc import Sequence
from typing import Any, NamedTuple

import numpy as np
from numpy.typing import ArrayLike

from .core_linalg import Matrix, Vector, as_matrix
from .exceptions import ShapeError


class InputSubstitution(NamedTuple):
    """
    Record of one sector normalization step on one channel, mapping the nonlinearity output w to the normalized input.

    - 'shift': w' = w - gain·y, used when the lower bound ζ = gain is finite;
    - 'flip': w' = gain·y - w, used when ζ = -inf and ϰ = gain is finite.
    """

    channel: int
    kind: str
    gain: float


class LureSystem:
    """
    Lur'e system ż = Az + Bw, y = Cz, w = φ(t, y), with a diagonal nonlinearity whose channel i satisfies the sector
    condition ζ_i y_i² ≤ φ_i(t, y) y_i ≤ ϰ_i y_i². Sector bounds are extended reals; ϰ = inf means no upper bound.

    Example:
    ```python
    from npsl import LureSystem

    system = LureSystem(A=[[-2, 1], [0, -3]], B=[0, 1], C=[1, 0], sector_lo=0, sector_hi=5)
    print(system)
    # >>> LureSystem(d=2, m=1, zeta=[0.0], kappa=[5.0])
    ```
    """

    __A: Matrix
    __B: Matrix
    __C: Matrix
    __sector_lo: Vector
    __sector_hi: Vector
    __substitutions: tuple[InputSubstitution, ...]

    def __init__(
        self,
        A: ArrayLike,
        B: ArrayLike,
        C: ArrayLike,
        sector_lo: ArrayLike = 0.0,
        sector_hi: ArrayLike = math.inf,
        substitutions: Sequence[InputSubstitution] = (),
    ) -> None:
        """
        LureSystem constructor.

        Args:
            A (ArrayLike): State matrix, d×d.
            B (ArrayLike): Input matrix, d×m (a vector is read as one column).
            C (ArrayLike): Output matrix, m×d (a vector is read as one row).
            sector_lo (ArrayLike, optional): Lower sector bounds ζ, scalar or length m. Default to 0.
            sector_hi (ArrayLike, optional): Upper sector bounds ϰ, scalar or length m. Default to inf.
            substitutions (Sequence[InputSubstitution], optional): Normalization steps already applied. Default to
            none.

        Raises:
            ShapeError: If the matrices do not fit together.
            ValueError: If some channel has ζ ≥ ϰ, both bounds infinite, or NaN bounds.
        """
        self.__A = as_matrix(A, name='A', square=True)
        d = self.__A.shape[0]

        b = np.asarray(B, dtype=np.float64)
        c = np.asarray(C, dtype=np.float64)
        self.__B = as_matrix(b.reshape(-1, 1) if b.ndim == 1 else b, name='B')
        self.__C = as_matrix(c.reshape(1, -1) if c.ndim == 1 else c, name='C')

        if self.__B.shape[0] != d or self.__C.shape[1] != d or self.__B.shape[1] != self.__C.shape[0]:
            raise ShapeError(
                f'Incompatible shapes A <<<{self.__A.shape}>>>, B <<<{self.__B.shape}>>>, C <<<{self.__C.shape}>>>.',
            )

        m = self.__B.shape[1]
        self.__sector_lo = self._broadcast(sector_lo, m, 'sector_lo')
        self.__sector_hi = self._broadcast(sector_hi, m, 'sector_hi')

        for i, (lo, hi) in enumerate(zip(self.__sector_lo, self.__sector_hi, strict=True)):
            if math.isnan(lo) or math.isnan(hi):
                raise ValueError(f'Sector bounds of channel <<<{i}>>> must not be NaN.')
            if math.isinf(lo) and math.isinf(hi):
                raise ValueError(f'Sector of channel <<<{i}>>> needs at least one finite bound.')
            if not lo < hi:
                raise ValueError(f'Sector of channel <<<{i}>>> must satisfy zeta < kappa, got <<<{lo}>>>, <<<{hi}>>>.')

        self.__substitutions = tuple(substitutions)

    @staticmethod
    def _broadcast(value: ArrayLike, size: int, name: str) -> Vector:
        """
        Read a scalar or per-channel vector of extended reals.
        """
        array = np.atleast_1d(np.asarray(value, dtype=np.float64))
        if array.size == 1:
            return np.full(size, float(array[0]))

        if array.ndim != 1 or array.size != size:
            raise ShapeError(f'<<<{name}>>> must have one entry per channel (<<<{size}>>>), got <<<{array.shape}>>>.')

        return array.copy()

    @override
    def __repr__(self) -> str:
        """
        Get string representation of LureSystem.

        Returns:
            str: String representation of LureSystem.
        """
        return (
            f'LureSystem(d={self.state_dimension}, m={self.channel_count}, '
            f'zeta={self.__sector_lo.tolist()}, kappa={self.__sector_hi.tolist()})'
        )

    @property
    def A(self) -> Matrix:
        """
        Get the state matrix.

        Returns:
            Matrix: Copy of A.
        """
        return self.__A.copy()

    @property
    def B(self) -> Matrix:
        """
        Get the input matrix.

        Returns:
            Matrix: Copy of B, d×m.
        """
        return self.__B.copy()

    @property
    def C(self) -> Matrix:
        """
        Get the output matrix.

        Returns:
            Matrix: Copy of C, m×d.
        """
        return self.__C.copy()

    @property
    def sector_lo(self) -> Vector:
        """
        Get the lower sector bounds ζ.

        Returns:
            Vector: One bound per channel, possibly -inf.
        """
        return self.__sector_lo.copy()

    @property
    def sector_hi(self) -> Vector:
        """
        Get the upper sector bounds ϰ.

        Returns:
            Vector: One bound per channel, possibly inf.
        """
        return self.__sector_hi.copy()

    @property
    def substitutions(self) -> tuple[InputSubstitution, ...]:
        """
        Get the normalization steps applied to reach this system, in order.

        Returns:
            tuple[InputSubstitution, ...]: The steps.
        """
        return self.__substitutions

    @property
    def state_dimension(self) -> int:
        """
        Get d.
        """
        return int(self.__A.shape[0])

    @property
    def channel_count(self) -> int:
        """
        Get m.
        """
        return int(self.__B.shape[1])

    @property
    def is_scalar_channel(self) -> bool:
        """
        Whether there is a single nonlinearity channel.
        """
        return self.channel_count == 1

    def is_normalized(self) -> bool:
        """
        Whether every channel has ζ = 0.

        Returns:
            bool: True for normalized sectors [0, ϰ].
        """
        return bool(np.all(self.__sector_lo == 0))

    def original_sector(self) -> tuple[Vector, Vector]:
        """
        Sector bounds before the recorded normalization steps.

        Returns:
            tuple[Vector, Vector]: ζ and ϰ of the original system.
        """
        lo, hi = self.__sector_lo.copy(), self.__sector_hi.copy()
        for step in reversed(self.__substitutions):
            if step.kind == 'shift':
                lo[step.channel] += step.gain
                hi[step.channel] += step.gain
            else:
                lo[step.channel], hi[step.channel] = -math.inf, step.gain

        return lo, hi

    def substitute_input(self, w: ArrayLike, y: ArrayLike) -> Vector:
        """
        Map the original nonlinearity output to the input of this (normalized) system, applying the recorded steps.

        Args:
            w (ArrayLike): Original outputs, shape (m,) or (k, m).
            y (ArrayLike): Outputs y = Cz with the same shape.

        Returns:
            Vector: The substituted inputs.
        """
        value = np.array(w, dtype=np.float64)
        outputs = np.asarray(y, dtype=np.float64)
        for step in self.__substitutions:
            if step.kind == 'shift':
                value[..., step.channel] = value[..., step.channel] - step.gain * outputs[..., step.channel]
            else:
                value[..., step.channel] = step.gain * outputs[..., step.channel] - value[..., step.channel]

        return value

    def restore_input(self, w: ArrayLike, y: ArrayLike) -> Vector:
        """
        Inverse of `substitute_input`.

        Args:
            w (ArrayLike): Inputs of this system, shape (m,) or (k, m).
            y (ArrayLike): Outputs y = Cz with the same shape.

        Returns:
            Vector: The original nonlinearity outputs.
        """
        value = np.array(w, dtype=np.float64)
        outputs = np.asarray(y, dtype=np.float64)
        for step in reversed(self.__substitutions):
            if step.kind == 'shift':
                value[..., step.channel] = value[..., step.channel] + step.gain * outputs[..., step.channel]
            else:
                value[..., step.channel] = step.gain * outputs[..., step.channel] - value[..., step.channel]

        return value

    def closed_loop(self, gains: ArrayLike) -> Matrix:
        """
        State matrix A + B diag(k) C of the linear loop w = diag(k) y.

        Args:
            gains (ArrayLike): Scalar or one gain per channel.

        Returns:
            Matrix: The closed-loop matrix.
        """
        k = self._broadcast(gains, self.channel_count, 'gains')

        return self.__A + self.__B @ np.diag(k) @ self.__C

    def replace(self, **changes: Any) -> LureSystem:
        """
        Copy with some of A, B, C, sector_lo, sector_hi, substitutions replaced.
        """
        values: dict[str, Any] = {
            'A': self.__A,
            'B': self.__B,
            'C': self.__C,
            'sector_lo': self.__sector_lo,
            'sector_hi': self.__sector_hi,
            'substitutions': self.__substitutions,
        }
        unknown = set(changes) - set(values)
        if unknown:
            raise TypeError(f'Unknown LureSystem fields <<<{sorted(unknown)}>>>.')

        values.update(changes)
        return LureSystem(**values)

    def to_primitives(self) -> dict[str, Any]:
        """
        Get the system as plain values, infinite bounds kept as floats.

        Returns:
            dict[str, Any]: Matrices as nested lists, bounds and substitutions.
        """
        return {
            'A': self.__A.tolist(),
            'B': self.__B.tolist(),
            'C': self.__C.tolist(),
            'zeta': self.__sector_lo.tolist(),
            'kappa': self.__sector_hi.tolist(),
            'substitutions': [step._asdict() for step in self.__substitutions],
        }
