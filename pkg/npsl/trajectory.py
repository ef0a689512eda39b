"""
This module contains the Trajectory class.
"""

from __future__ import annotations

from sys import version_info

if version_info >= (3, 12):
    from typing import override  # pragma: no cover
else:
    from typing_extensions import override  # pragma: no cover

import csv
from pathlib import Path
from typing import TextIO

import numpy as np
from numpy.typing import ArrayLike

from .core_linalg import Matrix, Vector
from .exceptions import ShapeError

GRID_TOL = 1e-9


class Trajectory:
    """
    Sampled solution of a Lur'e system on a uniform time grid: states z, nonlinearity outputs w, outputs y and the
    vector field ż recorded at every grid point. A trajectory that blew up is truncated at the last finite sample
    and flagged.

    Example:
    ```python
    from npsl import LureSystem, Nonlinearity
    from npsl.simulate import integrate

    system = LureSystem(A=[[-1.0]], B=[1], C=[1], sector_hi=1)
    trajectory = integrate(system, Nonlinearity.linear_gain(0.0), z0=[1.0], T=1.0, dt=0.5)
    print(trajectory.ts, trajectory.blew_up)
    # >>> [0.  0.5 1. ] False
    ```
    """

    __ts: Vector
    __zs: Matrix
    __ws: Matrix
    __ys: Matrix
    __zdots: Matrix
    __blew_up: bool

    def __init__(
        self,
        ts: ArrayLike,
        zs: ArrayLike,
        ws: ArrayLike,
        ys: ArrayLike,
        zdots: ArrayLike | None = None,
        blew_up: bool = False,
    ) -> None:
        """
        Trajectory constructor.

        Args:
            ts (ArrayLike): Times, strictly increasing with a uniform step.
            zs (ArrayLike): States, one row per time.
            ws (ArrayLike): Nonlinearity outputs, one row per time.
            ys (ArrayLike): Outputs, one row per time.
            zdots (ArrayLike | None, optional): Vector field at the samples. Default to NaN rows.
            blew_up (bool, optional): Whether integration stopped on a non-finite state. Default to False.

        Raises:
            ShapeError: On an empty, non-uniform or non-increasing grid, or row counts that differ from the times.
        """
        self.__ts = np.asarray(ts, dtype=np.float64).reshape(-1)
        self.__zs = np.atleast_2d(np.asarray(zs, dtype=np.float64))
        self.__ws = np.atleast_2d(np.asarray(ws, dtype=np.float64))
        self.__ys = np.atleast_2d(np.asarray(ys, dtype=np.float64))
        if zdots is None:
            self.__zdots = np.full_like(self.__zs, np.nan)
        else:
            self.__zdots = np.atleast_2d(np.asarray(zdots, dtype=np.float64))
        self.__blew_up = bool(blew_up)

        if self.__ts.size == 0:
            raise ShapeError('A trajectory needs at least one sample.')

        for name, rows in (('zs', self.__zs), ('ws', self.__ws), ('ys', self.__ys), ('zdots', self.__zdots)):
            if rows.shape[0] != self.__ts.size:
                raise ShapeError(f'<<<{name}>>> has <<<{rows.shape[0]}>>> rows for <<<{self.__ts.size}>>> times.')

        if self.__ts.size > 1:
            steps = np.diff(self.__ts)
            if np.any(steps <= 0):
                raise ShapeError('Trajectory times must be strictly increasing.')
            if np.max(np.abs(steps - steps[0])) > GRID_TOL * max(1.0, abs(steps[0])):
                raise ShapeError('Trajectory times must be uniformly spaced.')

        for array in (self.__ts, self.__zs, self.__ws, self.__ys, self.__zdots):
            array.flags.writeable = False

    @override
    def __repr__(self) -> str:
        """
        Get string representation of Trajectory.

        Returns:
            str: String representation of Trajectory.
        """
        return f'Trajectory(samples={self.__ts.size}, d={self.state_dimension}, blew_up={self.__blew_up})'

    def __len__(self) -> int:
        return int(self.__ts.size)

    @property
    def ts(self) -> Vector:
        """
        Get the sample times.

        Returns:
            Vector: Read-only times.
        """
        return self.__ts

    @property
    def zs(self) -> Matrix:
        """
        Get the states.

        Returns:
            Matrix: Read-only states, one row per time.
        """
        return self.__zs

    @property
    def ws(self) -> Matrix:
        """
        Get the nonlinearity outputs.

        Returns:
            Matrix: Read-only outputs, one row per time.
        """
        return self.__ws

    @property
    def ys(self) -> Matrix:
        """
        Get the system outputs y = Cz.

        Returns:
            Matrix: Read-only outputs, one row per time.
        """
        return self.__ys

    @property
    def zdots(self) -> Matrix:
        """
        Get the vector field ż at the samples.

        Returns:
            Matrix: Read-only derivatives, one row per time.
        """
        return self.__zdots

    @property
    def blew_up(self) -> bool:
        """
        Get whether the integration was truncated on a non-finite state.

        Returns:
            bool: The flag.
        """
        return self.__blew_up

    @property
    def dt(self) -> float:
        """
        Grid step, 0 for a single sample.
        """
        return float(self.__ts[1] - self.__ts[0]) if self.__ts.size > 1 else 0.0

    @property
    def state_dimension(self) -> int:
        return int(self.__zs.shape[1])

    def same_grid(self, other: Trajectory) -> bool:
        """
        Whether both trajectories are sampled at the same times.
        """
        return self.__ts.shape == other.ts.shape and bool(np.allclose(self.__ts, other.ts, rtol=0, atol=GRID_TOL))

    def to_csv(self, target: str | Path | TextIO) -> None:
        """
        Write the samples with columns t, z_1..z_d, w_1..w_m, y_1..y_m.

        Args:
            target (str | Path | TextIO): File path or open text stream.
        """
        header = ['t']
        header += [f'z_{i + 1}' for i in range(self.__zs.shape[1])]
        header += [f'w_{i + 1}' for i in range(self.__ws.shape[1])]
        header += [f'y_{i + 1}' for i in range(self.__ys.shape[1])]
        rows = np.column_stack([self.__ts, self.__zs, self.__ws, self.__ys])

        if isinstance(target, str | Path):
            with Path(target).open('w', newline='', encoding='utf-8') as stream:
                self._write(stream, header, rows)
            return

        self._write(target, header, rows)

    @staticmethod
    def _write(stream: TextIO, header: list[str], rows: Matrix) -> None:
        writer = csv.writer(stream)
        writer.writerow(header)
        writer.writerows([[repr(float(value)) for value in row] for row in rows])
