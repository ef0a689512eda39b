"""
This module contains the Nonlinearity class.
"""

from __future__ import annotations

from sys import version_info

if version_info >= (3, 12):
    from typing import override  # pragma: no cover
else:
    from typing_extensions import override  # pragma: no cover

import math
from collections.abc import Callable, Sequence
from typing import Any

import numpy as np
from numpy.typing import ArrayLike

from .core_linalg import Vector
from .exceptions import NonlinearityDeclarationError
from .nonlinearity_kind import NonlinearityKind

Response = Callable[[float, Vector], Vector]
Bounds = tuple[float, float]

VALIDATION_GRID = np.linspace(-10.0, 10.0, 2001)
VALIDATION_TOL = 1e-9
STAND_IN_WIDTH = 10.0


class Nonlinearity:
    """
    Time-varying scalar nonlinearity φ(t, y), applied channel-wise, with declared sector bounds
    ζy² ≤ φ(t, y)y ≤ ϰy² and slope bounds ζ ≤ (φ(t, y₁) - φ(t, y₂))/(y₁ - y₂) ≤ ϰ.

    Declarations are validated on a dense grid of y ∈ [-10, 10] (and on the switching instants for switched
    nonlinearities) when the nonlinearity is built.

    Example:
    ```python
    from npsl import Nonlinearity

    phi = Nonlinearity.saturation(level=1.0, gain=2.0)
    print(phi(0.0, [-3.0, 0.25, 3.0]), phi.sector)
    # >>> [-1.   0.5  1. ] (0.0, 2.0)
    ```
    """

    __kind: NonlinearityKind
    __response: Response
    __sector: Bounds
    __slope: Bounds | None
    __params: dict[str, Any]
    __check_times: tuple[float, ...]

    def __init__(
        self,
        kind: NonlinearityKind,
        response: Response,
        sector: Bounds,
        slope: Bounds | None,
        params: dict[str, Any] | None = None,
        check_times: Sequence[float] = (0.0,),
    ) -> None:
        """
        Nonlinearity constructor.

        Args:
            kind (NonlinearityKind): Family tag.
            response (Response): Vectorized map (t, y) ↦ φ(t, y).
            sector (Bounds): Declared sector (ζ, ϰ).
            slope (Bounds | None): Declared slope bounds, None when not slope restricted.
            params (dict[str, Any] | None, optional): Parameters, for reports. Default to none.
            check_times (Sequence[float], optional): Times at which the declarations are validated. Default to (0,).

        Raises:
            NonlinearityDeclarationError: If the response violates a declaration on the validation grid.
        """
        self.__kind = kind
        self.__response = response
        self.__sector = (float(sector[0]), float(sector[1]))
        self.__slope = None if slope is None else (float(slope[0]), float(slope[1]))
        self.__params = dict(params or {})
        self.__check_times = tuple(check_times)

        for t in self.__check_times:
            self._validate(t)

    def _validate(self, t: float) -> None:
        """
        Check the declarations on the grid at time t.
        """
        y = VALIDATION_GRID
        values = self.__response(t, y)
        products, squares = values * y, y * y
        lo, hi = self.__sector

        low = np.isfinite(lo) & (products < lo * squares - VALIDATION_TOL * (1 + squares))
        high = np.isfinite(hi) & (products > hi * squares + VALIDATION_TOL * (1 + squares))
        broken = np.flatnonzero(low | high)
        if broken.size:
            raise NonlinearityDeclarationError(kind=self.__kind.value, bound='sector', worst=float(y[broken[0]]))

        if self.__slope is not None:
            quotients = np.diff(values) / np.diff(y)
            slope_lo, slope_hi = self.__slope
            bad = np.flatnonzero((quotients < slope_lo - VALIDATION_TOL) | (quotients > slope_hi + VALIDATION_TOL))
            if bad.size:
                raise NonlinearityDeclarationError(kind=self.__kind.value, bound='slope', worst=float(y[bad[0]]))

    def __call__(self, t: float, y: ArrayLike) -> Vector:
        """
        Evaluate φ(t, y) entrywise.

        Args:
            t (float): Time.
            y (ArrayLike): Outputs, any shape.

        Returns:
            Vector: φ(t, y) with the shape of y.
        """
        return np.asarray(self.__response(t, np.asarray(y, dtype=np.float64)), dtype=np.float64)

    @override
    def __repr__(self) -> str:
        """
        Get string representation of Nonlinearity.

        Returns:
            str: String representation of Nonlinearity.
        """
        return f'Nonlinearity(kind={self.__kind.value}, sector={self.__sector}, slope={self.__slope})'

    @property
    def kind(self) -> NonlinearityKind:
        """
        Get the family tag.

        Returns:
            NonlinearityKind: The kind.
        """
        return self.__kind

    @property
    def sector(self) -> Bounds:
        """
        Get the declared sector.

        Returns:
            Bounds: (ζ, ϰ).
        """
        return self.__sector

    @property
    def slope(self) -> Bounds | None:
        """
        Get the declared slope bounds.

        Returns:
            Bounds | None: (ζ, ϰ), None when not slope restricted.
        """
        return self.__slope

    @property
    def params(self) -> dict[str, Any]:
        """
        Get the parameters.

        Returns:
            dict[str, Any]: Copy of the parameters.
        """
        return dict(self.__params)

    @property
    def label(self) -> str:
        """
        Short name with parameters, used in reports.
        """
        inner = ','.join(f'{key}={value:g}' for key, value in self.__params.items() if isinstance(value, float | int))
        return f'{self.__kind.value}({inner})'

    def fits_sector(self, zeta: float, kappa: float) -> bool:
        """
        Whether the declared sector lies inside [ζ, ϰ].
        """
        return zeta <= self.__sector[0] and self.__sector[1] <= kappa

    def fits_slope(self, zeta: float, kappa: float) -> bool:
        """
        Whether slope bounds are declared and lie inside [ζ, ϰ].
        """
        return self.__slope is not None and zeta <= self.__slope[0] and self.__slope[1] <= kappa

    def shifted(self, offset: float) -> Nonlinearity:
        """
        φ(t, y) + offset·y, with both declarations shifted by offset.
        """
        response = self.__response
        slope = None if self.__slope is None else (self.__slope[0] + offset, self.__slope[1] + offset)

        return Nonlinearity(
            kind=self.__kind,
            response=lambda t, y: response(t, y) + offset * y,
            sector=(self.__sector[0] + offset, self.__sector[1] + offset),
            slope=slope,
            params={**self.__params, 'offset': offset},
            check_times=self.__check_times,
        )

    def to_primitives(self) -> dict[str, Any]:
        """
        Get the nonlinearity as plain values.

        Returns:
            dict[str, Any]: Kind, parameters and declarations.
        """
        return {
            'kind': self.__kind.value,
            'params': self.params,
            'sector': list(self.__sector),
            'slope': None if self.__slope is None else list(self.__slope),
        }

    @classmethod
    def linear_gain(cls, k: float) -> Nonlinearity:
        """
        φ(t, y) = ky.
        """
        return cls(NonlinearityKind.LINEAR_GAIN, lambda t, y: k * y, (k, k), (k, k), {'k': float(k)})

    @classmethod
    def saturation(cls, level: float, gain: float = 1.0) -> Nonlinearity:
        """
        φ(t, y) = clip(gain·y, -level, level), in the sector and slope class [0, gain].

        Raises:
            ValueError: If level or gain is not positive.
        """
        if level <= 0 or gain <= 0:
            raise ValueError('Saturation level and gain must be positive.')

        return cls(
            NonlinearityKind.SATURATION,
            lambda t, y: np.clip(gain * y, -level, level),
            (0.0, gain),
            (0.0, gain),
            {'level': float(level), 'gain': float(gain)},
        )

    @classmethod
    def deadzone(cls, width: float, slope: float = 1.0) -> Nonlinearity:
        """
        φ(t, y) = slope·sign(y)·max(|y| - width, 0), in the sector and slope class [0, slope].

        Raises:
            ValueError: If width is negative or slope is not positive.
        """
        if width < 0 or slope <= 0:
            raise ValueError('Deadzone width must be nonnegative and slope positive.')

        return cls(
            NonlinearityKind.DEADZONE,
            lambda t, y: slope * np.sign(y) * np.maximum(np.abs(y) - width, 0.0),
            (0.0, slope),
            (0.0, slope),
            {'width': float(width), 'slope': float(slope)},
        )

    @classmethod
    def scaled_tanh(cls, gain: float) -> Nonlinearity:
        """
        φ(t, y) = gain·tanh(y), in the sector and slope class [0, gain].

        Raises:
            ValueError: If gain is not positive.
        """
        if gain <= 0:
            raise ValueError('Scaled tanh gain must be positive.')

        return cls(
            NonlinearityKind.SCALED_TANH,
            lambda t, y: gain * np.tanh(y),
            (0.0, gain),
            (0.0, gain),
            {'gain': float(gain)},
        )

    @classmethod
    def pw_linear(cls, table: Sequence[Sequence[float]]) -> Nonlinearity:
        """
        Piecewise linear interpolation of a table of (y, φ(y)) points through the origin, extended linearly beyond
        the first and last points. Sector and slope bounds are read off the table.

        Args:
            table (Sequence[Sequence[float]]): At least two (y, value) pairs with distinct y.

        Raises:
            ValueError: On fewer than two points or repeated abscissae.
            NonlinearityDeclarationError: If the interpolant does not pass through the origin.
        """
        points = np.asarray(sorted((float(y), float(v)) for y, v in table), dtype=np.float64)
        if points.shape[0] < 2 or np.any(np.diff(points[:, 0]) <= 0):
            raise ValueError('A piecewise linear table needs at least two points with distinct y.')

        ys, vs = points[:, 0], points[:, 1]
        slopes = np.diff(vs) / np.diff(ys)

        def response(t: float, y: Vector) -> Vector:
            inside = np.interp(y, ys, vs)
            below = vs[0] + slopes[0] * (y - ys[0])
            above = vs[-1] + slopes[-1] * (y - ys[-1])
            return np.where(y < ys[0], below, np.where(y > ys[-1], above, inside))

        origin = float(response(0.0, np.zeros(1))[0])
        if abs(origin) > VALIDATION_TOL:
            raise NonlinearityDeclarationError(kind=NonlinearityKind.PW_LINEAR.value, bound='sector', worst=0.0)

        nonzero = ys != 0
        ratios = np.concatenate([vs[nonzero] / ys[nonzero], slopes[[0, -1]]])

        return cls(
            NonlinearityKind.PW_LINEAR,
            response,
            (float(ratios.min()), float(ratios.max())),
            (float(slopes.min()), float(slopes.max())),
            {'table': points.tolist()},
        )

    @classmethod
    def switched(cls, members: Sequence[Nonlinearity], times: Sequence[float]) -> Nonlinearity:
        """
        Time-varying nonlinearity equal to members[j] on [times[j-1], times[j]), declared with the hull of the
        members' bounds (slope restricted only if every member is).

        Args:
            members (Sequence[Nonlinearity]): At least one member.
            times (Sequence[float]): Increasing switching instants, one fewer than the members.

        Raises:
            ValueError: On inconsistent lengths or unsorted times.
        """
        if not members or len(times) != len(members) - 1 or np.any(np.diff(times) <= 0):
            raise ValueError('Switched nonlinearities need increasing switch times, one fewer than the members.')

        instants = np.asarray(times, dtype=np.float64)

        def response(t: float, y: Vector) -> Vector:
            return members[int(np.searchsorted(instants, t, side='right'))](t, y)

        sectors = np.array([member.sector for member in members])
        slopes = [member.slope for member in members]
        slope = None
        if all(bounds is not None for bounds in slopes):
            hull = np.array(slopes, dtype=np.float64)
            slope = (float(hull[:, 0].min()), float(hull[:, 1].max()))

        return cls(
            NonlinearityKind.SWITCHED,
            response,
            (float(sectors[:, 0].min()), float(sectors[:, 1].max())),
            slope,
            {'members': [member.label for member in members], 'times': instants.tolist()},
            check_times=(0.0, *instants.tolist()),
        )

    @classmethod
    def in_class(cls, zeta: float, kappa: float) -> list[Nonlinearity]:
        """
        Five nonlinearities in the sector and slope class [ζ, ϰ]: the edge gain ϰ, a saturation, a deadzone, a scaled
        tanh and a switched one. An infinite bound is replaced by one at distance 10 from the other.

        Args:
            zeta (float): Lower bound, possibly -inf.
            kappa (float): Upper bound, possibly inf.

        Returns:
            list[Nonlinearity]: The members.
        """
        lo = zeta if math.isfinite(zeta) else kappa - STAND_IN_WIDTH
        hi = kappa if math.isfinite(kappa) else zeta + STAND_IN_WIDTH
        width = hi - lo

        base = [
            cls.linear_gain(width),
            cls.saturation(level=1.0, gain=width),
            cls.deadzone(width=0.5, slope=width),
            cls.scaled_tanh(width),
            cls.switched([cls.linear_gain(0.0), cls.scaled_tanh(width), cls.linear_gain(width / 2)], [1.0, 3.0]),
        ]
        return [member if lo == 0 else member.shifted(lo) for member in base]
