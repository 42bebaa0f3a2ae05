"""Modal amplitude and spectrum models."""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Any


def _complex_dict(value: complex) -> dict[str, float]:
    return {"re": value.real, "im": value.imag}


@dataclass(frozen=True)
class ModalConstants:
    """
    The hidden-constant bundle of a linearised state.

    Attributes:
        alpha (float): Fast modal frequency.
        beta (float): Slow modal frequency.
        C1 (complex): Amplitude of the alpha mode at t = 0.
        C3 (complex): Amplitude of the beta mode at t = 0.
        D1 (float): First hidden constant, proportional to |C1|^2.
        D2 (float): Second hidden constant, proportional to |C3|^2.
        J (float): Jacobi-type energy of the linearised motion.

    """

    alpha: float
    beta: float
    C1: complex  # noqa: N815
    C3: complex  # noqa: N815
    D1: float  # noqa: N815
    D2: float  # noqa: N815
    J: float  # noqa: N815

    @property
    def phi1(self) -> float:
        """Phase of C1 in (-pi, pi]."""
        return _principal_phase(self.C1)

    @property
    def phi3(self) -> float:
        """Phase of C3 in (-pi, pi]."""
        return _principal_phase(self.C3)

    def to_dict(self) -> dict[str, Any]:
        """Return the constants as a plain mapping."""
        return {
            "alpha": self.alpha,
            "beta": self.beta,
            "C1": _complex_dict(self.C1),
            "C3": _complex_dict(self.C3),
            "abs_C1": abs(self.C1),
            "abs_C3": abs(self.C3),
            "phi1": self.phi1,
            "phi3": self.phi3,
            "D1": self.D1,
            "D2": self.D2,
            "J": self.J,
        }


def _principal_phase(value: complex) -> float:
    phase = cmath.phase(value)
    # cmath returns -pi on the negative real axis with a negative zero part
    return phase if phase > -cmath.pi else cmath.pi


@dataclass(frozen=True)
class BohrLine:
    """
    One line of a Bohr spectrum.

    The amplitudes are the coefficients of exp(i frequency t) in each signal.
    """

    frequency: float
    delta: complex
    epsilon: complex
    x: complex
    y: complex
    label: str = ""

    def to_dict(self) -> dict[str, Any]:
        """Return the line as a plain mapping."""
        return {
            "label": self.label,
            "frequency": self.frequency,
            "delta": _complex_dict(self.delta),
            "epsilon": _complex_dict(self.epsilon),
            "X": _complex_dict(self.x),
            "Y": _complex_dict(self.y),
        }


@dataclass(frozen=True)
class BohrSpectrum:
    """Frequencies with complex amplitudes, ordered by frequency."""

    lines: tuple[BohrLine, ...]

    @property
    def frequencies(self) -> tuple[float, ...]:
        """The ordered frequencies."""
        return tuple(line.frequency for line in self.lines)

    def line(self, frequency: float, tol: float = 1e-12) -> BohrLine | None:
        """Return the line at a frequency, or None if it is absent."""
        for candidate in self.lines:
            if abs(candidate.frequency - frequency) <= tol * max(1.0, abs(frequency)):
                return candidate
        return None

    def to_dict(self) -> dict[str, Any]:
        """Return the spectrum as a plain mapping."""
        return {"lines": [line.to_dict() for line in self.lines]}


@dataclass(frozen=True)
class EccentricSolution:
    """
    First-order-in-e solution about L4/L5 for an eccentric primary orbit.

    Attributes:
        e (float): Eccentricity of the primaries' orbit.
        omega (float): Mean motion of the primaries.
        modal (ModalConstants): The zeroth-order amplitudes.
        zeroth (BohrSpectrum): Lines at +-alpha and +-beta.
        first (BohrSpectrum): Unscaled first-order lines at +-(omega +- alpha)
            and +-(omega +- beta); the solution carries e times these.
        gamma (float): Principal-axis angle relating (delta, epsilon) to (X, Y).
        valid (bool): Whether e lies within the first-order validity bound.

    """

    e: float
    omega: float
    modal: ModalConstants
    zeroth: BohrSpectrum
    first: BohrSpectrum
    gamma: float
    valid: bool

    def to_dict(self) -> dict[str, Any]:
        """Return the solution as a plain mapping."""
        return {
            "e": self.e,
            "omega": self.omega,
            "gamma": self.gamma,
            "valid": self.valid,
            "modal": self.modal.to_dict(),
            "zeroth": self.zeroth.to_dict(),
            "first": self.first.to_dict(),
        }


@dataclass(frozen=True)
class SixConstants:
    """
    Constants of integration of the first-order eccentric solution.

    The four sideband values are e times the delta amplitude of each line.
    """

    abs_C1: float  # noqa: N815
    abs_C3: float  # noqa: N815
    omega_plus_alpha: float
    omega_minus_alpha: float
    omega_plus_beta: float
    omega_minus_beta: float

    def as_tuple(self) -> tuple[float, ...]:
        """Return the six values in declaration order."""
        return (
            self.abs_C1,
            self.abs_C3,
            self.omega_plus_alpha,
            self.omega_minus_alpha,
            self.omega_plus_beta,
            self.omega_minus_beta,
        )

    def to_dict(self) -> dict[str, float]:
        """Return the constants as a plain mapping."""
        return {
            "abs_C1": self.abs_C1,
            "abs_C3": self.abs_C3,
            "omega_plus_alpha": self.omega_plus_alpha,
            "omega_minus_alpha": self.omega_minus_alpha,
            "omega_plus_beta": self.omega_plus_beta,
            "omega_minus_beta": self.omega_minus_beta,
        }


@dataclass(frozen=True)
class ConservationDrift:
    """
    Relative change of the conserved quantities along an integrated flow.

    Attributes:
        span (float): Integration time.
        D1 (float): Relative drift of the first hidden constant.
        D2 (float): Relative drift of the second hidden constant.
        J (float): Relative drift of the linearised energy.
        identity (float): Largest residual of the identity tying J to D1, D2.

    """

    span: float
    D1: float  # noqa: N815
    D2: float  # noqa: N815
    J: float  # noqa: N815
    identity: float

    @property
    def worst(self) -> float:
        """Largest of the three drifts."""
        return max(self.D1, self.D2, self.J)

    def to_dict(self) -> dict[str, float]:
        """Return the drifts as a plain mapping."""
        return {
            "span": self.span,
            "D1": self.D1,
            "D2": self.D2,
            "J": self.J,
            "identity": self.identity,
        }
