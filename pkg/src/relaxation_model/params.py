from dataclasses import dataclass, replace
from typing import Tuple

import numpy as np
from scipy import constants

from common import DomainError

MAX_EPSILON = 1e-3
DEFAULT_NARROWING_THRESHOLD = 1e-2


@dataclass(frozen=True)
class SystemParams:
    """Coherent two-spin parameters. Frequencies in rad/s, J in Hz."""

    omega0: float
    delta_offset: float
    j_coupling: float
    epsilon: float = 1e-5

    def __post_init__(self):
        if not np.isfinite(
            [self.omega0, self.delta_offset, self.j_coupling, self.epsilon]
        ).all():
            raise DomainError(f"System parameters must be finite: {self}")
        if abs(self.epsilon) >= MAX_EPSILON:
            raise DomainError(
                f"Polarization |epsilon| must stay below {MAX_EPSILON}, got {self.epsilon}"
            )


@dataclass(frozen=True)
class BathParams:
    """Dipolar bath. b_dipolar and csa_d in rad/s, tau_c in seconds."""

    b_dipolar: float
    tau_c: float
    csa_d: float = 0.0
    include_cross_correlation: bool = False
    narrowing_threshold: float = DEFAULT_NARROWING_THRESHOLD

    def __post_init__(self):
        if not self.tau_c > 0:
            raise DomainError(f"Correlation time must be positive, got {self.tau_c}")
        if not self.b_dipolar >= 0:
            raise DomainError(
                f"Dipolar coupling must be nonnegative, got {self.b_dipolar}"
            )
        if not np.isfinite(self.csa_d):
            raise DomainError(f"CSA constant must be finite, got {self.csa_d}")

    @property
    def k0(self) -> float:
        return k0(self)

    def narrowing_parameter(self, omega0: float) -> float:
        return abs(omega0) * self.tau_c


def k0(bath: BathParams) -> float:
    """Zero-frequency dipolar spectral density K0 = 12 b^2 tau_c / 5."""
    return 12.0 * bath.b_dipolar**2 * bath.tau_c / 5.0


def epsilon_from_temperature(omega0: float, temperature: float) -> float:
    """Polarization epsilon = -hbar omega0 / (2 k_B T)."""
    if not temperature > 0:
        raise DomainError(f"Temperature must be positive, got {temperature}")
    return -constants.hbar * omega0 / (2.0 * constants.k * temperature)


def to_dimensionless(
    system: SystemParams, bath: BathParams
) -> Tuple[SystemParams, BathParams]:
    """
    Rescale frequencies by K0 and times by 1/K0 so that K0 = 1.

    epsilon and omega0 * tau_c are unchanged.
    """
    scale = k0(bath)
    if scale <= 0:
        raise DomainError("Dimensionless units need a nonzero dipolar rate K0")
    scaled_system = replace(
        system,
        omega0=system.omega0 / scale,
        delta_offset=system.delta_offset / scale,
        j_coupling=system.j_coupling / scale,
    )
    scaled_bath = replace(
        bath,
        b_dipolar=bath.b_dipolar / scale,
        tau_c=bath.tau_c * scale,
        csa_d=bath.csa_d / scale,
    )
    return scaled_system, scaled_bath
