import numpy as np

from common import ConfigurationError, DomainError, UsageError, print_warning

try:
    from .params import SystemParams, BathParams
except ImportError:
    from params import SystemParams, BathParams

SPECTRAL_MODES = ("linearized", "exact")
CHANNELS = ("dipolar", "csa", "cross")


def _temperature_factor(x: float, p: SystemParams) -> float:
    if p.epsilon == 0:
        return 1.0
    if p.omega0 == 0:
        raise DomainError("Temperature correction needs a nonzero Larmor frequency")
    return float(np.exp(x * p.epsilon / p.omega0))


def spectral_density(
    x: float,
    bp: BathParams,
    p: SystemParams,
    corrected: bool = False,
    amplitude: float = None,
) -> float:
    """
    Lorentzian spectral density K(x) = 12 A tau_c / (5 (1 + x^2 tau_c^2)).

    A defaults to b^2. corrected multiplies by exp(x epsilon / omega0).
    """
    if amplitude is None:
        amplitude = bp.b_dipolar**2
    value = 12.0 * amplitude * bp.tau_c / (5.0 * (1.0 + (x * bp.tau_c) ** 2))
    if corrected:
        value *= _temperature_factor(x, p)
    return value


def linearized_rate(
    m: int, bp: BathParams, p: SystemParams, amplitude: float = None
) -> float:
    """Extreme-narrowing rate K(m omega0) ~ K0 (1 + m epsilon)."""
    if amplitude is None:
        amplitude = bp.b_dipolar**2
    return 12.0 * amplitude * bp.tau_c / 5.0 * (1.0 + m * p.epsilon)


def channel_amplitude(channel: str, bp: BathParams) -> float:
    if channel == "dipolar":
        return bp.b_dipolar**2
    if channel == "csa":
        return bp.csa_d**2
    if channel == "cross":
        return -bp.b_dipolar * bp.csa_d
    raise UsageError(f"Unknown relaxation channel: {channel}")


def channel_rate(
    m: int,
    bp: BathParams,
    p: SystemParams,
    mode: str = "linearized",
    channel: str = "dipolar",
) -> float:
    amplitude = channel_amplitude(channel, bp)
    if mode == "linearized":
        return linearized_rate(m, bp, p, amplitude)
    if mode == "exact":
        return spectral_density(m * p.omega0, bp, p, corrected=True, amplitude=amplitude)
    raise UsageError(
        f"Unknown spectral mode: {mode}, expected one of {SPECTRAL_MODES}"
    )


def narrowing_diagnostic(
    bp: BathParams, p: SystemParams, threshold: float = None
) -> float:
    """Return omega0 * tau_c and warn when the flat-spectrum approximation is doubtful."""
    if threshold is None:
        threshold = bp.narrowing_threshold
    value = bp.narrowing_parameter(p.omega0)
    if value > threshold:
        print_warning(
            f"omega0*tau_c = {value:.3e} exceeds the extreme-narrowing threshold {threshold:.1e}"
        )
    return value


def resolve_channels(channels, bp: BathParams) -> tuple:
    """Normalize a channel selection and check it against the bath."""
    if isinstance(channels, str):
        channels = [item.strip() for item in channels.split(",") if item.strip()]
    resolved = []
    for channel in channels:
        if channel not in CHANNELS:
            raise UsageError(
                f"Unknown relaxation channel: {channel}, expected one of {CHANNELS}"
            )
        if channel not in resolved:
            resolved.append(channel)
    if bp.include_cross_correlation and "cross" not in resolved:
        resolved.append("cross")
    if "dipolar" not in resolved:
        raise ConfigurationError("The dipolar channel is always required")
    if ("csa" in resolved or "cross" in resolved) and bp.csa_d == 0:
        raise ConfigurationError(
            "CSA and cross-correlation channels need a nonzero CSA constant"
        )
    if "cross" in resolved and "csa" not in resolved:
        resolved.insert(resolved.index("cross"), "csa")
    return tuple(sorted(resolved, key=CHANNELS.index))
