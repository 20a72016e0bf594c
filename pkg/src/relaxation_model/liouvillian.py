from typing import Callable, Iterable, Union

import numpy as np

from spin_algebra import spherical_tensor, csa_spherical_tensor

try:
    from .params import SystemParams, BathParams
    from .hamiltonian import hamiltonian
    from .spectral_density import channel_rate, resolve_channels
    from .superoperator import commutator_superoperator, dissipator
except ImportError:
    from params import SystemParams, BathParams
    from hamiltonian import hamiltonian
    from spectral_density import channel_rate, resolve_channels
    from superoperator import commutator_superoperator, dissipator

DissipatorFn = Callable[[np.ndarray, np.ndarray], np.ndarray]


def csa_operator(m: int) -> np.ndarray:
    """CSA tensor summed over both spins, which share one shielding constant."""
    return csa_spherical_tensor(m, 1) + csa_spherical_tensor(m, 2)


def build_liouvillian(
    p: SystemParams,
    bp: BathParams,
    channels: Union[str, Iterable[str]] = ("dipolar",),
    coupling: str = "ising",
    spectral_mode: str = "linearized",
    dissipator_fn: DissipatorFn = dissipator,
) -> np.ndarray:
    """
    Interaction-frame GKSL generator acting on column-stacked density matrices.

        L = -i[H, .] + sum_m K_DD(m w0) G[T_m, T_m^+]
                     + sum_m K_CSA(m w0) G[S_m, S_m^+]
                     + sum_m K_CC(m w0) (G[T_m, S_m^+] + G[S_m, T_m^+])

    with G[A, B] rho = A rho B - {BA, rho}/2. CSA and cross terms run over m = -1..1.
    The three channel amplitudes b^2, d^2 and -bd keep every per-m rate matrix
    positive semidefinite.
    """
    active = resolve_channels(channels, bp)
    generator = commutator_superoperator(hamiltonian(p, "interaction", coupling))

    for m in range(-2, 3):
        tensor = spherical_tensor(m)
        rate = channel_rate(m, bp, p, spectral_mode, "dipolar")
        generator = generator + rate * dissipator_fn(tensor, tensor.conj().T)

    if "csa" in active:
        for m in range(-1, 2):
            shielding = csa_operator(m)
            rate = channel_rate(m, bp, p, spectral_mode, "csa")
            generator = generator + rate * dissipator_fn(
                shielding, shielding.conj().T
            )
            if "cross" in active:
                tensor = spherical_tensor(m)
                rate = channel_rate(m, bp, p, spectral_mode, "cross")
                generator = generator + rate * (
                    dissipator_fn(tensor, shielding.conj().T)
                    + dissipator_fn(shielding, tensor.conj().T)
                )
    return generator
