from dataclasses import dataclass, field, replace
from typing import Callable, Dict, List, Optional

import numpy as np

from common import EXIT_INVARIANT, EXIT_OK, UsageError, print_colored
from config import ExperimentConfig, build_config
from spin_algebra import (
    coherence_decompose,
    commutator,
    conjugate,
    rotation_pulse,
    spherical_tensor,
    spin_operator,
    total_z,
)
from relaxation_model import (
    COUPLINGS,
    SPECTRAL_MODES,
    apply_superoperator,
    build_liouvillian,
    channel_rate,
    dissipator,
    left_multiplication,
    resolve_channels,
    right_multiplication,
    sandwich,
    thermal_state,
    to_dimensionless,
)
from spectral_analysis import (
    block_leakage,
    coherence_closure,
    detailed_balance_residual,
    eigendecompose,
    overlaps,
    population_generator,
    reference_closure,
    reference_eigenvalues,
    reference_population_generator,
    reference_slow_mode,
    reference_zero_quantum_block,
    stationary_density,
    two_qubit_generators,
    zero_quantum_block,
)
from dynamics import (
    analytic_trajectory,
    density_from_populations,
    far_state,
    far_state_populations,
    near_state,
    near_state_genuine,
    pfg_dephase,
    populations,
    propagate,
    propagate_by_modes,
    propagate_vector,
    theta_crossing_time,
    theta_state_populations,
    time_grid,
)
from metrics_mpemba import (
    detect_crossing,
    metric_curve,
    relative_entropy,
    trace_distance,
)


def _dropped_adjoint(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return dissipator(a, a)


def _anticommutator_sign(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    ba = b @ a
    return sandwich(a, b) + 0.5 * (left_multiplication(ba) + right_multiplication(ba))


FAULTS: Dict[str, Callable[[np.ndarray, np.ndarray], np.ndarray]] = {
    "dropped-adjoint": _dropped_adjoint,
    "anticommutator-sign": _anticommutator_sign,
}

ORACLE_THETAS_DEGREES = (10.0, 30.0, 45.0, 70.0, 80.0)
CROSSING_THETAS_DEGREES = (45.0, 70.0)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class ValidationSummary:
    results: List[CheckResult] = field(default_factory=list)

    @property
    def failures(self) -> List[CheckResult]:
        return [result for result in self.results if not result.passed]

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def exit_status(self) -> int:
        return EXIT_OK if self.passed else EXIT_INVARIANT

    def names(self) -> List[str]:
        return [result.name for result in self.results]

    def result(self, name: str) -> CheckResult:
        for result in self.results:
            if result.name == name:
                return result
        raise KeyError(name)


def random_density_matrix(rng: np.random.Generator, mixing: float = 0.5) -> np.ndarray:
    """Full-rank random state mixing 1/4 with a random state."""
    z = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    sigma = z @ z.conj().T
    sigma /= np.trace(sigma)
    return (1 - mixing) * np.eye(4) / 4 + mixing * sigma


def random_pure_state(rng: np.random.Generator) -> np.ndarray:
    """Rank-one projector on a random vector."""
    psi = rng.normal(size=4) + 1j * rng.normal(size=4)
    psi /= np.linalg.norm(psi)
    return np.outer(psi, psi.conj())


def random_hermitian(rng: np.random.Generator) -> np.ndarray:
    z = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    return 0.5 * (z + z.conj().T)


def random_balanced_populations(rng: np.random.Generator) -> np.ndarray:
    """Populations with p00 + p11 = p01 + p10 = 1/2."""
    outer, inner = rng.uniform(0, 0.5, size=2)
    return np.array([outer, inner, 0.5 - inner, 0.5 - outer])


def _max_abs(a) -> float:
    return float(np.max(np.abs(a)))


class InvariantBattery:
    """Every module invariant, evaluated in K0 = 1 units."""

    def __init__(
        self, config: ExperimentConfig, fault: Optional[str], trials: int, seed: int
    ):
        system, bath = config.to_params()
        self.system, self.bath = to_dimensionless(system, bath)
        self.k0 = self.bath.k0
        self.epsilon = self.system.epsilon
        self.delta = self.system.delta_offset
        self.trials = trials
        self.rng = np.random.default_rng(seed)
        self.dissipator_fn = FAULTS[fault] if fault else dissipator
        self.channels = resolve_channels(config.channels, self.bath)
        self.coupling = config.coupling
        self.spectral_mode = config.spectral_mode
        # Printed matrices and closed forms hold for the dipolar, linearized generator
        self.L = self.liouvillian(self.system)
        self.L_config = self.liouvillian(
            self.system, self.coupling, self.channels, self.spectral_mode
        )
        self.L_p = population_generator(self.L)
        self.scale = max(1.0, float(np.linalg.norm(self.L, 2)))
        self.eps_tolerance = max(1e-10, 10 * self.epsilon**2)
        # Rounding in exp(L t) grows with the norm of L t over K0 t <= 20
        self.expm_tolerance = max(1e-10, 1e-15 * self.scale * 20)
        self.rho_th = thermal_state(self.system)
        grid = config.time_grid
        self.times = (
            time_grid(grid.t_min, grid.t_max, grid.points, grid.spacing, grid.include_origin)
            / self.k0
        )
        self.short_times = np.linspace(0.0, 20.0, 21) / self.k0
        self.summary = ValidationSummary()

    def liouvillian(
        self,
        system,
        coupling: str = "ising",
        channels=("dipolar",),
        spectral_mode: str = "linearized",
        bath=None,
    ) -> np.ndarray:
        return build_liouvillian(
            system,
            bath or self.bath,
            channels,
            coupling,
            spectral_mode,
            self.dissipator_fn,
        )

    def generator_variants(self) -> Dict[str, np.ndarray]:
        """Configured generator plus every channel set, spectral mode and coupling."""
        bath = self.bath
        if bath.csa_d == 0:
            bath = replace(bath, csa_d=bath.b_dipolar / 2)
        variants = {
            f"configured {','.join(self.channels)}/{self.spectral_mode}/{self.coupling}":
            self.L_config
        }
        for channels in (("dipolar",), ("dipolar", "csa"), ("dipolar", "csa", "cross")):
            for mode in SPECTRAL_MODES:
                for coupling in COUPLINGS:
                    label = f"{','.join(channels)}/{mode}/{coupling}"
                    variants[label] = self.liouvillian(
                        self.system, coupling, channels, mode, bath
                    )
        return variants

    def check(self, name: str, passed, detail: str = "") -> None:
        self.summary.results.append(CheckResult(name, bool(passed), detail))

    def skip_at_zero_epsilon(self, *names: str) -> bool:
        if self.epsilon != 0:
            return False
        for name in names:
            self.check(name, True, "skipped at epsilon = 0")
        return True

    def run(self) -> ValidationSummary:
        groups = [
            ("spin algebra", self.spin_algebra),
            ("generator structure", self.generator_structure),
            ("printed matrices", self.printed_matrices),
            ("spectrum", self.spectrum),
            ("thermal fixed point", self.thermal_fixed_point),
            ("coherence suppression", self.coherence_suppression),
            ("strong certificate", self.strong_certificate),
            ("analytic oracle", self.analytic_oracle),
            ("trace-distance crossing", self.trace_distance_crossing),
            ("genuine crossing", self.genuine_crossing),
            ("two-qubit picture", self.two_qubit),
            ("randomized dynamics", self.randomized_dynamics),
            ("positivity", self.positivity),
            ("metric properties", self.metric_properties),
        ]
        for name, group in groups:
            try:
                group()
            except Exception as e:
                self.check(name, False, f"raised {type(e).__name__}: {e}")
        return self.summary

    def spin_algebra(self):
        ix, iy, iz = (spin_operator(1, axis) for axis in ("x", "y", "z"))
        self.check("su(2) commutator", _max_abs(commutator(ix, iy) - 1j * iz) <= 1e-12)
        orders = max(
            _max_abs(commutator(total_z(), spherical_tensor(m)) - m * spherical_tensor(m))
            for m in range(-2, 3)
        )
        self.check("tensor coherence orders", orders <= 1e-12, f"max {orders:.2e}")
        gram = np.array(
            [
                [
                    np.trace(spherical_tensor(m).conj().T @ spherical_tensor(n))
                    for n in range(-2, 3)
                ]
                for m in range(-2, 3)
            ]
        )
        off = _max_abs(gram - np.diag(np.diag(gram)))
        self.check("tensor trace orthogonality", off <= 1e-12, f"max {off:.2e}")
        adjoint = max(
            _max_abs(spherical_tensor(1) + spherical_tensor(-1).conj().T),
            _max_abs(spherical_tensor(2) - spherical_tensor(-2).conj().T),
            _max_abs(spherical_tensor(0) - spherical_tensor(0).conj().T),
        )
        self.check("tensor adjoint relations", adjoint <= 1e-12, f"max {adjoint:.2e}")

        unitarity, linearity = 0.0, 0.0
        for _ in range(self.trials):
            u = rotation_pulse(
                self.rng.uniform(-2 * np.pi, 2 * np.pi),
                str(self.rng.choice(["x", "y", "-x", "-y"])),
                [1, 2, "both"][self.rng.integers(3)],
            )
            unitarity = max(unitarity, _max_abs(u.conj().T @ u - np.eye(4)))
            a, b = random_hermitian(self.rng), random_hermitian(self.rng)
            alpha, beta = self.rng.normal(size=2)
            for whole, part_a, part_b in zip(
                coherence_decompose(alpha * a + beta * b),
                coherence_decompose(a),
                coherence_decompose(b),
            ):
                linearity = max(
                    linearity,
                    _max_abs(
                        whole.component - alpha * part_a.component - beta * part_b.component
                    ),
                )
        self.check("pulse unitarity", unitarity <= 1e-12, f"max {unitarity:.2e}")
        self.check(
            "coherence projection linearity", linearity <= 1e-12, f"max {linearity:.2e}"
        )

    def generator_structure(self):
        variants = self.generator_variants()
        leakage, trace_error, hermiticity_error = {}, {}, {}
        for label, generator in variants.items():
            scale = max(1.0, float(np.linalg.norm(generator, 2)))
            leakage[label] = block_leakage(generator)
            trace_drift, hermiticity_drift = 0.0, 0.0
            for _ in range(self.trials):
                rho = random_hermitian(self.rng)
                trace_drift = max(
                    trace_drift, abs(np.trace(apply_superoperator(generator, rho)))
                )
                z = rho + 1j * random_hermitian(self.rng)
                hermiticity_drift = max(
                    hermiticity_drift,
                    _max_abs(
                        apply_superoperator(generator, z).conj().T
                        - apply_superoperator(generator, z.conj().T)
                    ),
                )
            trace_error[label] = trace_drift / scale
            hermiticity_error[label] = hermiticity_drift / scale
        for name, errors in (
            ("coherence-order block structure", leakage),
            ("trace preservation", trace_error),
            ("hermiticity preservation", hermiticity_error),
        ):
            worst = max(errors, key=errors.get)
            self.check(
                name,
                errors[worst] <= 1e-12,
                f"max {errors[worst]:.2e} ({worst}) over {len(errors)} generators",
            )
        rates = [channel_rate(m, self.bath, self.system) for m in range(-2, 3)]
        self.check("positive rates", min(rates) > 0, f"min {min(rates):.3e}")

    def printed_matrices(self):
        tolerance = max(1e-12, 10 * self.epsilon**2 * self.k0)
        lp_error = _max_abs(
            self.L_p - reference_population_generator(self.k0, self.epsilon)
        )
        self.check(
            "population generator entries", lp_error <= tolerance, f"max {lp_error:.2e}"
        )
        l0_error = _max_abs(
            zero_quantum_block(self.L)
            - reference_zero_quantum_block(self.k0, self.epsilon, self.delta)
        )
        self.check(
            "zero-quantum block entries",
            l0_error <= tolerance + 1e-15 * abs(self.delta),
            f"max {l0_error:.2e}",
        )
        unpolarized = self.liouvillian(replace(self.system, epsilon=0.0))
        closure, residual = coherence_closure(zero_quantum_block(unpolarized))
        closure_error = _max_abs(closure - reference_closure(self.k0, self.delta))
        self.check(
            "coherence closure at epsilon = 0",
            residual <= 1e-12 * self.scale and closure_error <= 1e-12 * self.scale,
            f"residual {residual:.2e}, entries {closure_error:.2e}",
        )

    def spectrum(self):
        md = eigendecompose(self.L_p, rate_scale=self.k0)
        tolerance = max(1e-12, 1e4 * self.epsilon**2) * self.k0
        eigen_error = _max_abs(md.eigenvalues - reference_eigenvalues(self.k0))
        self.check(
            "population eigenvalues", eigen_error <= tolerance, f"max {eigen_error:.2e}"
        )
        self.check(
            "single stationary mode",
            md.zero_modes == 1
            and np.all(np.delete(md.eigenvalues.real, md.stationary_index) < 0),
            f"{md.zero_modes} zero mode(s)",
        )
        biorthogonality = _max_abs(md.left_vectors @ md.right_vectors.T - np.eye(4))
        self.check(
            "biorthonormality", biorthogonality <= 1e-10, f"max {biorthogonality:.2e}"
        )
        reconstruction = 0.0
        for _ in range(self.trials):
            x = self.rng.normal(size=4)
            reconstruction = max(
                reconstruction, _max_abs(md.right_vectors.T @ (md.left_vectors @ x) - x)
            )
        self.check(
            "mode reconstruction", reconstruction <= 1e-10, f"max {reconstruction:.2e}"
        )
        norm = np.linalg.norm(self.L_p, 2)
        residual = max(
            max(
                _max_abs(self.L_p @ v - lam * v),
                _max_abs(w @ self.L_p - lam * w),
            )
            for lam, v, w in zip(md.eigenvalues, md.right_vectors, md.left_vectors)
        )
        self.check("eigenpair residuals", residual <= 1e-10 * norm, f"max {residual:.2e}")
        slow = abs(np.dot(md.right_vectors[md.slowest_index], reference_slow_mode()))
        trace_row = md.left_vectors[md.stationary_index]
        self.check(
            "slow mode and trace functional",
            abs(slow - 1) <= 1e-10 and _max_abs(trace_row / trace_row[0] - 1) <= 1e-10,
            f"|v1 . ref| = {slow:.12f}",
        )

    def thermal_fixed_point(self):
        rho_ss = stationary_density(self.L)
        distance = trace_distance(rho_ss, self.rho_th)
        self.check(
            "stationary state is thermal",
            distance <= 10 * self.epsilon**2 + 1e-12,
            f"distance {distance:.2e}",
        )
        residual = detailed_balance_residual(self.L_p, populations(self.rho_th))
        self.check(
            "detailed balance",
            residual <= 10 * self.epsilon**2 * self.k0 + 1e-15,
            f"max {residual:.2e}",
        )
        eps, k0 = self.epsilon, self.k0
        ratios = [
            (self.L_p[0, 1], k0 * (1 + eps) / 16),
            (self.L_p[1, 0], k0 * (1 - eps) / 16),
            (self.L_p[0, 3], k0 * (1 + 2 * eps) / 4),
            (self.L_p[3, 0], k0 * (1 - 2 * eps) / 4),
            (self.L_p[2, 1], k0 / 24),
        ]
        rate_error = max(abs(got - want) for got, want in ratios)
        self.check("transition rates", rate_error <= 1e-12 * k0, f"max {rate_error:.2e}")

    def _zqb_coherence(self, l0: np.ndarray, p0: np.ndarray) -> float:
        x0 = np.concatenate([p0, [0.0, 0.0]])
        evolved = propagate_vector(l0, x0, self.short_times)
        return _max_abs(evolved[:, 4:])

    def coherence_suppression(self):
        unpolarized = zero_quantum_block(
            self.liouvillian(replace(self.system, epsilon=0.0))
        )
        polarized = zero_quantum_block(self.L)
        worst_zero, worst_finite = 0.0, 0.0
        for _ in range(self.trials):
            p0 = random_balanced_populations(self.rng)
            worst_zero = max(worst_zero, self._zqb_coherence(unpolarized, p0))
            worst_finite = max(worst_finite, self._zqb_coherence(polarized, p0))
        self.check(
            "coherences stay zero at epsilon = 0",
            worst_zero <= 1e-12,
            f"max {worst_zero:.2e}",
        )
        if self.delta == 0:
            self.check(
                "coherences bounded by (K0/Delta) epsilon", True, "skipped at Delta = 0"
            )
            return
        bound = 10 * self.k0 / abs(self.delta) * abs(self.epsilon)
        self.check(
            "coherences bounded by (K0/Delta) epsilon",
            worst_finite <= bound + 1e-12,
            f"max {worst_finite:.2e}, bound {bound:.2e}",
        )

    def strong_certificate(self):
        names = (
            "far state misses slow mode",
            "far state single-mode decay",
            "near state hits slow mode",
        )
        if self.skip_at_zero_epsilon(*names):
            return
        md = eigendecompose(self.L_p, rate_scale=self.k0)
        slow, fast = md.slowest_index, md.dim - 1
        a_far = overlaps(md, populations(far_state(self.system)))
        self.check(names[0], abs(a_far[slow]) <= 1e-12, f"a1 = {abs(a_far[slow]):.2e}")
        traj = propagate(self.L, far_state(self.system), self.short_times)
        p_ss = np.real(md.stationary_state())
        distance = np.linalg.norm(traj.populations - p_ss, axis=1)
        single = (
            abs(a_far[fast])
            * np.exp(md.eigenvalues[fast].real * traj.times)
            * np.linalg.norm(md.right_vectors[fast])
        )
        error = _max_abs(distance - single)
        self.check(names[1], error <= self.eps_tolerance, f"max {error:.2e}")
        p_near = populations(near_state(np.radians(70.0), self.system))
        a_near = overlaps(md, p_near)[slow]
        self.check(
            names[2],
            abs(a_near) > 1e-10 * np.linalg.norm(p_near),
            f"a1 = {abs(a_near):.2e}",
        )

    def analytic_oracle(self):
        times = np.linspace(0.0, 20.0, 50) / self.k0
        worst = 0.0
        for degrees in ORACLE_THETAS_DEGREES:
            theta = np.radians(degrees)
            traj = propagate(self.L, near_state(theta, self.system), times)
            expected = theta_state_populations(theta, self.epsilon, self.k0, times)
            worst = max(worst, _max_abs(traj.populations - expected))
        traj = propagate(self.L, far_state(self.system), times)
        worst = max(
            worst,
            _max_abs(
                traj.populations - far_state_populations(self.epsilon, self.k0, times)
            ),
        )
        self.check(
            "closed-form populations",
            worst <= max(self.eps_tolerance, self.expm_tolerance),
            f"max {worst:.2e}",
        )
        dephased = near_state(0.3, self.system)
        fixed = _max_abs(pfg_dephase(dephased) - dephased)
        self.check("dephasing idempotence", fixed == 0.0)
        pulse = conjugate(rotation_pulse(np.pi, "x", 1), near_state_genuine(self.system))
        self.check(
            "pi pulse maps genuine near state to far state",
            _max_abs(pulse - far_state(self.system)) <= 1e-12,
        )

    def trace_distance_crossing(self):
        names = [
            f"trace-distance crossing at {degrees:g} deg"
            for degrees in CROSSING_THETAS_DEGREES
        ]
        if self.skip_at_zero_epsilon(*names):
            return
        for name, degrees in zip(names, CROSSING_THETAS_DEGREES):
            theta = np.radians(degrees)
            expected = theta_crossing_time(theta, self.k0)
            analytic = detect_crossing(
                analytic_trajectory(
                    lambda t: far_state_populations(self.epsilon, self.k0, t), self.times
                ),
                analytic_trajectory(
                    lambda t: theta_state_populations(theta, self.epsilon, self.k0, t),
                    self.times,
                ),
                "trace_distance",
                self.rho_th,
            )
            far = propagate(self.L, far_state(self.system), self.times)
            near = propagate(self.L, near_state(theta, self.system), self.times)
            report = detect_crossing(far, near, "trace_distance", self.rho_th)
            d_far = metric_curve(far, "trace_distance", self.rho_th)
            d_near = metric_curve(near, "trace_distance", self.rho_th)
            after = far.times > (report.crossing_time or np.inf)
            passed = (
                analytic.crossing_time is not None
                and abs(analytic.crossing_time - expected) <= 1e-6 * expected
                and report.initial_gap > 0
                and len(report.crossing_times) == 1
                and abs(report.crossing_time - expected) <= 1e-3 * expected
                and np.all(d_far[after] < d_near[after])
            )
            detail = f"t* = {report.crossing_time}, closed form {expected:.9g}"
            self.check(name, passed, detail)

    def genuine_crossing(self):
        name = "relative-entropy crossing"
        if self.skip_at_zero_epsilon(name):
            return
        far = propagate(self.L, far_state(self.system), self.times)
        near = propagate(self.L, near_state_genuine(self.system), self.times)
        report = detect_crossing(far, near, "relative_entropy", self.rho_th)
        self.check(
            name,
            report.initial_gap > 0 and len(report.crossing_times) == 1,
            f"{len(report.crossing_times)} crossing(s), first at {report.crossing_time}",
        )

    def two_qubit(self):
        unpolarized = population_generator(
            self.liouvillian(replace(self.system, epsilon=0.0))
        )
        exact_error = max(
            max(self._outer_pair_errors(unpolarized, p0))
            for p0 in self._outer_pair_starts()
        )
        self.check(
            "outer pair closes at epsilon = 0",
            exact_error <= 1e-10,
            f"max {exact_error:.2e} over {self.trials} random outer states",
        )
        worst = 0.0
        for p0 in [populations(far_state(self.system))] + self._outer_pair_starts():
            # Inner levels drift at (K0 epsilon / 16)(p00 - p11) to first order
            drift = abs(p0[0] - p0[3]) * self.epsilon * self.k0 * self.short_times[-1]
            error = max(self._outer_pair_errors(self.L_p, p0))
            worst = max(worst, error / max(1e-10, drift / 16))
        self.check(
            "outer qubit evolves autonomously",
            worst <= 1.0,
            f"worst error at {worst:.2f} of the first-order drift bound",
        )

    def _outer_pair_starts(self) -> List[np.ndarray]:
        """Random outer populations with the inner levels at 1/4."""
        outer = self.rng.uniform(0, 0.5, size=self.trials)
        return [np.array([p00, 0.25, 0.25, 0.5 - p00]) for p00 in outer]

    def _outer_pair_errors(self, L_p: np.ndarray, p0: np.ndarray):
        """Outer-pair and inner-level deviations from the two-level dynamics."""
        full = np.real(propagate_vector(L_p, p0, self.short_times))
        outer = two_qubit_generators(L_p)["outer"]
        pair = np.real(propagate_vector(outer, p0[[0, 3]], self.short_times))
        return _max_abs(full[:, [0, 3]] - pair), _max_abs(full[:, 1:3] - 0.25)

    def randomized_dynamics(self):
        rho_ss = stationary_density(self.L)
        p_th = populations(self.rho_th)
        md = eigendecompose(self.L_p, rate_scale=self.k0)
        semigroup, distance_rise, entropy_rise, modes = 0.0, 0.0, 0.0, 0.0
        for _ in range(self.trials):
            rho0 = random_density_matrix(self.rng)
            t1, t2 = self.rng.uniform(0, 10, size=2) / self.k0
            direct = propagate(self.L, rho0, [t1 + t2]).final_state
            halfway = propagate(self.L, rho0, [t1]).final_state
            split = propagate(self.L, halfway, [t2]).final_state
            semigroup = max(semigroup, _max_abs(direct - split))

            traj = propagate(self.L, rho0, self.short_times)
            distance_rise = max(
                distance_rise,
                np.max(np.diff(metric_curve(traj, "trace_distance", rho_ss))),
            )
            entropy_rise = max(
                entropy_rise,
                np.max(np.diff(metric_curve(traj, "relative_entropy", rho_ss))),
            )

            offset = random_balanced_populations(self.rng)
            p0 = offset if self.epsilon == 0 else p_th + self.epsilon * (offset - 0.25)
            by_modes = propagate_by_modes(md, p0, self.short_times).populations
            by_expm = propagate(
                self.L, density_from_populations(p0), self.short_times
            ).populations
            modes = max(modes, _max_abs(by_modes - by_expm))
        self.check(
            "semigroup property",
            semigroup <= self.expm_tolerance,
            f"max {semigroup:.2e}",
        )
        self.check(
            "trace distance contracts",
            distance_rise <= self.expm_tolerance,
            f"max rise {distance_rise:.2e}",
        )
        self.check(
            "relative entropy contracts",
            entropy_rise <= self.expm_tolerance,
            f"max rise {entropy_rise:.2e}",
        )
        self.check(
            "mode and exponential propagation agree",
            modes <= max(1e-9, self.expm_tolerance),
            f"max {modes:.2e}",
        )

    def positivity(self):
        """Lowest eigenvalue along trajectories from pure, random and prepared states."""
        starts = [random_pure_state(self.rng) for _ in range(self.trials)]
        starts += [random_density_matrix(self.rng, mixing=1.0) for _ in range(self.trials)]
        prepared = [far_state(self.system), near_state_genuine(self.system)]
        prepared += [
            near_state(np.radians(degrees), self.system)
            for degrees in CROSSING_THETAS_DEGREES
        ]
        runs = [propagate(self.L, rho0, self.short_times) for rho0 in starts]
        runs += [propagate(self.L, rho0, self.times) for rho0 in prepared]
        if not np.array_equal(self.L_config, self.L):
            runs += [propagate(self.L_config, rho0, self.short_times) for rho0 in starts]
        lowest = min(
            np.min(np.linalg.eigvalsh(0.5 * (state + state.conj().T)))
            for traj in runs
            for state in traj.states
        )
        self.check(
            "positivity",
            lowest >= -max(1e-12, self.expm_tolerance),
            f"lowest {lowest:.2e} over {len(starts)} random and {len(prepared)} prepared states",
        )

    def metric_properties(self):
        symmetry, triangle, invariance = 0.0, 0.0, 0.0
        for _ in range(self.trials):
            a, b, c = (random_density_matrix(self.rng, 0.9) for _ in range(3))
            symmetry = max(symmetry, abs(trace_distance(a, b) - trace_distance(b, a)))
            triangle = max(
                triangle, trace_distance(a, c) - trace_distance(a, b) - trace_distance(b, c)
            )
            u = rotation_pulse(self.rng.uniform(0, 2 * np.pi), "x", 1) @ rotation_pulse(
                self.rng.uniform(0, 2 * np.pi), "y", "both"
            )
            invariance = max(
                invariance,
                abs(trace_distance(conjugate(u, a), conjugate(u, b)) - trace_distance(a, b)),
            )
        self.check("trace distance symmetry", symmetry <= 1e-15, f"max {symmetry:.2e}")
        self.check("triangle inequality", triangle <= 1e-12, f"max excess {triangle:.2e}")
        self.check("unitary invariance", invariance <= 1e-12, f"max {invariance:.2e}")
        self.check(
            "relative entropy vanishes on equal states",
            abs(relative_entropy(self.rho_th, self.rho_th)) <= 1e-15,
        )


def print_summary(summary: ValidationSummary) -> None:
    width = max(len(result.name) for result in summary.results)
    for result in summary.results:
        mark = "✅" if result.passed else "❌"
        line = f"{mark} {result.name.ljust(width)}  {result.detail}"
        print_colored(line, "green" if result.passed else "red")
    if summary.passed:
        print_colored(f"All {len(summary.results)} checks passed", "green")
    else:
        names = ", ".join(result.name for result in summary.failures)
        print_colored(f"{len(summary.failures)} check(s) failed: {names}", "red")


def validate_suite(
    config: Optional[ExperimentConfig] = None,
    fault: Optional[str] = None,
    trials: int = 100,
    seed: int = 7,
    verbose: bool = True,
) -> ValidationSummary:
    """
    Run the invariant battery and print a pass/fail table.

    fault injects a broken dissipator ("dropped-adjoint" or "anticommutator-sign").
    """
    if fault is not None and fault not in FAULTS:
        raise UsageError(f"Unknown fault: {fault}, expected one of {tuple(FAULTS)}")
    if trials < 1:
        raise UsageError(f"Number of trials must be positive, got {trials}")
    if config is None:
        config = build_config({})
    summary = InvariantBattery(config, fault, trials, seed).run()
    if verbose:
        print_summary(summary)
    return summary
