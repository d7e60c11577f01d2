"""Lorenz and Rössler trajectory samplers (fixed-step RK4)."""
import logging
import math
from typing import Callable, Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from src.events.models import EventSet
from src.generators.grids import ScenarioError

logger = logging.getLogger(__name__)

State = Tuple[float, float, float]
Field3 = Callable[[State], State]

DEFAULT_PARAMS = {
    "lorenz": (10.0, 8.0 / 3.0, 28.0),  # sigma, beta, rho
    "rossler": (0.2, 0.2, 5.7),  # a, b, c
}
DEFAULT_COORDS = {
    "lorenz": ("x", "y"),
    "rossler": ("x", "z"),
}
_AXES = {"x": 0, "y": 1, "z": 2}


def lorenz(params: Tuple[float, float, float]) -> Field3:
    sigma, beta, rho = params

    def f(s: State) -> State:
        x, y, z = s
        return sigma * (y - x), x * (rho - z) - y, x * y - beta * z

    return f


def rossler(params: Tuple[float, float, float]) -> Field3:
    a, b, c = params

    def f(s: State) -> State:
        x, y, z = s
        return -y - z, x + a * y, b + z * (x - c)

    return f


_SYSTEMS = {"lorenz": lorenz, "rossler": rossler}


def rk4_step(f: Field3, s: State, h: float) -> State:
    """One classical Runge-Kutta step for an autonomous system."""
    k1 = f(s)
    k2 = f(tuple(si + 0.5 * h * ki for si, ki in zip(s, k1)))
    k3 = f(tuple(si + 0.5 * h * ki for si, ki in zip(s, k2)))
    k4 = f(tuple(si + h * ki for si, ki in zip(s, k3)))
    return tuple(
        si + h * (a + 2.0 * b + 2.0 * c + d) / 6.0
        for si, a, b, c, d in zip(s, k1, k2, k3, k4)
    )


def rk4_integrate(f: Field3, s: State, h: float, steps: int) -> State:
    """Advance `steps` RK4 steps of size h."""
    for _ in range(steps):
        s = rk4_step(f, s, h)
    return s


class OdeSpec(BaseModel):
    """Trajectory sampling setup.

    params defaults to (sigma, beta, rho) = (10, 8/3, 28) for lorenz and
    (a, b, c) = (0.2, 0.2, 5.7) for rossler; h_int defaults to dt / 10.
    A seed perturbs the initial state by N(0, perturbation) per axis.
    """
    model_config = ConfigDict(frozen=True)

    system: Literal["lorenz", "rossler"] = "lorenz"
    params: Optional[Tuple[float, float, float]] = None
    initial: Tuple[float, float, float] = (1.0, 1.0, 1.0)
    T: float = 200.0
    dt: float = 0.01
    h_int: Optional[float] = None
    coords: Optional[Tuple[Literal["x", "y", "z"], Literal["x", "y", "z"]]] = None
    burn_in: float = 0.0
    seed: Optional[int] = None
    perturbation: float = 1e-3

    @model_validator(mode="after")
    def _validate(self) -> "OdeSpec":
        if not (self.dt > 0 and self.T > 0):
            raise ValueError(f"dt and T must be positive, got dt={self.dt}, T={self.T}")
        h = self.integrator_step
        if not (0 < h <= self.dt):
            raise ValueError(f"h_int must satisfy 0 < h_int <= dt, got h_int={h}, dt={self.dt}")
        if self.burn_in < 0:
            raise ValueError(f"burn_in must be non-negative, got {self.burn_in}")
        return self

    @property
    def integrator_step(self) -> float:
        return self.h_int if self.h_int is not None else self.dt / 10.0

    @property
    def system_params(self) -> Tuple[float, float, float]:
        return self.params if self.params is not None else DEFAULT_PARAMS[self.system]

    @property
    def projection(self) -> Tuple[str, str]:
        return self.coords if self.coords is not None else DEFAULT_COORDS[self.system]


def _substeps(dt: float, h_int: float) -> Tuple[int, float]:
    m = max(1, math.ceil(dt / h_int - 1e-9))
    return m, dt / m


def _check_finite(s: State, time: float) -> None:
    if not all(math.isfinite(v) for v in s):
        raise ScenarioError(f"Trajectory diverged (non-finite state) at t={time:g}")


def sample_trajectory(spec: OdeSpec) -> EventSet:
    """Integrate the system and emit one event per dt of simulated time.

    Event k (tick k = 1..round(T / dt)) holds the projected coordinates of the
    state at time burn_in + k * dt. Each dt is covered by ceil(dt / h_int)
    equal RK4 sub-steps.
    """
    f = _SYSTEMS[spec.system](spec.system_params)
    s: State = tuple(float(v) for v in spec.initial)
    if spec.seed is not None:
        rng = np.random.default_rng(spec.seed)
        s = tuple(v + float(d) for v, d in zip(s, rng.normal(0.0, spec.perturbation, 3)))

    m, h = _substeps(spec.dt, spec.integrator_step)
    n_samples = int(round(spec.T / spec.dt))
    burn_samples = int(round(spec.burn_in / spec.dt))
    for k in range(burn_samples):
        s = rk4_integrate(f, s, h, m)
        _check_finite(s, (k + 1) * spec.dt)

    a, b = (_AXES[c] for c in spec.projection)
    xs = np.empty(n_samples)
    ys = np.empty(n_samples)
    for k in range(n_samples):
        s = rk4_integrate(f, s, h, m)
        _check_finite(s, spec.burn_in + (k + 1) * spec.dt)
        xs[k] = s[a]
        ys[k] = s[b]

    logger.info(
        "Sampled %d %s points (dt=%g, %d RK4 sub-steps of %g)",
        n_samples, spec.system, spec.dt, m, h,
    )
    return EventSet(np.arange(1, n_samples + 1, dtype=np.int64), xs, ys)
