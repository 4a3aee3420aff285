"""Domain types: devices, system parameters, allocations, multipliers.

All quantities are SI internally: bits, seconds, watts, joules, Hz.
Types are frozen dataclasses; arrays they hold are treated as immutable.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field, asdict

import numpy as np


def _positive(name: str, value: float) -> None:
    if not np.isfinite(value) or value <= 0:
        raise ValueError(f"{name} must be strictly positive and finite, got {value!r}")


@dataclass(frozen=True)
class DeviceParams:
    """Compute and radio capabilities of one device.

    kappa      effective capacitance coefficient of the chip
    c          CPU cycles needed per input bit
    f_max      maximum CPU frequency [cycles/s]
    h          uplink channel power gain (dimensionless)
    p_max      maximum RF transmit power [W]
    p_circuit  constant power drawn by the radio circuits while transmitting [W]
    """

    kappa: float
    c: float
    f_max: float
    h: float
    p_max: float
    p_circuit: float

    def __post_init__(self):
        for name in ("kappa", "c", "f_max", "h", "p_max", "p_circuit"):
            _positive(name, getattr(self, name))

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "DeviceParams":
        return cls(**d)


@dataclass(frozen=True)
class SystemConfig:
    """Shared task and network parameters.

    alpha is always (n_devices - 1) * beta: each device ships its
    intermediate results to all other devices through the access point.
    rate_in_bits switches the uplink rate from the natural-log form
    (nats/s, used interchangeably with bits/s) to strict bit accounting.
    """

    n_devices: int
    task_bits: float
    beta: float
    deadline: float
    bandwidth: float
    noise_psd: float
    snr_gap: float = 1.0
    rate_in_bits: bool = False
    alpha: float = field(init=False)

    def __post_init__(self):
        if self.n_devices < 1:
            raise ValueError("n_devices must be >= 1")
        if self.task_bits < 0:
            raise ValueError("task_bits must be >= 0")
        if self.beta < 0:
            raise ValueError("beta must be >= 0")
        _positive("deadline", self.deadline)
        _positive("bandwidth", self.bandwidth)
        _positive("noise_psd", self.noise_psd)
        if self.snr_gap < 1.0:
            raise ValueError("snr_gap must be >= 1")
        object.__setattr__(self, "alpha", (self.n_devices - 1) * self.beta)

    @property
    def reduce_bits(self) -> float:
        return self.beta * self.task_bits

    def with_task_bits(self, task_bits: float) -> "SystemConfig":
        return SystemConfig(self.n_devices, task_bits, self.beta, self.deadline,
                            self.bandwidth, self.noise_psd, self.snr_gap,
                            self.rate_in_bits)

    def to_dict(self) -> dict:
        d = asdict(self)
        d.pop("alpha")
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "SystemConfig":
        return cls(**d)


def make_system(n: int, L: float, beta: float, tau: float, B: float, N0: float,
                snr_gap: float = 1.0, rate_in_bits: bool = False) -> SystemConfig:
    """Build a SystemConfig; alpha is derived as (n - 1) * beta."""
    return SystemConfig(n_devices=n, task_bits=L, beta=beta, deadline=tau,
                        bandwidth=B, noise_psd=N0, snr_gap=snr_gap,
                        rate_in_bits=rate_in_bits)


@dataclass(frozen=True)
class Allocation:
    """Decision variables: per-device loads, phase durations, RF energies.

    t_red is a scalar for the jointly optimized schemes and a per-device
    vector for the fixed-frequency family (each device reduces at full
    speed there).
    """

    loads: np.ndarray
    t_map: np.ndarray
    t_shu: np.ndarray
    t_red: float | np.ndarray
    rf_energy: np.ndarray

    def __post_init__(self):
        for name in ("loads", "t_map", "t_shu", "rf_energy"):
            arr = np.asarray(getattr(self, name), dtype=float)
            object.__setattr__(self, name, arr)
            if (arr < 0).any():
                raise ValueError(f"{name} must be entrywise >= 0")
        tr = self.t_red
        if np.ndim(tr) == 0:
            tr = float(tr)
            if tr < 0:
                raise ValueError("t_red must be >= 0")
        else:
            tr = np.asarray(tr, dtype=float)
            if (tr < 0).any():
                raise ValueError("t_red must be entrywise >= 0")
        object.__setattr__(self, "t_red", tr)

    @property
    def n_devices(self) -> int:
        return len(self.loads)

    @property
    def powers(self) -> np.ndarray:
        """RF transmit powers p = E/t_shu, 0 where both vanish."""
        with np.errstate(divide="ignore", invalid="ignore"):
            p = np.where(self.t_shu > 0, self.rf_energy / np.where(self.t_shu > 0, self.t_shu, 1.0), 0.0)
        return p

    def t_red_vector(self) -> np.ndarray:
        """t_red broadcast to one entry per device."""
        if np.ndim(self.t_red) == 0:
            return np.full(self.n_devices, float(self.t_red))
        return self.t_red

    def to_dict(self) -> dict:
        return {
            "loads": self.loads.tolist(),
            "t_map": self.t_map.tolist(),
            "t_shu": self.t_shu.tolist(),
            "t_red": float(self.t_red) if np.ndim(self.t_red) == 0 else self.t_red.tolist(),
            "rf_energy": self.rf_energy.tolist(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Allocation":
        tr = d["t_red"]
        return cls(loads=np.array(d["loads"]), t_map=np.array(d["t_map"]),
                   t_shu=np.array(d["t_shu"]),
                   t_red=float(tr) if np.ndim(tr) == 0 else np.array(tr),
                   rf_energy=np.array(d["rf_energy"]))


@dataclass(frozen=True)
class Multipliers:
    """Outer dual variables: task completeness (lam), per-device shuffle
    rate (mu, >= 0) and per-device deadline (beta_t, >= 0)."""

    lam: float
    mu: np.ndarray
    beta_t: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "mu", np.asarray(self.mu, dtype=float))
        object.__setattr__(self, "beta_t", np.asarray(self.beta_t, dtype=float))
        if (self.mu < 0).any():
            raise ValueError("mu must be entrywise >= 0")
        if (self.beta_t < 0).any():
            raise ValueError("beta_t must be entrywise >= 0")

    def to_dict(self) -> dict:
        return {"lam": self.lam, "mu": self.mu.tolist(), "beta_t": self.beta_t.tolist()}

    @classmethod
    def from_dict(cls, d: dict) -> "Multipliers":
        return cls(lam=d["lam"], mu=np.array(d["mu"]), beta_t=np.array(d["beta_t"]))


@dataclass(frozen=True)
class EnergyBreakdown:
    """Per-device energies of the three phases plus the grand total [J]."""

    e_map: np.ndarray
    e_shu: np.ndarray
    e_red: np.ndarray
    total: float

    def __post_init__(self):
        for name in ("e_map", "e_shu", "e_red"):
            object.__setattr__(self, name, np.asarray(getattr(self, name), dtype=float))

    def to_dict(self) -> dict:
        return {"e_map": self.e_map.tolist(), "e_shu": self.e_shu.tolist(),
                "e_red": self.e_red.tolist(), "total": self.total}

    @classmethod
    def from_dict(cls, d: dict) -> "EnergyBreakdown":
        return cls(e_map=np.array(d["e_map"]), e_shu=np.array(d["e_shu"]),
                   e_red=np.array(d["e_red"]), total=d["total"])


@dataclass(frozen=True)
class PopulationBounds:
    """Ranges of the device parameter distributions.

    kappa, c, f_max, p_max and p_circuit are uniform on the given closed
    intervals; the channel power gain is drawn as the squared magnitude of
    a circularly-symmetric complex Gaussian with variance h_mean, i.e. an
    exponential with mean h_mean.
    """

    kappa: tuple[float, float] = (1e-28, 1e-27)
    c: tuple[float, float] = (500.0, 1500.0)
    f_max: tuple[float, float] = (1e9, 3e9)
    p_max: tuple[float, float] = (10e-3, 25e-3)
    p_circuit: tuple[float, float] = (10e-3, 25e-3)
    h_mean: float = 1e-3

    def __post_init__(self):
        for name in ("kappa", "c", "f_max", "p_max", "p_circuit"):
            lo, hi = getattr(self, name)
            if not (0 < lo <= hi):
                raise ValueError(f"invalid bounds for {name}: [{lo}, {hi}]")
        _positive("h_mean", self.h_mean)


DEFAULT_BOUNDS = PopulationBounds()


def sample_population(seed: int, bounds: PopulationBounds = DEFAULT_BOUNDS,
                      n: int = 1) -> list[DeviceParams]:
    """Draw n devices; each device's stream is keyed by (seed, index) so the
    population is reproducible under parallel or partial sampling."""
    if n < 1:
        raise ValueError("n must be >= 1")
    devices = []
    for i in range(n):
        rng = np.random.default_rng(np.random.SeedSequence((seed, i)))
        kappa = rng.uniform(*bounds.kappa)
        c = rng.uniform(*bounds.c)
        f_max = rng.uniform(*bounds.f_max)
        re = rng.normal(0.0, np.sqrt(bounds.h_mean / 2.0))
        im = rng.normal(0.0, np.sqrt(bounds.h_mean / 2.0))
        h = re * re + im * im
        p_max = rng.uniform(*bounds.p_max)
        p_circuit = rng.uniform(*bounds.p_circuit)
        devices.append(DeviceParams(kappa=kappa, c=c, f_max=f_max, h=h,
                                    p_max=p_max, p_circuit=p_circuit))
    return devices


def population_to_csv(devices: list[DeviceParams]) -> str:
    """CSV dump with columns idx,kappa,c,f_max,h,p_max,p_circuit."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["idx", "kappa", "c", "f_max", "h", "p_max", "p_circuit"])
    for i, d in enumerate(devices):
        w.writerow([i, repr(d.kappa), repr(d.c), repr(d.f_max), repr(d.h),
                    repr(d.p_max), repr(d.p_circuit)])
    return buf.getvalue()


def population_from_csv(text: str) -> list[DeviceParams]:
    rows = list(csv.DictReader(io.StringIO(text)))
    return [DeviceParams(kappa=float(r["kappa"]), c=float(r["c"]),
                         f_max=float(r["f_max"]), h=float(r["h"]),
                         p_max=float(r["p_max"]), p_circuit=float(r["p_circuit"]))
            for r in rows]


def device_arrays(devices: list[DeviceParams]) -> dict[str, np.ndarray]:
    """Column-wise view of a device list for vectorized numerics."""
    return {
        "kappa": np.array([d.kappa for d in devices]),
        "c": np.array([d.c for d in devices]),
        "f_max": np.array([d.f_max for d in devices]),
        "h": np.array([d.h for d in devices]),
        "p_max": np.array([d.p_max for d in devices]),
        "p_circuit": np.array([d.p_circuit for d in devices]),
    }
