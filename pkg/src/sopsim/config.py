"""System configuration and derived scalar parameters.

All evaluators and the Monte Carlo engine consume a validated
:class:`SystemConfig` plus the :class:`DerivedParams` computed from it.
Both are immutable value objects; sweeps build modified copies and
re-derive from scratch instead of mutating.
"""

from __future__ import annotations

import dataclasses
import json
import math
from dataclasses import dataclass


class ConfigError(ValueError):
    """Raised when a configuration violates an invariant."""


@dataclass(frozen=True)
class SystemConfig:
    """Physical parameters of the multi-pair network.

    Gains are mean squared channel envelopes (dimensionless), powers in
    watts, rates in bit/s.  The defaults put the noise floor far below
    the channel gains, so outage is governed by the main-to-eavesdropper
    gain ratio alone; finite-SNR studies should set ``n0``/``p_t``
    explicitly or use the ``snr_db`` sweep axis.
    """

    M: int = 2            # number of source-destination pairs
    n_t: int = 1          # transmit antennas per source (toward its destination)
    n_r: int = 1          # receive antennas per destination
    n_e: int = 1          # eavesdropper antennas
    p_t: float = 1.0      # W, second-stage forwarding power
    p_s: float = 1.0      # W, first-stage source power
    n0: float = 1e-30     # W, noise variance (common to sources, destinations, eavesdropper)
    bandwidth: float = 1.0  # Hz, per-pair bandwidth
    r_s: float = 0.5      # bit/s, secrecy-rate threshold
    r_o: float = 1.0      # bit/s, inter-source data rate
    sigma_md2: float = 1.0  # reference main-channel gain
    sigma_me2: float = 1.0  # reference second-stage wiretap gain
    sigma_ke2: float | None = None  # first-stage wiretap gain; None means "same as sigma_me2"
    sigma_ss2: float = 1.0  # mean inter-source gain
    k_rician: float = 1.0   # Rician K-factor of the inter-source links
    alpha_sd: float = 1.0   # relative gain scalar, main links
    alpha_se: float = 1.0   # relative gain scalar, second-stage wiretap links
    alpha_ke: float = 1.0   # relative gain scalar, first-stage wiretap links

    def __post_init__(self):
        if self.sigma_ke2 is None:
            object.__setattr__(self, "sigma_ke2", self.sigma_me2)

    def replace(self, **changes) -> "SystemConfig":
        """Return a copy with ``changes`` applied (no mutation)."""
        return dataclasses.replace(self, **changes)

    @property
    def mer(self) -> float:
        """Main-to-eavesdropper gain ratio sigma_md2 / sigma_me2."""
        return self.sigma_md2 / self.sigma_me2


_COUNT_FIELDS = ("M", "n_t", "n_r", "n_e")
_POSITIVE_FIELDS = (
    "p_t", "p_s", "n0", "bandwidth",
    "sigma_md2", "sigma_me2", "sigma_ke2", "sigma_ss2",
    "alpha_sd", "alpha_se", "alpha_ke",
)
_NONNEGATIVE_FIELDS = ("r_s", "r_o", "k_rician")


def validate(config: SystemConfig) -> SystemConfig:
    """Check every invariant; return the config unchanged or raise.

    The error names the first violated field in declaration order.
    """
    for name in _COUNT_FIELDS:
        value = getattr(config, name)
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError(f"{name} must be an integer, got {value!r}")
        if value < 1:
            raise ConfigError(f"{name} must be >= 1, got {value}")
    for name in _POSITIVE_FIELDS:
        value = getattr(config, name)
        if not (isinstance(value, (int, float)) and not isinstance(value, bool)):
            raise ConfigError(f"{name} must be a number, got {value!r}")
        if not math.isfinite(value) or value <= 0:
            raise ConfigError(f"{name} must be finite and > 0, got {value}")
    for name in _NONNEGATIVE_FIELDS:
        value = getattr(config, name)
        if not (isinstance(value, (int, float)) and not isinstance(value, bool)):
            raise ConfigError(f"{name} must be a number, got {value!r}")
        if not math.isfinite(value) or value < 0:
            raise ConfigError(f"{name} must be finite and >= 0, got {value}")
    return config


@dataclass(frozen=True)
class DerivedParams:
    """Scalar shorthands shared by every analytic expression.

    ``rho1``/``rho2`` are the full-band and half-band secrecy-rate
    factors 2^(r_s/B) and 2^(2 r_s/B); every threshold below is the
    outage offset of one comparison event written in squared-gain units.
    """

    rho1: float          # 2^(r_s/B), full-band rate factor (non-cooperative scheme)
    rho2: float          # 2^(2 r_s/B), half-band rate factor (two-stage schemes)
    delta0_prime: float  # (rho1 - 1) * n_t * n0 / p_t, non-coop noise offset
    delta0: float        # (rho2 - 1) * n_t * n0 / p_t, space-time-coded noise offset
    delta1: float        # p_t / (p_s * n_t), stage-power ratio under STC
    theta0: float        # (2^(2 r_o/B) - 1) / gamma_s, first-stage decode threshold
    theta1: float        # (rho2 - 1) / gamma_s, first-stage secrecy threshold
    theta2: float        # (theta0 - theta1) / rho2, split point of the first-stage outage integral
    theta3: float        # (m-1)! * sigma_ss2^m / (m/1)^m  -- inter-source moment normaliser
    theta4: float        # first-stage eavesdropper x inter-source pdf normaliser
    lambda0: float       # (rho2 - 1) * n0 / p_t, antenna-selection noise offset
    lambda1: float       # p_t / p_s, stage-power ratio under antenna selection
    gamma_s: float       # p_s / n0, first-stage transmit SNR
    lambda_se: float     # sigma_md2 / sigma_me2, main-to-eavesdropper ratio
    m_nakagami: int      # integer Gamma shape approximating the Rician inter-source fading


def nakagami_shape(k_rician: float) -> int:
    """Integer Gamma shape for a Rician K-factor: nearest integer of
    (1+K)^2/(2K+1), floored at 1."""
    raw = (1.0 + k_rician) ** 2 / (2.0 * k_rician + 1.0)
    return max(1, int(round(raw)))


def derive(config: SystemConfig) -> DerivedParams:
    """Compute every derived scalar from a validated config.

    Pure and deterministic: two calls yield bit-identical results.
    """
    b = config.bandwidth
    rho1 = 2.0 ** (config.r_s / b)
    rho2 = 2.0 ** (2.0 * config.r_s / b)
    rho_o = 2.0 ** (2.0 * config.r_o / b)
    gamma_s = config.p_s / config.n0
    m = nakagami_shape(config.k_rician)
    theta0 = (rho_o - 1.0) / gamma_s
    theta1 = (rho2 - 1.0) / gamma_s
    ne = config.n_e
    return DerivedParams(
        rho1=rho1,
        rho2=rho2,
        delta0_prime=(rho1 - 1.0) * config.n_t * config.n0 / config.p_t,
        delta0=(rho2 - 1.0) * config.n_t * config.n0 / config.p_t,
        delta1=config.p_t / (config.p_s * config.n_t),
        theta0=theta0,
        theta1=theta1,
        theta2=(theta0 - theta1) / rho2,
        theta3=math.factorial(m - 1) * config.sigma_ss2 ** m / float(m) ** m,
        theta4=(config.sigma_ke2 ** -ne) * (m / config.sigma_ss2) ** m
        / (math.factorial(ne - 1) * math.factorial(m - 1)),
        lambda0=(rho2 - 1.0) * config.n0 / config.p_t,
        lambda1=config.p_t / config.p_s,
        gamma_s=gamma_s,
        lambda_se=config.sigma_md2 / config.sigma_me2,
        m_nakagami=m,
    )


def load_config(path: str) -> SystemConfig:
    """Load a flat key-value JSON document into a SystemConfig.

    Keys must match SystemConfig field names exactly; unknown keys are
    an error.  Missing keys take the documented defaults.
    """
    with open(path, "r", encoding="utf-8") as fh:
        raw = json.load(fh)
    if not isinstance(raw, dict):
        raise ConfigError(f"config file must hold a flat object, got {type(raw).__name__}")
    known = {f.name for f in dataclasses.fields(SystemConfig)}
    unknown = sorted(set(raw) - known)
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
    for name in _COUNT_FIELDS:
        if name in raw and isinstance(raw[name], float) and raw[name].is_integer():
            raw[name] = int(raw[name])
    return validate(SystemConfig(**raw))


def save_config(config: SystemConfig, path: str) -> None:
    """Write a config as the flat key-value document ``load_config`` reads."""
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(dataclasses.asdict(config), fh, indent=2, sort_keys=False)
        fh.write("\n")
