"""Run settings: defaults, environment overrides, CLI overrides."""

import os
from dataclasses import dataclass, replace
from typing import Mapping, Optional, Tuple

from errors import ScenarioError

DEFAULT_PRIME = 32003


@dataclass(frozen=True)
class Settings:
    prime: int = DEFAULT_PRIME
    seed: int = 42
    seed_replicas: int = 3
    extra_primes: Tuple[int, ...] = (65537,)
    trials: int = 200
    max_inference_rounds: int = 64

    @property
    def seeds(self) -> Tuple[int, ...]:
        return tuple(self.seed + k for k in range(self.seed_replicas))

    @property
    def primes(self) -> Tuple[int, ...]:
        return (self.prime,) + tuple(p for p in self.extra_primes if p != self.prime)

    def override(self, **changes: Optional[int]) -> "Settings":
        """Copy with every non-None keyword applied."""
        return replace(self, **{k: v for k, v in changes.items() if v is not None})


def _int_env(environ: Mapping[str, str], key: str) -> Optional[int]:
    raw = environ.get(key)
    if raw is None or raw == "":
        return None
    try:
        return int(raw)
    except ValueError:
        raise ScenarioError(f"{key} must be an integer, got {raw!r}")


def load_settings(environ: Optional[Mapping[str, str]] = None) -> Settings:
    """Defaults overridden by COXGAME_PRIME, COXGAME_SEED and COXGAME_SEED_REPLICAS."""
    environ = os.environ if environ is None else environ
    return Settings().override(
        prime=_int_env(environ, "COXGAME_PRIME"),
        seed=_int_env(environ, "COXGAME_SEED"),
        seed_replicas=_int_env(environ, "COXGAME_SEED_REPLICAS"),
    )
