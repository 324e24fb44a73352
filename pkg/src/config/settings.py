"""Application configuration settings."""

import os
from typing import Optional, Tuple
from dataclasses import dataclass, field
from functools import lru_cache


@dataclass
class CampaignConfig:
    """Verification campaign configuration."""
    default_trials: int = 100
    workers: int = 1
    # None means n² Birkhoff terms
    birkhoff_terms: Optional[int] = None

    inf_witness_radii: Tuple[float, ...] = (0.6, 0.55, 0.51, 0.505, 0.501)
    sup_witness_max_degree: int = 12
    schur_witness_ladder: Tuple[Tuple[int, int], ...] = (
        (2, 2), (4, 4), (8, 8), (16, 16), (32, 32), (64, 64),
        (64, 128), (64, 256), (64, 512), (64, 1024),
    )


@dataclass
class OutputConfig:
    """Report output configuration."""
    json_indent: int = 2
    default_format: str = "json-report"


@dataclass
class LoggingConfig:
    """Logging configuration."""
    level: str = "INFO"
    format: str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

    def __post_init__(self):
        """Set logging level from environment if available."""
        env_level = os.environ.get("LOG_LEVEL")
        if env_level:
            self.level = env_level.upper()


@dataclass
class Settings:
    """Application settings."""
    campaign: CampaignConfig = field(default_factory=CampaignConfig)
    output: OutputConfig = field(default_factory=OutputConfig)
    logging: LoggingConfig = field(default_factory=LoggingConfig)


@dataclass
class RunConfig:
    """One CLI invocation: the command and every parameter it may use."""
    command: str
    input_path: Optional[str] = None
    n: Optional[int] = None
    m: Optional[int] = None
    r: Optional[float] = None
    k: Optional[int] = None
    trials: Optional[int] = None
    size: Optional[int] = None
    family: Optional[str] = None
    kind: Optional[str] = None
    seed: int = 0
    tol: Optional[float] = None
    output_path: Optional[str] = None
    output_format: str = "json-report"
    emit_path: Optional[str] = None
    workers: Optional[int] = None
    timing: bool = False

    def echo(self) -> dict:
        """Config echo for reports; paths and output plumbing are left out."""
        keys = ("n", "m", "r", "k", "trials", "size", "family", "kind", "seed", "tol")
        echo = {"command": self.command}
        for key in keys:
            value = getattr(self, key)
            if value is not None:
                echo[key] = value
        if self.input_path is not None:
            echo["input"] = os.path.basename(self.input_path)
        return echo


@lru_cache()
def get_settings() -> Settings:
    """Get application settings (cached)."""
    return Settings()
