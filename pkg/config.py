"""
Runtime settings and logging setup.

Defaults can be overridden by environment variables, and those in turn by
explicit keyword overrides (the CLI passes its flags here, so a flag always
wins over the environment).
"""

import logging
import os
import sys
from typing import Any, Dict, Optional

from pydantic import BaseModel, Field

ENV_PREFIX = "CIRCULANT_"


class Settings(BaseModel):
    """Search bounds and parallelism shared by every operation."""

    aut_bound: int = Field(64, ge=1, description="Largest digraph order handed to backtracking search")
    group_budget: int = Field(10_000_000, ge=1, description="Largest group order whose elements may be enumerated")
    exhaustive_bound: int = Field(16, ge=1, description="Largest order for the exhaustive census")
    threads: int = Field(1, ge=1, description="Worker processes used by the census")
    seed: int = Field(0, ge=0, description="Seed for randomized checks")

    model_config = {"frozen": True}

    @classmethod
    def load(cls, overrides: Optional[Dict[str, Any]] = None) -> "Settings":
        """
        Build settings from defaults, environment and overrides.

        Args:
            overrides: Field values that take precedence over the environment;
                entries whose value is None are ignored

        Returns:
            Validated settings
        """
        values: Dict[str, Any] = {}
        for name in cls.model_fields:
            raw = os.environ.get(ENV_PREFIX + name.upper())
            if raw is not None and raw.strip():
                values[name] = raw.strip()
        for name, value in (overrides or {}).items():
            if value is not None:
                values[name] = value
        return cls.model_validate(values)


def configure_logging(verbosity: int = 0) -> None:
    """Send log records to stderr; 0 = WARNING, 1 = INFO, 2+ = DEBUG."""
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity >= 2:
        level = logging.DEBUG

    root = logging.getLogger()
    if not any(getattr(h, "_circulant", False) for h in root.handlers):
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter("%(asctime)s %(levelname)s %(name)s: %(message)s"))
        handler._circulant = True
        root.addHandler(handler)
    root.setLevel(level)
