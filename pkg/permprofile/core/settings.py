"""
Search budgets and parallelism settings.

Everything is configured by command-line flags; there is no environment or
file lookup. Flags override the defaults below.
"""

import logging
from dataclasses import dataclass, replace
from typing import Any, Dict

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Settings:
    """
    Budgets that keep exhaustive computations at desk scale.

    Attributes:
        exhaustive_bound: Largest length for which S_n is enumerated
        max_free_cuts: Largest (r-1)+(s-1) for an M-partition search
        max_n: Largest matrix size for an M-partition search
        threads: Worker threads for enumerate/verify (1 = sequential)
    """

    exhaustive_bound: int = 9
    max_free_cuts: int = 8
    max_n: int = 120
    threads: int = 1

    @classmethod
    def from_args(cls, args: Any) -> "Settings":
        """
        Overlay command-line flags on the defaults.

        Args:
            args: An argparse namespace; attributes that are missing or None
                keep their default

        Returns:
            The resulting settings
        """
        overrides: Dict[str, int] = {}
        for flag, field_name in (
            ("bound", "exhaustive_bound"),
            ("max_free_cuts", "max_free_cuts"),
            ("max_n", "max_n"),
            ("threads", "threads"),
        ):
            value = getattr(args, flag, None)
            if value is not None:
                overrides[field_name] = value
                logger.info(f"Setting {field_name} overridden from command line: {value}")

        return replace(DEFAULT_SETTINGS, **overrides)


DEFAULT_SETTINGS = Settings()
