"""Resource caps shared by the expansion and scan routines."""

from __future__ import annotations

import os

from .errors import ResourceLimitError

DEFAULT_MAX_MONOMIALS = 10**7
DEFAULT_MAX_PARTITIONS = 10**6
MONOMIAL_ENV = "GRZ_MAX_MONOMIALS"


def max_monomials(override: int | None = None) -> int:
    if override is not None:
        return override
    env = os.environ.get(MONOMIAL_ENV)
    return int(env) if env else DEFAULT_MAX_MONOMIALS


def check(cap_name: str, required: int, cap: int, force: bool = False) -> None:
    if required > cap and not force:
        raise ResourceLimitError(cap_name, required, cap)
