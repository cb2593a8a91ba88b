"""
Runtime caps for the ring laboratory, read from RINGLAB_* environment variables.
"""

from typing import Optional

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class RingLabSettings(BaseSettings):
    """Search and size caps shared by every module."""

    model_config = SettingsConfigDict(
        env_prefix="RINGLAB_",
        case_sensitive=False,
        extra="ignore",
    )

    order_cap: int = Field(256, gt=1, description="Largest ring order accepted")
    brute_cap: int = Field(16, gt=0, description="Largest order for submonoid enumeration")
    raw_cap: int = Field(10, gt=0, description="Largest order for the unrestricted submonoid oracle")
    ideal_cap: int = Field(20000, gt=0, description="Most distinct ideals enumerated")
    gr_cap: int = Field(256, gt=1, description="Largest associated graded ring built")
    monoid_limit: int = Field(200000, gt=0, description="Most submonoids visited in one search")


def get_settings(**overrides: Optional[int]) -> RingLabSettings:
    """
    Build settings from the environment, then apply explicit overrides.

    Args:
        **overrides: Cap values; None entries are ignored

    Returns:
        A fresh RingLabSettings instance
    """
    given = {key: value for key, value in overrides.items() if value is not None}
    return RingLabSettings(**given)
