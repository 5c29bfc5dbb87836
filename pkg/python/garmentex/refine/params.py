# Copyright (c) 1998-2025 Scott Russell
# SPDX-License-Identifier: MIT

from pydantic import Field, field_validator

from garmentex.config import FlatConfig


class RefineParams(FlatConfig):
    """
    Phase II parameters.

    coverage_threshold of 0 means "relative": tau_c is coverage_fraction of
    the mean nonzero coverage weight.
    """
    coverage_fraction: float = Field(0.01, gt=0)
    coverage_threshold: float = Field(0.0, ge=0)
    dilation_radius: int = Field(2, ge=0)
    ns_iterations: int = Field(300, ge=1)
    ns_step: float = Field(0.1, gt=0)
    ns_transport_weight: float = Field(0.5, ge=0, le=1)
    constrain_to_domain: bool = True
    bilateral_window: int = Field(7, ge=1)
    bilateral_sigma_spatial: float = Field(3.0, gt=0)
    bilateral_sigma_range: float = Field(0.1, gt=0)

    @field_validator("bilateral_window")
    @classmethod
    def _odd_window(cls, value: int) -> int:
        if value % 2 != 1:
            raise ValueError("bilateral_window must be odd")
        return value
