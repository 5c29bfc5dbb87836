# Copyright (c) 1998-2025 Scott Russell
# SPDX-License-Identifier: MIT

"""
Phase I configuration.

Defaults are the full profile: 512^2 renders and 1,000 + 1,000 steps with
energy weights w_sil=50, w_lmk=0.01, w_arap 50 -> 5, w_norm 10 -> 1,
w_img=100, w_tv=1. The stage-1 step size follows the same cosine decay from
lr_graph to lr_graph_end. `FitConfig.desk()` is the reduced corpus profile.
"""

from pydantic import Field, model_validator

from garmentex.config import FlatConfig


class FitConfig(FlatConfig):
    image_size: int = Field(512, ge=16)
    texture_resolution: int = Field(512, ge=16)
    world_extent: float = Field(1.25, gt=0)
    sigma: float = Field(1e-4, gt=0)

    downsample_factor: int = Field(20, ge=2)
    node_neighbor_count: int = Field(6, ge=1)
    skin_node_count: int = Field(4, ge=1)

    steps_stage1: int = Field(1000, ge=1)
    steps_stage2: int = Field(1000, ge=1)

    w_sil: float = Field(50.0, ge=0)
    w_lmk: float = Field(0.01, ge=0)
    w_arap: float = Field(50.0, ge=0)
    w_arap_end: float = Field(5.0, ge=0)
    w_norm: float = Field(10.0, ge=0)
    w_norm_end: float = Field(1.0, ge=0)
    w_img: float = Field(100.0, ge=0)
    w_tv: float = Field(1.0, ge=0)
    w_uv_tv: float = Field(0.0, ge=0)

    lr_graph: float = Field(5e-3, gt=0)
    lr_graph_end: float = Field(5e-4, gt=0)
    lr_texture: float = Field(5e-2, gt=0)
    adam_beta1: float = Field(0.9, ge=0, lt=1)
    adam_beta2: float = Field(0.999, ge=0, lt=1)
    adam_eps: float = Field(1e-8, gt=0)
    texture_init: float = Field(0.5, ge=0, le=1)

    auto_scale: bool = True
    scale_min: float = Field(0.5, gt=0)
    scale_max: float = Field(2.0, gt=0)
    scale_step: float = Field(0.02, gt=0)

    log_every: int = Field(50, ge=1)

    @model_validator(mode="after")
    def _check_schedule(self):
        if self.w_arap_end > self.w_arap:
            raise ValueError("w_arap_end must not exceed w_arap")
        if self.w_norm_end > self.w_norm:
            raise ValueError("w_norm_end must not exceed w_norm")
        if self.lr_graph_end > self.lr_graph:
            raise ValueError("lr_graph_end must not exceed lr_graph")
        if self.scale_min > self.scale_max:
            raise ValueError("scale_min must not exceed scale_max")
        return self

    @classmethod
    def desk(cls, **overrides) -> "FitConfig":
        """128^2 renders, 256^2 textures, 300 + 300 steps."""
        values = dict(image_size=128, texture_resolution=256, steps_stage1=300, steps_stage2=300)
        values.update(overrides)
        return cls(**values)
