# Copyright (c) 1998-2025 Scott Russell
# SPDX-License-Identifier: MIT

"""
Method x stage evaluation over a simulated corpus.

Methods: "phase1" (the coarse texture from fitting) and "tps" (landmark
warping). Stages: "none" scores the method output directly, "refined"
scores it after residual-mask inpainting and bilateral blending. Scores
are computed over UV-domain texels against the ground-truth texture.
"""

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from garmentex import get_logger
from garmentex.errors import DatasetError, InvocationError
from garmentex.geometry.templates import resolve_template
from garmentex.geometry.uv import DomainMask, rasterize_uv_domain
from garmentex.harness.batch import run_batch
from garmentex.harness.metrics import psnr, ssim
from garmentex.harness.simulate import SampleRecord
from garmentex.refine.blend import refine
from garmentex.refine.mask import ResidualMask, residual_mask
from garmentex.refine.params import RefineParams
from garmentex.render.image import TextureMap
from garmentex.tps.bake import tps_bake_texture

METHODS = ("tps", "phase1")
STAGES = ("none", "refined")
PathLike = Union[str, Path]


@dataclass(frozen=True)
class EvalReport:
    rows: pd.DataFrame
    summary: pd.DataFrame

    def mean_ssim(self, method: str, stage: str = "none") -> float:
        hit = self.summary[(self.summary.method == method) & (self.summary.stage == stage)]
        if hit.empty:
            raise KeyError(f"no scores for {method}/{stage}")
        return float(hit.ssim.iloc[0])

    def to_dict(self) -> Dict:
        def value(v):
            if isinstance(v, float) and np.isinf(v):
                return "inf" if v > 0 else "-inf"
            if isinstance(v, float) and np.isnan(v):
                return None
            return v.item() if isinstance(v, np.generic) else v

        def clean(records):
            return [{k: value(v) for k, v in r.items()} for r in records]
        return {
            "summary": clean(self.summary.to_dict(orient="records")),
            "samples": clean(self.rows.to_dict(orient="records")),
        }

    def write(self, directory: PathLike):
        root = Path(directory)
        root.mkdir(parents=True, exist_ok=True)
        self.summary.to_csv(root / "report.csv", index=False)
        self.rows.to_csv(root / "samples.csv", index=False)
        (root / "report.json").write_text(
            json.dumps(self.to_dict(), indent=2, sort_keys=True, default=str) + "\n")
        get_logger().artifact("report written", {"path": str(root)})


def _masked(texture: TextureMap, domain: DomainMask) -> np.ndarray:
    return np.where(domain.inside[:, :, None], texture.values, 0.0)


def _score(output: TextureMap, gt: TextureMap, domain: DomainMask) -> Tuple[float, float]:
    a, b = _masked(output, domain), _masked(gt, domain)
    return ssim(a, b, domain.inside), psnr(a, b, domain.inside)


def method_output(record: SampleRecord, method: str, domain: DomainMask,
                  params: RefineParams) -> Tuple[TextureMap, ResidualMask, int]:
    """Stage-"none" texture for a method, its residual mask and landmark count."""
    if method == "phase1":
        return record.coarse, residual_mask(record.coverage, domain, params), len(
            record.meta["landmarks"]["front"])
    mesh = resolve_template(record.template).mesh
    observations = record.observations(record.meta["world_extent"])
    texture, mask = tps_bake_texture(mesh, observations, domain.resolution,
                                     dilation_radius=params.dilation_radius, domain=domain)
    return texture, mask, len(record.meta["landmarks"]["front"])


def evaluate_sample(job: Tuple[SampleRecord, Tuple[str, ...], Tuple[str, ...], str]) -> List[Dict]:
    record, methods, stages, params_text = job
    params = RefineParams.from_toml(params_text)
    mesh = resolve_template(record.template).mesh
    domain = rasterize_uv_domain(mesh, record.gt.resolution)
    rows = []
    for method in methods:
        output, mask, landmark_count = method_output(record, method, domain, params)
        for stage in stages:
            scored = output if stage == "none" else refine(output, mask, domain, params).fine
            s, p = _score(scored, record.gt, domain)
            rows.append({
                "sample": record.name,
                "template": record.template,
                "method": method,
                "stage": stage,
                "ssim": s,
                "psnr": p,
                "hole_fraction": mask.fraction_of(domain),
                "landmarks": landmark_count,
            })
    return rows


def evaluate(dataset: Sequence[SampleRecord], methods: Sequence[str] = METHODS,
             stages: Sequence[str] = STAGES, params: Optional[RefineParams] = None,
             workers: Optional[int] = None) -> EvalReport:
    if not dataset:
        raise DatasetError("cannot evaluate an empty dataset")
    unknown = [m for m in methods if m not in METHODS] + [s for s in stages if s not in STAGES]
    if unknown:
        raise InvocationError(f"unknown methods or stages: {', '.join(unknown)}")
    params = params or RefineParams()
    jobs = [(record, tuple(methods), tuple(stages), params.to_toml()) for record in dataset]
    rows = [row for sample_rows in run_batch(jobs, evaluate_sample, workers) for row in sample_rows]

    frame = pd.DataFrame(rows)
    summary = (frame.groupby(["method", "stage"], sort=False)
               .agg(ssim=("ssim", "mean"), psnr=("psnr", "mean"), count=("sample", "count"))
               .reset_index())
    get_logger().info("evaluation done", {"samples": len(dataset),
                                          "summary": summary.to_dict(orient="records")})
    return EvalReport(frame, summary)
