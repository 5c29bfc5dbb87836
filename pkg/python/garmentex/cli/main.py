# Copyright (c) 1998-2025 Scott Russell
# SPDX-License-Identifier: MIT

"""
garmentex command line.

Every failure prints exactly one line to stderr,

    error code=<n> kind=<ErrorClass> message="<text>"

and exits with the error's code: 2 bad invocation, 3 bad input file,
4 numerical failure. Artifacts are written only after the whole pipeline
succeeds, so a failed run leaves no partial outputs.
"""

import argparse
import json
import sys
from pathlib import Path
from typing import Dict, List, Optional, Sequence

import pandas as pd

from garmentex import __version__, get_logger
from garmentex.errors import (
    GarmentexError,
    ImageFormatError,
    InvocationError,
    MissingInputError,
    NumericalError,
    ShapeMismatchError,
)
from garmentex.fit.config import FitConfig
from garmentex.fit.observation import Observation, load_landmark_observations, require_views
from garmentex.fit.pipeline import phase1
from garmentex.geometry.obj_io import load_obj, write_obj
from garmentex.geometry.templates import resolve_template
from garmentex.geometry.uv import rasterize_uv_domain
from garmentex.harness.evaluate import METHODS, STAGES, evaluate
from garmentex.harness.simulate import SimSpec, load_dataset, simulate_pairs
from garmentex.refine.blend import refine_from_coverage
from garmentex.refine.params import RefineParams
from garmentex.render.camera import Camera
from garmentex.render.image import (
    read_gray,
    read_image,
    read_texture,
    resize_image,
    write_image,
    write_mask,
)
from garmentex.render.textured import CoverageMap, read_coverage, render_textured, write_coverage
from garmentex.tps.bake import tps_bake_texture


class ArgumentParser(argparse.ArgumentParser):
    """argparse that raises InvocationError instead of exiting."""

    def error(self, message):
        raise InvocationError(message)


def _add_config(parser: argparse.ArgumentParser, help_text: str):
    parser.add_argument("--config", type=Path, help=help_text)
    parser.add_argument("--set", dest="overrides", action="append", default=[],
                        metavar="KEY=VALUE", help="override one config key (repeatable)")


def _add_views(parser: argparse.ArgumentParser):
    parser.add_argument("--template", required=True, help="built-in template name or directory")
    parser.add_argument("--front", type=Path, help="front catalog image (pre-masked PNG)")
    parser.add_argument("--back", type=Path, help="back catalog image (pre-masked PNG)")
    parser.add_argument("--mask-front", type=Path, help="front silhouette PNG")
    parser.add_argument("--mask-back", type=Path, help="back silhouette PNG")
    parser.add_argument("--landmarks", type=Path, required=True,
                        help='landmark JSON {"front": {...}, "back": {...}}')


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(prog="garmentex",
                            description="Recover garment UV textures from catalog images.")
    parser.add_argument("--version", action="version", version=f"garmentex {__version__}")
    parser.add_argument("--log-level", help="override LOG_LEVEL")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=ArgumentParser)

    fit = sub.add_parser("fit", help="Phase I: shape fit and coarse texture")
    _add_views(fit)
    _add_config(fit, "FitConfig TOML")
    fit.add_argument("--desk", action="store_true", help="start from the desk profile")
    fit.add_argument("-o", "--out", type=Path, required=True)

    tps = sub.add_parser("warp-tps", help="TPS warping baseline")
    _add_views(tps)
    tps.add_argument("--resolution", type=int, default=512)
    tps.add_argument("--world-extent", type=float, default=1.25)
    tps.add_argument("--regularization", type=float, default=1e-6)
    tps.add_argument("-o", "--out", type=Path, required=True)

    ref = sub.add_parser("refine", help="Phase II: inpaint holes and blend")
    ref.add_argument("--template", required=True)
    ref.add_argument("--coarse", type=Path, required=True)
    ref.add_argument("--coverage", type=Path, required=True,
                     help="coverage.npy from fit, or a PNG (zero marks unobserved texels)")
    _add_config(ref, "RefineParams TOML")
    ref.add_argument("-o", "--out", type=Path, required=True)

    sim = sub.add_parser("simulate", help="generate a synthetic corpus")
    sim.add_argument("--spec", type=Path, help="SimSpec TOML")
    _add_config(sim, "FitConfig TOML (defaults to the desk profile)")
    sim.add_argument("--workers", type=int)
    sim.add_argument("-o", "--out", type=Path, required=True)

    ev = sub.add_parser("eval", help="score methods on a simulated corpus")
    ev.add_argument("--data", type=Path, required=True)
    ev.add_argument("--methods", nargs="+", default=list(METHODS), choices=METHODS)
    ev.add_argument("--stages", nargs="+", default=list(STAGES), choices=STAGES)
    _add_config(ev, "RefineParams TOML")
    ev.add_argument("--workers", type=int)
    ev.add_argument("-o", "--out", type=Path, required=True)

    pre = sub.add_parser("preview", help="render a mesh and texture from both views")
    pre.add_argument("--template", help="built-in template name or directory")
    pre.add_argument("--mesh", type=Path, help="UV-mapped OBJ to render instead (e.g. fitted.obj)")
    pre.add_argument("--texture", type=Path, required=True)
    pre.add_argument("--image-size", type=int, default=512)
    pre.add_argument("--world-extent", type=float, default=1.25)
    pre.add_argument("-o", "--out", type=Path, required=True)
    return parser


def _load_config(cls, args, default=None):
    config = cls.load(args.config) if args.config else (default or cls())
    return config.with_overrides(args.overrides)


def _observations(args, world_extent: float, image_size: Optional[int] = None) -> Dict[str, Observation]:
    """Load both views; with image_size set, resample images and landmarks to it."""
    paths = {"front": (args.front, args.mask_front), "back": (args.back, args.mask_back)}
    missing = [f"--{v}" for v, (img, _) in paths.items() if img is None]
    missing += [f"--mask-{v}" for v, (_, m) in paths.items() if m is None]
    if missing:
        raise MissingInputError(f"both views required; missing {' '.join(missing)}")
    landmarks = load_landmark_observations(args.landmarks)
    observations = {}
    for view, (image_path, mask_path) in paths.items():
        image, mask = read_image(image_path), read_gray(mask_path)
        if image.height != image.width:
            raise ImageFormatError(f"{image_path} must be square, got {image.width}x{image.height}")
        if mask.shape[:2] != image.shape[:2]:
            raise ShapeMismatchError(f"{mask_path} does not match {image_path}")
        size = image_size or image.height
        factor = size / image.height
        points = {name: xy * factor for name, xy in landmarks.get(view, {}).items()}
        observations[view] = Observation(resize_image(image, size), resize_image(mask, size),
                                         points, Camera(view, world_extent, size))
    return require_views(observations)


def cmd_fit(args) -> None:
    config = _load_config(FitConfig, args, FitConfig.desk() if args.desk else None)
    assets = resolve_template(args.template)
    observations = _observations(args, config.world_extent, config.image_size)
    result = phase1(assets.mesh, observations, config)

    out = args.out
    out.mkdir(parents=True, exist_ok=True)
    write_image(result.coarse, out / "coarse.png")
    write_coverage(result.coverage, out / "coverage.npy")
    write_image(result.coverage.normalized(), out / "coverage.png")
    write_obj(assets.mesh, out / "fitted.obj", vertices=result.vertices)
    pd.DataFrame(result.trace).to_csv(out / "trace.csv", index=False)
    get_logger().artifact("fit artifacts written", {"out": str(out), "scale": result.scale})


def cmd_warp_tps(args) -> None:
    assets = resolve_template(args.template)
    observations = _observations(args, args.world_extent)
    texture, mask = tps_bake_texture(assets.mesh, observations, args.resolution,
                                     args.regularization)
    args.out.mkdir(parents=True, exist_ok=True)
    write_image(texture, args.out / "tps.png")
    write_mask(mask.hole, args.out / "tps_mask.png")
    get_logger().artifact("tps artifacts written", {"out": str(args.out)})


def _coverage(path: Path) -> CoverageMap:
    if path.suffix == ".npy":
        return read_coverage(path)
    plane = read_gray(path).plane
    return CoverageMap(plane.shape[0], plane)


def cmd_refine(args) -> None:
    params = _load_config(RefineParams, args)
    assets = resolve_template(args.template)
    coarse = read_texture(args.coarse)
    coverage = _coverage(args.coverage)
    if coverage.resolution != coarse.resolution:
        raise ImageFormatError("coverage and coarse texture sizes differ")
    domain = rasterize_uv_domain(assets.mesh, coarse.resolution)
    result = refine_from_coverage(coarse, coverage, domain, params)
    args.out.mkdir(parents=True, exist_ok=True)
    write_image(result.fine, args.out / "fine.png")
    write_mask(result.mask.hole, args.out / "mask.png")
    write_image(result.inpainted, args.out / "inpainted.png")
    get_logger().artifact("refine artifacts written", {"out": str(args.out)})


def cmd_simulate(args) -> None:
    spec = SimSpec.load(args.spec) if args.spec else SimSpec()
    config = _load_config(FitConfig, args, FitConfig.desk())
    result = simulate_pairs(spec, config, args.out, args.workers)
    if not result.records:
        kinds = sorted({f.kind for f in result.failures})
        raise NumericalError(f"all {len(result.failures)} samples failed ({', '.join(kinds)})")


def cmd_eval(args) -> None:
    params = _load_config(RefineParams, args)
    report = evaluate(load_dataset(args.data), args.methods, args.stages, params, args.workers)
    report.write(args.out)
    print(report.summary.to_string(index=False))


def cmd_preview(args) -> None:
    if args.mesh is None and args.template is None:
        raise InvocationError("preview needs --template or --mesh")
    mesh = load_obj(args.mesh) if args.mesh else resolve_template(args.template).mesh
    texture = read_texture(args.texture)
    renders = [(camera.view, render_textured(mesh.vertices, mesh.faces, mesh.corner_uvs,
                                             texture, camera))
               for camera in Camera.pair(args.world_extent, args.image_size)]
    args.out.mkdir(parents=True, exist_ok=True)
    for view, image in renders:
        write_image(image, args.out / f"{view}_render.png")
    get_logger().artifact("preview written", {"out": str(args.out)})


COMMANDS = {
    "fit": cmd_fit,
    "warp-tps": cmd_warp_tps,
    "refine": cmd_refine,
    "simulate": cmd_simulate,
    "eval": cmd_eval,
    "preview": cmd_preview,
}


def format_error(error: GarmentexError) -> str:
    return f"error code={error.exit_code} kind={type(error).__name__} message={json.dumps(str(error))}"


def run(argv: Optional[Sequence[str]] = None) -> int:
    argv: List[str] = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
        if args.log_level:
            try:
                get_logger().set_level(args.log_level)
            except ValueError as e:
                raise InvocationError(str(e))
        COMMANDS[args.command](args)
    except GarmentexError as e:
        print(format_error(e), file=sys.stderr)
        return e.exit_code
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
