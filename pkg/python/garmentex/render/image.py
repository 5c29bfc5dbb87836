# Copyright (c) 1998-2025 Scott Russell
# SPDX-License-Identifier: MIT

"""
Float images and PNG I/O.

PNG values map linearly between [0, 255] and [0, 1]; no gamma handling is
applied in either direction. Alpha channels are dropped on read: inputs
are expected to be pre-masked.
"""

from dataclasses import dataclass
from pathlib import Path
from typing import Union

import numpy as np
from PIL import Image as PILImage, UnidentifiedImageError

from garmentex.errors import ImageFormatError, MissingInputError, ShapeMismatchError

PathLike = Union[str, Path]
MASK_THRESHOLD = 128


@dataclass(frozen=True)
class Image:
    """H x W x C float image, C in {1, 3}, values clamped to [0, 1]."""
    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=np.float64)
        if values.ndim == 2:
            values = values[:, :, None]
        if values.ndim != 3 or values.shape[2] not in (1, 3):
            raise ImageFormatError(f"image must be HxW, HxWx1 or HxWx3, got {values.shape}")
        if not np.all(np.isfinite(values)):
            raise ImageFormatError("image values must be finite")
        values = np.clip(values, 0.0, 1.0)
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def height(self) -> int:
        return self.values.shape[0]

    @property
    def width(self) -> int:
        return self.values.shape[1]

    @property
    def channels(self) -> int:
        return self.values.shape[2]

    @property
    def shape(self):
        return self.values.shape

    @property
    def plane(self) -> np.ndarray:
        """H x W view of a single-channel image."""
        if self.channels != 1:
            raise ImageFormatError("expected a single-channel image")
        return self.values[:, :, 0]

    @classmethod
    def constant(cls, height: int, width: int, value, channels: int = 3) -> "Image":
        return cls(np.broadcast_to(np.asarray(value, dtype=np.float64),
                                   (height, width, channels)))


class TextureMap(Image):
    """Square RGB texel grid; row 0 is v = 1."""

    def __post_init__(self):
        super().__post_init__()
        if self.height != self.width or self.channels != 3:
            raise ImageFormatError(f"texture must be square RGB, got {self.shape}")

    @property
    def resolution(self) -> int:
        return self.height

    @classmethod
    def filled(cls, resolution: int, value=0.5) -> "TextureMap":
        return cls(np.broadcast_to(np.asarray(value, dtype=np.float64),
                                   (resolution, resolution, 3)))


def require_same_shape(a: Image, b: Image):
    if a.shape != b.shape:
        raise ShapeMismatchError(f"image shapes differ: {a.shape} vs {b.shape}")


def _open(path: PathLike) -> PILImage.Image:
    path = Path(path)
    if not path.is_file():
        raise MissingInputError(f"image not found: {path}")
    try:
        img = PILImage.open(path)
        img.load()
    except (UnidentifiedImageError, OSError) as e:
        raise ImageFormatError(f"cannot read {path}: {e}")
    return img


def read_image(path: PathLike) -> Image:
    """Read an 8-bit PNG as RGB (or grayscale) floats."""
    img = _open(path)
    if img.mode in ("L", "1", "I;16", "I"):
        img = img.convert("L")
    else:
        img = img.convert("RGB")
    return Image(np.asarray(img, dtype=np.float64) / 255.0)


def read_texture(path: PathLike) -> TextureMap:
    img = _open(path).convert("RGB")
    return TextureMap(np.asarray(img, dtype=np.float64) / 255.0)


def read_gray(path: PathLike) -> Image:
    """Read any image as a single-channel float image (soft silhouettes)."""
    img = _open(path).convert("L")
    return Image(np.asarray(img, dtype=np.float64) / 255.0)


def read_mask(path: PathLike) -> np.ndarray:
    """8-bit grayscale mask; >= 128 is true."""
    img = _open(path).convert("L")
    return np.asarray(img) >= MASK_THRESHOLD


def to_uint8(values: np.ndarray) -> np.ndarray:
    return np.round(np.clip(values, 0.0, 1.0) * 255.0).astype(np.uint8)


def write_image(image: Union[Image, np.ndarray], path: PathLike):
    values = image.values if isinstance(image, Image) else np.asarray(image, dtype=np.float64)
    data = to_uint8(values)
    if data.ndim == 3 and data.shape[2] == 1:
        data = data[:, :, 0]
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    PILImage.fromarray(data).save(path, format="PNG")


def write_mask(mask: np.ndarray, path: PathLike):
    write_image(np.asarray(mask, dtype=np.float64), path)


def resize_image(image: Image, size: int) -> Image:
    """Bilinear resample to size x size, one float plane per channel."""
    if image.shape[:2] == (size, size):
        return image
    planes = [np.asarray(PILImage.fromarray(image.values[:, :, c].astype(np.float32))
                         .resize((size, size), PILImage.Resampling.BILINEAR), dtype=np.float64)
              for c in range(image.channels)]
    return Image(np.stack(planes, axis=-1))
