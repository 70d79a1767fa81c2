"""Binary PPM (P6) images, optional PNG export and image helpers."""

from __future__ import annotations

import logging
import re
from typing import TYPE_CHECKING

import numpy as np
import torch

from ..geometry import DTYPE
from ..renderer import ImageBuffer

if TYPE_CHECKING:
    from pathlib import Path

    import numpy.typing as npt

LOGGER = logging.getLogger(__name__)

MAXVAL = 255
_HEADER = re.compile(rb"\AP6\s+(\d+)\s+(\d+)\s+(\d+)\s")


class ImageFormatError(ValueError):
    """An image file could not be parsed."""


def quantize(image: ImageBuffer) -> npt.NDArray[np.uint8]:
    """``round(clamp(v, 0, 1) * 255)`` per channel, shape ``(H, W, 3)``."""
    rgb = image.rgb.detach().to(DTYPE).clamp(0.0, 1.0).numpy()
    return np.rint(rgb * MAXVAL).astype(np.uint8)


def encode_ppm(image: ImageBuffer) -> bytes:
    """Binary PPM bytes: ``P6``, size, maxval 255, no comments."""
    pixels = quantize(image)
    header = f"P6\n{image.width} {image.height}\n{MAXVAL}\n".encode("ascii")
    return header + pixels.tobytes()


def write_ppm(path: Path, image: ImageBuffer) -> None:
    """Write ``image`` as binary PPM."""
    path.write_bytes(encode_ppm(image))
    LOGGER.debug("wrote %dx%d PPM to %s", image.width, image.height, path)


def decode_ppm(data: bytes) -> ImageBuffer:
    """Parse binary PPM bytes; alpha is set to one everywhere.

    Raises:
        ImageFormatError: Not a maxval-255 P6 file or truncated.

    """
    match = _HEADER.match(data)
    if not match:
        raise ImageFormatError("not a binary PPM (P6) image")
    width, height, maxval = (int(group) for group in match.groups())
    if maxval != MAXVAL:
        msg = f"unsupported PPM maxval {maxval}"
        raise ImageFormatError(msg)
    body = data[match.end() :]
    expected = width * height * 3
    if len(body) < expected:
        msg = f"PPM pixel data truncated: expected {expected} bytes, got {len(body)}"
        raise ImageFormatError(msg)
    pixels = np.frombuffer(body[:expected], dtype=np.uint8).reshape(height, width, 3)
    return ImageBuffer.from_rgb(torch.from_numpy(pixels.astype(np.float64) / MAXVAL))


def read_ppm(path: Path) -> ImageBuffer:
    """Read a binary PPM file."""
    return decode_ppm(path.read_bytes())


def write_png(path: Path, image: ImageBuffer) -> None:
    """Write ``image`` as PNG through Pillow."""
    from PIL import Image

    Image.fromarray(quantize(image)).save(path)


def side_by_side(left: ImageBuffer, right: ImageBuffer) -> ImageBuffer:
    """Place two equally tall images next to each other.

    Raises:
        ValueError: The heights differ.

    """
    if left.height != right.height:
        msg = f"image heights differ: {left.height} != {right.height}"
        raise ValueError(msg)
    return ImageBuffer(
        rgb=torch.cat([left.rgb.detach(), right.rgb.detach()], dim=1),
        alpha=torch.cat([left.alpha.detach(), right.alpha.detach()], dim=1),
    )
