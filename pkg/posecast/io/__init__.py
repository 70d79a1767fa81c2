"""File formats: images, occupancy grids and the JSON documents of the CLI."""

from ..renderer import Camera
from ..template import PoseDocument, TemplateDocument
from ._grid import write_grid
from ._image import (
    ImageFormatError,
    decode_ppm,
    encode_ppm,
    quantize,
    read_ppm,
    side_by_side,
    write_png,
    write_ppm,
)

__all__ = [
    "Camera",
    "ImageFormatError",
    "PoseDocument",
    "TemplateDocument",
    "decode_ppm",
    "encode_ppm",
    "quantize",
    "read_ppm",
    "side_by_side",
    "write_grid",
    "write_png",
    "write_ppm",
]
