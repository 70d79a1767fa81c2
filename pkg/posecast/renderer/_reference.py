"""Straight-line scalar renderer used to produce and cross-check golden images.

Shares no code with :mod:`posecast.renderer._render`: rays, the Gaussian
quadratic form and compositing are all re-derived here with :mod:`math` and
plain floats, one pixel and one sample at a time.

"""

from __future__ import annotations

import math
from typing import TYPE_CHECKING

import torch

from ..geometry import DTYPE
from ._render import ImageBuffer

if TYPE_CHECKING:
    from ..template import TransformedTemplate
    from ._camera import Camera, RenderSettings

Vector = tuple[float, float, float]


def _sub(a: Vector, b: Vector) -> Vector:
    return (a[0] - b[0], a[1] - b[1], a[2] - b[2])


def _cross(a: Vector, b: Vector) -> Vector:
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def _unit(a: Vector) -> Vector:
    length = math.sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2])
    return (a[0] / length, a[1] / length, a[2] / length)


def _inverse(m: list[list[float]]) -> list[list[float]]:
    """Inverse of a 3x3 matrix by cofactors."""
    (a, b, c), (d, e, f), (g, h, i) = m
    det = a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    return [
        [(e * i - f * h) / det, (c * h - b * i) / det, (b * f - c * e) / det],
        [(f * g - d * i) / det, (a * i - c * g) / det, (c * d - a * f) / det],
        [(d * h - e * g) / det, (b * g - a * h) / det, (a * e - b * d) / det],
    ]


def render_reference(tt: TransformedTemplate, cam: Camera, settings: RenderSettings) -> ImageBuffer:
    """Render pixel by pixel with the emission-absorption model.

    Slow; meant for small images in tests and for regenerating golden files.

    """
    parts = [
        (
            tuple(part.mean.tolist()),
            _inverse(part.covariance.tolist()),
            tuple(part.base_colour.tolist()),
        )
        for part in tt.parts
    ]
    origin: Vector = cam.position
    forward = _unit(_sub(cam.look_at, cam.position))
    right = _unit(_cross(forward, cam.up))
    up = _cross(right, forward)
    half_h = math.tan(math.radians(cam.fov_deg) / 2.0)
    half_w = half_h * settings.width / settings.height
    samples = settings.samples_per_ray
    step = (cam.far - cam.near) / (samples - 1)
    bg = settings.background_colour

    rgb = [[(0.0, 0.0, 0.0)] * settings.width for _ in range(settings.height)]
    alpha = [[0.0] * settings.width for _ in range(settings.height)]
    for row in range(settings.height):
        v = (1.0 - (row + 0.5) / settings.height * 2.0) * half_h
        for col in range(settings.width):
            u = ((col + 0.5) / settings.width * 2.0 - 1.0) * half_w
            direction = _unit(
                (
                    forward[0] + u * right[0] + v * up[0],
                    forward[1] + u * right[1] + v * up[1],
                    forward[2] + u * right[2] + v * up[2],
                )
            )
            transmitted = 1.0
            acc = [0.0, 0.0, 0.0]
            weight_sum = 0.0
            for j in range(samples):
                t = cam.near + j * step
                p = (origin[0] + t * direction[0], origin[1] + t * direction[1], origin[2] + t * direction[2])
                occ = 0.0
                col_sum = [0.0, 0.0, 0.0]
                for mean, prec, colour in parts:
                    d = _sub(p, mean)
                    q = 0.0
                    for a in range(3):
                        for b in range(3):
                            q += d[a] * prec[a][b] * d[b]
                    f_k = math.exp(-0.5 * q)
                    occ += f_k
                    for ch in range(3):
                        col_sum[ch] += f_k * colour[ch]
                occ = min(occ, 1.0)
                weight = occ * transmitted
                for ch in range(3):
                    acc[ch] += weight * min(col_sum[ch], 1.0)
                weight_sum += weight
                transmitted *= 1.0 - occ
            rgb[row][col] = tuple(acc[ch] + (1.0 - weight_sum) * bg[ch] for ch in range(3))
            alpha[row][col] = weight_sum
    return ImageBuffer(rgb=torch.tensor(rgb, dtype=DTYPE), alpha=torch.tensor(alpha, dtype=DTYPE))
