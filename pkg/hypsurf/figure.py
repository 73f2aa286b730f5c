# Copyright 2024 The hypsurf Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""SVG pictures of isometric circles, the maximal horodisk and short axes.

Drawing needs cairocffi, installed with the figure extra.
"""

import dataclasses
import math
import pathlib

import numpy as np
import pydantic

from hypsurf import core, errors, fuchsian, logging

"""Largest trace of the closed geodesics whose axes are drawn."""
AXIS_TRACE_BOUND = 20.0

"""Longest representative of the closed geodesics whose axes are drawn."""
AXIS_DEPTH = 3

"""Translates smaller than this euclidean diameter are not drawn."""
MIN_DIAMETER = 1e-3


@dataclasses.dataclass(frozen=True)
class Scene:
    """What a figure shows, in half-plane coordinates."""

    isometric_circles: list[core.Circle]
    horodisks: list[core.Horodisk]
    axes: list[core.Geodesic]
    cusp_height: float | None
    xlim: tuple[float, float]
    ylim: tuple[float, float]


class FigureSummary(pydantic.BaseModel):
    """What was written to an SVG file."""

    path: str
    isometric_circles: int
    horodisks: int
    axes: int
    cusp_height: float | None


def scene(group: fuchsian.FuchsianGroup, depth: int = 4) -> Scene:
    """Collect the circles, horodisks and axes of a group.

    Isometric circles are those of the generators and their inverses that
    do not fix ∞. When the group is cusp-normalized, the maximal horodisk at
    ∞ is drawn with its translates tangent to it.
    """
    circles = []
    for g in group.generators:
        for m in (g, g.inverse()):
            if not m.fixes_infinity():
                circles.append(core.isometric_circle(m))

    horodisks: list[core.Horodisk] = []
    height = None
    if group.cusp is not None and group.cusp.normalized:
        mc = fuchsian.maximal_cusp(group, depth)
        height = mc.height
        top = core.Horodisk(core.INFINITY, height)
        horodisks.append(top)
        b = fuchsian.word_ball(group, depth)
        rows = np.flatnonzero(np.abs(np.abs(b.matrices[:, 1, 0]) - mc.min_c) <= 1e-9 * mc.min_c)
        seen = set()
        for i in rows:
            image = core.horodisk_image(b.element(int(i)), top)
            key = round(image.image.base.value, 9)
            if image.contact == core.Contact.TANGENT and image.image.size >= MIN_DIAMETER and key not in seen:
                seen.add(key)
                horodisks.append(image.image)

    axes = [
        core.axis(fuchsian.evaluate(group, c.rep))
        for c in fuchsian.conjugacy_classes(group, AXIS_TRACE_BOUND, min(depth, AXIS_DEPTH))
    ]

    xs = [c.center - c.radius for c in circles] + [c.center + c.radius for c in circles]
    xs += [h.base.value for h in horodisks if not h.base.is_infinite]
    if group.cusp is not None and group.cusp.normalized:
        xs += [-group.cusp.width / 2, group.cusp.width / 2]
    x0, x1 = (min(xs), max(xs)) if xs else (-2.0, 2.0)
    pad = 0.1 * (x1 - x0 or 1.0)
    x0, x1 = x0 - pad, x1 + pad
    y1 = max((x1 - x0) / 2, 1.5 * height if height else 0.0)
    return Scene(
        isometric_circles=circles,
        horodisks=horodisks,
        axes=axes,
        cusp_height=height,
        xlim=(x0, x1),
        ylim=(0.0, y1),
    )


def _cairo():
    try:
        import cairocffi  # noqa: PLC0415  # Optional, only needed for drawing.
    except (ImportError, OSError) as e:
        raise errors.ConfigError("figure", "drawing needs cairocffi; install hypsurf[figure]") from e
    return cairocffi


def render(s: Scene, path: pathlib.Path, width: int = 800) -> FigureSummary:
    """Draw a scene to an SVG file.

    Raises:
        ConfigError if cairocffi is not available.
    """
    cairo = _cairo()
    xmin, xmax = s.xlim
    ymin, ymax = s.ylim
    height = max(1, round(width * (ymax - ymin) / (xmax - xmin)))
    unit = (xmax - xmin) / width

    surface = cairo.SVGSurface(str(path), width, height)
    ctx = cairo.Context(surface)
    ctx.scale(width / (xmax - xmin), height / (ymin - ymax))
    ctx.translate(-xmin, -ymax)
    ctx.set_source_rgb(1, 1, 1)
    ctx.paint()

    ctx.set_line_width(2 * unit)
    ctx.set_source_rgb(0, 0, 0)
    ctx.move_to(xmin, 0)
    ctx.line_to(xmax, 0)
    ctx.stroke()

    for h in s.horodisks:
        if h.base.is_infinite:
            ctx.rectangle(xmin, h.size, xmax - xmin, ymax - h.size)
        else:
            ctx.arc(h.base.value, h.size / 2, h.size / 2, 0, 2 * math.pi)
        ctx.set_source_rgba(0.2, 0.4, 0.9, 0.25)
        ctx.fill_preserve()
        ctx.set_source_rgb(0.2, 0.4, 0.9)
        ctx.set_line_width(unit)
        ctx.stroke()

    ctx.set_source_rgb(0.8, 0.2, 0.2)
    ctx.set_line_width(1.5 * unit)
    for c in s.isometric_circles:
        ctx.new_sub_path()
        ctx.arc(c.center, 0, c.radius, 0, math.pi)
        ctx.stroke()

    ctx.set_source_rgb(0.1, 0.6, 0.2)
    ctx.set_line_width(unit)
    for g in s.axes:
        ctx.new_sub_path()
        if g.is_vertical:
            ctx.move_to(g.foot, 0)
            ctx.line_to(g.foot, ymax)
        else:
            ctx.arc(g.center, 0, g.radius, 0, math.pi)
        ctx.stroke()

    surface.finish()
    logging.get_logger().debug("wrote figure", path=str(path), width=width, height=height)
    return FigureSummary(
        path=str(path),
        isometric_circles=len(s.isometric_circles),
        horodisks=len(s.horodisks),
        axes=len(s.axes),
        cusp_height=s.cusp_height,
    )
