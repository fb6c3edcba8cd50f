"""Deterministic SVG pictures of the hybrid line, a hybrid disc and the spectrum star.

All coordinates are printed with three decimals and elements are emitted
in a fixed order, so the same arguments always give byte-identical files.

Layout constants:

* trivline: the spine eta_{T,r}, r in [0, inf), runs horizontally with the
  Gauss point eta_{T,1} at the centre.  Branch k of N (the k-th irreducible
  other than T) leaves the Gauss point at angle 180 (k + 1) / (N + 1)
  degrees, measured from the negative horizontal axis.  Its length is
  BRANCH_LENGTH for degree one and grows by a quarter per extra degree.
* disc: the unwrapped cylinder.  The horizontal axis is the signed radius
  rho in [-RHO_MAX, RHO_MAX], the vertical axis is the fibre coordinate s
  (bottom s = 0, the trivially valued branch; top s = 1, the fibre
  lambda = delta).  Each cell is shaded by region_member of its centre;
  C and E have no interior, so they appear as the boundary lines.
* spectrum: the trivial norm sits at the centre; one segment per prime
  below the bound is placed at equal angles on the lower 270 degrees, and
  the Archimedean segment points straight up.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from xml.sax.saxutils import escape

from .core_points import ArchPoint, TrivPoint, enumerate_irreducibles
from .dedekind import RINGS, gaussian_primes, rational_primes
from .discs import DiscSpec, RegionTag, g_delta_log_modulus, region_member
from .errors import InputError
from .polynomial import QI_FIELD, FieldSpec, Polynomial
from .scalars import format_scalar

SUBJECTS = ("trivline", "disc", "spectrumZ")
BRANCH_LENGTH = 0.32
SPINE_HALF = 0.42
RHO_MAX = 1.25
DISC_CELLS = (40, 16)
SPECTRUM_BOUND = 30
REGION_FILL = {"E": "#1f4e79", "C": "#2e75b6", "D": "#9dc3e6", "out": "#f2f2f2"}


def _f(x: float) -> str:
    s = f"{x:.3f}"
    return "0.000" if s == "-0.000" else s


@dataclass(frozen=True)
class RenderSpec:
    subject: str
    n: int = 5
    size: int = 480
    output: str | None = None
    delta: float = 1.0
    ring: str = "Z"
    bound: int = SPECTRUM_BOUND
    field: FieldSpec = QI_FIELD

    def __post_init__(self):
        if self.subject not in SUBJECTS:
            raise InputError(f"unknown render subject {self.subject!r}", field="subject")
        if self.n < 1:
            raise InputError("branch count must be at least 1", field="n")
        if self.size < 64:
            raise InputError("image size must be at least 64", field="size")
        if not (0 < self.delta <= 1):
            raise InputError("delta must lie in (0, 1]", field="delta")
        if self.ring not in RINGS:
            raise InputError(f"unknown ring {self.ring!r}", field="ring")
        if self.bound < 2:
            raise InputError("prime bound must be at least 2", field="bound")


class _Canvas:
    """Unit square [-0.5, 0.5]^2 mapped onto a size x size pixel box (y up)."""

    def __init__(self, size: int, title: str):
        self.size = size
        self.parts = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
            f'viewBox="0 0 {size} {size}">',
            f"<title>{escape(title)}</title>",
            f'<rect x="0" y="0" width="{size}" height="{size}" fill="#ffffff"/>',
        ]

    def xy(self, x: float, y: float) -> tuple[str, str]:
        return _f((x + 0.5) * self.size), _f((0.5 - y) * self.size)

    def path(self, pts, cls: str, stroke: str = "#000000", width: float = 1.5, dash: bool = False):
        d = " ".join(("M" if i == 0 else "L") + " ".join(self.xy(*p)) for i, p in enumerate(pts))
        extra = ' stroke-dasharray="4 3"' if dash else ""
        self.parts.append(f'<path class="{cls}" d="{d}" fill="none" stroke="{stroke}" '
                          f'stroke-width="{_f(width)}"{extra}/>')

    def dot(self, x: float, y: float, r: float = 3.0, fill: str = "#000000"):
        cx, cy = self.xy(x, y)
        self.parts.append(f'<circle cx="{cx}" cy="{cy}" r="{_f(r)}" fill="{fill}"/>')

    def text(self, x: float, y: float, label: str, size: int = 11, anchor: str = "middle"):
        tx, ty = self.xy(x, y)
        self.parts.append(f'<text x="{tx}" y="{ty}" font-family="sans-serif" font-size="{size}" '
                          f'text-anchor="{anchor}">{escape(label)}</text>')

    def rect(self, x0: float, y0: float, x1: float, y1: float, fill: str, cls: str):
        ax, ay = self.xy(x0, y1)
        w, h = _f((x1 - x0) * self.size), _f((y1 - y0) * self.size)
        self.parts.append(f'<rect class="{cls}" x="{ax}" y="{ay}" width="{w}" height="{h}" '
                          f'fill="{fill}"/>')

    def finish(self) -> str:
        return "\n".join(self.parts + ["</svg>"]) + "\n"


# ---------------------------------------------------------------- trivline

def render_trivline(spec: RenderSpec) -> str:
    """Spine plus the first N non-T irreducibles as branches off the Gauss point."""
    cv = _Canvas(spec.size, f"trivially valued line, {spec.n} branches")
    field = spec.field
    T = Polynomial.T(field)
    branches = [p for p in enumerate_irreducibles(field, spec.n + 1) if p != T][: spec.n]
    y0 = -0.22
    cv.path([(-SPINE_HALF, y0), (SPINE_HALF, y0)], "spine", width=2.5)
    cv.text(-SPINE_HALF, y0 - 0.04, "eta(T, 0)", anchor="start")
    cv.text(SPINE_HALF, y0 - 0.04, "eta(T, inf)", anchor="end")
    for k, p in enumerate(branches):
        ang = math.pi * (k + 1) / (spec.n + 1)
        length = BRANCH_LENGTH * (1 + 0.25 * (p.degree - 1))
        end = (-length * math.cos(ang), y0 + length * math.sin(ang))
        cv.path([(0.0, y0), end], "branch", stroke="#2e75b6")
        cv.dot(*end, r=2.5, fill="#2e75b6")
        cv.text(end[0], end[1] + 0.02, f"eta({p.pretty()}, 0)", size=10)
    cv.dot(0.0, y0, r=4.0)
    cv.text(0.0, y0 - 0.05, "eta(T, 1)")
    return cv.finish()


# -------------------------------------------------------------------- disc

def _disc_sample(rho: float, s: float, delta: float, field: FieldSpec):
    """g_delta extended past |w| = 1 so that the picture shows the outside as well."""
    if s == 0:
        return TrivPoint(Polynomial.T(field), Fraction(abs(rho)).limit_denominator(10 ** 6))
    t = delta * s
    if rho == 0:
        return ArchPoint(0j, t, field)
    phase = complex(math.copysign(1.0, rho))
    return ArchPoint.polar(g_delta_log_modulus(abs(rho), s, delta), phase, t, field)


def classify_disc_cell(rho: float, s: float, delta: float, field: FieldSpec = QI_FIELD,
                       tol: float = 1e-9) -> str:
    x = _disc_sample(rho, s, delta, field)
    dspec = DiscSpec(Polynomial.T(field), delta)
    for tag in (RegionTag.E, RegionTag.C, RegionTag.D):
        if region_member(x, dspec, tag, tol):
            return tag.value
    return "out"


def render_disc(spec: RenderSpec) -> str:
    cv = _Canvas(spec.size, f"hybrid disc D(T, {spec.delta:g}) in cylinder coordinates")
    nx, ny = DISC_CELLS
    left, right, bottom, top = -0.42, 0.42, -0.3, 0.3
    for j in range(ny):
        for i in range(nx):
            rho = -RHO_MAX + (i + 0.5) * 2 * RHO_MAX / nx
            s = (j + 0.5) / ny
            tag = classify_disc_cell(rho, s, spec.delta, spec.field)
            x0 = left + (right - left) * i / nx
            y0 = bottom + (top - bottom) * j / ny
            cv.rect(x0, y0, x0 + (right - left) / nx, y0 + (top - bottom) / ny,
                    REGION_FILL[tag], f"cell {tag}")
    for sign in (-1, 1):
        x = sign * (right - left) / 2 / RHO_MAX
        cv.path([(x, bottom), (x, top)], "boundary", stroke="#1f4e79", width=2.0)
    cv.path([(left, bottom), (right, bottom)], "trivial", stroke="#000000", width=2.5)
    cv.path([(left, top), (right, top)], "fibre", stroke="#1f4e79", width=1.0, dash=True)
    cv.text(0.0, bottom - 0.05, "s = 0: eta(T, |w|)")
    cv.text(0.0, top + 0.03, f"s = 1: lambda = {spec.delta:g}")
    cv.text(right, bottom - 0.1, "shaded: cells in D; solid lines: C (|w| = 1); dashed: lambda = delta",
            size=10, anchor="end")
    return cv.finish()


# ---------------------------------------------------------------- spectrum

def spectrum_primes(ring: str, bound: int) -> list:
    if ring == "Z":
        return [p for p in rational_primes(bound) if p < bound]
    return gaussian_primes(bound)


def gaussian_label(z) -> str:
    return str(z.re.numerator) if not z.im else format_scalar(z)


def render_spectrum(spec: RenderSpec) -> str:
    primes = spectrum_primes(spec.ring, spec.bound)
    cv = _Canvas(spec.size, f"spectrum of {spec.ring}, primes below {spec.bound}")
    m = len(primes)
    for k, p in enumerate(primes):
        ang = math.radians(-225 + 270 * (k + 0.5) / m)
        end = (0.36 * math.cos(ang), 0.36 * math.sin(ang))
        cv.path([(0.0, 0.0), end], "prime", stroke="#2e75b6")
        label = str(p) if spec.ring == "Z" else gaussian_label(p)
        cv.text(end[0] * 1.12, end[1] * 1.12 - 0.01, label, size=9)
    cv.path([(0.0, 0.0), (0.0, 0.4)], "arch", stroke="#c00000", width=2.5)
    cv.text(0.0, 0.43, "|.|_inf^rho")
    cv.dot(0.0, 0.0, r=4.0)
    cv.text(0.03, -0.03, "|.|_0", anchor="start")
    return cv.finish()


def render(spec: RenderSpec) -> str:
    if spec.subject == "trivline":
        return render_trivline(spec)
    if spec.subject == "disc":
        return render_disc(spec)
    return render_spectrum(spec)


def write_svg(spec: RenderSpec, path: str | None = None) -> str:
    """Render and write; returns the SVG text.  OSError propagates (exit 3 in the CLI)."""
    svg = render(spec)
    target = path or spec.output
    if target:
        with open(target, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(svg)
    return svg


__all__ = ["RenderSpec", "SUBJECTS", "render", "render_trivline", "render_disc",
           "render_spectrum", "write_svg", "gaussian_label", "classify_disc_cell", "spectrum_primes"]
