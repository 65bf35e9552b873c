"""Primitives on the unit circle: points, boundary measures, kernels.

Measures on the circle are represented as a finite list of atoms plus a
density sampled on the uniform grid theta_k = 2*pi*k/N, interpreted
against the normalized Lebesgue measure m (so m(circle) = 1 and the
density integral is the plain sample mean).  Integrals against the
density use the periodic trapezoid rule, which is spectrally accurate
for the smooth integrands that occur here as long as the evaluation
point stays away from the boundary; Poisson probes are therefore kept
at radius <= 0.95.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

TWO_PI = 2.0 * math.pi

#: default number of density samples on the circle
DEFAULT_GRID = 1024

#: atoms closer than this (in radians) are considered the same location
ATOM_MERGE_TOL = 1e-12


def _canonical_angle(theta: float) -> float:
    if not math.isfinite(theta):
        raise ValueError(f"angle must be finite, got {theta!r}")
    theta = math.fmod(theta, TWO_PI)
    if theta < 0.0:
        theta += TWO_PI
    if theta >= TWO_PI:  # fmod rounding at the seam
        theta = 0.0
    return theta


@dataclass(frozen=True)
class CirclePoint:
    """A point e^{i*angle} of the unit circle, angle canonicalized to [0, 2pi)."""

    angle: float

    def __post_init__(self):
        object.__setattr__(self, "angle", _canonical_angle(float(self.angle)))

    @classmethod
    def from_complex(cls, z: complex) -> "CirclePoint":
        z = complex(z)
        if abs(abs(z) - 1.0) > 1e-9:
            raise ValueError(f"not a unimodular value: {z!r}")
        return cls(math.atan2(z.imag, z.real))

    @property
    def value(self) -> complex:
        return complex(math.cos(self.angle), math.sin(self.angle))

    def separation(self, other: "CirclePoint") -> float:
        """Angular distance on the circle, in [0, pi]."""
        d = abs(self.angle - other.angle) % TWO_PI
        return min(d, TWO_PI - d)


@dataclass(eq=False)
class SignedBoundaryMeasure:
    """Atoms plus a sampled density against normalized Lebesgue measure.

    ``density[k]`` is the value at angle 2*pi*k/grid_size.  Total mass is
    sum of atom masses plus the density sample mean.
    """

    atoms: list = field(default_factory=list)  # list of (CirclePoint, float)
    density: np.ndarray = None
    grid_size: int = DEFAULT_GRID

    def __post_init__(self):
        if self.density is None:
            self.density = np.zeros(self.grid_size)
        self.density = np.asarray(self.density, dtype=float)
        if self.density.ndim != 1 or len(self.density) != self.grid_size:
            raise ValueError("density length must equal grid_size")
        if not np.all(np.isfinite(self.density)):
            raise ValueError("density samples must be finite")
        self.atoms = [(loc, float(mass)) for loc, mass in self.atoms]
        for i, (loc, mass) in enumerate(self.atoms):
            if not math.isfinite(mass):
                raise ValueError("atom masses must be finite")
            for loc2, _ in self.atoms[i + 1:]:
                if loc.separation(loc2) <= ATOM_MERGE_TOL:
                    raise ValueError(f"duplicate atom location at angle {loc.angle}")

    # -- basic queries ----------------------------------------------------

    def total_mass(self) -> float:
        mass = sum(m for _, m in self.atoms)
        if len(self.density):
            mass += float(self.density.mean())
        return mass

    def atom_mass_at(self, point: CirclePoint, tol: float = ATOM_MERGE_TOL) -> float:
        for loc, mass in self.atoms:
            if loc.separation(point) <= tol:
                return mass
        return 0.0

    def is_purely_atomic(self, tol: float = 0.0) -> bool:
        return bool(np.all(np.abs(self.density) <= tol))

    def grid_angles(self) -> np.ndarray:
        return TWO_PI * np.arange(self.grid_size) / self.grid_size

    def grid_points(self) -> np.ndarray:
        return np.exp(1j * self.grid_angles())

    # -- serialization -----------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "atoms": [{"angle": loc.angle, "mass": mass} for loc, mass in self.atoms],
            "density": [float(d) for d in self.density],
            "grid_size": self.grid_size,
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, data: dict) -> "SignedBoundaryMeasure":
        atoms = [(CirclePoint(a["angle"]), float(a["mass"])) for a in data.get("atoms", [])]
        density = np.asarray(data.get("density", []), dtype=float)
        grid_size = int(data.get("grid_size", len(density) or DEFAULT_GRID))
        if len(density) == 0:
            density = np.zeros(grid_size)
        return cls(atoms=atoms, density=density, grid_size=grid_size)


class BoundaryMeasure(SignedBoundaryMeasure):
    """Nonnegative measure: atom masses >= 0, density samples >= -1e-12."""

    def __post_init__(self):
        super().__post_init__()
        for loc, mass in self.atoms:
            if mass < 0.0:
                raise ValueError(f"negative atom mass {mass} at angle {loc.angle}")
        if np.any(self.density < -1e-12):
            raise ValueError("density has samples below -1e-12")

    @classmethod
    def point_mass(cls, point: CirclePoint, mass: float = 1.0,
                   grid_size: int = DEFAULT_GRID) -> "BoundaryMeasure":
        return cls(atoms=[(point, mass)], density=np.zeros(grid_size), grid_size=grid_size)

    @classmethod
    def lebesgue(cls, grid_size: int = DEFAULT_GRID) -> "BoundaryMeasure":
        """The normalized Lebesgue measure m (density identically 1)."""
        return cls(atoms=[], density=np.ones(grid_size), grid_size=grid_size)

    @classmethod
    def zero(cls, grid_size: int = DEFAULT_GRID) -> "BoundaryMeasure":
        return cls(atoms=[], density=np.zeros(grid_size), grid_size=grid_size)


def _require_interior(z):
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(z) >= 1.0):
        raise ValueError("evaluation point must lie strictly inside the unit disc")
    return z


def poisson_kernel(zeta: CirclePoint, z):
    """P(zeta, z) = (1 - |z|^2) / |z - zeta|^2 for |z| < 1.

    ``z`` may be a complex scalar or an ndarray of interior points.
    """
    z = _require_interior(z)
    w = zeta.value
    out = (1.0 - np.abs(z) ** 2) / np.abs(z - w) ** 2
    return float(out) if out.ndim == 0 else out


def herglotz_kernel(zeta: CirclePoint, z):
    """(zeta + z) / (zeta - z); its real part is the Poisson kernel."""
    z = _require_interior(z)
    w = zeta.value
    out = (w + z) / (w - z)
    return complex(out) if out.ndim == 0 else out


def _herglotz_transform(mu: SignedBoundaryMeasure, z: np.ndarray) -> np.ndarray:
    """Integral of (zeta+z)/(zeta-z) d(mu), trapezoid rule on the density."""
    out = np.zeros(z.shape, dtype=complex)
    for loc, mass in mu.atoms:
        w = loc.value
        out += mass * (w + z) / (w - z)
    if len(mu.density) and np.any(mu.density):
        zeta = mu.grid_points()
        # chunk over the grid to keep the (N, M) temporaries modest
        step = max(1, (1 << 22) // max(1, z.size))
        for start in range(0, mu.grid_size, step):
            zk = zeta[start:start + step, None]
            dk = mu.density[start:start + step, None]
            out += ((zk + z[None, :]) / (zk - z[None, :]) * dk).sum(axis=0) / mu.grid_size
    return out


def poisson_integral(mu: SignedBoundaryMeasure, z):
    """Poisson integral of ``mu`` at interior point(s) ``z``.

    For mu = m this is identically 1 (mean value property); for a point
    mass it reduces to the Poisson kernel.
    """
    z = _require_interior(z)
    scalar = z.ndim == 0
    out = _herglotz_transform(mu, np.atleast_1d(z)).real
    return float(out[0]) if scalar else out


def herglotz_integral(mu: BoundaryMeasure, imag_const: float, z):
    """Herglotz integral of ``mu`` plus i*imag_const.

    The real part is >= 0 whenever mu >= 0, which makes the result a
    Herglotz function of z.
    """
    z = _require_interior(z)
    scalar = z.ndim == 0
    out = _herglotz_transform(mu, np.atleast_1d(z)) + 1j * imag_const
    return complex(out[0]) if scalar else out


def measure_linear_combine(a: float, mu1: SignedBoundaryMeasure,
                           b: float, mu2: SignedBoundaryMeasure) -> SignedBoundaryMeasure:
    """The measure a*mu1 + b*mu2.

    Atoms at the same location (within ATOM_MERGE_TOL radians) are merged;
    densities combine pointwise.  Grids must agree unless one measure is
    purely atomic, in which case the other grid is adopted.
    """
    if mu1.grid_size == mu2.grid_size:
        grid = mu1.grid_size
        density = a * mu1.density + b * mu2.density
    elif mu2.is_purely_atomic():
        grid = mu1.grid_size
        density = a * mu1.density
    elif mu1.is_purely_atomic():
        grid = mu2.grid_size
        density = b * mu2.density
    else:
        raise ValueError("grid sizes differ and neither measure is purely atomic")

    merged: list = []
    for coeff, mu in ((a, mu1), (b, mu2)):
        for loc, mass in mu.atoms:
            for i, (loc2, mass2) in enumerate(merged):
                if loc.separation(loc2) <= ATOM_MERGE_TOL:
                    merged[i] = (loc2, mass2 + coeff * mass)
                    break
            else:
                merged.append((loc, coeff * mass))
    return SignedBoundaryMeasure(atoms=merged, density=density, grid_size=grid)


@dataclass(frozen=True)
class TestFunctionFamily:
    """Test functions for weak* comparison of boundary measures.

    Pairs Poisson kernels at interior probe points with Fourier modes
    e^{i k theta} for |k| <= fourier_degree.  Poisson kernels separate
    measures (their span is dense in C of the circle), and the low
    Fourier modes catch mass and oscillation differences directly.
    """

    poisson_probes: tuple = ()
    fourier_degree: int = 16

    def __post_init__(self):
        probes = tuple(complex(p) for p in self.poisson_probes)
        if any(abs(p) > 0.95 for p in probes):
            raise ValueError("Poisson probes must satisfy |z| <= 0.95")
        if self.fourier_degree < 0:
            raise ValueError("fourier_degree must be >= 0")
        object.__setattr__(self, "poisson_probes", probes)

    @classmethod
    def default(cls) -> "TestFunctionFamily":
        probes = [r * np.exp(2j * math.pi * j / 8)
                  for r in (0.5, 0.8, 0.95) for j in range(8)]
        return cls(poisson_probes=tuple(probes), fourier_degree=16)

    def size(self) -> int:
        return len(self.poisson_probes) + 2 * self.fourier_degree + 1


def _fourier_moment(mu: SignedBoundaryMeasure, k: int) -> complex:
    """Integral of e^{i k theta} d(mu)."""
    out = 0.0 + 0.0j
    for loc, mass in mu.atoms:
        out += mass * np.exp(1j * k * loc.angle)
    if len(mu.density):
        out += complex(np.mean(mu.density * np.exp(1j * k * mu.grid_angles())))
    return out


def weakstar_distance(mu1: SignedBoundaryMeasure, mu2: SignedBoundaryMeasure,
                      family: TestFunctionFamily) -> float:
    """Max over the family of |integral f d(mu1) - integral f d(mu2)|.

    Symmetric and zero for identical measures; on a fixed family it is a
    seminorm of mu1 - mu2, hence satisfies the triangle inequality.
    """
    if family.size() == 0:
        raise ValueError("test function family is empty")
    worst = 0.0
    if family.poisson_probes:
        probes = np.asarray(family.poisson_probes, dtype=complex)
        p1 = poisson_integral(mu1, probes)
        p2 = poisson_integral(mu2, probes)
        worst = float(np.max(np.abs(p1 - p2)))
    for k in range(0, family.fourier_degree + 1):
        diff = abs(_fourier_moment(mu1, k) - _fourier_moment(mu2, k))
        if diff > worst:
            worst = diff
    return worst


def pseudo_hyperbolic_distance(z: complex, w: complex) -> float:
    """|z - w| / |1 - conj(w) z|; contracted by every holomorphic self-map."""
    z, w = complex(z), complex(w)
    return abs(z - w) / abs(1.0 - w.conjugate() * z)
