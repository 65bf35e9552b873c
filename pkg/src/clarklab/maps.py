"""Holomorphic self-maps of the disc in finite closed-form representations.

Variants: the identity, disc automorphisms e^{i t}(z-a)/(1-conj(a)z),
finite Blaschke products, flow maps of a semigroup generator at a fixed
time, and compositions.  All values are immutable after construction and
evaluation accepts scalars or ndarrays of interior points.

Boundary behaviour (radial limits, dilatation coefficients, angular
derivatives) is estimated by sampling along r_k = 1 - 2^{-k} and
extrapolating.  Quotient-type limits amplify evaluation noise by
1/(1-r), so their schedules stop earlier than plain radial limits; flow
maps, whose values carry ODE tolerance noise, stop earlier still.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .circle import CirclePoint, pseudo_hyperbolic_distance
from .errors import InconsistentLimitsError
from .extrapolate import radial_schedule, richardson

#: radial schedule caps: plain limits / closed-form quotients / ODE-backed quotients
RADIAL_K_MAX = 40
QUOTIENT_K_MAX = 16
FLOW_QUOTIENT_K_MAX = 13

#: dilatation estimates beyond this cap are reported as +inf
DILATATION_CAP = 1e6

_SAMPLE_GRID = np.array([r * np.exp(2j * math.pi * j / 8)
                         for r in (0.3, 0.6, 0.9) for j in range(8)])


def _require_interior(z):
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(z) >= 1.0):
        raise ValueError("evaluation point must lie strictly inside the unit disc")
    return z


class HoloMap:
    """Base class; subclasses implement _eval and _derivative on ndarrays."""

    def eval(self, z):
        """Evaluate the map at interior point(s) z."""
        z = _require_interior(z)
        scalar = z.ndim == 0
        out = self._eval(np.atleast_1d(z))
        return complex(out[0]) if scalar else out

    def derivative(self, z):
        """Analytic derivative at interior point(s) z."""
        z = _require_interior(z)
        scalar = z.ndim == 0
        out = self._derivative(np.atleast_1d(z))
        return complex(out[0]) if scalar else out

    def __call__(self, z):
        return self.eval(z)

    @property
    def is_ode_backed(self) -> bool:
        return False

    def _check_self_map(self):
        vals = self._eval(_SAMPLE_GRID)
        if np.any(np.abs(vals) >= 1.0):
            raise ValueError("map sends interior sample points outside the disc")

    def to_dict(self) -> dict:
        raise NotImplementedError


class Identity(HoloMap):
    def _eval(self, z):
        return z

    def _derivative(self, z):
        return np.ones_like(z)

    def as_blaschke(self) -> "FiniteBlaschke":
        return FiniteBlaschke(zeros=[0.0], rotation=CirclePoint(0.0))

    def to_dict(self):
        return {"type": "identity"}

    def __repr__(self):
        return "Identity()"


class Automorphism(HoloMap):
    """z -> e^{i t}(z - a)/(1 - conj(a) z) with |a| < 1."""

    def __init__(self, a: complex, rotation: CirclePoint = CirclePoint(0.0)):
        a = complex(a)
        if abs(a) > 1.0 - 1e-12:
            raise ValueError("automorphism parameter must satisfy |a| <= 1 - 1e-12")
        self.a = a
        self.rotation = rotation
        self._phase = rotation.value
        self._check_self_map()

    def _eval(self, z):
        return self._phase * (z - self.a) / (1.0 - np.conj(self.a) * z)

    def _derivative(self, z):
        return self._phase * (1.0 - abs(self.a) ** 2) / (1.0 - np.conj(self.a) * z) ** 2

    def boundary_value(self, zeta: complex) -> complex:
        """Continuous extension to |zeta| = 1 (automorphisms are rational)."""
        return self._phase * (zeta - self.a) / (1.0 - self.a.conjugate() * zeta)

    def boundary_derivative(self, zeta: complex) -> complex:
        return self._phase * (1.0 - abs(self.a) ** 2) / (1.0 - self.a.conjugate() * zeta) ** 2

    def as_blaschke(self) -> "FiniteBlaschke":
        return FiniteBlaschke(zeros=[self.a], rotation=self.rotation)

    def to_dict(self):
        return {"type": "automorphism", "a": [self.a.real, self.a.imag],
                "rotation": self.rotation.angle}

    def __repr__(self):
        return f"Automorphism(a={self.a!r}, rotation={self.rotation.angle!r})"


class FiniteBlaschke(HoloMap):
    """e^{i t} * prod (z - a_j)/(1 - conj(a_j) z); an n-to-1 inner function."""

    def __init__(self, zeros, rotation: CirclePoint = CirclePoint(0.0)):
        zeros = [complex(a) for a in zeros]
        if not zeros:
            raise ValueError("a Blaschke product needs at least one zero")
        if any(abs(a) > 1.0 - 1e-12 for a in zeros):
            raise ValueError("Blaschke zeros must satisfy |a| <= 1 - 1e-12")
        self.zeros = zeros
        self.rotation = rotation
        self._phase = rotation.value
        self._check_self_map()

    @property
    def degree(self) -> int:
        return len(self.zeros)

    def _factors(self, z):
        return [(z - a) / (1.0 - np.conj(a) * z) for a in self.zeros]

    def _eval(self, z):
        out = np.full_like(z, self._phase)
        for f in self._factors(z):
            out = out * f
        return out

    def _derivative(self, z):
        # product rule over factors; robust at the zeros themselves
        factors = self._factors(z)
        dfactors = [(1.0 - abs(a) ** 2) / (1.0 - np.conj(a) * z) ** 2 for a in self.zeros]
        out = np.zeros_like(z)
        for j in range(len(factors)):
            term = dfactors[j]
            for k, f in enumerate(factors):
                if k != j:
                    term = term * f
            out = out + term
        return self._phase * out

    def boundary_value(self, zeta: complex) -> complex:
        out = self._phase
        for a in self.zeros:
            out *= (zeta - a) / (1.0 - a.conjugate() * zeta)
        return out

    def boundary_derivative(self, zeta: complex) -> complex:
        out = 0.0 + 0.0j
        for j, aj in enumerate(self.zeros):
            term = (1.0 - abs(aj) ** 2) / (1.0 - aj.conjugate() * zeta) ** 2
            for k, ak in enumerate(self.zeros):
                if k != j:
                    term *= (zeta - ak) / (1.0 - ak.conjugate() * zeta)
            out += term
        return self._phase * out

    def as_blaschke(self) -> "FiniteBlaschke":
        return self

    def to_dict(self):
        return {"type": "blaschke",
                "zeros": [[a.real, a.imag] for a in self.zeros],
                "rotation": self.rotation.angle}

    def __repr__(self):
        return f"FiniteBlaschke(zeros={self.zeros!r}, rotation={self.rotation.angle!r})"


class FlowMap(HoloMap):
    """The time-t map of a semigroup flow, evaluated by ODE integration.

    ``generator`` must provide flow_points(t, z_array) -> ndarray; the
    Generator class of this package does.  Self-map validity is enforced
    by the integrator's escape guard rather than a construction-time
    sample sweep, which would cost two dozen ODE solves.
    """

    def __init__(self, generator, t: float):
        if t < 0.0:
            raise ValueError("flow time must be nonnegative")
        self.generator = generator
        self.t = float(t)

    @property
    def is_ode_backed(self) -> bool:
        return True

    def _eval(self, z):
        return self.generator.flow_points(self.t, z)

    def _derivative(self, z):
        # central difference with one Richardson refinement; adequate away
        # from the boundary, where the acceptance checks live
        h = 1e-6 * (1.0 - np.abs(z))
        d1 = (self._eval(z + h) - self._eval(z - h)) / (2.0 * h)
        d2 = (self._eval(z + h / 2) - self._eval(z - h / 2)) / h
        return (4.0 * d2 - d1) / 3.0

    def to_dict(self):
        return {"type": "flow", "generator": self.generator.to_dict(), "t": self.t}

    def __repr__(self):
        return f"FlowMap(generator={self.generator!r}, t={self.t!r})"


class Composition(HoloMap):
    """Composition of maps, applied right-to-left like mathematical notation."""

    def __init__(self, maps):
        maps = list(maps)
        if not maps:
            raise ValueError("composition of no maps")
        self.maps = maps

    @property
    def is_ode_backed(self) -> bool:
        return any(m.is_ode_backed for m in self.maps)

    def _eval(self, z):
        out = z
        for m in reversed(self.maps):
            out = m._eval(out)
        return out

    def _derivative(self, z):
        # chain rule accumulated right-to-left
        out = np.ones_like(z)
        w = z
        for m in reversed(self.maps):
            out = out * m._derivative(w)
            w = m._eval(w)
        return out

    def to_dict(self):
        return {"type": "composition", "maps": [m.to_dict() for m in self.maps]}

    def __repr__(self):
        return f"Composition({self.maps!r})"


def map_from_dict(data: dict) -> HoloMap:
    """Build a HoloMap from its JSON dict form (see to_dict of each variant)."""
    kind = data.get("type")
    if kind == "identity":
        return Identity()
    if kind == "automorphism":
        re, im = data["a"]
        return Automorphism(complex(re, im), CirclePoint(data.get("rotation", 0.0)))
    if kind == "blaschke":
        zeros = [complex(re, im) for re, im in data["zeros"]]
        return FiniteBlaschke(zeros, CirclePoint(data.get("rotation", 0.0)))
    if kind == "flow":
        from .generator import generator_from_dict
        return FlowMap(generator_from_dict(data["generator"]), float(data["t"]))
    if kind == "composition":
        return Composition([map_from_dict(m) for m in data["maps"]])
    raise ValueError(f"unknown map type: {kind!r}")


# -- boundary behaviour -----------------------------------------------------

@dataclass
class BoundaryPointReport:
    """Classification of one boundary point for a given map.

    ``radial_limit`` is None when the radial values do not settle;
    ``dilatation`` and ``angular_derivative`` use math.inf as the
    divergence sentinel.
    """

    point: CirclePoint
    radial_limit: complex | None
    is_contact_for: CirclePoint | None
    dilatation: float
    angular_derivative: complex | float

    def to_dict(self) -> dict:
        def enc(v):
            if v is None:
                return None
            if isinstance(v, float) and math.isinf(v):
                return "inf"
            if v == math.inf:
                return "inf"
            v = complex(v)
            return [v.real, v.imag]
        return {
            "angle": self.point.angle,
            "radial_limit": enc(self.radial_limit),
            "is_contact_for": None if self.is_contact_for is None else self.is_contact_for.angle,
            "dilatation": "inf" if math.isinf(self.dilatation) else self.dilatation,
            "angular_derivative": enc(self.angular_derivative),
        }


def _k_max_for(f: HoloMap, quotient: bool) -> int:
    if not quotient:
        return RADIAL_K_MAX
    return FLOW_QUOTIENT_K_MAX if f.is_ode_backed else QUOTIENT_K_MAX


def _radial_values(f: HoloMap, zeta: CirclePoint, k_max: int, k_min: int = 4) -> np.ndarray:
    radii = radial_schedule(k_min, k_max)
    return np.atleast_1d(f.eval(radii * zeta.value))


def radial_limit(f: HoloMap, zeta: CirclePoint, tol: float = 1e-9,
                 k_max: int | None = None):
    """Radial limit f*(zeta), or None when the radial values diverge.

    Samples f(r_k zeta) along r_k = 1 - 2^{-k} and extrapolates once the
    raw sequence is Cauchy within ``tol``.
    """
    if k_max is None:
        k_max = RADIAL_K_MAX if not f.is_ode_backed else 24
    vals = _radial_values(f, zeta, k_max)
    diffs = np.abs(np.diff(vals))
    if diffs[-1] >= tol:
        return None
    # extrapolate from the converged tail
    tail = vals[-8:] if len(vals) >= 8 else vals
    limit, _ = richardson(tail, levels=2)
    return complex(limit)


def boundary_dilatation(f: HoloMap, zeta: CirclePoint,
                        k_max: int | None = None) -> float:
    """lim_{r->1} (1 - |f(r zeta)|)/(1 - r), or math.inf past the cap.

    The quotient is the Julia quotient along the radius; at a contact
    point with finite angular derivative it converges to |f'(zeta)|, and
    it blows up at every other boundary point.
    """
    if k_max is None:
        k_max = _k_max_for(f, quotient=True)
    radii = radial_schedule(4, k_max)
    vals = np.atleast_1d(f.eval(radii * zeta.value))
    quot = (1.0 - np.abs(vals)) / (1.0 - radii)
    if quot[-1] > DILATATION_CAP or quot[-1] > 4.0 * quot[max(0, len(quot) - 5)] + 1.0:
        return math.inf
    limit, _ = richardson(quot, levels=2)
    limit = float(limit)
    if limit > DILATATION_CAP:
        return math.inf
    return limit


def _stolz_spot_check(f: HoloMap, zeta: CirclePoint, radial: complex, tol: float = 1e-6):
    """Evaluate along two rays at aperture pi/4 as a misuse guard."""
    w = zeta.value
    r = 1.0 - 2.0 ** -QUOTIENT_K_MAX
    for s in (1.0, -1.0):
        # point at distance (1-r) from zeta, rotated pi/4 off the radius
        z = w * (1.0 - (1.0 - r) * np.exp(s * 1j * math.pi / 4))
        if abs(z) >= 1.0:
            continue
        val = f.eval(z)
        if abs(val - radial) > max(64.0 * (1.0 - r) ** 0.5, 1e-3):
            raise InconsistentLimitsError(
                f"off-radius values near angle {zeta.angle} disagree with the radial limit")


def angular_derivative(f: HoloMap, zeta: CirclePoint,
                       k_max: int | None = None, tol: float = 1e-6):
    """Angular derivative at a boundary contact point, or math.inf.

    Extrapolates the difference quotient (f(r zeta) - f*(zeta))/(r zeta - zeta)
    along the radius and cross-checks against the extrapolated interior
    derivative f'(r zeta) (the two agree at regular points by the
    Julia-Wolff-Caratheodory theorem).  Disagreement beyond ``tol``
    raises InconsistentLimitsError rather than silently picking one.
    """
    target = radial_limit(f, zeta)
    if target is None or abs(abs(target) - 1.0) > 1e-7:
        return math.inf
    dil = boundary_dilatation(f, zeta, k_max=k_max)
    if math.isinf(dil):
        return math.inf
    if k_max is None:
        k_max = _k_max_for(f, quotient=True)
    radii = radial_schedule(4, k_max)
    w = zeta.value
    pts = radii * w
    vals = np.atleast_1d(f.eval(pts))
    quotients = (vals - target) / (pts - w)
    q_limit, _ = richardson(quotients, levels=2)
    derivs = np.atleast_1d(f.derivative(pts))
    d_limit, _ = richardson(derivs, levels=2)
    if abs(q_limit - d_limit) > tol:
        raise InconsistentLimitsError(
            "difference-quotient and derivative limits disagree: "
            f"{q_limit} vs {d_limit}")
    result = complex(q_limit)
    if abs(abs(result) - dil) > tol * max(1.0, dil):
        raise InconsistentLimitsError(
            f"|f'| = {abs(result)} does not match the dilatation {dil}")
    _stolz_spot_check(f, zeta, target)
    return result


# -- algebraic preimages (finite Blaschke only) ------------------------------

def _blaschke_poly_coeffs(f: FiniteBlaschke, w: complex) -> np.ndarray:
    """Coefficients (descending) of e^{it} prod(z-a_j) - w prod(1-conj(a_j)z)."""
    num = np.array([1.0 + 0.0j])
    den = np.array([1.0 + 0.0j])
    for a in f.zeros:
        num = np.convolve(num, np.array([1.0, -a]))          # (z - a)
        den = np.convolve(den, np.array([-a.conjugate(), 1.0]))  # (1 - conj(a) z)
    n = len(f.zeros)
    pad = n + 1 - len(den)
    if pad > 0:
        den = np.concatenate([np.zeros(pad, dtype=complex), den])
    return f._phase * num - w * den


def preimages(f, w: complex, polish_steps: int = 1) -> list:
    """All deg(f) solutions of f(z) = w inside the disc, with multiplicity.

    Clears denominators of the Blaschke product and solves the resulting
    degree-n polynomial via the companion matrix, then applies a Newton
    polish.  For |w| < 1 every root of a proper Blaschke preimage lies
    inside the disc; a root escaping to |z| >= 1 signals bad input.
    """
    w = complex(w)
    if abs(w) >= 1.0:
        raise ValueError("preimage target must lie inside the disc")
    f = f.as_blaschke()
    coeffs = _blaschke_poly_coeffs(f, w)
    roots = np.roots(coeffs)
    polished = []
    for z in roots:
        z = complex(z)
        for _ in range(polish_steps):
            dz = f.eval(z) - w if abs(z) < 1.0 else f.boundary_value(z) - w
            df = f.derivative(z) if abs(z) < 1.0 else f.boundary_derivative(z)
            if df != 0:
                z = z - dz / df
        polished.append(z)
    for z in polished:
        if abs(z) >= 1.0:
            raise RuntimeError(f"preimage root {z} escaped the disc; input is not "
                               "a proper Blaschke product")
        if abs(f.eval(z) - w) > 1e-10:
            raise RuntimeError(f"preimage root {z} fails residual check")
    return polished


def contact_points(f, tau: CirclePoint) -> list:
    """Boundary solutions of f(zeta) = tau with their angular derivatives.

    For a finite Blaschke product of degree n this is a degree-n
    polynomial equation whose roots are all unimodular; each solution is
    reported with the closed-form boundary derivative.
    """
    f = f.as_blaschke()
    t = tau.value
    coeffs = _blaschke_poly_coeffs(f, t)
    roots = np.roots(coeffs)
    reports = []
    for z in roots:
        z = complex(z)
        # one Newton step using boundary formulas, then snap to the circle
        df = f.boundary_derivative(z)
        if df != 0:
            z = z - (f.boundary_value(z) - t) / df
        z = z / abs(z)
        deriv = f.boundary_derivative(z)
        point = CirclePoint.from_complex(z)
        reports.append(BoundaryPointReport(
            point=point,
            radial_limit=f.boundary_value(z),
            is_contact_for=tau,
            dilatation=abs(deriv),
            angular_derivative=deriv,
        ))
    reports.sort(key=lambda r: r.point.angle)
    return reports


def schwarz_pick_defect(f: HoloMap, z: complex, w: complex) -> float:
    """rho(f(z), f(w)) - rho(z, w); <= 0 for every holomorphic self-map."""
    return pseudo_hyperbolic_distance(f.eval(z), f.eval(w)) - pseudo_hyperbolic_distance(z, w)
