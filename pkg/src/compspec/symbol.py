"""Symbols: rational self-maps of the disk and boundary-data records.

A rational symbol is given by numerator/denominator coefficient arrays
(ascending powers) and must be analytic on the closed disk, map the disk
into itself, and not be inner.  A boundary-data symbol carries explicit
second-order data at finitely many unimodular points plus a declared
Denjoy-Wolff record; it is the entry path for non-rational maps.

Boundary contact points of a rational symbol are located as unit-circle
roots of the reflection polynomial

    G(z) = N(z) * N~(z) - D(z) * D~(z),

where P~(z) = z^deg * conj(P)(1/z), found via the companion matrix and
Newton-polished on the tangency condition (the contact angle is a
critical point of |phi(e^{i theta})|^2, so polishing the derivative of
that function converges quadratically even though the contact itself is
a double root).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import polynomial as P

from .config import DEFAULT_TOL, Tolerances
from .errors import (InvalidDataError, NotInScopeError, RootFindingError)
from .mobius import SecondOrderData

__all__ = [
    "RationalSymbol", "BoundaryDataSymbol", "Symbol",
    "DenjoyWolffRecord", "TypeClass", "ClarkAtoms",
    "ContactPoint", "S2Certificate", "PointCheck",
    "contact_set", "contact_points", "second_order_data",
    "contact_order_two", "denjoy_wolff", "classify_type",
    "certify_s2", "clark_atoms", "essential_norm_sq",
    "boundary_image", "boundary_derivative",
]

DEGREE_CAP = 64
_BOUNDARY_GRID = 4096
# candidates this far inside the circle are treated as interior; boundary
# roots of the fixed-point polynomial can be off by ~sqrt(machine eps) in
# the parabolic (double-root) case, so the margin must dominate that
_INTERIOR_MARGIN = 1e-4


def _trim(coeffs) -> np.ndarray:
    c = np.atleast_1d(np.asarray(coeffs, dtype=complex))
    if c.ndim != 1 or c.size == 0:
        raise InvalidDataError("coefficient array must be 1-d and nonempty")
    if not np.all(np.isfinite(c)):
        raise InvalidDataError("coefficients must be finite")
    nz = np.nonzero(np.abs(c) > 0)[0]
    if nz.size == 0:
        return np.zeros(1, dtype=complex)
    return c[: nz[-1] + 1].copy()


def _reflect(coeffs: np.ndarray, degree: int) -> np.ndarray:
    """z^degree * conj(P)(1/z) as a polynomial of degree <= degree."""
    padded = np.zeros(degree + 1, dtype=complex)
    padded[: coeffs.size] = coeffs
    return np.conj(padded)[::-1]


@dataclass(frozen=True)
class RationalSymbol:
    """phi = N/D with D zero-free on the closed disk and |phi| <= 1."""

    num: tuple
    den: tuple
    tol: Tolerances = DEFAULT_TOL

    def __post_init__(self):
        n = _trim(self.num)
        d = _trim(self.den)
        eps = self.tol.eps
        if np.max(np.abs(d)) == 0:
            raise InvalidDataError("denominator is identically zero")
        if max(n.size, d.size) - 1 > DEGREE_CAP:
            raise InvalidDataError(f"degree exceeds cap {DEGREE_CAP}")
        if d.size > 1:
            roots = P.polyroots(d)
            bad = roots[np.abs(roots) <= 1.0 + eps]
            if bad.size:
                raise InvalidDataError(
                    f"denominator roots in the closed disk: {bad}")
        theta = 2.0 * np.pi * np.arange(_BOUNDARY_GRID) / _BOUNDARY_GRID
        z = np.exp(1j * theta)
        vals = np.abs(P.polyval(z, n) / P.polyval(z, d))
        if np.max(vals) > 1.0 + eps:
            raise InvalidDataError(
                f"sup |phi| on the circle is {np.max(vals)} > 1")
        # nonconstant: numerator of phi' must not vanish identically
        u = _trim(P.polysub(P.polymul(P.polyder(n), d),
                            P.polymul(n, P.polyder(d))))
        if np.max(np.abs(u)) <= eps * max(1.0, np.max(np.abs(n)) * max(1.0, np.max(np.abs(d)))):
            raise InvalidDataError("symbol is constant")
        deg = max(n.size, d.size) - 1
        g = _trim(P.polysub(P.polymul(n, _reflect(n, deg)),
                            P.polymul(d, _reflect(d, deg))))
        scale = max(np.max(np.abs(n)), np.max(np.abs(d))) ** 2
        if np.max(np.abs(g)) <= 1e-12 * scale:
            raise NotInScopeError("not in scope: inner symbol")
        object.__setattr__(self, "num", tuple(n))
        object.__setattr__(self, "den", tuple(d))

    # -- evaluation -------------------------------------------------
    def _nd(self):
        return np.asarray(self.num), np.asarray(self.den)

    def value(self, z: complex) -> complex:
        n, d = self._nd()
        return complex(P.polyval(z, n) / P.polyval(z, d))

    def deriv(self, z: complex) -> complex:
        n, d = self._nd()
        u = P.polysub(P.polymul(P.polyder(n), d), P.polymul(n, P.polyder(d)))
        return complex(P.polyval(z, u) / P.polyval(z, d) ** 2)

    def deriv2(self, z: complex) -> complex:
        n, d = self._nd()
        u = P.polysub(P.polymul(P.polyder(n), d), P.polymul(n, P.polyder(d)))
        v = P.polysub(P.polymul(P.polyder(u), d),
                      P.polymul(P.polymul(u, P.polyder(d)), [2.0]))
        return complex(P.polyval(z, v) / P.polyval(z, d) ** 3)


class Location(str, enum.Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"


@dataclass(frozen=True)
class DenjoyWolffRecord:
    omega: complex
    derivative: complex
    location: Location
    tol: Tolerances = DEFAULT_TOL

    def __post_init__(self):
        omega = complex(self.omega)
        deriv = complex(self.derivative)
        loc = Location(self.location)
        eps = self.tol.eps
        if loc is Location.INTERIOR:
            if abs(omega) >= 1.0 - eps:
                raise InvalidDataError("interior DW point has |omega| >= 1")
            if abs(deriv) >= 1.0:
                raise InvalidDataError("interior DW derivative not < 1")
        else:
            if abs(abs(omega) - 1.0) > eps:
                raise InvalidDataError("boundary DW point not unimodular")
            if abs(deriv.imag) > eps or not (0.0 < deriv.real <= 1.0 + eps):
                raise InvalidDataError(
                    f"boundary DW derivative {deriv} not in (0, 1]")
        object.__setattr__(self, "omega", omega)
        object.__setattr__(self, "derivative", deriv)
        object.__setattr__(self, "location", loc)


@dataclass(frozen=True)
class BoundaryDataSymbol:
    """A symbol known only through second-order data at its contact set."""

    points: tuple
    denjoy_wolff: DenjoyWolffRecord
    tol: Tolerances = DEFAULT_TOL

    def __post_init__(self):
        pts = tuple(self.points)
        if not pts:
            raise InvalidDataError("boundary-data symbol needs >= 1 point")
        for p in pts:
            if not isinstance(p, SecondOrderData):
                raise InvalidDataError("points must be SecondOrderData")
        zetas = [p.zeta for p in pts]
        for i in range(len(zetas)):
            for j in range(i + 1, len(zetas)):
                if abs(zetas[i] - zetas[j]) <= 10 * self.tol.match_tol:
                    raise InvalidDataError("contact points not distinct")
        dw = self.denjoy_wolff
        if dw.location is Location.BOUNDARY:
            match = [p for p in pts if abs(p.zeta - dw.omega) <= self.tol.match_tol]
            if not match:
                raise InvalidDataError(
                    "boundary DW point is not among the declared points")
            p = match[0]
            if abs(p.value - p.zeta) > self.tol.match_tol:
                raise InvalidDataError("declared DW point is not fixed")
            if abs(p.d1 - dw.derivative) > 1e-6 * max(1.0, abs(p.d1)):
                raise InvalidDataError(
                    "declared DW derivative disagrees with point data")
        object.__setattr__(self, "points", pts)


Symbol = RationalSymbol | BoundaryDataSymbol


class TypeClass(str, enum.Enum):
    DILATION = "dilation"
    HYPERBOLIC = "hyperbolic"
    PARABOLIC_NON_AUTOMORPHISM = "parabolic-non-automorphism"
    PARABOLIC_AUTOMORPHISM = "parabolic-automorphism"


@dataclass(frozen=True)
class ContactPoint:
    zeta: complex
    multiplicity: int


@dataclass(frozen=True)
class ClarkAtoms:
    alpha: complex
    atoms: tuple  # of (zeta, mass) pairs

    @property
    def total_mass(self) -> float:
        return float(sum(m for _, m in self.atoms))


# ----------------------------------------------------------------------
# contact set
# ----------------------------------------------------------------------

def _polish_contact(s: RationalSymbol, theta0: float) -> float:
    """Newton on d/dtheta |phi(e^{i theta})|^2 from the seed angle."""
    theta = theta0
    for _ in range(60):
        z = np.exp(1j * theta)
        f = s.value(z)
        f1 = s.deriv(z)
        f2 = s.deriv2(z)
        ft = 1j * z * f1                      # d/dtheta phi(e^{i theta})
        ftt = -z * f1 - z * z * f2
        g = 2.0 * (np.conj(f) * ft).real
        gp = 2.0 * (abs(ft) ** 2 + (np.conj(f) * ftt).real)
        if abs(gp) < 1e-14:
            break
        step = g / gp
        theta -= step
        if abs(step) < 1e-15:
            break
    return theta


def contact_points(s: Symbol) -> list[ContactPoint]:
    """Contact points with their reflection-polynomial multiplicities."""
    if isinstance(s, BoundaryDataSymbol):
        return [ContactPoint(p.zeta, 1) for p in s.points]
    n = np.asarray(s.num)
    d = np.asarray(s.den)
    deg = max(n.size, d.size) - 1
    g = _trim(P.polysub(P.polymul(n, _reflect(n, deg)),
                        P.polymul(d, _reflect(d, deg))))
    if g.size <= 1:
        return []
    roots = P.polyroots(g)
    if not np.all(np.isfinite(roots)):
        raise RootFindingError("companion-matrix root finding failed")
    unit = roots[np.abs(np.abs(roots) - 1.0) < 1e-6]
    if unit.size == 0:
        return []
    polished = []
    for r in unit:
        theta = _polish_contact(s, float(np.angle(r)))
        z = complex(np.exp(1j * theta))
        if abs(abs(s.value(z)) - 1.0) < 1e-8:
            polished.append((theta % (2.0 * np.pi), z))
    polished.sort(key=lambda t: t[0])
    clusters: list[list] = []
    for theta, z in polished:
        if clusters and abs(np.exp(1j * theta) - clusters[-1][0][1]) <= s.tol.match_tol:
            clusters[-1].append((theta, z))
        else:
            clusters.append([(theta, z)])
    # wrap-around cluster merge at theta ~ 0 / 2 pi
    if len(clusters) > 1 and abs(clusters[0][0][1] - clusters[-1][0][1]) <= s.tol.match_tol:
        clusters[0].extend(clusters.pop())
    return [ContactPoint(c[0][1], len(c)) for c in clusters]


def contact_set(s: Symbol) -> list[complex]:
    """Unimodular points where phi has finite angular derivative."""
    return [p.zeta for p in contact_points(s)]


def _match_contact(s: Symbol, zeta: complex) -> complex:
    pts = contact_set(s)
    hits = [z for z in pts if abs(z - zeta) <= s.tol.match_tol]
    if not hits:
        raise InvalidDataError(f"{zeta} is not a contact point")
    return hits[0]


# ----------------------------------------------------------------------
# second-order data and type classification
# ----------------------------------------------------------------------

def second_order_data(s: Symbol, zeta: complex) -> SecondOrderData:
    if isinstance(s, BoundaryDataSymbol):
        for p in s.points:
            if abs(p.zeta - zeta) <= s.tol.match_tol:
                return p
        raise InvalidDataError(f"{zeta} is not a declared contact point")
    z = _match_contact(s, zeta)
    value = s.value(z)
    value /= abs(value)  # unimodular up to roundoff by construction
    return SecondOrderData(z, value, s.deriv(z), s.deriv2(z), tol=s.tol)


def contact_order_two(data: SecondOrderData) -> bool:
    return data.contact_margin() > data.tol.eps


def boundary_image(s: Symbol, zeta: complex) -> complex:
    if isinstance(s, BoundaryDataSymbol):
        return second_order_data(s, zeta).value
    return s.value(zeta)


def boundary_derivative(s: Symbol, zeta: complex) -> complex:
    if isinstance(s, BoundaryDataSymbol):
        return second_order_data(s, zeta).d1
    return s.deriv(zeta)


def _iterate_check(s: RationalSymbol, omega: complex):
    z = 0.0 + 0.0j
    for _ in range(5000):
        nxt = s.value(z)
        if abs(nxt - z) < 1e-12:
            z = nxt
            break
        z = nxt
    if abs(z - omega) > 1e-3:
        raise RootFindingError(
            f"iteration from 0 reached {z}, not the DW candidate {omega}")


def denjoy_wolff(s: Symbol) -> DenjoyWolffRecord:
    """Denjoy-Wolff point, derivative, and location."""
    if isinstance(s, BoundaryDataSymbol):
        return s.denjoy_wolff
    n = np.asarray(s.num)
    d = np.asarray(s.den)
    # N(z) - z D(z) = 0
    shifted = np.concatenate([[0.0], d])
    size = max(n.size, shifted.size)
    f = np.zeros(size, dtype=complex)
    f[: n.size] += n
    f[: shifted.size] -= shifted
    f = _trim(f)
    if f.size <= 1:
        raise RootFindingError("fixed-point polynomial is degenerate")
    roots = P.polyroots(f)
    cands = roots[np.abs(roots) <= 1.0 + 1e-6]
    eps = s.tol.eps
    interior = [complex(r) for r in cands if abs(r) < 1.0 - _INTERIOR_MARGIN]
    found = []
    for r in interior:
        # Newton polish on phi(z) - z (simple root when |phi'| < 1)
        z = r
        for _ in range(50):
            step = (s.value(z) - z) / (s.deriv(z) - 1.0)
            z -= step
            if abs(step) < 1e-15:
                break
        if abs(s.deriv(z)) < 1.0 - eps and abs(z) < 1.0 - eps:
            found.append(DenjoyWolffRecord(z, s.deriv(z), Location.INTERIOR,
                                           tol=s.tol))
    if len(found) > 1:
        raise RootFindingError(
            f"multiple interior DW candidates: {[f_.omega for f_ in found]}")
    if not found:
        # snap near-circle roots to fixed contact points
        for p in contact_set(s):
            if abs(s.value(p) - p) <= s.tol.match_tol:
                dp = s.deriv(p)
                if abs(dp.imag) <= 1e-8 * max(1.0, abs(dp)) and 0 < dp.real <= 1.0 + eps:
                    found.append(DenjoyWolffRecord(
                        p, min(dp.real, 1.0), Location.BOUNDARY, tol=s.tol))
        if len(found) != 1:
            raise RootFindingError(
                "no unique root satisfies the Denjoy-Wolff characterization; "
                f"fixed-point candidates: {list(cands)}")
    rec = found[0]
    _iterate_check(s, rec.omega)
    return rec


def classify_type(dw: DenjoyWolffRecord,
                  data_at_omega: SecondOrderData | None = None) -> TypeClass:
    eps = dw.tol.eps
    if dw.location is Location.INTERIOR:
        return TypeClass.DILATION
    deriv = dw.derivative.real
    if deriv < 1.0 - eps:
        return TypeClass.HYPERBOLIC
    if data_at_omega is None:
        raise InvalidDataError(
            "parabolic classification needs second-order data at omega")
    a = dw.omega * data_at_omega.d2
    if a.real < -eps:
        raise InvalidDataError(
            f"violates parabolic-type test premise Re(omega*phi''(omega)) >= 0: {a}")
    if a.real > eps or abs(a) <= eps:
        return TypeClass.PARABOLIC_NON_AUTOMORPHISM
    # pure imaginary, nonzero; the C^{3+eps} smoothness needed for this
    # verdict cannot be checked from the data (see certificate notes)
    return TypeClass.PARABOLIC_AUTOMORPHISM


# ----------------------------------------------------------------------
# S(2) certification
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class PointCheck:
    zeta: complex
    margin: float
    order_two: bool
    multiplicity: int
    ok: bool
    note: str = ""


@dataclass(frozen=True)
class S2Certificate:
    accepted: bool
    checks: tuple
    notes: tuple = field(default_factory=tuple)

    @property
    def failing(self):
        return [c for c in self.checks if not c.ok]


def certify_s2(s: Symbol) -> S2Certificate:
    """Per-contact-point order-2 checks; rejection is a value."""
    checks = []
    notes = []
    if isinstance(s, RationalSymbol):
        notes.append("conditions (i), (ii), (iv): automatic for a rational "
                     "symbol analytic on the closed disk")
    else:
        notes.append("conditions (i), (ii), (iv): declared by the "
                     "boundary-data record")
    for cp in contact_points(s):
        data = second_order_data(s, cp.zeta)
        margin = data.contact_margin()
        order2 = margin > s.tol.eps
        mult_ok = cp.multiplicity <= 2
        note = ""
        if not mult_ok:
            note = "contact order exceeds 2"
        elif not order2:
            note = "order-2 contact inequality fails"
        checks.append(PointCheck(cp.zeta, margin, order2, cp.multiplicity,
                                 order2 and mult_ok, note))
    accepted = all(c.ok for c in checks)
    return S2Certificate(accepted, tuple(checks), tuple(notes))


# ----------------------------------------------------------------------
# Clark atoms / essential norm
# ----------------------------------------------------------------------

def clark_atoms(s: Symbol, alpha: complex) -> ClarkAtoms:
    alpha = complex(alpha)
    if abs(abs(alpha) - 1.0) > s.tol.eps:
        raise InvalidDataError("alpha must be unimodular")
    atoms = []
    for zeta in contact_set(s):
        if abs(boundary_image(s, zeta) - alpha) <= s.tol.match_tol:
            atoms.append((zeta, 1.0 / abs(boundary_derivative(s, zeta))))
    return ClarkAtoms(alpha, tuple(atoms))


def essential_norm_sq(s: Symbol) -> float:
    """sup over alpha of the pure-point singular mass; 0 means compact."""
    pts = contact_set(s)
    if not pts:
        return 0.0
    alphas: list[complex] = []
    for zeta in pts:
        a = boundary_image(s, zeta)
        if not any(abs(a - b) <= s.tol.match_tol for b in alphas):
            alphas.append(a)
    return max(clark_atoms(s, a / abs(a)).total_mass for a in alphas)
