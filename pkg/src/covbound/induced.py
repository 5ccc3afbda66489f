"""Induced representation of the Lorentz group with O(2,1) little group.

Matrices act on column four-vectors with metric eta = diag(-1, 1, 1, 1).  The
reference direction is m0 = (0, 0, 0, 1).  A bundle function is a section
psi(m, y) evaluated at frame coordinates y for sampled orbit directions m.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.linalg import expm

from .errors import ChartSingular, DomainError, OrbitCoverage
from .kinematics import ETA, minkowski_dot, rms_coords_to_cartesian, spacelike_to_cartesian
from .quadrature import TensorQuadrature, beta_uniform, phi_uniform, rho_laguerre, theta_legendre

M0 = np.array([0.0, 0.0, 0.0, 1.0])
CHART_TOL = 1e-10
DIRECTION_TOL = 1e-12
COVERAGE_TOL = 1e-9


def _levi_civita():
    eps = np.zeros((3, 3, 3))
    for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        eps[i, j, k] = 1.0
        eps[i, k, j] = -1.0
    return eps


_EPS = _levi_civita()
# rotation generators J_i: (J_i)^j_k = -eps_ijk on the spatial block
J = np.zeros((3, 4, 4))
J[:, 1:, 1:] = -_EPS
# boost generators K_i couple x0 and x_i symmetrically
K = np.zeros((3, 4, 4))
for _i in range(3):
    K[_i, 0, _i + 1] = K[_i, _i + 1, 0] = 1.0


# --------------------------------------------------------------------------
# matrices


def lorentz_inverse(lam) -> np.ndarray:
    """eta Lambda^T eta, the inverse of any pseudo-orthogonal matrix."""
    lam = np.asarray(lam, dtype=float)
    return ETA @ lam.T @ ETA


def pseudo_orthogonality_residual(lam) -> float:
    lam = np.asarray(lam, dtype=float)
    return float(np.max(np.abs(lam.T @ ETA @ lam - ETA)))


def is_proper_orthochronous(lam, tol: float = 1e-12) -> bool:
    lam = np.asarray(lam, dtype=float)
    scale = max(1.0, float(np.max(np.abs(lam))) ** 2)
    return (
        pseudo_orthogonality_residual(lam) <= tol * scale
        and abs(np.linalg.det(lam) - 1.0) <= 1e-9 * scale
        and lam[0, 0] >= 1.0 - tol
    )


def boost(rapidity) -> np.ndarray:
    """Pure boost exp(w . K) for a rapidity three-vector w."""
    w = np.asarray(rapidity, dtype=float).reshape(3)
    a = float(np.linalg.norm(w))
    out = np.eye(4)
    if a == 0.0:
        return out
    n = w / a
    out[0, 0] = math.cosh(a)
    out[0, 1:] = out[1:, 0] = math.sinh(a) * n
    out[1:, 1:] += (math.cosh(a) - 1.0) * np.outer(n, n)
    return out


def rotation(axis, angle: float) -> np.ndarray:
    """Right-handed rotation of the spatial block about ``axis``."""
    axis = np.asarray(axis, dtype=float).reshape(3)
    norm = float(np.linalg.norm(axis))
    if norm == 0.0:
        raise DomainError("rotation axis must be nonzero")
    n = axis / norm
    cross = np.array([[0, -n[2], n[1]], [n[2], 0, -n[0]], [-n[1], n[0], 0]])
    out = np.eye(4)
    out[1:, 1:] = np.eye(3) + math.sin(angle) * cross + (1 - math.cos(angle)) * cross @ cross
    return out


def generator(omega=(0.0, 0.0, 0.0), nu=(0.0, 0.0, 0.0)) -> np.ndarray:
    """Lie-algebra element omega . J + nu . K in mixed-index form."""
    return np.tensordot(np.asarray(omega, dtype=float), J, 1) + np.tensordot(np.asarray(nu, dtype=float), K, 1)


def from_lowered(lam_lower) -> np.ndarray:
    """Convert an antisymmetric lambda_{mu nu} to the matrix acting on vectors."""
    lam_lower = np.asarray(lam_lower, dtype=float)
    if np.max(np.abs(lam_lower + lam_lower.T)) > 1e-12 * max(1.0, np.max(np.abs(lam_lower))):
        raise DomainError("lambda must be antisymmetric")
    return ETA @ lam_lower


def random_lorentz(rng: np.random.Generator, max_rapidity: float = 1.5) -> np.ndarray:
    axis = rng.normal(size=3)
    w = rng.normal(size=3)
    w *= rng.uniform(0, max_rapidity) / np.linalg.norm(w)
    return rotation(axis, rng.uniform(0, 2 * math.pi)) @ boost(w)


# --------------------------------------------------------------------------
# orbit directions and the canonical section


def as_direction(m, tol: float = DIRECTION_TOL) -> np.ndarray:
    m = np.asarray(m, dtype=float).reshape(4)
    scale = float(np.dot(m, m))
    if abs(minkowski_dot(m, m) - 1.0) > tol * max(1.0, scale):
        raise DomainError(f"{tuple(m)} is not a unit spacelike direction")
    return m


def normalize_direction(v) -> np.ndarray:
    v = np.asarray(v, dtype=float).reshape(4)
    s = minkowski_dot(v, v)
    if not s > 0:
        raise DomainError(f"{tuple(v)} is not spacelike")
    return v / math.sqrt(s)


def direction_from_angles(chi: float, theta: float, phi: float) -> np.ndarray:
    """Unit spacelike direction with rapidity chi and spatial angles (theta, phi)."""
    return np.array(spacelike_to_cartesian(1.0, chi, theta, phi))


def random_direction(rng: np.random.Generator, max_rapidity: float = 1.5) -> np.ndarray:
    return direction_from_angles(rng.uniform(-max_rapidity, max_rapidity), math.acos(rng.uniform(-1, 1)),
                                 rng.uniform(0, 2 * math.pi))


_RX_PI = rotation((1.0, 0.0, 0.0), math.pi)


def canonical_section(m, chart: str = "standard") -> np.ndarray:
    """L(m) with L(m) m = m0: rotate the spatial part onto z, then boost along z.

    The standard chart is singular when the spatial part points along -z; the
    ``alternate`` chart first rotates by pi about x and is singular along +z.
    """
    m = as_direction(m)
    if chart == "alternate":
        return canonical_section(_RX_PI @ m) @ _RX_PI
    if chart != "standard":
        raise DomainError(f"unknown chart {chart!r}")
    s = m[1:]
    s_norm = float(np.linalg.norm(s))
    u = s / s_norm
    c = u[2]
    if 1.0 + c <= CHART_TOL:
        raise ChartSingular(f"direction {tuple(m)} sits on the chart antipode; use chart='alternate'")
    v = np.cross(u, (0.0, 0.0, 1.0))
    vx = np.array([[0, -v[2], v[1]], [v[2], 0, -v[0]], [-v[1], v[0], 0]])
    rot = np.eye(4)
    rot[1:, 1:] = np.eye(3) + vx + vx @ vx / (1.0 + c)
    a = math.asinh(m[0])
    bz = np.eye(4)
    bz[0, 0] = bz[3, 3] = math.cosh(a)
    bz[0, 3] = bz[3, 0] = -math.sinh(a)
    return bz @ rot


def little_group_element(lam, m) -> np.ndarray:
    """D(Lambda, m) = L(m) Lambda L(Lambda^-1 m)^-1, an element stabilising m0."""
    lam = np.asarray(lam, dtype=float)
    m = as_direction(m)
    m_back = lorentz_inverse(lam) @ m
    return canonical_section(m) @ lam @ lorentz_inverse(canonical_section(m_back))


def stabilization_residual(lam, m) -> float:
    return float(np.linalg.norm(little_group_element(lam, m) @ M0 - M0))


def cocycle_residual(lam1, lam2, m) -> float:
    lam1 = np.asarray(lam1, dtype=float)
    lhs = little_group_element(lam1 @ lam2, m)
    rhs = little_group_element(lam1, m) @ little_group_element(lam2, lorentz_inverse(lam1) @ np.asarray(m, dtype=float))
    return float(np.max(np.abs(lhs - rhs)))


# --------------------------------------------------------------------------
# bundle functions


Section = Callable[[np.ndarray, np.ndarray], np.ndarray]


def default_quadrature(n_rho: int = 10, n_theta: int = 10, n_beta: int = 97, n_phi: int = 48,
                       beta_max: float = 12.0, rho_scale: float = 0.5) -> TensorQuadrature:
    return TensorQuadrature(rho_laguerre(n_rho, rho_scale), theta_legendre(n_theta),
                            beta_uniform(n_beta, beta_max), phi_uniform(n_phi))


@dataclass(frozen=True, eq=False)
class BundleFunction:
    """Section psi(m, y) represented at a finite list of orbit directions."""

    directions: np.ndarray
    section: Section
    quadrature: TensorQuadrature = field(default_factory=default_quadrature)

    def __post_init__(self):
        dirs = np.atleast_2d(np.asarray(self.directions, dtype=float))
        if dirs.shape[1] != 4 or dirs.shape[0] < 1:
            raise DomainError("directions must be an (n, 4) array")
        for d in dirs:
            as_direction(d, tol=1e-10)
        dirs.flags.writeable = False
        object.__setattr__(self, "directions", dirs)

    @classmethod
    def covariant(cls, F: Callable[[np.ndarray], np.ndarray], directions, modulation=None, quadrature=None):
        """psi_m(y) = G(m) F(L(m)^-1 y): a scalar field seen from each frame."""
        def section(m, y):
            x = y @ lorentz_inverse(canonical_section(m)).T
            g = 1.0 if modulation is None else modulation(m)
            return g * F(x)
        return cls(directions, section, quadrature or default_quadrature())

    @classmethod
    def constant_family(cls, F: Callable[[np.ndarray], np.ndarray], directions, modulation=None, quadrature=None):
        """psi_m(y) = G(m) F(y): the same frame function at every orbit point."""
        def section(m, y):
            g = 1.0 if modulation is None else modulation(m)
            return g * F(y)
        return cls(directions, section, quadrature or default_quadrature())

    def nodes(self) -> np.ndarray:
        return self.quadrature.cartesian()

    def values(self, m, y=None) -> np.ndarray:
        y = self.nodes() if y is None else y
        return np.asarray(self.section(np.asarray(m, dtype=float), y))

    def members(self):
        y = self.nodes()
        return [(d.copy(), self.values(d, y)) for d in self.directions]

    def member_norms(self) -> np.ndarray:
        w = self.quadrature.weights()
        y = self.nodes()
        return np.array([float(np.sum(w * np.abs(self.values(d, y)) ** 2)) for d in self.directions])

    def find(self, m, tol: float = COVERAGE_TOL):
        """Index of the sampled direction matching ``m`` or None."""
        dist = np.linalg.norm(self.directions - np.asarray(m, dtype=float), axis=1)
        i = int(np.argmin(dist))
        return i if dist[i] <= tol * max(1.0, float(np.linalg.norm(m))) else None

    def nearest(self, m):
        dist = np.linalg.norm(self.directions - np.asarray(m, dtype=float), axis=1)
        i = int(np.argmin(dist))
        return i, float(dist[i])


def transported_value(lam, section: Section, m, y) -> np.ndarray:
    """psi^Lambda_m(y) = psi_{Lambda^-1 m}(D(Lambda, m)^-1 y)."""
    lam = np.asarray(lam, dtype=float)
    m = np.asarray(m, dtype=float)
    dinv = lorentz_inverse(little_group_element(lam, m))
    return section(lorentz_inverse(lam) @ m, y @ dinv.T)


@dataclass(frozen=True, eq=False)
class TransportResult:
    bundle: BundleFunction
    interpolation_bounds: np.ndarray


def transport_state(lam, b: BundleFunction, targets=None, interpolate: bool = False) -> BundleFunction:
    """Act with Lambda on a bundle function.

    Without ``targets`` the sampled directions are pushed forward to Lambda m,
    which keeps every required orbit point covered.  With explicit targets
    each Lambda^-1 t must be a sampled direction; otherwise OrbitCoverage is
    raised, or with ``interpolate`` the nearest sample is used.
    """
    return transport_with_bounds(lam, b, targets, interpolate).bundle


def transport_with_bounds(lam, b: BundleFunction, targets=None, interpolate: bool = False) -> TransportResult:
    lam = np.asarray(lam, dtype=float)
    lam_inv = lorentz_inverse(lam)
    if targets is None:
        targets = b.directions @ lam.T
        bounds = np.zeros(len(targets))
        snap = None
    else:
        targets = np.atleast_2d(np.asarray(targets, dtype=float))
        bounds = np.zeros(len(targets))
        snap = {}
        for j, t in enumerate(targets):
            back = lam_inv @ t
            i = b.find(back)
            if i is None:
                if not interpolate:
                    raise OrbitCoverage(back, f"orbit point {tuple(float(v) for v in back)} needed for target "
                                              f"{tuple(float(v) for v in t)} is not sampled")
                i, bounds[j] = b.nearest(back)
            snap[j] = b.directions[i]
    inner = b.section

    if snap:
        lookup = {tuple(np.round(targets[j], 12)): snap[j] for j in snap}

        def section(m, y):
            m = np.asarray(m, dtype=float)
            dinv = lorentz_inverse(little_group_element(lam, m))
            src = lookup.get(tuple(np.round(m, 12)), lam_inv @ m)
            return inner(src, y @ dinv.T)
    else:
        def section(m, y):
            return transported_value(lam, inner, m, y)

    return TransportResult(BundleFunction(targets, section, b.quadrature), bounds)


# --------------------------------------------------------------------------
# infinitesimal structure


def probe_points(count: int = 12, seed: int = 0) -> np.ndarray:
    """Deterministic interior RMS points used for pointwise checks."""
    rng = np.random.default_rng(seed)
    return rms_coords_to_cartesian(rng.uniform(0.5, 2.0, count), rng.uniform(0.4, math.pi - 0.4, count),
                                   rng.uniform(-1.0, 1.0, count), rng.uniform(0, 2 * math.pi, count))


def _as_generator(lam, lowered: bool) -> np.ndarray:
    X = from_lowered(lam) if lowered else np.asarray(lam, dtype=float)
    etaX = ETA @ X
    if np.max(np.abs(etaX + etaX.T)) > 1e-12 * max(1.0, float(np.max(np.abs(X)))):
        raise DomainError("generator is not in the Lorentz algebra")
    return X


def little_group_generator(X, m, delta: float = 1e-5) -> np.ndarray:
    """G = d/dt D(exp(tX), m)^-1 at t = 0 by central differences."""
    plus = lorentz_inverse(little_group_element(expm(delta * X), m))
    minus = lorentz_inverse(little_group_element(expm(-delta * X), m))
    return (plus - minus) / (2 * delta)


@dataclass(frozen=True)
class InfinitesimalReport:
    h: float
    antisymmetry: tuple[float, float]
    transport: tuple[float, float]
    orbit_term: float
    little_group_term: float
    generator_stabilization: float

    @staticmethod
    def _ratio(pair):
        return pair[0] / pair[1] if pair[1] > 0 else math.nan

    @property
    def antisymmetry_ratio(self) -> float:
        return self._ratio(self.antisymmetry)

    @property
    def transport_ratio(self) -> float:
        return self._ratio(self.transport)

    def as_dict(self) -> dict:
        return {
            "h": self.h,
            "antisymmetry_residual": list(self.antisymmetry),
            "antisymmetry_ratio": self.antisymmetry_ratio,
            "transport_residual": list(self.transport),
            "transport_ratio": self.transport_ratio,
            "orbit_term": self.orbit_term,
            "little_group_term": self.little_group_term,
            "generator_stabilization": self.generator_stabilization,
        }


def infinitesimal_check(lam, b: BundleFunction, h: float = 1e-4, lowered: bool = True,
                        probes=None, delta: float = 1e-5) -> InfinitesimalReport:
    """Residuals of the first-order expansion of transport at steps h and h/2.

    (a) (d_h L) L^-1 along the orbit must lie in the Lorentz algebra; its
        eta-symmetric part is the residual.
    (b) transport(exp(hX)) psi against psi + h (orbit term + little-group term),
        with the orbit term d/dt psi(exp(-tX) m, y) and the little-group term
        (G y) . grad_y psi.
    Both residuals are O(h^2), so the reported ratios should be close to 4.
    """
    X = _as_generator(lam, lowered)
    y = probe_points() if probes is None else np.atleast_2d(probes)
    anti, trans = [], []
    orbit_max = lg_max = stab = 0.0
    for step in (h, h / 2):
        a_res = t_res = 0.0
        for m in b.directions:
            lm = canonical_section(m)
            dl = (canonical_section(expm(step * X) @ m) - canonical_section(expm(-step * X) @ m)) / (2 * step)
            g = ETA @ dl @ lorentz_inverse(lm)
            a_res = max(a_res, float(np.max(np.abs(g + g.T))))

            psi = b.values(m, y)
            orbit = (b.values(expm(-delta * X) @ m, y) - b.values(expm(delta * X) @ m, y)) / (2 * delta)
            G = little_group_generator(X, m, delta)
            gy = y @ G.T
            lg = (b.values(m, y + delta * gy) - b.values(m, y - delta * gy)) / (2 * delta)
            lhs = transported_value(expm(step * X), b.section, m, y)
            t_res = max(t_res, float(np.max(np.abs(lhs - (psi + step * (orbit + lg))))))
            orbit_max = max(orbit_max, float(np.max(np.abs(orbit))))
            lg_max = max(lg_max, float(np.max(np.abs(lg))))
            stab = max(stab, float(np.linalg.norm(G @ M0)))
        anti.append(a_res)
        trans.append(t_res)
    return InfinitesimalReport(h, tuple(anti), tuple(trans), orbit_max, lg_max, stab)


# --------------------------------------------------------------------------
# Casimir estimates


ROTATIONS = tuple(J)
BOOSTS = tuple(K)


def _group_value(b: BundleFunction, mats: Sequence[np.ndarray], m, y) -> np.ndarray:
    lam = np.eye(4)
    for mat in mats:
        lam = lam @ mat
    return transported_value(lam, b.section, m, y)


def _second(b, Xa, Xb, m, y, h):
    """X_a X_b psi by central differences in the two group parameters."""
    if Xa is Xb:
        plus = _group_value(b, [expm(h * Xa)], m, y)
        minus = _group_value(b, [expm(-h * Xa)], m, y)
        return (plus - 2 * b.values(m, y) + minus) / h**2
    tot = 0.0
    for s in (1, -1):
        for t in (1, -1):
            tot = tot + s * t * _group_value(b, [expm(s * h * Xa), expm(t * h * Xb)], m, y)
    return tot / (4 * h**2)


def _third(b, Xa, Xb, Xc, m, y, h):
    tot = 0.0
    for s in (1, -1):
        for t in (1, -1):
            for u in (1, -1):
                tot = tot + s * t * u * _group_value(b, [expm(s * h * Xa), expm(t * h * Xb), expm(u * h * Xc)], m, y)
    return tot / (8 * h**3)


def apply_c1(b: BundleFunction, m, y, h: float = 1e-3) -> np.ndarray:
    """(L^2 - A^2) psi with L = i X_J and A = i X_K."""
    out = 0.0
    for Xj in ROTATIONS:
        out = out - _second(b, Xj, Xj, m, y, h)
    for Xk in BOOSTS:
        out = out + _second(b, Xk, Xk, m, y, h)
    return out


def apply_c2(b: BundleFunction, m, y, h: float = 1e-3) -> np.ndarray:
    """(L . A) psi."""
    out = 0.0
    for Xj, Xk in zip(ROTATIONS, BOOSTS):
        out = out - _second(b, Xj, Xk, m, y, h)
    return out


@dataclass(frozen=True)
class CasimirEstimate:
    c1: float
    c2: float
    c1_members: tuple[float, ...]
    c2_members: tuple[float, ...]

    @property
    def c1_spread(self) -> float:
        return max(self.c1_members) - min(self.c1_members)


def casimir_quadrature() -> TensorQuadrature:
    """Compact rule for Rayleigh quotients.

    Group-parameter differences scale like exp(|beta|), so the quotient is
    taken over a bounded rapidity window rather than the norm quadrature.
    """
    return TensorQuadrature(rho_laguerre(4, 0.5), theta_legendre(8), beta_uniform(17, 2.0), phi_uniform(16))


def bundle_casimirs(b: BundleFunction, h: float = 1e-3, quadrature: TensorQuadrature | None = None) -> CasimirEstimate:
    """Rayleigh-quotient estimates of c1 = L^2 - A^2 and c2 = L . A.

    Members are summed with unit weight since the orbit measure carries no
    normalisation.
    """
    quadrature = quadrature or casimir_quadrature()
    w = quadrature.weights()
    y = quadrature.cartesian()
    num1 = num2 = den = 0.0
    per1, per2 = [], []
    for m in b.directions:
        psi = b.values(m, y)
        a = np.sum(w * np.conj(psi) * apply_c1(b, m, y, h))
        c = np.sum(w * np.conj(psi) * apply_c2(b, m, y, h))
        d = np.sum(w * np.abs(psi) ** 2)
        per1.append(float((a / d).real))
        per2.append(float((c / d).real))
        num1, num2, den = num1 + a, num2 + c, den + d
    return CasimirEstimate(float((num1 / den).real), float((num2 / den).real), tuple(per1), tuple(per2))


def c1_l3_commutator(b: BundleFunction, h: float = 1e-2, probes=None) -> float:
    """Max pointwise |[c1, L3] psi| at probe points by third-order differences."""
    y = probe_points() if probes is None else np.atleast_2d(probes)
    J3 = ROTATIONS[2]
    worst = 0.0
    for m in b.directions:
        tot = 0.0
        for sign, gens in ((-1.0, ROTATIONS), (1.0, BOOSTS)):
            for X in gens:
                tot = tot + sign * (_third(b, X, X, J3, m, y, h) - _third(b, J3, X, X, m, y, h))
        worst = max(worst, float(np.max(np.abs(tot))))
    return worst
