"""Isotypic projectors for the circle group and SU(2) on polynomial spaces.

The torus path is an exact finite Fourier transform and is held to 1e-12.
The SU(2) path assembles the averaging operators E_delta from an Euler-angle
product quadrature that integrates every matrix coefficient up to the band
limit, so the only error is floating-point roundoff; those checks are held
to 1e-8.  Accumulation uses numpy reductions over a fixed node ordering
(pairwise summation), so repeated runs produce identical reports.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial, sqrt

import numpy as np

from .errors import BandLimitError, DegenerateInputError
from .involution import _sym_rep_matrix

ZERO_THRESHOLD = 1e-8
TORUS_TOLERANCE = 1e-12


# ---- samples -------------------------------------------------------------------


@dataclass(frozen=True)
class FunctionSample:
    """A finite polynomial given by coefficients over a monomial basis.

    domain "torus": Laurent monomials z^e, exponent tuples of length n.
    domain "su2": ordinary monomials x^a y^b on C^2, keys (a, b) >= 0.
    """

    domain: str
    n: int
    coeffs: dict
    flags: tuple = ()

    def norm(self) -> float:
        return sqrt(sum(abs(c) ** 2 for c in self.coeffs.values()))

    def degree(self) -> int:
        """Total degree; -1 on the zero sample by convention."""
        if not self.coeffs:
            return -1
        return max(sum(k) for k in self.coeffs)

    def __add__(self, other: "FunctionSample") -> "FunctionSample":
        assert (self.domain, self.n) == (other.domain, other.n)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0) + c
        return FunctionSample(self.domain, self.n, out)

    def __sub__(self, other: "FunctionSample") -> "FunctionSample":
        assert (self.domain, self.n) == (other.domain, other.n)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0) - c
        return FunctionSample(self.domain, self.n, out)

    def prune(self, eps: float = 1e-14) -> "FunctionSample":
        kept = {k: c for k, c in self.coeffs.items() if abs(c) > eps}
        return FunctionSample(self.domain, self.n, kept, self.flags)


def torus_sample(coeffs: dict, n: int | None = None) -> FunctionSample:
    keys = list(coeffs)
    if n is None:
        if not keys:
            raise DegenerateInputError("torus rank cannot be inferred from a zero sample")
        n = len(keys[0])
    for k in keys:
        if len(k) != n or not all(isinstance(e, int) for e in k):
            raise DegenerateInputError(f"exponent {k} does not fit torus rank {n}")
    return FunctionSample("torus", n, {tuple(k): complex(c) for k, c in coeffs.items()})


def su2_sample(coeffs: dict) -> FunctionSample:
    for k in coeffs:
        if len(k) != 2 or k[0] < 0 or k[1] < 0:
            raise DegenerateInputError(f"monomial exponent {k} is not a pair of naturals")
    return FunctionSample("su2", 2, {tuple(k): complex(c) for k, c in coeffs.items()})


# ---- torus projections -----------------------------------------------------------


def _window(f: FunctionSample) -> tuple[tuple[int, int], ...]:
    return tuple(
        (min(k[i] for k in f.coeffs), max(k[i] for k in f.coeffs))
        for i in range(f.n)
    )


def _torus_coefficient_grid(f: FunctionSample) -> tuple[np.ndarray, tuple[int, ...]]:
    """Recover all windowed coefficients by an inverse FFT of grid values.

    The grid has one more point per axis than the exponent spread, so no two
    exponents in the window alias; the shifted polynomial z^(-lo) f has
    ordinary Fourier indices and ifftn reads them off exactly.
    """
    win = _window(f)
    los = tuple(lo for lo, _ in win)
    sizes = tuple(hi - lo + 1 for lo, hi in win)
    values = np.zeros(sizes, dtype=complex)
    axes_freq = [np.exp(2j * np.pi * np.arange(m) / m) for m in sizes]
    for expo, c in f.coeffs.items():
        term = np.array(c, dtype=complex)
        for ax, m in enumerate(sizes):
            shaped = [1] * f.n
            shaped[ax] = m
            term = term * (axes_freq[ax] ** (expo[ax] - los[ax])).reshape(shaped)
        values = values + term
    # forward transform: values built from e^{+i...} need the e^{-i...} sum
    # to isolate a coefficient, which is fftn, not ifftn
    return np.fft.fftn(values) / np.prod(sizes), los


def project_torus(f: FunctionSample, delta) -> FunctionSample:
    """The single Laurent term of multi-degree delta, via discrete Fourier
    extraction on a grid exceeding the degree window.

    A delta outside the window comes back as the zero sample carrying the
    "outside_degree_window" flag instead of an exception.
    """
    if f.domain != "torus":
        raise DegenerateInputError("torus projection needs a torus sample")
    delta = tuple(delta)
    if len(delta) != f.n:
        raise DegenerateInputError("exponent length does not match the torus rank")
    if not f.coeffs:
        return FunctionSample("torus", f.n, {})
    win = _window(f)
    if any(not lo <= d <= hi for d, (lo, hi) in zip(delta, win)):
        return FunctionSample("torus", f.n, {}, flags=("outside_degree_window",))
    grid, los = _torus_coefficient_grid(f)
    c = grid[tuple(d - lo for d, lo in zip(delta, los))]
    if abs(c) <= 1e-15:
        return FunctionSample("torus", f.n, {})
    return FunctionSample("torus", f.n, {delta: complex(c)})


# ---- SU(2) quadrature ------------------------------------------------------------


@dataclass
class QuadratureScheme:
    """Euler-angle product rule on SU(2), exact through the band limit.

    Nodes are (phi1, v, phi2) triples for k = z(phi1) r(theta) z(phi2) with
    v = cos(2 theta): uniform trapezoid in both angles kills every nonzero
    frequency up to the band, and after that averaging the remaining
    integrand is a polynomial in v of degree at most band/2, which the
    Gauss-Legendre factor integrates exactly.
    """

    nodes: np.ndarray  # (K, 3)
    weights: np.ndarray  # (K,), positive, sums to 1
    band: int
    _mats: dict = field(default_factory=dict, repr=False, compare=False)
    _chars: dict = field(default_factory=dict, repr=False, compare=False)
    _ops: dict = field(default_factory=dict, repr=False, compare=False)

    def matrices(self) -> np.ndarray:
        """(K, 2, 2) array of the group elements at the nodes."""
        if "k" not in self._mats:
            phi1, v, phi2 = self.nodes.T
            c = np.sqrt((1.0 + v) / 2.0)
            s = np.sqrt((1.0 - v) / 2.0)
            e1, e2 = np.exp(1j * phi1), np.exp(1j * phi2)
            k = np.empty((len(self.weights), 2, 2), dtype=complex)
            k[:, 0, 0] = e1 * c * e2
            k[:, 0, 1] = -e1 * s / e2
            k[:, 1, 0] = s * e2 / e1
            k[:, 1, 1] = c / (e1 * e2)
            self._mats["k"] = k
        return self._mats["k"]

    def character(self, delta: int) -> np.ndarray:
        """chi_delta at every node, by the trace recurrence
        chi_{d+1} = t chi_d - chi_{d-1} with t the matrix trace."""
        if delta not in self._chars:
            t = np.real(np.trace(self.matrices(), axis1=1, axis2=2))
            prev, cur = np.zeros_like(t), np.ones_like(t)
            for _ in range(delta):
                prev, cur = cur, t * cur - prev
            self._chars[delta] = cur
        return self._chars[delta]

    def rep_blocks(self, m: int) -> np.ndarray:
        """(K, m+1, m+1) matrices of the action on homogeneous degree m,
        in the unitarized monomial basis."""
        if m not in self._mats:
            ks = self.matrices()
            self._mats[m] = np.stack([_sym_rep_matrix(k, m) for k in ks])
        return self._mats[m]

    def block_operator(self, delta: int, m: int) -> np.ndarray:
        """E_delta restricted to homogeneous degree m.

        The averaging kernel is dim(V_delta) times the conjugated trace
        character; without the dimension factor the operator is only
        1/dim of a projector and idempotence fails."""
        key = (delta, m)
        if key not in self._ops:
            wchi = (delta + 1) * self.weights * np.conj(self.character(delta))
            self._ops[key] = np.tensordot(wchi, self.rep_blocks(m), axes=1)
        return self._ops[key]


def su2_quadrature(band: int) -> QuadratureScheme:
    if band < 0:
        raise DegenerateInputError("band limit must be nonnegative")
    n_ang = band + 1
    angles = 2.0 * np.pi * np.arange(n_ang) / n_ang
    v_nodes, v_weights = np.polynomial.legendre.leggauss(band // 2 + 1)
    phi1, v, phi2 = np.meshgrid(angles, v_nodes, angles, indexing="ij")
    nodes = np.stack([phi1.ravel(), v.ravel(), phi2.ravel()], axis=1)
    w_ang = np.full(n_ang, 1.0 / n_ang)
    weights = (
        w_ang[:, None, None] * (v_weights / 2.0)[None, :, None] * w_ang[None, None, :]
    ).ravel()
    return QuadratureScheme(nodes, weights, band)


# ---- projections on C^2 -----------------------------------------------------------


def _unitarized(f: FunctionSample, m: int) -> np.ndarray:
    """Degree-m homogeneous part in the orthonormal basis x^a y^b / sqrt(a! b!)."""
    vec = np.zeros(m + 1, dtype=complex)
    for (a, b), c in f.coeffs.items():
        if a + b == m:
            vec[b] = c * sqrt(factorial(a) * factorial(b))
    return vec


def _from_unitarized(vec: np.ndarray, m: int) -> dict:
    out = {}
    for b in range(m + 1):
        if vec[b] != 0:
            out[(m - b, b)] = vec[b] / sqrt(factorial(m - b) * factorial(b))
    return out


def project_su2(f: FunctionSample, delta: int, q: QuadratureScheme) -> FunctionSample:
    """E_delta f as a weighted quadrature sum of the translates of f.

    Homogeneous degree-m polynomials form an irreducible module, so the
    result is f's degree-delta part up to quadrature roundoff.  The
    pullbacks through each node are exact; only the accumulation floats.
    """
    if f.domain != "su2":
        raise DegenerateInputError("this projector needs a sample on C^2")
    if delta < 0:
        raise DegenerateInputError("isotypic index must be a nonnegative integer")
    deg = max(f.degree(), 0)
    if q.band < 2 * deg or q.band < deg + delta:
        raise BandLimitError(
            f"band limit {q.band} cannot resolve degree {deg} against index {delta}"
        )
    out: dict = {}
    for m in range(deg + 1):
        vec = _unitarized(f, m)
        if not np.any(vec):
            continue
        res = q.block_operator(delta, m) @ vec
        for key, c in _from_unitarized(res, m).items():
            out[key] = out.get(key, 0) + c
    return FunctionSample("su2", 2, out).prune()


# ---- reports ----------------------------------------------------------------------


@dataclass
class IsotypicReport:
    """Finite isotypic series of a polynomial: the components above the
    norm threshold and the residual of summing them back."""

    components: dict
    residual: float
    threshold: float
    tolerance: float

    @property
    def support(self) -> list:
        return sorted(self.components)

    @property
    def within_tolerance(self) -> bool:
        return self.residual <= self.tolerance

    def as_dict(self) -> dict:
        return {
            "support": [str(d) for d in self.support],
            "residual": self.residual,
            "threshold": self.threshold,
            "tolerance": self.tolerance,
            "within_tolerance": self.within_tolerance,
        }


def finite_series_check(
    f: FunctionSample,
    q: QuadratureScheme | None = None,
    threshold: float = ZERO_THRESHOLD,
) -> IsotypicReport:
    """Project onto every candidate component, keep the ones that are
    nonzero, and confirm the finite sum reconstructs f.

    Torus samples use the exact Fourier path (tolerance 1e-12, no
    quadrature needed); samples on C^2 average with the supplied scheme
    (tolerance 1e-8).
    """
    if f.domain == "torus":
        comps = {}
        if f.coeffs:
            win = _window(f)
            ranges = [range(lo, hi + 1) for lo, hi in win]
            idx = [()]
            for r in ranges:
                idx = [t + (i,) for t in idx for i in r]
            for delta in idx:
                g = project_torus(f, delta)
                if g.norm() > threshold:
                    comps[delta] = g
        recon = FunctionSample("torus", f.n, {})
        for g in comps.values():
            recon = recon + g
        return IsotypicReport(comps, (f - recon).norm(), threshold, TORUS_TOLERANCE)
    if q is None:
        raise DegenerateInputError("projections on C^2 need a quadrature scheme")
    comps = {}
    for delta in range(max(f.degree(), 0) + 1):
        g = project_su2(f, delta, q)
        if g.norm() > threshold:
            comps[delta] = g
    recon = FunctionSample("su2", 2, {})
    for g in comps.values():
        recon = recon + g
    return IsotypicReport(comps, (f - recon).norm(), threshold, ZERO_THRESHOLD)


def verify_projector_algebra(
    q: QuadratureScheme,
    degree_cap: int,
    n_rotations: int = 5,
    seed: int = 0,
    tolerance: float = ZERO_THRESHOLD,
) -> dict:
    """Assemble every E_delta on polynomials of degree <= cap and measure
    idempotence, mutual orthogonality, commutation with sampled group
    elements, and self-adjointness in the invariant inner product.

    Report-only: residuals are returned as found, so a corrupted scheme
    shows up as a large number rather than an exception.
    """
    if q.band < 2 * degree_cap:
        raise BandLimitError(
            f"band limit {q.band} is below twice the degree cap {degree_cap}"
        )
    deltas = range(degree_cap + 1)
    blocks = {
        (d, m): q.block_operator(d, m)
        for d in deltas
        for m in range(degree_cap + 1)
    }
    idem = 0.0
    orth = 0.0
    selfadj = 0.0
    for d in deltas:
        for m in range(degree_cap + 1):
            e = blocks[(d, m)]
            idem = max(idem, np.max(np.abs(e @ e - e)))
            selfadj = max(selfadj, np.max(np.abs(e - e.conj().T)))
            for d2 in deltas:
                if d2 != d:
                    orth = max(orth, np.max(np.abs(e @ blocks[(d2, m)])))
    rng = np.random.default_rng(seed)
    comm = 0.0
    for _ in range(n_rotations):
        phi1, phi2 = rng.uniform(0.0, 2.0 * np.pi, size=2)
        v = rng.uniform(-1.0, 1.0)
        c, s = sqrt((1.0 + v) / 2.0), sqrt((1.0 - v) / 2.0)
        k = np.array(
            [
                [np.exp(1j * phi1) * c * np.exp(1j * phi2), -np.exp(1j * phi1) * s * np.exp(-1j * phi2)],
                [np.exp(-1j * phi1) * s * np.exp(1j * phi2), np.exp(-1j * phi1) * c * np.exp(-1j * phi2)],
            ]
        )
        for m in range(degree_cap + 1):
            rho = _sym_rep_matrix(k, m)
            for d in deltas:
                e = blocks[(d, m)]
                comm = max(comm, np.max(np.abs(e @ rho - rho @ e)))
    worst = max(idem, orth, comm, selfadj)
    return {
        "degree_cap": degree_cap,
        "band": q.band,
        "idempotence": idem,
        "orthogonality": orth,
        "commutation": comm,
        "self_adjointness": selfadj,
        "max_residual": worst,
        "tolerance": tolerance,
        "within_tolerance": worst <= tolerance,
    }
