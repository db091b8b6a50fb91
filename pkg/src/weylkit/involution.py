"""Weyl involutions, adapted subalgebras, and antiholomorphic bundle data.

Everything at the Lie-algebra level is exact: the Chevalley involution, the
compact-form conjugation, and the intertwiner solve all run over rational
matrices, so every certificate in this module re-verifies to literal zero
residuals.  Floating point enters only through the Phi-function orbit
checks, which live on the analytic model and carry explicit tolerances.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, sqrt

import numpy as np
import sympy

from .errors import (
    DegenerateInputError,
    NoIntertwinerError,
    NotAdaptedError,
    NotOrthonormalError,
    NuSquareObstructionError,
)
from .linalg import column_stack, eye, fr, is_zero, nullspace, zeros
from .repthy import build_module, check_label
from .rootsys import Group, Subalgebra
from .sympoly import check_reductive

Weight = tuple[int, ...]


# ---- involution specs --------------------------------------------------------


@dataclass
class InvolutionSpec:
    """An exact involution of the Lie algebra on the Chevalley basis.

    kind "weyl_theta" is a linear automorphism; "cartan_tau" is the
    conjugation of the compact real form, an antilinear map whose rational
    matrix happens to coincide with the Chevalley involution; their product
    "sigma_product" is again antilinear and fixes the split form.
    """

    kind: str
    group: Group
    matrix: np.ndarray
    antilinear: bool

    def apply(self, v: np.ndarray) -> np.ndarray:
        return self.matrix @ v

    def action_on_weights(self, label) -> Weight:
        """Highest-weight involution lambda -> -w0(lambda)."""
        return self.group.dual_label(check_label(self.group, label))

    def squares_to_identity(self) -> bool:
        # For an antilinear map with rational matrix M the square is the
        # linear map M conj(M) = M M, the same formula as the linear case.
        return is_zero(self.matrix @ self.matrix - eye(self.group.dim))

    def is_automorphism(self) -> bool:
        g = self.group
        vecs = [g.gen_vector(*lab) for lab in g.basis_labels]
        for i, x in enumerate(vecs):
            for y in vecs[i + 1 :]:
                lhs = self.matrix @ g.bracket(x, y)
                rhs = g.bracket(self.matrix @ x, self.matrix @ y)
                if not is_zero(lhs - rhs):
                    return False
        return True


def _chevalley_matrix(group: Group) -> np.ndarray:
    m = zeros(group.dim, group.dim)
    idx = {lab: k for k, lab in enumerate(group.basis_labels)}
    for k, (kind, tag) in enumerate(group.basis_labels):
        if kind in ("h", "t"):
            m[k, k] = fr(-1)
        elif kind == "e":
            m[idx[("f", tag)], k] = fr(-1)
        else:
            m[idx[("e", tag)], k] = fr(-1)
    return m


def build_weyl_involution(group: Group) -> InvolutionSpec:
    """The Chevalley involution e -> -f, f -> -e, -id on the Cartan span.

    This is the infinitesimal form of a Weyl involution: it inverts the
    maximal torus and is verified here to preserve every basis bracket.
    """
    spec = InvolutionSpec("weyl_theta", group, _chevalley_matrix(group), False)
    assert spec.squares_to_identity()
    assert spec.is_automorphism(), "Chevalley involution failed bracket check"
    return spec


def build_cartan_conjugation(group: Group) -> InvolutionSpec:
    """Conjugation with respect to the compact real form.

    Antilinear; on the rational Chevalley basis its matrix is the same as
    the Chevalley involution (the compact form is spanned by h_i over iR
    and e-f, i(e+f)).
    """
    return InvolutionSpec("cartan_tau", group, _chevalley_matrix(group), True)


def build_sigma(group: Group, theta: InvolutionSpec | None = None) -> InvolutionSpec:
    """The antiholomorphic sigma = tau . theta fixing a split real form."""
    theta = theta if theta is not None else build_weyl_involution(group)
    tau = build_cartan_conjugation(group)
    if not is_zero(tau.matrix @ theta.matrix - theta.matrix @ tau.matrix):
        raise DegenerateInputError("tau and theta do not commute")
    spec = InvolutionSpec("sigma_product", group, tau.matrix @ theta.matrix, True)
    if not spec.squares_to_identity():
        raise DegenerateInputError("sigma squared is not the identity")
    return spec


# ---- adaptedness -------------------------------------------------------------


@dataclass
class AdaptednessReport:
    theta_stable: bool
    restriction_is_weyl: bool
    verdict: bool
    diagnostics: list[np.ndarray] | None = None  # Cartan of h used, if found

    def as_dict(self) -> dict:
        return {
            "theta_stable": self.theta_stable,
            "restriction_is_weyl": self.restriction_is_weyl,
            "verdict": self.verdict,
            "cartan_found": self.diagnostics is not None,
        }


def _is_semisimple_element(group: Group, z: np.ndarray) -> bool:
    """Exact test: the squarefree part of the characteristic polynomial of
    ad z annihilates ad z."""
    ad = group.ad(z)
    m = sympy.Matrix(
        [[sympy.Rational(ad[i, j].numerator, ad[i, j].denominator) for j in range(group.dim)] for i in range(group.dim)]
    )
    lam = sympy.Symbol("x")
    p = m.charpoly(lam).as_expr()
    q = sympy.quo(p, sympy.gcd(p, sympy.diff(p, lam)), lam)
    coeffs = sympy.Poly(q, lam).all_coeffs()
    acc = sympy.zeros(group.dim)
    for c in coeffs:
        acc = acc * m + sympy.eye(group.dim) * c
    return acc == sympy.zeros(group.dim)


def _subspace_in_h(h: Subalgebra, coord_vectors: list[np.ndarray]) -> list[np.ndarray]:
    out = []
    for c in coord_vectors:
        v = zeros(h.group.dim)
        for ci, bi in zip(c, h.basis):
            v = v + ci * bi
        out.append(v)
    return out


def _centralizer_in_h(group: Group, h: Subalgebra, z: np.ndarray) -> list[np.ndarray]:
    if h.dim == 0:
        return []
    cols = [group.bracket(z, v) for v in h.basis]
    return _subspace_in_h(h, nullspace(column_stack(cols)))


def _small_tuples(k: int, max_height: int = 6, cap: int = 400):
    """Nonnegative integer coefficient tuples ordered by height, for
    deterministic generic-element searches."""
    count = 0
    for height in range(1, max_height + 1):
        for tup in itertools.product(range(height + 1), repeat=k):
            if sum(tup) != height:
                continue
            yield tup
            count += 1
            if count >= cap:
                return


def is_adapted(group: Group, h: Subalgebra, theta: InvolutionSpec) -> AdaptednessReport:
    """Is h theta-stable with theta a Weyl involution of h?

    The restriction criterion asks for a Cartan subalgebra of h on which
    theta acts as minus the identity.  Candidates z are drawn from the
    (-1)-eigenspace of theta on h in a deterministic height-ordered sweep;
    a semisimple z whose centralizer in h is abelian and still inside the
    (-1)-eigenspace exhibits such a Cartan.
    """
    check_reductive(group, h)
    stable = all(h.contains(theta.apply(v)) for v in h.basis)
    if not stable:
        return AdaptednessReport(False, False, False, None)
    if h.dim == 0:
        return AdaptednessReport(True, True, True, [])
    # theta restricted to h, in h coordinates
    k = h.dim
    restr = zeros(k, k)
    for j, v in enumerate(h.basis):
        c = h.coords(theta.apply(v))
        assert c is not None
        restr[:, j] = c
    anti = _subspace_in_h(h, nullspace(restr + eye(k)))
    abelian_h = all(
        is_zero(group.bracket(x, y)) for i, x in enumerate(h.basis) for y in h.basis[i + 1 :]
    )
    if abelian_h:
        # h is its own Cartan; theta must negate all of it
        ok = len(anti) == h.dim
        return AdaptednessReport(True, ok, ok, h.basis if ok else None)
    if not anti:
        return AdaptednessReport(True, False, False, None)
    for coeffs in _small_tuples(len(anti)):
        z = zeros(group.dim)
        for c, v in zip(coeffs, anti):
            z = z + fr(c) * v
        if not _is_semisimple_element(group, z):
            continue
        cent = _centralizer_in_h(group, h, z)
        if any(
            not is_zero(group.bracket(x, y))
            for i, x in enumerate(cent)
            for y in cent[i + 1 :]
        ):
            continue
        anti_span = Subalgebra(group, anti)
        if all(anti_span.contains(v) for v in cent):
            return AdaptednessReport(True, True, True, cent)
    return AdaptednessReport(True, False, False, None)


# ---- antilinear maps and the intertwiner solve --------------------------------


@dataclass
class AntilinearMap:
    """v -> M conj(v) with M split into exact rational real/imaginary parts."""

    re: np.ndarray
    im: np.ndarray

    @property
    def dim(self) -> int:
        return self.re.shape[0]

    def matrix_complex(self) -> np.ndarray:
        return np.array(
            [[float(self.re[i, j]) + 1j * float(self.im[i, j]) for j in range(self.dim)] for i in range(self.dim)]
        )

    def apply_float(self, v: np.ndarray) -> np.ndarray:
        return self.matrix_complex() @ np.conj(v)

    def compose(self, other: "AntilinearMap") -> tuple[np.ndarray, np.ndarray]:
        """The linear map (self . other); returns exact (re, im) parts of
        A conj(B) for self = A conj, other = B conj."""
        re = self.re @ other.re + self.im @ other.im
        im = self.im @ other.re - self.re @ other.im
        return re, im

    def is_involutive(self) -> bool:
        re, im = self.compose(self)
        n = self.dim
        return is_zero(re - eye(n)) and is_zero(im - zeros(n, n))

    def negate(self) -> "AntilinearMap":
        return AntilinearMap(-self.re, -self.im)


class HModule:
    """A module over a subalgebra h, given by exact matrices on h's basis."""

    def __init__(self, group: Group, h: Subalgebra, mats: list[np.ndarray], descriptor: tuple):
        self.group = group
        self.h = h
        self.mats = mats
        self.descriptor = descriptor
        self.dim = mats[0].shape[0] if mats else 1
        for m, x in zip(mats, h.basis):
            assert m.shape == (self.dim, self.dim)
        # bracket compatibility: rho[x,y] = [rho x, rho y] on the basis
        for i, x in enumerate(h.basis):
            for j, y in enumerate(h.basis):
                if j <= i:
                    continue
                c = h.coords(group.bracket(x, y))
                assert c is not None, "fiber module over a non-closed span"
                lhs = self.action_coords(c)
                rhs = mats[i] @ mats[j] - mats[j] @ mats[i]
                assert is_zero(lhs - rhs), "fiber matrices do not represent h"

    def action_coords(self, coords: np.ndarray) -> np.ndarray:
        out = zeros(self.dim, self.dim)
        for c, m in zip(coords, self.mats):
            if c != 0:
                out = out + c * m
        return out

    def action_of(self, vec: np.ndarray) -> np.ndarray:
        c = self.h.coords(vec)
        if c is None:
            raise DegenerateInputError("vector lies outside the acting subalgebra")
        return self.action_coords(c)


def fiber_trivial(group: Group, h: Subalgebra) -> HModule:
    return HModule(group, h, [zeros(1, 1) for _ in h.basis], ("trivial",))


def fiber_character(group: Group, h: Subalgebra, values) -> HModule:
    """One-dimensional h-module x -> value(x); values align with h.basis
    and must kill every bracket."""
    vals = [fr(v) for v in values]
    if len(vals) != h.dim:
        raise DegenerateInputError("need one character value per basis vector")
    mats = []
    for v in vals:
        m = zeros(1, 1)
        m[0, 0] = v
        mats.append(m)
    return HModule(group, h, mats, ("character", tuple(values)))


def fiber_restriction(group: Group, h: Subalgebra, label) -> HModule:
    """A module of the ambient algebra viewed as an h-module."""
    label = check_label(group, label)
    mod = build_module(group, label)
    mats = [mod.action(x) for x in h.basis]
    return HModule(group, h, mats, ("restriction", label))


def _nu_kernel(module: HModule, theta: InvolutionSpec) -> list[np.ndarray]:
    """Rational basis of {A : A rho(x) = rho(sigma x) A for all x in h}.

    The equivariance is over the compact form of h: an antilinear nu
    relates rho(x) to rho(dsigma(x)) where sigma = tau . theta, and on the
    rational basis that composition is what multiplies the matrices below.
    Since the module matrices are rational, the realified solution space is
    exactly two copies (real and imaginary part) of this kernel.
    """
    g = module.group
    h = module.h
    # Compose tau.theta directly: the equivariance equation makes sense for
    # any linear theta, and a non-automorphism should surface as an empty
    # kernel (no intertwiner), not as a malformed-sigma error.
    sigma_matrix = build_cartan_conjugation(g).matrix @ theta.matrix
    n = module.dim
    rows = []
    for x in h.basis:
        rho = module.action_of(x)
        y = sigma_matrix @ x
        c = h.coords(y)
        if c is None:
            raise DegenerateInputError("sigma does not stabilize the subalgebra")
        rho_s = module.action_coords(c)
        # (A rho - rho_s A) = 0, unknowns A_{ab} in row-major order
        for a in range(n):
            for b in range(n):
                row = zeros(n * n)
                for cidx in range(n):
                    row[a * n + cidx] = row[a * n + cidx] + rho[cidx, b]
                    row[cidx * n + b] = row[cidx * n + b] - rho_s[a, cidx]
                rows.append(row)
    if not rows:
        # no constraints: the kernel is the full matrix space
        units = []
        for a in range(n):
            for b in range(n):
                m = zeros(n, n)
                m[a, b] = fr(1)
                units.append(m)
        return units
    sols = nullspace(column_stack(rows).T)
    return [v.reshape(n, n).copy() for v in sols]


def nu_solution_space_dim(module: HModule, theta: InvolutionSpec) -> int:
    """Realified dimension of the equivariance solution space."""
    return 2 * len(_nu_kernel(module, theta))


def _rational_sqrt(x: Fraction) -> Fraction | None:
    from math import isqrt

    if x < 0:
        return None
    pn, pd = isqrt(x.numerator), isqrt(x.denominator)
    if pn * pn == x.numerator and pd * pd == x.denominator:
        return Fraction(pn, pd)
    return None


def solve_nu(module: HModule, theta: InvolutionSpec) -> AntilinearMap:
    """The antilinear intertwiner nu with nu rho(x) = rho(dsigma x) nu.

    Normalized so that nu squares to the identity and the first nonzero
    matrix entry is positive real.  A strictly negative square that no
    phase can repair is the quaternionic obstruction and is reported as
    such rather than silently rescaled.
    """
    kernel = _nu_kernel(module, theta)
    if not kernel:
        raise NoIntertwinerError(
            "no antilinear intertwiner exists; the involution is not "
            "implementable on this module"
        )
    n = module.dim
    a0 = None
    scale2 = None
    for cand in kernel:
        sq = cand @ cand  # rational, so conj() is a no-op
        s = sq[0, 0]
        if is_zero(sq - s * eye(n)) and s != 0:
            a0, scale2 = cand, s
            break
    if a0 is None and len(kernel) > 1:
        # reducible case: the identity may live in the kernel span even
        # though no single basis element squares to a scalar
        from .linalg import solve

        cols = column_stack([cand.reshape(-1) for cand in kernel])
        if solve(cols, eye(n).reshape(-1)) is not None:
            a0, scale2 = eye(n), fr(1)
    if a0 is None:
        raise DegenerateInputError(
            "no solution with scalar square; cannot normalize an involution"
        )
    if scale2 < 0:
        raise NuSquareObstructionError(
            f"nu squared is {scale2} times the identity; no phase fixes a "
            "negative square (quaternionic type)"
        )
    root = _rational_sqrt(scale2)
    if root is None:
        raise DegenerateInputError(
            f"normalization scale {scale2} is not a rational square"
        )
    a = a0 / root
    flat = a.reshape(-1)
    lead = next(x for x in flat if x != 0)
    if lead < 0:
        a = -a
    nu = AntilinearMap(a, zeros(n, n))
    assert nu.is_involutive()
    return nu


# ---- bundle assembly ----------------------------------------------------------


@dataclass
class BundleCertificate:
    """Exact data for the antiholomorphic involution of G x_H V.

    checks record the three certificate conditions: sigma is an involution,
    sigma factors as commuting tau and theta, and nu intertwines the fiber
    action with its sigma-twist over every basis vector of h.
    """

    group: Group
    h: Subalgebra
    fiber: HModule
    theta: InvolutionSpec
    sigma: InvolutionSpec
    nu: AntilinearMap
    adapted: AdaptednessReport
    checks: dict = field(default_factory=dict)

    def verify(self) -> dict:
        g = self.group
        tau = build_cartan_conjugation(g)
        sq_ok = self.sigma.squares_to_identity()
        prod = tau.matrix @ self.theta.matrix
        comm_ok = is_zero(prod - self.theta.matrix @ tau.matrix) and is_zero(
            self.sigma.matrix - prod
        )
        equi_ok = True
        for x in self.h.basis:
            rho = self.fiber.action_of(x)
            rho_s = self.fiber.action_of(self.sigma.matrix @ x)
            # complex A = re + i im against rational rho: both parts intertwine
            if not is_zero(self.nu.re @ rho - rho_s @ self.nu.re):
                equi_ok = False
            if not is_zero(self.nu.im @ rho - rho_s @ self.nu.im):
                equi_ok = False
        return {
            "sigma_squares_to_identity": sq_ok,
            "sigma_is_commuting_product": comm_ok,
            "nu_equivariant_over_h": equi_ok,
        }

    def as_dict(self) -> dict:
        return {
            "group": self.group.name,
            "subalgebra_dim": self.h.dim,
            "fiber": list(self.fiber.descriptor),
            "fiber_dim": self.fiber.dim,
            "adapted": self.adapted.as_dict(),
            "nu_matrix": [
                [
                    str(self.nu.re[i, j])
                    if self.nu.im[i, j] == 0
                    else f"{self.nu.re[i, j]}+{self.nu.im[i, j]}i"
                    for j in range(self.nu.dim)
                ]
                for i in range(self.nu.dim)
            ],
            "checks": dict(self.checks),
        }


def assemble_bundle_involution(
    group: Group,
    h: Subalgebra,
    fiber: HModule,
    theta: InvolutionSpec | None = None,
) -> BundleCertificate:
    """Assemble and exactly verify (sigma, nu) for the bundle G x_H V."""
    theta = theta if theta is not None else build_weyl_involution(group)
    report = is_adapted(group, h, theta)
    if not report.verdict:
        raise NotAdaptedError(
            "subalgebra is not adapted: "
            f"theta_stable={report.theta_stable}, "
            f"restriction_is_weyl={report.restriction_is_weyl}"
        )
    sigma = build_sigma(group, theta)
    nu = solve_nu(fiber, theta)
    cert = BundleCertificate(group, h, fiber, theta, sigma, nu, report)
    cert.checks = cert.verify()
    if not all(cert.checks.values()):
        raise DegenerateInputError(f"certificate checks failed: {cert.checks}")
    return cert


# ---- Phi functions and orbit preservation -------------------------------------


class Phi:
    """Sum of |f_j|^2 over an orthonormal family; invariant under the
    compact group and, for correctly assembled bundles, under mu."""

    def __init__(self, functions, evaluator, name: str):
        self.functions = functions
        self.evaluator = evaluator
        self.name = name

    def eval(self, sample) -> float:
        total = 0.0
        for f in self.functions:
            val = 0j
            for key, coeff in f.items():
                val += coeff * self.evaluator(key, sample)
            total += abs(val) ** 2
        return total


def build_phi(functions, norm2, evaluator, name: str = "phi", tolerance: float = 1e-10) -> Phi:
    """Gram-verify an orthonormal family and wrap it as a Phi evaluator.

    Functions are dicts over mutually orthogonal basis keys; norm2 gives
    each key's squared norm under the invariant inner product.
    """
    n = len(functions)
    gram = np.zeros((n, n), dtype=complex)
    for r in range(n):
        for s in range(n):
            acc = 0j
            for key, c in functions[r].items():
                if key in functions[s]:
                    acc += c * np.conj(functions[s][key]) * norm2(key)
            gram[r, s] = acc
    if np.max(np.abs(gram - np.eye(n))) > tolerance:
        raise NotOrthonormalError(
            f"family is not orthonormal; max Gram defect "
            f"{np.max(np.abs(gram - np.eye(n))):.3e}"
        )
    return Phi(functions, evaluator, name)


def _sym_rep_matrix(g: np.ndarray, d: int) -> np.ndarray:
    """pi(g) on degree-d polynomials in two variables, unitarized monomial
    basis; pi(g)f = f(g^{-1} x) with the inverse taken by adjugate."""
    a, b = g[0, 0], g[0, 1]
    c, e = g[1, 0], g[1, 1]
    det = a * e - b * c
    inv = np.array([[e, -b], [-c, a]]) / det
    cols = []
    for j in range(d + 1):
        # monomial x^(d-j) y^j pulled back through inv
        p1 = np.zeros(d + 1, dtype=complex)  # (inv00 x + inv01 y)^(d-j)
        for t in range(d - j + 1):
            p1[t] = (
                _binom(d - j, t) * inv[0, 0] ** (d - j - t) * inv[0, 1] ** t
            )
        p2 = np.zeros(d + 1, dtype=complex)
        for t in range(j + 1):
            p2[t] = _binom(j, t) * inv[1, 0] ** (j - t) * inv[1, 1] ** t
        col = np.convolve(p1[: d - j + 1], p2[: j + 1])
        cols.append(col)
    m = np.stack(cols, axis=1)
    w = np.array([sqrt(factorial(d - i) * factorial(i)) for i in range(d + 1)])
    return m * w[:, None] / w[None, :]


def _binom(n: int, k: int) -> int:
    from math import comb

    return comb(n, k)


@dataclass
class BundleModel:
    """A shipped analytic model of G x_H V with its Phi family."""

    name: str
    certificate: BundleCertificate
    phis: list[Phi]
    sampler: object  # rng -> sample
    mu: object  # (sample, nu) -> sample

    def apply_mu(self, sample, nu: AntilinearMap | None = None):
        return self.mu(sample, nu if nu is not None else self.certificate.nu)


def _rand_rational(rng, lo=-3, hi=3) -> float:
    num = rng.randint(lo, hi)
    den = rng.randint(1, 3)
    return num / den


def _rand_complex(rng) -> complex:
    return complex(_rand_rational(rng), _rand_rational(rng))


def _rand_sl2(rng) -> np.ndarray:
    """A generic determinant-one matrix from the big cell."""
    b = _rand_complex(rng)
    c = _rand_complex(rng)
    s = 0
    while s == 0:
        s = _rand_rational(rng)
    upper = np.array([[1, b], [0, 1]], dtype=complex)
    diag = np.array([[s, 0], [0, 1 / s]], dtype=complex)
    lower = np.array([[1, 0], [c, 1]], dtype=complex)
    return upper @ diag @ lower


def bundle_cartan_weight2() -> BundleModel:
    """G = SL2, H = torus, fiber = the weight-2 character line.

    Functions on the model are matrix coefficients in the unitarized
    symmetric-power bases times fiber powers, with the column weight
    matched to the character so each function descends to the quotient.
    The family includes one function mixing two isotypic columns: the
    coordinate ring here is not multiplicity-free, and that diagonal
    member is exactly what catches a corrupted fiber involution.
    """
    from .rootsys import parse_group, standard_subalgebra

    g = parse_group("A1")
    h = standard_subalgebra(g, "cartan")
    fiber = fiber_character(g, h, [2])
    cert = assemble_bundle_involution(g, h, fiber)

    def evaluator(key, sample):
        d, i, j, k = key
        gm, v = sample
        return _sym_rep_matrix(gm, d)[i, j] * v**k

    def column_for(d: int, k: int) -> int:
        # basis vector index j has torus weight 2j - d; the fiber power k
        # needs column weight 2k
        j = (2 * k + d) // 2
        assert 2 * j - d == 2 * k
        return j

    def product_family(d: int, k: int) -> Phi:
        j = column_for(d, k)
        funcs = [{(d, i, j, k): sqrt(d + 1)} for i in range(d + 1)]
        return build_phi(funcs, lambda key: 1.0 / (key[0] + 1), evaluator, f"phi_{d}_{k}")

    def diagonal_family() -> Phi:
        # spans the same left-K-type with both admissible columns at d = 2
        j0, j1 = column_for(2, 0), column_for(2, 1)
        funcs = [
            {(2, i, j0, 0): sqrt(3.0 / 2.0), (2, i, j1, 1): sqrt(3.0 / 2.0)}
            for i in range(3)
        ]
        return build_phi(funcs, lambda key: _mixed_norm2(key), evaluator, "phi_diag")

    def _mixed_norm2(key):
        d, i, j, k = key
        return 1.0 / (d + 1)  # the fiber factor has modulus one on the model

    phis = [
        product_family(0, 0),
        product_family(2, 0),
        product_family(2, 1),
        product_family(4, 1),
        product_family(4, 2),
        diagonal_family(),
    ]

    def sampler(rng):
        v = _rand_complex(rng)
        return (_rand_sl2(rng), v)

    def mu(sample, nu: AntilinearMap):
        gm, v = sample
        c = complex(float(nu.re[0, 0]), float(nu.im[0, 0]))
        return (np.conj(gm), c * np.conj(v))

    return BundleModel("A1 cartan, weight-2 line", cert, phis, sampler, mu)


def bundle_full_defining() -> BundleModel:
    """G = H = SL2 with the defining fiber: the bundle is the module itself."""
    from .rootsys import parse_group, standard_subalgebra

    g = parse_group("A1")
    h = standard_subalgebra(g, "full")
    fiber = fiber_restriction(g, h, (1,))
    cert = assemble_bundle_involution(g, h, fiber)

    def evaluator(key, sample):
        a, b = key
        return sample[0] ** a * sample[1] ** b

    def degree_family(d: int) -> Phi:
        funcs = [
            {(d - j, j): 1.0 / sqrt(factorial(d - j) * factorial(j))}
            for j in range(d + 1)
        ]
        return build_phi(
            funcs,
            lambda key: float(factorial(key[0]) * factorial(key[1])),
            evaluator,
            f"phi_{d}",
        )

    phis = [degree_family(d) for d in range(5)]

    def sampler(rng):
        return np.array([_rand_complex(rng), _rand_complex(rng)])

    def mu(sample, nu: AntilinearMap):
        return nu.matrix_complex() @ np.conj(sample)

    return BundleModel("A1 full, defining fiber", cert, phis, sampler, mu)


def bundle_diagonal_trivial() -> BundleModel:
    """G = SL2 x SL2, H = diagonal, trivial fiber: the group manifold."""
    from .rootsys import parse_group, standard_subalgebra

    g = parse_group("A1xA1")
    h = standard_subalgebra(g, "diagonal")
    fiber = fiber_trivial(g, h)
    cert = assemble_bundle_involution(g, h, fiber)

    def evaluator(key, sample):
        d, i, j = key
        g1, g2 = sample
        det = g2[0, 0] * g2[1, 1] - g2[0, 1] * g2[1, 0]
        inv2 = np.array([[g2[1, 1], -g2[0, 1]], [-g2[1, 0], g2[0, 0]]]) / det
        return _sym_rep_matrix(g1 @ inv2, d)[i, j]

    def degree_family(d: int) -> Phi:
        funcs = [
            {(d, i, j): sqrt(d + 1)} for i in range(d + 1) for j in range(d + 1)
        ]
        return build_phi(funcs, lambda key: 1.0 / (key[0] + 1), evaluator, f"phi_{d}")

    phis = [degree_family(d) for d in range(5)]

    def sampler(rng):
        return (_rand_sl2(rng), _rand_sl2(rng))

    def mu(sample, nu: AntilinearMap):
        g1, g2 = sample
        return (np.conj(g1), np.conj(g2))

    return BundleModel("A1xA1 diagonal, trivial fiber", cert, phis, sampler, mu)


SHIPPED_BUNDLES = {
    "cartan_weight2": bundle_cartan_weight2,
    "full_defining": bundle_full_defining,
    "diagonal_trivial": bundle_diagonal_trivial,
}


def orbit_preservation_check(
    bundle: BundleModel,
    samples=None,
    n_samples: int = 20,
    seed: int = 0,
    tolerance: float = 1e-8,
    nu: AntilinearMap | None = None,
) -> dict:
    """Max |Phi(mu(x)) - Phi(x)| over samples and the Phi family.

    Report-only: the caller decides what to do with a residual above
    tolerance (the sign-flipped negative control relies on that)."""
    import random as _random

    if samples is None:
        rng = _random.Random(seed)
        samples = [bundle.sampler(rng) for _ in range(n_samples)]
    worst = 0.0
    per_phi = {}
    for phi in bundle.phis:
        m = 0.0
        for x in samples:
            mx = bundle.apply_mu(x, nu)
            m = max(m, abs(phi.eval(mx) - phi.eval(x)))
        per_phi[phi.name] = m
        worst = max(worst, m)
    return {
        "max_residual": worst,
        "per_function": per_phi,
        "n_samples": len(samples),
        "n_functions": len(bundle.phis),
        "tolerance": tolerance,
        "within_tolerance": worst <= tolerance,
    }
