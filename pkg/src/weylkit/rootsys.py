"""Root data, Chevalley bases, and Weyl groups for reductive types of rank <= 3.

Supported descriptors: products of A1, A2, B2, G2 joined by "x", with an
optional central torus suffix "+Tk"; total rank (simple ranks plus k) at
most 3.  Weights and root-space labels use fundamental-weight coordinates
for the semisimple part followed by k integer torus coordinates.

Structure constants come from hand-coded faithful seed representations of
each simple type (defining modules for A1/A2, the 4-dimensional spinor for
B2, the 7-dimensional fundamental for G2).  Root vectors for non-simple
roots are generated by the extraspecial-pair recursion, which pins every
sign; the resulting table is exact over the rationals.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DegenerateInputError,
    NonNilpotentDirectionError,
    ParseError,
    UnknownNameError,
    UnsupportedTypeError,
)
from .linalg import F0, F1, SpanBasis, fmat, fr, fvec, eye, is_zero, rref, zeros

# Cartan matrices use the convention A[i][j] = <alpha_j, alpha_i^vee>, so
# column j holds the fundamental-weight coordinates of alpha_j.  d[i] is the
# half squared length of alpha_i (short roots normalized to length^2 = 2).
#
# Seed data: "weights" lists the seed module's weights in fundamental
# coordinates, in the basis order of the matrices; "e"/"f" give the nonzero
# entries of the simple Chevalley generators as (row, col, value).
_SEED_DATA = {
    "A1": {
        "A": [[2]],
        "d": [1],
        "weights": [(1,), (-1,)],
        "e": {0: [(0, 1, 1)]},
        "f": {0: [(1, 0, 1)]},
    },
    "A2": {
        "A": [[2, -1], [-1, 2]],
        "d": [1, 1],
        "weights": [(1, 0), (-1, 1), (0, -1)],
        "e": {0: [(0, 1, 1)], 1: [(1, 2, 1)]},
        "f": {0: [(1, 0, 1)], 1: [(2, 1, 1)]},
    },
    # alpha_1 long, alpha_2 short; seed is the spinor module V(omega_2)
    "B2": {
        "A": [[2, -1], [-2, 2]],
        "d": [2, 1],
        "weights": [(0, 1), (1, -1), (-1, 1), (0, -1)],
        "e": {0: [(1, 2, 1)], 1: [(0, 1, 1), (2, 3, 1)]},
        "f": {0: [(2, 1, 1)], 1: [(1, 0, 1), (3, 2, 1)]},
    },
    # alpha_1 short; seed is the 7-dimensional V(omega_1)
    "G2": {
        "A": [[2, -3], [-1, 2]],
        "d": [1, 3],
        "weights": [(1, 0), (-1, 1), (2, -1), (0, 0), (-2, 1), (1, -1), (-1, 0)],
        "e": {0: [(0, 1, 1), (2, 3, 2), (3, 4, 1), (5, 6, 1)], 1: [(1, 2, 1), (4, 5, 1)]},
        "f": {0: [(1, 0, 1), (3, 2, 1), (4, 3, 2), (6, 5, 1)], 1: [(2, 1, 1), (5, 4, 1)]},
    },
}

_FACTOR_NAMES = ("A1", "A2", "B2", "G2")


def _sparse_matrix(n: int, entries: Sequence[tuple[int, int, int]]) -> np.ndarray:
    m = zeros(n, n)
    for i, j, v in entries:
        m[i, j] = fr(v)
    return m


def _string_closure_posroots(A: np.ndarray) -> list[tuple[int, ...]]:
    """Positive roots from the Cartan matrix, via root strings.

    gamma + alpha_i is a root iff q = p - <gamma, alpha_i^vee> > 0, where p
    is the depth of the alpha_i-string below gamma.
    """
    r = A.shape[0]
    simple = [tuple(1 if k == i else 0 for k in range(r)) for i in range(r)]
    roots: set[tuple[int, ...]] = set(simple)
    frontier = list(simple)
    while frontier:
        nxt: list[tuple[int, ...]] = []
        for c in frontier:
            for i in range(r):
                p = 0
                while True:
                    down = tuple(c[k] - (p + 1) * (1 if k == i else 0) for k in range(r))
                    if down in roots or tuple(-x for x in down) in roots:
                        p += 1
                    else:
                        break
                pairing = sum(int(A[i, k]) * c[k] for k in range(r))
                if p - pairing > 0:
                    up = tuple(c[k] + (1 if k == i else 0) for k in range(r))
                    if up not in roots:
                        roots.add(up)
                        nxt.append(up)
        frontier = nxt
    return sorted(roots, key=lambda c: (sum(c), c))


@lru_cache(maxsize=None)
def _factor(letter: str) -> dict:
    """Chevalley generator matrices for one simple type, every positive root."""
    data = _SEED_DATA[letter]
    A = fmat(data["A"])
    r = A.shape[0]
    posroots = _string_closure_posroots(A)
    allroots = set(posroots) | {tuple(-x for x in c) for c in posroots}
    n = len(data["weights"])

    hmats = []
    for i in range(r):
        h = zeros(n, n)
        for a, w in enumerate(data["weights"]):
            h[a, a] = fr(w[i])
        hmats.append(h)

    emats: dict[tuple[int, ...], np.ndarray] = {}
    fmats: dict[tuple[int, ...], np.ndarray] = {}
    for i in range(r):
        simple = tuple(1 if k == i else 0 for k in range(r))
        emats[simple] = _sparse_matrix(n, data["e"][i])
        fmats[simple] = _sparse_matrix(n, data["f"][i])

    # Extraspecial pairs: for gamma of height >= 2 take the decomposition
    # gamma = xi + eta with xi minimal in (height, lex) order; then
    # [e_xi, e_eta] = (p+1) e_gamma fixes e_gamma with a positive constant,
    # p being the depth of the xi-string below eta.
    pairs: dict[tuple[int, ...], tuple[tuple[int, ...], tuple[int, ...], int]] = {}
    for gamma in posroots:
        if sum(gamma) < 2:
            continue
        xi = next(
            c for c in posroots
            if tuple(g - x for g, x in zip(gamma, c)) in allroots and c != gamma
        )
        eta = tuple(g - x for g, x in zip(gamma, xi))
        p = 0
        while tuple(e - (p + 1) * x for e, x in zip(eta, xi)) in allroots:
            p += 1
        pairs[gamma] = (xi, eta, p)
        scale = fr(p + 1)
        emats[gamma] = (emats[xi] @ emats[eta] - emats[eta] @ emats[xi]) / scale
        fmats[gamma] = -(fmats[xi] @ fmats[eta] - fmats[eta] @ fmats[xi]) / scale

    return {
        "rank": r,
        "A": A,
        "d": [fr(x) for x in data["d"]],
        "posroots": posroots,
        "pairs": pairs,
        "n": n,
        "h": hmats,
        "e": emats,
        "f": fmats,
    }


def _unit(r: int, i: int) -> tuple[int, ...]:
    return tuple(1 if k == i else 0 for k in range(r))


class Group:
    """A connected reductive group descriptor with exact Chevalley data.

    Instances are interned by ``parse_group``; identity comparison is fine.
    Lie algebra basis order: coroots h_0..h_{r-1}, central torus directions
    t_0..t_{k-1}, then e_gamma over positive roots in (height, lex) order,
    then f_gamma in the same root order.
    """

    def __init__(self, letters: tuple[str, ...], torus_dim: int, name: str):
        self.letters = letters
        self.torus_dim = torus_dim
        self.name = name
        self.factors = [_factor(s) for s in letters]
        self.rank = sum(f["rank"] for f in self.factors)
        self.weight_len = self.rank + torus_dim
        offsets = []
        o = 0
        for f in self.factors:
            offsets.append(o)
            o += f["rank"]
        self._offsets = offsets

    def __repr__(self) -> str:
        return f"Group({self.name!r})"

    # ---- root bookkeeping -------------------------------------------------

    @cached_property
    def posroots(self) -> list[tuple[int, ...]]:
        out = []
        for f, o in zip(self.factors, self._offsets):
            for c in f["posroots"]:
                full = [0] * self.rank
                full[o : o + f["rank"]] = c
                out.append(tuple(full))
        return sorted(out, key=lambda c: (sum(c), c))

    @cached_property
    def _root_home(self) -> dict[tuple[int, ...], tuple[int, tuple[int, ...]]]:
        """Positive root -> (factor index, local coordinates)."""
        home = {}
        for fi, (f, o) in enumerate(zip(self.factors, self._offsets)):
            for c in f["posroots"]:
                full = [0] * self.rank
                full[o : o + f["rank"]] = c
                home[tuple(full)] = (fi, c)
        return home

    @cached_property
    def cartan_matrix(self) -> np.ndarray:
        A = zeros(self.rank, self.rank)
        for f, o in zip(self.factors, self._offsets):
            r = f["rank"]
            A[o : o + r, o : o + r] = f["A"]
        return A

    @cached_property
    def dvec(self) -> list[Fraction]:
        out: list[Fraction] = []
        for f in self.factors:
            out.extend(f["d"])
        return out

    def root_fc(self, c: tuple[int, ...]) -> tuple[int, ...]:
        """Simple-root coordinates -> fundamental coordinates (fc = A c),

        padded with zero torus coordinates."""
        A = self.cartan_matrix
        fc = [sum(int(A[i, j]) * c[j] for j in range(self.rank)) for i in range(self.rank)]
        return tuple(fc) + (0,) * self.torus_dim

    @cached_property
    def rho(self) -> tuple[int, ...]:
        return (1,) * self.rank + (0,) * self.torus_dim

    @cached_property
    def fundamental_weights(self) -> list[np.ndarray]:
        """omega_i in simple-root coordinates: the columns of A^{-1}."""
        r = self.rank
        if r == 0:
            return []
        aug = zeros(r, 2 * r)
        aug[:, :r] = self.cartan_matrix
        aug[:, r:] = eye(r)
        red, piv = rref(aug)
        assert piv == list(range(r))
        return [red[:, r + i].copy() for i in range(r)]

    # ---- Lie algebra basis ------------------------------------------------

    @cached_property
    def dim(self) -> int:
        return self.rank + self.torus_dim + 2 * len(self.posroots)

    @cached_property
    def basis_labels(self) -> list[tuple[str, object]]:
        labels: list[tuple[str, object]] = []
        labels += [("h", i) for i in range(self.rank)]
        labels += [("t", j) for j in range(self.torus_dim)]
        labels += [("e", c) for c in self.posroots]
        labels += [("f", c) for c in self.posroots]
        return labels

    @cached_property
    def _index(self) -> dict[tuple[str, object], int]:
        return {lab: i for i, lab in enumerate(self.basis_labels)}

    def gen_vector(self, kind: str, which) -> np.ndarray:
        """Coordinate vector of a basis element: ("h", i), ("t", j),

        ("e", root) or ("f", root) with the root in simple coordinates."""
        v = zeros(self.dim)
        v[self._index[(kind, which)]] = F1
        return v

    def simple_root(self, i: int) -> tuple[int, ...]:
        return _unit(self.rank, i)

    @cached_property
    def bracket_table(self) -> list[list[np.ndarray]]:
        dim = self.dim
        table = [[None] * dim for _ in range(dim)]
        for i in range(dim):
            for j in range(dim):
                table[i][j] = zeros(dim)

        for fi, (f, o) in enumerate(zip(self.factors, self._offsets)):
            r, n = f["rank"], f["n"]
            local: list[tuple[int, np.ndarray]] = []
            for i in range(r):
                local.append((self._index[("h", o + i)], f["h"][i]))
            for c in f["posroots"]:
                full = [0] * self.rank
                full[o : o + r] = c
                local.append((self._index[("e", tuple(full))], f["e"][c]))
                local.append((self._index[("f", tuple(full))], f["f"][c]))
            span = SpanBasis(n * n)
            for _, m in local:
                added = span.add(m.reshape(-1))
                assert added, "seed representation not faithful"
            for a, (ia, ma) in enumerate(local):
                for ib, mb in local[a + 1 :]:
                    br = ma @ mb - mb @ ma
                    coords = span.express(br.reshape(-1))
                    assert coords is not None, "bracket left the algebra span"
                    v = zeros(dim)
                    for k, (ik, _) in enumerate(local):
                        v[ik] = coords[k]
                    table[ia][ib] = v
                    table[ib][ia] = -v
        return table

    def bracket(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        table = self.bracket_table
        out = zeros(self.dim)
        for i in range(self.dim):
            if x[i] == 0:
                continue
            for j in range(self.dim):
                if y[j] == 0:
                    continue
                out = out + x[i] * y[j] * table[i][j]
        return out

    @cached_property
    def ad_basis(self) -> list[np.ndarray]:
        mats = []
        for i in range(self.dim):
            m = zeros(self.dim, self.dim)
            for j in range(self.dim):
                m[:, j] = self.bracket_table[i][j]
            mats.append(m)
        return mats

    def ad(self, x: np.ndarray) -> np.ndarray:
        m = zeros(self.dim, self.dim)
        for i in range(self.dim):
            if x[i] != 0:
                m = m + x[i] * self.ad_basis[i]
        return m

    def exp_ad(self, x: np.ndarray) -> np.ndarray:
        """exp(ad x) for ad-nilpotent x, summed exactly."""
        m = self.ad(x)
        out = eye(self.dim)
        term = eye(self.dim)
        for k in range(1, self.dim + 2):
            term = (term @ m) / fr(k)
            if is_zero(term):
                return out
            out = out + term
        raise NonNilpotentDirectionError("direction is not ad-nilpotent")

    @cached_property
    def extraspecial_pairs(self) -> dict[tuple[int, ...], tuple[tuple[int, ...], tuple[int, ...], int]]:
        """Non-simple positive root -> (xi, eta, p) with gamma = xi + eta and

        e_gamma = [e_xi, e_eta]/(p+1), in global simple-root coordinates."""
        out = {}
        for f, o in zip(self.factors, self._offsets):
            r = f["rank"]

            def emb(c):
                full = [0] * self.rank
                full[o : o + r] = c
                return tuple(full)

            for gamma, (xi, eta, p) in f["pairs"].items():
                out[emb(gamma)] = (emb(xi), emb(eta), p)
        return out

    def complete_action(self, partial: dict[tuple[str, object], np.ndarray]) -> list[np.ndarray]:
        """Extend a representation given on h/t and simple e/f to the whole

        basis, by the same extraspecial recursion that defined the
        non-simple root vectors; any homomorphism must satisfy it."""
        mats = dict(partial)
        for gamma in sorted(self.extraspecial_pairs, key=lambda c: (sum(c), c)):
            xi, eta, p = self.extraspecial_pairs[gamma]
            scale = fr(p + 1)
            exi, eeta = mats[("e", xi)], mats[("e", eta)]
            fxi, feta = mats[("f", xi)], mats[("f", eta)]
            mats[("e", gamma)] = (exi @ eeta - eeta @ exi) / scale
            mats[("f", gamma)] = -(fxi @ feta - feta @ fxi) / scale
        return [mats[lab] for lab in self.basis_labels]

    def torus_ad(self, s: Sequence[Fraction]) -> np.ndarray:
        """Adjoint action of the torus point with coroot parameters s.

        Acts by prod s_i^{<gamma, alpha_i^vee>} on the gamma root space and
        trivially on the Cartan; central torus coordinates do not appear
        because they act trivially in the adjoint representation.
        """
        if len(s) != self.rank:
            raise DegenerateInputError("torus point needs one parameter per simple root")
        vals = [fr(x) for x in s]
        if any(v == 0 for v in vals):
            raise DegenerateInputError("torus parameters must be nonzero")
        m = eye(self.dim)
        for c in self.posroots:
            fc = self.root_fc(c)
            scale = F1
            for i in range(self.rank):
                e = fc[i]
                scale *= vals[i] ** e
            m[self._index[("e", c)], self._index[("e", c)]] = scale
            m[self._index[("f", c)], self._index[("f", c)]] = 1 / scale
        return m

    @cached_property
    def killing_form(self) -> np.ndarray:
        k = zeros(self.dim, self.dim)
        for i in range(self.dim):
            for j in range(i, self.dim):
                tr = F0
                prod = self.ad_basis[i] @ self.ad_basis[j]
                for a in range(self.dim):
                    tr += prod[a, a]
                k[i, j] = tr
                k[j, i] = tr
        return k

    @cached_property
    def invariant_form(self) -> np.ndarray:
        """Killing form extended by the identity on central torus coordinates

        (the honest Killing form vanishes there, which would misreport every
        subalgebra meeting the center as non-reductive)."""
        k = self.killing_form.copy()
        for j in range(self.torus_dim):
            idx = self._index[("t", j)]
            k[idx, idx] = k[idx, idx] + F1
        return k

    # ---- weights and the Weyl group ----------------------------------------

    @cached_property
    def _wform_matrix(self) -> np.ndarray:
        # (omega_i, omega_j) = d_i (A^{-1})_{ij}; symmetric since DA is.
        r = self.rank
        if r == 0:
            return zeros(0, 0)
        A = self.cartan_matrix
        aug = zeros(r, 2 * r)
        aug[:, :r] = A
        aug[:, r:] = eye(r)
        red, piv = rref(aug)
        assert piv == list(range(r))
        ainv = red[:, r:]
        m = zeros(r, r)
        for i in range(r):
            for j in range(r):
                m[i, j] = self.dvec[i] * ainv[i, j]
        return m

    def wform(self, mu: Sequence[int], nu: Sequence[int]) -> Fraction:
        """Weyl-invariant inner product on weights, normalized so short roots

        of each factor have squared length 2; torus coordinates pair by the
        standard dot product."""
        m = self._wform_matrix
        r = self.rank
        total = F0
        for i in range(r):
            for j in range(r):
                if mu[i] and nu[j]:
                    total += fr(mu[i]) * m[i, j] * fr(nu[j])
        for j in range(self.torus_dim):
            total += fr(mu[r + j]) * fr(nu[r + j])
        return total

    def reflect(self, weight: Sequence[int], i: int) -> tuple[int, ...]:
        A = self.cartan_matrix
        fi = weight[i]
        out = list(weight)
        for k in range(self.rank):
            out[k] = weight[k] - fi * int(A[k, i])
        return tuple(out)

    def is_dominant(self, weight: Sequence[int]) -> bool:
        return all(weight[i] >= 0 for i in range(self.rank))

    def dom_rep(self, weight: Sequence[int]) -> tuple[int, ...]:
        w = tuple(weight)
        while True:
            i = next((i for i in range(self.rank) if w[i] < 0), None)
            if i is None:
                return w
            w = self.reflect(w, i)

    @cached_property
    def _weyl_table(self) -> tuple[list[np.ndarray], list[tuple[int, ...]]]:
        # Breadth-first closure over simple reflections.  Because each level
        # appends one letter, the recorded word for an element is reduced.
        r = self.rank
        if r == 0:
            return [zeros(0, 0)], [()]
        gens = []
        for i in range(r):
            s = eye(r)
            for k in range(r):
                s[k, i] = s[k, i] - self.cartan_matrix[k, i]
            gens.append(s)
        ident = eye(r)
        seen = {tuple(ident.reshape(-1)): ((), ident)}
        frontier = [((), ident)]
        while frontier:
            nxt = []
            for word, w in frontier:
                for i, s in enumerate(gens):
                    prod = s @ w
                    key = tuple(prod.reshape(-1))
                    if key not in seen:
                        entry = ((i,) + word, prod)
                        seen[key] = entry
                        nxt.append(entry)
            frontier = nxt
        mats = [w for _, w in seen.values()]
        words = [word for word, _ in seen.values()]
        return mats, words

    @cached_property
    def weyl_elements(self) -> list[np.ndarray]:
        return self._weyl_table[0]

    @cached_property
    def longest_weyl(self) -> np.ndarray:
        return self._longest_entry[0]

    @cached_property
    def longest_weyl_word(self) -> tuple[int, ...]:
        """A reduced word in simple reflections mapping all positive roots
        to negative ones; its length equals the number of positive roots."""
        return self._longest_entry[1]

    @cached_property
    def _longest_entry(self) -> tuple[np.ndarray, tuple[int, ...]]:
        if self.rank == 0:
            raise DegenerateInputError("torus-only group has no longest Weyl element")
        mats, words = self._weyl_table
        neg = {tuple(-x for x in self.root_fc(c)[: self.rank]) for c in self.posroots}
        for w, word in zip(mats, words):
            if all(
                tuple(self.apply_weyl(w, self.root_fc(c))[: self.rank]) in neg
                for c in self.posroots
            ):
                assert len(word) == len(self.posroots)
                return w, word
        raise AssertionError("no longest element found")

    def apply_weyl(self, w: np.ndarray, weight: Sequence[int]) -> tuple[int, ...]:
        r = self.rank
        out = []
        for i in range(r):
            x = sum(w[i, j] * fr(weight[j]) for j in range(r)) if r else F0
            assert x.denominator == 1
            out.append(int(x))
        return tuple(out) + tuple(int(weight[r + j]) for j in range(self.torus_dim))

    def dual_label(self, label: Sequence[int]) -> tuple[int, ...]:
        """Highest weight of the dual module: -w0(label), torus negated."""
        if self.rank == 0:
            return tuple(-int(x) for x in label)
        w0 = self.longest_weyl
        img = self.apply_weyl(w0, label)
        return tuple(-x for x in img)


_GROUP_CACHE: dict[str, Group] = {}


def parse_group(name: str) -> Group:
    """Parse a descriptor like "A2", "A1xA1", "B2+T1", "T2"."""
    s = name.strip()
    if not s:
        raise ParseError("empty group descriptor")
    parts = [p.strip() for p in s.split("+")]
    if len(parts) > 2:
        raise ParseError(f"too many '+' blocks in {name!r}")
    base = parts[0]
    torus = 0
    if len(parts) == 2:
        m = re.fullmatch(r"T([0-9]+)", parts[1])
        if not m:
            raise ParseError(f"torus suffix must look like T1, got {parts[1]!r}")
        torus = int(m.group(1))
    letters: list[str] = []
    m = re.fullmatch(r"T([0-9]+)", base)
    if m:
        if len(parts) == 2:
            raise ParseError(f"two torus blocks in {name!r}")
        torus = int(m.group(1))
    else:
        for tok in base.split("x"):
            tok = tok.strip()
            if tok in _FACTOR_NAMES:
                letters.append(tok)
            elif re.fullmatch(r"[A-Za-z][0-9]+", tok):
                raise UnsupportedTypeError(f"simple type {tok!r} is not supported")
            else:
                raise ParseError(f"cannot parse factor {tok!r}")
    rank = sum(_factor(s)["rank"] for s in letters)
    if rank + torus == 0:
        raise ParseError("group has rank zero")
    if rank + torus > 3:
        raise UnsupportedTypeError(f"total rank {rank + torus} exceeds 3")
    canonical = "x".join(letters)
    if torus:
        canonical = f"{canonical}+T{torus}" if canonical else f"T{torus}"
    if canonical not in _GROUP_CACHE:
        _GROUP_CACHE[canonical] = Group(tuple(letters), torus, canonical)
    return _GROUP_CACHE[canonical]


class Subalgebra:
    """A linear subspace of the Lie algebra, stored as an echelonized basis.

    Closure under the bracket is checked on demand, not at construction:
    several ops accept arbitrary subspaces and report their own errors.
    """

    def __init__(self, group: Group, vectors: Iterable[np.ndarray], name: str | None = None):
        self.group = group
        span = SpanBasis(group.dim)
        basis = []
        for v in vectors:
            if span.add(v):
                basis.append(span.rows[-1])
        self.basis = basis
        self._span = span
        self.name = name

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v: np.ndarray) -> bool:
        return self._span.contains(v)

    def coords(self, v: np.ndarray) -> np.ndarray | None:
        """Coordinates of v over self.basis, or None if v lies outside."""
        rows = self.basis
        rem = v.copy()
        out = zeros(len(rows))
        for i, row in enumerate(rows):
            p = self._span.pivots[i]
            if rem[p] != 0:
                out[i] = rem[p]
                rem = rem - rem[p] * row
        return out if is_zero(rem) else None

    def is_closed(self) -> bool:
        g = self.group
        for i, x in enumerate(self.basis):
            for y in self.basis[i + 1 :]:
                if not self.contains(g.bracket(x, y)):
                    return False
        return True

    def __repr__(self) -> str:
        tag = self.name or "span"
        return f"Subalgebra({self.group.name}, {tag}, dim={self.dim})"


_STANDARD_NAMES = ("full", "zero", "cartan", "borel", "nilradical", "diagonal", "principal")


def standard_subalgebra(group: Group, name: str) -> Subalgebra:
    """Named subalgebras: full, zero, cartan, borel, nilradical, diagonal
    (two equal simple factors, no torus), principal (a principal sl2 of the
    semisimple part).

    The borel is the span of the Cartan and the negative root vectors, and
    the nilradical is its derived algebra (the negative root vectors alone).
    Sphericality of a pair is insensitive to the choice of side, but the
    side is fixed so that certificates and fibration reports are stable.
    """
    if name not in _STANDARD_NAMES:
        raise UnknownNameError(f"no standard subalgebra named {name!r}")
    g = group
    if name == "full":
        return Subalgebra(g, [g.gen_vector(*lab) for lab in g.basis_labels], name)
    if name == "zero":
        return Subalgebra(g, [], name)
    cartan = [g.gen_vector("h", i) for i in range(g.rank)]
    cartan += [g.gen_vector("t", j) for j in range(g.torus_dim)]
    if name == "cartan":
        return Subalgebra(g, cartan, name)
    if name == "borel":
        downs = [g.gen_vector("f", c) for c in g.posroots]
        return Subalgebra(g, cartan + downs, name)
    if name == "nilradical":
        return Subalgebra(g, [g.gen_vector("f", c) for c in g.posroots], name)
    if name == "diagonal":
        if g.torus_dim or len(g.letters) != 2 or g.letters[0] != g.letters[1]:
            raise DegenerateInputError(
                "diagonal needs exactly two equal simple factors and no torus"
            )
        r1 = g.factors[0]["rank"]
        vecs = []
        for i in range(r1):
            vecs.append(g.gen_vector("h", i) + g.gen_vector("h", r1 + i))
        f = g.factors[0]
        for c in f["posroots"]:
            c1 = tuple(c) + (0,) * r1
            c2 = (0,) * r1 + tuple(c)
            vecs.append(g.gen_vector("e", c1) + g.gen_vector("e", c2))
            vecs.append(g.gen_vector("f", c1) + g.gen_vector("f", c2))
        return Subalgebra(g, vecs, name)
    # principal: e = sum of simple e_i, h with alpha_i(h) = 2 for all i,
    # hence h = sum c_j h_j with A^T c = 2*ones, and f = sum c_i f_i.
    if g.rank == 0:
        raise DegenerateInputError("principal needs a semisimple part")
    At = zeros(g.rank, g.rank)
    for i in range(g.rank):
        for j in range(g.rank):
            At[i, j] = g.cartan_matrix[j, i]
    from .linalg import solve

    c = solve(At, fvec([2] * g.rank))
    assert c is not None
    e = zeros(g.dim)
    f = zeros(g.dim)
    h = zeros(g.dim)
    for i in range(g.rank):
        root = g.simple_root(i)
        e = e + g.gen_vector("e", root)
        f = f + c[i] * g.gen_vector("f", root)
        h = h + c[i] * g.gen_vector("h", i)
    return Subalgebra(g, [e, h, f], "principal")
