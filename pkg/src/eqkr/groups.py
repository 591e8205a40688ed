"""Exact root-system, weight-lattice and character arithmetic.

Supported families: SU(n), Sp(n), Spin(n), G2, F4, E6, E7, E8, U(n), and
finite products of these.  All arithmetic is exact: weights are integer
tuples, inner products are Fractions, multiplicities and dimensions are
Python ints.

Conventions
-----------
For the simply-connected families a weight is a tuple of Dynkin labels
(coordinates in the fundamental-weight basis).  The Cartan matrix is
stored as A[i][j] = <alpha_j, alpha_i^vee>, so the j-th column of A is
the j-th simple root written in the fundamental-weight basis.

U(n) is modelled directly on the lattice Z^n with Weyl group S_n:
weights are integer n-tuples, dominant means weakly decreasing, and the
determinant character (1,...,1) is invertible.  It is not treated via a
semisimple cover.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

Weight = tuple  # tuple of ints


class UnsupportedGroupError(ValueError):
    """Raised for group families or ranks outside the supported catalog."""


class DominanceError(ValueError):
    """Raised when an operation requires a dominant weight."""


# ---------------------------------------------------------------------------
# Cartan matrices (columns are simple roots in the fundamental-weight basis)
# ---------------------------------------------------------------------------

def _chain(rank):
    a = [[0] * rank for _ in range(rank)]
    for i in range(rank):
        a[i][i] = 2
        if i + 1 < rank:
            a[i][i + 1] = -1
            a[i + 1][i] = -1
    return a


def cartan_matrix(series: str, rank: int) -> tuple:
    """Cartan matrix of the given Dynkin type, Bourbaki node numbering."""
    if rank < 1:
        raise UnsupportedGroupError(f"rank {rank} invalid for type {series}")
    a = _chain(rank)
    if series == "A":
        pass
    elif series == "B":
        if rank < 2:
            raise UnsupportedGroupError("type B needs rank >= 2")
        a[rank - 1][rank - 2] = -2  # last simple root is short
    elif series == "C":
        if rank >= 2:
            a[rank - 2][rank - 1] = -2  # last simple root is long
    elif series == "D":
        if rank < 3:
            raise UnsupportedGroupError("type D needs rank >= 3")
        a[rank - 2][rank - 1] = a[rank - 1][rank - 2] = 0
        a[rank - 3][rank - 1] = a[rank - 1][rank - 3] = -1
    elif series == "E":
        if rank not in (6, 7, 8):
            raise UnsupportedGroupError("type E needs rank 6, 7 or 8")
        # Bourbaki: chain 1-3-4-...-n, node 2 attached to node 4.
        a = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]
        chain = [0] + list(range(2, rank))
        for x, y in zip(chain, chain[1:]):
            a[x][y] = a[y][x] = -1
        a[1][3] = a[3][1] = -1
    elif series == "F":
        if rank != 4:
            raise UnsupportedGroupError("type F needs rank 4")
        a[2][1] = -2  # alpha_3 short
    elif series == "G":
        if rank != 2:
            raise UnsupportedGroupError("type G needs rank 2")
        a = [[2, -3], [-1, 2]]  # alpha_1 short
    else:
        raise UnsupportedGroupError(f"unknown series {series!r}")
    return tuple(tuple(row) for row in a)


def _symmetrizers(a) -> tuple:
    """Minimal positive integers d with d_i * a[i][j] == d_j * a[j][i]."""
    rank = len(a)
    d = [None] * rank
    d[0] = Fraction(1)
    todo = [0]
    while todo:
        i = todo.pop()
        for j in range(rank):
            if a[i][j] != 0 and i != j and d[j] is None:
                d[j] = d[i] * Fraction(a[i][j], a[j][i])
                todo.append(j)
    for i in range(rank):
        if d[i] is None:  # disconnected diagram piece
            d[i] = Fraction(1)
    scale = 1
    for x in d:
        scale = scale * x.denominator // _gcd(scale, x.denominator)
    vals = [int(x * scale) for x in d]
    g = 0
    for v in vals:
        g = _gcd(g, v)
    return tuple(v // g for v in vals)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _invert_fraction_matrix(a):
    n = len(a)
    aug = [[Fraction(a[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)]
           for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


# ---------------------------------------------------------------------------
# Group specifications
# ---------------------------------------------------------------------------

_FAMILY_RE = re.compile(r"^(SU|Sp|Spin|U|G|F|E)(\d+)$")

_MIN_RANK = {"SU": 2, "Sp": 1, "U": 1, "Spin": 5}


@dataclass(frozen=True)
class GroupSpec:
    """A product of simple-or-unitary factors, e.g. (("SU", 3), ("U", 2))."""

    factors: tuple

    def __str__(self):
        return "x".join(f"{fam}{n}" for fam, n in self.factors)


def parse_group(text: str) -> GroupSpec:
    """Parse a group string like "SU3", "Sp2", "U2" or "SU2xSU2"."""
    factors = []
    for part in text.strip().split("x"):
        m = _FAMILY_RE.match(part.strip())
        if not m:
            raise UnsupportedGroupError(f"cannot parse group factor {part!r}")
        fam, n = m.group(1), int(m.group(2))
        if fam in ("G", "F", "E"):
            cartan_matrix(fam, n)  # validates the exceptional rank
        elif n < _MIN_RANK[fam]:
            raise UnsupportedGroupError(
                f"{fam}({n}) unsupported: {fam} needs n >= {_MIN_RANK[fam]}")
        factors.append((fam, n))
    if not factors:
        raise UnsupportedGroupError("empty group specification")
    return GroupSpec(tuple(factors))


# ---------------------------------------------------------------------------
# Root data
# ---------------------------------------------------------------------------

class RootData:
    """Shared interface: weights are integer tuples of length self.dim.

    Subclasses provide the simple-reflection action, pairings with simple
    coroots, the invariant inner product and dominance; the generic
    character and tensor machinery below only uses that interface.
    """

    spec: GroupSpec
    rank: int
    dim: int  # length of weight tuples

    # -- abstract primitives ------------------------------------------------
    def n_simple(self):
        raise NotImplementedError

    def pairing_simple(self, v, i):
        """<v, alpha_i^vee>."""
        raise NotImplementedError

    def reflect_simple(self, v, i):
        raise NotImplementedError

    def simple_root_vec(self, i):
        """Simple root alpha_i as a weight-lattice vector."""
        raise NotImplementedError

    def ip(self, v, w):
        """Invariant inner product, exact Fraction."""
        raise NotImplementedError

    def rho_vec(self):
        """A rho substitute: any vector with <rho, alpha_i^vee> = 1 for all i."""
        raise NotImplementedError

    def is_dominant(self, v):
        return all(self.pairing_simple(v, i) >= 0 for i in range(self.n_simple()))

    def fundamental_weights(self):
        """Ordered tuple of the fundamental-representation highest weights."""
        raise NotImplementedError

    def positive_coroot_pairing(self, v):
        """<v, 2 rho^vee> = sum over positive roots of <v, alpha^vee>."""
        raise NotImplementedError

    def zero(self):
        return (0,) * self.dim

    # -- generic machinery ----------------------------------------------------
    def check_dominant(self, v):
        if len(v) != self.dim:
            raise DominanceError(f"weight {v} has wrong length for {self.spec}")
        if not self.is_dominant(v):
            raise DominanceError(f"weight {v} is not dominant for {self.spec}")

    def dominate(self, v):
        """The dominant representative of the Weyl orbit of v."""
        v = tuple(v)
        while True:
            for i in range(self.n_simple()):
                if self.pairing_simple(v, i) < 0:
                    v = self.reflect_simple(v, i)
                    break
            else:
                return v

    def antidominate(self, v):
        """The antidominant representative (the w0-image of a dominant v)."""
        v = tuple(v)
        while True:
            for i in range(self.n_simple()):
                if self.pairing_simple(v, i) > 0:
                    v = self.reflect_simple(v, i)
                    break
            else:
                return v

    def dual_weight(self, lam):
        """Highest weight of the dual representation: -w0(lam)."""
        self.check_dominant(lam)
        return tuple(-x for x in self.antidominate(lam))

    def w0_matrix(self):
        """Longest-element action as a matrix (tuple of rows) on weight tuples."""
        cols = []
        for i in range(self.dim):
            e = tuple(1 if j == i else 0 for j in range(self.dim))
            # w0 is linear; evaluate on a dominant basis through orbits of
            # fundamental-ish vectors.  Use dominate/antidominate on e shifted
            # into the dominant cone: w0(v) = antidominant rep of orbit of v
            # only holds for dominant v, so express e via dominant vectors.
            cols.append(self._w0_on(e))
        # cols[i] = w0(e_i); matrix rows follow
        return tuple(tuple(cols[j][i] for j in range(self.dim)) for i in range(self.dim))

    def _w0_on(self, v):
        # Decompose v = a - b with a, b dominant (coordinatewise on the
        # dominant generators), using that w0 is linear.
        dom_basis = self._dominant_basis()
        coords = self._coords_in_dominant_basis(v, dom_basis)
        img = [0] * self.dim
        for c, b in zip(coords, dom_basis):
            w = self.antidominate(b)
            img = [x + c * y for x, y in zip(img, w)]
        return tuple(img)

    def _dominant_basis(self):
        raise NotImplementedError

    def _coords_in_dominant_basis(self, v, basis):
        raise NotImplementedError

    def orbit(self, v):
        """The full Weyl orbit of a weight, as a frozenset."""
        seen = {tuple(v)}
        todo = [tuple(v)]
        while todo:
            w = todo.pop()
            for i in range(self.n_simple()):
                u = self.reflect_simple(w, i)
                if u not in seen:
                    seen.add(u)
                    todo.append(u)
        return frozenset(seen)

    def key(self):
        return str(self.spec)


class SimpleRootData(RootData):
    """Root data for one simple, simply-connected factor (Dynkin labels)."""

    def __init__(self, spec: GroupSpec, series: str, rank: int):
        self.spec = spec
        self.series = series
        self.rank = rank
        self.dim = rank
        self.cartan = cartan_matrix(series, rank)
        self.d = _symmetrizers(self.cartan)
        ainv = _invert_fraction_matrix(self.cartan)
        # quadratic form on Dynkin labels: (omega_i, omega_j) = ainv[j][i]*d_j
        self.qform = tuple(tuple(ainv[j][i] * self.d[j] for j in range(rank))
                           for i in range(rank))
        self._positive_roots = None

    def n_simple(self):
        return self.rank

    def pairing_simple(self, v, i):
        return v[i]

    def reflect_simple(self, v, i):
        c = v[i]
        if c == 0:
            return tuple(v)
        col = self.cartan
        return tuple(v[j] - c * col[j][i] for j in range(self.rank))

    def simple_root_vec(self, i):
        return tuple(self.cartan[j][i] for j in range(self.rank))

    def ip(self, v, w):
        q = self.qform
        return sum(v[i] * q[i][j] * w[j] for i in range(self.rank) for j in range(self.rank)
                   if v[i] and w[j])

    def rho_vec(self):
        return (1,) * self.rank

    def fundamental_weights(self):
        return tuple(tuple(1 if j == i else 0 for j in range(self.rank))
                     for i in range(self.rank))

    def _dominant_basis(self):
        return self.fundamental_weights()

    def _coords_in_dominant_basis(self, v, basis):
        return tuple(v)

    # -- roots ---------------------------------------------------------------
    def positive_roots(self):
        """Positive roots in simple-root coordinates, deterministic order."""
        if self._positive_roots is None:
            rank = self.rank
            a = self.cartan
            simple = [tuple(1 if j == i else 0 for j in range(rank)) for i in range(rank)]
            seen = set(simple)
            todo = list(simple)
            while todo:
                c = todo.pop()
                for i in range(rank):
                    pai = sum(a[i][j] * c[j] for j in range(rank))
                    c2 = tuple(c[j] - (pai if j == i else 0) for j in range(rank))
                    if c2 not in seen:
                        seen.add(c2)
                        todo.append(c2)
            pos = sorted(c for c in seen if all(x >= 0 for x in c))
            self._positive_roots = tuple(pos)
        return self._positive_roots

    def root_to_weight(self, c):
        """Convert simple-root coordinates to Dynkin labels."""
        a = self.cartan
        return tuple(sum(a[i][j] * c[j] for j in range(self.rank)) for i in range(self.rank))

    def coroot_pairing(self, v, c):
        """<v, alpha^vee> for the root with simple-root coordinates c."""
        num = sum(c[j] * self.d[j] * v[j] for j in range(self.rank))
        dal = sum(c[j] * c[k] * self.d[k] * self.cartan[k][j]
                  for j in range(self.rank) for k in range(self.rank))
        val = Fraction(2 * num, dal)
        assert val.denominator == 1
        return int(val)

    def positive_coroot_pairing(self, v):
        return sum(self.coroot_pairing(v, c) for c in self.positive_roots())

    def diagram_automorphisms(self):
        """All permutations of simple-root indices preserving the Cartan matrix."""
        a = self.cartan
        auts = []
        for perm in itertools.permutations(range(self.rank)):
            if all(a[perm[i]][perm[j]] == a[i][j]
                   for i in range(self.rank) for j in range(self.rank)):
                auts.append(perm)
        return tuple(sorted(auts))


class UnRootData(RootData):
    """U(n) on the lattice Z^n; dominant = weakly decreasing tuples."""

    def __init__(self, spec: GroupSpec, n: int):
        self.spec = spec
        self.n = n
        self.rank = n
        self.dim = n

    def n_simple(self):
        return self.n - 1

    def pairing_simple(self, v, i):
        return v[i] - v[i + 1]

    def reflect_simple(self, v, i):
        w = list(v)
        w[i], w[i + 1] = w[i + 1], w[i]
        return tuple(w)

    def simple_root_vec(self, i):
        return tuple(1 if j == i else (-1 if j == i + 1 else 0) for j in range(self.n))

    def ip(self, v, w):
        return Fraction(sum(x * y for x, y in zip(v, w)))

    def rho_vec(self):
        # rho substitute (n-1, ..., 1, 0); differs from rho by a multiple of
        # (1,...,1), which is orthogonal to every root.
        return tuple(range(self.n - 1, -1, -1))

    def fundamental_weights(self):
        """The exterior powers of the defining representation, k = 1..n."""
        return tuple((1,) * k + (0,) * (self.n - k) for k in range(1, self.n + 1))

    def _dominant_basis(self):
        # (1,...,1,0,...,0) for k=1..n and -(1,...,1)
        basis = list(self.fundamental_weights())
        basis.append((-1,) * self.n)
        return tuple(basis)

    def _coords_in_dominant_basis(self, v, basis):
        # v = sum c_k (1^k 0^..) + c_det * (-1,...,1): solve greedily.
        coords = [0] * (self.n + 1)
        m = min(v)
        if m < 0:
            coords[self.n] = -m
            v = tuple(x - m for x in v)
        for k in range(self.n - 1, -1, -1):
            c = v[k]
            coords[k] = c
            v = tuple(x - c if j <= k else x for j, x in enumerate(v))
        return tuple(coords)

    def positive_roots(self):
        return tuple((i, j) for i in range(self.n) for j in range(i + 1, self.n))

    def positive_coroot_pairing(self, v):
        return sum(v[i] - v[j] for i, j in self.positive_roots())

    def diagram_automorphisms(self):
        if self.n <= 2:
            return ((),) if self.n == 1 else ((0,),)
        idx = tuple(range(self.n - 1))
        return tuple(sorted([idx, tuple(reversed(idx))]))


class ProductRootData(RootData):
    """Finite ordered product; weights are concatenations of factor weights."""

    def __init__(self, spec: GroupSpec, factors):
        self.spec = spec
        self.factors = tuple(factors)
        self.rank = sum(f.rank for f in factors)
        self.dim = sum(f.dim for f in factors)
        self.slices = []
        off = 0
        for f in factors:
            self.slices.append(slice(off, off + f.dim))
            off += f.dim

    def split(self, v):
        return tuple(tuple(v[s]) for s in self.slices)

    def join(self, parts):
        out = []
        for p in parts:
            out.extend(p)
        return tuple(out)

    def n_simple(self):
        return sum(f.n_simple() for f in self.factors)

    def _locate(self, i):
        for f, s in zip(self.factors, self.slices):
            if i < f.n_simple():
                return f, s, i
            i -= f.n_simple()
        raise IndexError(i)

    def pairing_simple(self, v, i):
        f, s, j = self._locate(i)
        return f.pairing_simple(tuple(v[s]), j)

    def reflect_simple(self, v, i):
        f, s, j = self._locate(i)
        part = f.reflect_simple(tuple(v[s]), j)
        out = list(v)
        out[s] = part
        return tuple(out)

    def simple_root_vec(self, i):
        f, s, j = self._locate(i)
        vec = [0] * self.dim
        vec[s] = list(f.simple_root_vec(j))
        return tuple(vec)

    def ip(self, v, w):
        return sum(f.ip(tuple(v[s]), tuple(w[s])) for f, s in zip(self.factors, self.slices))

    def rho_vec(self):
        return self.join([f.rho_vec() for f in self.factors])

    def fundamental_weights(self):
        out = []
        for f, s in zip(self.factors, self.slices):
            for w in f.fundamental_weights():
                vec = [0] * self.dim
                vec[s] = list(w)
                out.append(tuple(vec))
        return tuple(out)

    def positive_coroot_pairing(self, v):
        return sum(f.positive_coroot_pairing(tuple(v[s]))
                   for f, s in zip(self.factors, self.slices))

    def _dominant_basis(self):
        raise NotImplementedError("w0 handled factorwise for products")

    def w0_matrix(self):
        blocks = [f.w0_matrix() for f in self.factors]
        mat = [[0] * self.dim for _ in range(self.dim)]
        off = 0
        for b in blocks:
            n = len(b)
            for i in range(n):
                for j in range(n):
                    mat[off + i][off + j] = b[i][j]
            off += n
        return tuple(tuple(row) for row in mat)

    def dual_weight(self, lam):
        parts = self.split(lam)
        return self.join([f.dual_weight(p) for f, p in zip(self.factors, parts)])


@lru_cache(maxsize=None)
def _build_factor(fam: str, n: int) -> RootData:
    spec = GroupSpec(((fam, n),))
    if fam == "SU":
        return SimpleRootData(spec, "A", n - 1)
    if fam == "Sp":
        return SimpleRootData(spec, "C", n)
    if fam == "Spin":
        if n % 2:
            return SimpleRootData(spec, "B", (n - 1) // 2)
        return SimpleRootData(spec, "D", n // 2)
    if fam == "U":
        return UnRootData(spec, n)
    if fam in ("G", "F", "E"):
        return SimpleRootData(spec, fam, n)
    raise UnsupportedGroupError(f"unsupported family {fam}")


def build_root_data(spec: GroupSpec | str) -> RootData:
    """Root data for a group spec; deterministic for a given spec."""
    if isinstance(spec, str):
        spec = parse_group(spec)
    if len(spec.factors) == 1:
        return _build_factor(*spec.factors[0])
    return ProductRootData(spec, [_build_factor(fam, n) for fam, n in spec.factors])


# ---------------------------------------------------------------------------
# Characters: dimension, Freudenthal multiplicities, tensor decomposition
# ---------------------------------------------------------------------------

def weyl_dimension(rd: RootData, lam: Weight) -> int:
    """dim V_lam = prod over positive roots of <lam+rho, a^vee>/<rho, a^vee>."""
    rd.check_dominant(lam)
    if isinstance(rd, ProductRootData):
        out = 1
        for f, p in zip(rd.factors, rd.split(lam)):
            out *= weyl_dimension(f, p)
        return out
    rho = rd.rho_vec()
    lr = tuple(x + r for x, r in zip(lam, rho))
    num = Fraction(1)
    if isinstance(rd, UnRootData):
        for i, j in rd.positive_roots():
            num *= Fraction(lr[i] - lr[j], rho[i] - rho[j])
    else:
        for c in rd.positive_roots():
            num *= Fraction(rd.coroot_pairing(lr, c), rd.coroot_pairing(rho, c))
    assert num.denominator == 1
    return int(num)


@lru_cache(maxsize=None)
def _dominant_multiplicities(rd_key, lam):
    rd = _RD_REGISTRY[rd_key]
    rho = rd.rho_vec()
    if isinstance(rd, UnRootData):
        pos_root_vecs = [tuple(1 if k == i else (-1 if k == j else 0) for k in range(rd.n))
                         for i, j in rd.positive_roots()]
    else:
        pos_root_vecs = [rd.root_to_weight(c) for c in rd.positive_roots()]

    # dominant weights mu <= lam, found by BFS subtracting simple roots
    dom = {lam}
    seen = {lam}
    todo = [lam]
    while todo:
        v = todo.pop()
        for i in range(rd.n_simple()):
            a = rd.simple_root_vec(i)
            w = tuple(x - y for x, y in zip(v, a))
            if w in seen:
                continue
            # prune: lam - w must stay a non-negative root combination and w
            # must remain in the rep's convex hull; cheap test via norm
            if rd.ip(tuple(x + r for x, r in zip(w, rho)),
                     tuple(x + r for x, r in zip(w, rho))) > \
               rd.ip(tuple(x + r for x, r in zip(lam, rho)),
                     tuple(x + r for x, r in zip(lam, rho))):
                continue
            seen.add(w)
            todo.append(w)
            if rd.is_dominant(w):
                dom.add(w)

    lr = tuple(x + r for x, r in zip(lam, rho))
    clam = rd.ip(lr, lr)

    def height(mu):
        # height of lam - mu in the root lattice; exact and positive
        diff = tuple(x - y for x, y in zip(lam, mu))
        return rd.ip(diff, rho) * 2  # any positive-definite proxy works

    order = sorted(dom, key=lambda m: (height(m), m))
    mult = {lam: 1}
    for mu in order:
        if mu == lam:
            continue
        mr = tuple(x + r for x, r in zip(mu, rho))
        denom = clam - rd.ip(mr, mr)
        if denom == 0:
            mult[mu] = 0
            continue
        total = Fraction(0)
        for av in pos_root_vecs:
            k = 1
            while True:
                nu = tuple(x + k * y for x, y in zip(mu, av))
                nud = rd.dominate(nu)
                m = mult.get(nud)
                if m is None:
                    if nud in dom:
                        m = 0  # not yet computed => zero (ordering by height)
                    else:
                        break
                if m == 0:
                    # weight might simply be outside the rep; stop when the
                    # norm test says so
                    nr = tuple(x + r for x, r in zip(nud, rho))
                    if rd.ip(nr, nr) > clam:
                        break
                    k += 1
                    continue
                total += 2 * m * rd.ip(nu, av)
                k += 1
        m = total / denom
        assert m.denominator == 1
        mult[mu] = int(m)
    return {k: v for k, v in mult.items() if v > 0}


_RD_REGISTRY: dict = {}


def _register(rd: RootData) -> str:
    key = rd.key()
    _RD_REGISTRY.setdefault(key, rd)
    return key


def character(rd: RootData, lam: Weight) -> dict:
    """Formal character of V_lam: finite map weight -> multiplicity.

    Dominant multiplicities come from the Freudenthal recursion and are
    spread over Weyl orbits (multiplicity is orbit-constant).
    """
    rd.check_dominant(lam)
    if isinstance(rd, ProductRootData):
        parts = [character(f, p) for f, p in zip(rd.factors, rd.split(lam))]
        combined = {}
        for combo in itertools.product(*[p.items() for p in parts]):
            w = rd.join([c[0] for c in combo])
            m = 1
            for c in combo:
                m *= c[1]
            combined[w] = combined.get(w, 0) + m
        return combined
    dom = _dominant_multiplicities(_register(rd), tuple(lam))
    out = {}
    for mu, m in dom.items():
        for w in rd.orbit(mu):
            out[w] = m
    return out


def tensor_decompose(rd: RootData, lam: Weight, mu: Weight) -> dict:
    """Brauer-Klimyk decomposition of V_lam (x) V_mu into irreducibles.

    Returns a map highest weight -> multiplicity.  Exact; ties cannot
    occur because rho-shifted weights on walls are dropped.
    """
    rd.check_dominant(lam)
    rd.check_dominant(mu)
    if isinstance(rd, ProductRootData):
        parts = [tensor_decompose(f, a, b)
                 for f, a, b in zip(rd.factors, rd.split(lam), rd.split(mu))]
        out = {}
        for combo in itertools.product(*[p.items() for p in parts]):
            w = rd.join([c[0] for c in combo])
            m = 1
            for c in combo:
                m *= c[1]
            out[w] = out.get(w, 0) + m
        return out
    if weyl_dimension(rd, mu) > weyl_dimension(rd, lam):
        lam, mu = mu, lam
    rho = rd.rho_vec()
    out = {}
    for nu, m in character(rd, mu).items():
        v = tuple(a + b + r for a, b, r in zip(lam, nu, rho))
        sign = 1
        while True:
            for i in range(rd.n_simple()):
                p = rd.pairing_simple(v, i)
                if p == 0:
                    sign = 0
                    break
                if p < 0:
                    v = rd.reflect_simple(v, i)
                    sign = -sign
                    break
            else:
                break
            if sign == 0:
                break
        if sign == 0:
            continue
        w = tuple(a - r for a, r in zip(v, rho))
        out[w] = out.get(w, 0) + sign * m
    return {k: v for k, v in out.items() if v != 0}


def dual_highest_weight(rd: RootData, lam: Weight) -> Weight:
    """Highest weight of the dual representation, -w0(lam)."""
    return rd.dual_weight(lam)


def restrict_to_torus(rd: RootData, lam: Weight) -> dict:
    """Weight multiplicities of V_lam restricted to the maximal torus.

    This is the formal character, exposed separately as the restriction
    homomorphism to R(T).
    """
    return character(rd, lam)
