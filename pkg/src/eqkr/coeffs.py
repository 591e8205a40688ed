"""Coefficient arithmetic for K*(pt) and KR*(pt), Z/8-graded.

Degree-8 periodicity is collapsed: the periodicity class of degree -8
is identified with 1, which forces beta^4 = 1 on the complex side (the
complexification of the periodicity class is beta^4).  After the
collapse:

  * K*(pt)  = Z[beta]/(beta^4 - 1), beta in degree -2, with the
    conjugation beta -> -beta;
  * KR*(pt) has Z/8-homogeneous basis 1 (deg 0), eta (deg -1),
    eta^2 (deg -2), mu (deg -4) with relations 2 eta = 0, eta^3 = 0,
    eta mu = 0, mu^2 = 4.

The realification r and complexification c between them satisfy
c(1)=1, c(eta)=0, c(mu)=2 beta^2, r(1)=2, r(beta)=eta^2, r(beta^2)=mu,
r(beta^3)=0, the projection formula r(c(x) y) = x r(y), and
c(r(y)) = y + conj(y).
"""

from __future__ import annotations

from dataclasses import dataclass

KR_BASIS = ("1", "eta", "eta2", "mu")
KR_DEGREE = {"1": 0, "eta": -1, "eta2": -2, "mu": -4}


@dataclass(frozen=True)
class KCoeff:
    """Element of Z[beta]/(beta^4-1); c[i] is the coefficient of beta^i."""

    c: tuple = (0, 0, 0, 0)

    @staticmethod
    def beta(i: int = 1, coeff: int = 1) -> "KCoeff":
        v = [0, 0, 0, 0]
        v[i % 4] = coeff
        return KCoeff(tuple(v))

    @staticmethod
    def unit() -> "KCoeff":
        return KCoeff((1, 0, 0, 0))

    def __add__(self, other):
        return KCoeff(tuple(a + b for a, b in zip(self.c, other.c)))

    def __neg__(self):
        return KCoeff(tuple(-a for a in self.c))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return KCoeff(tuple(a * other for a in self.c))
        out = [0, 0, 0, 0]
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(other.c):
                    if b:
                        out[(i + j) % 4] += a * b
        return KCoeff(tuple(out))

    __rmul__ = __mul__

    def conj(self):
        """Complex conjugation: beta -> -beta."""
        return KCoeff(tuple(a if i % 2 == 0 else -a for i, a in enumerate(self.c)))

    def is_zero(self):
        return all(a == 0 for a in self.c)

    def degrees(self):
        """Z/8 degrees present: beta^i sits in degree -2i mod 8."""
        return {(-2 * i) % 8 for i, a in enumerate(self.c) if a}


@dataclass(frozen=True)
class KRCoeff:
    """Normal form a + b.eta + c.eta^2 + d.mu with b, c taken mod 2."""

    one: int = 0
    eta: int = 0
    eta2: int = 0
    mu: int = 0

    def __post_init__(self):
        object.__setattr__(self, "eta", self.eta % 2)
        object.__setattr__(self, "eta2", self.eta2 % 2)

    @staticmethod
    def basis(name: str, coeff: int = 1) -> "KRCoeff":
        return KRCoeff(**{{"1": "one", "eta": "eta", "eta2": "eta2", "mu": "mu"}[name]: coeff})

    @staticmethod
    def unit() -> "KRCoeff":
        return KRCoeff(one=1)

    def as_dict(self):
        return {"1": self.one, "eta": self.eta, "eta2": self.eta2, "mu": self.mu}

    def __add__(self, other):
        return KRCoeff(self.one + other.one, self.eta + other.eta,
                       self.eta2 + other.eta2, self.mu + other.mu)

    def __neg__(self):
        return KRCoeff(-self.one, self.eta, self.eta2, -self.mu)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return KRCoeff(self.one * other, self.eta * other,
                           self.eta2 * other, self.mu * other)
        # relations: eta^3 = 0, eta.mu = 0, mu^2 = 4
        one = self.one * other.one + 4 * self.mu * other.mu
        eta = self.one * other.eta + self.eta * other.one
        eta2 = (self.one * other.eta2 + self.eta2 * other.one
                + self.eta * other.eta)
        mu = self.one * other.mu + self.mu * other.one
        return KRCoeff(one, eta, eta2, mu)

    __rmul__ = __mul__

    def is_zero(self):
        return self.one == 0 and self.eta == 0 and self.eta2 == 0 and self.mu == 0

    def degrees(self):
        out = set()
        for name, v in self.as_dict().items():
            if v:
                out.add(KR_DEGREE[name] % 8)
        return out


def kr_normalize(monomials) -> KRCoeff:
    """Reduce a raw sum of monomials to normal form.

    ``monomials`` is an iterable of (coeff, eta_power, mu_power,
    periodicity_power) tuples.  Idempotent: feeding the basis expansion
    of a normal form back in reproduces it.
    """
    total = KRCoeff()
    for coeff, etap, mup, brp in monomials:
        del brp  # periodicity class is 1 after the collapse
        term = KRCoeff(one=coeff)
        if etap >= 3:
            continue  # eta^3 = 0
        if etap and mup:
            continue  # eta.mu = 0
        if etap == 1:
            term = KRCoeff(eta=coeff)
        elif etap == 2:
            term = KRCoeff(eta2=coeff)
        if mup:
            # mu^2 = 4, so mu^(2k) = 4^k and mu^(2k+1) = 4^k mu
            scale = 4 ** (mup // 2)
            if mup % 2:
                term = KRCoeff(mu=coeff * scale)
            else:
                term = KRCoeff(one=coeff * scale)
        total = total + term
    return total


def c_coeff(x: KRCoeff) -> KCoeff:
    """Complexification: ring map with c(eta) = 0, c(mu) = 2 beta^2."""
    return KCoeff((x.one, 0, 2 * x.mu, 0))


def r_coeff(y: KCoeff) -> KRCoeff:
    """Realification: additive, r(beta^i) cycles 2, eta^2, mu, 0."""
    a0, a1, a2, a3 = y.c
    del a3  # r(beta^3) = 0
    return KRCoeff(one=2 * a0, eta2=a1, mu=a2)


def r_pattern(i: int) -> KRCoeff:
    """r(beta^i) as a KRCoeff."""
    return r_coeff(KCoeff.beta(i))


# ---------------------------------------------------------------------------
# graded pieces of the equivariant coefficient ring
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class KRGCoeffPiece:
    """Degree-q piece of the equivariant coefficient assembly.

    free: tuple of (IrrepClass, rank); torsion: tuple of (IrrepClass,
    Z/2 rank).  Only R and H classes contribute torsion; complex pairs
    contribute one free summand per even degree.
    """

    degree: int
    free: tuple
    torsion: tuple

    def free_rank(self):
        return sum(r for _, r in self.free)

    def torsion_rank(self):
        return sum(r for _, r in self.torsion)


# KO-style pattern per type: degree offset -> ("free"|"tors", basis label)
R_PATTERN = {0: ("free", "1"), -1: ("tors", "eta"), -2: ("tors", "eta2"),
             -4: ("free", "mu")}
H_PATTERN = {-4: ("free", "1"), -5: ("tors", "eta"), -6: ("tors", "eta2"),
             0: ("free", "mu")}


def kr_g_pt_piece(classes, q: int) -> KRGCoeffPiece:
    """Assemble the degree-q coefficient piece from classified irreps.

    ``classes`` is an iterable of IrrepClass covering every needed
    irreducible, with exactly one entry per complex pair.  An R-type
    class contributes the KO pattern, an H-type class the same pattern
    shifted by -4 (with the degree-0 copy carrying the mu scaling), and
    a complex pair one free Z per even degree.
    """
    q = q % 8
    free, torsion = [], []
    for cls in classes:
        if cls.type == "C":
            if q % 2 == 0:
                free.append((cls, 1))
            continue
        pattern = R_PATTERN if cls.type == "R" else H_PATTERN
        for off, (kind, _label) in pattern.items():
            if off % 8 == q:
                if kind == "free":
                    free.append((cls, 1))
                else:
                    torsion.append((cls, 1))
    return KRGCoeffPiece(q, tuple(free), tuple(torsion))
