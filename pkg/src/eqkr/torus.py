"""Symbolic differential forms over the character ring of a torus.

The model is the Laurent polynomial ring Z[e_1^{+-1}, ..., e_n^{+-1}]
with its exterior differential; a form is a finite sum of terms
(monomial exponents) . de_{j_1} ^ ... ^ de_{j_k}.  This hosts the
torus restrictions of the odd generators for U(n) and the Weyl-
denominator identity behind their independence.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field


@dataclass(frozen=True)
class LaurentForm:
    """Finite sum of Laurent-monomial coefficients times wedge factors.

    ``terms`` maps (exponents, dbits) to an integer, with ``exponents``
    an n-tuple of integers and ``dbits`` a sorted tuple of indices of
    the de_j factors.
    """

    n: int
    terms: dict = field(default_factory=dict)

    @staticmethod
    def zero(n):
        return LaurentForm(n, {})

    @staticmethod
    def monomial(n, exps, dbits=(), coeff=1):
        if coeff == 0:
            return LaurentForm(n, {})
        return LaurentForm(n, {(tuple(exps), tuple(sorted(dbits))): coeff})

    @staticmethod
    def one(n):
        return LaurentForm.monomial(n, (0,) * n)

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
            if out[k] == 0:
                del out[k]
        return LaurentForm(self.n, out)

    def __neg__(self):
        return LaurentForm(self.n, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return LaurentForm.zero(self.n)
            return LaurentForm(self.n,
                               {k: c * other for k, c in self.terms.items()})
        out = {}
        for (e1, d1), c1 in self.terms.items():
            for (e2, d2), c2 in other.terms.items():
                if set(d1) & set(d2):
                    continue
                sign = _wedge_sign(d1, d2)
                exps = tuple(a + b for a, b in zip(e1, e2))
                dbits = tuple(sorted(d1 + d2))
                key = (exps, dbits)
                out[key] = out.get(key, 0) + c1 * c2 * sign
                if out[key] == 0:
                    del out[key]
        return LaurentForm(self.n, out)

    __rmul__ = __mul__

    def d(self):
        """Exterior differential: d(e^a) = sum_j a_j e^{a - delta_j} de_j."""
        out = LaurentForm.zero(self.n)
        for (exps, dbits), c in self.terms.items():
            for j, a in enumerate(exps):
                if a == 0 or j in dbits:
                    continue
                shifted = tuple(x - (1 if k == j else 0)
                                for k, x in enumerate(exps))
                sign = _wedge_sign((j,), dbits)
                out = out + LaurentForm.monomial(self.n, shifted,
                                                 (j,) + dbits, c * a * sign)
        return out

    def is_zero(self):
        return not self.terms

    def monomial_unit_content(self):
        """Largest monomial unit dividing the form (exponent-wise minimum)."""
        if not self.terms:
            return (0,) * self.n
        mins = [min(e[j] for (e, _) in self.terms) for j in range(self.n)]
        return tuple(mins)

    def shift(self, exps):
        return LaurentForm(self.n, {
            (tuple(a - b for a, b in zip(e, exps)), d): c
            for (e, d), c in self.terms.items()})

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for (e, d), c in sorted(self.terms.items()):
            mono = ".".join(f"e{j+1}^{x}" for j, x in enumerate(e) if x) or "1"
            wedge = "".join(f".de{j+1}" for j in d)
            bits.append(f"{c}*{mono}{wedge}")
        return " + ".join(bits)


def _wedge_sign(d1, d2):
    """Sign of merging sorted odd-degree factor tuples d1, d2."""
    inv = 0
    for a in d1:
        for b in d2:
            if b < a:
                inv += 1
    return (-1) ** inv


# ---------------------------------------------------------------------------
# torus restrictions for U(n)
# ---------------------------------------------------------------------------

def torus_restriction_un(n: int, field_tag: str, k: int) -> LaurentForm:
    """Torus restriction of the degree-shifted generator of wedge^k.

    The restricted class decomposes over the weights of wedge^k of the
    defining representation: for each k-subset J the term is the
    one-dimensional character e_J = prod_{j in J} e_j tensored with
    the derivation class of that character line,

        sum_J  e_J . d(e_J).

    ``field_tag`` is "R" for the conjugation involution (any k) and
    must match the parity rule for the symplectic one: "H" for odd k,
    "R" for even k.
    """
    if not 1 <= k <= n:
        raise ValueError(f"k={k} out of range 1..{n}")
    if field_tag not in ("R", "H"):
        raise ValueError("field tag must be R or H")
    if field_tag == "H" and k % 2 == 0:
        raise ValueError("even exterior powers carry the R structure")
    if field_tag == "R" and False:
        pass
    out = LaurentForm.zero(n)
    for subset in itertools.combinations(range(n), k):
        exps = tuple(1 if j in subset else 0 for j in range(n))
        mono = LaurentForm.monomial(n, exps)
        out = out + mono * LaurentForm.monomial(n, exps).d()
    return out


def character_restriction_form(n: int, k: int) -> LaurentForm:
    """d of the restricted character of wedge^k (elementary symmetric)."""
    out = LaurentForm.zero(n)
    for subset in itertools.combinations(range(n), k):
        exps = tuple(1 if j in subset else 0 for j in range(n))
        out = out + LaurentForm.monomial(n, exps)
    return out.d()


def weyl_denominator(n: int) -> LaurentForm:
    """prod_{i<j} (e_i - e_j) as a 0-form."""
    out = LaurentForm.one(n)
    for i in range(n):
        for j in range(i + 1, n):
            ei = tuple(1 if a == i else 0 for a in range(n))
            ej = tuple(1 if a == j else 0 for a in range(n))
            out = out * (LaurentForm.monomial(n, ei)
                         - LaurentForm.monomial(n, ej))
    return out


def top_form(n: int) -> LaurentForm:
    """de_1 ^ ... ^ de_n."""
    return LaurentForm.monomial(n, (0,) * n, tuple(range(n)))


def weyl_denominator_product(n: int):
    """The two torus-restriction products behind the injectivity argument.

    Returns (character_product, weighted_product): the product over
    k = 1..n of the restricted character differentials (which equals
    the Weyl denominator times de_1...de_n exactly, by the Jacobian of
    the elementary symmetric polynomials), and the product of the
    weight-decorated restrictions of torus_restriction_un (a nonzero
    Laurent multiple of the same top form).
    """
    char_prod = LaurentForm.one(n)
    for k in range(1, n + 1):
        char_prod = char_prod * character_restriction_form(n, k)
    weighted = LaurentForm.one(n)
    for k in range(1, n + 1):
        weighted = weighted * torus_restriction_un(n, "R", k)
    return char_prod, weighted
