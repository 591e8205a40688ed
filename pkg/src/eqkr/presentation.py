"""Generators-and-relations presentations of KR*_G(G^-) and K*_G(G).

Two presentation kinds share one element wrapper:

  * kind "BZ": K*_G(G) as the exterior algebra over R(G) (tensored
    with Z[beta]/(beta^4-1)) on one odd generator dG[f] per fundamental
    representation f; kind "K" is its augmentation to K*(G).

  * kind "KR": KR*_G(G^-).  A normal-form term is

        coeff . (weight, class) . plain-monomial . r-slot

    where (weight, class) is an atom of the equivariant coefficient
    assembly (weight self-twisted-dual, class one of 1, eta, eta^2,
    mu), the plain monomial is a square-free product of the generators
    dR[phi] (degree 1), dH[theta] (degree -3), lam[k] (degree 0), and
    the r-slot is a realified class

        r( beta^i . rho . prod dG[gamma_k]^eps_k . prod dG[abar gamma_k]^nu_k )

    with rho trivial or the lexicographically smaller member of a
    complex pair, i mod 4 (periodicity), eps_k nu_k never both set,
    and the redundancy r(x) = r(tau x) canonicalized.  tau is the
    twisted conjugation: beta -> -beta, weights -> twisted dual,
    dG[f] -> -dG[f*].

    Every product routes through the projection formula
    r(x) . y = r(x . c(y)), which realizes the whole relation table:
    generator squares vanish, eta kills realified classes, mu doubles
    them and shifts i by 2, realified squares reduce by degree mod 8 to
    eta^2/mu/zero/two multiples of realified rho sigmabar*rho times lam
    monomials, and graded commutativity holds with computed signs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import comb

from .coeffs import KRCoeff, KR_DEGREE, c_coeff, r_pattern
from .groups import (
    RootData,
    UnRootData,
    UnsupportedGroupError,
    tensor_decompose,
    weyl_dimension,
    _register,
    _RD_REGISTRY,
)
from .realstruct import (
    TYPE_C,
    TYPE_H,
    TYPE_R,
    FundamentalSplit,
    Involution,
    split_fundamentals,
)


class PresentationError(RuntimeError):
    """Internal invariant violation in the presentation engine."""


def canon_degree(d: int) -> int:
    """Degree representative in the canonical set {1, 0, -1, ..., -6}."""
    d %= 8
    return d if d <= 1 else d - 8


GEN_DEGREE = {"dR": 1, "dH": -3, "lam": 0, "dG": -1}
GEN_PARITY = {"dR": 1, "dH": 1, "lam": 0, "dG": 1}


@dataclass(frozen=True)
class Generator:
    kind: str           # dR | dH | lam | dG
    payload: tuple      # highest weight (for lam: the pair representative)
    index: int          # position in the presentation's generator list
    pair: int = -1      # complex-pair index for lam generators

    @property
    def degree(self):
        return GEN_DEGREE[self.kind]

    @property
    def parity(self):
        return GEN_PARITY[self.kind]

    def label(self):
        w = ",".join(str(x) for x in self.payload)
        if self.kind == "lam":
            return f"lam[{self.pair + 1}]"
        return f"{self.kind}[{w}]"


@dataclass(frozen=True)
class RClassIndex:
    """Index of a realified generator r_{rho, i, eps, nu}.

    rho: None for the trivial representation, a complex-type dominant
    weight, or a dict weight -> int for a virtual one; i: Bott
    exponent >= 0 (periodicity identifies i with i+4); eps/nu: 0/1
    tuples with eps_k nu_k never both 1 and the first eps index
    preceding the first nu index.
    """

    rho: object
    i: int
    eps: tuple
    nu: tuple

    def __post_init__(self):
        if self.i < 0:
            raise ValueError("Bott exponent must be >= 0")
        if len(self.eps) != len(self.nu):
            raise ValueError("eps and nu must have equal length")
        for e, n in zip(self.eps, self.nu):
            if e not in (0, 1) or n not in (0, 1):
                raise ValueError("eps/nu entries must be bits")
            if e == 1 and n == 1:
                raise ValueError("eps_k and nu_k may not both be 1")
        first_e = next((k for k, e in enumerate(self.eps) if e), None)
        first_n = next((k for k, n in enumerate(self.nu) if n), None)
        if first_n is not None and (first_e is None or first_e > first_n):
            raise ValueError("first eps index must precede first nu index")

    @property
    def factor_count(self):
        return sum(self.eps) + sum(self.nu)

    def degree(self):
        return canon_degree(-(2 * self.i + self.factor_count))

    def shifted(self, di):
        return RClassIndex(self.rho, self.i + di, self.eps, self.nu)


class RingElement:
    """A finite sum of (coefficient, normal-form term) pairs."""

    __slots__ = ("p", "terms")

    def __init__(self, p, terms):
        self.p = p
        self.terms = {t: c for t, c in terms.items() if c != 0}

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.p is other.p and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        self.p._check_same(other)
        out = dict(self.terms)
        for t, c in other.terms.items():
            out[t] = out.get(t, 0) + c
        return self.p._element(out)

    def __neg__(self):
        return self.p._element({t: -c for t, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.p._element({t: c * other for t, c in self.terms.items()})
        self.p._check_same(other)
        return self.p._mul_elements(self, other)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.__mul__(other)
        return NotImplemented

    def degrees(self):
        return sorted({self.p.term_degree(t) for t in self.terms})

    def degree(self):
        degs = self.degrees()
        if len(degs) > 1:
            raise PresentationError(f"inhomogeneous element: degrees {degs}")
        return degs[0] if degs else None

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for t, c in sorted(self.terms.items(), key=lambda kv: repr(kv[0])):
            bits.append(f"{c}*{self.p.term_label(t)}")
        return " + ".join(bits)


def _merge_graded(a, b, parity):
    """Koszul-signed merge of sorted index tuples; None on collision."""
    out = []
    sign = 1
    i = j = 0
    rem_odd = sum(parity(x) for x in a)
    while i < len(a) and j < len(b):
        if a[i] == b[j]:
            return None
        if a[i] < b[j]:
            rem_odd -= parity(a[i])
            out.append(a[i])
            i += 1
        else:
            if parity(b[j]) and rem_odd % 2:
                sign = -sign
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out), sign


def _permutation_sign_to_sorted(seq):
    inv = 0
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                inv += 1
    return (-1) ** inv


class Presentation:
    """A built presentation: generators, relation table, coefficient tag.

    Term tuples:  KR: (cw, cls, plain, rslot) with rslot = None or
    (rho, i, eps, nu);  BZ/K: (w, j, bits).  Immutable once built; the
    element operations are pure.
    """

    def __init__(self, rd: RootData, inv, split, kind: str, factors, gens,
                 relation_overrides=None):
        self.rd = rd
        self.inv = inv
        self.split = split
        self.kind = kind  # "KR" | "BZ" | "K"
        self.factors = tuple(factors)   # (role, weight, pair) in order
        self.gens = tuple(gens)
        self.relation_overrides = dict(relation_overrides or {})
        self.zero_weight = rd.zero()
        self._classify_cache = {}
        self._tensor_cache = {}
        self._gen_by_factor = {}
        self._lam_gen = {}
        for g in self.gens:
            if g.kind == "lam":
                self._lam_gen[g.pair] = g.index
        for fi, (role, w, pair) in enumerate(self.factors):
            if role in ("phi", "theta"):
                for g in self.gens:
                    if g.kind in ("dR", "dH") and g.payload == w:
                        self._gen_by_factor[fi] = g.index
        self._factor_tau = {}
        for fi, (role, w, pair) in enumerate(self.factors):
            if role == "u":
                self._factor_tau[fi] = fi + 1
            elif role == "v":
                self._factor_tau[fi] = fi - 1
            else:
                self._factor_tau[fi] = fi

    @property
    def omega_form(self):
        return self.kind == "KR" and self.split is not None and self.split.t == 0

    @property
    def coefficient_tag(self):
        return {"KR": "KRG-assembly", "BZ": "R(G)", "K": "Z"}[self.kind]

    def _check_same(self, other):
        if not isinstance(other, RingElement) or other.p is not self:
            raise PresentationError("operands belong to different presentations")

    def _element(self, terms):
        return RingElement(self, self._normalize_terms(terms))

    def zero(self):
        return RingElement(self, {})

    def classify(self, w):
        w = tuple(w)
        cached = self._classify_cache.get(w)
        if cached is None:
            from .realstruct import classify_type
            cached = classify_type(self.rd, self.inv, w)
            self._classify_cache[w] = cached
        return cached

    def pair_rep(self, w):
        cls = self.classify(w)
        return min(cls.weight, cls.twisted_dual)

    def tensor(self, a, b):
        key = (a, b) if a <= b else (b, a)
        out = self._tensor_cache.get(key)
        if out is None:
            out = tensor_decompose(self.rd, key[0], key[1])
            self._tensor_cache[key] = out
        return out

    # -- degrees ---------------------------------------------------------------
    def term_degree(self, t):
        if self.kind in ("BZ", "K"):
            w, j, bits = t
            return canon_degree(-2 * j - len(bits))
        cw, cls, plain, rslot = t
        d = KR_DEGREE[cls]
        if cw != self.zero_weight and self.classify(cw).type == TYPE_H:
            d -= 4
        for gi in plain:
            d += self.gens[gi].degree
        if rslot is not None:
            _, i, eps, nu = rslot
            d -= 2 * i + len(eps) + len(nu)
        return canon_degree(d)

    def term_parity(self, t):
        if self.kind in ("BZ", "K"):
            return len(t[2]) % 2
        _, _, plain, rslot = t
        par = sum(self.gens[gi].parity for gi in plain)
        if rslot is not None:
            par += len(rslot[2]) + len(rslot[3])
        return par % 2

    def term_label(self, t):
        if self.kind in ("BZ", "K"):
            w, j, bits = t
            parts = []
            if any(w):
                parts.append("V[" + ",".join(map(str, w)) + "]")
            if j:
                parts.append(f"b^{j}")
            parts.extend(f"dG[{','.join(map(str, self.factors[b][1]))}]"
                         for b in bits)
            return ".".join(parts) or "1"
        cw, cls, plain, rslot = t
        parts = []
        if any(cw):
            parts.append("V[" + ",".join(map(str, cw)) + "]")
        if cls != "1":
            parts.append(cls)
        parts.extend(self.gens[gi].label() for gi in plain)
        if rslot is not None:
            rho, i, eps, nu = rslot
            rr = "1" if rho is None else ",".join(map(str, rho))
            parts.append(f"r[{rr};{i};{','.join(map(str, eps)) or '-'};"
                         f"{','.join(map(str, nu)) or '-'}]")
        return ".".join(parts) or "1"

    # -- element constructors ----------------------------------------------------
    def one(self):
        if self.kind in ("BZ", "K"):
            return self._element({(self.zero_weight, 0, ()): 1})
        return self._element({(self.zero_weight, "1", (), None): 1})

    def scalar(self, kr: KRCoeff):
        if self.kind != "KR":
            raise PresentationError("KR scalars only live in KR presentations")
        terms = {}
        for name, val in kr.as_dict().items():
            if val:
                terms[(self.zero_weight, name, (), None)] = val
        return self._element(terms)

    def class_element(self, w, cls="1"):
        """The coefficient class of a self-twisted-dual (R or H type) weight."""
        w = tuple(w)
        if self.classify(w).type == TYPE_C:
            raise PresentationError(
                f"{w} is complex type; use rclass_element for realifications")
        return self._element({(w, cls, (), None): 1})

    def gen_element(self, g):
        if isinstance(g, Generator):
            g = g.index
        if self.kind in ("BZ", "K"):
            return self.dg_element(g)
        return self._element({(self.zero_weight, "1", (g,), None): 1})

    def dg_element(self, fi, j=0, w=None):
        """beta^j . V_w . dG[factor fi] in a BZ presentation."""
        if self.kind not in ("BZ", "K"):
            raise PresentationError("dg_element lives in BZ presentations")
        w = self.zero_weight if w is None else tuple(w)
        return self._element({(w, j % 4, (fi,)): 1})

    def bz_weight(self, w, j=0):
        if self.kind not in ("BZ", "K"):
            raise PresentationError("bz_weight lives in BZ presentations")
        return self._element({(tuple(w), j % 4, ()): 1})

    def rclass_element(self, idx: RClassIndex):
        """The realified class r_{rho, i, eps, nu} in normal form."""
        if self.kind != "KR":
            raise PresentationError("realified classes live in KR presentations")
        t = self.split.t
        if len(idx.eps) != t:
            raise PresentationError(f"eps/nu must have length t={t}")
        if idx.rho is None:
            rhos = {self.zero_weight: 1}
        elif isinstance(idx.rho, dict):
            rhos = {tuple(w): c for w, c in idx.rho.items()}
        else:
            rhos = {tuple(idx.rho): 1}
        bits = [self._pair_factor(k, "u") for k, e in enumerate(idx.eps) if e]
        bits += [self._pair_factor(k, "v") for k, n in enumerate(idx.nu) if n]
        # reorder the definition sequence (u block, then v block) into sorted
        # factor order; the v factors enter as dG[abar gamma] = -dG[sigmabar gamma]
        sign = (-1) ** sum(idx.nu) * _permutation_sign_to_sorted(bits)
        out = {}
        for w, c in rhos.items():
            if w != self.zero_weight and self.classify(w).type != TYPE_C:
                raise PresentationError(
                    f"rho weight {w} must be trivial or complex type")
            for term, cc in self._realify_term(w, idx.i, tuple(sorted(bits)),
                                               c * sign):
                out[term] = out.get(term, 0) + cc
        return self._element(out)

    def _pair_factor(self, k, role):
        for fi, (r, w, pair) in enumerate(self.factors):
            if pair == k and r == role:
                return fi
        raise PresentationError(f"no factor for pair {k} role {role}")

    # -- BZ arithmetic -------------------------------------------------------------
    def _mul_bz_terms(self, t1, c1, t2, c2):
        w1, j1, b1 = t1
        w2, j2, b2 = t2
        merged = _merge_graded(b1, b2, lambda x: 1)
        if merged is None:
            return {}
        bits, sign = merged
        if self.kind == "K":
            return {(self.zero_weight, (j1 + j2) % 4, bits): c1 * c2 * sign}
        out = {}
        for w, m in self.tensor(w1, w2).items():
            out[(w, (j1 + j2) % 4, bits)] = c1 * c2 * sign * m
        return out

    def _bz_mul_dicts(self, a, b):
        out = {}
        for t1, c1 in a.items():
            for t2, c2 in b.items():
                for t, c in self._mul_bz_terms(t1, c1, t2, c2).items():
                    out[t] = out.get(t, 0) + c
        return {t: c for t, c in out.items() if c}

    def _tau_bz_term(self, w, j, bits):
        """tau-image of one BZ term; returns (w*, bits*, sign)."""
        ws = self.inv.twisted_dual_weight(w)
        mapped = [self._factor_tau[b] for b in bits]
        sign = ((-1) ** (j % 2) * (-1) ** len(bits)
                * _permutation_sign_to_sorted(mapped))
        return ws, tuple(sorted(mapped)), sign

    def _tau_bz(self, terms):
        out = {}
        for (w, j, bits), c in terms.items():
            ws, mapped, sign = self._tau_bz_term(w, j, bits)
            key = (ws, j, mapped)
            out[key] = out.get(key, 0) + c * sign
        return out

    # -- realification ----------------------------------------------------------
    def _realify_term(self, w, j, bits, coeff, allow_flip=True):
        """Normal-form KR terms of r(beta^j . V_w . dG-monomial).

        Projection-formula identities drive the reduction: R/H-type
        delta factors pull out as plain generators, full gamma pairs
        pull out as lam generators, an R/H weight pulls out as a
        coefficient atom, and tau-redundant slots flip once.
        """
        if coeff == 0:
            return []
        if any(bits[i] >= bits[i + 1] for i in range(len(bits) - 1)):
            raise PresentationError("realification needs sorted delta factors")
        w0, j0, bits0 = w, j, bits
        plain = []
        bl = list(bits)
        sign = 1
        # phi/theta factors lead in sorted order; dG[f] = beta^{-1} c(dF[f])
        while bl and self.factors[bl[0]][0] in ("phi", "theta"):
            fi = bl.pop(0)
            plain.append(self._gen_by_factor[fi])
            j -= 1
        # full gamma pairs: dG[gamma_k] dG[sigmabar gamma_k] = -beta c(lam_k)
        while True:
            hit = None
            for pos, fi in enumerate(bl):
                role, _, k = self.factors[fi]
                if role == "u" and pos + 1 < len(bl) and bl[pos + 1] == fi + 1:
                    hit = (pos, k)
                    break
            if hit is None:
                break
            pos, k = hit
            del bl[pos:pos + 2]  # adjacent pair crosses 2*pos odd factors: net +
            sign = -sign
            j += 1
            plain.append(self._lam_gen[k])
        eps = tuple(sorted(self.factors[fi][2] for fi in bl
                           if self.factors[fi][0] == "u"))
        nu = tuple(sorted(self.factors[fi][2] for fi in bl
                          if self.factors[fi][0] == "v"))
        # interleaved u/v factors -> u block then v block
        crossings = sum(1 for a in eps for b in nu if b < a)
        sign *= (-1) ** crossings
        # canonical r-class factors are dG[abar gamma] = -dG[sigmabar gamma]
        sign *= (-1) ** len(nu)
        plain = tuple(sorted(plain))

        rho = None
        cw = self.zero_weight
        if w != self.zero_weight:
            wcls = self.classify(w)
            if wcls.type == TYPE_R:
                cw = w
            elif wcls.type == TYPE_H:
                cw = w
                j += 2
            else:
                rho = w

        needs_flip = False
        if rho is not None:
            if rho != self.pair_rep(rho):
                needs_flip = True
        elif eps or nu:
            if not eps or (nu and min(nu) < min(eps)):
                needs_flip = True
        if needs_flip:
            if not allow_flip:
                raise PresentationError("realified class failed to canonicalize")
            ws, mapped, tsign = self._tau_bz_term(w0, j0, bits0)
            return self._realify_term(ws, j0, mapped, coeff * tsign,
                                      allow_flip=False)

        out = []
        if rho is None and not eps and not nu:
            for name, val in r_pattern(j).as_dict().items():
                if val:
                    out.append(((cw, name, plain, None), coeff * sign * val))
            return out
        slot = (rho, j % 4, eps, nu)
        for gi in plain:
            g = self.gens[gi]
            if g.kind == "lam" and (g.pair in eps or g.pair in nu):
                return []  # lam_k times a slot using index k vanishes
        out.append(((cw, "1", plain, slot), coeff * sign))
        return out

    def realify_bz(self, e: RingElement) -> RingElement:
        """Realification of a K-theory element (from the complexify target).

        The argument must live in a BZ presentation sharing this
        presentation's fundamental catalog.
        """
        if self.kind != "KR":
            raise PresentationError("realify_bz lands in a KR presentation")
        if e.p.factors != self.factors:
            raise PresentationError("K-theory element has a different catalog")
        out = {}
        for (w, j, bits), c in e.terms.items():
            for term, cc in self._realify_term(w, j, bits, c):
                out[term] = out.get(term, 0) + cc
        return self._element(out)

    def _slot_to_bz(self, slot):
        """A BZ term whose realification is exactly the slot class."""
        rho, i, eps, nu = slot
        bits = [self._pair_factor(k, "u") for k in eps]
        bits += [self._pair_factor(k, "v") for k in nu]
        crossings = sum(1 for a in eps for b in nu if b < a)
        sign = (-1) ** (crossings + len(nu))
        w = self.zero_weight if rho is None else rho
        return (w, i, tuple(sorted(bits))), sign

    def _c_image_coeff(self, cw, cls):
        """Complexification of a coefficient atom, as BZ term dict."""
        k = c_coeff(KRCoeff.basis(cls))
        shift = 2 if (cw != self.zero_weight
                      and self.classify(cw).type == TYPE_H) else 0
        out = {}
        for i, a in enumerate(k.c):
            if a:
                out[(cw, (i + shift) % 4, ())] = a
        return out

    def _c_image_slot(self, slot):
        term, sign = self._slot_to_bz(slot)
        base = {term: sign}
        out = dict(base)
        for t, c in self._tau_bz(base).items():
            out[t] = out.get(t, 0) + c
        return {t: c for t, c in out.items() if c}

    # -- KR term multiplication ----------------------------------------------------
    def _typed_mult(self, cw1, cls1, cw2, cls2):
        """Product of two coefficient atoms with type bookkeeping.

        Returns (fragments, slot_fragments): (weight, cls, coeff)
        atoms of the R/H assembly and ((rho, i, (), ()), coeff)
        realified pieces from complex-type constituents.
        """
        h1 = int(cw1 != self.zero_weight and self.classify(cw1).type == TYPE_H)
        h2 = int(cw2 != self.zero_weight and self.classify(cw2).type == TYPE_H)
        parity = (h1 + h2) % 2
        kr = KRCoeff.basis(cls1) * KRCoeff.basis(cls2)
        if kr.is_zero():
            return [], []
        frags, slot_frags = [], []
        pair_mults = {}
        for nu_w, m in self.tensor(cw1, cw2).items():
            t = self.classify(nu_w).type
            if t == TYPE_C:
                rep = self.pair_rep(nu_w)
                slot = pair_mults.setdefault(rep, [0, 0])
                slot[0 if nu_w == rep else 1] += m
                continue
            if (t == TYPE_H) == (parity == 1):
                base, mult = "1", m
            else:
                if m % 2:
                    raise PresentationError(
                        f"odd multiplicity {m} of {t}-type {nu_w} in "
                        f"{cw1} x {cw2}: type bookkeeping violated")
                base, mult = "mu", m // 2
            for name, val in (KRCoeff.basis(base) * kr).as_dict().items():
                if val:
                    frags.append((nu_w, name, mult * val))
        j0 = (2 * (h1 + h2)) % 4
        for rep, (ma, mb) in pair_mults.items():
            if ma != mb:
                raise PresentationError(
                    f"unbalanced complex pair {rep} in {cw1} x {cw2}")
            for name, val in kr.as_dict().items():
                if not val:
                    continue
                if name == "1":
                    slot_frags.append(((rep, j0, (), ()), ma * val))
                elif name == "mu":
                    slot_frags.append(((rep, (j0 + 2) % 4, (), ()),
                                       2 * ma * val))
                # eta and eta^2 kill realified classes
        return frags, slot_frags

    def _mul_kr_terms(self, t1, c1, t2, c2):
        cw1, cls1, p1, s1 = t1
        cw2, cls2, p2, s2 = t2
        coeff = c1 * c2
        # Koszul sign for [p1][s1][p2][s2] -> [p1 p2][s1 s2]
        if s1 is not None:
            spar = (len(s1[2]) + len(s1[3])) % 2
            ppar = sum(self.gens[g].parity for g in p2) % 2
            if spar and ppar:
                coeff = -coeff
        merged = _merge_graded(p1, p2, lambda g: self.gens[g].parity)
        if merged is None:
            return {}
        plain, sign = merged
        coeff *= sign

        frags, slot_frags = self._typed_mult(cw1, cls1, cw2, cls2)
        out = {}
        slots = [s for s in (s1, s2) if s is not None]
        for w, name, c in frags:
            self._attach(out, w, name, plain, slots, coeff * c)
        for slot, c in slot_frags:
            self._attach(out, self.zero_weight, "1", plain, slots + [slot],
                         coeff * c)
        return out

    def _attach(self, out, cw, cls, plain, slots, coeff):
        """Attach a coefficient atom and slot list to a plain monomial."""
        if coeff == 0:
            return
        if not slots:
            t = (cw, cls, plain, None)
            out[t] = out.get(t, 0) + coeff
            return
        # r(a) r(b) y = r(a . c(r(b)) . c(y)): first slot stays inside
        base, bsign = self._slot_to_bz(slots[0])
        arg = {base: bsign}
        for s in slots[1:]:
            arg = self._bz_mul_dicts(arg, self._c_image_slot(s))
        if cw != self.zero_weight or cls != "1":
            arg = self._bz_mul_dicts(arg, self._c_image_coeff(cw, cls))
        for (w, j, bits), c in arg.items():
            for (tw, tcls, tplain, tslot), cc in self._realify_term(w, j, bits, c):
                mg = _merge_graded(plain, tplain,
                                   lambda g: self.gens[g].parity)
                if mg is None:
                    continue
                nplain, nsign = mg
                if tslot is not None and any(
                        self.gens[gi].kind == "lam"
                        and (self.gens[gi].pair in tslot[2]
                             or self.gens[gi].pair in tslot[3])
                        for gi in nplain):
                    continue
                key = (tw, tcls, nplain, tslot)
                out[key] = out.get(key, 0) + coeff * cc * nsign

    # -- normalization and public multiplication ------------------------------------
    def _normalize_terms(self, terms):
        out = {}
        for t, c in terms.items():
            if self.kind == "KR" and t[1] in ("eta", "eta2"):
                c %= 2
            if c:
                out[t] = c
        return out

    def _mul_elements(self, a, b):
        out = {}
        for t1, c1 in a.terms.items():
            for t2, c2 in b.terms.items():
                prod = (self._mul_kr_terms(t1, c1, t2, c2) if self.kind == "KR"
                        else self._mul_bz_terms(t1, c1, t2, c2))
                for t, c in prod.items():
                    out[t] = out.get(t, 0) + c
        return self._element(out)

    # -- tables ------------------------------------------------------------------
    def monomial_degrees(self):
        """Degree multiset of the plain generator monomials (raw sums)."""
        degs = []
        for k in range(len(self.gens) + 1):
            for bits in itertools.combinations(range(len(self.gens)), k):
                degs.append(sum(self.gens[i].degree for i in bits))
        return sorted(degs)

    def generator_square(self, g):
        if isinstance(g, Generator):
            g = g.index
        override = self.relation_overrides.get(("square", g))
        if override is not None:
            return override
        e = self.gen_element(g)
        return e * e

    def relation_table(self):
        """Square relations for the listed generators (override-aware)."""
        return {g.label(): self.generator_square(g) for g in self.gens}


# ---------------------------------------------------------------------------
# builders
# ---------------------------------------------------------------------------

def build_bz_presentation(rd: RootData, equivariant: bool = True,
                          inv: Involution | None = None) -> Presentation:
    """K*_G(G) as an exterior algebra over R(G), or K*(G) when augmented.

    One odd generator dG[f] per fundamental representation; squares
    are zero and coefficients multiply by exact tensor decomposition.
    """
    factors = tuple(("phi", w, -1) for w in rd.fundamental_weights())
    gens = tuple(Generator("dG", w, i) for i, (_, w, _) in enumerate(factors))
    return Presentation(rd, inv, None, "BZ" if equivariant else "K",
                        factors, gens)


def augment_bz(p: Presentation) -> Presentation:
    """The K*(G) variant: coefficients pushed to Z by the rank map."""
    return Presentation(p.rd, p.inv, None, "K", p.factors, p.gens)


def augment_element(p_k: Presentation, e: RingElement) -> RingElement:
    out = {}
    for (w, j, bits), c in e.terms.items():
        key = (p_k.zero_weight, j, bits)
        out[key] = out.get(key, 0) + c * weyl_dimension(e.p.rd, w)
    return p_k._element(out)


def build_kr_presentation(rd: RootData, inv: Involution,
                          split: FundamentalSplit | None = None) -> Presentation:
    """KR*_G(G^-) with the full relation table installed.

    Generators: dR[phi_i] (degree 1), dH[theta_j] (degree -3), lam[k]
    (degree 0), plus the constrained family of realified classes
    handled as r-slots.  When t = 0 the presentation is in Omega form.
    """
    if split is None:
        split = split_fundamentals(rd, inv)
    gens = []
    factors = []
    for w in split.real:
        gens.append(Generator("dR", w, len(gens)))
        factors.append(("phi", w, -1))
    for w in split.quat:
        gens.append(Generator("dH", w, len(gens)))
        factors.append(("theta", w, -1))
    for k, (rep, _) in enumerate(split.pairs):
        gens.append(Generator("lam", rep, len(gens), pair=k))
    for k, (rep, other) in enumerate(split.pairs):
        factors.append(("u", rep, k))
        factors.append(("v", other, k))
    return Presentation(rd, inv, split, "KR", tuple(factors), tuple(gens))


# ---------------------------------------------------------------------------
# spec operations
# ---------------------------------------------------------------------------

def multiply(p: Presentation, a: RingElement, b: RingElement) -> RingElement:
    """Normalized graded-commutative product in the presentation."""
    p._check_same(a)
    p._check_same(b)
    return a * b


@dataclass
class RClassSquareResult:
    element: RingElement
    case: str            # "zero" | "eta2" | "mu" | "two"
    sign: int | None     # the +-1 of the mu/two cases (None otherwise)
    transpositions: int  # delta-factor sorting count in r(x . tau x)


def rclass_square(p: Presentation, idx: RClassIndex) -> RClassSquareResult:
    """Square of a realified generator, with the computed sign emitted.

    The square expands through r(x)^2 = r(x^2 + x.tau(x)); with at
    least one delta factor x^2 = 0, and sorting the delta factors of
    x.tau(x) into adjacent gamma pairs costs the emitted transposition
    count, leaving +-prod(lam_k) . r(beta^J . rho sigmabar*rho) with
    J = 2i - 3m.  The Bott pattern of J settles the case by the degree
    of the class mod 8: eta^2.(rho sigmabar*rho).prod lam in degrees
    -1/-5, +-mu.(...) in degrees -2/-6 with sign (-1)^(i +
    transpositions), 0 in degrees -3/1, and +-2.(...) in degrees
    0/-4.  (The last case refines the blanket "otherwise zero" of the
    source relation table, whose complexification is 2 x.tau(x) and
    provably nonzero there.)
    """
    if idx.factor_count == 0:
        raise PresentationError(
            "rclass_square needs at least one delta factor; a bare "
            "realification is coefficient-ring arithmetic (use multiply)")
    e = p.rclass_element(idx)
    sq = e * e

    s_idx = [k for k, b in enumerate(idx.eps) if b]
    n_idx = [k for k, b in enumerate(idx.nu) if b]
    seq = ([("u", k) for k in s_idx] + [("v", k) for k in n_idx]
           + [("v", k) for k in s_idx] + [("u", k) for k in n_idx])
    rank = {}
    for k in sorted(s_idx + n_idx):
        rank[("u", k)] = len(rank)
        rank[("v", k)] = len(rank)
    ranks = [rank[x] for x in seq]
    transpositions = sum(1 for i in range(len(ranks))
                         for j in range(i + 1, len(ranks))
                         if ranks[i] > ranks[j])

    case_deg = idx.degree()
    sign = (-1) ** (idx.i + transpositions)
    if case_deg in (-1, -5):
        case, sign = "eta2", None
    elif case_deg in (-2, -6):
        case = "mu"
        probe_cls = "mu"
    elif case_deg in (0, -4):
        case = "two"
        probe_cls = "1"
    else:
        case, sign = "zero", None
        if not sq.is_zero():
            raise PresentationError(
                f"square of a degree-{case_deg} realified class should "
                f"vanish, got {sq}")
    if sign is not None and not isinstance(idx.rho, dict):
        # rho (x) sigmabar*rho contains the trivial representation once,
        # so the lam-monomial term carries the computed sign
        lam_plain = tuple(sorted(p._lam_gen[k] for k in s_idx + n_idx))
        got = sq.terms.get((p.zero_weight, probe_cls, lam_plain, None))
        if got is not None and (got > 0) != (sign > 0):
            raise PresentationError(
                f"element sign {got} disagrees with transposition "
                f"sign {sign}")
    return RClassSquareResult(sq, case, sign, transpositions)


def delta_lift(p: Presentation, poly, twist: str | None = None) -> RingElement:
    """Extend the derivation to a polynomial in the fundamentals.

    ``poly`` maps exponent tuples (one slot per fundamental of the
    presentation's catalog) to integer coefficients; a negative
    exponent is allowed only on an invertible fundamental (the U(n)
    determinant).  Leibniz gives d(prod f^a) = sum_i a_i f^{a-e_i} df_i
    with the cofactor expanded exactly into the weight basis.

    ``twist``: None, "sigmabar" (precompose with the twisted dual), or
    "abar" (the anti-involution pullback, which flips the sign:
    d(abar* rho) = -d(sigmabar* rho)).
    """
    if p.kind == "KR":
        if twist is not None:
            raise PresentationError(
                "twisted arguments apply to the K-theory derivation")
        return _delta_lift_kr(p, poly)
    funds = [w for _, w, _ in p.factors]
    sign = 1
    if twist in ("sigmabar", "abar"):
        perm = _fundamental_twist_perm(p, funds)
        poly = {tuple(exp[perm[i]] for i in range(len(funds))): c
                for exp, c in poly.items()}
        if twist == "abar":
            sign = -1
    elif twist is not None:
        raise PresentationError(f"unknown twist {twist!r}")
    out = p.zero()
    for exp, c in poly.items():
        if c == 0:
            continue
        if len(exp) != len(funds):
            raise PresentationError("exponent tuple length mismatch")
        for i, a in enumerate(exp):
            if a == 0:
                continue
            cof = list(exp)
            cof[i] -= 1
            for w, m in _expand_monomial(p.rd, tuple(funds), tuple(cof)).items():
                out = out + p.dg_element(i, 0, w) * (sign * c * a * m)
    return out


def _delta_lift_kr(p: Presentation, poly):
    funds, gen_of = [], {}
    for g in p.gens:
        if g.kind in ("dR", "dH"):
            gen_of[len(funds)] = g.index
            funds.append(g.payload)
    out = p.zero()
    for exp, c in poly.items():
        if len(exp) != len(funds):
            raise PresentationError(
                "exponent tuple must cover the R/H fundamentals")
        if c == 0:
            continue
        for i, a in enumerate(exp):
            if a == 0:
                continue
            if a < 0:
                raise PresentationError(
                    "negative exponents need an invertible fundamental")
            cof = list(exp)
            cof[i] -= 1
            coeff_elem = p.one()
            for k, e in enumerate(cof):
                for _ in range(e):
                    coeff_elem = coeff_elem * p.class_element(funds[k])
            out = out + coeff_elem * p.gen_element(gen_of[i]) * (c * a)
    return out


def _fundamental_twist_perm(p: Presentation, funds):
    perm = []
    for w in funds:
        ws = (p.inv.twisted_dual_weight(w) if p.inv is not None
              else p.rd.dual_weight(w))
        try:
            perm.append(funds.index(ws))
        except ValueError:
            raise PresentationError(
                f"twisted dual {ws} of fundamental {w} is not fundamental")
    return perm


@lru_cache(maxsize=None)
def _expand_monomial_cached(rd_key, funds, exp):
    rd = _RD_REGISTRY[rd_key]
    weights = {rd.zero(): 1}
    for i, a in enumerate(exp):
        if a < 0:
            raise PresentationError(
                f"negative exponent on non-invertible fundamental {funds[i]}")
        for _ in range(a):
            nxt = {}
            for w, m in weights.items():
                for w2, m2 in tensor_decompose(rd, w, funds[i]).items():
                    nxt[w2] = nxt.get(w2, 0) + m * m2
            weights = nxt
    return weights


def _expand_monomial(rd: RootData, funds, exp):
    key = _register(rd)
    det_slot = None
    if isinstance(rd, UnRootData):
        det = (1,) * rd.n
        det_slot = funds.index(det) if det in funds else None
    if det_slot is not None and exp[det_slot] != 0:
        shift = exp[det_slot]
        exp = tuple(0 if i == det_slot else a for i, a in enumerate(exp))
        base = _expand_monomial_cached(key, funds, exp)
        return {tuple(x + shift for x in w): m for w, m in base.items()}
    return _expand_monomial_cached(key, funds, exp)


def _natural_exponents(rd: RootData, lam):
    """Exponents a with highest weight of prod f_i^{a_i} equal to lam."""
    if isinstance(rd, UnRootData):
        n = rd.n
        return tuple(lam[k] - lam[k + 1] for k in range(n - 1)) + (lam[-1],)
    return tuple(lam)  # Dynkin labels do the job for the other families


def as_fundamental_polynomial(rd: RootData, lam) -> dict:
    """Express the class of V_lam as a polynomial in the fundamentals.

    Returns a map exponent-tuple -> integer over the presentation's
    fundamental catalog (Laurent in the U(n) determinant slot).  The
    recursion peels the natural monomial and subtracts the lower
    constituents; R(G) is a free polynomial ring on the fundamentals,
    so the expression is unique.
    """
    return dict(_as_fund_poly_cached(_register(rd), rd.fundamental_weights(),
                                     tuple(lam)))


@lru_cache(maxsize=None)
def _as_fund_poly_cached(rd_key, funds, lam):
    rd = _RD_REGISTRY[rd_key]
    if lam == rd.zero():
        return ((tuple([0] * len(funds)), 1),)
    exp = _natural_exponents(rd, lam)
    poly = {exp: 1}
    for w, m in _expand_monomial(rd, funds, exp).items():
        if w == lam:
            if m != 1:
                raise PresentationError(
                    f"natural monomial of {lam} has top multiplicity {m}")
            continue
        for e2, c2 in _as_fund_poly_cached(rd_key, funds, w):
            poly[e2] = poly.get(e2, 0) - m * c2
    return tuple(sorted((e, c) for e, c in poly.items() if c))


def exterior_ranks(p: Presentation):
    """Ranks of the exterior powers over the coefficient ring (BZ/K)."""
    n = len(p.gens)
    return tuple(comb(n, k) for k in range(n + 1))


def complexify(p: Presentation):
    """The complexification map into the Brylinski-Zhang presentation.

    Generator images: c(dF[f]) = beta dG[f], c(lam_k) = -beta^3
    dG[gamma_k] dG[sigmabar gamma_k]; realified classes map to
    x + tau(x); coefficients map through c.
    """
    if p.kind != "KR":
        raise PresentationError("complexify maps a KR presentation")
    target = Presentation(
        p.rd, p.inv, None, "BZ", p.factors,
        tuple(Generator("dG", w, i) for i, (_, w, _) in enumerate(p.factors)))
    return ComplexificationMap(p, target)


class ComplexificationMap:
    def __init__(self, source: Presentation, target: Presentation):
        self.source = source
        self.target = target

    def __call__(self, e: RingElement) -> RingElement:
        p, q = self.source, self.target
        p._check_same(e)
        out = q.zero()
        for (cw, cls, plain, rslot), c in e.terms.items():
            part = q._element({(w2, j, ()): cc for (w2, j, _), cc
                               in p._c_image_coeff(cw, cls).items()})
            for gi in plain:
                g = p.gens[gi]
                if g.kind in ("dR", "dH"):
                    fi = next(f for f, (role, w, _) in enumerate(p.factors)
                              if w == g.payload and role in ("phi", "theta"))
                    part = part * q.dg_element(fi, 1)
                else:
                    u = p._pair_factor(g.pair, "u")
                    v = p._pair_factor(g.pair, "v")
                    part = part * (q.dg_element(u, 3) * q.dg_element(v, 0)) * (-1)
            if rslot is not None:
                part = part * q._element(dict(p._c_image_slot(rslot)))
            out = out + part * c
        return out


# ---------------------------------------------------------------------------
# module tables
# ---------------------------------------------------------------------------

def dominant_weights_up_to_dim(rd: RootData, bound: int):
    """All dominant weights of dimension <= bound.

    Only for groups whose irreducibles of bounded dimension are finite
    in number (simply-connected factors; U(n) has infinitely many
    determinant twists).
    """
    if isinstance(rd, UnRootData) or any(
            isinstance(f, UnRootData) for f in getattr(rd, "factors", ())):
        raise UnsupportedGroupError(
            "dimension truncation is not finite for U(n) factors")
    zero = rd.zero()
    seen = {zero}
    todo = [zero]
    out = []
    while todo:
        w = todo.pop()
        out.append(w)
        for i in range(rd.dim):
            w2 = tuple(x + (1 if k == i else 0) for k, x in enumerate(w))
            if w2 not in seen and weyl_dimension(rd, w2) <= bound:
                seen.add(w2)
                todo.append(w2)
    return sorted(out)


def classified_irreps(p: Presentation, bound: int):
    """(R-classes, H-classes, pair-classes) of all irreps of dim <= bound."""
    reals, quats, pairs = [], [], []
    seen_pairs = set()
    for w in dominant_weights_up_to_dim(p.rd, bound):
        cls = p.classify(w)
        if cls.type == TYPE_R:
            reals.append(cls)
        elif cls.type == TYPE_H:
            quats.append(cls)
        else:
            rep = min(w, cls.twisted_dual)
            if rep not in seen_pairs:
                seen_pairs.add(rep)
                pairs.append(p.classify(rep))
    return reals, quats, pairs


KO_PATTERN = {0: "free", -1: "tors", -2: "tors", -4: "free"}


def poincare_table(p: Presentation, bound: int = 50,
                   drop_mu_shift: bool = False):
    """Per-degree (free rank, 2-torsion count) of the normal-form basis.

    Truncated to irreducibles of dimension <= bound.  For BZ/K
    presentations the table counts exterior monomials (times the four
    beta-classes) and has no torsion.  ``drop_mu_shift`` omits the
    mu-scaled copy of each R/H summand; it exists as a sensitivity
    control for the verifier tests.
    """
    table = {canon_degree(-q): [0, 0] for q in range(8)}
    if p.kind in ("BZ", "K"):
        n = len(p.gens)
        for k in range(n + 1):
            for j in range(4):
                table[canon_degree(-2 * j - k)][0] += comb(n, k)
        return {d: tuple(v) for d, v in table.items()}

    reals, quats, pairs = classified_irreps(p, bound)
    lam_gens = [g for g in p.gens if g.kind == "lam"]
    delta_gens = [g for g in p.gens if g.kind != "lam"]
    plain = []
    for bits in _subsets_of(delta_gens):
        for lbits in _subsets_of(lam_gens):
            d = sum(g.degree for g in bits) + sum(g.degree for g in lbits)
            plain.append((canon_degree(d), frozenset(g.pair for g in lbits)))

    for d, _lams in plain:
        for count, shift in ((len(reals), 0), (len(quats), -4)):
            for off, kind in KO_PATTERN.items():
                if drop_mu_shift and off == -4:
                    continue
                dd = canon_degree(d + shift + off)
                table[dd][0 if kind == "free" else 1] += count

    t = p.split.t
    if t:
        for d, lams in plain:
            for i in range(4):
                for eps, nu in _slot_patterns(t, include_empty=True):
                    if (set(eps) | set(nu)) & lams:
                        continue
                    sd = canon_degree(d - 2 * i - len(eps) - len(nu))
                    if eps or nu:
                        # trivial-rho slot, canonical patterns only;
                        # coefficients run over RR + RH
                        if eps and (not nu or min(eps) < min(nu)):
                            table[sd][0] += len(reals)
                            table[canon_degree(sd - 4)][0] += len(quats)
                    # pair slots: one free Z per complex pair, all patterns
                    table[sd][0] += len(pairs)
    return {d: tuple(v) for d, v in table.items()}


def _subsets_of(items):
    out = []
    for k in range(len(items) + 1):
        out.extend(itertools.combinations(items, k))
    return out


def _slot_patterns(t, include_empty=False):
    out = []
    idx = list(range(t))
    for esz in range(t + 1):
        for eps in itertools.combinations(idx, esz):
            rest = [k for k in idx if k not in eps]
            for nsz in range(len(rest) + 1):
                for nu in itertools.combinations(rest, nsz):
                    if eps or nu or include_empty:
                        out.append((eps, nu))
    return out
