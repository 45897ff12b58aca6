"""Enveloping algebra in PBW normal form with the Kazhdan filtration.

A `PBWBasis` fixes an ordered generating set adapted to the slice data:
generators spanning a complement of the subalgebra `a` come first and the
`a`-generators last, each group sorted by ad h weight descending.  With
that order, canonical forms in the quotient module Q_ell are obtained by
chopping trailing a-factors (see walg.whittaker).

Monomial/term layout is shared with walg._kernels; straightening products
are memoized per basis and the cache can be disabled without changing any
result.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Sequence, Tuple

from walg import backend
from walg.errors import DegreeTooLow, WalgError
from walg.liealg import (CharacterChi, GradedDecomposition, LieAlgebra,
                         NilpotentPair)
from walg.linalg import QQ, Subspace, Vector, vec

Monomial = Tuple[Tuple[int, int], ...]
Terms = Dict[Monomial, QQ]


class PBWBasis:
    """Ordered, ad h homogeneous generating set of Ug adapted to (a, chi)."""

    __slots__ = ("lie", "vectors", "weights", "labels", "n_complement",
                 "bracket", "chi_vals", "_inv_rows", "cache_enabled",
                 "_cache_left", "_cache_right")

    def __init__(self, lie: LieAlgebra, graded_vectors: Sequence[Tuple[Vector, int]],
                 n_complement: int, chi_fn: Optional[CharacterChi] = None,
                 cache_enabled: bool = True):
        if len(graded_vectors) != lie.dim:
            raise WalgError("adapted basis must span the algebra")
        self.lie = lie
        self.vectors = tuple(v for v, _ in graded_vectors)
        self.weights = tuple(w for _, w in graded_vectors)
        self.n_complement = n_complement
        labels = []
        for k, v in enumerate(self.vectors):
            labels.append(lie.label_of_vector(v) or f"v{k}")
        self.labels = tuple(labels)
        self._inv_rows = self._invert_basis_matrix()
        self.bracket = self._structure_constants()
        if chi_fn is None:
            self.chi_vals = (QQ(0),) * lie.dim
        else:
            self.chi_vals = tuple(chi_fn(v) for v in self.vectors)
        self.cache_enabled = cache_enabled
        self._cache_left: Optional[dict] = {} if cache_enabled else None
        self._cache_right: Optional[dict] = {} if cache_enabled else None

    @classmethod
    def adapted(cls, lie: LieAlgebra, grading: GradedDecomposition,
                pair: Optional[NilpotentPair] = None,
                chi_fn: Optional[CharacterChi] = None) -> "PBWBasis":
        """Complement-of-a generators first, a-generators last, weights descending."""
        if pair is None:
            return cls(lie, grading.graded_basis(descending=True), lie.dim, chi_fn)
        complement: List[Tuple[Vector, int]] = []
        span = [v for v, _ in pair.a_graded]
        cur = Subspace(lie.dim, span)
        for i in sorted(grading.weights(), reverse=True):
            for v in grading.piece(i).basis:
                if not cur.contains(v):
                    complement.append((v, i))
                    span.append(v)
                    cur = Subspace(lie.dim, span)
        a_part = sorted(pair.a_graded, key=lambda vw: -vw[1])
        if len(complement) + len(a_part) != lie.dim:
            raise WalgError("complement construction failed")
        return cls(lie, complement + a_part, len(complement), chi_fn)

    def _invert_basis_matrix(self):
        d = self.lie.dim
        aug = []
        for r in range(d):
            row = [self.vectors[c][r] for c in range(d)] + \
                  [QQ(1) if c == r else QQ(0) for c in range(d)]
            aug.append(row)
        pivots, rows = backend.rref_dense(aug, 2 * d)
        if pivots[:d] != list(range(d)):
            raise WalgError("adapted basis is singular")
        inv = []
        for row in rows:
            inv.append(tuple(row.get(d + c, QQ(0)) for c in range(d)))
        return tuple(inv)

    def coords(self, v: Sequence) -> Vector:
        """Coordinates of an ambient vector on the adapted basis."""
        v = vec(v, self.lie.dim)
        return tuple(sum((row[j] * v[j] for j in range(self.lie.dim) if v[j]), QQ(0))
                     for row in self._inv_rows)

    def _structure_constants(self):
        d = self.lie.dim
        out = {}
        for i in range(d):
            for j in range(i + 1, d):
                w = self.lie.bracket(self.vectors[i], self.vectors[j])
                c = self.coords(w)
                entry = tuple((k, c[k]) for k in range(d) if c[k])
                if entry:
                    wt = self.weights[i] + self.weights[j]
                    for k, _ in entry:
                        if self.weights[k] != wt:
                            raise WalgError("bracket is not ad h homogeneous")
                    out[(i, j)] = entry
        return out

    # -- caches --------------------------------------------------------------

    def set_cache_enabled(self, enabled: bool):
        self.cache_enabled = enabled
        self._cache_left = {} if enabled else None
        self._cache_right = {} if enabled else None

    # -- degree bookkeeping ---------------------------------------------------

    def monomial_degree(self, mono: Monomial) -> int:
        """Kazhdan degree: sum of exp * (weight + 2) over the factors."""
        return sum(e * (self.weights[i] + 2) for i, e in mono)

    def generator(self, k: int) -> "UEAElement":
        return UEAElement(self, {((k, 1),): QQ(1)})

    def element_from_ambient(self, v: Sequence) -> "UEAElement":
        c = self.coords(v)
        return UEAElement(self, {((k, 1),): c[k] for k in range(self.lie.dim) if c[k]})

    def one(self) -> "UEAElement":
        return UEAElement(self, {(): QQ(1)})

    def zero(self) -> "UEAElement":
        return UEAElement(self, {})

    def __repr__(self):
        return (f"PBWBasis({self.lie!r}, order {'<'.join(self.labels)}, "
                f"{self.n_complement} complement)")


class UEAElement:
    """Exact rational combination of PBW-ordered monomials."""

    __slots__ = ("basis", "terms")

    def __init__(self, basis: PBWBasis, terms: Terms):
        self.basis = basis
        self.terms = {m: c for m, c in terms.items() if c}

    # -- ring operations ------------------------------------------------------

    def _check(self, other):
        if self.basis is not other.basis:
            raise WalgError("operands built over different PBW bases")

    def __add__(self, other):
        if not isinstance(other, UEAElement):
            other = self.basis.one() * QQ(other)
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, QQ(0)) + c
            if s:
                out[m] = s
            elif m in out:
                del out[m]
        return UEAElement(self.basis, out)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        return UEAElement(self.basis, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, UEAElement):
            other = self.basis.one() * QQ(other)
        return self.__add__(other.__neg__())

    def __mul__(self, other):
        if isinstance(other, UEAElement):
            self._check(other)
            b = self.basis
            out = backend.mul_terms(self.terms, other.terms, b.bracket, b._cache_left)
            return UEAElement(b, out)
        c = QQ(other)
        return UEAElement(self.basis, {m: c * v for m, v in self.terms.items()})

    def __rmul__(self, other):
        return self.__mul__(other)

    def __eq__(self, other):
        return (isinstance(other, UEAElement) and self.basis is other.basis
                and self.terms == other.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # -- filtration -----------------------------------------------------------

    def kazhdan_degree(self) -> Optional[int]:
        """Max of i + 2j over terms; None (bottom) for the zero element."""
        if not self.terms:
            return None
        return max(self.basis.monomial_degree(m) for m in self.terms)

    def homogeneous_terms(self, n: int) -> Terms:
        return {m: c for m, c in self.terms.items()
                if self.basis.monomial_degree(m) == n}

    def symbol_terms(self, n: int) -> Terms:
        """Terms of Kazhdan degree exactly n (the image in gr_n Ug)."""
        deg = self.kazhdan_degree()
        if deg is not None and deg > n:
            raise DegreeTooLow(f"element has degree {deg} > {n}")
        return self.homogeneous_terms(n)

    def __str__(self):
        if not self.terms:
            return "0"
        labels = self.basis.labels
        bits = []
        for m in sorted(self.terms, key=lambda m: (self.basis.monomial_degree(m), m)):
            c = self.terms[m]
            factors = "*".join(labels[i] if e == 1 else f"{labels[i]}^{e}"
                               for i, e in m)
            if not factors:
                bits.append(str(c))
            elif c == 1:
                bits.append(factors)
            elif c == -1:
                bits.append(f"-{factors}")
            else:
                bits.append(f"{c}*{factors}")
        out = bits[0]
        for b in bits[1:]:
            out += f" - {b[1:]}" if b.startswith("-") else f" + {b}"
        return out

    __repr__ = __str__


def pbw_multiply(u: UEAElement, v: UEAElement) -> UEAElement:
    """Product in PBW normal form."""
    return u * v


def pbw_multiply_rl(u: UEAElement, v: UEAElement) -> UEAElement:
    """Product straightened right-to-left; confluence cross-check."""
    u._check(v)
    b = u.basis
    out = backend.mul_terms_rl(u.terms, v.terms, b.bracket, b._cache_right)
    return UEAElement(b, out)


def commutator(u: UEAElement, v: UEAElement) -> UEAElement:
    """uv - vu; drops two Kazhdan degrees."""
    return u * v - v * u


def kazhdan_degree(u: UEAElement) -> Optional[int]:
    return u.kazhdan_degree()


def casimir(basis: PBWBasis) -> UEAElement:
    """Quadratic Casimir sum x_i x^i over Killing-dual bases of g.

    Centrality [Omega, x_k] = 0 is verified before returning.
    """
    L = basis.lie
    d = L.dim
    kb = [[L.killing(basis.vectors[a], basis.vectors[b]) for b in range(d)]
          for a in range(d)]
    aug = [row + [QQ(1) if c == r else QQ(0) for c in range(d)]
           for r, row in enumerate(kb)]
    pivots, rows = backend.rref_dense(aug, 2 * d)
    if pivots[:d] != list(range(d)):
        raise WalgError("Killing form degenerate in casimir()")
    inv = [[rows[r].get(d + c, QQ(0)) for c in range(d)] for r in range(d)]
    omega = basis.zero()
    for a in range(d):
        for b in range(d):
            c = inv[a][b]
            if c:
                omega = omega + c * (basis.generator(a) * basis.generator(b))
    for k in range(d):
        if not commutator(omega, basis.generator(k)).is_zero():
            raise WalgError("Casimir fails to be central")
    return omega


def convert_element(u: UEAElement, target: PBWBasis) -> UEAElement:
    """Rewrite u over another PBW basis of the same ambient algebra."""
    if u.basis.lie is not target.lie:
        raise WalgError("conversion requires the same underlying algebra")
    images = [target.element_from_ambient(v) for v in u.basis.vectors]
    out = target.zero()
    for m, c in u.terms.items():
        acc = target.one() * c
        for idx, exp in m:
            for _ in range(exp):
                acc = acc * images[idx]
        out = out + acc
    return out
