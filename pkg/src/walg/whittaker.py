"""Q_ell, the W-algebra H_ell, Whittaker vectors, and cohomology checks.

Canonical forms: with the adapted PBW order (a-generators last), reducing
an element of Ug modulo the left ideal generated by x - chi(x), x in a,
is literal suffix chopping: every trailing a-factor of a straightened
monomial is replaced by its chi-value.  H_ell is then computed degree by
degree as the joint kernel of the ad-action matrices of the n_ell
generators on the finite filtration pieces F_n Q.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Optional, Sequence

from walg import poisson
from walg.context import SliceContext
from walg.errors import (CenterCheckFailure, ComparisonFailure, DegreeOverflow,
                         TheoremFailure, WalgError)
from walg.linalg import (QQ, SparseMatrix, Subspace, Vector, kernel, rank,
                         solve, unit_vec)
from walg.pbw import Monomial, UEAElement, casimir, convert_element
from walg.poisson import KazhdanPolynomial

ZERO = QQ(0)
ONE = QQ(1)


def q_canonical_form(u: UEAElement, sctx: SliceContext) -> UEAElement:
    """Image of u in Q_ell as its canonical complement-monomial form."""
    basis = sctx.basis
    nc = basis.n_complement
    out: Dict[Monomial, QQ] = {}
    for mono, c in u.terms.items():
        head = []
        for i, e in mono:
            if i < nc:
                head.append((i, e))
            else:
                c = c * basis.chi_vals[i] ** e
                if not c:
                    break
        if not c:
            continue
        key = tuple(head)
        s = out.get(key, ZERO) + c
        if s:
            out[key] = s
        elif key in out:
            del out[key]
    return UEAElement(basis, out)


class QDegreeBasis:
    """Ordered monomial basis of F_n Q (degrees ascending, prefix-stable)."""

    __slots__ = ("sctx", "n", "monomials", "index", "counts")

    def __init__(self, sctx: SliceContext, n: int):
        degs = [v.degree for v in sctx.comp_chart.variables]
        monos = poisson.enumerate_monomials(degs, n)
        self.sctx = sctx
        self.n = n
        self.monomials = monos
        self.index = {m: i for i, m in enumerate(monos)}
        counts = [0] * (n + 1)
        basis = sctx.basis
        for m in monos:
            counts[basis.monomial_degree(m)] += 1
        # cumulative: counts[k] = dim F_k Q
        for k in range(1, n + 1):
            counts[k] += counts[k - 1]
        self.counts = counts
        hilb = sctx.hilbert_q(n)
        if [self.dim_f(k) for k in range(n + 1)] != \
                [sum(hilb[:k + 1]) for k in range(n + 1)]:
            raise WalgError("Q degree basis disagrees with the Hilbert series")

    def dim_f(self, k: int) -> int:
        return self.counts[min(k, self.n)]

    def coords(self, u: UEAElement, upto: Optional[int] = None) -> Vector:
        cnt = self.dim_f(upto) if upto is not None else len(self.monomials)
        row = [ZERO] * cnt
        for m, c in u.terms.items():
            i = self.index.get(m)
            if i is None or i >= cnt:
                raise DegreeOverflow("element outside the computed degree range")
            row[i] = c
        return tuple(row)

    def element(self, row: Sequence) -> UEAElement:
        terms = {self.monomials[i]: QQ(c) for i, c in enumerate(row) if c}
        return UEAElement(self.sctx.basis, terms)


def q_degree_basis(n: int, sctx: SliceContext) -> QDegreeBasis:
    return QDegreeBasis(sctx, n)


def ad_action_matrix(x: Sequence, qb: QDegreeBasis,
                     sctx: SliceContext) -> SparseMatrix:
    """Matrix of v -> q([x, v~]) on the degree basis; strictly lowers degree."""
    basis = sctx.basis
    xe = basis.element_from_ambient(x)
    cnt = len(qb.monomials)
    entries = {}
    for j, mono in enumerate(qb.monomials):
        v = UEAElement(basis, {mono: ONE})
        img = q_canonical_form(xe * v - v * xe, sctx)
        deg_in = basis.monomial_degree(mono)
        for m, c in img.terms.items():
            if basis.monomial_degree(m) >= deg_in:
                raise WalgError("ad action failed to lower the Kazhdan degree")
            entries[(qb.index[m], j)] = c
    return SparseMatrix(cnt, cnt, entries)


def left_action_matrix(x: Sequence, qb: QDegreeBasis,
                       sctx: SliceContext) -> SparseMatrix:
    """Matrix of v -> q((x - chi(x)) v~) on the degree basis."""
    basis = sctx.basis
    xe = basis.element_from_ambient(x)
    cx = sctx.chi(x)
    cnt = len(qb.monomials)
    entries = {}
    for j, mono in enumerate(qb.monomials):
        v = UEAElement(basis, {mono: ONE})
        img = q_canonical_form(xe * v, sctx) - cx * v
        for m, c in img.terms.items():
            entries[(qb.index[m], j)] = c
    return SparseMatrix(cnt, cnt, entries)


class HBasis:
    """Degreewise basis of H_ell with prefix-stable representatives."""

    __slots__ = ("sctx", "n_max", "qb", "elements", "degrees", "gr_dims",
                 "_subspaces", "_matrices")

    def __init__(self, sctx, n_max, qb, elements, degrees, gr_dims, subspaces,
                 matrices):
        self.sctx = sctx
        self.n_max = n_max
        self.qb = qb
        self.elements = elements          # QElement representatives
        self.degrees = degrees            # degree at which each entered
        self.gr_dims = gr_dims            # list, dim gr_n H for n <= n_max
        self._subspaces = subspaces       # n -> Subspace of F_n Q coordinates
        self._matrices = matrices         # ad matrices of the n_ell generators

    def dim_f(self, n: int) -> int:
        return sum(self.gr_dims[:n + 1])

    def subspace_at(self, n: int) -> Subspace:
        return self._subspaces[n]

    def elements_up_to(self, n: int) -> List[UEAElement]:
        return self.elements[:self.dim_f(n)]

    def contains(self, u: UEAElement, n: Optional[int] = None) -> bool:
        n = self.n_max if n is None else n
        row = self.qb.coords(u, upto=n)
        return self._subspaces[n].contains(row)

    def express(self, u: UEAElement) -> Vector:
        """Coefficients of u on the stored H-basis representatives."""
        deg = u.kazhdan_degree()
        n = 0 if deg is None else deg
        if n > self.n_max:
            raise DegreeOverflow(f"degree {n} beyond computed range {self.n_max}")
        cols = [self.qb.coords(el) for el in self.elements]
        M = SparseMatrix.from_columns(cols, rows=len(self.qb.monomials))
        x = solve(M, self.qb.coords(u))
        if x is None:
            raise WalgError("element does not lie in the computed H span")
        return x

    def multiplication_table(self, bound: Optional[int] = None):
        """(i, j) -> coefficient vector of elem_i * elem_j on the basis."""
        bound = self.n_max if bound is None else bound
        table = {}
        for i, a in enumerate(self.elements):
            for j, b in enumerate(self.elements):
                if self.degrees[i] + self.degrees[j] <= bound:
                    prod = h_multiply(a, b, self)
                    table[(i, j)] = self.express(prod)
        return table


def h_basis(n_max: int, sctx: SliceContext, threads: Optional[int] = None) -> HBasis:
    """F_n H for n <= n_max as joint kernels of the n_ell ad-matrices.

    Kernel bases are extended degree by degree so that the basis of
    F_{n-1} H is literally a prefix of the basis of F_n H.
    """
    qb = QDegreeBasis(sctx, n_max)
    gens = sctx.pair.n_graded
    threads = threads if threads is not None else _default_threads()
    if threads > 1 and len(gens) > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            mats = list(ex.map(lambda g: ad_action_matrix(g[0], qb, sctx), gens))
    else:
        mats = [ad_action_matrix(g[0], qb, sctx) for g in gens]
    elements: List[UEAElement] = []
    degrees: List[int] = []
    gr_dims: List[int] = []
    subspaces: Dict[int, Subspace] = {}
    chosen_rows: List[Vector] = []
    for n in range(n_max + 1):
        cnt = qb.dim_f(n)
        stacked_entries = {}
        off = 0
        for M in mats:
            for (r, c), v in M.entries.items():
                if r < cnt and c < cnt:
                    stacked_entries[(off + r, c)] = v
            off += cnt
        K = kernel(SparseMatrix(off, cnt, stacked_entries)) if gens else \
            Subspace(cnt, [unit_vec(cnt, j) for j in range(cnt)])
        subspaces[n] = K
        padded = [tuple(r) + (ZERO,) * (cnt - len(r)) for r in chosen_rows]
        span = Subspace(cnt, padded)
        for v in K.basis:
            if not span.contains(v):
                padded.append(v)
                span = Subspace(cnt, padded)
                chosen_rows.append(v)
                elements.append(qb.element(v))
                degrees.append(n)
    gr_dims = [0] * (n_max + 1)
    for d in degrees:
        gr_dims[d] += 1
    return HBasis(sctx, n_max, qb, elements, degrees, gr_dims, subspaces, mats)


def _default_threads() -> int:
    try:
        return max(1, int(os.environ.get("WALG_THREADS", "1")))
    except ValueError:
        return 1


def h_multiply(a: UEAElement, b: UEAElement, hb: HBasis) -> UEAElement:
    """Product in H_ell: multiply representatives in Ug, reduce mod I_ell.

    Verifies that the result lies in the computed F_{deg a + deg b} H span.
    """
    da = a.kazhdan_degree() or 0
    db = b.kazhdan_degree() or 0
    if da + db > hb.n_max:
        raise DegreeOverflow(
            f"product degree {da + db} exceeds computed range {hb.n_max}")
    prod = q_canonical_form(a * b, hb.sctx)
    if not hb.contains(prod, da + db):
        raise WalgError("H is not closed under multiplication (bug)")
    return prod


def nu_map(a: UEAElement, sctx: SliceContext,
           n: Optional[int] = None) -> KazhdanPolynomial:
    """nu of the top symbol of a: restrict gr_n a to the slice chart."""
    if n is None:
        n = a.kazhdan_degree()
    if n is None:
        return KazhdanPolynomial.zero(sctx.slice_data.chart)
    sym = KazhdanPolynomial(sctx.comp_chart, a.homogeneous_terms(n))
    return sctx.slice_data.restrict(sym)


class TheoremReport:
    __slots__ = ("n_max", "gr_dims", "slice_dims", "injective", "mult_pairs", "ok")

    def __init__(self, **kw):
        for k in self.__slots__:
            setattr(self, k, kw[k])

    def as_dict(self):
        return {k: getattr(self, k) for k in self.__slots__}


def verify_theorem(n_max: int, sctx: SliceContext,
                   hb: Optional[HBasis] = None) -> TheoremReport:
    """Degreewise check that nu: gr H -> C[S] is an algebra isomorphism.

    For every n <= n_max: dim gr_n H equals the slice Hilbert dimension
    and nu is injective on gr_n H; nu is multiplicative on all basis pairs
    with product degree in range.
    """
    if hb is None:
        hb = h_basis(n_max, sctx)
    slice_dims = sctx.hilbert_slice(n_max)
    if hb.gr_dims != slice_dims[:n_max + 1]:
        for n in range(n_max + 1):
            if hb.gr_dims[n] != slice_dims[n]:
                raise TheoremFailure(
                    f"dim gr_{n} H = {hb.gr_dims[n]} != {slice_dims[n]} = dim C[S]_{n}",
                    degree=n)
    injective = []
    sdegs = sctx.slice_data.degrees
    for n in range(n_max + 1):
        idxs = [i for i, d in enumerate(hb.degrees) if d == n]
        if not idxs:
            injective.append(True)
            continue
        monos = poisson.monomials_of_degree(sdegs, n)
        mindex = {m: i for i, m in enumerate(monos)}
        rows = []
        for i in idxs:
            p = nu_map(hb.elements[i], sctx, n)
            row = [ZERO] * len(monos)
            for m, c in p.terms.items():
                row[mindex[m]] = c
            rows.append(row)
        ok = rank(SparseMatrix.from_rows(rows, cols=len(monos))) == len(idxs)
        injective.append(ok)
        if not ok:
            raise TheoremFailure(f"nu not injective on gr_{n} H", degree=n)
    mult_pairs = 0
    for i, a in enumerate(hb.elements):
        for j, b in enumerate(hb.elements):
            if hb.degrees[i] + hb.degrees[j] > n_max:
                continue
            prod = h_multiply(a, b, hb)
            lhs = nu_map(prod, sctx, hb.degrees[i] + hb.degrees[j])
            rhs = nu_map(a, sctx) * nu_map(b, sctx)
            if lhs != rhs:
                raise TheoremFailure(
                    f"nu not multiplicative on basis pair ({i},{j})",
                    degree=hb.degrees[i] + hb.degrees[j])
            mult_pairs += 1
    return TheoremReport(n_max=n_max, gr_dims=hb.gr_dims,
                         slice_dims=slice_dims[:n_max + 1],
                         injective=injective, mult_pairs=mult_pairs, ok=True)


def gr_commutator_vs_poisson(a: UEAElement, b: UEAElement, hb: HBasis) -> bool:
    """Compare nu(gr[a,b]) with the reduced slice bracket of the symbols.

    The two sides come from independent pipelines: PBW commutator followed
    by nu versus invariant lift / Lie-Poisson / restriction.
    """
    sctx = hb.sctx
    if not sctx.is_lagrangian:
        raise WalgError("the reduced bracket needs a Lagrangian ell")
    da = a.kazhdan_degree() or 0
    db = b.kazhdan_degree() or 0
    if da + db > hb.n_max:
        raise DegreeOverflow("commutator degree outside computed range")
    comm = q_canonical_form(a * b - b * a, hb.sctx)
    cd = comm.kazhdan_degree()
    if cd is not None and cd > da + db - 2:
        raise WalgError("commutator violates the filtration degree law")
    lhs = nu_map(comm, sctx, da + db - 2)
    rhs = poisson.slice_poisson_bracket(nu_map(a, sctx, da), nu_map(b, sctx, db),
                                        sctx.reduction)
    return lhs == rhs


def whittaker_vectors(n: int, sctx: SliceContext,
                      qb: Optional[QDegreeBasis] = None) -> Subspace:
    """Wh(F_n Q) = {v : (x - chi(x)) v = 0 mod I, x in m} (Lagrangian case)."""
    if not sctx.is_lagrangian:
        raise WalgError("Whittaker vectors are computed in the Lagrangian case")
    if qb is None:
        qb = QDegreeBasis(sctx, n)
    cnt = qb.dim_f(n)
    stacked = {}
    off = 0
    for x, _ in sctx.pair.a_graded:
        M = left_action_matrix(x, qb, sctx)
        for (r, c), v in M.entries.items():
            if r < cnt and c < cnt:
                stacked[(off + r, c)] = v
        off += cnt
    return kernel(SparseMatrix(off, cnt, stacked))


class CohomologyReport:
    """Dimensions of H^i(n_ell, gr Q) per (cohomological index, Kazhdan degree)."""

    __slots__ = ("i_max", "n_max", "dims")

    def __init__(self, i_max, n_max, dims):
        self.i_max = i_max
        self.n_max = n_max
        self.dims = dims

    def dim(self, i: int, n: int) -> int:
        return self.dims.get((i, n), 0)

    def row(self, i: int) -> List[int]:
        return [self.dim(i, n) for n in range(self.n_max + 1)]


def ce_blocks(i_max: int, n_max: int, sctx: SliceContext):
    """Graded blocks of the truncated Chevalley-Eilenberg complex.

    Returns {n: (bases, diffs)} where bases[i] lists the (subset, monomial)
    cochain basis of Lambda^i n* (x) gr Q in Kazhdan degree n (a dual
    generator of weight w counts -w) and diffs[i] is the differential
    C^i -> C^{i+1} on those bases.
    """
    from itertools import combinations

    gens = sctx.pair.n_graded
    nn = len(gens)
    if i_max > nn:
        raise WalgError("cohomological index exceeds dim n_ell")
    comp_degs = [v.degree for v in sctx.comp_chart.variables]
    L = sctx.lie
    red = sctx.reduction

    ncols_mat = SparseMatrix.from_columns([v for v, _ in gens], rows=L.dim)

    def n_coords(w: Sequence) -> Vector:
        c = solve(ncols_mat, w)
        if c is None:
            raise WalgError("n_ell is not closed under bracket")
        return c

    bracket_nn = {}
    for a in range(nn):
        for b in range(a + 1, nn):
            bracket_nn[(a, b)] = n_coords(L.bracket(gens[a][0], gens[b][0]))

    def cochain_basis(i: int, n: int):
        out = []
        for S in combinations(range(nn), i):
            dual = sum(-gens[s][1] for s in S)
            rem = n - dual
            if rem < 0:
                continue
            for mono in poisson.monomials_of_degree(comp_degs, rem):
                out.append((S, mono))
        return out

    def insert_sign(s, rest):
        if s in rest:
            return None, 0
        pos = sum(1 for r in rest if r < s)
        T = tuple(sorted(rest + (s,)))
        return T, (-1) ** pos

    def differential(i: int, dom, cod):
        cod_index = {bm: k for k, bm in enumerate(cod)}
        entries = {}

        def acc(r, j, v):
            s = entries.get((r, j), ZERO) + v
            if s:
                entries[(r, j)] = s
            elif (r, j) in entries:
                del entries[(r, j)]

        for j, (S, mono) in enumerate(dom):
            poly = KazhdanPolynomial(sctx.comp_chart, {mono: ONE})
            # T = S + {x}, coefficient (-1)^pos(x) n_x . mono
            for x in range(nn):
                T, sign = insert_sign(x, S)
                if T is None:
                    continue
                acted = red.derivation(gens[x][0], poly)
                for m2, c2 in acted.terms.items():
                    r = cod_index.get((T, m2))
                    if r is None:
                        raise WalgError("differential left the graded block")
                    acc(r, j, sign * c2)
            # contract a bracket [n_a, n_b] back into S
            for T in combinations(range(nn), i + 1):
                for l in range(i + 1):
                    for m in range(l + 1, i + 1):
                        a, b = T[l], T[m]
                        rest = tuple(t for t in T if t not in (a, b))
                        for s_idx, c in enumerate(bracket_nn[(a, b)]):
                            if not c:
                                continue
                            U, sign2 = insert_sign(s_idx, rest)
                            if U != S:
                                continue
                            r = cod_index.get((T, mono))
                            if r is None:
                                raise WalgError("differential left the graded block")
                            acc(r, j, ((-1) ** (l + m)) * sign2 * c)
        return SparseMatrix(len(cod), len(dom), entries)

    blocks = {}
    top = min(i_max + 1, nn)
    for n in range(n_max + 1):
        bases = [cochain_basis(i, n) for i in range(top + 2)]
        diffs = [differential(i, bases[i], bases[i + 1])
                 for i in range(top + 1)]
        blocks[n] = (bases, diffs)
    return blocks


def ce_cohomology(i_max: int, n_max: int, sctx: SliceContext) -> CohomologyReport:
    """Chevalley-Eilenberg cohomology of n_ell with coefficients in gr Q.

    The truncation at Kazhdan degree n_max makes every graded block
    finite-dimensional; kernel and image ranks are exact.
    """
    blocks = ce_blocks(i_max, n_max, sctx)
    dims = {}
    for n, (bases, diffs) in blocks.items():
        ranks = [rank(d) for d in diffs]
        for i in range(i_max + 1):
            ci = len(bases[i]) if i < len(bases) else 0
            r_i = ranks[i] if i < len(ranks) else 0
            r_prev = ranks[i - 1] if i >= 1 and i - 1 < len(ranks) else 0
            dims[(i, n)] = ci - r_i - r_prev
    return CohomologyReport(i_max, n_max, dims)


class CenterReport:
    __slots__ = ("canonical_form", "degree", "nu_image", "ok")

    def __init__(self, canonical_form, degree, nu_image, ok):
        self.canonical_form = canonical_form
        self.degree = degree
        self.nu_image = nu_image
        self.ok = ok


def center_injects(n_max: int, sctx: SliceContext,
                   hb: Optional[HBasis] = None) -> CenterReport:
    """The Casimir image lies in H, is nonconstant, with nonzero nu-image."""
    omega = casimir(sctx.basis)
    img = q_canonical_form(omega, sctx)
    deg = img.kazhdan_degree()
    if deg is None or all(not m for m in img.terms):
        raise CenterCheckFailure("Casimir image is constant in Q")
    for x, _ in sctx.pair.n_graded:
        xe = sctx.basis.element_from_ambient(x)
        if not q_canonical_form(xe * img - img * xe, sctx).is_zero():
            raise CenterCheckFailure("Casimir image is not ad n_ell invariant")
    if hb is not None:
        if deg > hb.n_max or not hb.contains(img, deg):
            raise CenterCheckFailure("Casimir image outside the computed H basis")
    nu = nu_map(img, sctx, deg)
    if nu.is_zero():
        raise CenterCheckFailure("Casimir image has zero nu-image")
    return CenterReport(str(img), deg, str(nu), True)


class ComparisonReport:
    __slots__ = ("n_max", "dims1", "dims2", "bijective", "mult_pairs", "ok")

    def __init__(self, **kw):
        for k in self.__slots__:
            setattr(self, k, kw[k])

    def as_dict(self):
        return {k: getattr(self, k) for k in self.__slots__}


def ell_comparison(sctx1: SliceContext, sctx2: SliceContext, n_max: int,
                   hb1: Optional[HBasis] = None,
                   hb2: Optional[HBasis] = None) -> ComparisonReport:
    """The natural map H_{ell1} -> H_{ell2} for ell1 inside ell2.

    Representatives transported between the two PBW bases and reduced mod
    the larger ideal; checks degreewise bijectivity and that the map
    intertwines the multiplication tables.
    """
    if not sctx2.symp.ell.contains_subspace(sctx1.symp.ell):
        raise ComparisonFailure("ell1 is not contained in ell2")
    if hb1 is None:
        hb1 = h_basis(n_max, sctx1)
    if hb2 is None:
        hb2 = h_basis(n_max, sctx2)

    def transport(u: UEAElement) -> UEAElement:
        return q_canonical_form(convert_element(u, sctx2.basis), sctx2)

    images = [transport(el) for el in hb1.elements]
    for n in range(n_max + 1):
        if hb1.dim_f(n) != hb2.dim_f(n):
            raise ComparisonFailure(
                f"dim F_{n}H differs: {hb1.dim_f(n)} vs {hb2.dim_f(n)}", degree=n)
        rows = []
        for i, img in enumerate(images[:hb1.dim_f(n)]):
            if (img.kazhdan_degree() or 0) > n:
                raise ComparisonFailure("map does not respect the filtration",
                                        degree=n)
            if not hb2.contains(img, n):
                raise ComparisonFailure("image not in H_{ell2}", degree=n)
            rows.append(hb2.qb.coords(img, upto=n))
        if rows and rank(SparseMatrix.from_rows(rows, cols=hb2.qb.dim_f(n))) \
                != hb1.dim_f(n):
            raise ComparisonFailure("map not injective on F_n H", degree=n)
    mult_pairs = 0
    for i, a in enumerate(hb1.elements):
        for j, b in enumerate(hb1.elements):
            if hb1.degrees[i] + hb1.degrees[j] > n_max:
                continue
            lhs = transport(h_multiply(a, b, hb1))
            rhs = q_canonical_form(images[i] * images[j], sctx2)
            if lhs != rhs:
                raise ComparisonFailure(
                    f"map fails to intertwine products on pair ({i},{j})")
            mult_pairs += 1
    return ComparisonReport(n_max=n_max, dims1=hb1.gr_dims, dims2=hb2.gr_dims,
                            bijective=[True] * (n_max + 1),
                            mult_pairs=mult_pairs, ok=True)
