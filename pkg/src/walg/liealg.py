"""Lie algebras over Q by structure constants, sl2-triples, gradings.

Everything downstream (enveloping algebra, slice charts, reduction) hangs
off the data built here: the ad h eigenspace decomposition, the linear
functional chi dual to e, the skew form omega on the weight -1 space with
an isotropic subspace ell, the nilpotent subalgebra pair (a, n_ell), and
the centralizer Ker ad f.
"""

from __future__ import annotations

import json
from typing import Dict, List, Optional, Sequence, Tuple

from walg import linalg
from walg.errors import (DecompositionFailure, DegenerateKillingForm,
                         DegenerateOmega, JacobiViolation, NonIntegerEigenvalue,
                         NotInsideGm1, NotIsotropic, NotNilpotent, NoTripleFound,
                         WalgError)
from walg.linalg import (QQ, SparseMatrix, Subspace, Vector, add_vec, dot,
                         is_zero_vec, kernel, rank, scale_vec, solve, sub_vec,
                         sum_and_intersection, unit_vec, vec, zero_vec)


class LieAlgebra:
    """Lie algebra with a fixed basis and exact structure constants.

    `table` maps basis pairs (i, j) with i < j to the sparse coordinate
    vector of [x_i, x_j]; antisymmetry is built into the storage.
    Construction verifies the Jacobi identity on all basis triples and
    nondegeneracy of the Killing form.
    """

    __slots__ = ("dim", "labels", "table", "_ad", "_killing")

    def __init__(self, labels: Sequence[str], table: Dict[Tuple[int, int], Dict[int, QQ]],
                 validate: bool = True):
        self.dim = len(labels)
        self.labels = tuple(labels)
        clean: Dict[Tuple[int, int], Dict[int, QQ]] = {}
        for (i, j), v in table.items():
            if not (0 <= i < j < self.dim):
                raise WalgError(f"bracket key ({i},{j}) must satisfy 0 <= i < j < dim")
            entry = {k: QQ(c) for k, c in (v.items() if isinstance(v, dict) else v) if c}
            if entry:
                clean[(i, j)] = entry
        self.table = clean
        self._ad: Optional[List[Dict[Tuple[int, int], QQ]]] = None
        self._killing: Optional[Tuple[Tuple[QQ, ...], ...]] = None
        if validate:
            self._check_jacobi()
            if rank(self.killing_matrix_sparse()) != self.dim:
                raise DegenerateKillingForm(
                    f"Killing form of '{','.join(labels)}' algebra is degenerate")

    # -- brackets -----------------------------------------------------------

    def bracket_basis(self, i: int, j: int) -> Dict[int, QQ]:
        """[x_i, x_j] as a sparse coordinate dict, any i, j."""
        if i == j:
            return {}
        if i < j:
            return self.table.get((i, j), {})
        return {k: -c for k, c in self.table.get((j, i), {}).items()}

    def bracket(self, x: Sequence, y: Sequence) -> Vector:
        """[x, y] for coordinate vectors."""
        out = [QQ(0)] * self.dim
        xs = [(i, c) for i, c in enumerate(x) if c]
        ys = [(j, c) for j, c in enumerate(y) if c]
        for i, xi in xs:
            for j, yj in ys:
                if i == j:
                    continue
                coeff = xi * yj
                for k, c in self.bracket_basis(i, j).items():
                    out[k] += coeff * c
        return tuple(out)

    def ad_sparse(self, x: Sequence) -> SparseMatrix:
        """Matrix of ad x: column j is [x, x_j]."""
        entries = {}
        for j in range(self.dim):
            col = [QQ(0)] * self.dim
            for i, xi in enumerate(x):
                if xi:
                    for k, c in self.bracket_basis(i, j).items():
                        col[k] += xi * c
            for k, v in enumerate(col):
                if v:
                    entries[(k, j)] = v
        return SparseMatrix(self.dim, self.dim, entries)

    # -- Killing form -------------------------------------------------------

    def _ad_basis(self):
        if self._ad is None:
            self._ad = [self.ad_sparse(unit_vec(self.dim, i)).entries
                        for i in range(self.dim)]
        return self._ad

    def killing_matrix(self) -> Tuple[Tuple[QQ, ...], ...]:
        """kappa(x_i, x_j) = trace(ad x_i ad x_j) on the basis."""
        if self._killing is None:
            ads = self._ad_basis()
            K = [[QQ(0)] * self.dim for _ in range(self.dim)]
            for i in range(self.dim):
                for j in range(i, self.dim):
                    t = QQ(0)
                    for (r, c), v in ads[i].items():
                        w = ads[j].get((c, r))
                        if w:
                            t += v * w
                    K[i][j] = t
                    K[j][i] = t
            self._killing = tuple(tuple(row) for row in K)
        return self._killing

    def killing_matrix_sparse(self) -> SparseMatrix:
        return SparseMatrix.from_rows(self.killing_matrix())

    def killing(self, x: Sequence, y: Sequence) -> QQ:
        K = self.killing_matrix()
        t = QQ(0)
        for i, xi in enumerate(x):
            if xi:
                for j, yj in enumerate(y):
                    if yj:
                        t += xi * K[i][j] * yj
        return t

    # -- validation ---------------------------------------------------------

    def _check_jacobi(self):
        d = self.dim
        for i in range(d):
            ei = unit_vec(d, i)
            for j in range(i + 1, d):
                ej = unit_vec(d, j)
                bij = self.bracket_basis(i, j)
                for k in range(j + 1, d):
                    ek = unit_vec(d, k)
                    acc = [QQ(0)] * d
                    for m, c in bij.items():
                        for t, c2 in self.bracket_basis(m, k).items():
                            acc[t] += c * c2
                    for m, c in self.bracket_basis(j, k).items():
                        for t, c2 in self.bracket_basis(m, i).items():
                            acc[t] += c * c2
                    for m, c in self.bracket_basis(k, i).items():
                        for t, c2 in self.bracket_basis(m, j).items():
                            acc[t] += c * c2
                    if any(acc):
                        raise JacobiViolation((self.labels[i], self.labels[j],
                                               self.labels[k]), tuple(acc))

    def label_of_vector(self, v: Sequence) -> Optional[str]:
        """Basis label if v is +/- a coordinate vector, else None."""
        nz = [(i, c) for i, c in enumerate(v) if c]
        if len(nz) == 1 and nz[0][1] in (QQ(1), QQ(-1)):
            i, c = nz[0]
            return self.labels[i] if c == 1 else "-" + self.labels[i]
        return None

    def __repr__(self):
        return f"LieAlgebra(dim {self.dim})"


def make_lie_algebra(labels: Sequence[str], bracket_table) -> LieAlgebra:
    """Validated Lie algebra from a bracket table on pairs i < j."""
    return LieAlgebra(labels, bracket_table)


def killing_form(L: LieAlgebra):
    return L.killing_matrix()


# ---------------------------------------------------------------------------
# sl_n and standard nilpotents
# ---------------------------------------------------------------------------


def sln_basis_matrices(n: int) -> Tuple[List[str], List[List[List[QQ]]]]:
    """Basis of traceless n x n matrices: E_ij (i<j), H_i, E_ij (i>j)."""
    if n < 2:
        raise WalgError("sl_n needs n >= 2")
    labels: List[str] = []
    mats: List[List[List[QQ]]] = []

    def emat(a, b):
        M = [[QQ(0)] * n for _ in range(n)]
        M[a][b] = QQ(1)
        return M

    for i in range(n):
        for j in range(i + 1, n):
            labels.append(f"E{i + 1}{j + 1}")
            mats.append(emat(i, j))
    for i in range(n - 1):
        labels.append(f"H{i + 1}")
        M = [[QQ(0)] * n for _ in range(n)]
        M[i][i] = QQ(1)
        M[i + 1][i + 1] = QQ(-1)
        mats.append(M)
    for j in range(n):
        for i in range(j + 1, n):
            labels.append(f"E{i + 1}{j + 1}")
            mats.append(emat(i, j))
    return labels, mats


def sln_matrix_to_coords(n: int, M: Sequence[Sequence]) -> Vector:
    """Coordinates of a traceless matrix on the `sln_basis_matrices` basis."""
    tr = sum((QQ(M[i][i]) for i in range(n)), QQ(0))
    if tr:
        raise WalgError("matrix is not traceless")
    coords: List[QQ] = []
    for i in range(n):
        for j in range(i + 1, n):
            coords.append(QQ(M[i][j]))
    acc = QQ(0)
    for i in range(n - 1):
        acc += QQ(M[i][i])
        coords.append(acc)
    for j in range(n):
        for i in range(j + 1, n):
            coords.append(QQ(M[i][j]))
    return tuple(coords)


def make_sln(n: int) -> LieAlgebra:
    """sl_n over Q with matrix-unit basis; brackets from commutators."""
    labels, mats = sln_basis_matrices(n)
    d = len(labels)

    def mul(A, B):
        return [[sum((A[i][k] * B[k][j] for k in range(n)), QQ(0))
                 for j in range(n)] for i in range(n)]

    table = {}
    for i in range(d):
        for j in range(i + 1, d):
            AB = mul(mats[i], mats[j])
            BA = mul(mats[j], mats[i])
            C = [[AB[r][c] - BA[r][c] for c in range(n)] for r in range(n)]
            coords = sln_matrix_to_coords(n, C)
            entry = {k: v for k, v in enumerate(coords) if v}
            if entry:
                table[(i, j)] = entry
    return LieAlgebra(labels, table)


class Sl2Triple:
    """(e, h, f) with [h,e] = 2e, [h,f] = -2f, [e,f] = h, all exact."""

    __slots__ = ("e", "h", "f")

    def __init__(self, L: LieAlgebra, e: Sequence, h: Sequence, f: Sequence):
        self.e = vec(e, L.dim)
        self.h = vec(h, L.dim)
        self.f = vec(f, L.dim)
        if L.bracket(self.h, self.e) != scale_vec(2, self.e):
            raise NoTripleFound("[h,e] != 2e")
        if L.bracket(self.h, self.f) != scale_vec(-2, self.f):
            raise NoTripleFound("[h,f] != -2f")
        if L.bracket(self.e, self.f) != self.h:
            raise NoTripleFound("[e,f] != h")


def _is_nilpotent_ad(L: LieAlgebra, x: Sequence) -> bool:
    A = L.ad_sparse(x).entries
    cur = dict(A)
    for _ in range(2 * L.dim + 1):
        if not cur:
            return True
        nxt: Dict[Tuple[int, int], QQ] = {}
        for (r, c), v in cur.items():
            for (r2, c2), w in A.items():
                if c == r2:
                    key = (r, c2)
                    s = nxt.get(key, QQ(0)) + v * w
                    if s:
                        nxt[key] = s
                    elif key in nxt:
                        del nxt[key]
        cur = nxt
    return not cur


def complete_sl2_triple(L: LieAlgebra, e: Sequence) -> Sl2Triple:
    """Extend a nonzero ad-nilpotent e to an sl2-triple.

    Solves (ad e)^2 y = -2e and sets h = [e, y] (so [h,e] = 2e and h lies
    in the image of ad e), then solves the joint linear system
    [h,f] = -2f, [e,f] = h for f.  Any solution is accepted.
    """
    e = vec(e, L.dim)
    if is_zero_vec(e):
        raise NotNilpotent("e = 0 is rejected; the orbit must be nonzero")
    if not _is_nilpotent_ad(L, e):
        raise NotNilpotent("ad e is not nilpotent")
    ade = L.ad_sparse(e)
    ade2 = _compose(ade, ade, L.dim)
    y = solve(ade2, scale_vec(-2, e))
    if y is None:
        raise NoTripleFound("(ad e)^2 y = -2e has no solution")
    h = L.bracket(e, y)
    adh = L.ad_sparse(h)
    two_id = {(i, i): QQ(2) for i in range(L.dim)}
    top = SparseMatrix(L.dim, L.dim, _add_entries(adh.entries, two_id))
    stacked = top.stack(ade)
    b = list(zero_vec(L.dim)) + list(h)
    f = solve(stacked, b)
    if f is None:
        raise NoTripleFound("no f with [h,f] = -2f and [e,f] = h")
    return Sl2Triple(L, e, h, f)


def _compose(A: SparseMatrix, B: SparseMatrix, dim: int) -> SparseMatrix:
    cols: Dict[int, Dict[int, QQ]] = {}
    for (r, c), v in B.entries.items():
        cols.setdefault(c, {})[r] = v
    entries: Dict[Tuple[int, int], QQ] = {}
    for c, bcol in cols.items():
        acc: Dict[int, QQ] = {}
        for mid, bv in bcol.items():
            for (r, c2), av in A.entries.items():
                if c2 == mid:
                    acc[r] = acc.get(r, QQ(0)) + av * bv
        for r, v in acc.items():
            if v:
                entries[(r, c)] = v
    return SparseMatrix(dim, dim, entries)


def _add_entries(a, b):
    out = dict(a)
    for k, v in b.items():
        s = out.get(k, QQ(0)) + v
        if s:
            out[k] = s
        elif k in out:
            del out[k]
    return out


class GradedDecomposition:
    """Eigenspace decomposition of ad h with integer eigenvalues."""

    __slots__ = ("L", "pieces")

    def __init__(self, L: LieAlgebra, pieces: Dict[int, Subspace]):
        self.L = L
        self.pieces = dict(sorted(pieces.items()))

    def weights(self) -> List[int]:
        return list(self.pieces.keys())

    def piece(self, i: int) -> Subspace:
        got = self.pieces.get(i)
        if got is None:
            return Subspace(self.L.dim, [])
        return got

    def graded_basis(self, weights=None, descending=True):
        """[(vector, weight)] over selected weights, echelon order in each."""
        ws = sorted(self.pieces if weights is None else weights, reverse=descending)
        out = []
        for i in ws:
            for v in self.piece(i).basis:
                out.append((v, i))
        return out

    def weight_of(self, v: Sequence) -> Optional[int]:
        for i, sp in self.pieces.items():
            if sp.contains(v):
                return i
        return None


def ad_h_grading(L: LieAlgebra, triple: Sl2Triple) -> GradedDecomposition:
    """g = (+) g(i) under ad h; raises if integer eigenvalues don't exhaust g."""
    adh = L.ad_sparse(triple.h)
    pieces: Dict[int, Subspace] = {}
    total = 0
    bound = 2 * L.dim
    i = 0
    scan = [0]
    for k in range(1, bound + 1):
        scan.extend((k, -k))
    for i in scan:
        shift = {(r, r): QQ(-i) for r in range(L.dim)}
        M = SparseMatrix(L.dim, L.dim, _add_entries(adh.entries, shift))
        ker = kernel(M)
        if ker.dim:
            pieces[i] = ker
            total += ker.dim
            if total == L.dim:
                break
    if total != L.dim:
        raise NonIntegerEigenvalue(
            f"integer ad h eigenspaces span {total} of {L.dim} dimensions")
    return GradedDecomposition(L, pieces)


class CharacterChi:
    """chi = kappa(e, .)/kappa(e, f); the point Phi(e) of g*."""

    __slots__ = ("covector", "kappa_ef")

    def __init__(self, L: LieAlgebra, triple: Sl2Triple):
        K = L.killing_matrix()
        self.kappa_ef = L.killing(triple.e, triple.f)
        if not self.kappa_ef:
            raise DegenerateKillingForm("kappa(e,f) = 0 for an sl2-triple")
        row = []
        for j in range(L.dim):
            v = sum((triple.e[i] * K[i][j] for i in range(L.dim) if triple.e[i]), QQ(0))
            row.append(v / self.kappa_ef)
        self.covector = tuple(row)

    def __call__(self, v: Sequence) -> QQ:
        return dot(self.covector, vec(v, len(self.covector)))


def chi(L: LieAlgebra, triple: Sl2Triple) -> CharacterChi:
    c = CharacterChi(L, triple)
    if c(triple.f) != 1:
        raise WalgError("normalization <chi, f> = 1 failed")
    return c


class SymplecticData:
    """omega(x,y) = chi([x,y]) on g(-1), an isotropic ell, and ell^perp."""

    __slots__ = ("gm1_basis", "omega", "ell", "ell_perp")

    def __init__(self, gm1_basis, omega, ell: Subspace, ell_perp: Subspace):
        self.gm1_basis = gm1_basis
        self.omega = omega
        self.ell = ell
        self.ell_perp = ell_perp

    @property
    def is_lagrangian(self) -> bool:
        return self.ell == self.ell_perp


def symplectic_data(L: LieAlgebra, triple: Sl2Triple, grading: GradedDecomposition,
                    ell_spec: Sequence[Sequence], chi_fn: CharacterChi) -> SymplecticData:
    """Assemble omega, certify ell isotropic, compute ell^perp_omega."""
    gm1 = grading.piece(-1)
    m = gm1.dim
    basis = gm1.basis
    omega = tuple(tuple(chi_fn(L.bracket(basis[i], basis[j])) for j in range(m))
                  for i in range(m))
    if m and rank(SparseMatrix.from_rows(omega)) != m:
        raise DegenerateOmega("omega is degenerate on g(-1)")
    ell_vectors = [vec(v, L.dim) for v in ell_spec]
    for v in ell_vectors:
        if not gm1.contains(v):
            raise NotInsideGm1("ell vector lies outside g(-1)")
    ell = Subspace(L.dim, ell_vectors)
    for u in ell.basis:
        for v in ell.basis:
            if chi_fn(L.bracket(u, v)):
                raise NotIsotropic("omega does not vanish on ell")
    # ell^perp inside g(-1): kernel of the pairing rows omega(l, .)
    if m:
        rows = []
        for u in ell.basis:
            rows.append([chi_fn(L.bracket(u, b)) for b in basis])
        if rows:
            ker = kernel(SparseMatrix.from_rows(rows, cols=m))
            perp_vectors = []
            for w in ker.basis:
                x = zero_vec(L.dim)
                for k, c in enumerate(w):
                    if c:
                        x = add_vec(x, scale_vec(c, basis[k]))
                perp_vectors.append(x)
            ell_perp = Subspace(L.dim, perp_vectors)
        else:
            ell_perp = Subspace(L.dim, basis)
    else:
        ell_perp = Subspace(L.dim, [])
    if ell.dim + ell_perp.dim != m:
        raise DegenerateOmega("dim ell + dim ell^perp != dim g(-1)")
    if not ell_perp.contains_subspace(ell):
        raise NotIsotropic("ell not contained in its omega-annihilator")
    return SymplecticData(basis, omega, ell, ell_perp)


def lagrangian_auto(L: LieAlgebra, grading: GradedDecomposition,
                    chi_fn: CharacterChi) -> List[Vector]:
    """Greedy deterministic Lagrangian in g(-1).

    Repeatedly adjoins the earliest g(-1) basis vector lying in the
    omega-annihilator of the current span until half dimension is reached.
    """
    gm1 = grading.piece(-1)
    target = gm1.dim // 2
    chosen: List[Vector] = []
    for b in gm1.basis:
        if len(chosen) == target:
            break
        if all(not chi_fn(L.bracket(c, b)) for c in chosen):
            chosen.append(b)
    if len(chosen) != target:
        raise WalgError("greedy Lagrangian construction stalled")
    return chosen


class NilpotentPair:
    """a = ell (+) g(<= -2) inside n_ell = ell^perp (+) g(<= -2).

    Keeps both the canonical subspaces and graded bases (weight-descending,
    echelon order inside each weight) used for PBW ordering and cochain
    bookkeeping.
    """

    __slots__ = ("a", "n_ell", "a_graded", "n_graded")

    def __init__(self, a, n_ell, a_graded, n_graded):
        self.a = a
        self.n_ell = n_ell
        self.a_graded = a_graded
        self.n_graded = n_graded


def make_nilpotent_pair(L: LieAlgebra, grading: GradedDecomposition,
                        symp: SymplecticData, chi_fn: CharacterChi) -> NilpotentPair:
    low = [i for i in grading.weights() if i <= -2]
    low_graded = grading.graded_basis(weights=low, descending=True)
    a_graded = [(v, -1) for v in symp.ell.basis] + low_graded
    n_graded = [(v, -1) for v in symp.ell_perp.basis] + low_graded
    a = Subspace(L.dim, [v for v, _ in a_graded])
    n_ell = Subspace(L.dim, [v for v, _ in n_graded])
    if a.dim != len(a_graded) or n_ell.dim != len(n_graded):
        raise WalgError("graded basis of a or n_ell is not independent")
    if not n_ell.contains_subspace(a):
        raise WalgError("a not contained in n_ell")
    for u, _ in n_graded:
        for v, _ in n_graded:
            w = L.bracket(u, v)
            if not n_ell.contains(w):
                raise WalgError("n_ell not closed under bracket")
    for u, _ in a_graded:
        for v, _ in a_graded:
            w = L.bracket(u, v)
            if not a.contains(w):
                raise WalgError("a not closed under bracket")
            if chi_fn(w):
                raise WalgError("chi is not a character on a")
    for u, _ in a_graded:
        for v, _ in n_graded:
            if chi_fn(L.bracket(u, v)):
                raise WalgError("chi([a, n_ell]) != 0")
    return NilpotentPair(a, n_ell, a_graded, n_graded)


def ker_ad_f(L: LieAlgebra, triple: Sl2Triple) -> Subspace:
    """Exact centralizer of f; the slice directions."""
    return kernel(L.ad_sparse(triple.f))


class DecompositionReport:
    __slots__ = ("dim_a_perp", "dim_bracket_ne", "dim_kerf", "dim_n",
                 "dim_g0", "dim_gm1", "ok")

    def __init__(self, **kw):
        for k in self.__slots__:
            setattr(self, k, kw[k])

    def as_dict(self):
        return {k: getattr(self, k) for k in self.__slots__}


def decomposition_check(L: LieAlgebra, triple: Sl2Triple, grading: GradedDecomposition,
                        pair: NilpotentPair) -> DecompositionReport:
    """Exact check of a^{perp_g} = [n_ell, e] (+) Ker ad f.

    Verifies zero intersection, full sum, the dimension law
    dim a^{perp_g} = dim n_ell + dim g(0) + dim g(-1), and injectivity of
    x -> [x, e] on n_ell.
    """
    K = L.killing_matrix()
    rows = []
    for v in pair.a.basis:
        rows.append([sum((v[i] * K[i][j] for i in range(L.dim) if v[i]), QQ(0))
                     for j in range(L.dim)])
    a_perp = kernel(SparseMatrix.from_rows(rows, cols=L.dim)) if rows else Subspace(
        L.dim, [unit_vec(L.dim, i) for i in range(L.dim)])
    images = [L.bracket(v, triple.e) for v, _ in pair.n_graded]
    bracket_ne = Subspace(L.dim, images)
    kerf = ker_ad_f(L, triple)
    total, meet = sum_and_intersection(bracket_ne, kerf)
    inj = rank(SparseMatrix.from_columns(images, rows=L.dim)) if images else 0
    dim_g0 = grading.piece(0).dim
    dim_gm1 = grading.piece(-1).dim
    report = DecompositionReport(
        dim_a_perp=a_perp.dim, dim_bracket_ne=bracket_ne.dim, dim_kerf=kerf.dim,
        dim_n=pair.n_ell.dim, dim_g0=dim_g0, dim_gm1=dim_gm1, ok=True)
    if meet.dim != 0:
        raise DecompositionFailure("[n_ell,e] meets Ker ad f", report.as_dict())
    if total != a_perp:
        raise DecompositionFailure("[n_ell,e] + Ker ad f != a^perp", report.as_dict())
    if a_perp.dim != pair.n_ell.dim + dim_g0 + dim_gm1:
        raise DecompositionFailure("dimension law fails", report.as_dict())
    if inj != pair.n_ell.dim:
        raise DecompositionFailure("x -> [x,e] not injective on n_ell", report.as_dict())
    return report


def structure_checks(L: LieAlgebra, triple: Sl2Triple, grading: GradedDecomposition,
                     pair: NilpotentPair, chi_fn: CharacterChi) -> Dict[str, bool]:
    """Exhaustive exact structural validation on basis elements.

    Jacobi, Killing invariance kappa([x,y],z) = kappa(x,[y,z]), bracket
    grading compatibility, kappa(g(i), g(j)) = 0 for i + j != 0, the triple
    relations, and chi([a, n_ell]) = 0.
    """
    out = {}
    try:
        L._check_jacobi()
        out["jacobi"] = True
    except JacobiViolation:
        out["jacobi"] = False
    ok = True
    for i in range(L.dim):
        xi = unit_vec(L.dim, i)
        for j in range(i + 1, L.dim):
            xj = unit_vec(L.dim, j)
            bij = L.bracket(xi, xj)
            for k in range(L.dim):
                xk = unit_vec(L.dim, k)
                if L.killing(bij, xk) != L.killing(xi, L.bracket(xj, xk)):
                    ok = False
    out["killing_invariance"] = ok
    ok = True
    for i, pi in grading.pieces.items():
        for j, pj in grading.pieces.items():
            target = grading.piece(i + j)
            for u in pi.basis:
                for v in pj.basis:
                    w = L.bracket(u, v)
                    if any(w) and not target.contains(w):
                        ok = False
    out["grading_compatibility"] = ok
    ok = True
    for i, pi in grading.pieces.items():
        for j, pj in grading.pieces.items():
            if i + j == 0:
                continue
            for u in pi.basis:
                for v in pj.basis:
                    if L.killing(u, v):
                        ok = False
    out["kappa_graded_pairing"] = ok
    out["triple_relations"] = (
        L.bracket(triple.h, triple.e) == scale_vec(2, triple.e)
        and L.bracket(triple.h, triple.f) == scale_vec(-2, triple.f)
        and L.bracket(triple.e, triple.f) == triple.h)
    ok = True
    for u, _ in pair.a_graded:
        for v, _ in pair.n_graded:
            if chi_fn(L.bracket(u, v)):
                ok = False
    out["chi_character_on_a"] = ok
    return out


# ---------------------------------------------------------------------------
# builtin nilpotents for sl_n
# ---------------------------------------------------------------------------


def partition_triple(n: int, parts: Sequence[int]) -> Tuple[Vector, Vector, Vector]:
    """Standard (e, h, f) for the Jordan-block nilpotent of a partition."""
    if sorted(parts, reverse=True) != list(parts) or sum(parts) != n or min(parts) < 1:
        raise WalgError(f"{parts} is not a partition of {n} in weakly decreasing order")
    if max(parts) == 1:
        raise NotNilpotent("partition [1,...,1] gives e = 0; the orbit must be nonzero")
    E = [[QQ(0)] * n for _ in range(n)]
    H = [[QQ(0)] * n for _ in range(n)]
    F = [[QQ(0)] * n for _ in range(n)]
    start = 0
    for p in parts:
        for k in range(p - 1):
            E[start + k][start + k + 1] = QQ(1)
            F[start + k + 1][start + k] = QQ((k + 1) * (p - 1 - k))
        for k in range(p):
            H[start + k][start + k] = QQ(p - 1 - 2 * k)
        start += p
    return (sln_matrix_to_coords(n, E), sln_matrix_to_coords(n, H),
            sln_matrix_to_coords(n, F))


def highest_root_triple(n: int) -> Tuple[Vector, Vector, Vector]:
    """Minimal-orbit triple e = E_1n, h = E_11 - E_nn, f = E_n1."""
    E = [[QQ(0)] * n for _ in range(n)]
    H = [[QQ(0)] * n for _ in range(n)]
    F = [[QQ(0)] * n for _ in range(n)]
    E[0][n - 1] = QQ(1)
    F[n - 1][0] = QQ(1)
    H[0][0] = QQ(1)
    H[n - 1][n - 1] = QQ(-1)
    return (sln_matrix_to_coords(n, E), sln_matrix_to_coords(n, H),
            sln_matrix_to_coords(n, F))


# ---------------------------------------------------------------------------
# JSON input format
# ---------------------------------------------------------------------------


def algebra_from_dict(data: dict) -> Tuple[LieAlgebra, dict]:
    """Build an algebra from the JSON input schema.

    Schema: {"labels": [...], "brackets": [{"i": int, "j": int,
    "value": [[k, "num/den"], ...]}, ...]} with 0-based indices; optional
    "nilpotent" and "ell" entries are passed through unparsed.
    """
    labels = data["labels"]
    table: Dict[Tuple[int, int], Dict[int, QQ]] = {}
    for item in data.get("brackets", []):
        i, j = int(item["i"]), int(item["j"])
        table[(i, j)] = {int(k): QQ(str(c)) for k, c in item["value"]}
    extras = {k: data[k] for k in ("nilpotent", "ell") if k in data}
    return LieAlgebra(labels, table), extras


def load_algebra_file(path: str) -> Tuple[LieAlgebra, dict]:
    with open(path, "r", encoding="utf-8") as fh:
        return algebra_from_dict(json.load(fh))
