"""Kazhdan-graded polynomial charts and the reduction of the Poisson bracket.

Three charts appear:

* the full chart on g* (variables = adapted PBW generators, degree
  weight + 2), carrying the Lie-Poisson bracket;
* the chart on chi + a^perp (the complement-of-a variables), the home of
  gr Q_ell;
* the slice chart (coordinates dual to a graded basis of Ker ad f,
  coordinate of weight i gets degree 2 - i), the home of C[S].

The reduced bracket on the slice follows the Hamiltonian-reduction recipe:
lift through the projection from chi + m^perp by the unique invariant
extension (a per-degree linear solve), extend arbitrarily to g*, bracket,
restrict back.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from walg.errors import (ChartMismatch, LiftFailure, NotNilpotentCoadjoint,
                         WalgError)
from walg.linalg import QQ, SparseMatrix, Vector, solve, vec
from walg.pbw import Monomial, PBWBasis, Terms, UEAElement

ZERO = QQ(0)
ONE = QQ(1)


@dataclass(frozen=True)
class PolyVar:
    name: str
    origin: int          # adapted basis index, or slice coordinate number
    weight: int          # ad h weight of the underlying vector
    degree: int          # Kazhdan degree of the coordinate function


class Chart:
    """An ordered tuple of Kazhdan-graded variables."""

    __slots__ = ("kind", "variables", "degrees")

    def __init__(self, kind: str, variables: Sequence[PolyVar]):
        self.kind = kind
        self.variables = tuple(variables)
        self.degrees = tuple(v.degree for v in variables)

    def __eq__(self, other):
        return (isinstance(other, Chart) and self.kind == other.kind
                and self.variables == other.variables)

    def __len__(self):
        return len(self.variables)

    def __repr__(self):
        return f"Chart({self.kind}, {[v.name for v in self.variables]})"


def full_chart(basis: PBWBasis) -> Chart:
    return Chart("full", [PolyVar(basis.labels[k], k, basis.weights[k],
                                  basis.weights[k] + 2)
                          for k in range(basis.lie.dim)])


def complement_chart(basis: PBWBasis) -> Chart:
    return Chart("complement", [PolyVar(basis.labels[k], k, basis.weights[k],
                                        basis.weights[k] + 2)
                                for k in range(basis.n_complement)])


class KazhdanPolynomial:
    """Multivariate polynomial over Q with graded variables."""

    __slots__ = ("chart", "terms")

    def __init__(self, chart: Chart, terms: Terms):
        self.chart = chart
        self.terms = {m: c for m, c in terms.items() if c}

    @classmethod
    def zero(cls, chart):
        return cls(chart, {})

    @classmethod
    def constant(cls, chart, c):
        c = QQ(c)
        return cls(chart, {(): c} if c else {})

    @classmethod
    def variable(cls, chart, idx, coeff=ONE):
        return cls(chart, {((idx, 1),): QQ(coeff)})

    def _check(self, other):
        if self.chart != other.chart:
            raise ChartMismatch(f"{self.chart!r} vs {other.chart!r}")

    def __add__(self, other):
        if not isinstance(other, KazhdanPolynomial):
            other = KazhdanPolynomial.constant(self.chart, other)
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, ZERO) + c
            if s:
                out[m] = s
            elif m in out:
                del out[m]
        return KazhdanPolynomial(self.chart, out)

    __radd__ = __add__

    def __neg__(self):
        return KazhdanPolynomial(self.chart, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, KazhdanPolynomial):
            other = KazhdanPolynomial.constant(self.chart, other)
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, KazhdanPolynomial):
            c = QQ(other)
            return KazhdanPolynomial(self.chart, {m: c * v for m, v in self.terms.items()})
        self._check(other)
        out: Terms = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                s = out.get(m, ZERO) + c1 * c2
                if s:
                    out[m] = s
                elif m in out:
                    del out[m]
        return KazhdanPolynomial(self.chart, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        return (isinstance(other, KazhdanPolynomial) and self.chart == other.chart
                and self.terms == other.terms)

    def is_zero(self):
        return not self.terms

    def mono_degree(self, m: Monomial) -> int:
        degs = self.chart.degrees
        return sum(e * degs[i] for i, e in m)

    def degree(self) -> Optional[int]:
        if not self.terms:
            return None
        return max(self.mono_degree(m) for m in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {self.mono_degree(m) for m in self.terms}
        return len(degs) <= 1

    def homogeneous_part(self, n: int) -> "KazhdanPolynomial":
        return KazhdanPolynomial(
            self.chart, {m: c for m, c in self.terms.items()
                         if self.mono_degree(m) == n})

    def partial(self, idx: int) -> "KazhdanPolynomial":
        out: Terms = {}
        for m, c in self.terms.items():
            for pos, (i, e) in enumerate(m):
                if i == idx:
                    if e == 1:
                        nm = m[:pos] + m[pos + 1:]
                    else:
                        nm = m[:pos] + ((i, e - 1),) + m[pos + 1:]
                    s = out.get(nm, ZERO) + c * e
                    if s:
                        out[nm] = s
                    elif nm in out:
                        del out[nm]
                    break
        return KazhdanPolynomial(self.chart, out)

    def substitute(self, images: Sequence["KazhdanPolynomial"],
                   target: Chart) -> "KazhdanPolynomial":
        """Composition: replace variable i by images[i] (all on `target`)."""
        out = KazhdanPolynomial.zero(target)
        for m, c in self.terms.items():
            acc = KazhdanPolynomial.constant(target, c)
            for i, e in m:
                img = images[i]
                for _ in range(e):
                    acc = acc * img
            out = out + acc
        return out

    def __str__(self):
        if not self.terms:
            return "0"
        names = [v.name for v in self.chart.variables]
        bits = []
        for m in sorted(self.terms, key=lambda m: (self.mono_degree(m), m)):
            c = self.terms[m]
            factors = "*".join(names[i] if e == 1 else f"{names[i]}^{e}" for i, e in m)
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


def mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    d = dict(m1)
    for i, e in m2:
        d[i] = d.get(i, 0) + e
    return tuple(sorted(d.items()))


def symbol(u: UEAElement, n: int, chart: Chart) -> KazhdanPolynomial:
    """Image of u in gr_n, as a commutative polynomial on the full chart."""
    return KazhdanPolynomial(chart, u.symbol_terms(n))


# ---------------------------------------------------------------------------
# monomial enumeration and Hilbert series
# ---------------------------------------------------------------------------


def enumerate_monomials(degrees: Sequence[int], max_degree: int) -> List[Monomial]:
    """All monomials of weighted degree <= max_degree, sorted by (degree, mono).

    Requires every variable degree to be positive, which is what the
    Kazhdan grading guarantees on complement and slice charts.
    """
    if any(d <= 0 for d in degrees):
        raise WalgError("enumeration needs positive variable degrees")
    out: List[Tuple[int, Monomial]] = []

    def rec2(idx, used, acc):
        out.append((used, tuple(acc)))
        for i in range(idx, len(degrees)):
            d = degrees[i]
            e = 1
            while used + e * d <= max_degree:
                rec2(i + 1, used + e * d, acc + [(i, e)])
                e += 1

    rec2(0, 0, [])
    out.sort(key=lambda t: (t[0], t[1]))
    return [m for _, m in out]


def monomials_of_degree(degrees: Sequence[int], n: int) -> List[Monomial]:
    return [m for m in enumerate_monomials(degrees, n)
            if sum(e * degrees[i] for i, e in m) == n]


def series_expand(degrees: Sequence[int], n_max: int) -> List[int]:
    """Coefficients of prod 1/(1 - t^d) up to degree n_max."""
    coeff = [0] * (n_max + 1)
    coeff[0] = 1
    for d in degrees:
        for i in range(d, n_max + 1):
            coeff[i] += coeff[i - d]
    return coeff


def slice_hilbert_series(slice_data: "SliceData", n_max: int) -> List[int]:
    """Graded dimensions of C[S] up to n_max."""
    return series_expand(slice_data.degrees, n_max)


# ---------------------------------------------------------------------------
# Lie-Poisson bracket on the full chart
# ---------------------------------------------------------------------------


def lie_poisson_bracket(F1: KazhdanPolynomial, F2: KazhdanPolynomial,
                        basis: PBWBasis) -> KazhdanPolynomial:
    """{F1,F2}(xi) = xi([dF1, dF2]); linear coordinates reproduce the bracket."""
    chart = F1.chart
    if chart.kind != "full":
        raise ChartMismatch("Lie-Poisson bracket lives on the full g* chart")
    F1._check(F2)
    out = KazhdanPolynomial.zero(chart)
    d = len(chart)
    parts1 = {p: F1.partial(p) for p in range(d)}
    parts2 = {p: F2.partial(p) for p in range(d)}
    for (p, q), entry in basis.bracket.items():
        lin = KazhdanPolynomial(chart, {((k, 1),): c for k, c in entry})
        term = parts1[p] * parts2[q] - parts1[q] * parts2[p]
        if not term.is_zero():
            out = out + term * lin
    return out


def restrict_to_chi_plus_a_perp(F: KazhdanPolynomial,
                                basis: PBWBasis) -> KazhdanPolynomial:
    """Substitute the a-coordinates by their chi-values."""
    if F.chart.kind != "full":
        raise ChartMismatch("restriction starts from the full chart")
    comp = complement_chart(basis)
    nc = basis.n_complement
    out: Terms = {}
    for m, c in F.terms.items():
        keep = []
        for i, e in m:
            if i < nc:
                keep.append((i, e))
            else:
                c = c * basis.chi_vals[i] ** e
                if not c:
                    break
        if not c:
            continue
        key = tuple(keep)
        s = out.get(key, ZERO) + c
        if s:
            out[key] = s
        elif key in out:
            del out[key]
    return KazhdanPolynomial(comp, out)


def extend_to_full(F: KazhdanPolynomial, basis: PBWBasis,
                   twist: Optional[KazhdanPolynomial] = None) -> KazhdanPolynomial:
    """Extension of a complement-chart polynomial to g*.

    Reuses the same polynomial expression; an optional `twist` adds
    (y_q - chi(y_q)) * twist terms for every a-coordinate, which vanish on
    chi + a^perp, to exercise extension-independence.
    """
    chart = full_chart(basis)
    out = KazhdanPolynomial(chart, dict(F.terms))
    if twist is not None and not twist.is_zero():
        tw = KazhdanPolynomial(chart, dict(twist.terms))
        for q in range(basis.n_complement, basis.lie.dim):
            van = (KazhdanPolynomial.variable(chart, q)
                   - KazhdanPolynomial.constant(chart, basis.chi_vals[q]))
            out = out + van * tw
    return out


# ---------------------------------------------------------------------------
# slice chart
# ---------------------------------------------------------------------------


class SliceData:
    """Graded coordinates on S = chi + Phi(Ker ad f).

    `nu_images[p]` is the restriction of the complement coordinate y_p to
    the slice: sum_k kappa(z_k, v_p)/kappa(e,f) t_k.
    """

    __slots__ = ("kerf_graded", "degrees", "chart", "nu_images", "basis")

    def __init__(self, basis: PBWBasis, kerf_graded: Sequence[Tuple[Vector, int]],
                 kappa_ef: QQ):
        self.basis = basis
        self.kerf_graded = tuple(kerf_graded)
        self.degrees = tuple(2 - w for _, w in kerf_graded)
        variables = [PolyVar(f"t{k + 1}", k, w, 2 - w)
                     for k, (_, w) in enumerate(kerf_graded)]
        self.chart = Chart("slice", variables)
        L = basis.lie
        images = []
        for p in range(basis.n_complement):
            terms: Terms = {}
            for k, (z, _) in enumerate(kerf_graded):
                c = L.killing(z, basis.vectors[p]) / kappa_ef
                if c:
                    terms[((k, 1),)] = c
            images.append(KazhdanPolynomial(self.chart, terms))
        self.nu_images = tuple(images)

    def restrict(self, F: KazhdanPolynomial) -> KazhdanPolynomial:
        """nu: C[chi + a^perp] -> C[S] (restriction along the inclusion)."""
        if F.chart.kind != "complement":
            raise ChartMismatch("nu restricts complement-chart polynomials")
        return F.substitute(self.nu_images, self.chart)


# ---------------------------------------------------------------------------
# coadjoint flows
# ---------------------------------------------------------------------------


def _mat_mul(A, B, dim):
    return tuple(tuple(sum((A[r][k] * B[k][c] for k in range(dim) if A[r][k]), ZERO)
                       for c in range(dim)) for r in range(dim))


class CoadjointFlow:
    """exp(t ad* x) for nilpotent x, stored as exact matrix Taylor layers.

    `layers[k]` is (ad x)^k / k! on the adapted basis; the pullback of the
    coordinate function y_p under the time-t flow is
    sum_k (-t)^k sum_q layers[k][q][p] y_q.
    """

    __slots__ = ("basis", "x", "layers")

    def __init__(self, basis: PBWBasis, x: Sequence):
        L = basis.lie
        d = L.dim
        self.basis = basis
        self.x = vec(x, d)
        cols = [basis.coords(L.bracket(self.x, basis.vectors[q])) for q in range(d)]
        A = tuple(tuple(cols[q][r] for q in range(d)) for r in range(d))
        layers = [tuple(tuple(ONE if r == c else ZERO for c in range(d))
                        for r in range(d))]
        cur = A
        k = 1
        fact = 1
        while any(any(row) for row in cur):
            if k > 2 * d:
                raise NotNilpotentCoadjoint("ad x is not nilpotent")
            layers.append(tuple(tuple(v / fact for v in row) for row in cur))
            cur = _mat_mul(cur, A, d)
            k += 1
            fact *= k
        self.layers = tuple(layers)

    def matrix_at(self, t) -> Tuple[Tuple[QQ, ...], ...]:
        """exp(t ad x) as an exact matrix."""
        t = QQ(t)
        d = self.basis.lie.dim
        out = [[ZERO] * d for _ in range(d)]
        power = ONE
        for layer in self.layers:
            for r in range(d):
                row = layer[r]
                for c in range(d):
                    if row[c]:
                        out[r][c] += power * row[c]
            power *= t
        return tuple(tuple(row) for row in out)

    def point_at(self, row: Sequence, t) -> Vector:
        """Image of a covector (coordinate row <xi, v_q>) under exp(t ad* x)."""
        d = self.basis.lie.dim
        M = self.matrix_at(-QQ(t))
        row = vec(row, d)
        return tuple(sum((row[p] * M[p][q] for p in range(d) if row[p]), ZERO)
                     for q in range(d))

    def pullback_formal(self, F: KazhdanPolynomial) -> Dict[int, KazhdanPolynomial]:
        """F composed with the time-t flow, collected by powers of t.

        F lives on the complement chart and is treated as a function on
        chi + a^perp: a-coordinates appearing after the flow are replaced
        by their chi-values (legal whenever the flow preserves the space).
        """
        basis = self.basis
        chart = F.chart
        if chart.kind != "complement":
            raise ChartMismatch("formal pullback expects a complement-chart polynomial")
        nc = basis.n_complement
        images: List[Dict[int, KazhdanPolynomial]] = []
        for p in range(nc):
            img: Dict[int, KazhdanPolynomial] = {}
            for k, layer in enumerate(self.layers):
                terms: Terms = {}
                const = ZERO
                for q in range(basis.lie.dim):
                    v = layer[q][p]
                    if not v:
                        continue
                    if k % 2 == 1:
                        v = -v
                    if q < nc:
                        terms[((q, 1),)] = v
                    else:
                        const += v * basis.chi_vals[q]
                poly = KazhdanPolynomial(chart, terms) + const
                if not poly.is_zero():
                    img[k] = poly
            images.append(img)
        out: Dict[int, KazhdanPolynomial] = {}
        for m, c in F.terms.items():
            acc: Dict[int, KazhdanPolynomial] = {0: KazhdanPolynomial.constant(chart, c)}
            for i, e in m:
                for _ in range(e):
                    nxt: Dict[int, KazhdanPolynomial] = {}
                    for k1, p1 in acc.items():
                        for k2, p2 in images[i].items():
                            prod = p1 * p2
                            if prod.is_zero():
                                continue
                            k = k1 + k2
                            nxt[k] = nxt.get(k, KazhdanPolynomial.zero(chart)) + prod
                    acc = {k: p for k, p in nxt.items() if not p.is_zero()}
            for k, p in acc.items():
                out[k] = out.get(k, KazhdanPolynomial.zero(chart)) + p
        return {k: p for k, p in out.items() if not p.is_zero()}


def coadjoint_flow(basis: PBWBasis, x: Sequence) -> CoadjointFlow:
    return CoadjointFlow(basis, x)


# ---------------------------------------------------------------------------
# invariant lift and the reduced bracket (Lagrangian case)
# ---------------------------------------------------------------------------


def _mono_index(monos: Sequence[Monomial]) -> Dict[Monomial, int]:
    return {m: i for i, m in enumerate(monos)}


def invariant_lift(F: KazhdanPolynomial, red: "ReductionData") -> KazhdanPolynomial:
    """The unique Ad*M-invariant polynomial on chi + m^perp restricting to F.

    Solves degree by degree: within Kazhdan degree n the unknown is a
    combination of complement monomials of degree n, constrained to be
    killed by every m-generator derivation and to restrict to F on the
    slice.  The solution is certified by a symbolic flow pullback.
    """
    basis = red.basis
    if not red.is_lagrangian:
        raise LiftFailure("invariant lift requires a Lagrangian ell")
    if F.chart != red.slice_data.chart:
        raise ChartMismatch("lift input must live on the slice chart")
    comp = red.comp_chart
    total = KazhdanPolynomial.zero(comp)
    by_degree: Dict[int, KazhdanPolynomial] = {}
    for m, c in F.terms.items():
        n = F.mono_degree(m)
        by_degree.setdefault(n, KazhdanPolynomial.zero(F.chart))
        by_degree[n] = by_degree[n] + KazhdanPolynomial(F.chart, {m: c})
    comp_degs = [v.degree for v in comp.variables]
    slice_degs = red.slice_data.degrees
    for n, Fn in sorted(by_degree.items()):
        monos = monomials_of_degree(comp_degs, n)
        if not monos:
            raise LiftFailure(f"no complement monomials in degree {n}")
        cols = len(monos)
        rows: List[Dict[int, QQ]] = []
        rhs: List[QQ] = []
        # invariance rows, one block per m-generator
        for x, w in red.m_graded:
            img_degree = n + w
            target = monomials_of_degree(comp_degs, img_degree) if img_degree >= 0 else []
            t_index = _mono_index(target)
            block = [dict() for _ in range(len(target))]
            for j, mono in enumerate(monos):
                dmu = red.derivation(x, KazhdanPolynomial(comp, {mono: ONE}))
                for m2, c2 in dmu.terms.items():
                    if c2:
                        block[t_index[m2]][j] = c2
            rows.extend(block)
            rhs.extend([ZERO] * len(target))
        # restriction rows
        target_s = monomials_of_degree(slice_degs, n)
        s_index = _mono_index(target_s)
        block = [dict() for _ in range(len(target_s))]
        for j, mono in enumerate(monos):
            numono = red.slice_data.restrict(KazhdanPolynomial(comp, {mono: ONE}))
            for m2, c2 in numono.terms.items():
                block[s_index[m2]][j] = c2
        rows.extend(block)
        rhs_slice = [ZERO] * len(target_s)
        for m2, c2 in Fn.terms.items():
            rhs_slice[s_index[m2]] = c2
        rhs.extend(rhs_slice)
        entries = {}
        for r, row in enumerate(rows):
            for cidx, v in row.items():
                entries[(r, cidx)] = v
        M = SparseMatrix(len(rows), cols, entries)
        x_sol = solve(M, rhs)
        if x_sol is None:
            raise LiftFailure(f"no invariant lift in degree {n}")
        total = total + KazhdanPolynomial(comp, {mono: x_sol[j]
                                                 for j, mono in enumerate(monos)})
    for x, _ in red.m_graded:
        flow = red.flow(x)
        parts = flow.pullback_formal(total)
        if set(parts) - {0} or parts.get(0, KazhdanPolynomial.zero(comp)) != total:
            raise LiftFailure("lift is not flow-invariant")
    return total


def slice_poisson_bracket(F1: KazhdanPolynomial, F2: KazhdanPolynomial,
                          red: "ReductionData",
                          twist: Optional[KazhdanPolynomial] = None) -> KazhdanPolynomial:
    """{F1, F2} on C[S] by Hamiltonian reduction through chi + m^perp.

    `twist` selects a different arbitrary extension of the second lift to
    g*; the result is independent of it.
    """
    basis = red.basis
    G1 = invariant_lift(F1, red)
    G2 = invariant_lift(F2, red)
    E1 = extend_to_full(G1, basis)
    E2 = extend_to_full(G2, basis, twist=twist)
    br = lie_poisson_bracket(E1, E2, basis)
    return red.slice_data.restrict(restrict_to_chi_plus_a_perp(br, basis))


class ReductionData:
    """Chart bundle consumed by the lift and the reduced bracket.

    Built by walg.context.SliceContext; kept separate so the Poisson layer
    has no dependency on the quotient-module machinery.
    """

    __slots__ = ("basis", "comp_chart", "slice_data", "m_graded",
                 "is_lagrangian", "_flows", "_deriv_images")

    def __init__(self, basis: PBWBasis, slice_data: SliceData,
                 m_graded: Sequence[Tuple[Vector, int]], is_lagrangian: bool):
        self.basis = basis
        self.comp_chart = complement_chart(basis)
        self.slice_data = slice_data
        self.m_graded = tuple(m_graded)
        self.is_lagrangian = is_lagrangian
        self._flows: Dict[Tuple, CoadjointFlow] = {}
        self._deriv_images: Dict[Tuple, List[KazhdanPolynomial]] = {}

    def flow(self, x: Sequence) -> CoadjointFlow:
        key = tuple(QQ(v) for v in x)
        if key not in self._flows:
            self._flows[key] = CoadjointFlow(self.basis, key)
        return self._flows[key]

    def derivation_images(self, x: Sequence) -> List[KazhdanPolynomial]:
        """Images D_x(y_p) = ([x, v_p] mod (a - chi)) for complement p."""
        key = tuple(QQ(v) for v in x)
        if key not in self._deriv_images:
            basis = self.basis
            L = basis.lie
            nc = basis.n_complement
            images = []
            for p in range(nc):
                c = basis.coords(L.bracket(key, basis.vectors[p]))
                terms: Terms = {}
                const = ZERO
                for q in range(L.dim):
                    if not c[q]:
                        continue
                    if q < nc:
                        terms[((q, 1),)] = c[q]
                    else:
                        const += c[q] * basis.chi_vals[q]
                images.append(KazhdanPolynomial(self.comp_chart, terms) + const)
            self._deriv_images[key] = images
        return self._deriv_images[key]

    def derivation(self, x: Sequence, F: KazhdanPolynomial) -> KazhdanPolynomial:
        """The infinitesimal action of x on C[chi + a^perp] (a derivation)."""
        images = self.derivation_images(x)
        out = KazhdanPolynomial.zero(self.comp_chart)
        for p, img in enumerate(images):
            if img.is_zero():
                continue
            dp = F.partial(p)
            if not dp.is_zero():
                out = out + dp * img
        return out
