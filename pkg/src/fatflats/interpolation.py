"""Vanishing-order conditions, exact ranks, and initial degrees.

A form F of degree d lies in I(L)^kappa iff, after the adapted coordinate
change that sends L to {w_0 = ... = w_{e-1} = 0}, every monomial of F
with degree < kappa in the first e adapted variables has coefficient
zero.  Each original monomial is expanded in adapted coordinates by
multinomial expansion; the expansions are built incrementally (degree by
degree, one linear multiplication each), which is what keeps the search
over candidate degrees cheap.

Two arithmetic lanes share nothing but the pivot discipline: a numpy
int64 lane over F_p (default, confirmed on a second prime, escalating to
exact rationals on disagreement) and a Fraction/Bareiss lane over Q.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

import numpy as np

from .errors import BadPrimeError, CapExceededError, ValidationError
from .linalg import rank_kernel_modp, rank_kernel_rational
from .projective import LinForm, Subspace, complete_basis
from .scalars import DEFAULT_PRIMES, fraction_mod, next_field_prime
from .schemes import FatFlatScheme, symbolic_multiplicities


# -- monomial bookkeeping ------------------------------------------------------

@lru_cache(maxsize=None)
def monomial_basis(nvars: int, degree: int):
    """Degree-d exponent tuples in graded-lex order (x_0 largest)."""
    def gen(n, d):
        if n == 1:
            yield (d,)
            return
        for first in range(d, -1, -1):
            for rest in gen(n - 1, d - first):
                yield (first,) + rest
    return tuple(gen(nvars, degree))


@lru_cache(maxsize=None)
def monomial_index(nvars: int, degree: int):
    return {m: i for i, m in enumerate(monomial_basis(nvars, degree))}


@lru_cache(maxsize=None)
def _shift_map(nvars: int, degree: int, var: int):
    """Index map: basis(d) position -> basis(d+1) position of exp + e_var."""
    idx = monomial_index(nvars, degree + 1)
    out = np.empty(len(monomial_basis(nvars, degree)), dtype=np.int64)
    for i, m in enumerate(monomial_basis(nvars, degree)):
        bumped = m[:var] + (m[var] + 1,) + m[var + 1:]
        out[i] = idx[bumped]
    return out


@lru_cache(maxsize=None)
def _parent_groups(nvars: int, degree: int):
    """Group degree-d monomials by first nonzero variable j; each entry is
    (j, row_indices_in_basis_d, parent_indices_in_basis_{d-1})."""
    idx_prev = monomial_index(nvars, degree - 1)
    groups = {}
    for i, m in enumerate(monomial_basis(nvars, degree)):
        j = next(v for v, exp in enumerate(m) if exp)
        parent = m[:j] + (m[j] - 1,) + m[j + 1:]
        groups.setdefault(j, ([], []))
        groups[j][0].append(i)
        groups[j][1].append(idx_prev[parent])
    return tuple((j, np.array(rows, dtype=np.int64), np.array(par, dtype=np.int64))
                 for j, (rows, par) in sorted(groups.items()))


def condition_row_count(e: int, kappa: int, d: int, N: int) -> int:
    """Closed-form number of order-kappa conditions in degree d."""
    return sum(comb(t + e - 1, e - 1) * comb(d - t + N - e, N - e)
               for t in range(min(kappa, d + 1)))


def _selected_betas(nvars, d, e, kappa):
    """Indices of adapted monomials with degree < kappa in the first e vars."""
    basis = monomial_basis(nvars, d)
    return [i for i, m in enumerate(basis) if sum(m[:e]) < kappa]


# -- adapted-coordinate expansion tables ---------------------------------------

class AdaptedTablesModP:
    """Per-subspace expansion tables mod p.

    ``table(d)[i, j]`` is the coefficient of the j-th adapted monomial in
    the expansion of the i-th original degree-d monomial.
    """

    def __init__(self, sub: Subspace, p: int):
        self.p = p
        self.nvars = sub.ambient_dim + 1
        self.e = sub.codim
        change = complete_basis(sub)
        self.B = np.array(
            [[fraction_mod(x, p) for x in row] for row in change.inverse],
            dtype=np.int64)
        self._tables = {0: np.ones((1, 1), dtype=np.int64)}
        self._max_built = 0

    def table(self, d: int):
        while self._max_built < d:
            self._build_next()
        return self._tables[d]

    def _build_next(self):
        d = self._max_built + 1
        nv, p = self.nvars, self.p
        prev = self._tables[d - 1]
        n_d = len(monomial_basis(nv, d))
        T = np.zeros((n_d, n_d), dtype=np.int64)
        for j, rows, parents in _parent_groups(nv, d):
            src = prev[parents]
            acc = np.zeros((len(rows), n_d), dtype=np.int64)
            for k in range(nv):
                c = int(self.B[j, k])
                if c:
                    sm = _shift_map(nv, d - 1, k)
                    acc[:, sm] = (acc[:, sm] + c * src % p) % p
            T[rows] = acc
        self._tables[d] = T
        self._max_built = d

    def block(self, d: int, kappa: int):
        """Condition rows annihilating exactly the degree-d part of I^kappa."""
        sel = _selected_betas(self.nvars, d, self.e, kappa)
        return np.ascontiguousarray(self.table(d)[:, sel].T)

    def drop_below(self, d: int):
        for key in [k for k in self._tables if 0 < k < d]:
            del self._tables[key]


class AdaptedTablesQQ:
    """Rational twin of :class:`AdaptedTablesModP` (sparse dicts)."""

    def __init__(self, sub: Subspace):
        self.nvars = sub.ambient_dim + 1
        self.e = sub.codim
        change = complete_basis(sub)
        self.B = [list(row) for row in change.inverse]
        zero = (0,) * self.nvars
        self._tables = {0: {zero: {zero: Fraction(1)}}}
        self._max_built = 0

    def table(self, d: int):
        while self._max_built < d:
            self._build_next()
        return self._tables[d]

    def _build_next(self):
        d = self._max_built + 1
        nv = self.nvars
        prev = self._tables[d - 1]
        out = {}
        for m in monomial_basis(nv, d):
            j = next(v for v, exp in enumerate(m) if exp)
            parent = m[:j] + (m[j] - 1,) + m[j + 1:]
            src = prev[parent]
            poly = {}
            for k in range(nv):
                c = self.B[j][k]
                if c == 0:
                    continue
                for beta, coeff in src.items():
                    bumped = beta[:k] + (beta[k] + 1,) + beta[k + 1:]
                    val = poly.get(bumped, Fraction(0)) + c * coeff
                    if val:
                        poly[bumped] = val
                    elif bumped in poly:
                        del poly[bumped]
            out[m] = poly
        self._tables[d] = out
        self._max_built = d

    def block(self, d: int, kappa: int):
        """Condition rows as dense Fraction lists (rows x monomials)."""
        basis = monomial_basis(self.nvars, d)
        sel = [basis[i] for i in _selected_betas(self.nvars, d, self.e, kappa)]
        tab = self.table(d)
        rows = []
        for beta in sel:
            rows.append([tab[m].get(beta, Fraction(0)) for m in basis])
        return rows


# -- forms ---------------------------------------------------------------------

@dataclass(frozen=True)
class Form:
    """A homogeneous form as a sparse coefficient dict over the monomial
    basis.  ``field`` is 'rational' or the prime p of its coefficients."""

    ambient_dim: int
    degree: int
    coeffs: tuple  # sorted ((exponents, coeff), ...)
    field: object = "rational"

    @staticmethod
    def from_dict(ambient_dim, degree, coeffs, field="rational"):
        items = tuple(sorted((tuple(k), v) for k, v in coeffs.items() if v))
        for exps, _ in items:
            if len(exps) != ambient_dim + 1 or sum(exps) != degree:
                raise ValidationError("exponent tuple inconsistent with degree")
        return Form(ambient_dim, degree, items, field)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def as_dict(self):
        return dict(self.coeffs)

    def dense(self):
        """Coefficient vector over the graded-lex degree-d basis."""
        idx = monomial_index(self.ambient_dim + 1, self.degree)
        if self.field == "rational":
            vec = [Fraction(0)] * len(idx)
            for exps, c in self.coeffs:
                vec[idx[exps]] = Fraction(c)
            return vec
        vec = np.zeros(len(idx), dtype=np.int64)
        for exps, c in self.coeffs:
            vec[idx[exps]] = c % self.field
        return vec


def form_product(factors):
    """Exact expansion of a product of powers of linear forms."""
    factors = [(f, int(k)) for f, k in factors]
    if not factors:
        raise ValidationError("empty product")
    n = factors[0][0].ambient_dim
    if any(f.ambient_dim != n for f, _ in factors):
        raise ValidationError("ambient dimension mismatch")
    zero = (0,) * (n + 1)
    poly = {zero: Fraction(1)}
    for f, k in factors:
        for _ in range(k):
            poly = _mul_linear(poly, f, n)
    degree = sum(k for _, k in factors)
    return Form.from_dict(n, degree, poly)


def _mul_linear(poly, form: LinForm, n):
    out = {}
    for v, c in enumerate(form.coeffs):
        if c == 0:
            continue
        for exps, coeff in poly.items():
            bumped = exps[:v] + (exps[v] + 1,) + exps[v + 1:]
            val = out.get(bumped, Fraction(0)) + c * coeff
            if val:
                out[bumped] = val
            elif bumped in out:
                del out[bumped]
    return out


def multiply_forms(f: Form, g: Form) -> Form:
    """Sparse product of two forms in the same field mode."""
    if f.ambient_dim != g.ambient_dim or f.field != g.field:
        raise ValidationError("form modes differ")
    out = {}
    for ea, ca in f.coeffs:
        for eb, cb in g.coeffs:
            key = tuple(a + b for a, b in zip(ea, eb))
            out[key] = out.get(key, 0) + ca * cb
    if f.field != "rational":
        out = {k: v % f.field for k, v in out.items()}
    return Form.from_dict(f.ambient_dim, f.degree + g.degree, out, f.field)


# -- alpha of symbolic powers --------------------------------------------------

@dataclass
class AlphaRecord:
    """alpha(I^(k)) with provenance: witness, field mode, cap status."""

    k: int
    alpha: int = None
    witness: Form = None
    field_mode: str = "modp"
    degree_cap: int = 0
    degree_cap_hit: bool = False
    primes: tuple = None
    escalated: bool = False

    @property
    def resolved(self) -> bool:
        return self.alpha is not None


def default_degree_cap(scheme: FatFlatScheme, k: int) -> int:
    return 4 * k * scheme.max_multiplicity * len(scheme.components)


def _modp_apply(matrix, vector, p):
    """matrix @ vector mod p without int64 overflow: entries are < p < 2^31,
    so each product fits in int64 and the reduced products sum safely."""
    return (matrix * (vector[None, :] % p) % p).sum(axis=1) % p


def _stack_modp(tables, orders, d):
    blocks = [t.block(d, kappa) for t, kappa in zip(tables, orders)]
    return np.vstack(blocks)


def _stack_rational(tables, orders, d):
    rows = []
    for t, kappa in zip(tables, orders):
        rows.extend(t.block(d, kappa))
    return rows


def _witness_from_kernel(kernel, nvars, d, field):
    basis = monomial_basis(nvars, d)
    coeffs = {basis[i]: (int(v) if field != "rational" else v)
              for i, v in enumerate(kernel) if v}
    return Form.from_dict(nvars - 1, d, coeffs, field)


def _alpha_rational(scheme, k, cap):
    comps = symbolic_multiplicities(scheme, k)
    tables = [AdaptedTablesQQ(sub) for sub, _ in comps]
    orders = [kappa for _, kappa in comps]
    nvars = scheme.ambient_dim + 1
    for d in range(max(orders), cap + 1):
        rows = _stack_rational(tables, orders, d)
        ncols = len(monomial_basis(nvars, d))
        rank, kernel = rank_kernel_rational(rows, ncols=ncols)
        if kernel is not None:
            witness = _witness_from_kernel(kernel, nvars, d, "rational")
            return AlphaRecord(k=k, alpha=d, witness=witness,
                               field_mode="rational", degree_cap=cap)
    return AlphaRecord(k=k, field_mode="rational", degree_cap=cap,
                       degree_cap_hit=True)


def _build_tables_modp(subs, p):
    """Tables for one prime; replaces the prime when it hits a denominator."""
    while True:
        try:
            return p, [AdaptedTablesModP(sub, p) for sub in subs]
        except BadPrimeError:
            p = next_field_prime(p)


def alpha_symbolic(scheme: FatFlatScheme, k: int, mode: str = "modp",
                   degree_cap: int = None, primes=DEFAULT_PRIMES) -> AlphaRecord:
    """Least degree of a nonzero element of I^(k), with witness.

    modp mode runs the full degree search under two independent primes;
    agreement is accepted, disagreement escalates to exact rationals.
    A search that passes the cap returns an unresolved record.
    """
    if k < 1:
        raise ValidationError("k must be >= 1")
    cap = degree_cap if degree_cap is not None else default_degree_cap(scheme, k)
    if cap < 1:
        raise ValidationError("degree cap must be >= 1")
    if mode == "rational":
        return _alpha_rational(scheme, k, cap)
    if mode != "modp":
        raise ValidationError(f"unknown mode {mode!r}")

    comps = symbolic_multiplicities(scheme, k)
    subs = [sub for sub, _ in comps]
    orders = [kappa for _, kappa in comps]
    p1, tabs1 = _build_tables_modp(subs, primes[0])
    p2, tabs2 = _build_tables_modp(subs, primes[1])
    if p1 == p2:
        p2, tabs2 = _build_tables_modp(subs, next_field_prime(p2))
    nvars = scheme.ambient_dim + 1
    for d in range(max(orders), cap + 1):
        M1 = _stack_modp(tabs1, orders, d)
        rank1, kernel1 = rank_kernel_modp(M1, p1)
        M2 = _stack_modp(tabs2, orders, d)
        rank2, _ = rank_kernel_modp(M2, p2)
        null1 = kernel1 is not None
        null2 = M2.shape[1] - rank2 > 0
        if null1 != null2:
            record = _alpha_rational(scheme, k, cap)
            record.primes = (p1, p2)
            record.escalated = True
            return record
        if null1:
            if (_modp_apply(M1, kernel1, p1) != 0).any():  # kernel must annihilate
                raise AssertionError("kernel vector failed verification")
            witness = _witness_from_kernel(kernel1, nvars, d, p1)
            return AlphaRecord(k=k, alpha=d, witness=witness, field_mode="modp",
                               degree_cap=cap, primes=(p1, p2))
        for t in itertools.chain(tabs1, tabs2):
            t.drop_below(d)
    return AlphaRecord(k=k, field_mode="modp", degree_cap=cap,
                       degree_cap_hit=True, primes=(p1, p2))


def require_alpha(record: AlphaRecord) -> int:
    if not record.resolved:
        raise CapExceededError(
            f"alpha(I^({record.k})) unresolved below degree cap {record.degree_cap}")
    return record.alpha


def membership(form: Form, scheme: FatFlatScheme, k: int) -> bool:
    """True iff every order-(k*mu_i) condition annihilates the form."""
    if form.ambient_dim != scheme.ambient_dim:
        raise ValidationError("ambient dimension mismatch")
    if form.is_zero:
        raise ValidationError("the zero form is not a membership witness")
    comps = symbolic_multiplicities(scheme, k)
    d = form.degree
    vec = form.dense()
    if form.field == "rational":
        for sub, kappa in comps:
            for row in AdaptedTablesQQ(sub).block(d, kappa):
                if sum(r * v for r, v in zip(row, vec) if v) != 0:
                    return False
        return True
    p = form.field
    for sub, kappa in comps:
        block = AdaptedTablesModP(sub, p).block(d, kappa)
        if block.size and (_modp_apply(block, vec, p) != 0).any():
            return False
    return True
