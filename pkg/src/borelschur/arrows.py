"""Based arrows between lattice points and their truncated algebras.

An arrow is a pair (monomial, base point); it runs from its base y to
y + degree(monomial).  The product of two arrows composes head-to-tail:

    (a1 at y1) * (a2 at y2) = 0 unless y1 = y2 + degree(a2),

otherwise it is the monomial product of a1 and a2 re-based at y2.  All
terms of that product share one degree, so the result is again a sum of
arrows from y2 to y1 + degree(a1).

Restricting bases and heads to a finite convex set of points gives a
finite-dimensional algebra whose basis is exactly the arrows inside the
set.  Quotienting further to the compositions is done by the diagonal
completion rule (`arrow_is_kept`): the surviving arrows are indexed by
upper-triangular marginal matrices, which realizes the Borel subalgebra
of the Schur algebra.
"""

from .combinatorics import (
    coords_to_vector,
    is_composition,
    is_convex,
    point_add,
    point_sub,
    positive_root_coords,
    tri_matrices_all,
)
from .divided_powers import DividedPowerAlgebra, Monomial
from .fields import serialize_scalar as _ser


def arrow_head(alg, arrow):
    m, base = arrow
    return point_add(base, coords_to_vector(alg.degree(m)))


def arrow_product(alg, x, y, field):
    """Bilinear product of arrow elements (dicts {(monomial, base): scalar})."""
    zero = field.zero
    out = {}
    for (m2, y2), c2 in y.items():
        head2 = arrow_head(alg, (m2, y2))
        for (m1, y1), c1 in x.items():
            if y1 != head2:
                continue
            c12 = field.mul(c1, c2)
            for exps, k in alg.multiply_monomials(m1, m2):
                key = (Monomial(alg.n, exps), y2)
                v = field.add(out.get(key, zero), field.mul(c12, field.of(k)))
                if v == zero:
                    out.pop(key, None)
                else:
                    out[key] = v
    return out


def indicator(alg, point):
    return (alg.unit, tuple(point))


def arrow_is_kept(alg, arrow, r):
    """Diagonal completion test for membership in the composition quotient.

    An arrow (m, mu) survives iff mu is a composition and every diagonal
    entry mu_j - sum_{i<j} k_ij of the completed marginal matrix is
    non-negative; equivalently all partial column products keep the point
    inside the compositions.
    """
    m, mu = arrow
    if not is_composition(mu, r):
        return False
    n = alg.n
    for j in range(2, n + 1):
        col = sum(m.exps[alg.pair_index[(i, j)]] for i in range(1, j))
        if mu[j - 1] - col < 0:
            return False
    return True


def reduce_to_compositions(alg, element, r):
    """Quotient map onto the composition algebra in the arrow basis:
    drop every arrow failing the diagonal completion test."""
    return {a: c for a, c in element.items() if arrow_is_kept(alg, a, r)}


def arrow_to_matrix(alg, arrow):
    """Completed marginal matrix of a kept arrow."""
    m, mu = arrow
    n = alg.n
    K = [[0] * n for _ in range(n)]
    for (i, j), a in alg.pair_index.items():
        K[i - 1][j - 1] = m.exps[a]
    for j in range(1, n + 1):
        K[j - 1][j - 1] = mu[j - 1] - sum(K[i][j - 1] for i in range(j - 1))
    return tuple(tuple(row) for row in K)


def matrix_to_arrow(alg, K):
    mu = tuple(sum(K[i][t] for i in range(t + 1)) for t in range(alg.n))
    exps = {}
    for i in range(1, alg.n + 1):
        for j in range(i + 1, alg.n + 1):
            exps[(i, j)] = K[i - 1][j - 1]
    return (alg.monomial(exps), mu)


class ConvexTruncation:
    """The finite-dimensional algebra carried by a convex set of points.

    Basis arrows have both endpoints in the set; the product of basis
    arrows never leaves the set, so no reduction is needed.
    """

    def __init__(self, alg, points, field, r=None):
        self.alg = alg
        self.field = field
        self.points = sorted(tuple(p) for p in points)
        self.r = r
        if len(set(self.points)) != len(self.points):
            raise ValueError("duplicate points")
        if not is_convex(self.points):
            raise ValueError("point set is not convex; use quotient_algebra")
        arrows = []
        for y in self.points:
            for y2 in self.points:
                d = positive_root_coords(point_sub(y2, y))
                if d is None:
                    continue
                for m in alg.component_basis(d):
                    arrows.append((m, y))
        self.arrows = sorted(arrows, key=self._arrow_sort_key)
        self.index = {a: i for i, a in enumerate(self.arrows)}
        self._ptable = {}

    def _arrow_sort_key(self, arrow):
        m, y = arrow
        return (y, arrow_head(self.alg, arrow), m.exps)

    @property
    def dim(self):
        return len(self.arrows)

    def head(self, i):
        return arrow_head(self.alg, self.arrows[i])

    def base(self, i):
        return self.arrows[i][1]

    def is_unit_arrow(self, i):
        return self.arrows[i][0].is_unit()

    def based_at(self, y):
        return [i for i, a in enumerate(self.arrows) if a[1] == y]

    def unit(self):
        one = self.field.one
        return {self.index[indicator(self.alg, y)]: one for y in self.points}

    def indicator_vector(self, y):
        return {self.index[indicator(self.alg, y)]: self.field.one}

    def product_indices(self, i, j):
        """Product of basis arrows i and j as a vector over basis indices."""
        hit = self._ptable.get((i, j))
        if hit is not None:
            return dict(hit)
        elem = arrow_product(self.alg,
                             {self.arrows[i]: self.field.one},
                             {self.arrows[j]: self.field.one},
                             self.field)
        out = {}
        for a, c in elem.items():
            out[self.index[a]] = c
        self._ptable[(i, j)] = out
        return dict(out)

    def product(self, x, y):
        """Bilinear product of index vectors."""
        zero = self.field.zero
        out = {}
        for j, cj in y.items():
            for i, ci in x.items():
                c = self.field.mul(ci, cj)
                for k, ck in self.product_indices(i, j).items():
                    v = self.field.add(out.get(k, zero), self.field.mul(c, ck))
                    if v == zero:
                        out.pop(k, None)
                    else:
                        out[k] = v
        return out

    def to_json(self, with_products=True):
        payload = {
            "n": self.alg.n,
            "r": self.r,
            "char": self.field.characteristic,
            "points": [list(p) for p in self.points],
            "basis": [{"exponents": list(m.exps), "base": list(y)}
                      for m, y in self.arrows],
        }
        if with_products:
            triples = []
            for i in range(self.dim):
                for j in range(self.dim):
                    for k, c in sorted(self.product_indices(i, j).items()):
                        triples.append([i, j, k, _ser(c)])
            payload["products"] = triples
        return payload


class BorelAlgebra:
    """The composition-indexed quotient: basis = kept arrows = marginal matrices.

    Products are computed in the ambient arrow algebra and reduced by the
    monomial-drop rule; the linear-algebra quotient realization agrees
    (tested against `quotient_algebra`).
    """

    def __init__(self, n, r, field, alg=None):
        self.alg = alg if alg is not None else DividedPowerAlgebra(n)
        if self.alg.n != n:
            raise ValueError("algebra rank mismatch")
        self.n = n
        self.r = r
        self.field = field
        self.matrices = tri_matrices_all(n, r)
        self.arrows = [matrix_to_arrow(self.alg, K) for K in self.matrices]
        self.index = {a: i for i, a in enumerate(self.arrows)}
        self._ptable = {}

    @property
    def dim(self):
        return len(self.arrows)

    def head(self, i):
        return arrow_head(self.alg, self.arrows[i])

    def base(self, i):
        return self.arrows[i][1]

    def is_unit_arrow(self, i):
        return self.arrows[i][0].is_unit()

    def based_at(self, mu):
        return [i for i, a in enumerate(self.arrows) if a[1] == tuple(mu)]

    def unit(self):
        one = self.field.one
        out = {}
        for i, a in enumerate(self.arrows):
            if a[0].is_unit():
                out[i] = one
        return out

    def indicator_vector(self, mu):
        return {self.index[indicator(self.alg, tuple(mu))]: self.field.one}

    def reduce_element(self, element):
        """Arrow element -> index vector, dropping non-kept arrows."""
        out = {}
        for a, c in element.items():
            if arrow_is_kept(self.alg, a, self.r):
                out[self.index[a]] = c
        return out

    def product_indices(self, i, j):
        hit = self._ptable.get((i, j))
        if hit is not None:
            return dict(hit)
        elem = arrow_product(self.alg,
                             {self.arrows[i]: self.field.one},
                             {self.arrows[j]: self.field.one},
                             self.field)
        out = self.reduce_element(elem)
        self._ptable[(i, j)] = out
        return dict(out)

    def product(self, x, y):
        zero = self.field.zero
        out = {}
        for j, cj in y.items():
            for i, ci in x.items():
                c = self.field.mul(ci, cj)
                for k, ck in self.product_indices(i, j).items():
                    v = self.field.add(out.get(k, zero), self.field.mul(c, ck))
                    if v == zero:
                        out.pop(k, None)
                    else:
                        out[k] = v
        return out

    def projective_indices(self, mu):
        """Basis of the projective carried by a composition: arrows based there."""
        mu = tuple(mu)
        if not is_composition(mu, self.r):
            raise ValueError(f"{mu} is not a composition of {self.r}")
        return self.based_at(mu)

    def to_json(self, with_products=False):
        payload = {
            "n": self.n,
            "r": self.r,
            "char": self.field.characteristic,
            "dimension": self.dim,
            "basis": [{"matrix": [list(row) for row in K],
                       "exponents": list(a[0].exps),
                       "base": list(a[1]),
                       "head": list(arrow_head(self.alg, a))}
                      for K, a in zip(self.matrices, self.arrows)],
        }
        if with_products:
            triples = []
            for i in range(self.dim):
                for j in range(self.dim):
                    for k, c in sorted(self.product_indices(i, j).items()):
                        triples.append([i, j, k, _ser(c)])
            payload["products"] = triples
        return payload
