"""Classical realization of the Schur algebra on tensor space.

Operators act on the r-fold tensor power of the natural n-dimensional
module, with basis indexed by multi-indices.  The orbit sums xi_{i,j}
(one elementary matrix per distinct simultaneous rearrangement of the
pair) give the classical basis; divided powers act by choosing the
positions to raise.  This is the ground truth the arrow construction is
checked against: the isomorphism sends a kept arrow (m, mu) to the
operator of m cut down to the weight space of mu.
"""

from itertools import combinations, product as iproduct

from .arrows import BorelAlgebra
from .fields import serialize_scalar as _ser
from .combinatorics import matrix_to_pair, orbit_of_pair, weight
from .linalg import Echelon, SpanSolver

TENSOR_DIMENSION_CAP = 300_000


class TensorAction:
    """Sparse exact operators on the r-fold tensor power, basis I(n, r)."""

    def __init__(self, n, r, field):
        if n ** r > TENSOR_DIMENSION_CAP:
            raise ValueError(
                f"tensor space dimension {n}^{r} exceeds the supported cap "
                f"{TENSOR_DIMENSION_CAP}")
        self.n = n
        self.r = r
        self.field = field
        self.indices = sorted(iproduct(range(1, n + 1), repeat=r))
        self.position = {idx: k for k, idx in enumerate(self.indices)}

    # operators are {column: {row: scalar}} with integer positions

    def zero(self):
        return {}

    def identity(self):
        one = self.field.one
        return {k: {k: one} for k in range(len(self.indices))}

    def compose(self, a, b):
        """Operator product a . b (b applied first)."""
        field = self.field
        out = {}
        for q, colb in b.items():
            acc = {}
            for p, c in colb.items():
                cola = a.get(p)
                if not cola:
                    continue
                for row, ca in cola.items():
                    v = field.add(acc.get(row, field.zero), field.mul(ca, c))
                    if v == field.zero:
                        acc.pop(row, None)
                    else:
                        acc[row] = v
            if acc:
                out[q] = acc
        return out

    def add_scaled(self, a, b, c):
        field = self.field
        out = {q: dict(col) for q, col in a.items()}
        for q, col in b.items():
            acc = out.setdefault(q, {})
            for row, v in col.items():
                w = field.add(acc.get(row, field.zero), field.mul(c, v))
                if w == field.zero:
                    acc.pop(row, None)
                else:
                    acc[row] = w
            if not acc:
                out.pop(q)
        return out

    def equal(self, a, b):
        keys = set(a) | set(b)
        return all(a.get(k, {}) == b.get(k, {}) for k in keys)

    def apply(self, op, vec):
        field = self.field
        out = {}
        for q, c in vec.items():
            for row, v in op.get(q, {}).items():
                w = field.add(out.get(row, field.zero), field.mul(v, c))
                if w == field.zero:
                    out.pop(row, None)
                else:
                    out[row] = w
        return out

    # -- basis operators -------------------------------------------------

    def elementary(self, i, j):
        """Matrix unit sending the basis tensor at j to the one at i."""
        return {self.position[tuple(j)]: {self.position[tuple(i)]: self.field.one}}

    def xi(self, i, j):
        """Orbit sum of matrix units, each distinct rearranged pair once."""
        op = {}
        one = self.field.one
        for a, b in orbit_of_pair(tuple(i), tuple(j)):
            op.setdefault(self.position[b], {})[self.position[a]] = one
        return op

    def weight_projector(self, lam):
        lam = tuple(lam)
        one = self.field.one
        return {k: {k: one}
                for k, idx in enumerate(self.indices)
                if weight(idx, self.n) == lam}

    def divided_power(self, i, j, k):
        """Action of e_ij^(k): raise j to i at every k-subset of positions."""
        if i == j:
            raise ValueError("divided powers need i < j")
        one = self.field.one
        op = {}
        for q, idx in enumerate(self.indices):
            spots = [t for t, x in enumerate(idx) if x == j]
            if len(spots) < k:
                continue
            col = {}
            for chosen in combinations(spots, k):
                lifted = list(idx)
                for t in chosen:
                    lifted[t] = i
                col[self.position[tuple(lifted)]] = one
            op[q] = col
        return op

    def monomial_operator(self, m, alg):
        """Operator of a canonical monomial: compose factors left to right."""
        op = self.identity()
        for a in alg.written_order:
            k = m.exps[a]
            if not k:
                continue
            i, j = alg.pairs[a]
            op = self.compose(op, self.divided_power(i, j, k))
        return op

    def based_operator(self, m, mu, alg):
        """Image of the arrow (m, mu): cut columns down to the weight space."""
        if any(x < 0 for x in mu):
            return {}
        return self.compose(self.monomial_operator(m, alg),
                            self.weight_projector(mu))

    def group_operator(self, g):
        """r-fold tensor power of an invertible matrix g (rows/cols 0-based)."""
        field = self.field
        n = self.n
        op = {}
        col_choices = [
            [i for i in range(n) if g[i][j] != field.zero] for j in range(n)
        ]
        for q, idx in enumerate(self.indices):
            col = {}
            for rows in iproduct(*(col_choices[x - 1] for x in idx)):
                c = field.one
                for row, x in zip(rows, idx):
                    c = field.mul(c, g[row][x - 1])
                p = self.position[tuple(t + 1 for t in rows)]
                v = field.add(col.get(p, field.zero), c)
                if v == field.zero:
                    col.pop(p, None)
                else:
                    col[p] = v
            if col:
                op[q] = col
        return op

    # -- xi coordinates ---------------------------------------------------

    def orbit_key(self, i, j):
        return tuple(sorted(zip(i, j)))

    def canonical_pair(self, key):
        i = tuple(p for p, _ in key)
        j = tuple(q for _, q in key)
        return i, j

    def operator_to_orbits(self, op):
        """Coefficients over the xi basis; raises if op is outside the span.

        Reads each coefficient off the canonical matrix position of its
        orbit, then reconstructs and compares.
        """
        coeffs = {}
        seen = set()
        for q, col in op.items():
            j = self.indices[q]
            for p in col:
                i = self.indices[p]
                key = self.orbit_key(i, j)
                if key in seen:
                    continue
                seen.add(key)
                ci, cj = self.canonical_pair(key)
                c = op.get(self.position[cj], {}).get(self.position[ci],
                                                      self.field.zero)
                if c != self.field.zero:
                    coeffs[key] = c
        recon = self.zero()
        for key, c in coeffs.items():
            ci, cj = self.canonical_pair(key)
            recon = self.add_scaled(recon, self.xi(ci, cj), c)
        if not self.equal(recon, op):
            raise ValueError("operator is not in the span of the xi basis")
        return coeffs

    def orbits_to_operator(self, coeffs):
        op = self.zero()
        for key, c in coeffs.items():
            ci, cj = self.canonical_pair(key)
            op = self.add_scaled(op, self.xi(ci, cj), c)
        return op

    def schur_multiply(self, x, y):
        """Product in xi coordinates via operator composition."""
        return self.operator_to_orbits(
            self.compose(self.orbits_to_operator(x), self.orbits_to_operator(y)))


def upper_table_json(n, r, field, basis="image"):
    """Multiplication table of the upper triangular part on tensor space,
    in the arrow-algebra JSON schema so the two exports can be diffed.

    basis="image" uses the operators the isomorphism lands on (cut-down
    monomial actions); its table must coincide verbatim with the arrow
    table.  basis="orbit" tabulates the classical orbit-sum basis, keyed
    through the same marginal matrices.
    """
    borel = BorelAlgebra(n, r, field)
    action = TensorAction(n, r, field)
    ops = []
    if basis == "orbit":
        key_to_index = {}
        for k, K in enumerate(borel.matrices):
            i, j = matrix_to_pair(K)
            ops.append(action.xi(i, j))
            key_to_index[action.orbit_key(i, j)] = k

        def express(coeffs):
            return {key_to_index[key]: c for key, c in coeffs.items()}
    elif basis == "image":
        solver = SpanSolver(field)
        for m, mu in borel.arrows:
            op = action.based_operator(m, mu, borel.alg)
            ops.append(op)
            solver.add(action.operator_to_orbits(op))

        def express(coeffs):
            out = solver.express(coeffs)
            if out is None:
                raise ValueError("product left the image span")
            return out
    else:
        raise ValueError(f"unknown basis {basis!r}")
    triples = []
    for a in range(len(ops)):
        for b in range(len(ops)):
            coeffs = action.operator_to_orbits(action.compose(ops[a], ops[b]))
            for k, c in sorted(express(coeffs).items()):
                triples.append([a, b, k, _ser(c)])
    payload = borel.to_json()
    payload["products"] = triples
    payload["table_basis"] = basis
    return payload


def verify_isomorphism(n, r, field, borel=None):
    """Check the arrow realization against the tensor-space construction.

    Maps every kept arrow to its based operator, expresses the images in
    the xi basis, and requires (a) linear independence, (b) the dimension
    of the marginal-matrix count, (c) structure constants matching the
    drop-rule products on every basis pair.
    """
    if borel is None:
        borel = BorelAlgebra(n, r, field)
    action = TensorAction(n, r, field)
    report = {
        "n": n,
        "r": r,
        "char": field.characteristic,
        "dim": borel.dim,
        "mismatches": [],
    }
    images = []
    image_orbits = []
    for m, mu in borel.arrows:
        op = action.based_operator(m, mu, borel.alg)
        images.append(op)
        image_orbits.append(action.operator_to_orbits(op))

    ech = Echelon(field)
    independent = True
    for orb in image_orbits:
        if ech.insert(dict(orb)) is None:
            independent = False
    report["independent"] = independent
    report["rank"] = ech.rank
    report["dim_match"] = (ech.rank == borel.dim)

    ordered = all(
        all(p <= q for p, q in key)
        for orb in image_orbits for key in orb
    )
    report["triangular"] = ordered

    mismatches = 0
    field_zero = field.zero
    for a in range(borel.dim):
        for b in range(borel.dim):
            lhs = action.schur_multiply(image_orbits[a], image_orbits[b])
            rhs = {}
            for k, c in borel.product_indices(a, b).items():
                for key, x in image_orbits[k].items():
                    v = field.add(rhs.get(key, field_zero), field.mul(c, x))
                    if v == field_zero:
                        rhs.pop(key, None)
                    else:
                        rhs[key] = v
            if lhs != rhs:
                mismatches += 1
                if len(report["mismatches"]) < 10:
                    report["mismatches"].append((a, b))
    report["mismatch_count"] = mismatches
    report["passed"] = (independent and report["dim_match"]
                        and report["triangular"] and mismatches == 0)
    return report
