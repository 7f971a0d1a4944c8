"""Quotients by point indicators and idempotent-ideal diagnostics.

`quotient_algebra` realizes C(Y)/<indicators of removed points> by plain
linear algebra: the two-sided ideal is closed under multiplication by
basis arrows with a worklist, and the quotient multiplies coset
representatives and reduces.  It is the independent oracle for the
monomial-drop description of the composition quotient.

`two_idempotent_report` compares dim(AeA) with dim(Ae (x)_{eAe} eA): the
two agree exactly when the ideal generated by the idempotent is
2-idempotent.  `chain_report` walks the layered removal of the interval
down to the compositions one point at a time, in the layer order, and
runs that comparison at every step, together with the combinatorial
hypotheses on the layer sets and Tor-vanishing spot checks.
"""

from .arrows import ConvexTruncation, arrow_is_kept
from .combinatorics import (
    compositions,
    in_column_monoid,
    interval_points,
    layer_key,
    layer_points,
    point_sub,
    tri_count,
)
from .divided_powers import DividedPowerAlgebra
from .linalg import Echelon, matrix_rank
from .transport import resolve_simple


def close_two_sided_ideal(trunc, ideal, seeds):
    """Grow `ideal` (an Echelon over basis indices) to the two-sided ideal
    generated by its current span together with `seeds`.

    Worklist fixed point: every vector that enters the span is multiplied
    by every basis arrow on both sides; finite dimension forces termination.
    """
    work = []
    for v in seeds:
        p = ideal.insert(v)
        if p is not None:
            work.append(dict(ideal.rows[p]))
    while work:
        v = work.pop()
        for b in range(trunc.dim):
            bv = {b: trunc.field.one}
            for prod in (trunc.product(bv, v), trunc.product(v, bv)):
                if not prod:
                    continue
                p = ideal.insert(prod)
                if p is not None:
                    work.append(dict(ideal.rows[p]))
    return ideal


class QuotientAlgebra:
    """C(Y)/I presented on coset representatives.

    Representatives are the basis arrows of the ambient truncation at the
    non-pivot coordinates of the ideal's reduced echelon form; products
    are computed upstairs and canonically reduced.
    """

    def __init__(self, trunc, ideal):
        self.trunc = trunc
        self.field = trunc.field
        self.ideal = ideal
        self.reps = sorted(set(range(trunc.dim)) - ideal.pivots)
        self.rep_pos = {g: k for k, g in enumerate(self.reps)}
        self._ptable = {}

    @property
    def dim(self):
        return len(self.reps)

    @property
    def alg(self):
        return self.trunc.alg

    def project(self, vec):
        """Global truncation vector -> local coordinates of its coset."""
        res = self.ideal.reduce(vec)
        return {self.rep_pos[g]: c for g, c in res.items()}

    def lift(self, local):
        return {self.reps[k]: c for k, c in local.items()}

    def indicator_vector(self, y):
        return self.project(self.trunc.indicator_vector(y))

    def arrow(self, k):
        return self.trunc.arrows[self.reps[k]]

    def product_indices(self, i, j):
        hit = self._ptable.get((i, j))
        if hit is None:
            hit = self.project(
                self.trunc.product_indices(self.reps[i], self.reps[j]))
            self._ptable[(i, j)] = hit
        return dict(hit)

    def product(self, x, y):
        field = self.field
        out = {}
        for j, cj in y.items():
            for i, ci in x.items():
                c = field.mul(ci, cj)
                for k, ck in self.product_indices(i, j).items():
                    v = field.add(out.get(k, field.zero), field.mul(c, ck))
                    if v == field.zero:
                        out.pop(k, None)
                    else:
                        out[k] = v
        return out


def quotient_algebra(trunc, removed):
    """Quotient of a convex truncation by the ideal of removed points."""
    removed = [tuple(z) for z in removed]
    point_set = set(trunc.points)
    for z in removed:
        if z not in point_set:
            raise ValueError(f"removed point {z} not in the truncation")
    ideal = Echelon(trunc.field)
    seeds = [trunc.indicator_vector(z) for z in removed]
    close_two_sided_ideal(trunc, ideal, seeds)
    return QuotientAlgebra(trunc, ideal)


def _products_with(algebra, e, side):
    """Span generators of Ae (side='right') or eA (side='left')."""
    out = []
    for i in range(algebra.dim):
        b = {i: algebra.field.one}
        v = algebra.product(b, e) if side == "right" else algebra.product(e, b)
        if v:
            out.append(v)
    return out


def two_idempotent_report(algebra, e):
    """Exact comparison dim(AeA) vs dim(Ae (x)_{eAe} eA).

    The multiplication map Ae (x)_{eAe} eA -> AeA is always onto, so ideal
    2-idempotency is equivalent to the two dimensions agreeing.
    """
    field = algebra.field
    if algebra.product(e, e) != e:
        raise ValueError("e is not idempotent")

    ae = Echelon(field)
    for v in _products_with(algebra, e, "right"):
        ae.insert(v)
    ea = Echelon(field)
    for v in _products_with(algebra, e, "left"):
        ea.insert(v)
    eae = Echelon(field)
    for v in _products_with(algebra, e, "right"):
        eae.insert(algebra.product(e, v))

    ae_basis = [ae.rows[p] for p in sorted(ae.rows)]
    ea_basis = [ea.rows[p] for p in sorted(ea.rows)]
    eae_basis = [eae.rows[p] for p in sorted(eae.rows)]
    ae_pos = {p: k for k, p in enumerate(sorted(ae.rows))}
    ea_pos = {p: k for k, p in enumerate(sorted(ea.rows))}
    p, q = len(ae_basis), len(ea_basis)

    aea = Echelon(field)
    for u in ae_basis:
        for j in range(algebra.dim):
            v = algebra.product(u, {j: field.one})
            if v:
                aea.insert(v)
    dim_aea = aea.rank

    # tensor over eAe: kill (u s) (x) w - u (x) (s w)
    relations = Echelon(field)
    for u_idx, u in enumerate(ae_basis):
        for s in eae_basis:
            us = algebra.product(u, s)
            coords_us, res = ae.coordinates(us)
            if res:
                raise AssertionError("Ae is not right eAe-stable")
            for w_idx, w in enumerate(ea_basis):
                rel = {}
                for piv, c in coords_us.items():
                    rel[(ae_pos[piv], w_idx)] = c
                sw = algebra.product(s, w)
                coords_sw, res2 = ea.coordinates(sw)
                if res2:
                    raise AssertionError("eA is not left eAe-stable")
                for piv, c in coords_sw.items():
                    key = (u_idx, ea_pos[piv])
                    x = field.sub(rel.get(key, field.zero), c)
                    if x == field.zero:
                        rel.pop(key, None)
                    else:
                        rel[key] = x
                if rel:
                    relations.insert(rel)
    dim_tensor = p * q - relations.rank

    return {
        "dim_Ae": p,
        "dim_eA": q,
        "dim_eAe": len(eae_basis),
        "dim_AeA": dim_aea,
        "dim_tensor": dim_tensor,
        "two_idempotent": dim_aea == dim_tensor,
    }


def removal_order(n, r):
    """Points of the interval outside the compositions, in removal order.

    Layers with the earliest negative coordinate go first; inside a layer
    the largest point in the layer order is removed first.
    """
    order = []
    for k in range(2, n + 1):
        layer = layer_points(n, r, k)
        layer.sort(key=lambda z: layer_key(z, k), reverse=True)
        order.extend((k, z) for z in layer)
    return order


def check_layer_hypotheses(n, r):
    """Set-theoretic hypotheses behind the layered removal.

    With Z_1 the compositions and Z_i the layer with first negative
    coordinate n + 1 - i, and with the single-column monoids attached the
    same way, checks
        (monoid_j . Z_i) := {z + d} cap interval  inside  Z_i ... Z_j
    for i <= j, and invariance of the unions Y_j under the earlier monoids.
    """
    Y = interval_points(n, r)
    m = n - 1
    if m < 1:
        return {"zj_condition": True, "yj_condition": True, "cases": []}
    Z = {1: [z for z in Y if all(x >= 0 for x in z)]}
    for i in range(2, m + 1):
        Z[i] = layer_points(n, r, n + 1 - i)
    col = {i: n + 1 - i for i in range(1, m + 1)}
    cases = []
    ok_z = ok_y = True
    for i in range(1, m + 1):
        for j in range(i, m + 1):
            allowed = set()
            for k in range(i, j + 1):
                allowed.update(Z[k])
            reach = {
                y
                for z in Z[i]
                for y in Y
                if in_column_monoid(point_sub(y, z), n, col[j])
            }
            good = reach <= allowed
            ok_z = ok_z and good
            cases.append(("layer", i, j, good))
    for j in range(1, m + 1):
        Yj = set()
        for k in range(1, j + 1):
            Yj.update(Z[k])
        for i in range(1, j):
            reach = {
                y
                for z in Yj
                for y in Y
                if in_column_monoid(point_sub(y, z), n, col[i])
            }
            good = reach == Yj
            ok_y = ok_y and good
            cases.append(("union", i, j, good))
    return {"zj_condition": ok_z, "yj_condition": ok_y, "cases": cases}


def tor_dimensions(trunc, r, lam, imax=2, length=None):
    """dim Tor_i of (interval algebra / composition ideal, simple at lam).

    Resolves the simple over the interval algebra by projective covers and
    pushes the resolution through the quotient (the drop rule); Tor is the
    homology of the pushed-down complex.
    """
    if length is None:
        length = imax + 1
    field = trunc.field
    alg = trunc.alg
    res = resolve_simple(trunc, lam, length)
    kept = {}

    def kept_based(w):
        if w not in kept:
            inds = [a for a in trunc.based_at(w)
                    if arrow_is_kept(alg, trunc.arrows[a], r)]
            kept[w] = {a: k for k, a in enumerate(inds)}
        return kept[w]

    pushed_dims = []
    pushed_cols = []
    for i in range(len(res.weights)):
        basis = []
        for t, w in enumerate(res.weights[i]):
            for a in kept_based(w):
                basis.append((t, a))
        pushed_dims.append(len(basis))
    for i in range(1, len(res.diffs) + 1):
        diff = res.diffs[i - 1]
        by_col = {}
        for (t, s), entry in diff.items():
            by_col.setdefault(s, []).append((t, entry))
        dst = []
        for t, w in enumerate(res.weights[i - 1]):
            for a in kept_based(w):
                dst.append((t, a))
        dst_index = {b: k for k, b in enumerate(dst)}
        cols = []
        for s, w in enumerate(res.weights[i]):
            for a in kept_based(w):
                col = {}
                for t, entry in by_col.get(s, ()):
                    prod = trunc.product({a: field.one}, entry)
                    for b, c in prod.items():
                        if not arrow_is_kept(alg, trunc.arrows[b], r):
                            continue
                        k = dst_index[(t, b)]
                        v = field.add(col.get(k, field.zero), c)
                        if v == field.zero:
                            col.pop(k, None)
                        else:
                            col[k] = v
                cols.append(col)
        pushed_cols.append(cols)
    ranks = [matrix_rank(cols, field) for cols in pushed_cols]
    out = {}
    for i in range(1, imax + 1):
        if i >= len(pushed_cols):
            out[i] = 0
            continue
        # H_i = dim ker(d_i^push) - rank(d_{i+1}^push)
        ker = pushed_dims[i] - ranks[i - 1]
        out[i] = ker - (ranks[i] if i < len(ranks) else 0)
    return out


def chain_report(n, r, field, tor_sample=None, alg=None):
    """Full layered-removal diagnostics from the interval to the compositions.

    Returns per-step two-idempotent reports, the combinatorial layer
    hypotheses, the final quotient dimension, and Tor-vanishing spot
    checks for simples at the sampled compositions.
    """
    if alg is None:
        alg = DividedPowerAlgebra(n)
    trunc = ConvexTruncation(alg, interval_points(n, r), field, r=r)
    hypotheses = check_layer_hypotheses(n, r)

    steps = []
    ideal = Echelon(field)
    current = QuotientAlgebra(trunc, ideal)
    for k, z in removal_order(n, r):
        e = current.indicator_vector(z)
        if not e:
            steps.append({"layer": k, "point": z, "error": "indicator vanishes"})
            continue
        rep = two_idempotent_report(current, e)
        rep["layer"] = k
        rep["point"] = z
        steps.append(rep)
        close_two_sided_ideal(trunc, ideal, [trunc.indicator_vector(z)])
        current = QuotientAlgebra(trunc, ideal)

    comps = compositions(n, r)
    final_dim = current.dim
    expected = tri_count(n, r)

    tor = {}
    if tor_sample is None:
        tor_sample = comps
    for lam in tor_sample:
        tor[lam] = tor_dimensions(trunc, r, lam, imax=2)

    passed = (
        hypotheses["zj_condition"]
        and hypotheses["yj_condition"]
        and all(s.get("two_idempotent") for s in steps)
        and final_dim == expected
        and all(all(v == 0 for v in t.values()) for t in tor.values())
    )
    return {
        "n": n,
        "r": r,
        "char": field.characteristic,
        "hypotheses": hypotheses,
        "steps": steps,
        "final_dim": final_dim,
        "expected_dim": expected,
        "tor": tor,
        "passed": passed,
    }
