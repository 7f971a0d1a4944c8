"""The divided-power enveloping algebra of strictly upper-triangular matrices.

Basis monomials are products of divided powers e_ij^(k) = e_ij^k / k! of
the elementary matrices e_ij (i < j), written in a fixed canonical order:
columns from the right, and within a column the row index descending.
Products are computed over the rationals by expanding divided powers,
straightening with the commutator rule

    e_ij e_kl = e_kl e_ij + delta_jk e_il - delta_li e_kj,

regrouping into divided powers, and asserting that every structure
constant is an integer before reducing into the coefficient field.
Structure constants are cached once over the integers, so all
characteristics share a single table.
"""

import json
from fractions import Fraction
from math import factorial

from .combinatorics import height


class IntegralityError(ArithmeticError):
    """A structure constant failed to be an integer: an implementation bug."""


class Monomial:
    """Exponent vector over the pairs (i, j), i < j, in row-major order."""

    __slots__ = ("n", "exps")

    def __init__(self, n, exps):
        self.n = n
        self.exps = tuple(exps)

    def __eq__(self, other):
        return self.n == other.n and self.exps == other.exps

    def __hash__(self):
        return hash((self.n, self.exps))

    def __lt__(self, other):
        return self.exps < other.exps

    def is_unit(self):
        return not any(self.exps)

    def __repr__(self):
        return f"Monomial({self.n}, {self.exps})"


def _pairs(n):
    return [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]


class DividedPowerAlgebra:
    """Multiplication, grading and column structure for one rank n.

    The product table is the only mutable state and follows a
    compute-once/read-many contract: entries are written at most once and
    never change, so concurrent readers are safe.
    """

    def __init__(self, n):
        if n < 1:
            raise ValueError("rank must be >= 1")
        self.n = n
        self.pairs = _pairs(n)
        self.pair_index = {p: a for a, p in enumerate(self.pairs)}
        # canonical written position: leftmost factor has the largest (j, i)
        by_written = sorted(range(len(self.pairs)),
                            key=lambda a: (self.pairs[a][1], self.pairs[a][0]),
                            reverse=True)
        self.written_rank = [0] * len(self.pairs)
        for pos, a in enumerate(by_written):
            self.written_rank[a] = pos
        self.written_order = by_written
        self._products = {}
        self._straighten_memo = {}
        self._components = {}

    # -- construction -------------------------------------------------

    def monomial(self, exps_by_pair):
        exps = [0] * len(self.pairs)
        for (i, j), k in exps_by_pair.items():
            if k < 0:
                raise ValueError("negative exponent")
            exps[self.pair_index[(i, j)]] = k
        return Monomial(self.n, exps)

    def from_exps(self, exps):
        exps = tuple(exps)
        if len(exps) != len(self.pairs) or any(k < 0 for k in exps):
            raise ValueError("bad exponent vector")
        return Monomial(self.n, exps)

    @property
    def unit(self):
        return Monomial(self.n, (0,) * len(self.pairs))

    def generator(self, i, j, k=1):
        return self.monomial({(i, j): k})

    # -- grading ------------------------------------------------------

    def degree(self, m):
        """Coefficients over the simple positive vectors v_l - v_{l+1}."""
        c = [0] * (self.n - 1)
        for a, k in enumerate(m.exps):
            if k:
                i, j = self.pairs[a]
                for l in range(i - 1, j - 1):
                    c[l] += k
        return tuple(c)

    def monomial_height(self, m):
        return height(self.degree(m))

    # -- canonical word and straightening ------------------------------

    def word(self, m):
        letters = []
        for a in self.written_order:
            letters.extend([a] * m.exps[a])
        return tuple(letters)

    def _commutator(self, a, b):
        """[e_A, e_B] as a list of (pair index, sign)."""
        i, j = self.pairs[a]
        k, l = self.pairs[b]
        out = []
        if j == k:
            out.append((self.pair_index[(i, l)], 1))
        if l == i:
            out.append((self.pair_index[(k, j)], -1))
        return out

    def _straighten(self, word):
        """Rewrite a word in the e_ij into canonically ordered words.

        Returns {sorted word: integer coefficient}.  Terminates because a
        swap removes one inversion and a bracket shortens the word.
        """
        memo = self._straighten_memo
        hit = memo.get(word)
        if hit is not None:
            return hit
        rank = self.written_rank
        spot = -1
        for l in range(len(word) - 1):
            if rank[word[l]] > rank[word[l + 1]]:
                spot = l
                break
        if spot < 0:
            result = {word: 1}
        else:
            result = {}
            a, b = word[spot], word[spot + 1]
            swapped = word[:spot] + (b, a) + word[spot + 2:]
            for w, c in self._straighten(swapped).items():
                result[w] = result.get(w, 0) + c
            for p, sign in self._commutator(a, b):
                shorter = word[:spot] + (p,) + word[spot + 2:]
                for w, c in self._straighten(shorter).items():
                    result[w] = result.get(w, 0) + sign * c
            result = {w: c for w, c in result.items() if c}
        memo[word] = result
        return result

    def _word_exps(self, word):
        exps = [0] * len(self.pairs)
        for a in word:
            exps[a] += 1
        return tuple(exps)

    # -- multiplication ------------------------------------------------

    def multiply_monomials(self, m1, m2):
        """Integer structure constants of a monomial product.

        Returns a tuple of (exponent vector, integer coefficient); cached.
        """
        key = (m1.exps, m2.exps)
        hit = self._products.get(key)
        if hit is not None:
            return hit
        den = 1
        for k in m1.exps:
            den *= factorial(k)
        for k in m2.exps:
            den *= factorial(k)
        word = self.word(m1) + self.word(m2)
        out = []
        for w, c in sorted(self._straighten(word).items()):
            exps = self._word_exps(w)
            num = c
            for k in exps:
                num *= factorial(k)
            coeff = Fraction(num, den)
            if coeff.denominator != 1:
                raise IntegralityError(
                    f"non-integral structure constant {coeff} in "
                    f"{m1.exps} * {m2.exps}")
            if coeff:
                out.append((exps, int(coeff)))
        out = tuple(out)
        self._products[key] = out
        return out

    def multiply(self, x, y, field):
        """Bilinear product of elements (dicts Monomial -> scalar)."""
        zero = field.zero
        out = {}
        for m1, c1 in x.items():
            if c1 == zero:
                continue
            for m2, c2 in y.items():
                if c2 == zero:
                    continue
                c12 = field.mul(c1, c2)
                for exps, k in self.multiply_monomials(m1, m2):
                    m = Monomial(self.n, exps)
                    v = field.add(out.get(m, zero), field.mul(c12, field.of(k)))
                    if v == zero:
                        out.pop(m, None)
                    else:
                        out[m] = v
        return out

    # -- column structure ----------------------------------------------

    def column_factors(self, m):
        """Single-column factors for columns n, n-1, ..., 2.

        Concatenating the factors in this order reproduces m.
        """
        out = []
        for j in range(self.n, 1, -1):
            exps = [0] * len(self.pairs)
            for i in range(1, j):
                a = self.pair_index[(i, j)]
                exps[a] = m.exps[a]
            out.append(Monomial(self.n, exps))
        return out

    # -- graded components ----------------------------------------------

    def component_basis(self, coords):
        """All monomials of degree exactly coords, sorted by exponent vector."""
        coords = tuple(coords)
        if len(coords) != self.n - 1:
            raise ValueError("degree coordinate length mismatch")
        if any(c < 0 for c in coords):
            return []
        hit = self._components.get(coords)
        if hit is not None:
            return hit
        pairs = self.pairs
        out = []
        exps = [0] * len(pairs)

        def place(a, rem):
            if a == len(pairs):
                if all(c == 0 for c in rem):
                    out.append(Monomial(self.n, exps))
                return
            i, j = pairs[a]
            cap = min(rem[l] for l in range(i - 1, j - 1))
            for k in range(cap + 1):
                exps[a] = k
                nxt = list(rem)
                for l in range(i - 1, j - 1):
                    nxt[l] -= k
                place(a + 1, nxt)
            exps[a] = 0

        place(0, list(coords))
        out = sorted(out)
        self._components[coords] = out
        return out

    def degrees_to_height(self, h):
        """All degree coordinate vectors of height <= h, sorted by (height, lex)."""
        out = []

        def rec(prefix, rem):
            if len(prefix) == self.n - 1:
                out.append(tuple(prefix))
                return
            for c in range(rem + 1):
                rec(prefix + [c], rem - c)

        rec([], h)
        return sorted(out, key=lambda c: (sum(c), c))

    def monomials_to_height(self, h):
        out = []
        for coords in self.degrees_to_height(h):
            out.extend(self.component_basis(coords))
        return out

    def fill_cache(self, h):
        """Precompute products of all monomial pairs of total height <= h."""
        monos = self.monomials_to_height(h)
        for m1 in monos:
            h1 = self.monomial_height(m1)
            for m2 in monos:
                if h1 + self.monomial_height(m2) <= h:
                    self.multiply_monomials(m1, m2)

    # -- cache persistence ----------------------------------------------

    CACHE_SCHEMA = 1

    def save_cache(self, path, h):
        """Write the full product table up to pair height h as JSON."""
        self.fill_cache(h)
        entries = []
        for (e1, e2), terms in sorted(self._products.items()):
            m1 = Monomial(self.n, e1)
            m2 = Monomial(self.n, e2)
            if self.monomial_height(m1) + self.monomial_height(m2) > h:
                continue
            entries.append([list(e1), list(e2),
                            [[list(e), c] for e, c in terms]])
        payload = {"schema": self.CACHE_SCHEMA, "n": self.n,
                   "height": h, "entries": entries}
        with open(path, "w") as fh:
            json.dump(payload, fh, sort_keys=True, separators=(",", ":"))

    def load_cache(self, path, h):
        """Load a cache file; returns False if the key does not cover (n, h)."""
        try:
            with open(path) as fh:
                payload = json.load(fh)
        except (OSError, ValueError):
            return False
        if (payload.get("schema") != self.CACHE_SCHEMA
                or payload.get("n") != self.n
                or payload.get("height", -1) < h):
            return False
        for e1, e2, terms in payload["entries"]:
            key = (tuple(e1), tuple(e2))
            self._products[key] = tuple((tuple(e), c) for e, c in terms)
        return True
