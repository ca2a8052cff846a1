"""Finite-type Cartan matrices and their positive root systems.

Validation computes the minimal positive symmetrizers and the connected
components, and rejects anything that is not finite type (positive definite
after symmetrization).  Positive roots are generated by closing the simple
roots under the reflections s_i with a positivity filter; the resulting set
is what feeds the product-over-roots characters, so only the set and the
positions of the simple roots matter, not any reduced-word order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class CartanError(ValueError):
    """Raised when a matrix fails one of the finite-type conditions."""


@dataclass(frozen=True)
class CartanMatrix:
    """A validated finite-type Cartan matrix.

    a          -- the matrix rows, as tuples
    d          -- minimal positive symmetrizers: d[i]*a[i][j] == d[j]*a[j][i]
    components -- connected components of the coupling graph, each a sorted
                  tuple of indices
    """

    a: tuple[tuple[int, ...], ...]
    d: tuple[int, ...]
    components: tuple[tuple[int, ...], ...]

    @property
    def theta(self) -> int:
        return len(self.a)

    def component_of(self, i: int) -> int:
        for c, comp in enumerate(self.components):
            if i in comp:
                return c
        raise IndexError(i)

    def same_component(self, i: int, j: int) -> bool:
        return self.component_of(i) == self.component_of(j)


def _components(a) -> list[tuple[int, ...]]:
    theta = len(a)
    seen = [False] * theta
    out = []
    for start in range(theta):
        if seen[start]:
            continue
        comp = []
        queue = [start]
        seen[start] = True
        while queue:
            i = queue.pop()
            comp.append(i)
            for j in range(theta):
                if j != i and a[i][j] != 0 and not seen[j]:
                    seen[j] = True
                    queue.append(j)
        out.append(tuple(sorted(comp)))
    return out


def _minors_positive(sym) -> bool:
    # Leading principal minors by fraction-free-ish elimination on Fractions.
    n = len(sym)
    m = [[Fraction(x) for x in row] for row in sym]
    det = Fraction(1)
    for k in range(n):
        if m[k][k] == 0:
            return False
        det *= m[k][k]
        if det <= 0:
            return False
        for i in range(k + 1, n):
            f = m[i][k] / m[k][k]
            for j in range(k, n):
                m[i][j] -= f * m[k][j]
    return True


def validate_cartan(a) -> CartanMatrix:
    """Check the finite-type Cartan axioms and return the validated matrix.

    Raises CartanError naming the first failing condition.
    """
    rows = tuple(tuple(int(x) for x in row) for row in a)
    theta = len(rows)
    if theta == 0:
        raise CartanError("empty Cartan matrix")
    if any(len(row) != theta for row in rows):
        raise CartanError("Cartan matrix is not square")
    for i in range(theta):
        if rows[i][i] != 2:
            raise CartanError(f"diagonal entry a[{i}][{i}] = {rows[i][i]} != 2")
        for j in range(theta):
            if i != j and rows[i][j] > 0:
                raise CartanError(f"off-diagonal entry a[{i}][{j}] = {rows[i][j]} > 0")
            if (rows[i][j] == 0) != (rows[j][i] == 0):
                raise CartanError(f"zero pattern not symmetric at ({i},{j})")

    comps = _components(rows)

    # Symmetrizers: walk each component assigning relative rational weights
    # d_j/d_i = a_ij/a_ji along edges, then clear denominators minimally.
    weights: list[Fraction | None] = [None] * theta
    for comp in comps:
        root = comp[0]
        weights[root] = Fraction(1)
        queue = [root]
        while queue:
            i = queue.pop()
            for j in range(theta):
                if j == i or rows[i][j] == 0:
                    continue
                w = weights[i] * Fraction(rows[i][j], rows[j][i])
                if weights[j] is None:
                    weights[j] = w
                    queue.append(j)
                elif weights[j] != w:
                    raise CartanError("matrix is not symmetrizable")
        denom = 1
        for i in comp:
            denom = denom * weights[i].denominator // _gcd(denom, weights[i].denominator)
        scaled = [weights[i] * denom for i in comp]
        g = 0
        for v in scaled:
            g = _gcd(g, v.numerator)
        for i, v in zip(comp, scaled):
            weights[i] = Fraction(v.numerator // g)

    d = tuple(int(weights[i]) for i in range(theta))
    for i in range(theta):
        for j in range(theta):
            if d[i] * rows[i][j] != d[j] * rows[j][i]:
                raise CartanError("matrix is not symmetrizable")

    sym = [[d[i] * rows[i][j] for j in range(theta)] for i in range(theta)]
    if not _minors_positive(sym):
        raise CartanError("symmetrized matrix is not positive definite (not finite type)")

    return CartanMatrix(a=rows, d=d, components=tuple(comps))


def _gcd(a: int, b: int) -> int:
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


def reflect(cartan: CartanMatrix, i: int, m: tuple[int, ...]) -> tuple[int, ...]:
    """Apply the simple reflection s_i in simple-root coordinates."""
    pairing = sum(cartan.a[i][j] * m[j] for j in range(cartan.theta))
    out = list(m)
    out[i] -= pairing
    return tuple(out)


@dataclass(frozen=True)
class RootSystem:
    """Positive roots of a finite-type Cartan matrix, in coordinates.

    roots -- every positive root exactly once, sorted by (height, lex)
    j     -- j[k] is the position of the simple root alpha_k in `roots`
    """

    cartan: CartanMatrix
    roots: tuple[tuple[int, ...], ...]
    j: tuple[int, ...]

    @property
    def p(self) -> int:
        return len(self.roots)


def positive_roots(cartan: CartanMatrix) -> RootSystem:
    """Generate all positive roots by reflection closure of the simple roots."""
    theta = cartan.theta
    simple = [tuple(1 if t == k else 0 for t in range(theta)) for k in range(theta)]
    found = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for m in frontier:
            for i in range(theta):
                r = reflect(cartan, i, m)
                if all(x >= 0 for x in r) and any(x > 0 for x in r) and r not in found:
                    found.add(r)
                    nxt.append(r)
        frontier = nxt
    ordered = sorted(found, key=lambda m: (sum(m), m))
    j = tuple(ordered.index(simple[k]) for k in range(theta))
    return RootSystem(cartan=cartan, roots=tuple(ordered), j=j)
