"""Generic data of finite Cartan type and cocycle data on the group.

A datum packages the group rank, the Cartan matrix, the group-likes g_i (as
exponent vectors over Z^s), the characters chi_i, and the linking values
lambda_ij.  Validation enforces the compatibility between the braiding
q_ij = chi_j(g_i) and the Cartan matrix: within a connected component all
q_ii are powers of one base monomial q_I via the symmetrizers, and
q_ij q_ji depends only on the symmetrized entry.

Cocycles on the group are stored by their antisymmetric ratio lattice
u[j][k] = exponents of sigma(y_j, y_k)/sigma(y_k, y_j); a fixed bicharacter
representative supplies explicit values, optionally twisted by a coboundary
so that nothing downstream can depend on the choice of representative.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from .cartan import CartanMatrix, RootSystem, positive_roots, validate_cartan
from .scalars import (
    Character,
    Exps,
    Monomial,
    RationalFunction,
    add_exps,
    neg_exps,
    parse_scalar,
    scale_exps,
    zeros,
)


class DatumError(ValueError):
    """Raised when datum input violates one of the structural conditions."""


def _as_rf(value, params) -> RationalFunction:
    if isinstance(value, RationalFunction):
        return value
    if isinstance(value, Monomial):
        return value.as_rf()
    if isinstance(value, str):
        return parse_scalar(value, params)
    return RationalFunction.const(Fraction(value), len(params))


@dataclass
class GenericDatum:
    """A validated generic datum of finite Cartan type.

    The group part may be empty of skew-primitives (theta = 0, cartan None),
    which models a plain group algebra.
    """

    params: tuple[str, ...]
    s: int
    cartan: CartanMatrix | None
    g: tuple[Exps, ...]
    chi: tuple[Character, ...]
    qI: tuple[Monomial, ...]
    lam: dict[tuple[int, int], RationalFunction]
    warnings: tuple[str, ...] = ()

    @property
    def m(self) -> int:
        return len(self.params)

    @property
    def theta(self) -> int:
        return len(self.g)

    def q(self, i: int, j: int) -> Monomial:
        """Braiding entry q_ij = chi_j(g_i)."""
        return self.chi[j].eval(self.g[i])

    def same_component(self, i: int, j: int) -> bool:
        return self.cartan is not None and self.cartan.same_component(i, j)

    def linkable_pairs(self) -> list[tuple[int, int]]:
        return [
            (i, j)
            for i in range(self.theta)
            for j in range(i + 1, self.theta)
            if not self.same_component(i, j)
        ]

    def lam_at(self, i: int, j: int) -> RationalFunction:
        return self.lam.get((i, j), RationalFunction.zero(self.m))


def validate_datum(
    *,
    params: Sequence[str],
    g: Sequence[Sequence[int]],
    chi: Sequence,
    cartan=None,
    lam: Mapping | None = None,
    mode: str = "strict",
    s: int | None = None,
) -> GenericDatum:
    """Check all datum conditions and return the validated GenericDatum.

    ``chi`` entries may be Character objects or raw s x m exponent rows;
    ``lam`` values may be rational functions, monomials, strings, or numbers.
    In strict mode a nonzero linking value with chi_i chi_j != trivial is an
    error; permissive mode records a warning instead.
    """
    if mode not in ("strict", "permissive"):
        raise DatumError(f"unknown mode {mode!r}")
    params = tuple(params)
    m = len(params)
    gvecs = tuple(tuple(int(x) for x in vec) for vec in g)
    theta = len(gvecs)
    warnings: list[str] = []

    if theta == 0:
        if cartan is not None:
            raise DatumError("a Cartan matrix was given but there are no generators")
        if lam:
            raise DatumError("linking values without generators")
        return GenericDatum(params, 0 if s is None else int(s), None, (), (), (), {}, ())

    if s is not None and s != len(gvecs[0]):
        raise DatumError("declared group rank does not match the exponent vectors")
    s = len(gvecs[0])
    if any(len(vec) != s for vec in gvecs):
        raise DatumError("group-like exponent vectors have mixed lengths")

    if cartan is None:
        raise DatumError("missing Cartan matrix")
    cm = cartan if isinstance(cartan, CartanMatrix) else validate_cartan(cartan)
    if cm.theta != theta:
        raise DatumError(
            f"Cartan matrix size {cm.theta} does not match {theta} generators"
        )

    chars = []
    for i, c in enumerate(chi):
        c = c if isinstance(c, Character) else Character(tuple(tuple(r) for r in c))
        if c.s != s:
            raise DatumError(f"character {i} has rank {c.s}, expected {s}")
        if c.rows and c.m != m:
            raise DatumError(f"character {i} uses {c.m} parameters, expected {m}")
        chars.append(c)
    if len(chars) != theta:
        raise DatumError(f"{len(chars)} characters for {theta} generators")
    chars = tuple(chars)

    def q(i, j):
        return chars[j].eval(gvecs[i])

    # Base monomial q_I per component, inferred from q_ii = q_I^{d_i}.
    qI: list[Monomial | None] = [None] * len(cm.components)
    for c, comp in enumerate(cm.components):
        i0 = comp[0]
        e = q(i0, i0).exps
        d0 = cm.d[i0]
        if any(x % d0 != 0 for x in e):
            raise DatumError(
                f"q_{i0}{i0} is not a d_{i0}-th power (exponents {e}, d={d0})"
            )
        base = Monomial(Fraction(1), tuple(x // d0 for x in e))
        if not any(base.exps):
            raise DatumError(f"q_I of component {c} has zero exponent vector (root of unity)")
        qI[c] = base
        for i in comp:
            if q(i, i) != base ** cm.d[i]:
                raise DatumError(
                    f"q_{i}{i} != q_I^d_{i} within component {c}"
                )
    for i in range(theta):
        for j in range(theta):
            if i == j:
                continue
            prod = q(i, j) * q(j, i)
            if cm.same_component(i, j):
                want = qI[cm.component_of(i)] ** (cm.d[i] * cm.a[i][j])
            else:
                want = Monomial.one(m)
            if prod != want:
                raise DatumError(
                    f"q_{i}{j} q_{j}{i} = {prod.exps} violates the braiding "
                    f"compatibility at ({i},{j})"
                )

    lam_map: dict[tuple[int, int], RationalFunction] = {}
    zero = RationalFunction.zero(m)
    for key, value in (lam or {}).items():
        i, j = key
        if not (0 <= i < j < theta):
            raise DatumError(f"linking index {key} out of range or not i<j")
        rf = _as_rf(value, params)
        if rf == zero:
            continue
        if cm.same_component(i, j):
            raise DatumError(f"linking within one component at {key}")
        if all(x == 0 for x in add_exps(gvecs[i], gvecs[j])):
            raise DatumError(f"nonzero linking at {key} but g_i g_j is the identity")
        if not (chars[i] * chars[j]).is_trivial:
            msg = f"nonzero linking at {key} but chi_i chi_j is not trivial"
            if mode == "strict":
                raise DatumError(msg)
            warnings.append(msg)
        lam_map[(i, j)] = rf

    return GenericDatum(
        params, s, cm, gvecs, chars, tuple(qI), lam_map, tuple(warnings)
    )


def braiding_matrix(d: GenericDatum):
    return tuple(
        tuple(d.q(i, j) for j in range(d.theta)) for i in range(d.theta)
    )


def root_system(d: GenericDatum) -> RootSystem | None:
    return None if d.cartan is None else positive_roots(d.cartan)


def root_group_and_char(d: GenericDatum, coords: Sequence[int]) -> tuple[Exps, Character]:
    """Group-like and character of the root with the given simple coordinates."""
    gb = zeros(d.s)
    cb = Character.trivial(d.s, d.m)
    for k, mk in enumerate(coords):
        if mk:
            gb = add_exps(gb, scale_exps(mk, d.g[k]))
            cb = cb * (d.chi[k] ** mk)
    return gb, cb


# ---------------------------------------------------------------------------
# Cocycles on the free abelian group.


@dataclass
class CocycleData:
    """A 2-cocycle class on Z^s given by its antisymmetric ratio lattice.

    u[j][k] holds the parameter exponents of sigma(y_j,y_k)/sigma(y_k,y_j).
    Explicit values come from the bicharacter representative
    rho(a,b) = prod_{j<k} ratio_{jk}^{a_j b_k}, composed with an optional
    coboundary twist f (value = f(a)^-1 f(b)^-1 rho(a,b) f(a+b)); every
    exported quantity must be independent of that choice.
    """

    s: int
    m: int
    u: tuple[tuple[Exps, ...], ...]
    twist: Callable[[Exps], Monomial] | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        self.u = tuple(tuple(tuple(int(x) for x in e) for e in row) for row in self.u)
        if len(self.u) != self.s or any(len(row) != self.s for row in self.u):
            raise DatumError("ratio lattice is not s x s")
        for j in range(self.s):
            if any(self.u[j][j]):
                raise DatumError("ratio lattice has nonzero diagonal")
            for k in range(self.s):
                if self.u[j][k] != neg_exps(self.u[k][j]):
                    raise DatumError("ratio lattice is not antisymmetric")

    @classmethod
    def zero(cls, s: int, m: int) -> "CocycleData":
        row = tuple(zeros(m) for _ in range(s))
        return cls(s, m, tuple(row for _ in range(s)))

    @classmethod
    def from_ratios(cls, s: int, m: int, ratios: Mapping[tuple[int, int], Sequence[int]]) -> "CocycleData":
        """Build from ratios given on pairs j<k (or any pairs, consistently)."""
        u = [[zeros(m) for _ in range(s)] for _ in range(s)]
        for (j, k), e in ratios.items():
            e = tuple(int(x) for x in e)
            if j == k:
                raise DatumError("ratio on a diagonal pair")
            u[j][k] = e
            u[k][j] = neg_exps(e)
        return cls(s, m, tuple(tuple(row) for row in u))

    @property
    def is_trivial(self) -> bool:
        return all(not any(e) for row in self.u for e in row)

    def ratio_exps(self, a: Sequence[int], b: Sequence[int]) -> Exps:
        out = [0] * self.m
        for j, aj in enumerate(a):
            if not aj:
                continue
            for k, bk in enumerate(b):
                if bk:
                    e = self.u[j][k]
                    for t in range(self.m):
                        out[t] += aj * bk * e[t]
        return tuple(out)

    def ratio(self, a: Sequence[int], b: Sequence[int]) -> Monomial:
        """sigma(a,b)/sigma(b,a), independent of the representative."""
        return Monomial(Fraction(1), self.ratio_exps(a, b))

    def rep_value(self, a: Sequence[int], b: Sequence[int]) -> Monomial:
        out = [0] * self.m
        for j in range(self.s):
            if not a[j]:
                continue
            for k in range(j + 1, self.s):
                if b[k]:
                    e = self.u[j][k]
                    for t in range(self.m):
                        out[t] += a[j] * b[k] * e[t]
        return Monomial(Fraction(1), tuple(out))

    def value(self, a: Sequence[int], b: Sequence[int]) -> Monomial:
        """An explicit representative value sigma(a,b)."""
        v = self.rep_value(a, b)
        if self.twist is not None:
            f = self.twist
            v = f(tuple(a)).inv() * f(tuple(b)).inv() * v * f(add_exps(tuple(a), tuple(b)))
        return v

    def inv_value(self, a: Sequence[int], b: Sequence[int]) -> Monomial:
        return self.value(a, b).inv()


def cocycle_ratio(sigma: CocycleData, g: Sequence[int], h: Sequence[int]) -> Monomial:
    return sigma.ratio(g, h)


def chi_sigma(d: GenericDatum, sigma: CocycleData) -> tuple[Character, ...]:
    """Deformed characters chi_i^sigma(g) = ratio(g, g_i) chi_i(g)."""
    out = []
    for i in range(d.theta):
        gi = d.g[i]
        rows = []
        for j in range(d.s):
            basis = tuple(1 if t == j else 0 for t in range(d.s))
            rows.append(add_exps(d.chi[i].rows[j], sigma.ratio_exps(basis, gi)))
        out.append(Character(tuple(rows)))
    return tuple(out)


def xi_set(d: GenericDatum, sigma: CocycleData) -> frozenset[tuple[int, int]]:
    """Pairs (i,j), i<j unlinked by the Cartan graph, with chi^s_i chi^s_j trivial."""
    cs = chi_sigma(d, sigma)
    return frozenset(
        (i, j) for (i, j) in d.linkable_pairs() if (cs[i] * cs[j]).is_trivial
    )


def deform_datum(d: GenericDatum, sigma: CocycleData, mode: str = "strict") -> GenericDatum:
    """The cocycle-deformed datum: chi^sigma and lambda^sigma.

    The deformed linking value is sigma(g_i,g_j) lambda_ij (with respect to
    the stored representative); pairs whose deformed characters no longer
    multiply to the trivial character are subject to the usual linking
    constraint, so strict mode rejects them.
    """
    cs = chi_sigma(d, sigma)
    lam = {
        key: (sigma.value(d.g[key[0]], d.g[key[1]]).as_rf() * rf)
        for key, rf in d.lam.items()
    }
    return validate_datum(
        params=d.params,
        g=d.g,
        chi=cs,
        cartan=d.cartan,
        lam=lam,
        mode=mode,
    )


def normalize_pair(
    d: GenericDatum,
    sigma: CocycleData,
    pi: Mapping[tuple[int, int], RationalFunction],
    f: Callable[[Exps], Monomial],
):
    """Apply a coboundary: sigma'(g,h) = f(g)^-1 f(h)^-1 sigma(g,h) f(gh).

    Returns (sigma', pi') with pi'_ij = f(g_i)^-1 f(g_j)^-1 pi_ij.  The ratio
    lattice is untouched; only representative values move.
    """
    f0 = f(zeros(sigma.s))
    if f0.is_one:
        fn = f
    else:
        def fn(gv, _f=f, _c=f0.inv()):
            return _c * _f(gv)
    old = sigma.twist
    if old is None:
        new_twist = fn
    else:
        def new_twist(gv, _old=old, _fn=fn):
            return _old(gv) * _fn(gv)
    sigma2 = CocycleData(sigma.s, sigma.m, sigma.u, new_twist)
    pi2 = {
        (i, j): (fn(d.g[i]).inv() * fn(d.g[j]).inv()).as_rf() * rf
        for (i, j), rf in pi.items()
    }
    return sigma2, pi2


# ---------------------------------------------------------------------------
# Cleft data and the induced cocycle shape on the whole Hopf algebra.


@dataclass
class CleftDatum:
    """Input data of a cleft object: base datum, group cocycle, and pi."""

    base: GenericDatum
    sigma: CocycleData
    pi: dict[tuple[int, int], RationalFunction]

    def normalized(self, f: Callable[[Exps], Monomial]) -> "CleftDatum":
        sigma2, pi2 = normalize_pair(self.base, self.sigma, self.pi, f)
        return CleftDatum(self.base, sigma2, pi2)


def make_cleft(base: GenericDatum, sigma: CocycleData, pi: Mapping | None = None) -> CleftDatum:
    if sigma.s != base.s or sigma.m != base.m:
        raise DatumError("cocycle shape does not match the datum")
    allowed = xi_set(base, sigma)
    zero = RationalFunction.zero(base.m)
    pi_map: dict[tuple[int, int], RationalFunction] = {}
    for key, value in (pi or {}).items():
        rf = _as_rf(value, base.params)
        if rf == zero:
            continue
        if tuple(key) not in allowed:
            raise DatumError(
                f"pi value at {tuple(key)} is outside the admissible pair set"
            )
        pi_map[tuple(key)] = rf
    return CleftDatum(base, sigma, pi_map)


def cleft_from_linking(d: GenericDatum) -> CleftDatum:
    """The Hopf algebra itself as a cleft object: trivial cocycle, pi = lambda."""
    return make_cleft(d, CocycleData.zero(d.s, d.m), dict(d.lam))


@dataclass
class HCocycle:
    """A cocycle on the whole Hopf algebra in pullback-plus-xx shape.

    Group pairs evaluate through the group cocycle; mixed (group, x) pairs
    are zero; the (x_i, x_j) values are stored explicitly.
    """

    sigma: CocycleData
    g: tuple[Exps, ...]
    xx: dict[tuple[int, int], RationalFunction]

    def gg(self, a: Sequence[int], b: Sequence[int]) -> Monomial:
        return self.sigma.value(a, b)

    def gg_inv(self, a: Sequence[int], b: Sequence[int]) -> Monomial:
        return self.sigma.inv_value(a, b)

    def xx_value(self, i: int, j: int, m: int) -> RationalFunction:
        return self.xx.get((i, j), RationalFunction.zero(m))

    def xx_inv(self, i: int, j: int, m: int) -> RationalFunction:
        """Convolution-inverse value on (x_i, x_j): -tau(x_i,x_j)/tau(g_i,g_j)."""
        v = self.xx_value(i, j, m)
        return -(self.gg(self.g[i], self.g[j]).inv().as_rf() * v)


def tau_from_cleft(cd: CleftDatum) -> HCocycle:
    """The Hopf-algebra cocycle carried by a cleft datum.

    On (x_i, x_j) with i<j over distinct components the value is
    lambda_ij sigma(g_i,g_j) - pi_ij; everywhere else mixed values vanish.
    """
    base = cd.base
    zero = RationalFunction.zero(base.m)
    xx: dict[tuple[int, int], RationalFunction] = {}
    for (i, j) in base.linkable_pairs():
        v = base.lam_at(i, j) * cd.sigma.value(base.g[i], base.g[j]).as_rf()
        v = v - cd.pi.get((i, j), zero)
        if v != zero:
            xx[(i, j)] = v
    return HCocycle(cd.sigma, base.g, xx)
