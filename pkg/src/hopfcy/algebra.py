"""Presentations with confluent normal forms for the supported families.

The families are twisted group algebras of Z^s, quantum affine spaces,
bosonizations whose Cartan components are all of type A1, and crossed
products of a quantum affine space by such a bosonization.  Every element
has a unique normal form

    sum  coeff * u^beta * gbar * x^alpha

with the affine generators first (ascending), then one twisted group basis
element, then the skew-primitives (ascending).  Multiplication folds the
right factor atom by atom through the rewriting rules; confluence is
certified at construction by associativity probes over all generator
triples.

For data with a Cartan component of rank >= 2 the presentation is flagged
``no_normal_forms``: products are still available as long as no two
skew-primitives have to be straightened past each other (group conjugation
of single-x words in particular), anything beyond raises.

The second half of the module implements the twisted algebras H(sigma,tau)
on the span of group-likes and (group-like times skew-primitive), together
with the generalized antipodes S_{sigma,tau} and their inverses in closed
form; these are the maps the Nakayama computations compose.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
import re

from .datum import CleftDatum, CocycleData, GenericDatum, HCocycle, cleft_from_linking, chi_sigma
from .scalars import (
    Character,
    Exps,
    Monomial,
    RationalFunction,
    add_exps,
    neg_exps,
    zeros,
)


class AlgebraError(ValueError):
    """Raised for unsupported element arithmetic or failed certification."""


Key = tuple[Exps, Exps, Exps]  # (u exponents, group exponents, x exponents)
Atom = tuple[str, object]  # ("u", i) | ("x", k) | ("g", exponent vector)


def _unit(k: int, n: int) -> Exps:
    return tuple(1 if t == k else 0 for t in range(n))


class Presentation:
    """A presented algebra of one of the supported families."""

    def __init__(
        self,
        *,
        family: str,
        params: tuple[str, ...],
        s: int,
        nu: int = 0,
        sigma: CocycleData | None = None,
        gvec: tuple[Exps, ...] = (),
        chi_eff: tuple[Character, ...] = (),
        xx_const: dict[tuple[int, int], dict[Exps, RationalFunction]] | None = None,
        affine_q: tuple[tuple[Monomial, ...], ...] = (),
        eig: tuple[Character, ...] = (),
        xact: tuple = (),
        datum: GenericDatum | None = None,
        no_normal_forms: bool = False,
        group_names: tuple[str, ...] | None = None,
        u_names: tuple[str, ...] | None = None,
        warnings: tuple[str, ...] = (),
    ):
        self.family = family
        self.params = params
        self.m = len(params)
        self.s = s
        self.nu = nu
        self.theta = len(gvec)
        self.sigma = sigma if sigma is not None else CocycleData.zero(s, self.m)
        self.gvec = gvec
        self.chi_eff = chi_eff
        self.xx_const = xx_const or {}
        self.affine_q = affine_q
        if nu and not eig:
            eig = tuple(Character.trivial(s, self.m) for _ in range(nu))
        self.eig = eig
        self.xact = xact
        self.datum = datum
        self.no_normal_forms = no_normal_forms
        self.warnings = warnings
        if group_names is None:
            group_names = ("g",) if s == 1 else tuple(f"g{j+1}" for j in range(s))
        if u_names is None:
            u_names = tuple(f"u{i+1}" for i in range(nu))
        self.group_names = group_names
        self.u_names = u_names
        self.x_names = tuple(f"x{k+1}" for k in range(self.theta))
        self.names: dict[str, Atom] = {}
        for j, name in enumerate(group_names):
            self.names[name] = ("g", _unit(j, s))
        for i, name in enumerate(u_names):
            self.names[name] = ("u", i)
        for k, name in enumerate(self.x_names):
            self.names[name] = ("x", k)
        self._xu_cache: dict = {}
        self._xx_cache: dict = {}
        self.certified = False

    # -- element constructors ----------------------------------------------

    def zero_elem(self) -> "AlgElement":
        return AlgElement(self, {})

    def one(self) -> "AlgElement":
        return self.monomial()

    def monomial(self, ubeta=None, g=None, xalpha=None, coeff=None) -> "AlgElement":
        key = (
            tuple(ubeta) if ubeta is not None else zeros(self.nu),
            tuple(g) if g is not None else zeros(self.s),
            tuple(xalpha) if xalpha is not None else zeros(self.theta),
        )
        c = coeff if coeff is not None else RationalFunction.one(self.m)
        if not isinstance(c, RationalFunction):
            c = c.as_rf() if isinstance(c, Monomial) else RationalFunction.const(c, self.m)
        return AlgElement(self, {key: c} if not c.is_zero else {})

    def group_elem(self, g, coeff=None) -> "AlgElement":
        return self.monomial(g=g, coeff=coeff)

    def ugen(self, i: int) -> "AlgElement":
        return self.monomial(ubeta=_unit(i, self.nu))

    def xgen(self, k: int) -> "AlgElement":
        return self.monomial(xalpha=_unit(k, self.theta))

    def q_eff(self, i: int, j: int) -> Monomial:
        """Effective braiding chi^eff_j(g_i)."""
        return self.chi_eff[j].eval(self.gvec[i])

    # -- rewriting core -----------------------------------------------------

    def _xword_u(self, alpha: Exps, i: int) -> dict:
        """x^alpha * u_i as {(j, alpha'): coeff} meaning u_j * x^alpha'."""
        ck = (alpha, i)
        hit = self._xu_cache.get(ck)
        if hit is not None:
            return hit
        one = RationalFunction.one(self.m)
        if not any(alpha):
            out = {(i, alpha): one}
            self._xu_cache[ck] = out
            return out
        t = max(k for k in range(self.theta) if alpha[k])
        rest = tuple(a - 1 if k == t else a for k, a in enumerate(alpha))
        out: dict = {}
        row = self.xact[t][i] if self.xact else ()
        for j, c in enumerate(row):
            if c.is_zero:
                continue
            for key, v in self._xword_u(rest, j).items():
                _acc(out, key, v * c)
        passfac = self.eig[i].eval(self.gvec[t]).as_rf()
        for (j, a2), v in self._xword_u(rest, i).items():
            key = (j, tuple(b + 1 if k == t else b for k, b in enumerate(a2)))
            _acc(out, key, v * passfac)
        self._xu_cache[ck] = out
        return out

    def _xword_x(self, alpha: Exps, k: int) -> dict:
        """x^alpha * x_k as {(m, alpha'): coeff} meaning gbar_m * x^alpha'."""
        ck = (alpha, k)
        hit = self._xx_cache.get(ck)
        if hit is not None:
            return hit
        one = RationalFunction.one(self.m)
        zero_g = zeros(self.s)
        if not any(alpha):
            out = {(zero_g, _unit(k, self.theta)): one}
            self._xx_cache[ck] = out
            return out
        t = max(j for j in range(self.theta) if alpha[j])
        if t <= k:
            out = {(zero_g, tuple(a + 1 if j == k else a for j, a in enumerate(alpha))): one}
            self._xx_cache[ck] = out
            return out
        if self.no_normal_forms:
            raise AlgebraError(
                "element arithmetic beyond single skew-primitive words needs "
                "all Cartan components of type A1"
            )
        rest = tuple(a - 1 if j == t else a for j, a in enumerate(alpha))
        qinv = self.q_eff(k, t).inv().as_rf()
        out = {}
        for (mshift, a2), v in self._xword_x(rest, k).items():
            key = (mshift, tuple(b + 1 if j == t else b for j, b in enumerate(a2)))
            _acc(out, key, v * qinv)
        const = self.xx_const.get((k, t))
        if const:
            for mshift, c in const.items():
                fac = Monomial.one(self.m)
                for j in range(self.theta):
                    if rest[j]:
                        fac = fac * self.chi_eff[j].eval(mshift) ** (-rest[j])
                _acc(out, (mshift, rest), -(qinv * c * fac))
        self._xx_cache[ck] = out
        return out

    def _term_times_atom(self, key: Key, coeff: RationalFunction, atom: Atom, out: dict) -> None:
        beta, g, alpha = key
        kind, payload = atom
        if kind == "g":
            h = payload
            c = coeff * self.sigma.value(g, h)
            for k in range(self.theta):
                if alpha[k]:
                    c = c * self.chi_eff[k].eval(h) ** (-alpha[k])
            _acc(out, (beta, add_exps(g, h), alpha), c)
        elif kind == "u":
            for (j, a2), v in self._xword_u(alpha, payload).items():
                c = coeff * v
                if any(g):
                    c = c * self.eig[j].eval(g)
                for t in range(j + 1, self.nu):
                    if beta[t]:
                        c = c * self.affine_q[j][t] ** (-beta[t])
                b2 = tuple(b + 1 if t == j else b for t, b in enumerate(beta))
                _acc(out, (b2, g, a2), c)
        elif kind == "x":
            for (mshift, a2), v in self._xword_x(alpha, payload).items():
                c = coeff * v * self.sigma.value(g, mshift)
                _acc(out, (beta, add_exps(g, mshift), a2), c)
        else:  # pragma: no cover - internal
            raise AlgebraError(f"unknown atom kind {kind!r}")

    def atoms_of_key(self, key: Key) -> list[Atom]:
        beta, g, alpha = key
        atoms: list[Atom] = []
        for i, b in enumerate(beta):
            atoms.extend([("u", i)] * b)
        if any(g):
            atoms.append(("g", g))
        for k, a in enumerate(alpha):
            atoms.extend([("x", k)] * a)
        return atoms

    def mul(self, left: "AlgElement", right: "AlgElement") -> "AlgElement":
        out: dict = {}
        for key2, c2 in right.terms.items():
            atoms = self.atoms_of_key(key2)
            partial = {k: c * c2 for k, c in left.terms.items()}
            for atom in atoms:
                nxt: dict = {}
                for key, c in partial.items():
                    self._term_times_atom(key, c, atom, nxt)
                partial = nxt
            for key, c in partial.items():
                _acc(out, key, c)
        return AlgElement(self, {k: c for k, c in out.items() if not c.is_zero})

    # -- words and rendering -------------------------------------------------

    def word(self, text) -> "AlgElement":
        tokens = text.split() if isinstance(text, str) else list(text)
        elem = self.one()
        for tok in tokens:
            mo = re.fullmatch(r"([A-Za-z_][A-Za-z0-9_]*)(?:\^(-?\d+))?", tok)
            if not mo or mo.group(1) not in self.names:
                raise AlgebraError(f"unknown generator token {tok!r}")
            kind, payload = self.names[mo.group(1)]
            power = int(mo.group(2)) if mo.group(2) else 1
            if kind == "g":
                atom = ("g", tuple(power * x for x in payload))
                elem = self.mul(elem, AlgElement(self, {_key_of_atom(self, atom): RationalFunction.one(self.m)}))
            else:
                if power < 0:
                    raise AlgebraError(f"negative power on non-invertible generator {tok!r}")
                for _ in range(power):
                    atom = (kind, payload)
                    elem = self.mul(elem, AlgElement(self, {_key_of_atom(self, atom): RationalFunction.one(self.m)}))
        return elem

    def atom_elements(self) -> list["AlgElement"]:
        """Singleton elements for every generator and group basis inverse."""
        out = []
        for i in range(self.nu):
            out.append(self.ugen(i))
        for j in range(self.s):
            out.append(self.group_elem(_unit(j, self.s)))
            out.append(self.group_elem(tuple(-x for x in _unit(j, self.s))))
        for k in range(self.theta):
            out.append(self.xgen(k))
        return out

    def render_key(self, key: Key) -> str:
        beta, g, alpha = key
        parts = []
        for i, b in enumerate(beta):
            if b:
                parts.append(self.u_names[i] + (f"^{b}" if b != 1 else ""))
        for j, e in enumerate(g):
            if e:
                parts.append(self.group_names[j] + (f"^{e}" if e != 1 else ""))
        for k, a in enumerate(alpha):
            if a:
                parts.append(self.x_names[k] + (f"^{a}" if a != 1 else ""))
        return " ".join(parts) if parts else "1"


def _key_of_atom(p: Presentation, atom: Atom) -> Key:
    kind, payload = atom
    if kind == "g":
        return (zeros(p.nu), tuple(payload), zeros(p.theta))
    if kind == "u":
        return (_unit(payload, p.nu), zeros(p.s), zeros(p.theta))
    return (zeros(p.nu), zeros(p.s), _unit(payload, p.theta))


def _acc(d: dict, key, value) -> None:
    cur = d.get(key)
    d[key] = value if cur is None else cur + value


class AlgElement:
    """A normal-form element; no zero coefficients stored."""

    __slots__ = ("p", "terms")

    def __init__(self, p: Presentation, terms: dict):
        self.p = p
        self.terms = {k: c for k, c in terms.items() if not c.is_zero}

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "AlgElement") -> "AlgElement":
        out = dict(self.terms)
        for k, c in other.terms.items():
            _acc(out, k, c)
        return AlgElement(self.p, out)

    def __neg__(self) -> "AlgElement":
        return AlgElement(self.p, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "AlgElement") -> "AlgElement":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, AlgElement):
            return self.p.mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c) -> "AlgElement":
        if isinstance(c, Monomial):
            c = c.as_rf()
        elif not isinstance(c, RationalFunction):
            c = RationalFunction.const(c, self.p.m)
        return AlgElement(self.p, {k: v * c for k, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgElement):
            return NotImplemented
        return (self - other).is_zero

    __hash__ = None

    def coeff_of(self, ubeta=None, g=None, xalpha=None) -> RationalFunction:
        key = (
            tuple(ubeta) if ubeta is not None else zeros(self.p.nu),
            tuple(g) if g is not None else zeros(self.p.s),
            tuple(xalpha) if xalpha is not None else zeros(self.p.theta),
        )
        return self.terms.get(key, RationalFunction.zero(self.p.m))

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for key in sorted(self.terms):
            c = self.terms[key]
            body = self.p.render_key(key)
            cs = c.render(self.p.params)
            if cs == "1" and body != "1":
                parts.append(body)
            elif body == "1":
                parts.append(f"({cs})" if any(op in cs for op in "+- ") else cs)
            else:
                coeff = f"({cs})" if any(op in cs for op in "+- /") else cs
                parts.append(f"{coeff} {body}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"<{self.render()}>"


def normal_form(p: Presentation, word) -> AlgElement:
    """Normal form of a word given as tokens like ``"g^-1 x1 x2"``."""
    return p.word(word)


# ---------------------------------------------------------------------------
# Builders.


def build_group_algebra(
    d_or_s, params=None, sigma: CocycleData | None = None, group_names=None
) -> Presentation:
    """The (possibly twisted) group algebra of Z^s."""
    if isinstance(d_or_s, GenericDatum):
        s, params, datum = d_or_s.s, d_or_s.params, d_or_s
    else:
        s, datum = int(d_or_s), None
        params = tuple(params or ())
    p = Presentation(
        family="group",
        params=tuple(params),
        s=s,
        sigma=sigma,
        datum=datum,
        group_names=group_names,
    )
    certify(p)
    return p


def build_quantum_affine(n: int, q: Monomial, params, u_names=None) -> Presentation:
    """k_q[u_1..u_n] with relations u_i u_j = q u_j u_i for i < j."""
    params = tuple(params)
    if not isinstance(q, Monomial):
        raise AlgebraError("the affine parameter must be a monomial scalar")
    affine_q = tuple(
        tuple(q if i < j else Monomial.one(len(params)) for j in range(n))
        for i in range(n)
    )
    p = Presentation(
        family="affine",
        params=params,
        s=0,
        nu=n,
        affine_q=affine_q,
        u_names=u_names,
    )
    certify(p)
    return p


def _bosonization(cd: CleftDatum, family_note: str | None = None, group_names=None) -> Presentation:
    d = cd.base
    chi_eff = chi_sigma(d, cd.sigma)
    zero = RationalFunction.zero(d.m)
    xx_const: dict[tuple[int, int], dict[Exps, RationalFunction]] = {}
    for (i, j) in d.linkable_pairs():
        const: dict[Exps, RationalFunction] = {}
        lam = d.lam_at(i, j)
        if lam != zero:
            const[add_exps(d.g[i], d.g[j])] = lam * cd.sigma.value(d.g[i], d.g[j])
        piv = cd.pi.get((i, j))
        if piv is not None and piv != zero:
            _acc(const, zeros(d.s), -piv)
        const = {k: v for k, v in const.items() if not v.is_zero}
        if const:
            xx_const[(i, j)] = const
    flagged = d.cartan is not None and any(
        len(comp) > 1 for comp in d.cartan.components
    )
    warnings = tuple(d.warnings)
    if flagged:
        warnings = warnings + (
            "Cartan components of rank >= 2: element arithmetic limited to "
            "words with at most one skew-primitive",
        )
    p = Presentation(
        family="bosonization",
        params=d.params,
        s=d.s,
        sigma=cd.sigma,
        gvec=d.g,
        chi_eff=chi_eff,
        xx_const=xx_const,
        datum=d,
        no_normal_forms=flagged,
        group_names=group_names,
        warnings=warnings,
    )
    certify(p)
    return p


def build_udlambda(d: GenericDatum, group_names=None) -> Presentation:
    """U(D,lambda): the bosonization with relation constants lambda_ij (g_i g_j - 1)."""
    if d.theta == 0:
        return build_group_algebra(d, group_names=group_names)
    return _bosonization(cleft_from_linking(d), group_names=group_names)


def build_cleft(cd: CleftDatum, group_names=None) -> Presentation:
    """B^lambda(sigma, pi): twisted group part and deformed x-relations."""
    if cd.base.theta == 0:
        return build_group_algebra(cd.base, sigma=cd.sigma, group_names=group_names)
    return _bosonization(cd, group_names=group_names)


@dataclass
class ActionData:
    """A module-algebra action on a quantum affine space.

    ``eig[i]`` is the character of the diagonal group action on u_i; ``xact``
    holds one n x n matrix per skew-primitive with x_k . u_i = sum_j
    xact[k][i][j] u_j.  An empty ``xact`` means every skew-primitive acts by
    zero.
    """

    aff: Presentation
    eig: tuple[Character, ...]
    xact: tuple = ()
    warnings: tuple[str, ...] = field(default=())

    def __post_init__(self):
        n = self.aff.nu
        if len(self.eig) != n:
            raise AlgebraError("one eigenvalue character per affine generator required")
        fixed = []
        for mat in self.xact:
            rows = tuple(
                tuple(
                    v if isinstance(v, RationalFunction)
                    else v.as_rf() if isinstance(v, Monomial)
                    else RationalFunction.const(v, self.aff.m)
                    for v in row
                )
                for row in mat
            )
            if len(rows) != n or any(len(r) != n for r in rows):
                raise AlgebraError("skew-primitive action matrix is not n x n")
            fixed.append(rows)
        self.xact = tuple(fixed)


def _zero_matrix(n: int, m: int):
    z = RationalFunction.zero(m)
    return tuple(tuple(z for _ in range(n)) for _ in range(n))


def _mat_eq(a, b) -> bool:
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def _mat_compose(first, then):
    """Matrix of (apply ``first``, then ``then``) in the row convention."""
    n = len(first)
    out = []
    for i in range(n):
        row = []
        for k in range(n):
            acc = first[i][0] * then[0][k]
            for j in range(1, n):
                acc = acc + first[i][j] * then[j][k]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def _certify_action(h: Presentation, sigma: CocycleData, action: ActionData) -> None:
    """Check the twisted-module and module-algebra conditions on the action.

    The compatibility is with the sigma-deformed Hopf algebra: braidings use
    chi^sigma and linking constants pick up sigma(g_i, g_j).
    """
    d = h.datum
    aff = action.aff
    n, m = aff.nu, aff.m
    theta = d.theta if d is not None else 0
    chi_eff = chi_sigma(d, sigma) if theta else ()
    xmats = list(action.xact) if action.xact else [_zero_matrix(n, m)] * theta
    if len(xmats) != theta:
        raise AlgebraError("one action matrix per skew-primitive required")

    # group relations on u's hold automatically for diagonal actions; the
    # skew-primitive/group compatibility is a character identity
    for k in range(theta):
        for i in range(n):
            for j in range(n):
                if xmats[k][i][j].is_zero:
                    continue
                if action.eig[j].rows != (action.eig[i] * chi_eff[k]).rows:
                    raise AlgebraError(
                        f"action violates the group commutation of x{k+1} "
                        f"(u{i+1} -> u{j+1} component)"
                    )

    def act_group(g: Exps):
        return tuple(
            tuple(
                action.eig[i].eval(g).as_rf() if i == j else RationalFunction.zero(m)
                for j in range(n)
            )
            for i in range(n)
        )

    # x-pair relations of the deformed Hopf algebra as operators on V
    for i in range(theta):
        for j in range(theta):
            if i >= j or d.same_component(i, j):
                continue
            lhs = _mat_compose(xmats[j], xmats[i])
            rhs = _mat_compose(xmats[i], xmats[j])
            q = chi_eff[j].eval(d.g[i]).as_rf()
            com = tuple(
                tuple(lhs[a][b] - q * rhs[a][b] for b in range(n)) for a in range(n)
            )
            lam = d.lam_at(i, j) * sigma.value(d.g[i], d.g[j])
            gmat = act_group(add_exps(d.g[i], d.g[j]))
            want = tuple(
                tuple(
                    lam * (gmat[a][b] - (1 if a == b else 0))
                    for b in range(n)
                )
                for a in range(n)
            )
            if not _mat_eq(com, want):
                raise AlgebraError(
                    f"action violates the x{i+1} x{j+1} relation on the "
                    "affine generators"
                )

    # Serre relations for higher-rank components, iterated braided adjoints
    for i in range(theta):
        for j in range(theta):
            if i == j or not d.same_component(i, j):
                continue
            power = 1 - d.cartan.a[i][j]
            mat = xmats[j]
            char = chi_eff[j]
            for _ in range(power):
                scal = char.eval(d.g[i]).as_rf()
                z_then_i = _mat_compose(mat, xmats[i])
                i_then_z = _mat_compose(xmats[i], mat)
                mat = tuple(
                    tuple(
                        z_then_i[a][b] - scal * i_then_z[a][b]
                        for b in range(n)
                    )
                    for a in range(n)
                )
                char = char * chi_eff[i]
            if any(not v.is_zero for row in mat for v in row):
                raise AlgebraError(
                    f"action violates the Serre relation of the pair ({i+1},{j+1})"
                )

    # module-algebra condition on the affine relations, degree 2
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(theta):
                cells: dict = {}

                def hit(a, b, c):
                    _acc(cells, (a, b), c)

                # x . (u_i u_j) - q x . (u_j u_i), expanded by the coproduct
                qij = aff.affine_q[i][j].as_rf()
                for t, c in enumerate(xmats[k][i]):
                    if not c.is_zero:
                        hit(t, j, c)
                gi = action.eig[i].eval(d.g[k]).as_rf()
                for t, c in enumerate(xmats[k][j]):
                    if not c.is_zero:
                        hit(i, t, gi * c)
                for t, c in enumerate(xmats[k][j]):
                    if not c.is_zero:
                        hit(t, i, -qij * c)
                gj = action.eig[j].eval(d.g[k]).as_rf()
                for t, c in enumerate(xmats[k][i]):
                    if not c.is_zero:
                        hit(j, t, -qij * gj * c)
                total = aff.zero_elem()
                for (a, b), c in cells.items():
                    total = total + (aff.ugen(a) * aff.ugen(b)).scale(c)
                if not total.is_zero:
                    raise AlgebraError(
                        f"action of x{k+1} does not preserve the affine relation "
                        f"u{i+1} u{j+1} = q u{j+1} u{i+1}"
                    )


def build_crossed(
    action: ActionData,
    h: Presentation,
    sigma: CocycleData | None = None,
    u_names=None,
    group_names=None,
) -> Presentation:
    """The crossed product A #_sigma H for H a bosonization or group algebra.

    The internal copy of H is carried with its multiplication twisted by the
    group cocycle: twisted group law, chi^sigma braidings, and relation
    constants lambda_ij sigma(g_i,g_j) (gbar_i gbar_j - 1).
    """
    if h.family not in ("bosonization", "group"):
        raise AlgebraError("the Hopf factor must be a bosonization or group algebra")
    if not h.sigma.is_trivial:
        raise AlgebraError("the Hopf factor must carry its untwisted group law")
    d = h.datum
    if d is None:
        raise AlgebraError("the Hopf factor needs its underlying datum")
    sigma = sigma if sigma is not None else CocycleData.zero(h.s, h.m)
    if action.aff.params != h.params:
        raise AlgebraError("parameter lists of the action and Hopf factor differ")
    _certify_action(h, sigma, action)

    chi_eff = chi_sigma(d, sigma) if d.theta else ()
    zero = RationalFunction.zero(d.m)
    xx_const: dict[tuple[int, int], dict[Exps, RationalFunction]] = {}
    for (i, j) in d.linkable_pairs():
        lam = d.lam_at(i, j)
        if lam == zero:
            continue
        c = lam * sigma.value(d.g[i], d.g[j])
        xx_const[(i, j)] = {add_exps(d.g[i], d.g[j]): c, zeros(d.s): -c}
    theta = d.theta
    xmats = tuple(action.xact) if action.xact else tuple(
        _zero_matrix(action.aff.nu, d.m) for _ in range(theta)
    )
    p = Presentation(
        family="crossed",
        params=h.params,
        s=h.s,
        nu=action.aff.nu,
        sigma=sigma,
        gvec=d.g,
        chi_eff=chi_eff,
        xx_const=xx_const,
        affine_q=action.aff.affine_q,
        eig=action.eig,
        xact=xmats,
        datum=d,
        no_normal_forms=h.no_normal_forms,
        group_names=group_names or h.group_names,
        u_names=u_names or action.aff.u_names,
        warnings=h.warnings + action.warnings,
    )
    certify(p)
    return p


# ---------------------------------------------------------------------------
# Certification.


def certify(p: Presentation, probes: int = 0, seed: int = 0) -> None:
    """Associativity probes over generator triples (the overlap check).

    With ``probes`` > 0, additionally check random words of length <= 6 by
    comparing two association orders.
    """
    atoms = p.atom_elements()
    if p.no_normal_forms:
        atoms_x = [a for a in atoms if any(any(k[2]) for k in a.terms)]
        atoms_gu = [a for a in atoms if not any(any(k[2]) for k in a.terms)]
        triples = [
            (a, b, c)
            for a in atoms_gu
            for b in atoms_gu + atoms_x
            for c in atoms_gu
        ] + [
            (a, b, c)
            for a in atoms_gu
            for b in atoms_gu
            for c in atoms_x
        ] + [
            (a, b, c)
            for a in atoms_x
            for b in atoms_gu
            for c in atoms_gu
        ]
    else:
        triples = [(a, b, c) for a in atoms for b in atoms for c in atoms]
    for a, b, c in triples:
        left = p.mul(p.mul(a, b), c)
        right = p.mul(a, p.mul(b, c))
        if left != right:
            raise AlgebraError(
                "associativity probe failed on a generator triple: "
                f"({a.render()})({b.render()})({c.render()})"
            )
    if probes:
        import random as _random

        rng = _random.Random(seed)
        pool = atoms if not p.no_normal_forms else [
            a for a in atoms if not any(any(k[2]) for k in a.terms)
        ]
        for _ in range(probes):
            length = rng.randint(3, 6)
            word = [rng.choice(pool) for _ in range(length)]
            split = rng.randint(1, length - 1)
            left = p.one()
            for w in word:
                left = p.mul(left, w)
            head = p.one()
            for w in word[:split]:
                head = p.mul(head, w)
            tail = p.one()
            for w in word[split:]:
                tail = p.mul(tail, w)
            if p.mul(head, tail) != left:
                raise AlgebraError("associativity probe failed on a random word")
    p.certified = True


# ---------------------------------------------------------------------------
# Graded endomorphisms.


@dataclass
class GradedEndomorphism:
    """A diagonal algebra-map candidate: scalars on generators, character on Gamma."""

    p: Presentation
    x_scalars: tuple[Monomial, ...]
    group_char: Character
    u_scalars: tuple[Monomial, ...] = ()
    x_perm: tuple[int, ...] | None = None
    label: str = ""

    def __post_init__(self):
        if len(self.x_scalars) != self.p.theta:
            raise AlgebraError("one scalar per skew-primitive required")
        if not self.u_scalars:
            self.u_scalars = tuple(Monomial.one(self.p.m) for _ in range(self.p.nu))
        if len(self.u_scalars) != self.p.nu:
            raise AlgebraError("one scalar per affine generator required")
        if self.group_char.s != self.p.s:
            raise AlgebraError("group character rank mismatch")
        if self.x_perm is None:
            self.x_perm = tuple(range(self.p.theta))

    @classmethod
    def identity(cls, p: Presentation, label: str = "identity") -> "GradedEndomorphism":
        return cls(
            p,
            tuple(Monomial.one(p.m) for _ in range(p.theta)),
            Character.trivial(p.s, p.m),
            label=label,
        )

    @property
    def is_diagonal_identity(self) -> bool:
        return (
            all(c.is_one for c in self.x_scalars)
            and all(c.is_one for c in self.u_scalars)
            and self.group_char.is_trivial
            and self.x_perm == tuple(range(self.p.theta))
        )

    def apply(self, e: AlgElement) -> AlgElement:
        if e.p is not self.p:
            raise AlgebraError("element belongs to a different presentation")
        identity_perm = self.x_perm == tuple(range(self.p.theta))
        out: dict = {}
        for (beta, g, alpha), c in e.terms.items():
            if not identity_perm and sum(1 for a in alpha if a) > 1:
                raise AlgebraError(
                    "a permuting map cannot be applied termwise to a "
                    "multi-variable skew-primitive word"
                )
            fac = self.group_char.eval(g) if any(g) else Monomial.one(self.p.m)
            for i, b in enumerate(beta):
                if b:
                    fac = fac * self.u_scalars[i] ** b
            alpha2 = [0] * self.p.theta
            for k, a in enumerate(alpha):
                if a:
                    fac = fac * self.x_scalars[k] ** a
                    alpha2[self.x_perm[k]] += a
            _acc(out, (beta, g, tuple(alpha2)), c * fac)
        return AlgElement(self.p, out)

    def compose(self, other: "GradedEndomorphism") -> "GradedEndomorphism":
        """self after other."""
        if self.p is not other.p:
            raise AlgebraError("endomorphisms on different presentations")
        perm = tuple(self.x_perm[k] for k in other.x_perm)
        xs = tuple(
            other.x_scalars[k] * self.x_scalars[other.x_perm[k]]
            for k in range(self.p.theta)
        )
        us = tuple(a * b for a, b in zip(self.u_scalars, other.u_scalars))
        return GradedEndomorphism(
            self.p,
            xs,
            self.group_char * other.group_char,
            us,
            perm,
            label=f"{self.label} after {other.label}".strip(),
        )

    def same_map(self, other: "GradedEndomorphism") -> bool:
        return (
            self.p is other.p
            and self.x_perm == other.x_perm
            and all(a == b for a, b in zip(self.x_scalars, other.x_scalars))
            and all(a == b for a, b in zip(self.u_scalars, other.u_scalars))
            and self.group_char.rows == other.group_char.rows
        )

    def describe(self) -> list[str]:
        out = []
        p = self.p
        for i in range(p.nu):
            out.append(f"{p.u_names[i]} -> {self.u_scalars[i].render(p.params)} {p.u_names[i]}")
        for j in range(p.s):
            val = Monomial(Fraction(1), self.group_char.rows[j]) if self.group_char.rows else Monomial.one(p.m)
            out.append(f"{p.group_names[j]} -> {val.render(p.params)} {p.group_names[j]}")
        for k in range(p.theta):
            out.append(
                f"{p.x_names[k]} -> {self.x_scalars[k].render(p.params)} "
                f"{p.x_names[self.x_perm[k]]}"
            )
        return out


def _relation_list(p: Presentation):
    """Defining relations as (name, [(coeff, word of atoms), ...]) with sum zero.

    Keeping the relation as a signed combination of words matters: applying a
    candidate map word by word and normalizing afterwards is how violations
    of the inhomogeneous relations become visible.
    """
    rels = []
    one = RationalFunction.one(p.m)
    for i in range(p.nu):
        for j in range(i + 1, p.nu):
            rels.append(
                (
                    f"u{i+1} u{j+1}",
                    [
                        (one, [("u", i), ("u", j)]),
                        (-p.affine_q[i][j].as_rf(), [("u", j), ("u", i)]),
                    ],
                )
            )
    for jb in range(p.s):
        g = _unit(jb, p.s)
        for i in range(p.nu):
            rels.append(
                (
                    f"{p.group_names[jb]} u{i+1}",
                    [
                        (one, [("g", g), ("u", i)]),
                        (-p.eig[i].eval(g).as_rf(), [("u", i), ("g", g)]),
                    ],
                )
            )
        for k in range(p.theta):
            rels.append(
                (
                    f"{p.group_names[jb]} x{k+1}",
                    [
                        (one, [("g", g), ("x", k)]),
                        (-p.chi_eff[k].eval(g).as_rf(), [("x", k), ("g", g)]),
                    ],
                )
            )
    for k in range(p.theta):
        for i in range(p.nu):
            words = [
                (one, [("x", k), ("u", i)]),
                (-p.eig[i].eval(p.gvec[k]).as_rf(), [("u", i), ("x", k)]),
            ]
            if p.xact:
                for j, c in enumerate(p.xact[k][i]):
                    if not c.is_zero:
                        words.append((-c, [("u", j)]))
            rels.append((f"x{k+1} u{i+1}", words))
    if not p.no_normal_forms:
        for i in range(p.theta):
            for j in range(i + 1, p.theta):
                words = [
                    (one, [("x", i), ("x", j)]),
                    (-p.q_eff(i, j).as_rf(), [("x", j), ("x", i)]),
                ]
                for mshift, c in p.xx_const.get((i, j), {}).items():
                    words.append((-c, [("g", mshift)]))
                rels.append((f"x{i+1} x{j+1}", words))
    return rels


def certify_endomorphism(p: Presentation, phi: GradedEndomorphism):
    """Check that phi preserves every defining relation of the presentation.

    Each relation is a signed sum of words that vanishes; the images of the
    words under phi are multiplied out by the engine and the sum must still
    vanish.  Returns (True, None) or (False, name of the first failing
    relation).  With ``no_normal_forms`` the x-pair relations are checked
    structurally: a diagonal map preserves them iff its scalars match the
    relation constants through the group character.
    """
    def image_of_atom(atom: Atom) -> AlgElement:
        kind, payload = atom
        if kind == "g":
            return p.group_elem(payload).scale(phi.group_char.eval(payload))
        if kind == "u":
            return p.ugen(payload).scale(phi.u_scalars[payload])
        return p.xgen(phi.x_perm[payload]).scale(phi.x_scalars[payload])

    for name, words in _relation_list(p):
        total = p.zero_elem()
        for coeff, atoms in words:
            img = p.one()
            for atom in atoms:
                img = p.mul(img, image_of_atom(atom))
            total = total + img.scale(coeff)
        if not total.is_zero:
            return False, name
    if p.no_normal_forms:
        perm = phi.x_perm
        for i in range(p.theta):
            for j in range(i + 1, p.theta):
                same = p.datum is not None and p.datum.same_component(i, j)
                qij = p.q_eff(i, j)
                qpm = p.chi_eff[perm[j]].eval(p.gvec[perm[i]])
                if same:
                    # homogeneous relations: any diagonal scaling preserves them
                    if perm[i] != i or perm[j] != j:
                        return False, f"x{i+1} x{j+1}"
                    continue
                if qij != qpm:
                    return False, f"x{i+1} x{j+1}"
                cij = phi.x_scalars[i] * phi.x_scalars[j]
                for mshift in p.xx_const.get((i, j), {}):
                    if phi.group_char.eval(mshift) != cij:
                        return False, f"x{i+1} x{j+1}"
    return True, None


def inner_conjugation(p: Presentation, h) -> GradedEndomorphism:
    """Conjugation a -> hbar a hbar^{-1}, read off as generator scalars.

    When element arithmetic is available the scalars are literally computed
    by normal forms; the character formulas are asserted against them.
    """
    h = tuple(int(x) for x in h)
    rows = tuple(p.sigma.ratio_exps(_unit(j, p.s), h) for j in range(p.s))
    char = Character(tuple(neg_exps(r) for r in rows))  # ratio(h, g) = ratio(g, h)^-1
    x_scal = tuple(p.chi_eff[k].eval(h) for k in range(p.theta))
    u_scal = tuple(
        p.eig[i].eval(h) if p.s else Monomial.one(p.m) for i in range(p.nu)
    )
    phi = GradedEndomorphism(p, x_scal, char, u_scal, label=f"conjugation by {h}")
    hbar = p.group_elem(h)
    hbar_inv = p.group_elem(neg_exps(h)).scale(p.sigma.value(h, neg_exps(h)).inv())
    assert (hbar * hbar_inv) == p.one()
    for gen, scal in (
        [(p.ugen(i), u_scal[i].as_rf()) for i in range(p.nu)]
        + [(p.xgen(k), x_scal[k].as_rf()) for k in range(p.theta)]
        + [
            (p.group_elem(_unit(j, p.s)), char.eval(_unit(j, p.s)).as_rf())
            for j in range(p.s)
        ]
    ):
        assert (hbar * gen) * hbar_inv == gen.scale(scal)
    return phi


# ---------------------------------------------------------------------------
# The twisted algebras H(sigma, tau) on span{gbar, gbar x_k} and the
# generalized antipodes.


SpanKey = tuple[Exps, int | None]


def _coerce_hcocycle(d: GenericDatum, c) -> HCocycle:
    if isinstance(c, HCocycle):
        return c
    if isinstance(c, CocycleData):
        return HCocycle(c, d.g, {})
    if c is None:
        return HCocycle(CocycleData.zero(d.s, d.m), d.g, {})
    raise AlgebraError("expected a cocycle on the group or the Hopf algebra")


def span_group(d: GenericDatum, g, coeff=None) -> dict:
    c = coeff if coeff is not None else RationalFunction.one(d.m)
    if isinstance(c, Monomial):
        c = c.as_rf()
    return {(tuple(g), None): c}


def span_x(d: GenericDatum, k: int, g=None, coeff=None) -> dict:
    c = coeff if coeff is not None else RationalFunction.one(d.m)
    if isinstance(c, Monomial):
        c = c.as_rf()
    gv = tuple(g) if g is not None else zeros(d.s)
    return {(gv, k): c}


def span_equal(a: dict, b: dict) -> bool:
    keys = set(a) | set(b)
    for key in keys:
        va = a.get(key)
        vb = b.get(key)
        if va is None:
            if not vb.is_zero:
                return False
        elif vb is None:
            if not va.is_zero:
                return False
        elif va != vb:
            return False
    return True


def cogroupoid_mul(d: GenericDatum, sigma, tau, e1: dict, e2: dict) -> dict:
    """The product of H(sigma,tau) on the span of gbar and gbar x_k."""
    sigma = _coerce_hcocycle(d, sigma)
    tau = _coerce_hcocycle(d, tau)
    out: dict = {}
    for (g1, k1), c1 in e1.items():
        for (g2, k2), c2 in e2.items():
            c = c1 * c2
            if k1 is None and k2 is None:
                val = c * sigma.gg(g1, g2) * tau.gg_inv(g1, g2)
                _acc(out, (add_exps(g1, g2), None), val)
            elif k1 is None:
                gj = d.g[k2]
                val = c * sigma.gg(g1, add_exps(g2, gj)) * tau.gg_inv(g1, g2)
                _acc(out, (add_exps(g1, g2), k2), val)
            elif k2 is None:
                gj = d.g[k1]
                val = (
                    c
                    * sigma.gg(add_exps(g1, gj), g2)
                    * d.chi[k1].eval(g2).inv()
                    * tau.gg_inv(g1, g2)
                )
                _acc(out, (add_exps(g1, g2), k1), val)
            else:
                raise AlgebraError(
                    "the product of two skew-primitive terms leaves the span"
                )
    return {k: v for k, v in out.items() if not v.is_zero}


def generalized_antipode(d: GenericDatum, sigma, tau, e: dict) -> dict:
    """S_{sigma,tau}: H(sigma,tau) -> H(tau,sigma) on the span."""
    sigma = _coerce_hcocycle(d, sigma)
    tau = _coerce_hcocycle(d, tau)
    out: dict = {}
    for (g, k), c in e.items():
        ng = neg_exps(g)
        if k is None:
            val = c * sigma.gg(g, ng) * tau.gg_inv(ng, g)
            _acc(out, (ng, None), val)
        else:
            gk = d.g[k]
            tot = add_exps(g, gk)
            val = (
                -c
                * sigma.gg(tot, neg_exps(tot))
                * tau.gg_inv(ng, g)
                * d.chi[k].eval(g)
            )
            _acc(out, (neg_exps(tot), k), val)
    return {k: v for k, v in out.items() if not v.is_zero}


def generalized_antipode_inv(d: GenericDatum, sigma, tau, e: dict) -> dict:
    """S^{-1}_{sigma,tau}: H(tau,sigma) -> H(sigma,tau) on the span."""
    sigma = _coerce_hcocycle(d, sigma)
    tau = _coerce_hcocycle(d, tau)
    out: dict = {}
    for (g, k), c in e.items():
        ng = neg_exps(g)
        if k is None:
            val = c * sigma.gg_inv(g, ng) * tau.gg(ng, g)
            _acc(out, (ng, None), val)
        else:
            gk = d.g[k]
            tot = add_exps(g, gk)
            val = (
                -c
                * sigma.gg_inv(g, ng)
                * tau.gg(neg_exps(tot), tot)
                * d.chi[k].eval(add_exps(gk, g))
            )
            _acc(out, (neg_exps(tot), k), val)
    return {k: v for k, v in out.items() if not v.is_zero}
