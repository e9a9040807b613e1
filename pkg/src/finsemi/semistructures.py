"""Semiunital semirings and semicounital semicorings in ``(A,A)``-bisemimodules.

Multiplications and comultiplications live on computed tensor carriers. The
laws are evaluated on pure tensors wherever both sides are additive, so the
triple tensor is never materialized for associativity; coassociativity
compares vectors in the group presentation of the triple tensor instead.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from .congruence import cancellation_witness, cancellative_reflection, is_cancellative
from .core import (
    FiniteSemiring,
    FiniteSemimodule,
    LawReport,
    StructureMap,
    compose,
    enumerate_maps,
    regular_module,
    restrict_scalars,
    validate_map,
    zero_module,
)
from .errors import IllDefined, InvalidMorphism, KindMismatch, NotCancellative, NotUnital
from .tensor import (
    DEFAULT_CAP,
    TensorProduct,
    induced_map,
    map_out_of_tensor,
    presentation,
    tensor_product,
)


def _linear_report(f: StructureMap, sides, name: str) -> LawReport:
    """Additivity and compatibility with the listed actions."""
    src, tgt = f.source, f.target
    t = f.table
    for a, b in itertools.product(range(src.size), repeat=2):
        if t[src.add[a][b]] != tgt.add[t[a]][t[b]]:
            return LawReport.fail(f"{name}-additive", (a, b), f"{name} does not preserve {a}+{b}")
    if t[src.zero] != tgt.zero:
        return LawReport.fail(f"{name}-additive", (src.zero,), f"{name} does not preserve zero")
    for side in sides:
        for s, x in itertools.product(range(src.base(side).size), range(src.size)):
            if t[src.act(side, s, x)] != tgt.act(side, s, t[x]):
                return LawReport.fail(f"{name}-{side}-linear", (s, x), f"{name} is not {side}-linear")
    return LawReport.ok()


def _firm_report(x: FiniteSemimodule, law: str) -> LawReport:
    witness = cancellation_witness(x)
    if witness is not None:
        return LawReport.fail(law, witness, "carrier is not cancellative, so ω is not bijective")
    return LawReport.ok()


def factor_or_lift(t: TensorProduct, target: FiniteSemimodule, value) -> StructureMap:
    """The linear map out of ``t`` given on pure tensors by ``value``.

    A bilinear map into a non-cancellative target may only factor into its
    reflection; the factored map is then lifted through least class members
    and kept only if the lift is linear.
    """
    try:
        return map_out_of_tensor(t, target, value)
    except IllDefined:
        reflection = cancellative_reflection(target)
        proj = reflection.projection.table
        least: dict[int, int] = {}
        for v, k in enumerate(proj):
            least.setdefault(k, v)
        reflected = map_out_of_tensor(t, reflection.reflected, lambda x, y: proj[value(x, y)])
        lifted = StructureMap("linear-map", t.carrier, target, tuple(least[k] for k in reflected.table))
        report = validate_map(lifted)
        if not report:
            raise IllDefined("the pairing has no linear lift out of the tensor", witness=report.witness)
        return lifted


# ---------------------------------------------------------------------------
# Semirings and their modules

@dataclass(frozen=True)
class SemiunitalSemiring:
    """``μ: 𝒜⊠𝒜 -> 𝒜`` and ``η: A -> 𝒜`` on an ``(A,A)``-bisemimodule ``𝒜``."""

    A: FiniteSemiring
    carrier: FiniteSemimodule
    mu: StructureMap
    eta: StructureMap

    @property
    def square(self) -> TensorProduct:
        return tensor_product(self.carrier, self.carrier)

    def product(self, a: int, b: int) -> int:
        return self.mu.table[self.square.tau(a, b)]

    @classmethod
    def from_pairs(cls, a: FiniteSemiring, carrier: FiniteSemimodule, pair_table, eta_table,
                   cap: int = DEFAULT_CAP) -> "SemiunitalSemiring":
        """Factor a bilinear balanced pair table through ``τ``."""
        sq = tensor_product(carrier, carrier, cap)
        mu = factor_or_lift(sq, carrier, lambda x, y: pair_table[x][y])
        eta = StructureMap("linear-map", regular_module(a), carrier, tuple(eta_table))
        return cls(a, carrier, mu, eta)


def semiring_algebra(kappa: StructureMap) -> SemiunitalSemiring:
    """A semiring ``R`` over ``A`` along ``κ: A -> R``, acting by ``κ`` on both sides."""
    r = kappa.target
    reg = regular_module(r)
    carrier = restrict_scalars(restrict_scalars(reg, kappa, "left"), kappa, "right")
    eta = StructureMap("linear-map", regular_module(kappa.source), carrier, kappa.table)
    return SemiunitalSemiring.from_pairs(kappa.source, carrier, r.mul, eta.table)


def unit_semiring(a: FiniteSemiring) -> SemiunitalSemiring:
    """``A`` itself, with its multiplication and ``η = id``."""
    from .core import identity_map

    return semiring_algebra(identity_map(a, "semiring-map"))


def check_semiunital_semiring(x: SemiunitalSemiring, strict: bool = False) -> LawReport:
    """Associativity and both unit diagrams through ``𝔠(𝒜)``.

    With ``strict`` the carrier must also be firm (a unital semiring).
    """
    c, a = x.carrier, x.A
    sq = x.square
    if x.mu.source != sq.carrier or x.mu.target != c:
        raise KindMismatch("μ must go from 𝒜⊠𝒜 to 𝒜")
    if x.eta.source != regular_module(a) or x.eta.target != c:
        raise KindMismatch("η must go from A to 𝒜")
    for report in (_linear_report(x.mu, ("left", "right"), "mu"),
                   _linear_report(x.eta, ("left", "right"), "eta")):
        if not report:
            return report
    mul = x.product
    for p, q, r in itertools.product(range(c.size), repeat=3):
        if mul(mul(p, q), r) != mul(p, mul(q, r)):
            return LawReport.fail("associative", (p, q, r), f"({p}{q}){r} differs from {p}({q}{r})")
    proj = cancellative_reflection(c).projection.table
    eta = x.eta.table
    for s, p in itertools.product(range(a.size), range(c.size)):
        if proj[mul(eta[s], p)] != proj[c.left_action[s][p]]:
            return LawReport.fail("unit-left", (s, p), "𝔠(η(s)·a) differs from 𝔠(s·a)")
    for s, p in itertools.product(range(a.size), range(c.size)):
        if proj[mul(p, eta[s])] != proj[c.right_action[p][s]]:
            return LawReport.fail("unit-right", (s, p), "𝔠(a·η(s)) differs from 𝔠(a·s)")
    if strict:
        return _firm_report(c, "unital")
    return LawReport.ok()


@dataclass(frozen=True)
class SemiunitaryModule:
    """A right ``A``-semimodule ``M`` with ``ϱ: M⊠𝒜 -> M``."""

    parent: SemiunitalSemiring
    M: FiniteSemimodule
    action: StructureMap

    @property
    def pairing(self) -> TensorProduct:
        return tensor_product(self.M, self.parent.carrier)

    def act(self, m: int, a: int) -> int:
        return self.action.table[self.pairing.tau(m, a)]


def regular_semimodule(x: SemiunitalSemiring) -> SemiunitaryModule:
    return SemiunitaryModule(x, x.carrier, x.mu)


def check_semiunitary_module(m: SemiunitaryModule, strict: bool = False) -> LawReport:
    """Associativity of ``ϱ`` and the unit diagram ``𝔠_M∘ϱ∘(M⊠η) = ϑ^r_M``."""
    x, mod = m.parent, m.M
    if m.action.source != m.pairing.carrier or m.action.target != mod:
        raise KindMismatch("action must go from M⊠𝒜 to M")
    report = _linear_report(m.action, ("right",), "action")
    if not report:
        return report
    act, mul = m.act, x.product
    c = x.carrier
    for p, a, b in itertools.product(range(mod.size), range(c.size), range(c.size)):
        if act(act(p, a), b) != act(p, mul(a, b)):
            return LawReport.fail("action-associative", (p, a, b), f"({p}·{a})·{b} differs from {p}·({a}{b})")
    proj = cancellative_reflection(mod).projection.table
    eta = x.eta.table
    for p, s in itertools.product(range(mod.size), range(x.A.size)):
        if proj[act(p, eta[s])] != proj[mod.right_action[p][s]]:
            return LawReport.fail("action-unit", (p, s), "𝔠(m·η(s)) differs from 𝔠(m·s)")
    if strict:
        return _firm_report(mod, "unitary")
    return LawReport.ok()


# ---------------------------------------------------------------------------
# Semicorings and their comodules

@dataclass(frozen=True)
class SemicounitalSemicoring:
    """``Δ: 𝒞 -> 𝒞⊠𝒞`` and ``ε: 𝒞 -> A`` on an ``(A,A)``-bisemimodule ``𝒞``."""

    A: FiniteSemiring
    carrier: FiniteSemimodule
    Delta: StructureMap
    epsilon: StructureMap

    @property
    def square(self) -> TensorProduct:
        return tensor_product(self.carrier, self.carrier)


def unit_semicoring(a: FiniteSemiring) -> SemicounitalSemicoring:
    """``A`` with ``Δ(s) = s⊠1`` and ``ε = id``."""
    reg = regular_module(a)
    sq = tensor_product(reg, reg)
    delta = StructureMap("linear-map", reg, sq.carrier, tuple(sq.tau(s, a.one) for s in range(a.size)))
    return SemicounitalSemicoring(a, reg, delta, StructureMap("linear-map", reg, reg, tuple(range(a.size))))


def _triple_vectors(left_pairs: TensorProduct, right: FiniteSemimodule):
    """Vector arithmetic in ``(X⊠C)⊠C`` without building its carrier."""
    p = presentation(left_pairs.carrier, right)

    def total(terms):
        v = p.zero_vector()
        for a, b in terms:
            v = p.add_vectors(v, p.vector(a, b))
        return v

    return p, total


def _coassociativity(x: FiniteSemimodule, coaction: StructureMap, xc: TensorProduct,
                     coring: SemicounitalSemicoring, law: str) -> LawReport:
    """``(ϱ⊠𝒞)∘ϱ`` against ``γ^{-1}∘(X⊠Δ)∘ϱ`` in ``(X⊠𝒞)⊠𝒞``."""
    sq = coring.square
    _, total = _triple_vectors(xc, coring.carrier)
    for v in range(x.size):
        terms = xc.expand(coaction.table[v])
        lhs = total((coaction.table[p], c) for p, c in terms)
        rhs = total((xc.tau(p, d1), d2) for p, c in terms for d1, d2 in sq.expand(coring.Delta.table[c]))
        if lhs != rhs:
            return LawReport.fail(law, (v,), f"the two ways to comultiply twice differ on {v}")
    return LawReport.ok()


def check_semicounital_semicoring(x: SemicounitalSemicoring, strict: bool = False) -> LawReport:
    """Coassociativity and both counit identities through ``𝔠(𝒞)``.

    With ``strict`` the carrier must also be firm (a counital semicoring).
    """
    c, a = x.carrier, x.A
    sq = x.square
    if x.Delta.source != c or x.Delta.target != sq.carrier:
        raise KindMismatch("Δ must go from 𝒞 to 𝒞⊠𝒞")
    if x.epsilon.source != c or x.epsilon.target != regular_module(a):
        raise KindMismatch("ε must go from 𝒞 to A")
    for report in (_linear_report(x.Delta, ("left", "right"), "delta"),
                   _linear_report(x.epsilon, ("left", "right"), "epsilon")):
        if not report:
            return report
    report = _coassociativity(c, x.Delta, sq, x, "coassociative")
    if not report:
        return report
    reflection = cancellative_reflection(c)
    proj, radd = reflection.projection.table, reflection.reflected.carrier
    eps = x.epsilon.table
    for v in range(c.size):
        terms = sq.expand(x.Delta.table[v])
        left = radd.sum(proj[c.left_action[eps[p]][q]] for p, q in terms)
        if left != proj[v]:
            return LawReport.fail("counit-left", (v,), f"𝔠(Σ ε(c1)c2) differs from 𝔠({v})")
        right = radd.sum(proj[c.right_action[p][eps[q]]] for p, q in terms)
        if right != proj[v]:
            return LawReport.fail("counit-right", (v,), f"𝔠(Σ c1 ε(c2)) differs from 𝔠({v})")
    if strict:
        return _firm_report(c, "counital")
    return LawReport.ok()


@dataclass(frozen=True)
class SemicounitaryComodule:
    """A right ``A``-semimodule ``M`` with ``ϱ: M -> M⊠𝒞``."""

    parent: SemicounitalSemicoring
    M: FiniteSemimodule
    coaction: StructureMap

    @property
    def pairing(self) -> TensorProduct:
        return tensor_product(self.M, self.parent.carrier)


def regular_semicomodule(x: SemicounitalSemicoring) -> SemicounitaryComodule:
    return SemicounitaryComodule(x, x.carrier, x.Delta)


def check_semicounitary_comodule(m: SemicounitaryComodule, strict: bool = False) -> LawReport:
    """Coassociativity of ``ϱ`` and ``𝔠(Σ m0·ε(m1)) = 𝔠(m)``."""
    mod, x = m.M, m.parent
    xc = m.pairing
    if m.coaction.source != mod or m.coaction.target != xc.carrier:
        raise KindMismatch("coaction must go from M to M⊠𝒞")
    report = _linear_report(m.coaction, ("right",), "coaction")
    if not report:
        return report
    report = _coassociativity(mod, m.coaction, xc, x, "coaction-coassociative")
    if not report:
        return report
    reflection = cancellative_reflection(mod)
    proj, radd = reflection.projection.table, reflection.reflected.carrier
    eps = x.epsilon.table
    for v in range(mod.size):
        total = radd.sum(proj[mod.right_action[p][eps[q]]] for p, q in xc.expand(m.coaction.table[v]))
        if total != proj[v]:
            return LawReport.fail("coaction-counit", (v,), f"𝔠(Σ m0 ε(m1)) differs from 𝔠({v})")
    if strict:
        return _firm_report(mod, "counitary")
    return LawReport.ok()


# ---------------------------------------------------------------------------
# Convolution

@dataclass(frozen=True)
class ConvolutionMonoid:
    """Bilinear maps ``𝒞 -> 𝒜`` under ``f∗g = μ∘(f⊠g)∘Δ`` with unit ``η∘ε``."""

    carrier: tuple[tuple[int, ...], ...]
    table: tuple[tuple[int, ...], ...]
    unit: int
    report: LawReport

    @property
    def size(self) -> int:
        return len(self.carrier)

    @cached_property
    def index(self) -> dict[tuple[int, ...], int]:
        return {f: i for i, f in enumerate(self.carrier)}


def _monoid_report(table, unit: int) -> LawReport:
    n = len(table)
    for i in range(n):
        if table[unit][i] != i or table[i][unit] != i:
            return LawReport.fail("convolution-unit", (i,), f"the unit is not neutral for map {i}")
    for i, j, k in itertools.product(range(n), repeat=3):
        if table[table[i][j]][k] != table[i][table[j][k]]:
            return LawReport.fail("convolution-associative", (i, j, k), "∗ is not associative")
    return LawReport.ok()


def convolution_monoid(coring: SemicounitalSemicoring, ring: SemiunitalSemiring,
                       cap: int = DEFAULT_CAP, hom_cap: int = 4096) -> ConvolutionMonoid:
    if coring.A != ring.A:
        raise KindMismatch("semicoring and semiring live over different bases")
    if not is_cancellative(ring.carrier):
        raise NotUnital("convolution needs a unital semiring (a firm carrier)",
                        witness=cancellation_witness(ring.carrier))
    maps = enumerate_maps(coring.carrier, ring.carrier, "linear-map", cap=hom_cap)
    tables = tuple(f.table for f in maps)
    index = {t: i for i, t in enumerate(tables)}
    src_sq = tensor_product(coring.carrier, coring.carrier, cap)
    tgt_sq = tensor_product(ring.carrier, ring.carrier, cap)
    rows = []
    for f in maps:
        row = []
        for g in maps:
            conv = compose(ring.mu, induced_map(f, g, src_sq, tgt_sq), coring.Delta)
            if conv.table not in index:
                raise IllDefined("convolution left the hom set")
            row.append(index[conv.table])
        rows.append(tuple(row))
    unit_table = compose(ring.eta, coring.epsilon).table
    unit = index[unit_table]
    table = tuple(rows)
    return ConvolutionMonoid(tables, table, unit, _monoid_report(table, unit))


@dataclass(frozen=True)
class ConvolutionMap:
    """A map between convolution monoids, given on indices."""

    source: ConvolutionMonoid
    target: ConvolutionMonoid
    table: tuple[int, ...]

    def check(self) -> LawReport:
        s, t = self.source, self.target
        if self.table[s.unit] != t.unit:
            return LawReport.fail("preserve-unit", (s.unit,), "the unit is not preserved")
        for i, j in itertools.product(range(s.size), repeat=2):
            if self.table[s.table[i][j]] != t.table[self.table[i]][self.table[j]]:
                return LawReport.fail("preserve-convolution", (i, j), "∗ is not preserved")
        return LawReport.ok()


def check_semicoring_morphism(phi: StructureMap, source: SemicounitalSemicoring,
                              target: SemicounitalSemicoring) -> LawReport:
    lhs = compose(induced_map(phi, phi, source.square, target.square), source.Delta)
    if lhs.table != compose(target.Delta, phi).table:
        return LawReport.fail("preserve-delta", (), "(φ⊠φ)∘Δ differs from Δ'∘φ")
    if compose(target.epsilon, phi).table != source.epsilon.table:
        return LawReport.fail("preserve-epsilon", (), "ε'∘φ differs from ε")
    return LawReport.ok()


def check_semiring_morphism(psi: StructureMap, source: SemiunitalSemiring,
                            target: SemiunitalSemiring) -> LawReport:
    if compose(psi, source.mu).table != compose(target.mu, induced_map(psi, psi, source.square, target.square)).table:
        return LawReport.fail("preserve-mu", (), "ψ∘μ differs from μ'∘(ψ⊠ψ)")
    if compose(psi, source.eta).table != target.eta.table:
        return LawReport.fail("preserve-eta", (), "ψ∘η differs from η'")
    return LawReport.ok()


def convolution_functors(phi: StructureMap, coring_source: SemicounitalSemicoring,
                         coring_target: SemicounitalSemicoring, psi: StructureMap,
                         ring_source: SemiunitalSemiring, ring_target: SemiunitalSemiring,
                         cap: int = DEFAULT_CAP):
    """``f ↦ f∘φ`` on ``Hom(𝒟,𝒜)`` and ``g ↦ ψ∘g`` on ``Hom(𝒞,𝒜)``.

    ``φ: 𝒞 -> 𝒟`` is a semicoring morphism and ``ψ: 𝒜 -> ℬ`` a morphism of
    unital semirings. Returns both maps and a combined report.
    """
    for f, report in ((phi, check_semicoring_morphism(phi, coring_source, coring_target)),
                      (psi, check_semiring_morphism(psi, ring_source, ring_target))):
        if not validate_map(f) or not report:
            raise InvalidMorphism(report.detail or "not a linear map", witness=report.witness)
    conv_d_a = convolution_monoid(coring_target, ring_source, cap)
    conv_c_a = convolution_monoid(coring_source, ring_source, cap)
    conv_c_b = convolution_monoid(coring_source, ring_target, cap)
    pre = ConvolutionMap(conv_d_a, conv_c_a, tuple(
        conv_c_a.index[tuple(f[phi.table[x]] for x in range(phi.source.size))] for f in conv_d_a.carrier))
    post = ConvolutionMap(conv_c_a, conv_c_b, tuple(
        conv_c_b.index[tuple(psi.table[v] for v in g)] for g in conv_c_a.carrier))
    report = pre.check().prefixed("precompose-")
    if report:
        report = post.check().prefixed("postcompose-")
    return pre, post, report


# ---------------------------------------------------------------------------
# Sweedler semicorings

def sweedler_semicoring(kappa: StructureMap, cap: int = DEFAULT_CAP) -> SemicounitalSemicoring:
    """``A⊠_B A`` for ``κ: B -> A`` with ``Δ(a⊠ã) = (a⊠1)⊠(1⊠ã)`` and ``ε(a⊠ã) = aã``.

    When ``A`` is not cancellative the multiplication only factors into
    ``𝔠(A)``; ``ε`` is then the lift through least class members, and it is
    validated before use.
    """
    if kappa.kind != "semiring-map":
        raise KindMismatch("the Sweedler construction needs a semiring map")
    report = validate_map(kappa)
    if not report:
        raise InvalidMorphism(report.detail, witness=report.witness)
    a = kappa.target
    reg = regular_module(a)
    left_factor = restrict_scalars(reg, kappa, "right")
    right_factor = restrict_scalars(reg, kappa, "left")
    t = tensor_product(left_factor, right_factor, cap)
    c = t.carrier
    sq = tensor_product(c, c, cap)
    delta = map_out_of_tensor(t, sq.carrier, lambda x, y: sq.tau(t.tau(x, a.one), t.tau(a.one, y)))
    epsilon = factor_or_lift(t, reg, lambda x, y: a.mul[x][y])
    return SemicounitalSemicoring(a, c, delta, epsilon)


# ---------------------------------------------------------------------------
# Enumeration

@dataclass(frozen=True)
class SearchSpace:
    first: int
    second: int

    @property
    def total(self) -> int:
        return self.first * self.second


def _require_cancellative(a: FiniteSemiring, carrier: FiniteSemimodule) -> None:
    if not is_cancellative(a.additive):
        raise NotCancellative("the base semiring must be cancellative",
                              witness=cancellation_witness(a.additive))
    if not is_cancellative(carrier):
        raise NotCancellative("the carrier must be cancellative", witness=cancellation_witness(carrier))


def structure_candidates(a: FiniteSemiring, carrier: FiniteSemimodule, kind: str,
                         cap: int = DEFAULT_CAP, hom_cap: int = 4096):
    """The two hom sets searched by ``enumerate_structures``."""
    reg = regular_module(a)
    sq = tensor_product(carrier, carrier, cap)
    if kind == "semiring":
        return (enumerate_maps(sq.carrier, carrier, "linear-map", cap=hom_cap),
                enumerate_maps(reg, carrier, "linear-map", cap=hom_cap))
    if kind == "semicoring":
        return (enumerate_maps(carrier, sq.carrier, "linear-map", cap=hom_cap),
                enumerate_maps(carrier, reg, "linear-map", cap=hom_cap))
    raise KindMismatch(f"kind must be semiring or semicoring, not {kind!r}")


def search_space(a: FiniteSemiring, carrier: FiniteSemimodule, kind: str, cap: int = DEFAULT_CAP) -> SearchSpace:
    first, second = structure_candidates(a, carrier, kind, cap)
    return SearchSpace(len(first), len(second))


def enumerate_structures(a: FiniteSemiring, carrier: FiniteSemimodule, kind: str,
                         cap: int = DEFAULT_CAP, hom_cap: int = 4096) -> list:
    """Every semiring or semicoring structure on ``carrier``, in enumeration order."""
    _require_cancellative(a, carrier)
    first, second = structure_candidates(a, carrier, kind, cap, hom_cap)
    found = []
    for f, g in itertools.product(first, second):
        if kind == "semiring":
            candidate = SemiunitalSemiring(a, carrier, f, g)
            ok = check_semiunital_semiring(candidate)
        else:
            candidate = SemicounitalSemicoring(a, carrier, f, g)
            ok = check_semicounital_semicoring(candidate)
        if ok:
            found.append(candidate)
    return found


def zero_semiring(a: FiniteSemiring) -> SemiunitalSemiring:
    z = zero_module(a)
    sq = tensor_product(z, z)
    return SemiunitalSemiring(a, z, StructureMap("linear-map", sq.carrier, z, (0,) * sq.size),
                              StructureMap("linear-map", regular_module(a), z, (0,) * a.size))
