"""Endofunctors, natural transformations and J-(co)monads as finite data.

A functor is a pair of callables with per-instance caches; a transformation
is a component callable. Laws are checked on the objects of an explicit
``ObjectUniverse`` and naturality against its listed morphisms, so
"natural" always means natural for the morphisms that were supplied.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable

from .congruence import cancellative_reflection
from .core import (
    FiniteSemiring,
    FiniteSemimodule,
    LawReport,
    StructureMap,
    compose,
    hom_space,
    identity_map,
    regular_module,
    zero_module,
)
from .errors import InvalidSemimonoid, KindMismatch, NotFirm, ShapeMismatch, FormulaDisagreement
from .semistructures import (
    SemicounitalSemicoring,
    SemiunitalSemiring,
    check_semicounital_semicoring,
    check_semiunital_semiring,
)
from .tensor import DEFAULT_CAP, associator, induced_map, map_out_of_tensor, tensor_product
from .variety import (
    ObjectUniverse,
    ambient_of,
    default_universe,
    left_whisker,
    reflect_map,
    right_unit_inverse,
    right_whisker,
    semiunit_components,
    unit_inverse,
)

Obj = FiniteSemimodule


@dataclass(frozen=True, eq=False)
class EndofunctorData:
    """Object and morphism assignments; ``factor``/``side`` record ``−⊠F`` or ``F⊠−``."""

    name: str
    on_object: Callable[[Obj], Obj]
    on_morphism: Callable[[StructureMap], StructureMap]
    factor: Obj | None = None
    side: str | None = None
    _objects: dict = field(default_factory=dict, repr=False)
    _maps: dict = field(default_factory=dict, repr=False)

    def obj(self, x: Obj) -> Obj:
        if x not in self._objects:
            self._objects[x] = self.on_object(x)
        return self._objects[x]

    def map(self, f: StructureMap) -> StructureMap:
        if f not in self._maps:
            image = self.on_morphism(f)
            if image.source != self.obj(f.source) or image.target != self.obj(f.target):
                raise ShapeMismatch(f"{self.name} sends a morphism outside its object images")
            self._maps[f] = image
        return self._maps[f]


@dataclass(frozen=True, eq=False)
class NatTransData:
    """Components ``source(X) -> target(X)``."""

    name: str
    source: EndofunctorData
    target: EndofunctorData
    component_fn: Callable[[Obj], StructureMap]
    _components: dict = field(default_factory=dict, repr=False)

    def __call__(self, x: Obj) -> StructureMap:
        return self.component(x)

    def component(self, x: Obj) -> StructureMap:
        if x not in self._components:
            c = self.component_fn(x)
            if c.source != self.source.obj(x) or c.target != self.target.obj(x):
                raise ShapeMismatch(f"component of {self.name} has the wrong source or target")
            self._components[x] = c
        return self._components[x]


# ---------------------------------------------------------------------------
# Stock functors and transformations

def identity_functor() -> EndofunctorData:
    return EndofunctorData("id", lambda x: x, lambda f: f)


def tensor_functor(factor: Obj, side: str = "right", cap: int = DEFAULT_CAP) -> EndofunctorData:
    """``−⊠F`` (side ``right``) or ``F⊠−`` (side ``left``)."""
    if side == "right":
        return EndofunctorData(f"−⊠{factor.name}", lambda x: tensor_product(x, factor, cap).carrier,
                               lambda f: right_whisker(f, factor, cap), factor, side)
    if side == "left":
        return EndofunctorData(f"{factor.name}⊠−", lambda x: tensor_product(factor, x, cap).carrier,
                               lambda f: left_whisker(factor, f, cap), factor, side)
    raise KindMismatch(f"side must be left or right, not {side!r}")


def unit_functor(a: FiniteSemiring, cap: int = DEFAULT_CAP) -> EndofunctorData:
    """``J = A⊠−``."""
    return tensor_functor(regular_module(a), "left", cap)


def reflection_functor() -> EndofunctorData:
    """``𝔠`` on objects and maps."""
    return EndofunctorData("c", lambda x: cancellative_reflection(x).reflected, reflect_map)


_COMPOSITES: dict = {}


def compose_functors(outer: EndofunctorData, inner: EndofunctorData) -> EndofunctorData:
    """``outer∘inner``; the same pair always yields the same functor object."""
    key = (outer, inner)
    if key not in _COMPOSITES:
        _COMPOSITES[key] = EndofunctorData(f"{outer.name}∘{inner.name}", lambda x: outer.obj(inner.obj(x)),
                                           lambda f: outer.map(inner.map(f)))
    return _COMPOSITES[key]


def identity_transformation(f: EndofunctorData) -> NatTransData:
    return NatTransData(f"id_{f.name}", f, f, lambda x: identity_map(f.obj(x), "linear-map"))


def semiunit_transformation(a: FiniteSemiring, cap: int = DEFAULT_CAP,
                            functor: EndofunctorData | None = None) -> NatTransData:
    """``ω: 𝕀 -> A⊠−``."""
    functor = functor or unit_functor(a, cap)
    return NatTransData("omega", identity_functor(), functor,
                        lambda x: semiunit_components(x, cap).omega)


def reflection_unit(functor: EndofunctorData | None = None) -> NatTransData:
    """``𝕀 -> 𝔠`` with the quotient maps as components."""
    functor = functor or reflection_functor()
    return NatTransData("c", identity_functor(), functor,
                        lambda x: cancellative_reflection(x).projection)


def vertical(delta: NatTransData, psi: NatTransData) -> NatTransData:
    """``δ∘ψ`` for ``ψ: F -> G`` and ``δ: G -> H``."""
    if delta.source is not psi.target:
        raise ShapeMismatch("vertical composite needs matching middle functor")
    return NatTransData(f"{delta.name}∘{psi.name}", psi.source, delta.target,
                        lambda x: compose(delta(x), psi(x)))


def _first_difference(f: StructureMap, g: StructureMap) -> int | None:
    if f.source != g.source or f.target != g.target:
        raise ShapeMismatch("compared maps have different sources or targets")
    for x, (a, b) in enumerate(zip(f.table, g.table)):
        if a != b:
            return x
    return None


def godement(phi: NatTransData, psi: NatTransData, universe: ObjectUniverse | None = None) -> NatTransData:
    """Horizontal composite ``φψ: F'F -> G'G`` of ``ψ: F -> G`` and ``φ: F' -> G'``.

    Every component is computed both as ``φ_{G X}∘F'(ψ_X)`` and as
    ``G'(ψ_X)∘φ_{F X}``; a disagreement raises ``FormulaDisagreement``.
    """
    outer_src, outer_tgt = phi.source, phi.target
    inner_src, inner_tgt = psi.source, psi.target

    def component(x):
        first = compose(phi(inner_tgt.obj(x)), outer_src.map(psi(x)))
        second = compose(outer_tgt.map(psi(x)), phi(inner_src.obj(x)))
        diff = _first_difference(first, second)
        if diff is not None:
            raise FormulaDisagreement(f"Godement formulas differ at element {diff}", witness=(diff,))
        return first

    result = NatTransData(f"{phi.name}{psi.name}", compose_functors(outer_src, inner_src),
                          compose_functors(outer_tgt, inner_tgt), component)
    for x in (universe.objects if universe is not None else ()):
        result.component(x)
    return result


def whisker_left(f: EndofunctorData, psi: NatTransData) -> NatTransData:
    """``Fψ`` with components ``F(ψ_X)``."""
    return NatTransData(f"{f.name}{psi.name}", compose_functors(f, psi.source),
                        compose_functors(f, psi.target), lambda x: f.map(psi(x)))


def whisker_right(psi: NatTransData, f: EndofunctorData) -> NatTransData:
    """``ψF`` with components ``ψ_{F X}``."""
    return NatTransData(f"{psi.name}{f.name}", compose_functors(psi.source, f),
                        compose_functors(psi.target, f), lambda x: psi(f.obj(x)))


def check_functor(f: EndofunctorData, universe: ObjectUniverse) -> LawReport:
    for k, x in enumerate(universe.objects):
        diff = _first_difference(f.map(identity_map(x, "linear-map")), identity_map(f.obj(x), "linear-map"))
        if diff is not None:
            return LawReport.fail("functor-identity", (k, diff), f"{f.name} does not preserve an identity")
    maps = universe.all_morphisms
    for (i, g), (j, h) in itertools.product(enumerate(maps), repeat=2):
        if g.target != h.source:
            continue
        diff = _first_difference(f.map(compose(h, g)), compose(f.map(h), f.map(g)))
        if diff is not None:
            return LawReport.fail("functor-composition", (i, j, diff), f"{f.name} does not preserve a composite")
    return LawReport.ok()


def check_natural(t: NatTransData, universe: ObjectUniverse) -> LawReport:
    for k, f in enumerate(universe.all_morphisms):
        diff = _first_difference(compose(t.target.map(f), t(f.source)), compose(t(f.target), t.source.map(f)))
        if diff is not None:
            return LawReport.fail(f"natural-{t.name}", (k, diff), f"{t.name} is not natural for morphism {k}")
    return LawReport.ok()


def check_interchange(theta: NatTransData, phi: NatTransData, delta: NatTransData, psi: NatTransData,
                      universe: ObjectUniverse) -> LawReport:
    """``(θ∘φ)(δ∘ψ) = (θδ)∘(φψ)`` for ``ψ: F->G``, ``δ: G->H``, ``φ: F'->G'``, ``θ: G'->H'``."""
    lhs = godement(vertical(theta, phi), vertical(delta, psi))
    rhs = vertical(godement(theta, delta), godement(phi, psi))
    for k, x in enumerate(universe.objects):
        diff = _first_difference(lhs(x), rhs(x))
        if diff is not None:
            return LawReport.fail("interchange", (k, diff), f"interchange law fails on object {k}")
    return LawReport.ok()


# ---------------------------------------------------------------------------
# J-monads and J-comonads

@dataclass(frozen=True, eq=False)
class JMonadData:
    M: EndofunctorData
    mu: NatTransData
    omega: NatTransData
    nu: NatTransData
    J: EndofunctorData


@dataclass(frozen=True, eq=False)
class JComonadData:
    C: EndofunctorData
    Delta: NatTransData
    omega: NatTransData
    theta: NatTransData
    J: EndofunctorData


def _first_report(*reports: LawReport | None) -> LawReport | None:
    return next((r for r in reports if r is not None), None)


def _identity_check(law: str, k: int, lhs: StructureMap) -> LawReport | None:
    diff = _first_difference(lhs, identity_map(lhs.source, "linear-map"))
    if diff is not None:
        return LawReport.fail(law, (k, diff), f"{law} fails on object {k} at element {diff}")
    return None


def _equal_check(law: str, k: int, lhs: StructureMap, rhs: StructureMap) -> LawReport | None:
    diff = _first_difference(lhs, rhs)
    if diff is not None:
        return LawReport.fail(law, (k, diff), f"{law} fails on object {k} at element {diff}")
    return None


def check_jmonad(d: JMonadData, universe: ObjectUniverse) -> LawReport:
    """``μ∘Mμ = μ∘μM``, ``ωM∘μ∘νM = id`` and ``Mω∘μ∘Mν = id``, then naturality.

    The two unit laws are read as cycles starting at ``JM`` and ``MJ``.
    """
    m = d.M
    for k, x in enumerate(universe.objects):
        mx = m.obj(x)
        failure = _first_report(
            _equal_check("associative", k, compose(d.mu(x), m.map(d.mu(x))), compose(d.mu(x), d.mu(mx))),
            _identity_check("unit-left", k, compose(d.omega(mx), d.mu(x), d.nu(mx))),
            _identity_check("unit-right", k, compose(m.map(d.omega(x)), d.mu(x), m.map(d.nu(x)))),
        )
        if failure is not None:
            return failure
    for t in (d.mu, d.nu, d.omega):
        report = check_natural(t, universe)
        if not report:
            return report
    return LawReport.ok(f"{len(universe.objects)} objects")


def check_jcomonad(d: JComonadData, universe: ObjectUniverse) -> LawReport:
    """``ΔC∘Δ = CΔ∘Δ``, ``θC∘Δ = ωC`` and ``Cθ∘Δ = Cω``, then naturality."""
    c = d.C
    for k, x in enumerate(universe.objects):
        cx = c.obj(x)
        failure = _first_report(
            _equal_check("coassociative", k, compose(d.Delta(cx), d.Delta(x)), compose(c.map(d.Delta(x)), d.Delta(x))),
            _equal_check("counit-left", k, compose(d.theta(cx), d.Delta(x)), d.omega(cx)),
            _equal_check("counit-right", k, compose(c.map(d.theta(x)), d.Delta(x)), c.map(d.omega(x))),
        )
        if failure is not None:
            return failure
    for t in (d.Delta, d.theta, d.omega):
        report = check_natural(t, universe)
        if not report:
            return report
    return LawReport.ok(f"{len(universe.objects)} objects")


@dataclass(frozen=True)
class JActData:
    """``action: M(X) -> X`` (kind ``module``) or ``X -> C(X)`` (kind ``comodule``)."""

    obj: Obj
    action: StructureMap
    kind: str = "module"


def check_jact(act: JActData, parent: JMonadData | JComonadData) -> LawReport:
    x, rho = act.obj, act.action
    if act.kind == "module":
        if not isinstance(parent, JMonadData):
            raise ShapeMismatch("a module needs a J-monad")
        failure = _first_report(
            _equal_check("act-associative", 0, compose(rho, parent.M.map(rho)), compose(rho, parent.mu(x))),
            _identity_check("act-unit", 0, compose(parent.omega(x), rho, parent.nu(x))),
        )
    elif act.kind == "comodule":
        if not isinstance(parent, JComonadData):
            raise ShapeMismatch("a comodule needs a J-comonad")
        failure = _first_report(
            _equal_check("coact-coassociative", 0, compose(parent.C.map(rho), rho), compose(parent.Delta(x), rho)),
            _equal_check("coact-counit", 0, compose(parent.theta(x), rho), parent.omega(x)),
        )
    else:
        raise KindMismatch(f"act kind must be module or comodule, not {act.kind!r}")
    return failure if failure is not None else LawReport.ok()


def free_jmodule(d: JMonadData, x: Obj) -> JActData:
    return JActData(d.M.obj(x), d.mu(x), "module")


def cofree_jcomodule(d: JComonadData, x: Obj) -> JActData:
    return JActData(d.C.obj(x), d.Delta(x), "comodule")


# ---------------------------------------------------------------------------
# From semimonoids and semicomonoids, and back

def semimonoid_to_jmonad(s: SemiunitalSemiring, side: str = "right", validate: bool = True,
                         cap: int = DEFAULT_CAP) -> JMonadData:
    """``−⊠𝒜`` (or ``𝒜⊠−``) with ``J = A⊠−``.

    Right: ``μ_X = (X⊠μ)∘γ_{X,𝒜,𝒜}`` and ``ν_X = (X⊠η)∘ℓ_X``.
    Left: ``μ_X = (μ⊠X)∘γ^{-1}_{𝒜,𝒜,X}`` and ``ν_X = η⊠X``.
    """
    if validate:
        report = check_semiunital_semiring(s)
        if not report:
            raise InvalidSemimonoid(f"semiring fails {report.law_id}", witness=report.witness)
    a, alg = s.A, s.carrier
    m = tensor_functor(alg, side, cap)
    j = unit_functor(a, cap)
    omega = semiunit_transformation(a, cap, j)
    mm = compose_functors(m, m)
    if side == "right":
        mu = NatTransData("mu", mm, m, lambda x: compose(
            left_whisker(x, s.mu, cap), associator(x, alg, alg, cap).forward))
        nu = NatTransData("nu", j, m, lambda x: compose(
            left_whisker(x, s.eta, cap), semiunit_components(x, cap).ell.forward))
    else:
        mu = NatTransData("mu", mm, m, lambda x: compose(
            right_whisker(s.mu, x, cap), associator(alg, alg, x, cap).backward))
        nu = NatTransData("nu", j, m, lambda x: right_whisker(s.eta, x, cap))
    return JMonadData(m, mu, omega, nu, j)


def _as_linear(f: StructureMap) -> StructureMap:
    return StructureMap("linear-map", f.source, f.target, f.table)


def _require_firm(x: Obj, what: str) -> None:
    if cancellative_reflection(x).reflected.size != x.size:
        raise NotFirm(f"{what} is not firm")


def jmonad_to_semimonoid(d: JMonadData, cap: int = DEFAULT_CAP) -> SemiunitalSemiring:
    """``μ = λ_𝒜∘μ_I∘(ω_𝒜⊠𝒜)`` and ``η = λ_𝒜∘ν_I∘ω_I`` (mirrored for ``𝒜⊠−``)."""
    alg, side = d.M.factor, d.M.side
    if alg is None:
        raise ShapeMismatch("the monad does not record its tensor factor")
    a = ambient_of(alg)
    unit = regular_module(a)
    _require_firm(unit, "the unit object")
    _require_firm(alg, "the semiring carrier")
    if side == "right":
        lam = unit_inverse(alg, cap)
        mu = compose(lam, d.mu(unit), right_whisker(d.omega(alg), alg, cap))
    else:
        lam = right_unit_inverse(alg, cap)
        su = semiunit_components(alg, cap)
        mu = compose(lam, d.mu(unit), left_whisker(alg, compose(su.ell.forward, su.omega), cap))
    eta = compose(lam, d.nu(unit), d.omega(unit))
    return SemiunitalSemiring(a, alg, _as_linear(mu), _as_linear(eta))


def semicomonoid_to_jcomonad(c: SemicounitalSemicoring, side: str = "right", validate: bool = True,
                             cap: int = DEFAULT_CAP) -> JComonadData:
    """``−⊠𝒞`` (or ``𝒞⊠−``) with ``J = A⊠−``.

    Right: ``Δ_X = γ^{-1}_{X,𝒞,𝒞}∘(X⊠Δ)`` and ``θ_X = ℘_X∘(X⊠ε)``.
    Left: ``Δ_X = γ_{𝒞,𝒞,X}∘(Δ⊠X)`` and ``θ_X = ε⊠X``.
    """
    if validate:
        report = check_semicounital_semicoring(c)
        if not report:
            raise InvalidSemimonoid(f"semicoring fails {report.law_id}", witness=report.witness)
    a, co = c.A, c.carrier
    cf = tensor_functor(co, side, cap)
    j = unit_functor(a, cap)
    omega = semiunit_transformation(a, cap, j)
    cc = compose_functors(cf, cf)
    if side == "right":
        delta = NatTransData("Delta", cf, cc, lambda x: compose(
            associator(x, co, co, cap).backward, left_whisker(x, c.Delta, cap)))
        theta = NatTransData("theta", cf, j, lambda x: compose(
            semiunit_components(x, cap).ell.backward, left_whisker(x, c.epsilon, cap)))
    else:
        delta = NatTransData("Delta", cf, cc, lambda x: compose(
            associator(co, co, x, cap).forward, right_whisker(c.Delta, x, cap)))
        theta = NatTransData("theta", cf, j, lambda x: right_whisker(c.epsilon, x, cap))
    return JComonadData(cf, delta, omega, theta, j)


def jcomonad_to_semicomonoid(d: JComonadData, cap: int = DEFAULT_CAP) -> SemicounitalSemicoring:
    """``Δ = (λ_𝒞⊠𝒞)∘Δ_I∘ω_𝒞`` and ``ε = λ_A∘θ_I∘ω_𝒞`` (mirrored for ``𝒞⊠−``)."""
    co, side = d.C.factor, d.C.side
    if co is None:
        raise ShapeMismatch("the comonad does not record its tensor factor")
    a = ambient_of(co)
    unit = regular_module(a)
    _require_firm(unit, "the unit object")
    _require_firm(co, "the semicoring carrier")
    if side == "right":
        into = d.omega(co)
        delta = compose(right_whisker(unit_inverse(co, cap), co, cap), d.Delta(unit), into)
    else:
        su = semiunit_components(co, cap)
        into = compose(su.ell.forward, su.omega)
        delta = compose(left_whisker(co, right_unit_inverse(co, cap), cap), d.Delta(unit), into)
    epsilon = compose(unit_inverse(unit, cap), d.theta(unit), into)
    return SemicounitalSemicoring(a, co, _as_linear(delta), _as_linear(epsilon))


def _table_report(pairs) -> LawReport:
    for name, lhs, rhs in pairs:
        diff = _first_difference(lhs, rhs)
        if diff is not None:
            return LawReport.fail(f"roundtrip-{name}", (diff,), f"{name} changes at element {diff}")
    return LawReport.ok()


def semiring_roundtrip(s: SemiunitalSemiring, side: str = "right", cap: int = DEFAULT_CAP) -> LawReport:
    """Extract after induce returns the same ``μ`` and ``η``."""
    back = jmonad_to_semimonoid(semimonoid_to_jmonad(s, side, cap=cap), cap)
    return _table_report((("mu", back.mu, s.mu), ("eta", back.eta, s.eta)))


def jmonad_roundtrip(d: JMonadData, universe: ObjectUniverse, cap: int = DEFAULT_CAP) -> LawReport:
    """Induce after extract reproduces ``μ`` and ``ν`` on the universe objects."""
    again = semimonoid_to_jmonad(jmonad_to_semimonoid(d, cap), d.M.side, validate=False, cap=cap)
    pairs = []
    for x in universe.objects:
        pairs += [("mu", again.mu(x), d.mu(x)), ("nu", again.nu(x), d.nu(x))]
    return _table_report(pairs)


def semicoring_roundtrip(c: SemicounitalSemicoring, side: str = "right", cap: int = DEFAULT_CAP) -> LawReport:
    back = jcomonad_to_semicomonoid(semicomonoid_to_jcomonad(c, side, cap=cap), cap)
    return _table_report((("Delta", back.Delta, c.Delta), ("epsilon", back.epsilon, c.epsilon)))


def jcomonad_roundtrip(d: JComonadData, universe: ObjectUniverse, cap: int = DEFAULT_CAP) -> LawReport:
    again = semicomonoid_to_jcomonad(jcomonad_to_semicomonoid(d, cap), d.C.side, validate=False, cap=cap)
    pairs = []
    for x in universe.objects:
        pairs += [("Delta", again.Delta(x), d.Delta(x)), ("theta", again.theta(x), d.theta(x))]
    return _table_report(pairs)


UNIVERSE_LEVELS = ("full", "carrier", "base")


def structure_universe(carrier: Obj, extra_morphisms=(), hom_cap: int = 256,
                       level: str = "full") -> ObjectUniverse:
    """``{A, 0}`` plus ``𝒜`` (level ``carrier``) and ``𝒜⊠𝒜`` (level ``full``).

    Morphisms are hom generators between the objects and whichever of
    ``extra_morphisms`` stay inside the universe.
    """
    if level not in UNIVERSE_LEVELS:
        raise KindMismatch(f"universe level must be one of {UNIVERSE_LEVELS}")
    a = ambient_of(carrier)
    extra = []
    if level in ("full", "carrier"):
        extra.append(carrier)
    if level == "full":
        extra.append(tensor_product(carrier, carrier).carrier)
    u = default_universe(a, extra, (), hom_cap)
    inside = tuple(f for f in extra_morphisms if f.source in u.objects and f.target in u.objects)
    return ObjectUniverse(u.objects, inside + tuple(f for f in u.morphisms if f not in inside))


# ---------------------------------------------------------------------------
# The monad of an adjunction

@dataclass(frozen=True, eq=False)
class AdjunctionMonad:
    """``RL`` for ``L = −⊠N`` and ``R = Hom_T(N, −)`` as J-monad data with ``J = 𝕀``."""

    N: Obj
    data: JMonadData
    universe: ObjectUniverse


def induced_monad_from_adjunction(n: Obj, universe: ObjectUniverse | None = None,
                                  cap: int = DEFAULT_CAP, hom_cap: int = 4096):
    """Build ``RL`` on the reflected universe and check the classical monad laws.

    ``η_X(x) = (n ↦ x⊠n)`` and ``μ_X = R(ε_{LX})`` with ``ε`` the evaluation
    ``Hom_T(N, Y)⊠N -> Y``. Returns ``(AdjunctionMonad, LawReport)``.
    """
    s = n.require("left")
    n.require("right")
    if universe is None:
        universe = ObjectUniverse((zero_module(s, ("right",)), regular_module(s, ("right",))))
    reflect = reflection_functor()
    image = ObjectUniverse(tuple(reflect.obj(x) for x in universe.objects),
                           tuple(reflect.map(f) for f in universe.morphisms))
    homs: dict[Obj, object] = {}

    def hom_of(x):
        if x not in homs:
            homs[x] = hom_space(n, tensor_product(x, n, cap).carrier, sides=("right",), cap=hom_cap)
        return homs[x]

    def rl_map(f):
        src, tgt = hom_of(f.source), hom_of(f.target)
        whiskered = induced_map(f, identity_map(n, "linear-map"), cap=cap)
        table = tuple(tgt.index[tuple(whiskered.table[v] for v in phi)] for phi in src.maps)
        return StructureMap("linear-map", src.module, tgt.module, table)

    rl = EndofunctorData(f"Hom({n.name},−⊠{n.name})", lambda x: hom_of(x).module, rl_map)
    ident = identity_functor()

    def unit_component(x):
        h, t = hom_of(x), tensor_product(x, n, cap)
        table = tuple(h.index[tuple(t.tau(v, y) for y in range(n.size))] for v in range(x.size))
        return StructureMap("linear-map", x, h.module, table)

    def mult_component(x):
        h = hom_of(x)
        outer = hom_of(h.module)
        pairing = tensor_product(h.module, n, cap)
        evaluation = map_out_of_tensor(pairing, tensor_product(x, n, cap).carrier,
                                       lambda phi, y: h.maps[phi][y])
        table = tuple(h.index[tuple(evaluation.table[v] for v in psi)] for psi in outer.maps)
        return StructureMap("linear-map", outer.module, h.module, table)

    eta = NatTransData("eta", ident, rl, unit_component)
    mu = NatTransData("mu", compose_functors(rl, rl), rl, mult_component)
    data = JMonadData(rl, mu, identity_transformation(ident), eta, ident)
    return AdjunctionMonad(n, data, image), check_jmonad(data, image)
