"""The semiunital structure on finite ``(A,A)``-bisemimodules under ``⊠``.

``ω_X: X -> A⊠X`` is the cancellative reflection followed by the inverse of
``ϑ^l``, and ``ℓ_X: A⊠X -> X⊠A`` passes through ``𝔠(X)`` using both ``ϑ``
isomorphisms. Objects and morphisms are explicit finite lists; naturality is
checked against the listed morphisms only.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .congruence import cancellative_reflection
from .core import (
    FiniteSemiring,
    FiniteSemimodule,
    LawReport,
    StructureMap,
    compose,
    enumerate_maps,
    hom_space,
    identity_map,
    linear_map_from_generator,
    regular_module,
    validate_map,
    zero_module,
)
from .errors import KindMismatch, SizeCapExceeded
from .tensor import (
    DEFAULT_CAP,
    IsoPair,
    associator,
    induced_map,
    map_out_of_tensor,
    tensor_product,
    theta_iso,
)


def ambient_of(x: FiniteSemimodule) -> FiniteSemiring:
    if x.base_left is None or x.base_right is None or x.base_left != x.base_right:
        raise KindMismatch("expected an (A,A)-bisemimodule")
    return x.base_left


@dataclass(frozen=True)
class SemiunitData:
    """``ω_X`` together with ``ℓ_X`` (forward) and ``℘_X`` (its inverse)."""

    obj: FiniteSemimodule
    omega: StructureMap
    ell: IsoPair

    @property
    def ambient(self) -> FiniteSemiring:
        return ambient_of(self.obj)

    @property
    def wp(self) -> IsoPair:
        return self.ell.inverse()


def semiunit_components(x: FiniteSemimodule, cap: int = DEFAULT_CAP) -> SemiunitData:
    ambient_of(x)
    left = theta_iso(x, "left", cap)
    right = theta_iso(x, "right", cap)
    projection = cancellative_reflection(x).projection
    omega = compose(left.backward, projection)
    ell = IsoPair(compose(right.backward, left.forward), compose(left.backward, right.forward))
    return SemiunitData(x, omega, ell)


def is_firm(x: FiniteSemimodule, cap: int = DEFAULT_CAP) -> bool:
    return semiunit_components(x, cap).omega.is_bijective()


def unit_inverse(x: FiniteSemimodule, cap: int = DEFAULT_CAP) -> StructureMap:
    """``λ_X = ω_X^{-1}: A⊠X -> X`` for firm ``X``."""
    from .errors import NotFirm

    omega = semiunit_components(x, cap).omega
    if not omega.is_bijective():
        raise NotFirm(f"{x.name or 'object'} is not firm")
    inverse = [0] * x.size
    for a, b in enumerate(omega.table):
        inverse[b] = a
    return StructureMap("linear-map", omega.target, x, inverse)


@dataclass(frozen=True)
class ObjectUniverse:
    """Finite lists of objects and morphisms; identities are implied."""

    objects: tuple[FiniteSemimodule, ...]
    morphisms: tuple[StructureMap, ...] = ()

    @property
    def all_morphisms(self) -> tuple[StructureMap, ...]:
        idents = tuple(identity_map(x, "linear-map") for x in self.objects)
        return idents + tuple(f for f in self.morphisms if f not in idents)

    def validate(self) -> LawReport:
        for k, f in enumerate(self.morphisms):
            report = validate_map(f)
            if not report:
                return LawReport.fail(f"morphism-{report.law_id}", (k,) + report.witness, report.detail)
        return LawReport.ok()


def hom_generators(x: FiniteSemimodule, y: FiniteSemimodule, cap: int = 256) -> list[StructureMap] | None:
    """A generating set of the hom monoid ``Hom(x, y)``, or None past ``cap``."""
    try:
        maps = enumerate_maps(x, y, "linear-map", cap=cap)
    except SizeCapExceeded:
        return None
    add = y.add
    reached = {tuple([y.zero] * x.size)}
    chosen = []
    for f in maps:
        if f.table in reached:
            continue
        chosen.append(f)
        frontier = list(reached)
        while frontier:
            fresh = []
            for g in frontier:
                for h in chosen:
                    s = tuple(add[a][b] for a, b in zip(g, h.table))
                    if s not in reached:
                        reached.add(s)
                        fresh.append(s)
            frontier = fresh
    return chosen


def default_universe(ambient: FiniteSemiring, extra: Sequence[FiniteSemimodule] = (),
                     extra_morphisms: Sequence[StructureMap] = (), hom_cap: int = 256) -> ObjectUniverse:
    """``A``, the zero module and ``extra``, with generators of every small hom set."""
    objects: list[FiniteSemimodule] = []
    for x in (regular_module(ambient), zero_module(ambient), *extra):
        if x not in objects:
            objects.append(x)
    morphisms: list[StructureMap] = list(extra_morphisms)
    for x, y in itertools.product(objects, repeat=2):
        gens = hom_generators(x, y, hom_cap)
        for f in gens or ():
            if f not in morphisms:
                morphisms.append(f)
    return ObjectUniverse(tuple(objects), tuple(morphisms))


def left_whisker(x: FiniteSemimodule, f: StructureMap, cap: int = DEFAULT_CAP) -> StructureMap:
    """``X ⊠ f``."""
    return induced_map(identity_map(x, "linear-map"), f, cap=cap)


def right_whisker(f: StructureMap, y: FiniteSemimodule, cap: int = DEFAULT_CAP) -> StructureMap:
    """``f ⊠ Y``."""
    return induced_map(f, identity_map(y, "linear-map"), cap=cap)


def _first_difference(f: StructureMap, g: StructureMap) -> int | None:
    for x, (a, b) in enumerate(zip(f.table, g.table)):
        if a != b:
            return x
    return None


def coherence_check(universe: ObjectUniverse, ambient: FiniteSemiring | None = None,
                    semiunit: Callable[[FiniteSemimodule], SemiunitData] | None = None,
                    cap: int = DEFAULT_CAP) -> LawReport:
    """Hexagon for ``ℓ`` and ``γ``, the ``ω`` square, ``ℓ_A = ℘_A`` and naturality.

    Witnesses are ``(index of X, index of Y, element)`` for the two-object
    diagrams and ``(morphism index, element)`` for naturality.
    """
    objs = list(universe.objects)
    if not objs:
        return LawReport.ok("empty universe")
    ambient = ambient or ambient_of(objs[0])
    unit = regular_module(ambient)
    semiunit = semiunit or (lambda x: semiunit_components(x, cap))
    cache: dict[FiniteSemimodule, SemiunitData] = {}

    def su(x):
        if x not in cache:
            cache[x] = semiunit(x)
        return cache[x]

    for k, x in enumerate(objs):
        report = su(x).ell.verify()
        if not report:
            return LawReport.fail("ell-invertible", (k,) + report.witness, report.detail)
    unit_data = su(unit)
    diff = _first_difference(unit_data.ell.forward, unit_data.ell.backward)
    if diff is not None:
        return LawReport.fail("ell-unit-symmetric", (diff,), "ℓ on the unit differs from ℘")

    for (i, x), (j, y) in itertools.product(enumerate(objs), repeat=2):
        xy = tensor_product(x, y, cap).carrier
        ax = tensor_product(unit, x, cap).carrier
        xa = tensor_product(x, unit, cap).carrier
        ya = tensor_product(y, unit, cap).carrier
        ay = tensor_product(unit, y, cap).carrier
        lhs = compose(associator(x, y, unit, cap).forward,
                      su(xy).ell.forward,
                      associator(unit, x, y, cap).forward)
        rhs = compose(left_whisker(x, su(y).ell.forward, cap),
                      associator(x, unit, y, cap).forward,
                      right_whisker(su(x).ell.forward, y, cap))
        diff = _first_difference(lhs, rhs)
        if diff is not None:
            return LawReport.fail("hexagon", (i, j, diff), f"hexagon differs on element {diff}")

        gamma_axy = associator(unit, x, y, cap).forward
        via_left = compose(gamma_axy, right_whisker(su(x).omega, y, cap))
        via_right = compose(gamma_axy,
                            right_whisker(su(x).wp.forward, y, cap),
                            associator(x, unit, y, cap).backward,
                            left_whisker(x, su(y).omega, cap))
        direct = su(xy).omega
        for name, other in (("omega-square-left", via_left), ("omega-square-right", via_right)):
            diff = _first_difference(direct, other)
            if diff is not None:
                return LawReport.fail(name, (i, j, diff), f"ω on X⊠Y differs on element {diff}")
        del ax, xa, ya, ay

    for k, f in enumerate(universe.all_morphisms):
        x, y = f.source, f.target
        lhs = compose(su(y).omega, f)
        rhs = compose(left_whisker(unit, f, cap), su(x).omega)
        diff = _first_difference(lhs, rhs)
        if diff is not None:
            return LawReport.fail("omega-natural", (k, diff), f"ω not natural for morphism {k}")
        lhs = compose(right_whisker(f, unit, cap), su(x).ell.forward)
        rhs = compose(su(y).ell.forward, left_whisker(unit, f, cap))
        diff = _first_difference(lhs, rhs)
        if diff is not None:
            return LawReport.fail("ell-natural", (k, diff), f"ℓ not natural for morphism {k}")
    return LawReport.ok(f"{len(objs)} objects, {len(universe.all_morphisms)} morphisms")


def pentagon_check(w: FiniteSemimodule, x: FiniteSemimodule, y: FiniteSemimodule,
                   z: FiniteSemimodule, cap: int = DEFAULT_CAP) -> LawReport:
    """Both reassociations ``((W⊠X)⊠Y)⊠Z -> W⊠(X⊠(Y⊠Z))`` agree."""
    wx = tensor_product(w, x, cap).carrier
    xy = tensor_product(x, y, cap).carrier
    yz = tensor_product(y, z, cap).carrier
    direct = compose(associator(w, x, yz, cap).forward, associator(wx, y, z, cap).forward)
    stepped = compose(left_whisker(w, associator(x, y, z, cap).forward, cap),
                      associator(w, xy, z, cap).forward,
                      right_whisker(associator(w, x, y, cap).forward, z, cap))
    diff = _first_difference(direct, stepped)
    if diff is not None:
        return LawReport.fail("pentagon", (diff,), f"reassociations differ on element {diff}")
    return LawReport.ok()


def right_unit_inverse(x: FiniteSemimodule, cap: int = DEFAULT_CAP) -> StructureMap:
    """``ρ_X: X⊠A -> X`` for firm ``X``, through ``ϑ^r``."""
    from .errors import NotFirm

    reflection = cancellative_reflection(x)
    if reflection.reflected.size != x.size:
        raise NotFirm(f"{x.name or 'object'} is not firm")
    back = [0] * x.size
    for a, k in enumerate(reflection.projection.table):
        back[k] = a
    forward = theta_iso(x, "right", cap).forward
    return StructureMap("linear-map", forward.source, x, tuple(back[k] for k in forward.table))


def monoidal_unit_check(x: FiniteSemimodule, y: FiniteSemimodule, cap: int = DEFAULT_CAP) -> LawReport:
    """Triangle ``(X⊠λ_Y)∘γ_{X,A,Y} = ρ_X⊠Y`` for firm ``X`` and ``Y``."""
    unit = regular_module(ambient_of(x))
    lhs = compose(left_whisker(x, unit_inverse(y, cap), cap), associator(x, unit, y, cap).forward)
    rhs = right_whisker(right_unit_inverse(x, cap), y, cap)
    diff = _first_difference(lhs, rhs)
    if diff is not None:
        return LawReport.fail("unit-triangle", (diff,), f"triangle differs on element {diff}")
    return LawReport.ok()


# ---------------------------------------------------------------------------
# Duals

@dataclass(frozen=True)
class DualityCandidate:
    """``υ: A -> (A⊠V)⊠V*`` and ``ϖ: (A⊠V*)⊠V -> A``."""

    V: FiniteSemimodule
    dual: FiniteSemimodule
    upsilon: StructureMap
    varpi: StructureMap

    @property
    def ambient(self) -> FiniteSemiring:
        return ambient_of(self.V)


def free_duality_candidate(s: FiniteSemiring, rank: int, cap: int = DEFAULT_CAP) -> DualityCandidate:
    """``V = V* = s^rank`` with coevaluation ``Σ e_i ⊗ e_i`` and the dot product."""
    from .core import power_module

    v = power_module(s, rank)
    unit = regular_module(s)
    basis = [s.one * s.size ** i for i in range(rank)]
    av = tensor_product(unit, v, cap)
    upper = tensor_product(av.carrier, v, cap)
    coeval = upper.carrier.carrier.sum(upper.tau(av.tau(s.one, e), e) for e in basis)
    upsilon = linear_map_from_generator(unit, upper.carrier, coeval, "left")

    def digits(x):
        return [(x // s.size ** i) % s.size for i in range(rank)]

    def pair(phi, x):
        return s.additive.sum(s.mul[a][b] for a, b in zip(digits(phi), digits(x)))

    avd = tensor_product(unit, v, cap)
    lower = tensor_product(avd.carrier, v, cap)
    varpi = map_out_of_tensor(
        lower, unit,
        lambda t, x: s.additive.sum(s.mul[a][pair(phi, x)] for a, phi in avd.expand(t)))
    return DualityCandidate(v, v, upsilon, varpi)


def _zigzags(c: DualityCandidate, cap: int) -> LawReport:
    a = regular_module(c.ambient)
    v, w = c.V, c.dual
    va = tensor_product(v, a, cap).carrier
    av = tensor_product(a, v, cap).carrier
    wv = tensor_product(w, v, cap).carrier
    ell_v = semiunit_components(v, cap).ell
    ell_w = semiunit_components(w, cap).ell

    # (V⊠ϖ)∘reassociate∘((ℓ_V⊠V*)⊠V)∘(υ⊠V) against ℓ_V
    step1 = right_whisker(c.upsilon, v, cap)
    step2 = right_whisker(right_whisker(ell_v.forward, w, cap), v, cap)
    reassoc = compose(
        left_whisker(v, associator(a, w, v, cap).backward, cap),
        associator(v, a, wv, cap).forward,
        associator(va, w, v, cap).forward)
    step4 = left_whisker(v, c.varpi, cap)
    lhs = compose(step4, reassoc, step2, step1)
    diff = _first_difference(lhs, ell_v.forward)
    if diff is not None:
        return LawReport.fail("zigzag-left", (diff,), f"first zig-zag differs on element {diff}")

    # (ϖ⊠V*)∘((℘_{V*}⊠V)⊠V*)∘reassociate∘(V*⊠υ) against ℘_{V*}
    step1 = left_whisker(w, c.upsilon, cap)
    reassoc = compose(
        right_whisker(associator(w, a, v, cap).backward, w, cap),
        associator(w, av, w, cap).backward)
    step3 = right_whisker(right_whisker(ell_w.backward, v, cap), w, cap)
    step4 = right_whisker(c.varpi, w, cap)
    lhs = compose(step4, step3, reassoc, step1)
    diff = _first_difference(lhs, ell_w.backward)
    if diff is not None:
        return LawReport.fail("zigzag-right", (diff,), f"second zig-zag differs on element {diff}")
    return LawReport.ok()


def dual_adjunction_maps(c: DualityCandidate, x: FiniteSemimodule, y: FiniteSemimodule,
                         cap: int = DEFAULT_CAP):
    """The two transposition functions between the hom sets

    ``Hom((X⊠A)⊠V, Y⊠A)`` and ``Hom(X⊠A, (Y⊠A)⊠V*)``.
    """
    a = regular_module(c.ambient)
    v, w = c.V, c.dual
    xa = tensor_product(x, a, cap).carrier
    ya = tensor_product(y, a, cap).carrier
    av = tensor_product(a, v, cap).carrier
    aw = tensor_product(a, w, cap).carrier
    into_coeval = compose(
        right_whisker(associator(x, a, v, cap).backward, w, cap),
        associator(x, av, w, cap).backward,
        left_whisker(x, c.upsilon, cap))
    out_of_eval = compose(
        left_whisker(y, c.varpi, cap),
        associator(y, aw, v, cap).forward,
        right_whisker(associator(y, a, w, cap).forward, v, cap))

    def forward(f: StructureMap) -> StructureMap:
        return compose(right_whisker(f, w, cap), into_coeval)

    def backward(g: StructureMap) -> StructureMap:
        return compose(out_of_eval, right_whisker(g, v, cap))

    source_l = tensor_product(xa, v, cap).carrier
    target_r = tensor_product(ya, w, cap).carrier
    return (source_l, ya), (xa, target_r), forward, backward


def dual_check(c: DualityCandidate, universe: ObjectUniverse | None = None,
               cap: int = DEFAULT_CAP, hom_cap: int = 4096) -> LawReport:
    """Zig-zag identities, then the hom-set bijection for every pair of objects."""
    for name, f in (("upsilon", c.upsilon), ("varpi", c.varpi)):
        report = validate_map(f)
        if not report:
            return report.prefixed(f"{name}-")
    report = _zigzags(c, cap)
    if not report:
        return report
    objects = universe.objects if universe is not None else (regular_module(c.ambient),)
    for (i, x), (j, y) in itertools.product(enumerate(objects), repeat=2):
        (ls, lt), (rs, rt), forward, backward = dual_adjunction_maps(c, x, y, cap)
        left_maps = enumerate_maps(ls, lt, "linear-map", cap=hom_cap)
        right_maps = enumerate_maps(rs, rt, "linear-map", cap=hom_cap)
        right_tables = {g.table for g in right_maps}
        left_tables = {f.table for f in left_maps}
        for k, f in enumerate(left_maps):
            g = forward(f)
            if g.table not in right_tables:
                return LawReport.fail("adjunction-forward-linear", (i, j, k), "transpose is not linear")
            if backward(g).table != f.table:
                return LawReport.fail("adjunction-round-trip", (i, j, k), "backward∘forward is not the identity")
        for k, g in enumerate(right_maps):
            f = backward(g)
            if f.table not in left_tables:
                return LawReport.fail("adjunction-backward-linear", (i, j, k), "transpose is not linear")
            if forward(f).table != g.table:
                return LawReport.fail("adjunction-round-trip", (i, j, k), "forward∘backward is not the identity")
    return LawReport.ok()


# ---------------------------------------------------------------------------
# Tensor-hom adjunction

@dataclass(frozen=True)
class AdjunctionResult:
    forward: dict
    backward: dict
    report: LawReport
    sizes: tuple[int, int] = field(default=(0, 0))

    def __iter__(self):
        return iter((self.forward, self.backward, self.report))


def reflect_map(h: StructureMap) -> StructureMap:
    """``𝔠(h)``: the map induced on cancellative reflections."""
    src = cancellative_reflection(h.source)
    tgt = cancellative_reflection(h.target)
    reps = {}
    for x, k in enumerate(src.projection.table):
        reps.setdefault(k, x)
    table = tuple(tgt.projection.table[h.table[reps[k]]] for k in range(src.reflected.size))
    return StructureMap(h.kind, src.reflected, tgt.reflected, table)


def tensor_hom_adjunction(m: FiniteSemimodule, n: FiniteSemimodule, g: FiniteSemimodule,
                          m_morphisms: Sequence[StructureMap] | None = None,
                          g_morphisms: Sequence[StructureMap] | None = None,
                          cap: int = DEFAULT_CAP, hom_cap: int = 4096) -> AdjunctionResult:
    """``Hom_T(𝔠M⊠N, 𝔠G) ≅ Hom_S(𝔠M, Hom_T(N, 𝔠G))``.

    ``N`` is an ``(S,T)``-bisemimodule, ``M`` a right ``S``- and ``G`` a right
    ``T``-semimodule. Naturality is checked separately in ``M`` and in ``G``
    against the given endomorphisms (default: every right-linear one, if few).
    """
    cm = cancellative_reflection(m).reflected
    cg = cancellative_reflection(g).reflected
    prod = tensor_product(cm, n, cap)
    hom = hom_space(n, cg, sides=("right",), cap=hom_cap)
    left_maps = enumerate_maps(prod.carrier, cg, "linear-map", sides=("right",), cap=hom_cap)
    right_maps = enumerate_maps(cm, hom.module, "linear-map", sides=("right",), cap=hom_cap)

    def fwd(table):
        return tuple(hom.index[tuple(table[prod.tau(x, y)] for y in range(n.size))] for x in range(cm.size))

    def bwd(table):
        return map_out_of_tensor(prod, cg, lambda x, y: hom.maps[table[x]][y]).table

    forward = {f.table: fwd(f.table) for f in left_maps}
    backward = {h.table: bwd(h.table) for h in right_maps}
    right_set = set(backward)
    sizes = (len(left_maps), len(right_maps))

    def result(report):
        return AdjunctionResult(forward, backward, report, sizes)

    if len(left_maps) != len(right_maps):
        return result(LawReport.fail("adjunction-cardinality", sizes, "hom sets differ in size"))
    for k, f in enumerate(left_maps):
        phi = forward[f.table]
        if phi not in right_set:
            return result(LawReport.fail("adjunction-forward-linear", (k,), "transpose is not linear"))
        if backward[phi] != f.table:
            return result(LawReport.fail("adjunction-round-trip", (k,), "backward∘forward is not the identity"))
    for k, h in enumerate(right_maps):
        if forward.get(backward[h.table]) != h.table:
            return result(LawReport.fail("adjunction-round-trip", (k,), "forward∘backward is not the identity"))

    if m_morphisms is None:
        m_morphisms = _small_endomorphisms(m)
    for k, h in enumerate(m_morphisms):
        ch = reflect_map(h)
        if ch.source != cm or ch.target != cm:
            raise KindMismatch("naturality in M expects endomorphisms of M")
        whiskered = induced_map(ch, identity_map(n, "linear-map"), prod, prod)
        for f in left_maps:
            lhs = forward[compose(f, whiskered).table]
            rhs = tuple(forward[f.table][ch.table[x]] for x in range(cm.size))
            if lhs != rhs:
                return result(LawReport.fail("naturality-M", (k,), f"square fails for endomorphism {k}"))
    if g_morphisms is None:
        g_morphisms = _small_endomorphisms(g)
    for k, h in enumerate(g_morphisms):
        ch = reflect_map(h)
        if ch.source != cg or ch.target != cg:
            raise KindMismatch("naturality in G expects endomorphisms of G")
        for f in left_maps:
            lhs = forward[tuple(ch.table[v] for v in f.table)]
            rhs = tuple(hom.index[tuple(ch.table[v] for v in hom.maps[p])] for p in forward[f.table])
            if lhs != rhs:
                return result(LawReport.fail("naturality-G", (k,), f"square fails for endomorphism {k}"))
    return result(LawReport.ok(f"hom sets of size {sizes[0]}"))


def _small_endomorphisms(x: FiniteSemimodule, limit: int = 64) -> list[StructureMap]:
    sides = ("right",) if x.right_action is not None else ()
    try:
        return enumerate_maps(x, x, "linear-map", sides=sides, cap=limit)
    except SizeCapExceeded:
        return [identity_map(x, "linear-map")]
