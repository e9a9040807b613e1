import itertools

import pytest

from finsemi.congruence import cancellative_reflection
from finsemi.core import (
    StructureMap,
    boolean_semiring,
    builtin_structure,
    enumerate_maps,
    identity_map,
    power_module,
    product_semiring,
    regular_module,
    restrict_scalars,
    zero_module,
    zmod,
)
from finsemi.errors import InvalidSemimonoid, NotFirm, ShapeMismatch
from finsemi.jstructures import (
    JActData,
    JComonadData,
    JMonadData,
    NatTransData,
    check_functor,
    check_interchange,
    check_jact,
    check_jcomonad,
    check_jmonad,
    check_natural,
    cofree_jcomodule,
    free_jmodule,
    godement,
    identity_functor,
    identity_transformation,
    induced_monad_from_adjunction,
    jcomonad_roundtrip,
    jcomonad_to_semicomonoid,
    jmonad_roundtrip,
    jmonad_to_semimonoid,
    reflection_functor,
    reflection_unit,
    semicomonoid_to_jcomonad,
    semicoring_roundtrip,
    semimonoid_to_jmonad,
    semiring_roundtrip,
    structure_universe,
    tensor_functor,
    vertical,
)
from finsemi.semistructures import (
    SemiunitalSemiring,
    SemiunitaryModule,
    SemicounitaryComodule,
    check_semicounitary_comodule,
    check_semiunitary_module,
    enumerate_structures,
    semiring_algebra,
    sweedler_semicoring,
    unit_semicoring,
    unit_semiring,
)
from finsemi.tensor import tensor_product
from finsemi.variety import ObjectUniverse, default_universe


def diagonal():
    z2 = zmod(2)
    return StructureMap("semiring-map", z2, product_semiring(z2, z2), (0, 1))


def zero_transformation(t: NatTransData) -> NatTransData:
    return NatTransData(f"0_{t.name}", t.source, t.target,
                        lambda x: StructureMap("linear-map", t(x).source, t(x).target,
                                               (t(x).target.zero,) * t(x).source.size))


# ---------------------------------------------------------------------------
# Functors, Godement products, interchange

def test_identity_godement_is_identity():
    ident = identity_transformation(identity_functor())
    z2 = regular_module(zmod(2))
    assert godement(ident, ident)(z2).table == (0, 1)


def test_godement_of_reflection_units():
    u = ObjectUniverse((regular_module(zmod(2)), regular_module(boolean_semiring())))
    c = reflection_unit()
    g = godement(c, c, u)
    assert g(u.objects[0]).table == (0, 1)
    assert g(u.objects[1]).table == (0, 0)
    assert check_natural(g, u)


def _stock(a, extra=()):
    s = unit_semiring(a)
    d = semimonoid_to_jmonad(s)
    c = reflection_unit()
    trans = [identity_transformation(identity_functor()), identity_transformation(d.J),
             identity_transformation(d.M), identity_transformation(c.target),
             d.omega, d.nu, d.mu, c, vertical(d.nu, d.omega)]
    universe = default_universe(a, extra)
    return trans, universe


def composable_quadruples(trans):
    out = []
    for theta, phi, delta, psi in itertools.product(trans, repeat=4):
        if delta.source is psi.target and theta.source is phi.target:
            out.append((theta, phi, delta, psi))
    return out


@pytest.mark.parametrize("name", ["zmod(2)", "boolean", "product(zmod(2),zmod(2))"])
def test_godement_formulas_agree_on_all_pairs(name):
    trans, universe = _stock(builtin_structure(name))
    for phi, psi in itertools.product(trans, repeat=2):
        g = godement(phi, psi, universe)
        for x in universe.objects:
            assert g(x).source == g.source.obj(x) and g(x).target == g.target.obj(x)


@pytest.mark.parametrize("name", ["zmod(2)", "boolean", "product(zmod(2),zmod(2))"])
def test_interchange_on_composable_quadruples(name):
    trans, universe = _stock(builtin_structure(name))
    quads = composable_quadruples(trans)
    assert len(quads) > 50
    for q in quads:
        assert check_interchange(*q, universe)


def test_vertical_rejects_mismatched_middle():
    trans, _ = _stock(zmod(2))
    with pytest.raises(ShapeMismatch):
        vertical(trans[5], trans[7])


@pytest.mark.parametrize("name", ["zmod(2)", "boolean", "truncated-nat(2)"])
def test_stock_functors_are_functors(name):
    a = builtin_structure(name)
    universe = default_universe(a)
    for f in (identity_functor(), reflection_functor(), tensor_functor(regular_module(a), "left"),
              tensor_functor(regular_module(a), "right")):
        assert check_functor(f, universe)


# ---------------------------------------------------------------------------
# J-monads and J-comonads

@pytest.mark.parametrize("name", ["zmod(2)", "product(zmod(2),zmod(2))", "zmod(3)", "boolean"])
@pytest.mark.parametrize("side", ["right", "left"])
def test_unit_semiring_jmonad(name, side):
    s = unit_semiring(builtin_structure(name))
    d = semimonoid_to_jmonad(s, side)
    u = structure_universe(s.carrier, (s.mu, s.eta))
    assert check_jmonad(d, u)


@pytest.mark.parametrize("name", ["zmod(2)", "product(zmod(2),zmod(2))", "zmod(3)", "boolean"])
@pytest.mark.parametrize("side", ["right", "left"])
def test_unit_semicoring_jcomonad(name, side):
    c = unit_semicoring(builtin_structure(name))
    d = semicomonoid_to_jcomonad(c, side)
    assert check_jcomonad(d, structure_universe(c.carrier, (c.Delta, c.epsilon)))


def test_zero_mu_fails():
    s = unit_semiring(zmod(2))
    d = semimonoid_to_jmonad(s)
    broken = JMonadData(d.M, zero_transformation(d.mu), d.omega, d.nu, d.J)
    report = check_jmonad(broken, structure_universe(s.carrier))
    assert not report and report.law_id.startswith("unit")


def test_zero_delta_fails():
    c = unit_semicoring(zmod(2))
    d = semicomonoid_to_jcomonad(c)
    broken = JComonadData(d.C, zero_transformation(d.Delta), d.omega, d.theta, d.J)
    report = check_jcomonad(broken, structure_universe(c.carrier))
    assert not report and report.law_id.startswith("counit")


def test_classical_trivial_monad_and_comonad():
    ident = identity_functor()
    t = identity_transformation(ident)
    u = default_universe(zmod(2))
    assert check_jmonad(JMonadData(ident, t, t, t, ident), u)
    assert check_jcomonad(JComonadData(ident, t, t, t, ident), u)


def test_corrupted_mu_is_refused_or_fails():
    s = unit_semiring(zmod(2))
    table = list(s.mu.table)
    table[1] = 0
    broken = SemiunitalSemiring(s.A, s.carrier, StructureMap("linear-map", s.mu.source, s.mu.target, tuple(table)),
                                s.eta)
    with pytest.raises(InvalidSemimonoid):
        semimonoid_to_jmonad(broken)
    d = semimonoid_to_jmonad(broken, validate=False)
    assert not check_jmonad(d, structure_universe(s.carrier))


def _structure_cases():
    z2 = zmod(2)
    p = product_semiring(z2, z2)
    cases = []
    for a, carrier, level in ((z2, regular_module(z2), "full"), (p, regular_module(p), "full"),
                              (z2, semiring_algebra(diagonal()).carrier, "base")):
        for kind in ("semiring", "semicoring"):
            for k, x in enumerate(enumerate_structures(a, carrier, kind)):
                cases.append(pytest.param(x, kind, level, id=f"{a.name}-{carrier.size}-{kind}-{k}"))
    return cases


STRUCTURES = _structure_cases()


@pytest.mark.parametrize("x,kind,level", STRUCTURES)
def test_enumerated_structures_give_lawful_j_data(x, kind, level):
    for side in ("right", "left"):
        if kind == "semiring":
            d = semimonoid_to_jmonad(x, side)
            u = structure_universe(x.carrier, (x.mu, x.eta), level=level)
            assert check_jmonad(d, u)
        else:
            d = semicomonoid_to_jcomonad(x, side)
            u = structure_universe(x.carrier, (x.Delta, x.epsilon), level=level)
            assert check_jcomonad(d, u)


def test_enumeration_covers_both_product_factors():
    assert len(STRUCTURES) >= 6


# ---------------------------------------------------------------------------
# Acts

def test_free_and_cofree_acts():
    for a in (zmod(2), boolean_semiring(), product_semiring(zmod(2), zmod(2))):
        s, c = unit_semiring(a), unit_semicoring(a)
        d, e = semimonoid_to_jmonad(s), semicomonoid_to_jcomonad(c)
        for x in (regular_module(a), zero_module(a)):
            assert check_jact(free_jmodule(d, x), d)
            assert check_jact(cofree_jcomodule(e, x), e)
    b = regular_module(boolean_semiring())
    d = semimonoid_to_jmonad(unit_semiring(boolean_semiring()))
    assert free_jmodule(d, b).obj.size == 1


def test_zero_action_fails():
    a = zmod(2)
    d = semimonoid_to_jmonad(unit_semiring(a))
    x = regular_module(a)
    mx = d.M.obj(x)
    act = JActData(x, StructureMap("linear-map", mx, x, (0,) * mx.size))
    assert not check_jact(act, d)


def test_act_kind_must_match_parent():
    a = zmod(2)
    d = semimonoid_to_jmonad(unit_semiring(a))
    with pytest.raises(ShapeMismatch):
        check_jact(JActData(regular_module(a), identity_map(regular_module(a), "linear-map"), "comodule"), d)


@pytest.mark.parametrize("name", ["zmod(2)", "boolean", "zmod(3)", "product(zmod(2),zmod(2))"])
def test_semiunitary_modules_are_j_modules(name):
    a = builtin_structure(name)
    s = unit_semiring(a)
    d = semimonoid_to_jmonad(s)
    objs = [regular_module(a), zero_module(a)]
    if a.size == 2:
        objs.append(power_module(a, 2))
    for m in objs:
        pairing = tensor_product(m, s.carrier)
        for rho in enumerate_maps(pairing.carrier, m, "linear-map"):
            as_module = check_semiunitary_module(SemiunitaryModule(s, m, rho))
            as_act = check_jact(JActData(m, rho, "module"), d)
            assert bool(as_module) == bool(as_act)


@pytest.mark.parametrize("name", ["zmod(2)", "boolean", "zmod(3)", "product(zmod(2),zmod(2))"])
def test_semicounitary_comodules_are_j_comodules(name):
    a = builtin_structure(name)
    c = unit_semicoring(a)
    d = semicomonoid_to_jcomonad(c)
    objs = [regular_module(a), zero_module(a)]
    if a.size == 2:
        objs.append(power_module(a, 2))
    for m in objs:
        pairing = tensor_product(m, c.carrier)
        for rho in enumerate_maps(m, pairing.carrier, "linear-map"):
            as_comodule = check_semicounitary_comodule(SemicounitaryComodule(c, m, rho))
            as_act = check_jact(JActData(m, rho, "comodule"), d)
            assert bool(as_comodule) == bool(as_act)


# ---------------------------------------------------------------------------
# Round-trips

ROUNDTRIP_BASES = [("zmod(2)", None), ("zmod(3)", None), ("zmod(4)", None),
                   ("product(zmod(2),zmod(2))", None), ("zmod(2)", "diag")]


def _carrier(name, how):
    a = builtin_structure(name)
    return a, (semiring_algebra(diagonal()).carrier if how == "diag" else regular_module(a))


@pytest.mark.parametrize("name,how", ROUNDTRIP_BASES)
def test_semiring_roundtrips(name, how):
    a, carrier = _carrier(name, how)
    found = enumerate_structures(a, carrier, "semiring") + enumerate_structures(a, zero_module(a), "semiring")
    assert found
    for x in found:
        for side in ("right", "left"):
            assert semiring_roundtrip(x, side)
            back = jmonad_to_semimonoid(semimonoid_to_jmonad(x, side))
            assert back.mu.table == x.mu.table and back.eta.table == x.eta.table


@pytest.mark.parametrize("name,how", ROUNDTRIP_BASES)
def test_semicoring_roundtrips(name, how):
    a, carrier = _carrier(name, how)
    found = enumerate_structures(a, carrier, "semicoring") + enumerate_structures(a, zero_module(a), "semicoring")
    assert found
    for x in found:
        for side in ("right", "left"):
            assert semicoring_roundtrip(x, side)
            back = jcomonad_to_semicomonoid(semicomonoid_to_jcomonad(x, side))
            assert back.Delta.table == x.Delta.table and back.epsilon.table == x.epsilon.table


@pytest.mark.parametrize("side", ["right", "left"])
def test_jdata_roundtrips(side):
    for a in (zmod(2), product_semiring(zmod(2), zmod(2))):
        s, c = unit_semiring(a), unit_semicoring(a)
        d = semimonoid_to_jmonad(s, side)
        assert jmonad_roundtrip(d, structure_universe(s.carrier))
        e = semicomonoid_to_jcomonad(c, side)
        assert jcomonad_roundtrip(e, structure_universe(c.carrier))


@pytest.mark.parametrize("side", ["right", "left"])
def test_sweedler_roundtrip(side):
    c = sweedler_semicoring(diagonal())
    assert semicoring_roundtrip(c, side)


@pytest.mark.parametrize("name", ["boolean", "truncated-nat(2)", "chain-lattice(3)"])
def test_non_firm_inputs_refused(name):
    a = builtin_structure(name)
    with pytest.raises(NotFirm):
        jmonad_to_semimonoid(semimonoid_to_jmonad(unit_semiring(a)))
    with pytest.raises(NotFirm):
        jcomonad_to_semicomonoid(semicomonoid_to_jcomonad(unit_semicoring(a)))


# ---------------------------------------------------------------------------
# The monad of the tensor-hom adjunction

def test_induced_monad_on_z2_is_reflection():
    z2 = zmod(2)
    am, report = induced_monad_from_adjunction(regular_module(z2))
    assert report
    for x in am.universe.objects:
        assert am.data.M.obj(x).size == cancellative_reflection(x).reflected.size


def test_induced_monad_for_zero_bimodule():
    am, report = induced_monad_from_adjunction(zero_module(zmod(2)))
    assert report
    assert {am.data.M.obj(x).size for x in am.universe.objects} == {1}


def test_induced_monad_for_diagonal_bimodule():
    p = product_semiring(zmod(2), zmod(2))
    n = restrict_scalars(regular_module(p), diagonal(), "left")
    am, report = induced_monad_from_adjunction(n)
    assert report
    assert [am.data.M.obj(x).size for x in am.universe.objects] == [1, 4]


def test_induced_monad_over_boolean_works_on_reflections():
    b = boolean_semiring()
    am, report = induced_monad_from_adjunction(regular_module(b))
    assert report
    assert all(x.size == 1 for x in am.universe.objects)
