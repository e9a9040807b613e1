import itertools

import pytest
from hypothesis import given, strategies as st

from finsemi.congruence import cancellative_reflection
from finsemi.core import (
    StructureMap,
    boolean_semiring,
    builtin_structure,
    compose,
    identity_map,
    product_semiring,
    regular_module,
    validate_map,
    zero_module,
    zmod,
)
from finsemi.errors import NotCancellative, NotUnital
from finsemi.semistructures import (
    SemicounitalSemicoring,
    SemicounitaryComodule,
    SemiunitalSemiring,
    SemiunitaryModule,
    check_semicounital_semicoring,
    check_semicounitary_comodule,
    check_semiunital_semiring,
    check_semiunitary_module,
    convolution_functors,
    convolution_monoid,
    enumerate_structures,
    regular_semicomodule,
    regular_semimodule,
    search_space,
    semiring_algebra,
    sweedler_semicoring,
    unit_semicoring,
    unit_semiring,
    zero_semiring,
)
from finsemi.tensor import tensor_product

import oracles


def diagonal():
    z2 = zmod(2)
    return StructureMap("semiring-map", z2, product_semiring(z2, z2), (0, 1))


def with_table(f, k, value):
    table = list(f.table)
    table[k] = value
    return StructureMap(f.kind, f.source, f.target, tuple(table))


@pytest.mark.parametrize("name", ["zmod(2)", "boolean", "zmod(3)", "truncated-nat(2)", "chain-lattice(3)",
                                  "product(zmod(2),zmod(2))"])
def test_unit_semiring_passes(name):
    assert check_semiunital_semiring(unit_semiring(builtin_structure(name)))


def test_boolean_unit_law_trivialized():
    x = unit_semiring(boolean_semiring())
    assert check_semiunital_semiring(x)
    strict = check_semiunital_semiring(x, strict=True)
    assert not strict and strict.law_id == "unital"


def test_zero_eta_breaks_unit_law():
    x = unit_semiring(zmod(2))
    broken = SemiunitalSemiring(x.A, x.carrier, x.mu, with_table(x.eta, 1, 0))
    report = check_semiunital_semiring(broken)
    assert not report and report.law_id.startswith("unit")


def test_diagonal_algebra():
    x = semiring_algebra(diagonal())
    assert check_semiunital_semiring(x, strict=True)
    assert x.carrier.size == 4


def test_semiunitary_modules():
    x = unit_semiring(zmod(2))
    assert check_semiunitary_module(regular_semimodule(x))
    z = zero_module(zmod(2), ("right",))
    pairing = tensor_product(z, x.carrier)
    zero = SemiunitaryModule(x, z, StructureMap("linear-map", pairing.carrier, z, (0,) * pairing.size))
    assert check_semiunitary_module(zero)
    regular = regular_semimodule(x)
    for k in range(regular.action.source.size):
        for v in range(regular.M.size):
            if v == regular.action.table[k]:
                continue
            report = check_semiunitary_module(SemiunitaryModule(x, x.carrier, with_table(x.mu, k, v)))
            assert not report and report.witness is not None


def test_trivial_semicoring():
    c = unit_semicoring(zmod(2))
    assert check_semicounital_semicoring(c)
    broken = SemicounitalSemicoring(c.A, c.carrier, c.Delta, with_table(c.epsilon, 1, 0))
    report = check_semicounital_semicoring(broken)
    assert not report and report.law_id.startswith("counit")


def test_semicomodules():
    c = unit_semicoring(zmod(2))
    assert check_semicounitary_comodule(regular_semicomodule(c))
    z = zero_module(zmod(2), ("right",))
    pairing = tensor_product(z, c.carrier)
    assert check_semicounitary_comodule(
        SemicounitaryComodule(c, z, StructureMap("linear-map", z, pairing.carrier, (0,))))
    bad = SemicounitaryComodule(c, c.carrier, with_table(c.Delta, 1, 0))
    assert not check_semicounitary_comodule(bad)


@pytest.mark.parametrize("kappa,size", [
    (identity_map(zmod(2), "semiring-map"), 2),
    (diagonal(), 16),
    (identity_map(boolean_semiring(), "semiring-map"), 1),
])
def test_sweedler_semicorings(kappa, size):
    c = sweedler_semicoring(kappa)
    assert c.carrier.size == size
    assert check_semicounital_semicoring(c)
    assert validate_map(c.Delta) and validate_map(c.epsilon)


def test_sweedler_of_identity_is_trivial():
    c = sweedler_semicoring(identity_map(zmod(2), "semiring-map"))
    t = unit_semicoring(zmod(2))
    assert c.Delta.table == t.Delta.table and c.epsilon.table == t.epsilon.table


def _is_iso_to_table(table, target):
    n = len(table)
    return any(all(p[table[i][j]] == target[p[i]][p[j]] for i in range(n) for j in range(n))
               for p in itertools.permutations(range(n)))


def test_convolution_of_trivial_structures():
    conv = convolution_monoid(unit_semicoring(zmod(2)), unit_semiring(zmod(2)))
    assert conv.report and conv.size == 2
    assert _is_iso_to_table(conv.table, ((0, 0), (0, 1)))


def _check_monoid(conv):
    n = conv.size
    assert all(conv.table[conv.unit][i] == i == conv.table[i][conv.unit] for i in range(n))
    assert all(conv.table[conv.table[i][j]][k] == conv.table[i][conv.table[j][k]]
               for i in range(n) for j in range(n) for k in range(n))


def test_convolution_sweedler_into_product_ring():
    c = sweedler_semicoring(diagonal())
    ring = unit_semiring(c.A)
    conv = convolution_monoid(c, ring)
    assert conv.report
    _check_monoid(conv)
    assert conv.carrier[conv.unit] == compose(ring.eta, c.epsilon).table


def test_convolution_from_zero_carrier():
    a = zmod(2)
    z = zero_module(a)
    sq = tensor_product(z, z)
    c = SemicounitalSemicoring(a, z, StructureMap("linear-map", z, sq.carrier, (0,)),
                               StructureMap("linear-map", z, regular_module(a), (0,)))
    conv = convolution_monoid(c, unit_semiring(a))
    assert conv.size == 1 and conv.report


def test_convolution_needs_unital_semiring():
    with pytest.raises(NotUnital):
        convolution_monoid(unit_semicoring(boolean_semiring()), unit_semiring(boolean_semiring()))


def test_convolution_functors_identity():
    c, r = unit_semicoring(zmod(2)), unit_semiring(zmod(2))
    ident = identity_map(r.carrier, "linear-map")
    pre, post, report = convolution_functors(ident, c, c, ident, r, r)
    assert report
    assert pre.table == tuple(range(pre.source.size)) and post.table == tuple(range(post.source.size))


def test_convolution_postcomposition_with_diagonal():
    c = unit_semicoring(zmod(2))
    src, tgt = unit_semiring(zmod(2)), semiring_algebra(diagonal())
    psi = StructureMap("linear-map", src.carrier, tgt.carrier, (0, 1))
    ident = identity_map(c.carrier, "linear-map")
    pre, post, report = convolution_functors(ident, c, c, psi, src, tgt)
    assert report and post.check()


def test_convolution_precomposition_with_counit():
    c = sweedler_semicoring(diagonal())
    trivial = unit_semicoring(c.A)
    ring = unit_semiring(c.A)
    ident = identity_map(ring.carrier, "linear-map")
    pre, post, report = convolution_functors(c.epsilon, c, trivial, ident, ring, ring)
    assert report and pre.check()


def _brute_algebras_over_z2(carrier):
    """Unital associative pair tables on a ℤ₂-bisemimodule, with their units."""
    n = carrier.size
    add = carrier.add
    out = set()
    for mu in oracles.balanced_maps(carrier, carrier, add, carrier.zero):
        for e in range(n):
            if any(mu[e][p] != p or mu[p][e] != p for p in range(n)):
                continue
            if all(mu[mu[p][q]][r] == mu[p][mu[q][r]] for p in range(n) for q in range(n) for r in range(n)):
                out.add((mu, e))
    return out


@pytest.mark.parametrize("carrier", [regular_module(zmod(2)), semiring_algebra(diagonal()).carrier],
                         ids=["z2", "z2sq"])
def test_enumerated_semirings_match_brute_force(carrier):
    a = zmod(2)
    found = enumerate_structures(a, carrier, "semiring")
    tables = {(tuple(tuple(x.product(p, q) for q in range(carrier.size)) for p in range(carrier.size)),
               x.eta.table[1]) for x in found}
    assert len(tables) == len(found)
    assert tables == _brute_algebras_over_z2(carrier)


def test_enumeration_examples():
    a = zmod(2)
    reg = regular_module(a)
    rings = enumerate_structures(a, reg, "semiring")
    assert len(rings) == 1
    assert rings[0].mu.table == unit_semiring(a).mu.table
    corings = enumerate_structures(a, reg, "semicoring")
    assert len(corings) == len(rings)
    space = search_space(a, reg, "semiring")
    assert space.total == 4
    z = zero_module(a)
    assert len(enumerate_structures(a, z, "semiring")) == 1
    assert len(enumerate_structures(a, z, "semicoring")) == 1
    assert check_semiunital_semiring(zero_semiring(a))


def test_self_duality_of_counts_over_z2_squared():
    a = zmod(2)
    carrier = semiring_algebra(diagonal()).carrier
    rings = enumerate_structures(a, carrier, "semiring")
    corings = enumerate_structures(a, carrier, "semicoring")
    # dualizing a finite free module swaps algebras and coalgebras
    assert len(rings) == len(corings) > 0
    assert all(check_semicounital_semicoring(c, strict=True) for c in corings)


def test_enumeration_refuses_non_cancellative():
    b = boolean_semiring()
    with pytest.raises(NotCancellative):
        enumerate_structures(b, regular_module(b), "semiring")
    with pytest.raises(NotCancellative):
        enumerate_structures(zmod(2), regular_module(zmod(2)).__class__(
            builtin_structure("truncated-nat(2)").additive), "semiring")


@given(st.sampled_from(["zmod(2)", "zmod(3)", "product(zmod(2),zmod(2))", "boolean", "truncated-nat(2)"]),
       st.data())
def test_convolution_is_a_monoid(name, data):
    a = builtin_structure(name)
    ring = unit_semiring(a)
    if cancellative_reflection(ring.carrier).reflected.size != ring.carrier.size:
        with pytest.raises(NotUnital):
            convolution_monoid(unit_semicoring(a), ring)
        return
    conv = convolution_monoid(unit_semicoring(a), ring)
    assert conv.report
    i = data.draw(st.integers(0, conv.size - 1))
    j = data.draw(st.integers(0, conv.size - 1))
    # Δ(x) = x⊠1 on the trivial coring, so (f∗g)(x) = f(x)·g(1)
    f, g = conv.carrier[i], conv.carrier[j]
    assert conv.carrier[conv.table[i][j]] == tuple(a.mul[f[x]][g[a.one]] for x in range(a.size))
    _check_monoid(conv)
