import itertools

import pytest
from hypothesis import given, strategies as st

from finsemi.core import (
    FiniteSemiring,
    FiniteSemimodule,
    StructureMap,
    boolean_semiring,
    builtin_structure,
    compose,
    enumerate_maps,
    hom_module,
    hom_space,
    identity_map,
    is_isomorphic,
    power_module,
    product_semiring,
    regular_module,
    restrict_scalars,
    validate_map,
    validate_semimodule,
    validate_semiring,
    zero_module,
    zmod,
)
from finsemi.congruence import cancellative_reflection
from finsemi.errors import InvalidParameter, MalformedTable, MissingAction, UnknownFixture

import oracles
from conftest import FIXTURE_NAMES, SMALL_NAMES


def test_every_fixture_validates(fixture_semiring):
    assert validate_semiring(fixture_semiring)
    s = fixture_semiring
    assert oracles.table_semiring_failures(s.add, s.mul, s.zero, s.one) == []
    assert validate_semimodule(regular_module(s))


def test_boolean_semiring_tables():
    b = boolean_semiring()
    assert b.add == ((0, 1), (1, 1))
    assert b.mul == ((0, 0), (0, 1))


def test_absorbing_zero_violation_reports_pair():
    s = FiniteSemiring.from_tables([[0, 1], [1, 1]], [[0, 1], [1, 1]])
    report = validate_semiring(s)
    assert not report
    assert report.law_id == "zero-absorbing"
    assert oracles.semiring_witness_holds(s.add, s.mul, 0, 1, report.law_id, report.witness)


def test_zmod4_is_a_semiring():
    assert validate_semiring(zmod(4))


def test_truncated_nat_saturates():
    s = builtin_structure("truncated-nat(2)")
    assert s.add[2][1] == 2 and s.mul[2][2] == 2 and s.add[1][1] == 2


@pytest.mark.parametrize("n", [2, 3, 4])
def test_chain_lattice_join_meet(n):
    s = builtin_structure(f"chain-lattice({n})")
    # bottom 0, top 1, interior 2..n-1 ascending
    order = [0] + list(range(2, n)) + [1]
    rank = {x: i for i, x in enumerate(order)}
    for a in range(n):
        for b in range(n):
            assert s.add[a][b] == order[max(rank[a], rank[b])]
            assert s.mul[a][b] == order[min(rank[a], rank[b])]


def test_unknown_fixture_and_bad_parameter():
    with pytest.raises(UnknownFixture):
        builtin_structure("quaternions")
    with pytest.raises(InvalidParameter):
        builtin_structure("zmod", "x")


def test_ragged_table_rejected():
    with pytest.raises(MalformedTable):
        FiniteSemiring.from_tables([[0, 1], [1]], [[0, 0], [0, 1]])


def test_action_without_base_rejected():
    z2 = zmod(2)
    with pytest.raises(MissingAction):
        FiniteSemimodule(z2.additive, left_action=z2.mul)


# single-entry faults: (fixture, table, row, col, new value)
FAULTS = [
    ("zmod(2)", "mul", 1, 1, 0),
    ("zmod(2)", "mul", 0, 1, 1),
    ("boolean", "mul", 1, 0, 1),
    ("boolean", "add", 0, 1, 0),
    ("zmod(3)", "mul", 2, 2, 2),
    ("zmod(3)", "add", 1, 2, 1),
    ("truncated-nat(2)", "mul", 2, 2, 1),
    ("chain-lattice(3)", "mul", 2, 1, 0),
    ("zmod(4)", "add", 3, 3, 1),
    ("truncated-nat(3)", "mul", 1, 2, 3),
]


@pytest.mark.parametrize("name,which,row,col,value", FAULTS)
def test_single_entry_faults_fail_with_genuine_witness(name, which, row, col, value):
    s = builtin_structure(name)
    tables = {"add": [list(r) for r in s.add], "mul": [list(r) for r in s.mul]}
    assert tables[which][row][col] != value
    tables[which][row][col] = value
    broken = FiniteSemiring.from_tables(tables["add"], tables["mul"], s.zero, s.one)
    report = validate_semiring(broken)
    assert not report
    assert oracles.table_semiring_failures(broken.add, broken.mul, 0, broken.one)
    assert oracles.semiring_witness_holds(broken.add, broken.mul, 0, broken.one, report.law_id, report.witness)


def test_boolean_unit_action_fault():
    b = boolean_semiring()
    m = FiniteSemimodule(b.additive, [[0, 0], [0, 0]], None, b, None)
    report = validate_semimodule(m)
    assert report.law_id == "unit-action" and report.witness == (1,)


def test_diagonal_bimodule_validates():
    z2 = zmod(2)
    assert validate_semimodule(power_module(z2, 2))


def test_map_validation_examples():
    z2, b = zmod(2), boolean_semiring()
    assert validate_map(identity_map(z2, "semiring-map"))
    zero = StructureMap("semiring-map", z2, z2, (0, 0))
    assert validate_map(zero).law_id == "preserve-one"
    collapse = cancellative_reflection(regular_module(b)).projection
    assert collapse.target.size == 1 and validate_map(collapse)


@pytest.mark.parametrize("n_name,g_name,size", [
    ("z2", "z2", 2), ("b", "zero", 1), ("z2sq", "z2", 4),
])
def test_hom_module_sizes(n_name, g_name, size):
    z2, b = zmod(2), boolean_semiring()
    objects = {"z2": regular_module(z2, ("right",)), "zero": zero_module(b, ("right",)),
               "z2sq": power_module(z2, 2, ("right",))}
    n = regular_module(b, ("right",)) if n_name == "b" else objects[n_name]
    h = hom_module(n, objects[g_name])
    assert h.size == size
    assert validate_semimodule(h)


@pytest.mark.parametrize("s_name", SMALL_NAMES[:4])
def test_hom_space_matches_brute_force(s_name):
    s = builtin_structure(s_name)
    modules = [regular_module(s), zero_module(s)]
    if s.size == 2:
        modules.append(power_module(s, 2))
    for n, g in itertools.product(modules, repeat=2):
        h = hom_space(n, g, sides=("right",))
        assert sorted(h.maps) == oracles.brute_linear_maps(n, g, ("right",))
        assert validate_semimodule(h.module)


@pytest.mark.parametrize("s_name", SMALL_NAMES)
def test_enumerated_linear_maps_match_brute_force(s_name):
    s = builtin_structure(s_name)
    m = regular_module(s)
    found = sorted(f.table for f in enumerate_maps(m, m, "linear-map"))
    assert found == oracles.brute_linear_maps(m, m, ("left", "right"))


@pytest.mark.parametrize("s_name", ["zmod(2)", "boolean", "zmod(3)"])
def test_composites_of_linear_maps_are_linear(s_name):
    s = builtin_structure(s_name)
    objs = [regular_module(s, ("right",)), zero_module(s, ("right",))]
    if s.size == 2:
        objs.append(power_module(s, 2, ("right",)))
    maps = [f for x, y in itertools.product(objs, repeat=2) for f in enumerate_maps(x, y, "linear-map")]
    for f, g in itertools.product(maps, repeat=2):
        if f.target == g.source:
            assert validate_map(compose(g, f))


def test_identity_maps_validate(fixture_semiring):
    assert validate_map(identity_map(fixture_semiring))
    assert validate_map(identity_map(regular_module(fixture_semiring)))


def test_restriction_along_diagonal():
    z2 = zmod(2)
    p = product_semiring(z2, z2)
    diag = StructureMap("semiring-map", z2, p, (0, 1))
    assert validate_map(diag)
    m = restrict_scalars(regular_module(p), diag, "left")
    assert m.base_left == z2 and validate_semimodule(m)
    assert is_isomorphic(m.carrier, power_module(z2, 2).carrier)


@given(st.sampled_from(FIXTURE_NAMES), st.data())
def test_random_single_mul_fault_detected_iff_oracle_objects(name, data):
    s = builtin_structure(name)
    n = s.size
    row = data.draw(st.integers(0, n - 1))
    col = data.draw(st.integers(0, n - 1))
    value = data.draw(st.integers(0, n - 1))
    mul = [list(r) for r in s.mul]
    mul[row][col] = value
    broken = FiniteSemiring.from_tables(s.add, mul, s.zero, s.one)
    report = validate_semiring(broken)
    assert bool(report) == (oracles.table_semiring_failures(broken.add, broken.mul, 0, broken.one) == [])
    if not report:
        assert oracles.semiring_witness_holds(broken.add, broken.mul, 0, broken.one, report.law_id, report.witness)
