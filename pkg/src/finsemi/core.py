"""Finite semirings, semimodules and the maps between them.

Every carrier is the index set ``0..n-1``. Operations are stored as integer
tables (tuples of tuples) and every axiom is decided by exhaustive
enumeration. Zero is index 0; in a semiring the multiplicative unit is index 1.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence, Union

import numpy as np

from .errors import (
    BaseMismatch,
    InvalidParameter,
    KindMismatch,
    MalformedTable,
    MissingAction,
    SizeCapExceeded,
    UnknownFixture,
)

Table = tuple[tuple[int, ...], ...]

MAP_KINDS = ("monoid-map", "semiring-map", "linear-map")
SIDES = ("left", "right")


def as_table(rows, n_rows: int, n_cols: int, n_values: int, what: str = "table") -> Table:
    """Normalise ``rows`` into a tuple table, checking its shape and range."""
    try:
        result = tuple(tuple(int(v) for v in row) for row in rows)
    except (TypeError, ValueError) as exc:
        raise MalformedTable(f"{what}: entries must be integers") from exc
    if len(result) != n_rows:
        raise MalformedTable(f"{what}: expected {n_rows} rows, got {len(result)}")
    for i, row in enumerate(result):
        if len(row) != n_cols:
            raise MalformedTable(f"{what}: row {i} has {len(row)} entries, expected {n_cols}")
        for v in row:
            if not 0 <= v < n_values:
                raise MalformedTable(f"{what}: entry {v} in row {i} out of range 0..{n_values - 1}")
    return result


def as_vector(values, length: int, n_values: int, what: str = "table") -> tuple[int, ...]:
    return as_table([values], 1, length, n_values, what)[0]


class _CachedKey:
    """Equality and hashing through a cached ``_key`` tuple.

    Tables can be large, so the hash is computed once per instance.
    """

    @cached_property
    def _hash(self) -> int:
        return hash(self._key)

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if type(other) is not type(self):
            return NotImplemented
        return self._hash == other._hash and self._key == other._key


@dataclass(frozen=True, eq=False)
class FiniteCommutativeMonoid(_CachedKey):
    add: Table
    zero: int = 0

    def __post_init__(self):
        n = len(self.add)
        if n == 0:
            raise MalformedTable("a carrier needs at least one element")
        object.__setattr__(self, "add", as_table(self.add, n, n, n, "add"))
        if not 0 <= self.zero < n:
            raise MalformedTable(f"zero index {self.zero} out of range")

    @property
    def size(self) -> int:
        return len(self.add)

    @cached_property
    def _key(self):
        return (self.add, self.zero)

    @cached_property
    def array(self) -> np.ndarray:
        return np.asarray(self.add, dtype=np.int64)

    def sum(self, elements: Iterable[int]) -> int:
        total = self.zero
        for x in elements:
            total = self.add[total][x]
        return total

    def multiple(self, x: int, k: int) -> int:
        total = self.zero
        for _ in range(k):
            total = self.add[total][x]
        return total


@dataclass(frozen=True, eq=False)
class FiniteSemiring(_CachedKey):
    additive: FiniteCommutativeMonoid
    mul: Table
    one: int = 1
    name: str = field(default="", compare=False)

    def __post_init__(self):
        n = self.additive.size
        object.__setattr__(self, "mul", as_table(self.mul, n, n, n, "mul"))
        if not 0 <= self.one < n:
            raise MalformedTable(f"one index {self.one} out of range")

    @classmethod
    def from_tables(cls, add, mul, zero: int = 0, one: int = 1, name: str = "") -> "FiniteSemiring":
        return cls(FiniteCommutativeMonoid(add, zero), mul, one, name)

    @property
    def size(self) -> int:
        return self.additive.size

    @property
    def add(self) -> Table:
        return self.additive.add

    @property
    def zero(self) -> int:
        return self.additive.zero

    @cached_property
    def _key(self):
        return (self.additive._key, self.mul, self.one)

    def __repr__(self) -> str:
        return f"FiniteSemiring({self.name or '?'}, size={self.size})"


@dataclass(frozen=True, eq=False)
class FiniteSemimodule(_CachedKey):
    """A commutative monoid with up to two semiring actions.

    ``left_action[s][m]`` is ``s·m`` and ``right_action[m][s]`` is ``m·s``.
    """

    carrier: FiniteCommutativeMonoid
    left_action: Table | None = None
    right_action: Table | None = None
    base_left: FiniteSemiring | None = None
    base_right: FiniteSemiring | None = None
    name: str = field(default="", compare=False)

    def __post_init__(self):
        n = self.carrier.size
        if self.left_action is not None:
            if self.base_left is None:
                raise MissingAction("left action given without a base semiring")
            object.__setattr__(
                self, "left_action",
                as_table(self.left_action, self.base_left.size, n, n, "left_action"))
        elif self.base_left is not None:
            raise MissingAction("left base semiring given without an action table")
        if self.right_action is not None:
            if self.base_right is None:
                raise MissingAction("right action given without a base semiring")
            object.__setattr__(
                self, "right_action",
                as_table(self.right_action, n, self.base_right.size, n, "right_action"))
        elif self.base_right is not None:
            raise MissingAction("right base semiring given without an action table")

    @property
    def size(self) -> int:
        return self.carrier.size

    @property
    def add(self) -> Table:
        return self.carrier.add

    @property
    def zero(self) -> int:
        return self.carrier.zero

    @property
    def sides(self) -> tuple[str, ...]:
        return tuple(side for side in SIDES if self.action(side) is not None)

    def action(self, side: str) -> Table | None:
        return self.left_action if side == "left" else self.right_action

    def base(self, side: str) -> FiniteSemiring | None:
        return self.base_left if side == "left" else self.base_right

    def act(self, side: str, scalar: int, element: int) -> int:
        if side == "left":
            return self.left_action[scalar][element]
        return self.right_action[element][scalar]

    def require(self, side: str) -> FiniteSemiring:
        base = self.base(side)
        if base is None:
            raise MissingAction(f"{self.name or 'module'} has no {side} action")
        return base

    @cached_property
    def _key(self):
        return (
            self.carrier._key,
            self.left_action,
            self.right_action,
            None if self.base_left is None else self.base_left._key,
            None if self.base_right is None else self.base_right._key,
        )

    def __repr__(self) -> str:
        return f"FiniteSemimodule({self.name or '?'}, size={self.size}, sides={self.sides})"


Structure = Union[FiniteCommutativeMonoid, FiniteSemiring, FiniteSemimodule]


def carrier_of(x: Structure) -> FiniteCommutativeMonoid:
    if isinstance(x, FiniteCommutativeMonoid):
        return x
    if isinstance(x, FiniteSemiring):
        return x.additive
    return x.carrier


@dataclass(frozen=True, eq=False)
class StructureMap(_CachedKey):
    kind: str
    source: Structure
    target: Structure
    table: tuple[int, ...]

    def __post_init__(self):
        if self.kind not in MAP_KINDS:
            raise KindMismatch(f"unknown map kind {self.kind!r}")
        object.__setattr__(
            self, "table", as_vector(self.table, self.source.size, self.target.size, "map"))

    def __call__(self, x: int) -> int:
        return self.table[x]

    @cached_property
    def _key(self):
        return (self.kind, self.source, self.target, self.table)

    def is_bijective(self) -> bool:
        return self.source.size == self.target.size and len(set(self.table)) == self.source.size

    def then(self, after: "StructureMap") -> "StructureMap":
        return compose(after, self)

    def __repr__(self) -> str:
        return f"StructureMap({self.kind}, {self.source.size}->{self.target.size})"


def compose(*maps: StructureMap) -> StructureMap:
    """Right-to-left composite: ``compose(g, f)`` is ``g∘f``."""
    if not maps:
        raise InvalidParameter("compose needs at least one map")
    result = maps[-1]
    for outer in reversed(maps[:-1]):
        if outer.source != result.target:
            raise KindMismatch(
                f"cannot compose: target of size {result.target.size} "
                f"is not the source of size {outer.source.size}")
        kind = outer.kind if outer.kind == result.kind else "monoid-map"
        table = tuple(outer.table[y] for y in result.table)
        result = StructureMap(kind, result.source, outer.target, table)
    return result


def default_kind(x: Structure) -> str:
    if isinstance(x, FiniteSemiring):
        return "semiring-map"
    if isinstance(x, FiniteSemimodule):
        return "linear-map"
    return "monoid-map"


def identity_map(x: Structure, kind: str | None = None) -> StructureMap:
    return StructureMap(kind or default_kind(x), x, x, tuple(range(x.size)))


def zero_map(source: Structure, target: Structure, kind: str | None = None) -> StructureMap:
    return StructureMap(kind or default_kind(source), source, target,
                        (carrier_of(target).zero,) * source.size)


@dataclass(frozen=True)
class LawReport:
    passed: bool
    law_id: str = "all"
    witness: tuple[int, ...] = ()
    detail: str = ""

    @classmethod
    def ok(cls, detail: str = "") -> "LawReport":
        return cls(True, "all", (), detail)

    @classmethod
    def fail(cls, law_id: str, witness: Sequence[int] = (), detail: str = "") -> "LawReport":
        return cls(False, law_id, tuple(int(w) for w in witness), detail)

    def __bool__(self) -> bool:
        return self.passed

    def prefixed(self, prefix: str) -> "LawReport":
        if self.passed:
            return self
        return LawReport(False, f"{prefix}{self.law_id}", self.witness, self.detail)

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "law_id": self.law_id,
            "witness": list(self.witness),
            "detail": self.detail,
        }


def first_failure(reports: Iterable[LawReport], detail: str = "") -> LawReport:
    """Return the first failing report, or a passing one."""
    for report in reports:
        if not report.passed:
            return report
    return LawReport.ok(detail)


def _mismatch(lhs: np.ndarray, rhs: np.ndarray) -> tuple[int, ...] | None:
    bad = np.argwhere(lhs != rhs)
    if len(bad) == 0:
        return None
    return tuple(int(v) for v in bad[0])


def _check_binary_laws(table: np.ndarray, prefix: str, commutative: bool) -> LawReport:
    n = table.shape[0]
    if commutative:
        witness = _mismatch(table, table.T)
        if witness:
            a, b = witness
            return LawReport.fail(
                f"{prefix}-commutative", witness,
                f"{a}{prefix[0]}{b}={table[a, b]} but {b}{prefix[0]}{a}={table[b, a]}")
    chunk = max(1, 2 ** 22 // (n * n))
    for start in range(0, n, chunk):
        rows = table[start:start + chunk]
        lhs = table[rows]                     # (a∘b)∘c
        rhs = table[np.arange(start, min(n, start + chunk))[:, None, None], table[None, :, :]]
        witness = _mismatch(lhs, rhs)
        if witness:
            a, b, c = witness
            a += start
            return LawReport.fail(
                f"{prefix}-associative", (a, b, c),
                f"({a}{prefix[0]}{b}){prefix[0]}{c}={lhs[a - start, b, c]} "
                f"but {a}{prefix[0]}({b}{prefix[0]}{c})={rhs[a - start, b, c]}")
    return LawReport.ok()


def validate_monoid(m: FiniteCommutativeMonoid) -> LawReport:
    table = m.array
    report = _check_binary_laws(table, "add", commutative=True)
    if not report:
        return report
    for a in range(m.size):
        if m.add[a][m.zero] != a:
            return LawReport.fail("add-identity", (a,), f"{a}+0={m.add[a][m.zero]}")
    return LawReport.ok()


def validate_semiring(s: FiniteSemiring) -> LawReport:
    report = validate_monoid(s.additive)
    if not report:
        return report
    z, mul, add = s.zero, s.mul, s.add
    for x in range(s.size):
        if mul[z][x] != z:
            return LawReport.fail("zero-absorbing", (z, x), f"0·{x}={mul[z][x]}")
        if mul[x][z] != z:
            return LawReport.fail("zero-absorbing", (x, z), f"{x}·0={mul[x][z]}")
    table = np.asarray(mul, dtype=np.int64)
    report = _check_binary_laws(table, "mul", commutative=False)
    if not report:
        return report
    for x in range(s.size):
        if mul[s.one][x] != x or mul[x][s.one] != x:
            return LawReport.fail("mul-identity", (x,), f"1·{x}={mul[s.one][x]}, {x}·1={mul[x][s.one]}")
    add_arr = s.additive.array
    # a·(b+c) against a·b + a·c, indexed [a, b, c]
    lhs = table[np.arange(s.size)[:, None, None], add_arr[None, :, :]]
    rhs = add_arr[table[:, :, None], table[:, None, :]]
    witness = _mismatch(lhs, rhs)
    if witness:
        a, b, c = witness
        return LawReport.fail("left-distributive", witness,
                              f"{a}·({b}+{c})={lhs[witness]} but {a}·{b}+{a}·{c}={rhs[witness]}")
    # (a+b)·c against a·c + b·c
    lhs = table[add_arr[:, :, None], np.arange(s.size)[None, None, :]]
    rhs = add_arr[table[:, None, :], table[None, :, :]]
    witness = _mismatch(lhs, rhs)
    if witness:
        a, b, c = witness
        return LawReport.fail("right-distributive", witness,
                              f"({a}+{b})·{c}={lhs[witness]} but {a}·{c}+{b}·{c}={rhs[witness]}")
    if s.one == z:
        return LawReport.fail("nontrivial", (s.one,), "one equals zero")
    del add
    return LawReport.ok()


def _action_report(m: FiniteSemimodule, side: str) -> LawReport:
    base = m.require(side)
    report = validate_semiring(base).prefixed("base-")
    if not report:
        return report
    act = lambda s, x: m.act(side, s, x)  # noqa: E731
    add, badd, bmul = m.add, base.add, base.mul
    tag = side
    for s, t, x in itertools.product(range(base.size), range(base.size), range(m.size)):
        # left: (st)·m = s·(t·m); right: m·(st) = (m·s)·t
        if side == "left":
            lhs, rhs = act(bmul[s][t], x), act(s, act(t, x))
        else:
            lhs, rhs = act(bmul[s][t], x), act(t, act(s, x))
        if lhs != rhs:
            return LawReport.fail(f"{tag}-action-associative", (s, t, x),
                                  f"scalars {s},{t} on {x}: {lhs} vs {rhs}")
    for s, x, y in itertools.product(range(base.size), range(m.size), range(m.size)):
        lhs, rhs = act(s, add[x][y]), add[act(s, x)][act(s, y)]
        if lhs != rhs:
            return LawReport.fail(f"{tag}-action-additive", (s, x, y),
                                  f"scalar {s} on {x}+{y}: {lhs} vs {rhs}")
    for s, t, x in itertools.product(range(base.size), range(base.size), range(m.size)):
        lhs, rhs = act(badd[s][t], x), add[act(s, x)][act(t, x)]
        if lhs != rhs:
            return LawReport.fail(f"{tag}-scalar-additive", (s, t, x),
                                  f"scalar {s}+{t} on {x}: {lhs} vs {rhs}")
    for x in range(m.size):
        if act(base.one, x) != x:
            return LawReport.fail("unit-action", (x,), f"{tag} unit on {x} gives {act(base.one, x)}")
    for x in range(m.size):
        if act(base.zero, x) != m.zero:
            return LawReport.fail("zero-action", (x,), f"{tag} zero scalar on {x} gives {act(base.zero, x)}")
    for s in range(base.size):
        if act(s, m.zero) != m.zero:
            return LawReport.fail("zero-action", (s,), f"{tag} scalar {s} on zero gives {act(s, m.zero)}")
    return LawReport.ok()


def validate_semimodule(m: FiniteSemimodule) -> LawReport:
    report = validate_monoid(m.carrier)
    if not report:
        return report
    for side in m.sides:
        report = _action_report(m, side)
        if not report:
            return report
    if m.left_action is not None and m.right_action is not None:
        la, ra = m.left_action, m.right_action
        for s, x, t in itertools.product(range(m.base_left.size), range(m.size), range(m.base_right.size)):
            if ra[la[s][x]][t] != la[s][ra[x][t]]:
                return LawReport.fail("bimodule-compatible", (s, x, t),
                                      f"({s}·{x})·{t}={ra[la[s][x]][t]} but {s}·({x}·{t})={la[s][ra[x][t]]}")
    return LawReport.ok()


def validate_structure(x: Structure) -> LawReport:
    if isinstance(x, FiniteSemiring):
        return validate_semiring(x)
    if isinstance(x, FiniteSemimodule):
        return validate_semimodule(x)
    return validate_monoid(x)


def shared_sides(source: FiniteSemimodule, target: FiniteSemimodule) -> tuple[str, ...]:
    """Sides on which both modules are acted on; the bases there must agree."""
    sides = []
    for side in SIDES:
        if source.action(side) is not None and target.action(side) is not None:
            if source.base(side) != target.base(side):
                raise BaseMismatch(f"{side} base semirings differ")
            sides.append(side)
    return tuple(sides)


def validate_map(f: StructureMap) -> LawReport:
    src, tgt = f.source, f.target
    if f.kind == "semiring-map" and not (isinstance(src, FiniteSemiring) and isinstance(tgt, FiniteSemiring)):
        raise KindMismatch("semiring-map needs semirings on both ends")
    if f.kind == "linear-map" and not (isinstance(src, FiniteSemimodule) and isinstance(tgt, FiniteSemimodule)):
        raise KindMismatch("linear-map needs semimodules on both ends")
    s_add, t_add = carrier_of(src), carrier_of(tgt)
    table = f.table
    if table[s_add.zero] != t_add.zero:
        return LawReport.fail("preserve-zero", (s_add.zero,), f"f(0)={table[s_add.zero]}")
    for a, b in itertools.product(range(src.size), repeat=2):
        lhs, rhs = table[s_add.add[a][b]], t_add.add[table[a]][table[b]]
        if lhs != rhs:
            return LawReport.fail("preserve-add", (a, b), f"f({a}+{b})={lhs} but f({a})+f({b})={rhs}")
    if f.kind == "semiring-map":
        for a, b in itertools.product(range(src.size), repeat=2):
            lhs, rhs = table[src.mul[a][b]], tgt.mul[table[a]][table[b]]
            if lhs != rhs:
                return LawReport.fail("preserve-mul", (a, b), f"f({a}·{b})={lhs} but f({a})·f({b})={rhs}")
        if table[src.one] != tgt.one:
            return LawReport.fail("preserve-one", (src.one,), f"f(1)={table[src.one]}")
    if f.kind == "linear-map":
        for side in shared_sides(src, tgt):
            for s, x in itertools.product(range(src.base(side).size), range(src.size)):
                lhs, rhs = table[src.act(side, s, x)], tgt.act(side, s, table[x])
                if lhs != rhs:
                    return LawReport.fail(f"preserve-{side}-action", (s, x),
                                          f"f({side} {s} on {x})={lhs} but {side} {s} on f({x})={rhs}")
    return LawReport.ok()


# ---------------------------------------------------------------------------
# Morphism search: assign images to generators, propagate through operations.

class _MapSearch:
    """Backtracking search for operation-preserving maps.

    ``binary`` holds pairs of tables (source op, target op); ``unary`` holds
    pairs of vectors (source unary op, target unary op), one per scalar.
    """

    def __init__(self, n_source: int, n_target: int, binary, unary, fixed: dict[int, int],
                 injective: bool = False):
        self.n_source, self.n_target = n_source, n_target
        self.binary, self.unary = binary, unary
        self.fixed = fixed
        self.injective = injective

    def _close(self, reached: list[int], seen: list[bool], start: Iterable[int]) -> None:
        queue = [x for x in start if not seen[x]]
        for x in queue:
            seen[x] = True
        while queue:
            x = queue.pop()
            reached.append(x)
            fresh = []
            for src_op, _ in self.binary:
                for z in reached:
                    fresh.append(src_op[x][z])
                    fresh.append(src_op[z][x])
            for src_vec, _ in self.unary:
                fresh.append(src_vec[x])
            for y in fresh:
                if not seen[y]:
                    seen[y] = True
                    queue.append(y)

    def generators(self) -> list[int]:
        seen = [False] * self.n_source
        reached: list[int] = []
        self._close(reached, seen, self.fixed)
        gens = []
        for x in range(self.n_source):
            if not seen[x]:
                gens.append(x)
                self._close(reached, seen, [x])
        return gens

    def _assign(self, images, owner, assigned, x, v, trail) -> bool:
        queue = [(x, v)]
        while queue:
            x, v = queue.pop()
            current = images[x]
            if current >= 0:
                if current != v:
                    return False
                continue
            if self.injective:
                if owner[v] >= 0:
                    return False
                owner[v] = x
            images[x] = v
            trail.append(x)
            for src_op, tgt_op in self.binary:
                for z in assigned:
                    w = images[z]
                    queue.append((src_op[x][z], tgt_op[v][w]))
                    queue.append((src_op[z][x], tgt_op[w][v]))
                queue.append((src_op[x][x], tgt_op[v][v]))
            for src_vec, tgt_vec in self.unary:
                queue.append((src_vec[x], tgt_vec[v]))
            assigned.append(x)
        return True

    def _undo(self, images, owner, assigned, trail):
        for x in trail:
            if self.injective:
                owner[images[x]] = -1
            images[x] = -1
        del assigned[len(assigned) - len(trail):]

    def search(self) -> Iterator[tuple[int, ...]]:
        images = [-1] * self.n_source
        owner = [-1] * self.n_target
        assigned: list[int] = []
        trail: list[int] = []
        for x, v in self.fixed.items():
            if not self._assign(images, owner, assigned, x, v, trail):
                return
        gens = self.generators()

        def extend(depth: int):
            if depth == len(gens):
                yield tuple(images)
                return
            g = gens[depth]
            if images[g] >= 0:
                yield from extend(depth + 1)
                return
            for v in range(self.n_target):
                step: list[int] = []
                if self._assign(images, owner, assigned, g, v, step):
                    yield from extend(depth + 1)
                self._undo(images, owner, assigned, step)

        yield from extend(0)


def _column(table: Table, j: int) -> tuple[int, ...]:
    return tuple(row[j] for row in table)


def _search_for(source: Structure, target: Structure, kind: str, sides: Sequence[str] | None,
                injective: bool) -> _MapSearch:
    s_add, t_add = carrier_of(source), carrier_of(target)
    binary = [(s_add.add, t_add.add)]
    unary = []
    fixed = {s_add.zero: t_add.zero}
    if kind == "semiring-map":
        binary.append((source.mul, target.mul))
        fixed[source.one] = target.one
    elif kind == "linear-map":
        if sides is None:
            sides = shared_sides(source, target)
        for side in sides:
            base = source.require(side)
            if target.base(side) != base:
                raise BaseMismatch(f"{side} base semirings differ")
            for s in range(base.size):
                if side == "left":
                    unary.append((source.left_action[s], target.left_action[s]))
                else:
                    unary.append((_column(source.right_action, s), _column(target.right_action, s)))
    return _MapSearch(source.size, target.size, binary, unary, fixed, injective)


def enumerate_maps(source: Structure, target: Structure, kind: str | None = None,
                   sides: Sequence[str] | None = None, cap: int | None = None) -> list[StructureMap]:
    """All structure maps of the given kind, sorted by table.

    For linear maps ``sides`` selects which actions must be preserved; by
    default every action present on both ends.
    """
    kind = kind or default_kind(source)
    search = _search_for(source, target, kind, sides, injective=False)
    tables = []
    for table in search.search():
        tables.append(table)
        if cap is not None and len(tables) > cap:
            raise SizeCapExceeded(len(tables), cap, "hom-set")
    return [StructureMap(kind, source, target, t) for t in sorted(tables)]


def generating_set(x: Structure, kind: str | None = None, sides: Sequence[str] | None = None) -> list[int]:
    """Greedy generating set under the operations relevant to ``kind``."""
    kind = kind or default_kind(x)
    return _search_for(x, x, kind, sides, injective=False).generators()


def find_isomorphism(x: Structure, y: Structure, kind: str | None = None,
                     sides: Sequence[str] | None = None) -> StructureMap | None:
    if x.size != y.size:
        return None
    kind = kind or default_kind(x)
    if kind == "linear-map" and sides is None:
        if x.sides != y.sides:
            return None
        sides = x.sides
    search = _search_for(x, y, kind, sides, injective=True)
    for table in search.search():
        return StructureMap(kind, x, y, table)
    return None


def is_isomorphic(x: Structure, y: Structure, kind: str | None = None,
                  sides: Sequence[str] | None = None) -> bool:
    return find_isomorphism(x, y, kind, sides) is not None


# ---------------------------------------------------------------------------
# Hom modules

@dataclass(frozen=True, eq=False)
class HomSpace:
    source: FiniteSemimodule
    target: FiniteSemimodule
    maps: tuple[tuple[int, ...], ...]
    module: FiniteSemimodule

    @cached_property
    def index(self) -> dict[tuple[int, ...], int]:
        return {t: i for i, t in enumerate(self.maps)}

    def as_map(self, i: int) -> StructureMap:
        return StructureMap("linear-map", self.source, self.target, self.maps[i])


def hom_space(n: FiniteSemimodule, g: FiniteSemimodule, sides: Sequence[str] | None = None,
              cap: int | None = 4096) -> HomSpace:
    """Linear maps ``n -> g`` with pointwise addition.

    Maps are linear for ``sides`` (default: every side acting on both). Any
    remaining action on ``n`` induces an action on the hom set from the other
    side: ``(φ·s)(x) = φ(s·x)`` and ``(s·φ)(x) = φ(x·s)``.
    """
    if sides is None:
        sides = shared_sides(n, g)
    maps = tuple(f.table for f in enumerate_maps(n, g, "linear-map", sides, cap))
    index = {t: i for i, t in enumerate(maps)}
    gadd = g.add
    add = [[index[tuple(gadd[a][b] for a, b in zip(f, h))] for h in maps] for f in maps]
    left = right = None
    base_left = base_right = None
    if "left" not in sides and n.left_action is not None:
        base_right = n.base_left
        right = [[index[tuple(f[n.left_action[s][x]] for x in range(n.size))]
                  for s in range(base_right.size)] for f in maps]
    if "right" not in sides and n.right_action is not None:
        base_left = n.base_right
        left = [[index[tuple(f[n.right_action[x][s]] for x in range(n.size))] for f in maps]
                for s in range(base_left.size)]
    module = FiniteSemimodule(FiniteCommutativeMonoid(add, 0), left, right, base_left, base_right,
                              name=f"Hom({n.name},{g.name})")
    return HomSpace(n, g, maps, module)


def hom_module(n: FiniteSemimodule, g: FiniteSemimodule, sides: Sequence[str] | None = None,
               cap: int | None = 4096) -> FiniteSemimodule:
    return hom_space(n, g, sides, cap).module


# ---------------------------------------------------------------------------
# Fixture library

def boolean_semiring() -> FiniteSemiring:
    return FiniteSemiring.from_tables([[0, 1], [1, 1]], [[0, 0], [0, 1]], name="boolean")


def zmod(n: int) -> FiniteSemiring:
    if n < 2:
        raise InvalidParameter("zmod needs n >= 2")
    add = [[(a + b) % n for b in range(n)] for a in range(n)]
    mul = [[(a * b) % n for b in range(n)] for a in range(n)]
    return FiniteSemiring.from_tables(add, mul, name=f"zmod({n})")


def truncated_nat(k: int) -> FiniteSemiring:
    """``{0,...,k}`` with addition and multiplication saturating at ``k``."""
    if k < 1:
        raise InvalidParameter("truncated-nat needs k >= 1")
    n = k + 1
    add = [[min(a + b, k) for b in range(n)] for a in range(n)]
    mul = [[min(a * b, k) for b in range(n)] for a in range(n)]
    return FiniteSemiring.from_tables(add, mul, name=f"truncated-nat({k})")


def chain_lattice(n: int) -> FiniteSemiring:
    """A chain of ``n`` elements with join as sum and meet as product.

    Index 0 is the bottom, index 1 the top, and indices 2.. the interior in
    increasing order.
    """
    if n < 2:
        raise InvalidParameter("chain-lattice needs n >= 2")
    rank = [0, n - 1] + list(range(1, n - 1))
    by_rank = {r: i for i, r in enumerate(rank)}
    add = [[by_rank[max(rank[a], rank[b])] for b in range(n)] for a in range(n)]
    mul = [[by_rank[min(rank[a], rank[b])] for b in range(n)] for a in range(n)]
    return FiniteSemiring.from_tables(add, mul, name=f"chain-lattice({n})")


def _pair_order(n: int, m: int, one: tuple[int, int]) -> list[tuple[int, int]]:
    pairs = [(0, 0), one] + [p for p in itertools.product(range(n), range(m)) if p not in ((0, 0), one)]
    return pairs


def product_semiring(s: FiniteSemiring, t: FiniteSemiring) -> FiniteSemiring:
    pairs = _pair_order(s.size, t.size, (s.one, t.one))
    index = {p: i for i, p in enumerate(pairs)}
    add = [[index[(s.add[a][c], t.add[b][d])] for c, d in pairs] for a, b in pairs]
    mul = [[index[(s.mul[a][c], t.mul[b][d])] for c, d in pairs] for a, b in pairs]
    return FiniteSemiring.from_tables(add, mul, name=f"product({s.name},{t.name})")


_FIXTURE_PATTERN = re.compile(r"^\s*([a-z\-]+)\s*(?:\((.*)\))?\s*$")


def _split_args(text: str) -> list[str]:
    args, depth, current = [], 0, ""
    for ch in text:
        if ch == "," and depth == 0:
            args.append(current.strip())
            current = ""
            continue
        depth += ch == "("
        depth -= ch == ")"
        current += ch
    if current.strip():
        args.append(current.strip())
    return args


def builtin_structure(name: str, *params) -> FiniteSemiring:
    """Look up a fixture semiring by name, e.g. ``builtin_structure("zmod", 4)``.

    A single string such as ``"product(zmod(2),boolean)"`` is parsed as well.
    """
    if not params:
        match = _FIXTURE_PATTERN.match(name)
        if not match:
            raise UnknownFixture(f"cannot parse fixture {name!r}")
        name, inner = match.group(1), match.group(2)
        params = tuple(_split_args(inner)) if inner else ()
    if name == "boolean":
        return boolean_semiring()
    if name == "product":
        if len(params) != 2:
            raise InvalidParameter("product takes two semirings")
        factors = [p if isinstance(p, FiniteSemiring) else builtin_structure(str(p)) for p in params]
        return product_semiring(*factors)
    builders = {"zmod": zmod, "truncated-nat": truncated_nat, "chain-lattice": chain_lattice}
    if name not in builders:
        raise UnknownFixture(f"unknown fixture {name!r}")
    if len(params) != 1:
        raise InvalidParameter(f"{name} takes one integer parameter")
    try:
        value = int(params[0])
    except (TypeError, ValueError) as exc:
        raise InvalidParameter(f"{name} parameter must be an integer") from exc
    return builders[name](value)


def regular_module(s: FiniteSemiring, sides: Sequence[str] = SIDES) -> FiniteSemimodule:
    """``s`` acting on itself by multiplication."""
    left = s.mul if "left" in sides else None
    right = s.mul if "right" in sides else None
    return FiniteSemimodule(s.additive, left, right,
                            s if "left" in sides else None, s if "right" in sides else None,
                            name=s.name)


def zero_module(s: FiniteSemiring, sides: Sequence[str] = SIDES,
                right_base: FiniteSemiring | None = None) -> FiniteSemimodule:
    right_base = right_base or s
    return FiniteSemimodule(
        FiniteCommutativeMonoid([[0]]),
        [[0]] * s.size if "left" in sides else None,
        [[0] * right_base.size] if "right" in sides else None,
        s if "left" in sides else None,
        right_base if "right" in sides else None,
        name="zero")


def power_module(s: FiniteSemiring, k: int, sides: Sequence[str] = SIDES) -> FiniteSemimodule:
    """``s^k`` with coordinatewise structure; coordinate ``i`` has weight ``|s|^i``."""
    if k < 0:
        raise InvalidParameter("power needs k >= 0")
    n = s.size
    tuples = [tuple((x // n ** i) % n for i in range(k)) for x in range(n ** k)]

    def encode(v):
        return sum(c * n ** i for i, c in enumerate(v))

    add = [[encode(tuple(s.add[a][b] for a, b in zip(u, v))) for v in tuples] for u in tuples]
    left = [[encode(tuple(s.mul[c][a] for a in u)) for u in tuples] for c in range(n)]
    right = [[encode(tuple(s.mul[a][c] for a in u)) for c in range(n)] for u in tuples]
    return FiniteSemimodule(
        FiniteCommutativeMonoid(add),
        left if "left" in sides else None,
        right if "right" in sides else None,
        s if "left" in sides else None,
        s if "right" in sides else None,
        name=f"{s.name}^{k}")


def direct_sum(m: FiniteSemimodule, n: FiniteSemimodule) -> FiniteSemimodule:
    """Pairs ``(x, y)`` encoded as ``x + |m|·y``; actions on shared sides."""
    sides = shared_sides(m, n)
    size = m.size * n.size
    decode = [(i % m.size, i // m.size) for i in range(size)]

    def encode(x, y):
        return x + m.size * y

    add = [[encode(m.add[a][c], n.add[b][d]) for c, d in decode] for a, b in decode]
    left = right = None
    if "left" in sides:
        left = [[encode(m.left_action[s][a], n.left_action[s][b]) for a, b in decode]
                for s in range(m.base_left.size)]
    if "right" in sides:
        right = [[encode(m.right_action[a][s], n.right_action[b][s]) for s in range(m.base_right.size)]
                 for a, b in decode]
    return FiniteSemimodule(FiniteCommutativeMonoid(add, encode(m.zero, n.zero)), left, right,
                            m.base_left if left else None, m.base_right if right else None,
                            name=f"{m.name}+{n.name}")


def restrict_scalars(m: FiniteSemimodule, kappa: StructureMap, side: str) -> FiniteSemimodule:
    """Replace the ``side`` action by its pullback along the semiring map ``kappa``."""
    if kappa.kind != "semiring-map":
        raise KindMismatch("restriction of scalars needs a semiring map")
    if m.base(side) != kappa.target:
        raise BaseMismatch(f"{side} base is not the target of the semiring map")
    b = kappa.source
    if side == "left":
        left = [m.left_action[kappa.table[s]] for s in range(b.size)]
        return FiniteSemimodule(m.carrier, left, m.right_action, b, m.base_right, name=m.name)
    right = [[row[kappa.table[s]] for s in range(b.size)] for row in m.right_action]
    return FiniteSemimodule(m.carrier, m.left_action, right, m.base_left, b, name=m.name)


def forget_side(m: FiniteSemimodule, side: str) -> FiniteSemimodule:
    if side == "left":
        return FiniteSemimodule(m.carrier, None, m.right_action, None, m.base_right, name=m.name)
    return FiniteSemimodule(m.carrier, m.left_action, None, m.base_left, None, name=m.name)


def with_name(m: FiniteSemimodule, name: str) -> FiniteSemimodule:
    return FiniteSemimodule(m.carrier, m.left_action, m.right_action, m.base_left, m.base_right, name)


def monoid_module(m: FiniteCommutativeMonoid, name: str = "") -> FiniteSemimodule:
    return FiniteSemimodule(m, name=name)


def linear_map_from_generator(source: FiniteSemimodule, target: FiniteSemimodule, image_of_one: int,
                              side: str = "left") -> StructureMap:
    """The map ``s ↦ s·v`` out of a regular module, with ``v = image_of_one``."""
    base = source.require(side)
    if source.size != base.size:
        raise KindMismatch("source must be the regular module of its base")
    table = tuple(target.act(side, s, image_of_one) for s in range(base.size))
    return StructureMap("linear-map", source, target, table)
