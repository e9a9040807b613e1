"""Congruences, quotients and the cancellative reflection."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from .core import (
    FiniteCommutativeMonoid,
    FiniteSemimodule,
    StructureMap,
)
from .errors import IncompatiblePartition, MalformedPair


class UnionFind:
    """Disjoint sets over ``0..n-1``; the root of each set is its least member."""

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True

    def labels(self) -> tuple[int, ...]:
        """Class index per element, classes numbered by least member."""
        roots = [self.find(x) for x in range(len(self.parent))]
        numbering: dict[int, int] = {}
        for r in roots:
            numbering.setdefault(r, len(numbering))
        return tuple(numbering[r] for r in roots)


@dataclass(frozen=True, eq=False)
class Congruence:
    module: FiniteSemimodule
    class_of: tuple[int, ...]

    @property
    def class_count(self) -> int:
        return max(self.class_of) + 1

    @cached_property
    def classes(self) -> tuple[tuple[int, ...], ...]:
        groups: list[list[int]] = [[] for _ in range(self.class_count)]
        for x, c in enumerate(self.class_of):
            groups[c].append(x)
        return tuple(tuple(g) for g in groups)

    @property
    def representatives(self) -> tuple[int, ...]:
        return tuple(g[0] for g in self.classes)

    def related(self, a: int, b: int) -> bool:
        return self.class_of[a] == self.class_of[b]

    def is_discrete(self) -> bool:
        return self.class_count == self.module.size

    def __eq__(self, other) -> bool:
        return (isinstance(other, Congruence) and self.module == other.module
                and self.class_of == other.class_of)

    def __hash__(self) -> int:
        return hash(self.class_of)


def _scalar_images(m: FiniteSemimodule, x: int) -> Iterable[int]:
    for side in m.sides:
        for s in range(m.base(side).size):
            yield m.act(side, s, x)


def congruence_closure(m: FiniteSemimodule, pairs: Iterable[tuple[int, int]]) -> Congruence:
    """Least congruence containing ``pairs``.

    Every merge re-enqueues the translated pairs ``(a+x, b+x)`` and the
    scaled pairs ``(a·s, b·s)``; the fixpoint is compatible with both.
    """
    n = m.size
    work = []
    for pair in pairs:
        a, b = pair
        if not (0 <= a < n and 0 <= b < n):
            raise MalformedPair(f"pair {pair} outside carrier of size {n}", witness=(a, b))
        work.append((a, b))
    uf = UnionFind(n)
    add = m.add
    while work:
        a, b = work.pop()
        if not uf.union(a, b):
            continue
        for x in range(n):
            work.append((add[a][x], add[b][x]))
        work.extend(zip(_scalar_images(m, a), _scalar_images(m, b)))
    return Congruence(m, uf.labels())


def is_congruence(m: FiniteSemimodule, class_of: tuple[int, ...]) -> tuple[int, ...] | None:
    """Return a witness ``(a, b, ...)`` of incompatibility, or None."""
    reps: dict[int, int] = {}
    for x, c in enumerate(class_of):
        reps.setdefault(c, x)
    for a in range(m.size):
        b = reps[class_of[a]]
        if a == b:
            continue
        for x in range(m.size):
            if class_of[m.add[a][x]] != class_of[m.add[b][x]]:
                return (a, b, x)
        for side in m.sides:
            for s in range(m.base(side).size):
                if class_of[m.act(side, s, a)] != class_of[m.act(side, s, b)]:
                    return (a, b, s)
    return None


def quotient(m: FiniteSemimodule, c: Congruence) -> tuple[FiniteSemimodule, StructureMap]:
    """Quotient module and projection; each class is represented by its least element."""
    if c.module != m:
        raise IncompatiblePartition("congruence belongs to a different module")
    witness = is_congruence(m, c.class_of)
    if witness is not None:
        raise IncompatiblePartition("partition is not compatible with the operations", witness=witness)
    cls, reps = c.class_of, c.representatives
    add = [[cls[m.add[a][b]] for b in reps] for a in reps]
    left = right = None
    if m.left_action is not None:
        left = [[cls[m.left_action[s][a]] for a in reps] for s in range(m.base_left.size)]
    if m.right_action is not None:
        right = [[cls[m.right_action[a][s]] for s in range(m.base_right.size)] for a in reps]
    q = FiniteSemimodule(FiniteCommutativeMonoid(add, cls[m.zero]), left, right,
                         m.base_left, m.base_right, name=m.name)
    return q, StructureMap("linear-map", m, q, cls)


def zero_congruence(m: FiniteSemimodule) -> Congruence:
    """``a ≡ b`` iff ``a + z = b + z`` for some ``z``.

    Read off directly: for each ``z`` the fibres of ``x ↦ x + z`` are related.
    The relation is already transitive, so joining fibres loses nothing.
    """
    uf = UnionFind(m.size)
    for z in range(m.size):
        fibre: dict[int, int] = {}
        for x in range(m.size):
            y = m.add[x][z]
            if y in fibre:
                uf.union(fibre[y], x)
            else:
                fibre[y] = x
    return Congruence(m, uf.labels())


def cancellation_witness(m: FiniteSemimodule | FiniteCommutativeMonoid) -> tuple[int, int, int] | None:
    """First ``(a, b, c)`` with ``b < c`` and ``a + b = a + c``."""
    add = m.add
    for a in range(len(add)):
        seen: dict[int, int] = {}
        for b in range(len(add)):
            y = add[a][b]
            if y in seen:
                return (a, seen[y], b)
            seen[y] = b
    return None


def is_cancellative(m: FiniteSemimodule | FiniteCommutativeMonoid) -> bool:
    return all(len(set(row)) == len(row) for row in m.add)


@dataclass(frozen=True, eq=False)
class ReflectionResult:
    reflected: FiniteSemimodule
    projection: StructureMap
    kernel: tuple[int, ...]


def _as_module(m) -> FiniteSemimodule:
    if isinstance(m, FiniteCommutativeMonoid):
        return FiniteSemimodule(m)
    return m


def cancellative_reflection(m: FiniteSemimodule | FiniteCommutativeMonoid) -> ReflectionResult:
    m = _as_module(m)
    if is_cancellative(m):
        congruence = Congruence(m, tuple(range(m.size)))
    else:
        congruence = zero_congruence(m)
    reflected, projection = quotient(m, congruence)
    zero_class = projection.table[m.zero]
    kernel = tuple(x for x in range(m.size) if projection.table[x] == zero_class)
    return ReflectionResult(reflected, projection, kernel)


def kernel_by_formula(m: FiniteSemimodule) -> tuple[int, ...]:
    """``{x | x + z = z for some z}``, evaluated literally."""
    return tuple(x for x in range(m.size) if any(m.add[x][z] == z for z in range(m.size)))
