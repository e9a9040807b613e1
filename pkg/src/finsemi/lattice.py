"""Finite abelian groups as quotients of integer lattices.

A finite cancellative commutative monoid is a group. ``GroupCoordinates``
writes every element as an integer vector over a greedy generating set, and
``ModularLattice`` keeps a subgroup of ``Z^d`` containing ``D·Z^d`` in
echelon form so that cosets have canonical representatives.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .core import FiniteCommutativeMonoid
from .errors import NotCancellative


def extended_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``a·x + b·y = g = gcd(a, b) >= 0``."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


@dataclass
class ModularLattice:
    """A lattice ``L`` with ``modulus·Z^dim ⊆ L ⊆ Z^dim`` in echelon form.

    Row ``c`` has its leading entry (the pivot) in column ``c``; pivots divide
    the modulus, so entries beyond the pivot may be kept modulo the modulus.
    """

    dim: int
    modulus: int
    rows: list[list[int]] = field(default_factory=list)

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError("modulus must be positive")
        if not self.rows:
            self.rows = [[self.modulus if k == c else 0 for k in range(self.dim)] for c in range(self.dim)]

    @property
    def pivots(self) -> list[int]:
        return [self.rows[c][c] for c in range(self.dim)]

    @property
    def index(self) -> int:
        """Order of ``Z^dim / L``."""
        return math.prod(self.pivots)

    def insert(self, vector) -> None:
        d, big = self.dim, self.modulus
        v = [int(x) % big for x in vector]
        for c in range(d):
            if v[c] == 0:
                continue
            row = self.rows[c]
            p = row[c]
            if v[c] % p == 0:
                q = v[c] // p
                for k in range(c, d):
                    v[k] = (v[k] - q * row[k]) % big
                continue
            g, x, y = extended_gcd(p, v[c])
            a, b = p // g, v[c] // g
            new_row = [0] * d
            rest = [0] * d
            for k in range(c, d):
                new_row[k] = (x * row[k] + y * v[k]) % big
                rest[k] = (a * v[k] - b * row[k]) % big
            new_row[c] = g
            self.rows[c] = new_row
            v = rest
        # v is now zero modulo the lattice

    def reduce(self, vector) -> tuple[int, ...]:
        """Canonical coset representative with ``0 <= v[c] < pivot[c]``."""
        d, big = self.dim, self.modulus
        v = [int(x) % big for x in vector]
        for c in range(d):
            row = self.rows[c]
            p = row[c]
            q = v[c] // p
            if q:
                for k in range(c, d):
                    v[k] = (v[k] - q * row[k]) % big
        return tuple(v)

    def contains(self, vector) -> bool:
        return not any(self.reduce(vector))


def lattice_basis(lattice: ModularLattice) -> list[tuple[int, ...]]:
    return [tuple(lattice.rows[c]) for c in range(lattice.dim) if lattice.rows[c][c] != lattice.modulus]


@dataclass
class GroupCoordinates:
    """Coordinates of a finite abelian group over a greedy generating set.

    ``vectors[x]`` is an integer vector ``w`` with ``x = Σ w_i·g_i``; the
    relation lattice is generated by ``exponent·e_i`` and the Schreier
    relations ``w(x) + e_i - w(x + g_i)``.
    """

    group: FiniteCommutativeMonoid
    generators: list[int]
    vectors: list[tuple[int, ...]]
    exponent: int
    relations: ModularLattice

    @property
    def rank(self) -> int:
        return len(self.generators)


def element_order(group: FiniteCommutativeMonoid, x: int) -> int:
    k, y = 1, x
    while y != group.zero:
        y = group.add[y][x]
        k += 1
    return k


def group_coordinates(group: FiniteCommutativeMonoid) -> GroupCoordinates:
    n = group.size
    add = group.add
    if any(len(set(row)) != n for row in add):
        raise NotCancellative("group coordinates need a cancellative monoid")
    generators: list[int] = []
    reached = {group.zero}
    for x in range(n):
        if x in reached:
            continue
        generators.append(x)
        frontier = list(reached)
        while frontier:
            fresh = []
            for y in frontier:
                for g in generators:
                    z = add[y][g]
                    if z not in reached:
                        reached.add(z)
                        fresh.append(z)
            frontier = fresh
    r = len(generators)
    vectors: list[tuple[int, ...] | None] = [None] * n
    vectors[group.zero] = (0,) * r
    queue = deque([group.zero])
    while queue:
        y = queue.popleft()
        for i, g in enumerate(generators):
            z = add[y][g]
            if vectors[z] is None:
                w = list(vectors[y])
                w[i] += 1
                vectors[z] = tuple(w)
                queue.append(z)
    exponent = 1
    for g in generators:
        exponent = math.lcm(exponent, element_order(group, g))
    relations = ModularLattice(r, exponent)
    for y in range(n):
        wy = vectors[y]
        for i, g in enumerate(generators):
            wz = vectors[add[y][g]]
            relations.insert([wy[k] + (k == i) - wz[k] for k in range(r)])
    return GroupCoordinates(group, generators, vectors, exponent, relations)


def mixed_radix_elements(radices: list[int]) -> np.ndarray:
    """All vectors ``v`` with ``0 <= v[c] < radices[c]``, first coordinate fastest."""
    total = math.prod(radices)
    idx = np.arange(total, dtype=np.int64)
    out = np.zeros((total, len(radices)), dtype=np.int64)
    weight = 1
    for c, p in enumerate(radices):
        out[:, c] = (idx // weight) % p
        weight *= p
    return out
