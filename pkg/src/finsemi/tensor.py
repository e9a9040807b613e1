"""The cancellative tensor product ``M ⊠_S N`` and its universal property.

Three constructions are provided and cross-checked in the test-suite:

* ``takahashi_tensor`` builds the free semimodule on ``M×N``, generates the
  symmetric subsemimodule of relation pairs and quotients by the induced
  congruence, exactly as a finite computation.
* ``oracle_tensor`` takes the least congruence containing the bilinearity
  relations and then the cancellative reflection of the quotient.
* ``tensor_product`` uses that a finite cancellative monoid is an abelian
  group: the product is presented as ``Z^(r·r')`` modulo a lattice and
  materialised from canonical coset representatives. This is the workhorse
  for everything downstream.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Callable, Sequence

import numpy as np

from .congruence import UnionFind, cancellative_reflection, congruence_closure, quotient
from .core import (
    FiniteCommutativeMonoid,
    FiniteSemiring,
    FiniteSemimodule,
    LawReport,
    StructureMap,
    Table,
    as_table,
    identity_map,
    regular_module,
)
from .errors import (
    BaseMismatch,
    CongruenceVerificationFailed,
    IllDefined,
    KindMismatch,
    MissingAction,
    NotBalanced,
    SizeCapExceeded,
)
from .lattice import GroupCoordinates, ModularLattice, group_coordinates, lattice_basis, mixed_radix_elements

DEFAULT_CAP = 4096


def middle_base(m: FiniteSemimodule, n: FiniteSemimodule) -> FiniteSemiring:
    if m.base_right is None:
        raise MissingAction("left factor needs a right action")
    if n.base_left is None:
        raise MissingAction("right factor needs a left action")
    if m.base_right != n.base_left:
        raise BaseMismatch("the right base of the left factor differs from the left base of the right factor")
    return m.base_right


# ---------------------------------------------------------------------------
# Free semimodules

@dataclass(frozen=True, eq=False)
class FreeSemimodule:
    """All functions ``labels -> base``; ``f`` has index ``Σ f(x_i)·|base|^i``."""

    base: FiniteSemiring
    labels: tuple

    @property
    def size(self) -> int:
        return self.base.size ** len(self.labels)

    @cached_property
    def weights(self) -> np.ndarray:
        return np.array([self.base.size ** i for i in range(len(self.labels))], dtype=np.int64)

    @cached_property
    def digits(self) -> np.ndarray:
        return mixed_radix_elements([self.base.size] * len(self.labels))

    def encode(self, digits: np.ndarray) -> np.ndarray:
        return digits @ self.weights

    def delta(self, label_index: int, scalar: int | None = None) -> int:
        scalar = self.base.one if scalar is None else scalar
        return int(scalar * self.weights[label_index])

    @cached_property
    def add_array(self) -> np.ndarray:
        s_add = np.asarray(self.base.add, dtype=np.int64)
        d = self.digits
        out = np.empty((self.size, self.size), dtype=np.int64)
        chunk = max(1, 2 ** 22 // max(1, self.size * len(self.labels)))
        for start in range(0, self.size, chunk):
            block = s_add[d[start:start + chunk, None, :], d[None, :, :]]
            out[start:start + chunk] = block @ self.weights
        return out

    def _scaled(self, mul_table: np.ndarray) -> np.ndarray:
        d = self.digits
        return np.stack([mul_table[s][d] @ self.weights for s in range(self.base.size)])

    @cached_property
    def left_scale(self) -> np.ndarray:
        """``left_scale[s, f]`` is ``s·f`` computed pointwise."""
        return self._scaled(np.asarray(self.base.mul, dtype=np.int64))

    @cached_property
    def right_scale(self) -> np.ndarray:
        """``right_scale[s, f]`` is ``f·s`` computed pointwise."""
        return self._scaled(np.asarray(self.base.mul, dtype=np.int64).T)

    @cached_property
    def module(self) -> FiniteSemimodule:
        return FiniteSemimodule(
            FiniteCommutativeMonoid(self.add_array.tolist()),
            self.left_scale.tolist(),
            self.right_scale.T.tolist(),
            self.base, self.base, name=f"free({len(self.labels)})")


def free_semimodule(s: FiniteSemiring, labels: Sequence, cap: int = DEFAULT_CAP) -> FreeSemimodule:
    size = s.size ** len(labels)
    if size > cap:
        raise SizeCapExceeded(size, cap, "free semimodule")
    return FreeSemimodule(s, tuple(labels))


# ---------------------------------------------------------------------------
# Balanced maps, tensor products, isomorphism pairs

@dataclass(frozen=True, eq=False)
class BalancedMap:
    left: FiniteSemimodule
    right: FiniteSemimodule
    target: FiniteCommutativeMonoid
    table: Table

    def __post_init__(self):
        object.__setattr__(self, "table", as_table(
            self.table, self.left.size, self.right.size, self.target.size, "balanced map"))

    def __call__(self, m: int, n: int) -> int:
        return self.table[m][n]

    def check(self) -> LawReport:
        s = middle_base(self.left, self.right)
        m_mod, n_mod, g, b = self.left, self.right, self.target.add, self.table
        for m1 in range(m_mod.size):
            for m2 in range(m_mod.size):
                for n in range(n_mod.size):
                    lhs, rhs = b[m_mod.add[m1][m2]][n], g[b[m1][n]][b[m2][n]]
                    if lhs != rhs:
                        return LawReport.fail("left-additive", (m1, m2, n),
                                              f"β({m1}+{m2},{n})={lhs} but β({m1},{n})+β({m2},{n})={rhs}")
        for m in range(m_mod.size):
            for n1 in range(n_mod.size):
                for n2 in range(n_mod.size):
                    lhs, rhs = b[m][n_mod.add[n1][n2]], g[b[m][n1]][b[m][n2]]
                    if lhs != rhs:
                        return LawReport.fail("right-additive", (m, n1, n2),
                                              f"β({m},{n1}+{n2})={lhs} but β({m},{n1})+β({m},{n2})={rhs}")
        for m in range(m_mod.size):
            for sc in range(s.size):
                for n in range(n_mod.size):
                    lhs, rhs = b[m_mod.right_action[m][sc]][n], b[m][n_mod.left_action[sc][n]]
                    if lhs != rhs:
                        return LawReport.fail("balanced", (m, sc, n),
                                              f"β({m}·{sc},{n})={lhs} but β({m},{sc}·{n})={rhs}")
        return LawReport.ok()


@dataclass(frozen=True, eq=False)
class TensorProduct:
    left: FiniteSemimodule
    right: FiniteSemimodule
    carrier: FiniteSemimodule
    tau_table: Table
    provenance: str
    free: FreeSemimodule | None = None
    free_class: tuple[int, ...] | None = None
    presentation: "TensorPresentation | None" = None

    def tau(self, m: int, n: int) -> int:
        return self.tau_table[m][n]

    @property
    def size(self) -> int:
        return self.carrier.size

    @cached_property
    def balanced_map(self) -> BalancedMap:
        return BalancedMap(self.left, self.right, self.carrier.carrier, self.tau_table)

    @cached_property
    def generator_pairs(self) -> tuple[tuple[int, int], ...]:
        """Pairs whose pure tensors generate the carrier as a monoid."""
        add = self.carrier.add
        reached = {self.carrier.zero}
        chosen: list[tuple[int, int]] = []
        values: list[int] = []
        for m in range(self.left.size):
            for n in range(self.right.size):
                t = self.tau_table[m][n]
                if t in reached:
                    continue
                chosen.append((m, n))
                values.append(t)
                frontier = list(reached)
                while frontier:
                    fresh = []
                    for y in frontier:
                        for v in values:
                            z = add[y][v]
                            if z not in reached:
                                reached.add(z)
                                fresh.append(z)
                    frontier = fresh
        if len(reached) != self.size:
            raise IllDefined("pure tensors do not generate the carrier")
        return tuple(chosen)

    @cached_property
    def _spanning(self) -> tuple[list[int], list[int], list[int]]:
        add = self.carrier.add
        parent = [-1] * self.size
        via = [-1] * self.size
        order = [self.carrier.zero]
        parent[self.carrier.zero] = self.carrier.zero
        queue = deque(order)
        gens = [(k, self.tau_table[m][n]) for k, (m, n) in enumerate(self.generator_pairs)]
        while queue:
            y = queue.popleft()
            for k, t in gens:
                z = add[y][t]
                if parent[z] < 0:
                    parent[z], via[z] = y, k
                    order.append(z)
                    queue.append(z)
        return parent, via, order

    def expand(self, x: int) -> list[tuple[int, int]]:
        """Pairs ``(m, n)`` whose pure tensors sum to ``x``."""
        parent, via, _ = self._spanning
        pairs = []
        while x != self.carrier.zero:
            pairs.append(self.generator_pairs[via[x]])
            x = parent[x]
        return pairs


@dataclass(frozen=True)
class IsoPair:
    forward: StructureMap
    backward: StructureMap

    def verify(self) -> LawReport:
        if self.forward.target != self.backward.source or self.backward.target != self.forward.source:
            return LawReport.fail("iso-shape", (), "forward and backward do not match up")
        f, b = self.forward.table, self.backward.table
        for x in range(self.forward.source.size):
            if b[f[x]] != x:
                return LawReport.fail("backward-after-forward", (x,), f"backward(forward({x}))={b[f[x]]}")
        for y in range(self.backward.source.size):
            if f[b[y]] != y:
                return LawReport.fail("forward-after-backward", (y,), f"forward(backward({y}))={f[b[y]]}")
        return LawReport.ok()

    def inverse(self) -> "IsoPair":
        return IsoPair(self.backward, self.forward)


# ---------------------------------------------------------------------------
# Additive extension along pure tensors

def extend_from_pure(t: TensorProduct, values: Sequence[Sequence[int]],
                     target: FiniteCommutativeMonoid) -> tuple[int, ...]:
    """The additive map on ``t`` sending ``τ(m,n)`` to ``values[m][n]``.

    Built along a spanning tree of pure generators, then verified: additive
    against every generator and matching ``values`` on every pure tensor.
    Raises ``IllDefined`` otherwise.
    """
    parent, via, order = t._spanning
    gens = t.generator_pairs
    gamma = [-1] * t.size
    gamma[t.carrier.zero] = target.zero
    tadd = target.add
    for y in order[1:]:
        m, n = gens[via[y]]
        gamma[y] = tadd[gamma[parent[y]]][values[m][n]]
    g_arr = np.asarray(gamma, dtype=np.int64)
    t_add = t.carrier.carrier.array
    target_add = target.array
    for m, n in gens:
        g = t.tau_table[m][n]
        lhs = g_arr[t_add[:, g]]
        rhs = target_add[g_arr, g_arr[g]]
        bad = np.flatnonzero(lhs != rhs)
        if len(bad):
            x = int(bad[0])
            raise IllDefined(f"extension is not additive at {x} + τ({m},{n})", witness=(x, m, n))
    for m in range(t.left.size):
        for n in range(t.right.size):
            if gamma[t.tau_table[m][n]] != values[m][n]:
                raise IllDefined(f"extension disagrees with the prescribed value at ({m},{n})",
                                 witness=(m, n))
    return tuple(gamma)


def factor_balanced_map(t: TensorProduct, beta: BalancedMap) -> StructureMap:
    """The unique monoid map ``γ: t -> 𝔠(G)`` with ``γ∘τ = 𝔠_G∘β``."""
    if beta.left != t.left or beta.right != t.right:
        raise KindMismatch("balanced map and tensor product have different factors")
    report = beta.check()
    if not report:
        raise NotBalanced(report.detail, witness=report.witness)
    reflection = cancellative_reflection(beta.target)
    c = reflection.projection.table
    values = [[c[v] for v in row] for row in beta.table]
    target = reflection.reflected
    gamma = extend_from_pure(t, values, target.carrier)
    if t.free is not None:
        _check_free_formula(t, beta, c, gamma, target.carrier)
    return StructureMap("monoid-map", t.carrier, target, gamma)


def _check_free_formula(t: TensorProduct, beta: BalancedMap, c, gamma, target) -> None:
    """Evaluate ``γ([f]) = 𝔠(Σ β(m·f(m,n), n))`` on every function ``f``."""
    free, m_mod = t.free, t.left
    for f in range(free.size):
        total = beta.target.zero
        for label, coeff in zip(free.labels, free.digits[f]):
            m, n = label
            total = beta.target.add[total][beta.table[m_mod.right_action[m][int(coeff)]][n]]
        if c[total] != gamma[t.free_class[f]]:
            raise IllDefined(f"extension formula disagrees on free element {f}", witness=(f,))


def induced_map(f: StructureMap, g: StructureMap, source: TensorProduct | None = None,
                target: TensorProduct | None = None, cap: int = DEFAULT_CAP) -> StructureMap:
    """``f ⊠ g`` between the tensor products of sources and targets."""
    source = source or tensor_product(f.source, g.source, cap)
    target = target or tensor_product(f.target, g.target, cap)
    if source.left != f.source or source.right != g.source:
        raise KindMismatch("source tensor does not match the maps")
    if target.left != f.target or target.right != g.target:
        raise KindMismatch("target tensor does not match the maps")
    ft, gt = f.table, g.table
    values = [[target.tau(ft[m], gt[n]) for n in range(source.right.size)] for m in range(source.left.size)]
    table = extend_from_pure(source, values, target.carrier.carrier)
    return StructureMap("linear-map", source.carrier, target.carrier, table)


def map_out_of_tensor(t: TensorProduct, target: FiniteSemimodule,
                      value: Callable[[int, int], int]) -> StructureMap:
    """The linear map determined on pure tensors by ``value(m, n)``."""
    values = [[value(m, n) for n in range(t.right.size)] for m in range(t.left.size)]
    table = extend_from_pure(t, values, target.carrier)
    return StructureMap("linear-map", t.carrier, target, table)


def tensor_isomorphism(t1: TensorProduct, t2: TensorProduct) -> StructureMap | None:
    """The isomorphism ``τ1(m,n) ↦ τ2(m,n)`` if it exists."""
    if t1.left != t2.left or t1.right != t2.right or t1.size != t2.size:
        return None
    try:
        table = extend_from_pure(t1, t2.tau_table, t2.carrier.carrier)
    except IllDefined:
        return None
    if len(set(table)) != t1.size:
        return None
    return StructureMap("monoid-map", t1.carrier, t2.carrier, table)


# ---------------------------------------------------------------------------
# Literal construction from the free semimodule

def _kernel_idempotent(s: FiniteSemiring) -> int:
    """The idempotent of the least ideal of ``(s, +)``: a power of the total sum."""
    omega = s.additive.sum(range(s.size))
    x = omega
    while s.add[x][x] != x:
        x = s.add[x][omega]
    return x


def _free_setup(m: FiniteSemimodule, n: FiniteSemimodule, cap: int):
    s = middle_base(m, n)
    labels = [(a, b) for a in range(m.size) for b in range(n.size)]
    free = free_semimodule(s, labels, cap)

    def delta(a, b):
        return free.delta(a * n.size + b)

    add = free.add_array
    seeds = []
    for b in range(n.size):
        for a1 in range(m.size):
            for a2 in range(m.size):
                seeds.append((delta(m.add[a1][a2], b), int(add[delta(a1, b), delta(a2, b)])))
    for a in range(m.size):
        for b1 in range(n.size):
            for b2 in range(n.size):
                seeds.append((delta(a, n.add[b1][b2]), int(add[delta(a, b1), delta(a, b2)])))
    for a in range(m.size):
        for b in range(n.size):
            for sc in range(s.size):
                seeds.append((delta(m.right_action[a][sc], b), delta(a, n.left_action[sc][b])))
                seeds.append((int(free.left_scale[sc, delta(a, b)]), delta(m.right_action[a][sc], b)))
    return s, free, delta, seeds


def _outer_action_tables(m, n, free, delta, cls, reps):
    """Outer actions on the classes: ``a·[δ(x,y)] = [δ(a·x,y)]`` and ``[δ(x,y)]·b = [δ(x,y·b)]``."""
    s_add = np.asarray(free.base.add, dtype=np.int64)
    digits = free.digits
    cls_arr = np.asarray(cls, dtype=np.int64)
    reps_arr = np.asarray(reps, dtype=np.int64)

    def transported(relabel):
        moved = np.full_like(digits, free.base.zero)
        for k, (a, b) in enumerate(free.labels):
            j = relabel(a, b)
            moved[:, j] = s_add[moved[:, j], digits[:, k]]
        images = cls_arr[free.encode(moved)]
        bad = np.flatnonzero(images != images[reps_arr[cls_arr]])
        if len(bad):
            raise IllDefined("outer action is not well defined on classes", witness=(int(bad[0]),))
        return images[reps_arr].tolist()

    left = right = None
    if m.left_action is not None:
        left = [transported(lambda a, b, sc=sc: m.left_action[sc][a] * n.size + b)
                for sc in range(m.base_left.size)]
    if n.right_action is not None:
        columns = [transported(lambda a, b, sc=sc: a * n.size + n.right_action[b][sc])
                   for sc in range(n.base_right.size)]
        right = [list(row) for row in zip(*columns)]
    return left, right


def takahashi_tensor(m: FiniteSemimodule, n: FiniteSemimodule, cap: int = DEFAULT_CAP) -> TensorProduct:
    """``F/≡`` with ``F`` the free semimodule on ``m×n``.

    ``U'`` is the subsemimodule of ``F×F`` generated by the relation pairs and
    their swaps; ``f ≡ f'`` when ``f+g = f'+g'`` for some ``(g,g') ∈ U'``.
    Since ``U'`` contains the diagonal, this holds exactly when
    ``(f+e, f'+e) ∈ U'`` for the idempotent ``e`` of the least ideal of
    ``(F,+)``. The resulting relation is checked to be a congruence.
    """
    s, free, delta, seeds = _free_setup(m, n, cap)
    size = free.size
    add = free.add_array
    scale = free.left_scale
    gens = set()
    for f, g in seeds:
        for sc in range(s.size):
            a, b = int(scale[sc, f]), int(scale[sc, g])
            gens.add((a, b))
            gens.add((b, a))
    gens.discard((0, 0))
    pairs = np.array(sorted(gens), dtype=np.int64).reshape(-1, 2)
    gen_f, gen_g = pairs[:, 0], pairs[:, 1]

    visited = np.zeros(size * size, dtype=bool)
    visited[0] = True
    frontier = np.array([0], dtype=np.int64)
    budget = max(1, 2 ** 22 // max(1, len(gen_f)))
    while len(frontier):
        fresh = []
        for start in range(0, len(frontier), budget):
            block = frontier[start:start + budget]
            bf, bg = block // size, block % size
            codes = (add[bf[:, None], gen_f[None, :]] * size + add[bg[:, None], gen_g[None, :]]).ravel()
            codes = np.unique(codes)
            codes = codes[~visited[codes]]
            visited[codes] = True
            fresh.append(codes)
        frontier = np.concatenate(fresh) if fresh else np.zeros(0, dtype=np.int64)
    u_prime = visited.reshape(size, size)

    e_scalar = _kernel_idempotent(s)
    e = int(sum(e_scalar * int(w) for w in free.weights))
    shifted = add[:, e]
    ideal = np.unique(shifted)
    position = {int(k): i for i, k in enumerate(ideal)}
    block = u_prime[np.ix_(ideal, ideal)]
    uf = UnionFind(len(ideal))
    for i, j in np.argwhere(block):
        uf.union(int(i), int(j))
    ideal_class = uf.labels()
    groups: dict[int, list[int]] = {}
    for i, c in enumerate(ideal_class):
        groups.setdefault(c, []).append(i)
    for members in groups.values():
        sub = block[np.ix_(members, members)]
        if not sub.all():
            i, j = np.argwhere(~sub)[0]
            raise CongruenceVerificationFailed(
                "relation is not transitive", witness=(int(ideal[members[i]]), int(ideal[members[j]])))

    raw = [ideal_class[position[int(k)]] for k in shifted]
    numbering: dict[int, int] = {}
    for r in raw:
        numbering.setdefault(r, len(numbering))
    cls = np.array([numbering[r] for r in raw], dtype=np.int64)
    count = len(numbering)
    reps = np.zeros(count, dtype=np.int64)
    for f in range(size - 1, -1, -1):
        reps[cls[f]] = f

    rep_of = reps[cls]
    for label_index in range(len(free.labels)):
        for sc in range(s.size):
            h = free.delta(label_index, sc)
            bad = np.flatnonzero(cls[add[:, h]] != cls[add[rep_of, h]])
            if len(bad):
                raise CongruenceVerificationFailed("relation is not compatible with addition",
                                                   witness=(int(bad[0]), h))
    for sc in range(s.size):
        bad = np.flatnonzero(cls[scale[sc]] != cls[scale[sc, rep_of]])
        if len(bad):
            raise CongruenceVerificationFailed("relation is not compatible with the action",
                                               witness=(int(bad[0]), sc))

    carrier_add = cls[add[np.ix_(reps, reps)]].tolist()
    left, right = _outer_action_tables(m, n, free, delta, cls.tolist(), reps.tolist())
    carrier = FiniteSemimodule(
        FiniteCommutativeMonoid(carrier_add), left, right,
        m.base_left if left is not None else None, n.base_right if right is not None else None,
        name=f"{m.name}⊠{n.name}")
    tau = [[int(cls[delta(a, b)]) for b in range(n.size)] for a in range(m.size)]
    return TensorProduct(m, n, carrier, tuple(map(tuple, tau)), "takahashi", free, tuple(cls.tolist()))


def oracle_tensor(m: FiniteSemimodule, n: FiniteSemimodule, cap: int = DEFAULT_CAP) -> TensorProduct:
    """Least congruence on the free semimodule containing the bilinearity
    relations, followed by the cancellative reflection of the quotient.

    The carrier keeps only its additive structure.
    """
    s, free, delta, seeds = _free_setup(m, n, cap)
    module = free.module
    congruence = congruence_closure(module, seeds)
    q, projection = quotient(module, congruence)
    reflection = cancellative_reflection(FiniteSemimodule(q.carrier))
    c = reflection.projection.table
    cls = tuple(c[projection.table[f]] for f in range(free.size))
    tau = tuple(tuple(cls[delta(a, b)] for b in range(n.size)) for a in range(m.size))
    carrier = FiniteSemimodule(reflection.reflected.carrier, name=f"{m.name}⊠{n.name}")
    return TensorProduct(m, n, carrier, tau, "oracle", free, cls)


# ---------------------------------------------------------------------------
# Group presentation engine

class TensorPresentation:
    """``M ⊠_S N`` as ``Z^(r·r') / Λ``.

    With ``g_i`` generating ``𝔠(M)`` and ``h_j`` generating ``𝔠(N)``, the
    coordinate ``(i, j)`` stands for ``g_i ⊗ h_j``. ``Λ`` is spanned by the
    relations of ``𝔠(M)`` tensored with each ``e_j``, those of ``𝔠(N)``
    tensored with each ``e_i``, and the balance relations
    ``w(g_i·s) ⊗ e_j - e_i ⊗ w(s·h_j)``; it contains ``D·Z^(r·r')`` for
    ``D = gcd(exp 𝔠(M), exp 𝔠(N))``.
    """

    def __init__(self, m: FiniteSemimodule, n: FiniteSemimodule):
        s = middle_base(m, n)
        self.left, self.right, self.base = m, n, s
        self.left_reflection = cancellative_reflection(m)
        self.right_reflection = cancellative_reflection(n)
        cm, cn = self.left_reflection.reflected, self.right_reflection.reflected
        self.coords_left: GroupCoordinates = group_coordinates(cm.carrier)
        self.coords_right: GroupCoordinates = group_coordinates(cn.carrier)
        r, r2 = self.coords_left.rank, self.coords_right.rank
        self.shape = (r, r2)
        modulus = math.gcd(self.coords_left.exponent, self.coords_right.exponent)
        lattice = ModularLattice(r * r2, modulus)
        for row in lattice_basis(self.coords_left.relations):
            for j in range(r2):
                lattice.insert(self._outer(row, self._unit(r2, j)))
        for row in lattice_basis(self.coords_right.relations):
            for i in range(r):
                lattice.insert(self._outer(self._unit(r, i), row))
        wl, wr = self.coords_left.vectors, self.coords_right.vectors
        for i, g in enumerate(self.coords_left.generators):
            for j, h in enumerate(self.coords_right.generators):
                for sc in range(s.size):
                    lhs = self._outer(wl[cm.right_action[g][sc]], self._unit(r2, j))
                    rhs = self._outer(self._unit(r, i), wr[cn.left_action[sc][h]])
                    lattice.insert([a - b for a, b in zip(lhs, rhs)])
        self.lattice = lattice
        self.radices = lattice.pivots
        self.weights = np.cumprod([1] + self.radices[:-1]).astype(np.int64) if self.radices else np.zeros(0, np.int64)
        self.order = math.prod(self.radices)
        self._rows = np.asarray(lattice.rows, dtype=np.int64).reshape(len(self.radices), len(self.radices))

    @staticmethod
    def _unit(k: int, i: int) -> tuple[int, ...]:
        return tuple(int(c == i) for c in range(k))

    @staticmethod
    def _outer(u, v) -> list[int]:
        return [a * b for a in u for b in v]

    def reduce_many(self, vectors: np.ndarray) -> np.ndarray:
        v = np.mod(np.asarray(vectors, dtype=np.int64), self.lattice.modulus)
        for c in range(len(self.radices)):
            q = v[:, c] // self.radices[c]
            v = np.mod(v - q[:, None] * self._rows[c][None, :], self.lattice.modulus)
        return v

    def index_many(self, vectors: np.ndarray) -> np.ndarray:
        if len(self.radices) == 0:
            return np.zeros(len(vectors), dtype=np.int64)
        return self.reduce_many(vectors) @ self.weights

    def index(self, vector) -> int:
        return int(self.index_many(np.asarray([vector], dtype=np.int64).reshape(1, -1))[0])

    def pure_vector(self, m: int, n: int) -> list[int]:
        """Coordinates of ``τ(m, n)`` before reduction."""
        wm = self.coords_left.vectors[self.left_reflection.projection.table[m]]
        wn = self.coords_right.vectors[self.right_reflection.projection.table[n]]
        return self._outer(wm, wn)

    def vector(self, m: int, n: int) -> tuple[int, ...]:
        return tuple(int(v) for v in self.reduce_many(np.asarray([self.pure_vector(m, n)]).reshape(1, -1))[0])

    def add_vectors(self, u, v) -> tuple[int, ...]:
        return tuple(int(x) for x in self.reduce_many(np.asarray([u], dtype=np.int64) + np.asarray([v]))[0])

    def zero_vector(self) -> tuple[int, ...]:
        return (0,) * len(self.radices)

    def materialize(self, cap: int = DEFAULT_CAP) -> TensorProduct:
        if self.order > cap:
            raise SizeCapExceeded(self.order, cap, "tensor product")
        return _materialize(self)


def _materialize(p: TensorPresentation) -> TensorProduct:
    m, n = p.left, p.right
    d = len(p.radices)
    order = p.order
    elements = mixed_radix_elements(p.radices) if d else np.zeros((1, 0), dtype=np.int64)
    # last coordinate that is nonzero, and the index one step below along it
    last = np.full(order, -1, dtype=np.int64)
    for c in range(d):
        last[elements[:, c] > 0] = c
    steps = np.zeros((d, order), dtype=np.int64)
    for c in range(d):
        bumped = elements.copy()
        bumped[:, c] += 1
        steps[c] = p.index_many(bumped)
    add = np.zeros((order, order), dtype=np.int64)
    add[:, 0] = np.arange(order)
    for y in range(1, order):
        c = last[y]
        add[:, y] = steps[c][add[:, y - int(p.weights[c])]]

    def action_table(images: list[int]) -> list[int]:
        table = [0] * order
        for y in range(1, order):
            c = last[y]
            table[y] = int(add[table[y - int(p.weights[c])], images[c]])
        return table

    r, r2 = p.shape
    cm, cn = p.left_reflection.reflected, p.right_reflection.reflected
    wl, wr = p.coords_left.vectors, p.coords_right.vectors
    left = right = None
    if m.left_action is not None:
        left = []
        for sc in range(m.base_left.size):
            images = [p.index(p._outer(wl[cm.left_action[sc][p.coords_left.generators[c // r2]]],
                                       p._unit(r2, c % r2))) for c in range(d)]
            left.append(action_table(images))
    if n.right_action is not None:
        columns = []
        for sc in range(n.base_right.size):
            images = [p.index(p._outer(p._unit(r, c // r2),
                                       wr[cn.right_action[p.coords_right.generators[c % r2]][sc]]))
                      for c in range(d)]
            columns.append(action_table(images))
        right = [list(row) for row in zip(*columns)]
    carrier = FiniteSemimodule(
        FiniteCommutativeMonoid(add.tolist()), left, right,
        m.base_left if left is not None else None, n.base_right if right is not None else None,
        name=f"{m.name}⊠{n.name}")
    pure = np.asarray([p.pure_vector(a, b) for a in range(m.size) for b in range(n.size)],
                      dtype=np.int64).reshape(m.size * n.size, d)
    tau_flat = p.index_many(pure) if d else np.zeros(m.size * n.size, dtype=np.int64)
    tau = tuple(tuple(int(v) for v in tau_flat[a * n.size:(a + 1) * n.size]) for a in range(m.size))
    return TensorProduct(m, n, carrier, tau, "presentation", presentation=p)


@lru_cache(maxsize=512)
def presentation(m: FiniteSemimodule, n: FiniteSemimodule) -> TensorPresentation:
    return TensorPresentation(m, n)


@lru_cache(maxsize=512)
def _cached_product(m: FiniteSemimodule, n: FiniteSemimodule) -> TensorProduct:
    return _materialize(presentation(m, n))


def tensor_product(m: FiniteSemimodule, n: FiniteSemimodule, cap: int = DEFAULT_CAP) -> TensorProduct:
    """Materialised ``m ⊠ n`` with outer actions; results are memoised."""
    p = presentation(m, n)
    if p.order > cap:
        raise SizeCapExceeded(p.order, cap, "tensor product")
    return _cached_product(m, n)


# ---------------------------------------------------------------------------
# ϑ isomorphisms and the associator

def theta_iso(m: FiniteSemimodule, side: str = "right", cap: int = DEFAULT_CAP) -> IsoPair:
    """``M ⊠ S ≅ 𝔠(M)`` (side ``right``) or ``S ⊠ M ≅ 𝔠(M)`` (side ``left``).

    Forward sends a pure tensor to the class of the action; backward sends
    the class of ``x`` to ``x ⊠ 1`` (or ``1 ⊠ x``).
    """
    reflection = cancellative_reflection(m)
    c = reflection.projection.table
    target = reflection.reflected
    if side == "right":
        s = m.require("right")
        t = tensor_product(m, regular_module(s), cap)
        forward = map_out_of_tensor(t, target, lambda x, sc: c[m.right_action[x][sc]])
        pure = [t.tau(x, s.one) for x in range(m.size)]
    elif side == "left":
        s = m.require("left")
        t = tensor_product(regular_module(s), m, cap)
        forward = map_out_of_tensor(t, target, lambda sc, x: c[m.left_action[sc][x]])
        pure = [t.tau(s.one, x) for x in range(m.size)]
    else:
        raise KindMismatch(f"side must be left or right, not {side!r}")
    backward = [-1] * target.size
    for x in range(m.size):
        k = c[x]
        if backward[k] < 0:
            backward[k] = pure[x]
        elif backward[k] != pure[x]:
            raise IllDefined("inverse of ϑ is not constant on classes", witness=(x,))
    return IsoPair(forward, StructureMap("linear-map", target, t.carrier, backward))


def associator(x: FiniteSemimodule, y: FiniteSemimodule, z: FiniteSemimodule,
               cap: int = DEFAULT_CAP) -> IsoPair:
    """``(X⊠Y)⊠Z ≅ X⊠(Y⊠Z)`` on pure tensors ``(a⊠b)⊠c ↦ a⊠(b⊠c)``."""
    xy = tensor_product(x, y, cap)
    yz = tensor_product(y, z, cap)
    lhs = tensor_product(xy.carrier, z, cap)
    rhs = tensor_product(x, yz.carrier, cap)
    radd, ladd = rhs.carrier.carrier, lhs.carrier.carrier

    def forward_value(t, c):
        return radd.sum(rhs.tau(a, yz.tau(b, c)) for a, b in xy.expand(t))

    def backward_value(a, u):
        return ladd.sum(lhs.tau(xy.tau(a, b), c) for b, c in yz.expand(u))

    forward = map_out_of_tensor(lhs, rhs.carrier, forward_value)
    backward = map_out_of_tensor(rhs, lhs.carrier, backward_value)
    return IsoPair(forward, backward)


def identity_tensor_map(t: TensorProduct) -> StructureMap:
    return identity_map(t.carrier)


def tensor_with_identity(f: StructureMap, other: FiniteSemimodule, side: str = "right",
                         cap: int = DEFAULT_CAP) -> StructureMap:
    """``f ⊠ id`` (side ``right``) or ``id ⊠ f`` (side ``left``)."""
    ident = identity_map(other, "linear-map")
    if side == "right":
        return induced_map(f, ident, cap=cap)
    return induced_map(ident, f, cap=cap)

