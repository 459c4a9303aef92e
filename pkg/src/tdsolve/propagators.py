"""Propagators for the decomposition model.

Each class filters one constraint at subset-bound / domain level and
carries a ``satisfied`` method that evaluates the constraint directly on
a full assignment (used to audit witnesses without going through the
filtering code).
"""

from __future__ import annotations

from .engine import Inconsistent, IntVar, Propagator, SetVar, bits_of


class CardinalityAtMost(Propagator):
    """|X| <= bound."""

    __slots__ = ("x", "bound")

    def __init__(self, x: SetVar, bound: int):
        if bound < 0:
            raise ValueError("cardinality bound must be nonnegative")
        super().__init__([x])
        self.x = x
        self.bound = bound

    def propagate(self) -> None:
        required = self.x.required
        count = required.bit_count()
        if count > self.bound:
            raise Inconsistent
        if count == self.bound:
            self.x.restrict(required)

    def satisfied(self, value_of) -> bool:
        return len(value_of(self.x)) <= self.bound


class UnionEquals(Propagator):
    """union(xs) == universe. Assumes every possible set is within it."""

    __slots__ = ("xs", "universe")

    def __init__(self, xs: list[SetVar], universe: int):
        super().__init__(xs)
        self.xs = list(xs)
        self.universe = universe

    def propagate(self) -> None:
        req_union = 0
        pos_union = 0
        for x in self.xs:
            req_union |= x.required
            pos_union |= x.possible
        if self.universe & ~pos_union:
            raise Inconsistent
        remaining = self.universe & ~req_union
        while remaining:
            low = remaining & -remaining
            remaining ^= low
            holder = None
            supports = 0
            for x in self.xs:
                if x.possible & low:
                    holder = x
                    supports += 1
                    if supports > 1:
                        break
            if supports == 1:
                holder.require_mask(low)

    def satisfied(self, value_of) -> bool:
        acc = set()
        for x in self.xs:
            acc |= value_of(x)
        return acc == set(bits_of(self.universe))


class IntersectionOf(Propagator):
    """Z == X & Y, at subset-bound strength."""

    __slots__ = ("z", "x", "y")

    def __init__(self, z: SetVar, x: SetVar, y: SetVar):
        super().__init__([z, x, y])
        self.z = z
        self.x = x
        self.y = y

    def propagate(self) -> None:
        x, y, z = self.x, self.y, self.z
        z.require_mask(x.required & y.required)
        z.restrict(x.possible & y.possible)
        x.require_mask(z.required)
        y.require_mask(z.required)
        x.restrict(~(y.required & ~z.possible))
        y.restrict(~(x.required & ~z.possible))

    def satisfied(self, value_of) -> bool:
        return value_of(self.z) == value_of(self.x) & value_of(self.y)


class EdgeInNode(Propagator):
    """bit == 1 <=> both endpoints of the edge are in the node."""

    __slots__ = ("bit", "u", "v", "node", "uv_mask")

    def __init__(self, bit: IntVar, u: int, v: int, node: SetVar):
        if u == v:
            raise ValueError("self-loops are not representable")
        super().__init__([bit, node])
        self.bit = bit
        self.u = u
        self.v = v
        self.node = node
        self.uv_mask = (1 << u) | (1 << v)

    def propagate(self) -> None:
        bit, node = self.bit, self.node
        if bit.mask == 0b10:
            node.require_mask(self.uv_mask)
        elif bit.mask == 0b01:
            if node.required >> self.u & 1:
                node.exclude(self.v)
            if node.required >> self.v & 1:
                node.exclude(self.u)
        if self.uv_mask & ~node.possible:
            bit.assign(0)
        elif self.uv_mask & ~node.required == 0:
            bit.assign(1)

    def satisfied(self, value_of) -> bool:
        inside = {self.u, self.v} <= value_of(self.node)
        return (value_of(self.bit) == 1) == inside


class AtLeastOne(Propagator):
    """At least one of the 0/1 variables is 1."""

    __slots__ = ("bits",)

    def __init__(self, bits: list[IntVar]):
        super().__init__(bits)
        self.bits = list(bits)

    def propagate(self) -> None:
        last_open = None
        open_count = 0
        for b in self.bits:
            if b.mask == 0b10:
                return
            if b.mask == 0b11:
                last_open = b
                open_count += 1
        if open_count == 0:
            raise Inconsistent
        if open_count == 1:
            last_open.assign(1)

    def satisfied(self, value_of) -> bool:
        return any(value_of(b) == 1 for b in self.bits)


class ParentDepth(Propagator):
    """parent == j implies depth[i] == depth[j] + 1, for every j != i."""

    __slots__ = ("i", "parent", "depths")

    def __init__(self, i: int, parent: IntVar, depths: list[IntVar]):
        super().__init__([parent] + list(depths))
        self.i = i
        self.parent = parent
        self.depths = list(depths)

    def propagate(self) -> None:
        parent = self.parent
        depth_i = self.depths[self.i]
        for j in bits_of(parent.mask):
            if j == self.i:
                continue
            if (self.depths[j].mask << 1) & depth_i.mask == 0:
                parent.remove(j)
        if parent.is_fixed():
            j = parent.value()
            if j != self.i:
                depth_j = self.depths[j]
                depth_i.intersect(depth_j.mask << 1)
                depth_j.intersect(depth_i.mask >> 1)

    def satisfied(self, value_of) -> bool:
        j = value_of(self.parent)
        if j == self.i:
            return True
        return value_of(self.depths[self.i]) == value_of(self.depths[j]) + 1


class RunningIntersection(Propagator):
    """If node i is at most as deep as node k, the vertices shared by
    i and k must all appear in k's parent node."""

    __slots__ = ("depth_i", "depth_k", "shared", "parent_k", "node_sets")

    def __init__(
        self,
        depth_i: IntVar,
        depth_k: IntVar,
        shared: SetVar,
        parent_k: IntVar,
        node_sets: list[SetVar],
    ):
        super().__init__([depth_i, depth_k, shared, parent_k] + list(node_sets))
        self.depth_i = depth_i
        self.depth_k = depth_k
        self.shared = shared
        self.parent_k = parent_k
        self.node_sets = list(node_sets)

    def propagate(self) -> None:
        depth_i, depth_k = self.depth_i, self.depth_k
        if depth_i.min() > depth_k.max():
            return  # guard certainly false
        shared_req = self.shared.required
        parent = self.parent_k
        if depth_i.max() <= depth_k.min():
            # guard certainly true: prune parents that cannot absorb
            # the shared vertices, then enforce the subset once fixed
            for j in bits_of(parent.mask):
                if shared_req & ~self.node_sets[j].possible:
                    parent.remove(j)
            if parent.is_fixed():
                target = self.node_sets[parent.value()]
                target.require_mask(self.shared.required)
                self.shared.restrict(target.possible)
        else:
            # guard undecided: if the subset cannot hold for any parent
            # candidate, force node i strictly deeper than node k
            if all(shared_req & ~self.node_sets[j].possible for j in bits_of(parent.mask)):
                depth_i_max = depth_i.max()
                depth_i.intersect(-1 << (depth_k.min() + 1))
                depth_k.intersect((1 << depth_i_max) - 1)

    def satisfied(self, value_of) -> bool:
        if value_of(self.depth_i) <= value_of(self.depth_k):
            bag = value_of(self.node_sets[value_of(self.parent_k)])
            return value_of(self.shared) <= bag
        return True


class LexLeq(Propagator):
    """Vector of 0/1 variables a is lexicographically <= vector b."""

    __slots__ = ("a", "b")

    def __init__(self, a: list[IntVar], b: list[IntVar]):
        if len(a) != len(b):
            raise ValueError("lex vectors must have equal length")
        super().__init__(list(a) + list(b))
        self.a = list(a)
        self.b = list(b)

    @staticmethod
    def _leq(xs: list[int], ys: list[int]) -> bool:
        for x, y in zip(xs, ys):
            if x != y:
                return x < y
        return True

    def propagate(self) -> None:
        # A value is supported iff the extreme vectors (a minimal,
        # b maximal) with that value substituted still compare <=.
        amin = [v.min() for v in self.a]
        bmax = [v.max() for v in self.b]
        if not self._leq(amin, bmax):
            raise Inconsistent
        for i, v in enumerate(self.a):
            if not v.is_fixed():
                amin[i] = 1
                if not self._leq(amin, bmax):
                    v.assign(0)
                amin[i] = 0
        for i, v in enumerate(self.b):
            if not v.is_fixed():
                bmax[i] = 0
                if not self._leq(amin, bmax):
                    v.assign(1)
                bmax[i] = 1

    def satisfied(self, value_of) -> bool:
        return self._leq([value_of(v) for v in self.a], [value_of(v) for v in self.b])


class SetBitsChannel(Propagator):
    """row[v] == 1 <=> v in X, for every v in the universe."""

    __slots__ = ("x", "row")

    def __init__(self, x: SetVar, row: list[IntVar]):
        super().__init__([x] + list(row))
        self.x = x
        self.row = list(row)

    def propagate(self) -> None:
        x = self.x
        ones = 0
        zeros = 0
        for v, b in enumerate(self.row):
            if b.mask == 0b10:
                ones |= 1 << v
            elif b.mask == 0b01:
                zeros |= 1 << v
        x.require_mask(ones)
        x.restrict(~zeros)
        required, possible = x.required, x.possible
        for v, b in enumerate(self.row):
            if required >> v & 1:
                b.assign(1)
            elif possible >> v & 1 == 0:
                b.assign(0)

    def satisfied(self, value_of) -> bool:
        members = {v for v, b in enumerate(self.row) if value_of(b) == 1}
        return members == value_of(self.x)


class FixValue(Propagator):
    """x == c."""

    __slots__ = ("x", "c")

    def __init__(self, x: IntVar, c: int):
        super().__init__([x])
        self.x = x
        self.c = c

    def propagate(self) -> None:
        self.x.assign(self.c)

    def satisfied(self, value_of) -> bool:
        return value_of(self.x) == self.c


class ForbidValue(Propagator):
    """x != c."""

    __slots__ = ("x", "c")

    def __init__(self, x: IntVar, c: int):
        super().__init__([x])
        self.x = x
        self.c = c

    def propagate(self) -> None:
        self.x.remove(self.c)

    def satisfied(self, value_of) -> bool:
        return value_of(self.x) != self.c
