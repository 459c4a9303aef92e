"""Micro constraint-propagation engine: trailed variables, a FIFO
propagation queue, and chronological depth-first search.

Domains are bitmasks over small nonnegative integers, so bound updates,
trailing, and restoration are single integer operations. An integer
variable holds one mask (its current domain); a set variable holds two
(``required`` elements certainly in the set, ``possible`` elements not
yet excluded). All engine iteration is in ascending value order, which
makes runs deterministic.
"""

from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional


class Inconsistent(Exception):
    """Internal signal: a domain or bound emptied. Never escapes the engine."""


def bits_of(mask: int) -> list[int]:
    """Values of a mask, ascending."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


class IntVar:
    """Finite-domain integer variable over nonnegative values."""

    __slots__ = ("solver", "index", "name", "mask", "watchers")

    def __init__(self, solver: "Solver", index: int, mask: int, name: str):
        if mask == 0:
            raise ValueError(f"variable {name or index} created with empty domain")
        self.solver = solver
        self.index = index
        self.name = name
        self.mask = mask
        self.watchers: list["Propagator"] = []

    def __repr__(self) -> str:
        return f"IntVar({self.name or self.index}, domain={bits_of(self.mask)})"

    def is_fixed(self) -> bool:
        return self.mask & (self.mask - 1) == 0

    def value(self) -> int:
        if not self.is_fixed():
            raise ValueError(f"{self!r} is not fixed")
        return self.mask.bit_length() - 1

    def size(self) -> int:
        return self.mask.bit_count()

    def min(self) -> int:
        return (self.mask & -self.mask).bit_length() - 1

    def max(self) -> int:
        return self.mask.bit_length() - 1

    def contains(self, v: int) -> bool:
        return v >= 0 and (self.mask >> v) & 1 == 1

    def domain(self) -> list[int]:
        return bits_of(self.mask)

    # Mutations. Each trails the old mask and wakes the watchers.

    def _set_mask(self, new_mask: int) -> None:
        if new_mask == self.mask:
            return
        if new_mask == 0:
            raise Inconsistent
        self.solver._trail.append((self, self.mask))
        self.mask = new_mask
        self.solver._wake(self)

    def _restore(self, saved: int) -> None:
        self.mask = saved

    def remove(self, v: int) -> None:
        if 0 <= v:
            self._set_mask(self.mask & ~(1 << v))

    def assign(self, v: int) -> None:
        bit = 1 << v
        if self.mask & bit == 0:
            raise Inconsistent
        self._set_mask(bit)

    def intersect(self, mask: int) -> None:
        self._set_mask(self.mask & mask)


class SetVar:
    """Set variable with subset bounds over universe {0..n-1}."""

    __slots__ = ("solver", "index", "name", "required", "possible", "universe", "watchers")

    def __init__(self, solver: "Solver", index: int, universe: int, name: str):
        self.solver = solver
        self.index = index
        self.name = name
        self.required = 0
        self.possible = universe
        self.universe = universe
        self.watchers: list["Propagator"] = []

    def __repr__(self) -> str:
        return (
            f"SetVar({self.name or self.index}, "
            f"required={bits_of(self.required)}, possible={bits_of(self.possible)})"
        )

    def is_fixed(self) -> bool:
        return self.required == self.possible

    def value(self) -> frozenset[int]:
        if not self.is_fixed():
            raise ValueError(f"{self!r} is not fixed")
        return frozenset(bits_of(self.required))

    def _store(self) -> None:
        self.solver._trail.append((self, (self.required, self.possible)))

    def _restore(self, saved: tuple[int, int]) -> None:
        self.required, self.possible = saved

    def require_mask(self, mask: int) -> None:
        """Force every element of mask into the set."""
        new_req = self.required | mask
        if new_req == self.required:
            return
        if new_req & ~self.possible:
            raise Inconsistent
        self._store()
        self.required = new_req
        self.solver._wake(self)

    def restrict(self, mask: int) -> None:
        """Exclude everything outside mask."""
        new_pos = self.possible & mask
        if new_pos == self.possible:
            return
        if self.required & ~new_pos:
            raise Inconsistent
        self._store()
        self.possible = new_pos
        self.solver._wake(self)

    def include(self, e: int) -> None:
        self.require_mask(1 << e)

    def exclude(self, e: int) -> None:
        self.restrict(~(1 << e))

    def undecided(self) -> int:
        """Mask of elements possible but not yet required."""
        return self.possible & ~self.required


class Propagator:
    """A filtering procedure attached to the variables it observes.

    Subclasses implement ``propagate`` (prune or raise Inconsistent) and
    ``satisfied`` (a straight-line check of the constraint on a full
    assignment, used to audit witnesses independently of the filtering
    code). Filtering must be sound and must reach a fixpoint under
    re-invocation.
    """

    __slots__ = ("queued",)

    def __init__(self, watch: Iterable[IntVar | SetVar]):
        self.queued = False
        for var in watch:
            var.watchers.append(self)

    def propagate(self) -> None:
        raise NotImplementedError

    def satisfied(self, value_of) -> bool:
        raise NotImplementedError


class Status(Enum):
    SAT = "SAT"
    UNSAT = "UNSAT"
    INDETERMINATE = "INDETERMINATE"


@dataclass
class SolveReport:
    status: Status
    witness: Optional[dict]  # var -> int (IntVar) or frozenset (SetVar)
    decisions: int
    propagations: int
    fails: int
    elapsed: float


@dataclass
class Strategy:
    """Branching configuration.

    ``variable``: "min_domain" picks the unfixed decision variable with
    the smallest domain (ties by position); "input_order" picks the
    first unfixed. ``value``: "ascending" or "descending".
    """

    variable: str = "min_domain"
    value: str = "ascending"


class Solver:
    """Owns variables, propagators, trail, and search state.

    Single-threaded during search; independent instances do not share
    anything and may run concurrently.
    """

    def __init__(self) -> None:
        self.int_vars: list[IntVar] = []
        self.set_vars: list[SetVar] = []
        self.propagators: list[Propagator] = []
        self._trail: list = []
        self._queue: deque[Propagator] = deque()
        self.decisions = 0
        self.propagations = 0
        self.fails = 0

    # Variable and constraint construction.

    def int_var(self, lo: int, hi: int, name: str = "") -> IntVar:
        if lo < 0 or hi < lo:
            raise ValueError(f"bad integer domain [{lo}, {hi}]")
        mask = ((1 << (hi - lo + 1)) - 1) << lo
        var = IntVar(self, len(self.int_vars), mask, name)
        self.int_vars.append(var)
        return var

    def set_var(self, universe_size: int, name: str = "") -> SetVar:
        if universe_size < 0:
            raise ValueError("universe size must be nonnegative")
        var = SetVar(self, len(self.set_vars), (1 << universe_size) - 1, name)
        self.set_vars.append(var)
        return var

    def post(self, prop: Propagator) -> None:
        self.propagators.append(prop)
        self._schedule(prop)

    # Propagation machinery.

    def _schedule(self, prop: Propagator) -> None:
        if not prop.queued:
            prop.queued = True
            self._queue.append(prop)

    def _wake(self, var: IntVar | SetVar) -> None:
        for prop in var.watchers:
            if not prop.queued:
                prop.queued = True
                self._queue.append(prop)

    def propagate(self) -> bool:
        """Run the queue to fixpoint. False means inconsistent."""
        queue = self._queue
        try:
            while queue:
                prop = queue.popleft()
                prop.queued = False
                self.propagations += 1
                prop.propagate()
        except Inconsistent:
            for prop in queue:
                prop.queued = False
            queue.clear()
            return False
        return True

    # Trail.

    def _mark(self) -> int:
        return len(self._trail)

    def _undo_to(self, mark: int) -> None:
        trail = self._trail
        while len(trail) > mark:
            var, saved = trail.pop()
            var._restore(saved)

    # Search.

    def solve(
        self,
        decision_vars: Optional[list[IntVar]] = None,
        strategy: Optional[Strategy] = None,
        decision_limit: Optional[int] = None,
        timeout: Optional[float] = None,
    ) -> SolveReport:
        """Depth-first search with propagation to fixpoint at every node.

        Branches on the decision variables first (value assignment per
        the strategy); once they are all fixed, branches on set
        membership (include before exclude, lowest variable and element
        first) until every variable is fixed. Returns the first full
        assignment, or UNSAT after exhausting the tree, or INDETERMINATE
        when a limit is hit.
        """
        strategy = strategy or Strategy()
        dvars = list(self.int_vars) if decision_vars is None else list(decision_vars)
        self.decisions = 0
        self.propagations = 0
        self.fails = 0
        start = time.perf_counter()

        def report(status: Status, witness=None) -> SolveReport:
            return SolveReport(
                status=status,
                witness=witness,
                decisions=self.decisions,
                propagations=self.propagations,
                fails=self.fails,
                elapsed=time.perf_counter() - start,
            )

        if not self.propagate():
            self.fails += 1
            return report(Status.UNSAT)

        # A frame is [trail mark, alternatives, index of the next one to try].
        frames: list[list] = []
        while True:
            alternatives = self._branch(dvars, strategy)
            if alternatives is None:
                return report(Status.SAT, self._witness())
            if decision_limit is not None and self.decisions >= decision_limit:
                return report(Status.INDETERMINATE)
            if timeout is not None and time.perf_counter() - start > timeout:
                return report(Status.INDETERMINATE)
            frames.append([self._mark(), alternatives, 0])

            descended = False
            while frames and not descended:
                mark, alts, idx = frames[-1]
                self.decisions += 1
                self._apply(alts[idx])
                if self.propagate():
                    descended = True
                else:
                    self.fails += 1
                    while frames:
                        frame = frames[-1]
                        self._undo_to(frame[0])
                        frame[2] += 1
                        if frame[2] < len(frame[1]):
                            break
                        frames.pop()
            if not descended:
                return report(Status.UNSAT)

    def _branch(self, dvars: list[IntVar], strategy: Strategy):
        """Alternatives at this node, or None when everything is fixed."""
        chosen = None
        if strategy.variable == "input_order":
            for var in dvars:
                if not var.is_fixed():
                    chosen = var
                    break
        else:
            best_size = None
            for var in dvars:
                size = var.size()
                if size > 1 and (best_size is None or size < best_size):
                    chosen = var
                    best_size = size
        if chosen is not None:
            values = chosen.domain()
            if strategy.value == "descending":
                values.reverse()
            return [("=", chosen, v) for v in values]

        for svar in self.set_vars:
            undecided = svar.undecided()
            if undecided:
                e = (undecided & -undecided).bit_length() - 1
                return [("in", svar, e), ("out", svar, e)]
        for var in self.int_vars:
            if not var.is_fixed():
                return [("=", var, v) for v in var.domain()]
        return None

    @staticmethod
    def _apply(alt) -> None:
        op, var, v = alt
        if op == "=":
            var.assign(v)
        elif op == "in":
            var.include(v)
        else:
            var.exclude(v)

    def _witness(self) -> dict:
        witness: dict = {}
        for var in self.int_vars:
            witness[var] = var.value()
        for svar in self.set_vars:
            witness[svar] = svar.value()
        return witness

    def check_witness(self, witness: dict) -> bool:
        """Audit an assignment against every posted constraint's semantics.

        Uses each propagator's straight-line ``satisfied`` check, not its
        filtering code.
        """
        return all(prop.satisfied(witness.__getitem__) for prop in self.propagators)
