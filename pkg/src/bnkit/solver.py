"""Enumeration of fixed points and minimal/maximal trap spaces.

Two native propagate-and-branch engines replace an external solver:

* a two-valued search over states for fixed points, with unit propagation
  inside the DNF clauses of the constraint ``x_i = f_i(x)``;
* a three-valued search over per-component value sets {0}, {1}, {0,1} for
  trap spaces, whose closedness constraint ``eval(f_i, S) subset S_i`` is
  checked through the exact cube evaluation of the cubes module.

Minimal trap spaces are found by descending through closures of states
and certified by searching for a strictly smaller trap space; maximal
ones by the dual ascent.  Emitted minimal trap spaces are blocked by
disjointness constraints (minimal trap spaces are pairwise disjoint),
emitted maximal ones by excluding their subcubes.
"""

from __future__ import annotations

import heapq
import random
import time
from dataclasses import dataclass

from .cubes import FREE, Cube, closure, eval_mask, is_trap_space
from .network import evaluate

_DEADLINE_STRIDE = 512


class SolverTimeout(Exception):
    """Cooperative deadline expired between branching decisions."""


@dataclass(frozen=True)
class Query:
    kind: str  # fixed-points | minimal-trap-spaces | maximal-trap-spaces
    within: Cube | None = None
    limit: int | None = None


def _check_limit(limit):
    if limit is not None and limit < 1:
        raise ValueError("limit must be >= 1")


class _Deadline:
    __slots__ = ("at", "tick")

    def __init__(self, at):
        self.at = at
        self.tick = 0

    def poll(self):
        if self.at is None:
            return
        self.tick += 1
        if self.tick >= _DEADLINE_STRIDE:
            self.tick = 0
            if time.monotonic() > self.at:
                raise SolverTimeout

    def check_now(self):
        if self.at is not None and time.monotonic() > self.at:
            raise SolverTimeout


def _branch_order(net, reverse=False):
    order = sorted(range(net.n), key=lambda i: (-net.occ_count[i], i))
    if reverse:
        order.reverse()
    return order


# ---------------------------------------------------------------------------
# Fixed points


def fixed_points(net, within=None, limit=None, deadline=None, reverse_order=False):
    """Stream the states x in `within` with f(x) = x."""
    _check_limit(limit)
    n = net.n
    if within is None:
        within = Cube.full(n)
    if len(within) != n:
        raise ValueError("restriction cube has wrong length")
    clock = _Deadline(deadline)
    clock.check_now()

    functions = net.functions
    dependents = net.dependents
    # values: 0/1 assigned, FREE (2) = unassigned
    values = [FREE] * n
    trail = []

    def propagate(dirty):
        """Unit propagation of x_i = f_i(x); returns False on conflict."""
        queue = list(dirty)
        seen = set(queue)
        while queue:
            clock.poll()
            i = queue.pop()
            seen.discard(i)
            target = values[i]
            implied = []
            clauses = functions[i].dnf.clauses
            if not clauses:
                if target == 1:
                    return False
                if target == FREE:
                    implied.append((i, 0))
            elif clauses[0] == ():
                if target == 0:
                    return False
                if target == FREE:
                    implied.append((i, 1))
            else:
                sat = False
                live = []
                for clause in clauses:
                    unassigned = None
                    falsified = False
                    multi = False
                    for comp, val in clause:
                        v = values[comp]
                        if v == FREE:
                            if unassigned is None:
                                unassigned = (comp, val)
                            else:
                                multi = True
                        elif v != val:
                            falsified = True
                            break
                    if falsified:
                        continue
                    if unassigned is None:
                        sat = True
                        break
                    live.append((unassigned, multi, clause))
                if target == 1:
                    if not sat:
                        if not live:
                            return False
                        if len(live) == 1:
                            for comp, val in live[0][2]:
                                if values[comp] == FREE:
                                    implied.append((comp, val))
                elif target == 0:
                    if sat:
                        return False
                    for unassigned, multi, _ in live:
                        if not multi:
                            comp, val = unassigned
                            implied.append((comp, 1 - val))
                else:
                    if sat:
                        implied.append((i, 1))
                    elif not live:
                        implied.append((i, 0))
            for comp, val in implied:
                cur = values[comp]
                if cur != FREE:
                    if cur != val:
                        return False
                    continue
                values[comp] = val
                trail.append(comp)
                for t in dependents[comp]:
                    if t not in seen:
                        seen.add(t)
                        queue.append(t)
                if comp not in seen:
                    seen.add(comp)
                    queue.append(comp)
        return True

    # Seed from the restriction, then run propagation to fixpoint.
    for i, v in enumerate(within.values):
        if v != FREE:
            values[i] = v
            trail.append(i)
    ok = propagate(range(n))
    if not ok:
        return

    order = _branch_order(net, reverse_order)
    emitted = 0
    # decision stack entries: [var, remaining values, trail mark, order ptr]
    stack = []
    ptr = 0

    def backtrack_to(mark):
        while len(trail) > mark:
            values[trail.pop()] = FREE

    while True:
        clock.poll()
        var = None
        while ptr < n:
            if values[order[ptr]] == FREE:
                var = order[ptr]
                break
            ptr += 1
        if var is None:
            yield tuple(values)
            emitted += 1
            if limit is not None and emitted >= limit:
                return
            conflict = True
        else:
            mask = eval_mask(functions[var], values)
            first = 0 if mask & 1 else 1
            stack.append([var, [1 - first], len(trail), ptr])
            values[var] = first
            trail.append(var)
            conflict = not propagate([var] + dependents[var])
        while conflict:
            if not stack:
                return
            top = stack[-1]
            backtrack_to(top[2])
            ptr = top[3]
            if top[1]:
                val = top[1].pop()
                var = top[0]
                values[var] = val
                trail.append(var)
                conflict = not propagate([var] + dependents[var])
            else:
                stack.pop()


# ---------------------------------------------------------------------------
# Trap space search engine

_UNASSIGNED = -1


def _trap_search(
    net,
    allowed,
    or_clauses,
    prefer_free,
    clock,
    reverse_order=False,
    scope=None,
):
    """Stream full symbol assignments (cubes) that are trap spaces.

    ``allowed[i]`` is the set of admissible symbols (0, 1, FREE) for
    component i; ``or_clauses`` is a list of clauses, each a list of
    ``(component, admissible symbol set)`` literals, at least one of which
    must hold in every solution.

    With ``scope``, only the given components are searched; all others
    must have singleton domains (they are pinned up front) and their
    closedness is not re-checked, which the callers guarantee to be sound.
    """
    n = net.n
    functions = net.functions
    scoped = scope is not None
    scope = range(n) if scope is None else sorted(scope)
    scope_set = set(scope)
    dependents = [
        [t for t in net.dependents[i] if t in scope_set] for i in range(n)
    ]
    supports = [sorted(fn.support) for fn in net.functions]

    values = [_UNASSIGNED] * n  # symbol or -1
    uview = [FREE] * n  # upper-bound cube: assigned 0/1 else FREE
    if scoped:
        for i in range(n):
            if i not in scope_set:
                sym = next(iter(allowed[i]))
                values[i] = sym
                if sym != FREE:
                    uview[i] = sym
    unassigned_support = [
        sum(1 for s in supports[i] if values[s] == _UNASSIGNED) for i in range(n)
    ]
    # Clause state is kept incrementally: sat_count counts assigned
    # literals that satisfy the clause, open_count the unassigned ones
    # that still could.
    lit_by_var = [[] for _ in range(n)]
    for ci, clause in enumerate(or_clauses):
        for comp, syms in clause:
            lit_by_var[comp].append((ci, syms, bool(allowed[comp] & syms)))
    sat_count = [0] * len(or_clauses)
    open_count = [0] * len(or_clauses)

    def clauses_assign(comp, sym):
        dirty = []
        for ci, syms, feasible in lit_by_var[comp]:
            if feasible:
                open_count[ci] -= 1
            if sym in syms:
                sat_count[ci] += 1
            elif not sat_count[ci] and open_count[ci] <= 1:
                dirty.append(ci)
        return dirty

    def clauses_unassign(comp, sym):
        for ci, syms, feasible in lit_by_var[comp]:
            if feasible:
                open_count[ci] += 1
            if sym in syms:
                sat_count[ci] -= 1

    trail = []
    heap = []  # (unassigned regulators, comp) for fixed, not-yet-exact comps

    def check_function(i):
        """Closedness check for component i; None on conflict else implications."""
        vi = values[i]
        if vi == FREE:
            return ()
        fn = functions[i]
        if fn.unate and vi != _UNASSIGNED:
            # For unate functions evaluation stays within {1} iff some
            # clause is fully fixed true, and within {0} iff every clause
            # carries a fixed-false literal; propagate the last open way
            # of meeting the target.
            if vi == 1:
                candidates = []
                for clause in fn.dnf.clauses:
                    dead = False
                    unassigned = []
                    for comp, val in clause:
                        v = values[comp]
                        if v == val:
                            continue
                        if v == _UNASSIGNED:
                            unassigned.append((comp, val))
                        else:
                            dead = True
                            break
                    if dead:
                        continue
                    if not unassigned:
                        return ()
                    candidates.append(unassigned)
                if not candidates:
                    return None
                if len(candidates) == 1:
                    return tuple(candidates[0])
                return ()
            implied = []
            for clause in fn.dnf.clauses:
                blocked = False
                forcible = []
                for comp, val in clause:
                    v = values[comp]
                    if v == 1 - val:
                        blocked = True
                        break
                    if v == _UNASSIGNED:
                        forcible.append((comp, 1 - val))
                if blocked:
                    continue
                if not forcible:
                    return None
                if len(forcible) == 1:
                    implied.append(forcible[0])
            return tuple(implied)
        exact = unassigned_support[i] == 0
        mask = eval_mask(functions[i], uview)
        if vi != _UNASSIGNED:
            # masks only shrink as the cube narrows, so a value that is
            # unachievable now stays unachievable
            if not mask & (1 << vi):
                return None
            if mask & (1 << (1 - vi)) and exact:
                return None
            return ()
        if not exact:
            return ()
        if mask == 3:
            return ((i, FREE),)
        want = 0 if mask == 1 else 1
        opts = allowed[i] & {want, FREE}
        if not opts:
            return None
        if len(opts) == 1:
            return ((i, next(iter(opts))),)
        return ()

    def check_clause(ci):
        if sat_count[ci]:
            return ()
        oc = open_count[ci]
        if oc == 0:
            return None
        if oc == 1:
            for comp, syms in or_clauses[ci]:
                if values[comp] == _UNASSIGNED:
                    opts = allowed[comp] & syms
                    if opts:
                        if len(opts) == 1:
                            return ((comp, next(iter(opts))),)
                        return ()
        return ()

    def propagate(fun_dirty, clause_dirty):
        fun_queue = list(fun_dirty)
        clause_queue = list(clause_dirty)
        while fun_queue or clause_queue:
            clock.poll()
            implied = ()
            if fun_queue:
                implied = check_function(fun_queue.pop())
            else:
                implied = check_clause(clause_queue.pop())
            if implied is None:
                return False
            for comp, sym in implied:
                cur = values[comp]
                if cur != _UNASSIGNED:
                    if cur != sym:
                        return False
                    continue
                if sym not in allowed[comp]:
                    return False
                values[comp] = sym
                if sym != FREE:
                    uview[comp] = sym
                    if unassigned_support[comp]:
                        heapq.heappush(heap, (unassigned_support[comp], comp))
                trail.append(comp)
                for t in dependents[comp]:
                    unassigned_support[t] -= 1
                    if unassigned_support[t] and uview[t] != FREE:
                        heapq.heappush(heap, (unassigned_support[t], t))
                    fun_queue.append(t)
                fun_queue.append(comp)
                clause_queue.extend(clauses_assign(comp, sym))
        return True

    def backtrack_to(mark):
        while len(trail) > mark:
            comp = trail.pop()
            clauses_unassign(comp, values[comp])
            values[comp] = _UNASSIGNED
            uview[comp] = FREE
            for t in dependents[comp]:
                unassigned_support[t] += 1
                if uview[t] != FREE:
                    heapq.heappush(heap, (unassigned_support[t], t))

    # Level-0: pin singleton domains, then propagate everything once.
    for opts in allowed:
        if not opts:
            return
    for i in scope:
        opts = allowed[i]
        if len(opts) == 1:
            sym = next(iter(opts))
            values[i] = sym
            if sym != FREE:
                uview[i] = sym
            trail.append(i)
            for t in dependents[i]:
                unassigned_support[t] -= 1
    for i in scope:
        if uview[i] != FREE and unassigned_support[i]:
            heapq.heappush(heap, (unassigned_support[i], i))
    for ci, clause in enumerate(or_clauses):
        for comp, syms in clause:
            v = values[comp]
            if v == _UNASSIGNED:
                if allowed[comp] & syms:
                    open_count[ci] += 1
            elif v in syms:
                sat_count[ci] += 1
    if not propagate(scope, range(len(or_clauses))):
        return

    order = [i for i in _branch_order(net, reverse_order) if i in scope_set]
    stack = []
    ptr = 0

    def pick_support_var():
        # Branch towards completing the support of the fixed component
        # with the fewest unassigned regulators, so its closedness check
        # fires as early as possible.
        while heap:
            cnt, j = heap[0]
            if uview[j] == FREE or unassigned_support[j] == 0:
                heapq.heappop(heap)
                continue
            if cnt != unassigned_support[j]:
                heapq.heapreplace(heap, (unassigned_support[j], j))
                continue
            for s in supports[j]:
                if values[s] == _UNASSIGNED:
                    return s
            heapq.heappop(heap)
        return None

    def symbol_order(var):
        if prefer_free:
            syms = [FREE, 0, 1]
        else:
            mask = eval_mask(functions[var], uview) if unassigned_support[var] == 0 else 3
            if mask == 1:
                syms = [0, 1, FREE]
            elif mask == 2:
                syms = [1, 0, FREE]
            else:
                syms = [0, 1, FREE]
        return [s for s in syms if s in allowed[var]]

    def assign(var, sym):
        values[var] = sym
        if sym != FREE:
            uview[var] = sym
            if unassigned_support[var]:
                heapq.heappush(heap, (unassigned_support[var], var))
        trail.append(var)
        for t in dependents[var]:
            unassigned_support[t] -= 1
            if unassigned_support[t] and uview[t] != FREE:
                heapq.heappush(heap, (unassigned_support[t], t))
        return propagate(dependents[var] + [var], clauses_assign(var, sym))

    while True:
        clock.poll()
        var = pick_support_var()
        if var is None:
            while ptr < len(order):
                if values[order[ptr]] == _UNASSIGNED:
                    var = order[ptr]
                    break
                ptr += 1
        if var is None:
            yield Cube(tuple(values))
            conflict = True
        else:
            syms = symbol_order(var)
            if not syms:
                conflict = True
            else:
                first, rest = syms[0], syms[1:]
                stack.append([var, rest, len(trail), ptr])
                conflict = not assign(var, first)
        while conflict:
            if not stack:
                return
            top = stack[-1]
            backtrack_to(top[2])
            ptr = top[3]
            if top[1]:
                conflict = not assign(top[0], top[1].pop(0))
            else:
                stack.pop()


def _allowed_within(within):
    out = []
    for v in within.values:
        if v == FREE:
            out.append({0, 1, FREE})
        else:
            out.append({v})
    return out


def _disjoint_clause(cube):
    """At least one component fixed opposite to the cube's fixed value."""
    return [(i, {1 - v}) for i, v in enumerate(cube.values) if v != FREE]


def _not_subset_clause(cube):
    """At least one component breaking containment in the cube."""
    return [(i, {1 - v, FREE}) for i, v in enumerate(cube.values) if v != FREE]


# ---------------------------------------------------------------------------
# Minimal trap spaces


def _sample_vertex(cube, rng):
    return tuple(v if v != FREE else rng.randint(0, 1) for v in cube.values)


def _async_walk(net, trap, rng, steps):
    """Random asynchronous walk from a random vertex of the trap."""
    values = [v if v != FREE else rng.randint(0, 1) for v in trap.values]
    functions = net.functions
    unstable = [
        i for i in range(net.n) if evaluate(functions[i], values) != values[i]
    ]
    pos = {i: k for k, i in enumerate(unstable)}
    for _ in range(steps):
        if not unstable:
            break
        i = unstable[rng.randrange(len(unstable))]
        values[i] = 1 - values[i]
        for t in {i, *net.dependents[i]}:
            if evaluate(functions[t], values) != values[t]:
                if t not in pos:
                    pos[t] = len(unstable)
                    unstable.append(t)
            elif t in pos:
                k = pos.pop(t)
                last = unstable.pop()
                if k < len(unstable):
                    unstable[k] = last
                    pos[last] = k
    return tuple(values)


def _descent_candidates(net, trap, rng, sim_steps=60):
    """Heuristic states inside the trap whose closure may be smaller."""
    state = tuple(v if v != FREE else 0 for v in trap.values)
    for _ in range(sim_steps):
        state = net.image(state)
    yield state
    walk_steps = min(20000, 25 * net.n)
    for _ in range(2):
        yield _async_walk(net, trap, rng, walk_steps)
    for _ in range(3):
        state = _sample_vertex(trap, rng)
        for _ in range(8):
            state = net.image(state)
        yield state


def _free_sccs(net, free_set):
    """Strongly connected components of the influence graph on `free_set`.

    Only components that can sustain a feedback (size > 1, or a single
    node with a self-loop) are returned.
    """
    succs = {i: [t for t in net.dependents[i] if t in free_set] for i in free_set}
    index = {}
    low = {}
    on_stack = set()
    stack = []
    sccs = []
    for root in sorted(free_set):
        if root in index:
            continue
        work = [[root, 0]]
        while work:
            frame = work[-1]
            node = frame[0]
            if frame[1] == 0:
                index[node] = low[node] = len(index)
                stack.append(node)
                on_stack.add(node)
            advanced = False
            succ = succs[node]
            while frame[1] < len(succ):
                w = succ[frame[1]]
                frame[1] += 1
                if w not in index:
                    work.append([w, 0])
                    advanced = True
                    break
                if w in on_stack:
                    low[node] = min(low[node], index[w])
            if advanced:
                continue
            work.pop()
            if low[node] == index[node]:
                scc = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    scc.append(w)
                    if w == node:
                        break
                if len(scc) > 1 or node in succs[node]:
                    sccs.append(scc)
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
    return sccs


def _percolate_down(net, trap, clock):
    """Fix every free component whose evaluation on the cube is already
    determined, to fixpoint; the result is a trap space inside `trap`."""
    values = list(trap.values)
    queue = [i for i, v in enumerate(values) if v == FREE]
    pending = set(queue)
    changed = False
    while queue:
        clock.poll()
        i = queue.pop()
        pending.discard(i)
        if values[i] != FREE:
            continue
        mask = eval_mask(net.functions[i], values)
        if mask == 3:
            continue
        values[i] = 0 if mask == 1 else 1
        changed = True
        for t in net.dependents[i]:
            if values[t] == FREE and t not in pending:
                pending.add(t)
                queue.append(t)
    return Cube(tuple(values)) if changed else trap


def _scc_value_domains(net, trap, scc_set, clock):
    """Values each feedback component could take in a strict sub-trap.

    Greatest fixpoint of the necessary conditions for unate functions:
    fixing a component to 1 needs some clause whose literals can all
    become fixed true, fixing to 0 needs every clause to be blockable by
    a fixed-false literal; components outside the feedback set keep their
    candidate-trap value (free ones stay free).  Each surviving value is
    then probed with its opposite removed, which enforces consistency of
    the component itself; a value that cannot support itself this way is
    discarded.  Sound for non-unate functions, which stay unconstrained.
    """

    def refine(domains):
        changed = True
        while changed:
            changed = False
            clock.poll()
            for j in scc_set:
                fn = net.functions[j]
                if not fn.unate:
                    continue
                dom = domains[j]
                if 1 in dom:
                    ok = False
                    for clause in fn.dnf.clauses:
                        good = True
                        for c, val in clause:
                            if c in scc_set:
                                if val not in domains[c]:
                                    good = False
                                    break
                            elif trap.values[c] != val:
                                good = False
                                break
                        if good:
                            ok = True
                            break
                    if not ok:
                        dom.discard(1)
                        changed = True
                if 0 in dom:
                    ok = True
                    for clause in fn.dnf.clauses:
                        blocked = False
                        for c, val in clause:
                            if c in scc_set:
                                if 1 - val in domains[c]:
                                    blocked = True
                                    break
                            elif trap.values[c] == 1 - val:
                                blocked = True
                                break
                        if not blocked:
                            ok = False
                            break
                    if not ok:
                        dom.discard(0)
                        changed = True
        return domains

    master = refine({j: {0, 1} for j in scc_set})
    changed = True
    while changed:
        changed = False
        for j in sorted(scc_set):
            for v in (0, 1):
                if v not in master[j]:
                    continue
                clock.poll()
                probe = {c: set(master[c]) for c in scc_set}
                probe[j] = {v}
                refine(probe)
                if v not in probe[j]:
                    master[j].discard(v)
                    refine(master)
                    changed = True
    return master


def _certify_smaller(net, trap, clock, reverse_order):
    """A trap space strictly inside `trap`, or None if `trap` is minimal.

    A strict sub-trap must fix some component; taking one in a
    topologically first strongly connected component of the free
    subnetwork, all its regulators outside that component stay free, so
    searching each feedback component in isolation is complete.
    """
    free_set = {i for i, v in enumerate(trap.values) if v == FREE}
    for scc in sorted(_free_sccs(net, free_set), key=len):
        scc_set = set(scc)
        domains = _scc_value_domains(net, trap, scc_set, clock)
        fixable = {i: domains[i] for i in sorted(scc_set)}
        if not any(fixable.values()):
            continue
        allowed = []
        for i, v in enumerate(trap.values):
            if v != FREE:
                allowed.append({v})
            elif i in scc_set:
                allowed.append(fixable[i] | {FREE})
            else:
                allowed.append({FREE})
        strict = [[(i, vals) for i, vals in fixable.items() if vals]]
        found = next(
            _trap_search(
                net, allowed, strict, False, clock, reverse_order, scope=scc_set
            ),
            None,
        )
        if found is not None:
            return found
    return None


def _minimize_trap(net, trap, clock, rng, reverse_order=False):
    """Descend to a subset-minimal trap space inside the given one."""
    # Heuristic phase: closures of simulated states inside the candidate.
    while not trap.is_state:
        clock.check_now()
        improved = False
        for state in _descent_candidates(net, trap, rng):
            smaller = closure(net, Cube.from_state(state))
            if smaller != trap:
                trap = smaller
                improved = True
                break
        if not improved:
            break
    # A fixed point inside the candidate is itself a subset-minimal trap
    # space, and the fixed-point engine propagates much harder.
    if not trap.is_state:
        state = next(
            fixed_points(net, within=trap, limit=1, deadline=clock.at), None
        )
        if state is not None:
            return Cube.from_state(state)
    # Exact phase: percolate determined components down, then look for a
    # fixable feedback component; repeat until certified minimal.
    while not trap.is_state:
        clock.check_now()
        trap = _percolate_down(net, trap, clock)
        found = _certify_smaller(net, trap, clock, reverse_order)
        if found is None:
            return trap
        trap = found
    return trap


def minimal_trap_spaces(
    net, within=None, limit=None, deadline=None, seed=0, reverse_order=False
):
    """Stream the subset-minimal trap spaces contained in `within`."""
    _check_limit(limit)
    n = net.n
    if within is None:
        within = Cube.full(n)
    if len(within) != n:
        raise ValueError("restriction cube has wrong length")
    clock = _Deadline(deadline)
    clock.check_now()
    rng = random.Random(seed)
    emitted = []
    while limit is None or len(emitted) < limit:
        if not emitted and is_trap_space(net, within):
            candidate = within
        else:
            allowed = _allowed_within(within)
            blocking = [_disjoint_clause(t) for t in emitted]
            candidate = next(
                _trap_search(net, allowed, blocking, False, clock, reverse_order),
                None,
            )
        if candidate is None:
            return
        trap = _minimize_trap(net, candidate, clock, rng, reverse_order)
        yield trap
        emitted.append(trap)


# ---------------------------------------------------------------------------
# Maximal trap spaces


def _greedy_grow(net, trap, within, clock):
    """Free components one at a time while the cube stays a trap space.

    Freeing a single component can only break closedness of its
    dependents, so each attempt is a local recheck.  At least one
    component is always left fixed (the full cube is not a trap space of
    interest).
    """
    values = list(trap.values)
    fixed = sum(1 for v in values if v != FREE)
    changed = True
    while changed:
        changed = False
        for i in range(net.n):
            if fixed <= 1:
                break
            if values[i] == FREE or within.values[i] != FREE:
                continue
            clock.poll()
            old = values[i]
            values[i] = FREE
            ok = True
            for j in net.dependents[i]:
                vj = values[j]
                if vj == FREE:
                    continue
                if eval_mask(net.functions[j], values) & (1 << (1 - vj)):
                    ok = False
                    break
            if ok:
                fixed -= 1
                changed = True
            else:
                values[i] = old
    return Cube(tuple(values))


def _maximize_trap(net, trap, within, clock, reverse_order=False):
    """Ascend to a subset-maximal trap space (full cube excluded)."""
    n = net.n
    while True:
        clock.check_now()
        trap = _greedy_grow(net, trap, within, clock)
        allowed = []
        growable = []
        for i, (v, w) in enumerate(zip(trap.values, within.values)):
            if v == FREE:
                allowed.append({FREE})
            elif w == FREE:
                allowed.append({v, FREE})
                growable.append(i)
            else:
                allowed.append({v})
        if not growable:
            return trap
        clauses = [
            [(i, {FREE}) for i in growable],  # strictly larger
            [(i, {0, 1}) for i in range(n)],  # still not the full cube
        ]
        bigger = next(
            _trap_search(net, allowed, clauses, True, clock, reverse_order), None
        )
        if bigger is None:
            return trap
        trap = bigger


def maximal_trap_spaces(
    net, within=None, limit=None, deadline=None, reverse_order=False
):
    """Stream the subset-maximal trap spaces in `within`, full cube excluded."""
    _check_limit(limit)
    n = net.n
    if within is None:
        within = Cube.full(n)
    if len(within) != n:
        raise ValueError("restriction cube has wrong length")
    clock = _Deadline(deadline)
    clock.check_now()
    emitted = []
    while limit is None or len(emitted) < limit:
        allowed = _allowed_within(within)
        clauses = [[(i, {0, 1}) for i in range(n)]]
        clauses.extend(_not_subset_clause(t) for t in emitted)
        candidate = next(
            _trap_search(net, allowed, clauses, True, clock, reverse_order), None
        )
        if candidate is None:
            return
        trap = _maximize_trap(net, candidate, within, clock, reverse_order)
        yield trap
        emitted.append(trap)


# ---------------------------------------------------------------------------


def run_query(net, query, deadline=None):
    if query.kind == "fixed-points":
        return (
            Cube.from_state(s)
            for s in fixed_points(net, query.within, query.limit, deadline)
        )
    if query.kind == "minimal-trap-spaces":
        return minimal_trap_spaces(net, query.within, query.limit, deadline)
    if query.kind == "maximal-trap-spaces":
        return maximal_trap_spaces(net, query.within, query.limit, deadline)
    raise ValueError("unknown query kind %r" % query.kind)


def count_solutions(net, query):
    """Drain the query's stream and return the number of solutions."""
    return sum(1 for _ in run_query(net, query))
