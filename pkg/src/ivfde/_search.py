"""Compiled valuation search over formulas stored as a shared DAG.

Formulas are hash-consed into parallel integer arrays (operator code, left
child, right child), so structurally equal subformulas are one node.  The
search kernel gathers the nodes below the query roots, orders them
variables-first then children-first, and runs a depth-first search for a
valuation meeting per-node value masks.  Dead situations are remembered
within one search: a position together with the values of the assigned
nodes that later nodes still read.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from numba import njit

from .formula import NODE_CLASSES, Formula, Var

OP_CODES: Dict[str, int] = {"var": 0, "neg": 1, "sneg": 2, "box": 3, "and": 4, "or": 5, "imp": 6}
OP_NAMES = {code: name for name, code in OP_CODES.items()}
ARITY = np.array([0, 1, 1, 1, 2, 2, 2], dtype=np.int8)

# Work buffers are sized for this many distinct subformulas per query.
_DEFAULT_CAPACITY = 256
# Slots of the dead-situation table (a power of two).
_MEMO_SLOTS = 1 << 16


class FormulaDag:
    """Hash-consed formulas as integer arrays.

    Nodes added with :meth:`node` or :meth:`add` are shared by structure.
    :meth:`extend` appends many nodes at once without registering them for
    lookup; the caller guarantees they are new and pairwise distinct.
    """

    def __init__(self) -> None:
        self._op: List[int] = []
        self._left: List[int] = []
        self._right: List[int] = []
        self._ids: Dict[Tuple, int] = {}
        self.var_names: List[str] = []
        self._bulk: List[Tuple[np.ndarray, np.ndarray, np.ndarray]] = []
        self._arrays: Optional[Tuple[np.ndarray, np.ndarray, np.ndarray]] = None

    def __len__(self) -> int:
        return len(self._op) + sum(len(b[0]) for b in self._bulk)

    def _append(self, code: int, left: int, right: int) -> int:
        if self._bulk:
            raise RuntimeError("cannot add single nodes after a bulk extension")
        self._op.append(code)
        self._left.append(left)
        self._right.append(right)
        self._arrays = None
        return len(self._op) - 1

    def var(self, name: str) -> int:
        key = ("var", name)
        if key not in self._ids:
            self._ids[key] = self._append(0, len(self.var_names), -1)
            self.var_names.append(name)
        return self._ids[key]

    def node(self, op: str, left: int, right: int = -1) -> int:
        key = (op, left, right)
        if key not in self._ids:
            self._ids[key] = self._append(OP_CODES[op], left, right)
        return self._ids[key]

    def add(self, f: Formula) -> int:
        if isinstance(f, Var):
            return self.var(f.name)
        kids = [self.add(c) for c in f.children]
        return self.node(f.op, *kids)

    def extend(self, codes: np.ndarray, left: np.ndarray, right: np.ndarray) -> np.ndarray:
        start = len(self)
        self._bulk.append((np.asarray(codes, dtype=np.int8), np.asarray(left, dtype=np.int32),
                           np.asarray(right, dtype=np.int32)))
        self._arrays = None
        return np.arange(start, start + len(codes), dtype=np.int64)

    def arrays(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        if self._arrays is None:
            ops = [np.array(self._op, dtype=np.int8)] + [b[0] for b in self._bulk]
            lefts = [np.array(self._left, dtype=np.int32)] + [b[1] for b in self._bulk]
            rights = [np.array(self._right, dtype=np.int32)] + [b[2] for b in self._bulk]
            self._arrays = (np.concatenate(ops), np.concatenate(lefts), np.concatenate(rights))
        return self._arrays

    def formula(self, i: int) -> Formula:
        op, left, right = self.arrays()
        code = int(op[i])
        if code == 0:
            return Var(self.var_names[int(left[i])])
        cls = NODE_CLASSES[OP_NAMES[code]]
        if ARITY[code] == 1:
            return cls(self.formula(int(left[i])))
        return cls(self.formula(int(left[i])), self.formula(int(right[i])))

    def codes_used(self) -> set:
        op, _, _ = self.arrays()
        return {OP_NAMES[int(c)] for c in np.unique(op)}


_LOWEST = np.array([(m & -m).bit_length() - 1 if m else -1 for m in range(256)], dtype=np.int8)


@njit(cache=True)
def _plan(roots, op, left, right, arity, stamp, tag, loc,
          nodes, kid0, kid1, fptr, fidx, stack, state, post, last_use):
    """Gather the nodes below ``roots`` in branch order; returns their count or -1 on overflow."""
    cap = nodes.shape[0]
    npost = 0
    for r in roots:
        if stamp[r] == tag:
            continue
        sp = 0
        stack[0] = r
        state[0] = 0
        sp = 1
        while sp > 0:
            g = stack[sp - 1]
            if stamp[g] == tag:
                sp -= 1
                continue
            st = state[sp - 1]
            if st < arity[op[g]]:
                state[sp - 1] = st + 1
                c = left[g] if st == 0 else right[g]
                if stamp[c] != tag:
                    if sp >= cap:
                        return -1
                    stack[sp] = c
                    state[sp] = 0
                    sp += 1
            else:
                if npost >= cap:
                    return -1
                stamp[g] = tag
                post[npost] = g
                npost += 1
                sp -= 1
    n = 0
    for i in range(npost):
        if op[post[i]] == 0:
            nodes[n] = post[i]
            n += 1
    for i in range(npost):
        if op[post[i]] != 0:
            nodes[n] = post[i]
            n += 1
    for i in range(n):
        loc[nodes[i]] = i
    for i in range(n):
        last_use[i] = -1
    for i in range(n):
        g = nodes[i]
        a = arity[op[g]]
        kid0[i] = loc[left[g]] if a >= 1 else -1
        kid1[i] = loc[right[g]] if a == 2 else -1
        if a >= 1:
            last_use[kid0[i]] = i
        if a == 2:
            last_use[kid1[i]] = i
    k = 0
    for pos in range(n + 1):
        fptr[pos] = k
        for j in range(pos):
            if last_use[j] >= pos:
                fidx[k] = j
                k += 1
    fptr[n + 1] = k
    return n


@njit(cache=True)
def _dfs(n, codes, kid0, kid1, limit, tables, full, fptr, fidx, lowest, vals, rem, keys, keyed,
         memo_keys, memo_gen, gen):
    """Fill ``vals`` with the first valuation within ``limit``; returns whether one exists.

    Dead situations go into an open-addressing table whose slots belong to
    this search when their generation equals ``gen``.  When the table is
    half full further situations are simply not recorded.
    """
    mask = memo_keys.shape[0] - 1
    room = memo_keys.shape[0] // 2
    pos = 0
    enter = True
    while True:
        if enter:
            if pos == n:
                return True
            count = fptr[pos + 1] - fptr[pos]
            keyed[pos] = count <= 18 and pos < 256
            skip = False
            if keyed[pos]:
                key = np.int64(0)
                for t in range(fptr[pos], fptr[pos + 1]):
                    key = key * 8 + vals[fidx[t]]
                key = key * 256 + pos
                keys[pos] = key
                h = (key * np.int64(0x5851F42D4C957F2D)) >> 17
                slot = h & mask
                while memo_gen[slot] == gen:
                    if memo_keys[slot] == key:
                        skip = True
                        break
                    slot = (slot + 1) & mask
            if skip:
                rem[pos] = 0
                keyed[pos] = False
            else:
                c = codes[pos]
                if c == 0:
                    choice = full
                elif kid1[pos] < 0:
                    choice = tables[c, vals[kid0[pos]], 0]
                else:
                    choice = tables[c, vals[kid0[pos]], vals[kid1[pos]]]
                rem[pos] = choice & limit[pos]
        if rem[pos] != 0:
            b = lowest[rem[pos]]
            rem[pos] &= rem[pos] - 1
            vals[pos] = b
            pos += 1
            enter = True
        else:
            if keyed[pos] and room > 0:
                key = keys[pos]
                h = (key * np.int64(0x5851F42D4C957F2D)) >> 17
                slot = h & mask
                while memo_gen[slot] == gen:
                    slot = (slot + 1) & mask
                memo_gen[slot] = gen
                memo_keys[slot] = key
                room -= 1
            pos -= 1
            enter = False
            if pos < 0:
                return False


class _Buffers:
    def __init__(self, size: int, capacity: int) -> None:
        self.stamp = np.zeros(size, dtype=np.int64)
        self.loc = np.zeros(size, dtype=np.int64)
        self.tag = 0
        self.resize(capacity)

    def resize(self, cap: int) -> None:
        self.cap = cap
        self.nodes = np.zeros(cap, dtype=np.int64)
        self.kid0 = np.zeros(cap, dtype=np.int64)
        self.kid1 = np.zeros(cap, dtype=np.int64)
        self.fptr = np.zeros(cap + 2, dtype=np.int64)
        self.fidx = np.zeros(cap * cap + 1, dtype=np.int64)
        self.stack = np.zeros(cap, dtype=np.int64)
        self.state = np.zeros(cap, dtype=np.int64)
        self.vals = np.zeros(cap, dtype=np.int64)
        self.rem = np.zeros(cap, dtype=np.int64)
        self.keys = np.zeros(cap, dtype=np.int64)
        self.keyed = np.zeros(cap, dtype=np.bool_)
        self.limit = np.zeros(cap, dtype=np.int64)
        self.codes = np.zeros(cap, dtype=np.int64)
        self.post = np.zeros(cap, dtype=np.int64)
        self.last_use = np.zeros(cap, dtype=np.int64)
        self.memo_keys = np.zeros(_MEMO_SLOTS, dtype=np.int64)
        self.memo_gen = np.zeros(_MEMO_SLOTS, dtype=np.int64)


def search(dag: FormulaDag, roots: Sequence[int], constraints: Dict[int, int],
           tables: np.ndarray, full: int) -> Optional[Tuple[np.ndarray, np.ndarray]]:
    """First valuation of the nodes below ``roots`` meeting ``constraints`` (node -> mask).

    Returns the nodes in branch order with their value indices, or None.
    """
    op, left, right = dag.arrays()
    roots_arr = np.asarray(roots, dtype=np.int64)
    buf = _Buffers(len(op), min(len(op), _DEFAULT_CAPACITY) or 1)
    buf.tag = 1
    while True:
        n = _plan(roots_arr, op, left, right, ARITY, buf.stamp, buf.tag, buf.loc,
                  buf.nodes, buf.kid0, buf.kid1, buf.fptr, buf.fidx, buf.stack, buf.state,
                  buf.post, buf.last_use)
        if n >= 0:
            break
        buf.resize(len(op))
        buf.tag += 1
    buf.limit[:n] = full
    for node, mask in constraints.items():
        buf.limit[buf.loc[node]] &= mask
    buf.codes[:n] = op[buf.nodes[:n]]
    found = _dfs(n, buf.codes, buf.kid0, buf.kid1, buf.limit, tables, full, buf.fptr, buf.fidx,
                 _LOWEST, buf.vals, buf.rem, buf.keys, buf.keyed, buf.memo_keys, buf.memo_gen, 1)
    if not found:
        return None
    return buf.nodes[:n].copy(), buf.vals[:n].copy()


@njit(cache=True)
def _classify(roots, op, left, right, arity, tables, full, designated, lowest, stamp, loc,
              nodes, kid0, kid1, fptr, fidx, stack, state, post, last_use, vals, rem, keys, keyed,
              limit, codes, memo_keys, memo_gen, satisfiable, refutable):
    one = np.empty(1, dtype=np.int64)
    for i in range(roots.shape[0]):
        one[0] = roots[i]
        n = _plan(one, op, left, right, arity, stamp, i + 1, loc,
                  nodes, kid0, kid1, fptr, fidx, stack, state, post, last_use)
        if n < 0:
            return i
        for j in range(n):
            codes[j] = op[nodes[j]]
        top = loc[roots[i]]
        for j in range(n):
            limit[j] = full
        limit[top] = designated
        satisfiable[i] = _dfs(n, codes, kid0, kid1, limit, tables, full, fptr, fidx,
                              lowest, vals, rem, keys, keyed, memo_keys, memo_gen, 2 * i + 1)
        limit[top] = full & ~designated
        refutable[i] = _dfs(n, codes, kid0, kid1, limit, tables, full, fptr, fidx,
                            lowest, vals, rem, keys, keyed, memo_keys, memo_gen, 2 * i + 2)
    return -1


def classify(dag: FormulaDag, roots: np.ndarray, tables: np.ndarray, full: int,
             designated: int, capacity: int = 64) -> Tuple[np.ndarray, np.ndarray]:
    """Satisfiability and refutability of each root, one search per question."""
    op, left, right = dag.arrays()
    roots = np.asarray(roots, dtype=np.int64)
    buf = _Buffers(len(op), capacity)
    sat = np.zeros(len(roots), dtype=np.bool_)
    ref = np.zeros(len(roots), dtype=np.bool_)
    done = 0
    while done < len(roots):
        # stamps are per-call tags, so restart them for each chunk
        buf.stamp[:] = 0
        buf.memo_gen[:] = 0
        part = roots[done:]
        stopped = _classify(part, op, left, right, ARITY, tables, full, designated, _LOWEST,
                            buf.stamp, buf.loc, buf.nodes, buf.kid0, buf.kid1, buf.fptr, buf.fidx,
                            buf.stack, buf.state, buf.post, buf.last_use, buf.vals, buf.rem,
                            buf.keys, buf.keyed, buf.limit, buf.codes, buf.memo_keys, buf.memo_gen,
                            sat[done:], ref[done:])
        if stopped < 0:
            break
        done += stopped
        buf.resize(buf.cap * 4)
    return sat, ref
