"""Finite gauge theory: groups, class functions, bundle counting and push-pull.

Bundles are modelled by based holonomy tuples. On a connected surface of
genus ``g`` with ``p`` incoming and ``q`` outgoing circles a based bundle is a
tuple ``(a_1, b_1, ..., a_g, b_g, c_1, ..., c_p, d_1, ..., d_q)`` with

    [a_1, b_1] ... [a_g, b_g] c_1 ... c_p (d_q ... d_1)^-1 = e

and the group acts by simultaneous conjugation, freely on basepoints, so a
groupoid cardinality is a tuple count divided by ``#G``.
"""

from __future__ import annotations

import itertools
import json
import os
import re
from collections import Counter, defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Callable, Hashable, Sequence

from .algebra import Algebra
from .frobenius import FrobeniusAlgebra, partition_function
from .linalg import ExactMatrix, ExactTensor, scalar_str, to_scalar
from .reports import Check, VerificationReport


class UnknownGroup(ValueError):
    pass


class InvalidGroup(ValueError):
    pass


@dataclass(frozen=True)
class ConjugacyData:
    class_of: tuple[int, ...]
    class_reps: tuple[int, ...]
    class_sizes: tuple[int, ...]
    centralizer_orders: tuple[int, ...]

    @property
    def count(self) -> int:
        return len(self.class_reps)

    def members(self, k: int) -> list[int]:
        return [x for x, c in enumerate(self.class_of) if c == k]


class FiniteGroup:
    """A group given by its multiplication table on elements ``0..n-1``.

    ``table[i][j]`` is the index of ``i * j``. The table is checked
    exhaustively on construction.
    """

    def __init__(self, table: Sequence[Sequence[int]], name: str = "",
                 element_names: Sequence[str] | None = None):
        n = len(table)
        if n == 0:
            raise InvalidGroup("a group has at least one element")
        rows = tuple(tuple(int(x) for x in r) for r in table)
        if any(len(r) != n for r in rows) or any(not 0 <= x < n for r in rows for x in r):
            raise InvalidGroup("table must be square with entries in range(order)")
        ident = [i for i in range(n) if rows[i] == tuple(range(n))
                 and all(rows[j][i] == j for j in range(n))]
        if not ident:
            raise InvalidGroup("no two-sided identity")
        e = ident[0]
        inverse = []
        for i in range(n):
            inv = [j for j in range(n) if rows[i][j] == e and rows[j][i] == e]
            if not inv:
                raise InvalidGroup(f"element {i} has no two-sided inverse")
            inverse.append(inv[0])
        for a in range(n):
            ra = rows[a]
            for b in range(n):
                ab = ra[b]
                rb = rows[b]
                rab = rows[ab]
                for c in range(n):
                    if rab[c] != ra[rb[c]]:
                        raise InvalidGroup(f"associativity fails at ({a}, {b}, {c})")
        self.table = rows
        self.order = n
        self.identity = e
        self.inverse = tuple(inverse)
        self.name = name or f"group{n}"
        self.element_names = tuple(element_names) if element_names else tuple(map(str, range(n)))

    @classmethod
    def from_elements(cls, elements: Sequence[Hashable], mul: Callable, name: str = "",
                      names: Sequence[str] | None = None) -> "FiniteGroup":
        index = {x: i for i, x in enumerate(elements)}
        table = [[index[mul(x, y)] for y in elements] for x in elements]
        return cls(table, name, names)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def commutator(self, a: int, b: int) -> int:
        t, inv = self.table, self.inverse
        return t[t[a][b]][t[inv[a]][inv[b]]]

    def is_abelian(self) -> bool:
        return all(self.table[a][b] == self.table[b][a]
                   for a in range(self.order) for b in range(a))

    @cached_property
    def conjugacy(self) -> ConjugacyData:
        n, t, inv = self.order, self.table, self.inverse
        class_of = [-1] * n
        reps, sizes = [], []
        for x in range(n):
            if class_of[x] >= 0:
                continue
            k = len(reps)
            orbit = {t[t[g][x]][inv[g]] for g in range(n)}
            for y in orbit:
                class_of[y] = k
            reps.append(x)
            sizes.append(len(orbit))
        cent = [n // s for s in sizes]
        return ConjugacyData(tuple(class_of), tuple(reps), tuple(sizes), tuple(cent))

    @cached_property
    def commutator_fiber(self) -> tuple[int, ...]:
        """``fiber[x] = #{(a, b) : [a, b] = x}``, by enumerating all pairs."""
        cnt = Counter(self.commutator(a, b) for a in range(self.order) for b in range(self.order))
        return tuple(cnt.get(x, 0) for x in range(self.order))

    def class_label(self, k: int) -> str:
        return "[" + self.element_names[self.conjugacy.class_reps[k]] + "]"

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name}, order={self.order})"


# -- builtin groups -------------------------------------------------------------

def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise UnknownGroup("cyclic(n) needs n >= 1")
    return FiniteGroup.from_elements(range(n), lambda a, b: (a + b) % n, f"cyclic{n}",
                                     [str(i) for i in range(n)])


def _cycle_notation(p: tuple[int, ...]) -> str:
    seen, cycles = set(), []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        c, j = [], i
        while j not in seen:
            seen.add(j)
            c.append(j + 1)
            j = p[j]
        cycles.append("(" + " ".join(map(str, c)) + ")")
    return "".join(cycles) or "e"


def symmetric(n: int) -> FiniteGroup:
    if not 1 <= n <= 5:
        raise UnknownGroup("symmetric(n) is provided for 1 <= n <= 5")
    perms = sorted(itertools.permutations(range(n)))
    # (p q)(i) = p(q(i))
    return FiniteGroup.from_elements(perms, lambda p, q: tuple(p[q[i]] for i in range(n)),
                                     f"symmetric{n}", [_cycle_notation(p) for p in perms])


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of the n-gon, order ``2n``; ``(k, f)`` stands for ``r^k s^f``."""
    if n < 1:
        raise UnknownGroup("dihedral(n) needs n >= 1")
    elems = [(k, f) for f in (0, 1) for k in range(n)]

    def mul(x, y):
        k, f = x
        l, g = y
        return ((k + (-l if f else l)) % n, (f + g) % 2)

    names = [("r^%d" % k if k else "") + ("s" if f else "") or "e" for k, f in elems]
    return FiniteGroup.from_elements(elems, mul, f"dihedral{n}", names)


_QUAT = {  # unit * unit -> (sign, unit)
    ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
    ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
    ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
    ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
}


def quaternion8() -> FiniteGroup:
    elems = [(s, u) for u in "1ijk" for s in (1, -1)]

    def mul(x, y):
        s, u = _QUAT[(x[1], y[1])]
        return (x[0] * y[0] * s, u)

    names = [("-" if s < 0 else "") + u for s, u in elems]
    return FiniteGroup.from_elements(elems, mul, "quaternion8", names)


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    m = h.order
    table = [[g.table[a // m][b // m] * m + h.table[a % m][b % m]
              for b in range(g.order * m)] for a in range(g.order * m)]
    names = [f"({x},{y})" for x in g.element_names for y in h.element_names]
    return FiniteGroup(table, f"{g.name}x{h.name}", names)


_FACTOR = re.compile(r"^(cyclic|symmetric|dihedral|c|s|d)\(?(\d+)\)?$")


def builtin_group(name: str) -> FiniteGroup:
    """``cyclic(n)``, ``symmetric(n)`` (n <= 5), ``dihedral(n)``, ``quaternion8``,
    and products of these joined by ``x`` (``"cyclic2 x symmetric3"``)."""
    parts = [p.strip() for p in re.split(r"[x×*]", name.strip().lower())]
    if not parts or any(not p for p in parts):
        raise UnknownGroup(f"unknown group {name!r}")
    groups = []
    for p in parts:
        p = p.replace(" ", "")
        if p in ("quaternion8", "quaternion", "q8"):
            groups.append(quaternion8())
            continue
        m = _FACTOR.match(p)
        if not m:
            raise UnknownGroup(f"unknown group {p!r}")
        family, n = m.group(1)[0], int(m.group(2))
        groups.append({"c": cyclic, "s": symmetric, "d": dihedral}[family](n))
    out = groups[0]
    for g in groups[1:]:
        out = direct_product(out, g)
    return out


def group_from_json(data: dict) -> FiniteGroup:
    table = data["table"]
    if "order" in data and int(data["order"]) != len(table):
        raise InvalidGroup(f"order {data['order']} does not match a table with {len(table)} rows")
    return FiniteGroup(table, data.get("name", ""), data.get("elements"))


def group_to_json(g: FiniteGroup) -> dict:
    return {"order": g.order, "table": [list(r) for r in g.table]}


def load_group(spec: str) -> FiniteGroup:
    """A builtin name, or a path to a group file."""
    if os.path.exists(spec):
        with open(spec, encoding="utf-8") as fh:
            return group_from_json(json.load(fh))
    return builtin_group(spec)


# -- functions on G ------------------------------------------------------------

def convolution(g: FiniteGroup, f1: Sequence, f2: Sequence) -> list[Fraction]:
    """``(f1 * f2)(x) = sum_{ab = x} f1(a) f2(b)``."""
    out = [Fraction(0)] * g.order
    for a in range(g.order):
        x = to_scalar(f1[a])
        if not x:
            continue
        row = g.table[a]
        for b in range(g.order):
            if f2[b]:
                out[row[b]] += x * to_scalar(f2[b])
    return out


def dw_trace(g: FiniteGroup, f: Sequence) -> Fraction:
    return to_scalar(f[g.identity]) / g.order


def class_indicator(g: FiniteGroup, k: int) -> list[Fraction]:
    cls = g.conjugacy.class_of
    return [Fraction(int(cls[x] == k)) for x in range(g.order)]


def class_function_coordinates(g: FiniteGroup, f: Sequence) -> list[Fraction]:
    """Coordinates of a class function in the class-indicator basis."""
    conj = g.conjugacy
    coords = [to_scalar(f[r]) for r in conj.class_reps]
    for x in range(g.order):
        if to_scalar(f[x]) != coords[conj.class_of[x]]:
            raise ValueError("function is not constant on conjugacy classes")
    return coords


def convolution_algebra(g: FiniteGroup) -> Algebra:
    """``Map(G)`` under convolution, basis ``delta_x``."""
    n = g.order

    def product(a, b):
        v = [0] * n
        v[g.table[a][b]] = 1
        return v

    unit = [int(x == g.identity) for x in range(n)]
    return Algebra.from_products(n, product, unit, [f"δ{s}" for s in g.element_names])


def convolution_frobenius_algebra(g: FiniteGroup) -> FrobeniusAlgebra:
    """``Map(G)`` with the trace ``f(e)/#G`` (not commutative in general)."""
    a = convolution_algebra(g)
    trace = [Fraction(int(x == g.identity), g.order) for x in range(g.order)]
    return FrobeniusAlgebra(a.dim, a.structure_constants, a.unit, a.labels, tuple(trace),
                            commutative=g.is_abelian())


def center_frobenius_algebra(g: FiniteGroup) -> FrobeniusAlgebra:
    """Class functions in the class-indicator basis, with convolution and ``f(e)/#G``."""
    conj = g.conjugacy
    k = conj.count
    members = [conj.members(i) for i in range(k)]
    flat = []
    for i in range(k):
        for j in range(k):
            hits = Counter(conj.class_of[g.table[x][y]] for x in members[i] for y in members[j])
            flat.extend(Fraction(hits.get(d, 0), conj.class_sizes[d]) for d in range(k))
    unit = tuple(Fraction(int(conj.class_of[g.identity] == i)) for i in range(k))
    trace = tuple(Fraction(int(conj.class_of[g.identity] == i), g.order) for i in range(k))
    labels = tuple(g.class_label(i) for i in range(k))
    return FrobeniusAlgebra(k, ExactTensor((k, k, k), tuple(flat)), unit, labels, trace, True)


# -- counting --------------------------------------------------------------------

_PARALLEL_THRESHOLD = 200_000


def _resolve_workers(workers: int | None, work: int) -> int:
    if workers is None:
        workers = os.cpu_count() or 1
        if work < _PARALLEL_THRESHOLD:
            return 1
    return max(1, int(workers))


def _chunks(items: list, parts: int) -> list[list]:
    parts = max(1, min(parts, len(items)))
    return [items[i::parts] for i in range(parts)]


def _count_homs_chunk(args) -> int:
    table, inverse, comm, fiber, depth, outer = args

    def dfs(prod: int, remaining: int) -> int:
        if remaining == 0:
            return fiber[inverse[prod]]
        row = table[prod]
        return sum(dfs(row[c], remaining - 1) for c in comm)

    return sum(dfs(comm[pair], depth) for pair in outer)


def count_homs(g: FiniteGroup, genus: int, workers: int | None = None) -> int:
    """``#{(a_1, b_1, ..., a_g, b_g) : prod [a_i, b_i] = e}``.

    Enumerates the first ``g - 1`` commutator pairs with running partial
    products; the last pair is settled by the enumerated commutator fiber.
    The outermost pair index is split across ``workers`` processes and the
    tallies are summed, so the result does not depend on ``workers``.
    """
    if genus < 0:
        raise ValueError("genus must be non-negative")
    if genus == 0:
        return 1
    fiber = g.commutator_fiber
    if genus == 1:
        return fiber[g.identity]
    n = g.order
    comm = [g.commutator(a, b) for a in range(n) for b in range(n)]
    depth = genus - 2
    work = (n * n) ** (genus - 1)
    nworkers = _resolve_workers(workers, work)
    outer = list(range(n * n))
    jobs = [(g.table, g.inverse, comm, fiber, depth, chunk) for chunk in _chunks(outer, nworkers)]
    if nworkers == 1:
        return sum(_count_homs_chunk(j) for j in jobs)
    with ProcessPoolExecutor(max_workers=nworkers) as pool:
        return sum(pool.map(_count_homs_chunk, jobs))


def partition_function_counting(g: FiniteGroup, genus: int, workers: int | None = None) -> Fraction:
    return Fraction(count_homs(g, genus, workers), g.order)


def _steps(genus: int, inputs: int, outputs: int) -> list[str]:
    return ["handle"] * genus + ["in"] * inputs + ["out"] * outputs


def _tally_chunk(args) -> dict:
    """Based-tuple counts binned by boundary classes, merging equal partial products."""
    table, inverse, class_of, fiber, steps, first = args
    n = len(table)
    e = _identity_of(table)
    states: dict = {(e, ()): 1}
    for pos, kind in enumerate(steps):
        choices = first if pos == 0 else range(n)
        new: dict = defaultdict(int)
        for (prod, classes), cnt in states.items():
            row = table[prod]
            for x in choices:
                if kind == "handle":
                    if fiber[x]:
                        new[(row[x], classes)] += cnt * fiber[x]
                elif kind == "in":
                    new[(row[x], classes + (class_of[x],))] += cnt
                else:
                    new[(row[inverse[x]], classes + (class_of[x],))] += cnt
        states = new
    return {classes: cnt for (prod, classes), cnt in states.items() if prod == e}


def _identity_of(table) -> int:
    n = len(table)
    return next(i for i in range(n) if tuple(table[i]) == tuple(range(n)))


def based_tuple_counts(g: FiniteGroup, genus: int, inputs: int, outputs: int,
                       workers: int | None = None) -> dict[tuple[int, ...], int]:
    """``T[(C_1..C_p, D_1..D_q)]``: based tuples with ``c_i in C_i`` and ``d_j in D_j``."""
    steps = _steps(genus, inputs, outputs)
    if not steps:
        return {(): 1}
    n = g.order
    nworkers = _resolve_workers(workers, n ** len(steps))
    jobs = [(g.table, g.inverse, g.conjugacy.class_of, g.commutator_fiber, steps, chunk)
            for chunk in _chunks(list(range(n)), nworkers)]
    if nworkers == 1:
        parts = [_tally_chunk(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=nworkers) as pool:
            parts = list(pool.map(_tally_chunk, jobs))
    total: dict = defaultdict(int)
    for part in parts:
        for key, cnt in part.items():
            total[key] += cnt
    return dict(total)


def push_pull_map(g: FiniteGroup, genus: int, inputs: int, outputs: int,
                  workers: int | None = None) -> ExactMatrix:
    """Pull back along the incoming restriction, push forward along the outgoing one.

    Matrix in the class-indicator basis (rows: outgoing class tuples, columns:
    incoming class tuples, first circle outermost). With ``T`` the based
    tuple count for the boundary classes, the entry is
    ``T * prod_j #Z(D_j) / #G``: the homotopy fibre over a fixed outgoing
    holonomy tuple has groupoid cardinality ``T * prod #Z(D_j) / #G``.
    """
    if inputs < 0 or outputs < 0 or genus < 0:
        raise ValueError("genus, inputs and outputs must be non-negative")
    if inputs + outputs == 0:
        raise ValueError("push_pull_map needs at least one boundary circle; "
                         "use partition_function_counting for closed surfaces")
    conj = g.conjugacy
    k = conj.count
    counts = based_tuple_counts(g, genus, inputs, outputs, workers)
    cols = list(itertools.product(range(k), repeat=inputs))
    rows = list(itertools.product(range(k), repeat=outputs))
    entries = []
    for d in rows:
        weight = Fraction(1, g.order)
        for cls in d:
            weight *= conj.centralizer_orders[cls]
        for c in cols:
            entries.append(counts.get(c + d, 0) * weight)
    return ExactMatrix(len(rows), len(cols), tuple(entries))


def mednykh_verify(g: FiniteGroup, genus: int, workers: int | None = None) -> VerificationReport:
    """Bundle count against ``#G`` times the handle-operator partition function."""
    lhs = count_homs(g, genus, workers)
    rhs = g.order * partition_function(center_frobenius_algebra(g), genus)
    check = Check("mednykh", lhs == rhs, {"lhs": str(lhs), "rhs": scalar_str(rhs)})
    return VerificationReport(f"{g.name} genus {genus}", (check,),
                              {"lhs": lhs, "rhs": rhs, "group": g.name, "genus": genus,
                               "order": g.order, "classes": g.conjugacy.count})
