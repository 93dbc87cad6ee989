"""Bordisms as words in elementary generators.

A word is a list of slices read in time order; a slice is a list of
generators placed side by side (left to right = first to last tensor
factor). Objects are signed point lists in dimension one and circle counts
in dimension two.

1D conventions: ``coev: ∅ -> (+,-)`` and ``ev: (-,+) -> ∅``; ``symm``
exchanges two adjacent points and carries their signs.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence, Union


class TypeMismatch(ValueError):
    """Adjacent pieces of a word disagree on their shared boundary."""


class DimensionMismatch(ValueError):
    """A 1D piece was combined with a 2D piece."""


@dataclass(frozen=True)
class Object1D:
    signs: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "signs", tuple(self.signs))
        if any(s not in "+-" or len(s) != 1 for s in self.signs):
            raise ValueError(f"signs must be '+' or '-', got {self.signs}")

    dimension = 1

    def __add__(self, other: "Object1D") -> "Object1D":
        if not isinstance(other, Object1D):
            raise DimensionMismatch(f"cannot tensor {self} with {other}")
        return Object1D(self.signs + other.signs)

    def __len__(self) -> int:
        return len(self.signs)

    def __str__(self) -> str:
        return "(" + ",".join(self.signs) + ")" if self.signs else "∅"


@dataclass(frozen=True)
class Object2D:
    circles: int = 0

    def __post_init__(self):
        if self.circles < 0:
            raise ValueError("circle count must be non-negative")

    dimension = 2

    def __add__(self, other: "Object2D") -> "Object2D":
        if not isinstance(other, Object2D):
            raise DimensionMismatch(f"cannot tensor {self} with {other}")
        return Object2D(self.circles + other.circles)

    def __len__(self) -> int:
        return self.circles

    def __str__(self) -> str:
        return f"{self.circles} circle" + ("" if self.circles == 1 else "s")


BordismObject = Union[Object1D, Object2D]


def empty_object(dimension: int) -> BordismObject:
    if dimension == 1:
        return Object1D(())
    if dimension == 2:
        return Object2D(0)
    raise ValueError(f"unsupported dimension {dimension}")


class Kind(Enum):
    ID_PLUS = "id+"
    ID_MINUS = "id-"
    COEV = "coev"
    EV = "ev"
    SYMM = "symm"
    CYL = "cyl"
    CAP = "cap"
    CUP = "cup"
    PANTS = "pants"
    COPANTS = "copants"
    SWAP = "swap"

    @property
    def dimension(self) -> int:
        return 1 if self in _KINDS_1D else 2


_KINDS_1D = frozenset({Kind.ID_PLUS, Kind.ID_MINUS, Kind.COEV, Kind.EV, Kind.SYMM})

_TYPES_2D = {
    Kind.CYL: (1, 1),
    Kind.CAP: (0, 1),
    Kind.CUP: (1, 0),
    Kind.PANTS: (2, 1),
    Kind.COPANTS: (1, 2),
    Kind.SWAP: (2, 2),
}

_TYPES_1D = {
    Kind.ID_PLUS: (("+",), ("+",)),
    Kind.ID_MINUS: (("-",), ("-",)),
    Kind.COEV: ((), ("+", "-")),
    Kind.EV: (("-", "+"), ()),
}


@dataclass(frozen=True)
class Generator:
    kind: Kind
    signs: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "signs", tuple(self.signs))
        if self.kind is Kind.SYMM:
            if len(self.signs) != 2 or any(s not in ("+", "-") for s in self.signs):
                raise ValueError("symm needs the two signs it exchanges")
        elif self.signs:
            raise ValueError(f"{self.kind.value} takes no sign arguments")

    @property
    def dimension(self) -> int:
        return self.kind.dimension

    @property
    def source(self) -> BordismObject:
        if self.kind is Kind.SYMM:
            return Object1D(self.signs)
        if self.kind in _TYPES_1D:
            return Object1D(_TYPES_1D[self.kind][0])
        return Object2D(_TYPES_2D[self.kind][0])

    @property
    def target(self) -> BordismObject:
        if self.kind is Kind.SYMM:
            return Object1D(self.signs[::-1])
        if self.kind in _TYPES_1D:
            return Object1D(_TYPES_1D[self.kind][1])
        return Object2D(_TYPES_2D[self.kind][1])

    @property
    def is_identity(self) -> bool:
        return self.kind in (Kind.ID_PLUS, Kind.ID_MINUS, Kind.CYL)

    def dsl(self) -> str:
        if self.kind is Kind.SYMM:
            return f"symm({self.signs[0]},{self.signs[1]})"
        return self.kind.value


ID_PLUS = Generator(Kind.ID_PLUS)
ID_MINUS = Generator(Kind.ID_MINUS)
COEV = Generator(Kind.COEV)
EV = Generator(Kind.EV)
CYL = Generator(Kind.CYL)
CAP = Generator(Kind.CAP)
CUP = Generator(Kind.CUP)
PANTS = Generator(Kind.PANTS)
COPANTS = Generator(Kind.COPANTS)
SWAP = Generator(Kind.SWAP)


def SYMM(a: str, b: str) -> Generator:
    return Generator(Kind.SYMM, (a, b))


Slice = tuple[Generator, ...]


def slice_boundary(slice_: Sequence[Generator], dimension: int, end: str) -> BordismObject:
    obj = empty_object(dimension)
    for g in slice_:
        if g.dimension != dimension:
            raise DimensionMismatch(f"{g.kind.value} is not a {dimension}D generator")
        obj = obj + (g.source if end == "source" else g.target)
    return obj


def identity_slice(obj: BordismObject) -> Slice:
    if isinstance(obj, Object1D):
        return tuple(ID_PLUS if s == "+" else ID_MINUS for s in obj.signs)
    return (CYL,) * obj.circles


@dataclass(frozen=True)
class BordismWord:
    slices: tuple[Slice, ...]
    source: BordismObject
    target: BordismObject

    def __post_init__(self):
        slices = tuple(tuple(s) for s in self.slices)
        object.__setattr__(self, "slices", slices)
        if self.source.dimension != self.target.dimension:
            raise DimensionMismatch(f"source {self.source} and target {self.target} differ in dimension")
        dim = self.source.dimension
        cur = self.source
        for k, s in enumerate(slices):
            src = slice_boundary(s, dim, "source")
            if src != cur:
                raise TypeMismatch(f"slice {k} expects {src} but receives {cur}")
            cur = slice_boundary(s, dim, "target")
        if cur != self.target:
            raise TypeMismatch(f"word ends at {cur}, declared target is {self.target}")

    @property
    def dimension(self) -> int:
        return self.source.dimension

    def __len__(self) -> int:
        return len(self.slices)

    def __rshift__(self, other: "BordismWord") -> "BordismWord":
        return compose(self, other)

    def __or__(self, other: "BordismWord") -> "BordismWord":
        return tensor(self, other)

    def dsl(self) -> str:
        """Canonical DSL text; parsing it gives back an equal word."""
        if not self.slices:
            raise ValueError("a word with no slices has no DSL form; use identity_word")
        return " ; ".join(" | ".join(g.dsl() for g in s) if s else "empty" for s in self.slices)

    def __str__(self) -> str:
        body = self.dsl() if self.slices else "id"
        return f"{body} : {self.source} -> {self.target}"


def word(*slices: Iterable[Generator], source: BordismObject | None = None) -> BordismWord:
    """Build a word from slices; each slice may be a generator or a sequence of them."""
    norm = []
    for s in slices:
        norm.append((s,) if isinstance(s, Generator) else tuple(s))
    if source is None:
        dims = {g.dimension for s in norm for g in s}
        if len(dims) > 1:
            raise DimensionMismatch("word mixes 1D and 2D generators")
        if not norm:
            raise ValueError("cannot infer the source of an empty word")
        dim = dims.pop() if dims else 2
        source = slice_boundary(norm[0], dim, "source")
    dim = source.dimension
    cur = source
    for s in norm:
        cur = slice_boundary(s, dim, "target") if slice_boundary(s, dim, "source") == cur else None
        if cur is None:
            # let the constructor produce the positioned error
            break
    target = cur if cur is not None else source
    return BordismWord(tuple(norm), source, target)


def generator_word(g: Generator) -> BordismWord:
    return BordismWord(((g,),), g.source, g.target)


def identity_word(obj: BordismObject) -> BordismWord:
    return BordismWord((identity_slice(obj),), obj, obj)


def empty_word(dimension: int) -> BordismWord:
    """Zero slices on the empty object: the unit for both ``compose`` and ``tensor``."""
    e = empty_object(dimension)
    return BordismWord((), e, e)


def compose(w1: BordismWord, w2: BordismWord) -> BordismWord:
    """``w1`` followed by ``w2``."""
    if w1.dimension != w2.dimension:
        raise DimensionMismatch(f"cannot compose a {w1.dimension}D word with a {w2.dimension}D word")
    if w1.target != w2.source:
        raise TypeMismatch(f"cannot compose: first word ends at {w1.target}, "
                           f"second starts at {w2.source}")
    return BordismWord(w1.slices + w2.slices, w1.source, w2.target)


def tensor(w1: BordismWord, w2: BordismWord) -> BordismWord:
    """Disjoint union; the shorter word is padded with identity slices."""
    if w1.dimension != w2.dimension:
        raise DimensionMismatch(f"cannot tensor a {w1.dimension}D word with a {w2.dimension}D word")
    n = max(len(w1), len(w2))
    s1 = w1.slices + (identity_slice(w1.target),) * (n - len(w1))
    s2 = w2.slices + (identity_slice(w2.target),) * (n - len(w2))
    return BordismWord(tuple(a + b for a, b in zip(s1, s2)),
                       w1.source + w2.source, w1.target + w2.target)


# -- canonical surfaces -------------------------------------------------------

def closed_surface_word(genus: int) -> BordismWord:
    if genus < 0:
        raise ValueError("genus must be non-negative")
    slices = [(CAP,)] + [(COPANTS,), (PANTS,)] * genus + [(CUP,)]
    return BordismWord(tuple(slices), Object2D(0), Object2D(0))


def open_surface_word(genus: int, inputs: int, outputs: int) -> BordismWord:
    """Connected surface of the given genus with ``inputs`` incoming and
    ``outputs`` outgoing circles: merge, add handles, split."""
    if genus < 0 or inputs < 0 or outputs < 0:
        raise ValueError("genus, inputs and outputs must be non-negative")
    slices: list[Slice] = []
    if inputs == 0:
        slices.append((CAP,))
    for i in range(inputs - 1):
        slices.append((PANTS,) + (CYL,) * (inputs - 2 - i))
    slices += [(COPANTS,), (PANTS,)] * genus
    for i in range(outputs - 1):
        slices.append((COPANTS,) + (CYL,) * i)
    if outputs == 0:
        slices.append((CUP,))
    if not slices:
        slices.append((CYL,))
    return BordismWord(tuple(slices), Object2D(inputs), Object2D(outputs))


# -- 1D Cerf normalisation ----------------------------------------------------

@dataclass
class _Step:
    gen: Generator
    offset: int

    @property
    def n_in(self) -> int:
        return len(self.gen.source)

    @property
    def n_out(self) -> int:
        return len(self.gen.target)


def _elementary_steps(w: BordismWord) -> list[_Step]:
    """One non-identity generator per step (interchange law)."""
    steps = []
    for s in w.slices:
        offset = 0
        for g in s:
            if not g.is_identity:
                steps.append(_Step(g, offset))
            offset += len(g.target)
    return steps


def _steps_to_word(source: Object1D, steps: list[_Step]) -> BordismWord:
    slices = []
    cur = source.signs
    for st in steps:
        left = identity_slice(Object1D(cur[:st.offset]))
        right = identity_slice(Object1D(cur[st.offset + st.n_in:]))
        slices.append(left + (st.gen,) + right)
        cur = cur[:st.offset] + st.gen.target.signs + cur[st.offset + st.n_in:]
    if not slices:
        return identity_word(source)
    return BordismWord(tuple(slices), source, Object1D(cur))


def _swap_back(steps: list[_Step], j: int) -> bool:
    """Move step ``j`` before step ``j-1`` if they act on disjoint points."""
    h, e = steps[j - 1], steps[j]
    if e.offset + e.n_in <= h.offset:
        h.offset += e.n_out - e.n_in
    elif e.offset >= h.offset + h.n_out:
        e.offset += h.n_in - h.n_out
    else:
        return False
    steps[j - 1], steps[j] = e, h
    return True


def _find_zigzag(steps: list[_Step]) -> tuple[int, int] | None:
    """An ``ev`` that can slide back onto a ``coev`` forming an S-diagram."""
    for j, st in enumerate(steps):
        if st.gen.kind is not Kind.EV:
            continue
        x = st.offset
        for k in range(j - 1, -1, -1):
            h = steps[k]
            if x + 2 <= h.offset:
                continue
            if x >= h.offset + h.n_out:
                x += h.n_in - h.n_out
                continue
            if h.gen.kind is Kind.COEV and x in (h.offset - 1, h.offset + 1):
                return k, j
            break
    return None


def cerf_reduce(w: BordismWord) -> tuple[BordismWord, int]:
    """Cancel S-diagrams until none remain; returns the word and the number of moves."""
    if w.dimension != 1:
        raise DimensionMismatch("Cerf normalisation is implemented for 1D words only")
    steps = _elementary_steps(w)
    moves = 0
    while (hit := _find_zigzag(steps)) is not None:
        k, j = hit
        while j > k + 1:
            moved = _swap_back(steps, j)
            assert moved, "zigzag search and sliding disagree"
            j -= 1
        del steps[k:k + 2]
        moves += 1
    if moves == 0:
        return w, 0
    return _steps_to_word(w.source, steps), moves


def cerf_normalize_1d(w: BordismWord) -> BordismWord:
    return cerf_reduce(w)[0]


def s_diagram(sign: str) -> BordismWord:
    """The zigzag on a single point; it equals the identity bordism."""
    if sign == "+":
        return word((COEV, ID_PLUS), (ID_PLUS, EV))
    if sign == "-":
        return word((ID_MINUS, COEV), (EV, ID_MINUS))
    raise ValueError(f"sign must be '+' or '-', got {sign!r}")


def circle_word() -> BordismWord:
    return word(COEV, SYMM("+", "-"), EV)
