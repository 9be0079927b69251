"""Finite complete lattices, join-preserving maps, and Galois adjoints.

Elements are plain ints.  Two carrier representations share one interface:

* ``TableLattice`` stores the order relation extensionally; element ids are
  dense integers.  Suitable for small hand-built carriers.
* ``PowersetLattice`` is the Boolean algebra of subsets of ``num_atoms``
  generators; an element is the bitmask of the atoms below it.  Nothing is
  tabulated, so carriers with dozens of atoms stay cheap.

Every derived operator is a finite quantification over elements (table
carriers) or atoms (powerset carriers, where atom-wise computation agrees
with definition unfolding because all maps in play preserve joins).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

# Above this size, element-wise exhaustive checks switch to the documented
# bottom-plus-binary regime (sound for finite lattices).
EXHAUSTIVE_LIMIT = 16

# Powerset lattices refuse full element enumeration beyond this many atoms.
ENUMERATION_ATOM_LIMIT = 20


class LatticeError(Exception):
    """Raised when an operation is applied to a defective or oversized carrier."""


class Lattice:
    """Common interface; see TableLattice and PowersetLattice."""

    size: int

    def leq(self, a: int, b: int) -> bool:
        raise NotImplementedError

    def join(self, a: int, b: int) -> int:
        raise NotImplementedError

    def meet(self, a: int, b: int) -> int:
        raise NotImplementedError

    @property
    def bottom(self) -> int:
        raise NotImplementedError

    @property
    def top(self) -> int:
        raise NotImplementedError

    def elements(self) -> Iterator[int]:
        raise NotImplementedError

    def atoms(self) -> list[int]:
        raise NotImplementedError

    def label(self, a: int) -> str:
        raise NotImplementedError

    def join_all(self, xs: Iterable[int]) -> int:
        out = self.bottom
        for x in xs:
            out = self.join(out, x)
        return out

    def meet_all(self, xs: Iterable[int]) -> int:
        out = self.top
        for x in xs:
            out = self.meet(out, x)
        return out

    def downset(self, x: int) -> list[int]:
        return [a for a in self.elements() if self.leq(a, x)]

    def atoms_below(self, x: int) -> list[int]:
        return [a for a in self.atoms() if self.leq(a, x)]


class TableLattice(Lattice):
    """Finite lattice given by an explicit order relation.

    ``leq_pairs`` must be the full relation (reflexive pairs included).
    Construction does not validate lattice axioms; run ``order_violations``
    to obtain a report, as loaders of untrusted files do.
    """

    def __init__(self, labels: Sequence[str], leq_pairs: Iterable[tuple[int, int]]):
        self.labels = list(labels)
        self.size = len(self.labels)
        self._leq = [[False] * self.size for _ in range(self.size)]
        for i, j in leq_pairs:
            if not (0 <= i < self.size and 0 <= j < self.size):
                raise LatticeError(f"leq pair ({i},{j}) out of range")
            self._leq[i][j] = True
        self._join: dict[tuple[int, int], int] = {}
        self._meet: dict[tuple[int, int], int] = {}
        self._bottom: int | None = None
        self._top: int | None = None

    def leq(self, a: int, b: int) -> bool:
        return self._leq[a][b]

    def elements(self) -> Iterator[int]:
        return iter(range(self.size))

    def label(self, a: int) -> str:
        return self.labels[a]

    def _least(self, candidates: list[int], what: str) -> int:
        for c in candidates:
            if all(self._leq[c][d] for d in candidates):
                return c
        raise LatticeError(f"no {what}: candidates {candidates} have no least element")

    def join(self, a: int, b: int) -> int:
        key = (a, b)
        got = self._join.get(key)
        if got is None:
            ubs = [c for c in range(self.size) if self._leq[a][c] and self._leq[b][c]]
            if not ubs:
                raise LatticeError(f"elements {a},{b} have no upper bound")
            got = self._least(ubs, f"join of {a},{b}")
            self._join[key] = got
        return got

    def meet(self, a: int, b: int) -> int:
        key = (a, b)
        got = self._meet.get(key)
        if got is None:
            lbs = [c for c in range(self.size) if self._leq[c][a] and self._leq[c][b]]
            if not lbs:
                raise LatticeError(f"elements {a},{b} have no lower bound")
            for c in lbs:
                if all(self._leq[d][c] for d in lbs):
                    self._meet[key] = c
                    return c
            raise LatticeError(f"no meet of {a},{b}")
        return got

    @property
    def bottom(self) -> int:
        if self._bottom is None:
            for c in range(self.size):
                if all(self._leq[c][d] for d in range(self.size)):
                    self._bottom = c
                    break
            else:
                raise LatticeError("no bottom element")
        return self._bottom

    @property
    def top(self) -> int:
        if self._top is None:
            for c in range(self.size):
                if all(self._leq[d][c] for d in range(self.size)):
                    self._top = c
                    break
            else:
                raise LatticeError("no top element")
        return self._top

    def atoms(self) -> list[int]:
        bot = self.bottom
        out = []
        for a in range(self.size):
            if a == bot:
                continue
            strictly_below = [c for c in range(self.size) if self._leq[c][a] and c != a]
            if strictly_below == [bot]:
                out.append(a)
        return out

    def order_violations(self) -> list[str]:
        """Lattice-axiom violations with witnesses; empty means valid."""
        out = []
        n = self.size
        if n == 0:
            return ["empty carrier"]
        for a in range(n):
            if not self._leq[a][a]:
                out.append(f"not reflexive at {self.labels[a]}")
        for a in range(n):
            for b in range(n):
                if a != b and self._leq[a][b] and self._leq[b][a]:
                    out.append(f"not antisymmetric at ({self.labels[a]},{self.labels[b]})")
                for c in range(n):
                    if self._leq[a][b] and self._leq[b][c] and not self._leq[a][c]:
                        out.append(
                            f"not transitive at ({self.labels[a]},{self.labels[b]},{self.labels[c]})"
                        )
        if out:
            return out
        for a in range(n):
            for b in range(a, n):
                try:
                    self.join(a, b)
                    self.meet(a, b)
                except LatticeError as e:
                    out.append(str(e))
        try:
            self.bottom
            self.top
        except LatticeError as e:
            out.append(str(e))
        return out


class PowersetLattice(Lattice):
    """Boolean algebra of subsets of ``num_atoms`` atoms, elements as bitmasks."""

    def __init__(self, num_atoms: int, atom_labels: Sequence[str] | None = None):
        if num_atoms < 0:
            raise LatticeError("negative atom count")
        self.num_atoms = num_atoms
        self.size = 1 << num_atoms
        self.atom_labels = list(atom_labels) if atom_labels is not None else [
            str(i) for i in range(num_atoms)
        ]
        if len(self.atom_labels) != num_atoms:
            raise LatticeError("atom label count mismatch")

    def leq(self, a: int, b: int) -> bool:
        return a & ~b == 0

    def join(self, a: int, b: int) -> int:
        return a | b

    def meet(self, a: int, b: int) -> int:
        return a & b

    @property
    def bottom(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return self.size - 1

    def elements(self) -> Iterator[int]:
        if self.num_atoms > ENUMERATION_ATOM_LIMIT:
            raise LatticeError(
                f"refusing to enumerate 2^{self.num_atoms} elements; work atom-wise"
            )
        return iter(range(self.size))

    def atoms(self) -> list[int]:
        return [1 << i for i in range(self.num_atoms)]

    def atom_bits(self, x: int) -> Iterator[int]:
        i = 0
        while x:
            if x & 1:
                yield i
            x >>= 1
            i += 1

    def label(self, a: int) -> str:
        names = [self.atom_labels[i] for i in self.atom_bits(a)]
        return "{" + ",".join(names) + "}"


def powerset_lattice(n: int, atom_labels: Sequence[str] | None = None) -> PowersetLattice:
    return PowersetLattice(n, atom_labels)


def chain_lattice(n: int) -> TableLattice:
    """The n-element chain 0 < 1 < ... < n-1."""
    return TableLattice([f"c{i}" for i in range(n)], [(i, j) for i in range(n) for j in range(i, n)])


def diamond_m3() -> TableLattice:
    """The five-element lattice bot <= a,b,c <= top (three incomparable middles)."""
    labels = ["bot", "a", "b", "c", "top"]
    pairs = [(i, i) for i in range(5)]
    pairs += [(0, i) for i in range(1, 5)]
    pairs += [(i, 4) for i in range(1, 4)]
    return TableLattice(labels, pairs)


@dataclass(frozen=True)
class LatticeMap:
    """Total map between finite lattices.

    Exactly one of ``table`` (value per element id) and ``atom_images``
    (value per source atom, extended by joins) is set.  Atom-image maps
    preserve joins by construction.
    """

    source: Lattice
    target: Lattice
    table: tuple[int, ...] | None = None
    atom_images: tuple[int, ...] | None = None

    def __post_init__(self):
        if (self.table is None) == (self.atom_images is None):
            raise LatticeError("provide exactly one of table / atom_images")
        if self.atom_images is not None and not isinstance(self.source, PowersetLattice):
            raise LatticeError("atom_images requires a powerset source")

    @staticmethod
    def from_table(source: Lattice, target: Lattice, table: Sequence[int]) -> "LatticeMap":
        if len(table) != source.size:
            raise LatticeError("table length must match source size")
        return LatticeMap(source, target, table=tuple(table))

    @staticmethod
    def from_atom_images(
        source: PowersetLattice, target: Lattice, images: Sequence[int]
    ) -> "LatticeMap":
        if len(images) != source.num_atoms:
            raise LatticeError("need one image per source atom")
        return LatticeMap(source, target, atom_images=tuple(images))

    @staticmethod
    def identity(lat: Lattice) -> "LatticeMap":
        if isinstance(lat, PowersetLattice):
            return LatticeMap.from_atom_images(lat, lat, [1 << i for i in range(lat.num_atoms)])
        return LatticeMap.from_table(lat, lat, list(range(lat.size)))

    def apply(self, x: int) -> int:
        if self.table is not None:
            return self.table[x]
        src: PowersetLattice = self.source  # type: ignore[assignment]
        out = self.target.bottom
        for i in src.atom_bits(x):
            out = self.target.join(out, self.atom_images[i])
        return out

    def compose(self, other: "LatticeMap") -> "LatticeMap":
        """self after other (other first)."""
        if other.target is not self.source and other.target.size != self.source.size:
            raise LatticeError("composition type mismatch")
        if other.atom_images is not None:
            return LatticeMap.from_atom_images(
                other.source, self.target, [self.apply(v) for v in other.atom_images]
            )
        return LatticeMap.from_table(
            other.source, self.target, [self.apply(v) for v in other.table]
        )


def is_join_preserving(f: LatticeMap) -> bool:
    """Check f(join S) = join f(S) for all subsets S.

    Fully exhaustive over subsets for table sources up to EXHAUSTIVE_LIMIT
    elements; beyond that, bottom preservation plus binary joins (which
    suffices on finite lattices).  Atom-image maps are join-preserving by
    construction and only get the cheap confirmation.
    """
    if f.atom_images is not None:
        return f.apply(f.source.bottom) == f.target.bottom
    src, tgt = f.source, f.target
    if f.apply(src.bottom) != tgt.bottom:
        return False
    elems = list(src.elements())
    for a in elems:
        for b in elems:
            if f.apply(src.join(a, b)) != tgt.join(f.apply(a), f.apply(b)):
                return False
    if len(elems) <= EXHAUSTIVE_LIMIT:
        for r in range(3, len(elems) + 1):
            for sub in itertools.combinations(elems, r):
                if f.apply(src.join_all(sub)) != tgt.join_all(f.apply(x) for x in sub):
                    return False
    return True


def right_adjoint_value(f: LatticeMap, b: int) -> int:
    """The Galois right adjoint of f evaluated at b: join of {a | f(a) <= b}."""
    tgt = f.target
    if f.atom_images is not None:
        src: PowersetLattice = f.source  # type: ignore[assignment]
        out = 0
        for i in range(src.num_atoms):
            if tgt.leq(f.atom_images[i], b):
                out |= 1 << i
        return out
    return f.source.join_all(a for a in f.source.elements() if tgt.leq(f.apply(a), b))


def right_adjoint(f: LatticeMap) -> LatticeMap:
    """The right Galois adjoint as an explicit map (table sources only).

    Rejects maps that do not preserve joins, since only those have adjoints.
    Powerset-sourced maps are served point-wise by ``right_adjoint_value``;
    their adjoints preserve meets, not joins, so no atom table can hold them.
    """
    if not is_join_preserving(f):
        raise LatticeError("right adjoint requires a join-preserving map")
    if f.atom_images is not None:
        if isinstance(f.target, PowersetLattice) and f.target.num_atoms <= ENUMERATION_ATOM_LIMIT:
            return LatticeMap.from_table(
                f.target, f.source, [right_adjoint_value(f, b) for b in f.target.elements()]
            )
        raise LatticeError("adjoint of a large powerset map: use right_adjoint_value")
    return LatticeMap.from_table(
        f.target, f.source, [right_adjoint_value(f, b) for b in f.target.elements()]
    )


def is_distributive(lat: Lattice) -> bool:
    """Brute-force distributivity over all triples (powersets are distributive)."""
    if isinstance(lat, PowersetLattice):
        return True
    elems = list(lat.elements())
    for a in elems:
        for b in elems:
            for c in elems:
                if lat.meet(a, lat.join(b, c)) != lat.join(lat.meet(a, b), lat.meet(a, c)):
                    return False
    return True


def is_atomistic(lat: Lattice) -> bool:
    if isinstance(lat, PowersetLattice):
        return True
    ats = lat.atoms()
    for x in lat.elements():
        if lat.join_all(a for a in ats if lat.leq(a, x)) != x:
            return False
    return True


def complement_of(lat: Lattice, x: int) -> int | None:
    """The Boolean complement of x, or None.

    Requires a distributive carrier (where complements are unique); on
    non-distributive lattices there is no Boolean complement to speak of.
    """
    if isinstance(lat, PowersetLattice):
        return lat.top & ~x
    if not is_distributive(lat):
        return None
    for c in lat.elements():
        if lat.join(x, c) == lat.top and lat.meet(x, c) == lat.bottom:
            return c
    return None


def is_boolean(lat: Lattice) -> bool:
    """Distributive, atomistic, and complemented (complete distributivity
    is automatic on finite distributive lattices)."""
    if isinstance(lat, PowersetLattice):
        return True
    return (
        is_distributive(lat)
        and is_atomistic(lat)
        and all(complement_of(lat, x) is not None for x in lat.elements())
    )
