"""Boundary families of the moduli of genus-2 degree-d maps to P^r.

Families are the combinatorial shapes of the generic members: the closure of
maps from smooth curves (`Main`), a contracted genus-2 core with rational
tails (`D`), a hyperelliptically-mapped core with tails (`HypD`), a
contracted elliptic curve attached to an elliptic curve of positive degree
(`E`), two contracted elliptic curves separated by a rational bridge (`EE`),
and a contracted elliptic curve with a non-separating rational bridge
(`BrE`).  Everything here is pure combinatorics: enumeration, dimension
formulas, and weighted dual graphs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

PartitionT = tuple[int, ...]


class OutOfRegimeError(ValueError):
    """The requested (r, d) sits outside the supported regime."""


def _check_partition(mu: Iterable[int], allow_empty: bool = True) -> PartitionT:
    parts = tuple(int(x) for x in mu)
    if not parts and not allow_empty:
        raise ValueError("partition must be non-empty")
    if any(p < 1 for p in parts):
        raise ValueError(f"partition parts must be positive: {parts}")
    if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
        raise ValueError(f"partition parts must be non-increasing: {parts}")
    return parts


def partitions(n: int, max_part: int | None = None) -> Iterator[PartitionT]:
    """All partitions of n in decreasing-lexicographic order; n=0 yields ()."""
    if n < 0:
        raise ValueError("cannot partition a negative integer")
    cap = n if max_part is None else min(max_part, n)
    if n == 0:
        yield ()
        return
    for first in range(cap, 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def _partition_key(mu: PartitionT) -> tuple[int, ...]:
    # Sort order matching decreasing-lexicographic display: (4) < (3,1) < (2,2)...
    return tuple(-p for p in mu)


# --------------------------------------------------------------------------
# family shapes
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Main:
    """Closure of maps from smooth genus-2 curves."""

    def total_degree(self, d: int) -> int:
        return d

    def spec_string(self) -> str:
        return "main"


@dataclass(frozen=True)
class D:
    """Contracted genus-2 core with k rational tails of degrees mu."""

    mu: PartitionT

    def __init__(self, mu: Iterable[int]):
        object.__setattr__(self, "mu", _check_partition(mu, allow_empty=False))

    def total_degree(self, d: int) -> int:
        return sum(self.mu)

    def spec_string(self) -> str:
        return f"D({','.join(str(p) for p in self.mu)})"


@dataclass(frozen=True)
class HypD:
    """Genus-2 core double-covering a line, with tails of degrees mu."""

    mu: PartitionT

    def __init__(self, mu: Iterable[int]):
        object.__setattr__(self, "mu", _check_partition(mu, allow_empty=False))

    def total_degree(self, d: int) -> int:
        return 2 + sum(self.mu)

    def spec_string(self) -> str:
        return f"hypD({','.join(str(p) for p in self.mu)})"


@dataclass(frozen=True)
class E:
    """Elliptic curve of degree d0 >= 2 with a contracted elliptic curve
    carrying the tails."""

    d0: int
    mu: PartitionT

    def __init__(self, d0: int, mu: Iterable[int] = ()):
        if d0 < 2:
            raise ValueError("the positive-degree elliptic curve needs degree >= 2")
        object.__setattr__(self, "d0", int(d0))
        object.__setattr__(self, "mu", _check_partition(mu))

    def total_degree(self, d: int) -> int:
        return self.d0 + sum(self.mu)

    def spec_string(self) -> str:
        inner = ",".join(str(p) for p in self.mu)
        return f"E({self.d0};{inner})" if inner else f"E({self.d0})"


@dataclass(frozen=True)
class EE:
    """Two contracted elliptic curves joined by a rational bridge of degree d0.

    The two sides are unordered; the constructor stores the canonical order
    (smaller tail partition first, by total then decreasing-lex).
    """

    mu1: PartitionT
    d0: int
    mu2: PartitionT

    def __init__(self, mu1: Iterable[int], d0: int, mu2: Iterable[int]):
        if d0 < 1:
            raise ValueError("the bridge needs positive degree")
        a = _check_partition(mu1)
        b = _check_partition(mu2)
        a, b = sorted((a, b), key=lambda m: (sum(m), _partition_key(m)))
        object.__setattr__(self, "mu1", a)
        object.__setattr__(self, "d0", int(d0))
        object.__setattr__(self, "mu2", b)

    def total_degree(self, d: int) -> int:
        return sum(self.mu1) + self.d0 + sum(self.mu2)

    def spec_string(self) -> str:
        left = ",".join(str(p) for p in self.mu1)
        right = ",".join(str(p) for p in self.mu2)
        return f"EE({left}|{self.d0}|{right})"


@dataclass(frozen=True)
class BrE:
    """Contracted elliptic curve with a non-separating rational bridge of
    degree d0 and tails of degrees mu."""

    d0: int
    mu: PartitionT

    def __init__(self, d0: int, mu: Iterable[int] = ()):
        if d0 < 1:
            raise ValueError("the bridge needs positive degree")
        object.__setattr__(self, "d0", int(d0))
        object.__setattr__(self, "mu", _check_partition(mu))

    def total_degree(self, d: int) -> int:
        return self.d0 + sum(self.mu)

    def spec_string(self) -> str:
        inner = ",".join(str(p) for p in self.mu)
        return f"brE({self.d0};{inner})" if inner else f"brE({self.d0})"


ComponentFamily = Main | D | HypD | E | EE | BrE

_KIND_ORDER = {Main: 0, D: 1, E: 2, EE: 3, BrE: 4, HypD: 5}


def _family_sort_key(f: ComponentFamily):
    kind = _KIND_ORDER[type(f)]
    if isinstance(f, Main):
        return (kind,)
    if isinstance(f, (D, HypD)):
        return (kind, _partition_key(f.mu))
    if isinstance(f, (E, BrE)):
        return (kind, -f.d0, _partition_key(f.mu))
    if isinstance(f, EE):
        return (kind, -f.d0, _partition_key(f.mu1), _partition_key(f.mu2))
    raise TypeError(f)


def enumerate_families(r: int, d: int) -> list[ComponentFamily]:
    """All boundary-family shapes at (r, d), in a fixed deterministic order.

    Order: main, then D, E, EE, brE, hypD; within a kind, larger bridge
    degree first, then decreasing-lexicographic tail partitions.  Requires
    r >= 2 and d >= 3 (for d <= 2 every map from a genus-2 curve has a
    degenerate shape and the family list here does not apply).
    """
    if r < 2:
        raise OutOfRegimeError("target must be at least a plane (r >= 2)")
    if d <= 2:
        raise OutOfRegimeError("family enumeration needs degree d >= 3")
    out: list[ComponentFamily] = [Main()]
    for mu in partitions(d):
        out.append(D(mu))
    for d0 in range(d, 1, -1):
        for mu in partitions(d - d0):
            out.append(E(d0, mu))
    seen: set[EE] = set()
    for d0 in range(d, 0, -1):
        rest = d - d0
        for s1 in range(0, rest + 1):
            for mu1 in partitions(s1):
                for mu2 in partitions(rest - s1):
                    fam = EE(mu1, d0, mu2)
                    if fam not in seen:
                        seen.add(fam)
                        out.append(fam)
    for d0 in range(d, 0, -1):
        for mu in partitions(d - d0):
            out.append(BrE(d0, mu))
    for mu in partitions(d - 2):
        out.append(HypD(mu))
    return sorted(out, key=_family_sort_key)


def is_degenerate_bridge(f: ComponentFamily) -> bool:
    """Bridge families with degree-1 bridges lie in closures of D families."""
    return isinstance(f, (EE, BrE)) and f.d0 == 1


def reduction_target(f: ComponentFamily) -> D | None:
    """For a degree-1 bridge family, the D family whose boundary absorbs it."""
    if not is_degenerate_bridge(f):
        return None
    if isinstance(f, EE):
        parts = sorted(f.mu1 + (1,) + f.mu2, reverse=True)
    else:
        parts = sorted((1,) + f.mu, reverse=True)
    return D(tuple(parts))


# --------------------------------------------------------------------------
# dimensions
# --------------------------------------------------------------------------


def virtual_dimension(r: int, d: int) -> int:
    """Expected dimension of the genus-2 degree-d stable-map space to P^r."""
    return (3 - r) + d * (r + 1)


def hyperelliptic_cover_dimension(r: int, k: int) -> int:
    """Dimension of the space of hyperelliptic data with k marked points:
    a target line, six branch points, and the markings: 2r + 4 + k."""
    if r < 1 or k < 0:
        raise ValueError("need r >= 1 and k >= 0")
    return 2 * r + 4 + k


def dimension(f: ComponentFamily, r: int, d: int) -> int:
    """Dimension of the boundary family f inside the (r, d) moduli space."""
    if f.total_degree(d) != d:
        raise ValueError(f"{f} has total degree {f.total_degree(d)}, expected {d}")
    base = d * (r + 1)
    if isinstance(f, Main):
        return virtual_dimension(r, d)
    if isinstance(f, D):
        return base + r - len(f.mu) + 3
    if isinstance(f, HypD):
        return base - len(f.mu) + 2
    if isinstance(f, E):
        return base - len(f.mu) + 2
    if isinstance(f, EE):
        return base + r - (len(f.mu1) + len(f.mu2)) + 1
    if isinstance(f, BrE):
        return base - len(f.mu) + 1
    raise TypeError(f)


# --------------------------------------------------------------------------
# dual graphs
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class GraphVertex:
    genus: int
    weight: int
    role: str  # core | core-contracted | hyperelliptic-cover | tail | elliptic | elliptic-contracted | bridge
    label: str


@dataclass(frozen=True)
class DualGraph:
    """Weighted dual graph of the generic member of a family.

    Edges are unordered index pairs; parallel edges encode non-separating
    bridges.  total genus = sum of vertex genera + first Betti number.
    """

    vertices: tuple[GraphVertex, ...]
    edges: tuple[tuple[int, int], ...]

    def first_betti(self) -> int:
        n = len(self.vertices)
        parent = list(range(n))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for a, b in self.edges:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
        components = len({find(i) for i in range(n)})
        return len(self.edges) - n + components

    def total_genus(self) -> int:
        return sum(v.genus for v in self.vertices) + self.first_betti()

    def total_weight(self) -> int:
        return sum(v.weight for v in self.vertices)


def generic_dual_graph(f: ComponentFamily, d: int) -> DualGraph:
    if f.total_degree(d) != d:
        raise ValueError(f"{f} has total degree {f.total_degree(d)}, expected {d}")
    if isinstance(f, Main):
        return DualGraph((GraphVertex(2, d, "core", "Z"),), ())
    if isinstance(f, D):
        verts = [GraphVertex(2, 0, "core-contracted", "Z")]
        edges = []
        for i, di in enumerate(f.mu, start=1):
            verts.append(GraphVertex(0, di, "tail", f"T{i}"))
            edges.append((0, i))
        return DualGraph(tuple(verts), tuple(edges))
    if isinstance(f, HypD):
        verts = [GraphVertex(2, 2, "hyperelliptic-cover", "Z")]
        edges = []
        for i, di in enumerate(f.mu, start=1):
            verts.append(GraphVertex(0, di, "tail", f"T{i}"))
            edges.append((0, i))
        return DualGraph(tuple(verts), tuple(edges))
    if isinstance(f, E):
        verts = [
            GraphVertex(1, f.d0, "elliptic", "E1"),
            GraphVertex(1, 0, "elliptic-contracted", "E2"),
        ]
        edges = [(0, 1)]
        for i, di in enumerate(f.mu, start=1):
            verts.append(GraphVertex(0, di, "tail", f"T{i}"))
            edges.append((1, len(verts) - 1))
        return DualGraph(tuple(verts), tuple(edges))
    if isinstance(f, EE):
        verts = [
            GraphVertex(1, 0, "elliptic-contracted", "E1"),
            GraphVertex(0, f.d0, "bridge", "B"),
            GraphVertex(1, 0, "elliptic-contracted", "E2"),
        ]
        edges = [(0, 1), (1, 2)]
        for di in f.mu1:
            verts.append(GraphVertex(0, di, "tail", f"T{len(verts) - 2}"))
            edges.append((0, len(verts) - 1))
        for di in f.mu2:
            verts.append(GraphVertex(0, di, "tail", f"T{len(verts) - 2}"))
            edges.append((2, len(verts) - 1))
        return DualGraph(tuple(verts), tuple(edges))
    if isinstance(f, BrE):
        verts = [
            GraphVertex(1, 0, "elliptic-contracted", "E"),
            GraphVertex(0, f.d0, "bridge", "B"),
        ]
        edges = [(0, 1), (0, 1)]
        for i, di in enumerate(f.mu, start=1):
            verts.append(GraphVertex(0, di, "tail", f"T{i}"))
            edges.append((0, len(verts) - 1))
        return DualGraph(tuple(verts), tuple(edges))
    raise TypeError(f)


# --------------------------------------------------------------------------
# family-spec strings
# --------------------------------------------------------------------------


class FamilySpecError(ValueError):
    """A family spec string failed to parse; carries the offending position."""

    def __init__(self, text: str, position: int, message: str):
        super().__init__(f"{message} (at position {position} in {text!r})")
        self.text = text
        self.position = position


def _parse_parts(text: str, body: str, offset: int, allow_empty: bool) -> PartitionT:
    body = body.strip()
    if not body:
        if allow_empty:
            return ()
        raise FamilySpecError(text, offset, "expected a partition")
    parts = []
    for piece in body.split(","):
        piece = piece.strip()
        if not piece.isdigit() or int(piece) < 1:
            raise FamilySpecError(text, offset, f"bad partition part {piece!r}")
        parts.append(int(piece))
    if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
        raise FamilySpecError(text, offset, f"partition must be non-increasing: {parts}")
    return tuple(parts)


def parse_family(text: str) -> ComponentFamily:
    """Parse "main", "D(3,1)", "hypD(2)", "E(4)", "E(3;1)", "EE(1|2|1)", "brE(2;1,1)"."""
    s = text.strip()
    if s == "main":
        return Main()
    open_at = s.find("(")
    if open_at < 0 or not s.endswith(")"):
        raise FamilySpecError(text, 0, "expected kind(...) or 'main'")
    kind = s[:open_at]
    body = s[open_at + 1:-1]
    inner_at = open_at + 1
    if kind == "D":
        return D(_parse_parts(text, body, inner_at, allow_empty=False))
    if kind == "hypD":
        return HypD(_parse_parts(text, body, inner_at, allow_empty=False))
    if kind in ("E", "brE"):
        if ";" in body:
            head, tail = body.split(";", 1)
        else:
            head, tail = body, ""
        head = head.strip()
        if not head.isdigit():
            raise FamilySpecError(text, inner_at, f"bad bridge degree {head!r}")
        mu = _parse_parts(text, tail, inner_at, allow_empty=True)
        return E(int(head), mu) if kind == "E" else BrE(int(head), mu)
    if kind == "EE":
        pieces = body.split("|")
        if len(pieces) != 3:
            raise FamilySpecError(text, inner_at, "EE takes mu1|d0|mu2")
        left, mid, right = pieces
        mid = mid.strip()
        if not mid.isdigit():
            raise FamilySpecError(text, inner_at, f"bad bridge degree {mid!r}")
        mu1 = _parse_parts(text, left, inner_at, allow_empty=True)
        mu2 = _parse_parts(text, right, inner_at, allow_empty=True)
        return EE(mu1, int(mid), mu2)
    raise FamilySpecError(text, 0, f"unknown family kind {kind!r}")


def format_family(f: ComponentFamily) -> str:
    return f.spec_string()
