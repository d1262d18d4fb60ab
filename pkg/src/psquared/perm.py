"""Exact permutations and permutation groups on small degrees.

Everything is deterministic: groups carry a stabilizer chain over the fixed
base 0, 1, 2, ..., n-1, so orders, membership and coset representatives are
reproducible.  The product convention is left-to-right, (f * g)(x) = g(f(x)),
and ``h ** g`` is the conjugate g^-1 * h * g.  Values are immutable after
construction; the chain is an idempotent cache guarded by a lock, so groups
are safe to share between threads.

Points of degree p^2 are identified with pairs via (a, b) <-> a + b*p; see
PointEncoding.
"""

from __future__ import annotations

import itertools
import math
import re
import threading
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Permutation",
    "PermGroup",
    "PointEncoding",
    "BlockSystem",
    "brute_normalizer",
    "symmetric_group",
    "alternating_group",
    "cyclic_group",
    "commutator",
]

_CYCLE_RE = re.compile(r"\(([\d\s,]*)\)")


class Permutation:
    """A permutation of {0, ..., n-1}, stored as its image tuple."""

    __slots__ = ("img",)

    def __init__(self, img):
        img = tuple(img)
        n = len(img)
        seen = [False] * n
        for v in img:
            if not 0 <= v < n or seen[v]:
                raise ValueError(f"not a permutation of 0..{n - 1}: {img}")
            seen[v] = True
        object.__setattr__(self, "img", img)

    def __setattr__(self, *a):
        raise AttributeError("Permutation is immutable")

    # -- construction ------------------------------------------------------

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(n))

    @classmethod
    def from_cycles(cls, text: str, degree: int | None = None) -> "Permutation":
        """Parse disjoint-cycle notation like "(0 3 6)(1 4 7)".

        Whitespace- and comma-insensitive; "()" is the identity (degree must
        then be given).  Points not mentioned are fixed.
        """
        stripped = _CYCLE_RE.sub("", text).strip().replace(",", "").replace(" ", "")
        if stripped:
            raise ValueError(f"unparseable cycle text: {text!r}")
        cycles = []
        maxpt = -1
        for m in _CYCLE_RE.finditer(text):
            body = m.group(1).replace(",", " ").split()
            cyc = [int(x) for x in body]
            if len(set(cyc)) != len(cyc):
                raise ValueError(f"repeated point in cycle: {m.group(0)}")
            if cyc:
                maxpt = max(maxpt, max(cyc))
                cycles.append(cyc)
        if degree is None:
            degree = maxpt + 1
        if degree <= maxpt:
            raise ValueError("degree too small for cycle text")
        img = list(range(degree))
        for cyc in cycles:
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                img[a] = b
        return cls(img)

    @classmethod
    def from_one_line(cls, text: str) -> "Permutation":
        """Parse the one-line image form "[i0 i1 ... i_{n-1}]"."""
        body = text.strip()
        if not (body.startswith("[") and body.endswith("]")):
            raise ValueError(f"not a one-line permutation: {text!r}")
        return cls(int(x) for x in body[1:-1].replace(",", " ").split())

    # -- basic protocol ----------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.img)

    def __call__(self, x: int) -> int:
        return self.img[x]

    def __mul__(self, other: "Permutation") -> "Permutation":
        # (self * other)(x) = other(self(x))
        o = other.img
        return Permutation(o[v] for v in self.img)

    def inv(self) -> "Permutation":
        out = [0] * len(self.img)
        for i, v in enumerate(self.img):
            out[v] = i
        return Permutation(out)

    def __pow__(self, e):
        if isinstance(e, Permutation):
            return self.conj(e)
        n = len(self.img)
        if e < 0:
            return self.inv() ** (-e)
        out = Permutation.identity(n)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def conj(self, g: "Permutation") -> "Permutation":
        """g^-1 * self * g."""
        return g.inv() * self * g

    def order(self) -> int:
        out = 1
        for c in self.cycles():
            out = math.lcm(out, len(c))
        return out

    @property
    def is_identity(self) -> bool:
        return all(i == v for i, v in enumerate(self.img))

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.img == other.img

    def __hash__(self):
        return hash(self.img)

    def __repr__(self):
        return f"Permutation({self.cycle_string()!r})"

    # -- structure ---------------------------------------------------------

    def cycles(self, include_fixed: bool = False) -> list[list[int]]:
        seen = [False] * len(self.img)
        out = []
        for start in range(len(self.img)):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            x = self.img[start]
            while x != start:
                seen[x] = True
                cyc.append(x)
                x = self.img[x]
            if include_fixed or len(cyc) > 1:
                out.append(cyc)
        return out

    def cycle_string(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)

    def one_line(self) -> str:
        return "[" + " ".join(map(str, self.img)) + "]"

    def image_set(self, points) -> frozenset[int]:
        return frozenset(self.img[x] for x in points)

    def min_moved(self) -> int | None:
        for i, v in enumerate(self.img):
            if i != v:
                return i
        return None


def commutator(a: Permutation, b: Permutation) -> Permutation:
    return a.inv() * b.inv() * a * b


@dataclass(frozen=True)
class PointEncoding:
    """Identification of {0..p^2-1} with Z_p x Z_p via (a, b) <-> a + b*p."""

    p: int

    def pair_to_point(self, a: int, b: int) -> int:
        return a % self.p + (b % self.p) * self.p

    def point_to_pair(self, x: int) -> tuple[int, int]:
        return x % self.p, x // self.p

    @property
    def degree(self) -> int:
        return self.p * self.p

    def perm_from_pair_map(self, f) -> Permutation:
        """Permutation of degree p^2 from a map (a, b) -> (a', b')."""
        img = [0] * self.degree
        for x in range(self.degree):
            a, b = self.point_to_pair(x)
            c, d = f(a, b)
            img[x] = self.pair_to_point(c, d)
        return Permutation(img)


@dataclass(frozen=True)
class BlockSystem:
    """An invariant partition into blocks of equal size, sorted by minimum."""

    blocks: tuple[frozenset[int], ...]

    @classmethod
    def from_partition(cls, classes) -> "BlockSystem":
        blocks = tuple(sorted((frozenset(c) for c in classes), key=min))
        sizes = {len(b) for b in blocks}
        if len(sizes) != 1:
            raise ValueError("blocks must have equal size")
        return cls(blocks)

    @property
    def num_blocks(self) -> int:
        return len(self.blocks)

    @property
    def block_size(self) -> int:
        return len(self.blocks[0])

    def block_index_of(self, point: int) -> int:
        for i, b in enumerate(self.blocks):
            if point in b:
                return i
        raise KeyError(point)

    def block_map(self) -> dict[int, int]:
        out = {}
        for i, b in enumerate(self.blocks):
            for x in b:
                out[x] = i
        return out

    def is_invariant_under(self, g: Permutation) -> bool:
        blocks = set(self.blocks)
        return all(g.image_set(b) in blocks for b in self.blocks)


# ---------------------------------------------------------------------------
# stabilizer chain (deterministic Schreier-Sims over base 0, 1, 2, ...)


class _StabChain:
    def __init__(self, degree: int, gens: list[Permutation]):
        self.degree = degree
        self.sgens: list[list[Permutation]] = [[] for _ in range(degree + 1)]
        self.transversal: list[dict[int, Permutation] | None] = [None] * degree
        for g in gens:
            self._extend(0, g)

    def _orbit(self, level: int):
        b = level
        gens = self.sgens[level]
        trans = {b: Permutation.identity(self.degree)}
        queue = [b]
        while queue:
            x = queue.pop(0)
            tx = trans[x]
            for g in gens:
                y = g(x)
                if y not in trans:
                    trans[y] = tx * g
                    queue.append(y)
        self.transversal[level] = trans

    def strip(self, g: Permutation, start: int = 0) -> tuple[int, Permutation]:
        """Sift g through levels >= start; returns (level reached, residue)."""
        for level in range(start, self.degree):
            x = g(level)
            if x == level:
                continue
            trans = self.transversal[level]
            if trans is None or x not in trans:
                return level, g
            g = g * trans[x].inv()
        return self.degree, g

    def _extend(self, start: int, g: Permutation):
        level, h = self.strip(g, start)
        if h.is_identity:
            return
        # h fixes every point below `level` and moves `level`: it is a new
        # strong generator there.  Recompute the basic orbit and reverify the
        # Schreier generators of this level.
        self.sgens[level].append(h)
        self._orbit(level)
        trans = self.transversal[level]
        for x in sorted(trans):
            tx = trans[x]
            for s in self.sgens[level]:
                y = s(x)
                schreier = tx * s * trans[y].inv()
                if not schreier.is_identity:
                    self._extend(level + 1, schreier)

    def order(self) -> int:
        out = 1
        for trans in self.transversal:
            if trans is not None:
                out *= len(trans)
        return out

    def contains(self, g: Permutation) -> bool:
        _, res = self.strip(g)
        return res.is_identity

    def stabilizer_gens(self, level: int) -> list[Permutation]:
        """Strong generators fixing the base points 0..level-1 pointwise."""
        return list(self.sgens[level])


class PermGroup:
    """Group generated by permutations of a common degree."""

    def __init__(self, degree: int, generators=()):
        gens = []
        for g in generators:
            if not isinstance(g, Permutation):
                g = Permutation(g)
            if g.degree != degree:
                raise ValueError(
                    f"generator degree {g.degree} does not match group degree {degree}"
                )
            if not g.is_identity and g not in gens:
                gens.append(g)
        self.degree = degree
        self.gens: tuple[Permutation, ...] = tuple(gens)
        self._chain: _StabChain | None = None
        self._lock = threading.Lock()

    # -- chain-backed queries ------------------------------------------------

    @property
    def chain(self) -> _StabChain:
        if self._chain is None:
            with self._lock:
                if self._chain is None:
                    self._chain = _StabChain(self.degree, list(self.gens))
        return self._chain

    def order(self) -> int:
        return self.chain.order()

    def __contains__(self, g: Permutation) -> bool:
        if g.degree != self.degree:
            raise ValueError("degree mismatch")
        return self.chain.contains(g)

    def sift(self, g: Permutation) -> Permutation:
        return self.chain.strip(g)[1]

    def point_stabilizer_prefix(self, k: int) -> "PermGroup":
        """Subgroup fixing 0, 1, ..., k-1 pointwise (from the chain)."""
        return PermGroup(self.degree, self.chain.stabilizer_gens(k))

    # -- enumeration ---------------------------------------------------------

    def elements(self, limit: int = 10 ** 6) -> list[Permutation]:
        """All elements by breadth-first closure; guarded by `limit`."""
        if self.order() > limit:
            raise ValueError(f"group order {self.order()} exceeds limit {limit}")
        ident = Permutation.identity(self.degree)
        seen = {ident.img: ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for x in frontier:
                for g in self.gens:
                    y = x * g
                    if y.img not in seen:
                        seen[y.img] = y
                        nxt.append(y)
            frontier = nxt
        return list(seen.values())

    def element_set(self, limit: int = 10 ** 6) -> frozenset[tuple[int, ...]]:
        return frozenset(p.img for p in self.elements(limit))

    def elements_array(self, limit: int = 10 ** 6) -> np.ndarray:
        """All elements as an (order, degree) integer array.

        Symmetric groups take an itertools fast path; everything else goes
        through breadth-first closure.
        """
        n = self.degree
        if self.order() > limit:
            raise ValueError(f"group order {self.order()} exceeds limit {limit}")
        if self.order() == math.factorial(n):
            return np.array(list(itertools.permutations(range(n))), dtype=np.int16)
        return np.array([p.img for p in self.elements(limit)], dtype=np.int16)

    # -- orbits, transitivity, blocks ----------------------------------------

    def orbit(self, point: int) -> frozenset[int]:
        seen = {point}
        queue = [point]
        while queue:
            x = queue.pop()
            for g in self.gens:
                y = g(x)
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return frozenset(seen)

    def orbits(self, seeds=None) -> list[frozenset[int]]:
        if seeds is None:
            seeds = range(self.degree)
        out = []
        covered: set[int] = set()
        for s in seeds:
            if s in covered:
                continue
            orb = self.orbit(s)
            covered |= orb
            out.append(orb)
        return sorted(out, key=min)

    def is_transitive(self) -> bool:
        return len(self.orbit(0)) == self.degree

    def is_doubly_transitive(self) -> bool:
        """One orbit on ordered distinct pairs."""
        if not self.is_transitive():
            raise ValueError("group is not transitive")
        n = self.degree
        if n < 2:
            return True
        start = (0, 1)
        seen = {start}
        queue = [start]
        target = n * (n - 1)
        while queue:
            a, b = queue.pop()
            for g in self.gens:
                pair = (g(a), g(b))
                if pair not in seen:
                    seen.add(pair)
                    queue.append(pair)
        return len(seen) == target

    def minimal_partition(self, a: int, b: int) -> tuple[frozenset[int], ...]:
        """Finest invariant partition merging a and b (union-find closure)."""
        n = self.degree
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x, y):
            rx, ry = find(x), find(y)
            if rx == ry:
                return None
            if rx > ry:
                rx, ry = ry, rx
            parent[ry] = rx
            return rx, ry

        queue = [(a, b)]
        union(a, b)
        while queue:
            x, y = queue.pop()
            for g in self.gens:
                merged = union(g(x), g(y))
                if merged:
                    queue.append(merged)
        classes: dict[int, set[int]] = {}
        for x in range(n):
            classes.setdefault(find(x), set()).add(x)
        return tuple(sorted((frozenset(c) for c in classes.values()), key=min))

    def block_systems(self) -> list[BlockSystem]:
        """All invariant partitions into sqrt(n) blocks of size sqrt(n).

        For degree p^2 every block of size p is a minimal block, so scanning
        the minimal partitions through {0, x} is complete.
        """
        if not self.is_transitive():
            raise ValueError("group is not transitive")
        n = self.degree
        p = math.isqrt(n)
        if p * p != n:
            raise ValueError("degree is not a perfect square")
        out = []
        seen = set()
        for x in range(1, n):
            part = self.minimal_partition(0, x)
            if len(part) == p and len(part[0]) == p and part not in seen:
                seen.add(part)
                out.append(BlockSystem.from_partition(part))
        return out

    # -- group-to-group relations ---------------------------------------------

    def conjugate(self, g: Permutation) -> "PermGroup":
        """The group {x^g : x in self} = g^-1 * self * g."""
        return PermGroup(self.degree, [x.conj(g) for x in self.gens])

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return all(g in other for g in self.gens)

    def equals(self, other: "PermGroup") -> bool:
        return (
            self.degree == other.degree
            and self.order() == other.order()
            and self.is_subgroup_of(other)
        )

    def normalizes(self, h: "PermGroup") -> bool:
        """True iff conjugation by every generator of self maps h onto h."""
        return all(x.conj(g) in h for g in self.gens for x in h.gens)

    def normal_closure(self, seeds) -> "PermGroup":
        """Smallest normal subgroup of self containing the seed permutations."""
        gens = [s for s in seeds if not s.is_identity]
        closure = PermGroup(self.degree, gens)
        changed = True
        while changed:
            changed = False
            new = []
            for x in closure.gens:
                for g in self.gens:
                    y = x.conj(g)
                    if y not in closure:
                        new.append(y)
            if new:
                closure = PermGroup(self.degree, closure.gens + tuple(new))
                changed = True
        return closure

    def derived_subgroup(self) -> "PermGroup":
        comms = [commutator(a, b) for a in self.gens for b in self.gens]
        return self.normal_closure(comms)

    def is_solvable(self) -> bool:
        g = self
        prev = None
        while g.order() > 1:
            if prev is not None and g.order() == prev:
                return False
            prev = g.order()
            g = g.derived_subgroup()
        return True

    def is_p_group(self, p: int) -> bool:
        o = self.order()
        while o % p == 0:
            o //= p
        return o == 1

    def __repr__(self):
        gens = ", ".join(g.cycle_string() for g in self.gens[:4])
        more = ", ..." if len(self.gens) > 4 else ""
        return f"PermGroup(degree={self.degree}, gens=[{gens}{more}])"


# ---------------------------------------------------------------------------
# block action and kernels


def block_action(group: PermGroup, blocks: BlockSystem):
    """Action of the group on the blocks.

    Returns (quotient PermGroup on block indices, map generator -> image,
    kernel fix_G(B) as a PermGroup, Schreier generators included).
    """
    bmap = blocks.block_map()
    images = {}
    for g in group.gens:
        img = [0] * blocks.num_blocks
        for i, b in enumerate(blocks.blocks):
            img[i] = bmap[g(min(b))]
        q = Permutation(img)
        if not blocks.is_invariant_under(g):
            raise ValueError("partition is not invariant under the group")
        images[g] = q
    quotient = PermGroup(blocks.num_blocks, list(images.values()))
    # Schreier generators for the kernel: enumerate the quotient with words.
    ident_q = Permutation.identity(blocks.num_blocks)
    ident_g = Permutation.identity(group.degree)
    reps = {ident_q.img: ident_g}
    frontier = [(ident_q, ident_g)]
    while frontier:
        q, w = frontier.pop(0)
        for g in group.gens:
            q2 = q * images[g]
            if q2.img not in reps:
                reps[q2.img] = w * g
                frontier.append((q2, w * g))
    kernel_gens = []
    for qimg, w in reps.items():
        for g in group.gens:
            q2 = Permutation(qimg) * images[g]
            k = w * g * reps[q2.img].inv()
            if not k.is_identity:
                kernel_gens.append(k)
    kernel = PermGroup(group.degree, kernel_gens)
    return quotient, images, kernel


# ---------------------------------------------------------------------------
# standard groups


def symmetric_group(n: int) -> PermGroup:
    gens = []
    if n >= 2:
        gens.append(Permutation.from_cycles("(0 1)", n))
    if n >= 3:
        gens.append(Permutation(list(range(1, n)) + [0]))
    return PermGroup(n, gens)


def alternating_group(n: int) -> PermGroup:
    if n < 3:
        return PermGroup(n, [])
    gens = [Permutation.from_cycles("(0 1 2)", n)]
    if n > 3:
        if n % 2:
            gens.append(Permutation(list(range(1, n)) + [0]))
        else:
            gens.append(Permutation([0] + list(range(2, n)) + [1]))
    return PermGroup(n, gens)


def cyclic_group(n: int) -> PermGroup:
    return PermGroup(n, [Permutation(list(range(1, n)) + [0])])


# ---------------------------------------------------------------------------
# exhaustive normalizer oracle


def _encode_rows(arr: np.ndarray):
    """Encode permutation rows as scalars (or bytes) for set membership."""
    n = arr.shape[1]
    if n <= 15:
        weights = (16 ** np.arange(n)).astype(np.int64)
        return arr.astype(np.int64) @ weights
    return np.array([row.tobytes() for row in np.ascontiguousarray(arr)])


def brute_normalizer(ambient: PermGroup, h: PermGroup, limit: int = 10 ** 6) -> PermGroup:
    """N_ambient(h) by scanning every element of the ambient group.

    The ambient order must not exceed `limit`.  This is the oracle of record
    for normalizer computations; it never consults any closed-form normalizer.
    """
    if ambient.degree != h.degree:
        raise ValueError("degree mismatch")
    if ambient.order() > limit:
        raise ValueError(
            f"ambient order {ambient.order()} too large for exhaustive scan"
        )
    arr = ambient.elements_array(limit)
    n = ambient.degree
    hset_codes = _encode_rows(
        np.array(sorted(h.element_set()), dtype=np.int16)
    )
    if isinstance(hset_codes, np.ndarray) and hset_codes.dtype != object:
        hcodes = np.sort(hset_codes)
    else:
        hcodes = set(hset_codes)
    inv = np.argsort(arr, axis=1)
    mask = np.ones(len(arr), dtype=bool)
    for hg in h.gens:
        himg = np.array(hg.img, dtype=np.int16)
        stage = himg[inv]
        conj = np.take_along_axis(arr, stage, axis=1)
        codes = _encode_rows(conj)
        if isinstance(hcodes, set):
            ok = np.array([c in hcodes for c in codes])
        else:
            idx = np.searchsorted(hcodes, codes)
            idx = np.clip(idx, 0, len(hcodes) - 1)
            ok = hcodes[idx] == codes
        mask &= ok
    rows = arr[mask]
    # reduce to a small generating set: add rows until the order matches
    count = int(mask.sum())
    group = PermGroup(n, [])
    gens: list[Permutation] = []
    for row in rows:
        if group.order() == count:
            break
        g = Permutation(int(x) for x in row)
        if g not in group:
            gens.append(g)
            group = PermGroup(n, gens)
    if group.order() != count:
        raise AssertionError("normalizer reduction failed to reach full order")
    return group
