"""Spanning-set enumerators for hom(q, p) in the supported families.

Each enumerator returns a SpanningSet of canonical diagrams in a fixed
deterministic order (sorted canonical keys).  The generic enumerator walks
all wirings of all balanced box multisets up to a size cap and deduplicates
by canonical form; the family enumerators build the classical bases
directly (permutations, point matchings, set partitions, labeled-genus
partitions).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from .diagram import Diagram, Signature, SignatureError


class EnumerationBudgetError(RuntimeError):
    """Raised before enumeration when the raw wiring count would exceed the
    configured budget."""

    def __init__(self, estimate, budget):
        super().__init__(
            "enumeration would visit about %d wirings, over the budget of %d"
            % (estimate, budget))
        self.estimate = estimate
        self.budget = budget


@dataclass
class SpanningSet:
    sig: Signature
    p: int
    q: int
    kind: str
    diagrams: list
    raw_count: int = 0
    notes: dict = field(default_factory=dict)

    @property
    def size(self):
        return len(self.diagrams)

    def __iter__(self):
        return iter(self.diagrams)


def _finish(sig, p, q, kind, diagrams, raw_count, **notes):
    seen = {}
    for d in diagrams:
        seen.setdefault(d.canonical_key(), d.canonicalize())
    ordered = [seen[k] for k in sorted(seen)]
    return SpanningSet(sig, p, q, kind, ordered, raw_count, dict(notes))


# ---------------------------------------------------------------------------
# generic enumeration

def _balanced_open_multisets(sig, p, q, max_boxes):
    names = sorted(sig.generators)
    out = []

    def rec(start, left, current, src, snk):
        if src + q == snk + p:
            out.append(tuple(current))
        if left == 0:
            return
        for i in range(start, len(names)):
            gp, gq = sig.generators[names[i]]
            current.append(names[i])
            rec(i, left - 1, current, src + gp, snk + gq)
            current.pop()

    rec(0, max_boxes, [], 0, 0)
    return out


def enumerate_generic(sig, p, q, max_boxes, budget=10_000_000):
    """Every diagram with at most max_boxes boxes, up to wiring isomorphism.

    The raw wiring count is estimated up front; if it exceeds the budget the
    enumeration refuses to start instead of grinding.
    """
    multisets = _balanced_open_multisets(sig, p, q, max_boxes)
    estimate = 0
    for boxes in multisets:
        nsrc = q + sum(sig.generators[b][0] for b in boxes)
        estimate += math.factorial(nsrc)
    if estimate > budget:
        raise EnumerationBudgetError(estimate, budget)

    found = []
    raw = 0
    for boxes in multisets:
        sources = [("in", j) for j in range(q)]
        sinks = [("out", i) for i in range(p)]
        for b, name in enumerate(boxes):
            gp, gq = sig.arity(name)
            sources.extend(("bo", b, i) for i in range(gp))
            sinks.extend(("bi", b, j) for j in range(gq))
        for perm in itertools.permutations(sinks):
            raw += 1
            found.append(Diagram(sig, boxes, p, q, dict(zip(sources, perm))))
    return _finish(sig, p, q, "generic", found, raw, max_boxes=max_boxes)


# ---------------------------------------------------------------------------
# classical families

def enumerate_permutations(sig, n):
    diagrams = [Diagram.permutation(sig, perm)
                for perm in itertools.permutations(range(n))]
    return _finish(sig, n, n, "permutations", diagrams, len(diagrams))


def _require(sig, name, arity):
    if sig.generators.get(name) != arity:
        raise SignatureError("enumerator needs generator %r with arity %r"
                             % (name, arity))


def enumerate_brauer(sig, p, q):
    """Perfect matchings of the p + q boundary points: in-in pairs become
    'c' boxes, out-out pairs 'd' boxes, in-out pairs strands."""
    _require(sig, "c", (0, 2))
    _require(sig, "d", (2, 0))
    if (p + q) % 2:
        return _finish(sig, p, q, "brauer", [], 0)
    points = [("in", j) for j in range(q)] + [("out", i) for i in range(p)]

    def matchings(rest):
        if not rest:
            yield []
            return
        a = rest[0]
        for k in range(1, len(rest)):
            b = rest[k]
            tail = rest[1:k] + rest[k + 1:]
            for m in matchings(tail):
                yield [(a, b)] + m

    diagrams = []
    for pairing in matchings(points):
        boxes = []
        wires = {}
        for a, b in pairing:
            if a[0] == "in" and b[0] == "in":
                bx = len(boxes)
                boxes.append("c")
                wires[a] = ("bi", bx, 0)
                wires[b] = ("bi", bx, 1)
            elif a[0] == "out" and b[0] == "out":
                bx = len(boxes)
                boxes.append("d")
                wires[("bo", bx, 0)] = a
                wires[("bo", bx, 1)] = b
            else:
                src, snk = (a, b) if a[0] == "in" else (b, a)
                wires[src] = snk
        diagrams.append(Diagram(sig, boxes, p, q, wires))
    return _finish(sig, p, q, "brauer", diagrams, len(diagrams))


def set_partitions(items):
    """All partitions of a list, as lists of blocks."""
    items = list(items)
    if not items:
        yield []
        return
    head, rest = items[0], items[1:]
    for part in set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[head] + part[i]] + part[i + 1:]
        yield [[head]] + part


class _Builder:
    """Shared block-tree assembly for partition and cobordism diagrams."""

    def __init__(self, sig):
        self.sig = sig
        self.boxes = []
        self.wires = {}

    def add(self, name):
        self.boxes.append(name)
        return len(self.boxes) - 1

    def comb(self, ins):
        """Merge input boundary ports into one carrier source port."""
        if not ins:
            b = self.add("u")
            return ("bo", b, 0)
        carrier = ("in", ins[0])
        for j in ins[1:]:
            b = self.add("m")
            self.wires[carrier] = ("bi", b, 0)
            self.wires[("in", j)] = ("bi", b, 1)
            carrier = ("bo", b, 0)
        return carrier

    def split(self, carrier):
        """One comultiplication step; returns (left, right) carrier ports."""
        bc = self.add("c")
        bm = self.add("m")
        self.wires[carrier] = ("bi", bm, 0)
        self.wires[("bo", bc, 0)] = ("bi", bm, 1)
        return ("bo", bm, 0), ("bo", bc, 1)

    def handle(self, carrier):
        left, right = self.split(carrier)
        b = self.add("m")
        self.wires[left] = ("bi", b, 0)
        self.wires[right] = ("bi", b, 1)
        return ("bo", b, 0)

    def terminate_loop(self, carrier):
        """Trace of left multiplication, built from 'm' with a self loop."""
        b = self.add("m")
        self.wires[carrier] = ("bi", b, 0)
        self.wires[("bo", b, 0)] = ("bi", b, 1)

    def terminate_counit(self, carrier):
        b = self.add("eps")
        self.wires[carrier] = ("bi", b, 0)

    def emit(self, carrier, outs, closed_style):
        if not outs:
            if closed_style == "loop":
                self.terminate_loop(carrier)
            else:
                self.terminate_counit(carrier)
            return
        for i in outs[:-1]:
            left, carrier = self.split(carrier)
            self.wires[left] = ("out", i)
        self.wires[carrier] = ("out", outs[-1])


def _block_diagram(sig, p, q, blocks, closed_style, genus=None):
    bld = _Builder(sig)
    for k, (ins, outs) in enumerate(blocks):
        carrier = bld.comb(ins)
        if genus is not None:
            for _ in range(genus[k]):
                carrier = bld.handle(carrier)
        bld.emit(carrier, outs, closed_style)
    return Diagram(sig, bld.boxes, p, q, bld.wires)


def _boundary_blocks(p, q, partition):
    blocks = []
    for block in partition:
        ins = sorted(j for kind, j in block if kind == "in")
        outs = sorted(i for kind, i in block if kind == "out")
        blocks.append((ins, outs))
    return blocks


def enumerate_partition(sig, p, q):
    """Set partitions of the p + q boundary points, realized as trees of
    'm' / 'u' / 'c' boxes."""
    _require(sig, "m", (1, 2))
    _require(sig, "u", (1, 0))
    _require(sig, "c", (2, 0))
    points = [("in", j) for j in range(q)] + [("out", i) for i in range(p)]
    diagrams = []
    for partition in set_partitions(points):
        blocks = _boundary_blocks(p, q, partition)
        diagrams.append(_block_diagram(sig, p, q, blocks, "loop"))
    return _finish(sig, p, q, "partition", diagrams, len(diagrams))


def enumerate_cobordism(sig, p, q, genus_cutoff=1):
    """Surfaces with p + q boundary circles: a set partition of the circles
    with a genus label up to the cutoff on each piece.  For (0, 0) the
    connected closed surfaces of each genus are returned instead."""
    _require(sig, "m", (1, 2))
    _require(sig, "u", (1, 0))
    _require(sig, "c", (2, 0))
    _require(sig, "eps", (0, 1))
    diagrams = []
    if p == 0 and q == 0:
        for g in range(genus_cutoff + 1):
            diagrams.append(_block_diagram(sig, 0, 0, [([], [])],
                                           "counit", genus=[g]))
        return _finish(sig, 0, 0, "cobordism", diagrams, len(diagrams),
                       genus_cutoff=genus_cutoff)
    points = [("in", j) for j in range(q)] + [("out", i) for i in range(p)]
    for partition in set_partitions(points):
        blocks = _boundary_blocks(p, q, partition)
        for genus in itertools.product(range(genus_cutoff + 1),
                                       repeat=len(blocks)):
            diagrams.append(_block_diagram(sig, p, q, blocks, "counit",
                                           genus=list(genus)))
    return _finish(sig, p, q, "cobordism", diagrams, len(diagrams),
                   genus_cutoff=genus_cutoff)
