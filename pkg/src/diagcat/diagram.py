"""String diagrams over a finite signature, with exact wiring semantics.

A diagram of arity (p, q) — p open outputs, q open inputs — is a multiset of
generator boxes plus a perfect matching between source ports (box outputs
and the q input-boundary ports) and sink ports (box inputs and the p
output-boundary ports).  Box-free closed loops are carried as an explicit
counter so the loop invariant is first class.

Equality is wiring-isomorphism rel boundary: two diagrams are equal when a
bijection of boxes respecting generator names and port order matches their
wirings, with boundary ports held pointwise fixed.  The decision procedure
is a canonical form computed by iterative color refinement with
individualization backtracking; no finer invariant is exposed.

Ports are tuples: ('bo', b, i) box output, ('bi', b, j) box input,
('in', j) input boundary, ('out', i) output boundary.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .poly import Poly


class SignatureError(ValueError):
    pass


class WiringError(ValueError):
    pass


class Signature:
    """Generator names with arities (p outputs, q inputs), plus parameter
    names used by characters and linear-combination coefficients."""

    def __init__(self, generators, params=()):
        self.generators = dict(generators)
        for name, (p, q) in self.generators.items():
            if p < 0 or q < 0 or (p == 0 and q == 0):
                raise SignatureError("generator %r needs p+q >= 1, got (%d, %d)"
                                     % (name, p, q))
        self.params = tuple(params)

    def arity(self, name):
        try:
            return self.generators[name]
        except KeyError:
            raise SignatureError("unknown generator %r (have %s)"
                                 % (name, sorted(self.generators))) from None

    def __eq__(self, other):
        return (isinstance(other, Signature)
                and self.generators == other.generators
                and self.params == other.params)

    def __hash__(self):
        return hash((tuple(sorted(self.generators.items())), self.params))

    def __repr__(self):
        gens = ", ".join("%s:(%d,%d)" % (n, p, q)
                         for n, (p, q) in sorted(self.generators.items()))
        return "Signature({%s})" % gens


class Diagram:
    """Immutable string diagram; see module docstring for the data model."""

    __slots__ = ("sig", "boxes", "p", "q", "wires", "free_loops",
                 "_encoding", "_hash")

    def __init__(self, sig, boxes, p, q, wires, free_loops=0):
        self.sig = sig
        self.boxes = tuple(boxes)
        self.p = int(p)
        self.q = int(q)
        self.wires = dict(wires)
        self.free_loops = int(free_loops)
        self._encoding = None
        self._hash = None
        self._validate()

    # -- construction helpers ------------------------------------------------

    def _validate(self):
        if self.p < 0 or self.q < 0 or self.free_loops < 0:
            raise WiringError("negative arity or loop count")
        sources = set()
        sinks = set()
        for b, name in enumerate(self.boxes):
            gp, gq = self.sig.arity(name)
            sources.update(("bo", b, i) for i in range(gp))
            sinks.update(("bi", b, j) for j in range(gq))
        sources.update(("in", j) for j in range(self.q))
        sinks.update(("out", i) for i in range(self.p))
        if len(sources) != len(sinks):
            raise WiringError(
                "source ports (%d) and sink ports (%d) cannot be perfectly "
                "matched" % (len(sources), len(sinks)))
        seen_snk = set()
        for src, snk in self.wires.items():
            if src not in sources:
                raise WiringError("wire source %r is not a source port" % (src,))
            if snk not in sinks:
                raise WiringError("wire sink %r is not a sink port" % (snk,))
            if snk in seen_snk:
                raise WiringError("sink port %r used twice" % (snk,))
            seen_snk.add(snk)
        if len(self.wires) != len(sources):
            missing = sorted(sources - set(self.wires))
            raise WiringError("unwired source ports: %s" % missing)

    @staticmethod
    def box(sig, name):
        p, q = sig.arity(name)
        wires = {("bo", 0, i): ("out", i) for i in range(p)}
        wires.update({("in", j): ("bi", 0, j) for j in range(q)})
        return Diagram(sig, (name,), p, q, wires)

    @staticmethod
    def identity(sig, n):
        return Diagram.permutation(sig, tuple(range(n)))

    @staticmethod
    def permutation(sig, perm):
        """Wire input j to output perm[j]; compose(a, b) acts as a after b,
        so compose(permutation(s), permutation(t)) == permutation(s after t)."""
        n = len(perm)
        if sorted(perm) != list(range(n)):
            raise WiringError("%r is not a permutation of 0..%d" % (perm, n - 1))
        wires = {("in", j): ("out", perm[j]) for j in range(n)}
        return Diagram(sig, (), n, n, wires)

    @staticmethod
    def loop(sig, k=1):
        """k box-free closed loops (the dimension invariant)."""
        return Diagram(sig, (), 0, 0, {}, free_loops=k)

    # -- the three structural operations --------------------------------------

    def compose(self, other):
        """self after other; arities (p2,q2) o (p1,q1) with q2 == p1."""
        if self.sig != other.sig:
            raise SignatureError("compose across different signatures")
        if self.q != other.p:
            raise WiringError(
                "compose arity mismatch: inner diagram has %d outputs, outer "
                "expects %d inputs" % (other.p, self.q))
        off = len(other.boxes)
        wire_map = {}
        for src, snk in other.wires.items():
            t = ("mid", snk[1]) if snk[0] == "out" else snk
            wire_map[src] = t
        for src, snk in self.wires.items():
            s = _shift_port(src, off)
            if s[0] == "in":
                s = ("gin", s[1])
            t = _shift_port(snk, off)
            wire_map[s] = t
        splices = {("mid", i): ("gin", i) for i in range(other.p)}
        resolved, loops = _resolve(wire_map, splices)
        return Diagram(self.sig, other.boxes + self.boxes, self.p, other.q,
                       resolved,
                       self.free_loops + other.free_loops + loops)

    def tensor(self, other):
        if self.sig != other.sig:
            raise SignatureError("tensor across different signatures")
        off = len(self.boxes)
        wires = dict(self.wires)
        for src, snk in other.wires.items():
            s = _shift_port(src, off)
            if s[0] == "in":
                s = ("in", s[1] + self.q)
            t = _shift_port(snk, off)
            if t[0] == "out":
                t = ("out", t[1] + self.p)
            wires[s] = t
        return Diagram(self.sig, self.boxes + other.boxes,
                       self.p + other.p, self.q + other.q, wires,
                       self.free_loops + other.free_loops)

    def trace_close(self):
        """Glue output i to input i; requires p == q.  Returns a closed
        diagram; strands that close onto themselves become free loops."""
        if self.p != self.q:
            raise WiringError("trace_close needs equal arities, got (%d, %d)"
                              % (self.p, self.q))
        wire_map = dict(self.wires)
        splices = {("out", i): ("in", i) for i in range(self.p)}
        resolved, loops = _resolve(wire_map, splices)
        return Diagram(self.sig, self.boxes, 0, 0, resolved,
                       self.free_loops + loops)

    # -- structure queries ----------------------------------------------------

    def is_closed(self):
        return self.p == 0 and self.q == 0

    def connected_components(self):
        """Split into connected pieces.  Boundary ports do not connect
        components; per component they are renumbered preserving order.
        Free loops come last, one component each."""
        n = len(self.boxes)
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(a, b):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)

        strand_wires = []
        for src, snk in self.wires.items():
            bs = src[1] if src[0] == "bo" else None
            bt = snk[1] if snk[0] == "bi" else None
            if bs is not None and bt is not None:
                union(bs, bt)
            elif bs is None and bt is None:
                strand_wires.append((src, snk))
        groups = {}
        for b in range(n):
            groups.setdefault(find(b), []).append(b)
        out = []
        for root in sorted(groups):
            members = groups[root]
            index = {b: k for k, b in enumerate(members)}
            boxes = tuple(self.boxes[b] for b in members)
            outs, ins = [], []
            wires = []
            for src, snk in sorted(self.wires.items()):
                owner = src[1] if src[0] == "bo" else (
                    snk[1] if snk[0] == "bi" else None)
                if owner is None or find(owner) != root:
                    continue
                wires.append((src, snk))
                if src[0] == "in":
                    ins.append(src[1])
                if snk[0] == "out":
                    outs.append(snk[1])
            remap_in = {j: k for k, j in enumerate(sorted(ins))}
            remap_out = {i: k for k, i in enumerate(sorted(outs))}
            newwires = {}
            for src, snk in wires:
                s = ("bo", index[src[1]], src[2]) if src[0] == "bo" else \
                    ("in", remap_in[src[1]])
                t = ("bi", index[snk[1]], snk[2]) if snk[0] == "bi" else \
                    ("out", remap_out[snk[1]])
                newwires[s] = t
            out.append(Diagram(self.sig, boxes, len(outs), len(ins), newwires))
        for src, snk in sorted(strand_wires):
            wires = {("in", 0): ("out", 0)}
            out.append(Diagram(self.sig, (), 1, 1, wires))
        for _ in range(self.free_loops):
            out.append(Diagram.loop(self.sig))
        return out

    # -- canonical form --------------------------------------------------------

    def _ports_and_endpoints(self):
        ports = []
        endpoints = {}
        rev = {snk: src for src, snk in self.wires.items()}
        for b, name in enumerate(self.boxes):
            gp, gq = self.sig.arity(name)
            plist = [("o", i) for i in range(gp)] + [("i", j) for j in range(gq)]
            ports.append(plist)
            for kind, idx in plist:
                if kind == "o":
                    snk = self.wires[("bo", b, idx)]
                    if snk[0] == "bi":
                        endpoints[(b, kind, idx)] = ("b", snk[1], "i", snk[2])
                    else:
                        endpoints[(b, kind, idx)] = ("B", "out", snk[1])
                else:
                    src = rev[("bi", b, idx)]
                    if src[0] == "bo":
                        endpoints[(b, kind, idx)] = ("b", src[1], "o", src[2])
                    else:
                        endpoints[(b, kind, idx)] = ("B", "in", src[1])
        return ports, endpoints

    def _encode_with_order(self, order):
        pos = {b: k for k, b in enumerate(order)}
        boxes = tuple(self.boxes[b] for b in order)
        wires = []
        for src, snk in self.wires.items():
            s = ("bo", pos[src[1]], src[2]) if src[0] == "bo" else src
            t = ("bi", pos[snk[1]], snk[2]) if snk[0] == "bi" else snk
            wires.append((s, t))
        return (self.p, self.q, self.free_loops, boxes, tuple(sorted(wires)))

    def encoding(self):
        """Canonical encoding tuple; equal iff diagrams are equal."""
        if self._encoding is not None:
            return self._encoding
        n = len(self.boxes)
        if n == 0:
            self._encoding = self._encode_with_order([])
            return self._encoding
        ports, endpoints = self._ports_and_endpoints()
        names = sorted(set(self.boxes))
        name_rank = {nm: r for r, nm in enumerate(names)}

        def refine(colors):
            while True:
                sigs = []
                for b in range(n):
                    desc = []
                    for kind, idx in ports[b]:
                        ep = endpoints[(b, kind, idx)]
                        if ep[0] == "B":
                            desc.append(ep)
                        else:
                            desc.append(("b", colors[ep[1]], ep[2], ep[3]))
                    sigs.append((colors[b], tuple(desc)))
                ranks = {s: r for r, s in enumerate(sorted(set(sigs)))}
                new = [ranks[s] for s in sigs]
                if new == colors:
                    return new
                colors = new

        best = [None]

        def rerank(tagged):
            ranks = {t: r for r, t in enumerate(sorted(set(tagged)))}
            return [ranks[t] for t in tagged]

        def search(colors):
            colors = refine(colors)
            classes = {}
            for b, c in enumerate(colors):
                classes.setdefault(c, []).append(b)
            multi = [c for c in sorted(classes) if len(classes[c]) > 1]
            if not multi:
                order = sorted(range(n), key=lambda b: colors[b])
                enc = self._encode_with_order(order)
                if best[0] is None or enc < best[0]:
                    best[0] = enc
                return
            c0 = multi[0]
            for b in classes[c0]:
                tagged = [(col, 0 if bb == b else 1)
                          for bb, col in enumerate(colors)]
                search(rerank(tagged))

        search([name_rank[nm] for nm in self.boxes])
        self._encoding = best[0]
        return self._encoding

    def canonical_key(self):
        """Stable bytes key for the wiring-isomorphism class rel boundary."""
        return repr(self.encoding()).encode()

    def canonicalize(self):
        """The canonical representative of this diagram's class."""
        p, q, loops, boxes, wires = self.encoding()
        return Diagram(self.sig, boxes, p, q, dict(wires), loops)

    # -- protocol ---------------------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, Diagram) and self.sig == other.sig
                and self.encoding() == other.encoding())

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.encoding())
        return self._hash

    def __repr__(self):
        return "Diagram(%s)" % format_diagram(self)

    def __matmul__(self, other):
        return self.tensor(other)


def _shift_port(port, off):
    if port[0] == "bo":
        return ("bo", port[1] + off, port[2])
    if port[0] == "bi":
        return ("bi", port[1] + off, port[2])
    return port


def _resolve(wire_map, splices):
    """Resolve a wiring with splice points (virtual sink -> continuation
    source).  Returns (real wires, closed-loop count)."""
    consumed = set(splices.values())
    visited = set()
    resolved = {}
    for src in sorted(wire_map):
        if src in consumed:
            continue
        s, t = src, wire_map[src]
        visited.add(s)
        while t in splices:
            s2 = splices[t]
            visited.add(s2)
            t = wire_map[s2]
        resolved[src] = t
    loops = 0
    for src in sorted(wire_map):
        if src in visited or src not in consumed:
            continue
        loops += 1
        s = src
        while True:
            visited.add(s)
            t = wire_map[s]
            s2 = splices[t]
            if s2 == src:
                break
            s = s2
    return resolved, loops


# ---------------------------------------------------------------------------
# linear combinations

def _coeff(value):
    if isinstance(value, Poly):
        return value
    return Fraction(value)


def _coeff_is_zero(value):
    if isinstance(value, Poly):
        return value.is_zero()
    return value == 0


class LinCombo:
    """Finite linear combination of same-arity diagrams.

    Coefficients are Fractions or Polys in the signature parameters.  Terms
    are keyed by canonical form, so syntactically different builds of the
    same wiring merge.
    """

    def __init__(self, sig, p, q, terms=()):
        self.sig = sig
        self.p = p
        self.q = q
        self.terms = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for diagram, coeff in items:
            if diagram.p != p or diagram.q != q:
                raise WiringError("term arity (%d, %d) != combo arity (%d, %d)"
                                  % (diagram.p, diagram.q, p, q))
            c = _coeff(coeff)
            key = diagram.canonicalize()
            acc = self.terms.get(key)
            total = c if acc is None else acc + c
            if _coeff_is_zero(total):
                self.terms.pop(key, None)
            else:
                self.terms[key] = total

    @staticmethod
    def wrap(x, coeff=1):
        if isinstance(x, LinCombo):
            return x
        return LinCombo(x.sig, x.p, x.q, [(x, coeff)])

    def items(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0].canonical_key())

    def __add__(self, other):
        other = LinCombo.wrap(other)
        return LinCombo(self.sig, self.p, self.q,
                        list(self.terms.items()) + list(other.terms.items()))

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        c = _coeff(c)
        return LinCombo(self.sig, self.p, self.q,
                        [(d, k * c) for d, k in self.terms.items()])

    def compose(self, other):
        other = LinCombo.wrap(other)
        terms = []
        for d1, c1 in self.items():
            for d2, c2 in other.items():
                terms.append((d1.compose(d2), c1 * c2))
        return LinCombo(self.sig, self.p, other.q, terms)

    def tensor(self, other):
        other = LinCombo.wrap(other)
        terms = []
        for d1, c1 in self.items():
            for d2, c2 in other.items():
                terms.append((d1.tensor(d2), c1 * c2))
        return LinCombo(self.sig, self.p + other.p, self.q + other.q, terms)

    def trace_close(self):
        return LinCombo(self.sig, 0, 0,
                        [(d.trace_close(), c) for d, c in self.items()])

    def __eq__(self, other):
        return (isinstance(other, LinCombo) and self.sig == other.sig
                and self.p == other.p and self.q == other.q
                and self.terms == other.terms)

    def __repr__(self):
        bits = ["%s * %s" % (c, format_diagram(d)) for d, c in self.items()]
        return "LinCombo(%s)" % ("0" if not bits else " + ".join(bits))


# ---------------------------------------------------------------------------
# textual diagram literals

_PORT_RE = re.compile(
    r"^(?:(?P<name>[^.#\s]+)#(?P<k>\d+)\.(?P<kind>out|in)\[(?P<idx>\d+)\]"
    r"|bnd\.(?P<bkind>out|in)\[(?P<bidx>\d+)\])$")


def format_diagram(diagram):
    """Deterministic literal form; inverse of parse_diagram."""
    d = diagram.canonicalize()
    counters = {}
    labels = []
    for name in d.boxes:
        k = counters.get(name, 0)
        counters[name] = k + 1
        labels.append("%s#%d" % (name, k))

    def port(pt):
        if pt[0] == "bo":
            return "%s.out[%d]" % (labels[pt[1]], pt[2])
        if pt[0] == "bi":
            return "%s.in[%d]" % (labels[pt[1]], pt[2])
        if pt[0] == "in":
            return "bnd.in[%d]" % pt[1]
        return "bnd.out[%d]" % pt[1]

    wires = ", ".join("(%s, %s)" % (port(s), port(t))
                      for s, t in sorted(d.wires.items()))
    text = "boxes: [%s]; wires: [%s]; in: %d; out: %d" % (
        ", ".join(labels), wires, d.q, d.p)
    if d.free_loops:
        text += "; loops: %d" % d.free_loops
    return text


def parse_diagram(sig, text):
    """Parse the literal format (see format_diagram).  The optional trailing
    `loops: k` field carries box-free closed loops."""
    fields = {}
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        key, _, value = chunk.partition(":")
        fields[key.strip()] = value.strip()
    for needed in ("boxes", "wires", "in", "out"):
        if needed not in fields:
            raise WiringError("diagram literal is missing %r" % needed)

    boxes_text = fields["boxes"].strip()
    if not (boxes_text.startswith("[") and boxes_text.endswith("]")):
        raise WiringError("boxes field must be a [...] list")
    labels = [b.strip() for b in boxes_text[1:-1].split(",") if b.strip()]
    boxes = []
    label_index = {}
    for label in labels:
        name, _, k = label.partition("#")
        if not k.isdigit():
            raise WiringError("box label %r must look like name#k" % label)
        label_index[label] = len(boxes)
        boxes.append(name)

    def port(token, want_source):
        m = _PORT_RE.match(token.strip())
        if not m:
            raise WiringError("bad port %r" % token)
        if m.group("bkind"):
            kind, idx = m.group("bkind"), int(m.group("bidx"))
            if want_source and kind != "in":
                raise WiringError("%r cannot be a wire source" % token)
            if not want_source and kind != "out":
                raise WiringError("%r cannot be a wire sink" % token)
            return (kind, idx)
        label = "%s#%s" % (m.group("name"), m.group("k"))
        if label not in label_index:
            raise WiringError("wire references unknown box %r" % label)
        b = label_index[label]
        idx = int(m.group("idx"))
        if m.group("kind") == "out":
            if not want_source:
                raise WiringError("%r cannot be a wire sink" % token)
            return ("bo", b, idx)
        if want_source:
            raise WiringError("%r cannot be a wire source" % token)
        return ("bi", b, idx)

    wires_text = fields["wires"].strip()
    if not (wires_text.startswith("[") and wires_text.endswith("]")):
        raise WiringError("wires field must be a [...] list")
    wires = {}
    body = wires_text[1:-1].strip()
    if body:
        pairs = re.findall(r"\(([^()]*)\)", body)
        for pair in pairs:
            src_text, _, snk_text = pair.partition(",")
            if not snk_text:
                raise WiringError("wire %r must be (src, dst)" % pair)
            src = port(src_text, True)
            snk = port(snk_text, False)
            wires[src] = snk
    return Diagram(sig, boxes, int(fields["out"]), int(fields["in"]),
                   wires, int(fields.get("loops", "0")))


# ---------------------------------------------------------------------------
# seeded sampling used by tests and the preset validators

def balanced_multisets(sig, max_boxes):
    """All generator multisets of size <= max_boxes whose source and sink
    port counts match (so a closed perfect matching exists)."""
    names = sorted(sig.generators)
    out = []

    def rec(start, left, current, src, snk):
        if src == snk and current:
            out.append(tuple(current))
        if left == 0:
            return
        for i in range(start, len(names)):
            p, q = sig.generators[names[i]]
            current.append(names[i])
            rec(i, left - 1, current, src + p, snk + q)
            current.pop()

    rec(0, max_boxes, [], 0, 0)
    return out


def random_closed_diagram(sig, rng, max_boxes=5, connected=True, tries=400):
    """Seeded random closed diagram.  With connected=True, retries until a
    single component comes out; a free loop is the fallback when the
    signature admits nothing else."""
    pool = balanced_multisets(sig, max_boxes)
    if not pool:
        return Diagram.loop(sig)
    for _ in range(tries):
        boxes = list(pool[rng.randrange(len(pool))])
        rng.shuffle(boxes)
        sources = []
        sinks = []
        for b, name in enumerate(boxes):
            gp, gq = sig.arity(name)
            sources.extend(("bo", b, i) for i in range(gp))
            sinks.extend(("bi", b, j) for j in range(gq))
        rng.shuffle(sinks)
        wires = dict(zip(sources, sinks))
        d = Diagram(sig, boxes, 0, 0, wires)
        if not connected or len(d.connected_components()) == 1:
            return d
    return Diagram.loop(sig)
