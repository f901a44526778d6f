"""Exact finite-dimensional tensor models of a signature.

A Model assigns every generator a numpy object array of Fractions, outputs
axes first.  realize() contracts a diagram's wiring over a model, giving an
array indexed by the open boundary (outputs major); closed diagrams realize
to scalars.  All arithmetic is exact rational.
"""

from __future__ import annotations

import itertools
import json
from fractions import Fraction

import numpy as np

from .diagram import Diagram, LinCombo, Signature
from .poly import Poly


class ModelError(ValueError):
    pass


def _as_fraction_array(data, shape):
    arr = np.empty(shape, dtype=object)
    flat_in = np.asarray(data, dtype=object).reshape(-1)
    if flat_in.size != arr.size:
        raise ModelError("tensor has %d entries, expected %d for shape %s"
                         % (flat_in.size, arr.size, shape))
    flat = arr.reshape(-1)
    for k in range(arr.size):
        flat[k] = Fraction(flat_in[k])
    return arr


class Model:
    """dim >= 0 and one Fraction tensor per generator, outputs-major."""

    def __init__(self, sig, dim, tensors):
        if dim < 0:
            raise ModelError("model dimension must be >= 0")
        self.sig = sig
        self.dim = int(dim)
        self.tensors = {}
        missing = set(sig.generators) - set(tensors)
        if missing:
            raise ModelError("no tensor for generators %s" % sorted(missing))
        for name, data in tensors.items():
            p, q = sig.arity(name)
            shape = (self.dim,) * (p + q)
            if isinstance(data, np.ndarray) and data.dtype == object \
                    and data.shape == shape:
                arr = data.copy()
                flat = arr.reshape(-1)
                for k in range(arr.size):
                    flat[k] = Fraction(flat[k])
            else:
                arr = _as_fraction_array(data, shape)
            self.tensors[name] = arr

    def __repr__(self):
        return "Model(dim=%d, generators=%s)" % (
            self.dim, sorted(self.tensors))


# ---------------------------------------------------------------------------
# contraction

def _box_nodes(model, diagram):
    """Nodes (array, axis labels) for the tensor network of a diagram.
    Labels: ('w', src) for internal wires, ('out', i)/('in', j) boundary."""
    nodes = []
    axis_of = {}
    for b, name in enumerate(diagram.boxes):
        gp, gq = diagram.sig.arity(name)
        labels = [None] * (gp + gq)
        nodes.append([model.tensors[name], labels])
        for i in range(gp):
            axis_of[("bo", b, i)] = (b, i)
        for j in range(gq):
            axis_of[("bi", b, j)] = (b, gp + j)
    for src, snk in diagram.wires.items():
        sb = axis_of.get(src)
        tb = axis_of.get(snk)
        if sb is not None and tb is not None:
            nodes[sb[0]][1][sb[1]] = ("w", src)
            nodes[tb[0]][1][tb[1]] = ("w", src)
        elif sb is not None:
            nodes[sb[0]][1][sb[1]] = snk
        elif tb is not None:
            nodes[tb[0]][1][tb[1]] = src
        else:
            eye = np.empty((model.dim, model.dim), dtype=object)
            for a in range(model.dim):
                for c in range(model.dim):
                    eye[a, c] = Fraction(1 if a == c else 0)
            nodes.append([eye, [snk, src]])
    return nodes


def _contract(nodes):
    """Greedy pairwise contraction, cheapest resulting rank first."""
    while True:
        owners = {}
        for ni, (_, labels) in enumerate(nodes):
            for ai, lb in enumerate(labels):
                owners.setdefault(lb, []).append((ni, ai))
        internal = {lb: spots for lb, spots in owners.items()
                    if len(spots) == 2}
        if not internal:
            break
        best = None
        for lb, ((n1, a1), (n2, a2)) in sorted(internal.items()):
            if n1 == n2:
                cost = (nodes[n1][0].ndim - 2, 0)
            else:
                shared = sum(1 for l in nodes[n1][1] if l in internal
                             and any(s[0] == n2 for s in internal[l]))
                cost = (nodes[n1][0].ndim + nodes[n2][0].ndim - 2 * shared, 1)
            if best is None or cost < best[0]:
                best = (cost, lb, n1, a1, n2, a2)
        _, lb, n1, a1, n2, a2 = best
        if n1 == n2:
            arr, labels = nodes[n1]
            # trace and tensordot degrade 0-d object results to scalars
            arr = np.asarray(np.trace(arr, axis1=a1, axis2=a2), dtype=object)
            labels = [l for k, l in enumerate(labels) if k not in (a1, a2)]
            nodes[n1] = [arr, labels]
        else:
            arr1, lab1 = nodes[n1]
            arr2, lab2 = nodes[n2]
            shared = [l for l in lab1
                      if l in internal and any(s[0] == n2 for s in internal[l])]
            ax1 = [lab1.index(l) for l in shared]
            ax2 = [lab2.index(l) for l in shared]
            arr = np.asarray(np.tensordot(arr1, arr2, axes=(ax1, ax2)),
                             dtype=object)
            labels = [l for l in lab1 if l not in shared] + \
                     [l for l in lab2 if l not in shared]
            hi, lo = max(n1, n2), min(n1, n2)
            nodes.pop(hi)
            nodes.pop(lo)
            nodes.append([arr, labels])
    result = np.array(Fraction(1), dtype=object)
    labels = []
    for arr, lab in nodes:
        result = np.multiply.outer(result, arr)
        labels += lab
    return result, labels


def realize(model, diagram):
    """Contract the diagram over the model.  Axes come out boundary-ordered:
    out[0..p-1] then in[0..q-1].  Free loops contribute a dim factor each."""
    if isinstance(diagram, LinCombo):
        return realize_combo(model, diagram)
    nodes = _box_nodes(model, diagram)
    arr, labels = _contract(nodes)
    want = [("out", i) for i in range(diagram.p)] + \
           [("in", j) for j in range(diagram.q)]
    if sorted(map(repr, labels)) != sorted(map(repr, want)):
        raise ModelError("contraction left labels %s, wanted %s"
                         % (labels, want))
    perm = [labels.index(w) for w in want]
    arr = np.transpose(arr, perm) if perm else arr
    scale = Fraction(model.dim) ** diagram.free_loops
    if scale != 1:
        arr = arr * scale
    arr = np.asarray(arr, dtype=object)
    out = np.empty(arr.shape, dtype=object)
    flat_in, flat_out = arr.reshape(-1), out.reshape(-1)
    for k in range(out.size):
        flat_out[k] = Fraction(flat_in[k])
    return out


def realize_combo(model, combo, param_values=None):
    arr = None
    for d, coeff in combo.items():
        c = coeff
        if isinstance(c, Poly):
            c = c.eval(param_values or {})
        term = realize(model, d) * Fraction(c)
        arr = term if arr is None else arr + term
    if arr is None:
        shape = (model.dim,) * (combo.p + combo.q)
        arr = np.empty(shape, dtype=object)
        arr.reshape(-1)[:] = [Fraction(0)] * arr.size
    return arr


def evaluate_closed(model, diagram):
    """Scalar value of a closed diagram, multiplicatively over components."""
    if not diagram.is_closed():
        raise ModelError("evaluate_closed needs a closed diagram, got (%d, %d)"
                         % (diagram.p, diagram.q))
    total = Fraction(1)
    for piece in diagram.connected_components():
        total *= Fraction(realize(model, piece).item())
    return total


def realized_rank(model, diagrams):
    """Rank of the realizations as vectors; a concrete hom-dimension oracle."""
    from .linalg import qrank
    rows = [list(realize(model, d).reshape(-1)) for d in diagrams]
    if not rows:
        return 0
    return qrank(rows)


# ---------------------------------------------------------------------------
# stock signatures and models

def partition_signature(params=("t",)):
    return Signature({"m": (1, 2), "u": (1, 0), "c": (2, 0)}, params)


def brauer_signature(params=("t",)):
    return Signature({"c": (0, 2), "d": (2, 0)}, params)


def permutation_signature(params=("t",)):
    return Signature({}, params)


def frobenius_signature(params=()):
    return Signature({"m": (1, 2), "u": (1, 0), "c": (2, 0), "eps": (0, 1)},
                     params)


def endo_signature(params=()):
    return Signature({"f": (1, 1)}, params)


def sep_algebra_model(n):
    """Functions on n points: pointwise product, all-ones unit, and the
    symmetric dual pairing.  Realizes partition diagrams."""
    sig = partition_signature()
    m = np.empty((n, n, n), dtype=object)
    for k, i, j in itertools.product(range(n), repeat=3):
        m[k, i, j] = Fraction(1 if k == i == j else 0)
    u = np.array([Fraction(1)] * n, dtype=object).reshape((n,))
    c = np.empty((n, n), dtype=object)
    for i, j in itertools.product(range(n), repeat=2):
        c[i, j] = Fraction(1 if i == j else 0)
    return Model(sig, n, {"m": m, "u": u, "c": c})


def orth_model(n):
    sig = brauer_signature()
    eye = [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    return Model(sig, n, {"c": eye, "d": eye})


def symp_model(two_n):
    if two_n % 2:
        raise ModelError("symplectic dimension must be even")
    n = two_n // 2
    sig = brauer_signature()
    j = [[Fraction(0)] * two_n for _ in range(two_n)]
    for i in range(n):
        j[i][n + i] = Fraction(1)
        j[n + i][i] = Fraction(-1)
    return Model(sig, two_n, {"c": j, "d": j})


def frobenius_model(mult, unit, counit):
    """Commutative Frobenius algebra from structure constants.  The pairing
    e_i, e_j -> counit(e_i e_j) must be invertible; 'c' is its inverse."""
    mult = np.asarray(mult, dtype=object)
    d = mult.shape[0]
    sig = frobenius_signature()
    eps = [Fraction(x) for x in counit]
    form = [[sum(Fraction(mult[k, i, j]) * eps[k] for k in range(d))
             for j in range(d)] for i in range(d)]
    from .linalg import qmatinv
    inv = qmatinv(form)
    if inv is None:
        raise ModelError("counit gives a degenerate pairing; not Frobenius")
    return Model(sig, d, {"m": mult, "u": unit, "eps": eps, "c": inv})


def endo_model(matrix):
    matrix = np.asarray(matrix, dtype=object)
    return Model(endo_signature(), matrix.shape[0], {"f": matrix})


# -- finite abelian p-group algebra -----------------------------------------

MAX_GROUP_ORDER = 4096


def dvr_signature(r, params=None):
    """Hopf-algebra signature with scalar operators T_x, x = sum b_i p^i for
    every 0/1 tuple b of length r.  Names do not mention the prime."""
    if params is None:
        params = tuple("t%d" % (i + 1) for i in range(r))
    gens = {"m": (1, 2), "delta": (2, 1), "u": (1, 0), "eps": (0, 1),
            "S": (1, 1)}
    for bits in itertools.product((0, 1), repeat=r):
        gens[t_box_name(bits)] = (1, 1)
    return Signature(gens, params)


def t_box_name(bits):
    return "T" + "".join(str(b) for b in bits)


def group_algebra_model(prime, r, a):
    """Group algebra of M = sum_i (Z/prime^i)^(a_i), i = 1..r, with basis
    U_g, diagonal comultiplication, antipode, and T_x acting by the scalar
    x on M."""
    if len(a) != r:
        raise ModelError("need %d multiplicities, got %d" % (r, len(a)))
    factors = []
    for i, ai in enumerate(a, start=1):
        factors.extend([prime ** i] * ai)
    order = 1
    for f in factors:
        order *= f
    if order > MAX_GROUP_ORDER:
        raise ModelError("group order %d exceeds the %d cap"
                         % (order, MAX_GROUP_ORDER))
    elements = list(itertools.product(*[range(f) for f in factors]))
    index = {g: k for k, g in enumerate(elements)}
    n = len(elements)

    def g_add(g, h):
        return tuple((x + y) % f for x, y, f in zip(g, h, factors))

    def g_scale(s, g):
        return tuple((s * x) % f for x, f in zip(g, factors))

    sig = dvr_signature(r)

    def zero(shape):
        arr = np.empty(shape, dtype=object)
        arr.reshape(-1)[:] = [Fraction(0)] * arr.size
        return arr

    m = zero((n, n, n))
    for gi, g in enumerate(elements):
        for hi, h in enumerate(elements):
            m[index[g_add(g, h)], gi, hi] = Fraction(1)
    delta = zero((n, n, n))
    for gi in range(n):
        delta[gi, gi, gi] = Fraction(1)
    u = zero((n,))
    u[index[tuple(0 for _ in factors)]] = Fraction(1)
    eps = np.array([Fraction(1)] * n, dtype=object).reshape((n,))
    s = zero((n, n))
    for gi, g in enumerate(elements):
        s[index[g_scale(-1, g)], gi] = Fraction(1)
    tensors = {"m": m, "delta": delta, "u": u, "eps": eps, "S": s}
    for bits in itertools.product((0, 1), repeat=r):
        x = sum(b * prime ** i for i, b in enumerate(bits))
        t = zero((n, n))
        for gi, g in enumerate(elements):
            t[index[g_scale(x, g)], gi] = Fraction(1)
        tensors[t_box_name(bits)] = t
    return Model(sig, n, tensors)


# -- wreath bar construction -------------------------------------------------

def wreath_signature(base_sig, params=("n",)):
    added = {"P": (1, 1), "u": (1, 0), "eps": (0, 1), "m": (1, 2),
             "c": (2, 0)}
    gens = dict(base_sig.generators)
    for name, arity in added.items():
        if name in gens:
            raise ModelError("wreath construction reserves generator name %r"
                             % name)
        gens[name] = arity
    return Signature(gens, tuple(params) + tuple(base_sig.params))


def wreath_bar_model(base):
    """Pointed extension of a base model by a basepoint e_0: dimension
    dim+1, base tensors shifted off the basepoint, and the added generators
    supported on it."""
    d = base.dim
    n = d + 1
    sig = wreath_signature(base.sig)

    def fill(shape):
        arr = np.empty(shape, dtype=object)
        arr.reshape(-1)[:] = [Fraction(0)] * arr.size
        return arr

    tensors = {}
    for name, arr in base.tensors.items():
        k = arr.ndim
        out = fill((n,) * k)
        for idx in itertools.product(range(d), repeat=k):
            out[tuple(i + 1 for i in idx)] = arr[idx]
        tensors[name] = out
    pmat = fill((n, n))
    pmat[0, 0] = Fraction(1)
    tensors["P"] = pmat
    u = fill((n,))
    u[0] = Fraction(1)
    tensors["u"] = u
    eps = fill((n,))
    eps[0] = Fraction(1)
    tensors["eps"] = eps
    m = fill((n, n, n))
    for k in range(n):
        m[k, 0, k] = Fraction(1)
    tensors["m"] = m
    c = fill((n, n))
    c[0, 0] = Fraction(1)
    tensors["c"] = c
    return Model(sig, n, tensors)


# ---------------------------------------------------------------------------
# serialization: {"dim": d, "tensors": {name: ["num/den", ...]}} row-major

def save_model(model, path):
    payload = {"dim": model.dim, "tensors": {}}
    for name, arr in sorted(model.tensors.items()):
        payload["tensors"][name] = [str(x) for x in arr.reshape(-1)]
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=1, sort_keys=True)
        fh.write("\n")


def load_model(sig, source):
    if isinstance(source, str):
        with open(source) as fh:
            payload = json.load(fh)
    else:
        payload = source
    dim = int(payload["dim"])
    tensors = {}
    for name, flat in payload["tensors"].items():
        p, q = sig.arity(name)
        shape = (dim,) * (p + q)
        tensors[name] = _as_fraction_array([Fraction(x) for x in flat], shape)
    return Model(sig, dim, tensors)


# ---------------------------------------------------------------------------
# combinators

def direct_sum(m1, m2):
    if m1.sig != m2.sig:
        raise ModelError("direct sum needs a common signature")
    d1, d2 = m1.dim, m2.dim
    n = d1 + d2
    tensors = {}
    for name, a1 in m1.tensors.items():
        a2 = m2.tensors[name]
        k = a1.ndim
        out = np.empty((n,) * k, dtype=object)
        out.reshape(-1)[:] = [Fraction(0)] * out.size
        for idx in itertools.product(range(d1), repeat=k):
            out[idx] = a1[idx]
        for idx in itertools.product(range(d2), repeat=k):
            out[tuple(i + d1 for i in idx)] = a2[idx]
        tensors[name] = out
    return Model(m1.sig, n, tensors)


def tensor_product(m1, m2):
    if m1.sig != m2.sig:
        raise ModelError("tensor product needs a common signature")
    d1, d2 = m1.dim, m2.dim
    n = d1 * d2
    tensors = {}
    for name, a1 in m1.tensors.items():
        a2 = m2.tensors[name]
        k = a1.ndim
        if k == 0:
            tensors[name] = a1 * a2
            continue
        big = np.multiply.outer(a1, a2)
        perm = [x for pair in zip(range(k), range(k, 2 * k)) for x in pair]
        big = np.transpose(big, perm).reshape((n,) * k)
        tensors[name] = big
    return Model(m1.sig, n, tensors)


def check_relations(model, relations, param_values=None):
    """Realize both sides of each (label, lhs, rhs) relation; returns labels
    whose sides disagree."""
    bad = []
    for label, lhs, rhs in relations:
        a = realize_combo(model, LinCombo.wrap(lhs), param_values)
        b = realize_combo(model, LinCombo.wrap(rhs), param_values)
        if a.shape != b.shape or any(x != y for x, y in
                                     zip(a.reshape(-1), b.reshape(-1))):
            bad.append(label)
    return bad
