"""Perfect complexes over the graded ring viewed as a formal dg-algebra.

A complex is one graded free module with a square-zero degree-+1
differential; the ring's internal grading and the suspension merge into a
single total grading because the differential of the algebra itself is zero.

Conventions, fixed once:
  * matrices are row-per-source: rows[i][j] is the coefficient of target
    generator j in the image of source generator i;
  * shift(X, k) lowers generator degrees by k and scales the differential
    by (-1)^k;
  * cone(u: X -> Y) is shift(X, 1) ++ Y with differential blocks
    [[-D_X, u], [0, D_Y]] in row-per-source form.
Under these choices the explicit null homotopy of a central action on its
own cone satisfies D*H + H*D = -G exactly; see action_null_homotopy.
"""

import random
from functools import lru_cache

from .errors import HomogeneityError, InputError
from .groebner import FreeContext, syzygy_module
from .modules import GradedDimensionTable, GradedModule
from .rings import GradedRing, Polynomial


def _canon_rows(ring, n, entries):
    """Normalize {(i, j): poly} into a hashable sparse row tuple."""
    rows = [dict() for _ in range(n)]
    for (i, j), p in entries.items():
        if p.is_zero():
            continue
        if not (0 <= i < n and 0 <= j < n):
            raise InputError(f"differential entry ({i}, {j}) out of range")
        if p.ring != ring:
            raise InputError("differential entry from a different ring")
        rows[i][j] = p
    return tuple(tuple(sorted(r.items())) for r in rows)


class PerfectComplex:
    """A semifree dg-module: graded free module plus square-zero differential."""

    __slots__ = ("ring", "degrees", "names", "rows", "_hash")

    def __init__(self, ring: GradedRing, degrees, entries=None, names=None):
        self.ring = ring
        self.degrees = tuple(int(d) for d in degrees)
        n = len(self.degrees)
        if names is None:
            names = tuple(f"g{i}" for i in range(n))
        self.names = tuple(names)
        if len(self.names) != n or len(set(self.names)) != n:
            raise InputError("generator names must be distinct and match degrees")
        self.rows = _canon_rows(ring, n, entries or {})
        self._hash = None
        self._validate()

    def _validate(self):
        for i, row in enumerate(self.rows):
            for j, p in row:
                expected = self.degrees[i] - self.degrees[j] + 1
                d = p.homogeneous_degree()
                if d is None or d != expected:
                    raise HomogeneityError(
                        f"differential entry {self.names[i]} -> {self.names[j]} = {p} "
                        f"must be homogeneous of degree {expected}"
                    )
        square = _rows_compose(self.rows, self.rows, self.ring)
        for i, row in enumerate(square):
            for j, p in row.items():
                if not p.is_zero():
                    raise InputError(
                        f"differential does not square to zero at "
                        f"({self.names[i]}, {self.names[j]}): {p}"
                    )

    def entry(self, i: int, j: int) -> Polynomial:
        for k, p in self.rows[i]:
            if k == j:
                return p
        return self.ring.zero()

    def row_vector(self, i: int):
        """d(e_i) as a sparse free-module vector."""
        vec = {}
        for j, p in self.rows[i]:
            for expt, c in p.terms.items():
                vec[(j, expt)] = c
        return vec

    def __len__(self):
        return len(self.degrees)

    def __eq__(self, other):
        return (
            isinstance(other, PerfectComplex)
            and self.ring == other.ring
            and self.degrees == other.degrees
            and self.rows == other.rows
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, self.degrees, self.rows))
        return self._hash

    def __repr__(self):
        return f"PerfectComplex(degrees={self.degrees})"

    def probe_window(self):
        """Default degree window for Hilbert-level displays and checks."""
        margin = 2 * self.ring.max_weight
        lo = min(self.degrees, default=0) - margin
        hi = max(self.degrees, default=0) + margin
        return lo, hi

    def to_json_dict(self):
        entries = []
        for i, row in enumerate(self.rows):
            for j, p in row:
                entries.append({"from": self.names[i], "to": self.names[j], "coef": str(p)})
        entries.sort(key=lambda e: (e["from"], e["to"]))
        return {
            "gens": [{"name": n, "degree": d} for n, d in zip(self.names, self.degrees)],
            "d": entries,
        }


def validate(complex_: PerfectComplex) -> None:
    """Re-run the construction checks (homogeneity and d^2 = 0)."""
    complex_._validate()


def _rows_compose(first, second, ring):
    """Apply `first` then `second`; returns dense dict-of-dicts."""
    out = [dict() for _ in range(len(first))]
    for i, row in enumerate(first):
        for j, p in row:
            for k, q in second[j]:
                prev = out[i].get(k)
                pq = p * q
                out[i][k] = pq if prev is None else prev + pq
    return out


def unit_complex(ring: GradedRing) -> PerfectComplex:
    return PerfectComplex(ring, (0,), {}, names=("e",))


def shift(complex_: PerfectComplex, k: int) -> PerfectComplex:
    if k == 0:
        return complex_
    sign = -1 if k % 2 else 1
    entries = {}
    for i, row in enumerate(complex_.rows):
        for j, p in row:
            entries[(i, j)] = p.scale(sign)
    return PerfectComplex(
        complex_.ring,
        tuple(d - k for d in complex_.degrees),
        entries,
        names=complex_.names,
    )


def direct_sum(first: PerfectComplex, second: PerfectComplex) -> PerfectComplex:
    if first.ring != second.ring:
        raise InputError("complex ring mismatch")
    n = len(first)
    entries = {}
    for i, row in enumerate(first.rows):
        for j, p in row:
            entries[(i, j)] = p
    for i, row in enumerate(second.rows):
        for j, p in row:
            entries[(i + n, j + n)] = p
    names = tuple(f"a.{nm}" for nm in first.names) + tuple(f"b.{nm}" for nm in second.names)
    return PerfectComplex(first.ring, first.degrees + second.degrees, entries, names=names)


class ChainMap:
    """A degree-zero map of complexes commuting with the differentials."""

    __slots__ = ("source", "target", "rows")

    def __init__(self, source: PerfectComplex, target: PerfectComplex, entries):
        if source.ring != target.ring:
            raise InputError("chain map ring mismatch")
        self.source = source
        self.target = target
        rows = [dict() for _ in range(len(source))]
        for (i, j), p in entries.items():
            if p.is_zero():
                continue
            expected = source.degrees[i] - target.degrees[j]
            d = p.homogeneous_degree()
            if d is None or d != expected:
                raise HomogeneityError(
                    f"chain map entry ({i}, {j}) = {p} must be homogeneous "
                    f"of degree {expected}"
                )
            rows[i][j] = p
        self.rows = tuple(tuple(sorted(r.items())) for r in rows)
        self._check_commutes()

    def _check_commutes(self):
        ring = self.source.ring
        left = _rows_compose(self.rows, self.target.rows, ring)
        right = _rows_compose(self.source.rows, self.rows, ring)
        for i in range(len(self.source)):
            keys = set(left[i]) | set(right[i])
            for k in keys:
                a = left[i].get(k, ring.zero())
                b = right[i].get(k, ring.zero())
                if a != b:
                    raise InputError(
                        f"chain map does not commute with differentials at ({i}, {k})"
                    )


class Homotopy:
    """A degree -1 map; its defining identity is the producing operation's contract."""

    __slots__ = ("source", "target", "rows")

    def __init__(self, source: PerfectComplex, target: PerfectComplex, entries):
        self.source = source
        self.target = target
        rows = [dict() for _ in range(len(source))]
        for (i, j), p in entries.items():
            if p.is_zero():
                continue
            expected = source.degrees[i] - target.degrees[j] - 1
            d = p.homogeneous_degree()
            if d is None or d != expected:
                raise HomogeneityError(
                    f"homotopy entry ({i}, {j}) = {p} must be homogeneous "
                    f"of degree {expected}"
                )
            rows[i][j] = p
        self.rows = tuple(tuple(sorted(r.items())) for r in rows)


def cone(u: ChainMap) -> PerfectComplex:
    """Mapping cone: shift(source, 1) ++ target, blocks [[-D_X, u], [0, D_Y]]."""
    x, y = u.source, u.target
    n = len(x)
    entries = {}
    for i, row in enumerate(x.rows):
        for j, p in row:
            entries[(i, j)] = -p
    for i, row in enumerate(u.rows):
        for j, p in row:
            entries[(i, j + n)] = p
    for i, row in enumerate(y.rows):
        for j, p in row:
            entries[(i + n, j + n)] = p
    degrees = tuple(d - 1 for d in x.degrees) + y.degrees
    names = tuple(f"x.{nm}" for nm in x.names) + tuple(f"y.{nm}" for nm in y.names)
    return PerfectComplex(x.ring, degrees, entries, names=names)


def central_action(f: Polynomial, complex_: PerfectComplex) -> ChainMap:
    """The chain map f . X : shift(X, -|f|) -> X given by the central action."""
    d = f.homogeneous_degree()
    if d is None:
        if f.is_zero():
            return ChainMap(complex_, complex_, {})
        raise HomogeneityError(f"central action of inhomogeneous element {f}")
    source = shift(complex_, -d)
    entries = {(i, i): f for i in range(len(complex_))}
    return ChainMap(source, complex_, entries)


def koszul_object(complex_: PerfectComplex, sequence) -> PerfectComplex:
    """Iterated cone of central actions, left to right."""
    out = complex_
    for f in sequence:
        out = cone(central_action(f, out))
    return out


def tensor(first: PerfectComplex, second: PerfectComplex) -> PerfectComplex:
    """Tensor product with the Koszul sign on the second differential block."""
    if first.ring != second.ring:
        raise InputError("complex ring mismatch")
    nb = len(second)

    def pair(i, j):
        return i * nb + j

    degrees = []
    names = []
    for i, di in enumerate(first.degrees):
        for j, dj in enumerate(second.degrees):
            degrees.append(di + dj)
            names.append(f"{first.names[i]}&{second.names[j]}")
    entries = {}
    for i, row in enumerate(first.rows):
        for j in range(nb):
            for k, p in row:
                entries[(pair(i, j), pair(k, j))] = p
    for i, di in enumerate(first.degrees):
        sign = -1 if di % 2 else 1
        for j, row in enumerate(second.rows):
            for l, q in row:
                key = (pair(i, j), pair(i, l))
                q_signed = q.scale(sign)
                if key in entries:
                    entries[key] = entries[key] + q_signed
                else:
                    entries[key] = q_signed
    return PerfectComplex(first.ring, tuple(degrees), entries, names=tuple(names))


# --- cohomology ---------------------------------------------------------------


@lru_cache(maxsize=1024)
def cohomology(complex_: PerfectComplex) -> GradedModule:
    """Exact presentation of ker D / im D as a graded module.

    Kernel generators come from one syzygy pass over the differential rows;
    a second augmented pass over the kernel generators yields both their
    internal syzygies and the division data expressing each image row in
    terms of them.  No truncation anywhere.
    """
    ring = complex_.ring
    ctx = FreeContext(ring, complex_.degrees)
    rows = [complex_.row_vector(i) for i in range(len(complex_))]
    row_degrees = [d + 1 for d in complex_.degrees]
    kernel_gens, _ = syzygy_module(rows, row_degrees, ctx)
    if not kernel_gens:
        return GradedModule(ring, ())
    kernel_degrees = []
    for vec in kernel_gens:
        (pos, expt), _ = next(iter(vec.items()))
        kernel_degrees.append(ring.weighted_degree(expt) + complex_.degrees[pos])
    kernel_syzygies, lift = syzygy_module(kernel_gens, kernel_degrees, ctx)
    columns = []
    for syz in kernel_syzygies:
        col = {}
        for (alpha, expt), c in syz.items():
            col.setdefault(alpha, {})[expt] = c
        columns.append({alpha: Polynomial(ring, t) for alpha, t in col.items()})
    for i, vec in enumerate(rows):
        if not vec:
            continue
        remainder, coeffs = lift.divide(vec)
        if remainder:
            raise AssertionError("image vector failed to lift into the kernel")
        col = {}
        for (alpha, expt), c in coeffs.items():
            col.setdefault(alpha, {})[expt] = c
        columns.append({alpha: Polynomial(ring, t) for alpha, t in col.items()})
    return GradedModule(ring, tuple(kernel_degrees), columns)


def cohomology_table(complex_: PerfectComplex, lo=None, hi=None) -> GradedDimensionTable:
    window_lo, window_hi = complex_.probe_window()
    lo = window_lo if lo is None else lo
    hi = window_hi if hi is None else hi
    return cohomology(complex_).dimension_table(lo, hi)


def acts_as_zero_on_cohomology(f: Polynomial, complex_: PerfectComplex) -> bool:
    """True iff the central action of f induces zero on every cohomology class."""
    module = cohomology(complex_)
    if f.is_zero() or not module.gens:
        return True
    basis = module.rel_basis()
    for alpha in range(len(module.gens)):
        vec = {(alpha, expt): c for expt, c in f.terms.items()}
        if not basis.contains(vec):
            return False
    return True


def action_null_homotopy(f: Polynomial) -> Homotopy:
    """The explicit homotopy showing f acts as zero on the cone of f on the unit.

    With C = cone(f . 1) on generators (u, v) and G the induced action of f on
    C, the map H sending the shifted v to -u satisfies D*H + H*D = -G as an
    exact matrix identity under this package's sign conventions.
    """
    if f.is_zero():
        raise InputError("null homotopy of the zero action is the zero map on a sum")
    d = f.homogeneous_degree()
    if d is None:
        raise HomogeneityError(f"inhomogeneous element {f}")
    ring = f.ring
    mapping_cone = cone(central_action(f, unit_complex(ring)))
    shifted = shift(mapping_cone, -d)
    minus_one = ring.constant(-1)
    return Homotopy(shifted, mapping_cone, {(1, 0): minus_one})


def homotopy_defect(h: Homotopy, g: ChainMap):
    """Entries of D*H + H*D + G; all zero iff H is a null homotopy of -G."""
    ring = h.source.ring
    left = _rows_compose(h.rows, h.target.rows, ring)
    right = _rows_compose(h.source.rows, h.rows, ring)
    out = []
    for i in range(len(h.source)):
        keys = set(left[i]) | set(right[i]) | {j for j, _ in g.rows[i]}
        g_row = dict(g.rows[i])
        for k in keys:
            total = (
                left[i].get(k, ring.zero())
                + right[i].get(k, ring.zero())
                + g_row.get(k, ring.zero())
            )
            if not total.is_zero():
                out.append((i, k, total))
    return out


def even_vanishing_check(f: Polynomial, window=None) -> bool:
    """H^n(cone(f . 1)) = 0 for every odd n in the probe window."""
    d = f.homogeneous_degree()
    if d is None or f.is_zero():
        raise HomogeneityError("even vanishing requires a nonzero homogeneous element")
    if d % 2 != 0:
        raise InputError("even vanishing requires an element of even degree")
    mapping_cone = cone(central_action(f, unit_complex(f.ring)))
    lo, hi = mapping_cone.probe_window() if window is None else window
    module = cohomology(mapping_cone)
    for n in range(lo, hi + 1):
        if n % 2 != 0 and module.hilbert_dimension(n) != 0:
            return False
    return True


# --- seeded instance generation ----------------------------------------------


def random_homogeneous(ring: GradedRing, rng: random.Random, max_degree=6,
                       monomial_only=False) -> Polynomial:
    """A nonzero homogeneous polynomial of weighted degree <= max_degree."""
    degrees = [d for d in range(2, max_degree + 1, 2) if ring.monomials_of_weight(d)]
    if not degrees:
        degrees = [min(ring.weights)]
    degree = rng.choice(degrees)
    monomials = list(ring.monomials_of_weight(degree))
    if monomial_only:
        return ring.from_terms({rng.choice(monomials): 1})
    count = rng.randint(1, min(3, len(monomials)))
    chosen = rng.sample(monomials, count)
    terms = {}
    for expt in chosen:
        terms[expt] = rng.choice([-2, -1, 1, 1, 2, 3])
    p = ring.from_terms(terms)
    if p.is_zero():
        p = ring.from_terms({monomials[0]: 1})
    return p


def random_perfect_complex(ring: GradedRing, seed: int, max_gens: int = 10,
                           max_degree: int = 6, steps: int = 4,
                           monomial_only: bool = False) -> PerfectComplex:
    """Deterministic-per-seed complex built from cones, shifts, sums, tensors.

    Trivial bounds (max_gens <= 1 or steps <= 0) give the unit complex, the
    base case of the builder.  All outputs pass validation by construction.
    """
    rng = random.Random(seed)
    one = unit_complex(ring)
    if max_gens <= 1 or steps <= 0:
        return one

    def block():
        roll = rng.random()
        if roll < 0.25:
            return one
        if roll < 0.35:
            # contractible: the cone of the identity on the unit
            return cone(central_action(ring.one(), one))
        f = random_homogeneous(ring, rng, max_degree, monomial_only)
        return cone(central_action(f, one))

    current = block()
    for _ in range(steps):
        op = rng.choice(["shift", "sum", "koszul", "koszul", "tensor"])
        if op == "shift":
            current = shift(current, rng.randint(-2, 2))
        elif op == "sum":
            extra = block()
            if len(current) + len(extra) <= max_gens:
                current = direct_sum(current, shift(extra, rng.randint(-1, 1)))
        elif op == "koszul":
            if 2 * len(current) <= max_gens:
                f = random_homogeneous(ring, rng, max_degree, monomial_only)
                current = cone(central_action(f, current))
        else:
            extra = block()
            if len(current) * len(extra) <= max_gens:
                current = tensor(current, extra)
    return current
