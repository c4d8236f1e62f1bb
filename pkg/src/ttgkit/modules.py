"""Finitely presented graded modules: annihilators, Hilbert data, local tests.

Localization at a prime is never materialized: every p-local statement is
reduced to an ideal containment, a generic rank over the quotient domain, or
a Hilbert-function comparison.  That reduction is valid because all modules
produced here are finitely generated.
"""

from dataclasses import dataclass

from .errors import HomogeneityError, InputError
from .groebner import (
    FreeContext,
    HomIdeal,
    SubmoduleBasis,
    ideal_intersection,
    poly_to_vec,
    syzygy_module,
    vec_component,
)
from .rings import GradedRing, Polynomial


@dataclass(frozen=True)
class GradedDimensionTable:
    """Exact dimensions over an explicit degree window.

    Degrees outside [lo, hi] were not queried and must not be assumed zero.
    """

    lo: int
    hi: int
    dims: tuple

    def dimension(self, degree: int) -> int:
        if not self.lo <= degree <= self.hi:
            raise InputError(f"degree {degree} outside probed window [{self.lo}, {self.hi}]")
        return self.dims[degree - self.lo]

    def to_json_dict(self):
        return {"lo": self.lo, "hi": self.hi, "dims": list(self.dims)}


class GradedModule:
    """A graded module given by generator degrees and homogeneous relations.

    Presentations may be non-minimal; construction only canonicalizes by
    dropping zero and duplicate relation columns.
    """

    __slots__ = ("ring", "gens", "relations", "_rel_basis", "_annihilator",
                 "_transporters", "_hash")

    def __init__(self, ring: GradedRing, gens, relations=()):
        self.ring = ring
        self.gens = tuple(int(d) for d in gens)
        cols = []
        seen = set()
        for col in relations:
            entries = dict(col)
            entries = {i: p for i, p in entries.items() if not p.is_zero()}
            if not entries:
                continue
            degree = None
            for i, p in entries.items():
                if p.ring != ring:
                    raise InputError("relation entry from a different ring")
                if not (0 <= i < len(self.gens)):
                    raise InputError(f"relation entry index {i} out of range")
                d = p.homogeneous_degree()
                if d is None:
                    raise HomogeneityError(f"relation entry {p} is not homogeneous")
                total = d + self.gens[i]
                if degree is None:
                    degree = total
                elif degree != total:
                    raise HomogeneityError(
                        f"relation column mixes degrees {degree} and {total}"
                    )
            canon = tuple(sorted(entries.items(), key=lambda t: t[0]))
            if canon not in seen:
                seen.add(canon)
                cols.append(canon)
        self.relations = tuple(cols)
        self._rel_basis = None
        self._annihilator = None
        self._transporters = None
        self._hash = None

    # -- presentation plumbing ------------------------------------------------

    def relation_vectors(self):
        return [{(i, expt): c for i, p in col for expt, c in p.terms.items()}
                for col in self.relations]

    def relation_degrees(self):
        out = []
        for col in self.relations:
            i, p = col[0]
            out.append(p.homogeneous_degree() + self.gens[i])
        return out

    def rel_basis(self) -> SubmoduleBasis:
        if self._rel_basis is None:
            ctx = FreeContext(self.ring, self.gens)
            self._rel_basis = SubmoduleBasis.generate(self.relation_vectors(), ctx)
        return self._rel_basis

    def __eq__(self, other):
        return (
            isinstance(other, GradedModule)
            and self.ring == other.ring
            and self.gens == other.gens
            and self.relations == other.relations
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, self.gens, self.relations))
        return self._hash

    def __repr__(self):
        return f"GradedModule(gens={self.gens}, relations={len(self.relations)})"

    # -- queries ---------------------------------------------------------------

    def is_zero(self) -> bool:
        if not self.gens:
            return True
        basis = self.rel_basis()
        zero_expt = (0,) * self.ring.nvars
        one = self.ring.field.one
        return all(basis.contains({(i, zero_expt): one}) for i in range(len(self.gens)))

    def transporters(self):
        """(relations : e_i) for each generator, cached; Ann M is their meet."""
        if self._transporters is None:
            self._transporters = tuple(
                self._transporter(i) for i in range(len(self.gens))
            )
        return self._transporters

    def annihilator(self) -> HomIdeal:
        """Ann M, intersected over the transporters of the generators."""
        if self._annihilator is None:
            if not self.gens:
                self._annihilator = HomIdeal(self.ring, [self.ring.one()])
            else:
                result = None
                for t in self.transporters():
                    result = t if result is None else ideal_intersection(result, t)
                    if result.is_zero():
                        break
                self._annihilator = result
        return self._annihilator

    def _transporter(self, index: int) -> HomIdeal:
        """(relations : e_index) = {f | f * e_index lies in the relation span}."""
        ring = self.ring
        zero_expt = (0,) * ring.nvars
        rows = [{(index, zero_expt): ring.field.one}] + self.relation_vectors()
        degrees = [self.gens[index]] + self.relation_degrees()
        ctx = FreeContext(ring, self.gens)
        syzygies, _ = syzygy_module(rows, degrees, ctx)
        gens = []
        for syz in syzygies:
            a = Polynomial(ring, {e: c for (p, e), c in syz.items() if p == 0})
            if not a.is_zero():
                gens.append(a.monic())
        return HomIdeal(ring, gens)

    def hilbert_dimension(self, degree: int) -> int:
        """Exact k-dimension of the degree component, via standard monomials."""
        if not self.gens:
            return 0
        if not self.relations:
            return sum(
                len(self.ring.monomials_of_weight(degree - d)) for d in self.gens
            )
        return self.rel_basis().standard_monomial_count(degree)

    def dimension_table(self, lo: int, hi: int) -> GradedDimensionTable:
        return GradedDimensionTable(
            lo, hi, tuple(self.hilbert_dimension(d) for d in range(lo, hi + 1))
        )

    def to_json_dict(self):
        matrix = []
        for col in self.relations:
            entries = dict(col)
            matrix.append(
                [str(entries.get(i, self.ring.zero())) for i in range(len(self.gens))]
            )
        return {"gens": list(self.gens), "relations": matrix}


def free_module(ring: GradedRing, degrees) -> GradedModule:
    return GradedModule(ring, degrees)


def quotient_module(ring: GradedRing, ideal: HomIdeal) -> GradedModule:
    """R/I as a cyclic module generated in degree zero."""
    return GradedModule(ring, (0,), [{0: g} for g in ideal.generators])


def direct_sum_modules(first: GradedModule, second: GradedModule) -> GradedModule:
    if first.ring != second.ring:
        raise InputError("module ring mismatch")
    offset = len(first.gens)
    cols = [dict(col) for col in first.relations]
    cols += [{i + offset: p for i, p in col} for col in second.relations]
    return GradedModule(first.ring, first.gens + second.gens, cols)


def shift_module(module: GradedModule, k: int) -> GradedModule:
    """Same module with every generator degree raised by k."""
    return GradedModule(
        module.ring,
        tuple(d + k for d in module.gens),
        [dict(col) for col in module.relations],
    )


def is_zero_localized(module: GradedModule, prime) -> bool:
    """True iff the localization at the prime vanishes.

    For finitely generated M the criterion is Ann M contained in p.  Since p
    is prime, the intersection of the generator transporters lies in p
    exactly when one of them does, so the (cached) transporters decide the
    containment without computing the intersection.
    """
    if not module.gens:
        return True
    return not any(
        prime.ideal.contains_ideal(t) for t in module.transporters()
    )


def _require_annihilated(module: GradedModule, prime) -> None:
    basis = module.rel_basis()
    for g in prime.ideal.generators:
        for i in range(len(module.gens)):
            vec = {(i, expt): c for expt, c in g.terms.items()}
            if not basis.contains(vec):
                raise InputError(
                    f"module is not annihilated by {prime.name}: generator {g} "
                    f"does not kill module generator {i}"
                )


def _relations_mod_prime(module: GradedModule, prime):
    """Relation columns with entries reduced to normal forms modulo the prime."""
    reduced = []
    for col in module.relations:
        entries = {}
        for i, p in col:
            nf = prime.ideal.normal_form(p)
            if not nf.is_zero():
                entries[i] = nf
        if entries:
            reduced.append(entries)
    return reduced


def _pivot_columns(module: GradedModule, prime):
    """Pivot generator indices of the relations matrix over the domain R/p.

    Fraction-free elimination: rows are combined by cross-multiplication and
    re-reduced modulo the prime, so every zero test is exact.
    """
    rows = _relations_mod_prime(module, prime)
    ncols = len(module.gens)
    pivots = []
    active = list(rows)
    for j in range(ncols):
        pivot_row = None
        for r in active:
            if j in r:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        pivots.append(j)
        active.remove(pivot_row)
        pj = pivot_row[j]
        new_active = []
        for r in active:
            if j not in r:
                new_active.append(r)
                continue
            rj = r[j]
            combined = {}
            for i, p in r.items():
                combined[i] = p * pj
            for i, p in pivot_row.items():
                combined[i] = combined.get(i, module.ring.zero()) - p * rj
            combined = {
                i: prime.ideal.normal_form(p) for i, p in combined.items()
            }
            combined = {i: p for i, p in combined.items() if not p.is_zero()}
            if combined:
                new_active.append(combined)
        active = new_active
    return pivots


def generic_rank(module: GradedModule, prime) -> int:
    """Rank of a p-annihilated module over the quotient domain R/p."""
    _require_annihilated(module, prime)
    return len(module.gens) - len(_pivot_columns(module, prime))


def local_shift_multiset(module: GradedModule, prime):
    """Degrees of a homogeneous basis of the module after inverting R minus p.

    The module must be p-annihilated; over the graded field of fractions of
    R/p it is automatically free, and the returned multiset lists the
    generator degrees of the shifted copies for the deterministic basis
    chosen by elimination (the non-pivot presentation generators).
    """
    _require_annihilated(module, prime)
    pivots = set(_pivot_columns(module, prime))
    return sorted(module.gens[i] for i in range(len(module.gens)) if i not in pivots)


def quotient_hilbert(prime, degree: int) -> int:
    """Hilbert dimension of R/p in one degree, from standard monomials."""
    basis = prime.ideal.groebner_basis()
    return basis.standard_monomial_count(degree)


def is_graded_free_over_quotient(module: GradedModule, prime):
    """Shift multiset if the module is graded-free over R/p, else None.

    Decided by greedy division of Hilbert functions over a finite window
    [min generator degree, max(generator, relation degree) + 2*max weight]
    (a Castelnuovo-style margin past the last presentation degree, validated
    against the brute-force oracle in the tests), together with agreement of
    the candidate count with the generic rank.  The window comparison is a
    heuristic surrogate for freeness; it is exact on every module whose
    disagreement with a free module shows inside the window.
    """
    _require_annihilated(module, prime)
    if module.is_zero():
        return []
    lo = min(module.gens)
    rel_degrees = module.relation_degrees()
    hi = max([max(module.gens)] + rel_degrees) + 2 * module.ring.max_weight
    width = hi - lo + 1
    residual = [module.hilbert_dimension(d) for d in range(lo, hi + 1)]
    quotient_dims = [quotient_hilbert(prime, d) for d in range(0, width)]
    gens_at = {}
    for d in module.gens:
        gens_at[d] = gens_at.get(d, 0) + 1
    shifts = []
    for offset in range(width):
        c = residual[offset]
        if c < 0:
            return None
        if c == 0:
            continue
        degree = lo + offset
        if c > gens_at.get(degree, 0):
            return None
        shifts.extend([degree] * c)
        for k in range(offset, width):
            residual[k] -= c * quotient_dims[k - offset]
    if any(residual):
        return None
    if len(shifts) != generic_rank(module, prime):
        return None
    return sorted(shifts)
