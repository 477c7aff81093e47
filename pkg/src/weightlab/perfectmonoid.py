"""Perfect submonoids of dominant weights: box-truncated closures, the
symbolic classification by component support plus a cocenter subgroup, and
the saturation predicate that separates the two notions of closure.

A submonoid is perfect when it contains every highest weight of every
tensor product of its members.  Such monoids are infinite; all set-level
computation here is truncated to a finite coordinate box, while the
classification side is exact and symbolic.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations_with_replacement, product
from math import lcm

import numpy as np

from . import latticecalc
from .rootdata import RootDatum, LatticeSpec, Weight, build_root_datum, in_lattice, wadd
from .tensor import tensor_decompose


@dataclass(frozen=True)
class Box:
    """Dominant weights with every fundamental coordinate at most ``bound``."""

    bound: int

    def __post_init__(self):
        if self.bound < 1:
            raise ValueError("box bound must be a positive integer")

    def __contains__(self, lam: Weight) -> bool:
        return all(0 <= x <= self.bound for x in lam)

    def region(self, datum: RootDatum) -> list[Weight]:
        return [tuple(w) for w in product(range(self.bound + 1), repeat=datum.rank)]


@dataclass(frozen=True)
class MonoidSpec:
    """Generating data: dominant weights inside the datum's lattice."""

    datum: RootDatum = field(repr=False)
    generators: tuple[Weight, ...]

    def __post_init__(self):
        gens = tuple(self.datum.check_weight(g) for g in self.generators)
        object.__setattr__(self, "generators", gens)
        for g in gens:
            if any(x < 0 for x in g):
                raise ValueError(f"generator {g} is not dominant")
            if not in_lattice(self.datum, g):
                raise ValueError(f"generator {g} is outside the chosen lattice")

    def to_json(self) -> dict:
        return {"type": str(self.datum.ctype),
                "lattice": self.datum.lattice.to_json(),
                "generators": [list(g) for g in self.generators]}

    @staticmethod
    def from_json(obj: dict) -> "MonoidSpec":
        datum = build_root_datum(obj["type"], LatticeSpec.from_json(obj.get("lattice", {})))
        gens = tuple(tuple(int(x) for x in g) for g in obj.get("generators", ()))
        return MonoidSpec(datum, gens)


@dataclass(frozen=True)
class PerfectDescriptor:
    """Symbolic description of a perfect submonoid: the supported factors
    and a subgroup of the cocenter restricted to them."""

    support: frozenset[int]
    subgroup: latticecalc.Subgroup

    def to_json(self) -> dict:
        return {"support": sorted(self.support), "subgroup": self.subgroup.to_json()}


def component_support(spec: MonoidSpec) -> frozenset[int]:
    """1-based indices of the simple factors where some generator is nonzero."""
    datum = spec.datum
    out = set()
    for g in spec.generators:
        for k in range(1, datum.n_factors + 1):
            if any(spec.datum.project_factor(g, k)):
                out.add(k)
    return frozenset(out)


def classify(spec: MonoidSpec) -> PerfectDescriptor:
    """Descriptor of the full (untruncated) perfect closure of the generating
    data: support plus the cocenter subgroup generated by the classes."""
    datum = spec.datum
    support = component_support(spec)
    group = datum.cocenter.restrict(support)
    classes = [datum.cocenter.restrict_element(
        latticecalc.project_to_cocenter(datum.cocenter, g), support)
        for g in spec.generators]
    return PerfectDescriptor(support, latticecalc.Subgroup.generated(group, classes))


def predicted_members(datum: RootDatum, desc: PerfectDescriptor, box: Box) -> set[Weight]:
    """In-box members of the perfect submonoid a descriptor denotes: dominant,
    supported on the descriptor's factors, in the lattice, class in the subgroup."""
    cocenter = datum.cocenter
    support = desc.support
    out = set()
    off_support = [k for k in range(1, datum.n_factors + 1) if k not in support]
    for lam in box.region(datum):
        if any(any(datum.project_factor(lam, k)) for k in off_support):
            continue
        if not in_lattice(datum, lam):
            continue
        cls = cocenter.restrict_element(
            latticecalc.project_to_cocenter(cocenter, lam), support)
        if cls in desc.subgroup:
            out.add(lam)
    return out


class _BoxEnvelope:
    """In-box dominant weights below a given Cartan weight in its coset --
    the superset every tensor summand must land in.  Vectorized over the box
    with exact integer arithmetic (det * C^-1 is an integer matrix)."""

    def __init__(self, datum: RootDatum, box: Box):
        self.datum = datum
        self.box = box
        self.region = box.region(datum)
        self._rows = np.array(self.region, dtype=np.int64)
        frac_inv = datum.inverse_cartan
        det = lcm(*(entry.denominator for row in frac_inv for entry in row))
        self._det = det
        self._adj = np.array(
            [[int(entry * det) for entry in row] for row in frac_inv], dtype=np.int64)
        self._cache: dict[Weight, frozenset[Weight]] = {}

    def below(self, total: Weight) -> frozenset[Weight]:
        cached = self._cache.get(total)
        if cached is None:
            diff = np.asarray(total, dtype=np.int64)[None, :] - self._rows
            coords = diff @ self._adj.T
            mask = (coords >= 0).all(axis=1) & (coords % self._det == 0).all(axis=1)
            cached = frozenset(self.region[i] for i in np.nonzero(mask)[0])
            self._cache[total] = cached
        return cached


def _thread_count() -> int:
    raw = os.environ.get("WEIGHTLAB_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def bounded_perfect_closure(spec: MonoidSpec, box: Box) -> set[Weight]:
    """Least fixed point, inside the box, of adding sums and all tensor
    summands of pairs.  This is the box truncation of the true closure:
    elements of the true closure outside the box are never represented, so
    the result is a lower bound whose quality grows with the bound."""
    datum = spec.datum
    for g in spec.generators:
        if g not in box:
            raise ValueError(f"generator {g} lies outside the box (bound {box.bound})")
    members: set[Weight] = {(0,) * datum.rank, *spec.generators}
    processed: set[tuple[Weight, Weight]] = set()
    envelope = _BoxEnvelope(datum, box)
    threads = _thread_count()

    def absorb(pair, support):
        processed.add(pair)
        members.update(w for w in support if w in box)

    while True:
        before = len(members)
        pairs = sorted(combinations_with_replacement(sorted(members), 2),
                       key=lambda p: (sum(p[0]) + sum(p[1]), p))
        pending = []
        for pair in pairs:
            if pair in processed:
                continue
            if envelope.below(wadd(*pair)) <= members:
                # every summand this pair could produce is already present,
                # and membership only grows: the pair is settled for good
                processed.add(pair)
                continue
            if threads > 1:
                pending.append(pair)
            else:
                absorb(pair, tensor_decompose(datum, *pair).support())
        if pending:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                results = pool.map(
                    lambda p: (p, tensor_decompose(datum, *p).support()), pending)
            for pair, support in results:
                absorb(pair, support)
        if len(members) == before:
            break
    return members


def is_perfect_in_box(datum: RootDatum, members, box: Box) -> bool:
    """Whether a finite set is closed, inside the box, under sums and under
    taking all tensor summands of pairs."""
    members = {datum.check_weight(w) for w in members}
    if (0,) * datum.rank not in members:
        raise ValueError("a perfect submonoid must contain 0")
    for w in members:
        if w not in box:
            raise ValueError(f"member {w} lies outside the box")
    envelope = _BoxEnvelope(datum, box)
    for a, b in combinations_with_replacement(sorted(members), 2):
        total = wadd(a, b)
        if envelope.below(total) <= members:
            continue
        if total in box and total not in members:
            return False
        support = tensor_decompose(datum, a, b).support()
        if any(w in box and w not in members for w in support):
            return False
    return True


@dataclass(frozen=True)
class ClassificationReport:
    """Outcome of comparing a box closure against its symbolic prediction.

    ``missing_from_prediction`` nonempty is a hard failure (the closure must
    always be contained in the prediction); ``unreached_in_box`` nonempty is
    inconclusive, shrinking as the box grows.
    """

    equal: bool
    missing_from_prediction: tuple[Weight, ...]
    unreached_in_box: tuple[Weight, ...]
    descriptor: PerfectDescriptor
    box: Box

    def to_json(self) -> dict:
        return {"equal": self.equal,
                "missing_from_prediction": [list(w) for w in self.missing_from_prediction],
                "unreached_in_box": [list(w) for w in self.unreached_in_box],
                "descriptor": self.descriptor.to_json(),
                "box": self.box.bound}


def verify_classification(spec: MonoidSpec, box: Box) -> ClassificationReport:
    """Run both sides: the bounded closure and the descriptor's prediction."""
    closure = bounded_perfect_closure(spec, box)
    desc = classify(spec)
    predicted = predicted_members(spec.datum, desc, box)
    missing = tuple(sorted(closure - predicted))
    unreached = tuple(sorted(predicted - closure))
    return ClassificationReport(
        equal=not missing and not unreached,
        missing_from_prediction=missing,
        unreached_in_box=unreached,
        descriptor=desc,
        box=box)


def enumerate_perfect(datum: RootDatum, support,
                      max_order: int = 256) -> list[PerfectDescriptor]:
    """All perfect submonoids with the given component support, one
    descriptor per admissible cocenter subgroup (those whose classes the
    chosen lattice actually contains)."""
    support = frozenset(support)
    for k in support:
        if not 1 <= k <= datum.n_factors:
            raise ValueError(f"factor index {k} out of range")
    cocenter = datum.cocenter
    restricted = cocenter.restrict(support)
    lattice_classes = {
        cocenter.restrict_element(h, support)
        for h in datum.lattice_subgroup.members
        if all(x == 0 for x in cocenter.restrict_element(
            h, frozenset(range(1, datum.n_factors + 1)) - support))}
    admissible = latticecalc.Subgroup(restricted, tuple(sorted(lattice_classes)))
    subs = latticecalc.enumerate_subgroups(restricted, max_order)
    return [PerfectDescriptor(support, s) for s in subs if s <= admissible]


def is_saturated_monoid(datum: RootDatum, members, box: Box) -> bool:
    """Divisibility saturation: within the box, n * lam in the set for some
    n > 1 forces lam in the set.  Distinct from root-string saturation."""
    members = {datum.check_weight(w) for w in members}
    for w in members:
        if w not in box:
            raise ValueError(f"member {w} lies outside the box")
    for lam in box.region(datum):
        if not in_lattice(datum, lam) or not any(lam):
            continue
        top = max(lam)
        for n in range(2, box.bound // top + 1):
            scaled = tuple(n * x for x in lam)
            if scaled in members and lam not in members:
                return False
    return True
