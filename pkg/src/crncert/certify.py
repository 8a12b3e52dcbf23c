"""Global-stability certification for mass-action networks.

For a weakly reversible network of deficiency zero, the unique positive
equilibrium in every compatibility class is globally asymptotically stable
provided each boundary face cut out by a semi-locking set W meets the
classes in a set that is empty or discrete.  Both conditions reduce to
exact linear algebra on the reaction span S:

* ``DISCRETE``: the only vector of S vanishing on every W coordinate is
  zero, so a class can meet the face in at most one point.
* ``EMPTY_ALL_CLASSES``: no vector of S is strictly negative on all W
  coordinates, so no positive anchor can reach the face at all.  The
  infeasibility dual is a nonnegative conserved combination supported on
  W, which is reported as the separating witness.

Everything here is exact; no verdict depends on a floating-point tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from . import ratlin
from .network import ReactionNetwork
from .siphons import (
    EnumerationCapError,
    SiphonCatalog,
    SpeciesSet,
    is_semi_locking,
    minimal_semi_locking_sets,
)
from .structure import RationalBasis, StructureReport, stoichiometric_basis, structure_report


class FaceStatus(str, Enum):
    EMPTY_ALL_CLASSES = "EMPTY_ALL_CLASSES"
    DISCRETE = "DISCRETE"
    INCONCLUSIVE = "INCONCLUSIVE"


class OverallStatus(str, Enum):
    GLOBALLY_STABLE = "GLOBALLY_STABLE"
    NOT_CERTIFIED = "NOT_CERTIFIED"


@dataclass(frozen=True)
class FaceVerdict:
    """Outcome for the boundary face of one semi-locking set.

    ``kernel_witness``: nonzero vector of S vanishing on W (face direction).
    ``feasible_witness``: vector of S strictly negative on W (shows some
    class closure reaches the face).
    ``separating_witness``: nonnegative conserved vector supported on W
    (proves no class reaches the face).
    """

    species: SpeciesSet
    status: FaceStatus
    kernel_witness: Optional[tuple[int, ...]] = None
    feasible_witness: Optional[tuple[int, ...]] = None
    separating_witness: Optional[tuple[int, ...]] = None

    def to_json_dict(self, names: tuple[str, ...]) -> dict:
        doc: dict = {
            "W": [names[i] for i in sorted(self.species)],
            "status": self.status.value,
        }
        witness: dict = {}
        if self.kernel_witness is not None:
            witness["kernel"] = list(self.kernel_witness)
        if self.feasible_witness is not None:
            witness["feasible"] = list(self.feasible_witness)
        if self.separating_witness is not None:
            witness["separating"] = list(self.separating_witness)
        if witness:
            doc["witness"] = witness
        return doc


@dataclass(frozen=True)
class Certificate:
    structure: StructureReport
    catalog: SiphonCatalog
    verdicts: tuple[FaceVerdict, ...]
    overall: OverallStatus
    reasons: tuple[str, ...]

    def verdict_for(self, members: Iterable[int]) -> Optional[FaceVerdict]:
        w = frozenset(members)
        for v in self.verdicts:
            if v.species == w:
                return v
        return None

    def to_json_dict(self) -> dict:
        names = self.structure.species_names
        return {
            "structure": self.structure.to_json_dict(),
            "siphons": self.catalog.to_json_list(names),
            "verdicts": [v.to_json_dict(names) for v in self.verdicts],
            "overall": self.overall.value,
            "reasons": list(self.reasons),
        }


def face_kernel_basis(s_basis: RationalBasis, members: Iterable[int]) -> tuple[tuple[int, ...], ...]:
    """Canonical basis of {z in S : z_i = 0 for all i in W}."""
    w = sorted(set(members))
    vectors = s_basis.vectors
    if not vectors:
        return ()
    constraint = [[Fraction(v[i]) for v in vectors] for i in w]
    alphas = ratlin.nullspace(constraint, len(vectors))
    if not alphas:
        return ()
    dim = s_basis.dimension
    zs = []
    for alpha in alphas:
        z = [sum(Fraction(a) * Fraction(v[j]) for a, v in zip(alpha, vectors)) for j in range(dim)]
        zs.append(z)
    return ratlin.canonical_basis(zs)


def check_discrete(
    s_basis: RationalBasis, members: Iterable[int]
) -> tuple[bool, Optional[tuple[int, ...]]]:
    """Decide whether the face of W can meet a class in more than one point.

    Returns ``(True, None)`` when the only vector of S vanishing on W is
    zero, else ``(False, witness)`` with a nonzero such vector.
    """
    kernel = face_kernel_basis(s_basis, members)
    if kernel:
        return False, kernel[0]
    return True, None


def check_empty_all_classes(
    s_basis: RationalBasis, members: Iterable[int]
) -> tuple[bool, Optional[tuple[int, ...]]]:
    """Decide whether any class closure can reach the face of W.

    The face is reachable from a positive anchor iff some s in S is strictly
    negative on every W coordinate; by homogeneity that is the exact linear
    feasibility of ``s_i <= -1`` for i in W over the basis coefficients.
    Returns ``(True, separating_witness)`` when infeasible and
    ``(False, feasible_witness)`` otherwise.
    """
    w = sorted(set(members))
    if not w:
        raise ValueError("species set must be nonempty")
    vectors = s_basis.vectors
    nvar = len(vectors)
    A = [[Fraction(v[i]) for v in vectors] for i in w]
    b = [Fraction(-1)] * len(w)
    if nvar == 0:
        return True, None
    point, farkas = ratlin.solve_le(A, b)
    if point is not None:
        s = [
            sum(Fraction(a) * Fraction(v[j]) for a, v in zip(point, vectors))
            for j in range(s_basis.dimension)
        ]
        return False, ratlin.integerize(s, keep_sign=True)
    assert farkas is not None
    y = [Fraction(0)] * s_basis.dimension
    for row_idx, i in enumerate(w):
        y[i] = farkas[row_idx]
    witness = ratlin.integerize(y, keep_sign=True)
    # The dual must verify exactly: nonnegative, nonzero, orthogonal to S.
    assert any(witness) and all(v >= 0 for v in witness)
    assert all(ratlin.dot(witness, basis_vec) == 0 for basis_vec in vectors)
    return True, witness


def _union_closure(sets: Sequence[SpeciesSet], limit: int) -> list[SpeciesSet]:
    closed: set[SpeciesSet] = set(sets)
    frontier = list(closed)
    while frontier:
        nxt: list[SpeciesSet] = []
        for a in frontier:
            for b in sets:
                u = a | b
                if u not in closed:
                    closed.add(u)
                    nxt.append(u)
        if len(closed) > limit:
            raise EnumerationCapError(
                f"union closure of the minimal semi-locking sets exceeds {limit} faces"
            )
        frontier = nxt
    return sorted(closed, key=lambda w: (len(w), tuple(sorted(w))))


def _face_verdict(s_basis: RationalBasis, w: SpeciesSet) -> FaceVerdict:
    discrete, kernel_witness = check_discrete(s_basis, w)
    if discrete:
        return FaceVerdict(species=w, status=FaceStatus.DISCRETE)
    empty, witness = check_empty_all_classes(s_basis, w)
    if empty:
        return FaceVerdict(
            species=w, status=FaceStatus.EMPTY_ALL_CLASSES, separating_witness=witness
        )
    return FaceVerdict(
        species=w,
        status=FaceStatus.INCONCLUSIVE,
        kernel_witness=kernel_witness,
        feasible_witness=witness,
    )


def certify(net: ReactionNetwork, cap: int = 20, max_faces: int = 4096) -> Certificate:
    """Assemble the global-stability certificate for a network.

    Requires weak reversibility and deficiency zero; each semi-locking set
    in the union closure of the minimal ones then receives a face verdict.
    A face verdict transfers to supersets (both checks only gain
    constraints), so covering every minimal set covers every semi-locking
    set; the closure is evaluated explicitly anyway so the certificate
    lists each derived face with its own witness.  Many pairwise-disjoint
    minimal sets make the closure exponential, hence the ``max_faces`` cap.
    """
    report = structure_report(net)
    catalog = minimal_semi_locking_sets(net, cap=cap)
    reasons: list[str] = []
    if not report.weakly_reversible:
        reasons.append(
            "hypotheses of Deficiency Zero Theorem fail: network is not weakly reversible"
        )
    if report.deficiency != 0:
        reasons.append(
            "hypotheses of Deficiency Zero Theorem fail: "
            f"deficiency is {report.deficiency}, not 0"
        )
    if reasons:
        return Certificate(
            structure=report,
            catalog=catalog,
            verdicts=(),
            overall=OverallStatus.NOT_CERTIFIED,
            reasons=tuple(reasons),
        )

    verdicts = tuple(
        _face_verdict(report.s_basis, w)
        for w in _union_closure(catalog.minimal_sets, max_faces)
    )
    inconclusive = [v for v in verdicts if v.status is FaceStatus.INCONCLUSIVE]
    if inconclusive:
        names = report.species_names
        for v in inconclusive:
            label = ",".join(names[i] for i in sorted(v.species))
            reasons.append(
                f"face {{{label}}} admits a direction inside the reaction span and is "
                "reachable from a positive anchor: neither empty nor provably discrete"
            )
        overall = OverallStatus.NOT_CERTIFIED
    else:
        overall = OverallStatus.GLOBALLY_STABLE
        reasons.append(
            "weakly reversible, deficiency zero, and every semi-locking face is "
            "empty or discrete in each compatibility class"
        )
    return Certificate(
        structure=report,
        catalog=catalog,
        verdicts=verdicts,
        overall=overall,
        reasons=tuple(reasons),
    )


def is_extreme_point(net: ReactionNetwork, y: Sequence[float]) -> bool:
    """Whether y is an extreme point of its own nonnegative compatibility class.

    Extremality is equivalent to the face of the zero coordinates of y
    admitting no nonzero direction inside the reaction span.
    """
    if len(y) != net.num_species:
        raise ValueError("point dimension differs from species count")
    if any(v < 0 for v in y):
        raise ValueError("point must be entrywise nonnegative")
    w = frozenset(i for i, v in enumerate(y) if v == 0)
    discrete, _ = check_discrete(stoichiometric_basis(net), w)
    return discrete


@dataclass(frozen=True)
class BoundaryClassification:
    face: SpeciesSet
    face_is_semi_locking: bool
    is_equilibrium_candidate: bool


def classify_boundary_point(net: ReactionNetwork, y: Sequence[float]) -> BoundaryClassification:
    """Report whether the zero pattern of a boundary point could hold an equilibrium.

    Only semi-locking zero sets can carry boundary equilibria (or boundary
    limit points of interior trajectories), so a non-semi-locking face rules
    the candidate out.
    """
    if len(y) != net.num_species:
        raise ValueError("point dimension differs from species count")
    if any(v < 0 for v in y):
        raise ValueError("point must be entrywise nonnegative")
    w = frozenset(i for i, v in enumerate(y) if v == 0)
    if not w:
        raise ValueError("point is strictly positive, not a boundary point")
    semi = is_semi_locking(net, w)
    return BoundaryClassification(
        face=w, face_is_semi_locking=semi, is_equilibrium_candidate=semi
    )
