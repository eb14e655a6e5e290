"""Saturation of open surfaces and the dimension of their affinisations.

An open surface presented as (proper ambient configuration, boundary) is
saturated exactly when the boundary has no isolated points and no negative
definite connected component.  When it is not, the saturation plan contracts
the negative definite components and drops the isolated points; the
classification of the affinisation dimension is invariant under this, so the
classifier insists on a saturated input.

The affinisation dimension is 2, 1 or 0.  The boundary numbers decide 2
outright; they can never separate 1 from 0, so the 0 verdict requires a
false-fibre certificate for every boundary component, and the 1 verdict a
fibration assertion or enough supplied interior curves to force a second
fibre witness.  Everything else is reported honestly as one-or-zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping, Optional

from .configuration import Configuration
from .errors import DataInconsistencyError, PreconditionError
from .fibres import (
    FalseFibreClaim,
    FibreVerdict,
    classify_fibre_type,
    validate_false_fibre_claims,
)
from .mumford import ContractedConfiguration, contract


@dataclass(frozen=True)
class CompactifiedSurface:
    """An open surface given by a compactification.

    ``ambient`` lists every supplied proper curve; ``boundary`` is the set of
    curve ids removed from the proper surface, and ``isolated_boundary_points``
    counts removed points.  Curves not in the boundary are the supplied
    interior curves.  False-fibre claims may concern boundary components or
    divisors inside the surface.
    """

    ambient: Configuration
    boundary: frozenset[int]
    isolated_boundary_points: int = 0
    false_fibre_claims: tuple[FalseFibreClaim, ...] = ()
    fibration_asserted: bool = False

    def __post_init__(self):
        object.__setattr__(self, "boundary", frozenset(self.boundary))
        object.__setattr__(
            self, "false_fibre_claims", tuple(self.false_fibre_claims)
        )
        for i in self.boundary:
            if not 0 <= i < self.ambient.n:
                raise PreconditionError(f"boundary node {i} does not exist")
        if self.isolated_boundary_points < 0:
            raise PreconditionError("isolated point count cannot be negative")
        improper = [n.name for n in self.ambient.nodes if not n.proper]
        if improper:
            raise PreconditionError(
                f"ambient curves must all be proper; got improper {improper}"
            )

    @property
    def interior_curves(self) -> frozenset[int]:
        return self.ambient.node_ids() - self.boundary

    def boundary_components(self) -> tuple[frozenset[int], ...]:
        return self.ambient.connected_components(self.boundary)


@dataclass(frozen=True)
class SaturationVerdict:
    saturated: bool
    offending_components: tuple[frozenset[int], ...]
    isolated_points: int
    criterion: str = "no-negative-definite-component"


def is_saturated(surface: CompactifiedSurface) -> SaturationVerdict:
    """A surface is saturated iff nothing on the boundary is contractible:
    no isolated points, no negative definite connected component.  An empty
    boundary (a proper surface) is saturated."""
    offending = tuple(
        comp
        for comp in surface.boundary_components()
        if surface.ambient.gram_on(comp).is_negative_definite()
    )
    return SaturationVerdict(
        saturated=not offending and surface.isolated_boundary_points == 0,
        offending_components=offending,
        isolated_points=surface.isolated_boundary_points,
    )


@dataclass(frozen=True)
class SaturationPlan:
    d_minus: tuple[frozenset[int], ...]
    d_plus: tuple[frozenset[int], ...]
    points_to_remove: int
    resulting_boundary_ok: bool


def saturation_plan(surface: CompactifiedSurface) -> SaturationPlan:
    """Contract every negative definite boundary component, keep the rest,
    and forget the isolated boundary points."""
    d_minus = []
    d_plus = []
    for comp in surface.boundary_components():
        if surface.ambient.gram_on(comp).is_negative_definite():
            d_minus.append(comp)
        else:
            d_plus.append(comp)
    plan = SaturationPlan(
        d_minus=tuple(d_minus),
        d_plus=tuple(d_plus),
        points_to_remove=surface.isolated_boundary_points,
        resulting_boundary_ok=False,
    )
    result = apply_plan(surface, plan)
    return SaturationPlan(
        plan.d_minus,
        plan.d_plus,
        plan.points_to_remove,
        resulting_boundary_ok=is_saturated(result).saturated,
    )


def apply_plan(
    surface: CompactifiedSurface, plan: Optional[SaturationPlan] = None
) -> CompactifiedSurface:
    """Carry out a saturation plan, re-indexing curves and claims."""
    if plan is None:
        plan = saturation_plan(surface)
    if not plan.d_minus:
        if surface.isolated_boundary_points == 0:
            return surface
        return CompactifiedSurface(
            ambient=surface.ambient,
            boundary=surface.boundary,
            isolated_boundary_points=0,
            false_fibre_claims=surface.false_fibre_claims,
            fibration_asserted=surface.fibration_asserted,
        )
    contracted: ContractedConfiguration = contract(surface.ambient, plan.d_minus)
    removed = frozenset().union(*plan.d_minus)
    new_id = {old: new for new, old in enumerate(contracted.ambient_ids)}
    claims = []
    for claim in surface.false_fibre_claims:
        if claim.subject & removed:
            raise PreconditionError(
                "false-fibre claim on "
                f"{surface.ambient.names(claim.subject)} overlaps a "
                "contracted component; a fibre-type divisor can never lie in "
                "a negative definite one, so this input is inconsistent"
            )
        claims.append(
            FalseFibreClaim(
                frozenset(new_id[i] for i in claim.subject), claim.certificate
            )
        )
    return CompactifiedSurface(
        ambient=contracted.configuration,
        boundary=frozenset(
            new_id[i] for i in surface.boundary if i not in removed
        ),
        isolated_boundary_points=0,
        false_fibre_claims=tuple(claims),
        fibration_asserted=surface.fibration_asserted,
    )


class AffDim(Enum):
    TWO = "two"
    ONE = "one"
    ZERO = "zero"
    ONE_OR_ZERO = "one-or-zero"


@dataclass(frozen=True)
class AffDimReport:
    verdict: AffDim
    reasons: tuple[tuple[str, str], ...] = field(default_factory=tuple)

    def criteria(self) -> tuple[str, ...]:
        return tuple(tag for tag, _ in self.reasons)


def _split_claims(surface: CompactifiedSurface):
    """Separate claims on boundary components from claims inside the surface,
    rejecting subjects that straddle the boundary."""
    components = set(surface.boundary_components())
    boundary_claims: dict[frozenset[int], FalseFibreClaim] = {}
    interior_claims = []
    for claim in surface.false_fibre_claims:
        if claim.subject in components:
            boundary_claims.setdefault(claim.subject, claim)
        elif claim.subject & surface.boundary:
            raise PreconditionError(
                f"claim subject {surface.ambient.names(claim.subject)} "
                "overlaps the boundary without being one of its connected "
                "components"
            )
        else:
            for i in claim.subject:
                for b in surface.boundary:
                    if surface.ambient.adjacent(i, b):
                        raise PreconditionError(
                            f"claim subject {surface.ambient.names(claim.subject)} "
                            "meets the boundary, so it is not a divisor inside "
                            "the surface"
                        )
            interior_claims.append(claim)
    return boundary_claims, interior_claims


def _inner_nodes(surface: CompactifiedSurface) -> list[int]:
    """Interior curves that do not meet the boundary: the only curves that
    can support a divisor contained in the open surface."""
    inner = []
    for i in sorted(surface.interior_curves):
        if all(not surface.ambient.adjacent(i, b) for b in surface.boundary):
            inner.append(i)
    return inner


def _second_fibre_witness(surface: CompactifiedSurface) -> Optional[str]:
    """Detect, among the supplied curves, two different divisors inside the
    surface that are not negative definite.

    Not-negative-definiteness is inherited by supersets, so two different
    such divisors exist iff some proper subset of the inner curve set fails
    to be negative definite; dropping one curve at a time covers all cases.
    """
    inner = _inner_nodes(surface)
    if len(inner) < 1:
        return None
    for drop in inner:
        rest = [i for i in inner if i != drop]
        if rest and not surface.ambient.gram_on(rest).is_negative_definite():
            names = surface.ambient.names(rest)
            return (
                f"supplied interior curves contain two different divisors "
                f"that are not negative definite (e.g. {names} and all inner "
                "curves); a trivial-affinisation surface allows at most one"
            )
    return None


def affinisation_dimension(surface: CompactifiedSurface) -> AffDimReport:
    """Classify the dimension of the affinisation of a saturated surface.

    Raises when the surface is not saturated: apply the saturation plan
    first (affinisations agree across big open embeddings, so the verdict
    is unchanged).  Interior-based refinements are relative to the supplied
    curves.
    """
    verdict = is_saturated(surface)
    if not verdict.saturated:
        raise PreconditionError(
            "surface is not saturated; apply the saturation plan first "
            "(the classification is invariant under it)"
        )
    if not surface.boundary:
        return AffDimReport(
            AffDim.ZERO,
            (("proper-surface", "empty boundary: only constant functions"),),
        )
    plus, _, _ = surface.ambient.gram_on(surface.boundary).inertia()
    if plus > 0:
        return AffDimReport(
            AffDim.TWO,
            (
                (
                    "not-negative-semidefinite",
                    f"boundary pairing has {plus} positive direction(s)",
                ),
            ),
        )

    components = surface.boundary_components()
    for comp in components:
        report = classify_fibre_type(surface.ambient, comp)
        if report.verdict is not FibreVerdict.FIBRE_TYPE:
            raise DataInconsistencyError(
                f"boundary component {surface.ambient.names(comp)} of a "
                f"saturated, semidefinite boundary classifies as "
                f"{report.verdict.value}; this cannot happen"
            )
    base_reason = (
        "fibre-type-boundary",
        f"every boundary component ({len(components)}) is of fibre type",
    )

    claims_check = validate_false_fibre_claims(
        surface.false_fibre_claims, surface.ambient
    )
    if not claims_check.ok:
        triple = claims_check.disjoint_triple
        assert triple is not None
        raise DataInconsistencyError(
            "three pairwise disjoint false-fibre claims: "
            + ", ".join(
                "+".join(surface.ambient.names(c.subject)) for c in triple
            )
            + "; at most two disjoint false fibres can exist"
        )
    boundary_claims, _ = _split_claims(surface)
    uncovered = [comp for comp in components if comp not in boundary_claims]

    one_reasons: list[tuple[str, str]] = []
    if surface.fibration_asserted:
        one_reasons.append(
            ("fibration-asserted", "the user asserts the boundary supports fibres")
        )
    if len(components) >= 3:
        one_reasons.append(
            (
                "three-disjoint-fibre-type-components",
                "three or more disjoint fibre-type components cannot all be "
                "false fibres",
            )
        )
    witness = _second_fibre_witness(surface)
    if witness is not None:
        one_reasons.append(("second-fibre-type-divisor", witness))

    if not uncovered:
        if one_reasons:
            raise DataInconsistencyError(
                "the boundary is fully certified as false fibres, yet the "
                f"data also witnesses a fibration ({one_reasons[0][0]}); "
                "these verdicts exclude each other"
            )
        certs = ", ".join(
            "+".join(surface.ambient.names(comp))
            + f": {type(boundary_claims[comp].certificate).__name__}"
            for comp in components
        )
        return AffDimReport(
            AffDim.ZERO,
            (base_reason, ("disjoint-false-fibres", certs)),
        )
    if one_reasons:
        return AffDimReport(AffDim.ONE, (base_reason, *one_reasons))
    missing = "; ".join(
        "+".join(surface.ambient.names(comp)) for comp in uncovered
    )
    return AffDimReport(
        AffDim.ONE_OR_ZERO,
        (
            base_reason,
            (
                "missing-certificates",
                f"no false-fibre certificate for: {missing} (relative to "
                "supplied curves; the numbers alone cannot decide)",
            ),
        ),
    )


class SchemeContractibility(Enum):
    SCHEME_CONTRACTIBLE = "scheme-contractible"
    NOT_SCHEME_CONTRACTIBLE = "not-scheme-contractible"
    UNKNOWN = "unknown"


class SchemeSaturationVerdict(Enum):
    SCHEME_SATURATED = "scheme-saturated"
    NOT_SCHEME_SATURATED = "not-scheme-saturated"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class SchemeSaturationReport:
    verdict: SchemeSaturationVerdict
    contractible: tuple[frozenset[int], ...] = ()
    unknown: tuple[frozenset[int], ...] = ()
    note: str = ""


def scheme_saturation_check(
    surface: CompactifiedSurface,
    contractibility_oracle: Mapping[frozenset[int], SchemeContractibility],
) -> SchemeSaturationReport:
    """Decide saturation within the category of schemes.

    Negative definite boundary components can always be contracted to
    algebraic-space points but not necessarily to scheme points, so each
    needs an oracle entry.  A component the oracle marks scheme-contractible
    defeats scheme-saturation; unknown entries (or isolated boundary points,
    whose scheme nature the configuration cannot see) leave the verdict
    unknown.
    """
    neg_def = [
        comp
        for comp in surface.boundary_components()
        if surface.ambient.gram_on(comp).is_negative_definite()
    ]
    missing = [comp for comp in neg_def if comp not in contractibility_oracle]
    if missing:
        raise PreconditionError(
            "contractibility oracle lacks entries for negative definite "
            f"components: {[surface.ambient.names(c) for c in missing]}"
        )
    contractible = tuple(
        comp
        for comp in neg_def
        if contractibility_oracle[comp]
        is SchemeContractibility.SCHEME_CONTRACTIBLE
    )
    unknown = tuple(
        comp
        for comp in neg_def
        if contractibility_oracle[comp] is SchemeContractibility.UNKNOWN
    )
    if contractible:
        return SchemeSaturationReport(
            SchemeSaturationVerdict.NOT_SCHEME_SATURATED,
            contractible=contractible,
        )
    if unknown:
        return SchemeSaturationReport(
            SchemeSaturationVerdict.UNKNOWN,
            unknown=unknown,
            note="some components have undecided scheme contractibility",
        )
    if surface.isolated_boundary_points > 0:
        return SchemeSaturationReport(
            SchemeSaturationVerdict.UNKNOWN,
            note=(
                "isolated boundary points: whether they admit schematic "
                "neighbourhoods is not visible in the intersection data"
            ),
        )
    return SchemeSaturationReport(SchemeSaturationVerdict.SCHEME_SATURATED)
