"""Fibre-type divisors, their kernel divisors, and false-fibre bookkeeping.

A connected, negative semidefinite but not negative definite set of proper
curves numerically looks like a fibre of a fibration ("fibre type").  Such a
set carries a canonical kernel divisor: the primitive effective integral
divisor with full support pairing to zero with every component, unique up to
multiples.  Whether the set actually supports a fibre cannot be decided from
the numbers alone, so "false fibre" status is tracked through explicit
certificates, never inferred.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .configuration import Configuration, Divisor
from .errors import DataInconsistencyError, PreconditionError

SUBSET_CHECK_LIMIT = 16


class FibreVerdict(Enum):
    FIBRE_TYPE = "fibre-type"
    NEGATIVE_DEFINITE = "negative-definite"
    NOT_SEMIDEFINITE = "not-negative-semidefinite"
    DISCONNECTED = "disconnected"


@dataclass(frozen=True)
class FibreTypeReport:
    subject: frozenset[int]
    verdict: FibreVerdict
    kernel: Optional[Divisor] = None


@dataclass(frozen=True)
class UserAsserted:
    """The user vouches that the divisor supports no fibre of a fibration."""


@dataclass(frozen=True)
class NormalBundleNonTorsion:
    """A degree-zero, non-torsion normal bundle rules out supporting a fibre."""


@dataclass(frozen=True)
class GroupLawObstruction:
    """A non-torsion weighted point sum on a cubic rules out the divisor
    classes any fibre through those points would need."""

    reference: str


Certificate = Union[UserAsserted, NormalBundleNonTorsion, GroupLawObstruction]


@dataclass(frozen=True)
class FalseFibreClaim:
    subject: frozenset[int]
    certificate: Certificate

    def __post_init__(self):
        object.__setattr__(self, "subject", frozenset(self.subject))


def classify_fibre_type(
    config: Configuration, subject: Iterable[int]
) -> FibreTypeReport:
    """Decide whether ``subject`` is of fibre type, and compute its kernel.

    The verdict distinguishes the three ways the definition can fail:
    disconnected, negative definite, or not negative semidefinite.
    """
    nodes = sorted(set(subject))
    if not nodes:
        raise PreconditionError("subject must be a nonempty set of curves")
    improper = [i for i in nodes if not config.nodes[i].proper]
    if improper:
        raise PreconditionError(
            f"curves {config.names(improper)} are not proper; fibre type is "
            "defined for proper curves only"
        )
    subject_set = frozenset(nodes)
    if not config.is_connected(nodes):
        return FibreTypeReport(subject_set, FibreVerdict.DISCONNECTED)
    gram = config.gram_on(nodes)
    plus, _, zero = gram.inertia()
    if plus > 0:
        return FibreTypeReport(subject_set, FibreVerdict.NOT_SEMIDEFINITE)
    if zero == 0:
        return FibreTypeReport(subject_set, FibreVerdict.NEGATIVE_DEFINITE)
    basis = gram.kernel_basis()
    if len(basis) != 1:
        raise DataInconsistencyError(
            f"connected semidefinite subject {config.names(nodes)} has a "
            f"{len(basis)}-dimensional kernel; the kernel divisor of a fibre "
            "shape is unique up to multiples, so the input pairing cannot "
            "come from curves on a surface"
        )
    vec = basis[0]
    if any(v <= 0 for v in vec):
        raise DataInconsistencyError(
            f"kernel vector {vec} of {config.names(nodes)} is not strictly "
            "positive; a fibre-shaped pairing forces full support"
        )
    kernel = Divisor(dict(zip(nodes, vec)))
    return FibreTypeReport(subject_set, FibreVerdict.FIBRE_TYPE, kernel)


@dataclass(frozen=True)
class ZariskiViolation:
    kind: str
    subset: tuple[int, ...]


@dataclass(frozen=True)
class ZariskiReport:
    status: str  # "ok" | "violations" | "skipped"
    violations: tuple[ZariskiViolation, ...] = ()
    note: str = ""


def validate_zariski(config: Configuration, subject: Iterable[int]) -> ZariskiReport:
    """Exhaustively check the numerical fibre properties of ``subject``.

    Every nonempty proper sub-support must be negative definite, and the
    kernel must be one-dimensional.  Exhaustive up to 16 curves; larger
    subjects are reported as skipped rather than silently sampled.
    """
    nodes = sorted(set(subject))
    report = classify_fibre_type(config, nodes)
    if report.verdict is not FibreVerdict.FIBRE_TYPE:
        return ZariskiReport(
            status="violations",
            violations=(ZariskiViolation(report.verdict.value, tuple(nodes)),),
            note="subject is not of fibre type",
        )
    if len(nodes) > SUBSET_CHECK_LIMIT:
        return ZariskiReport(
            status="skipped",
            note=f"skipped, n > {SUBSET_CHECK_LIMIT}",
        )
    violations = []
    _, _, zero = config.gram_on(nodes).inertia()
    if zero != 1:
        violations.append(ZariskiViolation("kernel-not-unique", tuple(nodes)))
    for size in range(1, len(nodes)):
        for combo in itertools.combinations(nodes, size):
            if not config.gram_on(combo).is_negative_definite():
                violations.append(
                    ZariskiViolation("proper-subset-not-negative-definite", combo)
                )
    violations.sort(key=lambda v: v.subset)
    if violations:
        return ZariskiReport(status="violations", violations=tuple(violations))
    return ZariskiReport(status="ok")


def _kernel_ratio(
    config: Configuration, divisor: Divisor, label: str
) -> FibreTypeReport:
    """Check that ``divisor`` is a positive multiple of the kernel divisor
    of its own support, and return that support's report."""
    if divisor.is_zero():
        raise PreconditionError(f"{label} must be a nonzero divisor")
    report = classify_fibre_type(config, divisor.support())
    if report.verdict is not FibreVerdict.FIBRE_TYPE:
        raise PreconditionError(
            f"{label} is supported on {config.names(divisor.support())}, "
            f"which is {report.verdict.value}, not fibre type"
        )
    kernel = report.kernel
    assert kernel is not None
    first = min(divisor.support())
    ratio = divisor.coefficient(first) / kernel.coefficient(first)
    if ratio <= 0 or any(
        divisor.coefficient(i) != ratio * kernel.coefficient(i)
        for i in divisor.support()
    ):
        raise PreconditionError(
            f"{label} is not a positive multiple of the kernel divisor of "
            f"its support {config.names(divisor.support())}"
        )
    return report


@dataclass(frozen=True)
class ProportionalityReport:
    proportional: bool
    ratio: Optional[Fraction] = None
    witness: Optional[Divisor] = None


def proportionality(
    config: Configuration,
    f1: Divisor,
    f2: Divisor,
    probes: Sequence[Divisor],
) -> ProportionalityReport:
    """Find the constant c with f1.P = c (f2.P) for every probe divisor P.

    The two inputs must be kernel-divisor multiples of disjoint fibre-type
    supports.  On an actual proper surface such a nonzero c always exists;
    failure against the supplied probes is returned with the witness probe.
    """
    _kernel_ratio(config, f1, "first divisor")
    _kernel_ratio(config, f2, "second divisor")
    if not config.disjoint(f1.support(), f2.support()):
        raise PreconditionError(
            "the two fibre-type supports meet; proportionality applies to "
            "disjoint ones"
        )
    pairs = [
        (config.intersection_number(f1, p), config.intersection_number(f2, p), p)
        for p in probes
    ]
    ratio: Optional[Fraction] = None
    for a, b, probe in pairs:
        if (a == 0) != (b == 0):
            return ProportionalityReport(proportional=False, witness=probe)
        if b != 0 and ratio is None:
            ratio = a / b
    if ratio is None:
        # every probe pairs to zero with both divisors: any constant works
        return ProportionalityReport(proportional=True, ratio=Fraction(1))
    for a, b, probe in pairs:
        if a != ratio * b:
            return ProportionalityReport(proportional=False, witness=probe)
    return ProportionalityReport(proportional=True, ratio=ratio)


@dataclass(frozen=True)
class DisjointPairReport:
    ok: bool
    d2_verdict: FibreVerdict
    violation: Optional[str] = None


def check_disjoint_pair(
    config: Configuration,
    d1: Iterable[int],
    d2: Iterable[int],
    complete_surface: bool = False,
) -> DisjointPairReport:
    """Check that a divisor disjoint from a fibre-type one is itself of
    fibre type, as forced on a proper surface by the index theorem.

    Requires the caller to assert that the configuration lists all relevant
    curves of a proper surface (``complete_surface``); without that, a
    violation could simply mean missing data.
    """
    if not complete_surface:
        raise PreconditionError(
            "check_disjoint_pair needs the complete-surface assertion: the "
            "conclusion uses the global signature of a proper surface"
        )
    s1 = sorted(set(d1))
    s2 = sorted(set(d2))
    r1 = classify_fibre_type(config, s1)
    if r1.verdict is not FibreVerdict.FIBRE_TYPE:
        raise PreconditionError(
            f"first divisor {config.names(s1)} is {r1.verdict.value}, "
            "expected fibre type"
        )
    if not config.disjoint(s1, s2):
        raise PreconditionError("the two divisors meet; they must be disjoint")
    if not config.is_connected(s2):
        raise PreconditionError(f"second divisor {config.names(s2)} is not connected")
    if config.gram_on(s2).is_negative_definite():
        raise PreconditionError(
            f"second divisor {config.names(s2)} is negative definite; the "
            "disjointness constraint says nothing about it"
        )
    r2 = classify_fibre_type(config, s2)
    if r2.verdict is FibreVerdict.FIBRE_TYPE:
        return DisjointPairReport(ok=True, d2_verdict=r2.verdict)
    return DisjointPairReport(
        ok=False,
        d2_verdict=r2.verdict,
        violation=(
            f"divisor {config.names(s2)} is {r2.verdict.value} while disjoint "
            f"from the fibre-type divisor {config.names(s1)}; on a proper "
            "surface the signature (1, rho-1) forbids this, so the input "
            "data is inconsistent"
        ),
    )


@dataclass(frozen=True)
class ClaimsReport:
    ok: bool
    disjoint_triple: Optional[tuple[FalseFibreClaim, FalseFibreClaim, FalseFibreClaim]] = None


def validate_false_fibre_claims(
    claims: Sequence[FalseFibreClaim], config: Configuration
) -> ClaimsReport:
    """Reject any three pairwise disjoint false-fibre claims.

    At most two pairwise disjoint false fibres can coexist on a surface, so
    a disjoint triple proves the input inconsistent.  Claims sharing a
    subject count once.
    """
    unique: dict[frozenset[int], FalseFibreClaim] = {}
    for claim in claims:
        report = classify_fibre_type(config, claim.subject)
        if report.verdict is not FibreVerdict.FIBRE_TYPE:
            raise PreconditionError(
                f"false-fibre claim on {config.names(claim.subject)} is "
                f"{report.verdict.value}; only fibre-type divisors can be "
                "false fibres"
            )
        unique.setdefault(claim.subject, claim)
    distinct = sorted(unique.values(), key=lambda c: sorted(c.subject))
    for a, b, c in itertools.combinations(distinct, 3):
        if (
            config.disjoint(a.subject, b.subject)
            and config.disjoint(a.subject, c.subject)
            and config.disjoint(b.subject, c.subject)
        ):
            return ClaimsReport(ok=False, disjoint_triple=(a, b, c))
    return ClaimsReport(ok=True)


def normal_bundle_certificate(
    config: Configuration, node: int, *, nontorsion: bool
) -> Optional[FalseFibreClaim]:
    """Certify a single smooth curve as a false fibre via its normal bundle.

    The bundle degree is the self-intersection, which must vanish for fibre
    type.  Non-torsion must be asserted (or produced by the group-law
    machinery); a merely torsion or trivial bundle decides nothing, so the
    result is then ``None``.
    """
    if not 0 <= node < config.n:
        raise PreconditionError(f"node {node} is not in the configuration")
    degree = config.gram.entry(node, node)
    if degree != 0:
        raise PreconditionError(
            f"normal bundle of {config.nodes[node].name!r} has degree "
            f"{degree}; it must vanish for fibre type"
        )
    if not nontorsion:
        return None
    return FalseFibreClaim(frozenset({node}), NormalBundleNonTorsion())
