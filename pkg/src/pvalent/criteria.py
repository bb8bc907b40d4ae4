"""Neighborhood criteria for pairs of truncated p-valent functions.

Two neighborhood families are implemented, distinguished by which image is
compared on the disk.  The derivative-side family (functions suffixed
``_n``) compares the normalised derivative of the blended operator image,
B(f)'/z^{p-m-1}; the value-side family (``_m``) compares the normalised
image B(f)/z^{p-m}.  For each family there is

* a definitional membership test: the boundary supremum of the twisted
  difference e^{i alpha} P_f - e^{i beta} P_g must stay strictly below
  delta,
* a sufficient coefficient criterion: a weighted l1 sum of twisted
  coefficient differences compared (inclusively) against delta minus a
  phase-gap penalty,
* a necessity bound valid when the twisted coefficient differences have
  arguments aligned along k*phi and 0 <= alpha < beta <= pi.

Sum criteria use <=, supremum tests use strict <.  Whenever a check whose
hypotheses were verified numerically fails its guaranteed conclusion, the
verdict is marked as a falsification event and logged loudly; that always
means an implementation or tolerance defect, not new mathematics.
"""

from __future__ import annotations

import cmath
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .circlemax import DEFAULT_GRID, max_modulus_on_circle
from .errors import DomainError, HypothesisViolationError, InadmissibleDeltaError
from .series import (
    MultivalentFunction,
    NeighborhoodParams,
    OperatorParams,
    TruncatedSeries,
    blend_derivative_normalized,
    blend_derivative_weight,
    blend_normalized,
    blend_weight,
    falling_factorial,
    phase_gap_radical,
    wrap_angle,
)

logger = logging.getLogger(__name__)

#: Strict margin applied when validating delta against its lower bound,
#: so that instances sitting exactly on the bound never flap.
ADMISSIBILITY_MARGIN = 1e-12

_FALSIFICATION_NOTE = "falsification: hypotheses verified but the guaranteed conclusion failed"


@dataclass(frozen=True)
class Verdict:
    """Outcome of one criterion or membership check.

    ``margin`` is always ``threshold - lhs``.  ``falsification`` is set only
    when every hypothesis of the underlying statement was verified by the
    same call and the guaranteed conclusion still failed.
    """

    holds: bool
    lhs: float
    threshold: float
    margin: float = field(init=False)
    falsification: bool = False
    notes: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "margin", self.threshold - self.lhs)

    def to_dict(self) -> dict:
        return {
            "holds": bool(self.holds),
            "lhs": float(self.lhs),
            "threshold": float(self.threshold),
            "margin": float(self.margin),
            "falsification": bool(self.falsification),
            "notes": list(self.notes),
        }


@dataclass(frozen=True)
class ArgAlignment:
    """Alignment hypothesis arg(e^{i alpha} a_{k+p} - e^{i beta} b_{k+p}) = k phi.

    ``phi`` is a free input of the hypothesis, never inferred.  Indices with
    exactly zero difference are vacuously aligned (arg is undefined at 0).
    The modulus-form criteria only use ``tolerance``.
    """

    phi: float = 0.0
    tolerance: float = 1e-8

    def __post_init__(self):
        if not math.isfinite(self.phi):
            raise DomainError("phi must be finite")
        if not (math.isfinite(self.tolerance) and self.tolerance >= 0.0):
            raise DomainError("tolerance must be a nonnegative finite number")


@dataclass(frozen=True)
class ImplicationPair:
    """Hypothesis and conclusion verdicts of a sup-to-sup transfer check."""

    hypothesis: Verdict
    conclusion: Verdict

    @property
    def falsification(self) -> bool:
        return self.hypothesis.holds and not self.conclusion.holds


# ---------------------------------------------------------------------------
# thresholds and admissibility bounds
# ---------------------------------------------------------------------------


def delta_lower_bound_n(p: int, m: int, alpha: float, beta: float) -> float:
    """Derivative-side admissibility bound p!/(p-m-1)! sqrt(2[1-cos(alpha-beta)])."""
    _require_orders(p, m)
    return falling_factorial(p, m + 1) * phase_gap_radical(alpha, beta)


def delta_lower_bound_m(p: int, m: int, alpha: float, beta: float) -> float:
    """Value-side admissibility bound p!/(p-m)! sqrt(2[1-cos(alpha-beta)]).

    The value-side family is also published with the derivative-style bound
    (the ``_n`` form above).  This package gates on the weaker bound here and
    flags verdicts whose delta falls between the two; it does not decide
    which reading was intended.
    """
    _require_orders(p, m)
    return falling_factorial(p, m) * phase_gap_radical(alpha, beta)


def threshold_n(delta: float, alpha: float, beta: float, p: int, m: int) -> float:
    """Sum threshold delta - p!/(p-m-1)! sqrt(2[1-cos(alpha-beta)]); may be negative."""
    return delta - delta_lower_bound_n(p, m, alpha, beta)


def threshold_m(delta: float, alpha: float, beta: float, p: int, m: int) -> float:
    """Sum threshold delta - p!/(p-m)! sqrt(2[1-cos(alpha-beta)]); may be negative."""
    return delta - delta_lower_bound_m(p, m, alpha, beta)


def _require_orders(p: int, m: int) -> None:
    if m < 0:
        raise DomainError(f"derivative order m must be >= 0, got {m}")
    if p <= m:
        raise DomainError(f"valence p={p} must exceed derivative order m={m}")


def _require_compatible(f: MultivalentFunction, g: MultivalentFunction) -> None:
    if f.p != g.p or f.n != g.n:
        raise DomainError(
            f"functions must share (p, n); got ({f.p}, {f.n}) and ({g.p}, {g.n})"
        )


def _require_admissible(delta: float, bound: float, label: str) -> None:
    if delta <= bound + ADMISSIBILITY_MARGIN:
        raise InadmissibleDeltaError(
            f"delta={delta!r} must exceed the {label} lower bound {bound!r}"
        )


def _value_side_notes(delta: float, p: int, m: int, alpha: float, beta: float) -> tuple[str, ...]:
    """Flag deltas sitting between the two published value-side bounds."""
    strict = delta_lower_bound_n(p, m, alpha, beta)
    if delta <= strict + ADMISSIBILITY_MARGIN:
        return (
            "delta clears only the weaker published value-side lower bound; "
            f"the stricter derivative-style bound is {strict!r}",
        )
    return ()


# ---------------------------------------------------------------------------
# coefficient sums
# ---------------------------------------------------------------------------


def _twisted_differences(
    f: MultivalentFunction, g: MultivalentFunction, alpha: float, beta: float
) -> list[tuple[int, complex]]:
    """(k, e^{i alpha} a_{k+p} - e^{i beta} b_{k+p}) over the union of supports.

    The shorter coefficient list is implicitly zero-extended.
    """
    ua = cmath.exp(1j * alpha)
    ub = cmath.exp(1j * beta)
    top = max(f.truncation_order, g.truncation_order)
    return [
        (k, ua * f.coefficient(k) - ub * g.coefficient(k)) for k in range(f.n, top + 1)
    ]


def _weighted_sum(diffs, weight) -> float:
    return math.fsum(weight(k) * abs(d) for k, d in diffs)


def sufficient_n(
    f: MultivalentFunction,
    g: MultivalentFunction,
    op: OperatorParams,
    nb: NeighborhoodParams,
) -> Verdict:
    """Derivative-side sufficient criterion.

    lhs = sum_k (k+p-m) W(k) |e^{i alpha} a_{k+p} - e^{i beta} b_{k+p}|,
    compared inclusively against threshold_n.  Holding implies membership in
    the derivative-side neighborhood.
    """
    _require_compatible(f, g)
    op.require_valence(f.p)
    bound = delta_lower_bound_n(f.p, op.m, nb.alpha, nb.beta)
    _require_admissible(nb.delta, bound, "derivative-side")
    diffs = _twisted_differences(f, g, nb.alpha, nb.beta)
    lhs = _weighted_sum(diffs, lambda k: blend_derivative_weight(k, f.p, op))
    thr = nb.delta - bound
    return Verdict(lhs <= thr, lhs, thr)


def sufficient_m(
    f: MultivalentFunction,
    g: MultivalentFunction,
    op: OperatorParams,
    nb: NeighborhoodParams,
) -> Verdict:
    """Value-side sufficient criterion, with weight W(k) and threshold_m."""
    _require_compatible(f, g)
    op.require_valence(f.p)
    bound = delta_lower_bound_m(f.p, op.m, nb.alpha, nb.beta)
    _require_admissible(nb.delta, bound, "value-side")
    notes = _value_side_notes(nb.delta, f.p, op.m, nb.alpha, nb.beta)
    diffs = _twisted_differences(f, g, nb.alpha, nb.beta)
    lhs = _weighted_sum(diffs, lambda k: blend_weight(k, f.p, op))
    thr = nb.delta - bound
    return Verdict(lhs <= thr, lhs, thr, notes=notes)


def _check_modulus_alignment(
    f: MultivalentFunction,
    g: MultivalentFunction,
    nb: NeighborhoodParams,
    align: ArgAlignment,
) -> None:
    """Require arg(a_{k+p}) - arg(b_{k+p}) = beta - alpha wherever both are nonzero."""
    expected = nb.beta - nb.alpha
    top = max(f.truncation_order, g.truncation_order)
    for k in range(f.n, top + 1):
        a = f.coefficient(k)
        b = g.coefficient(k)
        if a == 0 or b == 0:
            continue
        gap = wrap_angle(cmath.phase(a) - cmath.phase(b) - expected)
        if abs(gap) > align.tolerance:
            raise HypothesisViolationError(
                f"argument alignment arg(a)-arg(b)=beta-alpha fails at index k={k}: "
                f"off by {gap!r} rad (tolerance {align.tolerance!r})"
            )


def sufficient_n_modulus(
    f: MultivalentFunction,
    g: MultivalentFunction,
    op: OperatorParams,
    nb: NeighborhoodParams,
    align: ArgAlignment,
) -> Verdict:
    """Derivative-side sufficient criterion in modulus form.

    Under the alignment hypothesis arg(a) - arg(b) = beta - alpha the twisted
    difference satisfies |e^{i alpha} a - e^{i beta} b| = ||a| - |b||, so this
    equals `sufficient_n` exactly.  Misaligned indices are rejected.
    """
    _require_compatible(f, g)
    op.require_valence(f.p)
    bound = delta_lower_bound_n(f.p, op.m, nb.alpha, nb.beta)
    _require_admissible(nb.delta, bound, "derivative-side")
    _check_modulus_alignment(f, g, nb, align)
    top = max(f.truncation_order, g.truncation_order)
    lhs = math.fsum(
        blend_derivative_weight(k, f.p, op)
        * abs(abs(f.coefficient(k)) - abs(g.coefficient(k)))
        for k in range(f.n, top + 1)
    )
    thr = nb.delta - bound
    return Verdict(lhs <= thr, lhs, thr)


def sufficient_m_modulus(
    f: MultivalentFunction,
    g: MultivalentFunction,
    op: OperatorParams,
    nb: NeighborhoodParams,
    align: ArgAlignment,
) -> Verdict:
    """Value-side mirror of `sufficient_n_modulus`."""
    _require_compatible(f, g)
    op.require_valence(f.p)
    bound = delta_lower_bound_m(f.p, op.m, nb.alpha, nb.beta)
    _require_admissible(nb.delta, bound, "value-side")
    notes = _value_side_notes(nb.delta, f.p, op.m, nb.alpha, nb.beta)
    _check_modulus_alignment(f, g, nb, align)
    top = max(f.truncation_order, g.truncation_order)
    lhs = math.fsum(
        blend_weight(k, f.p, op) * abs(abs(f.coefficient(k)) - abs(g.coefficient(k)))
        for k in range(f.n, top + 1)
    )
    thr = nb.delta - bound
    return Verdict(lhs <= thr, lhs, thr, notes=notes)


# ---------------------------------------------------------------------------
# membership (boundary supremum) tests
# ---------------------------------------------------------------------------


def phase_difference(
    sf: TruncatedSeries, sg: TruncatedSeries, alpha: float, beta: float
) -> np.ndarray:
    """Dense coefficients of e^{i alpha} sf - e^{i beta} sg."""
    cf = sf.dense_coefficients()
    cg = sg.dense_coefficients()
    out = np.zeros(max(cf.size, cg.size), dtype=np.complex128)
    out[: cf.size] += cmath.exp(1j * alpha) * cf
    out[: cg.size] -= cmath.exp(1j * beta) * cg
    return out


def membership_n(
    f: MultivalentFunction,
    g: MultivalentFunction,
    op: OperatorParams,
    nb: NeighborhoodParams,
    grid: int = DEFAULT_GRID,
) -> Verdict:
    """Definitional derivative-side membership test.

    lhs is the maximum over |z| = 1 of
    |e^{i alpha} B(f)'(z)/z^{p-m-1} - e^{i beta} B(g)'(z)/z^{p-m-1}|; for
    truncated data this equals the supremum over the open disk.  Holds iff
    lhs < delta (strict).
    """
    _require_compatible(f, g)
    op.require_valence(f.p)
    _require_admissible(
        nb.delta, delta_lower_bound_n(f.p, op.m, nb.alpha, nb.beta), "derivative-side"
    )
    diff = phase_difference(
        blend_derivative_normalized(f, op),
        blend_derivative_normalized(g, op),
        nb.alpha,
        nb.beta,
    )
    lhs, _ = max_modulus_on_circle(diff, grid)
    return Verdict(lhs < nb.delta, lhs, nb.delta)


def membership_m(
    f: MultivalentFunction,
    g: MultivalentFunction,
    op: OperatorParams,
    nb: NeighborhoodParams,
    grid: int = DEFAULT_GRID,
) -> Verdict:
    """Definitional value-side membership test, dividing the images by z^{p-m}."""
    _require_compatible(f, g)
    op.require_valence(f.p)
    _require_admissible(
        nb.delta, delta_lower_bound_m(f.p, op.m, nb.alpha, nb.beta), "value-side"
    )
    notes = _value_side_notes(nb.delta, f.p, op.m, nb.alpha, nb.beta)
    diff = phase_difference(
        blend_normalized(f, op), blend_normalized(g, op), nb.alpha, nb.beta
    )
    lhs, _ = max_modulus_on_circle(diff, grid)
    return Verdict(lhs < nb.delta, lhs, nb.delta, notes=notes)


# ---------------------------------------------------------------------------
# necessity bounds under argument alignment
# ---------------------------------------------------------------------------


def _check_necessity_hypotheses(
    f: MultivalentFunction,
    g: MultivalentFunction,
    op: OperatorParams,
    nb: NeighborhoodParams,
    align: ArgAlignment,
) -> list[tuple[int, complex]]:
    _require_compatible(f, g)
    op.require_valence(f.p)
    if not (0.0 <= nb.alpha < nb.beta <= math.pi):
        raise HypothesisViolationError(
            "necessity bounds require 0 <= alpha < beta <= pi; "
            f"got alpha={nb.alpha!r}, beta={nb.beta!r}"
        )
    diffs = _twisted_differences(f, g, nb.alpha, nb.beta)
    for k, d in diffs:
        if d == 0:
            continue
        gap = wrap_angle(cmath.phase(d) - k * align.phi)
        if abs(gap) > align.tolerance:
            raise HypothesisViolationError(
                f"twisted-difference alignment arg(d_k)=k*phi fails at index k={k}: "
                f"off by {gap!r} rad (tolerance {align.tolerance!r})"
            )
    return diffs


def necessary_n(
    f: MultivalentFunction,
    g: MultivalentFunction,
    op: OperatorParams,
    nb: NeighborhoodParams,
    align: ArgAlignment,
    grid: int = DEFAULT_GRID,
    verify_membership: bool = True,
) -> Verdict:
    """Derivative-side necessity bound.

    For f in the derivative-side neighborhood of g with aligned twisted
    differences and 0 <= alpha < beta <= pi, the weighted sum is guaranteed
    to satisfy lhs <= delta - p!/(p-m-1)! (cos alpha - cos beta).

    Membership is verified numerically (at `grid`) unless
    ``verify_membership=False``, in which case the caller owns that
    hypothesis and a failed conclusion is NOT flagged as a falsification.
    """
    diffs = _check_necessity_hypotheses(f, g, op, nb, align)
    notes: tuple[str, ...] = ()
    if verify_membership:
        inside = membership_n(f, g, op, nb, grid)
        if not inside.holds:
            raise HypothesisViolationError(
                "membership hypothesis fails: boundary supremum "
                f"{inside.lhs!r} is not below delta={nb.delta!r}"
            )
    else:
        _require_admissible(
            nb.delta,
            delta_lower_bound_n(f.p, op.m, nb.alpha, nb.beta),
            "derivative-side",
        )
        notes = ("membership hypothesis assumed, not verified by this call",)
    lhs = _weighted_sum(diffs, lambda k: blend_derivative_weight(k, f.p, op))
    thr = nb.delta - falling_factorial(f.p, op.m + 1) * (
        math.cos(nb.alpha) - math.cos(nb.beta)
    )
    holds = lhs <= thr
    falsification = verify_membership and not holds
    if falsification:
        notes = notes + (_FALSIFICATION_NOTE,)
        logger.error(
            "FALSIFICATION: derivative-side necessity bound failed with verified "
            "hypotheses (lhs=%r, threshold=%r)",
            lhs,
            thr,
        )
    return Verdict(holds, lhs, thr, falsification=falsification, notes=notes)


def necessary_m(
    f: MultivalentFunction,
    g: MultivalentFunction,
    op: OperatorParams,
    nb: NeighborhoodParams,
    align: ArgAlignment,
    grid: int = DEFAULT_GRID,
    verify_membership: bool = True,
) -> Verdict:
    """Value-side necessity bound.

    Same hypotheses as `necessary_n` with value-side membership and weight;
    the guaranteed conclusion is
    lhs <= delta + p!/(p-m-1)! (cos beta - cos alpha).
    """
    diffs = _check_necessity_hypotheses(f, g, op, nb, align)
    notes: tuple[str, ...] = ()
    if verify_membership:
        inside = membership_m(f, g, op, nb, grid)
        notes = inside.notes
        if not inside.holds:
            raise HypothesisViolationError(
                "membership hypothesis fails: boundary supremum "
                f"{inside.lhs!r} is not below delta={nb.delta!r}"
            )
    else:
        _require_admissible(
            nb.delta, delta_lower_bound_m(f.p, op.m, nb.alpha, nb.beta), "value-side"
        )
        notes = ("membership hypothesis assumed, not verified by this call",)
    lhs = _weighted_sum(diffs, lambda k: blend_weight(k, f.p, op))
    thr = nb.delta + falling_factorial(f.p, op.m + 1) * (
        math.cos(nb.beta) - math.cos(nb.alpha)
    )
    holds = lhs <= thr
    falsification = verify_membership and not holds
    if falsification:
        notes = notes + (_FALSIFICATION_NOTE,)
        logger.error(
            "FALSIFICATION: value-side necessity bound failed with verified "
            "hypotheses (lhs=%r, threshold=%r)",
            lhs,
            thr,
        )
    return Verdict(holds, lhs, thr, falsification=falsification, notes=notes)


# ---------------------------------------------------------------------------
# telescoping partner construction
# ---------------------------------------------------------------------------


def telescoping_partner(
    g: MultivalentFunction,
    op: OperatorParams,
    nb: NeighborhoodParams,
    trunc: int,
) -> MultivalentFunction:
    """Construct the partner whose weighted deviation from g telescopes.

    The returned f has coefficients, for k = n .. trunc,

        A_{k+p} = (p-m)^omega (delta - T) (k+p-m)! (n+p-1)
                  / ((1 + lam k/(p-m)) (k+p-m)^{omega+1} (k+p-1)! (k+p)^2 (k+p-1))
                  * e^{-i alpha}  +  e^{i (beta-alpha)} B_{k+p}

    with T the derivative-side admissibility bound, so that each term of the
    derivative-side sufficient sum equals (n+p-1)(delta-T)/((k+p)(k+p-1)) and
    the truncated sum is (n+p-1)(delta-T)[1/(n+p-1) - 1/(trunc+p)].
    """
    op.require_valence(g.p)
    p, n, m = g.p, g.n, op.m
    radical = delta_lower_bound_n(p, m, nb.alpha, nb.beta)
    if nb.delta <= radical + ADMISSIBILITY_MARGIN:
        raise InadmissibleDeltaError(
            f"construction degenerate: delta={nb.delta!r} must exceed {radical!r}"
        )
    trunc = int(trunc)
    if trunc < n:
        raise DomainError(f"truncation order {trunc} must be at least n={n}")
    if g.truncation_order > trunc:
        raise DomainError(
            f"g stores coefficients up to k={g.truncation_order}, beyond trunc={trunc}"
        )
    excess = nb.delta - radical
    phase = cmath.exp(-1j * nb.alpha)
    twist = cmath.exp(1j * (nb.beta - nb.alpha))
    base = p - m
    coeffs = []
    for k in range(n, trunc + 1):
        # exact rational core; the two float multiplies after it round once each
        rational = Fraction(
            base**op.omega * math.factorial(k + p - m) * (n + p - 1),
            (k + p - m) ** (op.omega + 1)
            * math.factorial(k + p - 1)
            * (k + p) ** 2
            * (k + p - 1),
        )
        core = float(rational) * excess / (1.0 + op.lam * k / base)
        coeffs.append(core * phase + twist * g.coefficient(k))
    return MultivalentFunction(p, n, tuple(coeffs))


def partner_weighted_sum(
    p: int, n: int, m: int, delta: float, alpha: float, beta: float, trunc: int
) -> float:
    """Closed form of the partner's derivative-side sufficient sum up to `trunc`."""
    radical = delta_lower_bound_n(p, m, alpha, beta)
    return (n + p - 1) * (delta - radical) * (1.0 / (n + p - 1) - 1.0 / (trunc + p))


# ---------------------------------------------------------------------------
# derivative-side sup bound forcing the value-side sup bound
# ---------------------------------------------------------------------------


def transfer_check(
    f: MultivalentFunction,
    g: MultivalentFunction,
    op: OperatorParams,
    nb: NeighborhoodParams,
    grid: int = DEFAULT_GRID,
) -> ImplicationPair:
    """Check the sup-to-sup transfer between the two families.

    hypothesis: boundary sup of the derivative-side twisted difference
    stays strictly below delta (p+n-m) - p!/(p-m-1)! sqrt(2[1-cos(a-b)]).
    conclusion: boundary sup of the value-side twisted difference stays
    strictly below delta + p!/(p-m)! sqrt(2[1-cos(a-b)]).

    Requires delta > p!/((p+n-m)(p-m-1)!) sqrt(2[1-cos(a-b)]).  Whenever the
    hypothesis holds the conclusion is guaranteed; a violation is marked as a
    falsification event on the conclusion verdict.
    """
    _require_compatible(f, g)
    op.require_valence(f.p)
    p, n, m = f.p, f.n, op.m
    radical_n = delta_lower_bound_n(p, m, nb.alpha, nb.beta)
    _require_admissible(nb.delta, radical_n / (p + n - m), "transfer")

    hyp_thr = nb.delta * (p + n - m) - radical_n
    hyp_diff = phase_difference(
        blend_derivative_normalized(f, op),
        blend_derivative_normalized(g, op),
        nb.alpha,
        nb.beta,
    )
    hyp_lhs, _ = max_modulus_on_circle(hyp_diff, grid)
    hypothesis = Verdict(hyp_lhs < hyp_thr, hyp_lhs, hyp_thr)

    con_thr = nb.delta + delta_lower_bound_m(p, m, nb.alpha, nb.beta)
    con_diff = phase_difference(
        blend_normalized(f, op), blend_normalized(g, op), nb.alpha, nb.beta
    )
    con_lhs, _ = max_modulus_on_circle(con_diff, grid)
    con_holds = con_lhs < con_thr
    falsification = hypothesis.holds and not con_holds
    notes: tuple[str, ...] = (_FALSIFICATION_NOTE,) if falsification else ()
    if falsification:
        logger.error(
            "FALSIFICATION: transfer conclusion failed although the hypothesis "
            "held (hypothesis lhs=%r < %r, conclusion lhs=%r >= %r)",
            hyp_lhs,
            hyp_thr,
            con_lhs,
            con_thr,
        )
    conclusion = Verdict(con_holds, con_lhs, con_thr, falsification=falsification, notes=notes)
    return ImplicationPair(hypothesis, conclusion)
