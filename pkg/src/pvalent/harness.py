"""Random instance generation, independent oracles and property suites.

Everything here is deterministic in the supplied seeds: instance draws use
`numpy` generators keyed on ``SeedSequence([seed, trial_index])``, so trials
are independent and could be evaluated in any order (or in parallel) without
changing a report.

The oracles are deliberately separate routes from the production code they
check: boundary suprema are re-computed by dense FFT sampling instead of
Horner evaluation plus ternary refinement, and operator weights are
re-computed in exact big-integer rationals instead of floating point.
"""

from __future__ import annotations

import cmath
import math
import time
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import criteria
from .circlemax import DEFAULT_GRID, max_modulus_on_circle
from .errors import DomainError, FalsificationError
from .series import (
    MultivalentFunction,
    NeighborhoodParams,
    OperatorParams,
    TruncatedSeries,
    blend_derivative_normalized,
    blend_derivative_weight,
    blend_weight,
    complex_close,
    exact_blend_derivative_weight,
    exact_blend_weight,
    mth_derivative,
    salagean_blend,
    salagean_iterate,
)

_MASK64 = (1 << 64) - 1

GENERATOR_TARGETS = ("inside_sufficient_n", "inside_sufficient_m", "unconstrained")


@dataclass(frozen=True)
class ToleranceProfile:
    """Single source of truth for the numeric policy of the suites."""

    sup_compare: float = 1e-6
    coeff_abs: float = 1e-10
    coeff_rel: float = 1e-9
    lemma: float = 1e-6
    verdict_rel: float = 1e-12


STANDARD_TOLERANCES = ToleranceProfile()


@dataclass(frozen=True)
class InstanceSpec:
    """Shape of a random instance; same spec (incl. seed) -> identical draws."""

    p: int
    n: int
    m: int
    omega: int
    lam: float
    trunc: int
    coeff_magnitude: float = 1.0
    seed: int = 0

    def __post_init__(self):
        if self.p < 1 or self.n < 1:
            raise DomainError("p and n must be >= 1")
        if not 0 <= self.m < self.p:
            raise DomainError(f"need 0 <= m < p, got m={self.m}, p={self.p}")
        if self.omega < 0:
            raise DomainError("omega must be >= 0")
        if not 0.0 <= self.lam <= 1.0:
            raise DomainError("lam must lie in [0, 1]")
        if self.trunc < self.n:
            raise DomainError(f"trunc={self.trunc} must be >= n={self.n}")
        if not self.coeff_magnitude > 0:
            raise DomainError("coeff_magnitude must be positive")

    @property
    def operator(self) -> OperatorParams:
        return OperatorParams(lam=self.lam, m=self.m, omega=self.omega)

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "m": self.m,
            "omega": self.omega,
            "lam": self.lam,
            "trunc": self.trunc,
            "coeff_magnitude": self.coeff_magnitude,
            "seed": int(self.seed),
        }


def _rng_for(seed: int, *path: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed & _MASK64, *path]))


def _capped_gaussian(rng: np.random.Generator, count: int, cap: float) -> np.ndarray:
    """Complex Gaussian draws with magnitude clipped at `cap`."""
    vals = (rng.standard_normal(count) + 1j * rng.standard_normal(count)) * (0.5 * cap)
    mags = np.abs(vals)
    over = mags > cap
    vals[over] *= cap / mags[over]
    return vals


def _pair_from_twisted(b, twisted, alpha, beta, p, n):
    """Build (f, g) so that e^{i alpha} a_k - e^{i beta} b_k equals twisted[k-n]."""
    ua = cmath.exp(1j * alpha)
    ub = cmath.exp(1j * beta)
    inv = ua.conjugate()  # 1/e^{i alpha} on the unit circle
    a = [inv * (ub * bk + tk) for bk, tk in zip(b, twisted)]
    return MultivalentFunction(p, n, tuple(a)), MultivalentFunction(p, n, tuple(b))


def generate_pair(spec: InstanceSpec, target: str = "unconstrained"):
    """Draw an admissible (f, g, neighborhood-params) triple.

    For the ``inside_sufficient_*`` targets the twisted coefficient
    differences are rescaled so the corresponding sum lands at a uniform
    random fraction in (0, 0.95] of its threshold; delta is always drawn
    above the stricter published admissibility bound with margin >= 0.05.
    """
    if target not in GENERATOR_TARGETS:
        raise DomainError(f"unknown generator target {target!r}")
    rng = _rng_for(spec.seed)
    alpha = float(rng.uniform(-math.pi, math.pi))
    gap = float(rng.uniform(-math.pi, math.pi))
    beta = alpha - gap
    count = spec.trunc - spec.n + 1
    b = _capped_gaussian(rng, count, spec.coeff_magnitude)
    d = _capped_gaussian(rng, count, spec.coeff_magnitude)
    margin = float(rng.uniform(0.05, 2.0))
    fraction = 0.95 * (1.0 - float(rng.random()))  # in (0, 0.95]

    op = spec.operator
    strict_bound = criteria.delta_lower_bound_n(spec.p, spec.m, alpha, beta)
    delta = strict_bound + margin

    if target != "unconstrained":
        if target == "inside_sufficient_n":
            weight = lambda k: blend_derivative_weight(k, spec.p, op)
            radical = strict_bound
        else:
            weight = lambda k: blend_weight(k, spec.p, op)
            radical = criteria.delta_lower_bound_m(spec.p, spec.m, alpha, beta)
        threshold = delta - radical
        if threshold <= 0.0:
            raise DomainError("unsatisfiable target: forced threshold is nonpositive")
        mass = math.fsum(
            weight(k) * abs(d[k - spec.n]) for k in range(spec.n, spec.trunc + 1)
        )
        if mass == 0.0:
            raise DomainError("degenerate draw: all difference coefficients vanish")
        d = d * (fraction * threshold / mass)

    f, g = _pair_from_twisted(b, d, alpha, beta, spec.p, spec.n)
    return f, g, NeighborhoodParams(alpha, beta, delta)


def generate_transfer_pair(spec: InstanceSpec):
    """Draw a triple on which the transfer hypothesis is forced to hold.

    The hypothesis supremum is at most radical + (weighted sum), so scaling
    the weighted sum under fraction*(hypothesis threshold - radical) forces
    it, which requires delta (p+n-m) > 2 * radical; delta is drawn exactly
    there plus a uniform excess.
    """
    rng = _rng_for(spec.seed)
    alpha = float(rng.uniform(-math.pi, math.pi))
    gap = float(rng.uniform(-math.pi, math.pi))
    beta = alpha - gap
    count = spec.trunc - spec.n + 1
    b = _capped_gaussian(rng, count, spec.coeff_magnitude)
    d = _capped_gaussian(rng, count, spec.coeff_magnitude)
    excess = float(rng.uniform(0.02, 2.0))
    fraction = 0.95 * (1.0 - float(rng.random()))

    op = spec.operator
    radical = criteria.delta_lower_bound_n(spec.p, spec.m, alpha, beta)
    reach = spec.p + spec.n - spec.m
    delta = (2.0 * radical + excess) / reach
    mass = math.fsum(
        blend_derivative_weight(k, spec.p, op) * abs(d[k - spec.n])
        for k in range(spec.n, spec.trunc + 1)
    )
    if mass == 0.0:
        raise DomainError("degenerate draw: all difference coefficients vanish")
    d = d * (fraction * excess / mass)

    f, g = _pair_from_twisted(b, d, alpha, beta, spec.p, spec.n)
    return f, g, NeighborhoodParams(alpha, beta, delta)


# ---------------------------------------------------------------------------
# independent boundary-sup oracle
# ---------------------------------------------------------------------------


def sup_oracle(series_diff, grid: int) -> float:
    """Max modulus on the unit circle by brute dense sampling, no refinement.

    Accepts a TruncatedSeries or an ascending dense coefficient array.  The
    samples sit at the grid-th roots of unity, where z^e = z^(e mod grid)
    exactly, so the values are obtained by folding the coefficients mod grid
    and taking one FFT.  Deliberately independent of the production path.
    """
    if grid < 1:
        raise DomainError(f"grid must be >= 1, got {grid}")
    if isinstance(series_diff, TruncatedSeries):
        c = series_diff.dense_coefficients()
    else:
        c = np.asarray(series_diff, dtype=np.complex128)
    if c.size == 0:
        return 0.0
    folded = np.zeros(grid, dtype=np.complex128)
    np.add.at(folded, np.arange(c.size) % grid, c)
    return float(np.abs(np.fft.fft(folded)).max())


# ---------------------------------------------------------------------------
# max-modulus lemma checker
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LemmaWitness:
    """A located max-modulus point together with the ratio z0 w'(z0)/w(z0)."""

    w_coeffs: tuple[complex, ...]
    vanishing_order: int
    r0: float
    z0: complex
    max_modulus: float
    q: complex


def _polyval(coeffs, z: complex) -> complex:
    acc = 0j
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def lemma_witness(
    w_coeffs,
    n_w: int,
    r0: float,
    grid: int = 1 << 16,
    tolerance: float = STANDARD_TOLERANCES.lemma,
) -> LemmaWitness:
    """Locate the max-modulus point of w on |z| = r0 and check the ratio there.

    `w_coeffs` are ascending from z^0; the first `n_w` must vanish exactly
    (w(0) = 0 to order >= n_w >= 1).  At the located maximiser z0 the ratio
    q = z0 w'(z0)/w(z0) must be real with Re q >= n_w, up to `tolerance`;
    a violation raises FalsificationError.
    """
    coeffs = tuple(complex(c) for c in w_coeffs)
    if n_w < 1:
        raise DomainError(f"vanishing order must be >= 1, got {n_w}")
    if not 0.0 < r0 < 1.0:
        raise DomainError(f"r0 must lie in (0, 1), got {r0}")
    if all(c == 0 for c in coeffs):
        raise DomainError("w is identically zero")
    if any(c != 0 for c in coeffs[:n_w]):
        raise DomainError(f"w must vanish to order >= {n_w} at 0")

    # w(r0 e^{it}) = sum c_e r0^e e^{iet}: scale coefficients, reuse unit circle
    scaled = [c * r0**e for e, c in enumerate(coeffs)]
    value, theta = max_modulus_on_circle(np.asarray(scaled), grid)
    z0 = r0 * cmath.exp(1j * theta)
    w0 = _polyval(coeffs, z0)
    if w0 == 0:
        raise DomainError("located maximiser has zero modulus; w vanishes on the circle")
    w1 = _polyval([e * c for e, c in enumerate(coeffs)][1:], z0)
    q = z0 * w1 / w0
    if abs(q.imag) > tolerance or q.real < n_w - tolerance:
        raise FalsificationError(
            f"max-modulus ratio violates the lemma at z0={z0!r}: q={q!r}, "
            f"expected real with Re q >= {n_w} (tolerance {tolerance!r})"
        )
    return LemmaWitness(coeffs, n_w, float(r0), z0, value, q)


# ---------------------------------------------------------------------------
# property suites
# ---------------------------------------------------------------------------


def _rel_close(x: float, y: float, rel: float) -> bool:
    return abs(x - y) <= rel * max(1.0, abs(x), abs(y))


def _complex_list(values) -> list[list[float]]:
    return [[float(v.real), float(v.imag)] for v in values]


def _draw_spec(
    rng: np.random.Generator,
    *,
    p_max: int = 4,
    n_max: int = 3,
    omega_max: int = 3,
    trunc_max: int = 12,
    magnitude: float = 1.0,
) -> InstanceSpec:
    p = int(rng.integers(1, p_max + 1))
    m = int(rng.integers(0, p))
    n = int(rng.integers(1, n_max + 1))
    omega = int(rng.integers(0, omega_max + 1))
    lam = float(rng.uniform(0.0, 1.0))
    trunc = int(rng.integers(n, trunc_max + 1))
    seed = int(rng.integers(0, 2**63))
    return InstanceSpec(
        p=p, n=n, m=m, omega=omega, lam=lam, trunc=trunc,
        coeff_magnitude=magnitude, seed=seed,
    )


def _serialize_instance(spec, f, g, nb) -> dict:
    return {
        "spec": spec.to_dict(),
        "alpha": nb.alpha,
        "beta": nb.beta,
        "delta": nb.delta,
        "f_coeffs": _complex_list(f.coeffs),
        "g_coeffs": _complex_list(g.coeffs),
    }


def _random_function(rng, spec) -> MultivalentFunction:
    count = spec.trunc - spec.n + 1
    return MultivalentFunction(
        spec.p, spec.n, tuple(_capped_gaussian(rng, count, spec.coeff_magnitude))
    )


def _series_equal(s1: TruncatedSeries, s2: TruncatedSeries) -> bool:
    if s1.lead_exp != s2.lead_exp or len(s1.tail) != len(s2.tail):
        return False
    if not complex_close(s1.lead_coeff, s2.lead_coeff):
        return False
    return all(
        e1 == e2 and complex_close(c1, c2) for (e1, c1), (e2, c2) in zip(s1.tail, s2.tail)
    )


def _suite_salagean_first_order(rng) -> dict | None:
    """One normalised-derivative step equals the z (.)'/(p-m) rescaling."""
    spec = _draw_spec(rng)
    fn = _random_function(rng, spec)
    s = mth_derivative(fn, spec.m)
    once = salagean_iterate(s, 1, spec.p, spec.m)
    base = spec.p - spec.m
    manual = TruncatedSeries(
        s.lead_exp, s.lead_coeff, tuple((e, c * e / base) for e, c in s.tail)
    )
    if _series_equal(once, manual):
        return None
    return {"spec": spec.to_dict(), "coeffs": _complex_list(fn.coeffs)}


def _suite_salagean_semigroup(rng) -> dict | None:
    spec = _draw_spec(rng)
    fn = _random_function(rng, spec)
    s = mth_derivative(fn, spec.m)
    o1 = int(rng.integers(0, 7))
    o2 = int(rng.integers(0, 7))
    joint = salagean_iterate(s, o1 + o2, spec.p, spec.m)
    split = salagean_iterate(salagean_iterate(s, o1, spec.p, spec.m), o2, spec.p, spec.m)
    if _series_equal(joint, split):
        return None
    return {"spec": spec.to_dict(), "o1": o1, "o2": o2, "coeffs": _complex_list(fn.coeffs)}


def _suite_blend_linearity(rng) -> dict | None:
    """Blend tails are additive and commute with scalar multiplication."""
    spec = _draw_spec(rng)
    op = spec.operator
    f1 = _random_function(rng, spec)
    f2 = _random_function(rng, spec)
    mu = complex(rng.standard_normal(), rng.standard_normal())
    mixed = MultivalentFunction(
        spec.p, spec.n, tuple(c1 + mu * c2 for c1, c2 in zip(f1.coeffs, f2.coeffs))
    )
    t_mixed = salagean_blend(mixed, op).tail
    t1 = salagean_blend(f1, op).tail
    t2 = salagean_blend(f2, op).tail
    ok = all(
        e == e1 == e2 and complex_close(c, c1 + mu * c2)
        for (e, c), (e1, c1), (e2, c2) in zip(t_mixed, t1, t2)
    )
    if ok:
        return None
    return {"spec": spec.to_dict(), "mu": [mu.real, mu.imag]}


def _suite_blend_derivative_consistency(rng) -> dict | None:
    """Normalised derivative equals the symbolic derivative divided by z^{p-m-1}."""
    spec = _draw_spec(rng)
    op = spec.operator
    fn = _random_function(rng, spec)
    direct = blend_derivative_normalized(fn, op)
    blended = salagean_blend(fn, op)
    shift = spec.p - spec.m - 1
    symbolic = TruncatedSeries(
        blended.lead_exp - 1 - shift,
        blended.lead_coeff * blended.lead_exp,
        tuple((e - 1 - shift, c * e) for e, c in blended.tail),
    )
    if _series_equal(direct, symbolic):
        return None
    return {"spec": spec.to_dict(), "coeffs": _complex_list(fn.coeffs)}


def _suite_weight_exactness(rng) -> dict | None:
    """Floating weights match the exact rational route to 1e-12 relative."""
    p = int(rng.integers(1, 9))
    m = int(rng.integers(0, p))
    omega = int(rng.integers(0, 7))
    lam = float(rng.uniform(0.0, 1.0))
    k = int(rng.integers(1, 65))
    op = OperatorParams(lam=lam, m=m, omega=omega)
    for name, approx, exact in (
        ("value", blend_weight(k, p, op), exact_blend_weight(k, p, op)),
        ("derivative", blend_derivative_weight(k, p, op), exact_blend_derivative_weight(k, p, op)),
    ):
        if not (math.isfinite(approx) and approx > 0.0):
            return {"weight": name, "k": k, "p": p, "m": m, "omega": omega, "lam": lam}
        if abs(approx - float(exact)) > 1e-12 * float(exact):
            return {
                "weight": name, "k": k, "p": p, "m": m, "omega": omega, "lam": lam,
                "float": approx, "exact": float(exact),
            }
    return None


def _suite_rotation_invariance(rng) -> dict | None:
    """Shifting both phase twists by t changes no verdict (1e-12 relative)."""
    spec = _draw_spec(rng)
    f, g, nb = generate_pair(spec, "unconstrained")
    op = spec.operator
    t = float(rng.uniform(-math.pi, math.pi))
    shifted = NeighborhoodParams(nb.alpha + t, nb.beta + t, nb.delta)
    rel = STANDARD_TOLERANCES.verdict_rel
    grid = 1024

    def verdicts(params):
        pair = criteria.transfer_check(f, g, op, params, grid)
        return [
            criteria.sufficient_n(f, g, op, params),
            criteria.sufficient_m(f, g, op, params),
            criteria.membership_n(f, g, op, params, grid),
            criteria.membership_m(f, g, op, params, grid),
            pair.hypothesis,
            pair.conclusion,
        ]

    for base, moved in zip(verdicts(nb), verdicts(shifted)):
        if base.holds != moved.holds:
            return {**_serialize_instance(spec, f, g, nb), "t": t, "field": "holds"}
        for field_name in ("lhs", "threshold", "margin"):
            x = getattr(base, field_name)
            y = getattr(moved, field_name)
            if field_name == "margin":
                anchor = max(1.0, abs(base.lhs), abs(base.threshold))
                ok = abs(x - y) <= rel * anchor
            else:
                ok = _rel_close(x, y, rel)
            if not ok:
                return {
                    **_serialize_instance(spec, f, g, nb),
                    "t": t, "field": field_name, "base": x, "shifted": y,
                }
    return None


def _implication_trial(rng, target: str) -> dict | None:
    spec = _draw_spec(rng)
    f, g, nb = generate_pair(spec, target)
    op = spec.operator
    if target == "inside_sufficient_n":
        suff = criteria.sufficient_n(f, g, op, nb)
        member = criteria.membership_n(f, g, op, nb, DEFAULT_GRID)
    else:
        suff = criteria.sufficient_m(f, g, op, nb)
        member = criteria.membership_m(f, g, op, nb, DEFAULT_GRID)
    if suff.holds and member.holds:
        return None
    return {
        **_serialize_instance(spec, f, g, nb),
        "sufficient": suff.to_dict(),
        "membership": member.to_dict(),
    }


def _suite_thm_2_1_implication(rng) -> dict | None:
    """Instances passing the derivative-side sum criterion lie in the neighborhood."""
    return _implication_trial(rng, "inside_sufficient_n")


def _suite_thm_2_4_implication(rng) -> dict | None:
    """Value-side mirror of the sum-to-membership implication."""
    return _implication_trial(rng, "inside_sufficient_m")


def _suite_alignment_equality(rng) -> dict | None:
    """Modulus-form sums equal the twisted-difference sums on aligned pairs."""
    spec = _draw_spec(rng)
    rng2 = _rng_for(spec.seed, 1)
    alpha = float(rng2.uniform(-math.pi, math.pi))
    gap = float(rng2.uniform(-math.pi, math.pi))
    beta = alpha - gap
    count = spec.trunc - spec.n + 1
    thetas = rng2.uniform(-math.pi, math.pi, count)
    r = rng2.uniform(0.0, spec.coeff_magnitude, count)
    s = rng2.uniform(0.0, spec.coeff_magnitude, count)
    a = r * np.exp(1j * thetas)
    b = s * np.exp(1j * (thetas - beta + alpha))
    f = MultivalentFunction(spec.p, spec.n, tuple(a))
    g = MultivalentFunction(spec.p, spec.n, tuple(b))
    op = spec.operator
    delta = criteria.delta_lower_bound_n(spec.p, spec.m, alpha, beta) + float(
        rng2.uniform(0.05, 2.0)
    )
    nb = NeighborhoodParams(alpha, beta, delta)
    align = criteria.ArgAlignment(tolerance=1e-8)
    for plain, modulus in (
        (criteria.sufficient_n(f, g, op, nb), criteria.sufficient_n_modulus(f, g, op, nb, align)),
        (criteria.sufficient_m(f, g, op, nb), criteria.sufficient_m_modulus(f, g, op, nb, align)),
    ):
        if not _rel_close(plain.lhs, modulus.lhs, 1e-10):
            return {
                **_serialize_instance(spec, f, g, nb),
                "plain_lhs": plain.lhs,
                "modulus_lhs": modulus.lhs,
            }
    return None


def _suite_telescoping_closed_form(rng) -> dict | None:
    """Exact rational partial sums of 1/((k+p-1)(k+p)) telescope."""
    n = int(rng.integers(1, 7))
    p = int(rng.integers(1, 7))
    top = int(rng.integers(n, 201))
    total = Fraction(0)
    prev = Fraction(-1)
    for k in range(n, top + 1):
        total += Fraction(1, (k + p - 1) * (k + p))
        if total <= prev:  # monotone approach to the limit
            return {"n": n, "p": p, "K": k}
        prev = total
    expected = Fraction(1, n + p - 1) - Fraction(1, top + p)
    if total != expected:
        return {"n": n, "p": p, "K": top, "sum": str(total), "expected": str(expected)}
    if total >= Fraction(1, n + p - 1):
        return {"n": n, "p": p, "K": top, "limit_violated": True}
    return None


def _suite_sum_monotonicity(rng) -> dict | None:
    """Appending a nonzero difference index never decreases a sum lhs."""
    spec = _draw_spec(rng)
    f, g, nb = generate_pair(spec, "unconstrained")
    op = spec.operator
    extra = complex(rng.standard_normal(), rng.standard_normal())
    if extra == 0:
        extra = 1.0 + 0j
    wider = MultivalentFunction(spec.p, spec.n, f.coeffs + (extra,))
    for check in (criteria.sufficient_n, criteria.sufficient_m):
        before = check(f, g, op, nb).lhs
        after = check(wider, g, op, nb).lhs
        if after < before:
            return {
                **_serialize_instance(spec, f, g, nb),
                "extra": [extra.real, extra.imag],
                "before": before,
                "after": after,
            }
    return None


def _suite_specialization_weights(rng) -> dict | None:
    """With m = omega = lam = 0 the derivative-side weight collapses to k+p."""
    p = int(rng.integers(1, 9))
    op = OperatorParams(lam=0.0, m=0, omega=0)
    for k in range(1, 33):
        if exact_blend_derivative_weight(k, p, op) != Fraction(k + p):
            return {"p": p, "k": k, "exact": str(exact_blend_derivative_weight(k, p, op))}
        if blend_derivative_weight(k, p, op) != float(k + p):
            return {"p": p, "k": k, "float": blend_derivative_weight(k, p, op)}
    return None


def _suite_thm_2_11_implication(rng) -> dict | None:
    """Forced transfer hypotheses always carry the value-side conclusion."""
    spec = _draw_spec(rng)
    f, g, nb = generate_transfer_pair(spec)
    result = criteria.transfer_check(f, g, spec.operator, nb, DEFAULT_GRID)
    if result.hypothesis.holds and result.conclusion.holds:
        return None
    return {
        **_serialize_instance(spec, f, g, nb),
        "hypothesis": result.hypothesis.to_dict(),
        "conclusion": result.conclusion.to_dict(),
    }


def _suite_oracle_agreement(rng) -> dict | None:
    """Production boundary sup vs dense FFT sampling within 1e-6."""
    degree = int(rng.integers(0, 65))
    c = rng.standard_normal(degree + 1) + 1j * rng.standard_normal(degree + 1)
    scale = np.abs(c).sum()
    if scale == 0.0:
        c[0] = 1.0
        scale = 1.0
    c = c / scale  # keeps the boundary modulus at most 1, so 1e-6 is meaningful
    produced = max_modulus_on_circle(c, DEFAULT_GRID)[0]
    sampled = sup_oracle(c, 1 << 18)
    if abs(produced - sampled) <= STANDARD_TOLERANCES.sup_compare:
        return None
    return {
        "degree": degree,
        "coeffs": _complex_list(c),
        "production": produced,
        "oracle": sampled,
    }


def _suite_lemma_max_modulus(rng) -> dict | None:
    """Random low-order witnesses satisfy the max-modulus ratio conclusions."""
    n_w = int(rng.integers(1, 4))
    extra = int(rng.integers(0, 6))
    upper = rng.standard_normal(extra + 1) + 1j * rng.standard_normal(extra + 1)
    coeffs = [0j] * n_w + list(upper)
    if all(c == 0 for c in coeffs):
        coeffs[n_w] = 1.0 + 0j
    r0 = float(rng.uniform(0.3, 0.9))
    try:
        lemma_witness(coeffs, n_w, r0, grid=1 << 16)
    except FalsificationError as exc:
        return {"coeffs": _complex_list(coeffs), "n_w": n_w, "r0": r0, "error": str(exc)}
    return None


def _suite_generator_soundness(rng) -> dict | None:
    """Every inside_sufficient_n draw passes both the sum and the sup test."""
    return _implication_trial(rng, "inside_sufficient_n")


def _suite_determinism(rng) -> dict | None:
    """Same spec (same seed) reproduces the same instance bit for bit."""
    spec = _draw_spec(rng)
    f1, g1, nb1 = generate_pair(spec, "inside_sufficient_n")
    f2, g2, nb2 = generate_pair(spec, "inside_sufficient_n")
    same = (
        f1.coeffs == f2.coeffs
        and g1.coeffs == g2.coeffs
        and (nb1.alpha, nb1.beta, nb1.delta) == (nb2.alpha, nb2.beta, nb2.delta)
    )
    if same:
        return None
    return {"spec": spec.to_dict()}


SUITES = {
    "salagean_first_order": _suite_salagean_first_order,
    "salagean_semigroup": _suite_salagean_semigroup,
    "blend_linearity": _suite_blend_linearity,
    "blend_derivative_consistency": _suite_blend_derivative_consistency,
    "weight_exactness": _suite_weight_exactness,
    "rotation_invariance": _suite_rotation_invariance,
    "thm_2_1_implication": _suite_thm_2_1_implication,
    "thm_2_4_implication": _suite_thm_2_4_implication,
    "alignment_equality": _suite_alignment_equality,
    "telescoping_closed_form": _suite_telescoping_closed_form,
    "sum_monotonicity": _suite_sum_monotonicity,
    "specialization_weights": _suite_specialization_weights,
    "thm_2_11_implication": _suite_thm_2_11_implication,
    "oracle_agreement": _suite_oracle_agreement,
    "lemma_max_modulus": _suite_lemma_max_modulus,
    "generator_soundness": _suite_generator_soundness,
    "determinism": _suite_determinism,
}


@dataclass
class SuiteReport:
    suite: str
    trials: int
    seed: int
    passes: int
    failures: int
    first_counterexample: dict | None
    wall_time: float

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def to_document(self) -> dict:
        # wall time is reported in the text summary only, so reruns with the
        # same seed serialize byte-identically
        return {
            "schema_version": 1,
            "kind": "suite_report",
            "suite": self.suite,
            "trials": self.trials,
            "seed": int(self.seed),
            "passes": self.passes,
            "failures": self.failures,
            "first_counterexample": self.first_counterexample,
        }

    def text_summary(self) -> str:
        lines = [
            f"suite    : {self.suite}",
            f"trials   : {self.trials}",
            f"seed     : {self.seed}",
            f"passes   : {self.passes}",
            f"failures : {self.failures}",
            f"wall     : {self.wall_time:.3f}s",
            f"result   : {'PASS' if self.passed else 'FAIL'}",
        ]
        if self.first_counterexample is not None:
            lines.append(f"first counterexample: {self.first_counterexample}")
        return "\n".join(lines)


def run_property_suite(suite: str, trials: int, seed: int = 0) -> SuiteReport:
    """Run `trials` independent draws of the named invariant suite.

    Trials are keyed on (seed, trial index), so the report is a pure function
    of its arguments.  The first counterexample is serialized in full.
    """
    if suite not in SUITES:
        raise DomainError(f"unknown suite {suite!r}; known: {', '.join(sorted(SUITES))}")
    if trials < 1:
        raise DomainError(f"trials must be >= 1, got {trials}")
    fn = SUITES[suite]
    passes = 0
    failures = 0
    first: dict | None = None
    start = time.perf_counter()
    for index in range(trials):
        rng = _rng_for(seed, index)
        try:
            failure = fn(rng)
        except FalsificationError as exc:
            failure = {"trial": index, "falsification": str(exc)}
        if failure is None:
            passes += 1
        else:
            failures += 1
            if first is None:
                first = {"trial": index, **failure}
    wall = time.perf_counter() - start
    return SuiteReport(suite, trials, seed, passes, failures, first, wall)
