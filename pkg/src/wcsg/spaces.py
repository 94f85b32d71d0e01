"""Norms, compact-open seminorms, and mixed-topology diagnostics.

Supported spaces: Hardy circle-mean norms, weighted Bergman area norms,
the Dirichlet energy norm, weighted Bloch norms, and sup-weighted spaces of
holomorphic or continuous functions. Each space also carries the directed
family of compact-radius seminorms that generates the compact-open topology
and whose supremum recovers the norm (the Saks identity the diagnostics
check numerically).

Integral norms are truncated at ``policy.r_cap`` and extrapolated to the
boundary using the known tail exponent; sup-type norms are certified grid
maxima (two dyadic refinements, reported value is a lower bound plus the
last refinement delta).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import holo
from .errors import Unbounded
from .holo import (
    DEFAULT_POLICY,
    INNER_DERIV_NODES,
    OVERFLOW_GUARD,
    Domain,
    HoloFn,
    QuadPolicy,
    annulus_integral,
    boundary_extrapolate,
    circle_mean_p,
    derivative_on_grid,
    disc_integral,
)

INTEGRAL_KINDS = ("hardy", "bergman", "dirichlet")
SUP_KINDS = ("bloch", "sup-holo", "sup-cont")


@dataclass(frozen=True)
class SpaceSpec:
    """Tagged description of a function space plus its quadrature policy."""

    kind: str
    p: float = 2.0
    alpha: float | None = None
    v: HoloFn | None = None
    policy: QuadPolicy = DEFAULT_POLICY
    real_halfwidth: float = 40.0
    label: str = ""

    def __post_init__(self):
        if self.kind not in INTEGRAL_KINDS + SUP_KINDS:
            raise ValueError(f"unknown space kind {self.kind!r}")
        if self.kind in ("hardy", "bergman") and self.p < 1:
            raise ValueError("p must be >= 1")
        if self.kind == "bergman" and not (self.alpha is not None and self.alpha > -1):
            raise ValueError("bergman weight exponent must be > -1")
        if self.kind in SUP_KINDS:
            if self.v is None:
                raise ValueError(f"{self.kind} needs a weight")
            _check_weight_positive(self.v, self.real_halfwidth)
        if not self.label:
            object.__setattr__(self, "label", _default_label(self))

    # -- constructors ------------------------------------------------------
    @classmethod
    def hardy(cls, p: float = 2.0, policy: QuadPolicy = DEFAULT_POLICY):
        return cls("hardy", p=p, policy=policy)

    @classmethod
    def bergman(cls, alpha: float, p: float = 2.0, policy: QuadPolicy = DEFAULT_POLICY):
        return cls("bergman", p=p, alpha=alpha, policy=policy)

    @classmethod
    def dirichlet(cls, policy: QuadPolicy = DEFAULT_POLICY):
        return cls("dirichlet", policy=policy)

    @classmethod
    def bloch(cls, alpha: float = 1.0, policy: QuadPolicy = DEFAULT_POLICY):
        return cls("bloch", alpha=alpha, v=holo.bloch_weight(alpha), policy=policy)

    @classmethod
    def bloch_weighted(cls, v: HoloFn, policy: QuadPolicy = DEFAULT_POLICY):
        return cls("bloch", v=v, policy=policy)

    @classmethod
    def sup_holo(cls, v: HoloFn | None = None, policy: QuadPolicy = DEFAULT_POLICY):
        return cls("sup-holo", v=v if v is not None else holo.unit_weight(), policy=policy)

    @classmethod
    def sup_cont(cls, v: HoloFn, halfwidth: float = 40.0, policy: QuadPolicy = DEFAULT_POLICY):
        return cls("sup-cont", v=v, real_halfwidth=halfwidth, policy=policy)

    @property
    def is_real(self) -> bool:
        return self.kind == "sup-cont"


def _default_label(space: SpaceSpec) -> str:
    if space.kind == "hardy":
        return f"H^{space.p:g}"
    if space.kind == "bergman":
        return f"A^{space.p:g}_{space.alpha:g}"
    if space.kind == "dirichlet":
        return "Dirichlet"
    if space.kind == "bloch":
        return f"Bloch[{space.v.name or 'v'}]"
    if space.kind == "sup-holo":
        return f"Hv[{space.v.name or 'v'}]"
    return f"Cv[{space.v.name or 'v'}]"


def _check_weight_positive(v: HoloFn, halfwidth: float):
    if v.domain.kind == "real":
        sample = np.linspace(-halfwidth, halfwidth, 501)
    else:
        sample = (np.linspace(0.0, 0.999, 40)[:, None]
                  * np.exp(1j * np.linspace(0, 2 * np.pi, 33))[None, :]).ravel()
    vals = np.real(np.asarray(v(sample)))
    if not np.all(vals > 0.0):
        raise ValueError("weight must be strictly positive on the domain (sampled check)")


@dataclass(frozen=True)
class SeminormIndex:
    """Radius parameter of a compact-open seminorm."""

    s: float

    def __post_init__(self):
        if not 0.0 < self.s < 1.0:
            raise ValueError("seminorm radius must lie in (0, 1)")


@dataclass(frozen=True)
class NullSequence:
    """Weighted family (s_n, a_n) with weights decaying to zero.

    A finite prefix of a genuine null sequence should end with a (near-)zero
    sentinel weight so the decay invariant is checkable.
    """

    radii: tuple
    weights: tuple

    def __post_init__(self):
        radii = tuple(float(s) for s in self.radii)
        weights = tuple(float(a) for a in self.weights)
        object.__setattr__(self, "radii", radii)
        object.__setattr__(self, "weights", weights)
        if len(radii) != len(weights) or not radii:
            raise ValueError("radii and weights must be equal-length and nonempty")
        if not all(0.0 < s < 1.0 for s in radii):
            raise ValueError("all radii must lie in (0, 1)")
        if not all(a >= 0.0 for a in weights):
            raise ValueError("weights must be nonnegative")
        peak = max(weights)
        if peak <= 0.0:
            raise ValueError("weights must not all vanish")
        k0 = weights.index(peak)
        tail = weights[k0:]
        if any(a < b - 1e-15 for a, b in zip(tail, tail[1:])):
            raise ValueError("weight tail must be nonincreasing")
        if weights[-1] >= 1e-6 * peak:
            raise ValueError("final weight must be < 1e-6 of the peak (null sequence)")


# ---------------------------------------------------------------------------
# grids for sup-type evaluation
# ---------------------------------------------------------------------------

@lru_cache(maxsize=32)
def _disc_radii(level: int, r_cap: float):
    inner = np.arange(0.0, 0.45, 0.1)
    m = 2 ** level
    ks = np.arange(m, 20 * m + 1)
    dyadic = 1.0 - 2.0 ** (-ks / m)
    rs = np.concatenate([inner, dyadic[dyadic <= r_cap], [r_cap]])
    return np.unique(rs)


@lru_cache(maxsize=32)
def _disc_angles(level: int):
    m = 2 ** level
    n = 128 * m
    uniform = 2.0 * np.pi * np.arange(n) / n
    js = np.arange(m, 16 * m + 1)
    clustered = np.pi * 2.0 ** (-js / m)
    return np.unique(np.concatenate([uniform, clustered, 2.0 * np.pi - clustered]))


@lru_cache(maxsize=32)
def disc_sup_points(level: int, r_cap: float):
    rs = _disc_radii(level, r_cap)
    ring = np.exp(1j * _disc_angles(level))
    return (rs[:, None] * ring[None, :]).ravel()


@lru_cache(maxsize=32)
def real_sup_points(level: int, halfwidth: float):
    return np.linspace(-halfwidth, halfwidth, 2048 * 2 ** level + 1)


def certified_sup(values_at, space: SpaceSpec, radius_scale: float = 1.0):
    """Certified grid maximum of a pointwise functional.

    ``values_at`` maps a point array to nonnegative reals. Returns the level-2
    value (a lower bound for the true sup) and the delta gained by the last
    refinement.
    """
    sups = []
    for level in (1, 2):
        if space.is_real:
            pts = real_sup_points(level, space.real_halfwidth) * radius_scale
        else:
            pts = disc_sup_points(level, space.policy.r_cap)
            if radius_scale != 1.0:
                pts = pts * (radius_scale / space.policy.r_cap)
        vals = np.asarray(values_at(pts), dtype=float)
        if not np.all(np.isfinite(vals)) or np.max(vals) > OVERFLOW_GUARD:
            raise Unbounded("sup evaluation exceeded the overflow guard")
        sups.append(float(np.max(vals)))
    return sups[-1], sups[-1] - sups[-2]


# ---------------------------------------------------------------------------
# norms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NormEvaluation:
    """Norm value with its truncation/extrapolation provenance."""

    value: float
    method: str
    truncated_value: float | None = None
    refined_value: float | None = None
    r_truncate: float | None = None
    r_refine: float | None = None
    tail_exponent: float | None = None
    sup_delta: float | None = None
    real_halfwidth: float | None = None


def _is_numerically_zero(f: HoloFn, space: SpaceSpec) -> bool:
    if space.is_real:
        pts = np.linspace(-space.real_halfwidth, space.real_halfwidth, 257)
    else:
        pts = (np.linspace(0.0, 0.95, 9)[:, None]
               * np.exp(1j * np.linspace(0.0, 2 * np.pi, 17))[None, :]).ravel()
    return bool(np.max(np.abs(f(pts))) < 1e-15)


def _radial_functional(space: SpaceSpec, f: HoloFn, r: float, certify: bool) -> float:
    """F(r): the p-power (or squared) integral functional truncated at r."""
    if space.kind == "hardy":
        return circle_mean_p(f, r, space.p, space.policy)
    if space.kind == "bergman":
        a, p = space.alpha, space.p

        def integrand(z):
            return np.abs(f.fn(z)) ** p * (1.0 - np.abs(z) ** 2) ** a

        return (a + 1.0) / np.pi * disc_integral(integrand, r, space.policy, certify=certify)
    if space.kind == "dirichlet":
        def integrand(z):
            radii = 0.5 * (1.0 - np.abs(z))
            df = holo.cauchy_derivative_grid(f.fn, z, radii, INNER_DERIV_NODES)
            return np.abs(df) ** 2

        head = abs(complex(f(0.0))) ** 2
        return head + disc_integral(integrand, r, space.policy, certify=certify) / np.pi
    raise ValueError(f"no radial functional for {space.kind}")


def _tail_exponent(space: SpaceSpec) -> float:
    return space.alpha + 1.0 if space.kind == "bergman" else 1.0


def _annulus_increment(space: SpaceSpec, f: HoloFn, r1: float, r2: float) -> float:
    if space.kind == "hardy":
        return _radial_functional(space, f, r2, certify=False) - _radial_functional(
            space, f, r1, certify=False
        )
    if space.kind == "bergman":
        a, p = space.alpha, space.p
        g = lambda z: np.abs(f.fn(z)) ** p * (1.0 - np.abs(z) ** 2) ** a
        return (a + 1.0) / np.pi * annulus_integral(g, r1, r2, n_theta=space.policy.n_theta)

    def g(z):
        radii = 0.5 * (1.0 - np.abs(z))
        df = holo.cauchy_derivative_grid(f.fn, z, radii, INNER_DERIV_NODES)
        return np.abs(df) ** 2

    return annulus_integral(g, r1, r2, n_theta=space.policy.n_theta) / np.pi


def norm_detail(space: SpaceSpec, f: HoloFn) -> NormEvaluation:
    if _is_numerically_zero(f, space):
        return NormEvaluation(0.0, method="zero-shortcircuit")

    if space.kind in INTEGRAL_KINDS:
        r1 = space.policy.r_cap
        r2 = 1.0 - (1.0 - r1) / 10.0
        F1 = _radial_functional(space, f, r1, certify=True)
        F2 = F1 + _annulus_increment(space, f, r1, r2)
        if not np.isfinite(F2) or F2 > OVERFLOW_GUARD:
            raise Unbounded(f"{space.label}: radial functional exceeded the overflow guard")
        ext = boundary_extrapolate(F1, F2, r1, r2, _tail_exponent(space))
        ext = max(ext, F2)  # the functionals are nondecreasing in r
        root = 1.0 / space.p if space.kind != "dirichlet" else 0.5
        return NormEvaluation(
            value=float(ext ** root),
            method="truncated-extrapolated",
            truncated_value=float(F1 ** root),
            refined_value=float(F2 ** root),
            r_truncate=r1,
            r_refine=r2,
            tail_exponent=_tail_exponent(space),
        )

    if space.kind == "bloch":
        vfn = space.v.fn

        def grad_vals(z):
            df = derivative_on_grid(f, z)
            return np.abs(df) * np.real(vfn(z))

        sup, delta = certified_sup(grad_vals, space)
        head = abs(complex(f(0.0)))
        return NormEvaluation(value=head + sup, method="certified-grid-sup", sup_delta=delta)

    vfn = space.v.fn
    sup, delta = certified_sup(lambda z: np.abs(f.fn(z)) * np.real(vfn(z)), space)
    return NormEvaluation(
        value=sup,
        method="certified-grid-sup",
        sup_delta=delta,
        real_halfwidth=space.real_halfwidth if space.is_real else None,
    )


def norm(space: SpaceSpec, f: HoloFn) -> float:
    return norm_detail(space, f).value


def co_seminorm(space: SpaceSpec, f: HoloFn, idx: SeminormIndex) -> float:
    """Compact-open seminorm at radius idx.s (nondecreasing in s, below norm)."""
    s = idx.s
    if space.kind == "hardy":
        return float(circle_mean_p(f, s * (1.0 - 1e-6), space.p, space.policy) ** (1.0 / space.p))
    if space.kind == "bergman":
        a, p = space.alpha, space.p
        g = lambda z: np.abs(f.fn(z)) ** p * (1.0 - np.abs(z) ** 2) ** a
        val = (a + 1.0) / np.pi * disc_integral(g, s, space.policy, certify=False)
        return float(val ** (1.0 / p))
    if space.kind == "dirichlet":
        def g(z):
            radii = 0.5 * (1.0 - np.abs(z))
            df = holo.cauchy_derivative_grid(f.fn, z, radii, INNER_DERIV_NODES)
            return np.abs(df) ** 2

        head = abs(complex(f(0.0))) ** 2
        return float(np.sqrt(head + disc_integral(g, s, space.policy, certify=False) / np.pi))
    if space.kind == "bloch":
        vfn = space.v.fn

        def grad_vals(z):
            df = derivative_on_grid(f, z)
            return np.abs(df) * np.real(vfn(z))

        sup, _ = certified_sup(grad_vals, space, radius_scale=s)
        return abs(complex(f(0.0))) + sup
    vfn = space.v.fn
    sup, _ = certified_sup(lambda z: np.abs(f.fn(z)) * np.real(vfn(z)), space, radius_scale=s)
    return sup


@dataclass(frozen=True)
class SaksReport:
    """Norm vs supremum of seminorms, per the Saks identity."""

    space: str
    fn: str
    norm: float
    seminorms: tuple  # (radius, value) pairs
    max_seminorm: float
    gap: float
    tol: float
    verdict: bool


def saks_sup_check(space: SpaceSpec, f: HoloFn, radii, tol: float = 1e-3) -> SaksReport:
    radii = [float(r) for r in radii]
    if any(b <= a for a, b in zip(radii, radii[1:])):
        raise ValueError("radii must increase toward 1")
    nrm = norm(space, f)
    vals = tuple((r, co_seminorm(space, f, SeminormIndex(r))) for r in radii)
    best = max(v for _, v in vals)
    gap = nrm - best
    return SaksReport(
        space=space.label,
        fn=f.name,
        norm=nrm,
        seminorms=vals,
        max_seminorm=best,
        gap=gap,
        tol=tol,
        verdict=bool(gap < tol),
    )


def submixed_seminorm(space: SpaceSpec, f: HoloFn, ns: NullSequence) -> float:
    """sup_n a_n * p_{s_n}(f); terms that cannot beat the running max are skipped."""
    nrm = norm(space, f)
    best = 0.0
    for s, a in zip(ns.radii, ns.weights):
        if a <= 0.0 or a * nrm <= best:
            continue
        best = max(best, a * co_seminorm(space, f, SeminormIndex(s)))
    return best


@dataclass(frozen=True)
class GammaVerdict:
    """Sequential mixed-topology convergence check.

    A sequence converges in the mixed topology iff it converges compact-openly
    and is norm-bounded; this records both halves.
    """

    co_residuals: tuple
    norms: tuple
    tol_conv: float
    norm_cap: float
    co_convergent: bool
    norm_bounded: bool
    gamma_convergent: bool


def gamma_convergence_probe(space: SpaceSpec, seq, limit: HoloFn, radii,
                            tol_conv: float = 1e-3, norm_cap: float = 100.0) -> GammaVerdict:
    if not seq:
        raise ValueError("sequence must be nonempty")
    idxs = [SeminormIndex(float(r)) for r in radii]
    residuals = []
    norms = []
    for fk in seq:
        diff = fk - limit
        residuals.append(max(co_seminorm(space, diff, idx) for idx in idxs))
        norms.append(norm(space, fk))
    co_ok = residuals[-1] < tol_conv
    bounded = max(norms) < norm_cap
    return GammaVerdict(
        co_residuals=tuple(residuals),
        norms=tuple(norms),
        tol_conv=tol_conv,
        norm_cap=norm_cap,
        co_convergent=bool(co_ok),
        norm_bounded=bool(bounded),
        gamma_convergent=bool(co_ok and bounded),
    )


def default_corpus(real: bool = False):
    """The fixed five-function test corpus: 1, z, z^2, 1+z, exp(z/2)."""
    dom = holo.REAL_LINE if real else holo.UNIT_DISC
    return [
        holo.one(dom),
        holo.monomial(1, dom),
        holo.monomial(2, dom),
        holo.poly([1.0, 1.0], dom),
        holo.exp_fn(0.5, dom),
    ]
