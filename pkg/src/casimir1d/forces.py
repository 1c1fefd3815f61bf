"""Net pressure on the cavity slabs, split into state and bath parts.

The force on either slab is the difference of the radiation pressure on its
outer and inner faces.  It separates exactly into two additive integrals:

* a state part (``force_ic``): the initial field state weighs every mode k
  of the free field, and the slab scattering redistributes that pressure;
* a bath part (``force_bath``): the dissipative slabs radiate thermally at
  their own temperatures, independently of the field state.

Both real-axis integrands oscillate under three linear phases (one per slab
thickness and one for the gap round trip) on top of slowly decaying
absorption envelopes.  Each semi-infinite integral is therefore evaluated in
three stages: adaptive quadrature up to a switch point chosen by probing the
local oscillation amplitude against the error budget, quadrature of the
phase-averaged integrand over geometric tail panels, and an inverse-cube
remainder model for the truncated far tail.  The dropped oscillation bound
and the remainder-model uncertainty are folded into the returned error
estimate.

Dissipationless (non-dispersive) slabs leave the real-axis tail undamped,
so no classical improper integral exists.  Equilibrium-weight parts are then
rotated onto the imaginary frequency axis, where the round-trip factor is
real and decays exponentially; only the thermal or band excess over the
vacuum weight stays on the real axis, where it is absolutely convergent.
The two dissipationless entry points build the rotated round-trip factor
through different arithmetic (direct slab product versus extraction from
the assembled cavity coefficients) so they remain independent checks of
one another.
"""

import math
from dataclasses import dataclass, field, replace

from .errors import (DeltaStateWeightError, NaNIntegrandError,
                     NonConvergenceError)
from .kernels import core
from .quadrature import integrate_interval, integrate_semiinfinite, matsubara_sum
from .states import FieldState, band_edges, weight

__all__ = [
    "ForceBreakdown",
    "band_excess_curve",
    "bracket_sign_scan",
    "equilibrium_matsubara",
    "force_bath",
    "force_delta_squeezed",
    "force_dissipationless",
    "force_ic",
    "force_total",
    "halfspace_forces",
    "halfspace_ic_unregularized",
    "lifshitz_matsubara",
]

# Offsets per oscillation phase in the tail average.  Four equidistant
# offsets cancel every Fourier harmonic of a phase up to third order; the
# surviving fourth harmonic carries at least the fourth power of a slab
# round-trip factor, far below the tail budget wherever the average is used.
_SHIFTS = 4
# Growth factor for the switch-point march and geometric ratio of the
# averaged-tail panels.
_GROWTH = 1.6
_TAIL_RATIO = 1.7
_MAX_MARCH = 48
_MAX_TAIL_PANELS = 240
# Samples per probe window when estimating the local oscillation amplitude.
_PROBE_SAMPLES = 24
# Absolute rounding noise of one bracket evaluation is a few ulps of its
# O(1) intermediates; the force integrands carry an extra factor k.  The
# tail machinery must not chase structure below this floor, and the floor
# belongs in the reported error.
_NOISE_EPS = 2e-16


@dataclass(frozen=True)
class ForceBreakdown:
    """State part, bath part, their exact sum, and the two error estimates.

    ``total`` is always ``ic + bath`` by construction; ``meta`` echoes the
    inputs that produced the numbers.
    """

    ic: float
    bath: float
    total: float
    err_ic: float
    err_bath: float
    meta: dict = field(default_factory=dict)


def _absorbing(mat):
    """True when the material actually dissipates (finite damped response)."""
    return (not mat.static) and mat.omega_pl > 0.0 and mat.gamma0 > 0.0


def _undamped_dispersive(mat):
    """Dispersive but lossless: real poles and bound cavity modes."""
    return (not mat.static) and mat.omega_pl > 0.0 and mat.gamma0 == 0.0


def _breakpoints(matL, matR):
    """Panel edges seeded at the oscillator response features of both slabs.

    Placing the resonance and its damping-width neighborhood on panel
    boundaries keeps the open quadrature nodes off the sharp core and lets
    the local refinement concentrate where the response actually varies.
    """
    pts = set()
    for m in (matL, matR):
        if m.static or m.omega_pl == 0.0:
            continue
        w0 = m.omega0
        if w0 <= 0.0:
            continue
        pts.add(w0)
        widths = [0.05 * w0]
        g = m.gamma0
        if g > 0.0:
            widths += [g, 10.0 * g, 100.0 * g]
        for h in widths:
            if w0 - h > 0.0:
                pts.add(w0 - h)
            pts.add(w0 + h)
        # upper edge of the reflective band of the undamped response
        pts.add(math.sqrt(w0 * w0 + m.omega_pl * m.omega_pl))
    return tuple(sorted(pts))


def _endpoint_check(f, k_min=1e-8):
    """Evaluate the integrand just above k = 0 and reject non-finite values."""
    v = f(k_min)
    if not math.isfinite(v):
        raise NaNIntegrandError(k_min)


def _phase_average(shifted, k, naxes):
    """Discrete mean of the integrand over offsets of its oscillation phases.

    ``shifted(k, sL, sR, sG)`` evaluates the integrand with additive offsets
    on the left-slab, right-slab and gap phases.  ``naxes`` is 3 for slab
    integrands and 1 when only the gap phase exists (half-space limits).
    """
    step = 2.0 * math.pi / _SHIFTS
    if naxes == 1:
        tot = 0.0
        for m in range(_SHIFTS):
            tot += shifted(k, 0.0, 0.0, m * step)
        return tot / _SHIFTS
    tot = 0.0
    for i in range(_SHIFTS):
        sL = i * step
        for j in range(_SHIFTS):
            sR = j * step
            for m in range(_SHIFTS):
                tot += shifted(k, sL, sR, m * step)
    return tot / float(_SHIFTS ** 3)


def _probe_amplitude(raw, averaged, k, window):
    """Largest deviation of the integrand from its phase average near k."""
    amp = 0.0
    for i in range(_PROBE_SAMPLES):
        x = k + window * (i + 0.5) / _PROBE_SAMPLES
        dev = abs(raw(x) - averaged(x))
        if dev > amp:
            amp = dev
    return amp


def _oscillatory_integral(raw, shifted, spec, gap, width=None,
                          breakpoints=(), naxes=3):
    """Integrate a decaying oscillatory force integrand over [0, inf).

    Parameters
    ----------
    raw : callable
        ``raw(k)`` evaluates the integrand; must equal ``shifted(k, 0, 0, 0)``.
    shifted : callable
        ``shifted(k, sL, sR, sG)`` evaluates it with phase offsets.
    spec : QuadratureSpec
        Tolerances; ``rel_tol`` is interpreted against the integral scale.
    gap, width : float
        Geometry lengths fixing the slowest oscillation rates.  ``width``
        is None for half-space integrands (gap phase only).
    breakpoints : sequence
        Material response features, passed to the direct quadrature.
    naxes : int
        Number of oscillation phases averaged over (3 or 1).

    Returns
    -------
    value, err : float
        The integral and a conservative error estimate combining the
        quadrature errors, the probed bound on the oscillation dropped at
        the switch point, and the tail remainder-model uncertainty.
    """
    period = math.pi / gap
    inv_rate = 1.0 / gap
    if width is not None and width > 0.0:
        inv_rate += 1.0 / width

    def averaged(k):
        return _phase_average(shifted, k, naxes)

    _endpoint_check(raw)

    k0 = max(8.0 * spec.panel_width, 4.0 * period)
    if breakpoints:
        k0 = max(k0, 1.3 * breakpoints[-1])

    # Cheap magnitude estimate fixing the absolute error budget.
    coarse = replace(spec, rel_tol=1e-2, abs_tol=max(spec.abs_tol, 1e-8),
                     max_panels=max(2000, spec.max_panels // 10))
    inner = tuple(b for b in breakpoints if b < k0)
    try:
        c0, _ = integrate_interval(raw, 0.0, k0, coarse, breakpoints=inner)
    except NonConvergenceError as exc:
        c0 = exc.partial if exc.partial is not None else 0.0
    scale = max(abs(c0), abs(averaged(k0)) * k0, spec.abs_tol)
    budget = max(spec.abs_tol, spec.rel_tol * scale)

    # March the switch point until the dropped oscillation fits the budget
    # or falls to the evaluation noise floor, whichever comes first.  When
    # one slab keeps reflecting at high k (lossless component), the
    # amplitude decays only like 1/k and no reachable switch point exists:
    # amp*K stalling across steps detects that regime early.
    K = k0
    bound = math.inf
    stalls = 0
    prev_amp_k = math.inf
    for _ in range(_MAX_MARCH):
        window = max(period, 0.05 * K)
        amp = _probe_amplitude(raw, averaged, K, window)
        bound = 0.5 * amp * inv_rate
        if bound <= 0.5 * budget or amp <= 64.0 * _NOISE_EPS * K:
            break
        stalls = stalls + 1 if amp * K > 0.7 * prev_amp_k else 0
        k_req = K * bound / (0.5 * budget)
        if stalls >= 3 and k_req > 0.5 * spec.max_panels * spec.panel_width:
            raise NonConvergenceError(
                "oscillation amplitude decays like 1/k (a persistent "
                "reflection); the switch point for budget %.3e would sit "
                "near k = %.3e, beyond the panel budget"
                % (budget, k_req), partial=None, error=bound, panels=0)
        prev_amp_k = amp * K
        K *= _GROWTH
    else:
        raise NonConvergenceError(
            "oscillation bound still %.3e at k = %.3e (budget %.3e)"
            % (bound, K, budget), partial=None, error=bound, panels=0)

    # Direct adaptive pass below the switch point.
    direct = replace(spec, abs_tol=max(spec.abs_tol, 0.25 * budget,
                                       0.5 * _NOISE_EPS * K * K))
    val, err = integrate_interval(raw, 0.0, K, direct,
                                  breakpoints=tuple(b for b in breakpoints
                                                    if b < K))
    err += bound

    # Phase-averaged tail over geometric panels; for an inverse-cube mean
    # envelope f(k) ~ C/k^3 the remainder past kk is exactly f(kk)*kk/2.
    # Each segment accumulates an evaluation-noise allowance; once the
    # remainder drops below the accumulated noise, further integration
    # cannot improve the value and the loop stops with the remainder model.
    seg_tol = max(spec.abs_tol, 0.02 * budget)
    kk = K
    noise_acc = 0.0
    for _ in range(_MAX_TAIL_PANELS):
        mean = averaged(kk)
        rem = 0.5 * mean * kk
        if abs(rem) <= max(0.25 * budget, noise_acc):
            val += rem
            err += 0.5 * abs(rem) + noise_acc
            break
        hi = kk * _TAIL_RATIO
        floor = _NOISE_EPS * hi * (hi - kk)
        seg = replace(spec, abs_tol=max(seg_tol, floor),
                      panel_width=0.5 * (hi - kk))
        v, e = integrate_interval(averaged, kk, hi, seg)
        val += v
        err += e
        noise_acc += floor
        kk = hi
    else:
        raise NonConvergenceError(
            "averaged tail failed to decay below budget %.3e by k = %.3e"
            % (budget, kk), partial=val, error=err, panels=0)
    return val, err


def _rotated_vacuum(cfg, spec, roundtrip):
    """Vacuum-weight state force by rotation onto the imaginary axis.

    Equals 4 * integral over kappa of kappa * w / (1 - w) with w the real
    rotated round-trip factor supplied by ``roundtrip``; the integrand
    decays like exp(-2 kappa gap), so the standard marching quadrature
    terminates on its own.
    """
    a, d = cfg.gap, cfg.width
    tl = cfg.left.as_tuple()
    tr = cfg.right.as_tuple()

    def g(kappa):
        w = roundtrip(kappa, a, d, tl, tr)
        return 4.0 * kappa * w / (1.0 - w)

    s = replace(spec, panel_width=min(spec.panel_width, 0.5 / a))
    return integrate_semiinfinite(g, s)


def _thermal_excess(bracket, beta, spec, breakpoints):
    """State force excess of a thermal weight over the vacuum weight.

    The excess weight coth(beta k / 2) - 1 = 2 / (e^{beta k} - 1) decays
    exponentially, so the integral lives on a finite interval regardless of
    the material's absorption.
    """
    def g(k):
        x = beta * k
        if x > 120.0:
            return 0.0
        occ = 2.0 / math.expm1(x) if x > 0.0 else math.inf
        return k * occ * bracket(k)

    _endpoint_check(g)
    hi = 120.0 / beta
    bks = tuple(b for b in breakpoints if b < hi)
    return integrate_interval(g, 0.0, hi, spec, breakpoints=bks)


def _band_excess(bracket, state, spec, breakpoints):
    """State force excess of a band-squeezed weight over the vacuum weight."""
    lo, hi = band_edges(state)
    if hi <= lo:
        return 0.0, 0.0
    fac = math.cosh(2.0 / state.sigma) - 1.0

    def g(k):
        return k * bracket(k)

    bks = tuple(b for b in breakpoints if lo < b < hi)
    v, e = integrate_interval(g, lo, hi, spec, breakpoints=bks)
    return fac * v, fac * e


def force_ic(cfg, state, spec):
    """State-driven force on the cavity for a given initial field state.

    Parameters
    ----------
    cfg : CavityConfig
    state : FieldState
        Any variant except the delta-band limit, which has no pointwise
        spectral weight (use ``force_delta_squeezed``).
    spec : QuadratureSpec

    Returns
    -------
    value, err : float
        Force in inverse-square-gap units and its error estimate.  Positive
        values push the slabs apart.
    """
    if state.variant == "squeezed_delta":
        raise DeltaStateWeightError(
            "the delta-band state has no pointwise spectral weight; "
            "use force_delta_squeezed")
    L, R = cfg.left, cfg.right
    a, d = cfg.gap, cfg.width
    if L.omega_pl == 0.0 and R.omega_pl == 0.0:
        return 0.0, 0.0
    tl, tr = L.as_tuple(), R.as_tuple()

    scale = 1.0
    eff = state
    if state.variant == "squeezed_const":
        # constant weight: a pure rescaling of the vacuum integral
        scale = weight(state, 1.0)
        eff = FieldState.vacuum()

    lossless = not (_absorbing(L) or _absorbing(R))
    bks = _breakpoints(L, R)

    if lossless:
        vac, evac = _rotated_vacuum(cfg, spec, core.roundtrip_rot_cavity)
        if eff.variant != "vacuum" and (_undamped_dispersive(L)
                                        or _undamped_dispersive(R)):
            raise NonConvergenceError(
                "undamped dispersive slabs have bound cavity modes on the "
                "real axis; the non-vacuum excess integral is singular",
                partial=scale * vac, error=None, panels=0)
    else:
        def raw(k):
            return k * core.ic_bracket(k, a, d, tl, tr)

        def shifted(k, sL, sR, sG):
            return k * core.ic_bracket(k, a, d, tl, tr, sL, sR, sG)

        vac, evac = _oscillatory_integral(raw, shifted, spec, a, d, bks)

    exc, eexc = 0.0, 0.0
    if eff.variant == "thermal":
        def bracket(k):
            return core.ic_bracket(k, a, d, tl, tr)

        exc, eexc = _thermal_excess(bracket, eff.beta, spec, bks)
    elif eff.variant == "squeezed_band":
        def bracket(k):
            return core.ic_bracket(k, a, d, tl, tr)

        exc, eexc = _band_excess(bracket, eff, spec, bks)

    return scale * (vac + exc), scale * (evac + eexc)


def force_bath(cfg, beta_left, beta_right, spec):
    """Bath-driven force from the slabs' own thermal radiation.

    Parameters
    ----------
    cfg : CavityConfig
    beta_left, beta_right : float
        Inverse temperatures of the two slab baths; both must be positive.
    spec : QuadratureSpec

    Returns
    -------
    value, err : float
        Exactly (0.0, 0.0) when neither slab absorbs: without absorption the
        fluctuation weights vanish identically and no bath radiates.
    """
    if not (beta_left > 0.0 and beta_right > 0.0):
        raise ValueError("bath inverse temperatures must be positive")
    L, R = cfg.left, cfg.right
    if not (_absorbing(L) or _absorbing(R)):
        return 0.0, 0.0
    a, d = cfg.gap, cfg.width
    tl, tr = L.as_tuple(), R.as_tuple()

    def raw(k):
        return core.bath_integrand(k, a, d, tl, tr, beta_left, beta_right)

    def shifted(k, sL, sR, sG):
        return core.bath_integrand(k, a, d, tl, tr, beta_left, beta_right,
                                   sL, sR, sG)

    return _oscillatory_integral(raw, shifted, spec, a, d,
                                 _breakpoints(L, R))


def force_total(cfg, state, beta_left, beta_right, spec):
    """Both force parts and their exact sum.

    Returns
    -------
    ForceBreakdown
        ``total`` is ``ic + bath`` with no re-evaluation, so additivity is
        exact by construction; ``meta`` echoes the inputs.
    """
    f_ic, e_ic = force_ic(cfg, state, spec)
    f_b, e_b = force_bath(cfg, beta_left, beta_right, spec)
    meta = {
        "gap": cfg.gap,
        "width": cfg.width,
        "left": cfg.left.as_tuple(),
        "right": cfg.right.as_tuple(),
        "state": state.variant,
        "state_beta": state.beta,
        "state_sigma": state.sigma,
        "state_omega_center": state.omega_center,
        "state_xi": state.xi,
        "beta_left": beta_left,
        "beta_right": beta_right,
    }
    return ForceBreakdown(f_ic, f_b, f_ic + f_b, e_ic, e_b, meta)


def _ident_bracket(k, a, d, mat):
    """Reduced state bracket for two identical lossless slabs.

    Equals 2 * [1 - (1 - |r|^4) / |1 - r^2 e^{2ika}|^2] with r the single
    slab reflection; algebraically identical to the general two-slab form
    when both slabs share one material and absorb nothing.
    """
    n = core.refractive_at(-1j * k, mat[0], mat[1], mat[2], mat[3])
    parts = core.slab_parts(k, n, d)
    r = parts[3]
    gapf = core.gap_phase(k, a)
    _, delta = core.cavity_delta(r, r, gapf)
    p2 = abs(r) ** 2
    return 2.0 * (1.0 - (1.0 - p2 * p2) / abs(delta) ** 2)


def force_dissipationless(cfg, state, spec):
    """State force for non-dispersive lossless slabs, by a separate route.

    Uses the unitarity-reduced bracket (transmitted-plus-reflected flux
    equals one), with the further reduction to a single-reflection form when
    the two slabs are identical, and assembles the rotated round-trip factor
    from the direct slab product rather than from the cavity coefficients.
    Must agree with ``force_ic`` on the same configuration; keeping the two
    routes separate is the regression check on both.
    """
    L, R = cfg.left, cfg.right
    if not (L.static and R.static):
        raise ValueError(
            "dissipationless route requires static non-dispersive slabs")
    if state.variant == "squeezed_delta":
        raise DeltaStateWeightError(
            "the delta-band state has no pointwise spectral weight; "
            "use force_delta_squeezed")
    a, d = cfg.gap, cfg.width
    if L.omega_pl == 0.0 and R.omega_pl == 0.0:
        return 0.0, 0.0
    tl, tr = L.as_tuple(), R.as_tuple()

    scale = 1.0
    eff = state
    if state.variant == "squeezed_const":
        scale = weight(state, 1.0)
        eff = FieldState.vacuum()

    vac, evac = _rotated_vacuum(cfg, spec, core.roundtrip_rot_direct)

    if cfg.left == cfg.right:
        def bracket(k):
            return _ident_bracket(k, a, d, tl)
    else:
        def bracket(k):
            return core.nodiss_bracket(k, a, d, tl, tr)

    exc, eexc = 0.0, 0.0
    if eff.variant == "thermal":
        exc, eexc = _thermal_excess(bracket, eff.beta, spec, ())
    elif eff.variant == "squeezed_band":
        exc, eexc = _band_excess(bracket, eff, spec, ())

    return scale * (vac + exc), scale * (evac + eexc)


def force_delta_squeezed(cfg, omega_center, spec):
    """Force density of the delta-band squeezed state at its center mode.

    The delta-band limit concentrates all excess weight on the single mode
    ``omega_center``; what survives the normalization is the bare integrand
    value k * [state bracket] at k = omega_center, a force per unit
    wavenumber rather than an integrated inverse-square-gap force.  The
    finite-band state at small width does not reduce to this value because
    its in-band weight grows faster than the window shrinks; the two
    normalizations are intentionally different.  ``spec`` is accepted for
    signature uniformity; the evaluation is pointwise.
    """
    if not omega_center > 0.0:
        raise ValueError("omega_center must be positive")
    tl = cfg.left.as_tuple()
    tr = cfg.right.as_tuple()
    return omega_center * core.ic_bracket(omega_center, cfg.gap, cfg.width,
                                          tl, tr)


def lifshitz_matsubara(matL, matR, a, beta, spec):
    """Equilibrium half-space force as a rotated-axis pole sum.

    Evaluates (8 pi / beta) * sum over l >= 1 of xi_l * w / (1 - w) at the
    thermal frequencies xi_l = 2 pi l / beta, with w(xi) the product of the
    two surface reflections at imaginary frequency times exp(-2 xi a).  The
    normalization follows from closing the equal-temperature real-axis
    integral in the upper half plane (each pole of coth contributes 2/beta
    twice, once per sign of k); it is anchored independently by the
    perfect-mirror zero-temperature limit and cross-checked numerically by
    the half-space equal-temperature route.

    Returns
    -------
    value, err : float
    """
    if not beta > 0.0:
        raise ValueError("beta must be positive")
    if not a > 0.0:
        raise ValueError("gap must be positive")
    if matL.omega_pl == 0.0 or matR.omega_pl == 0.0:
        return 0.0, 0.0
    tl = matL.as_tuple()
    tr = matR.as_tuple()

    def g(xi):
        nL = core.refractive_rot(xi, tl[0], tl[1], tl[2], tl[3])
        nR = core.refractive_rot(xi, tr[0], tr[1], tr[2], tr[3])
        rL = (1.0 - nL) / (1.0 + nL)
        rR = (1.0 - nR) / (1.0 + nR)
        x = 2.0 * xi * a
        e = math.exp(-x) if x < 700.0 else 0.0
        w = rL * rR * e
        return xi * w / (1.0 - w)

    s, err = matsubara_sum(g, beta, spec)
    pref = 8.0 * math.pi / beta
    return pref * s, pref * err


def equilibrium_matsubara(cfg, beta, spec):
    """Equal-temperature total force on finite-width slabs as a pole sum.

    Same normalization as ``lifshitz_matsubara`` but with the full
    finite-width slab reflections in the round-trip factor.  At equilibrium
    (field and both baths at the same temperature) this must match
    ``force_ic + force_bath``; it serves as an independent cross-check of
    the real-axis machinery, since it shares none of its quadrature.
    """
    if not beta > 0.0:
        raise ValueError("beta must be positive")
    a, d = cfg.gap, cfg.width
    tl = cfg.left.as_tuple()
    tr = cfg.right.as_tuple()
    if cfg.left.omega_pl == 0.0 and cfg.right.omega_pl == 0.0:
        return 0.0, 0.0

    def g(xi):
        w = core.roundtrip_rot_direct(xi, a, d, tl, tr)
        return xi * w / (1.0 - w)

    s, err = matsubara_sum(g, beta, spec)
    pref = 8.0 * math.pi / beta
    return pref * s, pref * err


def halfspace_forces(matL, matR, a, beta_left, beta_right, beta_phi, spec):
    """Two-temperature force parts in the thick-slab (half-space) limit.

    Parameters
    ----------
    matL, matR : Material
        Both must absorb: without absorption on both sides the free-field
        pressure term is uncompensated and the state integral diverges.
    a : float
        Gap between the two half-space faces.
    beta_left, beta_right : float
        Inverse bath temperatures.
    beta_phi : float
        Inverse field-state temperature.
    spec : QuadratureSpec

    Returns
    -------
    f_ic, f_b : float
        Neither the bare state integral nor the bare bath integral exists
        for half-spaces: the state pressure grows linearly in k, and an
        infinitely thick body radiates at every frequency, so its emission
        integral diverges the same way with the opposite sign.  Only the
        grouped combination decays.  The finite split reported here keeps
        each convergent grouping with its driving temperature: ``f_ic`` is
        the field-state group (the combined integrand with every
        temperature at ``beta_phi``, where the divergent free-field parts
        cancel inside the integrand) and ``f_b`` is the bath-mismatch
        group (the coth-difference terms, exponentially convergent).  At
        equal temperatures ``f_b`` is exactly zero and ``f_ic`` alone is
        the equilibrium force.  The unsubtracted state integral is
        available as ``halfspace_ic_unregularized`` for callers who want
        the honest non-convergence.
    """
    for m, side in ((matL, "left"), (matR, "right")):
        if not _absorbing(m):
            raise NonConvergenceError(
                "half-space %s material does not absorb; the free-field "
                "pressure term is uncompensated and the state integral "
                "diverges" % side, partial=None, error=math.inf, panels=0)
    if not a > 0.0:
        raise ValueError("gap must be positive")
    for b in (beta_left, beta_right, beta_phi):
        if not b > 0.0:
            raise ValueError("inverse temperatures must be positive")
    tl = matL.as_tuple()
    tr = matR.as_tuple()
    bks = _breakpoints(matL, matR)

    def raw_ic(k):
        return core.halfspace_combined_integrand(k, a, tl, tr, beta_phi,
                                                 beta_phi, beta_phi)

    def sh_ic(k, sL, sR, sG):
        return core.halfspace_combined_integrand(k, a, tl, tr, beta_phi,
                                                 beta_phi, beta_phi, sG)

    f_ic, _ = _oscillatory_integral(raw_ic, sh_ic, spec, a, width=None,
                                    breakpoints=bks, naxes=1)
    if beta_left == beta_phi and beta_right == beta_phi:
        return f_ic, 0.0

    def raw_tot(k):
        return core.halfspace_combined_integrand(k, a, tl, tr, beta_left,
                                                 beta_right, beta_phi)

    def sh_tot(k, sL, sR, sG):
        return core.halfspace_combined_integrand(k, a, tl, tr, beta_left,
                                                 beta_right, beta_phi, sG)

    total, _ = _oscillatory_integral(raw_tot, sh_tot, spec, a, width=None,
                                     breakpoints=bks, naxes=1)
    return f_ic, total - f_ic


def halfspace_ic_unregularized(matL, a, beta_phi, spec):
    """Unsubtracted half-space state integral, kept for honesty.

    The integrand k * coth(beta k / 2) * (1 + |r|^2) tends to k at large k,
    so the improper integral does not exist; the marching quadrature
    exhausts its panel budget and raises NonConvergenceError.  Exposed so
    the divergence of the standalone state term is a demonstrable fact
    rather than a silent subtraction.
    """
    if not a > 0.0:
        raise ValueError("gap must be positive")
    if not beta_phi > 0.0:
        raise ValueError("beta_phi must be positive")
    tl = matL.as_tuple()

    def f(k):
        n = core.refractive_at(-1j * k, tl[0], tl[1], tl[2], tl[3])
        rn = (1.0 - n) / (1.0 + n)
        return k * core.coth_half(beta_phi, k) * (1.0 + abs(rn) ** 2)

    return integrate_semiinfinite(f, spec, lower=1e-12)


def band_excess_curve(cfg, omega_center, sigmas, spec):
    """Band-state force excesses for a ladder of band widths.

    For each width sigma the excess over the vacuum-weight force equals
    (cosh(2/sigma) - 1) times the window integral of k * [state bracket]
    over |k - omega_center| <= sigma/2.  The window integrals are nested,
    so they are assembled incrementally from non-overlapping strips and a
    full ladder costs a single pass over the widest window.

    Returns
    -------
    list of (excess, err)
        One pair per input sigma, in input order.
    """
    a, d = cfg.gap, cfg.width
    tl = cfg.left.as_tuple()
    tr = cfg.right.as_tuple()
    bks = _breakpoints(cfg.left, cfg.right)

    def g(k):
        return k * core.ic_bracket(k, a, d, tl, tr)

    def strip(lo, hi):
        if hi <= lo:
            return 0.0, 0.0
        inner = tuple(b for b in bks if lo < b < hi)
        return integrate_interval(g, lo, hi, spec, breakpoints=inner)

    order = sorted(range(len(sigmas)), key=lambda i: sigmas[i])
    out = [None] * len(sigmas)
    acc, eacc = 0.0, 0.0
    prev_lo = prev_hi = omega_center
    for i in order:
        sg = sigmas[i]
        state = FieldState.squeezed_band(sg, omega_center)
        lo, hi = band_edges(state)
        v1, e1 = strip(lo, min(prev_lo, hi))
        v2, e2 = strip(max(prev_hi, lo), hi)
        acc += v1 + v2
        eacc += e1 + e2
        prev_lo, prev_hi = lo, hi
        fac = math.cosh(2.0 / sg) - 1.0
        out[i] = (fac * acc, fac * eacc)
    return out


def bracket_sign_scan(cfg, k_max=60.0, samples=4096):
    """Sign of the state bracket sampled over (0, k_max].

    Returns +1 or -1 when every sample clear of rounding noise shares one
    sign, and 0 when signs mix (or nothing rises above noise).  Weight
    monotonicity arguments only hold on single-signed configurations, so
    callers must consult this scan before invoking them.
    """
    a, d = cfg.gap, cfg.width
    tl = cfg.left.as_tuple()
    tr = cfg.right.as_tuple()
    pos = neg = False
    for i in range(samples):
        k = k_max * (i + 1) / samples
        v = core.ic_bracket(k, a, d, tl, tr)
        if v > 1e-13:
            pos = True
        elif v < -1e-13:
            neg = True
        if pos and neg:
            return 0
    if pos:
        return 1
    if neg:
        return -1
    return 0
