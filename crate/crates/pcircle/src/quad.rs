//! Adaptive tanh-sinh (double-exponential) quadrature on `(0, 1)` with
//! algebraic endpoint weights, and an iterated 2-D rectangle rule built on
//! top of it.
//!
//! The node map is `t(v) = 1/2 (1 + tanh((pi/2) sinh v))`; trapezoid sums
//! in `v` converge geometrically in the level count for integrands that
//! are analytic inside `(0, 1)`, including ones with integrable algebraic
//! endpoint singularities — which is why every singular integral in this
//! crate is routed through here.

#[allow(unused_imports)]
use num_traits::Float;

use core::cell::Cell;

use crate::config::MAX_QUAD_EVALS;
use crate::error::{Error, Result};
use crate::kahan::KahanSum;

/// Outcome of one quadrature call.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    /// Conservative estimate of `|value - truth|` (level-to-level delta,
    /// floored at the rounding noise of the weighted node sum).
    pub error_estimate: f64,
    pub evaluations: usize,
    pub converged: bool,
}

const MAX_LEVEL: u32 = 14;

/// One tanh-sinh node: abscissa pair `(t, 1-t)` both computed without
/// cancellation, and the log of the pure weight factors.
struct Node {
    t: f64,
    omt: f64,
    ln_t: f64,
    ln_omt: f64,
    cosh_v: f64,
}

fn node(v: f64) -> Node {
    let u = core::f64::consts::FRAC_PI_2 * v.sinh();
    // For u >= 0: t = 1/(1+e^{-2u}) -> 1, 1-t = e^{-2u}/(1+e^{-2u}) -> 0.
    let e2 = (-2.0 * u.abs()).exp();
    let big = 1.0 / (1.0 + e2);
    // Floored at the smallest normal so an integrand continuous at the
    // endpoint still sees a representable coordinate; nodes this deep only
    // occur when a weight exponent is within ~0.07 of -1, where the true
    // log weight (kept analytic in ln_small) has not yet decayed. The floor
    // changes f's argument only below e^-745, invisible at any tolerance.
    let small = (e2 / (1.0 + e2)).max(f64::MIN_POSITIVE);
    let ln_big = -e2.ln_1p();
    let ln_small = -2.0 * u.abs() - e2.ln_1p();
    let cosh_v = v.cosh();
    if u >= 0.0 {
        Node { t: big, omt: small, ln_t: ln_big, ln_omt: ln_small, cosh_v }
    } else {
        Node { t: small, omt: big, ln_t: ln_small, ln_omt: ln_big, cosh_v }
    }
}

/// Integrate `f(t) * t^sl * (1-t)^sr` over `(0, 1)`.
///
/// `f` receives `(t, 1 - t)` with both arguments computed stably, so an
/// integrand can resolve behavior near either endpoint without
/// cancellation; the algebraic weights themselves are applied internally
/// in log space and must not be included in `f`. Requires `sl > -1`,
/// `sr > -1` (integrability) and `tol > 0`, interpreted relative to
/// `max(1, |value|)`.
///
/// Errors with `NonConvergence` when the level/evaluation budget runs out
/// before the tolerance is met, and `Domain` if `f` produces a non-finite
/// value at a node with non-vanishing weight.
pub fn integrate_01_singular<F>(f: F, sl: f64, sr: f64, tol: f64) -> Result<QuadResult>
where
    F: Fn(f64, f64) -> f64,
{
    if !(sl > -1.0) || !sl.is_finite() || !(sr > -1.0) || !sr.is_finite() {
        return Err(Error::Domain {
            what: "endpoint exponents must be finite and > -1",
        });
    }
    if !(tol > 0.0) {
        return Err(Error::Domain { what: "tol must be > 0" });
    }

    // Where each side's weight has decayed past e^-50: beyond that v the
    // double-exponential factor (1+sigma)*pi*sinh(v) kills every term.
    let vmax_for = |sigma: f64| (50.0 / (core::f64::consts::PI * (1.0 + sigma))).asinh() + 0.5;
    let vmax_pos = vmax_for(sr); // v > 0 drives t -> 1, weight (1-t)^(1+sr)
    let vmax_neg = vmax_for(sl);

    let mut sum = KahanSum::new(); // cumulative unweighted node sum
    let mut abs_sum = KahanSum::new();
    let evals: Cell<usize> = Cell::new(0);

    let eval_at = |v: f64, sum: &mut KahanSum, abs_sum: &mut KahanSum| -> Result<()> {
        let n = node(v);
        let lw = (1.0 + sl) * n.ln_t + (1.0 + sr) * n.ln_omt;
        if lw < -760.0 {
            return Ok(()); // weight underflows; f never sees this node
        }
        let w = core::f64::consts::PI * n.cosh_v * lw.exp();
        let fv = f(n.t, n.omt);
        evals.set(evals.get() + 1);
        if !fv.is_finite() {
            return Err(Error::Domain {
                what: "integrand returned a non-finite value",
            });
        }
        *sum += w * fv;
        *abs_sum += (w * fv).abs();
        Ok(())
    };

    // Level 0: spacing 1. Later levels add the odd multiples of h.
    eval_at(0.0, &mut sum, &mut abs_sum)?;
    let mut j = 1.0;
    while j <= vmax_pos {
        eval_at(j, &mut sum, &mut abs_sum)?;
        j += 1.0;
    }
    j = 1.0;
    while j <= vmax_neg {
        eval_at(-j, &mut sum, &mut abs_sum)?;
        j += 1.0;
    }

    let mut prev = sum.value(); // times h = 1
    let mut last_delta = f64::INFINITY;
    for level in 1..=MAX_LEVEL {
        let h = 0.5f64.powi(level as i32);
        let mut k = 1.0;
        loop {
            let v = k * h;
            let mut hit = false;
            if v <= vmax_pos {
                eval_at(v, &mut sum, &mut abs_sum)?;
                hit = true;
            }
            if v <= vmax_neg {
                eval_at(-v, &mut sum, &mut abs_sum)?;
                hit = true;
            }
            if !hit {
                break;
            }
            k += 2.0; // odd multiples only: even ones were coarser nodes
        }

        let value = h * sum.value();
        let delta = (value - prev).abs();
        let floor = 8.0 * f64::EPSILON * h * abs_sum.value();
        let scale = value.abs().max(1.0);
        if level >= 2 && (delta <= tol * scale || delta <= floor) {
            return Ok(QuadResult {
                value,
                error_estimate: delta.max(floor),
                evaluations: evals.get(),
                converged: true,
            });
        }
        prev = value;
        last_delta = delta;
        if evals.get() > MAX_QUAD_EVALS {
            break;
        }
    }

    Err(Error::NonConvergence {
        estimate: last_delta,
        tol,
    })
}

/// Integrate `f(x, y)` over the rectangle `[x0, x1] x [y0, y1]` by
/// iterated tanh-sinh quadrature (inner integral along `x` at one tenth of
/// the outer tolerance). Intended for smooth integrands; endpoint behavior
/// is still handled double-exponentially on each axis.
pub fn integrate_rect2d<F>(f: F, x0: f64, x1: f64, y0: f64, y1: f64, tol: f64) -> Result<QuadResult>
where
    F: Fn(f64, f64) -> f64,
{
    if !(x0 < x1) || !(y0 < y1) || !x0.is_finite() || !x1.is_finite() || !y0.is_finite() || !y1.is_finite() {
        return Err(Error::Domain {
            what: "rectangle bounds must be finite with x0 < x1, y0 < y1",
        });
    }
    if !(tol > 0.0) {
        return Err(Error::Domain { what: "tol must be > 0" });
    }
    let jac_x = x1 - x0;
    let jac_y = y1 - y0;

    let inner_err: Cell<f64> = Cell::new(0.0);
    let inner_evals: Cell<usize> = Cell::new(0);
    let failure: Cell<Option<Error>> = Cell::new(None);

    let outer = integrate_01_singular(
        |ty, _| {
            let y = y0 + jac_y * ty;
            match integrate_01_singular(|tx, _| f(x0 + jac_x * tx, y), 0.0, 0.0, tol * 0.1) {
                Ok(r) => {
                    inner_err.set(inner_err.get().max(jac_x * r.error_estimate));
                    inner_evals.set(inner_evals.get() + r.evaluations);
                    jac_x * r.value
                }
                Err(e) => {
                    failure.set(Some(e));
                    f64::NAN
                }
            }
        },
        0.0,
        0.0,
        tol,
    );

    match outer {
        Ok(r) => Ok(QuadResult {
            value: jac_y * r.value,
            error_estimate: jac_y * (r.error_estimate + inner_err.get()),
            evaluations: inner_evals.get(),
            converged: r.converged,
        }),
        Err(outer_e) => Err(match failure.take() {
            Some(inner_e) => inner_e,
            None => outer_e,
        }),
    }
}
