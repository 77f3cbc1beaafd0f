//! Empirical growth and decay analysis.
//!
//! Two tools: a log-log exponent fit for counting-error sweeps (with an
//! upper-envelope variant that is robust to the wild oscillation of the
//! error term), and a ring-mass scan that classifies for which weights
//! `beta` the continuous transform decays fast enough to be absolutely
//! integrable at infinity.

#[allow(unused_imports)]
use num_traits::Float;

use alloc::vec::Vec;

use crate::config;
use crate::error::{Error, Result};
use crate::lattice::SweepRecord;
use crate::pbessel::kernel::{build_panels, gl_on, JomegaBatch};
use crate::pbessel::{PExponent, PlanePoint};

/// Least-squares exponent fit of `|error|` against `r` on log-log axes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentFit {
    /// Plain least-squares slope through all retained samples.
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    /// Slope through per-window maxima (windows grow geometrically), i.e.
    /// the growth rate of the upper envelope. For a heavily oscillating
    /// quantity this is the meaningful exponent; the plain slope is biased
    /// low by near-zero dips.
    pub window_max_slope: f64,
    /// Samples that survived the magnitude floor.
    pub n_samples: usize,
}

/// One ring integral: the unsigned mass of the continuous transform over
/// `radius <= |y|_p <= 2 radius` at unit scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetaScanRow {
    pub beta: f64,
    pub radius: f64,
    pub ring_mass: f64,
    /// Difference between the two rule resolutions; honest to the extent
    /// the coarse rule is independent enough.
    pub error_estimate: f64,
    pub converged: bool,
}

/// Per-`beta` decay classification across all scanned radii.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetaScanSummary {
    pub beta: f64,
    /// Slope of `ln(ring mass)` against `ln(radius)`.
    pub decay_exponent: f64,
    /// Ring masses decay: the transform is absolutely integrable at
    /// infinity along this diagnostic.
    pub decaying: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BetaScanTable {
    /// Beta-major, radius-minor, in input order.
    pub rows: Vec<BetaScanRow>,
    pub summaries: Vec<BetaScanSummary>,
}

/// Slope, intercept, and coefficient of determination. Caller guarantees
/// at least two distinct abscissas.
fn least_squares(pts: &[(f64, f64)]) -> (f64, f64, f64) {
    let n = pts.len() as f64;
    let mut sx = 0.0;
    let mut sy = 0.0;
    for &(x, y) in pts {
        sx += x;
        sy += y;
    }
    let mx = sx / n;
    let my = sy / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    let mut syy = 0.0;
    for &(x, y) in pts {
        let dx = x - mx;
        let dy = y - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res = (syy - slope * sxy).max(0.0);
    let r_squared = if syy > 0.0 { 1.0 - ss_res / syy } else { 1.0 };
    (slope, intercept, r_squared)
}

/// Fit the growth exponent of a counting-error sweep. Records with
/// `|error|` at or below the magnitude floor are discarded (a sweep radius
/// that lands almost exactly on the smooth term carries no slope
/// information, only noise), and at least `FIT_MIN_SAMPLES` must survive.
pub fn fit_growth_exponent(records: &[SweepRecord]) -> Result<ExponentFit> {
    let mut pts: Vec<(f64, f64)> = records
        .iter()
        .filter(|rec| {
            rec.r > 0.0 && rec.r.is_finite() && rec.error.abs() > config::SLOPE_FLOOR
        })
        .map(|rec| (rec.r.ln(), rec.error.abs().ln()))
        .collect();
    if pts.len() < config::FIT_MIN_SAMPLES {
        return Err(Error::InsufficientData {
            needed: config::FIT_MIN_SAMPLES,
            got: pts.len(),
        });
    }
    pts.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite by construction"));
    if !(pts[pts.len() - 1].0 - pts[0].0 > 0.0) {
        return Err(Error::Domain {
            what: "sweep radii must span a nontrivial range",
        });
    }
    let (slope, intercept, r_squared) = least_squares(&pts);

    let w = config::WINDOW_RATIO.ln();
    let x0 = pts[0].0;
    let mut maxima: Vec<(f64, f64)> = Vec::new();
    let mut cur: i64 = i64::MIN;
    for &(x, y) in &pts {
        let idx = ((x - x0) / w).floor() as i64;
        if idx != cur {
            maxima.push((x, y));
            cur = idx;
        } else if let Some(last) = maxima.last_mut() {
            if y > last.1 {
                *last = (x, y);
            }
        }
    }
    let window_max_slope = if maxima.len() >= 3 {
        least_squares(&maxima).0
    } else {
        // Too few windows to form an envelope; fall back to the plain fit.
        slope
    };

    Ok(ExponentFit {
        slope,
        intercept,
        r_squared,
        window_max_slope,
        n_samples: pts.len(),
    })
}

/// Angular node of the sector rule: unit direction on the p-circle plus
/// the Gauss weight with the angular Jacobian factor folded in.
struct ThetaNode {
    d1: f64,
    d2: f64,
    w: f64,
}

/// Gauss rule over the sector angle `[0, pi/4]`, graded so the transform's
/// phase moves at most `budget` radians per panel at the outermost radius.
/// The parametrization `y = rho (cos^(2/p) t, sin^(2/p) t)` keeps
/// `|y|_p = rho` exactly; its Jacobian contributes `(cos t sin t)^(2/p-1)`,
/// which is singular or non-analytic at `t = 0` unless the exponent is a
/// non-negative integer, hence the conditional left-edge refinement.
fn theta_rule(p: f64, rho_max: f64, budget: f64) -> Vec<ThetaNode> {
    let e = 2.0 / p;
    let a = e - 1.0;
    let hi = core::f64::consts::FRAC_PI_4;
    let d = |t: f64| -> (f64, f64) { (t.cos().powf(e), t.sin().powf(e)) };
    let span = move |t1: f64, t2: f64| -> f64 {
        let (c1, s1) = d(t1);
        let (c2, s2) = d(t2);
        2.0 * core::f64::consts::PI * rho_max * ((c1 - c2) + (s2 - s1))
    };
    let min_left = if a >= 0.0 && a.fract() == 0.0 {
        hi
    } else {
        hi * 1e-12
    };
    let mut nodes = Vec::new();
    for (pa, pb) in build_panels(0.0, hi, span, budget, min_left) {
        for (t, glw) in gl_on(pa, pb) {
            let c = t.cos();
            let s = t.sin();
            let wt = if a == 0.0 { glw } else { glw * (c * s).powf(a) };
            nodes.push(ThetaNode {
                d1: c.powf(e),
                d2: s.powf(e),
                w: wt,
            });
        }
    }
    nodes
}

/// Unsigned mass of the transform over one ring, by a tensor rule.
fn ring_mass(
    pref: f64,
    batch: &JomegaBatch,
    theta: &[ThetaNode],
    radius: f64,
    dir_max: f64,
    budget: f64,
) -> f64 {
    let tau = 2.0 * core::f64::consts::PI;
    let lo = radius;
    let hi = 2.0 * radius;
    let span = move |a: f64, b: f64| tau * dir_max * (b - a);
    let mut rho_nodes: Vec<(f64, f64)> = Vec::new();
    for (pa, pb) in build_panels(lo, hi, span, budget, hi - lo) {
        rho_nodes.extend(gl_on(pa, pb));
    }
    let mut acc = 0.0f64;
    for tn in theta {
        for &(rho, wr) in &rho_nodes {
            let eta = PlanePoint::new(tau * rho * tn.d1, tau * rho * tn.d2);
            acc += tn.w * wr * rho * (pref * batch.eval_normalized(eta)).abs();
        }
    }
    acc
}

/// Scan ring masses of the continuous transform at unit scale over a grid
/// of weights and radii, and classify each weight by its decay exponent.
/// Rings use the eight-fold symmetry of the integrand, a phase-graded
/// tensor rule, and the table-driven bulk evaluator at a scan-grade
/// accuracy (a few digits per ring, which the coarse/fine comparison
/// reports honestly).
pub fn beta_scan(
    pe: &PExponent,
    betas: &[f64],
    radii: &[f64],
    tol: f64,
) -> Result<BetaScanTable> {
    if betas.is_empty() {
        return Err(Error::Domain { what: "need at least one beta" });
    }
    if radii.len() < 2 {
        return Err(Error::InsufficientData { needed: 2, got: radii.len() });
    }
    for &b in betas {
        if !b.is_finite() || !(b > -1.0) {
            return Err(Error::Domain { what: "beta must be finite and > -1" });
        }
    }
    let mut r_min = f64::INFINITY;
    let mut r_max: f64 = 0.0;
    for &r in radii {
        if !r.is_finite() || !(r > 0.0) {
            return Err(Error::Domain { what: "radii must be finite and > 0" });
        }
        r_min = r_min.min(r);
        r_max = r_max.max(r);
    }
    if !(r_max > r_min) {
        return Err(Error::Domain { what: "radii must span a nontrivial range" });
    }
    if !(tol > 0.0) {
        return Err(Error::Domain { what: "tol must be > 0" });
    }

    let p = pe.p();
    let g = pe.gamma_inv_p();
    // sup over directions of d1 + d2, attained at an endpoint of the sector.
    let dir_max = 1.0f64.max(2f64.powf(1.0 - 1.0 / p));
    let rho_max = 2.0 * r_max;
    let phi = 2.0 * core::f64::consts::PI * rho_max * dir_max * 1.001 + 1.0;
    let jac = 8.0 * (2.0 / p);

    const FINE: f64 = 8.0;
    const COARSE: f64 = 16.0;
    let theta_fine = theta_rule(p, rho_max, FINE);
    let theta_coarse = theta_rule(p, rho_max, COARSE);

    let mut rows = Vec::with_capacity(betas.len() * radii.len());
    let mut summaries = Vec::with_capacity(betas.len());
    for &beta in betas {
        let omega = beta + 1.0;
        let batch = JomegaBatch::build_graded(pe, omega, phi, None, 12.0)?;
        let pref = p.powf(omega) * g * g;
        let mut fit_pts: Vec<(f64, f64)> = Vec::with_capacity(radii.len());
        for &radius in radii {
            let fine = jac * ring_mass(pref, &batch, &theta_fine, radius, dir_max, FINE);
            let coarse = jac * ring_mass(pref, &batch, &theta_coarse, radius, dir_max, COARSE);
            let est = (fine - coarse).abs();
            rows.push(BetaScanRow {
                beta,
                radius,
                ring_mass: fine,
                error_estimate: est,
                converged: est <= tol * fine.abs() + 1e-14,
            });
            fit_pts.push((radius.ln(), fine.max(f64::MIN_POSITIVE).ln()));
        }
        let (decay_exponent, _, _) = least_squares(&fit_pts);
        summaries.push(BetaScanSummary {
            beta,
            decay_exponent,
            decaying: decay_exponent < config::DECAY_SLOPE_CUTOFF,
        });
    }
    Ok(BetaScanTable { rows, summaries })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(r: f64, error: f64) -> SweepRecord {
        SweepRecord { p: 2.0, r, count: 0, area: 0.0, error }
    }

    #[test]
    fn recovers_exact_power_law() {
        let records: Vec<SweepRecord> = (0..20)
            .map(|k| {
                let r = 1.1f64.powi(k) * 3.0;
                rec(r, 2.7 * r.powf(0.83))
            })
            .collect();
        let fit = fit_growth_exponent(&records).unwrap();
        assert!((fit.slope - 0.83).abs() < 1e-12, "slope {}", fit.slope);
        assert!((fit.intercept - 2.7f64.ln()).abs() < 1e-12, "intercept {}", fit.intercept);
        assert!(fit.r_squared > 1.0 - 1e-12, "r^2 {}", fit.r_squared);
        assert!(
            (fit.window_max_slope - 0.83).abs() < 1e-12,
            "envelope slope {} should match on noiseless data",
            fit.window_max_slope
        );
        assert_eq!(fit.n_samples, 20);
    }

    #[test]
    fn sign_of_error_is_irrelevant() {
        let records: Vec<SweepRecord> = (0..15)
            .map(|k| {
                let r = 1.2f64.powi(k) * 2.0;
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                rec(r, sign * r.powf(0.5))
            })
            .collect();
        let fit = fit_growth_exponent(&records).unwrap();
        assert!((fit.slope - 0.5).abs() < 1e-12, "slope {}", fit.slope);
    }

    #[test]
    fn floor_filters_and_insufficient_data() {
        let mut records: Vec<SweepRecord> = (0..12)
            .map(|k| rec(1.3f64.powi(k) * 2.0, (1.3f64.powi(k) * 2.0).powf(0.7)))
            .collect();
        records.push(rec(100.0, 0.0));
        records.push(rec(101.0, 1e-12));
        let fit = fit_growth_exponent(&records).unwrap();
        assert_eq!(fit.n_samples, 12, "floor must drop the two degenerate rows");

        let too_few: Vec<SweepRecord> = records.into_iter().take(5).collect();
        assert!(matches!(
            fit_growth_exponent(&too_few),
            Err(Error::InsufficientData { needed, got: 5 }) if needed == config::FIT_MIN_SAMPLES
        ));
    }

    #[test]
    fn envelope_ignores_deep_dips() {
        // Upper envelope grows like r^0.9 but two of every three samples
        // collapse toward r^0.1; the plain fit averages, the window fit
        // should track the envelope.
        let records: Vec<SweepRecord> = (0..80)
            .map(|k| {
                let r = 1.05f64.powi(k) * 5.0;
                let expo = if k % 3 == 0 { 0.9 } else { 0.1 };
                rec(r, 0.4 * r.powf(expo))
            })
            .collect();
        let fit = fit_growth_exponent(&records).unwrap();
        assert!(
            fit.window_max_slope > 0.8,
            "envelope slope {} should stay near 0.9",
            fit.window_max_slope
        );
        assert!(
            fit.slope < 0.6,
            "plain slope {} should be dragged down by the dips",
            fit.slope
        );
    }

    #[test]
    fn scan_classifies_decay_at_unit_disc() {
        let pe = PExponent::new(2.0).unwrap();
        let table = beta_scan(&pe, &[0.0, 2.0], &[1.0, 2.0], 0.05).unwrap();
        assert_eq!(table.rows.len(), 4);
        assert_eq!(table.summaries.len(), 2);
        for row in &table.rows {
            assert!(row.converged, "ring at beta {} radius {} did not converge: est {:.2e} vs mass {:.3e}", row.beta, row.radius, row.error_estimate, row.ring_mass);
            assert!(row.ring_mass > 0.0);
        }
        let s0 = &table.summaries[0];
        let s2 = &table.summaries[1];
        // Ring mass scales like radius^(1/2 - beta) in the plane at p = 2.
        assert!(!s0.decaying, "beta = 0 must be flagged non-decaying (slope {})", s0.decay_exponent);
        assert!(s2.decaying, "beta = 2 must be flagged decaying (slope {})", s2.decay_exponent);
        assert!((s0.decay_exponent - 0.5).abs() < 0.2, "slope {}", s0.decay_exponent);
        assert!((s2.decay_exponent + 1.5).abs() < 0.3, "slope {}", s2.decay_exponent);
    }

    #[test]
    fn scan_rejects_degenerate_grids() {
        let pe = PExponent::new(2.0).unwrap();
        assert!(matches!(
            beta_scan(&pe, &[], &[1.0, 2.0], 0.05),
            Err(Error::Domain { .. })
        ));
        assert!(matches!(
            beta_scan(&pe, &[1.0], &[1.0], 0.05),
            Err(Error::InsufficientData { needed: 2, got: 1 })
        ));
        assert!(matches!(
            beta_scan(&pe, &[1.0], &[1.0, -2.0], 0.05),
            Err(Error::Domain { .. })
        ));
    }
}
