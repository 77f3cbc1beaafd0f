//! Generalized Bessel functions attached to the p-circle.
//!
//! `j0p_*` evaluate the order-zero function: the normalized cosine
//! transform of the arc measure on the unit p-circle quadrant,
//!
//! ```text
//! J_0(eta) = (2/p)^2 / Gamma(1/p)^2
//!            * int_0^1 cos(eta1 t^(1/p)) cos(eta2 (1-t)^(1/p))
//!                      t^(1/p-1) (1-t)^(1/p-1) dt.
//! ```
//!
//! `jomega_*` evaluate the order-`omega` lift
//!
//! ```text
//! J_omega(eta) = |eta|_p^omega / (p^(omega-1) Gamma(omega))
//!                * int_0^1 J_0(tau eta) tau (1 - tau^p)^(omega-1) dtau,
//! ```
//!
//! which at `p = 2` collapses to the classical `J_omega(|eta|_2)`. Each
//! function has two independent routes — adaptive quadrature and a double
//! power series — kept deliberately separate so they can check each other.
//! A third, table-driven route for bulk evaluation lives in [`kernel`].

#[allow(unused_imports)]
use num_traits::Float;

use core::cell::Cell;

use crate::config;
use crate::error::{Error, Result};
use crate::quad::integrate_01_singular;
use crate::special::{beta, gamma};

pub(crate) mod kernel;
mod series;

/// A validated p-circle exponent with the constants every evaluator needs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PExponent {
    p: f64,
    inv_p: f64,
    /// Gamma(1/p)
    gamma_inv_p: f64,
    /// (2/p)^2 / Gamma(1/p)^2 — the arc-measure normalization.
    c_p: f64,
    /// Area of the unit p-circle: 4 Gamma(1 + 1/p)^2 / Gamma(1 + 2/p).
    area: f64,
}

impl PExponent {
    pub fn new(p: f64) -> Result<Self> {
        if !(p > 0.0) || !p.is_finite() {
            return Err(Error::Domain { what: "p must be finite and > 0" });
        }
        let inv_p = 1.0 / p;
        let gamma_inv_p = gamma(inv_p)?;
        let c_p = (2.0 * inv_p) * (2.0 * inv_p) / (gamma_inv_p * gamma_inv_p);
        let g1 = gamma(1.0 + inv_p)?;
        let area = 4.0 * g1 * g1 / gamma(1.0 + 2.0 * inv_p)?;
        Ok(Self { p, inv_p, gamma_inv_p, c_p, area })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    /// Area of `{ |x1|^p + |x2|^p <= 1 }`; equals pi at `p = 2`.
    pub fn area_const(&self) -> f64 {
        self.area
    }

    pub(crate) fn inv_p(&self) -> f64 {
        self.inv_p
    }

    pub(crate) fn gamma_inv_p(&self) -> f64 {
        self.gamma_inv_p
    }

    pub(crate) fn c_p(&self) -> f64 {
        self.c_p
    }
}

/// A point of the frequency plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanePoint {
    pub eta1: f64,
    pub eta2: f64,
}

impl PlanePoint {
    pub fn new(eta1: f64, eta2: f64) -> Self {
        Self { eta1, eta2 }
    }

    pub fn sup_norm(&self) -> f64 {
        self.eta1.abs().max(self.eta2.abs())
    }

    /// `(|eta1|^p + |eta2|^p)^(1/p)`, scaled so extreme components cannot
    /// overflow the intermediate powers.
    pub fn p_norm(&self, p: f64) -> f64 {
        let a = self.eta1.abs();
        let b = self.eta2.abs();
        let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
        if hi == 0.0 {
            return 0.0;
        }
        hi * (1.0 + (lo / hi).powf(p)).powf(1.0 / p)
    }

    fn is_finite(&self) -> bool {
        self.eta1.is_finite() && self.eta2.is_finite()
    }
}

/// Which route produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Series,
    Quadrature,
    Closed,
}

/// A function value with an accuracy estimate and its provenance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult {
    pub value: f64,
    pub error_estimate: f64,
    pub method: Method,
}

fn check_eta(eta: PlanePoint) -> Result<()> {
    if !eta.is_finite() {
        return Err(Error::Domain { what: "eta must be finite" });
    }
    Ok(())
}

fn check_tol(tol: f64) -> Result<()> {
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(Error::Domain { what: "tol must be finite and > 0" });
    }
    Ok(())
}

/// Order-zero function by adaptive quadrature of the defining integral.
pub fn j0p_quad(pe: &PExponent, eta: PlanePoint, tol: f64) -> Result<EvalResult> {
    check_eta(eta)?;
    check_tol(tol)?;
    let ip = pe.inv_p;
    let r = integrate_01_singular(
        |t, omt| (eta.eta1 * t.powf(ip)).cos() * (eta.eta2 * omt.powf(ip)).cos(),
        ip - 1.0,
        ip - 1.0,
        tol,
    )?;
    Ok(EvalResult {
        value: pe.c_p * r.value,
        error_estimate: pe.c_p * r.error_estimate,
        method: Method::Quadrature,
    })
}

/// Order-zero function by the double power series. Valid inside the
/// sup-norm envelope `|eta|_inf <= 30`; the error estimate includes the
/// cancellation noise of the alternating blocks, which dominates near the
/// envelope edge.
pub fn j0p_series(pe: &PExponent, eta: PlanePoint, tol: f64) -> Result<EvalResult> {
    check_eta(eta)?;
    check_tol(tol)?;
    let out = series::evaluate(pe, 0.0, eta, tol, false)?;
    Ok(EvalResult {
        value: out.value,
        error_estimate: out.error_estimate,
        method: Method::Series,
    })
}

/// Order-`omega` function by nested adaptive quadrature of the defining
/// lift (inner integrals run at a tenth of `tol`). `omega = 0` falls back
/// to [`j0p_quad`].
pub fn jomega_quad(pe: &PExponent, omega: f64, eta: PlanePoint, tol: f64) -> Result<EvalResult> {
    check_eta(eta)?;
    check_tol(tol)?;
    if !(omega >= 0.0) || !omega.is_finite() {
        return Err(Error::Domain { what: "omega must be finite and >= 0" });
    }
    if omega == 0.0 {
        return j0p_quad(pe, eta, tol);
    }
    let pref = eta.p_norm(pe.p).powf(omega) / (pe.p.powf(omega - 1.0) * gamma(omega)?);
    if pref == 0.0 {
        // eta = 0 with omega > 0: the lift vanishes identically.
        return Ok(EvalResult { value: 0.0, error_estimate: 0.0, method: Method::Quadrature });
    }
    let ip = pe.inv_p;
    let inner_tol = (tol * 0.1).max(1e-13);
    let inner_failure: Cell<Option<Error>> = Cell::new(None);
    let max_inner_err: Cell<f64> = Cell::new(0.0);
    // Substituting u = tau^p turns the radial weight into the beta-type
    // pair (2/p - 1, omega - 1) handled natively by the quadrature.
    let r = integrate_01_singular(
        |u, _| {
            let tau = u.powf(ip);
            let scaled = PlanePoint::new(tau * eta.eta1, tau * eta.eta2);
            match j0p_quad(pe, scaled, inner_tol) {
                Ok(inner) => {
                    max_inner_err.set(max_inner_err.get().max(inner.error_estimate));
                    inner.value
                }
                Err(e) => {
                    inner_failure.set(Some(e));
                    f64::NAN
                }
            }
        },
        2.0 * ip - 1.0,
        omega - 1.0,
        tol,
    );
    let r = match r {
        Ok(r) => r,
        Err(outer_e) => {
            return Err(match inner_failure.take() {
                Some(inner_e) => inner_e,
                None => outer_e,
            })
        }
    };
    let weight_mass = beta(2.0 * ip, omega)?;
    Ok(EvalResult {
        value: pref * ip * r.value,
        error_estimate: pref * ip * (r.error_estimate + weight_mass * max_inner_err.get()),
        method: Method::Quadrature,
    })
}

/// Order-`omega` function by the double power series (same envelope and
/// error accounting as [`j0p_series`]).
pub fn jomega_series(pe: &PExponent, omega: f64, eta: PlanePoint, tol: f64) -> Result<EvalResult> {
    check_eta(eta)?;
    check_tol(tol)?;
    if !(omega >= 0.0) || !omega.is_finite() {
        return Err(Error::Domain { what: "omega must be finite and >= 0" });
    }
    let out = series::evaluate(pe, omega, eta, tol, false)?;
    Ok(EvalResult {
        value: out.value,
        error_estimate: out.error_estimate,
        method: Method::Series,
    })
}

/// The normalized function `J_omega(eta) / |eta|_p^omega`, continuous at
/// `eta = 0` with value `(1/p)^omega (2/p)^2 / Gamma(2/p + omega)`.
///
/// Near the origin the division is performed symbolically (the series
/// carries the normalization in its prefactor), so small `|eta|` loses no
/// accuracy. Away from the origin the series pays cancellation that grows
/// like `e^(|eta1| + |eta2|)`; its honest error estimate tracks that, and
/// the moment the estimate no longer meets the requested tolerance the
/// quadrature route takes over and divides directly — so the `method`
/// field reports which route actually produced the value.
pub fn jomega_normalized(
    pe: &PExponent,
    omega: f64,
    eta: PlanePoint,
    tol: f64,
) -> Result<EvalResult> {
    check_eta(eta)?;
    check_tol(tol)?;
    if !(omega >= 0.0) || !omega.is_finite() {
        return Err(Error::Domain { what: "omega must be finite and >= 0" });
    }
    if eta.sup_norm() <= config::SERIES_SUP_ENVELOPE {
        let out = series::evaluate(pe, omega, eta, tol, true)?;
        let origin_scale = (pe.inv_p()).powf(omega) * pe.c_p()
            * gamma(2.0 * pe.inv_p() + omega)?.recip();
        if out.error_estimate <= tol.max(1e-12) * origin_scale.max(out.value.abs()) {
            return Ok(EvalResult {
                value: out.value,
                error_estimate: out.error_estimate,
                method: Method::Series,
            });
        }
        // Cancellation ate the series' accuracy; fall through to the
        // quadrature (always safe here: large cancellation implies eta is
        // far from the origin, so the direct division is stable).
    }
    let norm = eta.p_norm(pe.p).powf(omega);
    let r = jomega_quad(pe, omega, eta, tol)?;
    Ok(EvalResult {
        value: r.value / norm,
        error_estimate: r.error_estimate / norm,
        method: Method::Quadrature,
    })
}

/// One-dimensional oscillatory companion function
///
/// ```text
/// K_nu(r; p) = 2 / (sqrt(pi) Gamma(nu + 1 - 1/p)) (r/2)^(p nu / 2)
///              * int_0^1 (1 - t^p)^(nu - 1/p) cos(r t) dt,
/// ```
///
/// which at `p = 2` is the Poisson representation of the classical
/// `J_nu(r)`. Only the oscillatory regime `p >= 1` is supported; the
/// weight exponent requires `nu > 1/p - 1`.
pub fn kratzel_j(p: f64, nu: f64, r: f64, tol: f64) -> Result<EvalResult> {
    check_tol(tol)?;
    if !(p >= 1.0) || !p.is_finite() {
        return Err(Error::Domain { what: "kratzel_j requires p >= 1" });
    }
    if !(nu > 1.0 / p - 1.0) || !nu.is_finite() {
        return Err(Error::Domain { what: "kratzel_j requires nu > 1/p - 1" });
    }
    if !(r >= 0.0) || !r.is_finite() {
        return Err(Error::Domain { what: "kratzel_j requires r >= 0" });
    }
    let a = nu - 1.0 / p;
    // (1 - t^p)/(1 - t) is smooth and positive on (0,1); computing it
    // through expm1/log1p keeps the right-endpoint power accurate, and the
    // residual weight (1-t)^a goes to the quadrature as an exponent.
    let ratio_pow = move |t: f64, omt: f64| -> f64 {
        if a == 0.0 {
            return 1.0;
        }
        let ln_t = if t <= 0.5 { t.ln() } else { (-omt).ln_1p() };
        let ratio = -(p * ln_t).exp_m1() / omt;
        ratio.powf(a)
    };
    let pref = 2.0 / (core::f64::consts::PI.sqrt() * gamma(nu + 1.0 - 1.0 / p)?)
        * (0.5 * r).powf(0.5 * p * nu);
    let rr = integrate_01_singular(|t, omt| ratio_pow(t, omt) * (r * t).cos(), 0.0, a, tol)?;
    Ok(EvalResult {
        value: pref * rr.value,
        error_estimate: pref * rr.error_estimate,
        method: Method::Quadrature,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::bessel_j;

    #[test]
    fn area_constant_matches_known_shapes() {
        assert!(
            (PExponent::new(2.0).unwrap().area_const() - core::f64::consts::PI).abs() < 5e-14,
            "p = 2 area must be pi"
        );
        assert!(
            (PExponent::new(1.0).unwrap().area_const() - 2.0).abs() < 5e-14,
            "p = 1 area (diamond) must be 2"
        );
        // p -> infinity approaches the square of area 4 from below.
        let a64 = PExponent::new(64.0).unwrap().area_const();
        assert!(a64 > 3.9 && a64 < 4.0, "p = 64 area {a64} should be just under 4");
    }

    #[test]
    fn rejects_invalid_p() {
        assert!(matches!(PExponent::new(0.0), Err(Error::Domain { .. })));
        assert!(matches!(PExponent::new(-2.0), Err(Error::Domain { .. })));
        assert!(matches!(PExponent::new(f64::INFINITY), Err(Error::Domain { .. })));
    }

    #[test]
    fn p_norm_is_stable_and_correct() {
        let pt = PlanePoint::new(3.0, 4.0);
        assert!((pt.p_norm(2.0) - 5.0).abs() < 1e-14, "Euclidean norm of (3,4)");
        assert!((pt.p_norm(1.0) - 7.0).abs() < 1e-14, "taxicab norm of (3,4)");
        let huge = PlanePoint::new(1e200, 1e200);
        let got = huge.p_norm(2.0);
        let expect = 1e200 * 2f64.sqrt();
        assert!(
            (got / expect - 1.0).abs() < 1e-14,
            "large components must not overflow: {got}"
        );
        assert_eq!(PlanePoint::new(0.0, 0.0).p_norm(0.5), 0.0, "zero point has zero norm");
    }

    #[test]
    fn j0_value_at_origin_is_gamma_ratio() {
        // J_0(0) = (2/p)^2 / Gamma(2/p).
        for &p in &[0.5, 1.0, 2.0, 3.0] {
            let pe = PExponent::new(p).unwrap();
            let expect = (2.0 / p) * (2.0 / p) / gamma(2.0 / p).unwrap();
            let q = j0p_quad(&pe, PlanePoint::new(0.0, 0.0), 1e-12).unwrap();
            let s = j0p_series(&pe, PlanePoint::new(0.0, 0.0), 1e-12).unwrap();
            assert!((q.value - expect).abs() < 1e-12, "quad origin value at p = {p}");
            assert!((s.value - expect).abs() < 1e-12, "series origin value at p = {p}");
        }
    }

    #[test]
    fn j0_reduces_to_classical_bessel_at_p2() {
        let pe = PExponent::new(2.0).unwrap();
        for &(e1, e2) in &[(0.0, 1.0), (3.0, 4.0), (2.5, -1.5), (0.3, 0.0), (5.0, 5.0)] {
            let eta = PlanePoint::new(e1, e2);
            let expect = bessel_j(0.0, eta.p_norm(2.0)).unwrap();
            let q = j0p_quad(&pe, eta, 1e-12).unwrap().value;
            let s = j0p_series(&pe, eta, 1e-12).unwrap().value;
            assert!((q - expect).abs() < 1e-10, "quad at ({e1},{e2}): {q} vs {expect}");
            assert!((s - expect).abs() < 1e-10, "series at ({e1},{e2}): {s} vs {expect}");
        }
    }

    #[test]
    fn series_and_quad_agree_away_from_p2() {
        for &p in &[0.5, 1.0, 3.0] {
            let pe = PExponent::new(p).unwrap();
            for &(e1, e2) in &[(1.0, 0.0), (2.0, 3.0), (4.5, 1.5)] {
                let eta = PlanePoint::new(e1, e2);
                let q = j0p_quad(&pe, eta, 1e-12).unwrap().value;
                let s = j0p_series(&pe, eta, 1e-12).unwrap().value;
                assert!(
                    (q - s).abs() < 1e-10,
                    "routes disagree at p = {p}, eta = ({e1},{e2}): {q} vs {s}"
                );
            }
        }
    }

    #[test]
    fn jomega_reduces_to_classical_bessel_at_p2() {
        let pe = PExponent::new(2.0).unwrap();
        for &omega in &[0.5, 1.0, 2.0] {
            for &(e1, e2) in &[(1.0, 1.0), (0.0, 4.0), (3.0, 2.0)] {
                let eta = PlanePoint::new(e1, e2);
                let expect = bessel_j(omega, eta.p_norm(2.0)).unwrap();
                let q = jomega_quad(&pe, omega, eta, 1e-11).unwrap().value;
                let s = jomega_series(&pe, omega, eta, 1e-12).unwrap().value;
                assert!(
                    (q - expect).abs() < 1e-9,
                    "quad omega {omega} at ({e1},{e2}): {q} vs {expect}"
                );
                assert!(
                    (s - expect).abs() < 1e-10,
                    "series omega {omega} at ({e1},{e2}): {s} vs {expect}"
                );
            }
        }
    }

    #[test]
    fn jomega_series_and_quad_agree_at_general_p() {
        for &(p, omega) in &[(0.5, 1.0), (1.0, 2.0), (3.0, 0.5)] {
            let pe = PExponent::new(p).unwrap();
            let eta = PlanePoint::new(2.0, 1.0);
            let q = jomega_quad(&pe, omega, eta, 1e-11).unwrap().value;
            let s = jomega_series(&pe, omega, eta, 1e-12).unwrap().value;
            assert!(
                (q - s).abs() < 1e-9,
                "routes disagree at p = {p}, omega = {omega}: {q} vs {s}"
            );
        }
    }

    #[test]
    fn jomega_vanishes_at_origin_for_positive_order() {
        let pe = PExponent::new(3.0).unwrap();
        let z = PlanePoint::new(0.0, 0.0);
        assert_eq!(jomega_quad(&pe, 1.5, z, 1e-10).unwrap().value, 0.0);
        let s = jomega_series(&pe, 1.5, z, 1e-12).unwrap().value;
        assert!(s.abs() < 1e-300, "series must vanish at the origin, got {s}");
    }

    #[test]
    fn normalized_limit_at_origin() {
        // J_omega(eta)/|eta|^omega -> (1/p)^omega (2/p)^2 / Gamma(2/p + omega).
        let cases = [(2.0, 1.0, 0.5), (1.0, 1.0, 2.0)];
        for &(p, omega, expect) in &cases {
            let pe = PExponent::new(p).unwrap();
            let v = jomega_normalized(&pe, omega, PlanePoint::new(0.0, 0.0), 1e-12).unwrap();
            assert!(
                (v.value - expect).abs() < 1e-13,
                "origin limit at p = {p}, omega = {omega}: {} vs {expect}",
                v.value
            );
        }
        // General (p, omega) against the gamma formula.
        for &(p, omega) in &[(0.5, 2.5), (3.0, 0.75)] {
            let pe = PExponent::new(p).unwrap();
            let expect = (1.0 / p).powf(omega) * (2.0 / p) * (2.0 / p)
                / gamma(2.0 / p + omega).unwrap();
            let v = jomega_normalized(&pe, omega, PlanePoint::new(0.0, 0.0), 1e-12).unwrap();
            assert!(
                (v.value - expect).abs() < 1e-12 * expect.abs(),
                "origin limit at p = {p}, omega = {omega}"
            );
        }
    }

    #[test]
    fn normalized_is_continuous_near_origin() {
        let pe = PExponent::new(1.0).unwrap();
        let at_zero = jomega_normalized(&pe, 1.0, PlanePoint::new(0.0, 0.0), 1e-12)
            .unwrap()
            .value;
        let nearby = jomega_normalized(&pe, 1.0, PlanePoint::new(1e-8, 1e-8), 1e-12)
            .unwrap()
            .value;
        assert!(
            (at_zero - nearby).abs() < 1e-7,
            "normalized value jumps near the origin: {at_zero} vs {nearby}"
        );
    }

    #[test]
    fn symmetry_under_component_swap_and_sign() {
        let pe = PExponent::new(3.0).unwrap();
        let base = j0p_series(&pe, PlanePoint::new(2.0, 5.0), 1e-12).unwrap().value;
        for pt in [
            PlanePoint::new(5.0, 2.0),
            PlanePoint::new(-2.0, 5.0),
            PlanePoint::new(2.0, -5.0),
        ] {
            let v = j0p_series(&pe, pt, 1e-12).unwrap().value;
            assert!(
                (v - base).abs() < 1e-13,
                "symmetry broken at ({}, {}): {v} vs {base}",
                pt.eta1,
                pt.eta2
            );
        }
    }

    #[test]
    fn series_rejects_eta_outside_envelope() {
        let pe = PExponent::new(2.0).unwrap();
        let r = j0p_series(&pe, PlanePoint::new(31.0, 0.0), 1e-10);
        assert!(
            matches!(r, Err(Error::Domain { .. })),
            "sup norm 31 exceeds the series envelope, got {r:?}"
        );
    }

    #[test]
    fn kratzel_reduces_to_classical_bessel_at_p2() {
        for &(nu, r) in &[(0.5, 1.0), (1.0, 5.0), (2.0, 11.0), (1.5, 0.25)] {
            let expect = bessel_j(nu, r).unwrap();
            let got = kratzel_j(2.0, nu, r, 1e-12).unwrap().value;
            assert!(
                (got - expect).abs() < 1e-11,
                "p = 2 companion at nu = {nu}, r = {r}: {got} vs {expect}"
            );
        }
    }

    #[test]
    fn kratzel_domain_gates() {
        assert!(matches!(kratzel_j(0.5, 1.0, 1.0, 1e-10), Err(Error::Domain { .. })), "p < 1");
        assert!(
            matches!(kratzel_j(4.0, -0.8, 1.0, 1e-10), Err(Error::Domain { .. })),
            "nu below 1/p - 1"
        );
        assert!(matches!(kratzel_j(2.0, 1.0, -1.0, 1e-10), Err(Error::Domain { .. })), "r < 0");
        // nu just above the edge still works.
        assert!(kratzel_j(4.0, -0.7, 1.0, 1e-10).is_ok());
    }

    #[test]
    fn kratzel_oscillates_with_bounded_amplitude_at_p4() {
        // Sanity on the p > 2 branch: values stay bounded and change sign.
        let mut signs = 0;
        let mut prev = kratzel_j(4.0, 0.5, 0.5, 1e-10).unwrap().value;
        let mut r = 1.5;
        while r < 25.0 {
            let v = kratzel_j(4.0, 0.5, r, 1e-10).unwrap().value;
            assert!(v.abs() < 10.0, "runaway amplitude at r = {r}: {v}");
            if v * prev < 0.0 {
                signs += 1;
            }
            prev = v;
            r += 1.0;
        }
        assert!(signs >= 3, "expected several sign changes, saw {signs}");
    }
}
