//! Lattice-point counting in p-circles, weighted lattice sums, and their
//! continuous (volume-term) counterparts.
//!
//! All membership decisions against the boundary `|m|_p^p = s` go through
//! one classifier: exact integer arithmetic when `p` is a small integer
//! and `s` fits in 53 bits, otherwise floating-point comparison with a
//! relative guard band. Points inside the guard band count as *on* the
//! boundary; the strict counting convention excludes them, the closed one
//! includes them, and negative-power weights refuse to evaluate there.

#[allow(unused_imports)]
use num_traits::Float;

use alloc::vec::Vec;

use crate::config;
use crate::error::{Error, Result};
use crate::kahan::KahanSum;
use crate::pbessel::{jomega_normalized, EvalResult, Method, PExponent, PlanePoint};
use crate::quad::{integrate_01_singular, QuadResult};
use crate::special::{beta as beta_fn, gamma};

/// Counting convention for points within the guard band of the boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountMode {
    /// `|m|_p^p < s`: boundary points excluded. The sweep convention.
    Strict,
    /// `|m|_p^p <= s`: boundary points included.
    Closed,
}

/// A point of the integer lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LatticePoint {
    pub m1: i64,
    pub m2: i64,
}

/// One row of a counting sweep: everything needed to study the error term
/// `count - area` as a function of the radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRecord {
    pub p: f64,
    pub r: f64,
    pub count: u64,
    pub area: f64,
    pub error: f64,
}

/// A weighted lattice sum value; the imaginary part is zero in exact
/// arithmetic whenever the weight region is symmetric, and is returned so
/// callers can assert it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DSum {
    pub re: f64,
    pub im: f64,
    pub terms: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Class {
    In,
    On,
    Out,
}

/// Membership of `(m1, m2)` relative to `|m|_p^p = s`, plus the exact
/// weight argument `s - |m|_p^p` for the `In` case.
struct Classifier {
    p: f64,
    s: f64,
    guard: f64,
    /// Integer p small enough that |m|^p is exact in f64 across the range.
    exact: Option<i32>,
}

impl Classifier {
    fn new(pe: &PExponent, s: f64) -> Self {
        let p = pe.p();
        let exact = if p.fract() == 0.0 && p <= 32.0 && s <= 9.0e15 {
            Some(p as i32)
        } else {
            None
        };
        Self {
            p,
            s,
            guard: config::BOUNDARY_GUARD * s.abs().max(1.0),
            exact,
        }
    }

    fn norm_pow(&self, m1: i64, m2: i64) -> f64 {
        let a = (m1.abs() as f64, m2.abs() as f64);
        match self.exact {
            // Integer powers of lattice coordinates are exact until they
            // leave the 53-bit range, and anything beyond it is far
            // outside every s this path accepts.
            Some(k) => a.0.powi(k) + a.1.powi(k),
            None => a.0.powf(self.p) + a.1.powf(self.p),
        }
    }

    fn classify(&self, m1: i64, m2: i64) -> Class {
        let pp = self.norm_pow(m1, m2);
        if self.exact.is_some() {
            if pp < self.s {
                Class::In
            } else if pp == self.s {
                Class::On
            } else {
                Class::Out
            }
        } else {
            let d = pp - self.s;
            if d.abs() <= self.guard {
                Class::On
            } else if d < 0.0 {
                Class::In
            } else {
                Class::Out
            }
        }
    }
}

fn check_radius_budget(pe: &PExponent, s: f64) -> Result<i64> {
    if !(s >= 0.0) || !s.is_finite() {
        return Err(Error::Domain { what: "s must be finite and >= 0" });
    }
    if s.powf(2.0 / pe.p()) > config::ENUM_BUDGET {
        return Err(Error::Budget {
            what: "lattice enumeration would exceed the point budget",
        });
    }
    // Enumeration bound padded by one unit so guard-band decisions never
    // silently drop a boundary point.
    Ok(s.powf(1.0 / pe.p()).floor() as i64 + 1)
}

/// Number of lattice points with `|m|_p^p < s` (`Strict`) or `<= s`
/// (`Closed`).
pub fn count_lattice(pe: &PExponent, s: f64, mode: CountMode) -> Result<u64> {
    let m_max = check_radius_budget(pe, s)?;
    let cls = Classifier::new(pe, s);
    let include = |c: Class| matches!((c, mode), (Class::In, _) | (Class::On, CountMode::Closed));

    // Column scan: for each m1 find the largest admissible |m2| around the
    // floating-point estimate, then the column contributes 2b + 1 points.
    let mut total: u64 = 0;
    for m1 in 0..=m_max {
        if !include(cls.classify(m1, 0)) {
            if m1 == 0 {
                continue;
            }
            continue;
        }
        let rem = (s - cls.norm_pow(m1, 0)).max(0.0);
        let mut b = rem.powf(1.0 / cls.p).floor() as i64;
        while include(cls.classify(m1, b + 1)) {
            b += 1;
        }
        while b > 0 && !include(cls.classify(m1, b)) {
            b -= 1;
        }
        let col = (2 * b + 1) as u64;
        total += if m1 == 0 { col } else { 2 * col };
    }
    Ok(total)
}

/// `count - area` data point at radius `r` (so `s = r^p`), under the
/// strict counting convention.
pub fn error_term(pe: &PExponent, r: f64) -> Result<SweepRecord> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::Domain { what: "r must be finite and > 0" });
    }
    let s = r.powf(pe.p());
    let count = count_lattice(pe, s, CountMode::Strict)?;
    let area = pe.area_const() * r * r;
    Ok(SweepRecord {
        p: pe.p(),
        r,
        count,
        area,
        error: count as f64 - area,
    })
}

/// Fill `out` with the lattice points of the sup-norm shell `|m|_inf = q`
/// in a fixed deterministic order (top edge, bottom edge, then the two
/// side columns), so floating-point sums over shells are reproducible.
pub(crate) fn sup_shell(q: i64, out: &mut Vec<LatticePoint>) {
    out.clear();
    if q == 0 {
        out.push(LatticePoint { m1: 0, m2: 0 });
        return;
    }
    for m1 in -q..=q {
        out.push(LatticePoint { m1, m2: q });
    }
    for m1 in -q..=q {
        out.push(LatticePoint { m1, m2: -q });
    }
    for m2 in -q + 1..=q - 1 {
        out.push(LatticePoint { m1: q, m2 });
    }
    for m2 in -q + 1..=q - 1 {
        out.push(LatticePoint { m1: -q, m2 });
    }
}

/// Weighted lattice sum
///
/// ```text
/// D(beta; s, x) = 1/Gamma(beta+1) * sum_{|m|_p^p < s} (s - |m|_p^p)^beta
///                 * exp(2 pi i (x1 m1 + x2 m2)),
/// ```
///
/// summed in expanding sup-norm shells with a fixed intra-shell order, so
/// the result is bit-reproducible. Boundary points (within the guard
/// band) are excluded; with `beta < 0` their weight would be singular, so
/// they are a hard `DegenerateBoundary` error instead.
pub fn d_sum(pe: &PExponent, beta: f64, s: f64, x: (f64, f64)) -> Result<DSum> {
    if !(beta > -1.0) || !beta.is_finite() {
        return Err(Error::Domain { what: "beta must be finite and > -1" });
    }
    if !x.0.is_finite() || !x.1.is_finite() {
        return Err(Error::Domain { what: "x must be finite" });
    }
    let m_max = check_radius_budget(pe, s)?;
    let cls = Classifier::new(pe, s);
    let tau = 2.0 * core::f64::consts::PI;

    let mut re = KahanSum::new();
    let mut im = KahanSum::new();
    let mut terms: u64 = 0;
    let mut shell = Vec::new();
    for q in 0..=m_max {
        sup_shell(q, &mut shell);
        for pt in &shell {
            match cls.classify(pt.m1, pt.m2) {
                Class::In => {
                    let w = (s - cls.norm_pow(pt.m1, pt.m2)).powf(beta);
                    let phase = tau * (x.0 * pt.m1 as f64 + x.1 * pt.m2 as f64);
                    re += w * phase.cos();
                    im += w * phase.sin();
                    terms += 1;
                }
                Class::On => {
                    if beta < 0.0 {
                        return Err(Error::DegenerateBoundary);
                    }
                    // Strict convention: boundary contributes nothing
                    // (for beta > 0 its weight vanishes anyway).
                }
                Class::Out => {}
            }
        }
    }
    let g = gamma(beta + 1.0)?;
    Ok(DSum {
        re: re.value() / g,
        im: im.value() / g,
        terms,
    })
}

/// Continuous counterpart of [`d_sum`]: the same weight integrated over
/// the plane instead of summed over the lattice, in closed form through
/// the normalized order-`(beta+1)` function:
///
/// ```text
/// D_cal(beta; s, x) = s^(beta + 2/p) p^(beta+1) Gamma(1/p)^2
///                     * [J_{beta+1} / |.|^{beta+1}] (2 pi s^(1/p) x).
/// ```
pub fn d_cal_closed(
    pe: &PExponent,
    beta: f64,
    s: f64,
    x: (f64, f64),
    tol: f64,
) -> Result<EvalResult> {
    if !(beta > -1.0) || !beta.is_finite() {
        return Err(Error::Domain { what: "beta must be finite and > -1" });
    }
    if !(s > 0.0) || !s.is_finite() {
        return Err(Error::Domain { what: "s must be finite and > 0" });
    }
    let p = pe.p();
    let scale = 2.0 * core::f64::consts::PI * s.powf(1.0 / p);
    let eta = PlanePoint::new(scale * x.0, scale * x.1);
    let g = pe.gamma_inv_p();
    let pref = s.powf(beta + 2.0 / p) * p.powf(beta + 1.0) * g * g;
    let inner = jomega_normalized(pe, beta + 1.0, eta, tol)?;
    Ok(EvalResult {
        value: pref * inner.value,
        error_estimate: pref * inner.error_estimate,
        method: Method::Closed,
    })
}

/// Continuous counterpart by direct radial quadrature (the independent
/// route used to validate [`d_cal_closed`]): after reducing the plane
/// integral to the radius and substituting `v = (rho/s^(1/p))^p`,
///
/// ```text
/// D_cal = Gamma(1/p)^2 s^(beta+2/p) / Gamma(beta+1)
///         * int_0^1 v^(2/p-1) (1-v)^beta J_0(2 pi s^(1/p) v^(1/p) x) dv.
/// ```
///
/// The imaginary part of the defining plane integral vanishes identically
/// under this quadrant-folded representation (the integrand pairs `y` with
/// `-y` before any arithmetic), so only the real part is produced; the
/// defining integral's imaginary part is exercised separately in tests
/// through the 2-D rectangle rule.
pub fn d_cal_quad(
    pe: &PExponent,
    beta: f64,
    s: f64,
    x: (f64, f64),
    tol: f64,
) -> Result<QuadResult> {
    if !(beta > -1.0) || !beta.is_finite() {
        return Err(Error::Domain { what: "beta must be finite and > -1" });
    }
    if !(s > 0.0) || !s.is_finite() {
        return Err(Error::Domain { what: "s must be finite and > 0" });
    }
    if !(tol > 0.0) {
        return Err(Error::Domain { what: "tol must be > 0" });
    }
    let p = pe.p();
    let ip = 1.0 / p;
    let scale = 2.0 * core::f64::consts::PI * s.powf(ip);
    let inner_tol = (tol * 0.1).max(1e-13);
    let inner_failure: core::cell::Cell<Option<Error>> = core::cell::Cell::new(None);
    let max_inner_err = core::cell::Cell::new(0.0f64);
    let r = integrate_01_singular(
        |v, _| {
            let rho = scale * v.powf(ip);
            match crate::pbessel::j0p_quad(pe, PlanePoint::new(rho * x.0, rho * x.1), inner_tol) {
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
        beta,
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
    let g = pe.gamma_inv_p();
    let pref = g * g * s.powf(beta + 2.0 * ip) / gamma(beta + 1.0)?;
    let mass = beta_fn(2.0 * ip, beta + 1.0)?;
    Ok(QuadResult {
        value: pref * r.value,
        error_estimate: pref * (r.error_estimate + mass * max_inner_err.get()),
        evaluations: r.evaluations,
        converged: r.converged,
    })
}

/// Exact scaling consistency `D_cal(beta; s, x) =
/// s^(beta+2/p) D_cal(beta; 1, s^(1/p) x)`: returns the absolute
/// discrepancy between the two evaluations (zero up to evaluation error).
pub fn scaling_check(pe: &PExponent, beta: f64, s: f64, x: (f64, f64), tol: f64) -> Result<f64> {
    let lhs = d_cal_closed(pe, beta, s, x, tol)?.value;
    let u = s.powf(1.0 / pe.p());
    let rhs = s.powf(beta + 2.0 / pe.p()) * d_cal_closed(pe, beta, 1.0, (u * x.0, u * x.1), tol)?.value;
    Ok((lhs - rhs).abs())
}

/// Number of representations of `n` as an ordered sum of two squares
/// (signs counted), by trial-division factorization: zero if any prime
/// `3 mod 4` divides `n` to an odd power, else `4 prod (e_i + 1)` over the
/// primes `1 mod 4`.
pub fn two_squares_count(n: u64) -> u64 {
    if n == 0 {
        return 1;
    }
    let mut m = n;
    let mut mult: u64 = 1;
    while m % 2 == 0 {
        m /= 2;
    }
    let mut d: u64 = 3;
    while d * d <= m {
        if m % d == 0 {
            let mut e = 0u64;
            while m % d == 0 {
                m /= d;
                e += 1;
            }
            if d % 4 == 1 {
                mult *= e + 1;
            } else if e % 2 == 1 {
                return 0;
            }
        }
        d += 2;
    }
    if m > 1 {
        // Remaining factor is prime.
        if m % 4 == 1 {
            mult *= 2;
        } else {
            return 0;
        }
    }
    4 * mult
}
