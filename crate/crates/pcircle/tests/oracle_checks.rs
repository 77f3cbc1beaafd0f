//! Independent-oracle cross checks: every computation here reaches a
//! result by a route the library does not use internally (raw 2-D
//! quadrature, naive double-loop enumeration, fixed-grid Simpson), so a
//! shared bug cannot hide on both sides of an assertion.

use pcircle::analysis::beta_scan;
use pcircle::identity::kn_series_check;
use pcircle::lattice::{count_lattice, d_cal_closed, two_squares_count, CountMode};
use pcircle::quad::integrate_rect2d;
use pcircle::special::bessel_j;
use pcircle::PExponent;

fn pe(p: f64) -> PExponent {
    PExponent::new(p).expect("exponent in range")
}

/// The closed form of the continuous counterpart against the raw plane
/// integral over the bounding square, adaptive rectangles only — no
/// radial reduction, no kernel table. Also pins the imaginary part of the
/// defining integral at zero, which the radial route produces by
/// construction rather than by computation.
#[test]
fn plane_integral_matches_closed_form() {
    let p2 = pe(2.0);
    let (beta, s, x): (f64, f64, (f64, f64)) = (1.0, 1.5, (0.3, 0.1));
    let half = s.powf(0.5);
    let tau = 2.0 * core::f64::consts::PI;
    let weight = move |u: f64, v: f64| (s - u * u - v * v).max(0.0);

    let real = integrate_rect2d(
        |u, v| weight(u, v) * (tau * (x.0 * u + x.1 * v)).cos(),
        -half,
        half,
        -half,
        half,
        1e-7,
    )
    .expect("real part converges");
    let closed = d_cal_closed(&p2, beta, s, x, 1e-10).expect("closed form").value;
    // Gamma(beta + 1) = 1 here, so the raw integral needs no rescaling.
    assert!(
        (real.value - closed).abs() <= 1e-6,
        "plane integral {} vs closed form {}",
        real.value,
        closed
    );

    let imag = integrate_rect2d(
        |u, v| weight(u, v) * (tau * (x.0 * u + x.1 * v)).sin(),
        -half,
        half,
        -half,
        half,
        1e-7,
    )
    .expect("imaginary part converges");
    assert!(
        imag.value.abs() <= 1e-7,
        "imaginary part should vanish by symmetry, got {}",
        imag.value
    );
}

/// Column-scan counting against the dumbest possible oracle: a full
/// double loop over a bounding box with naive float comparison. Radii are
/// chosen away from any attainable boundary value so both comparisons
/// agree on every point.
#[test]
fn counts_match_naive_double_loop() {
    let cases: [(f64, f64); 4] = [
        (2.0, 150.3),
        (1.0, 17.7),
        (3.0, 900.4),
        (0.5, 5.3),
    ];
    for (p, s) in cases {
        let pex = pe(p);
        let m_box = (s.powf(1.0 / p)).ceil() as i64 + 1;
        let mut naive: u64 = 0;
        for m1 in -m_box..=m_box {
            for m2 in -m_box..=m_box {
                let norm = (m1.abs() as f64).powf(p) + (m2.abs() as f64).powf(p);
                if norm < s {
                    naive += 1;
                }
            }
        }
        let fast = count_lattice(&pex, s, CountMode::Strict).expect("countable");
        assert_eq!(fast, naive, "count mismatch at p = {p}, s = {s}");
    }
}

/// Cumulative two-squares counts against the circle count at a scale the
/// unit tests do not reach.
#[test]
fn two_squares_cumulative_at_depth() {
    let p2 = pe(2.0);
    for n_cap in [100u64, 1000] {
        let total: u64 = (1..=n_cap).map(two_squares_count).sum();
        let count = count_lattice(&p2, n_cap as f64 + 0.5, CountMode::Strict).expect("countable");
        assert_eq!(
            total,
            count - 1,
            "cumulative representation count vs circle count at N = {n_cap}"
        );
    }
}

/// At p = 2, beta = 0 the ring mass collapses to an elementary Bessel
/// integral: mass over [R, 2R] = 2 pi * int |J_1(2 pi rho)| d rho. Check
/// the scan's tensor rule against fixed-grid Simpson on that form.
#[test]
fn ring_mass_matches_direct_simpson() {
    let p2 = pe(2.0);
    let table = beta_scan(&p2, &[0.0], &[1.0, 2.0], 0.05).expect("scan completes");
    let row = table
        .rows
        .iter()
        .find(|r| r.radius == 1.0)
        .expect("requested radius present");

    let tau = 2.0 * core::f64::consts::PI;
    let n = 4000usize;
    let h = 1.0 / n as f64;
    let f = |rho: f64| tau * bessel_j(1.0, tau * rho).expect("classical eval").abs();
    let mut acc = f(1.0) + f(2.0);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(1.0 + i as f64 * h);
    }
    let simpson = acc * h / 3.0;
    let rel = (row.ring_mass - simpson).abs() / simpson;
    assert!(
        rel <= 0.02,
        "ring mass {} vs Simpson {} (rel {rel:.2e})",
        row.ring_mass,
        simpson
    );
}

/// Deep term-by-term comparison of the dual series against its classical
/// form — 30 shells, 3720 lattice points, every term within 1e-9.
#[test]
fn classical_series_cross_check_deep() {
    let chk = kn_series_check(2.0, 1.5, (0.1, 0.2), 30, 1e-10).expect("check completes");
    assert!(
        chk.max_term_deviation < 1e-9,
        "term deviation {:.2e}",
        chk.max_term_deviation
    );
    assert!(
        (chk.report.rhs_truncated - chk.classical_rhs).abs() < 1e-8,
        "route totals diverge: {} vs {}",
        chk.report.rhs_truncated,
        chk.classical_rhs
    );
}
