use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Failure modes shared by every numerical routine in the crate.
///
/// `Domain` is reserved for arguments outside a routine's documented
/// domain; everything else describes a computation that started but could
/// not be carried to the requested accuracy or size.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Argument outside the routine's domain (`what` names the offender).
    Domain { what: &'static str },
    /// An iterative scheme exhausted its budget before reaching `tol`.
    NonConvergence { estimate: f64, tol: f64 },
    /// The requested computation exceeds a hard resource budget.
    Budget { what: &'static str },
    /// Result too large for `f64`.
    Overflow { what: &'static str },
    /// A weight `(s - |m|_p^p)^beta` with `beta < 0` was requested at a
    /// lattice point inside the boundary guard band.
    DegenerateBoundary,
    /// Not enough usable samples for a fit.
    InsufficientData { needed: usize, got: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain { what } => write!(f, "domain error: {what}"),
            Error::NonConvergence { estimate, tol } => write!(
                f,
                "failed to converge: error estimate {estimate:e} exceeds tolerance {tol:e}"
            ),
            Error::Budget { what } => write!(f, "resource budget exceeded: {what}"),
            Error::Overflow { what } => write!(f, "overflow: {what}"),
            Error::DegenerateBoundary => write!(
                f,
                "negative-power weight evaluated at a lattice point within the boundary guard band"
            ),
            Error::InsufficientData { needed, got } => {
                write!(f, "insufficient data: need {needed} samples, got {got}")
            }
        }
    }
}

impl core::error::Error for Error {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_is_informative() {
        let e = Error::NonConvergence {
            estimate: 1e-3,
            tol: 1e-10,
        };
        let s = alloc::format!("{e}");
        assert!(s.contains("1e-3"), "estimate missing from message: {s}");
        assert!(s.contains("1e-10"), "tolerance missing from message: {s}");
    }
}
