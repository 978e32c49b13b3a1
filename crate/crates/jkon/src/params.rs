//! Shared domain types: parameter tuples, truncation policies, series results.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Parameter tuple (α, β, κ, γ₁, γ₂) shared by the polynomial family, the
/// bivariate Mittag-Leffler function and the kernel integral operator.
///
/// κ is a positive integer. The admissible ranges of α and β depend on
/// context: polynomial evaluation needs α > −1 and β > −1, Mittag-Leffler
/// contexts need α > 0 and β > 0 after their +1 shift. Constructors for the
/// respective contexts enforce this.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParamSet {
    pub alpha: f64,
    pub beta: f64,
    pub kappa: u32,
    pub gamma1: f64,
    pub gamma2: f64,
}

impl ParamSet {
    pub fn new(alpha: f64, beta: f64, kappa: u32, gamma1: f64, gamma2: f64) -> Result<Self> {
        if kappa == 0 {
            return Err(Error::InvalidParameter {
                name: "kappa",
                value: 0.0,
                constraint: "must be a positive integer",
            });
        }
        for (name, v) in [
            ("alpha", alpha),
            ("beta", beta),
            ("gamma1", gamma1),
            ("gamma2", gamma2),
        ] {
            if !v.is_finite() {
                return Err(Error::InvalidParameter {
                    name,
                    value: v,
                    constraint: "must be finite",
                });
            }
        }
        Ok(Self {
            alpha,
            beta,
            kappa,
            gamma1,
            gamma2,
        })
    }

    /// Check the polynomial-context constraint α > −1, β > −1.
    pub fn require_poly_domain(&self) -> Result<()> {
        if self.alpha <= -1.0 {
            return Err(Error::InvalidParameter {
                name: "alpha",
                value: self.alpha,
                constraint: "must exceed -1 in polynomial contexts",
            });
        }
        if self.beta <= -1.0 {
            return Err(Error::InvalidParameter {
                name: "beta",
                value: self.beta,
                constraint: "must exceed -1 in polynomial contexts",
            });
        }
        Ok(())
    }

    /// Check the Mittag-Leffler-context constraint α > 0, β > 0.
    pub fn require_ml_domain(&self) -> Result<()> {
        if self.alpha <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "alpha",
                value: self.alpha,
                constraint: "must be positive in Mittag-Leffler contexts",
            });
        }
        if self.beta <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "beta",
                value: self.beta,
                constraint: "must be positive in Mittag-Leffler contexts",
            });
        }
        Ok(())
    }
}

/// Caps and tolerances governing truncated double-series summation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TruncationPolicy {
    /// Cap on the first summation index.
    pub max_s: usize,
    /// Cap on the second summation index.
    pub max_r: usize,
    /// Absolute tolerance a converged sum must reach.
    pub abs_tol: f64,
    /// Number of consecutive sub-tolerance diagonal blocks that ends summation.
    pub tail_window: usize,
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        Self {
            max_s: 200,
            max_r: 200,
            abs_tol: 1e-14,
            tail_window: 3,
        }
    }
}

impl TruncationPolicy {
    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0) {
            return Err(Error::InvalidParameter {
                name: "abs_tol",
                value: self.abs_tol,
                constraint: "must be positive",
            });
        }
        if self.max_s == 0 || self.max_r == 0 || self.tail_window == 0 {
            return Err(Error::InvalidParameter {
                name: "max_s/max_r/tail_window",
                value: 0.0,
                constraint: "must be at least 1",
            });
        }
        Ok(())
    }
}

/// Value of a truncated (double) series together with convergence metadata.
///
/// When `converged` is true the error estimate is at or below the policy's
/// absolute tolerance. A terminating series reports `abs_error_estimate = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesResult {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub terms_used: usize,
    pub converged: bool,
}

impl SeriesResult {
    pub fn exact(value: f64, terms_used: usize) -> Self {
        Self {
            value,
            abs_error_estimate: 0.0,
            terms_used,
            converged: true,
        }
    }
}

/// Neumaier-compensated accumulator. Keeps double-series sums near one ulp of
/// the condition-limited best.
#[derive(Debug, Clone, Copy, Default)]
pub struct Accumulator {
    sum: f64,
    comp: f64,
}

impl Accumulator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, term: f64) {
        let t = self.sum + term;
        if self.sum.abs() >= term.abs() {
            self.comp += (self.sum - t) + term;
        } else {
            self.comp += (term - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paramset_rejects_zero_kappa() {
        assert!(ParamSet::new(0.5, 0.5, 0, 0.0, 0.0).is_err());
    }

    #[test]
    fn poly_domain_guard() {
        let p = ParamSet::new(-1.5, 0.5, 1, 0.0, 0.0).unwrap();
        assert!(p.require_poly_domain().is_err());
        let p = ParamSet::new(0.5, 0.5, 1, 0.0, 0.0).unwrap();
        assert!(p.require_poly_domain().is_ok());
    }

    #[test]
    fn policy_default_is_valid() {
        assert!(TruncationPolicy::default().validate().is_ok());
    }

    #[test]
    fn compensated_sum_beats_naive() {
        let mut acc = Accumulator::new();
        acc.add(1e16);
        acc.add(1.0);
        acc.add(-1e16);
        assert_eq!(acc.value(), 1.0);
    }
}
