//! The bivariate Jacobi-Konhauser polynomial family, its dual family, the
//! biorthogonality matrix and the generating-function diagnostic.
//!
//! The family has several classical representations. The explicit double
//! sum, the Konhauser Z expansion, the Kampe de Feriet form and the
//! Mittag-Leffler bridge all evaluate the same polynomial. The three
//! alternative explicit forms obtained by switching the underlying Jacobi
//! hypergeometric representation do NOT reproduce the same function of y;
//! at n = 1, kappa = 1, alpha = beta = 0 the primary form is x - y while
//! the third-form recipe yields x + y and the second x - y(x+1)/2. They are
//! all implemented exactly as written, and the verification suite measures the
//! discrepancy rather than hiding it.

use crate::error::{Error, Result};
use crate::jkml::{jkml_eval, JkmlArgs};
use crate::kdf::{kdf_f_eval, kdf_s_eval, GammaFactor, KdfSpec, SSeriesSpec};
use crate::params::{Accumulator, ParamSet, TruncationPolicy};
use crate::quadrature::{QuadratureRule, RuleKind};
use crate::special::{factorial, gamma_fn, jacobi_poly, konhauser_y, konhauser_z, pochhammer, JacobiForm};

/// Representation used to evaluate the polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JkPolyForm {
    /// Explicit double sum over ((1-x)/2)^s y^{kappa r}.
    ExplicitJac,
    /// Second explicit form, argument (x-1)/(x+1); dispatches to ExplicitJac at x = -1.
    ExplicitJac2,
    /// Third explicit form, argument (1+x)/2.
    ExplicitJac3,
    /// Fourth explicit form, argument (x+1)/(x-1); dispatches to ExplicitJac3 at x = 1.
    ExplicitJac4,
    /// Expansion over Konhauser polynomials Z_{n-s}(y; kappa).
    ZForm,
    /// Kampe de Feriet double hypergeometric form.
    KdfForm,
    /// Mittag-Leffler bridge: Gamma(1+alpha+n)/n! E_{a+1,b+1,k}^{(-n;1+a+b+n)}((1-x)/2, y).
    MlForm,
}

pub const ALL_FORMS: [JkPolyForm; 7] = [
    JkPolyForm::ExplicitJac,
    JkPolyForm::ExplicitJac2,
    JkPolyForm::ExplicitJac3,
    JkPolyForm::ExplicitJac4,
    JkPolyForm::ZForm,
    JkPolyForm::KdfForm,
    JkPolyForm::MlForm,
];

/// The four forms that evaluate the same polynomial.
pub const EQUIVALENT_FORMS: [JkPolyForm; 4] = [
    JkPolyForm::ExplicitJac,
    JkPolyForm::ZForm,
    JkPolyForm::KdfForm,
    JkPolyForm::MlForm,
];

/// Evaluate the degree-n bivariate Jacobi-Konhauser polynomial.
pub fn jk_poly(n: usize, params: &ParamSet, x: f64, y: f64, form: JkPolyForm) -> Result<f64> {
    params.require_poly_domain()?;
    let alpha = params.alpha;
    let beta = params.beta;
    let k = params.kappa as usize;
    let nf = n as f64;
    match form {
        JkPolyForm::ExplicitJac => {
            let t = (1.0 - x) / 2.0;
            let g2 = 1.0 + alpha + beta + nf;
            let mut acc = Accumulator::new();
            for s in 0..=n {
                let sf = s as f64;
                for r in 0..=(n - s) {
                    let term = pochhammer(-nf, s + r) * pochhammer(g2, s)
                        / (factorial(r)
                            * factorial(s)
                            * gamma_fn(1.0 + alpha + sf)?
                            * gamma_fn(beta + 1.0 + (k * r) as f64)?)
                        * t.powi(s as i32)
                        * y.powi((k * r) as i32);
                    acc.add(term);
                }
            }
            let pref = gamma_fn(1.0 + alpha + nf)? / factorial(n);
            Ok(pref * acc.value())
        }
        JkPolyForm::ExplicitJac2 => {
            if x == -1.0 {
                return jk_poly(n, params, x, y, JkPolyForm::ExplicitJac);
            }
            let t = (x - 1.0) / (x + 1.0);
            let g2 = -beta - nf;
            let mut acc = Accumulator::new();
            for s in 0..=n {
                let sf = s as f64;
                for r in 0..=(n - s) {
                    let term = pochhammer(-nf, s + r) * pochhammer(g2, s)
                        / (factorial(r)
                            * factorial(s)
                            * gamma_fn(1.0 + alpha + sf)?
                            * gamma_fn(beta + 1.0 + (k * r) as f64)?)
                        * t.powi(s as i32)
                        * y.powi((k * r) as i32);
                    acc.add(term);
                }
            }
            let pref = gamma_fn(1.0 + alpha + nf)? / factorial(n) * ((x + 1.0) / 2.0).powi(n as i32);
            Ok(pref * acc.value())
        }
        JkPolyForm::ExplicitJac3 => {
            let t = (1.0 + x) / 2.0;
            let g2 = 1.0 + alpha + beta + nf;
            let mut acc = Accumulator::new();
            for s in 0..=n {
                let sf = s as f64;
                for r in 0..=(n - s) {
                    let term = pochhammer(-nf, s + r) * pochhammer(g2, s)
                        / (factorial(r)
                            * factorial(s)
                            * gamma_fn(1.0 + beta + sf)?
                            * gamma_fn(beta + 1.0 + (k * r) as f64)?)
                        * t.powi(s as i32)
                        * y.powi((k * r) as i32);
                    acc.add(term);
                }
            }
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            let pref = sign * gamma_fn(1.0 + beta + nf)? / factorial(n);
            Ok(pref * acc.value())
        }
        JkPolyForm::ExplicitJac4 => {
            if x == 1.0 {
                return jk_poly(n, params, x, y, JkPolyForm::ExplicitJac3);
            }
            let t = (x + 1.0) / (x - 1.0);
            let g2 = -alpha - nf;
            let mut acc = Accumulator::new();
            for s in 0..=n {
                let sf = s as f64;
                for r in 0..=(n - s) {
                    let term = pochhammer(-nf, s + r) * pochhammer(g2, s)
                        / (factorial(r)
                            * factorial(s)
                            * gamma_fn(1.0 + beta + sf)?
                            * gamma_fn(beta + 1.0 + (k * r) as f64)?)
                        * t.powi(s as i32)
                        * y.powi((k * r) as i32);
                    acc.add(term);
                }
            }
            let pref = gamma_fn(1.0 + beta + nf)? / factorial(n) * ((x - 1.0) / 2.0).powi(n as i32);
            Ok(pref * acc.value())
        }
        JkPolyForm::ZForm => {
            let t = (1.0 - x) / 2.0;
            let g2 = 1.0 + alpha + beta + nf;
            let mut acc = Accumulator::new();
            for s in 0..=n {
                let sf = s as f64;
                let sign = if s % 2 == 0 { 1.0 } else { -1.0 };
                let term = sign * pochhammer(g2, s)
                    / (factorial(s)
                        * gamma_fn(1.0 + alpha + sf)?
                        * gamma_fn(1.0 + beta + (k * (n - s)) as f64)?)
                    * t.powi(s as i32)
                    * konhauser_z(n - s, beta, params.kappa, y);
                acc.add(term);
            }
            Ok(gamma_fn(1.0 + alpha + nf)? * acc.value())
        }
        JkPolyForm::KdfForm => {
            let spec = KdfSpec {
                upper_joint: vec![-nf],
                upper_x: vec![1.0 + alpha + beta + nf],
                lower_x: vec![1.0 + alpha],
                lower_y: (0..params.kappa)
                    .map(|m| (beta + 1.0 + m as f64) / params.kappa as f64)
                    .collect(),
                ..Default::default()
            };
            let xf = (1.0 - x) / 2.0;
            let yf = (y / params.kappa as f64).powi(params.kappa as i32);
            let f = kdf_f_eval(&spec, xf, yf, &TruncationPolicy::default())?;
            Ok(pochhammer(1.0 + alpha, n) / (gamma_fn(1.0 + beta)? * factorial(n)) * f.value)
        }
        JkPolyForm::MlForm => {
            let args = JkmlArgs::new(
                alpha + 1.0,
                beta + 1.0,
                params.kappa,
                -nf,
                1.0 + alpha + beta + nf,
                (1.0 - x) / 2.0,
                y,
            )?;
            let e = jkml_eval(&args, &TruncationPolicy::default())?;
            let pref = gamma_fn(1.0 + alpha + nf)? / factorial(n);
            Ok(pref * e.value)
        }
    }
}

/// Dual family: Q_m(x, y) = P_m^{(alpha,beta)}(x) sum_{j=0}^{m} Y_j^{(beta)}(y; kappa).
pub fn q_poly(m: usize, params: &ParamSet, x: f64, y: f64) -> Result<f64> {
    params.require_poly_domain()?;
    let p = jacobi_poly(m, params.alpha, params.beta, x, JacobiForm::F1)?;
    let mut acc = Accumulator::new();
    for j in 0..=m {
        acc.add(konhauser_y(j, params.beta, params.kappa, y));
    }
    Ok(p * acc.value())
}

/// L2 norm of the Jacobi polynomial under its weight; also the diagonal of
/// the biorthogonality matrix:
/// 2^{1+a+b} Gamma(1+a+n) Gamma(1+b+n) / ((2n+a+b+1) Gamma(1+a+b+n) n!).
pub fn jacobi_l2_norm(n: usize, alpha: f64, beta: f64) -> Result<f64> {
    let nf = n as f64;
    Ok(
        2.0f64.powf(1.0 + alpha + beta) * gamma_fn(1.0 + alpha + nf)?
            * gamma_fn(1.0 + beta + nf)?
            / ((2.0 * nf + alpha + beta + 1.0) * gamma_fn(1.0 + alpha + beta + nf)? * factorial(n)),
    )
}

/// Tensor-quadrature matrix of inner products
/// entry(n, m) = <w_x w_y jk_n, Q_m> over (-1,1) x (0,inf), with the weights
/// absorbed into the supplied Gauss rules. All integrands are polynomial, so
/// with sufficient rule degrees the entries are exact up to rounding.
pub fn biorthogonality_matrix(
    nmax: usize,
    params: &ParamSet,
    rule_x: &QuadratureRule,
    rule_y: &QuadratureRule,
) -> Result<Vec<Vec<f64>>> {
    params.require_poly_domain()?;
    match rule_x.kind {
        RuleKind::GaussJacobi { alpha, beta }
            if (alpha - params.alpha).abs() < 1e-12 && (beta - params.beta).abs() < 1e-12 => {}
        _ => {
            return Err(Error::Domain(
                "rule_x must be Gauss-Jacobi with the family's (alpha, beta)".into(),
            ))
        }
    }
    match rule_y.kind {
        RuleKind::GaussLaguerre { beta } if (beta - params.beta).abs() < 1e-12 => {}
        _ => {
            return Err(Error::Domain(
                "rule_y must be generalized Gauss-Laguerre with the family's beta".into(),
            ))
        }
    }
    let k = params.kappa as usize;
    let need_x = 2 * nmax;
    let need_y = k * nmax + nmax;
    if rule_x.exact_degree < need_x {
        return Err(Error::InsufficientRule {
            needed: need_x,
            got: rule_x.exact_degree,
        });
    }
    if rule_y.exact_degree < need_y {
        return Err(Error::InsufficientRule {
            needed: need_y,
            got: rule_y.exact_degree,
        });
    }

    // tabulate both families on the node grid
    let nx = rule_x.len();
    let ny = rule_y.len();
    let mut jk_tab = vec![vec![vec![0.0f64; ny]; nx]; nmax + 1];
    let mut q_tab = vec![vec![vec![0.0f64; ny]; nx]; nmax + 1];
    for n in 0..=nmax {
        for (i, &xi) in rule_x.nodes.iter().enumerate() {
            for (j, &yj) in rule_y.nodes.iter().enumerate() {
                jk_tab[n][i][j] = jk_poly(n, params, xi, yj, JkPolyForm::ExplicitJac)?;
                q_tab[n][i][j] = q_poly(n, params, xi, yj)?;
            }
        }
    }
    let mut mat = vec![vec![0.0f64; nmax + 1]; nmax + 1];
    for n in 0..=nmax {
        for m in 0..=nmax {
            let mut acc = Accumulator::new();
            for i in 0..nx {
                for j in 0..ny {
                    acc.add(rule_x.weights[i] * rule_y.weights[j] * jk_tab[n][i][j] * q_tab[m][i][j]);
                }
            }
            mat[n][m] = acc.value();
        }
    }
    Ok(mat)
}

/// Both sides of the generating-function identity, returned for comparison.
#[derive(Debug, Clone, Copy)]
pub struct GenFunCheck {
    /// Truncated series sum_{n<=N} (1+a+b)_n Gamma(b+1)/(1+a)_n P_n t^n.
    pub lhs: f64,
    /// Prefactor times the S-series with the y-argument t y^k / ((t-1) k^k),
    /// the commonly stated form of the identity.
    pub rhs_statement: f64,
    /// Same with the y-argument t y^k / (t-1), the form the series
    /// manipulation actually produces; this is the variant that matches the
    /// left side (they coincide when kappa = 1).
    pub rhs_reconstruction: f64,
    /// Magnitude of the last series term, for tail control.
    pub lhs_last_term: f64,
}

/// Evaluate both sides of the generating function at order N.
///
/// The two right-hand variants differ in the kappa^kappa factor of the
/// second S-series argument; both are reported, neither is asserted here.
pub fn generating_function_check(
    params: &ParamSet,
    x: f64,
    y: f64,
    t: f64,
    n_trunc: usize,
) -> Result<GenFunCheck> {
    params.require_poly_domain()?;
    let alpha = params.alpha;
    let beta = params.beta;
    let kf = params.kappa as f64;
    let gb = gamma_fn(beta + 1.0)?;
    let mut acc = Accumulator::new();
    let mut last = 0.0f64;
    for np in 0..=n_trunc {
        let coeff = pochhammer(1.0 + alpha + beta, np) * gb / pochhammer(1.0 + alpha, np);
        let term = coeff * jk_poly(np, params, x, y, JkPolyForm::ExplicitJac)? * t.powi(np as i32);
        acc.add(term);
        last = term.abs();
    }
    let lhs = acc.value();
    if last > 1e-10 * lhs.abs().max(1.0) {
        return Err(Error::NonConvergence {
            terms: n_trunc + 1,
            last_block: last,
        });
    }

    let spec = SSeriesSpec {
        numerator: vec![GammaFactor::joint(1.0 + alpha + beta, 2.0, 1.0)],
        denominator: vec![
            GammaFactor::on_x(alpha + 1.0, 1.0),
            GammaFactor::on_y(beta + 1.0, kf),
        ],
    };
    let pref = (1.0 - t).powf(-(1.0 + alpha + beta)) * gamma_fn(1.0 + alpha)? * gamma_fn(1.0 + beta)?
        / gamma_fn(1.0 + alpha + beta)?;
    let xs = t * (x - 1.0) / (2.0 * (1.0 - t) * (1.0 - t));
    let policy = TruncationPolicy::default();
    let y_statement = t * y.powi(params.kappa as i32) / ((t - 1.0) * kf.powi(params.kappa as i32));
    let y_reconstruction = t * y.powi(params.kappa as i32) / (t - 1.0);
    let rhs_statement = pref * kdf_s_eval(&spec, xs, y_statement, &policy)?.value;
    let rhs_reconstruction = pref * kdf_s_eval(&spec, xs, y_reconstruction, &policy)?.value;
    Ok(GenFunCheck {
        lhs,
        rhs_statement,
        rhs_reconstruction,
        lhs_last_term: last,
    })
}
