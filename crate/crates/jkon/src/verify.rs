//! Numerical certification suites.
//!
//! Each suite runs one identity battery at a pinned tolerance and reports
//! the worst deviation it measured. The same suites back the `jkon verify`
//! subcommand and the `acceptance` integration test.
//!
//! Two suites fail by design of the formulas they test, not by
//! implementation defect, and their reports carry the breakdown:
//!
//! - `representation_equivalence`: the three alternative explicit forms
//!   produced by switching the Jacobi hypergeometric representation are
//!   different polynomials from the primary form (already at n = 1,
//!   kappa = 1, alpha = beta = 0 they give x - y(x+1)/2 and x + y against
//!   x - y). The four genuinely equal forms agree to full precision.
//! - `biorthogonality`: the constructed dual family is only a one-sided
//!   partner; matrix entries with n >= 2m + 1 are structurally nonzero
//!   (entry (n, 0) = (-1)^n (1+a+b+n)_n <((1-x)/2)^n>_w for every n >= 1),
//!   while the diagonal and every entry with n <= 2m check out.

use crate::error::Result;
use crate::fractional::{
    frac_derivative_termwise_dev, frac_integral_image_jkml, power_rule_derivative,
    power_rule_integral, rl_double_integral, rl_double_integral_weighted, FracOrderPair,
    ScaledArgs,
};
use crate::jkml::{jkml_eval, JkmlArgs};
use crate::jkpoly::{
    biorthogonality_matrix, generating_function_check, jacobi_l2_norm, jk_poly, JkPolyForm,
    ALL_FORMS, EQUIVALENT_FORMS,
};
use crate::params::{Accumulator, ParamSet, TruncationPolicy};
use crate::quadrature::{gauss_jacobi_rule, gauss_laguerre_rule};
use crate::special::{factorial, gamma_fn, konhauser_y, konhauser_z, pochhammer};
use crate::xi::{
    laplace_jk_poly_closed, laplace_jkml_closed, laplace_of_xi, xi_apply_kernel,
    xi_apply_kernel_weighted, xi_apply_series, xi_bound_constant, xi_composition_check,
    xi_exp_image, xi_exp_image_series_oracle, xi_power_image, BoxDomain, XiSpec,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;

/// Outcome of one verification suite.
#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub name: &'static str,
    pub max_dev: f64,
    pub tol: f64,
    pub pass: bool,
    pub detail: String,
}

impl SuiteReport {
    fn finish(name: &'static str, max_dev: f64, tol: f64, detail: String) -> Self {
        Self {
            name,
            max_dev,
            tol,
            pass: max_dev <= tol,
            detail,
        }
    }

    pub fn line(&self) -> String {
        format!(
            "{:<28} max_dev {:>12.3e}  tol {:>9.1e}  {}",
            self.name,
            self.max_dev,
            self.tol,
            if self.pass { "PASS" } else { "FAIL" }
        )
    }
}

pub const SUITE_NAMES: [&str; 10] = [
    "representation_equivalence",
    "biorthogonality",
    "konhauser_pair",
    "ml_bridge",
    "frac_integral_image",
    "frac_derivative_image",
    "laplace_poly",
    "xi_operator",
    "quadrature_exactness",
    "generating_function",
];

fn tol_for(overrides: &HashMap<String, f64>, name: &str, default: f64) -> f64 {
    overrides.get(name).copied().unwrap_or(default)
}

fn battery_points(seed: u64, count: usize) -> Vec<(f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| (rng.gen_range(-0.99..0.99), rng.gen_range(0.0..3.0)))
        .collect()
}

const ALPHAS: [f64; 3] = [-0.5, 0.5, 2.0];
const KAPPAS: [u32; 3] = [1, 2, 3];

/// Criterion 1: all seven representations of the bivariate polynomial
/// agree on the random battery.
pub fn representation_equivalence(seed: u64, overrides: &HashMap<String, f64>) -> Result<SuiteReport> {
    let tol = tol_for(overrides, "representation_equivalence", 1e-10);
    let pts = battery_points(seed, 20);
    let mut max_all = 0.0f64;
    let mut max_quartet = 0.0f64;
    let mut worst_case = String::new();
    for n in 0..=8usize {
        for &kappa in &KAPPAS {
            for &alpha in &ALPHAS {
                for &beta in &ALPHAS {
                    let p = ParamSet::new(alpha, beta, kappa, 0.0, 0.0)?;
                    for &(x, y) in &pts {
                        let vals: Vec<f64> = ALL_FORMS
                            .iter()
                            .map(|&f| jk_poly(n, &p, x, y, f))
                            .collect::<Result<_>>()?;
                        let vmax = vals.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(1e-300);
                        let spread = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
                            - vals.iter().cloned().fold(f64::INFINITY, f64::min);
                        let dev = spread / vmax;
                        if dev > max_all {
                            max_all = dev;
                            worst_case =
                                format!("n={n} kappa={kappa} (a,b)=({alpha},{beta}) (x,y)=({x:.4},{y:.4})");
                        }
                        let qv: Vec<f64> = EQUIVALENT_FORMS
                            .iter()
                            .map(|&f| jk_poly(n, &p, x, y, f))
                            .collect::<Result<_>>()?;
                        let qmax = qv.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(1e-300);
                        let qspread = qv.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
                            - qv.iter().cloned().fold(f64::INFINITY, f64::min);
                        max_quartet = max_quartet.max(qspread / qmax);
                    }
                }
            }
        }
    }
    let detail = format!(
        "all 7 forms: {max_all:.3e} (worst at {worst_case}); \
         equal quartet explicit/Z/KdF/ML: {max_quartet:.3e}; \
         the jac2/jac3/jac4 recipes define different polynomials, so the full \
         seven-form agreement cannot hold"
    );
    Ok(SuiteReport::finish(
        "representation_equivalence",
        max_all,
        tol,
        detail,
    ))
}

/// Criterion 2: biorthogonality matrix, diagonal against the closed form and
/// off-diagonal against zero.
pub fn biorthogonality(overrides: &HashMap<String, f64>) -> Result<SuiteReport> {
    let tol = tol_for(overrides, "biorthogonality", 1e-9);
    let diag_tol = tol_for(overrides, "biorthogonality_diag", 1e-10);
    let nmax = 6usize;
    let mut diag_dev = 0.0f64;
    let mut off_dev = 0.0f64;
    let mut off_dev_lower = 0.0f64; // n <= 2m block, should vanish
    for &kappa in &KAPPAS {
        for &(alpha, beta) in &[(0.0, 0.0), (0.5, 0.25), (2.0, 1.0)] {
            let p = ParamSet::new(alpha, beta, kappa, 0.0, 0.0)?;
            let rx = gauss_jacobi_rule(nmax + 2, alpha, beta)?;
            let ny = (kappa as usize * nmax + nmax + 1).div_ceil(2) + 1;
            let ry = gauss_laguerre_rule(ny, beta)?;
            let m = biorthogonality_matrix(nmax, &p, &rx, &ry)?;
            for n in 0..=nmax {
                let d = jacobi_l2_norm(n, alpha, beta)?;
                diag_dev = diag_dev.max((m[n][n] / d - 1.0).abs());
                for mm in 0..=nmax {
                    if n == mm {
                        continue;
                    }
                    let scaled = (m[n][mm] / d).abs();
                    off_dev = off_dev.max(scaled);
                    if n <= 2 * mm {
                        off_dev_lower = off_dev_lower.max(scaled);
                    }
                }
            }
        }
    }
    let max_dev = diag_dev.max(off_dev);
    let pass = diag_dev <= diag_tol && off_dev <= tol;
    let detail = format!(
        "diagonal vs closed form: {diag_dev:.3e} (tol {diag_tol:.1e}); \
         off-diagonal/diag scale: {off_dev:.3e}; restricted to n <= 2m: {off_dev_lower:.3e}; \
         entries with n >= 2m+1 are structurally nonzero for this dual family"
    );
    Ok(SuiteReport {
        name: "biorthogonality",
        max_dev,
        tol,
        pass,
        detail,
    })
}

/// Criterion 3: Konhauser pair biorthogonality under e^{-y} y^beta.
pub fn konhauser_pair(overrides: &HashMap<String, f64>) -> Result<SuiteReport> {
    let tol = tol_for(overrides, "konhauser_pair", 1e-10);
    let mut max_dev = 0.0f64;
    for &kappa in &KAPPAS {
        for &beta in &[-0.25, 0.5, 2.0] {
            let nodes = (kappa as usize * 5 + 5 + 1).div_ceil(2) + 2;
            let rule = gauss_laguerre_rule(nodes, beta)?;
            for n in 0..=5usize {
                for m in 0..=5usize {
                    let got = rule.integrate(|t| {
                        konhauser_z(n, beta, kappa, t) * konhauser_y(m, beta, kappa, t)
                    });
                    let norm = gamma_fn((kappa as usize * n) as f64 + beta + 1.0)? / factorial(n);
                    let expect = if n == m { norm } else { 0.0 };
                    max_dev = max_dev.max((got - expect).abs() / norm);
                }
            }
        }
    }
    Ok(SuiteReport::finish(
        "konhauser_pair",
        max_dev,
        tol,
        "inner products <Z_n, Y_m> against (Gamma(kappa n + beta + 1)/n!) delta_nm".into(),
    ))
}

/// Criterion 4: the Mittag-Leffler bridge across the suite-1 battery.
pub fn ml_bridge(seed: u64, overrides: &HashMap<String, f64>) -> Result<SuiteReport> {
    let tol = tol_for(overrides, "ml_bridge", 1e-12);
    let pts = battery_points(seed, 20);
    let policy = TruncationPolicy::default();
    let mut max_dev = 0.0f64;
    for n in 0..=8usize {
        for &kappa in &KAPPAS {
            for &alpha in &ALPHAS {
                for &beta in &ALPHAS {
                    let p = ParamSet::new(alpha, beta, kappa, 0.0, 0.0)?;
                    for &(x, y) in &pts {
                        let direct = jk_poly(n, &p, x, y, JkPolyForm::ExplicitJac)?;
                        let args = JkmlArgs::new(
                            alpha + 1.0,
                            beta + 1.0,
                            kappa,
                            -(n as f64),
                            1.0 + alpha + beta + n as f64,
                            (1.0 - x) / 2.0,
                            y,
                        )?;
                        let bridged =
                            gamma_fn(1.0 + alpha + n as f64)? / factorial(n) * jkml_eval(&args, &policy)?.value;
                        let scale = direct.abs().max(bridged.abs()).max(1e-300);
                        max_dev = max_dev.max((direct - bridged).abs() / scale);
                    }
                }
            }
        }
    }
    Ok(SuiteReport::finish(
        "ml_bridge",
        max_dev,
        tol,
        "explicit double sum vs Gamma(1+a+n)/n! E_{a+1,b+1,k}^{(-n;1+a+b+n)}((1-x)/2, y)".into(),
    ))
}

/// Criterion 5: fractional-integral images, numeric quadrature vs closed
/// parameter shift, plus the polynomial corollary's prefactor
/// Gamma(1+a+n)/Gamma(1+a+n+mu).
///
/// The prefactor is verified against the image of the weighted polynomial
/// whose series keeps its original coupling parameter 1+a+b+n, which is what
/// the shift theorem actually produces. The fully shifted reading instead
/// re-absorbs the image into the (a+mu, b+zeta) polynomial family, whose
/// coupling parameter is 1+a+mu+b+zeta+n; that variant does not match and
/// its deviation is recorded in the detail.
pub fn frac_integral_image(overrides: &HashMap<String, f64>) -> Result<SuiteReport> {
    let tol = tol_for(overrides, "frac_integral_image", 1e-8);
    let mut max_dev = 0.0f64;
    let mut displayed_dev = 0.0f64;
    let (x, y) = (0.7, 0.9);
    for n in 0..=4usize {
        for &kappa in &KAPPAS {
            for &mu in &[0.25, 0.5, 0.75] {
                for &zeta in &[0.25, 0.5, 0.75] {
                    let params =
                        ParamSet::new(0.6, 0.8, kappa, -(n as f64), 1.9 + n as f64)?;
                    let orders = FracOrderPair::new(mu, zeta, 0.0, 0.0)?;
                    let scales = ScaledArgs { w1: 1.0, w2: 1.0 };
                    let (numeric, closed) =
                        frac_integral_image_jkml(&params, &orders, &scales, x, y, 24)?;
                    max_dev = max_dev.max((numeric - closed).abs() / closed.abs());

                    // polynomial corollary: numeric image of the weighted polynomial
                    let (alpha, beta) = (0.6, 0.8);
                    let p_in = ParamSet::new(alpha, beta, kappa, 0.0, 0.0)?;
                    let numeric_c = rl_double_integral_weighted(
                        |t, u| {
                            jk_poly(n, &p_in, 1.0 - 2.0 * t, u, JkPolyForm::ExplicitJac)
                                .unwrap_or(f64::NAN)
                        },
                        &orders,
                        alpha,
                        beta,
                        x,
                        y,
                        24,
                    )?;
                    // prefactor claim: Gamma(1+a+n)/Gamma(1+a+n+mu) times the
                    // shift-image series (coupling parameter unchanged)
                    let shifted = JkmlArgs::new(
                        1.0 + alpha + mu,
                        1.0 + beta + zeta,
                        kappa,
                        -(n as f64),
                        1.0 + alpha + beta + n as f64,
                        x,
                        y,
                    )?;
                    let policy = TruncationPolicy::default();
                    let closed_c = gamma_fn(1.0 + alpha + n as f64)?
                        / gamma_fn(1.0 + alpha + n as f64 + mu)?
                        * gamma_fn(1.0 + alpha + mu + n as f64)?
                        / factorial(n)
                        * x.powf(alpha + mu)
                        * y.powf(beta + zeta)
                        * jkml_eval(&shifted, &policy)?.value;
                    max_dev = max_dev.max((numeric_c - closed_c).abs() / closed_c.abs());

                    // fully-shifted variant: the image re-read as the shifted
                    // polynomial family (coupling parameter also shifted)
                    let p_shift = ParamSet::new(alpha + mu, beta + zeta, kappa, 0.0, 0.0)?;
                    let displayed = gamma_fn(1.0 + alpha + n as f64)?
                        / gamma_fn(1.0 + alpha + n as f64 + mu)?
                        * x.powf(alpha + mu)
                        * y.powf(beta + zeta)
                        * jk_poly(n, &p_shift, 1.0 - 2.0 * x, y, JkPolyForm::ExplicitJac)?;
                    displayed_dev =
                        displayed_dev.max((numeric_c - displayed).abs() / numeric_c.abs());
                }
            }
        }
    }
    let detail = format!(
        "shift theorem and corollary prefactor at {max_dev:.3e}; re-absorbing the image \
         into the shifted polynomial family (its coupling parameter moves to \
         1+a+mu+b+zeta+n) deviates by {displayed_dev:.3e} and is recorded, not asserted"
    );
    Ok(SuiteReport::finish(
        "frac_integral_image",
        max_dev,
        tol,
        detail,
    ))
}

/// Criterion 6: fractional-derivative images, sharp termwise power-rule
/// check plus a finite-difference smoke test.
pub fn frac_derivative_image(overrides: &HashMap<String, f64>) -> Result<SuiteReport> {
    let tol = tol_for(overrides, "frac_derivative_image", 1e-10);
    let smoke_tol = tol_for(overrides, "frac_derivative_smoke", 1e-4);
    let mut max_dev = 0.0f64;
    let mut displayed_dev = 0.0f64;
    let (x, y) = (0.8, 0.9);
    for n in 0..=3usize {
        for &kappa in &KAPPAS {
            for &mu in &[0.25, 0.5, 0.75] {
                for &zeta in &[0.25, 0.5, 0.75] {
                    let params =
                        ParamSet::new(0.9, 1.1, kappa, -(n as f64), 2.4 + n as f64)?;
                    let orders = FracOrderPair::new(mu, zeta, 0.0, 0.0)?;
                    let scales = ScaledArgs { w1: 0.8, w2: 0.7 };
                    max_dev =
                        max_dev.max(frac_derivative_termwise_dev(&params, &orders, &scales, x, y)?);

                    // corollary prefactor, assembled termwise from the
                    // derivative power rules on the polynomial series
                    let (alpha, beta) = (0.9, 1.1);
                    let k = kappa as usize;
                    let g2 = 1.0 + alpha + beta + n as f64;
                    let mut lhs = Accumulator::new();
                    for s in 0..=n {
                        for r in 0..=(n - s) {
                            let coef = pochhammer(-(n as f64), s + r) * pochhammer(g2, s)
                                * scales.w1.powi(s as i32)
                                * scales.w2.powi((k * r) as i32)
                                / (factorial(r)
                                    * factorial(s)
                                    * gamma_fn(alpha + 1.0 + s as f64)?
                                    * gamma_fn(beta + 1.0 + (k * r) as f64)?);
                            lhs.add(
                                coef * power_rule_derivative(alpha + s as f64, mu)?
                                    * power_rule_derivative(beta + (k * r) as f64, zeta)?
                                    * x.powf(alpha + s as f64 - mu)
                                    * y.powf(beta + (k * r) as f64 - zeta),
                            );
                        }
                    }
                    let lhs = gamma_fn(1.0 + alpha + n as f64)? / factorial(n) * lhs.value();
                    // prefactor claim against the shift-image series (the
                    // coupling parameter stays 1+a+b+n)
                    let shifted = JkmlArgs::new(
                        1.0 + alpha - mu,
                        1.0 + beta - zeta,
                        kappa,
                        -(n as f64),
                        g2,
                        scales.w1 * x,
                        scales.w2 * y,
                    )?;
                    let closed = gamma_fn(1.0 + alpha + n as f64)?
                        / gamma_fn(1.0 + alpha + n as f64 - mu)?
                        * gamma_fn(1.0 + alpha - mu + n as f64)?
                        / factorial(n)
                        * x.powf(alpha - mu)
                        * y.powf(beta - zeta)
                        * jkml_eval(&shifted, &TruncationPolicy::default())?.value;
                    max_dev = max_dev.max((lhs - closed).abs() / closed.abs().max(lhs.abs()));
                    // variant with the fully shifted family
                    let p_shift = ParamSet::new(alpha - mu, beta - zeta, kappa, 0.0, 0.0)?;
                    let displayed = gamma_fn(1.0 + alpha + n as f64)?
                        / gamma_fn(1.0 + alpha + n as f64 - mu)?
                        * x.powf(alpha - mu)
                        * y.powf(beta - zeta)
                        * jk_poly(
                            n,
                            &p_shift,
                            1.0 - 2.0 * scales.w1 * x,
                            scales.w2 * y,
                            JkPolyForm::ExplicitJac,
                        )?;
                    displayed_dev =
                        displayed_dev.max((lhs - displayed).abs() / lhs.abs().max(displayed.abs()));
                }
            }
        }
    }
    // finite-difference smoke test at one representative point
    let params = ParamSet::new(0.9, 1.1, 2, -2.0, 2.5)?;
    let orders = FracOrderPair::new(0.45, 0.35, 0.0, 0.0)?;
    let scales = ScaledArgs { w1: 0.8, w2: 0.7 };
    let (numeric, closed) =
        crate::fractional::frac_derivative_image_jkml(&params, &orders, &scales, x, y, 1e-4, 16)?;
    let smoke = (numeric - closed).abs() / closed.abs();
    let pass = max_dev <= tol && smoke <= smoke_tol;
    let detail = format!(
        "termwise power-rule deviation {max_dev:.3e} (tol {tol:.1e}); \
         finite-difference smoke {smoke:.3e} (tol {smoke_tol:.1e}); \
         fully-shifted polynomial-family variant deviates by {displayed_dev:.3e} \
         (recorded, not asserted; its coupling parameter moves to 1+a-mu+b-zeta+n)"
    );
    Ok(SuiteReport {
        name: "frac_derivative_image",
        max_dev: max_dev.max(smoke / smoke_tol * tol),
        tol,
        pass,
        detail,
    })
}

/// Criterion 7: the double Laplace transform of the weighted polynomial
/// against Gauss-Laguerre quadrature of the defining integral.
pub fn laplace_poly(overrides: &HashMap<String, f64>) -> Result<SuiteReport> {
    let tol = tol_for(overrides, "laplace_poly", 1e-8);
    let mut max_dev = 0.0f64;
    let (p1, p2) = (1.3, 1.1);
    for n in 0..=3usize {
        for &kappa in &KAPPAS {
            for &(alpha, beta) in &[(0.5, 0.25), (1.0, 0.5)] {
                for &w2 in &[0.3, 0.55] {
                    let w1 = 0.7;
                    // |w2/p2| <= 0.5 on this battery
                    let closed = laplace_jk_poly_closed(n, alpha, beta, kappa, w1, w2, p1, p2)?;
                    let rx = gauss_laguerre_rule(24, alpha)?;
                    let ry = gauss_laguerre_rule(24, beta)?;
                    let pset = ParamSet::new(alpha, beta, kappa, 0.0, 0.0)?;
                    let mut acc = Accumulator::new();
                    for (&u, &wu) in rx.nodes.iter().zip(&rx.weights) {
                        for (&v, &wv) in ry.nodes.iter().zip(&ry.weights) {
                            acc.add(
                                wu * wv
                                    * jk_poly(
                                        n,
                                        &pset,
                                        1.0 - 2.0 * w1 * u / p1,
                                        w2 * v / p2,
                                        JkPolyForm::ExplicitJac,
                                    )?,
                            );
                        }
                    }
                    let numeric =
                        p1.powf(-(1.0 + alpha)) * p2.powf(-(1.0 + beta)) * acc.value();
                    max_dev = max_dev.max((numeric - closed).abs() / closed.abs());

                    // general terminating JKML transform with a free gamma2
                    let params =
                        ParamSet::new(alpha, beta, kappa, -(n as f64), 2.2)?;
                    let closed_e = laplace_jkml_closed(&params, w1, w2, p1, p2)?;
                    let policy = TruncationPolicy::default();
                    let mut acc = Accumulator::new();
                    for (&u, &wu) in rx.nodes.iter().zip(&rx.weights) {
                        for (&v, &wv) in ry.nodes.iter().zip(&ry.weights) {
                            let args = JkmlArgs::new(
                                alpha + 1.0,
                                beta + 1.0,
                                kappa,
                                -(n as f64),
                                2.2,
                                w1 * u / p1,
                                w2 * v / p2,
                            )?;
                            acc.add(wu * wv * jkml_eval(&args, &policy)?.value);
                        }
                    }
                    let numeric_e =
                        p1.powf(-(1.0 + alpha)) * p2.powf(-(1.0 + beta)) * acc.value();
                    max_dev = max_dev.max((numeric_e - closed_e).abs() / closed_e.abs());
                }
            }
        }
    }
    Ok(SuiteReport::finish(
        "laplace_poly",
        max_dev,
        tol,
        "closed transforms vs 2-D Gauss-Laguerre quadrature, |w2/p2| <= 0.5".into(),
    ))
}

/// Criterion 8: the kernel operator: RL reduction, power and exponential
/// images, boundedness and compositions.
pub fn xi_operator(seed: u64, overrides: &HashMap<String, f64>) -> Result<SuiteReport> {
    let tol = tol_for(overrides, "xi_operator", 1e-8);
    let policy = TruncationPolicy::default();
    let mut details: Vec<String> = Vec::new();
    let mut fail = false;
    let mut max_scaled = 0.0f64;
    let track = |name: &str, dev: f64, sub_tol: f64, details: &mut Vec<String>| -> f64 {
        details.push(format!("{name}: {dev:.3e} (tol {sub_tol:.1e})"));
        dev / sub_tol
    };

    // (a) gamma1 = gamma2 = 0 reduction on polynomials of degree <= 6
    let mut dev_a = 0.0f64;
    {
        let pset = ParamSet::new(0.8, 1.2, 2, 0.0, 0.0)?;
        let sp = XiSpec::new(pset, 0.7, 0.4, 0.0, 0.0)?;
        let f = |t: f64, u: f64| {
            1.0 + t + 0.5 * t * t * t - u + 0.25 * u * u * u * u * u * u + t * t * u * u
        };
        let series = xi_apply_series(&sp, f, 0.9, 0.8, &policy, 12)?;
        let orders = FracOrderPair::new(0.8, 1.2, 0.0, 0.0)?;
        let direct = rl_double_integral(f, &orders, 0.9, 0.8, 12)?;
        dev_a = dev_a.max((series.value - direct).abs() / direct.abs());
    }
    let s = track("rl_reduction", dev_a, 1e-12, &mut details);
    fail |= dev_a > 1e-12;
    max_scaled = max_scaled.max(s);

    // (b,c) power image vs exact termwise series and vs kernel quadrature
    let mut dev_b = 0.0f64;
    let mut dev_c = 0.0f64;
    for n in 0..=3usize {
        for &kappa in &KAPPAS {
            for &mu in &[0.0, 0.5, 1.0] {
                for &zeta in &[0.0, 0.5, 1.0] {
                    let pset =
                        ParamSet::new(0.8, 1.1, kappa, -(n as f64), 2.2)?;
                    let sp = XiSpec::new(pset, 0.4, 0.6, 0.0, 0.0)?;
                    let (x, y) = (0.9, 0.7);
                    let closed = xi_power_image(&sp, mu, zeta, x, y, &policy)?;
                    // termwise series assembly via exact power rules
                    let k = kappa as usize;
                    let mut exact = Accumulator::new();
                    for s in 0..=n {
                        for r in 0..=(n - s) {
                            let als = 0.8 + s as f64;
                            let bkr = 1.1 + (k * r) as f64;
                            exact.add(
                                pochhammer(-(n as f64), s + r) * pochhammer(2.2, s)
                                    * sp.w1.powi(s as i32)
                                    * sp.w2.powi((k * r) as i32)
                                    / (factorial(r) * factorial(s))
                                    * power_rule_integral(mu, als)?
                                    * power_rule_integral(zeta, bkr)?
                                    * x.powf(mu + als)
                                    * y.powf(zeta + bkr),
                            );
                        }
                    }
                    dev_b = dev_b.max((closed - exact.value()).abs() / closed.abs());
                    // kernel route, exponents folded into the weight
                    let kernel = xi_apply_kernel_weighted(&sp, |_, _| 1.0, mu, zeta, x, y, 24)?;
                    dev_c = dev_c.max((closed - kernel).abs() / closed.abs());
                }
            }
        }
    }
    let s = track("power_image_series", dev_b, 1e-10, &mut details);
    fail |= dev_b > 1e-10;
    max_scaled = max_scaled.max(s);
    let s = track("power_image_kernel", dev_c, 1e-8, &mut details);
    fail |= dev_c > 1e-8;
    max_scaled = max_scaled.max(s);

    // (d) exponential image against the termwise series oracle
    let mut dev_d = 0.0f64;
    for n in 0..=3usize {
        for &kappa in &KAPPAS {
            let pset = ParamSet::new(0.7, 1.3, kappa, -(n as f64), 2.5)?;
            let sp = XiSpec::new(pset, 0.5, 0.55, 0.0, 0.0)?;
            // |w1/delta| and |w2/sigma| stay at or below 0.5 here
            let (delta, sigma) = (1.0, 1.1);
            let closed = xi_exp_image(&sp, delta, sigma, 0.5, 0.25)?;
            let oracle = xi_exp_image_series_oracle(&sp, delta, sigma, 0.5, 0.25)?;
            dev_d = dev_d.max((closed - oracle).abs() / closed.abs());
        }
    }
    let s = track("exp_image", dev_d, 1e-8, &mut details);
    fail |= dev_d > 1e-8;
    max_scaled = max_scaled.max(s);

    // (e) L1 boundedness on ten random polynomial samples over the unit box
    let mut worst_ratio = 0.0f64;
    {
        let pset = ParamSet::new(0.8, 1.2, 2, -2.0, 1.5)?;
        let sp = XiSpec::new(pset, 0.4, 0.3, 0.0, 0.0)?;
        let dom = BoxDomain::new(1.0, 0.0, 1.0, 0.0)?;
        let kbound = xi_bound_constant(&sp, &dom, &policy)?;
        let leg = gauss_jacobi_rule(12, 0.0, 0.0)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        for _ in 0..10 {
            let coefs: Vec<f64> = (0..9).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let f = |t: f64, u: f64| {
                let mut v = 0.0;
                for i in 0..3 {
                    for j in 0..3 {
                        v += coefs[3 * i + j] * t.powi(i as i32) * u.powi(j as i32);
                    }
                }
                v
            };
            let mut norm_f = 0.0f64;
            let mut norm_xf = 0.0f64;
            for (&vx, &wx) in leg.nodes.iter().zip(&leg.weights) {
                let x = (vx + 1.0) / 2.0;
                for (&vy, &wy) in leg.nodes.iter().zip(&leg.weights) {
                    let y = (vy + 1.0) / 2.0;
                    let w = wx * wy / 4.0; // box measure
                    norm_f += w * f(x, y).abs();
                    norm_xf += w * xi_apply_kernel(&sp, f, x, y, 12)?.abs();
                }
            }
            worst_ratio = worst_ratio.max(norm_xf / (kbound * norm_f));
        }
    }
    let dev_e = (worst_ratio - 1.0).max(0.0);
    let s = track("boundedness_margin", dev_e, 1e-9, &mut details);
    fail |= worst_ratio > 1.0 + 1e-9;
    max_scaled = max_scaled.max(s);

    // (f) composition corollary, both integral and derivative variants
    let mut dev_f = 0.0f64;
    for &g1 in &[-1.0, -2.0] {
        for derivative in [false, true] {
            let pset = ParamSet::new(0.9, 1.1, 2, g1, 1.8)?;
            let sp = XiSpec::new(pset, 0.5, 0.4, 0.0, 0.0)?;
            let orders = FracOrderPair::new(0.5, 0.5, 0.0, 0.0)?;
            let (l, m, r) = xi_composition_check(&sp, &orders, (1.0, 1.0), 0.8, 0.7, derivative)?;
            let scale = l.abs().max(m.abs()).max(r.abs());
            dev_f = dev_f.max((l - m).abs() / scale).max((m - r).abs() / scale);
        }
    }
    let s = track("composition", dev_f, 1e-9, &mut details);
    fail |= dev_f > 1e-9;
    max_scaled = max_scaled.max(s);

    // laplace multiplicativity rides along as part of the operator suite
    let dev_g;
    {
        let pset = ParamSet::new(0.8, 0.9, 1, -1.0, 1.4)?;
        let sp = XiSpec::new(pset, 0.3, 0.35, 0.0, 0.0)?;
        let (p, q) = (2.0, 2.5);
        let m1 = laplace_of_xi(&sp, |pp, qq| 1.0 / (pp * qq), p, q)? * (p * q);
        let m2 = laplace_of_xi(&sp, |pp, qq| 1.0 / ((pp - 0.5) * (qq - 0.25)), p, q)?
            * ((p - 0.5) * (q - 0.25));
        dev_g = (m1 - m2).abs() / m1.abs();
    }
    let s = track("laplace_multiplicativity", dev_g, 1e-12, &mut details);
    fail |= dev_g > 1e-12;
    max_scaled = max_scaled.max(s);

    Ok(SuiteReport {
        name: "xi_operator",
        max_dev: max_scaled * tol,
        tol,
        pass: !fail,
        detail: details.join("; "),
    })
}

/// Criterion 9: Gauss rules integrate their monomial bases to the exactness
/// degree against closed-form moments.
pub fn quadrature_exactness(overrides: &HashMap<String, f64>) -> Result<SuiteReport> {
    let tol = tol_for(overrides, "quadrature_exactness", 1e-13);
    let mut max_dev = 0.0f64;
    for &n in &[1usize, 2, 5, 10, 20, 40] {
        for &(a, b) in &[(0.0, 0.0), (0.5, -0.25), (2.0, 1.0), (-0.5, -0.5)] {
            let rule = gauss_jacobi_rule(n, a, b)?;
            // monomials in the shifted variable (1 - x): clean Beta moments,
            // built by the ratio ladder so the oracle itself stays at a few ulp
            let mut expect = 2.0f64.powf(a + b + 1.0) * gamma_fn(a + 1.0)? * gamma_fn(b + 1.0)?
                / gamma_fn(a + b + 2.0)?;
            for k in 0..=rule.exact_degree {
                if k > 0 {
                    expect *= 2.0 * (a + k as f64) / (a + b + k as f64 + 1.0);
                }
                let got = rule.integrate(|x| (1.0 - x).powi(k as i32));
                max_dev = max_dev.max((got - expect).abs() / expect);
            }
        }
    }
    for &n in &[1usize, 2, 5, 10, 20, 40, 64] {
        for &b in &[0.0, 0.5, 2.0, -0.25] {
            let rule = gauss_laguerre_rule(n, b)?;
            let kmax = rule.exact_degree.min(150);
            // moment ladder: m_k = (b + k) m_{k-1}
            let mut expect = gamma_fn(b + 1.0)?;
            for k in 0..=kmax {
                if k > 0 {
                    expect *= b + k as f64;
                }
                let got = rule.integrate(|y| y.powi(k as i32));
                max_dev = max_dev.max((got - expect).abs() / expect);
            }
        }
    }
    Ok(SuiteReport::finish(
        "quadrature_exactness",
        max_dev,
        tol,
        "Jacobi rules on the (1-x)^k basis, Laguerre rules on y^k, vs closed moments".into(),
    ))
}

/// Criterion 10: generating-function reductions are asserted; the full
/// identity is recorded for both right-hand variants, never asserted.
pub fn generating_function(overrides: &HashMap<String, f64>) -> Result<SuiteReport> {
    let tol = tol_for(overrides, "generating_function", 1e-10);
    let mut max_dev = 0.0f64;
    let mut rec_statement = 0.0f64;
    let mut rec_reconstruction = 0.0f64;
    for &kappa in &KAPPAS {
        for &(alpha, beta) in &[(0.0, 0.0), (0.5, 0.25), (2.0, 1.0)] {
            let p = ParamSet::new(alpha, beta, kappa, 0.0, 0.0)?;
            // t = 0 reduction: both sides equal 1
            let c = generating_function_check(&p, 0.2, 0.5, 0.0, 5)?;
            max_dev = max_dev.max((c.lhs - 1.0).abs());
            max_dev = max_dev.max((c.rhs_statement - 1.0).abs());
            max_dev = max_dev.max((c.rhs_reconstruction - 1.0).abs());
            // x = 1, y = 0 reduction: lhs telescopes to (1-t)^{-(1+a+b)}
            let t = 0.05;
            let c = generating_function_check(&p, 1.0, 0.0, t, 40)?;
            let closed = (1.0 - t).powf(-(1.0 + alpha + beta));
            max_dev = max_dev.max((c.lhs - closed).abs() / closed);
            // recorded full-identity battery; order 40 leaves the tail far
            // below the reporting precision at |t| <= 0.1 while keeping
            // Gamma(1 + beta + kappa n) representable at kappa = 3
            for &t in &[0.02, 0.05, 0.1] {
                for &(x, y) in &[(0.2, 0.5), (-0.4, 1.5)] {
                    let c = generating_function_check(&p, x, y, t, 40)?;
                    rec_statement =
                        rec_statement.max((c.rhs_statement - c.lhs).abs() / c.lhs.abs());
                    rec_reconstruction =
                        rec_reconstruction.max((c.rhs_reconstruction - c.lhs).abs() / c.lhs.abs());
                }
            }
        }
    }
    let detail = format!(
        "reductions asserted at {tol:.1e}; recorded full identity: statement variant \
         {rec_statement:.3e}, reconstruction variant (y-arg t y^k/(t-1), no kappa^kappa) \
         {rec_reconstruction:.3e} -- the reconstruction matches, the statement matches \
         only at kappa = 1"
    );
    Ok(SuiteReport::finish(
        "generating_function",
        max_dev,
        tol,
        detail,
    ))
}

/// Run the named suite, or every suite in order when `filter` is None.
pub fn run_suites(
    seed: u64,
    overrides: &HashMap<String, f64>,
    filter: Option<&str>,
) -> Result<Vec<SuiteReport>> {
    let mut out = Vec::new();
    let want = |name: &str| filter.map_or(true, |f| f == name);
    if want("representation_equivalence") {
        out.push(representation_equivalence(seed, overrides)?);
    }
    if want("biorthogonality") {
        out.push(biorthogonality(overrides)?);
    }
    if want("konhauser_pair") {
        out.push(konhauser_pair(overrides)?);
    }
    if want("ml_bridge") {
        out.push(ml_bridge(seed, overrides)?);
    }
    if want("frac_integral_image") {
        out.push(frac_integral_image(overrides)?);
    }
    if want("frac_derivative_image") {
        out.push(frac_derivative_image(overrides)?);
    }
    if want("laplace_poly") {
        out.push(laplace_poly(overrides)?);
    }
    if want("xi_operator") {
        out.push(xi_operator(seed, overrides)?);
    }
    if want("quadrature_exactness") {
        out.push(quadrature_exactness(overrides)?);
    }
    if want("generating_function") {
        out.push(generating_function(overrides)?);
    }
    Ok(out)
}
