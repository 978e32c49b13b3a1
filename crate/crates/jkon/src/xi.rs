//! The double integral operator with the bivariate JKML function in its
//! kernel:
//!
//!   (xi f)(x, y) = int_d^y int_b^x (x-t)^{a-1} (y-u)^{b-1}
//!                  E_{a,b,k}^{(g1;g2)}(w1 (x-t), w2 (y-u)) f(t, u) dt du
//!
//! together with its expansion into Riemann-Liouville integrals, the L1
//! boundedness constant, closed-form power and exponential images,
//! compositions with fractional operators, and the double Laplace
//! transforms of the JKML function and of the operator itself. At
//! g1 = g2 = 0 the kernel collapses and the operator reduces to the plain
//! double Riemann-Liouville integral.

use crate::error::{Error, Result};
use crate::fractional::{power_rule_derivative, power_rule_integral, FracOrderPair};
use crate::jkml::{jkml_eval, JkmlArgs};
use crate::params::{Accumulator, ParamSet, SeriesResult, TruncationPolicy};
use crate::quadrature::gauss_jacobi_rule;
use crate::special::{
    factorial, gamma_fn, hyp2f0_terminating, ln_abs_pochhammer_sign, ln_gamma, pochhammer,
    TERMINATION_TOL,
};

/// Operator parameters: the JKML kernel tuple, kernel scale factors and the
/// left limits of the two integrations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XiSpec {
    pub params: ParamSet,
    pub w1: f64,
    pub w2: f64,
    pub b: f64,
    pub d: f64,
}

impl XiSpec {
    pub fn new(params: ParamSet, w1: f64, w2: f64, b: f64, d: f64) -> Result<Self> {
        params.require_ml_domain()?;
        Ok(Self { params, w1, w2, b, d })
    }

    fn terminating_order(&self) -> Option<usize> {
        let g = self.params.gamma1;
        if g <= TERMINATION_TOL && (g - g.round()).abs() <= TERMINATION_TOL {
            Some((-g.round()) as usize)
        } else {
            None
        }
    }
}

/// Rectangle (b, a) x (d, c) over which the L1 boundedness constant is taken:
/// a and c are the right ends, b and d the left ends.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoxDomain {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl BoxDomain {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        if !(a > b) || !(c > d) {
            return Err(Error::Domain(format!(
                "box needs a > b and c > d, got ({a}, {b}) x ({c}, {d})"
            )));
        }
        Ok(Self { a, b, c, d })
    }
}

/// Series coefficient (g1)_{r+s} (g2)_s w1^s w2^{k r} / (r! s!).
fn series_coefficient(spec: &XiSpec, s: usize, r: usize) -> f64 {
    let k = spec.params.kappa as usize;
    pochhammer(spec.params.gamma1, s + r) * pochhammer(spec.params.gamma2, s)
        * spec.w1.powi(s as i32)
        * spec.w2.powi((k * r) as i32)
        / (factorial(r) * factorial(s))
}

/// Apply the operator through its series expansion into Riemann-Liouville
/// integrals: sum over (s, r) of the series coefficient times
/// I_y^{beta + k r} I_x^{alpha + s} f. Terminating gamma1 = -n gives an
/// exact finite sum; otherwise diagonal blocks run under the policy.
pub fn xi_apply_series<F: Fn(f64, f64) -> f64 + Copy>(
    spec: &XiSpec,
    f: F,
    x: f64,
    y: f64,
    policy: &TruncationPolicy,
    nquad: usize,
) -> Result<SeriesResult> {
    policy.validate()?;
    let k = spec.params.kappa as usize;
    let rl_term = |s: usize, r: usize| -> Result<f64> {
        let orders = FracOrderPair {
            mu: spec.params.alpha + s as f64,
            zeta: spec.params.beta + (k * r) as f64,
            a: spec.b,
            b: spec.d,
        };
        crate::fractional::rl_double_integral(f, &orders, x, y, nquad)
    };
    if let Some(n) = spec.terminating_order() {
        let mut acc = Accumulator::new();
        let mut terms = 0usize;
        for s in 0..=n {
            for r in 0..=(n - s) {
                acc.add(series_coefficient(spec, s, r) * rl_term(s, r)?);
                terms += 1;
            }
        }
        return Ok(SeriesResult::exact(acc.value(), terms));
    }
    let mut acc = Accumulator::new();
    let mut terms = 0usize;
    let mut quiet = 0usize;
    let mut window_max = 0.0f64;
    let mut last_block = f64::INFINITY;
    for diag in 0..=(policy.max_s + policy.max_r) {
        let s_lo = diag.saturating_sub(policy.max_r);
        let s_hi = diag.min(policy.max_s);
        let mut block_abs = 0.0f64;
        for s in s_lo..=s_hi {
            let r = diag - s;
            let t = series_coefficient(spec, s, r) * rl_term(s, r)?;
            acc.add(t);
            block_abs += t.abs();
            terms += 1;
        }
        last_block = block_abs;
        if block_abs < policy.abs_tol {
            quiet += 1;
            window_max = window_max.max(block_abs);
            if quiet >= policy.tail_window {
                return Ok(SeriesResult {
                    value: acc.value(),
                    abs_error_estimate: window_max,
                    terms_used: terms,
                    converged: true,
                });
            }
        } else {
            quiet = 0;
            window_max = 0.0;
        }
    }
    Ok(SeriesResult {
        value: acc.value(),
        abs_error_estimate: last_block.max(policy.abs_tol),
        terms_used: terms,
        converged: false,
    })
}

/// Apply the operator by direct tensor quadrature of the kernel form. The
/// algebraic kernel factors are absorbed into Gauss-Jacobi weights, so no
/// node ever touches the singularity; the JKML kernel is evaluated at the
/// quadrature nodes.
pub fn xi_apply_kernel<F: Fn(f64, f64) -> f64>(
    spec: &XiSpec,
    f: F,
    x: f64,
    y: f64,
    nquad: usize,
) -> Result<f64> {
    if !(x > spec.b) || !(y > spec.d) {
        return Err(Error::Domain(format!(
            "evaluation point must lie inside the box: x = {x}, y = {y}"
        )));
    }
    let policy = TruncationPolicy::default();
    let alpha = spec.params.alpha;
    let beta = spec.params.beta;
    let rx = gauss_jacobi_rule(nquad, alpha - 1.0, 0.0)?;
    let ry = gauss_jacobi_rule(nquad, beta - 1.0, 0.0)?;
    let hx = x - spec.b;
    let hy = y - spec.d;
    let args0 = JkmlArgs::new(
        alpha,
        beta,
        spec.params.kappa,
        spec.params.gamma1,
        spec.params.gamma2,
        0.0,
        0.0,
    )?;
    let mut acc = Accumulator::new();
    for (&vx, &wx) in rx.nodes.iter().zip(&rx.weights) {
        let xt = hx * (1.0 - vx) / 2.0; // x - t
        for (&vy, &wy) in ry.nodes.iter().zip(&ry.weights) {
            let yu = hy * (1.0 - vy) / 2.0; // y - u
            let e = jkml_eval(
                &JkmlArgs {
                    x: spec.w1 * xt,
                    y: spec.w2 * yu,
                    ..args0
                },
                &policy,
            )?;
            if !e.converged {
                return Err(Error::NonConvergence {
                    terms: e.terms_used,
                    last_block: e.abs_error_estimate,
                });
            }
            acc.add(wx * wy * e.value * f(x - xt, y - yu));
        }
    }
    // unlike the RL operator the kernel carries no 1/Gamma prefactor; the
    // gammas sit inside E
    let scale = hx.powf(alpha) * 2.0f64.powf(-alpha) * hy.powf(beta) * 2.0f64.powf(-beta);
    Ok(scale * acc.value())
}

/// Kernel-form quadrature for integrands (t-b)^{lambda_x} (u-d)^{lambda_y}
/// f_smooth(t, u): the algebraic factors join the kernel exponents in the
/// Gauss-Jacobi weights, keeping the rule polynomial-exact for smooth
/// f_smooth. Used to certify power images with non-integer exponents.
pub fn xi_apply_kernel_weighted<F: Fn(f64, f64) -> f64>(
    spec: &XiSpec,
    f_smooth: F,
    lambda_x: f64,
    lambda_y: f64,
    x: f64,
    y: f64,
    nquad: usize,
) -> Result<f64> {
    if !(x > spec.b) || !(y > spec.d) {
        return Err(Error::Domain(format!(
            "evaluation point must lie inside the box: x = {x}, y = {y}"
        )));
    }
    let policy = TruncationPolicy::default();
    let alpha = spec.params.alpha;
    let beta = spec.params.beta;
    let rx = gauss_jacobi_rule(nquad, alpha - 1.0, lambda_x)?;
    let ry = gauss_jacobi_rule(nquad, beta - 1.0, lambda_y)?;
    let hx = x - spec.b;
    let hy = y - spec.d;
    let args0 = JkmlArgs::new(
        alpha,
        beta,
        spec.params.kappa,
        spec.params.gamma1,
        spec.params.gamma2,
        0.0,
        0.0,
    )?;
    let mut acc = Accumulator::new();
    for (&vx, &wx) in rx.nodes.iter().zip(&rx.weights) {
        let xt = hx * (1.0 - vx) / 2.0;
        for (&vy, &wy) in ry.nodes.iter().zip(&ry.weights) {
            let yu = hy * (1.0 - vy) / 2.0;
            let e = jkml_eval(
                &JkmlArgs {
                    x: spec.w1 * xt,
                    y: spec.w2 * yu,
                    ..args0
                },
                &policy,
            )?;
            if !e.converged {
                return Err(Error::NonConvergence {
                    terms: e.terms_used,
                    last_block: e.abs_error_estimate,
                });
            }
            acc.add(wx * wy * e.value * f_smooth(x - xt, y - yu));
        }
    }
    let scale = hx.powf(alpha + lambda_x)
        * 2.0f64.powf(-(alpha + lambda_x))
        * hy.powf(beta + lambda_y)
        * 2.0f64.powf(-(beta + lambda_y));
    Ok(scale * acc.value())
}

/// The L1 boundedness constant
///
///   K = (a-b)^alpha (c-d)^beta sum_{s,r} |(g1)_{r+s}| |(g2)_s|
///       |w1 (a-b)|^s |w2 (c-d)|^{k r}
///       / ( r! s! (alpha+s) (beta+k r) Gamma(alpha+s) Gamma(beta+k r) ).
pub fn xi_bound_constant(spec: &XiSpec, dom: &BoxDomain, policy: &TruncationPolicy) -> Result<f64> {
    policy.validate()?;
    let alpha = spec.params.alpha;
    let beta = spec.params.beta;
    let k = spec.params.kappa as usize;
    let wx = (spec.w1 * (dom.a - dom.b)).abs();
    let wy = (spec.w2 * (dom.c - dom.d)).abs();
    let lnwx = wx.ln();
    let lnwy = wy.ln();
    let cap = spec.terminating_order();
    let mut acc = Accumulator::new();
    let mut quiet = 0usize;
    let mut done = false;
    for diag in 0..=(policy.max_s + policy.max_r) {
        if done {
            break;
        }
        let mut block = 0.0f64;
        let s_lo = diag.saturating_sub(policy.max_r);
        let s_hi = diag.min(policy.max_s);
        for s in s_lo..=s_hi {
            let r = diag - s;
            if let Some(n) = cap {
                if s + r > n {
                    continue;
                }
            }
            if wx == 0.0 && s > 0 || wy == 0.0 && r > 0 {
                continue;
            }
            let (l1, _) = ln_abs_pochhammer_sign(spec.params.gamma1, s + r);
            let (l2, _) = ln_abs_pochhammer_sign(spec.params.gamma2, s);
            if l1 == f64::NEG_INFINITY || l2 == f64::NEG_INFINITY {
                continue;
            }
            let xs = if wx == 0.0 { 0.0 } else { s as f64 * lnwx };
            let yr = if wy == 0.0 { 0.0 } else { (k * r) as f64 * lnwy };
            let ln_t = l1 + l2 + xs + yr
                - ln_gamma(r as f64 + 1.0)?
                - ln_gamma(s as f64 + 1.0)?
                - (alpha + s as f64).ln()
                - (beta + (k * r) as f64).ln()
                - ln_gamma(alpha + s as f64)?
                - ln_gamma(beta + (k * r) as f64)?;
            block += ln_t.exp();
        }
        acc.add(block);
        if let Some(n) = cap {
            if diag >= n {
                done = true;
            }
        }
        if block < policy.abs_tol {
            quiet += 1;
            if quiet >= policy.tail_window {
                done = true;
            }
        } else {
            quiet = 0;
        }
    }
    if !done && cap.is_none() {
        return Err(Error::NonConvergence {
            terms: (policy.max_s + 1) * (policy.max_r + 1),
            last_block: f64::NAN,
        });
    }
    Ok((dom.a - dom.b).powf(alpha) * (dom.c - dom.d).powf(beta) * acc.value())
}

/// Closed-form image of a power function:
///
///   xi [(x-b)^mu (y-d)^zeta] = Gamma(mu+1) Gamma(zeta+1)
///       (x-b)^{mu+alpha} (y-d)^{zeta+beta}
///       E_{alpha+mu+1, beta+zeta+1, k}^{(g1;g2)}(w1 (x-b), w2 (y-d)).
pub fn xi_power_image(
    spec: &XiSpec,
    mu: f64,
    zeta: f64,
    x: f64,
    y: f64,
    policy: &TruncationPolicy,
) -> Result<f64> {
    if !(mu > -1.0) || !(zeta > -1.0) {
        return Err(Error::Domain(format!(
            "power image needs exponents > -1, got ({mu}, {zeta})"
        )));
    }
    if !(x > spec.b) || !(y > spec.d) {
        return Err(Error::Domain("evaluation point outside the box".into()));
    }
    let args = JkmlArgs::new(
        spec.params.alpha + mu + 1.0,
        spec.params.beta + zeta + 1.0,
        spec.params.kappa,
        spec.params.gamma1,
        spec.params.gamma2,
        spec.w1 * (x - spec.b),
        spec.w2 * (y - spec.d),
    )?;
    let e = jkml_eval(&args, policy)?;
    if !e.converged {
        return Err(Error::NonConvergence {
            terms: e.terms_used,
            last_block: e.abs_error_estimate,
        });
    }
    Ok(gamma_fn(mu + 1.0)? * gamma_fn(zeta + 1.0)?
        * (x - spec.b).powf(mu + spec.params.alpha)
        * (y - spec.d).powf(zeta + spec.params.beta)
        * e.value)
}

/// Closed-form image of e^{delta x + sigma y} for the operator with left
/// limits pushed to -infinity; requires terminating gamma1 = -n so the 2F0
/// factor is a finite sum.
pub fn xi_exp_image(spec: &XiSpec, delta: f64, sigma: f64, x: f64, y: f64) -> Result<f64> {
    let n = spec
        .terminating_order()
        .ok_or_else(|| Error::Domain("exponential image needs terminating gamma1 = -n".into()))?;
    if !(delta > 0.0) || !(sigma > 0.0) {
        return Err(Error::Domain("exp image needs delta, sigma > 0".into()));
    }
    let k = spec.params.kappa as i32;
    let ratio = spec.w2 / sigma;
    if ratio.abs() >= 1.0 {
        return Err(Error::Domain(format!(
            "exp image needs |w2/sigma| < 1, got {ratio}"
        )));
    }
    let alpha = spec.params.alpha;
    let beta = spec.params.beta;
    let arg = sigma.powi(k) * spec.w1 / (delta * (sigma.powi(k) - spec.w2.powi(k)));
    let f20 = hyp2f0_terminating(n, spec.params.gamma2, arg);
    Ok(delta.powf(-alpha)
        * sigma.powf(-beta)
        * (delta * x + sigma * y).exp()
        * (1.0 - ratio.powi(k)).powi(n as i32)
        * f20)
}

/// Termwise oracle for the exponential image: the series expansion applied
/// with the exponential rule I^{order} e^{c x} = c^{-order} e^{c x} per term.
pub fn xi_exp_image_series_oracle(
    spec: &XiSpec,
    delta: f64,
    sigma: f64,
    x: f64,
    y: f64,
) -> Result<f64> {
    let n = spec
        .terminating_order()
        .ok_or_else(|| Error::Domain("series oracle needs terminating gamma1".into()))?;
    let k = spec.params.kappa as usize;
    let mut acc = Accumulator::new();
    for s in 0..=n {
        for r in 0..=(n - s) {
            acc.add(
                series_coefficient(spec, s, r)
                    * delta.powf(-(spec.params.alpha + s as f64))
                    * sigma.powf(-(spec.params.beta + (k * r) as f64)),
            );
        }
    }
    Ok(acc.value() * (delta * x + sigma * y).exp())
}

/// Double Laplace transform of x^alpha y^beta E_{alpha+1,beta+1,k}(w1 x, w2 y)
/// in its closed terminating form:
///
///   p1^{-(1+alpha)} p2^{-(1+beta)} (1 - (w2/p2)^k)^{n}
///   2F0(-n, g2; -; w1 p2^k / (p1 (p2^k - w2^k))).
pub fn laplace_jkml_closed(params: &ParamSet, w1: f64, w2: f64, p1: f64, p2: f64) -> Result<f64> {
    let n = {
        let g = params.gamma1;
        if g <= TERMINATION_TOL && (g - g.round()).abs() <= TERMINATION_TOL {
            (-g.round()) as usize
        } else {
            return Err(Error::Domain(
                "closed Laplace transform is certified for terminating gamma1 only".into(),
            ));
        }
    };
    if !(p1 > 0.0) || !(p2 > 0.0) {
        return Err(Error::Domain("Laplace variables must be positive".into()));
    }
    let k = params.kappa as i32;
    let ratio = w2 / p2;
    if ratio.abs() >= 1.0 {
        return Err(Error::Domain(format!(
            "Laplace transform needs |w2/p2| < 1, got {ratio}"
        )));
    }
    let arg = w1 * p2.powi(k) / (p1 * (p2.powi(k) - w2.powi(k)));
    let f20 = hyp2f0_terminating(n, params.gamma2, arg);
    Ok(p1.powf(-(1.0 + params.alpha)) * p2.powf(-(1.0 + params.beta))
        * (1.0 - ratio.powi(k)).powi(n as i32)
        * f20)
}

/// Polynomial corollary: the double Laplace transform of
/// x^alpha y^beta P_n(1 - 2 w1 x, w2 y) with the Gamma(1+alpha+n)/n! prefactor.
pub fn laplace_jk_poly_closed(
    n: usize,
    alpha: f64,
    beta: f64,
    kappa: u32,
    w1: f64,
    w2: f64,
    p1: f64,
    p2: f64,
) -> Result<f64> {
    let params = ParamSet::new(alpha, beta, kappa, -(n as f64), 1.0 + alpha + beta + n as f64)?;
    let base = laplace_jkml_closed(&params, w1, w2, p1, p2)?;
    Ok(gamma_fn(1.0 + alpha + n as f64)? / factorial(n) * base)
}

/// Double Laplace transform of the operator applied to f, with left limits
/// at the origin: the transform factorizes into a multiplier times the
/// transform of f.
pub fn laplace_of_xi<F: Fn(f64, f64) -> f64>(
    spec: &XiSpec,
    f_transform: F,
    p: f64,
    q: f64,
) -> Result<f64> {
    if spec.b != 0.0 || spec.d != 0.0 {
        return Err(Error::Domain(
            "the Laplace factorization holds for left limits at the origin".into(),
        ));
    }
    let n = spec
        .terminating_order()
        .ok_or_else(|| Error::Domain("certified for terminating gamma1 only".into()))?;
    if !(p > 0.0) || !(q > 0.0) {
        return Err(Error::Domain("Laplace variables must be positive".into()));
    }
    let k = spec.params.kappa as i32;
    let ratio = spec.w2 / q;
    if ratio.abs() >= 1.0 {
        return Err(Error::Domain(format!(
            "needs |w2/q| < 1, got {ratio}"
        )));
    }
    let alpha = spec.params.alpha;
    let beta = spec.params.beta;
    let arg = q.powi(k) * spec.w1 / (p * (q.powi(k) - spec.w2.powi(k)));
    let f20 = hyp2f0_terminating(n, spec.params.gamma2, arg);
    Ok(p.powf(-alpha) * q.powf(-beta) * (1.0 - ratio.powi(k)).powi(n as i32) * f20
        * f_transform(p, q))
}

/// Three-way composition check on a monomial f = (x-b)^p (y-d)^q, all sides
/// assembled from exact power rules:
///
///   lhs = RL^{(mu,zeta)} (xi f),  mid = xi with shifted (alpha+mu, beta+zeta),
///   rhs = xi (RL^{(mu,zeta)} f)
///
/// and the derivative variant with D in place of I and (alpha-mu, beta-zeta).
pub fn xi_composition_check(
    spec: &XiSpec,
    orders: &FracOrderPair,
    mono: (f64, f64),
    x: f64,
    y: f64,
    derivative: bool,
) -> Result<(f64, f64, f64)> {
    let n = spec
        .terminating_order()
        .ok_or_else(|| Error::Domain("composition check needs terminating gamma1".into()))?;
    let (p, q) = mono;
    let alpha = spec.params.alpha;
    let beta = spec.params.beta;
    let k = spec.params.kappa as usize;
    let hx = x - spec.b;
    let hy = y - spec.d;
    let (mu, zeta) = (orders.mu, orders.zeta);
    let sgn = if derivative { -1.0 } else { 1.0 };
    let shift_rule = |lam: f64, order: f64| -> Result<f64> {
        if derivative {
            power_rule_derivative(lam, order)
        } else {
            power_rule_integral(lam, order)
        }
    };
    if derivative && (!(alpha - mu > 0.0) || !(beta - zeta > 0.0)) {
        return Err(Error::Domain(
            "derivative composition needs alpha > mu and beta > zeta".into(),
        ));
    }

    let mut lhs = Accumulator::new();
    let mut mid = Accumulator::new();
    let mut rhs = Accumulator::new();
    for s in 0..=n {
        for r in 0..=(n - s) {
            let coef = series_coefficient(spec, s, r);
            let (als, bkr) = (alpha + s as f64, beta + (k * r) as f64);
            // xi f term: PR(p, alpha+s) PR(q, beta+kr) (x-b)^{p+alpha+s} ...
            let xi_factor = power_rule_integral(p, als)? * power_rule_integral(q, bkr)?;
            // lhs: fractional op applied to that power function
            lhs.add(
                coef * xi_factor
                    * shift_rule(p + als, mu)?
                    * shift_rule(q + bkr, zeta)?
                    * hx.powf(p + als + sgn * mu)
                    * hy.powf(q + bkr + sgn * zeta),
            );
            // mid: operator with shifted kernel orders
            let (als2, bkr2) = (alpha + sgn * mu + s as f64, beta + sgn * zeta + (k * r) as f64);
            mid.add(
                coef * power_rule_integral(p, als2)?
                    * power_rule_integral(q, bkr2)?
                    * hx.powf(p + als2)
                    * hy.powf(q + bkr2),
            );
            // rhs: fractional op on the monomial first, then the operator
            rhs.add(
                coef * shift_rule(p, mu)?
                    * shift_rule(q, zeta)?
                    * power_rule_integral(p + sgn * mu, als)?
                    * power_rule_integral(q + sgn * zeta, bkr)?
                    * hx.powf(p + sgn * mu + als)
                    * hy.powf(q + sgn * zeta + bkr),
            );
        }
    }
    Ok((lhs.value(), mid.value(), rhs.value()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fractional::rl_double_integral;
    use approx::assert_relative_eq;

    fn spec(alpha: f64, beta: f64, kappa: u32, g1: f64, g2: f64, w1: f64, w2: f64) -> XiSpec {
        XiSpec::new(
            ParamSet::new(alpha, beta, kappa, g1, g2).unwrap(),
            w1,
            w2,
            0.0,
            0.0,
        )
        .unwrap()
    }

    fn policy() -> TruncationPolicy {
        TruncationPolicy::default()
    }

    #[test]
    fn zero_gammas_reduce_to_riemann_liouville() {
        let sp = spec(0.8, 1.2, 2, 0.0, 0.0, 0.7, 0.4);
        let f = |t: f64, u: f64| 1.0 + t * t + u * u * u;
        let series = xi_apply_series(&sp, f, 0.9, 0.8, &policy(), 12).unwrap();
        let orders = FracOrderPair::new(0.8, 1.2, 0.0, 0.0).unwrap();
        let direct = rl_double_integral(f, &orders, 0.9, 0.8, 12).unwrap();
        assert_relative_eq!(series.value, direct, max_relative = 1e-12);
        let kernel = xi_apply_kernel(&sp, f, 0.9, 0.8, 16).unwrap();
        assert_relative_eq!(kernel, direct, max_relative = 1e-12);
    }

    #[test]
    fn series_and_kernel_agree_on_terminating_kernel() {
        let sp = spec(0.8, 1.2, 1, -1.0, 1.0, 0.6, 0.5);
        let f = |_: f64, _: f64| 1.0;
        let a = xi_apply_series(&sp, f, 0.7, 0.9, &policy(), 16).unwrap();
        assert_eq!(a.abs_error_estimate, 0.0);
        let b = xi_apply_kernel(&sp, f, 0.7, 0.9, 24).unwrap();
        assert_relative_eq!(a.value, b, max_relative = 1e-10);
    }

    #[test]
    fn kernel_is_linear() {
        let sp = spec(0.9, 0.7, 2, -2.0, 1.3, 0.4, 0.3);
        let f = |t: f64, u: f64| t + 2.0 * u;
        let one = xi_apply_kernel(&sp, f, 0.8, 0.6, 16).unwrap();
        let scaled = xi_apply_kernel(&sp, |t, u| 3.5 * f(t, u), 0.8, 0.6, 16).unwrap();
        assert_relative_eq!(scaled, 3.5 * one, max_relative = 1e-13);
    }

    #[test]
    fn bound_constant_degenerate_cases() {
        // gamma1 = 0: single surviving term
        let sp = spec(0.8, 1.2, 2, 0.0, 1.5, 0.7, 0.4);
        let dom = BoxDomain::new(1.5, 0.0, 2.0, 0.0).unwrap();
        let k = xi_bound_constant(&sp, &dom, &policy()).unwrap();
        let expect = 1.5f64.powf(0.8) * 2.0f64.powf(1.2)
            / (0.8 * 1.2 * gamma_fn(0.8).unwrap() * gamma_fn(1.2).unwrap());
        assert_relative_eq!(k, expect, max_relative = 1e-13);

        // unit box, alpha = beta = 1, all couplings zero: K = 1
        let sp = spec(1.0, 1.0, 1, 0.0, 0.0, 0.0, 0.0);
        let dom = BoxDomain::new(1.0, 0.0, 1.0, 0.0).unwrap();
        assert_relative_eq!(
            xi_bound_constant(&sp, &dom, &policy()).unwrap(),
            1.0,
            max_relative = 1e-14
        );
    }

    #[test]
    fn power_image_matches_series_and_kernel() {
        let sp = spec(0.8, 1.1, 2, -2.0, 2.2, 0.4, 0.6);
        let (mu, zeta) = (0.5, 0.5);
        let (x, y) = (0.9, 0.7);
        let closed = xi_power_image(&sp, mu, zeta, x, y, &policy()).unwrap();
        // exact termwise assembly of the series form through power rules
        let mut exact = Accumulator::new();
        for s in 0..=2usize {
            for r in 0..=(2 - s) {
                let als = 0.8 + s as f64;
                let bkr = 1.1 + (2 * r) as f64;
                exact.add(
                    series_coefficient(&sp, s, r)
                        * power_rule_integral(mu, als).unwrap()
                        * power_rule_integral(zeta, bkr).unwrap()
                        * x.powf(mu + als)
                        * y.powf(zeta + bkr),
                );
            }
        }
        assert_relative_eq!(closed, exact.value(), max_relative = 1e-12);
        // kernel quadrature with the half-integer powers folded into the rule
        let kernel = xi_apply_kernel_weighted(&sp, |_, _| 1.0, mu, zeta, x, y, 24).unwrap();
        assert_relative_eq!(closed, kernel, max_relative = 1e-9);
    }

    #[test]
    fn power_image_with_integer_exponents_is_quadrature_exact() {
        let sp = spec(0.8, 1.1, 2, -2.0, 2.2, 0.4, 0.6);
        let (x, y) = (0.9, 0.7);
        let closed = xi_power_image(&sp, 1.0, 2.0, x, y, &policy()).unwrap();
        let series = xi_apply_series(&sp, |t, u| t * u * u, x, y, &policy(), 16).unwrap();
        assert_relative_eq!(closed, series.value, max_relative = 1e-12);
        let kernel = xi_apply_kernel(&sp, |t, u| t * u * u, x, y, 24).unwrap();
        assert_relative_eq!(closed, kernel, max_relative = 1e-9);
    }

    #[test]
    fn exp_image_against_termwise_series() {
        for (n, kappa) in [(1usize, 1u32), (2, 2), (3, 3)] {
            let sp = spec(0.7, 1.3, kappa, -(n as f64), 2.5, 0.3, 0.4);
            let (delta, sigma) = (1.1, 1.2);
            let closed = xi_exp_image(&sp, delta, sigma, 0.5, 0.25).unwrap();
            let oracle = xi_exp_image_series_oracle(&sp, delta, sigma, 0.5, 0.25).unwrap();
            assert_relative_eq!(closed, oracle, max_relative = 1e-13);
        }
        // w2 = 0, gamma1 = -1: the 2F0 collapses to the two-term sum
        // 1 - gamma2 w1 / delta
        let sp = spec(0.7, 1.3, 2, -1.0, 2.5, 0.3, 0.0);
        let (delta, sigma) = (1.1, 1.2);
        let v = xi_exp_image(&sp, delta, sigma, 0.5, 0.25).unwrap();
        let expect = delta.powf(-0.7)
            * sigma.powf(-1.3)
            * (delta * 0.5 + sigma * 0.25f64).exp()
            * (1.0 - 2.5 * 0.3 / delta);
        assert_relative_eq!(v, expect, max_relative = 1e-13);
    }

    #[test]
    fn exp_image_zero_gammas() {
        let sp = spec(0.7, 1.3, 2, -0.0, 0.0, 0.3, 0.4);
        // gamma1 = -0 terminates at n = 0: plain exponential rule squared
        let v = xi_exp_image(&sp, 1.5, 2.0, 0.3, 0.2).unwrap();
        let expect = 1.5f64.powf(-0.7) * 2.0f64.powf(-1.3) * (1.5 * 0.3 + 2.0 * 0.2f64).exp();
        assert_relative_eq!(v, expect, max_relative = 1e-13);
    }

    #[test]
    fn exp_image_domain_guard() {
        let sp = spec(0.7, 1.3, 2, -1.0, 2.5, 0.3, 2.4);
        assert!(xi_exp_image(&sp, 1.1, 1.2, 0.5, 0.25).is_err());
    }

    #[test]
    fn laplace_closed_degenerate() {
        // gamma1 = 0 leaves the pure power transform
        let params = ParamSet::new(0.5, 0.25, 2, 0.0, 1.7).unwrap();
        let v = laplace_jkml_closed(&params, 0.7, 0.5, 1.3, 1.1).unwrap();
        let expect = 1.3f64.powf(-1.5) * 1.1f64.powf(-1.25);
        assert_relative_eq!(v, expect, max_relative = 1e-13);

        // w1 = 0: 2F0 collapses to 1, leaving the (1 - (w2/p2)^k)^n factor
        let params = ParamSet::new(0.5, 0.25, 2, -3.0, 1.7).unwrap();
        let v = laplace_jkml_closed(&params, 0.0, 0.5, 1.3, 1.1).unwrap();
        let expect = 1.3f64.powf(-1.5) * 1.1f64.powf(-1.25)
            * (1.0 - (0.5f64 / 1.1).powi(2)).powi(3);
        assert_relative_eq!(v, expect, max_relative = 1e-13);
    }

    #[test]
    fn laplace_of_xi_end_to_end_quadrature() {
        // apply the operator by quadrature, then take the double Laplace
        // transform numerically over a box large enough that the truncated
        // tail is negligible, and compare with the closed factorization
        let sp = spec(1.0, 1.0, 1, -1.0, 1.3, 0.3, 0.35);
        let (delta, sigma) = (0.5, 0.4);
        let (p, q) = (6.0, 6.5);
        let f = |t: f64, u: f64| (delta * t + sigma * u).exp();
        let f_hat = |pp: f64, qq: f64| 1.0 / ((pp - delta) * (qq - sigma));
        let closed = laplace_of_xi(&sp, f_hat, p, q).unwrap();

        // e^{-(p-delta) x} decay makes the tail beyond 10 about e^{-55}
        let leg = gauss_jacobi_rule(40, 0.0, 0.0).unwrap();
        let half = 5.0f64;
        let mut acc = Accumulator::new();
        for (&vx, &wx) in leg.nodes.iter().zip(&leg.weights) {
            let x = half * (vx + 1.0);
            for (&vy, &wy) in leg.nodes.iter().zip(&leg.weights) {
                let y = half * (vy + 1.0);
                let xi_f = xi_apply_series(&sp, f, x, y, &policy(), 16).unwrap().value;
                acc.add(wx * wy * (-(p * x) - q * y).exp() * xi_f);
            }
        }
        let numeric = half * half * acc.value();
        assert_relative_eq!(numeric, closed, max_relative = 1e-6);
    }

    #[test]
    fn laplace_of_xi_multiplicative() {
        let sp = spec(0.8, 0.9, 1, -1.0, 1.4, 0.3, 0.35);
        let (p, q) = (2.0, 2.5);
        let t1 = laplace_of_xi(&sp, |pp, qq| 1.0 / (pp * qq), p, q).unwrap();
        let t2 = laplace_of_xi(&sp, |pp, qq| 1.0 / ((pp - 0.5) * (qq - 0.25)), p, q).unwrap();
        let m1 = t1 / (1.0 / (p * q));
        let m2 = t2 / (1.0 / ((p - 0.5) * (q - 0.25)));
        assert_relative_eq!(m1, m2, max_relative = 1e-12);

        // gamma1 = gamma2 = 0, f == 1: p^{-alpha-1} q^{-beta-1}
        let sp0 = spec(0.8, 0.9, 1, 0.0, 0.0, 0.3, 0.35);
        let v = laplace_of_xi(&sp0, |pp, qq| 1.0 / (pp * qq), p, q).unwrap();
        assert_relative_eq!(
            v,
            p.powf(-1.8) * q.powf(-1.9),
            max_relative = 1e-13
        );
    }

    #[test]
    fn composition_three_way() {
        let sp = spec(0.9, 1.1, 2, -1.0, 1.8, 0.5, 0.4);
        let orders = FracOrderPair::new(0.5, 0.5, 0.0, 0.0).unwrap();
        let (l, m, r) = xi_composition_check(&sp, &orders, (1.0, 1.0), 0.8, 0.7, false).unwrap();
        assert_relative_eq!(l, m, max_relative = 1e-12);
        assert_relative_eq!(m, r, max_relative = 1e-12);
        // derivative variant
        let (l, m, r) = xi_composition_check(&sp, &orders, (1.0, 1.0), 0.8, 0.7, true).unwrap();
        assert_relative_eq!(l, m, max_relative = 1e-12);
        assert_relative_eq!(m, r, max_relative = 1e-12);
    }

    #[test]
    fn composition_zero_orders_collapse() {
        // mu = zeta -> 0 is not an admissible order, but the identity can be
        // read off with tiny orders instead
        let sp = spec(0.9, 1.1, 1, -1.0, 1.8, 0.5, 0.4);
        let orders = FracOrderPair::new(1e-9, 1e-9, 0.0, 0.0).unwrap();
        let (l, m, r) = xi_composition_check(&sp, &orders, (2.0, 1.0), 0.8, 0.7, false).unwrap();
        let base = xi_apply_series(&sp, |t, u| t * t * u, 0.8, 0.7, &policy(), 12)
            .unwrap()
            .value;
        assert_relative_eq!(l, base, max_relative = 1e-6);
        assert_relative_eq!(m, base, max_relative = 1e-6);
        assert_relative_eq!(r, base, max_relative = 1e-6);
    }
}
