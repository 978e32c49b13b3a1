//! Gauss-Jacobi and generalized Gauss-Laguerre rules, plus singular-kernel
//! quadrature for Riemann-Liouville integrals.
//!
//! Rules are built by the Golub-Welsch approach: the symmetric tridiagonal
//! Jacobi matrix of the weight's three-term recurrence is diagonalized and
//! weights come from the squared first eigenvector components scaled by the
//! zeroth moment. Weights are positive by construction and an n-point rule
//! integrates polynomials of degree <= 2n - 1 exactly.
//!
//! Fractional kernels are never sampled at the singularity: the substitution
//! t = x - (x - a) (1 - v) / 2 folds (x - t)^{zeta - 1} into a Gauss-Jacobi
//! weight, turning the improper integral into a polynomial-exact one.

use crate::error::{Error, Result};
use crate::special::{gamma_fn, ln_gamma};
use nalgebra::DMatrix;

/// Which weight a rule integrates against.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RuleKind {
    /// (1 - x)^alpha (1 + x)^beta on (-1, 1)
    GaussJacobi { alpha: f64, beta: f64 },
    /// e^{-y} y^beta on (0, inf)
    GaussLaguerre { beta: f64 },
}

/// Nodes, positive weights and the exactness degree of a Gauss rule.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub kind: RuleKind,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub exact_degree: usize,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Weighted sum over the canonical interval.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

/// Diagonalize the symmetric tridiagonal Jacobi matrix for the eigenvalue
/// estimates, Newton-polish each node on the orthonormal polynomial built
/// from the same recurrence, and take weights from the Christoffel sum
/// w_i = 1 / sum_k ptilde_k(x_i)^2. Polishing brings the nodes to about one
/// ulp, which the high moments of wide-support weights need.
///
/// `diag` holds a_0..a_{n-1}, `off` holds b_1..b_n (one past the matrix; the
/// extra b_n extends the recurrence to ptilde_n whose zeros are the nodes).
fn golub_welsch(diag: &[f64], off: &[f64], mu0: f64, n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = diag[i];
        if i + 1 < n {
            m[(i, i + 1)] = off[i];
            m[(i + 1, i)] = off[i];
        }
    }
    let eig = m.symmetric_eigen();
    let mut nodes: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    if nodes.iter().any(|x| !x.is_finite()) {
        return Err(Error::EigenFailure(n));
    }
    nodes.sort_by(|a, b| a.partial_cmp(b).unwrap());

    // orthonormal recurrence: b_{k+1} p_{k+1} = (x - a_k) p_k - b_k p_{k-1},
    // p_0 = 1/sqrt(mu0); returns (p_n, p_n', sum_{k<n} p_k^2)
    let eval = |x: f64| -> (f64, f64, f64) {
        let mut pkm1 = 0.0f64;
        let mut pk = 1.0 / mu0.sqrt();
        let mut dkm1 = 0.0f64;
        let mut dk = 0.0f64;
        let mut sum = pk * pk;
        for k in 0..n {
            let bk = if k == 0 { 0.0 } else { off[k - 1] };
            let bk1 = off[k];
            let pk1 = ((x - diag[k]) * pk - bk * pkm1) / bk1;
            let dk1 = ((x - diag[k]) * dk + pk - bk * dkm1) / bk1;
            pkm1 = pk;
            pk = pk1;
            dkm1 = dk;
            dk = dk1;
            if k + 1 < n {
                sum += pk * pk;
            }
        }
        (pk, dk, sum)
    };

    let mut weights = Vec::with_capacity(n);
    for x in nodes.iter_mut() {
        for _ in 0..3 {
            let (p, dp, _) = eval(*x);
            let step = p / dp;
            if !step.is_finite() {
                break;
            }
            *x -= step;
        }
        let (_, _, sum) = eval(*x);
        let w = 1.0 / sum;
        if !w.is_finite() || w <= 0.0 {
            return Err(Error::EigenFailure(n));
        }
        weights.push(w);
    }
    Ok((nodes, weights))
}

/// n-point Gauss-Jacobi rule for the weight (1 - x)^alpha (1 + x)^beta.
pub fn gauss_jacobi_rule(n: usize, alpha: f64, beta: f64) -> Result<QuadratureRule> {
    if n == 0 {
        return Err(Error::Domain("rule needs at least one node".into()));
    }
    if !(alpha > -1.0) || !(beta > -1.0) {
        return Err(Error::Domain(format!(
            "gauss_jacobi_rule needs alpha, beta > -1, got ({alpha}, {beta})"
        )));
    }
    // zeroth moment 2^{a+b+1} B(a+1, b+1)
    let mu0 = ((alpha + beta + 1.0) * 2.0f64.ln() + ln_gamma(alpha + 1.0)? + ln_gamma(beta + 1.0)?
        - ln_gamma(alpha + beta + 2.0)?)
    .exp();
    let mut diag = Vec::with_capacity(n);
    let mut off = Vec::with_capacity(n);
    let ab = alpha + beta;
    diag.push((beta - alpha) / (ab + 2.0));
    for k in 1..=n {
        let kf = k as f64;
        let denom = 2.0 * kf + ab;
        if k < n {
            diag.push((beta * beta - alpha * alpha) / (denom * (denom + 2.0)));
        }
        // k = 1 separately: the generic formula is 0/0 at alpha + beta = -1
        let b2 = if k == 1 {
            4.0 * (1.0 + alpha) * (1.0 + beta) / ((ab + 2.0) * (ab + 2.0) * (ab + 3.0))
        } else {
            4.0 * kf * (kf + alpha) * (kf + beta) * (kf + ab)
                / (denom * denom * (denom + 1.0) * (denom - 1.0))
        };
        off.push(b2.sqrt());
    }
    let (nodes, weights) = golub_welsch(&diag, &off, mu0, n)?;
    Ok(QuadratureRule {
        kind: RuleKind::GaussJacobi { alpha, beta },
        nodes,
        weights,
        exact_degree: 2 * n - 1,
    })
}

/// n-point generalized Gauss-Laguerre rule for the weight e^{-y} y^beta.
pub fn gauss_laguerre_rule(n: usize, beta: f64) -> Result<QuadratureRule> {
    if n == 0 {
        return Err(Error::Domain("rule needs at least one node".into()));
    }
    if !(beta > -1.0) {
        return Err(Error::Domain(format!(
            "gauss_laguerre_rule needs beta > -1, got {beta}"
        )));
    }
    let mu0 = gamma_fn(beta + 1.0)?;
    let mut diag = Vec::with_capacity(n);
    let mut off = Vec::with_capacity(n);
    for k in 0..n {
        let kf = k as f64;
        diag.push(2.0 * kf + beta + 1.0);
        let k1 = kf + 1.0;
        off.push((k1 * (k1 + beta)).sqrt());
    }
    let (nodes, weights) = golub_welsch(&diag, &off, mu0, n)?;
    Ok(QuadratureRule {
        kind: RuleKind::GaussLaguerre { beta },
        nodes,
        weights,
        exact_degree: 2 * n - 1,
    })
}

/// Riemann-Liouville fractional integral
///
///   (I_{a+}^{zeta} f)(x) = 1/Gamma(zeta) int_a^x (x - t)^{zeta-1} f(t) dt
///
/// by an n-point Gauss-Jacobi rule with the kernel absorbed into the weight.
/// Exact (to rounding) for polynomial f of degree <= 2n - 1.
pub fn rl_kernel_quad<F: Fn(f64) -> f64>(f: F, a: f64, x: f64, zeta: f64, n: usize) -> Result<f64> {
    rl_kernel_quad_weighted(f, a, x, zeta, 0.0, n)
}

/// Same integral with an extra algebraic factor (t - a)^lambda folded into
/// the rule, so integrands of the form (t - a)^lambda * smooth(t) are also
/// polynomial-exact:
///
///   1/Gamma(zeta) int_a^x (x - t)^{zeta-1} (t - a)^lambda f(t) dt
pub fn rl_kernel_quad_weighted<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    x: f64,
    zeta: f64,
    lambda: f64,
    n: usize,
) -> Result<f64> {
    if !(x > a) {
        return Err(Error::Domain(format!(
            "rl_kernel_quad needs x > a, got x = {x}, a = {a}"
        )));
    }
    if !(zeta > 0.0) {
        return Err(Error::Domain(format!("order must be positive, got {zeta}")));
    }
    let rule = gauss_jacobi_rule(n, zeta - 1.0, lambda)?;
    let h = x - a;
    let mut acc = 0.0;
    for (&v, &w) in rule.nodes.iter().zip(&rule.weights) {
        let t = x - h * (1.0 - v) / 2.0;
        acc += w * f(t);
    }
    let scale = h.powf(zeta + lambda) * 2.0f64.powf(-(zeta + lambda)) / gamma_fn(zeta)?;
    Ok(scale * acc)
}
