//! Double Laplace transforms: the closed terminating forms for the weighted
//! JKML function and polynomial against 2-D Gauss-Laguerre quadrature, and
//! the multiplicative factorization of the operator transform.
//!
//!     cargo run --example laplace_transforms

use jkon::jkpoly::{jk_poly, JkPolyForm};
use jkon::params::{Accumulator, ParamSet};
use jkon::quadrature::gauss_laguerre_rule;
use jkon::xi::{laplace_jk_poly_closed, laplace_of_xi, XiSpec};

fn main() -> jkon::Result<()> {
    let (alpha, beta, kappa) = (0.5f64, 0.25f64, 2u32);
    let (w1, w2, p1, p2) = (0.7, 0.3, 1.3, 1.1);
    println!("L2[x^a y^b P_n(1 - 2 w1 x, w2 y)](p1, p2), closed vs quadrature:");
    let rx = gauss_laguerre_rule(24, alpha)?;
    let ry = gauss_laguerre_rule(24, beta)?;
    let pset = ParamSet::new(alpha, beta, kappa, 0.0, 0.0)?;
    for n in 0..=3usize {
        let closed = laplace_jk_poly_closed(n, alpha, beta, kappa, w1, w2, p1, p2)?;
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
        let numeric = p1.powf(-(1.0 + alpha)) * p2.powf(-(1.0 + beta)) * acc.value();
        println!(
            "  n={n}: closed {closed:+.15e}  quadrature {numeric:+.15e}  rel {:.1e}",
            (closed - numeric).abs() / closed.abs()
        );
    }

    println!("\noperator transform factorizes: L2(xi f) / L2 f is independent of f:");
    let spec = XiSpec::new(ParamSet::new(0.8, 0.9, 1, -1.0, 1.4)?, 0.3, 0.35, 0.0, 0.0)?;
    let (p, q) = (2.0, 2.5);
    let m1 = laplace_of_xi(&spec, |pp, qq| 1.0 / (pp * qq), p, q)? * (p * q);
    let m2 = laplace_of_xi(&spec, |pp, qq| 1.0 / ((pp - 0.5) * (qq - 0.25)), p, q)?
        * ((p - 0.5) * (q - 0.25));
    println!("  with L2f = 1/(pq):                multiplier {m1:.15e}");
    println!("  with L2f = 1/((p-1/2)(q-1/4)):    multiplier {m2:.15e}");
    Ok(())
}
