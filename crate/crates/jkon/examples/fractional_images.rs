//! Fractional integral and derivative images of the weighted JKML function:
//! tensor quadrature against the closed parameter-shift forms, the exact
//! termwise certificate for the derivative, and the finite-difference smoke
//! test.
//!
//!     cargo run --example fractional_images

use jkon::fractional::{
    frac_derivative_image_jkml, frac_derivative_termwise_dev, frac_integral_image_jkml,
    FracOrderPair, ScaledArgs,
};
use jkon::params::ParamSet;

fn main() -> jkon::Result<()> {
    let scales = ScaledArgs { w1: 1.0, w2: 1.0 };
    println!("integral image, terminating gamma1 = -n (numeric quadrature vs closed shift):");
    for n in 1..=4usize {
        let params = ParamSet::new(0.6, 0.8, 2, -(n as f64), 1.9 + n as f64)?;
        let orders = FracOrderPair::new(0.4, 0.6, 0.0, 0.0)?;
        let (numeric, closed) = frac_integral_image_jkml(&params, &orders, &scales, 0.7, 0.9, 24)?;
        println!(
            "  n={n}: numeric {numeric:+.15e}  closed {closed:+.15e}  rel {:.1e}",
            (numeric - closed).abs() / closed.abs()
        );
    }

    println!("\nderivative image, exact termwise power-rule certificate:");
    let scales = ScaledArgs { w1: 0.8, w2: 0.7 };
    for n in 1..=3usize {
        let params = ParamSet::new(0.9, 1.1, 2, -(n as f64), 2.4 + n as f64)?;
        let orders = FracOrderPair::new(0.45, 0.35, 0.0, 0.0)?;
        let dev = frac_derivative_termwise_dev(&params, &orders, &scales, 0.8, 0.9)?;
        println!("  n={n}: worst per-term deviation {dev:.2e}");
    }

    println!("\nderivative image, finite-difference smoke test (O(h^2), Richardson once):");
    let params = ParamSet::new(0.9, 1.1, 2, -2.0, 2.5)?;
    let orders = FracOrderPair::new(0.45, 0.35, 0.0, 0.0)?;
    let (numeric, closed) =
        frac_derivative_image_jkml(&params, &orders, &scales, 0.8, 0.9, 1e-4, 16)?;
    println!(
        "  numeric {numeric:+.12e}  closed {closed:+.12e}  rel {:.1e}",
        (numeric - closed).abs() / closed.abs()
    );
    Ok(())
}
