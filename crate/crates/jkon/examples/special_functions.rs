//! The scalar building blocks: gamma, terminating hypergeometric sums,
//! Jacobi and Laguerre polynomials, the Konhauser biorthogonal pair and
//! Bessel polynomials.
//!
//!     cargo run --example special_functions

use jkon::special::{
    bessel_poly, gamma_fn, hyp2f0_terminating, hyp2f1_terminating, jacobi_poly, konhauser_y,
    konhauser_z, laguerre_poly, JacobiForm,
};

fn main() -> jkon::Result<()> {
    println!("gamma:");
    for z in [0.5, 5.0, -2.5, 170.2] {
        println!("  Gamma({z:>6}) = {:.15e}", gamma_fn(z)?);
    }
    println!("  Gamma(-3)    -> {:?}", gamma_fn(-3.0).unwrap_err().to_string());

    println!("\nterminating hypergeometric sums:");
    println!("  2F1(-2, 1; 1; 1)        = {}", hyp2f1_terminating(2, 1.0, 1.0, 1.0)?);
    println!("  2F0(-2, 2; -; 1/4)      = {}", hyp2f0_terminating(2, 2.0, 0.25));

    println!("\nclassical families at x = 0.3:");
    println!(
        "  P_3^(0.5,-0.25)(x) = {:+.15e}",
        jacobi_poly(3, 0.5, -0.25, 0.3, JacobiForm::F1)?
    );
    println!("  L_3^0.5(x)         = {:+.15e}", laguerre_poly(3, 0.5, 0.3));

    println!("\nKonhauser pair at kappa = 2, beta = 0.5:");
    for n in 0..=3usize {
        println!(
            "  Z_{n}(1.3) = {:+.12e}    Y_{n}(0.8) = {:+.12e}",
            konhauser_z(n, 0.5, 2, 1.3),
            konhauser_y(n, 0.5, 2, 0.8)
        );
    }
    println!("  (kappa = 1 reduces both to Laguerre polynomials)");

    println!("\nBessel polynomial y_2(x; 2, 1) at x = 0.4: {:+.12e}", bessel_poly(2, 2.0, 1.0, 0.4)?);
    Ok(())
}
