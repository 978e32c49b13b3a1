//! Build the biorthogonality matrix of the polynomial family against its
//! displayed dual and print its structure: the diagonal matches the closed
//! form, the n <= 2m block vanishes, the n >= 2m+1 block does not.
//!
//!     cargo run --example biorthogonality

use jkon::jkpoly::{biorthogonality_matrix, jacobi_l2_norm};
use jkon::params::ParamSet;
use jkon::quadrature::{gauss_jacobi_rule, gauss_laguerre_rule};

fn main() -> jkon::Result<()> {
    let (alpha, beta, kappa) = (0.5, 0.25, 2u32);
    let nmax = 5usize;
    let params = ParamSet::new(alpha, beta, kappa, 0.0, 0.0)?;
    let rule_x = gauss_jacobi_rule(nmax + 2, alpha, beta)?;
    let ny = (kappa as usize * nmax + nmax + 1).div_ceil(2) + 1;
    let rule_y = gauss_laguerre_rule(ny, beta)?;

    let m = biorthogonality_matrix(nmax, &params, &rule_x, &rule_y)?;
    println!("entries scaled by the row diagonal (alpha=0.5, beta=0.25, kappa=2):\n");
    print!("      ");
    for mm in 0..=nmax {
        print!("  m={mm:>1}      ");
    }
    println!();
    for n in 0..=nmax {
        let d = jacobi_l2_norm(n, alpha, beta)?;
        print!("n={n}: ");
        for mm in 0..=nmax {
            print!(" {:+10.2e}", m[n][mm] / d);
        }
        println!();
    }

    println!("\ndiagonal against 2^(1+a+b) G(1+a+n) G(1+b+n) / ((2n+a+b+1) G(1+a+b+n) n!):");
    for n in 0..=nmax {
        let d = jacobi_l2_norm(n, alpha, beta)?;
        println!("  n={n}: {:+.12e}  (closed {:+.12e})", m[n][n], d);
    }
    println!("\nthe Konhauser pair itself is two-sided: <Z_n, Y_m> is diagonal,");
    println!("see the konhauser_pair verification suite");
    Ok(())
}
