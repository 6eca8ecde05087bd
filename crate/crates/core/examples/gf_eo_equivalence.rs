//! The Green's-function and evolution-operator transmittances coincide only
//! through the continuant identity: the hat-determinant gap
//! `C^_{N-1}^2 - C^_{N-2} C^_N` is far from zero, yet equals `v^(2N-2)`.

use qwire::transport::{equivalence_report, uniform_grid};
use qwire::WireParams;

fn main() -> qwire::Result<()> {
    for n in [1, 2, 3, 6, 12] {
        let p = WireParams::new(n, 0.1, 0.8, 0.6)?;
        let grid = uniform_grid(-2.5, 2.5, 2001)?;
        let r = equivalence_report(&p, &grid)?;
        println!(
            "N={n:>2}  max|T_GF-T_EO|={:.2e}  max|gap|={:.4e}  v^(2N-2)={:.4e}  max rel(gap vs cof^2)={:.2e}",
            r.max_abs_diff,
            r.max_abs_hat_gap,
            p.v().powi(2 * n as i32 - 2),
            r.max_bridge_rel
        );
    }
    Ok(())
}
