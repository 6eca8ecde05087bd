//! Landauer current through a single site, against the closed form
//! `2 gamma atan(w / gamma)` at zero temperature, then a warm-lead sweep
//! over bias for a longer wire.

use qwire::quadrature::QuadConfig;
use qwire::transport::{landauer_current, BiasWindow};
use qwire::WireParams;

fn main() -> qwire::Result<()> {
    let quad = QuadConfig::default();
    let g = 0.2;
    let dot = WireParams::new(1, 0.0, 1.0, g)?;
    for w in [0.1, 1.0, 10.0] {
        let c = landauer_current(&dot, &BiasWindow::new(w, -w, 0.0)?, &quad);
        let exact = 2.0 * g * (w / g).atan();
        println!("N=1 window +-{w:<5} I={:.10}  closed form={exact:.10}", c.value);
    }

    let wire = WireParams::new(6, 0.0, 1.0, 0.3)?;
    println!("\nN=6, temperature 0.05");
    for k in 0..=8 {
        let bias = 0.5 * k as f64;
        let c = landauer_current(&wire, &BiasWindow::new(bias / 2.0, -bias / 2.0, 0.05)?, &quad);
        println!("  bias {bias:>4.1}  I={:.6}  (+-{:.1e})", c.value, c.error_estimate);
    }
    Ok(())
}
