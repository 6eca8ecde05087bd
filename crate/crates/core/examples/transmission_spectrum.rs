//! Transmission spectrum of a weakly coupled wire: N resonances at the chain
//! levels `eps0 + 2 v cos(m pi / (N+1))`.
//!
//! cargo run --example transmission_spectrum -- 5

use qwire::transport::{self, chain_levels};
use qwire::{Method, WireParams};

fn main() -> qwire::Result<()> {
    let n = std::env::args().nth(1).map_or(5, |a| a.parse().expect("site count"));
    let p = WireParams::new(n, 0.0, 1.0, 0.2)?;
    let s = transport::spectrum(&p, -2.5, 2.5, 2001, Method::Gf)?;
    let t = s.t_gf.as_ref().expect("requested");

    println!("chain levels: {:?}", chain_levels(&p));
    println!("resonances (energy, T):");
    for i in 1..t.len() - 1 {
        if t[i] > t[i - 1] && t[i] >= t[i + 1] {
            println!("  {:+.4}  {:.6}", s.energies[i], t[i]);
        }
    }
    // coarse text plot
    for i in (0..t.len()).step_by(50) {
        println!("{:+6.3} {}", s.energies[i], "#".repeat((t[i] * 60.0).round() as usize));
    }
    Ok(())
}
