//! Check `cof^2 = A_{N-1}^2 - A_{N-2} A_N` for one tridiagonal Toeplitz family,
//! exactly and in double precision.
//!
//! cargo run --example identity_check -- 3 1 40

use qwire::tridiag::{identity_terms, ArithmeticMode, SymToeplitzTridiag};
use qwire::Scalar;

fn main() -> qwire::Result<()> {
    // exact mode needs integer entries
    let args: Vec<i64> = std::env::args().skip(1).map(|a| a.parse().expect("integer argument")).collect();
    let (alpha, beta, n_max) = match args[..] {
        [a, b, n] => (a as f64, b as f64, n as usize),
        _ => (3.0, 1.0, 40),
    };
    println!("{:>4} {:>44} {:>12}", "N", "exact gap (= beta^(2N-2))", "float resid");
    for n in 2..=n_max {
        let m = SymToeplitzTridiag::new(alpha, beta, n)?;
        let exact = identity_terms(&m, ArithmeticMode::ExactInteger)?;
        let float = identity_terms(&m, ArithmeticMode::FloatingDouble)?;
        assert!(exact.residual.is_zero());
        let Scalar::Int(gap) = &exact.gap else { unreachable!() };
        println!("{n:>4} {gap:>44} {:>12.3e}", float.residual.to_f64());
    }
    Ok(())
}
