//! Continuants as Chebyshev polynomials: `det = beta^N U_N(alpha / 2 beta)`.
//! With alpha = 3, beta = 1 they are the even-index Fibonacci numbers.

use qwire::tridiag::{det, det_chebyshev, det_sequence, ArithmeticMode, SymToeplitzTridiag};
use qwire::Scalar;

fn main() -> qwire::Result<()> {
    let m = SymToeplitzTridiag::new(3.0, 1.0, 30)?;
    let seq = det_sequence(&m, ArithmeticMode::ExactInteger)?;
    for k in 0..=30 {
        let Scalar::Int(a) = seq.get(k) else { unreachable!() };
        let cheb = det_chebyshev(&m.with_dim(k))?;
        println!("A_{k:<2} = F_{:<2} = {a:>20}   chebyshev {cheb:.6e}", 2 * k + 2);
    }
    let float = det(&m, ArithmeticMode::FloatingDouble)?.to_f64();
    println!("float recurrence at N=30: {float:.6e}");
    Ok(())
}
