//! Exact information on the Hamming parity bit against the closed-form sum, its
//! leading term, and the relaxed bound.

use collective_qkd::gf2::hamming_code;
use collective_qkd::info::{analyze, hamming_bound, hamming_leading_term};

fn main() -> Result<(), collective_qkd::Error> {
    for r in 2..=4 {
        let code = hamming_code(r)?;
        let power = 1i32 << (r - 1);
        println!("H_{r}: n = {}, I ~ alpha^{power}", code.n());
        println!(
            "{:>8} {:>14} {:>14} {:>14} {:>14} {:>12}",
            "alpha", "I_total", "I_sum", "leading", "bound", "I/alpha^k"
        );
        for alpha in [1e-3, 3e-3, 1e-2, 3e-2, 1e-1] {
            let rep = analyze(&code, alpha)?;
            println!(
                "{alpha:>8.0e} {:>14.6e} {:>14.6e} {:>14.6e} {:>14.6e} {:>12.4}",
                rep.i_total,
                rep.i_sum,
                hamming_leading_term(r as u32, alpha)?,
                hamming_bound(r as u32, alpha)?,
                rep.i_total / alpha.powi(power)
            );
        }
        println!();
    }
    Ok(())
}
