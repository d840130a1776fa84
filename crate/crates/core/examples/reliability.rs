//! Failure probability of single-error correction with Hamming codes.

use collective_qkd::attack::{failure_probability, failure_probability_leading};

fn main() {
    println!("{:>4} {:>8} {:>14} {:>14} {:>10}", "n", "q", "p_f", "n(n-1)/2 q^2", "n q");
    for r in 2..=5u32 {
        let n = (1usize << r) - 1;
        for q in [1e-6, 1e-4, 1e-2] {
            println!(
                "{n:>4} {q:>8.0e} {:>14.6e} {:>14.6e} {:>10.2e}",
                failure_probability(n, q),
                failure_probability_leading(n, q),
                n as f64 * q
            );
        }
    }
}
