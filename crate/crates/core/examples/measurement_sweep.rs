//! Closed-form accessible information of two pure states against a brute-force search
//! over projective measurements.

use collective_qkd::info::block_information;
use collective_qkd::oracle::measurement_sweep_info;

fn main() {
    println!("{:>8} {:>20} {:>20} {:>10}", "beta", "formula", "sweep(1e5)", "delta");
    for beta in [0.0, 0.01, 0.1, 0.3, std::f64::consts::FRAC_PI_8, 0.6, std::f64::consts::FRAC_PI_4] {
        let a = block_information(beta);
        let b = measurement_sweep_info(beta, 100_000);
        println!("{beta:>8.4} {a:>20.15} {b:>20.15} {:>10.1e}", (a - b).abs());
    }
}
