//! Exhaustive comparison of I_total with the closed-form sum over short codes.
//!
//! Usage: `cargo run --release --example conjecture_scan [max_n]`

use collective_qkd::catalog::{conjecture_scan, enumerate_codes, SCAN_ALPHAS};

fn main() {
    let max_n: usize = std::env::args().nth(1).map_or(8, |a| a.parse().expect("max_n"));
    let codes = enumerate_codes(max_n);
    let rows = conjecture_scan(max_n, &SCAN_ALPHAS);
    println!("{} codes, {} rows", codes.len(), rows.len());

    let violated: Vec<_> = rows.iter().filter(|r| !r.verdict.holds).collect();
    let equal = rows.iter().filter(|r| r.verdict.holds && !r.verdict.strict).count();
    println!("{} violations, {equal} equalities", violated.len());
    for row in violated {
        let v = row.verdict;
        println!(
            "  {:<28} alpha {:<5} I_total {:.9e}  I_sum {:.9e}  rel {:+.2e}",
            row.code_id,
            row.alpha,
            v.i_total,
            v.i_sum,
            v.margin / v.i_sum
        );
    }
}
