//! Fast block spectrum checked against dense density matrices.

use collective_qkd::catalog::enumerate_codes;
use collective_qkd::oracle::compare;

fn main() -> Result<(), collective_qkd::Error> {
    let codes = enumerate_codes(6);
    let mut worst = (0.0f64, 0.0f64, 0.0f64);
    for code in &codes {
        for alpha in [0.05, 0.2, 0.5] {
            let rep = compare(code, alpha)?;
            assert!(rep.passes(), "{} at {alpha}", rep.code_id);
            worst.0 = worst.0.max(rep.max_offblock_entry);
            worst.1 = worst.1.max(rep.max_block_rank2_residual);
            worst.2 = worst.2.max(rep.info_delta);
        }
    }
    println!("{} codes up to n = 6, three angles each", codes.len());
    println!("max off-block entry   {:.1e}", worst.0);
    println!("max rank-2 residual   {:.1e}", worst.1);
    println!("max information delta {:.1e}", worst.2);
    Ok(())
}
