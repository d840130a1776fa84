//! Cosets, block vectors and the resulting spectrum for a small code.

use collective_qkd::gf2::CodeSpec;
use collective_qkd::info::block_information;
use collective_qkd::parity::{block_spectrum, block_states, coset_partition};

fn main() -> Result<(), collective_qkd::Error> {
    let code = CodeSpec::new(vec!["11000".parse()?], "11111".parse()?)?;
    let alpha = 0.3;
    println!("code {}  alpha {alpha}", code.id());

    for coset in coset_partition(&code) {
        let st = block_states(&code, &coset, alpha)?;
        let members: Vec<String> = coset.members.iter().map(|m| m.to_string()).collect();
        println!("coset {}  {{{}}}", coset.representative, members.join(" "));
        println!("  phi0 {:+.4?}", st.phi0);
        println!("  phi1 {:+.4?}", st.phi1);
    }

    let spectrum = block_spectrum(&code, alpha)?;
    println!("\n{:>6} {:>10} {:>10} {:>10}", "rep", "a_j", "beta_j", "I_j");
    for b in &spectrum.blocks {
        println!("{:>6} {:>10.6} {:>10.6} {:>10.6}", b.representative, b.weight, b.beta, block_information(b.beta));
    }
    println!("sum a_j = {:.15}", spectrum.total_weight());
    Ok(())
}
