//! Reading a code from the plain-text format and reporting on it.

use collective_qkd::gf2::{check_span, distance_profile, CodeSpec};
use collective_qkd::info::analyze;

const TEXT: &str = "\
# n r, then r checks and the key string, each with its announced parity
6 2
110000 1
001100 0
111111 0
";

fn main() -> Result<(), collective_qkd::Error> {
    let code = CodeSpec::parse(TEXT)?;
    println!("parsed {}", code.id());
    print!("{}", code.to_file_string());
    for (w, d) in check_span(&code).iter().zip(distance_profile(&code)) {
        println!("  span word {w}  distance to key {d}");
    }
    let rep = analyze(&code, 0.05)?;
    println!("I_total {:.6e}  I_sum {:.6e}  holds {}", rep.i_total, rep.i_sum, rep.conjecture_holds);

    match CodeSpec::parse("6 1\n1100z0 0\n111111 0\n") {
        Ok(_) => unreachable!(),
        Err(e) => println!("bad file: {e}"),
    }
    Ok(())
}
