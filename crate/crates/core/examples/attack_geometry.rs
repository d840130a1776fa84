//! Probe angle and sifted error rate of the translucent attack for a few error rates.

use collective_qkd::attack::{alpha_small_angle, AttackGeometry, ErrorModel, PcConvention};

fn main() -> Result<(), collective_qkd::AttackError> {
    let theta = 22.5f64.to_radians();
    println!("theta = 22.5 deg");
    println!(
        "{:>8} {:>12} {:>12} {:>12} {:>12} {:>12} {:>12}",
        "p_e", "theta'", "alpha", "small-angle", "squared", "linear", "half-sq"
    );
    for p_e in [0.0, 1e-8, 1e-6, 1e-4, 1e-2] {
        let g = AttackGeometry::from_error(theta, p_e)?;
        let norm: Vec<f64> = PcConvention::ALL.iter().map(|&c| ErrorModel::new(&g, c).p_e_norm).collect();
        println!(
            "{p_e:>8.0e} {:>12.6e} {:>12.6e} {:>12.6e} {:>12.4e} {:>12.4e} {:>12.4e}",
            g.theta_prime(),
            g.alpha(),
            alpha_small_angle(theta, p_e)?,
            norm[0],
            norm[1],
            norm[2]
        );
    }

    let g = AttackGeometry::from_alpha(theta, 0.05)?;
    println!("\nalpha = 0.05 needs p_e = {:.6e} (theta' = {:.6})", g.error_rate(), g.theta_prime());
    println!("unitarity residual {:.1e}", g.unitarity_residual());
    Ok(())
}
