//! Brute-force checks of the fast path on small codes.
//!
//! Nothing here reuses the coset machinery of [`crate::parity`]: cosets are found by
//! explicit span enumeration, blocks are diagonalized numerically, and the information
//! formula is evaluated directly or by sweeping measurements.

use std::f64::consts::PI;

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::Error;
use crate::gf2::{span_set, BitString, CodeSpec};
use crate::info::total_information;
use crate::parity::{block_spectrum, consistent_strings, dense_density_matrix, Block, BlockSpectrum};

/// Largest `n` the oracle accepts.
pub const ORACLE_MAX_N: usize = 10;

/// Relative eigenvalue threshold for rank decisions is `dim · ε` times the largest
/// eigenvalue; genuine eigenvalues of these matrices reach `s^{2n}`, far below any fixed cutoff.
pub fn rank_threshold(dim: usize) -> f64 {
    dim as f64 * f64::EPSILON
}

fn check_size(code: &CodeSpec) -> Result<(), Error> {
    if code.n() > ORACLE_MAX_N {
        Err(Error::TooLarge { n: code.n(), max: ORACLE_MAX_N })
    } else {
        Ok(())
    }
}

/// Cosets of `span(v_1..v_r, v_d)`, each sorted, ordered by smallest member.
fn brute_cosets(code: &CodeSpec) -> Vec<Vec<usize>> {
    let span: Vec<u32> = span_set(code.n(), &code.key_basis()).expect("valid code").iter().map(|w| w.value()).collect();
    let dim = 1usize << code.n();
    let mut seen = vec![false; dim];
    let mut out = Vec::new();
    for start in 0..dim {
        if seen[start] {
            continue;
        }
        let mut members: Vec<usize> = span.iter().map(|&w| start ^ w as usize).collect();
        members.sort_unstable();
        for &m in &members {
            seen[m] = true;
        }
        out.push(members);
    }
    out
}

/// Zero-pattern check of both dense parity matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct TheoremCheck {
    /// Largest `|ρ_jk|` with `j ⊕ k` outside the span, over both matrices.
    pub max_offblock_entry: f64,
    /// Largest `| |ρ_jk| - |ψ_j| |ψ_k| |` with `j ⊕ k` inside the span.
    pub max_onblock_error: f64,
    /// Coset pairs for which no sign-flipping string `C` was found.
    pub witness_failures: usize,
    /// Coset pairs checked for a witness.
    pub witness_pairs: usize,
}

/// Dense check that entries vanish exactly off the span and equal `±|ψ_j||ψ_k|` on it,
/// plus, for one zero entry per pair of cosets, an explicit string `C` that pairs each
/// consistent `x` with `x ⊕ C` of opposite sign.
pub fn verify_theorem(code: &CodeSpec, alpha: f64) -> Result<TheoremCheck, Error> {
    check_size(code)?;
    let n = code.n();
    let dim = 1usize << n;
    let span: std::collections::BTreeSet<u32> = span_set(n, &code.key_basis())?.iter().map(|w| w.value()).collect();
    let (s, c) = alpha.sin_cos();
    let mag: Vec<f64> = (0..dim)
        .map(|j| {
            let ones = (j as u32).count_ones() as i32;
            c.powi(n as i32 - ones) * s.powi(ones)
        })
        .collect();

    let mut max_offblock_entry: f64 = 0.0;
    let mut max_onblock_error: f64 = 0.0;
    for key in [false, true] {
        let rho = dense_density_matrix(code, key, alpha)?;
        for j in 0..dim {
            for k in 0..dim {
                let v = rho[(j, k)];
                if span.contains(&((j ^ k) as u32)) {
                    max_onblock_error = max_onblock_error.max((v.abs() - mag[j] * mag[k]).abs());
                } else {
                    max_offblock_entry = max_offblock_entry.max(v.abs());
                }
            }
        }
    }

    // strings orthogonal to every word of the span
    let dual: Vec<u32> =
        (0u32..1 << n).filter(|&cand| span.iter().all(|&v| (cand & v).count_ones() % 2 == 0)).collect();
    let sample = consistent_strings(code, false)[0];
    let cosets = brute_cosets(code);
    let mut witness_failures = 0;
    let mut witness_pairs = 0;
    for (a, ca) in cosets.iter().enumerate() {
        for cb in &cosets[a + 1..] {
            witness_pairs += 1;
            let diff = (ca[0] ^ cb[0]) as u32;
            let found = dual.iter().find(|&&cand| (cand & diff).count_ones() % 2 == 1);
            let ok = found.is_some_and(|&cand| {
                let y = BitString::new(n, sample.value() ^ cand).expect("in range");
                let flips = (sample.value() & diff).count_ones() % 2 != (y.value() & diff).count_ones() % 2;
                code.accepts(y) && (y & code.key_string()).parity() == (sample & code.key_string()).parity() && flips
            });
            if !ok {
                witness_failures += 1;
            }
        }
    }
    Ok(TheoremCheck { max_offblock_entry, max_onblock_error, witness_failures, witness_pairs })
}

/// Spectrum recovered by diagonalizing each dense block.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleSpectrum {
    pub spectrum: BlockSpectrum,
    /// Largest `|λ_2| / λ_1` over all blocks of both matrices.
    pub max_rank2_residual: f64,
    /// Largest difference between the traces of matching blocks of `ρ_0` and `ρ_1`.
    pub max_trace_mismatch: f64,
}

fn principal(block: DMatrix<f64>) -> (f64, f64, nalgebra::DVector<f64>) {
    let eig = SymmetricEigen::new(block);
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let top = eig.eigenvalues[order[0]];
    let second = order.get(1).map_or(0.0, |&i| eig.eigenvalues[i].abs());
    (top, second, eig.eigenvectors.column(order[0]).into_owned())
}

/// Reorder the dense matrices into coset blocks and diagonalize each block.
pub fn brute_force_spectrum(code: &CodeSpec, alpha: f64) -> Result<OracleSpectrum, Error> {
    check_size(code)?;
    let rho0 = dense_density_matrix(code, false, alpha)?;
    let rho1 = dense_density_matrix(code, true, alpha)?;
    let mut blocks = Vec::new();
    let mut max_rank2_residual: f64 = 0.0;
    let mut max_trace_mismatch: f64 = 0.0;
    for members in brute_cosets(code) {
        let m = members.len();
        let sub = |rho: &DMatrix<f64>| DMatrix::from_fn(m, m, |p, q| rho[(members[p], members[q])]);
        let (b0, b1) = (sub(&rho0), sub(&rho1));
        let weight = b0.trace();
        max_trace_mismatch = max_trace_mismatch.max((weight - b1.trace()).abs());
        let (l0, r0, e0) = principal(b0);
        let (l1, r1, e1) = principal(b1);
        if l0 > 0.0 {
            max_rank2_residual = max_rank2_residual.max(r0 / l0);
        }
        if l1 > 0.0 {
            max_rank2_residual = max_rank2_residual.max(r1 / l1);
        }
        // angle between unit vectors via ‖e0 - e1‖ and ‖e0 + e1‖, exact for tiny angles
        let e1 = if e0.dot(&e1) < 0.0 { -e1 } else { e1 };
        let angle = 2.0 * (&e0 - &e1).norm().atan2((&e0 + &e1).norm());
        blocks.push(Block { weight, beta: 0.5 * angle, representative: BitString::new(code.n(), members[0] as u32)? });
    }
    Ok(OracleSpectrum {
        spectrum: BlockSpectrum { n: code.n(), r: code.r(), alpha, blocks },
        max_rank2_residual,
        max_trace_mismatch,
    })
}

fn mutual_information(joint: [[f64; 2]; 2]) -> f64 {
    let px = [joint[0][0] + joint[0][1], joint[1][0] + joint[1][1]];
    let py = [joint[0][0] + joint[1][0], joint[0][1] + joint[1][1]];
    let mut total = 0.0;
    for (x, row) in joint.iter().enumerate() {
        for (y, &p) in row.iter().enumerate() {
            if p > 0.0 {
                total += p * (p / (px[x] * py[y])).log2();
            }
        }
    }
    total
}

/// Best mutual information over two-outcome projective measurements on the equiprobable
/// states `(cos β, ±sin β)`, sweeping the measurement angle over `[0, π)` in `steps` steps.
pub fn measurement_sweep_info(beta: f64, steps: usize) -> f64 {
    assert!(steps >= 1000, "sweep needs at least 1000 steps");
    let (sb, cb) = beta.sin_cos();
    let states = [(cb, sb), (cb, -sb)];
    (0..steps)
        .map(|i| {
            let t = PI * i as f64 / steps as f64;
            let (st, ct) = t.sin_cos();
            let mut joint = [[0.0; 2]; 2];
            for (b, &(x, y)) in states.iter().enumerate() {
                let p0 = (ct * x + st * y).powi(2);
                joint[b] = [0.5 * p0, 0.5 * (1.0 - p0)];
            }
            mutual_information(joint)
        })
        .fold(0.0, f64::max)
}

/// Basic sanity of a dense density matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseProperties {
    pub trace: f64,
    /// Largest `|ρ_jk - ρ_kj|`.
    pub asymmetry: f64,
    pub min_eigenvalue: f64,
    /// Eigenvalues above [`rank_threshold`] times the largest.
    pub rank: usize,
    /// Smallest eigenvalue counted in the rank, relative to the largest.
    pub smallest_kept: f64,
    /// Largest eigenvalue below the threshold, relative to the largest.
    pub largest_dropped: f64,
}

pub fn dense_properties(rho: &DMatrix<f64>) -> DenseProperties {
    let asymmetry = (rho - rho.transpose()).abs().max();
    let mut eig: Vec<f64> = SymmetricEigen::new(rho.clone()).eigenvalues.iter().copied().collect();
    eig.sort_by(|a, b| b.total_cmp(a));
    let top = eig[0];
    let cutoff = rank_threshold(eig.len()) * top;
    let rank = eig.iter().filter(|&&l| l > cutoff).count();
    DenseProperties {
        trace: rho.trace(),
        asymmetry,
        min_eigenvalue: *eig.last().expect("nonempty"),
        rank,
        smallest_kept: eig[rank - 1] / top,
        largest_dropped: eig.get(rank).map_or(0.0, |l| l.abs() / top),
    }
}

/// Direct `1 + p log p + (1-p) log(1-p)`, kept apart from [`block_information`].
fn direct_information(beta: f64) -> f64 {
    let p = (1.0 - (2.0 * beta).sin()) / 2.0;
    let term = |q: f64| if q > 0.0 { q * q.log2() } else { 0.0 };
    1.0 + term(p) + term(1.0 - p)
}

/// Fast path set against every oracle for one code and angle.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleReport {
    pub code_id: String,
    pub alpha: f64,
    pub max_offblock_entry: f64,
    pub max_onblock_error: f64,
    pub witness_failures: usize,
    pub max_block_rank2_residual: f64,
    /// Per block `(|Δa_j|, |Δβ_j|)`, in representative order.
    pub spectrum_deltas: Vec<(f64, f64)>,
    /// Per block `|Δ sin² 2β_j|`, which stays well conditioned when `β_j` is tiny.
    pub overlap_deltas: Vec<f64>,
    pub info_fast: f64,
    pub info_oracle: f64,
    /// `|I_fast - I_oracle|`
    pub info_delta: f64,
}

impl OracleReport {
    pub fn max_weight_delta(&self) -> f64 {
        self.spectrum_deltas.iter().map(|d| d.0).fold(0.0, f64::max)
    }

    pub fn max_beta_delta(&self) -> f64 {
        self.spectrum_deltas.iter().map(|d| d.1).fold(0.0, f64::max)
    }

    pub fn max_overlap_delta(&self) -> f64 {
        self.overlap_deltas.iter().copied().fold(0.0, f64::max)
    }

    /// Offblock ≤ 1e-14, rank residual ≤ 1e-12, info ≤ 1e-9, all witnesses found.
    pub fn passes(&self) -> bool {
        self.max_offblock_entry <= 1e-14
            && self.max_block_rank2_residual <= 1e-12
            && self.info_delta <= 1e-9
            && self.witness_failures == 0
    }
}

pub fn compare(code: &CodeSpec, alpha: f64) -> Result<OracleReport, Error> {
    let theorem = verify_theorem(code, alpha)?;
    let oracle = brute_force_spectrum(code, alpha)?;
    let fast = block_spectrum(code, alpha)?;
    assert_eq!(fast.blocks.len(), oracle.spectrum.blocks.len(), "block counts differ");

    let mut spectrum_deltas = Vec::with_capacity(fast.blocks.len());
    let mut overlap_deltas = Vec::with_capacity(fast.blocks.len());
    for (f, o) in fast.blocks.iter().zip(&oracle.spectrum.blocks) {
        assert_eq!(f.representative, o.representative, "block order differs");
        spectrum_deltas.push(((f.weight - o.weight).abs(), (f.beta - o.beta).abs()));
        overlap_deltas.push(((2.0 * f.beta).sin().powi(2) - (2.0 * o.beta).sin().powi(2)).abs());
    }
    let info_fast = total_information(&fast);
    let info_oracle: f64 = oracle.spectrum.blocks.iter().map(|b| b.weight * direct_information(b.beta)).sum();
    Ok(OracleReport {
        code_id: code.id(),
        alpha,
        max_offblock_entry: theorem.max_offblock_entry,
        max_onblock_error: theorem.max_onblock_error,
        witness_failures: theorem.witness_failures,
        max_block_rank2_residual: oracle.max_rank2_residual,
        spectrum_deltas,
        overlap_deltas,
        info_fast,
        info_oracle,
        info_delta: (info_fast - info_oracle).abs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::hamming_code;
    use crate::info::block_information;
    use std::f64::consts::{FRAC_PI_4, FRAC_PI_8};

    fn bs(s: &str) -> BitString {
        s.parse().unwrap()
    }

    #[test]
    fn two_bit_offblock_entries_vanish() {
        let code = CodeSpec::new(vec![], bs("11")).unwrap();
        let t = verify_theorem(&code, 0.3).unwrap();
        assert_eq!(t.max_offblock_entry, 0.0);
        assert!(t.max_onblock_error < 1e-15);
        assert_eq!(t.witness_failures, 0);
        assert_eq!(t.witness_pairs, 1);
    }

    #[test]
    fn five_bit_example_zero_pattern() {
        let code = CodeSpec::new(vec![bs("11000"), bs("01100")], bs("11111")).unwrap();
        let t = verify_theorem(&code, 0.4).unwrap();
        assert_eq!(t.max_offblock_entry, 0.0);
        assert_eq!(t.witness_failures, 0);
        assert_eq!(t.witness_pairs, 6);
    }

    #[test]
    fn hamming_zero_pattern() {
        let t = verify_theorem(&hamming_code(3).unwrap(), 0.3).unwrap();
        assert!(t.max_offblock_entry <= 1e-14);
        assert!(t.max_onblock_error <= 1e-15);
    }

    #[test]
    fn single_probe_spectrum() {
        let code = CodeSpec::new(vec![], bs("1")).unwrap();
        let o = brute_force_spectrum(&code, 0.25).unwrap();
        assert_eq!(o.spectrum.blocks.len(), 1);
        assert!((o.spectrum.blocks[0].weight - 1.0).abs() < 1e-15);
        assert!((o.spectrum.blocks[0].beta - 0.25).abs() < 1e-12);
    }

    #[test]
    fn oracle_matches_fast_path() {
        let cases = [
            (CodeSpec::new(vec![], bs("111")).unwrap(), 0.2),
            (CodeSpec::new(vec![], bs("111")).unwrap(), FRAC_PI_4),
            (CodeSpec::new(vec![bs("11000"), bs("01100")], bs("11111")).unwrap(), 0.15),
        ];
        for (code, alpha) in cases {
            let rep = compare(&code, alpha).unwrap();
            assert!(rep.max_beta_delta() <= 1e-10, "{}: {}", code.id(), rep.max_beta_delta());
            assert!(rep.max_weight_delta() <= 1e-12);
            assert!(rep.passes(), "{rep:?}");
        }
    }

    #[test]
    fn sweep_examples() {
        let full = measurement_sweep_info(FRAC_PI_4, 10_000);
        assert!(full <= 1.0 + 1e-12 && 1.0 - full <= 1e-6);
        assert_eq!(measurement_sweep_info(0.0, 1000), 0.0);
        let swept = measurement_sweep_info(FRAC_PI_8, 100_000);
        assert!((swept - block_information(FRAC_PI_8)).abs() <= 1e-6);
        assert!(swept <= block_information(FRAC_PI_8) + 1e-12);
    }

    #[test]
    fn dense_sanity() {
        let code = hamming_code(3).unwrap();
        let rho = dense_density_matrix(&code, true, 0.5).unwrap();
        let p = dense_properties(&rho);
        assert!((p.trace - 1.0).abs() < 1e-12);
        assert!(p.asymmetry == 0.0);
        assert!(p.min_eigenvalue >= -1e-12);
        assert_eq!(p.rank, 8);
    }
}
