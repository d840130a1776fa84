//! Eve's parity density matrices and their block-diagonal form.
//!
//! Each probe is `(c, ±s)` with `c = cos α`, `s = sin α`; a string `x` leaves Eve with the
//! product state `ψ_x` whose `j`-th component is `(-1)^{p(x⊙j)} c^{n-|j|} s^{|j|}`. Averaging
//! `ψ_x ψ_xᵀ` over strings consistent with the announced checks and a fixed key parity gives
//! `ρ_0` and `ρ_1`.
//!
//! An entry `(j, k)` of either matrix survives only when `j ⊕ k` lies in
//! `V = span(v_1, .., v_r, v_d)`, so grouping indices by coset of `V` makes both matrices
//! block diagonal in the same basis, with `2^{n-r-1}` blocks of size `2^{r+1}`. Each block has
//! rank one, so Eve faces one pair of pure states per coset. [`block_spectrum`] builds those
//! pairs straight from the coset sign structure without forming any matrix.

use std::f64::consts::FRAC_PI_4;

use nalgebra::DMatrix;
use rayon::prelude::*;

use crate::error::Error;
use crate::gf2::{BitString, CodeSpec, Subspace};

/// Largest `n` for which dense `2^n × 2^n` matrices are built.
pub const DENSE_MAX_N: usize = 12;

pub(crate) fn check_alpha(alpha: f64) -> Result<(), Error> {
    if (0.0..=FRAC_PI_4).contains(&alpha) {
        Ok(())
    } else {
        Err(Error::Alpha(alpha))
    }
}

/// Component `j` of Eve's product state for the string `x`.
pub fn amplitude(x: BitString, j: BitString, alpha: f64) -> f64 {
    let (s, c) = alpha.sin_cos();
    let ones = j.weight() as i32;
    let zeros = j.len() as i32 - ones;
    let mag = c.powi(zeros) * s.powi(ones);
    if (x & j).parity() {
        -mag
    } else {
        mag
    }
}

/// Strings obeying the announced checks whose key parity equals `key_bit`.
pub fn consistent_strings(code: &CodeSpec, key_bit: bool) -> Vec<BitString> {
    let n = code.n();
    (0u32..1 << n)
        .map(|x| BitString::new(n, x).expect("in range"))
        .filter(|&x| code.accepts(x) && (x & code.key_string()).parity() == key_bit)
        .collect()
}

/// Dense parity density matrix for key parity `key_bit`.
///
/// Sums `ψ_x ψ_xᵀ` over every consistent string. Entry `(j, k)` of `ψ_x ψ_xᵀ` is
/// `|ψ_j| |ψ_k| (-1)^{p(x ⊙ (j ⊕ k))}`, so the string sum is carried out once per
/// difference `j ⊕ k` and reused across the matrix.
pub fn dense_density_matrix(code: &CodeSpec, key_bit: bool, alpha: f64) -> Result<DMatrix<f64>, Error> {
    let n = code.n();
    if n > DENSE_MAX_N {
        return Err(Error::TooLarge { n, max: DENSE_MAX_N });
    }
    check_alpha(alpha)?;
    let strings = consistent_strings(code, key_bit);
    assert!(!strings.is_empty(), "independent checks always admit consistent strings");
    let dim = 1usize << n;
    let norm = 1.0 / strings.len() as f64;

    let sign_mean: Vec<f64> = (0..dim as u32)
        .map(|d| {
            let d = BitString::new(n, d).expect("in range");
            let net: i64 = strings.iter().map(|&x| if (x & d).parity() { -1 } else { 1 }).sum();
            net as f64 * norm
        })
        .collect();

    let (s, c) = alpha.sin_cos();
    let mag: Vec<f64> = (0..dim as u32)
        .map(|j| {
            let ones = j.count_ones() as i32;
            c.powi(n as i32 - ones) * s.powi(ones)
        })
        .collect();

    Ok(DMatrix::from_fn(dim, dim, |j, k| mag[j] * mag[k] * sign_mean[j ^ k]))
}

/// One coset of `V` in the index space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coset {
    /// Smallest member.
    pub representative: BitString,
    /// `representative ⊕ w` for each span word `w`, in increasing order of `w`.
    pub members: Vec<BitString>,
}

/// Per-code precomputation shared by every coset.
pub(crate) struct CosetLayout {
    n: usize,
    space: Subspace,
    free: Vec<u32>,
    /// (span word, key coefficient c_d), sorted by word so that per-coset sums do not
    /// depend on the order the checks were given in
    words: Vec<(u32, bool)>,
}

impl CosetLayout {
    pub(crate) fn new(code: &CodeSpec) -> Self {
        let space = code.key_subspace();
        let r = code.r();
        let mut words: Vec<(u32, bool)> = (0u32..1 << (r + 1))
            .map(|mask| {
                let word = space.combine(mask).value();
                (word, mask >> r & 1 == 1)
            })
            .collect();
        words.sort_unstable();
        let free = space.free_positions();
        Self { n: code.n(), space, free, words }
    }

    pub(crate) fn count(&self) -> u64 {
        1u64 << self.free.len()
    }

    pub(crate) fn representative(&self, t: u64) -> BitString {
        self.space.representative(&self.free, t)
    }

    pub(crate) fn coset(&self, rep: BitString) -> Coset {
        let members =
            self.words.iter().map(|&(w, _)| BitString::new(self.n, rep.value() ^ w).expect("in range")).collect();
        Coset { representative: rep, members }
    }
}

/// Partition all `2^n` basis indices into cosets of `V`, ordered by representative.
pub fn coset_partition(code: &CodeSpec) -> Vec<Coset> {
    let layout = CosetLayout::new(code);
    (0..layout.count()).map(|t| layout.coset(layout.representative(t))).collect()
}

/// The pure states Eve holds inside one block.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockStates {
    /// Normalized state for key parity 0, indexed like `Coset::members`.
    pub phi0: Vec<f64>,
    /// Normalized state for key parity 1.
    pub phi1: Vec<f64>,
    /// Probability of landing in this block.
    pub weight: f64,
}

fn magnitudes_squared(n: usize, alpha: f64) -> Vec<f64> {
    let (s, c) = alpha.sin_cos();
    let (c2, s2) = (c * c, s * s);
    (0..=n as i32).map(|w| c2.powi(n as i32 - w) * s2.powi(w)).collect()
}

/// Block vectors for `coset`, which must come from [`coset_partition`] of the same code.
///
/// The component at member `m` is `±c^{n-|m|} s^{|m|}` with sign given by the announced
/// parities of the checks (and, for `φ_1`, the key) making up `m ⊕ representative`.
pub fn block_states(code: &CodeSpec, coset: &Coset, alpha: f64) -> Result<BlockStates, Error> {
    check_alpha(alpha)?;
    let space = code.key_subspace();
    let r = code.r();
    let (s, c) = alpha.sin_cos();
    let n = code.n() as i32;
    let mut phi0 = Vec::with_capacity(coset.members.len());
    let mut phi1 = Vec::with_capacity(coset.members.len());
    for &m in &coset.members {
        let mask = space.coefficients(m ^ coset.representative).expect("member of the coset");
        let key_coef = mask >> r & 1 == 1;
        let check_sign =
            code.check_parities().iter().enumerate().fold(false, |acc, (l, &p)| acc ^ (p && mask >> l & 1 == 1));
        let ones = m.weight() as i32;
        let mag = c.powi(n - ones) * s.powi(ones);
        let signed = |neg: bool| if neg { -mag } else { mag };
        phi0.push(signed(check_sign));
        phi1.push(signed(check_sign ^ key_coef));
    }
    let norm2: f64 = phi0.iter().map(|v| v * v).sum();
    let total = (c * c + s * s).powi(n);
    let norm = norm2.sqrt();
    if norm > 0.0 {
        phi0.iter_mut().chain(phi1.iter_mut()).for_each(|v| *v /= norm);
    }
    Ok(BlockStates { phi0, phi1, weight: norm2 / total })
}

/// One block: weight `a_j` and half-angle `β_j` with `|⟨φ_0|φ_1⟩| = cos 2β_j`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Block {
    pub weight: f64,
    pub beta: f64,
    pub representative: BitString,
}

/// The diagonalized problem for one code and probe angle.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockSpectrum {
    pub n: usize,
    pub r: usize,
    pub alpha: f64,
    pub blocks: Vec<Block>,
}

impl BlockSpectrum {
    pub fn total_weight(&self) -> f64 {
        self.blocks.iter().map(|b| b.weight).sum()
    }

    /// `(weight, beta)` pairs sorted for order-free comparison.
    pub fn sorted_pairs(&self) -> Vec<(f64, f64)> {
        let mut pairs: Vec<(f64, f64)> = self.blocks.iter().map(|b| (b.weight, b.beta)).collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
        pairs
    }
}

/// Per-coset weights and overlap angles, computed without building matrices.
///
/// With `A` and `B` the squared magnitudes summed over members whose offset from the
/// representative has key coefficient 0 and 1, the block weight is `A + B` and the two
/// states overlap by `(A - B) / (A + B)`; `β` comes from `atan2(2√(AB), |A - B|)` so that
/// tiny angles keep full relative precision.
pub fn block_spectrum(code: &CodeSpec, alpha: f64) -> Result<BlockSpectrum, Error> {
    check_alpha(alpha)?;
    let layout = CosetLayout::new(code);
    let mag2 = magnitudes_squared(code.n(), alpha);
    let (s, c) = alpha.sin_cos();
    let total = (c * c + s * s).powi(code.n() as i32);

    let blocks = (0..layout.count())
        .into_par_iter()
        .map(|t| {
            let rep = layout.representative(t);
            let (mut even, mut odd) = (0.0, 0.0);
            for &(w, key_coef) in &layout.words {
                let m2 = mag2[(rep.value() ^ w).count_ones() as usize];
                if key_coef {
                    odd += m2;
                } else {
                    even += m2;
                }
            }
            let beta = 0.5 * (2.0 * (even * odd).sqrt()).atan2((even - odd).abs());
            Block { weight: (even + odd) / total, beta, representative: rep }
        })
        .collect();

    Ok(BlockSpectrum { n: code.n(), r: code.r(), alpha, blocks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::hamming_code;

    fn bs(s: &str) -> BitString {
        s.parse().unwrap()
    }

    fn five_bit_example() -> CodeSpec {
        CodeSpec::with_parities(vec![bs("11000"), bs("01100")], vec![false, true], bs("11111"), false).unwrap()
    }

    #[test]
    fn amplitude_examples() {
        let a = 0.3f64;
        let (s, c) = a.sin_cos();
        assert!((amplitude(bs("00"), bs("00"), a) - c * c).abs() < 1e-15);
        assert!((amplitude(bs("11"), bs("11"), a) - s * s).abs() < 1e-15);
        assert!((amplitude(bs("10"), bs("10"), a) + c * s).abs() < 1e-15);
    }

    #[test]
    fn single_probe_matrix_is_pure() {
        let code = CodeSpec::new(vec![], bs("1")).unwrap();
        let a = 0.4f64;
        let (s, c) = a.sin_cos();
        let rho = dense_density_matrix(&code, false, a).unwrap();
        let want = DMatrix::from_row_slice(2, 2, &[c * c, c * s, c * s, s * s]);
        assert!((rho - want).abs().max() < 1e-15);
    }

    #[test]
    fn two_bit_zero_pattern() {
        let code = CodeSpec::new(vec![], bs("11")).unwrap();
        let a = 0.35f64;
        let (s, c) = a.sin_cos();
        let rho = dense_density_matrix(&code, false, a).unwrap();
        // indices 0b00, 0b01, 0b10, 0b11
        for (j, k) in [(0, 1), (0, 2), (3, 1), (3, 2)] {
            assert_eq!(rho[(j, k)], 0.0);
        }
        // ψ_00 and ψ_11 agree in sign on entry (00, 11)
        assert!((rho[(0, 3)] - c * c * s * s).abs() < 1e-15);
        for j in 0..4usize {
            for k in 0..4usize {
                let in_span = matches!(j ^ k, 0 | 3);
                assert_eq!(rho[(j, k)] != 0.0, in_span, "({j},{k})");
            }
        }
    }

    #[test]
    fn grouped_sum_matches_outer_products() {
        let code = five_bit_example();
        let alpha = 0.27;
        for key in [false, true] {
            let rho = dense_density_matrix(&code, key, alpha).unwrap();
            let strings = consistent_strings(&code, key);
            assert_eq!(strings.len(), 4);
            let mut direct = DMatrix::zeros(32, 32);
            for &x in &strings {
                let psi =
                    nalgebra::DVector::from_fn(32, |j, _| amplitude(x, BitString::new(5, j as u32).unwrap(), alpha));
                direct += &psi * psi.transpose();
            }
            direct /= strings.len() as f64;
            assert!((rho - direct).abs().max() < 1e-15);
        }
    }

    #[test]
    fn coset_examples() {
        let one = coset_partition(&CodeSpec::new(vec![], bs("1")).unwrap());
        assert_eq!(one, vec![Coset { representative: bs("0"), members: vec![bs("0"), bs("1")] }]);

        let three = coset_partition(&CodeSpec::new(vec![], bs("111")).unwrap());
        let pairs: Vec<(String, String)> =
            three.iter().map(|c| (c.members[0].to_string(), c.members[1].to_string())).collect();
        let want = [("000", "111"), ("001", "110"), ("010", "101"), ("011", "100")];
        assert_eq!(pairs, want.map(|(a, b)| (a.to_string(), b.to_string())));

        let five = coset_partition(&five_bit_example());
        assert_eq!(five.len(), 4);
        assert!(five.iter().all(|c| c.members.len() == 8));
        let mut all: Vec<u32> = five.iter().flat_map(|c| c.members.iter().map(|m| m.value())).collect();
        all.sort();
        assert_eq!(all, (0..32).collect::<Vec<_>>());
        assert!(five.windows(2).all(|w| w[0].representative < w[1].representative));
        for c in &five {
            assert_eq!(c.representative, *c.members.iter().min().unwrap());
        }
    }

    #[test]
    fn block_states_examples() {
        let a = 0.2f64;
        let (s, c) = a.sin_cos();
        let code = CodeSpec::new(vec![], bs("1")).unwrap();
        let st = block_states(&code, &coset_partition(&code)[0], a).unwrap();
        assert!((st.phi0[0] - c).abs() < 1e-15 && (st.phi0[1] - s).abs() < 1e-15);
        assert!((st.phi1[0] - c).abs() < 1e-15 && (st.phi1[1] + s).abs() < 1e-15);
        assert!((st.weight - 1.0).abs() < 1e-15);

        let code = CodeSpec::new(vec![], bs("11")).unwrap();
        let cosets = coset_partition(&code);
        let st = block_states(&code, &cosets[0], a).unwrap();
        let norm = (c.powi(4) + s.powi(4)).sqrt();
        assert!((st.phi0[0] - c * c / norm).abs() < 1e-15 && (st.phi0[1] - s * s / norm).abs() < 1e-15);
        assert!((st.phi1[1] + s * s / norm).abs() < 1e-15);
        let overlap: f64 = st.phi0.iter().zip(&st.phi1).map(|(x, y)| x * y).sum();
        assert!((overlap - (c.powi(4) - s.powi(4)) / (c.powi(4) + s.powi(4))).abs() < 1e-15);

        for coset in coset_partition(&five_bit_example()) {
            let st = block_states(&five_bit_example(), &coset, 0.0).unwrap();
            let diff: f64 = st.phi0.iter().zip(&st.phi1).map(|(x, y)| (x - y).abs()).sum();
            assert_eq!(diff, 0.0);
        }
    }

    #[test]
    fn reassembly_reproduces_dense_matrices() {
        for (code, alpha) in [(five_bit_example(), 0.3), (hamming_code(3).unwrap(), 0.21)] {
            let dim = 1usize << code.n();
            for key in [false, true] {
                let dense = dense_density_matrix(&code, key, alpha).unwrap();
                let mut rebuilt = DMatrix::zeros(dim, dim);
                for coset in coset_partition(&code) {
                    let st = block_states(&code, &coset, alpha).unwrap();
                    let phi = if key { &st.phi1 } else { &st.phi0 };
                    for (p, &mj) in coset.members.iter().enumerate() {
                        for (q, &mk) in coset.members.iter().enumerate() {
                            rebuilt[(mj.value() as usize, mk.value() as usize)] += st.weight * phi[p] * phi[q];
                        }
                    }
                }
                let diff = (dense - rebuilt).abs().max();
                assert!(diff <= 1e-12, "{} key={key}: {diff}", code.id());
            }
        }
    }

    #[test]
    fn spectrum_shape() {
        let single = block_spectrum(&CodeSpec::new(vec![], bs("1")).unwrap(), 0.3).unwrap();
        assert_eq!(single.blocks.len(), 1);
        assert!((single.blocks[0].beta - 0.3).abs() < 1e-15);

        let h = block_spectrum(&hamming_code(3).unwrap(), 0.1).unwrap();
        assert_eq!(h.blocks.len(), 8);
        assert!((h.total_weight() - 1.0).abs() < 1e-12);

        let ex = block_spectrum(&five_bit_example(), 0.15).unwrap();
        assert_eq!(ex.blocks.len(), 4);
        for b in &ex.blocks {
            assert!((0.0..=FRAC_PI_4).contains(&b.beta));
        }
    }

    #[test]
    fn spectrum_agrees_with_block_states() {
        let code = five_bit_example();
        let spec = block_spectrum(&code, 0.33).unwrap();
        for (block, coset) in spec.blocks.iter().zip(coset_partition(&code)) {
            let st = block_states(&code, &coset, 0.33).unwrap();
            let overlap: f64 = st.phi0.iter().zip(&st.phi1).map(|(x, y)| x * y).sum();
            assert!((block.weight - st.weight).abs() < 1e-15);
            assert!(((2.0 * block.beta).cos() - overlap.abs()).abs() < 1e-14);
            assert_eq!(block.representative, coset.representative);
        }
    }

    #[test]
    fn rejects_bad_alpha_and_large_dense() {
        let code = hamming_code(3).unwrap();
        assert!(block_spectrum(&code, -0.1).is_err());
        assert!(block_spectrum(&code, 1.0).is_err());
        let big = CodeSpec::new(vec![], BitString::ones(13).unwrap()).unwrap();
        assert!(matches!(dense_density_matrix(&big, false, 0.1), Err(Error::TooLarge { .. })));
    }
}
