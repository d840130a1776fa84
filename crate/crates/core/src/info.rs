//! Mutual information Eve extracts from a block spectrum, together with the closed-form
//! estimates it is compared against.
//!
//! All logarithms are base 2.

use std::f64::consts::{FRAC_PI_2, LN_2};

use crate::error::{CodeError, Error};
use crate::gf2::{check_span, BitString, CodeSpec};
use crate::parity::{block_spectrum, check_alpha, BlockSpectrum};

/// Probe angles above this are outside the small-angle regime of [`bms_closed_form`].
pub const SMALL_ANGLE_LIMIT: f64 = 0.3;

/// Accessible information (bits) of two equiprobable pure states `(cos β, ±sin β)`.
///
/// Equal to `1 + p log p + (1-p) log(1-p)` with `p = (1 - sin 2β) / 2`. Evaluated as
/// `[(1+ε) ln(1+ε) + (1-ε) ln(1-ε)] / (2 ln 2)` with `ε = sin 2β` so that nearly parallel
/// states keep full relative precision.
pub fn block_information(beta: f64) -> f64 {
    let eps = (2.0 * beta).sin().abs();
    if eps >= 1.0 {
        return 1.0;
    }
    let f = if eps < 1e-3 {
        // Σ ε^{2k} / (k (2k - 1))
        let e2 = eps * eps;
        let mut term = e2;
        let mut sum = 0.0;
        for k in 1..=6 {
            let kf = k as f64;
            sum += term / (kf * (2.0 * kf - 1.0));
            term *= e2;
        }
        sum
    } else {
        (1.0 + eps) * eps.ln_1p() + (1.0 - eps) * (-eps).ln_1p()
    };
    f / (2.0 * LN_2)
}

/// `Σ_j a_j I_j` over a block spectrum.
pub fn total_information(spectrum: &BlockSpectrum) -> f64 {
    spectrum.blocks.iter().map(|b| b.weight * block_information(b.beta)).sum()
}

pub(crate) fn central_binomial(k: u32) -> f64 {
    (1..=k).fold(1.0, |acc, i| acc * (k + i) as f64 / i as f64)
}

/// Small-angle information on a parity of `n_hat` probes when nothing else is announced:
/// `c · C(2k, k) · α^{2k}` with `k = ⌈n̂/2⌉`, `c = 1` for even `n̂` and `1/ln 2` for odd.
pub fn bms_closed_form(n_hat: u32, alpha: f64) -> f64 {
    assert!(n_hat >= 1, "distance must be at least 1");
    let k = n_hat.div_ceil(2);
    let c = if n_hat.is_multiple_of(2) { 1.0 } else { 1.0 / LN_2 };
    c * central_binomial(k) * alpha.powi(2 * k as i32)
}

/// Closed-form contribution of one check-span word.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WordInfo {
    pub word: BitString,
    /// Hamming distance from the word to the key string.
    pub distance: u32,
    pub info: f64,
}

/// Closed-form estimate summed over every word of the check span.
#[derive(Debug, Clone, PartialEq)]
pub struct InfoSum {
    pub total: f64,
    pub per_word: Vec<WordInfo>,
}

pub fn i_sum(code: &CodeSpec, alpha: f64) -> InfoSum {
    let per_word: Vec<WordInfo> = check_span(code)
        .into_iter()
        .map(|word| {
            let distance = (word ^ code.key_string()).weight();
            WordInfo { word, distance, info: bms_closed_form(distance, alpha) }
        })
        .collect();
    InfoSum { total: per_word.iter().map(|w| w.info).sum(), per_word }
}

/// Exact information set against the closed-form sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConjectureVerdict {
    pub i_total: f64,
    pub i_sum: f64,
    /// `i_sum - i_total`
    pub margin: f64,
    /// `i_total <= i_sum`; equality counts as holding.
    pub holds: bool,
    /// `i_total < i_sum`
    pub strict: bool,
    /// `α` beyond [`SMALL_ANGLE_LIMIT`], where the closed form is only an extrapolation.
    pub extrapolated: bool,
}

impl ConjectureVerdict {
    fn new(i_total: f64, i_sum: f64, alpha: f64) -> Self {
        Self {
            i_total,
            i_sum,
            margin: i_sum - i_total,
            holds: i_total <= i_sum,
            strict: i_total < i_sum,
            extrapolated: alpha > SMALL_ANGLE_LIMIT,
        }
    }
}

pub fn conjecture_check(code: &CodeSpec, alpha: f64) -> Result<ConjectureVerdict, Error> {
    let spectrum = block_spectrum(code, alpha)?;
    Ok(ConjectureVerdict::new(total_information(&spectrum), i_sum(code, alpha).total, alpha))
}

/// Leading small-angle term of the closed-form sum for the Hamming code `H_r`:
/// `(2^r - 1) / ln 2 · C(2^{r-1}, 2^{r-2}) · α^{2^{r-1}}` (about `60.6 α⁴` for `r = 3`).
pub fn hamming_leading_term(r: u32, alpha: f64) -> Result<f64, Error> {
    if r < 2 {
        return Err(CodeError::HammingRange(r as usize).into());
    }
    let half = 1u32 << (r - 1);
    let words = ((1u64 << r) - 1) as f64;
    Ok(words / LN_2 * central_binomial(half / 2) * alpha.powi(half as i32))
}

/// Relaxed Hamming-code bound `2 / (ln 2 √(π/2)) · √(2^{r-1}) · (2α)^{2^{r-1}}`.
pub fn hamming_bound(r: u32, alpha: f64) -> Result<f64, Error> {
    if r < 2 {
        return Err(CodeError::HammingRange(r as usize).into());
    }
    let half = (1u64 << (r - 1)) as f64;
    let prefactor = 2.0 / (LN_2 * FRAC_PI_2.sqrt());
    Ok(prefactor * half.sqrt() * (2.0 * alpha).powi(half as i32))
}

/// Information carried by one block.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlockInfo {
    pub representative: BitString,
    pub weight: f64,
    pub beta: f64,
    pub info: f64,
}

/// Everything computed for one code at one probe angle.
#[derive(Debug, Clone, PartialEq)]
pub struct InfoReport {
    pub code_id: String,
    pub n: usize,
    pub r: usize,
    pub alpha: f64,
    pub i_total: f64,
    pub i_sum: f64,
    pub per_block: Vec<BlockInfo>,
    pub per_word: Vec<WordInfo>,
    pub conjecture_holds: bool,
    pub margin: f64,
    pub extrapolated: bool,
}

/// Block spectrum, exact information and closed-form comparison in one pass.
pub fn analyze(code: &CodeSpec, alpha: f64) -> Result<InfoReport, Error> {
    check_alpha(alpha)?;
    let spectrum = block_spectrum(code, alpha)?;
    let per_block: Vec<BlockInfo> = spectrum
        .blocks
        .iter()
        .map(|b| BlockInfo {
            representative: b.representative,
            weight: b.weight,
            beta: b.beta,
            info: block_information(b.beta),
        })
        .collect();
    let i_total = per_block.iter().map(|b| b.weight * b.info).sum();
    let sum = i_sum(code, alpha);
    let verdict = ConjectureVerdict::new(i_total, sum.total, alpha);
    Ok(InfoReport {
        code_id: code.id(),
        n: code.n(),
        r: code.r(),
        alpha,
        i_total,
        i_sum: sum.total,
        per_block,
        per_word: sum.per_word,
        conjecture_holds: verdict.holds,
        margin: verdict.margin,
        extrapolated: verdict.extrapolated,
    })
}
