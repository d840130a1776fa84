//! Short codes enumerated up to symmetry, and the conjecture scan over them.
//!
//! The key string is the all-ones word, so any permutation of bit positions is a symmetry.
//! A code with `r` checks is then fixed by the multiset of its `n` parity-check columns
//! (each an `r`-bit word), taken modulo the row operations of `GL(r, 2)` that change the
//! checks without changing their span.

use rayon::prelude::*;

use crate::gf2::{BitString, CodeSpec};
use crate::info::{conjecture_check, ConjectureVerdict};

/// Largest string length the scan accepts.
pub const SCAN_MAX_N: usize = 10;

/// Largest number of checks the scan enumerates.
pub const SCAN_MAX_R: usize = 3;

/// Probe angles used by the conjecture scan.
pub const SCAN_ALPHAS: [f64; 3] = [0.01, 0.05, 0.1];

/// All invertible `r × r` matrices over GF(2), each stored as the images of the unit vectors.
fn general_linear(r: usize) -> Vec<Vec<u32>> {
    let size = 1u32 << r;
    let mut out = Vec::new();
    let mut images = vec![0u32; r];
    fn rec(r: usize, size: u32, i: usize, images: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == r {
            out.push(images.clone());
            return;
        }
        for v in 1..size {
            // v must lie outside the span of the images chosen so far
            let mut in_span = false;
            for mask in 0u32..1 << i {
                let w = (0..i).filter(|l| mask >> l & 1 == 1).fold(0, |acc, l| acc ^ images[l]);
                if w == v {
                    in_span = true;
                    break;
                }
            }
            if !in_span {
                images[i] = v;
                rec(r, size, i + 1, images, out);
            }
        }
    }
    rec(r, size, 0, &mut images, &mut out);
    out
}

fn apply(g: &[u32], col: u32) -> u32 {
    g.iter().enumerate().filter(|(l, _)| col >> l & 1 == 1).fold(0, |acc, (_, &u)| acc ^ u)
}

fn nondecreasing(n: usize, size: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, size: u32, start: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in start..size {
            cur.push(v);
            rec(n, size, v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, size, 0, &mut Vec::with_capacity(n), &mut out);
    out
}

fn column_rank(cols: &[u32]) -> usize {
    let mut rows: Vec<u32> = Vec::new();
    for &c in cols {
        let mut v = c;
        for &row in &rows {
            v = v.min(v ^ row);
        }
        if v != 0 {
            rows.push(v);
        }
    }
    rows.len()
}

/// Checks whose parity-check matrix has the given columns; check 1 reads the top bit.
fn code_from_columns(n: usize, r: usize, cols: &[u32]) -> CodeSpec {
    let checks = (0..r)
        .map(|row| {
            let shift = r - 1 - row;
            let value = cols.iter().fold(0u32, |acc, &c| (acc << 1) | (c >> shift & 1));
            BitString::new(n, value).expect("fits")
        })
        .collect();
    CodeSpec::new(checks, BitString::ones(n).expect("fits")).expect("enumerated codes are valid")
}

/// Every code of length `n` with `r` checks and all-ones key, one per symmetry class.
pub fn codes_with(n: usize, r: usize) -> Vec<CodeSpec> {
    assert!(n >= 1 && r < n && n <= SCAN_MAX_N && r <= SCAN_MAX_R + 1);
    if r == 0 {
        return vec![CodeSpec::new(vec![], BitString::ones(n).expect("fits")).expect("valid")];
    }
    let group = general_linear(r);
    let size = 1u32 << r;
    nondecreasing(n, size)
        .into_iter()
        .filter(|cols| column_rank(cols) == r)
        // all-ones lies in the check span iff some functional is 1 on every column
        .filter(|cols| !(1..size).any(|y| cols.iter().all(|&c| (y & c).count_ones() & 1 == 1)))
        .filter(|cols| {
            group.iter().all(|g| {
                let mut image: Vec<u32> = cols.iter().map(|&c| apply(g, c)).collect();
                image.sort_unstable();
                image >= *cols
            })
        })
        .map(|cols| code_from_columns(n, r, &cols))
        .collect()
}

/// All classes with `n ≤ max_n` and `r ≤ min(3, n - 1)`, ordered by `(n, r)`.
pub fn enumerate_codes(max_n: usize) -> Vec<CodeSpec> {
    assert!(max_n <= SCAN_MAX_N, "scan limited to n <= {SCAN_MAX_N}");
    (1..=max_n).flat_map(|n| (0..=SCAN_MAX_R.min(n - 1)).flat_map(move |r| codes_with(n, r))).collect()
}

/// One line of the conjecture scan.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanRow {
    pub code_id: String,
    pub n: usize,
    pub r: usize,
    pub alpha: f64,
    pub verdict: ConjectureVerdict,
}

/// Exact information against the closed-form sum for every enumerated code and angle.
pub fn conjecture_scan(max_n: usize, alphas: &[f64]) -> Vec<ScanRow> {
    let codes = enumerate_codes(max_n);
    codes
        .par_iter()
        .flat_map_iter(|code| {
            alphas.iter().map(move |&alpha| ScanRow {
                code_id: code.id(),
                n: code.n(),
                r: code.r(),
                alpha,
                verdict: conjecture_check(code, alpha).expect("scan angles are in range"),
            })
        })
        .collect()
}
