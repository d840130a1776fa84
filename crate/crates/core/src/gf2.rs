//! Bitstrings over GF(2), spans, and the linear codes built from them.
//!
//! Bit 1 of a [`BitString`] is the most significant bit of its printed form,
//! so `11000` with `n = 5` has value 24.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{BitAnd, BitXor};
use std::str::FromStr;

use crate::error::CodeError;

/// Largest supported string length. Words are stored in a `u32`; 31 bits admits `H_5`.
pub const MAX_LEN: usize = 31;

/// Largest Hamming code parameter accepted by [`hamming_code`].
pub const MAX_HAMMING_R: usize = 5;

/// A fixed-length binary word.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitString {
    len: u8,
    value: u32,
}

impl BitString {
    pub fn new(len: usize, value: u32) -> Result<Self, CodeError> {
        if len == 0 || len > MAX_LEN {
            return Err(CodeError::Length(len));
        }
        if value >> len != 0 {
            return Err(CodeError::ValueOverflow { len, value });
        }
        Ok(Self { len: len as u8, value })
    }

    pub(crate) fn from_raw(len: usize, value: u32) -> Self {
        debug_assert!((1..=MAX_LEN).contains(&len) && value >> len == 0);
        Self { len: len as u8, value }
    }

    pub fn zeros(len: usize) -> Result<Self, CodeError> {
        Self::new(len, 0)
    }

    pub fn ones(len: usize) -> Result<Self, CodeError> {
        Self::new(len, low_mask(len))
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    /// Always false; a bitstring has at least one bit.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    /// Bit `i` counted from 1 at the left of the printed string.
    pub fn bit(&self, i: usize) -> bool {
        assert!(i >= 1 && i <= self.len(), "bit index {i} out of 1..={}", self.len);
        (self.value >> (self.len() - i)) & 1 == 1
    }

    /// Number of ones.
    pub fn weight(&self) -> u32 {
        self.value.count_ones()
    }

    pub fn parity(&self) -> bool {
        self.weight() & 1 == 1
    }
}

pub(crate) fn low_mask(len: usize) -> u32 {
    if len >= 32 {
        u32::MAX
    } else {
        (1u32 << len) - 1
    }
}

impl BitXor for BitString {
    type Output = BitString;

    fn bitxor(self, rhs: BitString) -> BitString {
        assert_eq!(self.len, rhs.len, "XOR of bitstrings with different lengths");
        BitString { len: self.len, value: self.value ^ rhs.value }
    }
}

impl BitAnd for BitString {
    type Output = BitString;

    fn bitand(self, rhs: BitString) -> BitString {
        assert_eq!(self.len, rhs.len, "AND of bitstrings with different lengths");
        BitString { len: self.len, value: self.value & rhs.value }
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:0width$b}", self.value, width = self.len())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString({self})")
    }
}

impl FromStr for BitString {
    type Err = CodeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.is_empty() || s.len() > MAX_LEN {
            return Err(CodeError::Length(s.len()));
        }
        let mut value = 0u32;
        for (pos, ch) in s.chars().enumerate() {
            let bit = match ch {
                '0' => 0,
                '1' => 1,
                other => return Err(CodeError::BadDigit { pos: pos + 1, found: other }),
            };
            value = (value << 1) | bit;
        }
        Self::new(s.len(), value)
    }
}

/// Parity of the number of ones in `x`.
pub fn parity(x: BitString) -> bool {
    x.parity()
}

/// All XOR combinations of `basis`, including the zero word, sorted by value.
///
/// The result has `2^k` elements exactly when the basis is independent.
pub fn span_set(len: usize, basis: &[BitString]) -> Result<BTreeSet<BitString>, CodeError> {
    let zero = BitString::zeros(len)?;
    if let Some(b) = basis.iter().find(|b| b.len() != len) {
        return Err(CodeError::LengthMismatch { expected: len, found: b.len() });
    }
    let mut out = BTreeSet::new();
    out.insert(zero);
    for &b in basis {
        let shifted: Vec<BitString> = out.iter().map(|&w| w ^ b).collect();
        out.extend(shifted);
    }
    Ok(out)
}

/// Coefficients `c` with `w = ⊕ c_l basis_l`, or `None` if `w` lies outside the span
/// (or the basis is itself dependent).
pub fn decompose(w: BitString, basis: &[BitString]) -> Option<Vec<bool>> {
    let space = Subspace::new(w.len(), basis).ok()?;
    let mask = space.coefficients(w)?;
    Some((0..basis.len()).map(|l| (mask >> l) & 1 == 1).collect())
}

/// Reduced row echelon form of an independent basis, keeping track of how each
/// echelon row is built from the original basis vectors.
#[derive(Clone, Debug)]
pub struct Subspace {
    len: usize,
    basis: Vec<BitString>,
    // (pivot bit, row, combination mask over `basis`), pivots strictly decreasing
    rows: Vec<(u32, u32, u32)>,
}

impl Subspace {
    /// Fails with [`CodeError::Dependent`] if the vectors are not independent.
    pub fn new(len: usize, basis: &[BitString]) -> Result<Self, CodeError> {
        let mut rows: Vec<(u32, u32, u32)> = Vec::with_capacity(basis.len());
        for (idx, b) in basis.iter().enumerate() {
            if b.len() != len {
                return Err(CodeError::LengthMismatch { expected: len, found: b.len() });
            }
            let mut v = b.value;
            let mut combo = 1u32 << idx;
            for &(p, row, c) in &rows {
                if v >> p & 1 == 1 {
                    v ^= row;
                    combo ^= c;
                }
            }
            if v == 0 {
                return Err(CodeError::Dependent { index: idx + 1 });
            }
            let pivot = 31 - v.leading_zeros();
            for r in rows.iter_mut() {
                if r.1 >> pivot & 1 == 1 {
                    r.1 ^= v;
                    r.2 ^= combo;
                }
            }
            rows.push((pivot, v, combo));
            rows.sort_by_key(|row| std::cmp::Reverse(row.0));
        }
        Ok(Self { len, basis: basis.to_vec(), rows })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn basis(&self) -> &[BitString] {
        &self.basis
    }

    /// Bitmask of original-basis coefficients for `w`, bit `l` for `basis[l]`.
    pub fn coefficients(&self, w: BitString) -> Option<u32> {
        let (rest, mask) = self.eliminate(w.value);
        (rest == 0).then_some(mask)
    }

    pub fn contains(&self, w: BitString) -> bool {
        self.eliminate(w.value).0 == 0
    }

    /// Smallest member of the coset `w ⊕ V`.
    pub fn min_representative(&self, w: BitString) -> BitString {
        BitString::from_raw(self.len, self.eliminate(w.value).0)
    }

    fn eliminate(&self, mut v: u32) -> (u32, u32) {
        let mut mask = 0;
        for &(p, row, c) in &self.rows {
            if v >> p & 1 == 1 {
                v ^= row;
                mask ^= c;
            }
        }
        (v, mask)
    }

    /// The word `⊕ basis_l` over the set bits `l` of `mask`.
    pub fn combine(&self, mask: u32) -> BitString {
        let mut v = 0;
        for (l, b) in self.basis.iter().enumerate() {
            if mask >> l & 1 == 1 {
                v ^= b.value;
            }
        }
        BitString::from_raw(self.len, v)
    }

    /// Bit positions (as value shifts) not used as pivots, ascending.
    pub(crate) fn free_positions(&self) -> Vec<u32> {
        (0..self.len as u32).filter(|&b| self.rows.iter().all(|r| r.0 != b)).collect()
    }

    /// The `t`-th coset representative in increasing numeric order.
    pub(crate) fn representative(&self, free: &[u32], t: u64) -> BitString {
        let mut v = 0u32;
        for (i, &pos) in free.iter().enumerate() {
            if t >> i & 1 == 1 {
                v |= 1 << pos;
            }
        }
        BitString::from_raw(self.len, v)
    }
}

/// A linear code as Eve sees it: the announced parity checks and the key substring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeSpec {
    n: usize,
    checks: Vec<BitString>,
    check_parities: Vec<bool>,
    key_string: BitString,
    key_parity: bool,
}

impl CodeSpec {
    /// Checks with all announced parities zero.
    pub fn new(checks: Vec<BitString>, key_string: BitString) -> Result<Self, CodeError> {
        let parities = vec![false; checks.len()];
        Self::with_parities(checks, parities, key_string, false)
    }

    pub fn with_parities(
        checks: Vec<BitString>,
        check_parities: Vec<bool>,
        key_string: BitString,
        key_parity: bool,
    ) -> Result<Self, CodeError> {
        let n = key_string.len();
        if checks.len() != check_parities.len() {
            return Err(CodeError::ParityCount { checks: checks.len(), parities: check_parities.len() });
        }
        if key_string.is_zero() {
            return Err(CodeError::ZeroKey);
        }
        if checks.len() + 1 > n {
            return Err(CodeError::TooManyChecks { r: checks.len(), n });
        }
        let mut all = checks.clone();
        all.push(key_string);
        Subspace::new(n, &all)?;
        Ok(Self { n, checks, check_parities, key_string, key_parity })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of parity checks.
    pub fn r(&self) -> usize {
        self.checks.len()
    }

    pub fn checks(&self) -> &[BitString] {
        &self.checks
    }

    pub fn check_parities(&self) -> &[bool] {
        &self.check_parities
    }

    pub fn key_string(&self) -> BitString {
        self.key_string
    }

    pub fn key_parity(&self) -> bool {
        self.key_parity
    }

    /// `v_1 .. v_r, v_d`.
    pub fn key_basis(&self) -> Vec<BitString> {
        let mut all = self.checks.clone();
        all.push(self.key_string);
        all
    }

    /// The subspace spanned by the checks and the key string; basis index `r` is `v_d`.
    pub fn key_subspace(&self) -> Subspace {
        Subspace::new(self.n, &self.key_basis()).expect("validated at construction")
    }

    /// The same code with its checks reordered.
    pub fn permute_checks(&self, order: &[usize]) -> Result<Self, CodeError> {
        let checks = order.iter().map(|&i| self.checks[i]).collect();
        let parities = order.iter().map(|&i| self.check_parities[i]).collect();
        Self::with_parities(checks, parities, self.key_string, self.key_parity)
    }

    /// Does `x` satisfy every announced check parity?
    pub fn accepts(&self, x: BitString) -> bool {
        self.checks.iter().zip(&self.check_parities).all(|(&v, &p)| (x & v).parity() == p)
    }

    /// Compact identifier, e.g. `5:11000+01100|11111`.
    pub fn id(&self) -> String {
        let checks: Vec<String> = self.checks.iter().map(|c| c.to_string()).collect();
        format!("{}:{}|{}", self.n, checks.join("+"), self.key_string)
    }

    /// Parse the plain-text code file format.
    ///
    /// ```text
    /// n r
    /// <n-bit check> <parity>     (r lines)
    /// <n-bit key string> <parity>
    /// ```
    pub fn parse(text: &str) -> Result<Self, CodeError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (hline, header) = lines.next().ok_or(CodeError::Parse { line: 1, msg: "empty file".into() })?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(CodeError::Parse { line: hline, msg: "expected `n r`".into() });
        }
        let n: usize =
            fields[0].parse().map_err(|_| CodeError::Parse { line: hline, msg: format!("bad n `{}`", fields[0]) })?;
        let r: usize =
            fields[1].parse().map_err(|_| CodeError::Parse { line: hline, msg: format!("bad r `{}`", fields[1]) })?;

        let mut words = Vec::with_capacity(r + 1);
        let mut parities = Vec::with_capacity(r + 1);
        for expected in 0..=r {
            let (lno, line) = lines.next().ok_or(CodeError::Parse {
                line: hline + expected + 1,
                msg: format!("expected {} word lines, found {expected}", r + 1),
            })?;
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 2 {
                return Err(CodeError::Parse { line: lno, msg: "expected `<bits> <parity>`".into() });
            }
            let word: BitString = fields[0].parse().map_err(|e| match e {
                CodeError::BadDigit { pos, found } => {
                    CodeError::Parse { line: lno, msg: format!("column {pos}: unexpected `{found}`") }
                }
                other => CodeError::Parse { line: lno, msg: other.to_string() },
            })?;
            if word.len() != n {
                return Err(CodeError::Parse {
                    line: lno,
                    msg: format!("word has {} bits, header says n = {n}", word.len()),
                });
            }
            let parity = match fields[1] {
                "0" => false,
                "1" => true,
                other => return Err(CodeError::Parse { line: lno, msg: format!("bad parity bit `{other}`") }),
            };
            words.push(word);
            parities.push(parity);
        }
        if let Some((lno, _)) = lines.next() {
            return Err(CodeError::Parse { line: lno, msg: "trailing content".into() });
        }
        let key = words.pop().expect("r + 1 words");
        let key_parity = parities.pop().expect("r + 1 parities");
        Self::with_parities(words, parities, key, key_parity)
    }

    /// Render in the code file format accepted by [`CodeSpec::parse`].
    pub fn to_file_string(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.r());
        for (v, p) in self.checks.iter().zip(&self.check_parities) {
            out.push_str(&format!("{v} {}\n", *p as u8));
        }
        out.push_str(&format!("{} {}\n", self.key_string, self.key_parity as u8));
        out
    }
}

/// Parity checks of the Hamming code of length `2^r - 1`, with the all-ones key string.
///
/// Column `i` of the parity-check matrix is the `r`-bit word with value `i`; check 1 is
/// the row holding the most significant bit of each column.
pub fn hamming_code(r: usize) -> Result<CodeSpec, CodeError> {
    if !(2..=MAX_HAMMING_R).contains(&r) {
        return Err(CodeError::HammingRange(r));
    }
    let n = (1usize << r) - 1;
    let checks = (0..r)
        .map(|row| {
            let shift = r - 1 - row;
            let mut value = 0u32;
            for col in 1..=n {
                value = (value << 1) | ((col >> shift) & 1) as u32;
            }
            BitString::from_raw(n, value)
        })
        .collect();
    CodeSpec::new(checks, BitString::ones(n)?)
}

/// Hamming distance from `v_d` to each word of the check span, in span order.
pub fn distance_profile(code: &CodeSpec) -> Vec<u32> {
    check_span(code).into_iter().map(|w| (w ^ code.key_string()).weight()).collect()
}

/// The `2^r` words of the check span, indexed by coefficient mask.
pub fn check_span(code: &CodeSpec) -> Vec<BitString> {
    let r = code.r();
    (0u32..1 << r)
        .map(|mask| {
            let mut v = 0;
            for (l, c) in code.checks().iter().enumerate() {
                if mask >> l & 1 == 1 {
                    v ^= c.value();
                }
            }
            BitString::from_raw(code.n(), v)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bs(s: &str) -> BitString {
        s.parse().unwrap()
    }

    #[test]
    fn parity_examples() {
        assert!(!parity(bs("00000")));
        assert!(parity(bs("10110")));
        let anded = bs("11000") & bs("10100");
        assert_eq!(anded, bs("10000"));
        assert!(parity(anded));
    }

    #[test]
    fn bit_order_is_msb_first() {
        let v = bs("11000");
        assert_eq!(v.value(), 24);
        assert!(v.bit(1) && v.bit(2) && !v.bit(3));
        assert_eq!(bs("01100").value(), 12);
    }

    #[test]
    fn parity_is_linear_exhaustive() {
        for n in 1..=10usize {
            for x in 0u32..1 << n {
                for y in 0u32..1 << n {
                    let (a, b) = (BitString::from_raw(n, x), BitString::from_raw(n, y));
                    assert_eq!(parity(a ^ b), parity(a) ^ parity(b));
                }
            }
        }
    }

    #[test]
    fn span_examples() {
        let s = span_set(5, &[bs("11000"), bs("01100")]).unwrap();
        let expected: BTreeSet<_> = ["00000", "11000", "01100", "10100"].iter().map(|w| bs(w)).collect();
        assert_eq!(s, expected);

        let empty = span_set(5, &[]).unwrap();
        assert_eq!(empty.into_iter().collect::<Vec<_>>(), vec![bs("00000")]);

        let dup = span_set(3, &[bs("101"), bs("101")]).unwrap();
        assert_eq!(dup.len(), 2);
        assert!(dup.len() < 1 << 2, "dependence shows as a short span");
        assert!(Subspace::new(3, &[bs("101"), bs("101")]).is_err());
    }

    #[test]
    fn decompose_examples() {
        let basis = [bs("11000"), bs("01100")];
        assert_eq!(decompose(bs("10100"), &basis), Some(vec![true, true]));
        assert_eq!(decompose(bs("00001"), &basis), None);
        assert_eq!(decompose(bs("00000"), &basis), Some(vec![false, false]));
    }

    #[test]
    fn min_representative_is_coset_minimum() {
        let basis = [bs("11010"), bs("01101"), bs("11111")];
        let space = Subspace::new(5, &basis).unwrap();
        let span = span_set(5, &basis).unwrap();
        for x in 0u32..32 {
            let x = BitString::from_raw(5, x);
            let brute = span.iter().map(|&w| w ^ x).min().unwrap();
            assert_eq!(space.min_representative(x), brute);
        }
    }

    #[test]
    fn hamming_r2_matches_column_convention() {
        let h = hamming_code(2).unwrap();
        assert_eq!(h.n(), 3);
        assert_eq!(h.checks(), &[bs("011"), bs("101")]);
        // same span as {110, 011}
        let a = span_set(3, h.checks()).unwrap();
        let b = span_set(3, &[bs("110"), bs("011")]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn hamming_span_is_constant_weight() {
        for r in 2..=MAX_HAMMING_R {
            let h = hamming_code(r).unwrap();
            let n = h.n();
            assert_eq!(n, (1 << r) - 1);
            let span = check_span(&h);
            for w in span.iter().filter(|w| !w.is_zero()) {
                assert_eq!(w.weight(), 1 << (r - 1));
            }
            // syndromes of single-bit errors are all distinct and nonzero
            let syndromes: BTreeSet<u32> = (1..=n)
                .map(|i| {
                    let e = BitString::from_raw(n, 1 << (n - i));
                    h.checks().iter().enumerate().fold(0, |acc, (l, &v)| acc | ((e & v).parity() as u32) << l)
                })
                .collect();
            assert_eq!(syndromes.len(), n);
            assert!(!syndromes.contains(&0));
        }
    }

    #[test]
    fn hamming_range() {
        assert!(matches!(hamming_code(1), Err(CodeError::HammingRange(1))));
        assert!(hamming_code(MAX_HAMMING_R + 1).is_err());
    }

    #[test]
    fn distance_profiles() {
        let mut d = distance_profile(&hamming_code(3).unwrap());
        d.sort();
        assert_eq!(d, vec![3, 3, 3, 3, 3, 3, 3, 7]);

        let bare = CodeSpec::new(vec![], bs("11111")).unwrap();
        assert_eq!(distance_profile(&bare), vec![5]);

        let one = CodeSpec::new(vec![bs("11000")], bs("11111")).unwrap();
        assert_eq!(distance_profile(&one), vec![5, 3]);
    }

    #[test]
    fn codespec_rejects_bad_input() {
        assert!(matches!(CodeSpec::new(vec![bs("11000"), bs("11000")], bs("11111")), Err(CodeError::Dependent { .. })));
        assert!(matches!(
            CodeSpec::new(vec![bs("11000"), bs("00111")], bs("11111")),
            Err(CodeError::Dependent { index: 3 })
        ));
        assert!(matches!(CodeSpec::new(vec![], bs("000")), Err(CodeError::ZeroKey)));
        assert!(matches!(
            CodeSpec::new(vec![bs("10"), bs("01")], bs("11")),
            Err(CodeError::TooManyChecks { .. }) | Err(CodeError::Dependent { .. })
        ));
        assert!(CodeSpec::new(vec![bs("110")], bs("1111")).is_err());
    }

    #[test]
    fn code_file_round_trip_and_diagnostics() {
        let text = "5 2\n11000 0\n01100 1\n11111 0\n";
        let code = CodeSpec::parse(text).unwrap();
        assert_eq!(code.checks(), &[bs("11000"), bs("01100")]);
        assert_eq!(code.check_parities(), &[false, true]);
        assert_eq!(code.to_file_string(), text);

        let err = CodeSpec::parse("5 1\n110x0 0\n11111 0\n").unwrap_err();
        assert_eq!(err.to_string(), "line 2: column 4: unexpected `x`");
        let err = CodeSpec::parse("5 1\n1100 0\n11111 0\n").unwrap_err();
        assert!(err.to_string().starts_with("line 2:"));
        let err = CodeSpec::parse("5 2\n11000 0\n11111 0\n").unwrap_err();
        assert!(err.to_string().starts_with("line 4:"), "{err}");
    }

    #[test]
    #[should_panic(expected = "different lengths")]
    fn xor_length_mismatch_panics() {
        let _ = bs("101") ^ bs("10");
    }
}
