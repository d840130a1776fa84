use proptest::prelude::*;

use collective_qkd::attack::{failure_probability, AttackGeometry};
use collective_qkd::gf2::{decompose, span_set, BitString, CodeSpec};
use collective_qkd::info::{block_information, total_information};
use collective_qkd::parity::block_spectrum;

fn word(len: usize) -> impl Strategy<Value = BitString> {
    (0u32..1 << len).prop_map(move |v| BitString::new(len, v).unwrap())
}

/// A code with `n` in 2..=9 and up to three checks, built by keeping only the
/// independent words of a random draw.
fn code() -> impl Strategy<Value = CodeSpec> {
    (2usize..=9).prop_flat_map(|n| {
        (prop::collection::vec(word(n), 0..4), word(n), prop::collection::vec(any::<bool>(), 4), any::<bool>())
            .prop_filter_map("no independent key", move |(raw, key, parities, key_parity)| {
                if key.is_zero() {
                    return None;
                }
                let mut checks = Vec::new();
                for w in raw {
                    let mut basis = checks.clone();
                    basis.push(key);
                    basis.push(w);
                    if span_set(n, &basis).ok()?.len() == 1 << basis.len() && checks.len() + 2 <= n {
                        checks.push(w);
                    }
                }
                let p = parities[..checks.len()].to_vec();
                CodeSpec::with_parities(checks, p, key, key_parity).ok()
            })
    })
}

proptest! {
    #[test]
    fn parity_is_linear(x in word(24), y in word(24)) {
        prop_assert_eq!((x ^ y).parity(), x.parity() ^ y.parity());
    }

    #[test]
    fn span_size_matches_unique_decomposition(basis in prop::collection::vec(word(8), 0..5)) {
        let span = span_set(8, &basis).unwrap();
        let full = span.len() == 1 << basis.len();
        let all_decompose = span.iter().all(|&w| decompose(w, &basis).is_some());
        prop_assert_eq!(full, all_decompose);
        if full {
            for &w in &span {
                let coef = decompose(w, &basis).unwrap();
                let rebuilt = basis.iter().zip(&coef).filter(|(_, &c)| c).fold(BitString::zeros(8).unwrap(), |a, (&b, _)| a ^ b);
                prop_assert_eq!(rebuilt, w);
            }
        }
    }

    #[test]
    fn weights_sum_to_one(code in code(), alpha in 0.0..std::f64::consts::FRAC_PI_4) {
        let s = block_spectrum(&code, alpha).unwrap();
        prop_assert_eq!(s.blocks.len(), 1 << (code.n() - code.r() - 1));
        prop_assert!((s.total_weight() - 1.0).abs() <= 1e-10);
        for b in &s.blocks {
            prop_assert!(b.weight >= 0.0);
            prop_assert!((0.0..=std::f64::consts::FRAC_PI_4).contains(&b.beta));
        }
    }

    #[test]
    fn spectrum_ignores_check_order(code in code(), alpha in 0.0..std::f64::consts::FRAC_PI_4, seed in any::<u64>()) {
        let mut order: Vec<usize> = (0..code.r()).collect();
        let mut state = seed;
        for i in (1..order.len()).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            order.swap(i, (state >> 33) as usize % (i + 1));
        }
        let a = block_spectrum(&code, alpha).unwrap().sorted_pairs();
        let b = block_spectrum(&code.permute_checks(&order).unwrap(), alpha).unwrap().sorted_pairs();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn parities_do_not_change_information(code in code(), alpha in 0.0..std::f64::consts::FRAC_PI_4) {
        let plain = CodeSpec::new(code.checks().to_vec(), code.key_string()).unwrap();
        let a = total_information(&block_spectrum(&code, alpha).unwrap());
        let b = total_information(&block_spectrum(&plain, alpha).unwrap());
        prop_assert_eq!(a, b);
    }

    #[test]
    fn total_information_is_nondecreasing(code in code()) {
        let mut last = 0.0;
        for i in 0..=40 {
            let alpha = std::f64::consts::FRAC_PI_4 * i as f64 / 40.0;
            let v = total_information(&block_spectrum(&code, alpha).unwrap());
            prop_assert!(v >= last - 1e-15, "drop at alpha = {}", alpha);
            prop_assert!(v <= 1.0 + 1e-12);
            last = v;
        }
    }

    #[test]
    fn block_information_bounds(beta in 0.0..std::f64::consts::FRAC_PI_4) {
        let v = block_information(beta);
        prop_assert!((0.0..=1.0).contains(&v));
    }

    #[test]
    fn geometry_round_trip(theta in 0.01..0.78f64, frac in 0.0..1.0f64) {
        let p_e = frac * theta.sin().powi(2);
        let g = AttackGeometry::from_error(theta, p_e).unwrap();
        prop_assert!(g.unitarity_residual() <= 1e-12);
        prop_assert!((g.error_rate() - p_e).abs() <= 1e-12);
        let back = AttackGeometry::from_alpha(theta, g.alpha()).unwrap();
        prop_assert!((back.theta_prime() - g.theta_prime()).abs() <= 1e-6);
    }

    #[test]
    fn failure_probability_is_monotone(n in 2usize..40, q in 0.0..0.5f64, dq in 0.0..0.01f64) {
        let p = failure_probability(n, q);
        prop_assert!((0.0..=1.0).contains(&p));
        prop_assert!(failure_probability(n + 1, q) >= p - 1e-15);
        prop_assert!(failure_probability(n, q + dq) >= p - 1e-15);
    }
}
