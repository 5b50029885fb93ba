use std::collections::BTreeMap;

use proptest::prelude::*;
use torhilbert_core::fit::{default_onsets, fit_bivariate, fit_univariate, FitVerdict, IntegerPolynomial};
use torhilbert_core::sampler::{Ranges, SampleTable, Series};
use torhilbert_core::Length;

fn coefficients(max_degree: u32) -> impl Strategy<Value = BTreeMap<(u32, u32), i64>> {
    let keys: Vec<(u32, u32)> = (0..=max_degree).flat_map(|a| (0..=max_degree - a).map(move |b| (a, b))).collect();
    prop::collection::vec(-9i64..=9, keys.len()).prop_map(move |cs| keys.iter().copied().zip(cs).collect())
}

/// Shifts the constant term so the polynomial is non-negative on `1..=hi`.
fn nonnegative(mut coeffs: BTreeMap<(u32, u32), i64>, hi: i64) -> IntegerPolynomial {
    let p = IntegerPolynomial::new(2, 1, 1, coeffs.clone());
    let low = (1..=hi).flat_map(|n| (1..=hi).map(move |m| (n, m))).map(|(n, m)| p.evaluate(n, m)).min().unwrap();
    if low < 0 {
        *coeffs.entry((0, 0)).or_insert(0) -= low as i64;
    }
    IntegerPolynomial::new(2, 1, 1, coeffs)
}

fn table_of(p: &IntegerPolynomial, hi: u32) -> SampleTable {
    SampleTable::tabulate(0, Ranges::square(1, hi), false, |n, m| Length::Finite(p.evaluate(n as i64, m as i64) as u64))
}

proptest! {
    #[test]
    fn bivariate_round_trip(coeffs in coefficients(4)) {
        let p = nonnegative(coeffs, 8);
        let fit = fit_bivariate(&table_of(&p, 8), 4, &default_onsets());
        prop_assert_eq!(fit.verdict, FitVerdict::Polynomial);
        prop_assert_eq!(fit.polynomial.unwrap().to_rational(), p.to_rational());
    }

    #[test]
    fn univariate_round_trip(coeffs in prop::collection::vec(-9i64..=9, 1..5)) {
        let map: BTreeMap<(u32, u32), i64> = coeffs.iter().enumerate().map(|(a, &c)| ((a as u32, 0), c)).collect();
        let raw = IntegerPolynomial::new(1, 1, 0, map.clone());
        let low = (1..=10).map(|n| raw.evaluate(n, 0)).min().unwrap().min(0);
        let mut map = map;
        *map.entry((0, 0)).or_insert(0) -= low as i64;
        let p = IntegerPolynomial::new(1, 1, 0, map);
        let series = Series::new(0, 1, (1..=10).map(|n| Length::Finite(p.evaluate(n, 0) as u64)).collect());
        let fit = fit_univariate(&series, 4, &[1, 2, 3, 4, 5]);
        prop_assert_eq!(fit.polynomial.unwrap().to_rational(), p.to_rational());
    }

}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn accepted_fits_reproduce_every_cell(values in prop::collection::vec(0u64..4, 64), d in 0u32..3) {
        let table = SampleTable::tabulate(0, Ranges::square(1, 8), false, |n, m| {
            Length::Finite(values[((n - 1) * 8 + (m - 1)) as usize] / 3)
        });
        let fit = fit_bivariate(&table, d, &default_onsets());
        if let (Some(p), Some([n0, m0])) = (fit.polynomial.as_ref(), fit.onset) {
            for n in n0..=8 {
                for m in m0..=8 {
                    let observed = table.get(n, m).unwrap().finite().unwrap() as i128;
                    prop_assert_eq!(p.evaluate(n, m), observed);
                }
            }
            prop_assert!(fit.holdout_cells > 0);
        }
    }

    #[test]
    fn larger_holdout_never_accepts_more(values in prop::collection::vec(0u64..3, 100), n0 in 1i64..4, m0 in 1i64..4) {
        let cell = |n: u32, m: u32| Length::Finite(values[((n - 1) * 10 + (m - 1)) as usize] / 2);
        let small = SampleTable::tabulate(0, Ranges::square(1, 8), false, cell);
        let large = SampleTable::tabulate(0, Ranges::square(1, 10), false, cell);
        let onset = [(n0, m0)];
        let a = fit_bivariate(&small, 2, &onset);
        let b = fit_bivariate(&large, 2, &onset);
        if a.verdict == FitVerdict::NoPolynomialFound {
            prop_assert_eq!(b.verdict, FitVerdict::NoPolynomialFound);
        }
    }
}

#[test]
fn infinite_cells_block_every_onset() {
    let table = SampleTable::tabulate(0, Ranges::square(1, 8), false, |n, _| {
        if n == 8 {
            Length::Infinite
        } else {
            Length::Finite(1)
        }
    });
    assert_eq!(fit_bivariate(&table, 2, &default_onsets()).verdict, FitVerdict::InfiniteValues);
}
