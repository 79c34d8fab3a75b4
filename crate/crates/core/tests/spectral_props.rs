use proptest::prelude::*;
use torus_nash::spectral::coefficient_from_samples;
use torus_nash::{
    spectrum_fft, split_superposition, GridSamples, TorusPoint, TrigMode, TrigPolynomial,
};

fn arb_poly(max: u32) -> impl Strategy<Value = TrigPolynomial> {
    prop::collection::vec(((-2.0f64..2.0), (0..=max), (0..=max), 0u8..2, 0u8..2), 1..8).prop_map(
        |terms| {
            TrigPolynomial::from_terms(
                terms
                    .into_iter()
                    .map(|(c, m1, m2, a, b)| (c, TrigMode::bits(m1, m2, a, b)))
                    // sine factors on a zero frequency vanish identically
                    .filter(|(_, m)| !m.is_identically_zero()),
            )
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fft_round_trip_recovers_coefficients(k in 1u32..6, seed_poly in arb_poly(5)) {
        let poly = TrigPolynomial::from_terms(
            seed_poly.terms().iter().filter(|t| t.mode.max_frequency() <= k).map(|t| (t.coeff, t.mode)),
        );
        let n = (4 * k + 4) as usize;
        let grid = GridSamples::from_field(&poly, n, n).unwrap();
        let table = spectrum_fft(&grid, k).unwrap();
        for t in poly.terms() {
            let got = table.get(&t.mode).map_or(0.0, |e| e.coeff);
            prop_assert!((got - t.coeff).abs() < 1e-10, "{}: {got} vs {}", t.mode, t.coeff);
        }
        for e in table.entries() {
            prop_assert!((e.coeff - poly.coefficient(&e.mode)).abs() < 1e-10);
        }
    }

    #[test]
    fn quadrature_and_fft_agree(poly in arb_poly(4)) {
        let grid = GridSamples::from_field(&poly, 16, 16).unwrap();
        let table = spectrum_fft(&grid, 4).unwrap();
        for m1 in 0..=4 {
            for m2 in 0..=4 {
                for a in 0..2 {
                    for b in 0..2 {
                        let mode = TrigMode::bits(m1, m2, a, b);
                        if mode.is_identically_zero() {
                            continue;
                        }
                        let q = coefficient_from_samples(&grid, mode).unwrap();
                        let f = table.get(&mode).map_or(0.0, |e| e.coeff);
                        prop_assert!((q - f).abs() < 1e-9, "{mode}: {q} vs {f}");
                    }
                }
            }
        }
    }

    #[test]
    fn tables_are_sorted_with_bounded_ratios(poly in arb_poly(5)) {
        let grid = GridSamples::from_field(&poly, 12, 12).unwrap();
        let table = spectrum_fft(&grid, 5).unwrap();
        for w in table.entries().windows(2) {
            prop_assert!(w[0].coeff.abs() + 1e-12 >= w[1].coeff.abs());
        }
        if let Some(first) = table.entries().first() {
            prop_assert_eq!(first.ratio, 1.0);
        }
        for e in table.entries() {
            prop_assert!(e.ratio.abs() <= 1.0 + 1e-9);
        }
    }

    #[test]
    fn superposition_is_exact(poly in arb_poly(5), seed in any::<u64>()) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let (d1, d2, theta) = split_superposition(&poly);
        for t in d1.terms() {
            prop_assert_eq!(t.mode.m2, 0);
        }
        for t in d2.terms() {
            prop_assert_eq!(t.mode.m1, 0);
        }
        for t in theta.terms() {
            prop_assert!(t.mode.is_two_dimensional());
        }
        for _ in 0..1000 {
            let p = TorusPoint::new(rng.gen(), rng.gen());
            let whole = poly.eval(p);
            let parts = d1.eval(p) + d2.eval(p) + theta.eval(p);
            prop_assert!((whole - parts).abs() <= 1e-13, "{whole} vs {parts}");
        }
    }
}
