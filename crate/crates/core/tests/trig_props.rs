use proptest::prelude::*;
use torus_nash::{Axis, Parity, TorusPoint, TrigMode, TrigPolynomial};

fn arb_mode(max: u32) -> impl Strategy<Value = TrigMode> {
    (0..=max, 0..=max, 0u8..2, 0u8..2).prop_map(|(m1, m2, a, b)| TrigMode::bits(m1, m2, a, b))
}

fn arb_poly(terms: usize, max: u32) -> impl Strategy<Value = TrigPolynomial> {
    prop::collection::vec((-2.0f64..2.0, arb_mode(max)), 0..=terms)
        .prop_map(TrigPolynomial::from_terms)
}

fn arb_point() -> impl Strategy<Value = TorusPoint> {
    (0.0f64..1.0, 0.0f64..1.0).prop_map(|(a, b)| TorusPoint::new(a, b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn gradient_matches_central_differences(
        poly in arb_poly(6, 6),
        points in prop::collection::vec(arb_point(), 100),
    ) {
        let h = 1e-5;
        // truncation bound h²/6·max|f‴| plus rounding
        let w = std::f64::consts::TAU * poly.max_frequency() as f64;
        let mass: f64 = poly.terms().iter().map(|t| t.coeff.abs()).sum();
        let tol = h * h / 6.0 * mass * w.powi(3) + 1e-8;
        for p in points {
            let g = poly.gradient(p);
            let fd1 = (poly.eval(p.offset(h, 0.0)) - poly.eval(p.offset(-h, 0.0))) / (2.0 * h);
            let fd2 = (poly.eval(p.offset(0.0, h)) - poly.eval(p.offset(0.0, -h))) / (2.0 * h);
            prop_assert!((g[0] - fd1).abs() < tol, "{} at {p}: {} vs {fd1}", poly, g[0]);
            prop_assert!((g[1] - fd2).abs() < tol, "{} at {p}: {} vs {fd2}", poly, g[1]);
        }
    }

    #[test]
    fn evaluation_is_periodic(poly in arb_poly(6, 6), a in -3.0f64..3.0, b in -3.0f64..3.0) {
        let p = TorusPoint::new(a, b);
        let v = poly.eval(p);
        let tol = 1e-12 * (1.0 + v.abs());
        prop_assert!((v - poly.eval(TorusPoint::new(a + 1.0, b))).abs() < tol);
        prop_assert!((v - poly.eval(TorusPoint::new(a, b + 1.0))).abs() < tol);
    }

    #[test]
    fn hessian_is_symmetric(poly in arb_poly(6, 6), p in arb_point()) {
        let h = poly.hessian(p);
        prop_assert_eq!(h[0][1].to_bits(), h[1][0].to_bits());
    }

    #[test]
    fn twice_differentiated_mode_returns(mode in arb_mode(8), second in any::<bool>()) {
        let axis = if second { Axis::Second } else { Axis::First };
        let (s1, m) = mode.partial(axis);
        let (s2, back) = m.partial(axis);
        prop_assert_eq!(back, mode);
        let w = std::f64::consts::TAU * mode.frequency(axis) as f64;
        prop_assert!((s1 * s2 + w * w).abs() <= 1e-12 * (1.0 + w * w));
    }

    #[test]
    fn json_round_trip(poly in arb_poly(6, 6)) {
        let back = TrigPolynomial::from_json(&poly.to_json().unwrap()).unwrap();
        prop_assert_eq!(back, poly);
    }

    #[test]
    fn wrapped_points_lie_in_unit_square(a in -1e6f64..1e6, b in -1e6f64..1e6) {
        let p = TorusPoint::new(a, b);
        prop_assert!((0.0..1.0).contains(&p.theta1) && (0.0..1.0).contains(&p.theta2));
    }
}

#[test]
fn exact_quarter_evaluation_matches_float() {
    use torus_nash::trig::{mode_exact_value, RationalTorusPoint};
    for m1 in 1..5u32 {
        for m2 in 1..5u32 {
            for a in 0..2 {
                for b in 0..2 {
                    let mode = TrigMode::bits(m1, m2, a, b);
                    let (d1, d2) = (4 * m1 as i64, 4 * m2 as i64);
                    for p in 0..d1 {
                        for q in 0..d2 {
                            let r = RationalTorusPoint::from_fractions(p, d1, q, d2);
                            let exact = mode_exact_value(&mode, &r).unwrap() as f64;
                            assert!((exact - mode.eval(r.to_point())).abs() < 1e-12);
                        }
                    }
                }
            }
        }
    }
    assert_eq!(Parity::Cos + Parity::Cos, Parity::Sin);
}
