use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use torus_nash::gan::{chi, simpson};
use torus_nash::{
    cost, discriminator, spectrum_fft, CostField, ExpFamily, GanConfig, GanField, GridSamples,
    Parity, TorusPoint,
};

fn density(xi: f64, x: f64) -> f64 {
    xi * (-xi * x).exp()
}

/// `E_data log D` computed by Simpson in `x` on a fine grid.
fn real_part(t1: f64, cfg: &GanConfig) -> f64 {
    let (cw, c1) = (chi(cfg.omega), chi(t1));
    simpson(
        |x| {
            let (fw, f1) = (density(cw, x), density(c1, x));
            (fw / (fw + f1)).ln() * fw
        },
        0.0,
        cfg.x_cutoff,
        8001,
    )
}

/// `E_latent log(1 − D(G(λ)))` by quadrature in `λ` on panels that shrink
/// geometrically towards `λ = 1`; the final `1e-13` sliver is dropped.
fn latent_part(t1: f64, t2: f64, cfg: &GanConfig) -> f64 {
    let (cw, c1, c2) = (chi(cfg.omega), chi(t1), chi(t2));
    let integrand = |lambda: f64| {
        let x = -(-lambda).ln_1p() / c2;
        let (fw, f1) = (density(cw, x), density(c1, x));
        (f1 / (fw + f1)).ln()
    };
    let mut total = simpson(integrand, 0.0, 0.9, 2001);
    for k in 1..13 {
        let (a, b) = (1.0 - 10f64.powi(-k), 1.0 - 10f64.powi(-k - 1));
        total += simpson(integrand, a, b, 2001);
    }
    total
}

#[test]
fn cutoff_keeps_all_but_negligible_mass() {
    let cfg = GanConfig::default();
    for i in 0..=100 {
        let xi = chi(i as f64 / 100.0);
        assert!(ExpFamily::new(xi).unwrap().cdf(cfg.x_cutoff) >= 1.0 - 1e-12);
    }
}

#[test]
fn matching_discriminator_is_optimal() {
    let cfg = GanConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..5 {
        let t2: f64 = rng.gen();
        let best = cost(t2, t2, &cfg).unwrap();
        for _ in 0..20 {
            let t1: f64 = rng.gen();
            assert!(
                best >= cost(t1, t2, &cfg).unwrap() - 1e-12,
                "θ₂={t2}, θ₁={t1}"
            );
        }
    }
}

#[test]
fn substitution_matches_direct_latent_quadrature() {
    // Δx = 0.01 so the x-domain discretization error (~1e-9) does not mask the
    // comparison; at the default 401 nodes it is ~1e-5 on its own
    let cfg = GanConfig {
        simpson_nodes: 4001,
        ..GanConfig::default()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let (t1, t2): (f64, f64) = (rng.gen(), rng.gen());
        let direct = real_part(t1, &cfg) + latent_part(t1, t2, &cfg);
        let c = cost(t1, t2, &cfg).unwrap();
        assert!((c - direct).abs() <= 1e-5, "({t1}, {t2}): {c} vs {direct}");
    }
}

#[test]
fn spectrum_has_only_cosine_modes() {
    let field = GanField::new(GanConfig::default()).unwrap();
    let grid = GridSamples::from_field(&field, 32, 32).unwrap();
    let table = spectrum_fft(&grid, 10).unwrap();
    for e in table.entries() {
        let sine = (e.mode.m1 > 0 && e.mode.alpha == Parity::Sin)
            || (e.mode.m2 > 0 && e.mode.beta == Parity::Sin);
        if sine {
            assert!(e.coeff.abs() <= 1e-6, "{}: {}", e.mode, e.coeff);
        }
    }
    assert!(table.entries().iter().any(|e| e.coeff.abs() > 1e-3));
}

#[test]
fn analytic_anchors() {
    let cfg = GanConfig::default();
    assert!((cost(0.25, 0.25, &cfg).unwrap() + 2.0 * 2f64.ln()).abs() <= 1e-4);
    for x in [0.0, 0.3, 1.0, 7.5, 39.9] {
        assert_eq!(discriminator(cfg.omega, x, &cfg), 0.5);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let field = GanField::new(cfg).unwrap();
    for _ in 0..20 {
        let (a, b): (f64, f64) = (rng.gen(), rng.gen());
        let c = cost(a, b, &cfg).unwrap();
        assert!((c - cost(1.0 - a, b, &cfg).unwrap()).abs() <= 1e-10);
        assert!((c - cost(a, 1.0 - b, &cfg).unwrap()).abs() <= 1e-10);
        assert!((field.evaluate(TorusPoint::new(a, b)) - c).abs() < 1e-6);
    }
}
