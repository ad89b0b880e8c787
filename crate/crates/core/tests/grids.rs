use std::sync::Arc;

use glt_spectra::grids::{exp_map, mapped_grid, uniform_grid, Diffeomorphism};

#[test]
fn uniform_grid_examples() {
    let g = uniform_grid(0.0, 1.0, 3, 2).unwrap();
    assert_eq!(g.nodes(), &[-0.25, 0.0, 0.25, 0.5, 0.75, 1.0, 1.25]);
    let g = uniform_grid(0.0, 1.0, 3, 1).unwrap();
    assert_eq!(g.nodes(), &[0.0, 0.25, 0.5, 0.75, 1.0]);
    let e = std::f64::consts::E;
    let g = uniform_grid(1.0, e, 2, 2).unwrap();
    assert_eq!(g.node(0), 1.0);
    assert_eq!(g.node(3), e);
    let g = uniform_grid(0.0, 1.0, 9, 1).unwrap();
    assert!(g.interior().windows(2).all(|w| (w[1] - w[0] - 0.1).abs() < 1e-15));
}

#[test]
fn identity_map_leaves_grid_unchanged() {
    let g = uniform_grid(0.0, 2.0, 7, 3).unwrap();
    let m = mapped_grid(&g, &Diffeomorphism::identity(0.0, 2.0).unwrap()).unwrap();
    assert_eq!(g, m);
}

#[test]
fn exp_map_examples() {
    let e = std::f64::consts::E;
    let tau = exp_map(1.0).unwrap();
    assert!((tau.eval(1.0) - 1.0).abs() < 1e-15);
    assert!((tau.eval(e) - e).abs() < 1e-14);
    let g = mapped_grid(&uniform_grid(1.0, e, 1, 1).unwrap(), &tau).unwrap();
    assert!((g.node(1) - 0.5f64.exp()).abs() < 1e-14);
    assert_eq!(g.node(0), 1.0);
    let tau4 = exp_map(4.0).unwrap();
    let b = 4.0f64.sqrt().exp();
    let mid = 0.5 * (1.0 + b);
    let closed = (2.0 * (mid - 1.0) / (b - 1.0)).exp();
    assert!((tau4.eval(mid) - closed).abs() < 1e-14);
}

#[test]
fn exp_map_amplitude_is_constant() {
    for alpha in [0.5, 1.0, 2.0] {
        let tau = exp_map(alpha).unwrap();
        let b = alpha.sqrt().exp();
        let vals: Vec<f64> = (0..1000)
            .map(|i| 1.0 + (b - 1.0) * i as f64 / 999.0)
            .map(|x| alpha * tau.eval(x).powi(2) / tau.derivative(x).powi(2))
            .collect();
        let mean = vals.iter().sum::<f64>() / vals.len() as f64;
        let sd = (vals.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / vals.len() as f64).sqrt();
        assert!(sd < 1e-10 * mean);
        assert!((mean - (b - 1.0).powi(2)).abs() < 1e-10 * mean);
    }
}

#[test]
fn mapped_grid_keeps_ghosts_and_count() {
    let e = std::f64::consts::E;
    let g = uniform_grid(1.0, e, 20, 4).unwrap();
    let m = mapped_grid(&g, &exp_map(1.0).unwrap()).unwrap();
    assert_eq!(g.nodes().len(), m.nodes().len());
    for j in [-3isize, -2, -1, 0, 21, 22, 23, 24] {
        assert_eq!(g.node(j), m.node(j));
    }
}

#[test]
fn mismatched_interval_rejected() {
    let g = uniform_grid(0.0, 1.0, 5, 1).unwrap();
    assert!(mapped_grid(&g, &Diffeomorphism::identity(0.0, 2.0).unwrap()).is_err());
    let bad = Diffeomorphism::new(0.0, 1.0, Arc::new(|x: f64| x * x), Arc::new(|x: f64| 2.0 * x), "square");
    assert!(bad.is_ok(), "x^2 is monotone on [0,1]");
}
