use superpos::codebook::{generate_codebook, similarity, Scheme};
use superpos::Error;

#[test]
fn hrr_moments() {
    let n = 10_000;
    let cb = generate_codebook(Scheme::Hrr, n, 27, 0.0, 11).unwrap();
    for col in cb.columns() {
        let mean = col.iter().sum::<f64>() / n as f64;
        let var = col.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1) as f64;
        // mean SE is sqrt(1/N)/sqrt(N)
        assert!(mean.abs() < 4.0 / n as f64, "mean {mean}");
        assert!((var * n as f64 - 1.0).abs() < 0.05, "var {var}");
    }
}

#[test]
fn fhrr_unit_phasors() {
    let cb = generate_codebook(Scheme::Fhrr, 64, 5, 0.0, 3).unwrap();
    for col in cb.columns() {
        for j in 0..32 {
            assert!((col[j] * col[j] + col[j + 32] * col[j + 32] - 1.0).abs() < 1e-12);
        }
        assert!((similarity(Scheme::Fhrr, col, col).unwrap() - 32.0).abs() < 1e-9);
    }
}

#[test]
fn hdc_small_and_deterministic() {
    let a = generate_codebook(Scheme::Hdc, 4, 2, 0.0, 99).unwrap();
    assert!(a.entries().iter().all(|&x| x == 1.0 || x == -1.0));
    let b = generate_codebook(Scheme::Hdc, 4, 2, 0.0, 99).unwrap();
    assert_eq!(a.entries(), b.entries());
    let c = generate_codebook(Scheme::Hdc, 4, 2, 0.0, 100).unwrap();
    assert_eq!(c.n_dim, 4);
    for scheme in [Scheme::Hrr, Scheme::Fhrr, Scheme::RandomUnitary] {
        let x = generate_codebook(scheme, 50, 3, 0.3, 5).unwrap();
        let y = generate_codebook(scheme, 50, 3, 0.3, 5).unwrap();
        assert_eq!(x.entries(), y.entries());
    }
}

#[test]
fn independent_hdc_columns_rarely_exceed_four_sigma() {
    let n = 256;
    let mut exceed = 0;
    let pairs = 20_000;
    let cb = generate_codebook(Scheme::Hdc, n, 2 * pairs, 0.0, 1).unwrap();
    for p in 0..pairs {
        let s = similarity(Scheme::Hdc, cb.column(2 * p), cb.column(2 * p + 1)).unwrap();
        if s.abs() >= 4.0 * (n as f64).sqrt() {
            exceed += 1;
        }
    }
    // expected about 1.3 exceedances in 2e4 pairs
    assert!(exceed <= 8, "{exceed}");
}

#[test]
fn argument_errors() {
    assert!(matches!(generate_codebook(Scheme::Fhrr, 7, 2, 0.0, 0), Err(Error::InvalidDimension(_))));
    assert!(matches!(generate_codebook(Scheme::Hdc, 8, 2, 1.5, 0), Err(Error::InvalidParameter(_))));
    assert!(matches!(generate_codebook(Scheme::Hdc, 8, 2, -0.1, 0), Err(Error::InvalidParameter(_))));
    let cb = generate_codebook(Scheme::Hdc, 8, 2, 0.0, 0).unwrap();
    assert!(matches!(similarity(Scheme::Hdc, cb.column(0), &[1.0; 7]), Err(Error::InvalidDimension(_))));
}

#[test]
fn full_sparsity_is_zero_for_every_scheme() {
    for scheme in [Scheme::Hdc, Scheme::Hrr, Scheme::Fhrr, Scheme::RandomUnitary] {
        let cb = generate_codebook(scheme, 16, 4, 1.0, 8).unwrap();
        assert!(cb.entries().iter().all(|&x| x == 0.0));
    }
}
