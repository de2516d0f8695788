use std::io::Write;

use ikeda_core::exactnum::{int_pow, is_prime_u64};
use ikeda_core::modforms::{
    delta, eigenform, hecke_eigenvalue_prime, load_eigenform, FormsError, SUPPORTED_WEIGHTS,
};
use num_bigint::BigInt;

/// `q ∏_{m>=1} (1 - q^m)^24` expanded factor by factor in i128.
fn naive_tau(n: usize) -> Vec<i128> {
    let mut series = vec![0i128; n];
    series[0] = 1;
    for m in 1..n {
        for _ in 0..24 {
            for i in (m..n).rev() {
                series[i] -= series[i - m];
            }
        }
    }
    let mut out = vec![0];
    out.extend(series);
    out
}

#[test]
fn delta_matches_naive_product() {
    let d = delta(120).unwrap();
    let naive = naive_tau(120);
    for (m, (got, want)) in d.coeffs().iter().zip(&naive).enumerate() {
        assert_eq!(*got, BigInt::from(*want), "tau({m})");
    }
    assert_eq!(d.coeffs().len(), naive.len());
}

#[test]
fn ramanujan_congruence_mod_691() {
    // τ(m) ≡ σ_11(m) (mod 691)
    let d = delta(200).unwrap();
    for m in 1..=200u64 {
        let sigma: BigInt = (1..=m)
            .filter(|d| m % d == 0)
            .map(|d| int_pow(&BigInt::from(d), 11))
            .sum();
        let diff = &d.coeffs()[m as usize] - sigma;
        assert_eq!(diff % 691, BigInt::from(0), "m = {m}");
    }
}

#[test]
fn invariants_to_500() {
    for w in SUPPORTED_WEIGHTS {
        let f = eigenform(w, 500).unwrap();
        assert_eq!(f.first_violation(), None, "weight {w}");
        for p in (2..=500).filter(|&p| is_prime_u64(p)) {
            hecke_eigenvalue_prime(&f, p).unwrap();
        }
    }
}

#[test]
fn loading_tables() {
    let mut good = tempfile::NamedTempFile::new().unwrap();
    writeln!(
        good,
        "# Delta, first coefficients\n1 1\n2 -24\n3 252\n4 -1472"
    )
    .unwrap();
    let f = load_eigenform(good.path(), 12).unwrap();
    assert_eq!(f.coeff(3), Some(&BigInt::from(252)));
    assert_eq!(hecke_eigenvalue_prime(&f, 3).unwrap(), BigInt::from(252));

    let mut bad = tempfile::NamedTempFile::new().unwrap();
    writeln!(bad, "1 1\n2 -24\n3 252\n4 -1472\n5 4830\n6 1").unwrap();
    match load_eigenform(bad.path(), 12) {
        Err(FormsError::Validation { index, .. }) => assert_eq!(index, 6),
        other => panic!("expected rejection, got {other:?}"),
    }

    assert!(matches!(
        load_eigenform("/nonexistent/table.txt", 12),
        Err(FormsError::Io { .. })
    ));
}
