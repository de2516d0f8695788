//! Built-in invariant suite behind `ikeda selftest`.
//!
//! Each check is deterministic (fixed RNG seed) and sized to finish in a few
//! seconds in a release build.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::exactnum::{int_pow, pow_p_half, primes_up_to, QuadExt, Rational};
use crate::ikeda::{
    bounds, build_g, build_tilde_gp, constant_term_exponent, factorization_check, route_factored,
    route_reciprocal, route_sum, term_exponents, verify_range, IkedaParams,
};
use crate::modforms::{delta, eigenform, SUPPORTED_WEIGHTS};
use crate::polyalg::{dickson, IntPoly};
use crate::qseries::{q_binomial, verify_qbinomial_theorem};

/// The `(n, k)` pairs whose elliptic weight `2k - n` has a built-in eigenform.
pub const DESK_PARAMS: [(i64, i64); 8] = [
    (2, 10),
    (2, 12),
    (2, 14),
    (4, 8),
    (4, 10),
    (4, 12),
    (6, 14),
    (6, 16),
];

#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub result: Result<(), String>,
}

type Check = fn() -> Result<(), String>;

const CHECKS: &[(&str, Check)] = &[
    (
        "exactnum: sign agrees with high-precision evaluation",
        check_quad_sign,
    ),
    ("exactnum: half powers add exponents", check_half_powers),
    (
        "qseries: q-binomial theorem for n <= 16",
        check_qbinomial_theorem,
    ),
    (
        "qseries: symmetry and classical limit",
        check_qbinomial_symmetry,
    ),
    (
        "polyalg: reciprocal transform identity",
        check_dickson_identity,
    ),
    ("modforms: two constructions of Delta agree", check_delta),
    ("modforms: eigenform invariants", check_eigenforms),
    ("ikeda: exponent integrality", check_exponents),
    ("ikeda: three routes agree", check_routes),
    (
        "ikeda: G_p factorization and palindrome",
        check_factorization,
    ),
    (
        "ikeda: reciprocal polynomial for n = 2",
        check_saito_kurokawa,
    ),
    (
        "ikeda: positivity and bounds on genuine eigenvalues",
        check_theorem,
    ),
    ("ikeda: positivity at the Deligne extremes", check_extremes),
];

pub fn run_all() -> Vec<CheckOutcome> {
    CHECKS
        .iter()
        .map(|(name, check)| CheckOutcome {
            name,
            result: check(),
        })
        .collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn params(n: i64, k: i64) -> Result<IkedaParams, String> {
    IkedaParams::new(n, k).map_err(|e| e.to_string())
}

fn random_rational(rng: &mut StdRng) -> Rational {
    let num: i64 = rng.gen_range(-10_000..=10_000);
    let den: i64 = rng.gen_range(1..=1_000);
    Rational::new(num.into(), den.into())
}

/// Sign of `a + b√p` via `floor(b √p · 10^60)` from an integer square root.
fn decimal_sign(a: &Rational, b: &Rational, p: u64) -> i8 {
    let scale = BigInt::from(10).pow(60);
    let b2p = b * b * Rational::from_integer(BigInt::from(p) * &scale * &scale);
    let root = (b2p.numer() * b2p.denom()).sqrt();
    let surd = Rational::new(root, b2p.denom().clone());
    let surd = if b.is_negative() { -surd } else { surd };
    let total = a * Rational::from_integer(scale) + surd;
    if total.is_zero() {
        0
    } else if total.is_positive() {
        1
    } else {
        -1
    }
}

fn check_quad_sign() -> Result<(), String> {
    let mut rng = StdRng::seed_from_u64(7);
    for p in primes_up_to(50) {
        for _ in 0..40 {
            let (a, b) = (random_rational(&mut rng), random_rational(&mut rng));
            let x = QuadExt::new(a.clone(), b.clone(), p.into()).map_err(|e| e.to_string())?;
            ensure(x.sign() == decimal_sign(&a, &b, p), || {
                format!("sign mismatch for {x}")
            })?;
        }
    }
    Ok(())
}

fn check_half_powers() -> Result<(), String> {
    for p in [2u64, 3, 5, 7] {
        let pz = BigInt::from(p);
        for h1 in -12..=12 {
            for h2 in -12..=12 {
                let lhs = pow_p_half(&pz, h1)
                    .and_then(|a| a.checked_mul(&pow_p_half(&pz, h2)?))
                    .map_err(|e| e.to_string())?;
                let rhs = pow_p_half(&pz, h1 + h2).map_err(|e| e.to_string())?;
                ensure(lhs == rhs, || format!("p = {p}, h = {h1} + {h2}"))?;
            }
        }
    }
    Ok(())
}

fn check_qbinomial_theorem() -> Result<(), String> {
    (1..=16).try_for_each(|n| verify_qbinomial_theorem(n).map_err(|e| e.to_string()))
}

fn check_qbinomial_symmetry() -> Result<(), String> {
    for n in 0..=16i64 {
        let mut classical = BigInt::one();
        for m in 0..=n {
            let b = q_binomial(n, m).map_err(|e| e.to_string())?;
            let mirrored = q_binomial(n, n - m).map_err(|e| e.to_string())?;
            ensure(b == mirrored, || format!("[{n} {m}] not symmetric"))?;
            ensure(b.coeffs().iter().all(|c| !c.is_negative()), || {
                format!("[{n} {m}] has a negative coefficient")
            })?;
            let at_one = b.eval(&BigInt::one()).map_err(|e| e.to_string())?;
            ensure(at_one == classical, || format!("[{n} {m}] at q = 1"))?;
            classical = classical * (n - m) / (m + 1);
        }
    }
    Ok(())
}

fn check_dickson_identity() -> Result<(), String> {
    let mut rng = StdRng::seed_from_u64(11);
    for i in 0..=12usize {
        for _ in 0..10 {
            let x = random_rational(&mut rng);
            let c = random_rational(&mut rng);
            if x.is_zero() || c.is_zero() {
                continue;
            }
            let d = dickson(i, &c).map_err(|e| e.to_string())?;
            let y = &x + &c / &x;
            let lhs = d.eval(&y).map_err(|e| e.to_string())?;
            let rhs = num_traits::pow(x.clone(), i) + num_traits::pow(&c / &x, i);
            ensure(lhs == rhs, || format!("D_{i} fails at x = {x}, c = {c}"))?;
        }
    }
    Ok(())
}

fn check_delta() -> Result<(), String> {
    let d = delta(300).map_err(|e| e.to_string())?;
    ensure(d.coeff(2) == Some(&BigInt::from(-24)), || "tau(2)".into())?;
    ensure(d.coeff(3) == Some(&BigInt::from(252)), || "tau(3)".into())
}

fn check_eigenforms() -> Result<(), String> {
    for w in SUPPORTED_WEIGHTS {
        let f = eigenform(w, 200).map_err(|e| e.to_string())?;
        if let Some((m, why)) = f.first_violation() {
            return Err(format!("weight {w}, index {m}: {why}"));
        }
    }
    Ok(())
}

fn check_exponents() -> Result<(), String> {
    for n in (2..=8).step_by(2) {
        for k in (n + 2..=20).step_by(2) {
            let Ok(p) = IkedaParams::new(n, k) else {
                continue;
            };
            term_exponents(&p).map_err(|e| e.to_string())?;
            constant_term_exponent(&p).map_err(|e| e.to_string())?;
        }
    }
    Ok(())
}

fn check_routes() -> Result<(), String> {
    let mut rng = StdRng::seed_from_u64(13);
    for (n, k) in DESK_PARAMS {
        let par = params(n, k)?;
        for p in primes_up_to(30) {
            let tilde = build_tilde_gp(&par, p).map_err(|e| e.to_string())?;
            let limit = deligne_limit(&par, p);
            for _ in 0..10 {
                let x = random_in(&mut rng, &limit);
                let s = route_sum(&par, p, &x).map_err(|e| e.to_string())?;
                let f = route_factored(&par, p, &x).map_err(|e| e.to_string())?;
                let r = tilde.eval(&x).map_err(|e| e.to_string())?;
                ensure(s == f && f == r, || {
                    format!("(n, k, p, x) = ({n}, {k}, {p}, {x})")
                })?;
            }
        }
    }
    Ok(())
}

/// `floor(2 p^{(2k-n-1)/2})`, the largest admissible `|a_f(p)|`.
pub fn deligne_limit(params: &IkedaParams, p: u64) -> BigInt {
    let w = params.eigenform_weight() as u64;
    (int_pow(&BigInt::from(p), w - 1) * 4u32).sqrt()
}

fn random_in(rng: &mut StdRng, limit: &BigInt) -> BigInt {
    // 128 random bits reduced into [-limit, limit]
    let raw = BigInt::from(rng.gen::<u128>());
    let span = limit * 2u32 + 1u32;
    raw % span - limit
}

fn check_factorization() -> Result<(), String> {
    for n in (2..=6).step_by(2) {
        for k in (n + 2..=16).step_by(2) {
            let Ok(par) = IkedaParams::new(n, k) else {
                continue;
            };
            for p in primes_up_to(20) {
                let ok = factorization_check(&par, p).map_err(|e| e.to_string())?;
                ensure(ok, || format!("factorization fails at ({n}, {k}, {p})"))?;
                let g = build_g(&par, p).map_err(|e| e.to_string())?;
                ensure(g.is_palindromic(), || {
                    format!("G_p not palindromic at ({n}, {k}, {p})")
                })?;
            }
        }
    }
    Ok(())
}

fn check_saito_kurokawa() -> Result<(), String> {
    for k in [10i64, 12, 14] {
        let par = params(2, k)?;
        for p in primes_up_to(50) {
            let pz = BigInt::from(p);
            let expected = IntPoly::linear(
                int_pow(&pz, (k - 1) as u64) + int_pow(&pz, (k - 2) as u64),
                BigInt::one(),
            );
            let got = build_tilde_gp(&par, p).map_err(|e| e.to_string())?;
            ensure(got == expected, || format!("k = {k}, p = {p}: {got}"))?;
        }
    }
    Ok(())
}

fn check_theorem() -> Result<(), String> {
    for (n, k) in DESK_PARAMS {
        let par = params(n, k)?;
        let f = eigenform(par.eigenform_weight(), 200).map_err(|e| e.to_string())?;
        let reports = verify_range(&par, &f, 200).map_err(|e| e.to_string())?;
        if let Some(r) = reports.iter().find(|r| !r.passed()) {
            return Err(format!("({n}, {k}) fails at p = {}", r.p));
        }
    }
    Ok(())
}

fn check_extremes() -> Result<(), String> {
    for (n, k) in DESK_PARAMS {
        let par = params(n, k)?;
        for p in primes_up_to(30) {
            let limit = deligne_limit(&par, p);
            for x in [-limit.clone(), limit.clone()] {
                let v = route_factored(&par, p, &x).map_err(|e| e.to_string())?;
                ensure(v.is_positive(), || format!("({n}, {k}, {p}) at x = {x}"))?;
                let r = route_reciprocal(&par, p, &x).map_err(|e| e.to_string())?;
                ensure(r == v, || format!("reciprocal route at ({n}, {k}, {p})"))?;
            }
            let (lo, hi) = bounds(&par, p).map_err(|e| e.to_string())?;
            ensure(lo.sign() > 0 && hi.sign() > 0, || {
                format!("bounds at ({n}, {k}, {p})")
            })?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deligne_limit_is_floor() {
        // 2·2^{17/2} = 724.07...
        assert_eq!(
            deligne_limit(&IkedaParams::new(2, 10).unwrap(), 2),
            724.into()
        );
    }

    #[test]
    fn cheap_checks_pass() {
        for check in [check_half_powers, check_qbinomial_symmetry, check_exponents] {
            check().unwrap();
        }
    }
}
