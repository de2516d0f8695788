//! Fourier coefficients of level-one modular forms: Bernoulli numbers,
//! Eisenstein series, the discriminant form Δ (built two ways), the
//! normalized eigenforms of the one-dimensional cusp spaces, and loading of
//! externally computed coefficient tables.

use std::collections::BTreeMap;
use std::path::Path;

use num_integer::Integer as _;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactnum::{int_pow, is_prime_u64, Integer, Rational};

/// Weights whose level-one cusp space is one-dimensional.
pub const SUPPORTED_WEIGHTS: [u32; 6] = [12, 16, 18, 20, 22, 26];

#[derive(Debug, Error)]
pub enum FormsError {
    #[error("weight {0} has no built-in eigenform (supported: 12, 16, 18, 20, 22, 26); supply a coefficient table with --eigenform")]
    UnsupportedWeight(u32),
    #[error("invalid Eisenstein weight {0}: must be even and >= 4")]
    InvalidEisensteinWeight(u32),
    #[error("Eisenstein series E_{weight} has a non-integral coefficient at q^{index}")]
    NonIntegral { weight: u32, index: usize },
    #[error("the eta-product and Eisenstein constructions of Delta disagree at q^{0}")]
    DeltaMismatch(usize),
    #[error("index {p} is beyond the series truncation {truncation}")]
    BeyondTruncation { p: u64, truncation: usize },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("Deligne bound violated at p = {p}: a(p)^2 > 4 p^(w-1)")]
    DeligneViolation { p: u64 },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("coefficient table rejected at index {index}: {reason}")]
    Validation { index: u64, reason: String },
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

/// `a(0), ..., a(N)` of a modular form of the given weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FourierSeries {
    weight: u32,
    coeffs: Vec<Integer>,
}

impl FourierSeries {
    pub fn new(weight: u32, coeffs: Vec<Integer>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least a(0)");
        FourierSeries { weight, coeffs }
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    /// Largest index `N` with a known coefficient.
    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Integer] {
        &self.coeffs
    }

    pub fn coeff(&self, m: usize) -> Option<&Integer> {
        self.coeffs.get(m)
    }

    /// Truncated product; the weights add.
    pub fn mul(&self, other: &FourierSeries) -> FourierSeries {
        let n = self.truncation().min(other.truncation());
        FourierSeries::new(
            self.weight + other.weight,
            convolve(&self.coeffs[..=n], &other.coeffs[..=n], n),
        )
    }

    /// First index violating normalization, multiplicativity, the Hecke
    /// recursion at prime powers, or the Deligne bound, if any.
    pub fn first_violation(&self) -> Option<(u64, String)> {
        let lookup = |m: u64| self.coeffs.get(m as usize);
        first_violation(self.weight, lookup, 1..=self.truncation() as u64)
    }
}

/// Truncated Cauchy product up to `q^n`.
fn convolve(a: &[Integer], b: &[Integer], n: usize) -> Vec<Integer> {
    let mut out = vec![Integer::zero(); n + 1];
    for (i, x) in a.iter().enumerate().take(n + 1) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n + 1 - i) {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// `B_m` with `B_1 = -1/2`, from `Σ_{j=0}^{m} C(m+1, j) B_j = 0`.
pub fn bernoulli(m: usize) -> Rational {
    let mut b: Vec<Rational> = Vec::with_capacity(m + 1);
    b.push(Rational::one());
    for k in 1..=m {
        // binomial(k+1, j) for j = 0..k
        let mut binom = Integer::one();
        let mut sum = Rational::zero();
        for (j, bj) in b.iter().enumerate() {
            sum += bj * Rational::from_integer(binom.clone());
            binom = binom * Integer::from(k + 1 - j) / Integer::from(j + 1);
        }
        b.push(-sum / Rational::from_integer(Integer::from(k + 1)));
    }
    b.pop().expect("nonempty")
}

/// `σ_e(m)` for `m = 0..=n` (entry 0 unused).
fn divisor_power_sums(e: u32, n: usize) -> Vec<Integer> {
    let mut sigma = vec![Integer::zero(); n + 1];
    for d in 1..=n {
        let dp = int_pow(&Integer::from(d), e as u64);
        for m in (d..=n).step_by(d) {
            sigma[m] += &dp;
        }
    }
    sigma
}

/// `E_w = 1 - (2w / B_w) Σ σ_{w-1}(m) q^m`, up to `q^n`.
pub fn eisenstein(w: u32, n: usize) -> Result<FourierSeries, FormsError> {
    if w < 4 || w % 2 == 1 {
        return Err(FormsError::InvalidEisensteinWeight(w));
    }
    let factor = -Rational::from_integer(Integer::from(2 * w)) / bernoulli(w as usize);
    let sigma = divisor_power_sums(w - 1, n);
    let mut coeffs = Vec::with_capacity(n + 1);
    coeffs.push(Integer::one());
    for (m, s) in sigma.iter().enumerate().skip(1) {
        let c = &factor * Rational::from_integer(s.clone());
        if !c.is_integer() {
            return Err(FormsError::NonIntegral {
                weight: w,
                index: m,
            });
        }
        coeffs.push(c.to_integer());
    }
    Ok(FourierSeries::new(w, coeffs))
}

/// `∏ (1 - q^m) = Σ_j (-1)^j q^{j(3j-1)/2}` over all integers `j`, up to `q^n`.
fn euler_product(n: usize) -> Vec<Integer> {
    let mut out = vec![Integer::zero(); n + 1];
    out[0] = Integer::one();
    for j in 1i64.. {
        let a = (j * (3 * j - 1) / 2) as usize;
        let b = (j * (3 * j + 1) / 2) as usize;
        if a > n {
            break;
        }
        let sign = if j % 2 == 0 { 1 } else { -1 };
        out[a] += sign;
        if b <= n {
            out[b] += sign;
        }
    }
    out
}

/// Δ up to `q^n` as `q · ∏ (1 - q^m)^24`, using the pentagonal-number
/// expansion of the product.
pub fn delta_from_eta(n: usize) -> Vec<Integer> {
    let deg = n.saturating_sub(1);
    let p1 = euler_product(deg);
    let p2 = convolve(&p1, &p1, deg);
    let p4 = convolve(&p2, &p2, deg);
    let p8 = convolve(&p4, &p4, deg);
    let p16 = convolve(&p8, &p8, deg);
    let p24 = convolve(&p16, &p8, deg);
    let mut out = Vec::with_capacity(n + 1);
    out.push(Integer::zero());
    out.extend(p24.into_iter().take(n));
    out
}

/// Δ up to `q^n` as `(E_4^3 - E_6^2) / 1728`.
pub fn delta_from_eisenstein(n: usize) -> Result<Vec<Integer>, FormsError> {
    let e4 = eisenstein(4, n)?;
    let e6 = eisenstein(6, n)?;
    let e4_cubed = e4.mul(&e4).mul(&e4);
    let e6_squared = e6.mul(&e6);
    let d = Integer::from(1728);
    e4_cubed
        .coeffs()
        .iter()
        .zip(e6_squared.coeffs())
        .enumerate()
        .map(|(m, (a, b))| {
            let (q, r) = (a - b).div_rem(&d);
            if r.is_zero() {
                Ok(q)
            } else {
                Err(FormsError::NonIntegral {
                    weight: 12,
                    index: m,
                })
            }
        })
        .collect()
}

/// The discriminant form Δ up to `q^n`, cross-checked between the eta
/// product and `(E_4^3 - E_6^2) / 1728`.
pub fn delta(n: usize) -> Result<FourierSeries, FormsError> {
    let n = n.max(1);
    let eta = delta_from_eta(n);
    let eis = delta_from_eisenstein(n)?;
    if let Some(m) = (0..=n).find(|&m| eta[m] != eis[m]) {
        return Err(FormsError::DeltaMismatch(m));
    }
    Ok(FourierSeries::new(12, eta))
}

/// The normalized cusp eigenform of weight `w`, up to `q^n`.
pub fn eigenform(w: u32, n: usize) -> Result<FourierSeries, FormsError> {
    let (e4_pow, e6_pow) = match w {
        12 => (0, 0),
        16 => (1, 0),
        18 => (0, 1),
        20 => (2, 0),
        22 => (1, 1),
        26 => (2, 1),
        _ => return Err(FormsError::UnsupportedWeight(w)),
    };
    let mut f = delta(n)?;
    if e4_pow > 0 {
        let e4 = eisenstein(4, f.truncation())?;
        for _ in 0..e4_pow {
            f = f.mul(&e4);
        }
    }
    if e6_pow > 0 {
        f = f.mul(&eisenstein(6, f.truncation())?);
    }
    Ok(f)
}

pub fn deligne_holds(a: &Integer, p: u64, weight: u32) -> bool {
    let bound = int_pow(&Integer::from(p), (weight - 1) as u64) * 4;
    a * a <= bound
}

/// `a_f(p)` for a normalized eigenform, checked against the Deligne bound.
pub fn hecke_eigenvalue_prime(f: &FourierSeries, p: u64) -> Result<Integer, FormsError> {
    if !is_prime_u64(p) {
        return Err(FormsError::NotPrime(p));
    }
    let a = f.coeff(p as usize).ok_or(FormsError::BeyondTruncation {
        p,
        truncation: f.truncation(),
    })?;
    if !deligne_holds(a, p, f.weight()) {
        return Err(FormsError::DeligneViolation { p });
    }
    Ok(a.clone())
}

/// `m = q^e · rest` with `q` the smallest prime factor and `gcd(q, rest) = 1`.
fn split_smallest_prime_power(m: u64) -> (u64, u32, u64) {
    let mut q = 2;
    while q * q <= m && !m.is_multiple_of(q) {
        q += 1;
    }
    if !m.is_multiple_of(q) {
        q = m;
    }
    let (mut e, mut rest) = (0, m);
    while rest % q == 0 {
        rest /= q;
        e += 1;
    }
    (q, e, rest)
}

fn first_violation<'a>(
    weight: u32,
    lookup: impl Fn(u64) -> Option<&'a Integer>,
    indices: impl Iterator<Item = u64>,
) -> Option<(u64, String)> {
    for m in indices {
        let Some(a) = lookup(m) else { continue };
        if m == 1 {
            if !a.is_one() {
                return Some((1, format!("a(1) = {a}, expected 1")));
            }
            continue;
        }
        let (q, e, rest) = split_smallest_prime_power(m);
        if rest > 1 {
            if let (Some(x), Some(y)) = (lookup(m / rest), lookup(rest)) {
                if *a != x * y {
                    return Some((m, format!("a({m}) != a({}) * a({rest})", m / rest)));
                }
            }
        } else if e == 1 {
            if !deligne_holds(a, q, weight) {
                return Some((m, format!("a({m})^2 exceeds the Deligne bound")));
            }
        } else if let (Some(ap), Some(prev), Some(prev2)) =
            (lookup(q), lookup(m / q), lookup(m / (q * q)))
        {
            let pw = int_pow(&Integer::from(q), (weight - 1) as u64);
            if *a != ap * prev - pw * prev2 {
                return Some((m, format!("Hecke relation fails at a({m})")));
            }
        }
    }
    None
}

/// Parses and validates a coefficient table (`m a(m)` per line, `#`
/// comments, strictly increasing `m` from 1).
pub fn parse_eigenform(text: &str, weight: u32) -> Result<FourierSeries, FormsError> {
    if weight == 0 || weight % 2 == 1 {
        return Err(FormsError::Validation {
            index: 0,
            reason: format!("weight {weight} must be even and positive"),
        });
    }
    let mut entries: BTreeMap<u64, Integer> = BTreeMap::new();
    let mut last = 0u64;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parse_err = |message: String| FormsError::Parse {
            line: lineno + 1,
            message,
        };
        let mut fields = line.split_whitespace();
        let (Some(m), Some(a), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(parse_err(format!("expected \"m a(m)\", got {line:?}")));
        };
        let m: u64 = m
            .parse()
            .map_err(|_| parse_err(format!("bad index {m:?}")))?;
        let a: Integer = a
            .parse()
            .map_err(|_| parse_err(format!("bad coefficient {a:?}")))?;
        if entries.is_empty() && m != 1 {
            return Err(parse_err(format!(
                "table must start at m = 1, found m = {m}"
            )));
        }
        if m <= last {
            return Err(parse_err(format!("index {m} is not strictly increasing")));
        }
        last = m;
        entries.insert(m, a);
    }
    if entries.is_empty() {
        return Err(FormsError::Validation {
            index: 1,
            reason: "empty table".into(),
        });
    }
    let max_prime = entries
        .keys()
        .copied()
        .filter(|&m| is_prime_u64(m))
        .max()
        .unwrap_or(1);
    if let Some(missing) = (1..=max_prime).find(|m| !entries.contains_key(m)) {
        return Err(FormsError::Validation {
            index: missing,
            reason: format!("missing coefficient (primes up to {max_prime} are listed)"),
        });
    }
    if let Some((index, reason)) =
        first_violation(weight, |m| entries.get(&m), entries.keys().copied())
    {
        return Err(FormsError::Validation { index, reason });
    }
    // Keep the contiguous prefix; every listed prime lies inside it.
    let mut coeffs = vec![Integer::zero()];
    for (m, a) in &entries {
        if *m as usize != coeffs.len() {
            break;
        }
        coeffs.push(a.clone());
    }
    Ok(FourierSeries::new(weight, coeffs))
}

pub fn load_eigenform(path: impl AsRef<Path>, weight: u32) -> Result<FourierSeries, FormsError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| FormsError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_eigenform(&text, weight)
}

/// Renders a series in the table format accepted by [`parse_eigenform`].
pub fn format_table(f: &FourierSeries, up_to: usize) -> String {
    let mut out = String::new();
    for m in 1..=up_to.min(f.truncation()) {
        out.push_str(&format!("{m} {}\n", f.coeffs()[m]));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn bernoulli_numbers() {
        assert_eq!(bernoulli(0), r(1, 1));
        assert_eq!(bernoulli(1), r(-1, 2));
        assert_eq!(bernoulli(2), r(1, 6));
        assert_eq!(bernoulli(4), r(-1, 30));
        assert_eq!(bernoulli(12), r(-691, 2730));
        assert_eq!(bernoulli(7), r(0, 1));
    }

    #[test]
    fn eisenstein_e4() {
        let e4 = eisenstein(4, 3).unwrap();
        assert_eq!(
            e4.coeffs(),
            &[1.into(), 240.into(), 2160.into(), 6720.into()]
        );
        let e6 = eisenstein(6, 2).unwrap();
        assert_eq!(e6.coeffs(), &[1.into(), (-504).into(), (-16632).into()]);
    }

    #[test]
    fn eisenstein_rejects_bad_weights() {
        assert!(matches!(
            eisenstein(3, 5),
            Err(FormsError::InvalidEisensteinWeight(3))
        ));
        assert!(matches!(
            eisenstein(2, 5),
            Err(FormsError::InvalidEisensteinWeight(2))
        ));
        assert!(matches!(
            eisenstein(12, 5),
            Err(FormsError::NonIntegral {
                weight: 12,
                index: 1
            })
        ));
    }

    #[test]
    fn delta_spot_values() {
        let d = delta(10).unwrap();
        let expect = [
            0, 1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920,
        ];
        assert_eq!(d.coeffs(), expect.map(Integer::from).as_slice());
    }

    #[test]
    fn eigenform_spot_values() {
        assert_eq!(eigenform(16, 5).unwrap().coeff(2), Some(&216.into()));
        assert_eq!(eigenform(18, 5).unwrap().coeff(2), Some(&(-528).into()));
        assert_eq!(eigenform(12, 5).unwrap().coeff(2), Some(&(-24).into()));
        assert!(matches!(
            eigenform(14, 5),
            Err(FormsError::UnsupportedWeight(14))
        ));
        for w in SUPPORTED_WEIGHTS {
            let f = eigenform(w, 60).unwrap();
            assert_eq!(f.weight(), w);
            assert_eq!(f.coeff(0), Some(&Integer::zero()));
            assert_eq!(f.coeff(1), Some(&Integer::one()));
            assert_eq!(f.first_violation(), None, "weight {w}");
        }
    }

    #[test]
    fn prime_eigenvalues() {
        let d = delta(10).unwrap();
        assert_eq!(hecke_eigenvalue_prime(&d, 2).unwrap(), (-24).into());
        assert!(deligne_holds(&(-24).into(), 2, 12));
        assert!(matches!(
            hecke_eigenvalue_prime(&d, 11),
            Err(FormsError::BeyondTruncation { p: 11, .. })
        ));
        assert!(matches!(
            hecke_eigenvalue_prime(&d, 4),
            Err(FormsError::NotPrime(4))
        ));
        let bad = FourierSeries::new(12, vec![0.into(), 1.into(), 91.into()]);
        assert!(matches!(
            hecke_eigenvalue_prime(&bad, 2),
            Err(FormsError::DeligneViolation { p: 2 })
        ));
        assert_eq!(
            hecke_eigenvalue_prime(&eigenform(18, 3).unwrap(), 2).unwrap(),
            (-528).into()
        );
    }

    #[test]
    fn table_accepted() {
        let f = parse_eigenform("# Delta\n1 1\n2 -24\n3 252\n4 -1472\n", 12).unwrap();
        assert_eq!(f.truncation(), 4);
        assert_eq!(f.coeff(4), Some(&(-1472).into()));
    }

    #[test]
    fn table_rejections() {
        let idx = |text: &str| match parse_eigenform(text, 12) {
            Err(FormsError::Validation { index, .. }) => Some(index),
            Err(FormsError::Parse { .. }) => Some(0),
            _ => None,
        };
        assert_eq!(idx("1 2\n2 -24\n"), Some(1));
        assert_eq!(idx("1 1\n2 -24\n3 252\n4 -1472\n5 4830\n6 6048\n"), Some(6));
        assert_eq!(idx("1 1\n2 -24\n3 252\n4 -1000\n"), Some(4));
        assert_eq!(idx("1 1\n2 100\n"), Some(2));
        assert_eq!(idx("1 1\n3 252\n"), Some(2));
        assert_eq!(idx("2 -24\n"), Some(0));
        assert_eq!(idx("1 1\n1 1\n"), Some(0));
        assert_eq!(idx("1 1 1\n"), Some(0));
        assert_eq!(idx("1 x\n"), Some(0));
    }

    #[test]
    fn table_round_trip_via_format() {
        let d = delta(30).unwrap();
        let back = parse_eigenform(&format_table(&d, 30), 12).unwrap();
        assert_eq!(back, d);
    }
}
