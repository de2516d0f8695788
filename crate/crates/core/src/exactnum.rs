//! Exact scalars: arbitrary-precision integers and rationals, and the real
//! quadratic ring `Q(√p)` for a prime `p` with exact sign determination.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub type Integer = BigInt;
/// Always kept in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("radicand mismatch: sqrt({0}) vs sqrt({1})")]
    RadicandMismatch(Integer, Integer),
    #[error("{0} is not prime")]
    NotPrime(Integer),
    #[error("cannot parse quadratic value {0:?}")]
    Parse(String),
}

/// Trial-division primality test; radicands and sweep primes stay small.
pub fn is_prime(n: &Integer) -> bool {
    if n < &BigInt::from(2) {
        return false;
    }
    if let Some(v) = n.to_u64() {
        return is_prime_u64(v);
    }
    let two = BigInt::from(2);
    if n.is_even() {
        return false;
    }
    let mut d = BigInt::from(3);
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            return false;
        }
        d += &two;
    }
    true
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// All primes `<= limit`, ascending.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

pub fn sign_of_rational(r: &Rational) -> i8 {
    match r.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

/// A real number `rational + surd·√radicand` with a prime radicand.
///
/// Since `√p` is irrational the triple is a canonical representation, so the
/// derived equality is equality of real numbers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadExt {
    rational: Rational,
    surd: Rational,
    radicand: Integer,
}

impl QuadExt {
    pub fn new(rational: Rational, surd: Rational, radicand: Integer) -> Result<Self, ExactError> {
        if !is_prime(&radicand) {
            return Err(ExactError::NotPrime(radicand));
        }
        Ok(Self::new_unchecked(rational, surd, radicand))
    }

    pub(crate) fn new_unchecked(rational: Rational, surd: Rational, radicand: Integer) -> Self {
        QuadExt {
            rational,
            surd,
            radicand,
        }
    }

    pub fn from_rational(value: Rational, radicand: Integer) -> Result<Self, ExactError> {
        Self::new(value, Rational::zero(), radicand)
    }

    pub fn from_integer(value: Integer, radicand: Integer) -> Result<Self, ExactError> {
        Self::from_rational(Rational::from_integer(value), radicand)
    }

    /// Zero in the same ring as `self`.
    pub fn zero_like(&self) -> Self {
        Self::new_unchecked(Rational::zero(), Rational::zero(), self.radicand.clone())
    }

    pub fn one_like(&self) -> Self {
        Self::new_unchecked(Rational::one(), Rational::zero(), self.radicand.clone())
    }

    /// `value` embedded in the same ring as `self`.
    pub fn rational_like(&self, value: Rational) -> Self {
        Self::new_unchecked(value, Rational::zero(), self.radicand.clone())
    }

    pub fn rational_part(&self) -> &Rational {
        &self.rational
    }

    pub fn surd_part(&self) -> &Rational {
        &self.surd
    }

    pub fn radicand(&self) -> &Integer {
        &self.radicand
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.surd.is_zero()
    }

    /// The value as an integer, if the surd part vanishes and the rational
    /// part has denominator one.
    pub fn to_integer(&self) -> Option<Integer> {
        if self.surd.is_zero() && self.rational.is_integer() {
            Some(self.rational.to_integer())
        } else {
            None
        }
    }

    fn check_radicand(&self, other: &Self) -> Result<(), ExactError> {
        if self.radicand != other.radicand {
            return Err(ExactError::RadicandMismatch(
                self.radicand.clone(),
                other.radicand.clone(),
            ));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ExactError> {
        self.check_radicand(other)?;
        Ok(Self::new_unchecked(
            &self.rational + &other.rational,
            &self.surd + &other.surd,
            self.radicand.clone(),
        ))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ExactError> {
        self.check_radicand(other)?;
        Ok(Self::new_unchecked(
            &self.rational - &other.rational,
            &self.surd - &other.surd,
            self.radicand.clone(),
        ))
    }

    /// `(a + b√p)(c + d√p) = (ac + bdp) + (ad + bc)√p`
    pub fn checked_mul(&self, other: &Self) -> Result<Self, ExactError> {
        self.check_radicand(other)?;
        let p = Rational::from_integer(self.radicand.clone());
        let rational = &self.rational * &other.rational + &self.surd * &other.surd * p;
        let surd = &self.rational * &other.surd + &self.surd * &other.rational;
        Ok(Self::new_unchecked(rational, surd, self.radicand.clone()))
    }

    pub fn neg(&self) -> Self {
        Self::new_unchecked(-&self.rational, -&self.surd, self.radicand.clone())
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        Self::new_unchecked(
            &self.rational * factor,
            &self.surd * factor,
            self.radicand.clone(),
        )
    }

    /// Exact sign of the real number, in `{-1, 0, 1}`.
    pub fn sign(&self) -> i8 {
        let sa = sign_of_rational(&self.rational);
        let sb = sign_of_rational(&self.surd);
        if sa == 0 {
            return sb;
        }
        if sb == 0 || sa == sb {
            return sa;
        }
        // Opposite signs: the term with the larger square dominates.
        let a2 = &self.rational * &self.rational;
        let b2p = &self.surd * &self.surd * Rational::from_integer(self.radicand.clone());
        match a2.cmp(&b2p) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            // a² = b²p would make √p rational.
            Ordering::Equal => 0,
        }
    }

    pub fn compare(&self, other: &Self) -> Result<Ordering, ExactError> {
        Ok(self.checked_sub(other)?.sign().cmp(&0))
    }

    /// Decimal rendering truncated toward zero with `digits` fractional
    /// digits. For display only; never used in comparisons.
    pub fn to_decimal(&self, digits: usize) -> String {
        let scale = Rational::from_integer(BigInt::from(10u32).pow(digits as u32));
        let scaled = self.scale(&scale);
        // Integer-sqrt estimate, then exact correction to the floor.
        let s2 = &scaled.surd * &scaled.surd * Rational::from_integer(self.radicand.clone());
        let root = Rational::new((s2.numer() * s2.denom()).sqrt(), s2.denom().clone());
        let root = if scaled.surd.is_negative() {
            -root
        } else {
            root
        };
        let mut floor = (&scaled.rational + root).floor().to_integer();
        let below = |c: &Integer| {
            scaled
                .checked_sub(&scaled.rational_like(Rational::from_integer(c.clone())))
                .expect("same radicand")
                .sign()
        };
        while below(&floor) < 0 {
            floor -= 1;
        }
        while below(&(&floor + 1)) >= 0 {
            floor += 1;
        }
        let truncated = if below(&floor) != 0 && scaled.sign() < 0 {
            floor + 1
        } else {
            floor
        };
        format_fixed(&truncated, digits)
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.rational.to_f64().unwrap_or(f64::NAN);
        let b = self.surd.to_f64().unwrap_or(f64::NAN);
        let p = self.radicand.to_f64().unwrap_or(f64::NAN);
        a + b * p.sqrt()
    }
}

fn format_fixed(scaled: &Integer, digits: usize) -> String {
    let negative = scaled.is_negative();
    let mut s = scaled.abs().to_string();
    if digits == 0 {
        return if negative { format!("-{s}") } else { s };
    }
    if s.len() <= digits {
        s = format!("{}{}", "0".repeat(digits + 1 - s.len()), s);
    }
    let (int_part, frac_part) = s.split_at(s.len() - digits);
    format!(
        "{}{}.{}",
        if negative { "-" } else { "" },
        int_part,
        frac_part
    )
}

fn write_rational(f: &mut fmt::Formatter<'_>, r: &Rational) -> fmt::Result {
    write!(f, "{}/{}", r.numer(), r.denom())
}

/// `R+S*sqrt(P)` with `R` and `S` written as `num/den`.
impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_rational(f, &self.rational)?;
        f.write_str("+")?;
        write_rational(f, &self.surd)?;
        write!(f, "*sqrt({})", self.radicand)
    }
}

fn parse_rational(s: &str) -> Option<Rational> {
    let (n, d) = s.split_once('/')?;
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}

impl FromStr for QuadExt {
    type Err = ExactError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ExactError::Parse(s.to_string());
        let s = s.trim();
        let body = s.strip_suffix(')').ok_or_else(err)?;
        let (head, radicand) = body.rsplit_once("*sqrt(").ok_or_else(err)?;
        let radicand: BigInt = radicand.parse().map_err(|_| err())?;
        // The rational part's numerator may itself carry a leading '-', so
        // split at the first '+' after position 0.
        let split = head[1..].find('+').map(|i| i + 1).ok_or_else(err)?;
        let rational = parse_rational(&head[..split]).ok_or_else(err)?;
        let surd = parse_rational(&head[split + 1..]).ok_or_else(err)?;
        QuadExt::new(rational, surd, radicand)
    }
}

/// `p^(h/2)` as an element of `Q(√p)`.
pub fn pow_p_half(p: &Integer, h: i64) -> Result<QuadExt, ExactError> {
    if !is_prime(p) {
        return Err(ExactError::NotPrime(p.clone()));
    }
    let half = h.div_euclid(2);
    let power = int_pow(p, half.unsigned_abs());
    let magnitude = if half >= 0 {
        Rational::from_integer(power)
    } else {
        Rational::new(BigInt::one(), power)
    };
    Ok(if h.rem_euclid(2) == 0 {
        QuadExt::new_unchecked(magnitude, Rational::zero(), p.clone())
    } else {
        QuadExt::new_unchecked(Rational::zero(), magnitude, p.clone())
    })
}

pub fn int_pow(base: &Integer, exp: u64) -> Integer {
    num_traits::pow(base.clone(), exp as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64, p: i64) -> QuadExt {
        QuadExt::new(
            Rational::from_integer(a.into()),
            Rational::from_integer(b.into()),
            p.into(),
        )
        .unwrap()
    }

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn square_of_one_plus_sqrt2() {
        let x = q(1, 1, 2);
        assert_eq!(x.checked_mul(&x).unwrap(), q(3, 2, 2));
    }

    #[test]
    fn identity_and_inverse() {
        let x = q(3, 2, 2);
        assert_eq!(x.checked_mul(&x.one_like()).unwrap(), x);
        assert_eq!(x.checked_sub(&x).unwrap(), q(0, 0, 2));
    }

    #[test]
    fn radicand_mismatch_is_an_error() {
        let err = q(1, 1, 2).checked_add(&q(1, 1, 3)).unwrap_err();
        assert!(matches!(err, ExactError::RadicandMismatch(_, _)));
    }

    #[test]
    fn composite_radicand_rejected() {
        assert!(QuadExt::from_integer(1.into(), 4.into()).is_err());
    }

    #[test]
    fn signs() {
        assert_eq!(q(1, 0, 2).sign(), 1);
        assert_eq!(q(-3, 2, 2).sign(), -1);
        assert_eq!(q(-2, 3, 2).sign(), 1);
        assert_eq!(q(0, 0, 5).sign(), 0);
        assert_eq!(q(0, -1, 5).sign(), -1);
    }

    #[test]
    fn half_powers() {
        let two = BigInt::from(2);
        assert_eq!(pow_p_half(&two, 4).unwrap(), q(4, 0, 2));
        assert_eq!(pow_p_half(&two, 3).unwrap(), q(0, 2, 2));
        let three = BigInt::from(3);
        let v = pow_p_half(&three, -1).unwrap();
        assert_eq!(v.rational_part(), &rat(0, 1));
        assert_eq!(v.surd_part(), &rat(1, 3));
        assert_eq!(pow_p_half(&three, -4).unwrap().rational_part(), &rat(1, 9));
        assert!(pow_p_half(&BigInt::from(9), 1).is_err());
    }

    #[test]
    fn display_round_trip() {
        let x = QuadExt::new(rat(-7, 3), rat(-512, 1), 2.into()).unwrap();
        let s = x.to_string();
        assert_eq!(s, "-7/3+-512/1*sqrt(2)");
        assert_eq!(s.parse::<QuadExt>().unwrap(), x);
        assert!("1/1+2/1*sqrt(4)".parse::<QuadExt>().is_err());
        assert!("garbage".parse::<QuadExt>().is_err());
    }

    #[test]
    fn decimal_rendering() {
        // 768 - 512√2 = 43.92265606497533501353...
        assert_eq!(q(768, -512, 2).to_decimal(10), "43.9226560649");
        assert_eq!(q(0, -1, 2).to_decimal(5), "-1.41421");
        assert_eq!(q(0, 0, 2).to_decimal(3), "0.000");
        assert_eq!(q(-1, 0, 2).to_decimal(0), "-1");
    }

    #[test]
    fn prime_sieve() {
        assert_eq!(primes_up_to(20), vec![2, 3, 5, 7, 11, 13, 17, 19]);
        assert!(primes_up_to(1).is_empty());
        assert!(is_prime(&BigInt::from(1_000_003u64)));
    }
}
