//! Dense univariate polynomials over exact coefficient rings, the
//! reciprocal (Dickson-type) transform, and palindrome detection.

use std::fmt;

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exactnum::{ExactError, Integer, QuadExt, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("product of an empty list of factors")]
    EmptyProduct,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("polynomial division is not exact over the integers")]
    InexactDivision,
}

/// Coefficient ring for [`Poly`]. Arithmetic is fallible because `QuadExt`
/// values over different radicands do not combine.
pub trait Coeff: Clone + PartialEq + fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn vanishes(&self) -> bool;
    fn try_add(&self, other: &Self) -> Result<Self, ExactError>;
    fn try_sub(&self, other: &Self) -> Result<Self, ExactError>;
    fn try_mul(&self, other: &Self) -> Result<Self, ExactError>;
}

impl Coeff for Integer {
    fn zero_like(&self) -> Self {
        Integer::zero()
    }
    fn one_like(&self) -> Self {
        Integer::one()
    }
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn try_add(&self, other: &Self) -> Result<Self, ExactError> {
        Ok(self + other)
    }
    fn try_sub(&self, other: &Self) -> Result<Self, ExactError> {
        Ok(self - other)
    }
    fn try_mul(&self, other: &Self) -> Result<Self, ExactError> {
        Ok(self * other)
    }
}

impl Coeff for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn try_add(&self, other: &Self) -> Result<Self, ExactError> {
        Ok(self + other)
    }
    fn try_sub(&self, other: &Self) -> Result<Self, ExactError> {
        Ok(self - other)
    }
    fn try_mul(&self, other: &Self) -> Result<Self, ExactError> {
        Ok(self * other)
    }
}

impl Coeff for QuadExt {
    fn zero_like(&self) -> Self {
        QuadExt::zero_like(self)
    }
    fn one_like(&self) -> Self {
        QuadExt::one_like(self)
    }
    fn vanishes(&self) -> bool {
        self.is_zero()
    }
    fn try_add(&self, other: &Self) -> Result<Self, ExactError> {
        self.checked_add(other)
    }
    fn try_sub(&self, other: &Self) -> Result<Self, ExactError> {
        self.checked_sub(other)
    }
    fn try_mul(&self, other: &Self) -> Result<Self, ExactError> {
        self.checked_mul(other)
    }
}

/// Embedding of a coefficient domain `T` into `Self`. `like` supplies the
/// target ring (the radicand, for `QuadExt`).
pub trait Embed<T>: Coeff {
    fn embed(value: &T, like: &Self) -> Self;
}

impl<T: Coeff> Embed<T> for T {
    fn embed(value: &T, _like: &Self) -> Self {
        value.clone()
    }
}

impl Embed<Integer> for Rational {
    fn embed(value: &Integer, _like: &Self) -> Self {
        Rational::from_integer(value.clone())
    }
}

impl Embed<Integer> for QuadExt {
    fn embed(value: &Integer, like: &Self) -> Self {
        like.rational_like(Rational::from_integer(value.clone()))
    }
}

impl Embed<Rational> for QuadExt {
    fn embed(value: &Rational, like: &Self) -> Self {
        like.rational_like(value.clone())
    }
}

/// Dense polynomial; `coeffs[i]` multiplies `x^i`. Trailing zeros are
/// trimmed, so the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

pub type IntPoly = Poly<Integer>;
pub type RatPoly = Poly<Rational>;
/// Coefficients all share one radicand; mixing is rejected by the checked
/// arithmetic.
pub type QuadPoly = Poly<QuadExt>;

impl<T: Coeff> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(Coeff::vanishes) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// `c0 + c1·x`
    pub fn linear(c0: T, c1: T) -> Self {
        Self::new(vec![c0, c1])
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    /// Coefficient of `x^i`, or `None` past the degree.
    pub fn coeff(&self, i: usize) -> Option<&T> {
        self.coeffs.get(i)
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| *c == c.one_like())
    }

    /// True iff the coefficient sequence reads the same backwards.
    pub fn is_palindromic(&self) -> bool {
        let n = self.coeffs.len();
        (0..n / 2).all(|i| self.coeffs[i] == self.coeffs[n - 1 - i])
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ExactError> {
        self.zip_with(other, T::try_add)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, ExactError> {
        self.zip_with(other, T::try_sub)
    }

    fn zip_with(
        &self,
        other: &Self,
        op: impl Fn(&T, &T) -> Result<T, ExactError>,
    ) -> Result<Self, ExactError> {
        let Some(like) = self.coeffs.first().or(other.coeffs.first()) else {
            return Ok(Self::zero());
        };
        let zero = like.zero_like();
        let n = self.coeffs.len().max(other.coeffs.len());
        let out = (0..n)
            .map(|i| {
                op(
                    self.coeffs.get(i).unwrap_or(&zero),
                    other.coeffs.get(i).unwrap_or(&zero),
                )
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::new(out))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, ExactError> {
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero());
        }
        let zero = self.coeffs[0].zero_like();
        let mut out = vec![zero; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].try_add(&a.try_mul(b)?)?;
            }
        }
        Ok(Self::new(out))
    }

    pub fn try_scale(&self, factor: &T) -> Result<Self, ExactError> {
        let out = self
            .coeffs
            .iter()
            .map(|c| c.try_mul(factor))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::new(out))
    }

    /// Multiplication by `x^shift`.
    pub fn shift(&self, shift: usize) -> Self {
        let Some(first) = self.coeffs.first() else {
            return Self::zero();
        };
        let mut out = vec![first.zero_like(); shift];
        out.extend(self.coeffs.iter().cloned());
        Self::new(out)
    }

    /// Horner evaluation at a point of the coefficient domain.
    pub fn eval(&self, x: &T) -> Result<T, ExactError> {
        self.eval_at(x)
    }

    /// Horner evaluation at a point of any domain the coefficients embed into.
    pub fn eval_at<U: Embed<T>>(&self, x: &U) -> Result<U, ExactError> {
        let mut acc = x.zero_like();
        for c in self.coeffs.iter().rev() {
            acc = acc.try_mul(x)?.try_add(&U::embed(c, x))?;
        }
        Ok(acc)
    }

    /// The same polynomial with coefficients embedded in another ring.
    pub fn lift<U: Embed<T>>(&self, like: &U) -> Poly<U> {
        Poly::new(self.coeffs.iter().map(|c| U::embed(c, like)).collect())
    }
}

impl IntPoly {
    /// The monomial `x^n`.
    pub fn monomial(n: usize) -> Self {
        let mut c = vec![Integer::zero(); n + 1];
        c[n] = Integer::one();
        Poly::new(c)
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| Integer::from(c)).collect())
    }

    /// Exact quotient over `Z[x]`; a nonzero remainder or a non-integral
    /// quotient coefficient is an error.
    pub fn div_exact(&self, divisor: &IntPoly) -> Result<IntPoly, PolyError> {
        let d_deg = divisor.degree().ok_or(PolyError::DivisionByZero)?;
        let Some(n_deg) = self.degree() else {
            return Ok(IntPoly::zero());
        };
        if n_deg < d_deg {
            return Err(PolyError::InexactDivision);
        }
        let lead = &divisor.coeffs[d_deg];
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Integer::zero(); n_deg - d_deg + 1];
        for i in (0..=n_deg - d_deg).rev() {
            let top = &rem[i + d_deg];
            let (q, r) = top.div_rem(lead);
            if !Zero::is_zero(&r) {
                return Err(PolyError::InexactDivision);
            }
            if !Zero::is_zero(&q) {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] -= &q * dc;
                }
            }
            quot[i] = q;
        }
        if rem.iter().any(|c| !Zero::is_zero(c)) {
            return Err(PolyError::InexactDivision);
        }
        Ok(Poly::new(quot))
    }

    /// Ascending-order rendering such as `1 + q + 2q^2 - q^3`.
    pub fn display_in(&self, var: &str) -> String {
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if Zero::is_zero(c) {
                continue;
            }
            let mag = c.abs();
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            let mag_str = if i > 0 && mag.is_one() {
                String::new()
            } else {
                mag.to_string()
            };
            out.push_str(&mag_str);
            match i {
                0 => {}
                1 => out.push_str(var),
                _ => out.push_str(&format!("{var}^{i}")),
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl std::ops::Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        self.try_add(rhs).expect("integer arithmetic is total")
    }
}

impl std::ops::Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        self.try_sub(rhs).expect("integer arithmetic is total")
    }
}

impl std::ops::Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        self.try_mul(rhs).expect("integer arithmetic is total")
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("x"))
    }
}

/// The polynomial `D_i` with `D_i(x + c/x) = x^i + (c/x)^i`, from the
/// recurrence `D_0 = 2`, `D_1 = y`, `D_i = y·D_{i-1} - c·D_{i-2}`.
pub fn dickson<T: Coeff>(i: usize, c: &T) -> Result<Poly<T>, ExactError> {
    let zero = c.zero_like();
    let one = c.one_like();
    let two = Poly::constant(one.try_add(&one)?);
    if i == 0 {
        return Ok(two);
    }
    let y = Poly::linear(zero, one);
    let (mut prev, mut cur) = (two, y.clone());
    for _ in 2..=i {
        let next = y.try_mul(&cur)?.try_sub(&prev.try_scale(c)?)?;
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(cur)
}

pub fn expand_product<T: Coeff>(factors: &[Poly<T>]) -> Result<Poly<T>, PolyError> {
    let (first, rest) = factors.split_first().ok_or(PolyError::EmptyProduct)?;
    rest.iter()
        .try_fold(first.clone(), |acc, f| acc.try_mul(f))
        .map_err(PolyError::from)
}

pub fn eval_poly<T: Coeff, U: Embed<T>>(poly: &Poly<T>, point: &U) -> Result<U, ExactError> {
    poly.eval_at(point)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn ip(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    fn quad(a: i64, b: i64, p: i64) -> QuadExt {
        QuadExt::new(
            Rational::from_integer(a.into()),
            Rational::from_integer(b.into()),
            p.into(),
        )
        .unwrap()
    }

    #[test]
    fn dickson_small_orders() {
        let c = BigInt::from(3);
        assert_eq!(dickson(0, &c).unwrap(), ip(&[2]));
        assert_eq!(dickson(1, &c).unwrap(), ip(&[0, 1]));
        assert_eq!(dickson(2, &c).unwrap(), ip(&[-6, 0, 1]));
        assert_eq!(dickson(3, &c).unwrap(), ip(&[0, -9, 0, 1]));
        assert_eq!(
            dickson(2, &c).unwrap().eval(&BigInt::from(5)).unwrap(),
            BigInt::from(19)
        );
    }

    #[test]
    fn dickson_over_quadratic_ring() {
        // c = √2: D_2 = y² - 2√2
        let c = quad(0, 1, 2);
        let d2 = dickson(2, &c).unwrap();
        assert_eq!(d2.coeffs(), &[quad(0, -2, 2), quad(0, 0, 2), quad(1, 0, 2)]);
    }

    #[test]
    fn palindromes() {
        assert!(ip(&[1, 3, 1]).is_palindromic());
        assert!(!ip(&[1, 2]).is_palindromic());
        assert!(IntPoly::zero().is_palindromic());
    }

    #[test]
    fn products() {
        assert_eq!(
            expand_product(&[ip(&[1, 1]), ip(&[2, 1])]).unwrap(),
            ip(&[2, 3, 1])
        );
        assert_eq!(
            expand_product(&[ip(&[144, 1]), ip(&[96, 1])]).unwrap(),
            ip(&[13824, 240, 1])
        );
        assert_eq!(expand_product(&[ip(&[7, 1])]).unwrap(), ip(&[7, 1]));
        assert_eq!(
            expand_product::<Integer>(&[]).unwrap_err(),
            PolyError::EmptyProduct
        );
    }

    #[test]
    fn evaluation_across_domains() {
        let p = ip(&[4, -1, 2]);
        assert_eq!(p.eval(&BigInt::zero()).unwrap(), BigInt::from(4));
        let half = Rational::new(1.into(), 2.into());
        assert_eq!(p.eval_at(&half).unwrap(), Rational::from_integer(4.into()));
        // (1 + √2) + x at x = 1
        let qp = Poly::new(vec![quad(1, 1, 2), quad(1, 0, 2)]);
        assert_eq!(qp.eval(&quad(1, 0, 2)).unwrap(), quad(2, 1, 2));
        assert!(qp.eval(&quad(1, 0, 3)).is_err());
    }

    #[test]
    fn exact_division() {
        let a = ip(&[1, 1]);
        let b = ip(&[1, 1, 1]);
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&b).unwrap(), a);
        assert_eq!(
            prod.div_exact(&ip(&[1, 2])),
            Err(PolyError::InexactDivision)
        );
        assert_eq!(ip(&[2, 4]).div_exact(&ip(&[1, 2])).unwrap(), ip(&[2]));
        assert_eq!(
            a.div_exact(&IntPoly::zero()),
            Err(PolyError::DivisionByZero)
        );
    }

    #[test]
    fn rendering() {
        assert_eq!(
            ip(&[1, 1, 2, 1, 1]).display_in("q"),
            "1 + q + 2q^2 + q^3 + q^4"
        );
        assert_eq!(ip(&[0, -1, 0, 3]).to_string(), "-x + 3x^3");
        assert_eq!(IntPoly::zero().to_string(), "0");
    }
}
