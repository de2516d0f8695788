//! q-integers, q-factorials and Gaussian binomial coefficients as exact
//! polynomials in `q`, and the expansion of `∏_{i<n} (1 + q^i x)`.

use num_traits::One;
use thiserror::Error;

use crate::exactnum::Integer;
use crate::polyalg::{IntPoly, PolyError};

/// Polynomial in `q` with integer coefficients.
pub type QPoly = IntPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QSeriesError {
    #[error("q-integer of negative argument {0} is not supported")]
    NegativeArgument(i64),
    #[error("q-binomial [{n} choose {m}] requires 0 <= m <= n")]
    OutOfRange { n: i64, m: i64 },
    #[error("q-binomial [{n} choose {m}] is not a polynomial over Z: {source}")]
    NotIntegral { n: i64, m: i64, source: PolyError },
    #[error("q-binomial theorem fails for n = {n} at x^{j}")]
    IdentityViolation { n: usize, j: usize },
}

/// `(n)_q = 1 + q + ... + q^(n-1)`; `(0)_q = 0`.
pub fn q_int(n: i64) -> Result<QPoly, QSeriesError> {
    if n < 0 {
        return Err(QSeriesError::NegativeArgument(n));
    }
    Ok(QPoly::new(vec![Integer::one(); n as usize]))
}

/// `(n)_q! = (n)_q (n-1)_q ... (1)_q`; `(0)_q! = 1`.
pub fn q_factorial(n: i64) -> Result<QPoly, QSeriesError> {
    if n < 0 {
        return Err(QSeriesError::NegativeArgument(n));
    }
    let mut acc = QPoly::constant(Integer::one());
    for i in 1..=n {
        acc = &acc * &q_int(i)?;
    }
    Ok(acc)
}

/// `(n)_q! / ((m)_q! (n-m)_q!)` by exact division over `Z[q]`.
pub fn q_binomial(n: i64, m: i64) -> Result<QPoly, QSeriesError> {
    if m < 0 || m > n {
        return Err(QSeriesError::OutOfRange { n, m });
    }
    let numer = q_factorial(n)?;
    let denom = &q_factorial(m)? * &q_factorial(n - m)?;
    numer
        .div_exact(&denom)
        .map_err(|source| QSeriesError::NotIntegral { n, m, source })
}

pub fn q_binomial_eval(n: i64, m: i64, q0: &Integer) -> Result<Integer, QSeriesError> {
    Ok(q_binomial(n, m)?
        .eval(q0)
        .expect("integer arithmetic is total"))
}

/// Expands `∏_{i=0}^{n-1} (1 + q^i x)` directly; entry `j` of the result is
/// the coefficient of `x^j` as a polynomial in `q`.
pub fn qbinom_theorem_expand(n: usize) -> Vec<QPoly> {
    let mut coeffs = vec![QPoly::constant(Integer::one())];
    for i in 0..n {
        // multiply by (1 + q^i x)
        let qi = QPoly::monomial(i);
        let mut next = coeffs.clone();
        next.push(QPoly::zero());
        for (j, c) in coeffs.iter().enumerate() {
            next[j + 1] = &next[j + 1] + &(c * &qi);
        }
        coeffs = next;
    }
    coeffs
}

/// Checks that the direct expansion equals `[n choose j]_q · q^(j(j-1)/2)`
/// for every `j`.
pub fn verify_qbinomial_theorem(n: usize) -> Result<(), QSeriesError> {
    let expanded = qbinom_theorem_expand(n);
    for (j, c) in expanded.iter().enumerate() {
        let expected =
            &q_binomial(n as i64, j as i64)? * &QPoly::monomial(j * j.saturating_sub(1) / 2);
        if *c != expected {
            return Err(QSeriesError::IdentityViolation { n, j });
        }
    }
    if expanded.len() != n + 1 {
        return Err(QSeriesError::IdentityViolation {
            n,
            j: expanded.len(),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(c: &[i64]) -> QPoly {
        QPoly::from_i64(c)
    }

    #[test]
    fn q_integers() {
        assert_eq!(q_int(0).unwrap(), QPoly::zero());
        assert_eq!(q_int(1).unwrap(), ip(&[1]));
        assert_eq!(q_int(3).unwrap(), ip(&[1, 1, 1]));
        assert_eq!(q_int(3).unwrap().eval(&2.into()).unwrap(), 7.into());
        assert_eq!(q_int(-1), Err(QSeriesError::NegativeArgument(-1)));
    }

    #[test]
    fn q_factorials() {
        assert_eq!(q_factorial(0).unwrap(), ip(&[1]));
        assert_eq!(q_factorial(2).unwrap(), ip(&[1, 1]));
        assert_eq!(q_factorial(3).unwrap(), ip(&[1, 2, 2, 1]));
    }

    #[test]
    fn q_binomials() {
        assert_eq!(q_binomial(7, 0).unwrap(), ip(&[1]));
        assert_eq!(q_binomial(4, 2).unwrap(), ip(&[1, 1, 2, 1, 1]));
        assert_eq!(q_binomial(4, 2).unwrap().eval(&1.into()).unwrap(), 6.into());
        assert_eq!(q_binomial_eval(4, 2, &2.into()).unwrap(), 35.into());
        assert_eq!(q_binomial_eval(5, 5, &7.into()).unwrap(), 1.into());
        assert_eq!(q_binomial_eval(2, 1, &3.into()).unwrap(), 4.into());
        assert_eq!(
            q_binomial(3, 5),
            Err(QSeriesError::OutOfRange { n: 3, m: 5 })
        );
    }

    #[test]
    fn theorem_expansion_small() {
        assert_eq!(qbinom_theorem_expand(1), vec![ip(&[1]), ip(&[1])]);
        assert_eq!(
            qbinom_theorem_expand(2),
            vec![ip(&[1]), ip(&[1, 1]), ip(&[0, 1])]
        );
        assert_eq!(qbinom_theorem_expand(3)[2], ip(&[0, 1, 1, 1]));
        for n in 1..=8 {
            verify_qbinomial_theorem(n).unwrap();
        }
    }
}
