//! Prime Hecke eigenvalues `λ_F(p)` of a degree-`n`, weight-`k` Ikeda lift,
//! computed from `a_f(p)` of the underlying elliptic eigenform by three
//! independent routes, together with the exact two-sided bound check.
//!
//! The routes are:
//!
//! * [`route_sum`]: the double sum over `j` and `r` with `q`-binomials at
//!   `q = p` and the Chebyshev-type coefficients `(j/(j-r))·C(j-r, r)`;
//! * [`route_factored`]: `∏_{i=1}^{n/2} (a + p^{k-i} + p^{k-n-1+i})`;
//! * [`route_reciprocal`]: evaluation of the monic polynomial obtained by
//!   folding the palindromic `G_p` through the reciprocal transform
//!   `x^i + (c/x)^i = D_i(x + c/x)` with `c = p^{2k-n-1}`.
//!
//! Half-integer powers of `p` are carried exactly in `Q(√p)`.

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::exactnum::{int_pow, is_prime_u64, pow_p_half, ExactError, Integer, QuadExt, Rational};
use crate::modforms::{deligne_holds, hecke_eigenvalue_prime, FormsError, FourierSeries};
use crate::polyalg::{dickson, expand_product, IntPoly, Poly, PolyError, QuadPoly};
use crate::qseries::{q_binomial, QSeriesError};

#[derive(Debug, Error)]
pub enum IkedaError {
    #[error("invalid parameters (n = {n}, k = {k}): {reason}")]
    InvalidParams { n: i64, k: i64, reason: String },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("exponent {value} for (j, r) = ({j}, {r}) is not a non-negative integer")]
    ExponentNotIntegral { j: u32, r: u32, value: Rational },
    #[error("term coefficient j/(j-r)*C(j-r,r) = {value} for (j, r) = ({j}, {r}) is not a positive integer")]
    CoefficientNotIntegral { j: u32, r: u32, value: Rational },
    #[error("a_f({p}) = {ap} violates the Deligne bound a^2 <= 4 p^(2k-n-1)")]
    Deligne { p: u64, ap: Integer },
    #[error(
        "reciprocal construction at p = {p} has non-integral coefficient {coeff} at x^{index}"
    )]
    NonIntegralCoefficient { p: u64, index: usize, coeff: String },
    #[error("reciprocal construction at p = {p} is not monic of degree {degree}")]
    NotMonic { p: u64, degree: usize },
    #[error("reciprocal construction at p = {p} differs from the product of linear factors")]
    FactorMismatch { p: u64 },
    #[error("routes disagree at p = {p}: sum {sum}, factored {factored}, reciprocal {reciprocal}")]
    RouteMismatch {
        p: u64,
        sum: Integer,
        factored: Integer,
        reciprocal: Integer,
    },
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    QSeries(#[from] QSeriesError),
    #[error(transparent)]
    Forms(#[from] FormsError),
}

/// Validated degree `n` and weight `k` of the lift.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct IkedaParams {
    n: u32,
    k: u32,
}

impl IkedaParams {
    /// Requires `n >= 2` even, `k` even, `k > n + 1` and `2k - n >= 12`.
    pub fn new(n: i64, k: i64) -> Result<Self, IkedaError> {
        let fail = |reason: &str| {
            Err(IkedaError::InvalidParams {
                n,
                k,
                reason: reason.to_string(),
            })
        };
        if n < 2 || n % 2 != 0 {
            return fail("n must be an even integer >= 2");
        }
        if k <= 0 || k % 2 != 0 {
            return fail("k must be an even positive integer");
        }
        if k <= n + 1 {
            return fail("k must exceed n + 1");
        }
        if 2 * k - n < 12 {
            return fail("the elliptic weight 2k - n must be at least 12");
        }
        if k > 10_000 {
            return fail("k is unreasonably large");
        }
        Ok(IkedaParams {
            n: n as u32,
            k: k as u32,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Weight `2k - n` of the elliptic eigenform being lifted.
    pub fn eigenform_weight(&self) -> u32 {
        2 * self.k - self.n
    }

    fn half(&self) -> u32 {
        self.n / 2
    }

    /// `2k - n - 1`, so that `p^{(2k-n-1)/2}` is the Deligne scale.
    fn odd_weight(&self) -> i64 {
        (2 * self.k - self.n - 1) as i64
    }

    /// Twice `nk/2 - n(n+1)/4`; always an integer.
    fn base_exponent_twice(&self) -> i64 {
        let (n, k) = (self.n as i64, self.k as i64);
        n * k - n * (n + 1) / 2
    }

    /// `nk/2 - n(n+1)/4`.
    pub fn base_exponent(&self) -> Rational {
        Rational::new(self.base_exponent_twice().into(), 2.into())
    }

    /// `nk/2 - n(n+1)/4 + n²/8`, the exponent of `p` in the bounds.
    pub fn bound_exponent(&self) -> Rational {
        let n = self.n as i64;
        self.base_exponent() + Rational::new((n * n).into(), 8.into())
    }
}

/// Exponent bookkeeping for one `(j, r)` term of [`route_sum`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermExponent {
    pub j: u32,
    pub r: u32,
    pub c_jr: Rational,
    /// `nk/2 - n(n+1)/4 + c_jr`
    pub total: Rational,
}

fn as_nonneg_integer(value: &Rational) -> Option<u64> {
    if value.is_integer() && !value.is_negative() {
        u64::try_from(value.to_integer()).ok()
    } else {
        None
    }
}

/// `c_{j,r} = ((j - n/2)(n/2 + j) + (j - 2r)(n - 2k + 1)) / 2` for every
/// term, with the totals checked to be non-negative integers.
pub fn term_exponents(params: &IkedaParams) -> Result<Vec<TermExponent>, IkedaError> {
    let n = params.n as i64;
    let k = params.k as i64;
    let half = n / 2;
    let mut out = Vec::new();
    for j in 1..=half {
        for r in 0..=j / 2 {
            let numer = -(half - j) * (half + j) + (j - 2 * r) * (n - 2 * k + 1);
            let c_jr = Rational::new(numer.into(), 2.into());
            let total = params.base_exponent() + &c_jr;
            if as_nonneg_integer(&total).is_none() {
                return Err(IkedaError::ExponentNotIntegral {
                    j: j as u32,
                    r: r as u32,
                    value: total,
                });
            }
            out.push(TermExponent {
                j: j as u32,
                r: r as u32,
                c_jr,
                total,
            });
        }
    }
    Ok(out)
}

/// `nk/2 - n(n+1)/4 - n²/8`, the exponent of the constant term of
/// [`route_sum`], checked to be a non-negative integer.
pub fn constant_term_exponent(params: &IkedaParams) -> Result<u64, IkedaError> {
    let n = params.n as i64;
    let value = params.base_exponent() - Rational::new((n * n).into(), 8.into());
    as_nonneg_integer(&value).ok_or(IkedaError::ExponentNotIntegral { j: 0, r: 0, value })
}

fn binomial(n: u64, m: u64) -> Integer {
    (0..m).fold(Integer::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// `(j / (j - r)) · C(j - r, r)`, checked to be a positive integer.
fn chebyshev_coefficient(j: u32, r: u32) -> Result<Integer, IkedaError> {
    let value = Rational::new(Integer::from(j), Integer::from(j - r))
        * Rational::from_integer(binomial((j - r) as u64, r as u64));
    if value.is_integer() && value.is_positive() {
        Ok(value.to_integer())
    } else {
        Err(IkedaError::CoefficientNotIntegral { j, r, value })
    }
}

fn check_prime(p: u64) -> Result<Integer, IkedaError> {
    if is_prime_u64(p) {
        Ok(Integer::from(p))
    } else {
        Err(IkedaError::NotPrime(p))
    }
}

fn qbinom_at(n: u32, m: u32, p: &Integer) -> Result<Integer, IkedaError> {
    let poly = q_binomial(n as i64, m as i64)?;
    Ok(poly.eval(p)?)
}

/// `λ_F(p)` from the double sum
///
/// ```text
/// p^{E0} (Σ_j Σ_r (-1)^r (j/(j-r)) C(j-r,r) [n, n/2-j]_p p^{c_jr} a^{j-2r}
///         + p^{-n²/8} [n, n/2]_p)
/// ```
///
/// with the `p^{E0}` prefactor folded into each term's exponent.
pub fn route_sum(params: &IkedaParams, p: u64, ap: &Integer) -> Result<Integer, IkedaError> {
    let pz = check_prime(p)?;
    let n = params.n;
    let half = params.half();
    let mut total = Integer::zero();
    for term in term_exponents(params)? {
        let e = as_nonneg_integer(&term.total).expect("checked by term_exponents");
        let coeff = chebyshev_coefficient(term.j, term.r)?;
        let mut value = coeff
            * qbinom_at(n, half - term.j, &pz)?
            * int_pow(&pz, e)
            * int_pow(ap, (term.j - 2 * term.r) as u64);
        if term.r % 2 == 1 {
            value = -value;
        }
        total += value;
    }
    total += int_pow(&pz, constant_term_exponent(params)?) * qbinom_at(n, half, &pz)?;
    Ok(total)
}

/// The constant `p^{k-i} + p^{k-n-1+i}` of the `i`-th linear factor,
/// `i = 1..=n/2`.
fn factor_root_shift(params: &IkedaParams, p: &Integer, i: u32) -> Integer {
    let (n, k) = (params.n as u64, params.k as u64);
    let i = i as u64;
    int_pow(p, k - i) + int_pow(p, k - n - 1 + i)
}

/// `∏_{i=1}^{n/2} (a + p^{k-i} + p^{k-n-1+i})`.
pub fn route_factored(params: &IkedaParams, p: u64, ap: &Integer) -> Result<Integer, IkedaError> {
    let pz = check_prime(p)?;
    Ok((1..=params.half())
        .map(|i| ap + factor_root_shift(params, &pz, i))
        .product())
}

/// `G_p(x) = Σ_{i=0}^{n} a_i x^i` with
/// `a_i = p^{nk/2 - n(n+1)/4} p^{i(i-n)/2} [n, i]_p` in `Q(√p)`.
pub fn build_g(params: &IkedaParams, p: u64) -> Result<QuadPoly, IkedaError> {
    let pz = check_prime(p)?;
    let n = params.n as i64;
    let e0_twice = params.base_exponent_twice();
    let coeffs = (0..=n)
        .map(|i| {
            let binom = qbinom_at(params.n, i as u32, &pz)?;
            let power = pow_p_half(&pz, e0_twice + i * (i - n))?;
            Ok(power.scale(&Rational::from_integer(binom)))
        })
        .collect::<Result<Vec<_>, IkedaError>>()?;
    Ok(Poly::new(coeffs))
}

/// The monic integer polynomial `g̃_p` with `λ_F(p) = g̃_p(a_f(p))`, built as
/// `a_{n/2} + Σ_{i<n/2} a_i p^{(2k-n-1)(i-n/2)/2} D_{n/2-i}(x; p^{2k-n-1})`.
///
/// The result must have integer coefficients, be monic of degree `n/2`, and
/// coincide with `∏ (x + p^{k-i} + p^{k-n-1+i})`; any failure is an error.
pub fn build_tilde_gp(params: &IkedaParams, p: u64) -> Result<IntPoly, IkedaError> {
    let pz = check_prime(p)?;
    let g = build_g(params, p)?;
    let half = params.half() as usize;
    let a = g.coeffs();
    let c = int_pow(&pz, params.odd_weight() as u64);

    let mut acc: QuadPoly = Poly::constant(a[half].clone());
    for (i, a_i) in a.iter().enumerate().take(half) {
        let h = params.odd_weight() * (i as i64 - half as i64);
        let scale = a_i.checked_mul(&pow_p_half(&pz, h)?)?;
        let term = dickson(half - i, &c)?.lift(&scale).try_scale(&scale)?;
        acc = acc.try_add(&term)?;
    }

    let coeffs = acc
        .coeffs()
        .iter()
        .enumerate()
        .map(|(index, q)| {
            q.to_integer()
                .ok_or_else(|| IkedaError::NonIntegralCoefficient {
                    p,
                    index,
                    coeff: q.to_string(),
                })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let tilde = IntPoly::new(coeffs);
    if tilde.degree() != Some(half) || !tilde.is_monic() {
        return Err(IkedaError::NotMonic { p, degree: half });
    }

    let factors: Vec<IntPoly> = (1..=params.half())
        .map(|i| IntPoly::linear(factor_root_shift(params, &pz, i), Integer::one()))
        .collect();
    if expand_product(&factors)? != tilde {
        return Err(IkedaError::FactorMismatch { p });
    }
    Ok(tilde)
}

/// `g̃_p(a)` from the reciprocal-polynomial construction.
pub fn route_reciprocal(params: &IkedaParams, p: u64, ap: &Integer) -> Result<Integer, IkedaError> {
    Ok(build_tilde_gp(params, p)?.eval(ap)?)
}

/// Compares [`build_g`] with the expanded product
/// `p^{nk/2 - n(n+1)/4} ∏_{j=0}^{n-1} (1 + p^{j + (1-n)/2} x)`.
pub fn factorization_check(params: &IkedaParams, p: u64) -> Result<bool, IkedaError> {
    let pz = check_prime(p)?;
    let n = params.n as i64;
    let prefactor = pow_p_half(&pz, params.base_exponent_twice())?;
    let factors = (0..n)
        .map(|j| {
            let slope = pow_p_half(&pz, 2 * j + 1 - n)?;
            Ok(Poly::linear(prefactor.one_like(), slope))
        })
        .collect::<Result<Vec<QuadPoly>, IkedaError>>()?;
    let rhs = expand_product(&factors)?.try_scale(&prefactor)?;
    Ok(rhs == build_g(params, p)?)
}

/// `p^{E} ∏_{i=1}^{n/2} (1 ∓ p^{-(i - 1/2)})²` with
/// `E = nk/2 - n(n+1)/4 + n²/8`, as exact `(lower, upper)`.
pub fn bounds(params: &IkedaParams, p: u64) -> Result<(QuadExt, QuadExt), IkedaError> {
    let pz = check_prime(p)?;
    let e_twice = params.bound_exponent() * Rational::from_integer(2.into());
    let e_twice = e_twice
        .to_integer()
        .try_into()
        .expect("n even makes 2E integral");
    let mut lower = pow_p_half(&pz, e_twice)?;
    let mut upper = lower.clone();
    for i in 1..=params.half() as i64 {
        let t = pow_p_half(&pz, -(2 * i - 1))?;
        let minus = lower.one_like().checked_sub(&t)?;
        let plus = upper.one_like().checked_add(&t)?;
        lower = lower.checked_mul(&minus.checked_mul(&minus)?)?;
        upper = upper.checked_mul(&plus.checked_mul(&plus)?)?;
    }
    Ok((lower, upper))
}

/// Verification record for one prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenvalueReport {
    pub p: u64,
    pub a_p: Integer,
    pub lambda: Integer,
    pub lower: QuadExt,
    pub upper: QuadExt,
    pub positive: bool,
    pub within_bounds: bool,
    pub routes_agree: bool,
}

impl EigenvalueReport {
    pub fn passed(&self) -> bool {
        self.positive && self.within_bounds && self.routes_agree
    }
}

/// Runs all three routes at `a_f(p) = ap`, requires agreement, and checks
/// positivity and both bounds exactly.
pub fn verify_prime(
    params: &IkedaParams,
    p: u64,
    ap: &Integer,
) -> Result<EigenvalueReport, IkedaError> {
    check_prime(p)?;
    if !deligne_holds(ap, p, params.eigenform_weight()) {
        return Err(IkedaError::Deligne { p, ap: ap.clone() });
    }
    let sum = route_sum(params, p, ap)?;
    let factored = route_factored(params, p, ap)?;
    let reciprocal = route_reciprocal(params, p, ap)?;
    if sum != factored || factored != reciprocal {
        return Err(IkedaError::RouteMismatch {
            p,
            sum,
            factored,
            reciprocal,
        });
    }
    let (lower, upper) = bounds(params, p)?;
    let lambda_q = lower.rational_like(Rational::from_integer(factored.clone()));
    let within_bounds =
        lambda_q.checked_sub(&lower)?.sign() >= 0 && upper.checked_sub(&lambda_q)?.sign() >= 0;
    Ok(EigenvalueReport {
        p,
        a_p: ap.clone(),
        positive: factored.is_positive(),
        lambda: factored,
        lower,
        upper,
        within_bounds,
        routes_agree: true,
    })
}

/// [`verify_prime`] at every prime `p <= pmax`, with `a_f(p)` taken from
/// `form`. Results are ordered by `p` regardless of scheduling.
pub fn verify_range(
    params: &IkedaParams,
    form: &FourierSeries,
    pmax: u64,
) -> Result<Vec<EigenvalueReport>, IkedaError> {
    if form.weight() != params.eigenform_weight() {
        return Err(IkedaError::InvalidParams {
            n: params.n as i64,
            k: params.k as i64,
            reason: format!(
                "eigenform has weight {}, expected {}",
                form.weight(),
                params.eigenform_weight()
            ),
        });
    }
    crate::exactnum::primes_up_to(pmax)
        .into_par_iter()
        .map(|p| {
            let ap = hecke_eigenvalue_prime(form, p)?;
            verify_prime(params, p, &ap)
        })
        .collect()
}
