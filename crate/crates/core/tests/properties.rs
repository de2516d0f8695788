use ikeda_core::exactnum::{pow_p_half, primes_up_to, QuadExt, Rational};
use ikeda_core::polyalg::{dickson, expand_product, IntPoly};
use ikeda_core::qseries::{q_binomial, qbinom_theorem_expand};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

const SMALL_PRIMES: [u64; 15] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];

fn rational() -> impl Strategy<Value = Rational> {
    (-1_000_000i64..=1_000_000, 1i64..=10_000).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |r| !r.is_zero())
}

fn quad(p: u64) -> impl Strategy<Value = QuadExt> {
    (rational(), rational()).prop_map(move |(a, b)| QuadExt::new(a, b, p.into()).unwrap())
}

fn quad_triple() -> impl Strategy<Value = (QuadExt, QuadExt, QuadExt)> {
    proptest::sample::select(SMALL_PRIMES.to_vec()).prop_flat_map(|p| (quad(p), quad(p), quad(p)))
}

/// Sign of `a + b√p` from a 100-digit truncated decimal expansion of `b√p`
/// obtained by Newton iteration on integers.
fn decimal_sign(a: &Rational, b: &Rational, p: u64) -> i8 {
    let digits = BigInt::from(10).pow(100);
    // isqrt(p · 10^200) by Newton's method
    let target = BigInt::from(p) * &digits * &digits;
    let mut x = target.clone();
    loop {
        let y = (&x + &target / &x) / 2;
        if y >= x {
            break;
        }
        x = y;
    }
    let sqrt_p = Rational::new(x, digits.clone());
    let approx = a + b * &sqrt_p;
    // truncation error of b·√p is below |b|·10^-100
    let slack = b.abs() / Rational::from_integer(digits);
    if approx > slack {
        1
    } else if approx < -slack {
        -1
    } else if a.is_zero() && b.is_zero() {
        0
    } else {
        // inside the slack window: the sample is too close to call at 100 digits
        i8::MAX
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn quad_ring_axioms((x, y, z) in quad_triple()) {
        prop_assert_eq!(x.checked_add(&y).unwrap(), y.checked_add(&x).unwrap());
        prop_assert_eq!(x.checked_mul(&y).unwrap(), y.checked_mul(&x).unwrap());
        prop_assert_eq!(
            x.checked_add(&y).unwrap().checked_add(&z).unwrap(),
            x.checked_add(&y.checked_add(&z).unwrap()).unwrap()
        );
        prop_assert_eq!(
            x.checked_mul(&y).unwrap().checked_mul(&z).unwrap(),
            x.checked_mul(&y.checked_mul(&z).unwrap()).unwrap()
        );
        prop_assert_eq!(
            x.checked_mul(&y.checked_add(&z).unwrap()).unwrap(),
            x.checked_mul(&y).unwrap().checked_add(&x.checked_mul(&z).unwrap()).unwrap()
        );
    }

    #[test]
    fn quad_sign_matches_decimal(
        p in proptest::sample::select(SMALL_PRIMES.to_vec()),
        a in rational(),
        b in rational(),
    ) {
        let x = QuadExt::new(a.clone(), b.clone(), p.into()).unwrap();
        let expected = decimal_sign(&a, &b, p);
        prop_assume!(expected != i8::MAX);
        prop_assert_eq!(x.sign(), expected);
        prop_assert_eq!(x.sign() == 0, a.is_zero() && b.is_zero());
    }

    #[test]
    fn quad_sign_near_cancellation(p in proptest::sample::select(SMALL_PRIMES.to_vec()), k in 1i64..10_000) {
        // a ≈ -b√p with a = -floor(k√p): the two terms nearly cancel
        let b = Rational::from_integer(k.into());
        let floor = (BigInt::from(k) * BigInt::from(k) * BigInt::from(p)).sqrt();
        let a = Rational::from_integer(-floor);
        let x = QuadExt::new(a.clone(), b.clone(), p.into()).unwrap();
        prop_assert_eq!(x.sign(), 1);
        prop_assert_eq!(x.neg().sign(), -1);
    }

    #[test]
    fn half_powers_add(p in proptest::sample::select(SMALL_PRIMES.to_vec()), h1 in -40i64..=40, h2 in -40i64..=40) {
        let pz = BigInt::from(p);
        let lhs = pow_p_half(&pz, h1).unwrap().checked_mul(&pow_p_half(&pz, h2).unwrap()).unwrap();
        prop_assert_eq!(lhs, pow_p_half(&pz, h1 + h2).unwrap());
    }

    #[test]
    fn dickson_identity(i in 0usize..=12, x in nonzero_rational(), c in nonzero_rational()) {
        let d = dickson(i, &c).unwrap();
        let lhs = d.eval(&(&x + &c / &x)).unwrap();
        let rhs = num_traits::pow(x.clone(), i) + num_traits::pow(&c / &x, i);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn dickson_is_monic_integral(i in 1usize..=16, c in -1000i64..=1000) {
        let d = dickson(i, &BigInt::from(c)).unwrap();
        prop_assert_eq!(d.degree(), Some(i));
        prop_assert!(d.is_monic());
    }

    #[test]
    fn product_is_order_independent(
        roots in proptest::collection::vec(-50i64..=50, 1..=6),
        seed in any::<u64>(),
    ) {
        let factors: Vec<IntPoly> = roots.iter().map(|&r| IntPoly::from_i64(&[r, 1])).collect();
        let mut shuffled = factors.clone();
        let len = shuffled.len();
        shuffled.rotate_left((seed as usize) % len);
        shuffled.reverse();
        prop_assert_eq!(expand_product(&factors).unwrap(), expand_product(&shuffled).unwrap());
    }

    #[test]
    fn palindromes_closed_under_product(
        a in proptest::collection::vec(-20i64..=20, 1..=5),
        b in proptest::collection::vec(-20i64..=20, 1..=4),
    ) {
        let mirror = |v: &[i64]| {
            let mut full = v.to_vec();
            full.extend(v.iter().rev().skip(1));
            IntPoly::from_i64(&full)
        };
        let (pa, pb) = (mirror(&a), mirror(&b));
        prop_assume!(pa.coeff(0).is_some_and(|c| !c.is_zero()) && pb.coeff(0).is_some_and(|c| !c.is_zero()));
        prop_assert!(pa.is_palindromic() && pb.is_palindromic());
        prop_assert!((&pa * &pb).is_palindromic());
    }
}

#[test]
fn quad_sign_zero_only_at_zero() {
    for p in primes_up_to(50) {
        let z = QuadExt::new(Rational::zero(), Rational::zero(), p.into()).unwrap();
        assert_eq!(z.sign(), 0);
        let unit = QuadExt::new(Rational::zero(), Rational::one(), p.into()).unwrap();
        assert_eq!(unit.sign(), 1);
    }
}

#[test]
fn qbinomial_structure() {
    for n in 0..=16i64 {
        let mut classical = BigInt::one();
        for m in 0..=n {
            let b = q_binomial(n, m).unwrap();
            assert_eq!(b, q_binomial(n, n - m).unwrap(), "symmetry [{n} {m}]");
            assert!(b.coeffs().iter().all(|c| !c.is_negative()));
            assert_eq!(
                b.eval(&BigInt::one()).unwrap(),
                classical,
                "[{n} {m}] at q = 1"
            );
            assert_eq!(b.degree(), Some((m * (n - m)) as usize));
            classical = classical * (n - m) / (m + 1);
        }
    }
}

#[test]
fn qbinomial_theorem_first_rows() {
    let row = qbinom_theorem_expand(4);
    assert_eq!(row.len(), 5);
    // [4 2]_q q = q + q^2 + 2q^3 + q^4 + q^5
    assert_eq!(row[2], IntPoly::from_i64(&[0, 1, 1, 2, 1, 1]));
    assert_eq!(row[4], IntPoly::monomial(6));
}
