//! Brute-force series oracles in exact rational arithmetic.
//!
//! Each hypergeometric-family kernel is recomputed here by direct term
//! summation over `BigRational`, fully independent of the floating-point
//! evaluation paths, and the frozen decimal values double as regression
//! anchors.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use skewbessel::specfun::{bessel_i, gamma_fn, gauss_2f1, kummer_1f1};

fn big(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// 200-term rational summation of the confluent series.
fn kummer_series_rational(a: BigRational, c: BigRational, z: BigRational) -> BigRational {
    let mut term = BigRational::one();
    let mut sum = BigRational::one();
    for n in 0..200 {
        let nf = big(n);
        term = term * (&a + &nf) / (&c + &nf) * &z / (&nf + BigRational::one());
        sum += &term;
        if term.is_zero() {
            break;
        }
    }
    sum
}

/// 200-term rational summation of the Gauss series.
fn gauss_series_rational(
    a: BigRational,
    b: BigRational,
    c: BigRational,
    z: BigRational,
) -> BigRational {
    let mut term = BigRational::one();
    let mut sum = BigRational::one();
    for n in 0..200 {
        let nf = big(n);
        term = term * (&a + &nf) * (&b + &nf) / ((&c + &nf) * (&nf + BigRational::one())) * &z;
        sum += &term;
    }
    sum
}

/// 100-term rational summation of the normalized Bessel-I series
/// `sum_k (z^2/4)^k / (k! (nu+1)_k)`.
fn bessel_series_rational(nu: BigRational, z: BigRational) -> BigRational {
    let q = &z * &z / big(4);
    let mut term = BigRational::one();
    let mut sum = BigRational::one();
    for k in 0..100 {
        let kf = big(k);
        term = term * &q / ((&kf + BigRational::one()) * (&nu + BigRational::one() + &kf));
        sum += &term;
    }
    sum
}

#[test]
fn kummer_matches_rational_oracle() {
    // 1F1(1/6; 7/6; 5/2)
    let oracle = kummer_series_rational(ratio(1, 6), ratio(7, 6), ratio(5, 2))
        .to_f64()
        .unwrap();
    assert!((oracle - 1.838_943_002_882_860_9).abs() < 1e-13, "oracle drifted: {oracle}");
    let got = kummer_1f1(1.0 / 6.0, 7.0 / 6.0, 2.5).unwrap().to_f64();
    assert!((got - oracle).abs() < 1e-12 * oracle, "{got} vs {oracle}");
}

#[test]
fn kummer_transformed_branch_matches_rational_oracle() {
    // deep-negative argument goes through the transformation internally;
    // e^(-z) 1F1(c-a; c; z) is summed rationally and scaled afterwards
    let oracle_pos = kummer_series_rational(ratio(1, 1), ratio(7, 6), ratio(40, 1))
        .to_f64()
        .unwrap();
    let want = (-40.0f64).exp() * oracle_pos;
    let got = kummer_1f1(1.0 / 6.0, 7.0 / 6.0, -40.0).unwrap().to_f64();
    assert!((got - want).abs() < 1e-12 * want, "{got} vs {want}");
}

#[test]
fn gauss_matches_rational_oracle() {
    // 2F1(1/6, 5/6; 7/6; 1/2), the evaluation inside the symmetric hitting
    // probability
    let oracle = gauss_series_rational(ratio(1, 6), ratio(5, 6), ratio(7, 6), ratio(1, 2))
        .to_f64()
        .unwrap();
    assert!((oracle - 1.081_840_874_506_875_5).abs() < 1e-13, "oracle drifted: {oracle}");
    let got = gauss_2f1(1.0 / 6.0, 5.0 / 6.0, 7.0 / 6.0, 0.5).unwrap().to_f64();
    assert!((got - oracle).abs() < 1e-12 * oracle, "{got} vs {oracle}");
}

#[test]
fn bessel_i_matches_rational_oracle() {
    // I_(1/3)(2) = (z/2)^(1/3)/Gamma(4/3) * S with S the normalized series
    let s = bessel_series_rational(ratio(1, 3), big(2)).to_f64().unwrap();
    let want = 1.0 / gamma_fn(4.0 / 3.0).unwrap() * s;
    assert!((want - 2.158_782_581_372_863).abs() < 1e-12, "oracle drifted: {want}");
    let got = bessel_i(1.0 / 3.0, 2.0).unwrap().to_f64();
    assert!((got - want).abs() < 1e-12 * want, "{got} vs {want}");
}

#[test]
fn half_integer_closed_forms() {
    // I_(1/2)(1) = sqrt(2/pi) sinh(1); K_(1/2)(1) = sqrt(pi/2) e^(-1)
    let i = bessel_i(0.5, 1.0).unwrap().to_f64();
    let want = (2.0 / std::f64::consts::PI).sqrt() * 1.0f64.sinh();
    assert!((i - want).abs() < 1e-13);
    let k = skewbessel::specfun::bessel_k(0.5, 1.0).unwrap().to_f64();
    let want = (std::f64::consts::PI / 2.0).sqrt() * (-1.0f64).exp();
    assert!((k - want).abs() < 1e-13);
}
