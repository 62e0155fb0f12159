//! Closed-form evaluators the recurrence solvers must reproduce.

use crate::ring::{RingElem, RingError};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Box dimensions for the plane-partition generating function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoxDims {
    pub r: u32,
    pub s: u32,
    pub t: u32,
}

impl BoxDims {
    pub fn new(r: u32, s: u32, t: u32) -> Self {
        BoxDims { r, s, t }
    }
}

/// 2^(n(n+1)/2), the number of domino tilings of the order-n Aztec diamond.
pub fn aztec_formula(n: u32) -> RingElem {
    let e = (u64::from(n) * (u64::from(n) + 1)) / 2;
    RingElem::Int(BigInt::one() << e)
}

/// F_1 = F_2 = 1, F_n = F_{n-1} + F_{n-2}.
pub fn fibonacci(n: u32) -> RingElem {
    assert!(n >= 1, "fibonacci is defined for n >= 1");
    let (mut a, mut b) = (BigInt::one(), BigInt::one());
    for _ in 2..n {
        let c = &a + &b;
        a = b;
        b = c;
    }
    RingElem::Int(if n == 1 { a } else { b })
}

/// The generating function for plane partitions in an r x s x t box:
/// the double product of (1 - q^(i+j+t-1)) / (1 - q^(i+j-1)), expanded and
/// divided exactly once.
pub fn macmahon_p(dims: BoxDims) -> Result<RingElem, RingError> {
    let BoxDims { r, s, t } = dims;
    let mut num = RingElem::one();
    let mut den = RingElem::one();
    for i in 1..=r {
        for j in 1..=s {
            num = num.mul(&one_minus_q(i + j + t - 1))?;
            den = den.mul(&one_minus_q(i + j - 1))?;
        }
    }
    let p = num.exact_div(&den)?;
    // force the polynomial kind even for empty products
    match p {
        RingElem::Int(v) => Ok(RingElem::poly(vec![v])),
        other => Ok(other),
    }
}

/// Number of plane partitions in the box: the generating function at q = 1,
/// which also counts rhombus tilings of the (r,s,t,r,s,t) hexagon.
pub fn macmahon_n(dims: BoxDims) -> Result<RingElem, RingError> {
    macmahon_p(dims)?.eval_at_one()
}

/// Number of transpose complement plane partitions in an r x r x 2t box:
/// binom(t+r-1, r-1) * prod_{1<=i<=j<=r-2} (2t+i+j+1)/(i+j+1), evaluated in
/// exact rationals and asserted integral.
pub fn tcpp_formula(r: u32, t: u32) -> Result<RingElem, RingError> {
    if r == 0 {
        return Ok(RingElem::one());
    }
    let mut acc = binomial_rational(t + r - 1, r - 1);
    if r >= 2 {
        for i in 1..=(r - 2) {
            for j in i..=(r - 2) {
                let num = BigInt::from(2 * t + i + j + 1);
                let den = BigInt::from(i + j + 1);
                acc *= BigRational::new(num, den);
            }
        }
    }
    if !acc.is_integer() {
        return Err(RingError::InexactDivision);
    }
    Ok(RingElem::Int(acc.to_integer()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FortressSeries {
    /// Odd order 2k+1, corner cells weighted 1.
    A,
    /// Odd order 2k+1, corner cells weighted 1/2.
    B,
    /// Even order 2k, opposite corner pairs weighted 1 and 1/2.
    C,
}

/// Closed forms for the fortress-weighted diamond sums: powers of 5/4, with
/// an extra factor 2 (for A) or 1/2 (for B) when k is even.
pub fn fortress_formula(series: FortressSeries, k: u32) -> RingElem {
    assert!(k >= 1, "fortress closed forms start at k = 1");
    let five_fourth = RingElem::Rat(BigRational::new(BigInt::from(5), BigInt::from(4)));
    match series {
        FortressSeries::C => five_fourth.pow(k * k),
        FortressSeries::A => {
            let base = five_fourth.pow(k * (k + 1));
            if k % 2 == 1 {
                base
            } else {
                base.mul(&RingElem::int(2)).unwrap()
            }
        }
        FortressSeries::B => {
            let base = five_fourth.pow(k * (k + 1));
            if k % 2 == 1 {
                base
            } else {
                base.exact_div(&RingElem::int(2)).unwrap()
            }
        }
    }
}

fn one_minus_q(e: u32) -> RingElem {
    let mut c = vec![BigInt::zero(); e as usize + 1];
    c[0] = BigInt::one();
    c[e as usize] = -BigInt::one();
    RingElem::Poly(c)
}

/// Binomial coefficient computed multiplicatively in exact rationals.
fn binomial_rational(n: u32, k: u32) -> BigRational {
    if k > n {
        return BigRational::zero();
    }
    let mut acc = BigRational::one();
    for i in 1..=k {
        acc *= BigRational::new(BigInt::from(n - k + i), BigInt::from(i));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aztec_values() {
        assert_eq!(aztec_formula(1), RingElem::int(2));
        assert_eq!(aztec_formula(4), RingElem::int(1024));
        assert_eq!(aztec_formula(0), RingElem::int(1));
    }

    #[test]
    fn fibonacci_values() {
        let f: Vec<i64> = vec![1, 1, 2, 3, 5, 8, 13, 21];
        for (i, v) in f.iter().enumerate() {
            assert_eq!(fibonacci(i as u32 + 1), RingElem::int(*v));
        }
    }

    #[test]
    fn macmahon_small_boxes() {
        assert_eq!(
            macmahon_p(BoxDims::new(1, 1, 1)).unwrap(),
            RingElem::poly(vec![1, 1])
        );
        assert_eq!(
            macmahon_p(BoxDims::new(1, 1, 3)).unwrap(),
            RingElem::poly(vec![1, 1, 1, 1])
        );
        assert_eq!(
            macmahon_p(BoxDims::new(0, 5, 7)).unwrap(),
            RingElem::poly(vec![1])
        );
        assert_eq!(macmahon_n(BoxDims::new(1, 1, 1)).unwrap(), RingElem::int(2));
        assert_eq!(macmahon_n(BoxDims::new(2, 2, 2)).unwrap(), RingElem::int(20));
        assert_eq!(macmahon_n(BoxDims::new(3, 3, 0)).unwrap(), RingElem::int(1));
    }

    #[test]
    fn macmahon_symmetry_and_shape() {
        let perms = [
            (2u32, 3u32, 4u32),
            (3, 2, 4),
            (4, 3, 2),
            (2, 4, 3),
            (3, 4, 2),
            (4, 2, 3),
        ];
        let base = macmahon_p(BoxDims::new(2, 3, 4)).unwrap();
        for (r, s, t) in perms {
            assert_eq!(macmahon_p(BoxDims::new(r, s, t)).unwrap(), base);
        }
        for r in 0..=4u32 {
            for s in 0..=4u32 {
                for t in 0..=4u32 {
                    let p = macmahon_p(BoxDims::new(r, s, t)).unwrap();
                    match &p {
                        RingElem::Poly(c) => {
                            assert!(c.iter().all(|x| x >= &num_bigint::BigInt::from(0)));
                            if r * s * t == 0 {
                                assert_eq!(p.degree(), Some(0));
                            } else {
                                assert_eq!(p.degree(), Some((r * s * t) as usize));
                            }
                            assert_eq!(c[0], num_bigint::BigInt::from(1));
                        }
                        other => panic!("expected polynomial, got {other:?}"),
                    }
                }
            }
        }
    }

    #[test]
    fn tcpp_values() {
        assert_eq!(tcpp_formula(2, 1).unwrap(), RingElem::int(2));
        for r in 0..6 {
            assert_eq!(tcpp_formula(r, 0).unwrap(), RingElem::int(1));
        }
        for t in 0..6 {
            assert_eq!(tcpp_formula(1, t).unwrap(), RingElem::int(1));
        }
        // integral for a spread of parameters
        for r in 0..=6u32 {
            for t in 0..=5u32 {
                assert!(matches!(tcpp_formula(r, t).unwrap(), RingElem::Int(_)));
            }
        }
    }

    #[test]
    fn fortress_values() {
        let q = |n: i64, d: i64| RingElem::rational(n, d).unwrap();
        assert_eq!(fortress_formula(FortressSeries::C, 1), q(5, 4));
        assert_eq!(fortress_formula(FortressSeries::A, 1), q(25, 16));
        assert_eq!(fortress_formula(FortressSeries::C, 2), q(625, 256));
        assert_eq!(
            fortress_formula(FortressSeries::A, 2),
            q(2 * 15625, 4096)
        );
        assert_eq!(fortress_formula(FortressSeries::B, 2), q(15625, 2 * 4096));
    }
}
