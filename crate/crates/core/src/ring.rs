//! Exact commutative-ring scalars: arbitrary-precision integers, rationals,
//! and dense univariate polynomials in `q` with integer coefficients.
//!
//! Every count and weighted sum in this crate is a [`RingElem`]. Operations
//! are exact; division reports failure instead of rounding, because an
//! inexact quotient in a condensation recurrence means the identity (or a
//! builder) is wrong and must not be papered over.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    /// Rationals and polynomials never mix.
    #[error("incompatible kinds: {0} and {1}")]
    IncompatibleKinds(&'static str, &'static str),
    #[error("division by zero")]
    DivisionByZero,
    /// Nonzero remainder in integer or polynomial division.
    #[error("inexact division")]
    InexactDivision,
    #[error("cannot evaluate a rational at q=1")]
    EvalOnRational,
    #[error("parse error: {0}")]
    Parse(String),
}

/// An exact scalar: big integer, big rational, or polynomial in `q`.
///
/// Rationals are kept in lowest terms with a positive denominator.
/// Polynomial coefficients are stored constant term first with no trailing
/// zeros; the zero polynomial is the empty coefficient list (its degree is
/// taken to be "minus infinity"). Equality is structural, so `Int(3)`,
/// `Rat(3/1)` and the constant polynomial `3` are three distinct values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingElem {
    Int(BigInt),
    Rat(BigRational),
    Poly(Vec<BigInt>),
}

impl RingElem {
    pub fn int<T: Into<BigInt>>(v: T) -> Self {
        RingElem::Int(v.into())
    }

    pub fn rational<T: Into<BigInt>, U: Into<BigInt>>(num: T, den: U) -> Result<Self, RingError> {
        let den = den.into();
        if den.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        Ok(RingElem::Rat(BigRational::new(num.into(), den)))
    }

    /// Polynomial from constant-first coefficients; trailing zeros stripped.
    pub fn poly<T: Into<BigInt>>(coeffs: Vec<T>) -> Self {
        let mut c: Vec<BigInt> = coeffs.into_iter().map(Into::into).collect();
        normalize_poly(&mut c);
        RingElem::Poly(c)
    }

    /// The monomial `q^k`.
    pub fn monomial(k: usize) -> Self {
        let mut c = vec![BigInt::zero(); k + 1];
        c[k] = BigInt::one();
        RingElem::Poly(c)
    }

    pub fn zero() -> Self {
        RingElem::Int(BigInt::zero())
    }

    pub fn one() -> Self {
        RingElem::Int(BigInt::one())
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            RingElem::Int(_) => "integer",
            RingElem::Rat(_) => "rational",
            RingElem::Poly(_) => "polynomial",
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            RingElem::Int(v) => v.is_zero(),
            RingElem::Rat(v) => v.is_zero(),
            RingElem::Poly(c) => c.is_empty(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            RingElem::Int(v) => v.is_one(),
            RingElem::Rat(v) => v.is_one(),
            RingElem::Poly(c) => c.len() == 1 && c[0].is_one(),
        }
    }

    /// Degree of a polynomial; `None` for the zero polynomial and for
    /// non-polynomial kinds.
    pub fn degree(&self) -> Option<usize> {
        match self {
            RingElem::Poly(c) if !c.is_empty() => Some(c.len() - 1),
            _ => None,
        }
    }

    pub fn add(&self, other: &RingElem) -> Result<RingElem, RingError> {
        self.binop(other, Op::Add)
    }

    pub fn sub(&self, other: &RingElem) -> Result<RingElem, RingError> {
        self.binop(other, Op::Sub)
    }

    pub fn mul(&self, other: &RingElem) -> Result<RingElem, RingError> {
        self.binop(other, Op::Mul)
    }

    pub fn neg(&self) -> RingElem {
        match self {
            RingElem::Int(v) => RingElem::Int(-v),
            RingElem::Rat(v) => RingElem::Rat(-v),
            RingElem::Poly(c) => RingElem::Poly(c.iter().map(|x| -x).collect()),
        }
    }

    /// Exponentiation by repeated multiplication (same-kind, cannot fail).
    pub fn pow(&self, mut e: u32) -> RingElem {
        let mut base = self.clone();
        let mut acc = RingElem::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same-kind product");
            }
            base = base.mul(&base).expect("same-kind product");
            e >>= 1;
        }
        acc
    }

    /// Exact division: returns `z` with `z * y == x`, or an error if `y` is
    /// zero or does not divide `x` in the operands' ring.
    pub fn exact_div(&self, other: &RingElem) -> Result<RingElem, RingError> {
        if other.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        use RingElem::*;
        match (self, other) {
            (Int(a), Int(b)) => {
                let (q, r) = num_integer::Integer::div_rem(a, b);
                if r.is_zero() {
                    Ok(Int(q))
                } else {
                    Err(RingError::InexactDivision)
                }
            }
            (Rat(a), Rat(b)) => Ok(Rat(a / b)),
            (Int(a), Rat(b)) => Ok(Rat(BigRational::from(a.clone()) / b)),
            (Rat(a), Int(b)) => Ok(Rat(a / BigRational::from(b.clone()))),
            (Poly(a), Poly(b)) => poly_exact_div(a, b).map(Poly),
            (Int(a), Poly(b)) => poly_exact_div(&int_as_poly(a), b).map(Poly),
            (Poly(a), Int(b)) => poly_exact_div(a, &int_as_poly(b)).map(Poly),
            (a, b) => Err(RingError::IncompatibleKinds(a.kind_name(), b.kind_name())),
        }
    }

    /// Sum of coefficients: the value at `q = 1`, always returned as an
    /// integer. Rational input is rejected.
    pub fn eval_at_one(&self) -> Result<RingElem, RingError> {
        match self {
            RingElem::Int(v) => Ok(RingElem::Int(v.clone())),
            RingElem::Poly(c) => Ok(RingElem::Int(c.iter().sum())),
            RingElem::Rat(_) => Err(RingError::EvalOnRational),
        }
    }

    /// Parses the textual form: text containing `q` is a polynomial, text
    /// containing `/` a rational, anything else an integer.
    pub fn parse(text: &str) -> Result<RingElem, RingError> {
        let t = text.trim();
        if t.is_empty() {
            return Err(RingError::Parse("empty scalar".into()));
        }
        if t.contains('q') {
            parse_poly(t)
        } else if t.contains('/') {
            parse_rational(t)
        } else {
            parse_int(t).map(RingElem::Int)
        }
    }

    fn binop(&self, other: &RingElem, op: Op) -> Result<RingElem, RingError> {
        use RingElem::*;
        Ok(match (self, other) {
            (Int(a), Int(b)) => Int(op.int(a, b)),
            (Rat(a), Rat(b)) => Rat(op.rat(a, b)),
            (Int(a), Rat(b)) => Rat(op.rat(&BigRational::from(a.clone()), b)),
            (Rat(a), Int(b)) => Rat(op.rat(a, &BigRational::from(b.clone()))),
            (Poly(a), Poly(b)) => Poly(op.poly(a, b)),
            (Int(a), Poly(b)) => Poly(op.poly(&int_as_poly(a), b)),
            (Poly(a), Int(b)) => Poly(op.poly(a, &int_as_poly(b))),
            (a, b) => {
                return Err(RingError::IncompatibleKinds(a.kind_name(), b.kind_name()));
            }
        })
    }
}

#[derive(Clone, Copy)]
enum Op {
    Add,
    Sub,
    Mul,
}

impl Op {
    fn int(self, a: &BigInt, b: &BigInt) -> BigInt {
        match self {
            Op::Add => a + b,
            Op::Sub => a - b,
            Op::Mul => a * b,
        }
    }

    fn rat(self, a: &BigRational, b: &BigRational) -> BigRational {
        match self {
            Op::Add => a + b,
            Op::Sub => a - b,
            Op::Mul => a * b,
        }
    }

    fn poly(self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let mut c = match self {
            Op::Add | Op::Sub => {
                let n = a.len().max(b.len());
                let mut c = vec![BigInt::zero(); n];
                for (i, x) in a.iter().enumerate() {
                    c[i] += x;
                }
                for (i, x) in b.iter().enumerate() {
                    match self {
                        Op::Add => c[i] += x,
                        _ => c[i] -= x,
                    }
                }
                c
            }
            Op::Mul => {
                if a.is_empty() || b.is_empty() {
                    return Vec::new();
                }
                let mut c = vec![BigInt::zero(); a.len() + b.len() - 1];
                for (i, x) in a.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (j, y) in b.iter().enumerate() {
                        c[i + j] += x * y;
                    }
                }
                c
            }
        };
        normalize_poly(&mut c);
        c
    }
}

fn int_as_poly(v: &BigInt) -> Vec<BigInt> {
    if v.is_zero() {
        Vec::new()
    } else {
        vec![v.clone()]
    }
}

fn normalize_poly(c: &mut Vec<BigInt>) {
    while c.last().map_or(false, |x| x.is_zero()) {
        c.pop();
    }
}

/// Long division in Z[q]. Each quotient coefficient must come out integral
/// and the final remainder must vanish; anything else is inexact.
fn poly_exact_div(a: &[BigInt], b: &[BigInt]) -> Result<Vec<BigInt>, RingError> {
    if b.is_empty() {
        return Err(RingError::DivisionByZero);
    }
    if a.is_empty() {
        return Ok(Vec::new());
    }
    if a.len() < b.len() {
        return Err(RingError::InexactDivision);
    }
    let mut rem = a.to_vec();
    let qlen = a.len() - b.len() + 1;
    let mut quot = vec![BigInt::zero(); qlen];
    let blead = &b[b.len() - 1];
    for k in (0..qlen).rev() {
        let lead = rem[k + b.len() - 1].clone();
        if lead.is_zero() {
            continue;
        }
        let (c, r) = num_integer::Integer::div_rem(&lead, blead);
        if !r.is_zero() {
            return Err(RingError::InexactDivision);
        }
        for (i, bi) in b.iter().enumerate() {
            rem[k + i] -= &c * bi;
        }
        quot[k] = c;
    }
    if rem.iter().any(|x| !x.is_zero()) {
        return Err(RingError::InexactDivision);
    }
    normalize_poly(&mut quot);
    Ok(quot)
}

fn parse_int(t: &str) -> Result<BigInt, RingError> {
    t.parse::<BigInt>()
        .map_err(|e| RingError::Parse(format!("bad integer {t:?}: {e}")))
}

fn parse_rational(t: &str) -> Result<RingElem, RingError> {
    let mut parts = t.splitn(2, '/');
    let num = parse_int(parts.next().unwrap_or("").trim())?;
    let den = parse_int(parts.next().unwrap_or("").trim())?;
    RingElem::rational(num, den)
}

/// Accepts "c0 + c1*q + c2*q^2" with zero terms omissible, `q^k` alone
/// meaning the monomial, and `*` optional.
fn parse_poly(t: &str) -> Result<RingElem, RingError> {
    let mut coeffs: Vec<BigInt> = Vec::new();
    let mut rest = t.trim();
    let mut sign = BigInt::one();
    if let Some(r) = rest.strip_prefix('-') {
        sign = -sign;
        rest = r.trim_start();
    } else if let Some(r) = rest.strip_prefix('+') {
        rest = r.trim_start();
    }
    loop {
        // split off one term at the next top-level + or -
        let split = rest.find(['+', '-']);
        let (term, tail) = match split {
            Some(i) => (&rest[..i], &rest[i..]),
            None => (rest, ""),
        };
        let term = term.trim();
        if term.is_empty() {
            return Err(RingError::Parse(format!("empty term in polynomial {t:?}")));
        }
        let (coeff, exp) = parse_poly_term(term)?;
        if coeffs.len() < exp + 1 {
            coeffs.resize(exp + 1, BigInt::zero());
        }
        coeffs[exp] += &sign * coeff;
        if tail.is_empty() {
            break;
        }
        sign = if tail.starts_with('-') {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        rest = tail[1..].trim_start();
    }
    normalize_poly(&mut coeffs);
    Ok(RingElem::Poly(coeffs))
}

fn parse_poly_term(term: &str) -> Result<(BigInt, usize), RingError> {
    match term.find('q') {
        None => Ok((parse_int(term)?, 0)),
        Some(i) => {
            let coeff_part = term[..i].trim().trim_end_matches('*').trim();
            let coeff = if coeff_part.is_empty() {
                BigInt::one()
            } else {
                parse_int(coeff_part)?
            };
            let after = term[i + 1..].trim();
            let exp = if after.is_empty() {
                1
            } else if let Some(e) = after.strip_prefix('^') {
                e.trim()
                    .parse::<usize>()
                    .map_err(|e| RingError::Parse(format!("bad exponent in {term:?}: {e}")))?
            } else {
                return Err(RingError::Parse(format!("bad term {term:?}")));
            };
            Ok((coeff, exp))
        }
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingElem::Int(v) => write!(f, "{v}"),
            RingElem::Rat(v) => write!(f, "{}/{}", v.numer(), v.denom()),
            RingElem::Poly(c) => {
                if c.is_empty() {
                    return write!(f, "0*q^0");
                }
                if c.len() == 1 {
                    return write!(f, "{}*q^0", c[0]);
                }
                let mut first = true;
                for (d, x) in c.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    let mag = x.abs();
                    if first {
                        if x.is_negative() {
                            write!(f, "-")?;
                        }
                        first = false;
                    } else if x.is_negative() {
                        write!(f, "-")?;
                    } else {
                        write!(f, "+")?;
                    }
                    match d {
                        0 => write!(f, "{mag}")?,
                        _ => {
                            if !mag.is_one() {
                                write!(f, "{mag}*")?;
                            }
                            if d == 1 {
                                write!(f, "q")?;
                            } else {
                                write!(f, "q^{d}")?;
                            }
                        }
                    }
                }
                Ok(())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q() -> RingElem {
        RingElem::monomial(1)
    }

    #[test]
    fn rational_product() {
        let half = RingElem::rational(1, 2).unwrap();
        assert_eq!(half.mul(&half).unwrap(), RingElem::rational(1, 4).unwrap());
    }

    #[test]
    fn binomial_square() {
        let p = RingElem::one().add(&q()).unwrap();
        assert_eq!(p.mul(&p).unwrap(), RingElem::poly(vec![1, 2, 1]));
    }

    #[test]
    fn integer_product() {
        let big = RingElem::int(1 << 10);
        assert_eq!(big.mul(&big).unwrap(), RingElem::int(1048576));
    }

    #[test]
    fn exact_div_integers() {
        // 2 * 8^2 / 2 = 64
        let n = RingElem::int(2).mul(&RingElem::int(64)).unwrap();
        assert_eq!(n.exact_div(&RingElem::int(2)).unwrap(), RingElem::int(64));
        assert_eq!(
            RingElem::int(5).exact_div(&RingElem::int(2)),
            Err(RingError::InexactDivision)
        );
        assert_eq!(
            RingElem::int(5).exact_div(&RingElem::zero()),
            Err(RingError::DivisionByZero)
        );
    }

    #[test]
    fn exact_div_polys() {
        let geom = RingElem::poly(vec![-1, 0, 0, 1]); // q^3 - 1
        let lin = RingElem::poly(vec![-1, 1]); // q - 1
        assert_eq!(geom.exact_div(&lin).unwrap(), RingElem::poly(vec![1, 1, 1]));
        let a = RingElem::poly(vec![1, 1]); // 1 + q
        let b = RingElem::poly(vec![1, 0, 1]); // 1 + q^2
        assert_eq!(a.exact_div(&b), Err(RingError::InexactDivision));
        // non-monic divisor that divides in Z[q]
        let f = RingElem::poly(vec![2, 2]); // 2 + 2q
        assert_eq!(f.exact_div(&RingElem::int(2)).unwrap(), RingElem::poly(vec![1, 1]));
        // but q / 2q is not a division in Z[q]
        let twoq = RingElem::poly(vec![0, 2]);
        assert_eq!(q().exact_div(&twoq), Err(RingError::InexactDivision));
    }

    #[test]
    fn eval_at_one_cases() {
        assert_eq!(
            RingElem::poly(vec![1, 1]).eval_at_one().unwrap(),
            RingElem::int(2)
        );
        assert_eq!(RingElem::int(7).eval_at_one().unwrap(), RingElem::int(7));
        assert!(RingElem::rational(1, 2).unwrap().eval_at_one().is_err());
    }

    #[test]
    fn kind_mixing_is_rejected() {
        let r = RingElem::rational(1, 2).unwrap();
        let p = q();
        assert!(matches!(r.add(&p), Err(RingError::IncompatibleKinds(_, _))));
        assert!(matches!(p.mul(&r), Err(RingError::IncompatibleKinds(_, _))));
    }

    #[test]
    fn display_and_parse_round_trip() {
        let samples = vec![
            RingElem::int(-42),
            RingElem::zero(),
            RingElem::rational(-5, 2).unwrap(),
            RingElem::rational(3, 1).unwrap(),
            RingElem::poly(Vec::<i64>::new()),
            RingElem::poly(vec![7]),
            RingElem::poly(vec![-1, 2, 0, -3]),
            RingElem::poly(vec![0, 1]),
            RingElem::poly(vec![1, 1]),
        ];
        for s in samples {
            let text = s.to_string();
            assert_eq!(RingElem::parse(&text).unwrap(), s, "round trip of {text}");
        }
        // spec-style spellings
        assert_eq!(
            RingElem::parse("1 + 2*q + q^2").unwrap(),
            RingElem::poly(vec![1, 2, 1])
        );
        assert_eq!(RingElem::parse("q^4").unwrap(), RingElem::monomial(4));
        assert_eq!(RingElem::parse("3q").unwrap(), RingElem::poly(vec![0, 3]));
    }

    #[test]
    fn zero_polynomial_convention() {
        // the zero polynomial is the empty list, and normalization is idempotent
        let z = RingElem::poly(vec![0, 0, 0]);
        assert_eq!(z, RingElem::Poly(vec![]));
        assert!(z.is_zero());
        assert_eq!(z.degree(), None);
        assert_eq!(RingElem::parse("0*q^0").unwrap(), z);
    }

    fn arb_elem() -> impl Strategy<Value = RingElem> {
        prop_oneof![
            (-20i64..20).prop_map(RingElem::int),
            ((-20i64..20), (1i64..9)).prop_map(|(n, d)| RingElem::rational(n, d).unwrap()),
            proptest::collection::vec(-9i64..9, 0..5).prop_map(RingElem::poly),
        ]
    }

    // integers promote into both other kinds, so pair integers freely
    fn arb_pair() -> impl Strategy<Value = (RingElem, RingElem)> {
        arb_elem().prop_flat_map(|a| {
            let b = match a {
                RingElem::Rat(_) => prop_oneof![
                    (-20i64..20).prop_map(RingElem::int),
                    ((-20i64..20), (1i64..9)).prop_map(|(n, d)| RingElem::rational(n, d).unwrap()),
                ]
                .boxed(),
                _ => prop_oneof![
                    (-20i64..20).prop_map(RingElem::int),
                    proptest::collection::vec(-9i64..9, 0..5).prop_map(RingElem::poly),
                ]
                .boxed(),
            };
            (Just(a), b)
        })
    }

    proptest! {
        #[test]
        fn commutativity((a, b) in arb_pair()) {
            prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        }

        #[test]
        fn associativity_and_distributivity(a in arb_elem(), b in arb_elem(), c in arb_elem()) {
            // keep kinds compatible: replace rationals when polys present and vice versa
            let any_poly = [&a, &b, &c].iter().any(|x| matches!(x, RingElem::Poly(_)));
            let fix = |x: RingElem| match (&x, any_poly) {
                (RingElem::Rat(_), true) => RingElem::int(1),
                (RingElem::Poly(_), false) => x,
                _ => x,
            };
            let (a, b, c) = (fix(a), fix(b), fix(c));
            let ab_c = a.add(&b).unwrap().add(&c).unwrap();
            let a_bc = a.add(&b.add(&c).unwrap()).unwrap();
            prop_assert_eq!(ab_c, a_bc);
            let lhs = a.mul(&b.add(&c).unwrap()).unwrap();
            let rhs = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn identities((a, _b) in arb_pair()) {
            prop_assert_eq!(a.add(&RingElem::zero()).unwrap(), a.clone());
            prop_assert_eq!(a.mul(&RingElem::one()).unwrap(), a.clone());
        }

        #[test]
        fn div_undoes_mul((a, b) in arb_pair()) {
            prop_assume!(!b.is_zero());
            let prod = a.mul(&b).unwrap();
            prop_assert_eq!(prod.exact_div(&b).unwrap(), match (&a, &b) {
                // promotion may change the kind of the quotient
                (RingElem::Int(v), RingElem::Rat(_)) => RingElem::Rat(BigRational::from(v.clone())),
                (RingElem::Int(v), RingElem::Poly(_)) => RingElem::poly(vec![v.clone()]),
                _ => a.clone(),
            });
        }

        #[test]
        fn eval_at_one_is_a_homomorphism(a in proptest::collection::vec(-9i64..9, 0..6),
                                         b in proptest::collection::vec(-9i64..9, 0..6)) {
            let (a, b) = (RingElem::poly(a), RingElem::poly(b));
            let ev = |x: &RingElem| x.eval_at_one().unwrap();
            prop_assert_eq!(ev(&a.mul(&b).unwrap()), ev(&a).mul(&ev(&b)).unwrap());
            prop_assert_eq!(ev(&a.add(&b).unwrap()), ev(&a).add(&ev(&b)).unwrap());
        }
    }
}
