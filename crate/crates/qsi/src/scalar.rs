//! Exact arithmetic in the field of rational functions in a formal
//! parameter `q` with arbitrary-precision integer coefficients.
//!
//! Keeping `q` formal means no specialization of `q` to a root of unity
//! can ever occur, so q-integers `[m]_q` are nonzero for every `m != 0`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum ScalarError {
    #[error("division by zero in Q(q)")]
    DivisionByZero,
    #[error("denominator vanishes at the evaluation point")]
    PoleAtPoint,
    #[error("evaluation point must avoid 0 and 1")]
    DegeneratePoint,
    #[error("q-factorial requires a non-negative argument")]
    NegativeFactorial,
}

/// Polynomial in `q` over the integers, sparse by exponent.
///
/// Invariant: no stored coefficient is zero; the zero polynomial is the
/// empty map.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QPoly {
    coeffs: BTreeMap<u32, BigInt>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { coeffs: BTreeMap::new() }
    }

    pub fn one() -> Self {
        QPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        QPoly::monomial(0, c)
    }

    /// `c * q^e`
    pub fn monomial(e: u32, c: BigInt) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(e, c);
        }
        QPoly { coeffs }
    }

    /// The variable `q` itself.
    pub fn var() -> Self {
        QPoly::monomial(1, BigInt::one())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn leading_coeff(&self) -> BigInt {
        self.coeffs
            .values()
            .next_back()
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn coeff(&self, e: u32) -> BigInt {
        self.coeffs.get(&e).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&u32, &BigInt)> {
        self.coeffs.iter()
    }

    fn from_map(coeffs: BTreeMap<u32, BigInt>) -> Self {
        let coeffs = coeffs.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        QPoly { coeffs }
    }

    pub fn add(&self, other: &QPoly) -> QPoly {
        let mut out = self.coeffs.clone();
        for (e, c) in &other.coeffs {
            let entry = out.entry(*e).or_insert_with(BigInt::zero);
            *entry += c;
        }
        QPoly::from_map(out)
    }

    pub fn neg(&self) -> QPoly {
        QPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &QPoly) -> QPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &QPoly) -> QPoly {
        let mut out: BTreeMap<u32, BigInt> = BTreeMap::new();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &other.coeffs {
                let entry = out.entry(e1 + e2).or_insert_with(BigInt::zero);
                *entry += c1 * c2;
            }
        }
        QPoly::from_map(out)
    }

    pub fn mul_int(&self, c: &BigInt) -> QPoly {
        if c.is_zero() {
            return QPoly::zero();
        }
        QPoly {
            coeffs: self.coeffs.iter().map(|(e, a)| (*e, a * c)).collect(),
        }
    }

    /// gcd of the integer coefficients, always non-negative.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.coeffs.values() {
            g = g.gcd(c);
        }
        g
    }

    /// Exact division by another polynomial; panics if not divisible.
    /// Callers only divide by known factors (gcds).
    pub(crate) fn div_exact(&self, d: &QPoly) -> QPoly {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut rem = self.clone();
        let mut quot: BTreeMap<u32, BigInt> = BTreeMap::new();
        let dd = d.degree().unwrap();
        let dl = d.leading_coeff();
        while let Some(rd) = rem.degree() {
            assert!(rd >= dd, "inexact polynomial division");
            let rl = rem.leading_coeff();
            let (c, r) = rl.div_rem(&dl);
            assert!(r.is_zero(), "inexact polynomial division");
            let e = rd - dd;
            quot.insert(e, c.clone());
            rem = rem.sub(&d.mul(&QPoly::monomial(e, c)));
        }
        QPoly::from_map(quot)
    }

    fn primitive_part(&self) -> QPoly {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        QPoly {
            coeffs: self.coeffs.iter().map(|(e, a)| (*e, a / &c)).collect(),
        }
    }

    /// Pseudo-remainder of self by d (both nonzero, deg(self) >= deg(d)).
    fn pseudo_rem(&self, d: &QPoly) -> QPoly {
        let mut rem = self.clone();
        let dd = d.degree().unwrap();
        let dl = d.leading_coeff();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let rl = rem.leading_coeff();
            rem = rem
                .mul_int(&dl)
                .sub(&d.mul(&QPoly::monomial(rd - dd, rl)));
        }
        rem
    }

    /// gcd in Z[q]: positive content times primitive gcd via a primitive
    /// pseudo-remainder sequence.
    pub fn gcd(&self, other: &QPoly) -> QPoly {
        if self.is_zero() {
            return other.positive_normal();
        }
        if other.is_zero() {
            return self.positive_normal();
        }
        let content = self.content().gcd(&other.content());
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        a.positive_normal().mul_int(&content)
    }

    pub fn lcm(&self, other: &QPoly) -> QPoly {
        if self.is_zero() || other.is_zero() {
            return QPoly::zero();
        }
        self.mul(other).div_exact(&self.gcd(other))
    }

    fn positive_normal(&self) -> QPoly {
        if self.leading_coeff().is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn eval(&self, q0: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        let mut pow = BigRational::one();
        let mut last = 0u32;
        for (e, c) in &self.coeffs {
            for _ in last..*e {
                pow *= q0;
            }
            last = *e;
            acc += BigRational::from(c.clone()) * &pow;
        }
        acc
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().rev() {
            if first {
                first = false;
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            match (*e, a.is_one()) {
                (0, _) => write!(f, "{}", a)?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{}*q", a)?,
                (_, true) => write!(f, "q^{}", e)?,
                (_, false) => write!(f, "{}*q^{}", a, e)?,
            }
        }
        Ok(())
    }
}

/// A reduced fraction of integer polynomials in `q`.
///
/// Invariants: the denominator is nonzero, the gcd of numerator and
/// denominator is 1 (integer content included), and the denominator's
/// leading coefficient is positive. Equality is structural.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QScalar {
    num: QPoly,
    den: QPoly,
}

impl QScalar {
    pub fn from_parts(num: QPoly, den: QPoly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: QPoly, den: QPoly) -> Self {
        if num.is_zero() {
            return QScalar { num: QPoly::zero(), den: QPoly::one() };
        }
        let g = num.gcd(&den);
        let mut num = num.div_exact(&g);
        let mut den = den.div_exact(&g);
        if den.leading_coeff().is_negative() {
            num = num.neg();
            den = den.neg();
        }
        QScalar { num, den }
    }

    pub fn zero() -> Self {
        QScalar { num: QPoly::zero(), den: QPoly::one() }
    }

    pub fn one() -> Self {
        QScalar { num: QPoly::one(), den: QPoly::one() }
    }

    pub fn from_int(n: i64) -> Self {
        QScalar { num: QPoly::constant(BigInt::from(n)), den: QPoly::one() }
    }

    pub fn from_poly(num: QPoly) -> Self {
        QScalar { num, den: QPoly::one() }
    }

    /// The formal parameter `q`.
    pub fn q() -> Self {
        QScalar { num: QPoly::var(), den: QPoly::one() }
    }

    /// `q^n` for any integer `n`.
    pub fn q_pow(n: i64) -> Self {
        if n >= 0 {
            QScalar { num: QPoly::monomial(n as u32, BigInt::one()), den: QPoly::one() }
        } else {
            QScalar {
                num: QPoly::one(),
                den: QPoly::monomial((-n) as u32, BigInt::one()),
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == QPoly::one() && self.den == QPoly::one()
    }

    pub fn numerator(&self) -> &QPoly {
        &self.num
    }

    pub fn denominator(&self) -> &QPoly {
        &self.den
    }

    fn add_ref(&self, other: &QScalar) -> QScalar {
        QScalar::reduce(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    fn neg_ref(&self) -> QScalar {
        QScalar { num: self.num.neg(), den: self.den.clone() }
    }

    fn mul_ref(&self, other: &QScalar) -> QScalar {
        QScalar::reduce(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    /// Division signaling a distinct error on a zero divisor.
    pub fn checked_div(&self, other: &QScalar) -> Result<QScalar, ScalarError> {
        if other.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(QScalar::reduce(
            self.num.mul(&other.den),
            self.den.mul(&other.num),
        ))
    }

    pub fn inv(&self) -> Result<QScalar, ScalarError> {
        QScalar::one().checked_div(self)
    }

    /// Exact rational value at `q = q0`; `q0` must avoid 0, 1 and the
    /// poles of the fraction.
    pub fn eval_at(&self, q0: &BigRational) -> Result<BigRational, ScalarError> {
        if q0.is_zero() || q0.is_one() {
            return Err(ScalarError::DegeneratePoint);
        }
        let d = self.den.eval(q0);
        if d.is_zero() {
            return Err(ScalarError::PoleAtPoint);
        }
        Ok(self.num.eval(q0) / d)
    }
}

/// The q-integer `[m]_q = (q^m - 1)/(q - 1)`, defined for every integer.
pub fn qint(m: i64) -> QScalar {
    if m >= 0 {
        // 1 + q + ... + q^{m-1}
        let coeffs = (0..m as u32).map(|e| (e, BigInt::one())).collect();
        QScalar { num: QPoly { coeffs }, den: QPoly::one() }
    } else {
        // (q^m - 1)/(q - 1) = -[|m|]_q / q^{|m|}
        let n = (-m) as u32;
        let coeffs = (0..n).map(|e| (e, BigInt::from(-1))).collect();
        QScalar {
            num: QPoly { coeffs },
            den: QPoly::monomial(n, BigInt::one()),
        }
    }
}

/// The q-factorial `[m]_q! = [1]_q [2]_q ... [m]_q`.
pub fn qfact(m: i64) -> Result<QScalar, ScalarError> {
    if m < 0 {
        return Err(ScalarError::NegativeFactorial);
    }
    let mut acc = QScalar::one();
    for k in 1..=m {
        acc = acc * qint(k);
    }
    Ok(acc)
}

/// The Gaussian binomial `[n choose k]_q`.
pub fn qbinom(n: i64, k: i64) -> Result<QScalar, ScalarError> {
    if k < 0 || k > n {
        return Ok(QScalar::zero());
    }
    let num = qfact(n)?;
    let den = qfact(k)? * qfact(n - k)?;
    num.checked_div(&den)
}

impl fmt::Display for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == QPoly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl Zero for QScalar {
    fn zero() -> Self {
        QScalar::zero()
    }
    fn is_zero(&self) -> bool {
        QScalar::is_zero(self)
    }
}

impl One for QScalar {
    fn one() -> Self {
        QScalar::one()
    }
}

macro_rules! binop_impls {
    ($trait:ident, $method:ident, $imp:expr) => {
        impl $trait for QScalar {
            type Output = QScalar;
            fn $method(self, rhs: QScalar) -> QScalar {
                $imp(&self, &rhs)
            }
        }
        impl $trait<&QScalar> for QScalar {
            type Output = QScalar;
            fn $method(self, rhs: &QScalar) -> QScalar {
                $imp(&self, rhs)
            }
        }
        impl $trait<QScalar> for &QScalar {
            type Output = QScalar;
            fn $method(self, rhs: QScalar) -> QScalar {
                $imp(self, &rhs)
            }
        }
        impl $trait<&QScalar> for &QScalar {
            type Output = QScalar;
            fn $method(self, rhs: &QScalar) -> QScalar {
                $imp(self, rhs)
            }
        }
    };
}

binop_impls!(Add, add, QScalar::add_ref);
binop_impls!(Sub, sub, |a: &QScalar, b: &QScalar| a.add_ref(&b.neg_ref()));
binop_impls!(Mul, mul, QScalar::mul_ref);
binop_impls!(Div, div, |a: &QScalar, b: &QScalar| {
    a.checked_div(b).expect("division by zero in Q(q)")
});

impl Neg for QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        self.neg_ref()
    }
}

impl Neg for &QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        self.neg_ref()
    }
}
