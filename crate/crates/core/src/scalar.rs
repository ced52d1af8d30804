//! Scalars: exact elements of Q(√2) and 64-bit floats behind one trait.
//!
//! Every root system used here lives in Q(√2)^{n+2}: the extra Euclidean
//! direction of R^{n+1} inside R^{n+1,1} has unit vector (1,0,…,0,1)/√2, so the
//! exact kernel works over the quadratic field rather than plain Q. Values
//! with a vanishing √2 part behave exactly like rationals and take a fast path.

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub type Rational = BigRational;

/// `a + b√2` with rational `a`, `b`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Exact {
    a: Rational,
    b: Rational,
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("cannot parse `{input}` as an exact scalar: {reason}")]
pub struct ParseScalarError {
    pub input: String,
    pub reason: &'static str,
}

pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

impl Exact {
    pub fn new(a: Rational, b: Rational) -> Self {
        Exact { a, b }
    }

    pub fn rational(a: Rational) -> Self {
        Exact { a, b: Rational::zero() }
    }

    pub fn int(v: i64) -> Self {
        Exact::rational(Rational::from_integer(BigInt::from(v)))
    }

    pub fn frac(p: i64, q: i64) -> Self {
        Exact::rational(rat(p, q))
    }

    pub fn sqrt2() -> Self {
        Exact { a: Rational::zero(), b: Rational::one() }
    }

    /// Rational part.
    pub fn re(&self) -> &Rational {
        &self.a
    }

    /// Coefficient of √2.
    pub fn surd(&self) -> &Rational {
        &self.b
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.a)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.b.is_zero() && self.a.is_one()
    }

    /// Galois conjugate `a - b√2`.
    pub fn conj(&self) -> Exact {
        Exact { a: self.a.clone(), b: -&self.b }
    }

    /// Field norm `a² - 2b²`; zero only for zero.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - Rational::from_integer(BigInt::from(2)) * &self.b * &self.b
    }

    pub fn inv(&self) -> Option<Exact> {
        if self.is_zero() {
            return None;
        }
        if self.is_rational() {
            return Some(Exact::rational(self.a.recip()));
        }
        let n = self.norm();
        Some(Exact { a: &self.a / &n, b: -&self.b / &n })
    }

    pub fn signum(&self) -> i32 {
        fn sgn(r: &Rational) -> i32 {
            if r.is_zero() {
                0
            } else if r.is_positive() {
                1
            } else {
                -1
            }
        }
        let (sa, sb) = (sgn(&self.a), sgn(&self.b));
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        // opposite signs: compare a² with 2b²
        let a2 = &self.a * &self.a;
        let b2 = Rational::from_integer(BigInt::from(2)) * &self.b * &self.b;
        match a2.cmp(&b2) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn abs(&self) -> Exact {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        if self.b.is_zero() {
            a
        } else {
            a + self.b.to_f64().unwrap_or(f64::NAN) * std::f64::consts::SQRT_2
        }
    }

    /// Integer power; `None` for a negative power of zero.
    pub fn pow(&self, e: i32) -> Option<Exact> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Exact::int(1);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Some(acc)
    }
}

impl From<Rational> for Exact {
    fn from(a: Rational) -> Self {
        Exact::rational(a)
    }
}

impl From<i64> for Exact {
    fn from(v: i64) -> Self {
        Exact::int(v)
    }
}

impl PartialOrd for Exact {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Exact {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum().cmp(&0)
    }
}

impl<'a> Add<&'a Exact> for &'a Exact {
    type Output = Exact;
    fn add(self, rhs: &Exact) -> Exact {
        if self.b.is_zero() && rhs.b.is_zero() {
            Exact::rational(&self.a + &rhs.a)
        } else {
            Exact { a: &self.a + &rhs.a, b: &self.b + &rhs.b }
        }
    }
}

impl<'a> Sub<&'a Exact> for &'a Exact {
    type Output = Exact;
    fn sub(self, rhs: &Exact) -> Exact {
        if self.b.is_zero() && rhs.b.is_zero() {
            Exact::rational(&self.a - &rhs.a)
        } else {
            Exact { a: &self.a - &rhs.a, b: &self.b - &rhs.b }
        }
    }
}

impl<'a> Mul<&'a Exact> for &'a Exact {
    type Output = Exact;
    fn mul(self, rhs: &Exact) -> Exact {
        match (self.b.is_zero(), rhs.b.is_zero()) {
            (true, true) => Exact::rational(&self.a * &rhs.a),
            (true, false) => Exact { a: &self.a * &rhs.a, b: &self.a * &rhs.b },
            (false, true) => Exact { a: &self.a * &rhs.a, b: &self.b * &rhs.a },
            (false, false) => {
                let two = Rational::from_integer(BigInt::from(2));
                Exact {
                    a: &self.a * &rhs.a + two * &self.b * &rhs.b,
                    b: &self.a * &rhs.b + &self.b * &rhs.a,
                }
            }
        }
    }
}

impl<'a> Div<&'a Exact> for &'a Exact {
    type Output = Exact;
    fn div(self, rhs: &Exact) -> Exact {
        if rhs.b.is_zero() {
            assert!(!rhs.a.is_zero(), "exact division by zero");
            return Exact { a: &self.a / &rhs.a, b: &self.b / &rhs.a };
        }
        self * &rhs.inv().expect("exact division by zero")
    }
}

impl Neg for &Exact {
    type Output = Exact;
    fn neg(self) -> Exact {
        Exact { a: -&self.a, b: -&self.b }
    }
}

impl Neg for Exact {
    type Output = Exact;
    fn neg(self) -> Exact {
        Exact { a: -self.a, b: -self.b }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Exact> for Exact {
            type Output = Exact;
            fn $m(self, rhs: Exact) -> Exact { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a Exact> for Exact {
            type Output = Exact;
            fn $m(self, rhs: &Exact) -> Exact { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl AddAssign<&Exact> for Exact {
    fn add_assign(&mut self, rhs: &Exact) {
        self.a += &rhs.a;
        if !rhs.b.is_zero() {
            self.b += &rhs.b;
        }
    }
}

impl SubAssign<&Exact> for Exact {
    fn sub_assign(&mut self, rhs: &Exact) {
        self.a -= &rhs.a;
        if !rhs.b.is_zero() {
            self.b -= &rhs.b;
        }
    }
}

impl MulAssign<&Exact> for Exact {
    fn mul_assign(&mut self, rhs: &Exact) {
        *self = &*self * rhs;
    }
}

fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Rationals print as `p/q`; surds as `a+b*sqrt2`, `b*sqrt2`, `sqrt2`.
impl fmt::Display for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return f.write_str(&fmt_rational(&self.a));
        }
        let surd = if self.b.is_one() {
            "sqrt2".to_string()
        } else if (-&self.b).is_one() {
            "-sqrt2".to_string()
        } else {
            format!("{}*sqrt2", fmt_rational(&self.b))
        };
        if self.a.is_zero() {
            f.write_str(&surd)
        } else if surd.starts_with('-') {
            write!(f, "{}{}", fmt_rational(&self.a), surd)
        } else {
            write!(f, "{}+{}", fmt_rational(&self.a), surd)
        }
    }
}

impl fmt::Debug for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses `p`, `p/q`, or a decimal such as `-0.125` / `1e-3` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational, ParseScalarError> {
    let err = |reason| ParseScalarError { input: s.to_string(), reason };
    let t = s.trim();
    if t.is_empty() {
        return Err(err("empty"));
    }
    if let Some((p, q)) = t.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| err("bad numerator"))?;
        let q = BigInt::from_str(q.trim()).map_err(|_| err("bad denominator"))?;
        if q.is_zero() {
            return Err(err("zero denominator"));
        }
        return Ok(Rational::new(p, q));
    }
    let (mantissa, exp) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i32>().map_err(|_| err("bad exponent"))?),
        None => (t, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err("no digits"));
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(err("invalid digit"));
    }
    let all = format!("{int_part}{frac_part}");
    let numer = BigInt::from_str(if all.is_empty() { "0" } else { &all }).map_err(|_| err("bad digits"))?;
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut r = if scale >= 0 {
        Rational::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(numer, num_traits::pow(ten, scale.unsigned_abs() as usize))
    };
    if neg {
        r = -r;
    }
    Ok(r)
}

impl FromStr for Exact {
    type Err = ParseScalarError;

    /// Accepts everything [`Exact`]'s `Display` prints, plus decimals.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let err = |reason| ParseScalarError { input: s.to_string(), reason };
        let Some(pos) = t.find("sqrt2") else {
            return parse_rational(&t).map(Exact::rational);
        };
        if pos + 5 != t.len() {
            return Err(err("sqrt2 must be the last factor"));
        }
        let head = &t[..pos];
        // split head into rational part and surd coefficient at the last top-level sign
        let split = head
            .char_indices()
            .rev()
            .find(|&(i, c)| (c == '+' || c == '-') && i > 0 && !head[..i].ends_with(['e', 'E']))
            .map(|(i, _)| i);
        let (a_str, b_str) = match split {
            Some(i) => (&head[..i], &head[i..]),
            None => ("", head),
        };
        let b_str = b_str.strip_suffix('*').unwrap_or(b_str);
        let b = match b_str {
            "" | "+" => Rational::one(),
            "-" => -Rational::one(),
            other => parse_rational(other)?,
        };
        let a = if a_str.is_empty() { Rational::zero() } else { parse_rational(a_str)? };
        Ok(Exact { a, b })
    }
}

/// Elementary functions available to expression evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ElemFn {
    Exp,
    Ln,
    Sin,
    Cos,
}

/// Arithmetic shared by the exact and floating evaluation modes.
///
/// The two modes never mix: generic code is instantiated once per mode.
pub trait Scalar:
    Clone
    + fmt::Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_exact(v: &Exact) -> Self;
    /// Constant with a precomputed float image; floats skip the conversion.
    fn from_const(v: &Exact, _approx: f64) -> Self {
        Self::from_exact(v)
    }
    fn is_zero(&self) -> bool;
    fn signum(&self) -> i32;
    fn to_f64(&self) -> f64;
    fn sqrt2() -> Self;
    /// `None` when the base is zero and the exponent negative.
    fn powi(&self, e: i32) -> Option<Self>;
    /// Real power of a positive base; exact mode supports integer exponents only.
    fn powr(&self, e: &Exact) -> Option<Self>;
    fn elem(&self, f: ElemFn) -> Option<Self>;
}

impl Scalar for Exact {
    const EXACT: bool = true;

    fn zero() -> Self {
        Exact::default()
    }
    fn one() -> Self {
        Exact::int(1)
    }
    fn from_i64(v: i64) -> Self {
        Exact::int(v)
    }
    fn from_exact(v: &Exact) -> Self {
        v.clone()
    }
    fn is_zero(&self) -> bool {
        Exact::is_zero(self)
    }
    fn signum(&self) -> i32 {
        Exact::signum(self)
    }
    fn to_f64(&self) -> f64 {
        Exact::to_f64(self)
    }
    fn sqrt2() -> Self {
        Exact::sqrt2()
    }
    fn powi(&self, e: i32) -> Option<Self> {
        self.pow(e)
    }
    fn powr(&self, e: &Exact) -> Option<Self> {
        let e = e.as_rational().filter(|r| r.is_integer())?;
        self.pow(e.to_integer().to_i32()?)
    }
    fn elem(&self, f: ElemFn) -> Option<Self> {
        match f {
            ElemFn::Exp | ElemFn::Cos if self.is_zero() => Some(Exact::int(1)),
            ElemFn::Sin if self.is_zero() => Some(Exact::int(0)),
            ElemFn::Ln if self.is_one() => Some(Exact::int(0)),
            _ => None,
        }
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn from_exact(v: &Exact) -> Self {
        v.to_f64()
    }
    fn from_const(_v: &Exact, approx: f64) -> Self {
        approx
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn signum(&self) -> i32 {
        if *self > 0.0 {
            1
        } else if *self < 0.0 {
            -1
        } else {
            0
        }
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn sqrt2() -> Self {
        std::f64::consts::SQRT_2
    }
    fn powi(&self, e: i32) -> Option<Self> {
        if *self == 0.0 && e < 0 {
            None
        } else {
            Some(f64::powi(*self, e))
        }
    }
    fn powr(&self, e: &Exact) -> Option<Self> {
        if let Some(i) = e.as_rational().filter(|r| r.is_integer()).and_then(|r| r.to_integer().to_i32()) {
            return Scalar::powi(self, i);
        }
        if *self <= 0.0 {
            return None;
        }
        Some(self.powf(e.to_f64()))
    }
    fn elem(&self, f: ElemFn) -> Option<Self> {
        Some(match f {
            ElemFn::Exp => self.exp(),
            ElemFn::Ln if *self > 0.0 => self.ln(),
            ElemFn::Ln => return None,
            ElemFn::Sin => self.sin(),
            ElemFn::Cos => self.cos(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ex(a: (i64, i64), b: (i64, i64)) -> Exact {
        Exact::new(rat(a.0, a.1), rat(b.0, b.1))
    }

    #[test]
    fn sqrt2_squares_to_two() {
        let s = Exact::sqrt2();
        assert_eq!(&s * &s, Exact::int(2));
    }

    #[test]
    fn signum_of_mixed_surds() {
        assert_eq!(ex((3, 2), (-1, 1)).signum(), 1); // 1.5 - 1.414
        assert_eq!(ex((4, 3), (-1, 1)).signum(), -1); // 1.333 - 1.414
        assert_eq!(ex((-3, 2), (1, 1)).signum(), -1);
        assert_eq!(Exact::int(0).signum(), 0);
    }

    #[test]
    fn display_and_parse() {
        for s in ["0", "-3", "1/2", "sqrt2", "-sqrt2", "1/2*sqrt2", "1+sqrt2", "-2/3-1/2*sqrt2"] {
            let v: Exact = s.parse().unwrap();
            assert_eq!(v.to_string(), s);
        }
        assert_eq!("0.125".parse::<Exact>().unwrap(), Exact::frac(1, 8));
        assert_eq!("-1e-2".parse::<Exact>().unwrap(), Exact::frac(-1, 100));
        assert!("1/0".parse::<Exact>().is_err());
        assert!("sqrt2*3".parse::<Exact>().is_err());
    }

    #[test]
    fn pow_and_inverse() {
        let x = ex((1, 1), (1, 1));
        assert_eq!(x.pow(-1).unwrap(), ex((-1, 1), (1, 1))); // 1/(1+√2) = √2-1
        assert_eq!(x.pow(2).unwrap(), ex((3, 1), (2, 1)));
        assert!(Exact::int(0).pow(-2).is_none());
    }

    fn small() -> impl Strategy<Value = Exact> {
        (-9i64..10, 1i64..5, -9i64..10, 1i64..5).prop_map(|(a, p, b, q)| ex((a, p), (b, q)))
    }

    proptest! {
        #[test]
        fn field_axioms(x in small(), y in small(), z in small()) {
            prop_assert_eq!(&(&x + &y) * &z, &(&x * &z) + &(&y * &z));
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            if !y.is_zero() {
                prop_assert_eq!(&(&x / &y) * &y, x.clone());
            }
            let diff = (x.to_f64() * y.to_f64() - (&x * &y).to_f64()).abs();
            prop_assert!(diff < 1e-9);
            prop_assert_eq!(x.cmp(&y), x.to_f64().partial_cmp(&y.to_f64()).unwrap());
        }
    }
}
