//! Exact arithmetic in the quadratic field ℚ(φ), φ² = φ + 1.
//!
//! Every coordinate used by the geometry and PET code is an element
//! `a + b·φ` with rational `a`, `b`. Comparisons are decided exactly from
//! the signs of `2a + b` and `b` (see [`Golden::signum`]), so no predicate
//! ever touches floating point.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Golden ratio as a float, used only for display and SVG output.
pub const PHI_F64: f64 = 1.618_033_988_749_895;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse {0:?} as an element of Q(phi)")]
    Parse(String),
}

/// An element `a + b·φ` of ℚ(φ). Both coefficients are kept in lowest terms,
/// so structural equality is numeric equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Golden {
    a: BigRational,
    b: BigRational,
}

fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

impl Golden {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        Golden { a, b }
    }

    /// `a + b·φ` with integer coefficients.
    pub fn from_ints(a: i64, b: i64) -> Self {
        Golden::new(rat(a, 1), rat(b, 1))
    }

    /// `p/q + (r/s)·φ`.
    pub fn from_ratios(p: i64, q: i64, r: i64, s: i64) -> Self {
        Golden::new(rat(p, q), rat(r, s))
    }

    pub fn from_rational(a: BigRational) -> Self {
        Golden::new(a, BigRational::zero())
    }

    pub fn zero() -> Self {
        Golden::default()
    }

    pub fn one() -> Self {
        Golden::from_ints(1, 0)
    }

    pub fn phi() -> Self {
        Golden::from_ints(0, 1)
    }

    /// φ^k for any integer k, using φ⁻¹ = φ − 1.
    pub fn phi_pow(k: i32) -> Self {
        let base = if k >= 0 { Golden::phi() } else { Golden::from_ints(-1, 1) };
        let mut out = Golden::one();
        for _ in 0..k.unsigned_abs() {
            out = &out * &base;
        }
        out
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn phi_part(&self) -> &BigRational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Galois conjugate `a + b·φ̄` with φ̄ = 1 − φ.
    pub fn conjugate(&self) -> Self {
        Golden::new(&self.a + &self.b, -&self.b)
    }

    /// Field norm `x · conj(x) = a² + ab − b²`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a + &self.a * &self.b - &self.b * &self.b
    }

    pub fn inverse(&self) -> Result<Self, NumError> {
        if self.is_zero() {
            return Err(NumError::DivisionByZero);
        }
        let n = self.norm();
        let c = self.conjugate();
        Ok(Golden::new(c.a / &n, c.b / &n))
    }

    pub fn checked_div(&self, other: &Golden) -> Result<Self, NumError> {
        Ok(self * &other.inverse()?)
    }

    /// Sign of the real embedding value `a + b(1+√5)/2`.
    ///
    /// With `p = 2a + b` the value is `(p + b√5)/2`; when `p` and `b` have
    /// opposite signs the answer is the sign of `p² − 5b²` (times sign of p).
    pub fn signum(&self) -> Ordering {
        let p: BigRational = &self.a * BigRational::from_integer(BigInt::from(2)) + &self.b;
        let sp = p.cmp(&BigRational::zero());
        let sb = self.b.cmp(&BigRational::zero());
        match (sp, sb) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => s,
            (Ordering::Greater, Ordering::Greater) => Ordering::Greater,
            (Ordering::Less, Ordering::Less) => Ordering::Less,
            (sp, _) => {
                let lhs = &p * &p;
                let rhs = &self.b * &self.b * BigRational::from_integer(BigInt::from(5));
                match lhs.cmp(&rhs) {
                    Ordering::Equal => Ordering::Equal,
                    Ordering::Greater => sp,
                    Ordering::Less => sp.reverse(),
                }
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.a.to_f64().unwrap_or(f64::NAN) + self.b.to_f64().unwrap_or(f64::NAN) * PHI_F64
    }

    /// Largest integer `n` with `n <= value(self)`, decided exactly.
    pub fn floor(&self) -> BigInt {
        let approx = self.to_f64();
        let mut n = if approx.is_finite() {
            BigInt::from(approx.floor() as i64)
        } else {
            // Huge coefficients: bracket with the rational parts.
            (&self.a + &self.b * rat(1618, 1000)).floor().to_integer()
        };
        loop {
            let nv = Golden::from_rational(BigRational::from_integer(n.clone()));
            if self < &nv {
                n -= 1;
                continue;
            }
            let next = Golden::from_rational(BigRational::from_integer(&n + 1));
            if self >= &next {
                n += 1;
                continue;
            }
            return n;
        }
    }

    /// `self − step·floor(self/step)`, the representative in `[0, step)`.
    pub fn rem_euclid(&self, step: &Golden) -> Result<Golden, NumError> {
        let q = self.checked_div(step)?;
        let k = Golden::from_rational(BigRational::from_integer(q.floor()));
        let r = self - &(step * &k);
        // step may be negative; bring into [0, |step|)
        if r.is_negative() {
            Ok(r + step.abs())
        } else {
            Ok(r)
        }
    }

    pub fn min(self, other: Golden) -> Golden {
        if other < self {
            other
        } else {
            self
        }
    }

    pub fn max(self, other: Golden) -> Golden {
        if other > self {
            other
        } else {
            self
        }
    }
}

impl PartialOrd for Golden {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Golden {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.b == other.b {
            return self.a.cmp(&other.a);
        }
        (self - other).signum()
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl<'a> $tr<&'a Golden> for &'a Golden {
            type Output = Golden;
            fn $method(self, rhs: &'a Golden) -> Golden {
                let f: fn(&Golden, &Golden) -> Golden = $body;
                f(self, rhs)
            }
        }
        impl $tr<Golden> for Golden {
            type Output = Golden;
            fn $method(self, rhs: Golden) -> Golden {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a Golden> for Golden {
            type Output = Golden;
            fn $method(self, rhs: &'a Golden) -> Golden {
                (&self).$method(rhs)
            }
        }
        impl<'a> $tr<Golden> for &'a Golden {
            type Output = Golden;
            fn $method(self, rhs: Golden) -> Golden {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |x, y| Golden::new(&x.a + &y.a, &x.b + &y.b));
forward_binop!(Sub, sub, |x, y| Golden::new(&x.a - &y.a, &x.b - &y.b));
// (a1 + b1φ)(a2 + b2φ) = a1a2 + b1b2 + (a1b2 + a2b1 + b1b2)φ
forward_binop!(Mul, mul, |x, y| {
    let bb = &x.b * &y.b;
    Golden::new(&x.a * &y.a + &bb, &x.a * &y.b + &x.b * &y.a + bb)
});
forward_binop!(Div, div, |x, y| x
    .checked_div(y)
    .expect("division by zero in Q(phi)"));

impl AddAssign<&Golden> for Golden {
    fn add_assign(&mut self, rhs: &Golden) {
        self.a += &rhs.a;
        self.b += &rhs.b;
    }
}

impl SubAssign<&Golden> for Golden {
    fn sub_assign(&mut self, rhs: &Golden) {
        self.a -= &rhs.a;
        self.b -= &rhs.b;
    }
}

impl Neg for Golden {
    type Output = Golden;
    fn neg(self) -> Golden {
        Golden::new(-self.a, -self.b)
    }
}

impl Neg for &Golden {
    type Output = Golden;
    fn neg(self) -> Golden {
        Golden::new(-&self.a, -&self.b)
    }
}

impl Sum for Golden {
    fn sum<I: Iterator<Item = Golden>>(iter: I) -> Golden {
        iter.fold(Golden::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Golden> for Golden {
    fn sum<I: Iterator<Item = &'a Golden>>(iter: I) -> Golden {
        iter.fold(Golden::zero(), |acc, x| acc + x)
    }
}

impl From<i64> for Golden {
    fn from(n: i64) -> Self {
        Golden::from_ints(n, 0)
    }
}

impl From<BigRational> for Golden {
    fn from(r: BigRational) -> Self {
        Golden::from_rational(r)
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Canonical text form `a+b*phi` (or `a-b*phi`), coefficients as `p/q`.
impl fmt::Display for Golden {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_negative() {
            write!(f, "{}-{}*phi", fmt_rat(&self.a), fmt_rat(&-&self.b))
        } else {
            write!(f, "{}+{}*phi", fmt_rat(&self.a), fmt_rat(&self.b))
        }
    }
}

impl fmt::Debug for Golden {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (~{:.6})", self, self.to_f64())
    }
}

fn parse_rat(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(BigRational::new(p, q))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

impl FromStr for Golden {
    type Err = NumError;

    /// Accepts `a+b*phi`, `a-b*phi`, `b*phi`, `phi`, `-phi` and plain
    /// rationals `p/q` or integers.
    fn from_str(s: &str) -> Result<Self, NumError> {
        let err = || NumError::Parse(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let Some(head) = t.strip_suffix("phi") else {
            return parse_rat(&t).map(Golden::from_rational).ok_or_else(err);
        };
        let head = head.strip_suffix('*').unwrap_or(head);
        // split "a+b" / "a-b" at the last sign that is not leading
        let split = head
            .char_indices()
            .filter(|&(i, c)| i > 0 && (c == '+' || c == '-'))
            .map(|(i, _)| i)
            .rfind(|&i| !matches!(head.as_bytes()[i - 1], b'/' | b'+' | b'-'));
        let (a_str, b_str) = match split {
            Some(i) => (&head[..i], &head[i..]),
            None => ("0", head),
        };
        let b_str = b_str.strip_prefix('+').unwrap_or(b_str);
        let b = match b_str {
            "" => BigRational::one(),
            "-" => -BigRational::one(),
            _ => parse_rat(b_str).ok_or_else(err)?,
        };
        let a = parse_rat(a_str).ok_or_else(err)?;
        Ok(Golden::new(a, b))
    }
}

impl Serialize for Golden {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Golden {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Text(String),
            Int(i64),
        }
        match Repr::deserialize(deserializer)? {
            Repr::Text(s) => s.parse().map_err(serde::de::Error::custom),
            Repr::Int(n) => Ok(Golden::from(n)),
        }
    }
}
