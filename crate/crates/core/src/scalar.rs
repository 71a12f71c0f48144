//! Scalar abstraction shared by every numeric routine in the crate.
//!
//! Everything in the library is written against [`Scalar`], which is a thin
//! bundle of `num-traits` bounds. Exact verification runs on [`Rational`];
//! `f64` and `i64` also satisfy the bound and are handy for quick experiments
//! (the wheel dynamic program, for instance, is happy with integers).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Rem, Sub, SubAssign};
use std::str::FromStr;

/// Numeric bound used throughout the crate.
pub trait Scalar:
    Clone + fmt::Debug + fmt::Display + PartialOrd + Num + Signed + FromPrimitive + Send + Sync + 'static
{
    fn from_int(v: i64) -> Self {
        Self::from_i64(v).expect("scalar type cannot represent an i64")
    }
}

impl<T> Scalar for T where
    T: Clone
        + fmt::Debug
        + fmt::Display
        + PartialOrd
        + Num
        + Signed
        + FromPrimitive
        + Send
        + Sync
        + 'static
{
}

/// Arbitrary-precision rational number, always in lowest terms with a
/// positive denominator.
///
/// Values whose numerator and denominator fit in an `i64` are stored inline;
/// anything larger spills into a boxed [`BigRational`]. The representation is
/// canonical: a value is stored inline if and only if it fits.
#[derive(Clone)]
pub struct Rational(Repr);

#[derive(Clone)]
enum Repr {
    Small(i64, i64),
    Big(Box<BigRational>),
}

const LIMIT: i128 = i64::MAX as i128;

impl Rational {
    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Self::from_i128(numer as i128, denom as i128)
    }

    pub fn integer(v: i64) -> Self {
        Self::from_i128(v as i128, 1)
    }

    fn from_i128(n: i128, d: i128) -> Self {
        let (mut n, mut d) = (n, d);
        if d < 0 {
            n = -n;
            d = -d;
        }
        let g = n.gcd(&d);
        if g > 1 {
            n /= g;
            d /= g;
        }
        if n.abs() <= LIMIT && d <= LIMIT {
            Rational(Repr::Small(n as i64, d as i64))
        } else {
            Rational(Repr::Big(Box::new(BigRational::new(n.into(), d.into()))))
        }
    }

    fn from_big(r: BigRational) -> Self {
        if let (Some(n), Some(d)) = (r.numer().to_i64(), r.denom().to_i64()) {
            if n != i64::MIN && d != i64::MIN {
                return Rational(Repr::Small(n, d));
            }
        }
        Rational(Repr::Big(Box::new(r)))
    }

    pub fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(b) => (**b).clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(n, _) => BigInt::from(*n),
            Repr::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(_, d) => BigInt::from(*d),
            Repr::Big(b) => b.denom().clone(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, d) => *d == 1,
            Repr::Big(b) => b.is_integer(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match &self.0 {
            Repr::Small(n, d) => *n as f64 / *d as f64,
            Repr::Big(b) => b.to_f64().unwrap_or(f64::NAN),
        }
    }

    fn add_ref(&self, rhs: &Rational) -> Rational {
        if let (Repr::Small(a, b), Repr::Small(c, d)) = (&self.0, &rhs.0) {
            if b == d {
                return Self::from_i128(*a as i128 + *c as i128, *b as i128);
            }
            let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
            if let Some(n) = (a * d).checked_add(c * b) {
                return Self::from_i128(n, b * d);
            }
        }
        Self::from_big(self.to_big() + rhs.to_big())
    }

    fn mul_ref(&self, rhs: &Rational) -> Rational {
        if let (Repr::Small(a, b), Repr::Small(c, d)) = (&self.0, &rhs.0) {
            let g1 = a.gcd(d).max(1);
            let g2 = c.gcd(b).max(1);
            let n = (*a / g1) as i128 * (*c / g2) as i128;
            let m = (*b / g2) as i128 * (*d / g1) as i128;
            return Self::from_i128(n, m);
        }
        Self::from_big(self.to_big() * rhs.to_big())
    }

    pub fn recip(&self) -> Rational {
        assert!(!self.is_zero(), "reciprocal of zero");
        match &self.0 {
            Repr::Small(n, d) => Self::from_i128(*d as i128, *n as i128),
            Repr::Big(b) => Self::from_big(b.recip()),
        }
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::zero()
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational::integer(v)
    }
}

impl From<i32> for Rational {
    fn from(v: i32) -> Self {
        Rational::integer(v as i64)
    }
}

impl From<BigRational> for Rational {
    fn from(v: BigRational) -> Self {
        Rational::from_big(v)
    }
}

impl From<BigInt> for Rational {
    fn from(v: BigInt) -> Self {
        Rational::from_big(BigRational::from_integer(v))
    }
}

impl PartialEq for Rational {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => a == c && b == d,
            (Repr::Big(x), Repr::Big(y)) => x == y,
            _ => false,
        }
    }
}

impl Eq for Rational {}

impl Hash for Rational {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.0 {
            Repr::Small(n, d) => {
                n.hash(state);
                d.hash(state);
            }
            Repr::Big(b) => b.hash(state),
        }
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(b) if b.is_integer() => write!(f, "{}", b.numer()),
            Repr::Big(b) => write!(f, "{}/{}", b.numer(), b.denom()),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal `{0}`")]
pub struct ParseRationalError(pub String);

impl FromStr for Rational {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseRationalError(s.to_string());
        let parse_int = |t: &str| -> Result<BigInt, ParseRationalError> {
            let t = t.trim();
            if t.is_empty() || t.starts_with('+') && t.len() == 1 {
                return Err(err());
            }
            t.parse::<BigInt>().map_err(|_| err())
        };
        match s.split_once('/') {
            Some((p, q)) => {
                let p = parse_int(p)?;
                let q = parse_int(q)?;
                if q.is_zero() {
                    return Err(err());
                }
                Ok(Rational::from_big(BigRational::new(p, q)))
            }
            None => Ok(Rational::from(parse_int(s)?)),
        }
    }
}

impl Zero for Rational {
    fn zero() -> Self {
        Rational(Repr::Small(0, 1))
    }

    fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }
}

impl One for Rational {
    fn one() -> Self {
        Rational(Repr::Small(1, 1))
    }
}

impl Neg for Rational {
    type Output = Rational;

    fn neg(self) -> Rational {
        match self.0 {
            Repr::Small(n, d) => Rational(Repr::Small(-n, d)),
            Repr::Big(b) => Rational::from_big(-*b),
        }
    }
}

impl Neg for &Rational {
    type Output = Rational;

    fn neg(self) -> Rational {
        -self.clone()
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                $body(&self, &rhs)
            }
        }
        impl<'a> $tr<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                $body(&self, rhs)
            }
        }
        impl<'a> $tr<Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                $body(self, &rhs)
            }
        }
        impl<'a, 'b> $tr<&'b Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'b Rational) -> Rational {
                $body(self, rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &Rational, b: &Rational| a.add_ref(b));
forward_binop!(Sub, sub, |a: &Rational, b: &Rational| a.add_ref(&-b));
forward_binop!(Mul, mul, |a: &Rational, b: &Rational| a.mul_ref(b));
forward_binop!(Div, div, |a: &Rational, b: &Rational| a.mul_ref(&b.recip()));
forward_binop!(Rem, rem, |a: &Rational, b: &Rational| Rational::from_big(
    a.to_big() % b.to_big()
));

impl AddAssign for Rational {
    fn add_assign(&mut self, rhs: Rational) {
        *self = self.add_ref(&rhs);
    }
}

impl<'a> AddAssign<&'a Rational> for Rational {
    fn add_assign(&mut self, rhs: &'a Rational) {
        *self = self.add_ref(rhs);
    }
}

impl SubAssign for Rational {
    fn sub_assign(&mut self, rhs: Rational) {
        *self = self.add_ref(&-rhs);
    }
}

impl<'a> SubAssign<&'a Rational> for Rational {
    fn sub_assign(&mut self, rhs: &'a Rational) {
        *self = self.add_ref(&-rhs);
    }
}

impl MulAssign for Rational {
    fn mul_assign(&mut self, rhs: Rational) {
        *self = self.mul_ref(&rhs);
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl Num for Rational {
    type FromStrRadixErr = ParseRationalError;

    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        BigRational::from_str_radix(s, radix)
            .map(Rational::from_big)
            .map_err(|_| ParseRationalError(s.to_string()))
    }
}

impl Signed for Rational {
    fn abs(&self) -> Self {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    fn abs_sub(&self, other: &Self) -> Self {
        if self <= other {
            Rational::zero()
        } else {
            self - other
        }
    }

    fn signum(&self) -> Self {
        match self.sign() {
            Ordering::Less => -Rational::one(),
            Ordering::Equal => Rational::zero(),
            Ordering::Greater => Rational::one(),
        }
    }

    fn is_positive(&self) -> bool {
        self.sign() == Ordering::Greater
    }

    fn is_negative(&self) -> bool {
        self.sign() == Ordering::Less
    }
}

impl Rational {
    /// Sign of the value as an ordering against zero.
    pub fn sign(&self) -> Ordering {
        match &self.0 {
            Repr::Small(n, _) => n.cmp(&0),
            Repr::Big(b) => b.numer().sign().cmp(&num_bigint::Sign::NoSign),
        }
    }
}

impl FromPrimitive for Rational {
    fn from_i64(n: i64) -> Option<Self> {
        Some(Rational::integer(n))
    }

    fn from_u64(n: u64) -> Option<Self> {
        Some(Rational::from(BigInt::from(n)))
    }

    fn from_f64(n: f64) -> Option<Self> {
        BigRational::from_float(n).map(Rational::from_big)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn lowest_terms_and_display() {
        assert_eq!(Rational::new(6, -4).to_string(), "-3/2");
        assert_eq!(q("10/5").to_string(), "2");
        assert_eq!(q("-0/7"), Rational::zero());
        assert!(q("5/3") > q("1"));
    }

    #[test]
    fn rejects_bad_literals() {
        assert!("1/0".parse::<Rational>().is_err());
        assert!("abc".parse::<Rational>().is_err());
        assert!("".parse::<Rational>().is_err());
        assert!("1/".parse::<Rational>().is_err());
    }

    #[test]
    fn spills_to_big_and_back() {
        let big = Rational::integer(i64::MAX) * Rational::integer(i64::MAX);
        assert!(matches!(big.0, Repr::Big(_)));
        let back = &big / &Rational::integer(i64::MAX);
        assert!(matches!(back.0, Repr::Small(..)));
        assert_eq!(back, Rational::integer(i64::MAX));
    }

    proptest! {
        #[test]
        fn agrees_with_bigrational(a in -1_000_000_000_000i64..1_000_000_000_000, b in 1i64..1_000_000_000,
                                   c in -1_000_000_000_000i64..1_000_000_000_000, d in 1i64..1_000_000_000) {
            let x = Rational::new(a, b);
            let y = Rational::new(c, d);
            let bx = BigRational::new(a.into(), b.into());
            let by = BigRational::new(c.into(), d.into());
            prop_assert_eq!((&x + &y).to_big(), &bx + &by);
            prop_assert_eq!((&x - &y).to_big(), &bx - &by);
            prop_assert_eq!((&x * &y).to_big(), &bx * &by);
            if !y.is_zero() {
                prop_assert_eq!((&x / &y).to_big(), &bx / &by);
            }
            prop_assert_eq!(x.cmp(&y), bx.cmp(&by));
            prop_assert_eq!(x.to_string().parse::<Rational>().unwrap(), x);
        }
    }
}
