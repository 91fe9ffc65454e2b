//! Exact rationals with an inline fast path for machine-sized values.
//!
//! Values that fit in `i64 / i64` are stored inline; anything larger spills to
//! arbitrary-precision integers. The representation is normalized (lowest terms,
//! positive denominator, small form whenever possible), so structural equality
//! and hashing agree with numeric equality.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use super::LinError;

#[derive(Clone, Debug)]
enum Repr {
    Small(i64, i64),
    Big(BigInt, BigInt),
}

/// An exact rational number in lowest terms with a positive denominator.
#[derive(Clone, Debug)]
pub struct Rational(Repr);

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    gcd_u128(a.unsigned_abs() as u128, b.unsigned_abs() as u128) as i64
}

impl Rational {
    pub fn zero() -> Self {
        Rational(Repr::Small(0, 1))
    }

    pub fn one() -> Self {
        Rational(Repr::Small(1, 1))
    }

    pub fn from_int(n: i64) -> Self {
        Rational(Repr::Small(n, 1))
    }

    /// Builds `num / den`, reducing to lowest terms.
    pub fn new(num: i64, den: i64) -> Result<Self, LinError> {
        if den == 0 {
            return Err(LinError::ZeroDenominator);
        }
        Ok(Self::from_i128(num as i128, den as i128))
    }

    pub fn from_bigints(num: BigInt, den: BigInt) -> Result<Self, LinError> {
        if den.is_zero() {
            return Err(LinError::ZeroDenominator);
        }
        Ok(Self::from_big_unreduced(num, den))
    }

    // den != 0
    fn from_i128(num: i128, den: i128) -> Self {
        if num == 0 {
            return Self::zero();
        }
        let g = gcd_u128(num.unsigned_abs(), den.unsigned_abs()) as i128;
        let (mut n, mut d) = if g > 1 { (num / g, den / g) } else { (num, den) };
        if d < 0 {
            // i128::MIN cannot arise from products of two i64 values
            n = -n;
            d = -d;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Rational(Repr::Small(n, d)),
            _ => Rational(Repr::Big(BigInt::from(n), BigInt::from(d))),
        }
    }

    fn from_big_unreduced(num: BigInt, den: BigInt) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = if g.is_one() { (num, den) } else { (num / &g, den / &g) };
        if d.is_negative() {
            n = -n;
            d = -d;
        }
        Self::from_big_reduced(n, d)
    }

    fn from_big_reduced(n: BigInt, d: BigInt) -> Self {
        match (n.to_i64(), d.to_i64()) {
            (Some(n), Some(d)) => Rational(Repr::Small(n, d)),
            _ => Rational(Repr::Big(n, d)),
        }
    }

    fn to_big(&self) -> (BigInt, BigInt) {
        match &self.0 {
            Repr::Small(n, d) => (BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(n, d) => (n.clone(), d.clone()),
        }
    }

    pub fn numer(&self) -> BigInt {
        self.to_big().0
    }

    pub fn denom(&self) -> BigInt {
        self.to_big().1
    }

    /// Numerator and denominator as machine integers, when they fit.
    pub fn to_i64_pair(&self) -> Option<(i64, i64)> {
        match &self.0 {
            Repr::Small(n, d) => Some((*n, *d)),
            Repr::Big(..) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1, 1))
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, d) => *d == 1,
            Repr::Big(_, d) => d.is_one(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(n, _) => *n < 0,
            Repr::Big(n, _) => n.is_negative(),
        }
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        match &self.0 {
            Repr::Small(0, _) => None,
            Repr::Small(n, d) => Some(Self::from_i128(*d as i128, *n as i128)),
            Repr::Big(n, d) => {
                let (n, d) = if n.is_negative() { (-d.clone(), -n.clone()) } else { (d.clone(), n.clone()) };
                Some(Self::from_big_reduced(n, d))
            }
        }
    }
}

impl Default for Rational {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<i32> for Rational {
    fn from(n: i32) -> Self {
        Self::from_int(n as i64)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Self::from_big_reduced(n, BigInt::one())
    }
}

impl PartialEq for Rational {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => a == c && b == d,
            (Repr::Big(a, b), Repr::Big(c, d)) => a == c && b == d,
            // normalization keeps small-representable values small
            _ => false,
        }
    }
}

impl Eq for Rational {}

impl Hash for Rational {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.0 {
            Repr::Small(n, d) => {
                0u8.hash(state);
                n.hash(state);
                d.hash(state);
            }
            Repr::Big(n, d) => {
                1u8.hash(state);
                n.hash(state);
                d.hash(state);
            }
        }
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
            }
            _ => {
                let (a, b) = self.to_big();
                let (c, d) = other.to_big();
                (a * d).cmp(&(c * b))
            }
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
        let (n, d) = self.to_big();
        if d.is_one() {
            write!(f, "{n}")
        } else {
            write!(f, "{n}/{d}")
        }
    }
}

impl FromStr for Rational {
    type Err = LinError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |t: &str| BigInt::from_str(t.trim()).map_err(|_| LinError::Parse(s.to_string()));
        match s.split_once('/') {
            Some((n, d)) => Rational::from_bigints(parse(n)?, parse(d)?),
            None => Ok(Rational::from(parse(s)?)),
        }
    }
}

impl<'a> Add<&'a Rational> for &'a Rational {
    type Output = Rational;

    fn add(self, rhs: &'a Rational) -> Rational {
        match (&self.0, &rhs.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                if *b == 1 && *d == 1 {
                    let s = *a as i128 + *c as i128;
                    match i64::try_from(s) {
                        Ok(s) => Rational(Repr::Small(s, 1)),
                        Err(_) => Rational(Repr::Big(BigInt::from(s), BigInt::one())),
                    }
                } else if b == d {
                    Rational::from_i128(*a as i128 + *c as i128, *b as i128)
                } else {
                    let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                    Rational::from_i128(a * d + c * b, b * d)
                }
            }
            _ => {
                let (a, b) = self.to_big();
                let (c, d) = rhs.to_big();
                Rational::from_big_unreduced(a * &d + c * &b, b * d)
            }
        }
    }
}

impl<'a> Sub<&'a Rational> for &'a Rational {
    type Output = Rational;

    fn sub(self, rhs: &'a Rational) -> Rational {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Rational> for &'a Rational {
    type Output = Rational;

    fn mul(self, rhs: &'a Rational) -> Rational {
        match (&self.0, &rhs.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                if *b == 1 && *d == 1 {
                    let p = *a as i128 * *c as i128;
                    match i64::try_from(p) {
                        Ok(p) => Rational(Repr::Small(p, 1)),
                        Err(_) => Rational(Repr::Big(BigInt::from(p), BigInt::one())),
                    }
                } else {
                    // cross-cancel so the product is already reduced
                    let g1 = gcd_i64(*a, *d).max(1);
                    let g2 = gcd_i64(*c, *b).max(1);
                    let n = (*a / g1) as i128 * (*c / g2) as i128;
                    let m = (*b / g2) as i128 * (*d / g1) as i128;
                    match (i64::try_from(n), i64::try_from(m)) {
                        (Ok(n), Ok(m)) => {
                            if n == 0 {
                                Rational::zero()
                            } else {
                                Rational(Repr::Small(n, m))
                            }
                        }
                        _ => Rational(Repr::Big(BigInt::from(n), BigInt::from(m))),
                    }
                }
            }
            _ => {
                let (a, b) = self.to_big();
                let (c, d) = rhs.to_big();
                Rational::from_big_unreduced(a * c, b * d)
            }
        }
    }
}

impl<'a> Div<&'a Rational> for &'a Rational {
    type Output = Rational;

    /// Panics on division by zero, like integer division.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &'a Rational) -> Rational {
        self * &rhs.recip().expect("division by zero rational")
    }
}

impl Neg for &Rational {
    type Output = Rational;

    fn neg(self) -> Rational {
        match &self.0 {
            Repr::Small(n, d) => match n.checked_neg() {
                Some(m) => Rational(Repr::Small(m, *d)),
                None => Rational(Repr::Big(-BigInt::from(*n), BigInt::from(*d))),
            },
            Repr::Big(n, d) => Rational::from_big_reduced(-n.clone(), d.clone()),
        }
    }
}

impl Neg for Rational {
    type Output = Rational;

    fn neg(self) -> Rational {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: &'a Rational) -> Rational {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Rational> for &'a Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        *self = &*self * rhs;
    }
}

impl std::iter::Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

/// Least common multiple of the denominators of `v` (1 for an all-integer vector).
pub(crate) fn denominator_lcm(v: &[Rational]) -> Rational {
    let mut acc = BigInt::one();
    for x in v {
        if !x.is_integer() {
            acc = acc.lcm(&x.denom());
        }
    }
    Rational::from(acc)
}

/// Greatest common divisor of the numerators of an integer vector (0 for the zero vector).
pub(crate) fn content(v: &[Rational]) -> Rational {
    let mut small: i64 = 0;
    let mut big: Option<BigInt> = None;
    for x in v {
        if x.is_zero() {
            continue;
        }
        match (&x.0, &mut big) {
            (Repr::Small(n, 1), None) => {
                small = if small == 0 { n.checked_abs().unwrap_or(0) } else { gcd_i64(small, *n) };
                if small == 0 {
                    big = Some(BigInt::from(*n).abs());
                }
            }
            _ => {
                let g = big.take().unwrap_or_else(|| BigInt::from(small));
                big = Some(g.gcd(&x.numer()));
            }
        }
        if small == 1 && big.is_none() {
            return Rational::one();
        }
    }
    match big {
        Some(g) => Rational::from(g),
        None => Rational::from_int(small),
    }
}

/// The positive rational multiple of `v` with coprime integer entries.
pub(crate) fn primitive_integer_vector(v: &[Rational]) -> Vec<Rational> {
    let l = denominator_lcm(v);
    let mut w: Vec<Rational> = v.iter().map(|x| x * &l).collect();
    let g = content(&w);
    if !g.is_zero() && !g.is_one() {
        w.iter_mut().filter(|x| !x.is_zero()).for_each(|x| *x = &*x / &g);
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn normalizes_sign_and_terms() {
        assert_eq!(q(2, 4), q(1, 2));
        assert_eq!(q(3, -6), q(-1, 2));
        assert_eq!(q(0, -5), Rational::zero());
        assert!(Rational::new(1, 0).is_err());
    }

    #[test]
    fn spills_to_big_and_back() {
        let big = Rational::from_int(i64::MAX) + Rational::from_int(i64::MAX);
        assert!(big.to_i64_pair().is_none());
        let back = &big - &Rational::from_int(i64::MAX);
        assert_eq!(back, Rational::from_int(i64::MAX));
        assert!(back.to_i64_pair().is_some());
        let m = -Rational::from_int(i64::MIN);
        assert_eq!(m.to_string(), "9223372036854775808");
    }

    #[test]
    fn arithmetic() {
        assert_eq!(q(1, 2) + q(1, 3), q(5, 6));
        assert_eq!(q(1, 2) - q(1, 2), Rational::zero());
        assert_eq!(q(2, 3) * q(9, 4), q(3, 2));
        assert_eq!(q(2, 3) / q(4, 9), q(3, 2));
        assert_eq!(q(-2, 3).recip().unwrap(), q(-3, 2));
        assert!(q(1, 3) < q(1, 2));
        assert_eq!("-6/8".parse::<Rational>().unwrap(), q(-3, 4));
    }

    #[test]
    fn content_and_lcm() {
        let v = vec![q(6, 1), q(-9, 1), Rational::zero()];
        assert_eq!(content(&v), q(3, 1));
        assert_eq!(denominator_lcm(&[q(1, 4), q(1, 6), q(2, 1)]), q(12, 1));
        assert_eq!(primitive_integer_vector(&[q(1, 2), q(-3, 4), q(0, 1)]), vec![q(2, 1), q(-3, 1), q(0, 1)]);
    }
}
