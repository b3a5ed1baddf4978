//! Arbitrary-precision integers with an inline fast path for values that fit in an `i64`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// An exact integer. Small values are stored inline and promoted to a
/// heap-allocated [`BigInt`] only when an operation would overflow.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Integer(Repr);

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Small(i64),
    // Invariant: never holds a value representable as i64.
    Big(BigInt),
}

impl Integer {
    pub const ZERO: Integer = Integer(Repr::Small(0));
    pub const ONE: Integer = Integer(Repr::Small(1));

    fn from_big(b: BigInt) -> Integer {
        match b.to_i64() {
            Some(v) => Integer(Repr::Small(v)),
            None => Integer(Repr::Big(b)),
        }
    }

    pub fn to_bigint(&self) -> BigInt {
        match &self.0 {
            Repr::Small(v) => BigInt::from(*v),
            Repr::Big(b) => b.clone(),
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match &self.0 {
            Repr::Small(v) => Some(*v),
            Repr::Big(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0))
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1))
    }

    /// True for `1` and `-1`.
    pub fn is_unit(&self) -> bool {
        matches!(self.0, Repr::Small(1) | Repr::Small(-1))
    }

    pub fn signum(&self) -> i32 {
        match &self.0 {
            Repr::Small(v) => v.signum() as i32,
            Repr::Big(b) => {
                if b.is_negative() {
                    -1
                } else {
                    1
                }
            }
        }
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Integer {
        match &self.0 {
            Repr::Small(v) => match v.checked_abs() {
                Some(a) => Integer(Repr::Small(a)),
                None => Integer::from_big(BigInt::from(*v).abs()),
            },
            Repr::Big(b) => Integer::from_big(b.abs()),
        }
    }

    /// Compares absolute values.
    pub fn cmp_abs(&self, other: &Integer) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => a.unsigned_abs().cmp(&b.unsigned_abs()),
            _ => self.to_bigint().abs().cmp(&other.to_bigint().abs()),
        }
    }

    /// Floor division and the matching non-negative-or-sign-of-divisor remainder,
    /// so that `self = q * d + r` with `|r| < |d|`.
    ///
    /// # Panics
    /// Panics if `d` is zero.
    pub fn div_rem_floor(&self, d: &Integer) -> (Integer, Integer) {
        assert!(!d.is_zero(), "division by zero");
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &d.0) {
            if let (Some(q), Some(r)) = (a.checked_div_euclid(*b), a.checked_rem_euclid(*b)) {
                // Euclidean: 0 <= r < |b|; convert to floor semantics.
                let (q, r) = if r != 0 && *b < 0 {
                    (q - 1, r + b)
                } else {
                    (q, r)
                };
                return (Integer(Repr::Small(q)), Integer(Repr::Small(r)));
            }
        }
        let (q, r) = self.to_bigint().div_mod_floor(&d.to_bigint());
        (Integer::from_big(q), Integer::from_big(r))
    }

    /// Quotient rounded to the nearest integer, giving the remainder of least
    /// absolute value. Used by normal-form reductions to keep entries small.
    pub fn div_round(&self, d: &Integer) -> Integer {
        let (q, r) = self.div_rem_floor(d);
        let twice = &r + &r;
        if twice.cmp_abs(d) == Ordering::Greater {
            if r.signum() == d.signum() {
                q + Integer::ONE
            } else {
                q - Integer::ONE
            }
        } else {
            q
        }
    }

    /// Exact division; the caller guarantees `d | self`.
    pub fn div_exact(&self, d: &Integer) -> Integer {
        let (q, r) = self.div_rem_floor(d);
        debug_assert!(r.is_zero(), "inexact division");
        q
    }

    pub fn divides(&self, other: &Integer) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_rem_floor(self).1.is_zero()
    }

    /// Non-negative greatest common divisor.
    pub fn gcd(&self, other: &Integer) -> Integer {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &other.0) {
            let (mut x, mut y) = (a.unsigned_abs(), b.unsigned_abs());
            while y != 0 {
                let t = x % y;
                x = y;
                y = t;
            }
            return match i64::try_from(x) {
                Ok(v) => Integer(Repr::Small(v)),
                Err(_) => Integer::from_big(BigInt::from(x)),
            };
        }
        Integer::from_big(self.to_bigint().gcd(&other.to_bigint()))
    }

    /// Non-negative least common multiple.
    pub fn lcm(&self, other: &Integer) -> Integer {
        if self.is_zero() || other.is_zero() {
            return Integer::ZERO;
        }
        let g = self.gcd(other);
        (self.div_exact(&g) * other).abs()
    }

    /// Extended gcd: returns `(g, x, y)` with `g = x*self + y*other`, `g >= 0`.
    pub fn extended_gcd(&self, other: &Integer) -> (Integer, Integer, Integer) {
        let (mut old_r, mut r) = (self.clone(), other.clone());
        let (mut old_s, mut s) = (Integer::ONE, Integer::ZERO);
        let (mut old_t, mut t) = (Integer::ZERO, Integer::ONE);
        while !r.is_zero() {
            let (q, rem) = old_r.div_rem_floor(&r);
            old_r = std::mem::replace(&mut r, rem);
            let ns = &old_s - &(&q * &s);
            old_s = std::mem::replace(&mut s, ns);
            let nt = &old_t - &(&q * &t);
            old_t = std::mem::replace(&mut t, nt);
        }
        if old_r.is_negative() {
            (-old_r, -old_s, -old_t)
        } else {
            (old_r, old_s, old_t)
        }
    }

    /// `self += a * b`.
    pub fn add_mul(&mut self, a: &Integer, b: &Integer) {
        if let (Repr::Small(s), Repr::Small(x), Repr::Small(y)) = (&self.0, &a.0, &b.0) {
            if let Some(v) = x.checked_mul(*y).and_then(|p| s.checked_add(p)) {
                self.0 = Repr::Small(v);
                return;
            }
        }
        *self = &*self + &(a * b);
    }

    /// `self -= a * b`.
    pub fn sub_mul(&mut self, a: &Integer, b: &Integer) {
        if let (Repr::Small(s), Repr::Small(x), Repr::Small(y)) = (&self.0, &a.0, &b.0) {
            if let Some(v) = x.checked_mul(*y).and_then(|p| s.checked_sub(p)) {
                self.0 = Repr::Small(v);
                return;
            }
        }
        *self = &*self - &(a * b);
    }
}

impl Default for Integer {
    fn default() -> Self {
        Integer::ZERO
    }
}

impl From<i64> for Integer {
    fn from(v: i64) -> Self {
        Integer(Repr::Small(v))
    }
}

impl From<i32> for Integer {
    fn from(v: i32) -> Self {
        Integer(Repr::Small(v as i64))
    }
}

impl From<u64> for Integer {
    fn from(v: u64) -> Self {
        match i64::try_from(v) {
            Ok(s) => Integer(Repr::Small(s)),
            Err(_) => Integer(Repr::Big(BigInt::from(v))),
        }
    }
}

impl From<usize> for Integer {
    fn from(v: usize) -> Self {
        Integer::from(v as u64)
    }
}

impl From<BigInt> for Integer {
    fn from(b: BigInt) -> Self {
        Integer::from_big(b)
    }
}

impl From<&Integer> for BigInt {
    fn from(v: &Integer) -> Self {
        v.to_bigint()
    }
}

impl FromStr for Integer {
    type Err = num_bigint::ParseBigIntError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Ok(v) = s.parse::<i64>() {
            return Ok(Integer(Repr::Small(v)));
        }
        BigInt::from_str(s).map(Integer::from_big)
    }
}

impl fmt::Display for Integer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(v) => write!(f, "{v}"),
            Repr::Big(b) => write!(f, "{b}"),
        }
    }
}

impl fmt::Debug for Integer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl PartialOrd for Integer {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Integer {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => a.cmp(b),
            _ => self.to_bigint().cmp(&other.to_bigint()),
        }
    }
}

impl Zero for Integer {
    fn zero() -> Self {
        Integer::ZERO
    }
    fn is_zero(&self) -> bool {
        Integer::is_zero(self)
    }
}

impl One for Integer {
    fn one() -> Self {
        Integer::ONE
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<'a, 'b> $tr<&'b Integer> for &'a Integer {
            type Output = Integer;
            fn $method(self, rhs: &'b Integer) -> Integer {
                if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &rhs.0) {
                    if let Some(v) = a.$checked(*b) {
                        return Integer(Repr::Small(v));
                    }
                }
                Integer::from_big(self.to_bigint().$method(rhs.to_bigint()))
            }
        }
        impl $tr<Integer> for Integer {
            type Output = Integer;
            fn $method(self, rhs: Integer) -> Integer {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a Integer> for Integer {
            type Output = Integer;
            fn $method(self, rhs: &'a Integer) -> Integer {
                (&self).$method(rhs)
            }
        }
        impl<'a> $tr<Integer> for &'a Integer {
            type Output = Integer;
            fn $method(self, rhs: Integer) -> Integer {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl AddAssign<&Integer> for Integer {
    fn add_assign(&mut self, rhs: &Integer) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Integer> for Integer {
    fn sub_assign(&mut self, rhs: &Integer) {
        *self = &*self - rhs;
    }
}

impl Neg for Integer {
    type Output = Integer;
    fn neg(self) -> Integer {
        -&self
    }
}

impl Neg for &Integer {
    type Output = Integer;
    fn neg(self) -> Integer {
        match &self.0 {
            Repr::Small(v) => match v.checked_neg() {
                Some(n) => Integer(Repr::Small(n)),
                None => Integer::from_big(-BigInt::from(*v)),
            },
            Repr::Big(b) => Integer::from_big(-b),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn promotes_on_overflow_and_demotes_back() {
        let big = Integer::from(i64::MAX) + Integer::ONE;
        assert!(big.to_i64().is_none());
        let back = &big - &Integer::ONE;
        assert_eq!(back.to_i64(), Some(i64::MAX));
        let sq = Integer::from(i64::MIN) * Integer::from(i64::MIN);
        assert_eq!(
            sq.to_bigint(),
            BigInt::from(i64::MIN) * BigInt::from(i64::MIN)
        );
    }

    #[test]
    fn floor_division_matches_bigint() {
        for a in -20i64..=20 {
            for b in [-7i64, -3, -1, 1, 2, 5] {
                let (q, r) = Integer::from(a).div_rem_floor(&Integer::from(b));
                let (bq, br) = BigInt::from(a).div_mod_floor(&BigInt::from(b));
                assert_eq!(q.to_bigint(), bq);
                assert_eq!(r.to_bigint(), br);
            }
        }
    }

    #[test]
    fn extended_gcd_identity() {
        for (a, b) in [(12i64, 18i64), (-4, 6), (0, 5), (7, 0), (0, 0), (-9, -6)] {
            let (a, b) = (Integer::from(a), Integer::from(b));
            let (g, x, y) = a.extended_gcd(&b);
            assert_eq!(&(&x * &a) + &(&y * &b), g);
            assert_eq!(g, a.gcd(&b));
        }
    }

    #[test]
    fn min_value_edge_cases() {
        let m = Integer::from(i64::MIN);
        assert_eq!((-&m).to_bigint(), -BigInt::from(i64::MIN));
        assert_eq!(m.abs().to_bigint(), BigInt::from(i64::MIN).abs());
        let (q, r) = m.div_rem_floor(&Integer::from(-1));
        assert_eq!(q.to_bigint(), -BigInt::from(i64::MIN));
        assert!(r.is_zero());
        assert_eq!(
            m.gcd(&Integer::ZERO).to_bigint(),
            BigInt::from(i64::MIN).abs()
        );
    }
}
