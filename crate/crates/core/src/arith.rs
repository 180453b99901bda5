//! Exact number theory and arithmetic on Q/Z.
//!
//! Torus points are only ever represented at finite order, as a
//! [`RationalAngle`] `num/den` standing for `exp(2πi·num/den)`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{require_positive, Error, Result};

pub use num_integer::gcd;

pub fn lcm(a: u64, b: u64) -> u64 {
    num_integer::lcm(a, b)
}

/// Euler's totient: the number of `1 <= j <= n` coprime to `n`.
pub fn totient(n: u64) -> Result<u64> {
    require_positive("n", n)?;
    let mut result = n;
    for (p, _) in factorize(n) {
        result = result / p * (p - 1);
    }
    Ok(result)
}

/// Prime factorization by trial division, ascending primes with exponents.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut factors = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            factors.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        factors.push((n, 1));
    }
    factors
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == [(n, 1)]
}

/// All divisors of `n`, ascending.
pub fn divisors(n: u64) -> Result<Vec<u64>> {
    require_positive("n", n)?;
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Ok(small)
}

/// Odd divisors of `n`, ascending.
pub fn odd_divisors(n: u64) -> Result<Vec<u64>> {
    Ok(divisors(n)?.into_iter().filter(|d| d % 2 == 1).collect())
}

/// Binomial coefficient `C(n, j)`, zero when `j > n`.
pub fn binomial(n: u64, j: u64) -> BigUint {
    if j > n {
        return BigUint::from(0u32);
    }
    let j = j.min(n - j);
    let mut acc = BigUint::one();
    for i in 0..j {
        // acc * (n - i) is divisible by (i + 1) at every step
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// An element of Q/Z, i.e. a root of unity given by its angle.
///
/// Always reduced: `0 <= num < den`, `gcd(num, den) = 1`, and `0` is stored
/// as `0/1`. The order of the element in Q/Z is its denominator.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct RationalAngle {
    num: u64,
    den: u64,
}

impl RationalAngle {
    pub const ZERO: RationalAngle = RationalAngle { num: 0, den: 1 };

    /// Reduces `num/den` modulo 1. Panics if `den == 0`.
    pub fn new(num: i128, den: u64) -> Self {
        assert!(den != 0, "angle denominator must be nonzero");
        let den_i = den as i128;
        let r = num.rem_euclid(den_i) as u64;
        let g = gcd(r, den);
        RationalAngle {
            num: r / g,
            den: den / g,
        }
    }

    /// The `j`-th power of the primitive `d`-th root `exp(2πi/d)`.
    pub fn root_of_unity(j: u64, d: u64) -> Self {
        Self::new(j as i128, d)
    }

    pub fn numerator(self) -> u64 {
        self.num
    }

    pub fn denominator(self) -> u64 {
        self.den
    }

    /// Order of the element in Q/Z.
    pub fn order(self) -> u64 {
        self.den
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }

    /// `k·x` in Q/Z.
    pub fn scale(self, k: i128) -> Self {
        let k = k.rem_euclid(self.den as i128);
        Self::new(k * self.num as i128, self.den)
    }

    /// True when `x^d = 1`, i.e. the order divides `d`.
    pub fn is_root_of(self, d: u64) -> bool {
        d != 0 && d.is_multiple_of(self.den)
    }

    fn combine(self, other: Self, sign: i128) -> Self {
        let den = (self.den / gcd(self.den, other.den))
            .checked_mul(other.den)
            .expect("angle denominator overflows u64");
        let a = self.num as i128 * (den / self.den) as i128;
        let b = other.num as i128 * (den / other.den) as i128;
        Self::new(a + sign * b, den)
    }
}

impl Default for RationalAngle {
    fn default() -> Self {
        Self::ZERO
    }
}

impl Add for RationalAngle {
    type Output = RationalAngle;
    fn add(self, rhs: Self) -> Self {
        self.combine(rhs, 1)
    }
}

impl Sub for RationalAngle {
    type Output = RationalAngle;
    fn sub(self, rhs: Self) -> Self {
        self.combine(rhs, -1)
    }
}

impl Neg for RationalAngle {
    type Output = RationalAngle;
    fn neg(self) -> Self {
        Self::new(-(self.num as i128), self.den)
    }
}

/// Ordered by the value `num/den` in `[0, 1)`.
impl Ord for RationalAngle {
    fn cmp(&self, other: &Self) -> Ordering {
        let lhs = self.num as u128 * other.den as u128;
        let rhs = other.num as u128 * self.den as u128;
        lhs.cmp(&rhs)
    }
}

impl PartialOrd for RationalAngle {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for RationalAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "0")
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses `a/b` or a bare integer `a`; `a` may be negative. The value is
/// reduced modulo 1.
impl FromStr for RationalAngle {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (s, "1"),
        };
        let num: i128 = num
            .parse()
            .map_err(|_| format!("invalid numerator {num:?}"))?;
        let den: u64 = den
            .parse()
            .map_err(|_| format!("invalid denominator {den:?}"))?;
        if den == 0 {
            return Err("zero denominator".to_string());
        }
        Ok(RationalAngle::new(num, den))
    }
}

/// Parses a comma-separated list of angles, reporting the 1-based position of
/// the first malformed entry.
pub fn parse_angles(text: &str) -> Result<Vec<RationalAngle>> {
    if text.trim().is_empty() {
        return Err(Error::EmptyPoint);
    }
    text.split(',')
        .enumerate()
        .map(|(i, part)| {
            part.parse().map_err(|reason| Error::Parse {
                position: i + 1,
                reason,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn a(num: i128, den: u64) -> RationalAngle {
        RationalAngle::new(num, den)
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd(4u64, 6), 2);
        assert_eq!(gcd(0u64, 5), 5);
        assert_eq!(gcd(7u64, 7), 7);
    }

    #[test]
    fn totient_examples() {
        assert_eq!(totient(1).unwrap(), 1);
        assert_eq!(totient(6).unwrap(), 2);
        assert_eq!(totient(17).unwrap(), 16);
        assert!(totient(0).is_err());
    }

    #[test]
    fn totient_matches_coprime_count() {
        for n in 1..200u64 {
            let count = (1..=n).filter(|&j| gcd(j, n) == 1).count() as u64;
            assert_eq!(totient(n).unwrap(), count, "n = {n}");
        }
    }

    #[test]
    fn odd_divisor_examples() {
        assert_eq!(odd_divisors(6).unwrap(), vec![1, 3]);
        assert_eq!(odd_divisors(8).unwrap(), vec![1]);
        assert_eq!(odd_divisors(15).unwrap(), vec![1, 3, 5, 15]);
        assert!(odd_divisors(0).is_err());
    }

    #[test]
    fn angle_examples() {
        assert_eq!(a(1, 3) + a(2, 3), RationalAngle::ZERO);
        assert_eq!(a(1, 6).scale(3), a(1, 2));
        assert_eq!(-a(1, 4), a(3, 4));
        assert_eq!(a(0, 7), RationalAngle::ZERO);
        assert_eq!(a(0, 7).denominator(), 1);
        assert_eq!(a(-1, 3), a(2, 3));
        assert_eq!(a(4, 6), a(2, 3));
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(4, 2), BigUint::from(6u32));
        assert_eq!(binomial(5, 0), BigUint::from(1u32));
        assert_eq!(binomial(3, 5), BigUint::from(0u32));
        // beyond u64: C(100, 50)
        assert_eq!(
            binomial(100, 50).to_string(),
            "100891344545564193334812497256"
        );
    }

    #[test]
    fn parse_reports_position() {
        assert_eq!(
            parse_angles("0, 1/3,2/3").unwrap(),
            vec![RationalAngle::ZERO, a(1, 3), a(2, 3)]
        );
        match parse_angles("0,1/x,2/3") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 2),
            other => panic!("unexpected {other:?}"),
        }
        match parse_angles("0,1/3,2/0") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(parse_angles(""), Err(Error::EmptyPoint));
    }

    fn angle() -> impl Strategy<Value = RationalAngle> {
        (0i128..1000, 1u64..60).prop_map(|(n, d)| RationalAngle::new(n, d))
    }

    proptest! {
        #[test]
        fn divisor_totient_sum(n in 1u64..2000) {
            let sum: u64 = divisors(n).unwrap().iter().map(|&d| totient(d).unwrap()).sum();
            prop_assert_eq!(sum, n);
        }

        #[test]
        fn angle_group_laws(x in angle(), y in angle(), z in angle()) {
            prop_assert_eq!((x + y) + z, x + (y + z));
            prop_assert_eq!(x + y, y + x);
            prop_assert_eq!(x + (-x), RationalAngle::ZERO);
            prop_assert_eq!(x - y, x + (-y));
            prop_assert_eq!(x.scale(x.denominator() as i128), RationalAngle::ZERO);
        }

        #[test]
        fn angle_is_reduced(n in -500i128..500, d in 1u64..100) {
            let x = RationalAngle::new(n, d);
            prop_assert!(x.numerator() < x.denominator());
            prop_assert_eq!(gcd(x.numerator(), x.denominator()), 1);
            if x.denominator() == 1 { prop_assert_eq!(x.numerator(), 0); }
            // order: smallest k with k·x = 0
            let order = (1..=d).find(|&k| x.scale(k as i128).is_zero()).unwrap();
            prop_assert_eq!(order, x.order());
        }
    }
}
