//! Exact signed fractions.
//!
//! [`Rational`] keeps values reduced with a positive denominator. Values
//! whose numerator and denominator fit in `i128` are stored inline and
//! handled with checked machine arithmetic; anything larger falls back to
//! [`num_rational::BigRational`]. The representation is canonical (inline
//! whenever it fits), so structural equality is value equality.
//!
//! Textual forms used across the workspace: `p/q` (or `p` when the
//! denominator is one) for exact values, and a fixed-significance decimal
//! rendering for plot output.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, Neg, Sub};
use core::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    /// Reduced, `den > 0`, `num != i128::MIN`.
    Small(i128, i128),
    /// Reduced and too large for `Small`.
    Big(BigRational),
}

#[derive(Clone, PartialEq, Eq, Hash)]
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
            core::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

fn gcd(a: i128, b: i128) -> i128 {
    // Both arguments exclude i128::MIN, so the result fits.
    gcd_u128(a.unsigned_abs(), b.unsigned_abs()) as i128
}

/// Reduces `num/den` with `den != 0`; `None` if the result cannot be
/// stored inline.
fn small(num: i128, den: i128) -> Option<Rational> {
    if num == i128::MIN || den == i128::MIN {
        return None;
    }
    let g = gcd(num, den);
    let (mut n, mut d) = (num / g, den / g);
    if d < 0 {
        n = -n;
        d = -d;
    }
    Some(Rational(Repr::Small(n, d)))
}

impl Rational {
    /// `num / den`, reduced. Panics if `den` is zero.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        small(num as i128, den as i128).expect("i64 operands fit inline")
    }

    pub fn from_bigints(num: BigInt, den: BigInt) -> Option<Self> {
        if den.is_zero() {
            None
        } else {
            Some(Self::from_big(BigRational::new(num, den)))
        }
    }

    fn from_big(r: BigRational) -> Self {
        match (r.numer().to_i128(), r.denom().to_i128()) {
            (Some(n), Some(d)) if n != i128::MIN => Rational(Repr::Small(n, d)),
            _ => Rational(Repr::Big(r)),
        }
    }

    fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(r) => r.clone(),
        }
    }

    pub fn integer(n: i64) -> Self {
        Rational(Repr::Small(n as i128, 1))
    }

    pub fn zero() -> Self {
        Rational(Repr::Small(0, 1))
    }

    pub fn one() -> Self {
        Rational(Repr::Small(1, 1))
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(n, _) => BigInt::from(*n),
            Repr::Big(r) => r.numer().clone(),
        }
    }

    /// Always positive.
    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(_, d) => BigInt::from(*d),
            Repr::Big(r) => r.denom().clone(),
        }
    }

    fn signum(&self) -> Ordering {
        match &self.0 {
            Repr::Small(n, _) => n.cmp(&0),
            Repr::Big(r) => {
                if r.is_positive() {
                    Ordering::Greater
                } else if r.is_negative() {
                    Ordering::Less
                } else {
                    Ordering::Equal
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.signum() == Ordering::Equal
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, d) => *d == 1,
            Repr::Big(r) => r.is_integer(),
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
            Repr::Small(n, d) => small(*d, *n),
            Repr::Big(r) => Some(Self::from_big(r.recip())),
        }
    }

    pub fn floor(&self) -> BigInt {
        match &self.0 {
            Repr::Small(n, d) => BigInt::from(n.div_euclid(*d)),
            Repr::Big(r) => r.floor().to_integer(),
        }
    }

    /// Non-negative integer power.
    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Rational::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn min(self, other: Self) -> Self {
        core::cmp::min(self, other)
    }

    pub fn max(self, other: Self) -> Self {
        core::cmp::max(self, other)
    }

    /// Nearest `f64`. Intended for diagnostics and sampling oracles only.
    pub fn to_f64(&self) -> f64 {
        const EXACT: i128 = 1 << 53;
        match &self.0 {
            Repr::Small(n, d) if n.abs() <= EXACT && *d <= EXACT => *n as f64 / *d as f64,
            _ => self.to_big().to_f64().unwrap_or(f64::NAN),
        }
    }

    /// The exact value of a finite `f64`.
    pub fn from_f64(x: f64) -> Option<Self> {
        BigRational::from_float(x).map(Self::from_big)
    }

    /// Plain decimal rendering with `sig` significant digits, rounded half
    /// to even. Trailing zeros after the point are dropped, and no exponent
    /// notation is used, so `1/4` renders as `0.25` and `1` as `1`.
    pub fn to_decimal(&self, sig: u32) -> String {
        assert!(sig > 0);
        if self.is_zero() {
            return "0".to_string();
        }
        let negative = self.is_negative();
        let mag = self.to_big().abs();
        let ten = BigInt::from(10);
        // Find e with 10^e <= mag < 10^(e+1).
        let mut e: i64 = {
            let digits = |n: &BigInt| n.to_string().len() as i64;
            digits(mag.numer()) - digits(mag.denom())
        };
        let pow10 = |k: i64| -> BigRational {
            if k >= 0 {
                BigRational::from_integer(num_traits::pow(ten.clone(), k as usize))
            } else {
                BigRational::new(BigInt::one(), num_traits::pow(ten.clone(), (-k) as usize))
            }
        };
        while mag < pow10(e) {
            e -= 1;
        }
        while mag >= pow10(e + 1) {
            e += 1;
        }
        let shift = sig as i64 - 1 - e;
        let scaled = &mag * pow10(shift);
        let mut digits = round_half_even(&scaled);
        let mut shift = shift;
        if digits >= num_traits::pow(ten.clone(), sig as usize) {
            // Rounding carried into a new leading digit.
            digits = round_half_even(&(&mag * pow10(shift - 1)));
            shift -= 1;
        }
        let mut body = digits.to_string();
        let out = if shift <= 0 {
            for _ in 0..(-shift) {
                body.push('0');
            }
            body
        } else {
            let shift = shift as usize;
            if body.len() <= shift {
                let mut padded = String::from("0.");
                for _ in 0..(shift - body.len()) {
                    padded.push('0');
                }
                padded.push_str(&body);
                padded
            } else {
                let split = body.len() - shift;
                let (int, frac) = body.split_at(split);
                let mut s = String::from(int);
                s.push('.');
                s.push_str(frac);
                s
            }
        };
        let out = if out.contains('.') {
            out.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            out
        };
        if negative {
            let mut s = String::from("-");
            s.push_str(&out);
            s
        } else {
            out
        }
    }
}

fn round_half_even(x: &BigRational) -> BigInt {
    let (q, r) = x.numer().div_rem(x.denom());
    let twice = &r * BigInt::from(2);
    match twice.cmp(x.denom()) {
        Ordering::Less => q,
        Ordering::Greater => q + 1,
        Ordering::Equal => {
            if q.is_even() {
                q
            } else {
                q + 1
            }
        }
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::integer(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Self::from_big(BigRational::from_integer(n))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRationalError(pub String);

impl fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid rational literal {:?}", self.0)
    }
}

/// Accepts `[-+]digits` or `[-+]digits/digits` with a nonzero denominator.
impl FromStr for Rational {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseRationalError(s.to_string());
        let (sign, body) = match s.as_bytes().first() {
            Some(b'-') => (Sign::Minus, &s[1..]),
            Some(b'+') => (Sign::Plus, &s[1..]),
            _ => (Sign::Plus, s),
        };
        let parts: Vec<&str> = body.split('/').collect();
        let digits = |p: &str| -> Result<BigUint, ParseRationalError> {
            if p.is_empty() || !p.bytes().all(|b| b.is_ascii_digit()) {
                return Err(err());
            }
            BigUint::parse_bytes(p.as_bytes(), 10).ok_or_else(err)
        };
        let (num, den) = match parts.as_slice() {
            [n] => (digits(n)?, BigUint::one()),
            [n, d] => (digits(n)?, digits(d)?),
            _ => return Err(err()),
        };
        if den.is_zero() {
            return Err(err());
        }
        let num = BigInt::from_biguint(sign, num);
        Rational::from_bigints(num, BigInt::from(den)).ok_or_else(err)
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::zero()
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        if let (Repr::Small(a, b), Repr::Small(c, d)) = (&self.0, &other.0) {
            if b == d {
                return a.cmp(c);
            }
            if let (Some(l), Some(r)) = (a.checked_mul(*d), c.checked_mul(*b)) {
                return l.cmp(&r);
            }
        }
        self.to_big().cmp(&other.to_big())
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn add_small(a: i128, b: i128, c: i128, d: i128) -> Option<Rational> {
    if b == d {
        return small(a.checked_add(c)?, b);
    }
    let g = gcd(b, d);
    let (bg, dg) = (b / g, d / g);
    let num = a.checked_mul(dg)?.checked_add(c.checked_mul(bg)?)?;
    let den = b.checked_mul(dg)?;
    small(num, den)
}

fn mul_small(a: i128, b: i128, c: i128, d: i128) -> Option<Rational> {
    let g1 = gcd(a, d).max(1);
    let g2 = gcd(c, b).max(1);
    let num = (a / g1).checked_mul(c / g2)?;
    let den = (b / g2).checked_mul(d / g1)?;
    small(num, den)
}

fn add(x: &Rational, y: &Rational) -> Rational {
    if let (Repr::Small(a, b), Repr::Small(c, d)) = (&x.0, &y.0) {
        if let Some(r) = add_small(*a, *b, *c, *d) {
            return r;
        }
    }
    Rational::from_big(x.to_big() + y.to_big())
}

fn mul(x: &Rational, y: &Rational) -> Rational {
    if let (Repr::Small(a, b), Repr::Small(c, d)) = (&x.0, &y.0) {
        if let Some(r) = mul_small(*a, *b, *c, *d) {
            return r;
        }
    }
    Rational::from_big(x.to_big() * y.to_big())
}

fn sub(x: &Rational, y: &Rational) -> Rational {
    add(x, &-y)
}

fn div(x: &Rational, y: &Rational) -> Rational {
    // Division by zero panics.
    mul(x, &y.recip().expect("division by zero"))
}

macro_rules! binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                $method(self, rhs)
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                $method(&self, &rhs)
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                $method(&self, rhs)
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                $method(self, &rhs)
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        *self = add(self, rhs);
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        -&self
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        match &self.0 {
            // num != i128::MIN, so the negation fits.
            Repr::Small(n, d) => Rational(Repr::Small(-n, *d)),
            Repr::Big(r) => Rational::from_big(-r),
        }
    }
}

#[cfg(feature = "serde")]
impl serde::Serialize for Rational {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(feature = "serde")]
impl<'de> serde::Deserialize<'de> for Rational {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = <String as serde::Deserialize>::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Shorthand for `Rational::new(num, den)`.
pub fn q(num: i64, den: i64) -> Rational {
    Rational::new(num, den)
}
