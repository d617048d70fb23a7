use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ExactError;

/// The golden ratio as a double, `(1 + sqrt 5) / 2`.
pub const PHI_F64: f64 = 1.618_033_988_749_895;

/// An element `a + b*phi` of the golden field, with `phi^2 = phi + 1`.
///
/// Both components are exact rationals kept in lowest terms, so equality is
/// structural.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GoldenScalar {
    a: BigRational,
    b: BigRational,
}

impl GoldenScalar {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        GoldenScalar { a, b }
    }

    pub fn from_ints(a: i64, b: i64) -> Self {
        GoldenScalar::new(BigRational::from_integer(a.into()), BigRational::from_integer(b.into()))
    }

    /// `(a_num/a_den) + (b_num/b_den)*phi`.
    pub fn from_fracs(a_num: i64, a_den: i64, b_num: i64, b_den: i64) -> Self {
        GoldenScalar::new(
            BigRational::new(a_num.into(), a_den.into()),
            BigRational::new(b_num.into(), b_den.into()),
        )
    }

    pub fn zero() -> Self {
        GoldenScalar::from_ints(0, 0)
    }

    pub fn one() -> Self {
        GoldenScalar::from_ints(1, 0)
    }

    pub fn phi() -> Self {
        GoldenScalar::from_ints(0, 1)
    }

    /// `sqrt 5 = 2*phi - 1`.
    pub fn sqrt5() -> Self {
        GoldenScalar::from_ints(-1, 2)
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

    /// Galois conjugate, sending `phi` to `1 - phi`.
    pub fn conjugate(&self) -> Self {
        GoldenScalar::new(&self.a + &self.b, -self.b.clone())
    }

    /// Field norm `(a + b*phi)(a + b*phi') = a^2 + ab - b^2`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a + &self.a * &self.b - &self.b * &self.b
    }

    pub fn inverse(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let n = self.norm();
        let c = self.conjugate();
        Ok(GoldenScalar::new(c.a / &n, c.b / n))
    }

    pub fn checked_div(&self, rhs: &GoldenScalar) -> Result<Self, ExactError> {
        Ok(self * &rhs.inverse()?)
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        GoldenScalar::new(&self.a * r, &self.b * r)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = GoldenScalar::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Exact sign of the real number `a + b*phi`.
    pub fn signum(&self) -> Ordering {
        // a + b*phi = ((2a + b) + b*sqrt5) / 2
        let u = &self.a * BigInt::from(2) + &self.b;
        let v = &self.b;
        let su = u.signum();
        let sv = v.signum();
        let pos = |x: &BigRational| x.is_positive();
        let neg = |x: &BigRational| x.is_negative();
        if !neg(&su) && !neg(&sv) {
            return if u.is_zero() && v.is_zero() { Ordering::Equal } else { Ordering::Greater };
        }
        if !pos(&su) && !pos(&sv) {
            return Ordering::Less;
        }
        // opposite signs: compare u^2 with 5 v^2
        let lhs = &u * &u;
        let rhs = v * v * BigInt::from(5);
        let mag = lhs.cmp(&rhs);
        if pos(&su) {
            mag
        } else {
            mag.reverse()
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() == Ordering::Less {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        a + b * PHI_F64
    }

    /// Components as `(a, b)` when both are integers, i.e. the value lies in `Z[phi]`.
    pub fn to_integer_pair(&self) -> Option<(BigInt, BigInt)> {
        if self.a.is_integer() && self.b.is_integer() {
            Some((self.a.to_integer(), self.b.to_integer()))
        } else {
            None
        }
    }
}

impl PartialOrd for GoldenScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GoldenScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum()
    }
}

impl From<i64> for GoldenScalar {
    fn from(v: i64) -> Self {
        GoldenScalar::from_ints(v, 0)
    }
}

impl From<BigRational> for GoldenScalar {
    fn from(v: BigRational) -> Self {
        GoldenScalar::new(v, BigRational::zero())
    }
}

impl Add<&GoldenScalar> for &GoldenScalar {
    type Output = GoldenScalar;
    fn add(self, rhs: &GoldenScalar) -> GoldenScalar {
        GoldenScalar::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl Sub<&GoldenScalar> for &GoldenScalar {
    type Output = GoldenScalar;
    fn sub(self, rhs: &GoldenScalar) -> GoldenScalar {
        GoldenScalar::new(&self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl Mul<&GoldenScalar> for &GoldenScalar {
    type Output = GoldenScalar;
    fn mul(self, rhs: &GoldenScalar) -> GoldenScalar {
        // (a + b phi)(c + d phi) = (ac + bd) + (ad + bc + bd) phi
        let bd = &self.b * &rhs.b;
        GoldenScalar::new(
            &self.a * &rhs.a + &bd,
            &self.a * &rhs.b + &self.b * &rhs.a + bd,
        )
    }
}

impl Neg for GoldenScalar {
    type Output = GoldenScalar;
    fn neg(self) -> GoldenScalar {
        GoldenScalar::new(-self.a, -self.b)
    }
}

impl Neg for &GoldenScalar {
    type Output = GoldenScalar;
    fn neg(self) -> GoldenScalar {
        -self.clone()
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<GoldenScalar> for GoldenScalar {
            type Output = GoldenScalar;
            fn $m(self, rhs: GoldenScalar) -> GoldenScalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&GoldenScalar> for GoldenScalar {
            type Output = GoldenScalar;
            fn $m(self, rhs: &GoldenScalar) -> GoldenScalar {
                (&self).$m(rhs)
            }
        }
        impl $tr<GoldenScalar> for &GoldenScalar {
            type Output = GoldenScalar;
            fn $m(self, rhs: GoldenScalar) -> GoldenScalar {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Renders as `a+b*phi` (or `a-b*phi` for negative `b`), rationals as `p/q`.
impl fmt::Display for GoldenScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_negative() {
            write!(f, "{}-{}*phi", self.a, -self.b.clone())
        } else {
            write!(f, "{}+{}*phi", self.a, self.b)
        }
    }
}

impl FromStr for GoldenScalar {
    type Err = ExactError;

    /// Accepts the `Display` form, plus the shorthands `a`, `phi`, `b*phi`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(ExactError::Parse(s.into()));
        }
        let bad = || ExactError::Parse(s.into());
        if let Some(head) = compact.strip_suffix("phi") {
            // find the split between the rational part and the phi coefficient
            let head = head.strip_suffix('*').unwrap_or(head);
            let split = head
                .char_indices()
                .skip(1)
                .filter(|&(i, c)| (c == '+' || c == '-') && !head[..i].ends_with(['+', '-']))
                .map(|(i, _)| i)
                .last();
            let (rat, coef) = match split {
                Some(i) => (&head[..i], &head[i..]),
                None => ("0", head),
            };
            let b = match coef {
                "" | "+" => BigRational::one(),
                "-" => -BigRational::one(),
                c => parse_rational(c.strip_prefix('+').unwrap_or(c)).ok_or_else(bad)?,
            };
            let a = parse_rational(rat).ok_or_else(bad)?;
            Ok(GoldenScalar::new(a, b))
        } else {
            Ok(GoldenScalar::new(parse_rational(&compact).ok_or_else(bad)?, BigRational::zero()))
        }
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.strip_prefix('+').unwrap_or(s);
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    if body.starts_with(['+', '-']) {
        return None;
    }
    let (n, d) = match body.split_once('/') {
        Some((n, d)) => (n, d),
        None => (body, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    let r = BigRational::new(n, d);
    Some(if neg { -r } else { r })
}
