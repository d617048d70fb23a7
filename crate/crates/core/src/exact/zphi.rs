use core::cmp::Ordering;
use core::ops::{Add, Mul, Neg, Sub};

use super::GoldenScalar;

/// Algebraic integer `a + b*phi` in `Z[phi]` with machine-word components.
///
/// Used where values stay tiny (quaternion coordinates of the binary
/// icosahedral group); trace polynomials use [`GoldenScalar`] instead.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct ZPhi {
    pub a: i64,
    pub b: i64,
}

impl ZPhi {
    pub const ZERO: ZPhi = ZPhi { a: 0, b: 0 };
    pub const ONE: ZPhi = ZPhi { a: 1, b: 0 };
    pub const PHI: ZPhi = ZPhi { a: 0, b: 1 };

    pub const fn new(a: i64, b: i64) -> Self {
        ZPhi { a, b }
    }

    pub fn is_zero(self) -> bool {
        self.a == 0 && self.b == 0
    }

    /// Exact real sign.
    pub fn signum(self) -> Ordering {
        let u = 2 * self.a + self.b;
        let v = self.b;
        match (u.cmp(&0), v.cmp(&0)) {
            (Ordering::Equal, Ordering::Equal) => Ordering::Equal,
            (Ordering::Less, Ordering::Greater) => (5 * v * v).cmp(&(u * u)),
            (Ordering::Greater, Ordering::Less) => (u * u).cmp(&(5 * v * v)),
            (x, Ordering::Equal) => x,
            (Ordering::Equal, y) => y,
            (x, _) => x,
        }
    }

    pub fn abs(self) -> Self {
        if self.signum() == Ordering::Less {
            -self
        } else {
            self
        }
    }

    /// Exact halving, when both components are even.
    pub fn half(self) -> Option<Self> {
        (self.a % 2 == 0 && self.b % 2 == 0).then_some(ZPhi::new(self.a / 2, self.b / 2))
    }

    pub fn to_golden(self) -> GoldenScalar {
        GoldenScalar::from_ints(self.a, self.b)
    }

    pub fn to_f64(self) -> f64 {
        self.a as f64 + self.b as f64 * super::PHI_F64
    }
}

impl Add for ZPhi {
    type Output = ZPhi;
    fn add(self, r: ZPhi) -> ZPhi {
        ZPhi::new(self.a + r.a, self.b + r.b)
    }
}

impl Sub for ZPhi {
    type Output = ZPhi;
    fn sub(self, r: ZPhi) -> ZPhi {
        ZPhi::new(self.a - r.a, self.b - r.b)
    }
}

impl Mul for ZPhi {
    type Output = ZPhi;
    fn mul(self, r: ZPhi) -> ZPhi {
        let bd = self.b * r.b;
        ZPhi::new(self.a * r.a + bd, self.a * r.b + self.b * r.a + bd)
    }
}

impl Neg for ZPhi {
    type Output = ZPhi;
    fn neg(self) -> ZPhi {
        ZPhi::new(-self.a, -self.b)
    }
}
