//! Small complex 2x2 matrices used by the floating-point oracles.

use core::ops::{Add, Mul, Sub};

pub use num_complex::Complex64;
use rand::Rng;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat2(pub [[Complex64; 2]; 2]);

impl Mat2 {
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Self {
        Mat2([[a, b], [c, d]])
    }

    pub fn identity() -> Self {
        let o = Complex64::new(1.0, 0.0);
        let z = Complex64::new(0.0, 0.0);
        Mat2::new(o, z, z, o)
    }

    pub fn trace(&self) -> Complex64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn det(&self) -> Complex64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    /// Inverse via the adjugate; `None` when the determinant vanishes.
    pub fn inverse(&self) -> Option<Self> {
        let d = self.det();
        if d.norm() < 1e-300 {
            return None;
        }
        let [[a, b], [c, e]] = self.0;
        Some(Mat2::new(e / d, -b / d, -c / d, a / d))
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let [[a, b], [c, d]] = self.0;
        Mat2::new(a * s, b * s, c * s, d * s)
    }

    pub fn pow(&self, e: i32) -> Option<Self> {
        let base = if e < 0 { self.inverse()? } else { *self };
        Some((0..e.unsigned_abs()).fold(Mat2::identity(), |acc, _| acc * base))
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_diff(&self, other: &Mat2) -> f64 {
        let mut m = 0.0f64;
        for i in 0..2 {
            for j in 0..2 {
                m = m.max((self.0[i][j] - other.0[i][j]).norm());
            }
        }
        m
    }

    /// Random element of `SL(2, C)`, a product of two unipotents and a
    /// diagonal matrix with bounded entries, so it is always well conditioned.
    pub fn random_sl2<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let mut c = || Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        let o = Complex64::new(1.0, 0.0);
        let z = Complex64::new(0.0, 0.0);
        let u = Mat2::new(o, c(), z, o);
        let l = Mat2::new(o, z, c(), o);
        let d0 = Complex64::from_polar(1.0 + 0.5 * c().re.abs(), core::f64::consts::PI * c().im);
        let d = Mat2::new(d0, z, z, d0.inv());
        u * l * d
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, r: Mat2) -> Mat2 {
        let a = self.0;
        let b = r.0;
        let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Mat2(out)
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, r: Mat2) -> Mat2 {
        let mut out = self.0;
        for (i, row) in out.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v += r.0[i][j];
            }
        }
        Mat2(out)
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, r: Mat2) -> Mat2 {
        self + r.scale(Complex64::new(-1.0, 0.0))
    }
}
