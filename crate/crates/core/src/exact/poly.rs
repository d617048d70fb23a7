use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;

use super::{ExactError, GoldenScalar};

/// Univariate polynomial in `lambda` over the golden field.
///
/// Coefficients are stored lowest degree first and the vector is kept trimmed,
/// so the zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct GfPoly {
    coeffs: Vec<GoldenScalar>,
}

impl GfPoly {
    pub fn new(mut coeffs: Vec<GoldenScalar>) -> Self {
        while coeffs.last().is_some_and(GoldenScalar::is_zero) {
            coeffs.pop();
        }
        GfPoly { coeffs }
    }

    pub fn zero() -> Self {
        GfPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: GoldenScalar) -> Self {
        GfPoly::new(vec![c])
    }

    /// The indeterminate `lambda`.
    pub fn lambda() -> Self {
        GfPoly::new(vec![GoldenScalar::zero(), GoldenScalar::one()])
    }

    /// `lambda - root`.
    pub fn linear_factor(root: &GoldenScalar) -> Self {
        GfPoly::new(vec![-root, GoldenScalar::one()])
    }

    pub fn coeffs(&self) -> &[GoldenScalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&GoldenScalar> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> GoldenScalar {
        self.coeffs.get(i).cloned().unwrap_or_else(GoldenScalar::zero)
    }

    pub fn scale(&self, c: &GoldenScalar) -> Self {
        GfPoly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn scale_rational(&self, r: &BigRational) -> Self {
        GfPoly::new(self.coeffs.iter().map(|x| x.scale(r)).collect())
    }

    /// Multiply by `lambda`.
    pub fn shift(&self) -> Self {
        if self.is_zero() {
            return GfPoly::zero();
        }
        let mut c = Vec::with_capacity(self.coeffs.len() + 1);
        c.push(GoldenScalar::zero());
        c.extend(self.coeffs.iter().cloned());
        GfPoly { coeffs: c }
    }

    /// Horner evaluation.
    pub fn eval(&self, at: &GoldenScalar) -> GoldenScalar {
        self.coeffs
            .iter()
            .rev()
            .fold(GoldenScalar::zero(), |acc, c| &(&acc * at) + c)
    }

    /// Evaluation at a real double via the float images of the coefficients.
    pub fn eval_f64(&self, at: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * at + c.to_f64())
    }

    pub fn derivative(&self) -> Self {
        GfPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &GoldenScalar::from(i as i64))
                .collect(),
        )
    }

    /// Euclidean division `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &GfPoly) -> Result<(GfPoly, GfPoly), ExactError> {
        let dd = divisor.degree().ok_or(ExactError::DivisionByZero)?;
        let lead_inv = divisor.coeffs[dd].inverse()?;
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree().filter(|&n| n >= dd) else {
            return Ok((GfPoly::zero(), self.clone()));
        };
        let mut quot = vec![GoldenScalar::zero(); nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let c = &rem[i + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = &rem[i + j] - &(&c * d);
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Ok((GfPoly::new(quot), GfPoly::new(rem)))
    }

    /// Largest `m` with `(lambda - root)^m` dividing `self`.
    pub fn root_multiplicity(&self, root: &GoldenScalar) -> Result<usize, ExactError> {
        Ok(self.deflate(root)?.0)
    }

    /// Divides out `(lambda - root)` as often as possible; returns the
    /// multiplicity and the cofactor.
    pub fn deflate(&self, root: &GoldenScalar) -> Result<(usize, GfPoly), ExactError> {
        if self.is_zero() {
            return Err(ExactError::ZeroPolynomial);
        }
        let factor = GfPoly::linear_factor(root);
        let mut m = 0;
        let mut cur = self.clone();
        loop {
            let (q, r) = cur.div_rem(&factor)?;
            if !r.is_zero() {
                return Ok((m, cur));
            }
            m += 1;
            cur = q;
        }
    }

    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs.iter().map(GoldenScalar::to_f64).collect()
    }
}

impl Add<&GfPoly> for &GfPoly {
    type Output = GfPoly;
    fn add(self, rhs: &GfPoly) -> GfPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        GfPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub<&GfPoly> for &GfPoly {
    type Output = GfPoly;
    fn sub(self, rhs: &GfPoly) -> GfPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        GfPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul<&GfPoly> for &GfPoly {
    type Output = GfPoly;
    fn mul(self, rhs: &GfPoly) -> GfPoly {
        if self.is_zero() || rhs.is_zero() {
            return GfPoly::zero();
        }
        let mut out = vec![GoldenScalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        GfPoly::new(out)
    }
}

impl Neg for &GfPoly {
    type Output = GfPoly;
    fn neg(self) -> GfPoly {
        GfPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for GfPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*L")?,
                _ => write!(f, "({c})*L^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(a: i64, b: i64) -> GoldenScalar {
        GoldenScalar::from_ints(a, b)
    }

    fn p(cs: &[(i64, i64)]) -> GfPoly {
        GfPoly::new(cs.iter().map(|&(a, b)| g(a, b)).collect())
    }

    #[test]
    fn synthetic_division() {
        // lambda^2 - 2 = (lambda + 1)(lambda - 1) - 1
        let (q, r) = p(&[(-2, 0), (0, 0), (1, 0)]).div_rem(&p(&[(-1, 0), (1, 0)])).unwrap();
        assert_eq!(q, p(&[(1, 0), (1, 0)]));
        assert_eq!(r, p(&[(-1, 0)]));
    }

    #[test]
    fn self_division() {
        let f = p(&[(-2, 0), (0, 0), (1, 0)]);
        let (q, r) = f.div_rem(&f).unwrap();
        assert_eq!(q, GfPoly::constant(GoldenScalar::one()));
        assert!(r.is_zero());
    }

    #[test]
    fn golden_linear_division() {
        // phi*lambda - 1 divided by lambda - (phi - 1): quotient phi, remainder phi(phi-1) - 1 = 0
        let f = p(&[(-1, 0), (0, 1)]);
        let (q, r) = f.div_rem(&GfPoly::linear_factor(&g(-1, 1))).unwrap();
        assert_eq!(q, GfPoly::constant(GoldenScalar::phi()));
        assert!(r.is_zero());
    }

    #[test]
    fn divide_by_zero_polynomial() {
        assert_eq!(GfPoly::lambda().div_rem(&GfPoly::zero()), Err(ExactError::DivisionByZero));
    }

    #[test]
    fn multiplicities() {
        let sq = &GfPoly::lambda() * &GfPoly::lambda();
        assert_eq!(sq.root_multiplicity(&GoldenScalar::zero()), Ok(2));
        let f = p(&[(-2, 0), (0, 0), (1, 0)]);
        assert_eq!(f.root_multiplicity(&GoldenScalar::one()), Ok(0));
        assert_eq!(GfPoly::zero().root_multiplicity(&GoldenScalar::one()), Err(ExactError::ZeroPolynomial));
    }

    #[test]
    fn multiplicity_of_expanded_product() {
        // (lambda - phi)^2 (lambda - 1), expanded by hand:
        // lambda^3 - (2phi + 1) lambda^2 + (phi^2 + 2phi) lambda - phi^2
        // with phi^2 = 1 + phi: constant -(1+phi), linear 1 + 3phi
        let f = p(&[(-1, -1), (1, 3), (-1, -2), (1, 0)]);
        let fact = &(&GfPoly::linear_factor(&GoldenScalar::phi()) * &GfPoly::linear_factor(&GoldenScalar::phi()))
            * &GfPoly::linear_factor(&GoldenScalar::one());
        assert_eq!(f, fact);
        assert_eq!(f.root_multiplicity(&GoldenScalar::phi()), Ok(2));
        assert_eq!(f.root_multiplicity(&GoldenScalar::one()), Ok(1));
        assert_eq!(f.root_multiplicity(&GoldenScalar::zero()), Ok(0));
    }

    #[test]
    fn derivative_and_eval() {
        let f = p(&[(-2, 0), (0, 0), (1, 0)]);
        assert_eq!(f.derivative(), p(&[(0, 0), (2, 0)]));
        let h = p(&[(-1, 0), (0, 1)]);
        assert!(h.eval(&g(-1, 1)).is_zero());
        assert!(GfPoly::lambda().eval(&GoldenScalar::zero()).is_zero());
        assert!(GfPoly::constant(GoldenScalar::one()).derivative().is_zero());
    }

    #[test]
    fn trims_leading_zeros() {
        let f = GfPoly::new(alloc::vec![g(1, 0), g(0, 0)]);
        assert_eq!(f.degree(), Some(0));
        assert_eq!(GfPoly::new(alloc::vec![g(0, 0)]).degree(), None);
    }
}
