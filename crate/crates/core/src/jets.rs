//! Dual numbers `a + b e` with `e^2 = 0` over the complex doubles, as a
//! numerical model of `C[lambda] / (lambda - alpha)^2`, and 2x2 matrices over them.

use alloc::vec::Vec;
use core::f64::consts::PI;
use core::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use rand::Rng;

use crate::exact::{GfPoly, GoldenScalar};
use crate::numeric::Mat2;
use crate::words::{Gen, GroupWord};

#[derive(Debug, Clone, Copy, PartialEq, thiserror::Error)]
pub enum JetError {
    #[error("precondition failed: {0}")]
    Precondition(&'static str),
    #[error("identity violated, residual {0:e}")]
    IdentityViolated(f64),
}

const fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DualComplex {
    pub value: Complex64,
    pub slope: Complex64,
}

impl DualComplex {
    pub const ZERO: DualComplex = DualComplex { value: c(0.0, 0.0), slope: c(0.0, 0.0) };
    pub const ONE: DualComplex = DualComplex { value: c(1.0, 0.0), slope: c(0.0, 0.0) };
    pub const EPS: DualComplex = DualComplex { value: c(0.0, 0.0), slope: c(1.0, 0.0) };

    pub fn new(value: Complex64, slope: Complex64) -> Self {
        DualComplex { value, slope }
    }

    pub fn constant(value: Complex64) -> Self {
        DualComplex { value, slope: c(0.0, 0.0) }
    }

    /// `None` when the value part vanishes, since then there is no inverse.
    pub fn inverse(self) -> Option<Self> {
        if self.value.norm() < 1e-300 {
            return None;
        }
        let inv = self.value.inv();
        Some(DualComplex { value: inv, slope: -self.slope * inv * inv })
    }

    pub fn dist(self, other: DualComplex) -> f64 {
        (self.value - other.value).norm().max((self.slope - other.slope).norm())
    }
}

impl Add for DualComplex {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        DualComplex { value: self.value + o.value, slope: self.slope + o.slope }
    }
}

impl Sub for DualComplex {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        DualComplex { value: self.value - o.value, slope: self.slope - o.slope }
    }
}

impl Mul for DualComplex {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        DualComplex { value: self.value * o.value, slope: self.value * o.slope + self.slope * o.value }
    }
}

impl Neg for DualComplex {
    type Output = Self;
    fn neg(self) -> Self {
        DualComplex { value: -self.value, slope: -self.slope }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JetMatrix2(pub [[DualComplex; 2]; 2]);

impl JetMatrix2 {
    pub fn new(a: DualComplex, b: DualComplex, c: DualComplex, d: DualComplex) -> Self {
        JetMatrix2([[a, b], [c, d]])
    }

    pub fn identity() -> Self {
        let (o, z) = (DualComplex::ONE, DualComplex::ZERO);
        JetMatrix2::new(o, z, z, o)
    }

    /// `value + e * slope`.
    pub fn from_parts(value: &Mat2, slope: &Mat2) -> Self {
        let mut m = [[DualComplex::ZERO; 2]; 2];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = DualComplex::new(value.0[i][j], slope.0[i][j]);
            }
        }
        JetMatrix2(m)
    }

    /// Truncation `lambda -> alpha`.
    pub fn value_part(&self) -> Mat2 {
        Mat2(self.0.map(|r| r.map(|e| e.value)))
    }

    pub fn slope_part(&self) -> Mat2 {
        Mat2(self.0.map(|r| r.map(|e| e.slope)))
    }

    pub fn trace(&self) -> DualComplex {
        self.0[0][0] + self.0[1][1]
    }

    pub fn det(&self) -> DualComplex {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    pub fn inverse(&self) -> Option<Self> {
        let d = self.det().inverse()?;
        let [[a, b], [cc, e]] = self.0;
        Some(JetMatrix2::new(e * d, -b * d, -cc * d, a * d))
    }

    pub fn pow(&self, e: i32) -> Option<Self> {
        let base = if e < 0 { self.inverse()? } else { *self };
        Some((0..e.unsigned_abs()).fold(JetMatrix2::identity(), |acc, _| acc * base))
    }

    pub fn max_diff(&self, other: &JetMatrix2) -> f64 {
        self.value_part().max_diff(&other.value_part()).max(self.slope_part().max_diff(&other.slope_part()))
    }
}

impl Mul for JetMatrix2 {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let mut out = [[DualComplex::ZERO; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = self.0[i][0] * o.0[0][j] + self.0[i][1] * o.0[1][j];
            }
        }
        JetMatrix2(out)
    }
}

impl Add for JetMatrix2 {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let mut out = self.0;
        for (i, row) in out.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = *e + o.0[i][j];
            }
        }
        JetMatrix2(out)
    }
}

impl Sub for JetMatrix2 {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        let mut out = self.0;
        for (i, row) in out.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = *e - o.0[i][j];
            }
        }
        JetMatrix2(out)
    }
}

fn golden_to_complex(a: &GoldenScalar) -> Complex64 {
    c(a.to_f64(), 0.0)
}

/// Evaluates `f` at `alpha + e`: the value is `f(alpha)`, the slope `f'(alpha)`.
pub fn jet_eval_poly(f: &GfPoly, alpha: &GoldenScalar) -> DualComplex {
    let x = DualComplex::new(golden_to_complex(alpha), c(1.0, 0.0));
    f.to_f64_coeffs()
        .iter()
        .rev()
        .fold(DualComplex::ZERO, |acc, &k| acc * x + DualComplex::constant(c(k, 0.0)))
}

/// Which trace `tr(XY)` the representation is normalised to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum JetMode {
    /// `tr(XY) = alpha + e`, so traces of words evaluate `tau_W` at `alpha + e`.
    Shifted,
    /// `tr(XY) = 0 + e`, the literal normalisation `tr(XY) = lambda - alpha`.
    Verbatim,
}

impl JetMode {
    pub fn name(self) -> &'static str {
        match self {
            JetMode::Shifted => "shifted",
            JetMode::Verbatim => "verbatim",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaRepresentation {
    pub mode: JetMode,
    pub x: JetMatrix2,
    pub y: JetMatrix2,
    pub w: JetMatrix2,
    pub tr_w: DualComplex,
}

/// `X = [[e^{i pi/3}, 0], [1, e^{-i pi/3}]]` and upper-triangular `Y` with
/// diagonal `e^{+-i pi/5}`, whose corner is solved from the trace of `XY`.
pub fn lambda_representation(w: &GroupWord, alpha: &GoldenScalar, mode: JetMode) -> LambdaRepresentation {
    let e3 = Complex64::from_polar(1.0, PI / 3.0);
    let e5 = Complex64::from_polar(1.0, PI / 5.0);
    let k = DualComplex::constant;
    let x = JetMatrix2::new(k(e3), DualComplex::ZERO, DualComplex::ONE, k(e3.conj()));
    let target = match mode {
        JetMode::Shifted => DualComplex::new(golden_to_complex(alpha), c(1.0, 0.0)),
        JetMode::Verbatim => DualComplex::EPS,
    };
    // tr(XY) = 2 cos(8 pi / 15) + corner
    let corner = target - k(c(2.0 * num_traits::Float::cos(8.0 * PI / 15.0), 0.0));
    let y = JetMatrix2::new(k(e5), corner, DualComplex::ZERO, k(e5.conj()));
    let wm = w.lifted_letters().fold(JetMatrix2::identity(), |acc, (g, e)| {
        let base = if g == Gen::X { x } else { y };
        acc * base.pow(e).expect("generators are unimodular")
    });
    LambdaRepresentation { mode, x, y, w: wm, tr_w: wm.trace() }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NilpotentSquare {
    /// The value part of `M`, satisfying `M^2 = -I + e Z`.
    pub z: Mat2,
    pub residual: f64,
    pub trace_z: Complex64,
}

pub const JET_TOL: f64 = 1e-9;

/// Verifies `M^2 = -I + e Z` with `Z` the value part of `M` and `tr Z = 0`,
/// for `M` of determinant 1 and trace `e`.
pub fn nilpotent_square_identity(m: &JetMatrix2) -> Result<NilpotentSquare, JetError> {
    if m.trace().dist(DualComplex::EPS) > JET_TOL {
        return Err(JetError::Precondition("trace is not e"));
    }
    if m.det().dist(DualComplex::ONE) > JET_TOL {
        return Err(JetError::Precondition("determinant is not 1"));
    }
    let z = m.value_part();
    let expected = JetMatrix2::from_parts(&Mat2::identity().scale(c(-1.0, 0.0)), &z);
    let residual = (*m * *m).max_diff(&expected);
    let trace_z = z.trace();
    let worst = residual.max(trace_z.norm());
    if worst > JET_TOL {
        return Err(JetError::IdentityViolated(worst));
    }
    Ok(NilpotentSquare { z, residual, trace_z })
}

/// Residual of `(-I + e A)(-I + e B) = I - e (A + B)`.
pub fn additivity_residual(a: &Mat2, b: &Mat2) -> f64 {
    let minus = Mat2::identity().scale(c(-1.0, 0.0));
    let lhs = JetMatrix2::from_parts(&minus, a) * JetMatrix2::from_parts(&minus, b);
    let sum = (*a + *b).scale(c(-1.0, 0.0));
    lhs.max_diff(&JetMatrix2::from_parts(&Mat2::identity(), &sum))
}

fn random_complex<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

/// Random traceless 2x2 complex matrix.
pub fn random_traceless<R: Rng + ?Sized>(rng: &mut R) -> Mat2 {
    let a = random_complex(rng);
    Mat2::new(a, random_complex(rng), random_complex(rng), -a)
}

/// Random jet of determinant 1 and trace `e`.
///
/// The value part `M0` is a conjugate of `diag(i, -i)`. The slope part is
/// `I/2 + N` with `N` traceless and `tr(M0 N) = 0`, which keeps the determinant at 1.
pub fn random_trace_eps_jet<R: Rng + ?Sized>(rng: &mut R) -> JetMatrix2 {
    let g = Mat2::random_sl2(rng);
    let d = Mat2::new(c(0.0, 1.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, -1.0));
    let m0 = g * d * g.inverse().expect("unimodular");
    let n0 = random_traceless(rng);
    // tr(M0 M0) = -2
    let coef = (m0 * n0).trace() / c(-2.0, 0.0);
    let n = n0 - m0.scale(coef);
    let m1 = Mat2::identity().scale(c(0.5, 0.0)) + n;
    JetMatrix2::from_parts(&m0, &m1)
}

fn push_new(set: &mut Vec<Mat2>, m: Mat2, tol: f64) -> bool {
    if set.iter().any(|s| s.max_diff(&m) < tol) {
        false
    } else {
        set.push(m);
        true
    }
}

/// Elements of the matrix group generated by `gens`, up to `cap` elements.
pub fn matrix_group_closure(gens: &[Mat2], cap: usize, tol: f64) -> Vec<Mat2> {
    let mut elems = Vec::from([Mat2::identity()]);
    let mut i = 0;
    while i < elems.len() && elems.len() < cap {
        let e = elems[i];
        for g in gens {
            push_new(&mut elems, e * *g, tol);
        }
        i += 1;
    }
    elems
}

/// Distinct conjugates `g Z g^{-1}` for `g` in `group`.
pub fn conjugates(group: &[Mat2], z: &Mat2, tol: f64) -> Vec<Mat2> {
    let mut out = Vec::new();
    for g in group {
        push_new(&mut out, *g * *z * g.inverse().expect("unimodular"), tol);
    }
    out
}

/// The representation's value parts at `alpha = 0` in verbatim mode, and `Z = XY`.
pub fn verbatim_conjugate_data() -> (Mat2, Mat2, Mat2) {
    let w: GroupWord = GroupWord::from_pairs(&[(1, 1)]);
    let r = lambda_representation(&w, &GoldenScalar::zero(), JetMode::Verbatim);
    (r.x.value_part(), r.y.value_part(), r.w.value_part())
}
