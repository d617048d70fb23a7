//! Trace polynomial `tau_W(lambda) = tr W(X, Y)` for `X, Y` in `SL(2)` with
//! `tr X = 1`, `tr Y = phi` and `tr XY = lambda`.
//!
//! Every element of the algebra generated by `X` and `Y` is a combination of
//! `I, X, Y, XY` whose coefficients are polynomials in the three traces. Right
//! multiplication by a generator is rewritten with Cayley–Hamilton
//! (`g^2 = tr(g) g - I`) and the anticommutator identity
//! `YX = tr(X) Y + tr(Y) X + (tr XY - tr X tr Y) I - XY`, so no matrix entry
//! is ever represented and all coefficients stay in `Q(sqrt 5)[lambda]`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_complex::Complex64;
use rand::Rng;

use crate::exact::{GfPoly, GoldenScalar, PHI_F64};
use crate::numeric::Mat2;
use crate::words::{Gen, GroupWord, Syllable};

/// Coefficients of `I, X, Y, XY`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct AlgebraElement([GfPoly; 4]);

const I: usize = 0;
const XI: usize = 1;
const YI: usize = 2;
const P: usize = 3;

impl AlgebraElement {
    fn identity() -> Self {
        AlgebraElement([GfPoly::constant(GoldenScalar::one()), GfPoly::zero(), GfPoly::zero(), GfPoly::zero()])
    }
}

/// Trace evaluator with a memo of already-reduced word prefixes.
///
/// A single engine can be reused across many words; prefixes shared between
/// them are reduced once.
#[derive(Debug, Clone)]
pub struct TraceEngine {
    tr_x: GoldenScalar,
    tr_y: GoldenScalar,
    prefixes: BTreeMap<Vec<Syllable>, AlgebraElement>,
}

impl Default for TraceEngine {
    fn default() -> Self {
        TraceEngine::new()
    }
}

impl TraceEngine {
    /// Engine for the `(3, 5)` specialisation `tr X = 1`, `tr Y = phi`.
    pub fn new() -> Self {
        TraceEngine { tr_x: GoldenScalar::one(), tr_y: GoldenScalar::phi(), prefixes: BTreeMap::new() }
    }

    pub fn memo_len(&self) -> usize {
        self.prefixes.len()
    }

    pub fn trace_polynomial(&mut self, w: &GroupWord) -> GfPoly {
        let elem = self.reduce_prefix(w.syllables());
        self.trace_of(&elem)
    }

    fn reduce_prefix(&mut self, syl: &[Syllable]) -> AlgebraElement {
        if syl.is_empty() {
            return AlgebraElement::identity();
        }
        if let Some(e) = self.prefixes.get(syl) {
            return e.clone();
        }
        let (last, head) = syl.split_last().expect("non-empty");
        let mut e = self.reduce_prefix(head);
        let tmp = GroupWord::from_syllables(alloc::vec![*last]).expect("valid syllable");
        for (g, exp) in tmp.lifted_letters() {
            for _ in 0..exp.unsigned_abs() {
                e = if exp > 0 { self.mul_gen(&e, g) } else { self.mul_gen_inv(&e, g) };
            }
        }
        self.prefixes.insert(syl.to_vec(), e.clone());
        e
    }

    fn mul_gen(&self, v: &AlgebraElement, g: Gen) -> AlgebraElement {
        let s = &self.tr_x;
        let t = &self.tr_y;
        let [ci, cx, cy, cp] = &v.0;
        match g {
            Gen::X => {
                // (lambda - s t) cY - cX - t cP
                let st = s * t;
                let i = &(&(&cy.shift() - &cy.scale(&st)) - cx) - &cp.scale(t);
                let x = &(&(ci + &cx.scale(s)) + &cy.scale(t)) + &cp.shift();
                let y = &cy.scale(s) + cp;
                let p = -cy;
                AlgebraElement([i, x, y, p])
            }
            Gen::Y => {
                let i = -cy;
                let x = -cp;
                let y = ci + &cy.scale(t);
                let p = cx + &cp.scale(t);
                AlgebraElement([i, x, y, p])
            }
        }
    }

    /// `v g^-1 = tr(g) v - v g`.
    fn mul_gen_inv(&self, v: &AlgebraElement, g: Gen) -> AlgebraElement {
        let tr = match g {
            Gen::X => &self.tr_x,
            Gen::Y => &self.tr_y,
        };
        let vg = self.mul_gen(v, g);
        AlgebraElement(core::array::from_fn(|k| &v.0[k].scale(tr) - &vg.0[k]))
    }

    fn trace_of(&self, e: &AlgebraElement) -> GfPoly {
        let two = GoldenScalar::from(2);
        let out = &e.0[I].scale(&two) + &e.0[XI].scale(&self.tr_x);
        let out = &out + &e.0[YI].scale(&self.tr_y);
        &out + &e.0[P].shift()
    }
}

/// `tau_W(lambda)`, exact, with a fresh memo.
pub fn trace_polynomial(w: &GroupWord) -> GfPoly {
    TraceEngine::new().trace_polynomial(w)
}

#[derive(Debug, Clone, Copy, PartialEq, thiserror::Error)]
pub enum OracleError {
    #[error("constraint system is degenerate at lambda0 = {0}")]
    DegenerateParameter(Complex64),
    #[error("at least one trial is required")]
    NoTrials,
    #[error("conjugated traces disagree by {0:e}")]
    ConjugationMismatch(f64),
}

/// Explicit matrices with `tr X = 1`, `tr Y = phi`, `tr XY = lambda0`.
///
/// `X` is the companion matrix `[[0, -1], [1, 1]]` and `Y = [[0, q], [r, phi]]`
/// with `r` a root of `r^2 + (lambda0 - phi) r + 1 = 0` and `q = -1/r`.
pub fn oracle_matrices(lambda0: Complex64) -> Result<(Mat2, Mat2), OracleError> {
    if !(lambda0.re.is_finite() && lambda0.im.is_finite()) {
        return Err(OracleError::DegenerateParameter(lambda0));
    }
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let t = Complex64::new(PHI_F64, 0.0);
    let x = Mat2::new(zero, -one, one, one);
    let b = lambda0 - t;
    let disc = (b * b - 4.0).sqrt();
    // larger-modulus root, away from zero
    let r1 = (-b + disc) / 2.0;
    let r2 = (-b - disc) / 2.0;
    let r = if r1.norm() >= r2.norm() { r1 } else { r2 };
    if r.norm() < 1e-12 || !r.re.is_finite() {
        return Err(OracleError::DegenerateParameter(lambda0));
    }
    let y = Mat2::new(zero, -one / r, r, t);
    let resid = (y.det() - one).norm() + ((x * y).trace() - lambda0).norm();
    if resid > 1e-9 * (1.0 + lambda0.norm()) {
        return Err(OracleError::DegenerateParameter(lambda0));
    }
    Ok((x, y))
}

/// Evaluates `W` on explicit matrices using balanced exponent lifts.
pub fn eval_word_matrix(w: &GroupWord, x: &Mat2, y: &Mat2) -> Option<Mat2> {
    let xi = x.inverse()?;
    let yi = y.inverse()?;
    let mut acc = Mat2::identity();
    for (g, e) in w.lifted_letters() {
        let m = match (g, e > 0) {
            (Gen::X, true) => *x,
            (Gen::X, false) => xi,
            (Gen::Y, true) => *y,
            (Gen::Y, false) => yi,
        };
        for _ in 0..e.unsigned_abs() {
            acc = acc * m;
        }
    }
    Some(acc)
}

/// Independent floating-point trace of `W(X, Y)` at `tr XY = lambda0`.
///
/// Each trial conjugates both matrices by a fresh random `SL(2, C)` element;
/// the per-trial traces must agree pairwise within `1e-9` (relative to their
/// size), and their mean is returned.
pub fn numeric_trace_oracle<R: Rng + ?Sized>(
    w: &GroupWord,
    lambda0: Complex64,
    trials: usize,
    rng: &mut R,
) -> Result<Complex64, OracleError> {
    if trials == 0 {
        return Err(OracleError::NoTrials);
    }
    let (x, y) = oracle_matrices(lambda0)?;
    let mut traces = Vec::with_capacity(trials);
    for _ in 0..trials {
        let c = Mat2::random_sl2(rng);
        let ci = c.inverse().ok_or(OracleError::DegenerateParameter(lambda0))?;
        let xc = c * x * ci;
        let yc = c * y * ci;
        let m = eval_word_matrix(w, &xc, &yc).ok_or(OracleError::DegenerateParameter(lambda0))?;
        traces.push(m.trace());
    }
    let scale = traces.iter().fold(1.0f64, |m, t| m.max(t.norm()));
    let spread = traces
        .iter()
        .flat_map(|a| traces.iter().map(move |b| (a - b).norm()))
        .fold(0.0f64, f64::max);
    if spread > 1e-9 * scale {
        return Err(OracleError::ConjugationMismatch(spread));
    }
    let sum: Complex64 = traces.iter().sum();
    Ok(sum / trials as f64)
}

/// `tau` evaluated at a complex point through the double images of its coefficients.
pub fn eval_poly_complex(f: &GfPoly, at: Complex64) -> Complex64 {
    f.coeffs()
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, c| acc * at + c.to_f64())
}
