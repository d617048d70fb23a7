//! The binary icosahedral group `2I` as unit quaternions with coordinates in
//! `(1/2) Z[phi]`, and essential representations `G -> A_5` read off from it.
//!
//! Quaternions are stored with doubled coordinates so every stored value is
//! an algebraic integer. The trace of `w + xi + yj + zk` viewed in `SU(2)` is
//! `2w`, which is exactly the first doubled coordinate.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Mul, Neg};

use num_complex::Complex64;

use crate::exact::{GoldenScalar, ZPhi};
use crate::numeric::Mat2;
use crate::trace::trace_polynomial;
use crate::verdict::ExceptionalSet;
use crate::words::{Gen, GroupWord};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IcosianError {
    #[error("binary icosahedral closure check failed: {0}")]
    ClosureFailure(&'static str),
    #[error("no essential representation found for an exceptional root")]
    NoRepresentationFound,
    #[error("precondition violated: {0}")]
    PreconditionViolated(&'static str),
    #[error("element does not have projective order 2")]
    BadOrder,
}

/// Unit quaternion in `2I`, stored as `2 * (w, x, y, z)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Icosian {
    doubled: [ZPhi; 4],
}

impl Icosian {
    pub const ONE: Icosian = Icosian { doubled: [ZPhi::new(2, 0), ZPhi::ZERO, ZPhi::ZERO, ZPhi::ZERO] };

    /// From doubled coordinates; `None` unless the quaternion has unit norm.
    pub fn from_doubled(doubled: [ZPhi; 4]) -> Option<Self> {
        let n = doubled.iter().fold(ZPhi::ZERO, |acc, &c| acc + c * c);
        (n == ZPhi::new(4, 0)).then_some(Icosian { doubled })
    }

    pub fn doubled(&self) -> [ZPhi; 4] {
        self.doubled
    }

    /// Coordinates `(w, x, y, z)` as exact golden scalars.
    pub fn coords(&self) -> [GoldenScalar; 4] {
        let half = GoldenScalar::from_fracs(1, 2, 0, 1);
        self.doubled.map(|c| &c.to_golden() * &half)
    }

    /// Trace of the corresponding `SU(2)` matrix, `2w`.
    pub fn trace(&self) -> ZPhi {
        self.doubled[0]
    }

    pub fn trace_golden(&self) -> GoldenScalar {
        self.doubled[0].to_golden()
    }

    /// Quaternion conjugate, which is the inverse for unit quaternions.
    pub fn inverse(&self) -> Self {
        let [w, x, y, z] = self.doubled;
        Icosian { doubled: [w, -x, -y, -z] }
    }

    pub fn is_central(&self) -> bool {
        self.doubled[1..].iter().all(|c| c.is_zero())
    }

    /// Representative of `{q, -q}` whose first non-zero coordinate is positive.
    pub fn sign_normalized(&self) -> Self {
        let first = self.doubled.iter().find(|c| !c.is_zero()).copied().unwrap_or(ZPhi::ZERO);
        if first.signum() == Ordering::Less {
            -*self
        } else {
            *self
        }
    }

    /// Order of the image in `SO(3) = SU(2)/{+-1}`, read off from `|tr|`.
    pub fn projective_order(&self) -> u32 {
        match self.trace().abs() {
            t if t == ZPhi::new(2, 0) => 1,
            t if t == ZPhi::ZERO => 2,
            t if t == ZPhi::ONE => 3,
            t if t == ZPhi::PHI || t == ZPhi::new(-1, 1) => 5,
            _ => 0,
        }
    }

    /// `w + xi + yj + zk  ->  [[w + ix, y + iz], [-y + iz, w - ix]]`.
    pub fn to_mat2(&self) -> Mat2 {
        let [w, x, y, z] = self.doubled.map(|c| c.to_f64() / 2.0);
        Mat2::new(
            Complex64::new(w, x),
            Complex64::new(y, z),
            Complex64::new(-y, z),
            Complex64::new(w, -x),
        )
    }

    pub fn pow(&self, e: i32) -> Self {
        let base = if e < 0 { self.inverse() } else { *self };
        (0..e.unsigned_abs()).fold(Icosian::ONE, |acc, _| acc * base)
    }

    /// Imaginary part `(x, y, z)` as a vector in `R^3`, exact.
    pub fn imaginary(&self) -> [GoldenScalar; 3] {
        let [_, x, y, z] = self.coords();
        [x, y, z]
    }
}

impl Mul for Icosian {
    type Output = Icosian;
    fn mul(self, r: Icosian) -> Icosian {
        let [a1, b1, c1, d1] = self.doubled;
        let [a2, b2, c2, d2] = r.doubled;
        let full = [
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        ];
        // (2p)(2q) = 4pq, so halve to get 2pq
        Icosian { doubled: full.map(|c| c.half().expect("icosian product leaves (1/2)Z[phi]")) }
    }
}

impl Neg for Icosian {
    type Output = Icosian;
    fn neg(self) -> Icosian {
        Icosian { doubled: self.doubled.map(|c| -c) }
    }
}

impl fmt::Display for Icosian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [w, x, y, z] = self.coords();
        write!(f, "({w}, {x}, {y}, {z})")
    }
}

fn even_permutations() -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    let distinct = (0..4).all(|i| (0..i).all(|j| p[i] != p[j]));
                    let inversions = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
                    if distinct && inversions % 2 == 0 {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

/// The 120 icosians from their standard coordinates: all permutations of
/// `(+-1, 0, 0, 0)`, all `(+-1/2, +-1/2, +-1/2, +-1/2)`, and the even
/// permutations of `(0, +-1/2, +-(phi-1)/2, +-phi/2)`.
pub fn standard_icosians() -> Vec<Icosian> {
    let mut set = BTreeSet::new();
    let two = ZPhi::new(2, 0);
    for pos in 0..4 {
        for s in [two, -two] {
            let mut d = [ZPhi::ZERO; 4];
            d[pos] = s;
            set.insert(Icosian { doubled: d });
        }
    }
    for signs in 0..16u32 {
        let d: [ZPhi; 4] = core::array::from_fn(|i| if signs >> i & 1 == 1 { -ZPhi::ONE } else { ZPhi::ONE });
        set.insert(Icosian { doubled: d });
    }
    let base = [ZPhi::ZERO, ZPhi::ONE, ZPhi::new(-1, 1), ZPhi::PHI];
    for perm in even_permutations() {
        for signs in 0..8u32 {
            let v: [ZPhi; 4] = core::array::from_fn(|i| {
                if i > 0 && signs >> (i - 1) & 1 == 1 {
                    -base[i]
                } else {
                    base[i]
                }
            });
            let d: [ZPhi; 4] = core::array::from_fn(|i| v[perm[i]]);
            set.insert(Icosian { doubled: d });
        }
    }
    set.into_iter().collect()
}

/// Standard generators `(1 + i + j + k)/2` (order 6) and
/// `(phi + (phi-1) i + j)/2` (order 10).
pub fn standard_generators() -> [Icosian; 2] {
    let g1 = Icosian { doubled: [ZPhi::ONE; 4] };
    let g2 = Icosian { doubled: [ZPhi::PHI, ZPhi::new(-1, 1), ZPhi::ONE, ZPhi::ZERO] };
    [g1, g2]
}

/// Subgroup generated by `gens`, by breadth-first closure.
pub fn generate(gens: &[Icosian]) -> BTreeSet<Icosian> {
    let mut seen = BTreeSet::new();
    seen.insert(Icosian::ONE);
    let mut queue = VecDeque::from([Icosian::ONE]);
    while let Some(g) = queue.pop_front() {
        for &h in gens {
            let n = g * h;
            if seen.insert(n) {
                queue.push_back(n);
            }
        }
    }
    seen
}

/// The 120-element table with a multiplication table over element indices.
#[derive(Debug, Clone)]
pub struct BinaryIcosahedral {
    elements: Vec<Icosian>,
    index: BTreeMap<Icosian, usize>,
    mul: Vec<u8>,
}

impl BinaryIcosahedral {
    pub fn elements(&self) -> &[Icosian] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, q: &Icosian) -> Option<usize> {
        self.index.get(q).copied()
    }

    pub fn contains(&self, q: &Icosian) -> bool {
        self.index.contains_key(q)
    }

    /// Product of elements by index.
    pub fn mul_idx(&self, i: usize, j: usize) -> usize {
        self.mul[i * self.elements.len() + j] as usize
    }

    pub fn trace_zero(&self) -> impl Iterator<Item = &Icosian> {
        self.elements.iter().filter(|q| q.trace().is_zero())
    }
}

/// Builds `2I` from coordinates and checks it against the group generated
/// by [`standard_generators`].
pub fn build_binary_icosahedral() -> Result<BinaryIcosahedral, IcosianError> {
    let elements = standard_icosians();
    if elements.len() != 120 {
        return Err(IcosianError::ClosureFailure("coordinate set does not have 120 elements"));
    }
    if elements.iter().any(|q| Icosian::from_doubled(q.doubled).is_none()) {
        return Err(IcosianError::ClosureFailure("non-unit coordinate quaternion"));
    }
    let index: BTreeMap<Icosian, usize> = elements.iter().enumerate().map(|(i, q)| (*q, i)).collect();
    let n = elements.len();
    let mut mul = Vec::with_capacity(n * n);
    for a in &elements {
        for b in &elements {
            let i = index.get(&(*a * *b)).ok_or(IcosianError::ClosureFailure("product leaves the set"))?;
            mul.push(*i as u8);
        }
        if !index.contains_key(&a.inverse()) {
            return Err(IcosianError::ClosureFailure("inverse leaves the set"));
        }
    }
    let generated = generate(&standard_generators());
    if generated.len() != n || !generated.iter().all(|q| index.contains_key(q)) {
        return Err(IcosianError::ClosureFailure("standard generators do not generate the coordinate set"));
    }
    Ok(BinaryIcosahedral { elements, index, mul })
}

/// Evaluates `W(X, Y)` in `2I` using the balanced lifts of the exponents.
pub fn eval_word(w: &GroupWord, x: Icosian, y: Icosian) -> Icosian {
    w.lifted_letters().fold(Icosian::ONE, |acc, (g, e)| {
        let base = match g {
            Gen::X => x,
            Gen::Y => y,
        };
        acc * base.pow(e)
    })
}

/// Order of the subgroup of `SO(3)` generated by the images of `gens`.
pub fn projective_image_order(gens: &[Icosian]) -> usize {
    let lifted = generate(gens);
    if lifted.contains(&-Icosian::ONE) {
        lifted.len() / 2
    } else {
        lifted.len()
    }
}

/// An essential representation `x -> X`, `y -> Y` into `2I`, i.e. onto `A_5`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EssentialRep {
    pub word: GroupWord,
    pub x: Icosian,
    pub y: Icosian,
    pub alpha: GoldenScalar,
    /// `W(X, Y)`, which has trace 0.
    pub w_image: Icosian,
    pub image_order: usize,
}

/// Searches `2I x 2I` in table order for `(X, Y)` with `|tr X| = 1`,
/// `|tr Y| = phi`, `|tr XY| = alpha` and `tr W(X, Y) = 0`.
pub fn essential_representation(
    group: &BinaryIcosahedral,
    w: &GroupWord,
    alpha: &GoldenScalar,
) -> Result<EssentialRep, IcosianError> {
    if !ExceptionalSet::new().contains(alpha) {
        return Err(IcosianError::PreconditionViolated("alpha is not an exceptional trace"));
    }
    if !trace_polynomial(w).eval(alpha).is_zero() {
        return Err(IcosianError::PreconditionViolated("alpha is not a root of the trace polynomial"));
    }
    let abs_alpha = alpha.abs();
    let xs: Vec<Icosian> = group.elements.iter().copied().filter(|q| q.trace().abs() == ZPhi::ONE).collect();
    let ys: Vec<Icosian> = group.elements.iter().copied().filter(|q| q.trace().abs() == ZPhi::PHI).collect();
    for &x in &xs {
        for &y in &ys {
            if (x * y).trace_golden().abs() != abs_alpha {
                continue;
            }
            let wi = eval_word(w, x, y);
            if wi.trace().is_zero() {
                let image_order = projective_image_order(&[x, y]);
                return Ok(EssentialRep { word: w.clone(), x, y, alpha: alpha.clone(), w_image: wi, image_order });
            }
        }
    }
    Err(IcosianError::NoRepresentationFound)
}

/// Klein four-group centralising an involution of `A_5`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KleinFour {
    /// `{1, a, b, c}`, sign-normalised.
    pub elements: [Icosian; 4],
    pub a: Icosian,
    pub b: Icosian,
    pub c: Icosian,
}

/// Projective centraliser of a trace-0 icosian `c`.
pub fn centralizer_klein(group: &BinaryIcosahedral, c: &Icosian) -> Result<KleinFour, IcosianError> {
    if !c.trace().is_zero() {
        return Err(IcosianError::BadOrder);
    }
    let c = c.sign_normalized();
    let cent: BTreeSet<Icosian> = group
        .elements
        .iter()
        .filter(|g| {
            let gc = **g * c;
            let cg = c * **g;
            gc == cg || gc == -cg
        })
        .map(Icosian::sign_normalized)
        .collect();
    if cent.len() != 4 {
        return Err(IcosianError::ClosureFailure("projective centraliser of an involution is not of order 4"));
    }
    let a = *cent
        .iter()
        .find(|q| !q.is_central() && **q != c)
        .ok_or(IcosianError::ClosureFailure("centraliser has no third involution"))?;
    let b = (a * c).sign_normalized();
    if !cent.contains(&b) || b == a || b == c {
        return Err(IcosianError::ClosureFailure("centraliser is not a Klein four-group"));
    }
    Ok(KleinFour { elements: [Icosian::ONE, a, b, c], a, b, c })
}
