//! Presentation 2-complexes, their finite abelian covers with deck group
//! `Z_n x Z_n`, and cellular homology with coefficients in the field of two
//! elements.
//!
//! Growth tables produced here are finite-level evidence. They do not
//! certify anything about the infinite cover.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::ToPrimitive;

use crate::intmat::smith_normal_form;
use crate::subgroups::{relation_matrix, Presentation, Provenance};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoverError {
    #[error("relator {face} maps to ({a}, {b}) in Z_{n} x Z_{n}, not zero")]
    RelatorNotKilled { face: usize, a: u64, b: u64, n: u64 },
    #[error("modulus {0} is even but the complex has squared relator cells")]
    EvenModulusWithSquares(u64),
    #[error("assignment has {found} entries for {expected} edges")]
    AssignmentLength { expected: usize, found: usize },
    #[error("modulus must be positive")]
    ZeroModulus,
    #[error("attaching word of face {0} is not a closed edge path")]
    OpenAttachingWord(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoverWarning {
    /// The assignment does not generate `Z_n x Z_n`, so the cover is disconnected.
    NonSurjectiveAssignment { components: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    /// Signed 1-based edge indices; `-e` traverses edge `e` backwards.
    pub word: Vec<i32>,
    pub label: Provenance,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoComplex {
    pub vertices: usize,
    /// `(tail, head)` for each 1-cell.
    pub edges: Vec<(usize, usize)>,
    pub faces: Vec<Face>,
}

impl TwoComplex {
    pub fn counts(&self) -> (usize, usize, usize) {
        (self.vertices, self.edges.len(), self.faces.len())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }

    /// Checks every attaching word uses existing edges and closes up.
    pub fn validate(&self) -> Result<(), CoverError> {
        for (fi, f) in self.faces.iter().enumerate() {
            let mut at: Option<usize> = None;
            let mut start = None;
            for &l in &f.word {
                let e = l.unsigned_abs() as usize;
                if e == 0 || e > self.edges.len() {
                    return Err(CoverError::OpenAttachingWord(fi));
                }
                let (t, h) = self.edges[e - 1];
                let (from, to) = if l > 0 { (t, h) } else { (h, t) };
                if let Some(a) = at {
                    if a != from {
                        return Err(CoverError::OpenAttachingWord(fi));
                    }
                } else {
                    start = Some(from);
                }
                at = Some(to);
            }
            if at != start {
                return Err(CoverError::OpenAttachingWord(fi));
            }
        }
        Ok(())
    }

    /// Subcomplex with every face of the given label removed.
    pub fn without_faces(&self, label: Provenance) -> TwoComplex {
        TwoComplex {
            vertices: self.vertices,
            edges: self.edges.clone(),
            faces: self.faces.iter().filter(|f| f.label != label).cloned().collect(),
        }
    }

    pub fn has_squares(&self) -> bool {
        self.faces.iter().any(|f| f.label == Provenance::FromW2Square)
    }

    /// Connected components of the 1-skeleton.
    pub fn components(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.vertices).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut comps = self.vertices;
        for &(t, h) in &self.edges {
            let (a, b) = (find(&mut parent, t), find(&mut parent, h));
            if a != b {
                parent[a] = b;
                comps -= 1;
            }
        }
        comps
    }

    pub fn chain_complex(&self) -> ChainComplexF2 {
        let mut d1 = BitMatrix::new(self.edges.len(), self.vertices);
        for (i, &(t, h)) in self.edges.iter().enumerate() {
            d1.flip(i, t);
            d1.flip(i, h);
        }
        let mut d2 = BitMatrix::new(self.faces.len(), self.edges.len());
        for (i, f) in self.faces.iter().enumerate() {
            for &l in &f.word {
                d2.flip(i, l.unsigned_abs() as usize - 1);
            }
        }
        ChainComplexF2 { d1, d2 }
    }
}

/// One 0-cell, one 1-cell per generator and one 2-cell per relator.
pub fn presentation_complex(p: &Presentation) -> TwoComplex {
    TwoComplex {
        vertices: 1,
        edges: vec![(0, 0); p.generators],
        faces: p.relators.iter().map(|r| Face { word: r.word.clone(), label: r.provenance }).collect(),
    }
}

/// Dense matrix over the field of two elements, stored as packed rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64);
        BitMatrix { rows, cols, words, data: vec![0; rows * words] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r * self.words + c / 64] >> (c % 64) & 1 == 1
    }

    pub fn flip(&mut self, r: usize, c: usize) {
        self.data[r * self.words + c / 64] ^= 1 << (c % 64);
    }

    fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.words..(r + 1) * self.words]
    }

    pub fn rank(&self) -> usize {
        let mut m = self.data.clone();
        let w = self.words;
        let mut rank = 0;
        for c in 0..self.cols {
            let (wi, bit) = (c / 64, 1u64 << (c % 64));
            let Some(p) = (rank..self.rows).find(|&r| m[r * w + wi] & bit != 0) else { continue };
            if p != rank {
                for k in 0..w {
                    m.swap(p * w + k, rank * w + k);
                }
            }
            for r in 0..self.rows {
                if r != rank && m[r * w + wi] & bit != 0 {
                    for k in 0..w {
                        m[r * w + k] ^= m[rank * w + k];
                    }
                }
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }
}

/// Boundary maps as matrices whose rows are cells of the higher dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplexF2 {
    pub d1: BitMatrix,
    pub d2: BitMatrix,
}

impl ChainComplexF2 {
    pub fn boundary_squared_vanishes(&self) -> bool {
        let w = self.d1.words;
        for f in 0..self.d2.rows {
            let mut acc = vec![0u64; w];
            for e in 0..self.d2.cols {
                if self.d2.get(f, e) {
                    for (a, b) in acc.iter_mut().zip(self.d1.row(e)) {
                        *a ^= b;
                    }
                }
            }
            if acc.iter().any(|&x| x != 0) {
                return false;
            }
        }
        true
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Homology {
    pub h0: usize,
    pub h1: usize,
    pub h2: usize,
}

pub fn homology_f2(k: &TwoComplex) -> Homology {
    let cc = k.chain_complex();
    let r1 = cc.d1.rank();
    let r2 = cc.d2.rank();
    let (c0, c1, c2) = k.counts();
    Homology { h0: c0 - r1, h1: c1 - r1 - r2, h2: c2 - r2 }
}

/// Voltage assignment of each 1-cell to an element of `Z_n x Z_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverSpec {
    pub n: u64,
    pub assignment: Vec<(u64, u64)>,
}

impl CoverSpec {
    /// Reduces an integer assignment to `Z^2` modulo `n`.
    pub fn from_integer(n: u64, assignment: &[(i64, i64)]) -> Self {
        let m = n as i64;
        CoverSpec {
            n,
            assignment: assignment.iter().map(|&(a, b)| (a.rem_euclid(m) as u64, b.rem_euclid(m) as u64)).collect(),
        }
    }

    fn shift(&self, g: usize, l: i32) -> usize {
        let n = self.n as usize;
        let (a, b) = self.assignment[l.unsigned_abs() as usize - 1];
        let (a, b) = (a as usize, b as usize);
        let (i, j) = (g / n, g % n);
        if l > 0 {
            ((i + a) % n) * n + (j + b) % n
        } else {
            ((i + n - a) % n) * n + (j + n - b) % n
        }
    }

    /// Image of a word in `Z_n x Z_n`.
    pub fn image(&self, word: &[i32]) -> (u64, u64) {
        let n = self.n;
        word.iter().fold((0, 0), |(x, y), &l| {
            let (a, b) = self.assignment[l.unsigned_abs() as usize - 1];
            if l > 0 {
                ((x + a) % n, (y + b) % n)
            } else {
                ((x + n - a) % n, (y + n - b) % n)
            }
        })
    }
}

/// A cover together with the bookkeeping needed to act by deck transformations.
///
/// Cell `c` of the base over deck element `(i, j)` has index `c * n^2 + i * n + j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteCover {
    pub complex: TwoComplex,
    pub n: u64,
    pub base_counts: (usize, usize, usize),
    pub warnings: Vec<CoverWarning>,
}

impl FiniteCover {
    pub fn sheets(&self) -> usize {
        (self.n * self.n) as usize
    }

    fn translate(&self, idx: usize, h: (u64, u64)) -> usize {
        let n = self.n as usize;
        let s = n * n;
        let (cell, g) = (idx / s, idx % s);
        let (i, j) = (g / n, g % n);
        cell * s + ((i + h.0 as usize) % n) * n + (j + h.1 as usize) % n
    }

    pub fn translate_vertex(&self, v: usize, h: (u64, u64)) -> usize {
        self.translate(v, h)
    }

    pub fn translate_edge(&self, e: usize, h: (u64, u64)) -> usize {
        self.translate(e, h)
    }

    pub fn translate_face(&self, f: usize, h: (u64, u64)) -> usize {
        self.translate(f, h)
    }

    /// Whether translating by `h` commutes with both boundary maps on the given cells.
    pub fn deck_commutes(&self, edge: usize, face: usize, h: (u64, u64)) -> bool {
        let c = &self.complex;
        let (t, hd) = c.edges[edge];
        let (t2, h2) = c.edges[self.translate_edge(edge, h)];
        if (self.translate_vertex(t, h), self.translate_vertex(hd, h)) != (t2, h2) {
            return false;
        }
        let moved: Vec<i32> = c.faces[face]
            .word
            .iter()
            .map(|&l| {
                let e = self.translate_edge(l.unsigned_abs() as usize - 1, h) as i32 + 1;
                e * l.signum()
            })
            .collect();
        c.faces[self.translate_face(face, h)].word == moved
    }

    /// Lifted `W^2`-square faces have attaching words of the form `p p`.
    pub fn squares_lift_to_squares(&self) -> bool {
        self.complex.faces.iter().filter(|f| f.label == Provenance::FromW2Square).all(|f| {
            let h = f.word.len() / 2;
            f.word.len() % 2 == 0 && f.word[..h] == f.word[h..]
        })
    }
}

pub fn build_finite_cover(k: &TwoComplex, spec: &CoverSpec) -> Result<FiniteCover, CoverError> {
    if spec.n == 0 {
        return Err(CoverError::ZeroModulus);
    }
    if spec.assignment.len() != k.edges.len() {
        return Err(CoverError::AssignmentLength { expected: k.edges.len(), found: spec.assignment.len() });
    }
    if spec.n.is_multiple_of(2) && k.has_squares() {
        return Err(CoverError::EvenModulusWithSquares(spec.n));
    }
    k.validate()?;
    let spec = CoverSpec { n: spec.n, assignment: spec.assignment.iter().map(|&(a, b)| (a % spec.n, b % spec.n)).collect() };
    for (fi, f) in k.faces.iter().enumerate() {
        let (a, b) = spec.image(&f.word);
        if (a, b) != (0, 0) {
            return Err(CoverError::RelatorNotKilled { face: fi, a, b, n: spec.n });
        }
    }
    let s = (spec.n * spec.n) as usize;
    let mut edges = Vec::with_capacity(k.edges.len() * s);
    for (e, &(t, h)) in k.edges.iter().enumerate() {
        for g in 0..s {
            edges.push((t * s + g, h * s + spec.shift(g, e as i32 + 1)));
        }
    }
    let mut faces = Vec::with_capacity(k.faces.len() * s);
    for f in &k.faces {
        for g0 in 0..s {
            let mut g = g0;
            let mut word = Vec::with_capacity(f.word.len());
            for &l in &f.word {
                let e = l.unsigned_abs() as usize - 1;
                if l > 0 {
                    word.push((e * s + g) as i32 + 1);
                    g = spec.shift(g, l);
                } else {
                    g = spec.shift(g, l);
                    word.push(-((e * s + g) as i32 + 1));
                }
            }
            faces.push(Face { word, label: f.label });
        }
    }
    let complex = TwoComplex { vertices: k.vertices * s, edges, faces };
    let mut warnings = Vec::new();
    let comps = complex.components();
    if comps != k.components() {
        warnings.push(CoverWarning::NonSurjectiveAssignment { components: comps });
    }
    Ok(FiniteCover { complex, n: spec.n, base_counts: k.counts(), warnings })
}

/// A homomorphism from the presentation's group onto `Z^2`, read off the
/// Smith normal form of the relation matrix. `None` when the free rank is below two.
pub fn free_epimorphism(p: &Presentation) -> Option<Vec<(i64, i64)>> {
    let m = relation_matrix(p);
    let snf = smith_normal_form(&m);
    let r = snf.rank();
    if p.generators < r + 2 {
        return None;
    }
    (0..p.generators)
        .map(|g| Some((snf.right[(g, r)].to_i64()?, snf.right[(g, r + 1)].to_i64()?)))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthRow {
    pub n: u64,
    /// Homology of the cover of the subcomplex `L` with squared cells removed.
    pub l: Homology,
    /// Homology of the cover of the full complex `K`.
    pub k: Homology,
    pub connected: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthTable {
    pub rows: Vec<GrowthRow>,
}

impl GrowthTable {
    /// Whether `h1` of the `L`-covers strictly increases along the table.
    pub fn h1_grows(&self) -> bool {
        self.rows.windows(2).all(|w| w[1].l.h1 > w[0].l.h1)
    }
}

/// Homology of one cover of `K` and of `L` at modulus `n`.
pub fn growth_row(p: &Presentation, base: &[(i64, i64)], n: u64) -> Result<GrowthRow, CoverError> {
    let k = presentation_complex(p);
    let l = k.without_faces(Provenance::FromW2Square);
    let spec = CoverSpec::from_integer(n, base);
    let kc = build_finite_cover(&k, &spec)?;
    let lc = build_finite_cover(&l, &spec)?;
    Ok(GrowthRow {
        n,
        l: homology_f2(&lc.complex),
        k: homology_f2(&kc.complex),
        connected: kc.warnings.is_empty(),
    })
}

/// Covers for each `n` of a fixed assignment to `Z^2`, reduced modulo `n`.
pub fn h1_growth_experiment(p: &Presentation, base: &[(i64, i64)], n_list: &[u64]) -> Result<GrowthTable, CoverError> {
    let rows = n_list.iter().map(|&n| growth_row(p, base, n)).collect::<Result<_, _>>()?;
    Ok(GrowthTable { rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn torus() -> Presentation {
        Presentation::new(2, vec![vec![1, 2, -1, -2]])
    }

    fn genus2() -> Presentation {
        Presentation::new(4, vec![vec![1, 2, -1, -2, 3, 4, -3, -4]])
    }

    fn wedge() -> Presentation {
        Presentation::new(2, vec![])
    }

    #[test]
    fn base_homology() {
        let h = homology_f2(&presentation_complex(&torus()));
        assert_eq!((h.h0, h.h1, h.h2), (1, 2, 1));
        let h = homology_f2(&presentation_complex(&genus2()));
        assert_eq!((h.h0, h.h1, h.h2), (1, 4, 1));
        let rp2 = presentation_complex(&Presentation::new(1, vec![vec![1, 1]]));
        assert_eq!(rp2.euler_characteristic(), 1);
        let h = homology_f2(&rp2);
        assert_eq!((h.h0, h.h1, h.h2), (1, 1, 1));
    }

    #[test]
    fn torus_self_cover() {
        let k = presentation_complex(&torus());
        let c = build_finite_cover(&k, &CoverSpec { n: 3, assignment: vec![(1, 0), (0, 1)] }).unwrap();
        assert!(c.warnings.is_empty());
        assert_eq!(c.complex.euler_characteristic(), 0);
        let h = homology_f2(&c.complex);
        assert_eq!((h.h0, h.h1, h.h2), (1, 2, 1));
        assert!(c.complex.chain_complex().boundary_squared_vanishes());
    }

    #[test]
    fn wedge_and_genus_two_covers() {
        let w = presentation_complex(&wedge());
        let c = build_finite_cover(&w, &CoverSpec { n: 2, assignment: vec![(1, 0), (0, 1)] }).unwrap();
        assert_eq!(c.complex.counts(), (4, 8, 0));
        assert_eq!(c.complex.euler_characteristic(), -4);

        let g = presentation_complex(&genus2());
        let spec = CoverSpec { n: 2, assignment: vec![(1, 0), (0, 0), (0, 1), (0, 0)] };
        let c = build_finite_cover(&g, &spec).unwrap();
        assert_eq!(c.complex.euler_characteristic(), -8);
        let h = homology_f2(&c.complex);
        assert_eq!((h.h0, h.h1, h.h2), (1, 10, 1));
    }

    #[test]
    fn growth_tables() {
        let t = h1_growth_experiment(&torus(), &[(1, 0), (0, 1)], &[3, 5]).unwrap();
        assert!(t.rows.iter().all(|r| r.l.h1 == 2));
        assert!(!t.h1_grows());
        let t = h1_growth_experiment(&wedge(), &[(1, 0), (0, 1)], &[3, 5]).unwrap();
        assert_eq!(t.rows.iter().map(|r| r.l.h1).collect::<Vec<_>>(), vec![10, 26]);
        assert!(t.h1_grows());
        let t = h1_growth_experiment(&genus2(), &[(1, 0), (0, 0), (0, 1), (0, 0)], &[3]).unwrap();
        assert_eq!(t.rows[0].l.h1, 20);
    }

    #[test]
    fn rejects_bad_specs() {
        let k = presentation_complex(&Presentation::new(1, vec![vec![1, 1, 1]]));
        let e = build_finite_cover(&k, &CoverSpec { n: 2, assignment: vec![(1, 0)] }).unwrap_err();
        assert!(matches!(e, CoverError::RelatorNotKilled { .. }));
        let mut sq = Presentation::new(1, vec![vec![1, 1]]);
        sq.relators[0].provenance = Provenance::FromW2Square;
        let k = presentation_complex(&sq);
        assert_eq!(
            build_finite_cover(&k, &CoverSpec { n: 2, assignment: vec![(0, 0)] }),
            Err(CoverError::EvenModulusWithSquares(2))
        );
        let c = build_finite_cover(&k, &CoverSpec { n: 3, assignment: vec![(0, 0)] }).unwrap();
        assert_eq!(c.warnings, vec![CoverWarning::NonSurjectiveAssignment { components: 9 }]);
        assert!(c.squares_lift_to_squares());
    }

    #[test]
    fn deck_translations_commute() {
        let g = presentation_complex(&genus2());
        let c = build_finite_cover(&g, &CoverSpec { n: 3, assignment: vec![(1, 0), (0, 0), (0, 1), (0, 0)] }).unwrap();
        for e in 0..c.complex.edges.len() {
            for f in 0..c.complex.faces.len() {
                assert!(c.deck_commutes(e, f, (1, 2)));
            }
        }
    }

    #[test]
    fn epimorphism_from_snf() {
        let a = free_epimorphism(&torus()).unwrap();
        let spec = CoverSpec::from_integer(5, &a);
        let c = build_finite_cover(&presentation_complex(&torus()), &spec).unwrap();
        assert!(c.warnings.is_empty());
        assert!(free_epimorphism(&Presentation::new(1, vec![])).is_none());
    }
}
