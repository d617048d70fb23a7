//! Coset tables over the `A_5` quotient and Reidemeister–Schreier
//! presentations of the preimages of `C = <c>` and its centraliser `V`.
//!
//! Words in a free group are `Vec<i32>` of signed 1-based generator indices.
//! For `G` itself generator 1 is `x` and generator 2 is `y`.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;

use crate::icosians::{centralizer_klein, generate, BinaryIcosahedral, EssentialRep, Icosian};
use crate::intmat::{AbelianGroup, IntMatrix};
use crate::words::{Gen, GroupWord};

/// Free-group word as signed 1-based generator indices.
pub type FreeWord = Vec<i32>;

pub const X: i32 = 1;
pub const Y: i32 = 2;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SubgroupError {
    #[error("relator census {found:?} differs from the orbit structure {expected:?}")]
    CensusMismatch { expected: (usize, usize, usize, usize), found: (usize, usize, usize, usize) },
    #[error("coset table is inconsistent: {0}")]
    BadTable(&'static str),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SubgroupKind {
    /// Preimage of the order-2 subgroup generated by the image of `W`.
    C,
    /// Preimage of its Klein four centraliser.
    V,
}

/// Right action of `x` and `y` on the cosets `H g` of a subgroup of `A_5`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetTable {
    pub kind: SubgroupKind,
    pub x_action: Vec<usize>,
    pub y_action: Vec<usize>,
    /// Breadth-first spanning tree: `parent[i] = (j, letter)` with `coset j * letter = i`.
    pub parent: Vec<Option<(usize, i32)>>,
}

impl CosetTable {
    pub fn index(&self) -> usize {
        self.x_action.len()
    }

    fn act(&self, coset: usize, letter: i32) -> usize {
        let perm = if letter.abs() == X { &self.x_action } else { &self.y_action };
        if letter > 0 {
            perm[coset]
        } else {
            perm.iter().position(|&t| t == coset).expect("permutation")
        }
    }

    /// Coset reached from `coset` by reading `word`.
    pub fn trace_word(&self, coset: usize, word: &[i32]) -> usize {
        word.iter().fold(coset, |c, &l| self.act(c, l))
    }

    /// Transversal word for a coset, read off the spanning tree.
    pub fn transversal(&self, coset: usize) -> FreeWord {
        let mut w = Vec::new();
        let mut c = coset;
        while let Some((p, l)) = self.parent[c] {
            w.push(l);
            c = p;
        }
        w.reverse();
        w
    }

    pub fn is_transitive(&self) -> bool {
        let mut seen = vec![false; self.index()];
        let mut q = VecDeque::from([0]);
        seen[0] = true;
        while let Some(c) = q.pop_front() {
            for n in [self.x_action[c], self.y_action[c]] {
                if !seen[n] {
                    seen[n] = true;
                    q.push_back(n);
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    fn check(&self) -> Result<(), SubgroupError> {
        let n = self.index();
        for c in 0..n {
            if self.trace_word(c, &[X; 3]) != c {
                return Err(SubgroupError::BadTable("x^3 does not act trivially"));
            }
            if self.trace_word(c, &[Y; 5]) != c {
                return Err(SubgroupError::BadTable("y^5 does not act trivially"));
            }
        }
        if !self.is_transitive() {
            return Err(SubgroupError::BadTable("action is not transitive"));
        }
        Ok(())
    }
}

/// Cycles of a permutation, each starting at its smallest point, ordered by that point.
pub fn cycles(perm: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for s in 0..perm.len() {
        if seen[s] {
            continue;
        }
        let mut cyc = Vec::new();
        let mut c = s;
        while !seen[c] {
            seen[c] = true;
            cyc.push(c);
            c = perm[c];
        }
        out.push(cyc);
    }
    out
}

fn projective_set(elems: impl IntoIterator<Item = Icosian>) -> BTreeSet<Icosian> {
    elems.into_iter().map(|q| q.sign_normalized()).collect()
}

/// Coset table of `rho^-1(C)` or `rho^-1(V)` for an essential representation.
pub fn coset_table(
    group: &BinaryIcosahedral,
    rep: &EssentialRep,
    kind: SubgroupKind,
) -> Result<CosetTable, SubgroupError> {
    let c = rep.w_image.sign_normalized();
    let sub: Vec<Icosian> = match kind {
        SubgroupKind::C => vec![Icosian::ONE, c],
        SubgroupKind::V => {
            let v = centralizer_klein(group, &c).map_err(|_| SubgroupError::BadTable("image of W is not an involution"))?;
            v.elements.to_vec()
        }
    };
    let key = |g: Icosian| -> Icosian {
        sub.iter().map(|h| (*h * g).sign_normalized()).min().expect("non-empty subgroup")
    };
    let image = projective_set(generate(&[rep.x, rep.y]));
    let n_cosets = image.len() / sub.len();

    let mut index: BTreeMap<Icosian, usize> = BTreeMap::new();
    let mut reps: Vec<Icosian> = Vec::new();
    let mut parent = Vec::new();
    index.insert(key(Icosian::ONE), 0);
    reps.push(Icosian::ONE);
    parent.push(None);
    let letters = [(X, rep.x), (Y, rep.y), (-X, rep.x.inverse()), (-Y, rep.y.inverse())];
    let mut q = VecDeque::from([0usize]);
    while let Some(i) = q.pop_front() {
        for &(l, m) in &letters {
            let g = reps[i] * m;
            let k = key(g);
            if let alloc::collections::btree_map::Entry::Vacant(slot) = index.entry(k) {
                slot.insert(reps.len());
                reps.push(g);
                parent.push(Some((i, l)));
                q.push_back(reps.len() - 1);
            }
        }
    }
    if reps.len() != n_cosets {
        return Err(SubgroupError::BadTable("coset count disagrees with |image| / |H|"));
    }
    let x_action = reps.iter().map(|g| index[&key(*g * rep.x)]).collect();
    let y_action = reps.iter().map(|g| index[&key(*g * rep.y)]).collect();
    let table = CosetTable { kind, x_action, y_action, parent };
    table.check()?;
    Ok(table)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Provenance {
    FromX3,
    FromY5,
    FromW2Pair,
    FromW2Square,
    /// Relator supplied directly rather than by rewriting.
    Given,
}

impl Provenance {
    pub fn name(self) -> &'static str {
        match self {
            Provenance::FromX3 => "from_x3",
            Provenance::FromY5 => "from_y5",
            Provenance::FromW2Pair => "from_W2_pair",
            Provenance::FromW2Square => "from_W2_square",
            Provenance::Given => "given",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        [Provenance::FromX3, Provenance::FromY5, Provenance::FromW2Pair, Provenance::FromW2Square, Provenance::Given]
            .into_iter()
            .find(|p| p.name() == s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relator {
    pub word: FreeWord,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub generators: usize,
    pub relators: Vec<Relator>,
    /// For `from_W2_square` relators, the word whose square they are.
    pub square_roots: Vec<FreeWord>,
    /// Transversal word of `a-hat`, the coset carrying the second squared relator.
    pub conjugator: Option<FreeWord>,
}

impl Presentation {
    pub fn new(generators: usize, relators: Vec<FreeWord>) -> Self {
        Presentation {
            generators,
            relators: relators.into_iter().map(|word| Relator { word, provenance: Provenance::Given }).collect(),
            square_roots: Vec::new(),
            conjugator: None,
        }
    }

    /// `(from_x3, from_y5, from_W2_pair, from_W2_square)` counts.
    pub fn census(&self) -> (usize, usize, usize, usize) {
        let count = |p| self.relators.iter().filter(|r| r.provenance == p).count();
        (
            count(Provenance::FromX3),
            count(Provenance::FromY5),
            count(Provenance::FromW2Pair),
            count(Provenance::FromW2Square),
        )
    }

    /// Euler characteristic of the presentation complex.
    pub fn euler_characteristic(&self) -> i64 {
        1 - self.generators as i64 + self.relators.len() as i64
    }

    /// The presentation with the squared `W^2` relators dropped.
    pub fn without_squares(&self) -> Presentation {
        Presentation {
            generators: self.generators,
            relators: self.relators.iter().filter(|r| r.provenance != Provenance::FromW2Square).cloned().collect(),
            square_roots: Vec::new(),
            conjugator: None,
        }
    }

    /// Renders relators as `g1 g5^-1 ...`.
    pub fn render_word(w: &[i32]) -> alloc::string::String {
        use core::fmt::Write;
        let mut s = alloc::string::String::new();
        for (i, &l) in w.iter().enumerate() {
            if i > 0 {
                s.push(' ');
            }
            let _ = write!(s, "g{}", l.unsigned_abs());
            if l < 0 {
                s.push_str("^-1");
            }
        }
        s
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "generators g1..g{}", self.generators)?;
        for (i, r) in self.relators.iter().enumerate() {
            writeln!(f, "r{} [{}]: {}", i + 1, r.provenance.name(), Presentation::render_word(&r.word))?;
        }
        Ok(())
    }
}

pub fn free_reduce(w: &[i32]) -> FreeWord {
    let mut out: FreeWord = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

pub fn invert(w: &[i32]) -> FreeWord {
    w.iter().rev().map(|l| -l).collect()
}

/// Positive-letter expansion of `W` (`x^2 -> x x`), as a relator of `G`.
pub fn word_letters(w: &GroupWord) -> FreeWord {
    w.expanded().into_iter().map(|g| if g == Gen::X { X } else { Y }).collect()
}

struct Schreier<'a> {
    table: &'a CosetTable,
    /// `(coset, generator)` to Schreier generator index (1-based), or 0 when trivial.
    label: BTreeMap<(usize, i32), i32>,
}

impl<'a> Schreier<'a> {
    fn new(table: &'a CosetTable) -> Self {
        let mut label = BTreeMap::new();
        let mut next = 1;
        for c in 0..table.index() {
            for s in [X, Y] {
                let t = table.act(c, s);
                let tree = table.parent[t] == Some((c, s)) || table.parent[c] == Some((t, -s));
                label.insert((c, s), if tree { 0 } else { next });
                if !tree {
                    next += 1;
                }
            }
        }
        Schreier { table, label }
    }

    fn count(&self) -> usize {
        self.label.values().filter(|&&v| v != 0).count()
    }

    fn rewrite(&self, start: usize, word: &[i32]) -> FreeWord {
        let mut c = start;
        let mut out = Vec::new();
        for &l in word {
            if l > 0 {
                let g = self.label[&(c, l)];
                if g != 0 {
                    out.push(g);
                }
                c = self.table.act(c, l);
            } else {
                let prev = self.table.act(c, l);
                let g = self.label[&(prev, -l)];
                if g != 0 {
                    out.push(-g);
                }
                c = prev;
            }
        }
        free_reduce(&out)
    }
}

/// Reidemeister–Schreier presentation of the subgroup of `G` behind `table`.
///
/// One rewritten relator per orbit of the relevant cyclic action: `x` on
/// cosets for `x^3`, `y` for `y^5`, and `W` for `W^2`. Cosets fixed by `W`
/// give relators that are literal squares `s^2`.
pub fn schreier_presentation(table: &CosetTable, w: &GroupWord) -> Result<Presentation, SubgroupError> {
    let sch = Schreier::new(table);
    let wl = word_letters(w);
    let n = table.index();
    let x_cycles = cycles(&table.x_action);
    let y_cycles = cycles(&table.y_action);
    let w_perm: Vec<usize> = (0..n).map(|c| table.trace_word(c, &wl)).collect();
    let w_cycles = cycles(&w_perm);

    let mut relators = Vec::new();
    for cyc in &x_cycles {
        relators.push(Relator { word: sch.rewrite(cyc[0], &[X; 3]), provenance: Provenance::FromX3 });
    }
    for cyc in &y_cycles {
        relators.push(Relator { word: sch.rewrite(cyc[0], &[Y; 5]), provenance: Provenance::FromY5 });
    }
    let w2: FreeWord = wl.iter().chain(wl.iter()).copied().collect();
    for cyc in w_cycles.iter().filter(|c| c.len() == 2) {
        relators.push(Relator { word: sch.rewrite(cyc[0], &w2), provenance: Provenance::FromW2Pair });
    }
    let mut square_roots = Vec::new();
    let mut conjugator = None;
    for cyc in w_cycles.iter().filter(|c| c.len() == 1) {
        let root = sch.rewrite(cyc[0], &wl);
        let sq: FreeWord = root.iter().chain(root.iter()).copied().collect();
        relators.push(Relator { word: sq, provenance: Provenance::FromW2Square });
        square_roots.push(root);
        if cyc[0] != 0 && conjugator.is_none() {
            conjugator = Some(table.transversal(cyc[0]));
        }
    }
    let p = Presentation { generators: sch.count(), relators, square_roots, conjugator };

    let fixed = w_cycles.iter().filter(|c| c.len() == 1).count();
    let paired = w_cycles.iter().filter(|c| c.len() == 2).count();
    let expected = (x_cycles.len(), y_cycles.len(), paired, fixed);
    let found = p.census();
    let orbit_mismatch = w_cycles.iter().any(|c| c.len() > 2)
        || (table.kind == SubgroupKind::C && found != (10, 6, 14, 2));
    if found != expected || orbit_mismatch {
        return Err(SubgroupError::CensusMismatch { expected, found });
    }
    Ok(p)
}

/// Relation matrix (relators by generators) of exponent sums.
pub fn relation_matrix(p: &Presentation) -> IntMatrix {
    let mut m = IntMatrix::zeros(p.relators.len(), p.generators);
    for (i, r) in p.relators.iter().enumerate() {
        for &l in &r.word {
            let j = l.unsigned_abs() as usize - 1;
            m[(i, j)] += BigInt::from(l.signum());
        }
    }
    m
}

pub fn abelianization(p: &Presentation) -> AbelianGroup {
    AbelianGroup::from_relations(&relation_matrix(p))
}

/// One Tietze move: finds a relator in which some generator occurs exactly
/// once, solves for that generator, substitutes it everywhere and removes
/// both. Returns `None` when no such relator exists.
pub fn eliminate_generator(p: &Presentation) -> Option<Presentation> {
    for (ri, r) in p.relators.iter().enumerate() {
        for g in 1..=p.generators as i32 {
            let occ: Vec<usize> = r.word.iter().enumerate().filter(|(_, l)| l.abs() == g).map(|(i, _)| i).collect();
            if occ.len() != 1 {
                continue;
            }
            let pos = occ[0];
            // u g^e v = 1  =>  g^e = u^-1 v^-1
            let u = &r.word[..pos];
            let v = &r.word[pos + 1..];
            let mut val: FreeWord = invert(u);
            val.extend(invert(v));
            if r.word[pos] < 0 {
                val = invert(&val);
            }
            let renumber = |l: i32| if l.abs() > g { l - l.signum() } else { l };
            let subst = |w: &[i32]| -> FreeWord {
                let mut out = Vec::new();
                for &l in w {
                    if l == g {
                        out.extend(val.iter().copied());
                    } else if l == -g {
                        out.extend(invert(&val));
                    } else {
                        out.push(l);
                    }
                }
                free_reduce(&out).into_iter().map(renumber).collect()
            };
            let relators = p
                .relators
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != ri)
                .map(|(_, r)| Relator { word: subst(&r.word), provenance: r.provenance })
                .collect();
            return Some(Presentation {
                generators: p.generators - 1,
                relators,
                square_roots: p.square_roots.iter().map(|s| subst(s)).collect(),
                conjugator: None,
            });
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::GoldenScalar;
    use crate::icosians::{build_binary_icosahedral, essential_representation};
    use crate::words::parse_word;

    fn xy_setup() -> (BinaryIcosahedral, EssentialRep, GroupWord) {
        let g = build_binary_icosahedral().unwrap();
        let w = parse_word("xy").unwrap();
        let rep = essential_representation(&g, &w, &GoldenScalar::zero()).unwrap();
        (g, rep, w)
    }

    #[test]
    fn table_indices() {
        let (g, rep, _) = xy_setup();
        let c = coset_table(&g, &rep, SubgroupKind::C).unwrap();
        assert_eq!(c.index(), 30);
        let v = coset_table(&g, &rep, SubgroupKind::V).unwrap();
        assert_eq!(v.index(), 15);
    }

    #[test]
    fn x_and_y_act_without_fixed_points() {
        let (g, rep, _) = xy_setup();
        let c = coset_table(&g, &rep, SubgroupKind::C).unwrap();
        let xc = cycles(&c.x_action);
        assert_eq!(xc.len(), 10);
        assert!(xc.iter().all(|cy| cy.len() == 3));
        let yc = cycles(&c.y_action);
        assert_eq!(yc.len(), 6);
        assert!(yc.iter().all(|cy| cy.len() == 5));
    }

    #[test]
    fn presentation_of_gamma() {
        let (g, rep, w) = xy_setup();
        let t = coset_table(&g, &rep, SubgroupKind::C).unwrap();
        let p = schreier_presentation(&t, &w).unwrap();
        assert_eq!(p.generators, 31);
        assert_eq!(p.census(), (10, 6, 14, 2));
        assert_eq!(p.euler_characteristic(), 2);
        assert_eq!(p.without_squares().euler_characteristic(), 0);
        assert!(p.conjugator.is_some());
        for (r, root) in p.relators.iter().filter(|r| r.provenance == Provenance::FromW2Square).zip(&p.square_roots) {
            let half = root.len();
            assert_eq!(r.word.len(), 2 * half);
            assert_eq!(&r.word[..half], &r.word[half..]);
        }
    }

    #[test]
    fn gamma_for_the_finite_triangle_group_is_z2() {
        let (g, rep, w) = xy_setup();
        let t = coset_table(&g, &rep, SubgroupKind::C).unwrap();
        let ab = abelianization(&schreier_presentation(&t, &w).unwrap());
        assert_eq!(ab.free_rank, 0);
        assert_eq!(ab.torsion_u64(), vec![2]);
    }

    #[test]
    fn small_abelianizations() {
        let free = Presentation::new(2, vec![]);
        assert_eq!(abelianization(&free).free_rank, 2);
        let rp = Presentation::new(1, vec![vec![1, 1]]);
        let ab = abelianization(&rp);
        assert_eq!((ab.torsion_u64(), ab.free_rank), (vec![2], 0));
    }

    #[test]
    fn tietze_elimination_preserves_abelianization() {
        let (g, rep, w) = xy_setup();
        let t = coset_table(&g, &rep, SubgroupKind::C).unwrap();
        let p = schreier_presentation(&t, &w).unwrap();
        let q = eliminate_generator(&p).unwrap();
        assert_eq!(q.generators, 30);
        assert_eq!(abelianization(&q), abelianization(&p));
        // <a, b | a b^-1> ~ <a | >
        let r = eliminate_generator(&Presentation::new(2, vec![vec![1, -2]])).unwrap();
        assert_eq!(r.generators, 1);
        assert!(r.relators.is_empty());
    }

    #[test]
    fn free_reduction() {
        assert_eq!(free_reduce(&[1, 2, -2, -1, 3]), vec![3]);
        assert_eq!(invert(&[1, -2]), vec![2, -1]);
    }
}
