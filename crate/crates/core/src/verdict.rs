//! Root classification of `tau_W` and the resulting free-subgroup verdict.

use alloc::vec::Vec;
use core::fmt;

use crate::exact::{ExactError, GfPoly, GoldenScalar};
use crate::trace::TraceEngine;
use crate::words::{all_words, GroupWord};

/// The exceptional traces `{0, 1, phi, phi - 1}`: the values of `tr XY`
/// for which the essential representation lands in `A_5`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExceptionalSet([GoldenScalar; 4]);

impl Default for ExceptionalSet {
    fn default() -> Self {
        ExceptionalSet::new()
    }
}

impl ExceptionalSet {
    pub fn new() -> Self {
        ExceptionalSet([
            GoldenScalar::zero(),
            GoldenScalar::one(),
            GoldenScalar::phi(),
            GoldenScalar::from_ints(-1, 1),
        ])
    }

    pub fn values(&self) -> &[GoldenScalar; 4] {
        &self.0
    }

    pub fn contains(&self, v: &GoldenScalar) -> bool {
        self.0.contains(v)
    }
}

/// Human-readable labels for the four exceptional values, in order.
pub const EXCEPTIONAL_LABELS: [&str; 4] = ["0", "1", "phi", "phi-1"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootReport {
    /// `(alpha, m_alpha)` for each exceptional value, in [`ExceptionalSet`] order.
    pub multiplicities: Vec<(GoldenScalar, usize)>,
    /// `tau` with every exceptional linear factor divided out.
    pub residual: GfPoly,
    pub residual_degree: usize,
    pub degree: usize,
}

impl RootReport {
    pub fn multiplicity(&self, alpha: &GoldenScalar) -> usize {
        self.multiplicities.iter().find(|(a, _)| a == alpha).map_or(0, |(_, m)| *m)
    }

    pub fn exceptional_roots(&self) -> impl Iterator<Item = &GoldenScalar> {
        self.multiplicities.iter().filter(|(_, m)| *m > 0).map(|(a, _)| a)
    }
}

pub fn classify_roots(tau: &GfPoly) -> Result<RootReport, ExactError> {
    let degree = tau.degree().ok_or(ExactError::ZeroPolynomial)?;
    let mut residual = tau.clone();
    let mut multiplicities = Vec::with_capacity(4);
    for alpha in ExceptionalSet::new().0 {
        let (m, rest) = residual.deflate(&alpha)?;
        residual = rest;
        multiplicities.push((alpha, m));
    }
    let residual_degree = residual.degree().unwrap_or(0);
    Ok(RootReport { multiplicities, residual, residual_degree, degree })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VerdictTag {
    /// `tau` has a root outside the exceptional set.
    FreeByRootOutsideOmega,
    /// `tau` has a repeated exceptional root.
    FreeByMultipleRoot,
    /// Only simple exceptional roots, so `k <= 4`; settled by earlier case analysis.
    DeferredPriorWork,
}

impl VerdictTag {
    pub const ALL: [VerdictTag; 3] =
        [VerdictTag::FreeByRootOutsideOmega, VerdictTag::FreeByMultipleRoot, VerdictTag::DeferredPriorWork];

    pub fn name(self) -> &'static str {
        match self {
            VerdictTag::FreeByRootOutsideOmega => "FreeByRootOutsideOmega",
            VerdictTag::FreeByMultipleRoot => "FreeByMultipleRoot",
            VerdictTag::DeferredPriorWork => "DeferredPriorWork",
        }
    }
}

impl fmt::Display for VerdictTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// The non-exceptional factor of `tau`.
    Residual(GfPoly),
    /// An exceptional root of multiplicity at least two.
    MultipleRoot(GoldenScalar),
    /// The simple exceptional roots of `tau`.
    SimpleRoots(Vec<GoldenScalar>),
}

/// Where the deferred `k <= 4` case is settled.
pub const DEFERRED_CITATION: &str =
    "Levin-Rosenberger: the Tits alternative for generalised triangle groups is known when k <= 4";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub word: GroupWord,
    pub tau: GfPoly,
    pub tag: VerdictTag,
    pub witness: Witness,
    pub report: RootReport,
}

impl Verdict {
    pub fn citation(&self) -> Option<&'static str> {
        (self.tag == VerdictTag::DeferredPriorWork).then_some(DEFERRED_CITATION)
    }
}

fn decide(word: GroupWord, tau: GfPoly) -> Verdict {
    let report = classify_roots(&tau).expect("trace polynomial of a valid word has degree k >= 1");
    let (tag, witness) = if report.residual_degree > 0 {
        (VerdictTag::FreeByRootOutsideOmega, Witness::Residual(report.residual.clone()))
    } else if let Some((alpha, _)) = report.multiplicities.iter().find(|(_, m)| *m >= 2) {
        (VerdictTag::FreeByMultipleRoot, Witness::MultipleRoot(alpha.clone()))
    } else {
        // every root is a simple exceptional root, so k = number of roots <= 4
        assert!(report.degree <= 4, "simple exceptional roots force k <= 4");
        (VerdictTag::DeferredPriorWork, Witness::SimpleRoots(report.exceptional_roots().cloned().collect()))
    };
    Verdict { word, tau, tag, witness, report }
}

pub fn rosenberger_verdict(w: &GroupWord) -> Verdict {
    let tau = crate::trace::trace_polynomial(w);
    decide(w.clone(), tau)
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Census {
    pub k_max: usize,
    pub total: usize,
    pub root_outside_omega: usize,
    pub multiple_root: usize,
    pub deferred: usize,
    /// Words whose trace polynomial has a repeated exceptional root, with that root.
    pub multiple_root_witnesses: Vec<(GroupWord, GoldenScalar)>,
    /// Counts per `k`, `(k, outside, multiple, deferred)`.
    pub per_k: Vec<(usize, usize, usize, usize)>,
}

impl Census {
    pub fn count(&self, tag: VerdictTag) -> usize {
        match tag {
            VerdictTag::FreeByRootOutsideOmega => self.root_outside_omega,
            VerdictTag::FreeByMultipleRoot => self.multiple_root,
            VerdictTag::DeferredPriorWork => self.deferred,
        }
    }
}

/// Classifies every word with `1 <= k <= k_max` in enumeration order, calling
/// `visit` on each verdict.
pub fn enumerate_words_with(k_max: usize, mut visit: impl FnMut(&Verdict)) -> Census {
    let mut engine = TraceEngine::new();
    let mut census = Census { k_max, ..Census::default() };
    for k in 1..=k_max {
        let mut row = (k, 0, 0, 0);
        for w in all_words(k) {
            let tau = engine.trace_polynomial(&w);
            let v = decide(w, tau);
            match v.tag {
                VerdictTag::FreeByRootOutsideOmega => row.1 += 1,
                VerdictTag::FreeByMultipleRoot => {
                    row.2 += 1;
                    if let Witness::MultipleRoot(a) = &v.witness {
                        census.multiple_root_witnesses.push((v.word.clone(), a.clone()));
                    }
                }
                VerdictTag::DeferredPriorWork => row.3 += 1,
            }
            visit(&v);
        }
        census.total += row.1 + row.2 + row.3;
        census.root_outside_omega += row.1;
        census.multiple_root += row.2;
        census.deferred += row.3;
        census.per_k.push(row);
    }
    census
}

pub fn enumerate_words(k_max: usize) -> Census {
    enumerate_words_with(k_max, |_| {})
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::parse_word;

    fn g(a: i64, b: i64) -> GoldenScalar {
        GoldenScalar::from_ints(a, b)
    }

    #[test]
    fn classify_examples() {
        let r = classify_roots(&GfPoly::lambda()).unwrap();
        assert_eq!(r.multiplicity(&g(0, 0)), 1);
        assert_eq!(r.residual_degree, 0);

        let f = GfPoly::new(alloc::vec![g(-2, 0), g(0, 0), g(1, 0)]);
        let r = classify_roots(&f).unwrap();
        assert!(r.multiplicities.iter().all(|(_, m)| *m == 0));
        assert_eq!(r.residual_degree, 2);
        assert_eq!(r.residual, f);

        let h = GfPoly::new(alloc::vec![g(-1, 0), g(0, 1)]);
        let r = classify_roots(&h).unwrap();
        assert_eq!(r.multiplicity(&g(-1, 1)), 1);
        assert_eq!(r.residual_degree, 0);

        assert_eq!(classify_roots(&GfPoly::zero()), Err(ExactError::ZeroPolynomial));
    }

    #[test]
    fn verdict_examples() {
        let v = rosenberger_verdict(&parse_word("xyxy").unwrap());
        assert_eq!(v.tag, VerdictTag::FreeByRootOutsideOmega);
        assert!(matches!(v.witness, Witness::Residual(ref r) if r.degree() == Some(2)));

        let v = rosenberger_verdict(&parse_word("xy").unwrap());
        assert_eq!(v.tag, VerdictTag::DeferredPriorWork);
        assert!(v.citation().is_some());

        let v = rosenberger_verdict(&parse_word("x y^2").unwrap());
        assert_eq!(v.tag, VerdictTag::DeferredPriorWork);
        assert_eq!(v.witness, Witness::SimpleRoots(alloc::vec![g(-1, 1)]));
    }

    #[test]
    fn synthetic_multiple_root_verdict() {
        // decide() on a hand-built square exercises the multiple-root branch
        let sq = &GfPoly::lambda() * &GfPoly::lambda();
        let v = decide(parse_word("xyxy").unwrap(), sq);
        assert_eq!(v.tag, VerdictTag::FreeByMultipleRoot);
        assert_eq!(v.witness, Witness::MultipleRoot(GoldenScalar::zero()));
    }

    #[test]
    fn multiple_root_witness_at_k3() {
        let v = rosenberger_verdict(&parse_word("x y x y^2 x^2 y^3").unwrap());
        assert_eq!(v.tag, VerdictTag::FreeByMultipleRoot);
        assert_eq!(v.witness, Witness::MultipleRoot(GoldenScalar::zero()));
        assert_eq!(v.report.multiplicity(&GoldenScalar::zero()), 2);
        let c3 = enumerate_words(3);
        assert_eq!(c3.per_k[2], (3, 416, 48, 48));
    }

    #[test]
    fn small_census() {
        let c1 = enumerate_words(1);
        assert_eq!(c1.total, 8);
        assert_eq!(c1.multiple_root, 0);
        let c2 = enumerate_words(2);
        assert_eq!(c2.total, 72);
        assert_eq!(c2.per_k.len(), 2);
    }
}
