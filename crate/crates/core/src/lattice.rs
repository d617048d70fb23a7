//! The Z-span `M` of the 30 edge midpoints of a regular icosahedron, as a
//! module over the Klein four-group of coordinate half-turns.
//!
//! Vectors of `Q(sqrt 5)^3` are flattened to `Q^6` through the `{1, phi}`
//! basis of each coordinate and cleared to a common denominator, so all
//! lattice computations are integer Hermite/Smith reductions.

use alloc::vec::Vec;
use core::ops::{Add, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::exact::GoldenScalar;
use crate::intmat::{hermite_normal_form, hnf_coordinates, smith_normal_form, AbelianGroup, IntMatrix};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("transformation does not map the lattice into itself")]
    NotStable,
    #[error("empty generating set")]
    Empty,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GoldenVector3(pub [GoldenScalar; 3]);

impl GoldenVector3 {
    pub fn from_ints(v: [(i64, i64); 3]) -> Self {
        GoldenVector3(v.map(|(a, b)| GoldenScalar::from_ints(a, b)))
    }

    pub fn zero() -> Self {
        GoldenVector3::from_ints([(0, 0); 3])
    }

    pub fn scale(&self, s: &GoldenScalar) -> Self {
        GoldenVector3(core::array::from_fn(|i| &self.0[i] * s))
    }

    pub fn dot(&self, o: &GoldenVector3) -> GoldenScalar {
        (0..3).fold(GoldenScalar::zero(), |acc, i| &acc + &(&self.0[i] * &o.0[i]))
    }

    pub fn norm_sq(&self) -> GoldenScalar {
        self.dot(self)
    }

    fn flatten(&self) -> [BigRational; 6] {
        core::array::from_fn(|i| {
            let c = &self.0[i / 2];
            if i % 2 == 0 { c.rational_part().clone() } else { c.phi_part().clone() }
        })
    }

    fn unflatten(v: &[BigRational]) -> Self {
        GoldenVector3(core::array::from_fn(|i| GoldenScalar::new(v[2 * i].clone(), v[2 * i + 1].clone())))
    }

    pub fn to_f64(&self) -> [f64; 3] {
        self.0.clone().map(|c| c.to_f64())
    }
}

impl Add for &GoldenVector3 {
    type Output = GoldenVector3;
    fn add(self, o: &GoldenVector3) -> GoldenVector3 {
        GoldenVector3(core::array::from_fn(|i| &self.0[i] + &o.0[i]))
    }
}

impl Sub for &GoldenVector3 {
    type Output = GoldenVector3;
    fn sub(self, o: &GoldenVector3) -> GoldenVector3 {
        GoldenVector3(core::array::from_fn(|i| &self.0[i] - &o.0[i]))
    }
}

/// Exact 3x3 matrix over the golden field, acting on column vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldenMatrix3(pub [[GoldenScalar; 3]; 3]);

impl GoldenMatrix3 {
    pub fn diagonal(d: [i64; 3]) -> Self {
        GoldenMatrix3(core::array::from_fn(|i| {
            core::array::from_fn(|j| if i == j { GoldenScalar::from(d[i]) } else { GoldenScalar::zero() })
        }))
    }

    pub fn identity() -> Self {
        GoldenMatrix3::diagonal([1, 1, 1])
    }

    /// Half-turn about the x axis.
    pub fn half_turn_x() -> Self {
        GoldenMatrix3::diagonal([1, -1, -1])
    }

    pub fn half_turn_y() -> Self {
        GoldenMatrix3::diagonal([-1, 1, -1])
    }

    pub fn half_turn_z() -> Self {
        GoldenMatrix3::diagonal([-1, -1, 1])
    }

    pub fn apply(&self, v: &GoldenVector3) -> GoldenVector3 {
        GoldenVector3(core::array::from_fn(|i| {
            (0..3).fold(GoldenScalar::zero(), |acc, j| &acc + &(&self.0[i][j] * &v.0[j]))
        }))
    }

    pub fn compose(&self, o: &GoldenMatrix3) -> Self {
        GoldenMatrix3(core::array::from_fn(|i| {
            core::array::from_fn(|j| (0..3).fold(GoldenScalar::zero(), |acc, k| &acc + &(&self.0[i][k] * &o.0[k][j])))
        }))
    }
}

/// Regular icosahedron with vertices at the cyclic permutations of `(0, +-1, +-phi)`.
#[derive(Debug, Clone)]
pub struct Icosahedron {
    pub vertices: Vec<GoldenVector3>,
    /// Vertex index pairs at squared distance 4.
    pub edges: Vec<(usize, usize)>,
}

impl Icosahedron {
    pub fn new() -> Self {
        let mut vertices = Vec::with_capacity(12);
        for s1 in [1, -1] {
            for s2 in [1, -1] {
                let base = [(0, 0), (s1, 0), (0, s2)];
                for r in 0..3 {
                    vertices.push(GoldenVector3::from_ints(core::array::from_fn(|i| base[(i + 3 - r) % 3])));
                }
            }
        }
        let four = GoldenScalar::from(4);
        let mut edges = Vec::with_capacity(30);
        for i in 0..vertices.len() {
            for j in i + 1..vertices.len() {
                if (&vertices[i] - &vertices[j]).norm_sq() == four {
                    edges.push((i, j));
                }
            }
        }
        Icosahedron { vertices, edges }
    }

    pub fn midpoint(&self, e: usize) -> GoldenVector3 {
        let (u, v) = self.edges[e];
        (&self.vertices[u] + &self.vertices[v]).scale(&GoldenScalar::from_fracs(1, 2, 0, 1))
    }

    pub fn midpoints(&self) -> Vec<GoldenVector3> {
        (0..self.edges.len()).map(|e| self.midpoint(e)).collect()
    }

    /// Edges other than `e` sharing a vertex with it.
    pub fn adjacent_edges(&self, e: usize) -> Vec<usize> {
        let (u, v) = self.edges[e];
        (0..self.edges.len())
            .filter(|&f| f != e && {
                let (a, b) = self.edges[f];
                a == u || a == v || b == u || b == v
            })
            .collect()
    }
}

impl Default for Icosahedron {
    fn default() -> Self {
        Icosahedron::new()
    }
}

/// The 30 edge midpoints.
pub fn icosahedron_midpoints() -> Vec<GoldenVector3> {
    Icosahedron::new().midpoints()
}

/// A full-rank-in-its-span lattice in `Q^6`: the rows of `basis` divided by
/// `denominator`, with `basis` in Hermite normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerLattice {
    pub basis: IntMatrix,
    pub denominator: BigInt,
}

impl IntegerLattice {
    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis_vectors(&self) -> Vec<GoldenVector3> {
        (0..self.rank())
            .map(|i| {
                let row: Vec<BigRational> =
                    self.basis.row(i).iter().map(|x| BigRational::new(x.clone(), self.denominator.clone())).collect();
                GoldenVector3::unflatten(&row)
            })
            .collect()
    }

    fn scaled(&self, v: &GoldenVector3) -> Option<Vec<BigInt>> {
        v.flatten()
            .iter()
            .map(|c| {
                let s = c * BigRational::from_integer(self.denominator.clone());
                s.is_integer().then(|| s.to_integer())
            })
            .collect()
    }

    /// Integer coordinates of `v` in the lattice basis.
    pub fn coordinates(&self, v: &GoldenVector3) -> Option<Vec<BigInt>> {
        hnf_coordinates(&self.basis, &self.scaled(v)?)
    }

    pub fn contains(&self, v: &GoldenVector3) -> bool {
        self.coordinates(v).is_some()
    }

    /// Matrix of `g` on the lattice in row convention: row `i` holds the
    /// coordinates of `g(b_i)`.
    pub fn action_matrix(&self, g: &GoldenMatrix3) -> Result<IntMatrix, LatticeError> {
        let rows: Option<Vec<Vec<BigInt>>> =
            self.basis_vectors().iter().map(|b| self.coordinates(&g.apply(b))).collect();
        let rows = rows.ok_or(LatticeError::NotStable)?;
        if rows.is_empty() {
            return Ok(IntMatrix::zeros(0, 0));
        }
        Ok(IntMatrix::from_rows(&rows))
    }
}

/// `Z`-span of `vecs` in Hermite normal form.
pub fn lattice_from_vectors(vecs: &[GoldenVector3]) -> Result<IntegerLattice, LatticeError> {
    if vecs.is_empty() {
        return Err(LatticeError::Empty);
    }
    let flat: Vec<[BigRational; 6]> = vecs.iter().map(GoldenVector3::flatten).collect();
    let den = flat.iter().flatten().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let rows: Vec<Vec<BigInt>> = flat
        .iter()
        .map(|r| r.iter().map(|c| (c * BigRational::from_integer(den.clone())).to_integer()).collect())
        .collect();
    let basis = hermite_normal_form(&IntMatrix::from_rows(&rows));
    Ok(IntegerLattice { basis, denominator: den })
}

/// Matrix expressing each of `vecs` in the lattice basis; its Smith form is
/// all ones exactly when `vecs` generate the lattice.
pub fn generator_coordinates(m: &IntegerLattice, vecs: &[GoldenVector3]) -> Option<IntMatrix> {
    let rows: Option<Vec<Vec<BigInt>>> = vecs.iter().map(|v| m.coordinates(v)).collect();
    Some(IntMatrix::from_rows(&rows?))
}

/// `M / (1 - g) M`.
pub fn coinvariants(m: &IntegerLattice, g: &GoldenMatrix3) -> Result<AbelianGroup, LatticeError> {
    let gm = m.action_matrix(g)?;
    let id = IntMatrix::identity(m.rank());
    Ok(AbelianGroup::from_relations(&sub(&id, &gm)))
}

fn sub(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let mut out = a.clone();
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            out[(i, j)] = &a[(i, j)] - &b[(i, j)];
        }
    }
    out
}

/// Matrix of `h` on the free quotient of `M / (1 - c) M`, in the basis given
/// by the Smith transform of `1 - c`.
pub fn free_quotient_action(
    m: &IntegerLattice,
    c: &GoldenMatrix3,
    h: &GoldenMatrix3,
) -> Result<IntMatrix, LatticeError> {
    let cm = m.action_matrix(c)?;
    let hm = m.action_matrix(h)?;
    let n = m.rank();
    let snf = smith_normal_form(&sub(&IntMatrix::identity(n), &cm));
    let r = snf.rank();
    // in coordinates w = v * right the image of (1 - c) is spanned by d_i e_i
    let t = &(&snf.right_inv * &hm) * &snf.right;
    for i in 0..r {
        for j in r..n {
            if !t[(i, j)].is_zero() {
                return Err(LatticeError::NotStable);
            }
        }
    }
    let mut out = IntMatrix::zeros(n - r, n - r);
    for i in r..n {
        for j in r..n {
            out[(i - r, j - r)] = t[(i, j)].clone();
        }
    }
    Ok(out)
}

/// `(sqrt 5 - 2) = 2 phi - 3`.
pub fn stated_neighbor_scalar() -> GoldenScalar {
    GoldenScalar::from_ints(-3, 2)
}

/// `3 + sqrt 5 = 2 + 2 phi`, the scalar the neighbour sum actually equals.
pub fn corrected_neighbor_scalar() -> GoldenScalar {
    GoldenScalar::from_ints(2, 2)
}

/// Sum of the midpoints of the eight edges adjacent to edge `e`.
pub fn neighbor_midpoint_sum(ico: &Icosahedron, mids: &[GoldenVector3], e: usize) -> GoldenVector3 {
    ico.adjacent_edges(e).iter().fold(GoldenVector3::zero(), |acc, &f| &acc + &mids[f])
}

/// Checks `sum of the 8 adjacent midpoints == scalar * e` for every edge,
/// using the supplied midpoint positions.
pub fn neighbor_sum_identity_holds(ico: &Icosahedron, mids: &[GoldenVector3], scalar: &GoldenScalar) -> bool {
    (0..ico.edges.len()).all(|e| {
        ico.adjacent_edges(e).len() == 8 && neighbor_midpoint_sum(ico, mids, e) == mids[e].scale(scalar)
    })
}

/// The neighbour-sum identity with scalar `sqrt 5 - 2`, as commonly quoted.
///
/// The eight adjacent midpoints in fact sum to `(3 + sqrt 5) e`, so this
/// returns `false`; see [`corrected_neighbor_sum_check`].
pub fn neighbor_sum_identity_check() -> bool {
    let ico = Icosahedron::new();
    neighbor_sum_identity_holds(&ico, &ico.midpoints(), &stated_neighbor_scalar())
}

/// The neighbour sum equals `(3 + sqrt 5) e` for all 30 midpoints, hence
/// `sqrt 5 e = sum - 3e` lies in `M`.
pub fn corrected_neighbor_sum_check() -> bool {
    let ico = Icosahedron::new();
    neighbor_sum_identity_holds(&ico, &ico.midpoints(), &corrected_neighbor_scalar())
}

/// The exact scalar `s` with `neighbor sum = s * e`, when one exists.
pub fn neighbor_sum_scalar(ico: &Icosahedron, mids: &[GoldenVector3], e: usize) -> Option<GoldenScalar> {
    let s = neighbor_midpoint_sum(ico, mids, e);
    let k = s.dot(&mids[e]).checked_div(&mids[e].norm_sq()).ok()?;
    (s == mids[e].scale(&k)).then_some(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn lattice() -> IntegerLattice {
        lattice_from_vectors(&icosahedron_midpoints()).unwrap()
    }

    #[test]
    fn midpoint_geometry() {
        let ico = Icosahedron::new();
        assert_eq!(ico.vertices.len(), 12);
        assert_eq!(ico.edges.len(), 30);
        let mids = ico.midpoints();
        let target = GoldenVector3::from_ints([(0, 0), (0, 0), (0, 1)]);
        assert!(mids.contains(&target));
        let phi_sq = GoldenScalar::from_ints(1, 1);
        assert!(mids.iter().all(|m| m.norm_sq() == phi_sq));
        // antipodally closed
        let minus = GoldenScalar::from(-1);
        assert!(mids.iter().all(|m| mids.contains(&m.scale(&minus))));
        for axis in 0..3 {
            let on_axis = mids.iter().filter(|m| (0..3).all(|i| i == axis || m.0[i].is_zero())).count();
            assert_eq!(on_axis, 2);
        }
    }

    #[test]
    fn half_turns_permute_midpoints() {
        let mids = icosahedron_midpoints();
        for g in [GoldenMatrix3::half_turn_x(), GoldenMatrix3::half_turn_y(), GoldenMatrix3::half_turn_z()] {
            assert!(mids.iter().all(|m| mids.contains(&g.apply(m))));
        }
        let ab = GoldenMatrix3::half_turn_x().compose(&GoldenMatrix3::half_turn_y());
        assert_eq!(ab, GoldenMatrix3::half_turn_z());
    }

    #[test]
    fn lattice_ranks() {
        let single = lattice_from_vectors(&[GoldenVector3::from_ints([(1, 0), (0, 0), (0, 0)])]).unwrap();
        assert_eq!(single.rank(), 1);
        assert_eq!(lattice().rank(), 6);
        let e = icosahedron_midpoints()[0].clone();
        let pair = lattice_from_vectors(&[e.clone(), e.scale(&GoldenScalar::sqrt5())]).unwrap();
        assert_eq!(pair.rank(), 2);
        assert_eq!(lattice_from_vectors(&[]), Err(LatticeError::Empty));
    }

    #[test]
    fn midpoints_generate_exactly_the_hnf_lattice() {
        let m = lattice();
        let coords = generator_coordinates(&m, &icosahedron_midpoints()).unwrap();
        let snf = smith_normal_form(&coords);
        assert_eq!(snf.diag, vec![BigInt::one(); 6]);
    }

    #[test]
    fn coinvariant_examples() {
        let m = lattice();
        let id = coinvariants(&m, &GoldenMatrix3::identity()).unwrap();
        assert_eq!((id.torsion_u64(), id.free_rank), (vec![], 6));
        // (1 - c) M is strictly larger than 2 M_-: the projection of M onto
        // the -1 eigenspace of c is not contained in M
        let c = coinvariants(&m, &GoldenMatrix3::half_turn_z()).unwrap();
        assert_eq!((c.torsion_u64(), c.free_rank), (vec![2, 2], 2));
        let anti = coinvariants(&m, &GoldenMatrix3::diagonal([-1, -1, -1])).unwrap();
        assert_eq!((anti.torsion_u64(), anti.free_rank), (vec![2; 6], 0));
    }

    #[test]
    fn unstable_map_is_rejected() {
        let m = lattice();
        let half = GoldenMatrix3(core::array::from_fn(|i| {
            core::array::from_fn(|j| if i == j { GoldenScalar::from_fracs(1, 2, 0, 1) } else { GoldenScalar::zero() })
        }));
        assert_eq!(coinvariants(&m, &half), Err(LatticeError::NotStable));
    }

    #[test]
    fn free_quotient_actions() {
        let m = lattice();
        let c = GoldenMatrix3::half_turn_z();
        let minus = IntMatrix::from_rows(&[vec![-1i64, 0], vec![0, -1]]);
        assert_eq!(free_quotient_action(&m, &c, &c).unwrap(), IntMatrix::identity(2));
        assert_eq!(free_quotient_action(&m, &c, &GoldenMatrix3::half_turn_x()).unwrap(), minus);
        assert_eq!(free_quotient_action(&m, &c, &GoldenMatrix3::half_turn_y()).unwrap(), minus);
    }

    #[test]
    fn neighbor_sums() {
        let ico = Icosahedron::new();
        let mids = ico.midpoints();
        for e in 0..30 {
            assert_eq!(neighbor_sum_scalar(&ico, &mids, e), Some(corrected_neighbor_scalar()));
        }
        assert!(corrected_neighbor_sum_check());
        assert!(!neighbor_sum_identity_check());
        // sqrt5 * e lies in M
        let m = lattice();
        assert!(mids.iter().all(|e| m.contains(&e.scale(&GoldenScalar::sqrt5()))));
    }

    #[test]
    fn perturbed_midpoints_fail_the_identity() {
        let ico = Icosahedron::new();
        let mut mids = ico.midpoints();
        mids[0] = mids[0].scale(&GoldenScalar::from(2));
        assert!(!neighbor_sum_identity_holds(&ico, &mids, &corrected_neighbor_scalar()));
    }
}
