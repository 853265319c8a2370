//! Exact rational polytopes in the affine slice sum(x) = 1: the standard
//! simplex, permutohedra, nestohedra obtained by truncating simplex faces,
//! vertex enumeration, and face lattices.
//!
//! Truncation realization: the cut for a subset b of the ground set S is the
//! halfspace sum_{i not in b} x_i >= depth(|S \ b|). A strictly superadditive
//! depth schedule cuts deeper at lower-dimensional faces, which performs the
//! blow-ups of all faces of B simultaneously in increasing dimension. The
//! default schedule is depth(k) = alpha (2^k - 1); `stability_check`
//! certifies an alpha by comparing face lattices at alpha and alpha/2.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::{rat, Rat};

/// Largest supported ground set for vertex enumeration.
pub const MAX_GROUND_SET: usize = 6;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolytopeError {
    #[error("cut family may not contain the empty set or the whole ground set")]
    InvalidFamily,
    #[error("polytope is empty (cut depths too large)")]
    EmptyResult,
    #[error("ground set of size {got} exceeds the supported maximum {max}")]
    ResourceLimit { got: usize, max: usize },
}

/// Where an inequality came from: an original simplex facet or a truncation
/// cut. Face identification across related polytopes matches these tags.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Provenance {
    Original(usize),
    Cut(BTreeSet<usize>),
}

/// One halfspace `coeffs . x >= rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ineq {
    pub coeffs: Vec<Rat>,
    pub rhs: Rat,
    pub provenance: Provenance,
}

/// A nonempty bounded polytope inside {sum x = 1}, with its exact vertices.
#[derive(Debug, Clone)]
pub struct HPolytope {
    pub ground: usize,
    pub inequalities: Vec<Ineq>,
    /// Vertices in lexicographic order.
    pub vertices: Vec<Vec<Rat>>,
    /// Indices of the inequalities active (tight) at each vertex.
    pub active: Vec<BTreeSet<usize>>,
}

/// A face as a vertex subset; `active` are the inequalities tight on all of
/// it. The empty face is left implicit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub vertices: BTreeSet<usize>,
    pub dim: i64,
    pub active: BTreeSet<usize>,
}

/// All nonempty faces (top included), graded; `f_vector[d]` counts proper
/// faces of dimension d, so the top face is not counted.
#[derive(Debug, Clone)]
pub struct FaceLattice {
    pub faces: Vec<Face>,
    pub dim: i64,
    pub f_vector: Vec<usize>,
}

impl FaceLattice {
    /// Index of the face with exactly this vertex set.
    pub fn face_by_vertices(&self, verts: &BTreeSet<usize>) -> Option<usize> {
        self.faces.iter().position(|f| &f.vertices == verts)
    }

    /// Strict face containment.
    pub fn less(&self, a: usize, b: usize) -> bool {
        a != b && self.faces[a].vertices.is_subset(&self.faces[b].vertices)
    }
}

/// Solves `rows . x = rhs` exactly; `None` unless there is a unique solution.
fn solve_unique(rows: &[(Vec<Rat>, Rat)], n: usize) -> Option<Vec<Rat>> {
    let mut m: Vec<Vec<Rat>> = rows
        .iter()
        .map(|(c, r)| {
            assert_eq!(c.len(), n);
            let mut row = c.clone();
            row.push(r.clone());
            row
        })
        .collect();
    let mut pivot_rows = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else { continue };
        m.swap(row, p);
        let inv = m[row][col].clone();
        for x in m[row].iter_mut() {
            *x = &*x / &inv;
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in col..=n {
                    let delta = &factor * &m[row][c];
                    m[r][c] = &m[r][c] - delta;
                }
            }
        }
        pivot_rows.push((row, col));
        row += 1;
        if row == m.len() {
            break;
        }
    }
    if pivot_rows.len() < n {
        return None;
    }
    // inconsistent system: a zero row with nonzero right-hand side
    for r in row..m.len() {
        if m[r][..n].iter().all(|x| x.is_zero()) && !m[r][n].is_zero() {
            return None;
        }
    }
    let mut x = vec![Rat::zero(); n];
    for &(r, c) in &pivot_rows {
        x[c] = m[r][n].clone();
    }
    Some(x)
}

fn rank(rows: &[Vec<Rat>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let n = rows[0].len();
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    let mut rank = 0;
    for col in 0..n {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else { continue };
        m.swap(rank, p);
        let pivot = m[rank][col].clone();
        for r in rank + 1..m.len() {
            if !m[r][col].is_zero() {
                let factor = &m[r][col] / &pivot;
                for c in col..n {
                    let delta = &factor * &m[rank][c];
                    m[r][c] = &m[r][c] - delta;
                }
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// Affine dimension of a point set: -1 for empty, else the rank of the
/// difference vectors.
pub(crate) fn affine_dim(points: &[&Vec<Rat>]) -> i64 {
    match points.split_first() {
        None => -1,
        Some((first, rest)) => {
            let diffs: Vec<Vec<Rat>> = rest
                .iter()
                .map(|p| p.iter().zip(first.iter()).map(|(a, b)| a - b).collect())
                .collect();
            rank(&diffs) as i64
        }
    }
}

/// Exhaustive exact vertex enumeration of {x : equalities, inequalities}.
/// Returns lexicographically sorted vertices with their active inequality
/// sets. The feasible set must be bounded.
pub(crate) fn enumerate_vertices(
    equalities: &[(Vec<Rat>, Rat)],
    inequalities: &[(Vec<Rat>, Rat)],
) -> (Vec<Vec<Rat>>, Vec<BTreeSet<usize>>) {
    assert!(!equalities.is_empty());
    let n = equalities[0].0.len();
    let eq_rank = rank(&equalities.iter().map(|(c, _)| c.clone()).collect::<Vec<_>>());
    let free = n - eq_rank;
    let mut points: BTreeSet<Vec<Rat>> = BTreeSet::new();
    for subset in (0..inequalities.len()).combinations(free) {
        let mut rows: Vec<(Vec<Rat>, Rat)> = equalities.to_vec();
        for &i in &subset {
            rows.push(inequalities[i].clone());
        }
        let Some(x) = solve_unique(&rows, n) else { continue };
        let feasible = inequalities.iter().all(|(c, r)| {
            let lhs: Rat = c.iter().zip(&x).map(|(a, b)| a * b).fold(Rat::zero(), |s, t| s + t);
            lhs >= *r
        });
        if feasible {
            points.insert(x);
        }
    }
    let vertices: Vec<Vec<Rat>> = points.into_iter().collect();
    let active = vertices
        .iter()
        .map(|x| {
            inequalities
                .iter()
                .enumerate()
                .filter(|(_, (c, r))| {
                    let lhs: Rat =
                        c.iter().zip(x).map(|(a, b)| a * b).fold(Rat::zero(), |s, t| s + t);
                    lhs == *r
                })
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    (vertices, active)
}

/// All nonempty faces from vertex data: intersection closure of the
/// per-inequality tight vertex sets, starting from the full set.
pub(crate) fn lattice_from_vertex_data(
    vertices: &[Vec<Rat>],
    active: &[BTreeSet<usize>],
    n_inequalities: usize,
) -> FaceLattice {
    let all: BTreeSet<usize> = (0..vertices.len()).collect();
    let generators: Vec<BTreeSet<usize>> = (0..n_inequalities)
        .map(|i| (0..vertices.len()).filter(|&v| active[v].contains(&i)).collect())
        .collect();
    let mut found: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    let mut queue: Vec<BTreeSet<usize>> = vec![all.clone()];
    found.insert(all);
    while let Some(f) = queue.pop() {
        for g in &generators {
            let inter: BTreeSet<usize> = f.intersection(g).copied().collect();
            if !inter.is_empty() && found.insert(inter.clone()) {
                queue.push(inter);
            }
        }
    }
    let mut faces: Vec<Face> = found
        .into_iter()
        .map(|verts| {
            let pts: Vec<&Vec<Rat>> = verts.iter().map(|&v| &vertices[v]).collect();
            let dim = affine_dim(&pts);
            let active_common = verts
                .iter()
                .map(|&v| active[v].clone())
                .reduce(|a, b| a.intersection(&b).copied().collect())
                .unwrap();
            Face { vertices: verts, dim, active: active_common }
        })
        .collect();
    faces.sort_by(|a, b| (a.dim, &a.vertices).cmp(&(b.dim, &b.vertices)));
    let dim = faces.last().map(|f| f.dim).unwrap_or(-1);
    let mut f_vector = vec![0usize; dim.max(0) as usize];
    for f in &faces {
        if f.dim < dim {
            f_vector[f.dim as usize] += 1;
        }
    }
    FaceLattice { faces, dim, f_vector }
}

impl HPolytope {
    fn build(ground: usize, inequalities: Vec<Ineq>) -> Result<HPolytope, PolytopeError> {
        if ground > MAX_GROUND_SET {
            return Err(PolytopeError::ResourceLimit { got: ground, max: MAX_GROUND_SET });
        }
        let eq = vec![(vec![Rat::one(); ground], Rat::one())];
        let ineq: Vec<(Vec<Rat>, Rat)> =
            inequalities.iter().map(|i| (i.coeffs.clone(), i.rhs.clone())).collect();
        let (vertices, active) = enumerate_vertices(&eq, &ineq);
        if vertices.is_empty() {
            return Err(PolytopeError::EmptyResult);
        }
        Ok(HPolytope { ground, inequalities, vertices, active })
    }

    pub fn face_lattice(&self) -> FaceLattice {
        lattice_from_vertex_data(&self.vertices, &self.active, self.inequalities.len())
    }

    pub fn dim(&self) -> i64 {
        affine_dim(&self.vertices.iter().collect::<Vec<_>>())
    }

    /// (dimension, tight provenance set) of every face, sorted: the
    /// combinatorial signature used for stability and monotonicity checks.
    pub fn provenance_signature(&self, lattice: &FaceLattice) -> Vec<(i64, BTreeSet<Provenance>)> {
        let mut sig: Vec<(i64, BTreeSet<Provenance>)> = lattice
            .faces
            .iter()
            .map(|f| {
                (f.dim, f.active.iter().map(|&i| self.inequalities[i].provenance.clone()).collect())
            })
            .collect();
        sig.sort();
        sig
    }
}

/// The standard simplex on a ground set of size `s`.
pub fn standard_simplex(s: usize) -> Result<HPolytope, PolytopeError> {
    assert!(s >= 1);
    let inequalities = (0..s)
        .map(|i| {
            let mut coeffs = vec![Rat::zero(); s];
            coeffs[i] = Rat::one();
            Ineq { coeffs, rhs: Rat::zero(), provenance: Provenance::Original(i) }
        })
        .collect();
    HPolytope::build(s, inequalities)
}

fn validate_cuts(
    s: usize,
    cuts: &[BTreeSet<usize>],
) -> Result<Vec<BTreeSet<usize>>, PolytopeError> {
    let mut seen = BTreeSet::new();
    for b in cuts {
        if b.is_empty() || b.len() >= s || b.iter().any(|&i| i >= s) {
            return Err(PolytopeError::InvalidFamily);
        }
        seen.insert(b.clone());
    }
    Ok(seen.into_iter().collect())
}

/// Truncation of the simplex along the faces indexed by `cuts`, with an
/// arbitrary depth schedule: the cut for b is sum_{i not in b} x_i >=
/// depth(|S \ b|). The schedule must be strictly superadditive for the
/// truncations to compose by dimension; this is certified per instance by
/// `stability_check`, not assumed here.
pub fn nestohedron_with_depths(
    s: usize,
    cuts: &[BTreeSet<usize>],
    depth: &dyn Fn(usize) -> Rat,
) -> Result<HPolytope, PolytopeError> {
    let cuts = validate_cuts(s, cuts)?;
    let mut inequalities: Vec<Ineq> = (0..s)
        .map(|i| {
            let mut coeffs = vec![Rat::zero(); s];
            coeffs[i] = Rat::one();
            Ineq { coeffs, rhs: Rat::zero(), provenance: Provenance::Original(i) }
        })
        .collect();
    for b in cuts {
        let coeffs: Vec<Rat> =
            (0..s).map(|i| if b.contains(&i) { Rat::zero() } else { Rat::one() }).collect();
        let k = s - b.len();
        inequalities.push(Ineq { coeffs, rhs: depth(k), provenance: Provenance::Cut(b) });
    }
    HPolytope::build(s, inequalities)
}

pub fn default_alpha(s: usize) -> Rat {
    rat(1, 1 << s)
}

/// Nestohedron with the standard schedule depth(k) = alpha (2^k - 1);
/// default alpha = 2^{-s}.
pub fn nestohedron(
    s: usize,
    cuts: &[BTreeSet<usize>],
    alpha: Option<Rat>,
) -> Result<HPolytope, PolytopeError> {
    let alpha = alpha.unwrap_or_else(|| default_alpha(s));
    nestohedron_with_depths(s, cuts, &|k| &alpha * rat((1i64 << k) - 1, 1))
}

/// Full truncation: every nonempty proper subset is cut.
pub fn permutohedron(s: usize, alpha: Option<Rat>) -> Result<HPolytope, PolytopeError> {
    let cuts: Vec<BTreeSet<usize>> =
        (1..(1u32 << s) - 1).map(|mask| (0..s).filter(|&i| mask >> i & 1 == 1).collect()).collect();
    nestohedron(s, &cuts, alpha)
}

/// A face of the permutohedron in the chain model: a strictly decreasing
/// chain S ⊋ S_1 ⊋ ... ⊋ S_k of nonempty subsets. The face is a product of
/// permutohedra on the blocks S∖S_1, ..., S_{k-1}∖S_k, S_k and has dimension
/// |S| - 1 - k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainFace {
    pub chain: Vec<BTreeSet<usize>>,
    pub blocks: Vec<BTreeSet<usize>>,
    pub dim: usize,
}

/// All chain-model faces of the permutohedron on {0, .., s-1}.
pub fn permutohedron_chain_faces(s: usize) -> Vec<ChainFace> {
    fn proper_nonempty_subsets(of: &BTreeSet<usize>) -> Vec<BTreeSet<usize>> {
        let items: Vec<usize> = of.iter().copied().collect();
        (1..(1u32 << items.len()) - 1)
            .map(|mask| {
                items
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| mask >> j & 1 == 1)
                    .map(|(_, &i)| i)
                    .collect()
            })
            .collect()
    }
    fn extend(s: usize, chain: Vec<BTreeSet<usize>>, out: &mut Vec<ChainFace>) {
        let full: BTreeSet<usize> = (0..s).collect();
        let mut blocks = Vec::new();
        let mut prev = &full;
        for set in &chain {
            blocks.push(prev.difference(set).copied().collect());
            prev = set;
        }
        blocks.push(prev.clone());
        out.push(ChainFace { dim: s - 1 - chain.len(), blocks, chain: chain.clone() });
        let last = chain.last().cloned().unwrap_or(full);
        for next in proper_nonempty_subsets(&last) {
            let mut longer = chain.clone();
            longer.push(next);
            extend(s, longer, out);
        }
    }
    let mut out = Vec::new();
    extend(s, Vec::new(), &mut out);
    out.sort_by(|a, b| (a.dim, &a.chain).cmp(&(b.dim, &b.chain)));
    out
}

/// Matches every chain face to the geometric face whose tight cuts are
/// exactly the chain's subsets. Returns the index map if this is a bijection
/// respecting dimension and inclusion, which certifies the two models are
/// isomorphic as graded posets.
pub fn chain_lattice_isomorphism(
    p: &HPolytope,
    lattice: &FaceLattice,
    chains: &[ChainFace],
) -> Option<Vec<usize>> {
    if chains.len() != lattice.faces.len() {
        return None;
    }
    let by_provenance: BTreeMap<BTreeSet<Provenance>, usize> = lattice
        .faces
        .iter()
        .enumerate()
        .map(|(i, f)| (f.active.iter().map(|&j| p.inequalities[j].provenance.clone()).collect(), i))
        .collect();
    if by_provenance.len() != lattice.faces.len() {
        return None;
    }
    let mut map = Vec::with_capacity(chains.len());
    for c in chains {
        let key: BTreeSet<Provenance> =
            c.chain.iter().map(|s| Provenance::Cut(s.clone())).collect();
        let &face = by_provenance.get(&key)?;
        if lattice.faces[face].dim != c.dim as i64 {
            return None;
        }
        map.push(face);
    }
    // chain refinement reverses face inclusion
    for (i, ci) in chains.iter().enumerate() {
        for (j, cj) in chains.iter().enumerate() {
            let chain_le = cj.chain.iter().all(|s| ci.chain.contains(s));
            let face_le = lattice.faces[map[i]].vertices.is_subset(&lattice.faces[map[j]].vertices);
            if chain_le != face_le {
                return None;
            }
        }
    }
    Some(map)
}

/// True iff the face lattices at alpha and alpha/2 agree face-for-face under
/// the provenance matching: alpha is then in the stable range.
pub fn stability_check(
    s: usize,
    cuts: &[BTreeSet<usize>],
    alpha: Option<Rat>,
) -> Result<bool, PolytopeError> {
    let alpha = alpha.unwrap_or_else(|| default_alpha(s));
    let a = nestohedron(s, cuts, Some(alpha.clone()))?;
    let b = nestohedron(s, cuts, Some(alpha / rat(2, 1)))?;
    Ok(a.provenance_signature(&a.face_lattice()) == b.provenance_signature(&b.face_lattice()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat_str;

    fn cut(items: &[usize]) -> BTreeSet<usize> {
        items.iter().copied().collect()
    }

    #[test]
    fn simplex_shapes() {
        let tri = standard_simplex(3).unwrap();
        assert_eq!(tri.vertices.len(), 3);
        assert_eq!(tri.face_lattice().f_vector, vec![3, 3]);
        let tet = standard_simplex(4).unwrap();
        assert_eq!(tet.face_lattice().f_vector, vec![4, 6, 4]);
        let pt = standard_simplex(1).unwrap();
        assert_eq!(pt.vertices, vec![vec![rat(1, 1)]]);
        assert_eq!(pt.dim(), 0);
        assert!(pt.face_lattice().f_vector.is_empty());
    }

    #[test]
    fn empty_family_is_identity() {
        let n = nestohedron(3, &[], None).unwrap();
        let d = standard_simplex(3).unwrap();
        assert_eq!(n.vertices, d.vertices);
    }

    #[test]
    fn invalid_families_are_rejected() {
        assert!(matches!(nestohedron(3, &[cut(&[])], None), Err(PolytopeError::InvalidFamily)));
        assert!(matches!(
            nestohedron(3, &[cut(&[0, 1, 2])], None),
            Err(PolytopeError::InvalidFamily)
        ));
        assert!(matches!(nestohedron(3, &[cut(&[3])], None), Err(PolytopeError::InvalidFamily)));
    }

    #[test]
    fn permutohedron_p3_vertices() {
        let p = permutohedron(3, None).unwrap();
        assert_eq!(p.vertices.len(), 6);
        let rendered: BTreeSet<Vec<String>> =
            p.vertices.iter().map(|v| v.iter().map(rat_str).collect()).collect();
        assert!(rendered.contains(&vec!["1/8".into(), "1/4".into(), "5/8".into()]));
        assert_eq!(p.face_lattice().f_vector, vec![6, 6]);
    }

    #[test]
    fn permutohedron_p4_f_vector() {
        let p = permutohedron(4, None).unwrap();
        let l = p.face_lattice();
        assert_eq!(l.f_vector, vec![24, 36, 14]);
        // Euler relation: 24 - 36 + 14 = 2 = 1 - (-1)^3
        assert_eq!(24 - 36 + 14, 2);
    }

    #[test]
    fn chain_model_counts_and_isomorphism() {
        let chains3 = permutohedron_chain_faces(3);
        let by_dim3: Vec<usize> =
            (0..3).map(|d| chains3.iter().filter(|c| c.dim == d).count()).collect();
        assert_eq!(by_dim3, vec![6, 6, 1]);

        let chains4 = permutohedron_chain_faces(4);
        let by_dim4: Vec<usize> =
            (0..4).map(|d| chains4.iter().filter(|c| c.dim == d).count()).collect();
        assert_eq!(by_dim4, vec![24, 36, 14, 1]);

        for s in [3usize, 4] {
            let p = permutohedron(s, None).unwrap();
            let l = p.face_lattice();
            let chains = permutohedron_chain_faces(s);
            assert!(chain_lattice_isomorphism(&p, &l, &chains).is_some());
        }
    }

    #[test]
    fn chain_rectangle_example() {
        // chain {0,1,2,3} ⊃ {0,2}: a 2-face with blocks {1,3} and {0,2}
        let chains = permutohedron_chain_faces(4);
        let face = chains.iter().find(|c| c.chain == vec![cut(&[0, 2])]).unwrap();
        assert_eq!(face.dim, 2);
        assert_eq!(face.blocks, vec![cut(&[1, 3]), cut(&[0, 2])]);
    }

    #[test]
    fn intermediate_truncation_has_eight_facets() {
        // truncate one vertex of the tetrahedron and its three edges
        let cuts = vec![cut(&[3]), cut(&[0, 3]), cut(&[1, 3]), cut(&[2, 3])];
        let p = nestohedron(4, &cuts, None).unwrap();
        let l = p.face_lattice();
        assert_eq!(p.vertices.len(), 12);
        assert_eq!(l.f_vector, vec![12, 18, 8]);
        // every facet is supported by exactly one inequality, and all 8
        // provenances occur
        let facet_provs: Vec<BTreeSet<Provenance>> = l
            .faces
            .iter()
            .filter(|f| f.dim == l.dim - 1)
            .map(|f| f.active.iter().map(|&i| p.inequalities[i].provenance.clone()).collect())
            .collect();
        assert_eq!(facet_provs.len(), 8);
        assert!(facet_provs.iter().all(|s| s.len() == 1));
        let distinct: BTreeSet<_> = facet_provs.into_iter().collect();
        assert_eq!(distinct.len(), 8);
    }

    #[test]
    fn stability_certificates() {
        assert!(stability_check(3, &[], None).unwrap());
        let cuts4: Vec<BTreeSet<usize>> =
            (1..15u32).map(|mask| (0..4).filter(|&i| mask >> i & 1 == 1).collect()).collect();
        assert!(stability_check(4, &cuts4, None).unwrap());
        let fig7 = vec![cut(&[3]), cut(&[0, 3]), cut(&[1, 3]), cut(&[2, 3])];
        assert!(stability_check(4, &fig7, None).unwrap());
        // far out of range: the polytope degenerates or empties
        match nestohedron(3, &[cut(&[0]), cut(&[1]), cut(&[2])], Some(rat(1, 2))) {
            Err(PolytopeError::EmptyResult) => {}
            Ok(_) => {
                assert!(!stability_check(3, &[cut(&[0]), cut(&[1]), cut(&[2])], Some(rat(1, 2)))
                    .unwrap())
            }
            Err(e) => panic!("unexpected error {e:?}"),
        }
    }

    #[test]
    fn euler_relation_holds() {
        for (p, _) in [
            (standard_simplex(4).unwrap(), "tet"),
            (permutohedron(4, None).unwrap(), "p4"),
            (nestohedron(4, &[cut(&[3]), cut(&[0, 3])], None).unwrap(), "partial"),
        ] {
            let l = p.face_lattice();
            let alt: i64 = l
                .f_vector
                .iter()
                .enumerate()
                .map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) })
                .sum();
            assert_eq!(alt, 1 - (-1i64).pow(l.dim as u32));
        }
    }

    #[test]
    fn truncation_is_monotone() {
        // growing the family never raises the dimension of a surviving face
        let base = vec![cut(&[3])];
        let bigger = vec![cut(&[3]), cut(&[0, 3]), cut(&[1, 3]), cut(&[2, 3])];
        let p0 = nestohedron(4, &base, None).unwrap();
        let p1 = nestohedron(4, &bigger, None).unwrap();
        let sig0: BTreeMap<BTreeSet<Provenance>, i64> =
            p0.provenance_signature(&p0.face_lattice()).into_iter().map(|(d, s)| (s, d)).collect();
        let sig1: BTreeMap<BTreeSet<Provenance>, i64> =
            p1.provenance_signature(&p1.face_lattice()).into_iter().map(|(d, s)| (s, d)).collect();
        for (key, d1) in &sig1 {
            if let Some(d0) = sig0.get(key) {
                assert!(d1 <= d0);
            }
        }
    }

    #[test]
    fn ground_set_cap() {
        assert!(matches!(
            standard_simplex(7),
            Err(PolytopeError::ResourceLimit { got: 7, max: 6 })
        ));
    }
}
