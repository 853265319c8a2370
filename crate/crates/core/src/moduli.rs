//! Moduli complexes of metric ribbon graphs.
//!
//! The open cell of a graph class is the open simplex of edge lengths
//! summing to 1 modulo automorphisms; classes are glued along edge-forest
//! collapses. The compact cell replaces the simplex by a truncation: every
//! non-forest edge subset is kept away from length zero, which blows up
//! exactly the faces whose collapse would leave the type.
//!
//! The cut depth schedule is alpha 4^{k-e} for a cell with e edges, where k
//! is the size of the surviving non-forest. It is strictly superadditive, so
//! each cell is the nestohedron of its building family, and it telescopes:
//! the facet {x_F = 0} of a cell carries, coordinate for coordinate, the
//! defining inequalities of the collapsed class's own cell. Attachment maps
//! are therefore exact coordinate renamings.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::cw::{Chunk, PieceMap, Quotient, Topology};
use crate::enumeration::{
    collapse_poset, collapse_to_class, proper_forests, CollapsePoset, EnumError, EnumOptions,
};
use crate::polytope::{nestohedron_with_depths, FaceLattice, HPolytope, PolytopeError};
use crate::ribbon::{RibbonGraph, TopologicalType};
use crate::{rat, Rat};

#[derive(Debug, Error)]
pub enum ModuliError {
    #[error(
        "face identification failed: {0} (realization instability; retry with a smaller alpha)"
    )]
    GluingMismatch(String),
    #[error("complex is not a compact surface with boundary")]
    NotASurface,
    #[error(transparent)]
    Enumeration(#[from] EnumError),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
}

/// The non-forest edge subsets of a graph and their complements, which index
/// the truncation cuts of the compact cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BuildingFamily {
    pub non_forests: Vec<BTreeSet<usize>>,
    pub cuts: Vec<BTreeSet<usize>>,
}

pub fn building_family(graph: &RibbonGraph) -> BuildingFamily {
    let e = graph.edge_count();
    let all: BTreeSet<usize> = (0..e).collect();
    let forests: BTreeSet<BTreeSet<usize>> = proper_forests(graph).into_iter().collect();
    let mut non_forests = Vec::new();
    let mut cuts = Vec::new();
    for mask in 1..(1u64 << e) {
        let subset: BTreeSet<usize> = (0..e).filter(|&i| mask >> i & 1 == 1).collect();
        if subset.len() == e {
            // the full edge set is never a forest here: valence >= 3 forces
            // independent cycles
            assert!(!graph.is_forest(&subset));
            non_forests.push(subset);
            continue;
        }
        if !forests.contains(&subset) {
            let complement: BTreeSet<usize> = all.difference(&subset).copied().collect();
            non_forests.push(subset);
            cuts.push(complement);
        }
    }
    cuts.sort();
    BuildingFamily { non_forests, cuts }
}

pub fn default_moduli_alpha() -> Rat {
    rat(1, 2)
}

fn depth_schedule(alpha: &Rat, e: usize) -> impl Fn(usize) -> Rat + '_ {
    move |k: usize| {
        assert!(k < e);
        alpha * rat(1, 1i64 << (2 * (e - k)))
    }
}

/// A compact rational cell: the truncated simplex of the graph's building
/// family, with its face lattice.
#[derive(Debug, Clone)]
pub struct CompactCell {
    pub family: BuildingFamily,
    pub polytope: HPolytope,
    pub lattice: FaceLattice,
    pub alpha: Rat,
}

/// Builds the compact cell and certifies the truncation depth is in the
/// stable range by re-deriving the face lattice at alpha/2.
pub fn compact_cell(graph: &RibbonGraph, alpha: Option<Rat>) -> Result<CompactCell, ModuliError> {
    let alpha = alpha.unwrap_or_else(default_moduli_alpha);
    if alpha <= Rat::zero() || alpha >= Rat::one() {
        return Err(ModuliError::GluingMismatch(format!(
            "cut depth alpha = {alpha} is not between 0 and 1"
        )));
    }
    let e = graph.edge_count();
    let family = building_family(graph);
    let polytope = nestohedron_with_depths(e, &family.cuts, &depth_schedule(&alpha, e))?;
    let half = &alpha / rat(2, 1);
    let halved = nestohedron_with_depths(e, &family.cuts, &depth_schedule(&half, e))?;
    let lattice = polytope.face_lattice();
    if polytope.provenance_signature(&lattice)
        != halved.provenance_signature(&halved.face_lattice())
    {
        return Err(ModuliError::GluingMismatch(format!(
            "face lattice at alpha = {alpha} differs from the lattice at alpha/2"
        )));
    }
    Ok(CompactCell { family, polytope, lattice, alpha })
}

/// One cell of an assembled complex.
#[derive(Debug, Clone)]
pub struct CellData {
    pub dim: usize,
    /// Present on compact complexes of dimension <= 2, where the quotient
    /// topology is computed.
    pub cell: Option<CompactCell>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexStats {
    pub cells_by_dim: BTreeMap<usize, usize>,
    pub orbifold_euler: Rat,
    pub euler: Option<i64>,
    pub connected: Option<bool>,
    pub is_surface: Option<bool>,
    pub boundary_circles: Option<usize>,
    /// Classes of cell faces after all identifications, by dimension; only
    /// on compact complexes of dimension <= 2.
    pub identified_faces_by_dim: Option<BTreeMap<i64, usize>>,
}

/// The moduli complex of a surface type: one cell per graph class, glued
/// along collapse arrows, modulo automorphisms.
pub struct OrbiCellComplex {
    pub top_type: TopologicalType,
    pub compact: bool,
    pub poset: CollapsePoset,
    pub cells: Vec<CellData>,
    quotient: Option<Quotient>,
    topology: Option<Topology>,
}

pub fn assemble_complex(
    t: TopologicalType,
    compact: bool,
    alpha: Option<Rat>,
    opts: &EnumOptions,
) -> Result<OrbiCellComplex, ModuliError> {
    let poset = collapse_poset(t, opts)?;
    let max_dim = poset.catalog.classes.iter().map(|c| c.graph.edge_count() - 1).max().unwrap_or(0);
    let with_polytopes = compact && max_dim <= 2;
    let mut cells = Vec::with_capacity(poset.catalog.classes.len());
    for class in &poset.catalog.classes {
        let dim = class.graph.edge_count() - 1;
        let cell =
            if with_polytopes { Some(compact_cell(&class.graph, alpha.clone())?) } else { None };
        cells.push(CellData { dim, cell });
    }
    let quotient = if with_polytopes { Some(build_quotient(&poset, &cells)?) } else { None };
    let topology = quotient.as_ref().map(|q| q.topology());
    Ok(OrbiCellComplex { top_type: t, compact, poset, cells, quotient, topology })
}

/// Piece maps for the full quotient: automorphism edge actions within each
/// cell and coordinate renamings onto collapsed cells.
fn build_quotient(poset: &CollapsePoset, cells: &[CellData]) -> Result<Quotient, ModuliError> {
    let catalog = &poset.catalog;
    let lattices: Vec<&FaceLattice> =
        cells.iter().map(|c| &c.cell.as_ref().unwrap().lattice).collect();
    let polytopes: Vec<&HPolytope> =
        cells.iter().map(|c| &c.cell.as_ref().unwrap().polytope).collect();

    let chunks: Vec<Chunk> = lattices
        .iter()
        .map(|l| Chunk {
            dims: l.faces.iter().map(|f| f.dim).collect(),
            above: (0..l.faces.len())
                .map(|i| (0..l.faces.len()).filter(|&j| l.less(i, j)).collect())
                .collect(),
        })
        .collect();

    let vertex_index: Vec<BTreeMap<&Vec<Rat>, usize>> = polytopes
        .iter()
        .map(|p| p.vertices.iter().enumerate().map(|(i, v)| (v, i)).collect())
        .collect();
    let face_index: Vec<BTreeMap<&BTreeSet<usize>, usize>> = lattices
        .iter()
        .map(|l| l.faces.iter().enumerate().map(|(i, f)| (&f.vertices, i)).collect())
        .collect();

    let mut maps: Vec<PieceMap> = Vec::new();

    // automorphism edge action: permuting coordinates preserves each cell
    for (ci, class) in catalog.classes.iter().enumerate() {
        for a in &class.aut.edge_elements {
            if a.is_identity() {
                continue;
            }
            let mut map = BTreeMap::new();
            for (fi, face) in lattices[ci].faces.iter().enumerate() {
                let mut image = BTreeSet::new();
                for &v in &face.vertices {
                    let coords = &polytopes[ci].vertices[v];
                    let mut moved = vec![Rat::zero(); coords.len()];
                    for (e, x) in coords.iter().enumerate() {
                        moved[a.apply(e)] = x.clone();
                    }
                    let w = *vertex_index[ci].get(&moved).ok_or_else(|| {
                        ModuliError::GluingMismatch(format!(
                            "automorphism image of a vertex of cell {ci} is not a vertex"
                        ))
                    })?;
                    image.insert(w);
                }
                let target = *face_index[ci].get(&image).ok_or_else(|| {
                    ModuliError::GluingMismatch(format!(
                        "automorphism image of a face of cell {ci} is not a face"
                    ))
                })?;
                map.insert(fi, target);
            }
            maps.push(PieceMap { src_chunk: ci, dst_chunk: ci, map });
        }
    }

    // collapse attachments: faces at {x_F = 0} are the collapsed cell
    for (ci, class) in catalog.classes.iter().enumerate() {
        for forest in proper_forests(&class.graph) {
            let (target, edge_map) = collapse_to_class(catalog, ci, &forest);
            let mut map = BTreeMap::new();
            for (fi, face) in lattices[ci].faces.iter().enumerate() {
                let on_face = face
                    .vertices
                    .iter()
                    .all(|&v| forest.iter().all(|&f| polytopes[ci].vertices[v][f].is_zero()));
                if !on_face {
                    continue;
                }
                let image: Option<BTreeSet<usize>> = face
                    .vertices
                    .iter()
                    .map(|&v| {
                        let coords = &polytopes[ci].vertices[v];
                        let mut moved = vec![Rat::zero(); edge_map.len()];
                        for (&e, &e2) in &edge_map {
                            moved[e2] = coords[e].clone();
                        }
                        vertex_index[target].get(&moved).copied()
                    })
                    .collect();
                let image = image.ok_or_else(|| {
                    ModuliError::GluingMismatch(format!(
                        "collapse of cell {ci} along {forest:?} misses the vertices of cell {target}"
                    ))
                })?;
                let dst = *face_index[target].get(&image).ok_or_else(|| {
                    ModuliError::GluingMismatch(format!(
                        "collapse of cell {ci} along {forest:?} maps a face outside cell {target}'s lattice"
                    ))
                })?;
                map.insert(fi, dst);
            }
            if map.is_empty() {
                return Err(ModuliError::GluingMismatch(format!(
                    "cell {ci} has no faces on the collapse face {forest:?}"
                )));
            }
            maps.push(PieceMap { src_chunk: ci, dst_chunk: target, map });
        }
    }

    Ok(Quotient::new(chunks, maps))
}

impl OrbiCellComplex {
    pub fn stats(&self) -> ComplexStats {
        let mut cells_by_dim = BTreeMap::new();
        let mut orbifold_euler = Rat::zero();
        for (class, cell) in self.poset.catalog.classes.iter().zip(&self.cells) {
            *cells_by_dim.entry(cell.dim).or_insert(0) += 1;
            let sign = if cell.dim % 2 == 0 { rat(1, 1) } else { rat(-1, 1) };
            orbifold_euler += sign / rat(class.aut.order() as i64, 1);
        }
        let connected = Some(self.arrow_graph_connected());
        match &self.topology {
            Some(t) => ComplexStats {
                cells_by_dim,
                orbifold_euler,
                euler: Some(t.euler),
                connected: Some(t.connected),
                is_surface: t.is_surface,
                boundary_circles: t.boundary_circles,
                identified_faces_by_dim: self.quotient.as_ref().map(|q| q.piece_classes_by_dim()),
            },
            None => ComplexStats {
                cells_by_dim,
                orbifold_euler,
                euler: None,
                connected,
                is_surface: None,
                boundary_circles: None,
                identified_faces_by_dim: None,
            },
        }
    }

    /// Connectivity of the union of closed cells: classes joined by arrows.
    fn arrow_graph_connected(&self) -> bool {
        let n = self.poset.catalog.classes.len();
        if n == 0 {
            return true;
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            if parent[x] != x {
                let r = find(parent, parent[x]);
                parent[x] = r;
            }
            parent[x]
        }
        for arrow in &self.poset.arrows {
            let (a, b) = (find(&mut parent, arrow.source), find(&mut parent, arrow.target));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        (0..n).map(|i| find(&mut parent, i)).collect::<BTreeSet<_>>().len() == 1
    }

    /// Boundary circles of the compact quotient surface.
    pub fn boundary_circles(&self) -> Result<usize, ModuliError> {
        match &self.topology {
            Some(t) if t.is_surface == Some(true) => Ok(t.boundary_circles.unwrap()),
            _ => Err(ModuliError::NotASurface),
        }
    }
}
