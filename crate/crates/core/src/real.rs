//! Real structures on ribbon graphs and symmetric subcomplexes.
//!
//! A real structure is an involution tau of the half-edges commuting with
//! the edge pairing and conjugating the vertex rotation to its inverse: an
//! orientation-reversing symmetry of the thickened surface. Metric graphs
//! fixed by tau model surfaces with boundary; the quotient's invariants
//! (genus, boundary circles, marked points) form the bordered type whose
//! orientation double cover is the ambient surface type.
//!
//! The fixed locus of tau inside a cell is the subspace of metrics constant
//! on tau's edge orbits. The symmetric subcomplex collects these loci over
//! all classes, subdivides them along the reflection walls of the stabilizer
//! action, imports collapse faces from the loci of collapsed classes
//! (coordinate renamings, as in the ambient complex), and counts cells
//! modulo the identifications. Besides the label-preserving automorphisms,
//! identifications include isomorphisms swapping labels within conjugate
//! pairs: an interior marked point of the quotient lifts to an unordered
//! pair, so its two lifts carry no individual labels.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use crate::enumeration::{collapse_to_class, enumerate_graphs, EnumOptions, GraphCatalog};
use crate::moduli::{building_family, default_moduli_alpha, ModuliError};
use crate::perm::Perm;
use crate::polytope::{enumerate_vertices, lattice_from_vertex_data};
use crate::ribbon::{RibbonGraph, TopologicalType};
use crate::surface::real_locus_invariants;
use crate::{rat, Rat};

/// Topological type of a bordered surface: genus, boundary components,
/// interior marked points, and total marked points on the boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BorderedType {
    pub genus: usize,
    pub boundary_components: usize,
    pub interior_points: usize,
    pub boundary_points: usize,
}

impl BorderedType {
    /// The orientation double cover: genus 2g + b - 1 with 2n + m cusps.
    pub fn double_type(&self) -> TopologicalType {
        assert!(self.boundary_components >= 1);
        TopologicalType {
            genus: 2 * self.genus + self.boundary_components - 1,
            boundary_cycles: 2 * self.interior_points + self.boundary_points,
        }
    }

    /// Orbifold Euler characteristic 2 - 2g - b - n - m/2.
    pub fn euler(&self) -> Rat {
        rat(
            2 - 2 * self.genus as i64
                - self.boundary_components as i64
                - self.interior_points as i64,
            1,
        ) - rat(self.boundary_points as i64, 2)
    }

    /// Real dimension 6g + 3b + 3n + 2m - 7 of the moduli of symmetric
    /// metric graphs of this type.
    pub fn dim(&self) -> i64 {
        6 * self.genus as i64
            + 3 * self.boundary_components as i64
            + 3 * self.interior_points as i64
            + 2 * self.boundary_points as i64
            - 7
    }
}

/// Double type, Euler characteristic and moduli dimension in one record.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BorderedInvariants {
    pub double_type: TopologicalType,
    pub euler: Rat,
    pub dim: i64,
}

pub fn bordered_invariants(t: BorderedType) -> BorderedInvariants {
    BorderedInvariants { double_type: t.double_type(), euler: t.euler(), dim: t.dim() }
}

/// The label involution of the standard real structure: the first m labels
/// are fixed (boundary marks), the remaining 2n are swapped in consecutive
/// pairs (interior points and their mirrors).
pub fn canonical_pairing(interior: usize, boundary_marks: usize) -> Perm {
    let mut images: Vec<usize> = (0..boundary_marks).collect();
    for i in 0..interior {
        images.push(boundary_marks + 2 * i + 1);
        images.push(boundary_marks + 2 * i);
    }
    Perm::from_images(images)
}

/// A real structure: the involution, its action on labels and edges, and
/// the invariants of its fixed locus on the surface.
#[derive(Debug, Clone)]
pub struct RealStructure {
    pub tau: Perm,
    pub label_action: Perm,
    pub edge_action: Perm,
    pub edge_orbits: Vec<BTreeSet<usize>>,
    /// Circles fixed on the thickened surface: the boundary components of
    /// the quotient.
    pub circles: usize,
    /// Whether the quotient surface is orientable.
    pub orientable: bool,
}

impl RealStructure {
    /// Dimension of the fixed locus in the open cell.
    pub fn dim(&self) -> usize {
        self.edge_orbits.len() - 1
    }
}

/// All involutions tau with tau sigma1 tau = sigma1 and
/// tau sigma0 tau = sigma0^{-1} whose induced label involution is `pairing`.
/// Each is determined by the image of one half-edge, so at most 2e exist.
pub fn real_structures(graph: &RibbonGraph, pairing: &Perm) -> Vec<RealStructure> {
    assert_eq!(pairing.degree(), graph.cusps().len());
    assert!(pairing.compose(pairing).is_identity());
    let n = graph.half_edge_count();
    let sigma0 = graph.sigma0();
    let sigma1 = graph.sigma1();
    let s0_inv = sigma0.inverse();
    let mut out = Vec::new();
    'seed: for t in 0..n {
        let mut image = vec![usize::MAX; n];
        image[0] = t;
        let mut stack = vec![0];
        while let Some(x) = stack.pop() {
            let y = image[x];
            for (nx, ny) in [(sigma0.apply(x), s0_inv.apply(y)), (sigma1.apply(x), sigma1.apply(y))]
            {
                if image[nx] == usize::MAX {
                    image[nx] = ny;
                    stack.push(nx);
                } else if image[nx] != ny {
                    continue 'seed;
                }
            }
        }
        // connectivity reaches every half-edge
        assert!(image.iter().all(|&v| v != usize::MAX));
        let mut seen = vec![false; n];
        for &v in &image {
            if seen[v] {
                continue 'seed;
            }
            seen[v] = true;
        }
        let tau = Perm::from_images(image);
        if !tau.compose(&tau).is_identity()
            || tau.compose(sigma1) != sigma1.compose(&tau)
            || tau.compose(sigma0) != s0_inv.compose(&tau)
        {
            continue;
        }
        let tau_tilde = sigma1.compose(&tau);
        debug_assert_eq!(
            tau_tilde.compose(graph.sigma_inf()),
            graph.sigma_inf().inverse().compose(&tau_tilde)
        );
        let mut label_images = vec![usize::MAX; graph.cusps().len()];
        for (c, cyc) in graph.cusps().iter().enumerate() {
            let c2 = graph.cusp_of(tau_tilde.apply(cyc[0]));
            label_images[graph.labels()[c]] = graph.labels()[c2];
        }
        let label_action = Perm::from_images(label_images);
        if &label_action != pairing {
            continue;
        }
        let edge_action = Perm::from_images(
            graph.edges().iter().map(|&[a, _]| graph.edge_of(tau.apply(a))).collect(),
        );
        let edge_orbits: Vec<BTreeSet<usize>> =
            edge_action.cycles().into_iter().map(|c| c.into_iter().collect()).collect();
        let inv = real_locus_invariants(graph, &tau);
        out.push(RealStructure {
            tau,
            label_action,
            edge_action,
            edge_orbits,
            circles: inv.circles,
            orientable: inv.orientable,
        });
    }
    out
}

/// The fixed locus of one class of the symmetric subcomplex: all real
/// structures on the class with a common edge-orbit partition.
#[derive(Debug, Clone)]
pub struct SymmetricLocus {
    pub class: usize,
    pub orbit_partition: Vec<BTreeSet<usize>>,
    pub taus: Vec<Perm>,
    pub dim: usize,
}

impl SymmetricLocus {
    pub fn multiplicity(&self) -> usize {
        self.taus.len()
    }
}

/// The symmetric subcomplex of a moduli complex: cells counted after wall
/// subdivision, collapse gluing (compact only) and the automorphism action.
pub struct SymmetricComplex {
    pub bordered: BorderedType,
    pub double: TopologicalType,
    pub compact: bool,
    pub catalog: GraphCatalog,
    pub loci: Vec<SymmetricLocus>,
    pub cells_by_dim: BTreeMap<i64, usize>,
}

/// Geometry of one locus piece: its vertex coordinates in the edge-length
/// simplex of its class, sorted.
type PieceKey = Vec<Vec<Rat>>;

/// An isomorphism whose label action swaps some conjugate pairs. The two
/// lifts of an interior point are not individually distinguished, so these
/// maps identify pieces on top of the label-preserving automorphisms.
struct PairSwap {
    source: usize,
    target: usize,
    edge_map: Vec<usize>,
}

/// One representative per class and nonempty subset of conjugate pairs:
/// relabel the class within the chosen pairs and locate it in the catalog.
fn pair_swap_maps(catalog: &GraphCatalog, interior: usize, boundary_marks: usize) -> Vec<PairSwap> {
    let mut out = Vec::new();
    for (ci, class) in catalog.classes.iter().enumerate() {
        let graph = &class.graph;
        for mask in 1u64..(1 << interior) {
            let mut p: Vec<usize> = (0..2 * interior + boundary_marks).collect();
            for i in 0..interior {
                if mask >> i & 1 == 1 {
                    p.swap(boundary_marks + 2 * i, boundary_marks + 2 * i + 1);
                }
            }
            let relabeled = graph
                .with_labels(graph.labels().iter().map(|&l| p[l]).collect())
                .expect("pair swaps permute labels");
            let (_, pi) = relabeled.canonicalize();
            let target =
                catalog.class_of(&relabeled).expect("the catalog is closed under relabeling");
            let target_graph = &catalog.classes[target].graph;
            debug_assert_eq!(relabeled.relabel_half_edges(&pi), *target_graph);
            let edge_map = (0..graph.edge_count())
                .map(|e| target_graph.edge_of(pi.apply(graph.edges()[e][0])))
                .collect();
            out.push(PairSwap { source: ci, target, edge_map });
        }
    }
    out
}

struct PieceTable {
    /// per class: piece key -> global piece id
    registry: Vec<BTreeMap<PieceKey, usize>>,
    /// dimension per global id
    dims: Vec<i64>,
    parent: Vec<usize>,
}

impl PieceTable {
    fn new(classes: usize) -> PieceTable {
        PieceTable {
            registry: vec![BTreeMap::new(); classes],
            dims: Vec::new(),
            parent: Vec::new(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let r = self.find(self.parent[x]);
            self.parent[x] = r;
        }
        self.parent[x]
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    /// Registers a fresh piece unless the key is known.
    fn insert(&mut self, class: usize, key: PieceKey, dim: i64) -> usize {
        if let Some(&id) = self.registry[class].get(&key) {
            return id;
        }
        let id = self.dims.len();
        self.dims.push(dim);
        self.parent.push(id);
        self.registry[class].insert(key, id);
        id
    }

    /// Registers a key as another name of an existing piece.
    fn alias(&mut self, class: usize, key: PieceKey, id: usize) {
        if let Some(&known) = self.registry[class].get(&key) {
            self.union(known, id);
        } else {
            self.registry[class].insert(key, id);
        }
    }
}

fn normalize_partition(orbits: &[BTreeSet<usize>]) -> Vec<BTreeSet<usize>> {
    let mut p = orbits.to_vec();
    p.sort();
    p
}

/// Ambient constraints of a class cell: simplex facets plus, for compact
/// cells, the truncation cuts with the telescoping depth schedule.
fn ambient_inequalities(graph: &RibbonGraph, compact: bool, alpha: &Rat) -> Vec<(Vec<Rat>, Rat)> {
    let e = graph.edge_count();
    let mut out: Vec<(Vec<Rat>, Rat)> = (0..e)
        .map(|i| {
            let mut coeffs = vec![Rat::zero(); e];
            coeffs[i] = rat(1, 1);
            (coeffs, Rat::zero())
        })
        .collect();
    if compact {
        for b in building_family(graph).cuts {
            let coeffs: Vec<Rat> =
                (0..e).map(|i| if b.contains(&i) { Rat::zero() } else { rat(1, 1) }).collect();
            let k = e - b.len();
            out.push((coeffs, alpha * rat(1, 1i64 << (2 * (e - k)))));
        }
    }
    out
}

/// Wall functionals of a locus in orbit coordinates: for each stabilizer
/// edge action inducing a single transposition of the orbit partition, the
/// difference of the two swapped orbit coordinates.
fn locus_walls(partition: &[BTreeSet<usize>], edge_elements: &[Perm]) -> Vec<(usize, usize)> {
    let mut walls = BTreeSet::new();
    for a in edge_elements {
        let mapped: Option<Vec<usize>> = partition
            .iter()
            .map(|o| {
                let image: BTreeSet<usize> = o.iter().map(|&e| a.apply(e)).collect();
                partition.iter().position(|p| p == &image)
            })
            .collect();
        let Some(mapped) = mapped else { continue };
        let moved: Vec<usize> = (0..partition.len()).filter(|&i| mapped[i] != i).collect();
        if moved.len() == 2 && mapped[moved[0]] == moved[1] {
            walls.insert((moved[0], moved[1]));
        }
    }
    walls.into_iter().collect()
}

/// Faces of a locus polytope subdivided by its walls, in orbit coordinates:
/// piece keys with dimensions and the sets of identically vanishing orbits.
fn subdivided_faces(
    equalities: &[(Vec<Rat>, Rat)],
    ambient: &[(Vec<Rat>, Rat)],
    walls: &[(usize, usize)],
    n_orbits: usize,
) -> Vec<(PieceKey, i64, BTreeSet<usize>)> {
    let mut regions: Vec<Vec<(Vec<Rat>, Rat)>> = vec![Vec::new()];
    for &(i, j) in walls {
        let mut w = vec![Rat::zero(); n_orbits];
        w[i] = rat(1, 1);
        w[j] = rat(-1, 1);
        let neg: Vec<Rat> = w.iter().map(|x| -x).collect();
        let mut next = Vec::new();
        for region in regions {
            let mut plus = region.clone();
            plus.push((w.clone(), Rat::zero()));
            let mut minus = region;
            minus.push((neg.clone(), Rat::zero()));
            next.push(plus);
            next.push(minus);
        }
        regions = next;
    }
    let mut out: BTreeMap<PieceKey, (i64, BTreeSet<usize>)> = BTreeMap::new();
    for extra in regions {
        let mut ineqs = ambient.to_vec();
        ineqs.extend(extra);
        let (vertices, active) = enumerate_vertices(equalities, &ineqs);
        if vertices.is_empty() {
            continue;
        }
        let lattice = lattice_from_vertex_data(&vertices, &active, ineqs.len());
        for face in &lattice.faces {
            let mut key: PieceKey = face.vertices.iter().map(|&v| vertices[v].clone()).collect();
            key.sort();
            let vanishing: BTreeSet<usize> =
                (0..n_orbits).filter(|&o| key.iter().all(|v| v[o].is_zero())).collect();
            out.entry(key).or_insert((face.dim, vanishing));
        }
    }
    out.into_iter().map(|(k, (d, v))| (k, d, v)).collect()
}

pub fn symmetric_subcomplex(
    bordered: BorderedType,
    compact: bool,
    alpha: Option<Rat>,
    opts: &EnumOptions,
) -> Result<SymmetricComplex, ModuliError> {
    let double = bordered.double_type();
    let catalog = enumerate_graphs(double, opts)?;
    let pairing = canonical_pairing(bordered.interior_points, bordered.boundary_points);
    let alpha = alpha.unwrap_or_else(default_moduli_alpha);

    let swaps = pair_swap_maps(&catalog, bordered.interior_points, bordered.boundary_points);
    // the full identification group per class: label-preserving automorphisms
    // and their composites with pair swaps fixing the class
    let mut stabilizers: Vec<Vec<Perm>> =
        catalog.classes.iter().map(|c| c.aut.edge_elements.clone()).collect();
    for s in &swaps {
        if s.source == s.target {
            let phi = Perm::from_images(s.edge_map.clone());
            for a in &catalog.classes[s.source].aut.edge_elements {
                stabilizers[s.source].push(a.compose(&phi));
            }
        }
    }
    for group in &mut stabilizers {
        group.sort_by(|a, b| a.images().cmp(b.images()));
        group.dedup();
    }

    // classes in ascending edge count, so collapse targets are ready first
    let mut order: Vec<usize> = (0..catalog.classes.len()).collect();
    order.sort_by_key(|&ci| catalog.classes[ci].graph.edge_count());

    let mut table = PieceTable::new(catalog.classes.len());
    let mut loci: Vec<SymmetricLocus> = Vec::new();
    // per locus: every piece key lying in it (own and imported)
    let mut locus_keys: Vec<Vec<PieceKey>> = Vec::new();
    let locus_index = |loci: &[SymmetricLocus], class: usize, partition: &[BTreeSet<usize>]| {
        loci.iter().position(|l| l.class == class && l.orbit_partition == partition)
    };

    for &ci in &order {
        let class = &catalog.classes[ci];
        let graph = &class.graph;
        let e = graph.edge_count();
        let structures = real_structures(graph, &pairing);
        let mut by_partition: BTreeMap<Vec<BTreeSet<usize>>, Vec<Perm>> = BTreeMap::new();
        for rs in structures {
            if rs.circles != bordered.boundary_components || !rs.orientable {
                continue;
            }
            by_partition.entry(normalize_partition(&rs.edge_orbits)).or_default().push(rs.tau);
        }
        for (partition, taus) in by_partition {
            // project onto orbit coordinates (x_e = y_o for e in orbit o);
            // projected ambient rows often coincide, keep the tightest
            let orbits = partition.len();
            let mut orbit_of = vec![0usize; e];
            for (o, orbit) in partition.iter().enumerate() {
                for &edge in orbit {
                    orbit_of[edge] = o;
                }
            }
            let project = |coeffs: &[Rat]| {
                let mut row = vec![Rat::zero(); orbits];
                for (edge, c) in coeffs.iter().enumerate() {
                    row[orbit_of[edge]] += c;
                }
                row
            };
            let equalities = vec![(project(&vec![rat(1, 1); e]), rat(1, 1))];
            let mut rows: BTreeMap<Vec<Rat>, Rat> = BTreeMap::new();
            for (coeffs, rhs) in ambient_inequalities(graph, compact, &alpha) {
                let row = project(&coeffs);
                match rows.get(&row) {
                    Some(known) if *known >= rhs => {}
                    _ => {
                        rows.insert(row, rhs);
                    }
                }
            }
            let ambient: Vec<(Vec<Rat>, Rat)> = rows.into_iter().collect();
            let walls = locus_walls(&partition, &stabilizers[ci]);
            let faces = subdivided_faces(&equalities, &ambient, &walls, orbits);

            let lift = |key: &PieceKey| {
                let mut lifted: PieceKey = key
                    .iter()
                    .map(|y| (0..e).map(|edge| y[orbit_of[edge]].clone()).collect())
                    .collect();
                lifted.sort();
                lifted
            };
            let mut keys: Vec<PieceKey> = Vec::new();
            for (key, dim, vanishing) in faces {
                if vanishing.is_empty() {
                    let key = lift(&key);
                    table.insert(ci, key.clone(), dim);
                    keys.push(key);
                }
            }

            if compact {
                // import the faces at {x_F = 0}: they are the loci of the
                // collapsed classes, coordinate for coordinate
                let parts = partition.len();
                for mask in 1u64..(1 << parts) {
                    let forest: BTreeSet<usize> = (0..parts)
                        .filter(|&i| mask >> i & 1 == 1)
                        .flat_map(|i| partition[i].iter().copied())
                        .collect();
                    if forest.len() == e || !graph.is_forest(&forest) {
                        continue;
                    }
                    let (target, edge_map) = collapse_to_class(&catalog, ci, &forest);
                    let descended: Vec<BTreeSet<usize>> = normalize_partition(
                        &partition
                            .iter()
                            .filter(|o| o.iter().all(|f| !forest.contains(f)))
                            .map(|o| o.iter().map(|&f| edge_map[&f]).collect())
                            .collect::<Vec<_>>(),
                    );
                    let li = locus_index(&loci, target, &descended).ok_or_else(|| {
                        ModuliError::GluingMismatch(format!(
                            "collapse of class {ci} along {forest:?} lands outside the symmetric locus of class {target}"
                        ))
                    })?;
                    for target_key in locus_keys[li].clone() {
                        let mut key: PieceKey = target_key
                            .iter()
                            .map(|v| {
                                let mut lifted = vec![Rat::zero(); e];
                                for (&s, &t) in &edge_map {
                                    lifted[s] = v[t].clone();
                                }
                                lifted
                            })
                            .collect();
                        key.sort();
                        let id = table.registry[target][&target_key];
                        table.alias(ci, key.clone(), id);
                        keys.push(key);
                    }
                }
            }

            loci.push(SymmetricLocus {
                class: ci,
                orbit_partition: partition,
                taus,
                dim: 0, // fixed below
            });
            let last = loci.len() - 1;
            loci[last].dim = loci[last].orbit_partition.len() - 1;
            locus_keys.push(keys);
        }
    }

    // stabilizer actions fold pieces within a class; pair swaps identify
    // pieces across classes
    let mut identifications: Vec<(usize, usize, Vec<usize>)> = Vec::new();
    for (ci, group) in stabilizers.iter().enumerate() {
        for a in group {
            if !a.is_identity() {
                identifications.push((ci, ci, a.images().to_vec()));
            }
        }
    }
    for s in &swaps {
        if s.source != s.target {
            identifications.push((s.source, s.target, s.edge_map.clone()));
        }
    }
    for (src, dst, edge_map) in identifications {
        let entries: Vec<(PieceKey, usize)> =
            table.registry[src].iter().map(|(k, &id)| (k.clone(), id)).collect();
        for (key, id) in entries {
            let mut image: PieceKey = key
                .iter()
                .map(|v| {
                    let mut moved = vec![Rat::zero(); v.len()];
                    for (e, x) in v.iter().enumerate() {
                        moved[edge_map[e]] = x.clone();
                    }
                    moved
                })
                .collect();
            image.sort();
            let other = *table.registry[dst].get(&image).ok_or_else(|| {
                ModuliError::GluingMismatch(format!(
                    "image of a symmetric piece of class {src} is not a piece of class {dst}"
                ))
            })?;
            table.union(id, other);
        }
    }

    let mut cells_by_dim: BTreeMap<i64, usize> = BTreeMap::new();
    let mut seen = BTreeSet::new();
    for id in 0..table.dims.len() {
        let root = table.find(id);
        if seen.insert(root) {
            *cells_by_dim.entry(table.dims[root]).or_insert(0) += 1;
        }
    }

    loci.sort_by_key(|l| (l.class, l.orbit_partition.clone()));
    Ok(SymmetricComplex { bordered, double, compact, catalog, loci, cells_by_dim })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moduli::assemble_complex;
    use crate::ribbon::fixtures;

    fn bordered(genus: usize, b: usize, n: usize, m: usize) -> BorderedType {
        BorderedType { genus, boundary_components: b, interior_points: n, boundary_points: m }
    }

    #[test]
    fn bordered_invariants_table() {
        // (g, b, n, m) -> (double genus, double cusps, euler, dim)
        let rows: [(BorderedType, usize, usize, Rat, i64); 7] = [
            (bordered(0, 1, 0, 3), 0, 3, rat(-1, 2), 2),
            (bordered(0, 1, 1, 1), 0, 3, rat(-1, 2), 1),
            (bordered(0, 1, 1, 2), 0, 4, rat(-1, 1), 3),
            (bordered(0, 1, 2, 0), 0, 4, rat(-1, 1), 2),
            (bordered(0, 2, 0, 1), 1, 1, rat(-1, 2), 1),
            (bordered(0, 2, 0, 2), 1, 2, rat(-1, 1), 3),
            (bordered(0, 2, 1, 0), 1, 2, rat(-1, 1), 2),
        ];
        for (t, dg, dn, euler, dim) in rows {
            assert_eq!(t.double_type(), TopologicalType { genus: dg, boundary_cycles: dn });
            assert_eq!(t.euler(), euler);
            assert_eq!(t.dim(), dim);
        }
    }

    #[test]
    fn canonical_pairing_shape() {
        let p = canonical_pairing(2, 3);
        assert!(p.compose(&p).is_identity());
        assert_eq!(p.images(), &[0, 1, 2, 4, 3, 6, 5]);
    }

    #[test]
    fn theta_real_structures() {
        let g = fixtures::theta();
        // all labels fixed: the unique real structure is sigma1 itself
        let all_fixed = real_structures(&g, &Perm::identity(3));
        assert_eq!(all_fixed.len(), 1);
        assert_eq!(&all_fixed[0].tau, g.sigma1());
        assert_eq!(all_fixed[0].circles, 1);
        assert!(all_fixed[0].orientable);
        assert_eq!(all_fixed[0].edge_orbits.len(), 3);

        // one label fixed, the other two swapped: again unique
        let swap = real_structures(&g, &canonical_pairing(1, 1));
        assert_eq!(swap.len(), 1);
        assert_eq!(swap[0].circles, 1);
        assert_eq!(swap[0].edge_orbits.len(), 2);
    }

    #[test]
    fn twisted_figure_eight_real_structures() {
        let g = fixtures::twisted_figure_eight();
        let all = real_structures(&g, &Perm::identity(1));
        assert_eq!(all.len(), 4);
        let two_sided: Vec<_> = all.iter().filter(|rs| rs.circles == 2 && rs.orientable).collect();
        assert_eq!(two_sided.len(), 2);
        for rs in &two_sided {
            assert_eq!(rs.edge_orbits.len(), 2);
        }
        assert_eq!(all.iter().filter(|rs| !rs.orientable).count(), 2);
    }

    #[test]
    fn conjugate_labels_have_equal_perimeters() {
        use crate::ribbon::MetricPoint;
        let g = fixtures::double_noose();
        let pairing = Perm::from_images(vec![2, 1, 0]);
        let structures = real_structures(&g, &pairing);
        assert!(!structures.is_empty());
        let rs = &structures[0];
        // a metric constant on the edge orbits: loops 1/3, middle 1/3
        let x = MetricPoint::new(vec![rat(1, 3), rat(1, 3), rat(1, 3)]).unwrap();
        let p = g.perimeter_map(&x);
        for l in 0..3 {
            assert_eq!(p[l], p[rs.label_action.apply(l)]);
        }
    }

    #[test]
    fn disc_with_interior_and_boundary_point_compact_cells() {
        let t = bordered(0, 1, 1, 1);
        let s = symmetric_subcomplex(t, true, None, &EnumOptions::default()).unwrap();
        assert_eq!(s.cells_by_dim, BTreeMap::from([(0, 3), (1, 2)]));
        assert_eq!(s.loci.len(), 3);
        assert!(s.loci.iter().all(|l| l.multiplicity() == 1));
    }

    #[test]
    fn annulus_with_boundary_point_compact_cells() {
        let t = bordered(0, 2, 0, 1);
        let s = symmetric_subcomplex(t, true, None, &EnumOptions::default()).unwrap();
        assert_eq!(s.cells_by_dim, BTreeMap::from([(0, 2), (1, 1)]));
        // one locus carried by two real structures
        assert_eq!(s.loci.len(), 1);
        assert_eq!(s.loci[0].multiplicity(), 2);
    }

    #[test]
    fn disc_with_three_boundary_points_is_the_full_complex() {
        let t = bordered(0, 1, 0, 3);
        let s = symmetric_subcomplex(t, true, None, &EnumOptions::default()).unwrap();
        let full = assemble_complex(s.double, true, None, &EnumOptions::default()).unwrap();
        let expected: BTreeMap<i64, usize> =
            full.stats().identified_faces_by_dim.unwrap().into_iter().collect();
        assert_eq!(s.cells_by_dim, expected);
        // every class carries exactly one all-fixed real structure
        assert_eq!(s.loci.len(), s.catalog.classes.len());
        assert!(s.loci.iter().all(|l| l.orbit_partition.iter().all(|o| o.len() == 1)));
    }

    #[test]
    fn open_subcomplex_dimensions_match() {
        for t in [bordered(0, 1, 1, 1), bordered(0, 2, 0, 1), bordered(0, 1, 0, 3)] {
            let s = symmetric_subcomplex(t, false, None, &EnumOptions::default()).unwrap();
            let max = s.cells_by_dim.keys().max().copied().unwrap();
            assert_eq!(max, t.dim());
        }
    }
}
