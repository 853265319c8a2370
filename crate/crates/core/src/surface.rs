//! Fixed-locus invariants of an orientation-reversing involution of the
//! thickened surface: how many circles it fixes and whether the quotient is
//! orientable.
//!
//! The surface deformation-retracts onto a triangulation with one triangle
//! per half-edge h: corners at the vertex of h, the vertex of sigma1(h), and
//! the cusp point of h's boundary cycle; the triangle is bounded by the edge
//! of h and two walls joining the cusp point to the corners. An involution
//! tau maps triangle h to triangle tau~(h) with tau~ = sigma1 tau, reversing
//! orientation, so after one barycentric subdivision its fixed locus is a
//! subcomplex: a disjoint union of circles. The quotient is orientable
//! exactly when removing the fixed locus disconnects the surface.

use std::collections::{BTreeMap, BTreeSet};

use crate::perm::Perm;
use crate::ribbon::RibbonGraph;

pub(crate) struct RealLocusInvariants {
    pub circles: usize,
    pub orientable: bool,
}

/// Subdivision vertices: graph vertices, cusp points, edge midpoints, wall
/// midpoints (one per half-edge), triangle barycenters (one per half-edge).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum SdVertex {
    Vert(usize),
    Cusp(usize),
    EdgeMid(usize),
    WallMid(usize),
    Bary(usize),
}

/// Subdivision edges. Spokes join the barycenter of triangle h to the six
/// boundary subdivision vertices, in the cyclic boundary order
/// A, ME, B, MR, C, ML where A = vertex of h, ME = edge midpoint,
/// B = vertex of sigma1(h), MR = midpoint of the right wall (wall of h),
/// C = cusp point, ML = midpoint of the left wall (wall of sigma_inf^-1 h).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum SdEdge {
    Spoke(usize, u8),
    EdgeHalf(usize),
    WallCuspHalf(usize),
    WallVertHalf(usize),
}

const SPOKE_MIRROR: [u8; 6] = [2, 1, 0, 5, 4, 3]; // A<->B, ME, MR<->ML, C

struct Subdivision<'a> {
    graph: &'a RibbonGraph,
    tau: &'a Perm,
    tau_tilde: Perm,
    sigma_inf_inv: Perm,
}

impl<'a> Subdivision<'a> {
    fn new(graph: &'a RibbonGraph, tau: &'a Perm) -> Subdivision<'a> {
        let tau_tilde = graph.sigma1().compose(tau);
        let sigma_inf_inv = graph.sigma_inf().inverse();
        Subdivision { graph, tau, tau_tilde, sigma_inf_inv }
    }

    fn vertex_image(&self, v: SdVertex) -> SdVertex {
        let g = self.graph;
        match v {
            SdVertex::Vert(x) => SdVertex::Vert(g.vertex_of(self.tau.apply(g.vertices()[x][0]))),
            SdVertex::Cusp(c) => SdVertex::Cusp(g.cusp_of(self.tau_tilde.apply(g.cusps()[c][0]))),
            SdVertex::EdgeMid(e) => SdVertex::EdgeMid(g.edge_of(self.tau.apply(g.edges()[e][0]))),
            SdVertex::WallMid(h) => {
                SdVertex::WallMid(self.sigma_inf_inv.apply(self.tau_tilde.apply(h)))
            }
            SdVertex::Bary(h) => SdVertex::Bary(self.tau_tilde.apply(h)),
        }
    }

    fn edge_image(&self, e: SdEdge) -> SdEdge {
        match e {
            SdEdge::Spoke(h, s) => SdEdge::Spoke(self.tau_tilde.apply(h), SPOKE_MIRROR[s as usize]),
            SdEdge::EdgeHalf(h) => SdEdge::EdgeHalf(self.tau.apply(h)),
            SdEdge::WallCuspHalf(h) => {
                SdEdge::WallCuspHalf(self.sigma_inf_inv.apply(self.tau_tilde.apply(h)))
            }
            SdEdge::WallVertHalf(h) => {
                SdEdge::WallVertHalf(self.sigma_inf_inv.apply(self.tau_tilde.apply(h)))
            }
        }
    }

    fn edge_endpoints(&self, e: SdEdge) -> (SdVertex, SdVertex) {
        let g = self.graph;
        match e {
            SdEdge::Spoke(h, s) => {
                let boundary = match s {
                    0 => SdVertex::Vert(g.vertex_of(h)),
                    1 => SdVertex::EdgeMid(g.edge_of(h)),
                    2 => SdVertex::Vert(g.vertex_of(g.sigma1().apply(h))),
                    3 => SdVertex::WallMid(h),
                    4 => SdVertex::Cusp(g.cusp_of(h)),
                    5 => SdVertex::WallMid(self.sigma_inf_inv.apply(h)),
                    _ => unreachable!(),
                };
                (SdVertex::Bary(h), boundary)
            }
            SdEdge::EdgeHalf(h) => {
                (SdVertex::Vert(g.vertex_of(h)), SdVertex::EdgeMid(g.edge_of(h)))
            }
            SdEdge::WallCuspHalf(h) => (SdVertex::Cusp(g.cusp_of(h)), SdVertex::WallMid(h)),
            SdEdge::WallVertHalf(h) => {
                (SdVertex::Vert(g.vertex_of(g.sigma1().apply(h))), SdVertex::WallMid(h))
            }
        }
    }

    /// The boundary subdivision edge of sector s of triangle h; sector s
    /// spans boundary positions s and s+1 of the cycle A, ME, B, MR, C, ML.
    fn sector_boundary(&self, h: usize, s: usize) -> SdEdge {
        match s {
            0 => SdEdge::EdgeHalf(h),
            1 => SdEdge::EdgeHalf(self.graph.sigma1().apply(h)),
            2 => SdEdge::WallVertHalf(h),
            3 => SdEdge::WallCuspHalf(h),
            4 => SdEdge::WallCuspHalf(self.sigma_inf_inv.apply(h)),
            5 => SdEdge::WallVertHalf(self.sigma_inf_inv.apply(h)),
            _ => unreachable!(),
        }
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind { parent: (0..n).collect() }
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
}

/// Computes the invariants for an anti-automorphism tau. The caller is
/// responsible for tau actually being one.
pub(crate) fn real_locus_invariants(graph: &RibbonGraph, tau: &Perm) -> RealLocusInvariants {
    let sd = Subdivision::new(graph, tau);
    let n_half = graph.half_edge_count();

    let mut all_edges: Vec<SdEdge> = Vec::new();
    for h in 0..n_half {
        for s in 0..6u8 {
            all_edges.push(SdEdge::Spoke(h, s));
        }
        all_edges.push(SdEdge::EdgeHalf(h));
        all_edges.push(SdEdge::WallCuspHalf(h));
        all_edges.push(SdEdge::WallVertHalf(h));
    }

    let fixed_edges: BTreeSet<SdEdge> =
        all_edges.iter().copied().filter(|&e| sd.edge_image(e) == e).collect();

    // fixed locus: a 1-manifold, so every touched vertex has degree 2
    let mut degree: BTreeMap<SdVertex, usize> = BTreeMap::new();
    for &e in &fixed_edges {
        let (a, b) = sd.edge_endpoints(e);
        assert_eq!(sd.vertex_image(a), a);
        assert_eq!(sd.vertex_image(b), b);
        *degree.entry(a).or_insert(0) += 1;
        *degree.entry(b).or_insert(0) += 1;
    }
    assert!(degree.values().all(|&d| d == 2), "fixed locus is not a union of circles");

    let fixed_vertices: Vec<SdVertex> = degree.keys().copied().collect();
    let vertex_id: BTreeMap<SdVertex, usize> =
        fixed_vertices.iter().copied().enumerate().map(|(i, v)| (v, i)).collect();
    let mut locus = UnionFind::new(fixed_vertices.len());
    for &e in &fixed_edges {
        let (a, b) = sd.edge_endpoints(e);
        locus.union(vertex_id[&a], vertex_id[&b]);
    }
    let circles = (0..fixed_vertices.len()).map(|v| locus.find(v)).collect::<BTreeSet<_>>().len();

    // orientability of the quotient: walk sectors across subdivision edges
    // not on the fixed locus; two components left means the complement is
    // two-sided
    let sector_id = |h: usize, s: usize| 6 * h + s;
    let mut sectors = UnionFind::new(6 * n_half);
    for h in 0..n_half {
        for s in 0..6usize {
            // spoke shared with the next sector around the barycenter
            let spoke = SdEdge::Spoke(h, ((s + 1) % 6) as u8);
            if !fixed_edges.contains(&spoke) {
                sectors.union(sector_id(h, s), sector_id(h, (s + 1) % 6));
            }
        }
        // boundary edges shared with neighbouring triangles
        let pairs = [
            (0usize, graph.sigma1().apply(h), 1usize),
            (2, graph.sigma_inf().apply(h), 5),
            (3, graph.sigma_inf().apply(h), 4),
        ];
        for (s, h2, s2) in pairs {
            if !fixed_edges.contains(&sd.sector_boundary(h, s)) {
                sectors.union(sector_id(h, s), sector_id(h2, s2));
            }
        }
    }
    let components = (0..6 * n_half).map(|x| sectors.find(x)).collect::<BTreeSet<_>>().len();
    assert!(components == 1 || components == 2, "involution does not reflect the surface");
    RealLocusInvariants { circles, orientable: components == 2 }
}
