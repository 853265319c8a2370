//! Ribbon graphs as permutation pairs on a half-edge set.
//!
//! A ribbon graph is a pair of permutations of H = {0, .., 2e-1}: the cycles
//! of `sigma0` are the vertices (counterclockwise order of half-edges), the
//! transpositions of `sigma1` are the edges. The boundary cycles are the
//! orbits of `sigma_inf = sigma0^{-1} sigma1`; they carry labels 0..n-1
//! internally (1..n in the JSON interchange layer).
//!
//! Validity: sigma1 is a fixed-point-free involution, every vertex has
//! valence >= 3, and the group generated by sigma0 and sigma1 is transitive.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::perm::Perm;
use crate::Rat;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RibbonError {
    #[error("half-edge data invalid: {0}")]
    InvalidHalfEdges(String),
    #[error("sigma1 is not a fixed-point-free involution on the half-edges")]
    NotInvolution,
    #[error("vertex of valence {0}; every vertex needs valence at least 3")]
    ValenceTooLow(usize),
    #[error("half-edge set is not connected under sigma0 and sigma1")]
    Disconnected,
    #[error("labels do not biject onto the boundary cycles")]
    LabelMismatch,
    #[error("edge {0} is a loop and cannot be contracted")]
    LoopContraction(usize),
    #[error("edge set is not a forest")]
    NotForest,
    #[error("metric coordinates must be positive rationals summing to 1")]
    InvalidMetric,
}

/// Genus and boundary-cycle count of the thickened surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TopologicalType {
    pub genus: usize,
    pub boundary_cycles: usize,
}

impl TopologicalType {
    pub fn new(genus: usize, boundary_cycles: usize) -> Self {
        TopologicalType { genus, boundary_cycles }
    }

    pub fn euler(&self) -> i64 {
        2 - 2 * self.genus as i64 - self.boundary_cycles as i64
    }
}

/// Cell counts of the canonical triangulation of the thickened surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TriangulationCounts {
    pub faces: usize,
    pub edges: usize,
    pub vertices: usize,
    pub euler: i64,
}

/// A point of the open metric simplex: positive rational coordinates per
/// edge, summing to 1. The edge length is half the coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricPoint {
    coords: Vec<Rat>,
}

impl MetricPoint {
    pub fn new(coords: Vec<Rat>) -> Result<Self, RibbonError> {
        if coords.is_empty() || coords.iter().any(|x| !x.is_positive()) {
            return Err(RibbonError::InvalidMetric);
        }
        let sum: Rat = coords.iter().fold(Rat::zero(), |a, b| a + b);
        if !sum.is_one() {
            return Err(RibbonError::InvalidMetric);
        }
        Ok(MetricPoint { coords })
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    /// l(e) = x_e / 2.
    pub fn length(&self, edge: usize) -> Rat {
        &self.coords[edge] / Rat::from_integer(2.into())
    }
}

/// Canonical encoding of a labeled ribbon graph: two graphs are isomorphic as
/// labeled ribbon graphs iff their canonical forms are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub sigma0: Vec<usize>,
    pub sigma1: Vec<usize>,
    /// Label of each boundary cycle, cycles ordered by minimal half-edge.
    pub labels: Vec<usize>,
}

/// Canonical encoding with labels stripped (unlabeled isomorphism classes).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnlabeledForm {
    pub sigma0: Vec<usize>,
    pub sigma1: Vec<usize>,
}

/// Label-preserving automorphisms and their induced action on edges.
///
/// `elements` is the full group of half-edge permutations commuting with
/// sigma0 and sigma1 and fixing every boundary label; `edge_elements` is its
/// image acting on the edge set. The image is what acts on the metric
/// simplex; the kernel permutes half-edges within edges only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutGroup {
    pub elements: Vec<Perm>,
    pub edge_elements: Vec<Perm>,
}

impl AutGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn edge_order(&self) -> usize {
        self.edge_elements.len()
    }
}

/// Index maps of a contraction or forest collapse: `None` marks removed
/// half-edges/edges, otherwise the index in the result graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CollapseMap {
    pub half_edge: Vec<Option<usize>>,
    pub edge: Vec<Option<usize>>,
}

impl CollapseMap {
    fn identity(half_edges: usize, edges: usize) -> Self {
        CollapseMap {
            half_edge: (0..half_edges).map(Some).collect(),
            edge: (0..edges).map(Some).collect(),
        }
    }

    /// Composition `then` after `self`.
    fn and_then(&self, then: &CollapseMap) -> CollapseMap {
        CollapseMap {
            half_edge: self.half_edge.iter().map(|s| s.and_then(|i| then.half_edge[i])).collect(),
            edge: self.edge.iter().map(|s| s.and_then(|i| then.edge[i])).collect(),
        }
    }
}

/// A validated ribbon graph with labeled boundary cycles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RibbonGraph {
    sigma0: Perm,
    sigma1: Perm,
    sigma_inf: Perm,
    edges: Vec<[usize; 2]>,
    edge_of: Vec<usize>,
    vertices: Vec<Vec<usize>>,
    vertex_of: Vec<usize>,
    cusps: Vec<Vec<usize>>,
    cusp_of: Vec<usize>,
    labels: Vec<usize>,
}

/// Builds a graph from 1-based cycle data.
///
/// `labels`, when given, maps each label in 1..=n to some half-edge of the
/// corresponding boundary cycle. When omitted, cycles are labeled in order of
/// their minimal half-edge.
pub fn build_graph(
    sigma0_cycles: &[Vec<usize>],
    sigma1_pairs: &[(usize, usize)],
    labels: Option<&BTreeMap<usize, usize>>,
) -> Result<RibbonGraph, RibbonError> {
    let n_half = 2 * sigma1_pairs.len();
    if n_half == 0 {
        return Err(RibbonError::InvalidHalfEdges("no half-edges".into()));
    }
    let to_internal = |h: usize| -> Result<usize, RibbonError> {
        if h == 0 || h > n_half {
            Err(RibbonError::InvalidHalfEdges(format!("half-edge {h} out of range 1..={n_half}")))
        } else {
            Ok(h - 1)
        }
    };

    let mut paired = vec![false; n_half];
    let mut sigma1_map: Vec<usize> = (0..n_half).collect();
    for &(a, b) in sigma1_pairs {
        let (a, b) = (to_internal(a)?, to_internal(b)?);
        if a == b || paired[a] || paired[b] {
            return Err(RibbonError::NotInvolution);
        }
        paired[a] = true;
        paired[b] = true;
        sigma1_map[a] = b;
        sigma1_map[b] = a;
    }
    let sigma1 = Perm::from_images(sigma1_map);

    let mut in_cycle = vec![false; n_half];
    let mut sigma0_map: Vec<usize> = (0..n_half).collect();
    for cycle in sigma0_cycles {
        if cycle.len() < 3 {
            return Err(RibbonError::ValenceTooLow(cycle.len()));
        }
        for (i, &h) in cycle.iter().enumerate() {
            let x = to_internal(h)?;
            if in_cycle[x] {
                return Err(RibbonError::InvalidHalfEdges(format!(
                    "half-edge {h} appears twice in sigma0"
                )));
            }
            in_cycle[x] = true;
            sigma0_map[x] = to_internal(cycle[(i + 1) % cycle.len()])?;
        }
    }
    if let Some(x) = in_cycle.iter().position(|c| !c) {
        // a half-edge not on any sigma0 cycle would be a valence-1 vertex
        let _ = x;
        return Err(RibbonError::ValenceTooLow(1));
    }
    let sigma0 = Perm::from_images(sigma0_map);

    let unlabeled = RibbonGraph::from_permutations(sigma0, sigma1, None)?;
    match labels {
        None => Ok(unlabeled),
        Some(map) => {
            let n = unlabeled.cusps.len();
            let mut by_cusp = vec![usize::MAX; n];
            if map.len() != n {
                return Err(RibbonError::LabelMismatch);
            }
            for (&label, &h) in map {
                if label == 0 || label > n {
                    return Err(RibbonError::LabelMismatch);
                }
                let c = unlabeled.cusp_of[to_internal(h)?];
                if by_cusp[c] != usize::MAX {
                    return Err(RibbonError::LabelMismatch);
                }
                by_cusp[c] = label - 1;
            }
            unlabeled.with_labels(by_cusp)
        }
    }
}

impl RibbonGraph {
    /// Builds and validates a graph from 0-based permutations. `labels`, when
    /// given, lists the label of each boundary cycle in minimal-half-edge
    /// order of the cycles.
    pub fn from_permutations(
        sigma0: Perm,
        sigma1: Perm,
        labels: Option<Vec<usize>>,
    ) -> Result<RibbonGraph, RibbonError> {
        let n_half = sigma0.degree();
        if n_half == 0 || n_half % 2 != 0 || sigma1.degree() != n_half {
            return Err(RibbonError::InvalidHalfEdges(
                "sigma0 and sigma1 must act on the same even positive number of half-edges".into(),
            ));
        }
        if !sigma1.is_fixed_point_free_involution() {
            return Err(RibbonError::NotInvolution);
        }
        let vertices = sigma0.cycles();
        if let Some(c) = vertices.iter().find(|c| c.len() < 3) {
            return Err(RibbonError::ValenceTooLow(c.len()));
        }

        // connectivity under <sigma0, sigma1>
        let mut seen = vec![false; n_half];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for y in [sigma0.apply(x), sigma1.apply(x)] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(RibbonError::Disconnected);
        }

        let sigma_inf = sigma0.inverse().compose(&sigma1);
        let cusps = sigma_inf.cycles();

        let edges: Vec<[usize; 2]> = sigma1.cycles().into_iter().map(|c| [c[0], c[1]]).collect();
        let mut edge_of = vec![0; n_half];
        for (i, e) in edges.iter().enumerate() {
            edge_of[e[0]] = i;
            edge_of[e[1]] = i;
        }
        let mut vertex_of = vec![0; n_half];
        for (i, v) in vertices.iter().enumerate() {
            for &h in v {
                vertex_of[h] = i;
            }
        }
        let mut cusp_of = vec![0; n_half];
        for (i, c) in cusps.iter().enumerate() {
            for &h in c {
                cusp_of[h] = i;
            }
        }

        let n = cusps.len();
        let labels = labels.unwrap_or_else(|| (0..n).collect());
        let mut used = vec![false; n];
        if labels.len() != n
            || !labels.iter().all(|&l| l < n && !std::mem::replace(&mut used[l], true))
        {
            return Err(RibbonError::LabelMismatch);
        }

        let graph = RibbonGraph {
            sigma0,
            sigma1,
            sigma_inf,
            edges,
            edge_of,
            vertices,
            vertex_of,
            cusps,
            cusp_of,
            labels,
        };
        // sigma0 sigma_inf = sigma1 by construction
        debug_assert!(graph.sigma0.compose(&graph.sigma_inf) == graph.sigma1);
        Ok(graph)
    }

    /// Same graph with boundary labels replaced; `labels[c]` is the new label
    /// of the c-th boundary cycle.
    pub fn with_labels(&self, labels: Vec<usize>) -> Result<RibbonGraph, RibbonError> {
        RibbonGraph::from_permutations(self.sigma0.clone(), self.sigma1.clone(), Some(labels))
    }

    pub fn half_edge_count(&self) -> usize {
        self.sigma0.degree()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn sigma0(&self) -> &Perm {
        &self.sigma0
    }

    pub fn sigma1(&self) -> &Perm {
        &self.sigma1
    }

    pub fn sigma_inf(&self) -> &Perm {
        &self.sigma_inf
    }

    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    pub fn edge_of(&self, h: usize) -> usize {
        self.edge_of[h]
    }

    /// Vertices as sigma0 cycles, each starting at its minimal half-edge.
    pub fn vertices(&self) -> &[Vec<usize>] {
        &self.vertices
    }

    pub fn vertex_of(&self, h: usize) -> usize {
        self.vertex_of[h]
    }

    /// Boundary cycles in minimal-half-edge order (not label order).
    pub fn cusps(&self) -> &[Vec<usize>] {
        &self.cusps
    }

    pub fn cusp_of(&self, h: usize) -> usize {
        self.cusp_of[h]
    }

    /// `labels()[c]` is the label of the c-th boundary cycle.
    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn cusp_with_label(&self, label: usize) -> usize {
        self.labels.iter().position(|&l| l == label).expect("label in range")
    }

    /// Boundary cycles in label order: entry i is the sigma_inf orbit of the
    /// cycle labeled i.
    pub fn boundary_cycles(&self) -> Vec<&[usize]> {
        (0..self.cusps.len()).map(|l| self.cusps[self.cusp_with_label(l)].as_slice()).collect()
    }

    /// Edge set touched by the boundary cycle with the given label.
    pub fn boundary_subgraph(&self, label: usize) -> BTreeSet<usize> {
        self.cusps[self.cusp_with_label(label)].iter().map(|&h| self.edge_of[h]).collect()
    }

    pub fn top_type(&self) -> TopologicalType {
        let v = self.vertices.len() as i64;
        let e = self.edge_count() as i64;
        let n = self.cusps.len() as i64;
        let two_g = 2 - v + e - n;
        assert!(two_g >= 0 && two_g % 2 == 0, "invalid genus from (v,e,n)=({v},{e},{n})");
        TopologicalType::new((two_g / 2) as usize, n as usize)
    }

    /// Face/edge/vertex counts of the triangulation of the thickened surface
    /// subordinate to the graph: 2e triangles, 3e edges, v + n points.
    pub fn triangulation_counts(&self) -> TriangulationCounts {
        let e = self.edge_count();
        let v = self.vertices.len();
        let n = self.cusps.len();
        let counts = TriangulationCounts {
            faces: 2 * e,
            edges: 3 * e,
            vertices: v + n,
            euler: (v + n) as i64 - 3 * e as i64 + 2 * e as i64,
        };
        debug_assert_eq!(counts.euler, 2 - 2 * self.top_type().genus as i64);
        counts
    }

    /// Conjugates the whole structure by `pi` (old half-edge x becomes
    /// pi(x)); boundary labels follow their cycles.
    pub fn relabel_half_edges(&self, pi: &Perm) -> RibbonGraph {
        assert_eq!(pi.degree(), self.half_edge_count());
        let sigma0 = self.sigma0.conjugate_by(pi);
        let sigma1 = self.sigma1.conjugate_by(pi);
        let core =
            RibbonGraph::from_permutations(sigma0, sigma1, None).expect("relabel keeps validity");
        let mut labels = vec![usize::MAX; core.cusps.len()];
        for h in 0..self.half_edge_count() {
            labels[core.cusp_of[pi.apply(h)]] = self.labels[self.cusp_of[h]];
        }
        core.with_labels(labels).expect("relabel keeps labels")
    }

    fn traversal_from(&self, start: usize) -> Perm {
        let nh = self.half_edge_count();
        let mut index = vec![usize::MAX; nh];
        let mut order = Vec::with_capacity(nh);
        index[start] = 0;
        order.push(start);
        let mut at = 0;
        while at < order.len() {
            let x = order[at];
            at += 1;
            for y in [self.sigma0.apply(x), self.sigma1.apply(x)] {
                if index[y] == usize::MAX {
                    index[y] = order.len();
                    order.push(y);
                }
            }
        }
        assert_eq!(order.len(), nh, "graph is connected");
        Perm::from_images(index)
    }

    fn encode_relabeled(&self, pi: &Perm) -> CanonicalForm {
        let nh = self.half_edge_count();
        let inv = pi.inverse();
        let mut s0 = Vec::with_capacity(nh);
        let mut s1 = Vec::with_capacity(nh);
        for x in 0..nh {
            let old = inv.apply(x);
            s0.push(pi.apply(self.sigma0.apply(old)));
            s1.push(pi.apply(self.sigma1.apply(old)));
        }
        // boundary cycles of the relabeled graph, ordered by minimal new half-edge
        let sigma_inf =
            Perm::from_images(s0.clone()).inverse().compose(&Perm::from_images(s1.clone()));
        let labels =
            sigma_inf.cycles().iter().map(|c| self.labels[self.cusp_of[inv.apply(c[0])]]).collect();
        CanonicalForm { sigma0: s0, sigma1: s1, labels }
    }

    /// Canonical form plus the relabeling (old index to new index) realizing it.
    ///
    /// From every start half-edge, a breadth-first traversal expanding
    /// sigma0(x) then sigma1(x) assigns new indices; the lexicographically
    /// least (sigma0, sigma1, labels) encoding wins.
    pub fn canonicalize(&self) -> (CanonicalForm, Perm) {
        let mut best: Option<(CanonicalForm, Perm)> = None;
        for start in 0..self.half_edge_count() {
            let pi = self.traversal_from(start);
            let enc = self.encode_relabeled(&pi);
            if best.as_ref().map_or(true, |(b, _)| enc < *b) {
                best = Some((enc, pi));
            }
        }
        best.expect("at least one half-edge")
    }

    pub fn canonical_form(&self) -> CanonicalForm {
        self.canonicalize().0
    }

    /// Canonical form ignoring labels, plus a realizing relabeling.
    pub fn canonicalize_unlabeled(&self) -> (UnlabeledForm, Perm) {
        let mut best: Option<(UnlabeledForm, Perm)> = None;
        for start in 0..self.half_edge_count() {
            let pi = self.traversal_from(start);
            let enc = self.encode_relabeled(&pi);
            let enc = UnlabeledForm { sigma0: enc.sigma0, sigma1: enc.sigma1 };
            if best.as_ref().map_or(true, |(b, _)| enc < *b) {
                best = Some((enc, pi));
            }
        }
        best.expect("at least one half-edge")
    }

    pub fn unlabeled_form(&self) -> UnlabeledForm {
        self.canonicalize_unlabeled().0
    }

    /// The graph in canonical numbering.
    pub fn canonical_graph(&self) -> RibbonGraph {
        let (_, pi) = self.canonicalize();
        self.relabel_half_edges(&pi)
    }

    /// A label-preserving bijection eta with eta sigma0 = sigma0' eta and
    /// eta sigma1 = sigma1' eta, if the graphs are isomorphic.
    pub fn isomorphism(&self, other: &RibbonGraph) -> Option<Perm> {
        let (mine, pi) = self.canonicalize();
        let (theirs, rho) = other.canonicalize();
        if mine != theirs {
            return None;
        }
        let eta = rho.inverse().compose(&pi);
        debug_assert!(self.check_isomorphism(other, &eta));
        Some(eta)
    }

    fn check_isomorphism(&self, other: &RibbonGraph, eta: &Perm) -> bool {
        let s0_ok = other.sigma0.compose(eta) == eta.compose(&self.sigma0);
        let s1_ok = other.sigma1.compose(eta) == eta.compose(&self.sigma1);
        let labels_ok = (0..self.half_edge_count())
            .all(|h| self.labels[self.cusp_of[h]] == other.labels[other.cusp_of[eta.apply(h)]]);
        s0_ok && s1_ok && labels_ok
    }

    fn automorphisms_inner(&self, preserve_labels: bool) -> AutGroup {
        let nh = self.half_edge_count();
        let mut elements = Vec::new();
        let mut edge_set: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut edge_elements = Vec::new();
        for target in 0..nh {
            // eta(0) = target determines eta on the whole orbit of 0 = H
            let mut eta = vec![usize::MAX; nh];
            eta[0] = target;
            let mut stack = vec![0usize];
            let mut ok = true;
            while let Some(x) = stack.pop() {
                let pairs = [
                    (self.sigma0.apply(x), self.sigma0.apply(eta[x])),
                    (self.sigma1.apply(x), self.sigma1.apply(eta[x])),
                ];
                for (src, dst) in pairs {
                    if eta[src] == usize::MAX {
                        eta[src] = dst;
                        stack.push(src);
                    } else if eta[src] != dst {
                        ok = false;
                        break;
                    }
                }
                if !ok {
                    break;
                }
            }
            if !ok || eta.iter().any(|&y| y == usize::MAX) {
                continue;
            }
            let mut seen = vec![false; nh];
            if !eta.iter().all(|&y| !std::mem::replace(&mut seen[y], true)) {
                continue;
            }
            let eta = Perm::from_images(eta);
            if eta.compose(&self.sigma0) != self.sigma0.compose(&eta)
                || eta.compose(&self.sigma1) != self.sigma1.compose(&eta)
            {
                continue;
            }
            if preserve_labels
                && !(0..nh).all(|h| {
                    self.labels[self.cusp_of[h]] == self.labels[self.cusp_of[eta.apply(h)]]
                })
            {
                continue;
            }
            let edge_images: Vec<usize> =
                self.edges.iter().map(|e| self.edge_of[eta.apply(e[0])]).collect();
            if edge_set.insert(edge_images.clone()) {
                edge_elements.push(Perm::from_images(edge_images));
            }
            elements.push(eta);
        }
        elements.sort_by(|a, b| a.images().cmp(b.images()));
        edge_elements.sort_by(|a, b| a.images().cmp(b.images()));
        AutGroup { elements, edge_elements }
    }

    /// Label-preserving automorphism group and its edge action.
    pub fn automorphisms(&self) -> AutGroup {
        self.automorphisms_inner(true)
    }

    /// Automorphism group ignoring boundary labels.
    pub fn automorphisms_unlabeled(&self) -> AutGroup {
        self.automorphisms_inner(false)
    }

    /// True iff the edge subset spans an acyclic subgraph.
    pub fn is_forest(&self, subset: &BTreeSet<usize>) -> bool {
        let mut parent: Vec<usize> = (0..self.vertices.len()).collect();
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            if parent[x] != x {
                let r = find(parent, parent[x]);
                parent[x] = r;
            }
            parent[x]
        }
        for &e in subset {
            let [a, b] = self.edges[e];
            let (ra, rb) =
                (find(&mut parent, self.vertex_of[a]), find(&mut parent, self.vertex_of[b]));
            if ra == rb {
                return false;
            }
            parent[ra] = rb;
        }
        true
    }

    /// Contracts a non-loop edge, splicing the cyclic order of the second
    /// endpoint into the first; boundary cycles and labels carry over.
    pub fn contract(&self, edge: usize) -> Result<(RibbonGraph, CollapseMap), RibbonError> {
        let [h1, h2] = self.edges[edge];
        if self.vertex_of[h1] == self.vertex_of[h2] {
            return Err(RibbonError::LoopContraction(edge));
        }
        let nh = self.half_edge_count();
        let mut new_idx = vec![None; nh];
        let mut old_of = Vec::with_capacity(nh - 2);
        for h in 0..nh {
            if h != h1 && h != h2 {
                new_idx[h] = Some(old_of.len());
                old_of.push(h);
            }
        }
        let redirect = |x: usize| -> usize {
            let y = self.sigma0.apply(x);
            if y == h1 {
                self.sigma0.apply(h2)
            } else if y == h2 {
                self.sigma0.apply(h1)
            } else {
                y
            }
        };
        let s0: Vec<usize> =
            old_of.iter().map(|&h| new_idx[redirect(h)].expect("survives")).collect();
        let s1: Vec<usize> = old_of
            .iter()
            .map(|&h| new_idx[self.sigma1.apply(h)].expect("not the contracted pair"))
            .collect();
        let core =
            RibbonGraph::from_permutations(Perm::from_images(s0), Perm::from_images(s1), None)?;

        // every old boundary cycle must survive as exactly one new cycle
        let mut labels = vec![usize::MAX; core.cusps.len()];
        for (new_h, &old_h) in old_of.iter().enumerate() {
            let label = self.labels[self.cusp_of[old_h]];
            let slot = &mut labels[core.cusp_of[new_h]];
            assert!(*slot == usize::MAX || *slot == label, "contraction split a boundary cycle");
            *slot = label;
        }
        let result = core.with_labels(labels).map_err(|_| RibbonError::LabelMismatch)?;

        let edge_map: Vec<Option<usize>> = self
            .edges
            .iter()
            .enumerate()
            .map(
                |(i, e)| {
                    if i == edge {
                        None
                    } else {
                        Some(result.edge_of[new_idx[e[0]].unwrap()])
                    }
                },
            )
            .collect();
        Ok((result, CollapseMap { half_edge: new_idx, edge: edge_map }))
    }

    /// Collapses every edge of a forest; the result is independent of the
    /// contraction order up to equality of the construction below (edges are
    /// contracted in ascending index order).
    pub fn collapse_forest(
        &self,
        forest: &BTreeSet<usize>,
    ) -> Result<(RibbonGraph, CollapseMap), RibbonError> {
        if !self.is_forest(forest) {
            return Err(RibbonError::NotForest);
        }
        assert!(forest.len() < self.edge_count(), "forest is a proper subset of the edges");
        let mut graph = self.clone();
        let mut map = CollapseMap::identity(self.half_edge_count(), self.edge_count());
        for &e in forest {
            let current = map.edge[e].expect("forest edges are distinct");
            let (next, step) = graph.contract(current)?;
            graph = next;
            map = map.and_then(&step);
        }
        Ok((graph, map))
    }

    /// Boundary-cycle lengths: entry i is the sum of l(e) = x_e/2 over the
    /// half-edges of the cycle labeled i. Entries sum to exactly 1.
    pub fn perimeter_map(&self, m: &MetricPoint) -> Vec<Rat> {
        assert_eq!(m.coords().len(), self.edge_count());
        let mut out = vec![Rat::zero(); self.cusps.len()];
        for (c, cusp) in self.cusps.iter().enumerate() {
            let mut sum = Rat::zero();
            for &h in cusp {
                sum += m.length(self.edge_of[h]);
            }
            out[self.labels[c]] = sum;
        }
        debug_assert!(out.iter().fold(Rat::zero(), |a, b| a + b).is_one());
        out
    }
}
