//! Quotients of glued polyhedral complexes.
//!
//! Input: chunks (graded posets of closed pieces, one per constituent cell
//! complex) plus identification maps between pieces. Piece-level classes
//! come from a union-find over pieces. Topological invariants come from a
//! union-find over flags (strictly increasing chains), i.e. over the cells
//! of the barycentric subdivision, which is insensitive to pieces folding
//! onto themselves.

use std::collections::{BTreeMap, BTreeSet};

/// A graded poset of pieces. `above[p]` holds every q with p strictly below
/// q (transitively closed); dimensions must strictly increase along it.
#[derive(Debug, Clone)]
pub struct Chunk {
    pub dims: Vec<i64>,
    pub above: Vec<BTreeSet<usize>>,
}

/// An order-preserving partial identification of pieces of one chunk with
/// pieces of another (or the same) chunk. The domain must be downward
/// closed.
#[derive(Debug, Clone)]
pub struct PieceMap {
    pub src_chunk: usize,
    pub dst_chunk: usize,
    pub map: BTreeMap<usize, usize>,
}

/// Invariants of the quotient space, computed on flags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Topology {
    pub euler: i64,
    pub connected: bool,
    /// `Some` only when the complex has dimension 2: every edge of the
    /// subdivision lies in at most two triangles.
    pub is_surface: Option<bool>,
    /// `Some` when the surface check passed: components of the free edges.
    pub boundary_circles: Option<usize>,
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
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
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

pub struct Quotient {
    chunks: Vec<Chunk>,
    maps: Vec<PieceMap>,
    offsets: Vec<usize>,
    piece_root: Vec<usize>,
}

impl Quotient {
    pub fn new(chunks: Vec<Chunk>, maps: Vec<PieceMap>) -> Quotient {
        let mut offsets = Vec::with_capacity(chunks.len());
        let mut total = 0;
        for c in &chunks {
            assert_eq!(c.dims.len(), c.above.len());
            for (p, ups) in c.above.iter().enumerate() {
                for &q in ups {
                    assert!(c.dims[p] < c.dims[q]);
                }
            }
            offsets.push(total);
            total += c.dims.len();
        }
        let mut uf = UnionFind::new(total);
        for m in &maps {
            for (&src, &dst) in &m.map {
                assert_eq!(chunks[m.src_chunk].dims[src], chunks[m.dst_chunk].dims[dst]);
                uf.union(offsets[m.src_chunk] + src, offsets[m.dst_chunk] + dst);
            }
        }
        let piece_root = (0..total).map(|p| uf.find(p)).collect();
        Quotient { chunks, maps, offsets, piece_root }
    }

    fn dim_of(&self, global: usize) -> i64 {
        let chunk = self.offsets.partition_point(|&o| o <= global) - 1;
        self.chunks[chunk].dims[global - self.offsets[chunk]]
    }

    pub fn piece_classes_by_dim(&self) -> BTreeMap<i64, usize> {
        let mut seen = BTreeSet::new();
        let mut counts = BTreeMap::new();
        for (p, &root) in self.piece_root.iter().enumerate() {
            if seen.insert(root) {
                *counts.entry(self.dim_of(p)).or_insert(0) += 1;
            }
        }
        counts
    }

    pub fn max_dim(&self) -> i64 {
        self.chunks.iter().flat_map(|c| c.dims.iter().copied()).max().unwrap_or(-1)
    }

    /// Flag-level invariants of the quotient space.
    pub fn topology(&self) -> Topology {
        // enumerate flags chunk by chunk
        let mut flags: Vec<(usize, Vec<usize>)> = Vec::new();
        let mut flag_id: BTreeMap<(usize, Vec<usize>), usize> = BTreeMap::new();
        for (ci, chunk) in self.chunks.iter().enumerate() {
            let mut stack: Vec<Vec<usize>> = (0..chunk.dims.len()).map(|p| vec![p]).collect();
            while let Some(chain) = stack.pop() {
                let id = flags.len();
                flag_id.insert((ci, chain.clone()), id);
                flags.push((ci, chain.clone()));
                let last = *chain.last().unwrap();
                for &next in &chunk.above[last] {
                    let mut longer = chain.clone();
                    longer.push(next);
                    stack.push(longer);
                }
            }
        }
        let mut uf = UnionFind::new(flags.len());
        for m in &self.maps {
            for (id, (ci, chain)) in flags.iter().enumerate() {
                if *ci != m.src_chunk {
                    continue;
                }
                let image: Option<Vec<usize>> =
                    chain.iter().map(|p| m.map.get(p).copied()).collect();
                if let Some(image) = image {
                    let target = flag_id[&(m.dst_chunk, image)];
                    uf.union(id, target);
                }
            }
        }
        let class_of: Vec<usize> = (0..flags.len()).map(|f| uf.find(f)).collect();
        let classes: BTreeSet<usize> = class_of.iter().copied().collect();

        let mut euler = 0i64;
        for &c in &classes {
            euler += if flags[c].1.len() % 2 == 1 { 1 } else { -1 };
        }

        // connectivity: singleton flags linked through length-2 flags
        let mut conn = UnionFind::new(flags.len());
        for (id, (ci, chain)) in flags.iter().enumerate() {
            if chain.len() == 2 {
                let a = flag_id[&(*ci, vec![chain[0]])];
                let b = flag_id[&(*ci, vec![chain[1]])];
                conn.union(class_of[a], class_of[b]);
                conn.union(class_of[a], class_of[id]);
            }
        }
        for (id, &c) in class_of.iter().enumerate() {
            conn.union(id, c);
        }
        let singleton_roots: BTreeSet<usize> = flags
            .iter()
            .enumerate()
            .filter(|(_, (_, chain))| chain.len() == 1)
            .map(|(id, _)| conn.find(id))
            .collect();
        let connected = singleton_roots.len() <= 1;

        if self.max_dim() != 2 {
            return Topology { euler, connected, is_surface: None, boundary_circles: None };
        }

        // surface check: count, per 1-flag class, incidences to 2-flag
        // classes (3 edge slots each)
        let mut use_count: BTreeMap<usize, usize> = BTreeMap::new();
        let mut seen_triangles = BTreeSet::new();
        for (id, (ci, chain)) in flags.iter().enumerate() {
            if chain.len() != 3 || !seen_triangles.insert(class_of[id]) {
                continue;
            }
            for drop in 0..3 {
                let side: Vec<usize> =
                    chain.iter().enumerate().filter(|(k, _)| *k != drop).map(|(_, &p)| p).collect();
                let side_id = class_of[flag_id[&(*ci, side)]];
                *use_count.entry(side_id).or_insert(0) += 1;
            }
        }
        let mut is_surface = true;
        for (id, (_, chain)) in flags.iter().enumerate() {
            if chain.len() == 2 && class_of[id] == id {
                let uses = use_count.get(&id).copied().unwrap_or(0);
                if uses == 0 || uses > 2 {
                    is_surface = false;
                }
            }
        }
        if !is_surface {
            return Topology { euler, connected, is_surface: Some(false), boundary_circles: None };
        }

        // boundary circles: free edges form a graph on vertex classes;
        // every incident vertex must have degree 2
        let mut degree: BTreeMap<usize, usize> = BTreeMap::new();
        let mut boundary_uf = UnionFind::new(flags.len());
        let mut boundary_vertices = BTreeSet::new();
        for (id, (ci, chain)) in flags.iter().enumerate() {
            if chain.len() == 2 && class_of[id] == id && use_count.get(&id) == Some(&1) {
                let a = class_of[flag_id[&(*ci, vec![chain[0]])]];
                let b = class_of[flag_id[&(*ci, vec![chain[1]])]];
                *degree.entry(a).or_insert(0) += 1;
                *degree.entry(b).or_insert(0) += 1;
                boundary_uf.union(a, b);
                boundary_vertices.insert(a);
                boundary_vertices.insert(b);
            }
        }
        if degree.values().any(|&d| d != 2) {
            return Topology { euler, connected, is_surface: Some(false), boundary_circles: None };
        }
        let circles: BTreeSet<usize> =
            boundary_vertices.iter().map(|&v| boundary_uf.find(v)).collect();
        Topology { euler, connected, is_surface: Some(true), boundary_circles: Some(circles.len()) }
    }
}
