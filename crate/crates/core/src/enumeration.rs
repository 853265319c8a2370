//! Exhaustive enumeration of the labeled ribbon graph classes of a fixed
//! topological type, and the collapse poset connecting their cells.
//!
//! Gauge choice: sigma1 is pinned to (0 1)(2 3)... since every fixed-point
//! free involution is conjugate to it; no classes are lost. sigma0 then
//! ranges over the permutations whose cycle type is a partition of 2e into
//! exactly v parts of size >= 3, where v = e + 2 - 2g - n is forced by the
//! type. Candidates are filtered by boundary-cycle count and connectivity,
//! deduplicated by unlabeled canonical form, and expanded into labeled
//! classes by enumerating label assignments modulo the unlabeled
//! automorphism action on boundary cycles.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use itertools::Itertools;
use thiserror::Error;

use crate::perm::Perm;
use crate::ribbon::{AutGroup, CanonicalForm, RibbonGraph, TopologicalType, UnlabeledForm};

/// Default half-edge budget (2e); types needing more require an override.
pub const DEFAULT_HALF_EDGE_BUDGET: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumError {
    #[error("type ({genus},{boundary_cycles}) needs {needed} half-edges, budget is {budget}")]
    ResourceLimit { genus: usize, boundary_cycles: usize, needed: usize, budget: usize },
}

#[derive(Debug, Clone)]
pub struct EnumOptions {
    /// Half-edge budget override; `None` means [`DEFAULT_HALF_EDGE_BUDGET`].
    pub max_half_edges: Option<usize>,
    /// Worker threads for the sigma0 search (deterministic output regardless).
    pub threads: usize,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions { max_half_edges: None, threads: 1 }
    }
}

/// One labeled isomorphism class: canonical representative plus its
/// label-preserving automorphism group.
#[derive(Debug, Clone)]
pub struct CatalogClass {
    pub graph: RibbonGraph,
    pub canonical: CanonicalForm,
    pub aut: AutGroup,
}

/// All labeled classes of one topological type, sorted by edge count and
/// canonical form.
#[derive(Debug, Clone)]
pub struct GraphCatalog {
    pub top_type: TopologicalType,
    pub classes: Vec<CatalogClass>,
    pub by_edge_count: BTreeMap<usize, Vec<usize>>,
    index: BTreeMap<CanonicalForm, usize>,
}

impl GraphCatalog {
    /// Index of the class isomorphic to `g` as a labeled graph.
    pub fn class_of(&self, g: &RibbonGraph) -> Option<usize> {
        self.index.get(&g.canonical_form()).copied()
    }
}

/// Edge-count range of the type: e_min = 2g + n - 1 (one vertex),
/// e_max = 6g - 6 + 3n (all vertices trivalent). The range may be empty.
pub fn edge_bounds(t: TopologicalType) -> (i64, i64) {
    let g = t.genus as i64;
    let n = t.boundary_cycles as i64;
    (2 * g + n - 1, 6 * g - 6 + 3 * n)
}

/// All partitions of `total` into exactly `parts` parts of size >= 3,
/// each partition weakly decreasing.
fn partitions(total: usize, parts: usize, max_part: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    // first (largest) part p: the rest needs at least 3 per part and at most p
    let hi = max_part.min(total.saturating_sub(3 * (parts - 1)));
    for p in (3..=hi).rev() {
        for mut rest in partitions(total - p, parts - 1, p) {
            rest.insert(0, p);
            out.push(rest);
        }
    }
    out
}

/// Calls `visit` with every permutation of {0..n-1} of the given cycle type.
/// Each cycle's leader is the least remaining element, so every permutation
/// appears exactly once.
fn for_each_with_cycle_type(n: usize, sizes: &[usize], visit: &mut impl FnMut(&[usize])) {
    let mut remaining: BTreeMap<usize, usize> = BTreeMap::new();
    for &s in sizes {
        *remaining.entry(s).or_insert(0) += 1;
    }
    let mut map: Vec<usize> = (0..n).collect();
    let mut used = vec![false; n];
    build(&mut map, &mut used, &mut remaining, visit);

    fn build(
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        remaining: &mut BTreeMap<usize, usize>,
        visit: &mut impl FnMut(&[usize]),
    ) {
        let leader = match used.iter().position(|u| !u) {
            None => {
                visit(map);
                return;
            }
            Some(l) => l,
        };
        let sizes: Vec<usize> = remaining.iter().filter(|(_, &c)| c > 0).map(|(&s, _)| s).collect();
        for s in sizes {
            *remaining.get_mut(&s).unwrap() -= 1;
            used[leader] = true;
            extend_cycle(map, used, remaining, leader, leader, s - 1, visit);
            used[leader] = false;
            *remaining.get_mut(&s).unwrap() += 1;
        }
    }

    // appends `left` more elements to the cycle whose last element is `prev`
    fn extend_cycle(
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        remaining: &mut BTreeMap<usize, usize>,
        leader: usize,
        prev: usize,
        left: usize,
        visit: &mut impl FnMut(&[usize]),
    ) {
        if left == 0 {
            map[prev] = leader;
            build(map, used, remaining, visit);
            map[prev] = prev;
            return;
        }
        for next in leader + 1..map.len() {
            if used[next] {
                continue;
            }
            used[next] = true;
            map[prev] = next;
            extend_cycle(map, used, remaining, leader, next, left - 1, visit);
            map[prev] = prev;
            used[next] = false;
        }
    }
}

/// Cheap filters on a raw sigma0 image table against the pinned sigma1:
/// boundary-cycle count and connectivity.
fn passes_filters(sigma0: &[usize], n_cycles: usize, scratch: &mut Scratch) -> bool {
    let n = sigma0.len();
    // sigma_inf(x) = sigma0^{-1}(sigma1(x)); sigma1 flips bit 0
    let inv = &mut scratch.inv;
    for (x, &y) in sigma0.iter().enumerate() {
        inv[y] = x;
    }
    let seen = &mut scratch.seen;
    seen.iter_mut().for_each(|s| *s = false);
    let mut orbits = 0;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        orbits += 1;
        if orbits > n_cycles {
            return false;
        }
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = inv[x ^ 1];
        }
    }
    if orbits != n_cycles {
        return false;
    }
    // connectivity under sigma0 and sigma1
    let seen = &mut scratch.seen;
    seen.iter_mut().for_each(|s| *s = false);
    let stack = &mut scratch.stack;
    stack.clear();
    stack.push(0);
    seen[0] = true;
    let mut count = 1;
    while let Some(x) = stack.pop() {
        for y in [sigma0[x], x ^ 1] {
            if !seen[y] {
                seen[y] = true;
                count += 1;
                stack.push(y);
            }
        }
    }
    count == n
}

struct Scratch {
    inv: Vec<usize>,
    seen: Vec<bool>,
    stack: Vec<usize>,
}

impl Scratch {
    fn new(n: usize) -> Self {
        Scratch { inv: vec![0; n], seen: vec![false; n], stack: Vec::with_capacity(n) }
    }
}

fn pinned_sigma1(n_half: usize) -> Perm {
    Perm::from_images((0..n_half).map(|x| x ^ 1).collect())
}

/// Unlabeled canonical forms of all connected valence->=3 graphs of the type,
/// searched per (edge count, cycle type) work item, optionally in parallel.
fn unlabeled_forms(
    t: TopologicalType,
    opts: &EnumOptions,
    budget: usize,
) -> Result<BTreeSet<UnlabeledForm>, EnumError> {
    let (e_min, e_max) = edge_bounds(t);
    let mut items: Vec<(usize, Vec<usize>)> = Vec::new();
    for e in e_min.max(1)..=e_max {
        let e = e as usize;
        if 2 * e > budget {
            return Err(EnumError::ResourceLimit {
                genus: t.genus,
                boundary_cycles: t.boundary_cycles,
                needed: 2 * e_max as usize,
                budget,
            });
        }
        let v = e as i64 + 2 - 2 * t.genus as i64 - t.boundary_cycles as i64;
        if v < 1 {
            continue;
        }
        for p in partitions(2 * e, v as usize, 2 * e) {
            items.push((e, p));
        }
    }

    let next = AtomicUsize::new(0);
    let forms = Mutex::new(BTreeSet::new());
    let workers = opts.threads.max(1).min(items.len().max(1));
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| {
                let mut local: BTreeSet<UnlabeledForm> = BTreeSet::new();
                loop {
                    let i = next.fetch_add(1, Ordering::Relaxed);
                    let Some((e, partition)) = items.get(i) else { break };
                    let n_half = 2 * e;
                    let sigma1 = pinned_sigma1(n_half);
                    let mut scratch = Scratch::new(n_half);
                    for_each_with_cycle_type(n_half, partition, &mut |map| {
                        if !passes_filters(map, t.boundary_cycles, &mut scratch) {
                            return;
                        }
                        let graph = RibbonGraph::from_permutations(
                            Perm::from_images(map.to_vec()),
                            sigma1.clone(),
                            None,
                        )
                        .expect("filtered candidates are valid");
                        debug_assert_eq!(graph.top_type(), t);
                        local.insert(graph.unlabeled_form());
                    });
                }
                forms.lock().unwrap().extend(local);
            });
        }
    });
    Ok(forms.into_inner().unwrap())
}

/// Complete duplicate-free list of the labeled isomorphism classes of type `t`.
pub fn enumerate_graphs(t: TopologicalType, opts: &EnumOptions) -> Result<GraphCatalog, EnumError> {
    let budget = opts.max_half_edges.unwrap_or(DEFAULT_HALF_EDGE_BUDGET);
    let n = t.boundary_cycles;
    let mut labeled: Vec<RibbonGraph> = Vec::new();
    for form in unlabeled_forms(t, opts, budget)? {
        let graph = RibbonGraph::from_permutations(
            Perm::from_images(form.sigma0.clone()),
            Perm::from_images(form.sigma1.clone()),
            None,
        )
        .expect("catalog forms are valid");

        // action of the unlabeled automorphisms on boundary cycles
        let mut cusp_perms: BTreeSet<Vec<usize>> = BTreeSet::new();
        for eta in &graph.automorphisms_unlabeled().elements {
            cusp_perms
                .insert((0..n).map(|c| graph.cusp_of(eta.apply(graph.cusps()[c][0]))).collect());
        }

        // labelings modulo that action; lexicographically least as orbit rep
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        for labeling in (0..n).permutations(n) {
            if seen.contains(&labeling) {
                continue;
            }
            for pi in &cusp_perms {
                let mut moved = vec![0; n];
                for c in 0..n {
                    moved[pi[c]] = labeling[c];
                }
                seen.insert(moved);
            }
            labeled.push(graph.with_labels(labeling).unwrap().canonical_graph());
        }
    }

    labeled.sort_by_key(|g| (g.edge_count(), g.canonical_form()));
    let mut classes = Vec::new();
    let mut by_edge_count: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut index = BTreeMap::new();
    for graph in labeled {
        let canonical = graph.canonical_form();
        let aut = graph.automorphisms();
        let i = classes.len();
        by_edge_count.entry(graph.edge_count()).or_default().push(i);
        index.insert(canonical.clone(), i);
        classes.push(CatalogClass { graph, canonical, aut });
    }
    Ok(GraphCatalog { top_type: t, classes, by_edge_count, index })
}

/// A collapse arrow: contracting the forest orbit representative in the
/// source class lands in the target class; `edge_map` sends each surviving
/// source edge to its edge in the target's canonical representative.
#[derive(Debug, Clone)]
pub struct CollapseArrow {
    pub source: usize,
    pub forest: BTreeSet<usize>,
    pub orbit_size: usize,
    pub target: usize,
    pub edge_map: BTreeMap<usize, usize>,
}

/// Catalog plus all collapse arrows, one per automorphism orbit of proper
/// nonempty forests.
#[derive(Debug, Clone)]
pub struct CollapsePoset {
    pub catalog: GraphCatalog,
    pub arrows: Vec<CollapseArrow>,
}

/// Collapses `forest` in the catalog class `source` and locates the result:
/// returns the target class and the edge correspondence onto its canonical
/// representative.
pub fn collapse_to_class(
    catalog: &GraphCatalog,
    source: usize,
    forest: &BTreeSet<usize>,
) -> (usize, BTreeMap<usize, usize>) {
    let graph = &catalog.classes[source].graph;
    let (collapsed, cmap) = graph.collapse_forest(forest).expect("arrow forests are forests");
    let (_, pi) = collapsed.canonicalize();
    let target_graph = collapsed.relabel_half_edges(&pi);
    let target = catalog.class_of(&target_graph).expect("catalog is collapse-closed");
    debug_assert_eq!(target_graph, catalog.classes[target].graph);
    let mut edge_map = BTreeMap::new();
    for e in 0..graph.edge_count() {
        if let Some(j) = cmap.edge[e] {
            let h = collapsed.edges()[j][0];
            edge_map.insert(e, target_graph.edge_of(pi.apply(h)));
        }
    }
    (target, edge_map)
}

/// Every proper nonempty forest of every class, one arrow per orbit of the
/// label-preserving automorphism edge action.
pub fn collapse_poset(t: TopologicalType, opts: &EnumOptions) -> Result<CollapsePoset, EnumError> {
    let catalog = enumerate_graphs(t, opts)?;
    let mut arrows = Vec::new();
    for (source, class) in catalog.classes.iter().enumerate() {
        let e = class.graph.edge_count();
        for forest in proper_forests(&class.graph) {
            let orbit: BTreeSet<BTreeSet<usize>> = class
                .aut
                .edge_elements
                .iter()
                .map(|a| forest.iter().map(|&f| a.apply(f)).collect())
                .collect();
            if orbit.iter().next().unwrap() != &forest {
                continue; // not the orbit representative
            }
            let (target, edge_map) = collapse_to_class(&catalog, source, &forest);
            assert_eq!(catalog.classes[target].graph.edge_count(), e - forest.len());
            arrows.push(CollapseArrow {
                source,
                forest,
                orbit_size: orbit.len(),
                target,
                edge_map,
            });
        }
    }
    Ok(CollapsePoset { catalog, arrows })
}

/// All nonempty proper edge subsets spanning forests, ascending.
pub fn proper_forests(graph: &RibbonGraph) -> Vec<BTreeSet<usize>> {
    let e = graph.edge_count();
    let mut out = Vec::new();
    for mask in 1..(1u64 << e) - 1 {
        let forest: BTreeSet<usize> = (0..e).filter(|&i| mask >> i & 1 == 1).collect();
        if graph.is_forest(&forest) {
            out.push(forest);
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn catalog(g: usize, n: usize) -> GraphCatalog {
        enumerate_graphs(TopologicalType::new(g, n), &EnumOptions::default()).unwrap()
    }

    #[test]
    fn edge_bound_values() {
        assert_eq!(edge_bounds(TopologicalType::new(0, 3)), (2, 3));
        assert_eq!(edge_bounds(TopologicalType::new(1, 1)), (2, 3));
        assert_eq!(edge_bounds(TopologicalType::new(0, 1)), (0, -3));
    }

    #[test]
    fn partitions_are_exact() {
        assert_eq!(partitions(12, 4, 12), vec![vec![3, 3, 3, 3]]);
        assert_eq!(partitions(10, 3, 10), vec![vec![4, 3, 3]]);
        assert_eq!(partitions(6, 1, 6), vec![vec![6]]);
        assert!(partitions(7, 1, 7).contains(&vec![7]));
        assert_eq!(partitions(8, 3, 8), Vec::<Vec<usize>>::new());
    }

    #[test]
    fn cycle_type_enumeration_counts() {
        // |{sigma: type (3,3) on 6 points}| = 6!/(3*3*2!) = 40
        let mut count = 0;
        for_each_with_cycle_type(6, &[3, 3], &mut |_| count += 1);
        assert_eq!(count, 40);
        // |{sigma: type (4) on 4 points}| = 3! = 6
        let mut count = 0;
        for_each_with_cycle_type(4, &[4], &mut |_| count += 1);
        assert_eq!(count, 6);
    }

    #[test]
    fn type_0_3_has_seven_labeled_classes() {
        let cat = catalog(0, 3);
        assert_eq!(cat.classes.len(), 7);
        // e = 2: the three labeled figure eights; e = 3: theta + three nooses
        assert_eq!(cat.by_edge_count[&2].len(), 3);
        assert_eq!(cat.by_edge_count[&3].len(), 4);
        for class in &cat.classes {
            assert_eq!(class.graph.top_type(), TopologicalType::new(0, 3));
            assert_eq!(class.aut.order(), 1);
        }
    }

    #[test]
    fn type_1_1_has_two_classes() {
        let cat = catalog(1, 1);
        assert_eq!(cat.classes.len(), 2);
        let orders: Vec<(usize, usize)> =
            cat.classes.iter().map(|c| (c.aut.order(), c.aut.edge_order())).collect();
        assert_eq!(orders, vec![(4, 2), (6, 3)]);
    }

    #[test]
    fn empty_type_yields_empty_catalog() {
        let cat = catalog(0, 1);
        assert!(cat.classes.is_empty());
        let cat = catalog(0, 2);
        assert!(cat.classes.is_empty());
    }

    #[test]
    fn budget_is_enforced() {
        let err = enumerate_graphs(TopologicalType::new(1, 3), &EnumOptions::default());
        assert!(matches!(err, Err(EnumError::ResourceLimit { needed: 18, budget: 12, .. })));
    }

    #[test]
    fn catalog_is_duplicate_free_and_thread_independent() {
        let cat = catalog(0, 3);
        for i in 0..cat.classes.len() {
            for j in i + 1..cat.classes.len() {
                assert!(cat.classes[i].graph.isomorphism(&cat.classes[j].graph).is_none());
            }
        }
        let par = enumerate_graphs(
            TopologicalType::new(0, 3),
            &EnumOptions { threads: 4, ..Default::default() },
        )
        .unwrap();
        let forms: Vec<_> = cat.classes.iter().map(|c| &c.canonical).collect();
        let par_forms: Vec<_> = par.classes.iter().map(|c| &c.canonical).collect();
        assert_eq!(forms, par_forms);
    }

    #[test]
    fn collapse_poset_0_3() {
        let poset = collapse_poset(TopologicalType::new(0, 3), &EnumOptions::default()).unwrap();
        // the theta class: trivial Aut, three singleton-forest arrows, each
        // landing on a labeled figure eight
        let theta_idx = poset
            .catalog
            .classes
            .iter()
            .position(|c| {
                c.graph.edge_count() == 3 && c.graph.vertices().len() == 2 && {
                    let cusp_lens: BTreeSet<usize> =
                        c.graph.cusps().iter().map(|c| c.len()).collect();
                    cusp_lens == BTreeSet::from([2])
                }
            })
            .unwrap();
        let theta_arrows: Vec<_> = poset.arrows.iter().filter(|a| a.source == theta_idx).collect();
        assert_eq!(theta_arrows.len(), 3);
        let targets: BTreeSet<usize> = theta_arrows.iter().map(|a| a.target).collect();
        assert_eq!(targets.len(), 3);
        for a in &theta_arrows {
            assert_eq!(poset.catalog.classes[a.target].graph.edge_count(), 2);
        }
        // figure eights have no non-loop edges: no outgoing arrows
        for (i, class) in poset.catalog.classes.iter().enumerate() {
            if class.graph.edge_count() == 2 {
                assert!(poset.arrows.iter().all(|a| a.source != i));
            }
        }
    }

    #[test]
    fn collapse_poset_1_1() {
        let poset = collapse_poset(TopologicalType::new(1, 1), &EnumOptions::default()).unwrap();
        // twisted theta's three edges form one orbit; one arrow to the
        // twisted figure eight
        assert_eq!(poset.arrows.len(), 1);
        let a = &poset.arrows[0];
        assert_eq!(a.orbit_size, 3);
        assert_eq!(poset.catalog.classes[a.source].graph.edge_count(), 3);
        assert_eq!(poset.catalog.classes[a.target].graph.edge_count(), 2);
    }

    #[test]
    fn collapse_arrows_compose() {
        // collapsing F then the image of F' equals collapsing their union
        for t in [TopologicalType::new(0, 3), TopologicalType::new(1, 1)] {
            let cat = enumerate_graphs(t, &EnumOptions::default()).unwrap();
            for (i, class) in cat.classes.iter().enumerate() {
                for forest in proper_forests(&class.graph) {
                    for sub in proper_forests(&class.graph) {
                        if !sub.is_subset(&forest) || sub == forest {
                            continue;
                        }
                        let (mid, map1) = collapse_to_class(&cat, i, &sub);
                        let rest: BTreeSet<usize> =
                            forest.difference(&sub).map(|&e| map1[&e]).collect();
                        let (two_step, _) = collapse_to_class(&cat, mid, &rest);
                        let (one_step, _) = collapse_to_class(&cat, i, &forest);
                        assert_eq!(two_step, one_step);
                    }
                }
            }
        }
    }
}
