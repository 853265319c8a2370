//! Whole-catalog property checks: canonicalization against brute force,
//! collapse confluence, permutation identities, metric invariants, building
//! family symmetry, serialization round-trips, and derived-value oracles.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Mutex;

use num_traits::One;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ribbon_moduli::enumeration::{enumerate_graphs, EnumOptions, GraphCatalog};
use ribbon_moduli::json::{graph_from_str, graph_to_json};
use ribbon_moduli::moduli::{assemble_complex, building_family};
use ribbon_moduli::perm::Perm;
use ribbon_moduli::real::{canonical_pairing, real_structures, BorderedType};
use ribbon_moduli::ribbon::{MetricPoint, RibbonGraph, TopologicalType};
use ribbon_moduli::{rat, Rat};

fn catalog(genus: usize, cycles: usize) -> &'static GraphCatalog {
    static STORE: Mutex<BTreeMap<(usize, usize), &'static GraphCatalog>> =
        Mutex::new(BTreeMap::new());
    let mut store = STORE.lock().unwrap();
    store.entry((genus, cycles)).or_insert_with(|| {
        let t = TopologicalType::new(genus, cycles);
        Box::leak(Box::new(enumerate_graphs(t, &EnumOptions::default()).unwrap()))
    })
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(k: usize, items: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == items.len() {
            out.push(items.clone());
            return;
        }
        for i in k..items.len() {
            items.swap(k, i);
            rec(k + 1, items, out);
            items.swap(k, i);
        }
    }
    let mut out = Vec::new();
    rec(0, &mut (0..n).collect(), &mut out);
    out
}

/// Label-preserving isomorphism condition for an explicit bijection.
fn is_isomorphism(a: &RibbonGraph, b: &RibbonGraph, eta: &Perm) -> bool {
    if eta.compose(a.sigma0()) != b.sigma0().compose(eta)
        || eta.compose(a.sigma1()) != b.sigma1().compose(eta)
    {
        return false;
    }
    (0..a.cusps().len()).all(|c| a.labels()[c] == b.labels()[b.cusp_of(eta.apply(a.cusps()[c][0]))])
}

fn brute_force_isomorphic(a: &RibbonGraph, b: &RibbonGraph) -> bool {
    a.half_edge_count() == b.half_edge_count()
        && permutations(a.half_edge_count())
            .into_iter()
            .any(|images| is_isomorphism(a, b, &Perm::from_images(images)))
}

fn random_relabeling(g: &RibbonGraph, rng: &mut ChaCha8Rng) -> RibbonGraph {
    let mut images: Vec<usize> = (0..g.half_edge_count()).collect();
    images.shuffle(rng);
    g.relabel_half_edges(&Perm::from_images(images))
}

/// A positive random metric with denominator-free total 1.
fn random_metric(edges: usize, rng: &mut ChaCha8Rng) -> MetricPoint {
    let weights: Vec<i64> = (0..edges).map(|_| rng.gen_range(1..40)).collect();
    let total: i64 = weights.iter().sum();
    MetricPoint::new(weights.into_iter().map(|w| rat(w, total)).collect()).unwrap()
}

#[test]
fn catalog_counts_by_edge_number() {
    let count = |g, n| -> BTreeMap<usize, usize> {
        catalog(g, n).classes.iter().fold(BTreeMap::new(), |mut m, c| {
            *m.entry(c.graph.edge_count()).or_default() += 1;
            m
        })
    };
    assert_eq!(count(0, 3), BTreeMap::from([(2, 3), (3, 4)]));
    assert_eq!(count(1, 1), BTreeMap::from([(2, 1), (3, 1)]));
    assert_eq!(count(0, 4), BTreeMap::from([(3, 20), (4, 99), (5, 144), (6, 64)]));
    assert_eq!(count(1, 2), BTreeMap::from([(3, 5), (4, 14), (5, 15), (6, 9)]));
}

#[test]
fn canonical_form_is_relabeling_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for &(g, n) in &[(0, 3), (1, 1), (1, 2)] {
        for class in &catalog(g, n).classes {
            let reference = class.graph.canonical_form();
            for _ in 0..10 {
                assert_eq!(random_relabeling(&class.graph, &mut rng).canonical_form(), reference);
            }
        }
    }
}

#[test]
fn canonicalization_agrees_with_brute_force_on_small_graphs() {
    let small: Vec<&RibbonGraph> = catalog(0, 3)
        .classes
        .iter()
        .chain(&catalog(1, 1).classes)
        .map(|c| &c.graph)
        .filter(|g| g.edge_count() <= 3)
        .collect();
    for a in &small {
        for b in &small {
            let brute = brute_force_isomorphic(a, b);
            assert_eq!(brute, a.canonical_form() == b.canonical_form());
            match a.isomorphism(b) {
                Some(eta) => {
                    assert!(brute);
                    assert!(is_isomorphism(a, b, &eta));
                }
                None => assert!(!brute),
            }
        }
    }
    // positive instances beyond the identity
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for a in &small {
        let b = random_relabeling(a, &mut rng);
        assert!(brute_force_isomorphic(a, &b));
        assert!(is_isomorphism(a, &b, &a.isomorphism(&b).unwrap()));
    }
}

#[test]
fn automorphism_groups_are_closed_and_valid() {
    for &(g, n) in &[(0, 3), (1, 1)] {
        for class in &catalog(g, n).classes {
            let graph = &class.graph;
            let elements: BTreeSet<&Perm> = class.aut.elements.iter().collect();
            for eta in &class.aut.elements {
                assert!(is_isomorphism(graph, graph, eta));
                for nu in &class.aut.elements {
                    assert!(elements.contains(&eta.compose(nu)));
                }
            }
        }
    }
}

#[test]
fn two_edge_forest_collapses_are_order_independent() {
    for &(g, n) in &[(0, 3), (1, 1), (0, 4), (1, 2)] {
        for class in &catalog(g, n).classes {
            let graph = &class.graph;
            let e = graph.edge_count();
            if e <= 2 || e > 4 {
                continue;
            }
            for a in 0..e {
                for b in a + 1..e {
                    let forest = BTreeSet::from([a, b]);
                    if !graph.is_forest(&forest) {
                        continue;
                    }
                    let (ab, map_a) = graph.contract(a).unwrap();
                    let (ab, _) = ab.contract(map_a.edge[b].unwrap()).unwrap();
                    let (ba, map_b) = graph.contract(b).unwrap();
                    let (ba, _) = ba.contract(map_b.edge[a].unwrap()).unwrap();
                    let (direct, _) = graph.collapse_forest(&forest).unwrap();
                    assert_eq!(ab.canonical_form(), ba.canonical_form());
                    assert_eq!(ab.canonical_form(), direct.canonical_form());
                }
            }
        }
    }
}

#[test]
fn sigma0_composed_with_sigma_inf_is_sigma1() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for &(g, n) in &[(0, 3), (1, 1), (0, 4), (1, 2)] {
        for class in &catalog(g, n).classes {
            for graph in [class.graph.clone(), random_relabeling(&class.graph, &mut rng)] {
                assert_eq!(&graph.sigma0().compose(graph.sigma_inf()), graph.sigma1());
            }
        }
    }
}

#[test]
fn perimeters_sum_to_one_and_are_positive() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for &(g, n) in &[(0, 3), (1, 1), (1, 2)] {
        for class in &catalog(g, n).classes {
            let graph = &class.graph;
            for _ in 0..5 {
                let m = random_metric(graph.edge_count(), &mut rng);
                let p = graph.perimeter_map(&m);
                assert_eq!(p.len(), n);
                assert!(p.iter().all(|x| x > &Rat::from_integer(0.into())));
                assert!(p.iter().fold(Rat::from_integer(0.into()), |s, x| s + x).is_one());
            }
        }
    }
}

#[test]
fn building_family_is_automorphism_invariant() {
    let as_set =
        |sets: &[BTreeSet<usize>]| -> BTreeSet<BTreeSet<usize>> { sets.iter().cloned().collect() };
    for &(g, n) in &[(0, 3), (1, 1), (1, 2)] {
        for class in &catalog(g, n).classes {
            let family = building_family(&class.graph);
            let non_forests = as_set(&family.non_forests);
            let cuts = as_set(&family.cuts);
            for pi in &class.aut.edge_elements {
                let map = |sets: &BTreeSet<BTreeSet<usize>>| -> BTreeSet<BTreeSet<usize>> {
                    sets.iter().map(|s| s.iter().map(|&e| pi.apply(e)).collect()).collect()
                };
                assert_eq!(map(&non_forests), non_forests);
                assert_eq!(map(&cuts), cuts);
            }
        }
    }
}

#[test]
fn json_round_trip_preserves_catalog_classes() {
    for &(g, n) in &[(0, 3), (1, 1), (1, 2)] {
        for class in &catalog(g, n).classes {
            let text = serde_json::to_string(&graph_to_json(&class.graph)).unwrap();
            let back = graph_from_str(&text).unwrap();
            assert_eq!(back.canonical_form(), class.graph.canonical_form());
            assert_eq!(back.labels(), class.graph.labels());
            // a second pass serializes to the same bytes
            assert_eq!(serde_json::to_string(&graph_to_json(&back)).unwrap(), text);
        }
    }
}

#[test]
fn orbifold_euler_matches_catalog_sum_and_known_values() {
    for (t, expected) in [
        (TopologicalType::new(0, 3), rat(1, 1)),
        (TopologicalType::new(1, 1), rat(-1, 12)),
        (TopologicalType::new(0, 4), rat(1, 1)),
        (TopologicalType::new(1, 2), rat(-1, 12)),
    ] {
        let complex = assemble_complex(t, false, None, &EnumOptions::default()).unwrap();
        let stats = complex.stats();
        assert_eq!(stats.orbifold_euler, expected);
        // signed sum of reciprocal automorphism orders, straight off the catalog
        let direct =
            catalog(t.genus, t.boundary_cycles).classes.iter().fold(rat(0, 1), |acc, class| {
                let sign = if class.graph.edge_count() % 2 == 1 { 1 } else { -1 };
                acc + rat(sign, class.aut.order() as i64)
            });
        assert_eq!(direct, expected);
    }
}

#[test]
fn conjugate_labels_carry_equal_perimeters_on_fixed_loci() {
    for (bordered, expect_any) in [
        (
            BorderedType {
                genus: 0,
                boundary_components: 1,
                interior_points: 1,
                boundary_points: 1,
            },
            true,
        ),
        (
            BorderedType {
                genus: 0,
                boundary_components: 2,
                interior_points: 0,
                boundary_points: 1,
            },
            true,
        ),
        (
            BorderedType {
                genus: 0,
                boundary_components: 1,
                interior_points: 0,
                boundary_points: 3,
            },
            true,
        ),
    ] {
        let double = bordered.double_type();
        let pairing = canonical_pairing(bordered.interior_points, bordered.boundary_points);
        let mut found = false;
        for class in &catalog(double.genus, double.boundary_cycles).classes {
            for rs in real_structures(&class.graph, &pairing) {
                found = true;
                // a point of the fixed locus: constant on each edge orbit,
                // distinct across orbits
                let weight: i64 = rs
                    .edge_orbits
                    .iter()
                    .enumerate()
                    .map(|(j, o)| (j as i64 + 1) * o.len() as i64)
                    .sum();
                let mut coords = vec![rat(0, 1); class.graph.edge_count()];
                for (j, orbit) in rs.edge_orbits.iter().enumerate() {
                    for &e in orbit {
                        coords[e] = rat(j as i64 + 1, weight);
                    }
                }
                let p = class.graph.perimeter_map(&MetricPoint::new(coords).unwrap());
                for (l, x) in p.iter().enumerate() {
                    assert_eq!(x, &p[rs.label_action.apply(l)]);
                }
            }
        }
        assert_eq!(found, expect_any);
    }
}
