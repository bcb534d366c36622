use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use ksupplier_dna::gen::{generate, GenParams};
use ksupplier_dna::model::{
    assembly_pools, build_library, descending_pairs, validate_instance, Instance,
    InstanceDescription, ShortestPaths, Vertex,
};
use ksupplier_dna::oracle::{oracle_solve, subset_value, ObjectiveKind};
use ksupplier_dna::pipeline::{
    decode_strand, phase1_generate, phase2_filter_valid, phase3_cardinality, phase4_tag_distance,
    Phase2Mode,
};
use ksupplier_dna::{Lab, Label, Molecule, Strand, Symbol, SymbolSeq, Tube};
use proptest::prelude::*;

fn symbol() -> impl Strategy<Value = Symbol> {
    prop_oneof![
        Just(Symbol::Hash),
        Just(Symbol::X),
        (0u8..3).prop_map(|d| Symbol::Label(Label::from_digit(d).unwrap())),
        (1u16..4).prop_map(Symbol::A),
        (1u16..4).prop_map(Symbol::B),
    ]
}

fn strands() -> impl Strategy<Value = Vec<(Vec<Symbol>, u64)>> {
    prop::collection::vec((prop::collection::vec(symbol(), 0..10), 1u64..4), 0..25)
}

fn tube(items: &[(Vec<Symbol>, u64)]) -> Tube {
    Tube::from_molecules(
        "P",
        items
            .iter()
            .map(|(s, c)| (Strand::sense(s.clone()).into(), *c)),
    )
}

/// Each symbol as its own `|`-delimited token so containment is plain
/// substring search.
fn tokens(symbols: &[Symbol]) -> String {
    let mut out = String::from("|");
    for s in symbols {
        let t = match s {
            Symbol::Hash => "#".to_string(),
            Symbol::X => "X".to_string(),
            Symbol::Label(l) => format!("L{}", l.digit()),
            Symbol::A(i) => format!("A{i}"),
            Symbol::B(i) => format!("B{i}"),
        };
        out.push_str(&t);
        out.push('|');
    }
    out
}

fn multiset(t: &Tube) -> BTreeMap<String, u64> {
    t.strands()
        .map(|(s, c)| (tokens(s.symbols.symbols()), c))
        .collect()
}

fn random_instance() -> impl Strategy<Value = InstanceDescription> {
    (2usize..=6, 0.0f64..=1.0, any::<u64>()).prop_map(|(n, density, seed)| {
        generate(
            &GenParams {
                density,
                ..GenParams::new(n)
            },
            seed,
        )
        .unwrap()
    })
}

proptest! {
    #[test]
    fn separation_conserves_and_is_sound(items in strands(), pattern in prop::collection::vec(symbol(), 1..3)) {
        let source = tube(&items);
        let total = source.size();
        let expected = multiset(&source);
        let mut lab = Lab::new();
        let (hit, miss) = lab.separation(source, &pattern, "T").unwrap();
        prop_assert_eq!(hit.size() + miss.size(), total);
        let needle = tokens(&pattern);
        for (text, c) in multiset(&hit) {
            prop_assert!(text.contains(&needle));
            prop_assert_eq!(Some(&c), expected.get(&text));
        }
        for (text, _) in multiset(&miss) {
            prop_assert!(!text.contains(&needle));
        }
        prop_assert_eq!(lab.steps(), 1);
    }

    #[test]
    fn selection_conserves_and_splits_by_length(items in strands(), symbols in 1usize..10) {
        let source = tube(&items);
        let total = source.size();
        let mut lab = Lab::new();
        let (hit, miss) = lab.selection(source, symbols * 10, "T").unwrap();
        prop_assert_eq!(hit.size() + miss.size(), total);
        prop_assert!(hit.strands().all(|(s, _)| s.symbols.len() == symbols));
        prop_assert!(miss.strands().all(|(s, _)| s.symbols.len() != symbols));
    }

    #[test]
    fn merge_adds_sizes(a in strands(), b in strands()) {
        let (ta, tb) = (tube(&a), tube(&b));
        let size = ta.size() + tb.size();
        let mut lab = Lab::new();
        let merged = lab.merge(ta, tb);
        prop_assert_eq!(merged.size(), size);
    }

    #[test]
    fn operations_are_deterministic(items in strands(), pattern in prop::collection::vec(symbol(), 1..3)) {
        let run = || {
            let mut lab = Lab::new();
            let (hit, miss) = lab.separation(tube(&items), &pattern, "T").unwrap();
            let hit = lab.append(hit, &[Symbol::X]).unwrap();
            lab.merge(hit, miss)
        };
        let (a, b) = (run(), run());
        prop_assert_eq!(a.iter().collect::<Vec<_>>(), b.iter().collect::<Vec<_>>());
    }

    #[test]
    fn generated_instances_validate(n in 2usize..=12, density in 0.0f64..=1.0, w in 1u32..20, seed in any::<u64>()) {
        let raw = generate(&GenParams { density, max_weight: w, ..GenParams::new(n) }, seed).unwrap();
        prop_assert!(validate_instance(&raw).is_ok());
        prop_assert!(raw.edges.len() <= n * (n + 1) / 2);
    }

    #[test]
    fn descending_pairs_is_a_sorted_permutation(raw in random_instance()) {
        let inst = validate_instance(&raw).unwrap();
        let sp = ShortestPaths::compute(inst.graph()).unwrap();
        let pairs = descending_pairs(&sp, &inst);
        let got: BTreeSet<(Vertex, Vertex)> = pairs.iter().map(|p| (p.client, p.facility)).collect();
        let want: BTreeSet<(Vertex, Vertex)> =
            inst.clients().iter().cartesian_product(inst.facilities()).map(|(&c, &f)| (c, f)).collect();
        prop_assert_eq!(pairs.len(), want.len());
        prop_assert_eq!(got, want);
        prop_assert!(pairs.windows(2).all(|w| w[0].distance >= w[1].distance));
        prop_assert!(pairs.iter().all(|p| p.distance == sp.get(p.client, p.facility)));
    }

    #[test]
    fn shortest_paths_match_simple_path_search(
        n in 2usize..=5,
        density in 0.0f64..=1.0,
        seed in any::<u64>(),
    ) {
        let raw = generate(&GenParams { density, ..GenParams::new(n) }, seed).unwrap();
        let inst = validate_instance(&raw).unwrap();
        let sp = ShortestPaths::compute(inst.graph()).unwrap();
        let mut w = vec![vec![None; n + 1]; n + 1];
        for &(u, v, x) in &raw.edges {
            w[u as usize][v as usize] = Some(x as u64);
            w[v as usize][u as usize] = Some(x as u64);
        }
        for s in 1..=n {
            for t in 1..=n {
                prop_assert_eq!(sp.get(s as Vertex, t as Vertex), simple_path_min(&w, s, t));
            }
        }
    }

    #[test]
    fn phase4_tags_longest_client_facility_distance(raw in random_instance()) {
        let inst = validate_instance(&raw).unwrap();
        let sp = ShortestPaths::compute(inst.graph()).unwrap();
        let lib = build_library(&inst, &sp);
        let (n, k) = (inst.n(), inst.k());
        let mut lab = Lab::new();
        let p = phase1_generate(&mut lab, &lib, n).unwrap();
        let p = phase2_filter_valid(&mut lab, p, &inst, Phase2Mode::Corrected).unwrap();
        let p = phase3_cardinality(&mut lab, p, &inst).unwrap();
        let p3 = p.size();
        let p = phase4_tag_distance(&mut lab, p, &descending_pairs(&sp, &inst), &lib).unwrap();
        prop_assert_eq!(p.size(), p3);
        for s in p.sense_strands() {
            let a = decode_strand(s, n, k).unwrap();
            let open: Vec<Vertex> = a.open.iter().copied().collect();
            prop_assert_eq!(a.tag_units as u64, subset_value(&inst, &sp, &open, ObjectiveKind::PaperMaxmax));
            let max = inst.clients().iter().cartesian_product(&open).map(|(&c, &f)| sp.get(c, f)).max().unwrap();
            prop_assert_eq!(a.tag_units as u64, max);
        }
    }

    #[test]
    fn maxmin_never_exceeds_maxmax(raw in random_instance()) {
        let inst = validate_instance(&raw).unwrap();
        let sp = ShortestPaths::compute(inst.graph()).unwrap();
        for subset in inst.facilities().iter().copied().combinations(inst.k()) {
            prop_assert!(
                subset_value(&inst, &sp, &subset, ObjectiveKind::KsupplierMaxmin)
                    <= subset_value(&inst, &sp, &subset, ObjectiveKind::PaperMaxmax)
            );
        }
        let lo = oracle_solve(&inst, &sp, ObjectiveKind::KsupplierMaxmin).unwrap();
        let hi = oracle_solve(&inst, &sp, ObjectiveKind::PaperMaxmax).unwrap();
        prop_assert!(lo.value <= hi.value);
    }

    #[test]
    fn oracle_is_permutation_equivariant(
        (raw, perm) in random_instance().prop_flat_map(|raw| {
            let ids: Vec<i64> = (1..=raw.n).collect();
            (Just(raw), Just(ids).prop_shuffle())
        })
    ) {
        let map = |v: i64| perm[v as usize - 1];
        let relabeled = InstanceDescription {
            n: raw.n,
            edges: raw.edges.iter().map(|&(u, v, w)| (map(u), map(v), w)).collect(),
            clients: raw.clients.iter().map(|&v| map(v)).collect(),
            facilities: raw.facilities.iter().map(|&v| map(v)).collect(),
            k: raw.k,
        };
        let solve = |d: &InstanceDescription, kind| {
            let inst = validate_instance(d).unwrap();
            let sp = ShortestPaths::compute(inst.graph()).unwrap();
            oracle_solve(&inst, &sp, kind).unwrap()
        };
        for kind in [ObjectiveKind::KsupplierMaxmin, ObjectiveKind::PaperMaxmax] {
            let a = solve(&raw, kind);
            let b = solve(&relabeled, kind);
            prop_assert_eq!(a.value, b.value);
            let mapped: BTreeSet<Vec<Vertex>> = a
                .optimal_subsets
                .iter()
                .map(|s| s.iter().map(|&v| map(v as i64) as Vertex).sorted().collect())
                .collect();
            prop_assert_eq!(mapped, b.optimal_subsets.into_iter().collect::<BTreeSet<_>>());
        }
    }
}

fn simple_path_min(w: &[Vec<Option<u64>>], s: usize, t: usize) -> u64 {
    fn dfs(
        w: &[Vec<Option<u64>>],
        at: usize,
        t: usize,
        seen: &mut Vec<bool>,
        acc: u64,
        best: &mut u64,
    ) {
        if at == t {
            *best = (*best).min(acc);
            return;
        }
        for next in 1..w.len() {
            if let Some(x) = w[at][next] {
                if !seen[next] {
                    seen[next] = true;
                    dfs(w, next, t, seen, acc + x, best);
                    seen[next] = false;
                }
            }
        }
    }
    let mut seen = vec![false; w.len()];
    seen[s] = true;
    let mut best = u64::MAX;
    dfs(w, s, t, &mut seen, 0, &mut best);
    best
}

/// `#A[1]dB[1]...A[n]dB[n]#` for every digit string of length `n`.
fn enumerated_strands(n: usize) -> BTreeSet<String> {
    (0..n)
        .map(|_| 0..3)
        .multi_cartesian_product()
        .map(|digits| {
            let body: String = digits
                .iter()
                .enumerate()
                .map(|(i, d)| format!("A[{}]{d}B[{}]", i + 1, i + 1))
                .collect();
            format!("#{body}#")
        })
        .collect()
}

#[test]
fn annealing_matches_label_enumeration() {
    for n in 1..=6u16 {
        let (frags, splints) = assembly_pools(n);
        let t = Tube::from_strands(
            "P",
            frags
                .into_iter()
                .map(Strand::sense)
                .chain(splints.into_iter().map(Strand::antisense)),
        );
        let mut lab = Lab::new();
        let out = lab.annealing(t).unwrap();
        let products: BTreeSet<String> = out
            .iter()
            .filter_map(|(m, _)| match m {
                Molecule::Double(d) => Some(d.product.to_string()),
                Molecule::Single(_) => None,
            })
            .collect();
        assert_eq!(products, enumerated_strands(n as usize), "n = {n}");
        assert!(out.iter().all(|(_, c)| c == 1));
    }
}

#[test]
fn phase1_output_contains_a_ten_vertex_labeling() {
    let edges: Vec<_> = (1..10).map(|i| (i, i + 1, 1.0)).collect();
    let raw = InstanceDescription {
        n: 10,
        edges,
        clients: vec![2, 5],
        facilities: vec![1, 3, 6],
        k: 3,
    };
    let inst = validate_instance(&raw).unwrap();
    let sp = ShortestPaths::compute(inst.graph()).unwrap();
    let lib = build_library(&inst, &sp);
    let mut lab = Lab::new();
    let p = phase1_generate(&mut lab, &lib, 10).unwrap();
    assert_eq!(p.size(), 3u64.pow(10));
    assert_eq!(lab.steps(), 7);
    let digits = [1, 0, 1, 2, 0, 1, 2, 2, 2, 2];
    let body: String = digits
        .iter()
        .enumerate()
        .map(|(i, d)| format!("A[{}]{d}B[{}]", i + 1, i + 1))
        .collect();
    let wanted: SymbolSeq = format!("#{body}#").parse().unwrap();
    assert!(p.contains_strand(&Strand::sense(wanted)));
}

fn instance(n: i64, edges: &[(i64, i64, f64)], c: &[i64], f: &[i64], k: i64) -> Instance {
    validate_instance(&InstanceDescription {
        n,
        edges: edges.to_vec(),
        clients: c.to_vec(),
        facilities: f.to_vec(),
        k,
    })
    .unwrap()
}

#[test]
fn phase2_removes_subset_with_a_non_facility_open() {
    let edges = [
        (1, 2, 2.0),
        (2, 3, 1.0),
        (3, 4, 4.0),
        (4, 5, 3.0),
        (5, 6, 2.0),
        (6, 7, 5.0),
    ];
    let inst = instance(7, &edges, &[2, 5], &[1, 3, 4], 3);
    let sp = ShortestPaths::compute(inst.graph()).unwrap();
    let lib = build_library(&inst, &sp);
    let mut lab = Lab::new();
    let p = phase1_generate(&mut lab, &lib, 7).unwrap();
    let open_set = |open: &[u8]| {
        let body: String = (1..=7u8)
            .map(|v| {
                let d = if [2, 5].contains(&v) {
                    0
                } else if open.contains(&v) {
                    1
                } else {
                    2
                };
                format!("A[{v}]{d}B[{v}]")
            })
            .collect();
        Strand::sense(format!("#{body}#").parse::<SymbolSeq>().unwrap())
    };
    assert!(p.contains_strand(&open_set(&[1, 3, 4, 7])));
    let p = phase2_filter_valid(&mut lab, p, &inst, Phase2Mode::Corrected).unwrap();
    assert!(!p.contains_strand(&open_set(&[1, 3, 4, 7])));
    assert!(p.contains_strand(&open_set(&[1, 3, 4])));
    assert_eq!(p.size(), 8);
}

#[test]
fn unit_path_oracle() {
    let edges: Vec<_> = (1..5).map(|i| (i, i + 1, 1.0)).collect();
    let inst = instance(5, &edges, &[1], &[3, 4, 5], 1);
    let sp = ShortestPaths::compute(inst.graph()).unwrap();
    let r = oracle_solve(&inst, &sp, ObjectiveKind::KsupplierMaxmin).unwrap();
    assert_eq!((r.value, r.optimal_subsets), (2, vec![vec![3]]));
}
