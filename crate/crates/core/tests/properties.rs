//! Property suites: randomized invariants checked against independent
//! oracles (rotation sort, exhaustive arrangement enumeration, block-model
//! reconstruction).

use proptest::prelude::*;

use runmin::alphabet::{AlphabetOrdering, Symbol, Text};
use runmin::bwt::{build_bwt, count_runs, invert_bwt};
use runmin::cao::{
    build_blocks, greedy_tuple_order, measured_runs, reconstruct_pi, separation_family, solve_cao,
    Label, SpecialOrdering, StringCollection,
};
use runmin::search::{exact_search, local_search, ratio_report, RatioMode};

/// Independent oracle: sort the actual circular shifts of text + sentinel.
fn rotation_sort_bwt(text: &Text, ordering: &AlphabetOrdering) -> Vec<Symbol> {
    let mut aug: Vec<Symbol> = text.symbols().to_vec();
    aug.push(Symbol::Sentinel);
    let n = aug.len();
    let key = |start: usize| -> Vec<u32> {
        (0..n)
            .map(|k| ordering.rank(aug[(start + k) % n]).unwrap())
            .collect()
    };
    let mut rotations: Vec<usize> = (0..n).collect();
    rotations.sort_by_key(|&s| key(s));
    rotations.iter().map(|&s| aug[(s + n - 1) % n]).collect()
}

/// Random text over a small regular alphabet, optionally with terminators
/// spliced in.
fn text_strategy() -> impl Strategy<Value = Text> {
    (
        proptest::collection::vec(0u32..6, 0..40),
        proptest::collection::vec(any::<prop::sample::Index>(), 0..3),
    )
        .prop_map(|(codes, term_spots)| {
            let mut symbols: Vec<Symbol> = codes.into_iter().map(Symbol::Regular).collect();
            for (i, spot) in term_spots.into_iter().enumerate() {
                let at = if symbols.is_empty() {
                    0
                } else {
                    spot.index(symbols.len() + 1)
                };
                symbols.insert(at, Symbol::Terminator(i as u32));
            }
            Text::new(symbols).unwrap()
        })
}

proptest! {
    #[test]
    fn bwt_matches_rotation_sort_oracle(text in text_strategy()) {
        let ordering = AlphabetOrdering::natural(text.alphabet().iter().copied());
        let out = build_bwt(&text, &ordering).unwrap();
        let oracle = rotation_sort_bwt(&text, &ordering);
        prop_assert_eq!(out.bwt(), oracle.as_slice());
        prop_assert_eq!(out.runs(), count_runs(out.bwt()));
    }

    #[test]
    fn invert_round_trips(text in text_strategy()) {
        let ordering = AlphabetOrdering::natural(text.alphabet().iter().copied());
        let out = build_bwt(&text, &ordering).unwrap();
        prop_assert_eq!(invert_bwt(&out, &ordering).unwrap(), text);
    }

    #[test]
    fn lf_is_a_noncrossing_permutation(text in text_strategy()) {
        let ordering = AlphabetOrdering::natural(text.alphabet().iter().copied());
        let out = build_bwt(&text, &ordering).unwrap();
        let mut seen = vec![false; out.len()];
        for &t in out.lf() {
            prop_assert!(!seen[t]);
            seen[t] = true;
        }
        for i in 0..out.len() {
            for j in i + 1..out.len() {
                if out.bwt()[i] == out.bwt()[j] {
                    prop_assert!(out.lf()[i] < out.lf()[j]);
                }
            }
        }
    }

    #[test]
    fn relabeling_to_ranks_commutes_with_the_transform(
        codes in proptest::collection::vec(0u32..6, 1..30),
        seed in any::<u64>(),
    ) {
        // A random admissible ordering of the text's alphabet.
        let text = Text::new(codes.iter().copied().map(Symbol::Regular).collect()).unwrap();
        let mut alphabet: Vec<Symbol> = text.alphabet().iter().copied().collect();
        let mut state = seed | 1;
        for i in (1..alphabet.len()).rev() {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            alphabet.swap(i, (state % (i as u64 + 1)) as usize);
        }
        let ordering = AlphabetOrdering::from_symbols(alphabet).unwrap();

        // Remap symbols to their ranks and transform under the natural order.
        let remapped = Text::new(
            text.symbols()
                .iter()
                .map(|&s| Symbol::Regular(ordering.rank(s).unwrap()))
                .collect(),
        )
        .unwrap();
        let natural = AlphabetOrdering::natural(remapped.alphabet().iter().copied());
        let direct = build_bwt(&text, &ordering).unwrap();
        let via_ranks = build_bwt(&remapped, &natural).unwrap();
        let mapped_back: Vec<Symbol> = via_ranks
            .bwt()
            .iter()
            .map(|&s| match s {
                Symbol::Sentinel => Symbol::Sentinel,
                Symbol::Regular(r) => ordering.symbols()[r as usize],
                Symbol::Terminator(_) => unreachable!("remapped text has no terminators"),
            })
            .collect();
        prop_assert_eq!(direct.bwt(), mapped_back.as_slice());
        prop_assert_eq!(direct.runs(), via_ranks.runs());
    }

    #[test]
    fn exact_search_is_not_beaten_by_random_orderings(
        codes in proptest::collection::vec(0u32..4, 1..20),
        seed in any::<u64>(),
    ) {
        let text = Text::new(codes.into_iter().map(Symbol::Regular).collect()).unwrap();
        let best = exact_search(&text).unwrap();
        let mut alphabet: Vec<Symbol> = text.alphabet().iter().copied().collect();
        let mut state = seed | 1;
        for i in (1..alphabet.len()).rev() {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            alphabet.swap(i, (state % (i as u64 + 1)) as usize);
        }
        let random = AlphabetOrdering::from_symbols(alphabet).unwrap();
        prop_assert!(best.runs <= build_bwt(&text, &random).unwrap().runs());
    }

    #[test]
    fn local_search_never_worsens_the_seed(
        codes in proptest::collection::vec(0u32..5, 1..25),
        budget in 0u64..60,
        seed in any::<u64>(),
    ) {
        let text = Text::new(codes.into_iter().map(Symbol::Regular).collect()).unwrap();
        let natural = AlphabetOrdering::natural(text.alphabet().iter().copied());
        let seed_runs = build_bwt(&text, &natural).unwrap().runs();
        let result = local_search(&text, &natural, budget, seed).unwrap();
        prop_assert!(result.runs <= seed_runs);
    }
}

/// Expected BWT of a collection under an arbitrary terminator order,
/// derived purely from the block model: row 0 carries the final terminator,
/// then every block lists its member labels with members sorted by the
/// terminator order, with string 0's cyclic label replaced by the sentinel.
fn block_model_bwt(c: &StringCollection, pi: &SpecialOrdering) -> Vec<Symbol> {
    let d = c.d();
    let blocks = build_blocks(c);
    let mut rank = vec![0usize; d];
    for (r, &s) in pi.pi.iter().enumerate() {
        rank[s as usize] = r;
    }
    let mut expected = vec![Symbol::Terminator(d as u32 - 1)];
    for i in 0..blocks.len() {
        let mut members: Vec<(usize, Label)> = blocks
            .block(i)
            .members()
            .map(|(s, l)| (rank[s as usize], l))
            .collect();
        members.sort_by_key(|&(r, _)| r);
        for (_, label) in members {
            expected.push(match label {
                Label::Terminator(t) if t as usize == d - 1 => Symbol::Sentinel,
                Label::Terminator(t) => Symbol::Terminator(t),
                Label::Regular(code) => Symbol::Regular(code),
            });
        }
    }
    expected
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn collection_bwt_rows_follow_the_block_model(
        strings in proptest::collection::vec(proptest::collection::vec(0u32..3, 1..6), 1..6),
        seed in any::<u64>(),
    ) {
        let c = StringCollection::new(strings).unwrap();
        let d = c.d();
        let mut pi: Vec<u32> = (0..d as u32).collect();
        let mut state = seed | 1;
        for i in (1..pi.len()).rev() {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            pi.swap(i, (state % (i as u64 + 1)) as usize);
        }
        let pi = SpecialOrdering { pi };
        let ordering = pi.to_alphabet_ordering(&c);
        let out = build_bwt(&c.to_text(), &ordering).unwrap();
        let model = block_model_bwt(&c, &pi);
        prop_assert_eq!(out.bwt(), model.as_slice());
    }

    #[test]
    fn arrangement_is_realized_exactly(
        strings in proptest::collection::vec(proptest::collection::vec(0u32..3, 1..6), 1..6),
    ) {
        let c = StringCollection::new(strings).unwrap();
        let blocks = build_blocks(&c);
        let arrangement = greedy_tuple_order(&blocks);
        let pi = reconstruct_pi(&blocks, &arrangement);
        prop_assert_eq!(arrangement.runs(), measured_runs(&c, &pi));

        // Under the reconstructed order, every block's rows group by label
        // in exactly the arranged order, multiplicities expanded.
        let model = block_model_bwt(&c, &pi);
        let mut at = 1usize; // skip the sentinel-context row
        for b in 0..blocks.len() {
            let block = blocks.block(b);
            let size = block.members().count();
            let rows = &model[at..at + size];
            at += size;
            let mut expected_rows = Vec::with_capacity(size);
            for label in arrangement.tuple(b) {
                let mult = block.members().filter(|&(_, l)| l == label).count();
                let symbol = match label {
                    Label::Terminator(t) if t as usize == c.d() - 1 => Symbol::Sentinel,
                    Label::Terminator(t) => Symbol::Terminator(t),
                    Label::Regular(code) => Symbol::Regular(code),
                };
                expected_rows.extend(std::iter::repeat_n(symbol, mult));
            }
            prop_assert_eq!(rows, expected_rows.as_slice());
        }
    }
}

#[test]
fn ratio_grows_across_the_separation_family() {
    let small = separation_family(2, 2);
    let small_report = ratio_report(&small.to_text(), RatioMode::Exhaustive).unwrap();
    assert_eq!(small_report.explored, 2 * 24);

    let large = separation_family(2, 3);
    let large_report =
        ratio_report(&large.to_text(), RatioMode::Sampled { k: 3000, seed: 11 }).unwrap();
    assert!(
        large_report.ratio > small_report.ratio,
        "expected growth: {} vs {}",
        large_report.ratio,
        small_report.ratio
    );
}

/// Exhaustive per-vertex arrangement oracle for the induced BWT: try every
/// order of each vertex's distinct labels (duplicates stay grouped) and
/// count runs of the concatenation.
fn exhaustive_wg_runs(per_vertex: &[(Vec<u32>, Vec<usize>)]) -> usize {
    fn go(per_vertex: &[(Vec<u32>, Vec<usize>)], idx: usize, prev: Option<u32>) -> usize {
        if idx == per_vertex.len() {
            return 0;
        }
        let (labels, counts) = &per_vertex[idx];
        let mut perm: Vec<usize> = (0..labels.len()).collect();
        let mut best = usize::MAX;
        loop {
            let mut runs = 0usize;
            let mut last = prev;
            for &j in &perm {
                if last != Some(labels[j]) {
                    runs += counts[j].min(1);
                    last = Some(labels[j]);
                }
            }
            best = best.min(runs + go(per_vertex, idx + 1, last));
            if !runmin::perm::next_permutation(&mut perm) {
                break;
            }
        }
        best
    }
    go(per_vertex, 0, None)
}

#[test]
fn wg_bwt_greedy_matches_exhaustive_arrangements() {
    use runmin::wheeler::{proper_order, wg_bwt, WheelerGraph};

    let mut state = 0x77aa_u64;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    for _ in 0..150 {
        // Random forest: every new vertex hangs off an earlier one with a
        // random label (distinct per parent), keeping multi-label slots low.
        let n = (next() % 8 + 2) as usize;
        let mut edges: Vec<(u32, u32, u32)> = Vec::new();
        for v in 1..n as u32 {
            if next() % 5 == 0 {
                continue; // extra root
            }
            let parent = (next() % v as u64) as u32;
            let label = (next() % 3) as u32;
            if edges.iter().any(|&(u, _, k)| u == parent && k == label)
                && edges
                    .iter()
                    .any(|&(u, t, k)| u == parent && t == v && k == label)
            {
                continue;
            }
            edges.push((parent, v, label));
        }
        // Sprinkle extra parallel edges to fresh leaves for multi-label
        // vertices.
        let base = n as u32;
        let mut fresh = 0u32;
        let mut extra = Vec::new();
        for &(u, _, _) in edges.iter() {
            if next() % 3 == 0 && fresh < 4 {
                let label = (next() % 3) as u32;
                extra.push((u, base + fresh, label));
                fresh += 1;
            }
        }
        edges.extend(extra);
        let Ok(g) = WheelerGraph::new(n + fresh as usize, edges) else {
            continue;
        };
        let multi_slots: usize = {
            let mut per: std::collections::HashMap<u32, std::collections::BTreeSet<u32>> =
                Default::default();
            for &(u, _, k) in g.edges() {
                per.entry(u).or_default().insert(k);
            }
            per.values().map(|s| s.len()).filter(|&c| c >= 2).sum()
        };
        if multi_slots > 10 {
            continue;
        }
        let Ok(phi) = proper_order(&g, &g.sources()) else {
            continue;
        };
        let Ok(bwt) = wg_bwt(&g, &phi) else { continue };

        let order = phi.vertices_in_order();
        let mut per_vertex: Vec<(Vec<u32>, Vec<usize>)> = Vec::new();
        for &v in &order {
            let mut labels: Vec<u32> = g
                .edges()
                .iter()
                .filter(|&&(u, _, _)| u == v)
                .map(|&(_, _, k)| k)
                .collect();
            if labels.is_empty() {
                continue;
            }
            labels.sort_unstable();
            let mut distinct = Vec::new();
            let mut counts = Vec::new();
            for &k in &labels {
                if distinct.last() == Some(&k) {
                    *counts.last_mut().unwrap() += 1;
                } else {
                    distinct.push(k);
                    counts.push(1);
                }
            }
            per_vertex.push((distinct, counts));
        }
        assert_eq!(
            bwt.runs,
            exhaustive_wg_runs(&per_vertex),
            "edges {:?}",
            g.edges()
        );
    }
}

#[test]
fn so_gadget_of_the_illustrative_matrix_matches_the_arrangement_oracle() {
    use runmin::reductions::IncidenceGadget;
    use runmin::wheeler::{build_so_gadget, proper_order, wg_bwt};

    let gad = IncidenceGadget::from_entries(1, 1, 1, &[(0, 1), (1, 2), (2, 0), (2, 1)]);
    let wg = build_so_gadget(&gad);
    let phi = proper_order(&wg, &wg.sources()).unwrap();
    let bwt = wg_bwt(&wg, &phi).unwrap();
    assert_eq!(bwt.runs, 7); // frozen from the exhaustive oracle below

    let order = phi.vertices_in_order();
    let mut per_vertex: Vec<(Vec<u32>, Vec<usize>)> = Vec::new();
    for &v in &order {
        let mut labels: Vec<u32> = wg
            .edges()
            .iter()
            .filter(|&&(u, _, _)| u == v)
            .map(|&(_, _, k)| k)
            .collect();
        if labels.is_empty() {
            continue;
        }
        labels.sort_unstable();
        labels.dedup();
        let counts = vec![1; labels.len()];
        per_vertex.push((labels, counts));
    }
    assert_eq!(exhaustive_wg_runs(&per_vertex), 7);
}

#[test]
fn canonical_ordering_isolates_every_symbol_but_one() {
    use runmin::reductions::{
        build_ao_string, build_gadget_matrix, canonical_alphabet_order, CanonicalPolicy,
        ColumnOrdering, TspInstance,
    };
    use std::collections::BTreeSet;

    let g = TspInstance::new(2, &[(0, 1)]).unwrap();
    let gad = build_gadget_matrix(&g, Some(1));
    let inst = build_ao_string(&gad);
    let pi = ColumnOrdering::new(vec![gad.c_s(), 0, 1, gad.c_t()], 4).unwrap();
    let canonical = canonical_alphabet_order(&inst, &pi, &CanonicalPolicy::default()).unwrap();

    let out = build_bwt(inst.text(), &canonical.ordering).unwrap();
    let zero_rank = canonical.ordering.rank(Symbol::Regular(0)).unwrap();
    let mut start = 0usize;
    let mut len = 0usize;
    for &s in out.bwt() {
        let r = canonical.ordering.rank(s).unwrap();
        if r < zero_rank {
            start += 1;
        } else if r == zero_rank {
            len += 1;
        }
    }
    let (left, rest) = out.bwt().split_at(start);
    let (zero_block, right) = rest.split_at(len);

    // The 1 symbols live entirely inside the 0-block's simulation.
    assert!(!left.contains(&Symbol::Regular(1)));
    assert!(!right.contains(&Symbol::Regular(1)));
    assert!(zero_block.contains(&Symbol::Regular(1)));

    // Outside the 0-block every symbol's occurrences form one run.
    for side in [left, right] {
        let distinct: BTreeSet<Symbol> = side.iter().copied().collect();
        assert_eq!(count_runs(side), distinct.len());
    }
}

#[test]
fn solve_cao_run_counts_decompose_as_tuples_minus_matches() {
    let c = StringCollection::from_lines(&["00", "10", "11", "021", "0002", "202"]).unwrap();
    let blocks = build_blocks(&c);
    let arrangement = greedy_tuple_order(&blocks);
    let total: usize = (0..blocks.len())
        .map(|i| blocks.block(i).tuple().len())
        .sum();
    assert_eq!(arrangement.runs(), total - arrangement.matches());
    let (_, runs) = solve_cao(&c);
    assert_eq!(runs, arrangement.runs());
}
