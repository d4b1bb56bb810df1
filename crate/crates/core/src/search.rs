//! Alphabet-ordering search: exact enumeration, local search, and
//! ordering-sensitivity statistics.
//!
//! Admissible orderings fix the sentinel at rank 0 and, when terminators are
//! present, keep every terminator below every regular symbol. Enumeration
//! walks rank vectors lexicographically; ties are broken by the smallest
//! rank vector so that partitioned (multi-threaded) runs reduce to the same
//! result as a sequential scan.

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::alphabet::{AlphabetOrdering, Symbol, Text};
use crate::bwt::{build_bwt, BwtError};
use crate::perm::next_permutation;

/// Search failures.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum SearchError {
    /// The alphabet is too large for exhaustive enumeration.
    #[error(
        "alphabet too large for exact search ({symbols} free symbols > limit {limit}); \
         use local search"
    )]
    LimitExceeded {
        /// Free (permutable) symbols of the offending kind.
        symbols: usize,
        /// The configured limit.
        limit: usize,
    },
    /// BWT construction failed.
    #[error(transparent)]
    Bwt(#[from] BwtError),
}

/// How a search result was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMethod {
    /// Exhaustive enumeration; the result is a global minimum.
    Exact,
    /// Hill climbing over adjacent-rank transpositions.
    Local,
    /// Statistics over sampled orderings.
    Sample,
}

/// Outcome of an ordering search.
#[derive(Clone, Debug)]
pub struct SearchResult {
    /// The best ordering found.
    pub ordering: AlphabetOrdering,
    /// Its BWT run count.
    pub runs: usize,
    /// Method that produced it.
    pub method: SearchMethod,
    /// Orderings evaluated.
    pub explored: u64,
    /// Wall time spent.
    pub elapsed: Duration,
}

/// Ordering-sensitivity statistics for a text.
#[derive(Clone, Debug)]
pub struct RatioReport {
    /// Fewest runs over the evaluated orderings.
    pub min_runs: usize,
    /// Most runs over the evaluated orderings.
    pub max_runs: usize,
    /// `max_runs / min_runs`.
    pub ratio: f64,
    /// `log2(n)^2` for context, where `n` is the text length.
    pub log2n_reference: f64,
    /// Orderings evaluated.
    pub explored: u64,
}

/// Mode for [`ratio_report`].
#[derive(Clone, Copy, Debug)]
pub enum RatioMode {
    /// Evaluate every admissible ordering (subject to the size limit).
    Exhaustive,
    /// Evaluate `k` sampled orderings, deterministically from `seed`.
    Sampled {
        /// Number of samples.
        k: usize,
        /// RNG seed.
        seed: u64,
    },
}

/// Default cap on free regular (and terminator) symbols for exact search.
pub const DEFAULT_EXACT_LIMIT: usize = 10;

fn split_alphabet(text: &Text) -> (Vec<Symbol>, Vec<Symbol>) {
    let terminators: Vec<Symbol> = text
        .alphabet()
        .iter()
        .copied()
        .filter(Symbol::is_terminator)
        .collect();
    let regulars: Vec<Symbol> = text
        .alphabet()
        .iter()
        .copied()
        .filter(Symbol::is_regular)
        .collect();
    (terminators, regulars)
}

fn ordering_from_parts(terminators: &[Symbol], regulars: &[Symbol]) -> AlphabetOrdering {
    let mut symbols = Vec::with_capacity(1 + terminators.len() + regulars.len());
    symbols.push(Symbol::Sentinel);
    symbols.extend_from_slice(terminators);
    symbols.extend_from_slice(regulars);
    AlphabetOrdering::from_symbols(symbols).expect("admissible ordering parts")
}

/// Visit every admissible ordering of `text`'s alphabet in lexicographic
/// rank-vector order.
fn for_each_admissible(text: &Text, mut f: impl FnMut(&AlphabetOrdering)) {
    let (mut terminators, mut regulars) = split_alphabet(text);
    terminators.sort_unstable();
    regulars.sort_unstable();
    loop {
        let mut regs = regulars.clone();
        regs.sort_unstable();
        loop {
            f(&ordering_from_parts(&terminators, &regs));
            if !next_permutation(&mut regs) {
                break;
            }
        }
        if !next_permutation(&mut terminators) {
            break;
        }
    }
}

/// A search candidate: run count, ordering, and its rank-vector tie-break.
type Candidate = (usize, AlphabetOrdering, Vec<u32>);

/// Keep the better of two candidates; ties resolve to the lexicographically
/// smallest rank vector.
fn better(best: Option<Candidate>, runs: usize, ordering: &AlphabetOrdering) -> Option<Candidate> {
    match best {
        None => {
            let rv = ordering.rank_vector();
            Some((runs, ordering.clone(), rv))
        }
        Some((best_runs, best_ord, best_rv)) => {
            if runs < best_runs || (runs == best_runs && ordering.rank_vector() < best_rv) {
                let rv = ordering.rank_vector();
                Some((runs, ordering.clone(), rv))
            } else {
                Some((best_runs, best_ord, best_rv))
            }
        }
    }
}

/// Exhaustive minimization over all admissible orderings.
pub fn exact_search(text: &Text) -> Result<SearchResult, SearchError> {
    exact_search_with(text, DEFAULT_EXACT_LIMIT, 1)
}

/// Exhaustive minimization with an explicit symbol limit and thread count.
///
/// The ordering space is partitioned by the first regular symbol; workers
/// reduce by `(runs, rank-vector)` minimum, so the result is identical to a
/// sequential scan regardless of scheduling.
pub fn exact_search_with(
    text: &Text,
    limit: usize,
    threads: usize,
) -> Result<SearchResult, SearchError> {
    let start = Instant::now();
    let (terminators, regulars) = split_alphabet(text);
    if regulars.len() > limit {
        return Err(SearchError::LimitExceeded {
            symbols: regulars.len(),
            limit,
        });
    }
    if terminators.len() > limit {
        return Err(SearchError::LimitExceeded {
            symbols: terminators.len(),
            limit,
        });
    }

    let threads = threads.max(1);
    if threads == 1 || regulars.len() < 2 {
        let mut best: Option<Candidate> = None;
        let mut explored = 0u64;
        let mut failure: Option<BwtError> = None;
        for_each_admissible(text, |ordering| {
            if failure.is_some() {
                return;
            }
            match build_bwt(text, ordering) {
                Ok(out) => {
                    explored += 1;
                    best = better(best.take(), out.runs(), ordering);
                }
                Err(e) => failure = Some(e),
            }
        });
        if let Some(e) = failure {
            return Err(e.into());
        }
        let (runs, ordering, _) = best.expect("at least one admissible ordering");
        return Ok(SearchResult {
            ordering,
            runs,
            method: SearchMethod::Exact,
            explored,
            elapsed: start.elapsed(),
        });
    }

    // Partition the regular-symbol permutations by their first symbol and
    // deal the parts round-robin to the workers.
    let mut sorted_regulars = regulars.clone();
    sorted_regulars.sort_unstable();
    let workers = threads.min(sorted_regulars.len());
    let results: Vec<(Option<Candidate>, u64)> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let regulars = sorted_regulars.clone();
                let terminators = terminators.clone();
                scope.spawn(move || {
                    let mut best = None;
                    let mut explored = 0u64;
                    for i in (w..regulars.len()).step_by(workers) {
                        let first = regulars[i];
                        let mut rest: Vec<Symbol> = regulars
                            .iter()
                            .copied()
                            .enumerate()
                            .filter_map(|(j, s)| (j != i).then_some(s))
                            .collect();
                        loop {
                            let mut terms = terminators.clone();
                            terms.sort_unstable();
                            loop {
                                let mut regs = Vec::with_capacity(regulars.len());
                                regs.push(first);
                                regs.extend_from_slice(&rest);
                                let ordering = ordering_from_parts(&terms, &regs);
                                if let Ok(out) = build_bwt(text, &ordering) {
                                    explored += 1;
                                    best = better(best, out.runs(), &ordering);
                                }
                                if !next_permutation(&mut terms) {
                                    break;
                                }
                            }
                            if !next_permutation(&mut rest) {
                                break;
                            }
                        }
                    }
                    (best, explored)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });

    let mut best: Option<Candidate> = None;
    let mut explored = 0u64;
    for (candidate, count) in results {
        explored += count;
        if let Some((runs, ordering, _)) = candidate {
            best = better(best, runs, &ordering);
        }
    }
    let (runs, ordering, _) = best.expect("at least one admissible ordering");
    Ok(SearchResult {
        ordering,
        runs,
        method: SearchMethod::Exact,
        explored,
        elapsed: start.elapsed(),
    })
}

/// Positions of admissible adjacent-rank transpositions: both symbols must
/// be of the same kind, and the sentinel never moves.
fn admissible_swaps(symbols: &[Symbol]) -> Vec<usize> {
    (1..symbols.len().saturating_sub(1))
        .filter(|&i| {
            (symbols[i].is_terminator() && symbols[i + 1].is_terminator())
                || (symbols[i].is_regular() && symbols[i + 1].is_regular())
        })
        .collect()
}

/// Hill climbing over adjacent-rank transpositions with restarts on plateau.
///
/// Never returns more runs than the seed; deterministic for a fixed
/// `rng_seed`. `budget` counts BWT evaluations beyond the seed's.
pub fn local_search(
    text: &Text,
    seed: &AlphabetOrdering,
    budget: u64,
    rng_seed: u64,
) -> Result<SearchResult, SearchError> {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let seed_runs = build_bwt(text, seed)?.runs();

    let mut best_symbols = seed.symbols().to_vec();
    let mut best_runs = seed_runs;
    let mut current = seed.symbols().to_vec();
    let mut current_runs = seed_runs;
    let mut explored = 0u64;
    let mut remaining = budget;

    'outer: while remaining > 0 {
        let mut improved = false;
        for i in admissible_swaps(&current) {
            if remaining == 0 {
                break 'outer;
            }
            current.swap(i, i + 1);
            let candidate = AlphabetOrdering::from_symbols(current.clone())
                .expect("swap preserves admissibility");
            let runs = build_bwt(text, &candidate)?.runs();
            explored += 1;
            remaining -= 1;
            if runs < current_runs {
                current_runs = runs;
                improved = true;
                if runs < best_runs {
                    best_runs = runs;
                    best_symbols = current.clone();
                }
                break;
            }
            current.swap(i, i + 1);
        }
        if !improved {
            // Plateau: restart from a random admissible shuffle.
            if remaining == 0 {
                break;
            }
            let (term_count, total) = {
                let terms = current.iter().filter(|s| s.is_terminator()).count();
                (terms, current.len())
            };
            current[1..1 + term_count].shuffle(&mut rng);
            current[1 + term_count..total].shuffle(&mut rng);
            let candidate = AlphabetOrdering::from_symbols(current.clone())
                .expect("shuffle preserves admissibility");
            current_runs = build_bwt(text, &candidate)?.runs();
            explored += 1;
            remaining -= 1;
            if current_runs < best_runs {
                best_runs = current_runs;
                best_symbols = current.clone();
            }
        }
    }

    Ok(SearchResult {
        ordering: AlphabetOrdering::from_symbols(best_symbols).expect("admissible result"),
        runs: best_runs,
        method: SearchMethod::Local,
        explored,
        elapsed: start.elapsed(),
    })
}

/// Min/max run statistics over admissible orderings.
pub fn ratio_report(text: &Text, mode: RatioMode) -> Result<RatioReport, SearchError> {
    ratio_report_with(text, mode, DEFAULT_EXACT_LIMIT)
}

/// [`ratio_report`] with an explicit exhaustive-mode symbol limit.
pub fn ratio_report_with(
    text: &Text,
    mode: RatioMode,
    limit: usize,
) -> Result<RatioReport, SearchError> {
    let mut min_runs = usize::MAX;
    let mut max_runs = 0usize;
    let mut explored = 0u64;
    match mode {
        RatioMode::Exhaustive => {
            let (terminators, regulars) = split_alphabet(text);
            if regulars.len() > limit || terminators.len() > limit {
                return Err(SearchError::LimitExceeded {
                    symbols: regulars.len().max(terminators.len()),
                    limit,
                });
            }
            let mut failure: Option<BwtError> = None;
            for_each_admissible(text, |ordering| {
                if failure.is_some() {
                    return;
                }
                match build_bwt(text, ordering) {
                    Ok(out) => {
                        explored += 1;
                        min_runs = min_runs.min(out.runs());
                        max_runs = max_runs.max(out.runs());
                    }
                    Err(e) => failure = Some(e),
                }
            });
            if let Some(e) = failure {
                return Err(e.into());
            }
        }
        RatioMode::Sampled { k, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (mut terminators, mut regulars) = split_alphabet(text);
            for _ in 0..k.max(1) {
                terminators.shuffle(&mut rng);
                regulars.shuffle(&mut rng);
                let ordering = ordering_from_parts(&terminators, &regulars);
                let out = build_bwt(text, &ordering)?;
                explored += 1;
                min_runs = min_runs.min(out.runs());
                max_runs = max_runs.max(out.runs());
            }
        }
    }
    let n = text.len().max(2) as f64;
    Ok(RatioReport {
        min_runs,
        max_runs,
        ratio: max_runs as f64 / min_runs as f64,
        log2n_reference: n.log2() * n.log2(),
        explored,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn byte_text(s: &str) -> Text {
        Text::from_bytes(s.as_bytes())
    }

    fn natural(text: &Text) -> AlphabetOrdering {
        AlphabetOrdering::natural(text.alphabet().iter().copied())
    }

    #[test]
    fn exact_search_mississippi_beats_the_eight_run_example() {
        // The $<s<i<p<m ordering reaches 8 runs; the actual optimum over
        // all 24 orderings is 7 (e.g. $<p<i<m<s gives "iippssm$ssii").
        let text = byte_text("mississippi");
        let result = exact_search(&text).unwrap();
        assert_eq!(result.runs, 7);
        assert!(result.runs <= 8);
        assert_eq!(result.explored, 24);
        assert_eq!(result.method, SearchMethod::Exact);
    }

    #[test]
    fn exact_search_is_a_global_minimum() {
        let text = byte_text("mississippi");
        let result = exact_search(&text).unwrap();
        let mut min = usize::MAX;
        for_each_admissible(&text, |ordering| {
            min = min.min(build_bwt(&text, ordering).unwrap().runs());
        });
        assert_eq!(result.runs, min);
    }

    #[test]
    fn exact_search_single_regular_symbol() {
        let text = byte_text("aaaa");
        let result = exact_search(&text).unwrap();
        assert_eq!(result.runs, 2);
        assert_eq!(result.explored, 1);
    }

    #[test]
    fn exact_search_two_symbol_alphabet_enumerates_both() {
        // sigma = 3 counting the sentinel, so two admissible orderings.
        let text = byte_text("abbaabbbabba");
        let result = exact_search(&text).unwrap();
        assert_eq!(result.explored, 2);
        let mut runs = Vec::new();
        for_each_admissible(&text, |ordering| {
            runs.push(build_bwt(&text, ordering).unwrap().runs());
        });
        assert_eq!(result.runs, *runs.iter().min().unwrap());
    }

    #[test]
    fn exact_search_refuses_large_alphabets() {
        let bytes: Vec<u8> = (b'a'..=b'l').collect();
        let text = Text::from_bytes(&bytes);
        let err = exact_search(&text).unwrap_err();
        assert!(matches!(
            err,
            SearchError::LimitExceeded { symbols: 12, .. }
        ));
    }

    #[test]
    fn parallel_search_matches_sequential_including_ties() {
        let text = byte_text("mississippi");
        let sequential = exact_search_with(&text, 10, 1).unwrap();
        let parallel = exact_search_with(&text, 10, 4).unwrap();
        assert_eq!(sequential.runs, parallel.runs);
        assert_eq!(sequential.explored, parallel.explored);
        assert_eq!(
            sequential.ordering.symbols(),
            parallel.ordering.symbols(),
            "tie-break must not depend on scheduling"
        );
    }

    #[test]
    fn local_search_budget_zero_returns_seed() {
        let text = byte_text("mississippi");
        let seed = natural(&text);
        let result = local_search(&text, &seed, 0, 7).unwrap();
        assert_eq!(result.runs, 9);
        assert_eq!(result.explored, 0);
        assert_eq!(result.ordering.symbols(), seed.symbols());
    }

    #[test]
    fn local_search_from_optimum_stays_at_optimum() {
        let text = byte_text("mississippi");
        let optimum = exact_search(&text).unwrap();
        let result = local_search(&text, &optimum.ordering, 100, 3).unwrap();
        assert_eq!(result.runs, optimum.runs);
    }

    #[test]
    fn local_search_with_a_thousand_evaluations_finds_the_optimum() {
        let text = byte_text("mississippi");
        let seed = natural(&text);
        let result = local_search(&text, &seed, 1000, 0).unwrap();
        let optimum = exact_search(&text).unwrap();
        assert_eq!(result.runs, optimum.runs);
        assert!(result.runs <= 8);
    }

    #[test]
    fn local_search_never_exceeds_seed_runs() {
        let text = byte_text("abracadabra");
        let seed = natural(&text);
        let seed_runs = build_bwt(&text, &seed).unwrap().runs();
        for rng_seed in 0..5 {
            let result = local_search(&text, &seed, 40, rng_seed).unwrap();
            assert!(result.runs <= seed_runs);
        }
    }

    #[test]
    fn ratio_report_mississippi_exhaustive() {
        let text = byte_text("mississippi");
        let report = ratio_report(&text, RatioMode::Exhaustive).unwrap();
        assert_eq!(report.explored, 24);
        assert_eq!(report.min_runs, 7);
        assert!(report.max_runs >= 9);
        assert!(report.ratio >= 9.0 / 8.0);
        assert!(report.min_runs <= report.max_runs);
    }

    #[test]
    fn ratio_report_sampled_is_deterministic() {
        let text = byte_text("abracadabra");
        let a = ratio_report(&text, RatioMode::Sampled { k: 20, seed: 42 }).unwrap();
        let b = ratio_report(&text, RatioMode::Sampled { k: 20, seed: 42 }).unwrap();
        assert_eq!(a.min_runs, b.min_runs);
        assert_eq!(a.max_runs, b.max_runs);
        assert!(a.min_runs <= a.max_runs);
    }

    #[test]
    fn searches_are_invariant_under_relabeling() {
        let text = byte_text("mississippi");
        // Relabel regular symbols by an arbitrary code permutation.
        let relabeled: Vec<Symbol> = text
            .symbols()
            .iter()
            .map(|s| match s {
                Symbol::Regular(c) => Symbol::Regular(c + 1000),
                other => *other,
            })
            .collect();
        let relabeled = Text::new(relabeled).unwrap();
        let a = exact_search(&text).unwrap();
        let b = exact_search(&relabeled).unwrap();
        assert_eq!(a.runs, b.runs);
        // Argmin orderings correspond under the relabeling.
        let mapped: Vec<Symbol> = a
            .ordering
            .symbols()
            .iter()
            .map(|s| match s {
                Symbol::Regular(c) => Symbol::Regular(c + 1000),
                other => *other,
            })
            .collect();
        assert_eq!(mapped, b.ordering.symbols());

        // The local search walks the same trajectory on relabeled input.
        let a = local_search(&text, &natural(&text), 200, 5).unwrap();
        let b = local_search(&relabeled, &natural(&relabeled), 200, 5).unwrap();
        assert_eq!(a.runs, b.runs);
        assert_eq!(a.explored, b.explored);
    }
}
