//! Constrained alphabet ordering: order only the per-string terminators
//! `$_0 .. $_{d-1}` (all below the regular symbols) so that the BWT of
//! `T_0 $_0 T_1 $_1 ... T_{d-1} $_{d-1}` has as few runs as possible.
//!
//! The BWT rows group into *blocks* by their context: one block per distinct
//! suffix of the input strings (plus the root block of rows starting at a
//! terminator). Within a block, row order is exactly the terminator order of
//! the member strings, so rows with equal BWT symbols can always be grouped,
//! and each block collapses to the *tuple* of its distinct symbols. Choosing
//! the terminator order then reduces to arranging each tuple to maximize
//! boundary matches, which [`greedy_arrange`] solves; a tree walk turns the
//! arrangement back into a concrete terminator permutation.

pub mod tuple;

use std::fmt;

use thiserror::Error;

use crate::alphabet::{AlphabetOrdering, Symbol, Text};
use crate::bwt::build_bwt;
use crate::suffix::{inverse, lcp_array, suffix_array};
pub use tuple::{greedy_arrange, Arrangement};

/// CAO input errors.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum CaoError {
    /// A collection must hold at least one string.
    #[error("string collection must be non-empty")]
    EmptyCollection,
}

/// A set of `d` strings over a regular alphabet of integer codes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StringCollection {
    strings: Vec<Vec<u32>>,
}

impl StringCollection {
    /// Wrap strings of regular symbol codes; `d >= 1` is required.
    pub fn new(strings: Vec<Vec<u32>>) -> Result<Self, CaoError> {
        if strings.is_empty() {
            return Err(CaoError::EmptyCollection);
        }
        Ok(StringCollection { strings })
    }

    /// One string per line, bytes as codes.
    pub fn from_lines<S: AsRef<str>>(lines: &[S]) -> Result<Self, CaoError> {
        Self::new(
            lines
                .iter()
                .map(|l| l.as_ref().bytes().map(u32::from).collect())
                .collect(),
        )
    }

    /// Number of strings.
    pub fn d(&self) -> usize {
        self.strings.len()
    }

    /// Total length of all strings.
    pub fn total_len(&self) -> usize {
        self.strings.iter().map(Vec::len).sum()
    }

    /// The strings.
    pub fn strings(&self) -> &[Vec<u32>] {
        &self.strings
    }

    /// The concatenation `T_0 $_0 ... T_{d-1} $_{d-1}` as a [`Text`].
    pub fn to_text(&self) -> Text {
        let mut symbols = Vec::with_capacity(self.total_len() + self.d());
        for (i, s) in self.strings.iter().enumerate() {
            symbols.extend(s.iter().map(|&c| Symbol::Regular(c)));
            symbols.push(Symbol::Terminator(i as u32));
        }
        Text::new(symbols).expect("terminators are distinct by construction")
    }
}

/// A block or tuple element: a terminator or a regular symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    /// Terminator `$_i`.
    Terminator(u32),
    /// Regular symbol code.
    Regular(u32),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Terminator(i) => write!(f, "${i}"),
            Label::Regular(c) => {
                if (0x21..=0x7e).contains(c) {
                    write!(f, "{}", *c as u8 as char)
                } else {
                    write!(f, "#{c}")
                }
            }
        }
    }
}

// Labels are packed as integers: terminators as 0..d, regular code c as d+c.
fn decode_label(code: u32, d: u32) -> Label {
    if code < d {
        Label::Terminator(code)
    } else {
        Label::Regular(code - d)
    }
}

#[derive(Clone, Copy, Debug)]
struct BlockMeta {
    key_string: u32,
    key_start: u32,
    members: (u32, u32),
    tuple: (u32, u32),
    children: (u32, u32),
}

/// The block tree flattened into its ordered tuple sequence.
#[derive(Clone, Debug)]
pub struct BlockTupleSequence {
    d: u32,
    strings: Vec<Vec<u32>>,
    blocks: Vec<BlockMeta>,
    members: Vec<(u32, u32)>,
    tuples: Vec<u32>,
    children: Vec<(u32, u32)>,
}

/// Read-only view of one block.
#[derive(Clone, Copy)]
pub struct BlockRef<'a> {
    seq: &'a BlockTupleSequence,
    idx: usize,
}

impl<'a> BlockRef<'a> {
    /// The block key: a suffix of one input string (empty for the root).
    pub fn key(&self) -> &'a [u32] {
        let meta = &self.seq.blocks[self.idx];
        &self.seq.strings[meta.key_string as usize][meta.key_start as usize..]
    }

    /// Members as `(string id, label)` pairs, in terminator-index order.
    pub fn members(&self) -> impl Iterator<Item = (u32, Label)> + 'a {
        let meta = &self.seq.blocks[self.idx];
        let d = self.seq.d;
        self.seq.members[meta.members.0 as usize..meta.members.1 as usize]
            .iter()
            .map(move |&(s, code)| (s, decode_label(code, d)))
    }

    /// The distinct labels of the block, ascending.
    pub fn tuple(&self) -> Vec<Label> {
        let d = self.seq.d;
        self.tuple_codes()
            .iter()
            .map(|&c| decode_label(c, d))
            .collect()
    }

    fn tuple_codes(&self) -> &'a [u32] {
        let meta = &self.seq.blocks[self.idx];
        &self.seq.tuples[meta.tuple.0 as usize..meta.tuple.1 as usize]
    }
}

impl BlockTupleSequence {
    /// Number of blocks.
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    /// True when there are no blocks (never happens for valid collections).
    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Number of strings in the originating collection.
    pub fn d(&self) -> usize {
        self.d as usize
    }

    /// View of block `i` in block order.
    pub fn block(&self, i: usize) -> BlockRef<'_> {
        BlockRef { seq: self, idx: i }
    }

    /// All tuples rendered as label lists, in block order.
    pub fn tuple_labels(&self) -> Vec<Vec<Label>> {
        (0..self.len()).map(|i| self.block(i).tuple()).collect()
    }

    fn child(&self, block: usize, code: u32) -> usize {
        let meta = &self.blocks[block];
        let slice = &self.children[meta.children.0 as usize..meta.children.1 as usize];
        let at = slice
            .binary_search_by_key(&code, |&(c, _)| c)
            .expect("arranged label has a child block");
        slice[at].1 as usize
    }
}

/// Build the ordered block/tuple sequence of a collection.
///
/// One block per distinct suffix of the `T_i` (the root block collects the
/// terminator-context rows), ordered lexicographically with proper prefixes
/// first. Member labels are the symbol preceding the suffix, or the previous
/// string's terminator (cyclically) when the suffix is the whole string.
pub fn build_blocks(c: &StringCollection) -> BlockTupleSequence {
    let d = c.d() as u32;
    let total = c.total_len() + c.d();
    let mut text = Vec::with_capacity(total);
    let mut string_of = Vec::with_capacity(total);
    let mut start_of_string = Vec::with_capacity(c.d());
    for (i, s) in c.strings().iter().enumerate() {
        start_of_string.push(text.len() as u32);
        for &code in s {
            text.push(d + code);
            string_of.push(i as u32);
        }
        text.push(i as u32);
        string_of.push(i as u32);
    }

    // Distance from each position to its string's terminator.
    let mut ctx_len = vec![0u32; total];
    for p in (0..total).rev() {
        if text[p] >= d {
            ctx_len[p] = ctx_len[p + 1] + 1;
        }
    }

    let sa = suffix_array(&text);
    let inv = inverse(&sa);
    let lcp = lcp_array(&text, &sa, &inv);

    // Block boundaries: a row opens a block when its context (the suffix up
    // to the terminator) differs from the previous row's.
    let mut block_of = vec![0u32; total];
    let mut block_start_rows = Vec::new();
    for (row, &pos) in sa.iter().enumerate() {
        let opens = row == 0
            || ctx_len[pos as usize] != ctx_len[sa[row - 1] as usize]
            || lcp[row] < ctx_len[pos as usize];
        if opens {
            block_start_rows.push(row as u32);
        }
        block_of[row] = block_start_rows.len() as u32 - 1;
    }

    let n_blocks = block_start_rows.len();
    let mut blocks = Vec::with_capacity(n_blocks);
    let mut members = Vec::with_capacity(total);
    let mut tuples = Vec::new();
    let mut children = Vec::new();
    let mut scratch: Vec<u32> = Vec::new();
    let mut child_scratch: Vec<(u32, u32)> = Vec::new();

    for b in 0..n_blocks {
        let row_lo = block_start_rows[b] as usize;
        let row_hi = if b + 1 < n_blocks {
            block_start_rows[b + 1] as usize
        } else {
            total
        };
        let first_pos = sa[row_lo] as usize;
        let key_string = string_of[first_pos];
        let key_start = first_pos as u32 - start_of_string[key_string as usize];

        let members_lo = members.len() as u32;
        scratch.clear();
        child_scratch.clear();
        for &pos in &sa[row_lo..row_hi] {
            let pos = pos as usize;
            let prev = if pos == 0 { total - 1 } else { pos - 1 };
            let label = text[prev];
            members.push((string_of[pos], label));
            scratch.push(label);
            if label >= d {
                // The rows whose suffix extends this one by `label` form the
                // child block; any representative row locates it.
                child_scratch.push((label, block_of[inv[prev] as usize]));
            }
        }
        let members_hi = members.len() as u32;

        let tuple_lo = tuples.len() as u32;
        scratch.sort_unstable();
        scratch.dedup();
        tuples.extend_from_slice(&scratch);
        let tuple_hi = tuples.len() as u32;

        let children_lo = children.len() as u32;
        child_scratch.sort_unstable();
        child_scratch.dedup();
        children.extend_from_slice(&child_scratch);
        let children_hi = children.len() as u32;

        blocks.push(BlockMeta {
            key_string,
            key_start,
            members: (members_lo, members_hi),
            tuple: (tuple_lo, tuple_hi),
            children: (children_lo, children_hi),
        });
    }

    BlockTupleSequence {
        d,
        strings: c.strings().to_vec(),
        blocks,
        members,
        tuples,
        children,
    }
}

/// A per-block element order plus the realized match count.
#[derive(Clone, Debug)]
pub struct TupleArrangement {
    d: u32,
    arranged: Vec<u32>,
    ranges: Vec<(u32, u32)>,
    matches: usize,
}

impl TupleArrangement {
    /// Boundary matches realized by the arrangement.
    pub fn matches(&self) -> usize {
        self.matches
    }

    /// Run count of the concatenated arrangement: total elements - matches.
    pub fn runs(&self) -> usize {
        self.arranged.len() - self.matches
    }

    /// The arranged labels of tuple `i`.
    pub fn tuple(&self, i: usize) -> Vec<Label> {
        self.tuple_codes(i)
            .iter()
            .map(|&c| decode_label(c, self.d))
            .collect()
    }

    fn tuple_codes(&self, i: usize) -> &[u32] {
        let (lo, hi) = self.ranges[i];
        &self.arranged[lo as usize..hi as usize]
    }
}

/// Arrange every block tuple to maximize boundary matches.
pub fn greedy_tuple_order(blocks: &BlockTupleSequence) -> TupleArrangement {
    let slices: Vec<&[u32]> = (0..blocks.len())
        .map(|i| blocks.block(i).tuple_codes())
        .collect();
    let arr = greedy_arrange(&slices);
    let mut arranged = Vec::with_capacity(slices.iter().map(|s| s.len()).sum());
    let mut ranges = Vec::with_capacity(arr.tuples.len());
    for t in &arr.tuples {
        let lo = arranged.len() as u32;
        arranged.extend_from_slice(t);
        ranges.push((lo, arranged.len() as u32));
    }
    TupleArrangement {
        d: blocks.d,
        arranged,
        ranges,
        matches: arr.matches,
    }
}

/// A terminator ordering `$_{pi(0)} < $_{pi(1)} < ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialOrdering {
    /// `pi[k]` is the string whose terminator takes rank `k`.
    pub pi: Vec<u32>,
}

impl SpecialOrdering {
    /// The full alphabet ordering realizing `pi`: sentinel, terminators in
    /// `pi` order, then the regular symbols in their natural order.
    pub fn to_alphabet_ordering(&self, c: &StringCollection) -> AlphabetOrdering {
        let mut symbols = vec![Symbol::Sentinel];
        symbols.extend(self.pi.iter().map(|&i| Symbol::Terminator(i)));
        let mut regulars: Vec<u32> = c.strings().iter().flatten().copied().collect();
        regulars.sort_unstable();
        regulars.dedup();
        symbols.extend(regulars.into_iter().map(Symbol::Regular));
        AlphabetOrdering::from_symbols(symbols).expect("pi is a permutation")
    }
}

/// Turn an arrangement into a terminator ordering realizing it.
///
/// Walks the block tree from the root: at each block, visit the label groups
/// in arranged order, recursing into the child block of each regular label
/// and emitting the owning string at each terminator label. The emission
/// order is `pi`. Within every block, sorting members by `pi` then yields
/// label groups exactly in arranged order, because a group's strings are
/// emitted contiguously inside the corresponding subtree.
pub fn reconstruct_pi(
    blocks: &BlockTupleSequence,
    arrangement: &TupleArrangement,
) -> SpecialOrdering {
    let d = blocks.d;
    let mut pi = Vec::with_capacity(d as usize);
    // (block, next position in its arranged tuple); depth can reach the
    // longest suffix, so recursion is made explicit.
    let mut stack: Vec<(u32, u32)> = vec![(0, 0)];
    while let Some((b, pos)) = stack.pop() {
        let codes = arrangement.tuple_codes(b as usize);
        if (pos as usize) < codes.len() {
            stack.push((b, pos + 1));
            let code = codes[pos as usize];
            if code < d {
                pi.push((code + 1) % d);
            } else {
                stack.push((blocks.child(b as usize, code) as u32, 0));
            }
        }
    }
    assert_eq!(
        pi.len(),
        d as usize,
        "arrangement inconsistent with block tree"
    );
    SpecialOrdering { pi }
}

/// Solve constrained alphabet ordering: the returned run count is the
/// minimum of `runs(BWT(T_0 $_0 ... T_{d-1} $_{d-1}))` over all `d!`
/// terminator orderings, and `pi` attains it.
pub fn solve_cao(c: &StringCollection) -> (SpecialOrdering, usize) {
    let blocks = build_blocks(c);
    let arrangement = greedy_tuple_order(&blocks);
    let pi = reconstruct_pi(&blocks, &arrangement);
    (pi, arrangement.runs())
}

/// Run count actually measured by building the BWT under `pi`.
///
/// The sentinel appended by [`build_bwt`] contributes exactly one extra run
/// whenever the text ends with a unique symbol, which the final terminator
/// guarantees; it is subtracted here.
pub fn measured_runs(c: &StringCollection, pi: &SpecialOrdering) -> usize {
    let text = c.to_text();
    let ordering = pi.to_alphabet_ordering(c);
    build_bwt(&text, &ordering)
        .expect("collection text is valid")
        .runs()
        - 1
}

/// The separation family: all `sigma^len` strings of length `len` over
/// `0..sigma`, in lexicographic order.
pub fn separation_family(sigma: u32, len: u32) -> StringCollection {
    assert!(sigma >= 1 && len >= 1);
    let count = (sigma as u64).pow(len);
    let mut strings = Vec::with_capacity(count as usize);
    for mut v in 0..count {
        let mut s = vec![0u32; len as usize];
        for k in (0..len as usize).rev() {
            s[k] = (v % sigma as u64) as u32;
            v /= sigma as u64;
        }
        strings.push(s);
    }
    StringCollection::new(strings).expect("family is non-empty")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::for_each_permutation;

    fn collection(lines: &[&str]) -> StringCollection {
        StringCollection::from_lines(lines).unwrap()
    }

    fn render_tuples(blocks: &BlockTupleSequence) -> Vec<String> {
        blocks
            .tuple_labels()
            .iter()
            .map(|t| {
                let parts: Vec<String> = t.iter().map(Label::to_string).collect();
                format!("({})", parts.join(","))
            })
            .collect()
    }

    type NaiveBlock = (Vec<u32>, Vec<(u32, Label)>);

    /// Brute-force block construction: gather and sort all suffixes.
    fn naive_blocks(c: &StringCollection) -> Vec<NaiveBlock> {
        let d = c.d();
        let mut by_key: Vec<NaiveBlock> = Vec::new();
        for (i, s) in c.strings().iter().enumerate() {
            for k in 0..=s.len() {
                let key = s[s.len() - k..].to_vec();
                let label = if k == s.len() {
                    Label::Terminator(((i + d - 1) % d) as u32)
                } else {
                    Label::Regular(s[s.len() - k - 1])
                };
                match by_key.iter_mut().find(|(u, _)| *u == key) {
                    Some((_, m)) => m.push((i as u32, label)),
                    None => by_key.push((key, vec![(i as u32, label)])),
                }
            }
        }
        // Lexicographic with proper prefixes first = plain slice ordering.
        by_key.sort_by(|(a, _), (b, _)| a.cmp(b));
        for (_, m) in &mut by_key {
            m.sort();
        }
        by_key
    }

    #[test]
    fn six_string_collection_gives_the_thirteen_known_tuples() {
        let c = collection(&["00", "10", "11", "021", "0002", "202"]);
        let blocks = build_blocks(&c);
        assert_eq!(
            render_tuples(&blocks),
            vec![
                "(0,1,2)", "(0,1)", "($5)", "($3)", "(0)", "(0,2)", "($2)", "(1,2)", "($0)",
                "($1)", "(0)", "($4)", "(0)",
            ]
        );
    }

    #[test]
    fn single_string_blocks() {
        let c = collection(&["ab"]);
        let blocks = build_blocks(&c);
        let keys: Vec<Vec<u32>> = (0..blocks.len())
            .map(|i| blocks.block(i).key().to_vec())
            .collect();
        let a = u32::from(b'a');
        let b = u32::from(b'b');
        assert_eq!(keys, vec![vec![], vec![a, b], vec![b]]);
        assert_eq!(render_tuples(&blocks), vec!["(b)", "($0)", "(a)"]);
    }

    #[test]
    fn repeated_strings_share_blocks() {
        let c = collection(&["aa", "aa"]);
        let blocks = build_blocks(&c);
        let naive = naive_blocks(&c);
        assert_eq!(blocks.len(), naive.len());
        for (i, (key, members)) in naive.iter().enumerate() {
            let block = blocks.block(i);
            assert_eq!(block.key(), key.as_slice());
            let got: Vec<(u32, Label)> = block.members().collect();
            assert_eq!(&got, members);
        }
        // Both full-string rows land in one block labeled by both terminators.
        assert_eq!(render_tuples(&blocks)[2], "($0,$1)");
    }

    #[test]
    fn blocks_match_naive_construction_on_random_collections() {
        let mut state = 0xabcdef12345_u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..60 {
            let d = (next() % 4 + 1) as usize;
            let strings: Vec<Vec<u32>> = (0..d)
                .map(|_| {
                    let len = (next() % 5 + 1) as usize;
                    (0..len).map(|_| (next() % 3) as u32).collect()
                })
                .collect();
            let c = StringCollection::new(strings).unwrap();
            let blocks = build_blocks(&c);
            let naive = naive_blocks(&c);
            assert_eq!(blocks.len(), naive.len(), "collection {:?}", c.strings());
            for (i, (key, members)) in naive.iter().enumerate() {
                let block = blocks.block(i);
                assert_eq!(block.key(), key.as_slice());
                let got: Vec<(u32, Label)> = block.members().collect();
                assert_eq!(&got, members, "block {i} of {:?}", c.strings());
            }
        }
    }

    #[test]
    fn six_string_collection_solves_to_sixteen_runs() {
        let c = collection(&["00", "10", "11", "021", "0002", "202"]);
        let blocks = build_blocks(&c);
        let arrangement = greedy_tuple_order(&blocks);
        assert_eq!(arrangement.matches(), 2);
        assert_eq!(arrangement.runs(), 16);

        let (pi, runs) = solve_cao(&c);
        assert_eq!(runs, 16);
        assert_eq!(measured_runs(&c, &pi), 16);
    }

    #[test]
    fn solve_cao_single_string() {
        let c = collection(&["banana"]);
        let (pi, runs) = solve_cao(&c);
        assert_eq!(pi.pi, vec![0]);
        assert_eq!(measured_runs(&c, &pi), runs);
    }

    #[test]
    fn two_disjoint_strings_realize_either_order() {
        let c = collection(&["a", "b"]);
        let (pi, runs) = solve_cao(&c);
        assert_eq!(measured_runs(&c, &pi), runs);
        for pi in [vec![0u32, 1], vec![1, 0]] {
            let candidate = SpecialOrdering { pi };
            assert_eq!(measured_runs(&c, &candidate), runs);
        }
    }

    #[test]
    fn solve_matches_brute_force_on_small_collections() {
        let mut state = 0x51ce_u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..25 {
            let d = (next() % 4 + 1) as usize;
            let strings: Vec<Vec<u32>> = (0..d)
                .map(|_| {
                    let len = (next() % 4 + 1) as usize;
                    (0..len).map(|_| (next() % 2) as u32).collect()
                })
                .collect();
            let c = StringCollection::new(strings).unwrap();
            let (pi, runs) = solve_cao(&c);
            assert_eq!(measured_runs(&c, &pi), runs, "strings {:?}", c.strings());

            let ids: Vec<u32> = (0..d as u32).collect();
            let mut best = usize::MAX;
            for_each_permutation(&ids, |perm| {
                let candidate = SpecialOrdering { pi: perm.to_vec() };
                best = best.min(measured_runs(&c, &candidate));
            });
            assert_eq!(runs, best, "strings {:?}", c.strings());
        }
    }

    #[test]
    fn separation_family_lists_all_strings_in_order() {
        let c = separation_family(2, 3);
        assert_eq!(c.d(), 8);
        assert_eq!(c.strings()[0], vec![0, 0, 0]);
        assert_eq!(c.strings()[3], vec![0, 1, 1]);
        assert_eq!(c.strings()[7], vec![1, 1, 1]);
    }

    #[test]
    fn separation_family_optimum_beats_lexicographic_order() {
        let c = separation_family(2, 3);
        let identity = SpecialOrdering {
            pi: (0..8).collect(),
        };
        let lex_runs = measured_runs(&c, &identity);
        let (pi, runs) = solve_cao(&c);
        assert_eq!(measured_runs(&c, &pi), runs);
        assert!(
            runs < lex_runs,
            "optimal {runs} should beat lexicographic {lex_runs}"
        );
    }

    #[test]
    fn empty_collection_is_rejected() {
        assert_eq!(
            StringCollection::new(Vec::new()).unwrap_err(),
            CaoError::EmptyCollection
        );
    }
}
