//! BWT construction under an arbitrary alphabet ordering, run counting,
//! LF-mapping, and inversion.
//!
//! Construction sorts the circular shifts of `text · sentinel`. Because the
//! sentinel is unique and smallest, shift order equals suffix order, so the
//! sort is a suffix ranking of the rank-remapped text (prefix doubling,
//! `O(n log n)`). One code path serves every ordering: symbols are remapped
//! to their ranks before sorting.

use thiserror::Error;

use crate::alphabet::{AlphabetError, AlphabetOrdering, Symbol, Text};
use crate::suffix::suffix_array;

/// Errors from BWT construction and inversion.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum BwtError {
    /// Text or ordering invariants were violated.
    #[error(transparent)]
    Alphabet(#[from] AlphabetError),
    /// A BWT sequence must contain the sentinel exactly once.
    #[error("expected exactly one sentinel in the BWT, found {0}")]
    SentinelCount(usize),
    /// The LF walk closed a cycle early; the sequence is not a BWT.
    #[error("LF walk revisited its start row; sequence is not a valid BWT")]
    NotInvertible,
}

/// The transformed string, its run count, and the LF permutation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BwtOutput {
    bwt: Vec<Symbol>,
    runs: usize,
    lf: Vec<usize>,
}

impl BwtOutput {
    /// Wrap an externally produced BWT sequence, deriving the LF-mapping and
    /// run count under `ordering`.
    pub fn from_sequence(bwt: Vec<Symbol>, ordering: &AlphabetOrdering) -> Result<Self, BwtError> {
        let sentinels = bwt.iter().filter(|&&s| s == Symbol::Sentinel).count();
        if sentinels != 1 {
            return Err(BwtError::SentinelCount(sentinels));
        }
        let lf = lf_mapping(&bwt, ordering)?;
        let runs = count_runs(&bwt);
        Ok(BwtOutput { bwt, runs, lf })
    }

    /// The BWT symbol sequence (length = text length + 1).
    pub fn bwt(&self) -> &[Symbol] {
        &self.bwt
    }

    /// Number of maximal unary blocks in the BWT.
    pub fn runs(&self) -> usize {
        self.runs
    }

    /// The LF permutation: position of each BWT symbol in the first column.
    pub fn lf(&self) -> &[usize] {
        &self.lf
    }

    /// Length including the sentinel.
    pub fn len(&self) -> usize {
        self.bwt.len()
    }

    /// True only for the degenerate empty transform.
    pub fn is_empty(&self) -> bool {
        self.bwt.is_empty()
    }
}

/// Rank-stable LF-mapping of a BWT sequence: equal symbols map in order.
fn lf_mapping(bwt: &[Symbol], ordering: &AlphabetOrdering) -> Result<Vec<usize>, BwtError> {
    let sigma = ordering.len();
    let mut ranks = Vec::with_capacity(bwt.len());
    for &s in bwt {
        let r = ordering.rank(s).ok_or(AlphabetError::UnknownSymbol(s))? as usize;
        ranks.push(r);
    }
    let mut counts = vec![0usize; sigma + 1];
    for &r in &ranks {
        counts[r + 1] += 1;
    }
    for i in 1..=sigma {
        counts[i] += counts[i - 1];
    }
    let mut lf = Vec::with_capacity(bwt.len());
    for &r in &ranks {
        lf.push(counts[r]);
        counts[r] += 1;
    }
    Ok(lf)
}

/// Build the BWT of `text · sentinel` under `ordering`.
///
/// The sentinel is always appended here, never supplied by the caller.
pub fn build_bwt(text: &Text, ordering: &AlphabetOrdering) -> Result<BwtOutput, BwtError> {
    ordering.covers(text)?;
    let n = text.len() + 1;
    let mut codes = Vec::with_capacity(n);
    let mut augmented = Vec::with_capacity(n);
    for &s in text.symbols() {
        codes.push(ordering.rank(s).expect("covered symbol"));
        augmented.push(s);
    }
    codes.push(0);
    augmented.push(Symbol::Sentinel);

    let sa = suffix_array(&codes);
    let mut bwt = Vec::with_capacity(n);
    for &p in &sa {
        let prev = if p == 0 { n - 1 } else { p as usize - 1 };
        bwt.push(augmented[prev]);
    }
    let runs = count_runs(&bwt);
    let lf = lf_mapping(&bwt, ordering)?;
    Ok(BwtOutput { bwt, runs, lf })
}

/// Number of maximal unary blocks of a sequence; 0 for the empty sequence.
pub fn count_runs<T: PartialEq>(s: &[T]) -> usize {
    if s.is_empty() {
        return 0;
    }
    1 + s.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Invert a BWT back to its text (sentinel stripped).
pub fn invert_bwt(b: &BwtOutput, ordering: &AlphabetOrdering) -> Result<Text, BwtError> {
    let sentinels = b.bwt.iter().filter(|&&s| s == Symbol::Sentinel).count();
    if sentinels != 1 {
        return Err(BwtError::SentinelCount(sentinels));
    }
    let lf = lf_mapping(&b.bwt, ordering)?;
    let n = b.bwt.len();
    let mut out = Vec::with_capacity(n - 1);
    let mut row = 0usize;
    for _ in 0..n - 1 {
        let s = b.bwt[row];
        if s == Symbol::Sentinel {
            return Err(BwtError::NotInvertible);
        }
        out.push(s);
        row = lf[row];
        if row == 0 {
            return Err(BwtError::NotInvertible);
        }
    }
    out.reverse();
    Text::new(out).map_err(BwtError::from)
}

/// The vertex-label sequence obtained by following the LF-mapping from row 0:
/// the reverse of `text · sentinel`, rotated to start at row 0's symbol.
pub fn lf_path(b: &BwtOutput) -> Vec<Symbol> {
    let n = b.bwt.len();
    let mut labels = Vec::with_capacity(n);
    let mut row = 0usize;
    for _ in 0..n {
        labels.push(b.bwt[row]);
        row = b.lf[row];
    }
    labels
}

/// A reported comparison of the run count against twice the run count of the
/// raw text plus the sentinel allowance. Diagnostic only; nothing asserts it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunBoundDiagnostic {
    /// Runs of the transform, sentinel included.
    pub bwt_runs: usize,
    /// `2 * runs(text) + 2`.
    pub reference: usize,
}

/// Compare the BWT run count with `2 * runs(text) + 2`.
pub fn run_bound_diagnostic(
    text: &Text,
    ordering: &AlphabetOrdering,
) -> Result<RunBoundDiagnostic, BwtError> {
    let b = build_bwt(text, ordering)?;
    Ok(RunBoundDiagnostic {
        bwt_runs: b.runs(),
        reference: 2 * count_runs(text.symbols()) + 2,
    })
}
