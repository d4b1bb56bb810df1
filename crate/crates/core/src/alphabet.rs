//! Symbols, texts, and alphabet orderings.
//!
//! A [`Symbol`] is either the sentinel (always the smallest symbol, appended
//! during BWT construction), a per-string terminator, or a regular symbol
//! identified by an integer code. The derived `Ord` gives the *natural*
//! order: sentinel, then terminators by index, then regular symbols by code.
//! Custom orders are expressed as [`AlphabetOrdering`] values.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

/// One symbol of a text.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    /// The unique smallest symbol; never part of a [`Text`], appended by
    /// [`crate::bwt::build_bwt`].
    Sentinel,
    /// A terminator `$_i`; occurs at most once per text.
    Terminator(u32),
    /// A regular symbol with an integer code (bytes ingest as 0..=255).
    Regular(u32),
}

impl Symbol {
    /// True for [`Symbol::Terminator`].
    pub fn is_terminator(&self) -> bool {
        matches!(self, Symbol::Terminator(_))
    }

    /// True for [`Symbol::Regular`].
    pub fn is_regular(&self) -> bool {
        matches!(self, Symbol::Regular(_))
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Sentinel => write!(f, "$"),
            Symbol::Terminator(i) => write!(f, "${i}"),
            Symbol::Regular(c) => {
                if (0x21..=0x7e).contains(c) {
                    write!(f, "{}", *c as u8 as char)
                } else {
                    write!(f, "#{c}")
                }
            }
        }
    }
}

/// Errors for text and ordering construction.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlphabetError {
    /// The sentinel may not appear inside a text or twice in an ordering.
    #[error("sentinel symbol supplied by caller (it is appended internally)")]
    DuplicateSentinel,
    /// A terminator occurred more than once in a text.
    #[error("terminator {0} occurs more than once")]
    RepeatedTerminator(u32),
    /// A symbol occurred more than once in an ordering.
    #[error("symbol {0} listed more than once in ordering")]
    DuplicateSymbol(Symbol),
    /// An ordering ranked a regular symbol below a terminator.
    #[error("terminator {terminator} must rank below regular symbol {regular}")]
    TerminatorAfterRegular {
        /// The offending terminator.
        terminator: Symbol,
        /// The regular symbol it was placed after.
        regular: Symbol,
    },
    /// The ordering does not cover a symbol of the text.
    #[error("symbol {0} of the text is missing from the ordering")]
    UnknownSymbol(Symbol),
}

/// An immutable sequence of symbols together with its alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Text {
    symbols: Vec<Symbol>,
    alphabet: BTreeSet<Symbol>,
}

impl Text {
    /// Build a text, validating that the sentinel is absent and terminators
    /// are pairwise distinct.
    pub fn new(symbols: Vec<Symbol>) -> Result<Self, AlphabetError> {
        let mut terminators = BTreeSet::new();
        for s in &symbols {
            match s {
                Symbol::Sentinel => return Err(AlphabetError::DuplicateSentinel),
                Symbol::Terminator(i) => {
                    if !terminators.insert(*i) {
                        return Err(AlphabetError::RepeatedTerminator(*i));
                    }
                }
                Symbol::Regular(_) => {}
            }
        }
        let alphabet = symbols.iter().copied().collect();
        Ok(Text { symbols, alphabet })
    }

    /// Ingest raw bytes as regular symbols.
    pub fn from_bytes(bytes: &[u8]) -> Self {
        let symbols: Vec<Symbol> = bytes.iter().map(|&b| Symbol::Regular(b as u32)).collect();
        let alphabet = symbols.iter().copied().collect();
        Text { symbols, alphabet }
    }

    /// The symbol sequence.
    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    /// The set of distinct symbols, in natural order.
    pub fn alphabet(&self) -> &BTreeSet<Symbol> {
        &self.alphabet
    }

    /// Number of symbols (excluding the sentinel appended later).
    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    /// True when the text holds no symbols.
    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Render as a byte string where possible (regular byte codes only).
    pub fn to_display_string(&self) -> String {
        self.symbols.iter().map(|s| s.to_string()).collect()
    }
}

/// A total order on an alphabet: a bijection symbol -> rank.
///
/// The sentinel always has rank 0 and terminators always rank below regular
/// symbols; both are enforced at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphabetOrdering {
    symbols: Vec<Symbol>,
    rank: HashMap<Symbol, u32>,
}

impl AlphabetOrdering {
    /// The natural ordering of an alphabet: sentinel, terminators ascending,
    /// regular symbols ascending. The sentinel is inserted if absent.
    pub fn natural<I: IntoIterator<Item = Symbol>>(alphabet: I) -> Self {
        let mut set: BTreeSet<Symbol> = alphabet.into_iter().collect();
        set.insert(Symbol::Sentinel);
        let symbols: Vec<Symbol> = set.into_iter().collect();
        let rank = symbols
            .iter()
            .enumerate()
            .map(|(r, &s)| (s, r as u32))
            .collect();
        AlphabetOrdering { symbols, rank }
    }

    /// Build an ordering from an explicit symbol sequence (rank = position).
    ///
    /// The sentinel is prepended when omitted; when present it must be first.
    pub fn from_symbols(mut symbols: Vec<Symbol>) -> Result<Self, AlphabetError> {
        match symbols.first() {
            Some(Symbol::Sentinel) => {}
            _ => {
                if symbols.contains(&Symbol::Sentinel) {
                    return Err(AlphabetError::DuplicateSentinel);
                }
                symbols.insert(0, Symbol::Sentinel);
            }
        }
        let mut rank = HashMap::with_capacity(symbols.len());
        let mut last_regular: Option<Symbol> = None;
        for (r, &s) in symbols.iter().enumerate() {
            if rank.insert(s, r as u32).is_some() {
                return Err(AlphabetError::DuplicateSymbol(s));
            }
            match s {
                Symbol::Regular(_) => last_regular = Some(s),
                Symbol::Terminator(_) => {
                    if let Some(reg) = last_regular {
                        return Err(AlphabetError::TerminatorAfterRegular {
                            terminator: s,
                            regular: reg,
                        });
                    }
                }
                Symbol::Sentinel => {
                    if r != 0 {
                        return Err(AlphabetError::DuplicateSentinel);
                    }
                }
            }
        }
        Ok(AlphabetOrdering { symbols, rank })
    }

    /// Rank of a symbol, if covered.
    pub fn rank(&self, s: Symbol) -> Option<u32> {
        self.rank.get(&s).copied()
    }

    /// Symbols in rank order (index = rank).
    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    /// Alphabet size including the sentinel.
    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    /// Always false: the sentinel is present in every ordering.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Check that every symbol of `text` is ranked.
    pub fn covers(&self, text: &Text) -> Result<(), AlphabetError> {
        for &s in text.alphabet() {
            if !self.rank.contains_key(&s) {
                return Err(AlphabetError::UnknownSymbol(s));
            }
        }
        Ok(())
    }

    /// Ranks listed by symbol in natural order; the deterministic tie-break
    /// key used by the searches.
    pub fn rank_vector(&self) -> Vec<u32> {
        let mut sorted = self.symbols.clone();
        sorted.sort_unstable();
        sorted.into_iter().map(|s| self.rank[&s]).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn natural_order_places_terminators_between_sentinel_and_regulars() {
        let ord = AlphabetOrdering::natural(vec![
            Symbol::Regular(5),
            Symbol::Terminator(1),
            Symbol::Regular(2),
            Symbol::Terminator(0),
        ]);
        assert_eq!(
            ord.symbols(),
            &[
                Symbol::Sentinel,
                Symbol::Terminator(0),
                Symbol::Terminator(1),
                Symbol::Regular(2),
                Symbol::Regular(5),
            ]
        );
        assert_eq!(ord.rank(Symbol::Sentinel), Some(0));
        assert_eq!(ord.rank(Symbol::Regular(5)), Some(4));
    }

    #[test]
    fn from_symbols_prepends_sentinel() {
        let ord =
            AlphabetOrdering::from_symbols(vec![Symbol::Regular(1), Symbol::Regular(0)]).unwrap();
        assert_eq!(ord.rank(Symbol::Sentinel), Some(0));
        assert_eq!(ord.rank(Symbol::Regular(1)), Some(1));
        assert_eq!(ord.rank(Symbol::Regular(0)), Some(2));
    }

    #[test]
    fn from_symbols_rejects_duplicates() {
        let err = AlphabetOrdering::from_symbols(vec![Symbol::Regular(7), Symbol::Regular(7)])
            .unwrap_err();
        assert_eq!(err, AlphabetError::DuplicateSymbol(Symbol::Regular(7)));
    }

    #[test]
    fn from_symbols_rejects_terminator_after_regular() {
        let err = AlphabetOrdering::from_symbols(vec![Symbol::Regular(0), Symbol::Terminator(0)])
            .unwrap_err();
        assert!(matches!(err, AlphabetError::TerminatorAfterRegular { .. }));
    }

    #[test]
    fn text_rejects_repeated_terminator() {
        let err = Text::new(vec![Symbol::Terminator(3), Symbol::Terminator(3)]).unwrap_err();
        assert_eq!(err, AlphabetError::RepeatedTerminator(3));
    }

    #[test]
    fn text_rejects_sentinel() {
        let err = Text::new(vec![Symbol::Sentinel]).unwrap_err();
        assert_eq!(err, AlphabetError::DuplicateSentinel);
    }
}
