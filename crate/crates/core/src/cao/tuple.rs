//! Tuple ordering: arrange the elements of each tuple in a fixed tuple
//! sequence so that adjacent boundary elements match as often as possible.
//!
//! Forward pass: mark which elements may start or end each tuple without
//! giving up matches, propagating availability left to right. First tuple:
//! all starts available. A tuple with two available starts leaves every end
//! available; with one available start, every end but the matching element;
//! a singleton passes its element through. An element may start the next
//! tuple iff it matched an available end; if nothing qualifies, every start
//! becomes available. Backward pass: pick the last tuple's end as the
//! smallest marked element, then walk leftwards, ending tuple `i` with the
//! chosen start of tuple `i + 1` whenever that value is an available end and
//! a distinct available start remains. Interior elements go in ascending
//! order.

/// Per-tuple element order maximizing boundary matches.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement<T> {
    /// Each tuple with its elements in chosen order.
    pub tuples: Vec<Vec<T>>,
    /// Number of boundaries whose adjacent elements are equal.
    pub matches: usize,
}

impl<T> Arrangement<T> {
    /// Run count of the concatenation: total elements minus matches.
    pub fn runs(&self) -> usize {
        self.tuples.iter().map(Vec::len).sum::<usize>() - self.matches
    }
}

/// Arrange a sequence of tuples of distinct elements.
pub fn greedy_arrange<T, S>(tuples: &[S]) -> Arrangement<T>
where
    T: Copy + Ord,
    S: AsRef<[T]>,
{
    let q = tuples.len();
    if q == 0 {
        return Arrangement {
            tuples: Vec::new(),
            matches: 0,
        };
    }
    let sorted: Vec<Vec<T>> = tuples
        .iter()
        .map(|t| {
            let mut v = t.as_ref().to_vec();
            v.sort_unstable();
            assert!(!v.is_empty(), "tuples must be non-empty");
            debug_assert!(
                v.windows(2).all(|w| w[0] != w[1]),
                "tuple elements must be distinct"
            );
            v
        })
        .collect();

    let mut start_ok: Vec<Vec<bool>> = sorted.iter().map(|t| vec![false; t.len()]).collect();
    let mut end_ok: Vec<Vec<bool>> = start_ok.clone();
    start_ok[0].iter_mut().for_each(|m| *m = true);

    for i in 0..q {
        let available = start_ok[i].iter().filter(|&&m| m).count();
        debug_assert!(available >= 1, "marking invariant");
        if sorted[i].len() == 1 {
            end_ok[i][0] = true;
        } else if available >= 2 {
            end_ok[i].iter_mut().for_each(|m| *m = true);
        } else {
            let only = sorted[i][start_ok[i].iter().position(|&m| m).unwrap()];
            for (j, &x) in sorted[i].iter().enumerate() {
                end_ok[i][j] = x != only;
            }
        }
        if i + 1 < q {
            let mut any = false;
            let next: Vec<bool> = sorted[i + 1]
                .iter()
                .map(|x| match sorted[i].binary_search(x) {
                    Ok(j) => {
                        let m = end_ok[i][j];
                        any |= m;
                        m
                    }
                    Err(_) => false,
                })
                .collect();
            if any {
                start_ok[i + 1] = next;
            } else {
                start_ok[i + 1].iter_mut().for_each(|m| *m = true);
            }
        }
    }

    // Backward selection of (start, end) per tuple.
    let mut ends: Vec<(T, T)> = Vec::with_capacity(q);
    let mut next_start: Option<T> = None;
    for i in (0..q).rev() {
        let t = &sorted[i];
        if t.len() == 1 {
            ends.push((t[0], t[0]));
            next_start = Some(t[0]);
            continue;
        }
        let smallest_start_excluding = |excl: T| -> Option<T> {
            t.iter()
                .zip(&start_ok[i])
                .find(|&(&x, &m)| m && x != excl)
                .map(|(&x, _)| x)
        };
        let wanted = next_start.and_then(|want| match t.binary_search(&want) {
            Ok(j) if end_ok[i][j] && smallest_start_excluding(want).is_some() => Some(want),
            _ => None,
        });
        let end = wanted.unwrap_or_else(|| {
            t.iter()
                .zip(&end_ok[i])
                .find(|&(&x, &m)| m && smallest_start_excluding(x).is_some())
                .map(|(&x, _)| x)
                .expect("some available end has a distinct available start")
        });
        let start = smallest_start_excluding(end).expect("distinct available start");
        ends.push((start, end));
        next_start = Some(start);
    }
    ends.reverse();

    let arranged: Vec<Vec<T>> = sorted
        .iter()
        .zip(&ends)
        .map(|(t, &(start, end))| {
            if t.len() == 1 {
                return t.clone();
            }
            let mut v = Vec::with_capacity(t.len());
            v.push(start);
            v.extend(t.iter().copied().filter(|&x| x != start && x != end));
            v.push(end);
            v
        })
        .collect();
    let matches = arranged
        .windows(2)
        .filter(|w| w[0].last() == w[1].first())
        .count();
    Arrangement {
        tuples: arranged,
        matches,
    }
}
