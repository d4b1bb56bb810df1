//! Small permutation utilities shared by the exhaustive searches.

/// Advance `v` to its lexicographic successor in place; returns `false` when
/// `v` was already the last permutation.
pub fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Visit every permutation of `items` in lexicographic order (the slice is
/// sorted first).
pub fn for_each_permutation<T: Ord + Clone>(items: &[T], mut f: impl FnMut(&[T])) {
    let mut v = items.to_vec();
    v.sort_unstable();
    loop {
        f(&v);
        if !next_permutation(&mut v) {
            break;
        }
    }
}

/// `n!` as a `u128`, or `None` on overflow.
pub fn factorial(n: usize) -> Option<u128> {
    let mut acc: u128 = 1;
    for i in 2..=n as u128 {
        acc = acc.checked_mul(i)?;
    }
    Some(acc)
}
