//! Distinct arrangements of a multiset in lexicographic order.

/// Iterator over every distinct permutation of a multiset, smallest first.
///
/// Uses the classic next-permutation step, which skips repeats because equal
/// elements are never swapped past each other.
#[derive(Clone, Debug)]
pub struct MultisetPermutations<T> {
    current: Option<Vec<T>>,
}

impl<T: Ord + Clone> MultisetPermutations<T> {
    pub fn new(mut items: Vec<T>) -> Self {
        items.sort();
        MultisetPermutations {
            current: Some(items),
        }
    }
}

impl<T: Ord + Clone> Iterator for MultisetPermutations<T> {
    type Item = Vec<T>;

    fn next(&mut self) -> Option<Vec<T>> {
        let out = self.current.take()?;
        let mut next = out.clone();
        if next_permutation(&mut next) {
            self.current = Some(next);
        }
        Some(out)
    }
}

/// Advances `v` to its lexicographic successor. Returns false when `v` was
/// already the last arrangement.
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

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn counts_match_multinomial() {
        let perms: Vec<_> = MultisetPermutations::new(vec![0, 0, 1, 1]).collect();
        assert_eq!(perms.len(), 6);
        let distinct: BTreeSet<_> = perms.iter().cloned().collect();
        assert_eq!(distinct.len(), 6);
        assert_eq!(perms.first().unwrap(), &vec![0, 0, 1, 1]);
        assert_eq!(perms.last().unwrap(), &vec![1, 1, 0, 0]);
    }

    #[test]
    fn output_is_sorted() {
        let perms: Vec<_> = MultisetPermutations::new(vec![2, 0, 1, 0, 2]).collect();
        assert_eq!(perms.len(), 30);
        assert!(perms.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn empty_and_singleton() {
        assert_eq!(MultisetPermutations::<u8>::new(vec![]).count(), 1);
        assert_eq!(MultisetPermutations::new(vec![7]).count(), 1);
    }
}
