//! Canonical multi-index enumeration and ranking.
//!
//! Indices are 0-based. A multiset index of order `m` over dimension `N`
//! is a non-decreasing tuple; a subset index is strictly increasing. Both
//! are ranked in lexicographic order so a tensor can live in a flat `Vec`.

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// `m! / Π mult!` for a sorted multi-index: the number of distinct
/// orderings of its entries.
pub fn multinomial(sorted: &[usize]) -> u64 {
    let mut out = factorial(sorted.len());
    let mut run = 1u64;
    for w in sorted.windows(2) {
        if w[0] == w[1] {
            run += 1;
            out /= run;
        } else {
            run = 1;
        }
    }
    out
}

/// Rearranges into the next lexicographic permutation; `false` once the
/// sequence is the last one. Repeated values yield each distinct ordering
/// exactly once when started from sorted order.
pub fn next_permutation(v: &mut [usize]) -> bool {
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

/// Sorts in place and returns the permutation parity (+1 / -1), or `None`
/// when an index repeats.
pub fn sort_with_parity(v: &mut [usize]) -> Option<i8> {
    let mut sign = 1i8;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
        if j > 0 && v[j - 1] == v[j] {
            return None;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some(sign)
}

/// Ranking of non-decreasing tuples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultisetIndexer {
    dim: usize,
    order: usize,
    // prefix[len][v] = number of tuples of length `len` that start below `v`,
    // all values in [lo, dim) with lo the running minimum.
    prefix: Vec<Vec<usize>>,
    len: usize,
}

impl MultisetIndexer {
    pub fn new(dim: usize, order: usize) -> Self {
        let count = |len: usize, lo: usize| -> usize {
            if len == 0 {
                1
            } else if lo >= dim {
                0
            } else {
                binomial(dim - lo + len - 1, len)
            }
        };
        let prefix = (0..order.max(1))
            .map(|len| {
                let mut row = Vec::with_capacity(dim + 1);
                let mut acc = 0;
                row.push(0);
                for u in 0..dim {
                    acc += count(len, u);
                    row.push(acc);
                }
                row
            })
            .collect();
        debug_assert!(dim >= 1);
        let len = binomial(dim + order - 1, order);
        MultisetIndexer { dim, order, prefix, len }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Rank of a sorted tuple.
    pub fn rank(&self, sorted: &[usize]) -> usize {
        debug_assert_eq!(sorted.len(), self.order);
        debug_assert!(sorted.windows(2).all(|w| w[0] <= w[1]));
        let mut r = 0;
        let mut prev = 0;
        for (pos, &v) in sorted.iter().enumerate() {
            let row = &self.prefix[self.order - pos - 1];
            r += row[v] - row[prev];
            prev = v;
        }
        r
    }

    pub fn iter(&self) -> MultisetIter {
        MultisetIter {
            dim: self.dim,
            current: if self.len == 0 { None } else { Some(vec![0; self.order]) },
        }
    }
}

pub struct MultisetIter {
    dim: usize,
    current: Option<Vec<usize>>,
}

impl Iterator for MultisetIter {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let mut next = out.clone();
        let mut pos = next.len();
        while pos > 0 && next[pos - 1] + 1 == self.dim {
            pos -= 1;
        }
        if pos > 0 {
            let v = next[pos - 1] + 1;
            for x in &mut next[pos - 1..] {
                *x = v;
            }
            self.current = Some(next);
        }
        Some(out)
    }
}

/// All sorted multi-indices of `order` entries from `0..dim`, in
/// lexicographic order.
pub fn multiset_indices(dim: usize, order: usize) -> MultisetIter {
    MultisetIndexer::new(dim, order).iter()
}

/// Ranking of strictly increasing tuples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetIndexer {
    dim: usize,
    order: usize,
    prefix: Vec<Vec<usize>>,
    len: usize,
}

impl SubsetIndexer {
    pub fn new(dim: usize, order: usize) -> Self {
        // tuples of length `len` with every value > u
        let count = |len: usize, u: usize| binomial(dim - u - 1, len);
        let prefix = (0..order.max(1))
            .map(|len| {
                let mut row = Vec::with_capacity(dim + 1);
                let mut acc = 0;
                row.push(0);
                for u in 0..dim {
                    acc += count(len, u);
                    row.push(acc);
                }
                row
            })
            .collect();
        SubsetIndexer { dim, order, prefix, len: binomial(dim, order) }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn rank(&self, increasing: &[usize]) -> usize {
        debug_assert_eq!(increasing.len(), self.order);
        debug_assert!(increasing.windows(2).all(|w| w[0] < w[1]));
        let mut r = 0;
        let mut lo = 0;
        for (pos, &v) in increasing.iter().enumerate() {
            let row = &self.prefix[self.order - pos - 1];
            r += row[v] - row[lo];
            lo = v + 1;
        }
        r
    }

    pub fn iter(&self) -> SubsetIter {
        SubsetIter {
            dim: self.dim,
            current: if self.len == 0 { None } else { Some((0..self.order).collect()) },
        }
    }
}

pub struct SubsetIter {
    dim: usize,
    current: Option<Vec<usize>>,
}

impl Iterator for SubsetIter {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let k = out.len();
        let mut next = out.clone();
        let mut pos = k;
        while pos > 0 && next[pos - 1] == self.dim - k + pos - 1 {
            pos -= 1;
        }
        if pos > 0 {
            next[pos - 1] += 1;
            for i in pos..k {
                next[i] = next[i - 1] + 1;
            }
            self.current = Some(next);
        }
        Some(out)
    }
}

/// Merge two sorted tuples into `out`.
pub(crate) fn merge_sorted(a: &[usize], b: &[usize], out: &mut Vec<usize>) {
    out.clear();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i] <= b[j] {
            out.push(a[i]);
            i += 1;
        } else {
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
}

/// Insert `v` into a sorted tuple.
pub(crate) fn insert_sorted(sorted: &[usize], v: usize, out: &mut Vec<usize>) {
    out.clear();
    let at = sorted.partition_point(|&x| x <= v);
    out.extend_from_slice(&sorted[..at]);
    out.push(v);
    out.extend_from_slice(&sorted[at..]);
}
