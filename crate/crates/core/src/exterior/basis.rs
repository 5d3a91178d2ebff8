//! Index tuples for the exterior algebra basis.
//!
//! A basis form `dx_I` is keyed by a strictly increasing tuple `I` of
//! 0-based variable indices. Tuples of equal length compare
//! lexicographically, which is the canonical basis order.

/// A strictly increasing tuple of 0-based coordinate indices.
pub type Index = Vec<usize>;

/// All `k`-element increasing tuples from `0..n`, in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Index> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Index, out: &mut Vec<Index>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for m in start..n {
            if n - m < k - cur.len() {
                break;
            }
            cur.push(m);
            rec(m + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// Binomial coefficient `C(n, k)`.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, m| acc * (n - m) / (m + 1))
}

/// The complementary tuple of `idx` in `0..n`.
pub fn complement(idx: &[usize], n: usize) -> Index {
    (0..n).filter(|k| !idx.contains(k)).collect()
}

/// Sorts the concatenation `a ++ b` of two increasing tuples. Returns the
/// merged tuple and the sign of the sorting permutation, or `None` if the
/// tuples share an index.
pub fn merge_sign(a: &[usize], b: &[usize]) -> Option<(Index, i64)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut inversions = 0usize;
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i] < b[j]) {
            out.push(a[i]);
            i += 1;
        } else if i == a.len() || b[j] < a[i] {
            // b[j] jumps over the remaining entries of a
            inversions += a.len() - i;
            out.push(b[j]);
            j += 1;
        } else {
            return None;
        }
    }
    Some((out, if inversions.is_multiple_of(2) { 1 } else { -1 }))
}

/// `dx_k ∧ dx_I = sign · dx_{I ∪ {k}}`; `None` if `k ∈ I`.
pub fn insert_sign(k: usize, idx: &[usize]) -> Option<(Index, i64)> {
    merge_sign(&[k], idx)
}

/// `ι_{∂_k} dx_I = sign · dx_{I \ {k}}`; `None` if `k ∉ I`.
pub fn remove_sign(k: usize, idx: &[usize]) -> Option<(Index, i64)> {
    let pos = idx.iter().position(|&m| m == k)?;
    let mut out = idx.to_vec();
    out.remove(pos);
    Some((out, if pos % 2 == 0 { 1 } else { -1 }))
}

/// Position of `idx` in [`combinations`]`(n, idx.len())`.
pub fn rank_of(idx: &[usize], n: usize) -> usize {
    let k = idx.len();
    let mut r = 0;
    let mut prev = 0;
    for (pos, &m) in idx.iter().enumerate() {
        for skipped in prev..m {
            r += binomial(n - skipped - 1, k - pos - 1);
        }
        prev = m + 1;
    }
    r
}

/// 1-based comma-separated rendering, e.g. `[0, 2]` becomes `"1,3"`.
pub fn render_index(idx: &[usize]) -> String {
    idx.iter()
        .map(|k| (k + 1).to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Inverse of [`render_index`]; checks that the tuple is strictly
/// increasing and inside `1..=n`. Surrounding parentheses are accepted.
pub fn parse_index(s: &str, n: usize) -> Option<Index> {
    let s = s.trim();
    let s = s
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .unwrap_or(s)
        .trim();
    if s.is_empty() {
        return Some(Vec::new());
    }
    let mut out = Vec::new();
    for part in s.split(',') {
        let k: usize = part.trim().parse().ok()?;
        if k == 0 || k > n || out.last().is_some_and(|&l| l >= k - 1) {
            return None;
        }
        out.push(k - 1);
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combinations_are_ordered_and_ranked() {
        for n in 0..6 {
            for k in 0..=n {
                let c = combinations(n, k);
                assert_eq!(c.len(), binomial(n, k));
                assert!(c.windows(2).all(|w| w[0] < w[1]));
                for (r, idx) in c.iter().enumerate() {
                    assert_eq!(rank_of(idx, n), r);
                }
            }
        }
    }

    #[test]
    fn merge_signs() {
        assert_eq!(merge_sign(&[1], &[0]), Some((vec![0, 1], -1)));
        assert_eq!(merge_sign(&[0, 2], &[1, 3]), Some((vec![0, 1, 2, 3], -1)));
        assert_eq!(merge_sign(&[0, 1], &[1]), None);
        assert_eq!(remove_sign(3, &[0, 3]), Some((vec![0], -1)));
    }

    #[test]
    fn index_round_trip() {
        assert_eq!(render_index(&[0, 2]), "1,3");
        assert_eq!(parse_index("1,3", 4), Some(vec![0, 2]));
        assert_eq!(parse_index("3,1", 4), None);
        assert_eq!(parse_index("5", 4), None);
        assert_eq!(parse_index("", 4), Some(vec![]));
    }
}
