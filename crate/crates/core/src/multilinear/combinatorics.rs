//! Subsets, their lexicographic ranks, and unshuffle permutations.

use alloc::vec::Vec;

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// All increasing `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(binomial(n, k));
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let mut i = k;
        while i > 0 && cur[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        cur[i - 1] += 1;
        for j in i..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Position of an increasing subset of `0..n` in the order of [`subsets`].
pub fn subset_rank(n: usize, subset: &[usize]) -> usize {
    let p = subset.len();
    let mut rank = 0;
    let mut prev: Option<usize> = None;
    for (i, &s) in subset.iter().enumerate() {
        let start = prev.map_or(0, |x| x + 1);
        for c in start..s {
            rank += binomial(n - 1 - c, p - 1 - i);
        }
        prev = Some(s);
    }
    rank
}

/// Sorts `args` and returns the permutation sign, or `None` if an index repeats.
pub fn sort_with_sign(args: &[usize]) -> Option<(Vec<usize>, i32)> {
    let mut v = args.to_vec();
    let mut sign = 1;
    // insertion sort, counting transpositions
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, sign))
}

/// One `(i, n-i)`-unshuffle: `perm[t]` is the (0-based) image of position `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Unshuffle {
    pub perm: Vec<usize>,
    pub sign: i32,
}

/// All permutations σ of `0..n` increasing on `0..i` and on `i..n`, with
/// signs. The first block is chosen directly, so the cost is `C(n, i)`.
pub fn unshuffles(i: usize, n: usize) -> Vec<Unshuffle> {
    assert!(i <= n, "unshuffle block larger than total");
    subsets(n, i)
        .into_iter()
        .map(|first| {
            let mut perm = first.clone();
            let mut inversions = 0usize;
            for x in 0..n {
                if !first.contains(&x) {
                    // every chosen element larger than x sits before it
                    inversions += first.iter().filter(|&&f| f > x).count();
                    perm.push(x);
                }
            }
            Unshuffle {
                perm,
                sign: if inversions % 2 == 0 { 1 } else { -1 },
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_sign(p: &[usize]) -> i32 {
        let mut inv = 0;
        for a in 0..p.len() {
            for b in a + 1..p.len() {
                if p[a] > p[b] {
                    inv += 1;
                }
            }
        }
        if inv % 2 == 0 {
            1
        } else {
            -1
        }
    }

    #[test]
    fn unshuffle_examples() {
        let u = unshuffles(0, 3);
        assert_eq!(u.len(), 1);
        assert_eq!(u[0].perm, [0, 1, 2]);
        assert_eq!(u[0].sign, 1);

        let u = unshuffles(1, 2);
        assert_eq!(u.len(), 2);
        assert_eq!((u[0].perm.as_slice(), u[0].sign), (&[0, 1][..], 1));
        assert_eq!((u[1].perm.as_slice(), u[1].sign), (&[1, 0][..], -1));

        let u = unshuffles(2, 4);
        assert_eq!(u.len(), 6);
        let signs: Vec<i32> = u.iter().map(|s| s.sign).collect();
        assert_eq!(signs, [1, -1, 1, 1, -1, 1]);
        assert_eq!(signs.iter().sum::<i32>(), 2);
    }

    #[test]
    fn unshuffles_match_brute_force() {
        for n in 0..7 {
            for i in 0..=n {
                let u = unshuffles(i, n);
                assert_eq!(u.len(), binomial(n, i));
                for s in &u {
                    assert!(s.perm[..i].windows(2).all(|w| w[0] < w[1]));
                    assert!(s.perm[i..].windows(2).all(|w| w[0] < w[1]));
                    assert_eq!(s.sign, brute_sign(&s.perm));
                }
            }
        }
    }

    #[test]
    fn ranks_follow_enumeration() {
        for n in 0..7 {
            for k in 0..=n {
                for (r, s) in subsets(n, k).iter().enumerate() {
                    assert_eq!(subset_rank(n, s), r);
                }
            }
        }
        assert!(subsets(2, 3).is_empty());
        assert_eq!(subsets(3, 0), [Vec::<usize>::new()]);
    }

    #[test]
    fn sorting_sign() {
        assert_eq!(sort_with_sign(&[2, 0, 1]), Some((alloc::vec![0, 1, 2], 1)));
        assert_eq!(sort_with_sign(&[1, 0]), Some((alloc::vec![0, 1], -1)));
        assert_eq!(sort_with_sign(&[1, 1]), None);
    }
}
