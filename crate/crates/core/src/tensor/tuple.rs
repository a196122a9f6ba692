//! Index-tuple helpers: packing into sortable keys, canonical forms,
//! permutation parity and the combinatorial enumerators.

/// Packed index tuple. Index `p` occupies byte `15 - p`, so numeric order on
/// keys of equal rank is lexicographic order on the tuples.
pub type Key = u128;

pub const MAX_RANK: usize = 16;
pub const MAX_DIM: usize = 256;

#[inline]
pub fn pack(t: &[usize]) -> Key {
    debug_assert!(t.len() <= MAX_RANK);
    let mut k: Key = 0;
    for (p, &i) in t.iter().enumerate() {
        debug_assert!(i < MAX_DIM);
        k |= (i as Key) << (8 * (15 - p));
    }
    k
}

pub fn unpack(key: Key, rank: usize) -> Vec<usize> {
    (0..rank).map(|p| ((key >> (8 * (15 - p))) & 0xff) as usize).collect()
}

#[inline]
pub fn unpack_into(key: Key, out: &mut [usize]) {
    for (p, o) in out.iter_mut().enumerate() {
        *o = ((key >> (8 * (15 - p))) & 0xff) as usize;
    }
}

/// Sorts in place and returns the parity (+1/-1) of the sorting permutation,
/// or 0 if two entries coincide.
#[inline]
pub fn sort_with_parity(t: &mut [usize]) -> i32 {
    let mut sign = 1;
    for i in 1..t.len() {
        let mut j = i;
        while j > 0 && t[j - 1] > t[j] {
            t.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if t.windows(2).any(|w| w[0] == w[1]) {
        0
    } else {
        sign
    }
}

/// Key of the nondecreasing rearrangement of `t`.
#[inline]
pub fn sym_key(t: &[usize]) -> Key {
    let mut buf = [0usize; MAX_RANK];
    let s = &mut buf[..t.len()];
    s.copy_from_slice(t);
    s.sort_unstable();
    pack(s)
}

/// Key of the increasing rearrangement of `t` together with the permutation
/// sign; `None` if `t` has a repeated index.
#[inline]
pub fn alt_key(t: &[usize]) -> Option<(Key, f64)> {
    let mut buf = [0usize; MAX_RANK];
    let s = &mut buf[..t.len()];
    s.copy_from_slice(t);
    match sort_with_parity(s) {
        0 => None,
        sign => Some((pack(s), sign as f64)),
    }
}

pub fn factorial(k: usize) -> f64 {
    (1..=k).map(|x| x as f64).product()
}

pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0f64;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc.round()
}

/// Number of distinct rearrangements of a sorted tuple: `m! / prod(count!)`.
pub fn multiplicity(sorted: &[usize]) -> f64 {
    let mut denom = 1.0;
    let mut run = 1usize;
    for w in sorted.windows(2) {
        if w[0] == w[1] {
            run += 1;
            denom *= run as f64;
        } else {
            run = 1;
        }
    }
    factorial(sorted.len()) / denom
}

/// Advances a nondecreasing tuple over `0..dim` to its lexicographic successor.
pub fn next_nondecreasing(t: &mut [usize], dim: usize) -> bool {
    let m = t.len();
    for p in (0..m).rev() {
        if t[p] + 1 < dim {
            let v = t[p] + 1;
            for q in t[p..].iter_mut() {
                *q = v;
            }
            return true;
        }
    }
    false
}

/// Advances a strictly increasing tuple over `0..dim` to its lexicographic successor.
pub fn next_increasing(t: &mut [usize], dim: usize) -> bool {
    let m = t.len();
    for p in (0..m).rev() {
        if t[p] + (m - p) < dim {
            t[p] += 1;
            for q in p + 1..m {
                t[q] = t[q - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Calls `f` on every nondecreasing `rank`-tuple over `0..dim`, in lexicographic order.
pub fn for_each_nondecreasing(rank: usize, dim: usize, mut f: impl FnMut(&[usize])) {
    if dim == 0 {
        return;
    }
    let mut t = vec![0usize; rank];
    loop {
        f(&t);
        if !next_nondecreasing(&mut t, dim) {
            break;
        }
    }
}

/// Calls `f` on every strictly increasing `rank`-tuple over `0..dim`, in lexicographic order.
pub fn for_each_increasing(rank: usize, dim: usize, mut f: impl FnMut(&[usize])) {
    if rank > dim {
        return;
    }
    let mut t: Vec<usize> = (0..rank).collect();
    loop {
        f(&t);
        if !next_increasing(&mut t, dim) {
            break;
        }
    }
}

/// Standard next-permutation; returns `false` (and leaves `t` sorted) after the last one.
pub fn next_permutation(t: &mut [usize]) -> bool {
    let n = t.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && t[i - 1] >= t[i] {
        i -= 1;
    }
    if i == 0 {
        t.reverse();
        return false;
    }
    let mut j = n - 1;
    while t[j] <= t[i - 1] {
        j -= 1;
    }
    t.swap(i - 1, j);
    t[i..].reverse();
    true
}

/// Calls `f` once per distinct rearrangement of the sorted multiset `sorted`.
pub fn for_each_distinct_permutation(sorted: &[usize], mut f: impl FnMut(&[usize])) {
    let mut t = sorted.to_vec();
    loop {
        f(&t);
        if !next_permutation(&mut t) {
            break;
        }
    }
}

/// All permutations of `0..k` with their signs, in lexicographic order.
pub fn signed_permutations(k: usize) -> Vec<(Vec<usize>, f64)> {
    let mut out = Vec::with_capacity(factorial(k) as usize);
    let mut p: Vec<usize> = (0..k).collect();
    loop {
        let mut s = p.clone();
        let sign = sort_with_parity(&mut s) as f64;
        out.push((p.clone(), sign));
        if !next_permutation(&mut p) {
            break;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pack_order_is_lexicographic() {
        let a = pack(&[0, 3, 7]);
        let b = pack(&[1, 0, 0]);
        let c = pack(&[0, 4, 0]);
        assert!(a < c && c < b);
        assert_eq!(unpack(a, 3), vec![0, 3, 7]);
    }

    #[test]
    fn parity() {
        let mut t = [2, 0, 1];
        assert_eq!(sort_with_parity(&mut t), 1);
        let mut t = [1, 0, 2];
        assert_eq!(sort_with_parity(&mut t), -1);
        let mut t = [1, 0, 1];
        assert_eq!(sort_with_parity(&mut t), 0);
        assert!(alt_key(&[3, 3]).is_none());
    }

    #[test]
    fn enumerator_counts() {
        let mut c = 0;
        for_each_nondecreasing(3, 8, |_| c += 1);
        assert_eq!(c as f64, binomial(10, 3));
        let mut c = 0;
        for_each_increasing(5, 8, |_| c += 1);
        assert_eq!(c as f64, binomial(8, 5));
        let mut c = 0;
        for_each_distinct_permutation(&[0, 0, 1, 2], |_| c += 1);
        assert_eq!(c as f64, multiplicity(&[0, 0, 1, 2]));
        assert_eq!(multiplicity(&[0, 0, 1, 2]), 12.0);
    }

    #[test]
    fn signed_perm_sum_is_zero() {
        let s: f64 = signed_permutations(4).iter().map(|(_, s)| s).sum();
        assert_eq!(s, 0.0);
        assert_eq!(signed_permutations(4).len(), 24);
    }
}
