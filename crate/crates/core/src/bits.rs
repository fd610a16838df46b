//! Subsets of a small ground set `{0, .., n-1}` encoded as `u32` bit masks.
//!
//! Every public type in this crate stores sets this way; the helpers here
//! convert to and from sorted index lists (the wire format) and provide the
//! lexicographic order used for canonical storage.

use std::cmp::Ordering;

/// Largest ground set supported anywhere in the crate.
pub const MAX_GROUND: usize = 20;

/// Mask with the lowest `n` bits set.
#[inline]
pub fn full(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

#[inline]
pub fn card(s: u32) -> usize {
    s.count_ones() as usize
}

#[inline]
pub fn contains(s: u32, e: usize) -> bool {
    s >> e & 1 == 1
}

/// Iterator over the elements of `s` in increasing order.
pub fn elements(s: u32) -> impl Iterator<Item = usize> {
    let mut rest = s;
    std::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let e = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(e)
        }
    })
}

pub fn to_indices(s: u32) -> Vec<usize> {
    elements(s).collect()
}

pub fn from_indices(xs: &[usize]) -> u32 {
    xs.iter().fold(0, |acc, &x| acc | 1 << x)
}

/// Lexicographic comparison of the sorted index lists of `a` and `b`.
pub fn lex_cmp(a: u32, b: u32) -> Ordering {
    let mut ia = elements(a);
    let mut ib = elements(b);
    loop {
        match (ia.next(), ib.next()) {
            (None, None) => return Ordering::Equal,
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (Some(x), Some(y)) if x != y => return x.cmp(&y),
            _ => {}
        }
    }
}

/// Order by cardinality first, then lexicographically.
pub fn card_lex_cmp(a: u32, b: u32) -> Ordering {
    card(a).cmp(&card(b)).then_with(|| lex_cmp(a, b))
}

/// All `k`-subsets of `{0, .., n-1}` in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<u32> {
    if k > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(from_indices(&idx));
        let mut i = k;
        while i > 0 && idx[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// All `k`-subsets of the elements of `within`, lexicographic order.
pub fn k_subsets_of(within: u32, k: usize) -> Vec<u32> {
    let elems = to_indices(within);
    k_subsets(elems.len(), k)
        .into_iter()
        .map(|s| elements(s).fold(0u32, |acc, i| acc | 1 << elems[i]))
        .collect()
}

/// All subsets of `s` (including the empty set and `s`), increasing as integers.
pub fn subsets_of(s: u32) -> impl Iterator<Item = u32> {
    let mut cur = Some(0u32);
    std::iter::from_fn(move || {
        let out = cur?;
        cur = if out == s { None } else { Some(out.wrapping_sub(s) & s) };
        Some(out)
    })
}

/// Re-index the elements of `s` that lie in `keep` so that the surviving
/// positions become `0, 1, ..` in increasing order.
pub fn compress(s: u32, keep: u32) -> u32 {
    let mut out = 0u32;
    for (j, e) in elements(keep).enumerate() {
        if contains(s, e) {
            out |= 1 << j;
        }
    }
    out
}

/// Inverse of [`compress`]: spread the bits of `s` onto the elements of `keep`.
pub fn expand(s: u32, keep: u32) -> u32 {
    let mut out = 0u32;
    for (j, e) in elements(keep).enumerate() {
        if contains(s, j) {
            out |= 1 << e;
        }
    }
    out
}

/// Image of `s` under the element map `map`.
pub fn map_set(s: u32, map: &[usize]) -> u32 {
    elements(s).fold(0, |acc, e| acc | 1 << map[e])
}
