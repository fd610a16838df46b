//! Backtracking search for ground-set bijections that preserve a list of
//! rank tables simultaneously.
//!
//! A matroid contributes one table; a flag matroid contributes one per layer.
//! Candidates for element `x` are tried in increasing order, so the first
//! complete assignment is the lexicographically least bijection.

use crate::bits;

/// One side of an isomorphism problem.
pub(crate) struct RankProfile {
    pub n: usize,
    /// `tables[l][S]` is the rank of `S` in layer `l`.
    pub tables: Vec<Vec<u8>>,
    /// Per-element invariants; must be equal for matched elements.
    pub signatures: Vec<Vec<u32>>,
}

impl RankProfile {
    pub fn new(n: usize, tables: Vec<Vec<u8>>) -> Self {
        let signatures = (0..n)
            .map(|e| {
                let mut sig = Vec::with_capacity(tables.len() * 3);
                for t in &tables {
                    let top = t[bits::full(n) as usize];
                    let bases_with_e = (0..t.len() as u32)
                        .filter(|&s| bits::contains(s, e) && t[s as usize] == top)
                        .filter(|&s| bits::card(s) == top as usize)
                        .count() as u32;
                    let pair_rank: u32 =
                        (0..n).filter(|&f| f != e).map(|f| t[(1 << e | 1 << f) as usize] as u32).sum();
                    sig.push(t[1 << e] as u32);
                    sig.push(bases_with_e);
                    sig.push(pair_rank);
                }
                sig
            })
            .collect();
        RankProfile { n, tables, signatures }
    }
}

/// Lexicographically least `map` with `a.tables[l][S] == b.tables[l][map(S)]`
/// for every layer `l` and every subset `S`.
pub(crate) fn find_bijection(a: &RankProfile, b: &RankProfile) -> Option<Vec<usize>> {
    if a.n != b.n || a.tables.len() != b.tables.len() {
        return None;
    }
    let mut sa = a.signatures.clone();
    let mut sb = b.signatures.clone();
    sa.sort();
    sb.sort();
    if sa != sb {
        return None;
    }
    let n = a.n;
    let mut state = State {
        a,
        b,
        map: vec![usize::MAX; n],
        used: vec![false; n],
        image: vec![0; 1 << n],
    };
    state.extend(0).then_some(state.map)
}

struct State<'a> {
    a: &'a RankProfile,
    b: &'a RankProfile,
    map: Vec<usize>,
    used: Vec<bool>,
    /// `image[S]` for every `S` over the already-assigned prefix `0..x`.
    image: Vec<u32>,
}

impl State<'_> {
    fn extend(&mut self, x: usize) -> bool {
        if x == self.a.n {
            return true;
        }
        for y in 0..self.b.n {
            if self.used[y] || self.a.signatures[x] != self.b.signatures[y] {
                continue;
            }
            if !self.consistent(x, y) {
                continue;
            }
            self.map[x] = y;
            self.used[y] = true;
            if self.extend(x + 1) {
                return true;
            }
            self.used[y] = false;
        }
        self.map[x] = usize::MAX;
        false
    }

    /// Fill `image` for subsets whose largest element is `x` and check ranks.
    fn consistent(&mut self, x: usize, y: usize) -> bool {
        let low = 1usize << x;
        for s in 0..low {
            let set = low | s;
            let img = self.image[s] | 1 << y;
            self.image[set] = img;
            for (ta, tb) in self.a.tables.iter().zip(&self.b.tables) {
                if ta[set] != tb[img as usize] {
                    return false;
                }
            }
        }
        true
    }
}
