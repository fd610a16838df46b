//! Lifts and quotients, single-element lift witnesses, fillings, and majors.

use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits;
use crate::flag::FlagMatroid;
use crate::matroid::{flats_from_table, Matroid};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LiftError {
    #[error("matroids live on ground sets of sizes {0} and {1}")]
    GroundSetMismatch(usize, usize),
    #[error("upper rank {upper} is not lower rank {lower} plus one")]
    NotElementaryLift { lower: usize, upper: usize },
    #[error("witness construction failed: {0}")]
    ConstructionFailed(String),
    #[error("flag matroid is not full (ranks {0:?})")]
    NotFull(Vec<usize>),
    #[error("search budget of {0} candidates exhausted")]
    BudgetExhausted(u64),
    #[error("lift characterizations disagree: {0}")]
    CharacterizationsDisagree(String),
    #[error("malformed block partition: {0}")]
    BadBlocks(String),
}

impl LiftError {
    pub fn code(&self) -> &'static str {
        match self {
            LiftError::GroundSetMismatch(..) => "ground_set_mismatch",
            LiftError::NotElementaryLift { .. } => "not_elementary_lift",
            LiftError::ConstructionFailed(_) => "construction_failed",
            LiftError::NotFull(_) => "not_full",
            LiftError::BudgetExhausted(_) => "budget_exhausted",
            LiftError::CharacterizationsDisagree(_) => "characterizations_disagree",
            LiftError::BadBlocks(_) => "bad_blocks",
        }
    }
}

/// Which characterization of "`upper` is a lift of `lower`" to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LiftMethod {
    /// Every flat of the lower matroid is a flat of the upper one.
    Flats,
    /// The dual of the lower matroid is a lift of the dual of the upper one.
    Duals,
    /// `cl_upper(X) ⊆ cl_lower(X)` for every `X`.
    Closures,
    /// The basis-domination condition.
    Bases,
    /// All four, asserting they agree.
    All,
}

/// A counterexample to one characterization.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LiftFailure {
    /// A flat of the lower matroid that is not a flat of the upper one.
    Flat { set: Vec<usize> },
    /// A flat of the upper dual that is not a flat of the lower dual.
    DualFlat { set: Vec<usize> },
    /// A set whose upper closure escapes its lower closure.
    Closure { set: Vec<usize> },
    /// A basis of the upper matroid and an outside element with no dominating lower basis.
    Basis { basis: Vec<usize>, element: usize },
}

/// First flat of `lower` (cardinality-then-lex order) that is not a flat of `upper`.
pub fn flat_witness(upper: &Matroid, lower: &Matroid) -> Option<u32> {
    let ru = upper.rank_table();
    let full = bits::full(upper.n());
    flats_from_table(lower.n(), &lower.rank_table()).into_iter().find(|&s| {
        let r = ru[s as usize];
        bits::elements(full & !s).any(|e| ru[(s | 1 << e) as usize] == r)
    })
}

fn closure_witness(upper: &Matroid, lower: &Matroid) -> Option<u32> {
    let ru = upper.rank_table();
    let rl = lower.rank_table();
    let n = upper.n();
    let cl = |t: &[u8], s: u32| -> u32 {
        (0..n).filter(|&e| t[(s | 1 << e) as usize] == t[s as usize]).fold(s, |a, e| a | 1 << e)
    };
    let mut sets: Vec<u32> = (0..=bits::full(n)).collect();
    sets.sort_by(|&a, &b| bits::card_lex_cmp(a, b));
    sets.into_iter().find(|&s| cl(&ru, s) & !cl(&rl, s) != 0)
}

fn basis_witness(upper: &Matroid, lower: &Matroid) -> Option<(u32, usize)> {
    let full = bits::full(upper.n());
    let swaps = |m: &Matroid, s: u32| -> u32 {
        bits::elements(s).filter(|&f| m.is_basis(s & !(1 << f))).fold(0, |a, f| a | 1 << f)
    };
    for &b in upper.bases() {
        for e in bits::elements(full & !b) {
            let top = swaps(upper, b | 1 << e);
            let ok = lower.bases().iter().any(|&bl| bl & !b == 0 && swaps(lower, bl | 1 << e) & !top == 0);
            if !ok {
                return Some((b, e));
            }
        }
    }
    None
}

fn failure(upper: &Matroid, lower: &Matroid, method: LiftMethod) -> Option<LiftFailure> {
    match method {
        LiftMethod::Flats => flat_witness(upper, lower).map(|s| LiftFailure::Flat { set: bits::to_indices(s) }),
        LiftMethod::Duals => flat_witness(&lower.dual(), &upper.dual())
            .map(|s| LiftFailure::DualFlat { set: bits::to_indices(s) }),
        LiftMethod::Closures => {
            closure_witness(upper, lower).map(|s| LiftFailure::Closure { set: bits::to_indices(s) })
        }
        LiftMethod::Bases => basis_witness(upper, lower)
            .map(|(b, e)| LiftFailure::Basis { basis: bits::to_indices(b), element: e }),
        LiftMethod::All => unreachable!("expanded by is_lift"),
    }
}

/// Decide whether `upper` is a lift of `lower`; on failure, return a
/// counterexample to the chosen characterization (the flats one for `All`).
pub fn is_lift(upper: &Matroid, lower: &Matroid, method: LiftMethod) -> Result<Option<LiftFailure>, LiftError> {
    if upper.n() != lower.n() {
        return Err(LiftError::GroundSetMismatch(upper.n(), lower.n()));
    }
    if method != LiftMethod::All {
        return Ok(failure(upper, lower, method));
    }
    let verdicts: Vec<Option<LiftFailure>> =
        [LiftMethod::Flats, LiftMethod::Duals, LiftMethod::Closures, LiftMethod::Bases]
            .into_iter()
            .map(|m| failure(upper, lower, m))
            .collect();
    let holds = verdicts[0].is_none();
    if let Some(bad) = verdicts.iter().find(|v| v.is_none() != holds) {
        return Err(LiftError::CharacterizationsDisagree(format!("{:?} vs {:?}", verdicts[0], bad)));
    }
    Ok(verdicts.into_iter().next().flatten())
}

/// `Q / x == lower` and `Q \ x == upper`, with survivors re-indexed.
pub fn verify_quotient_pair(q: &Matroid, x: u32, lower: &Matroid, upper: &Matroid) -> Result<bool, LiftError> {
    let rest = q.n() - bits::card(x & bits::full(q.n()));
    if x & !bits::full(q.n()) != 0 || lower.n() != rest || upper.n() != rest {
        return Err(LiftError::GroundSetMismatch(q.n(), lower.n()));
    }
    Ok(q.minor_unchecked(x, 0) == *lower && q.minor_unchecked(0, x) == *upper)
}

/// The unique single-element coextension `Q` on `n + 1` elements with
/// `Q / n == lower` and `Q \ n == upper`.
pub fn elementary_witness(lower: &Matroid, upper: &Matroid) -> Result<Matroid, LiftError> {
    if lower.n() != upper.n() {
        return Err(LiftError::GroundSetMismatch(lower.n(), upper.n()));
    }
    if upper.rank() != lower.rank() + 1 {
        return Err(LiftError::NotElementaryLift { lower: lower.rank(), upper: upper.rank() });
    }
    let n = lower.n();
    if n + 1 > bits::MAX_GROUND {
        return Err(LiftError::ConstructionFailed(format!("ground set of {} elements too large", n + 1)));
    }
    let mut bases = upper.bases().to_vec();
    bases.extend(lower.bases().iter().map(|&b| b | 1 << n));
    let q = Matroid::from_bases(n + 1, bases).map_err(|e| LiftError::ConstructionFailed(e.to_string()))?;
    if !verify_quotient_pair(&q, 1 << n, lower, upper)? {
        return Err(LiftError::ConstructionFailed("minors do not reproduce the pair".into()));
    }
    Ok(q)
}

/// One lift witness per consecutive pair; the extra element of each is `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftWitnessSequence {
    pub witnesses: Vec<Matroid>,
}

pub fn lift_witness_sequence(f: &FlagMatroid) -> Result<LiftWitnessSequence, LiftError> {
    if !f.is_full() {
        return Err(LiftError::NotFull(f.ranks()));
    }
    let witnesses = f
        .layers()
        .windows(2)
        .map(|w| elementary_witness(&w[0], &w[1]))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(LiftWitnessSequence { witnesses })
}

/// Visit every filling of `f` in a fixed order, stopping early when the
/// visitor breaks. Each candidate family examined counts against `budget`.
/// Returns whether the visitor stopped the enumeration.
pub fn visit_fillings(
    f: &FlagMatroid,
    budget: u64,
    visit: &mut dyn FnMut(&FlagMatroid) -> ControlFlow<()>,
) -> Result<bool, LiftError> {
    let mut walker = FillingWalker { target: f.layers(), budget, used: 0, visit };
    let first = f.layers()[0].clone();
    match walker.walk(vec![first], 1)? {
        ControlFlow::Break(()) => Ok(true),
        ControlFlow::Continue(()) => Ok(false),
    }
}

/// All fillings of `f`; fails rather than truncating when `budget` runs out.
pub fn enumerate_fillings(f: &FlagMatroid, budget: u64) -> Result<Vec<FlagMatroid>, LiftError> {
    let mut out = Vec::new();
    visit_fillings(f, budget, &mut |g| {
        out.push(g.clone());
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

struct FillingWalker<'a> {
    target: &'a [Matroid],
    budget: u64,
    used: u64,
    visit: &'a mut dyn FnMut(&FlagMatroid) -> ControlFlow<()>,
}

impl FillingWalker<'_> {
    /// `prefix` is full and ends below `target[next]` (or is complete).
    fn walk(&mut self, mut prefix: Vec<Matroid>, next: usize) -> Result<ControlFlow<()>, LiftError> {
        let last = prefix.last().expect("prefix is nonempty").clone();
        let Some(upper) = self.target.get(next) else {
            let flag = FlagMatroid::from_sequence_unchecked(last.n(), prefix);
            return Ok((self.visit)(&flag));
        };
        if upper.rank() == last.rank() + 1 {
            prefix.push(upper.clone());
            return self.walk(prefix, next + 1);
        }
        let n = last.n();
        let candidates: Vec<u32> = bits::k_subsets(n, last.rank() + 1)
            .into_iter()
            .filter(|&s| upper.is_independent(s) && last.is_spanning(s))
            .collect();
        let m = candidates.len();
        let mut mask: u64 = 0;
        loop {
            mask += 1;
            if m < 64 && mask >> m != 0 {
                return Ok(ControlFlow::Continue(()));
            }
            self.used += 1;
            if self.used > self.budget {
                return Err(LiftError::BudgetExhausted(self.budget));
            }
            let family: Vec<u32> = (0..m).filter(|&i| mask >> i & 1 == 1).map(|i| candidates[i]).collect();
            let Ok(mid) = Matroid::from_bases(n, family) else { continue };
            if flat_witness(&mid, &last).is_some() || flat_witness(upper, &mid).is_some() {
                continue;
            }
            let mut extended = prefix.clone();
            extended.push(mid);
            if let ControlFlow::Break(()) = self.walk(extended, next)? {
                return Ok(ControlFlow::Break(()));
            }
        }
    }
}

/// A matroid `Q` on `E ⊔ X` and an ordered partition of `X` into blocks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MajorStructure {
    pub matroid: Matroid,
    pub blocks: Vec<Vec<usize>>,
}

impl MajorStructure {
    pub fn verify(&self, f: &FlagMatroid) -> Result<bool, LiftError> {
        verify_major(&self.matroid, &self.blocks, f)
    }
}

/// `X` is independent in `Q` and, for every layer `i`, contracting the
/// blocks from `i` on and deleting the earlier ones yields `M_i`.
pub fn verify_major(q: &Matroid, blocks: &[Vec<usize>], f: &FlagMatroid) -> Result<bool, LiftError> {
    let mut masks = Vec::with_capacity(blocks.len());
    let mut union = 0u32;
    for block in blocks {
        if let Some(&e) = block.iter().find(|&&e| e >= q.n()) {
            return Err(LiftError::BadBlocks(format!("element {e} outside ground set")));
        }
        let mask = bits::from_indices(block);
        if mask & union != 0 || bits::card(mask) != block.len() {
            return Err(LiftError::BadBlocks("blocks overlap".into()));
        }
        union |= mask;
        masks.push(mask);
    }
    if q.n() - bits::card(union) != f.n() {
        return Err(LiftError::GroundSetMismatch(q.n() - bits::card(union), f.n()));
    }
    if blocks.len() + 1 != f.layers().len() || !q.is_independent(union) {
        return Ok(false);
    }
    Ok(f.layers().iter().enumerate().all(|(i, layer)| {
        let contract = masks[i..].iter().fold(0, |a, &m| a | m);
        let delete = masks[..i].iter().fold(0, |a, &m| a | m);
        q.minor_unchecked(contract, delete) == *layer
    }))
}

/// Brute-force search for a major on `n + (r_k - r_1)` elements. The extra
/// elements are `n, n+1, ..`; bases inside `E` are forced to be those of
/// the top layer. Each candidate basis family counts against `budget`.
pub fn search_major(f: &FlagMatroid, budget: u64) -> Result<Option<MajorStructure>, LiftError> {
    let ranks = f.ranks();
    let n = f.n();
    let top = f.layers().last().expect("flags are nonempty");
    let extra = ranks[ranks.len() - 1] - ranks[0];
    let total = n + extra;
    if total > bits::MAX_GROUND {
        return Err(LiftError::BudgetExhausted(0));
    }
    let x_mask = bits::full(total) & !bits::full(n);
    let sizes: Vec<usize> = ranks.windows(2).map(|w| w[1] - w[0]).collect();
    let partitions = ordered_partitions(x_mask, &sizes);
    let candidates: Vec<u32> =
        bits::k_subsets(total, top.rank()).into_iter().filter(|&s| s & x_mask != 0).collect();
    let m = candidates.len();
    let mut used = 0u64;
    let mut mask: u64 = 0;
    loop {
        mask += 1;
        if m < 64 && mask >> m != 0 {
            return Ok(None);
        }
        used += 1;
        if used > budget {
            return Err(LiftError::BudgetExhausted(budget));
        }
        let mut family = top.bases().to_vec();
        family.extend((0..m).filter(|&i| mask >> i & 1 == 1).map(|i| candidates[i]));
        if !family.iter().any(|&b| b & x_mask == x_mask) {
            continue;
        }
        let Ok(q) = Matroid::from_bases(total, family) else { continue };
        for blocks in &partitions {
            if verify_major(&q, blocks, f)? {
                return Ok(Some(MajorStructure { matroid: q, blocks: blocks.clone() }));
            }
        }
    }
}

/// Ordered partitions of `set` into blocks of the given sizes, lexicographic
/// in the sequence of blocks.
fn ordered_partitions(set: u32, sizes: &[usize]) -> Vec<Vec<Vec<usize>>> {
    let Some((&first, rest)) = sizes.split_first() else {
        return if set == 0 { vec![vec![]] } else { vec![] };
    };
    let mut out = Vec::new();
    for block in bits::k_subsets_of(set, first) {
        for mut tail in ordered_partitions(set & !block, rest) {
            tail.insert(0, bits::to_indices(block));
            out.push(tail);
        }
    }
    out
}

#[derive(Serialize, Deserialize)]
struct WitnessJson {
    matroid: Matroid,
    extra: usize,
}

impl Serialize for LiftWitnessSequence {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let items: Vec<WitnessJson> = self
            .witnesses
            .iter()
            .map(|q| WitnessJson { matroid: q.clone(), extra: q.n() - 1 })
            .collect();
        items.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LiftWitnessSequence {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let items = Vec::<WitnessJson>::deserialize(d)?;
        let mut witnesses = Vec::with_capacity(items.len());
        for item in items {
            if item.extra + 1 != item.matroid.n() {
                return Err(D::Error::custom("the extra element must be the last one"));
            }
            witnesses.push(item.matroid);
        }
        Ok(LiftWitnessSequence { witnesses })
    }
}
