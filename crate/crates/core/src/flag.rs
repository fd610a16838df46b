//! Flag matroids as feasible-set families and as sequences of lifts.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::{self, MAX_GROUND};
use crate::iso::{self, RankProfile};
use crate::lift;
use crate::matroid::{self, Matroid, MatroidError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FlagError {
    #[error("feasible family is empty")]
    Empty,
    #[error("ground set of size {0} exceeds {MAX_GROUND}")]
    GroundTooLarge(usize),
    #[error("element {index} outside ground set of size {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("layer {layer} is not a basis family: {source}")]
    LayerNotMatroid { layer: usize, source: MatroidError },
    #[error("layer {layer} is not a lift of layer {}: flat {flat:?} of the lower layer is not a flat of the upper one", layer - 1)]
    NotALift { layer: usize, flat: Vec<usize> },
    #[error("layers {0} and {1} have equal rank")]
    RankCollision(usize, usize),
    #[error("layers live on ground sets of different sizes")]
    GroundMismatch,
    #[error("operation leaves no feasible set")]
    EmptyResult,
    #[error("no feasible set has cardinality {0}")]
    NoSuchLayer(usize),
    #[error("cannot chop the only layer")]
    LastLayer,
    #[error("contraction and deletion sets overlap")]
    OverlappingSets,
}

impl FlagError {
    pub fn code(&self) -> &'static str {
        match self {
            FlagError::Empty => "empty_family",
            FlagError::GroundTooLarge(_) => "ground_too_large",
            FlagError::IndexOutOfRange { .. } => "index_out_of_range",
            FlagError::LayerNotMatroid { .. } => "layer_not_matroid",
            FlagError::NotALift { .. } => "not_a_lift",
            FlagError::RankCollision(..) => "rank_collision",
            FlagError::GroundMismatch => "ground_mismatch",
            FlagError::EmptyResult => "empty_result",
            FlagError::NoSuchLayer(_) => "no_such_layer",
            FlagError::LastLayer => "last_layer",
            FlagError::OverlappingSets => "overlapping_sets",
        }
    }
}

/// Outcome of checking the two feasible-set axioms directly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum AxiomVerdict {
    Pass,
    /// Equal-size exchange fails: no `y` in `g \ f` makes `g + x - y` feasible.
    Axiom1 { f: Vec<usize>, g: Vec<usize>, x: usize },
    /// No feasible `G` one layer down inside `f` dominates `f` at `e`.
    Axiom2 { f: Vec<usize>, e: usize },
}

impl AxiomVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, AxiomVerdict::Pass)
    }
}

/// Check both feasible-set axioms by brute force over `family`.
pub fn check_flag_axioms(n: usize, family: &[u32]) -> AxiomVerdict {
    let family = matroid::canonical(family.to_vec());
    let mut member = vec![false; 1 << n];
    for &s in &family {
        member[s as usize] = true;
    }
    for &f in &family {
        for &g in &family {
            if bits::card(f) != bits::card(g) {
                continue;
            }
            for x in bits::elements(f & !g) {
                if !bits::elements(g & !f).any(|y| member[((g | 1 << x) & !(1 << y)) as usize]) {
                    return AxiomVerdict::Axiom1 {
                        f: bits::to_indices(f),
                        g: bits::to_indices(g),
                        x,
                    };
                }
            }
        }
    }
    let mut sizes: Vec<usize> = family.iter().map(|&s| bits::card(s)).collect();
    sizes.sort_unstable();
    sizes.dedup();
    if sizes.len() < 2 {
        return AxiomVerdict::Pass;
    }
    // Set of `f` in `s` whose removal from `s` lands in the family.
    let removable = |s: u32| -> u32 {
        bits::elements(s).filter(|&f| member[(s & !(1 << f)) as usize]).fold(0, |a, f| a | 1 << f)
    };
    for &f in &family {
        let size = bits::card(f);
        let Some(pos) = sizes.iter().position(|&c| c == size).filter(|&p| p > 0) else {
            continue;
        };
        let lower = sizes[pos - 1];
        for e in bits::elements(bits::full(n) & !f) {
            let top = removable(f | 1 << e);
            let ok = bits::k_subsets_of(f, lower).into_iter().any(|g| {
                g != f && member[g as usize] && removable(g | 1 << e) & !top == 0
            });
            if !ok {
                return AxiomVerdict::Axiom2 { f: bits::to_indices(f), e };
            }
        }
    }
    AxiomVerdict::Pass
}

/// A flag matroid: a nonempty sequence of matroids on a common ground set,
/// each a nontrivial lift of the one before. The feasible sets are the
/// union of the layers' bases.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FlagMatroid {
    n: usize,
    layers: Vec<Matroid>,
}

/// A flag minor realized up to relabeling: applying `contract`, `delete`
/// and chopping `chop` (cardinalities after contraction) yields a flag
/// isomorphic to the target via `map`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagMinorWitness {
    pub contract: Vec<usize>,
    pub delete: Vec<usize>,
    pub chop: Vec<usize>,
    pub map: Vec<usize>,
}

impl FlagMatroid {
    /// Validate a feasible family layer by layer.
    pub fn from_feasible_sets(n: usize, family: &[u32]) -> Result<Self, FlagError> {
        if n > MAX_GROUND {
            return Err(FlagError::GroundTooLarge(n));
        }
        if let Some(&s) = family.iter().find(|&&s| s & !bits::full(n) != 0) {
            let index = bits::elements(s & !bits::full(n)).next().unwrap_or(n);
            return Err(FlagError::IndexOutOfRange { index, n });
        }
        let family = matroid::canonical(family.to_vec());
        if family.is_empty() {
            return Err(FlagError::Empty);
        }
        let mut sizes: Vec<usize> = family.iter().map(|&s| bits::card(s)).collect();
        sizes.sort_unstable();
        sizes.dedup();
        let layers = sizes
            .iter()
            .enumerate()
            .map(|(i, &c)| {
                let layer: Vec<u32> = family.iter().copied().filter(|&s| bits::card(s) == c).collect();
                Matroid::from_bases(n, layer)
                    .map_err(|source| FlagError::LayerNotMatroid { layer: i, source })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_sequence(layers)
    }

    /// Build from a sequence of matroids with strictly increasing ranks.
    pub fn from_sequence(layers: Vec<Matroid>) -> Result<Self, FlagError> {
        let n = layers.first().ok_or(FlagError::Empty)?.n();
        if layers.iter().any(|m| m.n() != n) {
            return Err(FlagError::GroundMismatch);
        }
        for i in 1..layers.len() {
            if layers[i].rank() <= layers[i - 1].rank() {
                return Err(FlagError::RankCollision(i - 1, i));
            }
            if let Some(flat) = lift::flat_witness(&layers[i], &layers[i - 1]) {
                return Err(FlagError::NotALift { layer: i, flat: bits::to_indices(flat) });
            }
        }
        Ok(FlagMatroid { n, layers })
    }

    pub(crate) fn from_sequence_unchecked(n: usize, layers: Vec<Matroid>) -> Self {
        FlagMatroid { n, layers }
    }

    /// Independent and spanning sets of `m` with cardinality in `s..=r`.
    pub fn interval(m: &Matroid, s: usize, r: usize) -> Result<Self, FlagError> {
        if s > r || r > m.n() {
            return Err(FlagError::EmptyResult);
        }
        let rk = m.rank();
        let mut layers = Vec::new();
        for k in s..=r {
            let family: Vec<u32> = bits::k_subsets(m.n(), k)
                .into_iter()
                .filter(|&x| if k <= rk { m.is_independent(x) } else { m.is_spanning(x) })
                .collect();
            if !family.is_empty() {
                layers.push(Matroid::from_bases_unchecked(m.n(), family));
            }
        }
        if layers.is_empty() {
            return Err(FlagError::EmptyResult);
        }
        Ok(FlagMatroid { n: m.n(), layers })
    }

    pub fn independent(m: &Matroid) -> Self {
        Self::interval(m, 0, m.rank()).expect("the empty set is independent")
    }

    pub fn basis(m: &Matroid) -> Self {
        FlagMatroid { n: m.n(), layers: vec![m.clone()] }
    }

    pub fn spanning(m: &Matroid) -> Self {
        Self::interval(m, m.rank(), m.n()).expect("the ground set spans")
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// The sequential representation, lowest rank first.
    pub fn layers(&self) -> &[Matroid] {
        &self.layers
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.layers.iter().map(Matroid::rank).collect()
    }

    /// Feasible sets in cardinality-then-lexicographic order.
    pub fn feasible(&self) -> Vec<u32> {
        self.layers.iter().flat_map(|m| m.bases().iter().copied()).collect()
    }

    pub fn is_feasible(&self, s: u32) -> bool {
        self.layers.iter().any(|m| m.is_basis(s))
    }

    pub fn is_full(&self) -> bool {
        self.layers.windows(2).all(|w| w[1].rank() == w[0].rank() + 1)
    }

    /// Largest feasible subset of `s`; `None` when `s` contains no feasible set.
    pub fn rank_of(&self, s: u32) -> Option<usize> {
        self.layers.iter().rev().find(|m| m.bases().iter().any(|&b| b & !s == 0)).map(Matroid::rank)
    }

    pub fn dual(&self) -> FlagMatroid {
        FlagMatroid { n: self.n, layers: self.layers.iter().rev().map(Matroid::dual).collect() }
    }

    /// Feasible sets avoiding `e`, re-indexed.
    pub fn delete(&self, e: usize) -> Result<FlagMatroid, FlagError> {
        self.minor(&[], &[e], &[])
    }

    /// `(F* \ e)*`: feasible sets containing `e`, with `e` removed.
    pub fn contract(&self, e: usize) -> Result<FlagMatroid, FlagError> {
        self.minor(&[e], &[], &[])
    }

    /// Remove every feasible set of cardinality `size`.
    pub fn chop(&self, size: usize) -> Result<FlagMatroid, FlagError> {
        let pos = self.layers.iter().position(|m| m.rank() == size).ok_or(FlagError::NoSuchLayer(size))?;
        if self.layers.len() == 1 {
            return Err(FlagError::LastLayer);
        }
        let mut layers = self.layers.clone();
        layers.remove(pos);
        Ok(FlagMatroid { n: self.n, layers })
    }

    /// Contract `contract`, delete `delete`, then chop each cardinality in
    /// `chop` (cardinalities are measured after contraction).
    pub fn minor(&self, contract: &[usize], delete: &[usize], chop: &[usize]) -> Result<FlagMatroid, FlagError> {
        let c = self.mask(contract)?;
        let d = self.mask(delete)?;
        if c & d != 0 {
            return Err(FlagError::OverlappingSets);
        }
        let mut out = self.minor_sets(c, d).ok_or(FlagError::EmptyResult)?;
        for &size in chop {
            out = out.chop(size)?;
        }
        Ok(out)
    }

    fn mask(&self, xs: &[usize]) -> Result<u32, FlagError> {
        if let Some(&index) = xs.iter().find(|&&e| e >= self.n) {
            return Err(FlagError::IndexOutOfRange { index, n: self.n });
        }
        Ok(bits::from_indices(xs))
    }

    /// `{F \ c : c ⊆ F, F ∩ d = ∅}` re-indexed; `None` when empty.
    pub(crate) fn minor_sets(&self, c: u32, d: u32) -> Option<FlagMatroid> {
        let keep = bits::full(self.n) & !(c | d);
        let n = bits::card(keep);
        let layers: Vec<Matroid> = self
            .layers
            .iter()
            .filter_map(|m| {
                let bases: Vec<u32> = m
                    .bases()
                    .iter()
                    .filter(|&&b| b & c == c && b & d == 0)
                    .map(|&b| bits::compress(b, keep))
                    .collect();
                (!bases.is_empty()).then(|| Matroid::from_bases_unchecked(n, matroid::canonical(bases)))
            })
            .collect();
        (!layers.is_empty()).then_some(FlagMatroid { n, layers })
    }

    pub fn relabel(&self, map: &[usize]) -> FlagMatroid {
        FlagMatroid { n: self.n, layers: self.layers.iter().map(|m| m.relabel(map)).collect() }
    }

    pub(crate) fn profile(&self) -> RankProfile {
        RankProfile::new(self.n, self.layers.iter().map(Matroid::rank_table).collect())
    }

    /// Lexicographically least bijection carrying feasible sets onto feasible sets.
    pub fn is_isomorphic(&self, other: &FlagMatroid) -> Option<Vec<usize>> {
        if !self.same_shape(other) {
            return None;
        }
        iso::find_bijection(&self.profile(), &other.profile())
    }

    fn same_shape(&self, other: &FlagMatroid) -> bool {
        self.n == other.n
            && self.layers.len() == other.layers.len()
            && self.layers.iter().zip(&other.layers).all(|(a, b)| {
                a.rank() == b.rank() && a.bases().len() == b.bases().len()
            })
    }

    /// Lexicographically least minor witness: by number of contracted
    /// elements, then contraction set, then deletion set.
    pub fn has_minor(&self, target: &FlagMatroid) -> Option<FlagMinorWitness> {
        let removed = self.n.checked_sub(target.n)?;
        let target_ranks = target.ranks();
        let own_ranks = self.ranks();
        let target_profile = target.profile();
        let mut rejected: HashSet<Vec<Vec<u32>>> = HashSet::new();
        for c_size in 0..=removed {
            if !target_ranks.iter().all(|&t| own_ranks.contains(&(t + c_size))) {
                continue;
            }
            let kept: Vec<&Matroid> =
                target_ranks.iter().map(|&t| &self.layers[own_ranks.iter().position(|&r| r == t + c_size).unwrap()]).collect();
            for c in bits::k_subsets(self.n, c_size) {
                if !kept.iter().all(|m| m.bases().iter().any(|&b| b & c == c)) {
                    continue;
                }
                let rest = bits::full(self.n) & !c;
                for d in bits::k_subsets_of(rest, removed - c_size) {
                    if !kept.iter().all(|m| m.bases().iter().any(|&b| b & c == c && b & d == 0)) {
                        continue;
                    }
                    let Some(minor) = self.minor_sets(c, d) else { continue };
                    let chop: Vec<usize> =
                        minor.ranks().into_iter().filter(|r| !target_ranks.contains(r)).collect();
                    let layers: Vec<Matroid> =
                        minor.layers.into_iter().filter(|m| target_ranks.contains(&m.rank())).collect();
                    let candidate = FlagMatroid { n: target.n, layers };
                    if !candidate.same_shape(target) {
                        continue;
                    }
                    let key: Vec<Vec<u32>> = candidate.layers.iter().map(|m| m.bases().to_vec()).collect();
                    if rejected.contains(&key) {
                        continue;
                    }
                    match iso::find_bijection(&candidate.profile(), &target_profile) {
                        Some(map) => {
                            return Some(FlagMinorWitness {
                                contract: bits::to_indices(c),
                                delete: bits::to_indices(d),
                                chop,
                                map,
                            })
                        }
                        None => {
                            rejected.insert(key);
                        }
                    }
                }
            }
        }
        None
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FlagJson {
    n: usize,
    feasible: Vec<Vec<usize>>,
}

impl Serialize for FlagMatroid {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let feasible = self.feasible().into_iter().map(bits::to_indices).collect();
        FlagJson { n: self.n, feasible }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FlagMatroid {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = FlagJson::deserialize(d)?;
        let sets = matroid::sets_from_indices(raw.n, &raw.feasible).map_err(D::Error::custom)?;
        FlagMatroid::from_feasible_sets(raw.n, &sets).map_err(D::Error::custom)
    }
}
