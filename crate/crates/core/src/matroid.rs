//! Matroids on `{0, .., n-1}` stored by their canonical basis family.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::{self, MAX_GROUND};
use crate::gf::GfMatrix;
use crate::iso::{self, RankProfile};

pub mod catalogue;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatroidError {
    #[error("ground set of size {0} exceeds {MAX_GROUND}")]
    GroundTooLarge(usize),
    #[error("independence axiom {axiom} fails: {}", fmt_sets(witness))]
    AxiomViolation { axiom: u8, witness: Vec<Vec<usize>> },
    #[error("basis family is empty")]
    NoBases,
    #[error("bases {0:?} and {1:?} differ in cardinality")]
    UnequalBases(Vec<usize>, Vec<usize>),
    #[error("basis exchange fails for {b1:?}, {b2:?} at element {x}")]
    ExchangeViolation { b1: Vec<usize>, b2: Vec<usize>, x: usize },
    #[error("rank {r} exceeds ground set size {n}")]
    BadRank { r: usize, n: usize },
    #[error("element {index} outside ground set of size {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("contraction and deletion sets overlap")]
    OverlappingSets,
}

impl MatroidError {
    pub fn code(&self) -> &'static str {
        match self {
            MatroidError::GroundTooLarge(_) => "ground_too_large",
            MatroidError::AxiomViolation { .. } => "axiom_violation",
            MatroidError::NoBases => "no_bases",
            MatroidError::UnequalBases(..) => "unequal_bases",
            MatroidError::ExchangeViolation { .. } => "exchange_violation",
            MatroidError::BadRank { .. } => "bad_rank",
            MatroidError::IndexOutOfRange { .. } => "index_out_of_range",
            MatroidError::OverlappingSets => "overlapping_sets",
        }
    }
}

fn fmt_sets(sets: &[Vec<usize>]) -> String {
    sets.iter().map(|s| format!("{s:?}")).collect::<Vec<_>>().join(", ")
}

/// A matroid given by its bases. Bases are distinct, equicardinal, satisfy
/// exchange and are sorted lexicographically by index list.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matroid {
    n: usize,
    rank: usize,
    bases: Vec<u32>,
}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bases: Vec<Vec<usize>> = self.bases.iter().map(|&b| bits::to_indices(b)).collect();
        f.debug_struct("Matroid").field("n", &self.n).field("bases", &bases).finish()
    }
}

/// The result of a successful minor search: `M / contract \ delete` is
/// isomorphic to the target via `map` (survivor position -> target element).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorWitness {
    pub contract: Vec<usize>,
    pub delete: Vec<usize>,
    pub map: Vec<usize>,
}

fn check_ground(n: usize) -> Result<(), MatroidError> {
    if n > MAX_GROUND {
        return Err(MatroidError::GroundTooLarge(n));
    }
    Ok(())
}

fn check_subset(n: usize, s: u32) -> Result<(), MatroidError> {
    if s & !bits::full(n) != 0 {
        let index = bits::elements(s & !bits::full(n)).next().unwrap_or(n);
        return Err(MatroidError::IndexOutOfRange { index, n });
    }
    Ok(())
}

/// Sort and deduplicate a family into lexicographic order.
pub(crate) fn canonical(mut family: Vec<u32>) -> Vec<u32> {
    family.sort_by(|&a, &b| bits::lex_cmp(a, b));
    family.dedup();
    family
}

impl Matroid {
    /// Build from a basis family, validating basis exchange.
    pub fn from_bases(n: usize, bases: Vec<u32>) -> Result<Self, MatroidError> {
        check_ground(n)?;
        for &b in &bases {
            check_subset(n, b)?;
        }
        let bases = canonical(bases);
        let first = *bases.first().ok_or(MatroidError::NoBases)?;
        let rank = bits::card(first);
        if let Some(&b) = bases.iter().find(|&&b| bits::card(b) != rank) {
            return Err(MatroidError::UnequalBases(bits::to_indices(first), bits::to_indices(b)));
        }
        let m = Matroid { n, rank, bases };
        m.check_exchange()?;
        Ok(m)
    }

    /// Build from an already canonical, exchange-valid family.
    pub(crate) fn from_bases_unchecked(n: usize, bases: Vec<u32>) -> Self {
        let rank = bases.first().map_or(0, |&b| bits::card(b));
        Matroid { n, rank, bases }
    }

    fn check_exchange(&self) -> Result<(), MatroidError> {
        let member = self.membership();
        for &b1 in &self.bases {
            for &b2 in &self.bases {
                for x in bits::elements(b1 & !b2) {
                    let ok = bits::elements(b2 & !b1)
                        .any(|y| member[((b1 & !(1 << x)) | 1 << y) as usize]);
                    if !ok {
                        return Err(MatroidError::ExchangeViolation {
                            b1: bits::to_indices(b1),
                            b2: bits::to_indices(b2),
                            x,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Build from a family of independent sets, checking the three axioms in
    /// order: the empty set is present, the family is hereditary, and it has
    /// the augmentation property.
    pub fn from_independent_sets(n: usize, family: &[u32]) -> Result<Self, MatroidError> {
        check_ground(n)?;
        for &s in family {
            check_subset(n, s)?;
        }
        let family = canonical(family.to_vec());
        let mut member = vec![false; 1 << n];
        for &s in &family {
            member[s as usize] = true;
        }
        if !member[0] {
            return Err(MatroidError::AxiomViolation { axiom: 1, witness: vec![vec![]] });
        }
        for &s in &family {
            for e in bits::elements(s) {
                let sub = s & !(1 << e);
                if !member[sub as usize] {
                    return Err(MatroidError::AxiomViolation {
                        axiom: 2,
                        witness: vec![bits::to_indices(s), bits::to_indices(sub)],
                    });
                }
            }
        }
        for &i in &family {
            for &j in &family {
                if bits::card(i) >= bits::card(j) {
                    continue;
                }
                if !bits::elements(j & !i).any(|x| member[(i | 1 << x) as usize]) {
                    return Err(MatroidError::AxiomViolation {
                        axiom: 3,
                        witness: vec![bits::to_indices(i), bits::to_indices(j)],
                    });
                }
            }
        }
        let rank = family.iter().map(|&s| bits::card(s)).max().unwrap_or(0);
        let bases = family.into_iter().filter(|&s| bits::card(s) == rank).collect();
        Ok(Matroid { n, rank, bases })
    }

    pub fn uniform(r: usize, n: usize) -> Result<Self, MatroidError> {
        check_ground(n)?;
        if r > n {
            return Err(MatroidError::BadRank { r, n });
        }
        Ok(Matroid { n, rank: r, bases: bits::k_subsets(n, r) })
    }

    /// The column matroid of `a`.
    pub fn linear(a: &GfMatrix) -> Result<Self, MatroidError> {
        let n = a.cols();
        check_ground(n)?;
        let r = a.rank();
        let bases = bits::k_subsets(n, r)
            .into_iter()
            .filter(|&s| {
                let cols = bits::to_indices(s);
                a.select_cols(&cols).map(|m| m.rank() == r).unwrap_or(false)
            })
            .collect();
        Ok(Matroid { n, rank: r, bases })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn bases(&self) -> &[u32] {
        &self.bases
    }

    pub fn is_basis(&self, s: u32) -> bool {
        bits::card(s) == self.rank && self.bases.binary_search_by(|&b| bits::lex_cmp(b, s)).is_ok()
    }

    fn membership(&self) -> Vec<bool> {
        let mut member = vec![false; 1 << self.n];
        for &b in &self.bases {
            member[b as usize] = true;
        }
        member
    }

    /// Independence indicator over all `2^n` subsets.
    pub fn independence_table(&self) -> Vec<bool> {
        let mut indep = self.membership();
        for s in (0..1u32 << self.n).rev() {
            if indep[s as usize] {
                continue;
            }
            let free = bits::full(self.n) & !s;
            indep[s as usize] = bits::elements(free).any(|e| indep[(s | 1 << e) as usize]);
        }
        indep
    }

    /// Rank of every subset, indexed by mask.
    pub fn rank_table(&self) -> Vec<u8> {
        let indep = self.independence_table();
        let mut rank = vec![0u8; 1 << self.n];
        for s in 1..1u32 << self.n {
            rank[s as usize] = if indep[s as usize] {
                bits::card(s) as u8
            } else {
                bits::elements(s).map(|e| rank[(s & !(1 << e)) as usize]).max().unwrap_or(0)
            };
        }
        rank
    }

    pub fn is_independent(&self, s: u32) -> bool {
        self.bases.iter().any(|&b| s & !b == 0)
    }

    pub fn is_spanning(&self, s: u32) -> bool {
        self.bases.iter().any(|&b| b & !s == 0)
    }

    pub fn rank_of(&self, s: u32) -> Result<usize, MatroidError> {
        check_subset(self.n, s)?;
        Ok(self.rank_unchecked(s))
    }

    pub(crate) fn rank_unchecked(&self, s: u32) -> usize {
        self.bases.iter().map(|&b| bits::card(b & s)).max().unwrap_or(0)
    }

    pub fn closure(&self, s: u32) -> Result<u32, MatroidError> {
        let r = self.rank_of(s)?;
        Ok((0..self.n).fold(s, |acc, e| {
            if !bits::contains(s, e) && self.rank_unchecked(s | 1 << e) == r {
                acc | 1 << e
            } else {
                acc
            }
        }))
    }

    /// Every flat, in cardinality-then-lexicographic order.
    pub fn flats(&self) -> Vec<u32> {
        let rank = self.rank_table();
        flats_from_table(self.n, &rank)
    }

    /// Every circuit, in cardinality-then-lexicographic order.
    pub fn circuits(&self) -> Vec<u32> {
        let indep = self.independence_table();
        let mut out: Vec<u32> = (1..1u32 << self.n)
            .filter(|&s| !indep[s as usize])
            .filter(|&s| bits::elements(s).all(|e| indep[(s & !(1 << e)) as usize]))
            .collect();
        out.sort_by(|&a, &b| bits::card_lex_cmp(a, b));
        out
    }

    pub fn independent_sets(&self) -> Vec<u32> {
        let indep = self.independence_table();
        let mut out: Vec<u32> = (0..1u32 << self.n).filter(|&s| indep[s as usize]).collect();
        out.sort_by(|&a, &b| bits::card_lex_cmp(a, b));
        out
    }

    pub fn loops(&self) -> u32 {
        let union = self.bases.iter().fold(0, |acc, &b| acc | b);
        bits::full(self.n) & !union
    }

    pub fn coloops(&self) -> u32 {
        self.bases.iter().fold(bits::full(self.n), |acc, &b| acc & b)
    }

    pub fn is_loop(&self, e: usize) -> bool {
        bits::contains(self.loops(), e)
    }

    pub fn is_coloop(&self, e: usize) -> bool {
        bits::contains(self.coloops(), e)
    }

    /// Parallel classes of non-loop elements, each as a mask, ordered by
    /// least element.
    pub fn parallel_classes(&self) -> Vec<u32> {
        let loops = self.loops();
        let mut seen = loops;
        let mut out = Vec::new();
        for e in 0..self.n {
            if bits::contains(seen, e) {
                continue;
            }
            let class = (e..self.n)
                .filter(|&f| f == e || (!bits::contains(loops, f) && self.rank_unchecked(1 << e | 1 << f) == 1))
                .fold(0u32, |acc, f| acc | 1 << f);
            seen |= class;
            out.push(class);
        }
        out
    }

    pub fn dual(&self) -> Matroid {
        let full = bits::full(self.n);
        let bases = canonical(self.bases.iter().map(|&b| full & !b).collect());
        Matroid::from_bases_unchecked(self.n, bases)
    }

    /// `M / contract \ delete` with survivors re-indexed in increasing order.
    pub fn minor(&self, contract: u32, delete: u32) -> Result<Matroid, MatroidError> {
        check_subset(self.n, contract)?;
        check_subset(self.n, delete)?;
        if contract & delete != 0 {
            return Err(MatroidError::OverlappingSets);
        }
        Ok(self.minor_unchecked(contract, delete))
    }

    pub(crate) fn minor_unchecked(&self, contract: u32, delete: u32) -> Matroid {
        let keep = bits::full(self.n) & !(contract | delete);
        let after = minor_bases(&self.bases, contract, delete);
        let bases = canonical(after.into_iter().map(|b| bits::compress(b, keep)).collect());
        Matroid::from_bases_unchecked(bits::card(keep), bases)
    }

    pub fn delete(&self, e: usize) -> Result<Matroid, MatroidError> {
        self.check_element(e)?;
        Ok(self.minor_unchecked(0, 1 << e))
    }

    pub fn contract(&self, e: usize) -> Result<Matroid, MatroidError> {
        self.check_element(e)?;
        Ok(self.minor_unchecked(1 << e, 0))
    }

    /// Restriction to `s`, re-indexed.
    pub fn restrict(&self, s: u32) -> Result<Matroid, MatroidError> {
        self.minor(0, bits::full(self.n) & !s)
    }

    fn check_element(&self, e: usize) -> Result<(), MatroidError> {
        if e >= self.n {
            return Err(MatroidError::IndexOutOfRange { index: e, n: self.n });
        }
        Ok(())
    }

    /// Apply an element relabeling: element `e` becomes `map[e]`.
    pub fn relabel(&self, map: &[usize]) -> Matroid {
        let bases = canonical(self.bases.iter().map(|&b| bits::map_set(b, map)).collect());
        Matroid::from_bases_unchecked(self.n, bases)
    }

    pub(crate) fn profile(&self) -> RankProfile {
        RankProfile::new(self.n, vec![self.rank_table()])
    }

    /// Lexicographically least bijection carrying bases onto bases.
    pub fn is_isomorphic(&self, other: &Matroid) -> Option<Vec<usize>> {
        if self.n != other.n || self.rank != other.rank || self.bases.len() != other.bases.len() {
            return None;
        }
        iso::find_bijection(&self.profile(), &other.profile())
    }

    /// Lexicographically least `(contract, delete, map)` realizing `target`
    /// as a minor, with `contract` independent and `delete` coindependent.
    pub fn has_minor_isomorphic_to(&self, target: &Matroid) -> Option<MinorWitness> {
        if target.n > self.n || target.rank > self.rank {
            return None;
        }
        let c_size = self.rank - target.rank;
        let d_size = (self.n - self.rank).checked_sub(target.n - target.rank)?;
        let target_profile = target.profile();
        let mut rejected: HashSet<Vec<u32>> = HashSet::new();
        for c in bits::k_subsets(self.n, c_size) {
            if !self.is_independent(c) {
                continue;
            }
            let contracted: Vec<u32> = minor_bases(&self.bases, c, 0);
            let rest = bits::full(self.n) & !c;
            for d in bits::k_subsets_of(rest, d_size) {
                if !contracted.iter().any(|&b| b & d == 0) {
                    continue;
                }
                let m = self.minor_unchecked(c, d);
                if m.bases.len() != target.bases.len() || rejected.contains(&m.bases) {
                    continue;
                }
                match iso::find_bijection(&m.profile(), &target_profile) {
                    Some(map) => {
                        return Some(MinorWitness {
                            contract: bits::to_indices(c),
                            delete: bits::to_indices(d),
                            map,
                        })
                    }
                    None => {
                        rejected.insert(m.bases);
                    }
                }
            }
        }
        None
    }

    pub fn is_binary(&self) -> bool {
        catalogue::binary_excluded().iter().all(|x| self.has_minor_isomorphic_to(x).is_none())
    }

    pub fn is_ternary(&self) -> bool {
        catalogue::ternary_excluded().iter().all(|x| self.has_minor_isomorphic_to(x).is_none())
    }

    pub fn is_graphic(&self) -> bool {
        catalogue::graphic_excluded().iter().all(|x| self.has_minor_isomorphic_to(x).is_none())
    }

    /// Family as sorted index lists.
    pub fn bases_as_indices(&self) -> Vec<Vec<usize>> {
        self.bases.iter().map(|&b| bits::to_indices(b)).collect()
    }
}

/// Bases of `M / contract \ delete` before re-indexing, for disjoint sets.
pub(crate) fn minor_bases(bases: &[u32], contract: u32, delete: u32) -> Vec<u32> {
    let rc = bases.iter().map(|&b| bits::card(b & contract)).max().unwrap_or(0);
    let contracted: Vec<u32> =
        bases.iter().filter(|&&b| bits::card(b & contract) == rc).map(|&b| b & !contract).collect();
    let md = contracted.iter().map(|&b| bits::card(b & delete)).min().unwrap_or(0);
    contracted.into_iter().filter(|&b| bits::card(b & delete) == md).collect()
}

/// Flats from a rank table, cardinality-then-lexicographic order.
pub(crate) fn flats_from_table(n: usize, rank: &[u8]) -> Vec<u32> {
    let full = bits::full(n);
    let mut out: Vec<u32> = (0..=full)
        .filter(|&s| {
            let r = rank[s as usize];
            bits::elements(full & !s).all(|e| rank[(s | 1 << e) as usize] > r)
        })
        .collect();
    out.sort_by(|&a, &b| bits::card_lex_cmp(a, b));
    out
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatroidJson {
    n: usize,
    bases: Vec<Vec<usize>>,
}

pub(crate) fn sets_from_indices(n: usize, sets: &[Vec<usize>]) -> Result<Vec<u32>, MatroidError> {
    check_ground(n)?;
    sets.iter()
        .map(|s| {
            if let Some(&bad) = s.iter().find(|&&e| e >= n) {
                return Err(MatroidError::IndexOutOfRange { index: bad, n });
            }
            Ok(bits::from_indices(s))
        })
        .collect()
}

impl Serialize for Matroid {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        MatroidJson { n: self.n, bases: self.bases_as_indices() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matroid {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = MatroidJson::deserialize(d)?;
        let bases = sets_from_indices(raw.n, &raw.bases).map_err(D::Error::custom)?;
        Matroid::from_bases(raw.n, bases).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::{fano_matrix, FieldPrime};

    fn set(xs: &[usize]) -> u32 {
        bits::from_indices(xs)
    }

    fn fano() -> Matroid {
        Matroid::linear(&fano_matrix()).unwrap()
    }

    /// Independent oracle: triples of Fano columns whose GF(2) sum is nonzero.
    fn fano_bases_oracle() -> usize {
        let cols: Vec<u32> = (1..=7).collect();
        let mut count = 0;
        for i in 0..7 {
            for j in i + 1..7 {
                for k in j + 1..7 {
                    if cols[i] ^ cols[j] ^ cols[k] != 0 {
                        count += 1;
                    }
                }
            }
        }
        count
    }

    #[test]
    fn independent_set_constructor() {
        let all_small: Vec<u32> = (0..8u32).filter(|&s| bits::card(s) <= 2).collect();
        let m = Matroid::from_independent_sets(3, &all_small).unwrap();
        assert_eq!(m, Matroid::uniform(2, 3).unwrap());
        assert_eq!(m.bases().len(), 3);

        let err = Matroid::from_independent_sets(2, &[0, set(&[0]), set(&[0, 1])]).unwrap_err();
        assert_eq!(err, MatroidError::AxiomViolation { axiom: 2, witness: vec![vec![0, 1], vec![1]] });

        let u24: Vec<u32> = (0..16u32).filter(|&s| bits::card(s) <= 2).collect();
        assert_eq!(Matroid::from_independent_sets(4, &u24).unwrap().bases().len(), 6);

        let err = Matroid::from_independent_sets(2, &[set(&[0])]).unwrap_err();
        assert!(matches!(err, MatroidError::AxiomViolation { axiom: 1, .. }));
        let err = Matroid::from_independent_sets(3, &[0, set(&[0]), set(&[1]), set(&[2]), set(&[1, 2])])
            .unwrap_err();
        assert!(matches!(err, MatroidError::AxiomViolation { axiom: 3, .. }));
    }

    #[test]
    fn uniform_examples() {
        assert_eq!(Matroid::uniform(0, 3).unwrap().bases(), &[0]);
        assert_eq!(Matroid::uniform(2, 4).unwrap().bases().len(), 6);
        assert_eq!(Matroid::uniform(3, 5).unwrap().bases().len(), 10);
        assert_eq!(Matroid::uniform(4, 3), Err(MatroidError::BadRank { r: 4, n: 3 }));
    }

    #[test]
    fn linear_examples() {
        let f = fano();
        assert_eq!((f.n(), f.rank()), (7, 3));
        assert_eq!(f.bases().len(), fano_bases_oracle());

        let f3 = FieldPrime::new(3).unwrap();
        let a = GfMatrix::from_rows(f3, &[vec![1, 0, 1, 1], vec![0, 1, 1, 2]]).unwrap();
        assert_eq!(Matroid::linear(&a).unwrap(), Matroid::uniform(2, 4).unwrap());

        let z = GfMatrix::zeros(FieldPrime::new(2).unwrap(), 1, 3).unwrap();
        assert_eq!(Matroid::linear(&z).unwrap(), Matroid::uniform(0, 3).unwrap());
    }

    #[test]
    fn derived_quantities() {
        let u24 = Matroid::uniform(2, 4).unwrap();
        assert_eq!(u24.closure(set(&[0])).unwrap(), set(&[0]));
        assert_eq!(u24.closure(set(&[0, 1])).unwrap(), 0b1111);
        assert_eq!(u24.circuits(), bits::k_subsets(4, 3));
        assert_eq!(u24.rank_of(1 << 4), Err(MatroidError::IndexOutOfRange { index: 4, n: 4 }));

        // Closure oracle straight from the definition, via brute-force rank.
        let f = fano();
        let rank = |s: u32| f.bases().iter().map(|&b| (b & s).count_ones()).max().unwrap();
        let mut closures: Vec<u32> = (0..128u32)
            .map(|s| (0..7).filter(|&e| rank(s | 1 << e) == rank(s)).fold(s, |a, e| a | 1 << e))
            .collect();
        closures.sort();
        closures.dedup();
        assert_eq!(closures.len(), 16);
        assert_eq!(f.flats().len(), 16);
    }

    #[test]
    fn duality_and_minors() {
        let u24 = Matroid::uniform(2, 4).unwrap();
        assert_eq!(u24.dual(), u24);
        assert_eq!(u24.contract(0).unwrap(), Matroid::uniform(1, 3).unwrap());
        let fd = fano().dual();
        assert_eq!((fd.n(), fd.rank()), (7, 4));

        assert_eq!(fano().minor(0, 0).unwrap(), fano());
        let u35 = Matroid::uniform(3, 5).unwrap();
        assert_eq!(u35.minor(set(&[4]), set(&[3])).unwrap(), Matroid::uniform(2, 3).unwrap());
        assert_eq!(u35.minor(1, 1), Err(MatroidError::OverlappingSets));

        // A loop contracts like it deletes.
        let m = Matroid::from_bases(3, vec![set(&[0]), set(&[1])]).unwrap();
        assert_eq!(m.contract(2).unwrap(), m.delete(2).unwrap());
    }

    #[test]
    fn k4_contraction() {
        let k4 = crate::graphic::MultiGraph::complete(4).cycle_matroid();
        let m = k4.minor(1, 0).unwrap();
        assert_eq!((m.n(), m.rank()), (5, 2));
    }

    #[test]
    fn isomorphism_examples() {
        let u24 = Matroid::uniform(2, 4).unwrap();
        assert_eq!(u24.is_isomorphic(&u24), Some(vec![0, 1, 2, 3]));
        assert_eq!(u24.is_isomorphic(&Matroid::uniform(2, 5).unwrap()), None);

        let perm = [3, 6, 0, 5, 1, 2, 4];
        let moved = fano_matrix().select_cols(&perm).unwrap();
        let target = Matroid::linear(&moved).unwrap();
        let map = fano().is_isomorphic(&target).unwrap();
        assert_eq!(fano().relabel(&map), target);
    }

    #[test]
    fn minor_search_examples() {
        let u24 = Matroid::uniform(2, 4).unwrap();
        assert_eq!(fano().has_minor_isomorphic_to(&u24), None);
        let w = Matroid::uniform(2, 5).unwrap().has_minor_isomorphic_to(&u24).unwrap();
        assert_eq!((w.contract.len(), w.delete.len()), (0, 1));
        assert_eq!(w.delete, vec![0]);
        let k4 = crate::graphic::MultiGraph::complete(4).cycle_matroid();
        assert_eq!(k4.has_minor_isomorphic_to(&u24), None);
    }

    #[test]
    fn forbidden_minor_classes() {
        let f = fano();
        assert!(f.is_binary());
        assert!(!f.is_ternary());
        assert!(!Matroid::uniform(2, 4).unwrap().is_binary());
        assert!(!f.is_graphic());
        assert!(crate::graphic::MultiGraph::complete(4).cycle_matroid().is_graphic());
    }

    #[test]
    fn json_roundtrip_and_validation() {
        let m = fano();
        let text = serde_json::to_string(&m).unwrap();
        assert_eq!(serde_json::from_str::<Matroid>(&text).unwrap(), m);
        assert!(serde_json::from_str::<Matroid>(r#"{"n":2,"bases":[[0],[0,1]]}"#).is_err());
        assert!(serde_json::from_str::<Matroid>(r#"{"n":2,"bases":[[2]]}"#).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn matroid() -> impl Strategy<Value = Matroid> {
            (1usize..=6, prop::sample::select(vec![2u32, 3]))
                .prop_flat_map(|(n, p)| {
                    (1usize..=3).prop_flat_map(move |r| {
                        proptest::collection::vec(proptest::collection::vec(0..p, n), r)
                            .prop_map(move |rows| {
                                let f = FieldPrime::new(p).unwrap();
                                Matroid::linear(&GfMatrix::from_rows(f, &rows).unwrap()).unwrap()
                            })
                    })
                })
                .boxed()
        }

        proptest! {
            #[test]
            fn double_dual(m in matroid()) {
                prop_assert_eq!(m.dual().dual(), m);
            }

            #[test]
            fn contraction_is_dual_deletion(m in matroid(), e in 0usize..6) {
                prop_assume!(e < m.n());
                prop_assert_eq!(m.contract(e).unwrap(), m.dual().delete(e).unwrap().dual());
            }

            #[test]
            fn minor_ranks(m in matroid(), e in 0usize..6) {
                prop_assume!(e < m.n());
                let rd = m.delete(e).unwrap().rank();
                prop_assert!(rd == m.rank() || rd + 1 == m.rank());
                let re = m.rank_of(1 << e).unwrap();
                prop_assert_eq!(m.contract(e).unwrap().rank(), m.rank() - re);
            }

            #[test]
            fn binary_matrices_are_binary(rows in proptest::collection::vec(proptest::collection::vec(0u32..2, 6), 1..4)) {
                let f = FieldPrime::new(2).unwrap();
                let m = Matroid::linear(&GfMatrix::from_rows(f, &rows).unwrap()).unwrap();
                prop_assert!(m.is_binary());
            }

            #[test]
            fn circuits_determine_matroid(m in matroid()) {
                let circuits = m.circuits();
                let indep: Vec<u32> = (0..1u32 << m.n())
                    .filter(|&s| circuits.iter().all(|&c| c & !s != 0))
                    .collect();
                prop_assert_eq!(Matroid::from_independent_sets(m.n(), &indep).unwrap(), m);
            }

            #[test]
            fn isomorphism_recovers_relabeling(m in matroid(), seed in any::<u64>()) {
                use rand::seq::SliceRandom;
                use rand::SeedableRng;
                let mut perm: Vec<usize> = (0..m.n()).collect();
                perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
                let moved = m.relabel(&perm);
                let map = m.is_isomorphic(&moved).unwrap();
                prop_assert_eq!(m.relabel(&map), moved);
            }
        }
    }
}
