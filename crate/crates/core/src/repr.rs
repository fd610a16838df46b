//! Linear representations of flag matroids over prime fields.

use std::ops::ControlFlow;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits;
use crate::flag::{FlagError, FlagMatroid, FlagMinorWitness};
use crate::gf::{self, FieldPrime, GfError, GfMatrix};
use crate::lift::{self, LiftError, MajorStructure};
use crate::matroid::{catalogue, Matroid, MatroidError};

/// Leaf-count ceiling for the brute-force searches.
pub const SEARCH_LIMIT: u128 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReprError {
    #[error(transparent)]
    Gf(#[from] GfError),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error(transparent)]
    Flag(#[from] FlagError),
    #[error(transparent)]
    Lift(#[from] LiftError),
    #[error("invalid levels: {0}")]
    BadLevels(String),
    #[error("first {level} rows have rank {rank}")]
    RankDeficientPrefix { level: usize, rank: usize },
    #[error("GF({p}) has fewer than {n} elements")]
    FieldTooSmall { p: u32, n: usize },
    #[error("no level survives the operation")]
    LevelCollapse,
    #[error("search space of about {0} candidates exceeds the limit")]
    SearchSpaceTooLarge(u128),
    #[error("flag matroid is not full (ranks {0:?})")]
    NotFull(Vec<usize>),
    #[error("decision procedure supports GF(2) and GF(3) only, not GF({0})")]
    UnsupportedField(u32),
    #[error("representation does not reproduce the flag matroid: {0}")]
    Mismatch(String),
}

impl ReprError {
    pub fn code(&self) -> &'static str {
        match self {
            ReprError::Gf(e) => e.code(),
            ReprError::Matroid(e) => e.code(),
            ReprError::Flag(e) => e.code(),
            ReprError::Lift(e) => e.code(),
            ReprError::BadLevels(_) => "bad_levels",
            ReprError::RankDeficientPrefix { .. } => "rank_deficient_prefix",
            ReprError::FieldTooSmall { .. } => "field_too_small",
            ReprError::LevelCollapse => "level_collapse",
            ReprError::SearchSpaceTooLarge(_) => "search_space_too_large",
            ReprError::NotFull(_) => "not_full",
            ReprError::UnsupportedField(_) => "unsupported_field",
            ReprError::Mismatch(_) => "mismatch",
        }
    }
}

/// A matrix with full row rank and increasing levels ending at its row
/// count; the feasible sets are the `F` with `|F|` a level and the first
/// `|F|` rows restricted to `F` nonsingular.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlagRepresentation {
    matrix: GfMatrix,
    levels: Vec<usize>,
}

impl FlagRepresentation {
    pub fn new(matrix: GfMatrix, levels: Vec<usize>) -> Result<Self, ReprError> {
        if levels.is_empty() {
            return Err(ReprError::BadLevels("no levels".into()));
        }
        if levels.windows(2).any(|w| w[0] >= w[1]) {
            return Err(ReprError::BadLevels(format!("{levels:?} not strictly increasing")));
        }
        if *levels.last().expect("nonempty") != matrix.rows() {
            return Err(ReprError::BadLevels(format!(
                "top level {} differs from row count {}",
                levels.last().expect("nonempty"),
                matrix.rows()
            )));
        }
        if matrix.cols() > bits::MAX_GROUND {
            return Err(MatroidError::GroundTooLarge(matrix.cols()).into());
        }
        for &level in &levels {
            let rank = matrix.prefix_rows(level)?.rank();
            if rank != level {
                return Err(ReprError::RankDeficientPrefix { level, rank });
            }
        }
        Ok(FlagRepresentation { matrix, levels })
    }

    pub fn matrix(&self) -> &GfMatrix {
        &self.matrix
    }

    pub fn levels(&self) -> &[usize] {
        &self.levels
    }

    pub fn field(&self) -> FieldPrime {
        self.matrix.field()
    }

    /// The represented flag matroid.
    pub fn flag(&self) -> FlagMatroid {
        let layers = self
            .levels
            .iter()
            .map(|&d| Matroid::linear(&self.matrix.prefix_rows(d).expect("levels fit")).expect("ground checked"))
            .collect();
        FlagMatroid::from_sequence_unchecked(self.matrix.cols(), layers)
    }

    /// Whether this represents `f` exactly (same ground set labels).
    pub fn represents(&self, f: &FlagMatroid) -> bool {
        self.flag() == *f
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RepresentationJson {
    matrix: GfMatrix,
    levels: Vec<usize>,
}

impl Serialize for FlagRepresentation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RepresentationJson { matrix: self.matrix.clone(), levels: self.levels.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FlagRepresentation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = RepresentationJson::deserialize(d)?;
        FlagRepresentation::new(raw.matrix, raw.levels).map_err(D::Error::custom)
    }
}

/// The flag matroid of the row prefixes of `a` at `levels`, with the lift
/// chain validated.
pub fn flag_from_matrix(a: &GfMatrix, levels: &[usize]) -> Result<FlagMatroid, ReprError> {
    let rep = FlagRepresentation::new(a.clone(), levels.to_vec())?;
    let layers = rep.flag().layers().to_vec();
    Ok(FlagMatroid::from_sequence(layers)?)
}

/// Feasible sets are all sets of sizes `1..=r` in an `n`-element ground set.
pub fn uniform_flag(r: usize, n: usize) -> Result<FlagMatroid, ReprError> {
    if r == 0 || r > n {
        return Err(ReprError::BadLevels(format!("need 1 <= r <= n, got r={r}, n={n}")));
    }
    let layers = (1..=r).map(|k| Matroid::uniform(k, n)).collect::<Result<Vec<_>, _>>()?;
    Ok(FlagMatroid::from_sequence(layers)?)
}

/// Representation of [`uniform_flag`]`(r, n)`: an all-ones row for `r = 1`,
/// otherwise the Vandermonde matrix on nodes `0..n`, which needs `p >= n`.
pub fn uniform_flag_representation(r: usize, n: usize, field: FieldPrime) -> Result<FlagRepresentation, ReprError> {
    if r == 0 || r > n {
        return Err(ReprError::BadLevels(format!("need 1 <= r <= n, got r={r}, n={n}")));
    }
    if r >= 2 && (field.p() as usize) < n {
        return Err(ReprError::FieldTooSmall { p: field.p(), n });
    }
    let matrix = if r == 1 { GfMatrix::from_rows(field, &[vec![1; n]])? } else { gf::vandermonde(field, r, n)? };
    FlagRepresentation::new(matrix, (1..=r).collect())
}

/// Nested kernels: the first `n - d_i` rows span the kernel of the first
/// `d_i` rows of the input. Represents the dual flag matroid.
pub fn dual_representation(rep: &FlagRepresentation) -> Result<FlagRepresentation, ReprError> {
    let n = rep.matrix.cols();
    let chain = rep.matrix.nested_kernel_chain(&rep.levels)?;
    let b = GfMatrix::from_rows_with_cols(rep.field(), &chain, n)?;
    let levels = rep.levels.iter().rev().map(|&d| n - d).collect();
    let out = FlagRepresentation::new(b, levels)?;
    if !out.represents(&rep.flag().dual()) {
        return Err(ReprError::Mismatch("kernel chain does not give the dual".into()));
    }
    Ok(out)
}

/// Remove column `e`. Levels where `e` was a coloop are dropped; they form
/// a top segment, so the matrix is cut to the highest surviving level.
pub fn delete_representation(rep: &FlagRepresentation, e: usize) -> Result<FlagRepresentation, ReprError> {
    if e >= rep.matrix.cols() {
        return Err(MatroidError::IndexOutOfRange { index: e, n: rep.matrix.cols() }.into());
    }
    let b = rep.matrix.remove_col(e)?;
    let mut levels = Vec::new();
    for &d in &rep.levels {
        if b.prefix_rows(d)?.rank() == d {
            levels.push(d);
        } else {
            break;
        }
    }
    let &top = levels.last().ok_or(ReprError::LevelCollapse)?;
    FlagRepresentation::new(b.prefix_rows(top)?, levels)
}

/// Contraction as dual, deletion, dual.
pub fn contract_representation(rep: &FlagRepresentation, e: usize) -> Result<FlagRepresentation, ReprError> {
    let dual = dual_representation(rep)?;
    dual_representation(&delete_representation(&dual, e)?)
}

/// Drop level `size`; dropping the top level cuts the matrix.
pub fn chop_representation(rep: &FlagRepresentation, size: usize) -> Result<FlagRepresentation, ReprError> {
    let pos = rep.levels.iter().position(|&d| d == size).ok_or(FlagError::NoSuchLayer(size))?;
    if rep.levels.len() == 1 {
        return Err(ReprError::LevelCollapse);
    }
    let mut levels = rep.levels.clone();
    levels.remove(pos);
    let top = *levels.last().expect("at least one level left");
    FlagRepresentation::new(rep.matrix.prefix_rows(top)?, levels)
}

/// The major `[A | E]` where extra column `n + j` is the unit vector of row
/// `d_1 + j`. Block `i` holds the columns whose rows lie in `d_i..d_{i+1}`.
/// A single level gives the matroid itself with no blocks.
pub fn major_from_representation(rep: &FlagRepresentation) -> Result<(MajorStructure, GfMatrix), ReprError> {
    let levels = &rep.levels;
    let (n, r, d1) = (rep.matrix.cols(), rep.matrix.rows(), levels[0]);
    let s = r - d1;
    let mut extended = GfMatrix::zeros(rep.field(), r, n + s)?;
    for i in 0..r {
        for j in 0..n {
            extended.set(i, j, rep.matrix.get(i, j));
        }
    }
    for j in 0..s {
        extended.set(d1 + j, n + j, 1);
    }
    let blocks: Vec<Vec<usize>> = levels.windows(2).map(|w| (n + w[0] - d1..n + w[1] - d1).collect()).collect();
    let major = MajorStructure { matroid: Matroid::linear(&extended)?, blocks };
    if !major.verify(&rep.flag())? {
        return Err(ReprError::Mismatch("identity-block major fails verification".into()));
    }
    Ok((major, extended))
}

/// Equal row spaces.
pub fn projectively_equivalent(a: &GfMatrix, b: &GfMatrix) -> Result<bool, ReprError> {
    Ok(a.same_row_space(b)?)
}

/// Extend `lower` (ending at level `d`) by `upper` (starting at level `d`)
/// when both represent the same matroid at level `d`. Columns of `upper`
/// are rescaled if needed so its first `d` rows share the row space of
/// `lower`, then `diag(T, I)` aligns them.
pub fn stitch_representations(
    lower: &FlagRepresentation,
    upper: &FlagRepresentation,
) -> Result<FlagRepresentation, ReprError> {
    let d = *lower.levels.last().expect("levels are nonempty");
    if upper.levels[0] != d {
        return Err(ReprError::BadLevels(format!("lower ends at {d}, upper starts at {}", upper.levels[0])));
    }
    if lower.field() != upper.field() {
        return Err(GfError::FieldMismatch(lower.field().p(), upper.field().p()).into());
    }
    let a = &lower.matrix;
    let scaled = align_columns(a, &upper.matrix, d)?;
    let t = gf::solve_left_transform(a, &scaled.prefix_rows(d)?)?;
    let r = scaled.rows();
    let mut hat = GfMatrix::identity(a.field(), r)?;
    for i in 0..d {
        for j in 0..d {
            hat.set(i, j, t.get(i, j));
        }
    }
    let matrix = hat.mul(&scaled)?;
    let levels = lower.levels.iter().chain(&upper.levels[1..]).copied().collect();
    FlagRepresentation::new(matrix, levels)
}

/// `b` with columns rescaled so that its first `d` rows span the row
/// space of `a`; identity scaling is tried first.
fn align_columns(a: &GfMatrix, b: &GfMatrix, d: usize) -> Result<GfMatrix, ReprError> {
    let field = a.field();
    let n = b.cols();
    let units = field.p() as usize - 1;
    // Zero columns of the prefix need no scaling.
    let active: Vec<usize> = (0..n).filter(|&j| (0..d).any(|i| b.get(i, j) != 0)).collect();
    let space = (units as u128).checked_pow(active.len() as u32).unwrap_or(u128::MAX);
    if space > SEARCH_LIMIT {
        return Err(ReprError::SearchSpaceTooLarge(space));
    }
    let mut digits = vec![0usize; active.len()];
    loop {
        let mut c = b.clone();
        for (&j, &k) in active.iter().zip(&digits) {
            let s = k as u32 + 1;
            for i in 0..c.rows() {
                c.set(i, j, field.mul(c.get(i, j), s));
            }
        }
        if c.prefix_rows(d)?.same_row_space(a)? {
            return Ok(c);
        }
        let mut i = digits.len();
        loop {
            if i == 0 {
                return Err(GfError::NoTransform.into());
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < units {
                break;
            }
            digits[i] = 0;
        }
    }
}

/// Columns `cols` of the row list are linearly independent.
fn independent_cols(rows: &[Vec<u32>], cols: u32, field: FieldPrime) -> bool {
    let idx = bits::to_indices(cols);
    if idx.len() > rows.len() {
        return false;
    }
    let mut vecs: Vec<Vec<u32>> = idx.iter().map(|&c| rows.iter().map(|r| r[c]).collect()).collect();
    let width = rows.len();
    let mut rank = 0;
    for col in 0..width {
        let Some(pivot) = (rank..vecs.len()).find(|&i| vecs[i][col] != 0) else { continue };
        vecs.swap(rank, pivot);
        let inv = field.inv(vecs[rank][col]);
        for i in rank + 1..vecs.len() {
            let f = field.mul(vecs[i][col], inv);
            if f != 0 {
                for k in col..width {
                    let v = field.mul(f, vecs[rank][k]);
                    vecs[i][k] = field.sub(vecs[i][k], v);
                }
            }
        }
        rank += 1;
    }
    rank == vecs.len()
}

/// The column matroid of `rows` (with `rows.len()` rows) has exactly the
/// bases of `m`.
fn rows_represent(rows: &[Vec<u32>], m: &Matroid, field: FieldPrime) -> bool {
    m.rank() == rows.len()
        && bits::k_subsets(m.n(), m.rank()).into_iter().all(|s| independent_cols(rows, s, field) == m.is_basis(s))
}

/// A matrix whose column matroid is `m`, if one exists over `field`.
/// Standard form `[I | D]` on the lexicographically first basis; the
/// support of `D` is fixed by fundamental circuits and the entries on a
/// spanning forest of that support are normalized to one.
pub fn represent_matroid(m: &Matroid, field: FieldPrime) -> Result<Option<GfMatrix>, ReprError> {
    let (n, r) = (m.n(), m.rank());
    if r == 0 {
        return Ok(Some(GfMatrix::zeros(field, 0, n)?));
    }
    let basis = m.bases()[0];
    let rows_of: Vec<usize> = bits::to_indices(basis);
    let mut support: Vec<(usize, usize)> = Vec::new();
    for c in 0..n {
        if bits::contains(basis, c) || m.is_loop(c) {
            continue;
        }
        for (j, &b) in rows_of.iter().enumerate() {
            if m.is_basis(basis & !(1 << b) | 1 << c) {
                support.push((j, c));
            }
        }
    }
    // Spanning forest over row nodes 0..r and column nodes r + c.
    let mut parent: Vec<usize> = (0..r + n).collect();
    fn root(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut free = Vec::new();
    for (k, &(j, c)) in support.iter().enumerate() {
        let (a, b) = (root(&mut parent, j), root(&mut parent, r + c));
        if a == b {
            free.push(k);
        } else {
            parent[a] = b;
        }
    }
    let units = field.p() as usize - 1;
    let space = (units as u128).checked_pow(free.len() as u32).unwrap_or(u128::MAX);
    if space > SEARCH_LIMIT {
        return Err(ReprError::SearchSpaceTooLarge(space));
    }
    let mut rows = vec![vec![0u32; n]; r];
    for (j, &b) in rows_of.iter().enumerate() {
        rows[j][b] = 1;
    }
    for &(j, c) in &support {
        rows[j][c] = 1;
    }
    let mut digits = vec![0usize; free.len()];
    loop {
        for (&k, &v) in free.iter().zip(&digits) {
            let (j, c) = support[k];
            rows[j][c] = v as u32 + 1;
        }
        if rows_represent(&rows, m, field) {
            return Ok(Some(GfMatrix::from_rows_with_cols(field, &rows, n)?));
        }
        let mut i = digits.len();
        loop {
            if i == 0 {
                return Ok(None);
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < units {
                break;
            }
            digits[i] = 0;
        }
    }
}

/// Brute-force search for a representation of `f` over `field`, one row at
/// a time. Rows are canonical modulo the rows above them (zero on earlier
/// pivots, leading entry one) and the first row is 0/1 after column
/// scaling. Each completed level must reproduce its layer exactly.
pub fn search_representation(f: &FlagMatroid, field: FieldPrime) -> Result<Option<FlagRepresentation>, ReprError> {
    let levels = f.ranks();
    let r = *levels.last().expect("flags are nonempty");
    let n = f.n();
    let block: Vec<usize> = (0..r).map(|t| levels.iter().position(|&d| t < d).expect("t below top")).collect();
    let allowed: Vec<u32> = f.layers().iter().map(|m| bits::full(n) & !m.loops()).collect();
    let p = field.p() as u128;
    let mut estimate: u128 = 1;
    for t in 0..r {
        let width = bits::card(allowed[block[t]]).saturating_sub(t) as u32;
        let count = if t == 0 { (1u128 << width) - 1 } else { (p.pow(width) - 1) / (p - 1) };
        estimate = estimate.saturating_mul(count.max(1));
    }
    if estimate > SEARCH_LIMIT {
        return Err(ReprError::SearchSpaceTooLarge(estimate));
    }
    let mut search = RowSearch { field, n, f, levels: &levels, block: &block, allowed: &allowed, rows: Vec::new() };
    if r == 0 || search.dfs() {
        let matrix = GfMatrix::from_rows_with_cols(field, &search.rows, n)?;
        let rep = FlagRepresentation::new(matrix, levels.clone())?;
        debug_assert!(rep.represents(f));
        return Ok(Some(rep));
    }
    Ok(None)
}

struct RowSearch<'a> {
    field: FieldPrime,
    n: usize,
    f: &'a FlagMatroid,
    levels: &'a [usize],
    block: &'a [usize],
    allowed: &'a [u32],
    rows: Vec<Vec<u32>>,
}

impl RowSearch<'_> {
    fn dfs(&mut self) -> bool {
        let t = self.rows.len();
        if t == self.block.len() {
            return true;
        }
        let layer = self.block[t];
        let pivots: u32 = if t == 0 {
            0
        } else {
            let m = GfMatrix::from_rows_with_cols(self.field, &self.rows, self.n).expect("small matrix");
            bits::from_indices(&m.rref().1)
        };
        let free: Vec<usize> = bits::to_indices(self.allowed[layer] & !pivots);
        let p = if t == 0 { 2 } else { self.field.p() };
        // Lexicographic order: later leading positions come first.
        for lead in (0..free.len()).rev() {
            let tail = free.len() - lead - 1;
            let mut digits = vec![0u32; tail];
            loop {
                let mut row = vec![0u32; self.n];
                row[free[lead]] = 1;
                for (k, &v) in digits.iter().enumerate() {
                    row[free[lead + 1 + k]] = v;
                }
                self.rows.push(row);
                if self.prefix_ok(layer) && self.dfs() {
                    return true;
                }
                self.rows.pop();
                let mut i = tail;
                loop {
                    if i == 0 {
                        break;
                    }
                    i -= 1;
                    digits[i] += 1;
                    if digits[i] < p {
                        break;
                    }
                    digits[i] = 0;
                }
                if digits.iter().all(|&v| v == 0) {
                    break;
                }
            }
        }
        false
    }

    /// A finished level matches its layer; inside a level, every set
    /// independent in the prefix is independent in the layer being built.
    fn prefix_ok(&self, layer: usize) -> bool {
        let d = self.rows.len();
        let m = &self.f.layers()[layer];
        if self.levels[layer] == d {
            rows_represent(&self.rows, m, self.field)
        } else {
            bits::k_subsets(self.n, d)
                .into_iter()
                .all(|s| !independent_cols(&self.rows, s, self.field) || m.is_independent(s))
        }
    }
}

/// A flag minor of the input isomorphic to one of the excluded flags.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExcludedMinor {
    pub target: FlagMatroid,
    pub witness: FlagMinorWitness,
}

/// Verdict of the excluded-minor decision for full flag matroids.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum FullDecision {
    Representable { representation: FlagRepresentation },
    Excluded(ExcludedMinor),
}

impl FullDecision {
    pub fn is_representable(&self) -> bool {
        matches!(self, FullDecision::Representable { .. })
    }
}

fn pair(lower: Matroid, upper: Matroid) -> FlagMatroid {
    FlagMatroid::from_sequence(vec![lower, upper]).expect("static lift pair")
}

/// Excluded flag minors for full binary flag matroids.
pub fn binary_excluded_flags() -> &'static [FlagMatroid] {
    static LIST: OnceLock<Vec<FlagMatroid>> = OnceLock::new();
    LIST.get_or_init(|| {
        let u = |r, n| Matroid::uniform(r, n).expect("static");
        vec![FlagMatroid::basis(&u(2, 4)), pair(u(1, 3), u(2, 3))]
    })
}

/// Excluded flag minors for full ternary flag matroids: each `R` of the
/// matroid list alone, then the pairs `(R/e, R\e)` for `e` neither a loop
/// nor a coloop, one per isomorphism class.
pub fn ternary_excluded_flags() -> &'static [FlagMatroid] {
    static LIST: OnceLock<Vec<FlagMatroid>> = OnceLock::new();
    LIST.get_or_init(|| {
        let mut out: Vec<FlagMatroid> = Vec::new();
        for r in catalogue::ternary_excluded() {
            out.push(FlagMatroid::basis(r));
        }
        for r in catalogue::ternary_excluded() {
            for e in 0..r.n() {
                if r.is_loop(e) || r.is_coloop(e) {
                    continue;
                }
                let cand = pair(r.contract(e).expect("e in range"), r.delete(e).expect("e in range"));
                if !out.iter().any(|g| g.is_isomorphic(&cand).is_some()) {
                    out.push(cand);
                }
            }
        }
        out
    })
}

fn excluded_for(field: FieldPrime) -> Result<&'static [FlagMatroid], ReprError> {
    match field.p() {
        2 => Ok(binary_excluded_flags()),
        3 => Ok(ternary_excluded_flags()),
        p => Err(ReprError::UnsupportedField(p)),
    }
}

fn require_full(f: &FlagMatroid) -> Result<(), ReprError> {
    if f.is_full() {
        Ok(())
    } else {
        Err(ReprError::NotFull(f.ranks()))
    }
}

/// The first excluded flag (in list order) occurring as a minor of `f`.
pub fn find_excluded_minor(f: &FlagMatroid, field: FieldPrime) -> Result<Option<ExcludedMinor>, ReprError> {
    let list = excluded_for(field)?;
    require_full(f)?;
    Ok(list.iter().find_map(|target| {
        f.has_minor(target).map(|witness| ExcludedMinor { target: target.clone(), witness })
    }))
}

/// Representation built from the lift witnesses: each witness is
/// represented as a matroid, turned into a two-level representation, and
/// the pieces are stitched. `None` when some witness is not representable.
pub fn witness_route(f: &FlagMatroid, field: FieldPrime) -> Result<Option<FlagRepresentation>, ReprError> {
    excluded_for(field)?;
    require_full(f)?;
    let layers = f.layers();
    if layers.len() == 1 {
        let Some(a) = represent_matroid(&layers[0], field)? else { return Ok(None) };
        return Ok(Some(FlagRepresentation::new(a, vec![layers[0].rank()])?));
    }
    let seq = lift::lift_witness_sequence(f)?;
    let mut acc: Option<FlagRepresentation> = None;
    for q in &seq.witnesses {
        let representable = if field.p() == 2 { q.is_binary() } else { q.is_ternary() };
        if !representable {
            return Ok(None);
        }
        let a = represent_matroid(q, field)?
            .ok_or_else(|| ReprError::Mismatch("excluded-minor test and matrix search disagree".into()))?;
        let piece = pair_from_witness(&a)?;
        acc = Some(match acc {
            None => piece,
            Some(lower) => stitch_representations(&lower, &piece)?,
        });
    }
    let rep = acc.expect("at least one witness");
    if !rep.represents(f) {
        return Err(ReprError::Mismatch("stitched representation".into()));
    }
    Ok(Some(rep))
}

/// From a representation of a lift witness whose last column is the extra
/// element: move that column to the last unit vector, then drop it.
fn pair_from_witness(a: &GfMatrix) -> Result<FlagRepresentation, ReprError> {
    let (r, n) = (a.rows(), a.cols() - 1);
    let field = a.field();
    let v = a.column(n);
    let j = v.iter().position(|&x| x != 0).ok_or_else(|| ReprError::Mismatch("extra element is a loop".into()))?;
    let mut basis = GfMatrix::zeros(field, r, r)?;
    for (col, k) in (0..r).filter(|&k| k != j).enumerate() {
        basis.set(k, col, 1);
    }
    for (i, &x) in v.iter().enumerate() {
        basis.set(i, r - 1, x);
    }
    let t = basis.inverse().ok_or_else(|| ReprError::Mismatch("singular change of basis".into()))?;
    let moved = t.mul(a)?.remove_col(n)?;
    FlagRepresentation::new(moved, vec![r - 1, r])
}

/// Excluded-minor decision with a stitched certificate on the positive side.
pub fn decide_full(f: &FlagMatroid, field: FieldPrime) -> Result<FullDecision, ReprError> {
    if let Some(found) = find_excluded_minor(f, field)? {
        return Ok(FullDecision::Excluded(found));
    }
    match witness_route(f, field)? {
        Some(representation) => Ok(FullDecision::Representable { representation }),
        None => Err(ReprError::Mismatch("no excluded minor but a lift witness is not representable".into())),
    }
}

pub fn is_binary_full(f: &FlagMatroid) -> Result<FullDecision, ReprError> {
    decide_full(f, FieldPrime::new(2).expect("prime"))
}

pub fn is_ternary_full(f: &FlagMatroid) -> Result<FullDecision, ReprError> {
    decide_full(f, FieldPrime::new(3).expect("prime"))
}

/// Three-valued answer of the filling route.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum FillingVerdict {
    /// A representable filling and, from it, a representation of the input.
    Yes { filling: FlagMatroid, representation: FlagRepresentation },
    No,
    Unknown { budget: u64 },
}

/// Representable iff some filling is; fillings are tried in enumeration
/// order and each is decided by the excluded-minor test.
pub fn is_representable_via_fillings(f: &FlagMatroid, field: FieldPrime, budget: u64) -> Result<FillingVerdict, ReprError> {
    excluded_for(field)?;
    let mut found: Option<(FlagMatroid, FlagRepresentation)> = None;
    let mut failure: Option<ReprError> = None;
    let outcome = lift::visit_fillings(f, budget, &mut |g| match decide_full(g, field) {
        Ok(FullDecision::Representable { representation }) => {
            found = Some((g.clone(), representation));
            ControlFlow::Break(())
        }
        Ok(FullDecision::Excluded(_)) => ControlFlow::Continue(()),
        Err(e) => {
            failure = Some(e);
            ControlFlow::Break(())
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    match outcome {
        Err(LiftError::BudgetExhausted(b)) => Ok(FillingVerdict::Unknown { budget: b }),
        Err(e) => Err(e.into()),
        Ok(_) => match found {
            None => Ok(FillingVerdict::No),
            Some((filling, full_rep)) => {
                let mut rep = full_rep;
                for &d in filling.ranks().iter().filter(|d| !f.ranks().contains(d)) {
                    rep = chop_representation(&rep, d)?;
                }
                debug_assert!(rep.represents(f));
                Ok(FillingVerdict::Yes { filling, representation: rep })
            }
        },
    }
}
