//! Multigraphs, vertex-partition chains and graphic flag matroids.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::{self, MAX_GROUND};
use crate::flag::{FlagError, FlagMatroid};
use crate::lift::{self, MajorStructure};
use crate::matroid::Matroid;

pub mod harness;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphicError {
    #[error("edge {edge} has endpoint outside {vertices} vertices")]
    BadEdge { edge: usize, vertices: usize },
    #[error("graph has {0} edges, more than {MAX_GROUND}")]
    TooManyEdges(usize),
    #[error("edge index {0} out of range")]
    NoSuchEdge(usize),
    #[error("invalid partition: {0}")]
    BadPartition(String),
    #[error("partition {0} does not refine the partition before it")]
    NotRefinement(usize),
    #[error("partition chain is empty")]
    EmptyChain,
    #[error("layer {0} has the same rank as the layer before it")]
    TrivialLiftLayer(usize),
    #[error("finest partition is not all singletons")]
    ChainNotGrounded,
    #[error("operation leaves no feasible set")]
    EmptyResult,
    #[error("no choice of component representatives preserves every quotient matroid")]
    ConnectifyFailed,
    #[error("malformed blocks: {0}")]
    BadBlocks(String),
    #[error("flag construction failed: {0}")]
    Flag(FlagError),
}

impl From<FlagError> for GraphicError {
    fn from(e: FlagError) -> Self {
        GraphicError::Flag(e)
    }
}

impl GraphicError {
    pub fn code(&self) -> &'static str {
        match self {
            GraphicError::BadEdge { .. } => "bad_edge",
            GraphicError::TooManyEdges(_) => "too_many_edges",
            GraphicError::NoSuchEdge(_) => "no_such_edge",
            GraphicError::BadPartition(_) => "bad_partition",
            GraphicError::NotRefinement(_) => "not_refinement",
            GraphicError::EmptyChain => "empty_chain",
            GraphicError::TrivialLiftLayer(_) => "trivial_lift_layer",
            GraphicError::ChainNotGrounded => "chain_not_grounded",
            GraphicError::EmptyResult => "empty_result",
            GraphicError::ConnectifyFailed => "connectify_failed",
            GraphicError::BadBlocks(_) => "bad_blocks",
            GraphicError::Flag(e) => e.code(),
        }
    }
}

/// Disjoint-set forest over `0..n`.
struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    /// Merge the classes of `a` and `b`; false if they were already one.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        self.parent[hi] = lo;
        true
    }

    /// Canonical labels: classes numbered by least member.
    fn labels(&mut self) -> Vec<usize> {
        let n = self.parent.len();
        let roots: Vec<usize> = (0..n).map(|x| self.find(x)).collect();
        Partition::from_labels(&roots).labels
    }
}

/// A finite multigraph. Loops and parallel edges are allowed; edge `i` is
/// ground-set element `i` of every matroid built from the graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiGraph {
    vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl MultiGraph {
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self, GraphicError> {
        if edges.len() > MAX_GROUND {
            return Err(GraphicError::TooManyEdges(edges.len()));
        }
        if let Some(edge) = edges.iter().position(|&(u, v)| u >= vertices || v >= vertices) {
            return Err(GraphicError::BadEdge { edge, vertices });
        }
        let edges = edges.into_iter().map(|(u, v)| (u.min(v), u.max(v))).collect();
        Ok(MultiGraph { vertices, edges })
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        MultiGraph::new(n, edges).expect("complete graphs up to K6 fit")
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let edges = (0..a).flat_map(|u| (0..b).map(move |v| (u, a + v))).collect();
        MultiGraph::new(a + b, edges).expect("small bipartite graph")
    }

    #[inline]
    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn cycle_matroid(&self) -> Matroid {
        self.quotient_unchecked(&Partition::singletons(self.vertices))
    }

    /// The matroid of the quotient graph whose vertices are the cells of `p`.
    pub fn quotient_matroid(&self, p: &Partition) -> Result<Matroid, GraphicError> {
        if p.labels.len() != self.vertices {
            return Err(GraphicError::BadPartition(format!(
                "covers {} vertices, graph has {}",
                p.labels.len(),
                self.vertices
            )));
        }
        Ok(self.quotient_unchecked(p))
    }

    fn quotient_unchecked(&self, p: &Partition) -> Matroid {
        let images: Vec<(usize, usize)> = self.edges.iter().map(|&(u, v)| (p.labels[u], p.labels[v])).collect();
        let acyclic = |s: u32| {
            let mut uf = UnionFind::new(p.cells);
            bits::elements(s).all(|e| uf.union(images[e].0, images[e].1))
        };
        let m = self.edges.len();
        let rank = {
            let mut uf = UnionFind::new(p.cells);
            images.iter().filter(|&&(a, b)| uf.union(a, b)).count()
        };
        let bases = bits::k_subsets(m, rank).into_iter().filter(|&s| acyclic(s)).collect();
        Matroid::from_bases_unchecked(m, bases)
    }

    /// Connected-component labels, numbered by least vertex.
    pub fn components(&self) -> Vec<usize> {
        self.components_on(bits::full(self.edges.len()))
    }

    fn components_on(&self, edges: u32) -> Vec<usize> {
        let mut uf = UnionFind::new(self.vertices);
        for e in bits::elements(edges) {
            uf.union(self.edges[e].0, self.edges[e].1);
        }
        uf.labels()
    }

    pub fn is_connected(&self) -> bool {
        self.components().iter().all(|&c| c == 0)
    }

    pub fn with_edge(&self, u: usize, v: usize) -> Result<MultiGraph, GraphicError> {
        let mut edges = self.edges.clone();
        edges.push((u, v));
        MultiGraph::new(self.vertices, edges)
    }

    pub fn without_edges(&self, drop: u32) -> MultiGraph {
        let edges = (0..self.edges.len()).filter(|&e| !bits::contains(drop, e)).map(|e| self.edges[e]).collect();
        MultiGraph { vertices: self.vertices, edges }
    }

    /// Merge vertex `max(u, v)` into `min(u, v)`; later vertices shift down.
    pub fn identify(&self, u: usize, v: usize) -> MultiGraph {
        let map = merge_map(self.vertices, u, v);
        let edges = self.edges.iter().map(|&(a, b)| (map[a].min(map[b]), map[a].max(map[b]))).collect();
        MultiGraph { vertices: self.vertices - usize::from(u != v), edges }
    }

    /// Graphs obtained by identifying one unordered pair of distinct vertices,
    /// pairs in lexicographic order.
    pub fn vertex_identifications(&self) -> Vec<((usize, usize), MultiGraph)> {
        (0..self.vertices)
            .flat_map(|u| (u + 1..self.vertices).map(move |v| (u, v)))
            .map(|(u, v)| ((u, v), self.identify(u, v)))
            .collect()
    }

    /// Same edge labels with the same endpoints under some vertex bijection.
    pub fn same_labeled_graph(&self, other: &MultiGraph) -> bool {
        if self.vertices != other.vertices || self.edges.len() != other.edges.len() {
            return false;
        }
        let mut map = vec![usize::MAX; self.vertices];
        let mut used = vec![false; self.vertices];
        self.match_from(other, 0, &mut map, &mut used)
    }

    fn match_from(&self, other: &MultiGraph, v: usize, map: &mut [usize], used: &mut [bool]) -> bool {
        if v == self.vertices {
            return self.edges.iter().zip(&other.edges).all(|(&(a, b), &(c, d))| {
                let (x, y) = (map[a].min(map[b]), map[a].max(map[b]));
                (x, y) == (c, d)
            });
        }
        for w in 0..self.vertices {
            if used[w] {
                continue;
            }
            map[v] = w;
            used[w] = true;
            if self.partial_ok(other, v, map) && self.match_from(other, v + 1, map, used) {
                return true;
            }
            used[w] = false;
        }
        map[v] = usize::MAX;
        false
    }

    fn partial_ok(&self, other: &MultiGraph, v: usize, map: &[usize]) -> bool {
        self.edges.iter().zip(&other.edges).all(|(&(a, b), &(c, d))| {
            if a > v || b > v {
                return true;
            }
            (map[a].min(map[b]), map[a].max(map[b])) == (c, d)
        })
    }

    /// 3-connectivity of the underlying simple graph: at least four
    /// vertices and connected after removing any two.
    pub fn is_three_connected(&self) -> bool {
        let n = self.vertices;
        if n < 4 {
            return false;
        }
        let simple: Vec<(usize, usize)> = self.edges.iter().copied().filter(|&(u, v)| u != v).collect();
        let connected_without = |gone: &[usize]| {
            let mut uf = UnionFind::new(n);
            for &(u, v) in &simple {
                if !gone.contains(&u) && !gone.contains(&v) {
                    uf.union(u, v);
                }
            }
            let alive: Vec<usize> = (0..n).filter(|x| !gone.contains(x)).collect();
            let root = uf.find(alive[0]);
            alive.iter().all(|&x| uf.find(x) == root)
        };
        connected_without(&[])
            && (0..n).all(|a| connected_without(&[a]))
            && (0..n).all(|a| (a + 1..n).all(|b| connected_without(&[a, b])))
    }
}

/// Vertex map of identifying `u` and `v` (the larger into the smaller).
fn merge_map(vertices: usize, u: usize, v: usize) -> Vec<usize> {
    let (lo, hi) = (u.min(v), u.max(v));
    (0..vertices)
        .map(|x| match x.cmp(&hi) {
            std::cmp::Ordering::Less => x,
            std::cmp::Ordering::Equal => lo,
            std::cmp::Ordering::Greater if lo == hi => x,
            std::cmp::Ordering::Greater => x - 1,
        })
        .collect()
}

/// A partition of `0..n` as canonical cell labels: cells are numbered in
/// order of their least vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    labels: Vec<usize>,
    cells: usize,
}

impl Partition {
    pub fn from_labels(raw: &[usize]) -> Self {
        let mut seen: Vec<(usize, usize)> = Vec::new();
        let labels = raw
            .iter()
            .map(|&r| match seen.iter().find(|&&(k, _)| k == r) {
                Some(&(_, id)) => id,
                None => {
                    let id = seen.len();
                    seen.push((r, id));
                    id
                }
            })
            .collect();
        Partition { labels, cells: seen.len() }
    }

    pub fn from_cells(vertices: usize, cells: &[Vec<usize>]) -> Result<Self, GraphicError> {
        let mut raw = vec![usize::MAX; vertices];
        for (i, cell) in cells.iter().enumerate() {
            if cell.is_empty() {
                return Err(GraphicError::BadPartition("empty cell".into()));
            }
            for &v in cell {
                if v >= vertices {
                    return Err(GraphicError::BadPartition(format!("vertex {v} out of range")));
                }
                if raw[v] != usize::MAX {
                    return Err(GraphicError::BadPartition(format!("vertex {v} in two cells")));
                }
                raw[v] = i;
            }
        }
        if let Some(v) = raw.iter().position(|&x| x == usize::MAX) {
            return Err(GraphicError::BadPartition(format!("vertex {v} not covered")));
        }
        Ok(Self::from_labels(&raw))
    }

    pub fn singletons(n: usize) -> Self {
        Partition { labels: (0..n).collect(), cells: n }
    }

    pub fn whole(n: usize) -> Self {
        Partition { labels: vec![0; n], cells: usize::from(n > 0) }
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn cell_count(&self) -> usize {
        self.cells
    }

    pub fn cells(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.cells];
        for (v, &c) in self.labels.iter().enumerate() {
            out[c].push(v);
        }
        out
    }

    /// Every cell of `self` lies inside a cell of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        let mut image = vec![usize::MAX; self.cells];
        self.labels.iter().zip(&coarser.labels).all(|(&fine, &coarse)| {
            if image[fine] == usize::MAX {
                image[fine] = coarse;
            }
            image[fine] == coarse
        })
    }

    pub fn is_singletons(&self) -> bool {
        self.cells == self.labels.len()
    }

    /// Transport along a vertex map, merging cells whose images meet.
    fn transport(&self, map: &[usize], vertices: usize) -> Partition {
        let mut uf = UnionFind::new(vertices + self.cells);
        for (v, &c) in self.labels.iter().enumerate() {
            uf.union(map[v], vertices + c);
        }
        let raw: Vec<usize> = (0..vertices).map(|x| uf.find(x)).collect();
        Partition::from_labels(&raw)
    }
}

/// Vertex partitions, coarsest first, each refining the previous one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartitionChain {
    partitions: Vec<Partition>,
}

impl PartitionChain {
    pub fn new(partitions: Vec<Partition>) -> Result<Self, GraphicError> {
        let first = partitions.first().ok_or(GraphicError::EmptyChain)?;
        let n = first.labels.len();
        if partitions.iter().any(|p| p.labels.len() != n) {
            return Err(GraphicError::BadPartition("partitions cover different vertex sets".into()));
        }
        if let Some(i) = (1..partitions.len()).find(|&i| !partitions[i].refines(&partitions[i - 1])) {
            return Err(GraphicError::NotRefinement(i));
        }
        Ok(PartitionChain { partitions })
    }

    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    pub fn vertices(&self) -> usize {
        self.partitions[0].labels.len()
    }
}

fn check_chain(g: &MultiGraph, chain: &PartitionChain) -> Result<(), GraphicError> {
    if chain.vertices() != g.vertices {
        return Err(GraphicError::BadPartition(format!(
            "chain covers {} vertices, graph has {}",
            chain.vertices(),
            g.vertices
        )));
    }
    Ok(())
}

/// The flag matroid with layers `M(G, P_1), .., M(G, P_k)`.
pub fn graphic_flag(g: &MultiGraph, chain: &PartitionChain) -> Result<FlagMatroid, GraphicError> {
    check_chain(g, chain)?;
    let layers: Vec<Matroid> = chain.partitions.iter().map(|p| g.quotient_unchecked(p)).collect();
    if let Some(i) = (1..layers.len()).find(|&i| layers[i].rank() <= layers[i - 1].rank()) {
        return Err(GraphicError::TrivialLiftLayer(i));
    }
    Ok(FlagMatroid::from_sequence(layers)?)
}

/// Identify one representative per connected component into a single
/// vertex. Representatives are tried in lexicographic order until every
/// quotient matroid of the chain is preserved.
pub fn connectify(g: &MultiGraph, chain: &PartitionChain) -> Result<(MultiGraph, PartitionChain), GraphicError> {
    check_chain(g, chain)?;
    let comp = g.components();
    let count = comp.iter().max().map_or(0, |&c| c + 1);
    if count <= 1 {
        return Ok((g.clone(), chain.clone()));
    }
    let members: Vec<Vec<usize>> = (0..count).map(|c| (0..g.vertices).filter(|&v| comp[v] == c).collect()).collect();
    let originals: Vec<Matroid> = chain.partitions.iter().map(|p| g.quotient_unchecked(p)).collect();
    let mut choice = vec![0usize; count];
    loop {
        let reps: Vec<usize> = choice.iter().zip(&members).map(|(&i, m)| m[i]).collect();
        let (h, map) = identify_all(g, &reps);
        let partitions: Vec<Partition> = chain.partitions.iter().map(|p| p.transport(&map, h.vertices)).collect();
        if partitions.iter().zip(&originals).all(|(p, m)| h.quotient_unchecked(p) == *m) {
            return Ok((h, PartitionChain { partitions }));
        }
        // Odometer over representative choices, last component fastest.
        let mut i = count;
        loop {
            if i == 0 {
                return Err(GraphicError::ConnectifyFailed);
            }
            i -= 1;
            choice[i] += 1;
            if choice[i] < members[i].len() {
                break;
            }
            choice[i] = 0;
        }
    }
}

/// Merge every vertex in `reps` into `reps[0]`; returns the graph and the
/// old-to-new vertex map.
fn identify_all(g: &MultiGraph, reps: &[usize]) -> (MultiGraph, Vec<usize>) {
    let mut map = vec![0; g.vertices];
    let mut next = 0;
    for v in 0..g.vertices {
        if reps[1..].contains(&v) {
            continue;
        }
        map[v] = next;
        next += 1;
    }
    for &r in &reps[1..] {
        map[r] = map[reps[0]];
    }
    let edges = g.edges.iter().map(|&(a, b)| (map[a].min(map[b]), map[a].max(map[b]))).collect();
    (MultiGraph { vertices: next, edges }, map)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MinorOp {
    Delete,
    Contract,
}

/// A graph and chain whose graphic flag matroid is the deletion or
/// contraction of edge `e`. Layers in which `e` is a coloop (for deletion)
/// or a loop (for contraction) are dropped, matching the set-system minor.
pub fn graphic_minor(
    g: &MultiGraph,
    chain: &PartitionChain,
    e: usize,
    op: MinorOp,
) -> Result<(MultiGraph, PartitionChain), GraphicError> {
    check_chain(g, chain)?;
    let &(u, v) = g.edges.get(e).ok_or(GraphicError::NoSuchEdge(e))?;
    let (graph, partitions): (MultiGraph, Vec<Partition>) = match op {
        MinorOp::Delete => {
            let kept = chain
                .partitions
                .iter()
                .filter(|p| !g.quotient_unchecked(p).is_coloop(e))
                .cloned()
                .collect();
            (g.without_edges(1 << e), kept)
        }
        MinorOp::Contract => {
            let map = merge_map(g.vertices, u, v);
            let merged = g.identify(u, v).without_edges(1 << e);
            let kept = chain
                .partitions
                .iter()
                .filter(|p| p.labels[u] != p.labels[v])
                .map(|p| p.transport(&map, merged.vertices))
                .collect();
            (merged, kept)
        }
    };
    if partitions.is_empty() {
        return Err(GraphicError::EmptyResult);
    }
    Ok((graph, PartitionChain { partitions }))
}

/// Add a path through the least vertices of the sub-cells of every merged
/// cell, for each coarsening step. The added edges of step `i` form block
/// `i`, and the cycle matroid of the result is a major of the graphic flag.
pub fn graphic_major(g: &MultiGraph, chain: &PartitionChain) -> Result<(MultiGraph, MajorStructure), GraphicError> {
    check_chain(g, chain)?;
    let parts = &chain.partitions;
    if !parts.last().expect("chains are nonempty").is_singletons() {
        return Err(GraphicError::ChainNotGrounded);
    }
    let mut edges = g.edges.clone();
    let mut blocks = Vec::new();
    for w in parts.windows(2) {
        let (coarse, fine) = (&w[0], &w[1]);
        let mut block = Vec::new();
        for cell in coarse.cells() {
            let mut reps: Vec<usize> = Vec::new();
            for &v in &cell {
                if !reps.iter().any(|&r| fine.labels[r] == fine.labels[v]) {
                    reps.push(v);
                }
            }
            for pair in reps.windows(2) {
                block.push(edges.len());
                edges.push((pair[0], pair[1]));
            }
        }
        blocks.push(block);
    }
    let h = MultiGraph::new(g.vertices, edges)?;
    let major = MajorStructure { matroid: h.cycle_matroid(), blocks };
    let flag = graphic_flag(g, chain)?;
    debug_assert!(matches!(major.verify(&flag), Ok(true)));
    Ok((h, major))
}

/// Recover a chain from a graphic major: partition `i` joins vertices
/// linked by edges of blocks `i..`. Returns the graph without the block
/// edges together with the chain.
pub fn major_to_chain(h: &MultiGraph, blocks: &[Vec<usize>]) -> Result<(MultiGraph, PartitionChain), GraphicError> {
    let mut masks = Vec::with_capacity(blocks.len());
    let mut union = 0u32;
    for block in blocks {
        if let Some(&e) = block.iter().find(|&&e| e >= h.edges.len()) {
            return Err(GraphicError::BadBlocks(format!("edge {e} out of range")));
        }
        let mask = bits::from_indices(block);
        if mask & union != 0 {
            return Err(GraphicError::BadBlocks("blocks overlap".into()));
        }
        union |= mask;
        masks.push(mask);
    }
    let partitions = (0..=masks.len())
        .map(|i| {
            let edges = masks[i..].iter().fold(0, |a, &m| a | m);
            Partition::from_labels(&h.components_on(edges))
        })
        .collect();
    Ok((h.without_edges(union), PartitionChain { partitions }))
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct GraphJson {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub colors: Option<Colors>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Colors {
    #[serde(default)]
    pub red: Vec<usize>,
    #[serde(default)]
    pub yellow: Vec<usize>,
}

impl Serialize for MultiGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GraphJson { vertices: self.vertices, edges: self.edges.clone(), colors: None }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for MultiGraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = GraphJson::deserialize(d)?;
        MultiGraph::new(raw.vertices, raw.edges).map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ChainJson {
    partitions: Vec<Vec<Vec<usize>>>,
}

impl Serialize for PartitionChain {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ChainJson { partitions: self.partitions.iter().map(Partition::cells).collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PartitionChain {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = ChainJson::deserialize(d)?;
        let n = raw.partitions.first().map_or(0, |p| p.iter().map(Vec::len).sum());
        let parts = raw
            .partitions
            .iter()
            .map(|cells| Partition::from_cells(n, cells))
            .collect::<Result<Vec<_>, _>>()
            .map_err(D::Error::custom)?;
        PartitionChain::new(parts).map_err(D::Error::custom)
    }
}

/// The complete graph on four vertices with edges `a..f` and the
/// four-step chain `0123 ≻ 013|2 ≻ 01|2|3 ≻ 0|1|2|3`.
pub fn k4_example() -> (MultiGraph, PartitionChain) {
    // a=01 b=03 c=23 d=12 e=13 f=02
    let g = MultiGraph::new(4, vec![(0, 1), (0, 3), (2, 3), (1, 2), (1, 3), (0, 2)]).expect("static graph");
    let parts = [
        vec![vec![0, 1, 2, 3]],
        vec![vec![0, 1, 3], vec![2]],
        vec![vec![0, 1], vec![2], vec![3]],
        vec![vec![0], vec![1], vec![2], vec![3]],
    ];
    let chain = PartitionChain::new(parts.iter().map(|c| Partition::from_cells(4, c).expect("static")).collect())
        .expect("static chain");
    (g, chain)
}

/// Convenience for callers holding a major of a graphic flag.
pub fn verify_graphic_major(g: &MultiGraph, chain: &PartitionChain, major: &MajorStructure) -> Result<bool, GraphicError> {
    let flag = graphic_flag(g, chain)?;
    lift::verify_major(&major.matroid, &major.blocks, &flag)
        .map_err(|e| GraphicError::BadBlocks(e.to_string()))
}
