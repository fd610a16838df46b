//! A four-graph pipeline exhibiting a full flag matroid whose lift witnesses
//! are all graphic while the flag matroid itself is not.
//!
//! The configuration supplies graphs `H1`, `H2`, `G2`, `G3` on a common edge
//! list with red and yellow vertex markings, and two vertex pairs of `G3`:
//! a black-black pair and a red-black pair.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Colors, GraphJson, MultiGraph};
use crate::bits;
use crate::flag::FlagMatroid;
use crate::lift;
use crate::matroid::Matroid;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HarnessError {
    #[error("configuration inconsistent at step ({step}): {detail}")]
    ConfigInconsistent { step: char, detail: String },
}

impl HarnessError {
    pub fn code(&self) -> &'static str {
        match self {
            HarnessError::ConfigInconsistent { .. } => "config_inconsistent",
        }
    }
}

/// A multigraph with red and yellow vertex markings; unmarked vertices are black.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredGraph {
    pub graph: MultiGraph,
    pub colors: Colors,
}

impl ColoredGraph {
    fn is_black(&self, v: usize) -> bool {
        !self.colors.red.contains(&v) && !self.colors.yellow.contains(&v)
    }

    fn reds(&self) -> Result<(usize, usize), String> {
        match self.colors.red[..] {
            [u, v] if u != v && u.max(v) < self.graph.vertices() => Ok((u, v)),
            _ => Err(format!("expected two distinct red vertices, found {:?}", self.colors.red)),
        }
    }
}

impl Serialize for ColoredGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GraphJson {
            vertices: self.graph.vertices(),
            edges: self.graph.edges().to_vec(),
            colors: Some(self.colors.clone()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ColoredGraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = GraphJson::deserialize(d)?;
        let graph = MultiGraph::new(raw.vertices, raw.edges).map_err(D::Error::custom)?;
        let colors = raw.colors.unwrap_or_default();
        if let Some(v) = colors.red.iter().chain(&colors.yellow).find(|&&v| v >= graph.vertices()) {
            return Err(D::Error::custom(format!("colored vertex {v} out of range")));
        }
        Ok(ColoredGraph { graph, colors })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HarnessConfig {
    pub h1: ColoredGraph,
    pub h2: ColoredGraph,
    pub g2: ColoredGraph,
    pub g3: ColoredGraph,
    pub bb_pair: (usize, usize),
    pub rb_pair: (usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub step: char,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HarnessReport {
    pub checks: Vec<Check>,
    pub verdict: String,
}

impl HarnessReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

pub const VERDICT_PASS: &str = "not graphic, witnesses graphic";
pub const VERDICT_FAIL: &str = "inconclusive";

fn inconsistent(detail: impl Into<String>) -> HarnessError {
    HarnessError::ConfigInconsistent { step: 'a', detail: detail.into() }
}

fn nontrivial_parallel_classes(m: &Matroid) -> usize {
    m.parallel_classes().iter().filter(|&&c| bits::card(c) >= 2).count()
}

fn largest_parallel_class(m: &Matroid) -> usize {
    m.parallel_classes().iter().map(|&c| bits::card(c)).max().unwrap_or(0)
}

/// Run every step. Step (a) failures abort with an error; later failures
/// are recorded in the report and turn the verdict inconclusive.
pub fn run(config: &HarnessConfig) -> Result<HarnessReport, HarnessError> {
    let HarnessConfig { h1, h2, g2, g3, bb_pair, rb_pair } = config;
    let mut checks = Vec::new();
    let mut record = |step: char, name: &str, passed: bool, detail: String| {
        checks.push(Check { step, name: name.into(), passed, detail });
    };

    // (a) consistency of the four graphs.
    let m = g3.graph.edges().len();
    if [h1, h2, g2].iter().any(|g| g.graph.edges().len() != m) {
        return Err(inconsistent("graphs have different edge counts"));
    }
    let (r1, r2) = g3.reds().map_err(|e| inconsistent(format!("G3: {e}")))?;
    if !g3.graph.identify(r1, r2).same_labeled_graph(&g2.graph) {
        return Err(inconsistent("G2 is not G3 with its red vertices identified"));
    }
    let (m1, m2, m3) = (h1.graph.cycle_matroid(), h2.graph.cycle_matroid(), g3.graph.cycle_matroid());
    if g2.graph.cycle_matroid() != m2 {
        return Err(inconsistent("M(G2) differs from M(H2)"));
    }
    let (s1, s2) = h2.reds().map_err(|e| inconsistent(format!("H2: {e}")))?;
    if !h2.graph.identify(s1, s2).same_labeled_graph(&h1.graph) {
        return Err(inconsistent("H1 is not H2 with its red vertices identified"));
    }
    let (b1, b2) = *bb_pair;
    let (rr, rb) = *rb_pair;
    let n3 = g3.graph.vertices();
    if b1.max(b2).max(rr).max(rb) >= n3 || !g3.is_black(b1) || !g3.is_black(b2) || b1 == b2 {
        return Err(inconsistent("bb_pair must name two distinct black vertices of G3"));
    }
    if !g3.colors.red.contains(&rr) || !g3.is_black(rb) {
        return Err(inconsistent("rb_pair must name a red then a black vertex of G3"));
    }
    record('a', "consistency", true, "G3 -> G2 by red identification, M(G2) = M(H2), H2 -> H1".into());

    // (b) the three cycle matroids form a full flag matroid.
    let flag = FlagMatroid::from_sequence(vec![m1.clone(), m2.clone(), m3.clone()]);
    let full = flag.as_ref().is_ok_and(FlagMatroid::is_full);
    record(
        'b',
        "full flag",
        full,
        match &flag {
            Ok(f) => format!("ranks {:?}", f.ranks()),
            Err(e) => e.to_string(),
        },
    );

    // (c) lift witnesses are the graphs with one more red-red edge.
    match flag.as_ref().ok().filter(|_| full).map(lift::lift_witness_sequence) {
        Some(Ok(seq)) => {
            let n1 = h2.graph.with_edge(s1, s2).expect("one extra edge fits").cycle_matroid();
            let n2 = g3.graph.with_edge(r1, r2).expect("one extra edge fits").cycle_matroid();
            let joined = g3.graph.edges().contains(&(r1.min(r2), r1.max(r2)));
            record('c', "first witness is H2 plus a red edge", seq.witnesses[0] == n1, String::new());
            record(
                'c',
                "second witness is G3 plus a second red edge",
                joined && seq.witnesses[1] == n2,
                format!("red vertices of G3 already adjacent: {joined}"),
            );
            let graphic: Vec<bool> = seq.witnesses.iter().map(Matroid::is_graphic).collect();
            record('c', "witnesses graphic", graphic.iter().all(|&g| g), format!("{graphic:?}"));
        }
        Some(Err(e)) => record('c', "lift witnesses", false, e.to_string()),
        None => record('c', "lift witnesses", false, "no full flag".into()),
    }

    // (d) the middle layer forces G2, and no identification of G2 gives M1.
    let bb = g3.graph.identify(b1, b2).cycle_matroid();
    let (bb_loops, m2_loops) = (bits::card(bb.loops()), bits::card(m2.loops()));
    record('d', "bb loops", bb_loops == 0 && m2_loops > 0, format!("M(G3bb) {bb_loops} loops, M2 {m2_loops}"));
    let rbm = g3.graph.identify(rr, rb).cycle_matroid();
    let (rb_classes, m2_classes) = (nontrivial_parallel_classes(&rbm), nontrivial_parallel_classes(&m2));
    record(
        'd',
        "rb parallel classes",
        rb_classes < m2_classes,
        format!("M(G3rb) {rb_classes} parallel classes, M2 {m2_classes}"),
    );
    let (m1_loops, m1_largest) = (bits::card(m1.loops()), largest_parallel_class(&m1));
    let mut all_differ = true;
    let mut notes = Vec::new();
    for ((u, v), g) in g2.graph.vertex_identifications() {
        let mm = g.cycle_matroid();
        let (loops, largest) = (bits::card(mm.loops()), largest_parallel_class(&mm));
        let yellow = |x| g2.colors.yellow.contains(&x);
        let kind = match (yellow(u), yellow(v)) {
            (true, true) => "yellow-yellow",
            (false, false) if g2.is_black(u) && g2.is_black(v) => "black-black",
            (true, false) | (false, true) => "black-yellow",
            _ => "other",
        };
        let obstruction = if loops != m1_loops {
            "loop count"
        } else if largest > m1_largest {
            "parallel class"
        } else if mm != m1 {
            "matroid comparison"
        } else {
            all_differ = false;
            "equal"
        };
        notes.push(format!("{u}~{v} {kind}: {loops} loops, largest class {largest}, differs by {obstruction}"));
    }
    record(
        'd',
        "no identification of G2 gives M1",
        all_differ,
        format!("M1 {m1_loops} loops, largest class {m1_largest}; {}", notes.join("; ")),
    );

    // (e) G3 is 3-connected.
    record('e', "G3 3-connected", g3.graph.is_three_connected(), String::new());

    let verdict = if checks.iter().all(|c| c.passed) { VERDICT_PASS } else { VERDICT_FAIL };
    Ok(HarnessReport { checks, verdict: verdict.into() })
}

fn colored(vertices: usize, edges: &[(usize, usize)], red: &[usize], yellow: &[usize]) -> ColoredGraph {
    ColoredGraph {
        graph: MultiGraph::new(vertices, edges.to_vec()).expect("static graph"),
        colors: Colors { red: red.to_vec(), yellow: yellow.to_vec() },
    }
}

/// The nine-edge fixture: `G3` is `K5` minus one edge with red vertices 2
/// and 4; the other graphs follow by red identifications.
pub fn reconstructed_config() -> HarnessConfig {
    let g3 = colored(5, &[(0, 1), (0, 4), (2, 4), (0, 3), (1, 2), (1, 4), (3, 4), (2, 3), (0, 2)], &[2, 4], &[]);
    let g2 = colored(4, &[(0, 1), (0, 2), (2, 2), (0, 3), (1, 2), (1, 2), (2, 3), (2, 3), (0, 2)], &[], &[0, 2]);
    let h2 = colored(4, &[(0, 1), (0, 2), (2, 2), (2, 3), (1, 2), (1, 2), (0, 3), (0, 3), (0, 2)], &[1, 3], &[]);
    let h1 = colored(3, &[(0, 1), (0, 2), (2, 2), (1, 2), (1, 2), (1, 2), (0, 1), (0, 1), (0, 2)], &[], &[]);
    HarnessConfig { h1, h2, g2, g3, bb_pair: (3, 1), rb_pair: (2, 3) }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reconstructed_fixture_passes() {
        let report = run(&reconstructed_config()).unwrap();
        for c in &report.checks {
            assert!(c.passed, "{c:?}");
        }
        assert_eq!(report.verdict, VERDICT_PASS);
    }

    #[test]
    fn loop_and_parallel_facts() {
        let cfg = reconstructed_config();
        let m2 = cfg.h2.graph.cycle_matroid();
        assert_eq!(m2.loops(), 1 << 2);
        let classes: Vec<u32> = m2.parallel_classes().into_iter().filter(|&c| bits::card(c) >= 2).collect();
        assert_eq!(classes, vec![1 << 1 | 1 << 8, 1 << 4 | 1 << 5, 1 << 6 | 1 << 7]);
        let bb = cfg.g3.graph.identify(3, 1).cycle_matroid();
        assert_eq!(bb.loops(), 0);
        let rb = cfg.g3.graph.identify(2, 3).cycle_matroid();
        assert_eq!(nontrivial_parallel_classes(&rb), 2);
        assert_eq!(cfg.g3.graph.vertex_identifications().len(), 10);

        // Both yellows together make three loops; both blacks make four in parallel.
        assert_eq!(bits::card(cfg.g2.graph.identify(0, 2).cycle_matroid().loops()), 3);
        assert_eq!(largest_parallel_class(&cfg.g2.graph.identify(1, 3).cycle_matroid()), 4);
        assert_eq!(largest_parallel_class(&cfg.h1.graph.cycle_matroid()), 3);
    }

    #[test]
    fn flag_is_not_a_graphic_chain_over_g3_alone() {
        // Independent confirmation: every two-step vertex identification of
        // G3 that yields M2 is followed by none that yields M1.
        let cfg = reconstructed_config();
        let (m1, m2) = (cfg.h1.graph.cycle_matroid(), cfg.h2.graph.cycle_matroid());
        for (_, g) in cfg.g3.graph.vertex_identifications() {
            if g.cycle_matroid() != m2 {
                continue;
            }
            assert!(g.vertex_identifications().iter().all(|(_, h)| h.cycle_matroid() != m1));
        }
    }

    #[test]
    fn perturbed_fixture_is_rejected() {
        let mut cfg = reconstructed_config();
        let mut edges = cfg.g3.graph.edges().to_vec();
        edges.pop();
        cfg.g3.graph = MultiGraph::new(5, edges).unwrap();
        assert!(matches!(run(&cfg), Err(HarnessError::ConfigInconsistent { step: 'a', .. })));

        let mut cfg = reconstructed_config();
        let mut edges = cfg.h1.graph.edges().to_vec();
        edges[0] = (0, 2);
        cfg.h1.graph = MultiGraph::new(3, edges).unwrap();
        assert!(matches!(run(&cfg), Err(HarnessError::ConfigInconsistent { step: 'a', .. })));
    }

    #[test]
    fn config_json_roundtrip() {
        let cfg = reconstructed_config();
        let text = serde_json::to_string(&cfg).unwrap();
        assert_eq!(serde_json::from_str::<HarnessConfig>(&text).unwrap(), cfg);
    }
}
