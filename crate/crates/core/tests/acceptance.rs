//! Acceptance suite. Each criterion prints one PASS/FAIL line; the process
//! exits nonzero if any criterion fails.

use std::collections::HashSet;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use flagmat::bits;
use flagmat::flag::{check_flag_axioms, FlagMatroid};
use flagmat::gf::{FieldPrime, GfMatrix};
use flagmat::graphic::harness::{self, HarnessConfig};
use flagmat::graphic::MultiGraph;
use flagmat::lift::{self, LiftMethod};
use flagmat::matroid::{catalogue, Matroid};
use flagmat::repr::{self, FlagRepresentation};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Verdict = Result<String, String>;

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Option<Duration>,
    run: fn(&Catalogue) -> Verdict,
}

fn main() {
    let start = Instant::now();
    let cat = Catalogue::new();
    println!("catalogue of labeled matroids on n <= 6 built in {:.1}s", start.elapsed().as_secs_f64());
    let criteria = [
        Criterion { id: 1, name: "feasible-set axioms agree with the layered validator", limit: Some(secs(60)), run: axioms_vs_layers },
        Criterion { id: 2, name: "lift characterizations agree on all pairs over 5 elements", limit: None, run: lift_characterizations },
        Criterion { id: 3, name: "uniform flag representability", limit: Some(secs(300)), run: uniform_representability },
        Criterion { id: 4, name: "binary/ternary decision triangle", limit: Some(secs(900)), run: decision_triangle },
        Criterion { id: 5, name: "duality and commutation", limit: None, run: duality_and_commutation },
        Criterion { id: 6, name: "majors", limit: None, run: majors },
        Criterion { id: 7, name: "representability and graphicness of standard matroids", limit: None, run: standard_matroids },
        Criterion { id: 8, name: "graphic counterexample harness", limit: Some(secs(60)), run: counterexample },
        Criterion { id: 9, name: "lift witness uniqueness", limit: None, run: witness_uniqueness },
        Criterion { id: 10, name: "CLI determinism and certificate re-validation", limit: None, run: cli_corpus },
    ];
    let mut failed = 0;
    for c in &criteria {
        let t = Instant::now();
        let result = (c.run)(&cat);
        let elapsed = t.elapsed();
        let result = match (result, c.limit) {
            (Ok(_), Some(limit)) if elapsed > limit => {
                Err(format!("took {:.1}s, limit {}s", elapsed.as_secs_f64(), limit.as_secs()))
            }
            (r, _) => r,
        };
        let (tag, detail) = match &result {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {:>2} {tag}: {} ({detail}; {:.1}s)", c.id, c.name, elapsed.as_secs_f64());
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn gf(p: u32) -> FieldPrime {
    FieldPrime::new(p).expect("prime")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Every labeled matroid on up to six elements with rank tables.
struct Catalogue {
    by_n: Vec<Vec<Matroid>>,
    ranks: Vec<Vec<Vec<u8>>>,
}

impl Catalogue {
    fn new() -> Self {
        let by_n: Vec<Vec<Matroid>> = (0..=6).map(catalogue::all_matroids).collect();
        let ranks = by_n.iter().map(|ms| ms.iter().map(Matroid::rank_table).collect()).collect();
        Catalogue { by_n, ranks }
    }

    /// Indices of the matroids on `n` elements that are lifts of matroid `i`.
    fn lifts_of(&self, n: usize, i: usize, elementary: bool) -> Vec<usize> {
        let lower = &self.by_n[n][i];
        (0..self.by_n[n].len())
            .filter(|&j| {
                let r = self.by_n[n][j].rank();
                let ok_rank = if elementary { r == lower.rank() + 1 } else { r > lower.rank() };
                ok_rank && is_quotient(&self.ranks[n][j], &self.ranks[n][i], n)
            })
            .collect()
    }

    /// A random chain of lifts with up to `max_len` layers.
    fn random_flag(&self, rng: &mut ChaCha8Rng, n: usize, max_len: usize, elementary: bool) -> FlagMatroid {
        let mut i = rng.gen_range(0..self.by_n[n].len());
        let mut layers = vec![self.by_n[n][i].clone()];
        let len = rng.gen_range(1..=max_len);
        while layers.len() < len {
            let Some(&j) = self.lifts_of(n, i, elementary).choose(rng) else { break };
            layers.push(self.by_n[n][j].clone());
            i = j;
        }
        FlagMatroid::from_sequence(layers).expect("chain of lifts")
    }
}

/// `lower` is a quotient of `upper`: rank increments of `upper` dominate
/// those of `lower` everywhere.
fn is_quotient(upper: &[u8], lower: &[u8], n: usize) -> bool {
    (0..1u32 << n).all(|s| {
        (0..n).filter(|&e| s >> e & 1 == 0).all(|e| {
            let t = (s | 1 << e) as usize;
            upper[t] - upper[s as usize] >= lower[t] - lower[s as usize]
        })
    })
}

fn random_full_rank(rng: &mut ChaCha8Rng, p: u32, r: usize, n: usize) -> GfMatrix {
    loop {
        let rows: Vec<Vec<u32>> = (0..r).map(|_| (0..n).map(|_| rng.gen_range(0..p)).collect()).collect();
        let a = GfMatrix::from_rows_with_cols(gf(p), &rows, n).expect("entries in range");
        if a.rank() == r {
            return a;
        }
    }
}

/// A random representation with `n <= max_n` columns and random levels.
fn random_representation(rng: &mut ChaCha8Rng, max_n: usize) -> FlagRepresentation {
    let p = *[2, 3].choose(rng).expect("nonempty");
    let n = rng.gen_range(1..=max_n);
    let r = rng.gen_range(1..=n);
    let a = random_full_rank(rng, p, r, n);
    let mut levels: Vec<usize> = (1..r).filter(|_| rng.gen_bool(0.5)).collect();
    levels.push(r);
    FlagRepresentation::new(a, levels).expect("full row rank")
}

fn axioms_vs_layers(_: &Catalogue) -> Verdict {
    let n = 4;
    let subsets: Vec<u32> = (0..1u32 << n).collect();
    let mut valid = 0;
    for mask in 1u32..1 << subsets.len() {
        let family: Vec<u32> = subsets.iter().copied().filter(|&s| mask >> s & 1 == 1).collect();
        let axioms = check_flag_axioms(n, &family).passed();
        let layered = FlagMatroid::from_feasible_sets(n, &family).is_ok();
        ensure(axioms == layered, || format!("family {family:?}: axioms {axioms}, layered {layered}"))?;
        valid += usize::from(axioms);
    }
    Ok(format!("65535 families, {valid} flag matroids, 0 disagreements"))
}

fn lift_characterizations(cat: &Catalogue) -> Verdict {
    let n = 5;
    let ms = &cat.by_n[n];
    // Known number of labeled matroids on five elements.
    ensure(ms.len() == 406, || format!("enumerated {} matroids, expected 406", ms.len()))?;
    let methods = [LiftMethod::Flats, LiftMethod::Duals, LiftMethod::Closures, LiftMethod::Bases];
    let mut lifts = 0;
    for (i, lower) in ms.iter().enumerate() {
        for (j, upper) in ms.iter().enumerate() {
            let verdicts: Vec<bool> = methods
                .iter()
                .map(|&m| lift::is_lift(upper, lower, m).map(|f| f.is_none()))
                .collect::<Result<_, _>>()
                .map_err(|e| e.to_string())?;
            let oracle = is_quotient(&cat.ranks[n][j], &cat.ranks[n][i], n);
            ensure(verdicts.iter().all(|&v| v == oracle), || {
                format!("pair ({i}, {j}): methods {verdicts:?}, rank oracle {oracle}")
            })?;
            lifts += usize::from(oracle);
        }
    }
    Ok(format!("{} ordered pairs, {lifts} lifts, 0 disagreements", ms.len() * ms.len()))
}

fn uniform_representability(_: &Catalogue) -> Verdict {
    let r = 2;
    let mut cases = 0;
    for n in 3..=5 {
        let f = repr::uniform_flag(r, n).map_err(|e| e.to_string())?;
        for p in [2, 3, 5, 7] {
            let expect = p as usize >= n;
            let found = repr::search_representation(&f, gf(p)).map_err(|e| e.to_string())?;
            ensure(found.is_some() == expect, || format!("search over GF({p}) for n = {n}: {}", found.is_some()))?;
            if let Some(rep) = &found {
                ensure(rep.represents(&f), || format!("search output over GF({p}) for n = {n} is wrong"))?;
            }
            match repr::uniform_flag_representation(r, n, gf(p)) {
                Ok(rep) => ensure(expect && rep.represents(&f) && rep.flag() == f, || {
                    format!("construction over GF({p}) for n = {n} succeeded wrongly or does not validate")
                })?,
                Err(e) => ensure(!expect, || format!("construction over GF({p}) for n = {n} failed: {e}"))?,
            }
            cases += 1;
        }
    }
    Ok(format!("{cases} cases, representable exactly when p >= n"))
}

/// Excluded-minor, witness-route and search verdicts for `f` over GF(p).
fn three_verdicts(f: &FlagMatroid, p: u32) -> Result<[bool; 3], String> {
    let field = gf(p);
    let minors = repr::decide_full(f, field).map_err(|e| e.to_string())?;
    if let repr::FullDecision::Representable { representation } = &minors {
        if !representation.represents(f) {
            return Err(format!("decision certificate for {:?} is wrong", f.ranks()));
        }
    }
    let witness = repr::witness_route(f, field).map_err(|e| e.to_string())?.is_some();
    let search = repr::search_representation(f, field).map_err(|e| e.to_string())?.is_some();
    Ok([minors.is_representable(), witness, search])
}

fn decision_triangle(cat: &Catalogue) -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut positives = [0usize; 2];
    let mut random = 0;
    while random < 500 {
        let n = *[3, 4, 5, 5].choose(&mut rng).expect("nonempty");
        let f = cat.random_flag(&mut rng, n, 4, true);
        for (k, p) in [2, 3].into_iter().enumerate() {
            let v = three_verdicts(&f, p)?;
            ensure(v[0] == v[1] && v[1] == v[2], || format!("GF({p}) verdicts {v:?} on {:?}", f.feasible()))?;
            positives[k] += usize::from(v[0]);
        }
        random += 1;
    }
    let mut chains = 0;
    for p in [2, 3] {
        for _ in 0..100 {
            let n = rng.gen_range(2..=5);
            let r = rng.gen_range(1..=n);
            let a = random_full_rank(&mut rng, p, r, n);
            let levels: Vec<usize> = (1..=r).collect();
            let f = repr::flag_from_matrix(&a, &levels).map_err(|e| e.to_string())?;
            for q in [2, 3] {
                let v = three_verdicts(&f, q)?;
                ensure(v[0] == v[1] && v[1] == v[2], || format!("GF({q}) verdicts {v:?} on prefix chain {:?}", a.to_rows()))?;
                ensure(q != p || v[0], || format!("prefix chain of a GF({p}) matrix judged not representable"))?;
            }
            chains += 1;
        }
    }
    Ok(format!(
        "{random} random full flags ({} binary, {} ternary) and {chains} prefix chains, 0 disagreements",
        positives[0], positives[1]
    ))
}

/// Apply single-element deletions and contractions in order, with elements
/// named by their original labels. `None` when a step leaves nothing.
fn sequential(f: &FlagMatroid, ops: &[(bool, usize)]) -> Result<Option<FlagMatroid>, String> {
    let mut alive: Vec<usize> = (0..f.n()).collect();
    let mut cur = f.clone();
    for &(contract, e) in ops {
        let pos = alive.iter().position(|&x| x == e).expect("element alive");
        let next = if contract { cur.contract(pos) } else { cur.delete(pos) };
        match next {
            Ok(g) => cur = g,
            Err(e) if e.code() == "empty_result" => return Ok(None),
            Err(e) => return Err(e.to_string()),
        }
        alive.remove(pos);
    }
    Ok(Some(cur))
}

fn duality_and_commutation(cat: &Catalogue) -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut checked = [0usize; 3];
    for _ in 0..1000 {
        let n = rng.gen_range(1..=6);
        let f = cat.random_flag(&mut rng, n, 4, false);
        ensure(f.dual().dual() == f, || format!("dual is not an involution on {:?}", f.feasible()))?;
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        for e in 0..n {
            match rng.gen_range(0..4) {
                0 => xs.push(e),
                1 => ys.push(e),
                _ => {}
            }
        }
        let dels = |s: &[usize]| s.iter().map(|&e| (false, e)).collect::<Vec<_>>();
        let cons = |s: &[usize]| s.iter().map(|&e| (true, e)).collect::<Vec<_>>();
        let union: Vec<usize> = xs.iter().chain(&ys).copied().collect();
        let one_step = |c: &[usize], d: &[usize]| match f.minor(c, d, &[]) {
            Ok(g) => Ok(Some(g)),
            Err(e) if e.code() == "empty_result" => Ok(None),
            Err(e) => Err(e.to_string()),
        };
        let pairs = [
            (sequential(&f, &[dels(&xs), dels(&ys)].concat())?, one_step(&[], &union)?),
            (sequential(&f, &[cons(&xs), cons(&ys)].concat())?, one_step(&union, &[])?),
            (sequential(&f, &[dels(&xs), cons(&ys)].concat())?, sequential(&f, &[cons(&ys), dels(&xs)].concat())?),
        ];
        for (k, (a, b)) in pairs.into_iter().enumerate() {
            if let (Some(a), Some(b)) = (&a, &b) {
                ensure(a == b, || format!("claim {} fails on {:?} with X = {xs:?}, Y = {ys:?}", k + 1, f.feasible()))?;
                checked[k] += 1;
            }
        }
    }
    let mut reps = 0;
    while reps < 200 {
        let rep = random_representation(&mut rng, 6);
        let dual = repr::dual_representation(&rep).map_err(|e| e.to_string())?;
        ensure(dual.flag() == rep.flag().dual(), || format!("dual representation of {:?} is wrong", rep.matrix().to_rows()))?;
        reps += 1;
    }
    ensure(checked.iter().all(|&c| c > 0), || "some claim was never exercised".into())?;
    Ok(format!(
        "1000 flags; commutation claims checked {}/{}/{} times; {reps} dual representations",
        checked[0], checked[1], checked[2]
    ))
}

fn majors(_: &Catalogue) -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..200 {
        let rep = random_representation(&mut rng, 6);
        let (major, _) = repr::major_from_representation(&rep).map_err(|e| e.to_string())?;
        ensure(major.verify(&rep.flag()).map_err(|e| e.to_string())?, || {
            format!("major of {:?} with levels {:?} fails", rep.matrix().to_rows(), rep.levels())
        })?;
    }
    let all = |n: usize, sizes: &[usize]| -> FlagMatroid {
        let family: Vec<u32> = sizes.iter().flat_map(|&k| bits::k_subsets(n, k)).collect();
        FlagMatroid::from_feasible_sets(n, &family).expect("uniform flag")
    };
    let u35 = Matroid::uniform(3, 5).expect("uniform");
    let full3 = all(3, &[1, 2, 3]);
    ensure(lift::verify_major(&u35, &[vec![3], vec![4]], &full3).map_err(|e| e.to_string())?, || {
        "U(3,5) is not a major of the full chain on three elements".into()
    })?;
    let pair = all(3, &[1, 3]);
    let q2 = Matroid::linear(
        &GfMatrix::from_rows(gf(2), &[vec![1, 1, 1, 0, 0], vec![0, 1, 1, 1, 0], vec![0, 0, 1, 0, 1]]).expect("matrix"),
    )
    .map_err(|e| e.to_string())?;
    let q3 = Matroid::linear(
        &GfMatrix::from_rows(gf(3), &[vec![1, 1, 1, 0, 0], vec![0, 1, 2, 1, 0], vec![0, 1, 1, 0, 1]]).expect("matrix"),
    )
    .map_err(|e| e.to_string())?;
    for (name, q) in [("U(3,5)", &u35), ("binary matrix", &q2), ("ternary matrix", &q3)] {
        ensure(lift::verify_major(q, &[vec![3, 4]], &pair).map_err(|e| e.to_string())?, || {
            format!("{name} is not a major of (U(1,3), U(3,3))")
        })?;
    }
    let isos = [q2.is_isomorphic(&q3), q2.is_isomorphic(&u35), q3.is_isomorphic(&u35)];
    ensure(isos.iter().all(Option::is_none), || format!("unexpected isomorphism among the three majors: {isos:?}"))?;
    Ok("200 random majors verified; U(3,5) example verified; 3 isomorphism checks negative".into())
}

fn standard_matroids(_: &Catalogue) -> Verdict {
    let f7 = catalogue::fano();
    let u24 = Matroid::uniform(2, 4).expect("uniform");
    let k4 = MultiGraph::complete(4).cycle_matroid();
    let got = [f7.is_binary(), f7.is_ternary(), u24.is_binary(), f7.is_graphic(), k4.is_graphic()];
    let want = [true, false, false, false, true];
    ensure(got == want, || format!("got {got:?}, expected {want:?}"))?;
    Ok("binary(F7), not ternary(F7), not binary(U(2,4)), not graphic(F7), graphic(M(K4))".into())
}

fn fixture_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn counterexample(_: &Catalogue) -> Verdict {
    let text = std::fs::read_to_string(fixture_dir().join("counterexample.json")).map_err(|e| e.to_string())?;
    let cfg: HarnessConfig = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    ensure(cfg == harness::reconstructed_config(), || "fixture file differs from the built-in configuration".into())?;
    let report = harness::run(&cfg).map_err(|e| e.to_string())?;
    if let Some(c) = report.checks.iter().find(|c| !c.passed) {
        return Err(format!("step ({}) {} failed: {}", c.step, c.name, c.detail));
    }
    ensure(report.verdict == harness::VERDICT_PASS, || format!("verdict {}", report.verdict))?;
    let steps: HashSet<char> = report.checks.iter().map(|c| c.step).collect();
    ensure(steps.len() == 5, || format!("steps covered: {steps:?}"))?;
    Ok(format!("{} checks over steps (a)-(e) passed; verdict \"{}\"", report.checks.len(), report.verdict))
}

fn witness_uniqueness(cat: &Catalogue) -> Verdict {
    // Known number of labeled matroids on six elements.
    ensure(cat.by_n[6].len() == 3807, || format!("enumerated {} matroids on six elements", cat.by_n[6].len()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut flags = 0;
    let mut pairs = 0;
    while flags < 100 {
        let n = rng.gen_range(1..=5);
        let f = cat.random_flag(&mut rng, n, 4, true);
        if f.layers().len() < 2 {
            continue;
        }
        flags += 1;
        for w in f.layers().windows(2) {
            let x = 1u32 << n;
            let found: Vec<&Matroid> = cat.by_n[n + 1]
                .iter()
                .filter(|q| q.minor(x, 0).ok().as_ref() == Some(&w[0]) && q.minor(0, x).ok().as_ref() == Some(&w[1]))
                .collect();
            let witness = lift::elementary_witness(&w[0], &w[1]).map_err(|e| e.to_string())?;
            ensure(found.len() == 1 && *found[0] == witness, || {
                format!("pair of ranks {}/{} on {n} elements: {} coextensions found", w[0].rank(), w[1].rank(), found.len())
            })?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} elementary lift pairs from {flags} flags, each with exactly one coextension"))
}

fn cli_corpus(_: &Catalogue) -> Verdict {
    let dir = fixture_dir().join("cli");
    let list = std::fs::read_to_string(dir.join("invocations.txt")).map_err(|e| e.to_string())?;
    let scratch = std::env::temp_dir().join(format!("flagmat-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&scratch).map_err(|e| e.to_string())?;
    let exe = env!("CARGO_BIN_EXE_flagmat");
    let invoke = |args: &[&str]| -> Result<Output, String> {
        Command::new(exe).args(args).current_dir(&dir).output().map_err(|e| e.to_string())
    };
    let mut runs = 0;
    let mut certificates = 0;
    for line in list.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        let args: Vec<&str> = line.split_whitespace().collect();
        let first = invoke(&args)?;
        let second = invoke(&args)?;
        ensure(first.stdout == second.stdout && first.stderr == second.stderr && first.status == second.status, || {
            format!("`{line}` is not deterministic")
        })?;
        runs += 1;
        let doc: serde_json::Value = serde_json::from_slice(&first.stdout).map_err(|e| format!("`{line}`: {e}"))?;
        let reprinted = serde_json::to_string_pretty(&doc).map_err(|e| e.to_string())? + "\n";
        ensure(reprinted.as_bytes() == first.stdout, || format!("`{line}` output does not round-trip"))?;
        let Some(kind) = doc.get("kind").and_then(|k| k.as_str()) else { continue };
        if !flagmat::cli::CERTIFICATE_KINDS.contains(&kind) {
            continue;
        }
        let path = scratch.join(format!("cert-{runs}.json"));
        std::fs::write(&path, &first.stdout).map_err(|e| e.to_string())?;
        let check = invoke(&["validate", path.to_str().expect("utf-8 path")])?;
        ensure(check.status.code() == Some(0), || {
            format!("certificate from `{line}` does not re-validate: {}", String::from_utf8_lossy(&check.stdout))
        })?;
        certificates += 1;
    }
    let _ = std::fs::remove_dir_all(&scratch);
    Ok(format!("{runs} invocations byte-identical on repeat and round-tripping; {certificates} certificates re-validated"))
}
