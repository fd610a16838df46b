//! Command-line front end. Every verb reads JSON files and writes one JSON
//! document to standard output; a one-line summary goes to standard error.
//!
//! Exit codes: 0 yes or success, 1 negative verdict, 2 input error,
//! 3 budget exhausted or search too large.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::bits;
use crate::flag::{check_flag_axioms, FlagError, FlagMatroid, FlagMinorWitness};
use crate::gf::{FieldPrime, GfError, GfMatrix};
use crate::graphic::harness::{self, HarnessConfig, HarnessError, HarnessReport};
use crate::graphic::{self, GraphicError, MultiGraph, PartitionChain};
use crate::lift::{self, LiftError, LiftWitnessSequence, MajorStructure};
use crate::matroid::{catalogue, sets_from_indices, Matroid, MatroidError, MinorWitness};
use crate::repr::{self, FillingVerdict, FlagRepresentation, FullDecision, ReprError};

pub const SCHEMA: &str = "1";
pub const DEFAULT_BUDGET: u64 = 1 << 20;

/// Document kinds that `validate` re-checks from their own contents.
pub const CERTIFICATE_KINDS: &[&str] = &[
    "matroid",
    "flag",
    "axiom_verdict",
    "sequential_representation",
    "representation",
    "excluded_minor",
    "witness_obstruction",
    "major",
    "lift_witnesses",
    "fillings",
    "isomorphism",
    "graphic_flag",
    "graphic_major",
    "counterexample_report",
];

#[derive(Parser, Debug)]
#[command(name = "flagmat", version, about = "Matroids and flag matroids on small ground sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a matroid, flag matroid, representation or emitted certificate.
    Validate { file: PathBuf },
    /// Test the two feasible-set axioms on a family, reporting a witness on failure.
    Axioms { file: PathBuf },
    /// Sequential representation (the layer matroids) of a flag matroid.
    Seqrep { file: PathBuf },
    /// Contract, delete and chop.
    Minor {
        file: PathBuf,
        #[arg(long, value_delimiter = ',')]
        contract: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        delete: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        chop: Vec<usize>,
    },
    /// Dual of a matroid or flag matroid.
    Dual { file: PathBuf },
    /// Flag matroid of the row prefixes of a matrix.
    FromMatrix {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        levels: Vec<usize>,
    },
    /// Representation of the uniform flag matroid with sizes 1..=r.
    UniformRep {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u32,
    },
    /// Decide GF(2) or GF(3) representability of a flag matroid.
    IsRepresentable {
        file: PathBuf,
        #[arg(long)]
        p: u32,
        #[arg(long, value_enum)]
        method: Option<Method>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Search for a representation over any prime field.
    Represent {
        file: PathBuf,
        #[arg(long)]
        p: u32,
    },
    /// Graphic flag matroid of a graph and a partition chain.
    GraphicFlag { graph: PathBuf, chain: PathBuf },
    /// Graphic major of a graph and a partition chain.
    GraphicMajor { graph: PathBuf, chain: PathBuf },
    /// Majors: verify, build from a representation, or search.
    Major {
        #[command(subcommand)]
        action: MajorAction,
    },
    /// Lift witness sequence of a full flag matroid.
    Witness { file: PathBuf },
    /// All fillings of a flag matroid.
    Fillings {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Isomorphism of two matroids or two flag matroids.
    Isomorphic { left: PathBuf, right: PathBuf },
    /// Run the four-graph counterexample pipeline.
    Counterexample { config: PathBuf },
}

#[derive(Subcommand, Debug)]
enum MajorAction {
    Verify { flag: PathBuf, major: PathBuf },
    FromRep { file: PathBuf },
    Search {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Minors,
    Witness,
    Search,
    Fillings,
    All,
}

/// What a run produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// A failed run: exit code, machine-readable code and detail.
#[derive(Debug)]
struct Failure {
    exit: i32,
    code: String,
    detail: Value,
}

impl Failure {
    fn input(code: &str, detail: impl Into<String>) -> Self {
        Failure { exit: 2, code: code.into(), detail: Value::String(detail.into()) }
    }
}

macro_rules! failure_from {
    ($($t:ty),*) => {$(
        impl From<$t> for Failure {
            fn from(e: $t) -> Self {
                Failure::input(e.code(), e.to_string())
            }
        }
    )*};
}

failure_from!(GfError, MatroidError, FlagError, GraphicError, HarnessError);

impl From<LiftError> for Failure {
    fn from(e: LiftError) -> Self {
        let exit = if matches!(e, LiftError::BudgetExhausted(_)) { 3 } else { 2 };
        Failure { exit, code: e.code().into(), detail: Value::String(e.to_string()) }
    }
}

impl From<ReprError> for Failure {
    fn from(e: ReprError) -> Self {
        let exit = match e {
            ReprError::SearchSpaceTooLarge(_) | ReprError::Lift(LiftError::BudgetExhausted(_)) => 3,
            _ => 2,
        };
        Failure { exit, code: e.code().into(), detail: Value::String(e.to_string()) }
    }
}

/// A successful document with its exit code and summary line.
struct Report {
    exit: i32,
    doc: Value,
    summary: String,
}

impl Report {
    fn new(exit: i32, kind: &str, body: Value, summary: impl Into<String>) -> Self {
        let mut doc = Map::new();
        doc.insert("schema".into(), json!(SCHEMA));
        doc.insert("kind".into(), json!(kind));
        if let Value::Object(fields) = body {
            doc.extend(fields);
        }
        Report { exit, doc: Value::Object(doc), summary: summary.into() }
    }
}

type Run = Result<Report, Failure>;

/// Parse `args` (program name first) and execute.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Outcome { code: 0, stdout: e.to_string(), stderr: String::new() };
            }
            let doc = json!({"schema": SCHEMA, "error": "usage", "detail": e.to_string()});
            return Outcome { code: 2, stdout: render(&doc), stderr: e.to_string() };
        }
    };
    match dispatch(cli.command) {
        Ok(report) => Outcome { code: report.exit, stdout: render(&report.doc), stderr: report.summary + "\n" },
        Err(f) => {
            let doc = json!({"schema": SCHEMA, "error": f.code, "detail": f.detail});
            let stderr = format!("error: {}: {}\n", f.code, f.detail);
            Outcome { code: f.exit, stdout: render(&doc), stderr }
        }
    }
}

fn render(doc: &Value) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("values always serialize");
    s.push('\n');
    s
}

fn dispatch(command: Command) -> Run {
    match command {
        Command::Validate { file } => validate(&read_json(&file)?),
        Command::Axioms { file } => axioms(&read_json(&file)?),
        Command::Seqrep { file } => {
            let f = parse_flag(&read_json(&file)?)?;
            Ok(seqrep_report(&f))
        }
        Command::Minor { file, contract, delete, chop } => minor(&read_json(&file)?, &contract, &delete, &chop),
        Command::Dual { file } => match parse_object(&read_json(&file)?)? {
            Object::Matroid(m) => Ok(Report::new(0, "matroid", to_value(&m.dual()), "dual matroid")),
            Object::Flag(f) => Ok(Report::new(0, "flag", to_value(&f.dual()), "dual flag matroid")),
        },
        Command::FromMatrix { file, levels } => {
            let a: GfMatrix = parse_as(&read_json(&file)?, &["p", "rows", "cols", "entries"])?;
            let f = repr::flag_from_matrix(&a, &levels)?;
            let rep = FlagRepresentation::new(a, levels)?;
            Ok(representation_report(&f, &rep, json!({})))
        }
        Command::UniformRep { r, n, p } => uniform_rep(r, n, p),
        Command::IsRepresentable { file, p, method, budget } => {
            is_representable(&parse_flag(&read_json(&file)?)?, p, method, budget)
        }
        Command::Represent { file, p } => {
            let f = parse_object(&read_json(&file)?)?.into_flag();
            represent(&f, p)
        }
        Command::GraphicFlag { graph, chain } => {
            let (g, c) = (parse_graph(&read_json(&graph)?)?, parse_chain(&read_json(&chain)?)?);
            let f = graphic::graphic_flag(&g, &c)?;
            Ok(Report::new(
                0,
                "graphic_flag",
                json!({"graph": g, "chain": c, "flag": f}),
                format!("graphic flag matroid with ranks {:?}", f.ranks()),
            ))
        }
        Command::GraphicMajor { graph, chain } => {
            let (g, c) = (parse_graph(&read_json(&graph)?)?, parse_chain(&read_json(&chain)?)?);
            let f = graphic::graphic_flag(&g, &c)?;
            let (h, major) = graphic::graphic_major(&g, &c)?;
            Ok(Report::new(
                0,
                "graphic_major",
                json!({"graph": g, "chain": c, "flag": f, "major_graph": h, "matroid": major.matroid, "blocks": major.blocks}),
                format!("graphic major with {} added edges", h.edges().len() - g.edges().len()),
            ))
        }
        Command::Major { action } => major(action),
        Command::Witness { file } => {
            let f = parse_flag(&read_json(&file)?)?;
            let seq = lift::lift_witness_sequence(&f)?;
            Ok(Report::new(
                0,
                "lift_witnesses",
                json!({"flag": f, "witnesses": seq}),
                format!("{} lift witnesses", seq.witnesses.len()),
            ))
        }
        Command::Fillings { file, budget } => {
            let f = parse_flag(&read_json(&file)?)?;
            let all = lift::enumerate_fillings(&f, budget)?;
            Ok(Report::new(
                0,
                "fillings",
                json!({"flag": f, "count": all.len(), "fillings": all}),
                format!("{} fillings", all.len()),
            ))
        }
        Command::Isomorphic { left, right } => {
            let (a, b) = (parse_object(&read_json(&left)?)?, parse_object(&read_json(&right)?)?);
            isomorphic(a, b)
        }
        Command::Counterexample { config } => {
            let cfg: HarnessConfig = parse_as(&read_json(&config)?, &["h1", "h2", "g2", "g3", "bb_pair", "rb_pair"])?;
            let report = harness::run(&cfg)?;
            Ok(counterexample_report(&cfg, &report))
        }
    }
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::input("io", format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::input("parse", format!("{}: {e}", path.display())))
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("library types always serialize")
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value, Failure> {
    v.get(key).ok_or_else(|| Failure::input("missing_field", format!("missing field \"{key}\"")))
}

/// Deserialize from only the listed keys, ignoring envelope fields.
fn parse_as<T: DeserializeOwned>(v: &Value, keys: &[&str]) -> Result<T, Failure> {
    let obj = v.as_object().ok_or_else(|| Failure::input("parse", "expected a JSON object"))?;
    let picked: Map<String, Value> =
        keys.iter().filter_map(|&k| obj.get(k).map(|x| (k.to_string(), x.clone()))).collect();
    serde_json::from_value(Value::Object(picked)).map_err(|e| Failure::input("parse", e.to_string()))
}

fn parse_sets(v: &Value, key: &str) -> Result<(usize, Vec<Vec<usize>>), Failure> {
    let n: usize = serde_json::from_value(field(v, "n")?.clone()).map_err(|e| Failure::input("parse", e.to_string()))?;
    let sets: Vec<Vec<usize>> =
        serde_json::from_value(field(v, key)?.clone()).map_err(|e| Failure::input("parse", e.to_string()))?;
    Ok((n, sets))
}

fn parse_matroid(v: &Value) -> Result<Matroid, Failure> {
    let (n, sets) = parse_sets(v, "bases")?;
    Ok(Matroid::from_bases(n, sets_from_indices(n, &sets)?)?)
}

fn parse_flag(v: &Value) -> Result<FlagMatroid, Failure> {
    let (n, sets) = parse_sets(v, "feasible")?;
    if n > bits::MAX_GROUND {
        return Err(FlagError::GroundTooLarge(n).into());
    }
    let family = sets_from_indices(n, &sets)?;
    Ok(FlagMatroid::from_feasible_sets(n, &family)?)
}

fn parse_graph(v: &Value) -> Result<MultiGraph, Failure> {
    parse_as(v, &["vertices", "edges"])
}

fn parse_chain(v: &Value) -> Result<PartitionChain, Failure> {
    parse_as(v, &["partitions"])
}

enum Object {
    Matroid(Matroid),
    Flag(FlagMatroid),
}

impl Object {
    fn into_flag(self) -> FlagMatroid {
        match self {
            Object::Matroid(m) => FlagMatroid::basis(&m),
            Object::Flag(f) => f,
        }
    }
}

fn parse_object(v: &Value) -> Result<Object, Failure> {
    if v.get("bases").is_some() {
        Ok(Object::Matroid(parse_matroid(v)?))
    } else if v.get("feasible").is_some() {
        Ok(Object::Flag(parse_flag(v)?))
    } else {
        Err(Failure::input("parse", "expected a matroid (\"bases\") or flag matroid (\"feasible\")"))
    }
}

fn field_prime(p: u32) -> Result<FieldPrime, Failure> {
    Ok(FieldPrime::new(p)?)
}

fn axioms(v: &Value) -> Run {
    let (n, sets) = parse_sets(v, "feasible")?;
    if n > bits::MAX_GROUND {
        return Err(FlagError::GroundTooLarge(n).into());
    }
    let family = sets_from_indices(n, &sets)?;
    let verdict = check_flag_axioms(n, &family);
    let exit = if verdict.passed() { 0 } else { 1 };
    let summary = if verdict.passed() { "both axioms hold".to_string() } else { format!("axioms fail: {verdict:?}") };
    Ok(Report::new(exit, "axiom_verdict", json!({"n": n, "feasible": sets, "result": verdict}), summary))
}

fn seqrep_report(f: &FlagMatroid) -> Report {
    Report::new(
        0,
        "sequential_representation",
        json!({"flag": f, "layers": f.layers()}),
        format!("{} layers with ranks {:?}", f.layers().len(), f.ranks()),
    )
}

fn minor(v: &Value, contract: &[usize], delete: &[usize], chop: &[usize]) -> Run {
    match parse_object(v)? {
        Object::Matroid(m) => {
            if !chop.is_empty() {
                return Err(Failure::input("bad_arguments", "--chop applies to flag matroids only"));
            }
            let mask = |xs: &[usize]| sets_from_indices(m.n(), &[xs.to_vec()]).map(|s| s[0]);
            let out = m.minor(mask(contract)?, mask(delete)?)?;
            Ok(Report::new(0, "matroid", to_value(&out), format!("minor on {} elements", out.n())))
        }
        Object::Flag(f) => {
            let out = f.minor(contract, delete, chop)?;
            Ok(Report::new(0, "flag", to_value(&out), format!("flag minor with ranks {:?}", out.ranks())))
        }
    }
}

fn representation_report(f: &FlagMatroid, rep: &FlagRepresentation, extra: Value) -> Report {
    let mut body = json!({"flag": f, "matrix": rep.matrix(), "levels": rep.levels()});
    if let (Value::Object(b), Value::Object(e)) = (&mut body, extra) {
        b.extend(e);
    }
    Report::new(0, "representation", body, format!("representable over GF({})", rep.field().p()))
}

fn uniform_rep(r: usize, n: usize, p: u32) -> Run {
    let field = field_prime(p)?;
    let f = repr::uniform_flag(r, n)?;
    match repr::uniform_flag_representation(r, n, field) {
        Ok(rep) => Ok(representation_report(&f, &rep, json!({}))),
        Err(ReprError::FieldTooSmall { p, n }) => Ok(Report::new(
            1,
            "uniform_representation",
            json!({"flag": f, "p": p, "representable": false, "reason": format!("GF({p}) has fewer than {n} elements")}),
            "not representable: field too small",
        )),
        Err(e) => Err(e.into()),
    }
}

fn excluded_report(f: &FlagMatroid, p: u32, target: &FlagMatroid, witness: &FlagMinorWitness) -> Report {
    Report::new(
        1,
        "excluded_minor",
        json!({"flag": f, "p": p, "target": target, "witness": witness}),
        format!("not representable over GF({p}): excluded minor with ranks {:?}", target.ranks()),
    )
}

/// The first lift witness that is not representable, with a minor of it
/// isomorphic to an excluded matroid.
fn witness_obstruction(f: &FlagMatroid, p: u32) -> Result<Option<Report>, Failure> {
    let list = if p == 2 { catalogue::binary_excluded() } else { catalogue::ternary_excluded() };
    let seq = if f.layers().len() == 1 { None } else { Some(lift::lift_witness_sequence(f)?) };
    let matroids: Vec<(Option<usize>, Matroid)> = match &seq {
        None => vec![(None, f.layers()[0].clone())],
        Some(s) => s.witnesses.iter().cloned().enumerate().map(|(i, q)| (Some(i), q)).collect(),
    };
    for (index, q) in matroids {
        for x in list {
            if let Some(w) = q.has_minor_isomorphic_to(x) {
                return Ok(Some(Report::new(
                    1,
                    "witness_obstruction",
                    json!({"flag": f, "p": p, "witness_index": index, "matroid": q, "excluded": x, "minor": w}),
                    format!("not representable over GF({p}): a lift witness has an excluded minor"),
                )));
            }
        }
    }
    Ok(None)
}

fn is_representable(f: &FlagMatroid, p: u32, method: Option<Method>, budget: u64) -> Run {
    let field = field_prime(p)?;
    if p != 2 && p != 3 {
        return Err(ReprError::UnsupportedField(p).into());
    }
    let method = method.unwrap_or(if f.is_full() { Method::Minors } else { Method::Fillings });
    match method {
        Method::Minors => match repr::decide_full(f, field)? {
            FullDecision::Representable { representation } => {
                Ok(representation_report(f, &representation, json!({"method": "minors"})))
            }
            FullDecision::Excluded(found) => Ok(excluded_report(f, p, &found.target, &found.witness)),
        },
        Method::Witness => match repr::witness_route(f, field)? {
            Some(rep) => Ok(representation_report(f, &rep, json!({"method": "witness"}))),
            None => witness_obstruction(f, p)?
                .ok_or_else(|| Failure::input("mismatch", "witness route negative without an excluded minor")),
        },
        Method::Search => represent(f, p),
        Method::Fillings => match repr::is_representable_via_fillings(f, field, budget)? {
            FillingVerdict::Yes { filling, representation } => {
                Ok(representation_report(f, &representation, json!({"method": "fillings", "filling": filling})))
            }
            FillingVerdict::No => Ok(Report::new(
                1,
                "representability",
                json!({"flag": f, "p": p, "method": "fillings", "representable": false}),
                format!("no filling is representable over GF({p})"),
            )),
            FillingVerdict::Unknown { budget } => Ok(Report::new(
                3,
                "representability",
                json!({"flag": f, "p": p, "method": "fillings", "representable": null, "budget": budget}),
                "filling budget exhausted",
            )),
        },
        Method::All => {
            if !f.is_full() {
                return Err(ReprError::NotFull(f.ranks()).into());
            }
            let minors = repr::decide_full(f, field)?;
            let witness = repr::witness_route(f, field)?.is_some();
            let search = repr::search_representation(f, field)?.is_some();
            let verdicts = json!({"minors": minors.is_representable(), "witness": witness, "search": search});
            if minors.is_representable() != witness || witness != search {
                return Err(Failure { exit: 2, code: "methods_disagree".into(), detail: verdicts });
            }
            let extra = json!({"method": "all", "verdicts": verdicts});
            match minors {
                FullDecision::Representable { representation } => Ok(representation_report(f, &representation, extra)),
                FullDecision::Excluded(found) => {
                    let mut report = excluded_report(f, p, &found.target, &found.witness);
                    if let (Value::Object(doc), Value::Object(e)) = (&mut report.doc, extra) {
                        doc.extend(e);
                    }
                    Ok(report)
                }
            }
        }
    }
}

fn represent(f: &FlagMatroid, p: u32) -> Run {
    let field = field_prime(p)?;
    match repr::search_representation(f, field)? {
        Some(rep) => Ok(representation_report(f, &rep, json!({"method": "search"}))),
        None => Ok(Report::new(
            1,
            "representability",
            json!({"flag": f, "p": p, "method": "search", "representable": false}),
            format!("exhaustive search: not representable over GF({p})"),
        )),
    }
}

fn major_report(f: &FlagMatroid, major: &MajorStructure, extra: Value) -> Report {
    let mut body = json!({"flag": f, "matroid": major.matroid, "blocks": major.blocks});
    if let (Value::Object(b), Value::Object(e)) = (&mut body, extra) {
        b.extend(e);
    }
    Report::new(0, "major", body, format!("major on {} elements", major.matroid.n()))
}

fn major(action: MajorAction) -> Run {
    match action {
        MajorAction::Verify { flag, major } => {
            let f = parse_flag(&read_json(&flag)?)?;
            let v = read_json(&major)?;
            let m: MajorStructure = MajorStructure { matroid: parse_matroid(field(&v, "matroid")?)?, blocks: parse_as_field(&v, "blocks")? };
            if m.verify(&f)? {
                Ok(major_report(&f, &m, json!({})))
            } else {
                Ok(Report::new(
                    1,
                    "major_rejection",
                    json!({"flag": f, "matroid": m.matroid, "blocks": m.blocks}),
                    "not a major of the flag matroid",
                ))
            }
        }
        MajorAction::FromRep { file } => {
            let rep: FlagRepresentation = parse_as(&read_json(&file)?, &["matrix", "levels"])?;
            let (m, a) = repr::major_from_representation(&rep)?;
            Ok(major_report(&rep.flag(), &m, json!({"matrix": a})))
        }
        MajorAction::Search { file, budget } => {
            let f = parse_flag(&read_json(&file)?)?;
            match lift::search_major(&f, budget)? {
                Some(m) => Ok(major_report(&f, &m, json!({}))),
                None => Ok(Report::new(1, "major_search", json!({"flag": f, "found": false}), "no major found")),
            }
        }
    }
}

fn parse_as_field<T: DeserializeOwned>(v: &Value, key: &str) -> Result<T, Failure> {
    serde_json::from_value(field(v, key)?.clone()).map_err(|e| Failure::input("parse", e.to_string()))
}

fn isomorphic(a: Object, b: Object) -> Run {
    let (left, right, map) = match (&a, &b) {
        (Object::Matroid(x), Object::Matroid(y)) => (to_value(x), to_value(y), x.is_isomorphic(y)),
        (Object::Flag(x), Object::Flag(y)) => (to_value(x), to_value(y), x.is_isomorphic(y)),
        _ => return Err(Failure::input("bad_arguments", "cannot compare a matroid with a flag matroid")),
    };
    let exit = if map.is_some() { 0 } else { 1 };
    let summary = if map.is_some() { "isomorphic" } else { "not isomorphic" };
    Ok(Report::new(exit, "isomorphism", json!({"left": left, "right": right, "map": map}), summary))
}

fn counterexample_report(cfg: &HarnessConfig, report: &HarnessReport) -> Report {
    Report::new(
        if report.passed() { 0 } else { 1 },
        "counterexample_report",
        json!({"config": cfg, "report": report}),
        format!("verdict: {}", report.verdict),
    )
}

/// Re-check a document. Certificates are verified from their own fields.
fn validate(v: &Value) -> Run {
    let kind = match v.get("kind").and_then(Value::as_str) {
        Some(k) => k.to_string(),
        None => detect_kind(v)?.to_string(),
    };
    let ok = |what: &str| Ok(Report::new(0, "validation", json!({"valid": true, "object": what}), format!("valid {what}")));
    let bad = |what: &str, reason: String| {
        Ok(Report::new(
            1,
            "validation",
            json!({"valid": false, "object": what, "reason": reason}),
            format!("invalid {what}: {reason}"),
        ))
    };
    match kind.as_str() {
        "matroid" => {
            parse_matroid(v)?;
            ok("matroid")
        }
        "flag" => {
            let (n, sets) = parse_sets(v, "feasible")?;
            if n > bits::MAX_GROUND {
                return Err(FlagError::GroundTooLarge(n).into());
            }
            let family = sets_from_indices(n, &sets)?;
            let verdict = check_flag_axioms(n, &family);
            if !verdict.passed() {
                return Err(Failure { exit: 2, code: "axiom_violation".into(), detail: to_value(&verdict) });
            }
            FlagMatroid::from_feasible_sets(n, &family)?;
            ok("flag")
        }
        "axiom_verdict" => {
            let (n, sets) = parse_sets(v, "feasible")?;
            let family = sets_from_indices(n, &sets)?;
            if to_value(&check_flag_axioms(n, &family)) == *field(v, "result")? {
                ok("axiom_verdict")
            } else {
                bad("axiom_verdict", "recorded verdict differs".into())
            }
        }
        "sequential_representation" => {
            let f = parse_flag(field(v, "flag")?)?;
            let layers = field(v, "layers")?.as_array().ok_or_else(|| Failure::input("parse", "layers"))?;
            let parsed = layers.iter().map(parse_matroid).collect::<Result<Vec<_>, _>>()?;
            if parsed == f.layers() {
                ok("sequential_representation")
            } else {
                bad("sequential_representation", "layers differ".into())
            }
        }
        "representation" => {
            let rep: FlagRepresentation = parse_as(v, &["matrix", "levels"])?;
            match v.get("flag") {
                Some(fv) if !rep.represents(&parse_flag(fv)?) => {
                    bad("representation", "matrix does not represent the flag matroid".into())
                }
                _ => ok("representation"),
            }
        }
        "excluded_minor" => {
            let f = parse_flag(field(v, "flag")?)?;
            let target = parse_flag(field(v, "target")?)?;
            let w: FlagMinorWitness = parse_as_field(v, "witness")?;
            let p: u32 = parse_as_field(v, "p")?;
            let listed = match p {
                2 => repr::binary_excluded_flags(),
                3 => repr::ternary_excluded_flags(),
                _ => return Err(ReprError::UnsupportedField(p).into()),
            };
            if !listed.contains(&target) {
                return bad("excluded_minor", "target is not on the excluded list".into());
            }
            let minor = f.minor(&w.contract, &w.delete, &w.chop)?;
            if w.map.len() != minor.n() || minor.relabel(&w.map) != target {
                return bad("excluded_minor", "minor script does not reach the target".into());
            }
            ok("excluded_minor")
        }
        "witness_obstruction" => {
            let f = parse_flag(field(v, "flag")?)?;
            let q = parse_matroid(field(v, "matroid")?)?;
            let x = parse_matroid(field(v, "excluded")?)?;
            let w: MinorWitness = parse_as_field(v, "minor")?;
            let index: Option<usize> = parse_as_field(v, "witness_index")?;
            let expected = match index {
                None => f.layers()[0].clone(),
                Some(i) => lift::lift_witness_sequence(&f)?
                    .witnesses
                    .get(i)
                    .cloned()
                    .ok_or_else(|| Failure::input("parse", "witness_index out of range"))?,
            };
            let p: u32 = parse_as_field(v, "p")?;
            let list = if p == 2 { catalogue::binary_excluded() } else { catalogue::ternary_excluded() };
            let mask = |xs: &[usize]| sets_from_indices(q.n(), &[xs.to_vec()]).map(|s| s[0]);
            let minor = q.minor(mask(&w.contract)?, mask(&w.delete)?)?;
            if q != expected || !list.contains(&x) || w.map.len() != minor.n() || minor.relabel(&w.map) != x {
                return bad("witness_obstruction", "obstruction does not check out".into());
            }
            ok("witness_obstruction")
        }
        "major" => {
            let f = parse_flag(field(v, "flag")?)?;
            let m = MajorStructure { matroid: parse_matroid(field(v, "matroid")?)?, blocks: parse_as_field(v, "blocks")? };
            if m.verify(&f)? {
                ok("major")
            } else {
                bad("major", "not a major".into())
            }
        }
        "lift_witnesses" => {
            let f = parse_flag(field(v, "flag")?)?;
            let seq: LiftWitnessSequence = parse_as_field(v, "witnesses")?;
            let layers = f.layers();
            if seq.witnesses.len() + 1 != layers.len() {
                return bad("lift_witnesses", "wrong number of witnesses".into());
            }
            for (i, q) in seq.witnesses.iter().enumerate() {
                let extra = 1u32 << (q.n() - 1);
                if !lift::verify_quotient_pair(q, extra, &layers[i], &layers[i + 1])? {
                    return bad("lift_witnesses", format!("witness {i} does not reproduce its pair"));
                }
            }
            ok("lift_witnesses")
        }
        "fillings" => {
            let f = parse_flag(field(v, "flag")?)?;
            let all = field(v, "fillings")?.as_array().ok_or_else(|| Failure::input("parse", "fillings"))?;
            for g in all {
                let g = parse_flag(g)?;
                let mut chopped = g.clone();
                for d in g.ranks().into_iter().filter(|d| !f.ranks().contains(d)) {
                    chopped = chopped.chop(d)?;
                }
                if !g.is_full() || chopped != f {
                    return bad("fillings", "an entry is not a filling".into());
                }
            }
            ok("fillings")
        }
        "isomorphism" => {
            let (a, b) = (parse_object(field(v, "left")?)?, parse_object(field(v, "right")?)?);
            let map: Option<Vec<usize>> = parse_as_field(v, "map")?;
            let holds = match (&a, &b, &map) {
                (Object::Matroid(x), Object::Matroid(y), Some(m)) => m.len() == x.n() && is_perm(m) && x.relabel(m) == *y,
                (Object::Flag(x), Object::Flag(y), Some(m)) => m.len() == x.n() && is_perm(m) && x.relabel(m) == *y,
                (Object::Matroid(x), Object::Matroid(y), None) => x.is_isomorphic(y).is_none(),
                (Object::Flag(x), Object::Flag(y), None) => x.is_isomorphic(y).is_none(),
                _ => false,
            };
            if holds {
                ok("isomorphism")
            } else {
                bad("isomorphism", "map is not an isomorphism".into())
            }
        }
        "graphic_flag" => {
            let (g, c) = (parse_graph(field(v, "graph")?)?, parse_chain(field(v, "chain")?)?);
            if graphic::graphic_flag(&g, &c)? == parse_flag(field(v, "flag")?)? {
                ok("graphic_flag")
            } else {
                bad("graphic_flag", "flag matroid differs".into())
            }
        }
        "graphic_major" => {
            let (g, c) = (parse_graph(field(v, "graph")?)?, parse_chain(field(v, "chain")?)?);
            let f = parse_flag(field(v, "flag")?)?;
            let h = parse_graph(field(v, "major_graph")?)?;
            let m = MajorStructure { matroid: parse_matroid(field(v, "matroid")?)?, blocks: parse_as_field(v, "blocks")? };
            if graphic::graphic_flag(&g, &c)? == f && h.cycle_matroid() == m.matroid && m.verify(&f)? {
                ok("graphic_major")
            } else {
                bad("graphic_major", "major does not check out".into())
            }
        }
        "counterexample_report" => {
            let cfg: HarnessConfig = parse_as_field(v, "config")?;
            let report: HarnessReport = parse_as_field(v, "report")?;
            if harness::run(&cfg)? == report {
                ok("counterexample_report")
            } else {
                bad("counterexample_report", "rerun differs".into())
            }
        }
        other => Err(Failure::input("not_a_certificate", format!("documents of kind \"{other}\" cannot be validated"))),
    }
}

fn is_perm(map: &[usize]) -> bool {
    let mut seen = vec![false; map.len()];
    map.iter().all(|&x| x < map.len() && !std::mem::replace(&mut seen[x], true))
}

fn detect_kind(v: &Value) -> Result<&'static str, Failure> {
    let has = |k: &str| v.get(k).is_some();
    if has("bases") {
        Ok("matroid")
    } else if has("feasible") {
        Ok("flag")
    } else if has("matrix") && has("levels") {
        Ok("representation")
    } else {
        Err(Failure::input("parse", "unrecognized document"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write(dir: &Path, name: &str, v: &Value) -> String {
        let path = dir.join(name);
        fs::write(&path, serde_json::to_string(v).unwrap()).unwrap();
        path.to_string_lossy().into_owned()
    }

    fn scratch(tag: &str) -> PathBuf {
        let dir = std::env::temp_dir().join(format!("flagmat-cli-{tag}-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        dir
    }

    fn call(args: &[&str]) -> (i32, Value) {
        let mut argv = vec!["flagmat"];
        argv.extend_from_slice(args);
        let out = run(argv);
        (out.code, serde_json::from_str(&out.stdout).unwrap_or(Value::Null))
    }

    fn revalidate(dir: &Path, doc: &Value) -> i32 {
        let path = write(dir, "cert.json", doc);
        call(&["validate", &path]).0
    }

    #[test]
    fn representability_examples() {
        let dir = scratch("repr");
        let i23 = write(&dir, "i23.json", &json!({"n": 3, "feasible": [[0], [1], [2], [0, 1], [0, 2], [1, 2]]}));
        let (code, doc) = call(&["is-representable", &i23, "--p", "2"]);
        assert_eq!(code, 1);
        assert_eq!(doc["kind"], "excluded_minor");
        assert_eq!(doc["target"]["feasible"], json!([[0], [1], [2], [0, 1], [0, 2], [1, 2]]));
        assert_eq!(revalidate(&dir, &doc), 0);

        let (code, doc) = call(&["uniform-rep", "--r", "2", "--n", "4", "--p", "5"]);
        assert_eq!(code, 0);
        assert_eq!(doc["matrix"]["entries"], json!([[1, 1, 1, 1], [0, 1, 2, 3]]));
        assert_eq!(revalidate(&dir, &doc), 0);
        assert_eq!(call(&["uniform-rep", "--r", "2", "--n", "4", "--p", "3"]).0, 1);

        for method in ["minors", "witness", "search", "all"] {
            let (code, doc) = call(&["is-representable", &i23, "--p", "3", "--method", method]);
            assert_eq!(code, 0, "{method}");
            assert_eq!(revalidate(&dir, &doc), 0, "{method}");
        }
        let i24 = write(&dir, "i24.json", &json!({"n": 4, "feasible": bits_json(&[1, 2], 4)}));
        let (code, doc) = call(&["is-representable", &i24, "--p", "2"]);
        assert_eq!((code, doc["kind"].as_str()), (1, Some("excluded_minor")));
        let reached = [json!([[0], [1], [2], [0, 1], [0, 2], [1, 2]]), json!(bits_json(&[2], 4))];
        assert!(reached.contains(&doc["target"]["feasible"]));
        assert_eq!(revalidate(&dir, &doc), 0);

        let (code, doc) = call(&["is-representable", &i23, "--p", "2", "--method", "witness"]);
        assert_eq!((code, doc["kind"].as_str()), (1, Some("witness_obstruction")));
        assert_eq!(revalidate(&dir, &doc), 0);
    }

    #[test]
    fn fano_certificates() {
        let dir = scratch("fano");
        let fano = write(&dir, "fano.json", &to_value(&FlagMatroid::basis(&catalogue::fano())));
        let (code, doc) = call(&["is-representable", &fano, "--p", "2"]);
        assert_eq!(code, 0);
        assert_eq!(revalidate(&dir, &doc), 0);
        let a: GfMatrix = serde_json::from_value(doc["matrix"].clone()).unwrap();
        assert!(a.same_row_space(&crate::gf::fano_matrix()).unwrap());
        // Any single changed entry of a GF(2) Fano representation breaks it.
        for i in 0..3 {
            for j in 0..7 {
                let mut bad = doc.clone();
                let entry = &mut bad["matrix"]["entries"][i][j];
                *entry = json!(1 - entry.as_u64().unwrap());
                assert!(matches!(revalidate(&dir, &bad), 1 | 2));
            }
        }
        let (code, doc) = call(&["is-representable", &fano, "--p", "3"]);
        assert_eq!((code, doc["kind"].as_str()), (1, Some("excluded_minor")));
        assert_eq!(revalidate(&dir, &doc), 0);
    }

    #[test]
    fn flag_validation_reports_axiom_witness() {
        let dir = scratch("axioms");
        let bad = write(&dir, "bad.json", &json!({"n": 3, "feasible": [[0, 1], [1, 2], [0]]}));
        let (code, doc) = call(&["validate", &bad]);
        assert_eq!(code, 2);
        assert_eq!(doc["error"], "axiom_violation");
        assert!(doc["detail"]["verdict"].is_string());
        let (code, doc) = call(&["axioms", &bad]);
        assert_eq!(code, 1);
        assert_eq!(revalidate(&dir, &doc), 0);
    }

    #[test]
    fn input_errors_exit_two() {
        assert_eq!(call(&["validate", "/nonexistent/file.json"]).0, 2);
        assert_eq!(call(&["frobnicate"]).0, 2);
        let (code, doc) = call(&["uniform-rep", "--r", "2", "--n", "4", "--p", "4"]);
        assert_eq!((code, doc["error"].as_str()), (2, Some("not_prime")));
    }

    #[test]
    fn budget_exhaustion_exits_three() {
        let dir = scratch("budget");
        let f = write(&dir, "gap.json", &json!({"n": 5, "feasible": bits_json(&[1, 4], 5)}));
        assert_eq!(call(&["fillings", &f, "--budget", "2"]).0, 3);
        assert_eq!(call(&["is-representable", &f, "--p", "3", "--budget", "2"]).0, 3);
    }

    fn bits_json(sizes: &[usize], n: usize) -> Value {
        let sets: Vec<Vec<usize>> =
            sizes.iter().flat_map(|&k| bits::k_subsets(n, k)).map(bits::to_indices).collect();
        json!(sets)
    }

    #[test]
    fn graphic_and_major_verbs() {
        let dir = scratch("graphic");
        let (g, c) = graphic::k4_example();
        let gp = write(&dir, "g.json", &to_value(&g));
        let cp = write(&dir, "c.json", &to_value(&c));
        let (code, gm) = call(&["graphic-major", &gp, &cp]);
        assert_eq!(code, 0);
        assert_eq!(revalidate(&dir, &gm), 0);
        let (code, doc) = call(&["graphic-flag", &gp, &cp]);
        assert_eq!(code, 0);
        assert_eq!(revalidate(&dir, &doc), 0);
        let flag = write(&dir, "flag.json", &doc["flag"]);
        let (code, doc) = call(&["witness", &flag]);
        assert_eq!(code, 0);
        assert_eq!(revalidate(&dir, &doc), 0);
        let major = write(&dir, "major.json", &gm);
        assert_eq!(call(&["major", "verify", &flag, &major]).0, 0);

        let small = write(&dir, "small.json", &json!({"n": 3, "feasible": bits_json(&[1, 2], 3)}));
        let (code, doc) = call(&["major", "search", &small]);
        assert_eq!(code, 0);
        assert_eq!(revalidate(&dir, &doc), 0);
        let major = write(&dir, "major.json", &doc);
        assert_eq!(call(&["major", "verify", &small, &major]).0, 0);
    }
}
