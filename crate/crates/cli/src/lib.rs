//! Command-line front end: reads a presentation file or a saved model,
//! runs one command and writes text or JSON.
//!
//! Exit statuses: 0 success, 1 identity violations or a failed internal
//! check, 2 input errors, 3 results limited by the cutoffs.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use ainfext::cobar::CobarComplex;
use ainfext::cutoffs::Cutoffs;
use ainfext::linear::{Field, PrimeField};
use ainfext::massey::massey_product;
use ainfext::merkulov::{parse_document, AInftyModel, Engine, ModelDocument};
use ainfext::presentation::{AlgebraPresentation, FieldSpec, FieldVisitor, GradedAlgebra};
use ainfext::recovery::recover_presentation;
use ainfext::verify::{verify_model, IdentityReport};
use ainfext::Error;
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_TRUNCATION: i32 = 3;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Bigraded dimensions of Ext.
    ExtTable { input: PathBuf },
    /// The minimal model: classes, m_n and f_n tables.
    Model { input: PathBuf },
    /// Stasheff, morphism and strict-unit identities.
    Verify {
        input: PathBuf,
        /// Largest n for the morphism identities MI(n).
        #[arg(long, default_value_t = 4)]
        mi_max: usize,
    },
    /// Massey product of basis classes, compared with m_n.
    Massey {
        input: PathBuf,
        /// Class labels; a generator name stands for its dual class.
        #[arg(required = true, num_args = 2..)]
        classes: Vec<String>,
    },
    /// The presentation read back from m_n on E¹.
    Recover { input: PathBuf },
}

impl Command {
    /// A presentation file, or a model saved with `model --format json`.
    pub fn input(&self) -> &PathBuf {
        match self {
            Command::ExtTable { input } | Command::Model { input } | Command::Recover { input } => input,
            Command::Verify { input, .. } | Command::Massey { input, .. } => input,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Parser)]
#[command(name = "ainfext", version, about = "A-infinity structures on Ext-algebras of connected graded algebras")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Hom-degree cutoff N.
    #[arg(global = true, long)]
    pub cutoff_hom: Option<usize>,
    /// Adams-degree cutoff S.
    #[arg(global = true, long)]
    pub cutoff_adams: Option<usize>,
    #[arg(global = true, long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the output here instead of standard output.
    #[arg(global = true, long)]
    pub out: Option<PathBuf>,
}

/// A failure with its exit status.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Truncation { .. } => EXIT_TRUNCATION,
            Error::Internal(_) => EXIT_VIOLATION,
            _ => EXIT_INPUT,
        };
        Failure { code, message: e.to_string() }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: message.into(),
    }
}

/// What a command produced: the document and its exit status.
pub struct Output {
    pub text: String,
    pub code: i32,
}

enum Input {
    Presentation(AlgebraPresentation),
    Model(ModelDocument),
}

fn read_input(config: &RunConfig) -> Result<Input, Failure> {
    let path = config.command.input();
    let text = std::fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    if text.trim_start().starts_with('{') {
        Ok(Input::Model(parse_document(&text)?))
    } else {
        Ok(Input::Presentation(AlgebraPresentation::parse(&text)?))
    }
}

fn resolve_cutoffs(config: &RunConfig, p: &AlgebraPresentation) -> Result<Cutoffs, Failure> {
    let d = Cutoffs::default();
    let hom = config.cutoff_hom.or(p.cutoffs.hom).unwrap_or(d.hom);
    let adams = config.cutoff_adams.or(p.cutoffs.adams).unwrap_or(d.adams);
    Ok(Cutoffs::new(hom, adams)?)
}

/// Runs one command and returns the rendered output.
pub fn execute(config: &RunConfig) -> Result<Output, Failure> {
    match read_input(config)? {
        Input::Presentation(p) => {
            let cutoffs = resolve_cutoffs(config, &p)?;
            p.field.dispatch(Fresh { config, presentation: &p, cutoffs })
        }
        Input::Model(doc) => {
            for (flag, given, stored) in [("--cutoff-hom", config.cutoff_hom, doc.cutoffs.hom), ("--cutoff-adams", config.cutoff_adams, doc.cutoffs.adams)] {
                if given.is_some_and(|g| g != stored) {
                    return Err(input_error(format!("{flag} {} differs from the saved model's cutoff {stored}", given.unwrap())));
                }
            }
            let spec = match doc.characteristic {
                0 => FieldSpec::Rationals,
                p => FieldSpec::Prime(PrimeField::new(p)?.modulus()),
            };
            spec.dispatch(Saved { config, doc: &doc })
        }
    }
}

/// Runs a command, writing the output to `--out` or `stdout` and
/// diagnostics to `stderr`. Returns the exit status.
pub fn run(config: &RunConfig, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let result = execute(config).and_then(|out| {
        match &config.out {
            Some(path) => std::fs::write(path, &out.text).map_err(|e| input_error(format!("{}: {e}", path.display())))?,
            None => stdout.write_all(out.text.as_bytes()).map_err(|e| input_error(e.to_string()))?,
        }
        Ok(out.code)
    });
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

struct Fresh<'a> {
    config: &'a RunConfig,
    presentation: &'a AlgebraPresentation,
    cutoffs: Cutoffs,
}

impl FieldVisitor for Fresh<'_> {
    type Output = Result<Output, Failure>;

    fn visit<K: Field>(self, k: K) -> Self::Output {
        let engine = Engine::build(&k, self.presentation, self.cutoffs)?;
        let model = engine.build_model()?;
        dispatch(self.config, &model, || Ok(engine))
    }
}

struct Saved<'a> {
    config: &'a RunConfig,
    doc: &'a ModelDocument,
}

impl FieldVisitor for Saved<'_> {
    type Output = Result<Output, Failure>;

    fn visit<K: Field>(self, k: K) -> Self::Output {
        let model = AInftyModel::from_document(&k, self.doc)?;
        dispatch(self.config, &model, || Ok(Engine::build(&k, &model.presentation, model.cutoffs)?))
    }
}

fn dispatch<K: Field>(config: &RunConfig, model: &AInftyModel<K>, engine: impl FnOnce() -> Result<Engine<K>, Failure>) -> Result<Output, Failure> {
    let json = config.format == Format::Json;
    let ok = |text: String| Ok(Output { text, code: EXIT_OK });
    match &config.command {
        Command::ExtTable { .. } => ok(ext_table(model, json)),
        Command::Model { .. } => ok(if json { model.to_json() } else { model_text(model) }),
        Command::Verify { mi_max, .. } => {
            let alg = GradedAlgebra::from_presentation(&model.field, &model.presentation, model.cutoffs.adams);
            let cobar = CobarComplex::new(&alg, model.cutoffs)?;
            let reports = verify_model(model, &cobar, *mi_max)?;
            let code = if reports.iter().all(IdentityReport::passed) { EXIT_OK } else { EXIT_VIOLATION };
            Ok(Output {
                text: verify_output(&reports, json),
                code,
            })
        }
        Command::Massey { classes, .. } => {
            let engine = engine()?;
            let idx = classes.iter().map(|c| engine.find_class(c)).collect::<Result<Vec<_>, _>>()?;
            let r = massey_product(&engine, &idx)?;
            let label = |v: &[(usize, K::Elem)]| model.format_value(v);
            let names: Vec<&str> = idx.iter().map(|&c| model.class_label(c)).collect();
            let text = if json {
                to_json(&MasseyJson {
                    classes: names.clone(),
                    hom: r.hom,
                    adams: r.adams,
                    b: r.b,
                    representative: label(&r.representative),
                    m_value: label(&r.m_value),
                    agrees: r.agrees,
                })
            } else {
                format!(
                    "<{}> = {}\nm_{}({}) = {}\nsign exponent b = {}; (-1)^b m_{} {} the representative\n",
                    names.join(", "),
                    label(&r.representative),
                    names.len(),
                    names.join(" ⊗ "),
                    label(&r.m_value),
                    r.b,
                    names.len(),
                    if r.agrees { "equals" } else { "DIFFERS FROM" }
                )
            };
            Ok(Output {
                text,
                code: if r.agrees { EXIT_OK } else { EXIT_VIOLATION },
            })
        }
        Command::Recover { .. } => {
            let recovered = recover_presentation(model)?;
            let text = if json {
                let k = &model.field;
                let names: Vec<&str> = recovered.generators.iter().map(|g| g.name.as_str()).collect();
                to_json(&RecoveredJson {
                    characteristic: k.characteristic(),
                    generators: recovered.generators.iter().map(|g| GeneratorJson { name: g.name.clone(), degree: g.degree }).collect(),
                    relations: recovered
                        .relations
                        .iter()
                        .map(|(s, r)| RelationJson {
                            degree: *s,
                            text: r.display_with(|c| k.format(c), |g| names[g]),
                        })
                        .collect(),
                })
            } else {
                recovered.to_text()
            };
            ok(text)
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("output serializes");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct ExtTableJson {
    characteristic: u64,
    cutoffs: Cutoffs,
    /// `dims[n][s] = dim Ext^n_{-s}`.
    dims: Vec<Vec<usize>>,
}

#[derive(Serialize)]
struct ViolationJson<'a> {
    inputs: &'a [String],
    lhs: &'a str,
    rhs: &'a str,
}

#[derive(Serialize)]
struct BidegreeJson {
    hom: usize,
    adams: usize,
    tested: usize,
    failed: usize,
}

#[derive(Serialize)]
struct ReportJson<'a> {
    name: &'a str,
    tuples_tested: usize,
    passed: bool,
    bidegrees: Vec<BidegreeJson>,
    violations: Vec<ViolationJson<'a>>,
}

#[derive(Serialize)]
struct MasseyJson<'a> {
    classes: Vec<&'a str>,
    hom: usize,
    adams: usize,
    b: i64,
    representative: String,
    m_value: String,
    agrees: bool,
}

#[derive(Serialize)]
struct GeneratorJson {
    name: String,
    degree: usize,
}

#[derive(Serialize)]
struct RelationJson {
    degree: usize,
    text: String,
}

#[derive(Serialize)]
struct RecoveredJson {
    characteristic: u64,
    generators: Vec<GeneratorJson>,
    relations: Vec<RelationJson>,
}

fn ext_table<K: Field>(model: &AInftyModel<K>, json: bool) -> String {
    let cut = model.cutoffs;
    let dims: Vec<Vec<usize>> = (0..=cut.hom).map(|n| (0..=cut.adams).map(|s| model.classes_in(n, s).len()).collect()).collect();
    if json {
        return to_json(&ExtTableJson {
            characteristic: model.field.characteristic(),
            cutoffs: cut,
            dims,
        });
    }
    let mut out = String::new();
    let field = match model.field.characteristic() {
        0 => "Q".to_string(),
        p => format!("GF({p})"),
    };
    writeln!(out, "Ext over {field}, hom <= {}, Adams >= -{}", cut.hom, cut.adams).unwrap();
    for (n, row) in dims.iter().enumerate() {
        let parts: Vec<String> = row
            .iter()
            .enumerate()
            .filter(|(_, &d)| d > 0)
            .map(|(s, &d)| {
                let base = if s == 0 { "k".to_string() } else { format!("k(-{s})") };
                if d == 1 {
                    base
                } else {
                    format!("{base}^{d}")
                }
            })
            .collect();
        let sum = if parts.is_empty() { "0".to_string() } else { parts.join(" ⊕ ") };
        writeln!(out, "Ext^{n} = {sum}").unwrap();
    }
    out.push('\n');
    let width = format!("{}", cut.adams).len() + 2;
    write!(out, "{:>5} |", "n\\s").unwrap();
    for s in 0..=cut.adams {
        let h = if s == 0 { "0".to_string() } else { format!("-{s}") };
        write!(out, "{h:>width$}").unwrap();
    }
    out.push('\n');
    writeln!(out, "{}", "-".repeat(7 + width * (cut.adams + 1))).unwrap();
    for (n, row) in dims.iter().enumerate() {
        write!(out, "{n:>5} |").unwrap();
        for d in row {
            let cell = if *d == 0 { ".".to_string() } else { d.to_string() };
            write!(out, "{cell:>width$}").unwrap();
        }
        out.push('\n');
    }
    out
}

fn model_text<K: Field>(model: &AInftyModel<K>) -> String {
    let mut out = String::new();
    writeln!(out, "classes (hom, Adams):").unwrap();
    for c in &model.classes {
        writeln!(out, "  {:<12} ({}, -{})", c.label, c.hom, c.adams).unwrap();
    }
    writeln!(out, "nonzero products:").unwrap();
    let mut entries: Vec<(&Vec<usize>, &Vec<(usize, K::Elem)>)> = model.m.iter().filter(|(_, v)| !v.is_empty()).collect();
    entries.sort_by_key(|(t, _)| (t.len(), (*t).clone()));
    for (t, v) in entries {
        let inputs: Vec<&str> = t.iter().map(|&c| model.class_label(c)).collect();
        writeln!(out, "  m_{}({}) = {}", t.len(), inputs.join(" ⊗ "), model.format_value(v)).unwrap();
    }
    writeln!(out, "{} m entries and {} f entries tabulated", model.m.len(), model.f.len()).unwrap();
    out
}

fn verify_output(reports: &[IdentityReport], json: bool) -> String {
    if json {
        let rows: Vec<ReportJson> = reports
            .iter()
            .map(|r| ReportJson {
                name: &r.name,
                tuples_tested: r.tuples_tested,
                passed: r.passed(),
                bidegrees: r
                    .bidegrees
                    .iter()
                    .map(|(&(hom, adams), t)| BidegreeJson {
                        hom,
                        adams,
                        tested: t.tested,
                        failed: t.failed,
                    })
                    .collect(),
                violations: r
                    .violations
                    .iter()
                    .map(|v| ViolationJson {
                        inputs: &v.inputs,
                        lhs: &v.lhs,
                        rhs: &v.rhs,
                    })
                    .collect(),
            })
            .collect();
        return to_json(&rows);
    }
    let mut out = String::new();
    for r in reports {
        writeln!(out, "{r}").unwrap();
        // Hom ascending, Adams descending.
        let mut rows: Vec<_> = r.bidegrees.iter().collect();
        rows.sort_by_key(|(&(h, a), _)| (h, std::cmp::Reverse(a)));
        for ((h, a), t) in rows {
            let verdict = if t.failed == 0 { "PASS" } else { "FAIL" };
            let bidegree = format!("({h}, -{a})");
            writeln!(out, "    {bidegree:<8} {:>7} tuples  {verdict}", t.tested).unwrap();
        }
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    writeln!(out, "{}", if failed == 0 { "all identities hold".to_string() } else { format!("{failed} identities violated") }).unwrap();
    out
}
