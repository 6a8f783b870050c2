//! `cia`: construct determinantal hyperedge ideals, compute with them and
//! run the verification suite from the command line.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use cia_core::grid::{self, Grid, Hypergraph};
use cia_core::groebner::{self, BasisCache, GroebnerBasis, GroebnerBasisJson, Limits};
use cia_core::ideals::{self, Ideal, IdealJson, Instance};
use cia_core::poly::{Field, FieldKind, PrimeField, Rationals};
use cia_core::report::VerificationReport;
use cia_core::{proofcheck, variety, verify, Error, SCHEMA};

#[derive(Parser)]
#[command(name = "cia", version, about = "Determinantal hyperedge ideals of CI statements with hidden variables")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print an ideal as JSON or as a generator list.
    Construct(Select),
    /// Reduced lex Gröbner basis of an ideal.
    Gb {
        #[command(flatten)]
        select: Select,
        /// Directory of cached bases.
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Test whether the ideal in INNER is contained in the ideal in OUTER.
    Contains { outer: PathBuf, inner: PathBuf, #[command(flatten)] common: Common },
    /// Intersection of ideals read from files.
    Intersect {
        #[arg(required = true, num_args = 2..)]
        files: Vec<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Krull dimension of R/I from the Stanley-Reisner complex of in(I).
    Dim(Select),
    /// The prime components grouped by symmetry class.
    Table {
        #[command(flatten)]
        inst: InstanceArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Point census of V(J) against its components over GF(q).
    Census {
        #[command(flatten)]
        inst: InstanceArgs,
        #[arg(long, default_value_t = 2)]
        q: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Run a verification target.
    Verify {
        target: Target,
        #[command(flatten)]
        inst: InstanceArgs,
        #[arg(long, default_value_t = 2)]
        q: u32,
        /// Matrix sizes for the appendix checks, as `4..6` (inclusive) or `5`.
        #[arg(long, default_value = "4..6")]
        n: String,
        /// Also check the decomposition as an equality of ideals.
        #[arg(long)]
        exact: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Write an ideal or its Gröbner basis to a file.
    Export {
        #[command(flatten)]
        select: Select,
        #[arg(long)]
        out: PathBuf,
        /// Export the reduced Gröbner basis instead of the generators.
        #[arg(long)]
        gb: bool,
    },
    /// Read an ideal, basis or hypergraph file, validate it and print it back.
    Import {
        path: PathBuf,
        /// Matrix rows for a hypergraph file.
        #[arg(long, default_value_t = 3)]
        d: usize,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    #[value(name = "thm2.4")]
    Groebner,
    #[value(name = "thm2.5-steps")]
    PrimalitySteps,
    #[value(name = "thm2.6")]
    Decomposition,
    #[value(name = "cor2.7")]
    ComponentCount,
    #[value(name = "prop2.8")]
    Dimensions,
    #[value(name = "lemma3.2")]
    NonZerodivisors,
    #[value(name = "lemma3.4")]
    Localization,
    #[value(name = "appendix")]
    Appendix,
    #[value(name = "ex4.1")]
    TripleMinors,
    #[value(name = "ex4.3")]
    Containments,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Which {
    #[value(name = "J", alias = "j")]
    J,
    #[value(name = "I0", alias = "i0")]
    I0,
    #[value(name = "IS", alias = "is")]
    IS,
    /// The explicit `I_14` listing of the 2x4 example.
    #[value(name = "ex-I14")]
    ExI14,
    /// The explicit `I_14^*` listing of the 2x4 example.
    #[value(name = "ex-I14star")]
    ExI14Star,
}

#[derive(Args, Clone)]
struct InstanceArgs {
    /// Defaults to `l`
    #[arg(long)]
    d: Option<usize>,
    #[arg(long, default_value_t = 2)]
    k: usize,
    #[arg(long, default_value_t = 3)]
    l: usize,
    #[arg(long, default_value_t = 2)]
    s: usize,
    /// Defaults to `l`.
    #[arg(long)]
    t: Option<usize>,
}

impl InstanceArgs {
    fn instance(&self) -> cia_core::Result<Instance> {
        Instance::new(self.d.unwrap_or(self.l.max(2)), self.k, self.l, self.s, self.t.unwrap_or(self.l))
    }
}

#[derive(Args, Clone)]
struct Common {
    /// Coefficient field: QQ or GF(p).
    #[arg(long, default_value = "QQ")]
    field: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Stop with exit code 3 once more critical pairs than this are queued
    #[arg(long)]
    limit_pairs: Option<usize>,
    /// Stop with exit code 3 on a critical pair whose lcm exceeds this degree
    #[arg(long)]
    limit_degree: Option<u32>,
    /// Process every critical pair instead of skipping those the chain
    /// criterion proves redundant.
    #[arg(long)]
    no_chain: bool,
    /// Lift size guards on exhaustive runs.
    #[arg(long)]
    force: bool,
}

impl Common {
    fn field(&self) -> anyhow::Result<FieldKind> {
        Ok(self.field.parse::<FieldKind>()?)
    }

    fn limits(&self) -> anyhow::Result<Limits> {
        let mut l = Limits { chain_criterion: !self.no_chain, ..Limits::default() };
        if let Some(p) = self.limit_pairs {
            if p == 0 {
                bail!(Error::InvalidSize("--limit-pairs must be positive".into()));
            }
            l.max_pairs = p;
        }
        if let Some(d) = self.limit_degree {
            if d == 0 {
                bail!(Error::InvalidSize("--limit-degree must be positive".into()));
            }
            l.max_degree = d;
        }
        Ok(l)
    }
}

/// Which ideal a command works on: read from `--input`, or built from the
/// instance flags.
#[derive(Args, Clone)]
struct Select {
    #[command(flatten)]
    inst: InstanceArgs,
    #[arg(long, value_enum, default_value_t = Which::J)]
    ideal: Which,
    /// The set S for `--ideal IS`, e.g. `1,4`.
    #[arg(long = "S")]
    set: Option<String>,
    /// Hyperedges for an ad-hoc hyperedge ideal on the k x l grid, e.g. `1,4,56`.
    #[arg(long)]
    edges: Option<String>,
    /// Read the ideal from a JSON file instead.
    #[arg(long)]
    input: Option<PathBuf>,
    #[command(flatten)]
    common: Common,
}

fn parse_set(text: &str) -> anyhow::Result<Vec<usize>> {
    let t = text.trim();
    let v: Vec<usize> = if t.contains(',') || t.contains('-') {
        t.split([',', '-'])
            .map(|s| s.trim().parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|_| Error::Parse(format!("bad set {text:?}")))?
    } else {
        t.chars()
            .map(|c| c.to_digit(10).map(|x| x as usize))
            .collect::<Option<_>>()
            .ok_or_else(|| Error::Parse(format!("bad set {text:?}")))?
    };
    Ok(v)
}

fn build<F: Field>(sel: &Select, field: F) -> anyhow::Result<Ideal<F>> {
    if let Some(path) = &sel.input {
        return read_ideal(path, field);
    }
    let inst = sel.inst.instance()?;
    let g = inst.grid();
    if let Some(edges) = &sel.edges {
        let delta = Hypergraph::parse_edges(g.size(), edges)?;
        return Ok(ideals::hyperedge_ideal(inst.d, &delta, field)?.with_grid(g));
    }
    Ok(match sel.ideal {
        Which::J => ideals::ci_ideal(&inst, field)?,
        Which::I0 => ideals::i0_ideal(&g, inst.d, inst.t, field)?,
        Which::IS => {
            let text = sel.set.as_deref().ok_or_else(|| Error::Parse("--ideal IS needs --S".into()))?;
            ideals::ideal_is(&g, inst.d, inst.s, &parse_set(text)?, field, false)?
        }
        Which::ExI14 => verify::example_ideal(verify::EXAMPLE_I14, field, "I_14")?,
        Which::ExI14Star => verify::example_ideal(verify::EXAMPLE_I14_STAR, field, "I_14^*")?,
    })
}

fn read_ideal<F: Field>(path: &Path, field: F) -> anyhow::Result<Ideal<F>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let json: IdealJson = serde_json::from_str(&text).map_err(Error::from)?;
    Ok(Ideal::from_json(field, &json)?)
}

/// Runs `$body` with `$f` bound to the field named by `$kind`.
macro_rules! with_field {
    ($kind:expr, $f:ident => $body:expr) => {
        match $kind {
            FieldKind::Rational => {
                let $f = Rationals;
                $body
            }
            FieldKind::Prime(p) => {
                let $f = PrimeField::new(p)?;
                $body
            }
        }
    };
}

/// Outcome of a command: exit 0, or 1 for a failed verification.
type Outcome = anyhow::Result<bool>;

fn emit(format: Format, text: String, json: Value) {
    match format {
        Format::Text => out(&text),
        Format::Json => out(&format!("{}\n", serde_json::to_string_pretty(&json).expect("serializable"))),
    }
}

/// Writes to stdout, ignoring a closed pipe.
fn out(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn emit_report(format: Format, report: &VerificationReport, extra: Option<(&str, Value)>) -> Outcome {
    let mut json = serde_json::to_value(report)?;
    if let Some((key, value)) = extra {
        json[key] = value;
    }
    emit(format, report.to_text(), json);
    Ok(report.passed)
}

fn ideal_text<F: Field>(ideal: &Ideal<F>) -> String {
    let mut out = format!(
        "{} with {} generators over {}\n",
        ideal.label().unwrap_or("ideal"),
        ideal.generators().len(),
        ideal.field().kind()
    );
    match ideal.minors() {
        Some(ms) => ms.iter().for_each(|m| out.push_str(&format!("  {m}\n"))),
        None => ideal.generators().iter().for_each(|g| out.push_str(&format!("  {g}\n"))),
    }
    out
}

fn basis_text<F: Field>(gb: &GroebnerBasis<F>) -> String {
    let mut out = format!("reduced {} basis with {} elements over {}\n", gb.order(), gb.len(), gb.field().kind());
    for g in gb.elements() {
        out.push_str(&format!("  {g}\n"));
    }
    out
}

fn cmd_construct<F: Field>(sel: &Select, field: F) -> Outcome {
    let ideal = build(sel, field)?;
    emit(sel.common.format, ideal_text(&ideal), serde_json::to_value(ideal.to_json()?)?);
    Ok(true)
}

fn cmd_gb<F: Field>(sel: &Select, cache: Option<&Path>, field: F) -> Outcome {
    let ideal = build(sel, field)?;
    let limits = sel.common.limits()?;
    let gb = match cache {
        Some(dir) => BasisCache::new(dir).basis(&ideal, &limits)?,
        None => ideal.groebner_basis(&limits)?,
    };
    emit(sel.common.format, basis_text(&gb), serde_json::to_value(gb.to_json()?)?);
    Ok(true)
}

fn cmd_contains<F: Field>(outer: &Path, inner: &Path, common: &Common, field: F) -> Outcome {
    let i = read_ideal(outer, field)?;
    let j = read_ideal(inner, field)?;
    let gb = i.groebner_basis(&common.limits()?)?;
    let out = groebner::first_non_member(&gb, j.generators())?;
    let text = match out {
        None => format!("{} is contained in {}\n", inner.display(), outer.display()),
        Some(n) => format!(
            "{} is not contained in {}: generator {n} ({}) is not a member\n",
            inner.display(),
            outer.display(),
            j.generators()[n]
        ),
    };
    let json = serde_json::json!({
        "schema": SCHEMA,
        "contained": out.is_none(),
        "non_member": out,
    });
    emit(common.format, text, json);
    Ok(true)
}

fn cmd_intersect<F: Field>(files: &[PathBuf], common: &Common, field: F) -> Outcome {
    let ideals = files.iter().map(|p| read_ideal(p, field)).collect::<anyhow::Result<Vec<_>>>()?;
    let refs: Vec<&Ideal<F>> = ideals.iter().collect();
    let meet = groebner::intersect(&refs, &common.limits()?)?;
    emit(common.format, ideal_text(&meet), serde_json::to_value(meet.to_json()?)?);
    Ok(true)
}

fn cmd_dim<F: Field>(sel: &Select, field: F) -> Outcome {
    let ideal = build(sel, field)?;
    let gb = ideal.groebner_basis(&sel.common.limits()?)?;
    let inst = sel.inst.instance()?;
    let g = ideal.grid().unwrap_or(inst.grid());
    let set = match (sel.ideal, &sel.set, &sel.input, &sel.edges) {
        (Which::IS, Some(t), None, None) => Some(parse_set(t)?),
        _ => None,
    };
    let formula_applies = sel.input.is_none()
        && sel.edges.is_none()
        && matches!(sel.ideal, Which::I0 | Which::IS)
        && inst.in_main_regime();
    let label = ideal.label().unwrap_or("ideal").to_string();
    let row = if formula_applies {
        verify::dimension_report(&label, &gb, &g, inst.d, set.as_deref())?
    } else {
        // Outside the main regime there is no witness face to seed with.
        let off = Grid::new(1, g.size())?;
        verify::dimension_report(&label, &gb, &off, gb.ring().rows, None)?
    };
    let mut text = format!(
        "{}: {} variables, dimension {}, codimension {}\n",
        row.label, row.variables, row.dimension, row.codimension
    );
    if let Some(f) = row.formula {
        text.push_str(&format!("formula {f}\n"));
    }
    if !row.witness.is_empty() {
        text.push_str(&format!(
            "witness face ({} vertices, {}): {}\n",
            row.witness.len(),
            if row.witness_is_face { "a face" } else { "NOT a face" },
            row.witness.join(" ")
        ));
    }
    let mut json = serde_json::to_value(&row)?;
    json["schema"] = SCHEMA.into();
    emit(sel.common.format, text, json);
    Ok(row.formula.is_none_or(|f| f == row.dimension) && (row.witness.is_empty() || row.witness_is_face))
}

fn cmd_table(inst: &Instance, common: &Common) -> Outcome {
    let rows = verify::component_table(inst, &common.limits()?)?;
    let total: usize = rows.iter().map(|r| r.occurrences).sum();
    let vars = inst.ring().nvars();
    let mut text = format!("{total} prime components of J at {inst}\n");
    text.push_str(&format!(
        "{:<5}{:<16}{:>12}{:>12}{:>11}{:>14}\n",
        "type", "representative", "occurrences", "generators", "dimension", "codimension"
    ));
    for r in &rows {
        text.push_str(&format!(
            "{:<5}{:<16}{:>12}{:>12}{:>11}{:>14}\n",
            r.kind, r.representative, r.occurrences, r.generators, r.dimension, r.codimension
        ));
    }
    text.push_str(&format!("codimension is {vars} variables minus the dimension\n"));
    for r in rows.iter().filter(|r| r.occurrences > 1) {
        let mut members = r.members.clone();
        members.sort();
        text.push_str(&format!("type {}: {}\n", r.kind, members.join(" ")));
    }
    let json = serde_json::json!({
        "schema": SCHEMA,
        "instance": inst,
        "components": total,
        "variables": vars,
        "classes": rows,
    });
    emit(common.format, text, json);
    Ok(true)
}

fn point_bound() -> anyhow::Result<u128> {
    match std::env::var("CIA_POINT_BOUND") {
        Ok(v) => Ok(v
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("CIA_POINT_BOUND={v:?} is not a number")))?),
        Err(_) => Ok(variety::DEFAULT_POINT_BOUND),
    }
}

fn cmd_census(inst: &Instance, q: u32, common: &Common) -> Outcome {
    let (report, census) = verify::verify_census(inst, q, point_bound()?, common.force)?;
    emit_report(common.format, &report, Some(("census", serde_json::to_value(&census)?)))
}

fn parse_range(text: &str) -> anyhow::Result<Vec<usize>> {
    let bad = || Error::Parse(format!("bad size range {text:?}; expected N or A..B"));
    let (a, b) = match text.split_once("..") {
        Some((a, b)) => (a.trim().parse().map_err(|_| bad())?, b.trim().trim_start_matches('=').parse().map_err(|_| bad())?),
        None => {
            let n = text.trim().parse().map_err(|_| bad())?;
            (n, n)
        }
    };
    if a < 2 || a > b {
        bail!(Error::InvalidSize(format!("size range {text:?} must satisfy 2 <= A <= B")));
    }
    Ok((a..=b).collect())
}

fn cmd_verify(target: Target, ia: &InstanceArgs, q: u32, n: &str, exact: bool, common: &Common) -> Outcome {
    let inst = ia.instance()?;
    let g = inst.grid();
    let limits = common.limits()?;
    let fmt = common.format;
    match target {
        Target::Groebner => {
            let mut report = VerificationReport::new(format!("Groebner bases and radicality at {inst}"));
            with_field!(common.field()?, f => {
                report.absorb(verify::verify_groebner(&inst, f, true)?);
                report.absorb(verify::verify_radical(&inst, f, &limits)?);
            });
            emit_report(fmt, &report, None)
        }
        Target::PrimalitySteps => emit_report(fmt, &proofcheck::verify_primality_steps(&g, inst.d)?, None),
        Target::Decomposition => {
            let (mut report, census) = verify::verify_census(&inst, q, point_bound()?, common.force)?;
            if exact {
                report.absorb(verify::verify_intersection(&inst, &limits)?);
            }
            emit_report(fmt, &report, Some(("census", serde_json::to_value(&census)?)))
        }
        Target::ComponentCount => {
            let count = 1 + grid::script_l(&g)?.len();
            let mut report = VerificationReport::new(format!("{count} prime components at k={} l={}", g.k, g.l));
            report.absorb(verify::verify_component_count(g.k, g.l)?);
            if inst.in_main_regime() {
                report.absorb(verify::verify_incomparable_by_witness(&inst)?);
            }
            println_text(fmt, &format!("{count}\n"));
            emit_report(fmt, &report, Some(("components", count.into())))
        }
        Target::Dimensions => {
            let (report, rows) = verify::verify_dimensions(&inst, &limits)?;
            emit_report(fmt, &report, Some(("dimensions", serde_json::to_value(&rows)?)))
        }
        Target::NonZerodivisors => {
            let mut report = VerificationReport::new(format!("non-zerodivisors at {inst}"));
            for j in 1..g.l {
                report.absorb(proofcheck::check_nzd(&g, inst.d, j)?);
            }
            emit_report(fmt, &report, None)
        }
        Target::Localization => {
            let report = if g.l >= 3 {
                proofcheck::verify_localization_step(&g, inst.d)?
            } else {
                proofcheck::verify_base_case(g.k, inst.d)?
            };
            emit_report(fmt, &report, None)
        }
        Target::Appendix => {
            let ns = parse_range(n)?;
            let mut report = VerificationReport::new(format!("appendix identities and tables, n in {ns:?}"));
            report.absorb(verify::verify_identities(&ns)?);
            let table_ns: Vec<usize> = ns.iter().copied().filter(|&x| x >= 4).collect();
            if !table_ns.is_empty() {
                report.absorb(proofcheck::verify_tables(&table_ns)?);
            }
            emit_report(fmt, &report, None)
        }
        Target::TripleMinors => with_field!(common.field()?, f => {
            let (report, _) = verify::verify_triple_example(f, &limits)?;
            emit_report(fmt, &report, None)
        }),
        Target::Containments => with_field!(common.field()?, f => {
            emit_report(fmt, &verify::verify_containment_example(f, &limits)?, None)
        }),
    }
}

fn println_text(format: Format, text: &str) {
    if format == Format::Text {
        out(text);
    }
}

fn cmd_export<F: Field>(sel: &Select, out: &Path, gb: bool, field: F) -> Outcome {
    let ideal = build(sel, field)?;
    let bytes = if gb {
        serde_json::to_vec_pretty(&ideal.groebner_basis(&sel.common.limits()?)?.to_json()?)?
    } else {
        serde_json::to_vec_pretty(&ideal.to_json()?)?
    };
    std::fs::write(out, bytes).with_context(|| format!("writing {}", out.display()))?;
    println_text(sel.common.format, &format!("wrote {}\n", out.display()));
    Ok(true)
}

/// Reads an ideal, a basis or a hypergraph. Ideals and bases are printed
/// back in the same serialization; a hypergraph becomes its hyperedge ideal.
fn cmd_import(path: &Path, d: usize, common: &Common) -> Outcome {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let value: Value = serde_json::from_str(&text).map_err(Error::from)?;
    let kind = common.field()?;
    let out = if value.get("elements").is_some() {
        let json: GroebnerBasisJson = serde_json::from_value(value).map_err(Error::from)?;
        with_field!(json.field, f => serde_json::to_string_pretty(&GroebnerBasis::from_json(f, &json)?.to_json()?)?)
    } else if value.get("generators").is_some() {
        let json: IdealJson = serde_json::from_value(value).map_err(Error::from)?;
        with_field!(json.field, f => serde_json::to_string_pretty(&Ideal::from_json(f, &json)?.to_json()?)?)
    } else if value.get("edges").is_some() {
        let delta: Hypergraph = serde_json::from_value(value).map_err(Error::from)?;
        let delta = Hypergraph::new(delta.n(), delta.edges().to_vec())?;
        with_field!(kind, f => {
            let ideal = ideals::hyperedge_ideal(d, &delta, f)?;
            match common.format {
                Format::Text => ideal_text(&ideal),
                Format::Json => serde_json::to_string_pretty(&ideal.to_json()?)?,
            }
        })
    } else {
        bail!(Error::Parse(format!("{}: not an ideal, basis or hypergraph file", path.display())));
    };
    self::out(&format!("{}\n", out.trim_end()));
    Ok(true)
}

fn run(cli: Cli) -> Outcome {
    match &cli.command {
        Command::Construct(sel) => with_field!(sel.common.field()?, f => cmd_construct(sel, f)),
        Command::Gb { select, cache } => with_field!(select.common.field()?, f => cmd_gb(select, cache.as_deref(), f)),
        Command::Contains { outer, inner, common } => with_field!(common.field()?, f => cmd_contains(outer, inner, common, f)),
        Command::Intersect { files, common } => with_field!(common.field()?, f => cmd_intersect(files, common, f)),
        Command::Dim(sel) => with_field!(sel.common.field()?, f => cmd_dim(sel, f)),
        Command::Table { inst, common } => cmd_table(&inst.instance()?, common),
        Command::Census { inst, q, common } => cmd_census(&inst.instance()?, *q, common),
        Command::Verify { target, inst, q, n, exact, common } => cmd_verify(*target, inst, *q, n, *exact, common),
        Command::Export { select, out, gb } => with_field!(select.common.field()?, f => cmd_export(select, out, *gb, f)),
        Command::Import { path, d, common } => cmd_import(path, *d, common),
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::ResourceLimit(_)) => 3,
        _ => 2,
    }
}

fn init_threads() -> anyhow::Result<()> {
    if let Ok(v) = std::env::var("CIA_THREADS") {
        let n: usize = v
            .trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| anyhow!(Error::Parse(format!("CIA_THREADS={v:?} is not a positive number"))))?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match init_threads().and_then(|_| run(cli)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
