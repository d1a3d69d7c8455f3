//! Command front end: `vd`, `pi-aut`, `hbs-model`, `tables`, `flag-tower`, `check`.
//!
//! Exit codes: 0 on success, 1 on invalid input, 2 when an invariant fails
//! (including a `tables` row that disagrees with its stored value).

mod check;
mod problem;
mod render;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

pub use check::{enumerate_block_types, run_checks};
pub use problem::{line_column, parse_problem};
pub use render::{
    report_text, CheckReport, CheckResult, HbsReport, PiAutReport, TableRow, TablesReport, TowerReport,
};

use crate::hbs::{build_hbs, linearized_homology, sphere_source, truncated_source, HbsOptions, SignRegime};
use crate::sullivan::{flag_tower_with_unit, ElimSign};
use crate::visibility::{analyze, catalog_entry, catalog_rows, visible_degrees, CatalogEntry, VisibilityProblem};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "ratvis", version, about = "Visible degrees of left translation on homogeneous spaces")]
pub struct Cli {
    /// output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Visible degrees of a problem file or catalog entry
    Vd(Source),
    /// Rational homotopy of aut_1(G/U)
    PiAut(Source),
    /// Print a function-space model
    HbsModel(HbsArgs),
    /// Compare computed visible degrees with the stored table values
    Tables(TablesArgs),
    /// Print the tower of models of a two-block flag manifold
    FlagTower(TowerArgs),
    /// Run the invariant suite
    Check,
    /// List catalog entries
    Catalog,
}

#[derive(Debug, Args)]
pub struct Source {
    /// problem file (TOML)
    pub path: Option<PathBuf>,
    /// catalog id or name, e.g. `G2/U2` or `11:n=3`
    #[arg(long)]
    pub catalog: Option<String>,
    /// degree through which H*(G/U) is computed
    #[arg(long)]
    pub truncation: Option<u32>,
    /// augmentation sign regime: tau or plain
    #[arg(long)]
    pub regime: Option<SignRegime>,
    /// global sign of the pair elimination: plus or minus
    #[arg(long = "elim-sign")]
    pub elim_sign: Option<ElimSign>,
    /// keep the pure model unreduced
    #[arg(long)]
    pub no_reduce: bool,
}

#[derive(Debug, Args)]
pub struct HbsArgs {
    /// `l=L m=M`: the model of Q[x]/(x^M) with |x| = L
    #[arg(long, num_args = 2, value_names = ["l=L", "m=M"])]
    pub truncated: Option<Vec<String>>,
    /// the model of S^N
    #[arg(long)]
    pub sphere: Option<u32>,
    /// reduced model of a catalog entry
    #[arg(long)]
    pub catalog: Option<String>,
    /// keep only the linear part of δ
    #[arg(long)]
    pub linear: bool,
    #[arg(long)]
    pub regime: Option<SignRegime>,
    #[arg(long)]
    pub truncation: Option<u32>,
}

#[derive(Debug, Args)]
pub struct TablesArgs {
    /// row numbers, ids or names, comma separated
    #[arg(long, value_delimiter = ',')]
    pub rows: Vec<String>,
}

#[derive(Debug, Args)]
pub struct TowerArgs {
    pub m: u32,
    pub k: u32,
    /// degree of c_1 (2 unitary, 4 symplectic)
    #[arg(long, default_value_t = 2)]
    pub unit: u32,
}

struct Output {
    text: String,
    json: serde_json::Value,
    code: i32,
}

fn output<T: Serialize>(value: &T, text: String, code: i32) -> Result<Output> {
    let json = serde_json::to_value(value).map_err(|e| Error::Invariant(format!("serialization failed: {e}")))?;
    Ok(Output { text, json, code })
}

fn load(src: &Source) -> Result<VisibilityProblem> {
    let mut p = match (&src.path, &src.catalog) {
        (Some(_), Some(_)) => return Err(Error::Validation("give either a problem file or --catalog, not both".into())),
        (None, None) => return Err(Error::Validation("give a problem file or --catalog NAME".into())),
        (None, Some(name)) => catalog_entry(name)?.problem,
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Validation(format!("cannot read {}: {e}", path.display())))?;
            parse_problem(&path.display().to_string(), &text)?
        }
    };
    if let Some(t) = src.truncation {
        p.options.truncation = Some(t);
    }
    if let Some(r) = src.regime {
        p.options.regime = r;
    }
    if let Some(s) = src.elim_sign {
        p.options.elimination_sign = s;
    }
    if src.no_reduce {
        p.options.reduce = false;
    }
    Ok(p)
}

fn cmd_vd(src: &Source) -> Result<Output> {
    let r = visible_degrees(&load(src)?)?;
    output(&r, report_text(&r), 0)
}

fn cmd_pi_aut(src: &Source) -> Result<Output> {
    let p = load(src)?;
    let a = analyze(&p)?;
    let r = PiAutReport {
        schema: "ratvis.pi-aut/v1".into(),
        name: p.name.clone(),
        poincare: a.h.poincare(),
        homotopy: a.homotopy_dims(),
    };
    output(&r, render::pi_aut_text(&r), 0)
}

fn parse_kv(items: &[String]) -> Result<(u32, u32)> {
    let mut l = None;
    let mut m = None;
    for it in items {
        let (k, v) = it
            .split_once('=')
            .ok_or_else(|| Error::Validation(format!("expected key=value, got `{it}`")))?;
        let v: u32 = v
            .trim()
            .parse()
            .map_err(|_| Error::Validation(format!("`{v}` is not a nonnegative integer")))?;
        match k.trim() {
            "l" => l = Some(v),
            "m" => m = Some(v),
            other => return Err(Error::Validation(format!("unknown key `{other}`, expected l or m"))),
        }
    }
    match (l, m) {
        (Some(l), Some(m)) => Ok((l, m)),
        _ => Err(Error::Validation("--truncated needs l=L and m=M".into())),
    }
}

fn cmd_hbs_model(args: &HbsArgs) -> Result<Output> {
    let options = HbsOptions {
        regime: args.regime.unwrap_or_default(),
        linear_only: args.linear,
    };
    let given = [args.truncated.is_some(), args.sphere.is_some(), args.catalog.is_some()];
    if given.iter().filter(|&&b| b).count() != 1 {
        return Err(Error::Validation("give exactly one of --truncated, --sphere, --catalog".into()));
    }
    let a = if let Some(kv) = &args.truncated {
        let (l, m) = parse_kv(kv)?;
        let (cdga, k) = truncated_source(l, m)?;
        build_hbs(&cdga, &k, options)?
    } else if let Some(n) = args.sphere {
        let (cdga, k) = sphere_source(n)?;
        build_hbs(&cdga, &k, options)?
    } else {
        let name = args.catalog.as_deref().unwrap_or_default();
        let mut p = catalog_entry(name)?.problem;
        p.options.regime = options.regime;
        if args.truncation.is_some() {
            p.options.truncation = args.truncation;
        }
        let an = crate::visibility::analyze_with(&p, !args.linear)?;
        an.hbs
    };
    if a.is_full() && !a.check_delta_squared()? {
        return Err(Error::Invariant("δ² ≠ 0".into()));
    }
    let hom = linearized_homology(&a, a.max_degree()).dims();
    let r = HbsReport::new(&a, hom);
    output(&r, render::hbs_text(&r), 0)
}

/// Computes each entry and compares with its stored visible degrees.
pub fn compare_rows(entries: &[CatalogEntry]) -> TablesReport {
    let rows: Vec<TableRow> = entries
        .par_iter()
        .map(|e| {
            let expected: Vec<u32> = e.expected_vd.iter().copied().collect();
            match visible_degrees(&e.problem) {
                Ok(r) => TableRow {
                    id: e.id.clone(),
                    name: e.name().to_string(),
                    pass: r.vd == expected,
                    expected,
                    computed: Some(r.vd),
                    error: None,
                },
                Err(err) => TableRow {
                    id: e.id.clone(),
                    name: e.name().to_string(),
                    expected,
                    computed: None,
                    error: Some(err.to_string()),
                    pass: false,
                },
            }
        })
        .collect();
    let failures = rows.iter().filter(|r| !r.pass).count();
    TablesReport {
        schema: "ratvis.tables/v1".into(),
        rows,
        failures,
    }
}

fn cmd_tables(args: &TablesArgs) -> Result<Output> {
    let entries: Vec<CatalogEntry> = catalog_rows(&args.rows).into_iter().filter(|e| e.table > 0).collect();
    if entries.is_empty() {
        return Err(Error::UnknownCatalogEntry(args.rows.join(",")));
    }
    let t = compare_rows(&entries);
    let code = if t.failures == 0 { 0 } else { 2 };
    output(&t, render::tables_text(&t), code)
}

fn cmd_flag_tower(args: &TowerArgs) -> Result<Output> {
    let t = flag_tower_with_unit(args.m, args.k, args.unit)?;
    let r = TowerReport::new(&t);
    output(&r, render::tower_text(&r), 0)
}

fn cmd_check() -> Result<Output> {
    let r = run_checks();
    let code = if r.failures == 0 { 0 } else { 2 };
    output(&r, render::check_text(&r), code)
}

#[derive(Serialize)]
struct CatalogListing {
    schema: String,
    entries: Vec<(String, String, Vec<u32>)>,
}

fn cmd_catalog() -> Result<Output> {
    let entries: Vec<(String, String, Vec<u32>)> = catalog_rows(&[])
        .into_iter()
        .map(|e| (e.id.clone(), e.name().to_string(), e.expected_vd.iter().copied().collect()))
        .collect();
    let text = entries
        .iter()
        .map(|(id, n, vd)| format!("{id:<14} {n:<20} {}\n", render::set(vd.iter().copied())))
        .collect();
    output(
        &CatalogListing {
            schema: "ratvis.catalog/v1".into(),
            entries,
        },
        text,
        0,
    )
}

/// Runs the front end on `args` (including the program name) and returns the exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Vd(s) => cmd_vd(s),
        Command::PiAut(s) => cmd_pi_aut(s),
        Command::HbsModel(a) => cmd_hbs_model(a),
        Command::Tables(a) => cmd_tables(a),
        Command::FlagTower(a) => cmd_flag_tower(a),
        Command::Check => cmd_check(),
        Command::Catalog => cmd_catalog(),
    };
    match result {
        Ok(o) => {
            let _ = match cli.format {
                Format::Text => write!(out, "{}", o.text),
                Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&o.json).unwrap_or_default()),
            };
            o.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
