//! Command-line front end. Every command prints a human-readable report, or
//! with `--json` a single JSON document (keys in a fixed order).
//!
//! Exit codes: 0 success, 2 hypothesis, consistency or verification
//! failure, 3 not found, 64 usage error.

use std::collections::BTreeSet;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::catalog::{self, CatalogError, ManifoldEntry, ReducedRank};
use crate::cobordism::{grading_shift, hs_bar_map, BarMap, CobordismData};
use crate::floer::{
    build_rank_one, build_s3, build_y4k1, verify_model, ContactClass, FlavorModel, FloerError, FloerModel, TowerName,
    TypeClass, VerifyReport,
};
use crate::graded::{Grading, Window};
use crate::lattice::{classify_even_indefinite, gram, invariants};
use crate::obstruct::{euler_bounds, theorem_contact, theorem_main, FillingConstraint, Scope};

pub const EXIT_OK: i32 = 0;
pub const EXIT_HYPOTHESIS: i32 = 2;
pub const EXIT_NOT_FOUND: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

pub const CATALOG_ENV: &str = "PIN2FILL_CATALOG";

#[derive(Debug, Parser)]
#[command(name = "pin2fill", version, about = "Pin(2)-monopole obstructions to indefinite Stein fillings")]
struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Constraints on indefinite fillings from (Type, h) or from a contact class.
    Obstruct(ObstructArgs),
    /// Built-in and user catalogs of manifolds.
    Catalog(CatalogArgs),
    /// Build a Floer model and verify its Gysin sequence.
    Gysin(GysinArgs),
    /// Map induced on the bar group by a cobordism.
    Cobmap(BettiArgs),
    /// Even unimodular lattice with the given Betti numbers.
    Lattice(BettiArgs),
}

#[derive(Debug, Args)]
struct ObstructArgs {
    /// Type of the reduced generator (with --h).
    #[arg(long = "type", value_parser = parse_type)]
    type_class: Option<TypeClass>,
    /// Frøyshov invariant, e.g. -1 or 1/2 (with --type).
    #[arg(long, allow_hyphen_values = true, value_parser = parse_rational)]
    h: Option<Grading>,
    /// Grading d(ξ) of the contact class (with --tower).
    #[arg(long, allow_hyphen_values = true, value_parser = parse_rational)]
    contact_d: Option<Grading>,
    /// Tower containing the image of the contact class (with --contact-d).
    #[arg(long, value_parser = parse_tower)]
    tower: Option<TowerName>,
    /// The contact class is not fixed by the involution.
    #[arg(long)]
    not_j_invariant: bool,
    /// Constant C in 3σ + 2χ ≥ C, for Euler characteristic bounds.
    #[arg(long = "C", allow_hyphen_values = true, value_parser = parse_rational)]
    c: Option<Grading>,
}

#[derive(Debug, Args)]
struct CatalogArgs {
    /// Catalog file to use alongside the built-in entries
    /// (default: $PIN2FILL_CATALOG).
    #[arg(long, global = true)]
    file: Option<PathBuf>,
    #[command(subcommand)]
    action: CatalogAction,
}

#[derive(Debug, Subcommand)]
enum CatalogAction {
    /// List all entries.
    List,
    /// Show one entry.
    Show {
        #[arg(allow_hyphen_values = true)]
        name: String,
    },
    /// Run one entry through the applicable constraint.
    Run {
        #[arg(allow_hyphen_values = true)]
        name: String,
    },
    /// Write the entries to a catalog file.
    Export { path: PathBuf },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModelKind {
    S3,
    RankOne,
    Y4k1,
}

#[derive(Debug, Args)]
struct GysinArgs {
    #[arg(long, value_enum)]
    model: ModelKind,
    #[arg(long = "type", value_parser = parse_type)]
    type_class: Option<TypeClass>,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_rational)]
    h: Option<Grading>,
    #[arg(long)]
    k: Option<i64>,
    /// Grading window LO:HI.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_window)]
    window: Window,
}

#[derive(Debug, Args)]
struct BettiArgs {
    #[arg(long)]
    b2plus: u32,
    #[arg(long)]
    b2minus: u32,
}

fn parse_rational(s: &str) -> Result<Grading, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn parse_type(s: &str) -> Result<TypeClass, String> {
    s.parse()
}

fn parse_tower(s: &str) -> Result<TowerName, String> {
    s.parse()
}

fn parse_window(s: &str) -> Result<Window, String> {
    let (lo, hi) = s.split_once(':').ok_or_else(|| format!("expected LO:HI, got {s:?}"))?;
    Window::with_default_guard(parse_rational(lo)?, parse_rational(hi)?).map_err(|e| e.to_string())
}

/// Outcome of a command: the JSON report, the text rendering, and the exit
/// code.
struct Outcome {
    code: i32,
    text: String,
    result: Option<Value>,
    error: Option<(&'static str, String)>,
}

impl Outcome {
    fn ok(text: String, result: Value) -> Self {
        Outcome { code: EXIT_OK, text, result: Some(result), error: None }
    }

    fn fail(code: i32, kind: &'static str, message: String) -> Self {
        Outcome { code, text: String::new(), result: None, error: Some((kind, message)) }
    }
}

fn usage(message: impl Into<String>) -> Outcome {
    Outcome::fail(EXIT_USAGE, "usage", message.into())
}

fn hypothesis(message: impl ToString) -> Outcome {
    Outcome::fail(EXIT_HYPOTHESIS, "hypothesis", message.to_string())
}

/// Parses `args` (including the program name), runs the command and writes
/// its report. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return EXIT_USAGE;
            }
            let _ = write!(out, "{}", e.render());
            return EXIT_OK;
        }
    };
    let (name, input, outcome) = match &cli.command {
        Command::Obstruct(a) => ("obstruct", obstruct_input(a), cmd_obstruct(a)),
        Command::Catalog(a) => ("catalog", catalog_input(a), cmd_catalog(a)),
        Command::Gysin(a) => ("gysin", gysin_input(a), cmd_gysin(a)),
        Command::Cobmap(a) => ("cobmap", betti_input(a), cmd_cobmap(a)),
        Command::Lattice(a) => ("lattice", betti_input(a), cmd_lattice(a)),
    };
    if cli.json {
        let report = json!({
            "command": name,
            "input": input,
            "result": outcome.result,
            "error": outcome.error.as_ref().map(|(kind, message)| json!({"kind": kind, "message": message})),
            "exit_code": outcome.code,
        });
        let _ = writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    } else {
        let _ = write!(out, "{}", outcome.text);
        if let Some((_, message)) = &outcome.error {
            let _ = writeln!(err, "error: {message}");
        }
    }
    outcome.code
}

// ---------------------------------------------------------------- obstruct

fn obstruct_input(a: &ObstructArgs) -> Value {
    json!({
        "type": a.type_class,
        "h": a.h,
        "contact_d": a.contact_d,
        "tower": a.tower,
        "j_invariant": !a.not_j_invariant,
        "C": a.c,
    })
}

fn cmd_obstruct(a: &ObstructArgs) -> Outcome {
    let rank = a.type_class.is_some() || a.h.is_some();
    let contact = a.contact_d.is_some() || a.tower.is_some();
    let verdict = match (rank, contact) {
        (true, true) => return usage("--type/--h and --contact-d/--tower are mutually exclusive"),
        (false, false) => return usage("give either --type and --h, or --contact-d and --tower"),
        (true, false) => match (a.type_class, a.h) {
            (Some(t), Some(h)) => {
                if a.not_j_invariant {
                    return usage("--not-j-invariant applies to --contact-d/--tower");
                }
                theorem_main(h, t).map(|fc| (format!("Type {t}, h = {h}"), fc))
            }
            _ => return usage("--type and --h must be given together"),
        },
        (false, true) => match (a.contact_d, a.tower) {
            (Some(d), Some(tower)) => {
                let c = ContactClass { d, tower: Some(tower), j_invariant: !a.not_j_invariant };
                let inv = if c.j_invariant { "fixed by the involution" } else { "not fixed by the involution" };
                theorem_contact(&c).map(|fc| (format!("contact class in grading {d}, {tower}-tower, {inv}"), fc))
            }
            _ => return usage("--contact-d and --tower must be given together"),
        },
    };
    match verdict {
        Ok((label, fc)) => verdict_outcome(&label, &fc, a.c),
        Err(e) => hypothesis(e),
    }
}

fn verdict_outcome(label: &str, fc: &FillingConstraint, c: Option<Grading>) -> Outcome {
    let mut text = format!("input: {label}\n");
    text += &render_verdict(fc);
    let euler = c.map(|c| euler_bounds(Some(fc), Some(c)));
    if let Some(b) = &euler {
        text += &format!("euler characteristic (C = {}):\n", c.expect("C given"));
        if let Some(chi) = b.chi_indefinite {
            text += &format!("  indefinite fillings: chi = {chi}\n");
        }
        if let Some(m) = b.chi_negdef_max {
            text += &format!("  negative definite fillings: chi <= {m}\n");
        }
        text += &format!("  finite: {}\n", yes_no(b.finite));
    }
    Outcome::ok(text, json!({ "verdict": fc, "lattice": lattice_json(fc), "euler": euler }))
}

fn lattice_json(fc: &FillingConstraint) -> Value {
    match (fc.lattice, lattice_obstruction(fc)) {
        (Some(l), _) => json!({"form": l, "name": l.to_string()}),
        (None, Some(why)) => json!({"form": null, "reason": why}),
        (None, None) => Value::Null,
    }
}

fn lattice_obstruction(fc: &FillingConstraint) -> Option<String> {
    let (p, m) = (fc.b2plus?, fc.b2minus?);
    classify_even_indefinite(p, m).err().map(|e| e.to_string())
}

fn render_verdict(fc: &FillingConstraint) -> String {
    match fc.scope {
        Scope::NegativeDefiniteOnly => {
            let why = match fc.reason {
                Some(crate::obstruct::Reason::AlphaTower) => "the contact class lies in the alpha-tower",
                _ => "no indefinite form has the forced Betti numbers",
            };
            format!("verdict: negative-definite-only ({why})\n")
        }
        Scope::IndefiniteFilling => {
            let mut s = String::from("verdict: indefinite-filling\n");
            s += &format!("  even: {}\n", yes_no(fc.even));
            s += &format!(
                "  b2+ = {}, b2- = {}\n",
                fc.b2plus.expect("indefinite verdicts carry Betti numbers"),
                fc.b2minus.expect("indefinite verdicts carry Betti numbers")
            );
            match (fc.lattice, lattice_obstruction(fc)) {
                (Some(l), _) => s += &format!("  intersection form: {l}\n"),
                (None, Some(why)) => s += &format!("  intersection form: not classified ({why})\n"),
                (None, None) => {}
            }
            s
        }
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

// ---------------------------------------------------------------- catalog

fn catalog_input(a: &CatalogArgs) -> Value {
    let (action, name) = match &a.action {
        CatalogAction::List => ("list", None),
        CatalogAction::Show { name } => ("show", Some(name.clone())),
        CatalogAction::Run { name } => ("run", Some(name.clone())),
        CatalogAction::Export { path } => ("export", Some(path.display().to_string())),
    };
    json!({ "action": action, "name": name, "file": a.file.as_ref().map(|p| p.display().to_string()) })
}

/// User entries first, then built-ins not shadowed by name.
fn catalog_entries(file: Option<&Path>) -> Result<Vec<ManifoldEntry>, Outcome> {
    let env_path = std::env::var_os(CATALOG_ENV).filter(|v| !v.is_empty()).map(PathBuf::from);
    let path = file.map(Path::to_path_buf).or(env_path);
    let mut entries = match &path {
        None => Vec::new(),
        Some(p) => catalog::load(p).map_err(|e| match e {
            CatalogError::Io { .. } => Outcome::fail(EXIT_NOT_FOUND, "not-found", e.to_string()),
            _ => Outcome::fail(EXIT_HYPOTHESIS, "catalog", e.to_string()),
        })?,
    };
    for b in catalog::builtin() {
        if catalog::find(&entries, &b.name).is_none() {
            entries.push(b);
        }
    }
    Ok(entries)
}

fn cmd_catalog(a: &CatalogArgs) -> Outcome {
    let entries = match catalog_entries(a.file.as_deref()) {
        Ok(e) => e,
        Err(o) => return o,
    };
    let lookup = |name: &str| {
        catalog::find(&entries, name)
            .cloned()
            .ok_or_else(|| Outcome::fail(EXIT_NOT_FOUND, "not-found", format!("no catalog entry named {name:?}")))
    };
    match &a.action {
        CatalogAction::List => {
            let mut text = format!("{:<18} {:>6}  {:>7}  {:<4}  {}\n", "name", "h", "rank", "type", "contact");
            for e in &entries {
                text += &format!(
                    "{:<18} {:>6}  {:>7}  {:<4}  {}\n",
                    e.name,
                    e.h.to_string(),
                    rank_text(e.reduced_rank),
                    e.type_class.map_or("-".to_string(), |t| t.to_string()),
                    e.contact.as_ref().map_or("-".to_string(), contact_text),
                );
            }
            Outcome::ok(text, json!({ "entries": entries }))
        }
        CatalogAction::Show { name } => match lookup(name) {
            Ok(e) => Outcome::ok(render_entry(&e), json!({ "entry": e })),
            Err(o) => o,
        },
        CatalogAction::Run { name } => {
            let e = match lookup(name) {
                Ok(e) => e,
                Err(o) => return o,
            };
            match e.obstruction() {
                Ok(fc) => {
                    let mut text = render_entry(&e);
                    text += &render_verdict(&fc);
                    Outcome::ok(text, json!({ "entry": e, "verdict": fc, "lattice": lattice_json(&fc) }))
                }
                Err(err) => hypothesis(err),
            }
        }
        CatalogAction::Export { path } => match catalog::save(&entries, path) {
            Ok(()) => Outcome::ok(
                format!("wrote {} entries to {}\n", entries.len(), path.display()),
                json!({ "written": entries.len() }),
            ),
            Err(e) => hypothesis(e),
        },
    }
}

fn rank_text(r: ReducedRank) -> String {
    match r {
        ReducedRank::Known(n) => n.to_string(),
        ReducedRank::Unknown => "unknown".into(),
    }
}

fn contact_text(c: &ContactClass) -> String {
    let tower = c.tower.map_or("no tower".to_string(), |t| format!("{t}-tower"));
    let inv = if c.j_invariant { ", j-invariant" } else { "" };
    format!("d = {}, {tower}{inv}", c.d)
}

fn render_entry(e: &ManifoldEntry) -> String {
    let mut s = format!("name: {}\nh: {}\nreduced rank: {}\n", e.name, e.h, rank_text(e.reduced_rank));
    if let Some(t) = e.type_class {
        s += &format!("type: {t}\n");
    }
    if let Some(c) = &e.contact {
        s += &format!("contact class: {}\n", contact_text(c));
    }
    if !e.notes.is_empty() {
        s += &format!("notes: {}\n", e.notes);
    }
    s
}

// ---------------------------------------------------------------- gysin

fn gysin_input(a: &GysinArgs) -> Value {
    json!({
        "model": match a.model {
            ModelKind::S3 => "s3",
            ModelKind::RankOne => "rank-one",
            ModelKind::Y4k1 => "y4k1",
        },
        "type": a.type_class,
        "h": a.h,
        "k": a.k,
        "window": {"lo": a.window.lo(), "hi": a.window.hi(), "guard": a.window.guard()},
    })
}

fn build_model(a: &GysinArgs) -> Result<FloerModel, Outcome> {
    let built = match a.model {
        ModelKind::S3 => {
            if a.type_class.is_some() || a.h.is_some() || a.k.is_some() {
                return Err(usage("--model s3 takes no --type, --h or --k"));
            }
            build_s3(a.window)
        }
        ModelKind::RankOne => match (a.type_class, a.h, a.k) {
            (Some(t), Some(h), None) => build_rank_one(h, t, a.window),
            _ => return Err(usage("--model rank-one needs --type and --h (and no --k)")),
        },
        ModelKind::Y4k1 => match (a.type_class, a.h, a.k) {
            (None, None, Some(k)) => build_y4k1(k, a.window),
            _ => return Err(usage("--model y4k1 needs --k (and no --type or --h)")),
        },
    };
    built.map_err(|e| match e {
        FloerError::WindowTooNarrow { .. } | FloerError::NonPositiveK(_) => usage(e.to_string()),
        _ => hypothesis(e),
    })
}

#[derive(Serialize)]
struct TableRow {
    grading: Grading,
    hs: usize,
    /// HS split by Q-column, when the model records columns.
    hs_columns: Option<[usize; 3]>,
    hm: usize,
    bar: usize,
    checked: bool,
    exact: Option<bool>,
    r_action: Option<bool>,
    q_columns: Option<bool>,
    bar_injective: Option<bool>,
}

fn table(m: &FlavorModel, report: &crate::floer::FlavorReport) -> Vec<TableRow> {
    let gradings: BTreeSet<Grading> = m.hs.support().chain(m.hm.support()).chain(m.bar.space.support()).collect();
    gradings
        .into_iter()
        .rev()
        .map(|g| {
            let row = report.rows.iter().find(|r| r.grading == g);
            let hs_columns = (!m.column_of.is_empty()).then(|| {
                let mut c = [0; 3];
                for (e, col) in m.column_of.range(
                    crate::floer::BasisElt { grading: g, index: 0 }..=crate::floer::BasisElt { grading: g, index: usize::MAX },
                ) {
                    debug_assert_eq!(e.grading, g);
                    c[*col as usize] += 1;
                }
                c
            });
            TableRow {
                grading: g,
                hs: m.hs.dim_at(g),
                hs_columns,
                hm: m.hm.dim_at(g),
                bar: m.bar.space.dim_at(g),
                checked: row.is_some(),
                exact: row.map(|r| r.exact()),
                r_action: row.map(|r| r.r_action),
                q_columns: row.and_then(|r| r.q_columns),
                bar_injective: row.and_then(|r| r.bar_injective),
            }
        })
        .collect()
}

fn cell(v: Option<bool>) -> &'static str {
    match v {
        None => "-",
        Some(true) => "ok",
        Some(false) => "FAIL",
    }
}

fn dim_cell(d: usize) -> String {
    if d == 0 {
        ".".into()
    } else {
        d.to_string()
    }
}

fn render_table(rows: &[TableRow]) -> String {
    let mut s = format!(
        "  {:>7}  {:>3}  {:>8}  {:>3}  {:>3}  {:>5}  {:>5}  {:>5}  {:>5}\n",
        "grading", "HS", "columns", "HM", "bar", "exact", "R", "Qcol", "p*"
    );
    for r in rows {
        let cols = r.hs_columns.map_or("".to_string(), |c| {
            c.iter().map(|d| dim_cell(*d)).collect::<Vec<_>>().join(" ")
        });
        s += &format!(
            "  {:>7}  {:>3}  {:>8}  {:>3}  {:>3}  {:>5}  {:>5}  {:>5}  {:>5}\n",
            r.grading.to_string(),
            dim_cell(r.hs),
            cols,
            dim_cell(r.hm),
            dim_cell(r.bar),
            cell(r.exact),
            cell(r.r_action),
            cell(r.q_columns),
            cell(r.bar_injective),
        );
    }
    s
}

fn cmd_gysin(a: &GysinArgs) -> Outcome {
    let model = match build_model(a) {
        Ok(m) => m,
        Err(o) => return o,
    };
    let report: VerifyReport = verify_model(&model);
    let mut text = format!("model: {}\nwindow: {} (checked strictly inside the guard band)\n", model.name, a.window);
    let mut flavors = Vec::new();
    for fr in &report.flavors {
        let m = model.flavor(fr.flavor).expect("reported flavors exist");
        let rows = table(m, fr);
        text += &format!("\nflavor: {}\n", fr.flavor);
        text += &render_table(&rows);
        if let Some(b) = fr.reduced_in_image_of_iota {
            text += &format!("  reduced generator in the image of iota: {}\n", yes_no(b));
        }
        flavors.push(json!({
            "flavor": fr.flavor,
            "rows": rows,
            "reduced_in_image_of_iota": fr.reduced_in_image_of_iota,
        }));
    }
    let failures = report.failures();
    let all_pass = report.all_pass();
    text += &format!("\nresult: {}\n", if all_pass { "all checks pass" } else { "some checks FAIL" });
    let result = json!({
        "model": model.name,
        "flavors": flavors,
        "failures": failures.iter().map(|(f, g, k)| json!({"flavor": f, "grading": g, "check": k})).collect::<Vec<_>>(),
        "all_pass": all_pass,
    });
    if all_pass {
        Outcome::ok(text, result)
    } else {
        Outcome {
            code: EXIT_HYPOTHESIS,
            text,
            result: Some(result),
            error: Some(("verification", format!("{} check(s) failed", failures.len()))),
        }
    }
}

// ---------------------------------------------------------------- cobmap / lattice

fn betti_input(a: &BettiArgs) -> Value {
    json!({ "b2plus": a.b2plus, "b2minus": a.b2minus })
}

fn cmd_cobmap(a: &BettiArgs) -> Outcome {
    let c = CobordismData::new(a.b2plus, a.b2minus);
    let map = hs_bar_map(c);
    let shift = grading_shift(c);
    let text = match map {
        BarMap::Zero => format!("map: zero\ngrading shift: {shift}\n"),
        BarMap::Mono { qpow, degree } => {
            let q = match qpow {
                0 => "V^k (an isomorphism)".to_string(),
                1 => "Q V^k".to_string(),
                _ => format!("Q^{qpow} V^k"),
            };
            format!("map: multiplication by {q}\ndegree: {degree}\n")
        }
    };
    Outcome::ok(text, json!({ "map": map, "grading_shift": shift }))
}

fn cmd_lattice(a: &BettiArgs) -> Outcome {
    match classify_even_indefinite(a.b2plus, a.b2minus) {
        Ok(form) => {
            let inv = invariants(&gram(form)).expect("assembled Gram matrices are symmetric");
            let text = format!(
                "form: {form}\nrank: {}\nsignature: {}\neven: {}\ndeterminant: {}\n",
                inv.rank,
                inv.signature,
                yes_no(inv.even),
                inv.det
            );
            Outcome::ok(text, json!({ "form": form, "name": form.to_string(), "invariants": inv }))
        }
        Err(e) => hypothesis(e),
    }
}
