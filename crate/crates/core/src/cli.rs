//! Command-line front end. All reports go to the given writer and are
//! byte-identical across runs for identical inputs; exit codes are 0 for
//! success or PASS, 1 for a verification FAIL, 2 for input errors.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::error::ErrorKind;
use clap::{ArgGroup, Parser, Subcommand};
use serde_json::json;

use crate::bisection::bisection_group;
use crate::caps::Caps;
use crate::comorphism::{factorize, Comorphism};
use crate::error::{Error, Result};
use crate::functor::enumerate_functors;
use crate::groupoid::FiniteGroupoid;
use crate::inner::{verify_partial, verify_prop1, verify_theorem1};
use crate::io::{
    load_comorphism, load_groupoid, parse_bis, serialize_bis, serialize_comor, serialize_grpd,
};
use crate::pseudogroup::{pbis_materialize, PartialBisection};

/// Materialization bound for explicit group/monoid tables.
const TABLE_CAP: usize = 10_000;

#[derive(Parser)]
#[command(
    name = "grpdco",
    version,
    about = "Finite groupoids, comorphisms, bisections and pseudogroups"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Caps as 1-4 comma-separated positive integers:
    /// objects,morphisms,universe-groupoids,universe-arrows
    #[arg(long, global = true, value_name = "LIST")]
    caps: Option<String>,
    /// Emit machine-readable JSON instead of plain text
    #[arg(long, global = true)]
    json: bool,
    /// Fixes the internal enumeration order from a seed; counts and reports
    /// do not depend on it
    #[arg(long, global = true, value_name = "SEED")]
    seed_order: Option<u64>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse and validate a .grpd or .comor file
    Validate { file: PathBuf },
    /// Order and multiplication table of the bisection group
    Bisections { file: PathBuf },
    /// Order, atoms and optional tables of the partial-bisection monoid
    Pbis {
        file: PathBuf,
        /// Also print the multiplication and star tables
        #[arg(long)]
        table: bool,
    },
    /// Compose two comorphism files (second applied after first)
    Compose { second: PathBuf, first: PathBuf },
    /// Split a comorphism into an opfibration leg and a
    /// bijective-on-objects leg
    Factorize { file: PathBuf },
    /// Push a bisection forward along a comorphism
    Pushforward { comor: PathBuf, bis: PathBuf },
    /// Enumerate all functors or comorphisms between two groupoids
    Enumerate {
        #[arg(value_parser = ["functors", "comorphisms"])]
        kind: String,
        dom: PathBuf,
        cod: PathBuf,
    },
    /// Run a desk-scale verification over the closed universe of a groupoid
    #[command(group(
        ArgGroup::new("mode").required(true).args(["theorem1", "prop1", "partial"])
    ))]
    Verify {
        file: PathBuf,
        /// Natural automorphism families over comorphisms vs bisections
        #[arg(long)]
        theorem1: bool,
        /// Natural automorphism families over homomorphisms (identity only)
        #[arg(long)]
        prop1: bool,
        /// Natural partial-automorphism families vs partial bisections
        #[arg(long)]
        partial: bool,
    },
}

fn parse_caps(list: &Option<String>) -> Result<Caps> {
    let mut caps = Caps::default();
    let Some(list) = list else { return Ok(caps) };
    let parts: Vec<&str> = list.split(',').collect();
    if parts.is_empty() || parts.len() > 4 {
        return Err(Error::Precondition(
            "--caps takes 1 to 4 comma-separated values".into(),
        ));
    }
    let mut values = Vec::new();
    for p in &parts {
        let v: usize = p
            .trim()
            .parse()
            .map_err(|_| Error::Precondition(format!("--caps: `{p}` is not an integer")))?;
        if v == 0 {
            return Err(Error::Precondition("--caps: caps must be positive".into()));
        }
        values.push(v);
    }
    let slots = [
        &mut caps.max_objects,
        &mut caps.max_morphisms,
        &mut caps.max_universe_groupoids,
        &mut caps.max_universe_arrows,
    ];
    for (slot, v) in slots.into_iter().zip(values) {
        *slot = v;
    }
    Ok(caps)
}

/// Entry point used by the binary: arguments from the environment, report to
/// stdout.
pub fn main_entry() -> i32 {
    let mut stdout = std::io::stdout();
    run(std::env::args(), &mut stdout)
}

/// Parses `args` and executes; everything is written to `out`.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = write!(out, "{}", e.render());
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            if cli.json {
                let _ = writeln!(out, "{}", json!({ "error": e.to_string() }));
            } else {
                let _ = writeln!(out, "error: {e}");
            }
            2
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let caps = parse_caps(&cli.caps)?;
    match &cli.cmd {
        Cmd::Validate { file } => cmd_validate(file, &caps, cli.json, out),
        Cmd::Bisections { file } => cmd_bisections(file, &caps, cli.json, out),
        Cmd::Pbis { file, table } => cmd_pbis(file, &caps, *table, cli.json, out),
        Cmd::Compose { second, first } => cmd_compose(second, first, cli.json, out),
        Cmd::Factorize { file } => cmd_factorize(file, cli.json, out),
        Cmd::Pushforward { comor, bis } => cmd_pushforward(comor, bis, cli.json, out),
        Cmd::Enumerate { kind, dom, cod } => cmd_enumerate(kind, dom, cod, &caps, cli.json, out),
        Cmd::Verify {
            file,
            theorem1,
            prop1,
            partial,
        } => cmd_verify(
            file,
            (*theorem1, *prop1, *partial),
            &caps,
            cli.seed_order,
            cli.json,
            out,
        ),
    }
}

fn first_keyword(path: &Path) -> Result<String> {
    let text = std::fs::read_to_string(path)?;
    for line in text.lines() {
        let body = line.split('#').next().unwrap_or("");
        if let Some(tok) = body.split_whitespace().next() {
            return Ok(tok.to_string());
        }
    }
    Ok(String::new())
}

fn cmd_validate(file: &Path, caps: &Caps, json: bool, out: &mut dyn Write) -> Result<i32> {
    match first_keyword(file)?.as_str() {
        "grpd" => {
            let g = load_groupoid(file)?;
            caps.check_groupoid(&g)?;
            if json {
                writeln!(
                    out,
                    "{}",
                    json!({
                        "ok": true,
                        "format": "grpd",
                        "objects": g.n_objects(),
                        "morphisms": g.n_morphisms(),
                    })
                )?;
            } else {
                writeln!(
                    out,
                    "OK grpd: {} objects, {} morphisms",
                    g.n_objects(),
                    g.n_morphisms()
                )?;
            }
        }
        "comor" => {
            let c = load_comorphism(file)?;
            caps.check_groupoid(c.dom())?;
            caps.check_groupoid(c.cod())?;
            if json {
                writeln!(
                    out,
                    "{}",
                    json!({
                        "ok": true,
                        "format": "comor",
                        "dom_objects": c.dom().n_objects(),
                        "cod_objects": c.cod().n_objects(),
                    })
                )?;
            } else {
                writeln!(
                    out,
                    "OK comor: {} objects backwards to {}, lifts total",
                    c.cod().n_objects(),
                    c.dom().n_objects()
                )?;
            }
        }
        other => {
            return Err(Error::Precondition(format!(
                "unrecognized format `{other}` (expected grpd or comor header)"
            )));
        }
    }
    Ok(0)
}

fn cmd_bisections(file: &Path, caps: &Caps, json: bool, out: &mut dyn Write) -> Result<i32> {
    let g = load_groupoid(file)?;
    let bg = bisection_group(&g, caps, TABLE_CAP)?;
    let n = bg.elements.len();
    if json {
        let table: Vec<Vec<usize>> = (0..n)
            .map(|b| (0..n).map(|a| bg.table.mul(b, a)).collect())
            .collect();
        let elements: Vec<&[usize]> = bg.elements.iter().map(|b| b.components()).collect();
        writeln!(
            out,
            "{}",
            json!({ "order": n, "elements": elements, "table": table })
        )?;
    } else {
        writeln!(out, "bisections {n}")?;
        for (i, b) in bg.elements.iter().enumerate() {
            let comps: Vec<String> = b.components().iter().map(|m| m.to_string()).collect();
            writeln!(out, "element {} c {}", i, comps.join(" "))?;
        }
        writeln!(out, "table")?;
        for b in 0..n {
            let row: Vec<String> = (0..n).map(|a| bg.table.mul(b, a).to_string()).collect();
            writeln!(out, "{}", row.join(" "))?;
        }
    }
    Ok(0)
}

fn pbis_component_tokens(p: &PartialBisection) -> Vec<String> {
    p.components()
        .iter()
        .map(|c| match c {
            Some(m) => m.to_string(),
            None => "-".to_string(),
        })
        .collect()
}

fn cmd_pbis(file: &Path, caps: &Caps, table: bool, json: bool, out: &mut dyn Write) -> Result<i32> {
    let g = load_groupoid(file)?;
    let pb = pbis_materialize(&g, caps, TABLE_CAP)?;
    let n = pb.view.n;
    // atoms of the idempotent lattice: the identity singletons, one per object
    let atoms: Vec<(usize, usize)> = g
        .objects()
        .map(|u| {
            let idx = pb
                .index_of(&PartialBisection::singleton(&g, g.identity(u)))
                .expect("identity singleton enumerated");
            (u, idx)
        })
        .collect();
    if json {
        let mut o = json!({
            "order": n,
            "complete_atomic": pb.view.is_complete_atomic(),
            "atoms": atoms.iter().map(|&(u, idx)| json!({"object": u, "element": idx})).collect::<Vec<_>>(),
        });
        if table {
            let rows: Vec<Vec<usize>> = (0..n)
                .map(|b| (0..n).map(|a| pb.view.mul(b, a)).collect())
                .collect();
            o["unit"] = json!(pb.view.unit);
            o["star"] = json!(pb.view.star);
            o["table"] = json!(rows);
            o["elements"] = json!(pb
                .elements
                .iter()
                .map(pbis_component_tokens)
                .collect::<Vec<_>>());
        }
        writeln!(out, "{o}")?;
    } else {
        writeln!(out, "partial bisections {n}")?;
        writeln!(
            out,
            "complete atomic {}",
            if pb.view.is_complete_atomic() { "yes" } else { "no" }
        )?;
        writeln!(out, "atoms {}", atoms.len())?;
        for (u, idx) in &atoms {
            writeln!(out, "atom object {u} element {idx}")?;
        }
        if table {
            for (i, p) in pb.elements.iter().enumerate() {
                writeln!(out, "element {} {}", i, pbis_component_tokens(p).join(" "))?;
            }
            writeln!(out, "unit {}", pb.view.unit)?;
            let star: Vec<String> = pb.view.star.iter().map(|s| s.to_string()).collect();
            writeln!(out, "star {}", star.join(" "))?;
            writeln!(out, "table")?;
            for b in 0..n {
                let row: Vec<String> = (0..n).map(|a| pb.view.mul(b, a).to_string()).collect();
                writeln!(out, "{}", row.join(" "))?;
            }
        }
    }
    Ok(0)
}

fn cmd_compose(second: &Path, first: &Path, json: bool, out: &mut dyn Write) -> Result<i32> {
    let g = load_comorphism(second)?;
    let f = load_comorphism(first)?;
    let composed = Comorphism::compose(&g, &f)?;
    if json {
        writeln!(out, "{}", json!({ "comor": serialize_comor(&composed) }))?;
    } else {
        write!(out, "{}", serialize_comor(&composed))?;
    }
    Ok(0)
}

fn cmd_factorize(file: &Path, json: bool, out: &mut dyn Write) -> Result<i32> {
    let f = load_comorphism(file)?;
    let fac = factorize(&f);
    let recomposes = fac.recompose()? == f;
    if json {
        writeln!(
            out,
            "{}",
            json!({
                "mid": serialize_grpd(&fac.mid),
                "left_object_map": fac.left.object_map(),
                "left_morphism_map": fac.left.morphism_map(),
                "right_object_map": fac.right.object_map(),
                "right_morphism_map": fac.right.morphism_map(),
                "recomposes": recomposes,
            })
        )?;
    } else {
        writeln!(out, "mid inline")?;
        write!(out, "{}", serialize_grpd(&fac.mid))?;
        writeln!(out, "end")?;
        for u in fac.mid.objects() {
            writeln!(out, "left ob {} {}", u, fac.left.apply_ob(u))?;
        }
        for m in fac.mid.morphisms() {
            writeln!(out, "left mor {} {}", m, fac.left.apply_mor(m))?;
        }
        for u in fac.mid.objects() {
            writeln!(out, "right ob {} {}", u, fac.right.apply_ob(u))?;
        }
        for m in fac.mid.morphisms() {
            writeln!(out, "right mor {} {}", m, fac.right.apply_mor(m))?;
        }
        writeln!(out, "recomposes {}", if recomposes { "yes" } else { "no" })?;
    }
    Ok(0)
}

fn cmd_pushforward(comor: &Path, bis: &Path, json: bool, out: &mut dyn Write) -> Result<i32> {
    let f = load_comorphism(comor)?;
    let text = std::fs::read_to_string(bis)?;
    let alpha = parse_bis(&text, f.dom())?;
    let pushed = crate::bisection::pushforward(&f, &alpha)?;
    if json {
        writeln!(out, "{}", json!({ "bis": serialize_bis(&pushed) }))?;
    } else {
        write!(out, "{}", serialize_bis(&pushed))?;
    }
    Ok(0)
}

fn cmd_enumerate(
    kind: &str,
    dom: &Path,
    cod: &Path,
    caps: &Caps,
    json: bool,
    out: &mut dyn Write,
) -> Result<i32> {
    let g = load_groupoid(dom)?;
    let h = load_groupoid(cod)?;
    match kind {
        "functors" => {
            let fs = enumerate_functors(&g, &h, caps)?;
            if json {
                let items: Vec<_> = fs
                    .iter()
                    .map(|f| json!({"ob": f.object_map(), "mor": f.morphism_map()}))
                    .collect();
                writeln!(out, "{}", json!({ "count": fs.len(), "functors": items }))?;
            } else {
                writeln!(out, "count {}", fs.len())?;
                for (i, f) in fs.iter().enumerate() {
                    let ob: Vec<String> = f.object_map().iter().map(|x| x.to_string()).collect();
                    let mor: Vec<String> =
                        f.morphism_map().iter().map(|x| x.to_string()).collect();
                    writeln!(out, "functor {} ob {} mor {}", i, ob.join(" "), mor.join(" "))?;
                }
            }
        }
        "comorphisms" => {
            let cs = crate::comorphism::enumerate_comorphisms(&g, &h, caps)?;
            if json {
                let items: Vec<_> = cs
                    .iter()
                    .map(|c| json!({"ob": c.object_map(), "lifts": c.lift_table()}))
                    .collect();
                writeln!(out, "{}", json!({ "count": cs.len(), "comorphisms": items }))?;
            } else {
                writeln!(out, "count {}", cs.len())?;
                for (i, c) in cs.iter().enumerate() {
                    let ob: Vec<String> = c.object_map().iter().map(|x| x.to_string()).collect();
                    let lifts: Vec<String> = c
                        .cod()
                        .objects()
                        .flat_map(|u| {
                            c.dom()
                                .mors_from(c.apply_ob(u))
                                .iter()
                                .map(move |&a| format!("{}:{}->{}", u, a, c.lift(u, a)))
                                .collect::<Vec<_>>()
                        })
                        .collect();
                    writeln!(
                        out,
                        "comorphism {} ob {} lift {}",
                        i,
                        ob.join(" "),
                        lifts.join(" ")
                    )?;
                }
            }
        }
        other => {
            return Err(Error::Precondition(format!(
                "unknown enumeration kind `{other}`"
            )));
        }
    }
    Ok(0)
}

fn cmd_verify(
    file: &Path,
    (theorem1, prop1, partial): (bool, bool, bool),
    caps: &Caps,
    seed: Option<u64>,
    json: bool,
    out: &mut dyn Write,
) -> Result<i32> {
    let g: Arc<FiniteGroupoid> = load_groupoid(file)?;
    let yn = |b: bool| if b { "ok" } else { "MISMATCH" };
    let pass = if theorem1 {
        let r = verify_theorem1(&g, caps, seed)?;
        if json {
            writeln!(out, "{}", serde_json::to_string(&r).expect("serializable"))?;
        } else {
            writeln!(
                out,
                "universe: groupoids={} arrows={} out={} complete={}",
                r.universe.groupoids,
                r.universe.arrows,
                r.universe.arrows_out_of_base,
                r.universe.complete
            )?;
            writeln!(out, "bisections: {}", r.bisections)?;
            writeln!(out, "families: {}", r.families)?;
            for (i, comps) in r.family_components.iter().enumerate() {
                let c: Vec<String> = comps.iter().map(|m| m.to_string()).collect();
                writeln!(out, "family {} bisection c {}", i, c.join(" "))?;
            }
            writeln!(out, "extraction round-trip: {}", yn(r.extraction_round_trip))?;
            writeln!(out, "group isomorphism: {}", yn(r.group_isomorphic))?;
            writeln!(out, "{}", if r.pass { "PASS" } else { "FAIL" })?;
        }
        r.pass
    } else if prop1 {
        let r = verify_prop1(&g, caps, seed)?;
        if json {
            writeln!(out, "{}", serde_json::to_string(&r).expect("serializable"))?;
        } else {
            writeln!(
                out,
                "universe: groupoids={} arrows={} out={} complete={}",
                r.universe.groupoids,
                r.universe.arrows,
                r.universe.arrows_out_of_base,
                r.universe.complete
            )?;
            writeln!(out, "families: {}", r.families)?;
            writeln!(out, "identity only: {}", yn(r.identity_only))?;
            writeln!(out, "{}", if r.pass { "PASS" } else { "FAIL" })?;
        }
        r.pass
    } else {
        debug_assert!(partial);
        let r = verify_partial(&g, caps, seed)?;
        if json {
            writeln!(out, "{}", serde_json::to_string(&r).expect("serializable"))?;
        } else {
            writeln!(
                out,
                "universe: groupoids={} arrows={} out={} complete={}",
                r.universe.groupoids,
                r.universe.arrows,
                r.universe.arrows_out_of_base,
                r.universe.complete
            )?;
            writeln!(out, "partial bisections: {}", r.partial_bisections)?;
            writeln!(out, "families: {}", r.families)?;
            writeln!(out, "extraction round-trip: {}", yn(r.extraction_round_trip))?;
            writeln!(out, "monoid isomorphism: {}", yn(r.monoid_isomorphic))?;
            writeln!(out, "{}", if r.pass { "PASS" } else { "FAIL" })?;
        }
        r.pass
    };
    Ok(if pass { 0 } else { 1 })
}

/// Convenience wrapper used by tests: captures the report as a string.
pub fn run_capture<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let mut buf = Vec::new();
    let code = run(args, &mut buf);
    (code, String::from_utf8(buf).expect("reports are utf-8"))
}
