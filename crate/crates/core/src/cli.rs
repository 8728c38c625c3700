//! The `nilcover` command line.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::cover::{cover_report, CoverReport};
use crate::error::{Error, Result};
use crate::induction::{induce_steps, is_birationally_rigid_orbit, namikawa_orbit, rigid_levi_orbit, InductionStep, LeviShape, NamikawaReport, RigidLevi};
use crate::oracle::{run_suite, ConsistencyReport};
use crate::orbit::{enumerate_orbits, Orbit};
use crate::partition::{Algebra, Partition, Series, SingularData};

pub const SCHEMA_VERSION: &str = "1";

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_CONSISTENCY: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "nilcover", version, about = "Codimension-2 singularities of nilpotent orbit closures and their universal covers in so_N and sp_N")]
struct Cli {
    #[command(flatten)]
    output: OutputFlags,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct OutputFlags {
    /// Print one JSON envelope instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Draw Young diagrams as rows of `#`.
    #[arg(long, global = true)]
    diagram: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Invariants of one orbit.
    Orbit { algebra: String, partition: String },
    /// Codimension-2 children with closure and cover singularities.
    Degenerations { algebra: String, partition: String },
    /// Induce an orbit of the residual algebra through gl blocks.
    Induce {
        /// Target algebra.
        algebra: String,
        /// Source partition in the residual algebra ("" or 0 for the empty one).
        partition: String,
        /// Comma-separated gl block sizes, applied in order.
        #[arg(long, default_value = "")]
        blocks: String,
    },
    /// All orbits of an algebra, largest first.
    Enumerate { algebra: String },
    /// Run the brute-force consistency suite.
    Check {
        /// `so` or `sp`.
        series: String,
        /// Largest size to check (default 13 for so, 12 for sp).
        max_size: Option<usize>,
        #[arg(long, conflicts_with = "max_size")]
        bound: Option<usize>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Envelope<T> {
    pub schema_version: String,
    pub command: String,
    pub result: T,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitReport {
    pub orbit: Orbit,
    pub valid: bool,
    pub dim: usize,
    pub pi1_exponent: u32,
    pub pi1_order: u64,
    pub h2_orbit: usize,
    pub h2_universal_cover: usize,
    pub h2_universal_cover_derived: bool,
    pub special_at: Option<usize>,
    pub singular_set: Vec<SingularData>,
    pub rigid_levi: RigidLevi,
    pub rigid_levi_notation: String,
    pub birationally_rigid: bool,
    pub namikawa: NamikawaReport,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagram: Option<String>,
}

impl OrbitReport {
    pub fn new(o: &Orbit, diagram: bool) -> Self {
        let pi1 = o.pi1();
        let rigid_levi = rigid_levi_orbit(o);
        OrbitReport {
            orbit: o.clone(),
            valid: true,
            dim: o.dim(),
            pi1_exponent: pi1.exponent,
            pi1_order: pi1.order(),
            h2_orbit: o.h2(),
            h2_universal_cover: o.h2_universal_cover(),
            h2_universal_cover_derived: true,
            special_at: o.partition.special_index(o.algebra),
            singular_set: o.partition.singular_set(),
            rigid_levi_notation: rigid_levi.levi.to_string(),
            rigid_levi,
            birationally_rigid: is_birationally_rigid_orbit(o),
            namikawa: namikawa_orbit(o),
            diagram: diagram.then(|| o.partition.diagram()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InduceReport {
    pub target: Algebra,
    pub levi: LeviShape,
    pub source: Partition,
    pub blocks: Vec<usize>,
    pub steps: Vec<InductionStep>,
    pub result: Partition,
    pub birational: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerateEntry {
    pub partition: Partition,
    pub very_even: bool,
    pub dim: usize,
    pub pi1_exponent: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagram: Option<String>,
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::OddSymplectic(_) => EXIT_PARSE,
        _ => EXIT_DOMAIN,
    }
}

fn algebra_warnings(g: Algebra) -> Vec<String> {
    if g.is_simple() {
        Vec::new()
    } else {
        vec![format!("{g} is not simple (so4 = sl2 × sl2); results are computed combinatorially")]
    }
}

fn parse_orbit(algebra: &str, partition: &str) -> Result<Orbit> {
    let g: Algebra = algebra.parse()?;
    Orbit::new(g, partition.parse()?)
}

fn parse_blocks(s: &str) -> Result<Vec<usize>> {
    let t = s.trim();
    if t.is_empty() {
        return Ok(Vec::new());
    }
    t.split(',')
        .map(|b| match b.trim().parse::<usize>() {
            Ok(v) if v > 0 => Ok(v),
            _ => Err(Error::Parse {
                what: "blocks",
                input: s.to_string(),
                reason: format!("{:?} is not a positive integer", b.trim()),
            }),
        })
        .collect()
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

struct Output {
    json: String,
    text: String,
    warnings: Vec<String>,
    code: i32,
}

fn output<T: Serialize>(command: &'static str, result: T, text: String, warnings: Vec<String>) -> Output {
    let envelope = Envelope {
        schema_version: SCHEMA_VERSION.to_string(),
        command: command.to_string(),
        result,
        warnings: warnings.clone(),
    };
    Output {
        json: serde_json::to_string_pretty(&envelope).expect("reports serialize"),
        text,
        warnings,
        code: EXIT_OK,
    }
}

fn cmd_orbit(algebra: &str, partition: &str, diagram: bool) -> Result<Output> {
    let o = parse_orbit(algebra, partition)?;
    let r = OrbitReport::new(&o, diagram);
    let mut t = String::new();
    let singular = if r.singular_set.is_empty() {
        "∅".to_string()
    } else {
        r.singular_set.iter().map(|sd| format!("{} (d={})", sd.m, sd.d)).collect::<Vec<_>>().join(", ")
    };
    let leaves = r.namikawa.leaves.iter().map(|(m, d)| format!("{m}: {d}")).collect::<Vec<_>>().join(", ");
    let _ = writeln!(t, "orbit              {o}");
    let _ = writeln!(t, "valid              yes");
    let _ = writeln!(t, "very even          {}", yes(o.very_even));
    let _ = writeln!(t, "dim                {}", r.dim);
    let _ = writeln!(t, "pi1^G              {} (order {})", o.pi1(), r.pi1_order);
    let _ = writeln!(t, "H2(orbit)          {}", r.h2_orbit);
    let _ = writeln!(t, "H2(cover)          {} (derived)", r.h2_universal_cover);
    let _ = writeln!(t, "special at         {}", r.special_at.map_or("-".to_string(), |k| k.to_string()));
    let _ = writeln!(t, "S(alpha)           {singular}");
    let _ = writeln!(t, "rigid Levi         {}", r.rigid_levi_notation);
    let _ = writeln!(t, "rigid source       {}", r.rigid_levi.source);
    let _ = writeln!(t, "birationally rigid {}", yes(r.birationally_rigid));
    let _ = writeln!(
        t,
        "Namikawa           total {} = smooth {} + leaves {{{leaves}}}",
        r.namikawa.dim_total, r.namikawa.dim_smooth
    );
    if let Some(d) = &r.diagram {
        let _ = writeln!(t, "\n{d}");
    }
    Ok(output("orbit", r, t, algebra_warnings(o.algebra)))
}

fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let widths: Vec<usize> = (0..header.len())
        .map(|c| rows.iter().map(|r| r[c].chars().count()).chain([header[c].chars().count()]).max().unwrap_or(0))
        .collect();
    let line = |cells: Vec<&str>| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}", w = *w))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    let mut out = line(header.to_vec());
    for r in rows {
        out.push('\n');
        out.push_str(&line(r.iter().map(String::as_str).collect()));
    }
    out.push('\n');
    out
}

fn cmd_degenerations(algebra: &str, partition: &str, diagram: bool) -> Result<Output> {
    let o = parse_orbit(algebra, partition)?;
    let r: CoverReport = cover_report(&o)?;
    let header = ["child", "m", "q", "case", "k", "d_m", "closure", "H_m", "cover", "P_m(orbit)", "P_m(cover)", "etale"];
    let rows: Vec<Vec<String>> = r
        .leaves
        .iter()
        .map(|l| {
            vec![
                l.child.to_string(),
                l.m.to_string(),
                l.q.to_string(),
                l.case.to_string(),
                l.k.to_string(),
                l.d_m.to_string(),
                l.closure.to_string(),
                l.hm.order.to_string(),
                l.cover.to_string(),
                l.dim_leaf_orbit.to_string(),
                l.dim_leaf_cover.to_string(),
                yes(l.etale).to_string(),
            ]
        })
        .collect();
    let mut t = format!("{o}: {} codimension-2 orbit(s), pi1^G exponent {}\n", r.leaves.len(), r.pi1_exponent);
    if !rows.is_empty() {
        t.push_str(&table(&header, &rows));
    }
    let _ = writeln!(
        t,
        "cover Namikawa: total {} = smooth {} (derived) + leaves {}",
        r.namikawa.dim_total,
        r.namikawa.dim_smooth,
        r.namikawa.dim_total - r.namikawa.dim_smooth
    );
    if diagram {
        for l in &r.leaves {
            let _ = writeln!(t, "\n{}\n{}", l.child, l.child.diagram());
        }
    }
    Ok(output("degenerations", r, t, algebra_warnings(o.algebra)))
}

fn cmd_induce(algebra: &str, partition: &str, blocks: &str, diagram: bool) -> Result<Output> {
    let target: Algebra = algebra.parse()?;
    let source: Partition = partition.parse()?;
    let blocks = parse_blocks(blocks)?;
    let levi = LeviShape::new(blocks.clone(), target)?;
    let steps = induce_steps(&source, &blocks, target)?;
    let result = steps.last().map_or_else(|| source.clone(), |s| s.result.clone());
    let birational = steps.iter().all(|s| s.birational);
    let mut t = String::new();
    let _ = writeln!(t, "source   {source} in {}", levi.residual);
    let _ = writeln!(t, "Levi     {levi}");
    for (i, s) in steps.iter().enumerate() {
        let lift = if s.lifted_valid {
            format!("alpha^{} = {} valid", s.block, s.lifted)
        } else {
            format!("alpha^{} = {} invalid, collapse", s.block, s.lifted)
        };
        let _ = writeln!(
            t,
            "step {}   gl{} into {}: {} -> {}, birational: {}",
            i + 1,
            s.block,
            s.algebra,
            lift,
            s.result,
            yes(s.birational)
        );
    }
    let _ = writeln!(t, "result   {result} in {target}");
    let _ = writeln!(t, "birational: {}", yes(birational));
    if diagram {
        let _ = writeln!(t, "\n{}", result.diagram());
    }
    let report = InduceReport {
        target,
        levi,
        source,
        blocks,
        steps,
        result,
        birational,
    };
    Ok(output("induce", report, t, algebra_warnings(target)))
}

fn cmd_enumerate(algebra: &str, diagram: bool) -> Result<Output> {
    let g: Algebra = algebra.parse()?;
    let entries: Vec<EnumerateEntry> = enumerate_orbits(g)
        .into_iter()
        .map(|o| EnumerateEntry {
            dim: o.dim(),
            pi1_exponent: o.pi1().exponent,
            diagram: diagram.then(|| o.partition.diagram()),
            very_even: o.very_even,
            partition: o.partition,
        })
        .collect();
    let rows: Vec<Vec<String>> = entries
        .iter()
        .map(|e| {
            vec![
                e.partition.to_string(),
                e.dim.to_string(),
                e.pi1_exponent.to_string(),
                if e.very_even { "very even".into() } else { String::new() },
            ]
        })
        .collect();
    let mut t = format!("{g}: {} orbit(s)\n", entries.len());
    t.push_str(&table(&["partition", "dim", "pi1 exponent", ""], &rows));
    if diagram {
        for e in &entries {
            let _ = writeln!(t, "\n{}\n{}", e.partition, e.diagram.as_deref().unwrap_or(""));
        }
    }
    Ok(output("enumerate", entries, t, algebra_warnings(g)))
}

fn cmd_check(series: &str, max_size: Option<usize>) -> Result<Output> {
    let series: Series = series.parse()?;
    let max = max_size.unwrap_or(match series {
        Series::So => 13,
        Series::Sp => 12,
    });
    let r: ConsistencyReport = run_suite(series, max);
    let mut t = String::new();
    for (name, n) in &r.tallies {
        let failed = r.failures_of(name).count();
        let status = if failed == 0 { "PASS" } else { "FAIL" };
        let _ = writeln!(t, "{status} {name:<34} {n:>8} checks, {failed} failure(s)");
    }
    for f in &r.failures {
        let _ = writeln!(t, "  {}: {}", f.check, f.witness);
    }
    let _ = writeln!(
        t,
        "{} checks over {} up to size {max} in {} ms: {}",
        r.checks_run,
        series.prefix(),
        r.elapsed_ms,
        if r.passed() { "all passed" } else { "FAILURES" }
    );
    let code = if r.passed() { EXIT_OK } else { EXIT_CONSISTENCY };
    let mut out = output("check", r, t, Vec::new());
    out.code = code;
    Ok(out)
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() { write!(stderr, "{rendered}") } else { write!(stdout, "{rendered}") };
            return code;
        }
    };
    let diagram = cli.output.diagram;
    let result = match &cli.command {
        Command::Orbit { algebra, partition } => cmd_orbit(algebra, partition, diagram),
        Command::Degenerations { algebra, partition } => cmd_degenerations(algebra, partition, diagram),
        Command::Induce { algebra, partition, blocks } => cmd_induce(algebra, partition, blocks, diagram),
        Command::Enumerate { algebra } => cmd_enumerate(algebra, diagram),
        Command::Check { series, max_size, bound } => cmd_check(series, max_size.or(*bound)),
    };
    match result {
        Ok(out) => {
            for w in &out.warnings {
                let _ = writeln!(stderr, "warning: {w}");
            }
            let body = if cli.output.json { &out.json } else { &out.text };
            let _ = write!(stdout, "{body}");
            if cli.output.json {
                let _ = writeln!(stdout);
            }
            out.code
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}
