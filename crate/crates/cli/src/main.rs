use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use quadrank::algebra::{Field, MultiPoly};
use quadrank::catalog::{veronese_map, GeneratorSet, VarietySpec};
use quadrank::engine::phi::{DEFAULT_BUDGET, BUDGET_ENV};
use quadrank::engine::{
    linear_forms_on_phi, phi_scan, rank_index, search_certificate, section_inequality_check,
    verify_certificate, Certificate, EngineConfig, Pencil, RankIndexResult, SearchMode, SearchOutcome,
    Strategy,
};
use quadrank::qmap::qab;
use quadrank::report::{paper_report, ReportConfig, COLUMNS, DEFAULT_SEED};

#[derive(Parser)]
#[command(name = "quadrank", version, about = "Rank index of quadratic ideals of projective varieties")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Working field: Q, or GFp for an odd prime p.
    #[arg(long, global = true, default_value = "Q")]
    field: Field,
    /// Prime for finite-field enumeration.
    #[arg(long, global = true)]
    prime: Option<u64>,
    /// Maximum rank evaluations per enumeration.
    #[arg(long, global = true, env = BUDGET_ENV, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for random hyperplanes.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    Auto,
    Bruteforce,
    Certificates,
}

#[derive(Subcommand)]
enum Command {
    /// Print the quadric generators of a variety.
    Gens { spec: VarietySpec },
    /// Determine the rank index with evidence for both bounds.
    RankIndex {
        spec: VarietySpec,
        #[arg(long, value_enum, default_value_t = StrategyArg::Auto)]
        strategy: StrategyArg,
        /// Also search non-principal submatrices for certificates.
        #[arg(long)]
        exhaustive: bool,
    },
    /// Search for a determinant certificate, or verify one from a JSON file.
    Certify {
        spec: VarietySpec,
        /// Submatrix size.
        #[arg(long, required_unless_present = "verify")]
        size: Option<usize>,
        #[arg(long)]
        exhaustive: bool,
        /// Maximum submatrices examined.
        #[arg(long, default_value_t = 50_000)]
        search_budget: u64,
        #[arg(long, conflicts_with = "size")]
        verify: Option<PathBuf>,
    },
    /// Enumerate the rank strata of the quadric system over GF(q).
    Phi {
        spec: VarietySpec,
        /// Report the points of rank at most k and the linear forms vanishing on them.
        #[arg(long)]
        k: Option<usize>,
    },
    /// The rank-3 quadric Q(s,t,h) on the Veronese variety `veronese:n,d`.
    Qmap { spec: VarietySpec, s: String, t: String, h: String },
    /// Compare the rank index with those of random hyperplane sections over GF(q).
    SectionCheck {
        spec: VarietySpec,
        #[arg(long, default_value_t = 5)]
        trials: usize,
    },
    /// Recompute the table of published values.
    Report {
        #[arg(long, required = true)]
        paper: bool,
        /// Largest e for the non-normal families.
        #[arg(long, default_value_t = 3)]
        e_max: usize,
    },
}

impl Global {
    fn enumeration_prime(&self) -> u64 {
        match (self.prime, self.field) {
            (Some(p), _) => p,
            (None, Field::Prime(p)) => p,
            (None, Field::Rational) => 5,
        }
    }

    fn engine(&self) -> EngineConfig {
        let mut c = EngineConfig { budget: self.budget, ..EngineConfig::default() };
        if let Some(p) = self.prime {
            c.primes = vec![p];
        }
        c
    }
}

struct Out {
    format: Format,
    buf: String,
}

impl Out {
    fn line(&mut self, s: impl AsRef<str>) {
        self.buf.push_str(s.as_ref());
        self.buf.push('\n');
    }

    fn json(&mut self, v: &impl serde::Serialize) -> Result<()> {
        self.buf.push_str(&serde_json::to_string_pretty(v)?);
        self.buf.push('\n');
        Ok(())
    }

    fn csv(&mut self, header: &[&str], rows: &[Vec<String>]) -> Result<()> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(header)?;
        for r in rows {
            w.write_record(r)?;
        }
        self.buf.push_str(&String::from_utf8(w.into_inner()?)?);
        Ok(())
    }

    fn no_csv(&self, what: &str) -> Result<()> {
        if self.format == Format::Csv {
            bail!("`{what}` has no CSV form; use --format text or json");
        }
        Ok(())
    }
}

fn build(spec: &VarietySpec, field: Field) -> Result<GeneratorSet> {
    let g = spec.build().with_context(|| format!("building {spec}"))?;
    Ok(if field == Field::Rational { g } else { g.to_field(field)? })
}

fn cmd_gens(spec: &VarietySpec, g: &Global, out: &mut Out) -> Result<()> {
    let set = build(spec, g.field)?;
    match out.format {
        Format::Json => {
            let mut v = set.to_json();
            v["spec"] = json!(spec.to_string());
            v["ranks"] = json!(set.gens.iter().map(|q| q.rank()).collect::<Vec<_>>());
            out.json(&v)?;
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> = set
                .gens
                .iter()
                .enumerate()
                .map(|(i, q)| vec![i.to_string(), q.display(&set.vars), q.rank().to_string()])
                .collect();
            out.csv(&["index", "quadric", "rank"], &rows)?;
        }
        Format::Text => {
            out.line(format!(
                "# {spec}: {} quadrics in P^{} over {}{}",
                set.len(),
                set.ambient(),
                set.field,
                if set.independent { "" } else { " (dependent)" }
            ));
            for q in &set.gens {
                out.line(format!("{}    [rank {}]", q.display(&set.vars), q.rank()));
            }
        }
    }
    Ok(())
}

fn rank_index_text(r: &RankIndexResult, out: &mut Out) {
    let value = r.value.map_or_else(|| format!("in [{}, {}]", r.lower.value, r.upper.value), |v| v.to_string());
    out.line(format!("{}: rank index {value} over {}", r.spec, r.field));
    let kind = |b: &quadrank::engine::Bound| quadrank::report::evidence_kind(&b.evidence);
    out.line(format!("  lower {} by {}", r.lower.value, kind(&r.lower)));
    out.line(format!("  upper {} by {}", r.upper.value, kind(&r.upper)));
    out.line(format!("  over Q: [{}, {}]", r.rational[0], r.rational[1]));
    for run in &r.finite_field {
        out.line(format!("  GF{}: {} (span dims {:?})", run.q, run.value, run.span_dims));
    }
}

fn cmd_rank_index(spec: &VarietySpec, strategy: StrategyArg, exhaustive: bool, g: &Global, out: &mut Out) -> Result<()> {
    let mut config = g.engine();
    config.exhaustive = exhaustive;
    let strategy = match (strategy, g.field) {
        (StrategyArg::Bruteforce, _) | (StrategyArg::Auto, Field::Prime(_)) => Strategy::BruteForce(g.enumeration_prime()),
        (StrategyArg::Auto, Field::Rational) => Strategy::Auto,
        (StrategyArg::Certificates, _) => Strategy::Certificates,
    };
    let r = rank_index(spec, strategy, &config)?;
    match out.format {
        Format::Json => out.json(&r)?,
        Format::Text => rank_index_text(&r, out),
        Format::Csv => {
            let kind = |b: &quadrank::engine::Bound| quadrank::report::evidence_kind(&b.evidence).to_string();
            let row = vec![
                r.spec.clone(),
                r.value.map_or(String::new(), |v| v.to_string()),
                r.field.clone(),
                r.lower.value.to_string(),
                kind(&r.lower),
                r.upper.value.to_string(),
                kind(&r.upper),
            ];
            out.csv(&["spec", "value", "field", "lower", "lower_evidence", "upper", "upper_evidence"], &[row])?;
        }
    }
    Ok(())
}

fn cmd_certify(
    spec: &VarietySpec,
    size: Option<usize>,
    exhaustive: bool,
    search_budget: u64,
    verify: Option<&PathBuf>,
    g: &Global,
    out: &mut Out,
) -> Result<()> {
    out.no_csv("certify")?;
    let p = Pencil::assemble_reduced(&build(spec, g.field)?)?;
    if let Some(path) = verify {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let cert: Certificate = serde_json::from_str(&text).context("parsing certificate")?;
        let bound = verify_certificate(&p, &cert)?;
        match out.format {
            Format::Json => out.json(&json!({ "verified": true, "lower_bound": bound }))?,
            _ => out.line(format!("verified: rank index of {spec} is at least {bound}")),
        }
        return Ok(());
    }
    let s = size.expect("clap enforces --size");
    let mode = if exhaustive { SearchMode::Exhaustive } else { SearchMode::Principal };
    let outcome = search_certificate(&p, s, mode, search_budget)?;
    match (&outcome, out.format) {
        (SearchOutcome::Found(c), Format::Json) => out.json(c)?,
        (SearchOutcome::Found(c), _) => {
            out.line(format!("det M[{:?}, {:?}] = {} * ({})^{}", c.rows, c.cols, c.scalar, c.lambda, c.exponent));
            out.line(format!("rank index of {spec} is at least {}", c.exponent));
        }
        (SearchOutcome::Exhausted { examined }, f) | (SearchOutcome::BudgetExhausted { examined }, f) => {
            let exhausted = matches!(outcome, SearchOutcome::Exhausted { .. });
            if f == Format::Json {
                out.json(&json!({ "found": false, "exhausted": exhausted, "examined": examined }))?;
            } else if exhausted {
                out.line(format!("no {s}x{s} certificate among {examined} candidates"));
            } else {
                out.line(format!("search budget reached after {examined} candidates"));
            }
        }
    }
    Ok(())
}

fn cmd_phi(spec: &VarietySpec, k: Option<usize>, g: &Global, out: &mut Out) -> Result<()> {
    let q = g.enumeration_prime();
    let p = Pencil::assemble_reduced(&build(spec, Field::Rational)?)?;
    let scan = phi_scan(&p, q, g.budget)?;
    let names = p.param_names();
    match k {
        None => {
            let dims = scan.span_dims();
            match out.format {
                Format::Json => out.json(&json!({
                    "spec": spec.to_string(), "q": q, "dim": scan.dim,
                    "counts": scan.counts, "span_dims": dims, "rank_index": scan.rank_index(),
                }))?,
                Format::Csv => {
                    let rows: Vec<Vec<String>> = (0..scan.counts.len())
                        .map(|r| vec![r.to_string(), scan.counts[r].to_string(), dims[r].to_string()])
                        .collect();
                    out.csv(&["rank", "count", "span_dim"], &rows)?;
                }
                Format::Text => {
                    out.line(format!("# {spec} over GF{q}: P^{} of quadrics", scan.dim - 1));
                    out.line("rank  count  span_dim(rank <= k)");
                    for r in 0..scan.counts.len() {
                        out.line(format!("{r:<4}  {:<5}  {}", scan.counts[r], dims[r]));
                    }
                    out.line(format!("rank index over GF{q}: {}", scan.rank_index()));
                }
            }
        }
        Some(k) => {
            out.no_csv("phi --k")?;
            let sample = scan.sample(k);
            let forms: Vec<String> = linear_forms_on_phi(&sample).iter().map(|l| l.display(&names)).collect();
            match out.format {
                Format::Json => out.json(&json!({
                    "spec": spec.to_string(), "q": q, "k": k, "count": sample.count,
                    "span_dim": sample.span_dim, "dim": sample.dim, "points": sample.points,
                    "linear_forms": forms,
                }))?,
                _ => {
                    out.line(format!(
                        "Phi_{k}({spec}) over GF{q}: {} points spanning {} of {}",
                        sample.count, sample.span_dim, sample.dim
                    ));
                    for f in forms {
                        out.line(format!("  {f}"));
                    }
                }
            }
        }
    }
    Ok(())
}

fn cmd_qmap(spec: &VarietySpec, s: &str, t: &str, h: &str, out: &mut Out) -> Result<()> {
    out.no_csv("qmap")?;
    let VarietySpec::Veronese { n, d } = spec else {
        bail!("qmap needs a Veronese spec `veronese:n,d`, got {spec}");
    };
    let map = veronese_map(*n, *d);
    let parse = |text: &str| MultiPoly::parse(text, &map.param_vars, Field::Rational);
    let q = qab(&parse(s)?, &parse(t)?, &parse(h)?, &map)?;
    let vars = quadrank::algebra::indexed_names("z", map.len());
    match out.format {
        Format::Json => out.json(&json!({ "quadric": q.display(&vars), "rank": q.rank() }))?,
        _ => out.line(format!("{}    [rank {}]", q.display(&vars), q.rank())),
    }
    Ok(())
}

fn cmd_section_check(spec: &VarietySpec, trials: usize, g: &Global, out: &mut Out) -> Result<bool> {
    let q = g.enumeration_prime();
    let r = section_inequality_check(spec, trials, q, g.seed, &g.engine())?;
    match out.format {
        Format::Json => out.json(&r)?,
        Format::Csv => {
            let rows: Vec<Vec<String>> = r
                .trials
                .iter()
                .map(|t| vec![t.hyperplane.clone(), r.rank_index.to_string(), t.section_rank_index.to_string(), t.holds.to_string()])
                .collect();
            out.csv(&["hyperplane", "rank_index", "section_rank_index", "holds"], &rows)?;
        }
        Format::Text => {
            out.line(format!("{}: rank index {} over {}; sections over GF{q}, seed {}", r.spec, r.rank_index, r.rank_index_field, r.seed));
            for t in &r.trials {
                out.line(format!(
                    "  {} <= {} + 2  {}  [{}]",
                    r.rank_index,
                    t.section_rank_index,
                    if t.holds { "holds" } else { "FAILS" },
                    t.hyperplane
                ));
            }
        }
    }
    Ok(r.all_hold)
}

fn cmd_report(e_max: usize, g: &Global, out: &mut Out) -> Result<bool> {
    let config = ReportConfig { engine: g.engine(), seed: g.seed, e_max };
    let report = paper_report(&config)?;
    match out.format {
        Format::Json => out.json(&report)?,
        Format::Text => out.buf.push_str(&report.to_text()),
        Format::Csv => {
            let rows: Vec<Vec<String>> = report.rows.iter().map(|r| r.cells().to_vec()).collect();
            out.csv(&COLUMNS, &rows)?;
        }
    }
    Ok(report.all_ok)
}

fn run(cli: &Cli, out: &mut Out) -> Result<bool> {
    let g = &cli.global;
    if g.budget == 0 {
        bail!("--budget must be positive");
    }
    if let Some(p) = g.prime {
        Field::prime(p)?;
    }
    match &cli.command {
        Command::Gens { spec } => cmd_gens(spec, g, out)?,
        Command::RankIndex { spec, strategy, exhaustive } => cmd_rank_index(spec, *strategy, *exhaustive, g, out)?,
        Command::Certify { spec, size, exhaustive, search_budget, verify } => {
            cmd_certify(spec, *size, *exhaustive, *search_budget, verify.as_ref(), g, out)?
        }
        Command::Phi { spec, k } => cmd_phi(spec, *k, g, out)?,
        Command::Qmap { spec, s, t, h } => cmd_qmap(spec, s, t, h, out)?,
        Command::SectionCheck { spec, trials } => return cmd_section_check(spec, *trials, g, out),
        Command::Report { e_max, .. } => return cmd_report(*e_max, g, out),
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = Out { format: cli.global.format, buf: String::new() };
    let result = run(&cli, &mut out);
    let _ = std::io::stdout().write_all(out.buf.as_bytes());
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
