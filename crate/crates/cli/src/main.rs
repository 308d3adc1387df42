//! Command-line front end: verify maximality, count points, audit genus
//! spectra, tabulate bounds, and inspect numerical semigroups.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use maxcurve_core::audit::{
    spectrum_audit, verify_family, Classification, SpectrumReport, Verdict, VerifyReport,
    REPORT_SCHEMA,
};
use maxcurve_core::bounds::{
    castelnuovo_c0, halphen_c1, ihara_bound, second_genus_bound, third_genus_bound,
};
use maxcurve_core::counting::{count_curve, count_curve_brute, predicted_extension_count};
use maxcurve_core::semigroup::orders_from_nongaps;
use maxcurve_core::{CountConfig, CurveFamily, NumericalSemigroup, PointCount, Result};

const BUDGET_FLOOR: u64 = 1_000_000;

#[derive(Parser)]
#[command(
    name = "maxcurve",
    version,
    about = "Audit tool for maximal curves over GF(q^2)"
)]
struct Cli {
    /// Cap on elementary field operations per counting call
    #[arg(
        long,
        global = true,
        env = "MAXCURVE_BUDGET",
        default_value_t = 1_000_000_000
    )]
    budget: u64,

    /// Worker threads for counting; 0 uses every core
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    /// Largest base q accepted by counting commands
    #[arg(long, global = true, default_value_t = 13)]
    q_cap: u64,

    /// Report style
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Count a family's points over F_{q^2} and every extension up to k-max,
    /// comparing each count against the value maximality forces
    VerifyMaximal {
        /// Family id, e.g. "hermitian:q=4" or "as:q=7,m=4"
        family: CurveFamily,
        /// Largest extension index to check
        #[arg(long, default_value_t = 2)]
        k_max: u32,
    },
    /// Count points of one family over F_{q^{2k}}
    Count {
        /// Family id, e.g. "as:q=3,m=2"
        #[arg(long)]
        family: CurveFamily,
        /// Extension index: k = 1 is the base field F_{q^2}
        #[arg(long, default_value_t = 1)]
        k: u32,
        /// Enumerate (x, y) pairs instead of the per-family fast path
        #[arg(long)]
        brute: bool,
        /// Compare against the count forced for this genus instead of the
        /// family's own
        #[arg(long)]
        genus: Option<u64>,
    },
    /// Walk every genus from 0 to the Hermitian genus and report what is
    /// known: trichotomy tag, conjectural exclusions, catalog matches
    SpectrumAudit {
        q: u64,
        /// Dimensions for the conjectural interval marks
        #[arg(long, value_delimiter = ',', default_value = "3")]
        r: Vec<u64>,
    },
    /// Tabulate degree-(q+1) genus bounds for each q and dimension r
    Bounds {
        /// Base prime powers, comma-separated or repeated
        #[arg(long, value_delimiter = ',', required = true)]
        q: Vec<u64>,
        #[arg(long, value_delimiter = ',', default_value = "2,3,4,5")]
        r: Vec<u64>,
    },
    /// Gaps, genus, and Frobenius number of the semigroup the generators span
    Semigroup {
        /// Generators, comma-separated
        #[arg(long, value_delimiter = ',', required = true)]
        gens: Vec<u64>,
        /// Also print the order sequence dual to the nongaps up to q + 1
        #[arg(long)]
        orders_q: Option<u64>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = CountConfig {
        budget: cli.budget.max(BUDGET_FLOOR),
        threads: cli.threads,
        q_cap: cli.q_cap,
    };
    match run(&cli, &cfg) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

/// Ok(false) marks a mathematical mismatch; resource and usage problems
/// come back as errors.
fn run(cli: &Cli, cfg: &CountConfig) -> Result<bool> {
    match &cli.cmd {
        Cmd::VerifyMaximal { family, k_max } => {
            let report = verify_family(family, *k_max, cfg)?;
            render_verify(&report, cli.format);
            Ok(report.all_match)
        }
        Cmd::Count {
            family,
            k,
            brute,
            genus,
        } => {
            let observed = if *brute {
                count_curve_brute(family, *k, cfg)?
            } else {
                count_curve(family, *k, cfg)?
            };
            let genus = genus.unwrap_or_else(|| family.genus());
            let predicted = predicted_extension_count(family.q(), genus, *k)?;
            let report = CountReport {
                schema: REPORT_SCHEMA,
                family: family.family_id(),
                q: family.q(),
                genus,
                method: if *brute { "brute" } else { "fast" },
                observed,
                predicted,
                matches: observed.total == predicted,
            };
            render_count(&report, cli.format);
            Ok(report.matches)
        }
        Cmd::SpectrumAudit { q, r } => {
            let report = spectrum_audit(*q, r)?;
            render_spectrum(&report, cli.format);
            Ok(true)
        }
        Cmd::Bounds { q, r } => {
            let mut rows = Vec::new();
            for &q in q {
                for &r in r {
                    let (c0, eps) = castelnuovo_c0(q + 1, r)?;
                    let (c1, eps1) = halphen_c1(q + 1, r)?;
                    rows.push(BoundsRow {
                        q,
                        r,
                        c0,
                        eps,
                        c1,
                        eps1,
                        ihara: ihara_bound(q),
                        ft1: second_genus_bound(q),
                        third: third_genus_bound(q),
                    });
                }
            }
            render_bounds(&rows, cli.format);
            Ok(true)
        }
        Cmd::Semigroup { gens, orders_q } => {
            let s = NumericalSemigroup::from_generators(gens)?;
            let orders = match orders_q {
                Some(q) => {
                    let prefix: Vec<u64> = s
                        .first_nongaps(q + 2)
                        .into_iter()
                        .filter(|&m| m <= q + 1)
                        .collect();
                    Some(OrderPart {
                        q: *q,
                        nongap_prefix: prefix.clone(),
                        orders: orders_from_nongaps(*q, &prefix)?,
                    })
                }
                None => None,
            };
            let report = SemigroupReport {
                schema: REPORT_SCHEMA,
                gens: s.gens.clone(),
                genus: s.genus(),
                frobenius: s.frobenius_number(),
                gaps: s.gaps().to_vec(),
                nongaps: s.first_nongaps(12),
                orders,
            };
            render_semigroup(&report, cli.format);
            Ok(true)
        }
    }
}

// ---------------------------------------------------------------------------
// report shapes

#[derive(Serialize)]
struct CountReport {
    schema: &'static str,
    family: String,
    q: u64,
    genus: u64,
    method: &'static str,
    observed: PointCount,
    predicted: u64,
    matches: bool,
}

#[derive(Serialize)]
struct BoundsRow {
    q: u64,
    r: u64,
    c0: u64,
    eps: u64,
    c1: u64,
    eps1: u64,
    ihara: u64,
    ft1: u64,
    third: u64,
}

#[derive(Serialize)]
struct BoundsReport<'a> {
    schema: &'static str,
    rows: &'a [BoundsRow],
}

#[derive(Serialize)]
struct OrderPart {
    q: u64,
    nongap_prefix: Vec<u64>,
    orders: Vec<u64>,
}

#[derive(Serialize)]
struct SemigroupReport {
    schema: &'static str,
    gens: Vec<u64>,
    genus: u64,
    frobenius: Option<u64>,
    gaps: Vec<u64>,
    nongaps: Vec<u64>,
    orders: Option<OrderPart>,
}

// ---------------------------------------------------------------------------
// rendering

fn emit_json<T: Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("report serializes")
    );
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn join<T: ToString>(xs: &[T], sep: &str) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

fn render_verify(report: &VerifyReport, format: Format) {
    match format {
        Format::Json => emit_json(report),
        Format::Csv => {
            println!("family,q,genus,k,expected,observed,matches");
            let fam = csv_field(&report.family);
            let base = &report.base;
            println!(
                "{fam},{},{},1,{},{},{}",
                report.q, report.genus, base.expected, base.observed, base.is_maximal
            );
            for ext in &report.extensions {
                println!(
                    "{fam},{},{},{},{},{},{}",
                    report.q, report.genus, ext.k, ext.expected, ext.observed.total, ext.matches
                );
            }
        }
        Format::Text => {
            println!(
                "{} over GF({}^2), genus {}",
                report.family, report.q, report.genus
            );
            println!(
                "  k=1: observed {:>8}  predicted {:>8}  {}",
                report.base.observed,
                report.base.expected,
                tick(report.base.is_maximal)
            );
            for ext in &report.extensions {
                println!(
                    "  k={}: observed {:>8}  predicted {:>8}  {}",
                    ext.k,
                    ext.observed.total,
                    ext.expected,
                    tick(ext.matches)
                );
            }
            println!(
                "verdict: {}",
                if report.all_match { "PASS" } else { "FAIL" }
            );
        }
    }
}

fn render_count(report: &CountReport, format: Format) {
    match format {
        Format::Json => emit_json(report),
        Format::Csv => {
            println!("family,q,genus,method,k,affine,at_infinity,total,predicted,matches");
            let o = &report.observed;
            println!(
                "{},{},{},{},{},{},{},{},{},{}",
                csv_field(&report.family),
                report.q,
                report.genus,
                report.method,
                o.k,
                o.affine,
                o.at_infinity,
                o.total,
                report.predicted,
                report.matches
            );
        }
        Format::Text => {
            let o = &report.observed;
            println!(
                "{} over GF({}^{}) [{}]",
                report.family,
                report.q,
                2 * o.k,
                report.method
            );
            println!(
                "  affine {} + infinity {} = {}",
                o.affine, o.at_infinity, o.total
            );
            println!(
                "  predicted for genus {}: {}  {}",
                report.genus,
                report.predicted,
                tick(report.matches)
            );
        }
    }
}

fn render_spectrum(report: &SpectrumReport, format: Format) {
    match format {
        Format::Json => emit_json(report),
        Format::Csv => {
            println!("g,tag,hasse_weil_upper,conjecture_excluded_r,known_families,known_formulas,classification");
            for row in &report.rows {
                let class = row
                    .classification
                    .as_ref()
                    .map(|c| format!("{}:{}", verdict_str(c.verdict), c.families.join(";")))
                    .unwrap_or_default();
                println!(
                    "{},{},{},{},{},{},{}",
                    row.g,
                    row.tag,
                    row.hasse_weil_upper,
                    join(&row.conjecture_excluded_r, ";"),
                    csv_field(&row.known_families.join(";")),
                    csv_field(&row.known_formulas.join(";")),
                    csv_field(&class)
                );
            }
        }
        Format::Text => {
            println!(
                "genus spectrum for q={}: hermitian {}, second {}, third {}",
                report.q, report.hermitian_genus, report.second_genus, report.third_genus
            );
            if let Some(s) = &report.settled_spectrum {
                println!("settled spectrum: {{{}}}", join(s, ", "));
            }
            for row in &report.rows {
                let mut line = format!(
                    "  g={:<4} {:<16} N={}",
                    row.g,
                    row.tag.as_str(),
                    row.hasse_weil_upper
                );
                if !row.conjecture_excluded_r.is_empty() {
                    line.push_str(&format!(
                        "  conjecture-excluded r={}",
                        join(&row.conjecture_excluded_r, ",")
                    ));
                }
                if !row.known_families.is_empty() {
                    line.push_str(&format!("  families[{}]", row.known_families.join(" ")));
                }
                if !row.known_formulas.is_empty() {
                    line.push_str(&format!("  formulas[{}]", row.known_formulas.join(" | ")));
                }
                if let Some(c) = &row.classification {
                    line.push_str(&format!("  {}", describe_classification(c)));
                }
                println!("{line}");
            }
        }
    }
}

fn render_bounds(rows: &[BoundsRow], format: Format) {
    match format {
        Format::Json => emit_json(&BoundsReport {
            schema: REPORT_SCHEMA,
            rows,
        }),
        Format::Csv => {
            println!("q,r,c0,eps,c1,eps1,ihara,ft1,third");
            for b in rows {
                println!(
                    "{},{},{},{},{},{},{},{},{}",
                    b.q, b.r, b.c0, b.eps, b.c1, b.eps1, b.ihara, b.ft1, b.third
                );
            }
        }
        Format::Text => {
            println!(
                "{:>4} {:>3} {:>8} {:>4} {:>8} {:>5} {:>8} {:>8} {:>8}",
                "q", "r", "c0", "eps", "c1", "eps1", "ihara", "ft1", "third"
            );
            for b in rows {
                println!(
                    "{:>4} {:>3} {:>8} {:>4} {:>8} {:>5} {:>8} {:>8} {:>8}",
                    b.q, b.r, b.c0, b.eps, b.c1, b.eps1, b.ihara, b.ft1, b.third
                );
            }
        }
    }
}

fn render_semigroup(report: &SemigroupReport, format: Format) {
    match format {
        Format::Json => emit_json(report),
        Format::Csv => {
            println!("gens,genus,frobenius,gaps");
            println!(
                "{},{},{},{}",
                csv_field(&join(&report.gens, ";")),
                report.genus,
                report.frobenius.map(|f| f.to_string()).unwrap_or_default(),
                csv_field(&join(&report.gaps, ";"))
            );
        }
        Format::Text => {
            println!("semigroup <{}>", join(&report.gens, ", "));
            println!("  genus {}", report.genus);
            match report.frobenius {
                Some(f) => println!("  frobenius number {f}"),
                None => println!("  frobenius number: none (every integer is a member)"),
            }
            println!("  gaps {{{}}}", join(&report.gaps, ", "));
            println!("  first nongaps {}, ...", join(&report.nongaps, ", "));
            if let Some(o) = &report.orders {
                println!(
                    "  nongaps up to {}: {{{}}}",
                    o.q + 1,
                    join(&o.nongap_prefix, ", ")
                );
                println!(
                    "  dual order sequence ({}) at q={}",
                    join(&o.orders, ", "),
                    o.q
                );
            }
        }
    }
}

fn tick(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "MISMATCH"
    }
}

fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::NonExistent => "non_existent",
        Verdict::Unique => "unique",
        Verdict::ExactlyTwo => "exactly_two",
    }
}

fn describe_classification(c: &Classification) -> String {
    let head = match c.verdict {
        Verdict::NonExistent => "no maximal curve of this genus".to_string(),
        Verdict::Unique => format!("unique: {}", c.families.join(" ")),
        Verdict::ExactlyTwo => format!("exactly two: {}", c.families.join(" ")),
    };
    match &c.assuming {
        Some(h) => format!("{head} (assuming {h})"),
        None => head,
    }
}
