//! Command-line front end and report assembly.

use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fit::{fit_exponent, ExponentFit};
use crate::groups::{
    brute_force_order, cusp_index_proxy, d_tower_series, formula_order, psl2_order, su_order,
    GroupFamily, DEFAULT_BRUTE_FORCE_CAP,
};
use crate::primes::primes_between;
use crate::rational_dm::{
    check_int, contract, contractions, enumerate_tuples, known_retractions, ContractionPartition,
    IntStatus, Verdict, WeightTuple, WitnessKind, DEFAULT_ENUMERATION_CAP,
};
use crate::towers::{
    analyze_tower, build_a_tower, build_b_tower, build_b_tower_unchecked, c_tower_report,
    TowerReport, TowerSpec,
};

/// Default tolerance for exponent verdicts.
pub const DEFAULT_TOLERANCE: f64 = 0.05;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    #[default]
    Table,
}

#[derive(Debug, Parser)]
#[command(
    name = "cusptower",
    version,
    about = "Cusp counts, betti bounds and growth exponents for ball-quotient towers"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    pub format: Format,
    /// Cap on enumeration search spaces.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub cap: Option<u64>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Weight tuples: integrality and contractions.
    #[command(subcommand)]
    Dm(DmCommand),
    /// Abelian covering towers.
    #[command(subcommand)]
    Tower(TowerCommand),
    /// Finite group orders and congruence growth.
    #[command(subcommand)]
    Congruence(CongruenceCommand),
}

#[derive(Debug, Subcommand)]
pub enum DmCommand {
    Check {
        #[arg(long)]
        tuple: String,
    },
    Contract {
        #[arg(long)]
        tuple: String,
        /// 1-based positions, blocks separated by ';', e.g. "1,2;3;4,5;6".
        #[arg(long)]
        blocks: String,
    },
    FindContraction {
        #[arg(long, requires = "to", conflicts_with = "known")]
        from: Option<String>,
        #[arg(long, requires = "from")]
        to: Option<String>,
        /// Run on the built-in retraction pairs.
        #[arg(long)]
        known: bool,
    },
    Enumerate {
        #[arg(long)]
        length: usize,
        #[arg(long)]
        max_denominator: u64,
        #[arg(long)]
        include_fail: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    #[value(name = "A", alias = "a")]
    A,
    #[value(name = "B", alias = "b")]
    B,
    #[value(name = "C", alias = "c")]
    C,
}

#[derive(Debug, Subcommand)]
pub enum TowerCommand {
    Run(TowerRun),
    Analyze {
        #[arg(long)]
        spec: PathBuf,
    },
}

#[derive(Debug, Args)]
pub struct TowerRun {
    #[arg(long, value_enum)]
    pub family: Family,
    #[arg(long, default_value_t = 3)]
    pub prime: u64,
    #[arg(long)]
    pub depth: u32,
    /// Genus of the base surface (C family).
    #[arg(long, default_value_t = 2)]
    pub genus: u64,
    /// Cusp divisors of the base surface (C family); 0 means the cusp maps to 0.
    #[arg(long, value_delimiter = ',', default_value = "0")]
    pub divisors: Vec<u64>,
    /// Also write the tower specification as JSON.
    #[arg(long)]
    pub emit_spec: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum CongruenceCommand {
    Orders {
        #[arg(long)]
        family: GroupFamily,
        #[arg(long, default_value_t = 2)]
        m: u32,
        /// Field sizes (or moduli for SL2).
        #[arg(long, value_delimiter = ',', required = true)]
        q: Vec<u64>,
        /// Also count by enumeration.
        #[arg(long)]
        brute: bool,
    },
    Exponents {
        #[command(flatten)]
        range: SeriesArgs,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tolerance: f64,
    },
    Dtower {
        #[command(flatten)]
        range: SeriesArgs,
    },
}

#[derive(Debug, Args)]
pub struct SeriesArgs {
    #[arg(long, default_value_t = 2)]
    pub n: u32,
    #[arg(long, default_value_t = 2)]
    pub genus: u64,
    #[arg(long, default_value_t = 5)]
    pub prime_min: u64,
    #[arg(long, default_value_t = 199)]
    pub prime_max: u64,
}

/// A report in a form that renders to every output format.
#[derive(Clone, Debug, PartialEq)]
pub struct Output {
    pub json: Value,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Output {
    fn new(json: Value, header: &[&str], rows: Vec<Vec<String>>) -> Self {
        Output {
            json,
            header: header.iter().map(|s| s.to_string()).collect(),
            rows,
        }
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => Ok(serde_json::to_string_pretty(&self.json)? + "\n"),
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.header)?;
                for row in &self.rows {
                    w.write_record(row)?;
                }
                let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
                Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
            }
            Format::Table => Ok(render_table(&self.header, &self.rows)),
        }
    }

    /// Cells of the named column.
    pub fn column(&self, name: &str) -> Option<Vec<&str>> {
        let idx = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[idx].as_str()).collect())
    }
}

fn render_table(header: &[String], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: &[String]| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(header);
    let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
    out += &line(&rule);
    for row in rows {
        out += &line(row);
    }
    out
}

/// Runs a parsed command and writes its report. Returns the rendered text.
pub fn run(config: &RunConfig) -> Result<String> {
    let output = execute(config)?;
    let text = output.render(config.format)?;
    match &config.out {
        Some(path) => fs::write(path, &text)?,
        None => print!("{text}"),
    }
    Ok(text)
}

/// Parses `args` (including the program name), runs, and returns the exit code.
/// Errors go to stderr as a JSON record.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return 0;
            }
            let record = json!({"error": {"kind": "usage", "message": e.to_string().trim_end(), "exit_code": 2}});
            eprintln!("{record}");
            return 2;
        }
    };
    match run(&config) {
        Ok(_) => 0,
        Err(e) => {
            let record = json!({"error": {"kind": e.kind(), "message": e.to_string(), "exit_code": e.exit_code()}});
            eprintln!("{record}");
            e.exit_code()
        }
    }
}

/// Builds the report for `config` without writing it.
pub fn execute(config: &RunConfig) -> Result<Output> {
    match &config.command {
        Command::Dm(cmd) => dm(cmd, config.cap),
        Command::Tower(cmd) => tower(cmd),
        Command::Congruence(cmd) => congruence(cmd, config.cap),
    }
}

fn dm(cmd: &DmCommand, cap: Option<u64>) -> Result<Output> {
    match cmd {
        DmCommand::Check { tuple } => {
            let mu: WeightTuple = tuple.parse()?;
            let status = check_int(&mu);
            let json = json!({
                "tuple": mu,
                "dimension": mu.dimension(),
                "verdict": status.verdict,
                "witnesses": witnesses_json(&mu, &status),
            });
            let row = vec![
                mu.to_string(),
                mu.dimension().to_string(),
                status.verdict.to_string(),
                witnesses_text(&mu, &status),
            ];
            Ok(Output::new(
                json,
                &["tuple", "dimension", "verdict", "witnesses"],
                vec![row],
            ))
        }
        DmCommand::Contract { tuple, blocks } => {
            let mu: WeightTuple = tuple.parse()?;
            let partition = ContractionPartition::new(&mu, parse_blocks(blocks)?)?;
            let nu = contract(&mu, &partition)?;
            let verdict = check_int(&nu).verdict;
            let json = json!({
                "source": mu,
                "blocks": one_based(&partition),
                "result": nu,
                "result_verdict": verdict,
            });
            let row = vec![
                mu.to_string(),
                blocks_text(&partition),
                nu.to_string(),
                verdict.to_string(),
            ];
            Ok(Output::new(
                json,
                &["source", "blocks", "result", "result_verdict"],
                vec![row],
            ))
        }
        DmCommand::FindContraction { from, to, known } => {
            let pairs: Vec<(String, WeightTuple, WeightTuple)> = if *known {
                known_retractions()
                    .into_iter()
                    .map(|p| (p.label.to_string(), p.source, p.target))
                    .collect()
            } else {
                let (Some(from), Some(to)) = (from, to) else {
                    return Err(Error::Malformed("give --from and --to, or --known".into()));
                };
                vec![(String::new(), from.parse()?, to.parse()?)]
            };
            let mut records = Vec::new();
            let mut rows = Vec::new();
            for (label, mu, nu) in pairs {
                let all = contractions(&mu, &nu);
                let first = all.first();
                records.push(json!({
                    "label": label,
                    "source": mu,
                    "target": nu,
                    "found": first.is_some(),
                    "blocks": first.map(one_based),
                    "merged_blocks": first.map(ContractionPartition::merged_blocks),
                    "partitions": all.len(),
                }));
                rows.push(vec![
                    label,
                    mu.to_string(),
                    nu.to_string(),
                    first.is_some().to_string(),
                    first.map(blocks_text).unwrap_or_default(),
                    first
                        .map(|p| p.merged_blocks().to_string())
                        .unwrap_or_default(),
                    all.len().to_string(),
                ]);
            }
            Ok(Output::new(
                Value::Array(records),
                &[
                    "label",
                    "source",
                    "target",
                    "found",
                    "blocks",
                    "merged_blocks",
                    "partitions",
                ],
                rows,
            ))
        }
        DmCommand::Enumerate {
            length,
            max_denominator,
            include_fail,
        } => {
            let tuples = enumerate_tuples(
                *length,
                *max_denominator,
                cap.unwrap_or(DEFAULT_ENUMERATION_CAP),
            )?;
            let mut records = Vec::new();
            let mut rows = Vec::new();
            for mu in tuples {
                let status = check_int(&mu);
                if status.verdict == Verdict::Fail && !include_fail {
                    continue;
                }
                rows.push(vec![
                    mu.to_string(),
                    status.verdict.to_string(),
                    witnesses_text(&mu, &status),
                ]);
                records.push(json!({
                    "tuple": mu,
                    "verdict": status.verdict,
                    "witnesses": witnesses_json(&mu, &status),
                }));
            }
            Ok(Output::new(
                Value::Array(records),
                &["tuple", "verdict", "witnesses"],
                rows,
            ))
        }
    }
}

fn witnesses_json(mu: &WeightTuple, status: &IntStatus) -> Value {
    let w = mu.weights();
    Value::Array(
        status
            .witnesses
            .iter()
            .map(|x| {
                json!({
                    "positions": [x.i + 1, x.j + 1],
                    "weights": [w[x.i].to_string(), w[x.j].to_string()],
                    "value": x.value.to_string(),
                    "kind": x.kind,
                })
            })
            .collect(),
    )
}

fn witnesses_text(mu: &WeightTuple, status: &IntStatus) -> String {
    let w = mu.weights();
    status
        .witnesses
        .iter()
        .map(|x| {
            let tag = match x.kind {
                WitnessKind::HalfIntegral => "half",
                WitnessKind::Fail => "fail",
            };
            format!(
                "({},{}) {}+{} -> {} {tag}",
                x.i + 1,
                x.j + 1,
                w[x.i],
                w[x.j],
                x.value
            )
        })
        .collect::<Vec<_>>()
        .join("; ")
}

fn parse_blocks(text: &str) -> Result<Vec<Vec<usize>>> {
    text.split(';')
        .map(|block| {
            block
                .split(',')
                .map(|t| {
                    let t = t.trim();
                    match t.parse::<usize>() {
                        Ok(i) if i >= 1 => Ok(i - 1),
                        _ => Err(Error::InvalidPartition(format!(
                            "bad position {t:?}; positions are 1-based integers"
                        ))),
                    }
                })
                .collect()
        })
        .collect()
}

fn one_based(p: &ContractionPartition) -> Vec<Vec<usize>> {
    p.blocks()
        .iter()
        .map(|b| b.iter().map(|i| i + 1).collect())
        .collect()
}

fn blocks_text(p: &ContractionPartition) -> String {
    one_based(p)
        .iter()
        .map(|b| {
            b.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect::<Vec<_>>()
        .join(";")
}

fn tower(cmd: &TowerCommand) -> Result<Output> {
    match cmd {
        TowerCommand::Run(args) => match args.family {
            Family::C => {
                if args.emit_spec.is_some() {
                    return Err(Error::Malformed(
                        "C towers are not abelian covers of the base and have no spec".into(),
                    ));
                }
                let levels = c_tower_report(args.genus, &args.divisors, u64::from(args.depth))?;
                let rows = levels
                    .iter()
                    .map(|l| {
                        vec![
                            l.level.to_string(),
                            l.degree.to_string(),
                            l.b1_surface.to_string(),
                            l.total_cusps.to_string(),
                        ]
                    })
                    .collect();
                let json = json!({
                    "genus": args.genus,
                    "cusp_divisors": args.divisors,
                    "levels": levels,
                });
                Ok(Output::new(
                    json,
                    &["level", "degree", "b1_surface", "cusps"],
                    rows,
                ))
            }
            Family::A | Family::B => {
                let spec = match args.family {
                    Family::A => build_a_tower(args.prime, args.depth)?,
                    _ => match build_b_tower(args.prime, args.depth) {
                        Err(Error::EvenPrimeForB(p)) => {
                            eprintln!(
                                "warning: p = {p} violates the odd-prime hypothesis; reporting the tower anyway"
                            );
                            build_b_tower_unchecked(p, args.depth)?
                        }
                        other => other?,
                    },
                };
                if let Some(path) = &args.emit_spec {
                    fs::write(path, spec.to_json()? + "\n")?;
                }
                tower_output(&spec)
            }
        },
        TowerCommand::Analyze { spec } => {
            let text = fs::read_to_string(spec)?;
            tower_output(&TowerSpec::from_json(&text)?)
        }
    }
}

fn tower_output(spec: &TowerSpec) -> Result<Output> {
    let report = analyze_tower(spec)?;
    let cusp_names: Vec<String> = spec.base.cusps.iter().map(|c| c.name.clone()).collect();
    let mut header = vec!["level", "deck_group", "degree", "connected", "cusps"];
    header.extend(cusp_names.iter().map(String::as_str));
    header.extend(["b1_bound", "fibration"]);
    let rows = report
        .levels
        .iter()
        .map(|l| {
            let mut row = vec![
                l.level.to_string(),
                l.deck_group.to_string(),
                l.degree.to_string(),
                l.connected.to_string(),
                l.total_cusps
                    .as_ref()
                    .map_or_else(|| "-".to_string(), ToString::to_string),
            ];
            row.extend(cusp_names.iter().map(|n| {
                l.multiplicity(n)
                    .map_or_else(String::new, ToString::to_string)
            }));
            row.push(l.b1_bound.to_string());
            row.push(l.factoring_fibration.clone().unwrap_or_else(|| "-".into()));
            row
        })
        .collect();
    Ok(Output::new(report_json(&report)?, &header, rows))
}

fn report_json(report: &TowerReport) -> Result<Value> {
    Ok(serde_json::to_value(report)?)
}

/// One fitted growth exponent with its verdict.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExponentRow {
    pub quantity: &'static str,
    #[serde(flatten)]
    pub fit: ExponentFit,
    pub target: f64,
    pub target_label: &'static str,
    pub tolerance: f64,
    pub verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reference_value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reference_verdict: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

fn prime_series(args: &SeriesArgs) -> Result<Vec<u64>> {
    let primes = primes_between(args.prime_min.max(2), args.prime_max);
    if primes.len() < 2 {
        return Err(Error::Fit(format!(
            "need at least 2 primes in [{}, {}]",
            args.prime_min, args.prime_max
        )));
    }
    Ok(primes)
}

type Points = Vec<(BigInt, BigInt)>;

/// Growth exponents of the congruence-tower proxies for ball dimension `n`.
pub fn exponent_report(
    n: u32,
    genus: u64,
    primes: &[u64],
    tolerance: f64,
) -> Result<Vec<ExponentRow>> {
    let data = d_tower_series(n, genus, primes)?;
    let qs: Vec<BigInt> = primes.iter().map(|&q| BigInt::from(q)).collect();
    let pair = |ys: Vec<BigInt>| qs.iter().cloned().zip(ys).collect::<Vec<_>>();
    let vols: Vec<BigInt> = data.iter().map(|d| d.vol.clone()).collect();
    let vs_vol = |ys: Vec<BigInt>| vols.iter().cloned().zip(ys).collect::<Vec<_>>();

    let psl2 = primes
        .iter()
        .map(|&q| psl2_order(q))
        .collect::<Result<Vec<_>>>()?;
    let cusp_index = primes
        .iter()
        .map(|&q| cusp_index_proxy(n, q))
        .collect::<Result<Vec<_>>>()?;
    let su = primes
        .iter()
        .map(|&q| su_order(n + 1, q).map(|g| g.order))
        .collect::<Result<Vec<_>>>()?;

    // exponents of q: dim SU(n+1) for volume, 2n - 1 for the parabolic image
    let dim = (n + 1) * (n + 1) - 1;
    let (vol_label, cusp_label, b1_label, cusps_label) = match n {
        2 => ("8", "5", "3/8", "5/8"),
        _ => ("15", "10", "1/5", "2/3"),
    };
    let cusp_exp = f64::from(dim - (2 * n - 1));
    let specs: Vec<(&str, Points, f64, &str)> = vec![
        ("vol_vs_q", pair(su), f64::from(dim), vol_label),
        ("psl2_vs_q", pair(psl2), 3.0, "3"),
        ("cusp_index_vs_q", pair(cusp_index), cusp_exp, cusp_label),
        (
            "b1_vs_vol",
            vs_vol(data.iter().map(|d| d.b1.clone()).collect()),
            3.0 / f64::from(dim),
            b1_label,
        ),
        (
            "cusps_vs_vol",
            vs_vol(data.iter().map(|d| d.cusps.clone()).collect()),
            cusp_exp / f64::from(dim),
            cusps_label,
        ),
    ];

    specs
        .into_iter()
        .map(|(quantity, points, target, target_label)| {
            let fit = fit_exponent(&points)?;
            let verdict = if fit.matches(target, tolerance) {
                "MATCH"
            } else {
                "MISMATCH"
            };
            let mut row = ExponentRow {
                quantity,
                fit,
                target,
                target_label,
                tolerance,
                verdict,
                reference_value: None,
                reference_verdict: None,
                note: None,
            };
            if n == 3 && quantity == "cusps_vs_vol" {
                // the stated growth rate 2/5 is not what the Heisenberg model gives
                let reference = 0.4;
                let agrees = fit.matches(reference, tolerance);
                row.reference_value = Some(reference);
                row.reference_verdict = Some(if agrees { "MATCH" } else { "DISCREPANCY" });
                if !agrees {
                    row.note = Some(format!(
                        "computed exponent {:.4} diverges from the stated growth exponent 2/5",
                        fit.slope
                    ));
                }
            }
            Ok(row)
        })
        .collect()
}

fn congruence(cmd: &CongruenceCommand, cap: Option<u64>) -> Result<Output> {
    match cmd {
        CongruenceCommand::Orders {
            family,
            m,
            q,
            brute,
        } => {
            let cap = cap.unwrap_or(DEFAULT_BRUTE_FORCE_CAP);
            let mut records = Vec::new();
            let mut rows = Vec::new();
            for &q in q {
                let f = formula_order(*family, *m, q)?;
                let b = if *brute {
                    Some(brute_force_order(*family, *m, q, cap)?)
                } else {
                    None
                };
                let agree = b.as_ref().map(|b| b.order == f.order);
                rows.push(vec![
                    family.to_string(),
                    m.to_string(),
                    q.to_string(),
                    f.order.to_string(),
                    b.as_ref().map(|b| b.order.to_string()).unwrap_or_default(),
                    agree.map(|a| a.to_string()).unwrap_or_default(),
                ]);
                records.push(json!({
                    "family": family,
                    "m": m,
                    "modulus": q,
                    "formula": f.order.to_string(),
                    "brute_force": b.map(|b| b.order.to_string()),
                    "agree": agree,
                }));
            }
            Ok(Output::new(
                Value::Array(records),
                &["family", "m", "modulus", "formula", "brute_force", "agree"],
                rows,
            ))
        }
        CongruenceCommand::Exponents { range, tolerance } => {
            if !(tolerance.is_finite() && *tolerance > 0.0) {
                return Err(Error::Malformed("tolerance must be positive".into()));
            }
            let primes = prime_series(range)?;
            let report = exponent_report(range.n, range.genus, &primes, *tolerance)?;
            let rows = report
                .iter()
                .map(|r| {
                    vec![
                        r.quantity.to_string(),
                        format!("{:.4}", r.fit.slope),
                        r.target_label.to_string(),
                        r.verdict.to_string(),
                        format!("{:.2e}", r.fit.residual),
                        r.fit.points_used.to_string(),
                        r.reference_verdict.map_or_else(String::new, |v| {
                            format!("{v} vs {}", r.reference_value.unwrap_or_default())
                        }),
                    ]
                })
                .collect();
            let json = json!({
                "n": range.n,
                "genus": range.genus,
                "prime_min": range.prime_min,
                "prime_max": range.prime_max,
                "exponents": report,
            });
            Ok(Output::new(
                json,
                &[
                    "quantity",
                    "slope",
                    "target",
                    "verdict",
                    "residual",
                    "points",
                    "reference",
                ],
                rows,
            ))
        }
        CongruenceCommand::Dtower { range } => {
            let primes = prime_series(range)?;
            let data = d_tower_series(range.n, range.genus, &primes)?;
            let rows = data
                .iter()
                .map(|d| {
                    vec![
                        d.q.to_string(),
                        d.vol.to_string(),
                        d.b1.to_string(),
                        d.cusps.to_string(),
                    ]
                })
                .collect();
            Ok(Output::new(
                serde_json::to_value(&data)?,
                &["q", "vol", "b1", "cusps"],
                rows,
            ))
        }
    }
}
