//! Command-line surface over the engine: JSON complex I/O, page rendering,
//! feasibility searches, scenario verdicts and a seeded property-suite
//! driver.
//!
//! Exit codes: 0 success/reproduced, 1 mismatch or infeasible-as-answer,
//! 2 usage/parse error, 3 search budget exceeded.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use floerseq::catalog::{CatalogError, Scenario, Verdict, DEFAULT_BUDGET};
use floerseq::complex::FloerComplex;
use floerseq::deduce::{self, BettiConstraints, DeduceError, GysinConstraints};
use floerseq::euler;
use floerseq::randgen::{random_complex, random_morse_complex};
use floerseq::schema::{emit_complex, parse_complex};
use floerseq::specseq;

#[derive(Parser)]
#[command(name = "floerseq", version, about = "exact GF(2) Floer spectral sequence toolkit")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Render the spectral sequence pages of a complex file
    Pages {
        complex: PathBuf,
        /// last page to render (clamped to the collapse page)
        #[arg(long, default_value_t = usize::MAX)]
        r_max: usize,
        /// emit JSON instead of text grids
        #[arg(long)]
        json: bool,
    },
    /// Homology of the unrolled complex over one grading period
    Homology { complex: PathBuf },
    /// Seeded property suite over random complexes
    VerifySs {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// largest top degree of the generated complexes
        #[arg(long, default_value_t = 6)]
        max_degree: usize,
        /// per-degree dimension bound
        #[arg(long, default_value_t = 4)]
        max_dim: usize,
    },
    /// Enumerate Betti vectors admitting vanishing homology
    BettiSearch {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        maslov: usize,
        #[arg(long)]
        pd: bool,
        /// pin an entry, e.g. --fix 0=1 (repeatable)
        #[arg(long = "fix")]
        fix: Vec<String>,
        #[arg(long, default_value_t = 4)]
        bound: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Solve the circle-bundle Gysin sequence for base Betti vectors
    Gysin {
        /// total-space Betti numbers, e.g. --total 1,1,0,1,1
        #[arg(long)]
        total: String,
        #[arg(long)]
        base_dim: usize,
        /// force the bundle class to act by zero
        #[arg(long)]
        w_zero: bool,
        #[arg(long = "fix")]
        fix: Vec<String>,
        /// lower-bound an entry, e.g. --min 1=1 (repeatable)
        #[arg(long = "min")]
        min: Vec<String>,
        #[arg(long)]
        pd: bool,
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Periods in a range under which a support pattern can die
    Divisibility {
        /// supported degrees, e.g. --support 0,11
        #[arg(long)]
        support: String,
        #[arg(long)]
        dim: usize,
        /// inclusive period range, e.g. --maslov-range 2..12
        #[arg(long)]
        maslov_range: String,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Euler-characteristic inequality report on a window
    Euler {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        s: isize,
        #[arg(long, allow_hyphen_values = true)]
        t: isize,
    },
    /// List or run the theorem scenarios
    Scenario {
        #[command(subcommand)]
        action: ScenarioCmd,
    },
    /// Emit a seeded random valid complex as JSON
    Random {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        maslov: usize,
        #[arg(long, default_value_t = 4)]
        max_dim: usize,
        /// keep only the degree-0 part of the differential
        #[arg(long)]
        morse_only: bool,
    },
}

#[derive(Subcommand)]
enum ScenarioCmd {
    /// Names and default parameters of the shipped scenarios
    List,
    /// Run one scenario
    Run {
        name: String,
        /// scenario parameter, e.g. --param n=4 (repeatable)
        #[arg(long = "param")]
        params: Vec<String>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
}

struct Failure {
    msg: String,
    code: u8,
}

impl Failure {
    fn usage(msg: impl Into<String>) -> Failure {
        Failure {
            msg: msg.into(),
            code: 2,
        }
    }
}

impl<E: std::error::Error> From<E> for Failure {
    fn from(e: E) -> Failure {
        let code = if e.to_string().contains("budget") { 3 } else { 2 };
        Failure {
            msg: e.to_string(),
            code,
        }
    }
}

fn from_deduce(e: DeduceError) -> Failure {
    let code = match e {
        DeduceError::SearchBudgetExceeded(_) => 3,
        _ => 2,
    };
    Failure {
        msg: e.to_string(),
        code,
    }
}

fn from_catalog(e: CatalogError) -> Failure {
    match e {
        CatalogError::Deduce(d) => from_deduce(d),
        other => Failure::usage(other.to_string()),
    }
}

fn main() -> ExitCode {
    // die quietly when the output pipe closes (e.g. piped into `head`)
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

fn load_complex(path: &PathBuf) -> Result<FloerComplex, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    let c = parse_complex(&text).map_err(|e| Failure::usage(e.to_string()))?;
    if !c.is_valid() {
        return Err(Failure::usage(format!(
            "{}: operators do not satisfy the d^2 = 0 identities",
            path.display()
        )));
    }
    Ok(c)
}

fn parse_pairs(items: &[String]) -> Result<BTreeMap<usize, usize>, Failure> {
    let mut out = BTreeMap::new();
    for item in items {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| Failure::usage(format!("expected key=value, got `{item}`")))?;
        let k = k
            .trim()
            .parse()
            .map_err(|_| Failure::usage(format!("bad index in `{item}`")))?;
        let v = v
            .trim()
            .parse()
            .map_err(|_| Failure::usage(format!("bad value in `{item}`")))?;
        out.insert(k, v);
    }
    Ok(out)
}

fn parse_named(items: &[String]) -> Result<BTreeMap<String, usize>, Failure> {
    let mut out = BTreeMap::new();
    for item in items {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| Failure::usage(format!("expected name=value, got `{item}`")))?;
        let v = v
            .trim()
            .parse()
            .map_err(|_| Failure::usage(format!("bad value in `{item}`")))?;
        out.insert(k.trim().to_string(), v);
    }
    Ok(out)
}

fn parse_list(text: &str) -> Result<Vec<usize>, Failure> {
    text.split(',')
        .map(|p| {
            p.trim()
                .parse()
                .map_err(|_| Failure::usage(format!("bad entry `{p}` in list")))
        })
        .collect()
}

fn parse_range(text: &str) -> Result<(usize, usize), Failure> {
    let (lo, hi) = text
        .split_once("..")
        .ok_or_else(|| Failure::usage(format!("expected lo..hi, got `{text}`")))?;
    Ok((
        lo.trim()
            .parse()
            .map_err(|_| Failure::usage(format!("bad range start `{lo}`")))?,
        hi.trim()
            .parse()
            .map_err(|_| Failure::usage(format!("bad range end `{hi}`")))?,
    ))
}

fn run(cmd: Cmd) -> Result<u8, Failure> {
    match cmd {
        Cmd::Pages {
            complex,
            r_max,
            json,
        } => cmd_pages(&complex, r_max, json),
        Cmd::Homology { complex } => cmd_homology(&complex),
        Cmd::VerifySs {
            seed,
            trials,
            max_degree,
            max_dim,
        } => cmd_verify(seed, trials, max_degree, max_dim),
        Cmd::BettiSearch {
            dim,
            maslov,
            pd,
            fix,
            bound,
            budget,
        } => {
            let cons = BettiConstraints {
                fixed: parse_pairs(&fix)?,
                pd,
                bound,
            };
            let sols = deduce::forced_betti(dim, maslov, &cons, budget).map_err(from_deduce)?;
            println!(
                "{}",
                serde_json::json!({
                    "dim": dim, "maslov": maslov, "solutions": sols,
                })
            );
            Ok(if sols.is_empty() { 1 } else { 0 })
        }
        Cmd::Gysin {
            total,
            base_dim,
            w_zero,
            fix,
            min,
            pd,
            bound,
        } => {
            let gamma = parse_list(&total)?;
            if gamma.len() != base_dim + 2 {
                return Err(Failure::usage(format!(
                    "total-space vector must have base_dim+2 = {} entries, got {}",
                    base_dim + 2,
                    gamma.len()
                )));
            }
            let cons = GysinConstraints {
                fixed: parse_pairs(&fix)?,
                min: parse_pairs(&min)?,
                pd,
                bound: bound.unwrap_or_else(|| gamma.iter().sum::<usize>().max(1)),
            };
            let sols =
                deduce::gysin_solve(&gamma, base_dim, w_zero, &cons).map_err(from_deduce)?;
            println!(
                "{}",
                serde_json::json!({
                    "total": gamma, "base_dim": base_dim, "solutions": sols,
                })
            );
            Ok(if sols.is_empty() { 1 } else { 0 })
        }
        Cmd::Divisibility {
            support,
            dim,
            maslov_range,
            budget,
        } => {
            let support = parse_list(&support)?;
            if support.iter().any(|&q| q > dim) {
                return Err(Failure::usage("support degree exceeds dim".to_string()));
            }
            let (lo, hi) = parse_range(&maslov_range)?;
            let feasible =
                deduce::divisibility_set(&support, dim, lo, hi, budget).map_err(from_deduce)?;
            println!(
                "{}",
                serde_json::json!({
                    "support": support, "dim": dim,
                    "range": [lo, hi], "feasible": feasible,
                })
            );
            Ok(if feasible.is_empty() { 1 } else { 0 })
        }
        Cmd::Euler { complex, s, t } => {
            let c = load_complex(&complex)?;
            let report = match euler::verify_inequalities(&c, s, t) {
                Ok(r) => r,
                Err(euler::EulerError::SRange(s, t)) => {
                    return Err(Failure::usage(format!("bad window: s={s} > t={t}")));
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    return Ok(1);
                }
            };
            let (lhs, rhs) = euler::lemma_sides(&c, s, t)?;
            println!(
                "{}",
                serde_json::json!({
                    "s": s, "t": t, "chi": report.chi,
                    "checks": report, "lemma": {"lhs": lhs, "rhs": rhs},
                })
            );
            Ok(if report.all_pass() && lhs == rhs { 0 } else { 1 })
        }
        Cmd::Scenario { action } => match action {
            ScenarioCmd::List => {
                for s in Scenario::catalog() {
                    let params: Vec<String> = s
                        .params()
                        .into_iter()
                        .map(|(k, v)| format!("{k}={v}"))
                        .collect();
                    println!("{}  [{}]", s.name(), params.join(", "));
                }
                Ok(0)
            }
            ScenarioCmd::Run {
                name,
                params,
                budget,
            } => {
                let named = parse_named(&params)?;
                let scenario = Scenario::from_name(&name, &named).map_err(from_catalog)?;
                let report = scenario.run(budget).map_err(from_catalog)?;
                println!("{}", serde_json::to_string_pretty(&report).unwrap());
                Ok(match report.verdict {
                    Verdict::Reproduced => 0,
                    Verdict::Mismatch(_) => 1,
                })
            }
        },
        Cmd::Random {
            seed,
            n,
            maslov,
            max_dim,
            morse_only,
        } => {
            if maslov < 2 {
                return Err(Failure::usage("maslov period must be >= 2".to_string()));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let c = if morse_only {
                random_morse_complex(&mut rng, n, maslov, max_dim)
            } else {
                random_complex(&mut rng, n, maslov, max_dim)
            };
            println!("{}", emit_complex(&c));
            Ok(0)
        }
    }
}

fn cmd_pages(path: &PathBuf, r_max: usize, json: bool) -> Result<u8, Failure> {
    let c = load_complex(path)?;
    let (lo, hi) = c.default_window();
    let lc = c.build_laurent(lo, hi);
    let last = r_max.min(c.nu() + 1);
    for r in 0..=last {
        let page = specseq::page(&lc, r, lo + 1, hi - 1)?;
        let cells = page.cells();
        if json {
            let cells: Vec<[isize; 3]> = cells
                .iter()
                .map(|&((p, q), d)| [p, q, d as isize])
                .collect();
            println!("{}", serde_json::json!({"r": r, "cells": cells}));
        } else {
            println!("page r={r}");
            if cells.is_empty() {
                println!("  (empty)");
            }
            for ((p, q), d) in cells {
                println!("  p={p:>3} q={q:>3}  dim {d}");
            }
        }
    }
    Ok(0)
}

fn cmd_homology(path: &PathBuf) -> Result<u8, Failure> {
    let c = load_complex(path)?;
    let (lo, hi) = c.default_window();
    let lc = c.build_laurent(lo, hi);
    let mut per_degree = Vec::new();
    for l in 0..c.period() as isize {
        per_degree.push(lc.homology(l)?);
    }
    let total: usize = per_degree.iter().sum();
    println!(
        "{}",
        serde_json::json!({"period": c.period(), "homology": per_degree, "total": total})
    );
    Ok(0)
}

#[derive(Default, Serialize)]
struct PropertyStats {
    pass: usize,
    fail: usize,
}

fn cmd_verify(seed: u64, trials: usize, max_degree: usize, max_dim: usize) -> Result<u8, Failure> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stats: BTreeMap<&'static str, PropertyStats> = BTreeMap::new();
    let mut first_failure: Option<(String, String)> = None;
    let mut record = |name: &'static str, ok: bool, c: &FloerComplex, first: &mut Option<(String, String)>| {
        let entry = stats.entry(name).or_default();
        if ok {
            entry.pass += 1;
        } else {
            entry.fail += 1;
            if first.is_none() {
                *first = Some((name.to_string(), emit_complex(c)));
            }
        }
    };
    for trial in 0..trials {
        let n = 1 + trial % max_degree.max(1);
        let period = 2 + trial % (n + 2);
        let c = random_complex(&mut rng, n, period, max_dim);
        record("validate", c.is_valid(), &c, &mut first_failure);
        let (lo, hi) = c.default_window();
        let lc = c.build_laurent(lo, hi);
        let (wlo, whi) = (lo + 2, hi - 2);
        let nu = c.nu();

        // collapse: nothing changes after page ν+1
        let stable = specseq::page(&lc, nu + 1, wlo, whi)?;
        let next = specseq::page(&lc, nu + 2, wlo, whi)?;
        record(
            "collapse",
            stable.cells() == next.cells(),
            &c,
            &mut first_failure,
        );

        // one turn of the crank equals the directly computed next page
        let p1 = specseq::page(&lc, nu, wlo, whi)?;
        let turned = p1.turn()?;
        let direct = specseq::page(&lc, nu + 1, wlo + 1, whi - 1)?;
        record(
            "turn",
            turned.cells() == direct.cells(),
            &c,
            &mut first_failure,
        );

        // convergence: antidiagonal sums of the stable page equal homology
        let einf = specseq::e_infinity(&lc, wlo, whi)?;
        let mut conv = true;
        for l in 0..period as isize {
            let sum: usize = einf
                .cells()
                .iter()
                .filter(|&&((p, q), _)| p + q == l)
                .map(|&(_, d)| d)
                .sum();
            if sum != lc.homology(l)? {
                conv = false;
            }
        }
        record("convergence", conv, &c, &mut first_failure);

        record(
            "fixed_p_sum",
            specseq::check_statement5(&lc, wlo, whi)?,
            &c,
            &mut first_failure,
        );

        // Euler lemma on the Morse part
        let m = random_morse_complex(&mut rng, n, period, max_dim);
        let mut lemma_ok = true;
        for s in -1..=1isize {
            for t in s..=s + 3 {
                let (lhs, rhs) = euler::lemma_sides(&m, s, t)?;
                if lhs != rhs {
                    lemma_ok = false;
                }
            }
        }
        record("euler_lemma", lemma_ok, &m, &mut first_failure);
    }
    let failures: usize = stats.values().map(|s| s.fail).sum();
    println!(
        "{}",
        serde_json::json!({
            "seed": seed, "trials": trials, "properties": stats,
            "first_failure": first_failure,
        })
    );
    Ok(if failures == 0 { 0 } else { 1 })
}
