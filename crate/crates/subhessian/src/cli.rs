//! Command-line harness: flat sectioned key-value configuration, subcommand
//! dispatch, and deterministic JSON/CSV reports.
//!
//! Exit codes: 0 success, 1 identity violation or invariant failure,
//! 2 rejected input / configuration error / usage.
//!
//! Reports are byte-deterministic for a fixed config and seed: wall-clock
//! timing is written to a separate `<command>.meta.json` so the main report
//! never varies between identical runs.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::fields::FieldSystem;
use crate::geometry::{self, PathBudget};
use crate::grid::{Domain, GridFunction};
use crate::hessian;
use crate::identities::{self, MonotoneOperator};
use crate::measures::{self, Cutoff, LadderTarget};
use crate::sympoly::{rat, Polynomial};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const USAGE: &str = "\
usage: subhessian <command> [--config FILE] [--out DIR] [--system NAME|@FILE] [--seed N] [--KEY VALUE]...

commands:
  check-system       structural conditions of a vector-field system
  verify-identities  exact divergence residuals and the elementary-symmetric chain
  kconvex            pointwise k-convexity scan of a polynomial
  weak-continuity    mollification ladder pairing experiment
  monotonicity       integral monotonicity gaps for admissible pairs
  local-bounds       local integral ratios of a convex function
  cc-geometry        distance estimates, ball volumes, dimension fit
  exponents          exact integrability/Holder exponent calculator

Flags override config-file entries of the same key in the command's section;
`system`, `seed` and `out` live in the [global] section.
";

const EXIT_OK: i32 = 0;
const EXIT_VIOLATION: i32 = 1;
const EXIT_REJECTED: i32 = 2;

const COMMANDS: &[&str] = &[
    "check-system",
    "verify-identities",
    "kconvex",
    "weak-continuity",
    "monotonicity",
    "local-bounds",
    "cc-geometry",
    "exponents",
];

/// Flat sectioned key-value configuration. Keys are unique per section;
/// `to_text` round-trips through `parse`.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub sections: BTreeMap<String, BTreeMap<String, String>>,
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<ExperimentConfig> {
        let mut sections: BTreeMap<String, BTreeMap<String, String>> = BTreeMap::new();
        let mut current = "global".to_string();
        for (lno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(name) = line.strip_prefix('[') {
                let name = name.strip_suffix(']').ok_or(Error::Parse {
                    line: lno + 1,
                    msg: "unterminated section header".into(),
                })?;
                current = name.trim().to_string();
                sections.entry(current.clone()).or_default();
                continue;
            }
            let (key, value) = line.split_once('=').ok_or(Error::Parse {
                line: lno + 1,
                msg: format!("expected `key = value`, got `{line}`"),
            })?;
            sections
                .entry(current.clone())
                .or_default()
                .insert(key.trim().to_string(), value.trim().to_string());
        }
        Ok(ExperimentConfig { sections })
    }

    pub fn load(path: &Path) -> Result<ExperimentConfig> {
        let text = std::fs::read_to_string(path)?;
        ExperimentConfig::parse(&text)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (section, entries) in &self.sections {
            out.push_str(&format!("[{section}]\n"));
            for (k, v) in entries {
                out.push_str(&format!("{k} = {v}\n"));
            }
        }
        out
    }

    pub fn set(&mut self, section: &str, key: &str, value: &str) {
        self.sections
            .entry(section.to_string())
            .or_default()
            .insert(key.to_string(), value.to_string());
    }

    pub fn get(&self, section: &str, key: &str) -> Option<&str> {
        self.sections
            .get(section)
            .and_then(|s| s.get(key))
            .map(|s| s.as_str())
    }

    /// Read with default, materializing the default into the echoed config.
    fn take(&mut self, section: &str, key: &str, default: &str) -> String {
        if let Some(v) = self.get(section, key) {
            return v.to_string();
        }
        self.set(section, key, default);
        default.to_string()
    }

    fn take_f64(&mut self, section: &str, key: &str, default: f64) -> Result<f64> {
        let raw = self.take(section, key, &format_f64(default));
        parse_scalar(&raw).ok_or(Error::Config {
            key: key.to_string(),
            msg: format!("`{raw}` is not a number"),
        })
    }

    fn take_usize(&mut self, section: &str, key: &str, default: usize) -> Result<usize> {
        let raw = self.take(section, key, &default.to_string());
        raw.parse().map_err(|_| Error::Config {
            key: key.to_string(),
            msg: format!("`{raw}` is not a non-negative integer"),
        })
    }

    fn take_u64(&mut self, section: &str, key: &str, default: u64) -> Result<u64> {
        let raw = self.take(section, key, &default.to_string());
        raw.parse().map_err(|_| Error::Config {
            key: key.to_string(),
            msg: format!("`{raw}` is not a seed"),
        })
    }

    fn take_list_f64(&mut self, section: &str, key: &str, default: &str) -> Result<Vec<f64>> {
        let raw = self.take(section, key, default);
        raw.split(',')
            .map(|p| {
                parse_scalar(p.trim()).ok_or(Error::Config {
                    key: key.to_string(),
                    msg: format!("`{p}` is not a number"),
                })
            })
            .collect()
    }
}

/// Accept plain decimals and simple fractions like `3/4`.
fn parse_scalar(text: &str) -> Option<f64> {
    if let Ok(v) = text.parse::<f64>() {
        return Some(v);
    }
    if text.eq_ignore_ascii_case("inf") {
        return Some(f64::INFINITY);
    }
    let (num, den) = text.split_once('/')?;
    let num: f64 = num.trim().parse().ok()?;
    let den: f64 = den.trim().parse().ok()?;
    if den == 0.0 {
        return None;
    }
    Some(num / den)
}

fn format_f64(v: f64) -> String {
    if v == v.trunc() && v.abs() < 1e15 {
        format!("{v:.1}")
    } else {
        format!("{v}")
    }
}

/// Entry point used by the binary; returns the process exit code.
pub fn run(args: Vec<String>) -> i32 {
    match run_inner(args) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_REJECTED
        }
    }
}

fn run_inner(args: Vec<String>) -> Result<i32> {
    let mut it = args.into_iter();
    let command = match it.next() {
        Some(c) => c,
        None => {
            eprint!("{USAGE}");
            return Ok(EXIT_REJECTED);
        }
    };
    if command == "--help" || command == "-h" || command == "help" {
        print!("{USAGE}");
        return Ok(EXIT_OK);
    }
    if !COMMANDS.contains(&command.as_str()) {
        eprintln!("unknown command `{command}`");
        eprint!("{USAGE}");
        return Ok(EXIT_REJECTED);
    }

    // collect --key value flags
    let mut flags: Vec<(String, String)> = Vec::new();
    while let Some(flag) = it.next() {
        let key = flag.strip_prefix("--").ok_or_else(|| Error::Config {
            key: flag.clone(),
            msg: "expected a --flag".into(),
        })?;
        let value = it.next().ok_or_else(|| Error::Config {
            key: key.to_string(),
            msg: "missing value".into(),
        })?;
        flags.push((key.to_string(), value));
    }

    let mut config = ExperimentConfig::default();
    for (k, v) in &flags {
        if k == "config" {
            config = ExperimentConfig::load(Path::new(v))?;
        }
    }
    for (k, v) in &flags {
        if k == "config" {
            continue;
        }
        let section = if ["system", "seed", "out"].contains(&k.as_str()) {
            "global"
        } else {
            command.as_str()
        };
        config.set(section, k, v);
    }

    let out_dir = PathBuf::from(config.take("global", "out", "./reports"));
    let seed = config.take_u64("global", "seed", 42)?;
    std::fs::create_dir_all(&out_dir)?;

    let started = Instant::now();
    let (code, data, csv_files) = dispatch(&command, &mut config, seed)?;

    let report = json!({
        "tool": "subhessian",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "master_seed": seed,
        "config": config,
        "exit_code": code,
        "data": data,
    });
    let report_path = out_dir.join(format!("{command}.json"));
    std::fs::write(&report_path, serde_json::to_string_pretty(&report).unwrap())?;
    // timing lives outside the deterministic report
    let meta_path = out_dir.join(format!("{command}.meta.json"));
    std::fs::write(
        &meta_path,
        serde_json::to_string_pretty(&json!({
            "wall_time_ms": started.elapsed().as_millis() as u64,
        }))
        .unwrap(),
    )?;
    for (name, content) in csv_files {
        std::fs::write(out_dir.join(name), content)?;
    }
    println!("report: {}", report_path.display());
    Ok(code)
}

type CommandOutput = (i32, serde_json::Value, Vec<(String, String)>);

fn dispatch(command: &str, config: &mut ExperimentConfig, seed: u64) -> Result<CommandOutput> {
    match command {
        "check-system" => cmd_check_system(config, seed),
        "verify-identities" => cmd_verify_identities(config, seed),
        "kconvex" => cmd_kconvex(config, seed),
        "weak-continuity" => cmd_weak_continuity(config),
        "monotonicity" => cmd_monotonicity(config),
        "local-bounds" => cmd_local_bounds(config),
        "cc-geometry" => cmd_cc_geometry(config, seed),
        "exponents" => cmd_exponents(config),
        _ => unreachable!("command list checked by caller"),
    }
}

fn load_system(config: &mut ExperimentConfig) -> Result<FieldSystem> {
    let name = config.take("global", "system", "heisenberg1");
    if let Some(path) = name.strip_prefix('@') {
        let text = std::fs::read_to_string(path)?;
        FieldSystem::from_text(&text)
    } else {
        FieldSystem::builtin(&name)
    }
}

fn sample_points(n: usize, count: usize, seed: u64) -> Vec<Vec<f64>> {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect())
        .collect()
}

fn cmd_check_system(config: &mut ExperimentConfig, seed: u64) -> Result<CommandOutput> {
    let system = load_system(config)?;
    let count = config.take_usize("check-system", "samples", 16)?;
    let max_step = config.take_usize("check-system", "max_step", 4)?;
    let points = sample_points(system.dim(), count, seed);
    let report = system.check_conditions(&points, max_step)?;
    let ok = report.all_anti_self_adjoint() && report.hormander.holds;
    let code = if ok { EXIT_OK } else { EXIT_VIOLATION };
    Ok((code, serde_json::to_value(&report).unwrap(), vec![]))
}

fn cmd_verify_identities(config: &mut ExperimentConfig, seed: u64) -> Result<CommandOutput> {
    let system = load_system(config)?;
    let corpus = config.take("verify-identities", "corpus", "random4");
    let count = config.take_usize("verify-identities", "count", 20)?;
    let expect = config.take("verify-identities", "expect", "auto");
    let maclaurin_samples = config.take_usize("verify-identities", "maclaurin_samples", 2000)?;
    let degree: u32 = match corpus.as_str() {
        "random2" => 2,
        "random3" => 3,
        "random4" => 4,
        other => {
            return Err(Error::Config {
                key: "corpus".into(),
                msg: format!("unknown corpus `{other}` (use random2|random3|random4)"),
            })
        }
    };

    // expectation: exact-zero residuals iff conditions (i) and (iii) hold
    let adjoint_ok = system.anti_self_adjoint().iter().all(|&b| b);
    let triples = system.nonvanishing_second_commutators()?;
    let pairwise_ok = !triples.iter().any(|&(k, i, j)| k == i || k == j);
    let expect_zero = match expect.as_str() {
        "pass" => true,
        "fail" => false,
        "auto" => adjoint_ok && pairwise_ok,
        other => {
            return Err(Error::Config {
                key: "expect".into(),
                msg: format!("unknown expectation `{other}` (use pass|fail|auto)"),
            })
        }
    };

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut divergence = Vec::new();
    let mut all_zero = true;
    let mut any_nonzero = false;
    for _ in 0..count {
        let u = Polynomial::random(system.dim(), degree, &mut rng);
        for res in identities::verify_divergence_identity(&system, &u)? {
            all_zero &= res.is_exact_zero();
            any_nonzero |= !res.is_exact_zero();
            divergence.push(res);
        }
    }
    let divergence_as_expected = if expect_zero { all_zero } else { any_nonzero };

    // MacLaurin chain over admissible samples
    let mut chain_ok = true;
    let mut chain_checked = 0usize;
    for (m, k) in [(3usize, 2usize), (4, 2), (5, 3)] {
        for _ in 0..maclaurin_samples / 3 {
            let lambda = identities::sample_admissible_lambda(m, k, &mut rng)?;
            let res = identities::maclaurin_chain(&lambda, k, 1e-12)?;
            chain_ok &= res.holds();
            chain_checked += 1;
        }
    }

    let code = if divergence_as_expected && chain_ok {
        EXIT_OK
    } else {
        EXIT_VIOLATION
    };
    let data = json!({
        "expect_exact_zero": expect_zero,
        "divergence_as_expected": divergence_as_expected,
        "divergence_results": divergence,
        "maclaurin_samples_checked": chain_checked,
        "maclaurin_ok": chain_ok,
        "seed": seed,
    });
    Ok((code, data, vec![]))
}

fn default_function(system: &FieldSystem) -> Polynomial {
    // horizontal square (x_1^2 + ... + x_m^2)/2, clipped to the dimension
    let n = system.dim();
    let mut p = Polynomial::zero(n);
    for j in 1..=system.m().min(n) {
        p = p.add(&Polynomial::var(n, j).unwrap().pow(2)).unwrap();
    }
    p.scale(&rat(1, 2))
}

fn cmd_kconvex(config: &mut ExperimentConfig, seed: u64) -> Result<CommandOutput> {
    let system = load_system(config)?;
    let k = config.take_usize("kconvex", "k", 2.min(system.m()))?;
    let count = config.take_usize("kconvex", "samples", 200)?;
    let tol = config.take_f64("kconvex", "tol", 1e-9)?;
    let expect = config.take("kconvex", "expect", "none");
    let function = match config.get("kconvex", "function") {
        Some(text) => Polynomial::parse(system.dim(), text)?,
        None => {
            let f = default_function(&system);
            config.set("kconvex", "function", &f.to_string());
            f
        }
    };
    let points = sample_points(system.dim(), count, seed);
    let report = hessian::k_convexity(&system, &function, k, &points, tol)?;
    let p_value = config.get("kconvex", "p").map(|s| s.to_string());
    let mut p_report = None;
    if let Some(p_raw) = p_value {
        let p = parse_scalar(&p_raw).ok_or(Error::Config {
            key: "p".into(),
            msg: format!("`{p_raw}` is not a number"),
        })?;
        p_report = Some(identities::verify_p_subharmonicity(
            &system, &function, k, &points, p, tol,
        )?);
    }
    let code = match expect.as_str() {
        "hold" if !report.holds => EXIT_VIOLATION,
        "fail" if report.holds => EXIT_VIOLATION,
        _ => EXIT_OK,
    };
    // symbolic operator values alongside the scan
    let operators = vec![
        hessian::OperatorValue::symbolic_modified(
            &rat(0, 1),
            &hessian::modified_two_hessian(&system, &function, &rat(0, 1))?,
        ),
        hessian::OperatorValue::symbolic_modified(
            &rat(3, 4),
            &hessian::modified_two_hessian(&system, &function, &rat(3, 4))?,
        ),
        hessian::OperatorValue::SubLaplacian {
            polynomial: hessian::sub_laplacian(&system, &function)?.to_string(),
        },
        hessian::OperatorValue::StarTwoHessian {
            polynomial: hessian::star_two_hessian(&system, &function)?.to_string(),
        },
    ];
    let data = json!({
        "kconvexity": report,
        "p_subharmonicity": p_report,
        "operators": operators,
    });
    Ok((code, data, vec![]))
}

fn cmd_weak_continuity(config: &mut ExperimentConfig) -> Result<CommandOutput> {
    let system = load_system(config)?;
    let n = system.dim();
    let h = config.take_f64("weak-continuity", "h", 0.02)?;
    let eps_ladder =
        config.take_list_f64("weak-continuity", "eps_ladder", "0.2, 0.1, 0.05, 0.025")?;
    let alphas = config.take_list_f64("weak-continuity", "alphas", "0.0, 0.25, 0.75")?;
    let halfwidth = config.take_f64("weak-continuity", "box_halfwidth", 0.8)?;
    let eta_rho = config.take_f64("weak-continuity", "eta_rho", 0.45)?;
    let tol = config.take_f64("weak-continuity", "convexity_tol", 1e-6)?;
    let gap_rel = config.take_f64("weak-continuity", "final_gap_rel", 1e-3)?;
    let target_kind = config.take("weak-continuity", "target", "max-of-quadratics");

    let outer = Domain::new_box(vec![-halfwidth; n], vec![halfwidth; n], 0.0)?;
    let eta = Cutoff::new(vec![0.0; n], eta_rho, "bump")?;
    let target = match target_kind.as_str() {
        "max-of-quadratics" => default_max_of_quadratics(&system, config)?,
        "polynomial" => {
            let text = config
                .get("weak-continuity", "function")
                .ok_or(Error::Config {
                    key: "function".into(),
                    msg: "target=polynomial needs a `function` entry".into(),
                })?;
            LadderTarget::Polynomial(Polynomial::parse(n, text)?)
        }
        other => {
            return Err(Error::Config {
                key: "target".into(),
                msg: format!("unknown target `{other}`"),
            })
        }
    };
    let outcome = measures::weak_continuity_experiment(
        &system,
        &target,
        &outer,
        h,
        &eps_ladder,
        &eta,
        &alphas,
        tol,
    )?;

    // the discrete signature of weak continuity: gaps decrease along the
    // ladder and the final one is small relative to the pairing value
    let mut converged = outcome.valid;
    for (_, rows) in &outcome.tables {
        for w in rows.windows(2) {
            if w[1].eps > rows.last().unwrap().eps {
                converged &= w[1].pairing_gap <= w[0].pairing_gap * (1.0 + 1e-9);
            }
        }
        if rows.len() >= 2 {
            let final_gap = rows[rows.len() - 2].pairing_gap;
            let value = rows.last().unwrap().pairing_value.abs();
            converged &= final_gap < gap_rel * value;
        }
    }
    let mut csvs = Vec::new();
    for (i, (alpha, _)) in outcome.tables.iter().enumerate() {
        csvs.push((
            format!("weak-continuity.alpha{i}.csv"),
            format!("# alpha = {alpha}\n{}", outcome.table_csv(i)),
        ));
    }
    let code = if converged { EXIT_OK } else { EXIT_VIOLATION };
    let data = json!({
        "outcome": outcome,
        "converged": converged,
    });
    Ok((code, data, csvs))
}

fn default_max_of_quadratics(
    system: &FieldSystem,
    config: &mut ExperimentConfig,
) -> Result<LadderTarget> {
    let n = system.dim();
    let q1 = match config.get("weak-continuity", "q1") {
        Some(text) => Polynomial::parse(n, text)?,
        None => {
            let f = default_function(system);
            config.set("weak-continuity", "q1", &f.to_string());
            f
        }
    };
    let q2 = match config.get("weak-continuity", "q2") {
        Some(text) => Polynomial::parse(n, text)?,
        None => {
            // gentle affine tilt, partly along the last coordinate, with a
            // constant shift that moves the switching surface off the
            // cutoff's peak
            let tilt = Polynomial::var(n, 1)?
                .scale(&rat(1, 4))
                .add(&Polynomial::var(n, n)?.scale(&rat(1, 10)))?
                .sub(&Polynomial::constant(n, rat(1, 20)))?;
            let f = q1.add(&tilt)?;
            config.set("weak-continuity", "q2", &f.to_string());
            f
        }
    };
    Ok(LadderTarget::MaxOfQuadratics(q1, q2))
}

fn cmd_monotonicity(config: &mut ExperimentConfig) -> Result<CommandOutput> {
    let system = load_system(config)?;
    let n = system.dim();
    let pairs = config.take_usize("monotonicity", "pairs", 10)?;
    let cells = config.take_usize("monotonicity", "cells", 16)?;
    let which = config.take("monotonicity", "operator", "f2");
    let operator = match which.as_str() {
        "f2" => MonotoneOperator::Modified,
        "f2_star" => MonotoneOperator::Starred,
        other => {
            return Err(Error::Config {
                key: "operator".into(),
                msg: format!("unknown operator `{other}` (use f2|f2_star)"),
            })
        }
    };
    let domain = Domain::new_box(vec![-1.0; n], vec![1.0; n], 0.05)?;
    let mut reports = Vec::new();
    let mut all_hold = true;
    let mut csv = String::from("pair,gap,quadrature_error,holds,ellipticity_margin\n");
    for (idx, (u, v)) in identities::standard_monotone_pairs(n, pairs)
        .into_iter()
        .enumerate()
    {
        let rep = identities::monotonicity_gap(&system, &u, &v, &domain, operator, cells)?;
        all_hold &= rep.holds;
        csv.push_str(&format!(
            "{},{:.10e},{:.10e},{},{:.6e}\n",
            idx, rep.gap, rep.quadrature_error, rep.holds, rep.ellipticity_margin
        ));
        reports.push(rep);
    }
    let code = if all_hold { EXIT_OK } else { EXIT_VIOLATION };
    let data = json!({
        "operator": which,
        "reports": reports,
        "all_hold": all_hold,
    });
    Ok((code, data, vec![("monotonicity.csv".into(), csv)]))
}

fn cmd_local_bounds(config: &mut ExperimentConfig) -> Result<CommandOutput> {
    let system = load_system(config)?;
    let n = system.dim();
    let h = config.take_f64("local-bounds", "h", 0.05)?;
    let outer_hw = config.take_f64("local-bounds", "outer_halfwidth", 1.0)?;
    let inner_hw = config.take_f64("local-bounds", "inner_halfwidth", 0.5)?;
    let k = config.take_usize("local-bounds", "k", 2.min(system.m()))?;
    let hom_dim = config.take_usize("local-bounds", "Q", default_hom_dim(&system))?;
    let q = config.take_f64("local-bounds", "q", 1.0)?;
    let r = config.take_f64("local-bounds", "r", 0.0)?;
    if inner_hw >= outer_hw {
        return Err(Error::Config {
            key: "inner_halfwidth".into(),
            msg: "inner box must sit strictly inside the outer box".into(),
        });
    }
    let function = match config.get("local-bounds", "function") {
        Some(text) => Polynomial::parse(n, text)?,
        None => {
            let f = default_function(&system);
            config.set("local-bounds", "function", &f.to_string());
            f
        }
    };
    let outer = Domain::new_box(vec![-outer_hw; n], vec![outer_hw; n], 0.0)?;
    let inner = Domain::new_box(vec![-inner_hw; n], vec![inner_hw; n], 0.0)?;
    let g = GridFunction::sample_polynomial(&function, &outer, h)?;
    let report = measures::local_bounds(&system, &g, &inner, &outer, k, hom_dim, q, r)?;
    let finite = [
        report.sup_ratio,
        report.gradient_ratio,
        report.energy_ratio,
        report.hessian_ratio,
    ]
    .iter()
    .all(|v| v.is_finite());
    let code = if finite { EXIT_OK } else { EXIT_VIOLATION };
    Ok((code, serde_json::to_value(&report).unwrap(), vec![]))
}

fn default_hom_dim(system: &FieldSystem) -> usize {
    // known values for the builtins; custom systems must pass Q explicitly
    let name = system.name();
    if let Some(rest) = name.strip_prefix("euclidean") {
        rest.parse().unwrap_or(system.dim())
    } else if let Some(rest) = name.strip_prefix("heisenberg") {
        rest.parse::<usize>().map(|k| 2 * k + 2).unwrap_or(4)
    } else if name == "engel" {
        7
    } else {
        system.dim()
    }
}

fn cmd_cc_geometry(config: &mut ExperimentConfig, seed: u64) -> Result<CommandOutput> {
    let system = load_system(config)?;
    let n = system.dim();
    let pair_count = config.take_usize("cc-geometry", "distance_pairs", 5)?;
    let samples = config.take_usize("cc-geometry", "volume_samples", 1000)?;
    let radii = config.take_list_f64("cc-geometry", "radii", "0.25, 0.5, 1.0")?;
    let budget = PathBudget::full();
    let coarse = PathBudget::coarse();

    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut distances = Vec::new();
    let mut dist_csv = String::from("pair,distance,endpoint_error\n");
    let mut path_csv = String::new();
    for idx in 0..pair_count {
        let x: Vec<f64> = (0..n).map(|_| rng.gen_range(-0.5..0.5)).collect();
        let y: Vec<f64> = (0..n).map(|_| rng.gen_range(-0.5..0.5)).collect();
        let est = geometry::cc_distance(&system, &x, &y, &budget, seed + idx as u64)?;
        dist_csv.push_str(&format!(
            "{},{:.10e},{:.3e}\n",
            idx, est.upper_bound, est.endpoint_error
        ));
        if idx == 0 {
            path_csv = est.path.to_csv();
        }
        distances.push(json!({
            "x": x, "y": y,
            "upper_bound": est.upper_bound,
            "endpoint_error": est.endpoint_error,
        }));
    }

    let fit =
        geometry::homogeneous_dimension(&system, &vec![0.0; n], &radii, samples, seed, &coarse)?;
    let mut vol_csv = String::from("R,volume,stderr\n");
    for v in &fit.volumes {
        vol_csv.push_str(&format!(
            "{:.6e},{:.10e},{:.10e}\n",
            v.radius, v.volume, v.standard_error
        ));
    }
    let data = json!({
        "distances": distances,
        "dimension_fit": fit,
    });
    let csvs = vec![
        ("cc-distances.csv".to_string(), dist_csv),
        ("cc-volumes.csv".to_string(), vol_csv),
        ("cc-path0.csv".to_string(), path_csv),
    ];
    Ok((EXIT_OK, data, csvs))
}

fn cmd_exponents(config: &mut ExperimentConfig) -> Result<CommandOutput> {
    let k = config.take_usize("exponents", "k", 2)?;
    let m = config.take_usize("exponents", "m", 2)?;
    let q_dim = config.take_usize("exponents", "Q", 4)?;
    let report = geometry::exponent_report(k, m, q_dim).map_err(|e| match e {
        Error::IndexOutOfRange { .. } | Error::RejectedInput(_) => Error::Config {
            key: "k/m/Q".into(),
            msg: format!("{e}"),
        },
        other => other,
    })?;
    Ok((EXIT_OK, serde_json::to_value(&report).unwrap(), vec![]))
}
