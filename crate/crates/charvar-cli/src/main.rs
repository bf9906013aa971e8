//! Command-line reports over the exact character-variety toolkit.
//!
//! Every subcommand prints a fixed-format report — `command:` and `input:`
//! headers, one `check <name>: pass|fail [detail]` line per verification,
//! and a final `overall:` line — and is byte-for-byte deterministic given
//! its inputs, flags, and seed. Witnesses are exact rationals, never
//! decimals. Exit codes: 0 when the overall status is pass, 1 when a check
//! fails, 2 for input or usage errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use charvar_core::charvar::{
    circle_trace, classify_stratum, find_conjugator, is_irreducible, kostov_generic,
    kostov_witness, rep_validate, very_generic, very_generic_witness, Problem, RepTuple, Stability,
};
use charvar_core::dual_complex::{
    is_homology_sphere, mprime_boundary_model, q_boundary_model, reduced_homology, DeltaComplex,
};
use charvar_core::exact_linear::{Mat2, Scalar};
use charvar_core::fenchel_nielsen::{fn_decode, fn_encode, sample_fn, FNCoords};
use clap::{Parser, Subcommand};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;
use serde::Serialize;

#[derive(Parser)]
#[command(
    name = "charvar",
    version,
    about = "Exact coordinates, strata, and boundary homology for punctured-sphere character varieties"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report the Kostov and very-generic conditions for a class tuple
    CheckGeneric {
        /// problem JSON file
        problem: PathBuf,
    },
    /// Convert between coordinates and representation tuples
    #[command(subcommand)]
    Fn(FnCommand),
    /// Seeded decode/encode round trips with conjugacy verification
    Roundtrip {
        /// problem JSON file
        problem: PathBuf,
        /// base seed; trial i samples with seed + i
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// number of trials (must be >= 1)
        #[arg(long, default_value_t = 10)]
        trials: u64,
        /// height bound for sampled rationals (must be >= 1)
        #[arg(long, default_value_t = 8)]
        height: u32,
    },
    /// Homology profile of a complex file or a built-in boundary model
    Homology {
        /// complex JSON file (omit when using --model)
        file: Option<PathBuf>,
        /// built-in model: "q" or "sphere-check"
        #[arg(long)]
        model: Option<String>,
        /// number of punctures for --model sphere-check
        #[arg(long)]
        k: Option<usize>,
    },
    /// Stability/regularity stratum of a representation tuple
    Stratify {
        /// problem JSON file
        problem: PathBuf,
        /// representation tuple JSON file
        rep: PathBuf,
    },
}

#[derive(Subcommand)]
enum FnCommand {
    /// Coordinates to representation tuple
    Decode {
        problem: PathBuf,
        coords: PathBuf,
        /// write the decoded tuple here as JSON
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Representation tuple to coordinates
    Encode {
        problem: PathBuf,
        rep: PathBuf,
        /// write the recovered coordinates here as JSON
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

/// Accumulates the fixed-format report; `finish` prints it and returns the
/// overall verdict.
struct Report {
    lines: Vec<String>,
    failed: bool,
}

impl Report {
    fn new(command: &str, input: &str) -> Self {
        Report {
            lines: vec![format!("command: {command}"), format!("input: {input}")],
            failed: false,
        }
    }

    fn check(&mut self, name: &str, ok: bool, detail: Option<String>) {
        let verdict = if ok { "pass" } else { "fail" };
        let line = match detail {
            Some(d) => format!("check {name}: {verdict} [{d}]"),
            None => format!("check {name}: {verdict}"),
        };
        self.lines.push(line);
        self.failed |= !ok;
    }

    fn note(&mut self, line: String) {
        self.lines.push(line);
    }

    fn finish(mut self) -> bool {
        let pass = !self.failed;
        self.lines
            .push(format!("overall: {}", if pass { "pass" } else { "fail" }));
        for line in &self.lines {
            println!("{line}");
        }
        pass
    }
}

fn read_json<T: DeserializeOwned>(path: &Path, what: &str) -> Result<T> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading {what} file {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {what} file {}", path.display()))
}

fn write_json<T: Serialize>(path: &Path, value: &T, what: &str) -> Result<()> {
    let text = serde_json::to_string(value).expect("serialization is infallible");
    fs::write(path, text + "\n").with_context(|| format!("writing {what} file {}", path.display()))
}

fn fmt_signs(signs: &[i8]) -> String {
    let parts: Vec<String> = signs.iter().map(|s| format!("{s:+}")).collect();
    parts.join(",")
}

fn cmd_check_generic(problem_path: &Path) -> Result<bool> {
    let problem: Problem = read_json(problem_path, "problem")?;
    let mut report = Report::new("check-generic", &problem_path.display().to_string());
    let classes = problem.classes();
    let kostov = kostov_generic(classes)?;
    let kostov_detail = if kostov {
        None
    } else {
        kostov_witness(classes)?
            .map(|signs| format!("witness: signs ({}) have product 1", fmt_signs(&signs)))
    };
    report.check("kostov", kostov, kostov_detail);
    let vg = very_generic(classes)?;
    let vg_detail = if vg {
        None
    } else {
        very_generic_witness(classes)?.map(|w| format!("witness: {w}"))
    };
    report.check("very-generic", vg, vg_detail);
    Ok(report.finish())
}

fn cmd_decode(problem_path: &Path, coords_path: &Path, output: Option<&Path>) -> Result<bool> {
    let problem: Problem = read_json(problem_path, "problem")?;
    let coords: FNCoords = read_json(coords_path, "coordinates")?;
    let mut report = Report::new(
        "fn decode",
        &format!("{} {}", problem_path.display(), coords_path.display()),
    );
    let rep = match fn_decode(&coords, &problem) {
        Ok(rep) => rep,
        Err(err) => {
            report.check("decode", false, Some(err.to_string()));
            return Ok(report.finish());
        }
    };
    report.check("decode", true, None);
    match rep_validate(&rep, &problem) {
        Ok(()) => report.check("tuple-valid", true, None),
        Err(err) => report.check("tuple-valid", false, Some(err.to_string())),
    }
    let k = problem.k();
    let traces_match =
        (2..=k - 2).all(|i| circle_trace(&rep, i).is_ok_and(|t| &t == coords.coords()[i - 2].t()));
    report.check("prefix-traces", traces_match, None);
    let stratum = classify_stratum(&rep, &problem)?;
    report.check(
        "pants-stability",
        stratum.sigma().iter().all(|s| *s == Stability::Stable),
        None,
    );
    report.check(
        "interior-regularity",
        stratum.gclass().iter().all(|g| g.is_regular()),
        None,
    );
    report.check("irreducibility", is_irreducible(&rep), None);
    if let Some(path) = output {
        write_json(path, &rep, "representation")?;
        report.note(format!("output: {}", path.display()));
    }
    Ok(report.finish())
}

fn cmd_encode(problem_path: &Path, rep_path: &Path, output: Option<&Path>) -> Result<bool> {
    let problem: Problem = read_json(problem_path, "problem")?;
    let rep: RepTuple = read_json(rep_path, "representation")?;
    let mut report = Report::new(
        "fn encode",
        &format!("{} {}", problem_path.display(), rep_path.display()),
    );
    if let Err(err) = rep_validate(&rep, &problem) {
        report.check("tuple-valid", false, Some(err.to_string()));
        return Ok(report.finish());
    }
    report.check("tuple-valid", true, None);
    let stratum = classify_stratum(&rep, &problem)?;
    report.note(format!(
        "stratum: {}",
        serde_json::to_string(&stratum).expect("serialization is infallible")
    ));
    report.check("stratum-open", stratum.in_open_stratum(), None);
    match fn_encode(&rep, &problem) {
        Ok(coords) => {
            report.check("encodable", true, None);
            report.note(format!(
                "coordinates: {}",
                serde_json::to_string(&coords).expect("serialization is infallible")
            ));
            if let Some(path) = output {
                write_json(path, &coords, "coordinates")?;
                report.note(format!("output: {}", path.display()));
            }
        }
        Err(err) => report.check("encodable", false, Some(err.to_string())),
    }
    Ok(report.finish())
}

fn draw_scalar(rng: &mut ChaCha8Rng, height: u32) -> Scalar {
    let span = 2 * u64::from(height) + 1;
    let numer = (rng.next_u64() % span) as i64 - i64::from(height);
    let denom = 1 + (rng.next_u64() % u64::from(height)) as i64;
    Scalar::fraction(numer, denom).expect("positive denominator")
}

fn draw_invertible(rng: &mut ChaCha8Rng) -> Mat2 {
    loop {
        let m = Mat2::new([
            [draw_scalar(rng, 6), draw_scalar(rng, 6)],
            [draw_scalar(rng, 6), draw_scalar(rng, 6)],
        ]);
        if !m.det().is_zero() {
            return m;
        }
    }
}

/// One round trip: sample, decode, validate, re-encode exactly, then encode a
/// conjugated representative and verify the decoded result is conjugate via
/// an explicit intertwiner.
fn run_trial(problem: &Problem, trial_seed: u64, height: u32) -> Result<(), String> {
    let err = |stage: &str, e: &dyn std::fmt::Display| format!("{stage}: {e}");
    let coords = sample_fn(problem, trial_seed, height).map_err(|e| err("sample", &e))?;
    let rep = fn_decode(&coords, problem).map_err(|e| err("decode", &e))?;
    rep_validate(&rep, problem).map_err(|e| err("validate", &e))?;
    let back = fn_encode(&rep, problem).map_err(|e| err("encode", &e))?;
    if back != coords {
        return Err("re-encoded coordinates differ".into());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(trial_seed ^ 0x9e37_79b9_7f4a_7c15);
    let g = draw_invertible(&mut rng);
    let conj = rep.conjugated(&g).map_err(|e| err("conjugate", &e))?;
    let conj_coords = fn_encode(&conj, problem).map_err(|e| err("encode conjugate", &e))?;
    if conj_coords != coords {
        return Err("conjugated encode differs".into());
    }
    let decoded = fn_decode(&conj_coords, problem).map_err(|e| err("re-decode", &e))?;
    let conjugator =
        find_conjugator(&decoded, &conj).ok_or_else(|| "no conjugator found".to_string())?;
    for (m_dec, m_conj) in decoded.matrices().iter().zip(conj.matrices()) {
        if conjugator.rep() * m_dec != m_conj * conjugator.rep() {
            return Err("conjugator does not intertwine the tuples".into());
        }
    }
    Ok(())
}

fn cmd_roundtrip(problem_path: &Path, seed: u64, trials: u64, height: u32) -> Result<bool> {
    if trials == 0 {
        bail!("--trials must be >= 1");
    }
    if height == 0 {
        bail!("--height must be >= 1");
    }
    let problem: Problem = read_json(problem_path, "problem")?;
    let mut report = Report::new(
        "roundtrip",
        &format!(
            "{} seed={seed} trials={trials} height={height}",
            problem_path.display()
        ),
    );
    let mut passed = 0u64;
    let mut first_failure: Option<String> = None;
    for trial in 0..trials {
        let trial_seed = seed + trial;
        match run_trial(&problem, trial_seed, height) {
            Ok(()) => passed += 1,
            Err(why) => {
                first_failure
                    .get_or_insert_with(|| format!("trial {trial} seed {trial_seed}: {why}"));
            }
        }
    }
    let detail = match &first_failure {
        None => format!("{passed}/{trials}"),
        Some(failure) => format!("{passed}/{trials}; first failure {failure}"),
    };
    report.check("round-trips", first_failure.is_none(), Some(detail));
    Ok(report.finish())
}

fn cmd_homology(file: Option<&Path>, model: Option<&str>, k: Option<usize>) -> Result<bool> {
    let profile_line = |c: &DeltaComplex| {
        format!(
            "profile: {}",
            serde_json::to_string(&reduced_homology(c)).expect("serialization is infallible")
        )
    };
    match (file, model) {
        (Some(path), None) => {
            if k.is_some() {
                bail!("--k only applies to --model sphere-check");
            }
            let complex: DeltaComplex = read_json(path, "complex")?;
            let mut report = Report::new("homology", &path.display().to_string());
            report.note(profile_line(&complex));
            Ok(report.finish())
        }
        (None, Some("q")) => {
            if k.is_some() {
                bail!("--k only applies to --model sphere-check");
            }
            let mut report = Report::new("homology", "model q");
            report.note(profile_line(&q_boundary_model()));
            Ok(report.finish())
        }
        (None, Some("sphere-check")) => {
            let k = k.context("--model sphere-check requires --k")?;
            let complex = mprime_boundary_model(k)?;
            let n = 2 * (k - 3) - 1;
            let mut report = Report::new("homology", &format!("model sphere-check k={k}"));
            report.note(profile_line(&complex));
            report.check(
                &format!("homology-sphere dim {n}"),
                is_homology_sphere(&complex, n),
                None,
            );
            Ok(report.finish())
        }
        (None, Some(other)) => bail!("unknown model {other:?}; expected \"q\" or \"sphere-check\""),
        (Some(_), Some(_)) => bail!("give either a complex file or --model, not both"),
        (None, None) => bail!("give a complex file or --model"),
    }
}

fn cmd_stratify(problem_path: &Path, rep_path: &Path) -> Result<bool> {
    let problem: Problem = read_json(problem_path, "problem")?;
    let rep: RepTuple = read_json(rep_path, "representation")?;
    let mut report = Report::new(
        "stratify",
        &format!("{} {}", problem_path.display(), rep_path.display()),
    );
    if let Err(err) = rep_validate(&rep, &problem) {
        report.check("tuple-valid", false, Some(err.to_string()));
        return Ok(report.finish());
    }
    report.check("tuple-valid", true, None);
    let stratum = classify_stratum(&rep, &problem)?;
    report.note(format!(
        "stratum: {}",
        serde_json::to_string(&stratum).expect("serialization is infallible")
    ));
    report.note(format!(
        "M-prime: {}",
        if stratum.in_open_stratum() {
            "yes"
        } else {
            "no"
        }
    ));
    Ok(report.finish())
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::CheckGeneric { problem } => cmd_check_generic(&problem),
        Command::Fn(FnCommand::Decode {
            problem,
            coords,
            output,
        }) => cmd_decode(&problem, &coords, output.as_deref()),
        Command::Fn(FnCommand::Encode {
            problem,
            rep,
            output,
        }) => cmd_encode(&problem, &rep, output.as_deref()),
        Command::Roundtrip {
            problem,
            seed,
            trials,
            height,
        } => cmd_roundtrip(&problem, seed, trials, height),
        Command::Homology { file, model, k } => cmd_homology(file.as_deref(), model.as_deref(), k),
        Command::Stratify { problem, rep } => cmd_stratify(&problem, &rep),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
