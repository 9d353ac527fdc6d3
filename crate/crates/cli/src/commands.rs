//! Subcommand implementations and their text output.

use std::fs;
use std::path::Path;

use dyndeg_core::algebra::RatInterval;
use dyndeg_core::certify::report::ReportConfig;
use dyndeg_core::certify::{
    classify_spectrum, cone_condition, full_report, lambda1, lambda2_exact, transcendence_conditions, verify,
    Certificate, ConeConfig, ConeEvidence, Hyperbolicity, SequenceCert, Verdict,
};
use dyndeg_core::maps::{build_fa, degree_bound_fa, homogenize_monomial, orbit_heights, IntMat3, ProjPointQ};
use dyndeg_core::psi::psi;
use dyndeg_core::Error;
use serde::Serialize;

use crate::{Cli, Command};

pub const INPUT_ERROR: u8 = 3;
const UNKNOWN: u8 = 2;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub msg: String,
}

impl CliError {
    fn input(msg: impl Into<String>) -> Self {
        Self { code: INPUT_ERROR, msg: msg.into() }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidInput(_) => INPUT_ERROR,
            _ => UNKNOWN,
        };
        Self { code, msg: e.to_string() }
    }
}

type Outcome = Result<u8, CliError>;

pub fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Psi { matrix, n } => {
            reject_out(cli)?;
            println!("{}", psi(&read_matrix(matrix)?, *n));
            Ok(0)
        }
        Command::Degree { matrix } => {
            reject_out(cli)?;
            degree(&read_matrix(matrix)?)
        }
        Command::Lambda1 { matrix } => run_lambda1(cli, &read_matrix(matrix)?),
        Command::Lambda2 { matrix } => run_lambda2(cli, &read_matrix(matrix)?),
        Command::ConeCheck { matrix } => cone_check(cli, &read_matrix(matrix)?),
        Command::Transcendence { matrix } => transcendence(cli, &read_matrix(matrix)?),
        Command::Report { matrix, profile_d } => report(cli, &read_matrix(matrix)?, profile_d),
        Command::Orbit { matrix, point, steps } => {
            reject_out(cli)?;
            orbit(cli, &read_matrix(matrix)?, point, *steps)
        }
        Command::Verify { certificate } => run_verify(certificate),
    }
}

fn read_matrix(path: &Path) -> Result<IntMat3, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
    IntMat3::parse(&text).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn reject_out(cli: &Cli) -> Result<(), CliError> {
    match &cli.out {
        Some(_) => Err(CliError::input("--out is not supported by this subcommand")),
        None => Ok(()),
    }
}

fn write_out<T: Serialize>(cli: &Cli, value: &T) -> Result<(), CliError> {
    if let Some(path) = &cli.out {
        let json = serde_json::to_string_pretty(value).expect("serializable") + "\n";
        fs::write(path, json).map_err(|e| CliError::input(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

fn cone_config(cli: &Cli) -> ConeConfig {
    ConeConfig {
        moduli: cli.moduli.clone(),
        step_cap: cli.step_cap,
        baker_target: cli.baker_target.clone(),
        ..ConeConfig::default()
    }
}

/// Integer endpoints print as integers, others with 12 decimals.
fn show(iv: &RatInterval) -> String {
    let (lo, hi) = (iv.lo(), iv.hi());
    if lo.is_integer() && hi.is_integer() {
        if lo == hi {
            return lo.to_string();
        }
        return format!("[{lo}, {hi}]");
    }
    iv.to_string()
}

fn approx(iv: &RatInterval) -> String {
    let (lo, hi) = iv.to_f64_bounds();
    format!("{:.10}", (lo + hi) / 2.0)
}

fn degree(a: &IntMat3) -> Outcome {
    let inv = a.inverse()?;
    let h = homogenize_monomial(a);
    println!("deg h_A       = {}", h.degree);
    println!("deg h_A⁻¹     = {}", homogenize_monomial(&inv).degree);
    println!("deg f_A      <= {}", degree_bound_fa(a));
    println!("deg f_A⁻¹    <= {}", degree_bound_fa(&inv));
    println!("exponents of h_A:");
    for row in h.expo {
        println!("  {row:?}");
    }
    Ok(0)
}

fn run_lambda1(cli: &Cli, a: &IntMat3) -> Outcome {
    let cone = cone_condition(a, &cone_config(cli));
    let check = cone.check();
    println!("cone condition: {} ({})", check.verdict, check.detail);
    if check.verdict != Verdict::Pass {
        println!("λ₁ ∈ [1, {}] (a priori bracket only)", degree_bound_fa(a));
        return Ok(check.verdict.exit_code() as u8);
    }
    let e = lambda1(a, &cone, &cli.eps)?;
    println!("λ₁ ∈ {}", e.interval);
    println!("λ₁ ≈ {}", approx(&e.interval));
    println!("series terms {}, tail block {}", e.terms, e.m);
    write_out(cli, &e)?;
    Ok(0)
}

fn run_lambda2(cli: &Cli, a: &IntMat3) -> Outcome {
    let x = lambda2_exact(a, &cli.eps)?;
    println!("polynomial: {}", x.polynomial);
    println!("root ∈ {}", x.root);
    println!("λ₂ ≈ {}", approx(&x.root));
    println!("recurrence onset {}, P_n = {:?}, …", x.onset, first_terms(&x.terms));
    write_out(cli, &x)?;
    Ok(0)
}

fn first_terms(t: &[num_bigint::BigInt]) -> Vec<String> {
    t.iter().take(6).map(|x| x.to_string()).collect()
}

fn cone_check(cli: &Cli, a: &IntMat3) -> Outcome {
    let spec = classify_spectrum(a);
    println!("spectral class: {}", spec.class.name());
    let cone = cone_condition(a, &cone_config(cli));
    match &cone {
        ConeEvidence::Perron { cert } => {
            for m in &cert.margins {
                println!("v = {:?}: margin from n = {}, bound ≈ {}", m.v, m.onset, approx(&m.bound));
            }
        }
        ConeEvidence::Sequences(set) => {
            for s in &set.sequences {
                let what = match (&s.cert, &s.failure) {
                    (Some(SequenceCert::NeverZero(c)), _) => format!("never zero mod {} (period {})", c.m, c.period),
                    (Some(SequenceCert::ZeroOnlyAtStart(c)), _) => format!(
                        "zero only at n = 0 below lcm {} ({} moduli, up to {})",
                        c.lcm_periods,
                        c.moduli_used.len(),
                        c.moduli_used.last().map_or(0, |m| m.0)
                    ),
                    (None, Some(f)) => format!("UNCERTIFIED: {f}"),
                    (None, None) => "UNCERTIFIED".into(),
                };
                println!("#{:<2} v = {:?}, w = {:?}: {what}", s.index, s.v, s.w);
            }
        }
        ConeEvidence::Fails { n, v } => println!("fails at n = {n} for v = {v:?}"),
        ConeEvidence::Unknown { reason } => println!("unknown: {reason}"),
        ConeEvidence::Skipped => println!("skipped"),
    }
    let check = cone.check();
    println!("cone condition: {} ({})", check.verdict, check.detail);
    write_out(cli, &cone)?;
    Ok(check.verdict.exit_code() as u8)
}

fn transcendence(cli: &Cli, a: &IntMat3) -> Outcome {
    let (t, _) = transcendence_conditions(a, &cone_config(cli));
    println!("irreducible charpoly:  {} ({})", t.cond_irreducible.verdict, t.cond_irreducible.detail);
    println!("pair and angle:        {} ({})", t.cond_pair_and_angle.verdict, t.cond_pair_and_angle.detail);
    let units = t.cond_sigma_units.iter().filter(|s| s.verdict != Verdict::Pass).count();
    println!(
        "σ non-units:           {} ({} values, {} not certified)",
        t.sigma_verdict(),
        t.cond_sigma_units.len(),
        units
    );
    let r = &t.cond_ratio_units;
    println!(
        "ratio non-units:       {} ({} of {} pairs checked, {} exempt)",
        r.verdict, r.checked, r.pairs_total, r.exempt
    );
    println!("cone condition:        {} ({})", t.cone_condition.verdict, t.cone_condition.detail);
    println!("overall: {}: {}", t.overall, t.statement);
    write_out(cli, &t)?;
    Ok(t.overall.exit_code() as u8)
}

fn hyperbolicity_text(h: &Hyperbolicity) -> String {
    match h {
        Hyperbolicity::Hyperbolic { p } => format!("{p}-cohomologically hyperbolic"),
        Hyperbolicity::None => "not cohomologically hyperbolic".into(),
        Hyperbolicity::Undecidable => "undecided (enclosures overlap)".into(),
    }
}

fn report(cli: &Cli, a: &IntMat3, dims: &[usize]) -> Outcome {
    let cfg = ReportConfig {
        cone: cone_config(cli),
        eps: cli.eps.clone(),
        profile_dims: dims.to_vec(),
        ..ReportConfig::default()
    };
    let c = full_report(a, &cfg);
    print_summary(a, &c);
    if let Some(path) = &cli.out {
        fs::write(path, c.to_json()).map_err(|e| CliError::input(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(match c.hyperbolicity {
        Hyperbolicity::Hyperbolic { .. } => 0,
        Hyperbolicity::None => 1,
        Hyperbolicity::Undecidable => UNKNOWN,
    })
}

fn print_summary(a: &IntMat3, c: &Certificate) {
    let (l1, l2) = (&c.lambda.l1, &c.lambda.l2);
    println!("matrix: {}", c.matrix);
    println!(
        "spectrum: A {}, A⁻¹ {}",
        c.spectral_class.class.name(),
        c.inverse_spectral_class.class.name()
    );
    println!("λ₀ = 1");
    let trans = match l1.transcendence.overall {
        Verdict::Pass => "transcendental: certified".to_string(),
        v => format!("transcendence hypotheses {v}"),
    };
    // Ψ(A) bounds λ₁ from below only under the cone condition.
    let lower = match c.cone_evidence.verdict() {
        Verdict::Pass => psi(a, 1),
        _ => 1.into(),
    };
    println!("λ₁ ∈ [{lower}, {}] ({trans})", degree_bound_fa(a));
    match l1.status.as_str() {
        "bracket" => println!("     no refinement: {}", l1.note.as_deref().unwrap_or("")),
        status => println!("     {status}: {} ≈ {}", show(&l1.bounds), approx(&l1.bounds)),
    }
    if let Some(x) = &l1.exact {
        println!("     root of {}", x.polynomial);
    }
    match &l2.polynomial {
        Some(p) => println!("λ₂ ≈ {} ∈ {}, root of {p}", approx(&l2.bounds), show(&l2.bounds)),
        None => println!("λ₂ ∈ {} ({})", show(&l2.bounds), l2.note.as_deref().unwrap_or("bracket")),
    }
    println!("λ₃ = 1");
    println!("verdict: {}", hyperbolicity_text(&c.hyperbolicity));
    for p in &c.profiles {
        let degs: Vec<String> = p.degrees.iter().map(approx).collect();
        println!("profile d = {}: ({})", p.d, degs.join(", "));
    }
    for n in &c.notes {
        println!("note: {n}");
    }
}

/// Long coordinates are summarized by their digit counts.
fn show_point(p: &ProjPointQ) -> String {
    let s = p.to_string();
    if s.len() <= 80 {
        return s;
    }
    let digits: Vec<String> = p.coords().iter().map(|x| x.to_string().trim_start_matches('-').len().to_string()).collect();
    format!("<{} digits>", digits.join(":"))
}

fn orbit(cli: &Cli, a: &IntMat3, point: &str, steps: usize) -> Outcome {
    let p = ProjPointQ::parse(point).map_err(|e| CliError::input(e.to_string()))?;
    let maps = build_fa(a)?;
    let o = orbit_heights(&maps.forward, &p, steps, &cli.eps);
    for (k, (q, h)) in o.points.iter().zip(&o.heights).enumerate() {
        let root = match k {
            0 => String::new(),
            _ => format!(", h^(1/{k}) ≈ {}", approx(&o.root_ratios[k - 1])),
        };
        println!("f^{k}(P) = {}: h ≈ {}{root}", show_point(q), approx(h));
    }
    match o.stopped {
        None => Ok(0),
        Some(e @ Error::IndeterminatePoint { .. }) => {
            println!("stopped: {e}");
            Ok(1)
        }
        Some(e) => Err(e.into()),
    }
}

fn run_verify(path: &Path) -> Outcome {
    let text = fs::read_to_string(path).map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
    let c = Certificate::from_json(&text)?;
    let r = verify(&c);
    for (name, v) in &r.checks {
        println!("{v:<7} {name}");
    }
    println!("overall: {}", r.overall);
    Ok(r.overall.exit_code() as u8)
}
