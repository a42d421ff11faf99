//! Command-line surface: identity verification, Hankel tables, recurrence
//! synthesis, Heine checks, the sequence registry, and a determinant-kernel
//! benchmark. One JSON document per invocation on stdout; exit 0 on
//! success/verified, 1 when a mismatch was found, 2 on usage errors.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use hankel::identity::{
    combined_hankel_det, poly_ratio_confluent, LinearCombination, PointConfiguration,
};
use hankel::heine;
use hankel::matrix::Matrix;
use hankel::orthopoly::{
    build_family, hankel_base_det, moments_from_coeffs, FamilyKind, MomentSequence, MomentSource,
    RecurrenceCoeffs,
};
use hankel::rational::{format_rational, parse_rational_list, ratio, Rat};
use hankel::recurrence::{
    c1_value, fit_recurrence, scaled_hankel_seq, symmetry_check, synthesize, verify_recurrence,
};
use hankel::sequences;
use hankel::ring::Ring;

#[derive(Parser)]
#[command(
    name = "hankel",
    about = "Exact Hankel determinants of moment combinations: verify, tabulate, synthesize",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Pretty-print the JSON output.
    #[arg(long, global = true)]
    pretty: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Verify the central determinant identity for sizes 0..=n.
    #[command(name = "verify-theorem1")]
    VerifyTheorem1(VerifyArgs),
    /// Shifted Hankel determinant of a registry sequence.
    Hankel(HankelArgs),
    /// Synthesize and cross-check the order-2^d recurrence of a scaled
    /// Hankel sequence.
    Recurrence(RecurrenceArgs),
    /// Check the multisum identity for a discrete measure.
    Heine(HeineArgs),
    /// List the sequence registry, or show one sequence with its tables.
    Sequences(SequencesArgs),
    /// Time both determinant kernels on a 12x12 Hankel matrix.
    Bench,
}

#[derive(Args)]
struct VerifyArgs {
    /// Recurrence data file: {"s_prefix":[..],"s_tail":"..","t_prefix":[..],"t_tail":".."}
    /// (optionally with a "moments" array overriding the path-realised moments).
    #[arg(long)]
    coeffs: Option<String>,
    /// Comma-separated points, repeats meaning multiplicities; omit to run
    /// seeded random instances instead.
    #[arg(long, allow_hyphen_values = true)]
    points: Option<String>,
    /// Largest matrix size to verify.
    #[arg(long, default_value_t = 4)]
    n: usize,
    /// Seed for randomized instance generation.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct HankelArgs {
    /// Registry sequence name.
    #[arg(long)]
    sequence: String,
    /// Index shift d of the Hankel matrix entries.
    #[arg(long, default_value_t = 0)]
    shift: usize,
    /// Matrix size.
    #[arg(long)]
    n: usize,
}

#[derive(Args)]
struct RecurrenceArgs {
    /// Registry sequence name (alternative to --coeffs).
    #[arg(long)]
    sequence: Option<String>,
    /// Recurrence data file (alternative to --sequence).
    #[arg(long)]
    coeffs: Option<String>,
    /// Combination coefficients lambda_0,...,lambda_d with lambda_d = 1.
    #[arg(long, allow_hyphen_values = true)]
    lambda: String,
}

#[derive(Args)]
struct HeineArgs {
    /// Measure file: {"atoms":[{"x":"1","w":"1/2"},...]}.
    #[arg(long)]
    measure: String,
    /// Comma-separated twist points (repeats meaning multiplicities).
    #[arg(long, allow_hyphen_values = true)]
    points: Option<String>,
    /// Hankel size.
    #[arg(long)]
    n: usize,
}

#[derive(Args)]
struct SequencesArgs {
    /// Show one sequence in detail.
    #[arg(long)]
    sequence: Option<String>,
    /// Table size for the per-sequence shifted Hankel determinants.
    #[arg(long, default_value_t = 6)]
    n: usize,
}

fn fail_usage(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn read_json_file(path: &str) -> Result<serde_json::Value, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))?;
    serde_json::from_str(&text).map_err(|e| format!("malformed JSON in {path}: {e}"))
}

fn emit(value: &serde_json::Value, pretty: bool) {
    if pretty {
        println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
    } else {
        println!("{value}");
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let pretty = cli.pretty;
    let result = match cli.command {
        Command::VerifyTheorem1(args) => cmd_verify(args, pretty),
        Command::Hankel(args) => cmd_hankel(args, pretty),
        Command::Recurrence(args) => cmd_recurrence(args, pretty),
        Command::Heine(args) => cmd_heine(args, pretty),
        Command::Sequences(args) => cmd_sequences(args, pretty),
        Command::Bench => cmd_bench(pretty),
    };
    match result {
        Ok(code) => code,
        Err(msg) => fail_usage(&msg),
    }
}

fn load_coeffs(path: &str) -> Result<(RecurrenceCoeffs, Option<Vec<Rat>>), String> {
    let doc = read_json_file(path)?;
    let coeffs = RecurrenceCoeffs::from_json(&doc).map_err(|e| e.to_string())?;
    let moments = match doc.get("moments") {
        None => None,
        Some(serde_json::Value::Array(items)) => {
            let mut out = Vec::with_capacity(items.len());
            for (i, v) in items.iter().enumerate() {
                let s = v
                    .as_str()
                    .ok_or_else(|| format!("moments[{i}] must be a string"))?;
                out.push(
                    hankel::rational::parse_rational(s)
                        .map_err(|e| format!("moments[{i}]: {e}"))?,
                );
            }
            Some(out)
        }
        Some(_) => return Err("\"moments\" must be an array of strings".into()),
    };
    Ok((coeffs, moments))
}

fn parse_points(text: &str) -> Result<PointConfiguration, String> {
    let pts = parse_rational_list(text).map_err(|e| e.to_string())?;
    Ok(PointConfiguration::from_points(&pts))
}

fn cmd_verify(args: VerifyArgs, pretty: bool) -> Result<ExitCode, String> {
    match (&args.coeffs, &args.points) {
        (Some(path), Some(points)) => {
            let (coeffs, user_moments) = load_coeffs(path)?;
            let cfg = parse_points(points)?;
            verify_instances(&coeffs, &cfg, args.n, user_moments, pretty)
        }
        _ => verify_random(args, pretty),
    }
}

/// Verify sizes 0..=n for one configuration, reporting the first failure.
fn verify_instances(
    coeffs: &RecurrenceCoeffs,
    cfg: &PointConfiguration,
    n_max: usize,
    user_moments: Option<Vec<Rat>>,
    pretty: bool,
) -> Result<ExitCode, String> {
    let d = cfg.degree();
    let mut reports = Vec::new();
    let mut first_failing = None;
    for n in 0..=n_max {
        let report = match &user_moments {
            None => hankel::identity::verify(coeffs, cfg, n),
            Some(values) => {
                // identity with the supplied moments on the Hankel side
                let needed = if n == 0 { 0 } else { 2 * n - 2 + d + 1 };
                if values.len() < needed {
                    return Err(format!(
                        "moments array too short: need {needed}, have {}",
                        values.len()
                    ));
                }
                let m = MomentSequence::new(values.clone(), MomentSource::UserSupplied);
                let lc = LinearCombination::from_points(cfg);
                let lhs = combined_hankel_det(&m, &lc, n).map_err(|e| e.to_string())?;
                let fam = build_family(coeffs, FamilyKind::P, n + d);
                let rhs_ratio =
                    poly_ratio_confluent(&fam, cfg, n).map_err(|e| e.to_string())?;
                let base_det = hankel_base_det(coeffs, n);
                let sign: i8 = if (n * d).is_multiple_of(2) { 1 } else { -1 };
                let signed = if sign == 1 {
                    base_det.clone()
                } else {
                    -&base_det
                };
                let equal = lhs == &signed * &rhs_ratio;
                hankel::IdentityReport {
                    n,
                    d,
                    lhs,
                    rhs_ratio,
                    base_det,
                    sign,
                    equal,
                }
            }
        };
        if !report.equal && first_failing.is_none() {
            first_failing = Some(n);
        }
        reports.push(report.to_json());
    }
    let equal = first_failing.is_none();
    emit(
        &json!({
            "command": "verify-theorem1",
            "d": d,
            "max_n": n_max,
            "equal": equal,
            "first_failing_n": first_failing,
            "reports": reports,
        }),
        pretty,
    );
    Ok(if equal { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

/// Seeded random instances when points (and possibly coefficients) are not
/// supplied.
fn verify_random(args: VerifyArgs, pretty: bool) -> Result<ExitCode, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let fixed_coeffs = match &args.coeffs {
        Some(path) => Some(load_coeffs(path)?.0),
        None => None,
    };
    let rrat = |rng: &mut ChaCha8Rng| ratio(rng.gen_range(-9..=9), rng.gen_range(1..=9));
    let trials = 20;
    let mut failures = Vec::new();
    for trial in 0..trials {
        let coeffs = match &fixed_coeffs {
            Some(c) => c.clone(),
            None => loop {
                let s_prefix: Vec<Rat> = (0..rng.gen_range(0..=1)).map(|_| rrat(&mut rng)).collect();
                let t_prefix: Vec<Rat> = (0..rng.gen_range(0..=1))
                    .map(|_| rrat(&mut rng))
                    .collect();
                let built = RecurrenceCoeffs::new(s_prefix, rrat(&mut rng), t_prefix, rrat(&mut rng));
                if let Ok(c) = built {
                    break c;
                }
            },
        };
        let n = rng.gen_range(0..=args.n);
        let d = rng.gen_range(0..=3);
        let mut pts: Vec<Rat> = Vec::new();
        while pts.len() < d {
            let v = rrat(&mut rng);
            if !pts.contains(&v) {
                pts.push(v);
            }
        }
        let cfg = PointConfiguration::from_points(&pts);
        let report = hankel::identity::verify(&coeffs, &cfg, n);
        if !report.equal {
            failures.push(json!({"trial": trial, "report": report.to_json()}));
        }
    }
    let equal = failures.is_empty();
    emit(
        &json!({
            "command": "verify-theorem1",
            "mode": "random",
            "seed": args.seed,
            "instances": trials,
            "equal": equal,
            "failures": failures,
        }),
        pretty,
    );
    Ok(if equal { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_hankel(args: HankelArgs, pretty: bool) -> Result<ExitCode, String> {
    let seq = sequences::find(&args.sequence)
        .ok_or_else(|| format!("unknown sequence {:?}", args.sequence))?;
    let value = sequences::shifted_hankel_direct(seq, args.n, args.shift);
    emit(
        &json!({
            "command": "hankel",
            "sequence": seq.name,
            "n": args.n,
            "shift": args.shift,
            "value": format_rational(&value),
        }),
        pretty,
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_recurrence(args: RecurrenceArgs, pretty: bool) -> Result<ExitCode, String> {
    let coeffs = match (&args.sequence, &args.coeffs) {
        (Some(name), None) => sequences::find(name)
            .ok_or_else(|| format!("unknown sequence {name:?}"))?
            .coeffs
            .clone(),
        (None, Some(path)) => load_coeffs(path)?.0,
        _ => return Err("exactly one of --sequence or --coeffs is required".into()),
    };
    let lambda = parse_rational_list(&args.lambda).map_err(|e| e.to_string())?;
    let lc = LinearCombination::from_lambda(lambda).map_err(|e| e.to_string())?;
    let d = lc.degree();
    let spec = synthesize(&coeffs, &lc).map_err(|e| e.to_string())?;
    let order = spec.order;
    let len = spec.validity_start + 2 * order + 4;
    let seq = scaled_hankel_seq(&coeffs, &lc, len);
    let verified = verify_recurrence(&seq, &spec).map_err(|e| e.to_string())?;
    let fitted = fit_recurrence(seq.values(), order, spec.validity_start)
        .map_err(|e| e.to_string())?;
    let fit_consistent = match &fitted {
        None => false,
        Some(f) if f.c == spec.c => true,
        Some(f) => {
            // non-unique solution space: the minimal fitted polynomial must
            // divide the synthesized one
            let mut min_c = f.c.clone();
            while min_c.last().is_some_and(|v| v.is_zero()) {
                min_c.pop();
            }
            let minimal = hankel::UniPoly::from_coeffs(min_c.into_iter().rev().collect());
            let tensor =
                hankel::UniPoly::from_coeffs(spec.c.iter().rev().cloned().collect());
            tensor.div_exact(&minimal).is_some()
        }
    };
    let symmetric = symmetry_check(&spec, coeffs.t_tail(), d);
    let ok = verified && fit_consistent && symmetric;
    let mut doc = spec.to_json();
    let obj = doc.as_object_mut().expect("object");
    obj.insert("command".into(), "recurrence".into());
    obj.insert("d".into(), d.into());
    obj.insert("verified".into(), verified.into());
    obj.insert("fit_consistent".into(), fit_consistent.into());
    obj.insert(
        "c1".into(),
        format_rational(&c1_value(&lc, coeffs.s_tail())).into(),
    );
    obj.insert("symmetry".into(), symmetric.into());
    obj.insert(
        "h_values".into(),
        seq.values()
            .iter()
            .take(order + 4)
            .map(|v| serde_json::Value::from(format_rational(v)))
            .collect::<Vec<_>>()
            .into(),
    );
    emit(&doc, pretty);
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_heine(args: HeineArgs, pretty: bool) -> Result<ExitCode, String> {
    let doc = read_json_file(&args.measure)?;
    let measure = heine::DiscreteMeasure::from_json(&doc).map_err(|e| e.to_string())?;
    let cfg = match &args.points {
        Some(text) => parse_points(text)?,
        None => PointConfiguration::empty(),
    };
    let equal = heine::heine_check(&measure, &cfg, args.n).map_err(|e| e.to_string())?;
    emit(
        &json!({
            "command": "heine",
            "n": args.n,
            "d": cfg.degree(),
            "atoms": measure.atoms().len(),
            "equal": equal,
        }),
        pretty,
    );
    Ok(if equal { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn sequence_summary(seq: &sequences::SequenceSpec, terms: usize) -> serde_json::Value {
    json!({
        "name": seq.name,
        "coeffs": seq.coeffs.to_json(),
        "provenance": match seq.provenance {
            sequences::ParamProvenance::Documented => "documented",
            sequences::ParamProvenance::Derived => "derived",
        },
        "base_hankel_closed_form": seq.base_hankel_closed_form,
        "terms": seq
            .known_terms
            .iter()
            .take(terms)
            .map(|t| serde_json::Value::from(t.to_string()))
            .collect::<Vec<_>>(),
    })
}

fn cmd_sequences(args: SequencesArgs, pretty: bool) -> Result<ExitCode, String> {
    match &args.sequence {
        None => {
            let list: Vec<_> = sequences::registry()
                .iter()
                .map(|s| sequence_summary(s, 8))
                .collect();
            emit(&json!({"command": "sequences", "sequences": list}), pretty);
        }
        Some(name) => {
            let seq = sequences::find(name)
                .ok_or_else(|| format!("unknown sequence {name:?}"))?;
            let mut doc = sequence_summary(seq, seq.known_terms.len());
            let mut table = serde_json::Map::new();
            for d in 0..=3usize {
                let row: Vec<_> = (0..=args.n)
                    .map(|n| {
                        serde_json::Value::from(format_rational(
                            &sequences::shifted_hankel_direct(seq, n, d),
                        ))
                    })
                    .collect();
                table.insert(format!("shift_{d}"), row.into());
            }
            let obj = doc.as_object_mut().expect("object");
            obj.insert("command".into(), "sequences".into());
            obj.insert("hankel_table".into(), table.into());
            emit(&doc, pretty);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_bench(pretty: bool) -> Result<ExitCode, String> {
    let seq = sequences::find("schroeder_large").expect("registry entry");
    let size = 12;
    let m = moments_from_coeffs(&seq.coeffs, 2 * size - 1);
    let h = Matrix::from_fn(size, size, |i, j| m.values()[i + j].clone());
    let t0 = std::time::Instant::now();
    let a = h.det_fraction_free().map_err(|e| e.to_string())?;
    let fraction_free_micros = t0.elapsed().as_micros() as u64;
    let t1 = std::time::Instant::now();
    let b = h.det_condensation().map_err(|e| e.to_string())?;
    let condensation_micros = t1.elapsed().as_micros() as u64;
    let agree = a == b;
    emit(
        &json!({
            "command": "bench",
            "matrix": "schroeder_large moment Hankel",
            "size": size,
            "fraction_free_micros": fraction_free_micros,
            "condensation_micros": condensation_micros,
            "agree": agree,
            "value": format_rational(&a),
        }),
        pretty,
    );
    Ok(if agree { ExitCode::SUCCESS } else { ExitCode::from(1) })
}
