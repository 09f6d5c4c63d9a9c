//! The `subcode` command line.
//!
//! Exit codes: 0 success, 1 negative verdict (infeasible check, failed
//! verification), 2 malformed input or usage, 3 enumeration cap exceeded,
//! 4 infeasible length, 5 design/instance mismatch, 10 a result that the
//! theory rules out (please file a defect with the input and seed).

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::caps::Caps;
use crate::constraints::ConstraintInstance;
use crate::design::{design, CodeDesign, SearchConfig};
use crate::error::Error;
use crate::field::FieldPolicy;
use crate::format::{DesignFile, InstanceFile, SCHEMA_VERSION};
use crate::oracle::{self, OracleReport, DEFAULT_TRIALS};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_MALFORMED: i32 = 2;
pub const EXIT_CAPS: i32 = 3;
pub const EXIT_INFEASIBLE_LENGTH: i32 = 4;
pub const EXIT_MISMATCH: i32 = 5;
pub const EXIT_CONTRADICTION: i32 = 10;

#[derive(Debug, Parser)]
#[command(
    name = "subcode",
    version,
    about = "Reed-Solomon subcodes with prescribed zero patterns"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// GM-MDS feasibility, ell and the distance bound of an instance.
    Check { instance: PathBuf },
    /// Only the bound fields: ell and d_upper = n + 1 - ell.
    Bound { instance: PathBuf },
    /// Build an optimal design and write it as a DesignFile.
    Construct {
        instance: PathBuf,
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random tuples tried before backtracking.
        #[arg(long, default_value_t = 10_000)]
        attempts: u64,
        /// Also try the random phase at larger fields (q no longer minimal).
        #[arg(long)]
        escalate: bool,
        /// Write the DesignFile here and print only a summary.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Audit a DesignFile against its instance.
    Verify { design: PathBuf, instance: PathBuf },
    /// Compare the block condition with randomized evaluation of det M.
    #[command(name = "t3-oracle")]
    T3Oracle {
        /// Block or zero-set instance; omit with --exhaustive.
        instance: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sweep every instance with k, n up to the enumeration caps.
        #[arg(long)]
        exhaustive: bool,
    },
    /// Encode random messages, corrupt them and decode.
    #[command(name = "decode-demo")]
    DecodeDemo {
        design: PathBuf,
        #[arg(long, default_value_t = 0)]
        errors: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PolicyArg {
    SmallestPrime,
    SmallestPrimePower,
    Forced,
}

#[derive(Debug, Args)]
pub struct FieldArgs {
    /// Field size; implies the forced policy.
    #[arg(long)]
    pub q: Option<u64>,
    #[arg(long, value_enum)]
    pub policy: Option<PolicyArg>,
}

impl FieldArgs {
    fn policy(&self) -> Result<FieldPolicy, Failure> {
        match (self.policy, self.q) {
            (None | Some(PolicyArg::SmallestPrimePower), None) => Ok(FieldPolicy::SmallestPrimePower),
            (Some(PolicyArg::SmallestPrime), None) => Ok(FieldPolicy::SmallestPrime),
            (None | Some(PolicyArg::Forced), Some(q)) => Ok(FieldPolicy::Forced(q)),
            (Some(PolicyArg::Forced), None) => Err(Failure::usage("--policy forced needs --q")),
            (Some(_), Some(_)) => Err(Failure::usage("--q only combines with --policy forced")),
        }
    }
}

/// What a command prints and how it exits.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
}

#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn usage(msg: &str) -> Failure {
        Failure {
            code: EXIT_MALFORMED,
            message: msg.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match &e {
            Error::Malformed(_)
            | Error::InvalidInstance(_)
            | Error::NotPrimePower(_)
            | Error::FieldTooLarge { .. }
            | Error::InvalidFieldRequest(_)
            | Error::IndexOutOfRange { .. } => EXIT_MALFORMED,
            Error::CapExceeded { .. } => EXIT_CAPS,
            Error::InfeasibleLength { .. } => EXIT_INFEASIBLE_LENGTH,
            Error::DimensionMismatch { .. } => EXIT_MISMATCH,
            Error::SearchExhausted { .. } => EXIT_CONTRADICTION,
            _ => EXIT_NEGATIVE,
        };
        let mut message = e.to_string();
        if code == EXIT_CONTRADICTION {
            message.push_str("; this should be impossible, please file a defect with the instance and seed");
        }
        Failure { code, message }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::usage(&format!("cannot read {}: {e}", path.display())))
}

fn load_instance(path: &Path) -> Result<InstanceFile, Failure> {
    Ok(InstanceFile::parse(&read(path)?)?)
}

fn emit(command: &str, mut body: Value, code: i32) -> Outcome {
    let obj = body.as_object_mut().expect("object body");
    obj.insert("schema_version".into(), json!(SCHEMA_VERSION));
    obj.insert("command".into(), json!(command));
    Outcome {
        code,
        stdout: serde_json::to_string_pretty(&body).expect("plain data") + "\n",
    }
}

fn bound_fields(inst: &ConstraintInstance) -> Result<Value, Failure> {
    let b = inst.singleton_bound()?;
    Ok(json!({
        "n": inst.n(),
        "k": inst.k(),
        "ell": b.ell,
        "d_upper": b.d_upper,
        "feasible_length": b.is_feasible_length(),
    }))
}

fn cmd_check(path: &Path) -> Result<Outcome, Failure> {
    let inst = load_instance(path)?.constraint_instance()?;
    let mut body = bound_fields(&inst)?;
    let verdict = inst.check_gmmds()?;
    body["feasible_mds"] = json!(verdict.holds());
    if let Some(omega) = verdict.witness() {
        body["violating_omega"] = json!(omega);
    }
    let code = if verdict.holds() { EXIT_OK } else { EXIT_NEGATIVE };
    Ok(emit("check", body, code))
}

fn cmd_bound(path: &Path) -> Result<Outcome, Failure> {
    let inst = load_instance(path)?.constraint_instance()?;
    Ok(emit("bound", bound_fields(&inst)?, EXIT_OK))
}

fn cmd_construct(
    path: &Path,
    field: &FieldArgs,
    seed: u64,
    attempts: u64,
    escalate: bool,
    out: Option<&Path>,
) -> Result<Outcome, Failure> {
    let inst = load_instance(path)?.constraint_instance()?;
    let config = SearchConfig { attempts, escalate };
    let d = design(&inst, field.policy()?, config, seed)?;
    let file = DesignFile::from_design(&d);
    match out {
        None => Ok(Outcome {
            code: EXIT_OK,
            stdout: file.to_json(),
        }),
        Some(out) => {
            fs::write(out, file.to_json())
                .map_err(|e| Failure::usage(&format!("cannot write {}: {e}", out.display())))?;
            let body = json!({
                "out": out.display().to_string(),
                "q": file.q,
                "n": file.n,
                "k": file.k,
                "ell": file.ell,
                "d": file.d,
                "search": file.search,
            });
            Ok(emit("construct", body, EXIT_OK))
        }
    }
}

/// All verification reports for a stored design.
pub fn verify_design(file: &DesignFile, inst: &ConstraintInstance) -> Result<Vec<OracleReport>, Failure> {
    let mismatch = |e: Error| match e {
        Error::Malformed(_) => Failure::from(e),
        other => Failure {
            code: EXIT_MISMATCH,
            message: other.to_string(),
        },
    };
    let d = file.to_design().map_err(mismatch)?;
    if d.instance() != inst {
        return Err(Failure {
            code: EXIT_MISMATCH,
            message: format!(
                "design zero sets {:?} differ from the instance {:?}",
                d.instance().set_lists(),
                inst.set_lists()
            ),
        });
    }
    let mut reports = Vec::new();
    let issues = file.consistency_issues(&d);
    reports.push(if issues.is_empty() {
        OracleReport::pass("stored-fields")
    } else {
        fail_with("stored-fields", inst, json!(issues))
    });

    let ell = inst.compute_ell()?;
    reports.push(if ell == d.ell() {
        OracleReport::pass("ell").with("ell", ell)
    } else {
        fail_with("ell", inst, json!({ "expected": ell, "stored": d.ell() }))
    });
    let need = (d.n() + d.ell()).saturating_sub(1) as u64;
    let q = d.field().order();
    reports.push(if q >= need {
        OracleReport::pass("field-size")
            .with("q", q)
            .with("n_plus_ell_minus_1", need)
    } else {
        fail_with("field-size", inst, json!({ "q": q, "n_plus_ell_minus_1": need }))
    });
    reports.push(oracle::verify_zero_pattern(d.generator(), inst).map_err(mismatch)?);
    reports.push(check_product(&d, inst));
    reports.push(if d.t_full_invertible() {
        OracleReport::pass("t-full-invertible")
    } else {
        fail_with("t-full-invertible", inst, json!({ "determinant": 0 }))
    });
    reports.push(if d.points_distinct() {
        OracleReport::pass("points-distinct")
    } else {
        fail_with("points-distinct", inst, json!({ "eval_points": file.eval_points }))
    });
    reports.push(check_distance(&d, inst));
    Ok(reports)
}

fn fail_with(claim: &str, inst: &ConstraintInstance, detail: Value) -> OracleReport {
    OracleReport::fail(
        claim,
        oracle::Counterexample {
            instance: format!("{:?}", inst.set_lists()),
            seed: None,
            detail,
        },
    )
}

/// `G = T * V` entry by entry.
fn check_product(d: &CodeDesign, inst: &ConstraintInstance) -> OracleReport {
    let expected = d
        .t()
        .mul(&d.vandermonde(), d.field())
        .expect("T is k x ell, V is ell x n");
    let g = d.generator();
    for i in 0..g.rows() {
        for j in 0..g.cols() {
            if g[(i, j)] != expected[(i, j)] {
                return fail_with(
                    "generator-product",
                    inst,
                    json!({ "row": i, "col": j, "stored": g[(i, j)].encoding(), "expected": expected[(i, j)].encoding() }),
                );
            }
        }
    }
    OracleReport::pass("generator-product")
}

fn check_distance(d: &CodeDesign, inst: &ConstraintInstance) -> OracleReport {
    const CLAIM: &str = "min-distance";
    let caps = Caps::global();
    if !oracle::bruteforce_allowed(d.field().order(), d.k(), &caps) {
        return OracleReport::skipped(CLAIM, "cap");
    }
    let measured = oracle::min_distance_with_caps(d.generator(), d.field(), None, &caps).expect("within cap");
    if measured == d.d() {
        OracleReport::pass(CLAIM)
            .with("d_min", measured)
            .with("designed", d.d())
    } else {
        fail_with(CLAIM, inst, json!({ "d_min": measured, "designed": d.d() })).with("d_min", measured)
    }
}

fn cmd_verify(design_path: &Path, instance_path: &Path) -> Result<Outcome, Failure> {
    let file = DesignFile::parse(&read(design_path)?)?;
    let inst = load_instance(instance_path)?.constraint_instance()?;
    let reports = verify_design(&file, &inst)?;
    let all_ok = reports.iter().all(|r| !r.verdict.is_fail());
    let body = json!({
        "verdict": if all_ok { "pass" } else { "fail" },
        "reports": reports,
    });
    Ok(emit("verify", body, if all_ok { EXIT_OK } else { EXIT_NEGATIVE }))
}

fn cmd_t3(instance: Option<&Path>, trials: usize, seed: u64, exhaustive: bool) -> Result<Outcome, Failure> {
    if trials == 0 {
        return Err(Failure::usage("--trials must be at least 1"));
    }
    if exhaustive {
        if instance.is_some() {
            return Err(Failure::usage("--exhaustive takes no instance file"));
        }
        let caps = Caps::global();
        let all = oracle::enumerate_with_caps(caps.enum_k, caps.enum_n, &caps)?;
        let mut disagreements = Vec::new();
        let mut holding = 0usize;
        for (i, g) in all.iter().enumerate() {
            let cond = g.check_general()?.holds();
            holding += usize::from(cond);
            let report = oracle::det_identity_oracle(g, trials, seed.wrapping_add(i as u64));
            if cond != report.nonzero() {
                disagreements.push(json!({
                    "instance": InstanceFile::from_general(g),
                    "seed": seed.wrapping_add(i as u64),
                    "condition": cond,
                    "oracle_verdict": report.verdict,
                }));
            }
        }
        let agree = disagreements.is_empty();
        let body = json!({
            "k_max": caps.enum_k,
            "n_max": caps.enum_n,
            "instances": all.len(),
            "condition_holds": holding,
            "agreements": all.len() - disagreements.len(),
            "agree": agree,
            "disagreements": disagreements,
            "trials": trials,
            "prime": oracle::PIT_PRIME,
        });
        return Ok(emit(
            "t3-oracle",
            body,
            if agree { EXIT_OK } else { EXIT_CONTRADICTION },
        ));
    }
    let path = instance.ok_or_else(|| Failure::usage("an instance file or --exhaustive is required"))?;
    let g = load_instance(path)?.general_instance()?;
    let verdict = g.check_general()?;
    let report = oracle::det_identity_oracle(&g, trials, seed);
    let agree = verdict.holds() == report.nonzero();
    let mut body = json!({
        "condition": verdict.holds(),
        "oracle_verdict": report.verdict,
        "agree": agree,
        "degree_bound": report.degree_bound,
        "prime": report.prime,
        "trials": report.trials,
        "evaluations": report.evaluations,
        "error_bound": report.error_bound,
        "error_bound_log2": report.error_bound_log2,
        "seed": seed,
    });
    if let Some(omega) = verdict.witness() {
        body["violating_omega"] = json!(omega);
    }
    Ok(emit(
        "t3-oracle",
        body,
        if agree { EXIT_OK } else { EXIT_CONTRADICTION },
    ))
}

fn cmd_decode_demo(path: &Path, errors: usize, trials: usize, seed: u64) -> Result<Outcome, Failure> {
    let file = DesignFile::parse(&read(path)?)?;
    let d = file.to_design()?;
    if errors >= d.n() {
        return Err(Failure::usage(&format!("--errors must be below n = {}", d.n())));
    }
    let ctx = d.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut ok, mut failures, mut wrong) = (0usize, 0usize, 0usize);
    for _ in 0..trials {
        let msg: Vec<_> = (0..d.k()).map(|_| ctx.random(&mut rng)).collect();
        let mut word = d.encode(&msg)?;
        let mut positions: Vec<usize> = (0..d.n()).collect();
        for i in 0..errors {
            let j = rng.gen_range(i..d.n());
            positions.swap(i, j);
            let pos = positions[i];
            word[pos] = ctx.add(word[pos], ctx.random_nonzero(&mut rng));
        }
        match d.decode(&word) {
            Ok(m) if m == msg => ok += 1,
            Ok(_) => wrong += 1,
            Err(_) => failures += 1,
        }
    }
    let guaranteed = errors <= d.correctable();
    let body = json!({
        "n": d.n(),
        "k": d.k(),
        "d": d.d(),
        "errors": errors,
        "correctable": d.correctable(),
        "guaranteed": guaranteed,
        "trials": trials,
        "successes": ok,
        "decode_failures": failures,
        "wrong_decodes": wrong,
        "seed": seed,
    });
    let code = if guaranteed && ok != trials {
        EXIT_CONTRADICTION
    } else {
        EXIT_OK
    };
    Ok(emit("decode-demo", body, code))
}

pub fn execute(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Check { instance } => cmd_check(instance),
        Command::Bound { instance } => cmd_bound(instance),
        Command::Construct {
            instance,
            field,
            seed,
            attempts,
            escalate,
            out,
        } => cmd_construct(instance, field, *seed, *attempts, *escalate, out.as_deref()),
        Command::Verify { design, instance } => cmd_verify(design, instance),
        Command::T3Oracle {
            instance,
            trials,
            seed,
            exhaustive,
        } => cmd_t3(instance.as_deref(), *trials, *seed, *exhaustive),
        Command::DecodeDemo {
            design,
            errors,
            trials,
            seed,
        } => cmd_decode_demo(design, *errors, *trials, *seed),
    }
}

/// Parses the process arguments, runs the command and returns the exit code.
pub fn main() -> i32 {
    if let Ok(spec) = std::env::var(crate::caps::CAPS_ENV) {
        if let Err(e) = Caps::parse(&spec) {
            eprintln!("subcode: {e}");
            return EXIT_MALFORMED;
        }
    }
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            out.code
        }
        Err(f) => {
            eprintln!("subcode: {}", f.message);
            f.code
        }
    }
}
