//! Ground truth used to audit designs and the determinant criterion.
//!
//! Brute-force minimum distance, zero-pattern audit, randomized identity
//! testing of `det M` over a 61-bit prime field, and the instance generators
//! that feed the property suites.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};
use serde_json::Value;

use crate::caps::Caps;
use crate::constraints::{ConstraintInstance, GeneralInstance, IndexSet};
use crate::error::{Error, Result};
use crate::field::{FieldContext, FieldElement};
use crate::matrix::Matrix;
use crate::sylvester::SylvesterMatrix;

/// The Mersenne prime `2^61 - 1`, the field of the identity test.
pub const PIT_PRIME: u64 = (1 << 61) - 1;

/// Default number of evaluations in [`det_identity_oracle`].
pub const DEFAULT_TRIALS: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleVerdict {
    Pass,
    Fail,
    /// Not run; the string says why, e.g. `cap`.
    Skipped(String),
}

impl OracleVerdict {
    pub fn as_string(&self) -> String {
        match self {
            OracleVerdict::Pass => "pass".into(),
            OracleVerdict::Fail => "fail".into(),
            OracleVerdict::Skipped(why) => format!("skipped({why})"),
        }
    }

    pub fn is_pass(&self) -> bool {
        *self == OracleVerdict::Pass
    }

    pub fn is_fail(&self) -> bool {
        *self == OracleVerdict::Fail
    }
}

impl Serialize for OracleVerdict {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.as_string())
    }
}

/// Enough to replay a failure.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Counterexample {
    pub instance: String,
    pub seed: Option<u64>,
    pub detail: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleReport {
    pub claim: String,
    pub verdict: OracleVerdict,
    pub measured: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

impl OracleReport {
    pub fn pass(claim: &str) -> OracleReport {
        OracleReport {
            claim: claim.into(),
            verdict: OracleVerdict::Pass,
            measured: BTreeMap::new(),
            counterexample: None,
        }
    }

    pub fn fail(claim: &str, counterexample: Counterexample) -> OracleReport {
        OracleReport {
            claim: claim.into(),
            verdict: OracleVerdict::Fail,
            measured: BTreeMap::new(),
            counterexample: Some(counterexample),
        }
    }

    pub fn skipped(claim: &str, why: &str) -> OracleReport {
        OracleReport {
            claim: claim.into(),
            verdict: OracleVerdict::Skipped(why.into()),
            measured: BTreeMap::new(),
            counterexample: None,
        }
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> OracleReport {
        self.measured.insert(key.into(), value.into());
        self
    }
}

/// Whether `q^k` is within the brute-force cap.
pub fn bruteforce_allowed(q: u64, k: usize, caps: &Caps) -> bool {
    let mut total: u64 = 1;
    for _ in 0..k {
        total = match total.checked_mul(q) {
            Some(t) if t <= caps.bruteforce_limit() => t,
            _ => return false,
        };
    }
    true
}

/// Minimum Hamming weight of `m * G` over nonzero messages `m`.
///
/// Only messages whose first nonzero entry is 1 are visited, since scaling
/// does not change weight. A message with zero codeword yields 0. With
/// `lower_bound = Some(b)` the scan stops as soon as a weight `<= b` is seen,
/// so the result is exact whenever `b` really is a lower bound.
pub fn min_distance_bruteforce(g: &Matrix, ctx: &FieldContext, lower_bound: Option<usize>) -> Result<usize> {
    min_distance_with_caps(g, ctx, lower_bound, &Caps::global())
}

pub fn min_distance_with_caps(
    g: &Matrix,
    ctx: &FieldContext,
    lower_bound: Option<usize>,
    caps: &Caps,
) -> Result<usize> {
    let (k, n) = (g.rows(), g.cols());
    let q = ctx.order();
    if !bruteforce_allowed(q, k, caps) {
        return Err(Error::CapExceeded {
            what: "q^k for brute-force distance",
            value: q.saturating_pow(k as u32),
            cap: caps.bruteforce_limit(),
        });
    }
    let elements: Vec<FieldElement> = ctx.enumerate().collect();
    let stop = lower_bound.unwrap_or(0);
    let mut best = n;
    for lead in 0..k {
        // codeword for message (0,..,0,1,digits..) with all digits at element 0
        let mut word: Vec<FieldElement> = g.row(lead).to_vec();
        let free = k - lead - 1;
        let mut digits = vec![0usize; free];
        loop {
            let w = word.iter().filter(|e| !e.is_zero()).count();
            best = best.min(w);
            if best == 0 || best <= stop {
                return Ok(best);
            }
            // odometer over rows lead+1.., updating the word by differences
            let mut pos = 0;
            loop {
                if pos == free {
                    break;
                }
                let row = g.row(lead + 1 + pos);
                let old = elements[digits[pos]];
                digits[pos] = (digits[pos] + 1) % elements.len();
                let new = elements[digits[pos]];
                let delta = ctx.sub(new, old);
                for (x, &r) in word.iter_mut().zip(row) {
                    *x = ctx.add(*x, ctx.mul(delta, r));
                }
                if digits[pos] != 0 {
                    break;
                }
                pos += 1;
            }
            if pos == free {
                break;
            }
        }
    }
    Ok(best)
}

/// Checks `G[i][j] = 0` for every `j` in `S_i`. Extra zeros are fine.
pub fn verify_zero_pattern(g: &Matrix, inst: &ConstraintInstance) -> Result<OracleReport> {
    if g.rows() != inst.k() || g.cols() != inst.n() {
        return Err(Error::DimensionMismatch {
            what: "generator shape (k x n)",
            expected: inst.k() * inst.n(),
            found: g.rows() * g.cols(),
        });
    }
    const CLAIM: &str = "zero-pattern";
    for (i, set) in inst.sets().iter().enumerate() {
        if let Some(j) = set.iter().find(|&j| !g[(i, j)].is_zero()) {
            return Ok(OracleReport::fail(
                CLAIM,
                Counterexample {
                    instance: format!("{:?}", inst.set_lists()),
                    seed: None,
                    detail: serde_json::json!({ "row": i, "col": j, "value": g[(i, j)].encoding() }),
                },
            ));
        }
    }
    let constrained: usize = inst.sets().iter().map(IndexSet::len).sum();
    Ok(OracleReport::pass(CLAIM).with("constrained_entries", constrained))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdentityVerdict {
    NonzeroCertified,
    IdenticallyZeroBelieved,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityReport {
    pub verdict: IdentityVerdict,
    /// `sum r_i |S_i|`, bounding the total degree of `det M`.
    pub degree_bound: usize,
    pub prime: u64,
    pub trials: usize,
    /// Evaluations actually performed (stops at the first nonzero).
    pub evaluations: usize,
    /// `(D / P)^trials` when every evaluation was zero, else 0.
    pub error_bound: f64,
    /// `log2` of `error_bound`, which often underflows as a plain float.
    pub error_bound_log2: f64,
}

impl IdentityReport {
    pub fn nonzero(&self) -> bool {
        self.verdict == IdentityVerdict::NonzeroCertified
    }
}

/// Evaluates `det M` at `trials` uniform points of `GF(2^61 - 1)^n`.
///
/// A nonzero value proves `det M` is not the zero polynomial. If all values
/// vanish, the determinant is believed identically zero, wrongly with
/// probability at most `(D / P)^trials`.
pub fn det_identity_oracle(inst: &GeneralInstance, trials: usize, seed: u64) -> IdentityReport {
    let ctx = FieldContext::prime(PIT_PRIME).expect("2^61 - 1 is prime");
    let trials = trials.max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let degree_bound = inst.degree_bound();
    for t in 0..trials {
        let alphas: Vec<FieldElement> = (0..inst.n()).map(|_| ctx.random(&mut rng)).collect();
        let m = SylvesterMatrix::build(inst, &alphas, &ctx).expect("alpha count matches");
        if !m.determinant(&ctx).is_zero() {
            return IdentityReport {
                verdict: IdentityVerdict::NonzeroCertified,
                degree_bound,
                prime: PIT_PRIME,
                trials,
                evaluations: t + 1,
                error_bound: 0.0,
                error_bound_log2: f64::NEG_INFINITY,
            };
        }
    }
    IdentityReport {
        verdict: IdentityVerdict::IdenticallyZeroBelieved,
        degree_bound,
        prime: PIT_PRIME,
        trials,
        evaluations: trials,
        error_bound: (degree_bound as f64 / PIT_PRIME as f64).powi(trials as i32),
        error_bound_log2: trials as f64 * ((degree_bound as f64).log2() - 61.0),
    }
}

/// Every general instance with exactly `k` rows over `n` variables: all
/// compositions of `k` into `m` positive parts, and for each all tuples of
/// sets with `|S_i| + r_i <= k`. Compositions are visited in lexicographic
/// order, set tuples in odometer order over subsets ranked by bitmask.
pub fn general_instances_of_shape(k: usize, n: usize) -> Vec<GeneralInstance> {
    let mut out = Vec::new();
    let subsets: Vec<Vec<usize>> = (0u32..1 << n)
        .map(|mask| (0..n).filter(|&j| mask >> j & 1 == 1).collect())
        .collect();
    for comp in compositions(k) {
        let choices: Vec<Vec<&Vec<usize>>> = comp
            .iter()
            .map(|&r| subsets.iter().filter(|s| s.len() + r <= k).collect())
            .collect();
        let mut idx = vec![0usize; comp.len()];
        'tuples: loop {
            let blocks = comp
                .iter()
                .zip(&idx)
                .enumerate()
                .map(|(i, (&r, &c))| (choices[i][c].clone(), r))
                .collect();
            out.push(GeneralInstance::new(n, blocks).expect("valid by construction"));
            // last position varies fastest
            for pos in (0..comp.len()).rev() {
                idx[pos] += 1;
                if idx[pos] < choices[pos].len() {
                    continue 'tuples;
                }
                idx[pos] = 0;
            }
            break;
        }
    }
    out
}

/// Ordered compositions of `k` into positive parts, lexicographic.
fn compositions(k: usize) -> Vec<Vec<usize>> {
    fn rec(left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for part in 1..=left {
            cur.push(part);
            rec(left - part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, &mut Vec::new(), &mut out);
    out
}

/// Every general instance with `1 <= k <= k_max` and `0 <= n <= n_max`, by
/// increasing `k`, then `n`.
pub fn enumerate_general_instances(k_max: usize, n_max: usize) -> Result<Vec<GeneralInstance>> {
    enumerate_with_caps(k_max, n_max, &Caps::global())
}

pub fn enumerate_with_caps(k_max: usize, n_max: usize, caps: &Caps) -> Result<Vec<GeneralInstance>> {
    if k_max > caps.enum_k {
        return Err(Error::CapExceeded {
            what: "k for instance enumeration",
            value: k_max as u64,
            cap: caps.enum_k as u64,
        });
    }
    if n_max > caps.enum_n {
        return Err(Error::CapExceeded {
            what: "n for instance enumeration",
            value: n_max as u64,
            cap: caps.enum_n as u64,
        });
    }
    let mut out = Vec::new();
    for k in 1..=k_max {
        for n in 0..=n_max {
            out.extend(general_instances_of_shape(k, n));
        }
    }
    Ok(out)
}

fn random_sets<R: Rng>(k: usize, n: usize, density: f64, rng: &mut R) -> Vec<Vec<usize>> {
    (0..k)
        .map(|_| (0..n).filter(|_| rng.gen_bool(density)).collect())
        .collect()
}

/// Random instance with a feasible length (`ell <= n`). Each column joins
/// each set with probability `density`; after every rejection the density
/// shrinks by 10%, so sampling ends at the all-empty instance at worst.
pub fn random_feasible_instance(k: usize, n: usize, density: f64, seed: u64) -> ConstraintInstance {
    assert!(1 <= k && k <= n, "need 1 <= k <= n");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut density = density.clamp(0.0, 1.0);
    loop {
        let inst = ConstraintInstance::new(n, random_sets(k, n, density, &mut rng)).expect("indices in range");
        if inst.singleton_bound().is_ok_and(|b| b.is_feasible_length()) {
            return inst;
        }
        density *= 0.9;
        if density < 1e-3 {
            density = 0.0;
        }
    }
}

/// Random instance that satisfies the GM-MDS condition at dimension `k`, so
/// `ell = k`. Set sizes are drawn below `k` and shrink after rejections.
pub fn random_gmmds_instance(k: usize, n: usize, seed: u64) -> ConstraintInstance {
    assert!(1 <= k && k <= n, "need 1 <= k <= n");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_size = k - 1;
    let mut rejections = 0;
    loop {
        let sets: Vec<Vec<usize>> = (0..k)
            .map(|_| {
                let size = rng.gen_range(0..=max_size.min(n));
                let mut cols: Vec<usize> = (0..n).collect();
                cols.shuffle(&mut rng);
                let mut s = cols[..size].to_vec();
                s.sort_unstable();
                s
            })
            .collect();
        let inst = ConstraintInstance::new(n, sets).expect("indices in range");
        if inst.check_gmmds().is_ok_and(|v| v.holds()) {
            return inst;
        }
        rejections += 1;
        if rejections % 20 == 0 && max_size > 0 {
            max_size -= 1;
        }
    }
}

/// Uniform random general instance with exactly `k` rows over `n` variables:
/// a random composition of `k`, then each set uniform among subsets of size
/// at most `k - r_i`.
pub fn random_general_instance(k: usize, n: usize, seed: u64) -> GeneralInstance {
    assert!(k >= 1, "need k >= 1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut parts = Vec::new();
    let mut left = k;
    while left > 0 {
        let r = rng.gen_range(1..=left);
        parts.push(r);
        left -= r;
    }
    let blocks = parts
        .into_iter()
        .map(|r| {
            let cap = (k - r).min(n);
            let size = rng.gen_range(0..=cap);
            let mut cols: Vec<usize> = (0..n).collect();
            cols.shuffle(&mut rng);
            let mut s = cols[..size].to_vec();
            s.sort_unstable();
            (s, r)
        })
        .collect();
    GeneralInstance::new(n, blocks).expect("valid by construction")
}

/// Random `k x n` matrix with zeros on every constrained entry and uniform
/// values elsewhere.
pub fn random_compliant_matrix<R: Rng + ?Sized>(inst: &ConstraintInstance, ctx: &FieldContext, rng: &mut R) -> Matrix {
    let mut g = Matrix::zeros(inst.k(), inst.n());
    for (i, set) in inst.sets().iter().enumerate() {
        for j in 0..inst.n() {
            if !set.contains(j) {
                g[(i, j)] = ctx.random(rng);
            }
        }
    }
    g
}
