//! JSON files for instances and designs.
//!
//! Column indices are 0-based. Field elements are stored as integers: the
//! residue for prime fields, and for `GF(p^m)` the base-`p` number whose
//! digits are the polynomial coefficients, constant term least significant.
//! Keys appear in a fixed order so that equal designs give equal bytes.

use serde::{Deserialize, Serialize};

use crate::constraints::{ConstraintInstance, GeneralInstance};
use crate::design::{CodeDesign, SearchStats};
use crate::error::{Error, Result};
use crate::field::{FieldContext, FieldElement};
use crate::matrix::Matrix;

pub const SCHEMA_VERSION: u32 = 1;

fn default_schema() -> u32 {
    SCHEMA_VERSION
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockSpec {
    pub set: Vec<usize>,
    pub r: usize,
}

/// Either `zero_sets` (one per generator row) or `blocks` must be present.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    #[serde(default = "default_schema")]
    pub schema_version: u32,
    pub n: usize,
    pub k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zero_sets: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub blocks: Option<Vec<BlockSpec>>,
}

fn check_schema(found: u32) -> Result<()> {
    if found != SCHEMA_VERSION {
        return Err(Error::Malformed(format!(
            "unsupported schema_version {found}, expected {SCHEMA_VERSION}"
        )));
    }
    Ok(())
}

impl InstanceFile {
    pub fn from_instance(inst: &ConstraintInstance) -> InstanceFile {
        InstanceFile {
            schema_version: SCHEMA_VERSION,
            n: inst.n(),
            k: inst.k(),
            zero_sets: Some(inst.set_lists()),
            blocks: None,
        }
    }

    pub fn from_general(inst: &GeneralInstance) -> InstanceFile {
        InstanceFile {
            schema_version: SCHEMA_VERSION,
            n: inst.n(),
            k: inst.k(),
            zero_sets: None,
            blocks: Some(
                inst.blocks()
                    .iter()
                    .map(|b| BlockSpec {
                        set: b.set.to_vec(),
                        r: b.r,
                    })
                    .collect(),
            ),
        }
    }

    pub fn parse(text: &str) -> Result<InstanceFile> {
        let file: InstanceFile = serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
        check_schema(file.schema_version)?;
        match (&file.zero_sets, &file.blocks) {
            (Some(_), Some(_)) => Err(Error::Malformed("give zero_sets or blocks, not both".into())),
            (None, None) => Err(Error::Malformed("one of zero_sets or blocks is required".into())),
            _ => Ok(file),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data") + "\n"
    }

    /// The row-constraint form. Block files qualify only if every `r` is 1.
    pub fn constraint_instance(&self) -> Result<ConstraintInstance> {
        let sets = match (&self.zero_sets, &self.blocks) {
            (Some(sets), _) => sets.clone(),
            (None, Some(blocks)) if blocks.iter().all(|b| b.r == 1) => blocks.iter().map(|b| b.set.clone()).collect(),
            _ => {
                return Err(Error::Malformed(
                    "blocks with r > 1 describe a general instance, not zero sets".into(),
                ))
            }
        };
        if sets.len() != self.k {
            return Err(Error::Malformed(format!(
                "k = {} but {} zero sets given",
                self.k,
                sets.len()
            )));
        }
        ConstraintInstance::new(self.n, sets).map_err(as_malformed)
    }

    /// The block form. Zero sets become blocks with `r = 1`.
    pub fn general_instance(&self) -> Result<GeneralInstance> {
        let blocks: Vec<(Vec<usize>, usize)> = match (&self.zero_sets, &self.blocks) {
            (_, Some(blocks)) => blocks.iter().map(|b| (b.set.clone(), b.r)).collect(),
            (Some(sets), None) => sets.iter().map(|s| (s.clone(), 1)).collect(),
            (None, None) => return Err(Error::Malformed("no zero_sets or blocks".into())),
        };
        let inst = GeneralInstance::new(self.n, blocks).map_err(as_malformed)?;
        if inst.k() != self.k {
            return Err(Error::Malformed(format!(
                "k = {} but the r values sum to {}",
                self.k,
                inst.k()
            )));
        }
        Ok(inst)
    }
}

fn as_malformed(e: Error) -> Error {
    match e {
        Error::InvalidInstance(msg) => Error::Malformed(msg),
        Error::IndexOutOfRange { index, len } => {
            Error::Malformed(format!("column index {index} out of range for n = {len}"))
        }
        other => other,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DesignFile {
    pub schema_version: u32,
    pub q: u64,
    pub p: u64,
    pub m: u32,
    /// Ascending coefficients of the field modulus; `[0, 1]` for prime fields.
    pub modulus: Vec<u64>,
    pub n: usize,
    pub k: usize,
    pub ell: usize,
    pub d: usize,
    pub zero_sets: Vec<Vec<usize>>,
    pub alphas: Vec<u64>,
    pub aux_alphas: Vec<u64>,
    pub eval_points: Vec<u64>,
    pub t_full: Vec<Vec<u64>>,
    pub t: Vec<Vec<u64>>,
    pub g: Vec<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub search: Option<SearchStats>,
}

fn encode_vec(v: &[FieldElement]) -> Vec<u64> {
    v.iter().map(|e| e.encoding()).collect()
}

fn encode_matrix(m: &Matrix) -> Vec<Vec<u64>> {
    m.to_rows().iter().map(|r| encode_vec(r)).collect()
}

fn decode_vec(ctx: &FieldContext, v: &[u64]) -> Result<Vec<FieldElement>> {
    v.iter().map(|&x| ctx.from_encoding(x)).collect()
}

fn decode_matrix(ctx: &FieldContext, rows: &[Vec<u64>], cols: usize, what: &'static str) -> Result<Matrix> {
    let decoded = rows
        .iter()
        .map(|r| {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    what,
                    expected: cols,
                    found: r.len(),
                });
            }
            decode_vec(ctx, r)
        })
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(decoded, cols)
}

impl DesignFile {
    pub fn from_design(design: &CodeDesign) -> DesignFile {
        let ctx = design.field();
        DesignFile {
            schema_version: SCHEMA_VERSION,
            q: ctx.order(),
            p: ctx.characteristic(),
            m: ctx.degree(),
            modulus: ctx.modulus().to_vec(),
            n: design.n(),
            k: design.k(),
            ell: design.ell(),
            d: design.d(),
            zero_sets: design.instance().set_lists(),
            alphas: encode_vec(design.alphas()),
            aux_alphas: encode_vec(design.aux_alphas()),
            eval_points: encode_vec(design.eval_points()),
            t_full: encode_matrix(design.t_full()),
            t: encode_matrix(&design.t()),
            g: encode_matrix(design.generator()),
            search: design.search_stats().cloned(),
        }
    }

    pub fn parse(text: &str) -> Result<DesignFile> {
        let file: DesignFile = serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
        check_schema(file.schema_version)?;
        Ok(file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data") + "\n"
    }

    pub fn field(&self) -> Result<FieldContext> {
        let ctx = FieldContext::with_modulus(self.p, &self.modulus)?;
        if ctx.order() != self.q || ctx.degree() != self.m {
            return Err(Error::InvalidFieldRequest(format!(
                "q = {} does not equal p^m = {}^{}",
                self.q, self.p, self.m
            )));
        }
        Ok(ctx)
    }

    /// Rebuilds the design exactly as stored. Derived fields (`eval_points`,
    /// `t`, `d`) are not trusted here; [`DesignFile::consistency_issues`]
    /// compares them.
    pub fn to_design(&self) -> Result<CodeDesign> {
        let ctx = self.field()?;
        let instance = ConstraintInstance::new(self.n, self.zero_sets.clone()).map_err(as_malformed)?;
        let ell = self.t_full.len();
        let t_full = decode_matrix(&ctx, &self.t_full, ell, "T_full row length")?;
        let g = decode_matrix(&ctx, &self.g, self.n, "G row length")?;
        let alphas = decode_vec(&ctx, &self.alphas)?;
        let aux = decode_vec(&ctx, &self.aux_alphas)?;
        CodeDesign::from_parts(ctx, instance, alphas, aux, t_full, g)
    }

    /// Stored fields that disagree with the ones recomputed from the design.
    pub fn consistency_issues(&self, design: &CodeDesign) -> Vec<String> {
        let fresh = DesignFile::from_design(design);
        let mut issues = Vec::new();
        if self.k != design.k() {
            issues.push(format!("k = {} but G has {} rows", self.k, design.k()));
        }
        if self.ell != design.ell() {
            issues.push(format!("ell = {} but T_full has {} rows", self.ell, design.ell()));
        }
        if self.d != fresh.d {
            issues.push(format!("d = {} but n - ell + 1 = {}", self.d, fresh.d));
        }
        if self.eval_points != fresh.eval_points {
            issues.push("eval_points are not the negated alphas".into());
        }
        if self.t != fresh.t {
            issues.push("T is not the top k rows of T_full".into());
        }
        issues
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::design::{design, SearchConfig};
    use crate::field::FieldPolicy;

    #[test]
    fn instance_round_trip() {
        let text = r#"{"n": 4, "k": 2, "zero_sets": [[0, 1], [2]]}"#;
        let f = InstanceFile::parse(text).unwrap();
        assert_eq!(f.schema_version, SCHEMA_VERSION);
        let inst = f.constraint_instance().unwrap();
        assert_eq!(inst.set_lists(), vec![vec![0, 1], vec![2]]);
        let again = InstanceFile::parse(&InstanceFile::from_instance(&inst).to_json()).unwrap();
        assert_eq!(again, f);
        // |S_1| + 1 > k, so the sets are not a valid block instance
        assert!(again.general_instance().is_err());
        let flat = InstanceFile::parse(r#"{"n": 3, "k": 2, "zero_sets": [[0], []]}"#).unwrap();
        assert_eq!(flat.general_instance().unwrap().m(), 2);
    }

    #[test]
    fn block_files() {
        let text = r#"{"schema_version": 1, "n": 2, "k": 3, "blocks": [{"set": [], "r": 2}, {"set": [0, 1], "r": 1}]}"#;
        let f = InstanceFile::parse(text).unwrap();
        let g = f.general_instance().unwrap();
        assert_eq!((g.k(), g.m()), (3, 2));
        assert!(f.constraint_instance().is_err());
        assert_eq!(
            InstanceFile::parse(&InstanceFile::from_general(&g).to_json()).unwrap(),
            f
        );
    }

    #[test]
    fn malformed_instances() {
        for text in [
            "not json",
            r#"{"n": 2, "k": 1}"#,
            r#"{"n": 2, "k": 1, "zero_sets": [[5]]}"#,
            r#"{"n": 2, "k": 2, "zero_sets": [[0]]}"#,
            r#"{"n": 2, "k": 1, "zero_sets": [[0]], "extra": 1}"#,
            r#"{"schema_version": 9, "n": 2, "k": 1, "zero_sets": [[0]]}"#,
        ] {
            let r = InstanceFile::parse(text).and_then(|f| f.constraint_instance());
            assert!(matches!(r, Err(Error::Malformed(_))), "{text}: {r:?}");
        }
    }

    #[test]
    fn design_round_trip() {
        let inst = ConstraintInstance::new(5, vec![vec![0, 1], vec![2], vec![]]).unwrap();
        for policy in [
            FieldPolicy::SmallestPrimePower,
            FieldPolicy::Forced(9),
            FieldPolicy::Forced(8),
        ] {
            let d = design(&inst, policy, SearchConfig::default(), 4).unwrap();
            let file = DesignFile::from_design(&d);
            let text = file.to_json();
            let parsed = DesignFile::parse(&text).unwrap();
            assert_eq!(parsed, file);
            let back = parsed.to_design().unwrap();
            assert!(parsed.consistency_issues(&back).is_empty());
            assert_eq!(back.generator(), d.generator());
            assert_eq!(DesignFile::from_design(&back).g, file.g);
        }
    }

    #[test]
    fn tampered_design_is_reported() {
        let inst = ConstraintInstance::new(4, vec![vec![0, 1], vec![2]]).unwrap();
        let d = design(&inst, FieldPolicy::SmallestPrime, SearchConfig::default(), 7).unwrap();
        let mut file = DesignFile::from_design(&d);
        file.t[0][0] = (file.t[0][0] + 1) % file.q;
        file.d += 1;
        let back = file.to_design().unwrap();
        assert_eq!(file.consistency_issues(&back).len(), 2);
        file.g[0].pop();
        assert!(file.to_design().is_err());
        file.modulus = vec![1, 1];
        assert!(file.field().is_err());
    }
}
