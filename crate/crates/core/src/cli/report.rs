//! Structured reports and their text rendering.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::abel::{CorrectionProfile, Degree1Embedding, NaturalityVerdict};
use crate::classgroup::{Multidegree, SemistabilizeStrategy};
use crate::graph::Connectivity;
use crate::picard::{ComponentConfidence, DGeneral, ExcessSide, PicardType};
use crate::stability::StabilityStatus;
use crate::theta::{ThetaDim, WAnalysis};

pub const SCHEMA_VERSION: u32 = 1;

/// Big integer written as a JSON number when it fits in `i64`, else as a
/// decimal string.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct BigNum(pub BigInt);

impl From<BigInt> for BigNum {
    fn from(b: BigInt) -> Self {
        BigNum(b)
    }
}

impl From<&BigInt> for BigNum {
    fn from(b: &BigInt) -> Self {
        BigNum(b.clone())
    }
}

impl std::fmt::Display for BigNum {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

impl Serialize for BigNum {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for BigNum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(i64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(v) => Ok(BigNum(BigInt::from(v))),
            Raw::Text(t) => t.parse().map(BigNum).map_err(serde::de::Error::custom),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveSummary {
    pub vertices: Vec<String>,
    pub gamma: usize,
    pub delta: usize,
    pub b1: i64,
    pub genus: i64,
    pub complexity: BigNum,
    pub tree_like: bool,
    pub essential_connectivity: Connectivity,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRecord {
    pub residues: Vec<BigNum>,
    pub multidegree: Multidegree,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassGroupReport {
    pub invariant_factors: Vec<BigNum>,
    pub order: BigNum,
    pub twister_basis: Vec<Multidegree>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<i64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub representatives: Vec<ClassRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictRecord {
    pub multidegree: Multidegree,
    pub status: StabilityStatus,
    pub witnesses: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemistableReport {
    pub semistable: Vec<VerdictRecord>,
    pub stable: Vec<Multidegree>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemistabilizeReport {
    pub input: Multidegree,
    pub output: Multidegree,
    pub twist: Vec<i64>,
    pub strategy: SemistabilizeStrategy,
    pub status: StabilityStatus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumRecord {
    pub nodes: Vec<usize>,
    pub multidegree: Multidegree,
    pub dim: i64,
    pub partial_components: usize,
    pub irreducible_component: bool,
    pub description: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentsReport {
    pub count: usize,
    pub confidence: ComponentConfidence,
    pub picard_type: PicardType,
    pub complexity: BigNum,
    pub components: Vec<StratumRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaRecord {
    pub nodes: Vec<usize>,
    pub multidegree: Multidegree,
    pub stratum_dim: i64,
    pub description: String,
    pub dim: ThetaDim,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaReport {
    pub strata: Vec<ThetaRecord>,
    pub summary: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub strictly_semistable_w: Vec<WAnalysis>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NeronReport {
    pub degree: i64,
    pub count: BigNum,
    pub components: Vec<ClassRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryRecord {
    pub from: Multidegree,
    pub side: ExcessSide,
    pub stratum_nodes: Vec<usize>,
    pub stratum_multidegree: Multidegree,
    pub pullback_twist: Vec<usize>,
    pub description: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelReport {
    pub degree1: Degree1Embedding,
    pub degree1_offenders: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub necessary: Option<NaturalityVerdict>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g_minus_1: Option<NaturalityVerdict>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub correction_profile: Option<CorrectionProfile>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub specializations: Vec<BoundaryRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DGeneralReport {
    pub genus: i64,
    pub degree: i64,
    pub gcd: i64,
    pub verdict: DGeneral,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictReport {
    pub schema_version: u32,
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub curve: Option<CurveSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class_group: Option<ClassGroupReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub semistable: Option<SemistableReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub semistabilize: Option<SemistabilizeReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strata: Option<Vec<StratumRecord>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub components: Option<ComponentsReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<ThetaReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub neron: Option<NeronReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub abel: Option<AbelReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d_general: Option<DGeneralReport>,
}

impl VerdictReport {
    pub fn new(command: &str) -> Self {
        VerdictReport { schema_version: SCHEMA_VERSION, command: command.to_string(), ..Default::default() }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(c) = &self.curve {
            section(&mut out, "curve");
            table(
                &mut out,
                &["field", "value"],
                &[
                    vec!["components".into(), c.vertices.join(" ")],
                    vec!["gamma".into(), c.gamma.to_string()],
                    vec!["delta".into(), c.delta.to_string()],
                    vec!["b1".into(), c.b1.to_string()],
                    vec!["genus".into(), c.genus.to_string()],
                    vec!["complexity".into(), c.complexity.to_string()],
                    vec!["tree-like".into(), c.tree_like.to_string()],
                    vec!["essential connectivity".into(), c.essential_connectivity.to_string()],
                ],
            );
        }
        if let Some(cg) = &self.class_group {
            section(&mut out, "degree class group");
            let factors: Vec<String> = cg.invariant_factors.iter().map(|f| f.to_string()).collect();
            let basis: Vec<String> = cg.twister_basis.iter().map(|b| b.to_string()).collect();
            table(
                &mut out,
                &["field", "value"],
                &[
                    vec!["invariant factors".into(), format!("[{}]", factors.join(", "))],
                    vec!["order".into(), cg.order.to_string()],
                    vec!["twister basis".into(), basis.join(" ")],
                ],
            );
            if let Some(d) = cg.degree {
                section(&mut out, &format!("class representatives in degree {d}"));
                class_table(&mut out, &cg.representatives);
            }
        }
        if let Some(s) = &self.semistable {
            section(&mut out, "semistable multidegrees");
            let rows: Vec<Vec<String>> = s
                .semistable
                .iter()
                .map(|r| vec![r.multidegree.to_string(), r.status.to_string(), witnesses(&r.witnesses)])
                .collect();
            table(&mut out, &["multidegree", "status", "saturating"], &rows);
            section(&mut out, "stable multidegrees");
            let rows: Vec<Vec<String>> = s.stable.iter().map(|d| vec![d.to_string()]).collect();
            table(&mut out, &["multidegree"], &rows);
        }
        if let Some(s) = &self.semistabilize {
            section(&mut out, "semistabilization");
            let twist: Vec<String> = s.twist.iter().map(|t| t.to_string()).collect();
            table(
                &mut out,
                &["field", "value"],
                &[
                    vec!["input".into(), s.input.to_string()],
                    vec!["output".into(), s.output.to_string()],
                    vec!["twist".into(), format!("({})", twist.join(","))],
                    vec!["strategy".into(), format!("{:?}", s.strategy)],
                    vec!["status".into(), s.status.to_string()],
                ],
            );
        }
        if let Some(strata) = &self.strata {
            section(&mut out, "strata");
            strata_table(&mut out, strata);
        }
        if let Some(c) = &self.components {
            section(&mut out, "irreducible components");
            table(
                &mut out,
                &["field", "value"],
                &[
                    vec!["count".into(), c.count.to_string()],
                    vec!["complexity".into(), c.complexity.to_string()],
                    vec!["type".into(), c.picard_type.to_string()],
                    vec!["rule".into(), format!("{:?}", c.confidence).to_lowercase()],
                ],
            );
            strata_table(&mut out, &c.components);
        }
        if let Some(t) = &self.theta {
            section(&mut out, "theta strata");
            let rows: Vec<Vec<String>> = t
                .strata
                .iter()
                .map(|r| {
                    vec![
                        nodes(&r.nodes),
                        r.multidegree.to_string(),
                        r.stratum_dim.to_string(),
                        r.dim.to_string(),
                        r.description.clone(),
                    ]
                })
                .collect();
            table(&mut out, &["S", "d", "stratum dim", "theta dim", "description"], &rows);
            let _ = writeln!(out, "theta = {}", t.summary);
            for w in &t.strictly_semistable_w {
                section(&mut out, &format!("W-locus of {}", w.multidegree));
                let rows: Vec<Vec<String>> = w
                    .components
                    .iter()
                    .map(|c| vec![c.name.clone(), c.dim.to_string(), c.description.clone()])
                    .collect();
                table(&mut out, &["component", "dim", "description"], &rows);
            }
        }
        if let Some(n) = &self.neron {
            section(&mut out, &format!("Néron fiber in degree {}", n.degree));
            let _ = writeln!(out, "components: {}", n.count);
            class_table(&mut out, &n.components);
        }
        if let Some(a) = &self.abel {
            section(&mut out, "Abel maps");
            let mut rows = vec![vec![
                "degree-1 embedding".to_string(),
                a.degree1.embedding.to_string(),
                if a.degree1_offenders.is_empty() {
                    String::new()
                } else {
                    format!("offenders: {}", a.degree1_offenders.join(" "))
                },
            ]];
            if let Some(v) = &a.necessary {
                rows.push(vec!["degree d".into(), v.status.to_string(), reason(v)]);
            }
            if let Some(v) = &a.g_minus_1 {
                rows.push(vec!["degree g-1".into(), v.status.to_string(), reason(v)]);
            }
            table(&mut out, &["map", "verdict", "evidence"], &rows);
            if let Some(p) = &a.correction_profile {
                section(&mut out, "correction profile");
                let rows: Vec<Vec<String>> = p
                    .entries
                    .iter()
                    .map(|e| vec![e.l.to_string(), e.input.to_string(), e.a.to_string(), e.corrected.to_string()])
                    .collect();
                table(&mut out, &["l", "(l,g-1-l)", "a(l)", "corrected"], &rows);
            }
            if !a.specializations.is_empty() {
                section(&mut out, "specialization of strictly semistable multidegrees");
                let rows: Vec<Vec<String>> = a
                    .specializations
                    .iter()
                    .map(|b| {
                        vec![
                            b.from.to_string(),
                            nodes(&b.stratum_nodes),
                            b.stratum_multidegree.to_string(),
                            b.description.clone(),
                        ]
                    })
                    .collect();
                table(&mut out, &["d", "S", "limit multidegree", "limit"], &rows);
            }
        }
        if let Some(d) = &self.d_general {
            section(&mut out, "d-general");
            table(
                &mut out,
                &["g", "d", "gcd(d-g+1, 2g-2)", "verdict"],
                &[vec![d.genus.to_string(), d.degree.to_string(), d.gcd.to_string(), d.verdict.to_string()]],
            );
        }
        out
    }
}

fn reason(v: &NaturalityVerdict) -> String {
    serde_json::to_string(&v.reason).expect("reason serializes")
}

fn nodes(n: &[usize]) -> String {
    let parts: Vec<String> = n.iter().map(|e| format!("e{e}")).collect();
    format!("{{{}}}", parts.join(","))
}

fn witnesses(w: &[Vec<String>]) -> String {
    w.iter().map(|z| format!("{{{}}}", z.join(","))).collect::<Vec<_>>().join(" ")
}

fn strata_table(out: &mut String, strata: &[StratumRecord]) {
    let rows: Vec<Vec<String>> = strata
        .iter()
        .map(|s| {
            vec![
                nodes(&s.nodes),
                s.multidegree.to_string(),
                s.dim.to_string(),
                s.partial_components.to_string(),
                if s.irreducible_component { "yes".into() } else { "no".into() },
                s.description.clone(),
            ]
        })
        .collect();
    table(out, &["S", "d", "dim", "parts", "component", "description"], &rows);
}

fn class_table(out: &mut String, classes: &[ClassRecord]) {
    let rows: Vec<Vec<String>> = classes
        .iter()
        .map(|c| {
            let r: Vec<String> = c.residues.iter().map(|x| x.to_string()).collect();
            vec![format!("[{}]", r.join(",")), c.multidegree.to_string()]
        })
        .collect();
    table(out, &["label", "representative"], &rows);
}

fn section(out: &mut String, title: &str) {
    if !out.is_empty() {
        out.push('\n');
    }
    let _ = writeln!(out, "== {title}");
}

/// Left-aligned columns separated by two spaces.
fn table(out: &mut String, headers: &[&str], rows: &[Vec<String>]) {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut line = |cells: Vec<&str>| {
        let mut s = String::new();
        for (i, (cell, w)) in cells.iter().zip(&widths).enumerate() {
            if i + 1 == cells.len() {
                s.push_str(cell);
            } else {
                s.push_str(cell);
                s.push_str(&" ".repeat(w - cell.chars().count() + 2));
            }
        }
        out.push_str(s.trim_end());
        out.push('\n');
    };
    line(headers.to_vec());
    line(widths.iter().map(|&w| "-".repeat(w)).collect::<Vec<_>>().iter().map(|s| s.as_str()).collect());
    for row in rows {
        line(row.iter().map(|s| s.as_str()).collect());
    }
    if rows.is_empty() {
        out.push_str("(none)\n");
    }
}
