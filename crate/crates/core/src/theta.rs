//! Symbolic theta-divisor strata and dimensions of `W`-loci.
//!
//! Nothing here evaluates `h^0` of an actual line bundle. Each stratum gets
//! a descriptor string and a dimension where one is known.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::classgroup::Multidegree;
use crate::error::{Error, Result};
use crate::graph::{component_arithmetic_genus, component_codegree, counts, normalize, DualGraph, Limits};
use crate::picard::{strata_with, ExcessSide, Stratum};
use crate::stability::check_stability_with;

/// Dimension of `W_d(X)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "value")]
pub enum WDim {
    /// All of `Pic^d(X)`, of dimension `g`.
    Whole(i64),
    Exact(i64),
    Unknown,
}

/// Dimension of the image of the Abel map in multidegree `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "value")]
pub enum AbelDim {
    AtMost(i64),
    Exact(i64),
    Unknown,
}

/// Dimension of a locus that may be empty.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "value")]
pub enum ThetaDim {
    Known(i64),
    Empty,
    Unknown,
}

impl fmt::Display for ThetaDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ThetaDim::Known(k) => write!(f, "{k}"),
            ThetaDim::Empty => f.write_str("empty"),
            ThetaDim::Unknown => f.write_str("unknown"),
        }
    }
}

/// Which statement about `W_d` applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WClause {
    /// Some component has `d_i >= p_a(C_i) + codegree(C_i)`.
    ExcessComponent { vertex: usize },
    /// `|d| = g-1` and `d` is not semistable.
    Unstable,
    /// `|d| = g-1` and `d` is semistable.
    Semistable,
    None,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WComponent {
    pub name: String,
    pub description: String,
    pub dim: ThetaDim,
    /// Points added to a theta divisor to obtain the translate, if any.
    pub translate: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WAnalysis {
    pub multidegree: Multidegree,
    pub clause: WClause,
    pub w_dim: WDim,
    pub abel_image_dim: AbelDim,
    pub components: Vec<WComponent>,
}

pub fn w_dimension(g: &DualGraph, d: &Multidegree) -> Result<WAnalysis> {
    w_dimension_with(g, d, &Limits::default())
}

pub fn w_dimension_with(g: &DualGraph, d: &Multidegree, limits: &Limits) -> Result<WAnalysis> {
    if d.len() != g.vertex_count() {
        return Err(Error::LengthMismatch { expected: g.vertex_count(), found: d.len() });
    }
    if d.total() < 1 {
        return Err(Error::DegreeTooSmall(d.total()));
    }
    let genus = counts(g).genus;
    let unknown = |clause| WAnalysis {
        multidegree: d.clone(),
        clause,
        w_dim: WDim::Unknown,
        abel_image_dim: AbelDim::Unknown,
        components: Vec::new(),
    };
    if genus < 2 {
        return Ok(unknown(WClause::None));
    }
    for v in 0..g.vertex_count() {
        let bound = component_arithmetic_genus(g, v)? + component_codegree(g, v)? as i64;
        if d[v] >= bound {
            return Ok(WAnalysis {
                multidegree: d.clone(),
                clause: WClause::ExcessComponent { vertex: v },
                w_dim: WDim::Whole(genus),
                abel_image_dim: AbelDim::AtMost(d.total() - 1),
                components: Vec::new(),
            });
        }
    }
    if d.total() != genus - 1 {
        return Ok(unknown(WClause::None));
    }
    let verdict = check_stability_with(g, d, limits)?;
    if !verdict.is_semistable() {
        return Ok(WAnalysis {
            multidegree: d.clone(),
            clause: WClause::Unstable,
            w_dim: WDim::Whole(genus),
            abel_image_dim: AbelDim::AtMost(genus - 2),
            components: Vec::new(),
        });
    }
    let components = match vine_endpoint(g, d)? {
        Some((delta, side)) => vine_w_components(g, delta, side)?,
        None => Vec::new(),
    };
    Ok(WAnalysis {
        multidegree: d.clone(),
        clause: WClause::Semistable,
        w_dim: WDim::Exact(genus - 1),
        abel_image_dim: AbelDim::Exact(genus - 1),
        components,
    })
}

/// For a two-component curve without self-nodes, which strictly semistable
/// endpoint `d` is, if any.
fn vine_endpoint(g: &DualGraph, d: &Multidegree) -> Result<Option<(i64, ExcessSide)>> {
    if g.vertex_count() != 2 || g.edges().iter().any(|e| e.is_loop()) {
        return Ok(None);
    }
    let delta = g.edge_count() as i64;
    let (g1, g2) = (component_arithmetic_genus(g, 0)?, component_arithmetic_genus(g, 1)?);
    Ok(if d.entries() == [g1 - 1, g2 - 1 + delta] {
        Some((delta, ExcessSide::Second))
    } else if d.entries() == [g1 - 1 + delta, g2 - 1] {
        Some((delta, ExcessSide::First))
    } else {
        None
    })
}

fn vine_w_components(g: &DualGraph, delta: i64, side: ExcessSide) -> Result<Vec<WComponent>> {
    let genus = counts(g).genus;
    let (low, high) = match side {
        ExcessSide::Second => (0, 1),
        ExcessSide::First => (1, 0),
    };
    let gl = i64::from(g.vertices()[low].geometric_genus);
    let gh = i64::from(g.vertices()[high].geometric_genus);
    let (nl, nh) = (g.name(low), g.name(high));
    let point = if high == 0 { "p" } else { "q" };
    let translate = format!("+{point}_1+...+{point}_{delta}");
    let in_order = |first_low: String, first_high: String| {
        if low == 0 {
            format!("{first_low}×{first_high}")
        } else {
            format!("{first_high}×{first_low}")
        }
    };
    let dim_if = |genus_ok: bool| if genus_ok { ThetaDim::Known(genus - 1) } else { ThetaDim::Empty };
    Ok(vec![
        WComponent {
            name: "W1".into(),
            description: format!(
                "(ν*)^-1({})",
                in_order(format!("Θ({nl})"), format!("Pic^{}({nh})", gh - 1 + delta))
            ),
            dim: dim_if(gl >= 1),
            translate: None,
        },
        WComponent {
            name: "W2".into(),
            description: format!(
                "(ν*)^-1({})",
                in_order(format!("Pic^{}({nl})", gl - 1), format!("(Θ({nh}){translate})"))
            ),
            dim: dim_if(gh >= 1),
            translate: Some(translate),
        },
    ])
}

/// `W`-locus of the endpoint `(g1-1, g2-1+delta)` on the vine curve, which
/// splits into two components of dimension `g-1`.
pub fn w_components_vine_strictly_ss(g1: u32, g2: u32, delta: usize) -> Result<WAnalysis> {
    w_components_vine(g1, g2, delta, ExcessSide::Second)
}

/// As [`w_components_vine_strictly_ss`], choosing which component carries
/// the excess degree.
pub fn w_components_vine(g1: u32, g2: u32, delta: usize, side: ExcessSide) -> Result<WAnalysis> {
    if delta < 1 {
        return Err(Error::InvalidVine("at least one node is required".into()));
    }
    let g = DualGraph::vine(g1, g2, delta)?;
    let genus = counts(&g).genus;
    if genus < 2 {
        return Err(Error::GenusTooSmall(genus));
    }
    let (a, b, dl) = (i64::from(g1), i64::from(g2), delta as i64);
    let d = match side {
        ExcessSide::Second => Multidegree::new(vec![a - 1, b - 1 + dl]),
        ExcessSide::First => Multidegree::new(vec![a - 1 + dl, b - 1]),
    };
    w_dimension(&g, &d)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaStratum {
    pub base: Stratum,
    pub description: String,
    pub dim: ThetaDim,
}

fn format_degree(d: &Multidegree) -> String {
    if d.len() == 1 {
        d[0].to_string()
    } else {
        d.to_string()
    }
}

pub fn theta_strata(g: &DualGraph) -> Result<Vec<ThetaStratum>> {
    theta_strata_with(g, &Limits::default())
}

/// One theta stratum per Picard stratum, in the same order.
pub fn theta_strata_with(g: &DualGraph, limits: &Limits) -> Result<Vec<ThetaStratum>> {
    strata_with(g, limits)?
        .into_iter()
        .map(|base| theta_of_stratum(g, base, limits))
        .collect()
}

fn theta_of_stratum(g: &DualGraph, base: Stratum, limits: &Limits) -> Result<ThetaStratum> {
    let pn = normalize(g, &base.nodes)?;
    let parts: Vec<(String, i64, ThetaDim, Multidegree, bool)> = pn
        .components
        .iter()
        .map(|c| {
            let local = base.multidegree.restrict(&c.parent_vertices);
            let pa = counts(&c.graph).genus;
            let dim = match pa {
                p if p >= 2 => match w_dimension_with(&c.graph, &local, limits)?.w_dim {
                    WDim::Exact(k) => ThetaDim::Known(k),
                    _ => ThetaDim::Unknown,
                },
                1 => ThetaDim::Known(0),
                _ => ThetaDim::Empty,
            };
            let names: Vec<&str> = c.graph.vertices().iter().map(|v| v.name.as_str()).collect();
            let smooth = c.graph.vertex_count() == 1 && c.graph.edge_count() == 0;
            Ok((names.join("∪"), pa, dim, local, smooth))
        })
        .collect::<Result<_>>()?;

    if parts.len() == 1 {
        let (_, _, dim, _, smooth) = &parts[0];
        let description = if base.nodes.is_empty() {
            format!("W_{{{}}}(X)", format_degree(&base.multidegree))
        } else if *smooth {
            "Θ(X^ν)".to_string()
        } else {
            format!("W_{{{}}}(X^ν_{})", format_degree(&base.multidegree), base.nodes)
        };
        return Ok(ThetaStratum { base, description, dim: *dim });
    }

    let mut pieces = Vec::new();
    let mut dim = ThetaDim::Empty;
    for (j, (name, _, dj, local, smooth)) in parts.iter().enumerate() {
        let known = match dj {
            ThetaDim::Empty => continue,
            ThetaDim::Unknown => None,
            ThetaDim::Known(k) => Some(*k),
        };
        let head = if *smooth {
            format!("Θ({name})")
        } else {
            format!("W_{{{}}}({name})", format_degree(local))
        };
        let mut factors = vec![head];
        let mut others = 0;
        for (k, (nk, pk, _, lk, sk)) in parts.iter().enumerate() {
            if k != j {
                let label = if *sk { nk.clone() } else { format!("({nk})") };
                factors.push(format!("Pic^{{{}}}{label}", format_degree(lk)));
                others += pk;
            }
        }
        pieces.push(factors.join("×"));
        dim = match (dim, known) {
            (ThetaDim::Unknown, _) | (_, None) => ThetaDim::Unknown,
            (ThetaDim::Known(a), Some(k)) => ThetaDim::Known(a.max(k + others)),
            (ThetaDim::Empty, Some(k)) => ThetaDim::Known(k + others),
        };
    }
    let description = if pieces.is_empty() { "∅".to_string() } else { pieces.join(" ∪ ") };
    Ok(ThetaStratum { base, description, dim })
}

/// The whole theta divisor as a disjoint union of its nonempty strata.
pub fn theta_summary(strata: &[ThetaStratum]) -> String {
    let nonempty: Vec<&ThetaStratum> = strata.iter().filter(|t| t.dim != ThetaDim::Empty).collect();
    if nonempty.is_empty() {
        return "∅".into();
    }
    let wrap = nonempty.len() > 1;
    nonempty
        .iter()
        .map(|t| {
            if wrap && t.description.contains(" ∪ ") {
                format!("({})", t.description)
            } else {
                t.description.clone()
            }
        })
        .collect::<Vec<_>>()
        .join(" ⊔ ")
}
