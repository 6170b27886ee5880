//! Argument parsing and dispatch.

use std::io::Write;

use clap::{Args, Parser, Subcommand};
use num_integer::Integer;

use super::curve::{parse_curve, CurveError};
use super::report::*;
use crate::abel::{correction_profile_vine, degree1_abel_is_embedding, natural_g_minus_1, naturality_necessary};
use crate::classgroup::{degree_class_group, semistabilize_with, twister_lattice, Multidegree};
use crate::error::Error;
use crate::graph::{complexity, counts, essential_connectivity, is_tree_like, DualGraph, Limits};
use crate::picard::{
    classify_type_g_minus_1_with, d_general_verdict, irreducible_components_with, neron_fiber_with,
    specialize_two_component, strata_with, Stratum,
};
use crate::stability::{check_stability_with, enumerate_semistable_with, enumerate_stable_with, StabilityStatus};
use crate::theta::{theta_strata_with, theta_summary, w_dimension_with};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_CAP: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "nodal", version, about = "Invariants of compactified Jacobians of nodal curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Largest vertex count for subcurve enumeration.
    #[arg(long, global = true, value_name = "N")]
    max_vertices: Option<usize>,
    /// Largest edge count for stratum enumeration.
    #[arg(long, global = true, value_name = "N")]
    max_edges: Option<usize>,
    /// Largest number of multidegrees scanned in a box.
    #[arg(long, global = true, value_name = "N")]
    max_box: Option<u64>,
    /// Chip-firing moves before falling back to coset search.
    #[arg(long, global = true, value_name = "N")]
    max_firings: Option<usize>,
}

#[derive(Debug, Args)]
struct CurveArg {
    /// Curve file (JSON or TOML), or `-` for stdin.
    curve: String,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Counts, complexity, tree-likeness and essential connectivity.
    Info(CurveArg),
    /// Degree class group, optionally with representatives in degree N.
    Classgroup {
        #[command(flatten)]
        curve: CurveArg,
        #[arg(short = 'd', long = "degree", allow_negative_numbers = true)]
        degree: Option<i64>,
    },
    /// Semistable and stable multidegrees of degree g-1.
    Semistable(CurveArg),
    /// Semistable representative of a degree g-1 multidegree.
    Semistabilize {
        #[command(flatten)]
        curve: CurveArg,
        /// Comma-separated multidegree, in file vertex order.
        #[arg(short = 'd', long = "multidegree", allow_hyphen_values = true)]
        multidegree: String,
    },
    /// Strata of the degree g-1 compactified Jacobian.
    Strata(CurveArg),
    /// Irreducible components and N/D type.
    Components(CurveArg),
    /// Theta-divisor strata.
    Theta(CurveArg),
    /// Components of the Néron fiber in degree N (default g-1).
    Neron {
        #[command(flatten)]
        curve: CurveArg,
        #[arg(short = 'd', long = "degree", allow_negative_numbers = true)]
        degree: Option<i64>,
    },
    /// Abel map predicates.
    Abel {
        #[command(flatten)]
        curve: CurveArg,
        /// Test the necessary naturality condition in degree N.
        #[arg(short = 'd', long = "degree", allow_negative_numbers = true, conflicts_with = "g_minus_1")]
        degree: Option<i64>,
        /// Decide naturality in degree g-1.
        #[arg(long = "g-minus-1")]
        g_minus_1: bool,
    },
    /// Whether degree N is general in genus g.
    Dgeneral {
        /// Curve file; supplies the genus and the tree-like refinement.
        #[arg(required_unless_present = "genus", conflicts_with = "genus")]
        curve: Option<String>,
        #[arg(short = 'd', long = "degree", allow_negative_numbers = true)]
        degree: i64,
        #[arg(long)]
        genus: Option<i64>,
    },
}

#[derive(Debug)]
enum Failure {
    Curve(CurveError),
    Core(Error),
    Usage(String),
}

impl From<CurveError> for Failure {
    fn from(e: CurveError) -> Self {
        Failure::Curve(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn exit_code(&self) -> i32 {
        match self {
            Failure::Core(e) if e.is_cap() => EXIT_CAP,
            _ => EXIT_USAGE,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Curve(e) => e.to_string(),
            Failure::Core(e) => e.to_string(),
            Failure::Usage(m) => m.clone(),
        }
    }
}

/// Runs the command line `args` (program name first), writing the report
/// to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli) {
        Ok(report) => {
            let text = if cli.json { report.to_json() } else { report.to_text() };
            match out.write_all(text.as_bytes()) {
                Ok(()) => EXIT_OK,
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    EXIT_USAGE
                }
            }
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message());
            f.exit_code()
        }
    }
}

fn limits(cli: &Cli) -> Limits {
    let mut l = Limits::default();
    if let Some(v) = cli.max_vertices {
        l.max_subcurve_vertices = v;
    }
    if let Some(v) = cli.max_edges {
        l.max_strata_edges = v;
    }
    if let Some(v) = cli.max_box {
        l.max_box_points = v;
    }
    if let Some(v) = cli.max_firings {
        l.max_firings = v;
    }
    l
}

fn parse_multidegree(text: &str, g: &DualGraph) -> Result<Multidegree, Failure> {
    let entries = text
        .split(',')
        .map(|s| s.trim().parse::<i64>().map_err(|e| Failure::Usage(format!("bad multidegree entry `{s}`: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    if entries.len() != g.vertex_count() {
        return Err(Error::LengthMismatch { expected: g.vertex_count(), found: entries.len() }.into());
    }
    Ok(Multidegree::new(entries))
}

fn curve_summary(g: &DualGraph) -> CurveSummary {
    let c = counts(g);
    CurveSummary {
        vertices: g.vertices().iter().map(|v| v.name.clone()).collect(),
        gamma: c.gamma,
        delta: c.delta,
        b1: c.b1,
        genus: c.genus,
        complexity: complexity(g).into(),
        tree_like: is_tree_like(g),
        essential_connectivity: essential_connectivity(g),
    }
}

fn stratum_record(s: &Stratum, top: i64) -> StratumRecord {
    StratumRecord {
        nodes: s.nodes.edges.clone(),
        multidegree: s.multidegree.clone(),
        dim: s.dim,
        partial_components: s.components,
        irreducible_component: s.dim == top,
        description: s.description(),
    }
}

fn execute(cli: &Cli) -> Result<VerdictReport, Failure> {
    let limits = limits(cli);
    match &cli.command {
        Command::Info(c) => {
            let g = parse_curve(&c.curve)?;
            let mut r = VerdictReport::new("info");
            r.curve = Some(curve_summary(&g));
            Ok(r)
        }
        Command::Classgroup { curve, degree } => {
            let g = parse_curve(&curve.curve)?;
            let dcg = degree_class_group(&g);
            let representatives = match degree {
                Some(d) => dcg
                    .class_representatives_with(&g, *d, &limits)?
                    .into_iter()
                    .map(|m| {
                        Ok(ClassRecord {
                            residues: dcg.class_of(&m)?.residues.iter().map(BigNum::from).collect(),
                            multidegree: m,
                        })
                    })
                    .collect::<Result<Vec<_>, Error>>()?,
                None => Vec::new(),
            };
            let mut r = VerdictReport::new("classgroup");
            r.curve = Some(curve_summary(&g));
            r.class_group = Some(ClassGroupReport {
                invariant_factors: dcg.invariant_factors().iter().map(BigNum::from).collect(),
                order: dcg.order().into(),
                twister_basis: twister_lattice(&g)?.basis,
                degree: *degree,
                representatives,
            });
            Ok(r)
        }
        Command::Semistable(c) => {
            let g = parse_curve(&c.curve)?;
            let semistable = enumerate_semistable_with(&g, &limits)?
                .into_iter()
                .map(|d| {
                    let v = check_stability_with(&g, &d, &limits)?;
                    Ok(VerdictRecord {
                        multidegree: d,
                        status: v.status,
                        witnesses: v.witnesses.iter().map(|z| z.names(&g)).collect(),
                    })
                })
                .collect::<Result<Vec<_>, Error>>()?;
            let mut r = VerdictReport::new("semistable");
            r.curve = Some(curve_summary(&g));
            r.semistable = Some(SemistableReport { semistable, stable: enumerate_stable_with(&g, &limits)? });
            Ok(r)
        }
        Command::Semistabilize { curve, multidegree } => {
            let g = parse_curve(&curve.curve)?;
            let d = parse_multidegree(multidegree, &g)?;
            let s = semistabilize_with(&g, &d, &limits)?;
            let status = check_stability_with(&g, &s.multidegree, &limits)?.status;
            let mut r = VerdictReport::new("semistabilize");
            r.semistabilize = Some(SemistabilizeReport {
                input: d,
                output: s.multidegree,
                twist: s.twist,
                strategy: s.strategy,
                status,
            });
            Ok(r)
        }
        Command::Strata(c) => {
            let g = parse_curve(&c.curve)?;
            let all = strata_with(&g, &limits)?;
            let top = all.iter().map(|s| s.dim).max().unwrap_or(0);
            let mut r = VerdictReport::new("strata");
            r.curve = Some(curve_summary(&g));
            r.strata = Some(all.iter().map(|s| stratum_record(s, top)).collect());
            Ok(r)
        }
        Command::Components(c) => {
            let g = parse_curve(&c.curve)?;
            let comps = irreducible_components_with(&g, &limits)?;
            let kind = classify_type_g_minus_1_with(&g, &limits)?;
            let top = comps.components.first().map_or(0, |s| s.dim);
            let mut r = VerdictReport::new("components");
            r.curve = Some(curve_summary(&g));
            r.components = Some(ComponentsReport {
                count: comps.components.len(),
                confidence: comps.confidence,
                picard_type: kind.kind,
                complexity: kind.complexity.into(),
                components: comps.components.iter().map(|s| stratum_record(s, top)).collect(),
            });
            Ok(r)
        }
        Command::Theta(c) => {
            let g = parse_curve(&c.curve)?;
            let strata = theta_strata_with(&g, &limits)?;
            let summary = theta_summary(&strata);
            let mut strictly_semistable_w = Vec::new();
            if counts(&g).genus >= 2 {
                for d in enumerate_semistable_with(&g, &limits)? {
                    if check_stability_with(&g, &d, &limits)?.status == StabilityStatus::StrictlySemistable {
                        strictly_semistable_w.push(w_dimension_with(&g, &d, &limits)?);
                    }
                }
            }
            let mut r = VerdictReport::new("theta");
            r.curve = Some(curve_summary(&g));
            r.theta = Some(ThetaReport {
                strata: strata
                    .into_iter()
                    .map(|t| ThetaRecord {
                        nodes: t.base.nodes.edges.clone(),
                        multidegree: t.base.multidegree.clone(),
                        stratum_dim: t.base.dim,
                        description: t.description,
                        dim: t.dim,
                    })
                    .collect(),
                summary,
                strictly_semistable_w,
            });
            Ok(r)
        }
        Command::Neron { curve, degree } => {
            let g = parse_curve(&curve.curve)?;
            let d = degree.unwrap_or(counts(&g).genus - 1);
            let fiber = neron_fiber_with(&g, d, &limits)?;
            let mut r = VerdictReport::new("neron");
            r.curve = Some(curve_summary(&g));
            r.neron = Some(NeronReport {
                degree: d,
                count: fiber.count.into(),
                components: fiber
                    .components
                    .into_iter()
                    .map(|(label, m)| ClassRecord {
                        residues: label.residues.iter().map(BigNum::from).collect(),
                        multidegree: m,
                    })
                    .collect(),
            });
            Ok(r)
        }
        Command::Abel { curve, degree, g_minus_1 } => {
            let g = parse_curve(&curve.curve)?;
            let degree1 = degree1_abel_is_embedding(&g);
            let degree1_offenders = degree1.offenders.iter().map(|&v| g.name(v).to_string()).collect();
            let mut abel = AbelReport {
                degree1,
                degree1_offenders,
                necessary: None,
                g_minus_1: None,
                correction_profile: None,
                specializations: Vec::new(),
            };
            if let Some(d) = degree {
                abel.necessary = Some(naturality_necessary(&g, *d)?);
            } else {
                // Without --g-minus-1, curves outside the closed form just omit this part.
                match natural_g_minus_1(&g) {
                    Ok(v) => {
                        let vs = g.vertices();
                        abel.g_minus_1 = Some(v);
                        abel.correction_profile = Some(correction_profile_vine(
                            vs[0].geometric_genus,
                            vs[1].geometric_genus,
                            g.edge_count(),
                        )?);
                        for d in enumerate_semistable_with(&g, &limits)? {
                            if check_stability_with(&g, &d, &limits)?.status != StabilityStatus::StrictlySemistable {
                                continue;
                            }
                            if let Ok(b) = specialize_two_component(&g, &d) {
                                abel.specializations.push(BoundaryRecord {
                                    from: d,
                                    side: b.side,
                                    stratum_nodes: b.stratum.nodes.edges.clone(),
                                    stratum_multidegree: b.stratum.multidegree.clone(),
                                    pullback_twist: b.pullback_twist,
                                    description: b.description,
                                });
                            }
                        }
                    }
                    Err(e) if *g_minus_1 => return Err(e.into()),
                    Err(_) => {}
                }
            }
            let mut r = VerdictReport::new("abel");
            r.curve = Some(curve_summary(&g));
            r.abel = Some(abel);
            Ok(r)
        }
        Command::Dgeneral { curve, degree, genus } => {
            let g = curve.as_deref().map(parse_curve).transpose()?;
            let genus = match (&g, genus) {
                (Some(g), _) => counts(g).genus,
                (None, Some(k)) => *k,
                (None, None) => return Err(Failure::Usage("a curve file or --genus is required".into())),
            };
            let verdict = d_general_verdict(genus, *degree, g.as_ref())?;
            let mut r = VerdictReport::new("dgeneral");
            r.curve = g.as_ref().map(curve_summary);
            r.d_general = Some(DGeneralReport {
                genus,
                degree: *degree,
                gcd: (degree - genus + 1).gcd(&(2 * genus - 2)),
                verdict,
            });
            Ok(r)
        }
    }
}
