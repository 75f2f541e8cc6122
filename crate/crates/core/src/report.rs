//! The full analysis of one graph under one group, as a versioned JSON
//! document with sorted keys.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::autsearch::{automorphism_group, SearchStats};
use crate::design::{
    adjacency_relation_class, extract_design, profile_with_stabilizer, require_automorphisms,
    AdjacencyRelationClass, BlockDesign, SphereOrbitProfile,
};
use crate::error::{Error, Result};
use crate::graph::{distance_regular, girth_data, local_intersection_numbers, DistanceRegularity, GirthData, Graph, LocalIntersectionNumbers};
use crate::graph6::encode_graph6;
use crate::harness::{verify_main_theorem, TheoremVerdict, TransitivityReport, Verdict};
use crate::perm::{point_stabilizer, GeneratedGroup};

pub const SCHEMA_VERSION: &str = "sdtgraph.analysis/1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphMetadata {
    pub id: String,
    pub order: usize,
    pub edge_count: usize,
    pub valency: Option<usize>,
    pub graph6: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupMetadata {
    pub id: String,
    /// Decimal, since orders overflow machine integers.
    pub order: String,
    /// Cycle notation.
    pub generators: Vec<String>,
    pub base: Vec<usize>,
    /// Present when the group was found by automorphism search.
    pub search: Option<SearchStats>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionData {
    pub distance_regularity: DistanceRegularity,
    /// Level counts around vertex 0.
    pub local: LocalIntersectionNumbers,
}

/// What happened to one orbit in `Γ_{s+1}(α)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitEntry {
    pub orbit_index: usize,
    pub design: Option<BlockDesign>,
    pub adjacency: Option<AdjacencyRelationClass>,
    /// Why the design was not extracted, when the hypothesis fails.
    pub skipped: Option<String>,
    /// A failed structural statement, with its witness.
    pub violation: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RadiusAnalysis {
    pub s: usize,
    pub profile: SphereOrbitProfile,
    pub orbits: Vec<OrbitEntry>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timing {
    pub milliseconds: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema: String,
    pub graph: GraphMetadata,
    pub group: GroupMetadata,
    pub girth: GirthData,
    pub intersection: IntersectionData,
    pub transitivity: TransitivityReport,
    /// Base vertex of the orbit analyses.
    pub alpha: usize,
    pub radii: Vec<RadiusAnalysis>,
    pub verdict: TheoremVerdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

impl AnalysisReport {
    /// Violations found anywhere in the report.
    pub fn violations(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .radii
            .iter()
            .flat_map(|r| {
                r.orbits
                    .iter()
                    .filter_map(move |o| o.violation.as_ref().map(|v| format!("s={} orbit {}: {v}", r.s, o.orbit_index)))
            })
            .collect();
        if self.verdict.verdict == Verdict::Violation {
            out.push(format!("main statement: {:?}", self.verdict.checks));
        }
        out
    }

    /// Canonical JSON: keys sorted, two-space indentation.
    pub fn to_json(&self) -> Result<String> {
        let value = serde_json::to_value(self).map_err(|e| Error::Invariant(e.to_string()))?;
        serde_json::to_string_pretty(&value).map_err(|e| Error::Invariant(e.to_string()))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            location: format!("line {}", e.line()),
            message: e.to_string(),
        })
    }
}

#[derive(Debug, Clone, Default)]
pub struct AnalysisOptions {
    pub timing: bool,
}

/// Group to analyse under: given generators, or the full automorphism
/// group when `None`.
pub struct GroupChoice {
    pub id: String,
    pub group: Option<GeneratedGroup>,
}

impl GroupChoice {
    pub fn full() -> Self {
        GroupChoice {
            id: "Aut".into(),
            group: None,
        }
    }
}

/// Runs every analysis on a connected graph.
pub fn analyze(g: &Graph, graph_id: &str, choice: GroupChoice, options: &AnalysisOptions) -> Result<AnalysisReport> {
    let start = Instant::now();
    g.require_connected()?;
    let (group, search) = match choice.group {
        Some(group) => {
            require_automorphisms(g, &group)?;
            (group, None)
        }
        None => {
            let (group, stats) = automorphism_group(g);
            (group, Some(stats))
        }
    };
    let verdict = verify_main_theorem(g, &group, graph_id, &choice.id)?;
    let alpha = 0;
    let radii = if g.valency().is_some() {
        orbit_analyses(g, &group, alpha)?
    } else {
        Vec::new()
    };
    let report = AnalysisReport {
        schema: SCHEMA_VERSION.into(),
        graph: GraphMetadata {
            id: graph_id.into(),
            order: g.n(),
            edge_count: g.edge_count(),
            valency: g.valency(),
            graph6: encode_graph6(g),
        },
        group: GroupMetadata {
            id: choice.id,
            order: group.order().to_string(),
            generators: group.generators().iter().map(ToString::to_string).collect(),
            base: group.base(),
            search,
        },
        girth: girth_data(g),
        intersection: IntersectionData {
            distance_regularity: distance_regular(g)?,
            local: local_intersection_numbers(g, alpha)?,
        },
        transitivity: verdict.observed.transitivity.clone(),
        alpha,
        radii,
        verdict,
        timing: options.timing.then(|| Timing {
            milliseconds: start.elapsed().as_millis() as u64,
        }),
    };
    Ok(report)
}

/// Profiles, designs and adjacency classes at every radius where the
/// stabilizer stays transitive on the spheres.
pub fn orbit_analyses(g: &Graph, group: &GeneratedGroup, alpha: usize) -> Result<Vec<RadiusAnalysis>> {
    let stab = point_stabilizer(group, alpha)?;
    let mut out = Vec::new();
    for s in 1.. {
        let profile = match profile_with_stabilizer(g, &stab, alpha, s) {
            Ok(p) => p,
            Err(Error::Precondition(_)) => break,
            Err(e) => return Err(e),
        };
        let mut orbits = Vec::new();
        for index in 0..profile.orbits.len() {
            let mut entry = OrbitEntry {
                orbit_index: index,
                design: None,
                adjacency: None,
                skipped: None,
                violation: None,
            };
            match extract_design(g, &stab, &profile, index, None) {
                Ok(design) => {
                    match adjacency_relation_class(g, &stab, &profile, &design) {
                        Ok(a) => entry.adjacency = Some(a),
                        Err(e @ Error::TheoremViolation { .. }) => entry.violation = Some(e.to_string()),
                        Err(e) => return Err(e),
                    }
                    entry.design = Some(design);
                }
                Err(e @ Error::Hypothesis { .. }) => entry.skipped = Some(e.to_string()),
                Err(e @ Error::TheoremViolation { .. }) => entry.violation = Some(e.to_string()),
                Err(e) => return Err(e),
            }
            orbits.push(entry);
        }
        out.push(RadiusAnalysis { s, profile, orbits });
    }
    Ok(out)
}
