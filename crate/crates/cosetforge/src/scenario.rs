//! Scenario harness: executable expectation files.
//!
//! A scenario is an embedded JSON document naming pipeline steps and their
//! expected outcomes. Every expected value carries a `source` marker saying
//! where the number came from (`external`: published result; `identity`:
//! forced by arithmetic or a definition; `recomputed`: derived once by an
//! independent oracle in this repository). Deserialization refuses files
//! with unmarked expectations, so the comparison engine stays the single
//! place where claims meet computation.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::atlas::{self, AtlasError};
use crate::census::{census, CensusError, SubgroupCensus};
use crate::coset::{coset_graph, CosetError, CosetGraph};
use crate::feasible::{
    scan_feasible, verify_feasible, FeasibilityQuery, FeasibilityReport, FeasibleError,
};
use crate::fp::{self, FpError};
use crate::isotype::IsoName;
use crate::stabchain::{GroupError, PermGroup};
use crate::subgroup::{Subgroup, SubgroupError};
use crate::symmetry::{are_isomorphic, automorphism_group_seeded, is_s_arc_transitive, SymmetryError};

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("unknown scenario id {0:?}")]
    UnknownScenario(String),
    #[error("scenario file {id}: {source}")]
    Malformed {
        id: String,
        #[source]
        source: serde_json::Error,
    },
    #[error("unknown subgroup type name {0:?}")]
    UnknownTarget(String),
    #[error("no census class with feasible count {wanted}; counts were {seen:?}")]
    NoClassWithCount { wanted: usize, seen: Vec<usize> },
    #[error("{count} census classes share feasible count {wanted}; selector must be unique")]
    AmbiguousClass { wanted: usize, count: usize },
    #[error(transparent)]
    Atlas(#[from] AtlasError),
    #[error(transparent)]
    Census(#[from] CensusError),
    #[error(transparent)]
    Feasible(#[from] FeasibleError),
    #[error(transparent)]
    Coset(#[from] CosetError),
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Subgroup(#[from] SubgroupError),
    #[error(transparent)]
    Fp(#[from] FpError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Tier {
    Core,
    Stretch,
}

/// Where an expected value comes from. Files must mark every expectation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    External,
    Identity,
    Recomputed,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expected<T> {
    pub value: T,
    pub source: Source,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub id: String,
    pub tier: Tier,
    pub title: String,
    pub steps: Vec<Step>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "op", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Step {
    Census {
        group: String,
        target: String,
        expect_classes: Expected<usize>,
    },
    Feasible {
        group: String,
        target: String,
        valency: usize,
        #[serde(default)]
        budget: Option<u64>,
        expect_counts: Expected<Vec<usize>>,
        expect_scanned_each_equals_order: Expected<bool>,
    },
    GraphPipeline {
        group: String,
        target: String,
        valency: usize,
        class_feasible_count: usize,
        expect_vertices: Expected<usize>,
        expect_valency: Expected<usize>,
        expect_connected: Expected<bool>,
        expect_distinct_classes_pairwise_isomorphic: Expected<bool>,
        expect_two_arc_transitive: Expected<bool>,
        expect_three_arc_transitive: Expected<bool>,
        expect_aut_order: Expected<u64>,
        expect_ambient_image_normal_in_aut: Expected<bool>,
        expect_last_point_stabilizer_regular: Expected<bool>,
    },
    Fixture {
        valency: usize,
        expect_subgroup_order: Expected<u64>,
        expect_type: Expected<String>,
        expect_regular: Expected<bool>,
        expect_candidates: Expected<usize>,
        expect_each_feasible: Expected<bool>,
        expect_each_extends_to_ambient: Expected<bool>,
    },
    IndexTable {
        expect_rows: Expected<usize>,
        expect_all_ok: Expected<bool>,
    },
    Presentation {
        expect_order: Expected<u64>,
        expect_faithful_degree: Expected<usize>,
        expect_no_watched_normal_subgroup: Expected<bool>,
    },
    LoadOrder {
        group: String,
        expect_order: Expected<u64>,
    },
}

/// One compared expectation.
#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub label: String,
    pub expected: Value,
    pub actual: Value,
    pub source: Source,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScenarioOutcome {
    pub id: String,
    pub tier: Tier,
    pub title: String,
    pub checks: Vec<CheckResult>,
    pub passed: bool,
    pub elapsed_ms: u64,
}

const SCENARIO_FILES: &[&str] = &[
    include_str!("../scenarios/smoke-s4.json"),
    include_str!("../scenarios/m11.json"),
    include_str!("../scenarios/psl27-s4.json"),
    include_str!("../scenarios/psl33-agl23.json"),
    include_str!("../scenarios/a9.json"),
    include_str!("../scenarios/m12-s4.json"),
    include_str!("../scenarios/m12-a4.json"),
    include_str!("../scenarios/a24-example.json"),
    include_str!("../scenarios/index-table.json"),
    include_str!("../scenarios/a12-a4.json"),
    include_str!("../scenarios/sevenarc-presentation.json"),
    include_str!("../scenarios/m24.json"),
    include_str!("../scenarios/psp62.json"),
];

/// Parse every embedded scenario file.
pub fn all_scenarios() -> Result<Vec<ScenarioFile>, ScenarioError> {
    SCENARIO_FILES
        .iter()
        .map(|text| {
            serde_json::from_str::<ScenarioFile>(text).map_err(|source| ScenarioError::Malformed {
                id: peek_id(text),
                source,
            })
        })
        .collect()
}

fn peek_id(text: &str) -> String {
    #[derive(Deserialize)]
    struct IdOnly {
        id: String,
    }
    serde_json::from_str::<IdOnly>(text)
        .map(|v| v.id)
        .unwrap_or_else(|_| "<unparsed>".to_string())
}

pub fn scenario_ids(tier: Option<Tier>) -> Result<Vec<String>, ScenarioError> {
    Ok(all_scenarios()?
        .into_iter()
        .filter(|s| tier.is_none_or(|t| s.tier == t))
        .map(|s| s.id)
        .collect())
}

pub fn find_scenario(id: &str) -> Result<ScenarioFile, ScenarioError> {
    all_scenarios()?
        .into_iter()
        .find(|s| s.id == id)
        .ok_or_else(|| ScenarioError::UnknownScenario(id.to_string()))
}

fn parse_target(text: &str) -> Result<IsoName, ScenarioError> {
    IsoName::parse(text).ok_or_else(|| ScenarioError::UnknownTarget(text.to_string()))
}

/// Per-run caches so multiple steps over the same group do the heavy
/// enumeration once.
#[derive(Default)]
struct Context {
    groups: HashMap<String, PermGroup>,
    censuses: HashMap<(String, IsoName), SubgroupCensus>,
}

impl Context {
    fn group(&mut self, name: &str) -> Result<&PermGroup, ScenarioError> {
        if !self.groups.contains_key(name) {
            let entry = atlas::load_atlas(name)?;
            self.groups.insert(name.to_string(), entry.group);
        }
        Ok(&self.groups[name])
    }

    fn census(
        &mut self,
        name: &str,
        target: IsoName,
    ) -> Result<&SubgroupCensus, ScenarioError> {
        let key = (name.to_string(), target);
        if !self.censuses.contains_key(&key) {
            let group = self.group(name)?.clone();
            let result = census(name, &group, target)?;
            self.censuses.insert(key.clone(), result);
        }
        Ok(&self.censuses[&key])
    }
}

fn check<T: Serialize + PartialEq>(
    checks: &mut Vec<CheckResult>,
    label: impl Into<String>,
    expected: &Expected<T>,
    actual: T,
) {
    let expected_value = serde_json::to_value(&expected.value).expect("serializable");
    let actual_value = serde_json::to_value(&actual).expect("serializable");
    checks.push(CheckResult {
        label: label.into(),
        passed: expected.value == actual,
        expected: expected_value,
        actual: actual_value,
        source: expected.source,
    });
}

/// Run the scans for every census class, in class order.
fn scans_per_class(
    ctx: &mut Context,
    group_name: &str,
    target: IsoName,
    valency: usize,
    budget: Option<u64>,
) -> Result<Vec<FeasibilityReport>, ScenarioError> {
    let class_subgroups: Vec<Subgroup> = ctx
        .census(group_name, target)?
        .classes
        .iter()
        .map(|c| c.representative.clone())
        .collect();
    let ambient = ctx.group(group_name)?;
    class_subgroups
        .iter()
        .map(|subgroup| {
            let mut query = FeasibilityQuery::new(group_name, ambient, subgroup, valency);
            if let Some(b) = budget {
                query.element_budget = b;
            }
            Ok(scan_feasible(&query)?)
        })
        .collect()
}

fn run_step(ctx: &mut Context, step: &Step, checks: &mut Vec<CheckResult>) -> Result<(), ScenarioError> {
    match step {
        Step::Census {
            group,
            target,
            expect_classes,
        } => {
            let target = parse_target(target)?;
            let result = ctx.census(group, target)?;
            check(
                checks,
                format!("census {group} {target}: class count"),
                expect_classes,
                result.class_count(),
            );
        }
        Step::Feasible {
            group,
            target,
            valency,
            budget,
            expect_counts,
            expect_scanned_each_equals_order,
        } => {
            let target_name = parse_target(target)?;
            let reports = scans_per_class(ctx, group, target_name, *valency, *budget)?;
            // class order is a census implementation detail: compare as a
            // sorted multiset
            let mut counts: Vec<usize> = reports.iter().map(|r| r.feasible.len()).collect();
            counts.sort_unstable();
            let mut wanted = expect_counts.clone();
            wanted.value.sort_unstable();
            check(
                checks,
                format!("feasible {group} {target_name} valency {valency}: per-class counts"),
                &wanted,
                counts,
            );
            let ambient_order = ctx.group(group)?.order_u64();
            let scanned_ok = reports
                .iter()
                .all(|r| Some(r.scanned) == ambient_order);
            check(
                checks,
                format!("feasible {group} {target_name}: every scan swept the whole group"),
                expect_scanned_each_equals_order,
                scanned_ok,
            );
        }
        Step::GraphPipeline {
            group,
            target,
            valency,
            class_feasible_count,
            expect_vertices,
            expect_valency,
            expect_connected,
            expect_distinct_classes_pairwise_isomorphic,
            expect_two_arc_transitive,
            expect_three_arc_transitive,
            expect_aut_order,
            expect_ambient_image_normal_in_aut,
            expect_last_point_stabilizer_regular,
        } => {
            let target_name = parse_target(target)?;
            let reports = scans_per_class(ctx, group, target_name, *valency, None)?;
            let counts: Vec<usize> = reports.iter().map(|r| r.feasible.len()).collect();
            let hits: Vec<usize> = counts
                .iter()
                .enumerate()
                .filter(|&(_, &c)| c == *class_feasible_count)
                .map(|(i, _)| i)
                .collect();
            let class_index = match hits.len() {
                0 => {
                    return Err(ScenarioError::NoClassWithCount {
                        wanted: *class_feasible_count,
                        seen: counts,
                    })
                }
                1 => hits[0],
                n => {
                    return Err(ScenarioError::AmbiguousClass {
                        wanted: *class_feasible_count,
                        count: n,
                    })
                }
            };
            let report = &reports[class_index];
            let subgroup = ctx.census(group, target_name)?.classes[class_index]
                .representative
                .clone();
            let ambient = ctx.group(group)?.clone();
            let vertex_cap = (ambient.order() / subgroup.order())
                .try_into()
                .unwrap_or(usize::MAX);

            // one graph per double-coset class; same class means the
            // literally identical edge set
            let graphs: Vec<CosetGraph> = report
                .classes
                .iter()
                .map(|cls| {
                    let rep = &report.feasible[cls.members[0]];
                    Ok(coset_graph(&ambient, &subgroup, rep, vertex_cap)?)
                })
                .collect::<Result<_, ScenarioError>>()?;
            let pairwise_isomorphic = graphs.iter().enumerate().all(|(i, a)| {
                graphs
                    .iter()
                    .skip(i + 1)
                    .all(|b| are_isomorphic(&a.graph, &b.graph).is_some())
            });
            check(
                checks,
                format!("graphs {group} {target_name}: distinct double-coset graphs pairwise isomorphic"),
                expect_distinct_classes_pairwise_isomorphic,
                pairwise_isomorphic,
            );

            let lead = &graphs[0];
            check(
                checks,
                format!("graph {group} {target_name}: vertex count"),
                expect_vertices,
                lead.graph.vertex_count(),
            );
            check(
                checks,
                format!("graph {group} {target_name}: valency"),
                expect_valency,
                lead.valency,
            );
            check(
                checks,
                format!("graph {group} {target_name}: connected"),
                expect_connected,
                lead.graph.is_connected(),
            );

            let image = lead.action.action_group()?;
            check(
                checks,
                format!("graph {group} {target_name}: 2-arc-transitive under the ambient image"),
                expect_two_arc_transitive,
                is_s_arc_transitive(&lead.graph, &image, 2)?,
            );
            check(
                checks,
                format!("graph {group} {target_name}: 3-arc-transitive under the ambient image"),
                expect_three_arc_transitive,
                is_s_arc_transitive(&lead.graph, &image, 3)?,
            );

            let aut = automorphism_group_seeded(&lead.graph, &lead.action.gen_images)?;
            check(
                checks,
                format!("graph {group} {target_name}: automorphism group order"),
                expect_aut_order,
                aut.order_u64().unwrap_or(u64::MAX),
            );
            let image_in_aut = Subgroup::from_group(&aut, image)?;
            check(
                checks,
                format!("graph {group} {target_name}: ambient image normal in the automorphism group"),
                expect_ambient_image_normal_in_aut,
                image_in_aut.is_normal_in(&aut),
            );
            check(
                checks,
                format!("graph {group} {target_name}: last-point stabilizer regular on vertices"),
                expect_last_point_stabilizer_regular,
                atlas::check_m11_regular(&ambient, &subgroup)?,
            );
        }
        Step::Fixture {
            valency,
            expect_subgroup_order,
            expect_type,
            expect_regular,
            expect_candidates,
            expect_each_feasible,
            expect_each_extends_to_ambient,
        } => {
            let fx = atlas::load_example_fixture()?;
            check(
                checks,
                "fixture: subgroup order",
                expect_subgroup_order,
                fx.subgroup.order_u64().unwrap_or(u64::MAX),
            );
            check(
                checks,
                "fixture: subgroup type",
                expect_type,
                fx.subgroup.iso_type()?.name.to_string(),
            );
            let h_group = PermGroup::new(fx.ambient.degree(), fx.subgroup.gens().to_vec())?;
            let regular = h_group.is_transitive()
                && h_group.order_u64() == Some(fx.ambient.degree() as u64);
            check(checks, "fixture: subgroup regular on points", expect_regular, regular);
            check(
                checks,
                "fixture: candidate count",
                expect_candidates,
                fx.candidates.len(),
            );
            let mut each_feasible = true;
            for cand in &fx.candidates {
                let verdict = verify_feasible(&fx.ambient, &fx.subgroup, cand, *valency)?;
                each_feasible &= verdict.all();
            }
            check(
                checks,
                format!("fixture: every candidate feasible at valency {valency}"),
                expect_each_feasible,
                each_feasible,
            );
            let mut each_extends = true;
            for cand in &fx.candidates {
                let mut gens = fx.subgroup.gens().to_vec();
                gens.push(cand.clone());
                let extended = PermGroup::new(fx.ambient.degree(), gens)?;
                each_extends &= extended.order() == fx.ambient.order();
            }
            check(
                checks,
                "fixture: every candidate extends the subgroup to the ambient group",
                expect_each_extends_to_ambient,
                each_extends,
            );
        }
        Step::IndexTable {
            expect_rows,
            expect_all_ok,
        } => {
            let report = atlas::verify_index_table();
            check(checks, "index table: row count", expect_rows, report.rows.len());
            check(checks, "index table: all rows verify", expect_all_ok, report.all_ok);
        }
        Step::Presentation {
            expect_order,
            expect_faithful_degree,
            expect_no_watched_normal_subgroup,
        } => {
            let real = fp::realize_seven_arc_stabilizer(fp::COSET_CAP)?;
            check(
                checks,
                "presentation: realized group order",
                expect_order,
                real.group.order_u64().unwrap_or(u64::MAX),
            );
            check(
                checks,
                "presentation: faithful permutation degree",
                expect_faithful_degree,
                real.degree,
            );
            let report = fp::verify_watched_normals_absent(&real.group)?;
            check(
                checks,
                "presentation: no watched normal subgroup and no nontrivial normal 2-subgroup",
                expect_no_watched_normal_subgroup,
                report.confirmed,
            );
        }
        Step::LoadOrder { group, expect_order } => {
            let entry = atlas::load_atlas(group)?;
            check(
                checks,
                format!("load {group}: verified order"),
                expect_order,
                entry.group.order_u64().unwrap_or(u64::MAX),
            );
        }
    }
    Ok(())
}

/// Execute a scenario by id.
pub fn run_scenario(id: &str) -> Result<ScenarioOutcome, ScenarioError> {
    let file = find_scenario(id)?;
    let start = std::time::Instant::now();
    let mut ctx = Context::default();
    let mut checks = Vec::new();
    for step in &file.steps {
        run_step(&mut ctx, step, &mut checks)?;
    }
    let passed = checks.iter().all(|c| c.passed);
    Ok(ScenarioOutcome {
        id: file.id,
        tier: file.tier,
        title: file.title,
        checks,
        passed,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

/// Human-oriented one-line-per-check rendering.
pub fn render_outcome(outcome: &ScenarioOutcome) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{} [{}] {}\n",
        if outcome.passed { "PASS" } else { "FAIL" },
        outcome.id,
        outcome.title
    ));
    for c in &outcome.checks {
        out.push_str(&format!(
            "  {} {} (expected {}, got {})\n",
            if c.passed { "ok  " } else { "FAIL" },
            c.label,
            c.expected,
            c.actual
        ));
    }
    out.push_str(&format!("  elapsed: {} ms\n", outcome.elapsed_ms));
    out
}
