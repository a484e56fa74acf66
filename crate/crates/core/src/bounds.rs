//! Exhaustive checks of the γ-vector bounds over enumerated graph classes.
//!
//! Each suite computes the f-, h-, g- and γ-vectors of every graph in a
//! class by face enumeration and compares them componentwise with the
//! vectors of the extremal families. Instances are processed on the current
//! rayon pool and collected in enumeration order, so reports are
//! reproducible regardless of the worker count.

use std::collections::HashMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

use crate::building_sets::{interval_building_set, validate, BuildingSet, BuildingSetError};
use crate::face_complex::{is_flag, FaceError};
use crate::face_polynomials::{
    convolve, entries_to_json, f_from_h, g_from_gamma, g_from_h, h_from_gamma, leq_componentwise,
    FVector, FaceVector, GVector, GammaVector, HVector,
};
use crate::families::{closed_gamma, closed_h, cube_h, gamma_family, h_family, Family};
use crate::graphs::{
    edge_mask, enumerate_connected_graphs, enumerate_hamiltonian_graphs, enumerate_trees,
    graph_from_mask, pairs, GraphError, SimpleGraph,
};
use crate::node_set::NodeSet;
use crate::summary::{polytope_vectors, PolytopeVectors, VectorError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    BuildingSet(#[from] BuildingSetError),
    #[error(transparent)]
    Vectors(#[from] VectorError),
}

impl From<FaceError> for HarnessError {
    fn from(e: FaceError) -> Self {
        HarnessError::Vectors(VectorError::Face(e))
    }
}

/// One offending instance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Failure {
    /// Graph JSON, or the building-set text for building-set suites.
    pub graph: Value,
    pub gamma: Value,
    pub bound_violated: String,
}

/// Outcome of one suite. `pass` is true exactly when `failures` is empty.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub suite: String,
    pub m: usize,
    pub checked: usize,
    pub failures: Vec<Failure>,
    pub elapsed_ms: u64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lower: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub upper: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lower_attained: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub upper_attained: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl BoundReport {
    fn new(suite: &str, m: usize, started: Instant, checked: usize, failures: Vec<Failure>) -> Self {
        BoundReport {
            suite: suite.to_string(),
            m,
            checked,
            pass: failures.is_empty(),
            failures,
            elapsed_ms: started.elapsed().as_millis() as u64,
            lower: None,
            upper: None,
            lower_attained: None,
            upper_attained: None,
            note: None,
        }
    }

    fn push_failure(&mut self, failure: Failure) {
        self.failures.push(failure);
        self.pass = false;
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

/// The four vectors of an extremal polytope used as a bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundVectors {
    pub name: String,
    pub gamma: GammaVector,
    pub g: GVector,
    pub h: HVector,
    pub f: FVector,
}

impl BoundVectors {
    fn from_gamma(name: String, gamma: GammaVector) -> Self {
        let h = h_from_gamma(&gamma);
        let g = g_from_gamma(&gamma).expect("γ of a simple polytope gives an integral g");
        let f = f_from_h(&h);
        BoundVectors { name, gamma, g, h, f }
    }

    /// `I^n`.
    pub fn cube(n: usize) -> Self {
        Self::from_gamma(format!("I^{n}"), GammaVector::cube(n))
    }

    fn to_json(&self) -> Value {
        serde_json::json!({
            "name": self.name,
            "gamma": entries_to_json(self.gamma.entries()),
            "h": entries_to_json(self.h.entries()),
        })
    }
}

/// Bound vectors for `family` in dimension `n`, after checking that the
/// recurrence, the closed form and face enumeration of the family graph
/// all agree. Returns the disagreement description on mismatch.
pub fn cross_validated_bound(family: Family, n: usize) -> Result<BoundVectors, String> {
    let recurrence_h = h_family(family, n);
    let recurrence_gamma = gamma_family(family, n);
    let name = format!("{}^{n}", family_symbol(family));
    if recurrence_h != closed_h(family, n) || recurrence_gamma != closed_gamma(family, n) {
        return Err(format!("{name}: recurrence and closed form disagree"));
    }
    let enumerated = family
        .graph(n)
        .map_err(|e| e.to_string())
        .and_then(|g| g.graphical_building_set().map_err(|e| e.to_string()))
        .and_then(|b| polytope_vectors(&b).map_err(|e| e.to_string()))?;
    if enumerated.h != recurrence_h || enumerated.gamma != recurrence_gamma {
        return Err(format!("{name}: face enumeration disagrees with the recurrence"));
    }
    let bound = BoundVectors::from_gamma(name.clone(), recurrence_gamma);
    if bound.h != recurrence_h || bound.f != enumerated.f {
        return Err(format!("{name}: transform chain disagrees with enumeration"));
    }
    Ok(bound)
}

fn family_symbol(family: Family) -> &'static str {
    match family {
        Family::As => "As",
        Family::Cy => "Cy",
        Family::Pe => "Pe",
        Family::St => "St",
    }
}

fn dimension_of(kind: &'static str, m: usize) -> Result<usize, GraphError> {
    m.checked_sub(1).ok_or(GraphError::MTooSmall { kind, m, min: 1 })
}

fn graph_json(g: &SimpleGraph) -> Value {
    serde_json::to_value(g.to_json()).expect("graph serializes")
}

/// Comparisons of one instance against the bounds, plus sharpness flags.
struct Verdict {
    failures: Vec<Failure>,
    hits_lower: bool,
    hits_upper: bool,
}

fn compare(
    label: &str,
    instance: &PolytopeVectors,
    lower: &BoundVectors,
    upper: &BoundVectors,
) -> Vec<String> {
    let mut violated = Vec::new();
    let checks: [(&str, bool, bool); 4] = [
        (
            "gamma",
            leq_componentwise(&lower.gamma, &instance.gamma).unwrap_or(false),
            leq_componentwise(&instance.gamma, &upper.gamma).unwrap_or(false),
        ),
        (
            "g",
            leq_componentwise(&lower.g, &instance.g).unwrap_or(false),
            leq_componentwise(&instance.g, &upper.g).unwrap_or(false),
        ),
        (
            "h",
            leq_componentwise(&lower.h, &instance.h).unwrap_or(false),
            leq_componentwise(&instance.h, &upper.h).unwrap_or(false),
        ),
        (
            "f",
            leq_componentwise(&lower.f, &instance.f).unwrap_or(false),
            leq_componentwise(&instance.f, &upper.f).unwrap_or(false),
        ),
    ];
    for (kind, above_lower, below_upper) in checks {
        if !above_lower {
            violated.push(format!("{label}: {kind} below lower bound {}", lower.name));
        }
        if !below_upper {
            violated.push(format!("{label}: {kind} above upper bound {}", upper.name));
        }
    }
    violated
}

fn check_graph(g: &SimpleGraph, lower: &BoundVectors, upper: &BoundVectors, flag: bool) -> Verdict {
    let vectors = g
        .graphical_building_set()
        .map_err(|e| e.to_string())
        .and_then(|b| {
            let flag_ok = !flag || is_flag(&b).unwrap_or(false);
            polytope_vectors(&b)
                .map(|v| (v, flag_ok))
                .map_err(|e| e.to_string())
        });
    let (vectors, flag_ok) = match vectors {
        Ok(pair) => pair,
        Err(message) => {
            return Verdict {
                failures: vec![Failure {
                    graph: graph_json(g),
                    gamma: Value::Null,
                    bound_violated: message,
                }],
                hits_lower: false,
                hits_upper: false,
            }
        }
    };
    let mut messages = compare("bound", &vectors, lower, upper);
    if flag && !flag_ok {
        messages.push("not flag".to_string());
    }
    if flag && !vectors.gamma.is_nonnegative() {
        messages.push("negative γ entry".to_string());
    }
    let gamma = entries_to_json(vectors.gamma.entries());
    Verdict {
        failures: messages
            .into_iter()
            .map(|bound_violated| Failure {
                graph: graph_json(g),
                gamma: gamma.clone(),
                bound_violated,
            })
            .collect(),
        hits_lower: vectors.gamma == lower.gamma,
        hits_upper: vectors.gamma == upper.gamma,
    }
}

fn run_class(
    suite: &str,
    m: usize,
    graphs: Vec<SimpleGraph>,
    lower: Result<BoundVectors, String>,
    upper: Result<BoundVectors, String>,
    flag: bool,
) -> BoundReport {
    let started = Instant::now();
    let (lower, upper) = match (lower, upper) {
        (Ok(l), Ok(u)) => (l, u),
        (l, u) => {
            let failures = [l.err(), u.err()]
                .into_iter()
                .flatten()
                .map(|message| Failure {
                    graph: Value::Null,
                    gamma: Value::Null,
                    bound_violated: format!("bound cross-validation: {message}"),
                })
                .collect();
            return BoundReport::new(suite, m, started, 0, failures);
        }
    };
    let verdicts: Vec<Verdict> = graphs
        .par_iter()
        .map(|g| check_graph(g, &lower, &upper, flag))
        .collect();
    let hits_lower = verdicts.iter().any(|v| v.hits_lower);
    let hits_upper = verdicts.iter().any(|v| v.hits_upper);
    let failures: Vec<Failure> = verdicts.into_iter().flat_map(|v| v.failures).collect();
    let mut report = BoundReport::new(suite, m, started, graphs.len(), failures);
    if !graphs.is_empty() {
        for (attained, which, bound) in [(hits_lower, "lower", &lower), (hits_upper, "upper", &upper)] {
            if !attained {
                report.push_failure(Failure {
                    graph: Value::Null,
                    gamma: entries_to_json(bound.gamma.entries()),
                    bound_violated: format!("sharpness: no instance attains the {which} bound {}", bound.name),
                });
            }
        }
        report.lower_attained = Some(hits_lower);
        report.upper_attained = Some(hits_upper);
    }
    report.lower = Some(lower.to_json());
    report.upper = Some(upper.to_json());
    report.elapsed_ms = started.elapsed().as_millis() as u64;
    report
}

/// `γ(As^(m-1)) <= γ(P_Γ) <= γ(Pe^(m-1))` for every connected graph on `[m]`,
/// together with the implied g-, h- and f-inequalities.
pub fn verify_connected_bounds(m: usize) -> Result<BoundReport, HarnessError> {
    let graphs: Vec<SimpleGraph> = enumerate_connected_graphs(m)?.collect();
    let n = dimension_of("connected", m)?;
    Ok(run_class(
        "connected",
        m,
        graphs,
        cross_validated_bound(Family::As, n),
        cross_validated_bound(Family::Pe, n),
        false,
    ))
}

/// `γ(Cy^(m-1)) <= γ(P_Γ) <= γ(Pe^(m-1))` for every Hamiltonian graph on `[m]`.
pub fn verify_hamiltonian_bounds(m: usize) -> Result<BoundReport, HarnessError> {
    let graphs: Vec<SimpleGraph> = enumerate_hamiltonian_graphs(m)?.collect();
    let n = m.saturating_sub(1);
    let mut report = run_class(
        "hamiltonian",
        m,
        graphs,
        cross_validated_bound(Family::Cy, n),
        cross_validated_bound(Family::Pe, n),
        false,
    );
    if m < 3 {
        report.note = Some("no Hamiltonian graphs on fewer than 3 nodes".into());
    }
    Ok(report)
}

/// `γ(As^(m-1)) <= γ(P_T) <= γ(St^(m-1))` for every labeled tree on `[m]`.
pub fn verify_tree_bounds(m: usize) -> Result<BoundReport, HarnessError> {
    let graphs: Vec<SimpleGraph> = enumerate_trees(m)?.collect();
    let n = dimension_of("tree", m)?;
    Ok(run_class(
        "tree",
        m,
        graphs,
        cross_validated_bound(Family::As, n),
        cross_validated_bound(Family::St, n),
        false,
    ))
}

/// Every graphical building set on `[m]` from a connected graph is flag,
/// has `γ >= 0`, and satisfies `γ(I^n) <= γ <= γ(Pe^n)`.
///
/// The statement holds for all flag nestohedra; only the graphical subclass
/// is enumerated here.
pub fn verify_gal_flag(m: usize) -> Result<BoundReport, HarnessError> {
    let graphs: Vec<SimpleGraph> = enumerate_connected_graphs(m)?.collect();
    let n = dimension_of("gal-flag", m)?;
    let mut report = run_class(
        "gal-flag",
        m,
        graphs,
        Ok(BoundVectors::cube(n)),
        cross_validated_bound(Family::Pe, n),
        true,
    );
    // the cube is not a graph-associahedron for n >= 2, so no graph attains it
    if n >= 2 {
        report.failures.retain(|f| !f.bound_violated.starts_with("sharpness: no instance attains the lower"));
        report.pass = report.failures.is_empty();
    }
    report.note = Some("checked over graphical building sets only".into());
    Ok(report)
}

/// `γ(P_Γ) <= γ(P_Γ')` over edge-addition covers `Γ ⊂ Γ' = Γ + e` of
/// connected graphs on `[m]`. Covers suffice because `<=` is transitive.
///
/// With `samples = Some(k)` only every `⌈covers / k⌉`-th cover is checked.
pub fn verify_monotonicity(m: usize, samples: Option<usize>) -> Result<BoundReport, HarnessError> {
    let started = Instant::now();
    let graphs: Vec<SimpleGraph> = enumerate_connected_graphs(m)?.collect();
    let all_pairs = pairs(m);
    let gammas: Vec<Result<GammaVector, String>> = graphs
        .par_iter()
        .map(|g| {
            g.graphical_building_set()
                .map_err(|e| e.to_string())
                .and_then(|b| polytope_vectors(&b).map(|v| v.gamma).map_err(|e| e.to_string()))
        })
        .collect();
    let by_mask: HashMap<u64, usize> = graphs
        .iter()
        .enumerate()
        .map(|(k, g)| (edge_mask(g, &all_pairs), k))
        .collect();

    let mut covers = Vec::new();
    for (k, g) in graphs.iter().enumerate() {
        let mask = edge_mask(g, &all_pairs);
        for bit in 0..all_pairs.len() {
            if mask >> bit & 1 == 0 {
                covers.push((k, by_mask[&(mask | 1 << bit)]));
            }
        }
    }
    let stride = match samples {
        Some(k) if k > 0 && covers.len() > k => covers.len().div_ceil(k),
        _ => 1,
    };

    let mut failures = Vec::new();
    let mut checked = 0;
    for &(small, big) in covers.iter().step_by(stride) {
        checked += 1;
        let outcome = match (&gammas[small], &gammas[big]) {
            (Ok(a), Ok(b)) => leq_componentwise(a, b)
                .map_err(|e| e.to_string())
                .and_then(|ok| if ok { Ok(()) } else { Err(format!("γ increases to {b} on adding an edge")) }),
            (Err(e), _) | (_, Err(e)) => Err(e.clone()),
        };
        if let Err(message) = outcome {
            let gamma = gammas[small]
                .as_ref()
                .map(|g| entries_to_json(g.entries()))
                .unwrap_or(Value::Null);
            let extra: Vec<_> = graphs[big]
                .edges()
                .into_iter()
                .filter(|&(i, j)| !graphs[small].has_edge(i, j))
                .collect();
            failures.push(Failure {
                graph: graph_json(&graphs[small]),
                gamma,
                bound_violated: format!("monotonicity with added edge {extra:?}: {message}"),
            });
        }
    }
    let mut report = BoundReport::new("monotonicity", m, started, checked, failures);
    if stride > 1 {
        report.note = Some(format!("sampled every {stride}-th of {} covers", covers.len()));
    }
    Ok(report)
}

/// A substitution `outer(parts...)` whose nestohedron is the product
/// `P_outer × P_part_1 × ...`.
#[derive(Debug, Clone)]
pub struct ProductCase {
    pub name: String,
    pub outer: BuildingSet,
    pub parts: Vec<BuildingSet>,
}

/// The built-in substitution cases.
pub fn default_product_cases() -> Vec<ProductCase> {
    let j = interval_building_set();
    let point = validate([NodeSet::singleton(1)], 1).expect("point");
    let graphical = |g: Result<SimpleGraph, GraphError>| {
        g.expect("named graph")
            .graphical_building_set()
            .expect("small graph")
    };
    let path3 = graphical(crate::graphs::path_graph(3));
    let k3 = graphical(crate::graphs::complete_graph(3));
    let c4 = graphical(crate::graphs::cycle_graph(4));
    vec![
        ProductCase {
            name: "J(J,J)".into(),
            outer: j.clone(),
            parts: vec![j.clone(), j.clone()],
        },
        ProductCase {
            name: "B(K3)(1,2,3)".into(),
            outer: k3.clone(),
            parts: vec![point.clone(); 3],
        },
        ProductCase {
            name: "J(B(L3),1)".into(),
            outer: j.clone(),
            parts: vec![path3.clone(), point.clone()],
        },
        ProductCase {
            name: "B(L3)(J,1,B(K3))".into(),
            outer: path3.clone(),
            parts: vec![j.clone(), point.clone(), k3.clone()],
        },
        ProductCase {
            name: "B(C4)(J,1,1,J)".into(),
            outer: c4,
            parts: vec![j.clone(), point.clone(), point, j],
        },
        ProductCase {
            name: "B(K3)(B(L3),J,J)".into(),
            outer: k3,
            parts: vec![path3, interval_building_set(), interval_building_set()],
        },
    ]
}

/// The h-vector of each substituted building set equals the product of the
/// h-vectors of the outer set and the parts.
pub fn verify_product_rule(cases: &[ProductCase]) -> Result<BoundReport, HarnessError> {
    let started = Instant::now();
    let mut failures = Vec::new();
    let mut largest = 0;
    for case in cases {
        let substituted = case.outer.substitution(&case.parts)?;
        largest = largest.max(substituted.ground_size());
        let actual = polytope_vectors(&substituted)?;
        let mut expected = polytope_vectors(&case.outer)?.h;
        for part in &case.parts {
            expected = convolve(&expected, &polytope_vectors(part)?.h);
        }
        if actual.h != expected {
            failures.push(Failure {
                graph: Value::String(substituted.to_text()),
                gamma: entries_to_json(actual.gamma.entries()),
                bound_violated: format!("{}: h = {} but product gives {expected}", case.name, actual.h),
            });
        }
        // γ of a product is the product of γ-polynomials as well
        if actual.gamma.is_nonnegative() && actual.g != g_from_h(&actual.h) {
            failures.push(Failure {
                graph: Value::String(substituted.to_text()),
                gamma: entries_to_json(actual.gamma.entries()),
                bound_violated: format!("{}: inconsistent g-vector", case.name),
            });
        }
    }
    Ok(BoundReport::new("product", largest, started, cases.len(), failures))
}

/// h-vector of the simplex building set, for callers checking non-flag cases.
pub fn simplex_is_flag(m: usize) -> Result<bool, HarnessError> {
    Ok(is_flag(&BuildingSet::simplex(m)?)?)
}

/// Binomial row `C(n, i)`, the h-vector of the cube.
pub fn cube_h_vector(n: usize) -> HVector {
    cube_h(n)
}

/// Re-export for report consumers that rebuild graphs from edge masks.
pub fn graph_for_mask(m: usize, mask: u64) -> SimpleGraph {
    graph_from_mask(m, &pairs(m), mask)
}
