//! Named facts about an arrangement or graph, as compared by the corpus runner.
//!
//! A fact whose expected value is an object may carry parameters (such as a
//! hyperplane); the computed object echoes them so the whole object can be
//! compared for equality.

use std::cell::OnceCell;

use hyperarr::arrangement::{Arrangement, Hyperplane};
use hyperarr::graphic::{
    check_tri_bound, corrected_graphic_t, crosscheck_graphic_t, graphic_arrangement, tri_count, Graph,
};
use hyperarr::hypersolvable::{
    check_hypbound, find_filtration, quadratic_poincare, restriction_identity, FiltrationOutcome, QpMethod,
    SolvableFiltration, DEFAULT_BUDGET,
};
use hyperarr::lattice::char_poly;
use hyperarr::logder::{
    addition_generators, check_4gens_freeness, check_nonfree_criterion, degree_sequence, is_free, minimality_report,
    DegreeOptions, DegreeSequence,
};
use hyperarr::restriction::minimal_restriction;
use serde_json::{json, Map, Value};

use crate::commands::verdict_name;
use crate::{json, parse_hyperplane};

pub const ARRANGEMENT_FACTS: &[&str] = &[
    "size",
    "rank",
    "degrees",
    "full_degrees",
    "complete",
    "charpoly",
    "roots",
    "free",
    "exponents",
    "t",
    "d",
    "unequal_slack",
    "minimal",
    "hypersolvable",
    "hyperexponents",
    "qp",
    "qp_direct",
    "supersolvable",
    "restriction_identity",
    "hypbound_slack",
    "nonfree",
    "four_gens",
    "addition",
];

pub const GRAPH_FACTS: &[&str] = &[
    "vertices",
    "edges",
    "tri",
    "has_4cycle",
    "t_formula",
    "t_corrected",
    "t_search",
    "max_clique",
    "tri_bound",
];

/// The expected file itself is at fault: unknown key or malformed parameters.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FactError {
    #[error("unknown fact `{0}`")]
    Unknown(String),
    #[error("fact `{key}`: {message}")]
    BadParameter { key: String, message: String },
}

pub enum Subject {
    Arrangement(Arrangement),
    Graph(Graph),
}

pub struct Facts {
    subject: Subject,
    arrangement: Arrangement,
    seq: OnceCell<DegreeSequence>,
    filtration: OnceCell<Option<SolvableFiltration>>,
}

fn computation_error(e: impl std::fmt::Display) -> Value {
    json!({ "error": e.to_string() })
}

impl Facts {
    pub fn new(subject: Subject) -> Facts {
        let arrangement = match &subject {
            Subject::Arrangement(a) => a.clone(),
            Subject::Graph(g) => graphic_arrangement(g),
        };
        Facts {
            subject,
            arrangement,
            seq: OnceCell::new(),
            filtration: OnceCell::new(),
        }
    }

    pub fn arrangement(&self) -> &Arrangement {
        &self.arrangement
    }

    pub fn sequence(&self) -> &DegreeSequence {
        self.seq
            .get_or_init(|| degree_sequence(&self.arrangement, DegreeOptions::default()))
    }

    fn filtration(&self) -> Option<&SolvableFiltration> {
        self.filtration
            .get_or_init(|| match find_filtration(&self.arrangement, DEFAULT_BUDGET) {
                FiltrationOutcome::Found(f) => Some(f),
                _ => None,
            })
            .as_ref()
    }

    fn param_hyperplane(&self, key: &str, params: &Value, field: &str) -> Result<Hyperplane, FactError> {
        let bad = |message: String| FactError::BadParameter {
            key: key.to_string(),
            message,
        };
        let text = params
            .get(field)
            .and_then(Value::as_str)
            .ok_or_else(|| bad(format!("missing string field `{field}`")))?;
        parse_hyperplane(text, self.arrangement.dim()).map_err(|e| bad(e.to_string()))
    }

    /// Compute the fact `key`; `expected` supplies parameters for object-valued facts.
    pub fn compute(&self, key: &str, expected: &Value) -> Result<Value, FactError> {
        if let Subject::Graph(g) = &self.subject {
            if let Some(v) = self.graph_fact(g, key) {
                return Ok(v);
            }
        }
        let a = &self.arrangement;
        let v = match key {
            "size" => json!(a.len()),
            "rank" => json!(a.rank()),
            "degrees" => json!(self.sequence().degrees),
            "full_degrees" => json!(self.sequence().full_degrees()),
            "complete" => json!(self.sequence().complete),
            "charpoly" => json::unipoly(&char_poly(a)),
            "roots" => json!(char_poly(a).integer_roots()),
            "free" | "exponents" => {
                let ess = a.essentialize().essential;
                let seq = degree_sequence(&ess, DegreeOptions::default());
                match is_free(&ess, &seq) {
                    Ok(c) if key == "free" => json!(c.free),
                    Ok(c) => json!(c.exponents),
                    Err(e) => computation_error(e),
                }
            }
            "t" => json!(minimal_restriction(a).t_value),
            "d" => json!(self.sequence().d_max()),
            "unequal_slack" => json!(minimal_restriction(a).with_degrees(a, self.sequence()).inequality_slack),
            "minimal" => json!(minimality_report(a, self.sequence()).iter().all(|e| e.needed())),
            "hypersolvable" => json!(self.filtration().is_some()),
            "hyperexponents" => json!(self.filtration().map(|f| f.hyperexponents())),
            "qp" => json!(self.filtration().map(|f| {
                let bs: Vec<i64> = f.steps.iter().map(|&b| b as i64).collect();
                json::unipoly(&hyperarr::exactmath::UniPoly::from_one_plus(&bs))
            })),
            "qp_direct" => match quadratic_poincare(a, QpMethod::Direct, DEFAULT_BUDGET) {
                Ok(p) => json::unipoly(&p),
                Err(e) => computation_error(e),
            },
            "supersolvable" => json!(self.filtration().map(|f| f.k() == a.rank())),
            "restriction_identity" => json!(self
                .filtration()
                .map(|f| restriction_identity(a, f).iter().all(|s| s.restriction == s.lower_size))),
            "hypbound_slack" => match check_hypbound(a, DegreeOptions::default(), DEFAULT_BUDGET) {
                Ok(b) => json!([b.slack_full, b.slack_deleted]),
                Err(e) => computation_error(e),
            },
            "nonfree" => {
                let h = self.param_hyperplane(key, expected, "hyperplane")?;
                let full = if a.contains(&h) { Ok(a.clone()) } else { a.add(&h) };
                match full
                    .map_err(|e| e.to_string())
                    .and_then(|f| check_nonfree_criterion(&f, &h).map_err(|e| e.to_string()))
                {
                    Ok(r) => with_params(
                        expected,
                        &["hyperplane"],
                        json!({
                            "verdict": verdict_name(&r.verdict),
                            "roots": r.roots,
                            "restriction": r.restriction,
                            "threshold": r.threshold,
                        }),
                    ),
                    Err(e) => computation_error(e),
                }
            }
            "four_gens" => {
                let h = self.param_hyperplane(key, expected, "hyperplane")?;
                match check_4gens_freeness(a, &h, DegreeOptions::default()) {
                    Ok(r) => with_params(
                        expected,
                        &["hyperplane"],
                        json!({ "verdict": verdict_name(&r.verdict), "exponents": r.exponents }),
                    ),
                    Err(e) => computation_error(e),
                }
            }
            "addition" => {
                let bad = |message: &str| FactError::BadParameter {
                    key: key.to_string(),
                    message: message.to_string(),
                };
                let texts = expected
                    .get("hyperplanes")
                    .and_then(Value::as_array)
                    .ok_or_else(|| bad("missing array field `hyperplanes`"))?;
                let hs = texts
                    .iter()
                    .map(|t| {
                        let t = t.as_str().ok_or_else(|| bad("hyperplanes must be strings"))?;
                        parse_hyperplane(t, a.dim()).map_err(|e| bad(&e.to_string()))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let verify = match expected.get("verify_up_to") {
                    None | Some(Value::Null) => None,
                    Some(v) => Some(v.as_u64().ok_or_else(|| bad("verify_up_to must be a number"))? as u32),
                };
                match addition_generators(a, &hs, self.sequence(), verify) {
                    Ok(r) => {
                        let mut d = r.degrees.clone();
                        d.sort_unstable();
                        with_params(
                            expected,
                            &["hyperplanes", "verify_up_to"],
                            json!({ "degrees": d, "verified_through": r.verified_through }),
                        )
                    }
                    Err(e) => computation_error(e),
                }
            }
            other => return Err(FactError::Unknown(other.to_string())),
        };
        Ok(v)
    }

    fn graph_fact(&self, g: &Graph, key: &str) -> Option<Value> {
        Some(match key {
            "vertices" => json!(g.num_vertices()),
            "edges" => json!(g.num_edges()),
            "tri" => json!(tri_count(g).tri),
            "has_4cycle" => json!(g.has_4cycle()),
            "t_formula" => json!(tri_count(g).t_formula),
            "t_corrected" => json!(corrected_graphic_t(g)),
            "t_search" => json!(crosscheck_graphic_t(g).search),
            "max_clique" => json!(g.max_clique()),
            "tri_bound" => match check_tri_bound(g, self.sequence()) {
                Ok(b) => json!({ "holds": b.holds, "tight": b.tight, "slack": b.d as i64 - b.tri as i64 }),
                Err(e) => computation_error(e),
            },
            _ => return None,
        })
    }
}

/// Copy the named parameter fields from `expected` into `computed`.
fn with_params(expected: &Value, names: &[&str], computed: Value) -> Value {
    let mut m: Map<String, Value> = match computed {
        Value::Object(m) => m,
        _ => Map::new(),
    };
    for n in names {
        if let Some(v) = expected.get(*n) {
            m.insert((*n).to_string(), v.clone());
        }
    }
    Value::Object(m)
}
