//! One report builder per subcommand.

use std::fmt::Write as _;

use hyperarr::arrangement::{Arrangement, Hyperplane};
use hyperarr::exactmath::UniPoly;
use hyperarr::graphic::{
    check_tri_bound, corrected_graphic_t, crosscheck_graphic_t, graphic_arrangement, tri_count, Graph,
};
use hyperarr::hypersolvable::{
    check_hypbound, find_filtration, quadratic_poincare, restriction_identity, FiltrationOutcome, QpMethod,
    DIRECT_QP_LIMIT,
};
use hyperarr::lattice::{char_poly, Lattice};
use hyperarr::logder::{
    addition_generators, check_3nonfree, check_4gens_freeness, check_nonfree_criterion, check_numgen_bounds,
    degree_sequence, is_free, minimality_report, DegreeOptions, DegreeSequence, NumgenCase, Verdict,
};
use hyperarr::restriction::{check_two_points, minimal_restriction};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::json;
use crate::CliError;

/// Settings shared by every subcommand.
#[derive(Clone, Debug)]
pub struct Options {
    pub max_degree: Option<u32>,
    pub regularity_bound: bool,
    pub seed: u64,
    pub emit_generators: bool,
    pub budget: u64,
    pub crosscheck: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            max_degree: None,
            regularity_bound: true,
            seed: 0,
            emit_generators: false,
            budget: hyperarr::hypersolvable::DEFAULT_BUDGET,
            crosscheck: false,
        }
    }
}

impl Options {
    pub fn degree_options(&self) -> DegreeOptions {
        DegreeOptions {
            max_degree: self.max_degree,
            regularity_bound: self.regularity_bound,
        }
    }
}

/// A finished report. `violations` lists identities that failed to hold.
#[derive(Clone, Debug, Default)]
pub struct Report {
    pub json: Value,
    pub text: String,
    pub warnings: Vec<String>,
    pub violations: Vec<String>,
    /// Exit status when there are no violations.
    pub code: i32,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        if self.violations.is_empty() {
            self.code
        } else {
            crate::EXIT_INVARIANT
        }
    }
}

pub fn verdict_name(v: &Verdict) -> &'static str {
    match v {
        Verdict::NotFree => "not_free",
        Verdict::FreeConfirmed => "free_confirmed",
        Verdict::HypothesesUnmet => "hypotheses_unmet",
        Verdict::Inapplicable => "inapplicable",
    }
}

fn seq_warnings(seq: &DegreeSequence) -> Vec<String> {
    if seq.truncated {
        vec![format!(
            "degree cap {} reached while generators were still appearing; the sequence is truncated",
            seq.cap
        )]
    } else if !seq.complete {
        vec![format!(
            "search stopped at degree {} below the regularity bound; the sequence may be incomplete",
            seq.max_degree_searched
        )]
    } else {
        Vec::new()
    }
}

pub fn seq_json(seq: &DegreeSequence, emit: bool) -> Value {
    let mut v = json!({
        "degrees": seq.degrees,
        "full_degrees": seq.full_degrees(),
        "center_dim": seq.center_dim,
        "graded_dims": seq.graded_dims,
        "max_degree_searched": seq.max_degree_searched,
        "cap": seq.cap,
        "truncated": seq.truncated,
        "complete": seq.complete,
    });
    if emit {
        v["generators"] = Value::Array(seq.all_generators().iter().map(json::derivation).collect());
    }
    v
}

fn list<T: std::fmt::Display>(xs: &[T]) -> String {
    let v: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    format!("({})", v.join(", "))
}

pub fn lattice(a: &Arrangement) -> Report {
    let l = Lattice::build(a);
    let chi = l.char_poly();
    let mut text = format!("rank {}, {} flats\n", l.rank(), l.flats().len());
    for f in l.flats() {
        let _ = writeln!(text, "codim {} members {:?} mu {}", f.codim, f.members, f.moebius);
    }
    let _ = writeln!(text, "chi(t) = {chi}");
    Report {
        json: json!({
            "rank": l.rank(),
            "flats": l.flats().iter().map(json::flat).collect::<Vec<_>>(),
            "charpoly": json::unipoly(&chi),
        }),
        text,
        ..Report::default()
    }
}

/// `chi` of the input; with `h`, the non-freeness test for the input with `h`
/// playing the added hyperplane (or, when `h` is a member, the deleted one).
pub fn charpoly(a: &Arrangement, h: Option<&Hyperplane>) -> Result<Report, CliError> {
    let chi = char_poly(a);
    let roots = chi.integer_roots();
    let mut text = format!("chi(t) = {chi}\n");
    if let Some(r) = &roots {
        let _ = writeln!(text, "roots {}", list(r));
    }
    let mut out = json!({ "charpoly": json::unipoly(&chi), "roots": roots });
    if let Some(h) = h {
        let full = if a.contains(h) { a.clone() } else { a.add(h)? };
        let r = check_nonfree_criterion(&full, h)?;
        let _ = writeln!(
            text,
            "non-freeness test at {h}: {} (|A^H| = {}, threshold {:?})",
            verdict_name(&r.verdict),
            r.restriction,
            r.threshold
        );
        out["nonfree"] = json!({
            "hyperplane": json::hyperplane(h),
            "verdict": verdict_name(&r.verdict),
            "roots": r.roots,
            "restriction": r.restriction,
            "threshold": r.threshold,
            "note": r.note,
        });
    }
    Ok(Report {
        json: out,
        text,
        ..Report::default()
    })
}

pub fn derivations(a: &Arrangement, opts: &Options) -> Report {
    let seq = degree_sequence(a, opts.degree_options());
    let mut text = format!("degrees {}\n", list(&seq.degrees));
    if seq.center_dim > 0 {
        let _ = writeln!(text, "center dimension {}", seq.center_dim);
    }
    let mut out = seq_json(&seq, opts.emit_generators);
    let mut violations = Vec::new();
    if opts.crosscheck {
        let needed: Vec<bool> = minimality_report(a, &seq).iter().map(|e| e.needed()).collect();
        if needed.iter().any(|n| !n) {
            violations.push("a reported generator is redundant".to_string());
        }
        out["minimal"] = json!(needed.iter().all(|&n| n));
    }
    Report {
        json: out,
        text,
        warnings: seq_warnings(&seq),
        violations,
        ..Report::default()
    }
}

pub fn freeness(a: &Arrangement, h: Option<&Hyperplane>, opts: &Options) -> Result<Report, CliError> {
    let ess = a.essentialize().essential;
    let seq = degree_sequence(&ess, opts.degree_options());
    let cert = is_free(&ess, &seq)?;
    let chi = char_poly(&ess);
    let mut violations = Vec::new();
    let mut text = format!("free: {}\n", cert.free);
    if let Some(e) = &cert.exponents {
        let _ = writeln!(text, "exponents {}", list(e));
        let roots: Vec<i64> = e.iter().map(|&d| d as i64).collect();
        if chi != UniPoly::from_roots(&roots) {
            violations.push(format!("free with exponents {} but chi(t) = {chi}", list(e)));
        }
    }
    let mut out = json!({
        "essentialized": !a.is_essential(),
        "free": cert.free,
        "exponents": cert.exponents,
        "determinant": cert.determinant.as_ref().map(json::poly),
        "ratio": cert.ratio.as_ref().map(json::rat),
        "charpoly": json::unipoly(&chi),
        "degree_sequence": seq_json(&seq, opts.emit_generators),
    });
    let mut warnings = seq_warnings(&seq);
    if let Some(h) = h {
        let d = opts.degree_options();
        let four = check_4gens_freeness(a, h, d)?;
        let _ = writeln!(text, "adding {h}: four-generator test {}", verdict_name(&four.verdict));
        let mut added = json!({
            "hyperplane": json::hyperplane(h),
            "four_gens": { "verdict": verdict_name(&four.verdict), "exponents": four.exponents },
        });
        if a.contains(h) {
            warnings.push(format!(
                "{h} already belongs to the arrangement; only the four-generator test was run"
            ));
        } else {
            let numgen = check_numgen_bounds(a, h, d)?;
            let three = check_3nonfree(a, h, d)?;
            if !numgen.holds {
                violations.push(format!("generator count bound fails at {h}"));
            }
            let case = match numgen.case {
                NumgenCase::Top { d } => json!({ "top": d }),
                NumgenCase::Below { e } => json!({ "below": e }),
                NumgenCase::None => Value::Null,
            };
            let _ = writeln!(
                text,
                "adding {h}: three-generator test {}, count bound {}",
                verdict_name(&three.verdict),
                numgen.holds
            );
            added["three_nonfree"] = json!({
                "verdict": verdict_name(&three.verdict),
                "ab": three.ab,
                "gap": three.gap,
                "degrees_prime": three.degrees_prime,
            });
            added["numgen"] = json!({
                "case": case,
                "gap": numgen.gap,
                "n_prime": numgen.n_prime,
                "n_full": numgen.n_full,
                "holds": numgen.holds,
            });
        }
        out["added"] = added;
    }
    Ok(Report {
        json: out,
        text,
        warnings,
        violations,
        ..Report::default()
    })
}

pub fn tnumber(a: &Arrangement, opts: &Options) -> Result<Report, CliError> {
    let seq = degree_sequence(a, opts.degree_options());
    let r = minimal_restriction(a).with_degrees(a, &seq);
    let mut violations = Vec::new();
    let mut text = format!("t = {} at {}\n", r.t_value, r.witness);
    match r.inequality_slack {
        Some(s) => {
            let _ = writeln!(text, "t - (|A| - d) = {s}");
            if s < 0 {
                violations.push(format!("t = {} < |A| - d_A (slack {s})", r.t_value));
            }
        }
        None => text.push_str("degree sequence incomplete; inequality not evaluated\n"),
    }
    let two = check_two_points(a, opts.degree_options())?;
    let mut out = json!({
        "t": r.t_value,
        "witness": json::hyperplane(&r.witness),
        "r": r.r_value,
        "unweighted_t": r.unweighted_t(a),
        "d": if seq.complete { seq.d_max() } else { None },
        "size": a.len(),
        "slack": r.inequality_slack,
        "two_points": {
            "found": two.points.is_some(),
            "consistent": two.consistent,
        },
    });
    if two.points.is_some() && !two.consistent {
        violations.push("two points carry every hyperplane but t or d disagree".into());
    }
    if opts.crosscheck {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let mut sampled = 0;
        let mut best = usize::MAX;
        for _ in 0..10_000 {
            if sampled == 1000 {
                break;
            }
            let c: Vec<i64> = (0..a.dim()).map(|_| rng.gen_range(-5..=5)).collect();
            let Ok(h) = Hyperplane::from_ints(&c) else { continue };
            if a.contains(&h) {
                continue;
            }
            sampled += 1;
            best = best.min(a.add(&h)?.restriction_size(&h));
        }
        if best < r.t_value {
            violations.push(format!("a sampled hyperplane restricts to {best} < t"));
        }
        out["crosscheck"] = json!({ "sampled": sampled, "best": (sampled > 0).then_some(best) });
    }
    Ok(Report {
        json: out,
        text,
        warnings: seq_warnings(&seq),
        violations,
        ..Report::default()
    })
}

pub fn addition(
    a: &Arrangement,
    hs: &[Hyperplane],
    verify_up_to: Option<u32>,
    opts: &Options,
) -> Result<Report, CliError> {
    let seq = degree_sequence(a, opts.degree_options());
    let r = addition_generators(a, hs, &seq, verify_up_to)?;
    let mut sorted = r.degrees.clone();
    sorted.sort_unstable();
    let text = format!(
        "degrees {}, verified through degree {}\n",
        list(&sorted),
        r.verified_through
    );
    let mut out = json!({
        "size": r.arrangement.len(),
        "degrees": r.degrees,
        "sorted_degrees": sorted,
        "c_matrix": r.c_matrix.iter().map(|row| row.iter().map(json::rat).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "b_polys": r.b_polys.iter().map(json::poly).collect::<Vec<_>>(),
        "verified_through": r.verified_through,
    });
    if opts.emit_generators {
        out["generators"] = Value::Array(r.generators.iter().map(json::derivation).collect());
    }
    Ok(Report {
        json: out,
        text,
        warnings: seq_warnings(&seq),
        ..Report::default()
    })
}

pub fn graph_analyze(g: &Graph, with_derivations: bool, opts: &Options) -> Result<Report, CliError> {
    let tri = tri_count(g);
    let corrected = corrected_graphic_t(g);
    let clique = g.max_clique();
    let mut violations = Vec::new();
    let mut warnings = Vec::new();
    let mut text = format!(
        "{} vertices, {} edges, Tri {}, t {} (corrected {}), max clique {}\n",
        g.num_vertices(),
        g.num_edges(),
        tri.tri,
        tri.t_formula,
        corrected,
        clique
    );
    let mut out = json!({
        "vertices": g.num_vertices(),
        "edges": g.num_edges(),
        "tri": tri.tri,
        "witness_edge": tri.witness_edge,
        "has_4cycle": tri.has_4cycle,
        "t": tri.t_formula,
        "t_corrected": corrected,
        "max_clique": clique,
    });
    if opts.crosscheck {
        let c = crosscheck_graphic_t(g);
        let _ = writeln!(text, "search t {}", c.search);
        if !c.formula_agrees() {
            violations.push(format!(
                "four-case formula gives {} but the search gives {}",
                c.formula, c.search
            ));
        }
        if !c.corrected_agrees() {
            violations.push(format!(
                "corrected formula gives {} but the search gives {}",
                c.corrected, c.search
            ));
        }
        out["t_search"] = json!(c.search);
        out["search_witness"] = json::hyperplane(&c.witness);
    }
    if with_derivations {
        let a = graphic_arrangement(g);
        let seq = degree_sequence(&a, opts.degree_options());
        warnings.extend(seq_warnings(&seq));
        out["degree_sequence"] = seq_json(&seq, opts.emit_generators);
        if tri.tri > 0 && seq.complete {
            let b = check_tri_bound(g, &seq)?;
            let _ = writeln!(text, "d {} >= Tri {}: {} (tight: {})", b.d, b.tri, b.holds, b.tight);
            if !b.holds {
                violations.push(format!("d = {} < Tri = {}", b.d, b.tri));
            }
            out["tri_bound"] =
                json!({ "d": b.d, "holds": b.holds, "tight": b.tight, "slack": b.d as i64 - b.tri as i64 });
        }
    }
    Ok(Report {
        json: out,
        text,
        warnings,
        violations,
        ..Report::default()
    })
}

pub fn hyp_analyze(a: &Arrangement, opts: &Options) -> Result<Report, CliError> {
    let mut violations = Vec::new();
    let mut warnings = Vec::new();
    let direct = (a.len() <= DIRECT_QP_LIMIT)
        .then(|| quadratic_poincare(a, QpMethod::Direct, opts.budget))
        .transpose()?;
    let mut out = json!({ "qp_direct": direct.as_ref().map(json::unipoly) });
    let outcome = find_filtration(a, opts.budget);
    let f = match outcome {
        FiltrationOutcome::Found(f) => f,
        FiltrationOutcome::NotHypersolvable => {
            out["hypersolvable"] = json!(false);
            return Ok(Report {
                json: out,
                text: "not hypersolvable\n".into(),
                ..Report::default()
            });
        }
        FiltrationOutcome::BudgetExhausted => {
            out["hypersolvable"] = Value::Null;
            warnings.push(format!("filtration search stopped after {} nodes", opts.budget));
            return Ok(Report {
                json: out,
                text: "undecided: search budget exhausted\n".into(),
                warnings,
                ..Report::default()
            });
        }
    };
    let bs: Vec<i64> = f.steps.iter().map(|&b| b as i64).collect();
    let qp = UniPoly::from_one_plus(&bs);
    if let Some(d) = &direct {
        if *d != qp {
            violations.push(format!("filtration gives QP {qp} but the exterior algebra gives {d}"));
        }
    }
    let steps = restriction_identity(a, &f);
    let identity_holds = steps.iter().all(|s| s.restriction == s.lower_size);
    if !identity_holds {
        violations.push("a restriction to an added hyperplane differs from the level below".into());
    }
    let supersolvable = f.k() == a.rank();
    let mut text = format!(
        "hypersolvable, hyperexponents {}, QP {qp}, supersolvable {supersolvable}\n",
        list(&f.hyperexponents())
    );
    out["hypersolvable"] = json!(true);
    out["filtration"] = json!(f.chain);
    out["steps"] = json!(f.steps);
    out["hyperexponents"] = json!(f.hyperexponents());
    out["qp"] = json::unipoly(&qp);
    out["supersolvable"] = json!(supersolvable);
    out["restriction_identity"] = json!(identity_holds);
    if supersolvable {
        out["exponents"] = json!(f.hyperexponents());
        if opts.crosscheck {
            let seq = degree_sequence(a, opts.degree_options());
            let cert = is_free(a, &seq)?;
            let want: Vec<u32> = f.hyperexponents().iter().map(|&b| b as u32).collect();
            if !cert.free || cert.exponents.as_deref() != Some(&want[..]) {
                violations.push("supersolvable but not free with the step sizes as exponents".into());
            }
        }
    }
    match check_hypbound(a, opts.degree_options(), opts.budget) {
        Ok(b) => {
            let _ = writeln!(text, "rho {}, d {}, slack {}", b.rho, b.d_full, b.slack_full);
            if !b.holds() {
                violations.push(format!(
                    "d = {} or d' = {} below rho - 1 = {}",
                    b.d_full,
                    b.d_deleted,
                    b.rho as i64 - 1
                ));
            }
            out["hypbound"] = json!({
                "rho": b.rho,
                "deleted": b.deleted,
                "d": b.d_full,
                "d_deleted": b.d_deleted,
                "slack": b.slack_full,
                "slack_deleted": b.slack_deleted,
                "holds": b.holds(),
            });
        }
        Err(hyperarr::hypersolvable::HypersolvableError::Logder(hyperarr::logder::LogderError::Incomplete)) => {
            warnings.push("degree sequence incomplete; degree bound not evaluated".into());
        }
        Err(e) => return Err(e.into()),
    }
    Ok(Report {
        json: out,
        text,
        warnings,
        violations,
        ..Report::default()
    })
}
