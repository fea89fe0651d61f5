use std::fmt::Write as _;
use std::time::{Duration, Instant};

use angmom::groebner::{
    buchberger_limited, elimination_ideal, normal_form, CapReason, GroebnerBasis, IdealBasis, Selection, Stats,
};
use angmom::hilbert::{hilbert_series_quotient, laurent_at_one, HilbertSeries};
use angmom::model::{build_ideals, EliminationProblem, Group};
use angmom::{MonomialOrder, Polynomial, Ring};
use serde::{Deserialize, Serialize};

use crate::case::{Caps, CaseSpec, Mode};
use crate::error::{PipelineError, Result};

/// Order used for the quadratic ideal and for comparing relation ideals.
pub fn invariant_order() -> MonomialOrder {
    MonomialOrder::GradedLex
}

/// Outcome of the elimination step of a case.
#[derive(Clone, Debug)]
pub struct Elimination {
    pub problem: EliminationProblem,
    pub order: MonomialOrder,
    /// Reduced Gröbner basis of the elimination ring, or the partial basis
    /// reached when capped.
    pub groebner: Vec<Polynomial>,
    /// The relation ideal in the invariant ring, when the run completed.
    pub relations: Option<IdealBasis>,
    pub stats: Stats,
    pub elapsed: Duration,
    pub capped: Option<CapReason>,
}

/// Eliminates the phase variables from the moment map ideal together with
/// the invariant definitions.
pub fn run_elimination_workflow(spec: &CaseSpec) -> Result<Elimination> {
    eliminate_until(spec, spec.caps.deadline(Instant::now()))
}

fn eliminate_until(spec: &CaseSpec, deadline: Option<Instant>) -> Result<Elimination> {
    let problem = EliminationProblem::new(spec.k, spec.n, spec.group)?;
    let order = problem.order(spec.order);
    let run = buchberger_limited(
        &problem.ring,
        &problem.generators,
        &order,
        Selection::Sugar,
        &spec.caps.limits(deadline),
    )?;
    let relations = if run.is_complete() {
        let full = IdealBasis::new(&problem.ring, problem.generators.clone())?.with_groebner(GroebnerBasis {
            order: order.clone(),
            basis: run.basis.clone(),
            reduced: true,
        });
        Some(elimination_ideal(&full, &problem.eliminated())?)
    } else {
        None
    };
    Ok(Elimination {
        problem,
        order,
        groebner: run.basis,
        relations,
        stats: run.stats,
        elapsed: run.elapsed,
        capped: run.capped,
    })
}

/// The reduced basis of `ideal` under [`invariant_order`], sorted, as a
/// canonical form for comparing ideals.
pub fn canonical_basis(ideal: &IdealBasis) -> Result<Vec<Polynomial>> {
    Ok(ideal.groebner_for(&invariant_order())?.basis)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesReport {
    pub numerator: Vec<i64>,
    pub denominator_weights: Vec<u32>,
    pub dimension: i64,
    pub a_invariant: i64,
    pub gorenstein: bool,
    pub graded_gorenstein: bool,
    pub rendered: String,
    /// Leading coefficients of the expansion in powers of `1 − t`.
    pub laurent: Vec<String>,
}

impl SeriesReport {
    pub fn from_series(h: &HilbertSeries) -> Result<Self> {
        let rec = h.record()?;
        Ok(SeriesReport {
            numerator: rec.numerator,
            denominator_weights: rec.denominator_weights,
            dimension: rec.dimension,
            a_invariant: rec.a_invariant,
            gorenstein: rec.gorenstein,
            graded_gorenstein: rec.graded_gorenstein,
            rendered: rec.rendered,
            laurent: laurent_at_one(h, 4)?.iter().map(|c| c.to_string()).collect(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Completion {
    Complete,
    ResourceCapped { stage: String, reason: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// Same Hilbert series and each ideal contains the other's generators.
    Equal,
    /// Only the quadratic ideal was computed.
    QOnly,
    Mismatch,
    /// Special orthogonal cases: the relation ideal involves determinant
    /// variables and has no quadratic counterpart.
    NotCompared,
}

/// Mutual membership of the generators of the two ideals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Membership {
    pub relations_in_quadratic: bool,
    pub quadratic_in_relations: bool,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub elimination_ms: f64,
    pub quadratic_ms: f64,
    pub hilbert_ms: f64,
    pub total_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunStats {
    pub pairs_processed: u64,
    pub pairs_discarded: u64,
    pub zero_reductions: u64,
    pub max_basis: usize,
}

impl From<&Stats> for RunStats {
    fn from(s: &Stats) -> Self {
        RunStats {
            pairs_processed: s.pairs_processed,
            pairs_discarded: s.pairs_discarded,
            zero_reductions: s.zero_reductions,
            max_basis: s.max_basis,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CaseReport {
    pub k: usize,
    pub n: usize,
    pub group: String,
    pub order: String,
    pub order_description: String,
    pub mode: Mode,
    pub caps: Caps,
    pub completion: Completion,
    /// Size of the Gröbner basis of the elimination ring.
    pub groebner_size: Option<usize>,
    pub elimination_stats: Option<RunStats>,
    pub elimination_generators: Vec<String>,
    pub quadratic_generators: usize,
    pub relation_series: Option<SeriesReport>,
    pub quadratic_series: Option<SeriesReport>,
    pub series_identical: Option<bool>,
    pub membership: Option<Membership>,
    pub verdict: Verdict,
    pub timings: Timings,
}

fn millis(d: Duration) -> f64 {
    (d.as_secs_f64() * 1e6).round() / 1e3
}

impl CaseReport {
    /// The series the case is about: the relation ideal's when computed.
    pub fn series(&self) -> Option<&SeriesReport> {
        self.relation_series.as_ref().or(self.quadratic_series.as_ref())
    }

    pub fn is_complete(&self) -> bool {
        self.completion == Completion::Complete
    }

    /// The report with timings cleared; identical across reruns.
    pub fn canonical(&self) -> CaseReport {
        CaseReport {
            timings: Timings::default(),
            ..self.clone()
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// 0 on success, 1 when the comparison failed, 2 when a cap was hit.
    pub fn exit_code(&self) -> i32 {
        if !self.is_complete() {
            2
        } else if self.verdict == Verdict::Mismatch {
            1
        } else {
            0
        }
    }

    pub fn render_text(&self) -> String {
        let yes = |b: bool| if b { "yes" } else { "no" };
        let mut s = String::new();
        let _ = writeln!(
            s,
            "case          k={} n={} group={} order={}",
            self.k, self.n, self.group, self.order
        );
        let status = match &self.completion {
            Completion::Complete => "complete".to_string(),
            Completion::ResourceCapped { stage, reason } => format!("resource-capped during {stage}: {reason}"),
        };
        let _ = writeln!(s, "status        {status}");
        if let Some(g) = self.groebner_size {
            let _ = writeln!(s, "groebner      {g} elements");
        }
        if self.mode == Mode::Full && self.relations_known() {
            let _ = writeln!(s, "relations     {} generators", self.elimination_generators.len());
        }
        let _ = writeln!(s, "quadratic     {} generators", self.quadratic_generators);
        if let Some(h) = &self.relation_series {
            let _ = writeln!(s, "series R      {}", h.rendered);
        }
        if let Some(h) = &self.quadratic_series {
            let _ = writeln!(s, "series Q      {}", h.rendered);
        }
        if let Some(h) = self.series() {
            let _ = writeln!(s, "d, a          {}, {}", h.dimension, h.a_invariant);
            let _ = writeln!(
                s,
                "gorenstein    {} (graded: {})",
                yes(h.gorenstein),
                yes(h.graded_gorenstein)
            );
            let _ = writeln!(s, "laurent       [{}]", h.laurent.join(", "));
        }
        if let Some(m) = &self.membership {
            let _ = writeln!(
                s,
                "membership    R in Q: {}, Q in R: {}",
                yes(m.relations_in_quadratic),
                yes(m.quadratic_in_relations)
            );
        }
        let verdict = match self.verdict {
            Verdict::Equal => "equal",
            Verdict::QOnly => "Q-only",
            Verdict::Mismatch => "mismatch",
            Verdict::NotCompared => "not compared",
        };
        let _ = writeln!(s, "verdict       {verdict}");
        let t = &self.timings;
        let _ = writeln!(
            s,
            "timing        elimination {:.1} ms, quadratic {:.1} ms, hilbert {:.1} ms, total {:.1} ms",
            t.elimination_ms, t.quadratic_ms, t.hilbert_ms, t.total_ms
        );
        s
    }

    fn relations_known(&self) -> bool {
        self.relation_series.is_some()
    }
}

/// A case report together with the texts stored next to it in the cache.
#[derive(Clone, Debug, PartialEq)]
pub struct CaseRun {
    pub report: CaseReport,
    /// Input generators of the computation.
    pub generators_text: String,
    /// The resulting basis: the relation ideal, or the quadratic ideal's
    /// Gröbner basis in quadratic-only runs.
    pub groebner_text: String,
}

/// `# ring <header>` followed by one polynomial per line.
pub fn basis_text(ring: &Ring, polys: &[Polynomial]) -> String {
    let mut s = format!("# ring {}\n", ring.header());
    for p in polys {
        s.push_str(&p.format());
        s.push('\n');
    }
    s
}

pub fn parse_basis_text(text: &str) -> Result<(Ring, Vec<Polynomial>)> {
    let mut lines = text.lines();
    let ring_line = lines
        .next()
        .and_then(|l| l.strip_prefix("# ring "))
        .ok_or_else(|| PipelineError::Input("basis text must start with a ring line".into()))?;
    let ring = Ring::from_header(ring_line)?;
    let polys = lines
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| Polynomial::parse(l, &ring))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((ring, polys))
}

struct Quadratic {
    ideal: IdealBasis,
    complete: Result<(), CapReason>,
    elapsed: Duration,
}

fn quadratic_until(spec: &CaseSpec, deadline: Option<Instant>) -> Result<Quadratic> {
    let (_, q) = build_ideals(spec.k, spec.n, Group::O)?;
    let order = invariant_order();
    let run = buchberger_limited(
        &q.ring,
        &q.polynomials,
        &order,
        Selection::Sugar,
        &spec.caps.limits(deadline),
    )?;
    let mut ideal = IdealBasis::new(&q.ring, q.polynomials)?;
    let complete = match run.capped {
        None => {
            ideal = ideal.with_groebner(GroebnerBasis {
                order,
                basis: run.basis,
                reduced: true,
            });
            Ok(())
        }
        Some(c) => Err(c),
    };
    Ok(Quadratic {
        ideal,
        complete,
        elapsed: run.elapsed,
    })
}

fn contained(gens: &[Polynomial], ideal: &IdealBasis) -> Result<bool> {
    let gb = ideal
        .groebner()
        .ok_or_else(|| PipelineError::Input("ideal has no Gröbner basis".into()))?;
    for g in gens {
        if !normal_form(g, &gb.basis, &gb.order)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Runs a whole case: elimination, the quadratic ideal, both Hilbert
/// series, and the comparison.
pub fn run_case(spec: &CaseSpec) -> Result<CaseRun> {
    let start = Instant::now();
    let deadline = spec.caps.deadline(start);
    let mut timings = Timings::default();
    let mut completion = Completion::Complete;
    let capped = |stage: &str, reason: &CapReason| Completion::ResourceCapped {
        stage: stage.to_string(),
        reason: reason.to_string(),
    };

    let mut report = CaseReport {
        k: spec.k,
        n: spec.n,
        group: spec.group.to_string(),
        order: spec.order.name().to_string(),
        order_description: String::new(),
        mode: spec.mode,
        caps: spec.caps,
        completion: Completion::Complete,
        groebner_size: None,
        elimination_stats: None,
        elimination_generators: Vec::new(),
        quadratic_generators: 0,
        relation_series: None,
        quadratic_series: None,
        series_identical: None,
        membership: None,
        verdict: Verdict::QOnly,
        timings,
    };

    let mut relations = None;
    let mut generators_text = String::new();
    let mut groebner_text = String::new();
    if spec.mode == Mode::Full {
        let elim = eliminate_until(spec, deadline)?;
        timings.elimination_ms = millis(elim.elapsed);
        report.order_description = elim.order.describe();
        report.elimination_stats = Some(RunStats::from(&elim.stats));
        generators_text = basis_text(&elim.problem.ring, &elim.problem.generators);
        match (&elim.capped, elim.relations) {
            (Some(reason), _) => completion = capped("elimination", reason),
            (None, Some(r)) => {
                report.groebner_size = Some(elim.groebner.len());
                report.elimination_generators = r.generators().iter().map(Polynomial::format).collect();
                groebner_text = basis_text(r.ring(), r.generators());
                relations = Some(r);
            }
            (None, None) => unreachable!("a complete run yields relations"),
        }
    } else {
        report.order_description = invariant_order().describe();
    }

    let mut quadratic = None;
    if spec.group == Group::O && completion == Completion::Complete {
        let q = quadratic_until(spec, deadline)?;
        timings.quadratic_ms = millis(q.elapsed);
        report.quadratic_generators = q.ideal.generators().len();
        if spec.mode == Mode::QuadraticOnly {
            generators_text = basis_text(q.ideal.ring(), q.ideal.generators());
        }
        match &q.complete {
            Err(reason) => completion = capped("quadratic ideal", reason),
            Ok(()) => {
                if spec.mode == Mode::QuadraticOnly {
                    let gb = q.ideal.groebner().expect("complete run");
                    groebner_text = basis_text(q.ideal.ring(), &gb.basis);
                }
                quadratic = Some(q.ideal);
            }
        }
    }

    let hilbert_start = Instant::now();
    let mut series = |ideal: &IdealBasis| -> Result<HilbertSeries> {
        let order = ideal
            .groebner()
            .map(|g| g.order.clone())
            .unwrap_or_else(invariant_order);
        Ok(hilbert_series_quotient(ideal, &order)?)
    };
    let r_series = relations.as_ref().map(&mut series).transpose()?;
    let q_series = quadratic.as_ref().map(&mut series).transpose()?;
    report.relation_series = r_series.as_ref().map(SeriesReport::from_series).transpose()?;
    report.quadratic_series = q_series.as_ref().map(SeriesReport::from_series).transpose()?;
    timings.hilbert_ms = millis(hilbert_start.elapsed());

    report.verdict = match (&relations, &quadratic) {
        _ if spec.group == Group::SO => Verdict::NotCompared,
        (Some(r), Some(q)) => {
            let identical = r_series == q_series;
            let membership = Membership {
                relations_in_quadratic: contained(r.generators(), q)?,
                quadratic_in_relations: contained(q.generators(), r)?,
            };
            report.series_identical = Some(identical);
            report.membership = Some(membership);
            if identical && membership.relations_in_quadratic && membership.quadratic_in_relations {
                Verdict::Equal
            } else {
                Verdict::Mismatch
            }
        }
        _ => Verdict::QOnly,
    };

    report.completion = completion;
    timings.total_ms = millis(start.elapsed());
    report.timings = timings;
    Ok(CaseRun {
        report,
        generators_text,
        groebner_text,
    })
}

/// Hilbert series and ideal comparison for a case; see [`run_case`].
pub fn compare_ideals(spec: &CaseSpec) -> Result<CaseReport> {
    Ok(run_case(spec)?.report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_relation_for_one_particle_in_one_dimension() {
        let spec = CaseSpec::new(1, 1, Group::O).unwrap();
        let elim = run_elimination_workflow(&spec).unwrap();
        let r = elim.relations.unwrap();
        assert_eq!(r.generators().len(), 1);
        let g = &r.generators()[0];
        let expected = Polynomial::parse("x[1,1]*x[2,2] - x[1,2]^2", g.ring()).unwrap();
        assert!(*g == expected || *g == -&expected, "{}", g.format());
    }

    #[test]
    fn capped_runs_are_flagged() {
        let caps = Caps {
            max_pairs: Some(3),
            ..Caps::none()
        };
        let spec = CaseSpec::new(2, 2, Group::O).unwrap().with_caps(caps);
        let run = run_case(&spec).unwrap();
        assert!(!run.report.is_complete());
        assert_eq!(run.report.exit_code(), 2);
        assert_eq!(run.report.verdict, Verdict::QOnly);
    }

    #[test]
    fn report_round_trips_through_json() {
        let report = compare_ideals(&CaseSpec::new(1, 1, Group::O).unwrap()).unwrap();
        assert_eq!(report.verdict, Verdict::Equal);
        let back = CaseReport::from_json(&report.to_json().unwrap()).unwrap();
        assert_eq!(back, report);
        assert!(report.render_text().contains("(1 + t^2) / (1 - t^2)^2"));
    }

    #[test]
    fn basis_text_round_trip() {
        let spec = CaseSpec::new(2, 1, Group::O).unwrap();
        let run = run_case(&spec).unwrap();
        let (ring, polys) = parse_basis_text(&run.groebner_text).unwrap();
        assert_eq!(basis_text(&ring, &polys), run.groebner_text);
        assert_eq!(polys.len(), 20);
    }
}
