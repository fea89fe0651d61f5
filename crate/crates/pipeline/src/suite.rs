use std::ops::RangeInclusive;

use angmom::exterior::{minor_certificate, ColumnMatrix};
use angmom::groebner::{buchberger, normal_form};
use angmom::model::{
    minor, minor_generators, q_generator, subsets, verify_bracket_table, verify_difference_identity,
    verify_localization_identity, verify_norm_identity, GramRing, IdentityReport,
};
use angmom::{MonomialOrder, Polynomial};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;

/// Deliberate corruptions used to check that the suite can fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mutation {
    /// Adds `x[1,1]^2` to `Q[1,2]` wherever the suite uses the quadratic relations.
    CorruptQuadratic,
}

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub seed: u64,
    /// Certificates checked per `k` when there are too many to check all.
    pub sampled_certificates: usize,
    /// Largest `k` for which every certificate is checked.
    pub exhaustive_certificates_up_to: usize,
    /// Largest `k` for the minor membership and certificate checks.
    pub minors_up_to: usize,
    pub mutation: Option<Mutation>,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            seed: 0,
            sampled_certificates: 20,
            exhaustive_certificates_up_to: 2,
            minors_up_to: 3,
            mutation: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub k: usize,
    pub n: Option<usize>,
    pub checked: usize,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteSummary {
    pub outcomes: Vec<CheckOutcome>,
}

impl SuiteSummary {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.failures.is_empty())
    }

    pub fn checks(&self) -> usize {
        self.outcomes.iter().map(|o| o.checked).sum()
    }

    pub fn failures(&self) -> usize {
        self.outcomes.iter().map(|o| o.failures.len()).sum()
    }

    pub fn render_text(&self) -> String {
        let mut s = String::new();
        for o in &self.outcomes {
            let case = match o.n {
                Some(n) => format!("k={} n={}", o.k, n),
                None => format!("k={}", o.k),
            };
            let status = if o.failures.is_empty() { "ok" } else { "FAILED" };
            s.push_str(&format!(
                "{:<28} {:<10} {:>6} checks  {status}\n",
                o.name, case, o.checked
            ));
            for f in &o.failures {
                s.push_str(&format!("    {f}\n"));
            }
        }
        s.push_str(&format!("{} checks, {} failures\n", self.checks(), self.failures()));
        s
    }

    fn push(&mut self, k: usize, n: Option<usize>, report: IdentityReport) {
        self.outcomes.push(CheckOutcome {
            name: report.name,
            k,
            n,
            checked: report.checked,
            failures: report.failures,
        });
    }
}

fn single(name: &str, ok: bool) -> IdentityReport {
    IdentityReport {
        name: name.to_string(),
        checked: 1,
        failures: if ok {
            Vec::new()
        } else {
            vec![format!("{name} does not hold")]
        },
    }
}

struct Quadratics {
    gr: GramRing,
    mutation: Option<Mutation>,
}

impl Quadratics {
    fn q(&self, i: usize, j: usize) -> Result<Polynomial> {
        let mut q = q_generator(&self.gr, i, j)?;
        if self.mutation == Some(Mutation::CorruptQuadratic) && (i, j) == (1, 2) {
            let x = self.gr.x(1, 1)?;
            q = &q + &(&x * &x);
        }
        Ok(q)
    }

    fn all(&self) -> Result<Vec<Polynomial>> {
        let m = self.gr.dim();
        let mut out = Vec::new();
        for i in 1..=m {
            for j in i + 1..=m {
                out.push(self.q(i, j)?);
            }
        }
        Ok(out)
    }
}

fn minors_in_quadratic_ideal(qs: &Quadratics) -> Result<IdentityReport> {
    let mut report = IdentityReport {
        name: "minors in quadratic ideal".into(),
        ..Default::default()
    };
    let order = MonomialOrder::GradedRevLex;
    let gb = buchberger(qs.gr.ring(), &qs.all()?, &order)?;
    for m in minor_generators(&qs.gr, qs.gr.k() + 1)? {
        report.checked += 1;
        if !normal_form(&m.polynomial, &gb, &order)?.is_zero() {
            report.failures.push(format!("{} is not in the ideal", m.label()));
        }
    }
    Ok(report)
}

fn certificates(qs: &Quadratics, options: &SuiteOptions) -> Result<IdentityReport> {
    let mut report = IdentityReport {
        name: "minor certificates".into(),
        ..Default::default()
    };
    let k = qs.gr.k();
    let sets = subsets(qs.gr.dim(), k + 1);
    let mut pairs: Vec<(&Vec<usize>, &Vec<usize>)> =
        sets.iter().flat_map(|r| sets.iter().map(move |c| (r, c))).collect();
    if k > options.exhaustive_certificates_up_to {
        let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
        pairs.shuffle(&mut rng);
        pairs.truncate(options.sampled_certificates);
    }
    for (rows, cols) in pairs {
        let cert = minor_certificate(&qs.gr, rows, cols)?;
        let mut sum = Polynomial::zero(qs.gr.ring());
        for ((i, j), c) in &cert.combination {
            sum = &sum + &(c * &qs.q(*i, *j)?);
        }
        report.checked += 1;
        if sum != minor(&qs.gr, rows, cols)? {
            report
                .failures
                .push(format!("{} does not expand to the minor", cert.label()));
        }
    }
    Ok(report)
}

/// `Q ∧ σ = x_1 ∧ … ∧ x_{k+1}` for odd `k`.
fn paired_blade(gr: &GramRing) -> Result<IdentityReport> {
    let k = gr.k();
    let m = ColumnMatrix::gram(gr, gr.dim())?;
    let mut blade = m.column(1)?;
    for j in 2..=k + 1 {
        blade = blade.wedge(&m.column(j)?)?;
    }
    let ok = m.q_wedge()?.wedge(&m.sigma(k)?)? == blade;
    Ok(single("wedge with sigma", ok))
}

/// Runs the polynomial identity checks over `ks × ns`, plus the minor
/// membership and certificate checks for each `k` up to
/// `options.minors_up_to`.
pub fn verify_suite(
    ks: RangeInclusive<usize>,
    ns: RangeInclusive<usize>,
    options: &SuiteOptions,
) -> Result<SuiteSummary> {
    let mut summary = SuiteSummary::default();
    for k in ks.clone() {
        for n in ns.clone() {
            summary.push(k, Some(n), verify_bracket_table(k, n)?);
            summary.push(
                k,
                Some(n),
                single("norm of the moment map", verify_norm_identity(k, n)?),
            );
            if n >= 2 {
                summary.push(k, Some(n), verify_difference_identity(k, n)?);
            }
            if n >= 3 && k >= 2 {
                summary.push(k, Some(n), verify_localization_identity(k, n)?);
            }
        }
        if k <= options.minors_up_to {
            let qs = Quadratics {
                gr: GramRing::new(k)?,
                mutation: options.mutation,
            };
            summary.push(k, None, minors_in_quadratic_ideal(&qs)?);
            summary.push(k, None, certificates(&qs, options)?);
            if k % 2 == 1 {
                summary.push(k, None, paired_blade(&qs.gr)?);
            }
        }
    }
    Ok(summary)
}
