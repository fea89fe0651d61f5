use std::fmt::Write as _;

use angmom::model::EliminationOrder;
use serde::{Deserialize, Serialize};

use crate::case::CaseSpec;
use crate::error::Result;
use crate::workflow::{canonical_basis, run_elimination_workflow};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub order: String,
    pub millis: f64,
    pub complete: bool,
    pub groebner_size: usize,
    /// Generators of the reduced relation ideal, when complete.
    pub relations: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub k: usize,
    pub n: usize,
    pub group: String,
    pub rows: Vec<BenchRow>,
    /// Whether all complete runs gave the same relation ideal; `None` with
    /// fewer than two complete runs.
    pub identical: Option<bool>,
}

impl BenchReport {
    /// `time(slow) / time(fast)` when both runs completed.
    pub fn ratio(&self, slow: EliminationOrder, fast: EliminationOrder) -> Option<f64> {
        let row = |o: EliminationOrder| self.rows.iter().find(|r| r.order == o.name() && r.complete);
        let (s, f) = (row(slow)?, row(fast)?);
        Some(s.millis / f.millis.max(1e-3))
    }

    pub fn render_text(&self) -> String {
        let mut s = format!("orders for ({},{},{})\n", self.k, self.n, self.group);
        let _ = writeln!(
            s,
            "{:<10} {:>12} {:>10} {:>10}  status",
            "order", "ms", "groebner", "relations"
        );
        for r in &self.rows {
            let _ = writeln!(
                s,
                "{:<10} {:>12.1} {:>10} {:>10}  {}",
                r.order,
                r.millis,
                r.groebner_size,
                r.relations.map_or("-".to_string(), |n| n.to_string()),
                if r.complete { "complete" } else { "capped" }
            );
        }
        let same = match self.identical {
            Some(true) => "identical",
            Some(false) => "DIFFERENT",
            None => "not comparable",
        };
        let _ = writeln!(s, "relation ideals: {same}");
        s
    }
}

/// Times the elimination step under each order and checks that the complete
/// runs agree on the relation ideal.
pub fn benchmark_orders(spec: &CaseSpec, orders: &[EliminationOrder]) -> Result<BenchReport> {
    let mut rows = Vec::with_capacity(orders.len());
    let mut bases = Vec::new();
    for &order in orders {
        let case = spec.clone().with_order(order);
        let elim = run_elimination_workflow(&case)?;
        let relations = match &elim.relations {
            Some(r) => {
                bases.push(canonical_basis(r)?);
                Some(r.generators().len())
            }
            None => None,
        };
        rows.push(BenchRow {
            order: order.name().to_string(),
            millis: elim.elapsed.as_secs_f64() * 1e3,
            complete: elim.capped.is_none(),
            groebner_size: elim.groebner.len(),
            relations,
        });
    }
    let identical = (bases.len() >= 2).then(|| bases.windows(2).all(|w| w[0] == w[1]));
    Ok(BenchReport {
        k: spec.k,
        n: spec.n,
        group: spec.group.to_string(),
        rows,
        identical,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use angmom::model::Group;

    #[test]
    fn orders_agree_on_small_cases() {
        let spec = CaseSpec::new(1, 1, Group::O).unwrap();
        let report = benchmark_orders(&spec, &EliminationOrder::ALL).unwrap();
        assert_eq!(report.identical, Some(true));
        assert!(report.rows.iter().all(|r| r.relations == Some(1)));
        assert!(report
            .ratio(EliminationOrder::Lex, EliminationOrder::Interleaved)
            .is_some());

        let spec = CaseSpec::new(2, 2, Group::O).unwrap();
        let report = benchmark_orders(&spec, &[EliminationOrder::Grevlex, EliminationOrder::Block]).unwrap();
        assert_eq!(report.identical, Some(true));
        assert!(report.render_text().contains("identical"));
    }
}
