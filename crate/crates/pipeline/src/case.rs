use std::fmt;
use std::time::{Duration, Instant};

use angmom::groebner::Limits;
use angmom::model::{EliminationOrder, Group};
use serde::{Deserialize, Serialize};

use crate::error::{PipelineError, Result};

/// Resource limits for one case. `None` means unlimited.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    pub max_pairs: Option<u64>,
    pub max_basis: Option<usize>,
    pub time_budget_secs: Option<u64>,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_pairs: Some(50_000),
            max_basis: Some(5_000),
            time_budget_secs: Some(600),
        }
    }
}

impl Caps {
    pub fn none() -> Self {
        Caps {
            max_pairs: None,
            max_basis: None,
            time_budget_secs: None,
        }
    }

    pub fn deadline(&self, start: Instant) -> Option<Instant> {
        self.time_budget_secs.map(|s| start + Duration::from_secs(s))
    }

    pub(crate) fn limits(&self, deadline: Option<Instant>) -> Limits {
        Limits {
            max_pairs: self.max_pairs,
            max_basis: self.max_basis,
            deadline,
            cancel: None,
        }
    }

    /// Whether every limit of `self` is at least as generous as `other`'s.
    pub fn covers(&self, other: &Caps) -> bool {
        fn ge<T: PartialOrd>(a: Option<T>, b: Option<T>) -> bool {
            match (a, b) {
                (None, _) => true,
                (Some(_), None) => false,
                (Some(a), Some(b)) => a >= b,
            }
        }
        ge(self.max_pairs, other.max_pairs)
            && ge(self.max_basis, other.max_basis)
            && ge(self.time_budget_secs, other.time_budget_secs)
    }
}

/// Which ideals a case computes.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Eliminate to get the relation ideal and compare it with the quadratic one.
    #[default]
    Full,
    /// Only the quadratic ideal; for cases where elimination is out of reach.
    QuadraticOnly,
}

/// One `(k, n, group)` case with its elimination order and limits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseSpec {
    pub k: usize,
    pub n: usize,
    pub group: Group,
    pub order: EliminationOrder,
    pub caps: Caps,
    pub mode: Mode,
}

impl CaseSpec {
    pub fn new(k: usize, n: usize, group: Group) -> Result<Self> {
        if k == 0 || n == 0 {
            return Err(PipelineError::Input("k and n must be positive".into()));
        }
        if group == Group::SO && n == 1 {
            return Err(PipelineError::Input("SO(1) is trivial; use group O for n = 1".into()));
        }
        Ok(CaseSpec {
            k,
            n,
            group,
            order: EliminationOrder::Interleaved,
            caps: Caps::default(),
            mode: Mode::Full,
        })
    }

    pub fn with_order(mut self, order: EliminationOrder) -> Self {
        self.order = order;
        self
    }

    pub fn with_caps(mut self, caps: Caps) -> Self {
        self.caps = caps;
        self
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }
}

impl fmt::Display for CaseSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{}) order={}", self.k, self.n, self.group, self.order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_trivial_groups() {
        assert!(CaseSpec::new(2, 1, Group::SO).is_err());
        assert!(CaseSpec::new(0, 1, Group::O).is_err());
        let c = CaseSpec::new(2, 2, Group::SO).unwrap();
        assert_eq!(c.order, EliminationOrder::Interleaved);
        assert_eq!(c.to_string(), "(2,2,SO) order=paper");
    }

    #[test]
    fn cap_coverage() {
        assert!(Caps::none().covers(&Caps::default()));
        assert!(!Caps::default().covers(&Caps::none()));
        assert!(Caps::default().covers(&Caps::default()));
    }
}
