//! Weighted polynomial ring descriptors.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{AlgebraError, Result};

#[derive(Debug, PartialEq, Eq)]
struct RingInner {
    names: Vec<String>,
    weights: Vec<u32>,
    index: HashMap<String, usize>,
}

/// An ordered list of named variables, each with a positive grading weight.
///
/// Cloning is cheap; clones share the same descriptor.
#[derive(Clone)]
pub struct Ring(Arc<RingInner>);

impl Ring {
    /// Builds a ring from `(name, weight)` pairs. Variable indices follow the
    /// given order.
    pub fn new<S: AsRef<str>>(spec: &[(S, u32)]) -> Result<Self> {
        let mut names = Vec::with_capacity(spec.len());
        let mut weights = Vec::with_capacity(spec.len());
        let mut index = HashMap::with_capacity(spec.len());
        for (i, (name, weight)) in spec.iter().enumerate() {
            let name = name.as_ref().to_string();
            if *weight == 0 {
                return Err(AlgebraError::ZeroWeight(name));
            }
            if index.insert(name.clone(), i).is_some() {
                return Err(AlgebraError::DuplicateVariable(name));
            }
            names.push(name);
            weights.push(*weight);
        }
        Ok(Ring(Arc::new(RingInner { names, weights, index })))
    }

    pub fn num_vars(&self) -> usize {
        self.0.names.len()
    }

    pub fn name(&self, var: usize) -> &str {
        &self.0.names[var]
    }

    pub fn names(&self) -> &[String] {
        &self.0.names
    }

    pub fn weight(&self, var: usize) -> u32 {
        self.0.weights[var]
    }

    pub fn weights(&self) -> &[u32] {
        &self.0.weights
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.0
            .index
            .get(name)
            .copied()
            .ok_or_else(|| AlgebraError::UnknownVariable(name.to_string()))
    }

    /// Whether both handles describe the same variables with the same weights.
    pub fn same_as(&self, other: &Ring) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.names == other.0.names && self.0.weights == other.0.weights)
    }

    pub(crate) fn check_same(&self, other: &Ring) -> Result<()> {
        if self.same_as(other) {
            Ok(())
        } else {
            Err(AlgebraError::RingMismatch)
        }
    }

    /// Ring header in the `name:weight` form used by generator files.
    pub fn header(&self) -> String {
        self.0
            .names
            .iter()
            .zip(&self.0.weights)
            .map(|(n, w)| format!("{n}:{w}"))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Inverse of [`Ring::header`].
    pub fn from_header(line: &str) -> Result<Self> {
        let mut spec = Vec::new();
        for item in line.split_whitespace() {
            let (name, weight) = item.rsplit_once(':').ok_or_else(|| AlgebraError::Parse {
                position: 0,
                message: format!("expected name:weight, found `{item}`"),
            })?;
            let weight: u32 = weight.parse().map_err(|_| AlgebraError::Parse {
                position: 0,
                message: format!("invalid weight in `{item}`"),
            })?;
            spec.push((name.to_string(), weight));
        }
        Ring::new(&spec)
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl Eq for Ring {}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring[{}]", self.header())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builds_with_stable_indices() {
        let r = Ring::new(&[("a", 1), ("b", 1)]).unwrap();
        assert_eq!(r.num_vars(), 2);
        assert_eq!(r.var_index("b").unwrap(), 1);
        assert_eq!(r.weights(), &[1, 1]);
    }

    #[test]
    fn rejects_duplicates_and_zero_weight() {
        assert_eq!(
            Ring::new(&[("a", 1), ("a", 2)]).unwrap_err(),
            AlgebraError::DuplicateVariable("a".into())
        );
        assert_eq!(
            Ring::new(&[("a", 0)]).unwrap_err(),
            AlgebraError::ZeroWeight("a".into())
        );
    }

    #[test]
    fn header_round_trip() {
        let r = Ring::new(&[("x[1,1]", 2), ("q[1,2]", 1)]).unwrap();
        let back = Ring::from_header(&r.header()).unwrap();
        assert_eq!(r, back);
    }
}
