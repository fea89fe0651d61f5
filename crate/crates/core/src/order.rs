//! Monomial orders.
//!
//! Every supported order is a matrix order: a monomial is mapped to the vector
//! of dot products of its exponent vector with the rows of an integer matrix,
//! and monomials are compared by comparing those vectors lexicographically.
//! The matrices produced here are square and of full rank, so the orders are
//! total, and every row's first nonzero entry is positive, so `1` is minimal.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{AlgebraError, Result};
use crate::monomial::Monomial;
use crate::ring::Ring;

/// A description of a monomial order, independent of any particular ring.
///
/// Graded orders use the ring's weighted degree. Variable indices refer to
/// positions in the ring the order is compiled against.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex,
    GradedLex,
    GradedRevLex,
    /// Applies `base` after reordering the variables by `ranking`, which
    /// lists variable indices from most to least significant.
    Priority {
        ranking: Vec<usize>,
        base: Box<MonomialOrder>,
    },
    /// Any monomial involving a variable of `front` exceeds every monomial
    /// free of them. Ties on the front part are broken by `rest_order` on the
    /// remaining variables.
    BlockElimination {
        front: Vec<usize>,
        front_order: Box<MonomialOrder>,
        rest_order: Box<MonomialOrder>,
    },
}

impl MonomialOrder {
    pub fn priority(ranking: Vec<usize>, base: MonomialOrder) -> Self {
        MonomialOrder::Priority {
            ranking,
            base: Box::new(base),
        }
    }

    pub fn block(front: Vec<usize>, front_order: MonomialOrder, rest_order: MonomialOrder) -> Self {
        MonomialOrder::BlockElimination {
            front,
            front_order: Box::new(front_order),
            rest_order: Box::new(rest_order),
        }
    }

    pub fn compile(&self, ring: &Ring) -> Result<CompiledOrder> {
        let n = ring.num_vars();
        let vars: Vec<usize> = (0..n).collect();
        let mut rows = Vec::with_capacity(n);
        self.rows_for(&vars, ring, &mut rows)?;
        debug_assert_eq!(rows.len(), n);
        Ok(CompiledOrder { rows, num_vars: n })
    }

    /// Appends one row per variable in `vars`, ranking the listed variables
    /// (most significant first) under this order.
    fn rows_for(&self, vars: &[usize], ring: &Ring, rows: &mut Vec<Vec<(usize, i64)>>) -> Result<()> {
        if vars.is_empty() {
            return Ok(());
        }
        match self {
            MonomialOrder::Lex => {
                rows.extend(vars.iter().map(|&v| vec![(v, 1)]));
            }
            MonomialOrder::GradedLex => {
                rows.push(vars.iter().map(|&v| (v, ring.weight(v) as i64)).collect());
                rows.extend(vars[..vars.len() - 1].iter().map(|&v| vec![(v, 1)]));
            }
            MonomialOrder::GradedRevLex => {
                rows.push(vars.iter().map(|&v| (v, ring.weight(v) as i64)).collect());
                rows.extend(vars[1..].iter().rev().map(|&v| vec![(v, -1)]));
            }
            MonomialOrder::Priority { ranking, base } => {
                let mut sorted_rank = ranking.clone();
                sorted_rank.sort_unstable();
                let mut sorted_vars = vars.to_vec();
                sorted_vars.sort_unstable();
                if sorted_rank != sorted_vars {
                    return Err(AlgebraError::InvalidArgument(
                        "priority ranking must be a permutation of the ordered variables".into(),
                    ));
                }
                base.rows_for(ranking, ring, rows)?;
            }
            MonomialOrder::BlockElimination {
                front,
                front_order,
                rest_order,
            } => {
                for &v in front {
                    if v >= ring.num_vars() {
                        return Err(AlgebraError::IndexOutOfRange(format!(
                            "elimination variable {v} in a ring of {} variables",
                            ring.num_vars()
                        )));
                    }
                }
                let (f, r): (Vec<usize>, Vec<usize>) = vars.iter().partition(|v| front.contains(v));
                front_order.rows_for(&f, ring, rows)?;
                rest_order.rows_for(&r, ring, rows)?;
            }
        }
        Ok(())
    }

    /// The order induced on the subring spanned by `kept` (ascending ring
    /// indices), renumbered to positions in `kept`.
    pub fn restrict(&self, kept: &[usize]) -> MonomialOrder {
        let renumber =
            |vs: &[usize]| -> Vec<usize> { vs.iter().filter_map(|v| kept.iter().position(|k| k == v)).collect() };
        match self {
            MonomialOrder::Lex | MonomialOrder::GradedLex | MonomialOrder::GradedRevLex => self.clone(),
            MonomialOrder::Priority { ranking, base } => {
                MonomialOrder::priority(renumber(ranking), base.restrict(kept))
            }
            MonomialOrder::BlockElimination {
                front,
                front_order,
                rest_order,
            } => {
                let f = renumber(front);
                if f.is_empty() {
                    rest_order.restrict(kept)
                } else {
                    MonomialOrder::block(f, front_order.restrict(kept), rest_order.restrict(kept))
                }
            }
        }
    }

    /// Short stable text used for display and cache fingerprints.
    pub fn describe(&self) -> String {
        match self {
            MonomialOrder::Lex => "lex".into(),
            MonomialOrder::GradedLex => "grlex".into(),
            MonomialOrder::GradedRevLex => "grevlex".into(),
            MonomialOrder::Priority { ranking, base } => format!(
                "priority[{}]({})",
                ranking.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","),
                base.describe()
            ),
            MonomialOrder::BlockElimination {
                front,
                front_order,
                rest_order,
            } => format!(
                "block[{}]({};{})",
                front.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","),
                front_order.describe(),
                rest_order.describe()
            ),
        }
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

/// A monomial order bound to a ring, as a sparse weight matrix.
#[derive(Clone, Debug)]
pub struct CompiledOrder {
    rows: Vec<Vec<(usize, i64)>>,
    num_vars: usize,
}

impl CompiledOrder {
    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn rows(&self) -> &[Vec<(usize, i64)>] {
        &self.rows
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (a, b) = (a.exponents(), b.exponents());
        for row in &self.rows {
            let d: i64 = row.iter().map(|&(v, c)| c * (a[v] as i64 - b[v] as i64)).sum();
            match d.cmp(&0) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }

    /// The image of an exponent vector under the order matrix.
    pub fn key(&self, exps: &[u32]) -> Vec<i64> {
        self.rows
            .iter()
            .map(|row| row.iter().map(|&(v, c)| c * exps[v] as i64).sum())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring3() -> Ring {
        Ring::new(&[("a", 1), ("b", 1), ("c", 1)]).unwrap()
    }

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e.to_vec())
    }

    #[test]
    fn lex_grlex_grevlex_textbook_cases() {
        let r = ring3();
        let lex = MonomialOrder::Lex.compile(&r).unwrap();
        let grlex = MonomialOrder::GradedLex.compile(&r).unwrap();
        let grevlex = MonomialOrder::GradedRevLex.compile(&r).unwrap();
        // a > b^5 in lex, not in the graded orders
        assert_eq!(lex.cmp(&m(&[1, 0, 0]), &m(&[0, 5, 0])), Ordering::Greater);
        assert_eq!(grlex.cmp(&m(&[1, 0, 0]), &m(&[0, 5, 0])), Ordering::Less);
        // a*c^2 vs b^3: grlex says a c^2 > b^3, grevlex says b^3 > a c^2
        assert_eq!(grlex.cmp(&m(&[1, 0, 2]), &m(&[0, 3, 0])), Ordering::Greater);
        assert_eq!(grevlex.cmp(&m(&[1, 0, 2]), &m(&[0, 3, 0])), Ordering::Less);
    }

    #[test]
    fn weighted_degree_leads_graded_orders() {
        let r = Ring::new(&[("a", 1), ("y", 2)]).unwrap();
        let grevlex = MonomialOrder::GradedRevLex.compile(&r).unwrap();
        assert_eq!(grevlex.cmp(&m(&[0, 1]), &m(&[1, 0])), Ordering::Greater);
        assert_eq!(grevlex.cmp(&m(&[2, 0]), &m(&[0, 1])), Ordering::Greater);
    }

    #[test]
    fn priority_reorders_variables() {
        let r = ring3();
        let o = MonomialOrder::priority(vec![2, 0, 1], MonomialOrder::Lex)
            .compile(&r)
            .unwrap();
        assert_eq!(o.cmp(&m(&[0, 0, 1]), &m(&[5, 5, 0])), Ordering::Greater);
        assert!(MonomialOrder::priority(vec![0, 1], MonomialOrder::Lex)
            .compile(&r)
            .is_err());
    }

    #[test]
    fn block_elimination_property() {
        let r = ring3();
        let o = MonomialOrder::block(vec![1], MonomialOrder::GradedRevLex, MonomialOrder::GradedRevLex)
            .compile(&r)
            .unwrap();
        assert_eq!(o.cmp(&m(&[0, 1, 0]), &m(&[9, 0, 9])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[1, 0, 0]), &m(&[0, 0, 1])), Ordering::Greater);
    }
}
