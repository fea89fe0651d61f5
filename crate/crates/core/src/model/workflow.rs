use std::fmt;
use std::str::FromStr;

use super::generators::{gram_images, moment_components};
use super::{GramRing, Group, PhaseRing};
use crate::error::{AlgebraError, Result};
use crate::order::MonomialOrder;
use crate::polynomial::Polynomial;
use crate::ring::Ring;

/// Named monomial orders for the elimination ring. Each makes any monomial
/// with a phase variable exceed all monomials in the invariants.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EliminationOrder {
    /// Pure lex in ring order.
    Lex,
    /// Grevlex on the phase variables, then graded lex on the invariants.
    Grevlex,
    /// Lex on the phase variables, then graded lex on the invariants.
    Block,
    /// Lex on the phase variables interleaved as `q[1,1], p[1,1], q[1,2], …`,
    /// then graded lex on the invariants.
    Interleaved,
}

impl EliminationOrder {
    pub const ALL: [EliminationOrder; 4] = [
        EliminationOrder::Lex,
        EliminationOrder::Grevlex,
        EliminationOrder::Block,
        EliminationOrder::Interleaved,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            EliminationOrder::Lex => "lex",
            EliminationOrder::Grevlex => "grevlex",
            EliminationOrder::Block => "block",
            EliminationOrder::Interleaved => "paper",
        }
    }
}

impl fmt::Display for EliminationOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EliminationOrder {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self> {
        EliminationOrder::ALL
            .into_iter()
            .find(|o| o.name() == s)
            .ok_or_else(|| AlgebraError::InvalidArgument(format!("unknown order `{s}`")))
    }
}

/// The ring `R[q, p, x, det]` with the ideal generated by the moment map and
/// `x[i,j] − <y_i, y_j>` (and `det[S] − det(y_S)`), whose intersection with
/// the invariant variables is the relation ideal of the quotient.
#[derive(Clone, Debug)]
pub struct EliminationProblem {
    pub k: usize,
    pub n: usize,
    pub group: Group,
    pub phase: PhaseRing,
    pub gram: GramRing,
    pub ring: Ring,
    pub generators: Vec<Polynomial>,
}

impl EliminationProblem {
    pub fn new(k: usize, n: usize, group: Group) -> Result<Self> {
        let phase = PhaseRing::new(k, n)?;
        let gram = match group {
            Group::O => GramRing::new(k)?,
            Group::SO => {
                if n == 1 {
                    return Err(AlgebraError::InvalidArgument(
                        "the special orthogonal group in dimension 1 is trivial".into(),
                    ));
                }
                GramRing::with_determinants(k, n)?
            }
        };
        let mut vars = PhaseRing::variables(k, n);
        vars.extend(GramRing::variables(k, gram.determinant_size()));
        let ring = Ring::new(&vars)?;

        let mut generators = Vec::new();
        for j in moment_components(&phase) {
            generators.push(j.embed(&ring)?);
        }
        for (v, image) in gram_images(&phase, &gram)?.into_iter().enumerate() {
            let var = Polynomial::var(&ring, phase.ring().num_vars() + v);
            generators.push(&var - &image.embed(&ring)?);
        }
        Ok(EliminationProblem {
            k,
            n,
            group,
            phase,
            gram,
            ring,
            generators,
        })
    }

    /// Indices of the phase variables, which are eliminated.
    pub fn eliminated(&self) -> Vec<usize> {
        (0..self.phase.ring().num_vars()).collect()
    }

    pub fn order(&self, choice: EliminationOrder) -> MonomialOrder {
        let front = self.eliminated();
        match choice {
            EliminationOrder::Lex => MonomialOrder::Lex,
            EliminationOrder::Grevlex => {
                MonomialOrder::block(front, MonomialOrder::GradedRevLex, MonomialOrder::GradedLex)
            }
            EliminationOrder::Block => MonomialOrder::block(front, MonomialOrder::Lex, MonomialOrder::GradedLex),
            EliminationOrder::Interleaved => MonomialOrder::block(
                front,
                MonomialOrder::priority(self.phase.interleaved_ranking(), MonomialOrder::Lex),
                MonomialOrder::GradedLex,
            ),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn problem_shape() {
        let p = EliminationProblem::new(2, 2, Group::O).unwrap();
        assert_eq!(p.ring.num_vars(), 8 + 10);
        assert_eq!(p.generators.len(), 1 + 10);
        let so = EliminationProblem::new(2, 2, Group::SO).unwrap();
        assert_eq!(so.ring.num_vars(), 8 + 10 + 6);
        assert!(EliminationProblem::new(2, 1, Group::SO).is_err());
        for o in EliminationOrder::ALL {
            assert_eq!(o.name().parse::<EliminationOrder>().unwrap(), o);
            assert!(p.order(o).compile(&p.ring).is_ok());
        }
    }
}
