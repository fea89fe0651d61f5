//! Phase space of `k` particles in `n` dimensions, its orthogonal invariants,
//! and the generator sets built from them.

mod generators;
mod samples;
mod verify;
mod workflow;

use std::fmt;
use std::str::FromStr;

pub use generators::{
    build_ideals, d_difference, determinant, gram_images, gram_polynomial, minor, minor_generators, moment_component,
    moment_components, poisson_bracket, q_generator, q_generators, so_determinant_generators, GeneratorKind,
    GeneratorSet, Minor,
};
pub use samples::{sample_shell_points, ShellFamily, ShellPoint};
pub use verify::{
    difference_rhs, localization_sides, verify_bracket_table, verify_difference_identity, verify_localization_identity,
    verify_norm_identity, IdentityReport,
};

pub use workflow::{EliminationOrder, EliminationProblem};

use crate::error::{AlgebraError, Result};
use crate::polynomial::Polynomial;
use crate::ring::Ring;

/// Symmetry group acting on each particle's coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Group {
    O,
    SO,
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Group::O => "O",
            Group::SO => "SO",
        })
    }
}

impl FromStr for Group {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "O" | "o" => Ok(Group::O),
            "SO" | "so" => Ok(Group::SO),
            _ => Err(AlgebraError::InvalidArgument(format!("unknown group `{s}`"))),
        }
    }
}

fn out_of_range(what: &str) -> AlgebraError {
    AlgebraError::IndexOutOfRange(what.to_string())
}

/// Positions `q[l,a]` and momenta `p[l,a]`, all of weight 1, ordered
/// `q[1,·], p[1,·], q[2,·], p[2,·], …` so that the `i`-th vector block is
/// `y_i` with `y_{2l-1} = q_l` and `y_{2l} = p_l`.
#[derive(Clone, Debug)]
pub struct PhaseRing {
    k: usize,
    n: usize,
    ring: Ring,
}

impl PhaseRing {
    pub fn new(k: usize, n: usize) -> Result<Self> {
        if k == 0 || n == 0 {
            return Err(AlgebraError::InvalidArgument("k and n must be positive".into()));
        }
        let ring = Ring::new(&Self::variables(k, n))?;
        Ok(PhaseRing { k, n, ring })
    }

    pub(crate) fn variables(k: usize, n: usize) -> Vec<(String, u32)> {
        let mut vars = Vec::with_capacity(2 * k * n);
        for l in 1..=k {
            for sym in ["q", "p"] {
                for a in 1..=n {
                    vars.push((format!("{sym}[{l},{a}]"), 1));
                }
            }
        }
        vars
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Ring index of coordinate `a` of `y_i` (both 1-based).
    pub fn y_index(&self, i: usize, a: usize) -> Result<usize> {
        if i == 0 || i > 2 * self.k || a == 0 || a > self.n {
            return Err(out_of_range(&format!("y[{i},{a}]")));
        }
        Ok((i - 1) * self.n + (a - 1))
    }

    pub fn q_index(&self, l: usize, a: usize) -> Result<usize> {
        if l == 0 {
            return Err(out_of_range(&format!("q[{l},{a}]")));
        }
        self.y_index(2 * l - 1, a)
    }

    pub fn p_index(&self, l: usize, a: usize) -> Result<usize> {
        if l == 0 {
            return Err(out_of_range(&format!("p[{l},{a}]")));
        }
        self.y_index(2 * l, a)
    }

    pub fn y(&self, i: usize, a: usize) -> Result<Polynomial> {
        Ok(Polynomial::var(&self.ring, self.y_index(i, a)?))
    }

    pub fn q(&self, l: usize, a: usize) -> Result<Polynomial> {
        Ok(Polynomial::var(&self.ring, self.q_index(l, a)?))
    }

    pub fn p(&self, l: usize, a: usize) -> Result<Polynomial> {
        Ok(Polynomial::var(&self.ring, self.p_index(l, a)?))
    }

    /// Variable indices in the order `q[1,1], p[1,1], q[1,2], p[1,2], …,
    /// q[k,n], p[k,n]`, which makes elimination fast.
    pub fn interleaved_ranking(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(2 * self.k * self.n);
        for l in 1..=self.k {
            for a in 1..=self.n {
                out.push(self.q_index(l, a).expect("in range"));
                out.push(self.p_index(l, a).expect("in range"));
            }
        }
        out
    }
}

/// The invariants `x[i,j]` (`i ≤ j ≤ 2k`, weight 2) and, for the special
/// orthogonal group, the determinant invariants `det[i_1,…,i_n]` (weight `n`).
#[derive(Clone, Debug)]
pub struct GramRing {
    k: usize,
    det_size: Option<usize>,
    subsets: Vec<Vec<usize>>,
    ring: Ring,
}

/// Increasing `size`-subsets of `1..=m` in lexicographic order.
pub fn subsets(m: usize, size: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, m: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for v in start..=m {
            if m - v + 1 < size - cur.len() {
                break;
            }
            cur.push(v);
            go(v + 1, m, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if size <= m {
        go(1, m, size, &mut Vec::with_capacity(size), &mut out);
    }
    out
}

pub(crate) fn index_list(idx: &[usize]) -> String {
    idx.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
}

impl GramRing {
    pub fn new(k: usize) -> Result<Self> {
        Self::build(k, None)
    }

    /// Adds one variable per `n`-subset of `1..=2k`.
    pub fn with_determinants(k: usize, n: usize) -> Result<Self> {
        if n == 0 || n > 2 * k {
            return Err(AlgebraError::InvalidArgument(format!(
                "no {n}x{n} determinants among {} vectors",
                2 * k
            )));
        }
        Self::build(k, Some(n))
    }

    fn build(k: usize, det_size: Option<usize>) -> Result<Self> {
        if k == 0 {
            return Err(AlgebraError::InvalidArgument("k must be positive".into()));
        }
        let subsets = det_size.map(|n| subsets(2 * k, n)).unwrap_or_default();
        let ring = Ring::new(&Self::variables(k, det_size))?;
        Ok(GramRing {
            k,
            det_size,
            subsets,
            ring,
        })
    }

    pub(crate) fn variables(k: usize, det_size: Option<usize>) -> Vec<(String, u32)> {
        let mut vars = Vec::new();
        for i in 1..=2 * k {
            for j in i..=2 * k {
                vars.push((format!("x[{i},{j}]"), 2));
            }
        }
        if let Some(n) = det_size {
            for s in subsets(2 * k, n) {
                vars.push((format!("det[{}]", index_list(&s)), n as u32));
            }
        }
        vars
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Side of the Gram matrix, `2k`.
    pub fn dim(&self) -> usize {
        2 * self.k
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn num_gram_vars(&self) -> usize {
        self.k * (2 * self.k + 1)
    }

    pub fn determinant_size(&self) -> Option<usize> {
        self.det_size
    }

    pub fn determinant_subsets(&self) -> &[Vec<usize>] {
        &self.subsets
    }

    /// Ring index of `x[i,j]`, folding `(j,i)` onto `(i,j)`.
    pub fn x_index(&self, i: usize, j: usize) -> Result<usize> {
        let m = self.dim();
        if i == 0 || j == 0 || i > m || j > m {
            return Err(out_of_range(&format!("x[{i},{j}]")));
        }
        let (i, j) = (i.min(j), i.max(j));
        // Rows 1..i-1 hold m, m-1, …, m-i+2 entries.
        let before: usize = (1..i).map(|r| m - r + 1).sum();
        Ok(before + (j - i))
    }

    pub fn x(&self, i: usize, j: usize) -> Result<Polynomial> {
        Ok(Polynomial::var(&self.ring, self.x_index(i, j)?))
    }

    /// Ring index of the determinant variable for an increasing index set.
    pub fn det_index(&self, set: &[usize]) -> Result<usize> {
        self.subsets
            .iter()
            .position(|s| s == set)
            .map(|p| self.num_gram_vars() + p)
            .ok_or_else(|| out_of_range(&format!("det[{}]", index_list(set))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phase_ring_layout() {
        let pr = PhaseRing::new(2, 3).unwrap();
        assert_eq!(pr.ring().num_vars(), 12);
        assert_eq!(pr.ring().name(pr.q_index(2, 3).unwrap()), "q[2,3]");
        assert_eq!(pr.ring().name(pr.y_index(4, 1).unwrap()), "p[2,1]");
        assert_eq!(pr.y_index(3, 2).unwrap(), pr.q_index(2, 2).unwrap());
        assert!(pr.y_index(5, 1).is_err());
        let rank: Vec<&str> = pr.interleaved_ranking()[..4]
            .iter()
            .map(|&v| pr.ring().name(v))
            .collect();
        assert_eq!(rank, ["q[1,1]", "p[1,1]", "q[1,2]", "p[1,2]"]);
    }

    #[test]
    fn gram_ring_layout() {
        let gr = GramRing::new(2).unwrap();
        assert_eq!(gr.ring().num_vars(), 10);
        for i in 1..=4 {
            for j in 1..=4 {
                let idx = gr.x_index(i, j).unwrap();
                assert_eq!(gr.ring().name(idx), format!("x[{},{}]", i.min(j), i.max(j)));
            }
        }
        assert!(gr.x_index(0, 1).is_err());
        let so = GramRing::with_determinants(2, 2).unwrap();
        assert_eq!(so.ring().num_vars(), 16);
        assert_eq!(so.ring().name(so.det_index(&[2, 4]).unwrap()), "det[2,4]");
        assert_eq!(so.ring().weight(so.det_index(&[1, 2]).unwrap()), 2);
        assert!(GramRing::with_determinants(1, 3).is_err());
    }

    #[test]
    fn subsets_enumerate_in_order() {
        assert_eq!(subsets(4, 2).len(), 6);
        assert_eq!(subsets(3, 2), vec![vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(subsets(2, 3), Vec::<Vec<usize>>::new());
        assert_eq!(subsets(3, 0), vec![Vec::<usize>::new()]);
    }
}
