use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::PhaseRing;
use crate::error::{AlgebraError, Result};
use crate::rational::Rational;

/// Families of exact sample points in phase space.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShellFamily {
    /// `q_l = c_l·e_l`, `p_l = d_l·e_l` for `l ≤ rank`, all other vectors zero.
    Basis { rank: usize },
    /// Random positions with momenta parallel to them.
    Proportional { count: usize },
    /// Random points with small integer coordinates and nonzero moment.
    OffShell { count: usize },
}

/// A point with its known shell membership and the rank of its Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShellPoint {
    pub assignment: BTreeMap<String, Rational>,
    pub on_shell: bool,
    pub rank: usize,
}

fn nonzero(rng: &mut ChaCha8Rng) -> i64 {
    loop {
        let v = rng.gen_range(-3..=3);
        if v != 0 {
            return v;
        }
    }
}

/// Rank of a rational matrix by exact elimination.
pub(crate) fn rank(mut m: Vec<Vec<Rational>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, piv);
        let inv = m[r][c].recip().expect("pivot is nonzero");
        for i in r + 1..rows {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] * &inv;
            for j in c..cols {
                let t = &f * &m[r][j];
                m[i][j] -= &t;
            }
        }
        r += 1;
    }
    r
}

/// Draws sample points of `family` reproducibly from `seed`.
pub fn sample_shell_points(k: usize, n: usize, family: ShellFamily, seed: u64) -> Result<Vec<ShellPoint>> {
    let pr = PhaseRing::new(k, n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // vectors[i][a] is coordinate a of y_{i+1}
    let mut draws: Vec<Vec<Vec<i64>>> = Vec::new();
    match family {
        ShellFamily::Basis { rank } => {
            if rank > k.min(n) {
                return Err(AlgebraError::InvalidArgument(format!(
                    "rank {rank} exceeds min(k, n) = {}",
                    k.min(n)
                )));
            }
            let mut v = vec![vec![0; n]; 2 * k];
            for l in 0..rank {
                v[2 * l][l] = nonzero(&mut rng);
                v[2 * l + 1][l] = nonzero(&mut rng);
            }
            draws.push(v);
        }
        ShellFamily::Proportional { count } => {
            for _ in 0..count {
                let mut v = vec![vec![0; n]; 2 * k];
                for l in 0..k {
                    let c = rng.gen_range(-3..=3);
                    for a in 0..n {
                        v[2 * l][a] = rng.gen_range(-3..=3);
                        v[2 * l + 1][a] = c * v[2 * l][a];
                    }
                }
                draws.push(v);
            }
        }
        ShellFamily::OffShell { count } => {
            while draws.len() < count {
                let v: Vec<Vec<i64>> = (0..2 * k)
                    .map(|_| (0..n).map(|_| rng.gen_range(-3..=3)).collect())
                    .collect();
                if !moment_vanishes(&v, k, n) {
                    draws.push(v);
                }
            }
        }
    }
    Ok(draws
        .into_iter()
        .map(|v| {
            let mut assignment = BTreeMap::new();
            for (i, col) in v.iter().enumerate() {
                for (a, &c) in col.iter().enumerate() {
                    let idx = pr.y_index(i + 1, a + 1).expect("in range");
                    assignment.insert(pr.ring().name(idx).to_string(), Rational::from(c));
                }
            }
            let gram: Vec<Vec<Rational>> = v
                .iter()
                .map(|a| {
                    v.iter()
                        .map(|b| Rational::from(a.iter().zip(b).map(|(x, y)| x * y).sum::<i64>()))
                        .collect()
                })
                .collect();
            ShellPoint {
                assignment,
                on_shell: moment_vanishes(&v, k, n),
                rank: rank(gram),
            }
        })
        .collect())
}

fn moment_vanishes(v: &[Vec<i64>], k: usize, n: usize) -> bool {
    (0..n).all(|a| {
        (a + 1..n).all(|b| {
            (0..k)
                .map(|l| v[2 * l][a] * v[2 * l + 1][b] - v[2 * l][b] * v[2 * l + 1][a])
                .sum::<i64>()
                == 0
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{moment_component, PhaseRing};

    #[test]
    fn basis_points_are_on_shell_with_given_rank() {
        let pts = sample_shell_points(2, 3, ShellFamily::Basis { rank: 2 }, 1).unwrap();
        assert!(pts[0].on_shell);
        assert_eq!(pts[0].rank, 2);
        assert!(sample_shell_points(2, 1, ShellFamily::Basis { rank: 2 }, 1).is_err());
    }

    #[test]
    fn families_have_expected_membership() {
        let pr = PhaseRing::new(1, 2).unwrap();
        let j = moment_component(&pr, 1, 2).unwrap();
        for p in sample_shell_points(1, 2, ShellFamily::Proportional { count: 10 }, 3).unwrap() {
            assert!(p.on_shell);
            assert!(j.evaluate(&p.assignment).unwrap().is_zero());
        }
        for p in sample_shell_points(1, 2, ShellFamily::OffShell { count: 10 }, 3).unwrap() {
            assert!(!p.on_shell);
            assert!(!j.evaluate(&p.assignment).unwrap().is_zero());
        }
    }

    #[test]
    fn unit_point_example() {
        let pr = PhaseRing::new(1, 2).unwrap();
        let j = moment_component(&pr, 1, 2).unwrap();
        let at: BTreeMap<String, Rational> = [("q[1,1]", 1), ("q[1,2]", 0), ("p[1,1]", 0), ("p[1,2]", 1)]
            .iter()
            .map(|(s, v)| (s.to_string(), Rational::from(*v)))
            .collect();
        assert_eq!(j.evaluate(&at).unwrap(), Rational::one());
    }

    #[test]
    fn rank_of_small_matrices() {
        let m = |rows: &[&[i64]]| {
            rows.iter()
                .map(|r| r.iter().map(|&v| Rational::from(v)).collect())
                .collect()
        };
        assert_eq!(rank(m(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(m(&[&[0, 1], &[1, 0]])), 2);
        assert_eq!(rank(m(&[&[0, 0], &[0, 0]])), 0);
    }
}
