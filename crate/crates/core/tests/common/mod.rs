//! Random instances and brute-force oracles shared by the property tests.
#![allow(dead_code)]

use angmom::model::{poisson_bracket, PhaseRing};
use angmom::{Monomial, Polynomial, Rational, Ring};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn ring(vars: usize) -> Ring {
    let names: Vec<(String, u32)> = (0..vars).map(|i| (format!("v{i}"), 1)).collect();
    Ring::new(&names).unwrap()
}

pub fn random_monomial<R: Rng>(rng: &mut R, vars: usize, max_degree: u32) -> Monomial {
    let degree = rng.gen_range(0..=max_degree);
    monomial_of_degree(rng, vars, degree)
}

pub fn monomial_of_degree<R: Rng>(rng: &mut R, vars: usize, degree: u32) -> Monomial {
    let mut exps = vec![0u32; vars];
    for _ in 0..degree {
        exps[rng.gen_range(0..vars)] += 1;
    }
    Monomial::from_exponents(exps)
}

fn coefficient<R: Rng>(rng: &mut R) -> Rational {
    let num = rng.gen_range(-9..=9);
    let den = if rng.gen_bool(0.2) { rng.gen_range(1..=4) } else { 1 };
    Rational::new(num, den).unwrap()
}

pub fn random_polynomial<R: Rng>(rng: &mut R, ring: &Ring, terms: usize, max_degree: u32) -> Polynomial {
    let vars = ring.num_vars();
    Polynomial::from_terms(
        ring,
        (0..terms).map(|_| (random_monomial(rng, vars, max_degree), coefficient(rng))),
    )
}

pub fn random_nonzero<R: Rng>(rng: &mut R, ring: &Ring, terms: usize, max_degree: u32) -> Polynomial {
    loop {
        let p = random_polynomial(rng, ring, terms, max_degree);
        if !p.is_zero() {
            return p;
        }
    }
}

/// Monomial generators of degree 1..=3.
pub fn random_monomial_ideal<R: Rng>(rng: &mut R, ring: &Ring, gens: usize) -> Vec<Polynomial> {
    let vars = ring.num_vars();
    (0..gens)
        .map(|_| {
            let d = rng.gen_range(1..=3);
            Polynomial::term(ring, monomial_of_degree(rng, vars, d), Rational::one())
        })
        .collect()
}

/// Homogeneous binomials `m1 - c·m2` of degree 2 or 3.
pub fn random_binomial_ideal<R: Rng>(rng: &mut R, ring: &Ring, gens: usize) -> Vec<Polynomial> {
    let vars = ring.num_vars();
    let mut out = Vec::new();
    while out.len() < gens {
        let d = rng.gen_range(2..=3);
        let a = monomial_of_degree(rng, vars, d);
        let b = monomial_of_degree(rng, vars, d);
        let c = Rational::from_integer(*[1, -1, 2].choose(rng).unwrap());
        let p = &Polynomial::term(ring, a, Rational::one()) - &Polynomial::term(ring, b, c);
        if !p.is_zero() {
            out.push(p);
        }
    }
    out
}

pub fn monomials_of_degree(vars: usize, degree: u32) -> Vec<Monomial> {
    fn go(var: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if var + 1 == cur.len() {
            cur[var] = left;
            out.push(Monomial::from_exponents(cur.clone()));
            return;
        }
        for e in 0..=left {
            cur[var] = e;
            go(var + 1, left - e, cur, out);
        }
    }
    let mut out = Vec::new();
    go(0, degree, &mut vec![0; vars], &mut out);
    out
}

/// Rank of a list of vectors, each a sparse map `column -> value`.
pub fn rank(rows: Vec<Vec<(usize, Rational)>>, columns: usize) -> usize {
    let mut dense: Vec<Vec<Rational>> = rows
        .into_iter()
        .map(|r| {
            let mut v = vec![Rational::zero(); columns];
            for (c, x) in r {
                v[c] = &v[c] + &x;
            }
            v
        })
        .collect();
    let mut rank = 0;
    for col in 0..columns {
        let Some(pivot) = (rank..dense.len()).find(|&r| !dense[r][col].is_zero()) else {
            continue;
        };
        dense.swap(rank, pivot);
        let inv = dense[rank][col].recip().unwrap();
        for r in 0..dense.len() {
            if r != rank && !dense[r][col].is_zero() {
                let factor = &dense[r][col] * &inv;
                for c in col..columns {
                    let delta = &factor * &dense[rank][c];
                    dense[r][c] = &dense[r][c] - &delta;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `dim (R/I)_d` for a homogeneous ideal in a standard-graded ring, as the
/// number of monomials of degree `d` minus the rank of all `m·g` of degree `d`.
pub fn hilbert_function(ring: &Ring, gens: &[Polynomial], degree: u32) -> usize {
    let vars = ring.num_vars();
    let basis = monomials_of_degree(vars, degree);
    let column = |m: &Monomial| basis.iter().position(|b| b == m).unwrap();
    let mut rows = Vec::new();
    for g in gens {
        let d = g.homogeneous_degree().unwrap() as u32;
        if d > degree {
            continue;
        }
        for m in monomials_of_degree(vars, degree - d) {
            let p = g.mul_monomial(&m, &Rational::one());
            rows.push(p.terms().map(|(t, c)| (column(t), c.clone())).collect());
        }
    }
    basis.len() - rank(rows, basis.len())
}

pub fn phase_polynomial<R: Rng>(rng: &mut R, pr: &PhaseRing) -> Polynomial {
    random_polynomial(rng, pr.ring(), 4, 3)
}

/// `{f,{g,h}} + {g,{h,f}} + {h,{f,g}}`.
pub fn jacobiator(f: &Polynomial, g: &Polynomial, h: &Polynomial, pr: &PhaseRing) -> Polynomial {
    let b = |a: &Polynomial, c: &Polynomial| poisson_bracket(a, c, pr).unwrap();
    let t1 = b(f, &b(g, h));
    let t2 = b(g, &b(h, f));
    let t3 = b(h, &b(f, g));
    &(&t1 + &t2) + &t3
}
