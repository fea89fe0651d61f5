//! Hilbert series of weighted-graded quotient rings.

use std::collections::HashMap;
use std::fmt;

use crate::error::{AlgebraError, Result};
use crate::groebner::IdealBasis;
use crate::monomial::Monomial;
use crate::order::MonomialOrder;
use crate::rational::Rational;
use crate::ring::Ring;

/// `N(t) / ∏ (1 − t^w)` with integer `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertSeries {
    /// Coefficients of `N`, lowest degree first, without trailing zeros.
    pub numerator: Vec<i64>,
    /// One weight per denominator factor, sorted ascending.
    pub denominator_weights: Vec<u32>,
    /// Whether no factor `1 − t^w` divides the numerator any more.
    pub reduced: bool,
}

/// Result of testing `H(1/t) = (−1)^d t^{−a} H(t)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GorensteinCheck {
    pub satisfied: bool,
    /// Satisfied and `d = −a`.
    pub graded: bool,
}

/// Flat description of a series for reports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesRecord {
    pub numerator: Vec<i64>,
    pub denominator_weights: Vec<u32>,
    pub dimension: i64,
    pub a_invariant: i64,
    pub reduced: bool,
    pub gorenstein: bool,
    pub graded_gorenstein: bool,
    pub rendered: String,
}

fn trim<T: PartialEq + Default>(v: &mut Vec<T>) {
    while v.last().is_some_and(|c| *c == T::default()) {
        v.pop();
    }
}

/// `p / (1 − t^w)` if it is a polynomial.
fn div_one_minus(p: &[i128], w: usize) -> Option<Vec<i128>> {
    if p.is_empty() {
        return Some(Vec::new());
    }
    if p.len() <= w {
        return None;
    }
    let mut q = vec![0i128; p.len() - w];
    for i in 0..q.len() {
        q[i] = p[i] + if i >= w { q[i - w] } else { 0 };
    }
    // The top `w` coefficients of q·(1 − t^w) must match.
    (q.len()..p.len())
        .all(|i| p[i] == if i >= w { -q[i - w] } else { 0 })
        .then_some(q)
}

fn mul_one_minus(p: &[i128], w: usize) -> Vec<i128> {
    let mut out = vec![0i128; p.len() + w];
    for (i, &c) in p.iter().enumerate() {
        out[i] += c;
        out[i + w] -= c;
    }
    out
}

fn to_i64(v: &[i128]) -> Result<Vec<i64>> {
    v.iter()
        .map(|&c| i64::try_from(c).map_err(|_| AlgebraError::Overflow("Hilbert numerator coefficient".into())))
        .collect()
}

fn widen(v: &[i64]) -> Vec<i128> {
    v.iter().map(|&c| c as i128).collect()
}

/// Multiplicity of `t = 1` as a root; `None` for the zero polynomial.
fn order_at_one(p: &[i128]) -> Option<usize> {
    if p.iter().all(|&c| c == 0) {
        return None;
    }
    let mut p = p.to_vec();
    let mut r = 0;
    while let Some(q) = div_one_minus(&p, 1) {
        p = q;
        r += 1;
    }
    Some(r)
}

impl HilbertSeries {
    pub fn new(numerator: Vec<i64>, mut denominator_weights: Vec<u32>) -> Self {
        let mut numerator = numerator;
        trim(&mut numerator);
        denominator_weights.sort_unstable();
        HilbertSeries {
            numerator,
            denominator_weights,
            reduced: false,
        }
    }

    /// Cancels every denominator factor that divides the numerator.
    pub fn reduce(&self) -> HilbertSeries {
        let mut num = widen(&self.numerator);
        let mut den = Vec::with_capacity(self.denominator_weights.len());
        // Largest factors first: (1 − t^2) can only be cancelled whole.
        for &w in self.denominator_weights.iter().rev() {
            match div_one_minus(&num, w as usize) {
                Some(q) if !num.is_empty() => num = q,
                _ => den.push(w),
            }
        }
        den.sort_unstable();
        let mut numerator: Vec<i64> = num.into_iter().map(|c| c as i64).collect();
        trim(&mut numerator);
        HilbertSeries {
            numerator,
            denominator_weights: den,
            reduced: true,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_empty()
    }

    /// Pole order at `t = 1`.
    pub fn dimension(&self) -> Result<i64> {
        let r = order_at_one(&widen(&self.numerator))
            .ok_or_else(|| AlgebraError::InvalidArgument("the zero series has no dimension".into()))?;
        Ok(self.denominator_weights.len() as i64 - r as i64)
    }

    /// Degree of the rational function, `deg N − Σ w`.
    pub fn a_invariant(&self) -> Result<i64> {
        if self.is_zero() {
            return Err(AlgebraError::InvalidArgument("the zero series has no degree".into()));
        }
        let total: i64 = self.denominator_weights.iter().map(|&w| w as i64).sum();
        Ok(self.numerator.len() as i64 - 1 - total)
    }

    /// Coefficients of `t^0, …, t^max_degree` in the power series expansion.
    pub fn coefficients(&self, max_degree: usize) -> Vec<i128> {
        let mut c = vec![0i128; max_degree + 1];
        for (i, &v) in self.numerator.iter().enumerate().take(max_degree + 1) {
            c[i] = v as i128;
        }
        for &w in &self.denominator_weights {
            let w = w as usize;
            for i in w..=max_degree {
                c[i] += c[i - w];
            }
        }
        c
    }

    /// `N(t)` and the denominator in the style `(1 + 4t^2 + t^4) / (1 - t^2)^6`.
    pub fn render(&self) -> String {
        let num = render_poly(&self.numerator);
        let nterms = self.numerator.iter().filter(|&&c| c != 0).count();
        let num = if nterms > 1 && !self.denominator_weights.is_empty() {
            format!("({num})")
        } else {
            num
        };
        if self.denominator_weights.is_empty() {
            return num;
        }
        let mut den = String::new();
        let mut i = 0;
        while i < self.denominator_weights.len() {
            let w = self.denominator_weights[i];
            let mult = self.denominator_weights[i..].iter().take_while(|&&v| v == w).count();
            den.push_str(&if w == 1 {
                "(1 - t)".to_string()
            } else {
                format!("(1 - t^{w})")
            });
            if mult > 1 {
                den.push_str(&format!("^{mult}"));
            }
            i += mult;
        }
        format!("{num} / {den}")
    }

    pub fn record(&self) -> Result<SeriesRecord> {
        let (dimension, a_invariant) = dimension_and_a_invariant(self)?;
        let check = gorenstein_check(self)?;
        Ok(SeriesRecord {
            numerator: self.numerator.clone(),
            denominator_weights: self.denominator_weights.clone(),
            dimension,
            a_invariant,
            reduced: self.reduced,
            gorenstein: check.satisfied,
            graded_gorenstein: check.graded,
            rendered: self.render(),
        })
    }
}

fn render_poly(c: &[i64]) -> String {
    let mut out = String::new();
    for (i, &v) in c.iter().enumerate() {
        if v == 0 {
            continue;
        }
        let mag = v.unsigned_abs();
        if out.is_empty() {
            if v < 0 {
                out.push('-');
            }
        } else {
            out.push_str(if v < 0 { " - " } else { " + " });
        }
        if mag != 1 || i == 0 {
            out.push_str(&mag.to_string());
        }
        match i {
            0 => {}
            1 => out.push('t'),
            _ => out.push_str(&format!("t^{i}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Minimal generators of the leading-term ideal of `ideal` under `order`.
pub fn leading_term_ideal(ideal: &IdealBasis, order: &MonomialOrder) -> Result<Vec<Monomial>> {
    if !ideal.generators().iter().all(|g| g.is_homogeneous()) {
        return Err(AlgebraError::NotHomogeneous);
    }
    let compiled = order.compile(ideal.ring())?;
    let gb = ideal.groebner_for(order)?;
    let leads = gb
        .basis
        .iter()
        .map(|g| g.leading_monomial(&compiled).cloned())
        .collect::<Result<Vec<_>>>()?;
    Ok(minimalize(leads))
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| (m.total_degree(), m.clone()));
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for m in gens {
        if !out.iter().any(|g| g.divides(&m)) {
            out.push(m);
        }
    }
    out
}

type Exps = Vec<u32>;

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(&x, &y)| x == 0 || y == 0)
}

fn minimal_exps(mut gens: Vec<Exps>) -> Vec<Exps> {
    gens.sort_by_key(|m| (m.iter().map(|&e| e as u64).sum::<u64>(), m.clone()));
    gens.dedup();
    let mut out: Vec<Exps> = Vec::with_capacity(gens.len());
    for m in gens {
        if !out.iter().any(|g| divides(g, &m)) {
            out.push(m);
        }
    }
    out.sort_unstable();
    out
}

struct Numerators<'a> {
    weights: &'a [u32],
    memo: HashMap<Vec<Exps>, Vec<i128>>,
}

impl Numerators<'_> {
    fn degree(&self, m: &[u32]) -> usize {
        m.iter().zip(self.weights).map(|(&e, &w)| e as usize * w as usize).sum()
    }

    fn mul(a: &[i128], b: &[i128]) -> Vec<i128> {
        let mut out = vec![0i128; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    }

    /// Numerator for a minimal, sorted generating set.
    fn compute(&mut self, gens: Vec<Exps>) -> Vec<i128> {
        if gens.is_empty() {
            return vec![1];
        }
        // Generators coprime to all others split off as factors.
        let mut result = vec![1i128];
        let mut rest = Vec::with_capacity(gens.len());
        for (i, g) in gens.iter().enumerate() {
            if gens.iter().enumerate().all(|(j, h)| i == j || coprime(g, h)) {
                result = mul_one_minus(&result, self.degree(g));
            } else {
                rest.push(g.clone());
            }
        }
        if rest.is_empty() {
            return result;
        }
        if let Some(k) = self.memo.get(&rest) {
            return Self::mul(&result, k);
        }

        let n = rest[0].len();
        let pivot = (0..n)
            .max_by_key(|&v| (rest.iter().filter(|g| g[v] > 0).count(), std::cmp::Reverse(v)))
            .expect("nonempty ring");
        // A generator that is a pure power of the pivot has a larger exponent
        // than every mixed generator, so this power is not in the ideal.
        let exp = rest
            .iter()
            .filter(|g| g[pivot] > 0 && g.iter().enumerate().any(|(v, &e)| v != pivot && e > 0))
            .map(|g| g[pivot])
            .min()
            .expect("pivot occurs in a mixed generator");
        let mut p = vec![0u32; n];
        p[pivot] = exp;

        let mut sum = rest.clone();
        sum.push(p.clone());
        let quotient: Vec<Exps> = rest
            .iter()
            .map(|g| g.iter().zip(&p).map(|(&a, &b)| a.saturating_sub(b)).collect())
            .collect();
        let a = self.compute(minimal_exps(sum));
        let b = self.compute(minimal_exps(quotient));
        // K(I) = K(I + p) + t^{deg p} K(I : p)
        let shift = self.degree(&p);
        let mut k = a;
        if k.len() < b.len() + shift {
            k.resize(b.len() + shift, 0);
        }
        for (i, &c) in b.iter().enumerate() {
            k[i + shift] += c;
        }
        trim(&mut k);
        self.memo.insert(rest, k.clone());
        Self::mul(&result, &k)
    }
}

/// `K(t)` with `Hilb(R/I) = K(t) / ∏ (1 − t^{w_i})` over all ring variables.
pub fn hilbert_numerator_monomial(gens: &[Monomial], ring: &Ring) -> Result<Vec<i64>> {
    if let Some(m) = gens.iter().find(|m| m.num_vars() != ring.num_vars()) {
        return Err(AlgebraError::InvalidArgument(format!(
            "monomial over {} variables in a ring with {}",
            m.num_vars(),
            ring.num_vars()
        )));
    }
    let exps = minimal_exps(gens.iter().map(|m| m.exponents().to_vec()).collect());
    let mut engine = Numerators {
        weights: ring.weights(),
        memo: HashMap::new(),
    };
    let mut k = engine.compute(exps);
    trim(&mut k);
    to_i64(&k)
}

/// Reduced Hilbert series of `R/I`, read off the leading-term ideal.
pub fn hilbert_series_quotient(ideal: &IdealBasis, order: &MonomialOrder) -> Result<HilbertSeries> {
    let leads = leading_term_ideal(ideal, order)?;
    let k = hilbert_numerator_monomial(&leads, ideal.ring())?;
    Ok(HilbertSeries::new(k, ideal.ring().weights().to_vec()).reduce())
}

/// Krull dimension and a-invariant.
pub fn dimension_and_a_invariant(h: &HilbertSeries) -> Result<(i64, i64)> {
    Ok((h.dimension()?, h.a_invariant()?))
}

/// Tests the functional equation through palindromy of the numerator:
/// `t^{deg N} N(1/t) = (−1)^{d − m} N(t)` with `m` denominator factors.
pub fn gorenstein_check(h: &HilbertSeries) -> Result<GorensteinCheck> {
    let (d, a) = dimension_and_a_invariant(h)?;
    let m = h.denominator_weights.len() as i64;
    let sign = if (d - m).rem_euclid(2) == 0 { 1 } else { -1 };
    let n = &h.numerator;
    let satisfied = n.iter().zip(n.iter().rev()).all(|(&x, &y)| y == sign * x);
    Ok(GorensteinCheck {
        satisfied,
        graded: satisfied && d == -a,
    })
}

fn binomial(n: usize, k: usize) -> Rational {
    if k > n {
        return Rational::zero();
    }
    let mut r = num_bigint::BigInt::from(1);
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    Rational::from(r)
}

/// Coefficients of `(1 − t)^{−d}, (1 − t)^{−d+1}, …` in the expansion at `t = 1`.
pub fn laurent_at_one(h: &HilbertSeries, terms: usize) -> Result<Vec<Rational>> {
    if h.is_zero() {
        return Err(AlgebraError::InvalidArgument("the zero series has no expansion".into()));
    }
    // With s = 1 − t, N(t) = Σ_j s^j Σ_i N_i C(i, j) (−1)^j.
    let deg = h.numerator.len() - 1;
    let mut num: Vec<Rational> = (0..=deg)
        .map(|j| {
            let mut c = Rational::zero();
            for (i, &v) in h.numerator.iter().enumerate().skip(j) {
                c += &(&binomial(i, j) * &Rational::from(v));
            }
            if j % 2 == 1 {
                -c
            } else {
                c
            }
        })
        .collect();
    let lead = num.iter().position(|c| !c.is_zero()).expect("nonzero numerator");
    num.drain(..lead);
    // 1 − t^w = s · Σ_j C(w, j + 1) (−1)^j s^j
    let mut den = vec![Rational::one()];
    for &w in &h.denominator_weights {
        let w = w as usize;
        let factor: Vec<Rational> = (0..w)
            .map(|j| {
                let c = binomial(w, j + 1);
                if j % 2 == 1 {
                    -c
                } else {
                    c
                }
            })
            .collect();
        let mut prod = vec![Rational::zero(); den.len() + factor.len() - 1];
        for (i, a) in den.iter().enumerate() {
            for (j, b) in factor.iter().enumerate() {
                prod[i + j] += &(a * b);
            }
        }
        den = prod;
    }
    let inv = den[0].recip()?;
    let mut out: Vec<Rational> = Vec::with_capacity(terms);
    for j in 0..terms {
        let mut c = num.get(j).cloned().unwrap_or_default();
        for i in 1..=j.min(den.len() - 1) {
            c -= &(&den[i] * &out[j - i]);
        }
        out.push(&c * &inv);
    }
    Ok(out)
}

/// `(1 − t^2)^{n(n−1)/2} / (1 − t)^{2kn}`, kept unreduced.
pub fn complete_intersection_series(k: usize, n: usize) -> Result<HilbertSeries> {
    if k == 0 || n == 0 {
        return Err(AlgebraError::InvalidArgument("k and n must be positive".into()));
    }
    let mut num = vec![1i128];
    for _ in 0..n * (n - 1) / 2 {
        num = mul_one_minus(&num, 2);
    }
    Ok(HilbertSeries {
        numerator: to_i64(&num)?,
        denominator_weights: vec![1; 2 * k * n],
        reduced: false,
    })
}
