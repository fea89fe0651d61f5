//! Sparse multivariate polynomials with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{AlgebraError, Result};
use crate::monomial::Monomial;
use crate::order::{CompiledOrder, MonomialOrder};
use crate::rational::Rational;
use crate::ring::Ring;

/// A polynomial over a [`Ring`], stored as a canonical map from monomials to
/// nonzero coefficients.
///
/// Structural equality is mathematical equality. The arithmetic operators
/// panic if the operands belong to different rings; the named methods
/// ([`Polynomial::try_add`] and friends) report the mismatch instead.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    ring: Ring,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: &Ring, c: Rational) -> Self {
        let mut p = Self::zero(ring);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(ring.num_vars()), c);
        }
        p
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, Rational::one())
    }

    pub fn var(ring: &Ring, var: usize) -> Self {
        Self::term(ring, Monomial::var(ring.num_vars(), var, 1), Rational::one())
    }

    pub fn var_named(ring: &Ring, name: &str) -> Result<Self> {
        Ok(Self::var(ring, ring.var_index(name)?))
    }

    pub fn term(ring: &Ring, mon: Monomial, c: Rational) -> Self {
        debug_assert_eq!(mon.num_vars(), ring.num_vars());
        let mut p = Self::zero(ring);
        if !c.is_zero() {
            p.terms.insert(mon, c);
        }
        p
    }

    /// Builds a polynomial from (possibly repeated, possibly zero) terms.
    pub fn from_terms<I>(ring: &Ring, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Self::zero(ring);
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical storage order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, mon: &Monomial) -> Rational {
        self.terms.get(mon).cloned().unwrap_or_default()
    }

    /// Terms sorted from largest to smallest under `order`.
    pub fn sorted_terms(&self, order: &CompiledOrder) -> Vec<(&Monomial, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| order.cmp(b.0, a.0));
        v
    }

    pub fn leading_term(&self, order: &CompiledOrder) -> Result<(&Monomial, &Rational)> {
        self.terms
            .iter()
            .max_by(|a, b| order.cmp(a.0, b.0))
            .ok_or(AlgebraError::ZeroPolynomial)
    }

    pub fn leading_monomial(&self, order: &CompiledOrder) -> Result<&Monomial> {
        Ok(self.leading_term(order)?.0)
    }

    pub(crate) fn add_term(&mut self, mon: Monomial, c: &Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(mon) {
            Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            Entry::Occupied(mut e) => {
                let s = e.get() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.ring.check_same(&other.ring)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.ring.check_same(&other.ring)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), &-c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.ring.check_same(&other.ring)?;
        let mut out = Polynomial::zero(&self.ring);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), &(c1 * c2));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, mon: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.mul(mon), v * c)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Divides by the leading coefficient under `order`.
    pub fn make_monic(&self, order: &CompiledOrder) -> Result<Polynomial> {
        let lc = self.leading_term(order)?.1.clone();
        Ok(self.scale(&lc.recip()?))
    }

    pub fn partial_derivative(&self, var: usize) -> Result<Polynomial> {
        if var >= self.ring.num_vars() {
            return Err(AlgebraError::IndexOutOfRange(format!(
                "variable {var} in a ring of {} variables",
                self.ring.num_vars()
            )));
        }
        let mut out = Polynomial::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[var] -= 1;
            out.add_term(Monomial::from_exponents(exps), &(c * &Rational::from(e as i64)));
        }
        Ok(out)
    }

    pub fn partial_derivative_named(&self, name: &str) -> Result<Polynomial> {
        self.partial_derivative(self.ring.var_index(name)?)
    }

    /// Evaluates at a point given by `value(var)`; variables that do not occur
    /// in the polynomial are never queried.
    pub fn evaluate_with<F>(&self, mut value: F) -> Result<Rational>
    where
        F: FnMut(usize) -> Option<Rational>,
    {
        let mut cache: BTreeMap<usize, Rational> = BTreeMap::new();
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m.support() {
                let x = match cache.get(&v) {
                    Some(x) => x.clone(),
                    None => {
                        let x =
                            value(v).ok_or_else(|| AlgebraError::MissingAssignment(self.ring.name(v).to_string()))?;
                        cache.insert(v, x.clone());
                        x
                    }
                };
                t *= &x.pow(e);
            }
            acc += &t;
        }
        Ok(acc)
    }

    /// Evaluates at an assignment keyed by variable name.
    pub fn evaluate(&self, assignment: &BTreeMap<String, Rational>) -> Result<Rational> {
        self.evaluate_with(|v| assignment.get(self.ring.name(v)).cloned())
    }

    /// The ring homomorphism sending variable `i` to `images[i]`, all of which
    /// must live in `target`.
    pub fn substitute(&self, target: &Ring, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.ring.num_vars() {
            return Err(AlgebraError::InvalidArgument(format!(
                "expected {} images, got {}",
                self.ring.num_vars(),
                images.len()
            )));
        }
        for img in images {
            target.check_same(&img.ring)?;
        }
        let mut powers: BTreeMap<(usize, u32), Polynomial> = BTreeMap::new();
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (v, e) in m.support() {
                let p = powers.entry((v, e)).or_insert_with(|| images[v].pow(e)).clone();
                t = &t * &p;
            }
            for (mm, cc) in t.terms {
                out.add_term(mm, &cc);
            }
        }
        Ok(out)
    }

    /// Re-expresses the polynomial in `target`, mapping variables by name.
    /// Only variables that occur need to exist in `target`.
    pub fn embed(&self, target: &Ring) -> Result<Polynomial> {
        let map: Vec<Option<usize>> = (0..self.ring.num_vars())
            .map(|v| {
                if self.uses_variable(v) {
                    target.var_index(self.ring.name(v)).map(Some)
                } else {
                    Ok(None)
                }
            })
            .collect::<Result<_>>()?;
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut exps = vec![0; target.num_vars()];
            for (v, e) in m.support() {
                exps[map[v].expect("occurring variable is mapped")] = e;
            }
            out.add_term(Monomial::from_exponents(exps), c);
        }
        Ok(out)
    }

    /// Weighted degree of every term, if they all agree.
    pub fn homogeneous_degree(&self) -> Option<u64> {
        let w = self.ring.weights();
        let mut it = self.terms.keys().map(|m| m.weighted_degree(w));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    /// Maximum weighted degree of a term; `None` for zero.
    pub fn weighted_degree(&self) -> Option<u64> {
        let w = self.ring.weights();
        self.terms.keys().map(|m| m.weighted_degree(w)).max()
    }

    pub fn uses_variable(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.exponent(var) > 0)
    }

    /// Parses the polynomial text grammar against `ring`.
    pub fn parse(text: &str, ring: &Ring) -> Result<Polynomial> {
        crate::parse::parse_polynomial(text, ring)
    }

    /// Canonical text form: terms in descending weighted graded reverse
    /// lexicographic order.
    pub fn format(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let order = MonomialOrder::GradedRevLex
            .compile(&self.ring)
            .expect("graded reverse lex compiles on every ring");
        for (i, (m, c)) in self.sorted_terms(&order).into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", m.display(&self.ring))?;
            } else {
                write!(f, "{abs}*{}", m.display(&self.ring))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("ring mismatch in polynomial addition")
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("ring mismatch in polynomial subtraction")
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("ring mismatch in polynomial multiplication")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

/// Sums an iterator of polynomials in `ring`.
pub fn sum_in<I: IntoIterator<Item = Polynomial>>(ring: &Ring, iter: I) -> Polynomial {
    let mut out = Polynomial::zero(ring);
    for p in iter {
        for (m, c) in p.terms {
            out.add_term(m, &c);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Ring {
        Ring::new(&[("a", 1), ("b", 1)]).unwrap()
    }

    fn p(s: &str, r: &Ring) -> Polynomial {
        Polynomial::parse(s, r).unwrap()
    }

    #[test]
    fn add_examples() {
        let r = ab();
        assert_eq!(&p("a+b", &r) + &p("a-b", &r), p("2*a", &r));
        assert_eq!(&p("a^2-b", &r) + &Polynomial::zero(&r), p("a^2-b", &r));
        assert!((&p("a^2-b", &r) + &p("b-a^2", &r)).is_zero());
    }

    #[test]
    fn mul_examples() {
        let r = ab();
        assert_eq!(&p("a+b", &r) * &p("a-b", &r), p("a^2-b^2", &r));
        assert_eq!(&p("a^2-b", &r) * &Polynomial::one(&r), p("a^2-b", &r));
        // hand expansion: (a - b^2)(a + b^2) = a^2 + a b^2 - a b^2 - b^4
        assert_eq!(&p("a-b^2", &r) * &p("a+b^2", &r), p("a^2-b^4", &r));
    }

    #[test]
    fn ring_mismatch_is_reported() {
        let r1 = ab();
        let r2 = Ring::new(&[("a", 1), ("c", 1)]).unwrap();
        assert_eq!(
            p("a", &r1).try_add(&p("a", &r2)).unwrap_err(),
            AlgebraError::RingMismatch
        );
        assert_eq!(
            p("a", &r1).try_mul(&p("a", &r2)).unwrap_err(),
            AlgebraError::RingMismatch
        );
    }

    #[test]
    fn derivative_examples() {
        let r = ab();
        assert_eq!(p("a^2*b", &r).partial_derivative(0).unwrap(), p("2*a*b", &r));
        assert!(p("b^3", &r).partial_derivative(0).unwrap().is_zero());
        let ph = Ring::new(&[("q11", 1), ("q12", 1), ("p11", 1), ("p12", 1)]).unwrap();
        let j = p("q11*p12 - q12*p11", &ph);
        assert_eq!(j.partial_derivative_named("p12").unwrap(), p("q11", &ph));
        assert!(j.partial_derivative(9).is_err());
        assert!(j.partial_derivative_named("z").is_err());
    }

    #[test]
    fn evaluate_examples() {
        let r = ab();
        let mut a = BTreeMap::new();
        a.insert("a".to_string(), Rational::from(2));
        a.insert("b".to_string(), Rational::from(4));
        assert!(p("a^2-b", &r).evaluate(&a).unwrap().is_zero());
        let mut only_a = BTreeMap::new();
        only_a.insert("a".to_string(), Rational::from(2));
        assert_eq!(
            p("a^2-b", &r).evaluate(&only_a).unwrap_err(),
            AlgebraError::MissingAssignment("b".into())
        );
        let x = Ring::new(&[("x11", 2), ("x12", 2), ("x22", 2)]).unwrap();
        let mut pt = BTreeMap::new();
        pt.insert("x11".to_string(), Rational::from(1));
        pt.insert("x22".to_string(), Rational::from(1));
        pt.insert("x12".to_string(), Rational::from(2));
        assert_eq!(p("x11*x22 - x12^2", &x).evaluate(&pt).unwrap(), Rational::from(-3));
    }

    #[test]
    fn zero_has_no_leading_term() {
        let r = ab();
        let o = MonomialOrder::Lex.compile(&r).unwrap();
        assert_eq!(
            Polynomial::zero(&r).leading_term(&o).unwrap_err(),
            AlgebraError::ZeroPolynomial
        );
        assert_eq!(p("b + a^2", &r).leading_monomial(&o).unwrap().exponents(), &[2, 0]);
    }

    #[test]
    fn substitution_and_homogeneity() {
        let r = ab();
        let f = p("a^2 - b", &r);
        let g = f.substitute(&r, &[p("a+b", &r), p("a*b", &r)]).unwrap();
        assert_eq!(g, p("a^2 + a*b + b^2", &r));
        assert!(g.is_homogeneous());
        assert!(!f.is_homogeneous());
        assert_eq!(g.homogeneous_degree(), Some(2));
    }

    #[test]
    fn format_is_canonical() {
        let r = ab();
        assert_eq!(p("-b + 3/2*a^2*b", &r).to_string(), "3/2*a^2*b - b");
        assert_eq!(Polynomial::zero(&r).to_string(), "0");
        assert_eq!(p("-1 - a", &r).to_string(), "-a - 1");
    }
}
