//! Gröbner bases, multivariate division and elimination.

mod engine;

use std::time::{Duration, Instant};

pub use engine::{CapReason, Limits, Selection, Stats};
use engine::{MonomialContext, Reducer, ReducerChoice};

use crate::error::{AlgebraError, Result};
use crate::order::MonomialOrder;
use crate::polynomial::Polynomial;
use crate::ring::Ring;

/// A reduced Gröbner basis together with the order it was computed for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    pub order: MonomialOrder,
    /// Monic, auto-reduced, sorted by increasing leading monomial.
    pub basis: Vec<Polynomial>,
    pub reduced: bool,
}

/// Generators of an ideal, optionally with a known Gröbner basis.
#[derive(Clone, Debug)]
pub struct IdealBasis {
    ring: Ring,
    generators: Vec<Polynomial>,
    groebner: Option<GroebnerBasis>,
}

impl IdealBasis {
    /// Zero generators are dropped.
    pub fn new(ring: &Ring, generators: Vec<Polynomial>) -> Result<Self> {
        for g in &generators {
            ring.check_same(g.ring())?;
        }
        Ok(IdealBasis {
            ring: ring.clone(),
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
            groebner: None,
        })
    }

    pub fn with_groebner(mut self, gb: GroebnerBasis) -> Self {
        self.groebner = Some(gb);
        self
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn groebner(&self) -> Option<&GroebnerBasis> {
        self.groebner.as_ref()
    }

    /// The reduced basis for `order`, computing it if the annotation is
    /// missing or for a different order.
    pub fn groebner_for(&self, order: &MonomialOrder) -> Result<GroebnerBasis> {
        match &self.groebner {
            Some(gb) if &gb.order == order && gb.reduced => Ok(gb.clone()),
            _ => Ok(GroebnerBasis {
                order: order.clone(),
                basis: buchberger(&self.ring, &self.generators, order)?,
                reduced: true,
            }),
        }
    }
}

/// Outcome of a resource-limited run.
#[derive(Clone, Debug)]
pub struct GroebnerRun {
    /// The reduced basis when complete, otherwise the partial basis reached.
    pub basis: Vec<Polynomial>,
    pub capped: Option<CapReason>,
    pub stats: Stats,
    pub elapsed: Duration,
}

impl GroebnerRun {
    pub fn is_complete(&self) -> bool {
        self.capped.is_none()
    }
}

fn check_ring(ring: &Ring, polys: &[Polynomial]) -> Result<()> {
    polys.iter().try_for_each(|p| ring.check_same(p.ring()))
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub fn buchberger(ring: &Ring, gens: &[Polynomial], order: &MonomialOrder) -> Result<Vec<Polynomial>> {
    let run = buchberger_limited(ring, gens, order, Selection::default(), &Limits::unlimited())?;
    Ok(run.basis)
}

/// Like [`buchberger`], stopping early when a limit in `limits` is reached.
pub fn buchberger_limited(
    ring: &Ring,
    gens: &[Polynomial],
    order: &MonomialOrder,
    selection: Selection,
    limits: &Limits,
) -> Result<GroebnerRun> {
    check_ring(ring, gens)?;
    let compiled = order.compile(ring)?;
    let mut ctx = MonomialContext::new(ring, &compiled);
    if selection == Selection::TotalDegreeSugar {
        ctx.use_unit_degrees();
    }
    let start = Instant::now();
    let inputs = gens.iter().map(|g| ctx.terms_from(g)).collect();
    let run = engine::buchberger(&ctx, inputs, selection, limits);
    Ok(GroebnerRun {
        basis: run.basis.iter().map(|t| ctx.to_polynomial(ring, t)).collect(),
        capped: run.complete.err(),
        stats: run.stats,
        elapsed: start.elapsed(),
    })
}

/// `S(f, g) = (L/LT(f))·f − (L/LT(g))·g` where `L` is the lcm of the leading
/// monomials.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial, order: &MonomialOrder) -> Result<Polynomial> {
    f.ring().check_same(g.ring())?;
    if f.is_zero() || g.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let ring = f.ring();
    let ctx = MonomialContext::new(ring, &order.compile(ring)?);
    let (a, b) = (ctx.terms_from(f), ctx.terms_from(g));
    let lcm = ctx.lcm(&a[0].0, &b[0].0);
    let s = engine::spoly(&ctx, &a, &ctx.div(&lcm, &a[0].0), &b, &ctx.div(&lcm, &b[0].0));
    Ok(ctx.to_polynomial(ring, &s))
}

/// Quotients and remainder of multivariate division.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Division {
    pub quotients: Vec<Polynomial>,
    pub remainder: Polynomial,
}

/// Divides `f` by `divisors`: at each step the leading term is cancelled by
/// the first divisor whose leading monomial divides it, and otherwise moved to
/// the remainder. `f = Σ quotients[i]·divisors[i] + remainder`.
pub fn divide(f: &Polynomial, divisors: &[Polynomial], order: &MonomialOrder) -> Result<Division> {
    let ring = f.ring();
    check_ring(ring, divisors)?;
    if divisors.iter().any(|d| d.is_zero()) {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let ctx = MonomialContext::new(ring, &order.compile(ring)?);
    let reducers: Vec<Reducer> = divisors
        .iter()
        .map(|d| Reducer::new(&ctx, ctx.terms_from(d), 0))
        .collect();
    let mut q = vec![Vec::new(); reducers.len()];
    let all = |_: usize| true;
    let r = engine::reduce(
        &ctx,
        ctx.terms_from(f),
        &reducers,
        &all,
        true,
        ReducerChoice::First,
        Some(&mut q),
    );
    Ok(Division {
        quotients: q.iter().map(|t| ctx.to_polynomial(ring, t)).collect(),
        remainder: ctx.to_polynomial(ring, &r),
    })
}

/// Remainder of [`divide`].
pub fn normal_form(f: &Polynomial, basis: &[Polynomial], order: &MonomialOrder) -> Result<Polynomial> {
    let ring = f.ring();
    check_ring(ring, basis)?;
    if basis.iter().any(|d| d.is_zero()) {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let ctx = MonomialContext::new(ring, &order.compile(ring)?);
    let reducers: Vec<Reducer> = basis.iter().map(|d| Reducer::new(&ctx, ctx.terms_from(d), 0)).collect();
    let all = |_: usize| true;
    let r = engine::reduce(
        &ctx,
        ctx.terms_from(f),
        &reducers,
        &all,
        true,
        ReducerChoice::First,
        None,
    );
    Ok(ctx.to_polynomial(ring, &r))
}

/// The block order that eliminates `eliminate`, grevlex inside both blocks.
pub fn elimination_order(eliminate: &[usize]) -> MonomialOrder {
    MonomialOrder::block(
        eliminate.to_vec(),
        MonomialOrder::GradedRevLex,
        MonomialOrder::GradedRevLex,
    )
}

fn eliminates(order: &MonomialOrder, eliminate: &[usize]) -> bool {
    match order {
        MonomialOrder::BlockElimination { front, .. } => {
            let mut a = front.clone();
            let mut b = eliminate.to_vec();
            a.sort_unstable();
            b.sort_unstable();
            a == b
        }
        _ => false,
    }
}

/// The ideal `I ∩ k[retained]`, returned in the subring of the retained
/// variables (in ring order) with its Gröbner basis under the induced order.
///
/// The annotated basis of `ideal` is used when it is for a block order whose
/// front block is exactly `eliminate`; otherwise one is computed under
/// [`elimination_order`].
pub fn elimination_ideal(ideal: &IdealBasis, eliminate: &[usize]) -> Result<IdealBasis> {
    let ring = ideal.ring();
    for &v in eliminate {
        if v >= ring.num_vars() {
            return Err(AlgebraError::IndexOutOfRange(format!("variable {v}")));
        }
    }
    let gb = match ideal.groebner() {
        Some(gb) if eliminate.is_empty() || eliminates(&gb.order, eliminate) => gb.clone(),
        _ if eliminate.is_empty() => ideal.groebner_for(&MonomialOrder::GradedRevLex)?,
        _ => ideal.groebner_for(&elimination_order(eliminate))?,
    };
    let kept: Vec<usize> = (0..ring.num_vars()).filter(|v| !eliminate.contains(v)).collect();
    let sub = Ring::new(
        &kept
            .iter()
            .map(|&v| (ring.name(v).to_string(), ring.weight(v)))
            .collect::<Vec<_>>(),
    )?;
    let basis = gb
        .basis
        .iter()
        .filter(|p| eliminate.iter().all(|&v| !p.uses_variable(v)))
        .map(|p| p.embed(&sub))
        .collect::<Result<Vec<_>>>()?;
    let order = gb.order.restrict(&kept);
    Ok(IdealBasis::new(&sub, basis.clone())?.with_groebner(GroebnerBasis {
        order,
        basis,
        reduced: gb.reduced,
    }))
}

/// Membership test; the remainder modulo the Gröbner basis is the witness.
pub fn ideal_contains(ideal: &IdealBasis, f: &Polynomial, order: &MonomialOrder) -> Result<(bool, Polynomial)> {
    ideal.ring().check_same(f.ring())?;
    let gb = ideal.groebner_for(order)?;
    let r = normal_form(f, &gb.basis, order)?;
    Ok((r.is_zero(), r))
}

/// Equality of ideals by comparing reduced Gröbner bases.
pub fn ideal_equal(a: &IdealBasis, b: &IdealBasis, order: &MonomialOrder) -> Result<bool> {
    a.ring().check_same(b.ring())?;
    Ok(a.groebner_for(order)?.basis == b.groebner_for(order)?.basis)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring_ab() -> Ring {
        Ring::new(&[("a", 1), ("b", 1)]).unwrap()
    }

    fn p(s: &str, r: &Ring) -> Polynomial {
        Polynomial::parse(s, r).unwrap()
    }

    // With variables (a, b), lex makes a ≻ b; priority [1, 0] makes b ≻ a.
    fn lex_b_first() -> MonomialOrder {
        MonomialOrder::priority(vec![1, 0], MonomialOrder::Lex)
    }

    #[test]
    fn s_polynomial_examples() {
        let r = ring_ab();
        let f = p("a^2 - b", &r);
        let g = p("a*b - 1", &r);
        assert_eq!(s_polynomial(&f, &g, &MonomialOrder::Lex).unwrap(), p("a - b^2", &r));
        assert!(s_polynomial(&f, &f, &MonomialOrder::Lex).unwrap().is_zero());
        assert!(s_polynomial(&f, &Polynomial::zero(&r), &MonomialOrder::Lex).is_err());

        let (u, v) = (p("a^2 - 1", &r), p("b^2 - 1", &r));
        let s = s_polynomial(&u, &v, &MonomialOrder::Lex).unwrap();
        assert!(normal_form(&s, &[u, v], &MonomialOrder::Lex).unwrap().is_zero());
    }

    #[test]
    fn normal_form_examples() {
        let r = ring_ab();
        let nf = normal_form(&p("a^2", &r), &[p("a - b", &r)], &MonomialOrder::Lex).unwrap();
        assert_eq!(nf, p("b^2", &r));
        let f = p("a*b", &r);
        assert_eq!(normal_form(&f, &[p("a^2 - 1", &r)], &MonomialOrder::Lex).unwrap(), f);
    }

    #[test]
    fn buchberger_and_elimination_example() {
        let r = ring_ab();
        let order = lex_b_first();
        let gb = buchberger(&r, &[p("a^2 - b", &r), p("a*b - 1", &r)], &order).unwrap();
        assert_eq!(gb, vec![p("a^3 - 1", &r), p("b - a^2", &r)]);

        let ideal = IdealBasis::new(&r, gb.clone()).unwrap().with_groebner(GroebnerBasis {
            order: MonomialOrder::block(vec![0], MonomialOrder::Lex, MonomialOrder::Lex),
            basis: buchberger(
                &r,
                &gb,
                &MonomialOrder::block(vec![0], MonomialOrder::Lex, MonomialOrder::Lex),
            )
            .unwrap(),
            reduced: true,
        });
        let elim = elimination_ideal(&ideal, &[0]).unwrap();
        assert_eq!(elim.ring().names(), &["b".to_string()]);
        assert_eq!(elim.generators(), &[p("b^3 - 1", elim.ring())]);

        // Without an annotation the basis is computed internally.
        let plain = IdealBasis::new(&r, gb).unwrap();
        let elim2 = elimination_ideal(&plain, &[0]).unwrap();
        assert_eq!(elim2.generators(), elim.generators());
        let none = elimination_ideal(&plain, &[]).unwrap();
        assert!(ideal_equal(&none, &plain, &MonomialOrder::GradedRevLex).unwrap());
    }

    #[test]
    fn principal_ideal_is_its_own_basis() {
        let r = Ring::new(&[("x", 2), ("y", 2), ("z", 2)]).unwrap();
        let q = p("2*x*z - 2*y^2", &r);
        let gb = buchberger(&r, &[q], &MonomialOrder::GradedRevLex).unwrap();
        assert_eq!(gb, vec![p("y^2 - x*z", &r)]);
    }

    #[test]
    fn membership_and_equality() {
        let r = Ring::new(&[("x", 2), ("y", 2), ("z", 2)]).unwrap();
        let order = MonomialOrder::GradedRevLex;
        let q = IdealBasis::new(&r, vec![p("x*z - y^2", &r)]).unwrap();
        let (inside, rem) = ideal_contains(&q, &Polynomial::one(&r), &order).unwrap();
        assert!(!inside);
        assert_eq!(rem, Polynomial::one(&r));
        assert!(!ideal_contains(&q, &p("x", &r), &order).unwrap().0);
        assert!(ideal_contains(&q, &p("x^2*z - x*y^2", &r), &order).unwrap().0);
        let other = IdealBasis::new(&r, vec![p("x", &r)]).unwrap();
        assert!(!ideal_equal(&q, &other, &order).unwrap());

        let r2 = ring_ab();
        let a = IdealBasis::new(&r2, vec![p("a - b", &r2)]).unwrap();
        let b = IdealBasis::new(&r2, vec![p("2*a - 2*b", &r2)]).unwrap();
        assert!(ideal_equal(&a, &b, &MonomialOrder::Lex).unwrap());
    }

    #[test]
    fn ring_mismatch_is_rejected() {
        let r = ring_ab();
        let other = Ring::new(&[("a", 1), ("b", 2)]).unwrap();
        let err = normal_form(&p("a", &r), &[p("a", &other)], &MonomialOrder::Lex);
        assert_eq!(err, Err(AlgebraError::RingMismatch));
    }

    #[test]
    fn limits_report_incomplete_runs() {
        let r = Ring::new(&[("a", 1), ("b", 1), ("c", 1)]).unwrap();
        let gens = [p("a^2 - b*c", &r), p("b^2 - a*c", &r), p("c^2 - a*b", &r)];
        let limits = Limits {
            max_pairs: Some(1),
            ..Limits::default()
        };
        let run = buchberger_limited(&r, &gens, &MonomialOrder::Lex, Selection::Normal, &limits).unwrap();
        assert_eq!(run.capped, Some(CapReason::PairLimit(1)));
        let full = buchberger_limited(&r, &gens, &MonomialOrder::Lex, Selection::Sugar, &Limits::unlimited()).unwrap();
        assert!(full.is_complete());
    }
}
