use super::generators::{d_difference, gram_images, gram_polynomial, poisson_bracket, q_generator, signed_moment};
use super::{GramRing, PhaseRing};
use crate::error::{AlgebraError, Result};
use crate::groebner::{buchberger, normal_form};
use crate::monomial::Monomial;
use crate::order::MonomialOrder;
use crate::polynomial::{sum_in, Polynomial};
use crate::rational::Rational;

/// Outcome of checking a family of polynomial identities.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IdentityReport {
    pub name: String,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl IdentityReport {
    fn new(name: &str) -> Self {
        IdentityReport {
            name: name.to_string(),
            ..Default::default()
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn merge(&mut self, other: IdentityReport) {
        self.checked += other.checked;
        self.failures.extend(other.failures);
    }
}

fn delta(a: usize, b: usize) -> i64 {
    i64::from(a == b)
}

/// The bracket of coordinate blocks: `{y_a, y_b} = +1` for `(q_l, p_l)`,
/// `−1` for `(p_l, q_l)`, and 0 otherwise.
fn block_form(a: usize, b: usize) -> i64 {
    let same_particle = a.div_ceil(2) == b.div_ceil(2);
    match (same_particle, a % 2, b % 2) {
        (true, 1, 0) => 1,
        (true, 0, 1) => -1,
        _ => 0,
    }
}

/// Checks the brackets among scalar products and among moment components,
/// and that brackets of moment components stay in the moment ideal.
pub fn verify_bracket_table(k: usize, n: usize) -> Result<IdentityReport> {
    let pr = PhaseRing::new(k, n)?;
    let ring = pr.ring();
    let m = 2 * k;
    let x = |a: usize, b: usize| gram_polynomial(&pr, a.min(b), a.max(b)).expect("in range");
    let lin = |terms: &[(i64, Polynomial)]| sum_in(ring, terms.iter().map(|(c, p)| p.scale(&Rational::from(*c))));
    let mut report = IdentityReport::new("bracket table");

    // General rule for {<y_a,y_b>, <y_c,y_d>}.
    for a in 1..=m {
        for b in a..=m {
            for c in 1..=m {
                for d in c..=m {
                    let lhs = poisson_bracket(&x(a, b), &x(c, d), &pr)?;
                    let rhs = lin(&[
                        (block_form(a, c), x(b, d)),
                        (block_form(a, d), x(b, c)),
                        (block_form(b, c), x(a, d)),
                        (block_form(b, d), x(a, c)),
                    ]);
                    report.check(lhs == rhs, || format!("{{x[{a},{b}], x[{c},{d}]}}"));
                }
            }
        }
    }

    // The four particle-indexed shapes.
    let (qi, pi) = (|l: usize| 2 * l - 1, |l: usize| 2 * l);
    for l1 in 1..=k {
        for l2 in 1..=k {
            for l3 in 1..=k {
                for l4 in 1..=k {
                    let shapes = [
                        (
                            (qi(l1), qi(l2), pi(l3), pi(l4)),
                            vec![
                                (delta(l1, l3), x(qi(l2), pi(l4))),
                                (delta(l1, l4), x(qi(l2), pi(l3))),
                                (delta(l2, l3), x(qi(l1), pi(l4))),
                                (delta(l2, l4), x(qi(l1), pi(l3))),
                            ],
                        ),
                        (
                            (qi(l1), pi(l2), qi(l3), pi(l4)),
                            vec![(delta(l1, l4), x(qi(l3), pi(l2))), (-delta(l2, l3), x(qi(l1), pi(l4)))],
                        ),
                        (
                            (qi(l1), pi(l2), qi(l3), qi(l4)),
                            vec![(-delta(l2, l4), x(qi(l1), qi(l3))), (-delta(l2, l3), x(qi(l1), qi(l4)))],
                        ),
                        (
                            (qi(l1), pi(l2), pi(l3), pi(l4)),
                            vec![(delta(l1, l3), x(pi(l2), pi(l4))), (delta(l1, l4), x(pi(l2), pi(l3)))],
                        ),
                    ];
                    for (s, ((a, b), (c, d)), rhs) in shapes
                        .into_iter()
                        .enumerate()
                        .map(|(s, ((a, b, c, d), rhs))| (s, ((a, b), (c, d)), rhs))
                    {
                        let lhs = poisson_bracket(&x(a, b), &x(c, d), &pr)?;
                        report.check(lhs == lin(&rhs), || {
                            format!("shape {} with particles ({l1},{l2},{l3},{l4})", s + 1)
                        });
                    }
                }
            }
        }
    }

    // Moment components: {J_ab, J_ce} = −δ_ae J_bc + δ_bc J_ea + δ_ac J_be + δ_be J_ac.
    let j = |a, b| signed_moment(&pr, a, b);
    for a in 1..=n {
        for b in 1..=n {
            for c in 1..=n {
                for e in 1..=n {
                    let lhs = poisson_bracket(&j(a, b), &j(c, e), &pr)?;
                    let rhs = lin(&[
                        (-delta(a, e), j(b, c)),
                        (delta(b, c), j(e, a)),
                        (delta(a, c), j(b, e)),
                        (delta(b, e), j(a, c)),
                    ]);
                    report.check(lhs == rhs, || format!("{{J[{a},{b}], J[{c},{e}]}}"));
                }
            }
        }
    }

    // Closure of the moment ideal under the bracket.
    let gens: Vec<Polynomial> = (1..=n)
        .flat_map(|a| (a + 1..=n).map(move |b| (a, b)))
        .map(|(a, b)| j(a, b))
        .collect();
    if !gens.is_empty() {
        let order = MonomialOrder::GradedRevLex;
        let gb = buchberger(ring, &gens, &order)?;
        for (s, f) in gens.iter().enumerate() {
            for g in &gens[s..] {
                let r = normal_form(&poisson_bracket(f, g, &pr)?, &gb, &order)?;
                report.check(r.is_zero(), || {
                    "bracket of moment components outside the moment ideal".into()
                });
            }
        }
    }
    Ok(report)
}

/// `Σ_l Q[2l−1,2l]` in terms of scalar products equals `Σ_{α<β} J_{αβ}²`.
pub fn verify_norm_identity(k: usize, n: usize) -> Result<bool> {
    let pr = PhaseRing::new(k, n)?;
    let gr = GramRing::new(k)?;
    let images = gram_images(&pr, &gr)?;
    let lhs = sum_in(
        pr.ring(),
        (1..=k)
            .map(|l| q_generator(&gr, 2 * l - 1, 2 * l)?.substitute(pr.ring(), &images))
            .collect::<Result<Vec<_>>>()?,
    );
    let rhs = sum_in(
        pr.ring(),
        (1..=n).flat_map(|a| (a + 1..=n).map(move |b| (a, b))).map(|(a, b)| {
            let j = signed_moment(&pr, a, b);
            &j * &j
        }),
    );
    Ok(lhs == rhs)
}

/// `Σ_{α<n} (y_{i,α}·y_{j,n} − y_{i,n}·y_{j,α}) · J_{α,n}`.
pub fn difference_rhs(k: usize, n: usize, i: usize, j: usize) -> Result<Polynomial> {
    let pr = PhaseRing::new(k, n)?;
    let y = |a: usize, b: usize| pr.y(a, b);
    let mut acc = Polynomial::zero(pr.ring());
    for a in 1..n {
        let w = &(&y(i, a)? * &y(j, n)?) - &(&y(i, n)? * &y(j, a)?);
        acc = &acc + &(&w * &signed_moment(&pr, a, n));
    }
    Ok(acc)
}

/// Checks the difference formula for every `i < j` and its summed form.
pub fn verify_difference_identity(k: usize, n: usize) -> Result<IdentityReport> {
    if n < 2 {
        return Err(AlgebraError::InvalidArgument("the difference needs n >= 2".into()));
    }
    let pr = PhaseRing::new(k, n)?;
    let mut report = IdentityReport::new("difference identity");
    let mut diag = Polynomial::zero(pr.ring());
    for i in 1..=2 * k {
        for j in i + 1..=2 * k {
            let d = d_difference(k, n, i, j)?;
            report.check(d == difference_rhs(k, n, i, j)?, || format!("D[{i},{j}]"));
            if j == i + 1 && i % 2 == 1 {
                diag = &diag + &d;
            }
        }
    }
    let squares = sum_in(
        pr.ring(),
        (1..n).map(|a| {
            let j = signed_moment(&pr, a, n);
            &j * &j
        }),
    );
    report.check(diag == squares, || "summed difference".into());
    Ok(report)
}

/// Both sides of the localized identity for `J_{αβ}/(q[1,α]·q[1,β])`, after
/// `p[1,γ]` (γ ≥ 2) is replaced by its solution from `J_{1γ} = 0` and every
/// side is multiplied by `q[1,1]²·q[1,α]·q[1,β]`. Returns the cleared
/// left side and the cleared expanded and factored right sides.
pub fn localization_sides(k: usize, n: usize, alpha: usize, beta: usize) -> Result<[Polynomial; 3]> {
    if !(2 <= alpha && alpha < beta && beta <= n) {
        return Err(AlgebraError::IndexOutOfRange(format!("pair ({alpha},{beta})")));
    }
    let pr = PhaseRing::new(k, n)?;
    let ring = pr.ring();
    let q = |l, a| pr.q(l, a).expect("in range");
    let p = |l, a| pr.p(l, a).expect("in range");
    let q1 = |a| pr.q_index(1, a).expect("in range");

    // q[1,1]·p[1,γ] after solving J_{1γ} = 0.
    let solved = |g: usize| {
        let mut acc = &q(1, g) * &p(1, 1);
        for l in 2..=k {
            acc = &acc + &(&(&q(l, g) * &p(l, 1)) - &(&q(l, 1) * &p(l, g)));
        }
        acc
    };
    let rest = sum_in(
        ring,
        (2..=k).map(|l| &(&q(l, alpha) * &p(l, beta)) - &(&q(l, beta) * &p(l, alpha))),
    );
    let q11 = q(1, 1);
    let q11_j = &(&(&q(1, alpha) * &solved(beta)) - &(&q(1, beta) * &solved(alpha))) + &(&q11 * &rest);
    let lhs = &q11 * &q11_j;

    // A term num/(q[1,a]·q[1,b]) multiplied by the common denominator.
    let clearing = Monomial::from_exponents({
        let mut e = vec![0; ring.num_vars()];
        e[q1(1)] += 2;
        e[q1(alpha)] += 1;
        e[q1(beta)] += 1;
        e
    });
    let cleared = |num: Polynomial, a: usize, b: usize| {
        let mut den = vec![0; ring.num_vars()];
        den[q1(a)] += 1;
        den[q1(b)] += 1;
        let mult = clearing
            .div(&Monomial::from_exponents(den))
            .expect("denominator divides the clearing monomial");
        num.mul_monomial(&mult, &Rational::one())
    };
    let (a, b) = (alpha, beta);
    let mut expanded = Polynomial::zero(ring);
    let mut factored = Polynomial::zero(ring);
    for l in 2..=k {
        let parts = [
            cleared(&q(l, b) * &p(l, 1), b, 1),
            cleared(&q(l, 1) * &p(l, b), 1, b).scale(&Rational::from(-1)),
            cleared(&q(l, 1) * &p(l, a), 1, a),
            cleared(&q(l, a) * &p(l, 1), a, 1).scale(&Rational::from(-1)),
            cleared(&q(l, a) * &p(l, b), a, b),
            cleared(&q(l, b) * &p(l, a), b, a).scale(&Rational::from(-1)),
        ];
        for t in parts {
            expanded = &expanded + &t;
        }
        // (q_{lα}/q_{1α} − q_{l1}/q_{11})·(p_{lβ}/q_{1β} − p_{l1}/q_{11}) minus
        // the same with α and β swapped, each factor cleared by q_{11}·q_{1γ}.
        let factor = |v: &Polynomial, w: &Polynomial, g: usize| &(v * &q11) - &(w * &q(1, g));
        let first = &factor(&q(l, a), &q(l, 1), a) * &factor(&p(l, b), &p(l, 1), b);
        let second = &factor(&q(l, b), &q(l, 1), b) * &factor(&p(l, a), &p(l, 1), a);
        factored = &factored + &(&first - &second);
    }
    Ok([lhs, expanded, factored])
}

/// Checks the localized identity for every pair `2 ≤ α < β ≤ n`; vacuous for
/// `n < 3`.
pub fn verify_localization_identity(k: usize, n: usize) -> Result<IdentityReport> {
    let mut report = IdentityReport::new("localization identity");
    for a in 2..=n {
        for b in a + 1..=n {
            let [lhs, expanded, factored] = localization_sides(k, n, a, b)?;
            report.check(lhs == expanded, || format!("expanded form for ({a},{b})"));
            report.check(lhs == factored, || format!("factored form for ({a},{b})"));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bracket_tables_hold() {
        for (k, n) in [(1, 1), (2, 2), (1, 3)] {
            let r = verify_bracket_table(k, n).unwrap();
            assert!(r.passed(), "({k},{n}): {:?}", r.failures);
            assert!(r.checked > 0);
        }
    }

    #[test]
    fn norm_identity_holds() {
        for (k, n) in [(1, 1), (1, 2), (2, 3)] {
            assert!(verify_norm_identity(k, n).unwrap());
        }
    }

    #[test]
    fn difference_identity_holds() {
        for (k, n) in [(1, 2), (2, 2), (2, 3)] {
            assert!(verify_difference_identity(k, n).unwrap().passed());
        }
        assert!(verify_difference_identity(1, 1).is_err());
        // In dimension 2 the difference is the relation itself.
        let pr = PhaseRing::new(2, 2).unwrap();
        let gr = GramRing::new(2).unwrap();
        let q = q_generator(&gr, 1, 3)
            .unwrap()
            .substitute(pr.ring(), &gram_images(&pr, &gr).unwrap())
            .unwrap();
        assert_eq!(d_difference(2, 2, 1, 3).unwrap(), q);
    }

    #[test]
    fn localization_identity_holds() {
        assert!(verify_localization_identity(2, 3).unwrap().passed());
        let r = verify_localization_identity(2, 2).unwrap();
        assert_eq!(r.checked, 0);
        assert!(localization_sides(2, 3, 1, 2).is_err());
    }

    #[test]
    fn corrupted_identity_is_detected() {
        let [lhs, _, factored] = localization_sides(2, 3, 2, 3).unwrap();
        assert_ne!(&lhs + &Polynomial::one(lhs.ring()), factored);
    }
}
