use std::fmt;
use std::str::FromStr;

use super::{index_list, out_of_range, subsets, GramRing, Group, PhaseRing};
use crate::error::{AlgebraError, Result};
use crate::polynomial::{sum_in, Polynomial};
use crate::ring::Ring;

/// Component `(α, β)` of the moment map, `Σ_l q[l,α]·p[l,β] − q[l,β]·p[l,α]`.
pub fn moment_component(pr: &PhaseRing, alpha: usize, beta: usize) -> Result<Polynomial> {
    if alpha == 0 || alpha >= beta || beta > pr.n() {
        return Err(out_of_range(&format!("moment component ({alpha},{beta})")));
    }
    Ok(signed_moment(pr, alpha, beta))
}

/// Component for any ordered pair, antisymmetric and zero on the diagonal.
pub(crate) fn signed_moment(pr: &PhaseRing, alpha: usize, beta: usize) -> Polynomial {
    let ring = pr.ring();
    sum_in(
        ring,
        (1..=pr.k()).map(|l| {
            let q = |a| pr.q(l, a).expect("in range");
            let p = |a| pr.p(l, a).expect("in range");
            &(&q(alpha) * &p(beta)) - &(&q(beta) * &p(alpha))
        }),
    )
}

/// All components with `α < β`, in lexicographic order of `(α, β)`.
pub fn moment_components(pr: &PhaseRing) -> Vec<Polynomial> {
    let mut out = Vec::new();
    for a in 1..=pr.n() {
        for b in a + 1..=pr.n() {
            out.push(signed_moment(pr, a, b));
        }
    }
    out
}

/// The scalar product `<y_i, y_j>` in the phase ring.
pub fn gram_polynomial(pr: &PhaseRing, i: usize, j: usize) -> Result<Polynomial> {
    let terms = (1..=pr.n())
        .map(|a| Ok(&pr.y(i, a)? * &pr.y(j, a)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(sum_in(pr.ring(), terms))
}

/// Determinant of a square matrix of polynomials over `ring`, by cofactor
/// expansion along the first row.
pub fn determinant(ring: &Ring, m: &[Vec<Polynomial>]) -> Polynomial {
    fn go(ring: &Ring, m: &[Vec<Polynomial>], row: usize, cols: &mut Vec<usize>) -> Polynomial {
        if cols.is_empty() {
            return Polynomial::one(ring);
        }
        let mut acc = Polynomial::zero(ring);
        for pos in 0..cols.len() {
            let c = cols[pos];
            if m[row][c].is_zero() {
                continue;
            }
            cols.remove(pos);
            let sub = go(ring, m, row + 1, cols);
            cols.insert(pos, c);
            let t = &m[row][c] * &sub;
            acc = if pos % 2 == 0 { &acc + &t } else { &acc - &t };
        }
        acc
    }
    let mut cols: Vec<usize> = (0..m.len()).collect();
    go(ring, m, 0, &mut cols)
}

/// Images of the Gram ring variables in the phase ring: scalar products for
/// `x[i,j]` and determinants of the vectors `y_{i_1}, …, y_{i_n}` for the
/// determinant variables.
pub fn gram_images(pr: &PhaseRing, gr: &GramRing) -> Result<Vec<Polynomial>> {
    if gr.k() != pr.k() {
        return Err(AlgebraError::InvalidArgument("particle counts differ".into()));
    }
    if let Some(s) = gr.determinant_size() {
        if s != pr.n() {
            return Err(AlgebraError::InvalidArgument(format!(
                "determinants of size {s} in dimension {}",
                pr.n()
            )));
        }
    }
    let mut out = Vec::with_capacity(gr.ring().num_vars());
    for i in 1..=gr.dim() {
        for j in i..=gr.dim() {
            out.push(gram_polynomial(pr, i, j)?);
        }
    }
    for s in gr.determinant_subsets() {
        out.push(vector_determinant(pr, s));
    }
    Ok(out)
}

fn vector_determinant(pr: &PhaseRing, set: &[usize]) -> Polynomial {
    let m: Vec<Vec<Polynomial>> = (1..=pr.n())
        .map(|a| set.iter().map(|&i| pr.y(i, a).expect("in range")).collect())
        .collect();
    determinant(pr.ring(), &m)
}

/// `Σ_l det [[x(i,2l−1), x(i,2l)], [x(j,2l−1), x(j,2l)]]`.
pub fn q_generator(gr: &GramRing, i: usize, j: usize) -> Result<Polynomial> {
    if i == 0 || i >= j || j > gr.dim() {
        return Err(out_of_range(&format!("Q[{i},{j}]")));
    }
    let x = |a, b| gr.x(a, b).expect("in range");
    Ok(sum_in(
        gr.ring(),
        (1..=gr.k()).map(|l| &(&x(i, 2 * l - 1) * &x(j, 2 * l)) - &(&x(i, 2 * l) * &x(j, 2 * l - 1))),
    ))
}

/// All `(i, j, Q[i,j])` with `i < j`, lexicographically.
pub fn q_generators(gr: &GramRing) -> Vec<(usize, usize, Polynomial)> {
    let mut out = Vec::new();
    for i in 1..=gr.dim() {
        for j in i + 1..=gr.dim() {
            out.push((i, j, q_generator(gr, i, j).expect("in range")));
        }
    }
    out
}

/// `Q[i,j]` in dimension `n` minus `Q[i,j]` in dimension `n − 1`, both
/// written in the phase ring of dimension `n`.
pub fn d_difference(k: usize, n: usize, i: usize, j: usize) -> Result<Polynomial> {
    if n < 2 {
        return Err(AlgebraError::InvalidArgument("the difference needs n >= 2".into()));
    }
    let gr = GramRing::new(k)?;
    let q = q_generator(&gr, i, j)?;
    let big = PhaseRing::new(k, n)?;
    let small = PhaseRing::new(k, n - 1)?;
    let qn = q.substitute(big.ring(), &gram_images(&big, &gr)?)?;
    let qm = q
        .substitute(small.ring(), &gram_images(&small, &gr)?)?
        .embed(big.ring())?;
    Ok(&qn - &qm)
}

/// A minor of the Gram matrix with its row and column sets (1-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Minor {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub polynomial: Polynomial,
}

impl Minor {
    pub fn label(&self) -> String {
        format!("minor({};{})", index_list(&self.rows), index_list(&self.cols))
    }
}

/// The minor of the Gram matrix on `rows × cols`.
pub fn minor(gr: &GramRing, rows: &[usize], cols: &[usize]) -> Result<Polynomial> {
    if rows.len() != cols.len() {
        return Err(AlgebraError::InvalidArgument(
            "minor needs as many rows as columns".into(),
        ));
    }
    let m = rows
        .iter()
        .map(|&r| cols.iter().map(|&c| gr.x(r, c)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(determinant(gr.ring(), &m))
}

/// All `r × r` minors. Transposed choices give the same polynomial, so only
/// `rows ≤ cols` (lexicographically) is emitted.
pub fn minor_generators(gr: &GramRing, r: usize) -> Result<Vec<Minor>> {
    if r == 0 {
        return Err(AlgebraError::InvalidArgument("minor size must be positive".into()));
    }
    let sets = subsets(gr.dim(), r);
    let mut out = Vec::new();
    for (a, rows) in sets.iter().enumerate() {
        for cols in &sets[a..] {
            out.push(Minor {
                rows: rows.clone(),
                cols: cols.clone(),
                polynomial: minor(gr, rows, cols)?,
            });
        }
    }
    Ok(out)
}

/// `det(y_{i_1}, …, y_{i_n})` for every increasing `n`-subset of `1..=2k`,
/// named after its determinant variable.
pub fn so_determinant_generators(pr: &PhaseRing) -> Result<Vec<(String, Polynomial)>> {
    if pr.n() > 2 * pr.k() {
        return Err(AlgebraError::InvalidArgument(format!(
            "no {n}x{n} determinants among {} vectors",
            2 * pr.k(),
            n = pr.n()
        )));
    }
    Ok(subsets(2 * pr.k(), pr.n())
        .into_iter()
        .map(|s| (format!("det[{}]", index_list(&s)), vector_determinant(pr, &s)))
        .collect())
}

/// `{f, g} = Σ ∂f/∂q·∂g/∂p − ∂f/∂p·∂g/∂q` over all coordinate pairs.
pub fn poisson_bracket(f: &Polynomial, g: &Polynomial, pr: &PhaseRing) -> Result<Polynomial> {
    let ring = pr.ring();
    ring.check_same(f.ring())?;
    ring.check_same(g.ring())?;
    let mut acc = Polynomial::zero(ring);
    for l in 1..=pr.k() {
        for a in 1..=pr.n() {
            let (q, p) = (pr.q_index(l, a)?, pr.p_index(l, a)?);
            if !(f.uses_variable(q) || f.uses_variable(p)) || !(g.uses_variable(q) || g.uses_variable(p)) {
                continue;
            }
            let t1 = &f.partial_derivative(q)? * &g.partial_derivative(p)?;
            let t2 = &f.partial_derivative(p)? * &g.partial_derivative(q)?;
            acc = &(&acc + &t1) - &t2;
        }
    }
    Ok(acc)
}

/// What a generator set describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GeneratorKind {
    /// Moment map components in the phase ring.
    Moment,
    /// The quadratic relations, plus minors when `n < k`.
    Quadratic,
    /// All minors of the given size.
    Minors(usize),
    /// Determinant invariants in the phase ring.
    Determinants,
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorKind::Moment => f.write_str("moment"),
            GeneratorKind::Quadratic => f.write_str("quadratic"),
            GeneratorKind::Minors(r) => write!(f, "minors{r}"),
            GeneratorKind::Determinants => f.write_str("determinants"),
        }
    }
}

impl FromStr for GeneratorKind {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "moment" => Ok(GeneratorKind::Moment),
            "quadratic" => Ok(GeneratorKind::Quadratic),
            "determinants" => Ok(GeneratorKind::Determinants),
            _ => s
                .strip_prefix("minors")
                .and_then(|r| r.parse().ok())
                .map(GeneratorKind::Minors)
                .ok_or_else(|| AlgebraError::InvalidArgument(format!("unknown generator kind `{s}`"))),
        }
    }
}

/// A labelled list of generators with the case it belongs to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSet {
    pub kind: GeneratorKind,
    pub k: usize,
    pub n: usize,
    pub group: Group,
    pub ring: Ring,
    pub labels: Vec<String>,
    pub polynomials: Vec<Polynomial>,
}

impl GeneratorSet {
    pub fn len(&self) -> usize {
        self.polynomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polynomials.is_empty()
    }

    pub fn header(&self) -> String {
        format!("# k={} n={} group={} kind={}", self.k, self.n, self.group, self.kind)
    }

    /// Header line, ring line, then a `# label` line before each polynomial.
    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n# ring {}\n", self.header(), self.ring.header());
        for (label, p) in self.labels.iter().zip(&self.polynomials) {
            s.push_str(&format!("# {label}\n{}\n", p.format()));
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let bad = |m: &str| AlgebraError::Parse {
            position: 0,
            message: m.to_string(),
        };
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| bad("empty generator file"))?;
        let fields: std::collections::HashMap<&str, &str> = header
            .trim_start_matches('#')
            .split_whitespace()
            .filter_map(|f| f.split_once('='))
            .collect();
        let get = |key: &str| {
            fields
                .get(key)
                .copied()
                .ok_or_else(|| bad(&format!("missing `{key}` in header")))
        };
        let num = |key: &str| -> Result<usize> { get(key)?.parse().map_err(|_| bad(&format!("bad `{key}`"))) };
        let (k, n) = (num("k")?, num("n")?);
        let group: Group = get("group")?.parse()?;
        let kind: GeneratorKind = get("kind")?.parse()?;
        let ring_line = lines
            .next()
            .and_then(|l| l.strip_prefix("# ring "))
            .ok_or_else(|| bad("missing ring line"))?;
        let ring = Ring::from_header(ring_line)?;
        let mut labels = Vec::new();
        let mut polynomials = Vec::new();
        let mut pending: Option<String> = None;
        for line in lines {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(label) = line.strip_prefix('#') {
                pending = Some(label.trim().to_string());
                continue;
            }
            let p = Polynomial::parse(line, &ring)?;
            labels.push(pending.take().unwrap_or_else(|| format!("g{}", polynomials.len() + 1)));
            polynomials.push(p);
        }
        Ok(GeneratorSet {
            kind,
            k,
            n,
            group,
            ring,
            labels,
            polynomials,
        })
    }
}

/// The moment ideal generators in the phase ring, and the quadratic
/// relations (with `(n+1)`-minors when `n < k`) in the Gram ring. For the
/// special orthogonal group the Gram ring also carries determinant variables.
pub fn build_ideals(k: usize, n: usize, group: Group) -> Result<(GeneratorSet, GeneratorSet)> {
    let pr = PhaseRing::new(k, n)?;
    let moment = moment_components(&pr);
    let mut moment_labels = Vec::new();
    for a in 1..=n {
        for b in a + 1..=n {
            moment_labels.push(format!("J[{a},{b}]"));
        }
    }
    let gr = match group {
        Group::O => GramRing::new(k)?,
        Group::SO => GramRing::with_determinants(k, n)?,
    };
    let mut labels = Vec::new();
    let mut polys = Vec::new();
    for (i, j, q) in q_generators(&gr) {
        labels.push(format!("Q[{i},{j}]"));
        polys.push(q);
    }
    if n < k {
        for m in minor_generators(&gr, n + 1)? {
            labels.push(m.label());
            polys.push(m.polynomial);
        }
    }
    let shell = GeneratorSet {
        kind: GeneratorKind::Moment,
        k,
        n,
        group,
        ring: pr.ring().clone(),
        labels: moment_labels,
        polynomials: moment,
    };
    let quadratic = GeneratorSet {
        kind: GeneratorKind::Quadratic,
        k,
        n,
        group,
        ring: gr.ring().clone(),
        labels,
        polynomials: polys,
    };
    Ok((shell, quadratic))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::Rational;

    fn parse(s: &str, r: &Ring) -> Polynomial {
        Polynomial::parse(s, r).unwrap()
    }

    #[test]
    fn moment_components_examples() {
        let pr = PhaseRing::new(1, 2).unwrap();
        assert_eq!(
            moment_component(&pr, 1, 2).unwrap(),
            parse("q[1,1]*p[1,2] - q[1,2]*p[1,1]", pr.ring())
        );
        let pr2 = PhaseRing::new(2, 2).unwrap();
        assert_eq!(moment_component(&pr2, 1, 2).unwrap().num_terms(), 4);
        assert!(moment_component(&pr2, 2, 1).is_err());
        assert!(moment_components(&PhaseRing::new(3, 1).unwrap()).is_empty());
    }

    #[test]
    fn gram_polynomial_examples() {
        let pr = PhaseRing::new(1, 2).unwrap();
        let r = pr.ring();
        assert_eq!(
            gram_polynomial(&pr, 1, 2).unwrap(),
            parse("q[1,1]*p[1,1] + q[1,2]*p[1,2]", r)
        );
        assert_eq!(gram_polynomial(&pr, 1, 1).unwrap(), parse("q[1,1]^2 + q[1,2]^2", r));
        let pr1 = PhaseRing::new(1, 1).unwrap();
        assert_eq!(gram_polynomial(&pr1, 1, 2).unwrap(), parse("q[1,1]*p[1,1]", pr1.ring()));
    }

    #[test]
    fn q_generator_examples() {
        let g1 = GramRing::new(1).unwrap();
        assert_eq!(
            q_generator(&g1, 1, 2).unwrap(),
            parse("x[1,1]*x[2,2] - x[1,2]^2", g1.ring())
        );
        let g2 = GramRing::new(2).unwrap();
        let r = g2.ring();
        let q34 = q_generator(&g2, 3, 4).unwrap();
        assert_eq!(
            q34,
            parse("-x[1,4]*x[2,3] + x[1,3]*x[2,4] - x[3,4]^2 + x[3,3]*x[4,4]", r)
        );
        let diff = &q_generator(&g2, 1, 2).unwrap() - &q34;
        assert_eq!(diff, parse("-x[1,2]^2 + x[1,1]*x[2,2] + x[3,4]^2 - x[3,3]*x[4,4]", r));
        assert!(q_generator(&g2, 2, 2).is_err());
        assert_eq!(q34.homogeneous_degree(), Some(4));
    }

    #[test]
    fn minors() {
        let g2 = GramRing::new(2).unwrap();
        let m = minor(&g2, &[2, 3, 4], &[2, 3, 4]).unwrap();
        let expected = parse(
            "-x[2,4]^2*x[3,3] + 2*x[2,3]*x[2,4]*x[3,4] - x[2,2]*x[3,4]^2 - x[2,3]^2*x[4,4] + x[2,2]*x[3,3]*x[4,4]",
            g2.ring(),
        );
        assert_eq!(m, expected);
        assert!(minor_generators(&g2, 5).unwrap().is_empty());
        let g1 = GramRing::new(1).unwrap();
        let all = minor_generators(&g1, 2).unwrap();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].polynomial, q_generator(&g1, 1, 2).unwrap());
        // C(4,3) row sets give 4·5/2 unordered (rows, cols) choices.
        assert_eq!(minor_generators(&g2, 3).unwrap().len(), 10);
        for m in minor_generators(&g2, 3).unwrap() {
            assert_eq!(m.polynomial.homogeneous_degree(), Some(6));
        }
    }

    #[test]
    fn determinant_generators() {
        let pr = PhaseRing::new(1, 2).unwrap();
        let dets = so_determinant_generators(&pr).unwrap();
        assert_eq!(dets.len(), 1);
        assert_eq!(dets[0].0, "det[1,2]");
        assert_eq!(dets[0].1, moment_component(&pr, 1, 2).unwrap());
        assert_eq!(
            so_determinant_generators(&PhaseRing::new(2, 2).unwrap()).unwrap().len(),
            6
        );
        assert!(so_determinant_generators(&PhaseRing::new(1, 3).unwrap()).is_err());
    }

    #[test]
    fn bracket_examples() {
        let pr = PhaseRing::new(1, 2).unwrap();
        let (q, p) = (pr.q(1, 1).unwrap(), pr.p(1, 1).unwrap());
        assert_eq!(poisson_bracket(&q, &p, &pr).unwrap(), Polynomial::one(pr.ring()));
        let x11 = gram_polynomial(&pr, 1, 1).unwrap();
        let x22 = gram_polynomial(&pr, 2, 2).unwrap();
        let x12 = gram_polynomial(&pr, 1, 2).unwrap();
        assert!(poisson_bracket(&x11, &x11, &pr).unwrap().is_zero());
        assert_eq!(poisson_bracket(&x11, &x22, &pr).unwrap(), x12.scale(&Rational::from(4)));
    }

    #[test]
    fn ideals_and_serialization() {
        let (j, q) = build_ideals(2, 2, Group::O).unwrap();
        assert_eq!((j.len(), q.len()), (1, 6));
        let (_, q32) = build_ideals(3, 2, Group::O).unwrap();
        assert_eq!(
            q32.len(),
            15 + minor_generators(&GramRing::new(3).unwrap(), 3).unwrap().len()
        );
        let (j11, q11) = build_ideals(1, 1, Group::O).unwrap();
        assert!(j11.is_empty());
        assert_eq!(q11.polynomials, vec![parse("x[1,1]*x[2,2] - x[1,2]^2", &q11.ring)]);

        let text = q32.to_text();
        assert!(text.starts_with("# k=3 n=2 group=O kind=quadratic\n"));
        assert_eq!(GeneratorSet::from_text(&text).unwrap(), q32);
        let (_, so) = build_ideals(2, 2, Group::SO).unwrap();
        assert_eq!(so.ring.num_vars(), 16);
        assert_eq!(GeneratorSet::from_text(&so.to_text()).unwrap(), so);
    }
}
