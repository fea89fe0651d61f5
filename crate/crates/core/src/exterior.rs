//! Exterior algebra of a free module with polynomial coefficients, and
//! certificates expressing `(k+1)`-minors of an `m × 2k` matrix as
//! combinations of the quadratic relations `Q[i,j]`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{AlgebraError, Result};
use crate::model::{determinant, subsets, GramRing};
use crate::polynomial::{sum_in, Polynomial};
use crate::rational::Rational;
use crate::ring::Ring;

/// Sorts `idx` in place, returning the sign of the permutation, or `None`
/// when an index repeats.
fn sort_with_sign(idx: &mut [usize]) -> Option<i32> {
    let mut sign = 1;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    idx.windows(2).all(|w| w[0] < w[1]).then_some(sign)
}

/// Sign and sorted union of two increasing index lists, `None` if they meet.
fn merge(a: &[usize], b: &[usize]) -> Option<(i32, Vec<usize>)> {
    let mut idx: Vec<usize> = a.iter().chain(b).copied().collect();
    let sign = sort_with_sign(&mut idx)?;
    Some((sign, idx))
}

/// A homogeneous element of `Λ^grade R^rank`, stored on the basis blades
/// `e_{i_1} ∧ … ∧ e_{i_r}` with `1 ≤ i_1 < … < i_r ≤ rank`.
#[derive(Clone, PartialEq, Eq)]
pub struct ExteriorElement {
    ring: Ring,
    rank: usize,
    grade: usize,
    terms: BTreeMap<Vec<usize>, Polynomial>,
}

impl ExteriorElement {
    pub fn zero(ring: &Ring, rank: usize, grade: usize) -> Self {
        ExteriorElement {
            ring: ring.clone(),
            rank,
            grade,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(ring: &Ring, rank: usize, c: Polynomial) -> Result<Self> {
        Self::from_terms(ring, rank, 0, [(Vec::new(), c)])
    }

    /// `e_{i_1} ∧ … ∧ e_{i_r}` for indices in any order.
    pub fn blade(ring: &Ring, rank: usize, indices: &[usize]) -> Result<Self> {
        Self::from_terms(ring, rank, indices.len(), [(indices.to_vec(), Polynomial::one(ring))])
    }

    /// Sums coefficients over blades given with indices in any order.
    pub fn from_terms<I>(ring: &Ring, rank: usize, grade: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, Polynomial)>,
    {
        let mut out = Self::zero(ring, rank, grade);
        for (mut idx, c) in terms {
            ring.check_same(c.ring())?;
            if idx.len() != grade {
                return Err(AlgebraError::RankMismatch);
            }
            if let Some(&bad) = idx.iter().find(|&&i| i == 0 || i > rank) {
                return Err(AlgebraError::IndexOutOfRange(format!("e[{bad}] in rank {rank}")));
            }
            if let Some(sign) = sort_with_sign(&mut idx) {
                out.add_term(idx, if sign < 0 { -&c } else { c });
            }
        }
        Ok(out)
    }

    fn add_term(&mut self, idx: Vec<usize>, c: Polynomial) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(idx) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[usize], &Polynomial)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), v))
    }

    /// Coefficient of the blade on an increasing index list.
    pub fn component(&self, indices: &[usize]) -> Polynomial {
        self.terms
            .get(indices)
            .cloned()
            .unwrap_or_else(|| Polynomial::zero(&self.ring))
    }

    fn check_compatible(&self, other: &ExteriorElement) -> Result<()> {
        self.ring.check_same(&other.ring)?;
        if self.rank != other.rank {
            return Err(AlgebraError::RankMismatch);
        }
        Ok(())
    }

    pub fn try_add(&self, other: &ExteriorElement) -> Result<ExteriorElement> {
        self.check_compatible(other)?;
        if self.grade != other.grade {
            return Err(AlgebraError::RankMismatch);
        }
        let mut out = self.clone();
        for (idx, c) in &other.terms {
            out.add_term(idx.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Polynomial) -> ExteriorElement {
        let mut out = Self::zero(&self.ring, self.rank, self.grade);
        for (idx, v) in &self.terms {
            out.add_term(idx.clone(), v * c);
        }
        out
    }

    pub fn wedge(&self, other: &ExteriorElement) -> Result<ExteriorElement> {
        wedge_mul(self, other)
    }
}

impl fmt::Display for ExteriorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (idx, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            let blade: Vec<String> = idx.iter().map(|i| format!("e{i}")).collect();
            if blade.is_empty() {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c})*{}", blade.join("^"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ExteriorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExteriorElement(rank {}, grade {}: {self})", self.rank, self.grade)
    }
}

/// Exterior product, with coefficients multiplied in the polynomial ring.
pub fn wedge_mul(u: &ExteriorElement, v: &ExteriorElement) -> Result<ExteriorElement> {
    u.check_compatible(v)?;
    let mut out = ExteriorElement::zero(&u.ring, u.rank, u.grade + v.grade);
    if out.grade > out.rank {
        return Ok(out);
    }
    for (a, ca) in &u.terms {
        for (b, cb) in &v.terms {
            if let Some((sign, idx)) = merge(a, b) {
                let c = ca * cb;
                out.add_term(idx, if sign < 0 { -&c } else { c });
            }
        }
    }
    Ok(out)
}

/// Formal combination of wedges of matrix columns, with rational
/// coefficients, keyed by increasing column lists.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct ColumnForm(BTreeMap<Vec<usize>, Rational>);

impl ColumnForm {
    fn one() -> Self {
        ColumnForm([(Vec::new(), Rational::one())].into())
    }

    fn add(&mut self, idx: Vec<usize>, c: Rational) {
        let e = self.0.entry(idx).or_default();
        *e += &c;
        if e.is_zero() {
            self.0.retain(|_, v| !v.is_zero());
        }
    }

    fn wedge_column(&self, col: usize, sign: i32) -> ColumnForm {
        let mut out = ColumnForm::default();
        for (idx, c) in &self.0 {
            if let Some((s, merged)) = merge(idx, &[col]) {
                let c = if s * sign < 0 { -c.clone() } else { c.clone() };
                out.add(merged, c);
            }
        }
        out
    }
}

/// `Σ_{ℓ ∈ pairs} x_{2ℓ−1} ∧ x_{2ℓ}` wedged with the result equals the
/// increasing wedge of `blade`. Requires `|blade| = |pairs| + 1` and every
/// blade column to belong to one of `pairs`.
fn solve(pairs: &[usize], blade: &[usize]) -> ColumnForm {
    let inside = |c: usize| blade.contains(&c);
    let split = pairs.iter().copied().find(|&l| inside(2 * l - 1) != inside(2 * l));
    if let Some(l) = split {
        let c = if inside(2 * l - 1) { 2 * l - 1 } else { 2 * l };
        let rest_pairs: Vec<usize> = pairs.iter().copied().filter(|&p| p != l).collect();
        let rest_blade: Vec<usize> = blade.iter().copied().filter(|&b| b != c).collect();
        let sigma = solve(&rest_pairs, &rest_blade);
        // Moving x_c from the end into place passes every larger column.
        let larger = blade.iter().filter(|&&b| b > c).count();
        return sigma.wedge_column(c, if larger % 2 == 0 { 1 } else { -1 });
    }
    // The blade is a union of whole pairs.
    let full: Vec<usize> = pairs.iter().copied().filter(|&l| inside(2 * l - 1)).collect();
    let empty: Vec<usize> = pairs.iter().copied().filter(|&l| !inside(2 * l - 1)).collect();
    let r = full.len();
    if r == 0 {
        return ColumnForm::one();
    }
    let mut out = ColumnForm::default();
    for t in 0..r {
        let mut c = (&(&Rational::factorial((r - t - 1) as u32) * &Rational::factorial(t as u32))
            / &Rational::factorial(r as u32))
            .expect("factorials are nonzero");
        if t % 2 == 1 {
            c = -c;
        }
        for a in subsets(r, r - t - 1) {
            for b in subsets(empty.len(), t) {
                let mut cols: Vec<usize> = a
                    .iter()
                    .map(|&i| full[i - 1])
                    .chain(b.iter().map(|&i| empty[i - 1]))
                    .flat_map(|l| [2 * l - 1, 2 * l])
                    .collect();
                // Pair wedges have even grade, so sorting them is sign free.
                cols.sort_unstable();
                out.add(cols, c.clone());
            }
        }
    }
    out
}

/// An `m × 2k` matrix of polynomials whose columns `x_1, …, x_{2k}` are
/// grouped into pairs `(x_{2ℓ−1}, x_{2ℓ})`.
#[derive(Clone, Debug)]
pub struct ColumnMatrix {
    ring: Ring,
    k: usize,
    entries: Vec<Vec<Polynomial>>,
}

impl ColumnMatrix {
    /// `entries[i][j]` is row `i + 1`, column `j + 1`.
    pub fn new(ring: &Ring, entries: Vec<Vec<Polynomial>>) -> Result<Self> {
        let cols = entries.first().map_or(0, Vec::len);
        if entries.is_empty() || cols == 0 || !cols.is_multiple_of(2) {
            return Err(AlgebraError::InvalidArgument(
                "need at least one row and an even, positive number of columns".into(),
            ));
        }
        for row in &entries {
            if row.len() != cols {
                return Err(AlgebraError::InvalidArgument("ragged matrix".into()));
            }
            for e in row {
                ring.check_same(e.ring())?;
            }
        }
        Ok(ColumnMatrix {
            ring: ring.clone(),
            k: cols / 2,
            entries,
        })
    }

    /// The first `m` rows of the symmetric Gram matrix.
    pub fn gram(gr: &GramRing, m: usize) -> Result<Self> {
        if m == 0 || m > gr.dim() {
            return Err(AlgebraError::IndexOutOfRange(format!(
                "{m} rows of a {0}x{0} matrix",
                gr.dim()
            )));
        }
        let entries = (1..=m)
            .map(|i| (1..=gr.dim()).map(|j| gr.x(i, j)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(gr.ring(), entries)
    }

    /// A matrix of independent variables `x[i,j]`, `i ≤ m`, `j ≤ 2k`.
    pub fn generic(m: usize, k: usize) -> Result<Self> {
        if m == 0 || k == 0 {
            return Err(AlgebraError::InvalidArgument("m and k must be positive".into()));
        }
        let mut names = Vec::with_capacity(2 * k * m);
        for i in 1..=m {
            for j in 1..=2 * k {
                names.push((format!("x[{i},{j}]"), 1));
            }
        }
        let ring = Ring::new(&names)?;
        let entries = (0..m)
            .map(|i| (0..2 * k).map(|j| Polynomial::var(&ring, i * 2 * k + j)).collect())
            .collect();
        Self::new(&ring, entries)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    /// Number of column pairs.
    pub fn k(&self) -> usize {
        self.k
    }

    fn check_sets(&self, rows: &[usize], cols: &[usize]) -> Result<()> {
        let ok = |s: &[usize], max: usize| s.windows(2).all(|w| w[0] < w[1]) && s.iter().all(|&i| i >= 1 && i <= max);
        if rows.len() != cols.len() || !ok(rows, self.rows()) || !ok(cols, 2 * self.k) {
            return Err(AlgebraError::InvalidArgument(format!(
                "invalid index sets rows={rows:?} cols={cols:?}"
            )));
        }
        Ok(())
    }

    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Result<Polynomial> {
        self.check_sets(rows, cols)?;
        let m: Vec<Vec<Polynomial>> = rows
            .iter()
            .map(|&r| cols.iter().map(|&c| self.entries[r - 1][c - 1].clone()).collect())
            .collect();
        Ok(determinant(&self.ring, &m))
    }

    /// Column `j` as the grade-1 element `Σ_i X[i,j]·e_i`.
    pub fn column(&self, j: usize) -> Result<ExteriorElement> {
        if j == 0 || j > 2 * self.k {
            return Err(AlgebraError::IndexOutOfRange(format!("column {j}")));
        }
        ExteriorElement::from_terms(
            &self.ring,
            self.rows(),
            1,
            self.entries
                .iter()
                .enumerate()
                .map(|(i, row)| (vec![i + 1], row[j - 1].clone())),
        )
    }

    /// `Σ_ℓ x_{2ℓ−1} ∧ x_{2ℓ}`.
    pub fn q_wedge(&self) -> Result<ExteriorElement> {
        let mut out = ExteriorElement::zero(&self.ring, self.rows(), 2);
        for l in 1..=self.k {
            out = out.try_add(&self.column(2 * l - 1)?.wedge(&self.column(2 * l)?)?)?;
        }
        Ok(out)
    }

    /// Coefficient of `e_i ∧ e_j` in [`ColumnMatrix::q_wedge`].
    pub fn q_component(&self, i: usize, j: usize) -> Result<Polynomial> {
        if i == 0 || i >= j || j > self.rows() {
            return Err(AlgebraError::IndexOutOfRange(format!("Q[{i},{j}]")));
        }
        let x = |r: usize, c: usize| &self.entries[r - 1][c - 1];
        Ok(sum_in(
            &self.ring,
            (1..=self.k).map(|l| &(x(i, 2 * l - 1) * x(j, 2 * l)) - &(x(i, 2 * l) * x(j, 2 * l - 1))),
        ))
    }

    fn realize(&self, form: &ColumnForm, grade: usize) -> Result<ExteriorElement> {
        let mut terms = Vec::new();
        for rows in subsets(self.rows(), grade) {
            let mut c = Polynomial::zero(&self.ring);
            for (cols, coeff) in &form.0 {
                c = &c + &self.minor(&rows, cols)?.scale(coeff);
            }
            terms.push((rows, c));
        }
        ExteriorElement::from_terms(&self.ring, self.rows(), grade, terms)
    }

    /// For odd `k' ≤ k`, the element `σ` of grade `k' − 1` built from the
    /// first `k'` column pairs with `Q_{k'} ∧ σ = x_1 ∧ … ∧ x_{k'+1}`.
    pub fn sigma(&self, k: usize) -> Result<ExteriorElement> {
        if k == 0 || k.is_multiple_of(2) || k > self.k {
            return Err(AlgebraError::InvalidArgument(format!(
                "sigma needs an odd number of pairs up to {}, got {k}",
                self.k
            )));
        }
        let pairs: Vec<usize> = (1..=k).collect();
        let blade: Vec<usize> = (1..=k + 1).collect();
        self.realize(&solve(&pairs, &blade), k - 1)
    }

    /// Writes the `(rows, cols)` minor, of size `k + 1`, as `Σ c_{ij} Q[i,j]`.
    pub fn certificate(&self, rows: &[usize], cols: &[usize]) -> Result<MinorCertificate> {
        self.check_sets(rows, cols)?;
        if rows.len() != self.k + 1 {
            return Err(AlgebraError::InvalidArgument(format!(
                "certificates exist for minors of size {}, got {}",
                self.k + 1,
                rows.len()
            )));
        }
        let pairs: Vec<usize> = (1..=self.k).collect();
        let omega = solve(&pairs, cols);
        let mut combination = Vec::new();
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in rows.iter().enumerate().skip(a + 1) {
                let rest: Vec<usize> = rows.iter().copied().filter(|&r| r != i && r != j).collect();
                let mut c = Polynomial::zero(&self.ring);
                for (cs, coeff) in &omega.0 {
                    c = &c + &self.minor(&rest, cs)?.scale(coeff);
                }
                if (a + b - 1) % 2 == 1 {
                    c = -&c;
                }
                if !c.is_zero() {
                    combination.push(((i, j), c));
                }
            }
        }
        Ok(MinorCertificate {
            rows: rows.to_vec(),
            cols: cols.to_vec(),
            combination,
        })
    }

    /// Whether the combination expands to the minor it names.
    pub fn verify(&self, cert: &MinorCertificate) -> Result<bool> {
        let target = self.minor(&cert.rows, &cert.cols)?;
        let mut sum = Polynomial::zero(&self.ring);
        for ((i, j), c) in &cert.combination {
            self.ring.check_same(c.ring())?;
            sum = &sum + &(c * &self.q_component(*i, *j)?);
        }
        Ok(sum == target)
    }
}

/// `minor(rows; cols) = Σ coefficient · Q[i,j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorCertificate {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub combination: Vec<((usize, usize), Polynomial)>,
}

fn list(idx: &[usize]) -> String {
    idx.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
}

fn parse_list(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| AlgebraError::InvalidArgument(format!("bad index `{t}`")))
        })
        .collect()
}

impl MinorCertificate {
    pub fn label(&self) -> String {
        format!("minor({};{})", list(&self.rows), list(&self.cols))
    }

    /// One line: `minor(1,2,3;1,2,3) = (c) * Q[1,2] + (c') * Q[1,3] + …`.
    pub fn to_text(&self) -> String {
        let rhs = if self.combination.is_empty() {
            "0".to_string()
        } else {
            self.combination
                .iter()
                .map(|((i, j), c)| format!("({c}) * Q[{i},{j}]"))
                .collect::<Vec<_>>()
                .join(" + ")
        };
        format!("{} = {rhs}", self.label())
    }

    pub fn parse(line: &str, ring: &Ring) -> Result<Self> {
        let bad = |m: &str| AlgebraError::Parse {
            position: 0,
            message: m.to_string(),
        };
        let (lhs, rhs) = line.split_once(" = ").ok_or_else(|| bad("missing ` = `"))?;
        let inner = lhs
            .trim()
            .strip_prefix("minor(")
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| bad("expected minor(rows;cols)"))?;
        let (r, c) = inner.split_once(';').ok_or_else(|| bad("missing `;`"))?;
        let mut combination = Vec::new();
        let mut rest = rhs.trim();
        if rest != "0" {
            while !rest.is_empty() {
                rest = rest.strip_prefix('(').ok_or_else(|| bad("expected `(`"))?;
                let mut depth = 1;
                let close = rest
                    .char_indices()
                    .find(|&(_, ch)| {
                        match ch {
                            '(' => depth += 1,
                            ')' => depth -= 1,
                            _ => {}
                        }
                        depth == 0
                    })
                    .map(|(p, _)| p)
                    .ok_or_else(|| bad("unbalanced parentheses"))?;
                let coeff = Polynomial::parse(&rest[..close], ring)?;
                rest = rest[close + 1..]
                    .strip_prefix(" * Q[")
                    .ok_or_else(|| bad("expected ` * Q[`"))?;
                let end = rest.find(']').ok_or_else(|| bad("missing `]`"))?;
                let ij = parse_list(&rest[..end])?;
                if ij.len() != 2 {
                    return Err(bad("Q takes two indices"));
                }
                combination.push(((ij[0], ij[1]), coeff));
                rest = rest[end + 1..].trim_start();
                if let Some(r) = rest.strip_prefix('+') {
                    rest = r.trim_start();
                }
            }
        }
        Ok(MinorCertificate {
            rows: parse_list(r)?,
            cols: parse_list(c)?,
            combination,
        })
    }
}

/// Column `j` of the Gram matrix truncated to its first `m` rows.
pub fn column_vector(gr: &GramRing, j: usize, m: usize) -> Result<ExteriorElement> {
    ColumnMatrix::gram(gr, m)?.column(j)
}

/// `Σ_ℓ x_{2ℓ−1} ∧ x_{2ℓ}` over the first `m` rows of the Gram matrix.
pub fn build_q_wedge(gr: &GramRing, m: usize) -> Result<ExteriorElement> {
    if m < 2 {
        return Err(AlgebraError::InvalidArgument(
            "the quadratic form needs rank at least 2".into(),
        ));
    }
    ColumnMatrix::gram(gr, m)?.q_wedge()
}

/// The explicit solution for a blade made of the first `(k+1)/2` pairs.
pub fn sigma_case2(gr: &GramRing, k: usize) -> Result<ExteriorElement> {
    ColumnMatrix::gram(gr, gr.dim())?.sigma(k)
}

pub fn minor_certificate(gr: &GramRing, rows: &[usize], cols: &[usize]) -> Result<MinorCertificate> {
    ColumnMatrix::gram(gr, gr.dim())?.certificate(rows, cols)
}

pub fn verify_certificate(cert: &MinorCertificate, gr: &GramRing) -> Result<bool> {
    ColumnMatrix::gram(gr, gr.dim())?.verify(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::q_generator;

    fn ring() -> Ring {
        Ring::new(&[("a", 1)]).unwrap()
    }

    #[test]
    fn wedge_signs() {
        let r = ring();
        let b = |idx: &[usize]| ExteriorElement::blade(&r, 4, idx).unwrap();
        assert!(wedge_mul(&b(&[1, 2]), &b(&[2])).unwrap().is_zero());
        assert_eq!(wedge_mul(&b(&[1, 2]), &b(&[3, 4])).unwrap(), b(&[1, 2, 3, 4]));
        let swapped = wedge_mul(&b(&[2, 1]), &b(&[3])).unwrap();
        assert_eq!(swapped.component(&[1, 2, 3]), -&Polynomial::one(&r));
        let other = ExteriorElement::blade(&r, 3, &[1]).unwrap();
        assert_eq!(wedge_mul(&b(&[1]), &other), Err(AlgebraError::RankMismatch));
        assert!(ExteriorElement::blade(&r, 2, &[3]).is_err());
    }

    #[test]
    fn columns_unfold_symmetrically() {
        let gr = GramRing::new(2).unwrap();
        let c = column_vector(&gr, 3, 4).unwrap();
        let names: Vec<String> = (1..=4).map(|i| c.component(&[i]).to_string()).collect();
        assert_eq!(names, ["x[1,3]", "x[2,3]", "x[3,3]", "x[3,4]"]);
        let gr1 = GramRing::new(1).unwrap();
        assert_eq!(column_vector(&gr1, 2, 1).unwrap().component(&[1]).to_string(), "x[1,2]");
    }

    #[test]
    fn q_wedge_matches_generators() {
        for k in 1..=3 {
            let gr = GramRing::new(k).unwrap();
            let q = build_q_wedge(&gr, gr.dim()).unwrap();
            for i in 1..=gr.dim() {
                for j in i + 1..=gr.dim() {
                    assert_eq!(q.component(&[i, j]), q_generator(&gr, i, j).unwrap());
                }
            }
        }
        let gr = GramRing::new(2).unwrap();
        let q3 = build_q_wedge(&gr, 3).unwrap();
        assert_eq!(q3.rank(), 3);
        assert_eq!(q3.component(&[1, 3]), q_generator(&gr, 1, 3).unwrap());
        assert!(build_q_wedge(&gr, 1).is_err());
    }

    #[test]
    fn sigma_solves_the_paired_blade() {
        for k in [1, 3] {
            let gr = GramRing::new(k).unwrap();
            let m = ColumnMatrix::gram(&gr, gr.dim()).unwrap();
            let sigma = sigma_case2(&gr, k).unwrap();
            let mut tau = m.column(1).unwrap();
            for j in 2..=k + 1 {
                tau = tau.wedge(&m.column(j).unwrap()).unwrap();
            }
            assert_eq!(build_q_wedge(&gr, gr.dim()).unwrap().wedge(&sigma).unwrap(), tau);
        }
        assert!(sigma_case2(&GramRing::new(2).unwrap(), 2).is_err());
    }

    #[test]
    fn sigma_for_three_pairs() {
        let half = Rational::new(1, 2).unwrap();
        let form = solve(&[1, 2, 3], &[1, 2, 3, 4]);
        let expect: BTreeMap<Vec<usize>, Rational> = [
            (vec![1, 2], half.clone()),
            (vec![3, 4], half.clone()),
            (vec![5, 6], -half),
        ]
        .into();
        assert_eq!(form.0, expect);
        assert_eq!(solve(&[1], &[1, 2]), ColumnForm::one());
    }

    #[test]
    fn certificate_for_a_listed_minor() {
        let gr = GramRing::new(2).unwrap();
        let cert = minor_certificate(&gr, &[2, 3, 4], &[2, 3, 4]).unwrap();
        assert_eq!(
            cert.to_text(),
            "minor(2,3,4;2,3,4) = (x[2,4]) * Q[2,3] + (-x[2,3]) * Q[2,4] + (x[2,2]) * Q[3,4]"
        );
        assert!(verify_certificate(&cert, &gr).unwrap());
        assert_eq!(MinorCertificate::parse(&cert.to_text(), gr.ring()).unwrap(), cert);

        let mut bad = cert.clone();
        bad.combination[0].1 = &bad.combination[0].1 + &Polynomial::one(gr.ring());
        assert!(!verify_certificate(&bad, &gr).unwrap());

        let one = minor_certificate(&GramRing::new(1).unwrap(), &[1, 2], &[1, 2]).unwrap();
        assert_eq!(one.to_text(), "minor(1,2;1,2) = (1) * Q[1,2]");
        assert!(minor_certificate(&gr, &[1, 2], &[1, 2]).is_err());
        assert!(minor_certificate(&gr, &[3, 2, 1], &[1, 2, 3]).is_err());
    }

    #[test]
    fn all_certificates_for_two_pairs() {
        let gr = GramRing::new(2).unwrap();
        for rows in subsets(4, 3) {
            for cols in subsets(4, 3) {
                let cert = minor_certificate(&gr, &rows, &cols).unwrap();
                assert!(verify_certificate(&cert, &gr).unwrap(), "{}", cert.label());
            }
        }
    }

    #[test]
    fn generic_rectangular_matrices() {
        let m = ColumnMatrix::generic(5, 2).unwrap();
        for rows in subsets(5, 3) {
            for cols in subsets(4, 3) {
                assert!(m.verify(&m.certificate(&rows, &cols).unwrap()).unwrap());
            }
        }
        let wide = ColumnMatrix::generic(2, 1).unwrap();
        assert!(wide.verify(&wide.certificate(&[1, 2], &[1, 2]).unwrap()).unwrap());
    }
}
