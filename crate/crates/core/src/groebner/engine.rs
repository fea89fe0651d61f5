//! Internal representation and Buchberger loop.
//!
//! Monomials are stored as `[key | exponents]` where `key` is the image of the
//! exponent vector under the order matrix. Both halves are linear in the
//! exponents, so products and quotients are element-wise sums and
//! differences, and comparison is a lexicographic comparison of the key half.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::sync::atomic::{AtomicBool, Ordering as AtomicOrdering};
use std::sync::Arc;
use std::time::Instant;

use crate::monomial::Monomial;
use crate::order::CompiledOrder;
use crate::polynomial::Polynomial;
use crate::rational::Rational;
use crate::ring::Ring;

pub(crate) type Mon = Box<[i32]>;
pub(crate) type Terms = Vec<(Mon, Rational)>;

/// Monomial arithmetic for one ring under one compiled order.
pub(crate) struct MonomialContext {
    n: usize,
    rows: Vec<Vec<(usize, i32)>>,
    weights: Vec<u32>,
}

impl MonomialContext {
    pub(crate) fn new(ring: &Ring, order: &CompiledOrder) -> Self {
        let rows = order
            .rows()
            .iter()
            .map(|r| r.iter().map(|&(v, c)| (v, c as i32)).collect())
            .collect();
        MonomialContext {
            n: ring.num_vars(),
            rows,
            weights: ring.weights().to_vec(),
        }
    }

    /// Counts every variable as degree 1 in sugar computations.
    pub(crate) fn use_unit_degrees(&mut self) {
        self.weights.iter_mut().for_each(|w| *w = 1);
    }

    pub(crate) fn from_exps(&self, exps: &[u32]) -> Mon {
        let mut out = vec![0i32; 2 * self.n];
        for (i, row) in self.rows.iter().enumerate() {
            out[i] = row.iter().map(|&(v, c)| c * exps[v] as i32).sum();
        }
        for (o, &e) in out[self.n..].iter_mut().zip(exps) {
            *o = e as i32;
        }
        out.into_boxed_slice()
    }

    pub(crate) fn to_monomial(&self, m: &[i32]) -> Monomial {
        Monomial::from_exponents(m[self.n..].iter().map(|&e| e as u32).collect())
    }

    #[inline]
    pub(crate) fn cmp(&self, a: &[i32], b: &[i32]) -> Ordering {
        a[..self.n].cmp(&b[..self.n])
    }

    #[inline]
    pub(crate) fn mul(&self, a: &[i32], b: &[i32]) -> Mon {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    #[inline]
    pub(crate) fn div(&self, a: &[i32], b: &[i32]) -> Mon {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    #[inline]
    pub(crate) fn divides(&self, a: &[i32], b: &[i32]) -> bool {
        a[self.n..].iter().zip(&b[self.n..]).all(|(x, y)| x <= y)
    }

    pub(crate) fn lcm(&self, a: &[i32], b: &[i32]) -> Mon {
        let exps: Vec<u32> = a[self.n..]
            .iter()
            .zip(&b[self.n..])
            .map(|(x, y)| (*x).max(*y) as u32)
            .collect();
        self.from_exps(&exps)
    }

    pub(crate) fn coprime(&self, a: &[i32], b: &[i32]) -> bool {
        a[self.n..].iter().zip(&b[self.n..]).all(|(x, y)| *x == 0 || *y == 0)
    }

    #[inline]
    pub(crate) fn mask(&self, a: &[i32]) -> u64 {
        let mut m = 0u64;
        for (i, &e) in a[self.n..].iter().enumerate() {
            if e != 0 {
                m |= 1 << (i % 64);
            }
        }
        m
    }

    pub(crate) fn degree(&self, a: &[i32]) -> u64 {
        a[self.n..]
            .iter()
            .zip(&self.weights)
            .map(|(&e, &w)| e as u64 * w as u64)
            .sum()
    }

    pub(crate) fn terms_from(&self, p: &Polynomial) -> Terms {
        let mut t: Terms = p
            .terms()
            .map(|(m, c)| (self.from_exps(m.exponents()), c.clone()))
            .collect();
        t.sort_by(|a, b| self.cmp(&b.0, &a.0));
        t
    }

    pub(crate) fn to_polynomial(&self, ring: &Ring, t: &[(Mon, Rational)]) -> Polynomial {
        Polynomial::from_terms(ring, t.iter().map(|(m, c)| (self.to_monomial(m), c.clone())))
    }

    /// `h - c * m * g`, assuming the leading terms cancel.
    pub(crate) fn sub_mul(&self, h: &[(Mon, Rational)], c: &Rational, m: &[i32], g: &[(Mon, Rational)]) -> Terms {
        let mut out = Vec::with_capacity(h.len() + g.len());
        let (mut i, mut j) = (1, 1);
        while i < h.len() && j < g.len() {
            let gm = self.mul(&g[j].0, m);
            match self.cmp(&h[i].0, &gm) {
                Ordering::Greater => {
                    out.push(h[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((gm, -(c * &g[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let v = &h[i].1 - &(c * &g[j].1);
                    if !v.is_zero() {
                        out.push((gm, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(h[i..].iter().cloned());
        while j < g.len() {
            out.push((self.mul(&g[j].0, m), -(c * &g[j].1)));
            j += 1;
        }
        out
    }
}

/// A reducer: polynomial with its leading monomial data.
pub(crate) struct Reducer {
    pub terms: Terms,
    pub mask: u64,
    pub sugar: u64,
}

impl Reducer {
    pub(crate) fn new(ctx: &MonomialContext, terms: Terms, sugar: u64) -> Self {
        let mask = ctx.mask(&terms[0].0);
        Reducer { terms, mask, sugar }
    }

    pub(crate) fn lm(&self) -> &[i32] {
        &self.terms[0].0
    }

    pub(crate) fn lc(&self) -> &Rational {
        &self.terms[0].1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum ReducerChoice {
    /// The first reducer in sequence whose leading monomial divides.
    First,
    /// Among the divisors, the one with the fewest terms (ties: earliest).
    Shortest,
}

fn find_reducer(
    ctx: &MonomialContext,
    lead: &[i32],
    lead_mask: u64,
    reducers: &[Reducer],
    usable: &dyn Fn(usize) -> bool,
    choice: ReducerChoice,
) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (idx, r) in reducers.iter().enumerate() {
        if r.mask & !lead_mask != 0 || !usable(idx) || !ctx.divides(r.lm(), lead) {
            continue;
        }
        match choice {
            ReducerChoice::First => return Some(idx),
            ReducerChoice::Shortest => {
                if best.is_none_or(|b| reducers[b].terms.len() > r.terms.len()) {
                    best = Some(idx);
                }
            }
        }
    }
    best
}

/// Reduces `h` by `reducers`. With `full`, every term is reduced; otherwise
/// only until the leading term is irreducible. When `quotients` is given, the
/// multiplier applied to each reducer is accumulated there.
pub(crate) fn reduce(
    ctx: &MonomialContext,
    mut h: Terms,
    reducers: &[Reducer],
    usable: &dyn Fn(usize) -> bool,
    full: bool,
    choice: ReducerChoice,
    mut quotients: Option<&mut Vec<Terms>>,
) -> Terms {
    let mut done: Terms = Vec::new();
    loop {
        if h.is_empty() {
            break;
        }
        let lead_mask = ctx.mask(&h[0].0);
        match find_reducer(ctx, &h[0].0, lead_mask, reducers, usable, choice) {
            Some(idx) => {
                let r = &reducers[idx];
                let m = ctx.div(&h[0].0, r.lm());
                let c = if r.lc().is_one() {
                    h[0].1.clone()
                } else {
                    (&h[0].1 / r.lc()).expect("reducer leading coefficient is nonzero")
                };
                if let Some(q) = quotients.as_deref_mut() {
                    q[idx].push((m.clone(), c.clone()));
                }
                h = ctx.sub_mul(&h, &c, &m, &r.terms);
            }
            None => {
                if !full {
                    break;
                }
                // Move the irreducible leading term to the finished part.
                let mut rest = h.split_off(1);
                done.append(&mut h);
                std::mem::swap(&mut h, &mut rest);
            }
        }
    }
    done.append(&mut h);
    done
}

pub(crate) fn make_monic(terms: &mut Terms) {
    if let Some((_, lc)) = terms.first() {
        if !lc.is_one() {
            let inv = lc.recip().expect("leading coefficient is nonzero");
            for (_, c) in terms.iter_mut() {
                *c = &*c * &inv;
            }
        }
    }
}

/// Which pending S-pair is reduced next.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Selection {
    /// Smallest lcm under the monomial order.
    Normal,
    /// Smallest sugar degree, ties broken by the smallest lcm.
    #[default]
    Sugar,
    /// As `Sugar`, with every variable counted as degree 1.
    TotalDegreeSugar,
}

/// Resource limits for a Buchberger run.
#[derive(Clone, Debug, Default)]
pub struct Limits {
    pub max_pairs: Option<u64>,
    pub max_basis: Option<usize>,
    pub deadline: Option<Instant>,
    pub cancel: Option<Arc<AtomicBool>>,
}

impl Limits {
    pub fn unlimited() -> Self {
        Self::default()
    }
}

/// Why a run stopped early.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CapReason {
    PairLimit(u64),
    BasisLimit(usize),
    Deadline,
    Cancelled,
}

impl std::fmt::Display for CapReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CapReason::PairLimit(n) => write!(f, "S-pair limit of {n} reached"),
            CapReason::BasisLimit(n) => write!(f, "basis size limit of {n} reached"),
            CapReason::Deadline => f.write_str("wall-clock budget exhausted"),
            CapReason::Cancelled => f.write_str("cancelled"),
        }
    }
}

/// Counters collected during a run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    pub pairs_processed: u64,
    pub pairs_discarded: u64,
    pub zero_reductions: u64,
    pub max_basis: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Pending {
    priority: u64,
    sugar: u64,
    lcm: Mon,
    seq: u64,
    kind: PendingKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum PendingKind {
    Pair(usize, usize),
    Input(usize),
}

impl Ord for Pending {
    // BinaryHeap is a max-heap; the smallest (sugar, lcm, seq) must pop first.
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .priority
            .cmp(&self.priority)
            .then_with(|| other.lcm.cmp(&self.lcm))
            .then_with(|| other.seq.cmp(&self.seq))
    }
}

impl PartialOrd for Pending {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub(crate) struct BuchbergerRun {
    pub basis: Vec<Terms>,
    pub complete: Result<(), CapReason>,
    pub stats: Stats,
}

struct State<'a> {
    ctx: &'a MonomialContext,
    elems: Vec<Reducer>,
    active: Vec<bool>,
    queue: BinaryHeap<Pending>,
    seq: u64,
    selection: Selection,
    stats: Stats,
}

impl State<'_> {
    fn push(&mut self, sugar: u64, lcm: Mon, kind: PendingKind) {
        self.seq += 1;
        let priority = match self.selection {
            Selection::Normal => 0,
            Selection::Sugar | Selection::TotalDegreeSugar => sugar,
        };
        self.queue.push(Pending {
            priority,
            sugar,
            lcm,
            seq: self.seq,
            kind,
        });
    }

    /// Gebauer–Möller installation of a new basis element.
    fn update(&mut self, h: Reducer) {
        let ctx = self.ctx;
        let hidx = self.elems.len();
        let hlm: Mon = h.lm().into();

        // Candidate pairs (g, h) with their lcms.
        let cands: Vec<(usize, Mon, bool)> = (0..self.elems.len())
            .filter(|&g| self.active[g])
            .map(|g| {
                let glm = self.elems[g].lm();
                (g, ctx.lcm(glm, &hlm), ctx.coprime(glm, &hlm))
            })
            .collect();

        // Chain criterion among the new pairs: drop (g1, h) when another new
        // pair's lcm properly divides lcm(g1, h); of equal lcms keep one.
        let mut keep = vec![true; cands.len()];
        for a in 0..cands.len() {
            if cands[a].2 {
                continue;
            }
            for b in 0..cands.len() {
                if a == b || !keep[b] {
                    continue;
                }
                if ctx.divides(&cands[b].1, &cands[a].1) {
                    let equal = cands[b].1[ctx.n..] == cands[a].1[ctx.n..];
                    if !equal || b < a {
                        keep[a] = false;
                        break;
                    }
                }
            }
        }
        // A coprime pair with an lcm equal to a kept pair's lcm also removes it.
        for a in 0..cands.len() {
            if !keep[a] || cands[a].2 {
                continue;
            }
            if cands
                .iter()
                .enumerate()
                .any(|(b, c)| b != a && c.2 && keep[b] && c.1[ctx.n..] == cands[a].1[ctx.n..])
            {
                keep[a] = false;
            }
        }

        // Old pairs (g1, g2) whose lcm is divisible by LM(h) without matching
        // either lcm(g1, h) or lcm(g2, h) are redundant.
        let before = self.queue.len();
        let elems = &self.elems;
        let queue = std::mem::take(&mut self.queue);
        let mut kept_pairs = Vec::with_capacity(queue.len());
        for p in queue.into_vec() {
            if let PendingKind::Pair(i, j) = p.kind {
                if ctx.divides(&hlm, &p.lcm) {
                    let li = ctx.lcm(elems[i].lm(), &hlm);
                    let lj = ctx.lcm(elems[j].lm(), &hlm);
                    if li[ctx.n..] != p.lcm[ctx.n..] && lj[ctx.n..] != p.lcm[ctx.n..] {
                        continue;
                    }
                }
            }
            kept_pairs.push(p);
        }
        self.stats.pairs_discarded += (before - kept_pairs.len()) as u64;
        self.queue = BinaryHeap::from(kept_pairs);

        // Remaining new pairs, minus those with coprime leading monomials.
        let hsugar = h.sugar;
        let hdeg = ctx.degree(&hlm);
        for (idx, (g, lcm, coprime)) in cands.into_iter().enumerate() {
            if !keep[idx] || coprime {
                self.stats.pairs_discarded += 1;
                continue;
            }
            let ldeg = ctx.degree(&lcm);
            let g_el = &self.elems[g];
            let sugar = (g_el.sugar + ldeg - ctx.degree(g_el.lm())).max(hsugar + ldeg - hdeg);
            self.push(sugar, lcm, PendingKind::Pair(g, hidx));
        }

        for g in 0..self.elems.len() {
            if self.active[g] && ctx.divides(&hlm, self.elems[g].lm()) {
                self.active[g] = false;
            }
        }
        self.elems.push(h);
        self.active.push(true);
        let n_active = self.active.iter().filter(|a| **a).count();
        self.stats.max_basis = self.stats.max_basis.max(n_active);
    }
}

fn check_limits(limits: &Limits, stats: &Stats, basis_len: usize) -> Result<(), CapReason> {
    if let Some(max) = limits.max_pairs {
        if stats.pairs_processed >= max {
            return Err(CapReason::PairLimit(max));
        }
    }
    if let Some(max) = limits.max_basis {
        if basis_len > max {
            return Err(CapReason::BasisLimit(max));
        }
    }
    if let Some(d) = limits.deadline {
        if Instant::now() >= d {
            return Err(CapReason::Deadline);
        }
    }
    if let Some(c) = &limits.cancel {
        if c.load(AtomicOrdering::Relaxed) {
            return Err(CapReason::Cancelled);
        }
    }
    Ok(())
}

/// Buchberger's algorithm with the Gebauer–Möller criteria and a final
/// inter-reduction. Returns the reduced basis sorted by increasing leading
/// monomial, or a partial basis if a limit is hit.
pub(crate) fn buchberger(
    ctx: &MonomialContext,
    inputs: Vec<Terms>,
    selection: Selection,
    limits: &Limits,
) -> BuchbergerRun {
    let mut state = State {
        ctx,
        elems: Vec::new(),
        active: Vec::new(),
        queue: BinaryHeap::new(),
        seq: 0,
        selection,
        stats: Stats::default(),
    };
    let mut inputs: Vec<Terms> = inputs.into_iter().filter(|t| !t.is_empty()).collect();
    for t in inputs.iter_mut() {
        make_monic(t);
    }
    for (i, t) in inputs.iter().enumerate() {
        let sugar = t.iter().map(|(m, _)| ctx.degree(m)).max().unwrap_or(0);
        let lm = t[0].0.clone();
        state.push(sugar, lm, PendingKind::Input(i));
    }

    let mut complete = Ok(());
    while let Some(p) = state.queue.pop() {
        if let Err(reason) = check_limits(limits, &state.stats, state.elems.len()) {
            complete = Err(reason);
            break;
        }
        let h = match p.kind {
            PendingKind::Input(i) => std::mem::take(&mut inputs[i]),
            PendingKind::Pair(i, j) => {
                state.stats.pairs_processed += 1;
                let (a, b) = (&state.elems[i], &state.elems[j]);
                let ma = ctx.div(&p.lcm, a.lm());
                let mb = ctx.div(&p.lcm, b.lm());
                spoly(ctx, &a.terms, &ma, &b.terms, &mb)
            }
        };
        let all = |_: usize| true;
        let mut r = reduce(ctx, h, &state.elems, &all, false, ReducerChoice::Shortest, None);
        if r.is_empty() {
            state.stats.zero_reductions += 1;
            continue;
        }
        make_monic(&mut r);
        // Tail-reduce so basis elements stay short.
        let head = r.remove(0);
        let tail = reduce(ctx, r, &state.elems, &all, true, ReducerChoice::Shortest, None);
        let mut r = vec![head];
        r.extend(tail);
        let reducer = Reducer::new(ctx, r, p.sugar);
        state.update(reducer);
    }

    let stats = state.stats.clone();
    let basis = if complete.is_ok() {
        interreduce(ctx, &state.elems, &state.active)
    } else {
        state
            .elems
            .iter()
            .zip(&state.active)
            .filter(|(_, a)| **a)
            .map(|(e, _)| e.terms.clone())
            .collect()
    };
    BuchbergerRun { basis, complete, stats }
}

/// S-polynomial of monic (or not) `a` and `b` with cofactors `ma`, `mb`.
pub(crate) fn spoly(
    ctx: &MonomialContext,
    a: &[(Mon, Rational)],
    ma: &[i32],
    b: &[(Mon, Rational)],
    mb: &[i32],
) -> Terms {
    // ma*a/lc(a) - mb*b/lc(b)
    let ia = a[0].1.recip().expect("nonzero leading coefficient");
    let ib = b[0].1.recip().expect("nonzero leading coefficient");
    let left: Terms = a.iter().map(|(m, c)| (ctx.mul(m, ma), c * &ia)).collect();
    ctx.sub_mul(&left, &ib, mb, b)
}

/// Reduced Gröbner basis from a Gröbner basis with activity flags.
fn interreduce(ctx: &MonomialContext, elems: &[Reducer], active: &[bool]) -> Vec<Terms> {
    let mut minimal: Vec<&Reducer> = elems.iter().zip(active).filter(|(_, a)| **a).map(|(e, _)| e).collect();
    minimal.sort_by(|a, b| ctx.cmp(a.lm(), b.lm()));
    // Leading monomials of active elements are pairwise non-divisible, except
    // for exact duplicates which the update step already deactivated.
    let reducers: Vec<Reducer> = minimal
        .iter()
        .map(|e| Reducer::new(ctx, e.terms.clone(), e.sugar))
        .collect();
    let mut out = Vec::with_capacity(reducers.len());
    for (i, e) in reducers.iter().enumerate() {
        let mut t = e.terms.clone();
        make_monic(&mut t);
        let head = t.remove(0);
        let not_self = |j: usize| j != i;
        let tail = reduce(ctx, t, &reducers, &not_self, true, ReducerChoice::Shortest, None);
        let mut r = vec![head];
        r.extend(tail);
        out.push(r);
    }
    out
}
