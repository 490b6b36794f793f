//! Monomial orderings on PBW monomials and a sampling checker for the
//! monomial-ordering axioms.
//!
//! Monomials are exponent vectors over the generators in PBW (index) order, so
//! the word of a monomial lists its letters in that order. The word orderings
//! (`RankedWord`, `IndexLexWord`) compare these words letter by letter using a rank on
//! generators, with a proper prefix counting as smaller. `DegLex` is the usual
//! graded lexicographic order on exponent vectors with the first PBW generator
//! most significant.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{AlgebraPresentation, GeneratorIndex, Label, Monomial};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum OrderingSpec {
    /// Word ordering with generators ranked by `compare_generators`.
    RankedWord,
    /// Word ordering with generators ranked by PBW (index) position.
    IndexLexWord,
    /// Total degree first, ties broken by `RankedWord`.
    GradedRankedWord,
    /// Total degree first, then exponent vectors lexicographically.
    DegLex,
    /// Monomials involving any `eliminated` generator dominate monomials that do
    /// not; precisely, the degree in the eliminated generators is compared first
    /// and ties go to `inner`.
    Elimination {
        eliminated: BTreeSet<usize>,
        inner: Box<OrderingSpec>,
    },
    /// Block ordering on a tensor product: left factor first, then right factor.
    Tensor(Box<OrderingSpec>, Box<OrderingSpec>),
}

impl OrderingSpec {
    pub fn elimination(eliminated: impl IntoIterator<Item = usize>, inner: OrderingSpec) -> Self {
        OrderingSpec::Elimination {
            eliminated: eliminated.into_iter().collect(),
            inner: Box::new(inner),
        }
    }

    pub fn tensor(left: OrderingSpec, right: OrderingSpec) -> Self {
        OrderingSpec::Tensor(Box::new(left), Box::new(right))
    }

    /// Whether every monomial of smaller total degree precedes every monomial of
    /// larger total degree.
    pub fn is_degree_compatible(&self) -> bool {
        matches!(self, OrderingSpec::GradedRankedWord | OrderingSpec::DegLex)
    }
}

impl fmt::Display for OrderingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderingSpec::RankedWord => write!(f, "rankword"),
            OrderingSpec::IndexLexWord => write!(f, "lexword"),
            OrderingSpec::GradedRankedWord => write!(f, "graded"),
            OrderingSpec::DegLex => write!(f, "deglex"),
            OrderingSpec::Elimination { eliminated, inner } => {
                let v: Vec<String> = eliminated.iter().map(|k| k.to_string()).collect();
                write!(f, "elim:{{{}}}/{inner}", v.join(","))
            }
            OrderingSpec::Tensor(l, r) => write!(f, "tensor({l},{r})"),
        }
    }
}

/// `a` against `b` in the generator ordering: `x_lk < x_ij` iff `l < i`, or
/// `l == i` and `k > j`.
pub fn compare_generators(a: GeneratorIndex, b: GeneratorIndex) -> Ordering {
    a.i.cmp(&b.i).then(b.j.cmp(&a.j))
}

/// An [`OrderingSpec`] resolved against a concrete generator list.
#[derive(Clone, Debug)]
pub struct MonomialOrder {
    kind: Compiled,
}

#[derive(Clone, Debug)]
enum Compiled {
    Word { rank: Vec<u32> },
    Graded { rank: Vec<u32> },
    DegLex,
    Elim { eliminated: Vec<bool>, inner: Box<Compiled> },
    Tensor { split: usize, left: Box<Compiled>, right: Box<Compiled> },
}

impl MonomialOrder {
    pub fn compile(spec: &OrderingSpec, labels: &[Label], split: Option<usize>) -> Result<Self> {
        Ok(MonomialOrder {
            kind: compile(spec, labels, split, true)?,
        })
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.kind.compare(a.exponents(), b.exponents())
    }

    pub fn compare_exps(&self, a: &[u32], b: &[u32]) -> Ordering {
        self.kind.compare(a, b)
    }

    pub fn less(&self, a: &Monomial, b: &Monomial) -> bool {
        self.compare(a, b) == Ordering::Less
    }
}

fn generator_rank(labels: &[Label]) -> Result<Vec<u32>> {
    let mut idx: Vec<(usize, GeneratorIndex)> = Vec::with_capacity(labels.len());
    for (pos, l) in labels.iter().enumerate() {
        match l {
            Label::Quantum(g) => idx.push((pos, *g)),
            Label::Flat(_) => {
                return Err(Error::InvalidOrdering(
                    "the ranked word ordering needs generators indexed by pairs (i,j)".into(),
                ))
            }
        }
    }
    idx.sort_by(|a, b| compare_generators(a.1, b.1));
    let mut rank = vec![0u32; labels.len()];
    for (r, (pos, _)) in idx.iter().enumerate() {
        rank[*pos] = r as u32;
    }
    Ok(rank)
}

fn compile(spec: &OrderingSpec, labels: &[Label], split: Option<usize>, top: bool) -> Result<Compiled> {
    let n = labels.len();
    Ok(match spec {
        OrderingSpec::RankedWord => Compiled::Word { rank: generator_rank(labels)? },
        OrderingSpec::GradedRankedWord => Compiled::Graded { rank: generator_rank(labels)? },
        OrderingSpec::IndexLexWord => Compiled::Word {
            rank: (0..n as u32).collect(),
        },
        OrderingSpec::DegLex => Compiled::DegLex,
        OrderingSpec::Elimination { eliminated, inner } => {
            if eliminated.is_empty() || eliminated.len() >= n {
                return Err(Error::InvalidOrdering(
                    "elimination set must be a nonempty proper subset of the generators".into(),
                ));
            }
            if let Some(&bad) = eliminated.iter().find(|&&k| k >= n) {
                return Err(Error::InvalidOrdering(format!("generator position {bad} out of range")));
            }
            let mut mask = vec![false; n];
            for &k in eliminated {
                mask[k] = true;
            }
            Compiled::Elim {
                eliminated: mask,
                inner: Box::new(compile(inner, labels, split, top)?),
            }
        }
        OrderingSpec::Tensor(l, r) => {
            let split = match (split, top) {
                (Some(s), true) => s,
                _ => {
                    return Err(Error::InvalidOrdering(
                        "tensor ordering is only valid on a tensor-product presentation".into(),
                    ))
                }
            };
            Compiled::Tensor {
                split,
                left: Box::new(compile(l, &labels[..split], None, false)?),
                right: Box::new(compile(r, &labels[split..], None, false)?),
            }
        }
    })
}

fn degree(a: &[u32]) -> u64 {
    a.iter().map(|&e| e as u64).sum()
}

/// Compares the letter sequences of two exponent vectors without building them.
fn word_cmp(rank: &[u32], a: &[u32], b: &[u32]) -> Ordering {
    let next = |v: &[u32], from: usize| (from..v.len()).find(|&k| v[k] > 0);
    let (mut ia, mut ib) = (next(a, 0), next(b, 0));
    let (mut ra, mut rb) = (ia.map_or(0, |k| a[k]), ib.map_or(0, |k| b[k]));
    loop {
        match (ia, ib) {
            (None, None) => return Ordering::Equal,
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (Some(la), Some(lb)) => {
                if la != lb {
                    return rank[la].cmp(&rank[lb]);
                }
                let m = ra.min(rb);
                ra -= m;
                rb -= m;
                if ra == 0 {
                    ia = next(a, la + 1);
                    ra = ia.map_or(0, |k| a[k]);
                }
                if rb == 0 {
                    ib = next(b, lb + 1);
                    rb = ib.map_or(0, |k| b[k]);
                }
            }
        }
    }
}

impl Compiled {
    fn compare(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            Compiled::Word { rank } => word_cmp(rank, a, b),
            Compiled::Graded { rank } => degree(a).cmp(&degree(b)).then_with(|| word_cmp(rank, a, b)),
            Compiled::DegLex => degree(a).cmp(&degree(b)).then_with(|| a.cmp(b)),
            Compiled::Elim { eliminated, inner } => {
                let d = |v: &[u32]| -> u64 {
                    v.iter()
                        .zip(eliminated)
                        .filter(|(_, &m)| m)
                        .map(|(&e, _)| e as u64)
                        .sum()
                };
                d(a).cmp(&d(b)).then_with(|| inner.compare(a, b))
            }
            Compiled::Tensor { split, left, right } => left
                .compare(&a[..*split], &b[..*split])
                .then_with(|| right.compare(&a[*split..], &b[*split..])),
        }
    }
}

/// Which monomial-ordering condition a counterexample breaks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum AxiomKind {
    /// Totality, antisymmetry or transitivity.
    TotalOrder,
    /// A descending chain longer than the probe bound.
    WellOrder,
    /// `gamma = LM(alpha*beta*eta)`, `beta != gamma` but not `beta < gamma`.
    Divisibility,
    /// `alpha < beta` but `LM(gamma*alpha*eta)` is not below `LM(gamma*beta*eta)`.
    Multiplicative,
    /// Generator-level monotonicity: `b < c` but `LM(a*b)` not below `LM(a*c)`
    /// (or the mirrored statement for right factors).
    GeneratorMonotonicity,
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomViolation {
    pub kind: AxiomKind,
    /// Human-readable witness, monomials printed in the algebra's notation.
    pub witness: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct OrderingReport {
    pub ordering: String,
    pub order_triples: usize,
    pub divisibility_tuples: usize,
    pub multiplicative_tuples: usize,
    pub generator_triples: usize,
    pub chain_probes: usize,
    /// Total counterexamples found, per kind order above.
    pub violation_count: usize,
    /// The first few counterexamples (at most [`MAX_REPORTED`]).
    pub violations: Vec<AxiomViolation>,
    pub warnings: Vec<String>,
}

/// Counterexamples kept in a report; the rest are only counted.
pub const MAX_REPORTED: usize = 24;

impl OrderingReport {
    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }

    fn record(&mut self, kind: AxiomKind, witness: String) {
        self.violation_count += 1;
        if self.violations.len() < MAX_REPORTED {
            self.violations.push(AxiomViolation { kind, witness });
        }
    }

    pub fn count(&self, kind: &AxiomKind) -> usize {
        self.violations.iter().filter(|v| &v.kind == kind).count()
    }
}

/// Options for [`verify_ordering_axioms`].
#[derive(Clone, Debug)]
pub struct AxiomCheckConfig {
    /// Number of sampled tuples for each of the two multiplicative conditions.
    pub sample_budget: usize,
    /// Maximum total degree of sampled monomials.
    pub max_degree: u32,
    /// Length a strictly descending chain must reach to be reported.
    pub chain_bound: usize,
    pub seed: u64,
}

impl Default for AxiomCheckConfig {
    fn default() -> Self {
        AxiomCheckConfig {
            sample_budget: 10_000,
            max_degree: 3,
            chain_bound: 12,
            seed: 0x5eed,
        }
    }
}

fn random_monomial(rng: &mut ChaCha8Rng, n: usize, max_degree: u32, allow_one: bool) -> Monomial {
    loop {
        let d = rng.gen_range(0..=max_degree);
        let mut e = vec![0u32; n];
        for _ in 0..d {
            e[rng.gen_range(0..n)] += 1;
        }
        let m = Monomial::new(e);
        if allow_one || !m.is_one() {
            return m;
        }
    }
}

/// Checks the monomial-ordering axioms of `spec` on `algebra` by sampling.
///
/// A pass is evidence only: the axioms quantify over all monomials. Leading
/// monomials of products are taken under `spec` itself.
pub fn verify_ordering_axioms(
    algebra: &AlgebraPresentation,
    spec: &OrderingSpec,
    config: &AxiomCheckConfig,
) -> Result<OrderingReport> {
    let a = algebra.with_ordering(spec.clone())?;
    let order = a.order();
    let n = a.num_generators();
    let mut report = OrderingReport {
        ordering: spec.to_string(),
        ..Default::default()
    };
    if config.sample_budget == 0 {
        report
            .warnings
            .push("empty sample budget: no tuples checked, pass is vacuous".into());
        return Ok(report);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let show = |m: &Monomial| a.format_monomial(m);

    // Total order on sampled triples.
    let pool: Vec<Monomial> = (0..256)
        .map(|_| random_monomial(&mut rng, n, config.max_degree + 1, true))
        .collect();
    let triples = config.sample_budget.min(4096);
    for _ in 0..triples {
        let u = pool.choose(&mut rng).unwrap();
        let v = pool.choose(&mut rng).unwrap();
        let w = pool.choose(&mut rng).unwrap();
        let uv = order.compare(u, v);
        if uv != order.compare(v, u).reverse() || (uv == Ordering::Equal) != (u == v) {
            report.record(AxiomKind::TotalOrder, format!("{} vs {}", show(u), show(v)));
        }
        if uv == Ordering::Less && order.less(v, w) && !order.less(u, w) {
            report.record(
                AxiomKind::TotalOrder,
                format!("{} < {} < {} but not transitive", show(u), show(v), show(w)),
            );
        }
        report.order_triples += 1;
    }

    // Condition (2): beta < gamma = LM(alpha beta eta) whenever gamma != 1, beta.
    for _ in 0..config.sample_budget {
        let al = random_monomial(&mut rng, n, config.max_degree, true);
        let be = random_monomial(&mut rng, n, config.max_degree, true);
        let et = random_monomial(&mut rng, n, config.max_degree, true);
        let prod = a.multiply_monomial_triple(&al, &be, &et)?;
        let (gamma, _) = a.leading_data(&prod)?;
        if !gamma.is_one() && gamma != be && !order.less(&be, &gamma) {
            report.record(
                AxiomKind::Divisibility,
                format!(
                    "LM({} * {} * {}) = {} does not exceed {}",
                    show(&al),
                    show(&be),
                    show(&et),
                    show(&gamma),
                    show(&be)
                ),
            );
        }
        report.divisibility_tuples += 1;
    }

    // Condition (3): alpha < beta implies LM(g a e) < LM(g b e).
    let mut attempts = 0usize;
    while report.multiplicative_tuples < config.sample_budget && attempts < 4 * config.sample_budget {
        attempts += 1;
        let mut al = random_monomial(&mut rng, n, config.max_degree, true);
        let mut be = random_monomial(&mut rng, n, config.max_degree, true);
        match order.compare(&al, &be) {
            Ordering::Equal => continue,
            Ordering::Greater => std::mem::swap(&mut al, &mut be),
            Ordering::Less => {}
        }
        let ga = random_monomial(&mut rng, n, config.max_degree, true);
        let et = random_monomial(&mut rng, n, config.max_degree, true);
        let (lo, _) = a.leading_data(&a.multiply_monomial_triple(&ga, &al, &et)?)?;
        let (hi, _) = a.leading_data(&a.multiply_monomial_triple(&ga, &be, &et)?)?;
        if !hi.is_one() && !order.less(&lo, &hi) {
            report.record(
                AxiomKind::Multiplicative,
                format!(
                    "{} < {} but LM({} * {} * {}) = {} is not below LM({} * {} * {}) = {}",
                    show(&al),
                    show(&be),
                    show(&ga),
                    show(&al),
                    show(&et),
                    show(&lo),
                    show(&ga),
                    show(&be),
                    show(&et),
                    show(&hi)
                ),
            );
        }
        report.multiplicative_tuples += 1;
    }

    // Exhaustive generator triples.
    let gens: Vec<Monomial> = (0..n).map(|k| Monomial::var(n, k)).collect();
    for x in &gens {
        for b in &gens {
            for c in &gens {
                if !order.less(b, c) {
                    continue;
                }
                report.generator_triples += 1;
                let (l1, _) = a.leading_data(&a.multiply_monomials(x, b)?)?;
                let (l2, _) = a.leading_data(&a.multiply_monomials(x, c)?)?;
                if !order.less(&l1, &l2) {
                    report.record(
                        AxiomKind::GeneratorMonotonicity,
                        format!(
                            "{} < {} but LM({} * {}) = {} is not below LM({} * {}) = {}",
                            show(b),
                            show(c),
                            show(x),
                            show(b),
                            show(&l1),
                            show(x),
                            show(c),
                            show(&l2)
                        ),
                    );
                }
                let (r1, _) = a.leading_data(&a.multiply_monomials(b, x)?)?;
                let (r2, _) = a.leading_data(&a.multiply_monomials(c, x)?)?;
                if !order.less(&r1, &r2) {
                    report.record(
                        AxiomKind::GeneratorMonotonicity,
                        format!(
                            "{} < {} but LM({} * {}) = {} is not below LM({} * {}) = {}",
                            show(b),
                            show(c),
                            show(b),
                            show(x),
                            show(&r1),
                            show(c),
                            show(x),
                            show(&r2)
                        ),
                    );
                }
            }
        }
    }

    // Descending chains: start from a sampled monomial and keep multiplying by a
    // fixed generator on one side; report chains that stay strictly descending.
    let starts: Vec<Monomial> = std::iter::once(Monomial::one(n))
        .chain(gens.iter().cloned())
        .chain((0..16).map(|_| random_monomial(&mut rng, n, config.max_degree, false)))
        .collect();
    for start in &starts {
        for g in &gens {
            for left in [true, false] {
                report.chain_probes += 1;
                let mut cur = start.clone();
                let mut len = 0;
                while len < config.chain_bound {
                    let p = if left {
                        a.multiply_monomials(g, &cur)?
                    } else {
                        a.multiply_monomials(&cur, g)?
                    };
                    let (next, _) = a.leading_data(&p)?;
                    if !order.less(&next, &cur) {
                        break;
                    }
                    cur = next;
                    len += 1;
                }
                if len >= config.chain_bound {
                    report.record(
                        AxiomKind::WellOrder,
                        format!(
                            "{} strictly descends for {} steps under {} by {}",
                            show(start),
                            len,
                            if left { "left multiplication" } else { "right multiplication" },
                            show(g)
                        ),
                    );
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gi(i: u32, j: u32) -> GeneratorIndex {
        GeneratorIndex { i, j }
    }

    #[test]
    fn generator_order_examples() {
        assert_eq!(compare_generators(gi(1, 3), gi(1, 2)), Ordering::Less);
        assert_eq!(compare_generators(gi(1, 2), gi(2, 3)), Ordering::Less);
        assert_eq!(compare_generators(gi(2, 3), gi(2, 3)), Ordering::Equal);
    }

    fn labels2() -> Vec<Label> {
        vec![
            Label::Quantum(gi(1, 2)),
            Label::Quantum(gi(1, 3)),
            Label::Quantum(gi(2, 3)),
        ]
    }

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn ranked_word_order_examples() {
        let o = MonomialOrder::compile(&OrderingSpec::RankedWord, &labels2(), None).unwrap();
        // 1 < x13
        assert_eq!(o.compare(&m(&[0, 0, 0]), &m(&[0, 1, 0])), Ordering::Less);
        // x12 < x12 x13 (proper prefix)
        assert_eq!(o.compare(&m(&[1, 0, 0]), &m(&[1, 1, 0])), Ordering::Less);
        // x13 x13 < x12 (first letter x13 < x12)
        assert_eq!(o.compare(&m(&[0, 2, 0]), &m(&[1, 0, 0])), Ordering::Less);
        let g = MonomialOrder::compile(&OrderingSpec::GradedRankedWord, &labels2(), None).unwrap();
        assert_eq!(g.compare(&m(&[0, 2, 0]), &m(&[1, 0, 0])), Ordering::Greater);
    }

    #[test]
    fn deglex_puts_first_generator_highest() {
        let o = MonomialOrder::compile(&OrderingSpec::DegLex, &labels2(), None).unwrap();
        assert_eq!(o.compare(&m(&[0, 1, 0]), &m(&[1, 0, 0])), Ordering::Less);
        assert_eq!(o.compare(&m(&[0, 0, 2]), &m(&[1, 0, 0])), Ordering::Greater);
    }

    #[test]
    fn elimination_dominance() {
        let spec = OrderingSpec::elimination([1], OrderingSpec::DegLex);
        let o = MonomialOrder::compile(&spec, &labels2(), None).unwrap();
        // anything with x13 beats a pure x12/x23 monomial
        assert_eq!(o.compare(&m(&[5, 0, 7]), &m(&[0, 1, 0])), Ordering::Less);
        let bad = OrderingSpec::elimination([0, 1, 2], OrderingSpec::DegLex);
        assert!(MonomialOrder::compile(&bad, &labels2(), None).is_err());
    }

    #[test]
    fn tensor_needs_split() {
        let spec = OrderingSpec::tensor(OrderingSpec::RankedWord, OrderingSpec::RankedWord);
        assert!(MonomialOrder::compile(&spec, &labels2(), None).is_err());
    }

    #[test]
    fn flat_generators_reject_ranked_word_ordering() {
        let labels = vec![Label::Flat(0), Label::Flat(1)];
        assert!(MonomialOrder::compile(&OrderingSpec::RankedWord, &labels, None).is_err());
        assert!(MonomialOrder::compile(&OrderingSpec::DegLex, &labels, None).is_ok());
    }
}
