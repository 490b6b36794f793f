//! Staircases, Gelfand–Kirillov dimension, truncated Hilbert counts and
//! elimination of variables for left ideals.
//!
//! Dimensions are read off the leading monomials of a Gröbner basis under a
//! degree-compatible ordering, where the standard monomials of `A/L` are the
//! exponent vectors outside the monomial ideal generated by those leading
//! monomials.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::algebra::{AlgebraPresentation, Element, Monomial};
use crate::error::{Error, Result};
use crate::groebner::{buchberger, GroebnerBasis, Side};
use crate::linalg::{macaulay_echelon, monomials_of_degree, Echelon};
use crate::ordering::OrderingSpec;

/// Largest number of subsets `check_elimination_lemma` will visit.
pub const SUBSET_LIMIT: u64 = 10_000;

/// Minimal generators of a monomial ideal (an antichain under divisibility).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Staircase {
    n: usize,
    generators: Vec<Monomial>,
}

impl Staircase {
    pub fn from_monomials(n: usize, monomials: impl IntoIterator<Item = Monomial>) -> Self {
        let mut ms: Vec<Monomial> = monomials.into_iter().collect();
        ms.sort_by_key(|m| (m.degree(), m.clone()));
        ms.dedup();
        let mut generators: Vec<Monomial> = Vec::new();
        for m in ms {
            if !generators.iter().any(|g| g.divides(&m)) {
                generators.push(m);
            }
        }
        Staircase { n, generators }
    }

    /// Staircase of the leading monomials of `gb`, taken under `gb`'s ordering.
    pub fn from_basis(a: &AlgebraPresentation, gb: &GroebnerBasis) -> Result<Self> {
        let a = a.with_ordering(gb.ordering.clone())?;
        Ok(Self::from_monomials(a.num_generators(), gb.leading_monomials(&a)))
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    pub fn num_variables(&self) -> usize {
        self.n
    }

    /// Whether `m` lies in the monomial ideal.
    pub fn contains(&self, m: &Monomial) -> bool {
        self.generators.iter().any(|g| g.divides(m))
    }

    pub fn is_antichain(&self) -> bool {
        self.generators.iter().enumerate().all(|(i, g)| {
            self.generators
                .iter()
                .enumerate()
                .all(|(j, h)| i == j || !g.divides(h))
        })
    }
}

/// A nonempty set of generator positions `U`, spanning the monomials `T` in
/// those generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VariableSubset {
    members: BTreeSet<usize>,
}

impl VariableSubset {
    pub fn new(a: &AlgebraPresentation, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let members: BTreeSet<usize> = members.into_iter().collect();
        if members.is_empty() {
            return Err(Error::InvalidSubset("the subset is empty".into()));
        }
        if let Some(&k) = members.iter().find(|&&k| k >= a.num_generators()) {
            return Err(Error::InvalidSubset(format!("generator position {k} is out of range")));
        }
        Ok(VariableSubset { members })
    }

    pub fn members(&self) -> &BTreeSet<usize> {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn mask(&self) -> u64 {
        self.members.iter().fold(0, |m, &k| m | (1 << k))
    }

    /// Whether every term of `f` is a monomial in `U` alone.
    pub fn spans(&self, f: &Element) -> bool {
        f.support_mask() & !self.mask() == 0
    }

    pub fn names(&self, a: &AlgebraPresentation) -> Vec<String> {
        self.members.iter().map(|&k| a.generators()[k].name.clone()).collect()
    }
}

/// Largest `|U|` such that no staircase generator is a monomial in `U` alone.
pub fn gk_dimension_of_staircase(st: &Staircase) -> usize {
    let masks: Vec<u64> = st.generators().iter().map(|g| g.support_mask()).collect();
    if masks.contains(&0) {
        return 0;
    }
    fn blocked(masks: &[u64], u: u64) -> bool {
        masks.iter().any(|&m| m & !u == 0)
    }
    fn search(masks: &[u64], n: usize, k: usize, u: u64, size: usize, best: &mut usize) {
        if size + (n - k) <= *best {
            return;
        }
        if k == n {
            *best = size;
            return;
        }
        let with = u | (1 << k);
        if !blocked(masks, with) {
            search(masks, n, k + 1, with, size + 1, best);
        }
        search(masks, n, k + 1, u, size, best);
    }
    let mut best = 0;
    search(&masks, st.num_variables(), 0, 0, 0, &mut best);
    best
}

/// GK dimension of `A/L` for the left ideal `L` with Gröbner basis `gb`.
pub fn gk_dimension(a: &AlgebraPresentation, gb: &GroebnerBasis) -> Result<usize> {
    Ok(gk_dimension_of_staircase(&Staircase::from_basis(a, gb)?))
}

/// Number of standard monomials of each degree `0..=dmax` outside the staircase.
pub fn hilbert_of_staircase(st: &Staircase, dmax: u32) -> Vec<u64> {
    (0..=dmax)
        .map(|d| {
            monomials_of_degree(st.num_variables(), d)
                .iter()
                .filter(|m| !st.contains(m))
                .count() as u64
        })
        .collect()
}

pub fn hilbert_truncated(a: &AlgebraPresentation, gb: &GroebnerBasis, dmax: u32) -> Result<Vec<u64>> {
    Ok(hilbert_of_staircase(&Staircase::from_basis(a, gb)?, dmax))
}

/// Growth degree of the cumulative counts, estimated by finite differences:
/// the least `r` whose `(r+1)`-th differences vanish at the end of the data.
/// Returns `None` when the data are too short to decide.
pub fn growth_degree(counts: &[u64]) -> Option<usize> {
    let mut seq: Vec<i128> = counts
        .iter()
        .scan(0i128, |acc, &c| {
            *acc += c as i128;
            Some(*acc)
        })
        .collect();
    for k in 0.. {
        if seq.len() < 3 {
            return None;
        }
        seq = seq.windows(2).map(|w| w[1] - w[0]).collect();
        if seq[seq.len() - 2..].iter().all(|&x| x == 0) {
            return Some(k);
        }
    }
    unreachable!()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum EliminationCertificate {
    /// A Gröbner basis under the elimination ordering was computed; an empty
    /// result proves `L ∩ V(T) = 0`.
    Exact,
    /// The algebra is not solvable under the elimination ordering; the span of
    /// `L` up to this degree was echelonized instead. Returned elements are
    /// genuine members of `L ∩ V(T)`; an empty result only rules out members of
    /// degree at most `degree`.
    Truncated { degree: u32 },
}

#[derive(Clone, Debug)]
pub struct EliminationResult {
    pub elements: Vec<Element>,
    pub certificate: EliminationCertificate,
    pub ordering: OrderingSpec,
}

#[derive(Clone, Debug)]
pub struct EliminationConfig {
    /// Highest degree tried when the truncated fallback is needed.
    pub max_degree: u32,
}

impl Default for EliminationConfig {
    fn default() -> Self {
        EliminationConfig { max_degree: 8 }
    }
}

/// The elements of a Gröbner basis of `L` under the ordering that eliminates
/// the generators outside `keep` that are polynomials in `keep` alone.
pub fn eliminate(a: &AlgebraPresentation, gens: &[Element], keep: &VariableSubset) -> Result<Vec<Element>> {
    Ok(eliminate_with(a, gens, keep, &EliminationConfig::default())?.elements)
}

pub fn eliminate_with(
    a: &AlgebraPresentation,
    gens: &[Element],
    keep: &VariableSubset,
    config: &EliminationConfig,
) -> Result<EliminationResult> {
    let n = a.num_generators();
    if keep.len() >= n {
        return Err(Error::InvalidSubset("the kept subset must be proper".into()));
    }
    let eliminated: Vec<usize> = (0..n).filter(|k| !keep.members().contains(k)).collect();
    let ordering = OrderingSpec::elimination(eliminated, OrderingSpec::DegLex);
    let ae = a.with_ordering(ordering.clone())?;

    if ae.check_solvable().is_solvable() {
        let gb = buchberger(&ae, gens, Side::Left)?;
        let elements = gb.elements.into_iter().filter(|g| keep.spans(g)).collect();
        return Ok(EliminationResult {
            elements,
            certificate: EliminationCertificate::Exact,
            ordering,
        });
    }

    let ad = a.with_ordering(OrderingSpec::DegLex)?;
    let gb = buchberger(&ad, gens, Side::Left)?;
    if gb.is_unit(&ad) {
        return Ok(EliminationResult {
            elements: vec![a.one()],
            certificate: EliminationCertificate::Exact,
            ordering,
        });
    }
    let start = gb.elements.iter().map(|g| g.max_degree() as u32).max().unwrap_or(0);
    let mut last = start;
    for d in start..=config.max_degree.max(start) {
        last = d;
        let ech = macaulay_echelon(&ad, &gb.elements, d, ae.order())?;
        let found = kept_rows(&ae, &ech, keep);
        if !found.is_empty() {
            return Ok(EliminationResult {
                elements: found,
                certificate: EliminationCertificate::Truncated { degree: d },
                ordering,
            });
        }
    }
    Ok(EliminationResult {
        elements: Vec::new(),
        certificate: EliminationCertificate::Truncated { degree: last },
        ordering,
    })
}

/// Rows of `ech` lying in `V(T)`, fully reduced against each other, keeping
/// only those whose pivot is not divisible by another kept pivot.
fn kept_rows(ae: &AlgebraPresentation, ech: &Echelon, keep: &VariableSubset) -> Vec<Element> {
    let mask = keep.mask();
    let mut sub = Echelon::new();
    let mut pivots: Vec<Monomial> = Vec::new();
    for (m, row) in ech.rows() {
        if m.support_mask() & !mask == 0 {
            debug_assert!(keep.spans(row));
            sub.insert(ae.order(), row.clone()).expect("pivot is invertible");
            pivots.push(m.clone());
        }
    }
    let minimal = Staircase::from_monomials(ae.num_generators(), pivots);
    let sub = sub.into_reduced(ae.order());
    let mut out: Vec<Element> = sub
        .rows()
        .filter(|(m, _)| minimal.generators().contains(m))
        .map(|(_, row)| row.clone())
        .collect();
    out.sort_by(|x, y| {
        ae.compare(
            &ae.leading_monomial(x).expect("nonzero"),
            &ae.leading_monomial(y).expect("nonzero"),
        )
    });
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct SubsetOutcome {
    pub subset: Vec<String>,
    pub found: usize,
    pub certificate: EliminationCertificate,
}

#[derive(Clone, Debug, Serialize)]
pub struct EliminationLemmaReport {
    pub gk_dimension: usize,
    pub subsets_checked: usize,
    pub outcomes: Vec<SubsetOutcome>,
    /// Subsets of size `d + 1` for which no intersection element was found.
    pub failures: Vec<Vec<String>>,
}

impl EliminationLemmaReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    let k = k.min(n.saturating_sub(k));
    (0..k).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// All `k`-subsets of `0..n` as sorted vectors, in lexicographic order.
pub fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            if n - x < k - cur.len() {
                break;
            }
            cur.push(x);
            rec(n, k, x + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, k, 0, &mut Vec::new(), &mut out);
    out
}

/// For `d = GK.dim A/L`, checks that every `(d+1)`-subset of generators meets
/// `L` in a nonzero element.
pub fn check_elimination_lemma(a: &AlgebraPresentation, gb: &GroebnerBasis) -> Result<EliminationLemmaReport> {
    let n = a.num_generators();
    let d = gk_dimension(a, gb)?;
    let mut report = EliminationLemmaReport {
        gk_dimension: d,
        subsets_checked: 0,
        outcomes: Vec::new(),
        failures: Vec::new(),
    };
    if d + 1 >= n {
        // Only the full generator set has size d + 1 (or none has); it meets
        // every nonzero ideal, and the kept subset must be proper.
        return Ok(report);
    }
    let count = binomial(n as u64, d as u64 + 1);
    if count > SUBSET_LIMIT {
        return Err(Error::SubsetBudget(count, SUBSET_LIMIT));
    }
    let ab = a.with_ordering(gb.ordering.clone())?;
    for s in subsets_of_size(n, d + 1) {
        let u = VariableSubset::new(a, s)?;
        let res = eliminate_with(&ab, &gb.elements, &u, &EliminationConfig::default())?;
        report.subsets_checked += 1;
        if res.elements.is_empty() {
            report.failures.push(u.names(a));
        }
        report.outcomes.push(SubsetOutcome {
            subset: u.names(a),
            found: res.elements.len(),
            certificate: res.certificate,
        });
    }
    Ok(report)
}
