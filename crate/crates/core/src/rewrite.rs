//! Word-level rewriting in the free algebra on the generators.
//!
//! Words are reduced by repeatedly applying a commutation rule at the leftmost
//! descent (`a_j a_i` with `j > i`). This path never touches the memoized product
//! in [`crate::algebra`], so it serves as an independent check of it and as the
//! engine behind the overlap (diamond lemma) test.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::{AlgebraPresentation, Element, Monomial};
use crate::coeffs::FieldElement;
use crate::error::{Error, Result};

pub type Word = Vec<usize>;

/// A linear combination of words.
#[derive(Clone, Debug, Default)]
pub struct WordPoly(BTreeMap<Word, FieldElement>);

impl WordPoly {
    pub fn word(c: FieldElement, w: Word) -> Self {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert(w, c);
        }
        WordPoly(m)
    }

    fn add_term(&mut self, w: Word, c: &FieldElement) {
        if c.is_zero() {
            return;
        }
        match self.0.get_mut(&w) {
            Some(old) => {
                let s = &*old + c;
                if s.is_zero() {
                    self.0.remove(&w);
                } else {
                    *old = s;
                }
            }
            None => {
                self.0.insert(w, c.clone());
            }
        }
    }
}

fn descent(w: &[usize]) -> Option<usize> {
    w.windows(2).position(|p| p[0] > p[1])
}

fn word_of(m: &Monomial) -> Word {
    m.letters().collect()
}

/// Rewrites `w` once at position `pos` (which must be a descent).
fn rewrite_at(a: &AlgebraPresentation, w: &[usize], pos: usize, c: &FieldElement) -> Result<WordPoly> {
    let (j, i) = (w[pos], w[pos + 1]);
    let rule = a
        .rule(j, i)
        .ok_or_else(|| Error::MissingRule(a.generators()[j].name.clone(), a.generators()[i].name.clone()))?;
    let mut out = WordPoly::default();
    let mut swapped = w.to_vec();
    swapped.swap(pos, pos + 1);
    out.add_term(swapped, &(c * &rule.lambda));
    for (m, t) in rule.tail.terms() {
        let mut nw = w[..pos].to_vec();
        nw.extend(word_of(m));
        nw.extend_from_slice(&w[pos + 2..]);
        out.add_term(nw, &(c * t));
    }
    Ok(out)
}

/// Fully reduces a word combination to standard form (leftmost-descent strategy).
pub fn reduce(a: &AlgebraPresentation, p: WordPoly) -> Result<Element> {
    let n = a.num_generators();
    let budget = a.step_budget();
    let mut todo = p;
    let mut done = Element::zero();
    let mut steps = 0u64;
    while let Some((w, c)) = todo.0.pop_first() {
        match descent(&w) {
            None => {
                let mut e = vec![0u32; n];
                for &k in &w {
                    e[k] += 1;
                }
                done.add_term(Monomial::new(e), &c);
            }
            Some(pos) => {
                steps += 1;
                if steps > budget {
                    return Err(Error::NontermLimit { budget });
                }
                for (nw, nc) in rewrite_at(a, &w, pos, &c)?.0 {
                    todo.add_term(nw, &nc);
                }
            }
        }
    }
    Ok(done)
}

/// `u * v` computed by concatenating words and rewriting.
pub fn product_by_rewriting(a: &AlgebraPresentation, u: &Monomial, v: &Monomial) -> Result<Element> {
    let mut w = word_of(u);
    w.extend(word_of(v));
    reduce(a, WordPoly::word(FieldElement::one(a.qmode()), w))
}

#[derive(Clone, Debug, Serialize)]
pub struct OverlapFailure {
    pub triple: [String; 3],
    /// First route minus second route, printed.
    pub difference: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct PbwReport {
    pub algebra: String,
    pub triples_checked: usize,
    pub failures: Vec<OverlapFailure>,
}

impl PbwReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Resolves every overlap `a_k a_j a_i` (`k > j > i`) both ways and compares.
///
/// A full pass means the rewriting system is confluent, so the standard
/// monomials form a basis and the defining relations are a Gröbner basis of the
/// ideal they generate in the free algebra, with leading words `a_j a_i`.
pub fn pbw_consistency(a: &AlgebraPresentation) -> Result<PbwReport> {
    let n = a.num_generators();
    let one = FieldElement::one(a.qmode());
    let mut report = PbwReport {
        algebra: a.name().to_string(),
        triples_checked: 0,
        failures: Vec::new(),
    };
    for k in 0..n {
        for j in 0..k {
            for i in 0..j {
                let w = vec![k, j, i];
                let first = reduce(a, rewrite_at(a, &w, 0, &one)?)?;
                let second = reduce(a, rewrite_at(a, &w, 1, &one)?)?;
                report.triples_checked += 1;
                if first != second {
                    let g = a.generators();
                    report.failures.push(OverlapFailure {
                        triple: [g[k].name.clone(), g[j].name.clone(), g[i].name.clone()],
                        difference: a.format_element(&first.sub(&second)),
                    });
                }
            }
        }
    }
    Ok(report)
}
