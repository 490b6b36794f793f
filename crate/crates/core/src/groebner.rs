//! Normal forms and Buchberger's algorithm for left and two-sided ideals.
//!
//! Reduction is on the left: a term `c w` of `f` is cancelled with `m * g` where
//! `LM(g)` divides `w` and `m = w / LM(g)`. Among admissible reducers the one
//! with the smallest leading monomial wins, ties going to the earlier position
//! in the basis. Pairs are selected by smallest lcm (normal strategy).

use std::collections::HashMap;

use num_rational::BigRational;
use serde::Serialize;

use crate::algebra::{AlgebraPresentation, Element, Monomial};
use crate::coeffs::FieldElement;
use crate::error::{Error, Result};
use crate::ordering::OrderingSpec;

/// Default number of reduction steps plus processed pairs per computation.
pub const DEFAULT_GB_BUDGET: u64 = 2_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Side {
    Left,
    TwoSided,
}

#[derive(Clone, Debug)]
pub struct GbConfig {
    pub budget: u64,
}

impl Default for GbConfig {
    fn default() -> Self {
        GbConfig {
            budget: DEFAULT_GB_BUDGET,
        }
    }
}

#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    pub algebra: String,
    /// Monic, sorted by ascending leading monomial.
    pub elements: Vec<Element>,
    pub side: Side,
    pub ordering: OrderingSpec,
    pub reduced: bool,
    /// Every coefficient that was inverted during the computation: leading
    /// coefficients before normalization and the pivots `c_w` of reducers.
    pub inverted: Vec<FieldElement>,
}

impl GroebnerBasis {
    pub fn leading_monomials(&self, a: &AlgebraPresentation) -> Vec<Monomial> {
        self.elements
            .iter()
            .filter_map(|g| a.leading_monomial(g))
            .collect()
    }

    /// Whether the ideal is the whole algebra.
    pub fn is_unit(&self, a: &AlgebraPresentation) -> bool {
        self.leading_monomials(a).iter().any(|m| m.is_one())
    }
}

struct Entry {
    lm: Monomial,
    elem: Element,
}

/// Reduction state: the current basis, memoized multiples and step accounting.
struct Reducer<'a> {
    alg: &'a AlgebraPresentation,
    basis: Vec<Entry>,
    /// Positions in `basis` sorted by ascending leading monomial.
    by_lm: Vec<usize>,
    multiples: HashMap<(Monomial, usize), Element>,
    steps: u64,
    budget: u64,
    inverted: Vec<FieldElement>,
}

impl<'a> Reducer<'a> {
    fn new(alg: &'a AlgebraPresentation, budget: u64) -> Self {
        Reducer {
            alg,
            basis: Vec::new(),
            by_lm: Vec::new(),
            multiples: HashMap::new(),
            steps: 0,
            budget,
            inverted: Vec::new(),
        }
    }

    fn note_inverted(&mut self, c: &FieldElement) {
        if !c.is_one() && !self.inverted.contains(c) {
            self.inverted.push(c.clone());
        }
    }

    fn tick(&mut self) -> Result<()> {
        self.steps += 1;
        if self.steps > self.budget {
            return Err(Error::GroebnerBudget {
                budget: self.budget,
                partial: self.basis.iter().map(|e| e.elem.clone()).collect(),
            });
        }
        Ok(())
    }

    /// Makes `f` monic, records its leading coefficient and appends it.
    fn push(&mut self, f: Element) -> Result<usize> {
        let (lm, lc) = self.alg.leading_data(&f)?;
        self.note_inverted(&lc);
        let elem = f.scale(&lc.inv()?);
        self.basis.push(Entry { lm, elem });
        let idx = self.basis.len() - 1;
        let pos = self
            .by_lm
            .partition_point(|&k| self.alg.compare(&self.basis[k].lm, &self.basis[idx].lm).is_le());
        self.by_lm.insert(pos, idx);
        Ok(idx)
    }

    fn reducer_for(&self, w: &Monomial) -> Option<usize> {
        self.by_lm.iter().copied().find(|&k| self.basis[k].lm.divides(w))
    }

    fn multiple(&mut self, m: &Monomial, k: usize) -> Result<Element> {
        if m.is_one() {
            return Ok(self.basis[k].elem.clone());
        }
        let key = (m.clone(), k);
        if let Some(p) = self.multiples.get(&key) {
            return Ok(p.clone());
        }
        let p = self.alg.left_multiply(m, &self.basis[k].elem)?;
        self.multiples.insert(key, p.clone());
        Ok(p)
    }

    /// Full left normal form of `f`.
    fn reduce(&mut self, f: &Element) -> Result<Element> {
        let mut f = f.clone();
        let mut rem = Element::zero();
        while let Some((w, c)) = f.leading_term(self.alg.order()).map(|(m, c)| (m.clone(), c.clone())) {
            self.tick()?;
            match self.reducer_for(&w) {
                Some(k) => {
                    let m = w.div(&self.basis[k].lm).expect("divisible");
                    let p = self.multiple(&m, k)?;
                    let cw = p.coeff(&w).cloned().ok_or_else(|| {
                        Error::InvalidOrdering(format!(
                            "ordering {} is not compatible with multiplication",
                            self.alg.ordering()
                        ))
                    })?;
                    self.note_inverted(&cw);
                    let factor = -&c.checked_div(&cw)?;
                    f.add_scaled(&factor, &p);
                    debug_assert!(f.coeff(&w).is_none());
                }
                None => {
                    f.remove(&w);
                    rem.add_term(w, &c);
                }
            }
        }
        Ok(rem)
    }
}

/// Left normal form of `f` with respect to `basis` (which need not be a
/// Gröbner basis).
pub fn normal_form(a: &AlgebraPresentation, f: &Element, basis: &[Element]) -> Result<Element> {
    let mut r = Reducer::new(a, a.step_budget().max(DEFAULT_GB_BUDGET));
    for g in basis.iter().filter(|g| !g.is_zero()) {
        r.push(g.clone())?;
    }
    r.reduce(f)
}

/// `S(f, g) = (w/LM f) f / c_f - (w/LM g) g / c_g` with `w = lcm(LM f, LM g)`
/// and `c_f`, `c_g` the coefficients of `w` in the two multiples.
pub fn s_polynomial(a: &AlgebraPresentation, f: &Element, g: &Element) -> Result<Element> {
    let (lf, _) = a.leading_data(f)?;
    let (lg, _) = a.leading_data(g)?;
    let w = lf.lcm(&lg);
    let pf = a.left_multiply(&w.div(&lf).unwrap(), f)?;
    let pg = a.left_multiply(&w.div(&lg).unwrap(), g)?;
    let cf = pf.coeff(&w).cloned().ok_or(Error::ZeroElement)?;
    let cg = pg.coeff(&w).cloned().ok_or(Error::ZeroElement)?;
    Ok(pf.scale(&cf.inv()?).sub(&pg.scale(&cg.inv()?)))
}

pub fn buchberger(a: &AlgebraPresentation, generators: &[Element], side: Side) -> Result<GroebnerBasis> {
    buchberger_with(a, generators, side, &GbConfig::default())
}

/// Buchberger's algorithm; the result is reduced.
///
/// Two-sided ideals are handled by also closing under right multiplication by
/// every generator. On budget exhaustion the error carries the partial basis.
pub fn buchberger_with(
    a: &AlgebraPresentation,
    generators: &[Element],
    side: Side,
    config: &GbConfig,
) -> Result<GroebnerBasis> {
    let n = a.num_generators();
    let mut r = Reducer::new(a, config.budget);
    let mut pairs: Vec<(Monomial, usize, usize)> = Vec::new();
    let mut right_tasks: Vec<(usize, usize)> = Vec::new();
    let mut pending: Vec<Element> = generators.iter().filter(|g| !g.is_zero()).cloned().collect();
    pending.reverse();

    loop {
        let candidate = if let Some(g) = pending.pop() {
            Some(g)
        } else if let Some(best) = (0..pairs.len()).min_by(|&x, &y| {
            a.compare(&pairs[x].0, &pairs[y].0)
                .then((pairs[x].1, pairs[x].2).cmp(&(pairs[y].1, pairs[y].2)))
        }) {
            let (_, i, j) = pairs.swap_remove(best);
            r.tick()?;
            Some(s_polynomial(a, &r.basis[i].elem, &r.basis[j].elem)?)
        } else if let Some((k, v)) = right_tasks.pop() {
            r.tick()?;
            Some(a.right_multiply(&r.basis[k].elem, &Monomial::var(n, v))?)
        } else {
            None
        };
        let Some(f) = candidate else { break };
        let h = r.reduce(&f)?;
        if h.is_zero() {
            continue;
        }
        let idx = r.push(h)?;
        if r.basis[idx].lm.is_one() {
            let one = a.one();
            return Ok(GroebnerBasis {
                algebra: a.name().to_string(),
                elements: vec![one],
                side,
                ordering: a.ordering().clone(),
                reduced: true,
                inverted: r.inverted,
            });
        }
        for i in 0..idx {
            let w = r.basis[i].lm.lcm(&r.basis[idx].lm);
            pairs.push((w, i, idx));
        }
        if side == Side::TwoSided {
            for v in (0..n).rev() {
                right_tasks.push((idx, v));
            }
        }
    }

    let elements: Vec<Element> = r.basis.iter().map(|e| e.elem.clone()).collect();
    let mut inverted = r.inverted;
    let remaining = config.budget.saturating_sub(r.steps);
    let mut gb = interreduce(a, elements, side, remaining)?;
    for c in gb.inverted.drain(..) {
        if !inverted.contains(&c) {
            inverted.push(c);
        }
    }
    gb.inverted = inverted;
    Ok(gb)
}

/// Interreduces `elements`: drops elements that reduce to zero, reduces every
/// element fully against the others and makes everything monic. Applied to a
/// Gröbner basis this yields the reduced Gröbner basis.
pub fn reduce_basis(a: &AlgebraPresentation, elements: &[Element], side: Side) -> Result<GroebnerBasis> {
    interreduce(a, elements.to_vec(), side, DEFAULT_GB_BUDGET)
}

fn interreduce(a: &AlgebraPresentation, elements: Vec<Element>, side: Side, budget: u64) -> Result<GroebnerBasis> {
    let mut inverted: Vec<FieldElement> = Vec::new();
    let mut cur: Vec<Element> = Vec::new();
    for g in elements.into_iter().filter(|g| !g.is_zero()) {
        let (_, lc) = a.leading_data(&g)?;
        if !lc.is_one() && !inverted.contains(&lc) {
            inverted.push(lc.clone());
        }
        cur.push(g.scale(&lc.inv()?));
    }
    let mut spent = 0u64;
    loop {
        let mut changed = false;
        let mut i = 0;
        while i < cur.len() {
            let mut r = Reducer::new(a, budget.saturating_sub(spent));
            for (k, g) in cur.iter().enumerate() {
                if k != i {
                    r.push(g.clone())?;
                }
            }
            let h = r.reduce(&cur[i])?;
            spent += r.steps;
            for c in r.inverted {
                if !inverted.contains(&c) {
                    inverted.push(c);
                }
            }
            if h.is_zero() {
                cur.remove(i);
                changed = true;
                continue;
            }
            let (_, lc) = a.leading_data(&h)?;
            if !lc.is_one() && !inverted.contains(&lc) {
                inverted.push(lc.clone());
            }
            let h = h.scale(&lc.inv()?);
            if h != cur[i] {
                cur[i] = h;
                changed = true;
            }
            i += 1;
        }
        if !changed {
            break;
        }
    }
    cur.sort_by(|x, y| {
        a.compare(
            &a.leading_monomial(x).expect("nonzero"),
            &a.leading_monomial(y).expect("nonzero"),
        )
    });
    Ok(GroebnerBasis {
        algebra: a.name().to_string(),
        elements: cur,
        side,
        ordering: a.ordering().clone(),
        reduced: true,
        inverted,
    })
}

/// `f` lies in the ideal iff its normal form modulo a Gröbner basis vanishes.
pub fn ideal_membership(a: &AlgebraPresentation, f: &Element, gb: &GroebnerBasis) -> Result<bool> {
    Ok(normal_form(a, f, &gb.elements)?.is_zero())
}

/// Checks the Buchberger criterion: every S-polynomial (and, for two-sided
/// ideals, every right product with a generator) reduces to zero.
pub fn is_groebner_basis(a: &AlgebraPresentation, basis: &[Element], side: Side) -> Result<bool> {
    let basis: Vec<&Element> = basis.iter().filter(|g| !g.is_zero()).collect();
    let owned: Vec<Element> = basis.iter().map(|g| (*g).clone()).collect();
    for (i, f) in basis.iter().enumerate() {
        for g in &basis[i + 1..] {
            if !normal_form(a, &s_polynomial(a, f, g)?, &owned)?.is_zero() {
                return Ok(false);
            }
        }
        if side == Side::TwoSided {
            for v in 0..a.num_generators() {
                let p = a.right_multiply(f, &Monomial::var(a.num_generators(), v))?;
                if !normal_form(a, &p, &owned)?.is_zero() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Coherence {
    /// Specializing the symbolic basis gives the basis computed at the value.
    Coherent,
    /// No degeneracy was detected but the two bases differ.
    Differs,
    /// An inverted coefficient vanishes or has a pole at the value.
    Degenerate { witnesses: Vec<String> },
}

#[derive(Clone, Debug, Serialize)]
pub struct SpecializationReport {
    pub value: String,
    pub symbolic: Vec<String>,
    pub specialized_symbolic: Vec<String>,
    pub direct: Vec<String>,
    pub outcome: Coherence,
}

/// Compares "compute over `Q(q)`, then set `q = value`" with "set `q = value`,
/// then compute over `Q`".
pub fn specialization_coherence(
    a: &AlgebraPresentation,
    generators: &[Element],
    side: Side,
    value: &BigRational,
) -> Result<SpecializationReport> {
    let av = a.specialize(value)?;
    let gb = buchberger(a, generators, side)?;
    let mut witnesses = Vec::new();
    for c in &gb.inverted {
        match c.specialize(value) {
            Ok(v) if v.is_zero() => witnesses.push(format!("{c} vanishes")),
            Ok(_) => {}
            Err(_) => witnesses.push(format!("{c} has a pole")),
        }
    }
    let mut spec_sym = Vec::new();
    for g in &gb.elements {
        match g.try_map_coeffs(|c| Ok(c.specialize(value)?)) {
            Ok(e) => spec_sym.push(e),
            Err(_) => witnesses.push(format!("basis element {} has a pole", a.format_element(g))),
        }
    }
    let gens_v = generators
        .iter()
        .map(|g| g.try_map_coeffs(|c| Ok(c.specialize(value)?)))
        .collect::<Result<Vec<_>>>()?;
    let direct = buchberger(&av, &gens_v, side)?;
    let outcome = if !witnesses.is_empty() {
        Coherence::Degenerate { witnesses }
    } else if spec_sym == direct.elements {
        Coherence::Coherent
    } else {
        Coherence::Differs
    };
    Ok(SpecializationReport {
        value: value.to_string(),
        symbolic: gb.elements.iter().map(|g| a.format_element(g)).collect(),
        specialized_symbolic: spec_sym.iter().map(|g| av.format_element(g)).collect(),
        direct: direct.elements.iter().map(|g| av.format_element(g)).collect(),
        outcome,
    })
}
