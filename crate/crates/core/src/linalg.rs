//! Exact row echelon forms over the coefficient field, with columns indexed by
//! monomials and ordered by a monomial ordering (largest first).

use std::collections::HashMap;

use crate::algebra::{AlgebraPresentation, Element, Monomial};
use crate::error::Result;
use crate::ordering::MonomialOrder;

/// Rows in echelon form, keyed by pivot (leading) monomial; every stored row
/// has coefficient 1 at its pivot.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    pivots: HashMap<Monomial, Element>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = &Monomial> {
        self.pivots.keys()
    }

    pub fn rows(&self) -> impl Iterator<Item = (&Monomial, &Element)> {
        self.pivots.iter()
    }

    /// Adds `row`; returns whether it was independent of the rows so far.
    pub fn insert(&mut self, order: &MonomialOrder, row: Element) -> Result<bool> {
        let mut row = row;
        loop {
            let Some((w, c)) = row.leading_term(order).map(|(m, c)| (m.clone(), c.clone())) else {
                return Ok(false);
            };
            match self.pivots.get(&w) {
                Some(p) => row.add_scaled(&-c, p),
                None => {
                    let row = row.scale(&c.inv()?);
                    self.pivots.insert(w, row);
                    return Ok(true);
                }
            }
        }
    }

    /// Reduced row echelon form: every row is zero at every other pivot.
    pub fn into_reduced(self, order: &MonomialOrder) -> Echelon {
        let mut keys: Vec<Monomial> = self.pivots.keys().cloned().collect();
        keys.sort_by(|x, y| order.compare(x, y));
        let mut done = Echelon::new();
        let mut src = self.pivots;
        for p in keys {
            let mut row = src.remove(&p).expect("pivot row");
            let lead = row.remove(&p).expect("pivot term");
            let mut row = done.reduce(&row);
            row.add_term(p.clone(), &lead);
            done.pivots.insert(p, row);
        }
        done
    }

    /// Eliminates every pivot monomial from `row`.
    pub fn reduce(&self, row: &Element) -> Element {
        let mut row = row.clone();
        loop {
            let hit = row
                .terms()
                .find(|(m, _)| self.pivots.contains_key(*m))
                .map(|(m, c)| (m.clone(), c.clone()));
            match hit {
                Some((m, c)) => row.add_scaled(&-c, &self.pivots[&m]),
                None => return row,
            }
        }
    }
}

/// All monomials in `n` variables of total degree exactly `d`.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, k: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if k == n - 1 {
            cur[k] = left;
            out.push(Monomial::new(cur.clone()));
            cur[k] = 0;
            return;
        }
        for e in (0..=left).rev() {
            cur[k] = e;
            rec(n, k + 1, left - e, cur, out);
        }
        cur[k] = 0;
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Monomial::new(Vec::new()));
        }
        return out;
    }
    rec(n, 0, d, &mut vec![0; n], &mut out);
    out
}

/// Echelon form of `{ m * g : g in gens, deg m + deg g <= max_degree }`, using
/// the algebra's product and echelonized under `order`.
///
/// When `gens` is a Gröbner basis under a degree-compatible ordering, the span is
/// exactly the part of the left ideal of degree at most `max_degree`.
pub fn macaulay_echelon(
    a: &AlgebraPresentation,
    gens: &[Element],
    max_degree: u32,
    order: &MonomialOrder,
) -> Result<Echelon> {
    let n = a.num_generators();
    let mut ech = Echelon::new();
    for g in gens.iter().filter(|g| !g.is_zero()) {
        let dg = g.max_degree() as u32;
        if dg > max_degree {
            continue;
        }
        for d in 0..=max_degree - dg {
            for m in monomials_of_degree(n, d) {
                ech.insert(order, a.left_multiply(&m, g)?)?;
            }
        }
    }
    Ok(ech)
}
