//! Shared fixtures: random ideals and a brute-force linear-algebra oracle.
//!
//! The oracle multiplies through the word-rewriting engine and echelonizes with
//! its own sparse elimination over Q, so it shares no code with the Gröbner
//! engine beyond the rule table.

#![allow(dead_code)]

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use spa::rewrite::product_by_rewriting;
use spa::{AlgebraPresentation, Element, FieldElement, Monomial, QMode};

pub fn two() -> BigRational {
    BigRational::from_integer(2.into())
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_monomial(rng: &mut ChaCha8Rng, n: usize, max_degree: u32) -> Monomial {
    let d = rng.gen_range(0..=max_degree);
    let mut e = vec![0u32; n];
    for _ in 0..d {
        e[rng.gen_range(0..n)] += 1;
    }
    Monomial::new(e)
}

/// A nonzero coefficient: a small integer, times a power of `q` in symbolic mode.
pub fn random_coeff(rng: &mut ChaCha8Rng, mode: &QMode) -> FieldElement {
    let mut k = rng.gen_range(-3i64..=3);
    if k == 0 {
        k = 1;
    }
    let c = FieldElement::from_int(mode, k);
    if mode.is_symbolic() {
        &c * &FieldElement::q_pow(mode, rng.gen_range(-2..=2))
    } else {
        c
    }
}

/// A nonzero element with up to `max_terms` terms of degree at most `max_degree`.
pub fn random_element(rng: &mut ChaCha8Rng, a: &AlgebraPresentation, max_terms: usize, max_degree: u32) -> Element {
    loop {
        let terms = rng.gen_range(1..=max_terms);
        let mut e = Element::zero();
        for _ in 0..terms {
            let m = random_monomial(rng, a.num_generators(), max_degree);
            e.add_term(m, &random_coeff(rng, a.qmode()));
        }
        if !e.is_zero() {
            return e;
        }
    }
}

/// One to three generators of degree at most two, none of them constant.
pub fn random_ideal(rng: &mut ChaCha8Rng, a: &AlgebraPresentation) -> Vec<Element> {
    let k = rng.gen_range(1..=3);
    (0..k)
        .map(|_| loop {
            let e = random_element(rng, a, 3, 2);
            if e.max_degree() > 0 {
                break e;
            }
        })
        .collect()
}

/// Degree first, then exponent vectors lexicographically (first variable most
/// significant). Written out here so the oracle does not use the crate's orders.
fn deglex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

fn monomials_up_to(n: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, k: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if k == n {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur[k] = e;
            rec(n, k + 1, left - e, cur, out);
        }
        cur[k] = 0;
    }
    let mut out = Vec::new();
    rec(n, 0, d, &mut vec![0; n], &mut out);
    out
}

fn value(c: &FieldElement) -> BigRational {
    match c {
        FieldElement::Specialized(v) => v.clone(),
        FieldElement::Symbolic(_) => panic!("the oracle works over Q"),
    }
}

fn product(a: &AlgebraPresentation, u: &Monomial, f: &Element) -> Element {
    let mut out = Element::zero();
    for (v, c) in f.terms() {
        out.add_scaled(c, &product_by_rewriting(a, u, v).unwrap());
    }
    out
}

fn product_right(a: &AlgebraPresentation, f: &Element, u: &Monomial) -> Element {
    let mut out = Element::zero();
    for (v, c) in f.terms() {
        out.add_scaled(c, &product_by_rewriting(a, v, u).unwrap());
    }
    out
}

type Row = BTreeMap<usize, BigRational>;

/// Pivot columns of the span of `rows` (column 0 is the largest monomial).
fn pivot_columns(rows: Vec<Row>) -> Vec<usize> {
    let mut pivots: HashMap<usize, Row> = HashMap::new();
    for mut row in rows {
        while let Some((&col, c)) = row.iter().next() {
            let c = c.clone();
            match pivots.get(&col) {
                Some(p) => {
                    for (k, x) in p {
                        let entry = row.entry(*k).or_insert_with(BigRational::zero);
                        *entry -= &c * x;
                        if entry.is_zero() {
                            row.remove(k);
                        }
                    }
                }
                None => {
                    let inv = BigRational::one() / c;
                    for x in row.values_mut() {
                        *x *= &inv;
                    }
                    pivots.insert(col, row);
                    break;
                }
            }
        }
    }
    pivots.into_keys().collect()
}

/// Per-degree dimensions of `F_d / (L ∩ F_d)` pieces for `d = 0..=dmax`, where
/// `L` is the left (or two-sided) ideal generated by `gens`, found by spanning
/// multiples up to degree `dmax + slack` and raising the slack until the answer
/// stops changing. Requires a specialized algebra.
pub fn oracle_complement_counts(a: &AlgebraPresentation, gens: &[Element], dmax: u32, two_sided: bool) -> Vec<u64> {
    let n = a.num_generators();
    let mut previous: Option<Vec<u64>> = None;
    for slack in 0..=6 {
        let top = dmax + slack;
        let mut cols = monomials_up_to(n, top);
        cols.sort_by(|x, y| deglex(y, x));
        let index: HashMap<Vec<u32>, usize> = cols.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let to_row = |e: &Element| -> Row {
            e.terms()
                .map(|(m, c)| (index[m.exponents()], value(c)))
                .collect()
        };
        let mut rows = Vec::new();
        for f in gens {
            let df = f.max_degree() as u32;
            if df > top {
                continue;
            }
            for m in monomials_up_to(n, top - df) {
                let left = product(a, &Monomial::new(m.clone()), f);
                if two_sided {
                    let dm: u32 = m.iter().sum();
                    for r in monomials_up_to(n, top - df - dm) {
                        rows.push(to_row(&product_right(a, &left, &Monomial::new(r))));
                    }
                } else {
                    rows.push(to_row(&left));
                }
            }
        }
        let mut in_ideal = vec![0u64; dmax as usize + 1];
        for col in pivot_columns(rows) {
            let d: u32 = cols[col].iter().sum();
            if d <= dmax {
                in_ideal[d as usize] += 1;
            }
        }
        let mut all = vec![0u64; dmax as usize + 1];
        for m in monomials_up_to(n, dmax) {
            all[m.iter().sum::<u32>() as usize] += 1;
        }
        let counts: Vec<u64> = all.iter().zip(&in_ideal).map(|(t, i)| t - i).collect();
        if previous.as_ref() == Some(&counts) {
            return counts;
        }
        previous = Some(counts);
    }
    previous.unwrap()
}
