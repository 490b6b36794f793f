//! Presentations of the positive and negative parts of `U_q(A_N)` through the
//! Jimbo relations, their tensor product and their associated graded algebra.

use serde::Serialize;

use crate::algebra::{AlgebraPresentation, CommutationRule, Element, Generator, GeneratorIndex, Label, Monomial};
use crate::coeffs::{FieldElement, LaurentPoly, QMode};
use crate::error::{Error, Result};
use crate::ordering::OrderingSpec;

/// The six configurations of an ordered pair `((i,j),(m,n))`, `(i,j) <_lex (m,n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum PairClass {
    /// `i = m < j < n`
    C1,
    /// `i < m < n < j`
    C2,
    /// `i < m < j = n`
    C3,
    /// `i < m < j < n`
    C4,
    /// `i < j = m < n`
    C5,
    /// `i < j < m < n`
    C6,
}

/// All `(i, j)` with `1 <= i < j <= N + 1`, in lexicographic order.
pub fn build_lambda(rank: u32) -> Result<Vec<GeneratorIndex>> {
    if rank < 1 {
        return Err(Error::InvalidRank);
    }
    let mut out = Vec::with_capacity((rank * (rank + 1) / 2) as usize);
    for i in 1..=rank {
        for j in i + 1..=rank + 1 {
            out.push(GeneratorIndex::new(i, j));
        }
    }
    Ok(out)
}

pub fn classify_pair(p: GeneratorIndex, r: GeneratorIndex) -> Result<PairClass> {
    if p >= r {
        return Err(Error::UnorderedPair(p.to_string(), r.to_string()));
    }
    let (i, j, m, n) = (p.i, p.j, r.i, r.j);
    Ok(if i == m {
        PairClass::C1
    } else if n < j {
        PairClass::C2
    } else if n == j {
        PairClass::C3
    } else if m < j {
        PairClass::C4
    } else if m == j {
        PairClass::C5
    } else {
        PairClass::C6
    })
}

fn position(lambda: &[GeneratorIndex], g: GeneratorIndex) -> usize {
    lambda.binary_search(&g).expect("index in Lambda_N")
}

/// The rewriting rule `x_mn x_ij = lambda x_ij x_mn + tail` for `p = (i,j) <_lex (m,n) = r`,
/// with generator positions taken from `lambda`.
///
/// `f_5 = x_mn x_ij - q^2 x_ij x_mn + q x_in` is read as
/// `x_mn x_ij = q^2 x_ij x_mn - q x_in`.
pub fn jimbo_rule(
    lambda: &[GeneratorIndex],
    p: GeneratorIndex,
    r: GeneratorIndex,
    qmode: &QMode,
) -> Result<CommutationRule> {
    let class = classify_pair(p, r)?;
    let n = lambda.len();
    let (i, j, m, nn) = (p.i, p.j, r.i, r.j);
    let var = |a: u32, b: u32| Monomial::var(n, position(lambda, GeneratorIndex::new(a, b)));
    let (lam, tail) = match class {
        PairClass::C1 | PairClass::C3 => (FieldElement::q_pow(qmode, -2), Element::zero()),
        PairClass::C2 | PairClass::C6 => (FieldElement::one(qmode), Element::zero()),
        PairClass::C4 => {
            let c = LaurentPoly::q_pow(2).sub(&LaurentPoly::q_pow(-2)).neg();
            let mono = var(i, nn).mul(&var(m, j));
            (FieldElement::one(qmode), Element::term(FieldElement::from_laurent(qmode, &c), mono))
        }
        PairClass::C5 => {
            let c = LaurentPoly::q_pow(1).neg();
            (
                FieldElement::q_pow(qmode, 2),
                Element::term(FieldElement::from_laurent(qmode, &c), var(i, nn)),
            )
        }
    };
    Ok(CommutationRule {
        left: position(lambda, r),
        right: position(lambda, p),
        lambda: lam,
        tail,
    })
}

fn check_qmode(qmode: &QMode) -> Result<()> {
    if let QMode::Specialized(v) = qmode {
        crate::coeffs::QMode::specialized(v.clone())?;
    }
    Ok(())
}

fn build_part(rank: u32, qmode: QMode, letter: char, name: String, notes: Vec<String>) -> Result<AlgebraPresentation> {
    check_qmode(&qmode)?;
    let lambda = build_lambda(rank)?;
    let generators = lambda
        .iter()
        .map(|g| Generator {
            name: format!("{letter}[{},{}]", g.i, g.j),
            label: Label::Quantum(*g),
        })
        .collect();
    let mut rules = Vec::new();
    for (a, &p) in lambda.iter().enumerate() {
        for &r in &lambda[a + 1..] {
            rules.push(jimbo_rule(&lambda, p, r, &qmode)?);
        }
    }
    let alg = AlgebraPresentation::new(name, generators, rules, OrderingSpec::RankedWord, qmode, None)?.with_notes(notes);
    let report = alg.check_solvable();
    if !report.is_solvable() {
        return Err(Error::InvalidPresentation(format!(
            "Jimbo presentation failed the solvability check: {:?}",
            report.violations
        )));
    }
    Ok(alg)
}

/// `U_q^+(A_N)` on generators `x[i,j]` with the word ordering `RankedWord`.
pub fn build_uq_plus(rank: u32, qmode: QMode) -> Result<AlgebraPresentation> {
    build_part(rank, qmode, 'x', format!("uq+ {rank}"), Vec::new())
}

/// `U_q^-(A_N)` on generators `y[i,j]`, using the same relation schema as the
/// positive part.
pub fn build_uq_minus(rank: u32, qmode: QMode) -> Result<AlgebraPresentation> {
    build_part(
        rank,
        qmode,
        'y',
        format!("uq- {rank}"),
        vec!["relations of uq- are assumed to mirror the Jimbo relations of uq+ on y[i,j]".into()],
    )
}

/// `A1 (x) A2`: generators of `A1` then `A2`, cross pairs commute, block ordering.
pub fn tensor_product(a1: &AlgebraPresentation, a2: &AlgebraPresentation) -> Result<AlgebraPresentation> {
    if a1.qmode() != a2.qmode() {
        return Err(crate::coeffs::CoeffError::ModeMismatch.into());
    }
    if a1.split().is_some() || a2.split().is_some() {
        return Err(Error::InvalidPresentation("nested tensor products are not supported".into()));
    }
    let n1 = a1.num_generators();
    let n2 = a2.num_generators();
    let n = n1 + n2;
    let widen = |e: &Element, offset: usize, width: usize| -> Element {
        Element::from_terms(e.terms().map(|(m, c)| {
            let mut v = vec![0u32; n];
            v[offset..offset + width].copy_from_slice(m.exponents());
            (Monomial::new(v), c.clone())
        }))
    };
    let mut generators: Vec<Generator> = a1.generators().to_vec();
    generators.extend(a2.generators().iter().cloned());
    let mut rules = Vec::new();
    for r in a1.rules() {
        rules.push(CommutationRule {
            left: r.left,
            right: r.right,
            lambda: r.lambda.clone(),
            tail: widen(&r.tail, 0, n1),
        });
    }
    for r in a2.rules() {
        rules.push(CommutationRule {
            left: r.left + n1,
            right: r.right + n1,
            lambda: r.lambda.clone(),
            tail: widen(&r.tail, n1, n2),
        });
    }
    for j in n1..n {
        for i in 0..n1 {
            rules.push(CommutationRule {
                left: j,
                right: i,
                lambda: FieldElement::one(a1.qmode()),
                tail: Element::zero(),
            });
        }
    }
    let ordering = OrderingSpec::tensor(a1.ordering().clone(), a2.ordering().clone());
    let mut notes: Vec<String> = a1.notes().to_vec();
    notes.extend(a2.notes().iter().cloned());
    notes.push("generators of different tensor factors commute".into());
    Ok(AlgebraPresentation::new(
        format!("{} (x) {}", a1.name(), a2.name()),
        generators,
        rules,
        ordering,
        a1.qmode().clone(),
        Some(n1),
    )?
    .with_notes(notes)
    .with_step_budget(a1.step_budget()))
}

/// The associated graded algebra for the degree filtration with every generator
/// in degree 1: each tail keeps only its quadratic part; ordering `GradedRankedWord`.
pub fn associated_graded(a: &AlgebraPresentation) -> Result<AlgebraPresentation> {
    if a.split().is_some() {
        return Err(Error::InvalidPresentation(
            "associated_graded expects a single quantum presentation".into(),
        ));
    }
    let rules = a
        .rules()
        .map(|r| CommutationRule {
            left: r.left,
            right: r.right,
            lambda: r.lambda.clone(),
            tail: Element::from_terms(
                r.tail
                    .terms()
                    .filter(|(m, _)| m.degree() == 2)
                    .map(|(m, c)| (m.clone(), c.clone())),
            ),
        })
        .collect();
    let name = if a.name().starts_with("gr(") {
        a.name().to_string()
    } else {
        format!("gr({})", a.name())
    };
    Ok(AlgebraPresentation::new(
        name,
        a.generators().to_vec(),
        rules,
        OrderingSpec::GradedRankedWord,
        a.qmode().clone(),
        None,
    )?
    .with_notes(a.notes().to_vec())
    .with_step_budget(a.step_budget()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(i: u32, j: u32) -> GeneratorIndex {
        GeneratorIndex::new(i, j)
    }

    #[test]
    fn lambda_sets() {
        assert_eq!(build_lambda(1).unwrap(), vec![g(1, 2)]);
        assert_eq!(build_lambda(2).unwrap(), vec![g(1, 2), g(1, 3), g(2, 3)]);
        let l3 = build_lambda(3).unwrap();
        assert_eq!(l3.len(), 6);
        assert_eq!(*l3.last().unwrap(), g(3, 4));
        assert_eq!(build_lambda(0), Err(Error::InvalidRank));
    }

    #[test]
    fn pair_classes() {
        assert_eq!(classify_pair(g(1, 2), g(1, 3)).unwrap(), PairClass::C1);
        assert_eq!(classify_pair(g(1, 2), g(2, 3)).unwrap(), PairClass::C5);
        assert_eq!(classify_pair(g(1, 3), g(2, 4)).unwrap(), PairClass::C4);
        assert_eq!(classify_pair(g(1, 4), g(2, 3)).unwrap(), PairClass::C2);
        assert_eq!(classify_pair(g(1, 3), g(2, 3)).unwrap(), PairClass::C3);
        assert_eq!(classify_pair(g(1, 2), g(3, 4)).unwrap(), PairClass::C6);
        assert!(matches!(classify_pair(g(2, 3), g(1, 2)), Err(Error::UnorderedPair(..))));
        assert!(classify_pair(g(1, 2), g(1, 2)).is_err());
    }

    /// Brute-force classification straight from the defining inequalities.
    fn classes_by_definition(p: GeneratorIndex, r: GeneratorIndex) -> Vec<PairClass> {
        let (i, j, m, n) = (p.i, p.j, r.i, r.j);
        let mut v = Vec::new();
        if i == m && m < j && j < n {
            v.push(PairClass::C1);
        }
        if i < m && m < n && n < j {
            v.push(PairClass::C2);
        }
        if i < m && m < j && j == n {
            v.push(PairClass::C3);
        }
        if i < m && m < j && j < n {
            v.push(PairClass::C4);
        }
        if i < j && j == m && m < n {
            v.push(PairClass::C5);
        }
        if i < j && j < m && m < n {
            v.push(PairClass::C6);
        }
        v
    }

    #[test]
    fn classification_is_a_partition_up_to_rank_5() {
        for rank in 1..=5 {
            let l = build_lambda(rank).unwrap();
            for (a, &p) in l.iter().enumerate() {
                for &r in &l[a + 1..] {
                    let by_def = classes_by_definition(p, r);
                    assert_eq!(by_def.len(), 1, "{p} {r}");
                    assert_eq!(classify_pair(p, r).unwrap(), by_def[0]);
                }
            }
        }
    }
}
