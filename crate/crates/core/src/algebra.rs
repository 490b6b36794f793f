//! PBW monomials, elements, commutation rules and multiplication in a solvable
//! polynomial algebra.
//!
//! An algebra is given by generators `a_0, ..., a_{n-1}` (in PBW order) and, for
//! every pair `j > i`, a rule `a_j a_i = lambda a_i a_j + tail`. Elements are
//! linear combinations of standard monomials `a_0^e0 ... a_{n-1}^e{n-1}`, stored
//! as exponent vectors.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use num_rational::BigRational;
use serde::Serialize;

use crate::coeffs::{FieldElement, QMode};
use crate::error::{Error, Result};
use crate::ordering::{MonomialOrder, OrderingSpec};

/// Default number of rewrite steps allowed per product.
pub const DEFAULT_STEP_BUDGET: u64 = 2_000_000;
const MAX_DEPTH: u32 = 4_000;

/// An index `(i, j)` with `i < j`, naming the generator `x_ij`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GeneratorIndex {
    pub i: u32,
    pub j: u32,
}

impl GeneratorIndex {
    pub fn new(i: u32, j: u32) -> Self {
        GeneratorIndex { i, j }
    }
}

impl fmt::Display for GeneratorIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.i, self.j)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Label {
    Quantum(GeneratorIndex),
    Flat(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub label: Label,
}

/// A standard monomial as an exponent vector over the generators.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, k: usize) -> Self {
        let mut e = vec![0; n];
        e[k] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn mul(&self, o: &Self) -> Self {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    /// `self / o` when `o` divides `self` componentwise.
    pub fn div(&self, o: &Self) -> Option<Self> {
        if !o.divides(self) {
            return None;
        }
        Some(Monomial(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect()))
    }

    pub fn divides(&self, o: &Self) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, o: &Self) -> Self {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| *a.max(b)).collect())
    }

    /// Bit `k` set when generator `k` occurs.
    pub fn support_mask(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0u64, |m, (k, _)| m | (1 << k))
    }

    fn inc(&self, k: usize) -> Self {
        let mut e = self.0.clone();
        e[k] += 1;
        Monomial(e)
    }

    fn dec(&self, k: usize) -> Self {
        let mut e = self.0.clone();
        e[k] -= 1;
        Monomial(e)
    }

    fn max_letter(&self) -> Option<usize> {
        self.0.iter().rposition(|&e| e > 0)
    }

    fn min_letter(&self) -> Option<usize> {
        self.0.iter().position(|&e| e > 0)
    }

    /// Letters of the word in PBW order.
    pub fn letters(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(k, &e)| std::iter::repeat_n(k, e as usize))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// A finite linear combination of standard monomials with nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct Element {
    terms: BTreeMap<Monomial, FieldElement>,
}

impl Element {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(c: FieldElement, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Element { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, FieldElement)>>(it: I) -> Self {
        let mut e = Element::zero();
        for (m, c) in it {
            e.add_term(m, &c);
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &FieldElement)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&FieldElement> {
        self.terms.get(m)
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.keys()
    }

    pub fn add_term(&mut self, m: Monomial, c: &FieldElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                let s = &*old + c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, c: &FieldElement, other: &Element) {
        if c.is_zero() {
            return;
        }
        let unit = c.is_one();
        for (m, x) in &other.terms {
            if unit {
                self.add_term(m.clone(), x);
            } else {
                self.add_term(m.clone(), &(c * x));
            }
        }
    }

    pub fn add(&self, o: &Element) -> Element {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c);
        }
        r
    }

    pub fn sub(&self, o: &Element) -> Element {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), &-c);
        }
        r
    }

    pub fn scale(&self, c: &FieldElement) -> Element {
        if c.is_zero() {
            return Element::zero();
        }
        Element {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), c * x)).collect(),
        }
    }

    pub fn neg(&self) -> Element {
        Element {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), -x)).collect(),
        }
    }

    pub fn remove(&mut self, m: &Monomial) -> Option<FieldElement> {
        self.terms.remove(m)
    }

    /// Maximal term under `order`.
    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(&Monomial, &FieldElement)> {
        self.terms
            .iter()
            .max_by(|a, b| order.compare(a.0, b.0))
    }

    /// Applies `f` to every coefficient, dropping terms that become zero.
    pub fn try_map_coeffs<F>(&self, mut f: F) -> Result<Element>
    where
        F: FnMut(&FieldElement) -> Result<FieldElement>,
    {
        let mut out = Element::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), &f(c)?);
        }
        Ok(out)
    }

    /// Bitmask of every generator occurring in some term.
    pub fn support_mask(&self) -> u64 {
        self.terms.keys().fold(0, |acc, m| acc | m.support_mask())
    }

    pub fn max_degree(&self) -> u64 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }
}

/// `a_left a_right = lambda a_right a_left + tail` with `left > right`.
#[derive(Clone, Debug, PartialEq)]
pub struct CommutationRule {
    pub left: usize,
    pub right: usize,
    pub lambda: FieldElement,
    pub tail: Element,
}

/// Why a generator pair breaks solvability.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum SolvabilityIssue {
    MissingRule,
    ZeroLambda,
    /// The tail's leading monomial does not precede `a_i a_j`.
    TailNotSmaller { tail_leading: String },
}

#[derive(Clone, Debug, Serialize)]
pub struct SolvabilityViolation {
    pub left: String,
    pub right: String,
    pub issue: SolvabilityIssue,
}

#[derive(Clone, Debug, Serialize)]
pub struct SolvabilityReport {
    pub algebra: String,
    pub ordering: String,
    pub pairs_checked: usize,
    pub violations: Vec<SolvabilityViolation>,
    pub notes: Vec<String>,
}

impl SolvabilityReport {
    pub fn is_solvable(&self) -> bool {
        self.violations.is_empty()
    }
}

type ProductCache = RwLock<HashMap<(Monomial, usize), Element>>;

struct Structure {
    name: String,
    generators: Vec<Generator>,
    labels: Vec<Label>,
    /// Rule for `(j, i)`, `j > i`, at `j * (j - 1) / 2 + i`.
    rules: Vec<Option<CommutationRule>>,
    qmode: QMode,
    split: Option<usize>,
    notes: Vec<String>,
    cache: ProductCache,
}

fn rule_slot(j: usize, i: usize) -> usize {
    debug_assert!(j > i);
    j * (j - 1) / 2 + i
}

/// A solvable polynomial algebra: generators, commutation rules, an ordering.
///
/// Cloning is cheap; clones and [`AlgebraPresentation::with_ordering`] share the
/// rule table and the product cache.
#[derive(Clone)]
pub struct AlgebraPresentation {
    structure: Arc<Structure>,
    ordering: OrderingSpec,
    order: MonomialOrder,
    step_budget: u64,
}

impl fmt::Debug for AlgebraPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AlgebraPresentation")
            .field("name", &self.structure.name)
            .field("generators", &self.structure.generators.len())
            .field("ordering", &self.ordering)
            .field("qmode", &self.structure.qmode)
            .finish()
    }
}

struct Budget {
    steps: u64,
    limit: u64,
    depth: u32,
}

impl Budget {
    fn step(&mut self) -> Result<()> {
        self.steps += 1;
        if self.steps > self.limit || self.depth > MAX_DEPTH {
            return Err(Error::NontermLimit { budget: self.limit });
        }
        Ok(())
    }
}

impl AlgebraPresentation {
    /// Builds a presentation; requires exactly one rule per generator pair.
    pub fn new(
        name: impl Into<String>,
        generators: Vec<Generator>,
        rules: Vec<CommutationRule>,
        ordering: OrderingSpec,
        qmode: QMode,
        split: Option<usize>,
    ) -> Result<Self> {
        let n = generators.len();
        if n == 0 || n > 64 {
            return Err(Error::InvalidPresentation("need between 1 and 64 generators".into()));
        }
        let mut names: Vec<&str> = generators.iter().map(|g| g.name.as_str()).collect();
        names.sort_unstable();
        if names.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidPresentation("duplicate generator names".into()));
        }
        let mut table: Vec<Option<CommutationRule>> = vec![None; n * (n - 1) / 2];
        for r in rules {
            if r.left <= r.right || r.left >= n {
                return Err(Error::InvalidPresentation(format!(
                    "rule ({}, {}) must have left > right within range",
                    r.left, r.right
                )));
            }
            if r.tail.monomials().any(|m| m.len() != n) {
                return Err(Error::InvalidPresentation("tail monomial has the wrong arity".into()));
            }
            let slot = rule_slot(r.left, r.right);
            if table[slot].is_some() {
                return Err(Error::InvalidPresentation(format!(
                    "two rules for pair ({}, {})",
                    generators[r.left].name, generators[r.right].name
                )));
            }
            table[slot] = Some(r);
        }
        let labels = generators.iter().map(|g| g.label).collect::<Vec<_>>();
        let order = MonomialOrder::compile(&ordering, &labels, split)?;
        Ok(AlgebraPresentation {
            structure: Arc::new(Structure {
                name: name.into(),
                generators,
                labels,
                rules: table,
                qmode,
                split,
                notes: Vec::new(),
                cache: RwLock::new(HashMap::new()),
            }),
            ordering,
            order,
            step_budget: DEFAULT_STEP_BUDGET,
        })
    }

    pub(crate) fn with_notes(mut self, notes: Vec<String>) -> Self {
        let s = Arc::get_mut(&mut self.structure).expect("fresh presentation");
        s.notes = notes;
        self
    }

    /// Same algebra, different ordering (the product cache is shared).
    pub fn with_ordering(&self, ordering: OrderingSpec) -> Result<Self> {
        let order = MonomialOrder::compile(&ordering, &self.structure.labels, self.structure.split)?;
        Ok(AlgebraPresentation {
            structure: Arc::clone(&self.structure),
            ordering,
            order,
            step_budget: self.step_budget,
        })
    }

    pub fn with_step_budget(mut self, budget: u64) -> Self {
        self.step_budget = budget;
        self
    }

    /// Same generators and ordering with one rule replaced (fresh product cache).
    pub fn with_rule(&self, rule: CommutationRule) -> Result<Self> {
        let mut rules: Vec<CommutationRule> = self.rules().cloned().collect();
        rules.retain(|r| !(r.left == rule.left && r.right == rule.right));
        rules.push(rule);
        let a = AlgebraPresentation::new(
            format!("{} (modified)", self.structure.name),
            self.structure.generators.clone(),
            rules,
            self.ordering.clone(),
            self.structure.qmode.clone(),
            self.structure.split,
        )?;
        Ok(a.with_step_budget(self.step_budget))
    }

    /// The same presentation with every rule coefficient evaluated at `q = value`.
    pub fn specialize(&self, value: &BigRational) -> Result<Self> {
        if !self.qmode().is_symbolic() {
            return Err(Error::InvalidPresentation("presentation is already specialized".into()));
        }
        let qmode = QMode::specialized(value.clone())?;
        let mut rules = Vec::new();
        for r in self.rules() {
            rules.push(CommutationRule {
                left: r.left,
                right: r.right,
                lambda: r.lambda.specialize(value)?,
                tail: r.tail.try_map_coeffs(|c| Ok(c.specialize(value)?))?,
            });
        }
        let a = AlgebraPresentation::new(
            self.structure.name.clone(),
            self.structure.generators.clone(),
            rules,
            self.ordering.clone(),
            qmode,
            self.structure.split,
        )?;
        Ok(a.with_notes(self.structure.notes.clone()).with_step_budget(self.step_budget))
    }

    pub fn name(&self) -> &str {
        &self.structure.name
    }

    pub fn generators(&self) -> &[Generator] {
        &self.structure.generators
    }

    pub fn labels(&self) -> &[Label] {
        &self.structure.labels
    }

    pub fn num_generators(&self) -> usize {
        self.structure.generators.len()
    }

    pub fn qmode(&self) -> &QMode {
        &self.structure.qmode
    }

    pub fn ordering(&self) -> &OrderingSpec {
        &self.ordering
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn split(&self) -> Option<usize> {
        self.structure.split
    }

    pub fn step_budget(&self) -> u64 {
        self.step_budget
    }

    /// Caveats attached at construction (e.g. assumed relation schemas).
    pub fn notes(&self) -> &[String] {
        &self.structure.notes
    }

    pub fn rule(&self, j: usize, i: usize) -> Option<&CommutationRule> {
        if j <= i {
            return None;
        }
        self.structure.rules.get(rule_slot(j, i)).and_then(|r| r.as_ref())
    }

    pub fn rules(&self) -> impl Iterator<Item = &CommutationRule> {
        self.structure.rules.iter().flatten()
    }

    pub fn generator_position(&self, name: &str) -> Option<usize> {
        self.structure.generators.iter().position(|g| g.name == name)
    }

    pub fn one(&self) -> Element {
        Element::term(FieldElement::one(self.qmode()), Monomial::one(self.num_generators()))
    }

    pub fn constant(&self, c: FieldElement) -> Element {
        Element::term(c, Monomial::one(self.num_generators()))
    }

    pub fn generator(&self, k: usize) -> Element {
        Element::term(FieldElement::one(self.qmode()), Monomial::var(self.num_generators(), k))
    }

    pub fn monomial_element(&self, m: Monomial) -> Element {
        Element::term(FieldElement::one(self.qmode()), m)
    }

    fn budget(&self) -> Budget {
        Budget {
            steps: 0,
            limit: self.step_budget,
            depth: 0,
        }
    }

    /// The product `u * v` expanded in the PBW basis.
    pub fn multiply_monomials(&self, u: &Monomial, v: &Monomial) -> Result<Element> {
        let mut b = self.budget();
        self.mono_mono(u, v, &mut b)
    }

    pub fn multiply_monomial_triple(&self, a: &Monomial, b: &Monomial, c: &Monomial) -> Result<Element> {
        let ab = self.multiply_monomials(a, b)?;
        let mut out = Element::zero();
        let mut budget = self.budget();
        for (m, x) in ab.terms() {
            out.add_scaled(x, &self.mono_mono(m, c, &mut budget)?);
        }
        Ok(out)
    }

    /// Bilinear extension of [`Self::multiply_monomials`].
    pub fn multiply(&self, f: &Element, g: &Element) -> Result<Element> {
        let mut out = Element::zero();
        let mut b = self.budget();
        for (u, x) in f.terms() {
            for (v, y) in g.terms() {
                let p = self.mono_mono(u, v, &mut b)?;
                out.add_scaled(&(x * y), &p);
            }
        }
        Ok(out)
    }

    /// `m * g` for a monomial `m`.
    pub fn left_multiply(&self, m: &Monomial, g: &Element) -> Result<Element> {
        let mut out = Element::zero();
        let mut b = self.budget();
        for (v, y) in g.terms() {
            let p = self.mono_mono(m, v, &mut b)?;
            out.add_scaled(y, &p);
        }
        Ok(out)
    }

    /// `g * m` for a monomial `m`.
    pub fn right_multiply(&self, g: &Element, m: &Monomial) -> Result<Element> {
        let mut out = Element::zero();
        let mut b = self.budget();
        for (u, x) in g.terms() {
            let p = self.mono_mono(u, m, &mut b)?;
            out.add_scaled(x, &p);
        }
        Ok(out)
    }

    fn mono_mono(&self, u: &Monomial, v: &Monomial, b: &mut Budget) -> Result<Element> {
        let one = FieldElement::one(self.qmode());
        match (u.max_letter(), v.min_letter()) {
            (None, _) => return Ok(Element::term(one, v.clone())),
            (_, None) => return Ok(Element::term(one, u.clone())),
            (Some(hi), Some(lo)) if hi <= lo => return Ok(Element::term(one, u.mul(v))),
            _ => {}
        }
        let mut acc = Element::term(one, u.clone());
        for k in v.letters() {
            let mut next = Element::zero();
            for (m, c) in acc.terms() {
                next.add_scaled(c, &self.mono_gen(m, k, b)?);
            }
            acc = next;
        }
        Ok(acc)
    }

    /// `m * a_k`.
    fn mono_gen(&self, m: &Monomial, k: usize, b: &mut Budget) -> Result<Element> {
        let j = match m.max_letter() {
            Some(j) if j > k => j,
            _ => return Ok(Element::term(FieldElement::one(self.qmode()), m.inc(k))),
        };
        let key = (m.clone(), k);
        if let Some(hit) = self.structure.cache.read().unwrap().get(&key) {
            return Ok(hit.clone());
        }
        b.step()?;
        b.depth += 1;
        let rule = self.rule(j, k).ok_or_else(|| {
            Error::MissingRule(
                self.structure.generators[j].name.clone(),
                self.structure.generators[k].name.clone(),
            )
        })?;
        // m = m' a_j, and a_j a_k = lambda a_k a_j + tail.
        let rest = m.dec(j);
        let mut out = Element::zero();
        let head = self.mono_gen(&rest, k, b)?;
        for (t, c) in head.terms() {
            out.add_scaled(&(&rule.lambda * c), &self.mono_gen(t, j, b)?);
        }
        for (s, c) in rule.tail.terms() {
            out.add_scaled(c, &self.mono_mono(&rest, s, b)?);
        }
        b.depth -= 1;
        self.structure.cache.write().unwrap().insert(key, out.clone());
        Ok(out)
    }

    /// Leading monomial and coefficient under this algebra's ordering.
    pub fn leading_data(&self, f: &Element) -> Result<(Monomial, FieldElement)> {
        f.leading_term(&self.order)
            .map(|(m, c)| (m.clone(), c.clone()))
            .ok_or(Error::ZeroElement)
    }

    pub fn leading_monomial(&self, f: &Element) -> Option<Monomial> {
        f.leading_term(&self.order).map(|(m, _)| m.clone())
    }

    /// Terms sorted from the leading term down.
    pub fn sorted_terms<'a>(&self, f: &'a Element) -> Vec<(&'a Monomial, &'a FieldElement)> {
        let mut t: Vec<_> = f.terms().collect();
        t.sort_by(|a, b| self.order.compare(b.0, a.0));
        t
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.compare(a, b)
    }

    /// Checks `lambda != 0` and `LM(tail) < a_i a_j` for every generator pair.
    pub fn check_solvable(&self) -> SolvabilityReport {
        let n = self.num_generators();
        let gens = &self.structure.generators;
        let mut violations = Vec::new();
        let mut pairs = 0;
        for j in 0..n {
            for i in 0..j {
                pairs += 1;
                let issue = match self.rule(j, i) {
                    None => Some(SolvabilityIssue::MissingRule),
                    Some(r) if r.lambda.is_zero() => Some(SolvabilityIssue::ZeroLambda),
                    Some(r) => match self.leading_monomial(&r.tail) {
                        Some(lm) => {
                            let target = Monomial::var(n, i).mul(&Monomial::var(n, j));
                            if self.order.less(&lm, &target) {
                                None
                            } else {
                                Some(SolvabilityIssue::TailNotSmaller {
                                    tail_leading: self.format_monomial(&lm),
                                })
                            }
                        }
                        None => None,
                    },
                };
                if let Some(issue) = issue {
                    violations.push(SolvabilityViolation {
                        left: gens[j].name.clone(),
                        right: gens[i].name.clone(),
                        issue,
                    });
                }
            }
        }
        SolvabilityReport {
            algebra: self.name().to_string(),
            ordering: self.ordering.to_string(),
            pairs_checked: pairs,
            violations,
            notes: self.notes().to_vec(),
        }
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        if m.is_one() {
            return "1".into();
        }
        let gens = &self.structure.generators;
        m.exponents()
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(k, &e)| {
                if e == 1 {
                    gens[k].name.clone()
                } else {
                    format!("{}^{}", gens[k].name, e)
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }

    /// Prints `f` leading term first in the polynomial grammar accepted by
    /// [`crate::syntax::parse_polynomial`].
    pub fn format_element(&self, f: &Element) -> String {
        if f.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.sorted_terms(f).into_iter().enumerate() {
            let negative = c.is_negative_simple();
            let mag = if negative { -c } else { c.clone() };
            if idx == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let coeff = if mag.is_simple() {
                mag.to_string()
            } else {
                format!("({mag})")
            };
            if m.is_one() {
                out.push_str(&coeff);
            } else if mag.is_one() {
                out.push_str(&self.format_monomial(m));
            } else {
                out.push_str(&coeff);
                out.push('*');
                out.push_str(&self.format_monomial(m));
            }
        }
        out
    }
}

/// Leading data of a nonzero element, as a free function.
pub fn leading_data(a: &AlgebraPresentation, f: &Element) -> Result<(Monomial, FieldElement)> {
    a.leading_data(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::LaurentPoly;
    use crate::quantum::build_uq_plus;
    use crate::syntax::parse_polynomial;

    fn uq(n: u32) -> AlgebraPresentation {
        build_uq_plus(n, QMode::Symbolic).unwrap()
    }

    fn mono(a: &AlgebraPresentation, text: &str) -> Monomial {
        let e = parse_polynomial(text, a).unwrap();
        assert_eq!(e.num_terms(), 1);
        let m = e.monomials().next().unwrap().clone();
        m
    }

    fn el(a: &AlgebraPresentation, terms: &[(LaurentPoly, &str)]) -> Element {
        Element::from_terms(
            terms
                .iter()
                .map(|(c, m)| (mono(a, m), FieldElement::from_laurent(a.qmode(), c))),
        )
    }

    #[test]
    fn products_from_the_relations() {
        let a = uq(2);
        let p = a.multiply_monomials(&mono(&a, "x[2,3]"), &mono(&a, "x[1,2]")).unwrap();
        let want = el(
            &a,
            &[
                (LaurentPoly::q_pow(2), "x[1,2]*x[2,3]"),
                (LaurentPoly::q_pow(1).neg(), "x[1,3]"),
            ],
        );
        assert_eq!(p, want);

        let p = a.multiply_monomials(&mono(&a, "x[1,3]"), &mono(&a, "x[1,2]")).unwrap();
        assert_eq!(p, el(&a, &[(LaurentPoly::q_pow(-2), "x[1,2]*x[1,3]")]));

        let u = mono(&a, "x[1,3]^2*x[2,3]");
        let one = Monomial::one(3);
        assert_eq!(a.multiply_monomials(&u, &one).unwrap(), a.monomial_element(u.clone()));
        assert_eq!(a.multiply_monomials(&one, &u).unwrap(), a.monomial_element(u.clone()));

        let b = uq(3);
        let p = b.multiply_monomials(&mono(&b, "x[2,4]"), &mono(&b, "x[1,3]")).unwrap();
        let c = LaurentPoly::q_pow(2).sub(&LaurentPoly::q_pow(-2)).neg();
        assert_eq!(
            p,
            el(
                &b,
                &[(LaurentPoly::one(), "x[1,3]*x[2,4]"), (c, "x[1,4]*x[2,3]")]
            )
        );
    }

    #[test]
    fn bilinear_products_and_associativity() {
        let a = uq(2);
        let f = parse_polynomial("x[1,2] + x[1,3]", &a).unwrap();
        let g = a.generator(2);
        assert!(a.multiply(&f, &Element::zero()).unwrap().is_zero());
        let want = parse_polynomial("x[1,2]*x[2,3] + x[1,3]*x[2,3]", &a).unwrap();
        assert_eq!(a.multiply(&f, &g).unwrap(), want);

        let (x12, x13, x23) = (a.generator(0), a.generator(1), a.generator(2));
        let left = a.multiply(&a.multiply(&x23, &x13).unwrap(), &x12).unwrap();
        let right = a.multiply(&x23, &a.multiply(&x13, &x12).unwrap()).unwrap();
        assert_eq!(left, right);
        // Same product through the word-rewriting engine.
        let w = crate::rewrite::reduce(
            &a,
            crate::rewrite::WordPoly::word(FieldElement::one(a.qmode()), vec![2, 1, 0]),
        )
        .unwrap();
        assert_eq!(left, w);
    }

    #[test]
    fn leading_data_examples() {
        let a = uq(2);
        let f = parse_polynomial("q^2*x[1,2]*x[2,3] - q*x[1,3]", &a).unwrap();
        assert_eq!(a.leading_data(&f).unwrap().0, mono(&a, "x[1,2]*x[2,3]"));
        let five = parse_polynomial("5", &a).unwrap();
        let (m, c) = a.leading_data(&five).unwrap();
        assert!(m.is_one());
        assert_eq!(c, FieldElement::from_int(a.qmode(), 5));
        let g = parse_polynomial("x[1,3] + x[1,2]", &a).unwrap();
        assert_eq!(a.leading_data(&g).unwrap().0, mono(&a, "x[1,2]"));
        assert_eq!(a.leading_data(&Element::zero()), Err(Error::ZeroElement));
    }

    #[test]
    fn solvability_controls() {
        assert!(uq(3).check_solvable().is_solvable());

        // Index-ranked words put x[1,3] above x[1,2]*x[2,3], so the C5 rule fails.
        let a = uq(2).with_ordering(OrderingSpec::IndexLexWord).unwrap();
        let r = a.check_solvable();
        assert_eq!(r.violations.len(), 1);
        assert_eq!(r.violations[0].left, "x[2,3]");
        assert_eq!(r.violations[0].right, "x[1,2]");
        assert_eq!(
            r.violations[0].issue,
            SolvabilityIssue::TailNotSmaller {
                tail_leading: "x[1,3]".into()
            }
        );

        let a = uq(2);
        let mut rule = a.rule(1, 0).unwrap().clone();
        rule.lambda = FieldElement::zero(a.qmode());
        let bad = a.with_rule(rule).unwrap();
        let r = bad.check_solvable();
        assert_eq!(r.violations.len(), 1);
        assert_eq!(r.violations[0].issue, SolvabilityIssue::ZeroLambda);
    }

    #[test]
    fn printing() {
        let a = uq(2);
        let f = parse_polynomial("x[2,3]*x[1,2]", &a).unwrap();
        assert_eq!(a.format_element(&f), "q^2*x[1,2]*x[2,3] - q*x[1,3]");
        let g = parse_polynomial("(q^2 - q^-2)*x[1,3]^2 - 3/4", &a).unwrap();
        assert_eq!(a.format_element(&g), "(q^2 - q^-2)*x[1,3]^2 - 3/4");
        assert_eq!(a.format_element(&Element::zero()), "0");
    }

    #[test]
    fn specialization_of_a_presentation() {
        let a = uq(2);
        let v = BigRational::from_integer(2.into());
        let b = a.specialize(&v).unwrap();
        let p = b.multiply_monomials(&mono(&b, "x[2,3]"), &mono(&b, "x[1,2]")).unwrap();
        assert_eq!(b.format_element(&p), "4*x[1,2]*x[2,3] - 2*x[1,3]");
        assert!(b.specialize(&v).is_err());
    }
}
