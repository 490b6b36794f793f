use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::laurent::{poly_divrem, poly_gcd, LaurentPoly};
use super::CoeffError;

/// How the parameter `q` is treated.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum QMode {
    Symbolic,
    /// `q` replaced by a rational value; never 0, 1 or -1.
    Specialized(BigRational),
}

impl QMode {
    /// Over Q the constraint `q^8 != 1` only rules out `±1`; 0 is excluded
    /// because `q` must be invertible.
    pub fn specialized(value: BigRational) -> Result<Self, CoeffError> {
        check_legal_q(&value)?;
        Ok(QMode::Specialized(value))
    }

    pub fn is_symbolic(&self) -> bool {
        matches!(self, QMode::Symbolic)
    }
}

impl fmt::Display for QMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QMode::Symbolic => write!(f, "symbolic"),
            QMode::Specialized(v) => write!(f, "{v}"),
        }
    }
}

pub(crate) fn check_legal_q(value: &BigRational) -> Result<(), CoeffError> {
    if value.is_zero() || value.abs().is_one() {
        return Err(CoeffError::IllegalQ(value.clone()));
    }
    Ok(())
}

/// A rational function in `q` in canonical form.
///
/// `den` has nonzero constant term and is monic, and `num` (viewed as a polynomial
/// after clearing its `q`-power) is coprime to it. Equality is therefore syntactic.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RatFunc {
    pub fn from_laurent(p: LaurentPoly) -> Self {
        RatFunc {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self, CoeffError> {
        if den.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        Ok(Self::canonical(num, den))
    }

    pub fn numer(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denom(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    fn canonical(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self::from_laurent(LaurentPoly::zero());
        }
        // Move q-powers of the denominator into the numerator.
        let shift = den.low_exp();
        let num = num.shift(-shift);
        let num_low = num.low_exp();
        let den_poly = den.poly_part().to_vec();
        let (num, den_poly) = if den_poly.len() > 1 {
            let num_poly = num.poly_part();
            let g = poly_gcd(num_poly, &den_poly);
            if g.len() > 1 {
                let (n, _) = poly_divrem(num_poly, &g);
                let (d, _) = poly_divrem(&den_poly, &g);
                (LaurentPoly::from_poly(num_low, n), d)
            } else {
                (num, den_poly)
            }
        } else {
            (num, den_poly)
        };
        let lc = den_poly.last().unwrap().clone();
        if lc.is_one() {
            RatFunc {
                num,
                den: LaurentPoly::from_poly(0, den_poly),
            }
        } else {
            let inv = lc.recip();
            RatFunc {
                num: num.scale(&inv),
                den: LaurentPoly::from_poly(0, den_poly).scale(&inv),
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            if self.den.is_one() {
                return Self::from_laurent(self.num.add(&o.num));
            }
            return Self::canonical(self.num.add(&o.num), self.den.clone());
        }
        Self::canonical(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.den.is_one() && o.den.is_one() {
            return Self::from_laurent(self.num.mul(&o.num));
        }
        Self::canonical(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Result<Self, CoeffError> {
        if self.num.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        // Already coprime; only the q-power and the leading coefficient need fixing.
        Ok(Self::canonical(self.den.clone(), self.num.clone()))
    }

    pub fn eval(&self, at: &BigRational) -> Result<BigRational, CoeffError> {
        let d = self.den.eval(at);
        if d.is_zero() {
            return Err(CoeffError::PoleAtQ(at.clone()));
        }
        Ok(self.num.eval(at) / d)
    }
}

/// An element of the coefficient field: `Q(q)` or `Q` with `q` specialized.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum FieldElement {
    Symbolic(RatFunc),
    Specialized(BigRational),
}

impl FieldElement {
    pub fn zero(mode: &QMode) -> Self {
        Self::from_rational(mode, BigRational::zero())
    }

    pub fn one(mode: &QMode) -> Self {
        Self::from_rational(mode, BigRational::one())
    }

    pub fn from_int(mode: &QMode, n: i64) -> Self {
        Self::from_rational(mode, BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(mode: &QMode, r: BigRational) -> Self {
        match mode {
            QMode::Symbolic => FieldElement::Symbolic(RatFunc::from_laurent(LaurentPoly::constant(r))),
            QMode::Specialized(_) => FieldElement::Specialized(r),
        }
    }

    /// `q^exp` in the given mode.
    pub fn q_pow(mode: &QMode, exp: i64) -> Self {
        Self::from_laurent(mode, &LaurentPoly::q_pow(exp))
    }

    /// Embeds a Laurent polynomial; in specialized mode it is evaluated at the value.
    pub fn from_laurent(mode: &QMode, p: &LaurentPoly) -> Self {
        match mode {
            QMode::Symbolic => FieldElement::Symbolic(RatFunc::from_laurent(p.clone())),
            QMode::Specialized(v) => FieldElement::Specialized(p.eval(v)),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Symbolic(r) => r.numer().is_zero(),
            FieldElement::Specialized(v) => v.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElement::Symbolic(r) => r.is_laurent() && r.numer().is_one(),
            FieldElement::Specialized(v) => v.is_one(),
        }
    }

    pub fn is_symbolic(&self) -> bool {
        matches!(self, FieldElement::Symbolic(_))
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self, CoeffError> {
        match (self, o) {
            (FieldElement::Symbolic(a), FieldElement::Symbolic(b)) => Ok(FieldElement::Symbolic(a.add(b))),
            (FieldElement::Specialized(a), FieldElement::Specialized(b)) => Ok(FieldElement::Specialized(a + b)),
            _ => Err(CoeffError::ModeMismatch),
        }
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self, CoeffError> {
        match (self, o) {
            (FieldElement::Symbolic(a), FieldElement::Symbolic(b)) => Ok(FieldElement::Symbolic(a.mul(b))),
            (FieldElement::Specialized(a), FieldElement::Specialized(b)) => Ok(FieldElement::Specialized(a * b)),
            _ => Err(CoeffError::ModeMismatch),
        }
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self, CoeffError> {
        self.checked_add(&-o)
    }

    pub fn inv(&self) -> Result<Self, CoeffError> {
        match self {
            FieldElement::Symbolic(r) => Ok(FieldElement::Symbolic(r.inv()?)),
            FieldElement::Specialized(v) => {
                if v.is_zero() {
                    Err(CoeffError::DivisionByZero)
                } else {
                    Ok(FieldElement::Specialized(v.recip()))
                }
            }
        }
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self, CoeffError> {
        self.checked_mul(&o.inv()?)
    }

    /// Evaluates at `q = value`.
    ///
    /// An already specialized element is returned unchanged.
    pub fn specialize(&self, value: &BigRational) -> Result<Self, CoeffError> {
        check_legal_q(value)?;
        match self {
            FieldElement::Symbolic(r) => Ok(FieldElement::Specialized(r.eval(value)?)),
            FieldElement::Specialized(_) => Ok(self.clone()),
        }
    }

    /// Whether this value is a single signed rational multiple of a power of `q`
    /// (so it can be printed without parentheses).
    pub(crate) fn is_simple(&self) -> bool {
        match self {
            FieldElement::Symbolic(r) => r.is_laurent() && r.numer().num_terms() <= 1,
            FieldElement::Specialized(_) => true,
        }
    }

    /// Sign of a simple coefficient (used by the printer).
    pub(crate) fn is_negative_simple(&self) -> bool {
        match self {
            FieldElement::Symbolic(r) => {
                r.is_laurent() && r.numer().num_terms() == 1 && r.numer().leading_coeff().unwrap().is_negative()
            }
            FieldElement::Specialized(v) => v.is_negative(),
        }
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, o: &FieldElement) -> FieldElement {
        self.checked_add(o).expect("coefficient mode mismatch")
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, o: &FieldElement) -> FieldElement {
        self.checked_sub(o).expect("coefficient mode mismatch")
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, o: &FieldElement) -> FieldElement {
        self.checked_mul(o).expect("coefficient mode mismatch")
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        match self {
            FieldElement::Symbolic(r) => FieldElement::Symbolic(r.neg()),
            FieldElement::Specialized(v) => FieldElement::Specialized(-v),
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

fn fmt_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Symbolic(r) => write!(f, "{r}"),
            FieldElement::Specialized(v) => write!(f, "{}", fmt_rational(v)),
        }
    }
}
