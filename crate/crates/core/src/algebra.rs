//! Graded polynomials in the coefficients `a0, ..., an` of a binary form.
//!
//! A [`CoeffPolynomial`] is a sparse map from exponent vectors to nonzero
//! exact rationals. Every polynomial carries the order `n` of the form it
//! belongs to, and arithmetic between polynomials of different orders is
//! rejected.
//!
//! Terms are ordered graded-lexicographically with `a0 > a1 > ... > an`:
//! higher total degree first, then the larger exponent of `a0`, then of
//! `a1`, and so on. This order drives printing and the normalization of
//! discovered invariants.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::Rational;

/// An exponent vector `(v0, ..., vn)` over the coefficient variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoeffMonomial {
    exponents: Vec<u32>,
}

impl CoeffMonomial {
    /// Builds a monomial from its exponent vector. The order of the form is
    /// `exponents.len() - 1`, so the vector must not be empty.
    pub fn new(exponents: Vec<u32>) -> Self {
        assert!(!exponents.is_empty(), "a monomial needs at least one exponent slot");
        CoeffMonomial { exponents }
    }

    /// The constant monomial `1` for a form of order `n`.
    pub fn one(n: usize) -> Self {
        CoeffMonomial { exponents: vec![0; n + 1] }
    }

    /// The single variable `a_i`.
    pub fn var(n: usize, i: usize) -> Self {
        assert!(i <= n, "variable a{i} out of range for order {n}");
        let mut exponents = vec![0; n + 1];
        exponents[i] = 1;
        CoeffMonomial { exponents }
    }

    pub fn order(&self) -> usize {
        self.exponents.len() - 1
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.exponents[i]
    }

    /// Total degree `sum v_i`.
    pub fn degree(&self) -> u64 {
        self.exponents.iter().map(|&e| u64::from(e)).sum()
    }

    /// Weight `sum i * v_i`.
    pub fn weight(&self) -> u64 {
        self.exponents.iter().enumerate().map(|(i, &e)| i as u64 * u64::from(e)).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &CoeffMonomial) -> CoeffMonomial {
        debug_assert_eq!(self.order(), other.order());
        CoeffMonomial { exponents: self.exponents.iter().zip(&other.exponents).map(|(a, b)| a + b).collect() }
    }

    /// Moves one unit of exponent from `a_from` to `a_to`. Caller guarantees
    /// `exponent(from) > 0`.
    pub(crate) fn shift(&self, from: usize, to: usize) -> CoeffMonomial {
        let mut exponents = self.exponents.clone();
        exponents[from] -= 1;
        exponents[to] += 1;
        CoeffMonomial { exponents }
    }

    pub fn evaluate(&self, values: &[Rational]) -> Rational {
        let mut acc = Rational::one();
        for (v, &e) in values.iter().zip(&self.exponents) {
            if e > 0 {
                acc *= num_traits::pow(v.clone(), e as usize);
            }
        }
        acc
    }
}

impl Ord for CoeffMonomial {
    /// Graded-lex with `a0 > a1 > ... > an`; `Greater` means "leads".
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.exponents.cmp(&other.exponents))
    }
}

impl PartialOrd for CoeffMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for CoeffMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (i, &e) in self.exponents.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "a{i}")?;
            } else {
                write!(f, "a{i}^{e}")?;
            }
        }
        Ok(())
    }
}

/// A polynomial `sum Z * a0^v0 * ... * an^vn` with exact rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoeffPolynomial {
    n: usize,
    terms: BTreeMap<CoeffMonomial, Rational>,
}

impl CoeffPolynomial {
    pub fn zero(n: usize) -> Self {
        CoeffPolynomial { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        Self::from_terms(n, [(CoeffMonomial::one(n), c)])
    }

    /// The polynomial `a_i`.
    pub fn var(n: usize, i: usize) -> Self {
        Self::from_terms(n, [(CoeffMonomial::var(n, i), Rational::one())])
    }

    /// Collects terms, summing duplicates and dropping zeros.
    ///
    /// Panics if a monomial has the wrong number of exponent slots.
    pub fn from_terms<I>(n: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (CoeffMonomial, Rational)>,
    {
        let mut p = CoeffPolynomial::zero(n);
        for (m, c) in terms {
            assert_eq!(m.order(), n, "monomial {m} does not belong to order {n}");
            p.add_term(m, c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, m: CoeffMonomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &CoeffMonomial) -> Option<&Rational> {
        self.terms.get(m)
    }

    /// Terms from the leading monomial down.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&CoeffMonomial, &Rational)> + '_ {
        self.terms.iter().rev()
    }

    pub fn leading_term(&self) -> Option<(&CoeffMonomial, &Rational)> {
        self.terms.iter().next_back()
    }

    fn check_order(&self, other: &CoeffPolynomial) -> Result<()> {
        if self.n != other.n {
            return Err(Error::OrderMismatch { left: self.n, right: other.n });
        }
        Ok(())
    }

    pub fn add(&self, other: &CoeffPolynomial) -> Result<CoeffPolynomial> {
        self.check_order(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &CoeffPolynomial) -> Result<CoeffPolynomial> {
        self.add(&other.negate())
    }

    pub fn negate(&self) -> CoeffPolynomial {
        CoeffPolynomial { n: self.n, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn mul(&self, other: &CoeffPolynomial) -> Result<CoeffPolynomial> {
        self.check_order(other)?;
        let mut out = CoeffPolynomial::zero(self.n);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scalar_mul(&self, k: &Rational) -> CoeffPolynomial {
        if k.is_zero() {
            return CoeffPolynomial::zero(self.n);
        }
        CoeffPolynomial { n: self.n, terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect() }
    }

    /// `self^k` by repeated squaring; `P^0 = 1`.
    pub fn pow(&self, mut k: u32) -> CoeffPolynomial {
        let mut base = self.clone();
        let mut acc = CoeffPolynomial::constant(self.n, Rational::one());
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base).expect("same order");
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base).expect("same order");
            }
        }
        acc
    }

    /// Substitutes `a_i -> values[i]`.
    pub fn evaluate(&self, values: &[Rational]) -> Result<Rational> {
        if values.len() != self.n + 1 {
            return Err(Error::LengthMismatch { expected: self.n + 1, got: values.len() });
        }
        Ok(self.terms.iter().map(|(m, c)| c * m.evaluate(values)).fold(Rational::zero(), |acc, t| acc + t))
    }

    /// Total degree shared by all terms, if any. Absent for the zero polynomial.
    pub fn degree(&self) -> Option<u64> {
        common_value(self.terms.keys().map(CoeffMonomial::degree))
    }

    /// Weight shared by all terms, if any. Absent for the zero polynomial.
    pub fn weight(&self) -> Option<u64> {
        common_value(self.terms.keys().map(CoeffMonomial::weight))
    }

    pub fn analyze(&self) -> GradedAnalysis {
        GradedAnalysis::new(self.n, self.degree(), self.weight())
    }

    /// Largest single exponent appearing in any term.
    pub fn max_exponent(&self) -> u32 {
        self.terms.keys().flat_map(|m| m.exponents.iter().copied()).max().unwrap_or(0)
    }

    /// Scales to a primitive integer polynomial with positive leading
    /// coefficient. The zero polynomial is returned unchanged.
    pub fn primitive(&self) -> CoeffPolynomial {
        let Some((_, lead)) = self.leading_term() else {
            return self.clone();
        };
        let lcm_den = self.terms.values().fold(BigInt::one(), |acc, c| num_integer::lcm(acc, c.denom().clone()));
        let ints: Vec<BigInt> = self.terms.values().map(|c| c.numer() * (&lcm_den / c.denom())).collect();
        let content = ints.iter().fold(BigInt::zero(), |acc, v| num_integer::gcd(acc, v.clone()));
        let mut scale = Rational::new(lcm_den, content);
        if lead.is_negative() {
            scale = -scale;
        }
        self.scalar_mul(&scale)
    }
}

fn common_value(mut it: impl Iterator<Item = u64>) -> Option<u64> {
    let first = it.next()?;
    it.all(|v| v == first).then_some(first)
}

fn write_rational(f: &mut fmt::Formatter<'_>, r: &Rational) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for CoeffPolynomial {
    /// Canonical text form, parseable by [`crate::expr::parse`].
    ///
    /// A negative unit coefficient on the leading term is written `-1*`,
    /// since unary minus only attaches to numeric literals.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms().enumerate() {
            let magnitude = if idx == 0 {
                c.clone()
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
                c.abs()
            };
            if m.is_one() {
                write_rational(f, &magnitude)?;
            } else if magnitude.is_one() {
                write!(f, "{m}")?;
            } else {
                write_rational(f, &magnitude)?;
                write!(f, "*{m}")?;
            }
        }
        Ok(())
    }
}

/// Degree/weight summary of a polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedAnalysis {
    pub homogeneous: bool,
    pub degree: Option<u64>,
    pub isobaric: bool,
    pub weight: Option<u64>,
    /// `n*g - 2p`, present when both gradings are.
    pub defect: Option<i64>,
}

impl GradedAnalysis {
    fn new(n: usize, degree: Option<u64>, weight: Option<u64>) -> Self {
        let defect = match (degree, weight) {
            (Some(g), Some(p)) => Some(n as i64 * g as i64 - 2 * p as i64),
            _ => None,
        };
        GradedAnalysis { homogeneous: degree.is_some(), degree, isobaric: weight.is_some(), weight, defect }
    }

    /// `(g, p)` when the polynomial is both homogeneous and isobaric.
    pub fn grading(&self) -> Option<(u64, u64)> {
        self.degree.zip(self.weight)
    }
}

impl fmt::Display for GradedAnalysis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn opt<T: fmt::Display>(v: &Option<T>) -> String {
            v.as_ref().map_or_else(|| "none".to_string(), T::to_string)
        }
        writeln!(f, "homogeneous: {}", self.homogeneous)?;
        writeln!(f, "degree: {}", opt(&self.degree))?;
        writeln!(f, "isobaric: {}", self.isobaric)?;
        writeln!(f, "weight: {}", opt(&self.weight))?;
        write!(f, "defect: {}", opt(&self.defect))
    }
}
