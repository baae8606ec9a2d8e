//! Binary forms and the action of invertible linear substitutions on their
//! coefficients.
//!
//! Orientation: a transform `(alpha, beta, gamma, delta)` substitutes
//!
//! ```text
//! x = alpha x' + beta y',   y = gamma x' + delta y'
//! ```
//!
//! into `f(x, y)` and the coefficients of the result in `x', y'` are the
//! primed coefficients `a'`. With this orientation an invariant of weight `p`
//! satisfies `I(a') = d^p I(a)`, `d = alpha delta - beta gamma`, and applying
//! `T1` then `T2` equals applying the matrix product `T1 * T2`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::CoeffPolynomial;
use crate::error::{Error, Result};
use crate::{rat, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    /// `f = sum C(n,i) a_i x^(n-i) y^i`.
    Binomial,
    /// `f = sum a_i x^(n-i) y^i`.
    Plain,
}

impl FromStr for Convention {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "binomial" => Ok(Convention::Binomial),
            "plain" => Ok(Convention::Plain),
            other => Err(format!("unknown convention `{other}` (expected binomial or plain)")),
        }
    }
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

/// A binary form of order `n` with concrete coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryForm {
    convention: Convention,
    coeffs: Vec<Rational>,
}

impl BinaryForm {
    /// `coeffs` holds `a0..an`; it must not be empty.
    pub fn new(convention: Convention, coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a binary form needs at least one coefficient");
        BinaryForm { convention, coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn convert(&self, target: Convention) -> BinaryForm {
        if target == self.convention {
            return self.clone();
        }
        let n = self.order();
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let b = Rational::from_integer(binomial(n, i));
                match target {
                    Convention::Binomial => c / b,
                    Convention::Plain => c * b,
                }
            })
            .collect();
        BinaryForm { convention: target, coeffs }
    }

    /// Evaluates `f(x, y)`.
    pub fn evaluate(&self, x: &Rational, y: &Rational) -> Rational {
        let plain = self.convert(Convention::Plain);
        let n = plain.order();
        plain
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * num_traits::pow(x.clone(), n - i) * num_traits::pow(y.clone(), i))
            .fold(Rational::zero(), |a, b| a + b)
    }

    /// Coefficients of `f(alpha x' + beta y', gamma x' + delta y')`, in the
    /// same convention as `self`.
    pub fn transform(&self, t: &LinearTransform) -> BinaryForm {
        let plain = self.convert(Convention::Plain);
        let n = plain.order();
        // (alpha + beta t)^k and (gamma + delta t)^k as coefficient vectors in t = y'/x'
        let xs = powers(&t.alpha, &t.beta, n);
        let ys = powers(&t.gamma, &t.delta, n);
        let mut out = vec![Rational::zero(); n + 1];
        for (i, c) in plain.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let prod = convolve(&xs[n - i], &ys[i]);
            for (o, v) in out.iter_mut().zip(prod) {
                *o += c * v;
            }
        }
        BinaryForm { convention: Convention::Plain, coeffs: out }.convert(self.convention)
    }
}

/// `[(a + b t)^0, (a + b t)^1, ..., (a + b t)^n]`.
fn powers(a: &Rational, b: &Rational, n: usize) -> Vec<Vec<Rational>> {
    let mut out = vec![vec![Rational::one()]];
    for _ in 0..n {
        let prev = out.last().unwrap();
        let mut next = vec![Rational::zero(); prev.len() + 1];
        for (j, c) in prev.iter().enumerate() {
            next[j] += c * a;
            next[j + 1] += c * b;
        }
        out.push(next);
    }
    out
}

fn convolve(p: &[Rational], q: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); p.len() + q.len() - 1];
    for (i, a) in p.iter().enumerate() {
        for (j, b) in q.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

/// The substitution matrix `[[alpha, beta], [gamma, delta]]`, never singular.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearTransform {
    alpha: Rational,
    beta: Rational,
    gamma: Rational,
    delta: Rational,
}

impl LinearTransform {
    pub fn new(alpha: Rational, beta: Rational, gamma: Rational, delta: Rational) -> Result<Self> {
        let t = LinearTransform { alpha, beta, gamma, delta };
        if t.determinant().is_zero() {
            return Err(Error::SingularTransform);
        }
        Ok(t)
    }

    pub fn identity() -> Self {
        LinearTransform {
            alpha: Rational::one(),
            beta: Rational::zero(),
            gamma: Rational::zero(),
            delta: Rational::one(),
        }
    }

    pub fn entries(&self) -> [&Rational; 4] {
        [&self.alpha, &self.beta, &self.gamma, &self.delta]
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn beta(&self) -> &Rational {
        &self.beta
    }

    pub fn gamma(&self) -> &Rational {
        &self.gamma
    }

    pub fn delta(&self) -> &Rational {
        &self.delta
    }

    pub fn determinant(&self) -> Rational {
        &self.alpha * &self.delta - &self.beta * &self.gamma
    }

    /// Matrix product `self * rhs`: substituting by `self` and then by `rhs`.
    pub fn then(&self, rhs: &LinearTransform) -> LinearTransform {
        LinearTransform {
            alpha: &self.alpha * &rhs.alpha + &self.beta * &rhs.gamma,
            beta: &self.alpha * &rhs.beta + &self.beta * &rhs.delta,
            gamma: &self.gamma * &rhs.alpha + &self.delta * &rhs.gamma,
            delta: &self.gamma * &rhs.beta + &self.delta * &rhs.delta,
        }
    }

    pub fn inverse(&self) -> LinearTransform {
        let d = self.determinant();
        LinearTransform {
            alpha: &self.delta / &d,
            beta: -&self.beta / &d,
            gamma: -&self.gamma / &d,
            delta: &self.alpha / &d,
        }
    }

    pub fn is_diagonal(&self) -> bool {
        self.beta.is_zero() && self.gamma.is_zero()
    }
}

impl fmt::Display for LinearTransform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.alpha, self.beta, self.gamma, self.delta)
    }
}

/// The generating substitutions: scalings and the two shears.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ElementaryTransform {
    /// `x = alpha x', y = delta y'`.
    Scale { alpha: Rational, delta: Rational },
    /// `x = x' + beta y', y = y'`.
    UpperShear { beta: Rational },
    /// `x = x', y = gamma x' + y'`.
    LowerShear { gamma: Rational },
}

impl ElementaryTransform {
    pub fn scale(alpha: Rational, delta: Rational) -> Result<Self> {
        if alpha.is_zero() || delta.is_zero() {
            return Err(Error::ZeroScale);
        }
        Ok(ElementaryTransform::Scale { alpha, delta })
    }

    pub fn to_linear(&self) -> LinearTransform {
        let (one, zero) = (Rational::one(), Rational::zero());
        match self {
            ElementaryTransform::Scale { alpha, delta } => {
                LinearTransform { alpha: alpha.clone(), beta: zero.clone(), gamma: zero, delta: delta.clone() }
            }
            ElementaryTransform::UpperShear { beta } => {
                LinearTransform { alpha: one.clone(), beta: beta.clone(), gamma: zero, delta: one }
            }
            ElementaryTransform::LowerShear { gamma } => {
                LinearTransform { alpha: one.clone(), beta: zero, gamma: gamma.clone(), delta: one }
            }
        }
    }
}

/// Splits `t` into elementary factors whose product, taken left to right,
/// equals `t`. Identity factors are omitted.
///
/// With `alpha != 0`:
/// `t = lower(gamma/alpha) * scale(alpha, d/alpha) * upper(beta/alpha)`.
/// With `alpha = 0` (hence `gamma != 0`) an `upper(-1)` factor is put in
/// front and the rest `upper(1) * t`, whose `alpha` entry is `gamma`, is
/// split as above.
pub fn decompose(t: &LinearTransform) -> Result<Vec<ElementaryTransform>> {
    let d = t.determinant();
    if d.is_zero() {
        return Err(Error::SingularTransform);
    }
    if t.alpha.is_zero() {
        let shifted = ElementaryTransform::UpperShear { beta: rat(1) }.to_linear().then(t);
        let mut out = vec![ElementaryTransform::UpperShear { beta: rat(-1) }];
        out.extend(decompose(&shifted)?);
        return Ok(out);
    }
    let mut out = Vec::with_capacity(3);
    if !t.gamma.is_zero() {
        out.push(ElementaryTransform::LowerShear { gamma: &t.gamma / &t.alpha });
    }
    let scale_delta = &d / &t.alpha;
    if !(t.alpha.is_one() && scale_delta.is_one()) {
        out.push(ElementaryTransform::Scale { alpha: t.alpha.clone(), delta: scale_delta });
    }
    if !t.beta.is_zero() {
        out.push(ElementaryTransform::UpperShear { beta: &t.beta / &t.alpha });
    }
    Ok(out)
}

/// Multiplies out a factor sequence.
pub fn compose(factors: &[ElementaryTransform]) -> LinearTransform {
    factors.iter().fold(LinearTransform::identity(), |acc, e| acc.then(&e.to_linear()))
}

/// Seeded source of small random rationals and nonsingular transforms.
///
/// Numerators are uniform in `[-9, 9]`, denominators in `[1, 9]`.
pub struct TrialRng(ChaCha8Rng);

impl TrialRng {
    pub fn new(seed: u64) -> Self {
        TrialRng(ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn rational(&mut self) -> Rational {
        let num: i64 = self.0.gen_range(-9..=9);
        let den: i64 = self.0.gen_range(1..=9);
        Rational::new(num.into(), den.into())
    }

    pub fn nonzero_rational(&mut self) -> Rational {
        loop {
            let r = self.rational();
            if !r.is_zero() {
                return r;
            }
        }
    }

    pub fn coeffs(&mut self, n: usize) -> Vec<Rational> {
        (0..=n).map(|_| self.rational()).collect()
    }

    pub fn transform(&mut self) -> LinearTransform {
        loop {
            let (a, b, c, d) = (self.rational(), self.rational(), self.rational(), self.rational());
            if let Ok(t) = LinearTransform::new(a, b, c, d) {
                return t;
            }
        }
    }

    pub fn diagonal(&mut self) -> LinearTransform {
        let (a, d) = (self.nonzero_rational(), self.nonzero_rational());
        LinearTransform::new(a, Rational::zero(), Rational::zero(), d).expect("nonzero diagonal")
    }

    pub fn inner(&mut self) -> &mut ChaCha8Rng {
        &mut self.0
    }
}

/// A failed trial: `I(a')` differs from `factor * I(a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub trial: usize,
    pub coeffs: Vec<Rational>,
    pub transform: LinearTransform,
    pub transformed: Vec<Rational>,
    pub lhs: Rational,
    pub rhs: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FailureReason {
    OrderMismatch {
        expected: usize,
        got: usize,
    },
    NotHomogeneous,
    NotIsobaric,
    /// `n * g != 2p`: no invariant can have this grading.
    WeightDegreeMismatch {
        n: usize,
        degree: u64,
        weight: u64,
    },
    Counterexample(Box<Counterexample>),
}

impl fmt::Display for FailureReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FailureReason::OrderMismatch { expected, got } => {
                write!(f, "polynomial has order {got}, expected {expected}")
            }
            FailureReason::NotHomogeneous => f.write_str("not homogeneous, so not an invariant"),
            FailureReason::NotIsobaric => f.write_str("not isobaric, so not an invariant"),
            FailureReason::WeightDegreeMismatch { n, degree, weight } => {
                write!(f, "n*g = {} differs from 2p = {}, so not an invariant", *n as u64 * degree, 2 * weight)
            }
            FailureReason::Counterexample(c) => {
                let show = |v: &[Rational]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
                write!(
                    f,
                    "counterexample at trial {}: coeffs ({}) matrix {} gives coeffs' ({}); I(a') = {} but expected {}",
                    c.trial,
                    show(&c.coeffs),
                    c.transform,
                    show(&c.transformed),
                    c.lhs,
                    c.rhs
                )
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass { trials: usize, degree: u64, weight: u64 },
    Fail(FailureReason),
}

impl Verdict {
    pub fn passed(&self) -> bool {
        matches!(self, Verdict::Pass { .. })
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass { trials, degree, weight } => {
                write!(f, "pass: I(a') = d^{weight} I(a) in {trials} random trials (degree {degree}, weight {weight})")
            }
            Verdict::Fail(r) => write!(f, "fail: {r}"),
        }
    }
}

fn grading_of(i: &CoeffPolynomial, n: usize) -> std::result::Result<(u64, u64), FailureReason> {
    if i.order() != n {
        return Err(FailureReason::OrderMismatch { expected: n, got: i.order() });
    }
    let a = i.analyze();
    if !a.homogeneous {
        return Err(FailureReason::NotHomogeneous);
    }
    if !a.isobaric {
        return Err(FailureReason::NotIsobaric);
    }
    Ok(a.grading().expect("graded"))
}

fn run_trials(
    i: &CoeffPolynomial,
    trials: usize,
    rng: &mut TrialRng,
    mut draw: impl FnMut(&mut TrialRng) -> LinearTransform,
    factor: impl Fn(&LinearTransform) -> Rational,
) -> Option<Counterexample> {
    let n = i.order();
    for trial in 0..trials {
        let coeffs = rng.coeffs(n);
        let t = draw(rng);
        let image = BinaryForm::new(Convention::Binomial, coeffs.clone()).transform(&t);
        let lhs = i.evaluate(image.coeffs()).expect("length n+1");
        let rhs = factor(&t) * i.evaluate(&coeffs).expect("length n+1");
        if lhs != rhs {
            return Some(Counterexample { trial, coeffs, transform: t, transformed: image.into_coeffs(), lhs, rhs });
        }
    }
    None
}

/// Checks `I(a') = d^p I(a)` exactly on `trials` random coefficient vectors
/// and nonsingular transforms, with `a'` computed in the binomial convention.
///
/// Polynomials that are not homogeneous and isobaric with `n*g = 2p` fail
/// immediately without sampling.
pub fn check_invariance(i: &CoeffPolynomial, n: usize, trials: usize, seed: u64) -> Verdict {
    let (g, p) = match grading_of(i, n) {
        Ok(gp) => gp,
        Err(r) => return Verdict::Fail(r),
    };
    if n as u64 * g != 2 * p {
        return Verdict::Fail(FailureReason::WeightDegreeMismatch { n, degree: g, weight: p });
    }
    let mut rng = TrialRng::new(seed);
    let exp = usize::try_from(p).expect("weight fits in usize");
    match run_trials(i, trials, &mut rng, TrialRng::transform, |t| num_traits::pow(t.determinant(), exp)) {
        None => Verdict::Pass { trials, degree: g, weight: p },
        Some(c) => Verdict::Fail(FailureReason::Counterexample(Box::new(c))),
    }
}

/// Diagonal-only check for any homogeneous isobaric `I` of grading `(g, p)`:
/// under `x = alpha x', y = delta y'` it must pick up exactly
/// `alpha^(n g - p) delta^p`, which is `(alpha delta)^p` when `n g = 2p`.
pub fn check_diagonal_scaling(i: &CoeffPolynomial, trials: usize, seed: u64) -> Verdict {
    let n = i.order();
    let (g, p) = match grading_of(i, n) {
        Ok(gp) => gp,
        Err(r) => return Verdict::Fail(r),
    };
    let alpha_exp = usize::try_from(n as u64 * g - p).expect("weight never exceeds n*g");
    let delta_exp = usize::try_from(p).expect("weight fits in usize");
    let mut rng = TrialRng::new(seed);
    match run_trials(i, trials, &mut rng, TrialRng::diagonal, |t| {
        num_traits::pow(t.alpha.clone(), alpha_exp) * num_traits::pow(t.delta.clone(), delta_exp)
    }) {
        None => Verdict::Pass { trials, degree: g, weight: p },
        Some(c) => Verdict::Fail(FailureReason::Counterexample(Box::new(c))),
    }
}

/// `a0 a2 - a1^2` for a quadratic in the binomial convention.
pub fn quadratic_discriminant(coeffs: &[Rational]) -> Rational {
    assert_eq!(coeffs.len(), 3);
    &coeffs[0] * &coeffs[2] - &coeffs[1] * &coeffs[1]
}
