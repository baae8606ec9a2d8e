//! The annihilator operators on coefficient polynomials.
//!
//! ```text
//! D     = a0 d/da1 + 2 a1 d/da2 + ... + n a(n-1) d/dan
//! Delta = n a1 d/da0 + (n-1) a2 d/da1 + ... + an d/da(n-1)
//! ```
//!
//! `D` lowers the weight by one and `Delta` raises it by one. Invariants (in
//! the binomial convention) lie in the kernel of both. The residual functions
//! compute both sides of the commutator identities and return their
//! difference, which must vanish for every homogeneous isobaric input.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::algebra::CoeffPolynomial;
use crate::error::{Error, Result};
use crate::{rat, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OperatorKind {
    D,
    Delta,
}

impl fmt::Display for OperatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OperatorKind::D => "d",
            OperatorKind::Delta => "delta",
        })
    }
}

impl FromStr for OperatorKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "d" => Ok(OperatorKind::D),
            "delta" => Ok(OperatorKind::Delta),
            other => Err(format!("unknown operator `{other}` (expected d or delta)")),
        }
    }
}

/// `D P = sum_{i=1..n} i * a(i-1) * dP/da_i`.
pub fn apply_d(p: &CoeffPolynomial) -> CoeffPolynomial {
    let n = p.order();
    let mut out = CoeffPolynomial::zero(n);
    for (m, c) in p.terms() {
        for i in 1..=n {
            let e = m.exponent(i);
            if e > 0 {
                out.add_term(m.shift(i, i - 1), c * rat(i as i64 * i64::from(e)));
            }
        }
    }
    out
}

/// `Delta P = sum_{i=0..n-1} (n-i) * a(i+1) * dP/da_i`.
pub fn apply_delta(p: &CoeffPolynomial) -> CoeffPolynomial {
    let n = p.order();
    let mut out = CoeffPolynomial::zero(n);
    for (m, c) in p.terms() {
        for i in 0..n {
            let e = m.exponent(i);
            if e > 0 {
                out.add_term(m.shift(i, i + 1), c * rat((n - i) as i64 * i64::from(e)));
            }
        }
    }
    out
}

pub fn apply(kind: OperatorKind, p: &CoeffPolynomial) -> CoeffPolynomial {
    match kind {
        OperatorKind::D => apply_d(p),
        OperatorKind::Delta => apply_delta(p),
    }
}

/// `k`-fold application; `k = 0` is the identity.
pub fn apply_power(kind: OperatorKind, k: u32, p: &CoeffPolynomial) -> CoeffPolynomial {
    let mut out = p.clone();
    for _ in 0..k {
        if out.is_zero() {
            break;
        }
        out = apply(kind, &out);
    }
    out
}

/// `n*g - 2p` for a homogeneous isobaric operand.
fn defect(p: &CoeffPolynomial) -> Result<i64> {
    let a = p.analyze();
    if !a.homogeneous {
        return Err(Error::NotHomogeneous);
    }
    if !a.isobaric {
        return Err(Error::NotIsobaric);
    }
    Ok(a.defect.expect("graded polynomial has a defect"))
}

/// `(D Delta - Delta D) P - (n*g - 2p) P`.
///
/// The zero polynomial has no grading and is rejected like any other
/// ungraded input.
pub fn commutator_residual(p: &CoeffPolynomial) -> Result<CoeffPolynomial> {
    let s = defect(p)?;
    let lhs = apply_d(&apply_delta(p)).sub(&apply_delta(&apply_d(p)))?;
    lhs.sub(&p.scalar_mul(&rat(s)))
}

/// Power form of the commutator identity.
///
/// For `D`: `(D^k Delta - Delta D^k) P - k(ng - 2p + k - 1) D^(k-1) P`.
/// For `Delta`: `(D Delta^k - Delta^k D) P - k(ng - 2p - k + 1) Delta^(k-1) P`.
///
/// The scalar always uses the grading of `p` itself.
pub fn power_commutator_residual(kind: OperatorKind, k: u32, p: &CoeffPolynomial) -> Result<CoeffPolynomial> {
    if k == 0 {
        return Err(Error::ZeroPower);
    }
    let s = defect(p)?;
    let ki = i64::from(k);
    let (lhs, scalar) = match kind {
        OperatorKind::D => {
            let lhs = apply_power(OperatorKind::D, k, &apply_delta(p)).sub(&apply_delta(&apply_power(
                OperatorKind::D,
                k,
                p,
            )))?;
            (lhs, ki * (s + ki - 1))
        }
        OperatorKind::Delta => {
            let lhs = apply_d(&apply_power(OperatorKind::Delta, k, p)).sub(&apply_power(
                OperatorKind::Delta,
                k,
                &apply_d(p),
            ))?;
            (lhs, ki * (s - ki + 1))
        }
    };
    let rhs = apply_power(kind, k - 1, p).scalar_mul(&Rational::from_integer(scalar.into()));
    lhs.sub(&rhs)
}

/// Smallest `k` with `Delta^k P = 0` (`0` for the zero polynomial).
pub fn delta_nilpotency_index(p: &CoeffPolynomial) -> u64 {
    let mut k = 0;
    let mut cur = p.clone();
    while !cur.is_zero() {
        cur = apply_delta(&cur);
        k += 1;
    }
    k
}
