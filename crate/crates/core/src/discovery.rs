//! Invariants of given order and degree, found as the kernel of `D`.
//!
//! An invariant of degree `g` for a form of order `n` is isobaric of weight
//! `p = n g / 2`, so `n g` must be even. Such a polynomial is an invariant
//! exactly when `D` annihilates it, and `D` maps the weight-`p` monomials of
//! degree `g` into the weight-`(p-1)` ones. The kernel of that linear map is
//! the space of invariants.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::algebra::{CoeffMonomial, CoeffPolynomial};
use crate::annihilators::{apply_d, apply_delta};
use crate::error::{Error, Result};
use crate::linalg::{kernel, SparseMatrix};
use crate::Rational;

/// All exponent vectors of length `n + 1` with degree `g` and weight `p`,
/// leading monomial first.
pub fn enumerate_isobaric(n: usize, g: u32, p: u64) -> Vec<CoeffMonomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u32; n + 1];
    fill(n, 0, u64::from(g), p, &mut exps, &mut out);
    out
}

fn fill(n: usize, i: usize, deg_left: u64, weight_left: u64, exps: &mut [u32], out: &mut Vec<CoeffMonomial>) {
    if i == n {
        // the last slot takes the remaining degree; weight must match exactly
        if deg_left * n as u64 == weight_left {
            exps[n] = deg_left as u32;
            out.push(CoeffMonomial::new(exps.to_vec()));
            exps[n] = 0;
        }
        return;
    }
    // Slots i..=n can absorb weight between i*deg and n*deg.
    if weight_left < i as u64 * deg_left || weight_left > n as u64 * deg_left {
        return;
    }
    for e in (0..=deg_left).rev() {
        let w = i as u64 * e;
        if w > weight_left {
            continue;
        }
        exps[i] = e as u32;
        fill(n, i + 1, deg_left - e, weight_left - w, exps, out);
    }
    exps[i] = 0;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DiscoveryRequest {
    n: usize,
    degree: u32,
}

impl DiscoveryRequest {
    /// `n >= 1` and `degree >= 1`; constants are not searched for.
    pub fn new(n: usize, degree: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidRequest("order n must be at least 1".into()));
        }
        if degree == 0 {
            return Err(Error::InvalidRequest("degree must be at least 1".into()));
        }
        Ok(DiscoveryRequest { n, degree })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DiscoveryStatus {
    Ok,
    InfeasibleOddNg,
}

impl fmt::Display for DiscoveryStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DiscoveryStatus::Ok => "ok",
            DiscoveryStatus::InfeasibleOddNg => "infeasible_odd_ng",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscoveryResult {
    pub status: DiscoveryStatus,
    pub n: usize,
    pub degree: u32,
    pub weight: Option<u64>,
    pub monomial_count: usize,
    /// Primitive integer polynomials with positive leading coefficient.
    pub basis: Vec<CoeffPolynomial>,
}

impl DiscoveryResult {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

/// Sparse matrix of `D` from `source` monomials (columns) to `target`
/// monomials (rows).
pub fn d_matrix(source: &[CoeffMonomial], target: &[CoeffMonomial]) -> SparseMatrix {
    let row_of: HashMap<&CoeffMonomial, usize> = target.iter().enumerate().map(|(r, m)| (m, r)).collect();
    let mut rows: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); target.len()];
    for (col, m) in source.iter().enumerate() {
        let image = apply_d(&CoeffPolynomial::from_terms(m.order(), [(m.clone(), crate::rat(1))]));
        for (tm, c) in image.terms() {
            let r = row_of[tm];
            rows[r].push((col, c.clone()));
        }
    }
    let mut matrix = SparseMatrix::new(source.len());
    for row in rows {
        matrix.push_row(row);
    }
    matrix
}

/// Basis of all invariants of the requested order and degree.
///
/// Panics if a kernel element is not also annihilated by `Delta`, which
/// cannot happen for `n g = 2p`.
pub fn discover(req: DiscoveryRequest) -> DiscoveryResult {
    let (n, g) = (req.n, req.degree);
    let ng = n as u64 * u64::from(g);
    if ng % 2 == 1 {
        return DiscoveryResult {
            status: DiscoveryStatus::InfeasibleOddNg,
            n,
            degree: g,
            weight: None,
            monomial_count: 0,
            basis: Vec::new(),
        };
    }
    let p = ng / 2;
    let source = enumerate_isobaric(n, g, p);
    let target = enumerate_isobaric(n, g, p - 1);
    let matrix = d_matrix(&source, &target);

    let basis: Vec<CoeffPolynomial> = kernel(&matrix)
        .into_iter()
        .map(|v| CoeffPolynomial::from_terms(n, source.iter().cloned().zip(v)).primitive())
        .collect();

    for b in &basis {
        assert!(apply_d(b).is_zero(), "kernel element {b} is not annihilated by D");
        assert!(apply_delta(b).is_zero(), "invariant {b} is not annihilated by Delta");
    }

    DiscoveryResult { status: DiscoveryStatus::Ok, n, degree: g, weight: Some(p), monomial_count: source.len(), basis }
}
