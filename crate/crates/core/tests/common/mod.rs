#![allow(dead_code)]

use binform::discovery::enumerate_isobaric;
use binform::{rat, CoeffMonomial, CoeffPolynomial, Rational};
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

/// Random rational with numerator in [-9, 9] \ {0} and denominator in [1, 9].
pub fn nonzero_rational<R: Rng>(rng: &mut R) -> Rational {
    loop {
        let num: i64 = rng.gen_range(-9..=9);
        if num != 0 {
            return Rational::new(num.into(), rng.gen_range(1..=9i64).into());
        }
    }
}

/// A random nonzero homogeneous isobaric polynomial of order `n`, degree `g`
/// and the given weight, or `None` if no monomial has that grading.
pub fn random_with_weight<R: Rng>(rng: &mut R, n: usize, g: u32, p: u64) -> Option<CoeffPolynomial> {
    let monos = enumerate_isobaric(n, g, p);
    if monos.is_empty() {
        return None;
    }
    let k = rng.gen_range(1..=monos.len().min(5));
    let chosen: Vec<_> = monos.choose_multiple(rng, k).cloned().collect();
    Some(CoeffPolynomial::from_terms(n, chosen.into_iter().map(|m| (m, nonzero_rational(rng)))))
}

/// A random nonzero homogeneous isobaric polynomial of order `n` and degree
/// `g`, with the weight drawn uniformly from `0..=n*g`.
pub fn random_graded<R: Rng>(rng: &mut R, n: usize, g: u32) -> CoeffPolynomial {
    loop {
        let p = rng.gen_range(0..=n as u64 * u64::from(g));
        if let Some(poly) = random_with_weight(rng, n, g, p) {
            return poly;
        }
    }
}

/// The test suite of graded polynomials: `count` draws cycling through
/// `n in 1..=6`, `g in 1..=4`.
pub fn graded_suite<R: Rng>(rng: &mut R, count: usize) -> Vec<CoeffPolynomial> {
    (0..count)
        .map(|i| {
            let n = 1 + i % 6;
            let g = 1 + (i / 6) as u32 % 4;
            random_graded(rng, n, g)
        })
        .collect()
}

/// Dense rational Gauss-Jordan elimination. Returns (rank, kernel basis)
/// with each kernel vector scaled to a primitive integer vector whose first
/// nonzero entry is positive.
pub fn dense_kernel(mut m: Vec<Vec<Rational>>, cols: usize) -> (usize, Vec<Vec<Rational>>) {
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        let inv = Rational::one() / m[r][c].clone();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let pivot_row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    let rank = r;
    let mut basis = Vec::new();
    for f in (0..cols).filter(|c| !pivot_cols.contains(c)) {
        let mut v = vec![Rational::zero(); cols];
        v[f] = Rational::one();
        for (row, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -m[row][f].clone();
        }
        basis.push(normalize(v));
    }
    (rank, basis)
}

pub fn normalize(v: Vec<Rational>) -> Vec<Rational> {
    use num_integer::Integer;
    let lcm = v.iter().fold(num_bigint::BigInt::one(), |a, x| a.lcm(x.denom()));
    let ints: Vec<_> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let g = ints.iter().fold(num_bigint::BigInt::zero(), |a, x| a.gcd(x));
    let sign = ints.iter().find(|x| !x.is_zero()).map_or(1, |x| if *x < num_bigint::BigInt::zero() { -1 } else { 1 });
    ints.into_iter().map(|x| Rational::from_integer(x * sign / &g)).collect()
}

/// Matrix of `D` on degree-`g` monomials, from weight `p` (columns) to
/// weight `p - 1` (rows), built straight from the exponent-vector rule
/// `a_(i-1) d/da_i` with multiplier `i * v_i`. Monomials are produced by
/// brute force and sorted into graded-lex descending order.
pub fn dense_d_matrix(n: usize, g: u32, p: u64) -> (Vec<Vec<u32>>, Vec<Vec<Rational>>) {
    let src = brute_monomials(n, g, p);
    let tgt = if p == 0 { Vec::new() } else { brute_monomials(n, g, p - 1) };
    let mut m = vec![vec![Rational::zero(); src.len()]; tgt.len()];
    for (c, e) in src.iter().enumerate() {
        for i in 1..=n {
            if e[i] == 0 {
                continue;
            }
            let mut t = e.clone();
            t[i] -= 1;
            t[i - 1] += 1;
            let r = tgt.iter().position(|x| *x == t).expect("target monomial");
            m[r][c] += rat(i as i64 * i64::from(e[i]));
        }
    }
    (src, m)
}

pub fn brute_monomials(n: usize, g: u32, p: u64) -> Vec<Vec<u32>> {
    let mut all: Vec<Vec<u32>> = vec![vec![]];
    for _ in 0..=n {
        all = all
            .into_iter()
            .flat_map(|v| {
                (0..=g).map(move |e| {
                    let mut w = v.clone();
                    w.push(e);
                    w
                })
            })
            .collect();
    }
    let mut out: Vec<Vec<u32>> = all
        .into_iter()
        .filter(|v| {
            v.iter().sum::<u32>() == g && v.iter().enumerate().map(|(i, &e)| i as u64 * u64::from(e)).sum::<u64>() == p
        })
        .collect();
    // graded-lex descending: all have equal degree, so plain lex descending
    out.sort_by(|a, b| b.cmp(a));
    out
}

/// Kernel of the dense `D` matrix as polynomials.
pub fn oracle_invariants(n: usize, g: u32) -> Vec<CoeffPolynomial> {
    let p = n as u64 * u64::from(g) / 2;
    let (src, m) = dense_d_matrix(n, g, p);
    let (_, basis) = dense_kernel(m, src.len());
    basis
        .into_iter()
        .map(|v| CoeffPolynomial::from_terms(n, src.iter().cloned().map(CoeffMonomial::new).zip(v)))
        .collect()
}

pub fn poly(n: usize, terms: &[(i64, &[u32])]) -> CoeffPolynomial {
    CoeffPolynomial::from_terms(n, terms.iter().map(|&(c, e)| (CoeffMonomial::new(e.to_vec()), rat(c))))
}
