//! Polynomial helpers for the ideal tests: random inputs, composition and
//! exact linear algebra over big rationals.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use monograde::groebner::{GroebnerBasis, Polynomial};

pub fn q(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Builds a polynomial from `(coefficient, exponents)` pairs.
pub fn poly(n: usize, terms: &[(i64, &[u32])]) -> Polynomial {
    Polynomial::from_terms(n, terms.iter().map(|(c, e)| (e.to_vec(), q(*c))))
}

pub fn random_poly(n: usize, max_terms: usize, max_exp: u32) -> impl Strategy<Value = Polynomial> {
    let coef = prop_oneof![-3i64..=-1, 1i64..=3];
    prop::collection::vec((coef, prop::collection::vec(0..=max_exp, n)), 1..=max_terms)
        .prop_map(move |ts| Polynomial::from_terms(n, ts.into_iter().map(|(c, e)| (e, q(c)))))
        .prop_filter("nonzero", |p| !p.is_zero())
}

pub fn random_ideal(n: usize, max_gens: usize) -> impl Strategy<Value = Vec<Polynomial>> {
    prop::collection::vec(random_poly(n, 3, 2), 1..=max_gens)
}

/// `f(images)`, with the images living in a common ring.
pub fn compose(f: &Polynomial, images: &[Polynomial]) -> Polynomial {
    let m = images[0].nvars();
    let mut out = Polynomial::zero(m);
    for (e, c) in f.terms() {
        let mut t = Polynomial::constant(m, c.clone());
        for (i, &k) in e.iter().enumerate() {
            t = &t * &images[i].pow(k);
        }
        out = &out + &t;
    }
    out
}

/// Exponent vectors of total degree at most `d`, generated by recursion.
pub fn monomials_up_to(n: usize, d: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for k in 0..=d {
        for mut rest in monomials_up_to(n - 1, d - k) {
            rest.insert(0, k);
            out.push(rest);
        }
    }
    out
}

pub fn rank_big(mut m: Vec<Vec<BigRational>>) -> usize {
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r].clone();
        for row in m.iter_mut().skip(r + 1) {
            if row[c].is_zero() {
                continue;
            }
            let f = &row[c] / &pivot[c];
            for (x, y) in row.iter_mut().zip(&pivot) {
                *x -= &f * y;
            }
        }
        r += 1;
    }
    r
}

/// Coefficient vector of `f` over the listed monomials; `None` when `f` has
/// a term outside the list.
pub fn coefficients(f: &Polynomial, basis: &[Vec<u32>]) -> Option<Vec<BigRational>> {
    if f.terms().keys().any(|m| !basis.contains(m)) {
        return None;
    }
    Some(basis.iter().map(|m| f.coefficient(m)).collect())
}

pub fn is_one(f: &Polynomial) -> bool {
    f.is_constant() && f.terms().values().all(|c| c.is_one())
}

/// Basis of `{c : Σ cᵢ rowsᵢ = 0}`, by reducing `[rows | I]` to echelon form.
pub fn left_kernel(rows: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let k = rows.len();
    let cols = rows.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..k).map(|j| if i == j { q(1) } else { q(0) }));
            row
        })
        .collect();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..k).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r].clone();
        for row in m.iter_mut().skip(r + 1) {
            if row[c].is_zero() {
                continue;
            }
            let f = &row[c] / &pivot[c];
            for (x, y) in row.iter_mut().zip(&pivot) {
                *x -= &f * y;
            }
        }
        r += 1;
    }
    m[r..].iter().map(|row| row[cols..].to_vec()).collect()
}

/// A basis of the homogeneous elements of `I` spanned by monomials of total
/// degree at most `d`, one multidegree at a time: kernel vectors of the
/// normal-form map.
pub fn homogeneous_members(gb: &GroebnerBasis, degrees: &[Vec<i64>], d: u32) -> Vec<Polynomial> {
    let n = gb.nvars();
    let mut pieces: BTreeMap<Vec<i64>, Vec<Vec<u32>>> = BTreeMap::new();
    for m in monomials_up_to(n, d) {
        let r = degrees[0].len();
        let deg: Vec<i64> = (0..r).map(|k| (0..n).map(|j| degrees[j][k] * m[j] as i64).sum()).collect();
        pieces.entry(deg).or_default().push(m);
    }
    let mut out = Vec::new();
    for monos in pieces.values() {
        let forms: Vec<Polynomial> =
            monos.iter().map(|m| gb.normal_form(&Polynomial::monomial(n, m.clone(), q(1)))).collect();
        let mut support: Vec<Vec<u32>> = forms.iter().flat_map(|f| f.terms().keys().cloned()).collect();
        support.sort();
        support.dedup();
        let rows: Vec<_> = forms.iter().map(|f| coefficients(f, &support).unwrap()).collect();
        for c in left_kernel(&rows) {
            out.push(Polynomial::from_terms(n, monos.iter().cloned().zip(c)));
        }
    }
    out
}
