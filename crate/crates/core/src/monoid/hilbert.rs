//! Hilbert bases of pointed full-dimensional cones.
//!
//! Every irreducible element of `C ∩ ℤᵐ` is either an extreme ray generator
//! or lies in the half-open parallelepiped `{Σ qᵢvᵢ : 0 ≤ qᵢ < 1}` of some
//! linearly independent set of extreme rays (Carathéodory plus subtracting
//! whole rays). We enumerate those parallelepipeds through the Smith form of
//! the ray matrix, then keep the irreducible candidates in order of degree.

use std::collections::{BTreeSet, HashMap};

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::cone::Cone;
use crate::exact_linalg::{adjugate, determinant, snf, Int, IntMatrix, IntVector};

/// Hilbert basis of `cone ∩ ℤᵐ`, sorted lexicographically. The cone must be
/// pointed and full-dimensional.
pub(crate) fn pointed_hilbert_basis(cone: &Cone) -> Vec<IntVector> {
    let m = cone.ambient_rank();
    if m == 0 {
        return Vec::new();
    }
    debug_assert!(cone.is_pointed() && cone.is_full_dimensional());
    let rays = cone.rays();
    let grading = degree_form(cone);

    let mut candidates: BTreeSet<IntVector> = rays.iter().cloned().collect();
    for subset in combinations(rays.len(), m) {
        let cols: Vec<IntVector> = subset.iter().map(|&i| rays[i].clone()).collect();
        let basis = IntMatrix::from_columns(m, &cols);
        if determinant(&basis).is_zero() {
            continue;
        }
        candidates.extend(parallelepiped_points(&basis).into_iter().filter(|x| !x.is_zero()));
    }

    let mut ordered: Vec<(Int, IntVector)> =
        candidates.into_iter().map(|x| (grading.dot(&x), x)).collect();
    ordered.sort();

    let mut basis: Vec<IntVector> = Vec::new();
    for (_, x) in ordered {
        let reducible = basis.iter().any(|h| cone.contains(&x.sub(h)));
        if !reducible {
            basis.push(x);
        }
    }
    basis.sort();
    basis
}

/// Sum of the support forms; positive on every nonzero point of a pointed
/// full-dimensional cone.
pub(crate) fn degree_form(cone: &Cone) -> IntVector {
    let m = cone.ambient_rank();
    cone.facet_forms()
        .iter()
        .fold(IntVector::zeros(m), |acc, f| acc.add(f))
}

/// Lattice points of `{V·q : q ∈ [0,1)ᵐ}` for a nonsingular square `V`
/// (columns are the spanning vectors).
pub(crate) fn parallelepiped_points(v: &IntMatrix) -> Vec<IntVector> {
    let m = v.nrows();
    let det = determinant(v);
    let abs_det = det.abs();
    let adj = adjugate(v);
    let sign = if det.is_negative() { Int::from(-1) } else { Int::from(1) };

    // coset representatives of ℤᵐ / V·ℤᵐ via the Smith form
    let f = snf(v);
    let u_det = determinant(&f.u);
    let u_inv = adjugate(&f.u);
    let diag = f.diagonal();

    let mut points = Vec::new();
    let mut digits = vec![Int::zero(); m];
    loop {
        let e: IntVector = digits.iter().cloned().collect();
        let y = u_inv.apply(&e).scale(&u_det);
        let coeffs: IntVector = adj
            .apply(&y)
            .iter()
            .map(|a| (a * &sign).mod_floor(&abs_det))
            .collect();
        let x: IntVector = v.apply(&coeffs).iter().map(|c| c / &abs_det).collect();
        points.push(x);

        // odometer over Π [0, dᵢ)
        let mut i = 0;
        loop {
            if i == m {
                return points;
            }
            digits[i] += 1;
            if digits[i] < diag[i] {
                break;
            }
            digits[i] = Int::zero();
            i += 1;
        }
    }
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Membership of `x` in the monoid generated by `gens` inside a pointed cone.
///
/// Depth-first search on `x - g`, pruned to the cone and memoised; the
/// recursion depth is bounded by the degree of `x`.
pub(crate) fn generated_by(
    x: &IntVector,
    gens: &[IntVector],
    cone: &Cone,
    memo: &mut HashMap<IntVector, bool>,
) -> bool {
    if x.is_zero() {
        return true;
    }
    if let Some(&known) = memo.get(x) {
        return known;
    }
    let found = gens.iter().any(|g| {
        let rest = x.sub(g);
        cone.contains(&rest) && generated_by(&rest, gens, cone, memo)
    });
    memo.insert(x.clone(), found);
    found
}
