use num_integer::Integer;
use num_traits::{One, Zero};

use super::{hnf, snf, Int, IntMatrix, IntVector};

/// A finitely generated abelian group `ℤ/d₁ ⊕ … ⊕ ℤ/dₖ`, presented as a
/// quotient of `ℤˢ` together with the projection onto these coordinates.
///
/// Factors equal to one are dropped; a factor of zero is a free summand.
/// Torsion factors come first in ascending divisibility order, free ones last.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianQuotient {
    invariant_factors: Vec<Int>,
    projection: IntMatrix,
}

impl AbelianQuotient {
    pub fn invariant_factors(&self) -> &[Int] {
        &self.invariant_factors
    }

    /// Rows are quotient coordinates, columns index `ℤˢ`.
    pub fn projection(&self) -> &IntMatrix {
        &self.projection
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn free_rank(&self) -> usize {
        self.invariant_factors.iter().filter(|d| d.is_zero()).count()
    }

    /// Group order, or `None` when the group is infinite.
    pub fn order(&self) -> Option<Int> {
        if self.free_rank() > 0 {
            return None;
        }
        Some(self.invariant_factors.iter().product())
    }

    /// Reduced coordinates of the class of `x ∈ ℤˢ`.
    pub fn classify(&self, x: &IntVector) -> IntVector {
        self.projection
            .apply(x)
            .iter()
            .zip(&self.invariant_factors)
            .map(|(c, d)| if d.is_zero() { c.clone() } else { c.mod_floor(d) })
            .collect()
    }

    pub fn is_zero_class(&self, x: &IntVector) -> bool {
        self.classify(x).is_zero()
    }
}

/// `ℤᵐ / A·ℤⁿ` for an `m × n` matrix `A` (images are the columns).
pub fn cokernel(a: &IntMatrix) -> AbelianQuotient {
    let m = a.nrows();
    let f = snf(a);
    let diag = f.diagonal();
    let mut factors = Vec::new();
    let mut rows = Vec::new();
    for i in 0..m {
        let d = diag.get(i).cloned().unwrap_or_else(Int::zero);
        if d.is_one() {
            continue;
        }
        factors.push(d);
        rows.push(f.u.row(i).clone());
    }
    AbelianQuotient {
        invariant_factors: factors,
        projection: IntMatrix::from_rows(m, rows),
    }
}

/// An integer solution of `A·x = b`, if one exists.
pub fn solve_integer(a: &IntMatrix, b: &IntVector) -> Option<IntVector> {
    assert_eq!(a.nrows(), b.len(), "right-hand side has the wrong length");
    let f = snf(a);
    let c = f.u.apply(b);
    let diag = f.diagonal();
    let n = a.ncols();
    let mut y = IntVector::zeros(n);
    for (i, ci) in c.iter().enumerate() {
        match diag.get(i) {
            Some(d) if !d.is_zero() => {
                let (q, r) = ci.div_rem(d);
                if !r.is_zero() {
                    return None;
                }
                y.entries_mut()[i] = q;
            }
            _ => {
                if !ci.is_zero() {
                    return None;
                }
            }
        }
    }
    Some(f.v.apply(&y))
}

/// A basis of `{x ∈ ℤⁿ : A·x = 0}` in Hermite normal form. The kernel of an
/// integer matrix is always a saturated sublattice.
pub fn integer_kernel(a: &IntMatrix) -> Vec<IntVector> {
    let f = snf(a);
    let r = f.rank();
    let n = a.ncols();
    let basis: Vec<IntVector> = (r..n).map(|j| f.v.column(j)).collect();
    if basis.is_empty() {
        return basis;
    }
    hnf(&IntMatrix::from_rows(n, basis)).h.into_rows()
}

/// A basis of `span(vectors) ∩ ℤⁿ` in Hermite normal form.
pub fn saturated_span(n: usize, vectors: &[IntVector]) -> Vec<IntVector> {
    let live: Vec<IntVector> = vectors.iter().filter(|v| !v.is_zero()).cloned().collect();
    if live.is_empty() {
        return Vec::new();
    }
    let equations = integer_kernel(&IntMatrix::from_rows(n, live));
    if equations.is_empty() {
        return IntMatrix::identity(n).into_rows();
    }
    integer_kernel(&IntMatrix::from_rows(n, equations))
}

/// Whether `v` lies in the lattice spanned by `basis` (as rows).
pub fn lattice_contains(n: usize, basis: &[IntVector], v: &IntVector) -> bool {
    if v.is_zero() {
        return true;
    }
    if basis.is_empty() {
        return false;
    }
    let cols = IntMatrix::from_rows(n, basis.to_vec()).transpose();
    solve_integer(&cols, v).is_some()
}
