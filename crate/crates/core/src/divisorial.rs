//! Divisorial ideals of a normal affine monoid ring `K[M]`.
//!
//! A graded divisorial ideal is determined by one integer `hᵢ` per support
//! form: its monomials are the `X^y` with `λᵢ(y) ≥ hᵢ` for all `i`. The
//! canonical module is the one with `h = (1, …, 1)` (the interior ideal),
//! and two height vectors give isomorphic ideals up to a shift exactly when
//! they differ by `Λ(g)` for a lattice point `g`.
//!
//! All points are in coordinates of the monoid's group `L`.

use std::ptr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact_linalg::{
    cokernel, solve_integer, solve_rational, AbelianQuotient, IntMatrix, IntVector,
};
use crate::monoid::hilbert::combinations;
use crate::monoid::{AffineMonoid, PointedQuotient};

/// The ideal `⋂ pᵢ^(hᵢ)` of a normal monoid ring.
#[derive(Clone, Debug)]
pub struct DivisorialIdeal<'a> {
    monoid: &'a AffineMonoid,
    h: IntVector,
}

impl<'a> DivisorialIdeal<'a> {
    pub fn new(monoid: &'a AffineMonoid, h: IntVector) -> Result<Self> {
        monoid.require_normal()?;
        let s = monoid.facet_forms().len();
        if h.len() != s {
            return Err(Error::RankMismatch {
                expected: s,
                found: h.len(),
            });
        }
        Ok(DivisorialIdeal { monoid, h })
    }

    /// The monoid ring itself, `h = 0`.
    pub fn unit(monoid: &'a AffineMonoid) -> Result<Self> {
        Self::new(monoid, IntVector::zeros(monoid.facet_forms().len()))
    }

    pub fn monoid(&self) -> &'a AffineMonoid {
        self.monoid
    }

    pub fn heights(&self) -> &IntVector {
        &self.h
    }

    pub fn contains(&self, y: &IntVector) -> bool {
        self.monoid
            .facet_forms()
            .iter()
            .zip(self.h.iter())
            .all(|(f, hi)| &f.dot(y) >= hi)
    }

    /// The ideal with heights `h + Λ(g)`, whose members are `g + members(h)`.
    pub fn translate(&self, g: &IntVector) -> DivisorialIdeal<'a> {
        let shift = self.monoid.facet_matrix().apply(g);
        DivisorialIdeal {
            monoid: self.monoid,
            h: self.h.add(&shift),
        }
    }

    /// Members `y` with every coordinate in `[-bound, bound]`, sorted.
    pub fn members(&self, bound: u32) -> Vec<IntVector> {
        let d = self.monoid.rank();
        let b = BigInt::from(bound);
        let lo = vec![-b.clone(); d];
        let hi = vec![b; d];
        let mut out = Vec::new();
        for_each_point(&lo, &hi, |y| {
            if self.contains(y) {
                out.push(y.clone());
            }
        });
        out.sort();
        out
    }

    /// The unique minimal set `G` with `region(h) = ⋃ (g + M)`, reported
    /// modulo units through the monoid's fixed section. Sorted.
    pub fn minimal_generators(&self) -> Vec<IntVector> {
        let q = self.monoid.quotient();
        let mut gens: Vec<IntVector> = quotient_minimal_generators(q, &self.h)
            .iter()
            .map(|y| q.lift(y))
            .collect();
        gens.sort();
        gens
    }
}

/// Minimal generators of `{y : λ̄ᵢ(y) ≥ hᵢ}` on the pointed quotient.
///
/// Any point of the region can be written `q + Σ μⱼvⱼ` with `q` in the convex
/// hull of the region's vertices and `vⱼ` extreme rays. If some `μⱼ ≥ 1`
/// the point minus `vⱼ` stays in the region, and `vⱼ` belongs to the
/// Hilbert basis, so minimal generators lie in the vertex hull plus the half
/// open zonotope of the rays. The search box is the bounding box of that set.
fn quotient_minimal_generators(q: &PointedQuotient, h: &IntVector) -> Vec<IntVector> {
    let m = q.rank();
    if m == 0 {
        return vec![IntVector::zeros(0)];
    }
    let forms = q.facet_forms();
    let in_region = |y: &IntVector| forms.iter().zip(h.iter()).all(|(f, hi)| &f.dot(y) >= hi);

    let mut lo: Vec<Option<BigRational>> = vec![None; m];
    let mut hi: Vec<Option<BigRational>> = vec![None; m];
    for subset in combinations(forms.len(), m) {
        let a = IntMatrix::from_rows(m, subset.iter().map(|&i| forms[i].clone()).collect());
        let rhs: IntVector = subset.iter().map(|&i| h[i].clone()).collect();
        let Some(x) = solve_rational(&a, &rhs) else {
            continue;
        };
        let feasible = forms.iter().zip(h.iter()).all(|(f, hi)| {
            let v: BigRational = f
                .iter()
                .zip(&x)
                .map(|(c, xi)| xi * BigRational::from_integer(c.clone()))
                .sum();
            v >= BigRational::from_integer(hi.clone())
        });
        if !feasible {
            continue;
        }
        for j in 0..m {
            if lo[j].as_ref().is_none_or(|l| &x[j] < l) {
                lo[j] = Some(x[j].clone());
            }
            if hi[j].as_ref().is_none_or(|u| &x[j] > u) {
                hi[j] = Some(x[j].clone());
            }
        }
    }

    let rays = q.cone().rays();
    let lo: Vec<BigInt> = (0..m)
        .map(|j| {
            let spread: BigInt = rays.iter().map(|v| v[j].clone().min(BigInt::zero())).sum();
            lo[j].as_ref().expect("pointed region has a vertex").floor().to_integer() + spread
        })
        .collect();
    let hi: Vec<BigInt> = (0..m)
        .map(|j| {
            let spread: BigInt = rays.iter().map(|v| v[j].clone().max(BigInt::zero())).sum();
            hi[j].as_ref().expect("pointed region has a vertex").ceil().to_integer() + spread
        })
        .collect();

    let hb = q.hilbert_basis();
    let mut out = Vec::new();
    for_each_point(&lo, &hi, |y| {
        if in_region(y) && hb.iter().all(|b| !in_region(&y.sub(b))) {
            out.push(y.clone());
        }
    });
    out
}

/// Calls `f` on every integer point of the box `lo ≤ y ≤ hi`.
fn for_each_point(lo: &[BigInt], hi: &[BigInt], mut f: impl FnMut(&IntVector)) {
    let n = lo.len();
    if lo.iter().zip(hi).any(|(l, h)| l > h) {
        return;
    }
    let mut y: IntVector = lo.iter().cloned().collect();
    loop {
        f(&y);
        let mut i = 0;
        loop {
            if i == n {
                return;
            }
            let e = &mut y.entries_mut()[i];
            if *e < hi[i] {
                *e += 1;
                break;
            }
            *e = lo[i].clone();
            i += 1;
        }
    }
}

/// The canonical module of `K[M]` with its minimal monomial generators.
#[derive(Clone, Debug)]
pub struct CanonicalModule<'a> {
    pub ideal: DivisorialIdeal<'a>,
    pub generators: Vec<IntVector>,
}

pub fn canonical_module(monoid: &AffineMonoid) -> Result<CanonicalModule<'_>> {
    let s = monoid.facet_forms().len();
    let ideal = DivisorialIdeal::new(monoid, IntVector::new(vec![BigInt::one(); s]))?;
    let generators = ideal.minimal_generators();
    Ok(CanonicalModule { ideal, generators })
}

pub fn members(ideal: &DivisorialIdeal<'_>, bound: u32) -> Vec<IntVector> {
    ideal.members(bound)
}

pub fn minimal_generators(ideal: &DivisorialIdeal<'_>) -> Vec<IntVector> {
    ideal.minimal_generators()
}

/// `ℤˢ / Λ(L)`: height vectors modulo those of principal ideals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorClassGroup {
    pub quotient: AbelianQuotient,
}

impl DivisorClassGroup {
    pub fn invariant_factors(&self) -> &[BigInt] {
        self.quotient.invariant_factors()
    }

    pub fn is_trivial(&self) -> bool {
        self.quotient.is_trivial()
    }

    pub fn class_of(&self, h: &IntVector) -> IntVector {
        self.quotient.classify(h)
    }
}

pub fn class_group(monoid: &AffineMonoid) -> Result<DivisorClassGroup> {
    monoid.require_normal()?;
    Ok(DivisorClassGroup {
        quotient: cokernel(&monoid.facet_matrix()),
    })
}

/// A lattice point `g` with `h₂ − h₁ = Λ(g)`, so that the second ideal is the
/// first one shifted by `g`.
pub fn same_class(a: &DivisorialIdeal<'_>, b: &DivisorialIdeal<'_>) -> Result<Option<IntVector>> {
    if !ptr::eq(a.monoid, b.monoid) {
        return Err(Error::MonoidMismatch);
    }
    let diff = b.h.sub(&a.h);
    let lambda = a.monoid.facet_matrix();
    if lambda.nrows() == 0 {
        return Ok(Some(IntVector::zeros(a.monoid.rank())));
    }
    Ok(solve_integer(&lambda, &diff))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GorensteinReport {
    pub gorenstein: bool,
    /// A point with `λᵢ(g) = 1` for all `i`, when one exists.
    pub certificate: Option<IntVector>,
    pub canonical_generators: Vec<IntVector>,
}

/// Decides whether the class of `(1, …, 1)` is trivial, and cross-checks
/// the answer against principality of the canonical module and against
/// [`same_class`] with the ring itself.
pub fn is_gorenstein(monoid: &AffineMonoid) -> Result<GorensteinReport> {
    let omega = canonical_module(monoid)?;
    let ring = DivisorialIdeal::unit(monoid)?;
    let certificate = same_class(&ring, &omega.ideal)?;
    let group = class_group(monoid)?;
    let class_trivial = group.quotient.is_zero_class(omega.ideal.heights());
    let principal = omega.generators.len() == 1;
    let gorenstein = certificate.is_some();
    if gorenstein != class_trivial || gorenstein != principal {
        return Err(Error::Inconsistent(format!(
            "Gorenstein tests disagree: translation {gorenstein}, class {class_trivial}, principal {principal}"
        )));
    }
    Ok(GorensteinReport {
        gorenstein,
        certificate,
        canonical_generators: omega.generators,
    })
}
