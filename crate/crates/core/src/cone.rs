//! Rational polyhedral cones in both representations.
//!
//! A [`Cone`] stores its extreme rays and its irredundant support forms
//! `λᵢ`, each primitive and oriented so that `λᵢ ≥ 0` on the cone. Lines
//! are allowed: the lineality space is recorded separately and rays are
//! representatives modulo it. For cones that are not full-dimensional the
//! linear forms vanishing on the span are kept as `equations`, and support
//! forms are only meaningful modulo those.
//!
//! Conversion between the two sides is done with the double description
//! method, processing one inequality at a time.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact_linalg::{integer_kernel, primitive, Int, IntMatrix, IntVector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    ambient_rank: usize,
    rays: Vec<IntVector>,
    facet_forms: Vec<IntVector>,
    lineality: Vec<IntVector>,
    equations: Vec<IntVector>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Membership {
    /// `λᵢ(x) ≥ 0` for every support form.
    Closure,
    /// `λᵢ(x) ≥ 1` for every support form (relative interior, lattice points).
    Interior,
}

impl Cone {
    /// The cone generated by `generators`. Zero vectors are ignored.
    pub fn from_rays(ambient_rank: usize, generators: &[IntVector]) -> Result<Cone> {
        check_ranks(ambient_rank, generators)?;
        let gens: Vec<IntVector> = generators.iter().filter(|g| !g.is_zero()).cloned().collect();
        if gens.is_empty() {
            return Ok(Cone {
                ambient_rank,
                rays: Vec::new(),
                facet_forms: Vec::new(),
                lineality: Vec::new(),
                equations: IntMatrix::identity(ambient_rank).into_rows(),
            });
        }
        let equations = integer_kernel(&IntMatrix::from_rows(ambient_rank, gens.clone()));
        let (mut forms, _) = double_description(ambient_rank, &gens);
        forms.sort_by(|a, b| b.cmp(a));

        let mut constraints = forms.clone();
        for e in &equations {
            constraints.push(e.clone());
            constraints.push(e.neg());
        }
        let (mut rays, _) = double_description(ambient_rank, &constraints);
        rays.sort();
        let lineality = integer_kernel(&IntMatrix::from_rows(ambient_rank, constraints));

        Ok(Cone {
            ambient_rank,
            rays,
            facet_forms: forms,
            lineality,
            equations,
        })
    }

    /// The cone `{x : λ(x) ≥ 0 for every λ in forms}`.
    pub fn from_facets(ambient_rank: usize, forms: &[IntVector]) -> Result<Cone> {
        check_ranks(ambient_rank, forms)?;
        let (rays, lineality) = double_description(ambient_rank, forms);
        let mut gens = rays;
        for l in lineality {
            gens.push(l.neg());
            gens.push(l);
        }
        Cone::from_rays(ambient_rank, &gens)
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    /// Extreme rays, primitive and sorted; representatives modulo the
    /// lineality space when the cone is not pointed.
    pub fn rays(&self) -> &[IntVector] {
        &self.rays
    }

    /// Support forms in decreasing lexicographic order, so that coordinate
    /// forms come out in coordinate order.
    pub fn facet_forms(&self) -> &[IntVector] {
        &self.facet_forms
    }

    /// The support forms as the rows of an `s × r` matrix.
    pub fn facet_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(self.ambient_rank, self.facet_forms.clone())
    }

    pub fn lineality(&self) -> &[IntVector] {
        &self.lineality
    }

    pub fn equations(&self) -> &[IntVector] {
        &self.equations
    }

    pub fn dim(&self) -> usize {
        self.ambient_rank - self.equations.len()
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.equations.is_empty()
    }

    /// Values `λᵢ(x)` of all support forms.
    pub fn evaluate(&self, x: &IntVector) -> Vec<Int> {
        self.facet_forms.iter().map(|f| f.dot(x)).collect()
    }

    pub fn membership(&self, x: &IntVector, mode: Membership) -> Result<bool> {
        if x.len() != self.ambient_rank {
            return Err(Error::RankMismatch {
                expected: self.ambient_rank,
                found: x.len(),
            });
        }
        Ok(self.test(x, mode))
    }

    pub fn contains(&self, x: &IntVector) -> bool {
        self.test(x, Membership::Closure)
    }

    pub fn contains_in_interior(&self, x: &IntVector) -> bool {
        self.test(x, Membership::Interior)
    }

    fn test(&self, x: &IntVector, mode: Membership) -> bool {
        if self.equations.iter().any(|e| !e.dot(x).is_zero()) {
            return false;
        }
        let bound = match mode {
            Membership::Closure => Int::zero(),
            Membership::Interior => Int::one(),
        };
        self.facet_forms.iter().all(|f| f.dot(x) >= bound)
    }
}

fn check_ranks(ambient_rank: usize, vs: &[IntVector]) -> Result<()> {
    match vs.iter().find(|v| v.len() != ambient_rank) {
        Some(v) => Err(Error::RankMismatch {
            expected: ambient_rank,
            found: v.len(),
        }),
        None => Ok(()),
    }
}

/// Irredundant primitive support forms of the cone generated by `rays`.
pub fn facets_of_rays(ambient_rank: usize, rays: &[IntVector]) -> Result<Cone> {
    Cone::from_rays(ambient_rank, rays)
}

/// Extreme rays of `⋂ {λᵢ ≥ 0}`.
pub fn rays_of_facets(ambient_rank: usize, forms: &[IntVector]) -> Result<Cone> {
    Cone::from_facets(ambient_rank, forms)
}

pub fn membership(cone: &Cone, x: &IntVector, mode: Membership) -> Result<bool> {
    cone.membership(x, mode)
}

/// Dimension of the linear span of the cone.
pub fn cone_dim(cone: &Cone) -> usize {
    let mut gens = cone.rays.clone();
    gens.extend(cone.lineality.iter().cloned());
    if gens.is_empty() {
        return 0;
    }
    IntMatrix::from_rows(cone.ambient_rank, gens).rank()
}

/// Small fixed-width bitset over processed inequality indices.
#[derive(Clone, Debug, PartialEq, Eq)]
struct ZeroSet(Vec<u64>);

impl ZeroSet {
    fn of(ray: &IntVector, processed: &[&IntVector]) -> ZeroSet {
        let mut bits = vec![0u64; processed.len().div_ceil(64)];
        for (i, a) in processed.iter().enumerate() {
            if a.dot(ray).is_zero() {
                bits[i / 64] |= 1 << (i % 64);
            }
        }
        ZeroSet(bits)
    }

    fn meet(&self, other: &ZeroSet) -> ZeroSet {
        ZeroSet(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn is_subset_of(&self, other: &ZeroSet) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }
}

/// Double description of `{x ∈ ℝⁿ : a·x ≥ 0 for all a}`.
///
/// Returns primitive extreme rays (modulo the lineality space) and a basis of
/// the lineality space. The iteration starts from the whole space, stored as
/// lineality, and intersects with one half-space at a time.
pub(crate) fn double_description(
    n: usize,
    inequalities: &[IntVector],
) -> (Vec<IntVector>, Vec<IntVector>) {
    let mut lineality: Vec<IntVector> = (0..n).map(|i| IntVector::unit(n, i)).collect();
    let mut rays: Vec<IntVector> = Vec::new();
    let mut processed: Vec<&IntVector> = Vec::new();

    for a in inequalities {
        if a.is_zero() {
            continue;
        }
        if let Some(pos) = lineality.iter().position(|l| !a.dot(l).is_zero()) {
            // the new half-space cuts a line: project the rest along it
            let mut l = lineality.remove(pos);
            let mut al = a.dot(&l);
            if al.is_negative() {
                l = l.neg();
                al = -al;
            }
            let project = |v: &IntVector| {
                let av = a.dot(v);
                if av.is_zero() {
                    v.clone()
                } else {
                    primitive(&v.combine(&al, &l, &-av)).expect("projection of a non-line vector")
                }
            };
            lineality = lineality.iter().map(project).collect();
            rays = rays.iter().map(project).collect();
            rays.push(primitive(&l).expect("nonzero line"));
        } else {
            let values: Vec<Int> = rays.iter().map(|r| a.dot(r)).collect();
            let zero_sets: Vec<ZeroSet> = rays.iter().map(|r| ZeroSet::of(r, &processed)).collect();
            let mut next = Vec::new();
            for (r, v) in rays.iter().zip(&values) {
                if !v.is_negative() {
                    next.push(r.clone());
                }
            }
            for (p, vp) in values.iter().enumerate().filter(|(_, v)| v.is_positive()) {
                for (q, vq) in values.iter().enumerate().filter(|(_, v)| v.is_negative()) {
                    let common = zero_sets[p].meet(&zero_sets[q]);
                    let blocked = (0..rays.len())
                        .any(|t| t != p && t != q && common.is_subset_of(&zero_sets[t]));
                    if blocked {
                        continue;
                    }
                    let r = rays[q].combine(vp, &rays[p], &-vq);
                    next.push(primitive(&r).expect("adjacent rays are independent"));
                }
            }
            rays = next;
        }
        processed.push(a);
    }
    (rays, lineality)
}
