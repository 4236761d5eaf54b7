//! Affine monoids `M ⊂ ℤʳ` and their normal presentations `M = C ∩ L`.
//!
//! An [`AffineMonoid`] is always stored in coordinates of the group `L`
//! generated by its generators, so that `L` becomes `ℤᵈ` and the cone is
//! full-dimensional there. The unit group `N = {x : λᵢ(x) = 0}` is split off
//! by a unimodular change of coordinates; Hilbert bases and minimal
//! generators are computed on the pointed quotient `ℤᵈ / N` and lifted back
//! through a fixed section.

pub(crate) mod hilbert;

use std::collections::HashMap;

use num_traits::Zero;

use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::exact_linalg::{
    adjugate, determinant, hnf, saturated_span, snf, solve_integer, IntMatrix, IntVector,
};

use hilbert::{generated_by, pointed_hilbert_basis};

/// A finitely generated submonoid of `ℤʳ`.
#[derive(Clone, Debug)]
pub struct AffineMonoid {
    generators: Vec<IntVector>,
    lattice_basis: IntMatrix,
    coordinates: Vec<IntVector>,
    cone: Cone,
    units: Vec<IntVector>,
    quotient: PointedQuotient,
    hilbert_basis: Vec<IntVector>,
    non_normal_witness: Option<IntVector>,
}

/// The pointed part `ℤᵈ / N` of a monoid's group.
#[derive(Clone, Debug)]
pub struct PointedQuotient {
    projection: IntMatrix,
    section: IntMatrix,
    facet_forms: Vec<IntVector>,
    cone: Cone,
    hilbert_basis: Vec<IntVector>,
}

impl PointedQuotient {
    fn new(cone: &Cone) -> Result<PointedQuotient> {
        let d = cone.ambient_rank();
        let units = cone.lineality();
        let k = units.len();
        let (projection, section) = if k == 0 {
            (IntMatrix::identity(d), IntMatrix::identity(d))
        } else {
            // U·Kᵀ·V = [I; 0] because N is saturated
            let f = snf(&IntMatrix::from_columns(d, units));
            let u_inv = adjugate(&f.u);
            let sign = determinant(&f.u);
            let projection = IntMatrix::from_rows(d, f.u.rows()[k..].to_vec());
            let section_cols: Vec<IntVector> =
                (k..d).map(|j| u_inv.column(j).scale(&sign)).collect();
            (projection, IntMatrix::from_columns(d, &section_cols))
        };
        let m = d - k;
        let facet_forms: Vec<IntVector> = cone
            .facet_forms()
            .iter()
            .map(|f| section.apply_left(f))
            .collect();
        let qcone = Cone::from_facets(m, &facet_forms)?;
        let hilbert_basis = pointed_hilbert_basis(&qcone);
        Ok(PointedQuotient {
            projection,
            section,
            facet_forms,
            cone: qcone,
            hilbert_basis,
        })
    }

    /// Rank of the quotient lattice, `rank L − rank N`.
    pub fn rank(&self) -> usize {
        self.projection.nrows()
    }

    pub fn project(&self, x: &IntVector) -> IntVector {
        self.projection.apply(x)
    }

    pub fn lift(&self, x: &IntVector) -> IntVector {
        self.section.apply(x)
    }

    /// Support forms on the quotient, in the same order as the monoid's.
    pub fn facet_forms(&self) -> &[IntVector] {
        &self.facet_forms
    }

    pub fn cone(&self) -> &Cone {
        &self.cone
    }

    pub fn hilbert_basis(&self) -> &[IntVector] {
        &self.hilbert_basis
    }
}

impl AffineMonoid {
    /// The monoid generated by `generators`, rewritten in a basis of the
    /// group it generates.
    pub fn from_generators(generators: &[IntVector]) -> Result<AffineMonoid> {
        let r = ambient_rank_of(generators)?;
        let gens: Vec<IntVector> = generators.iter().filter(|g| !g.is_zero()).cloned().collect();
        if gens.is_empty() {
            return Err(Error::TrivialMonoid);
        }
        let lattice_basis = hnf(&IntMatrix::from_rows(r, gens.clone())).h;
        Self::build(gens, lattice_basis)
    }

    /// The normal monoid `C ∩ ℤʳ` for the cone `C` spanned by `rays`. Its
    /// group is the saturation of the span of the rays.
    pub fn from_cone(rays: &[IntVector]) -> Result<AffineMonoid> {
        let r = ambient_rank_of(rays)?;
        let basis = saturated_span(r, rays);
        if basis.is_empty() {
            return Err(Error::TrivialMonoid);
        }
        let lattice_basis = IntMatrix::from_rows(r, basis);
        let coords = to_coordinates(&lattice_basis, rays)?;
        let d = lattice_basis.nrows();
        let cone = Cone::from_rays(d, &coords)?;
        let quotient = PointedQuotient::new(&cone)?;
        let mut gens: Vec<IntVector> = quotient
            .hilbert_basis
            .iter()
            .map(|b| lattice_basis.apply_left(&quotient.lift(b)))
            .collect();
        for u in cone.lineality() {
            let amb = lattice_basis.apply_left(u);
            gens.push(amb.neg());
            gens.push(amb);
        }
        Self::build(gens, lattice_basis)
    }

    fn build(generators: Vec<IntVector>, lattice_basis: IntMatrix) -> Result<AffineMonoid> {
        let d = lattice_basis.nrows();
        let coordinates = to_coordinates(&lattice_basis, &generators)?;
        let cone = Cone::from_rays(d, &coordinates)?;
        let units = cone.lineality().to_vec();
        let quotient = PointedQuotient::new(&cone)?;
        let hilbert_basis: Vec<IntVector> = {
            let mut hb: Vec<IntVector> =
                quotient.hilbert_basis.iter().map(|b| quotient.lift(b)).collect();
            hb.sort();
            hb
        };
        let non_normal_witness = find_non_normal_witness(&coordinates, &cone, &units, &quotient);
        Ok(AffineMonoid {
            generators,
            lattice_basis,
            coordinates,
            cone,
            units,
            quotient,
            hilbert_basis,
            non_normal_witness,
        })
    }

    pub fn ambient_rank(&self) -> usize {
        self.lattice_basis.ncols()
    }

    /// Rank of the group `L`.
    pub fn rank(&self) -> usize {
        self.lattice_basis.nrows()
    }

    /// Generators as supplied, in ambient coordinates.
    pub fn generators(&self) -> &[IntVector] {
        &self.generators
    }

    /// Rows form a basis of `L ⊂ ℤʳ` in Hermite normal form.
    pub fn lattice_basis(&self) -> &IntMatrix {
        &self.lattice_basis
    }

    /// Generators in coordinates of `L`.
    pub fn coordinates(&self) -> &[IntVector] {
        &self.coordinates
    }

    /// The cone over the generators, in coordinates of `L`.
    pub fn cone(&self) -> &Cone {
        &self.cone
    }

    pub fn facet_forms(&self) -> &[IntVector] {
        self.cone.facet_forms()
    }

    pub fn facet_matrix(&self) -> IntMatrix {
        self.cone.facet_matrix()
    }

    pub fn units(&self) -> &[IntVector] {
        &self.units
    }

    pub fn quotient(&self) -> &PointedQuotient {
        &self.quotient
    }

    pub fn is_normal(&self) -> bool {
        self.non_normal_witness.is_none()
    }

    /// A point of `C ∩ L` missing from the monoid, in coordinates of `L`.
    pub fn non_normal_witness(&self) -> Option<&IntVector> {
        self.non_normal_witness.as_ref()
    }

    pub fn require_normal(&self) -> Result<()> {
        match &self.non_normal_witness {
            None => Ok(()),
            Some(w) => Err(Error::NotNormal {
                witness: self.to_ambient(w),
            }),
        }
    }

    /// Irreducible elements of `C ∩ L` modulo units, in coordinates of `L`.
    pub fn hilbert_basis(&self) -> Result<&[IntVector]> {
        self.require_normal()?;
        Ok(&self.hilbert_basis)
    }

    pub fn to_ambient(&self, x: &IntVector) -> IntVector {
        self.lattice_basis.apply_left(x)
    }

    /// Coordinates in `L` of an ambient vector, if it lies in `L`.
    pub fn to_coordinates(&self, x: &IntVector) -> Option<IntVector> {
        solve_integer(&self.lattice_basis.transpose(), x)
    }

    /// Membership in `C ∩ L` (which is the monoid itself when it is normal).
    pub fn normalization_contains(&self, x: &IntVector) -> bool {
        self.cone.contains(x)
    }
}

fn ambient_rank_of(vectors: &[IntVector]) -> Result<usize> {
    let Some(first) = vectors.first() else {
        return Err(Error::TrivialMonoid);
    };
    let r = first.len();
    if let Some(v) = vectors.iter().find(|v| v.len() != r) {
        return Err(Error::RankMismatch {
            expected: r,
            found: v.len(),
        });
    }
    Ok(r)
}

fn to_coordinates(basis: &IntMatrix, vectors: &[IntVector]) -> Result<Vec<IntVector>> {
    let bt = basis.transpose();
    vectors
        .iter()
        .map(|v| {
            solve_integer(&bt, v)
                .ok_or_else(|| Error::Inconsistent(format!("{v} is not in the lattice")))
        })
        .collect()
}

/// Compares the generated monoid with `C ∩ L`: first the unit groups, then
/// the Hilbert basis of the pointed quotient.
fn find_non_normal_witness(
    coordinates: &[IntVector],
    cone: &Cone,
    units: &[IntVector],
    quotient: &PointedQuotient,
) -> Option<IntVector> {
    let d = cone.ambient_rank();
    let (flat, rest): (Vec<&IntVector>, Vec<&IntVector>) = coordinates
        .iter()
        .partition(|g| cone.facet_forms().iter().all(|f| f.dot(g).is_zero()));

    let flat: Vec<IntVector> = flat.into_iter().cloned().collect();
    for u in units {
        if !crate::exact_linalg::lattice_contains(d, &flat, u) {
            return Some(u.clone());
        }
    }

    let projected: Vec<IntVector> = rest.iter().map(|g| quotient.project(g)).collect();
    let mut memo = HashMap::new();
    quotient
        .hilbert_basis
        .iter()
        .find(|b| !generated_by(b, &projected, &quotient.cone, &mut memo))
        .map(|b| quotient.lift(b))
}

/// Builds the monoid generated by `generators` in coordinates of its group.
pub fn normalize_presentation(generators: &[IntVector]) -> Result<AffineMonoid> {
    AffineMonoid::from_generators(generators)
}

/// Hilbert basis of a normal monoid, in coordinates of its group.
pub fn hilbert_basis(monoid: &AffineMonoid) -> Result<Vec<IntVector>> {
    monoid.hilbert_basis().map(<[IntVector]>::to_vec)
}

/// Outcome of a normality test. The witness is in ambient coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalityCheck {
    pub normal: bool,
    pub witness: Option<IntVector>,
}

pub fn is_normal(generators: &[IntVector]) -> Result<NormalityCheck> {
    match AffineMonoid::from_generators(generators) {
        Ok(m) => Ok(NormalityCheck {
            normal: m.is_normal(),
            witness: m.non_normal_witness().map(|w| m.to_ambient(w)),
        }),
        // {0} is normal
        Err(Error::TrivialMonoid) if !generators.is_empty() => Ok(NormalityCheck {
            normal: true,
            witness: None,
        }),
        Err(e) => Err(e),
    }
}

/// Basis of the unit group `N`, in coordinates of `L`.
pub fn unit_group(monoid: &AffineMonoid) -> Vec<IntVector> {
    monoid.units().to_vec()
}

/// Rank of the degree group of a graded ring and, when every nonzero
/// homogeneous element is a unit, the Laurent presentation
/// `k[t₁^±1, …, tₛ^±1]` with `deg tᵢ` the rows of `degree_basis`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradingAnalysis {
    pub sigma: usize,
    pub degree_basis: Vec<IntVector>,
    pub laurent_rank: Option<usize>,
}

pub fn degree_group_analysis(degrees: &[IntVector], all_units: bool) -> Result<GradingAnalysis> {
    let live: Vec<IntVector> = degrees.iter().filter(|g| !g.is_zero()).cloned().collect();
    let degree_basis = match live.first() {
        None => Vec::new(),
        Some(first) => {
            let r = first.len();
            if let Some(v) = live.iter().find(|v| v.len() != r) {
                return Err(Error::RankMismatch {
                    expected: r,
                    found: v.len(),
                });
            }
            hnf(&IntMatrix::from_rows(r, live)).h.into_rows()
        }
    };
    let sigma = degree_basis.len();
    Ok(GradingAnalysis {
        sigma,
        laurent_rank: all_units.then_some(sigma),
        degree_basis,
    })
}
