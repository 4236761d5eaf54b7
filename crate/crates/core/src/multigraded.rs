//! ℤʳ-graded polynomial rings: homogeneous components, graded hulls and
//! the graded core `p*` of a prime.
//!
//! Localized dimensions are computed as `n − dim K[x]/p`, which is valid
//! because polynomial rings over a field are catenary.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact_linalg::{Int, IntMatrix, IntVector};
use crate::groebner::{
    eliminate, groebner_basis, ideal_dimension, GbConfig, GroebnerBasis, IdealPresentation,
    Monomial, Polynomial, Rational,
};

/// Degrees of the variables: `degrees[j] ∈ ℤʳ` is the degree of `x_{j+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradingMatrix {
    axes: usize,
    degrees: Vec<IntVector>,
}

impl GradingMatrix {
    pub fn new(degrees: Vec<IntVector>) -> Result<Self> {
        let axes = degrees.first().map_or(0, |d| d.len());
        if axes == 0 {
            return Err(Error::InvalidInput("a grading needs at least one axis".into()));
        }
        if let Some(d) = degrees.iter().find(|d| d.len() != axes) {
            return Err(Error::RankMismatch {
                expected: axes,
                found: d.len(),
            });
        }
        Ok(GradingMatrix { axes, degrees })
    }

    pub fn from_i64(degrees: &[&[i64]]) -> Result<Self> {
        Self::new(degrees.iter().map(|d| IntVector::from_i64s(d)).collect())
    }

    /// The ℤ-grading with the given variable weights.
    pub fn from_weights(weights: &IntVector) -> Result<Self> {
        Self::new(weights.iter().map(|w| IntVector::new(vec![w.clone()])).collect())
    }

    /// Number of coordinates `r` of a degree.
    pub fn axes(&self) -> usize {
        self.axes
    }

    pub fn nvars(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[IntVector] {
        &self.degrees
    }

    /// The weights `δ_i(deg x_j)` of one coordinate grading.
    pub fn axis_weights(&self, axis: usize) -> IntVector {
        self.degrees.iter().map(|d| d[axis].clone()).collect()
    }

    pub fn multidegree(&self, m: &[u32]) -> IntVector {
        let mut out = IntVector::zeros(self.axes);
        for (d, &e) in self.degrees.iter().zip(m) {
            if e > 0 {
                out = out.add(&d.scale(&Int::from(e)));
            }
        }
        out
    }

    /// Rank of the subgroup of ℤʳ generated by the variable degrees.
    pub fn sigma(&self) -> usize {
        IntMatrix::from_rows(self.axes, self.degrees.clone()).rank()
    }
}

/// A polynomial ring `K[x_1..x_n]` with a ℤʳ-grading.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedRingSpec {
    grading: GradingMatrix,
}

impl GradedRingSpec {
    pub fn new(grading: GradingMatrix) -> Self {
        GradedRingSpec { grading }
    }

    pub fn nvars(&self) -> usize {
        self.grading.nvars()
    }

    pub fn grading(&self) -> &GradingMatrix {
        &self.grading
    }

    fn check(&self, nvars: usize) -> Result<()> {
        if nvars != self.nvars() {
            return Err(Error::RankMismatch {
                expected: self.nvars(),
                found: nvars,
            });
        }
        Ok(())
    }

    fn check_axis(&self, axis: usize) -> Result<()> {
        if axis >= self.grading.axes() {
            return Err(Error::InvalidInput(format!(
                "axis {axis} out of range for a grading with {} axes",
                self.grading.axes()
            )));
        }
        Ok(())
    }
}

/// The terms of `f` whose degree has `axis`-th coordinate `u` (0-based axis).
pub fn delta_component(f: &Polynomial, spec: &GradedRingSpec, axis: usize, u: &Int) -> Result<Polynomial> {
    spec.check(f.nvars())?;
    spec.check_axis(axis)?;
    let g = spec.grading();
    Ok(Polynomial::from_terms(
        f.nvars(),
        f.terms()
            .iter()
            .filter(|(m, _)| &g.multidegree(m)[axis] == u)
            .map(|(m, c)| (m.clone(), c.clone())),
    ))
}

/// Homogeneous components of `f`, keyed by degree.
pub fn homogeneous_components(f: &Polynomial, spec: &GradedRingSpec) -> BTreeMap<IntVector, Polynomial> {
    let mut out: BTreeMap<IntVector, Polynomial> = BTreeMap::new();
    for (m, c) in f.terms() {
        out.entry(spec.grading().multidegree(m))
            .or_insert_with(|| Polynomial::zero(f.nvars()))
            .add_term(m.clone(), c.clone());
    }
    out
}

pub fn is_homogeneous(f: &Polynomial, spec: &GradedRingSpec) -> bool {
    homogeneous_components(f, spec).len() <= 1
}

/// An ideal is graded exactly when its reduced Gröbner basis is.
pub fn is_graded(basis: &GroebnerBasis, spec: &GradedRingSpec) -> bool {
    basis.polynomials().iter().all(|g| is_homogeneous(g, spec))
}

/// The largest ideal inside `I` generated by elements homogeneous for the
/// weights `w`.
///
/// Substitutes `x_j → t^{w_j}·x_j` in the Laurent ring `K[x, t, u]/(tu − 1)`,
/// with `u` standing for `t⁻¹`, and eliminates `t` and `u`. The generators
/// of the result are its reduced Gröbner basis in the order of `I`.
pub fn graded_hull_z(ideal: &IdealPresentation, w: &IntVector, cfg: &GbConfig) -> Result<IdealPresentation> {
    let n = ideal.nvars();
    if w.len() != n {
        return Err(Error::RankMismatch {
            expected: n,
            found: w.len(),
        });
    }
    if w.is_zero() {
        return Ok(groebner_basis(ideal, cfg)?.to_ideal());
    }
    let weights: Vec<i64> = w
        .iter()
        .map(|x| {
            x.to_i64()
                .filter(|v| v.unsigned_abs() <= u32::MAX as u64)
                .ok_or_else(|| Error::InvalidInput(format!("weight {x} is too large")))
        })
        .collect::<Result<_>>()?;

    let (t, u) = (n, n + 1);
    let substitute = |m: &[u32]| -> Monomial {
        let shift: i64 = m.iter().zip(&weights).map(|(&e, &w)| e as i64 * w).sum();
        let mut out = m.to_vec();
        out.push(shift.max(0) as u32);
        out.push((-shift).max(0) as u32);
        out
    };
    let mut gens: Vec<Polynomial> = ideal
        .generators()
        .iter()
        .map(|g| g.map_monomials(n + 2, substitute))
        .collect();
    let mut tu = vec![0; n + 2];
    tu[t] = 1;
    tu[u] = 1;
    gens.push(&Polynomial::monomial(n + 2, tu, Rational::from_integer(1.into())) - &Polynomial::one(n + 2));

    let order = ideal.order().extended().extended();
    let torus = IdealPresentation::new(n + 2, gens, order)?;
    let keep: Vec<usize> = (0..n).collect();
    let gens = eliminate(&torus, &[t, u], cfg)?
        .generators()
        .iter()
        .map(|g| g.restrict(&keep).expect("eliminated variable survived"))
        .collect();
    let hull = IdealPresentation::new(n, gens, ideal.order().clone())?;
    Ok(groebner_basis(&hull, cfg)?.to_ideal())
}

/// `I*`, the largest ℤʳ-graded ideal contained in `I`, taking one
/// coordinate grading after another.
pub fn graded_hull(ideal: &IdealPresentation, spec: &GradedRingSpec, cfg: &GbConfig) -> Result<IdealPresentation> {
    let passes: Vec<usize> = (0..spec.grading().axes()).collect();
    graded_hull_with_passes(ideal, spec, &passes, cfg)
}

/// As [`graded_hull`], with the coordinate passes taken in the given order.
pub fn graded_hull_with_passes(
    ideal: &IdealPresentation,
    spec: &GradedRingSpec,
    passes: &[usize],
    cfg: &GbConfig,
) -> Result<IdealPresentation> {
    spec.check(ideal.nvars())?;
    let mut current = groebner_basis(ideal, cfg)?.to_ideal();
    for &axis in passes {
        spec.check_axis(axis)?;
        current = graded_hull_z(&current, &spec.grading().axis_weights(axis), cfg)?;
    }
    Ok(current)
}

/// Dimension data for a prime and its graded core.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeAnalysis {
    pub p_star: IdealPresentation,
    /// `dim K[x]/p`.
    pub dim_quotient_p: usize,
    /// `dim K[x]/p*`.
    pub dim_quotient_p_star: usize,
    /// `dim R_p = n − dim K[x]/p`.
    pub height_p: usize,
    /// `dim R_{p*}`.
    pub height_p_star: usize,
    /// `dim R_p − dim R_{p*}`.
    pub tau: usize,
    pub sigma: usize,
    pub graded: bool,
    /// Number of products tested by the sampled primality check.
    pub samples: usize,
}

/// Number of products sampled when spot-checking primality.
pub const PRIMALITY_SAMPLES: usize = 64;

/// Computes `p*` and `τ(p)` and checks `0 ≤ τ ≤ σ`, with `τ ≥ 1` when `p`
/// is not graded.
///
/// Primality of `p` is not decided. Instead products of sampled nonmembers
/// of `p` and of `p*` are tested for membership; any hit, or a violated
/// dimension bound, means the input was not prime.
pub fn analyze_prime(p: &IdealPresentation, spec: &GradedRingSpec, cfg: &GbConfig) -> Result<PrimeAnalysis> {
    spec.check(p.nvars())?;
    let n = p.nvars();
    let gb_p = groebner_basis(p, cfg)?;
    if gb_p.is_unit() {
        return Err(Error::UnitIdeal);
    }
    let p_star = graded_hull(p, spec, cfg)?;
    let gb_star = groebner_basis(&p_star, cfg)?;

    sampled_prime_check(&gb_p, "p")?;
    sampled_prime_check(&gb_star, "p*")?;

    let dim_p = ideal_dimension(p, cfg)?;
    let dim_star = ideal_dimension(&p_star, cfg)?;
    let graded = gb_p == gb_star;
    let sigma = spec.grading().sigma();
    if dim_star < dim_p {
        return Err(Error::NotPrime(format!(
            "dim K[x]/p* = {dim_star} is smaller than dim K[x]/p = {dim_p}"
        )));
    }
    let tau = dim_star - dim_p;
    if tau > sigma {
        return Err(Error::NotPrime(format!("tau = {tau} exceeds sigma = {sigma}")));
    }
    if !graded && tau == 0 {
        return Err(Error::NotPrime("p is not graded but dim K[x]/p* = dim K[x]/p".into()));
    }
    if graded && tau != 0 {
        return Err(Error::Inconsistent("graded ideal with a proper graded hull".into()));
    }
    Ok(PrimeAnalysis {
        p_star,
        dim_quotient_p: dim_p,
        dim_quotient_p_star: dim_star,
        height_p: n - dim_p,
        height_p_star: n - dim_star,
        tau,
        sigma,
        graded,
        samples: PRIMALITY_SAMPLES,
    })
}

/// Looks for nonmembers `f, g` with `f·g` in the ideal. Candidates are
/// monomials of degree at most two and seeded random sparse polynomials,
/// each replaced by its normal form.
fn sampled_prime_check(gb: &GroebnerBasis, label: &str) -> Result<()> {
    let n = gb.nvars();
    let mut rng = ChaCha8Rng::seed_from_u64(0x6d6f6e6f);
    let mut pool: Vec<Polynomial> = Vec::new();
    for i in 0..n {
        pool.push(Polynomial::var(n, i));
        for j in i..n {
            pool.push(&Polynomial::var(n, i) * &Polynomial::var(n, j));
        }
    }
    for _ in 0..PRIMALITY_SAMPLES {
        let terms = rng.gen_range(1..=3);
        let f = Polynomial::from_terms(
            n,
            (0..terms).map(|_| {
                let m: Monomial = (0..n).map(|_| rng.gen_range(0..=2)).collect();
                let c = loop {
                    let c: i64 = rng.gen_range(-3..=3);
                    if c != 0 {
                        break c;
                    }
                };
                (m, Rational::from_integer(c.into()))
            }),
        );
        pool.push(f);
    }
    let pool: Vec<Polynomial> = pool
        .iter()
        .map(|f| gb.normal_form(f))
        .filter(|f| !f.is_zero())
        .collect();
    if pool.is_empty() {
        return Ok(());
    }
    for _ in 0..PRIMALITY_SAMPLES {
        let f = &pool[rng.gen_range(0..pool.len())];
        let g = &pool[rng.gen_range(0..pool.len())];
        if gb.contains(&(f * g)) {
            return Err(Error::NotPrime(format!(
                "{label} contains ({f})*({g}) but neither factor"
            )));
        }
    }
    Ok(())
}

/// For each degree occurring among monomials of total degree at most `d`,
/// the dimension of the homogeneous elements of `I` of that degree spanned
/// by those monomials.
pub fn truncated_piece_dimensions(
    basis: &GroebnerBasis,
    spec: &GradedRingSpec,
    d: u32,
) -> Result<BTreeMap<IntVector, usize>> {
    spec.check(basis.nvars())?;
    let mut pieces: BTreeMap<IntVector, Vec<Monomial>> = BTreeMap::new();
    for m in monomials_up_to(basis.nvars(), d) {
        pieces.entry(spec.grading().multidegree(&m)).or_default().push(m);
    }
    let mut out = BTreeMap::new();
    for (deg, monos) in pieces {
        let forms: Vec<Polynomial> = monos
            .iter()
            .map(|m| basis.normal_form(&Polynomial::monomial(basis.nvars(), m.clone(), Rational::from_integer(1.into()))))
            .collect();
        out.insert(deg, monos.len() - rational_rank(&forms));
    }
    Ok(out)
}

/// Checks maximality of `hull ⊆ I` in every truncated graded piece; returns
/// the first degree where `I` has more homogeneous elements, if any.
pub fn truncated_maximality(
    ideal: &IdealPresentation,
    hull: &IdealPresentation,
    spec: &GradedRingSpec,
    d: u32,
    cfg: &GbConfig,
) -> Result<Option<IntVector>> {
    let a = truncated_piece_dimensions(&groebner_basis(ideal, cfg)?, spec, d)?;
    let b = truncated_piece_dimensions(&groebner_basis(hull, cfg)?, spec, d)?;
    Ok(a.into_iter().find(|(deg, k)| b.get(deg) != Some(k)).map(|(deg, _)| deg))
}

pub(crate) fn monomials_up_to(nvars: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; nvars];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, d, &mut cur, &mut out);
    out
}

/// Rank over ℚ of a list of polynomials viewed as coefficient vectors.
fn rational_rank(polys: &[Polynomial]) -> usize {
    let support: BTreeSet<&Monomial> = polys.iter().flat_map(|p| p.terms().keys()).collect();
    let index: HashMap<&Monomial, usize> = support.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let mut rows: Vec<Vec<Rational>> = polys
        .iter()
        .map(|p| {
            let mut r = vec![Rational::zero(); support.len()];
            for (m, c) in p.terms() {
                r[index[m]] = c.clone();
            }
            r
        })
        .collect();
    let mut rank = 0;
    for col in 0..support.len() {
        let Some(pivot) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let pr = rows[rank].clone();
        for r in rows.iter_mut().skip(rank + 1) {
            if r[col].is_zero() {
                continue;
            }
            let f = &r[col] / &pr[col];
            for (x, y) in r.iter_mut().zip(&pr).skip(col) {
                *x -= &f * y;
            }
        }
        rank += 1;
    }
    rank
}
