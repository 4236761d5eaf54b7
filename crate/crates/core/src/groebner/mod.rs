//! Polynomial ideals over the rationals.
//!
//! Reduced Gröbner bases by Buchberger's algorithm, normal forms,
//! elimination, saturation and Krull dimension of quotients.

mod buchberger;
mod order;
mod parse;
mod poly;

use std::sync::atomic::AtomicBool;
use std::sync::Arc;

use crate::error::{Error, Result};
use buchberger::{buchberger, reduce, Meter, Sparse};

pub use order::{Monomial, OrderKind, TermOrder};
pub use parse::{default_names, parse_polynomial};
pub use poly::{Polynomial, Rational};

/// Default number of elementary reduction steps one computation may take.
pub const DEFAULT_BUDGET: u64 = 5_000_000;

/// Resource limits for a Gröbner computation.
#[derive(Clone, Debug)]
pub struct GbConfig {
    /// Maximum number of elementary reduction steps.
    pub budget: u64,
    /// Checked between S-pair reductions.
    pub cancel: Option<Arc<AtomicBool>>,
}

impl Default for GbConfig {
    fn default() -> Self {
        GbConfig {
            budget: DEFAULT_BUDGET,
            cancel: None,
        }
    }
}

impl GbConfig {
    pub fn with_budget(budget: u64) -> Self {
        GbConfig {
            budget,
            cancel: None,
        }
    }

    fn unlimited() -> Self {
        Self::with_budget(u64::MAX)
    }
}

/// Generators of an ideal together with the term order used to compute with it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealPresentation {
    nvars: usize,
    generators: Vec<Polynomial>,
    order: TermOrder,
}

impl IdealPresentation {
    /// Zero generators are dropped.
    pub fn new(nvars: usize, generators: Vec<Polynomial>, order: TermOrder) -> Result<Self> {
        if order.nvars() != nvars {
            return Err(Error::RankMismatch {
                expected: nvars,
                found: order.nvars(),
            });
        }
        if let Some(g) = generators.iter().find(|g| g.nvars() != nvars) {
            return Err(Error::RankMismatch {
                expected: nvars,
                found: g.nvars(),
            });
        }
        Ok(IdealPresentation {
            nvars,
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
            order,
        })
    }

    /// Ideal in graded reverse lexicographic order.
    pub fn grevlex(nvars: usize, generators: Vec<Polynomial>) -> Result<Self> {
        Self::new(nvars, generators, TermOrder::grevlex(nvars))
    }

    /// Parses each generator with the given variable names.
    pub fn parse(names: &[String], generators: &[&str], order: TermOrder) -> Result<Self> {
        let gens = generators
            .iter()
            .map(|s| parse_polynomial(s, names))
            .collect::<Result<Vec<_>>>()?;
        Self::new(names.len(), gens, order)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn with_order(&self, order: TermOrder) -> Result<Self> {
        Self::new(self.nvars, self.generators.clone(), order)
    }
}

/// A reduced Gröbner basis: monic, sorted by increasing leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    nvars: usize,
    order: TermOrder,
    elements: Vec<Polynomial>,
    sparse: Vec<Sparse>,
}

impl GroebnerBasis {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn polynomials(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.sparse.iter().map(|g| g.lead().unwrap().0.clone()).collect()
    }

    pub fn is_unit(&self) -> bool {
        self.leading_monomials()
            .iter()
            .any(|m| m.iter().all(|&e| e == 0))
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        assert_eq!(f.nvars(), self.nvars, "polynomial lives in a different ring");
        let cfg = GbConfig::unlimited();
        let mut meter = Meter::new(&cfg);
        let reducers: Vec<&Sparse> = self.sparse.iter().collect();
        reduce(&Sparse::from_polynomial(f, &self.order), &reducers, &self.order, &mut meter)
            .expect("unlimited reduction cannot run out of budget")
            .to_polynomial(self.nvars)
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Containment of ideals: every generator of `other` reduces to zero.
    pub fn contains_ideal(&self, other: &IdealPresentation) -> bool {
        other.generators().iter().all(|g| self.contains(g))
    }

    pub fn to_ideal(&self) -> IdealPresentation {
        IdealPresentation {
            nvars: self.nvars,
            generators: self.elements.clone(),
            order: self.order.clone(),
        }
    }
}

pub fn groebner_basis(ideal: &IdealPresentation, cfg: &GbConfig) -> Result<GroebnerBasis> {
    let order = ideal.order().clone();
    let gens: Vec<Sparse> = ideal
        .generators()
        .iter()
        .map(|g| Sparse::from_polynomial(g, &order))
        .collect();
    let sparse = buchberger(&gens, &order, cfg)?;
    Ok(GroebnerBasis {
        nvars: ideal.nvars(),
        elements: sparse.iter().map(|g| g.to_polynomial(ideal.nvars())).collect(),
        order,
        sparse,
    })
}

/// Remainder of `f` on division by the basis; zero exactly for members.
pub fn normal_form(f: &Polynomial, basis: &GroebnerBasis) -> Polynomial {
    basis.normal_form(f)
}

/// S-polynomial of two nonzero polynomials, with monic leading parts.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial, order: &TermOrder) -> Polynomial {
    buchberger::s_polynomial(
        &Sparse::from_polynomial(f, order),
        &Sparse::from_polynomial(g, order),
        order,
    )
    .to_polynomial(f.nvars())
}

/// `I ∩ K[x_j : j ∉ drop]`, still presented in the ring of `I` and in its
/// term order. The generators form a Gröbner basis for an elimination order.
pub fn eliminate(ideal: &IdealPresentation, drop: &[usize], cfg: &GbConfig) -> Result<IdealPresentation> {
    if let Some(&v) = drop.iter().find(|&&v| v >= ideal.nvars()) {
        return Err(Error::InvalidInput(format!("no variable with index {v}")));
    }
    let gb = groebner_basis(&ideal.with_order(ideal.order().eliminating(drop))?, cfg)?;
    let kept = gb
        .polynomials()
        .iter()
        .filter(|g| drop.iter().all(|&v| !g.involves(v)))
        .cloned()
        .collect();
    IdealPresentation::new(ideal.nvars(), kept, ideal.order().clone())
}

/// `I : f^∞`, by adjoining `w` with `1 − w·f` and eliminating `w`.
pub fn saturate(ideal: &IdealPresentation, f: &Polynomial, cfg: &GbConfig) -> Result<IdealPresentation> {
    if f.is_zero() {
        return Err(Error::InvalidInput("cannot saturate by zero".into()));
    }
    let n = ideal.nvars();
    let w = Polynomial::var(n + 1, n);
    let mut gens: Vec<Polynomial> = ideal.generators().iter().map(|g| g.extend(1)).collect();
    gens.push(&Polynomial::one(n + 1) - &(&w * &f.extend(1)));
    let big = IdealPresentation::new(n + 1, gens, ideal.order().extended())?;
    let keep: Vec<usize> = (0..n).collect();
    let gens = eliminate(&big, &[n], cfg)?
        .generators()
        .iter()
        .map(|g| g.restrict(&keep).expect("eliminated variable survived"))
        .collect();
    IdealPresentation::new(n, gens, ideal.order().clone())
}

/// Krull dimension of `K[x]/I`: the largest set of variables containing
/// the support of no leading monomial.
pub fn ideal_dimension(ideal: &IdealPresentation, cfg: &GbConfig) -> Result<usize> {
    let gb = groebner_basis(ideal, cfg)?;
    if gb.is_unit() {
        return Err(Error::UnitIdeal);
    }
    let supports: Vec<Vec<usize>> = gb
        .leading_monomials()
        .iter()
        .map(|m| (0..m.len()).filter(|&i| m[i] > 0).collect())
        .collect();
    let mut chosen = vec![false; ideal.nvars()];
    let mut best = 0;
    independent_sets(&supports, &mut chosen, 0, 0, &mut best);
    Ok(best)
}

fn independent_sets(supports: &[Vec<usize>], chosen: &mut Vec<bool>, next: usize, size: usize, best: &mut usize) {
    let n = chosen.len();
    if size + (n - next) <= *best {
        return;
    }
    if next == n {
        *best = size;
        return;
    }
    chosen[next] = true;
    if !supports.iter().any(|s| s.iter().all(|&v| chosen[v])) {
        independent_sets(supports, chosen, next + 1, size + 1, best);
    }
    chosen[next] = false;
    independent_sets(supports, chosen, next + 1, size, best);
}
