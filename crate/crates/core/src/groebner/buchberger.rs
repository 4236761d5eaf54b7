//! Buchberger's algorithm with the normal selection strategy and the
//! Gebauer–Möller installation of critical pairs.

use std::cmp::Ordering;
use std::sync::atomic::Ordering as AtomicOrdering;

use num_traits::{One, Zero};

use super::order::{coprime, divides, lcm, product, quotient, Monomial, TermOrder};
use super::poly::{Polynomial, Rational};
use super::GbConfig;
use crate::error::{Error, Result};

/// Terms sorted increasingly, so the leading term is last.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Sparse {
    pub(crate) terms: Vec<(Monomial, Rational)>,
}

impl Sparse {
    pub(crate) fn from_polynomial(f: &Polynomial, order: &TermOrder) -> Sparse {
        let mut terms: Vec<(Monomial, Rational)> =
            f.terms().iter().map(|(m, c)| (m.clone(), c.clone())).collect();
        terms.sort_by(|a, b| order.cmp(&a.0, &b.0));
        Sparse { terms }
    }

    pub(crate) fn to_polynomial(&self, nvars: usize) -> Polynomial {
        Polynomial::from_terms(nvars, self.terms.iter().cloned())
    }

    pub(crate) fn lead(&self) -> Option<&(Monomial, Rational)> {
        self.terms.last()
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn make_monic(&mut self) {
        if let Some((_, c)) = self.terms.last() {
            if !c.is_one() {
                let inv = c.recip();
                for (_, a) in &mut self.terms {
                    *a *= &inv;
                }
            }
        }
    }

    /// `self - c·x^m·g`.
    fn sub_mul(&self, c: &Rational, m: &[u32], g: &Sparse, order: &TermOrder) -> Sparse {
        let shifted = g.terms.iter().map(|(e, a)| (product(e, m), a * c));
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut left = self.terms.iter().cloned().peekable();
        let mut right = shifted.peekable();
        loop {
            let step = match (left.peek(), right.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Less,
                (None, Some(_)) => Ordering::Greater,
                (Some(a), Some(b)) => order.cmp(&a.0, &b.0),
            };
            match step {
                Ordering::Less => out.push(left.next().unwrap()),
                Ordering::Greater => {
                    let (e, a) = right.next().unwrap();
                    out.push((e, -a));
                }
                Ordering::Equal => {
                    let (e, a) = left.next().unwrap();
                    let (_, b) = right.next().unwrap();
                    let d = a - b;
                    if !d.is_zero() {
                        out.push((e, d));
                    }
                }
            }
        }
        Sparse { terms: out }
    }
}

/// Step counter shared by one computation.
pub(crate) struct Meter<'a> {
    cfg: &'a GbConfig,
    steps: u64,
}

impl<'a> Meter<'a> {
    pub(crate) fn new(cfg: &'a GbConfig) -> Self {
        Meter { cfg, steps: 0 }
    }

    fn tick(&mut self) -> Result<()> {
        self.steps += 1;
        if self.steps > self.cfg.budget {
            return Err(Error::BudgetExceeded {
                budget: self.cfg.budget,
            });
        }
        Ok(())
    }

    fn check_cancel(&self) -> Result<()> {
        match &self.cfg.cancel {
            Some(flag) if flag.load(AtomicOrdering::Relaxed) => Err(Error::Cancelled),
            _ => Ok(()),
        }
    }
}

/// Full reduction of `f` modulo monic `basis`.
pub(crate) fn reduce(
    f: &Sparse,
    basis: &[&Sparse],
    order: &TermOrder,
    meter: &mut Meter<'_>,
) -> Result<Sparse> {
    let mut p = f.clone();
    let mut rem: Vec<(Monomial, Rational)> = Vec::new();
    while let Some((m, c)) = p.lead().cloned() {
        let divisor = basis
            .iter()
            .find(|g| g.lead().is_some_and(|(lm, _)| divides(lm, &m)));
        match divisor {
            Some(g) => {
                meter.tick()?;
                let (lm, _) = g.lead().unwrap();
                p = p.sub_mul(&c, &quotient(&m, lm), g, order);
            }
            None => {
                p.terms.pop();
                rem.push((m, c));
            }
        }
    }
    rem.reverse();
    Ok(Sparse { terms: rem })
}

pub(crate) fn s_polynomial(f: &Sparse, g: &Sparse, order: &TermOrder) -> Sparse {
    let (a, ca) = f.lead().expect("zero polynomial has no S-polynomial");
    let (b, cb) = g.lead().expect("zero polynomial has no S-polynomial");
    let l = lcm(a, b);
    let zero = Sparse { terms: Vec::new() };
    let left = zero.sub_mul(&(-ca.recip()), &quotient(&l, a), f, order);
    left.sub_mul(&cb.recip(), &quotient(&l, b), g, order)
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Reduced Gröbner basis, monic, sorted by increasing leading monomial.
pub(crate) fn buchberger(
    generators: &[Sparse],
    order: &TermOrder,
    cfg: &GbConfig,
) -> Result<Vec<Sparse>> {
    let mut meter = Meter::new(cfg);
    meter.check_cancel()?;
    let mut polys: Vec<Sparse> = Vec::new();
    let mut active: Vec<usize> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let unit = |nvars: usize| {
        vec![Sparse {
            terms: vec![(vec![0; nvars], Rational::one())],
        }]
    };
    let nvars = order.nvars();

    for g in generators {
        if g.is_zero() {
            continue;
        }
        let mut h = g.clone();
        h.make_monic();
        if h.lead().unwrap().0.iter().all(|&e| e == 0) {
            return Ok(unit(nvars));
        }
        install(h, &mut polys, &mut active, &mut pairs);
    }

    while !pairs.is_empty() {
        meter.check_cancel()?;
        let best = (0..pairs.len())
            .min_by(|&a, &b| {
                order
                    .cmp(&pairs[a].lcm, &pairs[b].lcm)
                    .then((pairs[a].j, pairs[a].i).cmp(&(pairs[b].j, pairs[b].i)))
            })
            .unwrap();
        let Pair { i, j, .. } = pairs.swap_remove(best);
        let s = s_polynomial(&polys[i], &polys[j], order);
        let reducers: Vec<&Sparse> = active.iter().map(|&k| &polys[k]).collect();
        let mut h = reduce(&s, &reducers, order, &mut meter)?;
        if h.is_zero() {
            continue;
        }
        h.make_monic();
        if h.lead().unwrap().0.iter().all(|&e| e == 0) {
            return Ok(unit(nvars));
        }
        install(h, &mut polys, &mut active, &mut pairs);
    }

    interreduce(active.iter().map(|&k| polys[k].clone()).collect(), order, &mut meter)
}

fn install(h: Sparse, polys: &mut Vec<Sparse>, active: &mut Vec<usize>, pairs: &mut Vec<Pair>) {
    let lh = h.lead().unwrap().0.clone();
    let hi = polys.len();
    polys.push(h);
    let lead = |k: usize| &polys[k].lead().unwrap().0;

    let mut candidates: Vec<(usize, Monomial)> =
        active.iter().map(|&g| (g, lcm(&lh, lead(g)))).collect();
    let mut kept: Vec<(usize, Monomial)> = Vec::new();
    while !candidates.is_empty() {
        let (g1, l1) = candidates.remove(0);
        let redundant = !coprime(&lh, lead(g1))
            && candidates
                .iter()
                .chain(kept.iter())
                .any(|(_, l2)| divides(l2, &l1));
        if !redundant {
            kept.push((g1, l1));
        }
    }
    kept.retain(|(g, _)| !coprime(&lh, lead(*g)));

    pairs.retain(|p| {
        !divides(&lh, &p.lcm)
            || lcm(lead(p.i), &lh) == p.lcm
            || lcm(&lh, lead(p.j)) == p.lcm
    });
    pairs.extend(kept.into_iter().map(|(g, l)| Pair { i: g, j: hi, lcm: l }));

    active.retain(|&g| !divides(&lh, lead(g)));
    active.push(hi);
}

fn interreduce(mut basis: Vec<Sparse>, order: &TermOrder, meter: &mut Meter<'_>) -> Result<Vec<Sparse>> {
    basis.sort_by(|a, b| order.cmp(&a.lead().unwrap().0, &b.lead().unwrap().0));
    let minimal: Vec<Sparse> = basis
        .iter()
        .enumerate()
        .filter(|(k, g)| {
            let lg = &g.lead().unwrap().0;
            !basis
                .iter()
                .enumerate()
                .any(|(j, o)| {
                    let lo = &o.lead().unwrap().0;
                    j != *k && divides(lo, lg) && (lo != lg || j < *k)
                })
        })
        .map(|(_, g)| g.clone())
        .collect();

    let mut out = Vec::with_capacity(minimal.len());
    for (k, g) in minimal.iter().enumerate() {
        let others: Vec<&Sparse> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != k)
            .map(|(_, o)| o)
            .collect();
        let mut tail = g.clone();
        let lead = tail.terms.pop().unwrap();
        let mut r = reduce(&tail, &others, order, meter)?;
        r.terms.push(lead);
        r.make_monic();
        out.push(r);
    }
    Ok(out)
}
