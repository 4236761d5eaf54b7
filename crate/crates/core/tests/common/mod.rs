//! Brute-force oracles over machine integers. Nothing here calls into the
//! library except for conversions.

#![allow(dead_code)]

use num_rational::Ratio;
use num_traits::Zero;

use monograde::exact_linalg::IntVector;

pub type Q = Ratio<i128>;

pub fn iv(v: &[i64]) -> IntVector {
    IntVector::from_i64s(v)
}

pub fn ivs(rows: &[Vec<i64>]) -> Vec<IntVector> {
    rows.iter().map(|r| iv(r)).collect()
}

pub fn to_i64(v: &IntVector) -> Vec<i64> {
    v.to_i64s().expect("entry exceeds i64")
}

pub fn to_i64s(vs: &[IntVector]) -> Vec<Vec<i64>> {
    vs.iter().map(to_i64).collect()
}

pub fn sorted(mut v: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
    v.sort();
    v
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

pub fn primitive(v: &[i64]) -> Vec<i64> {
    let g = v.iter().fold(0, |g, &x| gcd(g, x));
    assert!(g != 0, "zero vector");
    v.iter().map(|x| x / g).collect()
}

pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Determinant by cofactor expansion along the first row.
pub fn det(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return m[0][0] as i128;
    }
    let mut sum = 0i128;
    for j in 0..n {
        if m[0][j] == 0 {
            continue;
        }
        let minor: Vec<Vec<i64>> = m[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
            .collect();
        let s = if j % 2 == 0 { 1 } else { -1 };
        sum += s * m[0][j] as i128 * det(&minor);
    }
    sum
}

/// Rank over ℚ.
pub fn rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<Q>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| Q::from_integer(x as i128)).collect())
        .collect();
    rank_q(&mut m)
}

pub fn rank_q(m: &mut [Vec<Q>]) -> usize {
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
            let f = row[c] / pivot[c];
            for (x, y) in row.iter_mut().zip(&pivot) {
                *x -= f * y;
            }
        }
        r += 1;
    }
    r
}

/// Normal to `d − 1` vectors in ℤᵈ by signed maximal minors; zero when
/// they are dependent.
pub fn normal_of(vs: &[Vec<i64>], d: usize) -> Vec<i64> {
    (0..d)
        .map(|j| {
            let minor: Vec<Vec<i64>> = vs
                .iter()
                .map(|v| v.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                .collect();
            let s = if j % 2 == 0 { 1 } else { -1 };
            (s * det(&minor)) as i64
        })
        .collect()
}

/// Support forms of the full-dimensional cone spanned by `rays`, from
/// hyperplanes through `d − 1` independent rays.
pub fn brute_facets(d: usize, rays: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = Vec::new();
    for subset in combinations(rays.len(), d - 1) {
        let vs: Vec<Vec<i64>> = subset.iter().map(|&i| rays[i].clone()).collect();
        let n = normal_of(&vs, d);
        if n.iter().all(|&x| x == 0) {
            continue;
        }
        let n = primitive(&n);
        let vals: Vec<i64> = rays.iter().map(|r| dot(&n, r)).collect();
        let form = if vals.iter().all(|&v| v >= 0) {
            n
        } else if vals.iter().all(|&v| v <= 0) {
            n.iter().map(|x| -x).collect()
        } else {
            continue;
        };
        if !out.contains(&form) {
            out.push(form);
        }
    }
    out.sort();
    out
}

/// Primitive generators of the rays of a pointed full-dimensional cone that
/// lie on at least `d − 1` independent facets.
pub fn extreme_rays(d: usize, rays: &[Vec<i64>], facets: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = Vec::new();
    for r in rays {
        let tight: Vec<Vec<i64>> = facets.iter().filter(|f| dot(f, r) == 0).cloned().collect();
        if rank(&tight) == d - 1 {
            let p = primitive(r);
            if !out.contains(&p) {
                out.push(p);
            }
        }
    }
    out.sort();
    out
}

pub fn in_cone(facets: &[Vec<i64>], x: &[i64]) -> bool {
    facets.iter().all(|f| dot(f, x) >= 0)
}

pub fn in_interior(facets: &[Vec<i64>], x: &[i64]) -> bool {
    facets.iter().all(|f| dot(f, x) >= 1)
}

/// Every integer point of `[lo, hi]`.
pub fn box_points(lo: &[i64], hi: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for (a, b) in lo.iter().zip(hi) {
        out = out
            .into_iter()
            .flat_map(|p| {
                (*a..=*b).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

/// Coordinate box containing every sum `Σ qᵢ rᵢ` with `0 ≤ qᵢ ≤ 1` over at
/// most `d` of the rays.
pub fn simplicial_box(d: usize, rays: &[Vec<i64>]) -> (Vec<i64>, Vec<i64>) {
    let k = d.min(rays.len());
    let subsets = combinations(rays.len(), k);
    let lo = (0..d)
        .map(|j| subsets.iter().map(|s| s.iter().map(|&i| rays[i][j].min(0)).sum::<i64>()).min().unwrap())
        .collect();
    let hi = (0..d)
        .map(|j| subsets.iter().map(|s| s.iter().map(|&i| rays[i][j].max(0)).sum::<i64>()).max().unwrap())
        .collect();
    (lo, hi)
}

/// Irreducible lattice points of a pointed full-dimensional cone, found by
/// enumerating a box around the simplicial parallelepipeds of its extreme
/// rays.
pub fn brute_hilbert_basis(d: usize, rays: &[Vec<i64>], facets: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let (lo, hi) = simplicial_box(d, rays);
    let grading: Vec<i64> = (0..lo.len()).map(|j| facets.iter().map(|f| f[j]).sum()).collect();
    let mut pts: Vec<(i64, Vec<i64>)> = box_points(&lo, &hi)
        .into_iter()
        .filter(|x| x.iter().any(|&c| c != 0) && in_cone(facets, x))
        .map(|x| (dot(&grading, &x), x))
        .collect();
    pts.sort();
    let mut basis: Vec<Vec<i64>> = Vec::new();
    for (_, x) in pts {
        let reducible = basis.iter().any(|h| {
            let diff: Vec<i64> = x.iter().zip(h).map(|(a, b)| a - b).collect();
            in_cone(facets, &diff)
        });
        if !reducible {
            basis.push(x);
        }
    }
    basis.sort();
    basis
}

/// Solves a square rational system; `None` when singular.
pub fn solve(a: &[Vec<i64>], b: &[i64]) -> Option<Vec<Q>> {
    let n = a.len();
    let mut m: Vec<Vec<Q>> = a
        .iter()
        .zip(b)
        .map(|(r, &y)| {
            r.iter()
                .map(|&x| Q::from_integer(x as i128))
                .chain(std::iter::once(Q::from_integer(y as i128)))
                .collect()
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(c, p);
        let pivot = m[c].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == c || row[c].is_zero() {
                continue;
            }
            let f = row[c] / pivot[c];
            for (x, y) in row.iter_mut().zip(&pivot) {
                *x -= f * y;
            }
        }
    }
    Some((0..n).map(|i| m[i][n] / m[i][i]).collect())
}

/// Vertices of `{x : λ(x) ≥ 1 for every facet λ}`.
pub fn interior_vertices(d: usize, facets: &[Vec<i64>]) -> Vec<Vec<Q>> {
    let mut out: Vec<Vec<Q>> = Vec::new();
    for subset in combinations(facets.len(), d) {
        let a: Vec<Vec<i64>> = subset.iter().map(|&i| facets[i].clone()).collect();
        let Some(x) = solve(&a, &vec![1; d]) else {
            continue;
        };
        let feasible = facets.iter().all(|f| {
            let v: Q = f.iter().zip(&x).map(|(&c, y)| Q::from_integer(c as i128) * y).sum();
            v >= Q::from_integer(1)
        });
        if feasible && !out.contains(&x) {
            out.push(x);
        }
    }
    out
}

/// Minimal interior lattice points of `C ∩ ℤᵈ`: interior points `x` with
/// `x − b` outside the interior for every Hilbert basis element `b`.
///
/// The search box is the vertex box of the interior region widened by the
/// simplicial box of the extreme rays; a point beyond it sits a whole ray
/// above another interior point.
pub fn brute_canonical_generators(
    d: usize,
    rays: &[Vec<i64>],
    facets: &[Vec<i64>],
    hilbert: &[Vec<i64>],
) -> Vec<Vec<i64>> {
    let verts = interior_vertices(d, facets);
    let (ray_lo, ray_hi) = simplicial_box(d, rays);
    let lo: Vec<i64> = (0..d)
        .map(|j| {
            let v = verts.iter().map(|x| x[j]).min().unwrap().floor().to_integer() as i64;
            v + ray_lo[j]
        })
        .collect();
    let hi: Vec<i64> = (0..d)
        .map(|j| {
            let v = verts.iter().map(|x| x[j]).max().unwrap().ceil().to_integer() as i64;
            v + ray_hi[j]
        })
        .collect();
    let mut out: Vec<Vec<i64>> = box_points(&lo, &hi)
        .into_iter()
        .filter(|x| in_interior(facets, x))
        .filter(|x| {
            hilbert.iter().all(|b| {
                let y: Vec<i64> = x.iter().zip(b).map(|(p, q)| p - q).collect();
                !in_interior(facets, &y)
            })
        })
        .collect();
    out.sort();
    out
}

/// Invariant factors of `ℤᵐ / A·ℤⁿ` for an `m × n` matrix, from gcds of
/// minors: torsion factors ascending, then one zero per free summand.
pub fn invariant_factors(a: &[Vec<i64>], n: usize) -> Vec<i64> {
    let m = a.len();
    let mut divisors = vec![1i128];
    for k in 1..=m.min(n) {
        let mut g = 0i128;
        for rows in combinations(m, k) {
            for cols in combinations(n, k) {
                let minor: Vec<Vec<i64>> = rows
                    .iter()
                    .map(|&i| cols.iter().map(|&j| a[i][j]).collect())
                    .collect();
                g = gcd128(g, det(&minor));
            }
        }
        if g == 0 {
            break;
        }
        divisors.push(g);
    }
    let rank = divisors.len() - 1;
    let mut out: Vec<i64> = divisors
        .windows(2)
        .map(|w| (w[1] / w[0]) as i64)
        .filter(|&e| e != 1)
        .collect();
    out.extend(std::iter::repeat_n(0, m - rank));
    out
}

fn gcd128(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd128(b, a % b)
    }
}

/// Number of classes of `[0, k)ᵐ` modulo the image of `A` (`m × n`),
/// deciding membership in the image by searching `[−s, s]ⁿ`.
pub fn coset_count(a: &[Vec<i64>], n: usize, k: i64, s: i64) -> usize {
    let m = a.len();
    let image: Vec<Vec<i64>> = box_points(&vec![-s; n], &vec![s; n])
        .into_iter()
        .map(|g| a.iter().map(|row| dot(row, &g)).collect())
        .collect();
    let mut reps: Vec<Vec<i64>> = Vec::new();
    for v in box_points(&vec![0; m], &vec![k - 1; m]) {
        let known = reps.iter().any(|r| {
            let diff: Vec<i64> = v.iter().zip(r).map(|(x, y)| x - y).collect();
            image.contains(&diff)
        });
        if !known {
            reps.push(v);
        }
    }
    reps.len()
}

pub mod poly;
