use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{Int, IntMatrix};

/// Smith normal form `S = U·A·V` with `U`, `V` unimodular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Diagonal entries `d₁ | d₂ | …`, `min(rows, cols)` of them.
    pub fn diagonal(&self) -> Vec<Int> {
        (0..self.s.nrows().min(self.s.ncols()))
            .map(|i| self.s.get(i, i).clone())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }
}

pub fn snf(a: &IntMatrix) -> SmithForm {
    let m = a.nrows();
    let n = a.ncols();
    let mut s = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);

    for t in 0..m.min(n) {
        // smallest nonzero entry of the trailing block becomes the pivot
        let Some((pi, pj)) = min_entry(&s, (t..m).flat_map(|i| (t..n).map(move |j| (i, j))))
        else {
            break;
        };
        move_to_pivot(&mut s, &mut u, &mut v, t, pi, pj);

        loop {
            let p = s.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..m {
                let q = s.get(i, t).div_floor(&p);
                s.add_row_multiple(i, t, &-&q);
                u.add_row_multiple(i, t, &-&q);
                clean &= s.get(i, t).is_zero();
            }
            for j in t + 1..n {
                let q = s.get(t, j).div_floor(&p);
                s.add_col_multiple(j, t, &-&q);
                v.add_col_multiple(j, t, &-&q);
                clean &= s.get(t, j).is_zero();
            }
            if !clean {
                let cands = (t..m).map(|i| (i, t)).chain((t + 1..n).map(|j| (t, j)));
                let (pi, pj) = min_entry(&s, cands).expect("pivot row/column is nonzero");
                move_to_pivot(&mut s, &mut u, &mut v, t, pi, pj);
                continue;
            }
            // divisibility: fold an offending row into the pivot row
            let offender = (t + 1..m).find(|&i| {
                (t + 1..n).any(|j| !s.get(i, j).mod_floor(&p).is_zero())
            });
            match offender {
                Some(i) => {
                    s.add_row_multiple(t, i, &Int::from(1));
                    u.add_row_multiple(t, i, &Int::from(1));
                }
                None => break,
            }
        }
        if s.get(t, t).is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithForm { s, u, v }
}

fn min_entry(
    s: &IntMatrix,
    cells: impl Iterator<Item = (usize, usize)>,
) -> Option<(usize, usize)> {
    cells
        .filter(|&(i, j)| !s.get(i, j).is_zero())
        .min_by(|&(a, b), &(c, d)| s.get(a, b).abs().cmp(&s.get(c, d).abs()))
}

fn move_to_pivot(
    s: &mut IntMatrix,
    u: &mut IntMatrix,
    v: &mut IntMatrix,
    t: usize,
    i: usize,
    j: usize,
) {
    if i != t {
        s.swap_rows(t, i);
        u.swap_rows(t, i);
    }
    if j != t {
        s.swap_cols(t, j);
        v.swap_cols(t, j);
    }
}
