use std::cmp::Ordering;

/// Exponent vector of a monomial.
pub type Monomial = Vec<u32>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrderKind {
    Lex,
    GrevLex,
}

/// A monomial order given by a kind and a variable priority.
///
/// `priority[0]` is the most significant variable. An elimination order
/// compares the first `block` variables of the priority list by grevlex
/// before looking at the rest, which again are compared by `kind`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TermOrder {
    kind: OrderKind,
    priority: Vec<usize>,
    block: usize,
}

impl TermOrder {
    pub fn lex(nvars: usize) -> Self {
        Self::with_priority(OrderKind::Lex, (0..nvars).collect())
    }

    pub fn grevlex(nvars: usize) -> Self {
        Self::with_priority(OrderKind::GrevLex, (0..nvars).collect())
    }

    /// Panics unless `priority` is a permutation of `0..priority.len()`.
    pub fn with_priority(kind: OrderKind, priority: Vec<usize>) -> Self {
        let mut seen = vec![false; priority.len()];
        for &v in &priority {
            assert!(v < seen.len() && !seen[v], "variable priority is not a permutation");
            seen[v] = true;
        }
        TermOrder {
            kind,
            priority,
            block: 0,
        }
    }

    /// An order eliminating `drop`: any monomial involving a dropped variable
    /// is larger than every monomial free of them. Within each block the
    /// relative priority of `self` is kept.
    pub fn eliminating(&self, drop: &[usize]) -> Self {
        let (first, rest): (Vec<usize>, Vec<usize>) =
            self.priority.iter().partition(|v| drop.contains(v));
        let block = first.len();
        TermOrder {
            kind: self.kind,
            priority: first.into_iter().chain(rest).collect(),
            block,
        }
    }

    /// The same order on a ring with one more variable, which becomes the
    /// least significant.
    pub(crate) fn extended(&self) -> Self {
        let mut priority = self.priority.clone();
        priority.push(priority.len());
        TermOrder {
            kind: self.kind,
            priority,
            block: self.block,
        }
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn priority(&self) -> &[usize] {
        &self.priority
    }

    pub fn nvars(&self) -> usize {
        self.priority.len()
    }

    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        let (head, tail) = self.priority.split_at(self.block);
        if !head.is_empty() {
            let o = grevlex(head, a, b);
            if o != Ordering::Equal {
                return o;
            }
        }
        match self.kind {
            OrderKind::Lex => lex(tail, a, b),
            OrderKind::GrevLex => grevlex(tail, a, b),
        }
    }
}

fn lex(vars: &[usize], a: &[u32], b: &[u32]) -> Ordering {
    for &v in vars {
        match a[v].cmp(&b[v]) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

fn grevlex(vars: &[usize], a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = vars.iter().map(|&v| a[v] as u64).sum();
    let db: u64 = vars.iter().map(|&v| b[v] as u64).sum();
    if da != db {
        return da.cmp(&db);
    }
    for &v in vars.iter().rev() {
        match a[v].cmp(&b[v]) {
            Ordering::Equal => continue,
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}

pub(crate) fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub(crate) fn lcm(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

pub(crate) fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

pub(crate) fn quotient(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub(crate) fn product(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub(crate) fn total_degree(a: &[u32]) -> u64 {
    a.iter().map(|&e| e as u64).sum()
}
