//! Buchberger's algorithm for pure-difference binomials `z^a - z^b`.
//!
//! A binomial is stored as `(lead, trail)` with `lead > trail`. Reducing a
//! binomial amounts to reducing both of its terms independently, so every
//! intermediate object stays a pure difference of two monomials.

use std::cmp::{Ordering, Reverse};
use std::collections::{BinaryHeap, HashSet};

use crate::error::{Error, Result};

pub(crate) type Key = Vec<i64>;
pub(crate) type Pair = (Vec<u32>, Vec<u32>);

/// A monomial order given by a sort key; larger keys are larger monomials.
pub(crate) trait TermOrder {
    fn key(&self, m: &[u32]) -> Key;

    fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        self.key(a).cmp(&self.key(b))
    }
}

/// Weighted reverse lexicographic order with `last` as the smallest variable.
pub(crate) struct WeightedRevlex<'a> {
    pub weights: &'a [i64],
    pub last: usize,
}

impl TermOrder for WeightedRevlex<'_> {
    fn key(&self, m: &[u32]) -> Key {
        let mut k = Vec::with_capacity(m.len() + 1);
        k.push(m.iter().zip(self.weights).map(|(&e, &w)| e as i64 * w).sum());
        k.push(-(m[self.last] as i64));
        k.extend((0..m.len()).rev().filter(|&i| i != self.last).map(|i| -(m[i] as i64)));
        k
    }
}

struct Elem {
    lead: Vec<u32>,
    trail: Vec<u32>,
    mask: u64,
    active: bool,
}

fn mask(m: &[u32]) -> u64 {
    m.iter().enumerate().filter(|(_, &e)| e > 0).fold(0, |acc, (i, _)| acc | 1 << (i % 64))
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(&x, &y)| x.max(y)).collect()
}

fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(&x, &y)| x == 0 || y == 0)
}

fn ordered(i: usize, j: usize) -> (usize, usize) {
    if i < j {
        (i, j)
    } else {
        (j, i)
    }
}

struct Engine<'a, O: TermOrder> {
    order: &'a O,
    basis: Vec<Elem>,
    pending: HashSet<(usize, usize)>,
    queue: BinaryHeap<Reverse<(Key, u64, usize, usize)>>,
    created: u64,
}

impl<O: TermOrder> Engine<'_, O> {
    fn normal_form(&self, mut m: Vec<u32>) -> Vec<u32> {
        'outer: loop {
            let mm = mask(&m);
            for g in &self.basis {
                if g.active && g.mask & !mm == 0 && divides(&g.lead, &m) {
                    for ((x, &l), &t) in m.iter_mut().zip(&g.lead).zip(&g.trail) {
                        *x = *x - l + t;
                    }
                    continue 'outer;
                }
            }
            return m;
        }
    }

    /// Reduces `a - b` and adds it unless it vanishes.
    fn insert(&mut self, a: Vec<u32>, b: Vec<u32>) {
        let a = self.normal_form(a);
        let b = self.normal_form(b);
        let (lead, trail) = match self.order.cmp(&a, &b) {
            Ordering::Equal => return,
            Ordering::Greater => (a, b),
            Ordering::Less => (b, a),
        };
        let r = self.basis.len();
        for (i, g) in self.basis.iter_mut().enumerate() {
            if coprime(&g.lead, &lead) {
                continue;
            }
            if g.active && divides(&lead, &g.lead) {
                g.active = false;
            }
            let l = lcm(&g.lead, &lead);
            self.created += 1;
            self.queue.push(Reverse((self.order.key(&l), self.created, i, r)));
            self.pending.insert((i, r));
        }
        let m = mask(&lead);
        self.basis.push(Elem { lead, trail, mask: m, active: true });
    }

    fn chain_skip(&self, i: usize, j: usize, l: &[u32]) -> bool {
        let lm = mask(l);
        self.basis.iter().enumerate().any(|(k, g)| {
            k != i
                && k != j
                && g.mask & !lm == 0
                && divides(&g.lead, l)
                && !self.pending.contains(&ordered(i, k))
                && !self.pending.contains(&ordered(j, k))
        })
    }

    fn s_pair(&self, i: usize, j: usize) -> (Vec<u32>, Vec<u32>, Vec<u32>) {
        let (f, g) = (&self.basis[i], &self.basis[j]);
        let l = lcm(&f.lead, &g.lead);
        let shift =
            |e: &Elem| -> Vec<u32> { l.iter().zip(&e.lead).zip(&e.trail).map(|((&x, &a), &b)| x - a + b).collect() };
        (shift(f), shift(g), l)
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens`, sorted by leading
/// term, largest first. At most `cap` S-pairs are reduced.
pub(crate) fn groebner<O: TermOrder>(gens: Vec<Pair>, order: &O, cap: u64) -> Result<Vec<Pair>> {
    let mut e = Engine { order, basis: Vec::new(), pending: HashSet::new(), queue: BinaryHeap::new(), created: 0 };
    for (a, b) in gens {
        e.insert(a, b);
    }
    let mut steps = 0u64;
    while let Some(Reverse((_, _, i, j))) = e.queue.pop() {
        e.pending.remove(&(i, j));
        let (a, b, l) = e.s_pair(i, j);
        if e.chain_skip(i, j, &l) {
            continue;
        }
        steps += 1;
        if steps > cap {
            return Err(Error::Resource(format!("Gröbner basis computation exceeded {cap} S-pair reductions")));
        }
        e.insert(a, b);
    }
    let mut out: Vec<Pair> = Vec::new();
    for g in e.basis.iter().filter(|g| g.active) {
        out.push((g.lead.clone(), e.normal_form(g.trail.clone())));
    }
    out.sort_by(|x, y| order.cmp(&y.0, &x.0));
    Ok(out)
}

/// Whether every S-pair of `basis` reduces to zero modulo `basis`.
pub(crate) fn is_groebner<O: TermOrder>(basis: &[Pair], order: &O) -> bool {
    let e = Engine {
        order,
        basis: basis
            .iter()
            .map(|(l, t)| Elem { lead: l.clone(), trail: t.clone(), mask: mask(l), active: true })
            .collect(),
        pending: HashSet::new(),
        queue: BinaryHeap::new(),
        created: 0,
    };
    if basis.iter().any(|(l, t)| order.cmp(l, t) != Ordering::Greater) {
        return false;
    }
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let (a, b, _) = e.s_pair(i, j);
            if e.normal_form(a) != e.normal_form(b) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Lex;
    impl TermOrder for Lex {
        fn key(&self, m: &[u32]) -> Key {
            m.iter().map(|&e| e as i64).collect()
        }
    }

    #[test]
    fn twisted_cubic() {
        // kernel of (s^3, s^2 t, s t^2, t^3) in variables a, b, c, d
        let gens = vec![
            (vec![0, 2, 0, 0], vec![1, 0, 1, 0]),
            (vec![0, 0, 2, 0], vec![0, 1, 0, 1]),
            (vec![0, 1, 1, 0], vec![1, 0, 0, 1]),
        ];
        let w = [1, 1, 1, 1];
        let order = WeightedRevlex { weights: &w, last: 3 };
        let gb = groebner(gens, &order, 1000).unwrap();
        assert_eq!(gb.len(), 3);
        assert!(is_groebner(&gb, &order));
        let lex = groebner(gb.clone(), &Lex, 1000).unwrap();
        assert!(is_groebner(&lex, &Lex));
        assert!(lex.len() >= 3);
    }

    #[test]
    fn cap_is_enforced() {
        let gens = vec![
            (vec![0, 2, 0, 0], vec![1, 0, 1, 0]),
            (vec![0, 0, 2, 0], vec![0, 1, 0, 1]),
            (vec![0, 1, 1, 0], vec![1, 0, 0, 1]),
        ];
        assert!(matches!(groebner(gens, &Lex, 0), Err(Error::Resource(_))));
    }

    #[test]
    fn zero_binomials_vanish() {
        let gb = groebner(vec![(vec![1, 1], vec![1, 1])], &Lex, 10).unwrap();
        assert!(gb.is_empty());
    }
}
