//! A small Buchberger implementation for the ideals that show up here:
//! monomial-like ideals in a handful of variables.

use crate::poly::{Monomial, Poly};

/// Fully reduces `p` modulo `basis` (every term, not just the leading one).
pub fn reduce(p: &Poly, basis: &[Poly]) -> Poly {
    let nvars = p.nvars();
    let mut rem = Poly::zero(nvars);
    let mut work = p.clone();
    while let Some((m, c)) = work.leading().map(|(m, c)| (m.clone(), c.clone())) {
        let divisor = basis
            .iter()
            .find(|g| g.leading().is_some_and(|(lm, _)| lm.divides(&m)));
        match divisor {
            Some(g) => {
                let (lm, lc) = g.leading().unwrap();
                let q = lm.quotient_of(&m);
                let f = c / lc;
                work = &work - &g.mul_term(&q, &f);
            }
            None => {
                work.add_term(m.clone(), -c.clone());
                rem.add_term(m, c);
            }
        }
    }
    rem
}

fn s_poly(f: &Poly, g: &Poly) -> Poly {
    let (lf, cf) = f.leading().unwrap();
    let (lg, cg) = g.leading().unwrap();
    let l = lf.lcm(lg);
    let a = f.mul_term(&lf.quotient_of(&l), &cf.recip());
    let b = g.mul_term(&lg.quotient_of(&l), &cg.recip());
    &a - &b
}

/// Reduced Gröbner basis under degrevlex. Pairs are processed in order of
/// (lcm degree, lcm, index pair) so the result is deterministic.
pub fn groebner_basis(generators: &[Poly]) -> Vec<Poly> {
    let mut basis: Vec<Poly> = Vec::new();
    for g in generators {
        let r = reduce(g, &basis);
        if !r.is_zero() {
            basis.push(r.monic());
        }
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.push((i, j));
        }
    }
    while !pairs.is_empty() {
        let key = |&(i, j): &(usize, usize)| -> (u32, Monomial, usize, usize) {
            let l = basis[i]
                .leading()
                .unwrap()
                .0
                .lcm(basis[j].leading().unwrap().0);
            (l.degree(), l, i, j)
        };
        let (pos, _) = pairs
            .iter()
            .enumerate()
            .min_by(|a, b| key(a.1).cmp(&key(b.1)))
            .unwrap();
        let (i, j) = pairs.swap_remove(pos);
        let (li, lj) = (basis[i].leading().unwrap().0, basis[j].leading().unwrap().0);
        // Buchberger's first criterion
        if li.coprime(lj) {
            continue;
        }
        let r = reduce(&s_poly(&basis[i], &basis[j]), &basis);
        if !r.is_zero() {
            let n = basis.len();
            basis.push(r.monic());
            for i in 0..n {
                pairs.push((i, n));
            }
        }
    }
    interreduce(basis)
}

fn interreduce(basis: Vec<Poly>) -> Vec<Poly> {
    // drop elements whose leading monomial is divisible by another's
    let mut minimal: Vec<Poly> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let lg = g.leading().unwrap().0;
        let redundant = basis.iter().enumerate().any(|(j, h)| {
            let lh = h.leading().unwrap().0;
            j != i && lh.divides(lg) && (lh != lg || j < i)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut reduced: Vec<Poly> = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Poly> = minimal
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, p)| p.clone())
            .collect();
        reduced.push(reduce(&minimal[i], &others).monic());
    }
    reduced.sort_by(|a, b| a.leading().unwrap().0.cmp(b.leading().unwrap().0));
    reduced
}
