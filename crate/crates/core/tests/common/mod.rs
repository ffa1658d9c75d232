#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;

use toric_qk::inertia::fixed_indices;
use toric_qk::linalg::{snf, IntMatrix, Rational};
use toric_qk::GitData;

pub fn projective(k: usize) -> GitData {
    GitData::from_rows(&[vec![1; k]], &[1]).unwrap()
}

pub fn p23() -> GitData {
    GitData::from_rows(&[vec![2, 3]], &[1]).unwrap()
}

pub fn p1xp1() -> GitData {
    GitData::from_rows(&[vec![1, 1, 0, 0], vec![0, 0, 1, 1]], &[1, 1]).unwrap()
}

pub fn p123() -> GitData {
    GitData::from_rows(&[vec![1, 2, 3]], &[1]).unwrap()
}

/// Weighted plane times a line: an orbifold of torus rank two.
pub fn p112xp1() -> GitData {
    GitData::from_rows(&[vec![1, 1, 2, 0, 0], vec![0, 0, 0, 1, 1]], &[1, 1]).unwrap()
}

/// Hirzebruch surface F_1.
pub fn f1() -> GitData {
    GitData::from_rows(&[vec![1, 1, 1, 0], vec![0, 0, 1, 1]], &[2, 1]).unwrap()
}

/// The same weights as `f1` in the other chamber, where the quotient is P^2.
pub fn f1_flipped() -> GitData {
    GitData::from_rows(&[vec![1, 1, 1, 0], vec![0, 0, 1, 1]], &[1, 2]).unwrap()
}

pub fn named_fixtures() -> Vec<(&'static str, GitData)> {
    vec![
        ("P1", projective(2)),
        ("P2", projective(3)),
        ("P[2,3]", p23()),
        ("P1xP1", p1xp1()),
        ("P(1,2,3)", p123()),
        ("P(1,1,2)xP1", p112xp1()),
        ("F1", f1()),
        ("F1 flipped", f1_flipped()),
    ]
}

/// Determinant by permutation expansion.
pub fn det(m: &IntMatrix) -> BigInt {
    let n = m.rows();
    assert_eq!(n, m.cols());
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = BigInt::zero();
    permute(&mut perm, 0, m, &mut total);
    total
}

pub fn permute(perm: &mut Vec<usize>, i: usize, m: &IntMatrix, total: &mut BigInt) {
    let n = perm.len();
    if i == n {
        let mut sign = 1i32;
        for a in 0..n {
            for b in a + 1..n {
                if perm[a] > perm[b] {
                    sign = -sign;
                }
            }
        }
        let mut p = BigInt::from(sign);
        for (r, &c) in perm.iter().enumerate() {
            p *= m[(r, c)];
        }
        *total += p;
        return;
    }
    for j in i..n {
        perm.swap(i, j);
        permute(perm, i + 1, m, total);
        perm.swap(i, j);
    }
}

/// gcd of all `t x t` minors.
pub fn determinantal_divisor(a: &IntMatrix, t: usize) -> BigInt {
    let mut g = BigInt::zero();
    let rows = subsets(a.rows(), t);
    let cols = subsets(a.cols(), t);
    for r in &rows {
        for c in &cols {
            let data: Vec<i64> = r
                .iter()
                .flat_map(|&i| c.iter().map(move |&j| (i, j)))
                .map(|(i, j)| a[(i, j)])
                .collect();
            let minor = IntMatrix::new(t, t, data).unwrap();
            g = num_integer::Integer::gcd(&g, &det(&minor));
        }
    }
    g
}

pub fn subsets(n: usize, t: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == t)
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
        .collect()
}

/// Feasibility of `G lambda = t, lambda >= 0` by Gaussian substitution of
/// the equalities followed by Fourier-Motzkin elimination.
pub fn cone_oracle(gens: &[Vec<Rational>], target: &[Rational]) -> bool {
    let n = gens.len();
    // rows: (a, b) meaning a . lambda <= b (ineq) or = b (eq)
    let mut eqs: Vec<(Vec<Rational>, Rational)> = (0..target.len())
        .map(|c| {
            (
                (0..n).map(|i| gens[i][c].clone()).collect(),
                target[c].clone(),
            )
        })
        .collect();
    let mut ineqs: Vec<(Vec<Rational>, Rational)> = (0..n)
        .map(|i| {
            let mut a = vec![Rational::zero(); n];
            a[i] = -Rational::one();
            (a, Rational::zero())
        })
        .collect();
    while let Some((a, b)) = eqs.pop() {
        let Some(v) = (0..n).find(|&v| !a[v].is_zero()) else {
            if !b.is_zero() {
                return false;
            }
            continue;
        };
        let substitute = |row: &mut (Vec<Rational>, Rational)| {
            let f = &row.0[v] / &a[v];
            if f.is_zero() {
                return;
            }
            for i in 0..n {
                row.0[i] = &row.0[i] - &f * &a[i];
            }
            row.1 = &row.1 - &f * &b;
        };
        eqs.iter_mut().for_each(substitute);
        ineqs.iter_mut().for_each(substitute);
    }
    for v in 0..n {
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for row in ineqs {
            if row.0[v].is_positive() {
                pos.push(row);
            } else if row.0[v].is_negative() {
                neg.push(row);
            } else {
                rest.push(row);
            }
        }
        for p in &pos {
            for q in &neg {
                let (fp, fq) = (-&q.0[v], p.0[v].clone());
                let a: Vec<Rational> = (0..n).map(|i| &p.0[i] * &fp + &q.0[i] * &fq).collect();
                rest.push((a, &p.1 * &fp + &q.1 * &fq));
            }
        }
        ineqs = rest;
    }
    ineqs.iter().all(|(_, b)| !b.is_negative())
}

/// All `xi in (1/n) Z^r / Z^r` fixing a semistable support.
pub fn brute_force_sectors(g: &GitData, n: i64) -> BTreeSet<Vec<Rational>> {
    let r = g.r();
    let mut out = BTreeSet::new();
    let mut c = vec![0i64; r];
    loop {
        let xi: Vec<Rational> = c
            .iter()
            .map(|&x| Rational::new(x.into(), n.into()))
            .collect();
        if g.is_semistable(&fixed_indices(g, &xi)) {
            out.insert(xi);
        }
        let mut i = 0;
        loop {
            if i == r {
                return out;
            }
            c[i] += 1;
            if c[i] < n {
                break;
            }
            c[i] = 0;
            i += 1;
        }
    }
}

/// Largest invariant factor over all full-rank supports.
pub fn elementary_bound(g: &GitData) -> i64 {
    let k = g.k();
    let mut best = 1;
    for mask in 1u32..1 << k {
        let t: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).collect();
        let res = snf(&g.weights().select_columns(&t));
        if res.rank() == g.r() {
            best = res
                .invariant_factors()
                .into_iter()
                .fold(best, num_integer::lcm);
        }
    }
    best
}
