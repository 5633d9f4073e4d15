//! Test-only oracles that avoid the library's table-driven arithmetic and
//! rank machinery.

#![allow(dead_code)]

use hullsmith::{Elem, Field, Matrix};

/// Schoolbook product of the coefficient vectors, reduced by the modulus.
pub fn poly_mul(f: &Field, a: Elem, b: Elem) -> Elem {
    let p = f.characteristic() as u64;
    let m = f.degree() as usize;
    let da = f.digits(a);
    let db = f.digits(b);
    let mut prod = vec![0u64; 2 * m];
    for i in 0..m {
        for j in 0..m {
            prod[i + j] = (prod[i + j] + da[i] as u64 * db[j] as u64) % p;
        }
    }
    let modulus: Vec<u64> = f.modulus().iter().map(|&c| c as u64).collect();
    for d in (m..2 * m).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        for (i, &mc) in modulus.iter().enumerate() {
            prod[d - m + i] = (prod[d - m + i] + p * p - c * mc % p) % p;
        }
    }
    encode(f, &prod[..m])
}

pub fn poly_add(f: &Field, a: Elem, b: Elem) -> Elem {
    let p = f.characteristic();
    let s: Vec<u64> = f.digits(a).iter().zip(f.digits(b)).map(|(&x, y)| ((x + y) % p) as u64).collect();
    encode(f, &s)
}

fn encode(f: &Field, digits: &[u64]) -> Elem {
    let p = f.characteristic() as u64;
    let rep = digits.iter().rev().fold(0u64, |acc, &d| acc * p + d);
    f.elem(rep as u32).unwrap()
}

/// x^e by repeated oracle multiplication.
pub fn poly_pow(f: &Field, x: Elem, e: u64) -> Elem {
    (0..e).fold(Elem::ONE, |acc, _| poly_mul(f, acc, x))
}

pub fn galois_product(f: &Field, x: &[Elem], y: &[Elem], e: u32) -> Elem {
    let pe = (f.characteristic() as u64).pow(e);
    x.iter().zip(y).fold(Elem::ZERO, |acc, (&a, &b)| poly_add(f, acc, poly_mul(f, a, poly_pow(f, b, pe))))
}

/// Every codeword x·G, by enumerating all messages.
pub fn codewords(g: &Matrix) -> Vec<Vec<Elem>> {
    let f = g.field();
    let q = f.order() as usize;
    let k = g.rows();
    let total = q.pow(k as u32);
    (0..total)
        .map(|mut idx| {
            let mut w = vec![Elem::ZERO; g.cols()];
            for r in 0..k {
                let c = f.elem((idx % q) as u32).unwrap();
                idx /= q;
                for (j, x) in w.iter_mut().enumerate() {
                    *x = poly_add(f, *x, poly_mul(f, c, g.get(r, j)));
                }
            }
            w
        })
        .collect()
}

/// log_q of the number of codewords orthogonal to every row.
pub fn brute_hull_dim(g: &Matrix, e: u32) -> usize {
    let f = g.field();
    let count = codewords(g)
        .iter()
        .filter(|w| (0..g.rows()).all(|r| galois_product(f, w, g.row(r), e).is_zero()))
        .count();
    let q = f.order() as usize;
    let mut d = 0;
    let mut c = 1;
    while c < count {
        c *= q;
        d += 1;
    }
    assert_eq!(c, count, "orthogonal codewords do not form a subspace");
    d
}

/// Minimum weight over all nonzero codewords.
pub fn brute_distance(g: &Matrix) -> usize {
    codewords(g).iter().map(|w| w.iter().filter(|x| !x.is_zero()).count()).filter(|&w| w > 0).min().unwrap_or(0)
}
