mod common;

use std::sync::Arc;

use hullsmith::{make_field, Elem, Field};
use proptest::prelude::*;

fn fields() -> Vec<Arc<Field>> {
    [(2, 1), (3, 1), (2, 2), (3, 2), (2, 3), (2, 4), (5, 2), (3, 3), (7, 2), (2, 6), (3, 4)]
        .iter()
        .map(|&(p, m)| make_field(p, m).unwrap())
        .collect()
}

fn field_and_elems() -> impl Strategy<Value = (Arc<Field>, Elem, Elem, Elem)> {
    (0..fields().len()).prop_flat_map(|i| {
        let f = fields()[i].clone();
        let q = f.order();
        (Just(f), 0..q, 0..q, 0..q).prop_map(|(f, a, b, c)| {
            let e = |r| f.elem(r).unwrap();
            (f.clone(), e(a), e(b), e(c))
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn arithmetic_matches_polynomial_oracle((f, a, b, _c) in field_and_elems()) {
        prop_assert_eq!(f.add(a, b), common::poly_add(&f, a, b));
        prop_assert_eq!(f.mul(a, b), common::poly_mul(&f, a, b));
        prop_assert_eq!(f.add(f.sub(a, b), b), a);
        prop_assert_eq!(f.add(a, f.neg(a)), Elem::ZERO);
    }

    #[test]
    fn field_axioms((f, a, b, c) in field_and_elems()) {
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), Elem::ONE);
            prop_assert_eq!(f.div(b, a).map(|x| f.mul(x, a)).unwrap(), b);
        } else {
            prop_assert!(f.inv(a).is_err());
        }
    }

    #[test]
    fn frobenius_is_an_automorphism((f, a, b, _c) in field_and_elems(), e in 0u32..6) {
        let e = e % f.degree();
        let fr = |x| f.frobenius(x, e);
        prop_assert_eq!(fr(f.add(a, b)), f.add(fr(a), fr(b)));
        prop_assert_eq!(fr(f.mul(a, b)), f.mul(fr(a), fr(b)));
        let pe = (f.characteristic() as u64).pow(e);
        prop_assert_eq!(fr(a), common::poly_pow(&f, a, pe));
    }

    #[test]
    fn pow_matches_repeated_product((f, a, _b, _c) in field_and_elems(), e in 0u64..40) {
        prop_assert_eq!(f.powu(a, e), common::poly_pow(&f, a, e));
        if !a.is_zero() {
            let x = f.pow(a, -(e as i64)).unwrap();
            prop_assert_eq!(f.mul(x, f.powu(a, e)), Elem::ONE);
        }
    }
}

#[test]
fn primitive_element_generates() {
    for f in fields() {
        let n = f.order() as usize - 1;
        let mut seen = std::collections::HashSet::new();
        let mut x = Elem::ONE;
        for t in 0..n {
            assert_eq!(f.exp(t as i64), x);
            assert_eq!(f.dlog(x).unwrap() as usize, t);
            seen.insert(x);
            x = common::poly_mul(&f, x, f.primitive());
        }
        assert_eq!(x, Elem::ONE);
        assert_eq!(seen.len(), n, "GF({}) primitive has short order", f.order());
    }
}

/// Remainder of a modulo the monic b over GF(p), coefficients low degree first.
fn poly_rem(p: u32, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let c = r.pop().unwrap();
        let off = r.len() - db;
        for (i, &bc) in b[..db].iter().enumerate() {
            r[off + i] = (r[off + i] + p - c * bc % p) % p;
        }
    }
    r
}

fn monic_polys(p: u32, d: usize) -> impl Iterator<Item = Vec<u32>> {
    (0..p.pow(d as u32)).map(move |mut j| {
        let mut v = vec![0; d + 1];
        for c in v[..d].iter_mut().rev() {
            *c = j % p;
            j /= p;
        }
        v[d] = 1;
        v
    })
}

fn irreducible_by_trial_division(p: u32, f: &[u32]) -> bool {
    let m = f.len() - 1;
    (1..=m / 2).all(|d| monic_polys(p, d).all(|g| poly_rem(p, f, &g).iter().any(|&c| c != 0)))
}

#[test]
fn modulus_is_the_smallest_irreducible() {
    for f in fields() {
        let p = f.characteristic();
        let first = monic_polys(p, f.degree() as usize).find(|g| irreducible_by_trial_division(p, g)).unwrap();
        assert_eq!(f.modulus(), &first[..], "GF({})", f.order());
    }
}

#[test]
fn conjugation_and_subfield() {
    for f in fields().into_iter().filter(|f| f.is_quadratic_tower()) {
        let q = f.subfield_order().unwrap();
        let sub = f.subfield_elements().unwrap();
        assert_eq!(sub.len() as u32, q);
        for x in f.elements() {
            let c = f.conj(x).unwrap();
            assert_eq!(f.conj(c).unwrap(), x);
            assert_eq!(c, common::poly_pow(&f, x, q as u64));
            assert_eq!(f.in_subfield(x).unwrap(), sub.contains(&x));
            // the norm lands in the subfield
            assert!(f.in_subfield(f.mul(x, c)).unwrap());
        }
    }
}

#[test]
fn norm_root_inverts_the_norm() {
    for f in fields().into_iter().filter(|f| f.is_quadratic_tower()) {
        let q = f.subfield_order().unwrap() as u64;
        for lambda in f.subfield_elements().unwrap().into_iter().filter(|x| !x.is_zero()) {
            let r = f.norm_root(lambda).unwrap();
            assert_eq!(common::poly_pow(&f, r, q + 1), lambda);
        }
        let outside = f.elements().find(|&x| !f.in_subfield(x).unwrap()).unwrap();
        assert!(f.norm_root(outside).is_err());
    }
}

#[test]
fn power_sums_over_the_whole_field() {
    for f in fields() {
        let n = f.order() as u64;
        for i in 0..n {
            let s = f.elements().fold(Elem::ZERO, |acc, x| common::poly_add(&f, acc, common::poly_pow(&f, x, i)));
            let expected = if i == n - 1 { f.neg(Elem::ONE) } else { Elem::ZERO };
            assert_eq!(s, expected, "GF({n}) power sum {i}");
            assert_eq!(f.sum(f.elements().map(|x| f.powu(x, i))), expected);
        }
    }
}
