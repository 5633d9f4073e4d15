mod common;

use std::sync::Arc;

use hullsmith::field::tower_for;
use hullsmith::grs::{hull_by_intersection, mds_certificate, Certificate};
use hullsmith::rules::{extend_both, extend_length_infty, extend_length_zero, herm, hull_reduce, increase_dim, Case, Direction, RuleOutcome, RuleTag};
use hullsmith::sampling::{self, SampleRng};
use hullsmith::{Code, Elem, Error, Field, GrsCode, InnerProduct};
use proptest::prelude::*;

fn tower(which: usize) -> Arc<Field> {
    tower_for([3, 4][which]).unwrap()
}

fn code_for(seed: u64, which: usize, n: usize, k: usize) -> (GrsCode, SampleRng) {
    let f = tower(which);
    let n = n.min(f.order() as usize);
    let k = k.min(n - 1).max(1);
    let mut rng = sampling::rng(seed);
    let code = if seed % 2 == 0 { sampling::random_grs(&f, n, k, &mut rng) } else { sampling::planted_grs(&f, n, k, (seed % 4) as usize, &mut rng) };
    (code.unwrap(), rng)
}

fn subfield_nonzero(f: &Field) -> Vec<Elem> {
    f.subfield_elements().unwrap().into_iter().filter(|x| !x.is_zero()).collect()
}

/// Case of adding row g with corner c, decided by enumerating hull codewords.
fn oracle_case(code: &GrsCode, g: &[Elem], corner: Elem) -> Case {
    let f = code.field();
    let gm = code.generator();
    let e = f.degree() / 2;
    let hull_words: Vec<Vec<Elem>> =
        common::codewords(&gm).into_iter().filter(|w| (0..gm.rows()).all(|r| common::galois_product(f, w, gm.row(r), e).is_zero())).collect();
    let in_dual = (0..gm.rows()).all(|r| common::galois_product(f, gm.row(r), g, e).is_zero());
    let in_hull_dual = hull_words.iter().all(|w| common::galois_product(f, w, g, e).is_zero());
    if in_dual && corner.is_zero() {
        Case::Orthogonal
    } else if !in_hull_dual {
        Case::OutsideHullDual
    } else {
        Case::InsideHullDual
    }
}

fn check_against_intersection(out: &RuleOutcome) -> Result<(), TestCaseError> {
    let direct = hull_by_intersection(&out.code.generator(), InnerProduct::Hermitian).unwrap();
    prop_assert_eq!(out.computed.hull_dim, direct);
    if out.exact {
        prop_assert_eq!(out.predicted_hull_lb, direct);
    } else {
        prop_assert!(direct >= out.predicted_hull_lb);
    }
    Ok(())
}

fn check_mds(code: &Code) -> Result<(), TestCaseError> {
    let rep = mds_certificate(code).unwrap();
    prop_assert!(matches!(rep.certificate, Certificate::AllMinorsNonsingular { .. } | Certificate::Exhaustive { .. }), "{:?}", rep.certificate);
    prop_assert_eq!(rep.distance, Some(code.length() - code.dimension() + 1));
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn length_extensions_are_exact(seed in any::<u64>(), which in 0usize..2, n in 3usize..16, k in 1usize..6, li in 0usize..4) {
        let (code, _) = code_for(seed, which, n, k);
        let f = code.field().clone();
        let lams = subfield_nonzero(&f);
        let lambda = lams[li % lams.len()];
        let out = extend_length_infty(&code, lambda).unwrap();
        check_against_intersection(&out)?;
        check_mds(&out.code)?;
        prop_assert_eq!(out.code.length(), code.n() + 1);
        match extend_length_zero(&code, lambda) {
            Ok(out) => {
                check_against_intersection(&out)?;
                check_mds(&out.code)?;
            }
            Err(Error::FieldFull) => prop_assert_eq!(code.n(), f.order() as usize),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
    }

    #[test]
    fn increase_dim_case_matches_membership(seed in any::<u64>(), which in 0usize..2, n in 3usize..16, k in 1usize..4, up in any::<bool>()) {
        let (code, _) = code_for(seed, which, n, k);
        let direction = if up { Direction::Up } else { Direction::Down };
        let out = match increase_dim(&code, direction) {
            Ok(o) => o,
            Err(Error::NegativePowerWithZeroPoint) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        let f = code.field().clone();
        let row = if up { code.k1() + code.dimension() as i64 } else { code.k1() - 1 };
        let g = code.row(row).unwrap();
        let expected = oracle_case(&code, &g, herm(&f, &g, &g));
        match out.rule_tag {
            RuleTag::IncreaseDim { case, .. } => prop_assert_eq!(case, expected),
            ref t => return Err(TestCaseError::fail(format!("unexpected tag {t}"))),
        }
        check_against_intersection(&out)?;
        check_mds(&out.code)?;
        let l = code.hull(InnerProduct::Hermitian).unwrap().hull_dim;
        match expected {
            Case::Orthogonal => prop_assert_eq!(out.computed.hull_dim, l + 1),
            Case::OutsideHullDual => prop_assert_eq!(out.computed.hull_dim + 1, l),
            Case::InsideHullDual => prop_assert!(out.computed.hull_dim >= l),
        }
    }

    #[test]
    fn extend_both_matches_intersection(seed in any::<u64>(), which in 0usize..2, n in 3usize..15, k in 1usize..4, up in any::<bool>(), li in 0usize..5) {
        let (code, _) = code_for(seed, which, n, k);
        let f = code.field().clone();
        let lams = subfield_nonzero(&f);
        let lambda = if li == 4 { None } else { Some(lams[li % lams.len()]) };
        let direction = if up { Direction::Up } else { Direction::Down };
        match extend_both(&code, lambda, direction) {
            Ok(out) => {
                check_against_intersection(&out)?;
                check_mds(&out.code)?;
                prop_assert_eq!(out.code.dimension(), code.dimension() + 1);
                prop_assert_eq!(out.code.length(), code.n() + 1);
            }
            Err(Error::CornerNotCancellable | Error::LambdaNotInSubfield(_) | Error::FieldFull) => {}
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
    }

    #[test]
    fn reduce_reaches_every_target(seed in any::<u64>(), which in 0usize..2, n in 4usize..16, k in 1usize..6) {
        let f = tower(which);
        let mut rng = sampling::rng(seed);
        let n = n.min(f.order() as usize);
        let code: Code = sampling::planted_grs(&f, n, k.min(n / 2).max(1), 0, &mut rng).unwrap().into();
        let l = code.hull(InnerProduct::Hermitian).unwrap().hull_dim;
        for target in 0..=l {
            let out = hull_reduce(&code, target, InnerProduct::Hermitian).unwrap();
            prop_assert_eq!(out.start_hull, l);
            prop_assert_eq!(hull_by_intersection(&out.code.generator(), InnerProduct::Hermitian).unwrap(), target);
            let trail: Vec<usize> = out.steps.iter().map(|s| s.hull_after).collect();
            let expected: Vec<usize> = (target..l).rev().collect();
            prop_assert_eq!(trail, expected);
        }
    }

    #[test]
    fn reparametrisation_preserves_hull(seed in any::<u64>(), which in 0usize..2, n in 3usize..15, k in 1usize..6, ai in 1u32..16, bi in 0u32..16) {
        let (code, _) = code_for(seed, which, n, k);
        let f = code.field().clone();
        let alpha = f.elem(ai % (f.order() - 1) + 1).unwrap();
        let b = f.elem(bi % f.order()).unwrap();
        let re = code.affine_reparam(alpha, b, Elem::ONE).unwrap();
        prop_assert_eq!(re.hull(InnerProduct::Hermitian).unwrap().hull_dim, code.hull(InnerProduct::Hermitian).unwrap().hull_dim);
        prop_assert_eq!(re.hull(InnerProduct::Euclidean).unwrap().hull_dim, code.hull(InnerProduct::Euclidean).unwrap().hull_dim);
    }
}

#[test]
fn reduce_refuses_tiny_fields() {
    let f = tower_for(2).unwrap();
    let code: Code = sampling::full_field_grs(&f, 1).unwrap().into();
    assert!(matches!(hull_reduce(&code, 0, InnerProduct::Hermitian), Err(Error::FieldTooSmall(_))));
}

#[test]
fn lambda_outside_subfield_rejected() {
    let f = tower_for(3).unwrap();
    let code = sampling::full_field_grs(&f, 2).unwrap();
    let bad = f.elements().find(|&x| !f.in_subfield(x).unwrap()).unwrap();
    assert!(matches!(extend_length_infty(&code, bad), Err(Error::LambdaNotInSubfield(_))));
}
