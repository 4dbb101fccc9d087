use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qramp_core::access::{is_forbidden, is_qualified, reconstructible_qudits};
use qramp_core::constructions::{
    ag_functional_code, ag_pair, q7_sample_pair, grs_monomial_pair, ogawa_pair, theorem2_threshold,
    theorem3_qudits, HermitianCurve, OnePointCurve, RationalLine,
};
use qramp_core::{Error, FiniteField, ShareSet};

#[test]
fn hermitian_points_satisfy_the_curve_equation() {
    for r in [2u32, 3, 4] {
        let h = HermitianCurve::new(r).unwrap();
        let f = h.field();
        assert_eq!(h.points().len(), (r as usize).pow(3));
        for p in h.points() {
            assert_eq!(f.add(f.pow(p.y, r as u64), p.y), f.pow(p.x, r as u64 + 1));
        }
        let mut sorted = h.points().to_vec();
        sorted.sort_by_key(|p| (p.x.value(), p.y.value()));
        assert_eq!(sorted, h.points());
    }
}

#[test]
fn riemann_roch_dimensions() {
    for r in [2u32, 3] {
        let h = HermitianCurve::new(r).unwrap();
        let g = h.genus();
        for m in 0..=(3 * g + 4) {
            let l = h.riemann_roch_basis(m).dim();
            assert!(l as i64 >= m as i64 - g as i64 + 1, "r = {r}, m = {m}");
            if m >= 2 * g - 1 {
                assert_eq!(l, m - g + 1, "r = {r}, m = {m}");
            }
            // evaluation is injective while m < n
            let all: Vec<usize> = (0..h.points().len()).collect();
            if m < all.len() {
                assert_eq!(ag_functional_code(&h, m, &all).unwrap().dim(), l);
            }
        }
    }
}

#[test]
fn hermitian_threshold_holds_for_r3() {
    let h = HermitianCurve::new(3).unwrap();
    let points: Vec<usize> = (0..12).collect();
    let (m1, m2) = (8, 5);
    let pair = ag_pair(&h, m1, m2, &points).unwrap();
    let t = theorem2_threshold(h.genus(), m1, m2, points.len());
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..400 {
        let j = ShareSet::from_mask(12, rng.random_range(0..(1u64 << 12))).unwrap();
        assert_eq!(theorem3_qudits(&h, m1, m2, &points, &j).unwrap(), reconstructible_qudits(&pair, &j));
        if j.len() as i64 >= t {
            assert!(is_qualified(&pair, &j).unwrap());
            assert!(is_forbidden(&pair, &j.complement()));
        }
    }
}

#[test]
fn theorem3_on_random_rational_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for q in [5u64, 7, 8, 9] {
        let f = FiniteField::with_order(q).unwrap();
        let line = RationalLine::new(&f);
        for _ in 0..5 {
            let n = rng.random_range(3..=(q as usize).min(7));
            let mut pts: Vec<usize> = (0..q as usize).collect();
            for i in 0..n {
                let k = rng.random_range(i..pts.len());
                pts.swap(i, k);
            }
            pts.truncate(n);
            let m1 = rng.random_range(1..n);
            let m2 = rng.random_range(0..m1);
            let pair = ag_pair(&line, m1, m2, &pts).unwrap();
            assert_eq!(pair.secret_dim(), m1 - m2);
            for j in ShareSet::all_subsets(n) {
                assert_eq!(theorem3_qudits(&line, m1, m2, &pts, &j).unwrap(), reconstructible_qudits(&pair, &j));
            }
        }
    }
}

#[test]
fn threshold_for_reed_solomon_pairs() {
    // genus 0: qualified iff |J| >= max(k, n - k + L) (J reads the polynomial and
    // J̄ learns nothing), forbidden iff |J| <= k - L
    let alpha = [1u32, 2, 3, 4, 5, 6];
    for (k, l) in [(3usize, 1usize), (4, 2), (5, 3), (4, 4)] {
        for pair in [
            ogawa_pair(7, 6, k, l, &alpha).unwrap(),
            grs_monomial_pair(7, 6, k, l, &alpha).unwrap(),
        ] {
            for j in ShareSet::all_subsets(6) {
                assert_eq!(is_qualified(&pair, &j).unwrap(), j.len() >= k.max(6 - k + l), "k = {k}, L = {l}, J = {j}");
                assert_eq!(is_forbidden(&pair, &j), j.len() <= k - l, "k = {k}, L = {l}, J = {j}");
            }
        }
    }
}

#[test]
fn q7_sample_ogawa_variant_differs_only_in_c2() {
    let ogawa = ogawa_pair(7, 5, 4, 3, &[3, 5, 6, 1, 4]).unwrap();
    let ex = q7_sample_pair();
    assert_eq!(ogawa.c1(), ex.c1());
    assert_ne!(ogawa.c2(), ex.c2());
}

#[test]
fn construction_errors() {
    assert!(matches!(HermitianCurve::new(1), Err(Error::InvalidR(1))));
    let h = HermitianCurve::new(2).unwrap();
    assert!(matches!(ag_pair(&h, 4, 1, &[0, 0, 1]), Err(Error::InvalidDivisor(_))));
    assert!(matches!(ag_pair(&h, 4, 1, &[0, 9]), Err(Error::InvalidDivisor(_))));
    let j = ShareSet::all(4);
    assert!(matches!(
        theorem3_qudits(&h, 4, 1, &[0, 1, 2, 3], &j),
        Err(Error::DegreeTooLarge { m1: 4, n: 4 })
    ));
    assert!(grs_monomial_pair(7, 5, 4, 0, &[3, 5, 6, 1, 4]).is_err());
    assert!(ogawa_pair(4, 3, 2, 1, &[1, 2, 2]).is_err());
}
