use proptest::prelude::*;
use proptest::test_runner::RngSeed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qramp_core::access::{
    self, decompose_secret, image_dimension, quotient_kernels, reconstructible_qudits,
};
use qramp_core::constructions::random_nested_pair;
use qramp_core::info::{self, coherent_info_for, entropy_terms, holevo_closed, max_coherent_info};
use qramp_core::linalg::{OrderedBasis, Vector};
use qramp_core::{FieldRef, FiniteField, LinearCode, Matrix, NestedPair, ShareSet, Subspace};

const ORDERS: [u64; 7] = [2, 3, 4, 5, 7, 8, 9];

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 96,
        rng_seed: RngSeed::Fixed(0x5eed),
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

fn random_matrix(rng: &mut ChaCha8Rng, f: &FieldRef, rows: usize, cols: usize) -> Matrix {
    let rows: Vec<Vector> = (0..rows)
        .map(|_| (0..cols).map(|_| f.elem_unchecked(rng.random_range(0..f.order()))).collect())
        .collect();
    Matrix::from_rows(f, cols, &rows).unwrap()
}

/// A random nested pair together with a random subset of its coordinates.
fn pair_and_subset() -> impl Strategy<Value = (NestedPair, ShareSet)> {
    (0..4usize, 2..=7usize, any::<u64>()).prop_map(|(qi, n, seed)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = FiniteField::with_order([2, 3, 5, 7][qi]).unwrap();
        let k1 = rng.random_range(1..=n);
        let k2 = rng.random_range(0..k1);
        let pair = random_nested_pair(&mut rng, &f, n, k1, k2).unwrap();
        let j = ShareSet::from_mask(n, rng.random_range(0..(1u64 << n))).unwrap();
        (pair, j)
    })
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn field_axioms(qi in 0..ORDERS.len(), a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let f = FiniteField::with_order(ORDERS[qi]).unwrap();
        let [a, b, c] = [a, b, c].map(|x| f.elem_unchecked(x % f.order()));
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
            prop_assert_eq!(f.pow(a, f.order() as u64 - 1), f.one());
        }
    }

    #[test]
    fn rref_is_canonical(qi in 0..ORDERS.len(), r in 1..6usize, c in 1..7usize, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = FiniteField::with_order(ORDERS[qi]).unwrap();
        let a = random_matrix(&mut rng, &f, r, c);
        let mix = loop {
            let m = random_matrix(&mut rng, &f, r, r);
            if m.rank() == r {
                break m;
            }
        };
        prop_assert_eq!(mix.mul(&a).unwrap().rref().matrix, a.rref().matrix);
        let red = a.rref();
        prop_assert_eq!(red.matrix.rref().matrix, red.matrix.clone());
        prop_assert_eq!(a.rank() + a.kernel_basis().dim(), c);
    }

    #[test]
    fn grassmann_and_duality(qi in 0..ORDERS.len(), n in 1..7usize, ra in 0..6usize, rb in 0..6usize, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = FiniteField::with_order(ORDERS[qi]).unwrap();
        let u = Subspace::from_matrix(&random_matrix(&mut rng, &f, ra, n));
        let w = Subspace::from_matrix(&random_matrix(&mut rng, &f, rb, n));
        let (sum, meet) = (u.sum(&w).unwrap(), u.intersect(&w).unwrap());
        prop_assert_eq!(sum.dim() + meet.dim(), u.dim() + w.dim());
        prop_assert!(meet.is_subspace_of(&u) && meet.is_subspace_of(&w));
        prop_assert_eq!(u.annihilator().dim(), n - u.dim());
        prop_assert_eq!(u.annihilator().annihilator(), u.clone());
        let comp = u.complement();
        prop_assert_eq!(comp.dim(), n - u.dim());
        prop_assert!(comp.intersect(&u).unwrap().is_zero());
        let reps = sum.quotient_representatives(&u).unwrap();
        prop_assert_eq!(reps.len(), sum.dim() - u.dim());
    }

    #[test]
    fn ordered_basis_coordinates(qi in 0..ORDERS.len(), n in 1..6usize, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = FiniteField::with_order(ORDERS[qi]).unwrap();
        let m = random_matrix(&mut rng, &f, n, n);
        prop_assume!(m.rank() == n);
        let basis = OrderedBasis::new(&f, n, &m.row_vectors()).unwrap();
        let coeffs: Vector = (0..n).map(|_| f.elem_unchecked(rng.random_range(0..f.order()))).collect();
        let v = m.apply_row(&coeffs);
        prop_assert_eq!(basis.coordinates(&v), Some(coeffs));
    }

    #[test]
    fn projection_rank_nullity((pair, j) in pair_and_subset()) {
        for code in [pair.c1(), pair.c2()] {
            prop_assert_eq!(code.dim(), code.projected_dim(&j) + code.vanishing_on(&j).dim());
        }
    }

    #[test]
    fn qualified_routes_agree((pair, j) in pair_and_subset()) {
        let w = access::qualified_witness(&pair, &j).unwrap();
        let l = pair.secret_dim();
        prop_assert_eq!(w.qualified, w.reconstructible_qudits == l);
        prop_assert_eq!(w.qualified, w.full_rank_on_j && w.complement_blind);
        prop_assert_eq!(w.qualified, w.full_rank_on_j && w.dual_shortening_equal);
    }

    #[test]
    fn information_identities((pair, j) in pair_and_subset()) {
        let (single, mixture) = entropy_terms(&pair, &j);
        prop_assert!(single >= 0 && mixture >= single);
        prop_assert_eq!(holevo_closed(&pair, &j), mixture - single);
        let recon = reconstructible_qudits(&pair, &j);
        prop_assert_eq!(image_dimension(&pair, &j), recon);
        let (best, d) = max_coherent_info(&pair, &j).unwrap();
        prop_assert_eq!(best, recon as i64);
        prop_assert!(coherent_info_for(pair.c1(), pair.c2(), &j) <= best);
        prop_assert!(pair.c2().is_subcode_of(&d) && d.is_subcode_of(pair.c1()));
        prop_assert!(info::coherent_info_closed(&pair, &j) <= holevo_closed(&pair, &j));
    }

    #[test]
    fn decomposition_is_direct((pair, j) in pair_and_subset()) {
        let d = decompose_secret(&pair, &j);
        let l = pair.secret_dim();
        let (v, w, k) = d.dims();
        prop_assert_eq!(v + w + k, l);
        prop_assert_eq!(d.v.sum(&d.w).unwrap().sum(&d.k).unwrap().dim(), l);
        let kern = quotient_kernels(&pair, &j);
        prop_assert!(d.v.is_subspace_of(&kern.ker_complement));
        prop_assert_eq!(v, reconstructible_qudits(&pair, &j));
    }

    #[test]
    fn more_participants_know_more((pair, j) in pair_and_subset(), extra in 0..7usize) {
        let n = pair.n();
        let mut bigger: Vec<usize> = j.members().iter().map(|i| i + 1).collect();
        bigger.push(extra % n + 1);
        bigger.sort_unstable();
        bigger.dedup();
        let big = ShareSet::from_indices(n, &bigger).unwrap();
        prop_assert!(reconstructible_qudits(&pair, &big) >= reconstructible_qudits(&pair, &j));
        prop_assert!(holevo_closed(&pair, &big) >= holevo_closed(&pair, &j));
    }

    #[test]
    fn secret_labelling_round_trip((pair, _j) in pair_and_subset(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = pair.field();
        let s: Vector = (0..pair.secret_dim()).map(|_| f.elem_unchecked(rng.random_range(0..f.order()))).collect();
        let x = pair.representative(&s);
        prop_assert!(pair.c1().contains(&x));
        prop_assert_eq!(pair.secret_of(&x), Some(s));
    }
}

#[test]
fn share_set_complement_is_involution() {
    for n in 1..=6 {
        for j in ShareSet::all_subsets(n) {
            assert_eq!(j.complement().complement(), j);
            assert_eq!(j.len() + j.complement().len(), n);
        }
    }
}

#[test]
fn dual_of_dual() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let f = FiniteField::new(5, 1).unwrap();
    for _ in 0..20 {
        let code = LinearCode::from_generator(&random_matrix(&mut rng, &f, 3, 6)).unwrap();
        assert_eq!(code.dual().dual(), code);
        assert_eq!(code.dual().dim() + code.dim(), 6);
    }
}
