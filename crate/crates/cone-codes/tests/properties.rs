use cone_codes::cli::{ComplexDocument, Document};
use cone_codes::constructions::{random_complex, random_css};
use cone_codes::css::{CssCode, Side};
use cone_codes::f2linalg::{BitMatrix, BitVec};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn matrix() -> impl Strategy<Value = BitMatrix> {
    (0usize..9, 0usize..9).prop_flat_map(|(r, c)| {
        prop::collection::vec(any::<bool>(), r * c).prop_map(move |bits| {
            BitMatrix::from_entries(r, c, bits.iter().enumerate().filter(|(_, &b)| b).map(|(k, _)| (k / c.max(1), k % c.max(1))))
        })
    })
}

fn dims() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0usize..6, 1..5)
}

proptest! {
    #[test]
    fn rank_is_transpose_invariant(m in matrix()) {
        let r = m.rank();
        prop_assert_eq!(r, m.transpose().rank());
        prop_assert!(r <= m.rows().min(m.cols()));
    }

    #[test]
    fn kernel_basis_is_a_basis(m in matrix()) {
        let k = m.kernel_basis();
        prop_assert_eq!(k.rows(), m.cols());
        prop_assert_eq!(k.cols(), m.cols() - m.rank());
        prop_assert_eq!(k.rank(), k.cols());
        prop_assert!(m.multiply(&k).unwrap().is_zero());
    }

    #[test]
    fn solve_finds_preimages(m in matrix(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ones: Vec<usize> = (0..m.cols()).filter(|_| rand::Rng::gen_bool(&mut rng, 0.5)).collect();
        let x = BitVec::from_indices(m.cols(), ones);
        let b = m.mul_vec(&x);
        let y = m.solve(&b).expect("b is in the image");
        prop_assert_eq!(m.mul_vec(&y), b);
    }

    #[test]
    fn transpose_has_mirrored_homology(d in dims(), seed in any::<u64>()) {
        let c = random_complex(&mut ChaCha8Rng::seed_from_u64(seed), &d);
        let mut betti = c.betti().unwrap();
        betti.reverse();
        prop_assert_eq!(c.transpose_complex().betti().unwrap(), betti);
        prop_assert_eq!(c.transpose_complex().transpose_complex(), c);
    }

    #[test]
    fn complex_document_round_trip(d in dims(), seed in any::<u64>()) {
        let c = random_complex(&mut ChaCha8Rng::seed_from_u64(seed), &d);
        let doc = Document::Complex(ComplexDocument::from_complex(&c));
        let parsed = Document::parse(&doc.to_json()).unwrap();
        prop_assert_eq!(parsed.total_complex().unwrap(), c);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn distance_is_permutation_invariant(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let code = random_css(&mut rng);
        let mut order: Vec<usize> = (0..code.n()).collect();
        order.shuffle(&mut rng);
        let permute = |m: &BitMatrix| m.transpose().select_columns(&order).transpose();
        let shuffled = CssCode::from_parity_checks(&permute(&code.h_x()), &permute(code.h_z())).unwrap();
        prop_assert_eq!(shuffled.k(), code.k());
        prop_assert_eq!(shuffled.weights(), code.weights());
        for side in [Side::Z, Side::X] {
            prop_assert_eq!(shuffled.distance(side, 8).unwrap(), code.distance(side, 8).unwrap());
        }
    }
}
