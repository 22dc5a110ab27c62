use proptest::prelude::*;
use silting::Matrix;

const P: u64 = 7;

fn matrix(max: usize) -> impl Strategy<Value = Matrix> {
    (1..=max, 1..=max)
        .prop_flat_map(|(r, c)| prop::collection::vec(0..P, r * c).prop_map(move |d| Matrix::from_vec(r, c, P, d)))
}

proptest! {
    #[test]
    fn rank_is_transpose_invariant(a in matrix(6)) {
        prop_assert_eq!(a.rank(), a.transpose().rank());
    }

    #[test]
    fn rank_nullity(a in matrix(6)) {
        let k = a.kernel_basis();
        prop_assert_eq!(a.rank() + k.cols(), a.cols());
        prop_assert!(a.mul(&k).is_zero());
        prop_assert_eq!(k.rank(), k.cols());
    }

    #[test]
    fn solve_reaches_every_image(a in matrix(5), seed in prop::collection::vec(0..P, 5)) {
        let x = Matrix::from_vec(a.cols(), 1, P, seed[..a.cols()].to_vec());
        let b = a.mul(&x);
        let sol = a.solve_right(&b).expect("b lies in the image");
        prop_assert_eq!(a.mul(&sol.particular), b);
        prop_assert!(a.mul(&sol.nullspace).is_zero());
    }

    #[test]
    fn left_kernel_annihilates(a in matrix(5)) {
        let l = a.left_kernel();
        prop_assert!(l.mul(&a).is_zero());
        prop_assert_eq!(l.rows() + a.rank(), a.rows());
    }

    #[test]
    fn inverse_when_full_rank(a in matrix(4)) {
        if a.is_square() && a.rank() == a.rows() {
            let inv = a.inverse().unwrap();
            prop_assert_eq!(a.mul(&inv), Matrix::identity(a.rows(), P));
        } else {
            prop_assert!(a.inverse().is_none());
        }
    }
}

#[test]
fn small_prime_arithmetic() {
    // GF(5): [[2, 1], [1, 3]] has determinant 0 mod 5
    let a = Matrix::from_rows(&[vec![2, 1], vec![1, 3]], 5);
    assert_eq!(a.rank(), 1);
    let b = Matrix::from_rows(&[vec![1, 2], vec![3, -1]], 5);
    assert_eq!(b.rank(), 2);
    assert_eq!(b.mul(&b.inverse().unwrap()), Matrix::identity(2, 5));
}
