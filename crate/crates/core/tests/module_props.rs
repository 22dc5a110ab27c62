use std::sync::Arc;

use proptest::prelude::*;
use silting::fixtures;
use silting::repmod::{decompose, ext1_dim, hom_dim, is_isomorphic};
use silting::torsion::Pool;
use silting::{Algebra, Matrix, Module};

fn fixture(k: usize) -> Arc<Algebra> {
    match k % 4 {
        0 => fixtures::a2(),
        1 => fixtures::a3(),
        2 => fixtures::dual(),
        _ => fixtures::a3_rad2(),
    }
}

/// `L * U` with unit lower `L` and upper `U` carrying a nonzero diagonal.
fn invertible(d: usize, p: u64, seed: &[u64]) -> Matrix {
    let mut it = seed.iter().cycle().copied();
    let mut l = Matrix::identity(d, p);
    let mut u = Matrix::zeros(d, d, p);
    for r in 0..d {
        for c in 0..d {
            let x = it.next().unwrap_or(1) % p;
            if c < r {
                l.set(r, c, x);
            } else if c == r {
                u.set(r, c, 1 + x % (p - 1));
            } else {
                u.set(r, c, x);
            }
        }
    }
    l.mul(&u)
}

/// The same module after a change of basis at every vertex.
fn conjugate(m: &Module, seed: &[u64]) -> Module {
    let alg = m.algebra();
    let p = alg.field();
    let g: Vec<Matrix> = m.dims().iter().enumerate().map(|(v, &d)| invertible(d, p, &seed[v..])).collect();
    let action = alg
        .arrows()
        .iter()
        .zip(m.action())
        .map(|(a, x)| g[a.target].mul(x).mul(&g[a.source].inverse().unwrap()))
        .collect();
    Module::new(alg.clone(), m.dims().to_vec(), action).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hom_and_ext_are_basis_independent(
        k in 0usize..4, i in 0usize..8, j in 0usize..8, seed in prop::collection::vec(0u64..50, 40)
    ) {
        let pool = Pool::complete(&fixture(k), 3).unwrap();
        let (m, n) = (&pool.modules()[i % pool.len()], &pool.modules()[j % pool.len()]);
        let (gm, gn) = (conjugate(m, &seed), conjugate(n, &seed[7..]));
        prop_assert!(is_isomorphic(m, &gm));
        prop_assert_eq!(hom_dim(m, n).unwrap(), hom_dim(&gm, &gn).unwrap());
        prop_assert_eq!(ext1_dim(m, n).unwrap(), ext1_dim(&gm, &gn).unwrap());
    }

    #[test]
    fn sums_decompose_into_their_parts(
        k in 0usize..4, i in 0usize..8, j in 0usize..8, seed in prop::collection::vec(0u64..50, 40)
    ) {
        let alg = fixture(k);
        let pool = Pool::complete(&alg, 3).unwrap();
        let (m, n) = (&pool.modules()[i % pool.len()], &pool.modules()[j % pool.len()]);
        let sum = conjugate(&Module::direct_sum(&alg, &[m, n]).unwrap(), &seed);
        let mut got: Vec<usize> = Vec::new();
        for (x, mult) in decompose(&sum).unwrap() {
            let idx = pool.index_of(&x).expect("summand is a pool module");
            got.extend(std::iter::repeat_n(idx, mult));
        }
        got.sort_unstable();
        let mut want = vec![i % pool.len(), j % pool.len()];
        want.sort_unstable();
        prop_assert_eq!(got, want);
        for x in pool.modules() {
            prop_assert_eq!(hom_dim(&sum, x).unwrap(), hom_dim(m, x).unwrap() + hom_dim(n, x).unwrap());
        }
    }
}

/// On a hereditary algebra `dim Hom - dim Ext^1` is the Euler form of the dimension vectors.
#[test]
fn euler_form_on_path_algebras() {
    for alg in [fixtures::a2(), fixtures::a3()] {
        let pool = Pool::complete(&alg, 3).unwrap();
        for x in pool.modules() {
            for y in pool.modules() {
                let (a, b) = (x.dims(), y.dims());
                let vertices: i64 = (0..a.len()).map(|v| (a[v] * b[v]) as i64).sum();
                let arrows: i64 = alg.arrows().iter().map(|e| (a[e.source] * b[e.target]) as i64).sum();
                let lhs = hom_dim(x, y).unwrap() as i64 - ext1_dim(x, y).unwrap() as i64;
                assert_eq!(lhs, vertices - arrows, "{a:?} {b:?}");
            }
        }
    }
}

/// Indecomposables of linear A_n are the interval modules, one per interval.
#[test]
fn interval_modules() {
    for (alg, n) in [(fixtures::one(), 1), (fixtures::a2(), 2), (fixtures::a3(), 3)] {
        let pool = Pool::complete(&alg, 3).unwrap();
        let mut got: Vec<Vec<usize>> = pool.modules().iter().map(|m| m.dims().to_vec()).collect();
        got.sort();
        let mut want = Vec::new();
        for lo in 0..n {
            for hi in lo..n {
                want.push((0..n).map(|v| usize::from(lo <= v && v <= hi)).collect::<Vec<_>>());
            }
        }
        want.sort();
        assert_eq!(got, want);
        assert_eq!(pool.len(), n * (n + 1) / 2);
    }
}

#[test]
fn dual_numbers_have_two_indecomposables() {
    let pool = Pool::complete(&fixtures::dual(), 3).unwrap();
    let mut dims: Vec<usize> = pool.modules().iter().map(|m| m.dims()[0]).collect();
    dims.sort_unstable();
    assert_eq!(dims, vec![1, 2]);
}
