use fdalg_core::{Fp, FpMatrix};
use proptest::prelude::*;

fn matrix() -> impl Strategy<Value = FpMatrix> {
    (prop::sample::select(vec![2u32, 3, 5]), 0usize..=12, 0usize..=12).prop_flat_map(|(p, r, c)| {
        prop::collection::vec(0..p, r * c).prop_map(move |data| FpMatrix::from_vec(Fp::new(p).unwrap(), r, c, data))
    })
}

fn small_matrix() -> impl Strategy<Value = FpMatrix> {
    (prop::sample::select(vec![2u32, 3]), 1usize..=4, 1usize..=5).prop_flat_map(|(p, r, c)| {
        prop::collection::vec(0..p, r * c).prop_map(move |data| FpMatrix::from_vec(Fp::new(p).unwrap(), r, c, data))
    })
}

/// Number of solutions of `M x = 0` by enumerating every vector.
fn brute_force_kernel_size(m: &FpMatrix) -> usize {
    let p = m.p() as usize;
    let n = m.cols();
    let mut count = 0;
    let mut x = vec![0u32; n];
    for _ in 0..p.pow(n as u32) {
        if m.mul_vec(&x).iter().all(|&v| v == 0) {
            count += 1;
        }
        for d in x.iter_mut() {
            *d += 1;
            if *d as usize == p {
                *d = 0;
            } else {
                break;
            }
        }
    }
    count
}

proptest! {
    #[test]
    fn rref_is_idempotent(m in matrix()) {
        let (r, piv) = m.rref();
        let (rr, piv2) = r.rref();
        prop_assert_eq!(&r, &rr);
        prop_assert_eq!(piv, piv2);
    }

    #[test]
    fn rank_nullity(m in matrix()) {
        let k = m.kernel_basis();
        prop_assert_eq!(m.rank() + k.cols(), m.cols());
        prop_assert!(m.mul(&k).is_zero());
        prop_assert_eq!(k.rank(), k.cols());
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn solve_substitutes(m in matrix(), seed in any::<u64>()) {
        let f = m.field();
        let x: Vec<u32> = (0..m.cols()).map(|i| ((seed >> (i % 60)) as u32) % f.modulus()).collect();
        let b = FpMatrix::column(f, &m.mul_vec(&x));
        let y = m.solve(&b).unwrap().expect("b is in the column space");
        prop_assert_eq!(m.mul(&y), b);
    }

    #[test]
    fn unsolvable_iff_rank_grows(m in matrix(), seed in any::<u64>()) {
        let f = m.field();
        let b: Vec<u32> = (0..m.rows()).map(|i| ((seed >> (i % 60)) as u32) % f.modulus()).collect();
        let bm = FpMatrix::column(f, &b);
        let aug = FpMatrix::hstack(f, m.rows(), &[&m, &bm]);
        let solvable = m.solve(&bm).unwrap().is_some();
        prop_assert_eq!(solvable, aug.rank() == m.rank());
    }

    #[test]
    fn kernel_size_matches_enumeration(m in small_matrix()) {
        let p = m.p() as usize;
        prop_assert_eq!(brute_force_kernel_size(&m), p.pow(m.kernel_basis().cols() as u32));
    }

    #[test]
    fn inverse_is_two_sided(m in matrix()) {
        if m.rows() == m.cols() {
            match m.inverse() {
                Some(inv) => {
                    let id = FpMatrix::identity(m.field(), m.rows());
                    prop_assert_eq!(m.mul(&inv), id.clone());
                    prop_assert_eq!(inv.mul(&m), id);
                }
                None => prop_assert!(m.rank() < m.rows()),
            }
        }
    }
}

#[test]
fn field_inverses() {
    for p in [2u32, 3, 5, 7, 2_147_483_647] {
        let f = Fp::new(p).unwrap();
        for a in [1u32, 2, p - 1, p / 2 + 1] {
            let a = a % p;
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a)), 1);
            }
        }
    }
    assert!(Fp::new(4).is_err());
    assert!(Fp::new(1).is_err());
}
