mod common;

use common::*;
use fdalg_core::algebra::verify_radical;
use fdalg_core::catalog::{build_algebra, Family};
use fdalg_core::{Algebra, Fp, FpMatrix};

fn same_span(a: &FpMatrix, b: &FpMatrix) -> bool {
    if a.cols() != b.cols() {
        return false;
    }
    if a.cols() == 0 {
        return true;
    }
    let f = a.field();
    FpMatrix::hstack(f, a.rows(), &[a, b]).rank() == a.cols()
}

/// A copy of the algebra without its quiver presentation.
fn as_table(a: &Algebra) -> Algebra {
    let d = a.dim();
    let products: Vec<Vec<Vec<i64>>> = (0..d)
        .map(|i| (0..d).map(|j| a.product(i, j).iter().map(|&x| x as i64).collect()).collect())
        .collect();
    let unit: Vec<i64> = a.unit().iter().map(|&x| x as i64).collect();
    let idem: Vec<Vec<i64>> = a.idempotents().iter().map(|e| e.iter().map(|&x| x as i64).collect()).collect();
    Algebra::from_table(a.field(), a.labels().to_vec(), &products, &unit, Some(&idem)).unwrap()
}

#[test]
fn group_algebra_radicals() {
    // modular cyclic groups are local with radical the augmentation ideal
    for p in [2u32, 3, 5] {
        let a = group_algebra(p, &cyclic_group(p as usize));
        assert_eq!(a.radical().dim(), p as usize - 1);
    }
    // p coprime to the group order: semisimple
    assert_eq!(group_algebra(5, &cyclic_group(3)).radical().dim(), 0);
    assert_eq!(group_algebra(2, &klein_four()).radical().dim(), 3);
    // GF(3)S3: two one-dimensional simples; GF(2)S3: trivial plus a projective 2-dim simple
    assert_eq!(group_algebra(3, &symmetric3()).radical().dim(), 4);
    assert_eq!(group_algebra(2, &symmetric3()).radical().dim(), 1);
    assert_eq!(group_algebra(5, &symmetric3()).radical().dim(), 0);
}

#[test]
fn matrix_algebras() {
    for p in [2u32, 3] {
        assert_eq!(matrix_algebra(p, 2, false).radical().dim(), 0);
        assert_eq!(matrix_algebra(p, 3, false).radical().dim(), 0);
        assert_eq!(matrix_algebra(p, 2, true).radical().dim(), 1);
        assert_eq!(matrix_algebra(p, 3, true).radical().dim(), 3);
    }
}

#[test]
fn arrow_ideal_matches_trace_form() {
    let f2 = Fp::new(2).unwrap();
    let f3 = Fp::new(3).unwrap();
    let families = [
        Family::LinearA { n: 3 },
        Family::Truncated { t: 4 },
        Family::Nakayama {
            kupisch: vec![2, 2, 1],
            cyclic: false,
        },
        Family::Nakayama {
            kupisch: vec![3, 2],
            cyclic: true,
        },
        Family::Nakayama {
            kupisch: vec![2, 2, 2],
            cyclic: true,
        },
    ];
    for fam in &families {
        for f in [f2, f3] {
            let a = build_algebra(fam, f).unwrap();
            let arrow = a.radical().clone();
            let trace = a.radical_by_trace_form();
            assert!(same_span(&arrow.basis, &trace.basis), "{fam:?} p={}", f.modulus());
            let t = as_table(&a);
            assert!(same_span(&t.radical().basis, &arrow.basis));
            verify_radical(&t, t.radical(), true).unwrap();
        }
    }
}

#[test]
fn non_radical_is_rejected() {
    let a = group_algebra(2, &cyclic_group(2));
    let f = a.field();
    // the span of 1 is not nilpotent
    let bogus = fdalg_core::algebra::RadicalIdeal {
        basis: FpMatrix::from_rows(f, 1, &[[1], [0]]),
    };
    assert!(verify_radical(&a, &bogus, true).is_err());
}
