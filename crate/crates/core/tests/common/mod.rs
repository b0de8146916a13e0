#![allow(dead_code)]

use std::sync::Arc;

use fdalg_core::module::{Module, Side};
use fdalg_core::{Algebra, Fp, Quiver, Relation};

pub fn s(x: &str) -> String {
    x.to_string()
}

pub fn a2(p: u32) -> Arc<Algebra> {
    let q = Quiver::new(vec![s("1"), s("2")], &[(s("a"), s("1"), s("2"))]).unwrap();
    Arc::new(Algebra::from_quiver(q, vec![], Fp::new(p).unwrap(), 8).unwrap())
}

pub fn truncated(p: u32, t: usize) -> Arc<Algebra> {
    let q = Quiver::new(vec![s("1")], &[(s("x"), s("1"), s("1"))]).unwrap();
    let rel = Relation::new(vec![(1, vec![s("x"); t])]);
    Arc::new(Algebra::from_quiver(q, vec![rel], Fp::new(p).unwrap(), t + 1).unwrap())
}

/// Group algebra from a multiplication table of group element indices.
pub fn group_algebra(p: u32, mult: &[Vec<usize>]) -> Algebra {
    let n = mult.len();
    let products: Vec<Vec<Vec<i64>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut v = vec![0; n];
                    v[mult[i][j]] = 1;
                    v
                })
                .collect()
        })
        .collect();
    let mut unit = vec![0; n];
    unit[0] = 1;
    let labels = (0..n).map(|i| format!("g{i}")).collect();
    Algebra::from_table(Fp::new(p).unwrap(), labels, &products, &unit, None).unwrap()
}

pub fn cyclic_group(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect()
}

pub fn klein_four() -> Vec<Vec<usize>> {
    (0..4).map(|i| (0..4).map(|j| i ^ j).collect()).collect()
}

/// S3 as permutations of {0,1,2}, composed as functions.
pub fn symmetric3() -> Vec<Vec<usize>> {
    let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
    let idx = |q: [usize; 3]| perms.iter().position(|x| *x == q).unwrap();
    perms
        .iter()
        .map(|a| perms.iter().map(|b| idx([a[b[0]], a[b[1]], a[b[2]]])).collect())
        .collect()
}

/// Matrix units `E_ij`, optionally only `i <= j`.
pub fn matrix_algebra(p: u32, n: usize, upper: bool) -> Algebra {
    let units: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|(i, j)| !upper || i <= j)
        .collect();
    let d = units.len();
    let products: Vec<Vec<Vec<i64>>> = units
        .iter()
        .map(|&(i, j)| {
            units
                .iter()
                .map(|&(k, l)| {
                    let mut v = vec![0; d];
                    if j == k {
                        v[units.iter().position(|&u| u == (i, l)).unwrap()] = 1;
                    }
                    v
                })
                .collect()
        })
        .collect();
    let unit: Vec<i64> = units.iter().map(|&(i, j)| (i == j) as i64).collect();
    let idempotents: Vec<Vec<i64>> = (0..n)
        .map(|k| units.iter().map(|&u| (u == (k, k)) as i64).collect())
        .collect();
    let labels = units.iter().map(|(i, j)| format!("E{i}{j}")).collect();
    Algebra::from_table(Fp::new(p).unwrap(), labels, &products, &unit, Some(&idempotents)).unwrap()
}

/// Indecomposables of `A_2`: P1, P2 (= S2), S1.
pub fn a2_indecomposables(a: &Arc<Algebra>) -> Vec<(String, Module)> {
    vec![
        (s("P1"), Module::projective(a.clone(), Side::Left, 0)),
        (s("P2"), Module::projective(a.clone(), Side::Left, 1)),
        (s("S1"), Module::simple(a.clone(), Side::Left, 0)),
    ]
}

/// Small corpus of left modules: indecomposables and their pairwise sums.
pub fn with_pairs(ind: Vec<(String, Module)>) -> Vec<(String, Module)> {
    let mut out = ind.clone();
    for i in 0..ind.len() {
        for j in i + 1..ind.len() {
            let m = Module::direct_sum(&[&ind[i].1, &ind[j].1]).unwrap();
            out.push((format!("{}⊕{}", ind[i].0, ind[j].0), m));
        }
    }
    out
}
