mod common;

use common::*;
use fdalg_core::catalog::{catalog_algebra, enumerate_modules, Bounds, Family};
use fdalg_core::homology::{ext, idim, idim_by_coresolution, pdim, tor, DimValue, Resolution};
use fdalg_core::module::{Module, Side};
use fdalg_core::Fp;

fn corpora() -> Vec<Vec<(String, Module)>> {
    let mut out = Vec::new();
    for p in [2u32, 3] {
        out.push(with_pairs(a2_indecomposables(&a2(p))));
        let k = truncated(p, 2);
        let reg = Module::regular(k.clone(), Side::Left);
        let s1 = Module::simple(k, Side::Left, 0);
        out.push(with_pairs(vec![(s("A"), reg), (s("S"), s1)]));
    }
    out
}

#[test]
fn ext_of_duals_over_the_opposite() {
    for corpus in corpora() {
        for (mn, m) in &corpus {
            for (nn, n) in &corpus {
                for i in 0..=4 {
                    let e = ext(m, n, i).unwrap();
                    assert_eq!(e, ext(&n.dual(), &m.dual(), i).unwrap(), "Ext^{i}({mn},{nn})");
                    assert_eq!(e, tor(&n.dual(), m, i).unwrap(), "Tor_{i}(D{nn},{mn})");
                }
            }
        }
    }
}

#[test]
fn pdim_is_idim_of_the_dual() {
    for corpus in corpora() {
        for (name, m) in &corpus {
            let pd = pdim(m, 8).unwrap();
            assert_eq!(pd, idim(&m.dual(), 8).unwrap(), "{name}");
            assert!(idim(m, 8).unwrap().compatible(idim_by_coresolution(m, 8).unwrap()), "{name}");
        }
    }
}

#[test]
fn minimal_and_generic_resolutions_agree() {
    for corpus in corpora() {
        for (_, m) in &corpus {
            let mut minimal = Resolution::new(m, true);
            let mut generic = Resolution::new(m, false);
            for (_, n) in &corpus {
                for i in 0..=3 {
                    assert_eq!(minimal.ext(n, i).unwrap(), generic.ext(n, i).unwrap());
                }
            }
        }
    }
}

#[test]
fn known_values() {
    let a = a2(2);
    let p2 = Module::projective(a.clone(), Side::Left, 1);
    let s1 = Module::simple(a.clone(), Side::Left, 0);
    assert_eq!(ext(&s1, &p2, 1).unwrap(), 1);
    assert_eq!(pdim(&s1, 8).unwrap(), DimValue::Exact(1));
    let k = truncated(3, 2);
    let sk = Module::simple(k, Side::Left, 0);
    for i in 0..=4 {
        assert_eq!(ext(&sk, &sk, i).unwrap(), 1);
    }
    assert_eq!(pdim(&sk, 8).unwrap(), DimValue::Infinite);
}

#[test]
fn nakayama_corpora() {
    let bounds = Bounds {
        max_dim: 5,
        max_summands: 2,
        specials: false,
    };
    for fam in [
        Family::Nakayama { kupisch: vec![2, 2, 1], cyclic: false },
        Family::Nakayama { kupisch: vec![3, 2], cyclic: true },
    ] {
        let cat = catalog_algebra(&fam, Fp::new(3).unwrap()).unwrap();
        let mods = enumerate_modules(&cat, bounds).unwrap();
        for (_, m) in mods.iter().take(12) {
            for (_, n) in mods.iter().take(12) {
                for i in 1..=3 {
                    let e = ext(m, n, i).unwrap();
                    assert_eq!(e, ext(&n.dual(), &m.dual(), i).unwrap());
                    assert_eq!(e, tor(&n.dual(), m, i).unwrap());
                }
            }
            assert_eq!(pdim(m, 12).unwrap(), idim(&m.dual(), 12).unwrap());
        }
    }
}
