mod common;

use common::*;
use fdalg_core::approx::{is_left_approximation, left_approximation, ApproxMethod};
use fdalg_core::catalog::{catalog_algebra, enumerate_modules, Bounds, Family};
use fdalg_core::domdim::{criterion_agrees, domdim, greedy_domdim, Method};
use fdalg_core::homology::DimValue;
use fdalg_core::module::{in_add, ring_regular, Module, Side};
use fdalg_core::Fp;
use proptest::prelude::*;

#[test]
fn anchors() {
    let a = a2(2);
    let reg = Module::regular(a.clone(), Side::Left);
    let p1 = Module::projective(a.clone(), Side::Left, 0);
    let s1 = Module::simple(a.clone(), Side::Left, 0);
    let t = Module::direct_sum(&[&p1, &s1]).unwrap();
    let r = domdim(&p1, &reg, 16, Method::Both, ApproxMethod::Reduced).unwrap();
    assert_eq!(r.value, DimValue::Exact(1));
    assert!(r.agree);
    let r = domdim(&t, &reg, 16, Method::Both, ApproxMethod::Reduced).unwrap();
    assert_eq!(r.value, DimValue::Infinite);
    assert!(r.agree);
    let k = truncated(2, 2);
    let kreg = Module::regular(k.clone(), Side::Left);
    let q = Module::direct_sum(&[&kreg, &Module::simple(k, Side::Left, 0)]).unwrap();
    let r = domdim(&q, &kreg, 16, Method::Both, ApproxMethod::Reduced).unwrap();
    assert_eq!(r.value, DimValue::Infinite);
    assert!(r.agree);
}

fn triples() -> Vec<(String, Module, Module)> {
    let mut out = Vec::new();
    let bounds = Bounds {
        max_dim: 6,
        max_summands: 2,
        specials: true,
    };
    for fam in [
        Family::LinearA { n: 2 },
        Family::LinearA { n: 3 },
        Family::Truncated { t: 2 },
        Family::Truncated { t: 3 },
        Family::Nakayama { kupisch: vec![2, 2, 1], cyclic: false },
        Family::Nakayama { kupisch: vec![2, 2], cyclic: true },
    ] {
        let cat = catalog_algebra(&fam, Fp::new(2).unwrap()).unwrap();
        let mods = enumerate_modules(&cat, bounds).unwrap();
        let reg = ring_regular(&cat.algebra);
        for (qn, q) in &mods {
            out.push((format!("{} Q={qn} M=A", cat.name), q.clone(), reg.clone()));
        }
        for (qn, q) in mods.iter().take(6) {
            for (mn, m) in mods.iter().take(6) {
                out.push((format!("{} Q={qn} M={mn}", cat.name), q.clone(), m.clone()));
            }
        }
    }
    out
}

#[test]
fn greedy_and_criterion_agree_on_corpus() {
    let triples = triples();
    assert!(triples.len() >= 50);
    let mut applicable = 0;
    for (name, q, m) in &triples {
        let r = domdim(q, m, 16, Method::Both, ApproxMethod::Reduced).unwrap();
        assert!(r.agree, "{name}: greedy {:?} criterion {:?}", r.greedy, r.criterion);
        if matches!(r.criterion, Some(Some(_))) {
            applicable += 1;
        }
    }
    assert!(applicable > 10);
}

#[test]
fn universal_and_reduced_agree() {
    for (name, q, m) in triples().iter().take(60) {
        let (u, _) = greedy_domdim(q, m, 6, ApproxMethod::Universal).unwrap();
        let (r, _) = greedy_domdim(q, m, 6, ApproxMethod::Reduced).unwrap();
        assert!(u.compatible(r), "{name}: {u:?} vs {r:?}");
    }
}

#[test]
fn approximations_have_the_factorization_property() {
    for (_, q, m) in triples().iter().take(80) {
        for method in [ApproxMethod::Universal, ApproxMethod::Reduced] {
            let step = left_approximation(m, q, method).unwrap();
            assert!(is_left_approximation(m, q, &step).unwrap());
            assert!(in_add(&step.target, q).unwrap());
        }
    }
}

#[test]
fn modules_in_add_q_have_infinite_domdim() {
    let mut seen = 0;
    for (name, q, m) in triples() {
        if in_add(&m, &q).unwrap() {
            seen += 1;
            let (v, _) = greedy_domdim(&q, &m, 16, ApproxMethod::Reduced).unwrap();
            assert_eq!(v, DimValue::Infinite, "{name}");
        }
    }
    assert!(seen > 5);
}

fn kupisch() -> impl Strategy<Value = (Vec<usize>, bool)> {
    (2usize..=4, any::<bool>(), prop::collection::vec(0usize..3, 4)).prop_filter_map("valid series", |(n, cyclic, raw)| {
        let mut c = vec![0; n];
        if cyclic {
            for i in 0..n {
                c[i] = 2 + raw[i];
            }
        } else {
            c[n - 1] = 1;
            for i in (0..n - 1).rev() {
                c[i] = (c[i + 1] + 1).min(2 + raw[i]).min(n - i).max(2);
            }
        }
        fdalg_core::catalog::validate_kupisch(&c, cyclic).ok().map(|_| (c, cyclic))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn random_nakayama_routes_agree((c, cyclic) in kupisch(), qi in 0usize..64, mi in 0usize..64) {
        let cat = catalog_algebra(&Family::Nakayama { kupisch: c, cyclic }, Fp::new(3).unwrap()).unwrap();
        let mods = enumerate_modules(&cat, Bounds { max_dim: 8, max_summands: 2, specials: true }).unwrap();
        let q = &mods[qi % mods.len()].1;
        let m = &mods[mi % mods.len()].1;
        let r = domdim(q, m, 12, Method::Both, ApproxMethod::Reduced).unwrap();
        prop_assert!(r.agree);
        prop_assert!(criterion_agrees(r.greedy.unwrap(), r.criterion.unwrap()));
    }
}
