//! Acceptance checks AC1 to AC8. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails or overruns its time budget.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use fdalg_core::approx::ApproxMethod;
use fdalg_core::catalog::{catalog_algebra, corpus, enumerate_modules, standard_families, Bounds, Family, Instance};
use fdalg_core::conjectures::{scan_pdim_bound, ConjectureStatus, ScanSummary};
use fdalg_core::correspondence::{
    classical_morita_check, double_centralizer, phi, quasi_generator_degree, verify_quasi_generator, verify_two_sided, QuasiValue,
    Verdict,
};
use fdalg_core::domdim::{domdim, greedy_domdim, Method};
use fdalg_core::homology::{ext, idim, pdim, tor, DimValue};
use fdalg_core::module::{in_add, is_projective, ring_injective_cogenerator, ring_regular, Module, Side};
use fdalg_core::{par, schema, Algebra, Fp, FpMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn family(f: &Family, p: u32) -> Arc<Algebra> {
    catalog_algebra(f, Fp::new(p).unwrap()).unwrap().algebra
}

fn a2(p: u32) -> Arc<Algebra> {
    family(&Family::LinearA { n: 2 }, p)
}

fn kx2(p: u32) -> Arc<Algebra> {
    family(&Family::Truncated { t: 2 }, p)
}

fn ac1() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut count = 0;
    for p in [2u32, 3, 5] {
        let f = Fp::new(p).unwrap();
        for k in 0..200 {
            let (r, c) = (rng.gen_range(1..=12), rng.gen_range(1..=12));
            let m = FpMatrix::from_fn(f, r, c, |_, _| rng.gen_range(0..p));
            let (red, piv) = m.rref();
            let (again, piv2) = red.rref();
            ensure(red == again && piv == piv2, || format!("GF({p}) #{k}: rref not idempotent"))?;
            let ker = m.kernel_basis();
            ensure(m.rank() + ker.cols() == c && m.mul(&ker).is_zero(), || {
                format!("GF({p}) #{k}: rank-nullity fails")
            })?;
            let x: Vec<u32> = (0..c).map(|_| rng.gen_range(0..p)).collect();
            let b = FpMatrix::column(f, &m.mul_vec(&x));
            let sol = m.solve(&b).unwrap().ok_or_else(|| format!("GF({p}) #{k}: consistent system unsolved"))?;
            ensure(m.mul(&sol) == b, || format!("GF({p}) #{k}: solution does not substitute"))?;
            count += 1;
        }
    }
    Ok(format!("{count} matrices over GF(2), GF(3), GF(5)"))
}

fn duality_corpus(a: &Arc<Algebra>) -> Vec<(String, Module)> {
    let r = a.idempotents().len();
    let mut base: Vec<(String, Module)> = Vec::new();
    for i in 0..r {
        base.push((format!("P{}", i + 1), Module::projective(a.clone(), Side::Left, i)));
        base.push((format!("S{}", i + 1), Module::simple(a.clone(), Side::Left, i)));
        base.push((format!("I{}", i + 1), Module::injective(a.clone(), Side::Left, i)));
    }
    let mut out = base.clone();
    for i in 0..base.len() {
        for j in i + 1..base.len() {
            let m = Module::direct_sum(&[&base[i].1, &base[j].1]).unwrap();
            out.push((format!("{}⊕{}", base[i].0, base[j].0), m));
        }
    }
    out
}

fn ac2() -> Outcome {
    let mut checks = 0;
    for p in [2u32, 3] {
        for (label, a) in [("A2", a2(p)), ("k[x]/x^2", kx2(p))] {
            let mods = duality_corpus(&a);
            for (mn, m) in &mods {
                for (nn, n) in &mods {
                    for i in 0..=4 {
                        let e = ext(m, n, i).unwrap();
                        let op = ext(&n.dual(), &m.dual(), i).unwrap();
                        let t = tor(&n.dual(), m, i).unwrap();
                        ensure(e == op && e == t, || {
                            format!("{label}/GF({p}) i={i} M={mn} N={nn}: Ext {e}, Ext_op {op}, Tor {t}")
                        })?;
                        checks += 2;
                    }
                }
                let pd = pdim(m, 8).unwrap();
                let id = idim(&m.dual(), 8).unwrap();
                ensure(pd == id, || format!("{label}/GF({p}) {mn}: pdim {pd} but idim of dual {id}"))?;
                checks += 1;
            }
        }
    }
    Ok(format!("{checks} exact identities"))
}

fn ac3() -> Outcome {
    let anchors = {
        let a = a2(2);
        let reg = ring_regular(&a);
        let p1 = Module::projective(a.clone(), Side::Left, 0);
        let t = Module::direct_sum(&[&p1, &Module::simple(a.clone(), Side::Left, 0)]).unwrap();
        let k = kx2(2);
        let kreg = ring_regular(&k);
        let q = Module::direct_sum(&[&kreg, &Module::simple(k, Side::Left, 0)]).unwrap();
        vec![
            ("A2, Q=P1, M=A", p1, reg.clone(), DimValue::Exact(1)),
            ("A2, Q=P1⊕S1, M=A", t, reg, DimValue::Infinite),
            ("k[x]/x^2, Q=A⊕S, M=A", q, kreg, DimValue::Infinite),
        ]
    };
    for (name, q, m, want) in &anchors {
        let r = domdim(q, m, 16, Method::Both, ApproxMethod::Reduced).unwrap();
        ensure(r.value == *want && r.agree, || format!("{name}: got {} (agree {})", r.value, r.agree))?;
    }
    let families = [
        Family::LinearA { n: 2 },
        Family::LinearA { n: 3 },
        Family::Truncated { t: 2 },
        Family::Truncated { t: 3 },
        Family::Nakayama { kupisch: vec![2, 2, 1], cyclic: false },
        Family::Nakayama { kupisch: vec![2, 2], cyclic: true },
    ];
    let mut triples = Vec::new();
    for fam in &families {
        for p in [2u32, 3] {
            let cat = catalog_algebra(fam, Fp::new(p).unwrap()).unwrap();
            let mods = enumerate_modules(&cat, Bounds { max_dim: 6, max_summands: 2, specials: true }).unwrap();
            for (qn, q) in &mods {
                for (mn, m) in mods.iter().step_by(3) {
                    triples.push((format!("{}: Q={qn} M={mn}", cat.name), q.clone(), m.clone()));
                }
            }
        }
    }
    let results = par::map(&triples, |(name, q, m)| {
        let r = domdim(q, m, 16, Method::Both, ApproxMethod::Reduced).unwrap();
        (name.clone(), r.agree, matches!(r.criterion, Some(Some(_))))
    });
    let applicable = results.iter().filter(|r| r.2).count();
    if let Some((name, _, _)) = results.iter().find(|r| !r.1) {
        return Err(format!("greedy and criterion disagree on {name}"));
    }
    ensure(triples.len() >= 50, || format!("only {} triples", triples.len()))?;
    Ok(format!(
        "{} triples ({} with the criterion applicable) plus 3 anchors",
        triples.len(),
        applicable
    ))
}

fn ac4() -> Outcome {
    let a = a2(3);
    let p1 = Module::projective(a.clone(), Side::Left, 0);
    let t = Module::direct_sum(&[&p1, &Module::simple(a.clone(), Side::Left, 0)]).unwrap();
    let q = quasi_generator_degree(&t, 16).unwrap().value;
    ensure(q == QuasiValue::Degree(1), || format!("degree of T is {q}"))?;
    let image = phi(&t).unwrap();
    ensure(image.algebra.dim() == 3, || format!("End(T) has dim {}", image.algebra.dim()))?;
    let pd = pdim(&image.module, 16).unwrap();
    ensure(pd == DimValue::Exact(1), || format!("pdim over End(T) is {pd}"))?;
    let (dd, _) = greedy_domdim(&image.module, &ring_regular(&image.algebra), 2, ApproxMethod::Reduced).unwrap();
    ensure(dd.lower_bound() >= 2, || format!("domdim {dd}"))?;
    let t1 = tor(&image.module.dual(), &image.module, 1).unwrap();
    ensure(t1 == 0, || format!("Tor_1(DT,T) = {t1}"))?;
    ensure(double_centralizer(&t).unwrap().holds, || "double centralizer over A2".into())?;
    ensure(double_centralizer(&image.module).unwrap().holds, || "double centralizer over End(T)".into())?;
    let r = verify_quasi_generator(&t, 1, 16).unwrap();
    ensure(r.verdict == Verdict::Pass, || format!("verify on T: {:?}", r.verdict))?;

    let k = kx2(3);
    let m = Module::direct_sum(&[&ring_regular(&k), &Module::simple(k.clone(), Side::Left, 0)]).unwrap();
    let q = quasi_generator_degree(&m, 16).unwrap().value;
    ensure(q == QuasiValue::Degree(0), || format!("degree of A⊕S is {q}"))?;
    let image = phi(&m).unwrap();
    ensure(image.algebra.dim() == 5, || format!("End(A⊕S) has dim {}", image.algebra.dim()))?;
    ensure(is_projective(&image.module), || "A⊕S is not projective over its End".into())?;
    let r = verify_quasi_generator(&m, 0, 16).unwrap();
    ensure(r.verdict == Verdict::Pass, || format!("verify on A⊕S: {:?}", r.verdict))?;
    Ok("T: degree 1, End dim 3, pdim 1; A⊕S: degree 0, End dim 5, projective".into())
}

fn ac5() -> Outcome {
    let a = a2(2);
    for (name, m, n, md) in [("DA", ring_injective_cogenerator(&a), 1, 0), ("A", ring_regular(&a), 0, 1)] {
        let r = verify_two_sided(&m, n, md, 16).unwrap();
        ensure(r.verdict == Verdict::Pass, || format!("{name}: {:?} {:?}", r.verdict, r.checks))?;
        let image = phi(&m).unwrap();
        let pd = pdim(&image.module, 16).unwrap();
        let id = idim(&image.module, 16).unwrap();
        ensure(pd == DimValue::Exact(n) && id == DimValue::Exact(md), || {
            format!("{name}: Φ-image has (pdim, idim) = ({pd}, {id})")
        })?;
    }
    Ok("DA certifies (1,0), A certifies (0,1)".into())
}

fn full_corpus() -> Vec<Instance> {
    corpus(&standard_families(10), &[2, 3], Bounds::default()).unwrap()
}

fn ac6(instances: &[Instance]) -> Outcome {
    let results = par::map(instances, |(alg, name, m)| -> Result<bool, String> {
        let generator = in_add(&ring_regular(m.ring()), m).unwrap();
        let morita = classical_morita_check(m).unwrap();
        ensure(morita.consistent, || format!("{alg} / {name}: Morita check inconsistent {morita:?}"))?;
        if generator {
            let (v, _) = greedy_domdim(m, &ring_regular(m.ring()), 16, ApproxMethod::Reduced).unwrap();
            ensure(v == DimValue::Infinite, || format!("{alg} / {name}: domdim {v}"))?;
            ensure(morita.projective_over_end && morita.double_centralizer, || {
                format!("{alg} / {name}: generator fails Morita {morita:?}")
            })?;
        }
        Ok(generator)
    });
    let mut generators = 0;
    for r in results {
        generators += r? as usize;
    }
    Ok(format!("{generators} generators among {} corpus modules", instances.len()))
}

fn ac7(instances: &[Instance]) -> Outcome {
    let verdicts = scan_pdim_bound(instances, 16).unwrap();
    let s = ScanSummary::of(&verdicts);
    for v in &verdicts {
        if let ConjectureStatus::Uncertified(why) = &v.status {
            println!("    uncertified: {} / {}: {why}", v.algebra, v.module);
        }
        if let ConjectureStatus::Counterexample(why) = &v.status {
            println!("    counterexample: {} / {}: {why}", v.algebra, v.module);
        }
    }
    ensure(s.counterexamples == 0, || format!("{} counterexamples", s.counterexamples))?;
    Ok(format!(
        "{} instances: {} confirmed, {} not applicable, {} uncertified, 0 counterexamples",
        s.total, s.confirmed, s.not_applicable, s.uncertified
    ))
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn cli(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_fdalg")).args(args).output().unwrap();
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn ac8() -> Outcome {
    let f = |n: &str| fixture(n).display().to_string();
    let tmp = std::env::temp_dir().join(format!("fdalg-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&tmp).unwrap();
    let img = tmp.join("phi.json").display().to_string();
    let back = tmp.join("psi.json").display().to_string();

    let verdict = |path: &str| cli(&["--json", "verify", path, "--thm", "33", "--n", "1"]);
    let (c0, before) = verdict(&f("a2_t.json"));
    let (c1, _) = cli(&["phi", &f("a2_t.json"), "--write", &img]);
    let (c2, _) = cli(&["psi", &img, "--write", &back]);
    let (c3, after) = verdict(&back);
    let field = |text: &str, key: &str| serde_json::from_str::<serde_json::Value>(text).unwrap()["results"][key].clone();
    ensure(c0 == 0 && c1 == 0 && c2 == 0 && c3 == 0, || "round trip commands failed".into())?;
    ensure(field(&before, "verdict") == field(&after, "verdict"), || "verdict changed after Φ, Ψ".into())?;
    let (_, pd) = cli(&["pdim", &img]);
    ensure(pd.trim() == "pdim = 1", || format!("Φ-image: {pd}"))?;

    let mut fixpoints = 0;
    for entry in std::fs::read_dir(fixture("")).unwrap() {
        let path = entry.unwrap().path();
        let name = path.file_name().unwrap().to_string_lossy().into_owned();
        if name.starts_with("bad_") {
            continue;
        }
        let text = std::fs::read_to_string(&path).unwrap();
        let is_algebra = serde_json::from_str::<serde_json::Value>(&text).unwrap()["kind"].is_string();
        let ok = if is_algebra {
            let a = schema::load_algebra(&path).unwrap();
            let once = schema::to_json(&schema::algebra_spec(&a));
            let b = schema::parse_algebra(&once, &name).unwrap();
            *a == *b && once == schema::to_json(&schema::algebra_spec(&b))
        } else {
            let m = schema::load_module(&path).unwrap();
            let once = schema::to_json(&schema::module_spec(&m));
            let m2 = schema::parse_module(&once, &name, Path::new(".")).unwrap();
            once == schema::to_json(&schema::module_spec(&m2))
        };
        ensure(ok, || format!("{name} is not a serialize/parse fixpoint"))?;
        fixpoints += 1;
    }

    let codes = [
        (cli(&["pdim", &f("a2_s1.json")]).0, 0),
        (cli(&["verify", &f("a2_t.json"), "--thm", "33", "--n", "0"]).0, 1),
        (cli(&["pdim", &f("kx2_s.json"), "--cap", "1"]).0, 2),
        (cli(&["check-algebra", &f("bad_syntax.json")]).0, 3),
    ];
    for (got, want) in codes {
        ensure(got == want, || format!("expected exit {want}, got {got}"))?;
    }
    let _ = std::fs::remove_dir_all(&tmp);
    Ok(format!("Φ/Ψ round trip, {fixpoints} fixture fixpoints, exit codes 0/1/2/3"))
}

fn main() {
    let mut failed = 0;
    let mut run = |id: &str, what: &str, budget: Option<Duration>, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let outcome = f();
        let took = start.elapsed();
        let over = budget.is_some_and(|b| took > b);
        let budget_text = budget.map_or(String::new(), |b| format!(", budget {:.0} s", b.as_secs_f64()));
        let (mark, detail) = match (&outcome, over) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("{d}; over time budget")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if mark == "FAIL" {
            failed += 1;
        }
        println!("{id} {mark} [{:.2} s{budget_text}] {what}: {detail}", took.as_secs_f64());
    };
    let secs = |s| Some(Duration::from_secs(s));
    run("AC1", "linear algebra oracle", secs(5), &mut ac1);
    run("AC2", "duality suite", secs(30), &mut ac2);
    run("AC3", "domdim differential oracle", secs(60), &mut ac3);
    run("AC4", "quasi-generator round trip", None, &mut ac4);
    run("AC5", "two-sided degrees", None, &mut ac5);
    let instances = full_corpus();
    run("AC6", "generator law", None, &mut || ac6(&instances));
    run("AC7", "conjecture scan over the full corpus", secs(300), &mut || ac7(&instances));
    run("AC8", "CLI round trip and exit codes", None, &mut ac8);
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
