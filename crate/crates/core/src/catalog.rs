//! Small families of algebras with their indecomposable modules, and the
//! corpus built from them.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, Quiver, Relation};
use crate::error::{AlgebraError, ModuleError};
use crate::field::Fp;
use crate::matrix::{FpMatrix, Span};
use crate::module::{in_add, ring_injective_cogenerator, ring_regular, Module, Side};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum Family {
    /// Path algebra of `1 → 2 → … → n`.
    LinearA { n: usize },
    /// Nakayama algebra with Kupisch series `c_i = length of P_i`.
    Nakayama { kupisch: Vec<usize>, cyclic: bool },
    /// `k[x]/(x^t)`.
    Truncated { t: usize },
    /// An algebra read from a file.
    Custom { name: String },
}

impl Family {
    pub fn name(&self) -> String {
        match self {
            Family::LinearA { n } => format!("A{n}"),
            Family::Nakayama { kupisch, cyclic } => {
                let c: Vec<String> = kupisch.iter().map(|c| c.to_string()).collect();
                format!("nakayama-{}({})", if *cyclic { "cyc" } else { "lin" }, c.join(","))
            }
            Family::Truncated { t } => format!("k[x]/x^{t}"),
            Family::Custom { name } => name.clone(),
        }
    }

    /// The Kupisch series of the family, which determines it.
    pub fn kupisch(&self) -> (Vec<usize>, bool) {
        match self {
            Family::LinearA { n } => ((1..=*n).rev().collect(), false),
            Family::Nakayama { kupisch, cyclic } => (kupisch.clone(), *cyclic),
            Family::Truncated { t } => (vec![*t], *t > 1),
            Family::Custom { .. } => (Vec::new(), false),
        }
    }
}

/// Checks the admissibility conditions on a Kupisch series.
pub fn validate_kupisch(c: &[usize], cyclic: bool) -> Result<(), AlgebraError> {
    let bad = |msg: String| AlgebraError::BadKupisch(format!("{c:?}: {msg}"));
    let n = c.len();
    if n == 0 {
        return Err(bad("empty".into()));
    }
    if cyclic {
        if c.iter().any(|&x| x < 2) {
            return Err(bad("a cyclic series needs every entry ≥ 2".into()));
        }
        for i in 0..n {
            if c[(i + 1) % n] + 1 < c[i] {
                return Err(bad(format!("entry {} drops by more than one", i + 2)));
            }
        }
    } else {
        if c[n - 1] != 1 {
            return Err(bad("the last entry of a linear series must be 1".into()));
        }
        for i in 0..n - 1 {
            if c[i] < 2 {
                return Err(bad(format!("entry {} must be ≥ 2", i + 1)));
            }
            if c[i] > n - i {
                return Err(bad(format!("entry {} exceeds the longest path", i + 1)));
            }
            if c[i + 1] + 1 < c[i] {
                return Err(bad(format!("entry {} drops by more than one", i + 2)));
            }
        }
    }
    Ok(())
}

/// Builds the algebra of a Kupisch series: vertices `1..n`, arrows
/// `a1: 1 → 2, …` (plus `an: n → 1` when cyclic), and the path of length
/// `c_i` from each vertex `i` set to zero.
pub fn nakayama(c: &[usize], cyclic: bool, field: Fp) -> Result<Algebra, AlgebraError> {
    validate_kupisch(c, cyclic)?;
    let n = c.len();
    let vertices: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let arrow_count = if cyclic { n } else { n - 1 };
    let arrows: Vec<(String, String, String)> = (0..arrow_count)
        .map(|i| (format!("a{}", i + 1), vertices[i].clone(), vertices[(i + 1) % n].clone()))
        .collect();
    let quiver = Quiver::new(vertices, &arrows)?;
    let mut relations = Vec::new();
    for (i, &ci) in c.iter().enumerate() {
        if !cyclic && i + ci >= n {
            continue;
        }
        let path: Vec<String> = (0..ci).map(|k| format!("a{}", (i + k) % n + 1)).collect();
        relations.push(Relation::new(vec![(1, path)]));
    }
    let bound = c.iter().max().copied().unwrap_or(1) + 1;
    Algebra::from_quiver(quiver, relations, field, bound)
}

pub fn build_algebra(family: &Family, field: Fp) -> Result<Arc<Algebra>, AlgebraError> {
    if let Family::Truncated { t } = family {
        if *t == 0 {
            return Err(AlgebraError::Malformed("k[x]/x^0 is the zero ring".into()));
        }
        if *t == 1 {
            let q = Quiver::new(vec!["1".into()], &[])?;
            return Ok(Arc::new(Algebra::from_quiver(q, vec![], field, 2)?));
        }
        let q = Quiver::new(vec!["1".into()], &[("x".into(), "1".into(), "1".into())])?;
        let rel = Relation::new(vec![(1, vec!["x".to_string(); *t])]);
        return Ok(Arc::new(Algebra::from_quiver(q, vec![rel], field, t + 1)?));
    }
    if let Family::Custom { name } = family {
        return Err(AlgebraError::Malformed(format!("`{name}` must be loaded from its file")));
    }
    let (c, cyclic) = family.kupisch();
    Ok(Arc::new(nakayama(&c, cyclic, field)?))
}

/// Basis of `J^k M` as columns.
pub fn radical_power_basis(m: &Module, k: usize) -> FpMatrix {
    let f = m.field();
    let rad = m.ring().radical().basis.clone();
    let acts: Vec<FpMatrix> = (0..rad.cols()).map(|c| m.act(&rad.col_vec(c))).collect();
    let id = FpMatrix::identity(f, m.dim());
    let mut cur: Vec<Vec<u32>> = (0..m.dim()).map(|c| id.col_vec(c)).collect();
    for _ in 0..k {
        let mut span = Span::new(f, m.dim());
        for a in &acts {
            for v in &cur {
                span.insert(&a.mul_vec(v));
            }
        }
        cur = span.basis().to_vec();
    }
    FpMatrix::from_columns(f, m.dim(), &cur)
}

/// The uniserial module `P_i / J^k P_i`.
pub fn uniserial(a: &Arc<Algebra>, side: Side, i: usize, k: usize) -> Result<Module, ModuleError> {
    let p = Module::projective(a.clone(), side, i);
    let sub = radical_power_basis(&p, k);
    Ok(p.quotient(&sub)?.0)
}

#[derive(Clone, Debug)]
pub struct CatalogAlgebra {
    pub family: Family,
    pub name: String,
    pub algebra: Arc<Algebra>,
    /// All indecomposable left modules, named `M(i,k)` for `P_i / J^k P_i`.
    pub indecomposables: Vec<(String, Module)>,
}

/// Every indecomposable over a Nakayama algebra is uniserial.
pub fn catalog_algebra(family: &Family, field: Fp) -> Result<CatalogAlgebra, ModuleError> {
    let algebra = build_algebra(family, field)?;
    let (c, _) = family.kupisch();
    let mut indecomposables = Vec::new();
    for (i, &ci) in c.iter().enumerate() {
        for k in 1..=ci {
            let m = uniserial(&algebra, Side::Left, i, k)?;
            indecomposables.push((format!("M({},{})", i + 1, k), m));
        }
    }
    Ok(CatalogAlgebra {
        name: format!("{} over GF({})", family.name(), field.modulus()),
        family: family.clone(),
        algebra,
        indecomposables,
    })
}

/// Catalog entry for an arbitrary algebra: its indecomposable projectives,
/// injectives and simples, without repeats.
pub fn custom_catalog(name: &str, algebra: Arc<Algebra>) -> Result<CatalogAlgebra, ModuleError> {
    let r = algebra.idempotents().len();
    let mut indecomposables: Vec<(String, Module)> = Vec::new();
    for j in 0..r {
        let candidates = [
            (format!("P{}", j + 1), Module::projective(algebra.clone(), Side::Left, j)),
            (format!("I{}", j + 1), Module::injective(algebra.clone(), Side::Left, j)),
            (format!("S{}", j + 1), Module::simple(algebra.clone(), Side::Left, j)),
        ];
        for (n, m) in candidates {
            let mut seen = false;
            for (_, x) in &indecomposables {
                if x.dim() == m.dim() && in_add(x, &m)? && in_add(&m, x)? {
                    seen = true;
                    break;
                }
            }
            if !seen {
                indecomposables.push((n, m));
            }
        }
    }
    Ok(CatalogAlgebra {
        family: Family::Custom { name: name.to_string() },
        name: format!("{name} over GF({})", algebra.p()),
        algebra,
        indecomposables,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    /// Largest total dimension of an enumerated direct sum.
    pub max_dim: usize,
    /// Largest number of distinct indecomposable summands.
    pub max_summands: usize,
    /// Add `A`, `DA` and `A ⊕ DA` regardless of the dimension bound.
    pub specials: bool,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_dim: 12,
            max_summands: 2,
            specials: true,
        }
    }
}

/// Direct sums of distinct indecomposables within `bounds`, then the specials.
pub fn enumerate_modules(cat: &CatalogAlgebra, bounds: Bounds) -> Result<Vec<(String, Module)>, ModuleError> {
    let mut out = Vec::new();
    if bounds.max_dim == 0 || bounds.max_summands == 0 {
        return Ok(out);
    }
    let ind = &cat.indecomposables;
    let mut stack: Vec<(Vec<usize>, usize)> = (0..ind.len()).map(|i| (vec![i], ind[i].1.dim())).collect();
    stack.reverse();
    let mut picks: Vec<Vec<usize>> = Vec::new();
    while let Some((pick, dim)) = stack.pop() {
        if dim > bounds.max_dim {
            continue;
        }
        picks.push(pick.clone());
        if pick.len() < bounds.max_summands {
            let last = *pick.last().unwrap();
            for j in (last + 1..ind.len()).rev() {
                let mut next = pick.clone();
                next.push(j);
                stack.push((next, dim + ind[j].1.dim()));
            }
        }
    }
    picks.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    for pick in picks {
        let parts: Vec<&Module> = pick.iter().map(|&i| &ind[i].1).collect();
        let name: Vec<&str> = pick.iter().map(|&i| ind[i].0.as_str()).collect();
        out.push((name.join("⊕"), Module::direct_sum(&parts)?));
    }
    if bounds.specials {
        let a = ring_regular(&cat.algebra);
        let da = ring_injective_cogenerator(&cat.algebra);
        let both = Module::direct_sum(&[&a, &da])?;
        out.push(("A".to_string(), a));
        out.push(("DA".to_string(), da));
        out.push(("A⊕DA".to_string(), both));
    }
    Ok(out)
}

/// Linear Kupisch series of total dimension at most `max_dim` that are not
/// hereditary, and cyclic ones up to rotation.
pub fn nakayama_series(max_dim: usize) -> Vec<Family> {
    let mut out = BTreeSet::new();
    for n in 2..=max_dim {
        let mut cur = Vec::new();
        series(n, max_dim, &mut cur, &mut out);
    }
    out.into_iter().collect()
}

fn series(n: usize, budget: usize, cur: &mut Vec<usize>, out: &mut BTreeSet<Family>) {
    if cur.len() == n {
        for cyclic in [false, true] {
            if validate_kupisch(cur, cyclic).is_err() {
                continue;
            }
            let hereditary = !cyclic && cur.iter().enumerate().all(|(i, &c)| c == n - i);
            if hereditary {
                continue;
            }
            let kupisch = if cyclic { min_rotation(cur) } else { cur.clone() };
            out.insert(Family::Nakayama { kupisch, cyclic });
        }
        return;
    }
    let used: usize = cur.iter().sum();
    let remaining = n - cur.len();
    for c in 1..=budget {
        if used + c + (remaining - 1) > budget {
            break;
        }
        cur.push(c);
        series(n, budget, cur, out);
        cur.pop();
    }
}

fn min_rotation(c: &[usize]) -> Vec<usize> {
    (0..c.len())
        .map(|r| c[r..].iter().chain(&c[..r]).copied().collect::<Vec<_>>())
        .min()
        .unwrap()
}

/// `A_n` for `n <= 4`, non-hereditary Nakayama algebras of dimension at most
/// `nakayama_dim`, and `k[x]/x^t` for `t <= 4`.
pub fn standard_families(nakayama_dim: usize) -> Vec<Family> {
    let mut out: Vec<Family> = (1..=4).map(|n| Family::LinearA { n }).collect();
    out.extend((2..=4).map(|t| Family::Truncated { t }));
    out.extend(
        nakayama_series(nakayama_dim)
            .into_iter()
            .filter(|f| !matches!(f, Family::Nakayama { kupisch, cyclic: true } if kupisch.len() == 1)),
    );
    out
}

/// One corpus entry: algebra name, module name, module.
pub type Instance = (String, String, Module);

pub fn corpus(families: &[Family], primes: &[u32], bounds: Bounds) -> Result<Vec<Instance>, ModuleError> {
    let mut out = Vec::new();
    for &p in primes {
        let f = Fp::new(p)?;
        for fam in families {
            let cat = catalog_algebra(fam, f)?;
            for (name, m) in enumerate_modules(&cat, bounds)? {
                out.push((cat.name.clone(), name, m));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kupisch_validation() {
        assert!(validate_kupisch(&[3, 2, 1], false).is_ok());
        assert!(validate_kupisch(&[2, 2, 1], false).is_ok());
        assert!(validate_kupisch(&[3, 1, 1], false).is_err());
        assert!(validate_kupisch(&[2, 3], false).is_err());
        assert!(validate_kupisch(&[2, 2], true).is_ok());
        assert!(validate_kupisch(&[4, 2], true).is_err());
        assert!(validate_kupisch(&[], true).is_err());
    }

    #[test]
    fn dimensions() {
        let f = Fp::new(2).unwrap();
        let a = nakayama(&[2, 2, 1], false, f).unwrap();
        assert_eq!(a.dim(), 5);
        let c = nakayama(&[3, 2], true, f).unwrap();
        assert_eq!(c.dim(), 5);
        let t = build_algebra(&Family::Truncated { t: 3 }, f).unwrap();
        assert_eq!(t.dim(), 3);
        let a4 = build_algebra(&Family::LinearA { n: 4 }, f).unwrap();
        assert_eq!(a4.dim(), 10);
    }

    #[test]
    fn uniserials_are_distinct_and_projectives_appear() {
        let f = Fp::new(3).unwrap();
        let cat = catalog_algebra(&Family::Nakayama { kupisch: vec![3, 2, 2], cyclic: true }, f).unwrap();
        assert_eq!(cat.indecomposables.len(), 7);
        for (i, (_, m)) in cat.indecomposables.iter().enumerate() {
            for (j, (_, n)) in cat.indecomposables.iter().enumerate() {
                assert_eq!(i == j, in_add(m, n).unwrap(), "{i} {j}");
            }
        }
        let reg = ring_regular(&cat.algebra);
        let top: Vec<&Module> = vec![&cat.indecomposables[2].1, &cat.indecomposables[4].1, &cat.indecomposables[6].1];
        assert!(in_add(&reg, &Module::direct_sum(&top).unwrap()).unwrap());
    }

    #[test]
    fn enumeration_respects_bounds() {
        let f = Fp::new(2).unwrap();
        let cat = catalog_algebra(&Family::LinearA { n: 2 }, f).unwrap();
        let none = Bounds {
            max_dim: 0,
            max_summands: 2,
            specials: true,
        };
        assert!(enumerate_modules(&cat, none).unwrap().is_empty());
        let b = Bounds {
            max_dim: 3,
            max_summands: 2,
            specials: false,
        };
        let mods = enumerate_modules(&cat, b).unwrap();
        // three indecomposables, pairs of total dimension ≤ 3
        assert_eq!(mods.len(), 3 + 3);
        assert!(mods.iter().all(|(_, m)| m.dim() <= 3));
    }

    #[test]
    fn custom_catalog_dedupes() {
        let f = Fp::new(2).unwrap();
        let a = build_algebra(&Family::LinearA { n: 2 }, f).unwrap();
        let cat = custom_catalog("A2", a).unwrap();
        // P1 = I2, P2 = S2, I1 = S1
        let names: Vec<&str> = cat.indecomposables.iter().map(|(n, _)| n.as_str()).collect();
        assert_eq!(names, ["P1", "I1", "P2"]);
    }

    #[test]
    fn series_enumeration() {
        let s = nakayama_series(5);
        assert!(s.contains(&Family::Nakayama { kupisch: vec![2, 2, 1], cyclic: false }));
        assert!(s.contains(&Family::Nakayama { kupisch: vec![2, 3], cyclic: true }));
        assert!(!s.contains(&Family::Nakayama { kupisch: vec![3, 2], cyclic: true }));
        assert!(!s.contains(&Family::Nakayama { kupisch: vec![2, 1], cyclic: false }));
    }
}
