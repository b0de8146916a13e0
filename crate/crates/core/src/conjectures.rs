//! Tilting tests and conjecture probes over single modules and corpora.

use serde::{Deserialize, Serialize};

use crate::approx::ApproxMethod;
use crate::correspondence::{quasi_generator_degree, QuasiValue};
use crate::domdim::greedy_domdim;
use crate::error::ModuleError;
use crate::homology::{idim, is_self_orthogonal, pdim, Certified, DimValue};
use crate::module::{ring_injective_cogenerator, ring_regular, Module};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TiltingVerdict {
    pub pdim: DimValue,
    pub self_orthogonal: Certified,
    pub quasi_degree: QuasiValue,
    /// `max(pdim, quasi-generator degree)` when tilting.
    pub n: Option<usize>,
    pub value: bool,
    pub certified: bool,
}

/// Finite projective dimension, self-orthogonal, and a finite
/// `add T`-coresolution of the regular module.
pub fn is_tilting(t: &Module, cap: usize) -> Result<TiltingVerdict, ModuleError> {
    let pd = pdim(t, cap)?;
    let so = is_self_orthogonal(t, cap)?;
    let qd = quasi_generator_degree(t, cap)?.value;
    let failed = pd == DimValue::Infinite || (so.certified && !so.value) || qd == QuasiValue::NotQuasi;
    let (value, certified, n) = if failed {
        (false, true, None)
    } else {
        match (pd.exact(), so.certified && so.value, qd.degree()) {
            (Some(p), true, Some(d)) => (true, true, Some(p.max(d))),
            _ => (false, false, None),
        }
    };
    Ok(TiltingVerdict {
        pdim: pd,
        self_orthogonal: so,
        quasi_degree: qd,
        n,
        value,
        certified,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "reason", rename_all = "snake_case")]
pub enum ConjectureStatus {
    /// Self-orthogonal n-quasi-generator with `pdim <= n`.
    Confirmed,
    NotApplicable(String),
    Uncertified(String),
    /// Self-orthogonal n-quasi-generator with `pdim > n`.
    Counterexample(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureVerdict {
    pub algebra: String,
    pub module: String,
    pub self_orthogonal: Certified,
    pub quasi_degree: QuasiValue,
    pub pdim: DimValue,
    pub status: ConjectureStatus,
}

/// Does a self-orthogonal n-quasi-generator have projective dimension at most n?
pub fn pdim_bound(algebra: &str, name: &str, m: &Module, cap: usize) -> Result<ConjectureVerdict, ModuleError> {
    let so = is_self_orthogonal(m, cap)?;
    let qd = quasi_generator_degree(m, cap)?.value;
    let pd = pdim(m, cap)?;
    let status = if so.certified && !so.value {
        ConjectureStatus::NotApplicable("not self-orthogonal".into())
    } else if qd == QuasiValue::NotQuasi {
        ConjectureStatus::NotApplicable("not a quasi-generator".into())
    } else if !so.certified {
        ConjectureStatus::Uncertified("self-orthogonality undecided".into())
    } else if let QuasiValue::Uncertified(c) = qd {
        ConjectureStatus::Uncertified(format!("quasi-generator degree undecided within cap {c}"))
    } else {
        let n = qd.degree().expect("certified degree");
        match pd {
            DimValue::Exact(p) if p <= n => ConjectureStatus::Confirmed,
            DimValue::Exact(p) => ConjectureStatus::Counterexample(format!("pdim {p} > degree {n}")),
            DimValue::Infinite => ConjectureStatus::Counterexample(format!("pdim ∞ > degree {n}")),
            DimValue::AtLeast(c) if c > n => ConjectureStatus::Counterexample(format!("pdim ≥ {c} > degree {n}")),
            DimValue::AtLeast(c) => ConjectureStatus::Uncertified(format!("pdim ≥ {c} with degree {n}")),
        }
    };
    Ok(ConjectureVerdict {
        algebra: algebra.to_string(),
        module: name.to_string(),
        self_orthogonal: so,
        quasi_degree: qd,
        pdim: pd,
        status,
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanSummary {
    pub total: usize,
    pub confirmed: usize,
    pub not_applicable: usize,
    pub uncertified: usize,
    pub counterexamples: usize,
}

impl ScanSummary {
    pub fn of(verdicts: &[ConjectureVerdict]) -> Self {
        let mut s = ScanSummary {
            total: verdicts.len(),
            ..Default::default()
        };
        for v in verdicts {
            match v.status {
                ConjectureStatus::Confirmed => s.confirmed += 1,
                ConjectureStatus::NotApplicable(_) => s.not_applicable += 1,
                ConjectureStatus::Uncertified(_) => s.uncertified += 1,
                ConjectureStatus::Counterexample(_) => s.counterexamples += 1,
            }
        }
        s
    }
}

/// Runs [`pdim_bound`] over `(algebra name, module name, module)` triples in parallel.
pub fn scan_pdim_bound(
    instances: &[(String, String, Module)],
    cap: usize,
) -> Result<Vec<ConjectureVerdict>, ModuleError> {
    crate::par::map(instances, |(a, n, m)| pdim_bound(a, n, m, cap))
        .into_iter()
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProbeStatus {
    HypothesesNotMet,
    Confirmed,
    Counterexample,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WakamatsuProbe {
    pub self_orthogonal: Certified,
    pub pdim: DimValue,
    pub domdim: DimValue,
    pub tilting: Option<TiltingVerdict>,
    pub status: ProbeStatus,
}

/// Self-orthogonal, finite projective dimension and infinite `T`-dominant
/// dimension of the algebra: is `T` then tilting?
pub fn wakamatsu_probe(t: &Module, cap: usize) -> Result<WakamatsuProbe, ModuleError> {
    let so = is_self_orthogonal(t, cap)?;
    let pd = pdim(t, cap)?;
    let (dd, _) = greedy_domdim(t, &ring_regular(t.ring()), cap, ApproxMethod::Reduced)?;
    let refuted = (so.certified && !so.value) || pd == DimValue::Infinite || dd.is_finite();
    let met = so.certified && so.value && pd.is_finite() && dd == DimValue::Infinite;
    let (tilting, status) = if refuted {
        (None, ProbeStatus::HypothesesNotMet)
    } else if !met {
        (None, ProbeStatus::Inconclusive)
    } else {
        let v = is_tilting(t, cap)?;
        let status = match (v.certified, v.value) {
            (true, true) => ProbeStatus::Confirmed,
            (true, false) => ProbeStatus::Counterexample,
            _ => ProbeStatus::Inconclusive,
        };
        (Some(v), status)
    };
    Ok(WakamatsuProbe {
        self_orthogonal: so,
        pdim: pd,
        domdim: dd,
        tilting,
        status,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GorensteinProbe {
    pub cogenerator_quasi_degree: QuasiValue,
    pub idim_left: DimValue,
    pub idim_right: DimValue,
    /// `Some(true)` when both sides agree on Gorensteinness.
    pub consistent: Option<bool>,
}

/// Compares "`DA` is a quasi-generator" with "`A` has finite injective
/// dimension on both sides".
pub fn gorenstein_probe(a: &std::sync::Arc<crate::algebra::Algebra>, cap: usize) -> Result<GorensteinProbe, ModuleError> {
    let da = ring_injective_cogenerator(a);
    let qd = quasi_generator_degree(&da, cap)?.value;
    let left = idim(&ring_regular(a), cap)?;
    let right = idim(&ring_regular(&a.opposite_arc()), cap)?;
    let gorenstein = match (left, right) {
        (DimValue::Exact(_), DimValue::Exact(_)) => Some(true),
        (DimValue::Infinite, _) | (_, DimValue::Infinite) => Some(false),
        _ => None,
    };
    let quasi = match qd {
        QuasiValue::Degree(_) => Some(true),
        QuasiValue::NotQuasi => Some(false),
        QuasiValue::Uncertified(_) => None,
    };
    let consistent = match (gorenstein, quasi) {
        (Some(g), Some(q)) => Some(g == q),
        _ => None,
    };
    Ok(GorensteinProbe {
        cogenerator_quasi_degree: qd,
        idim_left: left,
        idim_right: right,
        consistent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Algebra, Quiver, Relation};
    use crate::field::Fp;
    use crate::module::Side;
    use std::sync::Arc;

    fn a2() -> Arc<Algebra> {
        let s = |x: &str| x.to_string();
        let q = Quiver::new(vec![s("1"), s("2")], &[(s("a"), s("1"), s("2"))]).unwrap();
        Arc::new(Algebra::from_quiver(q, vec![], Fp::new(3).unwrap(), 8).unwrap())
    }

    #[test]
    fn tilting_over_a2() {
        let a = a2();
        let p1 = Module::projective(a.clone(), Side::Left, 0);
        let p2 = Module::projective(a.clone(), Side::Left, 1);
        let s1 = Module::simple(a.clone(), Side::Left, 0);
        let t = Module::direct_sum(&[&p1, &s1]).unwrap();
        let v = is_tilting(&t, 8).unwrap();
        assert!(v.value && v.certified);
        assert_eq!(v.n, Some(1));
        let v = is_tilting(&p2, 8).unwrap();
        assert!(!v.value && v.certified);
        let v = is_tilting(&Module::regular(a, Side::Left), 8).unwrap();
        assert_eq!(v.n, Some(0));
    }

    #[test]
    fn conjecture_on_a2() {
        let a = a2();
        let p1 = Module::projective(a.clone(), Side::Left, 0);
        let s1 = Module::simple(a.clone(), Side::Left, 0);
        let s2 = Module::simple(a.clone(), Side::Left, 1);
        let t = Module::direct_sum(&[&p1, &s1]).unwrap();
        let all = Module::direct_sum(&[&p1, &s1, &s2]).unwrap();
        let inst = vec![
            ("A2".to_string(), "T".to_string(), t),
            ("A2".to_string(), "P1".to_string(), p1),
            ("A2".to_string(), "all".to_string(), all),
        ];
        let out = scan_pdim_bound(&inst, 8).unwrap();
        assert_eq!(out[0].status, ConjectureStatus::Confirmed);
        assert!(matches!(out[1].status, ConjectureStatus::NotApplicable(_)));
        assert!(matches!(out[2].status, ConjectureStatus::NotApplicable(_)));
    }

    #[test]
    fn probes() {
        let a = a2();
        let g = gorenstein_probe(&a, 8).unwrap();
        assert_eq!(g.cogenerator_quasi_degree, QuasiValue::Degree(1));
        assert_eq!(g.consistent, Some(true));

        let s = |x: &str| x.to_string();
        let q = Quiver::new(vec![s("1")], &[(s("x"), s("1"), s("1"))]).unwrap();
        let k = Arc::new(Algebra::from_quiver(q, vec![Relation::monomial(&["x", "x"])], Fp::new(2).unwrap(), 8).unwrap());
        let g = gorenstein_probe(&k, 8).unwrap();
        assert_eq!(g.consistent, Some(true));
        assert_eq!(g.idim_left, DimValue::Exact(0));

        let t = Module::regular(a.clone(), Side::Left);
        let w = wakamatsu_probe(&t, 8).unwrap();
        assert_eq!(w.status, ProbeStatus::Confirmed);
        let p2 = Module::projective(a, Side::Left, 1);
        assert_eq!(wakamatsu_probe(&p2, 8).unwrap().status, ProbeStatus::HypothesesNotMet);
    }
}
