//! Quasi-generator degrees, the maps Φ and Ψ, and round-trip verification
//! of the correspondence between quasi-generators and modules with
//! dominant dimension at least two.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::approx::{is_left_approximation, left_approximation, repeats, ApproxMethod};
use crate::domdim::{greedy_domdim, GreedyStep};
use crate::error::ModuleError;
use crate::homology::{idim, pdim, DimValue, Resolution};
use crate::matrix::FpMatrix;
use crate::module::{end_algebra, hom, in_add, is_projective, ring_regular, tensor, Module, Side};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QuasiKind {
    Generator,
    Cogenerator,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum QuasiValue {
    /// Certified minimal length of the coresolution.
    Degree(usize),
    /// No finite degree: some approximation in the chain fails to be
    /// injective, or the cokernels cycle without reaching `add M`.
    NotQuasi,
    /// Undecided within the cap.
    Uncertified(usize),
}

impl QuasiValue {
    pub fn degree(self) -> Option<usize> {
        match self {
            QuasiValue::Degree(n) => Some(n),
            _ => None,
        }
    }

    pub fn is_certified(self) -> bool {
        !matches!(self, QuasiValue::Uncertified(_))
    }
}

impl std::fmt::Display for QuasiValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            QuasiValue::Degree(n) => write!(f, "{n}"),
            QuasiValue::NotQuasi => write!(f, "none"),
            QuasiValue::Uncertified(c) => write!(f, "undecided within cap {c}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuasiDegree {
    pub kind: QuasiKind,
    pub value: QuasiValue,
    /// The coresolution `0 → R → M_0 → … → M_n → 0` step by step.
    pub witness: Vec<GreedyStep>,
    /// Every step was re-checked to be a left `add M`-approximation.
    pub witness_verified: bool,
    /// `(j, k)`: the cokernels repeat up to `add` from step `j` to step `k`
    /// without ever reaching `add M`.
    pub periodic: Option<(usize, usize)>,
}

/// Length of the shortest `add M`-coresolution of the regular module that
/// stays exact under `Hom(-, M)`.
pub fn quasi_generator_degree(m: &Module, cap: usize) -> Result<QuasiDegree, ModuleError> {
    quasi_degree(m, cap, QuasiKind::Generator)
}

/// Quasi-cogenerator degree of `M`: the quasi-generator degree of `DM`.
pub fn quasi_cogenerator_degree(m: &Module, cap: usize) -> Result<QuasiDegree, ModuleError> {
    quasi_degree(&m.dual(), cap, QuasiKind::Cogenerator)
}

fn quasi_degree(m: &Module, cap: usize, kind: QuasiKind) -> Result<QuasiDegree, ModuleError> {
    if m.is_zero() {
        return Err(ModuleError::ZeroModule("quasi-generator degree of the zero module".into()));
    }
    let mut out = QuasiDegree {
        kind,
        value: QuasiValue::Uncertified(cap),
        witness: Vec::new(),
        witness_verified: true,
        periodic: None,
    };
    let mut c = ring_regular(m.ring());
    let mut history = Vec::new();
    for k in 0..=cap {
        if in_add(&c, m)? {
            out.value = QuasiValue::Degree(k);
            return Ok(out);
        }
        if let Some(j) = repeats(&history, &c)? {
            out.periodic = Some((j, k));
            out.value = QuasiValue::NotQuasi;
            return Ok(out);
        }
        if k == cap {
            break;
        }
        let step = match left_approximation(&c, m, ApproxMethod::Reduced) {
            Ok(s) => s,
            Err(ModuleError::TooLarge(..)) => return Ok(out),
            Err(e) => return Err(e),
        };
        out.witness_verified &= is_left_approximation(&c, m, &step)?;
        out.witness.push(GreedyStep {
            source_dim: c.dim(),
            copies: step.copies,
            injective: step.injective,
            cokernel_dim: step.cokernel.dim(),
        });
        if !step.injective {
            out.value = QuasiValue::NotQuasi;
            return Ok(out);
        }
        history.push(std::mem::replace(&mut c, step.cokernel));
    }
    Ok(out)
}

/// An algebra together with a module over it.
#[derive(Clone, Debug)]
pub struct Pair {
    pub algebra: Arc<Algebra>,
    pub module: Module,
}

/// Φ: `(B, M) ↦ (End_B(M), M)`, with `M` a left module over `End_B(M)`.
pub fn phi(m: &Module) -> Result<Pair, ModuleError> {
    let e = end_algebra(m)?;
    Ok(Pair {
        algebra: e.algebra.clone(),
        module: e.module,
    })
}

/// Ψ: `(A, M) ↦ (End_A(M)^op, M)`, with `M` a right module over `End_A(M)^op`.
pub fn psi(m: &Module) -> Result<Pair, ModuleError> {
    let e = end_algebra(m)?;
    let b = Arc::new(e.algebra.opposite());
    let module = e.module.relabel(b.clone(), Side::Right)?;
    Ok(Pair { algebra: b, module })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoubleCentralizer {
    pub ring_dim: usize,
    pub end_dim: usize,
    pub bicommutant_dim: usize,
    pub faithful: bool,
    pub holds: bool,
}

/// Is the canonical map `R → End_{End_R(Q)}(Q)` bijective?
pub fn double_centralizer(q: &Module) -> Result<DoubleCentralizer, ModuleError> {
    let ring_dim = q.ring().dim();
    if q.is_zero() {
        return Ok(DoubleCentralizer {
            ring_dim,
            end_dim: 0,
            bicommutant_dim: 0,
            faithful: false,
            holds: false,
        });
    }
    let f = q.field();
    let e = end_algebra(q)?;
    let bicommutant = hom(&e.module, &e.module)?;
    let cols: Vec<Vec<u32>> = q.action().iter().map(|a| a.to_vector()).collect();
    let faithful = FpMatrix::from_columns(f, q.dim() * q.dim(), &cols).rank() == ring_dim;
    // The image of R lies in the bicommutant by construction.
    debug_assert!(q
        .action()
        .iter()
        .all(|a| e.basis.iter().all(|phi| a.mul(phi) == phi.mul(a))));
    Ok(DoubleCentralizer {
        ring_dim,
        end_dim: e.algebra.dim(),
        bicommutant_dim: bicommutant.dim(),
        faithful,
        holds: faithful && bicommutant.dim() == ring_dim,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Uncertified,
    /// The starting pair does not have the claimed degrees.
    PreconditionFailed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub observed: String,
    /// `Some(true)` pass, `Some(false)` certified failure, `None` undecided.
    pub outcome: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorrespondenceReport {
    pub generator_degree: Option<usize>,
    pub cogenerator_degree: Option<usize>,
    pub end_dim: usize,
    pub checks: Vec<Check>,
    pub verdict: Verdict,
}

fn check(name: &str, expected: impl ToString, observed: impl ToString, outcome: Option<bool>) -> Check {
    Check {
        name: name.to_string(),
        expected: expected.to_string(),
        observed: observed.to_string(),
        outcome,
    }
}

fn dim_outcome(v: DimValue, n: usize) -> Option<bool> {
    match v {
        DimValue::Exact(k) => Some(k == n),
        DimValue::Infinite => Some(false),
        DimValue::AtLeast(k) => (k > n).then_some(false),
    }
}

/// `Tor_i(DM, M) = 0` for `0 < i <= top`.
fn tor_vanishing(m: &Module, top: usize) -> Result<(bool, Vec<usize>), ModuleError> {
    let dm = m.dual();
    let mut res = Resolution::new(m, true);
    let mut dims = Vec::new();
    for i in 1..=top {
        dims.push(res.tor(&dm, i)?);
    }
    Ok((dims.iter().all(|&d| d == 0), dims))
}

/// Round trip through Φ and Ψ for a module `M` over `B` with claimed
/// quasi-generator degree `n` and/or quasi-cogenerator degree `m`.
///
/// On the image `(A, M) = Φ(B, M)` this checks `pdim_A M = n`,
/// `idim_A M = m`, `M-domdim A >= 2`, vanishing of `Tor_{i>0}^A(DM, M)`, and
/// the double centralizer property on both sides; then it applies Ψ and
/// recomputes the degrees over `End_A(M)^op`.
pub fn verify_correspondence(
    m: &Module,
    n: Option<usize>,
    mdeg: Option<usize>,
    cap: usize,
) -> Result<CorrespondenceReport, ModuleError> {
    let mut checks = Vec::new();
    let mut pre_ok = Some(true);
    let gdeg = match n {
        Some(n) => {
            let q = quasi_generator_degree(m, cap)?;
            let ok = match q.value {
                QuasiValue::Degree(k) => Some(k == n),
                QuasiValue::NotQuasi => Some(false),
                QuasiValue::Uncertified(_) => None,
            };
            checks.push(check("quasi-generator degree over B", n, q.value, ok));
            pre_ok = and(pre_ok, ok);
            q.value.degree()
        }
        None => None,
    };
    let cdeg = match mdeg {
        Some(md) => {
            let q = quasi_cogenerator_degree(m, cap)?;
            let ok = match q.value {
                QuasiValue::Degree(k) => Some(k == md),
                QuasiValue::NotQuasi => Some(false),
                QuasiValue::Uncertified(_) => None,
            };
            checks.push(check("quasi-cogenerator degree over B", md, q.value, ok));
            pre_ok = and(pre_ok, ok);
            q.value.degree()
        }
        None => None,
    };
    if pre_ok != Some(true) {
        return Ok(CorrespondenceReport {
            generator_degree: gdeg,
            cogenerator_degree: cdeg,
            end_dim: 0,
            checks,
            verdict: if pre_ok.is_none() {
                Verdict::Uncertified
            } else {
                Verdict::PreconditionFailed
            },
        });
    }

    let image = phi(m)?;
    let a = image.algebra.clone();
    let ma = image.module.clone();
    let end_dim = a.dim();
    let mut tor_top = None;
    if let Some(n) = n {
        let pd = pdim(&ma, cap)?;
        checks.push(check("pdim over End_B(M)", n, pd, dim_outcome(pd, n)));
        tor_top = Some(n);
    }
    if let Some(md) = mdeg {
        let id = idim(&ma, cap)?;
        checks.push(check("idim over End_B(M)", md, id, dim_outcome(id, md)));
        tor_top = Some(tor_top.map_or(md, |t: usize| t.min(md)));
    }
    let regular_a = ring_regular(&a);
    let (dd, _) = greedy_domdim(&ma, &regular_a, 2, ApproxMethod::Reduced)?;
    checks.push(check("M-domdim of End_B(M)", "≥ 2", dd, Some(dd.lower_bound() >= 2)));
    if let Some(top) = tor_top {
        let (ok, dims) = tor_vanishing(&ma, top)?;
        checks.push(check(
            "Tor_i(DM, M) = 0 for all i > 0 (checked up to the smaller degree)",
            "all zero",
            format!("{dims:?}"),
            Some(ok),
        ));
    }
    // D(DM ⊗ M) ≅ Hom(M, M)
    let t = tensor(&ma.dual(), &ma)?;
    let end_m = hom(&ma, &ma)?.dim();
    checks.push(check("dim DM ⊗ M = dim End(M)", end_m, t.dim, Some(t.dim == end_m)));
    let dc_b = double_centralizer(m)?;
    checks.push(check(
        "B → End_{End_B(M)}(M) bijective (Ψ∘Φ = id)",
        true,
        dc_b.holds,
        Some(dc_b.holds),
    ));
    let dc_a = double_centralizer(&ma)?;
    checks.push(check(
        "End_B(M) → End_{End_A(M)}(M) bijective (Φ∘Ψ = id)",
        true,
        dc_a.holds,
        Some(dc_a.holds),
    ));
    // Back through Ψ: M over End_A(M)^op, internally a left End_A(M)-module.
    let back = psi(&ma)?;
    if let Some(n) = n {
        let q = quasi_generator_degree(&back.module, cap)?;
        let ok = match q.value {
            QuasiValue::Degree(k) => Some(k == n),
            QuasiValue::NotQuasi => Some(false),
            QuasiValue::Uncertified(_) => None,
        };
        checks.push(check("quasi-generator degree after Ψ", n, q.value, ok));
    }
    if let Some(md) = mdeg {
        let q = quasi_cogenerator_degree(&back.module, cap)?;
        let ok = match q.value {
            QuasiValue::Degree(k) => Some(k == md),
            QuasiValue::NotQuasi => Some(false),
            QuasiValue::Uncertified(_) => None,
        };
        checks.push(check("quasi-cogenerator degree after Ψ", md, q.value, ok));
    }
    let verdict = if checks.iter().any(|c| c.outcome == Some(false)) {
        Verdict::Fail
    } else if checks.iter().any(|c| c.outcome.is_none()) {
        Verdict::Uncertified
    } else {
        Verdict::Pass
    };
    Ok(CorrespondenceReport {
        generator_degree: gdeg,
        cogenerator_degree: cdeg,
        end_dim,
        checks,
        verdict,
    })
}

fn and(a: Option<bool>, b: Option<bool>) -> Option<bool> {
    match (a, b) {
        (Some(false), _) | (_, Some(false)) => Some(false),
        (Some(true), Some(true)) => Some(true),
        _ => None,
    }
}

/// Quasi-generators of degree `n` against modules of projective dimension `n`.
pub fn verify_quasi_generator(m: &Module, n: usize, cap: usize) -> Result<CorrespondenceReport, ModuleError> {
    verify_correspondence(m, Some(n), None, cap)
}

/// Quasi-cogenerators of degree `m` against modules of injective dimension `m`.
pub fn verify_quasi_cogenerator(m: &Module, mdeg: usize, cap: usize) -> Result<CorrespondenceReport, ModuleError> {
    verify_correspondence(m, None, Some(mdeg), cap)
}

/// Both degrees at once.
pub fn verify_two_sided(m: &Module, n: usize, mdeg: usize, cap: usize) -> Result<CorrespondenceReport, ModuleError> {
    verify_correspondence(m, Some(n), Some(mdeg), cap)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoritaReport {
    pub generator: bool,
    pub projective_over_end: bool,
    pub double_centralizer: bool,
    /// `generator ⟺ (projective over End and double centralizer)`.
    pub consistent: bool,
}

/// Classical Morita: `M` is a generator iff it is projective over its
/// endomorphism algebra and has the double centralizer property.
pub fn classical_morita_check(m: &Module) -> Result<MoritaReport, ModuleError> {
    let generator = in_add(&ring_regular(m.ring()), m)?;
    let e = end_algebra(m)?;
    let projective_over_end = is_projective(&e.module);
    let dc = double_centralizer(m)?.holds;
    Ok(MoritaReport {
        generator,
        projective_over_end,
        double_centralizer: dc,
        consistent: generator == (projective_over_end && dc),
    })
}
