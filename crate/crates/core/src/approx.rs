//! Left `add Q`-approximations `C → Q^r`.

use serde::{Deserialize, Serialize};

use crate::error::ModuleError;
use crate::matrix::FpMatrix;
use crate::module::{hom, in_add, top_generators, Module};

/// Working limit on the dimension of intermediate modules.
pub const MAX_WORKING_DIM: usize = 1500;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ApproxMethod {
    /// Evaluation at every basis map of `Hom(C, Q)`.
    Universal,
    /// Evaluation at a top basis of `Hom(C, Q)` over `End(Q)`, each
    /// generator mapping into one summand of `Q`.
    #[default]
    Reduced,
}

#[derive(Clone, Debug)]
pub struct ApproxStep {
    /// `u: C → target`, a `dim target × dim C` matrix.
    pub map: FpMatrix,
    /// A module in `add Q`.
    pub target: Module,
    /// Number of summands of `target` used.
    pub copies: usize,
    pub injective: bool,
    pub cokernel: Module,
    /// Projection `target → cokernel`.
    pub projection: FpMatrix,
}

/// A left `add Q`-approximation of `c`: every map `C → Q` factors through it.
pub fn left_approximation(c: &Module, q: &Module, method: ApproxMethod) -> Result<ApproxStep, ModuleError> {
    if q.is_zero() {
        return Err(ModuleError::ZeroModule("approximations need a nonzero Q".into()));
    }
    let f = c.field();
    let h = hom(c, q)?;
    let (maps, target) = match method {
        ApproxMethod::Universal => {
            if h.dim() * q.dim() > MAX_WORKING_DIM {
                return Err(ModuleError::TooLarge(h.dim() * q.dim(), MAX_WORKING_DIM));
            }
            (h.basis.clone(), q.power(h.dim()))
        }
        ApproxMethod::Reduced => {
            let gens = top_generators(&h, q);
            let sm = q.summands();
            let total: usize = gens.iter().map(|(i, _)| sm.parts[*i].module.dim()).sum();
            if total > MAX_WORKING_DIM {
                return Err(ModuleError::TooLarge(total, MAX_WORKING_DIM));
            }
            let parts: Vec<&Module> = gens.iter().map(|(i, _)| &sm.parts[*i].module).collect();
            let target = if parts.is_empty() {
                Module::zero(q.base().clone(), q.side())
            } else {
                Module::direct_sum(&parts)?
            };
            (gens.into_iter().map(|(_, g)| g).collect::<Vec<_>>(), target)
        }
    };
    let copies = maps.len();
    let refs: Vec<&FpMatrix> = maps.iter().collect();
    let map = FpMatrix::vstack(f, c.dim(), &refs);
    let injective = map.rank() == c.dim();
    let (cokernel, projection) = target.quotient(&map)?;
    Ok(ApproxStep {
        map,
        target,
        copies,
        injective,
        cokernel,
        projection,
    })
}

/// Checks the approximation property: `Hom(target, Q) → Hom(C, Q)` is onto.
pub fn is_left_approximation(c: &Module, q: &Module, step: &ApproxStep) -> Result<bool, ModuleError> {
    let h = hom(c, q)?;
    let f = c.field();
    let back = hom(&step.target, q)?;
    let cols: Vec<Vec<u32>> = back.basis.iter().map(|g| g.mul(&step.map).to_vector()).collect();
    if cols.is_empty() {
        return Ok(h.dim() == 0);
    }
    Ok(FpMatrix::from_columns(f, c.dim() * q.dim(), &cols).rank() == h.dim())
}

/// Index of an earlier module with the same additive closure as `c`.
///
/// Approximations are additive, so once a running cokernel repeats an
/// earlier one up to `add`, the chain of cokernels repeats from there on.
pub fn repeats(earlier: &[Module], c: &Module) -> Result<Option<usize>, ModuleError> {
    if c.is_zero() {
        return Ok(None);
    }
    let support = |m: &Module| m.dim_vector().iter().map(|&d| d > 0).collect::<Vec<_>>();
    let sc = support(c);
    for (j, x) in earlier.iter().enumerate() {
        if x.is_zero() || support(x) != sc {
            continue;
        }
        if in_add(c, x)? && in_add(x, c)? {
            return Ok(Some(j));
        }
    }
    Ok(None)
}
