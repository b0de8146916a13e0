//! Projective resolutions, Ext, Tor, and homological dimensions.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::approx::{left_approximation, ApproxMethod, MAX_WORKING_DIM};
use crate::error::ModuleError;
use crate::matrix::{FpMatrix, Span};
use crate::module::{in_add, is_projective, ring_injective_cogenerator, Module, Side};

pub const DEFAULT_CAP: usize = 16;

/// A homological dimension: certified exact, a lower bound from a cap, or
/// certified infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum DimValue {
    Exact(usize),
    AtLeast(usize),
    Infinite,
}

impl DimValue {
    pub fn is_certified(self) -> bool {
        !matches!(self, DimValue::AtLeast(_))
    }

    pub fn exact(self) -> Option<usize> {
        match self {
            DimValue::Exact(n) => Some(n),
            _ => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, DimValue::Exact(_))
    }

    /// Known lower bound.
    pub fn lower_bound(self) -> usize {
        match self {
            DimValue::Exact(n) | DimValue::AtLeast(n) => n,
            DimValue::Infinite => usize::MAX,
        }
    }

    /// Could both values describe the same number?
    pub fn compatible(self, other: DimValue) -> bool {
        use DimValue::*;
        match (self, other) {
            (Exact(a), Exact(b)) => a == b,
            (Exact(a), AtLeast(b)) | (AtLeast(b), Exact(a)) => a >= b,
            (Exact(_), Infinite) | (Infinite, Exact(_)) => false,
            _ => true,
        }
    }

    /// The sharper of two compatible values.
    pub fn sharpen(self, other: DimValue) -> DimValue {
        use DimValue::*;
        match (self, other) {
            (Exact(a), _) | (_, Exact(a)) => Exact(a),
            (Infinite, _) | (_, Infinite) => Infinite,
            (AtLeast(a), AtLeast(b)) => AtLeast(a.max(b)),
        }
    }
}

impl fmt::Display for DimValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DimValue::Exact(n) => write!(f, "{n}"),
            DimValue::AtLeast(n) => write!(f, "≥ {n}"),
            DimValue::Infinite => write!(f, "∞"),
        }
    }
}

/// A projective resolution `… → P_1 → P_0 → M → 0` with `P_i = ⊕_t R e_{j_t}`,
/// built lazily one syzygy at a time.
#[derive(Clone, Debug)]
pub struct Resolution {
    ring: Arc<Algebra>,
    minimal: bool,
    /// Vertex of each summand of `P_i`.
    terms: Vec<Vec<usize>>,
    /// `syzygies[i] = Ω^i M`, with `Ω^0 M = M`.
    syzygies: Vec<Module>,
    /// `covers[i]`: the k-linear map `P_i → Ω^i M`.
    covers: Vec<FpMatrix>,
    /// `inclusions[i]`: `Ω^{i+1} M → P_i`.
    inclusions: Vec<FpMatrix>,
    /// `diffs[i][t][s]`: component of `d_{i+1}` from summand `t` of `P_{i+1}`
    /// to summand `s` of `P_i`, as right multiplication by an element of
    /// `e_{j_t} R e_{j_s}`.
    diffs: Vec<Vec<Vec<Vec<u32>>>>,
    projectives: Vec<Module>,
}

impl Resolution {
    pub fn new(m: &Module, minimal: bool) -> Self {
        let ring = m.ring().clone();
        let projectives = (0..ring.idempotents().len())
            .map(|j| Module::projective(ring.clone(), Side::Left, j))
            .collect();
        Resolution {
            ring,
            minimal,
            terms: Vec::new(),
            syzygies: vec![m.clone()],
            covers: Vec::new(),
            inclusions: Vec::new(),
            diffs: Vec::new(),
            projectives,
        }
    }

    pub fn is_minimal(&self) -> bool {
        self.minimal
    }

    pub fn ring(&self) -> &Arc<Algebra> {
        &self.ring
    }

    /// Number of terms computed so far.
    pub fn computed_length(&self) -> usize {
        self.terms.len()
    }

    /// Generators of `x`: vertex and vector, lying in `e_j X`.
    fn generators(&self, x: &Module) -> Vec<(usize, Vec<u32>)> {
        let p = x.peirce();
        let mut out = Vec::new();
        if self.minimal {
            let jx = x.radical_submodule_basis();
            let mut span = Span::new(x.field(), x.dim());
            for c in 0..jx.cols() {
                span.insert(&jx.col_vec(c));
            }
            for (j, b) in p.bases.iter().enumerate() {
                for c in 0..b.cols() {
                    let v = b.col_vec(c);
                    if span.insert(&v) {
                        out.push((j, v));
                    }
                }
            }
        } else {
            for (j, b) in p.bases.iter().enumerate() {
                for c in 0..b.cols() {
                    out.push((j, b.col_vec(c)));
                }
            }
        }
        out
    }

    /// Builds `P_0, …, P_len` (and hence `Ω^{len+1}`).
    pub fn ensure(&mut self, len: usize) -> Result<(), ModuleError> {
        let f = self.ring.field();
        let d = self.ring.dim();
        while self.terms.len() <= len {
            let i = self.terms.len();
            let x = self.syzygies[i].clone();
            let gens = self.generators(&x);
            let vertices: Vec<usize> = gens.iter().map(|(j, _)| *j).collect();
            let pdim: usize = vertices.iter().map(|&j| self.projectives[j].dim()).sum();
            if pdim > MAX_WORKING_DIM {
                return Err(ModuleError::TooLarge(pdim, MAX_WORKING_DIM));
            }
            // Cover map: r in summand t goes to r·x_t.
            let mut cols: Vec<Vec<u32>> = Vec::with_capacity(pdim);
            for (j, v) in &gens {
                let pb = &self.ring.projective_bases()[*j];
                let images: Vec<Vec<u32>> = (0..d).map(|k| x.action()[k].mul_vec(v)).collect();
                for u in 0..pb.cols() {
                    let mut acc = vec![0u32; x.dim()];
                    for k in 0..d {
                        let c = pb.get(k, u);
                        if c != 0 {
                            for (a, &b) in acc.iter_mut().zip(&images[k]) {
                                *a = f.add(*a, f.mul(c, b));
                            }
                        }
                    }
                    cols.push(acc);
                }
            }
            let cover = if pdim == 0 {
                FpMatrix::zeros(f, x.dim(), 0)
            } else {
                FpMatrix::from_columns(f, x.dim(), &cols)
            };
            if cover.rank() != x.dim() {
                return Err(ModuleError::BadAction("projective cover is not surjective".into()));
            }
            let kernel = cover.kernel_basis();
            let parts: Vec<&Module> = vertices.iter().map(|&j| &self.projectives[j]).collect();
            let p_i = if parts.is_empty() {
                Module::zero(self.ring.clone(), Side::Left)
            } else {
                Module::direct_sum(&parts)?
            };
            let next = p_i.submodule(&kernel)?;
            // The differential P_i → P_{i-1} sends generator t to its image in P_{i-1}.
            if i >= 1 {
                let incl = &self.inclusions[i - 1];
                let prev = &self.terms[i - 1];
                let mut entries = Vec::with_capacity(gens.len());
                for (_, v) in &gens {
                    let z = incl.mul_vec(v);
                    let mut row = Vec::with_capacity(prev.len());
                    let mut off = 0;
                    for &js in prev {
                        let pb = &self.ring.projective_bases()[js];
                        let w = pb.mul_vec(&z[off..off + pb.cols()]);
                        off += pb.cols();
                        row.push(w);
                    }
                    entries.push(row);
                }
                self.diffs.push(entries);
            }
            self.terms.push(vertices);
            self.covers.push(cover);
            self.inclusions.push(kernel);
            self.syzygies.push(next);
        }
        Ok(())
    }

    /// `Ω^i M`.
    pub fn syzygy(&mut self, i: usize) -> Result<&Module, ModuleError> {
        if i > 0 {
            self.ensure(i - 1)?;
        }
        Ok(&self.syzygies[i])
    }

    /// Vertices of the summands of `P_i`.
    pub fn term(&mut self, i: usize) -> Result<&[usize], ModuleError> {
        self.ensure(i)?;
        Ok(&self.terms[i])
    }

    pub fn term_dim(&mut self, i: usize) -> Result<usize, ModuleError> {
        self.ensure(i)?;
        Ok(self.terms[i].iter().map(|&j| self.projectives[j].dim()).sum())
    }

    /// `P_i` as a module.
    pub fn term_module(&mut self, i: usize) -> Result<Module, ModuleError> {
        self.ensure(i)?;
        let parts: Vec<&Module> = self.terms[i].iter().map(|&j| &self.projectives[j]).collect();
        if parts.is_empty() {
            return Ok(Module::zero(self.ring.clone(), Side::Left));
        }
        Module::direct_sum(&parts)
    }

    /// The k-linear matrix of `d_i: P_i → P_{i-1}` for `i ≥ 1`.
    pub fn differential(&mut self, i: usize) -> Result<FpMatrix, ModuleError> {
        assert!(i >= 1);
        self.ensure(i)?;
        Ok(self.inclusions[i - 1].mul(&self.covers[i]))
    }

    /// The augmentation `P_0 → M`.
    pub fn augmentation(&mut self) -> Result<FpMatrix, ModuleError> {
        self.ensure(0)?;
        Ok(self.covers[0].clone())
    }

    /// `d_i` as right multiplications: `[t][s]` for `i ≥ 1`.
    fn diff_entries(&mut self, i: usize) -> Result<&Vec<Vec<Vec<u32>>>, ModuleError> {
        self.ensure(i)?;
        Ok(&self.diffs[i - 1])
    }

    /// The cochain map `Hom(P_{i-1}, N) → Hom(P_i, N)` for `i ≥ 1`.
    fn hom_differential(&mut self, n: &Module, i: usize) -> Result<FpMatrix, ModuleError> {
        let f = n.field();
        let pn = n.peirce().clone();
        let dn = pn.dims();
        let entries = self.diff_entries(i)?.clone();
        let rows_t: Vec<usize> = self.terms[i].clone();
        let cols_s: Vec<usize> = self.terms[i - 1].clone();
        let nr: usize = rows_t.iter().map(|&j| dn[j]).sum();
        let nc: usize = cols_s.iter().map(|&j| dn[j]).sum();
        let mut out = FpMatrix::zeros(f, nr, nc);
        let mut r0 = 0;
        for (t, &jt) in rows_t.iter().enumerate() {
            let mut c0 = 0;
            for (s, &js) in cols_s.iter().enumerate() {
                if dn[jt] * dn[js] > 0 {
                    let w = &entries[t][s];
                    if w.iter().any(|&c| c != 0) {
                        let blk = pn.extract[jt].mul(&n.act(w).mul(&pn.bases[js]));
                        out.set_block(r0, c0, &blk);
                    }
                }
                c0 += dn[js];
            }
            r0 += dn[jt];
        }
        Ok(out)
    }

    /// `dim Ext^i(M, N)`.
    pub fn ext(&mut self, n: &Module, i: usize) -> Result<usize, ModuleError> {
        if !n.same_ring(&self.syzygies[0]) {
            return Err(ModuleError::AlgebraMismatch);
        }
        self.ensure(i + 1)?;
        let dn = n.peirce().dims();
        let hom_dim: usize = self.terms[i].iter().map(|&j| dn[j]).sum();
        let rank_out = self.hom_differential(n, i + 1)?.rank();
        let rank_in = if i == 0 { 0 } else { self.hom_differential(n, i)?.rank() };
        Ok(hom_dim - rank_out - rank_in)
    }

    /// The chain map `X ⊗ P_i → X ⊗ P_{i-1}` for a right module `X`.
    fn tensor_differential(&mut self, x: &Module, i: usize) -> Result<FpMatrix, ModuleError> {
        let f = x.field();
        let px = x.peirce().clone();
        let dx = px.dims();
        let entries = self.diff_entries(i)?.clone();
        let src: Vec<usize> = self.terms[i].clone();
        let dst: Vec<usize> = self.terms[i - 1].clone();
        let nr: usize = dst.iter().map(|&j| dx[j]).sum();
        let nc: usize = src.iter().map(|&j| dx[j]).sum();
        let mut out = FpMatrix::zeros(f, nr, nc);
        let mut c0 = 0;
        for (t, &jt) in src.iter().enumerate() {
            let mut r0 = 0;
            for (s, &js) in dst.iter().enumerate() {
                if dx[jt] * dx[js] > 0 {
                    let w = &entries[t][s];
                    if w.iter().any(|&c| c != 0) {
                        let blk = px.extract[js].mul(&x.act(w).mul(&px.bases[jt]));
                        out.set_block(r0, c0, &blk);
                    }
                }
                r0 += dx[js];
            }
            c0 += dx[jt];
        }
        Ok(out)
    }

    /// `dim Tor_i(X, M)` for a right module `X` over the same ring.
    pub fn tor(&mut self, x: &Module, i: usize) -> Result<usize, ModuleError> {
        if !crate::algebra::same_algebra(x.ring(), &self.ring.opposite_arc()) {
            return Err(ModuleError::SideMismatch(
                "Tor needs a right module over the ring being resolved".into(),
            ));
        }
        self.ensure(i + 1)?;
        let dx = x.peirce().dims();
        let chain_dim: usize = self.terms[i].iter().map(|&j| dx[j]).sum();
        let rank_out = if i == 0 { 0 } else { self.tensor_differential(x, i)?.rank() };
        let rank_in = self.tensor_differential(x, i + 1)?.rank();
        Ok(chain_dim - rank_out - rank_in)
    }
}

pub fn projective_resolution(m: &Module, length: usize, minimal: bool) -> Result<Resolution, ModuleError> {
    let mut r = Resolution::new(m, minimal);
    r.ensure(length)?;
    Ok(r)
}

pub fn ext(m: &Module, n: &Module, i: usize) -> Result<usize, ModuleError> {
    Resolution::new(m, true).ext(n, i)
}

/// `dim Tor_i(X, Y)` for `X` right and `Y` left over the same ring.
pub fn tor(x: &Module, y: &Module, i: usize) -> Result<usize, ModuleError> {
    Resolution::new(y, true).tor(x, i)
}

/// Smallest `n` with `Ω^n M` projective.
///
/// Certified infinite when some nonprojective `Ω^j M` is a summand of a sum
/// of copies of a later syzygy `Ω^k M`: then `pd Ω^j ≤ pd Ω^j - (k - j)`.
pub fn pdim(m: &Module, cap: usize) -> Result<DimValue, ModuleError> {
    let mut res = Resolution::new(m, true);
    pdim_with(&mut res, cap)
}

pub fn pdim_with(res: &mut Resolution, cap: usize) -> Result<DimValue, ModuleError> {
    let mut seen: Vec<Module> = Vec::new();
    for n in 0..cap {
        let omega = match res.syzygy(n) {
            Ok(o) => o.clone(),
            Err(ModuleError::TooLarge(..)) => return Ok(DimValue::AtLeast(n)),
            Err(e) => return Err(e),
        };
        if omega.is_zero() || is_projective(&omega) {
            return Ok(DimValue::Exact(n));
        }
        for earlier in &seen {
            if in_add(earlier, &omega)? {
                return Ok(DimValue::Infinite);
            }
        }
        seen.push(omega);
    }
    Ok(DimValue::AtLeast(cap))
}

/// Injective dimension as the projective dimension of the dual.
pub fn idim(m: &Module, cap: usize) -> Result<DimValue, ModuleError> {
    pdim(&m.dual(), cap)
}

/// Injective dimension by coresolving with left `add D(R)`-approximations and
/// stopping at the first injective cokernel.
pub fn idim_by_coresolution(m: &Module, cap: usize) -> Result<DimValue, ModuleError> {
    let inj = ring_injective_cogenerator(m.ring());
    let mut c = m.clone();
    let mut seen: Vec<Module> = Vec::new();
    for n in 0..cap {
        if c.is_zero() || in_add(&c, &inj)? {
            return Ok(DimValue::Exact(n));
        }
        for earlier in &seen {
            if in_add(earlier, &c)? {
                return Ok(DimValue::Infinite);
            }
        }
        let step = match left_approximation(&c, &inj, ApproxMethod::Reduced) {
            Ok(s) => s,
            Err(ModuleError::TooLarge(..)) => return Ok(DimValue::AtLeast(n)),
            Err(e) => return Err(e),
        };
        debug_assert!(step.injective, "approximations by a cogenerator are injective");
        seen.push(c);
        c = step.cokernel;
    }
    Ok(DimValue::AtLeast(cap))
}

/// A yes/no answer that may be uncertified because of a cap.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certified {
    pub value: bool,
    pub certified: bool,
    pub note: String,
}

/// `Ext^i(M, M) = 0` for all `i > 0`.
///
/// Certified when some degree is nonzero, or when `pdim M` or `idim M` is
/// finite (Ext vanishes above either).
pub fn is_self_orthogonal(m: &Module, cap: usize) -> Result<Certified, ModuleError> {
    let mut res = Resolution::new(m, true);
    let pd = pdim_with(&mut res, cap)?;
    let (bound, reason) = match pd {
        DimValue::Exact(n) => (Some(n), format!("pdim = {n}")),
        _ => match idim(m, cap)? {
            DimValue::Exact(n) => (Some(n), format!("idim = {n}")),
            _ => (None, String::new()),
        },
    };
    let top = bound.unwrap_or(cap);
    for i in 1..=top {
        let e = match res.ext(m, i) {
            Ok(e) => e,
            Err(ModuleError::TooLarge(..)) => {
                return Ok(Certified {
                    value: true,
                    certified: false,
                    note: format!("Ext^i(M, M) = 0 for 0 < i < {i}; degree {i} exceeds the working limit"),
                })
            }
            Err(e) => return Err(e),
        };
        if e != 0 {
            return Ok(Certified {
                value: false,
                certified: true,
                note: format!("dim Ext^{i}(M, M) = {e}"),
            });
        }
    }
    Ok(match bound {
        Some(_) => Certified {
            value: true,
            certified: true,
            note: format!("Ext^i(M, M) = 0 for 0 < i <= {top}; {reason}"),
        },
        None => Certified {
            value: true,
            certified: false,
            note: format!("Ext^i(M, M) = 0 for 0 < i <= {cap}; pdim and idim undecided within the cap"),
        },
    })
}
