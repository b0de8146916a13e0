//! Finite-dimensional associative unital algebras given by structure constants.
//!
//! Algebras come either from a bound quiver (paths modulo admissible
//! relations, reduced to normal form by rewriting) or from an explicit
//! multiplication table. Paths are written in traversal order (first arrow
//! first) and multiply right-to-left: the product `b * a` of two paths is
//! "`a` then `b`".

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock};

use crate::error::AlgebraError;
use crate::field::Fp;
use crate::matrix::{FpMatrix, Span};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    /// Arrows are `(name, source, target)` with vertex names.
    pub fn new(vertices: Vec<String>, arrows: &[(String, String, String)]) -> Result<Self, AlgebraError> {
        let mut seen = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if seen.insert(v.clone(), i).is_some() {
                return Err(AlgebraError::InvalidQuiver(format!("duplicate vertex `{v}`")));
            }
        }
        let mut names = HashMap::new();
        let mut out = Vec::with_capacity(arrows.len());
        for (name, s, t) in arrows {
            if names.insert(name.clone(), ()).is_some() || seen.contains_key(name) {
                return Err(AlgebraError::InvalidQuiver(format!("duplicate name `{name}`")));
            }
            let lookup = |v: &String| {
                seen.get(v)
                    .copied()
                    .ok_or_else(|| AlgebraError::InvalidQuiver(format!("arrow `{name}` uses undeclared vertex `{v}`")))
            };
            out.push(Arrow {
                name: name.clone(),
                source: lookup(s)?,
                target: lookup(t)?,
            });
        }
        Ok(Quiver { vertices, arrows: out })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }
}

/// A linear combination of paths, each path a list of arrow names in traversal order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<(i64, Vec<String>)>,
}

impl Relation {
    pub fn new(terms: Vec<(i64, Vec<String>)>) -> Self {
        Relation { terms }
    }

    /// A single zero path, e.g. `a*b = 0`.
    pub fn monomial(path: &[&str]) -> Self {
        Relation {
            terms: vec![(1, path.iter().map(|s| s.to_string()).collect())],
        }
    }
}

/// A path: source vertex plus arrow indices in traversal order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    pub source: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }
}

/// Length first, then lexicographic on arrow indices; trivial paths by vertex.
fn path_cmp(a: &Path, b: &Path) -> Ordering {
    a.arrows
        .len()
        .cmp(&b.arrows.len())
        .then_with(|| a.arrows.cmp(&b.arrows))
        .then_with(|| a.source.cmp(&b.source))
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        path_cmp(self, other)
    }
}

/// Provenance of an algebra built from a bound quiver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverPresentation {
    pub quiver: Quiver,
    pub relations: Vec<Relation>,
    pub length_bound: usize,
    /// Basis paths, aligned with the algebra basis.
    pub basis_paths: Vec<Path>,
}

impl QuiverPresentation {
    /// Index of the basis element for a single arrow, if the arrow survived.
    pub fn arrow_basis_index(&self, arrow: usize) -> Option<usize> {
        self.basis_paths.iter().position(|p| p.arrows == [arrow])
    }

    pub fn vertex_basis_index(&self, vertex: usize) -> usize {
        self.basis_paths
            .iter()
            .position(|p| p.arrows.is_empty() && p.source == vertex)
            .expect("vertex idempotents are always basis elements")
    }

    pub fn target(&self, path: &Path) -> usize {
        path.arrows
            .last()
            .map(|&a| self.quiver.arrows[a].target)
            .unwrap_or(path.source)
    }
}

/// Basis of the Jacobson radical as coordinate columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalIdeal {
    pub basis: FpMatrix,
}

impl RadicalIdeal {
    pub fn dim(&self) -> usize {
        self.basis.cols()
    }
}

#[derive(Default, Debug)]
struct Cache {
    left_mult: OnceLock<Vec<FpMatrix>>,
    radical: OnceLock<RadicalIdeal>,
    generators: OnceLock<Vec<Vec<u32>>>,
    generator_pieces: OnceLock<Vec<(usize, usize)>>,
    projective_bases: OnceLock<Vec<FpMatrix>>,
    opposite: OnceLock<Arc<Algebra>>,
}

impl Clone for Cache {
    fn clone(&self) -> Self {
        let c = Cache::default();
        if let Some(r) = self.radical.get() {
            let _ = c.radical.set(r.clone());
        }
        if let Some(g) = self.generators.get() {
            let _ = c.generators.set(g.clone());
        }
        c
    }
}

/// A finite-dimensional associative unital algebra over GF(p).
#[derive(Clone, Debug)]
pub struct Algebra {
    field: Fp,
    dim: usize,
    labels: Vec<String>,
    /// `table[(i * d + j) * d + k]` is the coefficient of `b_k` in `b_i * b_j`.
    table: Vec<u32>,
    unit: Vec<u32>,
    idempotents: Vec<Vec<u32>>,
    /// Path length of each basis element when the basis is graded by paths.
    path_lengths: Option<Vec<usize>>,
    presentation: Option<Arc<QuiverPresentation>>,
    cache: Cache,
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.dim == other.dim
            && self.unit == other.unit
            && self.idempotents == other.idempotents
            && self.table == other.table
    }
}

impl Eq for Algebra {}

/// Pointer-or-structural equality of shared algebras.
pub fn same_algebra(a: &Arc<Algebra>, b: &Arc<Algebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Algebra {
    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn p(&self) -> u32 {
        self.field.modulus()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &[u32] {
        &self.unit
    }

    pub fn idempotents(&self) -> &[Vec<u32>] {
        &self.idempotents
    }

    pub fn presentation(&self) -> Option<&Arc<QuiverPresentation>> {
        self.presentation.as_ref()
    }

    pub fn path_lengths(&self) -> Option<&[usize]> {
        self.path_lengths.as_deref()
    }

    /// Coordinates of `b_i * b_j`.
    pub fn product(&self, i: usize, j: usize) -> &[u32] {
        let d = self.dim;
        &self.table[(i * d + j) * d..(i * d + j + 1) * d]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<u32> {
        let mut v = vec![0; self.dim];
        v[i] = 1;
        v
    }

    pub fn mul(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        let d = self.dim;
        let p = self.p() as u64;
        let mut acc = vec![0u64; d];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj == 0 {
                    continue;
                }
                let s = (xi as u64 * yj as u64) % p;
                for (a, &c) in acc.iter_mut().zip(self.product(i, j)) {
                    if c != 0 {
                        *a = (*a + s * c as u64) % p;
                    }
                }
            }
        }
        acc.into_iter().map(|v| v as u32).collect()
    }

    pub fn add(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        x.iter().zip(y).map(|(&a, &b)| self.field.add(a, b)).collect()
    }

    /// Left multiplication matrices `L_{b_i}`: column `j` holds `b_i * b_j`.
    pub fn left_mult_basis(&self) -> &[FpMatrix] {
        self.cache.left_mult.get_or_init(|| {
            (0..self.dim)
                .map(|i| FpMatrix::from_fn(self.field, self.dim, self.dim, |k, j| self.product(i, j)[k]))
                .collect()
        })
    }

    pub fn left_mult(&self, x: &[u32]) -> FpMatrix {
        combine(self.field, self.dim, self.dim, self.left_mult_basis(), x)
    }

    pub fn right_mult(&self, x: &[u32]) -> FpMatrix {
        let cols: Vec<Vec<u32>> = (0..self.dim).map(|j| self.mul(&self.basis_vector(j), x)).collect();
        FpMatrix::from_columns(self.field, self.dim, &cols)
    }

    /// Builds and validates an algebra from a multiplication table.
    ///
    /// `products[i][j]` is the coordinate vector of `b_i * b_j`. When
    /// `idempotents` is `None`, the unit alone is used.
    pub fn from_table(
        field: Fp,
        labels: Vec<String>,
        products: &[Vec<Vec<i64>>],
        unit: &[i64],
        idempotents: Option<&[Vec<i64>]>,
    ) -> Result<Self, AlgebraError> {
        let d = labels.len();
        let bad = |m: String| AlgebraError::Malformed(m);
        if products.len() != d || unit.len() != d {
            return Err(bad(format!("expected {d} rows of products and a unit of length {d}")));
        }
        let mut table = Vec::with_capacity(d * d * d);
        for (i, row) in products.iter().enumerate() {
            if row.len() != d {
                return Err(bad(format!("products[{i}] has {} entries, expected {d}", row.len())));
            }
            for (j, v) in row.iter().enumerate() {
                if v.len() != d {
                    return Err(bad(format!("products[{i}][{j}] has length {}, expected {d}", v.len())));
                }
                table.extend(v.iter().map(|&c| field.from_i64(c)));
            }
        }
        let unit: Vec<u32> = unit.iter().map(|&c| field.from_i64(c)).collect();
        let idempotents = match idempotents {
            Some(es) => {
                let mut out = Vec::new();
                for e in es {
                    if e.len() != d {
                        return Err(bad("idempotent of wrong length".into()));
                    }
                    out.push(e.iter().map(|&c| field.from_i64(c)).collect());
                }
                out
            }
            None => vec![unit.clone()],
        };
        let alg = Algebra {
            field,
            dim: d,
            labels,
            table,
            unit,
            idempotents,
            path_lengths: None,
            presentation: None,
            cache: Cache::default(),
        };
        alg.validate()?;
        Ok(alg)
    }

    /// Trusted constructor for tables produced internally (e.g. endomorphism
    /// algebras, which are associative by construction).
    pub(crate) fn from_parts(
        field: Fp,
        labels: Vec<String>,
        table: Vec<u32>,
        unit: Vec<u32>,
        idempotents: Vec<Vec<u32>>,
    ) -> Self {
        let d = labels.len();
        assert_eq!(table.len(), d * d * d);
        Algebra {
            field,
            dim: d,
            labels,
            table,
            unit,
            idempotents,
            path_lengths: None,
            presentation: None,
            cache: Cache::default(),
        }
    }

    /// Checks associativity, the unit, and the idempotent axioms.
    pub fn validate(&self) -> Result<(), AlgebraError> {
        let d = self.dim;
        let f = self.field;
        if d == 0 {
            return Err(AlgebraError::Malformed("zero-dimensional algebra".into()));
        }
        // Unit.
        for i in 0..d {
            let b = self.basis_vector(i);
            if self.mul(&self.unit, &b) != b || self.mul(&b, &self.unit) != b {
                return Err(AlgebraError::BadUnit(self.labels[i].clone()));
            }
        }
        // Associativity: (b_i b_j) b_k = b_i (b_j b_k).
        let p = f.modulus() as u64;
        let mut lhs = vec![0u64; d];
        let mut rhs = vec![0u64; d];
        for i in 0..d {
            for j in 0..d {
                let ij = self.product(i, j);
                for k in 0..d {
                    lhs.iter_mut().for_each(|x| *x = 0);
                    rhs.iter_mut().for_each(|x| *x = 0);
                    for (l, &c) in ij.iter().enumerate() {
                        if c != 0 {
                            for (a, &t) in lhs.iter_mut().zip(self.product(l, k)) {
                                *a = (*a + c as u64 * t as u64) % p;
                            }
                        }
                    }
                    for (l, &c) in self.product(j, k).iter().enumerate() {
                        if c != 0 {
                            for (a, &t) in rhs.iter_mut().zip(self.product(i, l)) {
                                *a = (*a + c as u64 * t as u64) % p;
                            }
                        }
                    }
                    if lhs != rhs {
                        return Err(AlgebraError::NotAssociative(
                            self.labels[i].clone(),
                            self.labels[j].clone(),
                            self.labels[k].clone(),
                        ));
                    }
                }
            }
        }
        // Idempotents: complete and orthogonal.
        let mut sum = vec![0; d];
        for (a, e) in self.idempotents.iter().enumerate() {
            if e.iter().all(|&c| c == 0) {
                return Err(AlgebraError::BadIdempotents(format!("idempotent {a} is zero")));
            }
            for (b, e2) in self.idempotents.iter().enumerate() {
                let prod = self.mul(e, e2);
                let expect = if a == b { e.clone() } else { vec![0; d] };
                if prod != expect {
                    return Err(AlgebraError::BadIdempotents(format!(
                        "e{a} * e{b} should be {}",
                        if a == b { "e" } else { "0" }
                    )));
                }
            }
            sum = self.add(&sum, e);
        }
        if sum != self.unit {
            return Err(AlgebraError::BadIdempotents("idempotents do not sum to 1".into()));
        }
        Ok(())
    }

    /// The opposite algebra: `c'[i][j] = c[j][i]`, same unit and idempotents.
    pub fn opposite(&self) -> Algebra {
        let d = self.dim;
        let mut table = vec![0; d * d * d];
        for i in 0..d {
            for j in 0..d {
                table[(i * d + j) * d..(i * d + j + 1) * d].copy_from_slice(self.product(j, i));
            }
        }
        Algebra {
            field: self.field,
            dim: d,
            labels: self.labels.clone(),
            table,
            unit: self.unit.clone(),
            idempotents: self.idempotents.clone(),
            path_lengths: self.path_lengths.clone(),
            presentation: None,
            cache: self.cache.clone(),
        }
    }

    /// Shared, cached opposite algebra.
    pub fn opposite_arc(&self) -> Arc<Algebra> {
        self.cache.opposite.get_or_init(|| Arc::new(self.opposite())).clone()
    }

    /// Basis of the left ideal `A e_j` for each distinguished idempotent.
    pub fn projective_bases(&self) -> &[FpMatrix] {
        self.cache.projective_bases.get_or_init(|| {
            self.idempotents
                .iter()
                .map(|e| self.right_mult(e).column_basis())
                .collect()
        })
    }

    /// Peirce component `e_t x e_s`.
    pub fn peirce(&self, t: usize, x: &[u32], s: usize) -> Vec<u32> {
        let left = self.mul(&self.idempotents[t], x);
        self.mul(&left, &self.idempotents[s])
    }

    /// The Jacobson radical. Path-graded algebras use the arrow ideal; others
    /// the iterated trace-form algorithm. The result is always verified.
    pub fn radical(&self) -> &RadicalIdeal {
        self.cache.radical.get_or_init(|| {
            let basis = match &self.path_lengths {
                Some(lengths) => {
                    let cols: Vec<usize> = (0..self.dim).filter(|&i| lengths[i] > 0).collect();
                    FpMatrix::identity(self.field, self.dim).select_cols(&cols)
                }
                None => trace_form_radical(self),
            };
            let rad = RadicalIdeal { basis };
            if let Err(e) = verify_radical(self, &rad, true) {
                panic!("{e}");
            }
            rad
        })
    }

    /// Radical by the trace-form algorithm regardless of any path grading.
    pub fn radical_by_trace_form(&self) -> RadicalIdeal {
        RadicalIdeal {
            basis: trace_form_radical(self),
        }
    }

    /// Peirce-homogeneous elements that, with the idempotents, generate the algebra.
    pub fn generators(&self) -> &[Vec<u32>] {
        self.cache.generators.get_or_init(|| self.compute_generators())
    }

    /// For each generator `g`, the pair `(t, s)` with `g = e_t g e_s`.
    pub fn generator_pieces(&self) -> &[(usize, usize)] {
        self.cache.generator_pieces.get_or_init(|| {
            let r = self.idempotents.len();
            self.generators()
                .iter()
                .map(|g| {
                    (0..r)
                        .flat_map(|t| (0..r).map(move |s| (t, s)))
                        .find(|&(t, s)| self.peirce(t, g, s) == *g)
                        .expect("generators are Peirce-homogeneous")
                })
                .collect()
        })
    }

    fn compute_generators(&self) -> Vec<Vec<u32>> {
        let d = self.dim;
        let r = self.idempotents.len();
        if let Some(pres) = &self.presentation {
            // Arrows generate a path algebra.
            return (0..pres.quiver.arrows.len())
                .filter_map(|a| pres.arrow_basis_index(a))
                .map(|i| self.basis_vector(i))
                .collect();
        }
        let rad = self.radical().basis.clone();
        let mut candidates: Vec<Vec<u32>> = Vec::new();
        let sources = (0..rad.cols()).map(|c| rad.col_vec(c)).chain((0..d).map(|i| self.basis_vector(i)));
        for x in sources {
            for t in 0..r {
                for s in 0..r {
                    let c = self.peirce(t, &x, s);
                    if c.iter().any(|&v| v != 0) {
                        candidates.push(c);
                    }
                }
            }
        }
        let mut gens: Vec<Vec<u32>> = Vec::new();
        let mut closure = Span::new(self.field, d);
        let mut elements: Vec<Vec<u32>> = Vec::new();
        for e in &self.idempotents {
            if closure.insert(e) {
                elements.push(e.clone());
            }
        }
        let mut multipliers: Vec<Vec<u32>> = self.idempotents.clone();
        self.close_under(&mut closure, &mut elements, &multipliers);
        for c in candidates {
            if closure.dim() == d {
                break;
            }
            if closure.contains(&c) {
                continue;
            }
            gens.push(c.clone());
            multipliers.push(c.clone());
            if closure.insert(&c) {
                elements.push(c);
            }
            self.close_under(&mut closure, &mut elements, &multipliers);
        }
        gens
    }

    fn close_under(&self, closure: &mut Span, elements: &mut Vec<Vec<u32>>, multipliers: &[Vec<u32>]) {
        let mut i = 0;
        while i < elements.len() {
            let x = elements[i].clone();
            for g in multipliers {
                for prod in [self.mul(&x, g), self.mul(g, &x)] {
                    if closure.insert(&prod) {
                        elements.push(prod);
                    }
                }
            }
            i += 1;
        }
        // New multipliers may create products with old elements.
        let snapshot = elements.len();
        for i in 0..snapshot {
            let x = elements[i].clone();
            for g in multipliers {
                for prod in [self.mul(&x, g), self.mul(g, &x)] {
                    if closure.insert(&prod) {
                        elements.push(prod);
                    }
                }
            }
        }
        if elements.len() > snapshot {
            self.close_under(closure, elements, multipliers);
        }
    }

    /// The quotient `A / I` by a two-sided ideal given as coordinate columns.
    pub fn quotient(&self, ideal: &FpMatrix) -> Algebra {
        let d = self.dim;
        let f = self.field;
        // Complete the ideal basis to a basis of A; the complement indexes the quotient.
        let mut span = Span::new(f, d);
        for c in 0..ideal.cols() {
            span.insert(&ideal.col_vec(c));
        }
        let ideal_dim = span.dim();
        let mut complement = Vec::new();
        for i in 0..d {
            if span.insert(&self.basis_vector(i)) {
                complement.push(i);
            }
        }
        let q = complement.len();
        // Coordinates in [ideal | complement], keep the complement part.
        let mut full_cols: Vec<Vec<u32>> = (0..ideal.cols()).map(|c| ideal.col_vec(c)).collect();
        full_cols = {
            let mut s = Span::new(f, d);
            full_cols.into_iter().filter(|v| s.insert(v)).collect()
        };
        full_cols.extend(complement.iter().map(|&i| self.basis_vector(i)));
        let change = FpMatrix::from_columns(f, d, &full_cols)
            .inverse()
            .expect("ideal basis plus complement spans A");
        let project = |v: &[u32]| -> Vec<u32> { change.mul_vec(v)[ideal_dim..].to_vec() };
        let mut table = Vec::with_capacity(q * q * q);
        for &i in &complement {
            for &j in &complement {
                table.extend(project(self.product(i, j)));
            }
        }
        let unit = project(&self.unit);
        let idempotents: Vec<Vec<u32>> = self
            .idempotents
            .iter()
            .map(|e| project(e))
            .filter(|e| e.iter().any(|&c| c != 0))
            .collect();
        let labels = complement.iter().map(|&i| format!("[{}]", self.labels[i])).collect();
        Algebra::from_parts(f, labels, table, unit, idempotents)
    }
}

/// `sum_k x_k * mats[k]`.
pub(crate) fn combine(field: Fp, rows: usize, cols: usize, mats: &[FpMatrix], x: &[u32]) -> FpMatrix {
    let mut out = FpMatrix::zeros(field, rows, cols);
    for (m, &c) in mats.iter().zip(x) {
        out.add_scaled(c, m);
    }
    out
}

// ---------------------------------------------------------------------------
// Path algebras

type Poly = BTreeMap<Path, u32>;

struct Rule {
    lead: Vec<usize>,
    /// Replacement for the leading word (all terms strictly smaller).
    tail: Vec<(u32, Vec<usize>)>,
}

struct Rewriter<'a> {
    field: Fp,
    quiver: &'a Quiver,
    rules: Vec<Rule>,
}

fn find_sub(hay: &[usize], needle: &[usize]) -> Option<usize> {
    if needle.len() > hay.len() {
        return None;
    }
    (0..=hay.len() - needle.len()).find(|&i| &hay[i..i + needle.len()] == needle)
}

impl Rewriter<'_> {
    fn add_term(&self, poly: &mut Poly, path: Path, c: u32) {
        if c == 0 {
            return;
        }
        let e = poly.entry(path.clone()).or_insert(0);
        *e = self.field.add(*e, c);
        if *e == 0 {
            poly.remove(&path);
        }
    }

    fn reducible_at(&self, arrows: &[usize]) -> Option<(usize, usize)> {
        self.rules
            .iter()
            .enumerate()
            .find_map(|(r, rule)| find_sub(arrows, &rule.lead).map(|pos| (r, pos)))
    }

    /// Rewrites one occurrence of rule `r` at position `pos` in the term `path`.
    fn apply(&self, path: &Path, r: usize, pos: usize) -> Vec<(u32, Path)> {
        let rule = &self.rules[r];
        let (pre, rest) = path.arrows.split_at(pos);
        let post = &rest[rule.lead.len()..];
        rule.tail
            .iter()
            .map(|(c, mid)| {
                let mut arrows = pre.to_vec();
                arrows.extend_from_slice(mid);
                arrows.extend_from_slice(post);
                (*c, Path {
                    source: path.source,
                    arrows,
                })
            })
            .collect()
    }

    /// Normal form: repeatedly rewrite the largest reducible term.
    fn normal_form(&self, mut poly: Poly) -> Poly {
        loop {
            let target = poly
                .iter()
                .rev()
                .find_map(|(p, &c)| self.reducible_at(&p.arrows).map(|(r, pos)| (p.clone(), c, r, pos)));
            let Some((path, c, r, pos)) = target else {
                return poly;
            };
            poly.remove(&path);
            for (k, q) in self.apply(&path, r, pos) {
                self.add_term(&mut poly, q, self.field.mul(c, k));
            }
        }
    }

    fn word_path(&self, arrows: Vec<usize>) -> Path {
        let source = self.quiver.arrows[arrows[0]].source;
        Path { source, arrows }
    }

    /// Resolves every overlap and inclusion between leading words.
    fn check_confluence(&self, name: impl Fn(&Path) -> String) -> Result<(), AlgebraError> {
        for (i, ri) in self.rules.iter().enumerate() {
            for (j, rj) in self.rules.iter().enumerate() {
                let (a, b) = (&ri.lead, &rj.lead);
                let mut words: Vec<(Vec<usize>, usize)> = Vec::new();
                // Proper overlaps: a suffix of `a` equals a prefix of `b`.
                for k in 1..a.len().min(b.len()) {
                    if a[a.len() - k..] == b[..k] {
                        let mut w = a.clone();
                        w.extend_from_slice(&b[k..]);
                        words.push((w, a.len() - k));
                    }
                }
                // Inclusions: `b` strictly inside `a`.
                if i != j {
                    if let Some(pos) = find_sub(a, b) {
                        words.push((a.clone(), pos));
                    }
                }
                for (w, pos_b) in words {
                    let path = self.word_path(w);
                    let mut left = Poly::new();
                    for (c, q) in self.apply(&path, i, 0) {
                        self.add_term(&mut left, q, c);
                    }
                    let mut right = Poly::new();
                    for (c, q) in self.apply(&path, j, pos_b) {
                        self.add_term(&mut right, q, c);
                    }
                    if self.normal_form(left) != self.normal_form(right) {
                        return Err(AlgebraError::NonConfluent { path: name(&path) });
                    }
                }
            }
        }
        Ok(())
    }
}

fn path_label(q: &Quiver, p: &Path) -> String {
    if p.arrows.is_empty() {
        format!("e_{}", q.vertices[p.source])
    } else {
        p.arrows.iter().map(|&a| q.arrows[a].name.as_str()).collect::<Vec<_>>().join("*")
    }
}

impl Algebra {
    /// Path algebra of `quiver` modulo the two-sided ideal of `relations`.
    ///
    /// Basis: paths that contain no leading word of a relation (deg-lex order,
    /// arrows compared by declaration order). Fails if an irreducible path
    /// reaches `length_bound` or if two rewriting routes disagree.
    pub fn from_quiver(
        quiver: Quiver,
        relations: Vec<Relation>,
        field: Fp,
        length_bound: usize,
    ) -> Result<Self, AlgebraError> {
        let mut rules = Vec::new();
        for (index, rel) in relations.iter().enumerate() {
            let bad = |reason: String| AlgebraError::NonAdmissible { index, reason };
            let mut poly: BTreeMap<Path, u32> = BTreeMap::new();
            let mut ends: Option<(usize, usize)> = None;
            for (coeff, names) in &rel.terms {
                if names.len() < 2 {
                    return Err(bad(format!("path {names:?} has length < 2")));
                }
                let mut arrows = Vec::with_capacity(names.len());
                for n in names {
                    arrows.push(quiver.arrow_index(n).ok_or_else(|| bad(format!("unknown arrow `{n}`")))?);
                }
                for w in arrows.windows(2) {
                    if quiver.arrows[w[0]].target != quiver.arrows[w[1]].source {
                        return Err(bad(format!("path {names:?} is not composable")));
                    }
                }
                let s = quiver.arrows[arrows[0]].source;
                let t = quiver.arrows[*arrows.last().unwrap()].target;
                match ends {
                    None => ends = Some((s, t)),
                    Some(e) if e != (s, t) => {
                        return Err(bad("paths do not share source and target".into()));
                    }
                    _ => {}
                }
                let e = poly.entry(Path { source: s, arrows }).or_insert(0);
                *e = field.add(*e, field.from_i64(*coeff));
            }
            poly.retain(|_, c| *c != 0);
            let Some((lead, &lc)) = poly.iter().next_back() else {
                continue;
            };
            let lead = lead.clone();
            let inv = field.inv(lc);
            let tail = poly
                .iter()
                .filter(|(p, _)| **p != lead)
                .map(|(p, &c)| (field.neg(field.mul(c, inv)), p.arrows.clone()))
                .collect();
            rules.push(Rule {
                lead: lead.arrows,
                tail,
            });
        }
        let rw = Rewriter {
            field,
            quiver: &quiver,
            rules,
        };
        rw.check_confluence(|p| path_label(&quiver, p))?;

        // Enumerate irreducible paths level by level; they are closed under prefixes.
        let mut basis: Vec<Path> = (0..quiver.vertices.len())
            .map(|v| Path {
                source: v,
                arrows: vec![],
            })
            .collect();
        let mut frontier = basis.clone();
        let mut length = 0;
        while !frontier.is_empty() {
            length += 1;
            let mut next = Vec::new();
            for p in &frontier {
                let end = p.arrows.last().map(|&a| quiver.arrows[a].target).unwrap_or(p.source);
                for (ai, arrow) in quiver.arrows.iter().enumerate() {
                    if arrow.source != end {
                        continue;
                    }
                    let mut arrows = p.arrows.clone();
                    arrows.push(ai);
                    let reducible = rw.rules.iter().any(|r| arrows.ends_with(&r.lead));
                    if !reducible {
                        let q = Path {
                            source: p.source,
                            arrows,
                        };
                        if length >= length_bound {
                            return Err(AlgebraError::LengthBound {
                                path: path_label(&quiver, &q),
                                bound: length_bound,
                            });
                        }
                        next.push(q);
                    }
                }
            }
            next.sort();
            basis.extend(next.iter().cloned());
            frontier = next;
        }
        basis.sort();
        let index: HashMap<Path, usize> = basis.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let d = basis.len();
        let target_of = |p: &Path| p.arrows.last().map(|&a| quiver.arrows[a].target).unwrap_or(p.source);
        let mut table = vec![0u32; d * d * d];
        for (i, bi) in basis.iter().enumerate() {
            for (j, bj) in basis.iter().enumerate() {
                // b_i * b_j: b_j first, then b_i.
                if target_of(bj) != bi.source {
                    continue;
                }
                let mut arrows = bj.arrows.clone();
                arrows.extend_from_slice(&bi.arrows);
                let prod = Path {
                    source: bj.source,
                    arrows,
                };
                let mut poly = Poly::new();
                poly.insert(prod, 1);
                for (path, c) in rw.normal_form(poly) {
                    let k = index[&path];
                    table[(i * d + j) * d + k] = c;
                }
            }
        }
        let vertex_idx: Vec<usize> = (0..quiver.vertices.len())
            .map(|v| {
                index[&Path {
                    source: v,
                    arrows: vec![],
                }]
            })
            .collect();
        let mut unit = vec![0; d];
        let idempotents = vertex_idx
            .iter()
            .map(|&k| {
                unit[k] = 1;
                let mut e = vec![0; d];
                e[k] = 1;
                e
            })
            .collect();
        let labels = basis.iter().map(|p| path_label(&quiver, p)).collect();
        let path_lengths = Some(basis.iter().map(|p| p.arrows.len()).collect());
        let alg = Algebra {
            field,
            dim: d,
            labels,
            table,
            unit,
            idempotents,
            path_lengths,
            presentation: Some(Arc::new(QuiverPresentation {
                quiver,
                relations,
                length_bound,
                basis_paths: basis,
            })),
            cache: Cache::default(),
        };
        alg.validate()?;
        Ok(alg)
    }
}

// ---------------------------------------------------------------------------
// Radical

/// Integer lift of a GF(p) matrix raised to `exp`, modulo `q`.
fn int_matrix_pow_trace(m: &FpMatrix, exp: u64, q: u64) -> u64 {
    let n = m.rows();
    let mul = |a: &[u64], b: &[u64]| -> Vec<u64> {
        let mut out = vec![0u64; n * n];
        for i in 0..n {
            for k in 0..n {
                let x = a[i * n + k];
                if x == 0 {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] = (out[i * n + j] + x * b[k * n + j]) % q;
                }
            }
        }
        out
    };
    let mut base: Vec<u64> = m.data().iter().map(|&v| v as u64 % q).collect();
    let mut acc: Vec<u64> = (0..n * n).map(|i| u64::from(i / n == i % n)).collect();
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(&acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mul(&base, &base);
        }
    }
    (0..n).map(|i| acc[i * n + i]).sum::<u64>() % q
}

/// Iterated trace-form radical for algebras over a prime field.
///
/// `I_0 = {x : Tr(L_{xy}) = 0 for all y}` and, for `1 <= i <= log_p(d)`,
/// `I_i = {x in I_{i-1} : g_i(xy) = 0 for all y}` where
/// `g_i(z) = (Tr(Z^{p^i}) mod p^{i+1}) / p^i` for an integer lift `Z` of the
/// regular representation of `z`. Each `g_i` is linear on `I_{i-1}`, and the
/// last ideal is the radical.
fn trace_form_radical(alg: &Algebra) -> FpMatrix {
    let f = alg.field();
    let d = alg.dim();
    let p = f.modulus() as u64;
    let lm = alg.left_mult_basis();
    let traces: Vec<u32> = lm
        .iter()
        .map(|m| (0..d).fold(0, |acc, i| f.add(acc, m.get(i, i))))
        .collect();
    let trace = |z: &[u32]| z.iter().zip(&traces).fold(0, |acc, (&a, &t)| f.add(acc, f.mul(a, t)));

    // I_0 as a kernel: rows indexed by y, columns by x.
    let gram = FpMatrix::from_fn(f, d, d, |y, x| trace(alg.product(x, y)));
    let mut ideal = gram.kernel_basis();

    let mut pk = p;
    while pk <= d as u64 && ideal.cols() > 0 {
        let q = pk * p;
        // g_i is linear on the previous ideal, so evaluate it on a basis only.
        let zs: Vec<Vec<u32>> = (0..ideal.cols()).map(|c| ideal.col_vec(c)).collect();
        let g_on_basis: Vec<u32> = crate::par::map(&zs, |z| {
            let t = int_matrix_pow_trace(&combine(f, d, d, lm, z), pk, q);
            debug_assert_eq!(t % pk, 0, "trace of a p^i-th power lies in p^i Z");
            ((t / pk) % p) as u32
        });
        let coords = crate::matrix::Coordinates::new(ideal.clone());
        let g = FpMatrix::from_fn(f, d, zs.len(), |y, x| {
            let prod = alg.mul(&zs[x], &alg.basis_vector(y));
            let c = coords.coords_unchecked(&prod);
            c.iter().zip(&g_on_basis).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
        });
        ideal = ideal.mul(&g.kernel_basis());
        pk *= p;
    }
    ideal
}

/// J is a nilpotent two-sided ideal and `A/J` has zero radical.
pub fn verify_radical(alg: &Algebra, rad: &RadicalIdeal, check_quotient: bool) -> Result<(), AlgebraError> {
    let f = alg.field();
    let d = alg.dim();
    let fail = |m: &str| AlgebraError::RadicalVerification(m.to_string());
    let jb: Vec<Vec<u32>> = (0..rad.dim()).map(|c| rad.basis.col_vec(c)).collect();
    let mut span = Span::new(f, d);
    for v in &jb {
        span.insert(v);
    }
    if span.dim() != jb.len() {
        return Err(fail("radical basis is dependent"));
    }
    for v in &jb {
        for i in 0..d {
            let b = alg.basis_vector(i);
            if !span.contains(&alg.mul(v, &b)) || !span.contains(&alg.mul(&b, v)) {
                return Err(fail("not a two-sided ideal"));
            }
        }
    }
    // Nilpotency: J^k shrinks to zero within d steps.
    let mut power = jb.clone();
    for _ in 0..=d {
        if power.is_empty() {
            break;
        }
        let mut next = Span::new(f, d);
        for x in &power {
            for y in &jb {
                next.insert(&alg.mul(x, y));
            }
        }
        if next.dim() == power.len() {
            return Err(fail("not nilpotent"));
        }
        power = next.basis().to_vec();
    }
    if !power.is_empty() {
        return Err(fail("not nilpotent"));
    }
    if check_quotient && rad.dim() < d {
        let quotient = alg.quotient(&rad.basis);
        let qrad = trace_form_radical(&quotient);
        if qrad.cols() != 0 {
            return Err(fail("quotient by the computed ideal is not semisimple"));
        }
    }
    Ok(())
}
