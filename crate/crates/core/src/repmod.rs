//! Finite-dimensional modules (quiver representations) and their morphisms.
//!
//! Hom spaces are solved exactly from the commuting-square equations. Direct
//! sum decompositions use Fitting's lemma on endomorphisms found by a
//! deterministic search of the endomorphism algebra.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{neg_mod, rank_of_vectors, Matrix};
use crate::quiver::{self, Algebra};

/// Endomorphism algebras with at most this many elements are searched exhaustively.
pub const END_EXHAUSTIVE_LIMIT: u64 = 4096;
/// Hom spaces with at most this many elements are searched exhaustively for isomorphisms.
pub const ISO_EXHAUSTIVE_LIMIT: u64 = 65536;
/// Number of seeded random samples drawn from spaces too large to exhaust.
pub const RANDOM_BUDGET: usize = 4096;
/// Largest number of Ext classes walked by `extension_middle_terms`.
pub const EXTENSION_CLASS_LIMIT: u64 = 65536;

static SEARCH_SEED: AtomicU64 = AtomicU64::new(0);

/// Seed for the sampled branches of the decomposition and isomorphism searches.
pub fn set_search_seed(seed: u64) {
    SEARCH_SEED.store(seed, Ordering::Relaxed);
}

pub fn search_seed() -> u64 {
    SEARCH_SEED.load(Ordering::Relaxed)
}

fn check_same_algebra(a: &Arc<Algebra>, b: &Arc<Algebra>) -> Result<()> {
    if Arc::ptr_eq(a, b) {
        Ok(())
    } else {
        Err(Error::AlgebraMismatch)
    }
}

/// A representation: a vector space per vertex and a matrix per arrow.
#[derive(Clone)]
pub struct Module {
    alg: Arc<Algebra>,
    dims: Vec<usize>,
    action: Vec<Matrix>,
}

impl fmt::Debug for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Module{:?}", self.dims)?;
        f.debug_list().entries(self.action.iter()).finish()
    }
}

impl Module {
    pub fn new(alg: Arc<Algebra>, dims: Vec<usize>, action: Vec<Matrix>) -> Result<Self> {
        let m = Self::new_unchecked(alg, dims, action)?;
        if !m.satisfies_relations() {
            return Err(Error::InvalidModule("a relation does not act as zero".into()));
        }
        Ok(m)
    }

    /// Checks shapes but not relations.
    pub(crate) fn new_unchecked(alg: Arc<Algebra>, dims: Vec<usize>, action: Vec<Matrix>) -> Result<Self> {
        if dims.len() != alg.num_vertices() {
            return Err(Error::InvalidModule(format!("{} dimensions for {} vertices", dims.len(), alg.num_vertices())));
        }
        if action.len() != alg.arrows().len() {
            return Err(Error::InvalidModule(format!("{} matrices for {} arrows", action.len(), alg.arrows().len())));
        }
        for (a, m) in alg.arrows().iter().zip(&action) {
            if m.shape() != (dims[a.target], dims[a.source]) || m.modulus() != alg.field() {
                return Err(Error::InvalidModule(format!("arrow `{}` has a matrix of the wrong shape", a.name)));
            }
        }
        Ok(Self { alg, dims, action })
    }

    pub fn zero(alg: &Arc<Algebra>) -> Self {
        let dims = vec![0; alg.num_vertices()];
        let action = alg.arrows().iter().map(|_| Matrix::zeros(0, 0, alg.field())).collect();
        Self { alg: alg.clone(), dims, action }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn field(&self) -> u64 {
        self.alg.field()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn action(&self) -> &[Matrix] {
        &self.action
    }

    /// Matrix of a path (travel order) starting at `source`.
    pub fn path_matrix(&self, source: usize, arrows: &[usize]) -> Matrix {
        let mut acc = Matrix::identity(self.dims[source], self.field());
        for &a in arrows {
            acc = self.action[a].mul(&acc);
        }
        acc
    }

    /// Applies a path to a vector living at the path's start vertex.
    pub fn apply_path(&self, arrows: &[usize], v: &[u64]) -> Vec<u64> {
        let p = self.field();
        let mut cur = v.to_vec();
        for &a in arrows {
            let m = &self.action[a];
            let mut next = vec![0u64; m.rows()];
            for (r, out) in next.iter_mut().enumerate() {
                let row = m.row(r);
                *out = row.iter().zip(&cur).fold(0, |acc, (&x, &y)| (acc + x * y) % p);
            }
            cur = next;
        }
        cur
    }

    pub fn satisfies_relations(&self) -> bool {
        let p = self.field();
        self.alg.spec().relations.iter().all(|rel| {
            let first = &self.alg.arrows()[rel[0].path[0]];
            let last = &self.alg.arrows()[*rel[0].path.last().unwrap()];
            let mut acc = Matrix::zeros(self.dims[last.target], self.dims[first.source], p);
            for t in rel {
                acc.add_scaled_assign(t.coef, &self.path_matrix(first.source, &t.path));
            }
            acc.is_zero()
        })
    }

    /// Direct sum in the given order.
    pub fn direct_sum(alg: &Arc<Algebra>, parts: &[&Module]) -> Result<Module> {
        for m in parts {
            check_same_algebra(alg, &m.alg)?;
        }
        let n = alg.num_vertices();
        let dims: Vec<usize> = (0..n).map(|v| parts.iter().map(|m| m.dims[v]).sum()).collect();
        let action = (0..alg.arrows().len())
            .map(|a| {
                let blocks: Vec<&Matrix> = parts.iter().map(|m| &m.action[a]).collect();
                Matrix::block_diag(&blocks, alg.field())
            })
            .collect();
        Ok(Module { alg: alg.clone(), dims, action })
    }

    /// Canonical injections and projections of a direct sum built by `direct_sum`.
    pub fn sum_structure_maps(sum: &Module, parts: &[&Module]) -> (Vec<ModuleMap>, Vec<ModuleMap>) {
        let p = sum.field();
        let n = sum.dims.len();
        let mut offsets = vec![0usize; n];
        let mut inj = Vec::new();
        let mut proj = Vec::new();
        for m in parts {
            let mut ic = Vec::with_capacity(n);
            let mut pc = Vec::with_capacity(n);
            for v in 0..n {
                let mut i = Matrix::zeros(sum.dims[v], m.dims[v], p);
                i.paste(offsets[v], 0, &Matrix::identity(m.dims[v], p));
                pc.push(i.transpose());
                ic.push(i);
                offsets[v] += m.dims[v];
            }
            inj.push(ModuleMap { source: (*m).clone(), target: sum.clone(), comps: ic });
            proj.push(ModuleMap { source: sum.clone(), target: (*m).clone(), comps: pc });
        }
        (inj, proj)
    }

    /// Per-vertex basis (as columns) of the radical, the sum of all arrow images.
    pub fn radical_basis(&self) -> Vec<Matrix> {
        let p = self.field();
        (0..self.dims.len())
            .map(|v| {
                let mut acc = Matrix::zeros(self.dims[v], 0, p);
                for (a, arrow) in self.alg.arrows().iter().enumerate() {
                    if arrow.target == v {
                        acc = acc.hstack(&self.action[a]);
                    }
                }
                acc.column_space_basis()
            })
            .collect()
    }

    /// Dimension vector of the top `M / rad M`.
    pub fn top_dims(&self) -> Vec<usize> {
        self.radical_basis().iter().zip(&self.dims).map(|(r, &d)| d - r.cols()).collect()
    }

    pub fn is_projective(&self) -> bool {
        minimal_presentation(self).p1.is_empty()
    }
}

/// A homomorphism of representations, one matrix per vertex.
#[derive(Clone)]
pub struct ModuleMap {
    source: Module,
    target: Module,
    comps: Vec<Matrix>,
}

impl fmt::Debug for ModuleMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModuleMap{:?}->{:?}", self.source.dims, self.target.dims)?;
        f.debug_list().entries(self.comps.iter()).finish()
    }
}

impl ModuleMap {
    pub fn new(source: Module, target: Module, comps: Vec<Matrix>) -> Result<Self> {
        check_same_algebra(&source.alg, &target.alg)?;
        let map = Self::new_unchecked(source, target, comps);
        if map.comps.len() != map.source.dims.len() {
            return Err(Error::InvalidMap("wrong number of components".into()));
        }
        for (v, c) in map.comps.iter().enumerate() {
            if c.shape() != (map.target.dims[v], map.source.dims[v]) {
                return Err(Error::InvalidMap(format!("component at vertex {v} has the wrong shape")));
            }
        }
        for (a, arrow) in map.source.alg.arrows().iter().enumerate() {
            let lhs = map.comps[arrow.target].mul(&map.source.action[a]);
            let rhs = map.target.action[a].mul(&map.comps[arrow.source]);
            if lhs != rhs {
                return Err(Error::InvalidMap(format!("square for arrow `{}` does not commute", arrow.name)));
            }
        }
        Ok(map)
    }

    pub(crate) fn new_unchecked(source: Module, target: Module, comps: Vec<Matrix>) -> Self {
        Self { source, target, comps }
    }

    pub fn zero(source: &Module, target: &Module) -> Self {
        let p = source.field();
        let comps = (0..source.dims.len()).map(|v| Matrix::zeros(target.dims[v], source.dims[v], p)).collect();
        Self { source: source.clone(), target: target.clone(), comps }
    }

    pub fn identity(m: &Module) -> Self {
        let p = m.field();
        let comps = m.dims.iter().map(|&d| Matrix::identity(d, p)).collect();
        Self { source: m.clone(), target: m.clone(), comps }
    }

    pub fn source(&self) -> &Module {
        &self.source
    }

    pub fn target(&self) -> &Module {
        &self.target
    }

    pub fn comps(&self) -> &[Matrix] {
        &self.comps
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &ModuleMap) -> ModuleMap {
        debug_assert_eq!(inner.target.dims, self.source.dims);
        let comps = self.comps.iter().zip(&inner.comps).map(|(a, b)| a.mul(b)).collect();
        ModuleMap { source: inner.source.clone(), target: self.target.clone(), comps }
    }

    pub fn add(&self, other: &ModuleMap) -> ModuleMap {
        let comps = self.comps.iter().zip(&other.comps).map(|(a, b)| a.add(b)).collect();
        ModuleMap { source: self.source.clone(), target: self.target.clone(), comps }
    }

    pub fn scale(&self, s: u64) -> ModuleMap {
        let comps = self.comps.iter().map(|a| a.scale(s)).collect();
        ModuleMap { source: self.source.clone(), target: self.target.clone(), comps }
    }

    pub fn neg(&self) -> ModuleMap {
        let comps = self.comps.iter().map(Matrix::neg).collect();
        ModuleMap { source: self.source.clone(), target: self.target.clone(), comps }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Matrix::is_zero)
    }

    pub fn is_invertible(&self) -> bool {
        self.comps.iter().all(Matrix::is_invertible)
    }

    /// Only meaningful for endomorphisms.
    pub fn is_nilpotent(&self) -> bool {
        self.comps.iter().all(Matrix::is_nilpotent)
    }

    pub fn pow(&self, e: u32) -> ModuleMap {
        let comps = self.comps.iter().map(|c| c.pow(e)).collect();
        ModuleMap { source: self.source.clone(), target: self.target.clone(), comps }
    }

    /// All entries, vertex by vertex, row-major.
    pub fn vectorize(&self) -> Vec<u64> {
        self.comps.iter().flat_map(|c| c.data().iter().copied()).collect()
    }

    pub fn vector_len(&self) -> usize {
        self.comps.iter().map(|c| c.rows() * c.cols()).sum()
    }
}

/// `Σ coefs[i] * maps[i]`; all maps share source and target.
pub fn linear_combination(maps: &[ModuleMap], coefs: &[u64]) -> ModuleMap {
    assert!(!maps.is_empty() && maps.len() == coefs.len());
    let mut comps: Vec<Matrix> = maps[0].comps.iter().map(|c| Matrix::zeros(c.rows(), c.cols(), c.modulus())).collect();
    for (m, &c) in maps.iter().zip(coefs) {
        if c == 0 {
            continue;
        }
        for (acc, x) in comps.iter_mut().zip(&m.comps) {
            acc.add_scaled_assign(c, x);
        }
    }
    ModuleMap { source: maps[0].source.clone(), target: maps[0].target.clone(), comps }
}

/// Rank of a family of maps in a common Hom space.
pub fn span_rank(maps: &[ModuleMap]) -> usize {
    match maps.first() {
        None => 0,
        Some(m) => {
            let vecs: Vec<Vec<u64>> = maps.iter().map(ModuleMap::vectorize).collect();
            rank_of_vectors(&vecs, m.vector_len(), m.source.field())
        }
    }
}

/// Walks coefficient vectors of a `dim`-dimensional space over GF(p): every
/// nonzero vector when there are at most `limit` of them, otherwise the unit
/// vectors followed by `RANDOM_BUDGET` seeded samples. Stops when `visit`
/// returns true, and reports whether it did.
pub(crate) fn search_coefficients(
    dim: usize,
    p: u64,
    limit: u64,
    random_first: usize,
    mut visit: impl FnMut(&[u64]) -> bool,
) -> bool {
    if dim == 0 {
        return false;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(search_seed() ^ (dim as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let mut coefs = vec![0u64; dim];
    for _ in 0..random_first {
        coefs.iter_mut().for_each(|c| *c = rng.gen_range(0..p));
        if visit(&coefs) {
            return true;
        }
    }
    let total = (p as u128).checked_pow(dim as u32).unwrap_or(u128::MAX);
    if total <= limit as u128 {
        coefs.iter_mut().for_each(|c| *c = 0);
        loop {
            // little-endian counter over GF(p)^dim
            let mut i = 0;
            loop {
                if i == dim {
                    return false;
                }
                coefs[i] += 1;
                if coefs[i] == p {
                    coefs[i] = 0;
                    i += 1;
                } else {
                    break;
                }
            }
            if visit(&coefs) {
                return true;
            }
        }
    }
    for i in 0..dim {
        coefs.iter_mut().for_each(|c| *c = 0);
        coefs[i] = 1;
        if visit(&coefs) {
            return true;
        }
    }
    for _ in 0..RANDOM_BUDGET {
        coefs.iter_mut().for_each(|c| *c = rng.gen_range(0..p));
        if visit(&coefs) {
            return true;
        }
    }
    false
}

/// Basis of `Hom(m, n)`.
pub fn hom_basis(m: &Module, n: &Module) -> Result<Vec<ModuleMap>> {
    check_same_algebra(&m.alg, &n.alg)?;
    Ok(hom_basis_unchecked(m, n))
}

pub(crate) fn hom_basis_unchecked(m: &Module, n: &Module) -> Vec<ModuleMap> {
    let p = m.field();
    let nv = m.dims.len();
    let mut offsets = Vec::with_capacity(nv);
    let mut nvars = 0;
    for v in 0..nv {
        offsets.push(nvars);
        nvars += n.dims[v] * m.dims[v];
    }
    if nvars == 0 {
        return Vec::new();
    }
    let var = |v: usize, r: usize, c: usize| offsets[v] + r * m.dims[v] + c;
    let mut rows: Vec<Vec<u64>> = Vec::new();
    for (a, arrow) in m.alg.arrows().iter().enumerate() {
        let (s, t) = (arrow.source, arrow.target);
        let (ma, na) = (&m.action[a], &n.action[a]);
        // (phi_t * M_a - N_a * phi_s)[r, c] = 0
        for r in 0..n.dims[t] {
            for c in 0..m.dims[s] {
                let mut row = vec![0u64; nvars];
                for k in 0..m.dims[t] {
                    let x = ma.get(k, c);
                    if x != 0 {
                        let i = var(t, r, k);
                        row[i] = (row[i] + x) % p;
                    }
                }
                for k in 0..n.dims[s] {
                    let x = na.get(r, k);
                    if x != 0 {
                        let i = var(s, k, c);
                        row[i] = (row[i] + neg_mod(x, p)) % p;
                    }
                }
                if row.iter().any(|&x| x != 0) {
                    rows.push(row);
                }
            }
        }
    }
    let kernel = if rows.is_empty() {
        Matrix::identity(nvars, p)
    } else {
        let data = rows.iter().flatten().copied().collect();
        Matrix::from_vec(rows.len(), nvars, p, data).kernel_basis()
    };
    (0..kernel.cols())
        .map(|j| {
            let comps = (0..nv)
                .map(|v| {
                    let data = (0..n.dims[v] * m.dims[v]).map(|i| kernel.get(offsets[v] + i, j)).collect();
                    Matrix::from_vec(n.dims[v], m.dims[v], p, data)
                })
                .collect();
            ModuleMap { source: m.clone(), target: n.clone(), comps }
        })
        .collect()
}

pub fn hom_dim(m: &Module, n: &Module) -> Result<usize> {
    Ok(hom_basis(m, n)?.len())
}

/// Submodule spanned at each vertex by the columns of `bases` (assumed invariant, full column rank).
pub fn submodule(m: &Module, bases: Vec<Matrix>) -> (Module, ModuleMap) {
    let p = m.field();
    let left_inverses: Vec<Matrix> = bases
        .iter()
        .map(|b| {
            let sol = b.transpose().solve_right(&Matrix::identity(b.cols(), p)).expect("basis has full column rank");
            sol.particular.transpose()
        })
        .collect();
    let action = m
        .alg
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, arrow)| left_inverses[arrow.target].mul(&m.action[a]).mul(&bases[arrow.source]))
        .collect();
    let dims = bases.iter().map(Matrix::cols).collect();
    let sub = Module { alg: m.alg.clone(), dims, action };
    let incl = ModuleMap { source: sub.clone(), target: m.clone(), comps: bases };
    (sub, incl)
}

/// Quotient of `m` by the invariant subspaces spanned by the columns of `bases`.
pub fn quotient(m: &Module, bases: &[Matrix]) -> (Module, ModuleMap) {
    let p = m.field();
    let projections: Vec<Matrix> = bases
        .iter()
        .zip(&m.dims)
        .map(|(b, &d)| if b.cols() == 0 { Matrix::identity(d, p) } else { b.left_kernel() })
        .collect();
    let right_inverses: Vec<Matrix> = projections
        .iter()
        .map(|q| q.solve_right(&Matrix::identity(q.rows(), p)).expect("projection has full row rank").particular)
        .collect();
    let action = m
        .alg
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, arrow)| projections[arrow.target].mul(&m.action[a]).mul(&right_inverses[arrow.source]))
        .collect();
    let dims = projections.iter().map(Matrix::rows).collect();
    let q = Module { alg: m.alg.clone(), dims, action };
    let proj = ModuleMap { source: m.clone(), target: q.clone(), comps: projections };
    (q, proj)
}

/// Kernel with its inclusion.
pub fn kernel(f: &ModuleMap) -> (Module, ModuleMap) {
    let bases = f.comps.iter().map(Matrix::kernel_basis).collect();
    submodule(&f.source, bases)
}

/// Image with its inclusion into the target.
pub fn image(f: &ModuleMap) -> (Module, ModuleMap) {
    let bases = f.comps.iter().map(Matrix::column_space_basis).collect();
    submodule(&f.target, bases)
}

/// Cokernel with its projection from the target.
pub fn cokernel(f: &ModuleMap) -> (Module, ModuleMap) {
    let bases: Vec<Matrix> = f.comps.iter().map(Matrix::column_space_basis).collect();
    quotient(&f.target, &bases)
}

/// An endomorphism that is neither nilpotent nor invertible, if the search finds one.
pub fn find_splitting_endomorphism(m: &Module) -> Option<ModuleMap> {
    if m.is_zero() {
        return None;
    }
    let end = hom_basis_unchecked(m, m);
    if end.len() <= 1 {
        return None;
    }
    let mut found = None;
    search_coefficients(end.len(), m.field(), END_EXHAUSTIVE_LIMIT, 0, |c| {
        let f = linear_combination(&end, c);
        if !f.is_invertible() && !f.is_nilpotent() {
            found = Some(f);
            true
        } else {
            false
        }
    });
    found
}

pub fn is_indecomposable(m: &Module) -> bool {
    !m.is_zero() && find_splitting_endomorphism(m).is_none()
}

fn split_fully(m: &Module, out: &mut Vec<Module>) {
    if m.is_zero() {
        return;
    }
    match find_splitting_endomorphism(m) {
        None => out.push(m.clone()),
        Some(f) => {
            // Fitting: m = ker f^N ⊕ im f^N
            let g = f.pow(m.total_dim() as u32);
            split_fully(&kernel(&g).0, out);
            split_fully(&image(&g).0, out);
        }
    }
}

/// Indecomposable summands with repetition.
pub fn indecomposable_summands(m: &Module) -> Vec<Module> {
    let mut out = Vec::new();
    split_fully(m, &mut out);
    out
}

/// Indecomposable summands grouped up to isomorphism, with multiplicities.
pub fn decompose(m: &Module) -> Result<Vec<(Module, usize)>> {
    let summands = indecomposable_summands(m);
    if summands.iter().map(Module::total_dim).sum::<usize>() != m.total_dim() {
        return Err(Error::DecompositionFailure(m.total_dim()));
    }
    let mut groups: Vec<(Module, usize)> = Vec::new();
    for s in summands {
        match groups.iter_mut().find(|(g, _)| is_isomorphic(g, &s)) {
            Some((_, k)) => *k += 1,
            None => groups.push((s, 1)),
        }
    }
    Ok(groups)
}

/// Decides isomorphism by searching `Hom(m, n)` for an invertible element.
pub fn is_isomorphic(m: &Module, n: &Module) -> bool {
    if !Arc::ptr_eq(&m.alg, &n.alg) || m.dims != n.dims {
        return false;
    }
    if m.is_zero() {
        return true;
    }
    let h = hom_basis_unchecked(m, n);
    if h.is_empty() {
        return false;
    }
    if hom_basis_unchecked(m, m).len() != h.len()
        || hom_basis_unchecked(n, n).len() != h.len()
        || hom_basis_unchecked(n, m).len() != h.len()
    {
        return false;
    }
    search_coefficients(h.len(), m.field(), ISO_EXHAUSTIVE_LIMIT, 32, |c| linear_combination(&h, c).is_invertible())
}

/// Direct sum of indecomposable projectives `P_{v_0} ⊕ P_{v_1} ⊕ ...` in the listed order.
#[derive(Clone)]
pub struct ProjSum {
    vertices: Vec<usize>,
    module: Module,
}

impl fmt::Debug for ProjSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ProjSum{:?}", self.vertices)
    }
}

impl ProjSum {
    pub fn new(alg: &Arc<Algebra>, vertices: Vec<usize>) -> Result<Self> {
        let parts = vertices.iter().map(|&v| quiver::projective(alg, v)).collect::<Result<Vec<_>>>()?;
        let refs: Vec<&Module> = parts.iter().collect();
        let module = Module::direct_sum(alg, &refs)?;
        Ok(Self { vertices, module })
    }

    /// `P_i^{m_i}` in vertex order.
    pub fn from_multiplicities(alg: &Arc<Algebra>, mults: &[usize]) -> Result<Self> {
        let vertices = mults.iter().enumerate().flat_map(|(v, &k)| std::iter::repeat_n(v, k)).collect();
        Self::new(alg, vertices)
    }

    pub fn empty(alg: &Arc<Algebra>) -> Self {
        Self { vertices: Vec::new(), module: Module::zero(alg) }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn module(&self) -> &Module {
        &self.module
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.module.alg
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0; self.module.alg.num_vertices()];
        for &v in &self.vertices {
            m[v] += 1;
        }
        m
    }

    pub fn concat(&self, other: &ProjSum) -> Result<ProjSum> {
        let mut vertices = self.vertices.clone();
        vertices.extend(&other.vertices);
        ProjSum::new(&self.module.alg, vertices)
    }

    /// Row offset of summand `k` inside the space at vertex `j`.
    pub(crate) fn offset(&self, k: usize, j: usize) -> usize {
        let alg = &self.module.alg;
        self.vertices[..k].iter().map(|&v| alg.paths_between(v, j).len()).sum()
    }

    /// Coordinates, inside the space at vertex `v_k`, of the generator `e_{v_k}` of summand `k`.
    pub fn generator(&self, k: usize) -> Vec<u64> {
        let v = self.vertices[k];
        let p = self.module.field();
        let mut out = vec![0u64; self.module.dims[v]];
        out[self.offset(k, v)] = 1 % p;
        out
    }

    /// The map sending the generator of summand `k` to `elements[k] ∈ target_{v_k}`.
    pub fn map_to(&self, target: &Module, elements: &[Vec<u64>]) -> ModuleMap {
        assert_eq!(elements.len(), self.vertices.len());
        let alg = &self.module.alg;
        let p = alg.field();
        let comps = (0..alg.num_vertices())
            .map(|j| {
                let mut c = Matrix::zeros(target.dims[j], self.module.dims[j], p);
                let mut col = 0;
                for (k, &v) in self.vertices.iter().enumerate() {
                    for &b in alg.paths_between(v, j) {
                        let img = target.apply_path(&alg.basis()[b].arrows, &elements[k]);
                        for (r, x) in img.into_iter().enumerate() {
                            c.set(r, col, x);
                        }
                        col += 1;
                    }
                }
                c
            })
            .collect();
        ModuleMap { source: self.module.clone(), target: target.clone(), comps }
    }

    /// Basis of `Hom(self, target)`: one map per summand and basis vector of the target at its vertex.
    pub fn hom_to(&self, target: &Module) -> Vec<ModuleMap> {
        let mut out = Vec::new();
        for (k, &v) in self.vertices.iter().enumerate() {
            for i in 0..target.dims[v] {
                let elements: Vec<Vec<u64>> = self
                    .vertices
                    .iter()
                    .enumerate()
                    .map(|(l, &w)| {
                        let mut e = vec![0u64; target.dims[w]];
                        if l == k {
                            e[i] = 1;
                        }
                        e
                    })
                    .collect();
                out.push(self.map_to(target, &elements));
            }
        }
        out
    }

    /// Basis of the radical maps `self -> target`, each labelled by
    /// (source summand, target summand, algebra basis path).
    pub fn radical_hom_to(&self, target: &ProjSum) -> Vec<(usize, usize, usize, ModuleMap)> {
        let alg = &self.module.alg;
        let mut out = Vec::new();
        for (k, &v) in self.vertices.iter().enumerate() {
            for (l, &w) in target.vertices.iter().enumerate() {
                // Hom(P_v, P_w) = paths from w to v
                for (pos, &b) in alg.paths_between(w, v).iter().enumerate() {
                    if alg.basis()[b].is_trivial() {
                        continue;
                    }
                    let map = self.single_entry_map(target, k, l, pos);
                    out.push((k, l, b, map));
                }
            }
        }
        out
    }

    /// The map whose only nonzero entry sends summand `k` to the `pos`-th basis path of summand `l`.
    pub fn single_entry_map(&self, target: &ProjSum, k: usize, l: usize, pos: usize) -> ModuleMap {
        let v = self.vertices[k];
        let elements: Vec<Vec<u64>> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(kk, &vv)| {
                let mut e = vec![0u64; target.module.dims[vv]];
                if kk == k {
                    e[target.offset(l, v) + pos] = 1;
                }
                e
            })
            .collect();
        self.map_to(&target.module, &elements)
    }
}

/// Values of `f` on the generators of `ps`, concatenated; these are the
/// coordinates of `f` in the basis returned by `ProjSum::hom_to`.
pub fn generator_coords(f: &ModuleMap, ps: &ProjSum) -> Vec<u64> {
    (0..ps.vertices().len()).flat_map(|k| apply_map_to_generator(f, ps, k)).collect()
}

/// Inverse of `generator_coords`.
pub fn map_from_generator_coords(ps: &ProjSum, target: &Module, coords: &[u64]) -> ModuleMap {
    let mut pos = 0;
    let elements: Vec<Vec<u64>> = ps
        .vertices()
        .iter()
        .map(|&v| {
            let d = target.dims()[v];
            let e = coords[pos..pos + d].to_vec();
            pos += d;
            e
        })
        .collect();
    ps.map_to(target, &elements)
}

/// A projective presentation `P1 -> P0 -> cokernel -> 0`.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub p1: ProjSum,
    pub p0: ProjSum,
    pub diff: ModuleMap,
    /// `P0 -> cokernel`.
    pub cover: ModuleMap,
    pub cokernel: Module,
    pub minimal: bool,
}

/// Projective cover `P -> m` built from a complement of the radical.
pub fn projective_cover(m: &Module) -> (ProjSum, ModuleMap) {
    let alg = m.alg.clone();
    let p = m.field();
    let rad = m.radical_basis();
    let mut vertices = Vec::new();
    let mut elements = Vec::new();
    for v in 0..alg.num_vertices() {
        let d = m.dims[v];
        let aug = rad[v].hstack(&Matrix::identity(d, p));
        for &c in &aug.rref().pivot_cols {
            if c >= rad[v].cols() {
                let mut e = vec![0u64; d];
                e[c - rad[v].cols()] = 1;
                vertices.push(v);
                elements.push(e);
            }
        }
    }
    let ps = ProjSum::new(&alg, vertices).expect("vertices are valid");
    let cover = ps.map_to(m, &elements);
    (ps, cover)
}

/// Minimal projective presentation: `P0` covers `m`, `P1` covers the syzygy.
pub fn minimal_presentation(m: &Module) -> Presentation {
    let (p0, cover) = projective_cover(m);
    let (syzygy, incl) = kernel(&cover);
    let (p1, cover1) = projective_cover(&syzygy);
    let diff = incl.compose(&cover1);
    Presentation { p1, p0, diff, cover, cokernel: m.clone(), minimal: true }
}

impl Presentation {
    /// Syzygy of the presentation (the kernel of the cover) with its inclusion into `P0`.
    pub fn syzygy(&self) -> (Module, ModuleMap) {
        kernel(&self.cover)
    }

    /// Pads with a trivial summand `Q --id--> Q`; the result presents the same module.
    pub fn pad_with(&self, q: &ProjSum) -> Result<Presentation> {
        let p1 = self.p1.concat(q)?;
        let p0 = self.p0.concat(q)?;
        let n1 = self.p1.vertices().len();
        let n0 = self.p0.vertices().len();
        // diff: old summands keep their images, new summand k of p1 maps to the generator of new summand of p0
        let mut elements = Vec::new();
        for k in 0..n1 {
            let img = apply_map_to_generator(&self.diff, &self.p1, k);
            // the old summands come first, so their coordinates are a prefix
            let mut e = vec![0u64; p0.module().dims()[self.p1.vertices()[k]]];
            e[..img.len()].copy_from_slice(&img);
            elements.push(e);
        }
        for j in 0..q.vertices().len() {
            elements.push(p0.generator(n0 + j));
        }
        let diff = p1.map_to(p0.module(), &elements);
        let cov_elements: Vec<Vec<u64>> = (0..p0.vertices().len())
            .map(|k| {
                if k < n0 {
                    apply_map_to_generator(&self.cover, &self.p0, k)
                } else {
                    vec![0u64; self.cokernel.dims()[p0.vertices()[k]]]
                }
            })
            .collect();
        let cover = p0.map_to(&self.cokernel, &cov_elements);
        Ok(Presentation { p1, p0, diff, cover, cokernel: self.cokernel.clone(), minimal: q.is_empty() && self.minimal })
    }
}

/// Image of the generator of summand `k` of `ps` under `f: ps -> X`, as a vector of `X_{v_k}`.
pub fn apply_map_to_generator(f: &ModuleMap, ps: &ProjSum, k: usize) -> Vec<u64> {
    let v = ps.vertices()[k];
    let g = ps.generator(k);
    let c = &f.comps()[v];
    (0..c.rows()).map(|r| c.row(r).iter().zip(&g).fold(0, |acc, (&x, &y)| (acc + x * y) % f.source.field())).collect()
}

/// `dim Ext^1(a, b)` computed from the minimal presentation of `a`.
pub fn ext1_dim(a: &Module, b: &Module) -> Result<usize> {
    check_same_algebra(&a.alg, &b.alg)?;
    Ok(ext1_dim_from(&minimal_presentation(a), b))
}

/// `dim Ext^1` from an arbitrary presentation of the first argument.
pub fn ext1_dim_from(pres: &Presentation, b: &Module) -> usize {
    let (syz, incl) = pres.syzygy();
    let hom_syz = hom_basis_unchecked(&syz, b).len();
    let restricted: Vec<ModuleMap> = pres.p0.hom_to(b).iter().map(|phi| phi.compose(&incl)).collect();
    hom_syz - span_rank(&restricted)
}

/// Maps `Ω a -> b` whose classes form a basis of `Ext^1(a, b)`.
fn ext1_representatives(pres: &Presentation, b: &Module) -> (Module, ModuleMap, Vec<ModuleMap>) {
    let (syz, incl) = pres.syzygy();
    let mut span: Vec<ModuleMap> = pres.p0.hom_to(b).iter().map(|phi| phi.compose(&incl)).collect();
    let mut rank = span_rank(&span);
    let mut reps = Vec::new();
    for g in hom_basis_unchecked(&syz, b) {
        span.push(g.clone());
        let r = span_rank(&span);
        if r > rank {
            rank = r;
            reps.push(g);
        } else {
            span.pop();
        }
    }
    (syz, incl, reps)
}

/// Middle terms of all extensions `0 -> b -> E -> a -> 0`, one per Ext class, up to isomorphism.
pub fn extension_middle_terms(a: &Module, b: &Module) -> Result<Vec<Module>> {
    check_same_algebra(&a.alg, &b.alg)?;
    let alg = a.alg.clone();
    let p = a.field();
    let pres = minimal_presentation(a);
    let (syz, incl, reps) = ext1_representatives(&pres, b);
    let d = reps.len();
    let count = (p as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
    if count > EXTENSION_CLASS_LIMIT as u128 {
        return Err(Error::TooLarge(format!("Ext^1 has {p}^{d} classes")));
    }
    let sum = Module::direct_sum(&alg, &[pres.p0.module(), b])?;
    let mut out: Vec<Module> = Vec::new();
    let mut coefs = vec![0u64; d];
    loop {
        let g = if d == 0 { ModuleMap::zero(&syz, b) } else { linear_combination(&reps, &coefs) };
        // pushout of Ω -> P0 along g
        let comps = (0..alg.num_vertices()).map(|v| incl.comps[v].vstack(&g.comps[v].neg())).collect();
        let f = ModuleMap { source: syz.clone(), target: sum.clone(), comps };
        let (e, _) = cokernel(&f);
        if !out.iter().any(|x| is_isomorphic(x, &e)) {
            out.push(e);
        }
        let mut i = 0;
        loop {
            if i == d {
                return Ok(out);
            }
            coefs[i] += 1;
            if coefs[i] == p {
                coefs[i] = 0;
                i += 1;
            } else {
                break;
            }
        }
    }
}

/// Dimension vector of the trace of `generators` in `x`: the sum of images of all maps into `x`.
pub fn trace_in(generators: &[Module], x: &Module) -> Result<Vec<usize>> {
    let p = x.field();
    let mut spans: Vec<Matrix> = x.dims.iter().map(|&d| Matrix::zeros(d, 0, p)).collect();
    for g in generators {
        for f in hom_basis(g, x)? {
            for (v, c) in f.comps.iter().enumerate() {
                spans[v] = spans[v].hstack(c);
            }
        }
    }
    Ok(spans.iter().map(Matrix::rank).collect())
}

/// `x ∈ Fac(add generators)`.
pub fn in_fac(generators: &[Module], x: &Module) -> Result<bool> {
    Ok(trace_in(generators, x)? == x.dims)
}

/// Result of an exhaustive search for indecomposables.
#[derive(Clone, Debug)]
pub struct Enumeration {
    pub modules: Vec<Module>,
    pub bound: Vec<usize>,
    /// Some indecomposable reaches the bound at a vertex, so larger ones may exist.
    pub boundary_warning: bool,
}

/// Upper limit on arrow-matrix tuples tried per dimension vector.
pub const ENUMERATION_TUPLE_LIMIT: u128 = 1 << 22;

fn support_connected(alg: &Algebra, dims: &[usize]) -> bool {
    let support: Vec<usize> = (0..dims.len()).filter(|&v| dims[v] > 0).collect();
    let Some(&start) = support.first() else { return false };
    let mut seen = vec![false; dims.len()];
    seen[start] = true;
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for a in alg.arrows() {
            for (x, y) in [(a.source, a.target), (a.target, a.source)] {
                if x == v && dims[y] > 0 && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    support.iter().all(|&v| seen[v])
}

/// All indecomposables with dimension vector bounded by `bound`, up to isomorphism.
///
/// The first non-loop arrow inside the support is put in rank normal form
/// (every representation is isomorphic to one of these); all other arrow
/// matrices are enumerated over GF(p).
pub fn enumerate_indecomposables(alg: &Arc<Algebra>, bound: &[usize]) -> Result<Enumeration> {
    let n = alg.num_vertices();
    assert_eq!(bound.len(), n, "one bound per vertex");
    let p = alg.field();
    let mut dim_vectors: Vec<Vec<usize>> = vec![vec![]];
    for &b in bound {
        dim_vectors = dim_vectors
            .into_iter()
            .flat_map(|d| {
                (0..=b).map(move |x| {
                    let mut e = d.clone();
                    e.push(x);
                    e
                })
            })
            .collect();
    }
    dim_vectors.retain(|d| d.iter().any(|&x| x > 0));
    dim_vectors.sort_by_key(|d| (d.iter().sum::<usize>(), d.clone()));

    let mut found: Vec<(Module, usize)> = Vec::new();
    for dims in dim_vectors {
        if !support_connected(alg, &dims) {
            continue;
        }
        let normal = alg.arrows().iter().position(|a| a.source != a.target && dims[a.source] > 0 && dims[a.target] > 0);
        // choices per arrow: Vec of candidate matrices, or a free matrix of given size
        let mut free_sizes = Vec::new();
        let mut total: u128 = 1;
        for (ai, a) in alg.arrows().iter().enumerate() {
            let (r, c) = (dims[a.target], dims[a.source]);
            if Some(ai) == normal {
                total *= (r.min(c) + 1) as u128;
            } else {
                let k = (p as u128).checked_pow((r * c) as u32).unwrap_or(u128::MAX);
                total = total.saturating_mul(k);
            }
            free_sizes.push(r * c);
        }
        if total > ENUMERATION_TUPLE_LIMIT {
            return Err(Error::TooLarge(format!(
                "dimension vector {dims:?} needs {total} arrow-matrix tuples; lower the bound"
            )));
        }
        let ranks: Vec<usize> = match normal {
            Some(ai) => {
                let a = &alg.arrows()[ai];
                (0..=dims[a.target].min(dims[a.source])).collect()
            }
            None => vec![0],
        };
        for rank in ranks {
            // odometer over the entries of all free arrows
            let free_total: usize =
                free_sizes.iter().enumerate().filter(|(ai, _)| Some(*ai) != normal).map(|(_, &s)| s).sum();
            let mut entries = vec![0u64; free_total];
            loop {
                let mut action = Vec::with_capacity(alg.arrows().len());
                let mut pos = 0;
                for (ai, a) in alg.arrows().iter().enumerate() {
                    let (r, c) = (dims[a.target], dims[a.source]);
                    if Some(ai) == normal {
                        let mut m = Matrix::zeros(r, c, p);
                        for i in 0..rank {
                            m.set(i, i, 1);
                        }
                        action.push(m);
                    } else {
                        action.push(Matrix::from_vec(r, c, p, entries[pos..pos + r * c].to_vec()));
                        pos += r * c;
                    }
                }
                let m = Module::new_unchecked(alg.clone(), dims.clone(), action)?;
                if m.satisfies_relations() {
                    let end_dim = hom_basis_unchecked(&m, &m).len();
                    let seen = found.iter().any(|(x, e)| *e == end_dim && x.dims == m.dims && is_isomorphic(x, &m));
                    if !seen && (end_dim == 1 || is_indecomposable(&m)) {
                        found.push((m, end_dim));
                    }
                }
                let mut i = 0;
                loop {
                    if i == free_total {
                        break;
                    }
                    entries[i] += 1;
                    if entries[i] == p {
                        entries[i] = 0;
                        i += 1;
                    } else {
                        break;
                    }
                }
                if i == free_total {
                    break;
                }
            }
        }
    }
    let modules: Vec<Module> = found.into_iter().map(|(m, _)| m).collect();
    let boundary_warning = modules.iter().any(|m| m.dims.iter().zip(bound).any(|(&d, &b)| b > 0 && d == b));
    Ok(Enumeration { modules, bound: bound.to_vec(), boundary_warning })
}
