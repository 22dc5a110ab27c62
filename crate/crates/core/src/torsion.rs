//! Torsion classes of mod A over a finite list of indecomposables.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::quiver::{projective, Algebra};
use crate::repmod::{
    enumerate_indecomposables, ext1_dim, extension_middle_terms, hom_basis, in_fac, indecomposable_summands,
    is_isomorphic, Enumeration, Module, ModuleMap,
};
use crate::tautilt::{ker_vertices, left_approximation, TauRigidPair};

/// Uniform per-vertex bounds tried by `Pool::complete`.
pub const DEFAULT_BOUND_CAP: usize = 3;
/// Subset enumerations refuse pools larger than this.
pub const MAX_SUBSET_POOL: usize = 20;

/// The indecomposables of mod A with their Hom and Ext¹ dimension tables.
#[derive(Clone, Debug)]
pub struct Pool {
    alg: Arc<Algebra>,
    modules: Vec<Module>,
    hom: Vec<Vec<usize>>,
    ext: Vec<Vec<usize>>,
    /// `images[i][j]`: per vertex, a basis of the sum of images of maps `m_i -> m_j`.
    images: Vec<Vec<Vec<Matrix>>>,
}

impl Pool {
    pub fn new(enumeration: &Enumeration, alg: &Arc<Algebra>) -> Result<Self> {
        if enumeration.boundary_warning {
            return Err(Error::IncompleteEnumeration(format!(
                "an indecomposable reaches the dimension bound {:?}",
                enumeration.bound
            )));
        }
        let modules = enumeration.modules.clone();
        let k = modules.len();
        let mut hom = vec![vec![0; k]; k];
        let mut ext = vec![vec![0; k]; k];
        let mut images = vec![vec![Vec::new(); k]; k];
        for i in 0..k {
            for j in 0..k {
                let basis = hom_basis(&modules[i], &modules[j])?;
                hom[i][j] = basis.len();
                ext[i][j] = ext1_dim(&modules[i], &modules[j])?;
                images[i][j] = (0..alg.num_vertices())
                    .map(|v| {
                        let span = basis.iter().fold(Matrix::zeros(modules[j].dims()[v], 0, alg.field()), |acc, f| {
                            acc.hstack(&f.comps()[v])
                        });
                        span.column_space_basis()
                    })
                    .collect();
            }
        }
        Ok(Self { alg: alg.clone(), modules, hom, ext, images })
    }

    pub fn from_algebra(alg: &Arc<Algebra>, bound: &[usize]) -> Result<Self> {
        Self::new(&enumerate_indecomposables(alg, bound)?, alg)
    }

    /// Raises a uniform bound from 1 until the enumeration carries no boundary warning.
    pub fn complete(alg: &Arc<Algebra>, cap: usize) -> Result<Self> {
        for b in 1..=cap {
            let e = enumerate_indecomposables(alg, &vec![b; alg.num_vertices()])?;
            if !e.boundary_warning {
                return Self::new(&e, alg);
            }
        }
        Err(Error::IncompleteEnumeration(format!("indecomposables still reach the uniform bound {cap}")))
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn modules(&self) -> &[Module] {
        &self.modules
    }

    pub fn len(&self) -> usize {
        self.modules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modules.is_empty()
    }

    pub fn hom(&self, i: usize, j: usize) -> usize {
        self.hom[i][j]
    }

    pub fn ext(&self, i: usize, j: usize) -> usize {
        self.ext[i][j]
    }

    pub fn index_of(&self, m: &Module) -> Option<usize> {
        self.modules.iter().position(|x| x.dims() == m.dims() && is_isomorphic(x, m))
    }

    /// Pool indices of the indecomposable summands, with repetition, sorted.
    pub fn classify(&self, m: &Module) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for x in indecomposable_summands(m) {
            out.push(self.index_of(&x).ok_or_else(|| {
                Error::IncompleteEnumeration(format!("summand with dimension vector {:?} is not in the pool", x.dims()))
            })?);
        }
        out.sort_unstable();
        Ok(out)
    }

    /// Short name: `P<v>` or `S<v>` when the module is one of those, otherwise `M[dims]`.
    pub fn label(&self, i: usize) -> String {
        module_label(&self.alg, &self.modules, i)
    }

    /// The trace of `set` in pool module `x` is all of `x`.
    fn generated_by(&self, set: &[usize], x: usize) -> bool {
        let m = &self.modules[x];
        (0..self.alg.num_vertices()).all(|v| {
            let span = set
                .iter()
                .fold(Matrix::zeros(m.dims()[v], 0, self.alg.field()), |acc, &i| acc.hstack(&self.images[i][x][v]));
            span.rank() == m.dims()[v]
        })
    }
}

/// Label of `modules[i]` as used in listings; `#k` separates modules sharing a dimension vector.
pub fn module_label(alg: &Arc<Algebra>, modules: &[Module], i: usize) -> String {
    let m = &modules[i];
    for v in 0..alg.num_vertices() {
        if let Ok(p) = projective(alg, v) {
            if is_isomorphic(&p, m) {
                return format!("P{}", alg.vertex_name(v));
            }
        }
        if let Ok(s) = crate::quiver::simple(alg, v) {
            if is_isomorphic(&s, m) {
                return format!("S{}", alg.vertex_name(v));
            }
        }
    }
    let dims: Vec<String> = m.dims().iter().map(usize::to_string).collect();
    let base = format!("M[{}]", dims.join(","));
    // disambiguate modules sharing a dimension vector
    let same: Vec<usize> = (0..modules.len()).filter(|&j| modules[j].dims() == m.dims()).collect();
    if same.len() > 1 {
        let pos = same.iter().position(|&j| j == i).unwrap_or(0);
        format!("{base}#{}", pos + 1)
    } else {
        base
    }
}

/// `T = add` of the listed pool members (sorted indices).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorsionClass {
    pub members: Vec<usize>,
}

/// Pool members in `Fac(add gens)`.
pub fn fac(pool: &Pool, gens: &[Module]) -> Result<TorsionClass> {
    let mut members = Vec::new();
    for (i, x) in pool.modules().iter().enumerate() {
        if in_fac(gens, x)? {
            members.push(i);
        }
    }
    Ok(TorsionClass { members })
}

/// `Fac` of a set of pool members.
pub fn fac_members(pool: &Pool, set: &[usize]) -> TorsionClass {
    TorsionClass { members: (0..pool.len()).filter(|&x| pool.generated_by(set, x)).collect() }
}

/// `t = ⊥(t^⊥)` using the Hom table.
pub fn is_torsion_class(pool: &Pool, t: &[usize]) -> bool {
    let k = pool.len();
    let perp: Vec<usize> = (0..k).filter(|&y| t.iter().all(|&x| pool.hom(x, y) == 0)).collect();
    let back: Vec<usize> = (0..k).filter(|&x| perp.iter().all(|&y| pool.hom(x, y) == 0)).collect();
    back == t
}

/// Literal closure under quotients and extensions, with extensions taken
/// between direct sums of at most `mu` members.
pub struct ClosureChecker<'a> {
    pool: &'a Pool,
    mu: usize,
    middle: HashMap<(Vec<usize>, Vec<usize>), Vec<usize>>,
}

impl<'a> ClosureChecker<'a> {
    pub fn new(pool: &'a Pool, mu: usize) -> Self {
        Self { pool, mu: mu.max(1), middle: HashMap::new() }
    }

    fn sum(&self, idx: &[usize]) -> Result<Module> {
        let refs: Vec<&Module> = idx.iter().map(|&i| &self.pool.modules()[i]).collect();
        Module::direct_sum(self.pool.algebra(), &refs)
    }

    /// Pool indices of all summands of middle terms of extensions `0 -> b -> E -> a -> 0`.
    fn middle_summands(&mut self, a: &[usize], b: &[usize]) -> Result<Vec<usize>> {
        let key = (a.to_vec(), b.to_vec());
        if let Some(v) = self.middle.get(&key) {
            return Ok(v.clone());
        }
        let mut out = Vec::new();
        for e in extension_middle_terms(&self.sum(a)?, &self.sum(b)?)? {
            out.extend(self.pool.classify(&e)?);
        }
        out.sort_unstable();
        out.dedup();
        self.middle.insert(key, out.clone());
        Ok(out)
    }

    pub fn closure(&mut self, t: &[usize]) -> Result<Vec<usize>> {
        let mut set: Vec<usize> = t.to_vec();
        loop {
            let mut next = fac_members(self.pool, &set).members;
            for a in multisets(&set, self.mu) {
                for b in multisets(&set, self.mu) {
                    let ext: usize =
                        a.iter().flat_map(|&i| b.iter().map(move |&j| (i, j))).map(|(i, j)| self.pool.ext(i, j)).sum();
                    if ext == 0 {
                        continue;
                    }
                    next.extend(self.middle_summands(&a, &b)?);
                }
            }
            next.sort_unstable();
            next.dedup();
            if next == set {
                return Ok(set);
            }
            set = next;
        }
    }

    pub fn is_torsion_class(&mut self, t: &[usize]) -> Result<bool> {
        Ok(self.closure(t)? == t)
    }
}

/// Non-empty multisets of size at most `mu` drawn from `set`, as sorted index lists.
fn multisets(set: &[usize], mu: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut frontier: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..mu {
        let mut next = Vec::new();
        for m in &frontier {
            let start = m.last().map_or(0, |&l| set.iter().position(|&x| x == l).unwrap());
            for &x in &set[start..] {
                let mut n = m.clone();
                n.push(x);
                next.push(n);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Members `x` with `Ext¹(x, T) = 0`.
pub fn ext_projectives(pool: &Pool, t: &TorsionClass) -> Vec<usize> {
    t.members.iter().copied().filter(|&x| t.members.iter().all(|&y| pool.ext(x, y) == 0)).collect()
}

/// Canonical left `add P(T)`-approximations of the vertex projectives.
/// In the representation-finite setting they always exist.
pub fn left_pt_approximations(pool: &Pool, t: &TorsionClass) -> Result<Vec<ModuleMap>> {
    let gens: Vec<Module> = ext_projectives(pool, t).iter().map(|&i| pool.modules()[i].clone()).collect();
    let alg = pool.algebra();
    (0..alg.num_vertices()).map(|i| left_approximation(&projective(alg, i)?, &gens)).collect()
}

pub fn enumerate_torsion_classes(pool: &Pool) -> Result<Vec<TorsionClass>> {
    let k = pool.len();
    if k > MAX_SUBSET_POOL {
        return Err(Error::TooLarge(format!("{k} indecomposables give 2^{k} subsets")));
    }
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << k) {
        let t: Vec<usize> = (0..k).filter(|&i| mask >> i & 1 == 1).collect();
        if is_torsion_class(pool, &t) {
            out.push(TorsionClass { members: t });
        }
    }
    Ok(out)
}

/// `(P(T), Ker P(T))`.
pub fn pair_from_torsion(pool: &Pool, t: &TorsionClass) -> Result<TauRigidPair> {
    let gens: Vec<Module> = ext_projectives(pool, t).iter().map(|&i| pool.modules()[i].clone()).collect();
    let killed = ker_vertices(pool.algebra(), &gens);
    TauRigidPair::new(pool.algebra(), gens, killed)
}

pub fn torsion_from_pair(pool: &Pool, pair: &TauRigidPair) -> Result<TorsionClass> {
    fac(pool, &pair.gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::quiver::simple;

    fn a2_pool() -> Pool {
        Pool::complete(&fixtures::a2(), DEFAULT_BOUND_CAP).unwrap()
    }

    fn idx(pool: &Pool, label: &str) -> usize {
        (0..pool.len()).find(|&i| pool.label(i) == label).unwrap()
    }

    fn set(pool: &Pool, labels: &[&str]) -> Vec<usize> {
        let mut v: Vec<usize> = labels.iter().map(|l| idx(pool, l)).collect();
        v.sort_unstable();
        v
    }

    #[test]
    fn fac_examples() {
        let pool = a2_pool();
        let alg = pool.algebra().clone();
        let all: Vec<Module> = (0..2).map(|i| projective(&alg, i).unwrap()).collect();
        assert_eq!(fac(&pool, &all).unwrap().members, vec![0, 1, 2]);
        assert!(fac(&pool, &[]).unwrap().members.is_empty());
        assert_eq!(fac(&pool, &[simple(&alg, 0).unwrap()]).unwrap().members, set(&pool, &["S1"]));
    }

    #[test]
    fn torsion_criteria() {
        let pool = a2_pool();
        let mut checker = ClosureChecker::new(&pool, 2);
        for (labels, expected) in
            [(vec!["P1", "P2", "S1"], true), (vec!["S1"], true), (vec!["P1"], false), (vec!["S1", "P2"], false)]
        {
            let t = set(&pool, &labels);
            assert_eq!(is_torsion_class(&pool, &t), expected, "{labels:?}");
            assert_eq!(checker.is_torsion_class(&t).unwrap(), expected, "{labels:?}");
        }
    }

    #[test]
    fn ext_projective_examples() {
        let pool = a2_pool();
        let full = TorsionClass { members: vec![0, 1, 2] };
        assert_eq!(ext_projectives(&pool, &full), set(&pool, &["P1", "P2"]));
        assert!(ext_projectives(&pool, &TorsionClass { members: vec![] }).is_empty());
        let s1 = TorsionClass { members: set(&pool, &["S1"]) };
        assert_eq!(ext_projectives(&pool, &s1), s1.members);
        let w = left_pt_approximations(&pool, &s1).unwrap();
        assert_eq!(w[0].target().dims(), &[1, 0]);
        assert!(w[1].target().is_zero());
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_torsion_classes(&Pool::complete(&fixtures::one(), 3).unwrap()).unwrap().len(), 2);
        assert_eq!(enumerate_torsion_classes(&a2_pool()).unwrap().len(), 5);
        assert_eq!(enumerate_torsion_classes(&Pool::complete(&fixtures::a3(), 3).unwrap()).unwrap().len(), 14);
        assert_eq!(enumerate_torsion_classes(&Pool::complete(&fixtures::dual(), 3).unwrap()).unwrap().len(), 2);
    }

    #[test]
    fn pair_round_trip() {
        let pool = a2_pool();
        let full = TorsionClass { members: vec![0, 1, 2] };
        let pair = pair_from_torsion(&pool, &full).unwrap();
        assert_eq!(pair.gens.len(), 2);
        assert!(pair.killed.is_empty());
        let zero = TauRigidPair::new(pool.algebra(), vec![], vec![0, 1]).unwrap();
        assert!(torsion_from_pair(&pool, &zero).unwrap().members.is_empty());
        let s1 = TauRigidPair::new(pool.algebra(), vec![simple(pool.algebra(), 0).unwrap()], vec![1]).unwrap();
        let t = torsion_from_pair(&pool, &s1).unwrap();
        assert_eq!(t.members, set(&pool, &["S1"]));
        let back = pair_from_torsion(&pool, &t).unwrap();
        assert_eq!(back.killed, vec![1]);
        assert!(is_isomorphic(&back.gens[0], &s1.gens[0]));
    }

    #[test]
    fn multisets_up_to_two() {
        assert_eq!(multisets(&[3, 5], 2), vec![vec![3], vec![5], vec![3, 3], vec![3, 5], vec![5, 5]]);
    }
}
