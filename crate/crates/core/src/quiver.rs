//! Finite-dimensional basic algebras given by a quiver with relations.
//!
//! Paths are written in travel order: `[a, b]` means "first `a`, then `b`",
//! so `a` must end where `b` starts. A module is a representation of the
//! quiver; a path acts by composing its arrow matrices in travel order.

use std::collections::HashMap;
use std::fmt;
use std::path::Path as FsPath;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{is_prime, reduce_signed, Matrix, MAX_MODULUS};
use crate::repmod::Module;

/// Path-length bound used when the description does not give one.
pub const DEFAULT_LENGTH_BOUND: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// One term `coef * path` of a relation; `path` holds arrow indices in travel order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationTerm {
    pub coef: u64,
    pub path: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverSpec {
    pub field_char: u64,
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
    pub relations: Vec<Vec<RelationTerm>>,
    pub length_bound: Option<usize>,
}

/// JSON algebra description.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub field_char: u64,
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowEntry>,
    #[serde(default)]
    pub relations: Vec<Vec<TermEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub length_bound: Option<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ArrowEntry {
    pub name: String,
    pub from: String,
    pub to: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct TermEntry {
    pub coef: i64,
    pub path: Vec<String>,
}

impl AlgebraFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("line {} column {}: {e}", e.line(), e.column())))
    }

    pub fn load(path: impl AsRef<FsPath>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_spec(&self) -> Result<QuiverSpec> {
        let p = self.field_char;
        if p >= MAX_MODULUS || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let mut vertex_index = HashMap::new();
        for (i, v) in self.vertices.iter().enumerate() {
            if vertex_index.insert(v.as_str(), i).is_some() {
                return Err(Error::Parse(format!("duplicate vertex `{v}`")));
            }
        }
        let lookup = |name: &str| vertex_index.get(name).copied().ok_or_else(|| Error::UnknownVertex(name.to_string()));
        let mut arrows = Vec::with_capacity(self.arrows.len());
        let mut arrow_index = HashMap::new();
        for (i, a) in self.arrows.iter().enumerate() {
            if arrow_index.insert(a.name.as_str(), i).is_some() {
                return Err(Error::Parse(format!("duplicate arrow `{}`", a.name)));
            }
            arrows.push(Arrow { name: a.name.clone(), source: lookup(&a.from)?, target: lookup(&a.to)? });
        }
        let mut relations = Vec::with_capacity(self.relations.len());
        for rel in &self.relations {
            let mut terms = Vec::with_capacity(rel.len());
            for t in rel {
                let path = t
                    .path
                    .iter()
                    .map(|n| arrow_index.get(n.as_str()).copied().ok_or_else(|| Error::UnknownArrow(n.clone())))
                    .collect::<Result<Vec<_>>>()?;
                terms.push(RelationTerm { coef: reduce_signed(t.coef, p), path });
            }
            relations.push(terms);
        }
        Ok(QuiverSpec {
            field_char: p,
            vertices: self.vertices.clone(),
            arrows,
            relations,
            length_bound: self.length_bound,
        })
    }
}

/// A path of the quiver; `arrows` is empty for the trivial path at `source`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }
}

/// Sparse coordinates over the path basis of an algebra.
pub type Coords = Vec<(usize, u64)>;

/// A basic algebra `kQ / I` with an explicit residue-path basis.
pub struct Algebra {
    spec: QuiverSpec,
    basis: Vec<Path>,
    /// Paths of length at least this are zero in the algebra.
    nilpotency: usize,
    /// Normal form of every path shorter than `nilpotency`.
    normal_forms: HashMap<(usize, Vec<usize>), Coords>,
    /// `between[i][j]`: basis indices of paths from `i` to `j`.
    between: Vec<Vec<Vec<usize>>>,
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Algebra")
            .field("field", &self.spec.field_char)
            .field("vertices", &self.spec.vertices)
            .field("dim", &self.basis.len())
            .finish()
    }
}

fn path_sort_key(p: &Path) -> (usize, usize, Vec<usize>) {
    (p.len(), p.source, p.arrows.clone())
}

fn all_paths_up_to(spec: &QuiverSpec, max_len: usize) -> Vec<Path> {
    let mut out: Vec<Path> = (0..spec.vertices.len()).map(|v| Path { source: v, target: v, arrows: vec![] }).collect();
    let mut frontier = out.clone();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for p in &frontier {
            for (ai, a) in spec.arrows.iter().enumerate() {
                if a.source == p.target {
                    let mut arrows = p.arrows.clone();
                    arrows.push(ai);
                    next.push(Path { source: p.source, target: a.target, arrows });
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

fn validate(spec: &QuiverSpec) -> Result<()> {
    let p = spec.field_char;
    if p >= MAX_MODULUS || !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let n = spec.vertices.len();
    if n == 0 {
        return Err(Error::Parse("quiver has no vertices".into()));
    }
    for a in &spec.arrows {
        if a.source >= n || a.target >= n {
            return Err(Error::UnknownVertex(format!("endpoint of arrow `{}`", a.name)));
        }
    }
    for (ri, rel) in spec.relations.iter().enumerate() {
        let mut ends = None;
        for t in rel {
            if t.path.len() < 2 {
                return Err(Error::NonAdmissible { relation: ri, reason: "a path of length < 2 occurs".into() });
            }
            for w in t.path.windows(2) {
                if spec.arrows[w[0]].target != spec.arrows[w[1]].source {
                    return Err(Error::NonAdmissible { relation: ri, reason: "path is not composable".into() });
                }
            }
            let st = (spec.arrows[t.path[0]].source, spec.arrows[*t.path.last().unwrap()].target);
            match ends {
                None => ends = Some(st),
                Some(e) if e != st => {
                    return Err(Error::NonAdmissible { relation: ri, reason: "paths are not parallel".into() })
                }
                _ => {}
            }
        }
    }
    Ok(())
}

/// Builds the algebra; the ideal closure is computed by linear spanning inside a path-length window.
pub fn build_algebra(spec: QuiverSpec) -> Result<Arc<Algebra>> {
    validate(&spec)?;
    let p = spec.field_char;
    let bound = spec.length_bound.unwrap_or(DEFAULT_LENGTH_BOUND).max(1);
    let n = spec.vertices.len();

    for len in 1..=bound {
        let mut paths = all_paths_up_to(&spec, len);
        // longest first, so pivots land on long paths and short paths survive as basis
        paths.sort_by(|a, b| path_sort_key(b).cmp(&path_sort_key(a)));
        let col_of: HashMap<(usize, Vec<usize>), usize> =
            paths.iter().enumerate().map(|(i, q)| ((q.source, q.arrows.clone()), i)).collect();

        let mut rows: Vec<Vec<u64>> = Vec::new();
        for rel in &spec.relations {
            let (rs, rt) = (spec.arrows[rel[0].path[0]].source, spec.arrows[*rel[0].path.last().unwrap()].target);
            let min_len = rel.iter().map(|t| t.path.len()).min().unwrap_or(0);
            if min_len > len {
                continue;
            }
            for u in paths.iter().filter(|u| u.target == rs && u.len() + min_len <= len) {
                for v in paths.iter().filter(|v| v.source == rt && u.len() + v.len() + min_len <= len) {
                    let mut row = vec![0u64; paths.len()];
                    let mut nonzero = false;
                    for t in rel {
                        if u.len() + t.path.len() + v.len() > len {
                            continue;
                        }
                        let mut arrows = u.arrows.clone();
                        arrows.extend(&t.path);
                        arrows.extend(&v.arrows);
                        let c = col_of[&(u.source, arrows)];
                        row[c] = (row[c] + t.coef) % p;
                        nonzero |= row[c] != 0;
                    }
                    if nonzero {
                        rows.push(row);
                    }
                }
            }
        }
        let rref = if rows.is_empty() {
            None
        } else {
            let data = rows.iter().flatten().copied().collect();
            Some(Matrix::from_vec(rows.len(), paths.len(), p, data).rref())
        };
        let pivots: Vec<usize> = rref.as_ref().map(|r| r.pivot_cols.clone()).unwrap_or_default();
        let longest_in_ideal = paths.iter().enumerate().filter(|(_, q)| q.len() == len).all(|(c, _)| {
            match (&rref, pivots.iter().position(|&pc| pc == c)) {
                (Some(r), Some(ri)) => (0..paths.len()).all(|j| j == c || r.reduced.get(ri, j) == 0),
                _ => false,
            }
        });
        if !longest_in_ideal {
            continue;
        }

        let mut basis: Vec<Path> = paths
            .iter()
            .enumerate()
            .filter(|(c, q)| q.len() < len && !pivots.contains(c))
            .map(|(_, q)| q.clone())
            .collect();
        basis.sort_by_key(path_sort_key);
        let index_of: HashMap<(usize, Vec<usize>), usize> =
            basis.iter().enumerate().map(|(i, q)| ((q.source, q.arrows.clone()), i)).collect();

        let mut normal_forms = HashMap::new();
        for q in &basis {
            normal_forms.insert((q.source, q.arrows.clone()), vec![(index_of[&(q.source, q.arrows.clone())], 1 % p)]);
        }
        if let Some(r) = &rref {
            for (ri, &pc) in pivots.iter().enumerate() {
                let q = &paths[pc];
                if q.len() >= len {
                    continue;
                }
                let mut coords = Vec::new();
                for (j, other) in paths.iter().enumerate() {
                    let c = r.reduced.get(ri, j);
                    if j != pc && c != 0 {
                        let bi = index_of[&(other.source, other.arrows.clone())];
                        coords.push((bi, (p - c) % p));
                    }
                }
                coords.sort_unstable();
                normal_forms.insert((q.source, q.arrows.clone()), coords);
            }
        }

        let mut between = vec![vec![Vec::new(); n]; n];
        for (i, q) in basis.iter().enumerate() {
            between[q.source][q.target].push(i);
        }
        return Ok(Arc::new(Algebra { spec, basis, nilpotency: len, normal_forms, between }));
    }
    Err(Error::NotFiniteDimensional { bound })
}

impl Algebra {
    pub fn from_file(file: &AlgebraFile) -> Result<Arc<Algebra>> {
        build_algebra(file.to_spec()?)
    }

    pub fn from_json(text: &str) -> Result<Arc<Algebra>> {
        Self::from_file(&AlgebraFile::from_json(text)?)
    }

    pub fn spec(&self) -> &QuiverSpec {
        &self.spec
    }

    pub fn field(&self) -> u64 {
        self.spec.field_char
    }

    pub fn num_vertices(&self) -> usize {
        self.spec.vertices.len()
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.spec.vertices[v]
    }

    pub fn vertex_index(&self, name: &str) -> Result<usize> {
        self.spec.vertices.iter().position(|v| v == name).ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.spec.arrows
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    pub fn nilpotency_bound(&self) -> usize {
        self.nilpotency
    }

    /// Basis indices of the paths from `i` to `j`, shortest first.
    pub fn paths_between(&self, i: usize, j: usize) -> &[usize] {
        &self.between[i][j]
    }

    /// Normal form of a path given by its start vertex and arrows.
    pub fn reduce_path(&self, source: usize, arrows: &[usize]) -> Coords {
        if arrows.len() >= self.nilpotency {
            return Vec::new();
        }
        self.normal_forms.get(&(source, arrows.to_vec())).cloned().unwrap_or_default()
    }

    /// Product of two basis elements, `first` followed by `second`.
    pub fn mul_basis(&self, first: usize, second: usize) -> Coords {
        let (a, b) = (&self.basis[first], &self.basis[second]);
        if a.target != b.source {
            return Vec::new();
        }
        let mut arrows = a.arrows.clone();
        arrows.extend(&b.arrows);
        self.reduce_path(a.source, &arrows)
    }

    /// Readable name of a basis path, e.g. `e1` or `a*b`.
    pub fn path_label(&self, index: usize) -> String {
        let q = &self.basis[index];
        if q.is_trivial() {
            format!("e{}", self.spec.vertices[q.source])
        } else {
            q.arrows.iter().map(|&a| self.spec.arrows[a].name.as_str()).collect::<Vec<_>>().join("*")
        }
    }

    /// Primitive idempotents sum to the identity: every basis element is fixed by
    /// left and right multiplication with `sum_i e_i`.
    pub fn idempotents_sum_to_one(&self) -> bool {
        let trivial: Vec<usize> = (0..self.num_vertices()).map(|v| self.between[v][v][0]).collect();
        (0..self.dim()).all(|b| {
            let l: Coords = trivial.iter().flat_map(|&e| self.mul_basis(e, b)).collect();
            let r: Coords = trivial.iter().flat_map(|&e| self.mul_basis(b, e)).collect();
            l == vec![(b, 1)] && r == vec![(b, 1)]
        })
    }

    /// Checks associativity of the structure constants on all basis triples.
    pub fn is_associative(&self) -> bool {
        let p = self.field();
        let mul_coords = |x: &Coords, y: usize| -> Vec<u64> {
            let mut out = vec![0u64; self.dim()];
            for &(i, c) in x {
                for (k, d) in self.mul_basis(i, y) {
                    out[k] = (out[k] + c * d) % p;
                }
            }
            out
        };
        let left_mul = |x: usize, y: &Coords| -> Vec<u64> {
            let mut out = vec![0u64; self.dim()];
            for &(i, c) in y {
                for (k, d) in self.mul_basis(x, i) {
                    out[k] = (out[k] + c * d) % p;
                }
            }
            out
        };
        for a in 0..self.dim() {
            for b in 0..self.dim() {
                let ab = self.mul_basis(a, b);
                for c in 0..self.dim() {
                    let bc = self.mul_basis(b, c);
                    if mul_coords(&ab, c) != left_mul(a, &bc) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// The indecomposable projective at vertex `i`: its space at `j` is spanned by
/// the basis paths from `i` to `j`, and arrows act by appending.
pub fn projective(alg: &Arc<Algebra>, i: usize) -> Result<Module> {
    if i >= alg.num_vertices() {
        return Err(Error::UnknownVertex(i.to_string()));
    }
    let p = alg.field();
    let dims: Vec<usize> = (0..alg.num_vertices()).map(|j| alg.paths_between(i, j).len()).collect();
    let mut action = Vec::with_capacity(alg.arrows().len());
    for (ai, a) in alg.arrows().iter().enumerate() {
        let src = alg.paths_between(i, a.source);
        let tgt = alg.paths_between(i, a.target);
        let mut m = Matrix::zeros(tgt.len(), src.len(), p);
        for (c, &b) in src.iter().enumerate() {
            let q = &alg.basis()[b];
            let mut arrows = q.arrows.clone();
            arrows.push(ai);
            for (k, coef) in alg.reduce_path(i, &arrows) {
                let r = tgt.iter().position(|&t| t == k).expect("normal form stays between the same vertices");
                m.set(r, c, coef);
            }
        }
        action.push(m);
    }
    Module::new(alg.clone(), dims, action)
}

/// The one-dimensional simple module at vertex `i`.
pub fn simple(alg: &Arc<Algebra>, i: usize) -> Result<Module> {
    if i >= alg.num_vertices() {
        return Err(Error::UnknownVertex(i.to_string()));
    }
    let p = alg.field();
    let dims: Vec<usize> = (0..alg.num_vertices()).map(|j| usize::from(j == i)).collect();
    let action = alg.arrows().iter().map(|a| Matrix::zeros(dims[a.target], dims[a.source], p)).collect();
    Module::new(alg.clone(), dims, action)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn fixture_dimensions() {
        let a2 = fixtures::a2();
        assert_eq!(a2.dim(), 3);
        let labels: Vec<String> = (0..3).map(|i| a2.path_label(i)).collect();
        assert_eq!(labels, vec!["e1", "e2", "a"]);
        assert_eq!(fixtures::one().dim(), 1);
        let dual = fixtures::dual();
        assert_eq!(dual.dim(), 2);
        assert_eq!(dual.nilpotency_bound(), 2);
        assert_eq!(fixtures::a3().dim(), 6);
    }

    #[test]
    fn structure_constants() {
        for alg in [fixtures::one(), fixtures::a2(), fixtures::a3(), fixtures::dual()] {
            assert!(alg.is_associative());
            assert!(alg.idempotents_sum_to_one());
        }
    }

    #[test]
    fn commutativity_relation_square() {
        // square 1 -> 2 -> 4, 1 -> 3 -> 4 with ab = cd
        let text = r#"{"field_char": 3, "vertices": ["1","2","3","4"],
            "arrows": [{"name":"a","from":"1","to":"2"},{"name":"b","from":"2","to":"4"},
                       {"name":"c","from":"1","to":"3"},{"name":"d","from":"3","to":"4"}],
            "relations": [[{"coef":1,"path":["a","b"]},{"coef":-1,"path":["c","d"]}]]}"#;
        let alg = Algebra::from_json(text).unwrap();
        // 4 trivial + 4 arrows + one surviving length-2 path
        assert_eq!(alg.dim(), 9);
        assert!(alg.is_associative());
        let p1 = projective(&alg, 0).unwrap();
        assert_eq!(p1.dims(), &[1, 1, 1, 1]);
    }

    #[test]
    fn projectives_and_simples() {
        let a2 = fixtures::a2();
        let p1 = projective(&a2, 0).unwrap();
        assert_eq!(p1.dims(), &[1, 1]);
        assert_eq!(p1.action()[0], Matrix::identity(1, 2));
        assert_eq!(projective(&a2, 1).unwrap().dims(), &[0, 1]);
        assert_eq!(simple(&a2, 0).unwrap().dims(), &[1, 0]);
        assert_eq!(simple(&a2, 1).unwrap().dims(), &[0, 1]);
        let one = fixtures::one();
        assert_eq!(projective(&one, 0).unwrap().dims(), &[1]);
        let dual = fixtures::dual();
        let s = simple(&dual, 0).unwrap();
        assert!(s.action()[0].is_zero());
        assert!(projective(&a2, 5).is_err());
    }

    #[test]
    fn rejects_bad_descriptions() {
        let short = r#"{"field_char": 2, "vertices": ["1"], "arrows": [{"name":"x","from":"1","to":"1"}],
            "relations": [[{"coef":1,"path":["x"]}]]}"#;
        assert!(matches!(Algebra::from_json(short), Err(Error::NonAdmissible { .. })));
        let free_loop = r#"{"field_char": 2, "vertices": ["1"], "arrows": [{"name":"x","from":"1","to":"1"}],
            "length_bound": 5}"#;
        assert!(matches!(Algebra::from_json(free_loop), Err(Error::NotFiniteDimensional { bound: 5 })));
        let composite = r#"{"field_char": 4, "vertices": ["1"], "arrows": []}"#;
        assert!(matches!(Algebra::from_json(composite), Err(Error::NotPrime(4))));
        let unknown = r#"{"field_char": 2, "vertices": ["1"], "arrows": [], "colour": "red"}"#;
        assert!(matches!(Algebra::from_json(unknown), Err(Error::Parse(_))));
        let dangling = r#"{"field_char": 2, "vertices": ["1"], "arrows": [{"name":"a","from":"1","to":"9"}]}"#;
        assert!(matches!(Algebra::from_json(dangling), Err(Error::UnknownVertex(_))));
    }
}
