use std::collections::{BTreeSet, HashMap};

use super::ComplexError;

/// A finite simplicial complex on totally ordered vertices.
///
/// Vertices are identified by their position in the order; labels are kept
/// only for input and output. Simplices are stored as increasing vertex
/// index lists, grouped by dimension and sorted lexicographically, which
/// fixes the basis of every cochain group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    labels: Vec<String>,
    facets: Vec<Vec<usize>>,
    simplices: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
}

impl SimplicialComplex {
    /// Build a complex from facets given by label. `vertex_order` fixes the
    /// total order; declared vertices that appear in no facet become
    /// isolated points.
    pub fn from_facets<S: AsRef<str>>(facets: &[Vec<S>], vertex_order: &[S]) -> Result<Self, ComplexError> {
        if facets.is_empty() {
            return Err(ComplexError::NoFacets);
        }
        let labels: Vec<String> = vertex_order.iter().map(|s| s.as_ref().to_string()).collect();
        let mut lookup = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if lookup.insert(l.as_str(), i).is_some() {
                return Err(ComplexError::DuplicateVertex(l.clone()));
            }
        }
        let mut index_facets = Vec::with_capacity(facets.len());
        for facet in facets {
            if facet.is_empty() {
                return Err(ComplexError::EmptyFacet);
            }
            let mut f = Vec::with_capacity(facet.len());
            for v in facet {
                let v = v.as_ref();
                f.push(
                    *lookup
                        .get(v)
                        .ok_or_else(|| ComplexError::UnknownVertex(v.to_string()))?,
                );
            }
            index_facets.push(f);
        }
        Self::from_index_facets(labels, index_facets)
    }

    /// Facets given as vertex indices into `labels`.
    pub fn from_index_facets(labels: Vec<String>, facets: Vec<Vec<usize>>) -> Result<Self, ComplexError> {
        let n = labels.len();
        let mut seen = BTreeSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(ComplexError::DuplicateVertex(l.clone()));
            }
        }
        let mut cleaned: Vec<Vec<usize>> = Vec::with_capacity(facets.len() + n);
        for mut f in facets {
            if f.is_empty() {
                return Err(ComplexError::EmptyFacet);
            }
            if let Some(&bad) = f.iter().find(|&&v| v >= n) {
                return Err(ComplexError::UnknownVertex(format!("#{bad}")));
            }
            f.sort_unstable();
            f.dedup();
            cleaned.push(f);
        }
        // every declared vertex is a simplex
        cleaned.extend((0..n).map(|v| vec![v]));
        Ok(Self::build(labels, cleaned))
    }

    pub fn empty() -> Self {
        SimplicialComplex {
            labels: Vec::new(),
            facets: Vec::new(),
            simplices: Vec::new(),
            index: Vec::new(),
        }
    }

    fn build(labels: Vec<String>, candidates: Vec<Vec<usize>>) -> Self {
        let mut all: Vec<BTreeSet<Vec<usize>>> = Vec::new();
        for f in &candidates {
            let k = f.len();
            for mask in 1u64..(1u64 << k) {
                let s: Vec<usize> = (0..k).filter(|b| mask >> b & 1 == 1).map(|b| f[b]).collect();
                let d = s.len() - 1;
                if all.len() <= d {
                    all.resize(d + 1, BTreeSet::new());
                }
                all[d].insert(s);
            }
        }
        let simplices: Vec<Vec<Vec<usize>>> = all.into_iter().map(|set| set.into_iter().collect()).collect();
        let index: Vec<HashMap<Vec<usize>, usize>> = simplices
            .iter()
            .map(|level| level.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
            .collect();
        let mut cx = SimplicialComplex {
            labels,
            facets: Vec::new(),
            simplices,
            index,
        };
        cx.facets = cx.maximal_simplices();
        cx
    }

    fn maximal_simplices(&self) -> Vec<Vec<usize>> {
        let mut covered: Vec<Vec<bool>> = self.simplices.iter().map(|l| vec![false; l.len()]).collect();
        for d in 1..self.simplices.len() {
            for s in &self.simplices[d] {
                for skip in 0..s.len() {
                    let face: Vec<usize> = s
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != skip)
                        .map(|(_, &v)| v)
                        .collect();
                    covered[d - 1][self.index[d - 1][&face]] = true;
                }
            }
        }
        let mut facets = Vec::new();
        for (d, level) in self.simplices.iter().enumerate() {
            for (i, s) in level.iter().enumerate() {
                if !covered[d][i] {
                    facets.push(s.clone());
                }
            }
        }
        facets.sort();
        facets
    }

    /// Boundary of an `n`-gon on vertices `0..n`.
    pub fn polygon(n: usize) -> Self {
        assert!(n >= 3, "a polygon needs at least three vertices");
        let labels = (0..n).map(|i| i.to_string()).collect();
        let facets = (0..n).map(|i| vec![i, (i + 1) % n]).collect();
        Self::from_index_facets(labels, facets).expect("valid polygon")
    }

    /// The full `k`-simplex on vertices `0..=k`.
    pub fn simplex(k: usize) -> Self {
        let labels = (0..=k).map(|i| i.to_string()).collect();
        Self::from_index_facets(labels, vec![(0..=k).collect()]).expect("valid simplex")
    }

    pub fn point() -> Self {
        Self::simplex(0)
    }

    /// Boundary of the `(k+1)`-simplex, a `k`-sphere.
    pub fn simplex_boundary(k: usize) -> Self {
        let labels = (0..k + 2).map(|i| i.to_string()).collect();
        let facets = (0..k + 2)
            .map(|skip| (0..k + 2).filter(|&v| v != skip).collect())
            .collect();
        Self::from_index_facets(labels, facets).expect("valid sphere")
    }

    /// Six-vertex projective plane.
    pub fn projective_plane() -> Self {
        let facets = [
            [0, 1, 2],
            [0, 2, 3],
            [0, 3, 4],
            [0, 4, 5],
            [0, 1, 5],
            [1, 2, 4],
            [2, 3, 5],
            [1, 3, 4],
            [2, 4, 5],
            [1, 3, 5],
        ];
        let labels = (0..6).map(|i| i.to_string()).collect();
        Self::from_index_facets(labels, facets.iter().map(|f| f.to_vec()).collect()).expect("valid RP2")
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.simplices.len().checked_sub(1)
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    pub fn simplices(&self, d: usize) -> &[Vec<usize>] {
        self.simplices.get(d).map_or(&[], |v| v.as_slice())
    }

    pub fn simplex_index(&self, s: &[usize]) -> Option<usize> {
        let d = s.len().checked_sub(1)?;
        self.index.get(d)?.get(s).copied()
    }

    pub fn contains(&self, s: &[usize]) -> bool {
        self.simplex_index(s).is_some()
    }

    /// Number of simplices in each dimension.
    pub fn f_vector(&self) -> Vec<usize> {
        self.simplices.iter().map(Vec::len).collect()
    }

    pub fn simplex_count(&self) -> usize {
        self.simplices.iter().map(Vec::len).sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(d, &n)| if d % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }

    pub fn is_pure(&self) -> bool {
        let d = self.dim();
        self.facets.iter().all(|f| Some(f.len() - 1) == d)
    }

    /// Vertex sets of the connected components, ordered by least vertex.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for e in self.simplices(1) {
            let (a, b) = (find(&mut parent, e[0]), find(&mut parent, e[1]));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
        for v in 0..n {
            let r = find(&mut parent, v);
            groups.entry(r).or_default().push(v);
        }
        let mut out: Vec<Vec<usize>> = groups.into_values().collect();
        out.sort();
        out
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() == 1
    }

    /// Subcomplex of all simplices satisfying `keep`; the selection must be
    /// closed under taking faces. Vertices keep their relative order.
    pub fn subcomplex_where(&self, mut keep: impl FnMut(&[usize]) -> bool) -> SimplicialComplex {
        let chosen: Vec<Vec<usize>> = self.simplices.iter().flatten().filter(|s| keep(s)).cloned().collect();
        self.restrict(chosen)
    }

    /// Full subcomplex on a vertex set.
    pub fn induced_subcomplex(&self, vertices: &[usize]) -> SimplicialComplex {
        let set: BTreeSet<usize> = vertices.iter().copied().collect();
        self.subcomplex_where(|s| s.iter().all(|v| set.contains(v)))
    }

    fn restrict(&self, chosen: Vec<Vec<usize>>) -> SimplicialComplex {
        if chosen.is_empty() {
            return SimplicialComplex::empty();
        }
        let used: BTreeSet<usize> = chosen.iter().flatten().copied().collect();
        let remap: HashMap<usize, usize> = used.iter().enumerate().map(|(new, &old)| (old, new)).collect();
        let labels = used.iter().map(|&v| self.labels[v].clone()).collect();
        let facets = chosen
            .into_iter()
            .map(|s| s.into_iter().map(|v| remap[&v]).collect())
            .collect();
        Self::build(labels, facets)
    }

    /// Link of a simplex: faces disjoint from it whose union with it lies
    /// in the complex.
    pub fn link(&self, s: &[usize]) -> SimplicialComplex {
        let chosen: Vec<Vec<usize>> = self
            .facets
            .iter()
            .filter(|f| s.iter().all(|v| f.binary_search(v).is_ok()))
            .map(|f| {
                f.iter()
                    .copied()
                    .filter(|v| s.binary_search(v).is_err())
                    .collect::<Vec<_>>()
            })
            .filter(|rest| !rest.is_empty())
            .collect();
        self.restrict(chosen)
    }

    /// Barycentric subdivision. Vertex `k` of the result is the barycenter
    /// of the `k`-th simplex in dimension-then-lexicographic order, so every
    /// simplicial automorphism of `self` induces an automorphism of the
    /// subdivision that preserves vertex order on each simplex.
    pub fn barycentric_subdivision(&self) -> SimplicialComplex {
        self.barycentric_subdivision_with_map().0
    }

    /// Subdivision together with `map[d][i]`, the new vertex standing for
    /// the `i`-th simplex of dimension `d`.
    pub fn barycentric_subdivision_with_map(&self) -> (SimplicialComplex, Vec<Vec<usize>>) {
        let mut map = Vec::with_capacity(self.simplices.len());
        let mut labels = Vec::with_capacity(self.simplex_count());
        for level in &self.simplices {
            let mut ids = Vec::with_capacity(level.len());
            for s in level {
                ids.push(labels.len());
                labels.push(if s.len() == 1 {
                    self.labels[s[0]].clone()
                } else {
                    let inner: Vec<&str> = s.iter().map(|&v| self.labels[v].as_str()).collect();
                    format!("[{}]", inner.join(","))
                });
            }
            map.push(ids);
        }
        let mut facets = Vec::new();
        for f in &self.facets {
            let mut chain = Vec::with_capacity(f.len());
            self.flags(f, &mut Vec::new(), &mut chain, &map, &mut facets);
        }
        let sd = Self::from_index_facets(labels, facets).expect("subdivision is valid");
        (sd, map)
    }

    // enumerate maximal chains of faces of `facet` by growing vertex sets
    fn flags(
        &self,
        facet: &[usize],
        current: &mut Vec<usize>,
        chain: &mut Vec<usize>,
        map: &[Vec<usize>],
        out: &mut Vec<Vec<usize>>,
    ) {
        if current.len() == facet.len() {
            out.push(chain.clone());
            return;
        }
        for &v in facet {
            if current.contains(&v) {
                continue;
            }
            current.push(v);
            let mut s = current.clone();
            s.sort_unstable();
            let d = s.len() - 1;
            chain.push(map[d][self.index[d][&s]]);
            self.flags(facet, current, chain, map, out);
            chain.pop();
            current.pop();
        }
    }

    /// Join: all unions of a simplex of `self` with a simplex of `other`.
    /// Labels are kept when disjoint and prefixed with `l:`/`r:` otherwise.
    pub fn join(&self, other: &SimplicialComplex) -> SimplicialComplex {
        if self.is_empty() {
            return other.clone();
        }
        if other.is_empty() {
            return self.clone();
        }
        let (left, right) = disjoint_labels(&self.labels, &other.labels);
        let offset = self.vertex_count();
        let mut labels = left;
        labels.extend(right);
        let mut facets = Vec::new();
        for f in &self.facets {
            for g in &other.facets {
                let mut s = f.clone();
                s.extend(g.iter().map(|v| v + offset));
                facets.push(s);
            }
        }
        Self::from_index_facets(labels, facets).expect("join is valid")
    }

    /// Join with two points labelled `N` and `S`.
    pub fn suspension(&self) -> SimplicialComplex {
        let poles = Self::from_index_facets(vec!["N".into(), "S".into()], vec![vec![0], vec![1]]).expect("two points");
        self.join(&poles)
    }

    /// Product with the staircase triangulation: simplices are chains
    /// `(x_0,y_0) < ... < (x_k,y_k)` increasing in both vertex orders whose
    /// projections are simplices. Vertex `(x, y)` is labelled `(x,y)` and
    /// placed at position `x * |Y| + y`.
    pub fn product(&self, other: &SimplicialComplex) -> SimplicialComplex {
        self.product_with_local_order(other, |f| f.to_vec())
    }

    /// Staircase product in which the vertices of each facet of `self` are
    /// walked in the order returned by `order` rather than by index. The
    /// orders must agree on shared faces. A map of `self` that carries
    /// these local orders to each other then acts simplicially on the
    /// product, which a global order cannot achieve for a rotation.
    pub fn product_with_local_order(
        &self,
        other: &SimplicialComplex,
        order: impl Fn(&[usize]) -> Vec<usize>,
    ) -> SimplicialComplex {
        if self.is_empty() || other.is_empty() {
            return SimplicialComplex::empty();
        }
        let ny = other.vertex_count();
        let mut labels = Vec::with_capacity(self.vertex_count() * ny);
        for x in &self.labels {
            for y in &other.labels {
                labels.push(format!("({x},{y})"));
            }
        }
        let mut facets = Vec::new();
        for f in &self.facets {
            let f = order(f);
            for g in &other.facets {
                let mut path = vec![(0usize, 0usize)];
                staircase_paths(f.len() - 1, g.len() - 1, &mut path, &mut |p| {
                    facets.push(p.iter().map(|&(i, j)| f[i] * ny + g[j]).collect());
                });
            }
        }
        Self::from_index_facets(labels, facets).expect("product is valid")
    }
}

/// Local order for complexes built on the cycle `0 → 1 → … → n-1 → 0`:
/// vertices `≥ n` first, then cycle vertices along the cycle. It is
/// invariant under the rotation `i ↦ i + 1 mod n` fixing the others.
pub fn cyclic_local_order(n: usize) -> impl Fn(&[usize]) -> Vec<usize> {
    move |f: &[usize]| {
        let mut out: Vec<usize> = f.iter().copied().filter(|&v| v >= n).collect();
        let mut cyc: Vec<usize> = f.iter().copied().filter(|&v| v < n).collect();
        if n > 2 && cyc.len() == 2 && cyc[0] == 0 && cyc[1] == n - 1 {
            cyc.reverse();
        }
        out.extend(cyc);
        out
    }
}

fn staircase_paths(a: usize, b: usize, path: &mut Vec<(usize, usize)>, emit: &mut impl FnMut(&[(usize, usize)])) {
    let (i, j) = *path.last().unwrap();
    if i == a && j == b {
        emit(path);
        return;
    }
    if i < a {
        path.push((i + 1, j));
        staircase_paths(a, b, path, emit);
        path.pop();
    }
    if j < b {
        path.push((i, j + 1));
        staircase_paths(a, b, path, emit);
        path.pop();
    }
}

fn disjoint_labels(a: &[String], b: &[String]) -> (Vec<String>, Vec<String>) {
    let set: BTreeSet<&String> = a.iter().collect();
    if b.iter().any(|l| set.contains(l)) {
        (
            a.iter().map(|l| format!("l:{l}")).collect(),
            b.iter().map(|l| format!("r:{l}")).collect(),
        )
    } else {
        (a.to_vec(), b.to_vec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_boundary() {
        let cx = SimplicialComplex::from_facets(&[vec!["1", "2"], vec!["2", "3"], vec!["1", "3"]], &["1", "2", "3"])
            .unwrap();
        assert_eq!(cx.dim(), Some(1));
        assert_eq!(cx.f_vector(), vec![3, 3]);
    }

    #[test]
    fn full_triangle_has_seven_faces() {
        let cx = SimplicialComplex::from_facets(&[vec!["1", "2", "3"]], &["1", "2", "3"]).unwrap();
        assert_eq!(cx.simplex_count(), 7);
        assert_eq!(cx.euler_characteristic(), 1);
    }

    #[test]
    fn redundant_facet_dropped() {
        let cx = SimplicialComplex::from_facets(&[vec!["1", "2", "3"], vec!["1", "2"]], &["1", "2", "3"]).unwrap();
        assert_eq!(cx.facets(), &[vec![0, 1, 2]]);
    }

    #[test]
    fn construction_errors() {
        let none: [Vec<&str>; 0] = [];
        assert_eq!(
            SimplicialComplex::from_facets(&none, &["a"]),
            Err(ComplexError::NoFacets)
        );
        assert_eq!(
            SimplicialComplex::from_facets(&[vec!["a", "z"]], &["a", "b"]),
            Err(ComplexError::UnknownVertex("z".into()))
        );
        assert_eq!(
            SimplicialComplex::from_facets(&[vec![]], &["a"]),
            Err(ComplexError::EmptyFacet)
        );
        assert_eq!(
            SimplicialComplex::from_facets(&[vec!["a"]], &["a", "a"]),
            Err(ComplexError::DuplicateVertex("a".into()))
        );
    }

    #[test]
    fn euler_characteristics() {
        assert_eq!(SimplicialComplex::polygon(5).euler_characteristic(), 0);
        assert_eq!(SimplicialComplex::polygon(3).suspension().euler_characteristic(), 2);
        assert_eq!(SimplicialComplex::simplex(2).euler_characteristic(), 1);
        assert_eq!(SimplicialComplex::polygon(5).suspension().euler_characteristic(), 2);
    }

    #[test]
    fn subdivided_edge_is_path() {
        let sd = SimplicialComplex::simplex(1).barycentric_subdivision();
        assert_eq!(sd.f_vector(), vec![3, 2]);
        assert_eq!(sd.labels(), &["0", "1", "[0,1]"]);
    }

    #[test]
    fn product_of_triangles_is_torus_sized() {
        let t = SimplicialComplex::polygon(3).product(&SimplicialComplex::polygon(3));
        assert_eq!(t.f_vector(), vec![9, 27, 18]);
        assert_eq!(t.euler_characteristic(), 0);
    }

    #[test]
    fn rotation_invariant_product() {
        let c = SimplicialComplex::polygon(3);
        let t = c.product_with_local_order(&c, cyclic_local_order(3));
        assert_eq!(t.f_vector(), vec![9, 27, 18]);
        // (x, y) -> (x + 1, y) permutes the facets
        let rot = |v: usize| ((v / 3 + 1) % 3) * 3 + v % 3;
        for f in t.facets() {
            let mut img: Vec<usize> = f.iter().map(|&v| rot(v)).collect();
            img.sort();
            assert!(t.contains(&img));
        }
        let plain = c.product(&c);
        let moved = plain.facets().iter().any(|f| {
            let mut img: Vec<usize> = f.iter().map(|&v| rot(v)).collect();
            img.sort();
            !plain.contains(&img)
        });
        assert!(moved);
    }

    #[test]
    fn join_relabels_on_collision() {
        let j = SimplicialComplex::polygon(3).join(&SimplicialComplex::polygon(3));
        assert_eq!(j.vertex_count(), 6);
        assert_eq!(j.label(0), "l:0");
        assert_eq!(j.facets().len(), 9);
        assert_eq!(j.euler_characteristic(), 0);
    }

    #[test]
    fn links() {
        let s2 = SimplicialComplex::polygon(5).suspension();
        let north = s2.vertex_index("N").unwrap();
        let lk = s2.link(&[north]);
        assert_eq!(lk.f_vector(), vec![5, 5]);
        assert!(s2.link(&s2.facets()[0].clone()).is_empty());
    }

    #[test]
    fn components() {
        let two = SimplicialComplex::from_facets(&[vec!["a", "b"], vec!["c"]], &["a", "b", "c"]).unwrap();
        assert_eq!(two.connected_components(), vec![vec![0, 1], vec![2]]);
        assert!(!two.is_connected());
    }
}
