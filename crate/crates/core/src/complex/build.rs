use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::colour::ColourVector;
use super::tree::{DecompositionTree, Node};
use super::ComplexError;

/// A rooted Fuss-Catalan complex together with its unique proper colouring.
///
/// Vertex ids: the marked facet comes first (ids `0..d`, coloured `1..=d`),
/// followed by one apex per tree node in depth-first creation order. Each
/// maximal simplex is stored in its induced order, apex first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColouredComplex {
    d: usize,
    colours: Vec<usize>,
    simplices: Vec<Vec<usize>>,
    marked: Vec<usize>,
    boundary: Vec<Vec<usize>>,
}

impl ColouredComplex {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn index(&self) -> usize {
        self.simplices.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.colours.len()
    }

    pub fn colour(&self, vertex: usize) -> usize {
        self.colours[vertex]
    }

    pub fn colours(&self) -> &[usize] {
        &self.colours
    }

    /// Maximal simplices in their induced vertex order.
    pub fn simplices(&self) -> &[Vec<usize>] {
        &self.simplices
    }

    pub fn marked(&self) -> &[usize] {
        &self.marked
    }

    /// Boundary `(d-1)`-simplices, each as a sorted id list, in sorted order.
    pub fn boundary_facets(&self) -> &[Vec<usize>] {
        &self.boundary
    }

    /// Overwrites one vertex colour. The result is generally not proper; used to
    /// build negative controls.
    pub fn recolour(&mut self, vertex: usize, colour: usize) {
        self.colours[vertex] = colour;
    }

    pub fn colour_vector(&self) -> ColourVector {
        let mut counts = vec![0u64; self.d + 1];
        for &c in &self.colours {
            counts[c] += 1;
        }
        ColourVector::new(counts)
    }

    /// Edges of the 1-skeleton as ordered pairs `(lo, hi)`.
    pub fn one_skeleton(&self) -> BTreeSet<(usize, usize)> {
        let mut edges = BTreeSet::new();
        let faces = self.simplices.iter().chain(self.boundary.iter());
        for face in faces.chain(std::iter::once(&self.marked)) {
            for (i, &a) in face.iter().enumerate() {
                for &b in &face[i + 1..] {
                    edges.insert((a.min(b), a.max(b)));
                }
            }
        }
        edges
    }

    pub fn is_proper(&self) -> bool {
        self.one_skeleton()
            .iter()
            .all(|&(a, b)| self.colours[a] != self.colours[b])
    }

    /// Facets shared by two maximal simplices.
    pub fn interior_facets(&self) -> Vec<Vec<usize>> {
        facet_multiplicities(&self.simplices)
            .into_iter()
            .filter_map(|(f, m)| (m == 2).then_some(f))
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&ComplexJson::from(self)).expect("complex serializes")
    }
}

/// Builds the complex encoded by `tree` and colours it.
///
/// Gluing rule: for a simplex with ordered vertices `u0 < u1 < ... < ud`, the
/// subtree in slot `j` sits on the facet omitting `uj`, inherits that facet in
/// induced order as its marked simplex, and its apex takes the colour of `uj`.
pub fn build_complex(tree: &DecompositionTree) -> ColouredComplex {
    let d = tree.d();
    let n = tree.index();
    let mut colours: Vec<usize> = (1..=d).collect();
    colours.reserve(n);
    let marked: Vec<usize> = (0..d).collect();
    let mut simplices = Vec::with_capacity(n);

    if let Some(root) = tree.root() {
        glue(root, &marked, 0, &mut colours, &mut simplices);
    }

    let boundary = if simplices.is_empty() {
        vec![marked.clone()]
    } else {
        facet_multiplicities(&simplices)
            .into_iter()
            .filter_map(|(f, m)| (m == 1).then_some(f))
            .collect()
    };

    ColouredComplex {
        d,
        colours,
        simplices,
        marked,
        boundary,
    }
}

fn glue(
    node: &Node,
    facet: &[usize],
    apex_colour: usize,
    colours: &mut Vec<usize>,
    simplices: &mut Vec<Vec<usize>>,
) {
    let apex = colours.len();
    colours.push(apex_colour);
    let mut simplex = Vec::with_capacity(facet.len() + 1);
    simplex.push(apex);
    simplex.extend_from_slice(facet);
    simplices.push(simplex.clone());

    for (slot, child) in node.slots().enumerate() {
        let Some(child) = child else { continue };
        let omitted = slot + 1;
        let sub_facet: Vec<usize> = simplex
            .iter()
            .enumerate()
            .filter_map(|(i, &v)| (i != omitted).then_some(v))
            .collect();
        let inherited = colours[simplex[omitted]];
        glue(child, &sub_facet, inherited, colours, simplices);
    }
}

fn facet_multiplicities(simplices: &[Vec<usize>]) -> BTreeMap<Vec<usize>, usize> {
    let mut counts = BTreeMap::new();
    for s in simplices {
        let mut sorted = s.clone();
        sorted.sort_unstable();
        for skip in 0..sorted.len() {
            let facet: Vec<usize> = sorted
                .iter()
                .enumerate()
                .filter_map(|(i, &v)| (i != skip).then_some(v))
                .collect();
            *counts.entry(facet).or_insert(0) += 1;
        }
    }
    counts
}

/// Boundary and interior face counts of a complex of positive index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FVector {
    /// `boundary[i]` is the number of `i`-simplices on the boundary, `i = 0..d`.
    pub boundary: Vec<u64>,
    pub interior_maximal: u64,
    pub interior_facets: u64,
}

/// Measures the f-vector by enumerating faces of the built complex.
pub fn f_vector(cx: &ColouredComplex) -> Result<FVector, ComplexError> {
    if cx.index() == 0 {
        return Err(ComplexError::Degenerate);
    }
    let mut faces: Vec<BTreeSet<Vec<usize>>> = vec![BTreeSet::new(); cx.d];
    for facet in &cx.boundary {
        collect_subsets(facet, 0, &mut Vec::new(), &mut faces);
    }
    Ok(FVector {
        boundary: faces.iter().map(|s| s.len() as u64).collect(),
        interior_maximal: cx.index() as u64,
        interior_facets: cx.interior_facets().len() as u64,
    })
}

fn collect_subsets(
    facet: &[usize],
    start: usize,
    current: &mut Vec<usize>,
    out: &mut [BTreeSet<Vec<usize>>],
) {
    for i in start..facet.len() {
        current.push(facet[i]);
        out[current.len() - 1].insert(current.clone());
        collect_subsets(facet, i + 1, current, out);
        current.pop();
    }
}

/// Closed-form boundary counts for index `n >= 1`:
/// `f(d-1) = n(d-1) + 2` and `f(i) = n*C(d,i) + C(d,i+1)` below that.
pub fn f_vector_formula(n: u64, d: usize) -> Result<Vec<u64>, ComplexError> {
    super::tree::check_dimension(d)?;
    if n == 0 {
        return Err(ComplexError::Degenerate);
    }
    let d64 = d as u64;
    let mut out: Vec<u64> = (0..d - 1)
        .map(|i| n * small_binom(d64, i as u64) + small_binom(d64, i as u64 + 1))
        .collect();
    out.push(n * (d64 - 1) + 2);
    Ok(out)
}

fn small_binom(m: u64, k: u64) -> u64 {
    if k > m {
        return 0;
    }
    (0..k.min(m - k)).fold(1u64, |acc, i| acc * (m - i) / (i + 1))
}

#[derive(Serialize, Deserialize)]
struct VertexJson {
    id: usize,
    colour: usize,
}

#[derive(Serialize, Deserialize)]
struct ComplexJson {
    d: usize,
    n: usize,
    vertices: Vec<VertexJson>,
    simplices: Vec<Vec<usize>>,
    marked: Vec<usize>,
}

impl From<&ColouredComplex> for ComplexJson {
    fn from(cx: &ColouredComplex) -> Self {
        ComplexJson {
            d: cx.d,
            n: cx.index(),
            vertices: cx
                .colours
                .iter()
                .enumerate()
                .map(|(id, &colour)| VertexJson { id, colour })
                .collect(),
            simplices: cx.simplices.clone(),
            marked: cx.marked.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::enumerate_trees;

    fn built(text: &str, d: usize) -> ColouredComplex {
        build_complex(&DecompositionTree::decode(text, d).unwrap())
    }

    #[test]
    fn triangle() {
        let cx = built("(EE)", 2);
        assert_eq!(cx.vertex_count(), 3);
        assert_eq!(cx.marked(), &[0, 1]);
        assert_eq!(cx.colours(), &[1, 2, 0]);
        assert_eq!(cx.simplices(), &[vec![2, 0, 1]]);
        assert_eq!(cx.one_skeleton().len(), 3);
        assert!(cx.is_proper());
        assert_eq!(cx.colour_vector().counts(), &[1, 1, 1]);
    }

    #[test]
    fn second_apex_takes_colour_of_omitted_vertex() {
        let cx = built("(E(EEE)E)", 3);
        assert_eq!(cx.vertex_count(), 5);
        // root simplex (3,0,1,2); slot 2 omits vertex 1, which has colour 2
        assert_eq!(cx.simplices()[1], vec![4, 3, 0, 2]);
        assert_eq!(cx.colour(4), 2);
        assert_eq!(cx.colour_vector().counts(), &[1, 1, 2, 1]);
    }

    #[test]
    fn index_zero_is_marked_facet() {
        let cx = build_complex(&DecompositionTree::empty(2).unwrap());
        assert_eq!(cx.index(), 0);
        assert_eq!(cx.colour_vector().counts(), &[0, 1, 1]);
        assert_eq!(cx.one_skeleton().len(), 1);
        assert!(matches!(f_vector(&cx), Err(ComplexError::Degenerate)));
    }

    #[test]
    fn single_simplex_colour_vectors() {
        assert_eq!(built("(EEE)", 3).colour_vector().counts(), &[1, 1, 1, 1]);
    }

    #[test]
    fn clash_is_detected() {
        let mut cx = built("((EE)E)", 2);
        assert!(cx.is_proper());
        let apex = cx.simplices()[0][0];
        cx.recolour(apex, cx.colour(0));
        assert!(!cx.is_proper());
    }

    #[test]
    fn f_vector_examples() {
        let fv = f_vector(&built("(EEE)", 3)).unwrap();
        assert_eq!(fv.boundary, vec![4, 6, 4]);
        assert_eq!((fv.interior_maximal, fv.interior_facets), (1, 0));

        let fv = f_vector(&built("(E(EEE)E)", 3)).unwrap();
        assert_eq!(fv.boundary, vec![5, 9, 6]);
        assert_eq!((fv.interior_maximal, fv.interior_facets), (2, 1));

        assert_eq!(f_vector_formula(1, 3).unwrap(), vec![4, 6, 4]);
        assert_eq!(f_vector_formula(2, 3).unwrap(), vec![5, 9, 6]);
        assert_eq!(f_vector_formula(4, 2).unwrap(), vec![6, 6]);
        assert!(f_vector_formula(0, 3).is_err());
    }

    #[test]
    fn hexagon_boundary() {
        for t in enumerate_trees(2, 4).unwrap() {
            let fv = f_vector(&build_complex(&t)).unwrap();
            assert_eq!(fv.boundary, vec![6, 6]);
            assert_eq!(fv.interior_facets, 3);
        }
    }

    #[test]
    fn exactly_one_c0_vertex_at_index_one() {
        for d in 2..=5 {
            let t = enumerate_trees(d, 1).unwrap().next().unwrap();
            let cx = build_complex(&t);
            assert_eq!(cx.colours().iter().filter(|&&c| c == 0).count(), 1);
        }
    }

    #[test]
    fn json_shape() {
        let v: serde_json::Value = serde_json::from_str(&built("(EE)", 2).to_json()).unwrap();
        assert_eq!(v["d"], 2);
        assert_eq!(v["n"], 1);
        assert_eq!(v["vertices"][2]["colour"], 0);
        assert_eq!(v["simplices"][0], serde_json::json!([2, 0, 1]));
        assert_eq!(v["marked"], serde_json::json!([0, 1]));
    }
}
