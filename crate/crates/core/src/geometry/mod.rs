//! Exact Schlegel diagrams by iterated barycentric subdivision, the paraboloid
//! lift, and OFF/JSON/SVG export.

mod export;
mod svg;

pub use export::GeometryDoc;
pub use svg::render_svg;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::complex::{DecompositionTree, Node};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("SVG rendering needs d = 2, got d = {0}")]
    UnsupportedDimension(usize),
    #[error("malformed geometry JSON: {0}")]
    Json(String),
}

/// Point with exact rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RationalPoint(pub Vec<BigRational>);

impl RationalPoint {
    pub fn from_integers(coords: &[i64]) -> Self {
        RationalPoint(coords.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn squared_norm(&self) -> BigRational {
        self.0.iter().map(|a| a * a).sum()
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// A final (d-1)-simplex of the subdivision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    /// Vertex ids in inherited order, the newest barycenter first.
    pub vertices: Vec<usize>,
    /// 1-based slot choices from the root node down to this cell.
    pub path: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchlegelDiagram {
    d: usize,
    vertices: Vec<RationalPoint>,
    cells: Vec<Cell>,
    depth: usize,
}

impl SchlegelDiagram {
    pub fn d(&self) -> usize {
        self.d
    }

    /// Base simplex first, then barycenters in depth-first order.
    pub fn vertices(&self) -> &[RationalPoint] {
        &self.vertices
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    /// Largest node depth in the tree; zero for the empty tree.
    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Whether every vertex lies in the closed base simplex. A point `x` on the
    /// hyperplane `sum x = 0` has barycentric coordinates `(1 - x_k) / d`.
    pub fn inside_base(&self) -> bool {
        let d = BigRational::from_integer(self.d.into());
        let (zero, one) = (BigRational::zero(), BigRational::one());
        self.vertices.iter().all(|p| {
            p.0.iter().sum::<BigRational>().is_zero()
                && p.0.iter().all(|x| {
                    let l = (&one - x) / &d;
                    zero <= l && l <= one
                })
        })
    }

    /// Vertices scaled by `d^depth`, which must have integer coordinates.
    pub fn scaled_to_integers(&self) -> Option<Vec<Vec<BigInt>>> {
        let scale = BigRational::from_integer(num_traits::pow(BigInt::from(self.d), self.depth));
        self.vertices
            .iter()
            .map(|p| {
                p.0.iter()
                    .map(|x| {
                        let y = x * &scale;
                        y.is_integer().then(|| y.to_integer())
                    })
                    .collect()
            })
            .collect()
    }

    pub fn to_json(&self) -> String {
        GeometryDoc::from_diagram(self).to_json()
    }

    pub fn to_off(&self) -> String {
        export::off(&self.vertices, self.cells.iter().map(|c| c.vertices.clone()), self.d)
    }
}

/// Lifted vertex set with the diagram's cells plus the base face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedPolytope {
    d: usize,
    vertices: Vec<RationalPoint>,
    cells: Vec<Cell>,
}

impl LiftedPolytope {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn vertices(&self) -> &[RationalPoint] {
        &self.vertices
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    /// Facets: every diagram cell and the base simplex.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        let mut faces: Vec<Vec<usize>> = self.cells.iter().map(|c| c.vertices.clone()).collect();
        let base: Vec<usize> = (0..self.d).collect();
        // the index-0 diagram is the base face itself
        if !faces.contains(&base) {
            faces.push(base);
        }
        faces
    }

    pub fn to_json(&self) -> String {
        GeometryDoc::from_lifted(self).to_json()
    }

    pub fn to_off(&self) -> String {
        export::off(&self.vertices, self.faces().into_iter(), self.d)
    }
}

/// The `d` ordered points with `1 - d` in position `i` and `1` elsewhere.
pub fn base_simplex(d: usize) -> Vec<RationalPoint> {
    (0..d)
        .map(|i| {
            let coords: Vec<i64> = (0..d).map(|k| if k == i { 1 - d as i64 } else { 1 }).collect();
            RationalPoint::from_integers(&coords)
        })
        .collect()
}

fn barycenter(points: &[&RationalPoint]) -> RationalPoint {
    let n = BigRational::from_integer(points.len().into());
    let dim = points[0].dim();
    RationalPoint(
        (0..dim)
            .map(|k| points.iter().map(|p| &p.0[k]).sum::<BigRational>() / &n)
            .collect(),
    )
}

/// Realises a tree as a subdivision of the base simplex. Each node inserts the
/// barycenter of its cell; the slot-`j` child gets the barycenter followed by
/// the cell minus its `j`-th vertex.
pub fn schlegel(tree: &DecompositionTree) -> SchlegelDiagram {
    let d = tree.d();
    let mut sd = SchlegelDiagram {
        d,
        vertices: base_simplex(d),
        cells: Vec::new(),
        depth: 0,
    };
    subdivide(&mut sd, tree.root(), (0..d).collect(), &mut Vec::new());
    sd
}

fn subdivide(sd: &mut SchlegelDiagram, node: Option<&Node>, cell: Vec<usize>, path: &mut Vec<usize>) {
    let Some(node) = node else {
        sd.cells.push(Cell {
            vertices: cell,
            path: path.clone(),
        });
        return;
    };
    sd.depth = sd.depth.max(path.len() + 1);
    let corners: Vec<&RationalPoint> = cell.iter().map(|&v| &sd.vertices[v]).collect();
    let b = barycenter(&corners);
    let id = sd.vertices.len();
    sd.vertices.push(b);
    for (j, child) in node.slots().enumerate() {
        let mut sub = vec![id];
        sub.extend(cell.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &v)| v));
        path.push(j + 1);
        subdivide(sd, child, sub, path);
        path.pop();
    }
}

/// `V + (1, ..., 1) * |V|^2`.
pub fn lift_point(p: &RationalPoint) -> RationalPoint {
    let norm = p.squared_norm();
    RationalPoint(p.0.iter().map(|a| a + &norm).collect())
}

pub fn lift(sd: &SchlegelDiagram) -> LiftedPolytope {
    LiftedPolytope {
        d: sd.d,
        vertices: sd.vertices.iter().map(lift_point).collect(),
        cells: sd.cells.clone(),
    }
}
