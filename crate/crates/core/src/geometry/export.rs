use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{Cell, GeometryError, LiftedPolytope, RationalPoint, SchlegelDiagram};

/// OFF text. Dimensions up to 3 use the plain `OFF` header (padding with zero
/// coordinates); higher dimensions use `nOFF`. Exact values are kept in
/// comment lines as integers over a common denominator.
pub(super) fn off(vertices: &[RationalPoint], faces: impl Iterator<Item = Vec<usize>>, d: usize) -> String {
    let faces: Vec<Vec<usize>> = faces.collect();
    let mut out = String::new();
    let width = if d <= 3 {
        out.push_str("OFF\n");
        3
    } else {
        writeln!(out, "nOFF\n{d}").unwrap();
        d
    };
    let den = vertices
        .iter()
        .flat_map(|p| p.0.iter())
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    writeln!(out, "# exact coordinates = integers below / {den}").unwrap();
    for (i, p) in vertices.iter().enumerate() {
        let ints: Vec<String> = p.0.iter().map(|x| (x * &den).to_integer().to_string()).collect();
        writeln!(out, "# v{i}: {}", ints.join(" ")).unwrap();
    }
    writeln!(out, "{} {} 0", vertices.len(), faces.len()).unwrap();
    for p in vertices {
        let mut coords: Vec<String> = p.0.iter().map(|x| x.to_f64().unwrap_or(f64::NAN).to_string()).collect();
        coords.resize(width.max(coords.len()), "0".into());
        writeln!(out, "{}", coords.join(" ")).unwrap();
    }
    for f in faces {
        let ids: Vec<String> = f.iter().map(usize::to_string).collect();
        writeln!(out, "{} {}", f.len(), ids.join(" ")).unwrap();
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct Fraction {
    num: String,
    den: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct CellDoc {
    vertices: Vec<usize>,
    path: Vec<usize>,
}

/// Serialized form of a diagram or lifted polytope with exact coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeometryDoc {
    d: usize,
    lifted: bool,
    vertices: Vec<Vec<Fraction>>,
    cells: Vec<CellDoc>,
}

impl GeometryDoc {
    fn new(d: usize, lifted: bool, vertices: &[RationalPoint], cells: &[Cell]) -> Self {
        GeometryDoc {
            d,
            lifted,
            vertices: vertices
                .iter()
                .map(|p| {
                    p.0.iter()
                        .map(|x| Fraction {
                            num: x.numer().to_string(),
                            den: x.denom().to_string(),
                        })
                        .collect()
                })
                .collect(),
            cells: cells
                .iter()
                .map(|c| CellDoc {
                    vertices: c.vertices.clone(),
                    path: c.path.clone(),
                })
                .collect(),
        }
    }

    pub fn from_diagram(sd: &SchlegelDiagram) -> Self {
        GeometryDoc::new(sd.d, false, &sd.vertices, &sd.cells)
    }

    pub fn from_lifted(lp: &LiftedPolytope) -> Self {
        GeometryDoc::new(lp.d, true, &lp.vertices, &lp.cells)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("geometry serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, GeometryError> {
        serde_json::from_str(text).map_err(|e| GeometryError::Json(e.to_string()))
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn is_lifted(&self) -> bool {
        self.lifted
    }

    pub fn points(&self) -> Result<Vec<RationalPoint>, GeometryError> {
        self.vertices
            .iter()
            .map(|p| p.iter().map(parse_fraction).collect::<Result<Vec<_>, _>>().map(RationalPoint))
            .collect()
    }

    pub fn cells(&self) -> Vec<Cell> {
        self.cells
            .iter()
            .map(|c| Cell {
                vertices: c.vertices.clone(),
                path: c.path.clone(),
            })
            .collect()
    }
}

fn parse_fraction(f: &Fraction) -> Result<BigRational, GeometryError> {
    let bad = |what: &str| GeometryError::Json(format!("bad {what} in {f:?}"));
    let num: BigInt = f.num.parse().map_err(|_| bad("numerator"))?;
    let den: BigInt = f.den.parse().map_err(|_| bad("denominator"))?;
    if den.is_zero() {
        return Err(bad("denominator"));
    }
    Ok(BigRational::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::super::{lift, schlegel};
    use super::*;
    use crate::complex::{enumerate_trees, DecompositionTree};

    #[test]
    fn json_round_trip() {
        for (d, n) in [(2, 3), (3, 3), (4, 2)] {
            for t in enumerate_trees(d, n).unwrap() {
                let sd = schlegel(&t);
                let doc = GeometryDoc::from_json(&sd.to_json()).unwrap();
                assert_eq!(doc.points().unwrap(), sd.vertices());
                assert_eq!(doc.cells(), sd.cells());
                assert!(!doc.is_lifted());
            }
        }
    }

    #[test]
    fn json_shape() {
        let t = DecompositionTree::decode("(EEE)", 3).unwrap();
        let v: serde_json::Value = serde_json::from_str(&lift(&schlegel(&t)).to_json()).unwrap();
        assert_eq!(v["lifted"], true);
        assert_eq!(v["vertices"][2], serde_json::json!([
            {"num": "7", "den": "1"}, {"num": "7", "den": "1"}, {"num": "4", "den": "1"}
        ]));
    }

    #[test]
    fn malformed_json() {
        assert!(GeometryDoc::from_json("{").is_err());
        let doc = r#"{"d":2,"lifted":false,"vertices":[[{"num":"1","den":"0"}]],"cells":[]}"#;
        assert!(GeometryDoc::from_json(doc).unwrap().points().is_err());
    }

    #[test]
    fn off_layout() {
        let t = DecompositionTree::decode("(EEE)", 3).unwrap();
        let text = lift(&schlegel(&t)).to_off();
        let body: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
        assert_eq!(body[0], "OFF");
        assert_eq!(body[1], "4 4 0");
        assert_eq!(body[4], "7 7 4");
        assert_eq!(body[5], "0 0 0");
        assert_eq!(body[6], "3 3 1 2");

        let t = DecompositionTree::decode("(EE)", 2).unwrap();
        let text = schlegel(&t).to_off();
        assert!(text.contains("\n-1 1 0\n"));

        let t = DecompositionTree::decode("(EEEE)", 4).unwrap();
        let text = schlegel(&t).to_off();
        assert!(text.starts_with("nOFF\n4\n"));
    }

    #[test]
    fn off_keeps_exact_values() {
        let t = DecompositionTree::decode("((EEE)EE)", 3).unwrap();
        let text = schlegel(&t).to_off();
        assert!(text.contains("# exact coordinates = integers below / 3"));
        assert!(text.contains("# v4: 2 -1 -1"));
    }
}
