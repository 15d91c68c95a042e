//! Browser bindings: link family of a graph, grid diagram drawing data and
//! Khovanov tables. Every export takes and returns JSON strings.

use graphhom::grid::{pd_to_grid, simplify_grid, GridDiagram};
use graphhom::kauffman::family;
use graphhom::khovanov::{euler_characteristic, khovanov_homology_capped, unnormalized_jones, Coeffs};
use graphhom::{Diagram, LinkDiagram};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Crossing cap for the in-browser Khovanov computation.
const WEB_CROSSING_CAP: usize = 12;

fn parse_diagram(json: &str) -> Result<Diagram, String> {
    Diagram::from_json_str(json).map_err(|e| e.to_string())
}

fn parse_link(json: &str) -> Result<LinkDiagram, String> {
    LinkDiagram::new(parse_diagram(json)?).map_err(|e| e.to_string())
}

fn to_json(v: &impl Serialize) -> Result<String, String> {
    serde_json::to_string(v).map_err(|e| e.to_string())
}

pub fn family_json(graph: &str) -> Result<String, String> {
    let f = family(&parse_diagram(graph)?).map_err(|e| e.to_string())?;
    to_json(&f)
}

#[derive(Serialize)]
struct Drawing {
    grid: GridDiagram,
    /// `[column, from_row, to_row]`, running from X to O.
    vertical: Vec<[usize; 3]>,
    /// `[row, from_column, to_column]`, running from O to X.
    horizontal: Vec<[usize; 3]>,
}

fn drawing(g: GridDiagram) -> Drawing {
    let n = g.n;
    let mut x_row = vec![0; n];
    let mut o_row = vec![0; n];
    for r in 0..n {
        x_row[g.x[r]] = r;
        o_row[g.o[r]] = r;
    }
    let vertical = (0..n).map(|c| [c, x_row[c], o_row[c]]).collect();
    let horizontal = (0..n).map(|r| [r, g.o[r], g.x[r]]).collect();
    Drawing { grid: g, vertical, horizontal }
}

/// Accepts a link diagram or a grid `{"n", "X", "O"}`.
pub fn grid_json(input: &str) -> Result<String, String> {
    let grid = match GridDiagram::from_json_str(input) {
        Ok(g) => g,
        Err(_) => simplify_grid(&pd_to_grid(&parse_link(input)?).map_err(|e| e.to_string())?),
    };
    to_json(&drawing(grid))
}

#[derive(Serialize)]
struct KhTable {
    /// `[i, j, rank, torsion orders]` with integer gradings.
    cells: Vec<(i64, i64, u64, Vec<String>)>,
    total_rank: u64,
    euler_matches_jones: bool,
}

pub fn khovanov_json(link: &str, coeffs: &str) -> Result<String, String> {
    let coeffs = match coeffs {
        "z" | "Z" => Coeffs::Z,
        "f2" | "F2" => Coeffs::F2,
        other => return Err(format!("unknown coefficients {other:?}")),
    };
    let l = parse_link(link)?;
    let h = khovanov_homology_capped(&l, coeffs, WEB_CROSSING_CAP).map_err(|e| e.to_string())?;
    let cells = h
        .iter()
        .map(|((a, b), c)| (a / 2, b / 2, c.rank, c.torsion.iter().map(|t| t.to_string()).collect()))
        .collect();
    let euler_matches_jones = euler_characteristic(&h) == unnormalized_jones(&l).map_err(|e| e.to_string())?;
    to_json(&KhTable { cells, total_rank: h.total_rank(), euler_matches_jones })
}

#[wasm_bindgen(js_name = linkFamily)]
pub fn link_family(graph: &str) -> Result<String, JsError> {
    family_json(graph).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = gridDrawing)]
pub fn grid_drawing(input: &str) -> Result<String, JsError> {
    grid_json(input).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = khovanovTable)]
pub fn khovanov_table(link: &str, coeffs: &str) -> Result<String, JsError> {
    khovanov_json(link, coeffs).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    const TREFOIL: &str = r#"{"crossings":[[1,4,2,5],[3,6,4,1],[5,2,6,3]]}"#;

    #[test]
    fn handcuff_family() {
        let v: Value = serde_json::from_str(&family_json(r#"{"vertices":[[0,0,1],[1,2,2]]}"#).unwrap()).unwrap();
        assert_eq!(v["members"].as_array().unwrap().len(), 2);
    }

    #[test]
    fn trefoil_grid_segments() {
        let v: Value = serde_json::from_str(&grid_json(TREFOIL).unwrap()).unwrap();
        assert_eq!(v["grid"]["n"], 5);
        assert_eq!(v["vertical"].as_array().unwrap().len(), 5);
        let g: Value = serde_json::from_str(&grid_json(r#"{"n":2,"X":[1,0],"O":[0,1]}"#).unwrap()).unwrap();
        assert_eq!(g["horizontal"], serde_json::json!([[0, 0, 1], [1, 1, 0]]));
    }

    #[test]
    fn trefoil_khovanov() {
        let v: Value = serde_json::from_str(&khovanov_json(TREFOIL, "z").unwrap()).unwrap();
        assert_eq!(v["total_rank"], 4);
        assert_eq!(v["euler_matches_jones"], true);
        let torsion: Vec<&Value> = v["cells"].as_array().unwrap().iter().filter(|c| !c[3].as_array().unwrap().is_empty()).collect();
        assert_eq!(torsion.len(), 1);
        assert!(khovanov_json(TREFOIL, "q").is_err());
        assert!(khovanov_json(r#"{"crossings":[[1,2,3]]}"#, "z").is_err());
    }
}
