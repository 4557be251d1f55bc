//! Text formats for knots: tabulation JSON and vertex CSV in both directions, OBJ polylines out.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::knot::{build_knot, AxisColumns, KnotError, LatticeKnot, Tabulation};
use crate::lattice::{LatticePoint, StickType};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("invalid tabulation JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("line {line}, column {column}: {message}")]
    Csv { line: u64, column: usize, message: String },
    #[error("no vertices found")]
    NoVertices,
    #[error(transparent)]
    Knot(#[from] KnotError),
}

/// On-disk shape of a tabulation; `origin` defaults to the lattice origin.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct TabulationFile {
    types: Vec<StickType>,
    lengths: AxisColumns,
    #[serde(default)]
    origin: [i64; 3],
}

/// Compact single-line JSON followed by a newline.
pub fn tabulation_to_json(tab: &Tabulation, origin: LatticePoint) -> String {
    let file = TabulationFile { types: tab.types.clone(), lengths: tab.lengths.clone(), origin: origin.to_array() };
    let mut s = serde_json::to_string(&file).expect("tabulations always serialize");
    s.push('\n');
    s
}

pub fn tabulation_from_json(text: &str) -> Result<(Tabulation, LatticePoint), IoError> {
    let file: TabulationFile = serde_json::from_str(text)?;
    Ok((Tabulation { types: file.types, lengths: file.lengths }, LatticePoint::from_array(file.origin)))
}

/// Parses and validates a tabulation into a knot.
pub fn knot_from_json(text: &str) -> Result<LatticeKnot, IoError> {
    let (tab, origin) = tabulation_from_json(text)?;
    Ok(build_knot(&tab, origin)?)
}

/// The canonical tabulation, starting at the least critical vertex.
pub fn canonical_json(knot: &LatticeKnot) -> String {
    let (tab, origin) = knot.canonical_tabulation();
    tabulation_to_json(&tab, origin)
}

/// One row per unit vertex in arc order, header `x,y,z,critical`.
pub fn vertices_to_csv(knot: &LatticeKnot) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["x", "y", "z", "critical"]).expect("in-memory write");
    for (i, v) in knot.vertices().iter().enumerate() {
        let crit = if knot.is_critical(i) { "1" } else { "0" };
        w.write_record([v.x.to_string(), v.y.to_string(), v.z.to_string(), crit.to_string()]).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
}

/// Reads `x,y,z[,critical]` rows; the header and the critical column are optional
/// and the critical flags are recomputed rather than trusted.
pub fn vertices_from_csv(text: &str) -> Result<Vec<LatticePoint>, IoError> {
    let mut r =
        csv::ReaderBuilder::new().has_headers(false).flexible(true).trim(csv::Trim::All).from_reader(text.as_bytes());
    let mut out = Vec::new();
    for (k, rec) in r.records().enumerate() {
        let rec = rec.map_err(|e| IoError::Csv {
            line: e.position().map_or(0, |p| p.line()),
            column: 0,
            message: e.to_string(),
        })?;
        let line = rec.position().map_or(k as u64 + 1, |p| p.line());
        if rec.iter().all(|f| f.is_empty()) {
            continue;
        }
        if k == 0 && rec.get(0).is_some_and(|f| f.eq_ignore_ascii_case("x")) {
            continue;
        }
        if rec.len() < 3 {
            return Err(IoError::Csv { line, column: rec.len() + 1, message: "expected x,y,z".into() });
        }
        let mut c = [0i64; 3];
        for (col, slot) in c.iter_mut().enumerate() {
            let field = &rec[col];
            *slot = field.parse().map_err(|_| IoError::Csv {
                line,
                column: col + 1,
                message: format!("not an integer: {field:?}"),
            })?;
        }
        out.push(LatticePoint::from_array(c));
    }
    if out.is_empty() {
        return Err(IoError::NoVertices);
    }
    Ok(out)
}

pub fn knot_from_csv(text: &str) -> Result<LatticeKnot, IoError> {
    Ok(LatticeKnot::from_vertices(&vertices_from_csv(text)?)?)
}

/// Every unit vertex as a `v` line, then one closed `l` polyline through them.
pub fn knot_to_obj(knot: &LatticeKnot) -> String {
    let mut s = String::new();
    for v in knot.vertices() {
        s.push_str(&format!("v {} {} {}\n", v.x, v.y, v.z));
    }
    s.push('l');
    for i in 1..=knot.edge_length() {
        s.push_str(&format!(" {i}"));
    }
    s.push_str(" 1\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trefoil() -> LatticeKnot {
        knot_from_json(
            r#"{"types":["z+","x+","y+","z-","x-","y-","z+","x+","y+","z-","x-","y-"],
               "lengths":{"x":[2,3,2,1],"y":[1,2,3,2],"z":[3,2,1,2]}}"#,
        )
        .unwrap()
    }

    #[test]
    fn json_round_trip() {
        let k = trefoil();
        let (tab, origin) = k.tabulation();
        let text = tabulation_to_json(&tab, origin);
        assert!(text.ends_with("}\n") && !text.trim_end().contains('\n'));
        assert_eq!(knot_from_json(&text).unwrap(), k);
    }

    #[test]
    fn json_origin_is_honoured() {
        let text = r#"{"types":["x+","y+","x-","y-"],"lengths":{"x":[1,1],"y":[1,1],"z":[]},"origin":[3,-1,2]}"#;
        assert_eq!(knot_from_json(text).unwrap().vertex(0), LatticePoint::new(3, -1, 2));
    }

    #[test]
    fn json_errors() {
        assert!(matches!(knot_from_json("{"), Err(IoError::Json(_))));
        let open = r#"{"types":["x+","y+","x-","y-"],"lengths":{"x":[1,2],"y":[1,1],"z":[]}}"#;
        assert!(matches!(knot_from_json(open), Err(IoError::Knot(KnotError::NotClosed { .. }))));
    }

    #[test]
    fn csv_round_trip() {
        let k = trefoil();
        let text = vertices_to_csv(&k);
        assert!(text.starts_with("x,y,z,critical\n"));
        assert_eq!(text.lines().count(), 25);
        assert_eq!(knot_from_csv(&text).unwrap(), k);
    }

    #[test]
    fn csv_without_header_and_with_corners_only() {
        let k = knot_from_csv("0,0,0\n2,0,0\n2,1,0\n0,1,0\n").unwrap();
        assert_eq!(k.edge_length(), 6);
    }

    #[test]
    fn csv_reports_position() {
        let err = vertices_from_csv("x,y,z\n0,0,0\n1,zz,0\n").unwrap_err();
        match err {
            IoError::Csv { line, column, .. } => assert_eq!((line, column), (3, 2)),
            e => panic!("unexpected {e}"),
        }
        assert!(matches!(vertices_from_csv("x,y,z\n"), Err(IoError::NoVertices)));
        assert!(matches!(vertices_from_csv("1,2\n"), Err(IoError::Csv { line: 1, column: 3, .. })));
    }

    #[test]
    fn obj_polyline() {
        let sq = knot_from_csv("0,0,0\n1,0,0\n1,1,0\n0,1,0\n").unwrap();
        assert_eq!(knot_to_obj(&sq), "v 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\nl 1 2 3 4 1\n");
        let rect = knot_from_csv("0,0,0\n2,0,0\n2,1,0\n0,1,0\n").unwrap();
        assert!(knot_to_obj(&rect).ends_with("v 1 1 0\nv 0 1 0\nl 1 2 3 4 5 6 1\n"));
    }
}
