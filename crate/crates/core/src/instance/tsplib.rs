//! Minimal TSPLIB reader: `EXPLICIT`/`FULL_MATRIX` and `EUC_2D` only.

use super::Instance;
use crate::error::{Error, Position, Result};
use crate::Cost;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum WeightType {
    Explicit,
    Euc2d,
}

struct Token<'a> {
    text: &'a str,
    at: Position,
}

fn parse_error(at: Position, message: impl Into<String>) -> Error {
    Error::Parse {
        at,
        message: message.into(),
    }
}

fn tokens(line_no: usize, line: &str) -> impl Iterator<Item = Token<'_>> {
    let base = line.as_ptr() as usize;
    line.split_whitespace().map(move |text| Token {
        text,
        at: Position {
            line: line_no,
            column: text.as_ptr() as usize - base + 1,
        },
    })
}

pub(super) fn parse(text: &str) -> Result<Instance> {
    let mut name = String::from("unnamed");
    let mut dimension: Option<usize> = None;
    let mut weight_type: Option<WeightType> = None;
    let mut format_full = false;
    let mut weights: Option<Vec<Cost>> = None;
    let mut coords: Option<Vec<(f64, f64)>> = None;

    let lines: Vec<(usize, &str)> = text.lines().enumerate().map(|(i, l)| (i + 1, l)).collect();
    let mut idx = 0;
    while idx < lines.len() {
        let (line_no, raw) = lines[idx];
        idx += 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let at = Position {
            line: line_no,
            column: raw.len() - raw.trim_start().len() + 1,
        };
        let (key, value) = match line.split_once(':') {
            Some((k, v)) => (k.trim(), Some(v.trim())),
            None => (line, None),
        };
        match (key, value) {
            ("NAME", Some(v)) => name = v.to_string(),
            ("COMMENT", _) => {}
            ("TYPE", Some(v)) => {
                if v != "TSP" {
                    return Err(Error::Unsupported(format!("TYPE {v}")));
                }
            }
            ("DIMENSION", Some(v)) => {
                let d = v
                    .parse::<usize>()
                    .map_err(|_| parse_error(at, format!("invalid DIMENSION {v:?}")))?;
                dimension = Some(d);
            }
            ("EDGE_WEIGHT_TYPE", Some(v)) => {
                weight_type = Some(match v {
                    "EXPLICIT" => WeightType::Explicit,
                    "EUC_2D" => WeightType::Euc2d,
                    other => return Err(Error::Unsupported(format!("EDGE_WEIGHT_TYPE {other}"))),
                })
            }
            ("EDGE_WEIGHT_FORMAT", Some(v)) => {
                if v != "FULL_MATRIX" {
                    return Err(Error::Unsupported(format!("EDGE_WEIGHT_FORMAT {v}")));
                }
                format_full = true;
            }
            ("EDGE_WEIGHT_SECTION", _) => {
                let n = dimension.ok_or_else(|| parse_error(at, "EDGE_WEIGHT_SECTION before DIMENSION"))?;
                let mut values = Vec::with_capacity(n * n);
                let mut last = at;
                while values.len() < n * n {
                    let Some(&(line_no, raw)) = lines.get(idx) else {
                        return Err(parse_error(
                            last,
                            format!("EDGE_WEIGHT_SECTION ended after {} of {} values", values.len(), n * n),
                        ));
                    };
                    idx += 1;
                    for tok in tokens(line_no, raw) {
                        if values.len() == n * n {
                            return Err(parse_error(tok.at, "too many values in EDGE_WEIGHT_SECTION"));
                        }
                        let v = tok.text.parse::<Cost>().map_err(|_| {
                            parse_error(tok.at, format!("expected an integer weight, found {:?}", tok.text))
                        })?;
                        values.push(v);
                        last = tok.at;
                    }
                }
                weights = Some(values);
            }
            ("NODE_COORD_SECTION", _) => {
                let n = dimension.ok_or_else(|| parse_error(at, "NODE_COORD_SECTION before DIMENSION"))?;
                let mut pts = vec![None; n];
                let mut seen = 0;
                while seen < n {
                    let Some(&(line_no, raw)) = lines.get(idx) else {
                        return Err(parse_error(
                            at,
                            format!("NODE_COORD_SECTION ended after {seen} of {n} nodes"),
                        ));
                    };
                    idx += 1;
                    if raw.trim().is_empty() {
                        continue;
                    }
                    let toks: Vec<Token> = tokens(line_no, raw).collect();
                    let line_at = toks[0].at;
                    if toks.len() != 3 {
                        return Err(parse_error(line_at, "expected `index x y`"));
                    }
                    let id = toks[0]
                        .text
                        .parse::<usize>()
                        .map_err(|_| parse_error(toks[0].at, "invalid node index"))?;
                    if id == 0 || id > n {
                        return Err(parse_error(toks[0].at, format!("node index {id} outside 1..={n}")));
                    }
                    let coord = |t: &Token| {
                        t.text
                            .parse::<f64>()
                            .ok()
                            .filter(|x| x.is_finite())
                            .ok_or_else(|| parse_error(t.at, format!("invalid coordinate {:?}", t.text)))
                    };
                    if pts[id - 1].is_some() {
                        return Err(parse_error(toks[0].at, format!("duplicate node {id}")));
                    }
                    pts[id - 1] = Some((coord(&toks[1])?, coord(&toks[2])?));
                    seen += 1;
                }
                coords = Some(pts.into_iter().map(|p| p.expect("all nodes seen")).collect());
            }
            ("EOF", None) => break,
            (other, _) => return Err(Error::Unsupported(format!("keyword {other:?} at {at}"))),
        }
    }

    let n = dimension.ok_or_else(|| Error::Unsupported("missing DIMENSION".into()))?;
    match weight_type {
        Some(WeightType::Explicit) => {
            if !format_full {
                return Err(Error::Unsupported(
                    "EXPLICIT weights require EDGE_WEIGHT_FORMAT: FULL_MATRIX".into(),
                ));
            }
            let values = weights.ok_or_else(|| Error::Unsupported("missing EDGE_WEIGHT_SECTION".into()))?;
            let matrix = values.chunks(n.max(1)).map(|r| r.to_vec()).collect();
            Instance::with_dimension(name, n, matrix)
        }
        Some(WeightType::Euc2d) => {
            let pts = coords.ok_or_else(|| Error::Unsupported("missing NODE_COORD_SECTION".into()))?;
            Instance::from_fn(name, n, |u, v| {
                let (dx, dy) = (pts[u].0 - pts[v].0, pts[u].1 - pts[v].1);
                nint((dx * dx + dy * dy).sqrt())
            })
        }
        None => Err(Error::Unsupported("missing EDGE_WEIGHT_TYPE".into())),
    }
}

/// TSPLIB's nearest-integer rounding.
fn nint(x: f64) -> Cost {
    (x + 0.5).floor() as Cost
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::sq4;
    use super::*;

    const SQ4_TSP: &str = "NAME : SQ4\nTYPE : TSP\nCOMMENT : square, sides 2, diagonals 3\nDIMENSION : 4\n\
EDGE_WEIGHT_TYPE : EXPLICIT\nEDGE_WEIGHT_FORMAT : FULL_MATRIX\nEDGE_WEIGHT_SECTION\n\
0 2 3 2\n2 0 2 3\n3 2 0 2\n2 3 2 0\nEOF\n";

    #[test]
    fn full_matrix_fixture() {
        assert_eq!(Instance::load(SQ4_TSP.as_bytes()).unwrap(), sq4());
    }

    #[test]
    fn euc_2d_rounds_to_nearest() {
        let text = "NAME: tri\nTYPE: TSP\nDIMENSION: 3\nEDGE_WEIGHT_TYPE: EUC_2D\nNODE_COORD_SECTION\n\
1 0 0\n2 3 4\n3 1.4 1.4\nEOF\n";
        let inst = Instance::load(text.as_bytes()).unwrap();
        assert_eq!(inst.cost(0, 1), 5);
        // sqrt(3.92) = 1.98
        assert_eq!(inst.cost(0, 2), 2);
        // sqrt(1.6^2 + 2.6^2) = 3.05
        assert_eq!(inst.cost(1, 2), 3);
    }

    #[test]
    fn rejects_other_formats_loudly() {
        let text = SQ4_TSP.replace("FULL_MATRIX", "UPPER_ROW");
        assert!(matches!(Instance::load(text.as_bytes()), Err(Error::Unsupported(_))));
        let text = SQ4_TSP.replace("EXPLICIT", "GEO");
        assert!(matches!(Instance::load(text.as_bytes()), Err(Error::Unsupported(_))));
        let text = SQ4_TSP.replace("TYPE : TSP", "TYPE : ATSP");
        assert!(matches!(Instance::load(text.as_bytes()), Err(Error::Unsupported(_))));
    }

    #[test]
    fn bad_weight_reports_position() {
        let text = SQ4_TSP.replace("2 0 2 3", "2 0 x 3");
        match Instance::load(text.as_bytes()) {
            Err(Error::Parse { at, .. }) => assert_eq!(at, Position { line: 9, column: 5 }),
            other => panic!("unexpected {other:?}"),
        }
        let text = SQ4_TSP.replace("2 0 2 3", "2 0 2 4");
        assert!(matches!(Instance::load(text.as_bytes()), Err(Error::Asymmetric { .. })));
    }
}
