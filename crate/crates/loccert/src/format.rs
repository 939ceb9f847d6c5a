//! Line-oriented text format for state sets.
//!
//! ```text
//! # optional comment lines
//! shape: 4 7
//! phi_1 | 1 1 1 1 | 1 1 1 1 1 1 1
//! phi_2 | 0 1 0 0 | 1 -1 0 0 0 0 0
//! ```
//!
//! The header gives the party dimensions; each following line is one state:
//! a label, then one whitespace-separated integer coefficient block per
//! party, blocks separated by `|`. Lines whose first non-blank character is
//! `#` are comments. Serialization and parsing round-trip byte-identically.

use crate::error::{Error, Result};
use crate::states::{FamilyTag, LocalKet, ProductState, StateSet, SystemShape};

/// Serializes a set in the interchange format.
pub fn write_set(set: &StateSet) -> String {
    let mut out = String::new();
    let dims: Vec<String> = set.shape().dims().iter().map(|d| d.to_string()).collect();
    out.push_str(&format!("shape: {}\n", dims.join(" ")));
    for s in set.states() {
        let mut line = s.label().to_string();
        for f in s.factors() {
            let coeffs: Vec<String> = f.coeffs().iter().map(|c| c.to_string()).collect();
            line.push_str(" | ");
            line.push_str(&coeffs.join(" "));
        }
        out.push_str(&line);
        out.push('\n');
    }
    out
}

/// Parses the interchange format, validating structure, label distinctness
/// and exact pairwise orthogonality (input sets are never trusted).
pub fn parse_set(text: &str) -> Result<StateSet> {
    let mut shape: Option<SystemShape> = None;
    let mut states: Vec<ProductState> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("shape:") {
            if shape.is_some() {
                return Err(Error::Parse {
                    line: lineno,
                    msg: "duplicate shape header".into(),
                });
            }
            let dims = parse_dims(rest, lineno)?;
            shape = Some(SystemShape::new(dims).map_err(|e| Error::Parse {
                line: lineno,
                msg: e.to_string(),
            })?);
            continue;
        }
        let shape_ref = shape.as_ref().ok_or_else(|| Error::Parse {
            line: lineno,
            msg: "state line before 'shape:' header".into(),
        })?;
        states.push(parse_state_line(line, shape_ref, lineno)?);
    }

    let shape = shape.ok_or_else(|| Error::Parse {
        line: 0,
        msg: "missing 'shape:' header".into(),
    })?;
    if states.is_empty() {
        return Err(Error::Parse {
            line: 0,
            msg: "no states found".into(),
        });
    }
    StateSet::checked(shape, states, FamilyTag::External)
}

fn parse_dims(rest: &str, lineno: usize) -> Result<Vec<usize>> {
    rest.split_whitespace()
        .map(|tok| {
            tok.parse::<usize>().map_err(|_| Error::Parse {
                line: lineno,
                msg: format!("bad dimension '{tok}'"),
            })
        })
        .collect()
}

fn parse_state_line(line: &str, shape: &SystemShape, lineno: usize) -> Result<ProductState> {
    let mut parts = line.split('|');
    let label = parts
        .next()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .ok_or_else(|| Error::Parse {
            line: lineno,
            msg: "missing state label".into(),
        })?;
    if label.split_whitespace().count() != 1 {
        return Err(Error::Parse {
            line: lineno,
            msg: format!("label '{label}' must be a single token"),
        });
    }

    let blocks: Vec<&str> = parts.collect();
    if blocks.len() != shape.parties() {
        return Err(Error::Parse {
            line: lineno,
            msg: format!(
                "state '{label}' has {} factor block(s), shape has {} parties",
                blocks.len(),
                shape.parties()
            ),
        });
    }

    let mut factors = Vec::with_capacity(blocks.len());
    for (party, block) in blocks.iter().enumerate() {
        let coeffs: Vec<i64> = block
            .split_whitespace()
            .map(|tok| {
                tok.parse::<i64>().map_err(|_| Error::Parse {
                    line: lineno,
                    msg: format!("bad coefficient '{tok}' in state '{label}'"),
                })
            })
            .collect::<Result<_>>()?;
        if coeffs.len() != shape.dim(party) {
            return Err(Error::Parse {
                line: lineno,
                msg: format!(
                    "state '{label}', party {}: expected {} coefficients, got {}",
                    party + 1,
                    shape.dim(party),
                    coeffs.len()
                ),
            });
        }
        factors.push(LocalKet::new(coeffs).map_err(|e| Error::Parse {
            line: lineno,
            msg: format!("state '{label}', party {}: {e}", party + 1),
        })?);
    }
    Ok(ProductState::new(label, factors))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::build_bipartite;

    #[test]
    fn round_trip_is_byte_identical() {
        let set = build_bipartite(4, 7).unwrap();
        let text = write_set(&set);
        let parsed = parse_set(&text).unwrap();
        assert_eq!(write_set(&parsed), text);
        assert_eq!(parsed.len(), set.len());
        for (a, b) in parsed.states().iter().zip(set.states()) {
            assert_eq!(a.label(), b.label());
            assert!(a.same_amplitudes(b));
        }
    }

    #[test]
    fn comments_and_blank_lines_ignored() {
        let text = "# a comment\n\nshape: 2 2\n# another\nx | 1 0 | 0 1\n";
        let set = parse_set(text).unwrap();
        assert_eq!(set.len(), 1);
        assert_eq!(set.states()[0].label(), "x");
    }

    #[test]
    fn rejects_wrong_coefficient_count() {
        let text = "shape: 2 2\nx | 1 0 0 | 0 1\n";
        let err = parse_set(text).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
    }

    #[test]
    fn rejects_non_orthogonal_input() {
        let text = "shape: 2 2\nx | 1 0 | 1 0\ny | 1 0 | 1 1\n";
        assert!(matches!(parse_set(text), Err(Error::NotOrthogonal(_))));
    }

    #[test]
    fn rejects_missing_header() {
        assert!(parse_set("x | 1 0 | 0 1\n").is_err());
    }
}
