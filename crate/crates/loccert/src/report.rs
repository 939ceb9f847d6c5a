//! Certification reports: one structured record per set, with a
//! human-readable rendering and a JSON section, plus the sweep driver.

use crate::certify::{certify, Overall, SetVerdict, Verdict};
use crate::construct::{build_family, expected_count, upb_lower_bound};
use crate::error::{Error, Result};
use crate::exactlin::{nullspace, rank_exact, rank_float};
use crate::states::{FamilyTag, StateSet};
use rayon::prelude::*;
use serde::Serialize;
use std::time::Instant;

/// Everything the CLI reports about one certified set.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub shape: Vec<usize>,
    pub family: FamilyTag,
    pub state_count: usize,
    /// The family's count formula value; `None` for external sets.
    pub expected_count: Option<usize>,
    pub upb_lower_bound: usize,
    pub party_solution_dims: Vec<usize>,
    pub certified: bool,
    pub overall: String,
    /// Whether the floating singular-value rank agreed with the exact rank
    /// on every party's constraint system.
    pub float_rank_agrees: bool,
    pub wall_time_ms: f64,
}

/// Options for report generation.
#[derive(Debug, Clone, Copy)]
pub struct ReportOptions {
    /// Tolerance for the floating rank oracle.
    pub tol: f64,
    /// Also audit witnesses with the exact principal-minor check.
    pub audit: bool,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            tol: 1e-8,
            audit: false,
        }
    }
}

/// Certifies a set and assembles the report. Also runs the
/// float-vs-exact rank cross-check on every party's constraint system, and
/// (with `audit`) the exact principal-minor positivity audit on witnesses.
pub fn report_for(set: &StateSet, opts: ReportOptions) -> Result<(Report, SetVerdict)> {
    let start = Instant::now();
    let verdict = certify(set)?;

    let mut agrees = true;
    for party in 0..set.shape().parties() {
        let mat = crate::certify::assemble_constraints(set, party)?;
        let exact = rank_exact(&mat);
        let float = rank_float(&mat, opts.tol);
        let kernel = nullspace(&mat).len();
        if exact != float || exact + kernel != mat.cols() {
            agrees = false;
        }
    }

    if opts.audit {
        for pv in &verdict.parties {
            if let Some(w) = &pv.witness {
                w.minors_positive().map_err(|e| {
                    Error::Logic(format!("witness audit failed on party {}: {e}", pv.party))
                })?;
            }
        }
    }

    let expected = if set.family() == FamilyTag::External {
        None
    } else {
        expected_count(set.family(), set.shape().dims())
    };
    if let Some(e) = expected {
        if e != set.len() {
            return Err(Error::Logic(format!(
                "generated set has {} states but the family formula gives {e}",
                set.len()
            )));
        }
    }

    let report = Report {
        shape: set.shape().dims().to_vec(),
        family: set.family(),
        state_count: set.len(),
        expected_count: expected,
        upb_lower_bound: upb_lower_bound(set.shape()),
        party_solution_dims: verdict.solution_dims(),
        certified: verdict.overall == Overall::CertifiedIndistinguishable,
        overall: verdict.overall.to_string(),
        float_rank_agrees: agrees,
        wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
    };
    Ok((report, verdict))
}

/// Renders the human-readable report plus the JSON section.
pub fn render_report(report: &Report, verdict: &SetVerdict) -> String {
    let mut out = String::new();
    let dims: Vec<String> = report.shape.iter().map(|d| d.to_string()).collect();
    out.push_str(&format!("shape           : {}\n", dims.join(" x ")));
    out.push_str(&format!("family          : {}\n", report.family));
    out.push_str(&format!("states          : {}\n", report.state_count));
    if let Some(e) = report.expected_count {
        out.push_str(&format!("family formula  : {e}\n"));
    }
    out.push_str(&format!("upb lower bound : {}\n", report.upb_lower_bound));
    for pv in &verdict.parties {
        out.push_str(&format!(
            "party {:<2}        : solution dim {} -> {}\n",
            pv.party + 1,
            pv.solution_dim,
            match pv.verdict {
                Verdict::TrivialOnly => "trivial only",
                Verdict::NontrivialExists => "nontrivial exists",
            }
        ));
        if let Some(w) = &pv.witness {
            out.push_str("  witness (positive definite, not a multiple of identity):\n");
            for line in w.to_string().lines() {
                out.push_str(&format!("    {line}\n"));
            }
        }
    }
    out.push_str(&format!(
        "float-rank oracle agrees with exact ranks: {}\n",
        report.float_rank_agrees
    ));
    out.push_str(&format!("verdict         : {}\n", report.overall));
    out.push_str(&format!("wall time       : {:.1} ms\n", report.wall_time_ms));
    out.push_str("--- report (json) ---\n");
    out.push_str(&serde_json::to_string_pretty(report).expect("report serializes"));
    out.push('\n');
    out
}

/// Enumerates the shapes a sweep visits: all non-decreasing dimension
/// tuples of the family's party count within `[min_dim, max_dim]`, or only
/// the equal-dimension tuples when `equal` is set.
pub fn sweep_shapes(
    family: FamilyTag,
    parties: usize,
    min_dim: usize,
    max_dim: usize,
    equal: bool,
) -> Result<Vec<Vec<usize>>> {
    if min_dim < 4 || min_dim > max_dim {
        return Err(Error::InvalidParameter(format!(
            "sweep needs 4 <= min-dim <= max-dim, got {min_dim}..{max_dim}"
        )));
    }
    let expected_parties: Option<usize> = match family {
        FamilyTag::Bipartite => Some(2),
        FamilyTag::Tripartite => Some(3),
        FamilyTag::Even | FamilyTag::Odd => None,
        FamilyTag::External => {
            return Err(Error::InvalidParameter(
                "cannot sweep the external pseudo-family".into(),
            ))
        }
    };
    let parties = expected_parties.unwrap_or(parties);
    match family {
        FamilyTag::Even if parties < 4 || parties % 2 != 0 => {
            return Err(Error::InvalidParameter(format!(
                "even-family sweep needs an even party count >= 4, got {parties}"
            )));
        }
        FamilyTag::Odd if parties < 3 || parties % 2 != 1 => {
            return Err(Error::InvalidParameter(format!(
                "odd-family sweep needs an odd party count >= 3, got {parties}"
            )));
        }
        _ => {}
    }

    if equal {
        return Ok((min_dim..=max_dim).map(|d| vec![d; parties]).collect());
    }
    let mut shapes = Vec::new();
    let mut current = vec![min_dim; parties];
    loop {
        shapes.push(current.clone());
        // next non-decreasing tuple
        let mut pos = parties;
        loop {
            if pos == 0 {
                return Ok(shapes);
            }
            pos -= 1;
            if current[pos] < max_dim {
                let v = current[pos] + 1;
                for slot in &mut current[pos..] {
                    *slot = v;
                }
                break;
            }
        }
    }
}

/// One sweep row plus the reduced per-shape verdict.
#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub report: Report,
    pub count_matches_formula: bool,
    pub count_equals_upb_bound: bool,
}

/// Builds and certifies every swept shape (fanned out across workers;
/// output ordered by shape). Shapes whose full tensor dimension exceeds
/// `max_cells` are refused up front.
pub fn sweep(
    family: FamilyTag,
    parties: usize,
    min_dim: usize,
    max_dim: usize,
    equal: bool,
    max_cells: usize,
    opts: ReportOptions,
) -> Result<Vec<SweepRow>> {
    let shapes = sweep_shapes(family, parties, min_dim, max_dim, equal)?;
    for dims in &shapes {
        let cells: usize = dims.iter().product();
        if cells > max_cells {
            return Err(Error::InvalidParameter(format!(
                "shape {dims:?} has {cells} cells, above the sweep limit of {max_cells} \
                 (raise --max-cells to allow it)"
            )));
        }
    }
    shapes
        .par_iter()
        .map(|dims| {
            let set = build_family(family, dims)?;
            let (report, _) = report_for(&set, opts)?;
            let formula = expected_count(family, dims);
            Ok(SweepRow {
                count_matches_formula: formula == Some(report.state_count),
                count_equals_upb_bound: report.state_count == report.upb_lower_bound,
                report,
            })
        })
        .collect()
}

/// Text table for a sweep, one row per shape, ending with a summary line.
pub fn render_sweep(rows: &[SweepRow]) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{:<18} {:>7} {:>9} {:>9} {:<16} {:<9} {}\n",
        "shape", "states", "formula", "upb", "solution dims", "certified", "time ms"
    ));
    for row in rows {
        let dims: Vec<String> = row.report.shape.iter().map(|d| d.to_string()).collect();
        let sol: Vec<String> = row
            .report
            .party_solution_dims
            .iter()
            .map(|d| d.to_string())
            .collect();
        out.push_str(&format!(
            "{:<18} {:>7} {:>9} {:>9} {:<16} {:<9} {:>7.1}\n",
            format!("({})", dims.join(",")),
            row.report.state_count,
            row.report
                .expected_count
                .map_or("-".to_string(), |e| e.to_string()),
            row.report.upb_lower_bound,
            sol.join(","),
            row.report.certified,
            row.report.wall_time_ms,
        ));
    }
    let all_certified = rows.iter().all(|r| r.report.certified);
    let all_agree = rows.iter().all(|r| r.report.float_rank_agrees);
    let all_counted = rows.iter().all(|r| r.count_matches_formula);
    out.push_str(&format!(
        "summary: {} shape(s), all certified: {}, all counts match formula: {}, float oracle agrees: {}\n",
        rows.len(),
        all_certified,
        all_counted,
        all_agree
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::build_bipartite;

    #[test]
    fn report_for_generated_set() {
        let set = build_bipartite(4, 5).unwrap();
        let (report, verdict) = report_for(&set, ReportOptions::default()).unwrap();
        assert!(report.certified);
        assert_eq!(report.expected_count, Some(9));
        assert_eq!(report.party_solution_dims, vec![1, 1]);
        assert!(report.float_rank_agrees);
        let text = render_report(&report, &verdict);
        assert!(text.contains("certified LOCC-indistinguishable"));
        assert!(text.contains("--- report (json) ---"));
        let json_part = text.split("--- report (json) ---").nth(1).unwrap();
        let parsed: serde_json::Value = serde_json::from_str(json_part.trim()).unwrap();
        assert_eq!(parsed["state_count"], 9);
    }

    #[test]
    fn sweep_shapes_enumerates_sorted_tuples() {
        let shapes = sweep_shapes(FamilyTag::Bipartite, 2, 4, 6, false).unwrap();
        assert_eq!(shapes.len(), 6); // (4,4)(4,5)(4,6)(5,5)(5,6)(6,6)
        assert!(shapes.iter().all(|s| s[0] <= s[1]));
        let equal = sweep_shapes(FamilyTag::Even, 4, 4, 6, true).unwrap();
        assert_eq!(equal, vec![vec![4; 4], vec![5; 4], vec![6; 4]]);
    }

    #[test]
    fn sweep_refuses_oversized_shapes() {
        let err = sweep(
            FamilyTag::Bipartite,
            2,
            4,
            9,
            false,
            10,
            ReportOptions::default(),
        )
        .unwrap_err();
        assert!(err.to_string().contains("max-cells"));
    }

    #[test]
    fn small_bipartite_sweep_is_all_certified() {
        let rows = sweep(
            FamilyTag::Bipartite,
            2,
            4,
            5,
            false,
            1_000_000,
            ReportOptions::default(),
        )
        .unwrap();
        assert_eq!(rows.len(), 3);
        assert!(rows.iter().all(|r| r.report.certified));
        assert!(rows.iter().all(|r| r.count_matches_formula));
        let text = render_sweep(&rows);
        assert!(text.contains("all certified: true"));
    }
}
