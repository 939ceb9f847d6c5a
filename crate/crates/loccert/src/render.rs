//! ASCII occupancy grids for bipartite and tripartite sets.
//!
//! Bipartite sets render as an `m x n` grid (party 1 rows, party 2
//! columns) with each tile carrying the 1-based index of the state whose
//! support covers it. Tripartite sets render as two projections: the top
//! view (states whose first factor is the basis ket `|n1>`, on the
//! party-2 x party-3 plane) and the left view of the right surface (states
//! whose third factor is the basis ket `|n3>`, on the party-1 x party-2
//! plane). Full-support states such as the stopper tile everything and are
//! listed separately instead of drawn.

use crate::error::{Error, Result};
use crate::states::{ProductState, StateSet};

/// One tile of an occupancy grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cell {
    Empty,
    /// Covered by exactly one state (1-based index into the set).
    One(usize),
    /// Covered by more than one state.
    Many,
}

#[derive(Debug, Clone)]
pub struct Grid {
    pub rows: usize,
    pub cols: usize,
    pub cells: Vec<Cell>,
}

impl Grid {
    fn new(rows: usize, cols: usize) -> Self {
        Grid {
            rows,
            cols,
            cells: vec![Cell::Empty; rows * cols],
        }
    }

    pub fn cell(&self, r: usize, c: usize) -> Cell {
        self.cells[r * self.cols + c]
    }

    fn mark(&mut self, r: usize, c: usize, idx: usize) {
        let cell = &mut self.cells[r * self.cols + c];
        *cell = match *cell {
            Cell::Empty => Cell::One(idx),
            _ => Cell::Many,
        };
    }

    fn mark_state(&mut self, idx: usize, row_factor: &crate::states::LocalKet, col_factor: &crate::states::LocalKet) {
        for r in row_factor.support() {
            for c in col_factor.support() {
                self.mark(r - 1, c - 1, idx);
            }
        }
    }

    fn to_text(&self) -> String {
        let width = self
            .cells
            .iter()
            .map(|c| match c {
                Cell::One(i) => i.to_string().len(),
                _ => 1,
            })
            .max()
            .unwrap_or(1);
        let mut out = String::new();
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|c| match self.cell(r, c) {
                    Cell::Empty => format!("{:>width$}", "."),
                    Cell::One(i) => format!("{i:>width$}"),
                    Cell::Many => format!("{:>width$}", "+"),
                })
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

fn is_full_support(s: &ProductState) -> bool {
    s.factors().iter().all(|f| f.support().len() == f.dim())
}

/// Tile occupancy of a bipartite set, skipping full-support states.
/// Returns the grid and the skipped state indices (1-based).
pub fn bipartite_occupancy(set: &StateSet) -> Result<(Grid, Vec<usize>)> {
    if set.shape().parties() != 2 {
        return Err(Error::UnsupportedRendering(set.shape().parties()));
    }
    let mut grid = Grid::new(set.shape().dim(0), set.shape().dim(1));
    let mut skipped = Vec::new();
    for (i, s) in set.states().iter().enumerate() {
        if is_full_support(s) {
            skipped.push(i + 1);
            continue;
        }
        grid.mark_state(i + 1, s.factor(0), s.factor(1));
    }
    Ok((grid, skipped))
}

/// The two projections of a tripartite set: top view (party-2 x party-3
/// tiles of states pinned to `|n1>` on party 1) and the left view of the
/// right surface (party-1 x party-2 tiles of states pinned to `|n3>` on
/// party 3), plus the 1-based indices of states appearing in neither.
pub fn tripartite_views(set: &StateSet) -> Result<(Grid, Grid, Vec<usize>)> {
    if set.shape().parties() != 3 {
        return Err(Error::UnsupportedRendering(set.shape().parties()));
    }
    let (n1, n2, n3) = (
        set.shape().dim(0),
        set.shape().dim(1),
        set.shape().dim(2),
    );
    let mut top = Grid::new(n2, n3);
    let mut right = Grid::new(n1, n2);
    let mut unshown = Vec::new();
    for (i, s) in set.states().iter().enumerate() {
        let mut shown = false;
        if s.factor(0).support() == vec![n1] {
            top.mark_state(i + 1, s.factor(1), s.factor(2));
            shown = true;
        }
        if s.factor(2).support() == vec![n3] {
            right.mark_state(i + 1, s.factor(0), s.factor(1));
            shown = true;
        }
        if !shown {
            unshown.push(i + 1);
        }
    }
    Ok((top, right, unshown))
}

fn index_note(heading: &str, indices: &[usize], set: &StateSet) -> String {
    if indices.is_empty() {
        return String::new();
    }
    let labels: Vec<String> = indices
        .iter()
        .map(|&i| format!("{i} ({})", set.states()[i - 1].label()))
        .collect();
    format!("{heading}: {}\n", labels.join(", "))
}

/// Renders a 2- or 3-party set as text; errors on any other party count.
pub fn render_grid(set: &StateSet) -> Result<String> {
    match set.shape().parties() {
        2 => {
            let (grid, skipped) = bipartite_occupancy(set)?;
            let mut out = format!(
                "occupancy {}x{} (rows: party 1, cols: party 2), tiles carry state indices\n",
                grid.rows, grid.cols
            );
            out.push_str(&grid.to_text());
            out.push_str(&index_note("full-support states (not tiled)", &skipped, set));
            Ok(out)
        }
        3 => {
            let (top, right, unshown) = tripartite_views(set)?;
            let n1 = set.shape().dim(0);
            let n3 = set.shape().dim(2);
            let mut out = format!(
                "top view at party1=|{n1}> ({}x{}; rows: party 2, cols: party 3)\n",
                top.rows, top.cols
            );
            out.push_str(&top.to_text());
            out.push_str(&format!(
                "left view of right surface at party3=|{n3}> ({}x{}; rows: party 1, cols: party 2)\n",
                right.rows, right.cols
            ));
            out.push_str(&right.to_text());
            out.push_str(&index_note("states in neither view", &unshown, set));
            Ok(out)
        }
        p => Err(Error::UnsupportedRendering(p)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{build_bipartite, build_tripartite};
    use crate::states::{FamilyTag, LocalKet, StateSet, SystemShape};

    #[test]
    fn single_basis_state_marks_one_cell() {
        let shape = SystemShape::new(vec![2, 2]).unwrap();
        let s = ProductState::new("x", vec![LocalKet::basis(2, 1), LocalKet::basis(2, 1)]);
        let set = StateSet::checked(shape, vec![s], FamilyTag::External).unwrap();
        let (grid, skipped) = bipartite_occupancy(&set).unwrap();
        assert!(skipped.is_empty());
        assert_eq!(grid.cell(0, 0), Cell::One(1));
        assert_eq!(
            grid.cells.iter().filter(|c| **c != Cell::Empty).count(),
            1
        );
    }

    #[test]
    fn bipartite_4_4_tiles_are_disjoint_and_match_supports() {
        let set = build_bipartite(4, 4).unwrap();
        let (grid, skipped) = bipartite_occupancy(&set).unwrap();
        // only the stopper is untiled
        assert_eq!(skipped, vec![1]);
        // every non-stopper support cell carries exactly that state's index
        for (i, s) in set.states().iter().enumerate().skip(1) {
            for r in s.factor(0).support() {
                for c in s.factor(1).support() {
                    assert_eq!(grid.cell(r - 1, c - 1), Cell::One(i + 1));
                }
            }
        }
        // the corner tile (1,1) stays free in the square pattern
        assert_eq!(grid.cell(0, 0), Cell::Empty);
    }

    #[test]
    fn tripartite_views_show_alternating_vertical_rows() {
        let set = build_tripartite(4, 5, 6).unwrap();
        let (top, right, unshown) = tripartite_views(&set).unwrap();

        // top view holds the embedded bipartite plan: some tiles occupied
        assert!(top.cells.iter().any(|c| *c != Cell::Empty));

        // vertical dominoes alternate between middle-party rows n2-1, n2
        let v_rows: Vec<usize> = set
            .states()
            .iter()
            .filter(|s| s.label().starts_with("V_"))
            .map(|s| s.factor(1).support()[0])
            .collect();
        assert_eq!(v_rows, vec![4, 5, 4]);
        for (i, s) in set.states().iter().enumerate() {
            if s.label().starts_with("V_") {
                let rows = s.factor(0).support();
                let col = s.factor(1).support()[0];
                for r in rows {
                    assert_eq!(right.cell(r - 1, col - 1), Cell::One(i + 1));
                }
            }
        }

        // everything except the stopper shows up in some view;
        // tail dominoes of the embedded plan live on the top surface
        assert_eq!(unshown.len(), 1);
        assert_eq!(set.states()[unshown[0] - 1].label(), "stopper");
    }

    #[test]
    fn render_rejects_many_parties() {
        let shape = SystemShape::new(vec![2, 2, 2, 2]).unwrap();
        let s = ProductState::new(
            "x",
            vec![
                LocalKet::basis(2, 1),
                LocalKet::basis(2, 1),
                LocalKet::basis(2, 1),
                LocalKet::basis(2, 1),
            ],
        );
        let set = StateSet::checked(shape, vec![s], FamilyTag::External).unwrap();
        assert!(matches!(
            render_grid(&set),
            Err(Error::UnsupportedRendering(4))
        ));
    }

    #[test]
    fn render_produces_text() {
        let set = build_bipartite(4, 7).unwrap();
        let text = render_grid(&set).unwrap();
        assert!(text.contains("occupancy 4x7"));
        assert!(text.lines().count() >= 5);
    }
}
