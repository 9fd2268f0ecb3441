use std::collections::HashMap;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::FerrersBoard;
use crate::ncword::{Monomial, WeightPolynomial, WeightSymbol};
use crate::special_fn::{WeightFamily, WeightValue};
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PlacementKind {
    /// Distinct rows and columns; a rook cancels the cells to its right and below it.
    Rook,
    /// Distinct columns only; a rook cancels the cells below it.
    File,
}

/// Occupied cells `(col, row)`, sorted by column. Serialized as `[[col,row],…]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Placement {
    pub cells: Vec<(u32, u32)>,
}

impl Placement {
    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Whether the placement is legal of the given kind on the board.
    pub fn is_valid(&self, board: &FerrersBoard, kind: PlacementKind) -> bool {
        let inside = self.cells.iter().all(|&(c, r)| board.contains(c, r));
        let cols_distinct = self.cells.windows(2).all(|w| w[0].0 < w[1].0);
        let rows_distinct = {
            let mut rows: Vec<u32> = self.cells.iter().map(|&(_, r)| r).collect();
            rows.sort_unstable();
            rows.windows(2).all(|w| w[0] < w[1])
        };
        inside && cols_distinct && (kind == PlacementKind::File || rows_distinct)
    }
}

/// All placements of exactly `k` rooks of the given kind.
pub fn placements(board: &FerrersBoard, k: usize, kind: PlacementKind) -> Vec<Placement> {
    let mut out = Vec::new();
    for_each_placement(board, kind, &mut |cells| {
        if cells.len() == k {
            out.push(Placement { cells: cells.to_vec() });
        }
    });
    out
}

/// Depth-first over columns; each column gets no rook or one rook.
fn for_each_placement<F: FnMut(&[(u32, u32)])>(board: &FerrersBoard, kind: PlacementKind, f: &mut F) {
    fn rec<F: FnMut(&[(u32, u32)])>(
        heights: &[u32],
        col: usize,
        kind: PlacementKind,
        used_rows: &mut Vec<bool>,
        cur: &mut Vec<(u32, u32)>,
        f: &mut F,
    ) {
        if col == heights.len() {
            f(cur);
            return;
        }
        rec(heights, col + 1, kind, used_rows, cur, f);
        for row in 1..=heights[col] {
            if kind == PlacementKind::Rook && used_rows[row as usize] {
                continue;
            }
            used_rows[row as usize] = true;
            cur.push((col as u32 + 1, row));
            rec(heights, col + 1, kind, used_rows, cur, f);
            cur.pop();
            used_rows[row as usize] = false;
        }
    }
    let mut used = vec![false; board.max_height() as usize + 1];
    rec(board.heights(), 0, kind, &mut used, &mut Vec::new(), f);
}

/// The uncancelled cells of `board − P` as `(col, row, r)`, where `r` counts
/// the rooks north-west of the cell: in an earlier column and in the same or a
/// higher row.
///
/// For rook placements a rook west of a cell in the same row cancels it, so
/// this is the strict north-west count. For file placements the same-row
/// rooks must be included: removing a rook's column moves every later cell of
/// that row one column left, which is what the file rewriting `yx → … + y`
/// does.
pub fn uncancelled_cells(board: &FerrersBoard, p: &Placement, kind: PlacementKind) -> Vec<(u32, u32, u32)> {
    uncancelled(board, &p.cells, kind)
}

fn uncancelled(board: &FerrersBoard, rooks: &[(u32, u32)], kind: PlacementKind) -> Vec<(u32, u32, u32)> {
    let mut out = Vec::new();
    for (col, row) in board.cells() {
        let cancelled = rooks.iter().any(|&(c, r)| {
            (c == col && r >= row) || (kind == PlacementKind::Rook && r == row && c < col)
        });
        if cancelled {
            continue;
        }
        let nw = rooks.iter().filter(|&&(c, r)| c < col && r >= row).count() as u32;
        out.push((col, row, nw));
    }
    out
}

/// `Σ_P ∏_{uncancelled} w(s − r, t)` for every number of rooks, as exact
/// polynomials indexed by `k`.
pub fn placement_polys(board: &FerrersBoard, kind: PlacementKind) -> Vec<WeightPolynomial> {
    symbolic_all(board, kind)
}

fn symbolic_all(board: &FerrersBoard, kind: PlacementKind) -> Vec<WeightPolynomial> {
    let mut out = vec![WeightPolynomial::zero(); board.columns() + 1];
    for_each_placement(board, kind, &mut |rooks| {
        let cells = uncancelled(board, rooks, kind);
        let m = Monomial::from_factors(cells.iter().map(|&(s, t, r)| WeightSymbol::new(s - r, t)));
        out[rooks.len()].add_term(m, 1);
    });
    out
}

/// The weighted rook polynomial `r_k(w; B)` in the formal symbols.
pub fn rook_poly_symbolic(board: &FerrersBoard, k: usize) -> WeightPolynomial {
    symbolic_all(board, PlacementKind::Rook).into_iter().nth(k).unwrap_or_default()
}

/// The weighted file polynomial `f_k(w; B)` in the formal symbols.
pub fn file_poly_symbolic(board: &FerrersBoard, k: usize) -> WeightPolynomial {
    symbolic_all(board, PlacementKind::File).into_iter().nth(k).unwrap_or_default()
}

/// Placement sums `Σ_P ∏_{uncancelled} weight(col, row, r)` for every number
/// of pieces, where `r` counts the pieces north-west of the cell.
pub fn placement_sums<F>(board: &FerrersBoard, kind: PlacementKind, weight: F) -> Result<Vec<C64>>
where
    F: FnMut(u32, u32, u32) -> Result<C64>,
{
    numeric_all(board, kind, weight)
}

fn numeric_all<F>(board: &FerrersBoard, kind: PlacementKind, mut weight: F) -> Result<Vec<C64>>
where
    F: FnMut(u32, u32, u32) -> Result<C64>,
{
    let mut out = vec![C64::new(0.0, 0.0); board.columns() + 1];
    // placements share cells, so each (col, row, r) is weighed once
    let mut cache: HashMap<(u32, u32, u32), C64> = HashMap::new();
    let mut err = None;
    for_each_placement(board, kind, &mut |rooks| {
        if err.is_some() {
            return;
        }
        let mut term = C64::new(1.0, 0.0);
        for (s, t, r) in uncancelled(board, rooks, kind) {
            let v = match cache.get(&(s, t, r)) {
                Some(&v) => v,
                None => match weight(s, t, r) {
                    Ok(v) => *cache.entry((s, t, r)).or_insert(v),
                    Err(e) => {
                        err = Some(e);
                        return;
                    }
                },
            };
            term *= v;
        }
        out[rooks.len()] += term;
    });
    match err {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

/// Rook numbers for every `k` under a weight family.
///
/// The elliptic family uses the single-index cell weight
/// `w_{a,b;q,p}(1, i − j − r)`; every other numeric family uses `w(s − r, t)`.
pub fn rook_numbers(board: &FerrersBoard, f: &WeightFamily) -> Result<Vec<C64>> {
    match f {
        WeightFamily::Elliptic(_) => numeric_all(board, PlacementKind::Rook, |i, j, r| f.small(1, i as i64 - j as i64 - r as i64)),
        _ => numeric_all(board, PlacementKind::Rook, |s, t, r| f.small((s - r) as i64, t as i64)),
    }
}

/// File numbers for every `k`; the elliptic cell weight is `w_{a,b;q,p}(1, 1 − j)`.
pub fn file_numbers(board: &FerrersBoard, f: &WeightFamily) -> Result<Vec<C64>> {
    match f {
        WeightFamily::Elliptic(_) => numeric_all(board, PlacementKind::File, |_, j, _| f.small(1, 1 - j as i64)),
        _ => numeric_all(board, PlacementKind::File, |s, t, r| f.small((s - r) as i64, t as i64)),
    }
}

pub fn rook_poly(board: &FerrersBoard, k: usize, f: &WeightFamily) -> Result<WeightValue> {
    if matches!(f, WeightFamily::Generic) {
        return Ok(WeightValue::Symbolic(rook_poly_symbolic(board, k)));
    }
    Ok(WeightValue::Numeric(rook_numbers(board, f)?.get(k).copied().unwrap_or_default()))
}

pub fn file_poly(board: &FerrersBoard, k: usize, f: &WeightFamily) -> Result<WeightValue> {
    if matches!(f, WeightFamily::Generic) {
        return Ok(WeightValue::Symbolic(file_poly_symbolic(board, k)));
    }
    Ok(WeightValue::Numeric(file_numbers(board, f)?.get(k).copied().unwrap_or_default()))
}

pub(crate) use self::rook_numbers as rook_numbers_all;
pub(crate) use self::file_numbers as file_numbers_all;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncword::{normal_order, parse_word, RelationSystem, Word};
    use crate::boards::board_from_word;

    fn b(h: &[u32]) -> FerrersBoard {
        FerrersBoard::new(h.to_vec()).unwrap()
    }

    fn counts(board: &FerrersBoard, kind: PlacementKind) -> Vec<i64> {
        symbolic_all(board, kind).iter().map(|p| p.count()).collect()
    }

    #[test]
    fn navon_rook_counts() {
        let board = board_from_word(&parse_word("xyxxyxyy").unwrap());
        assert_eq!(counts(&board, PlacementKind::Rook), vec![1, 4, 2, 0, 0]);
    }

    #[test]
    fn small_counts() {
        assert_eq!(counts(&b(&[1, 2, 2, 3]), PlacementKind::Rook)[2], 14);
        assert_eq!(counts(&b(&[1]), PlacementKind::File)[1], 1);
        assert_eq!(counts(&b(&[1, 2]), PlacementKind::File)[2], 2);
    }

    #[test]
    fn empty_placement_weighs_every_cell() {
        let board = b(&[1, 2]);
        let expect = WeightPolynomial::from_term(
            Monomial::from_factors([WeightSymbol::new(1, 1), WeightSymbol::new(2, 1), WeightSymbol::new(2, 2)]),
            1,
        );
        assert_eq!(rook_poly_symbolic(&board, 0), expect);
        assert_eq!(file_poly_symbolic(&board, 0), expect);
    }

    #[test]
    fn placements_are_valid_and_complete() {
        let board = b(&[1, 2, 2, 3]);
        for kind in [PlacementKind::Rook, PlacementKind::File] {
            let mut total = 0;
            for k in 0..=4 {
                let ps = placements(&board, k, kind);
                assert!(ps.iter().all(|p| p.len() == k && p.is_valid(&board, kind)));
                total += ps.len();
            }
            let expected = match kind {
                PlacementKind::Rook => counts(&board, kind).iter().sum::<i64>(),
                PlacementKind::File => 2 * 3 * 3 * 4,
            };
            assert_eq!(total as i64, expected);
        }
    }

    #[test]
    fn placement_json() {
        let p = Placement { cells: vec![(1, 1), (3, 2)] };
        assert_eq!(serde_json::to_string(&p).unwrap(), "[[1,1],[3,2]]");
    }

    fn file_variant<F: Fn(&FerrersBoard, &[(u32, u32)], u32, u32) -> u32>(board: &FerrersBoard, nw: F) -> Vec<WeightPolynomial> {
        let mut out = vec![WeightPolynomial::zero(); board.columns() + 1];
        for_each_placement(board, PlacementKind::File, &mut |rooks| {
            let factors = uncancelled(board, rooks, PlacementKind::File)
                .into_iter()
                .map(|(s, t, _)| WeightSymbol::new(s.saturating_sub(nw(board, rooks, s, t)).max(1), t));
            out[rooks.len()].add_term(Monomial::from_factors(factors), 1);
        });
        out
    }

    /// Counting board cells, or only rooks strictly above the cell, both
    /// disagree with the file rewriting; rooks weakly north-west agree.
    #[test]
    fn file_north_west_region() {
        let rs = RelationSystem::File;
        let (mut cells_fail, mut strict_fail) = (false, false);
        for len in 0..=7 {
            for w in Word::all_of_length(len) {
                let board = board_from_word(&w);
                let nf = normal_order(&w, rs);
                let m = w.count(crate::ncword::Letter::X) as u32;
                let n = w.len() as u32 - m;
                let ours = symbolic_all(&board, PlacementKind::File);
                for (k, poly) in ours.iter().enumerate().take(m as usize + 1) {
                    assert_eq!(&nf.coefficient(m - k as u32, n), poly, "{w} k={k}");
                }
                let cells = file_variant(&board, |b, _, s, t| b.cells().filter(|&(c, r)| c < s && r > t).count() as u32);
                let strict = file_variant(&board, |_, rooks, s, t| rooks.iter().filter(|&&(c, r)| c < s && r > t).count() as u32);
                let canon = |v: &[WeightPolynomial]| -> Vec<WeightPolynomial> {
                    v.iter().map(|p| p.rename(|sym| rs.canonical_symbol(sym))).collect()
                };
                cells_fail |= canon(&cells) != canon(&ours);
                strict_fail |= canon(&strict) != canon(&ours);
            }
        }
        assert!(cells_fail && strict_fail);
    }
}
