//! Ferrers boards and the enumeration oracles built on them: rook and file
//! placements, weighted lattice paths, and both sides of the product formulas.

mod placement;
mod product;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::ncword::{Letter, Word};
use crate::{Error, Result};

pub use placement::{file_numbers, file_poly, file_poly_symbolic, placement_polys, placement_sums, placements, rook_numbers, rook_poly, rook_poly_symbolic, uncancelled_cells, Placement, PlacementKind};
pub use product::{file_product_sides, file_product_table, path_binom, rook_product_sides, rook_product_table};

/// `B(b_1, …, b_n)`: column `i` holds the cells `(i, 1..=b_i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct FerrersBoard {
    heights: Vec<u32>,
}

impl FerrersBoard {
    pub fn new(heights: Vec<u32>) -> Result<Self> {
        if let Some(w) = heights.windows(2).find(|w| w[0] > w[1]) {
            return Err(Error::Domain(format!("column heights must be nondecreasing, found {} before {}", w[0], w[1])));
        }
        Ok(FerrersBoard { heights })
    }

    pub fn heights(&self) -> &[u32] {
        &self.heights
    }

    pub fn columns(&self) -> usize {
        self.heights.len()
    }

    pub fn max_height(&self) -> u32 {
        self.heights.last().copied().unwrap_or(0)
    }

    pub fn cell_count(&self) -> u32 {
        self.heights.iter().sum()
    }

    pub fn contains(&self, col: u32, row: u32) -> bool {
        col >= 1 && row >= 1 && (col as usize) <= self.heights.len() && row <= self.heights[col as usize - 1]
    }

    /// Cells `(col, row)` in column-major order, 1-based.
    pub fn cells(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.heights.iter().enumerate().flat_map(|(i, &h)| (1..=h).map(move |j| (i as u32 + 1, j)))
    }

    /// Whether the board fits into the `n × n` grid with `n` = number of columns.
    pub fn fits_square(&self) -> bool {
        self.max_height() as usize <= self.columns()
    }

    /// Reflection about the anti-diagonal of the `n × n` grid: `c_i` is the
    /// length of the `i`-th row counted from the top.
    pub fn conjugate(&self) -> Result<FerrersBoard> {
        if !self.fits_square() {
            return Err(Error::Domain(format!("board {self} does not fit its {n}x{n} grid", n = self.columns())));
        }
        let n = self.columns() as u32;
        let c = (1..=n).map(|i| {
            let row = n + 1 - i;
            self.heights.iter().filter(|&&h| h >= row).count() as u32
        });
        FerrersBoard::new(c.collect())
    }

    /// The word outlining the board inside the `n × n` grid: `n` x's and `n` y's.
    pub fn outline_word(&self) -> Result<Word> {
        if !self.fits_square() {
            return Err(Error::Domain(format!("board {self} does not fit its {n}x{n} grid", n = self.columns())));
        }
        let mut letters = Vec::with_capacity(2 * self.columns());
        let mut level = 0;
        for &h in &self.heights {
            letters.extend(std::iter::repeat_n(Letter::Y, (h - level) as usize));
            letters.push(Letter::X);
            level = h;
        }
        letters.extend(std::iter::repeat_n(Letter::Y, self.columns() - level as usize));
        Ok(Word(letters))
    }

    /// Every Ferrers board with `n` columns inside the `n × n` grid
    /// (`binom(2n, n)` of them, zero-height columns included).
    pub fn all_within(n: u32) -> Vec<FerrersBoard> {
        fn rec(n: u32, min: u32, cur: &mut Vec<u32>, out: &mut Vec<FerrersBoard>) {
            if cur.len() == n as usize {
                out.push(FerrersBoard { heights: cur.clone() });
                return;
            }
            for h in min..=n {
                cur.push(h);
                rec(n, h, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, 0, &mut Vec::new(), &mut out);
        out
    }
}

impl TryFrom<Vec<u32>> for FerrersBoard {
    type Error = Error;

    fn try_from(v: Vec<u32>) -> Result<Self> {
        FerrersBoard::new(v)
    }
}

impl From<FerrersBoard> for Vec<u32> {
    fn from(b: FerrersBoard) -> Self {
        b.heights
    }
}

impl fmt::Display for FerrersBoard {
    /// Comma-separated heights, e.g. `1,2,2,3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.heights.iter().map(|h| h.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for FerrersBoard {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return FerrersBoard::new(Vec::new());
        }
        let heights = s
            .split(',')
            .map(|part| part.trim().parse::<u32>().map_err(|_| Error::Domain(format!("bad column height {part:?}"))))
            .collect::<Result<Vec<_>>>()?;
        FerrersBoard::new(heights)
    }
}

/// Height of the `i`-th `x` is the number of `y`s before it. Zero-height
/// columns are kept.
pub fn board_from_word(w: &Word) -> FerrersBoard {
    let mut ys = 0;
    let mut heights = Vec::new();
    for &l in w.letters() {
        match l {
            Letter::Y => ys += 1,
            Letter::X => heights.push(ys),
        }
    }
    FerrersBoard { heights }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncword::parse_word;

    fn b(h: &[u32]) -> FerrersBoard {
        FerrersBoard::new(h.to_vec()).unwrap()
    }

    #[test]
    fn word_to_board_examples() {
        assert_eq!(board_from_word(&parse_word("yxyxxyxy").unwrap()), b(&[1, 2, 2, 3]));
        let navon = board_from_word(&parse_word("xyxxyxyy").unwrap());
        assert_eq!(navon, b(&[0, 1, 1, 2]));
        assert_eq!(navon.cell_count(), 4);
        assert_eq!(board_from_word(&parse_word("xxx").unwrap()), b(&[0, 0, 0]));
    }

    #[test]
    fn outline_word_inverts_board_from_word() {
        assert_eq!(b(&[1, 2, 2, 3]).outline_word().unwrap().to_string(), "yxyxxyxy");
        for board in FerrersBoard::all_within(4) {
            assert_eq!(board_from_word(&board.outline_word().unwrap()), board);
        }
    }

    #[test]
    fn seventy_boards_in_four_by_four() {
        assert_eq!(FerrersBoard::all_within(4).len(), 70);
        assert_eq!(FerrersBoard::all_within(0), vec![b(&[])]);
    }

    #[test]
    fn conjugation() {
        assert_eq!(b(&[1, 2, 2, 3]).conjugate().unwrap(), b(&[0, 1, 3, 4]));
        assert_eq!(b(&[0, 1, 1, 2]).conjugate().unwrap(), b(&[0, 0, 1, 3]));
        for board in FerrersBoard::all_within(4) {
            let c = board.conjugate().unwrap();
            assert_eq!(c.cell_count(), board.cell_count());
            assert_eq!(c.conjugate().unwrap(), board);
        }
        assert!(b(&[3]).conjugate().is_err());
    }

    #[test]
    fn parse_and_print() {
        let board: FerrersBoard = "1, 2,2,3".parse().unwrap();
        assert_eq!(board.to_string(), "1,2,2,3");
        assert!("2,1".parse::<FerrersBoard>().is_err());
        assert!("1,x".parse::<FerrersBoard>().is_err());
        assert_eq!(serde_json::to_string(&board).unwrap(), "[1,2,2,3]");
        assert!(serde_json::from_str::<FerrersBoard>("[3,1]").is_err());
    }
}
