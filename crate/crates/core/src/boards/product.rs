use num_complex::Complex64 as C64;

use super::placement::{file_numbers_all, rook_numbers_all};
use super::FerrersBoard;
use crate::ncword::{Monomial, WeightPolynomial, WeightSymbol};
use crate::special_fn::{bracket_z, ParameterSet, WeightFamily, WeightValue};
use crate::{Error, Result};

/// Sum over lattice paths `(0,0) → (k, n−k)` of the product of `W(s,t)` over
/// east steps `(s−1,t) → (s,t)`; north steps weigh 1.
///
/// Paths are enumerated one by one. Numeric families multiply small weights
/// (`W(s,t) = ∏_{j ≤ t} w(s,j)`), never the closed big-weight form.
pub fn path_binom(n: u32, k: i64, f: &WeightFamily) -> Result<WeightValue> {
    if k < 0 || k > n as i64 {
        return Ok(match f {
            WeightFamily::Generic => WeightValue::Symbolic(WeightPolynomial::zero()),
            _ => WeightValue::Numeric(C64::new(0.0, 0.0)),
        });
    }
    let k = k as u32;
    let mut paths = Vec::new();
    east_steps(k, n - k, &mut Vec::new(), &mut paths);
    match f {
        WeightFamily::Generic => {
            let mut total = WeightPolynomial::zero();
            for steps in &paths {
                let factors = steps.iter().flat_map(|&(s, t)| (1..=t).map(move |j| WeightSymbol::new(s, j)));
                total.add_term(Monomial::from_factors(factors), 1);
            }
            Ok(WeightValue::Symbolic(total))
        }
        _ => {
            let mut total = C64::new(0.0, 0.0);
            for steps in &paths {
                let mut term = C64::new(1.0, 0.0);
                for &(s, t) in steps {
                    for j in 1..=t {
                        term *= f.small(s as i64, j as i64)?;
                    }
                }
                total += term;
            }
            Ok(WeightValue::Numeric(total))
        }
    }
}

/// Collects, for every path with `e` east and `m` north steps remaining, the
/// list of east-step endpoints `(s, t)`.
fn east_steps(e: u32, m: u32, cur: &mut Vec<(u32, u32)>, out: &mut Vec<Vec<(u32, u32)>>) {
    fn rec(e_total: u32, n_total: u32, s: u32, t: u32, cur: &mut Vec<(u32, u32)>, out: &mut Vec<Vec<(u32, u32)>>) {
        if s == e_total && t == n_total {
            out.push(cur.clone());
            return;
        }
        if s < e_total {
            cur.push((s + 1, t));
            rec(e_total, n_total, s + 1, t, cur, out);
            cur.pop();
        }
        if t < n_total {
            rec(e_total, n_total, s, t + 1, cur, out);
        }
    }
    rec(e, m, 0, 0, cur, out);
}

fn require_square(board: &FerrersBoard) -> Result<()> {
    if board.fits_square() {
        Ok(())
    } else {
        Err(Error::Domain(format!("board {board} must fit in the {n}x{n} grid", n = board.columns())))
    }
}

fn bracket_int(ps: &ParameterSet, z: i64) -> Result<C64> {
    bracket_z(ps, C64::new(z as f64, 0.0))
}

/// Both sides of the elliptic rook product formula:
/// `∏_i [z + b_i − i + 1]` at `(a q^{2(i−1−b_i)}, b q^{i−1−b_i})` and
/// `Σ_k r_{n−k} ∏_{j ≤ k} [z − j + 1]` at `(a q^{2(j−1)}, b q^{j−1})`.
pub fn rook_product_sides(board: &FerrersBoard, z: i64, ps: &ParameterSet) -> Result<(C64, C64)> {
    Ok(rook_product_table(board, &[z], ps)?[0])
}

/// [`rook_product_sides`] at several `z`, enumerating placements once.
pub fn rook_product_table(board: &FerrersBoard, zs: &[i64], ps: &ParameterSet) -> Result<Vec<(C64, C64)>> {
    require_square(board)?;
    ps.require_elliptic()?;
    let n = board.columns();
    let r = rook_numbers_all(board, &WeightFamily::Elliptic(*ps))?;
    let mut out = Vec::with_capacity(zs.len());
    for &z in zs {
        let mut lhs = C64::new(1.0, 0.0);
        for (idx, &b) in board.heights().iter().enumerate() {
            let i = idx as i64 + 1;
            let d = i - 1 - b as i64;
            lhs *= bracket_int(&ps.shifted(2 * d, d), z + b as i64 - i + 1)?;
        }
        let mut rhs = C64::new(0.0, 0.0);
        let mut falling = C64::new(1.0, 0.0);
        for k in 0..=n {
            if k > 0 {
                let j = k as i64;
                falling *= bracket_int(&ps.shifted(2 * (j - 1), j - 1), z - j + 1)?;
            }
            rhs += r[n - k] * falling;
        }
        out.push((lhs, rhs));
    }
    Ok(out)
}

/// Both sides of the elliptic file product formula:
/// `∏_i [z + b_i]` at `(a q^{−2 b_i}, b q^{−b_i})` and `Σ_k f_{n−k} [z]^k`.
pub fn file_product_sides(board: &FerrersBoard, z: i64, ps: &ParameterSet) -> Result<(C64, C64)> {
    Ok(file_product_table(board, &[z], ps)?[0])
}

/// [`file_product_sides`] at several `z`, enumerating placements once.
pub fn file_product_table(board: &FerrersBoard, zs: &[i64], ps: &ParameterSet) -> Result<Vec<(C64, C64)>> {
    require_square(board)?;
    ps.require_elliptic()?;
    let n = board.columns();
    let f = file_numbers_all(board, &WeightFamily::Elliptic(*ps))?;
    let mut out = Vec::with_capacity(zs.len());
    for &z in zs {
        let mut lhs = C64::new(1.0, 0.0);
        for &b in board.heights() {
            let b = b as i64;
            lhs *= bracket_int(&ps.shifted(-2 * b, -b), z + b)?;
        }
        let bz = bracket_int(ps, z)?;
        let mut rhs = C64::new(0.0, 0.0);
        for k in 0..=n {
            rhs += f[n - k] * bz.powi(k as i32);
        }
        out.push((lhs, rhs));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special_fn::{binom, binom_symbolic};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn ps() -> ParameterSet {
        ParameterSet::elliptic(c(0.9, 0.4), c(1.2, -0.5), c(0.55, 0.25), c(0.2, 0.1)).unwrap()
    }

    fn rel(l: C64, r: C64) -> f64 {
        (l - r).norm() / l.norm().max(r.norm()).max(1e-30)
    }

    #[test]
    fn path_examples() {
        assert_eq!(path_binom(4, 0, &WeightFamily::Generic).unwrap(), WeightValue::Symbolic(WeightPolynomial::one()));
        let two = WeightPolynomial::one().add(&WeightPolynomial::symbol(1, 1));
        assert_eq!(path_binom(2, 1, &WeightFamily::Generic).unwrap(), WeightValue::Symbolic(two));
        for n in 0..=6 {
            for k in 0..=n as i64 {
                assert_eq!(path_binom(n, k, &WeightFamily::Generic).unwrap().symbolic().unwrap(), &binom_symbolic(n, k));
            }
        }
        let f = WeightFamily::Elliptic(ps());
        let l = path_binom(6, 3, &f).unwrap().numeric().unwrap();
        let r = binom(&f, 6, 3).unwrap().numeric().unwrap();
        assert!(rel(l, r) < 1e-9);
    }

    #[test]
    fn empty_board_products() {
        let board = FerrersBoard::new(vec![0]).unwrap();
        let (l, r) = rook_product_sides(&board, 2, &ps()).unwrap();
        assert!(rel(l, r) < 1e-12);
        assert!(rel(l, bracket_int(&ps().shifted(0, 0), 2).unwrap()) < 1e-12);
        let board = FerrersBoard::new(vec![0, 0, 0]).unwrap();
        let (l, r) = file_product_sides(&board, 3, &ps()).unwrap();
        assert!(rel(l, r) < 1e-12);
        assert!(rel(l, bracket_int(&ps(), 3).unwrap().powi(3)) < 1e-12);
    }

    #[test]
    fn product_formulas_on_examples() {
        let board = FerrersBoard::new(vec![1, 2, 2, 3]).unwrap();
        let (l, r) = rook_product_sides(&board, 3, &ps()).unwrap();
        assert!(rel(l, r) < 1e-7, "rook {l} {r}");
        let (l, r) = file_product_sides(&board, 4, &ps()).unwrap();
        assert!(rel(l, r) < 1e-7, "file {l} {r}");
        let (l, r) = file_product_sides(&FerrersBoard::new(vec![1, 1]).unwrap(), 2, &ps()).unwrap();
        assert!(rel(l, r) < 1e-7);
    }

    #[test]
    fn boards_must_fit() {
        let board = FerrersBoard::new(vec![2]).unwrap();
        assert!(rook_product_sides(&board, 1, &ps()).is_err());
    }
}
