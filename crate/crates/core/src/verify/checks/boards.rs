use num_complex::Complex64 as C64;

use crate::boards::{
    file_numbers, file_product_sides, file_product_table, placement_sums, rook_numbers, rook_product_sides, rook_product_table, FerrersBoard,
    PlacementKind,
};
use crate::special_fn::{bracket_z, q_bracket, ParameterSet, WeightFamily};
use crate::verify::runner::Ctx;
use crate::verify::sampling::digest_of;
use crate::Result;

type Sides = fn(&FerrersBoard, &[i64], &ParameterSet) -> Result<Vec<(C64, C64)>>;

/// `Σ|terms|` of the summed side of a product formula at each `z`.
type Scale = fn(&FerrersBoard, &[i64], &ParameterSet) -> Result<Vec<f64>>;

fn bracket(ps: &ParameterSet, z: i64) -> Result<C64> {
    bracket_z(ps, C64::new(z as f64, 0.0))
}

fn rook_scale(board: &FerrersBoard, zs: &[i64], ps: &ParameterSet) -> Result<Vec<f64>> {
    let f = WeightFamily::Elliptic(*ps);
    let r = placement_sums(board, PlacementKind::Rook, |i, j, r| Ok(C64::new(f.small(1, i as i64 - j as i64 - r as i64)?.norm(), 0.0)))?;
    let n = board.columns();
    zs.iter()
        .map(|&z| {
            let (mut total, mut falling) = (0.0, 1.0);
            for k in 0..=n {
                if k > 0 {
                    let j = k as i64;
                    falling *= bracket(&ps.shifted(2 * (j - 1), j - 1), z - j + 1)?.norm();
                }
                total += r[n - k].re * falling;
            }
            Ok(total)
        })
        .collect()
}

fn file_scale(board: &FerrersBoard, zs: &[i64], ps: &ParameterSet) -> Result<Vec<f64>> {
    let f = WeightFamily::Elliptic(*ps);
    let fl = placement_sums(board, PlacementKind::File, |_, j, _| Ok(C64::new(f.small(1, 1 - j as i64)?.norm(), 0.0)))?;
    let n = board.columns();
    zs.iter()
        .map(|&z| {
            let bz = bracket(ps, z)?.norm();
            Ok((0..=n).map(|k| fl[n - k].re * bz.powi(k as i32)).sum())
        })
        .collect()
}

fn product_formula(ctx: &mut Ctx, sides: Sides, scale: Scale) -> Result<()> {
    let zs: Vec<i64> = (0..=ctx.degree as i64).collect();
    for board in FerrersBoard::all_within(ctx.n_max) {
        ctx.sampled(|s, t| {
            let ps = s.elliptic();
            t.params(&ps);
            for ((l, r), sc) in sides(&board, &zs, &ps)?.into_iter().zip(scale(&board, &zs, &ps)?) {
                t.cmp_sum(l, r, sc, "placement sum")?;
            }
            Ok(())
        })?;
    }
    Ok(())
}

pub(crate) fn rook_product(ctx: &mut Ctx) -> Result<()> {
    product_formula(ctx, rook_product_table, rook_scale)
}

pub(crate) fn file_product(ctx: &mut Ctx) -> Result<()> {
    product_formula(ctx, file_product_table, file_scale)
}

/// Garsia–Remmel: `∏_i [z + b_i − i + 1]_q = Σ_k r_{n−k}(q) [z]_q [z−1]_q ⋯ [z−k+1]_q`
/// with `r_k(q) = Σ_P q^{#uncancelled}`, the file analogue
/// `∏_i [z + b_i]_q = Σ_k f_{n−k}(q) [z]_q^k`, and the elliptic product formulas
/// with `p = 0` and `a ≪ b ≪ 1` reproducing both.
pub(crate) fn gr_q_degeneration(ctx: &mut Ctx) -> Result<()> {
    let z_max = ctx.degree as i64;
    let one = C64::new(1.0, 0.0);
    for board in FerrersBoard::all_within(ctx.n_max) {
        ctx.sampled(|s, t| {
            let ps = s.elliptic();
            let q = ps.q;
            t.digest(digest_of(ps.a, ps.b, q, C64::default()));
            let f = WeightFamily::Q { q };
            let n = board.columns();
            let r = rook_numbers(&board, &f)?;
            let fl = file_numbers(&board, &f)?;
            let degenerate = ParameterSet::elliptic(ps.a * 1e-26, ps.b * 1e-13, q, C64::default())?;
            for z in 0..=z_max {
                let mut rook_lhs = one;
                let mut file_lhs = one;
                for (idx, &b) in board.heights().iter().enumerate() {
                    rook_lhs *= q_bracket(q, z + b as i64 - idx as i64)?;
                    file_lhs *= q_bracket(q, z + b as i64)?;
                }
                let mut rook_rhs = C64::default();
                let mut file_rhs = C64::default();
                let mut falling = one;
                let bz = q_bracket(q, z)?;
                for k in 0..=n {
                    if k > 0 {
                        falling *= q_bracket(q, z - k as i64 + 1)?;
                    }
                    rook_rhs += r[n - k] * falling;
                    file_rhs += fl[n - k] * bz.powi(k as i32);
                }
                t.cmp(rook_lhs, rook_rhs);
                t.cmp(file_lhs, file_rhs);
                let (el, er) = rook_product_sides(&board, z, &degenerate)?;
                t.cmp(el, rook_lhs);
                t.cmp(er, rook_rhs);
                let (el, er) = file_product_sides(&board, z, &degenerate)?;
                t.cmp(el, file_lhs);
                t.cmp(er, file_rhs);
            }
            Ok(())
        })?;
    }
    Ok(())
}
