use crate::boards::{board_from_word, placement_polys, rook_poly_symbolic, PlacementKind};
use crate::ncword::{normal_order, normal_order_with, parse_word, RelationSystem, Strategy, Word, WeightPolynomial};
use crate::special_fn::WeightFamily;
use crate::verify::runner::Ctx;
use crate::Result;

/// Random words drawn after the exhaustive range, `200` by default.
const RANDOM_WORDS: u32 = 200;

/// All words up to `n_max` letters followed by seeded random words of
/// `n_max + 1 ..= degree` letters.
fn corpus(ctx: &mut Ctx) -> Vec<Word> {
    let mut words: Vec<Word> = (0..=ctx.n_max as usize).flat_map(Word::all_of_length).collect();
    if ctx.degree > ctx.n_max {
        let (lo, hi) = (ctx.n_max as usize + 1, ctx.degree as usize);
        for _ in 0..RANDOM_WORDS {
            let len = lo + ctx.sampler.index(hi - lo + 1);
            words.push(ctx.sampler.word(len));
        }
    }
    words
}

/// Coefficient of `x^i y^j` in the normal form of a word, against the
/// placement polynomial of the word's board with `k = #x − i` pieces.
fn oracle_check(ctx: &mut Ctx, rs: RelationSystem, kind: PlacementKind) {
    for w in corpus(ctx) {
        let nf = normal_order(&w, rs);
        let polys = placement_polys(&board_from_word(&w), kind);
        let poly = |k: u32| polys.get(k as usize).cloned().unwrap_or_else(WeightPolynomial::zero);
        let (nx, ny) = (w.count(crate::ncword::Letter::X) as u32, w.count(crate::ncword::Letter::Y) as u32);
        let k_max = match rs {
            RelationSystem::File => nx,
            _ => nx.min(ny),
        };
        let mut ok = true;
        for k in 0..=k_max {
            let i = nx - k;
            let j = match rs {
                RelationSystem::File => ny,
                _ => ny - k,
            };
            if nf.coefficient(i, j) != poly(k) {
                ok = false;
            }
        }
        // no other monomials may appear
        let expected_terms = (0..=k_max).filter(|&k| !poly(k).is_zero()).count();
        ctx.exact(ok && nf.len() == expected_terms);
    }
}

pub(crate) fn rook(ctx: &mut Ctx) -> Result<()> {
    oracle_check(ctx, RelationSystem::RookWeyl, PlacementKind::Rook);
    Ok(())
}

pub(crate) fn file(ctx: &mut Ctx) -> Result<()> {
    oracle_check(ctx, RelationSystem::File, PlacementKind::File);
    Ok(())
}

/// Leftmost and rightmost rewriting agree exactly for the homogeneous system
/// and after symbol canonicalisation for the rook and file systems.
pub(crate) fn confluence(ctx: &mut Ctx) -> Result<()> {
    for len in 0..=ctx.n_max as usize {
        for w in Word::all_of_length(len) {
            let hom = |s| normal_order_with(&w, RelationSystem::Homogeneous, s);
            ctx.exact(hom(Strategy::Leftmost) == hom(Strategy::Rightmost));
            for rs in [RelationSystem::RookWeyl, RelationSystem::File] {
                let l = normal_order_with(&w, rs, Strategy::Leftmost).canonical(rs);
                let r = normal_order_with(&w, rs, Strategy::Rightmost).canonical(rs);
                ctx.exact(l == r);
            }
        }
    }
    Ok(())
}

/// `xyxxyxyy` in the classical Weyl algebra is `x^4 y^4 + 4 x^3 y^3 + 2 x^2 y^2`.
pub(crate) fn navon(ctx: &mut Ctx) -> Result<()> {
    let w = parse_word("xyxxyxyy")?;
    let nf = normal_order(&w, RelationSystem::RookWeyl);
    let classical = nf.evaluate(&WeightFamily::Q { q: crate::special_fn::re(1.0) })?;
    let want = [((4, 4), 1.0), ((3, 3), 4.0), ((2, 2), 2.0)];
    ctx.exact(classical.len() == want.len() && want.iter().all(|&(k, v)| classical.get(&k) == Some(&crate::special_fn::re(v))));
    let board = board_from_word(&w);
    ctx.exact((0..=2).all(|k| rook_poly_symbolic(&board, k).count() == [1, 4, 2][k]));
    Ok(())
}
