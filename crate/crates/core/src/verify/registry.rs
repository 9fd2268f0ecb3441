use serde::{Deserialize, Serialize};

use super::checks::{binomial, boards, exponential, normal, operators, theta, weights};
use super::runner::Ctx;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    ExactSymbolic,
    NumericSampled,
}

/// Default sizes of a check. `n_min..=n_max` is the range of the main index
/// (binomial row, word length, board size); `degree` caps series degrees, or
/// the random word length and `z` for the board checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sizes {
    pub n_min: u32,
    pub n_max: u32,
    pub degree: u32,
    pub draws: u32,
}

const fn sizes(n_max: u32, degree: u32, draws: u32) -> Sizes {
    Sizes { n_min: 0, n_max, degree, draws }
}

/// A registered identity. `lhs_route` and `rhs_route` name the code paths
/// each side goes through; they must be disjoint.
#[derive(Debug, Clone, Serialize)]
pub struct IdentityCheck {
    pub id: &'static str,
    pub description: &'static str,
    pub kind: CheckKind,
    pub default_sizes: Sizes,
    pub tolerance: f64,
    pub lhs_route: &'static [&'static str],
    pub rhs_route: &'static [&'static str],
    #[serde(skip)]
    pub(crate) run: fn(&mut Ctx) -> Result<()>,
}

use CheckKind::{ExactSymbolic as Exact, NumericSampled as Numeric};

macro_rules! check {
    ($id:literal, $kind:expr, $sizes:expr, $tol:expr, $lhs:expr, $rhs:expr, $run:path, $desc:literal) => {
        IdentityCheck { id: $id, description: $desc, kind: $kind, default_sizes: $sizes, tolerance: $tol, lhs_route: $lhs, rhs_route: $rhs, run: $run }
    };
}

const CLOSED: &[&str] = &["binomial closed form"];
const POWER_SUM: &[&str] = &["rewriting of (x+y)^n"];

pub static REGISTRY: &[IdentityCheck] = &[
    check!("theta-inversion", Numeric, sizes(0, 0, 1000), 1e-10, &["theta product"], &["theta triple-product series"],
        theta::inversion, "θ(1/x;p) = −θ(x;p)/x"),
    check!("theta-quasiperiod", Numeric, sizes(0, 0, 1000), 1e-10, &["theta product"], &["theta triple-product series"],
        theta::quasiperiod, "θ(px;p) = −θ(x;p)/x"),
    check!("theta-addition", Numeric, sizes(0, 0, 1000), 1e-10, &["theta product"], &["theta triple-product series"],
        theta::addition, "θ(xy,x/y,uv,u/v) − θ(xv,x/v,uy,u/y) = (u/y) θ(yv,y/v,xu,x/u)"),
    check!("weight-shift", Numeric, sizes(6, 0, 50), 1e-8, &["weights at shifted index"], &["weights at shifted parameters"],
        weights::shift, "w(s,k+n) and W(s,k+n) against weights at (aq^{2k}, bq^k)"),
    check!("weight-p-periodic", Numeric, sizes(4, 0, 50), 1e-8, &["weights at (a,b)"], &["weights at (ap^i, bp^j)"],
        theta::weight_p_periodic, "elliptic small weights are invariant under a → ap, b → bp"),
    check!("bigweight-closed-vs-product", Numeric, sizes(8, 0, 50), 1e-8, &["big weight closed form"], &["product of small weights"],
        weights::bigweight_closed_vs_product, "W(s,t) closed forms against ∏_{j≤t} w(s,j) for every family"),
    check!("binom-recursion-closed", Numeric, sizes(8, 0, 50), 1e-8, CLOSED, &["binomial recursion via big weights"],
        binomial::recursion_closed, "closed-form binomials against the defining recursion for every family"),
    check!("path-binom", Numeric, sizes(8, 0, 20), 1e-8, &["lattice path enumeration"], &["binomial recursion (symbolic)", "binomial closed form"],
        binomial::path_interpretation, "binomials as weighted lattice path sums"),
    check!("binom-limit-chain", Numeric, sizes(8, 0, 50), 1e-9, &["elliptic closed form at degenerate parameters", "b;q closed form"],
        &["linear-factor closed form", "binomial recursion via big weights"],
        binomial::limit_chain, "elliptic binomial → (p→0) → (a→0) → (b→0) → Gaussian binomial"),
    check!("aq-symmetry", Numeric, sizes(8, 0, 50), 1e-8, &["a;q closed form at k"], &["binomial recursion at n−k"],
        binomial::aq_symmetry, "[n,k]_{a;q} = [n,n−k]_{a;q}"),
    check!("aq-recurrences", Numeric, sizes(8, 0, 50), 1e-8, &["a;q closed form"], &["binomial recursion with explicit factors"],
        binomial::aq_recurrences, "the two a;q Pascal-type recurrences"),
    check!("wdep-binomial-thm", Exact, sizes(8, 0, 0), 0.0, POWER_SUM, &["binomial recursion (symbolic)"],
        binomial::wdep_binomial_thm, "(x+y)^n = Σ [n,k] x^k y^{n−k} in formal weights"),
    check!("elliptic-binomial-thm", Numeric, sizes(8, 0, 50), 1e-8, POWER_SUM, CLOSED,
        binomial::elliptic_binomial_thm, "binomial theorem under elliptic weights"),
    check!("bq-binomial-thm", Numeric, sizes(8, 0, 50), 1e-8, POWER_SUM, CLOSED,
        binomial::bq_binomial_thm, "binomial theorem under b;q weights"),
    check!("aq-binomial-thm", Numeric, sizes(8, 0, 50), 1e-8, POWER_SUM, CLOSED,
        binomial::aq_binomial_thm, "binomial theorem under a;q weights"),
    check!("prop-product-expansion", Numeric, sizes(6, 0, 20), 1e-7, &["skew product of linear factors", "big weight closed form"],
        &["theta-shifted factorial closed form", "binomial closed form"],
        operators::product_expansion, "∏←_{k<n} (1 − W(1,k) c x) expanded in powers of x"),
    check!("bq-reversal", Numeric, sizes(8, 0, 50), 1e-8, &["rewriting of y^k x^l"], &["q-shifted factorial closed form"],
        binomial::bq_reversal, "x^l y^k = q^{−kl} (bq^{1+k};q)_{2l}/(bq;q)_{2l} y^k x^l"),
    check!("bq-reversed-expansion", Numeric, sizes(8, 0, 50), 1e-8, POWER_SUM, &["q-shifted factorial closed form"],
        binomial::bq_reversed_expansion, "(x+y)^n expanded in y^k x^{n−k}"),
    check!("bq-finite-product", Numeric, sizes(6, 0, 30), 1e-8, &["ordered product with yx rewriting"],
        &["binomial closed form", "shift-only monomial products"],
        exponential::bq_finite_product, "∏→ (by + (bq²;q⁻¹)_k/(b;q⁻¹)_k x) expanded in x^k (by)^{n−k}"),
    check!("bq-cauchy", Numeric, sizes(0, 8, 30), 1e-9, CLOSED, &["series product with parameter shifts"],
        exponential::bq_cauchy, "e_{b;q}(x+y) = e_{b;q}(x) e_{b;q}(y)"),
    check!("aq-cauchy", Numeric, sizes(0, 8, 30), 1e-9, CLOSED, &["series product with yx rewriting"],
        exponential::aq_cauchy, "e_{a;q}(x+y) = e_{a;q}(y) e_{a;q}(x)"),
    check!("qexp-cauchy", Numeric, sizes(0, 8, 30), 1e-9, &["commuting coefficient product"], POWER_SUM,
        exponential::qexp_cauchy, "e_q(u) e_q(v) = e_q(u+v) for vu = quv"),
    check!("qexp-braiding", Numeric, sizes(0, 8, 30), 1e-9, &["series product with yx rewriting"], &["closed q-commutation rule"],
        exponential::qexp_braiding, "e_q(v) e_q(u) = e_q(u) e_q(−uv) e_q(v) for vu = quv"),
    check!("duality", Numeric, sizes(8, 0, 30), 1e-8, &["dual image of the b;q expansion"], POWER_SUM,
        exponential::duality, "(a,b,x,y) ↦ (b,a,y,x) carries the b;q binomial theorem to the a;q one"),
    check!("f-relations", Numeric, sizes(0, 12, 30), 1e-9, &["series coefficients"], &["skew multiplication by x"],
        exponential::f_relations, "the two F_{b;q} relations and their combination"),
    check!("pincherle", Numeric, sizes(8, 0, 20), 1e-7, &["D applied around x"], &["eta operator"],
        operators::pincherle, "(Dx − xD)(x^n) = η(x^n)"),
    check!("pincherle-k", Numeric, sizes(8, 0, 20), 1e-7, &["D applied around x"], &["eta operator", "binomial closed form"],
        operators::pincherle_k, "(D^k x − x D^k)(x^n) = [k,1]_{bq^{2−2k},aq^{1−k}} D^{k−1} η(x^n), k ≤ 5"),
    check!("fib-genfun", Numeric, sizes(0, 12, 20), 1e-8, &["expansion of Σ (x + x²η)^m x"], &["Fibonacci recursion"],
        operators::fib_genfun, "generating function of the elliptic and a;q Fibonacci numbers"),
    check!("fib-aq-closed", Numeric, sizes(15, 0, 50), 1e-8, &["Fibonacci recursion"], &["closed sum with Gaussian binomials"],
        operators::fib_aq_closed_form, "a;q Fibonacci numbers in closed form"),
    check!("lemma-xeta-power", Numeric, sizes(8, 0, 50), 1e-8, &["repeated operator application"], &["closed expansion"],
        operators::lemma_xeta_power, "(x + x²η_{a;q})^n x in closed form"),
    check!("normalorder-rook", Exact, sizes(8, 12, 0), 0.0, &["rewriting"], &["rook placement enumeration"],
        normal::rook, "normal ordering in the rook system equals the weighted rook polynomials"),
    check!("normalorder-file", Exact, sizes(8, 12, 0), 0.0, &["rewriting"], &["file placement enumeration"],
        normal::file, "normal ordering in the file system equals the weighted file polynomials"),
    check!("normalorder-confluence", Exact, sizes(8, 0, 0), 0.0, &["leftmost-first rewriting"], &["rightmost-first rewriting"],
        normal::confluence, "rewriting strategies agree (after canonicalisation for rook and file)"),
    check!("navon-example", Exact, sizes(8, 0, 0), 0.0, &["rewriting"], &["rook placement enumeration"],
        normal::navon, "xyxxyxyy = x^4y^4 + 4x^3y^3 + 2x^2y^2 in the Weyl algebra"),
    check!("rook-product", Numeric, sizes(4, 4, 10), 1e-7, &["bracket product over columns"], &["rook placement enumeration", "bracket falling factorial"],
        boards::rook_product, "elliptic rook product formula on all boards in the 4×4 square"),
    check!("file-product", Numeric, sizes(4, 4, 10), 1e-7, &["bracket product over columns"], &["file placement enumeration", "bracket powers"],
        boards::file_product, "elliptic file product formula on all boards in the 4×4 square"),
    check!("gr-q-degeneration", Numeric, sizes(4, 4, 5), 1e-9, &["q-bracket products", "elliptic product formula at degenerate parameters"],
        &["q-weighted placement enumeration"],
        boards::gr_q_degeneration, "Garsia–Remmel q-rook and q-file formulas and the elliptic degeneration"),
    check!("chebyshev-weight", Numeric, sizes(5, 0, 50), 1e-8, &["a;q small weight"], &["sine ratio"],
        weights::chebyshev, "w_{a,0;q}(s,t) as a ratio of sines for q = e^{ix}"),
];

pub fn list_identities() -> &'static [IdentityCheck] {
    REGISTRY
}

pub fn lookup(id: &str) -> Result<&'static IdentityCheck> {
    REGISTRY.iter().find(|c| c.id == id).ok_or_else(|| Error::UnknownId(id.to_string()))
}
