use serde::Serialize;

use super::element::{as_projection_element, element_leq, element_lt, element_order_defect, AlgebraElement};
use super::morphism::Morphism;
use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::projection::Projection;
use crate::spectra::{spectral_window_projection, HermitianOperator};
use crate::tolerance::ToleranceConfig;

/// Window parameter: `Q` lies between `E^perp_{PSP}(1 - δ)` and `E^perp_{PSP}(δ-)`.
pub const PULLBACK_DELTA: f64 = 0.25;

/// Largest blockwise Frobenius error accepted as `π(Q) = q` exactly.
pub const IMAGE_EXACT_TOL: f64 = 1e-12;

fn require_surjective(m: &Morphism) -> Result<()> {
    if m.is_surjective() {
        Ok(())
    } else {
        Err(Error::Argument("pullbacks need a surjective morphism".into()))
    }
}

fn require_leq(a: &AlgebraElement, b: &AlgebraElement, what: &str, cfg: &ToleranceConfig) -> Result<()> {
    if element_leq(a, b, cfg)? {
        return Ok(());
    }
    Err(Error::Order(format!(
        "{what} fails (defect {:.3e})",
        element_order_defect(a, b)?
    )))
}

/// A projection `Q <= P` in the source with `π(Q) = q`, for `q <= π(P)`.
///
/// Lifts `q` through the canonical section, symmetrizes, and cuts the
/// spectrum of `PSP` at `δ`.
pub fn pullback_projection(
    m: &Morphism,
    q: &AlgebraElement,
    p: &AlgebraElement,
    cfg: &ToleranceConfig,
) -> Result<AlgebraElement> {
    require_surjective(m)?;
    let (q, _) = as_projection_element(q)?;
    let (p, _) = as_projection_element(p)?;
    require_leq(&q, &m.apply(&p)?, "q <= π(P)", cfg)?;

    let t = m.canonical_lift(&q)?;
    let s = t.add(&t.adjoint())?.scale(0.5);
    let blocks: Vec<Projection> = p
        .blocks()
        .iter()
        .zip(s.blocks())
        .map(|(pb, sb)| {
            let psp = HermitianOperator::from_symmetrized(&(pb * sb * pb));
            spectral_window_projection(&psp, 1.0 - PULLBACK_DELTA, PULLBACK_DELTA, cfg)
        })
        .collect::<Result<_>>()?;
    AlgebraElement::from_projections(m.source(), &blocks)
}

/// A projection `R <= Q <= P` with `π(Q) = q`, for `R <= P` and
/// `π(R) <= q <= π(P)`.
///
/// First `S <= P` with `π(S) = q`, then `T <= P - R` with `π(T) = π(P - S)`;
/// the result is `P - T`.
pub fn sandwich_pullback(
    m: &Morphism,
    q: &AlgebraElement,
    r: &AlgebraElement,
    p: &AlgebraElement,
    cfg: &ToleranceConfig,
) -> Result<AlgebraElement> {
    require_surjective(m)?;
    let (q, _) = as_projection_element(q)?;
    let (r, _) = as_projection_element(r)?;
    let (p, _) = as_projection_element(p)?;
    require_leq(&r, &p, "R <= P", cfg)?;
    require_leq(&m.apply(&r)?, &q, "π(R) <= q", cfg)?;
    require_leq(&q, &m.apply(&p)?, "q <= π(P)", cfg)?;

    let s = pullback_projection(m, &q, &p, cfg)?;
    let (p_minus_s, _) = as_projection_element(&p.sub(&s)?)?;
    let (p_minus_r, _) = as_projection_element(&p.sub(&r)?)?;
    let image = m.apply(&p_minus_s)?;
    let t = pullback_projection(m, &image, &p_minus_r, cfg)?;
    Ok(as_projection_element(&p.sub(&t)?)?.0)
}

/// Postconditions of a pullback `Q` of `q` with `lower <= Q <= upper`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PullbackCheck {
    /// Largest blockwise Frobenius error of `π(Q) - q`.
    pub image_error: f64,
    pub upper_defect: f64,
    pub lower_defect: f64,
    pub holds: bool,
}

pub fn check_pullback(
    m: &Morphism,
    q: &AlgebraElement,
    result: &AlgebraElement,
    lower: &AlgebraElement,
    upper: &AlgebraElement,
    cfg: &ToleranceConfig,
) -> Result<PullbackCheck> {
    let image_error = m.apply(result)?.max_block_distance(q)?;
    let upper_defect = element_order_defect(result, upper)?;
    let lower_defect = element_order_defect(lower, result)?;
    Ok(PullbackCheck {
        image_error,
        upper_defect,
        lower_defect,
        holds: image_error <= IMAGE_EXACT_TOL && upper_defect <= cfg.order_tol && lower_defect <= cfg.order_tol,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct Interpolation {
    /// Source projection whose image lies between the two halves.
    pub element: AlgebraElement,
    /// Pullbacks of the largest lower and smallest upper target.
    pub lower: AlgebraElement,
    pub upper: AlgebraElement,
    /// True when nothing lies strictly between the halves; the element is
    /// then the lower endpoint.
    pub degenerate: bool,
}

/// Interpolates a finite pregap `(ps, qs)` of target projections through the
/// source, pulling back `p_0, q_0, p_1, q_1, ...` alternately so each lift
/// lies between the lifts already chosen.
///
/// `ps` must increase, `qs` must decrease, and every `p < q`.
pub fn interpolate_pregap(
    m: &Morphism,
    ps: &[AlgebraElement],
    qs: &[AlgebraElement],
    cfg: &ToleranceConfig,
) -> Result<Interpolation> {
    require_surjective(m)?;
    let ps: Vec<AlgebraElement> = ps.iter().map(|x| as_projection_element(x).map(|e| e.0)).collect::<Result<_>>()?;
    let qs: Vec<AlgebraElement> = qs.iter().map(|x| as_projection_element(x).map(|e| e.0)).collect::<Result<_>>()?;
    for (i, p) in ps.iter().enumerate() {
        for (j, q) in qs.iter().enumerate() {
            if !element_lt(p, q, cfg)? {
                return Err(Error::Order(format!("not a pregap: p_{i} < q_{j} fails")));
            }
        }
    }

    let mut low = AlgebraElement::zero(m.source());
    let mut high = AlgebraElement::identity(m.source());
    for i in 0..ps.len().max(qs.len()) {
        if let Some(p) = ps.get(i) {
            low = sandwich_pullback(m, p, &low, &high, cfg)
                .map_err(|e| Error::Order(format!("lower half must increase at p_{i}: {e}")))?;
        }
        if let Some(q) = qs.get(i) {
            high = sandwich_pullback(m, q, &low, &high, cfg)
                .map_err(|e| Error::Order(format!("upper half must decrease at q_{i}: {e}")))?;
        }
    }

    let p_top = m.apply(&low)?;
    let q_bottom = m.apply(&high)?;
    match strictly_between(&p_top, &q_bottom)? {
        Some(r) => {
            let element = sandwich_pullback(m, &r, &low, &high, cfg)?;
            Ok(Interpolation {
                element,
                lower: low,
                upper: high,
                degenerate: false,
            })
        }
        None => Ok(Interpolation {
            element: low.clone(),
            lower: low,
            upper: high,
            degenerate: true,
        }),
    }
}

/// `p + vv*` for the first available direction `v` of `q - p`, provided
/// `q - p` has rank at least 2.
fn strictly_between(p: &AlgebraElement, q: &AlgebraElement) -> Result<Option<AlgebraElement>> {
    let diff = q.sub(p)?.projection_blocks()?;
    if diff.iter().map(Projection::rank).sum::<usize>() < 2 {
        return Ok(None);
    }
    let mut blocks: Vec<CMatrix> = p.blocks().to_vec();
    let (b, d) = diff
        .iter()
        .enumerate()
        .find(|(_, d)| d.rank() > 0)
        .expect("rank is at least 2");
    let v = d.range_basis().column(0);
    blocks[b] += v * v.adjoint();
    let (r, _) = as_projection_element(&AlgebraElement::new(p.algebra().clone(), blocks)?)?;
    Ok(Some(r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::element::BlockAlgebra;
    use crate::linalg::diag;
    use crate::projection::line;

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn setup() -> (Morphism, AlgebraElement) {
        let a = BlockAlgebra::new(vec![2, 3]).unwrap();
        let m = Morphism::selection(&a, &[1]).unwrap();
        let p = AlgebraElement::from_projections(
            &a,
            &[
                line(&[1.0, 1.0]).unwrap(),
                Projection::from_matrix(diag(&[1.0, 1.0, 0.0])).unwrap(),
            ],
        )
        .unwrap();
        (m, p)
    }

    fn target(d: &[f64]) -> AlgebraElement {
        let b = BlockAlgebra::new(vec![d.len()]).unwrap();
        AlgebraElement::new(b, vec![diag(d)]).unwrap()
    }

    #[test]
    fn top_and_bottom_pull_back() {
        let (m, p) = setup();
        let top = m.apply(&p).unwrap();
        let q = pullback_projection(&m, &top, &p, &cfg()).unwrap();
        let zero_src = AlgebraElement::zero(m.source());
        assert!(check_pullback(&m, &top, &q, &zero_src, &p, &cfg()).unwrap().holds);

        let zero = AlgebraElement::zero(m.target());
        let q = pullback_projection(&m, &zero, &p, &cfg()).unwrap();
        assert!(q.norm() < 1e-14);
    }

    #[test]
    fn rank_one_under_rank_two() {
        let (m, p) = setup();
        let q = target(&[0.0, 1.0, 0.0]);
        let lifted = pullback_projection(&m, &q, &p, &cfg()).unwrap();
        let zero_src = AlgebraElement::zero(m.source());
        let chk = check_pullback(&m, &q, &lifted, &zero_src, &p, &cfg()).unwrap();
        assert!(chk.holds, "{chk:?}");
        // unselected block is forgotten, so the lift vanishes there
        assert!(lifted.block(0).norm() < 1e-14);
    }

    #[test]
    fn precondition_violations() {
        let (m, p) = setup();
        let q = target(&[0.0, 0.0, 1.0]);
        assert!(matches!(pullback_projection(&m, &q, &p, &cfg()), Err(Error::Order(_))));
        let a = m.source().clone();
        let not_onto = Morphism::selection(&a, &[1, 1]).unwrap();
        let q2 = AlgebraElement::zero(not_onto.target());
        assert!(matches!(pullback_projection(&not_onto, &q2, &p, &cfg()), Err(Error::Argument(_))));
    }

    #[test]
    fn sandwich_extremes() {
        let (m, p) = setup();
        let zero_src = AlgebraElement::zero(m.source());
        let q = target(&[1.0, 0.0, 0.0]);
        let with_zero = sandwich_pullback(&m, &q, &zero_src, &p, &cfg()).unwrap();
        assert!(check_pullback(&m, &q, &with_zero, &zero_src, &p, &cfg()).unwrap().holds);

        let top = m.apply(&p).unwrap();
        let forced = sandwich_pullback(&m, &top, &p, &p, &cfg()).unwrap();
        assert!(forced.max_block_distance(&p).unwrap() < 1e-12);
    }

    #[test]
    fn interpolation_of_a_single_pair() {
        let a = BlockAlgebra::new(vec![3, 1]).unwrap();
        let m = Morphism::selection(&a, &[0]).unwrap();
        let p = target(&[1.0, 0.0, 0.0]);
        let q = target(&[1.0, 1.0, 1.0]);
        let out = interpolate_pregap(&m, std::slice::from_ref(&p), std::slice::from_ref(&q), &cfg()).unwrap();
        assert!(!out.degenerate);
        let img = m.apply(&out.element).unwrap();
        assert!(element_lt(&p, &img, &cfg()).unwrap() && element_lt(&img, &q, &cfg()).unwrap());
    }

    #[test]
    fn degenerate_and_invalid_pregaps() {
        let a = BlockAlgebra::new(vec![2]).unwrap();
        let m = Morphism::identity(&a);
        let p = target(&[1.0, 0.0]);
        let q = target(&[1.0, 1.0]);
        let out = interpolate_pregap(&m, std::slice::from_ref(&p), std::slice::from_ref(&q), &cfg()).unwrap();
        assert!(out.degenerate);
        assert!(matches!(interpolate_pregap(&m, std::slice::from_ref(&p), std::slice::from_ref(&p), &cfg()), Err(Error::Order(_))));
        // no lower half: interpolate below q
        let out = interpolate_pregap(&m, &[], &[q], &cfg()).unwrap();
        assert!(!out.degenerate && m.apply(&out.element).unwrap().block(0).norm() > 0.5);
    }
}
