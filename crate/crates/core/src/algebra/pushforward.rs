use serde::Serialize;

use super::element::{as_projection_element, element_leq, AlgebraElement};
use super::morphism::Morphism;
use crate::error::{Error, Result};
use crate::spectra::{decompose, HermitianOperator};
use crate::tolerance::ToleranceConfig;

/// `E_S(t)` and `E_S(t-)` computed block by block.
pub fn element_spectral_family(
    s: &AlgebraElement,
    t: f64,
    cfg: &ToleranceConfig,
) -> Result<(AlgebraElement, AlgebraElement)> {
    let mut closed = Vec::new();
    let mut open = Vec::new();
    for (i, b) in s.blocks().iter().enumerate() {
        let h = HermitianOperator::new(b.clone(), cfg)
            .map_err(|e| Error::Argument(format!("block {i} of S: {e}")))?;
        let dec = decompose(&h, cfg)?;
        closed.push(dec.lower(t));
        open.push(dec.lower_open(t));
    }
    let alg = s.algebra();
    Ok((
        AlgebraElement::from_projections(alg, &closed)?,
        AlgebraElement::from_projections(alg, &open)?,
    ))
}

/// Both implications `P <= E_S(t) ⇒ π(P) <= E_{π(S)}(t)` and
/// `E_S(t-) <= P ⇒ E_{π(S)}(t-) <= π(P)`, evaluated on one instance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PushforwardReport {
    pub antecedent: bool,
    pub consequent: bool,
    pub dual_antecedent: bool,
    pub dual_consequent: bool,
}

impl PushforwardReport {
    /// Neither implication is violated.
    pub fn holds(&self) -> bool {
        (!self.antecedent || self.consequent) && (!self.dual_antecedent || self.dual_consequent)
    }
}

pub fn pushforward_spectral_bound_check(
    m: &Morphism,
    p: &AlgebraElement,
    s: &AlgebraElement,
    t: f64,
    cfg: &ToleranceConfig,
) -> Result<PushforwardReport> {
    if !t.is_finite() {
        return Err(Error::NumericInput(format!("cutoff t = {t}")));
    }
    let (p, _) = as_projection_element(p)?;
    let (e_src, e_src_open) = element_spectral_family(s, t, cfg)?;
    let pi_p = m.apply(&p)?;
    let (e_tgt, e_tgt_open) = element_spectral_family(&m.apply(s)?, t, cfg)?;
    Ok(PushforwardReport {
        antecedent: element_leq(&p, &e_src, cfg)?,
        consequent: element_leq(&pi_p, &e_tgt, cfg)?,
        dual_antecedent: element_leq(&e_src_open, &p, cfg)?,
        dual_consequent: element_leq(&e_tgt_open, &pi_p, cfg)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::element::BlockAlgebra;
    use crate::linalg::diag;

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    #[test]
    fn identity_morphism_and_large_t() {
        let a = BlockAlgebra::new(vec![2, 1]).unwrap();
        let s = AlgebraElement::new(a.clone(), vec![diag(&[0.5, -1.0]), diag(&[2.0])]).unwrap();
        let p = AlgebraElement::new(a.clone(), vec![diag(&[0.0, 1.0]), diag(&[0.0])]).unwrap();
        let m = Morphism::identity(&a);
        let r = pushforward_spectral_bound_check(&m, &p, &s, 0.0, &cfg()).unwrap();
        assert!(r.antecedent && r.consequent && r.holds());

        let q = Morphism::selection(&a, &[1]).unwrap();
        let r = pushforward_spectral_bound_check(&q, &AlgebraElement::identity(&a), &s, 3.0, &cfg()).unwrap();
        assert!(r.antecedent && r.consequent && r.dual_antecedent && r.dual_consequent);
    }

    #[test]
    fn quotient_can_make_the_consequent_true_alone() {
        // P = 1 is not below E_S(0) in the source, but the surviving block is
        let a = BlockAlgebra::new(vec![1, 1]).unwrap();
        let s = AlgebraElement::new(a.clone(), vec![diag(&[1.0]), diag(&[-1.0])]).unwrap();
        let m = Morphism::selection(&a, &[1]).unwrap();
        let r = pushforward_spectral_bound_check(&m, &AlgebraElement::identity(&a), &s, 0.0, &cfg()).unwrap();
        assert!(!r.antecedent && r.consequent && r.holds());
    }

    #[test]
    fn non_hermitian_s_is_rejected() {
        let a = BlockAlgebra::new(vec![2]).unwrap();
        let s = AlgebraElement::new(a.clone(), vec![crate::linalg::real_matrix(2, &[0.0, 1.0, 0.0, 0.0])]).unwrap();
        let m = Morphism::identity(&a);
        assert!(pushforward_spectral_bound_check(&m, &AlgebraElement::identity(&a), &s, 0.0, &cfg()).is_err());
    }
}
