use rand::Rng;
use serde::Serialize;
use serde_json::Value;

use super::inputs::{
    EeInput, InterpolateInput, NormCheckInput, PairInput, ProjectionsInput, PullbackInput, PushforwardInput,
};
use crate::algebra::{
    check_pullback, element_lt, element_spectral_family, interpolate_pregap, pullback_projection,
    pushforward_spectral_bound_check, sandwich_pullback, AlgebraElement,
};
use crate::calkin::{badpq_family, badpq_overlap, essential_norm_estimate, essential_spectrum_estimate, pomega_family};
use crate::error::{Error, Result};
use crate::linalg;
use crate::projection::Projection;
use crate::projorder::{
    check_witness, glb_criterion, glb_norm_check, leq, meet_nullspace, meet_spectral, separativity_witness,
    spectrum_identity_report,
};
use crate::random::{self, InstanceRng};
use crate::sequences::{
    decreasing_equalizer_recursive, decreasing_equalizer_spectral, ee_inequality_check, gap_element,
    ScheduleConfig,
};
use crate::spectra::HermitianOperator;
use crate::tolerance::ToleranceConfig;

/// Resampling budget for suites that condition on a property of the instance.
const RESAMPLE_LIMIT: usize = 64;

pub(super) struct Check {
    pub metric: f64,
    pub violated: Option<String>,
}

impl Check {
    fn new(metric: f64) -> Self {
        Self { metric, violated: None }
    }

    /// Records the first failed requirement.
    fn require(mut self, ok: bool, invariant: &str) -> Self {
        if !ok && self.violated.is_none() {
            self.violated = Some(invariant.to_string());
        }
        self
    }
}

pub(super) struct Trial {
    pub instance: Value,
    pub check: Result<Check>,
}

fn trial<T: Serialize>(instance: &T, run: impl FnOnce() -> Result<Check>) -> Trial {
    Trial {
        instance: serde_json::to_value(instance).expect("instances serialize"),
        check: run(),
    }
}

pub(super) struct Ctx {
    pub cfg: ToleranceConfig,
    pub max_dim: usize,
}

impl Ctx {
    fn dim(&self, rng: &mut InstanceRng, cap: usize) -> usize {
        rng.random_range(2..=cap.min(self.max_dim))
    }
}

pub(super) type SuiteFn = fn(&mut InstanceRng, &Ctx) -> Trial;

pub(super) fn meet(rng: &mut InstanceRng, ctx: &Ctx) -> Trial {
    let n = ctx.dim(rng, 16);
    let k = rng.random_range(2..=4);
    let input = ProjectionsInput {
        projections: random::meet_instance(rng, n, k),
    };
    trial(&input, || {
        let ps = &input.projections;
        let d = meet_spectral(ps, &ctx.cfg)?.distance(&meet_nullspace(ps, &ctx.cfg)?);
        Ok(Check::new(d).require(d <= 1e-8, "meet_spectral = meet_nullspace"))
    })
}

pub(super) fn identities(rng: &mut InstanceRng, ctx: &Ctx) -> Trial {
    let n = ctx.dim(rng, 16);
    let ps = random::meet_instance(rng, n, 2);
    let input = PairInput {
        p: ps[0].clone(),
        q: ps[1].clone(),
    };
    trial(&input, || {
        let r = spectrum_identity_report(&input.p, &input.q, &ctx.cfg)?;
        Ok(Check::new(r.max_discrepancy)
            .require(r.norm_chain_discrepancy <= 1e-9, "||PQ||^2 = max sigma(PQP)")
            .require(r.product_spectra_discrepancy <= 1e-7, "nonzero spectra of PQP, PQ, QP, QPQ agree")
            .require(r.complement_discrepancy <= 1e-7, "sigma(PQ^perp P) = 1 - sigma(PQP) inside (eps, 1 - eps)"))
    })
}

pub(super) fn glb(rng: &mut InstanceRng, ctx: &Ctx) -> Trial {
    let n = ctx.dim(rng, 16);
    let k = rng.random_range(2..=4);
    let input = ProjectionsInput {
        projections: random::meet_instance(rng, n, k),
    };
    trial(&input, || {
        let ps = &input.projections;
        let rep = glb_criterion(ps, &ctx.cfg)?;
        let chk = glb_norm_check(ps, &meet_nullspace(ps, &ctx.cfg)?, &ctx.cfg)?;
        Ok(Check::new(chk.norm)
            .require(chk.norm < 1.0 - ctx.cfg.order_tol, "||T - meet|| < 1")
            .require(chk.is_glb, "meet passes the norm test")
            .require(rep.criterion_holds, "sup sigma(T*T) \\ {1} < 1"))
    })
}

/// Projections with a nonzero meet and an `R` strictly below it.
pub(super) fn glb_strict(rng: &mut InstanceRng, ctx: &Ctx) -> Trial {
    let n = ctx.dim(rng, 16);
    let k = rng.random_range(2..=4);
    let common = rng.random_range(1..=n / 2);
    let projections = random::tuple_with_common(rng, n, k, common);
    let meet = meet_nullspace(&projections, &ctx.cfg).expect("dims agree");
    let keep = rng.random_range(0..meet.rank().max(1));
    let r = if keep == 0 {
        Projection::zero(n)
    } else {
        let rot = random::frame(rng, meet.rank(), keep);
        Projection::from_orthonormal_basis_unchecked(&(meet.range_basis() * rot))
    };
    let input = NormCheckInput { projections, r };
    trial(&input, || {
        let chk = glb_norm_check(&input.projections, &input.r, &ctx.cfg)?;
        Ok(Check::new(1.0 - chk.norm)
            .require(chk.below_all, "R below every P_i")
            .require(chk.norm >= 1.0 - ctx.cfg.order_tol, "||T - R|| >= 1 for R strictly below the meet")
            .require(!chk.is_glb, "R is rejected as the meet"))
    })
}

pub(super) fn separativity(rng: &mut InstanceRng, ctx: &Ctx) -> Trial {
    let n = ctx.dim(rng, 16);
    let mut input = None;
    for _ in 0..RESAMPLE_LIMIT {
        let p = random::proper_projection(rng, n);
        let q = random::proper_projection(rng, n);
        if !leq(&p, &q, &ctx.cfg).unwrap_or(true) && !leq(&q, &p, &ctx.cfg).unwrap_or(true) {
            input = Some(PairInput { p, q });
            break;
        }
    }
    let input = input.expect("random proper projections are generically incomparable");
    trial(&input, || {
        let w = separativity_witness(&input.p, &input.q, &ctx.cfg)?;
        let chk = check_witness(&input.p, &input.q, &w, &ctx.cfg)?;
        Ok(Check::new(w.qr_norm - w.qr_bound)
            .require(chk.nonzero, "R != 0")
            .require(chk.below_p, "R <= P")
            .require(chk.qr_within_bound, "||QR|| <= sqrt(1 - ||Q^perp P||^2 / 2)")
            .require(chk.meet_with_q_zero, "R meet Q = 0"))
    })
}

fn decreasing(qs: &[Projection], cfg: &ToleranceConfig) -> Result<bool> {
    for w in qs.windows(2) {
        if !leq(&w[1], &w[0], cfg)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub(super) fn equalizers(rng: &mut InstanceRng, ctx: &Ctx) -> Trial {
    let n = ctx.dim(rng, 12);
    let k = rng.random_range(1..=6);
    let input = ProjectionsInput {
        projections: random::meet_instance(rng, n, k),
    };
    trial(&input, || {
        let ps = &input.projections;
        let cfg = &ctx.cfg;
        let want = meet_nullspace(ps, cfg)?;
        let rec = decreasing_equalizer_recursive(ps, cfg)?;
        let spec = decreasing_equalizer_spectral(ps, &ScheduleConfig::default(), cfg)?;
        let d_rec = meet_nullspace(&rec, cfg)?.distance(&want);
        let d_dec = meet_nullspace(&spec.decreasing, cfg)?.distance(&want);
        let d_sand = meet_nullspace(&spec.sandwich, cfg)?.distance(&want);
        let worst = d_rec.max(d_dec).max(d_sand);
        Ok(Check::new(worst)
            .require(decreasing(&rec, cfg)?, "recursive equalizer is decreasing")
            .require(d_rec <= 1e-8, "recursive equalizer keeps the meet")
            .require(decreasing(&spec.decreasing, cfg)?, "spectral equalizer is decreasing")
            .require(d_dec.max(d_sand) <= 1e-8, "spectral equalizer keeps the meet")
            .require(spec.chain.holds(1e-8), "||P^perp_m Q_n|| <= 1/(n+1)^2"))
    })
}

pub(super) fn ee(rng: &mut InstanceRng, ctx: &Ctx) -> Trial {
    let n = ctx.dim(rng, 12);
    let s_op = HermitianOperator::from_symmetrized(&random::hermitian(rng, n, 1.0));
    let p = random::proper_projection(rng, n);
    let norm = linalg::op_norm(s_op.matrix());
    let s = rng.random_range(0.0..norm);
    let t = rng.random_range(-norm..norm);
    let input = EeInput { s_op, p, s, t };
    trial(&input, || {
        let r = ee_inequality_check(&input.s_op, &input.p, input.s, input.t, &ctx.cfg)?;
        Ok(Check::new(r.lhs - r.rhs).require(r.holds, "EE inequality"))
    })
}

/// The 2x2 instance with known values `lhs = 1/2`, `rhs = 3/4`.
pub(super) fn ee_worked(_: &mut InstanceRng, ctx: &Ctx) -> Trial {
    let input = EeInput {
        s_op: HermitianOperator::diagonal(&[1.0, 0.0]),
        p: crate::projection::line(&[1.0, 1.0]).expect("nonzero vector"),
        s: 0.25,
        t: 0.0,
    };
    trial(&input, || {
        let r = ee_inequality_check(&input.s_op, &input.p, input.s, input.t, &ctx.cfg)?;
        let err = (r.lhs - 0.5).abs().max((r.rhs - 0.75).abs());
        Ok(Check::new(err)
            .require(err <= 1e-12, "worked instance gives lhs = 0.5, rhs = 0.75")
            .require(r.holds, "EE inequality"))
    })
}

pub(super) fn gap(rng: &mut InstanceRng, ctx: &Ctx) -> Trial {
    let n = ctx.dim(rng, 8);
    let mut input = None;
    for _ in 0..RESAMPLE_LIMIT {
        let ps = random::meet_instance(rng, n, 2);
        let comm = linalg::op_norm(&(ps[0].matrix() * ps[1].matrix() - ps[1].matrix() * ps[0].matrix()));
        if comm > 1e-6 {
            input = Some(PairInput {
                p: ps[0].clone(),
                q: ps[1].clone(),
            });
            break;
        }
    }
    let input = input.expect("random pairs generically do not commute");
    trial(&input, || {
        let c = gap_element(&input.p, &input.q, &ctx.cfg)?.checks;
        let min_eig = c.p_minus_s_min_eig.min(c.q_minus_s_min_eig);
        Ok(Check::new(-min_eig)
            .require(min_eig >= -1e-9, "S <= P and S <= Q")
            .require(c.incomparable_with_zero, "S incomparable with 0")
            .require(c.pos_orthogonal_to_meet, "positive witness orthogonal to P meet Q")
            .require(c.all(), "gap certificate"))
    })
}

pub(super) fn gap_commuting(rng: &mut InstanceRng, ctx: &Ctx) -> Trial {
    let n = ctx.dim(rng, 8);
    let ps = random::commuting_family(rng, n, 2);
    let input = PairInput {
        p: ps[0].clone(),
        q: ps[1].clone(),
    };
    trial(&input, || {
        let ok = matches!(gap_element(&input.p, &input.q, &ctx.cfg), Err(Error::Construction(_)));
        Ok(Check::new(0.0).require(ok, "commuting pairs raise a construction error"))
    })
}

pub(super) fn pullback(rng: &mut InstanceRng, ctx: &Ctx) -> Trial {
    let a = random::block_algebra(rng, 3, 8.min(ctx.max_dim));
    let m = random::surjection(rng, &a);
    let p = random::block_projection(rng, &a);
    let q = random::block_subprojection(rng, &m.apply(&p).expect("same algebra"));
    let r = if rng.random_bool(0.5) {
        let r_img = random::block_subprojection(rng, &q);
        pullback_projection(&m, &r_img, &p, &ctx.cfg).ok()
    } else {
        None
    };
    let input = PullbackInput {
        morphism: m.to_json(),
        p,
        q,
        r,
    };
    trial(&input, || {
        let m = input.morphism()?;
        let top = pullback_projection(&m, &input.q, &input.p, &ctx.cfg)?;
        let zero = AlgebraElement::zero(m.source());
        let c1 = check_pullback(&m, &input.q, &top, &zero, &input.p, &ctx.cfg)?;
        let lower = input.r.clone().unwrap_or(zero);
        let mid = sandwich_pullback(&m, &input.q, &lower, &input.p, &ctx.cfg)?;
        let c2 = check_pullback(&m, &input.q, &mid, &lower, &input.p, &ctx.cfg)?;
        let worst = [c1, c2]
            .iter()
            .map(|c| c.image_error.max(c.upper_defect).max(c.lower_defect))
            .fold(0.0, f64::max);
        Ok(Check::new(worst)
            .require(c1.holds, "pi(Q) = q exactly with Q <= P")
            .require(c2.holds, "pi(Q) = q exactly with R <= Q <= P"))
    })
}

pub(super) fn interpolation(rng: &mut InstanceRng, ctx: &Ctx) -> Trial {
    let lt = |x: &AlgebraElement, y: &AlgebraElement| element_lt(x, y, &ctx.cfg).unwrap_or(false);
    let mut input = None;
    for _ in 0..RESAMPLE_LIMIT {
        let a = random::block_algebra(rng, 3, 6.min(ctx.max_dim));
        let m = random::surjection(rng, &a);
        let top = random::block_projection(rng, m.target());
        let mid = random::block_subprojection(rng, &top);
        let low = random::block_subprojection(rng, &mid);
        if lt(&low, &mid) && lt(&mid, &top) {
            input = Some(InterpolateInput {
                source: a,
                morphism: m.to_json(),
                lower: vec![low, mid],
                upper: vec![top],
            });
            break;
        }
    }
    let input = input.expect("strict chains occur with positive probability");
    trial(&input, || {
        let m = input.morphism()?;
        let out = interpolate_pregap(&m, &input.lower, &input.upper, &ctx.cfg)?;
        let img = m.apply(&out.element)?;
        let top_low = &input.lower[1];
        if out.degenerate {
            let d = img.max_block_distance(top_low)?;
            return Ok(Check::new(d).require(d <= 1e-10, "degenerate pregap returns its lower endpoint"));
        }
        let ok = input.lower.iter().all(|p| lt(p, &img)) && input.upper.iter().all(|q| lt(&img, q));
        Ok(Check::new(0.0).require(ok, "interpolant lies strictly between the families"))
    })
}

pub(super) fn pushforward(rng: &mut InstanceRng, ctx: &Ctx) -> Trial {
    let a = random::block_algebra(rng, 3, 6.min(ctx.max_dim));
    let m = random::surjection(rng, &a);
    let s = random::block_hermitian(rng, &a);
    let t = rng.random_range(-1.5..1.5);
    let (e, _) = element_spectral_family(&s, t, &ctx.cfg).expect("Hermitian blocks");
    let p = random::block_subprojection(rng, &e);
    let input = PushforwardInput {
        morphism: m.to_json(),
        p,
        s,
        t,
    };
    trial(&input, || {
        let m = input.morphism()?;
        let r = pushforward_spectral_bound_check(&m, &input.p, &input.s, input.t, &ctx.cfg)?;
        Ok(Check::new(0.0)
            .require(r.antecedent, "instance satisfies P <= E_S(t)")
            .require(r.holds(), "P <= E_S(t) implies pi(P) <= E_pi(S)(t)"))
    })
}

#[derive(Serialize)]
struct CalkinInstance {
    #[serde(rename = "N")]
    n: usize,
}

pub(super) fn calkin(_: &mut InstanceRng, ctx: &Ctx) -> Trial {
    let input = CalkinInstance { n: 200 };
    trial(&input, || {
        let n = input.n;
        let (p, q) = badpq_family(n)?;
        let diff = essential_norm_estimate(&p.sub(&q)?)?;
        let mut overlap_err = 0.0f64;
        for k in 0..n {
            let pq = p.block(k)? * q.block(k)?;
            overlap_err = overlap_err.max((linalg::op_norm(&pq).powi(2) - badpq_overlap(k)).abs());
        }
        let (p, q) = pomega_family(n)?;
        let spec = essential_spectrum_estimate(&p.mul(&q)?.mul(&p)?, &ctx.cfg)?;
        let has = |v: f64| spec.iter().any(|x| (x - v).abs() <= 1e-9);
        Ok(Check::new(overlap_err)
            .require(diff.estimate <= 2.0 / n as f64, "badpq essential norm of P - Q <= 2/N")
            .require(overlap_err <= 1e-12, "badpq block overlap (n+1)^2/((n+1)^2+1)")
            .require(has(0.5) && has(0.8) && has(0.9), "pomega persistent spectrum contains 1/2, 4/5, 9/10"))
    })
}
