use super::*;
use crate::linalg::{self, c, real_matrix, CMatrix};
use crate::projection::{self, Projection};
use crate::tolerance::ToleranceConfig;
use proptest::prelude::*;

fn cfg() -> ToleranceConfig {
    ToleranceConfig::default()
}

fn theta_pair(theta: f64) -> (Projection, Projection) {
    let p = Projection::from_matrix(linalg::diag(&[1.0, 0.0])).unwrap();
    let q = projection::line(&[theta.cos(), theta.sin()]).unwrap();
    (p, q)
}

fn pqp(p: &Projection, q: &Projection) -> HermitianOperator {
    HermitianOperator::from_symmetrized(&(p.matrix() * q.matrix() * p.matrix()))
}

fn near(a: &CMatrix, b: &CMatrix, tol: f64) -> bool {
    (a - b).norm() <= tol
}

fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
}

#[test]
fn decompose_diagonal() {
    let d = decompose(&HermitianOperator::diagonal(&[0.7, 0.2]), &cfg()).unwrap();
    assert!(close(d.eigenvalues(), &[0.2, 0.7], 1e-14));
    assert!(near(d.projectors()[0].matrix(), &linalg::diag(&[0.0, 1.0]), 1e-14));
    assert!(near(d.projectors()[1].matrix(), &linalg::diag(&[1.0, 0.0]), 1e-14));
}

#[test]
fn decompose_identity_is_one_cluster() {
    let d = decompose(&HermitianOperator::diagonal(&[1.0; 3]), &cfg()).unwrap();
    assert_eq!(d.eigenvalues().len(), 1);
    assert!((d.eigenvalues()[0] - 1.0).abs() < 1e-15);
    assert!(d.projectors()[0].is_identity());
}

#[test]
fn pqp_at_quarter_turn_has_spectrum_zero_half() {
    let (p, q) = theta_pair(std::f64::consts::FRAC_PI_4);
    let s = spectrum(&pqp(&p, &q), &cfg()).unwrap();
    assert!(close(&s, &[0.0, 0.5], 1e-12), "{s:?}");
}

#[test]
fn family_examples() {
    let s = HermitianOperator::diagonal(&[0.2, 0.7]);
    let e = spectral_family_at(&s, 0.5, FamilySide::Closed, &cfg()).unwrap();
    assert!(near(e.matrix(), &linalg::diag(&[1.0, 0.0]), 1e-14));
    let full = spectral_family_at(&s, 0.7, FamilySide::Closed, &cfg()).unwrap();
    assert!(full.is_identity());

    // E(1-) of PQP is the complement of P ∧ Q, which is zero here
    let (p, q) = theta_pair(std::f64::consts::FRAC_PI_4);
    let open = spectral_family_at(&pqp(&p, &q), 1.0, FamilySide::OpenBelow, &cfg()).unwrap();
    assert!(open.is_identity());
}

#[test]
fn boundary_band_semantics() {
    let s = HermitianOperator::diagonal(&[0.5 + 5e-10, 0.9]);
    let d = decompose(&s, &cfg()).unwrap();
    assert_eq!(d.lower(0.5).rank(), 1);
    assert_eq!(d.lower_open(0.5).rank(), 0);
    assert_eq!(d.upper(0.5).rank(), 1);
    assert_eq!(d.upper_open(0.5).rank(), 2);
}

#[test]
fn spectrum_examples() {
    let s = spectrum(&HermitianOperator::diagonal(&[1.0, 1.0, 0.0]), &cfg()).unwrap();
    assert_eq!(s, vec![0.0, 1.0]);
    let z = spectrum(&HermitianOperator::diagonal(&[0.0; 4]), &cfg()).unwrap();
    assert_eq!(z, vec![0.0]);
}

#[test]
fn nonsym_examples() {
    let (p, q) = theta_pair(std::f64::consts::FRAC_PI_4);
    let e = nonsym_spectrum(&(p.matrix() * q.matrix())).unwrap();
    assert!(e[0].norm() < 1e-12 && (e[1] - c(0.5)).norm() < 1e-12, "{e:?}");

    let nil = nonsym_spectrum(&real_matrix(2, &[0.0, 1.0, 0.0, 0.0])).unwrap();
    assert!(nil.iter().all(|z| z.norm() < 1e-12));
    let id = nonsym_spectrum(&linalg::identity(2)).unwrap();
    assert!(id.iter().all(|z| (z - c(1.0)).norm() < 1e-12));

    let bad = real_matrix(2, &[f64::INFINITY, 0.0, 0.0, 0.0]);
    assert!(nonsym_spectrum(&bad).is_err());
}

#[test]
fn functional_calculus_examples() {
    let s = HermitianOperator::diagonal(&[0.3, -0.4, 0.9]);
    let id = PiecewiseLinearFunction::clamp(-10.0, 10.0).unwrap();
    let out = apply_function(&s, &id, &cfg()).unwrap();
    assert!((out.matrix() - s.matrix()).norm() < 1e-10);

    let one = PiecewiseLinearFunction::constant(1.0).unwrap();
    let out = apply_function(&s, &one, &cfg()).unwrap();
    assert!((out.matrix() - linalg::identity(3)).norm() < 1e-12);
}

#[test]
fn gap_function_on_pqp() {
    // r = 1/2, so f is -1 up to 1/4 and rises to 1/8 at 3/8
    let (p, q) = theta_pair(std::f64::consts::FRAC_PI_4);
    let f = PiecewiseLinearFunction::new(vec![0.25, 0.375], vec![-1.0, 0.125]).unwrap();
    let out = apply_function(&pqp(&p, &q), &f, &cfg()).unwrap();
    assert!((out.matrix() - linalg::diag(&[0.125, -1.0])).norm() < 1e-12);
}

#[test]
fn operator_norm_examples() {
    assert!((operator_norm(&linalg::diag(&[3.0, -5.0])) - 5.0).abs() < 1e-12);
    let p = projection::line(&[1.0, -2.0, 0.5]).unwrap();
    assert!((operator_norm(p.matrix()) - 1.0).abs() < 1e-12);
    let (p, q) = theta_pair(std::f64::consts::FRAC_PI_4);
    let n = operator_norm(&(p.matrix() * q.matrix()));
    assert!((n - 0.5f64.sqrt()).abs() < 1e-12);
}

#[test]
fn window_projection_examples() {
    let s = HermitianOperator::diagonal(&[0.9, 0.3]);
    let w = spectral_window_projection(&s, 0.8, 0.5, &cfg()).unwrap();
    assert!(near(w.matrix(), &linalg::diag(&[1.0, 0.0]), 1e-14));

    // empty window: both ends coincide
    let d = decompose(&s, &cfg()).unwrap();
    let w = spectral_window_projection(&s, 0.6, 0.4, &cfg()).unwrap();
    assert!(w.distance(&d.upper(0.6)) == 0.0);

    let (p, q) = theta_pair(std::f64::consts::FRAC_PI_4);
    let w = spectral_window_projection(&pqp(&p, &q), 0.4, 0.25, &cfg()).unwrap();
    assert!(near(w.matrix(), &linalg::diag(&[1.0, 0.0]), 1e-12));

    assert!(spectral_window_projection(&s, 0.5, 0.5, &cfg()).is_err());
    assert!(spectral_window_projection(&s, 0.5, 0.0, &cfg()).is_err());
}

fn hermitian_strategy() -> impl Strategy<Value = CMatrix> {
    (2usize..=16).prop_flat_map(|n| {
        proptest::collection::vec(-1.0f64..1.0, 2 * n * n).prop_map(move |v| {
            let m = CMatrix::from_fn(n, n, |i, j| {
                num_complex::Complex64::new(v[i * n + j], v[n * n + i * n + j])
            });
            linalg::hermitian_part(&m)
        })
    })
}

/// Matrices with repeated eigenvalues, to exercise clustering.
fn degenerate_strategy() -> impl Strategy<Value = CMatrix> {
    (2usize..=8).prop_flat_map(|n| {
        (
            proptest::collection::vec(0usize..3, n),
            proptest::collection::vec(-1.0f64..1.0, n * n),
        )
            .prop_map(move |(levels, v)| {
                let g = CMatrix::from_fn(n, n, |i, j| c(v[i * n + j]));
                let q = g.qr().q();
                let d = linalg::diag(&levels.iter().map(|&l| l as f64 * 0.5).collect::<Vec<_>>());
                linalg::hermitian_part(&(&q * d * q.adjoint()))
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn decomposition_invariants(m in hermitian_strategy()) {
        let s = HermitianOperator::new(m, &cfg()).unwrap();
        let d = decompose(&s, &cfg()).unwrap();
        let n = s.dim();
        let mut sum = linalg::zeros(n, n);
        for (i, pi) in d.projectors().iter().enumerate() {
            sum += pi.matrix();
            for pj in &d.projectors()[i + 1..] {
                prop_assert!((pi.matrix() * pj.matrix()).norm() < 1e-8);
            }
        }
        prop_assert!((sum - linalg::identity(n)).norm() < 1e-8);
        let recon = (d.reconstruct() - s.matrix()).norm();
        prop_assert!(recon <= 1e-8 * (1.0 + s.matrix().norm()));
        for w in d.eigenvalues().windows(2) {
            prop_assert!(w[1] - w[0] > cfg().eig_cluster);
        }
    }

    #[test]
    fn degenerate_invariants(m in degenerate_strategy()) {
        let s = HermitianOperator::new(m, &cfg()).unwrap();
        let d = decompose(&s, &cfg()).unwrap();
        prop_assert!(d.eigenvalues().len() <= 3);
        let recon = (d.reconstruct() - s.matrix()).norm();
        prop_assert!(recon <= 1e-8 * (1.0 + s.matrix().norm()));
        let again = decompose(&s, &cfg()).unwrap();
        for (a, b) in d.projectors().iter().zip(again.projectors()) {
            prop_assert_eq!(a.range_basis(), b.range_basis());
        }
    }

    #[test]
    fn family_laws(m in hermitian_strategy(), t1 in -1.5f64..1.5, dt in 0.0f64..1.0) {
        let s = HermitianOperator::new(m, &cfg()).unwrap();
        let d = decompose(&s, &cfg()).unwrap();
        let t2 = t1 + dt + 3.0 * cfg().eig_cluster;
        let (e1, e2) = (d.lower(t1), d.lower(t2));
        prop_assert!((e1.matrix() - e2.matrix() * e1.matrix()).norm() <= 1e-8);
        let open = d.lower_open(t1);
        prop_assert!((open.matrix() - e1.matrix() * open.matrix()).norm() <= 1e-8);
        let comm = e1.matrix() * s.matrix() - s.matrix() * e1.matrix();
        prop_assert!(comm.norm() <= 1e-8);
        prop_assert!((d.upper(t1).matrix() + e1.matrix() - linalg::identity(s.dim())).norm() < 1e-8);
    }

    #[test]
    fn family_quadratic_form_bounds(m in hermitian_strategy(), t in -1.5f64..1.5) {
        let s = HermitianOperator::new(m, &cfg()).unwrap();
        let d = decompose(&s, &cfg()).unwrap();
        let below = d.lower(t);
        for k in 0..below.rank() {
            let v = below.range_basis().column(k).into_owned();
            prop_assert!(linalg::quadratic_form(s.matrix(), &v) <= t + 1e-8);
        }
        let above = d.upper(t);
        for k in 0..above.rank() {
            let v = above.range_basis().column(k).into_owned();
            prop_assert!(linalg::quadratic_form(s.matrix(), &v) > t - 1e-8);
        }
    }

    #[test]
    fn norm_matches_spectrum(m in hermitian_strategy()) {
        let s = HermitianOperator::new(m, &cfg()).unwrap();
        let spec = spectrum(&s, &cfg()).unwrap();
        let max_abs = spec.iter().fold(0.0f64, |a, x| a.max(x.abs()));
        prop_assert!((operator_norm(s.matrix()) - max_abs).abs() <= 1e-9);
    }

    #[test]
    fn function_maps_spectrum(m in hermitian_strategy(), a in -1.0f64..0.0, b in 0.0f64..1.0) {
        let s = HermitianOperator::new(m, &cfg()).unwrap();
        let f = PiecewiseLinearFunction::new(vec![a, b + 1e-3], vec![b, a]).unwrap();
        let fs = apply_function(&s, &f, &cfg()).unwrap();
        let comm = fs.matrix() * s.matrix() - s.matrix() * fs.matrix();
        prop_assert!(comm.norm() <= 1e-8);
        let mut mapped: Vec<f64> = decompose(&s, &cfg()).unwrap().raw_eigenvalues()
            .iter().map(|&x| f.eval(x)).collect();
        mapped.sort_by(f64::total_cmp);
        let got = decompose(&fs, &cfg()).unwrap();
        prop_assert!(close(got.raw_eigenvalues(), &mapped, 1e-8));
    }
}
