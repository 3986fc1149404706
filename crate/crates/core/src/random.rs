//! Seeded random instances.
//!
//! Every generator draws from `ChaCha8Rng` (rand_chacha 0.9) seeded with
//! `seed_from_u64`. Per-instance streams are derived from `(seed, suite,
//! index)` with a SplitMix64 finalizer, so instance `i` of a suite does not
//! depend on how many values earlier instances consumed.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::algebra::{AlgebraElement, BlockAlgebra, BlockMap, Morphism};
use crate::linalg::{self, c, CMatrix, CVector};
use crate::projection::Projection;

pub type InstanceRng = ChaCha8Rng;

pub fn rng(seed: u64) -> InstanceRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// FNV-1a, used to turn suite names into stream identifiers.
fn fnv1a(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01B3)
    })
}

pub fn derive_seed(seed: u64, suite: &str, index: u64) -> u64 {
    splitmix64(splitmix64(seed ^ fnv1a(suite)).wrapping_add(index))
}

pub fn instance_rng(seed: u64, suite: &str, index: u64) -> InstanceRng {
    rng(derive_seed(seed, suite, index))
}

pub fn gaussian(rng: &mut impl Rng) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im)
}

pub fn gaussian_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> CMatrix {
    let mut m = linalg::zeros(rows, cols);
    for j in 0..cols {
        for i in 0..rows {
            m[(i, j)] = gaussian(rng);
        }
    }
    m
}

pub fn unit_vector(rng: &mut impl Rng, n: usize) -> CVector {
    loop {
        let v = gaussian_matrix(rng, n, 1).column(0).into_owned();
        let norm = v.norm();
        if norm > 1e-6 {
            return v / c(norm);
        }
    }
}

/// Haar-distributed unitary: QR of a complex Gaussian with the phases of
/// `diag(R)` moved into `Q`.
pub fn unitary(rng: &mut impl Rng, n: usize) -> CMatrix {
    let qr = gaussian_matrix(rng, n, n).qr();
    let (mut q, r) = qr.unpack();
    for j in 0..n {
        let d = r[(j, j)];
        let norm = d.norm();
        if norm > 0.0 {
            let phase = d / c(norm);
            for i in 0..n {
                q[(i, j)] *= phase;
            }
        }
    }
    q
}

/// Orthonormal `n x k` frame, the first `k` columns of a Haar unitary.
pub fn frame(rng: &mut impl Rng, n: usize, k: usize) -> CMatrix {
    unitary(rng, n).columns(0, k).into_owned()
}

pub fn projection_of_rank(rng: &mut impl Rng, n: usize, rank: usize) -> Projection {
    Projection::from_orthonormal_basis_unchecked(&frame(rng, n, rank))
}

/// Random projection with rank drawn from `1..n`.
pub fn proper_projection(rng: &mut impl Rng, n: usize) -> Projection {
    let rank = if n <= 1 { n } else { rng.random_range(1..n) };
    projection_of_rank(rng, n, rank)
}

/// Projection whose range contains the columns of `common` plus `extra`
/// further random directions.
pub fn projection_containing(rng: &mut impl Rng, common: &CMatrix, extra: usize) -> Projection {
    let n = common.nrows();
    let spread = gaussian_matrix(rng, n, extra);
    let basis = linalg::hstack(n, &[common, &spread]);
    let range = linalg::orthonormal_range(&basis, 1e-8);
    Projection::from_orthonormal_basis_unchecked(&range)
}

/// `k` projections on `C^n` whose ranges share a planted subspace of
/// dimension `common` (possibly zero). Extra ranks keep the sum of
/// codimensions at least `n - common` so the planted subspace is generically
/// the whole meet.
pub fn tuple_with_common(rng: &mut impl Rng, n: usize, k: usize, common: usize) -> Vec<Projection> {
    let planted = frame(rng, n, common);
    (0..k)
        .map(|_| {
            let room = n - common;
            let extra = if room <= 1 { 0 } else { rng.random_range(0..room) };
            projection_containing(rng, &planted, extra)
        })
        .collect()
}

/// Random projection tuple for meet and identity suites: `k` factors in
/// dimension `n`, with a planted common subspace half of the time.
pub fn meet_instance(rng: &mut impl Rng, n: usize, k: usize) -> Vec<Projection> {
    let common = if rng.random_bool(0.5) {
        rng.random_range(0..=n / 2)
    } else {
        0
    };
    tuple_with_common(rng, n, k, common)
}

/// Hermitian matrix with entries of order `scale`.
pub fn hermitian(rng: &mut impl Rng, n: usize, scale: f64) -> CMatrix {
    linalg::hermitian_part(&gaussian_matrix(rng, n, n)) * c(scale / (n as f64).sqrt())
}

/// Projections simultaneously diagonal in one random unitary basis.
pub fn commuting_family(rng: &mut impl Rng, n: usize, k: usize) -> Vec<Projection> {
    let u = unitary(rng, n);
    (0..k)
        .map(|_| {
            let d: Vec<f64> = (0..n).map(|_| if rng.random_bool(0.5) { 1.0 } else { 0.0 }).collect();
            let m = &u * linalg::diag(&d) * u.adjoint();
            Projection::from_matrix(linalg::hermitian_part(&m)).expect("conjugated diagonal projection")
        })
        .collect()
}

/// Random sub-projection of `p` with rank drawn from `0..=rank(p)`.
pub fn subprojection(rng: &mut impl Rng, p: &Projection) -> Projection {
    let k = p.rank();
    let keep = rng.random_range(0..=k);
    if keep == 0 {
        return Projection::zero(p.dim());
    }
    let rot = frame(rng, k, keep);
    Projection::from_orthonormal_basis_unchecked(&(p.range_basis() * rot))
}

pub fn block_algebra(rng: &mut impl Rng, max_blocks: usize, max_dim: usize) -> BlockAlgebra {
    let k = rng.random_range(1..=max_blocks);
    BlockAlgebra::new((0..k).map(|_| rng.random_range(1..=max_dim)).collect()).expect("positive dims")
}

/// Onto morphism keeping a nonempty random subset of blocks, in random
/// order, each conjugated by a Haar unitary.
pub fn surjection(rng: &mut impl Rng, source: &BlockAlgebra) -> Morphism {
    let k = source.num_blocks();
    let mut kept: Vec<usize> = (0..k).filter(|_| rng.random_bool(0.6)).collect();
    if kept.is_empty() {
        kept.push(rng.random_range(0..k));
    }
    for i in (1..kept.len()).rev() {
        kept.swap(i, rng.random_range(0..=i));
    }
    let assignment = kept
        .into_iter()
        .map(|b| BlockMap {
            source_block: b,
            unitary: unitary(rng, source.block_dims()[b]),
        })
        .collect();
    Morphism::new(source.clone(), assignment).expect("Haar unitaries on valid blocks")
}

/// Projection in `algebra` with independent random ranks per block.
pub fn block_projection(rng: &mut impl Rng, algebra: &BlockAlgebra) -> AlgebraElement {
    let ps: Vec<Projection> = algebra
        .block_dims()
        .iter()
        .map(|&d| {
            let r = rng.random_range(0..=d);
            projection_of_rank(rng, d, r)
        })
        .collect();
    AlgebraElement::from_projections(algebra, &ps).expect("dims match")
}

/// Random sub-projection of every block of `p`.
pub fn block_subprojection(rng: &mut impl Rng, p: &AlgebraElement) -> AlgebraElement {
    let ps: Vec<Projection> = p
        .projection_blocks()
        .expect("projection element")
        .iter()
        .map(|b| subprojection(rng, b))
        .collect();
    AlgebraElement::from_projections(p.algebra(), &ps).expect("dims match")
}

pub fn block_hermitian(rng: &mut impl Rng, algebra: &BlockAlgebra) -> AlgebraElement {
    let blocks = algebra.block_dims().iter().map(|&d| hermitian(rng, d, 1.0)).collect();
    AlgebraElement::new(algebra.clone(), blocks).expect("dims match")
}
