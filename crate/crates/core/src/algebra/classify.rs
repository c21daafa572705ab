use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::criterion::is_geodesic_vector;
use super::{inner_unchecked, AlgebraVector};
use crate::combinatorics::{
    max_orthogonal_tuples, Maximality, OrthogonalFamily, SearchOptions, SignTuple,
};
use crate::error::{Error, Result};
use crate::exact::integer_rank;
use crate::params::ModelParams;

/// Largest `n` for which all `2^n` sign rays are listed.
pub const MAX_CLASSIFY_N: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClassifyOptions {
    pub tol: f64,
    /// Random probing runs only when `n <= sample_bound`.
    pub sample_bound: usize,
    pub samples: usize,
    pub seed: u64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        Self {
            tol: super::DEFAULT_TOL,
            sample_bound: 10,
            samples: 1000,
            seed: 0,
        }
    }
}

/// Outcome of random probing around the classified set.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleCertificate {
    pub seed: u64,
    pub samples: usize,
    /// Generic vectors that fail the predicate and lie outside every class.
    pub outside_rejected: usize,
    /// Random members of `W` or of a sign ray that pass the predicate.
    pub inside_accepted: usize,
}

impl SampleCertificate {
    pub fn passed(&self) -> bool {
        self.outside_rejected == self.samples && self.inside_accepted == self.samples
    }
}

/// All geodesic vectors: the subspace `W = span(Z_1..Z_n)` together with the
/// `2^n` rays through `X_0 + s_1 X_1 + ... + s_n X_n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassificationReport {
    pub n: usize,
    pub w_basis: Vec<AlgebraVector>,
    /// Signs `(s_1, ..., s_n)` of each ray generator.
    pub sign_rays: Vec<SignTuple>,
    /// Every generator passed the predicate.
    pub generators_verified: bool,
    pub sample: Option<SampleCertificate>,
}

impl ClassificationReport {
    pub fn w_dim(&self) -> usize {
        self.w_basis.len()
    }

    pub fn ray_generator(signs: &SignTuple) -> AlgebraVector {
        AlgebraVector::type_b(&signs.signs())
    }

    pub fn generators(&self) -> impl Iterator<Item = AlgebraVector> + '_ {
        self.w_basis
            .iter()
            .cloned()
            .chain(self.sign_rays.iter().map(Self::ray_generator))
    }
}

pub fn classify(params: &ModelParams, options: &ClassifyOptions) -> Result<ClassificationReport> {
    let n = params.n();
    if n > MAX_CLASSIFY_N {
        return Err(Error::TooLarge {
            n,
            limit: MAX_CLASSIFY_N,
        });
    }
    let w_basis: Vec<AlgebraVector> = (1..=n).map(|k| AlgebraVector::z_basis(n, k)).collect();
    let sign_rays: Vec<SignTuple> = (0..1u64 << n)
        .map(|mask| SignTuple::from_mask(n, mask))
        .collect();

    let mut generators_verified = true;
    for v in w_basis
        .iter()
        .cloned()
        .chain(sign_rays.iter().map(ClassificationReport::ray_generator))
    {
        generators_verified &= is_geodesic_vector(&v, params, options.tol)?;
    }

    let sample = if n <= options.sample_bound {
        Some(probe(params, options)?)
    } else {
        None
    };

    Ok(ClassificationReport {
        n,
        w_basis,
        sign_rays,
        generators_verified,
        sample,
    })
}

fn probe(params: &ModelParams, options: &ClassifyOptions) -> Result<SampleCertificate> {
    let n = params.n();
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let mut outside_rejected = 0;
    let mut inside_accepted = 0;
    for _ in 0..options.samples {
        let a: Vec<f64> = (0..=n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let b: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let v = AlgebraVector::new(a, b)?;
        if !is_geodesic_vector(&v, params, options.tol)? && membership(&v, 1e-6).is_none() {
            outside_rejected += 1;
        }

        let member = if rng.gen_bool(0.5) {
            let b: Vec<f64> = (0..n).map(|_| rng.gen_range(-3.0..3.0)).collect();
            AlgebraVector::new(vec![0.0; n + 1], b)?
        } else {
            let signs: Vec<i8> = (0..n).map(|_| if rng.gen_bool(0.5) { 1 } else { -1 }).collect();
            let scale = rng.gen_range(0.1..3.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            AlgebraVector::type_b(&signs).scale(scale)
        };
        if is_geodesic_vector(&member, params, options.tol)? && membership(&member, 1e-9).is_some() {
            inside_accepted += 1;
        }
    }
    Ok(SampleCertificate {
        seed: options.seed,
        samples: options.samples,
        outside_rejected,
        inside_accepted,
    })
}

/// Which class of geodesic vectors `v` belongs to.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "class", content = "signs", rename_all = "snake_case")]
pub enum GeodesicClass {
    Zero,
    /// Type A, the subspace `W`.
    Subspace,
    /// Type B, the ray through `X_0 + s_1 X_1 + ... + s_n X_n`.
    Ray(SignTuple),
}

/// Class containing `v`, judged by the Euclidean distance of `v / |v|` from
/// `W` or from the nearest sign ray.
pub fn membership(v: &AlgebraVector, tol: f64) -> Option<GeodesicClass> {
    let norm = v.coordinate_norm();
    if norm == 0.0 {
        return Some(GeodesicClass::Zero);
    }
    let a: Vec<f64> = v.a().iter().map(|x| x / norm).collect();
    let b: Vec<f64> = v.b().iter().map(|x| x / norm).collect();

    let dist_w = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    if dist_w < tol {
        return Some(GeodesicClass::Subspace);
    }

    let lead = if a[0] < 0.0 { -1.0 } else { 1.0 };
    let signs: Vec<f64> = a[1..]
        .iter()
        .map(|x| if x * lead < 0.0 { -1.0 } else { 1.0 })
        .collect();
    let scale = 1.0 / ((a.len()) as f64).sqrt();
    let ray: Vec<f64> = std::iter::once(1.0)
        .chain(signs.iter().copied())
        .map(|s| s * scale)
        .collect();
    let proj: f64 = a.iter().zip(&ray).map(|(x, r)| x * r).sum();
    let dist_ray = a
        .iter()
        .zip(&ray)
        .map(|(x, r)| (x - proj * r).powi(2))
        .chain(b.iter().map(|z| z * z))
        .sum::<f64>()
        .sqrt();
    if dist_ray < tol {
        let tuple = SignTuple::from_signs(signs.iter().map(|&s| s as i64)).expect("signs");
        return Some(GeodesicClass::Ray(tuple));
    }
    None
}

/// Case split on `k = n + 1` that governs the largest orthogonal set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ParityCase {
    Odd,
    TwiceOdd,
    DivisibleByFour,
}

impl ParityCase {
    pub fn of(k: usize) -> Self {
        match k % 4 {
            0 => ParityCase::DivisibleByFour,
            2 => ParityCase::TwiceOdd,
            _ => ParityCase::Odd,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            ParityCase::Odd => "odd",
            ParityCase::TwiceOdd => "even, not divisible by 4",
            ParityCase::DivisibleByFour => "divisible by 4",
        }
    }

    /// Expected size of a maximal orthogonal set of geodesic vectors for
    /// parameter `n`; in the divisible-by-4 case this assumes a Hadamard
    /// matrix of order `n + 1` exists.
    pub fn expected_max(&self, n: usize) -> usize {
        match self {
            ParityCase::Odd => n + 1,
            ParityCase::TwiceOdd => n + 2,
            ParityCase::DivisibleByFour => 2 * n + 1,
        }
    }
}

/// Mutually orthogonal geodesic vectors: an orthogonal basis of `W` plus the
/// type-B vectors of a maximum orthogonal sign family.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrthogonalGeodesicSet {
    pub n: usize,
    pub case: ParityCase,
    pub w_vectors: Vec<AlgebraVector>,
    pub type_b: Vec<AlgebraVector>,
    pub family: OrthogonalFamily,
    pub search_nodes: u64,
    pub search_vertices: usize,
}

impl OrthogonalGeodesicSet {
    pub fn total(&self) -> usize {
        self.w_vectors.len() + self.type_b.len()
    }

    pub fn vectors(&self) -> Vec<AlgebraVector> {
        self.w_vectors.iter().chain(&self.type_b).cloned().collect()
    }

    pub fn maximality(&self) -> Maximality {
        self.family.maximality()
    }
}

/// Gram-Schmidt on `Z_1, Z_2, ...` in that order, against `lambda^2 (I + J)`.
fn orthogonal_w_basis(params: &ModelParams) -> Vec<AlgebraVector> {
    let n = params.n();
    let lambda = params.lambda();
    let mut out: Vec<AlgebraVector> = Vec::with_capacity(n);
    for k in 1..=n {
        let z = AlgebraVector::z_basis(n, k);
        let mut e = z.clone();
        for prev in &out {
            let c = inner_unchecked(&z, prev, lambda) / inner_unchecked(prev, prev, lambda);
            e = e.add(&prev.scale(-c));
        }
        out.push(e);
    }
    out
}

pub fn max_orthogonal_geodesic_set(
    params: &ModelParams,
    options: &SearchOptions,
) -> Result<OrthogonalGeodesicSet> {
    let k = params.tuple_len();
    let outcome = max_orthogonal_tuples(k, options)?;
    let type_b = outcome
        .family
        .members()
        .iter()
        .map(|t| {
            let s = t.signs();
            debug_assert_eq!(s[0], 1);
            AlgebraVector::type_b(&s[1..])
        })
        .collect();
    Ok(OrthogonalGeodesicSet {
        n: params.n(),
        case: ParityCase::of(k),
        w_vectors: orthogonal_w_basis(params),
        type_b,
        family: outcome.family,
        search_nodes: outcome.nodes,
        search_vertices: outcome.vertices,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IndependentFamily {
    pub vectors: Vec<AlgebraVector>,
    pub rank: usize,
}

/// `Z_1..Z_n` together with the type-B vectors for the all-plus signs and the
/// `n` single sign flips; the coefficient matrix has full rank `2n + 1`.
pub fn independent_geodesic_family(params: &ModelParams) -> IndependentFamily {
    let n = params.n();
    let mut vectors: Vec<AlgebraVector> = (1..=n).map(|k| AlgebraVector::z_basis(n, k)).collect();
    vectors.push(AlgebraVector::type_b(&vec![1; n]));
    for j in 0..n {
        let mut s = vec![1i8; n];
        s[j] = -1;
        vectors.push(AlgebraVector::type_b(&s));
    }
    let rank = coefficient_rank(&vectors);
    IndependentFamily { vectors, rank }
}

/// Exact rank of the coefficient matrix of integral vectors.
pub(crate) fn coefficient_rank(vectors: &[AlgebraVector]) -> usize {
    let rows: Vec<Vec<i64>> = vectors
        .iter()
        .map(|v| {
            v.components()
                .iter()
                .map(|&x| {
                    assert!(x.fract() == 0.0, "coefficient_rank needs integral vectors");
                    x as i64
                })
                .collect()
        })
        .collect();
    integer_rank(&rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::inner;

    #[test]
    fn classify_n1() {
        let p = ModelParams::with_n(1).unwrap();
        let r = classify(&p, &ClassifyOptions::default()).unwrap();
        assert_eq!(r.w_basis, vec![AlgebraVector::z_basis(1, 1)]);
        let gens: Vec<_> = r.sign_rays.iter().map(ClassificationReport::ray_generator).collect();
        assert_eq!(gens[0].a(), &[1.0, 1.0]);
        assert_eq!(gens[1].a(), &[1.0, -1.0]);
        assert!(r.generators_verified);
        assert!(r.sample.unwrap().passed());
    }

    #[test]
    fn classify_counts() {
        let p = ModelParams::with_n(3).unwrap();
        let r = classify(&p, &ClassifyOptions::default()).unwrap();
        assert_eq!(r.sign_rays.len(), 8);
        assert_eq!(r.w_dim(), 3);
        assert!(classify(&ModelParams::with_n(25).unwrap(), &ClassifyOptions::default()).is_err());
    }

    #[test]
    fn probe_outside_classes() {
        let p = ModelParams::with_n(2).unwrap();
        let v = AlgebraVector::new(vec![1.0, 2.0, 1.0], vec![0.0, 0.0]).unwrap();
        assert!(membership(&v, 1e-9).is_none());
        assert!(!is_geodesic_vector(&v, &p, 1e-9).unwrap());
    }

    #[test]
    fn membership_classes() {
        let w = AlgebraVector::new(vec![0.0; 3], vec![2.0, -1.0]).unwrap();
        assert_eq!(membership(&w, 1e-9), Some(GeodesicClass::Subspace));
        let r = AlgebraVector::new(vec![-2.0, 2.0, -2.0], vec![0.0, 0.0]).unwrap();
        let sig = SignTuple::from_signs([-1i64, 1]).unwrap();
        assert_eq!(membership(&r, 1e-9), Some(GeodesicClass::Ray(sig)));
        assert_eq!(membership(&AlgebraVector::zero(2), 1e-9), Some(GeodesicClass::Zero));
    }

    #[test]
    fn orthogonal_sets_by_case() {
        for (n, total) in [(1, 3), (2, 3), (3, 7), (4, 5), (5, 7), (7, 15)] {
            let p = ModelParams::new(n, 1.3).unwrap();
            let set = max_orthogonal_geodesic_set(&p, &SearchOptions::default()).unwrap();
            assert_eq!(set.total(), total, "n = {n}");
            assert_eq!(set.total(), set.case.expected_max(n));
            assert_eq!(set.maximality(), Maximality::Certified);
            let vs = set.vectors();
            for (i, u) in vs.iter().enumerate() {
                assert!(is_geodesic_vector(u, &p, 1e-9).unwrap());
                for v in &vs[i + 1..] {
                    assert!(inner(u, v, &p).unwrap().abs() <= 1e-12);
                }
            }
        }
    }

    #[test]
    fn independent_family_rank() {
        let p = ModelParams::with_n(1).unwrap();
        let fam = independent_geodesic_family(&p);
        assert_eq!(fam.vectors.len(), 3);
        assert_eq!(fam.rank, 3);
        assert_eq!(fam.vectors[1].a(), &[1.0, 1.0]);
        assert_eq!(fam.vectors[2].a(), &[1.0, -1.0]);
        let p = ModelParams::with_n(4).unwrap();
        let fam = independent_geodesic_family(&p);
        assert_eq!(fam.rank, 9);
        assert_eq!(coefficient_rank(&fam.vectors[1..]), 8);
    }
}
