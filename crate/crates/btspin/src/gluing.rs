//! Exact 2x2 integer matrix algebra for torus gluing maps.
//!
//! Boundary tori carry two cycle bases: `(c_theta1, c_theta2)` on the
//! solid-torus side and `(c_theta, c_h)` on the free-part side.  Cycles
//! are row vectors acting on matrices from the right; a matrix column
//! holds the `(c_theta, c_h)`-coordinates of the image of one source
//! cycle, and composite maps multiply in reading order.
//!
//! For a coprime pair `(m, n)` with `m != 0` the gluing matrix of the
//! branch of order `m` is `[[em, -en], [beta, alpha]]`, where `e` is the
//! sign of `m` and `m*alpha + n*beta = e`.  The Bezout pair is pinned to
//! the canonical representative `0 <= beta < |m|`, which makes every
//! matrix here deterministic; all identities are invariant under the
//! residual choice `(alpha, beta) -> (alpha + nk, beta - mk)`.

use std::fmt;

use thiserror::Error;

use crate::orbitdata::{self, eps};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GluingError {
    #[error("({m}, {n}) is not a coprime pair with positive branch index")]
    NotCoprime { m: i64, n: i64 },
    #[error("matrix has determinant {0}, expected +-1")]
    NotUnimodular(i64),
    #[error("twist index 0 has no gluing matrix")]
    SpunKnotIndex,
}

/// A 2x2 integer matrix, row-major `[[a, b], [c, d]]`.
///
/// Rows index the target basis `(c_theta, c_h)` (or `(c_theta1,
/// c_theta2)` for self-maps of a torus); columns index the source cycles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat2 {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2::new(1, 0, 0, 1);

    pub const fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn det(&self) -> i64 {
        self.a * self.d - self.b * self.c
    }

    /// Inverse of a unimodular matrix.
    pub fn inverse(&self) -> Result<Mat2, GluingError> {
        match self.det() {
            1 => Ok(Mat2::new(self.d, -self.b, -self.c, self.a)),
            -1 => Ok(Mat2::new(-self.d, self.b, self.c, -self.a)),
            d => Err(GluingError::NotUnimodular(d)),
        }
    }

    /// Global sign normalization: identity when the top-left entry is
    /// positive, otherwise negation of the whole matrix.  This mirrors the
    /// simultaneous orientation flip of both torus circles; a single row
    /// is never negated alone.
    pub fn normalize_sign(&self) -> Mat2 {
        if self.a > 0 {
            *self
        } else {
            -*self
        }
    }

    /// Column `j` as `(top, bottom)`.
    pub fn column(&self, j: usize) -> (i64, i64) {
        match j {
            0 => (self.a, self.c),
            1 => (self.b, self.d),
            _ => panic!("column index out of range"),
        }
    }
}

impl std::ops::Mul for Mat2 {
    type Output = Mat2;

    fn mul(self, rhs: Mat2) -> Mat2 {
        Mat2::new(
            self.a * rhs.a + self.b * rhs.c,
            self.a * rhs.b + self.b * rhs.d,
            self.c * rhs.a + self.d * rhs.c,
            self.c * rhs.b + self.d * rhs.d,
        )
    }
}

impl std::ops::Neg for Mat2 {
    type Output = Mat2;

    fn neg(self) -> Mat2 {
        Mat2::new(-self.a, -self.b, -self.c, -self.d)
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

pub fn mat_mul(lhs: Mat2, rhs: Mat2) -> Mat2 {
    lhs * rhs
}

pub fn mat_inv(m: Mat2) -> Result<Mat2, GluingError> {
    m.inverse()
}

pub fn mat_neg(m: Mat2) -> Mat2 {
    -m
}

pub fn normalize_sign(m: Mat2) -> Mat2 {
    m.normalize_sign()
}

/// The canonical Bezout data of a coprime pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BezoutPair {
    pub alpha: i64,
    pub beta: i64,
    pub m: i64,
    pub n: i64,
    pub eps: i64,
}

fn check_pair(m: i64, n: i64) -> Result<(), GluingError> {
    if m == 0 {
        return Err(GluingError::SpunKnotIndex);
    }
    if n <= 0 || orbitdata::gcd(m, n) != 1 {
        return Err(GluingError::NotCoprime { m, n });
    }
    Ok(())
}

/// The unique `(alpha, beta)` with `m*alpha + n*beta = e` and
/// `0 <= beta < |m|`, where `e` is the sign of `m`.
pub fn canonical_bezout(m: i64, n: i64) -> Result<BezoutPair, GluingError> {
    check_pair(m, n)?;
    let e = eps(m);
    let am = m.abs();
    // beta = e * n^{-1} mod |m|, via extended Euclid on (n mod |m|, |m|).
    let (mut r0, mut r1) = (n.rem_euclid(am), am);
    let (mut s0, mut s1) = (1i64, 0i64);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    debug_assert_eq!(r0, 1);
    let beta = (e * s0).rem_euclid(am);
    let alpha = (e - n * beta) / m;
    debug_assert_eq!(m * alpha + n * beta, e);
    Ok(BezoutPair {
        alpha,
        beta,
        m,
        n,
        eps: e,
    })
}

/// The gluing matrix `[[em, -en], [beta, alpha]]` of the order-`m`
/// branch; determinant `+1`.
pub fn g_matrix(m: i64, n: i64) -> Result<Mat2, GluingError> {
    let bz = canonical_bezout(m, n)?;
    Ok(Mat2::new(bz.eps * m, -bz.eps * n, bz.beta, bz.alpha))
}

/// The fixed twist matrix of the Gluck map on `(c_theta1, c_theta2)`.
pub const GLUCK: Mat2 = Mat2::new(1, -1, 0, 1);
/// Basis exchange used to move the filled disk back to the first slot.
pub const U: Mat2 = Mat2::new(0, 1, -1, 1);
/// Basis exchange inverse to the cap identification.
pub const V: Mat2 = Mat2::new(0, -1, 1, 1);
/// Exchange of the two disk factors of a 4-ball.
pub const W: Mat2 = Mat2::new(0, 1, -1, 0);

/// The full set of matrices appearing in the rearrangement of the
/// Gluck-twisted decomposition, for one index pair.
///
/// `lambda` and `lambda_prime` glue the twisted-in pieces; `g_tilde`,
/// `mu` and `mu_prime` are the rearranged maps.  All products are formed
/// in reading order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProofKit {
    pub m: i64,
    pub n: i64,
    pub bezout: BezoutPair,
    pub g: Mat2,
    pub gluck: Mat2,
    pub u: Mat2,
    pub v: Mat2,
    pub w: Mat2,
    pub lambda: Mat2,
    pub lambda_prime: Mat2,
    pub g_tilde: Mat2,
    pub mu: Mat2,
    pub mu_prime: Mat2,
}

impl ProofKit {
    /// Builds the kit with the canonical Bezout choice.
    pub fn new(m: i64, n: i64) -> Result<Self, GluingError> {
        let bz = canonical_bezout(m, n)?;
        Ok(ProofKit::with_bezout(bz))
    }

    /// Builds the kit from an explicit Bezout pair (used to check that
    /// every identity is invariant under the representative choice).
    pub fn with_bezout(bz: BezoutPair) -> Self {
        let g = Mat2::new(bz.eps * bz.m, -bz.eps * bz.n, bz.beta, bz.alpha);
        let lambda = GLUCK;
        let lambda_prime = g * GLUCK;
        let g_tilde = lambda_prime * U;
        let mu = U.inverse().expect("det(U) = 1") * W;
        let mu_prime = g * V.inverse().expect("det(V) = 1");
        ProofKit {
            m: bz.m,
            n: bz.n,
            bezout: bz,
            g,
            gluck: GLUCK,
            u: U,
            v: V,
            w: W,
            lambda,
            lambda_prime,
            g_tilde,
            mu,
            mu_prime,
        }
    }

    /// Checks the closed-form targets of every rearranged map.
    pub fn identities(&self) -> IdentityReport {
        let (m, n) = (self.m, self.n);
        let (a, b) = (self.bezout.alpha, self.bezout.beta);
        let e = self.bezout.eps;
        let shear = Mat2::new(1, 1, 0, 1);
        IdentityReport {
            det_g: self.g.det() == 1,
            g_tilde: self.g_tilde == Mat2::new(e * (m + n), -e * n, b - a, a),
            mu: self.mu == shear,
            mu_prime: self.mu_prime == Mat2::new(e * (m + n), e * m, b - a, b),
            mu_prime_factors: self.g_tilde.normalize_sign() * shear
                == self.mu_prime.normalize_sign(),
            v_lambda_w: self.v * self.lambda * self.w == Mat2::IDENTITY,
        }
    }
}

/// Pass/fail record for the rearrangement identities of one pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IdentityReport {
    pub det_g: bool,
    pub g_tilde: bool,
    pub mu: bool,
    pub mu_prime: bool,
    pub mu_prime_factors: bool,
    pub v_lambda_w: bool,
}

impl IdentityReport {
    pub fn all_hold(&self) -> bool {
        self.det_g
            && self.g_tilde
            && self.mu
            && self.mu_prime
            && self.mu_prime_factors
            && self.v_lambda_w
    }

    pub const NAMES: [&'static str; 6] = [
        "det(g) = 1",
        "g~ closed form",
        "mu closed form",
        "mu' closed form",
        "mu' factorization",
        "v*lambda*w = id",
    ];

    pub fn as_array(&self) -> [bool; 6] {
        [
            self.det_g,
            self.g_tilde,
            self.mu,
            self.mu_prime,
            self.mu_prime_factors,
            self.v_lambda_w,
        ]
    }
}

/// Result of sweeping the identities over all coprime pairs up to a bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentitySweep {
    pub pairs: u64,
    /// Pairs for which at least one identity failed, sorted.
    pub failures: Vec<(i64, i64)>,
    /// Per-identity pass status over the whole sweep.
    pub per_identity: [bool; 6],
}

impl IdentitySweep {
    pub fn all_hold(&self) -> bool {
        self.failures.is_empty()
    }
}

fn check_identity_pair(idx: (i64, i64)) -> ((i64, i64), [bool; 6]) {
    let kit = ProofKit::new(idx.0, idx.1).expect("sweep only visits valid pairs");
    (idx, kit.identities().as_array())
}

fn merge_identity(items: impl Iterator<Item = ((i64, i64), [bool; 6])>) -> IdentitySweep {
    let mut sweep = IdentitySweep {
        pairs: 0,
        failures: Vec::new(),
        per_identity: [true; 6],
    };
    for (idx, flags) in items {
        sweep.pairs += 1;
        for (slot, ok) in sweep.per_identity.iter_mut().zip(flags) {
            *slot &= ok;
        }
        if flags.iter().any(|ok| !ok) {
            sweep.failures.push(idx);
        }
    }
    sweep.failures.sort_unstable();
    sweep
}

fn sweep_domain(max: i64) -> Vec<(i64, i64)> {
    crate::orbitdata::coprime_pairs(max)
        .into_iter()
        .map(|idx| (idx.m(), idx.n()))
        .collect()
}

/// Sequential identity sweep.
pub fn identity_sweep_seq(max: i64) -> IdentitySweep {
    merge_identity(sweep_domain(max).into_iter().map(check_identity_pair))
}

/// Data-parallel identity sweep; identical result to the sequential one.
#[cfg(feature = "parallel")]
pub fn identity_sweep_par(max: i64) -> IdentitySweep {
    use rayon::prelude::*;
    let results: Vec<_> = sweep_domain(max)
        .into_par_iter()
        .map(check_identity_pair)
        .collect();
    merge_identity(results.into_iter())
}

/// Sweeps the rearrangement identities over all coprime pairs with
/// `1 <= |m|, n <= max`.
pub fn identity_sweep(max: i64) -> IdentitySweep {
    #[cfg(feature = "parallel")]
    {
        identity_sweep_par(max)
    }
    #[cfg(not(feature = "parallel"))]
    {
        identity_sweep_seq(max)
    }
}

/// Rotation speeds `(w1, w2)` of the circle action on the two boundary
/// circles of a branch neighborhood.  The order-`m` branch of a pair
/// `(m,n)` carries the weights `(-en, em)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WeightVector {
    pub w1: i64,
    pub w2: i64,
}

impl WeightVector {
    pub fn new(w1: i64, w2: i64) -> Self {
        WeightVector { w1, w2 }
    }

    /// Pre-twist weights of the order-`m` branch of `(m, n)`.
    pub fn orbit_weights(m: i64, n: i64) -> Self {
        let e = eps(m);
        WeightVector::new(-e * n, e * m)
    }

    /// Global sign flip making the second speed positive (first speed
    /// nonnegative when the second vanishes).
    pub fn normalize(&self) -> Self {
        if self.w2 > 0 || (self.w2 == 0 && self.w1 >= 0) {
            *self
        } else {
            WeightVector::new(-self.w1, -self.w2)
        }
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.w1, self.w2)
    }
}

/// Transports weights through the Gluck twist substitution
/// `theta2 -> theta2 - theta1`: speeds map by `(w1, w2) -> (w1, w2 - w1)`.
pub fn transport_weights(wv: WeightVector) -> WeightVector {
    WeightVector::new(wv.w1, wv.w2 - wv.w1)
}

/// Inverse substitution; composing with [`transport_weights`] is the
/// identity.
pub fn untransport_weights(wv: WeightVector) -> WeightVector {
    WeightVector::new(wv.w1, wv.w2 + wv.w1)
}
