//! Brute-force counting of homomorphisms into small symmetric groups.
//!
//! A candidate assigns one permutation of degree `k` to each generator;
//! the count is the number of assignments satisfying every relator,
//! found by exhausting all `(k!)^g` tuples.  The enumeration order is
//! fixed and the parallel reduction is a plain sum, so the result is
//! schedule-independent.

use super::{GroupError, GroupPresentation};

pub const MAX_DEGREE: usize = 6;

/// A permutation of `{0..k}`, identity-padded to `MAX_DEGREE` slots.
pub(crate) type Perm = [u8; MAX_DEGREE];

pub(crate) const ID: Perm = [0, 1, 2, 3, 4, 5];

/// `(p * q)(i) = p(q(i))`
pub(crate) fn compose(p: &Perm, q: &Perm) -> Perm {
    let mut out = ID;
    for i in 0..MAX_DEGREE {
        out[i] = p[q[i] as usize];
    }
    out
}

pub(crate) fn invert(p: &Perm) -> Perm {
    let mut out = ID;
    for i in 0..MAX_DEGREE {
        out[p[i] as usize] = i as u8;
    }
    out
}

/// All permutations of degree `k` in lexicographic order.
pub(crate) fn all_perms(k: usize) -> Vec<Perm> {
    fn rec(k: usize, prefix: &mut Vec<u8>, used: &mut [bool], out: &mut Vec<Perm>) {
        if prefix.len() == k {
            let mut p = ID;
            for (i, &v) in prefix.iter().enumerate() {
                p[i] = v;
            }
            out.push(p);
            return;
        }
        for v in 0..k {
            if !used[v] {
                used[v] = true;
                prefix.push(v as u8);
                rec(k, prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(k, &mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

struct HomSearch {
    perms: Vec<Perm>,
    inverses: Vec<Perm>,
    relators: Vec<Vec<(usize, i64)>>,
    gens: usize,
}

impl HomSearch {
    fn new(p: &GroupPresentation, k: usize) -> Self {
        let perms = all_perms(k);
        let inverses = perms.iter().map(invert).collect();
        HomSearch {
            perms,
            inverses,
            relators: p.relators().iter().map(|w| w.letters().to_vec()).collect(),
            gens: p.num_generators(),
        }
    }

    fn total(&self) -> u64 {
        (self.perms.len() as u64).pow(self.gens as u32)
    }

    /// Decodes a flat tuple index and checks every relator.
    fn satisfies(&self, index: u64) -> bool {
        let order = self.perms.len() as u64;
        let mut images = [0usize; 16];
        let mut rest = index;
        for slot in images.iter_mut().take(self.gens) {
            *slot = (rest % order) as usize;
            rest /= order;
        }
        self.relators.iter().all(|rel| {
            let mut acc = ID;
            for &(g, e) in rel {
                let p = if e > 0 {
                    &self.perms[images[g]]
                } else {
                    &self.inverses[images[g]]
                };
                for _ in 0..e.unsigned_abs() {
                    acc = compose(&acc, p);
                }
            }
            acc == ID
        })
    }
}

fn validate(p: &GroupPresentation, k: usize) -> Result<(), GroupError> {
    if k > MAX_DEGREE {
        return Err(GroupError::DegreeTooLarge(k));
    }
    if p.num_generators() > 16 {
        return Err(GroupError::TooManyGenerators(p.num_generators()));
    }
    Ok(())
}

/// Sequential homomorphism count.
pub fn count_homs_symmetric_seq(p: &GroupPresentation, k: usize) -> Result<u64, GroupError> {
    validate(p, k)?;
    let search = HomSearch::new(p, k);
    Ok((0..search.total()).filter(|&i| search.satisfies(i)).count() as u64)
}

/// Data-parallel homomorphism count; identical result to the sequential
/// one (the reduction is a sum over a fixed index range).
#[cfg(feature = "parallel")]
pub fn count_homs_symmetric_par(p: &GroupPresentation, k: usize) -> Result<u64, GroupError> {
    use rayon::prelude::*;
    validate(p, k)?;
    let search = HomSearch::new(p, k);
    Ok((0..search.total())
        .into_par_iter()
        .map(|i| u64::from(search.satisfies(i)))
        .sum())
}

/// Exact number of homomorphisms from the presented group to the
/// symmetric group of degree `k <= 6`.
pub fn count_homs_symmetric(p: &GroupPresentation, k: usize) -> Result<u64, GroupError> {
    #[cfg(feature = "parallel")]
    {
        count_homs_symmetric_par(p, k)
    }
    #[cfg(not(feature = "parallel"))]
    {
        count_homs_symmetric_seq(p, k)
    }
}
