//! Cross-module property tests.

use proptest::prelude::*;

use btspin::fpgroup::{free_reduce, smith_normal_form, GroupPresentation, IntMat, Word};
use btspin::gluing::{canonical_bezout, Mat2};
use btspin::knotfile::parse_knot_file;
use btspin::orbitdata::{eps, reduce_to_base, BTSIndex, Site, TwinState};

mod strategies {
    use super::*;

    fn gcd(a: i64, b: i64) -> i64 {
        let (mut a, mut b) = (a.abs(), b.abs());
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    }

    /// Coprime pairs with nonzero twist index.
    pub fn coprime_pair() -> impl Strategy<Value = (i64, i64)> {
        ((-200i64..=200), (1i64..=200))
            .prop_filter("coprime with nonzero twist index", |&(m, n)| {
                m != 0 && gcd(m, n) == 1
            })
    }

    pub fn letters() -> impl Strategy<Value = Vec<(usize, i64)>> {
        prop::collection::vec((0usize..5, -3i64..=3), 0..40)
    }

    pub fn site_sequence() -> impl Strategy<Value = Vec<Site>> {
        prop::collection::vec(prop_oneof![Just(Site::First), Just(Site::Second)], 0..8)
    }

    pub fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..=5, 1usize..=5)
            .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-10i64..=10, c), r))
    }
}

proptest! {
    #[test]
    fn free_reduce_is_idempotent_and_reduced(raw in strategies::letters()) {
        let once = free_reduce(raw.clone());
        let twice = free_reduce(once.letters().iter().copied());
        prop_assert_eq!(&once, &twice);
        for w in once.letters().windows(2) {
            prop_assert_ne!(w[0].0, w[1].0, "adjacent letters share a generator");
        }
        prop_assert!(once.letters().iter().all(|&(_, e)| e != 0));
    }

    #[test]
    fn word_inverse_cancels(raw in strategies::letters()) {
        let w = Word::from_letters(raw);
        prop_assert!(w.concat(&w.inverse()).is_empty());
        prop_assert!(w.inverse().concat(&w).is_empty());
    }

    #[test]
    fn snf_is_a_valid_decomposition(rows in strategies::small_matrix()) {
        let m = IntMat::from_rows(&rows);
        let snf = smith_normal_form(&m);
        prop_assert_eq!(snf.u.mul(&m).mul(&snf.v), snf.s.clone());
        prop_assert_eq!(snf.u.det().magnitude().to_string(), "1");
        prop_assert_eq!(snf.v.det().magnitude().to_string(), "1");
        let factors = snf.invariant_factors();
        for pair in factors.windows(2) {
            prop_assert_eq!(&pair[1] % &pair[0], 0.into());
        }
    }

    #[test]
    fn partner_relation_closed_under_rewrites(
        (m, n) in strategies::coprime_pair(),
        sites in strategies::site_sequence()
    ) {
        let idx = BTSIndex::new(m, n).unwrap();
        let mut state = TwinState::new(idx).unwrap();
        for site in sites {
            match state.gluck_rewrite(site) {
                Ok(next) => {
                    next.validate().unwrap();
                    state = next;
                }
                Err(_) => break,
            }
        }
    }

    #[test]
    fn reduction_reaches_base_with_coprime_steps((m, n) in strategies::coprime_pair()) {
        let trace = reduce_to_base(BTSIndex::new(m, n).unwrap());
        prop_assert_eq!(trace.terminal().n(), 1);
        for (_, idx) in trace.steps() {
            prop_assert!(BTSIndex::new(idx.m(), idx.n()).is_ok());
        }
    }

    #[test]
    fn bezout_satisfies_identity_in_canonical_window((m, n) in strategies::coprime_pair()) {
        let bz = canonical_bezout(m, n).unwrap();
        prop_assert_eq!(m * bz.alpha + n * bz.beta, eps(m));
        prop_assert!(0 <= bz.beta && bz.beta < m.abs());
    }
}

fn shipped(name: &str) -> GroupPresentation {
    let path = format!("{}/../../knots/{name}", env!("CARGO_MANIFEST_DIR"));
    parse_knot_file(path).expect("shipped knot parses").group
}

/// Every shipped knot presentation abelianizes to the integers, with the
/// meridian generating and the longitude vanishing.
#[test]
fn shipped_knots_have_knot_group_homology() {
    for name in ["unknot.knot", "trefoil.knot", "fig8.knot"] {
        let group = shipped(name);
        let ab = group.abelianization();
        assert!(ab.is_infinite_cyclic(), "{name}: {ab}");
        // The meridian generates the abelianization exactly when killing
        // it kills the whole abelianization.
        let meridian = group.meridian().unwrap().clone();
        let killed = group.add_relators([meridian]).unwrap();
        assert!(killed.abelianization().is_trivial(), "{name}");
        // Longitudes are null-homologous.
        let sums = group
            .longitude()
            .unwrap()
            .exponent_sums(group.num_generators());
        assert_eq!(sums.iter().sum::<i64>(), 0, "{name}");
    }
}

/// Validates the trefoil's longitude against an exact 2x2 integer matrix
/// representation of its group: the relator holds in the representation
/// and the longitude's image commutes with the meridian's.
#[test]
fn trefoil_longitude_commutes_with_meridian_in_matrix_rep() {
    let group = shipped("trefoil.knot");
    let images = [Mat2::new(1, 1, 0, 1), Mat2::new(1, 0, -1, 1)];
    let eval = |w: &Word| -> Mat2 {
        let mut acc = Mat2::IDENTITY;
        for &(g, e) in w.letters() {
            let base = if e > 0 {
                images[g]
            } else {
                images[g].inverse().unwrap()
            };
            for _ in 0..e.unsigned_abs() {
                acc = acc * base;
            }
        }
        acc
    };
    // The representation respects the relator.
    let rel = &group.relators()[0];
    assert_eq!(eval(rel), Mat2::IDENTITY);
    let mu = eval(group.meridian().unwrap());
    let lambda = eval(group.longitude().unwrap());
    assert_eq!(mu * lambda, lambda * mu);
    assert_ne!(lambda, Mat2::IDENTITY);
}

/// Peripheral commutation is also visible to finite quotients: adding the
/// meridian-longitude commutator as a relator must not change any
/// homomorphism count (it is a consequence of the presentation).
#[test]
fn peripheral_commutator_is_redundant_in_finite_quotients() {
    for (name, degrees) in [
        ("unknot.knot", vec![2usize, 3, 4, 5]),
        ("trefoil.knot", vec![2, 3, 4, 5]),
        ("fig8.knot", vec![2, 3, 4]),
    ] {
        let group = shipped(name);
        let mu = group.meridian().unwrap().clone();
        let lambda = group.longitude().unwrap().clone();
        let commutator = mu
            .concat(&lambda)
            .concat(&mu.inverse())
            .concat(&lambda.inverse());
        let extended = group.add_relators([commutator]).unwrap();
        assert_eq!(group.abelianization(), extended.abelianization(), "{name}");
        for k in degrees {
            assert_eq!(
                group.count_homs_symmetric(k).unwrap(),
                extended.count_homs_symmetric(k).unwrap(),
                "{name} at degree {k}"
            );
        }
    }
}

/// The figure-eight knot group is not abelian and not the trefoil group;
/// hom counting separates all three shipped knots at degree <= 4.  The
/// degree-3 counts are the coloring facts: the trefoil admits nontrivial
/// 3-colorings (12 = 6 abelian + 6 onto the full symmetric group), the
/// figure-eight does not (6, abelian only).
#[test]
fn hom_counts_distinguish_shipped_knots() {
    let unknot = shipped("unknot.knot");
    let trefoil = shipped("trefoil.knot");
    let fig8 = shipped("fig8.knot");
    let profile = |g: &GroupPresentation| -> Vec<u64> {
        (2..=4)
            .map(|k| g.count_homs_symmetric(k).unwrap())
            .collect()
    };
    let (u, t, f) = (profile(&unknot), profile(&trefoil), profile(&fig8));
    assert_eq!(u, vec![2, 6, 24]);
    assert_eq!(t, vec![2, 12, 96]);
    assert_eq!(f, vec![2, 6, 48]);
}
