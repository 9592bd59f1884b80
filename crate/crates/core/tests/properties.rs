mod common;

use common::side_count;
use proptest::prelude::*;

use twopage::analysis::{last_column_failures, leqleq_bound_failures, row_count_failures};
use twopage::construct::random_drawing;
use twopage::kedge::{
    crossings_direct, crossings_via_kedges, crossings_via_leqleq, entry_k_values,
    invariant_leq_k_count, k4_census, k_edge_profile, raw_k_values, suffix_delete,
    vertex_deleted_profile,
};
use twopage::transform::{apply, canonical_key, render, GroupElement, RenderMode};
use twopage::{binomial, Drawing};

fn drawing(sizes: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Drawing> {
    (sizes, any::<u64>()).prop_map(|(n, seed)| random_drawing(n, seed).unwrap())
}

fn drawing_with_element(
    sizes: std::ops::RangeInclusive<usize>,
) -> impl Strategy<Value = (Drawing, GroupElement)> {
    drawing(sizes).prop_flat_map(|d| {
        let n = d.n();
        (Just(d), any::<bool>(), any::<bool>(), 0..n)
            .prop_map(|(d, a, b, i)| (d, GroupElement::new(a, b, i)))
    })
}

fn weighted_sum(d: &Drawing) -> u64 {
    let n = d.n() as u64;
    k_edge_profile(d)
        .e
        .iter()
        .enumerate()
        .map(|(k, &e)| k as u64 * (n - 2 - k as u64) * e)
        .sum()
}

proptest! {
    #[test]
    fn serialize_round_trips(d in drawing(3..=63)) {
        let text = d.serialize();
        prop_assert_eq!(Drawing::parse(&text).unwrap(), d.clone());
        prop_assert_eq!(Drawing::parse(&text).unwrap().serialize(), text);
    }

    #[test]
    fn crossing_identities(d in drawing(4..=30)) {
        let direct = crossings_direct(&d);
        prop_assert_eq!(crossings_via_kedges(&d), direct as i64);
        prop_assert_eq!(crossings_via_leqleq(&d), direct as i64);
    }

    #[test]
    fn census_identities(d in drawing(4..=16)) {
        let n = d.n() as u64;
        let c = k4_census(&d);
        prop_assert_eq!(c.t_a + c.t_b + c.t_c, binomial(n, 4));
        prop_assert_eq!(c.crossing_quadruples(), crossings_direct(&d));
        prop_assert_eq!(c.separations, 3 * c.t_a + 2 * (c.t_b + c.t_c));
        prop_assert_eq!(c.separations, weighted_sum(&d));
    }

    #[test]
    fn profile_shape(d in drawing(4..=40)) {
        let n = d.n();
        let p = k_edge_profile(&d);
        prop_assert_eq!(p.e.len(), n / 2);
        prop_assert_eq!(p.e.iter().sum::<u64>(), binomial(n as u64, 2));
        for k in 0..p.e.len() {
            let direct: u64 = (0..=k).map(|i| (k + 1 - i) as u64 * p.e[i]).sum();
            prop_assert_eq!(p.e_leqleq[k], direct);
        }
        prop_assert!(entry_k_values(&d).values().iter().all(|&k| (k as usize) < n / 2));
    }

    #[test]
    fn universal_lower_bounds(d in drawing(4..=40)) {
        prop_assert!(leqleq_bound_failures(&d).is_empty());
        prop_assert!(row_count_failures(&d).is_empty());
        prop_assert!(last_column_failures(&d).is_empty());
    }

    #[test]
    fn deleting_a_vertex_moves_k_by_at_most_one(d in drawing(5..=30)) {
        // plain deletion of vertex n, no recoloring of the new outer edge
        let n = d.n();
        let raw = raw_k_values(&d);
        for a in 1..n - 1 {
            for b in a + 1..n {
                let reduced_raw = side_count(&d, a, b, 1..n);
                let k_small = reduced_raw.min(n - 3 - reduced_raw);
                let full = *raw.get(a, b) as usize;
                let is_k = |k: usize| full == k || full + k == n - 2;
                prop_assert!(is_k(k_small) || is_k(k_small + 1), "({},{})", a, b);
            }
        }
        let reduced = vertex_deleted_profile(&d);
        prop_assert_eq!(reduced.e.iter().sum::<u64>(), binomial(n as u64 - 1, 2));
        prop_assert_eq!(suffix_delete(&d, 1).unwrap().n(), n - 1);
    }

    #[test]
    fn invariant_edge_recurrence(d in drawing(5..=30)) {
        let n = d.n();
        let full = k_edge_profile(&d);
        let reduced = vertex_deleted_profile(&d);
        for k in 0..(n - 1) / 2 {
            let invariant = invariant_leq_k_count(&d, k).unwrap();
            prop_assert!(invariant >= binomial(k as u64 + 2, 2), "k = {}", k);
            prop_assert_eq!(
                full.leqleq(k as i64),
                reduced.leqleq(k as i64 - 1) + 2 * binomial(k as u64 + 2, 2) + invariant,
                "k = {}", k
            );
        }
    }

    #[test]
    fn group_action_is_a_homomorphism((d, s) in drawing_with_element(3..=20), a in any::<bool>(), b in any::<bool>(), i in 0usize..20) {
        let n = d.n();
        let t = GroupElement::new(a, b, i % n);
        prop_assert_eq!(apply(&apply(&d, t), s), apply(&d, s.compose(t, n)));
        prop_assert_eq!(apply(&apply(&d, s), s.inverse(n)), d.clone());
    }

    #[test]
    fn orbit_invariants((d, t) in drawing_with_element(4..=24)) {
        let image = apply(&d, t);
        prop_assert_eq!(crossings_direct(&image), crossings_direct(&d));
        prop_assert_eq!(weighted_sum(&image), weighted_sum(&d));
        prop_assert_eq!(canonical_key(&image), canonical_key(&d));
    }

    #[test]
    fn reflection_and_page_swap_keep_profile(d in drawing(4..=30), a in any::<bool>(), b in any::<bool>()) {
        let image = apply(&d, GroupElement::new(a, b, 0));
        prop_assert_eq!(k_edge_profile(&image), k_edge_profile(&d));
    }

    #[test]
    fn matrix_render_is_injective(d in drawing(3..=30)) {
        let n = d.n();
        let picture = render(&d, RenderMode::Matrix);
        let rows: Vec<String> = picture
            .lines()
            .skip(1)
            .map(|line| line.chars().filter(|c| *c == 'B' || *c == 'R').collect())
            .collect();
        let text = format!("2pg 1 {n}\n{}\n", rows.join("\n"));
        prop_assert_eq!(Drawing::parse(&text).unwrap(), d);
    }
}
