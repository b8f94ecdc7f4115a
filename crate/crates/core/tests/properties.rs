use orthoinv::invariants::{d_mu, emit_generators, fingerprint, fingerprint_exact, reconstruct, u_mu, u_points};
use orthoinv::oracle::{act_coords, enumerate_group, random_point, trial_rng};
use orthoinv::slice::{move_to_slice, SLICE_TOL};
use orthoinv::text::{parse_form, write_form, AnyForm};
use orthoinv::{Form, InvariantVariant, MultiIndex, OrthogonalMatrix, Rational, Ring, Shape, SliceBasis};
use proptest::prelude::*;

fn shape(n: usize, degree: u32) -> Shape {
    Shape::new(n, degree).unwrap()
}

fn variants() -> [InvariantVariant; 4] {
    ["repaired", "paper-literal", "paper-u", "paper-d"].map(|t| t.parse().unwrap())
}

/// `ν` with `ν_{σ(k)} = μ_k` and the sign `τ^μ`.
fn image(g: &orthoinv::SignedPermutation, mu: &MultiIndex) -> (MultiIndex, i64) {
    let mut nu = vec![0; mu.len()];
    let mut sign = 1;
    for k in 0..mu.len() {
        nu[g.sigma()[k]] = mu.get(k);
        if mu.get(k) % 2 == 1 {
            sign *= g.tau()[k] as i64;
        }
    }
    (MultiIndex::new(nu), sign)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn action_is_a_group_action(seed in any::<u64>(), a in 0usize..384, b in 0usize..384, four in any::<bool>()) {
        let n = if four { 4 } else { 3 };
        let group = enumerate_group(n).unwrap();
        let (g, h) = (&group[a % group.len()], &group[b % group.len()]);
        let c = random_point(shape(n, 4), &mut trial_rng(seed, 0));
        prop_assert_eq!(act_coords(g, &act_coords(h, &c)), act_coords(&g.compose(h), &c));
        prop_assert_eq!(act_coords(&g.inverse(), &act_coords(g, &c)), c);
    }

    #[test]
    fn u_and_d_are_equivariant(seed in any::<u64>(), k in 0usize..48, degree in prop::sample::select(vec![4u32, 6])) {
        let s = shape(3, degree);
        let g = &enumerate_group(3).unwrap()[k];
        let c = random_point(s, &mut trial_rng(seed, 1));
        let gc = act_coords(g, &c);
        for v in variants() {
            for mu in c.layout().mu_indices() {
                let (nu, sign) = image(g, mu);
                prop_assert_eq!(u_mu(&nu, &gc, v), u_mu(mu, &c, v));
                prop_assert_eq!(d_mu(&nu, &gc, v), d_mu(mu, &c, v) * Rational::from_i64(sign));
            }
        }
    }

    #[test]
    fn default_nodes_are_distinct_when_u_is(seed in any::<u64>(), which in 0usize..3) {
        let (n, degree) = [(3, 4), (3, 6), (4, 6)][which];
        let c = random_point(shape(n, degree), &mut trial_rng(seed, 2));
        let u = u_points(&c);
        let distinct_u = (0..n).all(|i| (i + 1..n).all(|j| u[i] != u[j]));
        prop_assume!(distinct_u);
        for block in c.layout().blocks() {
            let nodes: Vec<Rational> = block
                .members
                .iter()
                .map(|&k| u_mu(&c.layout().mu_indices()[k], &c, InvariantVariant::default()))
                .collect();
            for a in 0..nodes.len() {
                for b in a + 1..nodes.len() {
                    prop_assert_ne!(&nodes[a], &nodes[b], "block {}", block.partition);
                }
            }
        }
    }

    #[test]
    fn degree_zero_row_is_plain_sum(seed in any::<u64>(), degree in prop::sample::select(vec![4u32, 6])) {
        let c = random_point(shape(3, degree), &mut trial_rng(seed, 3));
        let fp = fingerprint_exact(&c, InvariantVariant::default());
        for (block, (p, values)) in c.layout().blocks().iter().zip(&fp.r) {
            prop_assert_eq!(&block.partition, p);
            if p.parts().iter().all(|x| x % 2 == 0) {
                let sum = block.members.iter().fold(Rational::from_i64(0), |acc, &k| acc + c.mu_values()[k].clone());
                prop_assert_eq!(&values[0], &sum);
            }
        }
    }

    #[test]
    fn reconstruction_inverts_fingerprint(seed in any::<u64>(), degree in prop::sample::select(vec![4u32, 6])) {
        let c = random_point(shape(3, degree), &mut trial_rng(seed, 4));
        let fp = fingerprint_exact(&c, InvariantVariant::default());
        prop_assume!(fp.is_generic());
        prop_assert_eq!(reconstruct(&fp, c.pair_values()).unwrap(), c);
    }

    #[test]
    fn form_files_round_trip(seed in any::<u64>()) {
        let s = shape(3, 4);
        let f = SliceBasis::cached(s).combine(&random_point(s, &mut trial_rng(seed, 5)));
        let text = write_form(&f, &["round trip".to_string()]);
        prop_assert_eq!(parse_form(&text).unwrap(), AnyForm::Exact(f.clone()));
        let g = f.to_float();
        prop_assert_eq!(parse_form(&write_form(&g, &[])).unwrap(), AnyForm::Float(g));
    }
}

#[test]
fn symbolic_generators_agree_with_direct_evaluation() {
    for (n, degree) in [(3, 4), (3, 6)] {
        let s = shape(n, degree);
        for v in [InvariantVariant::default(), InvariantVariant::paper_literal()] {
            let gens = emit_generators(s, v);
            for seed in 0..3 {
                let c = random_point(s, &mut trial_rng(seed, 6));
                let values = c.flatten();
                let fp = fingerprint_exact(&c, v);
                assert_eq!(gens.len(), fp.len());
                for ((label, poly), expected) in gens.generators.iter().zip(fp.values()) {
                    assert_eq!(&poly.eval(&values, Rational::clone), expected, "{label} at ({n},{degree}) {v}");
                }
            }
        }
    }
}

#[test]
fn rotated_slice_forms_keep_their_fingerprint() {
    let s = shape(3, 4);
    let basis = SliceBasis::cached(s);
    for seed in 0..10 {
        let c = random_point(s, &mut trial_rng(seed, 8));
        let s0: Form<Rational> = basis.combine(&c);
        let q = OrthogonalMatrix::random(3, &mut trial_rng(seed, 9));
        let moved = move_to_slice(&s0.to_float().apply_orthogonal(&q).unwrap()).unwrap();
        let back = basis.coordinates(&moved.form, SLICE_TOL).unwrap();
        let expected = fingerprint_exact(&c, InvariantVariant::default()).to_float();
        let got = fingerprint(&back, InvariantVariant::default());
        for (a, b) in got.values().zip(expected.values()) {
            assert!((a - b).abs() <= 1e-6 * a.abs().max(b.abs()).max(1.0), "{a} vs {b}");
        }
    }
}
