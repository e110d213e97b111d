use std::f64::consts::PI;

use proptest::prelude::*;
use qgame_core::cmatrix::{vec_dot, C64};
use qgame_core::equilibrium::{
    best_response_full, best_response_on_family, reduced_payoff, verify_ne, StrategySet, NE_TOL,
};
use qgame_core::{
    eig_hermitian, expand, inner_product, product_density, reconstruct, CMatrix, GameDefinition,
    Player, StrategyDensity, StrategyOperator, SystemStrategyState, UnitaryFamily, UnitaryParams,
};

fn c64() -> impl Strategy<Value = C64> {
    (-2.0..2.0f64, -2.0..2.0f64).prop_map(|(re, im)| C64::new(re, im))
}

fn operator() -> impl Strategy<Value = StrategyOperator> {
    prop::collection::vec(c64(), 4)
        .prop_map(|v| StrategyOperator::new(CMatrix::from_vec(2, 2, v).unwrap()).unwrap())
}

fn hermitian(n: usize) -> impl Strategy<Value = CMatrix> {
    prop::collection::vec(c64(), n * n).prop_map(move |v| {
        let a = CMatrix::from_vec(n, n, v).unwrap();
        (&a + &a.dagger()).scale(C64::new(0.5, 0.0))
    })
}

fn params() -> impl Strategy<Value = (f64, f64, f64, f64)> {
    (-5.0..5.0f64, -5.0..5.0f64, -5.0..5.0f64, -5.0..5.0f64)
}

fn euler() -> impl Strategy<Value = UnitaryParams> {
    (-PI..PI, -PI..PI, 0.0..PI).prop_map(|(a, b, g)| UnitaryParams::euler(a, b, g))
}

/// A game with a random pure initial state and random Hermitian scales.
fn general_game() -> impl Strategy<Value = GameDefinition> {
    (prop::collection::vec(c64(), 4), hermitian(4), hermitian(4)).prop_filter_map(
        "degenerate initial state",
        |(psi, p1, p2)| {
            let n: f64 = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if n < 1e-3 {
                return None;
            }
            let psi: Vec<C64> = psi.iter().map(|z| z / n).collect();
            let rho0 = CMatrix::outer(&psi, &psi);
            GameDefinition::new(rho0, p1, p2, None).ok()
        },
    )
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn expansion_round_trips(s in operator()) {
        let back = reconstruct(&expand(&s));
        prop_assert!(back.matrix().max_abs_diff(s.matrix()) <= 1e-12);
        let v = expand(&s);
        let norm = inner_product(&s, &s).re;
        prop_assert!(close(v.norm_sqr(), norm, 1e-12));
    }

    #[test]
    fn operator_and_state_forms_agree_on_general_games(
        game in general_game(), u1 in operator(), u2 in operator()
    ) {
        let state = SystemStrategyState::from_operators(&u1, &u2);
        for (player, h) in Player::BOTH.into_iter().zip(game.payoff_tensors()) {
            let direct = game.payoff_operator_form(&u1, &u2, player).unwrap();
            let tensor = h.payoff_state_form(&state).unwrap();
            prop_assert!(close(direct, tensor, 1e-10), "{direct} vs {tensor}");
        }
    }

    #[test]
    fn state_and_density_forms_agree(game in general_game(), u1 in operator(), u2 in operator()) {
        let v1 = u1.expand().normalized();
        let v2 = u2.expand().normalized();
        let state = SystemStrategyState::product(&v1, &v2);
        let rho = product_density(
            &StrategyDensity::pure_strategy(&v1).unwrap(),
            &StrategyDensity::pure_strategy(&v2).unwrap(),
        ).unwrap();
        for h in game.payoff_tensors() {
            let a = h.payoff_state_form(&state).unwrap();
            let b = h.payoff_density_form(&rho).unwrap();
            prop_assert!(close(a, b, 1e-10), "{a} vs {b}");
        }
    }

    #[test]
    fn tensors_are_hermitian(game in general_game()) {
        for h in game.payoff_tensors() {
            prop_assert!(h.matrix().hermitian_deviation() <= 1e-12);
        }
    }

    #[test]
    fn second_player_tensor_swaps_temptation_and_sucker((r, s, t, p) in params()) {
        let g = GameDefinition::canonical_pd(r, s, t, p).unwrap();
        let swapped = GameDefinition::canonical_pd(r, t, s, p).unwrap();
        let d = g.build_payoff_tensor(Player::Two).matrix()
            .max_abs_diff(swapped.build_payoff_tensor(Player::One).matrix());
        prop_assert!(d <= 1e-12);
    }

    #[test]
    fn canonical_spectrum_is_four_times_payoffs((r, s, t, p) in params()) {
        let g = GameDefinition::canonical_pd(r, s, t, p).unwrap();
        let mut want = vec![4.0 * r, 4.0 * s, 4.0 * t, 4.0 * p];
        want.extend([0.0; 12]);
        want.sort_by(|a, b| b.total_cmp(a));
        let eig = eig_hermitian(g.build_payoff_tensor(Player::One).matrix()).unwrap();
        for (got, w) in eig.eigenvalues.iter().zip(&want) {
            prop_assert!((got - w).abs() <= 1e-9, "{got} vs {w}");
        }
    }

    #[test]
    fn eigen_decomposition_is_faithful(a in hermitian(6)) {
        let eig = eig_hermitian(&a).unwrap();
        let scale = a.frobenius_norm().max(1.0);
        prop_assert!((&eig.reconstruct() - &a).frobenius_norm() <= 1e-10 * scale);
        for w in eig.eigenvalues.windows(2) {
            prop_assert!(w[0] >= w[1]);
        }
        for (i, u) in eig.eigenvectors.iter().enumerate() {
            for (j, v) in eig.eigenvectors.iter().enumerate() {
                let want = if i == j { 1.0 } else { 0.0 };
                prop_assert!((vec_dot(u, v) - C64::new(want, 0.0)).norm() <= 1e-10);
            }
        }
    }

    #[test]
    fn partial_trace_preserves_trace(a in hermitian(16)) {
        let total = a.trace().unwrap();
        for which in 0..2 {
            let reduced = a.partial_trace((4, 4), which).unwrap();
            prop_assert!((reduced.trace().unwrap() - total).norm() <= 1e-10);
        }
    }

    #[test]
    fn reduced_payoff_reproduces_full_payoff(
        (r, s, t, p) in params(), u1 in euler(), u2 in euler()
    ) {
        let g = GameDefinition::canonical_pd(r, s, t, p).unwrap();
        let e = g.payoffs(&u1.operator(), &u2.operator()).unwrap();
        let dens = [
            StrategyDensity::pure_strategy(&u1.vector()).unwrap(),
            StrategyDensity::pure_strategy(&u2.vector()).unwrap(),
        ];
        for player in Player::BOTH {
            let h = g.build_payoff_tensor(player);
            let hr = reduced_payoff(&h, &dens[player.other().index()], player).unwrap();
            let own = [u1, u2][player.index()].vector();
            prop_assert!(close(hr.payoff(own.as_slice()), e[player.index()], 1e-10));
        }
    }

    #[test]
    fn family_best_response_bounds_every_family_member(
        (r, s, t, p) in params(), opp in euler(), probe in euler()
    ) {
        let g = GameDefinition::canonical_pd(r, s, t, p).unwrap();
        let h = g.build_payoff_tensor(Player::One);
        let hr = reduced_payoff(&h, &StrategyDensity::pure_strategy(&opp.vector()).unwrap(), Player::One).unwrap();
        let (coords, best) = best_response_on_family(&hr, UnitaryFamily::Euler).unwrap();
        let attained = UnitaryFamily::Euler.params_from_coords(&coords).vector();
        prop_assert!(close(hr.payoff(attained.as_slice()), best, 1e-10));
        prop_assert!(hr.payoff(probe.vector().as_slice()) <= best + 1e-10);
        let (_, full) = best_response_full(&hr).unwrap();
        prop_assert!(best <= full + 1e-10);
    }

    #[test]
    fn flip_profiles_are_unitary_equilibria((r, s, t, p) in params(), a in -PI..PI, b in -PI..PI) {
        // With t > r and p > s defection dominates, so any pair of full flips is stable.
        prop_assume!(t > r + 0.1 && p > s + 0.1);
        let g = GameDefinition::canonical_pd(r, s, t, p).unwrap();
        let [h1, h2] = g.payoff_tensors();
        let u = UnitaryParams::euler(a, b, PI);
        let v = UnitaryParams::euler(b, a, PI);
        let rho = product_density(
            &StrategyDensity::pure_strategy(&u.vector()).unwrap(),
            &StrategyDensity::pure_strategy(&v.vector()).unwrap(),
        ).unwrap();
        let rep = verify_ne(&h1, &h2, &rho, StrategySet::Unitary, NE_TOL).unwrap();
        prop_assert!(rep.deviation_margin.unwrap() <= NE_TOL, "margin {:?}", rep.deviation_margin);
        prop_assert!(close(rep.payoffs[0], p, 1e-10) && close(rep.payoffs[1], p, 1e-10));
    }
}

#[test]
fn classical_table_matches_dilemma_payoffs() {
    let g = GameDefinition::canonical_pd(3.0, 0.0, 5.0, 1.0).unwrap();
    assert_eq!(
        g.classical_payoff_table(Player::One).unwrap(),
        [[3.0, 0.0], [5.0, 1.0]]
    );
    assert_eq!(
        g.classical_payoff_table(Player::Two).unwrap(),
        [[3.0, 5.0], [0.0, 1.0]]
    );
}
