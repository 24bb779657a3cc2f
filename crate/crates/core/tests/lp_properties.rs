use fairwire::lp::{solve_lp, LinearProgram, LpStatus, Relation};
use fairwire::ratio::{int, to_f64, Rational};
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn lp_strategy() -> impl Strategy<Value = LinearProgram<Rational>> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(n, m)| {
        (
            prop::collection::vec(-3i64..=5, n),
            prop::collection::vec((prop::collection::vec(-3i64..=4, n), 0usize..3, -4i64..=8), m),
            prop::collection::vec(prop::option::weighted(0.3, 0i64..=5), n),
        )
            .prop_map(|(c, rows, bounds)| {
                let mut lp = LinearProgram::maximize(c.into_iter().map(int).collect());
                for (a, rel, b) in rows {
                    let rel = [Relation::Le, Relation::Eq, Relation::Ge][rel];
                    lp = lp.with(a.into_iter().map(int).collect(), rel, int(b));
                }
                lp.upper_bounds = bounds.into_iter().map(|b| b.map(int)).collect();
                lp
            })
    })
}

fn to_float(lp: &LinearProgram<Rational>) -> LinearProgram<f64> {
    let mut f = LinearProgram::maximize(lp.objective.iter().map(to_f64).collect());
    for c in &lp.constraints {
        f = f.with(c.coeffs.iter().map(to_f64).collect(), c.relation, to_f64(&c.rhs));
    }
    f.upper_bounds = lp.upper_bounds.iter().map(|b| b.as_ref().map(to_f64)).collect();
    f
}

fn dot(a: &[Rational], x: &[Rational]) -> Rational {
    a.iter().zip(x).map(|(a, x)| a * x).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn optimal_solutions_certify_themselves(lp in lp_strategy()) {
        let s = solve_lp(&lp).unwrap();
        if s.status != LpStatus::Optimal {
            return Ok(());
        }
        let n = lp.num_vars();
        // Primal feasibility.
        for (j, x) in s.primal.iter().enumerate() {
            prop_assert!(!x.is_negative());
            if let Some(u) = &lp.upper_bounds[j] {
                prop_assert!(x <= u);
            }
        }
        for (c, y) in lp.constraints.iter().zip(&s.duals) {
            let ax = dot(&c.coeffs, &s.primal);
            match c.relation {
                Relation::Le => { prop_assert!(ax <= c.rhs); prop_assert!(!y.is_negative()); }
                Relation::Ge => { prop_assert!(ax >= c.rhs); prop_assert!(!y.is_positive()); }
                Relation::Eq => prop_assert_eq!(&ax, &c.rhs),
            }
            // Complementary slackness on rows.
            prop_assert!(y.is_zero() || ax == c.rhs);
        }
        for j in 0..n {
            let col: Rational = lp.constraints.iter().zip(&s.duals).map(|(c, y)| &c.coeffs[j] * y).sum::<Rational>() + &s.bound_duals[j];
            prop_assert!(col >= lp.objective[j], "dual infeasible in column {}", j);
            // Complementary slackness on columns.
            prop_assert!(s.primal[j].is_zero() || col == lp.objective[j]);
            prop_assert!(!s.bound_duals[j].is_negative());
        }
        prop_assert_eq!(&s.objective, &s.dual_objective(&lp));
        prop_assert_eq!(&s.objective, &dot(&lp.objective, &s.primal));
    }

    #[test]
    fn float_mode_agrees(lp in lp_strategy()) {
        let exact = solve_lp(&lp).unwrap();
        let float = solve_lp(&to_float(&lp)).unwrap();
        prop_assert_eq!(exact.status, float.status);
        if exact.is_optimal() {
            let tau = 1e-9 * (1.0 + to_f64(&exact.objective).abs());
            prop_assert!((to_f64(&exact.objective) - float.objective).abs() <= tau);
            prop_assert!((float.dual_objective(&to_float(&lp)) - float.objective).abs() <= tau);
        }
    }

    #[test]
    fn resolving_is_deterministic(lp in lp_strategy()) {
        prop_assert_eq!(solve_lp(&lp).unwrap(), solve_lp(&lp).unwrap());
    }
}

#[test]
fn unbounded_and_infeasible_statuses() {
    let lp = LinearProgram::maximize(vec![int(1)]);
    assert_eq!(solve_lp(&lp).unwrap().status, LpStatus::Unbounded);
    let lp = LinearProgram::maximize(vec![int(1)]).with(vec![int(1)], Relation::Le, int(-1));
    assert_eq!(solve_lp(&lp).unwrap().status, LpStatus::Infeasible);
}
