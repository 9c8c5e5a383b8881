use num::{Integer, One, Signed, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tau_core::polynomial::{int, rat};
use tau_core::{
    chebyshev_t, interval_map, solve_linear_system, taylor_coeff_equations, tau_solve, AffineMap, Assignment,
    Coefficient, DiffOperator, IvpProblem, LinForm, LinearSystem, Poly, Rational, SymPoly,
};

fn rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=7).prop_map(|(n, d)| rat(n, d))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |r| !r.is_zero())
}

fn poly(max_len: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(rational(), 0..=max_len).prop_map(Poly::from_coeffs)
}

fn nonzero_poly(max_len: usize) -> impl Strategy<Value = Poly> {
    poly(max_len).prop_filter("nonzero", |p| !p.is_zero())
}

fn linform(max_unknown: usize) -> impl Strategy<Value = LinForm> {
    (rational(), prop::collection::vec((0..=max_unknown, rational()), 0..4)).prop_map(|(c, terms)| {
        let mut form = LinForm::constant(c);
        for (i, k) in terms {
            form.add_assign_ref(&LinForm::term(i, k));
        }
        form
    })
}

fn sympoly(max_len: usize) -> impl Strategy<Value = SymPoly> {
    prop::collection::vec(linform(5), 0..=max_len).prop_map(SymPoly::from_coeffs)
}

fn full_assignment() -> impl Strategy<Value = Assignment> {
    prop::collection::vec(rational(), 6).prop_map(|v| v.into_iter().enumerate().collect())
}

fn is_canonical(r: &Rational) -> bool {
    r.denom().is_positive() && r.numer().gcd(r.denom()).is_one()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn arithmetic_keeps_canonical_form(p in poly(8), q in poly(8), k in rational()) {
        let results = [&p + &q, &p - &q, p.mul_poly(&q), p.scale(&k), p.integrate(3), p.derivative(2)];
        for r in &results {
            prop_assert!(r.coeffs().iter().all(is_canonical));
            prop_assert!(r.coeffs().last().is_none_or(|c| !c.is_zero()));
        }
    }

    #[test]
    fn adding_zero_is_identity(p in poly(10)) {
        prop_assert_eq!(&p + &Poly::zero(), p);
    }

    #[test]
    fn product_distributes_coefficientwise(s in sympoly(4), q in poly(4)) {
        let product = s.mul_poly(&q);
        let len = s.coeffs().len() + q.coeffs().len();
        for power in 0..len {
            let mut expected = LinForm::zero();
            for i in 0..=power {
                expected.add_assign_ref(&s.coeff(i).scaled(&q.coeff(power - i)));
            }
            prop_assert_eq!(product.coeff(power), expected);
        }
    }

    #[test]
    fn product_degree_adds(p in nonzero_poly(7), q in nonzero_poly(7)) {
        prop_assert_eq!(
            p.mul_poly(&q).degree(),
            Some(p.degree().unwrap() + q.degree().unwrap())
        );
    }

    #[test]
    fn derivative_of_integral_is_identity(p in poly(10), s in 0usize..=5) {
        prop_assert_eq!(p.integrate(s).derivative(s), p);
    }

    #[test]
    fn high_order_derivative_iterates(p in poly(8)) {
        prop_assert_eq!(p.derivative(3), p.derivative(1).derivative(1).derivative(1));
    }

    #[test]
    fn integration_raises_zero_order(p in nonzero_poly(8), s in 0usize..=5) {
        prop_assert!(p.integrate(s).deg_nul().unwrap() >= s + p.deg_nul().unwrap());
    }

    #[test]
    fn deg_nul_shifts(p in nonzero_poly(8), j in 0usize..8) {
        prop_assert_eq!(p.shift_up(j).deg_nul().unwrap(), j + p.deg_nul().unwrap());
    }

    #[test]
    fn div_x_pow_inverts_shift(p in poly(8), r in 0usize..8) {
        prop_assert_eq!(p.shift_up(r).div_x_pow(r).unwrap(), p);
    }

    #[test]
    fn affine_compose_round_trips(p in poly(8), alpha in nonzero_rational(), beta in rational()) {
        let z = AffineMap { alpha, beta };
        let back = p.compose_affine(&z).compose_affine(&z.inverse().unwrap());
        prop_assert_eq!(back, p.clone());
        prop_assert_eq!(p.compose_affine(&AffineMap::identity()), p);
    }

    #[test]
    fn substitution_commutes_with_evaluation(s in sympoly(6), a in full_assignment()) {
        let point = rat(1, 3);
        let direct = s.substitute(&a).unwrap().eval(&point);
        let mut by_forms = Rational::zero();
        let mut power = Rational::one();
        for c in s.coeffs() {
            by_forms += c.evaluate(&a).unwrap() * &power;
            power *= &point;
        }
        prop_assert_eq!(direct, by_forms);
    }

    #[test]
    fn substitution_is_affine_in_assignment(s in sympoly(6), a in full_assignment(), b in full_assignment()) {
        let sum: Assignment = (0..6).map(|i| (i, a.get(i).unwrap() + b.get(i).unwrap())).collect();
        let zero: Assignment = (0..6).map(|i| (i, Rational::zero())).collect();
        let lhs = s.substitute(&sum).unwrap();
        let rhs = &(&s.substitute(&a).unwrap() + &s.substitute(&b).unwrap()) - &s.substitute(&zero).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn embedding_round_trips(p in poly(8)) {
        prop_assert_eq!(SymPoly::lift(&p).to_poly(), Some(p));
    }

    #[test]
    fn horner_matches_naive_summation(p in poly(10), point in rational()) {
        let naive = p
            .coeffs()
            .iter()
            .enumerate()
            .fold(Rational::zero(), |acc, (j, c)| acc + c * num::pow(point.clone(), j));
        prop_assert_eq!(p.eval(&point), naive);
        prop_assert_eq!(p.eval(&Rational::zero()), p.coeff(0));
    }

    #[test]
    fn taylor_equations_reassemble(s in sympoly(8), upto in 0usize..10) {
        let eqs = taylor_coeff_equations(&s, upto);
        prop_assert_eq!(eqs.len(), upto + 1);
        let rebuilt = SymPoly::from_coeffs(eqs);
        let truncated = SymPoly::from_coeffs(s.coeffs().iter().take(upto + 1).cloned().collect());
        prop_assert_eq!(rebuilt, truncated);
    }

    #[test]
    fn operator_is_additive(
        a in prop::collection::vec(poly(3), 1..4),
        g in poly(3),
        p in poly(6),
        q in poly(6),
    ) {
        prop_assume!(a.iter().any(|c| !c.is_zero()));
        let op = DiffOperator::new(a, g.clone()).unwrap();
        let lhs = &op.apply(&(&p + &q)) + &g;
        let rhs = &op.apply(&p) + &op.apply(&q);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn zero_top_coefficient_does_not_count(a in prop::collection::vec(poly(3), 1..4), extra in 1usize..3) {
        prop_assume!(a.iter().any(|c| !c.is_zero()));
        let base = DiffOperator::new(a.clone(), Poly::zero()).unwrap();
        let mut padded = a;
        padded.extend(std::iter::repeat_n(Poly::zero(), extra));
        prop_assert_eq!(DiffOperator::new(padded, Poly::zero()).unwrap().order(), base.order());
    }

    #[test]
    fn chebyshev_parity(i in 0usize..25) {
        let reflect = AffineMap { alpha: int(-1), beta: int(0) };
        let t = chebyshev_t(i);
        let sign = if i % 2 == 0 { int(1) } else { int(-1) };
        prop_assert_eq!(t.compose_affine(&reflect), t.scale(&sign));
    }

    #[test]
    fn interval_endpoints_map_exactly(a in rational(), w in nonzero_rational()) {
        let b = &a + w.abs();
        let z = interval_map(&a, &b).unwrap();
        prop_assert_eq!(z.apply(&a), int(-1));
        prop_assert_eq!(z.apply(&b), int(1));
    }
}

/// Random problems `x*A(x) y^(k) + ... = 0` with a regular singular point at 0.
fn random_problem(rng: &mut impl Rng) -> IvpProblem {
    let k = rng.gen_range(1..=2);
    let small = |rng: &mut dyn rand::RngCore| rat(rng.gen_range(-4..=4), rng.gen_range(1..=3));
    let mut coeffs = Vec::new();
    for i in 0..=k {
        let len = rng.gen_range(1..=3);
        let mut p = Poly::from_coeffs((0..len).map(|_| small(rng)).collect());
        if i == k {
            p = &p.shift_up(1) + &Poly::x();
        }
        coeffs.push(p);
    }
    let op = DiffOperator::new(coeffs, Poly::zero()).unwrap();
    let t = Poly::from_coeffs((0..=rng.gen_range(0..=2)).map(|_| small(rng)).collect());
    let a = rat(-rng.gen_range(1..=3), rng.gen_range(1..=2));
    let b = rat(rng.gen_range(1..=3), rng.gen_range(1..=2));
    let n = rng.gen_range(3..=9);
    IvpProblem::new(op, t, (a, b), n).unwrap()
}

#[test]
fn successful_solves_satisfy_structural_invariants() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut solved = 0;
    for _ in 0..120 {
        let problem = random_problem(&mut rng);
        let Ok(sol) = tau_solve(&problem) else { continue };
        solved += 1;
        let s = sol.params.s;
        assert!(sol.residual_verified);
        assert!(sol.y_n.degree().is_none_or(|d| d <= problem.degree));
        for j in 0..s {
            assert_eq!(sol.y_n.coeff(j), problem.initial.coeff(j));
        }
        assert_eq!(sol.y_n, &problem.initial + &sol.u_p.integrate(s));
        assert_eq!(sol.tau.len() + sol.params.p + 1, sol.params.m + 1);
    }
    assert!(solved >= 60, "only {solved} random problems solved");
}

fn determinant(m: &[Vec<Rational>]) -> Rational {
    if m.len() == 1 {
        return m[0][0].clone();
    }
    (0..m.len())
        .map(|col| {
            let minor: Vec<Vec<Rational>> = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|(j, _)| *j != col).map(|(_, v)| v.clone()).collect())
                .collect();
            let sign = if col % 2 == 0 { int(1) } else { int(-1) };
            sign * &m[0][col] * determinant(&minor)
        })
        .sum()
}

#[test]
fn matches_cramer_rule_on_random_systems() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut trials = 0;
    while trials < 100 {
        let entry = |rng: &mut ChaCha8Rng| rat(rng.gen_range(-9..=9), rng.gen_range(1..=5));
        let a: Vec<Vec<Rational>> = (0..4).map(|_| (0..4).map(|_| entry(&mut rng)).collect()).collect();
        let rhs: Vec<Rational> = (0..4).map(|_| entry(&mut rng)).collect();
        let det = determinant(&a);
        if det.is_zero() {
            continue;
        }
        trials += 1;
        let equations = (0..4)
            .map(|i| {
                let mut form = LinForm::constant(-rhs[i].clone());
                for (j, v) in a[i].iter().enumerate() {
                    form.add_assign_ref(&LinForm::term(j, v.clone()));
                }
                form
            })
            .collect::<Vec<_>>();
        let solution = solve_linear_system(&LinearSystem::new(equations.clone())).unwrap();
        for j in 0..4 {
            let replaced: Vec<Vec<Rational>> = (0..4)
                .map(|i| (0..4).map(|c| if c == j { rhs[i].clone() } else { a[i][c].clone() }).collect())
                .collect();
            assert_eq!(solution.get(j), Some(&(determinant(&replaced) / &det)));
        }
        let residual = SymPoly::from_coeffs(equations.clone()).substitute(&solution).unwrap();
        assert!(residual.is_zero());

        let mut shuffled = equations;
        shuffled.rotate_left(rng.gen_range(1..4));
        shuffled.swap(0, rng.gen_range(0..4));
        assert_eq!(solve_linear_system(&LinearSystem::new(shuffled)).unwrap(), solution);
    }
}
