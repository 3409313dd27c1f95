use std::sync::OnceLock;

use proptest::prelude::*;
use vstrip_llt::harmonics::hall_littlewood;
use vstrip_llt::llt::{self, OrientationSpace};
use vstrip_llt::partitions::partitions_of;
use vstrip_llt::relations::RecursionEvaluator;
use vstrip_llt::schroeder::enumerate;
use vstrip_llt::schur::kostka_schur;
use vstrip_llt::{Basis, BigRational, SchroederPath, Step, Sym};

fn paths_of(n: usize) -> &'static [SchroederPath] {
    static ALL: OnceLock<Vec<Vec<SchroederPath>>> = OnceLock::new();
    &ALL.get_or_init(|| (0..=7).map(|n| enumerate(n).unwrap()).collect())[n]
}

fn any_path(max_n: usize) -> impl Strategy<Value = SchroederPath> {
    (1..=max_n).prop_flat_map(|n| (0..paths_of(n).len()).prop_map(move |i| paths_of(n)[i].clone()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn graph_determines_path(p in any_path(7)) {
        let g = p.graph();
        prop_assert!(g.is_unit_interval());
        prop_assert_eq!(g.strict_edges().count(), p.diagonal_count());
        prop_assert_eq!(g.to_path().unwrap(), p);
    }

    #[test]
    fn reversal_is_an_involution(p in any_path(7)) {
        prop_assert_eq!(p.reverse().reverse(), p.clone());
        prop_assert_eq!(p.reverse().area(), p.area());
    }

    #[test]
    fn star_replaces_corners(p in any_path(7)) {
        prop_assume!(p.is_dyck());
        let corners = p.steps().windows(2).filter(|w| w == &[Step::E, Step::N]).count();
        let star = p.dyck_star().unwrap();
        prop_assert_eq!(star.size(), p.size());
        prop_assert_eq!(star.graph().strict_edges().count(), corners);
    }

    #[test]
    fn main_identity_on_larger_paths(p in any_path(7)) {
        let lhs: Sym = llt::llt::<BigRational>(&p).unwrap().shift_q(1).unwrap().convert(Basis::E);
        let rhs: Sym = llt::orientation_e_expansion(&p).unwrap();
        prop_assert!(rhs.is_positive());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn evaluator_on_larger_paths(p in any_path(7)) {
        let want: Sym = llt::llt::<BigRational>(&p).unwrap().convert(Basis::E);
        prop_assert_eq!(RecursionEvaluator::new().eval(&p).unwrap(), want);
    }

    #[test]
    fn q_degree_is_at_most_area(p in any_path(7)) {
        let f: Sym = llt::llt(&p).unwrap();
        let top = f.terms().filter_map(|(_, c)| c.q_range()).map(|r| r.1).max().unwrap_or(0);
        prop_assert!(top as usize <= p.area());
    }

    #[test]
    fn kostka_route_skips_undominated_shapes(p in any_path(5)) {
        let space = OrientationSpace::new(&p.graph()).unwrap();
        let lambdas: Vec<_> = space.iter().map(|t| space.lambda(t)).collect();
        let f: Sym = kostka_schur(&p).unwrap();
        for (mu, c) in f.terms() {
            prop_assert!(c.is_zero() || lambdas.iter().any(|l| mu.conjugate().dominates(l)));
        }
    }
}

#[test]
fn hall_littlewood_divides_at_six() {
    for mu in partitions_of(6).unwrap() {
        let h = hall_littlewood(&mu).unwrap();
        assert!(h.is_positive(), "{mu}");
    }
}
